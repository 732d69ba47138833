//! WebAssembly bindings for the browser demo. Each export takes plain strings
//! and returns a JSON string; failures come back as `{"error": {code, message}}`
//! so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use scattered::{condense, embed, parse, ramsey, Error};

/// Largest `n` the page may ask for; type enumeration grows quickly.
pub const MAX_N: usize = 8;

fn respond(result: scattered::Result<Value>) -> String {
    let v = result.unwrap_or_else(|e: Error| json!({ "error": { "code": e.code(), "message": e.to_string() } }));
    v.to_string()
}

/// Canonical form, reverse, tails, rank and the condensation sequence.
#[wasm_bindgen]
pub fn analyze(term: &str) -> String {
    respond((|| {
        let t = parse(term)?.canonicalize();
        Ok(json!({
            "canonical": t.to_string(),
            "reverse": t.reverse().to_string(),
            "tails": t.tails().to_string(),
            "finite_size": t.size_if_finite(),
            "rank": condense::fc_rank(&t)?,
            "steps": condense::condense_steps(&t)?.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }))
    })())
}

/// `T(1..=n, S)` with the kind and provenance of each entry.
#[wasm_bindgen]
pub fn spectrum(term: &str, n: usize) -> String {
    respond((|| {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::Domain(format!("n must lie in 1..={MAX_N}")));
        }
        let t = parse(term)?;
        Ok(serde_json::to_value(ramsey::spectrum(&t, n)?).expect("spectra serialize"))
    })())
}

/// Whether the first chain embeds into the second, with the rule trace.
#[wasm_bindgen]
pub fn embeds(source: &str, target: &str) -> String {
    respond((|| {
        let (a, b) = (parse(source)?, parse(target)?);
        let forward = embed::embeds(&a, &b);
        let backward = embed::embeds(&b, &a);
        Ok(json!({
            "source": a.canonicalize().to_string(),
            "target": b.canonicalize().to_string(),
            "outcome": forward.outcome,
            "trace": forward.trace,
            "converse": backward.outcome,
        }))
    })())
}
