use num_bigint::BigUint;
use num_traits::One;
use serde::Serializer;

/// `C(n, k)` as an exact integer.
pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Serializes an arbitrary-precision natural as a JSON number, never as a float.
pub(crate) fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let number: serde_json::Number = v
        .to_str_radix(10)
        .parse()
        .map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&number, s)
}
