//! Text form of chain terms.
//!
//! ```text
//! term   := sum
//! sum    := atom ("+" atom)*
//! atom   := "0" | "1" | NAT | "w[" blocks "]" | "w*[" blocks "]"
//!         | "w^(" signs ")" | "rev(" term ")" | "(" term ")"
//! blocks := term (";" term)*        -- last entry is the repeat block
//! signs  := ("+"|"-") ("," ("+"|"-"))*
//! ```
//!
//! `ω` is accepted as an alias of `w`.

use crate::error::{Error, Result};
use crate::term::{ChainTerm, Sign};

/// Largest finite chain accepted as a numeral.
pub const MAX_NUMERAL: usize = 4096;

pub fn parse(text: &str) -> Result<ChainTerm> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

pub fn print(term: &ChainTerm) -> String {
    let mut out = String::new();
    write_term(term, &mut out);
    out
}

fn write_term(term: &ChainTerm, out: &mut String) {
    match term {
        ChainTerm::FinSum(cs) if !ChainTerm::is_all_ones(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                write_atom(c, out);
            }
        }
        _ => write_atom(term, out),
    }
}

fn write_atom(term: &ChainTerm, out: &mut String) {
    match term {
        ChainTerm::Zero => out.push('0'),
        ChainTerm::One => out.push('1'),
        ChainTerm::FinSum(cs) if ChainTerm::is_all_ones(cs) => out.push_str(&cs.len().to_string()),
        ChainTerm::FinSum(_) => {
            out.push('(');
            write_term(term, out);
            out.push(')');
        }
        ChainTerm::OmegaSum { prefix, repeat } => write_blocks("w[", prefix, repeat, out),
        ChainTerm::OmegaStarSum { prefix, repeat } => write_blocks("w*[", prefix, repeat, out),
    }
}

fn write_blocks(open: &str, prefix: &[ChainTerm], repeat: &ChainTerm, out: &mut String) {
    out.push_str(open);
    for p in prefix {
        write_term(p, out);
        out.push_str("; ");
    }
    write_term(repeat, out);
    out.push(']');
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn sum(&mut self) -> Result<ChainTerm> {
        let mut atoms = vec![self.atom()?];
        while self.eat('+') {
            atoms.push(self.atom()?);
        }
        Ok(if atoms.len() == 1 {
            atoms.pop().unwrap()
        } else {
            ChainTerm::FinSum(atoms)
        })
    }

    fn atom(&mut self) -> Result<ChainTerm> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.numeral(),
            Some('w') | Some('ω') => {
                self.pos += self.peek().unwrap().len_utf8();
                self.omega()
            }
            Some('r') if self.rest().starts_with("rev") => {
                self.pos += 3;
                self.expect('(')?;
                let t = self.sum()?;
                self.expect(')')?;
                Ok(t.reverse())
            }
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn numeral(&mut self) -> Result<ChainTerm> {
        let start = self.pos;
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        let n: usize = digits
            .parse()
            .ok()
            .filter(|&n| n <= MAX_NUMERAL)
            .ok_or_else(|| Error::Syntax {
                pos: start,
                msg: format!("finite chains are limited to {MAX_NUMERAL} points"),
            })?;
        self.pos += digits.len();
        Ok(ChainTerm::finite(n))
    }

    fn omega(&mut self) -> Result<ChainTerm> {
        let star = self.eat('*');
        if !star && self.eat('^') {
            self.expect('(')?;
            let mut signs = vec![self.sign()?];
            while self.eat(',') {
                signs.push(self.sign()?);
            }
            self.expect(')')?;
            return Ok(ChainTerm::omega_delta(&signs));
        }
        let open = self.pos;
        self.expect('[')?;
        if self.peek() == Some(']') {
            return Err(self.error("an omega-sum needs a repeat block"));
        }
        let mut blocks = vec![self.sum()?];
        while self.eat(';') {
            blocks.push(self.sum()?);
        }
        self.expect(']')?;
        let repeat = blocks.pop().unwrap();
        if repeat.size_if_finite() == Some(0) {
            return Err(Error::Syntax {
                pos: open,
                msg: "the repeat block of an omega-sum must be nonempty".into(),
            });
        }
        Ok(if star {
            ChainTerm::OmegaStarSum {
                prefix: blocks,
                repeat: Box::new(repeat),
            }
        } else {
            ChainTerm::OmegaSum {
                prefix: blocks,
                repeat: Box::new(repeat),
            }
        })
    }

    fn sign(&mut self) -> Result<Sign> {
        if self.eat('+') {
            Ok(Sign::Plus)
        } else if self.eat('-') {
            Ok(Sign::Minus)
        } else {
            Err(self.error("expected '+' or '-'"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ChainTerm::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("w[1]").unwrap(), ChainTerm::omega());
        assert_eq!(
            parse("w*[1] + w[1]").unwrap(),
            FinSum(vec![ChainTerm::omega_star(), ChainTerm::omega()])
        );
        // ω^(−)·ω^(+) = Σ_{k∈ω} ω*
        assert_eq!(
            parse("w^(-,+)").unwrap(),
            ChainTerm::omega_of(ChainTerm::omega_star())
        );
        assert_eq!(parse("ω[1]").unwrap(), ChainTerm::omega());
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&One), "1");
        assert_eq!(print(&FinSum(vec![One, One, One])), "3");
        let t = ChainTerm::omega_sum(vec![One], ChainTerm::omega()).unwrap();
        assert_eq!(print(&t), "w[1; w[1]]");
        assert_eq!(print(&Zero), "0");
    }

    #[test]
    fn nested_sums_are_parenthesized() {
        let t = FinSum(vec![FinSum(vec![ChainTerm::omega(), One]), One]);
        assert_eq!(print(&t), "(w[1] + 1) + 1");
        assert_eq!(parse(&print(&t)).unwrap(), t);
        let u = FinSum(vec![ChainTerm::finite(3), One]);
        assert_eq!(print(&u), "3 + 1");
        assert_eq!(parse("3 + 1").unwrap(), u);
    }

    #[test]
    fn rev_and_parens() {
        assert_eq!(parse("rev(w[1] + 1)").unwrap(), FinSum(vec![One, ChainTerm::omega_star()]));
        assert_eq!(parse("(w[1])").unwrap(), ChainTerm::omega());
        assert_eq!(parse("w[3; 1]").unwrap(), ChainTerm::omega_sum(vec![ChainTerm::finite(3)], One).unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse("w[1"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("1 +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("w[]"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("w[0]"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse("w[1; 0 + 0]"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("w^()"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("1 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("99999"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
    }
}
