//! Parser for command-line class expressions over labeled lattice bases.
//!
//! Grammar: expr := ["+"|"-"] term (("+"|"-") term)*
//!          term := coefficient? "*"? label | "0"
//!          coefficient := integer ("/" integer)?
//!
//! Labels start with a letter and continue with letters, digits or "_".
//! Examples: "f+G", "2F+G", "3F+G+x1+x2", "1/2*f - G", "0".

use crate::error::{Error, Result};
use crate::lattice::{CohomClass, IntersectionLattice};
use crate::rational::Rational;

pub fn parse_class(lattice: &IntersectionLattice, input: &str) -> Result<CohomClass> {
    let mut coeffs = vec![Rational::zero(); lattice.rank()];
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.done() {
        return Err(Error::SchemaError("empty class expression".into()));
    }
    let mut sign = p.eat_sign().unwrap_or(1);
    loop {
        let term = p.parse_term()?;
        if let Some((coef, label)) = term {
            let idx = lattice.index_of(&label).ok_or_else(|| {
                Error::SchemaError(format!(
                    "unknown basis label `{label}` (lattice has: {})",
                    lattice.labels().join(", ")
                ))
            })?;
            let signed = if sign < 0 { -coef } else { coef };
            coeffs[idx] = &coeffs[idx] + &signed;
        }
        p.skip_ws();
        if p.done() {
            break;
        }
        sign = p.eat_sign().ok_or_else(|| {
            Error::SchemaError(format!(
                "expected `+` or `-` at position {} in `{input}`",
                p.pos
            ))
        })?;
        p.skip_ws();
        if p.done() {
            return Err(Error::SchemaError(format!(
                "dangling sign at end of `{input}`"
            )));
        }
    }
    CohomClass::new(lattice, coeffs)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn done(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat_sign(&mut self) -> Option<i32> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn eat_uint(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos > start {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        } else {
            None
        }
    }

    fn eat_label(&mut self) -> Option<String> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// Returns None only for the literal zero term "0".
    fn parse_term(&mut self) -> Result<Option<(Rational, String)>> {
        self.skip_ws();
        let coef = if let Some(num) = self.eat_uint() {
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.eat_uint().ok_or_else(|| {
                    Error::SchemaError(format!("expected denominator at position {}", self.pos))
                })?
            } else {
                "1".to_string()
            };
            Some(format!("{num}/{den}").parse::<Rational>()?)
        } else {
            None
        };
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
        }
        match self.eat_label() {
            Some(label) => Ok(Some((coef.unwrap_or_else(Rational::one), label))),
            None => match coef {
                Some(c) if c.is_zero() => Ok(None),
                _ => Err(Error::SchemaError(format!(
                    "expected basis label at position {}",
                    self.pos
                ))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{block_diag, hyperbolic_block};

    fn l() -> IntersectionLattice {
        IntersectionLattice::new(
            ["f", "G", "x1", "x2"].iter().map(|s| s.to_string()).collect(),
            block_diag(&[hyperbolic_block(), hyperbolic_block()]),
        )
        .unwrap()
    }

    #[test]
    fn basic_forms() {
        let lat = l();
        let a = parse_class(&lat, "f+G").unwrap();
        assert_eq!(a, CohomClass::from_i64(&lat, &[1, 1, 0, 0]).unwrap());

        let b = parse_class(&lat, "2f + G - x1").unwrap();
        assert_eq!(b, CohomClass::from_i64(&lat, &[2, 1, -1, 0]).unwrap());

        let c = parse_class(&lat, "1/2*f").unwrap();
        assert_eq!(c.coeff(0), &Rational::new(1, 2).unwrap());

        let d = parse_class(&lat, "-f + 3/2 x2").unwrap();
        assert_eq!(d.coeff(0), &Rational::from_int(-1));
        assert_eq!(d.coeff(3), &Rational::new(3, 2).unwrap());
    }

    #[test]
    fn zero_and_repeats() {
        let lat = l();
        assert!(parse_class(&lat, "0").unwrap().is_zero());
        assert!(parse_class(&lat, "0*f").unwrap().is_zero());
        // repeated labels accumulate
        let a = parse_class(&lat, "f+f").unwrap();
        assert_eq!(a.coeff(0), &Rational::from_int(2));
        let b = parse_class(&lat, "f-f").unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let lat = l();
        assert!(parse_class(&lat, "").is_err());
        assert!(parse_class(&lat, "q+G").is_err());
        assert!(parse_class(&lat, "f+").is_err());
        assert!(parse_class(&lat, "2/").is_err());
        assert!(parse_class(&lat, "f G").is_err());
        assert!(parse_class(&lat, "3").is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        let lat = l();
        let a = CohomClass::new(
            &lat,
            vec![
                Rational::new(-3, 2).unwrap(),
                Rational::from_int(1),
                Rational::zero(),
                Rational::new(7, 3).unwrap(),
            ],
        )
        .unwrap();
        let rendered = lat.render_class(&a);
        let back = parse_class(&lat, &rendered).unwrap();
        assert_eq!(back, a);
    }
}
