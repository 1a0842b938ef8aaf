//! Exact sparse polynomial, Laurent polynomial and rational function
//! arithmetic over `Z[A1..An]`.

mod gcd;
mod laurent;
mod monomial;
mod packed;
mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gcd::gcd;
pub use laurent::LaurentPolynomial;
pub use monomial::{Monomial, Var, VarClass};
pub use rational::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("not invertible")]
    NotInvertible,
    #[error("inexact division, remainder witness {remainder}")]
    Inexact { remainder: LaurentPolynomial },
    #[error("division by zero")]
    DivisionByZero,
    #[error("factor is a unit")]
    UnitFactor,
    #[error("zero operand")]
    ZeroOperand,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub(crate) fn render(
    p: &LaurentPolynomial,
    f: &mut fmt::Formatter<'_>,
    name: &dyn Fn(Var) -> String,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().enumerate() {
        if c.is_negative() {
            f.write_str("-")?;
        } else if i > 0 {
            f.write_str("+")?;
        }
        let abs = c.abs();
        let mut first = true;
        if !abs.is_one() || m.is_one() {
            write!(f, "{abs}")?;
            first = false;
        }
        for (v, e) in m.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&name(v))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
    }
    Ok(())
}

/// Renders `p` with a custom variable naming.
pub fn to_string_with(p: &LaurentPolynomial, name: &dyn Fn(Var) -> String) -> String {
    struct Show<'a>(&'a LaurentPolynomial, &'a dyn Fn(Var) -> String);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            render(self.0, f, self.1)
        }
    }
    Show(p, name).to_string()
}

/// Default variable names: `A<i>` for constants, `X<i>` for cluster symbols.
pub fn default_var_name(name: &str) -> Option<Var> {
    let (head, digits) = name.split_at(1);
    let index: u32 = digits.parse().ok().filter(|&i| i > 0)?;
    match head {
        "A" => Some(Var::constant(index)),
        "X" => Some(Var::cluster(index)),
        _ => None,
    }
}

/// Parses the canonical serialization (and slightly looser input: spaces,
/// explicit `1*`, repeated factors).
pub fn parse_with(
    s: &str,
    var: &dyn Fn(&str) -> Option<Var>,
) -> Result<LaurentPolynomial, PolyError> {
    let bytes = s.as_bytes();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| PolyError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<&str> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| &s[start..*pos])
    };

    let mut out = LaurentPolynomial::zero();
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty input"));
    }
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        let mut negative = false;
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            negative = bytes[pos] == b'-';
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;
        let mut coef = BigInt::one();
        let mut pairs = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let digits = read_int(&mut pos).unwrap();
                coef *= digits
                    .parse::<BigInt>()
                    .map_err(|e| err(pos, &e.to_string()))?;
            } else if pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                let start = pos;
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                    pos += 1;
                }
                let name = &s[start..pos];
                let v = var(name).ok_or_else(|| err(start, &format!("unknown variable {name}")))?;
                let mut e = 1i32;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let neg = pos < bytes.len() && bytes[pos] == b'-';
                    if neg {
                        pos += 1;
                    }
                    let digits = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    e = digits
                        .parse()
                        .map_err(|_| err(pos, "exponent out of range"))?;
                    if neg {
                        e = -e;
                    }
                }
                if v.is_constant() && e < 0 {
                    return Err(err(start, "negative exponent on a constant"));
                }
                pairs.push((v, e));
            } else {
                return Err(err(pos, "expected a coefficient or variable"));
            }
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            } else {
                break;
            }
        }
        if negative {
            coef = -coef;
        }
        out += &LaurentPolynomial::term(Monomial::from_pairs(pairs), coef);
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
    }
    Ok(out)
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_with(s, &default_var_name)
    }
}

impl Zero for LaurentPolynomial {
    fn zero() -> Self {
        LaurentPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "A2+X1*X3*X5",
            "A1^2+2*A1*X2*X3+X2^2*X3^2",
            "-A1*X1^-2+3",
            "X1^-1",
        ] {
            let p: LaurentPolynomial = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn parse_accepts_loose_input() {
        let p: LaurentPolynomial = " X1 * 2 * X1 - 1".parse().unwrap();
        assert_eq!(p.to_string(), "-1+2*X1^2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<LaurentPolynomial>().is_err());
        assert!("A1+".parse::<LaurentPolynomial>().is_err());
        assert!("Q3".parse::<LaurentPolynomial>().is_err());
        assert!("A1^-1".parse::<LaurentPolynomial>().is_err());
        assert!("X1 X2".parse::<LaurentPolynomial>().is_err());
    }
}
