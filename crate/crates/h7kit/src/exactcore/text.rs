//! Polynomial text format: `coef * x0^a*x3^b + ...`.
//!
//! Rational coefficients print as `p/q`, cyclotomic ones as `(c0,c1,c2,c3,c4,c5)`.

use super::cyc::CycNum;
use super::mpoly::{MPoly, Mono};
use super::ring::{Rat, Ring};
use super::ExactError;

pub trait TextCoeff: Ring {
    fn write(&self) -> String;
    fn read(s: &str) -> Result<Self, ExactError>;
}

fn read_rat(s: &str) -> Result<Rat, ExactError> {
    let bad = || ExactError::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

fn write_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl TextCoeff for Rat {
    fn write(&self) -> String {
        write_rat(self)
    }
    fn read(s: &str) -> Result<Self, ExactError> {
        read_rat(s)
    }
}

impl TextCoeff for CycNum {
    fn write(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(write_rat).collect();
        format!("({})", parts.join(","))
    }
    fn read(s: &str) -> Result<Self, ExactError> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ExactError::Parse(format!("bad cyclotomic `{s}`")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 6 {
            return Err(ExactError::Parse(format!("expected 6 coefficients in `{s}`")));
        }
        let mut c: [Rat; 6] = std::array::from_fn(|_| <Rat as Ring>::zero());
        for (i, p) in parts.iter().enumerate() {
            c[i] = read_rat(p)?;
        }
        Ok(CycNum::new(c))
    }
}

/// Prints terms in descending graded-lex order.
pub fn to_text<C: TextCoeff>(p: &MPoly<C>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{i}") } else { format!("x{i}^{a}") })
                .collect();
            if vars.is_empty() {
                c.write()
            } else {
                format!("{} * {}", c.write(), vars.join("*"))
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn parse<C: TextCoeff>(s: &str, nvars: usize) -> Result<MPoly<C>, ExactError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(MPoly::zero(nvars));
    }
    let mut p = MPoly::zero(nvars);
    for term in split_top(&s, '+') {
        if term.is_empty() {
            return Err(ExactError::Parse("empty term".into()));
        }
        let mut coef = C::one();
        let mut e = vec![0u16; nvars];
        for (k, f) in split_top(term, '*').into_iter().enumerate() {
            if let Some(v) = f.strip_prefix('x') {
                let (idx, pow) = match v.split_once('^') {
                    Some((i, a)) => (i, a),
                    None => (v, "1"),
                };
                let i: usize = idx.parse().map_err(|_| ExactError::Parse(format!("bad variable `{f}`")))?;
                let a: u16 = pow.parse().map_err(|_| ExactError::Parse(format!("bad exponent `{f}`")))?;
                if i >= nvars {
                    return Err(ExactError::Parse(format!("variable x{i} out of range")));
                }
                e[i] += a;
            } else if k == 0 {
                coef = C::read(f)?;
            } else {
                return Err(ExactError::Parse(format!("unexpected factor `{f}`")));
            }
        }
        p.add_term(Mono(e), &coef);
    }
    Ok(p)
}

// splits on `sep` outside parentheses
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;

    #[test]
    fn rational_round_trip() {
        let p = MPoly::from_terms(
            3,
            [
                (Mono(vec![2, 0, 1]), rat(-3, 4)),
                (Mono(vec![0, 0, 0]), rat(5, 1)),
                (Mono(vec![0, 1, 0]), rat(1, 7)),
            ],
        );
        let s = to_text(&p);
        assert_eq!(s, "-3/4 * x0^2*x2 + 1/7 * x1 + 5/1");
        assert_eq!(parse::<Rat>(&s, 3).unwrap(), p);
        assert_eq!(to_text(&parse::<Rat>(&s, 3).unwrap()), s);
    }

    #[test]
    fn cyclotomic_round_trip() {
        let g = CycNum::gauss_sum();
        let p = MPoly::monomial(Mono(vec![1, 0, 3]), g);
        let s = to_text(&p);
        assert_eq!(s, "(1/1,2/1,2/1,0/1,2/1,0/1) * x0*x2^3");
        assert_eq!(parse::<CycNum>(&s, 3).unwrap(), p);
    }

    #[test]
    fn zero_and_errors() {
        assert_eq!(to_text(&MPoly::<Rat>::zero(2)), "0");
        assert!(parse::<Rat>("0", 2).unwrap().is_zero());
        assert!(parse::<Rat>("1/2 * x5", 2).is_err());
        assert!(parse::<Rat>("1/0", 2).is_err());
    }
}
