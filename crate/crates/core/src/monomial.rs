//! Exponent-vector monomials.
//!
//! A [`Monomial`] is a fixed-length vector of `u32` exponents; the length is the
//! ambient variable count and is checked by every binary operation. Variables are
//! named `x1 .. xn` in text form (1-based), while exponent slices are 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x1^e1 * ... * xn^en` over a fixed number of variables.
///
/// The derived ordering is lexicographic on the exponent vector, which is the
/// canonical order used for deterministic output everywhere in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

#[inline]
fn check_ambient(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.exps.len() != b.exps.len() {
        return Err(Error::AmbientMismatch {
            left: a.exps.len(),
            right: b.exps.len(),
        });
    }
    Ok(())
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The variable `x_i` (1-based) in a ring with `n` variables.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { index: i, nvars: n });
        }
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Ok(Monomial { exps })
    }

    /// Builds a monomial from 1-based `(variable, exponent)` pairs, summing repeats.
    pub fn from_powers(n: usize, powers: &[(usize, u32)]) -> Result<Self> {
        let mut exps = vec![0u32; n];
        for &(i, e) in powers {
            if i == 0 || i > n {
                return Err(Error::VariableOutOfRange { index: i, nvars: n });
            }
            exps[i - 1] = exps[i - 1].checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { exps })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    /// Exponent of `x_i`, 1-based.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    /// 1-based indices of the variables dividing this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Largest index in the support, `None` for the unit.
    pub fn last(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0).map(|i| i + 1)
    }

    pub fn divides(&self, m: &Monomial) -> Result<bool> {
        check_ambient(self, m)?;
        Ok(divides_slice(&self.exps, &m.exps))
    }

    pub fn lcm(&self, m: &Monomial) -> Result<Monomial> {
        check_ambient(self, m)?;
        Ok(self.zip_with(m, |a, b| a.max(b)))
    }

    pub fn gcd(&self, m: &Monomial) -> Result<Monomial> {
        check_ambient(self, m)?;
        Ok(self.zip_with(m, |a, b| a.min(b)))
    }

    /// `u / gcd(u, v)`: componentwise `max(u_i - v_i, 0)`.
    pub fn colon_quotient(&self, v: &Monomial) -> Result<Monomial> {
        check_ambient(self, v)?;
        Ok(self.zip_with(v, |a, b| a.saturating_sub(b)))
    }

    pub fn mul(&self, m: &Monomial) -> Result<Monomial> {
        check_ambient(self, m)?;
        let exps = self
            .exps
            .iter()
            .zip(&m.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div(&self, d: &Monomial) -> Result<Option<Monomial>> {
        check_ambient(self, d)?;
        if !divides_slice(&d.exps, &self.exps) {
            return Ok(None);
        }
        Ok(Some(self.zip_with(d, |a, b| a - b)))
    }

    /// Re-embeds into a ring with `nvars` variables, shifting `x_i` to `x_{i+offset}`.
    pub fn embed(&self, offset: usize, nvars: usize) -> Result<Monomial> {
        if offset + self.exps.len() > nvars {
            return Err(Error::InvalidArgument(format!(
                "cannot embed {} variables at offset {offset} into {nvars}",
                self.exps.len()
            )));
        }
        let mut exps = vec![0; nvars];
        exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        Ok(Monomial { exps })
    }

    fn zip_with(&self, m: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&m.exps)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Parses the text form (`x1^2*x3`, `1` for the unit) in a ring with `n` variables.
    pub fn parse(s: &str, n: usize) -> Result<Monomial> {
        let powers = parse_powers(s)?;
        Monomial::from_powers(n, &powers)
    }
}

#[inline]
pub(crate) fn divides_slice(d: &[u32], m: &[u32]) -> bool {
    d.iter().zip(m).all(|(a, b)| a <= b)
}

/// Parses the text form into 1-based `(variable, exponent)` pairs without
/// fixing the ambient ring. Used when the variable count is inferred.
pub fn parse_powers(s: &str) -> Result<Vec<(usize, u32)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("expected variable `xN`, got `{factor}`")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable index in `{factor}`")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
            if idx == 0 {
                return Err(Error::Parse(format!(
                    "variables are 1-based, got `{factor}`"
                )));
            }
            Ok((idx, exp))
        })
        .collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn divides_examples() {
        assert!(m(&[1, 1, 0]).divides(&m(&[1, 2, 0])).unwrap());
        assert!(m(&[0, 0, 0]).divides(&m(&[4, 0, 7])).unwrap());
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = m(&[1, 0]).divides(&m(&[1, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::AmbientMismatch { left: 2, right: 3 }));
        assert!(m(&[1]).lcm(&m(&[1, 1])).is_err());
        assert!(m(&[1]).colon_quotient(&m(&[1, 1])).is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m(&[1, 1, 0]).lcm(&m(&[0, 1, 1])).unwrap(), m(&[1, 1, 1]));
        assert_eq!(m(&[2, 0]).lcm(&m(&[0, 3])).unwrap(), m(&[2, 3]));
        let x = m(&[3, 1, 4]);
        assert_eq!(x.lcm(&x).unwrap(), x);
    }

    #[test]
    fn colon_quotient_examples() {
        assert_eq!(
            m(&[1, 1, 0]).colon_quotient(&m(&[0, 1, 0])).unwrap(),
            m(&[1, 0, 0])
        );
        assert_eq!(m(&[2, 2]).colon_quotient(&m(&[0, 0])).unwrap(), m(&[2, 2]));
        assert_eq!(
            m(&[1, 2, 0]).colon_quotient(&m(&[1, 3, 5])).unwrap(),
            m(&[0, 0, 0])
        );
    }

    #[test]
    fn overflow_is_an_error() {
        let big = m(&[u32::MAX, 0]);
        assert!(matches!(big.mul(&m(&[1, 0])), Err(Error::ExponentOverflow)));
        assert!(matches!(
            m(&[3, 0]).pow(u32::MAX),
            Err(Error::ExponentOverflow)
        ));
    }

    #[test]
    fn text_form() {
        assert_eq!(m(&[2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(m(&[0, 0]).to_string(), "1");
        assert_eq!(Monomial::parse("x1^2*x3", 3).unwrap(), m(&[2, 0, 1]));
        assert_eq!(Monomial::parse("1", 2).unwrap(), m(&[0, 0]));
        assert_eq!(Monomial::parse("x2*x2", 2).unwrap(), m(&[0, 2]));
        assert!(Monomial::parse("x4", 3).is_err());
        assert!(Monomial::parse("x0", 3).is_err());
        assert!(Monomial::parse("y1", 3).is_err());
        assert!(Monomial::parse("", 3).is_err());
        assert!(Monomial::parse("x1^", 3).is_err());
    }

    #[test]
    fn support_and_last() {
        let f = m(&[0, 2, 0, 1, 0]);
        assert_eq!(f.support(), vec![2, 4]);
        assert_eq!(f.last(), Some(4));
        assert_eq!(Monomial::unit(3).last(), None);
    }

    fn pair() -> impl Strategy<Value = (Monomial, Monomial)> {
        (1usize..6).prop_flat_map(|n| {
            (
                prop::collection::vec(0u32..5, n).prop_map(Monomial::from_exponents),
                prop::collection::vec(0u32..5, n).prop_map(Monomial::from_exponents),
            )
        })
    }

    proptest! {
        #[test]
        fn colon_times_gcd_recovers((u, v) in pair()) {
            let q = u.colon_quotient(&v).unwrap();
            let g = u.gcd(&v).unwrap();
            prop_assert_eq!(q.mul(&g).unwrap(), u);
        }

        #[test]
        fn divides_iff_colon_is_unit((d, x) in pair()) {
            prop_assert_eq!(d.divides(&x).unwrap(), d.colon_quotient(&x).unwrap().is_unit());
        }

        #[test]
        fn lcm_laws((a, b) in pair(), seed in prop::collection::vec(0u32..5, 6)) {
            let c = Monomial::from_exponents(seed[..a.nvars()].to_vec());
            prop_assert_eq!(a.lcm(&b).unwrap(), b.lcm(&a).unwrap());
            prop_assert_eq!(a.lcm(&b).unwrap().lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
            prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
            prop_assert_eq!(a.lcm(&Monomial::unit(a.nvars())).unwrap(), a);
        }

        #[test]
        fn text_round_trip(e in prop::collection::vec(0u32..6, 1..8)) {
            let mono = Monomial::from_exponents(e);
            let text = mono.to_string();
            let back = Monomial::parse(&text, mono.nvars()).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, mono);
        }
    }
}
