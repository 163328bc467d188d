//! Monomial ideals held as canonical minimal generating sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{divides_slice, parse_powers, Monomial};

/// A monomial ideal in `n` variables.
///
/// Generators are always minimal (no generator divides another) and sorted
/// lexicographically with `x1 > x2 > ... > xn`, largest first, so structural
/// equality is ideal equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// JSON wire form: `{"n": 3, "gens": [[1,1,0],[0,1,1]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

fn check(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::AmbientMismatch { left: a, right: b });
    }
    Ok(())
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::unit(n)],
        }
    }

    /// Minimal generating set of the ideal generated by `gens`.
    pub fn minimalize<I>(n: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut all = Vec::new();
        for g in gens {
            check(n, g.nvars())?;
            all.push(g);
        }
        Ok(MonomialIdeal {
            n,
            gens: minimal_set(all),
        })
    }

    /// The ideal generated by the variables `x_i`, `i` in `indices` (1-based).
    pub fn variables(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let gens = indices
            .into_iter()
            .map(|i| Monomial::var(n, i))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(n, gens)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        check(self.n, m.nvars())?;
        Ok(self.contains_exps(m.exponents()))
    }

    pub(crate) fn contains_exps(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides_slice(g.exponents(), m))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        check(self.n, other.n)?;
        Ok(self.gens == other.gens)
    }

    /// `self ⊆ other`, checked generator by generator.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        check(self.n, other.n)?;
        Ok(self.gens.iter().all(|g| other.contains_exps(g.exponents())))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check(self.n, other.n)?;
        MonomialIdeal::minimalize(self.n, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check(self.n, other.n)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for u in &self.gens {
            for v in &other.gens {
                prods.push(u.mul(v)?);
            }
        }
        MonomialIdeal::minimalize(self.n, prods)
    }

    /// `I^t` for `t >= 1`, by repeated multiplication with minimalization after each step.
    pub fn power(&self, t: u32) -> Result<MonomialIdeal> {
        if t == 0 {
            return Err(Error::InvalidArgument("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check(self.n, other.n)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for u in &self.gens {
            for v in &other.gens {
                lcms.push(u.lcm(v)?);
            }
        }
        MonomialIdeal::minimalize(self.n, lcms)
    }

    /// `I : (v)`, generated by `u / gcd(u, v)` over the generators `u` of `I`.
    pub fn colon_monomial(&self, v: &Monomial) -> Result<MonomialIdeal> {
        check(self.n, v.nvars())?;
        let quotients = self
            .gens
            .iter()
            .map(|u| u.colon_quotient(v))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(self.n, quotients)
    }

    /// `I : J`, the intersection of `I : (v)` over the generators `v` of `J`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check(self.n, other.n)?;
        let (first, rest) = other
            .gens
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("colon by the zero ideal".into()))?;
        let mut acc = self.colon_monomial(first)?;
        for v in rest {
            acc = acc.intersection(&self.colon_monomial(v)?)?;
        }
        Ok(acc)
    }

    /// Re-embeds into `nvars` variables with `x_i` sent to `x_{i+offset}`.
    pub fn embed(&self, offset: usize, nvars: usize) -> Result<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(offset, nvars))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(nvars, gens)
    }

    /// The lcm of all generators (unit for the zero ideal).
    pub fn lcm_of_generators(&self) -> Monomial {
        let mut exps = vec![0u32; self.n];
        for g in &self.gens {
            for (e, &x) in exps.iter_mut().zip(g.exponents()) {
                *e = (*e).max(x);
            }
        }
        Monomial::from_exponents(exps)
    }

    /// One monomial per line in canonical order; the zero ideal is the empty string.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gens {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the line format. Blank lines and `#` comments are skipped.
    pub fn from_text(s: &str, n: usize) -> Result<MonomialIdeal> {
        let gens = text_entries(s)
            .map(|line| Monomial::parse(line, n))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(n, gens)
    }

    /// Parses the line format, taking the variable count from the largest index used.
    pub fn from_text_infer(s: &str) -> Result<MonomialIdeal> {
        let powers = text_entries(s)
            .map(parse_powers)
            .collect::<Result<Vec<_>>>()?;
        let n = powers
            .iter()
            .flat_map(|p| p.iter().map(|&(i, _)| i))
            .max()
            .unwrap_or(0);
        let gens = powers
            .iter()
            .map(|p| Monomial::from_powers(n, p))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(n, gens)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            n: self.n,
            gens: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn from_json(j: IdealJson) -> Result<MonomialIdeal> {
        let n = j.n;
        let gens = j.gens.into_iter().map(Monomial::from_exponents);
        MonomialIdeal::minimalize(n, gens)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("ideal json")
    }

    pub fn from_json_str(s: &str) -> Result<MonomialIdeal> {
        let j: IdealJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        MonomialIdeal::from_json(j)
    }
}

fn text_entries(s: &str) -> impl Iterator<Item = &str> {
    s.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn minimal_set(mut all: Vec<Monomial>) -> Vec<Monomial> {
    // A divisor has degree at most that of its multiple, so one pass in degree order suffices.
    all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for m in all {
        if !kept
            .iter()
            .any(|k| divides_slice(k.exponents(), m.exponents()))
        {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
