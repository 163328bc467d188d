//! Closed-form depth of `S/I(P(w))^t` for integrally closed weighted paths, and
//! the witness monomials `f`, `g`, `h` whose colon ideals certify the upper bounds.
//!
//! Everything here is plain integer arithmetic; nothing calls the homology engine.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{weighted_path, WeightSequence};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Two readings of the exceptional `t = 2` branch of the one-weight formula:
/// `n ≡ 2 (mod 4)` as in the theorem statement, or `n ≡ 2 (mod 3)` as in its proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchVariant {
    Mod4,
    Mod3,
}

impl BranchVariant {
    pub const ALL: [BranchVariant; 2] = [BranchVariant::Mod4, BranchVariant::Mod3];

    fn modulus(self) -> usize {
        match self {
            BranchVariant::Mod4 => 4,
            BranchVariant::Mod3 => 3,
        }
    }
}

impl fmt::Display for BranchVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchVariant::Mod4 => "mod4",
            BranchVariant::Mod3 => "mod3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightProfile {
    Trivial,
    OneWeight { a: usize, omega: u32 },
    TwoWeight { a: usize, gamma: u32, delta: u32 },
}

/// Validated `(n, t, profile)`, with the non-trivial weights in the left half of the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathDepthQuery {
    n: usize,
    t: u32,
    profile: WeightProfile,
}

impl PathDepthQuery {
    pub fn new(n: usize, t: u32, profile: WeightProfile) -> Result<Self> {
        if n < 4 {
            return Err(Error::OutOfRange(format!("n = {n}, need n >= 4")));
        }
        if t < 2 {
            return Err(Error::OutOfRange(format!("t = {t}, need t >= 2")));
        }
        match profile {
            WeightProfile::Trivial => {}
            WeightProfile::OneWeight { a, omega } => {
                if a < 1 || a > n / 2 {
                    return Err(Error::OutOfRange(format!(
                        "a = {a}, need 1 <= a <= {}",
                        n / 2
                    )));
                }
                if omega < 2 {
                    return Err(Error::OutOfRange(format!(
                        "omega = {omega}, need omega >= 2"
                    )));
                }
            }
            WeightProfile::TwoWeight { a, gamma, delta } => {
                if a < 1 || a + 1 > n / 2 {
                    return Err(Error::OutOfRange(format!(
                        "a = {a}, need 1 <= a <= {}",
                        (n / 2).saturating_sub(1)
                    )));
                }
                if gamma < 2 || delta < 2 {
                    return Err(Error::OutOfRange("gamma and delta must be >= 2".into()));
                }
            }
        }
        Ok(PathDepthQuery { n, t, profile })
    }

    /// Classifies a weight sequence, reversing the path when the non-trivial
    /// weights sit in the right half. Errors when no closed form covers `w`.
    pub fn from_weights(w: &WeightSequence, t: u32) -> Result<Self> {
        let n = w.vertex_count();
        let build = |w: &WeightSequence| -> Result<Self> {
            let ws = w.weights();
            let profile = match w.nontrivial_positions().as_slice() {
                [] => WeightProfile::Trivial,
                &[a] => WeightProfile::OneWeight {
                    a,
                    omega: ws[a - 1],
                },
                &[a, b] if b == a + 2 => WeightProfile::TwoWeight {
                    a,
                    gamma: ws[a - 1],
                    delta: ws[b - 1],
                },
                _ => {
                    return Err(Error::OutOfRange(format!(
                        "weights {w} are not integrally closed"
                    )))
                }
            };
            PathDepthQuery::new(n, t, profile)
        };
        build(w).or_else(|first| build(&w.reversed()).map_err(|_| first))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn profile(&self) -> WeightProfile {
        self.profile
    }

    pub fn weights(&self) -> WeightSequence {
        match self.profile {
            WeightProfile::Trivial => WeightSequence::new(vec![1; self.n - 1]),
            WeightProfile::OneWeight { a, omega } => WeightSequence::one_weight(self.n, a, omega),
            WeightProfile::TwoWeight { a, gamma, delta } => {
                WeightSequence::two_weight(self.n, a, gamma, delta)
            }
        }
        .expect("validated query")
    }
}

fn ceil_div(num: i64, den: i64) -> i64 {
    Integer::div_ceil(&num, &den)
}

/// `⌈n/3⌉`, the depth of `S/I(P_n)`.
pub fn path_depth_unweighted(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    Ok(ceil_div(n as i64, 3))
}

/// Whether the exceptional first branch of the one-weight formula applies under `variant`.
pub fn one_weight_first_branch(n: usize, a: usize, t: u32, variant: BranchVariant) -> bool {
    a == 1 || (t == 2 && a % 3 == 1 && n % variant.modulus() == 2)
}

pub fn theorem1_depth(q: &PathDepthQuery, variant: BranchVariant) -> Result<i64> {
    let WeightProfile::OneWeight { a, .. } = q.profile else {
        return Err(Error::InvalidArgument("one-weight profile required".into()));
    };
    let (n, t) = (q.n as i64, i64::from(q.t));
    let shift = if one_weight_first_branch(q.n, a, q.t, variant) {
        1
    } else {
        0
    };
    Ok(ceil_div(n - t + shift, 3).max(1))
}

pub fn theorem2_depth(q: &PathDepthQuery) -> Result<i64> {
    let WeightProfile::TwoWeight { a, .. } = q.profile else {
        return Err(Error::InvalidArgument("two-weight profile required".into()));
    };
    let (n, t) = (q.n as i64, i64::from(q.t));
    let shift = if a == 1 { 1 } else { 0 };
    Ok(ceil_div(n - t + shift, 3).max(2))
}

/// Lower bound for one non-trivial weight known from earlier work; same value as [`theorem1_depth`].
pub fn lower_bound_one_weight(q: &PathDepthQuery, variant: BranchVariant) -> Result<i64> {
    theorem1_depth(q, variant)
}

/// Lower bound for two non-trivial weights known from earlier work; same value as [`theorem2_depth`].
pub fn lower_bound_two_weight(q: &PathDepthQuery) -> Result<i64> {
    theorem2_depth(q)
}

// ---------------------------------------------------------------------------
// Witness monomials

fn x(n: usize, i: usize) -> Monomial {
    Monomial::var(n, i).expect("index checked by caller")
}

/// `u_j = x_j x_{j+1}`.
fn u(n: usize, j: usize) -> Monomial {
    x(n, j).mul(&x(n, j + 1)).expect("same ring")
}

/// `∏_{i=lo}^{hi} u_i`, the unit when `lo > hi`.
fn u_product(n: usize, lo: usize, hi: usize) -> Monomial {
    (lo..=hi).fold(Monomial::unit(n), |acc, i| {
        acc.mul(&u(n, i)).expect("same ring")
    })
}

fn times(ms: &[Monomial]) -> Monomial {
    let n = ms[0].nvars();
    ms.iter()
        .fold(Monomial::unit(n), |acc, m| acc.mul(m).expect("same ring"))
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::OutOfRange(what()))
    }
}

fn check_weight(name: &str, w: u32) -> Result<()> {
    require(w >= 2, || format!("{name} = {w}, need >= 2"))
}

/// `f = x_{a+2} u_a^ω ∏_{i=a+2}^{a+t-1} u_i` for `1 <= a <= ⌊n/2⌋`, `2 <= t <= n-a-1`.
pub fn witness_f1(n: usize, a: usize, omega: u32, t: u32) -> Result<Monomial> {
    check_weight("omega", omega)?;
    let t = t as usize;
    require(a >= 1 && a <= n / 2, || {
        format!("a = {a} outside 1..={}", n / 2)
    })?;
    require(t >= 2 && t + a < n, || {
        format!("t = {t} outside 2..={}", n as i64 - a as i64 - 1)
    })?;
    Ok(times(&[
        x(n, a + 2),
        u(n, a).pow(omega)?,
        u_product(n, a + 2, a + t - 1),
    ]))
}

/// `g = x_{a-1} u_a^ω ∏ u_i` over `a-t+1 <= i <= a-2`, for `2 <= t <= a-1`, `a <= ⌊n/2⌋`.
pub fn witness_g1(n: usize, a: usize, omega: u32, t: u32) -> Result<Monomial> {
    check_weight("omega", omega)?;
    let t = t as usize;
    require(a <= n / 2, || format!("a = {a} exceeds {}", n / 2))?;
    require(t >= 2 && t < a, || {
        format!("t = {t} outside 2..={}", a as i64 - 1)
    })?;
    Ok(times(&[
        x(n, a - 1),
        u(n, a).pow(omega)?,
        u_product(n, a + 1 - t, a - 2),
    ]))
}

/// `h = u_a^ω x_{a-1} x_{a+2} ∏_{i=a-c-1}^{a-2} u_i ∏_{i=a+2}^{a+d+1} u_i`,
/// for `3 <= a <= ⌊n/2⌋`, `c <= a-3`, `d <= n-a-3`, `t = c+d+3 <= n-3`.
pub fn witness_h1(n: usize, a: usize, omega: u32, c: usize, d: usize) -> Result<Monomial> {
    check_weight("omega", omega)?;
    require(a >= 3 && a <= n / 2, || {
        format!("a = {a} outside 3..={}", n / 2)
    })?;
    require(c + 3 <= a, || format!("c = {c} exceeds a-3"))?;
    require(a + d + 3 <= n, || format!("d = {d} exceeds n-a-3"))?;
    require(c + d + 6 <= n, || format!("t = {} exceeds n-3", c + d + 3))?;
    Ok(times(&[
        u(n, a).pow(omega)?,
        x(n, a - 1),
        x(n, a + 2),
        u_product(n, a - c - 1, a - 2),
        u_product(n, a + 2, a + d + 1),
    ]))
}

/// `f = x_a^{γ-1} x_{a+1}^γ ∏_{i=a+4}^{a+t+2} u_i` for `1 <= a <= ⌊n/2⌋-1`, `2 <= t <= n-a-4`.
pub fn witness_f2(n: usize, a: usize, gamma: u32, t: u32) -> Result<Monomial> {
    check_weight("gamma", gamma)?;
    let t = t as usize;
    require(a >= 1 && a < n / 2, || {
        format!("a = {a} outside 1..={}", (n / 2).saturating_sub(1))
    })?;
    require(t >= 2 && a + t + 4 <= n, || {
        format!("t = {t} outside 2..={}", n as i64 - a as i64 - 4)
    })?;
    Ok(times(&[
        x(n, a).pow(gamma - 1)?,
        x(n, a + 1).pow(gamma)?,
        u_product(n, a + 4, a + t + 2),
    ]))
}

/// `h = x_{a-1} u_a^γ ∏_{i=a-c-1}^{a-2} u_i ∏_{i=a+4}^{a+d+3} u_i`,
/// for `3 <= a <= ⌊n/2⌋-1`, `c <= a-3`, `d <= n-a-5`, `t = c+d+2 <= n-6`.
pub fn witness_h2(n: usize, a: usize, gamma: u32, c: usize, d: usize) -> Result<Monomial> {
    check_weight("gamma", gamma)?;
    require(a >= 3 && a < n / 2, || {
        format!("a = {a} outside 3..={}", (n / 2).saturating_sub(1))
    })?;
    require(c + 3 <= a, || format!("c = {c} exceeds a-3"))?;
    require(a + d + 5 <= n, || format!("d = {d} exceeds n-a-5"))?;
    require(c + d + 8 <= n, || format!("t = {} exceeds n-6", c + d + 2))?;
    Ok(times(&[
        x(n, a - 1),
        u(n, a).pow(gamma)?,
        u_product(n, a - c - 1, a - 2),
        u_product(n, a + 4, a + d + 3),
    ]))
}

/// `u_2 u_{a+2}` for `3 <= a <= ⌊n/2⌋-1`; the colon is taken in the square of the ideal.
pub fn witness_g2(n: usize, a: usize) -> Result<Monomial> {
    require(a >= 3 && a < n / 2, || {
        format!("a = {a} outside 3..={}", (n / 2).saturating_sub(1))
    })?;
    u(n, 2).mul(&u(n, a + 2))
}

// ---------------------------------------------------------------------------
// Colon identities

/// One instance of a colon identity `I(P(w))^t : m = RHS` for a witness family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColonWitness {
    OneWeightF {
        n: usize,
        a: usize,
        omega: u32,
        t: u32,
    },
    OneWeightG {
        n: usize,
        a: usize,
        omega: u32,
        t: u32,
    },
    OneWeightH {
        n: usize,
        a: usize,
        omega: u32,
        c: usize,
        d: usize,
    },
    TwoWeightF {
        n: usize,
        a: usize,
        gamma: u32,
        delta: u32,
        t: u32,
    },
    TwoWeightH {
        n: usize,
        a: usize,
        gamma: u32,
        delta: u32,
        c: usize,
        d: usize,
    },
    TwoWeightG {
        n: usize,
        a: usize,
        gamma: u32,
        delta: u32,
    },
}

fn complete_bipartite(n: usize, left: &[usize], right: &[usize]) -> MonomialIdeal {
    let gens = left.iter().flat_map(|&p| {
        right
            .iter()
            .map(move |&q| x(n, p).mul(&x(n, q)).expect("same ring"))
    });
    MonomialIdeal::minimalize(n, gens).expect("same ring")
}

fn variables(n: usize, idx: impl IntoIterator<Item = usize>) -> MonomialIdeal {
    MonomialIdeal::variables(n, idx).expect("indices in range")
}

impl ColonWitness {
    pub fn family(&self) -> &'static str {
        match self {
            ColonWitness::OneWeightF { .. } => "one-weight-f",
            ColonWitness::OneWeightG { .. } => "one-weight-g",
            ColonWitness::OneWeightH { .. } => "one-weight-h",
            ColonWitness::TwoWeightF { .. } => "two-weight-f",
            ColonWitness::TwoWeightH { .. } => "two-weight-h",
            ColonWitness::TwoWeightG { .. } => "two-weight-g",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            ColonWitness::OneWeightF { n, .. }
            | ColonWitness::OneWeightG { n, .. }
            | ColonWitness::OneWeightH { n, .. }
            | ColonWitness::TwoWeightF { n, .. }
            | ColonWitness::TwoWeightH { n, .. }
            | ColonWitness::TwoWeightG { n, .. } => n,
        }
    }

    /// The power `t` the colon is taken in.
    pub fn power(&self) -> u32 {
        match *self {
            ColonWitness::OneWeightF { t, .. }
            | ColonWitness::OneWeightG { t, .. }
            | ColonWitness::TwoWeightF { t, .. } => t,
            ColonWitness::OneWeightH { c, d, .. } => (c + d + 3) as u32,
            ColonWitness::TwoWeightH { c, d, .. } => (c + d + 2) as u32,
            ColonWitness::TwoWeightG { .. } => 2,
        }
    }

    pub fn weights(&self) -> Result<WeightSequence> {
        match *self {
            ColonWitness::OneWeightF { n, a, omega, .. }
            | ColonWitness::OneWeightG { n, a, omega, .. }
            | ColonWitness::OneWeightH { n, a, omega, .. } => {
                WeightSequence::one_weight(n, a, omega)
            }
            ColonWitness::TwoWeightF {
                n, a, gamma, delta, ..
            }
            | ColonWitness::TwoWeightH {
                n, a, gamma, delta, ..
            }
            | ColonWitness::TwoWeightG { n, a, gamma, delta } => {
                check_weight("delta", delta)?;
                WeightSequence::two_weight(n, a, gamma, delta)
            }
        }
    }

    pub fn witness(&self) -> Result<Monomial> {
        match *self {
            ColonWitness::OneWeightF { n, a, omega, t } => witness_f1(n, a, omega, t),
            ColonWitness::OneWeightG { n, a, omega, t } => witness_g1(n, a, omega, t),
            ColonWitness::OneWeightH { n, a, omega, c, d } => witness_h1(n, a, omega, c, d),
            ColonWitness::TwoWeightF { n, a, gamma, t, .. } => witness_f2(n, a, gamma, t),
            ColonWitness::TwoWeightH {
                n, a, gamma, c, d, ..
            } => witness_h2(n, a, gamma, c, d),
            ColonWitness::TwoWeightG { n, a, .. } => witness_g2(n, a),
        }
    }

    /// Parameters as ordered key/value text, for reports.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            p.insert(k.to_string(), v);
        };
        put("family", self.family().to_string());
        put("n", self.n().to_string());
        put("t", self.power().to_string());
        match *self {
            ColonWitness::OneWeightF { a, omega, .. }
            | ColonWitness::OneWeightG { a, omega, .. } => {
                put("a", a.to_string());
                put("omega", omega.to_string());
            }
            ColonWitness::OneWeightH { a, omega, c, d, .. } => {
                put("a", a.to_string());
                put("omega", omega.to_string());
                put("c", c.to_string());
                put("d", d.to_string());
            }
            ColonWitness::TwoWeightF {
                a, gamma, delta, ..
            }
            | ColonWitness::TwoWeightG {
                a, gamma, delta, ..
            } => {
                put("a", a.to_string());
                put("gamma", gamma.to_string());
                put("delta", delta.to_string());
            }
            ColonWitness::TwoWeightH {
                a,
                gamma,
                delta,
                c,
                d,
                ..
            } => {
                put("a", a.to_string());
                put("gamma", gamma.to_string());
                put("delta", delta.to_string());
                put("c", c.to_string());
                put("d", d.to_string());
            }
        }
        p
    }

    /// The right-hand side of the colon identity, built from its stated pieces.
    pub fn expected_rhs(&self) -> Result<MonomialIdeal> {
        // Validates the parameter ranges.
        self.witness()?;
        let n = self.n();
        let base = weighted_path(&self.weights()?).edge_ideal();
        let extra = match *self {
            ColonWitness::OneWeightF { a, t, .. } => {
                let t = t as usize;
                if a == 1 {
                    variables(n, 2..=t + 2)
                } else {
                    variables(n, std::iter::once(a - 1).chain(a + 1..=a + t + 1))
                }
            }
            ColonWitness::OneWeightG { a, t, .. } => {
                let t = t as usize;
                variables(n, std::iter::once(a + 2).chain(a - t..=a))
            }
            ColonWitness::OneWeightH { a, c, d, .. } => {
                let left_vars: Vec<usize> = (0..=c.div_ceil(2)).map(|i| a - 2 * i - 1).collect();
                let right_vars: Vec<usize> = (0..=d.div_ceil(2)).map(|i| a + 2 * i + 2).collect();
                let left: Vec<usize> = (a - c - 2..=a).filter(|i| !left_vars.contains(i)).collect();
                let right: Vec<usize> = (a + 1..=a + d + 3)
                    .filter(|i| !right_vars.contains(i))
                    .collect();
                variables(n, left_vars.iter().chain(&right_vars).copied())
                    .sum(&complete_bipartite(n, &left, &right))?
            }
            ColonWitness::TwoWeightF { a, t, .. } => {
                let t = t as usize;
                let left: Vec<usize> = (1..=(t + 3) / 2).map(|i| a + 2 * i + 1).collect();
                let right: Vec<usize> = (a + 3..=a + t + 4).filter(|i| !left.contains(i)).collect();
                variables(n, [(a - 1).max(1), a, a + 2])
                    .sum(&complete_bipartite(n, &left, &right))?
            }
            ColonWitness::TwoWeightH { a, c, d, .. } => {
                let block: Vec<usize> = (a + 3..=a + d + 5).collect();
                let (odd, even): (Vec<usize>, Vec<usize>) =
                    block.iter().partition(|&&i| i % 2 == 1);
                variables(n, (a - c - 2..=a).chain(std::iter::once(a + 2)))
                    .sum(&complete_bipartite(n, &odd, &even))?
            }
            ColonWitness::TwoWeightG { a, delta, .. } => {
                let edge_power = u(n, a + 2).pow(delta - 1)?;
                let near = MonomialIdeal::minimalize(n, [x(n, a + 1), edge_power, x(n, a + 4)])?;
                near.sum(&complete_bipartite(n, &[1, 3], &[2, 4]))?
            }
        };
        base.sum(&extra)
    }

    /// Every instance with `n <= n_max` inside the family's hypothesis ranges,
    /// non-trivial weights drawn from `weights`.
    pub fn enumerate(n_max: usize, weights: &[u32]) -> Vec<ColonWitness> {
        let mut out = Vec::new();
        for n in 2..=n_max {
            for &omega in weights {
                for a in 1..=n / 2 {
                    for t in 2..n.saturating_sub(a) {
                        out.push(ColonWitness::OneWeightF {
                            n,
                            a,
                            omega,
                            t: t as u32,
                        });
                    }
                    for t in 2..a {
                        out.push(ColonWitness::OneWeightG {
                            n,
                            a,
                            omega,
                            t: t as u32,
                        });
                    }
                    if a >= 3 {
                        for c in 0..=a - 3 {
                            for d in 0..=n.saturating_sub(a + 3) {
                                if a + d + 3 <= n && c + d + 6 <= n {
                                    out.push(ColonWitness::OneWeightH { n, a, omega, c, d });
                                }
                            }
                        }
                    }
                }
            }
            for &gamma in weights {
                for &delta in weights {
                    for a in 1..(n / 2) {
                        for t in 2..=n.saturating_sub(a + 4) {
                            out.push(ColonWitness::TwoWeightF {
                                n,
                                a,
                                gamma,
                                delta,
                                t: t as u32,
                            });
                        }
                        if a >= 3 {
                            for c in 0..=a - 3 {
                                for d in 0..=n.saturating_sub(a + 5) {
                                    if a + d + 5 <= n && c + d + 8 <= n {
                                        out.push(ColonWitness::TwoWeightH {
                                            n,
                                            a,
                                            gamma,
                                            delta,
                                            c,
                                            d,
                                        });
                                    }
                                }
                            }
                            out.push(ColonWitness::TwoWeightG { n, a, gamma, delta });
                        }
                    }
                }
            }
        }
        out
    }
}
