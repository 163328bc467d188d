//! Multigraded Betti numbers, projective dimension and depth of `S/I`.
//!
//! The main route walks the lcm lattice of `I` and, at each multidegree `b`,
//! reads `β_{i+1,b}(S/I)` off the reduced homology `H̃_{i-1}` of the upper Koszul
//! complex. The Taylor complex gives an independent second route.
//! Depth is `n - pd` (Auslander–Buchsbaum).

pub mod complex;
pub mod lattice;
pub mod linalg;
pub mod polarize;
pub mod taylor;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub use complex::{reduced_homology_ranks, upper_koszul_complex, SimplicialComplexOnVars};
pub use lattice::lcm_lattice;
pub use polarize::polarize;
pub use taylor::taylor_betti_oracle;

/// Coefficient field, identified by its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn from_characteristic(c: u32) -> Result<Field> {
        if c == 0 {
            return Ok(Field::Rational);
        }
        if c >= 1 << 31 || !is_prime(c) {
            return Err(Error::InvalidArgument(format!(
                "characteristic must be 0 or a prime below 2^31, got {c}"
            )));
        }
        Ok(Field::Prime(c))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

fn is_prime(c: u32) -> bool {
    c >= 2
        && (2u32..)
            .take_while(|d| d * d <= c)
            .all(|d| !c.is_multiple_of(d))
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.characteristic())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = u32::deserialize(d)?;
        Field::from_characteristic(c).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.characteristic())
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub field: Field,
    /// Maximum number of lcm-lattice elements (bottom included).
    pub lattice_cap: usize,
    /// Maximum generator count for the Taylor oracle (`2^r` subsets).
    pub oracle_cap: usize,
    pub time_budget: Option<Duration>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            field: Field::Rational,
            lattice_cap: 1 << 20,
            oracle_cap: 14,
            time_budget: None,
        }
    }
}

impl EngineConfig {
    pub fn with_field(field: Field) -> Self {
        EngineConfig {
            field,
            ..EngineConfig::default()
        }
    }
}

pub(crate) struct Budget {
    deadline: Option<(Instant, Duration)>,
}

impl Budget {
    pub(crate) fn start(config: &EngineConfig) -> Budget {
        Budget {
            deadline: config.time_budget.map(|d| (Instant::now() + d, d)),
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self.deadline {
            Some((at, d)) if Instant::now() > at => Err(Error::TimeBudget {
                budget_ms: d.as_millis(),
            }),
            _ => Ok(()),
        }
    }
}

/// Nonzero `β_{i,b}(S/I)` keyed by homological index and multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    nvars: usize,
    field: Field,
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub(crate) fn from_entries(
        nvars: usize,
        field: Field,
        entries: BTreeMap<(usize, Monomial), usize>,
    ) -> Self {
        BettiTable {
            nvars,
            field,
            entries,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, b: &Monomial) -> usize {
        self.entries.get(&(i, b.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|((i, b), &r)| (*i, b, r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `β_i(S/I)` summed over multidegrees, indexed by `i`.
    pub fn total_betti_numbers(&self) -> Vec<usize> {
        let mut out = vec![0; self.projective_dimension() + 1];
        for ((i, _), r) in &self.entries {
            out[*i] += r;
        }
        out
    }

    /// Rows `i <TAB> multidegree <TAB> rank`, ordered by `(i, multidegree)`.
    pub fn to_rows(&self) -> String {
        let mut out = String::new();
        for ((i, b), r) in &self.entries {
            out.push_str(&format!("{i}\t{b}\t{r}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LatticeKoszul,
    TaylorOracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::LatticeKoszul => "lattice-koszul",
            Method::TaylorOracle => "taylor-oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub depth: usize,
    pub projective_dimension: usize,
    pub field: Field,
    pub method: Method,
    /// Multidegrees examined: lattice elements, or distinct Taylor strands.
    pub lattice_size: usize,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct DepthReportJson {
    depth: usize,
    pd: usize,
    char: u32,
    method: Method,
    lattice_size: usize,
    elapsed_ms: u128,
}

impl DepthReport {
    /// `{"depth": d, "pd": p, "char": c, "method": m, "lattice_size": s, "elapsed_ms": t}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json_fields()).expect("report json")
    }

    /// Same as [`DepthReport::to_json`], with the keys in the order listed there.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.json_fields()).expect("report json")
    }

    fn json_fields(&self) -> DepthReportJson {
        DepthReportJson {
            depth: self.depth,
            pd: self.projective_dimension,
            char: self.field.characteristic(),
            method: self.method,
            lattice_size: self.lattice_size,
            elapsed_ms: self.elapsed.as_millis(),
        }
    }
}

pub(crate) fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::InvalidArgument(
            "the zero ideal is not accepted".into(),
        ));
    }
    if ideal.is_unit() {
        return Err(Error::InvalidArgument(
            "the unit ideal is not accepted".into(),
        ));
    }
    Ok(())
}

pub fn betti_table(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<BettiTable> {
    betti_with_budget(ideal, config, &Budget::start(config)).map(|(t, _)| t)
}

fn betti_with_budget(
    ideal: &MonomialIdeal,
    config: &EngineConfig,
    budget: &Budget,
) -> Result<(BettiTable, usize)> {
    check_proper(ideal)?;
    if ideal.nvars() > complex::MAX_VERTICES {
        return Err(Error::ResourceLimit {
            what: "variable count",
            cap: complex::MAX_VERTICES,
        });
    }
    let lattice = lattice::lattice_with_budget(ideal, config, budget)?;
    let gens = ideal.generators();
    let per_degree: Vec<(usize, Vec<usize>)> = lattice
        .par_iter()
        .enumerate()
        .map(|(k, b)| {
            if k % 256 == 0 {
                budget.check()?;
            }
            if b.is_unit() {
                return Ok((k, Vec::new()));
            }
            let facets = complex::koszul_facets(gens, b.exponents());
            Ok((k, complex::homology_of_facets(&facets, config.field)))
        })
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    entries.insert((0, Monomial::unit(ideal.nvars())), 1);
    for (k, ranks) in per_degree {
        // ranks[d] is H̃_{d-1}, contributing β_{d+1}(S/I)
        for (d, &r) in ranks.iter().enumerate() {
            if r > 0 {
                entries.insert((d + 1, lattice[k].clone()), r);
            }
        }
    }
    Ok((
        BettiTable::from_entries(ideal.nvars(), config.field, entries),
        lattice.len(),
    ))
}

pub fn depth(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<DepthReport> {
    depth_with_method(ideal, config, Method::LatticeKoszul)
}

pub fn depth_with_method(
    ideal: &MonomialIdeal,
    config: &EngineConfig,
    method: Method,
) -> Result<DepthReport> {
    let start = Instant::now();
    let budget = Budget::start(config);
    let (table, lattice_size) = match method {
        Method::LatticeKoszul => betti_with_budget(ideal, config, &budget)?,
        Method::TaylorOracle => taylor::taylor_with_budget(ideal, config, &budget)?,
    };
    let pd = table.projective_dimension();
    Ok(DepthReport {
        depth: ideal.nvars() - pd,
        projective_dimension: pd,
        field: config.field,
        method,
        lattice_size,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| Monomial::parse(g, n).unwrap())).unwrap()
    }

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    #[test]
    fn principal_ideal_table() {
        let t = betti_table(&ideal(2, &["x1*x2"]), &EngineConfig::default()).unwrap();
        assert_eq!(t.to_rows(), "0\t1\t1\n1\tx1*x2\t1\n");
        assert_eq!(t.projective_dimension(), 1);
    }

    #[test]
    fn path_on_three_vertices_table() {
        let i = ideal(3, &["x1*x2", "x2*x3"]);
        let t = betti_table(&i, &EngineConfig::default()).unwrap();
        assert_eq!(t.total_betti_numbers(), vec![1, 2, 1]);
        assert_eq!(t.get(2, &mono("x1*x2*x3", 3)), 1);
        assert_eq!(t.projective_dimension(), 2);
        assert_eq!(
            t,
            taylor_betti_oracle(&i, &EngineConfig::default()).unwrap()
        );
    }

    #[test]
    fn complete_intersection_table() {
        let t = betti_table(&ideal(4, &["x1*x2", "x3*x4"]), &EngineConfig::default()).unwrap();
        assert_eq!(t.get(2, &mono("x1*x2*x3*x4", 4)), 1);
        assert_eq!(t.projective_dimension(), 2);
    }

    #[test]
    fn first_betti_multidegrees_are_the_generators() {
        let i = ideal(4, &["x1^2*x2", "x2*x3^3", "x3*x4", "x1*x4^2"]);
        let t = betti_table(&i, &EngineConfig::default()).unwrap();
        let firsts: BTreeSet<&Monomial> = t.entries().filter(|e| e.0 == 1).map(|e| e.1).collect();
        assert_eq!(firsts, i.generators().iter().collect::<BTreeSet<_>>());
        let zeros: Vec<_> = t.entries().filter(|e| e.0 == 0).collect();
        assert_eq!(zeros, vec![(0, &Monomial::unit(4), 1)]);
    }

    #[test]
    fn depth_examples() {
        let cfg = EngineConfig::default();
        let p4 = ideal(4, &["x1*x2", "x2*x3", "x3*x4"]);
        let r = depth(&p4, &cfg).unwrap();
        assert_eq!((r.depth, r.projective_dimension), (2, 2));
        assert_eq!(r.lattice_size, 7);
        let r = depth_with_method(&p4, &cfg, Method::TaylorOracle).unwrap();
        assert_eq!((r.depth, r.projective_dimension), (2, 2));

        let r = depth(&ideal(3, &["x1^2*x2^2"]), &cfg).unwrap();
        assert_eq!((r.depth, r.projective_dimension), (2, 1));
    }

    #[test]
    fn zero_and_unit_ideals_are_rejected() {
        let cfg = EngineConfig::default();
        assert!(depth(&MonomialIdeal::zero(3), &cfg).is_err());
        assert!(depth(&MonomialIdeal::unit(3), &cfg).is_err());
        assert!(taylor_betti_oracle(&MonomialIdeal::unit(3), &cfg).is_err());
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let i = ideal(4, &["x1*x2", "x2*x3", "x3*x4"]);
        let cfg = EngineConfig {
            oracle_cap: 2,
            ..EngineConfig::default()
        };
        assert!(matches!(
            taylor_betti_oracle(&i, &cfg),
            Err(Error::ResourceLimit { cap: 2, .. })
        ));
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let i = ideal(4, &["x1*x2", "x2*x3", "x3*x4"]).power(6).unwrap();
        let cfg = EngineConfig {
            time_budget: Some(Duration::ZERO),
            ..EngineConfig::default()
        };
        let err = depth(&i, &cfg).unwrap_err();
        assert!(err.is_resource(), "{err}");
    }

    #[test]
    fn report_json_shape() {
        let r = depth(
            &ideal(2, &["x1*x2"]),
            &EngineConfig::with_field(Field::Prime(2)),
        )
        .unwrap();
        let j = r.to_json();
        assert_eq!(j["depth"], 1);
        assert_eq!(j["pd"], 1);
        assert_eq!(j["char"], 2);
        assert_eq!(j["method"], "lattice-koszul");
        assert_eq!(j["lattice_size"], 2);
        assert!(j["elapsed_ms"].is_u64());
    }

    #[test]
    fn characteristic_validation() {
        assert_eq!(Field::from_characteristic(0).unwrap(), Field::Rational);
        assert_eq!(Field::from_characteristic(7).unwrap(), Field::Prime(7));
        assert!(Field::from_characteristic(1).is_err());
        assert!(Field::from_characteristic(9).is_err());
        assert!(Field::from_characteristic(2_147_483_659).is_err());
    }
}
