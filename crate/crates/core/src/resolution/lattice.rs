use std::collections::HashSet;

use super::{Budget, EngineConfig};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// The lcm lattice of `I`: closure of the minimal generators under pairwise lcm,
/// plus the bottom element (the unit monomial). Sorted lexicographically.
pub fn lcm_lattice(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<Vec<Monomial>> {
    lattice_with_budget(ideal, config, &Budget::start(config))
}

pub(crate) fn lattice_with_budget(
    ideal: &MonomialIdeal,
    config: &EngineConfig,
    budget: &Budget,
) -> Result<Vec<Monomial>> {
    if ideal.is_zero() {
        return Err(Error::InvalidArgument(
            "lcm lattice of the zero ideal".into(),
        ));
    }
    let gens: Vec<&[u32]> = ideal.generators().iter().map(|g| g.exponents()).collect();
    let mut seen: HashSet<Box<[u32]>> = HashSet::new();
    let mut frontier: Vec<Box<[u32]>> = Vec::new();
    seen.insert(vec![0; ideal.nvars()].into_boxed_slice());
    for g in &gens {
        let g: Box<[u32]> = (*g).into();
        if seen.insert(g.clone()) {
            frontier.push(g);
        }
    }
    // Every join of a subset is reached by joining one generator at a time.
    let mut scratch = vec![0u32; ideal.nvars()];
    let mut steps = 0usize;
    while let Some(m) = frontier.pop() {
        steps += 1;
        if steps.is_multiple_of(4096) {
            budget.check()?;
        }
        for g in &gens {
            for ((s, &a), &b) in scratch.iter_mut().zip(m.iter()).zip(g.iter()) {
                *s = a.max(b);
            }
            if !seen.contains(scratch.as_slice()) {
                if seen.len() >= config.lattice_cap {
                    return Err(Error::ResourceLimit {
                        what: "lcm lattice size",
                        cap: config.lattice_cap,
                    });
                }
                let boxed: Box<[u32]> = scratch.clone().into_boxed_slice();
                seen.insert(boxed.clone());
                frontier.push(boxed);
            }
        }
    }
    let mut out: Vec<Monomial> = seen
        .into_iter()
        .map(|e| Monomial::from_exponents(e.into_vec()))
        .collect();
    out.sort();
    Ok(out)
}
