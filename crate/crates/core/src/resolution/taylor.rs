//! Betti numbers from the Taylor complex, independent of the lattice/Koszul route.
//!
//! `Tor_i(S/I, k)_b` is the homology of the strand of the Taylor complex spanned by
//! generator subsets whose lcm is exactly `b`; a face map survives tensoring with
//! `k` only when dropping the element keeps the lcm equal to `b`.

use std::collections::{BTreeMap, HashMap};

use super::linalg::IntMatrix;
use super::{BettiTable, Budget, EngineConfig};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub fn taylor_betti_oracle(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<BettiTable> {
    taylor_with_budget(ideal, config, &Budget::start(config)).map(|(t, _)| t)
}

pub(crate) fn taylor_with_budget(
    ideal: &MonomialIdeal,
    config: &EngineConfig,
    budget: &Budget,
) -> Result<(BettiTable, usize)> {
    super::check_proper(ideal)?;
    let gens = ideal.generators();
    let r = gens.len();
    if r > config.oracle_cap || r >= 32 {
        return Err(Error::ResourceLimit {
            what: "Taylor generator count",
            cap: config.oracle_cap.min(31),
        });
    }
    let n = ideal.nvars();
    // lcm of each subset, built from the subset without its lowest element
    let mut lcms: Vec<Vec<u32>> = Vec::with_capacity(1 << r);
    lcms.push(vec![0; n]);
    for mask in 1u32..(1 << r) {
        let low = mask.trailing_zeros() as usize;
        let prev = &lcms[(mask & (mask - 1)) as usize];
        let l = prev
            .iter()
            .zip(gens[low].exponents())
            .map(|(&a, &b)| a.max(b))
            .collect();
        lcms.push(l);
    }
    let mut strands: HashMap<&[u32], Vec<u32>> = HashMap::new();
    for (mask, l) in lcms.iter().enumerate() {
        strands.entry(l.as_slice()).or_default().push(mask as u32);
    }
    let mut entries = BTreeMap::new();
    for (b, members) in &strands {
        budget.check()?;
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); r + 1];
        for &m in members {
            by_size[m.count_ones() as usize].push(m);
        }
        let index: HashMap<u32, usize> = by_size
            .iter()
            .flat_map(|v| v.iter().enumerate().map(|(i, &m)| (m, i)))
            .collect();
        let mut rank = vec![0usize; r + 2];
        for i in 1..=r {
            if by_size[i].is_empty() || by_size[i - 1].is_empty() {
                continue;
            }
            let mut d = IntMatrix::zeros(by_size[i].len(), by_size[i - 1].len());
            for (row, &sigma) in by_size[i].iter().enumerate() {
                let mut rest = sigma;
                let mut pos = 0;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let face = sigma ^ bit;
                    if lcms[face as usize].as_slice() == *b {
                        d.set(row, index[&face], if pos % 2 == 0 { 1 } else { -1 });
                    }
                    pos += 1;
                }
            }
            rank[i] = d.rank(config.field);
        }
        for i in 0..=r {
            let h = by_size[i].len() - rank[i] - rank[i + 1];
            if h > 0 {
                entries.insert((i, Monomial::from_exponents(b.to_vec())), h);
            }
        }
    }
    let examined = strands.len();
    Ok((BettiTable::from_entries(n, config.field, entries), examined))
}
