use super::complex::MAX_VERTICES;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Standard polarization: `x_i^k` becomes `x_i * y_{i,1} * ... * y_{i,k-1}`.
///
/// The new variables are appended after `x1..xn`, grouped by `i` in increasing
/// order. Returns the squarefree ideal and the number of added variables.
pub fn polarize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, usize)> {
    polarize_with_cap(ideal, MAX_VERTICES)
}

pub fn polarize_with_cap(
    ideal: &MonomialIdeal,
    variable_cap: usize,
) -> Result<(MonomialIdeal, usize)> {
    let n = ideal.nvars();
    let top = ideal.lcm_of_generators();
    let mut offset = Vec::with_capacity(n);
    let mut added = 0usize;
    for &e in top.exponents() {
        offset.push(n + added);
        added += e.saturating_sub(1) as usize;
    }
    let total = n + added;
    if total > variable_cap {
        return Err(Error::ResourceLimit {
            what: "polarized variable count",
            cap: variable_cap,
        });
    }
    let gens = ideal.generators().iter().map(|g| {
        let mut exps = vec![0u32; total];
        for (i, &e) in g.exponents().iter().enumerate() {
            if e >= 1 {
                exps[i] = 1;
            }
            for j in 1..e as usize {
                exps[offset[i] + j - 1] = 1;
            }
        }
        Monomial::from_exponents(exps)
    });
    Ok((MonomialIdeal::minimalize(total, gens)?, added))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| Monomial::parse(g, n).unwrap())).unwrap()
    }

    #[test]
    fn polarize_examples() {
        let sq = ideal(3, &["x1*x2", "x2*x3"]);
        assert_eq!(polarize(&sq).unwrap(), (sq.clone(), 0));

        let (p, c) = polarize(&ideal(1, &["x1^2"])).unwrap();
        assert_eq!(c, 1);
        assert_eq!(p, ideal(2, &["x1*x2"]));

        // In I(P(1,2,1)) the middle generator x2^2 x3^2 polarizes to x2 y2 x3 y3.
        let i = ideal(4, &["x1*x2", "x2^2*x3^2", "x3*x4"]);
        let (p, c) = polarize(&i).unwrap();
        assert_eq!(c, 2);
        assert_eq!(p, ideal(6, &["x1*x2", "x2*x3*x5*x6", "x3*x4"]));
        assert!(p.is_squarefree());
    }

    #[test]
    fn cap_is_enforced() {
        let i = ideal(2, &["x1^5*x2^5"]);
        assert!(matches!(
            polarize_with_cap(&i, 8),
            Err(Error::ResourceLimit { cap: 8, .. })
        ));
    }
}
