//! Simplicial complexes on the variable set and their reduced homology.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::linalg::IntMatrix;
use super::Field;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{divides_slice, Monomial};

/// Masks are `u64`, so complexes live on at most this many vertices.
pub const MAX_VERTICES: usize = 64;

/// A simplicial complex on `{1..n}` stored by its facets (bit `i` = vertex `i + 1`).
///
/// No facets is the void complex; the single facet `∅` is the irrelevant complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexOnVars {
    nvars: usize,
    facets: Vec<u64>,
}

impl SimplicialComplexOnVars {
    pub fn void(nvars: usize) -> Self {
        SimplicialComplexOnVars {
            nvars,
            facets: Vec::new(),
        }
    }

    pub fn irrelevant(nvars: usize) -> Self {
        SimplicialComplexOnVars {
            nvars,
            facets: vec![0],
        }
    }

    /// Complex generated by the given faces; non-maximal ones are dropped.
    pub fn from_faces(nvars: usize, faces: impl IntoIterator<Item = u64>) -> Self {
        SimplicialComplexOnVars {
            nvars,
            facets: maximal_masks(faces.into_iter().collect()),
        }
    }

    /// Convenience constructor from 1-based vertex lists.
    pub fn from_vertex_sets(nvars: usize, faces: &[&[usize]]) -> Self {
        let masks = faces
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &v| m | (1 << (v - 1))));
        SimplicialComplexOnVars::from_faces(nvars, masks)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [0]
    }

    /// Facets as sorted 1-based vertex sets.
    pub fn facet_sets(&self) -> BTreeSet<Vec<usize>> {
        self.facets.iter().map(|&m| mask_vertices(m)).collect()
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| f & face == face)
    }

    /// All faces, including `∅` unless the complex is void.
    pub fn faces(&self) -> Vec<u64> {
        let mut seen = HashSet::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }
}

fn mask_vertices(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

fn maximal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| k & m == m) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

/// Facet masks of the upper Koszul complex of `gens` at multidegree `b`.
///
/// A squarefree `W ⊆ supp(b)` is a face iff some generator `g` divides `x^b / x^W`,
/// i.e. `W ⊆ {i : g_i < b_i}`; so the complex is generated by one simplex per
/// generator dividing `x^b`.
pub(crate) fn koszul_facets(gens: &[Monomial], b: &[u32]) -> Vec<u64> {
    let mut masks = Vec::new();
    for g in gens {
        let g = g.exponents();
        if !divides_slice(g, b) {
            continue;
        }
        let mut mask = 0u64;
        for (i, (&gi, &bi)) in g.iter().zip(b).enumerate() {
            if gi < bi {
                mask |= 1 << i;
            }
        }
        masks.push(mask);
    }
    maximal_masks(masks)
}

pub fn upper_koszul_complex(
    ideal: &MonomialIdeal,
    b: &Monomial,
) -> Result<SimplicialComplexOnVars> {
    if ideal.nvars() != b.nvars() {
        return Err(Error::AmbientMismatch {
            left: ideal.nvars(),
            right: b.nvars(),
        });
    }
    if ideal.nvars() > MAX_VERTICES {
        return Err(Error::ResourceLimit {
            what: "variable count",
            cap: MAX_VERTICES,
        });
    }
    Ok(SimplicialComplexOnVars {
        nvars: ideal.nvars(),
        facets: koszul_facets(ideal.generators(), b.exponents()),
    })
}

/// Reduced homology ranks; entry `k` is the rank of `H̃_{k-1}`, starting at dimension -1.
/// The void complex has no homology at all (empty vector); `{∅}` gives `[1]`.
pub fn reduced_homology_ranks(k: &SimplicialComplexOnVars, field: Field) -> Vec<usize> {
    homology_of_facets(&k.facets, field)
}

/// Shared entry point for facet lists (already maximal).
pub(crate) fn homology_of_facets(facets: &[u64], field: Field) -> Vec<usize> {
    if facets.is_empty() {
        return Vec::new();
    }
    if facets == [0] {
        return vec![1];
    }
    let common = facets.iter().fold(u64::MAX, |acc, &f| acc & f);
    let dim_plus_two = facets.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize + 1;
    if common != 0 {
        // A cone over any common vertex: acyclic.
        return vec![0; dim_plus_two];
    }
    let direct_cost: u64 = facets.iter().map(|f| 1u64 << f.count_ones().min(40)).sum();
    let nerve_cost = 1u64 << facets.len().min(40);
    let faces = if direct_cost <= nerve_cost {
        faces_of(facets)
    } else {
        nerve_faces(facets)
    };
    let mut ranks = chain_homology(&faces, field);
    ranks.resize(dim_plus_two.max(ranks.len()), 0);
    // The nerve may have higher dimension than the complex itself; trailing zeros only.
    ranks.truncate(dim_plus_two);
    ranks
}

fn faces_of(facets: &[u64]) -> Vec<Vec<u64>> {
    let mut seen: HashSet<u64> = HashSet::new();
    for &f in facets {
        let mut sub = f;
        loop {
            seen.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & f;
        }
    }
    group_by_size(seen.into_iter())
}

/// Faces of the nerve of the facet cover: sets of facets with a common vertex.
/// Homotopy equivalent to the complex, since all intersections are simplices.
fn nerve_faces(facets: &[u64]) -> Vec<Vec<u64>> {
    fn extend(facets: &[u64], start: usize, set: u64, inter: u64, out: &mut Vec<u64>) {
        for i in start..facets.len() {
            let next = inter & facets[i];
            if next != 0 {
                let s = set | (1 << i);
                out.push(s);
                extend(facets, i + 1, s, next, out);
            }
        }
    }
    let mut out = vec![0u64];
    extend(facets, 0, 0, u64::MAX, &mut out);
    group_by_size(out.into_iter())
}

fn group_by_size(faces: impl Iterator<Item = u64>) -> Vec<Vec<u64>> {
    let mut by_size: Vec<Vec<u64>> = Vec::new();
    for f in faces {
        let k = f.count_ones() as usize;
        if by_size.len() <= k {
            by_size.resize(k + 1, Vec::new());
        }
        by_size[k].push(f);
    }
    for v in &mut by_size {
        v.sort_unstable();
    }
    by_size
}

/// Reduced homology of a complex given as faces grouped by cardinality
/// (`faces[k]` holds the faces with `k` vertices, `faces[0] == [∅]`).
fn chain_homology(faces: &[Vec<u64>], field: Field) -> Vec<usize> {
    let top = faces.len();
    // rank of the boundary from size-k faces to size-(k-1) faces, for k = 1..top-1
    let mut boundary_rank = vec![0usize; top + 1];
    for k in 1..top {
        boundary_rank[k] = boundary_matrix(&faces[k - 1], &faces[k]).rank(field);
    }
    (0..top)
        .map(|k| faces[k].len() - boundary_rank[k] - boundary_rank[k + 1])
        .collect()
}

fn boundary_matrix(lower: &[u64], upper: &[u64]) -> IntMatrix {
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut m = IntMatrix::zeros(upper.len(), lower.len());
    for (r, &face) in upper.iter().enumerate() {
        let mut rest = face;
        let mut pos = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            m.set(r, index[&(face ^ bit)], sign);
            pos += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| Monomial::parse(g, n).unwrap())).unwrap()
    }

    #[test]
    fn koszul_examples() {
        let i = ideal(2, &["x1*x2"]);
        let k = upper_koszul_complex(&i, &Monomial::parse("x1*x2", 2).unwrap()).unwrap();
        assert!(k.is_irrelevant());

        let k = upper_koszul_complex(&i, &Monomial::parse("x1", 2).unwrap()).unwrap();
        assert!(k.is_void());

        // Oracle: scan all 8 subsets W of {1,2,3} and test x^b / x^W ∈ I directly.
        let p3 = ideal(3, &["x1*x2", "x2*x3"]);
        let b = Monomial::from_exponents(vec![1, 1, 1]);
        let k = upper_koszul_complex(&p3, &b).unwrap();
        let mut scanned = Vec::new();
        for w in 0u64..8 {
            let mut e = b.exponents().to_vec();
            for (i, x) in e.iter_mut().enumerate() {
                if w >> i & 1 == 1 {
                    *x -= 1;
                }
            }
            if p3.contains(&Monomial::from_exponents(e)).unwrap() {
                scanned.push(w);
            }
        }
        assert_eq!(scanned, vec![0, 1, 4]);
        assert_eq!(k.faces(), scanned);
        assert_eq!(k.facet_sets(), BTreeSet::from([vec![1], vec![3]]));
    }

    #[test]
    fn homology_examples() {
        let two_points = SimplicialComplexOnVars::from_vertex_sets(2, &[&[1], &[2]]);
        assert_eq!(
            reduced_homology_ranks(&two_points, Field::Rational),
            vec![0, 1]
        );

        let triangle = SimplicialComplexOnVars::from_vertex_sets(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(
            reduced_homology_ranks(&triangle, Field::Rational),
            vec![0, 0, 1]
        );
        assert_eq!(
            reduced_homology_ranks(&triangle, Field::Prime(2)),
            vec![0, 0, 1]
        );

        let simplex = SimplicialComplexOnVars::from_vertex_sets(4, &[&[1, 2, 3, 4]]);
        assert!(reduced_homology_ranks(&simplex, Field::Rational)
            .iter()
            .all(|&r| r == 0));

        assert_eq!(
            reduced_homology_ranks(&SimplicialComplexOnVars::void(3), Field::Rational),
            Vec::<usize>::new()
        );
        assert_eq!(
            reduced_homology_ranks(&SimplicialComplexOnVars::irrelevant(3), Field::Rational),
            vec![1]
        );
    }

    #[test]
    fn sphere_and_torsion_free_examples() {
        // Boundary of the 3-simplex: a 2-sphere.
        let sphere = SimplicialComplexOnVars::from_vertex_sets(
            4,
            &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]],
        );
        assert_eq!(
            reduced_homology_ranks(&sphere, Field::Rational),
            vec![0, 0, 0, 1]
        );
        // Square (4-cycle) plus an isolated vertex: H0 = 1, H1 = 1.
        let k = SimplicialComplexOnVars::from_vertex_sets(
            5,
            &[&[1, 2], &[2, 3], &[3, 4], &[1, 4], &[5]],
        );
        assert_eq!(reduced_homology_ranks(&k, Field::Rational), vec![0, 1, 1]);
    }

    #[test]
    fn real_projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2: H̃_1 = Z/2, so ranks differ between Q and GF(2).
        let rp2: &[&[usize]] = &[
            &[1, 2, 4],
            &[1, 2, 6],
            &[1, 3, 4],
            &[1, 3, 5],
            &[1, 5, 6],
            &[2, 3, 5],
            &[2, 3, 6],
            &[2, 4, 5],
            &[3, 4, 6],
            &[4, 5, 6],
        ];
        let k = SimplicialComplexOnVars::from_vertex_sets(6, rp2);
        assert_eq!(
            reduced_homology_ranks(&k, Field::Rational),
            vec![0, 0, 0, 0]
        );
        assert_eq!(
            reduced_homology_ranks(&k, Field::Prime(2)),
            vec![0, 0, 1, 1]
        );
        assert_eq!(
            reduced_homology_ranks(&k, Field::Prime(3)),
            vec![0, 0, 0, 0]
        );
    }

    #[test]
    fn nerve_route_agrees_with_direct_route() {
        let cases: Vec<Vec<u64>> = vec![
            vec![0b0011, 0b0110, 0b1100, 0b1001],
            vec![0b0111, 0b1110, 0b1101, 0b1011],
            vec![0b00011, 0b01100, 0b10000],
            vec![0b111000, 0b000111, 0b100100],
        ];
        for facets in cases {
            let facets = maximal_masks(facets);
            for field in [Field::Rational, Field::Prime(2)] {
                let a = chain_homology(&faces_of(&facets), field);
                let mut b = chain_homology(&nerve_faces(&facets), field);
                b.resize(a.len().max(b.len()), 0);
                let mut a2 = a.clone();
                a2.resize(b.len(), 0);
                assert_eq!(a2, b, "{facets:?}");
            }
        }
    }
}
