//! Exact matrix rank over Q and over prime fields.
//!
//! Boundary matrices have entries in {-1, 0, 1}. Over Q the rank is computed by
//! fraction-free (Bareiss) elimination in `i64`, falling back to `BigInt` when an
//! intermediate minor overflows. No floating point is involved anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Field;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn rank(&self, field: Field) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match field {
            Field::Rational => rank_rational(self),
            Field::Prime(2) => rank_gf2(self),
            Field::Prime(p) => rank_mod_p(self, p),
        }
    }
}

pub fn rank_rational(m: &IntMatrix) -> usize {
    bareiss_i64(m).unwrap_or_else(|| bareiss_big(m))
}

/// `None` if some intermediate value leaves the `i64` range.
fn bareiss_i64(m: &IntMatrix) -> Option<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut prev: i64 = 1;
    let mut rank = 0;
    while rank < rows && rank < cols {
        // Prefer a unit pivot: it keeps the entries small.
        let mut pivot = None;
        'search: for i in rank..rows {
            for j in rank..cols {
                let v = a[i * cols + j];
                if v == 1 || v == -1 {
                    pivot = Some((i, j));
                    break 'search;
                }
                if v != 0 && pivot.is_none() {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, cols, rank, pi);
        swap_cols(&mut a, rows, cols, rank, pj);
        let p = a[rank * cols + rank];
        for i in rank + 1..rows {
            let f = a[i * cols + rank];
            for j in rank + 1..cols {
                let x = a[i * cols + j];
                let y = a[rank * cols + j];
                let num = (p as i128) * (x as i128) - (f as i128) * (y as i128);
                let q = num / prev as i128;
                a[i * cols + j] = i64::try_from(q).ok()?;
            }
            a[i * cols + rank] = 0;
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&v| BigInt::from(v)).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    while rank < rows && rank < cols {
        let mut pivot = None;
        'search: for i in rank..rows {
            for j in rank..cols {
                if !a[i * cols + j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, cols, rank, pi);
        swap_cols(&mut a, rows, cols, rank, pj);
        let p = a[rank * cols + rank].clone();
        for i in rank + 1..rows {
            let f = a[i * cols + rank].clone();
            for j in rank + 1..cols {
                let num = &p * &a[i * cols + j] - &f * &a[rank * cols + j];
                a[i * cols + j] = num / &prev;
            }
            a[i * cols + rank] = BigInt::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..cols {
        a.swap(r1 * cols + j, r2 * cols + j);
    }
}

fn swap_cols<T>(a: &mut [T], rows: usize, cols: usize, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..rows {
        a.swap(i * cols + c1, i * cols + c2);
    }
}

pub fn rank_gf2(m: &IntMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            let mut bits = vec![0u64; words];
            for c in 0..m.cols {
                if m.get(r, c).rem_euclid(2) == 1 {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn rank_mod_p(m: &IntMatrix, p: u32) -> usize {
    let p = u64::from(p);
    let cols = m.cols;
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u64)
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        swap_rows(&mut a, cols, rank, pr);
        let inv = inv_mod(a[rank * cols + c], p);
        for j in c..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        for r in rank + 1..m.rows {
            let f = a[r * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * a[rank * cols + j] % p;
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(Field::Rational), 1);
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(Field::Rational), 2);
        assert_eq!(m.rank(Field::Prime(2)), 1);
        assert_eq!(m.rank(Field::Prime(3)), 2);
        let m = IntMatrix::from_rows(&[vec![3, 0], vec![0, 3]]);
        assert_eq!(m.rank(Field::Prime(3)), 0);
        assert_eq!(m.rank(Field::Rational), 2);
        assert_eq!(IntMatrix::zeros(0, 5).rank(Field::Rational), 0);
    }

    #[test]
    fn big_fallback_agrees() {
        // Entries large enough that the products overflow i64 along the way.
        let big = 3_000_000_000i64;
        let m = IntMatrix::from_rows(&[
            vec![big, big + 1, 7],
            vec![big - 1, big, 5],
            vec![2 * big - 1, 2 * big + 1, 12],
        ]);
        assert_eq!(bareiss_big(&m), 2);
        assert_eq!(rank_rational(&m), 2);
    }

    /// Independent rank: Gaussian elimination over exact rationals as (num, den) pairs in i128.
    fn rank_fraction_oracle(m: &IntMatrix) -> usize {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        fn norm((n, d): (i128, i128)) -> (i128, i128) {
            if n == 0 {
                return (0, 1);
            }
            let g = gcd(n, d);
            let s = if d < 0 { -1 } else { 1 };
            (s * n / g, s * d / g)
        }
        let mut a: Vec<Vec<(i128, i128)>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| (m.get(r, c) as i128, 1)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| a[r][c].0 != 0) else {
                continue;
            };
            a.swap(rank, p);
            let (pn, pd) = a[rank][c];
            for r in rank + 1..a.len() {
                let (fn_, fd) = a[r][c];
                if fn_ == 0 {
                    continue;
                }
                // factor = f / p
                let (qn, qd) = norm((fn_ * pd, fd * pn));
                for j in c..m.cols() {
                    let (xn, xd) = a[r][j];
                    let (yn, yd) = a[rank][j];
                    let (tn, td) = norm((qn * yn, qd * yd));
                    a[r][j] = norm((xn * td - tn * xd, xd * td));
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn rational_rank_matches_fraction_oracle(
            rows in 1usize..7, cols in 1usize..7,
            data in prop::collection::vec(-2i64..3, 49)
        ) {
            let m = IntMatrix::from_rows(
                &(0..rows).map(|r| data[r * 7..r * 7 + cols].to_vec()).collect::<Vec<_>>()
            );
            prop_assert_eq!(m.rank(Field::Rational), rank_fraction_oracle(&m));
            prop_assert_eq!(bareiss_big(&m), rank_fraction_oracle(&m));
        }

        #[test]
        fn gf2_matches_generic_prime(
            rows in 1usize..9, cols in 1usize..9,
            data in prop::collection::vec(-1i64..2, 81)
        ) {
            let m = IntMatrix::from_rows(
                &(0..rows).map(|r| data[r * 9..r * 9 + cols].to_vec()).collect::<Vec<_>>()
            );
            prop_assert_eq!(rank_gf2(&m), rank_mod_p(&m, 2));
            prop_assert!(m.rank(Field::Prime(2)) <= m.rank(Field::Rational));
        }
    }
}
