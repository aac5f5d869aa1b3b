//! Exact rank over `Q` by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scalars of the ground field `Q`; always stored in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Row-major dense matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Rank over `Q`.
    ///
    /// Rows are scaled to integers, then reduced with Bareiss elimination
    /// using full pivoting on the entry of least absolute value.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| integer_row(&self.entries[r * self.cols..(r + 1) * self.cols]))
            .collect();
        let (nr, nc) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for k in 0..nr.min(nc) {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, v) in row.iter().enumerate().skip(k) {
                    if v.is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => v.abs() < m[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(k, pi);
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(k, pj);
                }
            }
            let (head, tail) = m.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = &pivot_row[k];
            for row in tail.iter_mut() {
                let lead = row[k].clone();
                for j in (k + 1)..nc {
                    let num = &row[j] * pivot - &lead * &pivot_row[j];
                    row[j] = num / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = pivot.clone();
            rank += 1;
        }
        rank
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Row echelon over `Q` with plain division; independent of the
    /// fraction-free path.
    fn naive_rank(m: &DenseMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    let pivot = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot) {
                        *x = &*x - &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(DenseMatrix::identity(3).rank(), 3);
        assert_eq!(DenseMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(DenseMatrix::from_i64(&[vec![1, 1], vec![1, 1], vec![2, 2]]).rank(), 1);
        assert_eq!(DenseMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(DenseMatrix::zeros(1, 0).rank(), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let m = DenseMatrix::from_rows(vec![
            vec![half.clone(), third.clone()],
            vec![rat(3), rat(2)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = DenseMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                DenseMatrix::from_rows(
                    (0..r)
                        .map(|i| v[i * c..(i + 1) * c].iter().map(|&x| rat(x)).collect())
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn matches_naive_and_transpose(m in small_matrix()) {
            let r = m.rank();
            prop_assert_eq!(r, naive_rank(&m));
            prop_assert_eq!(r, m.transpose().rank());
            prop_assert!(r <= m.rows().min(m.cols()));
        }

        #[test]
        fn product_rank_bound(a in small_matrix(), seed in 0i64..50) {
            let k = a.cols();
            let b = DenseMatrix::from_rows(
                (0..k).map(|i| (0..3).map(|j| rat((i as i64 * 7 + j * 3 + seed) % 5 - 2)).collect()).collect(),
            );
            if k > 0 {
                let ab = a.mul(&b);
                prop_assert!(ab.rank() <= a.rank().min(b.rank()));
            }
        }

        #[test]
        fn invariant_under_permutation_and_scaling(m in small_matrix(), s in 1i64..7) {
            let r = m.rank();
            let mut rows: Vec<Vec<Rational>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
                .collect();
            rows.reverse();
            for row in rows.iter_mut() {
                let shift = usize::from(!row.is_empty());
                row.rotate_left(shift);
                for v in row.iter_mut() {
                    *v = &*v * Rational::new(s.into(), 3.into());
                }
            }
            let p = if rows.is_empty() { DenseMatrix::zeros(0, m.cols()) } else { DenseMatrix::from_rows(rows) };
            prop_assert_eq!(p.rank(), r);
        }
    }
}
