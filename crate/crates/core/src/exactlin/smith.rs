//! Smith normal form with unimodular transforms.
//!
//! `U · A · V = S` where `S` is diagonal with non-negative entries forming a
//! divisibility chain. Pivoting always picks the nonzero entry of least
//! absolute value in the active submatrix, which keeps intermediate growth
//! modest on the small matrices this crate deals with.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `S`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Re-checks every invariant from scratch. Used by tests and by the
    /// verification suite; the constructor already guarantees them.
    pub fn verify(&self) -> bool {
        let Ok(us) = self.u.try_mul(&self.source) else {
            return false;
        };
        let Ok(usv) = us.try_mul(&self.v) else {
            return false;
        };
        if usv != self.s || !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        for i in 0..self.s.rows() {
            for j in 0..self.s.cols() {
                if i != j && !self.s.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let d = self.diagonal();
        if d.iter().any(|x| x.is_negative()) {
            return false;
        }
        d.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
    }
}

pub fn smith_normal_form(source: &IntMatrix) -> SmithDecomposition {
    let m = source.rows();
    let n = source.cols();
    let mut a = source.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition {
        u,
        s: a,
        v,
        source: source.clone(),
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(d: &SmithDecomposition) -> Vec<i64> {
        use num_traits::ToPrimitive;
        d.diagonal().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn relation_matrix_of_two_twelves() {
        let a = IntMatrix::from_i64_rows(&[[12, 0], [0, 12], [6, 6]]);
        let d = smith_normal_form(&a);
        assert!(d.verify());
        assert_eq!(diag_i64(&d), vec![6, 12]);
    }

    #[test]
    fn zero_matrix() {
        let d = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert!(d.verify());
        assert_eq!(diag_i64(&d), vec![0, 0]);
        assert_eq!(d.u, IntMatrix::identity(2));
        assert_eq!(d.v, IntMatrix::identity(2));
    }

    #[test]
    fn coprime_gcd_gives_unit_first() {
        let d = smith_normal_form(&IntMatrix::from_i64_rows(&[[4, 0], [1, 3]]));
        assert!(d.verify());
        assert_eq!(diag_i64(&d), vec![1, 12]);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) is diagonal but not in Smith form.
        let d = smith_normal_form(&IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]));
        assert!(d.verify());
        assert_eq!(diag_i64(&d), vec![1, 6]);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let d = smith_normal_form(&IntMatrix::zeros(r, c));
            assert!(d.verify());
            assert!(d.diagonal().is_empty());
        }
    }

    #[test]
    fn negative_entries_normalised() {
        let d = smith_normal_form(&IntMatrix::from_i64_rows(&[[-4, 6], [2, -8]]));
        assert!(d.verify());
        assert_eq!(diag_i64(&d), vec![2, 10]);
    }
}
