//! Exact integer linear algebra: products, unimodular inverses, ranks,
//! characteristic polynomials and the non-negativity test.
//!
//! Nothing here touches floating point. Elimination is fraction-free
//! (Bareiss) or uses unimodular integer row operations, so every
//! intermediate value stays integral.

mod matrix;
mod perm;
mod poly;

pub use matrix::Matrix;
pub use perm::{cycle_decomposition, Permutation};
pub use poly::Polynomial;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.mul(b)
}

/// Integer inverse of a matrix with determinant ±1.
///
/// Works by Euclidean row reduction, which only uses unimodular row
/// operations; a pivot other than ±1 (or a zero column) means the input
/// is not unimodular.
pub fn unimodular_inverse<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if m.is_upper_triangular() && (0..n).all(|i| m[(i, i)].is_one()) {
        return Ok(unit_upper_inverse(m));
    }
    let mut a = m.to_rows();
    let mut inv = Matrix::<T>::identity(n).to_rows();

    for k in 0..n {
        loop {
            let pivot = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by(|&r, &s| a[r][k].abs().cmp(&a[s][k].abs()));
            let Some(p) = pivot else {
                return Err(Error::NotUnimodular);
            };
            a.swap(k, p);
            inv.swap(k, p);
            let mut done = true;
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = a[r][k].div_floor(&a[k][k]);
                sub_row_multiple(&mut a, r, k, &q);
                sub_row_multiple(&mut inv, r, k, &q);
                if !a[r][k].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[k][k].abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        if a[k][k].is_negative() {
            negate_row(&mut a, k);
            negate_row(&mut inv, k);
        }
    }
    for k in (0..n).rev() {
        for r in 0..k {
            if !a[r][k].is_zero() {
                let q = a[r][k].clone();
                sub_row_multiple(&mut a, r, k, &q);
                sub_row_multiple(&mut inv, r, k, &q);
            }
        }
    }
    Matrix::from_rows(inv)
}

/// Back substitution for a unit upper triangular matrix.
fn unit_upper_inverse<T: Scalar>(u: &Matrix<T>) -> Matrix<T> {
    let n = u.rows();
    let mut x = Matrix::<T>::identity(n);
    for i in (0..n).rev() {
        for k in i + 1..n {
            let uik = u[(i, k)].clone();
            if uik.is_zero() {
                continue;
            }
            for j in k..n {
                let v = x[(i, j)].clone() - uik.clone() * x[(k, j)].clone();
                x[(i, j)] = v;
            }
        }
    }
    x
}

fn sub_row_multiple<T: Scalar>(rows: &mut [Vec<T>], target: usize, source: usize, q: &T) {
    let (src, tgt) = if source < target {
        let (lo, hi) = rows.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    for (t, s) in tgt.iter_mut().zip(src) {
        if !s.is_zero() {
            *t = t.clone() - q.clone() * s.clone();
        }
    }
}

fn negate_row<T: Scalar>(rows: &mut [Vec<T>], r: usize) {
    for x in rows[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Rank over the rationals, by fraction-free (Bareiss) elimination.
pub fn rational_rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = T::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            let factor = row[c].clone();
            for (x, p) in row[c + 1..cols].iter_mut().zip(&pivot_row[c + 1..cols]) {
                let v = piv.clone() * x.clone() - factor.clone() * p.clone();
                *x = v / prev.clone();
            }
            row[c] = T::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.to_rows();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap(k, p);
            sign = -sign;
        }
        for r in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].clone() * a[r][j].clone() - a[r][k].clone() * a[k][j].clone();
                a[r][j] = v / prev.clone();
            }
            a[r][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

/// `det(v Id - m)` by the Faddeev–LeVerrier recurrence.
///
/// Each step divides a trace by the step index; the division is exact for
/// integer matrices and is checked.
pub fn char_poly<T: Scalar>(m: &Matrix<T>) -> Result<Polynomial<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut aux = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        // aux_k = m * aux_{k-1} + c_{n-k+1} Id
        let mut next = m.mul(&aux)?;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let t = m.trace_of_product(&next)?;
        let kk = T::lift_usize(k);
        let (q, r) = t.div_rem(&kk);
        if !r.is_zero() {
            return Err(Error::Internal(
                "inexact division in characteristic polynomial".into(),
            ));
        }
        coeffs[n - k] = -q;
        aux = next;
    }
    Ok(Polynomial::new(coeffs))
}

/// Whether `x^T m x >= 0` for every rational `x`.
pub fn is_psd<T: Scalar>(m: &Matrix<T>) -> Result<bool> {
    Ok(psd_rank(m)?.is_some())
}

/// The rank of `m` if it is positive semidefinite, `None` otherwise.
///
/// Symmetric Bareiss elimination on positive diagonal pivots. A negative
/// diagonal entry, or a zero diagonal entry with a nonzero row, means the
/// matrix is not positive semidefinite; zero rows are dropped. The rank is
/// the number of pivots taken.
pub fn psd_rank<T: Scalar>(m: &Matrix<T>) -> Result<Option<usize>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut a = m.to_rows();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let mut prev = T::one();
    let mut rank = 0;
    loop {
        let mut i = 0;
        while i < active.len() {
            let r = active[i];
            let d = &a[r][r];
            if d.is_negative() {
                return Ok(None);
            }
            if d.is_zero() {
                if active.iter().any(|&c| !a[r][c].is_zero()) {
                    return Ok(None);
                }
                active.remove(i);
            } else {
                i += 1;
            }
        }
        let Some(&k) = active.first() else {
            return Ok(Some(rank));
        };
        let piv = a[k][k].clone();
        active.remove(0);
        for &i in &active {
            for &j in &active {
                let v = piv.clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = piv;
        rank += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<i64>;

    /// Cofactor expansion of det(v Id - m) with polynomial entries.
    fn char_poly_oracle(m: &M) -> Polynomial<i64> {
        let n = m.rows();
        let entries: Vec<Vec<Polynomial<i64>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Polynomial::from_i64(&[-m[(i, j)]]);
                        if i == j {
                            &c + &Polynomial::monomial(1, 1)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        cofactor_det(&entries)
    }

    fn cofactor_det(e: &[Vec<Polynomial<i64>>]) -> Polynomial<i64> {
        if e.is_empty() {
            return Polynomial::one();
        }
        let mut acc = Polynomial::zero();
        for j in 0..e.len() {
            let minor: Vec<Vec<_>> = e[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = &e[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    fn det_oracle(m: &M) -> i64 {
        let n = m.rows();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor = Matrix::from_fn(n - 1, n - 1, |i, k| {
                    m[(i + 1, if k < j { k } else { k + 1 })]
                });
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[(0, j)] * det_oracle(&minor)
            })
            .sum()
    }

    #[test]
    fn mat_mul_examples() {
        let id = M::identity(2);
        assert_eq!(mat_mul(&id, &id).unwrap(), id);
        let col = M::from_i64_rows(&[[1], [-1]]);
        let row = M::from_i64_rows(&[[1, -1]]);
        assert_eq!(
            mat_mul(&col, &row).unwrap(),
            M::from_i64_rows(&[[1, -1], [-1, 1]])
        );
        let g = M::from_i64_rows(&[[1, 2], [0, 1]]);
        assert!(mat_mul(&g, &unimodular_inverse(&g).unwrap())
            .unwrap()
            .is_identity());
        assert!(matches!(
            mat_mul(&row, &row),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn unimodular_inverse_examples() {
        let g = M::from_i64_rows(&[[1, 2], [0, 1]]);
        assert_eq!(
            unimodular_inverse(&g).unwrap(),
            M::from_i64_rows(&[[1, -2], [0, 1]])
        );
        assert_eq!(unimodular_inverse(&M::identity(4)).unwrap(), M::identity(4));
        let dense = M::from_i64_rows(&[[2, 3], [1, 2]]);
        assert!(dense
            .mul(&unimodular_inverse(&dense).unwrap())
            .unwrap()
            .is_identity());
        let neg = M::from_i64_rows(&[[0, 1], [1, 0]]);
        assert_eq!(unimodular_inverse(&neg).unwrap(), neg);
    }

    #[test]
    fn unimodular_inverse_rejects() {
        assert_eq!(
            unimodular_inverse(&M::from_i64_rows(&[[2, 0], [0, 1]])),
            Err(Error::NotUnimodular)
        );
        assert_eq!(
            unimodular_inverse(&M::from_i64_rows(&[[1, 1], [1, 1]])),
            Err(Error::NotUnimodular)
        );
        assert!(matches!(
            unimodular_inverse(&M::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rational_rank(&M::from_i64_rows(&[[2, 2], [2, 2]])), 1);
        assert_eq!(rational_rank(&M::identity(3)), 3);
        assert_eq!(rational_rank(&M::zeros(3, 2)), 0);
        assert_eq!(
            rational_rank(&M::from_i64_rows(&[[0, 1, 2], [0, 2, 4], [1, 0, 0]])),
            2
        );
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&M::from_i64_rows(&[[-1]])).unwrap(),
            Polynomial::from_i64(&[1, 1])
        );
        let cyc: M = Permutation::from_images(vec![2, 3, 1]).unwrap().matrix();
        assert_eq!(char_poly(&cyc).unwrap(), Polynomial::cycle_factor(3));
        let kron = M::from_i64_rows(&[[-1, 2], [-2, 3]]);
        assert_eq!(char_poly(&kron).unwrap(), Polynomial::from_i64(&[1, -2, 1]));
        assert_eq!(char_poly_oracle(&kron), Polynomial::from_i64(&[1, -2, 1]));
        assert!(char_poly(&M::zeros(1, 2)).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&M::from_i64_rows(&[[2, -1], [-1, 2]])).unwrap());
        assert!(is_psd(&M::from_i64_rows(&[[2, 2], [2, 2]])).unwrap());
        assert!(!is_psd(&M::from_i64_rows(&[[0, 1], [1, 0]])).unwrap());
        assert!(is_psd(&M::zeros(3, 3)).unwrap());
        assert_eq!(
            psd_rank(&M::from_i64_rows(&[[2, -2, 0], [-2, 2, 0], [0, 0, 2]])).unwrap(),
            Some(2)
        );
        assert_eq!(
            psd_rank(&M::from_i64_rows(&[[0, 1], [1, 0]])).unwrap(),
            None
        );
        assert_eq!(
            is_psd(&M::from_i64_rows(&[[1, 2], [0, 1]])),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn bigint_scalar() {
        use num_bigint::BigInt;
        let g = Matrix::<BigInt>::from_i64_rows(&[[1, 2], [0, 1]]);
        let inv = unimodular_inverse(&g).unwrap();
        assert_eq!(inv, Matrix::from_i64_rows(&[[1, -2], [0, 1]]));
        assert_eq!(char_poly(&g).unwrap(), Polynomial::from_i64(&[1, -2, 1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn square(
            n: std::ops::RangeInclusive<usize>,
            lo: i64,
            hi: i64,
        ) -> impl Strategy<Value = M> {
            n.prop_flat_map(move |n| {
                proptest::collection::vec(lo..=hi, n * n)
                    .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j]))
            })
        }

        /// Random unimodular matrix: product of elementary and swap operations.
        fn unimodular(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = M> {
            n.prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(
                    move |ops| {
                        let mut m = M::identity(n);
                        for (i, j, q, neg) in ops {
                            if i != j {
                                for c in 0..n {
                                    let v = m[(j, c)];
                                    m[(i, c)] += q * v;
                                }
                            } else if neg {
                                for c in 0..n {
                                    m[(i, c)] = -m[(i, c)];
                                }
                            }
                        }
                        m
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn inverse_is_exact(m in unimodular(1..=6)) {
                let inv = unimodular_inverse(&m).unwrap();
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }

            #[test]
            fn char_poly_matches_cofactor_oracle(m in square(1..=5, -3, 3)) {
                prop_assert_eq!(char_poly(&m).unwrap(), char_poly_oracle(&m));
            }

            #[test]
            fn determinant_matches_oracle(m in square(1..=5, -4, 4)) {
                prop_assert_eq!(determinant(&m).unwrap(), det_oracle(&m));
            }

            #[test]
            fn permutation_char_poly(images in (1usize..=10).prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle())) {
                let p = Permutation::from_images(images).unwrap();
                let expected = p.cycles().iter().fold(Polynomial::<i64>::one(), |acc, c| &acc * &Polynomial::cycle_factor(c.len()));
                prop_assert_eq!(char_poly(&p.matrix::<i64>()).unwrap(), expected);
            }

            #[test]
            fn rank_of_gram_equals_rank(rows in 1usize..=5, cols in 1usize..=5, seed in proptest::collection::vec(-2i64..=2, 25)) {
                let a = Matrix::from_fn(rows, cols, |i, j| seed[i * 5 + j]);
                let ata = a.transpose().mul(&a).unwrap();
                prop_assert_eq!(rational_rank(&ata), rational_rank(&a));
            }

            #[test]
            fn psd_agrees_with_principal_minors(m in square(1..=4, -3, 3)) {
                let sym = m.add(&m.transpose()).unwrap();
                let n = sym.rows();
                let minors_ok = (1u32..(1 << n)).all(|mask| {
                    let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    let sub = Matrix::from_fn(idx.len(), idx.len(), |i, j| sym[(idx[i], idx[j])]);
                    det_oracle(&sub) >= 0
                });
                let psd = is_psd(&sym).unwrap();
                prop_assert_eq!(psd, minors_ok);
                if psd {
                    // necessary condition on a small grid
                    let grid: Vec<i64> = (-3..=3).collect();
                    let mut x = vec![0i64; n];
                    let total = grid.len().pow(n as u32);
                    for code in 0..total {
                        let mut c = code;
                        for xi in x.iter_mut() {
                            *xi = grid[c % grid.len()];
                            c /= grid.len();
                        }
                        let mx = sym.mul_vec(&x).unwrap();
                        let q: i64 = x.iter().zip(&mx).map(|(a, b)| a * b).sum();
                        prop_assert!(q >= 0);
                    }
                }
            }
        }
    }
}
