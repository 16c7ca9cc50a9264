use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A permutation of `{1, ..., m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// From 1-based images: `images[v - 1]` is the image of `v`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut zero_based = Vec::with_capacity(m);
        for &w in &images {
            if w == 0 || w > m || seen[w - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={m}"
                )));
            }
            seen[w - 1] = true;
            zero_based.push(w - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }

    /// The swap `[a, b]`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > m || b > m {
            return Err(Error::InvalidArgument(format!(
                "transposition [{a},{b}] outside 1..={m}"
            )));
        }
        let mut p = Self::identity(m);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// The permutation `(1..pi_1)(pi_1+1..pi_1+pi_2)...` with the given cycle lengths.
    pub fn with_cycle_lengths(lengths: &[usize]) -> Self {
        let m: usize = lengths.iter().sum();
        let mut images = Vec::with_capacity(m);
        let mut start = 0;
        for &len in lengths {
            for k in 0..len {
                images.push(start + (k + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based element `v`.
    pub fn image(&self, v: usize) -> usize {
        self.images[v - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(format!(
                "permutations of {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (v, &w) in self.images.iter().enumerate() {
            inv[w] = v;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Orbits as 1-based cycles, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v + 1);
                v = self.images[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation, the lcm of its cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    /// The matrix `P` with `P e_v = e_{rho(v)}`.
    pub fn matrix<T: Scalar>(&self) -> Matrix<T> {
        let m = self.size();
        let mut p = Matrix::zeros(m, m);
        for (v, &w) in self.images.iter().enumerate() {
            p[(w, v)] = T::one();
        }
        p
    }

    /// Inverse of [`Permutation::matrix`]; `None` unless `p` is a permutation matrix.
    pub fn from_matrix<T: Scalar>(p: &Matrix<T>) -> Option<Self> {
        if !p.is_square() {
            return None;
        }
        let m = p.rows();
        let mut images = vec![usize::MAX; m];
        let mut hit = vec![false; m];
        for j in 0..m {
            for i in 0..m {
                let x = &p[(i, j)];
                if x.is_one() {
                    if images[j] != usize::MAX || hit[i] {
                        return None;
                    }
                    images[j] = i;
                    hit[i] = true;
                } else if !x.is_zero() {
                    return None;
                }
            }
            if images[j] == usize::MAX {
                return None;
            }
        }
        Some(Permutation { images })
    }
}

/// Orbits of `p` as disjoint cycles covering `{1..m}`.
pub fn cycle_decomposition(p: &Permutation) -> Vec<Vec<usize>> {
    p.cycles()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            write!(f, "(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cycles() {
        assert_eq!(
            cycle_decomposition(&Permutation::identity(3)),
            vec![vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn three_cycle() {
        let p = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(cycle_decomposition(&p), vec![vec![1, 2, 3]]);
        assert_eq!(p.order(), BigUint::from(3u32));
    }

    #[test]
    fn cycle_lengths_two_one() {
        let p = Permutation::with_cycle_lengths(&[2, 1]);
        assert_eq!(cycle_decomposition(&p), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![3, 1]).is_err());
    }

    #[test]
    fn matrix_convention_and_roundtrip() {
        let p = Permutation::from_images(vec![2, 3, 1]).unwrap();
        let m: Matrix<i64> = p.matrix();
        // column v carries e_{rho(v)}
        assert_eq!(m[(1, 0)], 1);
        assert_eq!(m[(0, 2)], 1);
        assert_eq!(Permutation::from_matrix(&m), Some(p.clone()));
        assert_eq!(
            Permutation::from_matrix(&Matrix::<i64>::from_i64_rows(&[[1, 1], [0, 0]])),
            None
        );
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_images(vec![2, 1, 3]).unwrap();
        let b = Permutation::from_images(vec![1, 3, 2]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.image(2), a.image(b.image(2)));
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }
}
