//! Integral unit quadratic forms `q(x) = x^T G x` with `G` upper
//! triangular and unit diagonal.

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{
    char_poly, determinant, psd_rank, rational_rank, unimodular_inverse, Matrix, Polynomial,
};
use crate::quiver::{triangular_gram, Quiver};
use crate::scalar::Scalar;

/// A unit form, stored as its upper triangular Gram matrix.
///
/// JSON: `{"n": n, "upper": [[i, j, g_ij], ...]}` with `1 <= i < j <= n`;
/// only nonzero entries are written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitForm<T> {
    upper: Matrix<T>,
}

impl<T: Scalar> UnitForm<T> {
    /// Checks that `upper` is square, upper triangular, with unit diagonal.
    pub fn new(upper: Matrix<T>) -> Result<Self> {
        if !upper.is_square() {
            return Err(Error::NotSquare {
                rows: upper.rows(),
                cols: upper.cols(),
            });
        }
        if !upper.is_upper_triangular() {
            return Err(Error::NotUnitForm(
                "Gram matrix has entries below the diagonal".into(),
            ));
        }
        if let Some(i) = (0..upper.rows()).find(|&i| !upper[(i, i)].is_one()) {
            return Err(Error::NotUnitForm(format!(
                "diagonal entry {} is not 1",
                i + 1
            )));
        }
        Ok(UnitForm { upper })
    }

    /// Builds the form from 1-based strictly upper entries `(i, j, g_ij)`.
    pub fn from_upper_entries(n: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        let mut upper = Matrix::<T>::identity(n);
        let mut seen = std::collections::HashSet::new();
        for (i, j, g) in entries {
            let (i, j) = (*i, *j);
            if i == 0 || j > n || i >= j {
                return Err(Error::NotUnitForm(format!(
                    "entry ({i},{j}) is not strictly upper in 1..={n}"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::NotUnitForm(format!("entry ({i},{j}) listed twice")));
            }
            upper[(i - 1, j - 1)] = g.clone();
        }
        Ok(UnitForm { upper })
    }

    /// Reads a symmetric Gram matrix `G` with diagonal 2.
    pub fn from_symmetric(g: &Matrix<T>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::NotSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if !g.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let two = T::lift(2);
        if (0..g.rows()).any(|i| g[(i, i)] != two) {
            return Err(Error::NotUnitForm(
                "symmetric Gram diagonal must be 2".into(),
            ));
        }
        let n = g.rows();
        Ok(UnitForm {
            upper: Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => g[(i, j)].clone(),
                std::cmp::Ordering::Equal => T::one(),
                std::cmp::Ordering::Greater => T::zero(),
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.upper.rows()
    }

    /// The upper triangular Gram matrix.
    pub fn upper(&self) -> &Matrix<T> {
        &self.upper
    }

    /// `q(x) = x^T G x`.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        let gx = self.upper.mul_vec(x)?;
        Ok(x.iter()
            .zip(&gx)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// `G + G^T`.
    pub fn symmetric_gram(&self) -> Matrix<T> {
        self.upper.add(&self.upper.transpose()).expect("square")
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.symmetric_gram())
    }

    /// `n - rank`.
    pub fn corank(&self) -> usize {
        self.n() - self.rank()
    }

    pub fn is_non_negative(&self) -> bool {
        self.non_negative_rank().is_some()
    }

    /// The rank, if the form is non-negative.
    pub fn non_negative_rank(&self) -> Option<usize> {
        psd_rank(&self.symmetric_gram()).expect("symmetric by construction")
    }

    /// Connectivity of the graph with an edge `{i, j}` for every nonzero
    /// off-diagonal entry. The empty form is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for (j, s) in seen.iter_mut().enumerate() {
                if !*s && j != i && !(self.upper[(i, j)].is_zero() && self.upper[(j, i)].is_zero())
                {
                    *s = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// `Phi = -G^T G^-1`.
    pub fn coxeter_matrix(&self) -> Matrix<T> {
        let inv = unimodular_inverse(&self.upper).expect("unit triangular matrices are unimodular");
        self.upper.transpose().mul(&inv).expect("square").neg()
    }

    /// Characteristic polynomial of [`UnitForm::coxeter_matrix`].
    pub fn coxeter_polynomial_direct(&self) -> Polynomial<T> {
        char_poly(&self.coxeter_matrix())
            .expect("integer matrices have integer characteristic polynomials")
    }

    pub fn cast<U: Scalar>(&self) -> Result<UnitForm<U>> {
        Ok(UnitForm {
            upper: self.upper.cast()?,
        })
    }
}

/// The form `q_Q(x) = |I(Q) x|^2 / 2`.
pub fn form_of_quiver<T: Scalar>(q: &Quiver) -> UnitForm<T> {
    UnitForm {
        upper: triangular_gram(q),
    }
}

/// Whether `b` is unimodular and `G_g = b^T G_f b`.
pub fn check_strong_congruence<T: Scalar>(f: &UnitForm<T>, g: &UnitForm<T>, b: &Matrix<T>) -> bool {
    if !b.is_square() || b.rows() != f.n() || f.n() != g.n() {
        return false;
    }
    if !determinant(b).is_ok_and(|d| d.abs().is_one()) {
        return false;
    }
    let Ok(lhs) = b.transpose().mul(&f.upper).and_then(|x| x.mul(b)) else {
        return false;
    };
    lhs == g.upper
}

/// Whether `b` is unimodular and `G_g + G_g^T = b^T (G_f + G_f^T) b`.
pub fn check_weak_congruence<T: Scalar>(f: &UnitForm<T>, g: &UnitForm<T>, b: &Matrix<T>) -> bool {
    if !b.is_square() || b.rows() != f.n() || f.n() != g.n() {
        return false;
    }
    if !determinant(b).is_ok_and(|d| d.abs().is_one()) {
        return false;
    }
    let Ok(lhs) = b
        .transpose()
        .mul(&f.symmetric_gram())
        .and_then(|x| x.mul(b))
    else {
        return false;
    };
    lhs == g.symmetric_gram()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitFormJson {
    n: usize,
    upper: Vec<(usize, usize, i64)>,
}

impl<T: Scalar> Serialize for UnitForm<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n();
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let g = &self.upper[(i, j)];
                if g.is_zero() {
                    continue;
                }
                let v = g
                    .to_i64()
                    .ok_or_else(|| S::Error::custom(Error::OutOfRange(g.to_string())))?;
                upper.push((i + 1, j + 1, v));
            }
        }
        UnitFormJson { n, upper }.serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for UnitForm<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = UnitFormJson::deserialize(deserializer)?;
        let entries: Vec<_> = j
            .upper
            .into_iter()
            .map(|(i, k, g)| (i, k, T::lift(g)))
            .collect();
        UnitForm::from_upper_entries(j.n, &entries).map_err(D::Error::custom)
    }
}
