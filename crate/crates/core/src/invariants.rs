//! Cycle type, Coxeter polynomial and Coxeter numbers of a form, the
//! inverse map from Coxeter polynomials to cycle types, and the list of
//! all Coxeter polynomials for a given size and corank.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Polynomial};
use crate::partition::{part1c, FactoredCoxPoly, Partition};
use crate::quiver::cycle_type_of_quiver;
use crate::realize::realize;
use crate::scalar::Scalar;
use crate::unitform::UnitForm;

/// `ct(q)`: the cycle type of any quiver realizing `q`.
pub fn cycle_type_of_form<T: Scalar>(f: &UnitForm<T>) -> Result<Partition> {
    cycle_type_of_quiver(&realize(f)?.quiver)
}

/// `cox_q(v) = (v - 1)^{c - 1} chi_{ct(q)}(v)` in factored form.
pub fn coxeter_polynomial<T: Scalar>(f: &UnitForm<T>) -> Result<FactoredCoxPoly> {
    Ok(FactoredCoxPoly::for_cycle_type(
        &cycle_type_of_form(f)?,
        f.corank(),
    ))
}

/// Coxeter number (`None` when infinite) and reduced Coxeter number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterNumbers {
    pub coxeter_number: Option<BigUint>,
    pub reduced_coxeter_number: BigUint,
}

impl CoxeterNumbers {
    /// Finite Coxeter number `pi_1` exactly when `pi` has one part; the
    /// reduced Coxeter number is the lcm of the parts.
    pub fn from_cycle_type(pi: &Partition) -> Self {
        let coxeter_number = (pi.len() == 1).then(|| BigUint::from(pi.parts()[0]));
        CoxeterNumbers {
            coxeter_number,
            reduced_coxeter_number: pi.lcm(),
        }
    }
}

/// Renders `5` or `∞` for the Coxeter number.
pub struct DisplayCoxeterNumber<'a>(pub &'a Option<BigUint>);

impl fmt::Display for DisplayCoxeterNumber<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "∞"),
        }
    }
}

/// JSON: `{"coxeter_number": 5 | null, "reduced_coxeter_number": 5}`;
/// `null` stands for infinity.
impl Serialize for CoxeterNumbers {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            coxeter_number: Option<u64>,
            reduced_coxeter_number: u64,
        }
        let fit = |k: &BigUint| {
            k.to_u64()
                .ok_or_else(|| serde::ser::Error::custom(Error::OutOfRange(k.to_string())))
        };
        Json {
            coxeter_number: self.coxeter_number.as_ref().map(fit).transpose()?,
            reduced_coxeter_number: fit(&self.reduced_coxeter_number)?,
        }
        .serialize(serializer)
    }
}

pub fn coxeter_numbers<T: Scalar>(f: &UnitForm<T>) -> Result<CoxeterNumbers> {
    Ok(CoxeterNumbers::from_cycle_type(&cycle_type_of_form(f)?))
}

/// The invariants of one form, computed from a single realization.
///
/// JSON: `{"variables", "corank", "cycle_type", "coxeter_polynomial",
/// "coxeter_number", "reduced_coxeter_number", "spectrum"}`, where
/// `spectrum` lists `[d, multiplicity]` for `d = 1` and every `d` dividing
/// a part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub variables: usize,
    pub corank: usize,
    pub cycle_type: Partition,
    pub coxeter_polynomial: FactoredCoxPoly,
    #[serde(flatten)]
    pub numbers: CoxeterNumbers,
    pub spectrum: Vec<(usize, usize)>,
}

pub fn form_invariants<T: Scalar>(f: &UnitForm<T>) -> Result<FormInvariants> {
    let cycle_type = cycle_type_of_form(f)?;
    let corank = f.corank();
    let max = cycle_type.parts()[0];
    let spectrum = (1..=max)
        .filter(|&d| d == 1 || cycle_type.parts().iter().any(|p| p % d == 0))
        .map(|d| Ok((d, spectral_multiplicity_of(&cycle_type, corank, d)?)))
        .collect::<Result<_>>()?;
    Ok(FormInvariants {
        variables: f.n(),
        corank,
        coxeter_polynomial: FactoredCoxPoly::for_cycle_type(&cycle_type, corank),
        numbers: CoxeterNumbers::from_cycle_type(&cycle_type),
        cycle_type,
        spectrum,
    })
}

/// Multiplicity of a primitive `d`-th root of unity as a root of `cox_q`:
/// `c + len - 1` for `d = 1`, otherwise the number of parts divisible by `d`.
pub fn spectral_multiplicity_of(pi: &Partition, corank: usize, d: usize) -> Result<usize> {
    match d {
        0 => Err(Error::InvalidArgument("root order must be positive".into())),
        1 => Ok(corank + pi.len() - 1),
        _ => Ok(pi.parts().iter().filter(|&&p| p % d == 0).count()),
    }
}

pub fn spectral_multiplicity<T: Scalar>(f: &UnitForm<T>, d: usize) -> Result<usize> {
    spectral_multiplicity_of(&cycle_type_of_form(f)?, f.corank(), d)
}

/// Multiplicity of the `d`-th cyclotomic polynomial in `p`, which is the
/// multiplicity of each primitive `d`-th root of unity.
pub fn cyclotomic_multiplicity<T: Scalar>(p: &Polynomial<T>, d: usize) -> usize {
    p.multiplicity(&Polynomial::cyclotomic(d))
}

/// Recovers the cycle type from an expanded Coxeter polynomial of a form
/// of corank `c`: removes `(v - 1)^{c - 1}`, then repeatedly divides by
/// the largest `v^t - 1` that divides what is left until `1` remains.
pub fn cycle_type_from_cox_poly<T: Scalar>(p: &Polynomial<T>, c: usize) -> Result<Partition> {
    let bad = |why: String| Error::NotCoxeterPolynomial(why);
    if p.is_zero() {
        return Err(bad("zero polynomial".into()));
    }
    let unit = Polynomial::<T>::cycle_factor(1);
    let mut rest = if c == 0 {
        p * &unit
    } else {
        p.exact_div(&unit.pow(c - 1))
            .ok_or_else(|| bad(format!("(v-1)^{} does not divide {p}", c - 1)))?
    };
    let mut parts = Vec::new();
    while !rest.is_one() {
        let deg = rest.degree().unwrap_or(0);
        if deg == 0 {
            return Err(bad(format!("{p} leaves the constant {rest}")));
        }
        let (t, quotient) = (1..=deg)
            .rev()
            .find_map(|t| rest.exact_div(&Polynomial::cycle_factor(t)).map(|q| (t, q)))
            .ok_or_else(|| bad(format!("no factor v^t - 1 divides {rest}")))?;
        parts.push(t);
        rest = quotient;
    }
    let pi = Partition::new(parts).map_err(|_| bad(format!("{p} has no cycle factors")))?;
    if !pi.fits_corank(c) {
        return Err(bad(format!(
            "cycle type {pi} does not occur with corank {c}"
        )));
    }
    Ok(pi)
}

/// Every Coxeter polynomial of a connected non-negative form of type A
/// with `n` variables and corank `c`, one per partition in `Part_1^c(m)`
/// with `m = n - c + 1`, in lexicographically descending partition order.
pub fn enumerate_coxeter_polynomials(n: usize, c: usize) -> Result<Vec<FactoredCoxPoly>> {
    Ok(coxeter_polynomial_table(n, c)?
        .into_iter()
        .map(|row| row.polynomial)
        .collect())
}

/// One line of [`coxeter_polynomial_table`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterTableRow {
    pub cycle_type: Partition,
    pub polynomial: FactoredCoxPoly,
    #[serde(flatten)]
    pub numbers: CoxeterNumbers,
}

/// [`enumerate_coxeter_polynomials`] with the cycle type and Coxeter
/// numbers of each entry.
pub fn coxeter_polynomial_table(n: usize, c: usize) -> Result<Vec<CoxeterTableRow>> {
    if c >= n {
        return Err(Error::InvalidArgument(format!(
            "corank {c} must be smaller than the number of variables {n}"
        )));
    }
    let m = n - c + 1;
    let mut seen = std::collections::HashSet::new();
    let mut rows = Vec::new();
    for pi in part1c(c, m) {
        let polynomial = FactoredCoxPoly::for_cycle_type(&pi, c);
        if seen.insert(polynomial.expand::<num_bigint::BigInt>()) {
            let numbers = CoxeterNumbers::from_cycle_type(&pi);
            rows.push(CoxeterTableRow {
                cycle_type: pi,
                polynomial,
                numbers,
            });
        }
    }
    Ok(rows)
}

/// Checks the Coxeter numbers of a form against its Coxeter matrix: the
/// smallest `k` with `Id - Phi^k` nilpotent must be `lcm(ct)`, and `Phi`
/// must have finite order exactly when `ct` has one part, that order being
/// its part.
pub fn verify_coxeter_numbers_of<T: Scalar>(phi: &Matrix<T>, pi: &Partition) -> Result<bool> {
    let n = phi.rows();
    let numbers = CoxeterNumbers::from_cycle_type(pi);
    let rc = numbers
        .reduced_coxeter_number
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(numbers.reduced_coxeter_number.to_string()))?;
    let id = Matrix::<T>::identity(n);
    let mut power = id.clone();
    for k in 1..=rc {
        power = power.mul(phi)?;
        let unipotent_part = id.sub(&power)?;
        // a nilpotent matrix has trace zero
        let nilpotent = unipotent_part.trace().is_zero() && unipotent_part.is_nilpotent()?;
        if nilpotent != (k == rc) {
            return Ok(false);
        }
        let is_id = power.is_identity();
        let expected_id = numbers
            .coxeter_number
            .as_ref()
            .is_some_and(|c| *c == BigUint::from(k));
        if is_id != expected_id {
            return Ok(false);
        }
    }
    // Phi^rc is unipotent; it has finite order only if it is the identity
    Ok(power.is_identity() == numbers.coxeter_number.is_some())
}

/// [`verify_coxeter_numbers_of`] on the Coxeter matrix and cycle type of `f`.
pub fn verify_reduced_coxeter_number<T: Scalar>(f: &UnitForm<T>) -> Result<bool> {
    verify_coxeter_numbers_of(&f.coxeter_matrix(), &cycle_type_of_form(f)?)
}

/// `phi(d)`, Euler's totient.
pub fn totient(d: usize) -> usize {
    (1..=d).filter(|&k| num_integer::gcd(k, d) == 1).count()
}
