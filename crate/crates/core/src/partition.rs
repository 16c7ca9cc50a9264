//! Integer partitions, their characteristic polynomials, and the families
//! of partitions whose length is constrained by a corank.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Permutation, Polynomial};
use crate::scalar::Scalar;

/// A partition of `m`: a non-increasing, non-empty list of positive parts.
///
/// Serializes as a JSON array of integers, e.g. `[3,2,2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts; rejects empty input and zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not a partition"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lcm(&self) -> BigUint {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc.lcm(&BigUint::from(p)))
    }

    /// The permutation `(1 .. pi_1)(pi_1 + 1 .. pi_1 + pi_2) ...`.
    pub fn permutation(&self) -> Permutation {
        Permutation::with_cycle_lengths(&self.parts)
    }

    /// Whether the length fits corank `c`: `0 <= c - (len - 1)`, even.
    pub fn fits_corank(&self, c: usize) -> bool {
        length_fits_corank(self.len(), c)
    }
}

fn length_fits_corank(len: usize, c: usize) -> bool {
    len >= 1 && len <= c + 1 && (c + 1 - len).is_multiple_of(2)
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        let p = Partition::new(parts.clone())?;
        if p.parts != parts {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(p)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Coxeter polynomial kept in factored form
/// `(v - 1)^e * prod_a (v^{pi_a} - 1)`.
///
/// The exponent `e` may be `-1` (corank zero); the value is then still a
/// polynomial because it equals `(v - 1)^{e + len} * prod_a nu_{pi_a}(v)`,
/// and `e + len >= 0` is the stored invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredCoxPoly {
    unit_exponent: i64,
    cycle_parts: Vec<usize>,
}

impl FactoredCoxPoly {
    pub fn new(unit_exponent: i64, mut cycle_parts: Vec<usize>) -> Result<Self> {
        if cycle_parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "cycle parts must be positive".into(),
            ));
        }
        if unit_exponent + (cycle_parts.len() as i64) < 0 {
            return Err(Error::InvalidArgument(format!(
                "exponent {unit_exponent} with {} cycle factors is not a polynomial",
                cycle_parts.len()
            )));
        }
        cycle_parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FactoredCoxPoly {
            unit_exponent,
            cycle_parts,
        })
    }

    /// `(v - 1)^{c - 1} chi_pi(v)`, the Coxeter polynomial for corank `c`
    /// and cycle type `pi`.
    pub fn for_cycle_type(pi: &Partition, corank: usize) -> Self {
        FactoredCoxPoly {
            unit_exponent: corank as i64 - 1,
            cycle_parts: pi.parts.clone(),
        }
    }

    pub fn unit_exponent(&self) -> i64 {
        self.unit_exponent
    }

    pub fn cycle_parts(&self) -> &[usize] {
        &self.cycle_parts
    }

    pub fn degree(&self) -> usize {
        (self.unit_exponent + self.cycle_parts.iter().sum::<usize>() as i64) as usize
    }

    /// Exponent of `(v - 1)` in the `nu` form.
    pub fn nu_exponent(&self) -> usize {
        (self.unit_exponent + self.cycle_parts.len() as i64) as usize
    }

    /// Dense coefficients, multiplying out `(v - 1)^e prod (v^k - 1)`.
    /// Requires `e >= 0`; see [`FactoredCoxPoly::expand_nu_form`] otherwise.
    pub fn expand_cycle_form<T: Scalar>(&self) -> Option<Polynomial<T>> {
        let e = usize::try_from(self.unit_exponent).ok()?;
        let base = Polynomial::<T>::cycle_factor(1).pow(e);
        Some(
            self.cycle_parts
                .iter()
                .fold(base, |acc, &k| &acc * &Polynomial::cycle_factor(k)),
        )
    }

    /// Dense coefficients, multiplying out `(v - 1)^{e + len} prod nu_k(v)`.
    pub fn expand_nu_form<T: Scalar>(&self) -> Polynomial<T> {
        let base = Polynomial::<T>::cycle_factor(1).pow(self.nu_exponent());
        self.cycle_parts
            .iter()
            .fold(base, |acc, &k| &acc * &Polynomial::nu(k))
    }

    pub fn expand<T: Scalar>(&self) -> Polynomial<T> {
        self.expand_nu_form()
    }
}

/// Renders `(v^5-1)(v-1)^3`, merging parts equal to 1 into the `(v - 1)`
/// power; with a negative exponent the `nu` form `(v-1)^a nu_3(v) ...` is used.
impl fmt::Display for FactoredCoxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let (big, ones): (Vec<usize>, Vec<usize>) = self.cycle_parts.iter().partition(|&&k| k > 1);
        let power =
            |f: &mut fmt::Formatter<'_>, e: usize| if e > 1 { write!(f, "^{e}") } else { Ok(()) };
        if self.unit_exponent >= 0 {
            for k in big {
                match groups.last_mut() {
                    Some((g, n)) if *g == k => *n += 1,
                    _ => groups.push((k, 1)),
                }
            }
            let unit = self.unit_exponent as usize + ones.len();
            for &(k, n) in &groups {
                write!(f, "(v^{k}-1)")?;
                power(f, n)?;
            }
            if unit > 0 {
                write!(f, "(v-1)")?;
                power(f, unit)?;
            }
            if groups.is_empty() && unit == 0 {
                write!(f, "1")?;
            }
        } else {
            for k in big {
                match groups.last_mut() {
                    Some((g, n)) if *g == k => *n += 1,
                    _ => groups.push((k, 1)),
                }
            }
            let unit = self.nu_exponent();
            if unit > 0 {
                write!(f, "(v-1)")?;
                power(f, unit)?;
            }
            for &(k, n) in &groups {
                if n > 1 {
                    write!(f, "nu_{k}(v)^{n}")?;
                } else {
                    write!(f, "nu_{k}(v)")?;
                }
            }
            if groups.is_empty() && unit == 0 {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactoredJson {
    unit_exponent: i64,
    cycle_parts: Vec<usize>,
    dense: Vec<i64>,
}

fn dense_i64(p: &FactoredCoxPoly) -> Result<Vec<i64>> {
    p.expand::<BigInt>()
        .coeffs()
        .iter()
        .map(|c| c.to_i64().ok_or_else(|| Error::OutOfRange(c.to_string())))
        .collect()
}

/// JSON: `{"unit_exponent": e, "cycle_parts": [...], "dense": [c0, c1, ...]}`.
/// Reading checks that `dense` is the expansion of the factored form.
impl Serialize for FactoredCoxPoly {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let dense = dense_i64(self).map_err(serde::ser::Error::custom)?;
        FactoredJson {
            unit_exponent: self.unit_exponent,
            cycle_parts: self.cycle_parts.clone(),
            dense,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FactoredCoxPoly {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FactoredJson::deserialize(deserializer)?;
        let p = FactoredCoxPoly::new(j.unit_exponent, j.cycle_parts).map_err(D::Error::custom)?;
        if dense_i64(&p).map_err(D::Error::custom)? != j.dense {
            return Err(D::Error::custom(
                "dense coefficients disagree with the factored form",
            ));
        }
        Ok(p)
    }
}

/// `chi_pi(v) = prod_a (v^{pi_a} - 1)`, in factored form.
pub fn char_poly_of_partition(p: &Partition) -> FactoredCoxPoly {
    FactoredCoxPoly {
        unit_exponent: 0,
        cycle_parts: p.parts.clone(),
    }
}

/// All partitions of `m` with exactly `len` parts, by the recursion on
/// the last part: partitions ending in 1 come from `(m - 1, len - 1)`,
/// the others from `(m - len, len)` by adding 1 to every part.
///
/// The result is sorted lexicographically descending.
pub fn partitions_by_length(m: usize, len: usize) -> Vec<Partition> {
    let mut out = by_length_raw(m, len);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.into_iter().map(|parts| Partition { parts }).collect()
}

fn by_length_raw(m: usize, len: usize) -> Vec<Vec<usize>> {
    if m == 0 || len == 0 || len > m {
        return Vec::new();
    }
    if len == 1 {
        return vec![vec![m]];
    }
    if len == m {
        return vec![vec![1; m]];
    }
    let mut out: Vec<Vec<usize>> = by_length_raw(m - 1, len - 1)
        .into_iter()
        .map(|mut p| {
            p.push(1);
            p
        })
        .collect();
    out.extend(
        by_length_raw(m - len, len)
            .into_iter()
            .map(|p| p.into_iter().map(|x| x + 1).collect()),
    );
    out
}

/// Partitions of `m` whose length `len` satisfies `0 <= c - (len - 1)`, even.
/// Sorted lexicographically descending.
pub fn part1c(c: usize, m: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = (1..=m.min(c + 1))
        .filter(|&len| length_fits_corank(len, c))
        .flat_map(|len| partitions_by_length(m, len))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Orbit sizes of `p`, non-increasing.
pub fn cycle_type_of_permutation(p: &Permutation) -> Partition {
    if p.size() == 0 {
        // no orbits; callers never pass an empty permutation
        return Partition { parts: Vec::new() };
    }
    Partition::new(p.cycles().iter().map(Vec::len).collect()).expect("orbits are non-empty")
}
