use crate::error::{Error, Result};
use crate::linalg::Permutation;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Direction in which a walk traverses an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    /// source to target
    Plus,
    /// target to source
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A walk `i_0^{e_0} i_1^{e_1} ...` starting at a given vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: usize,
    end: usize,
    steps: Vec<(usize, Sign)>,
}

impl Walk {
    /// Checks that consecutive endpoints match in `q`.
    pub fn new(q: &Quiver, start: usize, steps: Vec<(usize, Sign)>) -> Result<Self> {
        let end = walk_end(q, start, &steps)?;
        Ok(Walk { start, end, steps })
    }

    pub fn trivial(q: &Quiver, v: usize) -> Result<Self> {
        Walk::new(q, v, Vec::new())
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn steps(&self) -> &[(usize, Sign)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The reverse walk `alpha^-1`.
    pub fn reversed(&self) -> Walk {
        Walk {
            start: self.end,
            end: self.start,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|&(a, s)| (a, s.flip()))
                .collect(),
        }
    }
}

fn walk_end(q: &Quiver, start: usize, steps: &[(usize, Sign)]) -> Result<usize> {
    q.check_vertex(start)?;
    let mut v = start;
    for (k, &(a, sign)) in steps.iter().enumerate() {
        q.check_arrow(a)?;
        let (s, t) = q.arrows()[a - 1];
        let (from, to) = match sign {
            Sign::Plus => (s, t),
            Sign::Minus => (t, s),
        };
        if from != v {
            return Err(Error::InvalidWalk(format!(
                "step {} uses arrow {a} away from vertex {v}",
                k + 1
            )));
        }
        v = to;
    }
    Ok(v)
}

/// Direction of crossing arrow `a` from vertex `from`, and the far endpoint.
#[inline]
fn traverse(q: &Quiver, a: usize, from: usize) -> (Sign, usize) {
    let (s, t) = q.arrows()[a - 1];
    if s == from {
        (Sign::Plus, t)
    } else {
        (Sign::Minus, s)
    }
}

#[inline]
fn largest_below(q: &Quiver, v: usize, bound: usize) -> Option<usize> {
    q.incident_arrows(v)
        .iter()
        .rev()
        .copied()
        .find(|&a| a < bound)
}

#[inline]
fn smallest_above(q: &Quiver, v: usize, bound: usize) -> Option<usize> {
    q.incident_arrows(v).iter().copied().find(|&a| a > bound)
}

fn start_of(q: &Quiver, i: usize, eps: Sign) -> usize {
    match eps {
        Sign::Plus => q.source(i),
        Sign::Minus => q.target(i),
    }
}

fn extend(
    q: &Quiver,
    i: usize,
    eps: Sign,
    next: fn(&Quiver, usize, usize) -> Option<usize>,
    mut record: impl FnMut(usize, Sign),
) -> Result<usize> {
    let bound = 2 * q.arrow_count() + 1;
    let mut v = start_of(q, i, eps);
    let mut a = i;
    let (sign, w) = traverse(q, a, v);
    debug_assert_eq!(sign, eps);
    record(a, sign);
    v = w;
    let mut taken = 1;
    while let Some(b) = next(q, v, a) {
        taken += 1;
        if taken > bound {
            return Err(Error::Internal(format!(
                "walk from arrow {i} exceeded {bound} steps"
            )));
        }
        let (sign, w) = traverse(q, b, v);
        record(b, sign);
        a = b;
        v = w;
    }
    Ok(v)
}

fn build(
    q: &Quiver,
    i: usize,
    eps: Sign,
    next: fn(&Quiver, usize, usize) -> Option<usize>,
) -> Result<Walk> {
    q.check_arrow(i)?;
    let start = start_of(q, i, eps);
    let mut steps = Vec::new();
    let end = extend(q, i, eps, next, |a, s| steps.push((a, s)))?;
    Ok(Walk { start, end, steps })
}

/// `alpha^-(i^eps)`: starts by crossing `i` in direction `eps`, then keeps
/// taking the largest incident arrow smaller than the last one.
pub fn min_decreasing_walk(q: &Quiver, i: usize, eps: Sign) -> Result<Walk> {
    build(q, i, eps, largest_below)
}

/// `alpha^+(i^eps)`: like [`min_decreasing_walk`] with the smallest larger arrow.
pub fn min_increasing_walk(q: &Quiver, i: usize, eps: Sign) -> Result<Walk> {
    build(q, i, eps, smallest_above)
}

fn structural_start(q: &Quiver, v: usize, largest: bool) -> Result<(usize, Sign)> {
    q.check_vertex(v)?;
    let inc = q.incident_arrows(v);
    let i0 = if largest { inc.last() } else { inc.first() };
    let i0 = *i0.ok_or(Error::IsolatedVertex(v))?;
    Ok((
        i0,
        if q.source(i0) == v {
            Sign::Plus
        } else {
            Sign::Minus
        },
    ))
}

/// `alpha^-(v)`: the minimally decreasing walk through the largest arrow at `v`.
pub fn structural_walk(q: &Quiver, v: usize) -> Result<Walk> {
    let (i0, eps) = structural_start(q, v, true)?;
    min_decreasing_walk(q, i0, eps)
}

/// `alpha^+(v)`: the minimally increasing walk through the smallest arrow at `v`.
pub fn structural_increasing_walk(q: &Quiver, v: usize) -> Result<Walk> {
    let (i0, eps) = structural_start(q, v, false)?;
    min_increasing_walk(q, i0, eps)
}

pub(crate) fn decreasing_end(q: &Quiver, i: usize, eps: Sign) -> Result<usize> {
    extend(q, i, eps, largest_below, |_, _| {})
}

fn permutation_by(q: &Quiver, largest: bool) -> Result<Permutation> {
    let m = q.vertex_count();
    let next = if largest {
        largest_below
    } else {
        smallest_above
    };
    let mut images = Vec::with_capacity(m);
    let mut hit = vec![false; m];
    for v in 1..=m {
        let w = if q.incident_arrows(v).is_empty() {
            v
        } else {
            let (i0, eps) = structural_start(q, v, largest)?;
            extend(q, i0, eps, next, |_, _| {})?
        };
        if hit[w - 1] {
            return Err(Error::Internal(format!(
                "structural walks from two vertices end at {w}"
            )));
        }
        hit[w - 1] = true;
        images.push(w - 1);
    }
    Ok(Permutation::from_zero_based(images))
}

/// `xi^-`: sends `v` to the end of its structural decreasing walk.
/// Requires a connected quiver; the one-vertex quiver gives the identity.
pub fn vertex_permutation(q: &Quiver) -> Result<Permutation> {
    q.require_connected()?;
    permutation_by(q, true)
}

/// `xi^-` computed component by component, isolated vertices fixed.
pub fn vertex_permutation_any(q: &Quiver) -> Result<Permutation> {
    permutation_by(q, true)
}

/// `xi^+`, from structural increasing walks; the inverse of `xi^-`.
pub fn vertex_permutation_plus(q: &Quiver) -> Result<Permutation> {
    q.require_connected()?;
    permutation_by(q, false)
}

/// The inverse quiver `Q^-1`: arrow `i` runs from the end of
/// `alpha^-(i^-1)` to the end of `alpha^-(i^+1)`.
pub fn inverse_quiver(q: &Quiver) -> Result<Quiver> {
    q.require_connected()?;
    inverse_quiver_any(q)
}

/// [`inverse_quiver`] without the connectedness requirement.
pub fn inverse_quiver_any(q: &Quiver) -> Result<Quiver> {
    let mut arrows = Vec::with_capacity(q.arrow_count());
    for i in 1..=q.arrow_count() {
        let s = decreasing_end(q, i, Sign::Minus)?;
        let t = decreasing_end(q, i, Sign::Plus)?;
        arrows.push((s, t));
    }
    Quiver::new(q.vertex_count(), arrows)
        .map_err(|e| Error::Internal(format!("inverse quiver is invalid: {e}")))
}

/// `inc(alpha) = sum of e_{i_t} * eps_t`.
pub fn incidence_vector<T: Scalar>(q: &Quiver, w: &Walk) -> Result<Vec<T>> {
    let end = walk_end(q, w.start, &w.steps)?;
    if end != w.end {
        return Err(Error::InvalidWalk(
            "walk does not belong to this quiver".into(),
        ));
    }
    let mut out = vec![T::zero(); q.arrow_count()];
    for &(a, s) in &w.steps {
        out[a - 1] = out[a - 1].clone() + T::lift(s.value());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unimodular_inverse;
    use crate::quiver::{incidence_matrix, triangular_gram};

    fn kronecker() -> Quiver {
        Quiver::new(2, vec![(1, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn decreasing_walk_examples() {
        let a3 = Quiver::linear(3);
        let w = min_decreasing_walk(&a3, 1, Sign::Plus).unwrap();
        assert_eq!((w.steps(), w.end()), (&[(1, Sign::Plus)][..], 2));
        let w = min_decreasing_walk(&a3, 2, Sign::Plus).unwrap();
        assert_eq!((w.steps(), w.end()), (&[(2, Sign::Plus)][..], 3));
        let w = min_decreasing_walk(&kronecker(), 2, Sign::Plus).unwrap();
        assert_eq!(
            (w.steps(), w.end()),
            (&[(2, Sign::Plus), (1, Sign::Minus)][..], 1)
        );
        assert!(min_decreasing_walk(&a3, 3, Sign::Plus).is_err());
    }

    #[test]
    fn increasing_walk_examples() {
        let w = min_increasing_walk(&Quiver::linear(2), 1, Sign::Plus).unwrap();
        assert_eq!(w.steps(), &[(1, Sign::Plus)]);
        let w = min_increasing_walk(&Quiver::linear(3), 1, Sign::Plus).unwrap();
        assert_eq!(
            (w.steps(), w.end()),
            (&[(1, Sign::Plus), (2, Sign::Plus)][..], 3)
        );
    }

    #[test]
    fn structural_walk_examples() {
        let l = Quiver::linear(5);
        for t in 1..5 {
            assert_eq!(structural_walk(&l, t).unwrap().end(), t + 1);
        }
        assert_eq!(structural_walk(&l, 5).unwrap().end(), 1);
        let w = structural_walk(&kronecker(), 1).unwrap();
        assert_eq!(
            (w.steps(), w.end()),
            (&[(2, Sign::Plus), (1, Sign::Minus)][..], 1)
        );
        let iso = Quiver::new(2, vec![]).unwrap();
        assert_eq!(structural_walk(&iso, 1), Err(Error::IsolatedVertex(1)));
    }

    #[test]
    fn increasing_structural_walk_reverses_decreasing_one() {
        let q = Quiver::new(4, vec![(1, 2), (3, 2), (2, 4), (1, 3), (4, 1)]).unwrap();
        for v in 1..=4 {
            let down = structural_walk(&q, v).unwrap();
            let up = structural_increasing_walk(&q, down.end()).unwrap();
            assert_eq!(up, down.reversed());
        }
    }

    #[test]
    fn vertex_permutation_examples() {
        let l = vertex_permutation(&Quiver::linear(4)).unwrap();
        assert_eq!(l.images(), vec![2, 3, 4, 1]);
        assert!(vertex_permutation(&kronecker()).unwrap().is_identity());
        assert!(vertex_permutation(&Quiver::new(1, vec![]).unwrap())
            .unwrap()
            .is_identity());
        assert_eq!(
            vertex_permutation(&Quiver::new(2, vec![]).unwrap()),
            Err(Error::NotConnected)
        );
        let disjoint = Quiver::new(4, vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            vertex_permutation_any(&disjoint).unwrap().images(),
            vec![2, 1, 4, 3]
        );
    }

    #[test]
    fn inverse_quiver_examples() {
        for m in 1..6 {
            assert_eq!(inverse_quiver(&Quiver::linear(m)).unwrap(), Quiver::star(m));
            assert_eq!(inverse_quiver(&Quiver::star(m)).unwrap(), Quiver::linear(m));
        }
        let alternating = Quiver::new(2, vec![(1, 2), (2, 1), (1, 2), (2, 1)]).unwrap();
        let parallel = Quiver::new(2, vec![(1, 2); 4]).unwrap();
        assert_eq!(inverse_quiver(&alternating).unwrap(), parallel);
        assert_eq!(
            inverse_quiver(&Quiver::new(3, vec![(1, 2)]).unwrap()),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn inverse_incidence_and_gram() {
        let q = Quiver::new(4, vec![(2, 1), (3, 2), (2, 4), (1, 3), (4, 1), (1, 2)]).unwrap();
        let inv = inverse_quiver(&q).unwrap();
        let g = triangular_gram::<i64>(&q);
        let g_inv = unimodular_inverse(&g).unwrap();
        assert_eq!(
            incidence_matrix::<i64>(&inv),
            incidence_matrix::<i64>(&q).mul(&g_inv).unwrap()
        );
        assert_eq!(triangular_gram::<i64>(&inv), g_inv);
        assert_eq!(inverse_quiver(&inv).unwrap(), q);
    }

    #[test]
    fn incidence_vector_examples() {
        let a3 = Quiver::linear(3);
        assert_eq!(
            incidence_vector::<i64>(&a3, &Walk::trivial(&a3, 2).unwrap()).unwrap(),
            vec![0, 0]
        );
        let one = Walk::new(&a3, 1, vec![(1, Sign::Plus)]).unwrap();
        assert_eq!(incidence_vector::<i64>(&a3, &one).unwrap(), vec![1, 0]);
        let k = kronecker();
        let w = Walk::new(&k, 1, vec![(2, Sign::Plus), (1, Sign::Minus)]).unwrap();
        let v = incidence_vector::<i64>(&k, &w).unwrap();
        assert_eq!(v, vec![-1, 1]);
        assert_eq!(incidence_matrix::<i64>(&k).mul_vec(&v).unwrap(), vec![0, 0]);
        assert!(Walk::new(&a3, 1, vec![(2, Sign::Plus)]).is_err());
        let foreign = Walk::new(&k, 2, vec![(2, Sign::Minus), (1, Sign::Plus)]).unwrap();
        assert!(incidence_vector::<i64>(&a3, &foreign).is_err());
    }
}
