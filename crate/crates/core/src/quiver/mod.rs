//! Quivers with totally ordered vertices and arrows, their incidence and
//! Gram matrices, and the vertex permutation read off structural walks.
//!
//! Vertices are `1..=m` and arrows `1..=n`, in numeric order. Arrow order
//! matters: every walk rule below compares arrow labels.

mod generate;
mod walk;

pub use generate::{connected_quivers, for_each_connected_quiver, Labeling};
pub use walk::{
    incidence_vector, inverse_quiver, inverse_quiver_any, min_decreasing_walk, min_increasing_walk,
    structural_increasing_walk, structural_walk, vertex_permutation, vertex_permutation_any,
    vertex_permutation_plus, Sign, Walk,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unimodular_inverse, Matrix, Permutation};
use crate::partition::{cycle_type_of_permutation, Partition};
use crate::scalar::Scalar;

/// A loop-less quiver.
///
/// JSON: `{"vertices": m, "arrows": [[s, t], ...]}` where list position
/// `i` (1-based) is arrow `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    // arrows touching v, ascending, are incident[offsets[v - 1]..offsets[v]]
    offsets: Vec<usize>,
    incident: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;

    fn try_from(j: QuiverJson) -> Result<Self> {
        Quiver::new(j.vertices, j.arrows)
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson {
            vertices: q.vertices,
            arrows: q.arrows,
        }
    }
}

impl Quiver {
    /// Validates vertex ranges and rejects loops.
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut offsets = vec![0; vertices + 1];
        for (k, &(s, t)) in arrows.iter().enumerate() {
            for v in [s, t] {
                if v == 0 || v > vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertices,
                    });
                }
            }
            if s == t {
                return Err(Error::Loop {
                    arrow: k + 1,
                    vertex: s,
                });
            }
            offsets[s] += 1;
            offsets[t] += 1;
        }
        for v in 0..vertices {
            offsets[v + 1] += offsets[v];
        }
        let mut next = offsets.clone();
        let mut incident = vec![0; 2 * arrows.len()];
        for (k, &(s, t)) in arrows.iter().enumerate() {
            for v in [s, t] {
                incident[next[v - 1]] = k + 1;
                next[v - 1] += 1;
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            offsets,
            incident,
        })
    }

    /// The linear quiver `1 -> 2 -> ... -> m`.
    pub fn linear(m: usize) -> Self {
        Quiver::new(m, (1..m).map(|v| (v, v + 1)).collect()).expect("linear quiver is valid")
    }

    /// The maximal star quiver with arrows `1 -> 2, 1 -> 3, ..., 1 -> m`.
    pub fn star(m: usize) -> Self {
        Quiver::new(m, (2..=m).map(|v| (1, v)).collect()).expect("star quiver is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// `(source, target)` of each arrow, in arrow order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn source(&self, arrow: usize) -> usize {
        self.arrows[arrow - 1].0
    }

    pub fn target(&self, arrow: usize) -> usize {
        self.arrows[arrow - 1].1
    }

    /// Arrows incident to `v`, ascending.
    pub fn incident_arrows(&self, v: usize) -> &[usize] {
        &self.incident[self.offsets[v - 1]..self.offsets[v]]
    }

    /// `c = n - m + 1`, the corank of the associated form when connected.
    pub fn corank(&self) -> usize {
        (self.arrow_count() + 1).saturating_sub(self.vertex_count())
    }

    pub(crate) fn check_arrow(&self, arrow: usize) -> Result<()> {
        if arrow == 0 || arrow > self.arrow_count() {
            return Err(Error::InvalidArgument(format!(
                "arrow {arrow} outside 1..={}",
                self.arrow_count()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.vertices {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertices: self.vertices,
            });
        }
        Ok(())
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertices];
        let mut out = Vec::new();
        for root in 0..self.vertices {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root + 1];
            comp[root] = id;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &a in self.incident_arrows(v + 1) {
                    let (s, t) = self.arrows[a - 1];
                    let w = if s == v + 1 { t - 1 } else { s - 1 };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w + 1);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertices + 1];
        seen[1] = true;
        let mut stack = vec![1];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &a in self.incident_arrows(v) {
                let (s, t) = self.arrows[a - 1];
                let w = s + t - v;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertices
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }

    /// `Q[v, w]`: append an arrow `v -> w` as the new maximal arrow.
    pub fn with_arrow(&self, v: usize, w: usize) -> Result<Quiver> {
        let mut arrows = self.arrows.clone();
        arrows.push((v, w));
        Quiver::new(self.vertices, arrows)
    }

    /// Reverses the orientation of the listed arrows, keeping the order.
    pub fn with_inverted_arrows(&self, which: &[usize]) -> Result<Quiver> {
        let mut arrows = self.arrows.clone();
        for &a in which {
            self.check_arrow(a)?;
            let (s, t) = arrows[a - 1];
            arrows[a - 1] = (t, s);
        }
        Quiver::new(self.vertices, arrows)
    }
}

/// `m x n` matrix whose column `i` is `e_{s(i)} - e_{t(i)}`.
pub fn incidence_matrix<T: Scalar>(q: &Quiver) -> Matrix<T> {
    let mut m = Matrix::zeros(q.vertex_count(), q.arrow_count());
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        m[(s - 1, k)] = T::one();
        m[(t - 1, k)] = -T::one();
    }
    m
}

/// The unit upper triangular `G` with `I(Q)^T I(Q) = G + G^T`.
pub fn triangular_gram<T: Scalar>(q: &Quiver) -> Matrix<T> {
    let n = q.arrow_count();
    let arrows = q.arrows();
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => T::one(),
        std::cmp::Ordering::Greater => T::zero(),
        std::cmp::Ordering::Less => T::lift(endpoint_product(arrows[i], arrows[j])),
    })
}

/// `(e_s - e_t) . (e_s' - e_t')` for two arrows.
pub(crate) fn endpoint_product((s, t): (usize, usize), (s2, t2): (usize, usize)) -> i64 {
    (s == s2) as i64 + (t == t2) as i64 - (s == t2) as i64 - (t == s2) as i64
}

/// `I(Q)^T I(Q)`.
pub fn symmetric_gram<T: Scalar>(q: &Quiver) -> Matrix<T> {
    let arrows = q.arrows();
    Matrix::from_fn(arrows.len(), arrows.len(), |i, j| {
        T::lift(endpoint_product(arrows[i], arrows[j]))
    })
}

/// Symmetric adjacency of the incidence bigraph `Inc(Q)`: vertices are
/// arrows, one edge per shared endpoint. An edge where the two arrows can
/// be walked consecutively counts `+1`; an edge where both leave or both
/// enter the shared vertex counts `-1`. With this convention
/// `I(Q)^T I(Q) = 2 Id - SAdj(Inc(Q))`.
pub fn incidence_bigraph_adjacency<T: Scalar>(q: &Quiver) -> Matrix<T> {
    let n = q.arrow_count();
    let arrows = q.arrows();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            return T::zero();
        }
        let (a, b) = (arrows[i], arrows[j]);
        let mut acc = 0i64;
        for v in [a.0, a.1] {
            if v != b.0 && v != b.1 {
                continue;
            }
            let a_leaves = a.0 == v;
            let b_leaves = b.0 == v;
            acc += if a_leaves != b_leaves { 1 } else { -1 };
        }
        T::lift(acc)
    })
}

/// Degree matrix and symmetric adjacency matrix of the underlying graph,
/// counted edge by edge.
pub fn underlying_degree_adjacency<T: Scalar>(q: &Quiver) -> (Matrix<T>, Matrix<T>) {
    let m = q.vertex_count();
    let mut deg = Matrix::<T>::zeros(m, m);
    let mut adj = Matrix::<T>::zeros(m, m);
    for &(s, t) in q.arrows() {
        let (s, t) = (s - 1, t - 1);
        deg[(s, s)] = deg[(s, s)].clone() + T::one();
        deg[(t, t)] = deg[(t, t)].clone() + T::one();
        adj[(s, t)] = adj[(s, t)].clone() + T::one();
        adj[(t, s)] = adj[(t, s)].clone() + T::one();
    }
    (deg, adj)
}

/// Laplace matrix `L_Q = I(Q) I(Q)^T`.
pub fn laplace<T: Scalar>(q: &Quiver) -> Matrix<T> {
    let i = incidence_matrix::<T>(q);
    i.mul(&i.transpose()).expect("conformable")
}

/// Coxeter-Laplace matrix `Id_m - I(Q^-1) I(Q)^T`, checked to be the
/// permutation matrix of the vertex permutation.
pub fn coxeter_laplace<T: Scalar>(q: &Quiver) -> Result<Matrix<T>> {
    let inv = inverse_quiver(q)?;
    let m = q.vertex_count();
    let prod = incidence_matrix::<T>(&inv).mul(&incidence_matrix::<T>(q).transpose())?;
    let lambda = Matrix::<T>::identity(m).sub(&prod)?;
    let xi = vertex_permutation(q)?;
    if Permutation::from_matrix(&lambda).as_ref() != Some(&xi) {
        return Err(Error::Internal(
            "Coxeter-Laplace matrix differs from the vertex permutation matrix".into(),
        ));
    }
    Ok(lambda)
}

/// Coxeter matrix `Id_n - I(Q)^T I(Q^-1)`, checked against `-G^T G^-1`.
pub fn coxeter_matrix_of_quiver<T: Scalar>(q: &Quiver) -> Result<Matrix<T>> {
    let inv = inverse_quiver(q)?;
    let n = q.arrow_count();
    let via_inverse = Matrix::<T>::identity(n).sub(
        &incidence_matrix::<T>(q)
            .transpose()
            .mul(&incidence_matrix::<T>(&inv))?,
    )?;
    let g = triangular_gram::<T>(q);
    let via_gram = g.transpose().mul(&unimodular_inverse(&g)?)?.neg();
    if via_inverse != via_gram {
        return Err(Error::Internal(
            "the two Coxeter matrix formulas disagree".into(),
        ));
    }
    Ok(via_gram)
}

/// Cycle type of the vertex permutation.
pub fn cycle_type_of_quiver(q: &Quiver) -> Result<Partition> {
    Ok(cycle_type_of_permutation(&vertex_permutation(q)?))
}

/// The quiver without its maximal arrow.
pub fn remove_last_arrow(q: &Quiver) -> Result<Quiver> {
    if q.arrow_count() == 0 {
        return Err(Error::InvalidArgument("quiver has no arrows".into()));
    }
    Quiver::new(q.vertex_count(), q.arrows()[..q.arrow_count() - 1].to_vec())
}

/// `rho . Q`: sources and targets mapped through `rho`.
pub fn relabel_vertices(q: &Quiver, rho: &Permutation) -> Result<Quiver> {
    if rho.size() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "permutation of {} elements on a quiver with {} vertices",
            rho.size(),
            q.vertex_count()
        )));
    }
    Quiver::new(
        q.vertex_count(),
        q.arrows()
            .iter()
            .map(|&(s, t)| (rho.image(s), rho.image(t)))
            .collect(),
    )
}

/// Every arrow reversed, same order.
pub fn opposite(q: &Quiver) -> Quiver {
    Quiver::new(
        q.vertex_count(),
        q.arrows().iter().map(|&(s, t)| (t, s)).collect(),
    )
    .expect("reversal keeps validity")
}

/// Relabels vertices in order of first appearance along the arrow list
/// (source before target), so vertex 1 is the source of arrow 1.
/// Isolated vertices keep their relative order after the others.
pub fn normalize_vertex_labels(q: &Quiver) -> Quiver {
    let m = q.vertex_count();
    let mut label = vec![0usize; m];
    let mut next = 1;
    for &(s, t) in q.arrows() {
        for v in [s, t] {
            if label[v - 1] == 0 {
                label[v - 1] = next;
                next += 1;
            }
        }
    }
    for l in label.iter_mut() {
        if *l == 0 {
            *l = next;
            next += 1;
        }
    }
    let arrows = q
        .arrows()
        .iter()
        .map(|&(s, t)| (label[s - 1], label[t - 1]))
        .collect();
    Quiver::new(m, arrows).expect("first-appearance labels form a bijection")
}
