//! Quivers realizing a unit form: the representative and canonical
//! quivers, a realization through a basis change to the canonical
//! extension, and an exhaustive search used as a fallback and an oracle.

mod representative;

pub use representative::{
    canonical_extension_quiver, representative_quiver_a, representative_quiver_star,
    representative_quivers, RepresentativeQuivers,
};

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{
    endpoint_product, incidence_matrix, normalize_vertex_labels, symmetric_gram, Quiver,
};
use crate::scalar::Scalar;
use crate::unitform::UnitForm;

/// How a realization was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Basis change to the canonical extension, then reading off columns.
    BasisChange,
    /// Exhaustive search over arrow endpoints.
    Backtracking,
}

/// A quiver `Q` with `q_Q` equal to the input form.
///
/// JSON: `{"quiver": ..., "basis_change": [[...], ...] | null, "strategy": ...}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult<T> {
    pub quiver: Quiver,
    /// `B` with `B^T G_f B` equal to the canonical symmetric Gram matrix.
    pub basis_change: Option<Matrix<T>>,
    pub strategy: Strategy,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizationJson {
    quiver: Quiver,
    basis_change: Option<Vec<Vec<i64>>>,
    strategy: Strategy,
}

impl<T: Scalar> Serialize for RealizationResult<T> {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let basis_change = self
            .basis_change
            .as_ref()
            .map(Matrix::to_i64_rows)
            .transpose()
            .map_err(serde::ser::Error::custom)?;
        RealizationJson {
            quiver: self.quiver.clone(),
            basis_change,
            strategy: self.strategy,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for RealizationResult<T> {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let j = RealizationJson::deserialize(deserializer)?;
        let basis_change = j
            .basis_change
            .map(|rows| {
                Matrix::from_rows(
                    rows.into_iter()
                        .map(|r| r.into_iter().map(T::lift).collect())
                        .collect(),
                )
            })
            .transpose()
            .map_err(serde::de::Error::custom)?;
        Ok(RealizationResult {
            quiver: j.quiver,
            basis_change,
            strategy: j.strategy,
        })
    }
}

/// Symmetric Gram matrix of a connected non-negative form as small
/// integers, with its rank.
fn checked_gram<T: Scalar>(f: &UnitForm<T>) -> Result<(Vec<Vec<i64>>, usize)> {
    if !f.is_connected() {
        return Err(Error::FormNotConnected);
    }
    let rank = f.non_negative_rank().ok_or(Error::NotNonNegative)?;
    let g = f.symmetric_gram();
    let n = f.n();
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = g[(i, j)].to_i64().filter(|v| v.abs() <= 2).ok_or_else(|| {
                Error::NotTypeA(format!(
                    "Gram entry ({},{}) = {} cannot come from a quiver",
                    i + 1,
                    j + 1,
                    g[(i, j)]
                ))
            })?;
        }
    }
    Ok((out, rank))
}

/// Finds a quiver by assigning endpoints to arrows in order, checking each
/// new arrow against all earlier ones. The first arrow is `1 -> 2` and new
/// vertices are numbered in order of first appearance, so the result is
/// the lexicographically first such quiver.
pub fn realize_backtracking<T: Scalar>(f: &UnitForm<T>) -> Result<RealizationResult<T>> {
    let (g, rank) = checked_gram(f)?;
    let m = rank + 1;
    let mut arrows = Vec::with_capacity(f.n());
    if !search(&g, m, 0, &mut arrows) {
        return Err(Error::NotTypeA(format!(
            "no quiver with {m} vertices has this form"
        )));
    }
    let quiver = Quiver::new(m, arrows)?;
    Ok(RealizationResult {
        quiver,
        basis_change: None,
        strategy: Strategy::Backtracking,
    })
}

fn search(g: &[Vec<i64>], m: usize, used: usize, arrows: &mut Vec<(usize, usize)>) -> bool {
    let i = arrows.len();
    if i == g.len() {
        return used == m;
    }
    let s_max = if i == 0 { 1 } else { (used + 1).min(m) };
    for s in 1..=s_max {
        let used_s = used.max(s);
        let t_max = if i == 0 { 2 } else { (used_s + 1).min(m) };
        for t in 1..=t_max {
            if s == t || !(0..i).all(|j| endpoint_product((s, t), arrows[j]) == g[i][j]) {
                continue;
            }
            arrows.push((s, t));
            if search(g, m, used_s.max(t), arrows) {
                return true;
            }
            arrows.pop();
        }
    }
    false
}

/// Number of `+1` entries in row `i` off the diagonal.
fn positives_in_row(g: &[i8], n: usize, i: usize) -> usize {
    (0..n).filter(|&k| k != i && g[i * n + k] == 1).count()
}

/// Column operations `b_i <- b_i - b_j` on the basis `B`, applied while the
/// Gram matrix has an entry `+1`. Each step takes the move leaving the
/// fewest `+1` entries among those reaching an unvisited Gram matrix.
/// Returns the final basis, its inverse and the final Gram matrix.
#[allow(clippy::type_complexity)]
fn inflate<T: Scalar>(g: &[Vec<i64>]) -> Result<(Matrix<T>, Matrix<T>, Vec<Vec<i64>>)> {
    let n = g.len();
    let mut g: Vec<i8> = g.iter().flatten().map(|&x| x as i8).collect();
    let mut b = Matrix::<T>::identity(n);
    let mut b_inv = Matrix::<T>::identity(n);
    let bound = 10 * n * n;
    let mut seen = FxHashSet::default();
    seen.insert(g.clone());
    let mut positives: usize = (0..n).map(|i| positives_in_row(&g, n, i)).sum::<usize>() / 2;
    let mut moves = Vec::new();
    for _ in 0..=bound {
        if positives == 0 {
            let rows = g
                .chunks(n.max(1))
                .take(n)
                .map(|r| r.iter().map(|&x| i64::from(x)).collect())
                .collect();
            return Ok((b, b_inv, rows));
        }
        // score each move by the change in row i alone
        moves.clear();
        for i in 0..n {
            let before = positives_in_row(&g, n, i);
            for j in (0..n).filter(|&j| j != i && g[i * n + j] == 1) {
                let mut after = 0;
                let mut in_range = true;
                for k in (0..n).filter(|&k| k != i) {
                    let x = g[i * n + k] - g[j * n + k];
                    in_range &= x.abs() <= 2;
                    after += usize::from(x == 1);
                }
                if in_range {
                    moves.push((positives - before + after, i, j));
                }
            }
        }
        moves.sort_unstable();
        let mut chosen = None;
        for &(score, i, j) in &moves {
            let mut h = g.clone();
            for k in (0..n).filter(|&k| k != i) {
                let x = g[i * n + k] - g[j * n + k];
                h[i * n + k] = x;
                h[k * n + i] = x;
            }
            if seen.insert(h.clone()) {
                chosen = Some((score, i, j, h));
                break;
            }
        }
        let Some((score, i, j, h)) = chosen else {
            return Err(Error::CanonicalizationFailed(
                "every inflation revisits a Gram matrix".into(),
            ));
        };
        for k in 0..n {
            let bkj = b[(k, j)].clone();
            b[(k, i)] = b[(k, i)].clone() - bkj;
            let inv_ik = b_inv[(i, k)].clone();
            b_inv[(j, k)] = b_inv[(j, k)].clone() + inv_ik;
        }
        g = h;
        positives = score;
    }
    Err(Error::CanonicalizationFailed(format!(
        "no reduced form within {bound} inflations"
    )))
}

/// Reads a quiver off a Gram matrix without `+1` entries: on two vertices
/// every arrow is parallel or antiparallel to arrow 1; otherwise parallel
/// classes must line up along a directed path or a directed cycle.
fn read_reduced(g: &[Vec<i64>], m: usize) -> Result<Quiver> {
    let n = g.len();
    let fail = |why: &str| Err(Error::CanonicalizationFailed(why.into()));
    if m == 2 {
        let arrows = (0..n)
            .map(|i| {
                if i == 0 || g[0][i] == 2 {
                    (1, 2)
                } else {
                    (2, 1)
                }
            })
            .collect();
        return Quiver::new(2, arrows);
    }
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class[i] == usize::MAX {
            class[i] = reps.len();
            reps.push(i);
            for j in i + 1..n {
                if g[i][j] == 2 {
                    class[j] = class[i];
                }
            }
        }
    }
    let k = reps.len();
    let mut adj = vec![Vec::new(); k];
    for x in 0..k {
        for y in x + 1..k {
            if g[reps[x]][reps[y]] == -1 {
                adj[x].push(y);
                adj[y].push(x);
            }
        }
    }
    if adj.iter().any(|a| a.len() > 2) {
        return fail("a vertex meets more than two parallel classes");
    }
    let is_cycle = k == m;
    if !(is_cycle || k + 1 == m) {
        return fail("parallel classes do not form a path or a cycle on the expected vertices");
    }
    let start = if is_cycle {
        0
    } else {
        match (0..k).find(|&x| adj[x].len() <= 1) {
            Some(x) => x,
            None => return fail("no end of the path"),
        }
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&y| y != prev && y != start) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != k {
        return fail("parallel classes are not connected in a single line");
    }
    let mut position = vec![0; k];
    for (p, &x) in order.iter().enumerate() {
        position[x] = p + 1;
    }
    let arrows = (0..n)
        .map(|i| {
            let p = position[class[i]];
            (p, if p == m { 1 } else { p + 1 })
        })
        .collect();
    let q = Quiver::new(m, arrows)?;
    if symmetric_gram::<i64>(&q).to_rows() != g {
        return fail("reduced Gram matrix is not the one of a path or cycle quiver");
    }
    Ok(q)
}

/// A spanning tree of a connected quiver, rooted at vertex 1.
struct SpanningTree {
    /// `(parent vertex, arrow, +1 if the arrow runs parent -> child)`
    parent: Vec<Option<(usize, usize, i64)>>,
    depth: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    fn new(q: &Quiver) -> Self {
        let m = q.vertex_count();
        let mut parent = vec![None; m + 1];
        let mut depth = vec![usize::MAX; m + 1];
        let mut in_tree = vec![false; q.arrow_count() + 1];
        depth[1] = 0;
        let mut stack = vec![1];
        while let Some(v) = stack.pop() {
            for &a in q.incident_arrows(v) {
                let (s, t) = q.arrows()[a - 1];
                let (w, sign) = if s == v { (t, 1) } else { (s, -1) };
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, a, sign));
                    in_tree[a] = true;
                    stack.push(w);
                }
            }
        }
        SpanningTree {
            parent,
            depth,
            in_tree,
        }
    }

    /// Vector `p` supported on tree arrows with `I p = e_u - e_w`.
    fn path<T: Scalar>(&self, n: usize, mut u: usize, mut w: usize) -> Vec<T> {
        let mut p = vec![T::zero(); n];
        while u != w {
            if self.depth[u] >= self.depth[w] {
                let (up, b, sign) = self.parent[u].expect("non-root vertex");
                p[b - 1] = p[b - 1].clone() - T::lift(sign);
                u = up;
            } else {
                let (up, b, sign) = self.parent[w].expect("non-root vertex");
                p[b - 1] = p[b - 1].clone() + T::lift(sign);
                w = up;
            }
        }
        p
    }
}

/// Vector `x` supported on the spine `1 -> ... -> m` of the canonical
/// quiver with `I x = e_s - e_t`.
fn spine_path<T: Scalar>(n: usize, s: usize, t: usize) -> Vec<T> {
    let mut x = vec![T::zero(); n];
    if s < t {
        for a in s..t {
            x[a - 1] = T::one();
        }
    } else {
        for a in t..s {
            x[a - 1] = -T::one();
        }
    }
    x
}

fn set_column<T: Scalar>(m: &mut Matrix<T>, j: usize, col: Vec<T>) {
    for (i, x) in col.into_iter().enumerate() {
        m[(i, j)] = x;
    }
}

/// Unimodular `C` with `I(can) C = I(red)`, and its inverse, for a
/// connected quiver `red` on `r + 1` vertices and the canonical extension
/// quiver `can` with as many arrows. Tree arrows of `red` go to spine
/// paths; the `k`-th arrow outside the tree closes a cycle that goes to
/// the `k`-th arrow `r + 1 -> 1` of `can` followed by the whole spine.
fn lattice_isomorphism<T: Scalar>(can: &Quiver, red: &Quiver) -> (Matrix<T>, Matrix<T>) {
    let n = red.arrow_count();
    let r = can.vertex_count() - 1;
    let tree = SpanningTree::new(red);
    let mut c = Matrix::<T>::zeros(n, n);
    let mut c_inv = Matrix::<T>::zeros(n, n);
    for x in 1..=r {
        set_column(&mut c_inv, x - 1, tree.path(n, x, x + 1));
    }
    let closing = tree.path::<T>(n, 1, r + 1);
    let spine = spine_path::<T>(n, 1, r + 1);
    let mut k = 0;
    for a in 1..=n {
        let (s, t) = red.arrows()[a - 1];
        let mut col = spine_path::<T>(n, s, t);
        if !tree.in_tree[a] {
            let cycle_arrow = r + k;
            for (x, y) in col.iter_mut().zip(&spine) {
                *x = x.clone() + y.clone();
            }
            col[cycle_arrow] = col[cycle_arrow].clone() + T::one();
            // the cycle e_a + path(t, s), less the tree path 1 -> r+1
            let mut back = tree.path::<T>(n, t, s);
            back[a - 1] = back[a - 1].clone() + T::one();
            for (x, y) in back.iter_mut().zip(&closing) {
                *x = x.clone() - y.clone();
            }
            set_column(&mut c_inv, cycle_arrow, back);
            k += 1;
        }
        set_column(&mut c, a - 1, col);
    }
    (c, c_inv)
}

/// A basis change to the canonical extension with its inverse, the rank
/// of the form and the canonical extension quiver.
struct Canonicalization<T> {
    b: Matrix<T>,
    b_inv: Matrix<T>,
    rank: usize,
    can: Quiver,
}

fn canonicalize<T: Scalar>(f: &UnitForm<T>) -> Result<Canonicalization<T>> {
    let (g, rank) = checked_gram(f)?;
    let can = canonical_extension_quiver(rank, f.n() - rank)?;
    let g_can = symmetric_gram::<i64>(&can).to_rows();
    if g == g_can {
        let id = Matrix::identity(f.n());
        return Ok(Canonicalization {
            b: id.clone(),
            b_inv: id,
            rank,
            can,
        });
    }
    let (b1, b1_inv, g_red) = inflate::<T>(&g)?;
    let red = read_reduced(&g_red, rank + 1)?;
    let (c, c_inv) = lattice_isomorphism::<T>(&can, &red);
    let b = b1.mul(&c_inv)?;
    let b_inv = c.mul(&b1_inv)?;
    let lhs = b.transpose().mul(&f.symmetric_gram())?.mul(&b)?;
    if lhs != symmetric_gram::<T>(&can) {
        return Err(Error::Internal(
            "basis change does not reach the canonical Gram matrix".into(),
        ));
    }
    Ok(Canonicalization {
        b,
        b_inv,
        rank,
        can,
    })
}

/// Unimodular `B` with `B^T G_f B = G_can`, where `G_can` is the symmetric
/// Gram matrix of the canonical extension quiver of the same rank and
/// corank. Uses inflations to reach a form whose quiver can be read off
/// directly, then maps that quiver's lattice onto the canonical one.
pub fn weak_congruence_to_canonical<T: Scalar>(f: &UnitForm<T>) -> Result<Matrix<T>> {
    canonicalize(f).map(|c| c.b)
}

/// Realizes a form through a basis change `B` to the canonical extension:
/// `I = I(Q^c_r) B^-1` is the incidence matrix of the answer. Falls back to
/// [`realize_backtracking`] when no `B` is found.
pub fn realize_by_basis_change<T: Scalar>(f: &UnitForm<T>) -> Result<RealizationResult<T>> {
    let Canonicalization {
        b,
        b_inv,
        rank,
        can,
    } = match canonicalize(f) {
        Ok(c) => c,
        Err(Error::CanonicalizationFailed(_)) => return realize_backtracking(f),
        Err(e) => return Err(e),
    };
    let inc = incidence_matrix::<T>(&can).mul(&b_inv)?;
    if inc.transpose().mul(&inc)? != f.symmetric_gram() {
        return Err(Error::Internal(
            "I^T I differs from the Gram matrix of the form".into(),
        ));
    }
    let mut arrows = Vec::with_capacity(f.n());
    for j in 0..f.n() {
        let (mut source, mut target, mut others) = (None, None, 0);
        for v in 0..inc.rows() {
            let x = &inc[(v, j)];
            if x.is_one() && source.is_none() {
                source = Some(v + 1);
            } else if (-x.clone()).is_one() && target.is_none() {
                target = Some(v + 1);
            } else if !x.is_zero() {
                others += 1;
            }
        }
        match (source, target, others) {
            (Some(s), Some(t), 0) => arrows.push((s, t)),
            _ => {
                return Err(Error::Internal(format!(
                    "column {} of I is not e_s - e_t",
                    j + 1
                )))
            }
        }
    }
    let quiver = normalize_vertex_labels(&Quiver::new(rank + 1, arrows)?);
    Ok(RealizationResult {
        quiver,
        basis_change: Some(b),
        strategy: Strategy::BasisChange,
    })
}

/// A quiver whose form is `f`, by [`realize_by_basis_change`].
pub fn realize<T: Scalar>(f: &UnitForm<T>) -> Result<RealizationResult<T>> {
    realize_by_basis_change(f)
}
