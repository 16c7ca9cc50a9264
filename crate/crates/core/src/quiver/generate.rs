use crate::quiver::Quiver;

/// Which vertex labelings the generator produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Labeling {
    /// Every assignment of ordered vertex pairs to arrows.
    All,
    /// One representative per vertex relabeling: vertices are numbered in
    /// order of first appearance along the arrow list.
    FirstAppearance,
}

/// Calls `f` on every connected loop-less quiver with `m` vertices and
/// `n` arrows, in lexicographic order of the arrow list.
pub fn for_each_connected_quiver(
    m: usize,
    n: usize,
    labeling: Labeling,
    mut f: impl FnMut(&Quiver),
) {
    if m == 0 {
        return;
    }
    if m == 1 {
        if n == 0 {
            f(&Quiver::new(1, Vec::new()).expect("one vertex"));
        }
        return;
    }
    if n + 1 < m {
        return;
    }
    let mut arrows = Vec::with_capacity(n);
    let used = if labeling == Labeling::All { m } else { 0 };
    recurse(m, n, used, &mut arrows, &mut f);
}

fn recurse(
    m: usize,
    n: usize,
    used: usize,
    arrows: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&Quiver),
) {
    let remaining = n - arrows.len();
    if remaining == 0 {
        if used == m {
            let q = Quiver::new(m, arrows.clone()).expect("generated arrows are valid");
            if q.is_connected() {
                f(&q);
            }
        }
        return;
    }
    if m - used > 2 * remaining {
        return;
    }
    let s_max = (used + 1).min(m);
    for s in 1..=s_max {
        let used_s = used.max(s);
        let t_max = (used_s + 1).min(m);
        for t in 1..=t_max {
            if t == s {
                continue;
            }
            arrows.push((s, t));
            recurse(m, n, used_s.max(t), arrows, f);
            arrows.pop();
        }
    }
}

/// Collects [`for_each_connected_quiver`] into a vector.
pub fn connected_quivers(m: usize, n: usize, labeling: Labeling) -> Vec<Quiver> {
    let mut out = Vec::new();
    for_each_connected_quiver(m, n, labeling, |q| out.push(q.clone()));
    out
}
