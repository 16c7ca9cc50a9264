use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quiver::Quiver;

/// Chord indices `i_k = m - (pi_1 + ... + pi_k)` for `k < len`.
fn chord_indices(pi: &Partition) -> Vec<usize> {
    let m = pi.total();
    let mut acc = 0;
    pi.parts()[..pi.len() - 1]
        .iter()
        .map(|p| {
            acc += p;
            m - acc
        })
        .collect()
}

fn vertex_count(pi: &Partition) -> Result<usize> {
    let m = pi.total();
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "representative quivers need at least 2 vertices, got {m}"
        )));
    }
    Ok(m)
}

/// `A^d[pi]`: the linear quiver on `m = |pi|` vertices with chords that cut
/// its cycle into parts of `pi`, followed by `d` pairs of antiparallel
/// arrows. Has `m + len(pi) + 2(d - 1)` arrows.
pub fn representative_quiver_a(pi: &Partition, d: usize) -> Result<Quiver> {
    let m = vertex_count(pi)?;
    let idx = chord_indices(pi);
    let l = pi.len();
    let mut arrows: Vec<(usize, usize)> = (1..m).map(|v| (v, v + 1)).collect();
    let mut prev = m;
    for &i in &idx {
        arrows.push((prev, i));
        prev = i;
    }
    let (a, b) = match l {
        1 => (m, m - 1),
        2 => (idx[0], m),
        _ => (idx[l - 2], idx[l - 3]),
    };
    for _ in 0..d {
        arrows.push((a, b));
        arrows.push((b, a));
    }
    Quiver::new(m, arrows)
}

/// `Star^d[pi]`: the maximal star quiver with extra arrows out of vertex 1,
/// the inverse quiver of [`representative_quiver_a`].
pub fn representative_quiver_star(pi: &Partition, d: usize) -> Result<Quiver> {
    let m = vertex_count(pi)?;
    let idx = chord_indices(pi);
    let mut arrows: Vec<(usize, usize)> = (2..=m).map(|v| (1, v)).collect();
    arrows.extend(idx.iter().map(|&i| (1, i + 1)));
    let w = idx.last().map_or(m, |&i| i + 1);
    for _ in 0..2 * d {
        arrows.push((1, w));
    }
    Quiver::new(m, arrows)
}

/// `A^d[pi]` together with its inverse quiver `Star^d[pi]`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RepresentativeQuivers {
    pub linear: Quiver,
    pub star: Quiver,
}

pub fn representative_quivers(pi: &Partition, d: usize) -> Result<RepresentativeQuivers> {
    Ok(RepresentativeQuivers {
        linear: representative_quiver_a(pi, d)?,
        star: representative_quiver_star(pi, d)?,
    })
}

/// `Q^c_r`: the path `1 -> 2 -> ... -> r+1` followed by `c` arrows
/// `r+1 -> 1`. Its incidence bigraph is the canonical `c`-extension of `A_r`.
pub fn canonical_extension_quiver(r: usize, c: usize) -> Result<Quiver> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "canonical extensions need r >= 1".into(),
        ));
    }
    let mut arrows: Vec<(usize, usize)> = (1..=r).map(|v| (v, v + 1)).collect();
    arrows.extend(std::iter::repeat_n((r + 1, 1), c));
    Quiver::new(r + 1, arrows)
}
