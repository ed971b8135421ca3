use std::cmp::Ordering;

use super::Quiver;
use crate::error::{Error, Result};

/// A path in a quiver. Arrows are stored in application order, first-applied
/// first; a path of length zero is the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        Path {
            source: q.source(a),
            target: q.target(a),
            arrows: vec![a],
        }
    }

    /// Path from arrows in application order; checks composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::EmptyPath);
        };
        for &a in &arrows {
            if a >= q.arrow_count() {
                return Err(Error::UnknownArrow(format!("#{a}")));
            }
        }
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(Error::NotComposable(format!(
                    "{} cannot follow {}",
                    q.arrow_name(w[1]),
                    q.arrow_name(w[0])
                )));
            }
        }
        Ok(Path {
            source: q.source(first),
            target: q.target(*arrows.last().expect("nonempty")),
            arrows,
        })
    }

    /// Path from arrows in application order, trusting composability.
    pub(crate) fn from_arrows_unchecked(q: &Quiver, arrows: Vec<usize>) -> Path {
        debug_assert!(!arrows.is_empty());
        Path {
            source: q.source(arrows[0]),
            target: q.target(arrows[arrows.len() - 1]),
            arrows,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Arrows in application order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// Rotation of a cycle starting at position `i` of the stored sequence.
    pub fn rotation(&self, q: &Quiver, i: usize) -> Path {
        let mut arrows = self.arrows[i..].to_vec();
        arrows.extend_from_slice(&self.arrows[..i]);
        Path::from_arrows_unchecked(q, arrows)
    }

    /// Sub-path of the stored sequence `arrows[from..to]`; trivial when empty,
    /// placed at the vertex reached after `from` arrows.
    pub fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from >= to {
            let v = if from == 0 {
                self.source
            } else {
                q.target(self.arrows[from - 1])
            };
            return Path::trivial(v);
        }
        Path::from_arrows_unchecked(q, self.arrows[from..to].to_vec())
    }

    /// The `m`-th power of a cycle.
    pub fn power(&self, m: usize) -> Path {
        Path {
            source: self.source,
            target: self.target,
            arrows: self.arrows.repeat(m),
        }
    }

    /// Right-to-left rendering, the trivial path as `e(<vertex>)`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e({})", q.vertex_name(self.source));
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow_name(a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Concatenation `later · earlier` (apply `earlier` first); `None` when the
/// endpoints do not match.
pub fn compose(later: &Path, earlier: &Path) -> Option<Path> {
    if earlier.target != later.source {
        return None;
    }
    let mut arrows = earlier.arrows.clone();
    arrows.extend_from_slice(&later.arrows);
    Some(Path {
        source: earlier.source,
        target: later.target,
        arrows,
    })
}

/// `p b⁻¹`: removes `b` from the first-applied end.
pub fn strip_right(q: &Quiver, p: &Path, b: usize) -> Result<Option<Path>> {
    if p.arrows.is_empty() {
        return Err(Error::EmptyPath);
    }
    if p.arrows[0] != b {
        return Ok(None);
    }
    Ok(Some(p.slice(q, 1, p.len())))
}

/// `b⁻¹ p`: removes `b` from the last-applied end.
pub fn strip_left(q: &Quiver, p: &Path, b: usize) -> Result<Option<Path>> {
    if p.arrows.is_empty() {
        return Err(Error::EmptyPath);
    }
    if *p.arrows.last().expect("nonempty") != b {
        return Ok(None);
    }
    let n = p.len();
    if n == 1 {
        return Ok(Some(Path::trivial(q.source(b))));
    }
    Ok(Some(p.slice(q, 0, n - 1)))
}

/// All paths of length `j`, optionally restricted by endpoints, in canonical
/// order.
pub fn enumerate_paths(q: &Quiver, j: usize, from: Option<usize>, to: Option<usize>) -> Vec<Path> {
    let mut out = Vec::new();
    if j == 0 {
        for v in 0..q.vertex_count() {
            if from.is_none_or(|f| f == v) && to.is_none_or(|t| t == v) {
                out.push(Path::trivial(v));
            }
        }
        return out;
    }
    let mut frontier: Vec<Vec<usize>> = (0..q.arrow_count())
        .filter(|&a| from.is_none_or(|f| q.source(a) == f))
        .map(|a| vec![a])
        .collect();
    for _ in 1..j {
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.target(*p.last().expect("nonempty"));
            for a in q.arrows_from(end) {
                let mut np = p.clone();
                np.push(a);
                next.push(np);
            }
        }
        frontier = next;
    }
    for arrows in frontier {
        let p = Path::from_arrows_unchecked(q, arrows);
        if to.is_none_or(|t| p.target == t) {
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Encodes arrow sequences of a fixed length as integers: base `#Q₁`,
/// first-applied arrow most significant. Code order equals the canonical
/// order on paths of that length, and concatenation on either side with a
/// fixed word preserves it.
#[derive(Clone, Copy, Debug)]
pub struct PathCodec {
    base: u64,
}

impl PathCodec {
    pub fn new(q: &Quiver) -> Self {
        PathCodec {
            base: q.arrow_count() as u64,
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn encode(&self, arrows: &[usize]) -> u64 {
        arrows
            .iter()
            .fold(0u64, |acc, &a| acc * self.base + a as u64)
    }

    /// `base^len`.
    pub fn pow(&self, len: usize) -> u64 {
        self.base.pow(len as u32)
    }

    pub fn decode_arrows(&self, mut code: u64, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = (code % self.base) as usize;
            code /= self.base;
        }
        out
    }

    /// Code of `prefix ++ suffix` (prefix applied first).
    pub fn concat(&self, prefix: u64, suffix: u64, suffix_len: usize) -> u64 {
        prefix * self.pow(suffix_len) + suffix
    }

    /// First-applied arrow of a code of length `len ≥ 1`.
    pub fn first_arrow(&self, code: u64, len: usize) -> usize {
        (code / self.pow(len - 1)) as usize
    }

    /// Last-applied arrow.
    pub fn last_arrow(&self, code: u64) -> usize {
        (code % self.base) as usize
    }
}
