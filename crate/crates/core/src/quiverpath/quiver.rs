use std::collections::HashMap;

use super::Path;
use crate::error::{Error, Result};

/// An arrow with its endpoints, given as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are referred to by their index in
/// declaration order; names are kept for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

impl Quiver {
    /// Builds a quiver from vertex names and `(arrow, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        if arrows.is_empty() {
            return Err(Error::InvalidQuiver("no arrows".into()));
        }
        let mut vertex_index = HashMap::new();
        let mut vs = Vec::new();
        for v in vertices {
            let v = v.as_ref();
            if !valid_id(v) {
                return Err(Error::InvalidQuiver(format!("invalid vertex id `{v}`")));
            }
            if vertex_index.insert(v.to_string(), vs.len()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
            vs.push(v.to_string());
        }
        let mut arrow_index = HashMap::new();
        let mut arr = Vec::new();
        for (name, s, t) in arrows {
            let name = name.as_ref();
            if !valid_id(name) || name.starts_with("e(") {
                return Err(Error::InvalidQuiver(format!("invalid arrow id `{name}`")));
            }
            let source = *vertex_index
                .get(s.as_ref())
                .ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string()))?;
            let target = *vertex_index
                .get(t.as_ref())
                .ok_or_else(|| Error::UnknownVertex(t.as_ref().to_string()))?;
            if arrow_index.insert(name.to_string(), arr.len()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            arr.push(Arrow {
                name: name.to_string(),
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices: vs,
            arrows: arr,
            vertex_index,
            arrow_index,
        })
    }

    /// One vertex named `v` with the given loops.
    pub fn one_vertex<S: AsRef<str>>(loops: &[S]) -> Result<Self> {
        let arrows: Vec<(String, String, String)> = loops
            .iter()
            .map(|l| (l.as_ref().to_string(), "v".to_string(), "v".to_string()))
            .collect();
        Quiver::new(&["v".to_string()], &arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<usize> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Arrows with source `v`.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    /// Arrows with target `v`.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Trivial path at vertex `v`.
    pub fn trivial(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    /// Parses arrow names written right-to-left (`"b a"` applies `a` first).
    /// A single `e(<vertex>)` token denotes a trivial path.
    pub fn path(&self, text: &str) -> Result<Path> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() == 1 {
            if let Some(v) = tokens[0].strip_prefix("e(").and_then(|s| s.strip_suffix(')')) {
                return Ok(Path::trivial(self.vertex(v)?));
            }
        }
        if tokens.is_empty() {
            return Err(Error::EmptyPath);
        }
        let arrows = tokens
            .iter()
            .rev()
            .map(|t| self.arrow_by_name(t))
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, arrows)
    }

    /// `counts[j][u][w]` = number of paths of length `j` from `u` to `w`.
    pub fn path_counts(&self, max_len: usize) -> Vec<Vec<Vec<u64>>> {
        let n = self.vertices.len();
        let mut counts = vec![vec![vec![0u64; n]; n]];
        for v in 0..n {
            counts[0][v][v] = 1;
        }
        for j in 1..=max_len {
            let mut next = vec![vec![0u64; n]; n];
            for (u, row) in next.iter_mut().enumerate() {
                for a in &self.arrows {
                    row[a.target] += counts[j - 1][u][a.source];
                }
            }
            counts.push(next);
        }
        counts
    }
}
