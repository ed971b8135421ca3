use std::collections::HashMap;

use super::truncated::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{sparse_axpy, sparse_from_pairs, Echelon, FieldSpec, Scalar, SparseVec};

/// Basis element `u ⊗ x ⊗ w` of a free bimodule piece: standard monomials
/// `u` (left) and `w` (right) as `(degree, key)`, and a generator index `x`.
type Triple = ((usize, u64), usize, (usize, u64));

/// One total degree of the bimodule complex
/// `A⊗ω⊗A → A⊗R⊗A → A⊗kQ₁⊗A → A⊗kQ₀⊗A → A`.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub degree: usize,
    /// Dimensions of the pieces at `ω`, `R`, `kQ₁`, `kQ₀` and of `A`.
    pub dims: [usize; 5],
    /// Images of the basis vectors under `δ₃`, `δ₂`, `δ₁`, `μ`, in that
    /// order, as sparse vectors over the next piece's basis indices.
    pub maps: [Vec<SparseVec>; 4],
}

/// The bimodule complex in every total degree up to the truncation.
#[derive(Clone, Debug)]
pub struct ComplexData {
    pub relation_degree: usize,
    pub pieces: Vec<DegreePiece>,
}

/// Ranks and homology per total degree, with the first failure.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub truncation: usize,
    /// `(degree, ranks of δ₃, δ₂, δ₁, μ, homology at ω, R, kQ₁, kQ₀, A)`.
    pub rows: Vec<(usize, [usize; 4], [usize; 5])>,
    pub first_failure: Option<(usize, usize)>,
    pub composites_vanish: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.first_failure.is_none()
    }
}

struct Basis {
    items: Vec<Triple>,
    index: HashMap<Triple, usize>,
}

impl Basis {
    fn new(items: Vec<Triple>) -> Self {
        let index = items.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        Basis { items, index }
    }
}

/// Builds the bimodule complex from relations indexed by arrows: generator
/// `ω_e` in degree `N+1`, `ρ_a` (the relation of arrow `a`) in degree `N`.
pub fn build_complex(alg: &TruncatedAlgebra) -> Result<ComplexData> {
    let rels = alg.relations();
    if !rels.is_keyed_by_arrow() {
        return Err(Error::Precondition("relations must be indexed by arrows".into()));
    }
    let q = alg.quiver();
    let n = rels.degree();
    let field = rels.field();
    let one = field.one();
    let nv = q.vertex_count();
    let na = q.arrow_count();
    let codec = *alg.codec();
    let rel_terms: Vec<Vec<(Vec<usize>, Scalar)>> = rels
        .relations()
        .iter()
        .map(|r| r.terms().map(|(p, c)| (p.arrows().to_vec(), c.clone())).collect())
        .collect();
    // generator endpoints (source, target) and degree per piece
    let gens: [Vec<(usize, usize)>; 4] = [
        (0..nv).map(|e| (e, e)).collect(),
        (0..na).map(|a| (q.target(a), q.source(a))).collect(),
        (0..na).map(|a| (q.source(a), q.target(a))).collect(),
        (0..nv).map(|e| (e, e)).collect(),
    ];
    let gen_degree = [n + 1, n, 1, 0];
    let enumerate = |piece: usize, t: usize| -> Vec<Triple> {
        let g = gen_degree[piece];
        let mut out = Vec::new();
        if t < g {
            return out;
        }
        for i in 0..=t - g {
            let j = t - g - i;
            for &u in alg.standard_keys(i) {
                for (x, &(gs, gt)) in gens[piece].iter().enumerate() {
                    if alg.key_source(i, u) != gt {
                        continue;
                    }
                    for &w in alg.standard_keys(j) {
                        if alg.key_target(j, w) == gs {
                            out.push(((i, u), x, (j, w)));
                        }
                    }
                }
            }
        }
        out
    };
    let mul = |later: (usize, u64), earlier: (usize, u64)| alg.multiply_keys(later, earlier);
    let key_of = |arrows: &[usize]| -> (usize, u64) { (arrows.len(), codec.encode(arrows)) };
    let mut pieces = Vec::new();
    for t in 0..=alg.max_degree() {
        let bases: Vec<Basis> = (0..4).map(|p| Basis::new(enumerate(p, t))).collect();
        let a_basis: HashMap<u64, usize> = alg
            .standard_keys(t)
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i))
            .collect();
        // left factor combination ⊗ x ⊗ right factor combination
        let tensor = |target: &Basis, left: &(usize, SparseVec), x: usize, right: &(usize, SparseVec), c: &Scalar| {
            let mut v = Vec::new();
            for (lk, lc) in &left.1 {
                for (rk, rc) in &right.1 {
                    let idx = target.index[&((left.0, *lk), x, (right.0, *rk))];
                    v.push((idx as u64, &(c * lc) * rc));
                }
            }
            v
        };
        let single = |d: usize, k: u64| (d, vec![(k, one.clone())]);
        // δ₃(u⊗ω_e⊗w) = Σ_{t(a)=e} ua⊗ρ_a⊗w − Σ_{s(b)=e} u⊗ρ_b⊗bw
        let d3: Vec<SparseVec> = bases[0]
            .items
            .iter()
            .map(|&(u, e, w)| {
                let mut v = Vec::new();
                for a in q.arrows_into(e) {
                    v.extend(tensor(&bases[1], &mul(u, (1, a as u64)), a, &single(w.0, w.1), &one));
                }
                for b in q.arrows_from(e) {
                    v.extend(tensor(&bases[1], &single(u.0, u.1), b, &mul((1, b as u64), w), &-&one));
                }
                sparse_from_pairs(v)
            })
            .collect();
        // δ₂(u⊗ρ_a⊗w) = Σ c · u p₃ ⊗ b ⊗ p₁ w over splittings p = p₃ b p₁
        let d2: Vec<SparseVec> = bases[1]
            .items
            .iter()
            .map(|&(u, a, w)| {
                let mut v = Vec::new();
                for (arrows, c) in &rel_terms[a] {
                    for pos in 0..arrows.len() {
                        let first = &arrows[..pos];
                        let last = &arrows[pos + 1..];
                        let left = if last.is_empty() { single(u.0, u.1) } else { mul(u, key_of(last)) };
                        let right = if first.is_empty() { single(w.0, w.1) } else { mul(key_of(first), w) };
                        v.extend(tensor(&bases[2], &left, arrows[pos], &right, c));
                    }
                }
                sparse_from_pairs(v)
            })
            .collect();
        // δ₁(u⊗a⊗w) = ua⊗w − u⊗aw
        let d1: Vec<SparseVec> = bases[2]
            .items
            .iter()
            .map(|&(u, a, w)| {
                let mut v = tensor(&bases[3], &mul(u, (1, a as u64)), q.source(a), &single(w.0, w.1), &one);
                v.extend(tensor(&bases[3], &single(u.0, u.1), q.target(a), &mul((1, a as u64), w), &-&one));
                sparse_from_pairs(v)
            })
            .collect();
        // μ(u⊗e⊗w) = uw
        let mu: Vec<SparseVec> = bases[3]
            .items
            .iter()
            .map(|&(u, _, w)| {
                let (_, nf) = mul(u, w);
                sparse_from_pairs(nf.into_iter().map(|(k, c)| (a_basis[&k] as u64, c)))
            })
            .collect();
        pieces.push(DegreePiece {
            degree: t,
            dims: [
                bases[0].items.len(),
                bases[1].items.len(),
                bases[2].items.len(),
                bases[3].items.len(),
                alg.dim(t),
            ],
            maps: [d3, d2, d1, mu],
        });
    }
    Ok(ComplexData {
        relation_degree: n,
        pieces,
    })
}

fn rank(vectors: &[SparseVec], field: FieldSpec) -> usize {
    let mut ech = Echelon::new(field);
    for v in vectors {
        ech.insert(v.clone());
    }
    ech.rank()
}

fn compose_vanishes(first: &[SparseVec], second: &[SparseVec]) -> bool {
    first.iter().all(|v| {
        let mut acc: SparseVec = Vec::new();
        for (k, c) in v {
            acc = sparse_axpy(&acc, c, &second[*k as usize]);
        }
        acc.is_empty()
    })
}

/// Ranks and homology of the bimodule complex in each total degree.
pub fn check_exactness(c: &ComplexData, alg: &TruncatedAlgebra) -> ExactnessReport {
    let field = alg.relations().field();
    let mut rows = Vec::new();
    let mut composites_vanish = true;
    for p in &c.pieces {
        let r: Vec<usize> = p.maps.iter().map(|m| rank(m, field)).collect();
        for i in 0..3 {
            composites_vanish &= compose_vanishes(&p.maps[i], &p.maps[i + 1]);
        }
        let h = [
            p.dims[0] - r[0],
            p.dims[1] - r[0] - r[1],
            p.dims[2] - r[1] - r[2],
            p.dims[3] - r[2] - r[3],
            p.dims[4] - r[3],
        ];
        rows.push((p.degree, [r[0], r[1], r[2], r[3]], h));
    }
    let first_failure = rows
        .iter()
        .find_map(|(d, _, h)| h.iter().position(|&x| x != 0).map(|i| (*d, i)));
    ExactnessReport {
        truncation: alg.max_degree(),
        rows,
        first_failure,
        composites_vanish,
    }
}
