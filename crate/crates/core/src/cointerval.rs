//! Cointerval, shifted and vertex-decomposable complexes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default cap on the vertex count for the ordering search.
pub const DEFAULT_ORDER_BOUND: usize = 10;

/// Why a complex fails to be cointerval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `face ∈ rlk(j)` but `face ∉ rlk(i)`, with `i < j`.
    Containment { i: usize, j: usize, face: VertexSet },
    /// `rlk(vertex)` is itself not cointerval.
    Inner {
        vertex: usize,
        violation: Box<Violation>,
    },
}

impl Violation {
    /// Re-checks the violation directly against the definition.
    pub fn recheck(&self, h: &Complex) -> bool {
        let vertices = h.vertices();
        match self {
            Violation::Containment { i, j, face } => {
                i < j
                    && vertices.contains(*i)
                    && vertices.contains(*j)
                    && h.rlk_unchecked(VertexSet::singleton(*j)).is_face(*face)
                    && !h.rlk_unchecked(VertexSet::singleton(*i)).is_face(*face)
            }
            Violation::Inner { vertex, violation } => {
                vertices.contains(*vertex)
                    && violation.recheck(&h.rlk_unchecked(VertexSet::singleton(*vertex)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CointervalWitness {
    pub verdict: bool,
    pub violation: Option<Violation>,
}

/// Decides cointervality, returning a violation when it fails.
///
/// The void complex and `{∅}` are cointerval.
pub fn is_cointerval(h: &Complex) -> CointervalWitness {
    match find_violation(h) {
        None => CointervalWitness {
            verdict: true,
            violation: None,
        },
        Some(v) => CointervalWitness {
            verdict: false,
            violation: Some(v),
        },
    }
}

fn find_violation(h: &Complex) -> Option<Violation> {
    if h.dim().map_or(true, |d| d < 0) {
        return None;
    }
    let vertices: Vec<usize> = h.vertices().iter().collect();
    let links: Vec<Complex> = vertices
        .iter()
        .map(|&v| h.rlk_unchecked(VertexSet::singleton(v)))
        .collect();
    // containment is transitive, so consecutive vertices suffice
    for k in 1..links.len() {
        if let Some(face) = links[k].first_face_not_in(&links[k - 1]) {
            return Some(Violation::Containment {
                i: vertices[k - 1],
                j: vertices[k],
                face,
            });
        }
    }
    for (&v, link) in vertices.iter().zip(&links) {
        if let Some(inner) = find_violation(link) {
            return Some(Violation::Inner {
                vertex: v,
                violation: Box::new(inner),
            });
        }
    }
    None
}

/// Shiftedness: every exchange `(F ∖ {i}) ∪ {j}` with `j < i`, `j ∉ F` stays a face.
pub fn is_shifted(h: &Complex) -> bool {
    // exchanges inside a facet are closed under passing to subfaces
    h.facets().iter().all(|&f| {
        f.iter().all(|i| {
            (1..i)
                .filter(|&j| !f.contains(j))
                .all(|j| h.is_face(f.without(i).with(j)))
        })
    })
}

/// Searches for a relabeling making `h` cointerval.
///
/// Returns `perm` with `perm[v - 1]` the new label of `v`; the identity is tried first.
pub fn exists_cointerval_order(h: &Complex, bound: usize) -> Result<Option<Vec<usize>>> {
    let n = h.n();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "vertex count",
            value: n,
            bound,
        });
    }
    let total: usize = (1..=n).product();
    let found = (0..total).into_par_iter().find_first(|&index| {
        let perm = nth_permutation(n, index);
        h.relabel(&perm)
            .map(|r| is_cointerval(&r).verdict)
            .unwrap_or(false)
    });
    Ok(found.map(|index| nth_permutation(n, index)))
}

/// The `index`-th permutation of `1..=n` in lexicographic order.
fn nth_permutation(n: usize, mut index: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut fact: usize = (1..n).product::<usize>().max(1);
    let mut out = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let q = index / fact;
        index %= fact;
        out.push(pool.remove(q));
        if k > 1 {
            fact /= k - 1;
        }
    }
    out
}

/// A certificate of vertex decomposability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SheddingTree {
    /// A simplex or `{∅}`.
    Leaf { complex: Complex },
    Node {
        complex: Complex,
        vertex: usize,
        deletion: Box<SheddingTree>,
        link: Box<SheddingTree>,
    },
}

impl SheddingTree {
    pub fn complex(&self) -> &Complex {
        match self {
            SheddingTree::Leaf { complex } | SheddingTree::Node { complex, .. } => complex,
        }
    }

    /// Re-validates every node against the definition.
    pub fn validate(&self) -> bool {
        match self {
            SheddingTree::Leaf { complex } => complex.is_simplex() || complex.is_irrelevant(),
            SheddingTree::Node {
                complex,
                vertex,
                deletion,
                link,
            } => {
                complex.vertices().contains(*vertex)
                    && *deletion.complex() == complex.delete_vertex(*vertex)
                    && *link.complex() == complex.link_unchecked(VertexSet::singleton(*vertex))
                    && shared_facet(deletion.complex(), link.complex()).is_none()
                    && deletion.validate()
                    && link.validate()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SheddingTree::Leaf { .. } => 0,
            SheddingTree::Node { deletion, link, .. } => 1 + deletion.depth().max(link.depth()),
        }
    }
}

impl Serialize for SheddingTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("complex", self.complex())?;
        if let SheddingTree::Node {
            vertex,
            deletion,
            link,
            ..
        } = self
        {
            map.serialize_entry("vertex", vertex)?;
            map.serialize_entry("deletion", deletion)?;
            map.serialize_entry("link", link)?;
        }
        map.end()
    }
}

/// A facet of `link` that is also a facet of `deletion`.
fn shared_facet(deletion: &Complex, link: &Complex) -> Option<VertexSet> {
    link.facets()
        .iter()
        .copied()
        .find(|f| deletion.facets().binary_search(f).is_ok())
}

/// Why a vertex fails to be a shedding vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheddingFailure {
    /// A facet of `lk(x)` that is also a facet of `H ∖ {x}`.
    SharedFacet { facet: VertexSet },
    DeletionNotDecomposable,
    LinkNotDecomposable,
}

/// Memoized shedding-vertex search. Keys are facet lists with the vertex
/// labels compressed to `1..=k`, which vertex decomposability ignores.
#[derive(Default)]
pub struct SheddingSearch {
    cache: HashMap<Vec<u64>, bool>,
}

impl SheddingSearch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Searches shedding vertices in increasing label order, depth first.
    pub fn decompose(&mut self, h: &Complex) -> Option<SheddingTree> {
        if !self.is_decomposable(h) {
            return None;
        }
        Some(self.build(h))
    }

    fn build(&mut self, h: &Complex) -> SheddingTree {
        if h.is_simplex() || h.is_irrelevant() {
            return SheddingTree::Leaf { complex: h.clone() };
        }
        for x in h.vertices().iter() {
            let (del, lk) = split(h, x);
            if shared_facet(&del, &lk).is_none()
                && self.is_decomposable(&del)
                && self.is_decomposable(&lk)
            {
                return SheddingTree::Node {
                    complex: h.clone(),
                    vertex: x,
                    deletion: Box::new(self.build(&del)),
                    link: Box::new(self.build(&lk)),
                };
            }
        }
        unreachable!("is_decomposable reported a shedding vertex")
    }

    pub fn is_decomposable(&mut self, h: &Complex) -> bool {
        if h.is_simplex() || h.is_irrelevant() {
            return true;
        }
        if h.is_void() {
            return false;
        }
        let key = canonical_key(h);
        if let Some(&known) = self.cache.get(&key) {
            return known;
        }
        let answer = h.vertices().iter().any(|x| {
            let (del, lk) = split(h, x);
            shared_facet(&del, &lk).is_none()
                && self.is_decomposable(&del)
                && self.is_decomposable(&lk)
        });
        self.cache.insert(key, answer);
        answer
    }

    /// One entry per vertex of `h` explaining why it does not shed.
    pub fn failures(&mut self, h: &Complex) -> Vec<(usize, SheddingFailure)> {
        h.vertices()
            .iter()
            .filter_map(|x| {
                let (del, lk) = split(h, x);
                if let Some(facet) = shared_facet(&del, &lk) {
                    Some((x, SheddingFailure::SharedFacet { facet }))
                } else if !self.is_decomposable(&del) {
                    Some((x, SheddingFailure::DeletionNotDecomposable))
                } else if !self.is_decomposable(&lk) {
                    Some((x, SheddingFailure::LinkNotDecomposable))
                } else {
                    None
                }
            })
            .collect()
    }
}

fn split(h: &Complex, x: usize) -> (Complex, Complex) {
    (h.delete_vertex(x), h.link_unchecked(VertexSet::singleton(x)))
}

fn canonical_key(h: &Complex) -> Vec<u64> {
    let used: Vec<usize> = h.vertices().iter().collect();
    let mut relabel = [0usize; 65];
    for (k, &v) in used.iter().enumerate() {
        relabel[v] = k + 1;
    }
    let mut key: Vec<u64> = h
        .facets()
        .iter()
        .map(|f| f.iter().map(|v| relabel[v]).collect::<VertexSet>().bits())
        .collect();
    key.sort_unstable();
    key
}

/// Vertex decomposability with a fresh cache.
pub fn is_vertex_decomposable(h: &Complex) -> Option<SheddingTree> {
    SheddingSearch::new().decompose(h)
}

/// The shedding vertex produced by the revlex argument: the largest element
/// of the revlex-smallest non-face (subsets of the vertex set of `h`).
pub fn theorem_shedding_vertex(h: &Complex) -> Result<usize> {
    if h.dim().map_or(true, |d| d < 0) {
        return Err(Error::EmptyComplex);
    }
    if h.is_simplex() {
        return Err(Error::IsSimplex);
    }
    if !is_cointerval(h).verdict {
        return Err(Error::NotCointerval);
    }
    let sigma = h
        .vertices()
        .subsets()
        .find(|s| !h.is_face(*s))
        .ok_or(Error::IsSimplex)?;
    Ok(sigma.max_vertex().expect("the empty set is a face"))
}

/// Checks that `x` is a shedding vertex of `h` (both sides decomposable,
/// no facet of the link is a facet of the deletion).
pub fn is_shedding_vertex(h: &Complex, x: usize, search: &mut SheddingSearch) -> bool {
    if !h.vertices().contains(x) {
        return false;
    }
    let (del, lk) = split(h, x);
    shared_facet(&del, &lk).is_none() && search.is_decomposable(&del) && search.is_decomposable(&lk)
}
