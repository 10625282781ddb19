//! Finite simplicial complexes on the ordered vertex set `1..=n`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex stored by its facets.
///
/// The void complex (no faces at all) has no facets; the irrelevant complex
/// `{∅}` has the empty set as its only facet. The full face family is
/// generated on first use and cached.
#[derive(Clone)]
pub struct Complex {
    n: usize,
    facets: Vec<VertexSet>,
    faces: OnceLock<Vec<VertexSet>>,
}

/// On-disk interchange format: `{"n": 5, "facets": [[1,2,4],[3,5]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl Complex {
    /// Builds the complex generated by `facets`; non-maximal inputs are absorbed.
    pub fn new(n: usize, facets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let range = VertexSet::full(n);
        let facets: Vec<VertexSet> = facets.into_iter().collect();
        for f in &facets {
            if !f.is_subset(range) {
                let vertex = f.difference(range).min_vertex().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
        }
        Ok(Complex::from_facets_unchecked(n, facets))
    }

    /// `build_complex`: facets given as vertex lists.
    pub fn from_vertex_lists<V: AsRef<[usize]>>(n: usize, facets: &[V]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if n == 0 && facets.iter().any(|f| !f.as_ref().is_empty()) {
            return Err(Error::NoVertices);
        }
        let sets = facets
            .iter()
            .map(|f| VertexSet::try_from_vertices(f.as_ref(), n))
            .collect::<Result<Vec<_>>>()?;
        Complex::new(n, sets)
    }

    pub(crate) fn from_facets_unchecked(n: usize, mut facets: Vec<VertexSet>) -> Self {
        facets.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut maximal: Vec<VertexSet> = Vec::with_capacity(facets.len());
        for f in facets {
            if !maximal.iter().any(|m| f.is_subset(*m)) {
                maximal.push(f);
            }
        }
        maximal.sort();
        Complex {
            n,
            facets: maximal,
            faces: OnceLock::new(),
        }
    }

    pub fn void(n: usize) -> Self {
        Complex::from_facets_unchecked(n, Vec::new())
    }

    /// The complex `{∅}`.
    pub fn irrelevant(n: usize) -> Self {
        Complex::from_facets_unchecked(n, vec![VertexSet::EMPTY])
    }

    /// The full simplex on `1..=n`.
    pub fn simplex(n: usize) -> Self {
        Complex::from_facets_unchecked(n, vec![VertexSet::full(n)])
    }

    /// The complete graph `K_n` as a one-dimensional complex.
    pub fn complete_graph(n: usize) -> Self {
        let facets = if n == 1 {
            vec![VertexSet::singleton(1)]
        } else {
            (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| VertexSet::singleton(i).with(j)))
                .collect()
        };
        Complex::from_facets_unchecked(n, facets)
    }

    /// Graph on `1..=n` with the given edges; every vertex is kept as a 0-face.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut facets: Vec<VertexSet> = (1..=n).map(VertexSet::singleton).collect();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Precondition(format!("loop at vertex {a}")));
            }
            facets.push(VertexSet::try_from_vertices(&[a, b], n)?);
        }
        Complex::new(n, facets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [VertexSet::EMPTY]
    }

    /// A complex with exactly one facet, which is nonempty.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1 && !self.facets[0].is_empty()
    }

    /// Dimension; `None` for the void complex and `Some(-1)` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_face(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    /// Vertices `v` with `{v}` a face.
    pub fn vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    /// All faces, including `∅` when the complex is nonvoid, sorted by
    /// dimension and then lexicographically.
    pub fn faces(&self) -> &[VertexSet] {
        self.faces.get_or_init(|| {
            let mut all: Vec<VertexSet> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for f in &self.facets {
                for s in f.subsets() {
                    if seen.insert(s) {
                        all.push(s);
                    }
                }
            }
            all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            all
        })
    }

    /// Number of faces of each dimension `0, 1, ..., dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in self.faces() {
            if s.is_empty() {
                continue;
            }
            let d = s.len() - 1;
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    /// Every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|f| other.is_face(*f))
    }

    /// A face of `self` missing from `other`, smallest by dimension then lex order.
    pub fn first_face_not_in(&self, other: &Complex) -> Option<VertexSet> {
        if self.is_subcomplex_of(other) {
            return None;
        }
        self.faces().iter().copied().find(|s| !other.is_face(*s))
    }

    /// `lk_H(σ) = {τ ∈ H : σ ∩ τ = ∅, σ ∪ τ ∈ H}`.
    pub fn link(&self, sigma: VertexSet) -> Result<Complex> {
        if !self.is_face(sigma) {
            return Err(Error::NotAFace(sigma.to_vec()));
        }
        Ok(self.link_unchecked(sigma))
    }

    pub(crate) fn link_unchecked(&self, sigma: VertexSet) -> Complex {
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma))
            .collect();
        Complex::from_facets_unchecked(self.n, facets)
    }

    /// Right link: the link of `σ` restricted to vertices greater than `max σ`.
    pub fn rlk(&self, sigma: VertexSet) -> Result<Complex> {
        if sigma.is_empty() {
            return Err(Error::EmptyFace);
        }
        if !self.is_face(sigma) {
            return Err(Error::NotAFace(sigma.to_vec()));
        }
        Ok(self.rlk_unchecked(sigma))
    }

    pub(crate) fn rlk_unchecked(&self, sigma: VertexSet) -> Complex {
        let right = VertexSet::above(sigma.max_vertex().unwrap_or(0));
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.intersection(right))
            .collect();
        Complex::from_facets_unchecked(self.n, facets)
    }

    /// Induced subcomplex on `w`: faces of `self` contained in `w`.
    pub fn induced(&self, w: VertexSet) -> Complex {
        let facets = self.facets.iter().map(|f| f.intersection(w)).collect();
        Complex::from_facets_unchecked(self.n, facets)
    }

    /// Deletion `H ∖ {x}`, the induced subcomplex on all other vertices.
    pub fn delete_vertex(&self, x: usize) -> Complex {
        self.induced(VertexSet::full(self.n).without(x))
    }

    /// Relabels vertex `v` as `perm[v - 1]`; `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Complex> {
        let n = self.n;
        let mut seen = VertexSet::EMPTY;
        if perm.len() != n {
            return Err(Error::Precondition(format!(
                "permutation has length {} but the complex has {n} vertices",
                perm.len()
            )));
        }
        for &p in perm {
            if p == 0 || p > n || seen.contains(p) {
                return Err(Error::Precondition(format!(
                    "{perm:?} is not a permutation of 1..={n}"
                )));
            }
            seen.insert(p);
        }
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|v| perm[v - 1]).collect())
            .collect();
        Ok(Complex::from_facets_unchecked(n, facets))
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            n: self.n,
            facets: self.facets.iter().map(|f| f.to_vec()).collect(),
        }
    }
}

impl TryFrom<ComplexFile> for Complex {
    type Error = Error;

    fn try_from(file: ComplexFile) -> Result<Self> {
        Complex::from_vertex_lists(file.n, &file.facets)
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = ComplexFile::deserialize(d)?;
        Complex::try_from(file).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl Hash for Complex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.facets.hash(state);
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, facets=[", self.n)?;
        for (k, facet) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, "])")
    }
}

/// Revlex comparison of two vertex sets.
pub fn revlex_set_cmp(a: VertexSet, b: VertexSet) -> Ordering {
    a.revlex_cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn cx(n: usize, facets: &[&[usize]]) -> Complex {
        Complex::from_vertex_lists(n, facets).unwrap()
    }

    #[test]
    fn build_closes_downward() {
        let h = cx(3, &[&[1, 2], &[3]]);
        let faces: Vec<_> = h.faces().to_vec();
        assert_eq!(
            faces,
            vec![set(&[]), set(&[1]), set(&[2]), set(&[3]), set(&[1, 2])]
        );
        assert_eq!(h.f_vector(), vec![3, 1]);
    }

    #[test]
    fn build_absorbs_redundant_facets() {
        let h = cx(2, &[&[1, 2], &[2]]);
        assert_eq!(h.facets(), &[set(&[1, 2])]);
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            Complex::from_vertex_lists(3, &[vec![1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(
            Complex::from_vertex_lists(0, &[vec![1]]),
            Err(Error::NoVertices)
        );
        assert!(Complex::from_vertex_lists(65, &[vec![1]]).is_err());
    }

    #[test]
    fn void_and_irrelevant_are_distinct() {
        let void = Complex::from_vertex_lists::<Vec<usize>>(0, &[]).unwrap();
        let irr = Complex::from_vertex_lists(0, &[Vec::<usize>::new()]).unwrap();
        assert!(void.is_void());
        assert!(irr.is_irrelevant());
        assert_ne!(void, irr);
        assert_eq!(void.dim(), None);
        assert_eq!(irr.dim(), Some(-1));
        assert!(void.faces().is_empty());
        assert_eq!(irr.faces(), &[VertexSet::EMPTY]);
    }

    #[test]
    fn worked_complex_l() {
        let l = cx(5, &[&[1, 2, 4], &[1, 2, 5], &[3, 4], &[3, 5]]);
        assert_eq!(l.dim(), Some(2));
        assert_eq!(l.f_vector(), vec![5, 7, 2]);
    }

    #[test]
    fn link_examples() {
        let h = cx(4, &[&[1, 3], &[2, 4], &[1, 4]]);
        assert_eq!(h.link(VertexSet::EMPTY).unwrap(), h);
        let lk = h.link(set(&[3])).unwrap();
        assert_eq!(lk.faces(), &[set(&[]), set(&[1])]);
        assert_eq!(
            h.link(set(&[1, 2])),
            Err(Error::NotAFace(vec![1, 2]))
        );
    }

    fn equivalence_example() -> Complex {
        let mut facets = vec![vec![2, 5, 6]];
        for a in 3..=6 {
            for b in a + 1..=6 {
                facets.push(vec![1, a, b]);
            }
        }
        Complex::from_vertex_lists(6, &facets).unwrap()
    }

    #[test]
    fn right_link_examples() {
        let h = equivalence_example();
        assert_eq!(h.rlk(set(&[2])).unwrap().facets(), &[set(&[5, 6])]);
        assert_eq!(
            h.rlk(set(&[3])).unwrap().facets(),
            &[set(&[4]), set(&[5]), set(&[6])]
        );
        assert!(h.rlk(set(&[6])).unwrap().is_irrelevant());
        assert_eq!(h.rlk(VertexSet::EMPTY), Err(Error::EmptyFace));
        assert!(h.rlk(set(&[2, 3])).is_err());
    }

    #[test]
    fn induced_examples() {
        let h = cx(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(h.induced(VertexSet::full(3)), h);
        assert_eq!(h.induced(set(&[1, 3])).facets(), &[set(&[1]), set(&[3])]);
        assert!(h.induced(VertexSet::EMPTY).is_irrelevant());
    }

    #[test]
    fn deletion_matches_face_filtering() {
        let h = equivalence_example();
        for k in 1..=6 {
            let del = h.delete_vertex(k);
            let expected: Vec<VertexSet> = h
                .faces()
                .iter()
                .copied()
                .filter(|f| !f.contains(k))
                .collect();
            assert_eq!(del.faces(), expected.as_slice());
        }
    }

    #[test]
    fn relabel_permutes_vertices() {
        let h = cx(3, &[&[1, 2], &[3]]);
        let r = h.relabel(&[3, 1, 2]).unwrap();
        assert_eq!(r.facets(), &[set(&[1, 3]), set(&[2])]);
        assert!(h.relabel(&[1, 1, 2]).is_err());
    }

    #[test]
    fn revlex_set_examples() {
        assert_eq!(revlex_set_cmp(set(&[1, 2]), set(&[2, 3])), Ordering::Less);
        assert_eq!(revlex_set_cmp(set(&[1, 2]), set(&[3, 4])), Ordering::Less);
        assert_eq!(revlex_set_cmp(set(&[1, 2]), set(&[1, 2])), Ordering::Equal);
    }

    #[test]
    fn json_format() {
        let h = cx(3, &[&[1, 2], &[3]]);
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(text, r#"{"n":3,"facets":[[1,2],[3]]}"#);
        let back: Complex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<Complex>(r#"{"n":2,"facets":[[3]]}"#).is_err());
    }
}
