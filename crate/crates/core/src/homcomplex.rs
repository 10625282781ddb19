//! Ordered simplicial homomorphisms and the prodsimplicial complexes they span.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::vertex_set::VertexSet;

/// A weakly increasing vertex map `[n] → [m]`, stored as the image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hom(Vec<usize>);

impl Hom {
    pub fn new(map: Vec<usize>) -> Self {
        Hom(map)
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `∏ x_{φ(i)}` in a ring with `m` variables.
    pub fn monomial(&self, m: usize) -> Monomial {
        Monomial::from_indices(m, self.0.iter().copied())
    }

    pub fn as_cell(&self) -> Cell {
        Cell::new(self.0.iter().map(|&v| VertexSet::singleton(v)).collect())
    }

    /// Weakly increasing, and every face of `g` goes injectively onto a face of `h`.
    pub fn is_valid(&self, g: &Complex, h: &Complex) -> bool {
        self.0.len() == g.n()
            && self.0.iter().all(|&v| v >= 1 && v <= h.n())
            && self.0.windows(2).all(|w| w[0] <= w[1])
            && g.facets().iter().all(|f| maps_face(&self.0, *f, h))
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn maps_face(map: &[usize], face: VertexSet, h: &Complex) -> bool {
    let image: VertexSet = face.iter().map(|i| map[i - 1]).collect();
    image.len() == face.len() && h.is_face(image)
}

/// `hom_monomial`.
pub fn hom_monomial(phi: &Hom, m: usize) -> Monomial {
    phi.monomial(m)
}

/// A cell `(W_1, ..., W_n)` of `∏ Δ_{[m]}`; each part is a nonempty vertex set.
///
/// Cells order by dimension first and then by their concatenated sorted parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell {
    parts: Vec<VertexSet>,
}

impl Cell {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        Cell { parts }
    }

    pub fn from_lists<V: AsRef<[usize]>>(parts: &[V]) -> Self {
        Cell::new(
            parts
                .iter()
                .map(|p| p.as_ref().iter().copied().collect())
                .collect(),
        )
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.len().saturating_sub(1)).sum()
    }

    pub fn is_vertex(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    /// The map of a vertex cell.
    pub fn as_hom(&self) -> Option<Hom> {
        self.is_vertex()
            .then(|| Hom::new(self.parts.iter().map(|p| p.min_vertex().unwrap()).collect()))
    }

    /// Componentwise containment `self ≤ other`.
    pub fn is_face_of(&self, other: &Cell) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(a, b)| a.is_subset(*b))
    }

    /// `x_τ = ∏_{i, j ∈ W_i} x_j`.
    pub fn product_label(&self, m: usize) -> Monomial {
        Monomial::from_indices(m, self.parts.iter().flat_map(|p| p.iter()))
    }

    /// All selections `(w_1, ..., w_n)` with `w_i ∈ W_i`, as vertex cells.
    pub fn vertices(&self) -> Vec<Hom> {
        let mut out = vec![Vec::with_capacity(self.parts.len())];
        for part in &self.parts {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    part.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(Hom::new).collect()
    }

    /// The selection taking the largest element of every part.
    pub fn max_selection(&self) -> Hom {
        Hom::new(self.parts.iter().map(|p| p.max_vertex().unwrap()).collect())
    }

    /// Codimension-one faces with their incidence numbers.
    ///
    /// Deleting the `k`-th smallest element of `W_i` (which needs `|W_i| ≥ 2`)
    /// has sign `(-1)^(s + k - 1)` with `s = Σ_{j<i} (|W_j| - 1)`.
    pub fn boundary(&self) -> Vec<(Cell, i8)> {
        let mut out = Vec::new();
        let mut s = 0usize;
        for (i, part) in self.parts.iter().enumerate() {
            if part.len() >= 2 {
                for (k0, v) in part.iter().enumerate() {
                    let mut parts = self.parts.clone();
                    parts[i] = part.without(v);
                    let sign = if (s + k0) % 2 == 0 { 1 } else { -1 };
                    out.push((Cell::new(parts), sign));
                }
            }
            s += part.len().saturating_sub(1);
        }
        out
    }

    fn with_part(&self, i: usize, part: VertexSet) -> Cell {
        let mut parts = self.parts.clone();
        parts[i] = part;
        Cell::new(parts)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `is_multihom`: every selection from `c` is an ordered homomorphism `g → h`.
pub fn is_multihom(g: &Complex, h: &Complex, c: &Cell) -> bool {
    let parts = c.parts();
    if parts.len() != g.n() {
        return false;
    }
    let range = VertexSet::full(h.n());
    if parts.iter().any(|p| p.is_empty() || !p.is_subset(range)) {
        return false;
    }
    // every selection is weakly increasing iff consecutive parts are
    if parts
        .windows(2)
        .any(|w| w[0].max_vertex().unwrap() > w[1].min_vertex().unwrap())
    {
        return false;
    }
    g.facets().iter().all(|&f| {
        let positions: Vec<usize> = f.iter().collect();
        all_selections_map_faces(parts, &positions, 0, VertexSet::EMPTY, h)
    })
}

fn all_selections_map_faces(
    parts: &[VertexSet],
    positions: &[usize],
    depth: usize,
    image: VertexSet,
    h: &Complex,
) -> bool {
    if depth == positions.len() {
        return h.is_face(image);
    }
    parts[positions[depth] - 1].iter().all(|v| {
        !image.contains(v) && all_selections_map_faces(parts, positions, depth + 1, image.with(v), h)
    })
}

/// Multihom test for targets that are complete graphs `K_m`, valid when `g`
/// has dimension at most one: consecutive parts are weakly ordered and the
/// parts of every edge `{i < j}` satisfy `max W_i < min W_j`.
pub fn is_multihom_into_complete_graph(g: &Complex, m: usize, c: &Cell) -> bool {
    let parts = c.parts();
    let range = VertexSet::full(m);
    if parts.len() != g.n() || parts.iter().any(|p| p.is_empty() || !p.is_subset(range)) {
        return false;
    }
    if parts
        .windows(2)
        .any(|w| w[0].max_vertex().unwrap() > w[1].min_vertex().unwrap())
    {
        return false;
    }
    g.facets().iter().all(|f| match f.len() {
        0 | 1 => true,
        2 => {
            let (i, j) = (f.min_vertex().unwrap(), f.max_vertex().unwrap());
            parts[i - 1].max_vertex().unwrap() < parts[j - 1].min_vertex().unwrap()
        }
        _ => false,
    })
}

/// All ordered homomorphisms `g → h`, revlex-largest monomial first.
pub fn ordered_homs(g: &Complex, h: &Complex) -> Vec<Hom> {
    let n = g.n();
    let m = h.n();
    // facets grouped by their largest vertex, checked once that vertex is assigned
    let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); n + 1];
    for f in g.facets() {
        if let Some(top) = f.max_vertex() {
            closing[top].push(*f);
        }
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    if m > 0 || n == 0 {
        extend_hom(&mut map, 0, 1, m, &closing, h, &mut out);
    }
    out.sort_by(|a, b| b.monomial(m).revlex_unchecked(&a.monomial(m)));
    out
}

fn extend_hom(
    map: &mut Vec<usize>,
    pos: usize,
    lo: usize,
    m: usize,
    closing: &[Vec<VertexSet>],
    h: &Complex,
    out: &mut Vec<Hom>,
) {
    if pos == map.len() {
        out.push(Hom::new(map.clone()));
        return;
    }
    for v in lo..=m {
        map[pos] = v;
        if closing[pos + 1].iter().all(|f| maps_face(map, *f, h)) {
            extend_hom(map, pos + 1, v, m, closing, h, out);
        }
    }
}

/// Per-variable caps, a revlex floor and a divisibility ceiling on labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionSpec {
    /// `alpha[j-1]` caps the degree of `x_j`; `None` means unbounded.
    pub alpha: Option<Vec<Option<u32>>>,
    /// Every vertex of a kept cell must be revlex `≥ beta`.
    pub beta: Option<Monomial>,
    /// Kept cells have labels dividing `leq`.
    pub leq: Option<Monomial>,
}

impl RestrictionSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with_alpha(mut self, alpha: Vec<Option<u32>>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_beta(mut self, beta: Monomial) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_leq(mut self, leq: Monomial) -> Self {
        self.leq = Some(leq);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_none() && self.beta.is_none() && self.leq.is_none()
    }

    fn validate(&self, n: usize, m: usize) -> Result<()> {
        if let Some(alpha) = &self.alpha {
            if alpha.len() != m {
                return Err(Error::VariableCountMismatch {
                    left: alpha.len(),
                    right: m,
                });
            }
        }
        if let Some(beta) = &self.beta {
            if beta.num_vars() != m {
                return Err(Error::VariableCountMismatch {
                    left: beta.num_vars(),
                    right: m,
                });
            }
            if beta.degree() as usize != n {
                return Err(Error::DegreeMismatch {
                    left: beta.degree(),
                    right: n as u32,
                });
            }
        }
        if let Some(leq) = &self.leq {
            if leq.num_vars() != m {
                return Err(Error::VariableCountMismatch {
                    left: leq.num_vars(),
                    right: m,
                });
            }
        }
        Ok(())
    }

    /// Degree caps and divisibility, which apply to every cell label.
    fn label_ok(&self, label: &Monomial) -> bool {
        let capped = self.alpha.as_ref().map_or(true, |alpha| {
            alpha
                .iter()
                .zip(label.exponents())
                .all(|(cap, e)| cap.map_or(true, |c| *e <= c))
        });
        capped && self.leq.as_ref().map_or(true, |leq| label.divides(leq))
    }

    /// The revlex floor, which applies to vertex labels.
    fn vertex_ok(&self, label: &Monomial) -> bool {
        self.beta
            .as_ref()
            .map_or(true, |beta| label.revlex_unchecked(beta) != Ordering::Less)
    }
}

/// A face-closed family of cells with monomial labels.
#[derive(Clone, PartialEq, Eq)]
pub struct PComplex {
    n: usize,
    m: usize,
    cells: Vec<Cell>,
    labels: Vec<Monomial>,
    index: HashMap<Cell, usize>,
}

/// JSON export: `{"n":..,"m":..,"cells":[{"parts":[[..],..],"dim":d,"label":[..]},..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PComplexFile {
    pub n: usize,
    pub m: usize,
    pub cells: Vec<CellRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub parts: Vec<Vec<usize>>,
    pub dim: usize,
    pub label: Vec<u32>,
}

impl PComplex {
    /// Builds a labeled complex, sorting cells and checking face closure.
    pub fn from_labeled_cells(n: usize, m: usize, cells: Vec<(Cell, Monomial)>) -> Result<Self> {
        let mut cells = cells;
        cells.sort_by(|a, b| a.0.cmp(&b.0));
        cells.dedup_by(|a, b| a.0 == b.0);
        for (c, label) in &cells {
            if c.parts().len() != n || c.parts().iter().any(|p| p.is_empty()) {
                return Err(Error::InvalidCell(format!("{c:?}")));
            }
            if label.num_vars() != m {
                return Err(Error::VariableCountMismatch {
                    left: label.num_vars(),
                    right: m,
                });
            }
        }
        let x = PComplex::assemble(n, m, cells);
        x.check_face_closed()?;
        Ok(x)
    }

    /// Labels every cell by the lcm of its vertex labels.
    pub fn from_vertex_labels(
        n: usize,
        m: usize,
        cells: Vec<Cell>,
        vertex_label: impl Fn(&Hom) -> Monomial,
    ) -> Result<Self> {
        let labeled = cells
            .into_iter()
            .map(|c| {
                let label = c
                    .vertices()
                    .iter()
                    .map(&vertex_label)
                    .reduce(|a, b| a.lcm(&b))
                    .unwrap_or_else(|| Monomial::one(m));
                (c, label)
            })
            .collect();
        PComplex::from_labeled_cells(n, m, labeled)
    }

    fn assemble(n: usize, m: usize, cells: Vec<(Cell, Monomial)>) -> Self {
        let (cells, labels): (Vec<Cell>, Vec<Monomial>) = cells.into_iter().unzip();
        let index = cells
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k))
            .collect();
        PComplex {
            n,
            m,
            cells,
            labels,
            index,
        }
    }

    pub fn empty(n: usize, m: usize) -> Self {
        PComplex::assemble(n, m, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells sorted by dimension, then by their sorted parts.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn label(&self, k: usize) -> &Monomial {
        &self.labels[k]
    }

    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.index.contains_key(c)
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.last().map(Cell::dim)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            f[c.dim()] += 1;
        }
        f
    }

    /// Indices of the cells of dimension `d`, a contiguous range.
    pub fn dim_range(&self, d: usize) -> std::ops::Range<usize> {
        let lo = self.cells.partition_point(|c| c.dim() < d);
        let hi = self.cells.partition_point(|c| c.dim() <= d);
        lo..hi
    }

    pub fn vertex_homs(&self) -> Vec<Hom> {
        self.cells[self.dim_range(0)]
            .iter()
            .map(|c| c.as_hom().unwrap())
            .collect()
    }

    /// Inclusion-maximal cells.
    pub fn facets(&self) -> Vec<usize> {
        let mut covered = vec![false; self.cells.len()];
        for c in &self.cells {
            for (face, _) in c.boundary() {
                if let Some(k) = self.index_of(&face) {
                    covered[k] = true;
                }
            }
        }
        (0..self.cells.len()).filter(|&k| !covered[k]).collect()
    }

    /// Errors unless every codimension-one face of every cell is present.
    pub fn check_face_closed(&self) -> Result<()> {
        for c in &self.cells {
            for (face, _) in c.boundary() {
                if !self.contains(&face) {
                    return Err(Error::NotFaceClosed(format!("{face:?} ⊂ {c:?} is missing")));
                }
            }
        }
        Ok(())
    }

    /// The subcomplex of cells passing `keep`, which must be closed downward.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> PComplex {
        let cells = (0..self.cells.len())
            .filter(|&k| keep(k))
            .map(|k| (self.cells[k].clone(), self.labels[k].clone()))
            .collect();
        PComplex::assemble(self.n, self.m, cells)
    }

    /// `X_{≤ x^α}`: cells whose labels divide `bound`.
    pub fn below(&self, bound: &Monomial) -> PComplex {
        self.filter(|k| self.labels[k].divides(bound))
    }

    pub fn to_file(&self) -> PComplexFile {
        PComplexFile {
            n: self.n,
            m: self.m,
            cells: self
                .cells
                .iter()
                .zip(&self.labels)
                .map(|(c, l)| CellRecord {
                    parts: c.parts().iter().map(|p| p.to_vec()).collect(),
                    dim: c.dim(),
                    label: l.exponents().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &PComplexFile) -> Result<Self> {
        let cells = file
            .cells
            .iter()
            .map(|r| {
                let parts = r
                    .parts
                    .iter()
                    .map(|p| VertexSet::try_from_vertices(p, file.m))
                    .collect::<Result<Vec<_>>>()?;
                Ok((Cell::new(parts), Monomial::new(r.label.clone())))
            })
            .collect::<Result<Vec<_>>>()?;
        PComplex::from_labeled_cells(file.n, file.m, cells)
    }
}

impl fmt::Debug for PComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PComplex")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

/// `ohom(G, H)` restricted by `spec`, labeled by `x_τ`.
///
/// Starts from the surviving homomorphisms and grows cells one element at a
/// time: `τ` with `v` added to `W_i` is a multihom iff `τ` and `τ` with
/// `W_i = {v}` both are, and the latter has no larger dimension, so it is
/// already known when `τ` is extended.
pub fn build_ohom(g: &Complex, h: &Complex, spec: &RestrictionSpec) -> Result<PComplex> {
    let (n, m) = (g.n(), h.n());
    spec.validate(n, m)?;
    let mut known: HashSet<Cell> = HashSet::new();
    let mut level: Vec<Cell> = Vec::new();
    for phi in ordered_homs(g, h) {
        let label = phi.monomial(m);
        if spec.vertex_ok(&label) && spec.label_ok(&label) {
            let c = phi.as_cell();
            known.insert(c.clone());
            level.push(c);
        }
    }
    let mut all = level.clone();
    while !level.is_empty() {
        let mut next: Vec<Cell> = Vec::new();
        let mut fresh: HashSet<Cell> = HashSet::new();
        for tau in &level {
            for (i, part) in tau.parts().iter().enumerate() {
                let top = part.max_vertex().unwrap();
                for v in top + 1..=m {
                    if !known.contains(&tau.with_part(i, VertexSet::singleton(v))) {
                        continue;
                    }
                    let grown = tau.with_part(i, part.with(v));
                    if fresh.contains(&grown) {
                        continue;
                    }
                    if spec.label_ok(&grown.product_label(m)) {
                        debug_assert!(is_multihom(g, h, &grown));
                        fresh.insert(grown.clone());
                        next.push(grown);
                    }
                }
            }
        }
        known.extend(fresh);
        all.extend(next.iter().cloned());
        level = next;
    }
    let cells = all
        .into_iter()
        .map(|c| {
            let label = c.product_label(m);
            (c, label)
        })
        .collect::<Vec<_>>();
    let mut cells = cells;
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(PComplex::assemble(n, m, cells))
}

/// Restricts an existing labeled complex by `spec`.
///
/// The revlex floor keeps a cell when all of its vertices clear it, which is
/// decided dimension by dimension from the codimension-one faces.
pub fn restrict(x: &PComplex, spec: &RestrictionSpec) -> Result<PComplex> {
    spec.validate(x.n(), x.m())?;
    let mut keep = vec![false; x.len()];
    for k in 0..x.len() {
        let c = &x.cells()[k];
        let floor_ok = if c.is_vertex() {
            spec.vertex_ok(x.label(k))
        } else {
            c.boundary()
                .iter()
                .all(|(f, _)| x.index_of(f).map_or(false, |j| keep[j]))
        };
        keep[k] = floor_ok && spec.label_ok(x.label(k));
    }
    Ok(x.filter(|k| keep[k]))
}

/// Swaps `γ(k)` for `φ(k)` at the first index `k` where the two disagree.
///
/// Requires `γ ≠ φ`, both vertices of `delta`, and `γ(k) > φ(k)`.
pub fn swap_vertex(gamma: &Hom, phi: &Hom, delta: &PComplex) -> Result<Hom> {
    if !delta.contains(&gamma.as_cell()) || !delta.contains(&phi.as_cell()) {
        return Err(Error::Precondition(
            "both maps must be vertices of the complex".into(),
        ));
    }
    let k = gamma
        .map()
        .iter()
        .zip(phi.map())
        .position(|(a, b)| a != b)
        .ok_or_else(|| Error::Precondition("the two maps coincide".into()))?;
    if gamma.map()[k] < phi.map()[k] {
        return Err(Error::Precondition(format!(
            "first disagreement at {} has γ < φ",
            k + 1
        )));
    }
    let mut swapped = gamma.map().to_vec();
    swapped[k] = phi.map()[k];
    Ok(Hom::new(swapped))
}
