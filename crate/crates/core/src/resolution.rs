//! Ordered homomorphism ideals and the cellular resolutions supported by
//! their hom complexes.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cointerval::is_cointerval;
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::homcomplex::{build_ohom, ordered_homs, Cell, PComplex, RestrictionSpec};
use crate::homology::{FieldTag, Incidence, Scratch};
use crate::monomial::Monomial;

/// Minimal generators of an equigenerated monomial ideal, revlex-largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealGens {
    pub m: usize,
    pub degree: u32,
    pub gens: Vec<Monomial>,
}

impl IdealGens {
    pub fn new(m: usize, degree: u32, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            if g.num_vars() != m {
                return Err(Error::VariableCountMismatch {
                    left: g.num_vars(),
                    right: m,
                });
            }
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: g.degree(),
                    right: degree,
                });
            }
        }
        gens.sort_by(|a, b| b.revlex_unchecked(a));
        gens.dedup();
        Ok(IdealGens { m, degree, gens })
    }

    /// Vertex labels of a labeled complex.
    pub fn from_complex(x: &PComplex) -> Self {
        let gens: Vec<Monomial> = x.dim_range(0).map(|k| x.label(k).clone()).collect();
        let degree = gens.first().map_or(x.n() as u32, Monomial::degree);
        IdealGens::new(x.m(), degree, gens).expect("vertex labels of an ohom complex")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

impl fmt::Display for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// `I_{G,H,ord}`: one generator `∏ x_{φ(i)}` per ordered homomorphism.
pub fn ideal_generators(g: &Complex, h: &Complex) -> IdealGens {
    let m = h.n();
    let gens = ordered_homs(g, h).into_iter().map(|phi| phi.monomial(m));
    IdealGens::new(m, g.n() as u32, gens).expect("hom monomials share degree n")
}

/// All lcms of nonempty subsets of `labels`, deduplicated and sorted.
pub fn lcm_lattice(labels: &[Monomial]) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut out: Vec<Monomial> = Vec::new();
    for g in labels {
        let mut fresh = Vec::new();
        if seen.insert(g.clone()) {
            fresh.push(g.clone());
        }
        for l in &out {
            let joined = l.lcm(g);
            if seen.insert(joined.clone()) {
                fresh.push(joined);
            }
        }
        out.extend(fresh);
    }
    out.sort();
    out
}

/// Lattices smaller than this are checked on the calling thread.
const PARALLEL_THRESHOLD: usize = 256;

/// `X_{≤x^α}` is acyclic over `field` for every `x^α` in the lcm lattice of
/// the vertex labels.
pub fn complex_supports_resolution(x: &PComplex, field: FieldTag) -> Result<bool> {
    Ok(failing_lcm(x, field)?.is_none())
}

/// The smallest lcm-lattice point whose subcomplex is not acyclic.
pub fn failing_lcm(x: &PComplex, field: FieldTag) -> Result<Option<Monomial>> {
    if x.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let inc = Incidence::new(x)?;
    let vertex_labels: Vec<Monomial> = x.dim_range(0).map(|k| x.label(k).clone()).collect();
    let lattice = lcm_lattice(&vertex_labels);
    let fails = |scratch: &mut (Scratch, Vec<bool>), alpha: &Monomial| {
        let (buffers, keep) = scratch;
        keep.clear();
        keep.extend(x.labels().iter().map(|l| l.divides(alpha)));
        !inc.is_acyclic_within(Some(keep), field, buffers)
    };
    let bad = if rayon::current_num_threads() > 1 && lattice.len() >= PARALLEL_THRESHOLD {
        lattice
            .par_iter()
            .map_init(Default::default, fails)
            .position_first(|failed| failed)
    } else {
        let mut scratch = Default::default();
        lattice.iter().position(|alpha| fails(&mut scratch, alpha))
    };
    Ok(bad.map(|k| lattice[k].clone()))
}

/// Whether `ohom(G, H)` restricted by `spec` supports a resolution of its ideal.
pub fn verify_supports_resolution(
    g: &Complex,
    h: &Complex,
    spec: &RestrictionSpec,
    field: FieldTag,
) -> Result<bool> {
    complex_supports_resolution(&build_ohom(g, h, spec)?, field)
}

/// `(face, cell)` index pairs with the face of codimension one.
fn covering_pairs(x: &PComplex) -> impl Iterator<Item = (usize, usize)> + '_ {
    x.cells().iter().enumerate().flat_map(move |(k, c)| {
        c.boundary()
            .into_iter()
            .filter_map(move |(f, _)| x.index_of(&f).map(|j| (j, k)))
    })
}

/// Strict face inclusions never preserve the label.
pub fn verify_minimality(x: &PComplex) -> bool {
    covering_pairs(x).all(|(j, k)| x.label(j) != x.label(k))
}

/// Every covering pair has a label quotient of degree one.
pub fn verify_linearity(x: &PComplex) -> bool {
    covering_pairs(x).all(|(j, k)| {
        x.label(j)
            .divides(x.label(k))
            .then(|| x.label(k).degree() - x.label(j).degree() == 1)
            .unwrap_or(false)
    })
}

/// How a Betti table was justified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The target is cointerval, so the complex is a minimal resolution.
    Cointerval,
    /// The target is not known to be cointerval; support and minimality were
    /// checked directly.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    pub provenance: Provenance,
}

impl BettiTable {
    pub fn alternating_sum(&self) -> isize {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as isize } else { -(b as isize) })
            .sum()
    }
}

/// `β_k = f_k(Δ)` for `Δ = ohom(G, H)` restricted by `spec`.
///
/// Without `allow_unverified`, `H` must be cointerval. With it, a
/// non-cointerval target is accepted only if the complex passes support and
/// minimality checks over the rationals.
pub fn betti_numbers(
    g: &Complex,
    h: &Complex,
    spec: &RestrictionSpec,
    allow_unverified: bool,
) -> Result<BettiTable> {
    let delta = build_ohom(g, h, spec)?;
    let provenance = if is_cointerval(h).verdict {
        Provenance::Cointerval
    } else if !allow_unverified {
        return Err(Error::NotCointerval);
    } else {
        if !delta.is_empty() && !complex_supports_resolution(&delta, FieldTag::Rationals)? {
            return Err(Error::SupportFailed);
        }
        if !verify_minimality(&delta) {
            return Err(Error::MinimalityFailed);
        }
        Provenance::Unverified
    };
    Ok(BettiTable {
        betti: delta.f_vector(),
        provenance,
    })
}

/// One map of the resolution, entries `(row, col, sign, x_τ / x_σ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionLayer {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub row_cells: Vec<Cell>,
    pub col_cells: Vec<Cell>,
    pub entries: Vec<(usize, usize, i8, Monomial)>,
}

/// Layer 0 maps the free module on the generators onto `S`; layer `k ≥ 1` is
/// `∂_k` from `k`-cells to `(k-1)`-cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionExport {
    pub m: usize,
    pub betti: Vec<usize>,
    pub layers: Vec<ResolutionLayer>,
}

impl ResolutionExport {
    /// `∂_{k-1} ∘ ∂_k = 0` for `k ≥ 2` after setting every variable to 1.
    pub fn composes_to_zero(&self) -> bool {
        self.layers.windows(2).skip(1).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            let mut product = vec![vec![0i64; upper.cols]; lower.rows];
            for &(r, mid, s, _) in &lower.entries {
                for &(mid2, c, t, _) in &upper.entries {
                    if mid == mid2 {
                        product[r][c] += i64::from(s) * i64::from(t);
                    }
                }
            }
            product.iter().flatten().all(|&v| v == 0)
        })
    }
}

/// The cellular resolution supported by a labeled complex.
pub fn export_complex(x: &PComplex) -> Result<ResolutionExport> {
    if !complex_supports_resolution(x, FieldTag::Rationals)? {
        return Err(Error::SupportFailed);
    }
    let f = x.f_vector();
    let cells_of = |d: usize| x.cells()[x.dim_range(d)].to_vec();
    let vertices = cells_of(0);
    let mut layers = vec![ResolutionLayer {
        degree: 0,
        rows: 1,
        cols: f[0],
        row_cells: Vec::new(),
        col_cells: vertices.clone(),
        entries: x
            .dim_range(0)
            .enumerate()
            .map(|(col, k)| (0, col, 1, x.label(k).clone()))
            .collect(),
    }];
    for d in 1..f.len() {
        let lower = x.dim_range(d - 1);
        let mut entries = Vec::new();
        for (col, k) in x.dim_range(d).enumerate() {
            for (face, sign) in x.cells()[k].boundary() {
                let j = x.index_of(&face).expect("face-closed");
                let quotient = x.label(k).quotient(x.label(j)).expect("labels grow");
                entries.push((j - lower.start, col, sign, quotient));
            }
        }
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        layers.push(ResolutionLayer {
            degree: d,
            rows: f[d - 1],
            cols: f[d],
            row_cells: cells_of(d - 1),
            col_cells: cells_of(d),
            entries,
        });
    }
    Ok(ResolutionExport {
        m: x.m(),
        betti: f,
        layers,
    })
}

/// The resolution of `I_{G,H,ord}` (restricted by `spec`) supported by its hom complex.
pub fn export_resolution(g: &Complex, h: &Complex, spec: &RestrictionSpec) -> Result<ResolutionExport> {
    export_complex(&build_ohom(g, h, spec)?)
}
