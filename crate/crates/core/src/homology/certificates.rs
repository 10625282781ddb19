use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use super::Incidence;
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::homcomplex::{build_ohom, Cell, Hom, PComplex, RestrictionSpec};

/// Codimension-one cofaces of every cell.
fn cofaces(x: &PComplex, inc: &Incidence) -> Vec<Vec<usize>> {
    let mut up = vec![Vec::new(); x.len()];
    for k in 0..x.len() {
        for &(f, _) in inc.faces(k) {
            up[f].push(k);
        }
    }
    up
}

/// Greedy elementary collapses of `x` down to a single vertex.
///
/// Each step removes the smallest free pair `(σ, τ)`: `τ` is the only cell
/// properly containing `σ`. Returns `None` when no free pair is left before a
/// single vertex remains, which says nothing about contractibility.
pub fn collapse_certificate(x: &PComplex) -> Option<Vec<(Cell, Cell)>> {
    if x.is_empty() {
        return None;
    }
    let inc = Incidence::new(x).ok()?;
    let up = cofaces(x, &inc);
    let mut alive = vec![true; x.len()];
    let mut count: Vec<usize> = up.iter().map(Vec::len).collect();
    let coface_of = |k: usize, alive: &[bool]| up[k].iter().copied().find(|&t| alive[t]);
    let is_free = |k: usize, alive: &[bool], count: &[usize]| {
        alive[k] && count[k] == 1 && coface_of(k, alive).map_or(false, |t| count[t] == 0)
    };
    let mut free: BTreeSet<usize> = (0..x.len()).filter(|&k| is_free(k, &alive, &count)).collect();
    let mut remaining = x.len();
    let mut pairs = Vec::new();
    while remaining > 1 {
        let sigma = free.pop_first()?;
        let tau = coface_of(sigma, &alive).expect("free face has a coface");
        alive[sigma] = false;
        alive[tau] = false;
        remaining -= 2;
        pairs.push((x.cells()[sigma].clone(), x.cells()[tau].clone()));
        let mut touched = BTreeSet::new();
        for cell in [sigma, tau] {
            for &(f, _) in inc.faces(cell) {
                if cell == tau && f == sigma {
                    continue;
                }
                count[f] -= 1;
                touched.insert(f);
                touched.extend(inc.faces(f).iter().map(|&(g, _)| g));
            }
        }
        touched.insert(sigma);
        for k in touched {
            if is_free(k, &alive, &count) {
                free.insert(k);
            } else {
                free.remove(&k);
            }
        }
    }
    Some(pairs)
}

/// One removal: `vertex` and the unique facet properly containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalStep {
    pub vertex: Hom,
    pub facet: Cell,
}

/// Removal order witnessing contractibility: each vertex is the revlex-smallest
/// remaining one and lies in exactly one facet, properly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalCert {
    pub steps: Vec<RemovalStep>,
    pub terminal: Hom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum RemovalOutcome {
    Certified(RemovalCert),
    /// `vertex` is the revlex-smallest remaining vertex and `facets` are the
    /// facets containing it; there is not exactly one, or it is the vertex itself.
    Stuck { vertex: Hom, facets: Vec<Cell> },
}

impl RemovalOutcome {
    pub fn certificate(&self) -> Option<&RemovalCert> {
        match self {
            RemovalOutcome::Certified(cert) => Some(cert),
            RemovalOutcome::Stuck { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate().is_some()
    }
}

fn revlex_vertex_cmp(a: &Hom, b: &Hom, m: usize) -> Ordering {
    a.monomial(m)
        .revlex_unchecked(&b.monomial(m))
        .then_with(|| a.cmp(b))
}

fn contains_vertex(c: &Cell, phi: &Hom) -> bool {
    c.parts().iter().zip(phi.map()).all(|(p, &v)| p.contains(v))
}

/// Runs the removal procedure on `x` directly.
pub fn removal_sequence(x: &PComplex) -> Result<RemovalOutcome> {
    if x.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let inc = Incidence::new(x)?;
    let up = cofaces(x, &inc);
    let m = x.m();
    let mut vertices: Vec<(Hom, usize)> = x
        .dim_range(0)
        .map(|k| (x.cells()[k].as_hom().unwrap(), k))
        .collect();
    vertices.sort_by(|a, b| revlex_vertex_cmp(&a.0, &b.0, m));
    let mut alive = vec![true; x.len()];
    let mut steps = Vec::new();
    let last = vertices.len() - 1;
    for (phi, _) in &vertices[..last] {
        let containing: Vec<usize> = (0..x.len())
            .filter(|&k| alive[k] && contains_vertex(&x.cells()[k], phi))
            .collect();
        let facets: Vec<usize> = containing
            .iter()
            .copied()
            .filter(|&k| up[k].iter().all(|&t| !alive[t]))
            .collect();
        if facets.len() != 1 || x.cells()[facets[0]].is_vertex() {
            return Ok(RemovalOutcome::Stuck {
                vertex: phi.clone(),
                facets: facets.iter().map(|&k| x.cells()[k].clone()).collect(),
            });
        }
        steps.push(RemovalStep {
            vertex: phi.clone(),
            facet: x.cells()[facets[0]].clone(),
        });
        for k in containing {
            alive[k] = false;
        }
    }
    Ok(RemovalOutcome::Certified(RemovalCert {
        steps,
        terminal: vertices[last].0.clone(),
    }))
}

/// Runs the removal procedure on `ohom(G, H)` restricted by `spec`.
pub fn removal_certificate(g: &Complex, h: &Complex, spec: &RestrictionSpec) -> Result<RemovalOutcome> {
    removal_sequence(&build_ohom(g, h, spec)?)
}

impl RemovalCert {
    /// Replays the certificate against `x` from the cell list alone.
    pub fn validate(&self, x: &PComplex) -> bool {
        let mut cells: Vec<&Cell> = x.cells().iter().collect();
        for step in &self.steps {
            let remaining: Vec<Hom> = cells.iter().filter_map(|c| c.as_hom()).collect();
            let smallest = remaining
                .iter()
                .min_by(|a, b| revlex_vertex_cmp(a, b, x.m()));
            if smallest != Some(&step.vertex) {
                return false;
            }
            let facets: Vec<&Cell> = cells
                .iter()
                .copied()
                .filter(|c| contains_vertex(c, &step.vertex))
                .filter(|c| !cells.iter().any(|d| d != c && c.is_face_of(d)))
                .collect();
            if facets != [&step.facet] || step.facet.is_vertex() {
                return false;
            }
            cells.retain(|c| !contains_vertex(c, &step.vertex));
        }
        cells.len() == 1 && cells[0].as_hom().as_ref() == Some(&self.terminal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{is_acyclic, FieldTag};
    use crate::monomial::Monomial;

    fn closure(top: Cell, m: usize) -> PComplex {
        let mut cells = vec![top];
        let mut k = 0;
        while k < cells.len() {
            for (f, _) in cells[k].boundary() {
                if !cells.contains(&f) {
                    cells.push(f);
                }
            }
            k += 1;
        }
        let n = cells[0].parts().len();
        PComplex::from_vertex_labels(n, m, cells, |phi| phi.monomial(m)).unwrap()
    }

    fn square_setup() -> (Complex, Complex) {
        let k = Complex::from_vertex_lists(4, &[vec![1, 2, 4], vec![3, 4]]).unwrap();
        let l = Complex::from_vertex_lists(5, &[vec![1, 2, 4], vec![1, 2, 5], vec![3, 4], vec![3, 5]])
            .unwrap();
        (k, l)
    }

    #[test]
    fn segment_collapses_once() {
        let seg = closure(Cell::from_lists(&[vec![1, 2]]), 2);
        let pairs = collapse_certificate(&seg).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].1, Cell::from_lists(&[vec![1, 2]]));
    }

    #[test]
    fn filled_square_collapses_and_boundary_does_not() {
        let square = closure(Cell::from_lists(&[vec![1, 2], vec![3, 4]]), 4);
        let pairs = collapse_certificate(&square).unwrap();
        assert_eq!(pairs.len(), 4);
        let top = square.len() - 1;
        let circle = square.filter(|k| k != top);
        assert_eq!(collapse_certificate(&circle), None);
    }

    #[test]
    fn prism_collapses() {
        let prism = closure(Cell::from_lists(&[vec![1, 2, 3], vec![3, 4]]), 4);
        let pairs = collapse_certificate(&prism).unwrap();
        assert_eq!(2 * pairs.len() + 1, prism.len());
    }

    #[test]
    fn square_removal_order() {
        let (k, l) = square_setup();
        let delta = build_ohom(&k, &l, &RestrictionSpec::none()).unwrap();
        let outcome = removal_certificate(&k, &l, &RestrictionSpec::none()).unwrap();
        let cert = outcome.certificate().unwrap().clone();
        assert_eq!(cert.steps.len(), 3);
        let largest = delta
            .vertex_homs()
            .into_iter()
            .max_by(|a, b| revlex_vertex_cmp(a, b, 5))
            .unwrap();
        assert_eq!(cert.terminal, largest);
        assert!(cert.validate(&delta));
        assert!(is_acyclic(&delta, FieldTag::Rationals));
    }

    #[test]
    fn single_vertex_has_empty_certificate() {
        let g = Complex::simplex(1);
        let h = Complex::simplex(1);
        let cert = removal_certificate(&g, &h, &RestrictionSpec::none()).unwrap();
        let cert = cert.certificate().unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.terminal, Hom::new(vec![1]));
    }

    #[test]
    fn disjoint_edges_get_stuck() {
        let g = Complex::simplex(2);
        let h = Complex::graph(4, &[(1, 2), (3, 4)]).unwrap();
        let delta = build_ohom(&g, &h, &RestrictionSpec::none()).unwrap();
        assert_eq!(delta.f_vector(), vec![2]);
        match removal_certificate(&g, &h, &RestrictionSpec::none()).unwrap() {
            RemovalOutcome::Stuck { vertex, facets } => {
                assert_eq!(vertex, Hom::new(vec![3, 4]));
                assert_eq!(facets, vec![Cell::from_lists(&[vec![3], vec![4]])]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_complex_is_an_error() {
        let g = Complex::simplex(1);
        let h = Complex::simplex(2);
        let spec = RestrictionSpec::none().with_leq(Monomial::one(2));
        assert_eq!(removal_certificate(&g, &h, &spec), Err(Error::EmptyComplex));
    }

    #[test]
    fn tampered_certificate_fails_validation() {
        let (k, l) = square_setup();
        let delta = build_ohom(&k, &l, &RestrictionSpec::none()).unwrap();
        let outcome = removal_sequence(&delta).unwrap();
        let mut cert = outcome.certificate().unwrap().clone();
        cert.steps.swap(0, 1);
        assert!(!cert.validate(&delta));
    }
}
