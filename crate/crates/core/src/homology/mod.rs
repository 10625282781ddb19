//! Cellular chain complexes of prodsimplicial complexes and their homology.

mod certificates;
mod field;
mod rank;

pub use certificates::{
    collapse_certificate, removal_certificate, removal_sequence, RemovalCert, RemovalOutcome,
    RemovalStep,
};
pub use field::{rank_backends, FieldTag, RankBackend};
pub use rank::{rank_gf2, rank_rational, SparseMatrix};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homcomplex::PComplex;

/// Boundary maps `∂_i : C_i → C_{i-1}` over one field.
///
/// `boundaries[i]` has `dims[i-1]` rows and `dims[i]` columns; `boundaries[0]`
/// is the augmentation `C_0 → 𝕜` when the complex is reduced and a `0 × dims[0]`
/// matrix otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub field: FieldTag,
    pub reduced: bool,
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

/// JSON export of one boundary map as `(row, col, value)` triples.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryExport {
    pub dim: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl ChainComplex {
    pub fn export(&self) -> Vec<BoundaryExport> {
        self.boundaries
            .iter()
            .enumerate()
            .map(|(dim, m)| BoundaryExport {
                dim,
                rows: m.rows,
                cols: m.cols,
                entries: m.entries.clone(),
            })
            .collect()
    }

    /// `∂_{i-1} ∘ ∂_i = 0` for every `i`, in the coefficient field.
    pub fn squares_to_zero(&self) -> bool {
        let backend = self.field.backend();
        self.boundaries.windows(2).all(|w| {
            w[0].compose(&w[1])
                .iter()
                .flatten()
                .all(|&v| backend.reduce(v) == 0)
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        let backend = self.field.backend();
        self.boundaries.iter().map(|m| backend.rank(m)).collect()
    }

    /// Homology dimensions in degrees `0..dims.len()` (reduced when the complex is).
    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|i| self.dims[i] - ranks[i] - ranks.get(i + 1).copied().unwrap_or(0))
            .collect()
    }
}

/// Codimension-one faces of every cell with their incidence numbers.
pub(crate) struct Incidence {
    faces: Vec<Vec<(usize, i8)>>,
    ranges: Vec<std::ops::Range<usize>>,
}

/// Buffers reused across acyclicity checks of subcomplexes.
#[derive(Default)]
pub(crate) struct Scratch {
    local: Vec<usize>,
    dims: Vec<usize>,
    ints: Vec<i64>,
    bits: Vec<u64>,
}

impl Incidence {
    pub(crate) fn new(x: &PComplex) -> Result<Self> {
        let faces = x
            .cells()
            .iter()
            .map(|c| {
                c.boundary()
                    .into_iter()
                    .map(|(f, sign)| {
                        x.index_of(&f).map(|k| (k, sign)).ok_or_else(|| {
                            Error::NotFaceClosed(format!("{f:?} ⊂ {c:?} is missing"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let ranges = (0..x.dim().map_or(0, |d| d + 1))
            .map(|d| x.dim_range(d))
            .collect();
        Ok(Incidence { faces, ranges })
    }

    /// Whether the cells selected by `keep` (all when `None`), assumed
    /// face-closed, have vanishing reduced homology.
    ///
    /// Ranks are computed from the top dimension down, stopping at the first
    /// degree with nonzero homology.
    pub(crate) fn is_acyclic_within(
        &self,
        keep: Option<&[bool]>,
        field: FieldTag,
        scratch: &mut Scratch,
    ) -> bool {
        let Scratch {
            local,
            dims,
            ints,
            bits,
        } = scratch;
        local.clear();
        local.resize(self.faces.len(), usize::MAX);
        dims.clear();
        for range in &self.ranges {
            let mut count = 0;
            for k in range.clone() {
                if keep.map_or(true, |mask| mask[k]) {
                    local[k] = count;
                    count += 1;
                }
            }
            dims.push(count);
        }
        while dims.last() == Some(&0) {
            dims.pop();
        }
        if dims.is_empty() {
            return true;
        }
        let euler: isize = dims
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as isize } else { -(f as isize) })
            .sum();
        if euler != 1 {
            return false;
        }
        let mut upper = 0;
        for d in (1..dims.len()).rev() {
            let (rows, cols) = (dims[d - 1], dims[d]);
            let rank = match field {
                FieldTag::Rationals => {
                    ints.clear();
                    ints.resize(rows * cols, 0);
                    for k in self.ranges[d].clone() {
                        if local[k] != usize::MAX {
                            for &(f, sign) in &self.faces[k] {
                                ints[local[f] * cols + local[k]] = i64::from(sign);
                            }
                        }
                    }
                    rank::rank_flat_rational(ints, rows, cols)
                }
                FieldTag::Gf2 => {
                    let words = cols.div_ceil(64);
                    bits.clear();
                    bits.resize(rows * words, 0);
                    for k in self.ranges[d].clone() {
                        let c = local[k];
                        if c != usize::MAX {
                            for &(f, _) in &self.faces[k] {
                                bits[local[f] * words + c / 64] |= 1u64 << (c % 64);
                            }
                        }
                    }
                    rank::rank_flat_gf2(bits, rows, cols)
                }
            };
            if dims[d] != rank + upper {
                return false;
            }
            upper = rank;
        }
        // augmentation has rank one
        dims[0] == 1 + upper
    }

    pub(crate) fn faces(&self, k: usize) -> &[(usize, i8)] {
        &self.faces[k]
    }

    /// Chain complex of the cells selected by `keep` (all cells when `None`).
    pub(crate) fn chain_complex(
        &self,
        x: &PComplex,
        keep: Option<&[bool]>,
        field: FieldTag,
        reduced: bool,
    ) -> ChainComplex {
        let backend = field.backend();
        let top = x.dim().map_or(0, |d| d + 1);
        let mut dims = vec![0usize; top];
        let mut local = vec![usize::MAX; x.len()];
        for (k, c) in x.cells().iter().enumerate() {
            if keep.map_or(true, |mask| mask[k]) {
                let d = c.dim();
                local[k] = dims[d];
                dims[d] += 1;
            }
        }
        while dims.last() == Some(&0) {
            dims.pop();
        }
        let mut boundaries: Vec<SparseMatrix> = (0..dims.len())
            .map(|i| {
                if i == 0 {
                    SparseMatrix::new(usize::from(reduced), dims[0])
                } else {
                    SparseMatrix::new(dims[i - 1], dims[i])
                }
            })
            .collect();
        for (k, c) in x.cells().iter().enumerate() {
            if local[k] == usize::MAX {
                continue;
            }
            let d = c.dim();
            if d == 0 {
                if reduced {
                    boundaries[0].push(0, local[k], 1);
                }
                continue;
            }
            for &(f, sign) in &self.faces[k] {
                let v = backend.reduce(i64::from(sign));
                if v != 0 {
                    boundaries[d].push(local[f], local[k], v);
                }
            }
        }
        ChainComplex {
            field,
            reduced,
            dims,
            boundaries,
        }
    }
}

/// Cellular boundary matrices of `x`, checked to square to zero.
pub fn boundary_matrices(x: &PComplex, field: FieldTag, reduced: bool) -> Result<ChainComplex> {
    let inc = Incidence::new(x)?;
    let chain = inc.chain_complex(x, None, field, reduced);
    assert!(chain.squares_to_zero(), "boundary of a boundary is nonzero");
    Ok(chain)
}

/// Reduced homology dimensions `H̃_0, ..., H̃_dim` over `field`.
pub fn homology_ranks(x: &PComplex, field: FieldTag) -> Result<Vec<usize>> {
    if x.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(boundary_matrices(x, field, true)?.betti())
}

/// All reduced homology vanishes; the empty complex counts as acyclic.
pub fn is_acyclic(x: &PComplex, field: FieldTag) -> bool {
    if x.is_empty() {
        return true;
    }
    match Incidence::new(x) {
        Ok(inc) => inc.is_acyclic_within(None, field, &mut Scratch::default()),
        Err(_) => false,
    }
}

/// `Σ (-1)^i f_i`.
pub fn euler_characteristic(x: &PComplex) -> isize {
    x.f_vector()
        .iter()
        .enumerate()
        .map(|(i, &f)| if i % 2 == 0 { f as isize } else { -(f as isize) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Complex;
    use crate::homcomplex::{build_ohom, Cell, RestrictionSpec};
    use crate::monomial::Monomial;

    /// Closure of a single cell, labeled by the product label.
    fn closed_cell(parts: &[Vec<usize>], m: usize) -> PComplex {
        let top = Cell::from_lists(parts);
        let mut cells = vec![top.clone()];
        let mut k = 0;
        while k < cells.len() {
            for (f, _) in cells[k].boundary() {
                if !cells.contains(&f) {
                    cells.push(f);
                }
            }
            k += 1;
        }
        let labeled = cells
            .into_iter()
            .map(|c| {
                let l = c.product_label(m);
                (c, l)
            })
            .collect();
        PComplex::from_labeled_cells(parts.len(), m, labeled).unwrap()
    }

    fn square_boundary() -> PComplex {
        let square = closed_cell(&[vec![1, 2], vec![3, 4]], 4);
        let top = square.len() - 1;
        square.filter(|k| k != top)
    }

    #[test]
    fn segment_boundary_signs() {
        let seg = closed_cell(&[vec![1, 2]], 2);
        let chain = boundary_matrices(&seg, FieldTag::Rationals, false).unwrap();
        let mut values: Vec<i64> = chain.boundaries[1].entries.iter().map(|e| e.2).collect();
        values.sort();
        assert_eq!(values, vec![-1, 1]);
    }

    #[test]
    fn prism_has_five_facets() {
        let prism = closed_cell(&[vec![1, 2, 3], vec![3, 4]], 4);
        assert_eq!(prism.f_vector(), vec![6, 9, 5, 1]);
        for field in FieldTag::ALL {
            let chain = boundary_matrices(&prism, field, true).unwrap();
            assert!(chain.squares_to_zero());
            assert_eq!(chain.boundaries[3].entries.len(), 5);
        }
    }

    #[test]
    fn ranks_of_small_complexes() {
        let point = closed_cell(&[vec![1]], 1);
        assert_eq!(homology_ranks(&point, FieldTag::Rationals).unwrap(), vec![0]);

        let circle = square_boundary();
        for field in FieldTag::ALL {
            assert_eq!(homology_ranks(&circle, field).unwrap(), vec![0, 1]);
        }

        let square = closed_cell(&[vec![1, 2], vec![3, 4]], 4);
        for field in FieldTag::ALL {
            assert_eq!(homology_ranks(&square, field).unwrap(), vec![0, 0, 0]);
        }
        assert_eq!(
            homology_ranks(&PComplex::empty(1, 1), FieldTag::Gf2),
            Err(Error::EmptyComplex)
        );
    }

    #[test]
    fn acyclicity_examples() {
        let k = Complex::from_vertex_lists(4, &[vec![1, 2, 4], vec![3, 4]]).unwrap();
        let l = Complex::from_vertex_lists(5, &[vec![1, 2, 4], vec![1, 2, 5], vec![3, 4], vec![3, 5]])
            .unwrap();
        let sq = build_ohom(&k, &l, &RestrictionSpec::none()).unwrap();
        assert!(FieldTag::ALL.iter().all(|&f| is_acyclic(&sq, f)));

        let two = PComplex::from_labeled_cells(
            1,
            2,
            vec![
                (Cell::from_lists(&[vec![1]]), Monomial::variable(2, 1)),
                (Cell::from_lists(&[vec![2]]), Monomial::variable(2, 2)),
            ],
        )
        .unwrap();
        assert!(!is_acyclic(&two, FieldTag::Rationals));
        assert!(is_acyclic(&PComplex::empty(1, 1), FieldTag::Rationals));
    }

    #[test]
    fn missing_faces_are_rejected() {
        let square = closed_cell(&[vec![1, 2], vec![3, 4]], 4);
        let broken = square.filter(|k| k != 0);
        assert!(matches!(
            boundary_matrices(&broken, FieldTag::Rationals, true),
            Err(Error::NotFaceClosed(_))
        ));
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        for x in [
            closed_cell(&[vec![1, 2, 3], vec![3, 4]], 4),
            square_boundary(),
            closed_cell(&[vec![1, 2], vec![2, 3], vec![3, 4]], 4),
        ] {
            let betti = homology_ranks(&x, FieldTag::Rationals).unwrap();
            let alt: isize = betti
                .iter()
                .enumerate()
                .map(|(i, &b)| if i % 2 == 0 { b as isize } else { -(b as isize) })
                .sum();
            assert_eq!(euler_characteristic(&x), alt + 1);
        }
    }

    #[test]
    fn fast_acyclicity_matches_chain_complex() {
        let prism = closed_cell(&[vec![1, 2, 3], vec![2, 3, 4]], 4);
        let inc = Incidence::new(&prism).unwrap();
        let mut scratch = Scratch::default();
        // subcomplexes generated by the cells selected by the bits of `seed`
        for seed in 0u64..3000 {
            let mut keep = vec![false; prism.len()];
            let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
            for k in (0..prism.len()).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                if state % 5 == 0 || keep[k] {
                    keep[k] = true;
                    for &(f, _) in inc.faces(k) {
                        keep[f] = true;
                    }
                }
            }
            let sub = prism.filter(|k| keep[k]);
            for field in FieldTag::ALL {
                let expected = sub.is_empty()
                    || boundary_matrices(&sub, field, true)
                        .unwrap()
                        .betti()
                        .iter()
                        .all(|&b| b == 0);
                assert_eq!(inc.is_acyclic_within(Some(&keep), field, &mut scratch), expected);
            }
        }
    }
}
