use std::collections::{BTreeMap, HashMap};

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use super::{build_poset, reduce_graph, ArcDiagram, DiagramPoset};
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::homcomplex::{Cell, RestrictionSpec};
use crate::resolution::betti_numbers;
use crate::vertex_set::VertexSet;

/// Cells of `ohom(G_e, K_n)` for the edgeless graph on `r` points: tuples of
/// nonempty subsets of `1..=n` with `max τ_i ≤ min τ_{i+1}`.
pub fn ohom_empty_cells(r: usize, n: usize) -> Vec<Cell> {
    fn go(r: usize, n: usize, floor: usize, prefix: &mut Vec<VertexSet>, out: &mut Vec<Cell>) {
        if prefix.len() == r {
            out.push(Cell::new(prefix.clone()));
            return;
        }
        for part in VertexSet::range(floor, n).subsets() {
            if part.is_empty() {
                continue;
            }
            let top = part.max_vertex().unwrap();
            prefix.push(part);
            go(r, n, top, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(r, n, 1, &mut Vec::with_capacity(r), &mut out);
    }
    out.sort();
    out
}

/// The generator of `U(τ)`: the reduced graph of all arcs `{i < j}` with
/// `max τ_i < min τ_j`.
pub fn utau_generator(tau: &Cell) -> Result<ArcDiagram> {
    let parts = tau.parts();
    if parts.iter().any(|p| p.is_empty())
        || parts
            .windows(2)
            .any(|w| w[0].max_vertex() > w[1].min_vertex())
    {
        return Err(Error::InvalidCell(format!("{tau:?} is not order preserving")));
    }
    let r = parts.len();
    let mut arcs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if parts[i].max_vertex() < parts[j].min_vertex() {
                arcs.push((i + 1, j + 1));
            }
        }
    }
    reduce_graph(r, &arcs)
}

/// `ω_0(P, n)`: zero if some arc is not `{i, i+1}`, otherwise `C(n, ĉ)` where
/// `ĉ` counts the components of the full path with the arcs of `P` removed.
pub fn omega0_closed_form(p: &ArcDiagram, n: usize) -> u64 {
    if p.arcs().iter().any(|&(a, b)| b != a + 1) {
        return 0;
    }
    binomial(n as u64, 1 + p.arcs().len() as u64)
}

/// `ω_k(P, n)` for every diagram `P` on `1..=r`, keyed by `P.key()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    pub r: usize,
    pub n: usize,
    pub k: usize,
    pub method: &'static str,
    pub weights: BTreeMap<String, i64>,
}

impl WeightTable {
    pub fn get(&self, p: &ArcDiagram) -> i64 {
        self.weights.get(&p.key()).copied().unwrap_or(0)
    }
}

/// A way of computing weight tables.
pub trait WeightStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, r: usize, n: usize, k: usize, bound: usize) -> Result<WeightTable>;
}

/// Buckets the `k`-cells of `ohom(G_e, K_n)` by their generator.
struct Bucketing;

/// Möbius inversion of `β_k(I_Q(n)) = Σ_{P ≤ Q} ω_k(P, n)`.
struct Inversion;

fn check_n(n: usize, bound: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound,
        });
    }
    Ok(())
}

fn zero_table(poset: &DiagramPoset) -> BTreeMap<String, i64> {
    poset.elements.iter().map(|d| (d.key(), 0)).collect()
}

impl WeightStrategy for Bucketing {
    fn name(&self) -> &'static str {
        "bucket"
    }

    fn compute(&self, r: usize, n: usize, k: usize, bound: usize) -> Result<WeightTable> {
        check_n(n, bound)?;
        let poset = build_poset(r, bound)?;
        let cells: Vec<Cell> = ohom_empty_cells(r, n)
            .into_iter()
            .filter(|c| c.dim() == k)
            .collect();
        let counts: HashMap<ArcDiagram, i64> = cells
            .par_iter()
            .map(|c| utau_generator(c).expect("cell of ohom(G_e, K_n)"))
            .fold(HashMap::new, |mut acc, d| {
                *acc.entry(d).or_insert(0) += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (d, c) in b {
                    *a.entry(d).or_insert(0) += c;
                }
                a
            });
        let mut weights = zero_table(&poset);
        for (d, c) in counts {
            *weights.get_mut(&d.key()).expect("generator is a diagram") += c;
        }
        Ok(WeightTable {
            r,
            n,
            k,
            method: self.name(),
            weights,
        })
    }
}

impl WeightStrategy for Inversion {
    fn name(&self) -> &'static str {
        "inversion"
    }

    fn compute(&self, r: usize, n: usize, k: usize, bound: usize) -> Result<WeightTable> {
        check_n(n, bound)?;
        let poset = build_poset(r, bound)?;
        let target = Complex::complete_graph(n);
        let betti: Vec<i64> = poset
            .elements
            .par_iter()
            .map(|q| {
                let table = betti_numbers(&q.as_complex()?, &target, &RestrictionSpec::none(), false)?;
                Ok(table.betti.get(k).copied().unwrap_or(0) as i64)
            })
            .collect::<Result<_>>()?;
        let mut weights = zero_table(&poset);
        for (p, d) in poset.elements.iter().enumerate() {
            let w: i64 = (0..=p)
                .filter(|&q| poset.leq(q, p))
                .map(|q| poset.mobius(q, p) * betti[q])
                .sum();
            weights.insert(d.key(), w);
        }
        Ok(WeightTable {
            r,
            n,
            k,
            method: self.name(),
            weights,
        })
    }
}

/// All registered weight strategies.
pub fn weight_strategies() -> [&'static dyn WeightStrategy; 2] {
    [&Bucketing, &Inversion]
}

pub fn weight_strategy(name: &str) -> Option<&'static dyn WeightStrategy> {
    weight_strategies().into_iter().find(|s| s.name() == name)
}

/// `ω_k(P, n)` for all `P` by bucketing cells.
pub fn weights(r: usize, n: usize, k: usize, bound: usize) -> Result<WeightTable> {
    Bucketing.compute(r, n, k, bound)
}
