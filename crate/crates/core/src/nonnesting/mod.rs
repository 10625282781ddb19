//! Nonnesting set partitions, their arc diagrams, and the ideals they restrict.

mod poset;
mod weights;

pub use poset::{build_poset, poset_leq, DiagramPoset};
pub use weights::{
    omega0_closed_form, utau_generator, weight_strategies, weight_strategy, weights,
    ohom_empty_cells, WeightStrategy, WeightTable,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::resolution::{ideal_generators, IdealGens};

/// Largest ground set accepted by the enumerations unless a caller raises it.
pub const DEFAULT_R_BOUND: usize = 10;

/// A set partition of `1..=r`; blocks sorted internally and by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    r: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks = blocks;
        let mut seen = vec![false; r + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v == 0 || v > r {
                    return Err(Error::InvalidPartition(format!("{v} is not in 1..={r}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("{v} appears twice")));
                }
            }
        }
        if let Some(v) = (1..=r).find(|&v| !seen[v]) {
            return Err(Error::InvalidPartition(format!("{v} is in no block")));
        }
        blocks.sort();
        Ok(Partition { r, blocks })
    }

    pub fn singletons(r: usize) -> Self {
        Partition {
            r,
            blocks: (1..=r).map(|v| vec![v]).collect(),
        }
    }

    pub fn single_block(r: usize) -> Self {
        Partition {
            r,
            blocks: if r == 0 { Vec::new() } else { vec![(1..=r).collect()] },
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// No two blocks nest: there are no `a < b < c < d` with `a, d` in one
    /// block, `b, c` in another, and no element of the first block strictly
    /// between `b` and `c`.
    pub fn is_nonnesting(&self) -> bool {
        for outer in &self.blocks {
            for inner in &self.blocks {
                if outer == inner {
                    continue;
                }
                for (x, &b) in inner.iter().enumerate() {
                    for &c in &inner[x + 1..] {
                        let gap_free = !outer.iter().any(|&e| b < e && e < c);
                        let below = outer.iter().any(|&a| a < b);
                        let above = outer.iter().any(|&d| d > c);
                        if gap_free && below && above {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Arcs between consecutive elements of each block.
    pub fn arc_diagram(&self) -> Result<ArcDiagram> {
        if !self.is_nonnesting() {
            return Err(Error::Nesting(self.to_string()));
        }
        let arcs = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect();
        ArcDiagram::new(self.r, arcs)
    }
}

impl fmt::Display for Partition {
    /// `1,4|2,5,6|3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `1,4|2,5,6|3`; `r` is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad element {v:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let r = blocks.iter().flatten().copied().max().unwrap_or(0);
        Partition::new(r, blocks)
    }
}

/// All set partitions of `1..=r`, via restricted growth strings.
pub fn all_partitions(r: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; r];
    fn go(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if pos == rgs.len() {
            let mut blocks = vec![Vec::new(); max];
            for (k, &b) in rgs.iter().enumerate() {
                blocks[b].push(k + 1);
            }
            out.push(Partition {
                r: rgs.len(),
                blocks,
            });
            return;
        }
        for b in 0..=max {
            rgs[pos] = b;
            go(pos + 1, max.max(b + 1), rgs, out);
        }
    }
    if r == 0 {
        return vec![Partition::singletons(0)];
    }
    go(0, 0, &mut rgs, &mut out);
    out
}

/// Nonnesting partitions of `1..=r`, in the order of their restricted growth strings.
pub fn enumerate_nonnesting(r: usize, bound: usize) -> Result<Vec<Partition>> {
    if r == 0 {
        return Err(Error::InvalidPartition("r must be at least 1".into()));
    }
    if r > bound {
        return Err(Error::BoundExceeded {
            what: "r",
            value: r,
            bound,
        });
    }
    Ok(all_partitions(r)
        .into_iter()
        .filter(Partition::is_nonnesting)
        .collect())
}

/// Arc diagrams whose arcs all have length at most two.
pub fn small_diagrams(r: usize, bound: usize) -> Result<Vec<ArcDiagram>> {
    Ok(enumerate_nonnesting(r, bound)?
        .iter()
        .map(|p| p.arc_diagram().expect("nonnesting"))
        .filter(ArcDiagram::is_small)
        .collect())
}

/// The arc diagram of a nonnesting partition: arcs `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ArcDiagramFile")]
pub struct ArcDiagram {
    r: usize,
    arcs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct ArcDiagramFile {
    r: usize,
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<ArcDiagramFile> for ArcDiagram {
    type Error = Error;

    fn try_from(file: ArcDiagramFile) -> Result<Self> {
        ArcDiagram::new(file.r, file.arcs)
    }
}

/// `(a, d)` lies weakly above `(b, c)`: `a ≤ b < c ≤ d`.
pub fn spans(outer: (usize, usize), inner: (usize, usize)) -> bool {
    outer.0 <= inner.0 && inner.1 <= outer.1
}

impl ArcDiagram {
    /// Validates that every vertex has at most one arc on each side and no
    /// arc spans another.
    pub fn new(r: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<(usize, usize)> = arcs
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        for &(a, b) in &arcs {
            if a == 0 || b > r || a == b {
                return Err(Error::InvalidPartition(format!("bad arc ({a},{b}) on 1..={r}")));
            }
        }
        for (x, &e) in arcs.iter().enumerate() {
            for &f in &arcs[x + 1..] {
                if spans(e, f) || spans(f, e) {
                    return Err(Error::Nesting(format!("arcs {e:?} and {f:?}")));
                }
            }
        }
        Ok(ArcDiagram { r, arcs })
    }

    pub fn empty(r: usize) -> Self {
        ArcDiagram {
            r,
            arcs: Vec::new(),
        }
    }

    pub fn full_path(r: usize) -> Self {
        ArcDiagram {
            r,
            arcs: (1..r).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// The partition whose consecutive-element arcs are these.
    pub fn partition(&self) -> Partition {
        let mut next = vec![0usize; self.r + 1];
        let mut has_left = vec![false; self.r + 1];
        for &(a, b) in &self.arcs {
            next[a] = b;
            has_left[b] = true;
        }
        let blocks = (1..=self.r)
            .filter(|&v| !has_left[v])
            .map(|start| {
                let mut block = vec![start];
                while next[*block.last().unwrap()] != 0 {
                    block.push(next[*block.last().unwrap()]);
                }
                block
            })
            .collect();
        Partition::new(self.r, blocks).expect("arcs form paths")
    }

    /// Canonical string: the partition in `1,4|2,5,6|3` form.
    pub fn key(&self) -> String {
        self.partition().to_string()
    }

    /// Every arc has length at most two.
    pub fn is_small(&self) -> bool {
        self.arcs.iter().all(|&(a, b)| b - a <= 2)
    }

    /// The diagram as a graph with all `r` vertices.
    pub fn as_complex(&self) -> Result<Complex> {
        Complex::graph(self.r, &self.arcs)
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Deletes arcs spanning other arcs until none does, choosing which deletable
/// arc goes next with `pick` (an index into the current candidates).
pub fn reduce_graph_by(
    r: usize,
    edges: &[(usize, usize)],
    mut pick: impl FnMut(&[(usize, usize)]) -> usize,
) -> Result<ArcDiagram> {
    let mut current: BTreeSet<(usize, usize)> =
        edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    loop {
        let candidates: Vec<(usize, usize)> = current
            .iter()
            .copied()
            .filter(|&e| current.iter().any(|&f| f != e && spans(e, f)))
            .collect();
        if candidates.is_empty() {
            return ArcDiagram::new(r, current.into_iter().collect());
        }
        let k = pick(&candidates).min(candidates.len() - 1);
        current.remove(&candidates[k]);
    }
}

/// The reduced graph of `edges`: the unique arc diagram contained in it with
/// the same ordered homomorphisms into every complete graph.
pub fn reduce_graph(r: usize, edges: &[(usize, usize)]) -> Result<ArcDiagram> {
    reduce_graph_by(r, edges, |_| 0)
}

/// `I_P(n) = I_{G_P, K_n, ord}`.
pub fn nonnesting_ideal(p: &Partition, n: usize) -> Result<IdealGens> {
    let g = p.arc_diagram()?.as_complex()?;
    Ok(ideal_generators(&g, &Complex::complete_graph(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn nesting_examples() {
        assert!(part("1,4|2,5,6|3").is_nonnesting());
        assert!(!part("1,3,5|2,6|4").is_nonnesting());
        assert!(Partition::singletons(5).is_nonnesting());
        assert!(part("1,3,5|2,4").is_nonnesting());
    }

    #[test]
    fn partition_strings() {
        let p = part("3|2,5,6|4,1");
        assert_eq!(p.to_string(), "1,4|2,5,6|3");
        assert!("1,2|2".parse::<Partition>().is_err());
        assert!("1,x".parse::<Partition>().is_err());
        assert!("1|3".parse::<Partition>().is_err());
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|r| enumerate_nonnesting(r, DEFAULT_R_BOUND).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42]);
        assert!(matches!(
            enumerate_nonnesting(11, DEFAULT_R_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn arc_diagram_examples() {
        assert_eq!(
            part("1,3,5|2,4,6").arc_diagram().unwrap().arcs(),
            &[(1, 3), (2, 4), (3, 5), (4, 6)]
        );
        assert!(Partition::singletons(4).arc_diagram().unwrap().arcs().is_empty());
        assert_eq!(
            part("1,4|2,5,6|3").arc_diagram().unwrap().arcs(),
            &[(1, 4), (2, 5), (5, 6)]
        );
        assert!(matches!(part("1,3,5|2,6|4").arc_diagram(), Err(Error::Nesting(_))));
        let d = part("1,4|2,5,6|3").arc_diagram().unwrap();
        assert_eq!(d.partition(), part("1,4|2,5,6|3"));
        assert_eq!(d.key(), "1,4|2,5,6|3");
    }

    #[test]
    fn arc_diagram_json() {
        let d = part("1,3|2").arc_diagram().unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"r":3,"arcs":[[1,3]]}"#);
        assert_eq!(serde_json::from_str::<ArcDiagram>(&json).unwrap(), d);
        assert!(serde_json::from_str::<ArcDiagram>(r#"{"r":4,"arcs":[[1,4],[2,3]]}"#).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_graph(4, &[(1, 4), (2, 3)]).unwrap().arcs(), &[(2, 3)]);
        assert_eq!(reduce_graph(3, &[(1, 2), (1, 3)]).unwrap().arcs(), &[(1, 2)]);
        let d = part("1,4|2,5,6|3").arc_diagram().unwrap();
        assert_eq!(reduce_graph(6, d.arcs()).unwrap(), d);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|r| small_diagrams(r, DEFAULT_R_BOUND).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 13, 34]);
    }

    #[test]
    fn ideal_examples() {
        let m2 = nonnesting_ideal(&Partition::singletons(2), 2).unwrap();
        assert_eq!(m2.gens.len(), 3);
        let squarefree = nonnesting_ideal(&Partition::single_block(2), 3).unwrap();
        assert!(squarefree.gens.iter().all(|g| g.exponents().iter().all(|&e| e <= 1)));
        assert_eq!(squarefree.gens.len(), 3);
        let one = nonnesting_ideal(&part("1,2|3"), 2).unwrap();
        assert_eq!(one.gens, vec![Monomial::new(vec![1, 2])]);
    }
}
