use std::collections::HashMap;

use serde::Serialize;

use super::{enumerate_nonnesting, spans, ArcDiagram};
use crate::error::{Error, Result};

/// `P ≤ Q` iff every arc of `Q` lies weakly above some arc of `P`.
pub fn poset_leq(p: &ArcDiagram, q: &ArcDiagram) -> Result<bool> {
    if p.r() != q.r() {
        return Err(Error::Precondition(format!(
            "diagrams on {} and {} points",
            p.r(),
            q.r()
        )));
    }
    Ok(q
        .arcs()
        .iter()
        .all(|&outer| p.arcs().iter().any(|&inner| spans(outer, inner))))
}

/// The diagram poset on `1..=r` with its order relation and Möbius function.
///
/// Elements are listed in a linear extension: by down-set size, then key.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramPoset {
    pub r: usize,
    pub elements: Vec<ArcDiagram>,
    leq: Vec<Vec<bool>>,
    mobius: Vec<Vec<i64>>,
    #[serde(skip)]
    index: HashMap<ArcDiagram, usize>,
}

pub fn build_poset(r: usize, bound: usize) -> Result<DiagramPoset> {
    let diagrams: Vec<ArcDiagram> = enumerate_nonnesting(r, bound)?
        .iter()
        .map(|p| p.arc_diagram().expect("nonnesting"))
        .collect();
    let raw: Vec<Vec<bool>> = diagrams
        .iter()
        .map(|p| diagrams.iter().map(|q| poset_leq(p, q).unwrap()).collect())
        .collect();
    let below: Vec<usize> = (0..diagrams.len())
        .map(|q| (0..diagrams.len()).filter(|&p| raw[p][q]).count())
        .collect();
    let mut order: Vec<usize> = (0..diagrams.len()).collect();
    order.sort_by_key(|&k| (below[k], diagrams[k].key()));
    let elements: Vec<ArcDiagram> = order.iter().map(|&k| diagrams[k].clone()).collect();
    let leq: Vec<Vec<bool>> = order
        .iter()
        .map(|&a| order.iter().map(|&b| raw[a][b]).collect())
        .collect();
    let size = elements.len();
    let mut mobius = vec![vec![0i64; size]; size];
    for x in 0..size {
        mobius[x][x] = 1;
        for y in x + 1..size {
            if leq[x][y] {
                mobius[x][y] = -(x..y).filter(|&z| leq[x][z] && leq[z][y]).map(|z| mobius[x][z]).sum::<i64>();
            }
        }
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(k, d)| (d.clone(), k))
        .collect();
    Ok(DiagramPoset {
        r,
        elements,
        leq,
        mobius,
        index,
    })
}

impl DiagramPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, d: &ArcDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// `μ(a, b)`, zero when `a ≰ b`.
    pub fn mobius(&self, a: usize, b: usize) -> i64 {
        self.mobius[a][b]
    }

    /// Elements below every other element.
    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.leq[b][a] || a == b))
            .collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.leq[a][b] || a == b))
            .collect()
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b
                    && self.leq[a][b]
                    && !(0..self.len()).any(|z| z != a && z != b && self.leq[a][z] && self.leq[z][b])
                {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonnesting::DEFAULT_R_BOUND;

    fn diagram(r: usize, arcs: &[(usize, usize)]) -> ArcDiagram {
        ArcDiagram::new(r, arcs.to_vec()).unwrap()
    }

    #[test]
    fn extremes() {
        for r in 1..=5 {
            let poset = build_poset(r, DEFAULT_R_BOUND).unwrap();
            let bottom = poset.index_of(&ArcDiagram::full_path(r)).unwrap();
            let top = poset.index_of(&ArcDiagram::empty(r)).unwrap();
            assert_eq!(poset.minima(), vec![bottom]);
            assert_eq!(poset.maxima(), vec![top]);
        }
    }

    #[test]
    fn small_posets() {
        let p1 = build_poset(1, DEFAULT_R_BOUND).unwrap();
        assert_eq!(p1.len(), 1);
        let p2 = build_poset(2, DEFAULT_R_BOUND).unwrap();
        assert_eq!(p2.len(), 2);
        assert_eq!(p2.mobius(0, 1), -1);
        let p3 = build_poset(3, DEFAULT_R_BOUND).unwrap();
        assert_eq!(p3.len(), 5);
        let a = diagram(3, &[(1, 2)]);
        let b = diagram(3, &[(2, 3)]);
        assert!(!poset_leq(&a, &b).unwrap() && !poset_leq(&b, &a).unwrap());
        assert!(poset_leq(&a, &ArcDiagram::empty(2)).is_err());
    }

    #[test]
    fn mobius_sums_vanish() {
        let poset = build_poset(4, DEFAULT_R_BOUND).unwrap();
        for x in 0..poset.len() {
            for y in 0..poset.len() {
                if x != y && poset.leq(x, y) {
                    let s: i64 = (0..poset.len())
                        .filter(|&z| poset.leq(x, z) && poset.leq(z, y))
                        .map(|z| poset.mobius(x, z))
                        .sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }
}
