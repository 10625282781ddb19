mod common;

use std::cmp::Ordering;

use common::*;
use ohom_core::{Complex, Monomial, VertexSet};
use proptest::prelude::*;

fn arb_complex(max_n: usize) -> impl Strategy<Value = Complex> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1u64 << n), 0..5)
            .prop_map(move |masks| Complex::new(n, masks.into_iter().map(VertexSet::from_bits)).unwrap())
    })
}

#[test]
fn faces_are_closed_under_subsets() {
    for n in 1..=5 {
        for h in all_complexes(n) {
            let faces = h.faces();
            let mut sorted = faces.to_vec();
            sorted.sort();
            assert_eq!(sorted, brute_faces(&h));
            for &f in faces {
                assert!(f.subsets().all(|s| h.is_face(s)));
            }
        }
    }
}

#[test]
fn six_vertex_faces_match_the_bitmaps() {
    for bitmap in downsets(6).into_iter().step_by(997) {
        let h = complex_from_bitmap(6, bitmap);
        let listed: Vec<VertexSet> = (0..64u64)
            .filter(|&s| bitmap & (1 << s) != 0)
            .map(VertexSet::from_bits)
            .collect();
        let mut faces = h.faces().to_vec();
        faces.sort();
        let mut listed = listed;
        listed.sort();
        assert_eq!(faces, listed);
    }
}

#[test]
fn void_and_irrelevant_differ() {
    let void = Complex::void(3);
    let irrelevant = Complex::irrelevant(3);
    assert_ne!(void, irrelevant);
    assert_eq!(void.dim(), None);
    assert_eq!(irrelevant.dim(), Some(-1));
    assert!(void.faces().is_empty());
    assert_eq!(irrelevant.faces(), &[VertexSet::EMPTY]);
}

#[test]
fn json_round_trip() {
    let h = equivalence_complex();
    let json = serde_json::to_string(&h).unwrap();
    let back: Complex = serde_json::from_str(&json).unwrap();
    assert_eq!(back, h);
    assert!(serde_json::from_str::<Complex>(r#"{"n":2,"facets":[[1,3]]}"#).is_err());
}

fn degree_three_monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for e in 0..4u32.pow(4) {
        let exps: Vec<u32> = (0..4).map(|j| (e / 4u32.pow(j)) % 4).collect();
        if exps.iter().sum::<u32>() == 3 {
            out.push(Monomial::new(exps));
        }
    }
    out
}

#[test]
fn revlex_sorts_degree_three_by_last_exponent_first() {
    let mut all = degree_three_monomials();
    all.sort_by(|a, b| a.revlex_cmp(b).unwrap());
    assert_eq!(all.len(), 20);
    assert_eq!(all.first().unwrap().exponents(), &[0, 0, 0, 3]);
    assert_eq!(all.last().unwrap().exponents(), &[3, 0, 0, 0]);
}

proptest! {
    #[test]
    fn link_composition(h in arb_complex(6), pick in any::<prop::sample::Index>(), pick2 in any::<prop::sample::Index>()) {
        let faces = h.faces();
        prop_assume!(!faces.is_empty());
        let sigma = faces[pick.index(faces.len())];
        let lk = h.link(sigma).unwrap();
        let tau = lk.faces()[pick2.index(lk.faces().len())];
        prop_assert_eq!(lk.link(tau).unwrap(), h.link(sigma.union(tau)).unwrap());
    }

    #[test]
    fn right_link_inside_link(h in arb_complex(6)) {
        for v in h.vertices().iter() {
            let s = VertexSet::singleton(v);
            prop_assert!(h.rlk(s).unwrap().is_subcomplex_of(&h.link(s).unwrap()));
        }
    }

    #[test]
    fn revlex_is_a_total_order(
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
    ) {
        let all = degree_three_monomials();
        let (a, b, c) = (&all[a.index(all.len())], &all[b.index(all.len())], &all[c.index(all.len())]);
        let ab = a.revlex_cmp(b).unwrap();
        prop_assert_eq!(ab.reverse(), b.revlex_cmp(a).unwrap());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && b.revlex_cmp(c).unwrap() != Ordering::Greater {
            prop_assert_ne!(a.revlex_cmp(c).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn relabel_by_inverse_restores(h in arb_complex(6), seed in any::<u64>()) {
        let n = h.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13; state ^= state >> 7; state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut inverse = vec![0; n];
        for (k, &v) in perm.iter().enumerate() {
            inverse[v - 1] = k + 1;
        }
        let there = h.relabel(&perm).unwrap();
        prop_assert_eq!(there.f_vector(), h.f_vector());
        prop_assert_eq!(there.relabel(&inverse).unwrap(), h);
    }
}
