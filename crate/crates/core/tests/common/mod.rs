//! Brute-force generators and oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use ohom_core::{Complex, Monomial, RestrictionSpec, VertexSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every downward-closed family of subsets of `[n]`, as a bitmap over the
/// `2^n` subsets (bit `s` set iff subset `s` is a face). Includes the void
/// family and `{∅}`.
pub fn downsets(n: usize) -> Vec<u64> {
    assert!(n <= 6);
    let total = 1usize << n;
    let mut out = Vec::new();
    // subsets of s have smaller masks, so deciding in mask order sees them first
    fn go(s: usize, total: usize, n: usize, faces: u64, out: &mut Vec<u64>) {
        if s == total {
            out.push(faces);
            return;
        }
        go(s + 1, total, n, faces, out);
        let closed = (0..n)
            .filter(|&v| s & (1 << v) != 0)
            .all(|v| faces & (1u64 << (s & !(1 << v))) != 0);
        if closed {
            go(s + 1, total, n, faces | (1u64 << s), out);
        }
    }
    go(0, total, n, 0, &mut out);
    out
}

/// Inclusion-maximal members of a downset bitmap.
pub fn facets_of(n: usize, faces: u64) -> Vec<VertexSet> {
    (0..1usize << n)
        .filter(|&s| faces & (1u64 << s) != 0)
        .filter(|&s| (0..n).all(|v| s & (1 << v) != 0 || faces & (1u64 << (s | 1 << v)) == 0))
        .map(|s| VertexSet::from_bits(s as u64))
        .collect()
}

pub fn complex_from_bitmap(n: usize, faces: u64) -> Complex {
    Complex::new(n, facets_of(n, faces)).unwrap()
}

/// All complexes on `[n]` (labeled), including void and `{∅}`.
pub fn all_complexes(n: usize) -> Vec<Complex> {
    downsets(n)
        .into_iter()
        .map(|f| complex_from_bitmap(n, f))
        .collect()
}

/// Complexes on `[n]`, `1 ≤ n ≤ max_n`, in which every element of `[n]` is a vertex.
pub fn complexes_with_all_vertices(max_n: usize) -> Vec<Complex> {
    (1..=max_n)
        .flat_map(|n| {
            downsets(n)
                .into_iter()
                .filter(move |&f| (0..n).all(|v| f & (1u64 << (1usize << v)) != 0))
                .map(move |f| complex_from_bitmap(n, f))
        })
        .collect()
}

/// The faces of a complex, listed from its facets without the library's face cache.
pub fn brute_faces(h: &Complex) -> Vec<VertexSet> {
    let mut faces: Vec<VertexSet> = h
        .facets()
        .iter()
        .flat_map(|f| f.subsets())
        .collect();
    faces.sort();
    faces.dedup();
    faces
}

/// Direct cointerval test following the inductive definition over face lists.
pub fn brute_is_cointerval(n: usize, faces: &[VertexSet]) -> bool {
    if faces.is_empty() || faces.iter().all(|f| f.is_empty()) {
        return true;
    }
    let vertices: Vec<usize> = (1..=n).filter(|&v| faces.contains(&VertexSet::singleton(v))).collect();
    let rlk = |v: usize| -> Vec<VertexSet> {
        faces
            .iter()
            .filter(|f| f.contains(v) && f.iter().all(|u| u >= v))
            .map(|f| f.without(v))
            .collect()
    };
    for w in vertices.windows(2) {
        let (lo, hi) = (rlk(w[0]), rlk(w[1]));
        if hi.iter().any(|f| !lo.contains(f)) {
            return false;
        }
    }
    vertices.iter().all(|&v| brute_is_cointerval(n, &rlk(v)))
}

/// A random shifted complex on `[n]`: the shift-closure of a few random sets.
pub fn random_shifted(n: usize, rng: &mut ChaCha8Rng) -> Complex {
    let generators: Vec<VertexSet> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            let mut s = VertexSet::EMPTY;
            while s.len() < size {
                s.insert(rng.gen_range(1..=n));
            }
            s
        })
        .collect();
    // s is in the shift-closure of g iff it is componentwise below the top |s| elements of g
    let facets = VertexSet::full(n).subsets().filter(|s| {
        generators.iter().any(|g| {
            s.len() <= g.len() && {
                let (a, b) = (s.to_vec(), g.to_vec());
                a.iter().zip(&b[b.len() - a.len()..]).all(|(x, y)| x <= y)
            }
        })
    });
    Complex::new(n, facets).unwrap()
}

/// A random restriction: each variable capped with probability 1/2, and a
/// random revlex floor with probability 1/2.
pub fn random_spec(n: usize, m: usize, rng: &mut ChaCha8Rng) -> RestrictionSpec {
    let mut spec = RestrictionSpec::none();
    if rng.gen_bool(0.5) {
        spec = spec.with_alpha(
            (0..m)
                .map(|_| rng.gen_bool(0.5).then(|| rng.gen_range(1..=n as u32)))
                .collect(),
        );
    }
    if rng.gen_bool(0.5) {
        spec = spec.with_beta(Monomial::from_indices(m, (0..n).map(|_| rng.gen_range(1..=m))));
    }
    spec
}

/// The four-vertex reading of the first worked example and its target.
pub fn square_pair() -> (Complex, Complex) {
    let k = Complex::from_vertex_lists(4, &[vec![1, 2, 4], vec![3, 4]]).unwrap();
    let l = Complex::from_vertex_lists(5, &[vec![1, 2, 4], vec![1, 2, 5], vec![3, 4], vec![3, 5]])
        .unwrap();
    (k, l)
}

/// The complex whose facets are `{2,5,6}` and `{1,a,b}` for `a, b ∈ {3,4,5,6}`.
pub fn equivalence_complex() -> Complex {
    let mut facets = vec![vec![2, 5, 6]];
    for a in 3..=6 {
        for b in a + 1..=6 {
            facets.push(vec![1, a, b]);
        }
    }
    Complex::from_vertex_lists(6, &facets).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(r: u64) -> u64 {
    binomial(2 * r, r - 1) / r
}

/// Fibonacci numbers with `F_0 = F_1 = 1`.
pub fn fibonacci(k: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

fn brute_is_face(h: &Complex, s: VertexSet) -> bool {
    h.facets().iter().any(|f| s.is_subset(*f))
}

/// Whether `phi` (1-based values, `phi[i-1]` the image of `i`) is weakly
/// increasing and maps every face of `g` to a face of `h` of the same size.
pub fn brute_is_hom(g: &Complex, h: &Complex, phi: &[usize]) -> bool {
    phi.windows(2).all(|w| w[0] <= w[1])
        && brute_faces(g).iter().all(|sigma| {
            let image: VertexSet = sigma.iter().map(|i| phi[i - 1]).collect();
            image.len() == sigma.len() && brute_is_face(h, image)
        })
}

/// All ordered homomorphisms `g → h` by trying every map `[n] → [m]`.
pub fn brute_homs(g: &Complex, h: &Complex) -> Vec<Vec<usize>> {
    let (n, m) = (g.n(), h.n());
    let mut out = Vec::new();
    let mut phi = vec![1usize; n];
    loop {
        if brute_is_hom(g, h, &phi) {
            out.push(phi.clone());
        }
        let Some(pos) = (0..n).rev().find(|&i| phi[i] < m) else {
            return out;
        };
        phi[pos] += 1;
        for v in phi.iter_mut().skip(pos + 1) {
            *v = 1;
        }
    }
}

/// Every selection `ψ(i) ∈ parts[i]`.
pub fn selections(parts: &[VertexSet]) -> Vec<Vec<usize>> {
    parts.iter().fold(vec![Vec::new()], |acc, part| {
        acc.into_iter()
            .flat_map(|prefix| {
                part.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

/// Cells of `ohom(g, h)`: tuples of nonempty subsets of `[m]` all of whose
/// selections are ordered homomorphisms.
pub fn brute_cells(g: &Complex, h: &Complex) -> Vec<Vec<VertexSet>> {
    let homs = brute_homs(g, h);
    let n = g.n();
    // each part must consist of values some homomorphism takes at that index
    let reach: Vec<VertexSet> = (0..n)
        .map(|i| homs.iter().map(|phi| phi[i]).collect())
        .collect();
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(n);
    fn go(
        i: usize,
        reach: &[VertexSet],
        homs: &HashSet<Vec<usize>>,
        parts: &mut Vec<VertexSet>,
        out: &mut Vec<Vec<VertexSet>>,
    ) {
        if i == reach.len() {
            if selections(parts).iter().all(|s| homs.contains(s)) {
                out.push(parts.clone());
            }
            return;
        }
        for part in reach[i].subsets().filter(|p| !p.is_empty()) {
            parts.push(part);
            go(i + 1, reach, homs, parts, out);
            parts.pop();
        }
    }
    let homs: HashSet<Vec<usize>> = homs.into_iter().collect();
    go(0, &reach, &homs, &mut parts, &mut out);
    out
}

pub fn brute_f_vector(cells: &[Vec<VertexSet>]) -> Vec<usize> {
    let mut f = Vec::new();
    for c in cells {
        let d: usize = c.iter().map(|p| p.len() - 1).sum();
        if f.len() <= d {
            f.resize(d + 1, 0);
        }
        f[d] += 1;
    }
    f
}

/// `∏ x_{φ(i)}` as an exponent vector.
pub fn hom_exponents(phi: &[usize], m: usize) -> Vec<u32> {
    let mut e = vec![0; m];
    for &v in phi {
        e[v - 1] += 1;
    }
    e
}
