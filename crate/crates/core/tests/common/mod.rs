//! Random instances and brute-force reference implementations shared by the
//! integration tests. Nothing here calls into the algorithms under test
//! except to read back the raw points of a representation.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use hcseq::{Elem, ExtNat, ExtVec, Lattice, NatVec, Rep};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random lattice with at most `max_size` elements: the closure system
/// generated by a few random subsets of a small ground set, ordered by
/// inclusion.
pub fn random_lattice<R: Rng>(rng: &mut R, max_size: usize) -> Lattice {
    loop {
        let ground = rng.gen_range(1..=4u32);
        let full = (1u32 << ground) - 1;
        let mut sets: BTreeSet<u32> = BTreeSet::from([full]);
        for _ in 0..rng.gen_range(0..=4) {
            sets.insert(rng.gen_range(0..=full));
        }
        // close under intersection
        loop {
            let pairs: Vec<u32> = sets
                .iter()
                .flat_map(|a| sets.iter().map(move |b| a & b))
                .filter(|s| !sets.contains(s))
                .collect();
            if pairs.is_empty() {
                break;
            }
            sets.extend(pairs);
        }
        if sets.len() > max_size {
            continue;
        }
        let sets: Vec<u32> = sets.into_iter().collect();
        let names = sets.iter().map(|s| format!("s{s:b}")).collect();
        let leq = sets
            .iter()
            .map(|a| sets.iter().map(|b| a & b == *a).collect())
            .collect();
        return Lattice::from_leq(names, leq).expect("closure systems are lattices");
    }
}

pub fn random_rep<R: Rng>(
    rng: &mut R,
    lattice: Arc<Lattice>,
    dim: usize,
    max_coord: u64,
    max_points: usize,
) -> Rep {
    let n = rng.gen_range(0..=max_points);
    let points: Vec<(NatVec, Elem)> = (0..n)
        .map(|_| {
            let v = (0..dim).map(|_| rng.gen_range(0..=max_coord)).collect();
            (NatVec::new(v), Elem(rng.gen_range(0..lattice.size())))
        })
        .collect();
    Rep::new(lattice, dim, points).expect("random points are valid")
}

pub fn random_ext_vec<R: Rng>(rng: &mut R, dim: usize, max_coord: u64) -> ExtVec {
    ExtVec::new(
        (0..dim)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    ExtNat::Inf
                } else {
                    ExtNat::Fin(rng.gen_range(0..=max_coord))
                }
            })
            .collect(),
    )
}

pub fn random_nat_vec<R: Rng>(rng: &mut R, dim: usize, max_coord: u64) -> NatVec {
    NatVec::new((0..dim).map(|_| rng.gen_range(0..=max_coord)).collect())
}

pub fn pick<R: Rng, T: Clone>(rng: &mut R, items: &[T]) -> T {
    items.choose(rng).expect("non-empty").clone()
}

/// Raw points of a representation as plain vectors.
pub fn raw(g: &Rep) -> Vec<(Vec<u64>, Elem)> {
    g.points().map(|(v, e)| (v.coords().to_vec(), e)).collect()
}

pub fn le(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `⋀{γ : (c, γ) ∈ G, c ≤ x}` straight from the definition.
pub fn f_brute(l: &Lattice, points: &[(Vec<u64>, Elem)], x: &[u64]) -> Elem {
    points
        .iter()
        .filter(|(c, _)| le(c, x))
        .fold(l.top(), |acc, (_, g)| l.meet(acc, *g))
}

/// Box side beyond which nothing changes.
pub fn bound(points: &[(Vec<u64>, Elem)]) -> u64 {
    points
        .iter()
        .flat_map(|(c, _)| c.iter().copied())
        .max()
        .unwrap_or(0)
        + 2
}

/// Every vector of `[0, side]^dim`.
pub fn box_points(dim: usize, side: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=side).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Extension from its definition: meet of `F` over finite vectors below
/// `x`, truncated to a box that already contains every change of `F`.
pub fn f_ext_brute(l: &Lattice, points: &[(Vec<u64>, Elem)], x: &ExtVec) -> Elem {
    let side = bound(points);
    box_points(x.dim(), side)
        .into_iter()
        .filter(|b| {
            b.iter().zip(x.coords()).all(|(bi, xi)| match xi {
                ExtNat::Inf => true,
                ExtNat::Fin(n) => bi <= n,
            })
        })
        .fold(l.top(), |acc, b| l.meet(acc, f_brute(l, points, &b)))
}

/// Minimal elements of a finite set by pairwise comparison.
pub fn minimal_brute(set: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    set.iter()
        .filter(|x| !set.iter().any(|y| y != *x && le(y, x)))
        .cloned()
        .collect()
}

pub fn ext_le(a: &ExtVec, b: &ExtVec) -> bool {
    a.coords().iter().zip(b.coords()).all(|(x, y)| x <= y)
}

/// Maximal elements of the complement of the upset generated by `gens`,
/// found by scanning a box one larger than every generator; a coordinate at
/// the box edge stands for `∞`.
pub fn complement_maxima_brute(dim: usize, gens: &[Vec<u64>]) -> BTreeSet<ExtVec> {
    let side = gens
        .iter()
        .flat_map(|g| g.iter().copied())
        .max()
        .unwrap_or(0)
        + 1;
    let outside: Vec<Vec<u64>> = box_points(dim, side)
        .into_iter()
        .filter(|x| !gens.iter().any(|g| le(g, x)))
        .collect();
    outside
        .iter()
        .filter(|x| !outside.iter().any(|y| y != *x && le(x, y)))
        .map(|x| {
            ExtVec::new(
                x.iter()
                    .map(|&c| {
                        if c == side {
                            ExtNat::Inf
                        } else {
                            ExtNat::Fin(c)
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

pub fn add(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn unit(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Join distributivity checked pointwise over a box.
pub fn hc7_brute(l: &Lattice, points: &[(Vec<u64>, Elem)]) -> bool {
    let m = l.size();
    let side = bound(points);
    let f = |x: &[u64]| f_brute(l, points, x);
    box_points(m, side).iter().all(|x| {
        l.elements().all(|i| {
            l.elements().all(|j| {
                let k = l.join(i, j);
                let lhs = f(&add(x, &unit(m, k.index())));
                let rhs = l.join(
                    f(&add(x, &unit(m, i.index()))),
                    f(&add(x, &unit(m, j.index()))),
                );
                lhs == rhs
            })
        })
    })
}

/// Adds an `ExtVec` and a finite vector with `∞` absorbing.
pub fn ext_add(x: &ExtVec, a: &NatVec) -> ExtVec {
    ExtVec::new(
        x.coords()
            .iter()
            .zip(a.coords())
            .map(|(c, &k)| match c {
                ExtNat::Inf => ExtNat::Inf,
                ExtNat::Fin(n) => ExtNat::Fin(n + k),
            })
            .collect(),
    )
}
