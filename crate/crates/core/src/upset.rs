//! Upward closed subsets of `N₀^d`, stored as their antichain of minimal
//! generators.
//!
//! By Dickson's lemma every upward closed set `U ⊆ N₀^d` equals `Min(U)↑`
//! with `Min(U)` finite, and two upsets are equal exactly when their minimal
//! generator sets are. Generators are kept sorted lexicographically, so the
//! derived `PartialEq` is set equality.

use crate::error::{Error, Result};
use crate::vectors::{ExtNat, ExtVec, NatVec};

/// Default bound on the number of grid points inspected by
/// [`UpSet::complement_maxima`].
pub const DEFAULT_GRID_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpSet {
    dim: usize,
    gens: Vec<NatVec>,
}

impl UpSet {
    /// The empty upset.
    pub fn empty(dim: usize) -> Self {
        UpSet {
            dim,
            gens: Vec::new(),
        }
    }

    /// All of `N₀^d`, generated by the zero vector.
    pub fn full(dim: usize) -> Self {
        UpSet {
            dim,
            gens: vec![NatVec::zeros(dim)],
        }
    }

    /// The upset generated by `points`, reduced to its minimal elements.
    pub fn from_points<I>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = NatVec>,
    {
        let points: Vec<NatVec> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(Self::from_points_unchecked(dim, points))
    }

    pub(crate) fn from_points_unchecked(dim: usize, points: Vec<NatVec>) -> Self {
        UpSet {
            dim,
            gens: minimal(points),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The minimal generators in lexicographic order.
    pub fn gens(&self) -> &[NatVec] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Membership of a point of `(N₀ ∪ {∞})^d`; an `∞` coordinate lies above
    /// every generator coordinate.
    pub fn contains(&self, x: &ExtVec) -> bool {
        self.gens.iter().any(|g| g.below(x))
    }

    pub fn contains_nat(&self, x: &NatVec) -> bool {
        self.gens.iter().any(|g| g.less_equal(x))
    }

    pub fn union(&self, other: &UpSet) -> Result<UpSet> {
        self.check_dim(other)?;
        let points = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_points_unchecked(self.dim, points))
    }

    /// `(A↑) ∩ (B↑) = {a ⊔ b : a ∈ A, b ∈ B}↑`.
    pub fn intersection(&self, other: &UpSet) -> Result<UpSet> {
        self.check_dim(other)?;
        let points = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.sup(b)))
            .collect();
        Ok(Self::from_points_unchecked(self.dim, points))
    }

    /// `{x : x + s ∈ U}`, generated by `{g - (g ⊓ s) : g ∈ gens}`.
    pub fn shift_back(&self, s: &NatVec) -> Result<UpSet> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.dim(),
            });
        }
        let points = self.gens.iter().map(|g| g.residual(s)).collect();
        Ok(Self::from_points_unchecked(self.dim, points))
    }

    /// `Max((N₀ ∪ {∞})^d \ U)` with the default grid limit.
    pub fn complement_maxima(&self) -> Result<Vec<ExtVec>> {
        self.complement_maxima_with_limit(DEFAULT_GRID_LIMIT)
    }

    /// `Max((N₀ ∪ {∞})^d \ U)`, returned in lexicographic order.
    ///
    /// Every maximal element `b` of the complement has `b_i ∈ {a_i - 1 : a ∈
    /// gens, a_i > 0} ∪ {∞}` in each coordinate, so the maxima live on the
    /// finite grid spanned by these candidate values. Conversely, every grid
    /// point outside `U` lies below a maximal element of the complement,
    /// which is again a grid point. Since the complement is downward closed,
    /// a grid point outside `U` is therefore maximal iff raising any single
    /// finite coordinate to its next candidate value lands in `U`.
    pub fn complement_maxima_with_limit(&self, limit: u128) -> Result<Vec<ExtVec>> {
        let candidates: Vec<Vec<ExtNat>> = (0..self.dim)
            .map(|i| {
                let mut vals: Vec<u64> = self
                    .gens
                    .iter()
                    .map(|g| g.get(i))
                    .filter(|&c| c > 0)
                    .map(|c| c - 1)
                    .collect();
                vals.sort_unstable();
                vals.dedup();
                vals.into_iter()
                    .map(ExtNat::Fin)
                    .chain(std::iter::once(ExtNat::Inf))
                    .collect()
            })
            .collect();

        let size = candidates
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .unwrap_or(u128::MAX);
        if size > limit {
            return Err(Error::GridTooLarge { size, limit });
        }

        let mut result = Vec::new();
        let mut idx = vec![0usize; self.dim];
        loop {
            let point = ExtVec::new(idx.iter().zip(&candidates).map(|(&k, c)| c[k]).collect());
            if !self.contains(&point) {
                let maximal = (0..self.dim).all(|i| {
                    let next = idx[i] + 1;
                    if next == candidates[i].len() {
                        return true;
                    }
                    let mut coords = point.coords().to_vec();
                    coords[i] = candidates[i][next];
                    self.contains(&ExtVec::new(coords))
                });
                if maximal {
                    result.push(point);
                }
            }
            // odometer step
            let mut i = 0;
            loop {
                if i == self.dim {
                    result.sort();
                    return Ok(result);
                }
                idx[i] += 1;
                if idx[i] < candidates[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    fn check_dim(&self, other: &UpSet) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }
}

/// Minimal elements of a finite point set, sorted and without duplicates.
///
/// After a lexicographic sort any strict lower bound of a point precedes it,
/// so one forward pass against the survivors suffices.
pub fn minimal(mut points: Vec<NatVec>) -> Vec<NatVec> {
    points.sort_unstable();
    points.dedup();
    let mut kept: Vec<NatVec> = Vec::with_capacity(points.len());
    for p in points {
        if !kept.iter().any(|g| g.less_equal(&p)) {
            kept.push(p);
        }
    }
    kept
}

/// Maximal elements of a finite set of extended vectors, sorted.
pub fn maximal(mut points: Vec<ExtVec>) -> Vec<ExtVec> {
    points.sort_unstable_by(|a, b| b.cmp(a));
    points.dedup();
    let mut kept: Vec<ExtVec> = Vec::with_capacity(points.len());
    for p in points {
        if !kept.iter().any(|g| p.less_equal(g)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectors::ext;
    use proptest::prelude::*;

    fn up(points: &[&[u64]]) -> UpSet {
        let d = points.first().map_or(2, |p| p.len());
        UpSet::from_points(d, points.iter().map(|p| NatVec::new(p.to_vec()))).unwrap()
    }

    fn gens(u: &UpSet) -> Vec<Vec<u64>> {
        u.gens().iter().map(|g| g.coords().to_vec()).collect()
    }

    #[test]
    fn normalize_drops_dominated_points() {
        let u = up(&[&[10, 20], &[30, 20], &[30, 5]]);
        assert_eq!(gens(&u), vec![vec![10, 20], vec![30, 5]]);
        assert!(UpSet::from_points(2, []).unwrap().is_empty());
        assert_eq!(gens(&up(&[&[0, 0]])), vec![vec![0, 0]]);
    }

    #[test]
    fn normalize_rejects_mixed_dimensions() {
        let err = UpSet::from_points(2, [NatVec::from([1, 2]), NatVec::from([1, 2, 3])]);
        assert_eq!(
            err,
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn membership_with_infinite_coordinates() {
        let u = up(&[&[10, 20], &[30, 5]]);
        assert!(u.contains(&ext(&[Some(29), None])));
        assert!(!u.contains(&ext(&[Some(9), None])));
        assert!(u.contains(&ExtVec::infinite(2)));
        assert!(!UpSet::empty(2).contains(&ExtVec::infinite(2)));
    }

    #[test]
    fn union_and_intersection_examples() {
        let a = up(&[&[2, 0]]);
        let b = up(&[&[0, 3]]);
        assert_eq!(gens(&a.intersection(&b).unwrap()), vec![vec![2, 3]]);
        assert_eq!(a.union(&UpSet::empty(2)).unwrap(), a);
        let c = up(&[&[1, 2], &[2, 1]]);
        let d = up(&[&[2, 2]]);
        assert_eq!(gens(&c.intersection(&d).unwrap()), vec![vec![2, 2]]);
        assert!(a.union(&UpSet::empty(3)).is_err());
    }

    #[test]
    fn complement_maxima_examples() {
        let u = up(&[&[10, 20], &[30, 5]]);
        assert_eq!(
            u.complement_maxima().unwrap(),
            vec![
                ext(&[Some(9), None]),
                ext(&[Some(29), Some(19)]),
                ext(&[None, Some(4)])
            ]
        );
        assert_eq!(
            UpSet::empty(3).complement_maxima().unwrap(),
            vec![ExtVec::infinite(3)]
        );
        assert!(UpSet::full(3).complement_maxima().unwrap().is_empty());
    }

    #[test]
    fn grid_guard() {
        let u = up(&[&[1, 2], &[2, 1], &[3, 0], &[0, 3]]);
        // 4 candidate values per coordinate including ∞
        assert_eq!(
            u.complement_maxima_with_limit(15),
            Err(Error::GridTooLarge {
                size: 16,
                limit: 15
            })
        );
        assert!(u.complement_maxima_with_limit(16).is_ok());
    }

    #[test]
    fn shift_back_matches_definition() {
        let u = up(&[&[2, 0, 1], &[0, 3, 0]]);
        let s = NatVec::from([1, 1, 0]);
        let shifted = u.shift_back(&s).unwrap();
        for x0 in 0..5 {
            for x1 in 0..5 {
                for x2 in 0..3 {
                    let x = NatVec::from([x0, x1, x2]);
                    assert_eq!(shifted.contains_nat(&x), u.contains_nat(&x.add(&s)));
                }
            }
        }
    }

    const B: u64 = 6;

    fn upset(d: usize) -> impl Strategy<Value = UpSet> {
        proptest::collection::vec(proptest::collection::vec(0..B - 1, d), 0..5)
            .prop_map(move |ps| UpSet::from_points(d, ps.into_iter().map(NatVec::new)).unwrap())
    }

    fn box_points(d: usize) -> Vec<NatVec> {
        let mut out = vec![vec![]];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| {
                    (0..=B).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(NatVec::new).collect()
    }

    fn naive_member(points: &[NatVec], x: &NatVec) -> bool {
        points
            .iter()
            .any(|p| p.coords().iter().zip(x.coords()).all(|(a, b)| a <= b))
    }

    proptest! {
        #[test]
        fn set_operations_agree_with_box_scan(a in upset(2), b in upset(2)) {
            let union = a.union(&b).unwrap();
            let inter = a.intersection(&b).unwrap();
            for x in box_points(2) {
                let ia = naive_member(a.gens(), &x);
                let ib = naive_member(b.gens(), &x);
                prop_assert_eq!(union.contains_nat(&x), ia || ib);
                prop_assert_eq!(inter.contains_nat(&x), ia && ib);
            }
        }

        #[test]
        fn generators_form_an_antichain(a in upset(3)) {
            for g in a.gens() {
                for h in a.gens() {
                    prop_assert!(g == h || !g.less_equal(h));
                }
            }
        }

        #[test]
        fn distributive_lattice_laws(a in upset(2), b in upset(2), c in upset(2)) {
            prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
            prop_assert_eq!(a.intersection(&b).unwrap(), b.intersection(&a).unwrap());
            prop_assert_eq!(a.union(&a).unwrap(), a.clone());
            prop_assert_eq!(a.intersection(&a).unwrap(), a.clone());
            prop_assert_eq!(
                a.union(&b).unwrap().union(&c).unwrap(),
                a.union(&b.union(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.intersection(&b).unwrap().intersection(&c).unwrap(),
                a.intersection(&b.intersection(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.intersection(&b.union(&c).unwrap()).unwrap(),
                a.intersection(&b).unwrap().union(&a.intersection(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn complement_maxima_cover_the_complement(a in upset(3)) {
            let maxima = a.complement_maxima().unwrap();
            for m in &maxima {
                prop_assert!(!a.contains(m));
                for n in &maxima {
                    prop_assert!(m == n || !m.less_equal(n));
                }
            }
            for x in box_points(3) {
                let x = x.to_ext();
                let outside = !a.contains(&x);
                prop_assert_eq!(outside, maxima.iter().any(|m| x.less_equal(m)));
            }
        }
    }
}
