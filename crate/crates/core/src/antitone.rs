//! Antitone functions `N₀^d → L` given by finite representations.
//!
//! A finite set `G` of points `(c, γ)` represents the function
//! `F_G(x) = ⋀{γ : (c, γ) ∈ G, c ≤ x}`, the largest antitone function lying
//! below every prescribed point. The same formula evaluates the extension
//! `F̂_G` on `(N₀ ∪ {∞})^d`. Everything else in this module (sublevel sets,
//! canonical and complete representations, the completeness test) is built
//! on the sublevel family `U(α) = {x : F_G(x) ≤ α}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::upset::{UpSet, DEFAULT_GRID_LIMIT};
use crate::vectors::{ExtVec, NatVec};

pub(crate) fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_elem(lattice: &Lattice, e: Elem) -> Result<()> {
    if lattice.contains(e) {
        Ok(())
    } else {
        Err(Error::ElementOutOfRange(e.index()))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A finite representation `G ⊆ N₀^d × L`.
///
/// Points with the same vector are merged by taking the meet of their values,
/// which leaves `F_G` unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    lattice: Arc<Lattice>,
    dim: usize,
    points: BTreeMap<NatVec, Elem>,
}

impl Rep {
    pub fn new<I>(lattice: Arc<Lattice>, dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NatVec, Elem)>,
    {
        let mut rep = Rep::empty(lattice, dim);
        for (v, e) in points {
            rep.insert(v, e)?;
        }
        Ok(rep)
    }

    /// The representation of the constant-top function.
    pub fn empty(lattice: Arc<Lattice>, dim: usize) -> Self {
        Rep {
            lattice,
            dim,
            points: BTreeMap::new(),
        }
    }

    /// The step function with value `beta` on `b↑` and top elsewhere.
    pub fn step(lattice: Arc<Lattice>, b: NatVec, beta: Elem) -> Result<Self> {
        let dim = b.dim();
        Rep::new(lattice, dim, [(b, beta)])
    }

    /// Adds a point, merging with an existing point at the same vector.
    pub fn insert(&mut self, v: NatVec, e: Elem) -> Result<()> {
        check_dim(self.dim, v.dim())?;
        check_elem(&self.lattice, e)?;
        let lattice = &self.lattice;
        self.points
            .entry(v)
            .and_modify(|old| *old = lattice.meet(*old, e))
            .or_insert(e);
        Ok(())
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in lexicographic vector order.
    pub fn points(&self) -> impl Iterator<Item = (&NatVec, Elem)> + '_ {
        self.points.iter().map(|(v, &e)| (v, e))
    }

    pub fn get(&self, v: &NatVec) -> Option<Elem> {
        self.points.get(v).copied()
    }

    /// Largest coordinate over all point vectors (0 when empty).
    pub fn max_coordinate(&self) -> u64 {
        self.points
            .keys()
            .flat_map(|v| v.coords().iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// `F_G(x)`.
    pub fn eval(&self, x: &NatVec) -> Result<Elem> {
        check_dim(self.dim, x.dim())?;
        Ok(self.value(x))
    }

    /// `F̂_G(x)` on the extended domain.
    pub fn eval_ext(&self, x: &ExtVec) -> Result<Elem> {
        check_dim(self.dim, x.dim())?;
        Ok(self.value_ext(x))
    }

    pub(crate) fn value(&self, x: &NatVec) -> Elem {
        self.lattice.big_meet(
            self.points
                .iter()
                .filter(|(c, _)| c.less_equal(x))
                .map(|(_, &e)| e),
        )
    }

    pub(crate) fn value_ext(&self, x: &ExtVec) -> Elem {
        self.lattice.big_meet(
            self.points
                .iter()
                .filter(|(c, _)| c.below(x))
                .map(|(_, &e)| e),
        )
    }

    /// A finite `b ≤ x` with `F_G(b) = F̂_G(x)`: the supremum of all point
    /// vectors below `x`, or zero if there are none.
    pub fn witness(&self, x: &ExtVec) -> Result<NatVec> {
        check_dim(self.dim, x.dim())?;
        Ok(self
            .points
            .keys()
            .filter(|c| c.below(x))
            .fold(NatVec::zeros(self.dim), |acc, c| acc.sup(c)))
    }

    /// `U(α) = {x ∈ N₀^d : F_G(x) ≤ α}`.
    pub fn sublevel(&self, alpha: Elem) -> Result<UpSet> {
        check_elem(&self.lattice, alpha)?;
        Ok(self.sublevels().remove(alpha.index()))
    }

    /// The sublevel sets `U(α)` for every lattice element, indexed by element.
    ///
    /// `U(α)` is the union of `(sup J)↑` over all subsets `J ⊆ G` whose values
    /// meet to something `≤ α`. Subsets are built up one point at a time and
    /// only the Pareto front of `(sup J, ⋀J)` pairs is kept: a pair that is
    /// dominated in both components can never contribute a new minimal
    /// element, so the result is exact without enumerating all `2^|G|`
    /// subsets.
    pub fn sublevels(&self) -> Vec<UpSet> {
        let lattice = &self.lattice;
        let mut front: Vec<(NatVec, Elem)> = vec![(NatVec::zeros(self.dim), lattice.top())];
        for (b, &beta) in &self.points {
            let extended: Vec<(NatVec, Elem)> = front
                .iter()
                .map(|(v, g)| (v.sup(b), lattice.meet(*g, beta)))
                .collect();
            front.extend(extended);
            front = pareto_front(lattice, front);
        }
        lattice
            .elements()
            .map(|alpha| {
                let gens = front
                    .iter()
                    .filter(|(_, g)| lattice.leq(*g, alpha))
                    .map(|(v, _)| v.clone())
                    .collect();
                UpSet::from_points_unchecked(self.dim, gens)
            })
            .collect()
    }

    /// The canonical representation: for each value `α`, the minimal vectors
    /// where the function equals `α`.
    pub fn canonical(&self) -> Rep {
        Rep::from_sublevels(self.lattice.clone(), self.dim, &self.sublevels())
    }

    /// Canonical representation of the antitone function whose sublevel sets
    /// are `sublevels` (indexed by element).
    ///
    /// `Min{F = α} = Min{F ≤ α} \ ⋃_{β ⋖ α} Min{F ≤ β}`.
    pub(crate) fn from_sublevels(lattice: Arc<Lattice>, dim: usize, sublevels: &[UpSet]) -> Rep {
        let mut points = BTreeMap::new();
        for alpha in lattice.elements() {
            let below: BTreeSet<&NatVec> = lattice
                .lower_covers(alpha)
                .iter()
                .flat_map(|beta| sublevels[beta.index()].gens())
                .collect();
            for g in sublevels[alpha.index()].gens() {
                if !below.contains(g) {
                    points.insert(g.clone(), alpha);
                }
            }
        }
        Rep {
            lattice,
            dim,
            points,
        }
    }

    /// A complete representation of `F̂_G`: the minimal points of every
    /// sublevel set together with the maximal points of every complement and
    /// the all-`∞` vector, each paired with its `F̂_G` value. Top-valued points
    /// lying below another top-valued point are left out.
    pub fn complete(&self) -> Result<ExtRep> {
        self.complete_with_limit(DEFAULT_GRID_LIMIT)
    }

    pub fn complete_with_limit(&self, grid_limit: u128) -> Result<ExtRep> {
        let mut support: BTreeSet<ExtVec> = BTreeSet::new();
        for u in self.sublevels() {
            support.extend(u.gens().iter().map(NatVec::to_ext));
            support.extend(u.complement_maxima_with_limit(grid_limit)?);
        }
        support.insert(ExtVec::infinite(self.dim));
        let top = self.lattice.top();
        let valued: Vec<(ExtVec, Elem)> = support
            .into_iter()
            .map(|a| {
                let v = self.value_ext(&a);
                (a, v)
            })
            .collect();
        // A point valued top below another such point adds nothing: antitony
        // already forces the value.
        let points = valued
            .iter()
            .filter(|(a, v)| {
                *v != top
                    || !valued
                        .iter()
                        .any(|(b, w)| *w == top && b != a && a.less_equal(b))
            })
            .cloned()
            .collect();
        Ok(ExtRep {
            lattice: self.lattice.clone(),
            dim: self.dim,
            points,
        })
    }

    /// Decides whether `h` is a complete representation of `F̂_G`.
    ///
    /// `h` must lie on the graph of `F̂_G`, and for every `α` each minimal
    /// point `b` of `U(α)` must satisfy `⋀{δ : (d, δ) ∈ h, d ≤ b} ≤ α` while
    /// each maximal point `b` of the complement must satisfy
    /// `⋁{δ : (d, δ) ∈ h, b ≤ d} ≰ α`.
    pub fn check_complete(&self, h: &ExtRep) -> Result<bool> {
        self.check_complete_with_limit(h, DEFAULT_GRID_LIMIT)
    }

    pub fn check_complete_with_limit(&self, h: &ExtRep, grid_limit: u128) -> Result<bool> {
        if !same_lattice(&self.lattice, &h.lattice) {
            return Err(Error::LatticeMismatch);
        }
        check_dim(self.dim, h.dim)?;
        if h.points.iter().any(|(a, d)| self.value_ext(a) != *d) {
            return Ok(false);
        }
        let lattice = &self.lattice;
        for (alpha, u) in lattice.elements().zip(self.sublevels()) {
            for b in u.gens() {
                if !lattice.leq(h.meet_below(&b.to_ext()), alpha) {
                    return Ok(false);
                }
            }
            for b in u.complement_maxima_with_limit(grid_limit)? {
                if lattice.leq(h.join_above(&b), alpha) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether some finite subset of the graph of `F_G` pins `F_G` down
    /// among all antitone functions on `N₀^d`. This holds exactly when
    /// `F_G` reaches the bottom element on every coordinate axis, i.e.
    /// `F̂_G(∞·e_i) = 0` for all `i`.
    pub fn finitely_determinable(&self) -> bool {
        (0..self.dim)
            .all(|i| self.value_ext(&ExtVec::infinite_axis(self.dim, i)) == self.lattice.bottom())
    }

    /// `F_self ≤ F_other` pointwise. By the largest-function property it is
    /// enough to compare at the point vectors of `other`.
    pub fn le_pointwise(&self, other: &Rep) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other
            .points
            .keys()
            .all(|b| self.lattice.leq(self.value(b), other.value(b))))
    }

    /// `F_self = F_other`.
    pub fn equal_fn(&self, other: &Rep) -> Result<bool> {
        Ok(self.le_pointwise(other)? && other.le_pointwise(self)?)
    }

    /// Representation of `x ↦ F_G(x + s)`.
    pub fn shift(&self, s: &NatVec) -> Result<Rep> {
        check_dim(self.dim, s.dim())?;
        let mut out = Rep::empty(self.lattice.clone(), self.dim);
        for (c, &g) in &self.points {
            out.insert(c.residual(s), g)?;
        }
        Ok(out)
    }

    /// Canonical representation of the pointwise join `F_self ∨ F_other`.
    pub fn join_pointwise(&self, other: &Rep) -> Result<Rep> {
        self.check_compatible(other)?;
        let sublevels: Vec<UpSet> = self
            .sublevels()
            .iter()
            .zip(other.sublevels())
            .map(|(a, b)| a.intersection(&b))
            .collect::<Result<_>>()?;
        Ok(Rep::from_sublevels(
            self.lattice.clone(),
            self.dim,
            &sublevels,
        ))
    }

    /// Representation of the pointwise meet `F_self ∧ F_other`.
    pub fn meet_pointwise(&self, other: &Rep) -> Result<Rep> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (v, &e) in &other.points {
            out.insert(v.clone(), e)?;
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Rep) -> Result<()> {
        if !same_lattice(&self.lattice, &other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        check_dim(self.dim, other.dim)
    }
}

/// Drops every pair dominated by another in both the vector and the value.
fn pareto_front(lattice: &Lattice, mut pairs: Vec<(NatVec, Elem)>) -> Vec<(NatVec, Elem)> {
    pairs.sort_unstable();
    pairs.dedup();
    let dominated =
        |(v, g): &(NatVec, Elem), (w, h): &(NatVec, Elem)| w.less_equal(v) && lattice.leq(*h, *g);
    let mut kept: Vec<(NatVec, Elem)> = Vec::with_capacity(pairs.len());
    for p in pairs {
        if kept.iter().any(|q| dominated(&p, q)) {
            continue;
        }
        kept.retain(|q| !dominated(q, &p));
        kept.push(p);
    }
    kept
}

/// A finite subset `H ⊆ (N₀ ∪ {∞})^d × L`, usually meant to lie on the graph
/// of some extension `F̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRep {
    lattice: Arc<Lattice>,
    dim: usize,
    points: Vec<(ExtVec, Elem)>,
}

impl ExtRep {
    pub fn new<I>(lattice: Arc<Lattice>, dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExtVec, Elem)>,
    {
        let mut pts = Vec::new();
        for (v, e) in points {
            check_dim(dim, v.dim())?;
            check_elem(&lattice, e)?;
            pts.push((v, e));
        }
        pts.sort();
        pts.dedup();
        Ok(ExtRep {
            lattice,
            dim,
            points: pts,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (&ExtVec, Elem)> + '_ {
        self.points.iter().map(|(v, e)| (v, *e))
    }

    pub fn get(&self, v: &ExtVec) -> Option<Elem> {
        self.points.iter().find(|(w, _)| w == v).map(|(_, e)| *e)
    }

    /// Copy without the point at `v`.
    pub fn without(&self, v: &ExtVec) -> ExtRep {
        ExtRep {
            lattice: self.lattice.clone(),
            dim: self.dim,
            points: self
                .points
                .iter()
                .filter(|(w, _)| w != v)
                .cloned()
                .collect(),
        }
    }

    /// `⋀{δ : (d, δ) ∈ H, d ≤ x}`, the largest antitone function through `H`
    /// when `H` lies on an antitone graph.
    pub fn meet_below(&self, x: &ExtVec) -> Elem {
        self.lattice.big_meet(
            self.points
                .iter()
                .filter(|(d, _)| d.less_equal(x))
                .map(|(_, e)| *e),
        )
    }

    /// `⋁{δ : (d, δ) ∈ H, x ≤ d}`, the smallest antitone function through `H`.
    pub fn join_above(&self, x: &ExtVec) -> Elem {
        self.lattice.big_join(
            self.points
                .iter()
                .filter(|(d, _)| x.less_equal(d))
                .map(|(_, e)| *e),
        )
    }
}
