//! Deciders for the HC properties of an operation sequence given by the
//! antitone encoding `F_G : N₀^m → L`.
//!
//! Coordinate `j` of a vector counts occurrences of the lattice element with
//! index `j`, so a representation must have dimension `m = |L|`.

use std::fmt;

use crate::antitone::Rep;
use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::upset::UpSet;
use crate::vectors::NatVec;

/// The properties that make sense for an encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Hc1,
    Hc2,
    Hc3,
    Hc4,
    Hc7,
    Hc8,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Hc1,
        Property::Hc2,
        Property::Hc3,
        Property::Hc4,
        Property::Hc7,
        Property::Hc8,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::Hc1 => "HC1",
            Property::Hc2 => "HC2",
            Property::Hc3 => "HC3",
            Property::Hc4 => "HC4",
            Property::Hc7 => "HC7",
            Property::Hc8 => "HC8",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A concrete failure of one property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `F(e_j) = value` is not below `λ_j`.
    Hc1 { j: Elem, value: Elem },
    /// `F(b − e_j + e_i) = value` is not below `F(b) = bound`, with `λ_i ≤ λ_j`.
    Hc2 {
        b: NatVec,
        i: Elem,
        j: Elem,
        value: Elem,
        bound: Elem,
    },
    /// `F(x + e_k) = lhs` differs from `F(x + e_i) ∨ F(x + e_j) = rhs`.
    Hc7 {
        x: NatVec,
        i: Elem,
        j: Elem,
        k: Elem,
        lhs: Elem,
        rhs: Elem,
    },
    /// `F(b) = λ_j`, `b ≤ a`, and `F(a − b + e_j) = value` is not below `F(a) = bound`.
    Hc8 {
        a: NatVec,
        b: NatVec,
        j: Elem,
        value: Elem,
        bound: Elem,
    },
}

impl Witness {
    /// Human-readable description using element names.
    pub fn describe(&self, l: &Lattice) -> String {
        match self {
            Witness::Hc1 { j, value } => {
                format!(
                    "F(e[{}]) = {} is not <= {}",
                    l.name(*j),
                    l.name(*value),
                    l.name(*j)
                )
            }
            Witness::Hc2 {
                b,
                i,
                j,
                value,
                bound,
            } => format!(
                "F({b} - e[{}] + e[{}]) = {} is not <= F({b}) = {}",
                l.name(*j),
                l.name(*i),
                l.name(*value),
                l.name(*bound)
            ),
            Witness::Hc7 {
                x,
                i,
                j,
                k,
                lhs,
                rhs,
            } => format!(
                "F({x} + e[{}]) = {} but F({x} + e[{}]) v F({x} + e[{}]) = {}",
                l.name(*k),
                l.name(*lhs),
                l.name(*i),
                l.name(*j),
                l.name(*rhs)
            ),
            Witness::Hc8 {
                a,
                b,
                j,
                value,
                bound,
            } => format!(
                "F({b}) = {}, {b} <= {a}, F({a} - {b} + e[{}]) = {} is not <= F({a}) = {}",
                l.name(*j),
                l.name(*j),
                l.name(*value),
                l.name(*bound)
            ),
        }
    }
}

/// Result of one decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(Witness),
    /// Not decided because a prerequisite failed.
    Skipped(Property),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    fn from_violation(v: Option<Witness>) -> Self {
        v.map_or(Outcome::Holds, Outcome::Fails)
    }
}

fn require_encoding(g: &Rep) -> Result<()> {
    let m = g.lattice().size();
    if g.dim() == m {
        Ok(())
    } else {
        Err(Error::NotAnEncoding {
            dimension: g.dim(),
            elements: m,
        })
    }
}

fn unit(m: usize, j: Elem) -> NatVec {
    NatVec::unit(m, j.index())
}

/// `F(e_j) ≤ λ_j` for every `j`; by antitony this gives `F(a) ≤ λ_j`
/// whenever `a_j > 0`.
pub fn hc1_violation(g: &Rep) -> Result<Option<Witness>> {
    require_encoding(g)?;
    let l = g.lattice();
    let m = g.dim();
    Ok(l.elements().find_map(|j| {
        let value = g.value(&unit(m, j));
        (!l.leq(value, j)).then_some(Witness::Hc1 { j, value })
    }))
}

pub fn check_hc1(g: &Rep) -> Result<bool> {
    Ok(hc1_violation(g)?.is_none())
}

/// Replacing an argument by a smaller one never raises the value. It is
/// enough to test the canonical points `(b, β)` with `b_j > 0`.
pub fn hc2_violation(g: &Rep) -> Result<Option<Witness>> {
    require_encoding(g)?;
    let l = g.lattice();
    let m = g.dim();
    let canonical = g.canonical();
    for (b, bound) in canonical.points() {
        for j in l.elements().filter(|j| b.get(j.index()) > 0) {
            let lowered = b.residual(&unit(m, j));
            for i in l.elements().filter(|&i| i != j && l.leq(i, j)) {
                let value = g.value(&lowered.add(&unit(m, i)));
                if !l.leq(value, bound) {
                    return Ok(Some(Witness::Hc2 {
                        b: b.clone(),
                        i,
                        j,
                        value,
                        bound,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn check_hc2(g: &Rep) -> Result<bool> {
    Ok(hc2_violation(g)?.is_none())
}

/// Antitony. Every `F_G` is antitone.
pub fn check_hc3(g: &Rep) -> Result<bool> {
    require_encoding(g)?;
    Ok(true)
}

/// Symmetry. Occurrence-count vectors forget argument order.
pub fn check_hc4(g: &Rep) -> Result<bool> {
    require_encoding(g)?;
    Ok(true)
}

/// Nesting property. Only decidable this way once HC2 is known to hold;
/// otherwise returns [`Error::Hc2Required`].
pub fn hc8_violation(g: &Rep) -> Result<Option<Witness>> {
    if !check_hc2(g)? {
        return Err(Error::Hc2Required);
    }
    Ok(hc8_scan(g))
}

pub fn check_hc8(g: &Rep) -> Result<bool> {
    Ok(hc8_violation(g)?.is_none())
}

fn hc8_scan(g: &Rep) -> Option<Witness> {
    let l = g.lattice();
    let m = g.dim();
    let canonical = g.canonical();
    for (a, bound) in canonical.points() {
        let mut b = NatVec::zeros(m);
        loop {
            let j = g.value(&b);
            let value = g.value(&a.residual(&b).add(&unit(m, j)));
            if !l.leq(value, bound) {
                return Some(Witness::Hc8 {
                    a: a.clone(),
                    b,
                    j,
                    value,
                    bound,
                });
            }
            if !next_below(&mut b, a) {
                break;
            }
        }
    }
    None
}

/// Odometer step over the box `0 ≤ b ≤ a`.
fn next_below(b: &mut NatVec, a: &NatVec) -> bool {
    let mut coords = b.coords().to_vec();
    for (c, &limit) in coords.iter_mut().zip(a.coords()) {
        if *c < limit {
            *c += 1;
            *b = NatVec::new(coords);
            return true;
        }
        *c = 0;
    }
    false
}

/// Join distributivity: `F(x + e_k) = F(x + e_i) ∨ F(x + e_j)` whenever
/// `λ_k = λ_i ∨ λ_j`.
///
/// Both sides are antitone in `x`, so they agree iff their sublevel sets
/// agree for every `α`. The left side has sublevels `U(α)` shifted back by
/// `e_k`; the right side has the intersection of the shifts by `e_i` and
/// `e_j`.
pub fn hc7_violation(g: &Rep) -> Result<Option<Witness>> {
    require_encoding(g)?;
    let l = g.lattice();
    let m = g.dim();
    let sublevels = g.sublevels();
    let shifted: Vec<Vec<UpSet>> = l
        .elements()
        .map(|i| {
            sublevels
                .iter()
                .map(|u| u.shift_back(&unit(m, i)))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    for i in l.elements() {
        for j in l.elements().filter(|j| j.index() >= i.index()) {
            let k = l.join(i, j);
            for alpha in l.elements() {
                let left = &shifted[k.index()][alpha.index()];
                let right = shifted[i.index()][alpha.index()]
                    .intersection(&shifted[j.index()][alpha.index()])?;
                if *left == right {
                    continue;
                }
                // some generator of one side is missing from the other
                let x = left
                    .gens()
                    .iter()
                    .find(|x| !right.contains_nat(x))
                    .or_else(|| right.gens().iter().find(|x| !left.contains_nat(x)))
                    .expect("distinct upsets differ at a generator")
                    .clone();
                let lhs = g.value(&x.add(&unit(m, k)));
                let rhs = l.join(g.value(&x.add(&unit(m, i))), g.value(&x.add(&unit(m, j))));
                return Ok(Some(Witness::Hc7 {
                    x,
                    i,
                    j,
                    k,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

pub fn check_hc7(g: &Rep) -> Result<bool> {
    Ok(hc7_violation(g)?.is_none())
}

/// HC1, HC2, HC3, HC4, HC7 and HC8 together.
pub fn is_admissible(g: &Rep) -> Result<bool> {
    Ok(check_hc1(g)? && check_hc2(g)? && check_hc7(g)? && check_hc8(g)?)
}

/// Outcome of every decider, in [`Property::ALL`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub outcomes: Vec<(Property, Outcome)>,
}

impl Report {
    pub fn admissible(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| o.holds())
    }

    pub fn get(&self, p: Property) -> &Outcome {
        &self
            .outcomes
            .iter()
            .find(|(q, _)| *q == p)
            .expect("every property is reported")
            .1
    }
}

pub fn report(g: &Rep) -> Result<Report> {
    require_encoding(g)?;
    let hc2 = hc2_violation(g)?;
    let hc8 = if hc2.is_none() {
        Outcome::from_violation(hc8_scan(g))
    } else {
        Outcome::Skipped(Property::Hc2)
    };
    Ok(Report {
        outcomes: vec![
            (Property::Hc1, Outcome::from_violation(hc1_violation(g)?)),
            (Property::Hc2, Outcome::from_violation(hc2)),
            (Property::Hc3, Outcome::Holds),
            (Property::Hc4, Outcome::Holds),
            (Property::Hc7, Outcome::from_violation(hc7_violation(g)?)),
            (Property::Hc8, hc8),
        ],
    })
}
