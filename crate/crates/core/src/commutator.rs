//! Commutator equalities and their translation to and from antitone
//! encodings.
//!
//! A symmetric operation sequence `(f_n)` on `L = {λ_0, …, λ_{m-1}}` is
//! encoded by `F(a) = f(λ_0^{a_0}, …, λ_{m-1}^{a_{m-1}})`, so an argument
//! multiset corresponds to its occurrence-count vector. An extended
//! commutator `[S; α_1, …, α_n]` is the meet of all commutators whose
//! arguments extend `α_1, …, α_n` by elements of `S`; it is the value of `F̂`
//! at the vector with `∞` in the coordinates of `S`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::antitone::{ExtRep, Rep};
use crate::error::{Error, Result};
use crate::hc;
use crate::lattice::{Elem, Lattice};
use crate::vectors::{ExtNat, ExtVec, NatVec};

/// `[α_1, …, α_n] = β`, arguments kept as a sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommEquality {
    pub args: Vec<Elem>,
    pub rhs: Elem,
}

impl CommEquality {
    pub fn new(mut args: Vec<Elem>, rhs: Elem) -> Self {
        args.sort();
        CommEquality { args, rhs }
    }

    pub fn display<'a>(&'a self, l: &'a Lattice) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            write!(f, "[{}] = {}", names(l, &self.args), l.name(self.rhs))
        })
    }
}

/// `[S; α_1, …, α_n] = β`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtCommEquality {
    pub set: Vec<Elem>,
    pub args: Vec<Elem>,
    pub rhs: Elem,
}

impl ExtCommEquality {
    pub fn new(set: impl IntoIterator<Item = Elem>, mut args: Vec<Elem>, rhs: Elem) -> Self {
        let set: BTreeSet<Elem> = set.into_iter().collect();
        args.sort();
        ExtCommEquality {
            set: set.into_iter().collect(),
            args,
            rhs,
        }
    }

    pub fn display<'a>(&'a self, l: &'a Lattice) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| {
            let args = if self.args.is_empty() {
                "Λ".to_string()
            } else {
                names(l, &self.args)
            };
            let set = if self.set.is_empty() {
                "∅".to_string()
            } else {
                format!("{{{}}}", names(l, &self.set))
            };
            write!(f, "[{}; {}] = {}", set, args, l.name(self.rhs))
        })
    }
}

struct Shown<F>(F);

impl<F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result> fmt::Display for Shown<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.0)(f)
    }
}

fn names(l: &Lattice, elems: &[Elem]) -> String {
    elems
        .iter()
        .map(|&e| l.name(e))
        .collect::<Vec<_>>()
        .join(",")
}

fn require_encoding(g: &Rep) -> Result<()> {
    if g.dim() == g.lattice().size() {
        Ok(())
    } else {
        Err(Error::NotAnEncoding {
            dimension: g.dim(),
            elements: g.lattice().size(),
        })
    }
}

fn check_elems(l: &Lattice, elems: &[Elem]) -> Result<()> {
    match elems.iter().find(|e| !l.contains(**e)) {
        Some(e) => Err(Error::ElementOutOfRange(e.index())),
        None => Ok(()),
    }
}

/// Occurrence counts of `args`, indexed by element.
pub fn encode_args(l: &Lattice, args: &[Elem]) -> Result<NatVec> {
    check_elems(l, args)?;
    let mut counts = vec![0u64; l.size()];
    for a in args {
        counts[a.index()] += 1;
    }
    Ok(NatVec::new(counts))
}

/// The multiset with the given occurrence counts.
pub fn decode_args(v: &NatVec) -> Vec<Elem> {
    v.coords()
        .iter()
        .enumerate()
        .flat_map(|(j, &n)| std::iter::repeat_n(Elem(j), n as usize))
        .collect()
}

fn encode_extended(l: &Lattice, set: &[Elem], args: &[Elem]) -> Result<ExtVec> {
    check_elems(l, set)?;
    let counts = encode_args(l, args)?;
    let mut coords: Vec<ExtNat> = counts.coords().iter().map(|&n| ExtNat::Fin(n)).collect();
    for s in set {
        coords[s.index()] = ExtNat::Inf;
    }
    Ok(ExtVec::new(coords))
}

/// `[α_1, …, α_n]` for the sequence encoded by `g`. The empty commutator is
/// the top element.
pub fn eval_commutator(g: &Rep, args: &[Elem]) -> Result<Elem> {
    require_encoding(g)?;
    g.eval(&encode_args(g.lattice(), args)?)
}

/// `[S; α_1, …, α_n]` for the sequence encoded by `g`.
pub fn eval_extended(g: &Rep, set: &[Elem], args: &[Elem]) -> Result<Elem> {
    require_encoding(g)?;
    g.eval_ext(&encode_extended(g.lattice(), set, args)?)
}

/// Something a sequence may or may not satisfy.
pub trait Equality {
    fn holds_in(&self, g: &Rep) -> Result<bool>;
}

impl Equality for CommEquality {
    fn holds_in(&self, g: &Rep) -> Result<bool> {
        Ok(eval_commutator(g, &self.args)? == self.rhs)
    }
}

impl Equality for ExtCommEquality {
    fn holds_in(&self, g: &Rep) -> Result<bool> {
        Ok(eval_extended(g, &self.set, &self.args)? == self.rhs)
    }
}

pub fn satisfies<E: Equality + ?Sized>(g: &Rep, eq: &E) -> Result<bool> {
    eq.holds_in(g)
}

/// One equality per point of the canonical representation. The encoded
/// sequence is the largest antitone symmetric one satisfying them.
pub fn to_equalities(g: &Rep) -> Result<Vec<CommEquality>> {
    require_encoding(g)?;
    Ok(g.canonical()
        .points()
        .map(|(v, e)| CommEquality::new(decode_args(v), e))
        .collect())
}

/// A subset of [`to_equalities`] that still pins the sequence down among
/// those satisfying HC1, HC2, HC3 and HC4. Single-argument equalities
/// `[σ] = σ` go first, then every equality the rest already forces.
pub fn reduced_equalities(g: &Rep) -> Result<Vec<CommEquality>> {
    if !hc::check_hc1(g)? || !hc::check_hc2(g)? {
        return Err(Error::NotReducible);
    }
    let l = g.lattice().clone();
    let mut kept = to_equalities(g)?;
    let pins = |eqs: &[CommEquality]| -> Result<bool> {
        let (rep, _) = largest_with_hc1_hc2(l.clone(), eqs)?;
        rep.equal_fn(g)
    };
    let trivial = |e: &CommEquality| e.args.is_empty() || e.args == [e.rhs];
    let without_trivial: Vec<CommEquality> = kept.iter().filter(|e| !trivial(e)).cloned().collect();
    if pins(&without_trivial)? {
        kept = without_trivial;
    }
    let mut idx = 0;
    while idx < kept.len() {
        let mut candidate = kept.clone();
        candidate.remove(idx);
        if pins(&candidate)? {
            kept = candidate;
        } else {
            idx += 1;
        }
    }
    Ok(kept)
}

/// One extended equality per point of a complete representation. Among all
/// symmetric antitone sequences exactly one satisfies them.
pub fn to_extended_equalities(g: &Rep) -> Result<Vec<ExtCommEquality>> {
    require_encoding(g)?;
    let h = g.complete()?;
    Ok(h.points().map(|(a, e)| ext_equality_at(a, e)).collect())
}

fn ext_equality_at(a: &ExtVec, rhs: Elem) -> ExtCommEquality {
    let mut set = Vec::new();
    let mut args = Vec::new();
    for (j, c) in a.coords().iter().enumerate() {
        match c {
            ExtNat::Inf => set.push(Elem(j)),
            ExtNat::Fin(n) => args.extend(std::iter::repeat_n(Elem(j), *n as usize)),
        }
    }
    ExtCommEquality::new(set, args, rhs)
}

/// The points of the extended domain described by `eqs`.
pub fn extended_points(l: Arc<Lattice>, eqs: &[ExtCommEquality]) -> Result<ExtRep> {
    let m = l.size();
    let points = eqs
        .iter()
        .map(|e| Ok((encode_extended(&l, &e.set, &e.args)?, e.rhs)))
        .collect::<Result<Vec<_>>>()?;
    ExtRep::new(l, m, points)
}

fn attainment(rep: &Rep, eqs: &[CommEquality]) -> Result<Vec<bool>> {
    eqs.iter().map(|e| e.holds_in(rep)).collect()
}

/// The largest antitone symmetric sequence with `[args] ≤ rhs` for every
/// equality, and for each equality whether it holds with equality there.
pub fn largest_from_equalities(l: Arc<Lattice>, eqs: &[CommEquality]) -> Result<(Rep, Vec<bool>)> {
    let m = l.size();
    let points = eqs
        .iter()
        .map(|e| Ok((encode_args(&l, &e.args)?, e.rhs)))
        .collect::<Result<Vec<_>>>()?;
    let rep = Rep::new(l, m, points)?;
    let report = attainment(&rep, eqs)?;
    Ok((rep, report))
}

/// As [`largest_from_equalities`], but the largest sequence that also
/// satisfies HC1 and HC2.
///
/// HC2 makes `F` antitone for the coarser order in which an argument may
/// also be replaced by a smaller element, so each bound `F(c) ≤ γ` spreads
/// to every vector obtained from `c` by such replacements. HC1 adds
/// `F(e_j) ≤ λ_j`.
pub fn largest_with_hc1_hc2(l: Arc<Lattice>, eqs: &[CommEquality]) -> Result<(Rep, Vec<bool>)> {
    let m = l.size();
    let mut rep = Rep::empty(l.clone(), m);
    for j in l.elements() {
        for i in l.elements().filter(|&i| l.leq(i, j)) {
            rep.insert(NatVec::unit(m, i.index()), j)?;
        }
    }
    for e in eqs {
        check_elems(&l, &e.args)?;
        check_elems(&l, &[e.rhs])?;
        for args in lowered_multisets(&l, &e.args) {
            rep.insert(encode_args(&l, &args)?, e.rhs)?;
        }
    }
    let report = attainment(&rep, eqs)?;
    Ok((rep, report))
}

/// All multisets obtained by replacing each argument by an element below it.
fn lowered_multisets(l: &Lattice, args: &[Elem]) -> BTreeSet<Vec<Elem>> {
    let mut out: BTreeSet<Vec<Elem>> = BTreeSet::from([Vec::new()]);
    for &a in args {
        let below: Vec<Elem> = l.elements().filter(|&b| l.leq(b, a)).collect();
        out = out
            .iter()
            .flat_map(|prefix| {
                below.iter().map(move |&b| {
                    let mut v = prefix.clone();
                    v.push(b);
                    v.sort();
                    v
                })
            })
            .collect();
    }
    out
}

/// Built-in sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    /// Two points over the divisors of 52.
    Div52,
    /// Higher commutators of an expansion of `Z_4` on the chain `0 < α < 1`.
    B,
    /// As `B`, but eight copies of `1` are needed to reach `0`.
    B7,
}

impl Example {
    pub const ALL: [Example; 3] = [Example::Div52, Example::B, Example::B7];

    pub fn name(self) -> &'static str {
        match self {
            Example::Div52 => "div52",
            Example::B => "B",
            Example::B7 => "B7",
        }
    }

    pub fn rep(self) -> Rep {
        match self {
            Example::Div52 => {
                let l = Arc::new(Lattice::divisors(52).expect("52 > 0"));
                let el = |n: &str| l.find(n).expect("divisor of 52");
                let pts = [
                    (NatVec::from([10, 20]), el("26")),
                    (NatVec::from([30, 5]), el("4")),
                ];
                Rep::new(l.clone(), 2, pts).expect("valid points")
            }
            Example::B | Example::B7 => {
                let l = Arc::new(Lattice::chain3());
                let (zero, alpha, one) = (Elem(0), Elem(1), Elem(2));
                let mut pts = vec![
                    ([0, 0, 0], one),
                    ([0, 1, 0], alpha),
                    ([0, 0, 2], alpha),
                    ([1, 0, 0], zero),
                    ([0, 1, 1], zero),
                    ([0, 2, 0], zero),
                ];
                if self == Example::B7 {
                    pts.push(([0, 0, 8], zero));
                }
                Rep::new(l, 3, pts.into_iter().map(|(v, e)| (NatVec::from(v), e)))
                    .expect("valid points")
            }
        }
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "div52" => Ok(Example::Div52),
            "b" => Ok(Example::B),
            "b7" => Ok(Example::B7),
            _ => Err(Error::UnknownExample(s.to_string())),
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZERO: Elem = Elem(0);
    const ALPHA: Elem = Elem(1);
    const ONE: Elem = Elem(2);

    fn eq(args: &[Elem], rhs: Elem) -> CommEquality {
        CommEquality::new(args.to_vec(), rhs)
    }

    #[test]
    fn encoding_of_arguments() {
        let l = Lattice::chain3();
        assert_eq!(
            encode_args(&l, &[ONE, ONE]).unwrap(),
            NatVec::from([0, 0, 2])
        );
        assert_eq!(encode_args(&l, &[]).unwrap(), NatVec::zeros(3));
        assert_eq!(
            encode_args(&l, &[ALPHA, ONE]).unwrap(),
            NatVec::from([0, 1, 1])
        );
        assert_eq!(
            encode_args(&l, &[Elem(3)]),
            Err(Error::ElementOutOfRange(3))
        );
        assert_eq!(decode_args(&NatVec::from([1, 0, 2])), vec![ZERO, ONE, ONE]);
    }

    #[test]
    fn commutators_of_b_and_b7() {
        let b = Example::B.rep();
        assert_eq!(eval_commutator(&b, &[ONE, ALPHA]).unwrap(), ZERO);
        assert_eq!(eval_commutator(&b, &[]).unwrap(), ONE);
        let b7 = Example::B7.rep();
        assert_eq!(eval_commutator(&b7, &[ONE; 7]).unwrap(), ALPHA);
        assert_eq!(eval_commutator(&b7, &[ONE; 8]).unwrap(), ZERO);
        assert_eq!(eval_commutator(&b, &[ONE; 8]).unwrap(), ALPHA);
    }

    #[test]
    fn extended_commutators() {
        let b = Example::B.rep();
        assert_eq!(eval_extended(&b, &[ONE], &[]).unwrap(), ALPHA);
        assert_eq!(eval_extended(&b, &[ZERO, ALPHA, ONE], &[]).unwrap(), ZERO);
        assert_eq!(eval_extended(&b, &[], &[ONE, ONE]).unwrap(), ALPHA);
        assert_eq!(eval_extended(&b, &[], &[]).unwrap(), ONE);
        let b7 = Example::B7.rep();
        assert!(!satisfies(&b7, &ExtCommEquality::new([ONE], vec![], ALPHA)).unwrap());
    }

    #[test]
    fn canonical_equalities_of_b() {
        let b = Example::B.rep();
        let eqs = to_equalities(&b).unwrap();
        for e in [
            eq(&[ONE, ONE], ALPHA),
            eq(&[ONE, ALPHA], ZERO),
            eq(&[ALPHA, ALPHA], ZERO),
            eq(&[ALPHA], ALPHA),
            eq(&[ZERO], ZERO),
        ] {
            assert!(eqs.contains(&e), "{}", e.display(b.lattice()));
        }
        assert!(to_equalities(&Example::B7.rep())
            .unwrap()
            .contains(&eq(&[ONE; 8], ZERO)));
        let l = Arc::new(Lattice::chain3());
        assert_eq!(
            to_equalities(&Rep::empty(l, 3)).unwrap(),
            vec![eq(&[], ONE)]
        );
    }

    #[test]
    fn reduced_equalities_of_b_and_b7() {
        let reduced = reduced_equalities(&Example::B.rep()).unwrap();
        assert_eq!(
            reduced,
            vec![eq(&[ONE, ONE], ALPHA), eq(&[ALPHA, ONE], ZERO)]
        );
        let reduced = reduced_equalities(&Example::B7.rep()).unwrap();
        assert_eq!(
            reduced,
            vec![
                eq(&[ONE, ONE], ALPHA),
                eq(&[ONE; 8], ZERO),
                eq(&[ALPHA, ONE], ZERO)
            ]
        );
        let l = Arc::new(Lattice::chain3());
        assert_eq!(
            reduced_equalities(&Rep::empty(l, 3)),
            Err(Error::NotReducible)
        );
    }

    #[test]
    fn equalities_hold_in_their_source() {
        for ex in [Example::B, Example::B7] {
            let g = ex.rep();
            for e in to_equalities(&g).unwrap() {
                assert!(satisfies(&g, &e).unwrap());
            }
            for e in to_extended_equalities(&g).unwrap() {
                assert!(satisfies(&g, &e).unwrap());
            }
        }
    }

    #[test]
    fn extended_equalities_of_b() {
        let b = Example::B.rep();
        let eqs = to_extended_equalities(&b).unwrap();
        let none: [Elem; 0] = [];
        let expected = vec![
            ExtCommEquality::new(none, vec![ONE], ONE),
            ExtCommEquality::new(none, vec![ONE, ONE], ALPHA),
            ExtCommEquality::new([ONE], vec![], ALPHA),
            ExtCommEquality::new(none, vec![ALPHA], ALPHA),
            ExtCommEquality::new(none, vec![ALPHA, ONE], ZERO),
            ExtCommEquality::new(none, vec![ALPHA, ALPHA], ZERO),
            ExtCommEquality::new([ZERO, ALPHA, ONE], vec![], ZERO),
            ExtCommEquality::new(none, vec![ZERO], ZERO),
        ];
        let got: BTreeSet<_> = eqs.into_iter().collect();
        assert_eq!(got, expected.into_iter().collect());
        let l = Arc::new(Lattice::chain3());
        let top = Rep::empty(l, 3);
        let eqs = to_extended_equalities(&top).unwrap();
        assert!(eqs.contains(&ExtCommEquality::new([ZERO, ALPHA, ONE], vec![], ONE)));
    }

    #[test]
    fn largest_sequences() {
        let l = Arc::new(Lattice::chain3());
        let (rep, report) = largest_from_equalities(l.clone(), &[]).unwrap();
        assert!(rep.is_empty() && report.is_empty());

        let phi = [eq(&[ONE], ALPHA), eq(&[ONE, ONE], ONE)];
        let (_, report) = largest_from_equalities(l.clone(), &phi).unwrap();
        assert_eq!(report, vec![true, false]);

        let phi = [eq(&[ONE, ONE], ALPHA), eq(&[ONE, ALPHA], ZERO)];
        let (rep, report) = largest_with_hc1_hc2(l.clone(), &phi).unwrap();
        assert_eq!(report, vec![true, true]);
        assert!(rep.equal_fn(&Example::B.rep()).unwrap());
    }

    #[test]
    fn lowering_arguments() {
        let l = Lattice::chain3();
        let lowered = lowered_multisets(&l, &[ALPHA, ONE]);
        assert_eq!(lowered.len(), 5);
        assert!(lowered.contains(&vec![ZERO, ZERO]));
        assert!(lowered.contains(&vec![ALPHA, ALPHA]));
    }

    #[test]
    fn example_names() {
        assert_eq!("b7".parse::<Example>().unwrap(), Example::B7);
        assert_eq!("DIV52".parse::<Example>().unwrap(), Example::Div52);
        assert_eq!(
            "B8".parse::<Example>(),
            Err(Error::UnknownExample("B8".to_string()))
        );
        let g = Example::Div52.rep();
        let l = g.lattice().clone();
        assert_eq!(l.name(g.eval(&NatVec::from([10, 20])).unwrap()), "26");
    }

    #[test]
    fn display() {
        let l = Lattice::chain3();
        assert_eq!(
            eq(&[ONE, ALPHA], ZERO).display(&l).to_string(),
            "[alpha,1] = 0"
        );
        assert_eq!(
            ExtCommEquality::new([ONE], vec![], ALPHA)
                .display(&l)
                .to_string(),
            "[{1}; Λ] = alpha"
        );
        assert_eq!(
            ExtCommEquality::new([], vec![ONE, ONE], ALPHA)
                .display(&l)
                .to_string(),
            "[∅; 1,1] = alpha"
        );
    }
}
