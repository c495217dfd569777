//! Exact learning of an antitone function from queries to its extension.
//!
//! The learner keeps a representation `G` lying on the graph of the target
//! `F`, so `F ≤ F_G` throughout. It repeatedly builds a complete
//! representation `H` of `F_G` and asks the oracle about every point of `H`.
//! If all answers agree, `F̂` passes through `H` and therefore equals `F̂_G`.
//! Otherwise a finite `b` with `F(b) < F_G(b)` exists below the disagreeing
//! point; adding `(b, F(b))` to `G` strictly lowers `F_G`, and since there is
//! no infinite descending chain of antitone functions the loop ends.

use std::cell::Cell;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::antitone::{ExtRep, Rep};
use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::vectors::{ExtVec, NatVec};

/// Black-box access to the extension `F̂` of an antitone function.
pub trait Oracle {
    fn dim(&self) -> usize;
    fn lattice(&self) -> &Arc<Lattice>;
    fn query(&self, x: &ExtVec) -> Elem;
}

/// Answers with `F̂_G` for a hidden representation `G`.
#[derive(Clone, Debug)]
pub struct RepOracle {
    rep: Rep,
}

pub fn oracle_from_rep(rep: Rep) -> RepOracle {
    RepOracle { rep }
}

impl RepOracle {
    pub fn rep(&self) -> &Rep {
        &self.rep
    }
}

impl Oracle for RepOracle {
    fn dim(&self) -> usize {
        self.rep.dim()
    }

    fn lattice(&self) -> &Arc<Lattice> {
        self.rep.lattice()
    }

    fn query(&self, x: &ExtVec) -> Elem {
        self.rep.value_ext(x)
    }
}

/// Answers with `⋀{δ : (d, δ) ∈ H, d ≤ x}`, the largest antitone function
/// through the points of `H`.
#[derive(Clone, Debug)]
pub struct ExtRepOracle {
    points: ExtRep,
}

pub fn oracle_from_ext_rep(points: ExtRep) -> ExtRepOracle {
    ExtRepOracle { points }
}

impl Oracle for ExtRepOracle {
    fn dim(&self) -> usize {
        self.points.dim()
    }

    fn lattice(&self) -> &Arc<Lattice> {
        self.points.lattice()
    }

    fn query(&self, x: &ExtVec) -> Elem {
        self.points.meet_below(x)
    }
}

/// Wraps a closure.
pub struct FnOracle<F> {
    lattice: Arc<Lattice>,
    dim: usize,
    f: F,
}

impl<F: Fn(&ExtVec) -> Elem> FnOracle<F> {
    pub fn new(lattice: Arc<Lattice>, dim: usize, f: F) -> Self {
        FnOracle { lattice, dim, f }
    }
}

impl<F: Fn(&ExtVec) -> Elem> Oracle for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    fn query(&self, x: &ExtVec) -> Elem {
        (self.f)(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LearnOptions {
    /// Maximum number of points added to `G`.
    pub max_rounds: usize,
    /// Maximum number of vectors tried in a single counterexample search.
    pub max_probes: usize,
}

impl Default for LearnOptions {
    fn default() -> Self {
        LearnOptions {
            max_rounds: 10_000,
            max_probes: 1_000_000,
        }
    }
}

/// One added point and the value of `F_G` there just before adding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub point: NatVec,
    pub before: Elem,
    pub after: Elem,
    /// Whether the point came straight from `H` rather than from a search.
    pub shortcut: bool,
}

#[derive(Clone, Debug)]
pub struct Learned {
    pub rep: Rep,
    pub steps: Vec<Step>,
    pub queries: usize,
}

impl Learned {
    pub fn rounds(&self) -> usize {
        self.steps.len()
    }
}

struct Counting<'a, O: ?Sized> {
    inner: &'a O,
    count: Cell<usize>,
}

impl<O: Oracle + ?Sized> Counting<'_, O> {
    fn ask(&self, x: &ExtVec) -> Elem {
        self.count.set(self.count.get() + 1);
        self.inner.query(x)
    }

    fn ask_nat(&self, x: &NatVec) -> Elem {
        self.ask(&x.to_ext())
    }
}

pub fn learn<O: Oracle + ?Sized>(oracle: &O, opts: LearnOptions) -> Result<Learned> {
    let lattice = oracle.lattice().clone();
    let dim = oracle.dim();
    let counting = Counting {
        inner: oracle,
        count: Cell::new(0),
    };
    let mut g = Rep::empty(lattice.clone(), dim);
    let mut steps = Vec::new();
    loop {
        let h = g.complete()?;
        let mut disagreement = None;
        let mut shortcut = None;
        for (a, delta) in h.points() {
            let answer = counting.ask(a);
            if answer == delta {
                continue;
            }
            if !lattice.leq(answer, delta) {
                return Err(Error::InconsistentOracle(format!(
                    "answer {} at {a} is not below the current upper bound {}",
                    lattice.name(answer),
                    lattice.name(delta)
                )));
            }
            if let Some(b) = a.to_finite() {
                shortcut = Some((b, answer));
                break;
            }
            disagreement.get_or_insert_with(|| a.clone());
        }
        let (b, answer, from_h) = match (shortcut, disagreement) {
            (Some((b, answer)), _) => (b, answer, true),
            (None, Some(a)) => {
                let (b, answer) = search_below(&counting, &g, &a, opts.max_probes)?;
                (b, answer, false)
            }
            (None, None) => {
                return Ok(Learned {
                    rep: g,
                    steps,
                    queries: counting.count.get(),
                })
            }
        };
        if steps.len() == opts.max_rounds {
            return Err(Error::RoundLimit(opts.max_rounds));
        }
        let before = g.value(&b);
        g.insert(b.clone(), answer)?;
        steps.push(Step {
            point: b,
            before,
            after: answer,
            shortcut: from_h,
        });
    }
}

/// Finds a finite `b ≤ a` with `F(b) < F_G(b)`, trying vectors by increasing
/// coordinate sum and lexicographically within one sum.
fn search_below<O: Oracle + ?Sized>(
    oracle: &Counting<'_, O>,
    g: &Rep,
    a: &ExtVec,
    max_probes: usize,
) -> Result<(NatVec, Elem)> {
    let lattice = g.lattice();
    let caps: Vec<Option<u64>> = a.coords().iter().map(|c| c.finite()).collect();
    let bounded = caps.iter().all(Option::is_some);
    let total: u64 = caps.iter().map(|c| c.unwrap_or(0)).sum();
    let mut probes = 0usize;
    let mut sum = 0u64;
    loop {
        let mut buf = vec![0u64; caps.len()];
        let found = compositions(&caps, sum, 0, &mut buf, &mut |b| {
            if probes == max_probes {
                return ControlFlow::Break(None);
            }
            probes += 1;
            let b = NatVec::new(b.to_vec());
            let answer = oracle.ask_nat(&b);
            if lattice.lt(answer, g.value(&b)) {
                ControlFlow::Break(Some((b, answer)))
            } else {
                ControlFlow::Continue(())
            }
        });
        match found {
            ControlFlow::Break(Some(hit)) => return Ok(hit),
            ControlFlow::Break(None) => {
                return Err(Error::SearchExhausted {
                    point: a.to_string(),
                    probes,
                })
            }
            ControlFlow::Continue(()) => {}
        }
        if bounded && sum >= total {
            return Err(Error::InconsistentOracle(format!(
                "no vector below {a} separates the oracle from the current hypothesis"
            )));
        }
        sum += 1;
    }
}

/// Calls `visit` on every vector with the given coordinate sum and
/// `buf[i] ≤ caps[i]`, in lexicographic order.
fn compositions<T>(
    caps: &[Option<u64>],
    remaining: u64,
    pos: usize,
    buf: &mut [u64],
    visit: &mut dyn FnMut(&[u64]) -> ControlFlow<T>,
) -> ControlFlow<T> {
    if pos + 1 == caps.len() {
        if caps[pos].is_none_or(|c| remaining <= c) {
            buf[pos] = remaining;
            return visit(buf);
        }
        return ControlFlow::Continue(());
    }
    if pos == caps.len() {
        return if remaining == 0 {
            visit(buf)
        } else {
            ControlFlow::Continue(())
        };
    }
    let upper = caps[pos].map_or(remaining, |c| c.min(remaining));
    for v in 0..=upper {
        buf[pos] = v;
        compositions(caps, remaining - v, pos + 1, buf, visit)?;
    }
    buf[pos] = 0;
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectors::{ext, ExtNat};

    fn div52_rep() -> Rep {
        let l = Arc::new(Lattice::divisors(52).unwrap());
        let pts = [
            (NatVec::from([10, 20]), l.find("26").unwrap()),
            (NatVec::from([30, 5]), l.find("4").unwrap()),
        ];
        Rep::new(l, 2, pts).unwrap()
    }

    #[test]
    fn oracle_from_rep_answers_extension() {
        let g = div52_rep();
        let o = oracle_from_rep(g.clone());
        let l = g.lattice().clone();
        assert_eq!(l.name(o.query(&ext(&[Some(29), None]))), "26");
        let x = NatVec::from([12, 30]);
        assert_eq!(o.query(&x.to_ext()), g.eval(&x).unwrap());
        assert_eq!(l.name(o.query(&ExtVec::infinite(2))), "2");
    }

    #[test]
    fn learns_div52() {
        let g = div52_rep();
        let learned = learn(&oracle_from_rep(g.clone()), LearnOptions::default()).unwrap();
        assert!(learned.rep.equal_fn(&g).unwrap());
        assert!(learned.queries > 0);
        for s in &learned.steps {
            assert!(g.lattice().lt(s.after, s.before));
        }
    }

    #[test]
    fn constant_top_needs_no_points() {
        let l = Arc::new(Lattice::chain(3).unwrap());
        let top = l.top();
        let learned = learn(&FnOracle::new(l, 2, move |_| top), LearnOptions::default()).unwrap();
        assert!(learned.rep.is_empty());
        assert_eq!(learned.rounds(), 0);
    }

    #[test]
    fn search_is_needed_for_points_beyond_the_hypothesis() {
        // the only drop happens far out on one axis, so the first hypothesis
        // disagrees only at an infinite point
        let l = Arc::new(Lattice::chain(2).unwrap());
        let g = Rep::new(l.clone(), 1, [(NatVec::from([4]), l.bottom())]).unwrap();
        let learned = learn(&oracle_from_rep(g.clone()), LearnOptions::default()).unwrap();
        assert!(learned.rep.equal_fn(&g).unwrap());
        assert!(learned.steps.iter().any(|s| !s.shortcut));
    }

    #[test]
    fn round_limit() {
        let g = div52_rep();
        let opts = LearnOptions {
            max_rounds: 1,
            ..LearnOptions::default()
        };
        assert_eq!(
            learn(&oracle_from_rep(g), opts).unwrap_err(),
            Error::RoundLimit(1)
        );
    }

    #[test]
    fn inconsistent_oracle_is_reported() {
        // diamond 0 < a, b < 1; the answer at (1, 1) rises above the meet
        // of the answers at (1, 0) and (0, 1)
        let names = ["0", "a", "b", "1"].map(String::from).to_vec();
        let leq = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let l = Arc::new(Lattice::from_leq(names, leq).unwrap());
        let o = FnOracle::new(l, 2, |x: &ExtVec| {
            let pos = |i| x.get(i) != ExtNat::Fin(0);
            match (pos(0), pos(1)) {
                (false, false) => Elem(3),
                (true, false) => Elem(1),
                (false, true) => Elem(2),
                _ if *x == ext(&[Some(1), Some(1)]) => Elem(3),
                _ => Elem(0),
            }
        });
        assert!(matches!(
            learn(&o, LearnOptions::default()),
            Err(Error::InconsistentOracle(_))
        ));
    }

    #[test]
    fn search_probe_limit() {
        let l = Arc::new(Lattice::chain(2).unwrap());
        let g = Rep::new(
            l,
            1,
            [(NatVec::from([50]), Lattice::chain(2).unwrap().bottom())],
        )
        .unwrap();
        let opts = LearnOptions {
            max_probes: 10,
            ..LearnOptions::default()
        };
        assert!(matches!(
            learn(&oracle_from_rep(g), opts),
            Err(Error::SearchExhausted { probes: 10, .. })
        ));
    }

    #[test]
    fn composition_order() {
        let mut seen = Vec::new();
        let caps = [Some(1), None];
        let mut buf = [0; 2];
        for s in 0..3 {
            let _ = compositions::<()>(&caps, s, 0, &mut buf, &mut |b| {
                seen.push(b.to_vec());
                ControlFlow::Continue(())
            });
        }
        assert_eq!(
            seen,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1]]
        );
    }
}
