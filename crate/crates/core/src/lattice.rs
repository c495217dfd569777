//! Finite bounded lattices.
//!
//! A [`Lattice`] is stored as dense meet and join tables over element indices.
//! Element names are only used at the I/O boundary. Every lattice value is
//! validated on construction, so downstream code may rely on the lattice
//! axioms without re-checking them.

use std::fmt;

use thiserror::Error;

/// An element of a [`Lattice`], referenced by its position in the declared
/// element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("table `{table}` must be {size}x{size}")]
    Shape { table: &'static str, size: usize },
    #[error("table `{table}` has out-of-range entry {value} at ({row}, {col})")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("{law} violated at ({})", .witness.join(", "))]
    Axiom {
        law: &'static str,
        witness: Vec<String>,
    },
    #[error("elements {0} and {1} have no {2}")]
    MissingBound(String, String, &'static str),
}

/// A finite bounded lattice with precomputed order, bounds and lower covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    meet: Vec<usize>,
    join: Vec<usize>,
    leq: Vec<bool>,
    top: Elem,
    bottom: Elem,
    lower_covers: Vec<Vec<Elem>>,
}

impl Lattice {
    /// Builds a lattice from meet and join tables, checking every axiom.
    pub fn from_tables(
        names: Vec<String>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
    ) -> Result<Self, LatticeError> {
        let m = names.len();
        if m == 0 {
            return Err(LatticeError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        let meet = flatten("meet", meet, m)?;
        let join = flatten("join", join, m)?;

        let w = |idx: &[usize]| idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
        let axiom = |law, idx: &[usize]| LatticeError::Axiom {
            law,
            witness: w(idx),
        };
        let mt = |a: usize, b: usize| meet[a * m + b];
        let jn = |a: usize, b: usize| join[a * m + b];

        for a in 0..m {
            if mt(a, a) != a {
                return Err(axiom("meet idempotence", &[a]));
            }
            if jn(a, a) != a {
                return Err(axiom("join idempotence", &[a]));
            }
        }
        for a in 0..m {
            for b in 0..m {
                if mt(a, b) != mt(b, a) {
                    return Err(axiom("meet commutativity", &[a, b]));
                }
                if jn(a, b) != jn(b, a) {
                    return Err(axiom("join commutativity", &[a, b]));
                }
                if mt(a, jn(a, b)) != a {
                    return Err(axiom("absorption a ∧ (a ∨ b) = a", &[a, b]));
                }
                if jn(a, mt(a, b)) != a {
                    return Err(axiom("absorption a ∨ (a ∧ b) = a", &[a, b]));
                }
                if (mt(a, b) == a) != (jn(a, b) == b) {
                    return Err(axiom("order consistency", &[a, b]));
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mt(mt(a, b), c) != mt(a, mt(b, c)) {
                        return Err(axiom("meet associativity", &[a, b, c]));
                    }
                    if jn(jn(a, b), c) != jn(a, jn(b, c)) {
                        return Err(axiom("join associativity", &[a, b, c]));
                    }
                }
            }
        }

        // Absorption and associativity make these the unique bounds.
        let top = (1..m).fold(0, jn);
        let bottom = (1..m).fold(0, &mt);

        let leq: Vec<bool> = (0..m * m).map(|k| mt(k / m, k % m) == k / m).collect();
        let lower_covers = (0..m)
            .map(|a| {
                (0..m)
                    .filter(|&b| b != a && leq[b * m + a])
                    .filter(|&b| {
                        !(0..m).any(|c| c != a && c != b && leq[b * m + c] && leq[c * m + a])
                    })
                    .map(Elem)
                    .collect()
            })
            .collect();

        Ok(Self {
            names,
            meet,
            join,
            leq,
            top: Elem(top),
            bottom: Elem(bottom),
            lower_covers,
        })
    }

    /// Builds a lattice from its order relation. Meets and joins are derived
    /// as greatest lower and least upper bounds, then validated as usual.
    pub fn from_leq(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let m = names.len();
        if m == 0 {
            return Err(LatticeError::Empty);
        }
        if leq.len() != m || leq.iter().any(|row| row.len() != m) {
            return Err(LatticeError::Shape {
                table: "leq",
                size: m,
            });
        }
        let le = |a: usize, b: usize| leq[a][b];
        let axiom = |law, idx: &[usize]| LatticeError::Axiom {
            law,
            witness: idx.iter().map(|&i| names[i].clone()).collect(),
        };
        for a in 0..m {
            if !le(a, a) {
                return Err(axiom("reflexivity", &[a]));
            }
            for b in 0..m {
                if a != b && le(a, b) && le(b, a) {
                    return Err(axiom("antisymmetry", &[a, b]));
                }
                for c in 0..m {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(axiom("transitivity", &[a, b, c]));
                    }
                }
            }
        }

        let bound = |a: usize, b: usize, lower: bool| -> Result<usize, LatticeError> {
            let is_bound = |c: usize| {
                if lower {
                    le(c, a) && le(c, b)
                } else {
                    le(a, c) && le(b, c)
                }
            };
            let bounds: Vec<usize> = (0..m).filter(|&c| is_bound(c)).collect();
            bounds
                .iter()
                .copied()
                .find(|&g| {
                    bounds
                        .iter()
                        .all(|&c| if lower { le(c, g) } else { le(g, c) })
                })
                .ok_or_else(|| {
                    LatticeError::MissingBound(
                        names[a].clone(),
                        names[b].clone(),
                        if lower {
                            "greatest lower bound"
                        } else {
                            "least upper bound"
                        },
                    )
                })
        };

        let mut meet = vec![vec![0; m]; m];
        let mut join = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                meet[a][b] = bound(a, b, true)?;
                join[a][b] = bound(a, b, false)?;
            }
        }
        Self::from_tables(names, meet, join)
    }

    /// The chain `0 < 1 < ... < n-1`, with elements named by their rank.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let meet = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        Self::from_tables(names, meet, join)
    }

    /// The three-element chain `0 < alpha < 1`.
    pub fn chain3() -> Self {
        let names = ["0", "alpha", "1"].map(String::from).to_vec();
        let meet = (0..3).map(|a| (0..3).map(|b| a.min(b)).collect()).collect();
        let join = (0..3).map(|a| (0..3).map(|b| a.max(b)).collect()).collect();
        Self::from_tables(names, meet, join).expect("chain is a lattice")
    }

    /// Divisors of `n` ordered by divisibility, in increasing numeric order.
    pub fn divisors(n: u64) -> Result<Self, LatticeError> {
        let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        let pos = |v: u64| {
            divs.iter()
                .position(|&d| d == v)
                .expect("closed under gcd/lcm")
        };
        let meet = divs
            .iter()
            .map(|&a| divs.iter().map(|&b| pos(gcd(a, b))).collect())
            .collect();
        let join = divs
            .iter()
            .map(|&a| divs.iter().map(|&b| pos(a / gcd(a, b) * b)).collect())
            .collect();
        Self::from_tables(divs.iter().map(u64::to_string).collect(), meet, join)
    }

    /// Lattices available by name in documents: `div52`, `chain3`, and
    /// `chainN` for any `N >= 1`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "div52" => Self::divisors(52).ok(),
            "chain3" => Some(Self::chain3()),
            _ => name
                .strip_prefix("chain")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .and_then(|n| Self::chain(n).ok()),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// All elements in declared order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(Elem)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.size()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.0]
    }

    pub fn find(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem)
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.0 * self.size() + b.0])
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.0 * self.size() + b.0])
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.size() + b.0]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    /// Elements covered by `a`, i.e. all `b < a` with nothing strictly between.
    pub fn lower_covers(&self, a: Elem) -> &[Elem] {
        &self.lower_covers[a.0]
    }

    /// Meet of a finite set; the empty meet is the top element.
    pub fn big_meet<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// Join of a finite set; the empty join is the bottom element.
    pub fn big_join<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems
            .into_iter()
            .fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// The meet table as nested rows of indices.
    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        self.meet
            .chunks(self.size())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        self.join
            .chunks(self.size())
            .map(<[usize]>::to_vec)
            .collect()
    }
}

fn flatten(
    table: &'static str,
    rows: Vec<Vec<usize>>,
    m: usize,
) -> Result<Vec<usize>, LatticeError> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(LatticeError::Shape { table, size: m });
    }
    for (row, r) in rows.iter().enumerate() {
        if let Some(col) = r.iter().position(|&v| v >= m) {
            return Err(LatticeError::OutOfRange {
                table,
                row,
                col,
                value: r[col],
            });
        }
    }
    Ok(rows.into_iter().flatten().collect())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
