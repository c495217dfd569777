//! JSON documents for lattices, representations, equality sets and upsets.
//!
//! Vectors are arrays of numbers in which the string `"inf"` stands for `∞`.
//! Lattice elements are referred to by name. A lattice is either the name of
//! a built-in (`div52`, `chainN`) or an inline object with `elements` and
//! either `meet`/`join` tables or a `leq` matrix; table entries may be
//! indices or names.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::antitone::{ExtRep, Rep};
use crate::commutator::{CommEquality, Equality, ExtCommEquality};
use crate::error::Error;
use crate::lattice::{Elem, Lattice};
use crate::upset::UpSet;
use crate::vectors::{ExtNat, ExtVec, NatVec};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Invalid(msg.into()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum LatticeRef {
    Named(String),
    Inline(LatticeDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeDoc {
    elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meet: Option<Vec<Vec<Cell>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    join: Option<Vec<Vec<Cell>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    leq: Option<Vec<Vec<bool>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Fin(u64),
    Word(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    vec: Vec<Coord>,
    value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RepDoc {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice: Option<LatticeRef>,
    points: Vec<PointDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EqualityDoc {
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    set: Option<Vec<String>>,
    #[serde(default)]
    args: Vec<String>,
    rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EqualitiesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice: Option<LatticeRef>,
    equalities: Vec<EqualityDoc>,
}

fn resolve_lattice(r: Option<LatticeRef>, fallback: Option<&Arc<Lattice>>) -> Result<Arc<Lattice>> {
    match r {
        Some(LatticeRef::Named(name)) => match Lattice::builtin(&name) {
            Some(l) => Ok(Arc::new(l)),
            None => invalid(format!("unknown built-in lattice `{name}`")),
        },
        Some(LatticeRef::Inline(doc)) => Ok(Arc::new(lattice_from_doc(doc)?)),
        None => match fallback {
            Some(l) => Ok(l.clone()),
            None => invalid("no lattice given"),
        },
    }
}

fn lattice_from_doc(doc: LatticeDoc) -> Result<Lattice> {
    let names = doc.elements;
    let index = |c: &Cell| -> Result<usize> {
        match c {
            Cell::Index(i) => Ok(*i),
            Cell::Name(n) => names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| FormatError::Domain(Error::UnknownElement(n.clone()))),
        }
    };
    let table = |t: &[Vec<Cell>]| -> Result<Vec<Vec<usize>>> {
        t.iter()
            .map(|row| row.iter().map(&index).collect())
            .collect()
    };
    let lattice = match (&doc.meet, &doc.join, doc.leq) {
        (Some(m), Some(j), None) => Lattice::from_tables(names.clone(), table(m)?, table(j)?),
        (None, None, Some(leq)) => Lattice::from_leq(names.clone(), leq),
        _ => return invalid("a lattice needs either both `meet` and `join` or only `leq`"),
    };
    Ok(lattice.map_err(Error::from)?)
}

fn lattice_doc(l: &Lattice) -> LatticeDoc {
    let cells = |t: Vec<Vec<usize>>| {
        t.into_iter()
            .map(|r| r.into_iter().map(Cell::Index).collect())
            .collect()
    };
    LatticeDoc {
        elements: l.names().to_vec(),
        meet: Some(cells(l.meet_table())),
        join: Some(cells(l.join_table())),
        leq: None,
    }
}

pub fn lattice_from_json(text: &str) -> Result<Lattice> {
    let r: LatticeRef = serde_json::from_str(text)?;
    Ok(Arc::unwrap_or_clone(resolve_lattice(Some(r), None)?))
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    serde_json::to_value(lattice_doc(l)).expect("lattice documents serialize")
}

fn element(l: &Lattice, name: &str) -> Result<Elem> {
    l.find(name)
        .ok_or_else(|| FormatError::Domain(Error::UnknownElement(name.to_string())))
}

fn elements(l: &Lattice, names: &[String]) -> Result<Vec<Elem>> {
    names.iter().map(|n| element(l, n)).collect()
}

fn ext_coord(c: &Coord) -> Result<ExtNat> {
    match c {
        Coord::Fin(n) => Ok(ExtNat::Fin(*n)),
        Coord::Word(w) if w == "inf" => Ok(ExtNat::Inf),
        Coord::Word(w) => invalid(format!("expected a number or \"inf\", found \"{w}\"")),
    }
}

fn coord_doc(c: ExtNat) -> Coord {
    match c {
        ExtNat::Fin(n) => Coord::Fin(n),
        ExtNat::Inf => Coord::Word("inf".to_string()),
    }
}

/// Parses `"3,inf,0"`, the command-line spelling of a vector.
pub fn parse_point(text: &str) -> Result<ExtVec> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.trim().is_empty() {
        return Ok(ExtVec::new(Vec::new()));
    }
    text.split(',')
        .map(|t| match t.trim() {
            "inf" | "∞" => Ok(ExtNat::Inf),
            t => t
                .parse::<u64>()
                .map(ExtNat::Fin)
                .or_else(|_| invalid(format!("bad coordinate `{t}`"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(ExtVec::new)
}

pub fn ext_vec_to_json(v: &ExtVec) -> Value {
    serde_json::to_value(v.coords().iter().map(|&c| coord_doc(c)).collect::<Vec<_>>())
        .expect("vectors serialize")
}

pub fn nat_vec_to_json(v: &NatVec) -> Value {
    json!(v.coords())
}

fn parse_points(doc: &RepDoc, l: &Lattice) -> Result<Vec<(ExtVec, Elem)>> {
    doc.points
        .iter()
        .map(|p| {
            let v = p.vec.iter().map(ext_coord).collect::<Result<Vec<_>>>()?;
            Ok((ExtVec::new(v), element(l, &p.value)?))
        })
        .collect()
}

/// Reads a representation; `lattice` is used when the document has none.
pub fn rep_from_json(text: &str, lattice: Option<&Arc<Lattice>>) -> Result<Rep> {
    let doc: RepDoc = serde_json::from_str(text)?;
    let l = resolve_lattice(doc.lattice.clone(), lattice)?;
    let mut points = Vec::new();
    for (v, e) in parse_points(&doc, &l)? {
        match v.to_finite() {
            Some(v) => points.push((v, e)),
            None => return invalid(format!("representation vectors must be finite, found {v}")),
        }
    }
    Ok(Rep::new(l, doc.dimension, points)?)
}

pub fn ext_rep_from_json(text: &str, lattice: Option<&Arc<Lattice>>) -> Result<ExtRep> {
    let doc: RepDoc = serde_json::from_str(text)?;
    let l = resolve_lattice(doc.lattice.clone(), lattice)?;
    let points = parse_points(&doc, &l)?;
    Ok(ExtRep::new(l, doc.dimension, points)?)
}

fn points_doc<'a>(l: &Lattice, points: impl Iterator<Item = (ExtVec, Elem)> + 'a) -> Vec<PointDoc> {
    points
        .map(|(v, e)| PointDoc {
            vec: v.coords().iter().map(|&c| coord_doc(c)).collect(),
            value: l.name(e).to_string(),
        })
        .collect()
}

pub fn rep_to_json(g: &Rep) -> Value {
    let l = g.lattice();
    let doc = RepDoc {
        dimension: g.dim(),
        lattice: Some(LatticeRef::Inline(lattice_doc(l))),
        points: points_doc(l, g.points().map(|(v, e)| (v.to_ext(), e))),
    };
    serde_json::to_value(doc).expect("representations serialize")
}

pub fn ext_rep_to_json(h: &ExtRep) -> Value {
    let l = h.lattice();
    let doc = RepDoc {
        dimension: h.dim(),
        lattice: Some(LatticeRef::Inline(lattice_doc(l))),
        points: points_doc(l, h.points().map(|(v, e)| (v.clone(), e))),
    };
    serde_json::to_value(doc).expect("representations serialize")
}

/// A plain or an extended commutator equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AnyEquality {
    Plain(CommEquality),
    Extended(ExtCommEquality),
}

impl Equality for AnyEquality {
    fn holds_in(&self, g: &Rep) -> crate::error::Result<bool> {
        match self {
            AnyEquality::Plain(e) => e.holds_in(g),
            AnyEquality::Extended(e) => e.holds_in(g),
        }
    }
}

impl AnyEquality {
    pub fn display(&self, l: &Lattice) -> String {
        match self {
            AnyEquality::Plain(e) => e.display(l).to_string(),
            AnyEquality::Extended(e) => e.display(l).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualitySet {
    pub lattice: Arc<Lattice>,
    pub equalities: Vec<AnyEquality>,
}

impl EqualitySet {
    /// The plain equalities, or `None` if some equality is extended.
    pub fn plain(&self) -> Option<Vec<CommEquality>> {
        self.equalities
            .iter()
            .map(|e| match e {
                AnyEquality::Plain(p) => Some(p.clone()),
                AnyEquality::Extended(_) => None,
            })
            .collect()
    }

    /// Every equality as an extended one; a plain equality has `S = ∅`.
    pub fn extended(&self) -> Vec<ExtCommEquality> {
        self.equalities
            .iter()
            .map(|e| match e {
                AnyEquality::Plain(p) => ExtCommEquality::new([], p.args.clone(), p.rhs),
                AnyEquality::Extended(x) => x.clone(),
            })
            .collect()
    }
}

pub fn equalities_from_json(text: &str, lattice: Option<&Arc<Lattice>>) -> Result<EqualitySet> {
    let doc: EqualitiesDoc = serde_json::from_str(text)?;
    let l = resolve_lattice(doc.lattice, lattice)?;
    let equalities = doc
        .equalities
        .iter()
        .map(|e| {
            let args = elements(&l, &e.args)?;
            let rhs = element(&l, &e.rhs)?;
            Ok(match &e.set {
                Some(s) => AnyEquality::Extended(ExtCommEquality::new(elements(&l, s)?, args, rhs)),
                None => AnyEquality::Plain(CommEquality::new(args, rhs)),
            })
        })
        .collect::<Result<_>>()?;
    Ok(EqualitySet {
        lattice: l,
        equalities,
    })
}

fn names(l: &Lattice, elems: &[Elem]) -> Vec<String> {
    elems.iter().map(|&e| l.name(e).to_string()).collect()
}

pub fn equalities_to_json(set: &EqualitySet) -> Value {
    let l = &set.lattice;
    let equalities = set
        .equalities
        .iter()
        .map(|e| match e {
            AnyEquality::Plain(p) => EqualityDoc {
                set: None,
                args: names(l, &p.args),
                rhs: l.name(p.rhs).to_string(),
            },
            AnyEquality::Extended(x) => EqualityDoc {
                set: Some(names(l, &x.set)),
                args: names(l, &x.args),
                rhs: l.name(x.rhs).to_string(),
            },
        })
        .collect();
    let doc = EqualitiesDoc {
        lattice: Some(LatticeRef::Inline(lattice_doc(l))),
        equalities,
    };
    serde_json::to_value(doc).expect("equality documents serialize")
}

pub fn upset_to_json(u: &UpSet, l: &Lattice, alpha: Elem, complement_maxima: &[ExtVec]) -> Value {
    json!({
        "dimension": u.dim(),
        "alpha": l.name(alpha),
        "generators": u.gens().iter().map(nat_vec_to_json).collect::<Vec<_>>(),
        "complement_maxima": complement_maxima.iter().map(ext_vec_to_json).collect::<Vec<_>>(),
    })
}
