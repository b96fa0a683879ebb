//! Elementary unimodular generators and words in them.
//!
//! The four generator families are Suslin matrices of explicit unimodular
//! pairs:
//!
//! | kind      | matrix                      |
//! |-----------|-----------------------------|
//! | `Ei`      | `S_r(e_1 + λe_i, e_1)`      |
//! | `EiStar`  | `S_r(e_1, e_1 + λe_i)`      |
//! | `Ei1`     | `S_r(e_i + λe_1, e_i)`      |
//! | `Ei1Star` | `S_r(e_i, e_i + λe_1)`      |
//!
//! Words evaluate left to right.

mod lemmas;
mod unimodular;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

use crate::linalg::{LinalgError, RMatrix};
use crate::ring::{Elem, Ring, RingError};
use crate::suslin::{self, combine, unit_vector, SuslinError};

pub use lemmas::{
    excision_lift_and_retract, lemma03_factorization_check, lemma32_check, lemma32_printed_second, lemma32_word,
    lemma42_congruence, lemma42_product, lemma43_product, lemma44_alpha_check, lemma44_product,
    lemma44_second_display, lemma44_word, retract_matrix, Lemma32Variant, TbPattern,
};
pub use unimodular::{
    apply_transvections, complete_pair, is_unimodular_mod, orbit_enumerate, reduce_unimodular_modn, Completion,
    OrbitCounts, Transvection, DEFAULT_ORBIT_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("generator index {i} outside 2..={max}")]
    Index { i: usize, max: usize },
    #[error("only the four generator kinds can be truncated")]
    BadTruncation,
    #[error("vector length {len} does not match r + 1 = {expected}")]
    Length { len: usize, expected: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("vector is not unimodular")]
    NotUnimodular,
    #[error("{needed} vectors exceed the enumeration budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("malformed word: {0}")]
    Word(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Suslin(#[from] SuslinError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Ei,
    EiStar,
    Ei1,
    Ei1Star,
}

impl GenKind {
    pub const ALL: [GenKind; 4] = [GenKind::Ei, GenKind::EiStar, GenKind::Ei1, GenKind::Ei1Star];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Ei => "ei",
            GenKind::EiStar => "ei*",
            GenKind::Ei1 => "ei1",
            GenKind::Ei1Star => "ei1*",
        }
    }

    pub fn from_name(s: &str) -> Option<GenKind> {
        GenKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// The Suslin pair `(v, w)` of this generator.
    pub fn pair(self, i: usize, lambda: &Elem, r: usize) -> (Vec<Elem>, Vec<Elem>) {
        let ring = lambda.ring();
        let n = r + 1;
        let e1 = unit_vector(ring, n, 1);
        let ei = unit_vector(ring, n, i);
        let one = ring.int(1);
        match self {
            GenKind::Ei => (combine(&one, &e1, lambda, &ei), e1),
            GenKind::EiStar => (e1.clone(), combine(&one, &e1, lambda, &ei)),
            GenKind::Ei1 => (combine(&one, &ei, lambda, &e1), ei),
            GenKind::Ei1Star => (ei.clone(), combine(&one, &ei, lambda, &e1)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trunc {
    Top,
    Bot,
}

impl Trunc {
    pub fn name(self) -> &'static str {
        match self {
            Trunc::Top => "top",
            Trunc::Bot => "bot",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GenAtom {
    Gen { kind: GenKind, i: usize, lambda: Elem },
    SuslinOf { v: Vec<Elem>, w: Vec<Elem> },
    /// `S_r(e_i, e_i)`.
    Pi1i(usize),
    Top(Box<GenAtom>),
    Bot(Box<GenAtom>),
    Inv(Box<GenAtom>),
}

impl GenAtom {
    pub fn gen(kind: GenKind, i: usize, lambda: Elem) -> GenAtom {
        GenAtom::Gen { kind, i, lambda }
    }

    pub fn suslin(v: Vec<Elem>, w: Vec<Elem>) -> GenAtom {
        GenAtom::SuslinOf { v, w }
    }

    pub fn top(self) -> GenAtom {
        GenAtom::Top(Box::new(self))
    }

    pub fn bot(self) -> GenAtom {
        GenAtom::Bot(Box::new(self))
    }

    pub fn truncated(self, t: Trunc) -> GenAtom {
        match t {
            Trunc::Top => self.top(),
            Trunc::Bot => self.bot(),
        }
    }

    pub fn inv(self) -> GenAtom {
        match self {
            GenAtom::Inv(inner) => *inner,
            other => GenAtom::Inv(Box::new(other)),
        }
    }

    /// Applies `f` to every ring element inside the atom.
    pub fn map_scalars(&self, f: &dyn Fn(&Elem) -> Result<Elem, GenError>) -> Result<GenAtom, GenError> {
        Ok(match self {
            GenAtom::Gen { kind, i, lambda } => GenAtom::Gen { kind: *kind, i: *i, lambda: f(lambda)? },
            GenAtom::SuslinOf { v, w } => GenAtom::SuslinOf {
                v: v.iter().map(f).collect::<Result<_, _>>()?,
                w: w.iter().map(f).collect::<Result<_, _>>()?,
            },
            GenAtom::Pi1i(i) => GenAtom::Pi1i(*i),
            GenAtom::Top(a) => GenAtom::Top(Box::new(a.map_scalars(f)?)),
            GenAtom::Bot(a) => GenAtom::Bot(Box::new(a.map_scalars(f)?)),
            GenAtom::Inv(a) => GenAtom::Inv(Box::new(a.map_scalars(f)?)),
        })
    }
}

impl fmt::Display for GenAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenAtom::Gen { kind, i, lambda } => {
                let name = match kind {
                    GenKind::Ei => format!("E(e{i})"),
                    GenKind::EiStar => format!("E(e{i}*)"),
                    GenKind::Ei1 => format!("E(e{i}1)"),
                    GenKind::Ei1Star => format!("E(e{i}1*)"),
                };
                write!(f, "{name}({lambda})")
            }
            GenAtom::SuslinOf { v, w } => {
                let show = |x: &[Elem]| x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                write!(f, "S(({}), ({}))", show(v), show(w))
            }
            GenAtom::Pi1i(i) => write!(f, "S(e{i}, e{i})"),
            GenAtom::Top(a) => write!(f, "{a}^top"),
            GenAtom::Bot(a) => write!(f, "{a}^bot"),
            GenAtom::Inv(a) => write!(f, "({a})^-1"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GenWord(pub Vec<GenAtom>);

impl GenWord {
    pub fn new() -> GenWord {
        GenWord(Vec::new())
    }

    pub fn atoms(&self) -> &[GenAtom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: GenAtom) {
        self.0.push(a);
    }

    pub fn then(mut self, other: &GenWord) -> GenWord {
        self.0.extend(other.0.iter().cloned());
        self
    }

    /// The word for the inverse element.
    pub fn inverse(&self) -> GenWord {
        GenWord(self.0.iter().rev().cloned().map(GenAtom::inv).collect())
    }

    /// Same atoms in the opposite order.
    pub fn reversed(&self) -> GenWord {
        GenWord(self.0.iter().rev().cloned().collect())
    }

    /// `p q p⁻¹ q⁻¹`.
    pub fn commutator(p: &GenWord, q: &GenWord) -> GenWord {
        p.clone().then(q).then(&p.inverse()).then(&q.inverse())
    }

    pub fn map_scalars(&self, f: &dyn Fn(&Elem) -> Result<Elem, GenError>) -> Result<GenWord, GenError> {
        Ok(GenWord(self.0.iter().map(|a| a.map_scalars(f)).collect::<Result<_, _>>()?))
    }
}

impl From<GenAtom> for GenWord {
    fn from(a: GenAtom) -> GenWord {
        GenWord(vec![a])
    }
}

impl FromIterator<GenAtom> for GenWord {
    fn from_iter<T: IntoIterator<Item = GenAtom>>(iter: T) -> Self {
        GenWord(iter.into_iter().collect())
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" · "))
    }
}

fn check_index(i: usize, r: usize) -> Result<(), GenError> {
    if (2..=r + 1).contains(&i) {
        Ok(())
    } else {
        Err(GenError::Index { i, max: r + 1 })
    }
}

fn check_scalar(x: &Elem, ring: &Ring) -> Result<(), GenError> {
    if x.ring() == ring {
        Ok(())
    } else {
        Err(RingError::Mismatch(x.ring().to_string(), ring.to_string()).into())
    }
}

/// The `2^r × 2^r` matrix of one atom.
pub fn atom_matrix(atom: &GenAtom, r: usize, ring: &Ring) -> Result<RMatrix, GenError> {
    match atom {
        GenAtom::Gen { kind, i, lambda } => {
            check_index(*i, r)?;
            check_scalar(lambda, ring)?;
            let (v, w) = kind.pair(*i, lambda, r);
            Ok(suslin::suslin_matrix(&v, &w)?)
        }
        GenAtom::SuslinOf { v, w } => {
            for x in [v, w] {
                if x.len() != r + 1 {
                    return Err(GenError::Length { len: x.len(), expected: r + 1 });
                }
            }
            for x in v.iter().chain(w) {
                check_scalar(x, ring)?;
            }
            Ok(suslin::suslin_matrix(v, w)?)
        }
        GenAtom::Pi1i(i) => {
            check_index(*i, r)?;
            let ei = unit_vector(ring, r + 1, *i);
            Ok(suslin::suslin_matrix(&ei, &ei)?)
        }
        GenAtom::Top(inner) | GenAtom::Bot(inner) => {
            if !matches!(**inner, GenAtom::Gen { .. }) {
                return Err(GenError::BadTruncation);
            }
            let m = atom_matrix(inner, r, ring)?;
            Ok(if matches!(atom, GenAtom::Top(_)) { m.top()? } else { m.bot()? })
        }
        GenAtom::Inv(inner) => match &**inner {
            GenAtom::Gen { kind, i, lambda } => {
                check_index(*i, r)?;
                check_scalar(lambda, ring)?;
                let (v, w) = kind.pair(*i, lambda, r);
                Ok(suslin::suslin_inverse(&v, &w)?)
            }
            GenAtom::SuslinOf { v, w } => {
                atom_matrix(inner, r, ring)?;
                Ok(suslin::suslin_inverse(v, w)?)
            }
            GenAtom::Pi1i(_) => Ok(atom_matrix(inner, r, ring)?.transpose()),
            GenAtom::Inv(a) => atom_matrix(a, r, ring),
            GenAtom::Top(_) | GenAtom::Bot(_) => Ok(atom_matrix(inner, r, ring)?.inverse()?),
        },
    }
}

/// Left-to-right product of the atoms; `I` for the empty word.
pub fn word_matrix(word: &GenWord, r: usize, ring: &Ring) -> Result<RMatrix, GenError> {
    let mut acc = RMatrix::identity(ring, 1 << r);
    for a in word.atoms() {
        acc = acc.try_mul(&atom_matrix(a, r, ring)?)?;
    }
    Ok(acc)
}

/// JSON form of one atom: `{kind, i, lambda, wrap}` for generators,
/// `{kind: "pi1i", i}` and `{kind: "suslin", v, w}` for the others.
/// `wrap` is one of `none`, `top`, `bot`, `inv`, `top-inv`, `bot-inv`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct AtomSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wrap: Option<String>,
}

impl AtomSpec {
    pub fn to_atom(&self, ring: &Ring) -> Result<GenAtom, GenError> {
        let need_i = || self.i.ok_or_else(|| GenError::Word(format!("`{}` needs an index `i`", self.kind)));
        let base = match self.kind.as_str() {
            "pi1i" => GenAtom::Pi1i(need_i()?),
            "suslin" => {
                let parse = |xs: &Option<Vec<String>>, name: &str| -> Result<Vec<Elem>, GenError> {
                    xs.as_ref()
                        .ok_or_else(|| GenError::Word(format!("`suslin` needs `{name}`")))?
                        .iter()
                        .map(|t| ring.parse_elem(t).map_err(GenError::from))
                        .collect()
                };
                GenAtom::suslin(parse(&self.v, "v")?, parse(&self.w, "w")?)
            }
            k => {
                let kind = GenKind::from_name(k).ok_or_else(|| GenError::Word(format!("unknown kind `{k}`")))?;
                let lambda = ring.parse_elem(self.lambda.as_deref().unwrap_or("1"))?;
                GenAtom::gen(kind, need_i()?, lambda)
            }
        };
        Ok(match self.wrap.as_deref().unwrap_or("none") {
            "none" => base,
            "top" => base.top(),
            "bot" => base.bot(),
            "inv" => base.inv(),
            "top-inv" => base.top().inv(),
            "bot-inv" => base.bot().inv(),
            other => return Err(GenError::Word(format!("unknown wrap `{other}`"))),
        })
    }

    pub fn from_atom(atom: &GenAtom) -> Result<AtomSpec, GenError> {
        let (core, wrap) = match atom {
            GenAtom::Top(a) => (&**a, "top"),
            GenAtom::Bot(a) => (&**a, "bot"),
            GenAtom::Inv(a) => match &**a {
                GenAtom::Top(b) => (&**b, "top-inv"),
                GenAtom::Bot(b) => (&**b, "bot-inv"),
                other => (other, "inv"),
            },
            other => (other, "none"),
        };
        let mut spec = AtomSpec { wrap: Some(wrap.to_string()), ..AtomSpec::default() };
        match core {
            GenAtom::Gen { kind, i, lambda } => {
                spec.kind = kind.name().to_string();
                spec.i = Some(*i);
                spec.lambda = Some(lambda.to_string());
            }
            GenAtom::Pi1i(i) => {
                spec.kind = "pi1i".into();
                spec.i = Some(*i);
            }
            GenAtom::SuslinOf { v, w } => {
                spec.kind = "suslin".into();
                spec.v = Some(v.iter().map(ToString::to_string).collect());
                spec.w = Some(w.iter().map(ToString::to_string).collect());
            }
            _ => return Err(GenError::Word(format!("cannot serialize nested atom {atom}"))),
        }
        Ok(spec)
    }
}

impl GenWord {
    pub fn from_json(ring: &Ring, json: &Json) -> Result<GenWord, GenError> {
        let specs: Vec<AtomSpec> =
            serde_json::from_value(json.clone()).map_err(|e| GenError::Word(e.to_string()))?;
        specs.iter().map(|s| s.to_atom(ring)).collect()
    }

    pub fn to_json(&self) -> Result<Json, GenError> {
        let specs = self.0.iter().map(AtomSpec::from_atom).collect::<Result<Vec<_>, _>>()?;
        Ok(serde_json::to_value(specs).expect("atom specs serialize"))
    }
}

#[cfg(test)]
mod tests;
