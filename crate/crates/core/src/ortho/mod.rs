//! The action of Suslin matrices on the Suslin space: reflections, the
//! matrix of `T_{S_r(v,w)}`, elementary orthogonal transvections and the
//! homomorphism `φ` from generator words to `2(r+1)`-square matrices.
//!
//! Coordinates are taken in the ordered basis
//! `S_r(e_1,0), …, S_r(e_{r+1},0), S_r(0,e_1), …, S_r(0,e_{r+1})`, so index
//! `k` and `π(k) = k ± (r+1)` are hyperbolic partners.

mod tables;

use std::fmt;

use thiserror::Error;

use crate::elemgen::{lemma32_word, GenAtom, GenError, GenKind, GenWord, Lemma32Variant, Trunc};
use crate::linalg::{LinalgError, RMatrix};
use crate::ring::{Elem, Ring, RingError};
use crate::suslin::{inner, unit_vector, zero_vector, SuslinError};

pub use tables::{
    cor33_proof_fixtures, cor33_rows, cor34_rows, lemma41_check, lemma41_matrix, prop35_word, ProofStep,
    TableRow,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("index {k} outside 1..={max}")]
    Index { k: usize, max: usize },
    #[error("oe_{{{k},{l}}} needs l different from k and from its partner")]
    Partner { k: usize, l: usize },
    #[error("vector length {len} does not match r + 1 = {expected}")]
    Length { len: usize, expected: usize },
    #[error("⟨v, w⟩ = {0} is not 1")]
    NotUnimodular(String),
    #[error("no rewrite for {0}")]
    Unrewritable(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Suslin(#[from] SuslinError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The hyperbolic partner of `k` among `1..=2(r+1)`.
pub fn pi(k: usize, r: usize) -> Result<usize, OrthoError> {
    let n = r + 1;
    match k {
        k if (1..=n).contains(&k) => Ok(k + n),
        k if k > n && k <= 2 * n => Ok(k - n),
        _ => Err(OrthoError::Index { k, max: 2 * n }),
    }
}

/// A point `(s, t)` of `R^{2(r+1)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoVector {
    s: Vec<Elem>,
    t: Vec<Elem>,
}

impl OrthoVector {
    pub fn new(s: Vec<Elem>, t: Vec<Elem>) -> Result<OrthoVector, OrthoError> {
        if s.is_empty() || s.len() != t.len() {
            return Err(OrthoError::Length { len: t.len(), expected: s.len() });
        }
        Ok(OrthoVector { s, t })
    }

    /// `(e_k, 0)` for `k ≤ r+1`, `(0, e_{k-r-1})` beyond.
    pub fn basis(ring: &Ring, r: usize, k: usize) -> Result<OrthoVector, OrthoError> {
        let n = r + 1;
        pi(k, r)?;
        let zero = zero_vector(ring, n);
        Ok(if k <= n {
            OrthoVector { s: unit_vector(ring, n, k), t: zero }
        } else {
            OrthoVector { s: zero, t: unit_vector(ring, n, k - n) }
        })
    }

    pub fn r(&self) -> usize {
        self.s.len() - 1
    }

    pub fn s(&self) -> &[Elem] {
        &self.s
    }

    pub fn t(&self) -> &[Elem] {
        &self.t
    }

    /// Coordinates `(s_1, …, s_{r+1}, t_1, …, t_{r+1})`.
    pub fn coords(&self) -> Vec<Elem> {
        self.s.iter().chain(&self.t).cloned().collect()
    }

    fn scaled(&self, c: &Elem) -> OrthoVector {
        OrthoVector { s: self.s.iter().map(|x| c * x).collect(), t: self.t.iter().map(|x| c * x).collect() }
    }

    fn minus(&self, other: &OrthoVector) -> OrthoVector {
        let sub = |a: &[Elem], b: &[Elem]| a.iter().zip(b).map(|(x, y)| x - y).collect();
        OrthoVector { s: sub(&self.s, &other.s), t: sub(&self.t, &other.t) }
    }
}

/// `τ_{(v,w)}(s, t) = ⟨v,w⟩(s,t) - (⟨v,t⟩ + ⟨s,w⟩)(v,w)`.
pub fn reflection_apply(axis: &OrthoVector, arg: &OrthoVector) -> Result<OrthoVector, OrthoError> {
    if axis.s.len() != arg.s.len() {
        return Err(OrthoError::Length { len: arg.s.len(), expected: axis.s.len() });
    }
    let scale = inner(&axis.s, &axis.t)?;
    let shift = &inner(&axis.s, &arg.t)? + &inner(&arg.s, &axis.t)?;
    Ok(arg.scaled(&scale).minus(&axis.scaled(&shift)))
}

fn check_pair(v: &[Elem], w: &[Elem]) -> Result<usize, OrthoError> {
    if v.is_empty() || v.len() != w.len() {
        return Err(OrthoError::Length { len: w.len(), expected: v.len() });
    }
    Ok(v.len() - 1)
}

/// `I - (vᵀ; wᵀ)(w v)`, the reflection in `(v, w)` when `⟨v,w⟩ = 1`.
fn reflection_factor(v: &[Elem], w: &[Elem]) -> RMatrix {
    let ring = v[0].ring();
    let col: Vec<&Elem> = v.iter().chain(w).collect();
    let row: Vec<&Elem> = w.iter().chain(v).collect();
    let size = col.len();
    RMatrix::from_fn(ring, size, size, |p, q| {
        let prod = col[p - 1] * row[q - 1];
        if p == q { (&ring.int(1) - &prod).into_value() } else { (-prod).into_value() }
    })
}

/// The matrix of `T_{S_r(v,w)}`: `(I - (vᵀ; wᵀ)(w v))(I - (e_1ᵀ; e_1ᵀ)(e_1 e_1))`.
pub fn t_matrix(v: &[Elem], w: &[Elem]) -> Result<RMatrix, OrthoError> {
    let r = check_pair(v, w)?;
    let e1 = unit_vector(v[0].ring(), r + 1, 1);
    Ok(reflection_factor(v, w).try_mul(&reflection_factor(&e1, &e1))?)
}

/// The same matrix assembled column by column from the images of the
/// basis vectors, assuming `⟨v,w⟩ = 1`.
pub fn t_matrix_by_columns(v: &[Elem], w: &[Elem]) -> Result<RMatrix, OrthoError> {
    let r = check_pair(v, w)?;
    let n = r + 1;
    let ring = v[0].ring().clone();
    let zero = ring.int(0);
    let one = ring.int(1);
    let e = |k| unit_vector(&ring, n, k);
    let lin = |a: &Elem, x: &[Elem], b: &Elem, y: &[Elem]| crate::suslin::combine(a, x, b, y);
    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(2 * n);
    cols.push([v.iter().map(|x| &v[0] * x).collect(), lin(&v[0], w, &-&one, &e(1))].concat());
    for j in 2..=n {
        let b = &w[j - 1];
        cols.push([lin(&one, &e(j), &-b, v), lin(&zero, &e(j), &-b, w)].concat());
    }
    cols.push([lin(&w[0], v, &-&one, &e(1)), w.iter().map(|x| &w[0] * x).collect()].concat());
    for j in 2..=n {
        let a = &v[j - 1];
        cols.push([lin(&zero, &e(j), &-a, v), lin(&one, &e(j), &-a, w)].concat());
    }
    Ok(RMatrix::from_fn(&ring, 2 * n, 2 * n, |p, q| cols[q - 1][p - 1].value().clone()))
}

/// Generators of the elementary orthogonal group.
#[derive(Clone, Debug, PartialEq)]
pub enum OrthoGen {
    /// `oe_{kl}(λ) = I + λe_{kl} - λe_{π(l)π(k)}`.
    Oe { k: usize, l: usize, lambda: Elem },
    /// The signed permutation `T_{S_r(e_i, e_i)}`.
    Pi1i(usize),
}

impl OrthoGen {
    pub fn oe(k: usize, l: usize, lambda: Elem) -> OrthoGen {
        OrthoGen::Oe { k, l, lambda }
    }

    /// `oe_{π(l)π(k)}(-λ)`, the same matrix.
    pub fn twin(&self, r: usize) -> Result<OrthoGen, OrthoError> {
        match self {
            OrthoGen::Oe { k, l, lambda } => Ok(OrthoGen::oe(pi(*l, r)?, pi(*k, r)?, -lambda)),
            OrthoGen::Pi1i(_) => Ok(self.clone()),
        }
    }
}

impl fmt::Display for OrthoGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrthoGen::Oe { k, l, lambda } => write!(f, "oe_{{{k},{l}}}({lambda})"),
            OrthoGen::Pi1i(i) => write!(f, "pi_{{1,{i}}}"),
        }
    }
}

pub fn oe_matrix(g: &OrthoGen, r: usize, ring: &Ring) -> Result<RMatrix, OrthoError> {
    match g {
        OrthoGen::Oe { k, l, lambda } => {
            let (pk, pl) = (pi(*k, r)?, pi(*l, r)?);
            if l == k || *l == pk {
                return Err(OrthoError::Partner { k: *k, l: *l });
            }
            if lambda.ring() != ring {
                return Err(RingError::Mismatch(lambda.ring().to_string(), ring.to_string()).into());
            }
            let mut m = RMatrix::identity(ring, 2 * (r + 1));
            m.set(*k, *l, lambda.value().clone());
            m.set(pl, pk, (-lambda).into_value());
            Ok(m)
        }
        OrthoGen::Pi1i(i) => {
            check_gen_index(*i, r)?;
            let ei = unit_vector(ring, r + 1, *i);
            t_matrix(&ei, &ei)
        }
    }
}

/// Left-to-right product of generator matrices.
pub fn ortho_product(gens: &[OrthoGen], r: usize, ring: &Ring) -> Result<RMatrix, OrthoError> {
    let mut acc = RMatrix::identity(ring, 2 * (r + 1));
    for g in gens {
        acc = acc.try_mul(&oe_matrix(g, r, ring)?)?;
    }
    Ok(acc)
}

/// The hyperbolic form `[[0, I], [I, 0]]`.
pub fn psi(ring: &Ring, r: usize) -> RMatrix {
    let n = r + 1;
    RMatrix::from_fn(ring, 2 * n, 2 * n, |p, q| {
        if p.abs_diff(q) == n { ring.one() } else { ring.zero() }
    })
}

/// `MᵀψM - ψ`; zero exactly when `M` preserves the form.
pub fn so_form_residual(m: &RMatrix) -> Result<RMatrix, OrthoError> {
    let size = m.rows();
    if !m.is_square() || !size.is_multiple_of(2) || size == 0 {
        return Err(LinalgError::NotSquare { op: "so_form_residual", rows: m.rows(), cols: m.cols() }.into());
    }
    let form = psi(m.ring(), size / 2 - 1);
    Ok(m.transpose().try_mul(&form)?.try_mul(m)?.try_sub(&form)?)
}

/// `ψMᵀψ`, the inverse of a form-preserving `M`.
pub fn orthogonal_inverse(m: &RMatrix) -> Result<RMatrix, OrthoError> {
    let form = psi(m.ring(), m.rows() / 2 - 1);
    Ok(form.try_mul(&m.transpose())?.try_mul(&form)?)
}

fn check_gen_index(i: usize, r: usize) -> Result<(), OrthoError> {
    if (2..=r + 1).contains(&i) {
        Ok(())
    } else {
        Err(GenError::Index { i, max: r + 1 }.into())
    }
}

fn check_ring(x: &Elem, ring: &Ring) -> Result<(), OrthoError> {
    if x.ring() == ring {
        Ok(())
    } else {
        Err(RingError::Mismatch(x.ring().to_string(), ring.to_string()).into())
    }
}

/// Expresses a truncated generator `E(c)(μ)^{tb}` as a word of Suslin
/// matrices and a commutator, with `λ = -μ/2` and the auxiliary index the
/// smallest one other than `i`.
pub fn truncation_rewrite(atom: &GenAtom, r: usize) -> Result<GenWord, OrthoError> {
    let (tb, inner) = match atom {
        GenAtom::Top(a) => (Trunc::Top, a),
        GenAtom::Bot(a) => (Trunc::Bot, a),
        _ => return Err(OrthoError::Unrewritable(atom.to_string())),
    };
    let GenAtom::Gen { kind, i, lambda: mu } = &**inner else {
        return Err(OrthoError::Unrewritable(atom.to_string()));
    };
    let variant = match kind {
        GenKind::EiStar => Lemma32Variant::First,
        GenKind::Ei => Lemma32Variant::Second,
        GenKind::Ei1 | GenKind::Ei1Star => return Err(OrthoError::Unrewritable(atom.to_string())),
    };
    check_gen_index(*i, r)?;
    let Some(j) = (2..=r + 1).find(|j| j != i) else {
        return Err(OrthoError::Unrewritable(format!("{atom} at r = {r}")));
    };
    let half = mu
        .ring()
        .int(2)
        .inv()
        .map_err(|_| OrthoError::Unrewritable(format!("{atom}: 2 is not invertible")))?;
    let lambda = -(mu * &half);
    Ok(lemma32_word(variant, tb, *i, j, &lambda, r)?.1)
}

/// `φ` of one atom.
pub fn phi_atom(atom: &GenAtom, r: usize, ring: &Ring) -> Result<RMatrix, OrthoError> {
    match atom {
        GenAtom::Gen { kind, i, lambda } => {
            check_gen_index(*i, r)?;
            check_ring(lambda, ring)?;
            let (v, w) = kind.pair(*i, lambda, r);
            t_matrix(&v, &w)
        }
        GenAtom::SuslinOf { v, w } => {
            for x in [v, w] {
                if x.len() != r + 1 {
                    return Err(OrthoError::Length { len: x.len(), expected: r + 1 });
                }
            }
            for x in v.iter().chain(w) {
                check_ring(x, ring)?;
            }
            let d = inner(v, w)?;
            if !d.is_one() {
                return Err(OrthoError::NotUnimodular(d.to_string()));
            }
            t_matrix(v, w)
        }
        GenAtom::Pi1i(i) => oe_matrix(&OrthoGen::Pi1i(*i), r, ring),
        GenAtom::Top(_) | GenAtom::Bot(_) => phi_word(&truncation_rewrite(atom, r)?, r, ring),
        GenAtom::Inv(a) => orthogonal_inverse(&phi_atom(a, r, ring)?),
    }
}

/// `φ` of a word: the product of the atom images, `I` when empty.
pub fn phi_word(word: &GenWord, r: usize, ring: &Ring) -> Result<RMatrix, OrthoError> {
    let mut acc = RMatrix::identity(ring, 2 * (r + 1));
    for a in word.atoms() {
        acc = acc.try_mul(&phi_atom(a, r, ring)?)?;
    }
    Ok(acc)
}
