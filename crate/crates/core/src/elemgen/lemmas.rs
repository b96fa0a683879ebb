//! Explicit relations among generators: truncation rewrites, congruences
//! and the factorizations used for `[u] ⊥ [u⁻¹]`.

use crate::linalg::RMatrix;
use crate::ring::{excision_retract, Elem, Ring, RingKind};
use crate::suslin::{combine, unit_vector};

use super::{atom_matrix, word_matrix, GenAtom, GenError, GenKind, GenWord, Trunc};

/// Which of the two truncation rewrites: `E(e_i^*)(-2λ)` or `E(e_i)(-2λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma32Variant {
    First,
    Second,
}

impl Lemma32Variant {
    pub fn kind(self) -> GenKind {
        match self {
            Lemma32Variant::First => GenKind::EiStar,
            Lemma32Variant::Second => GenKind::Ei,
        }
    }
}

fn check_pair_indices(i: usize, j: usize, r: usize) -> Result<(), GenError> {
    for k in [i, j] {
        if !(2..=r + 1).contains(&k) {
            return Err(GenError::Index { i: k, max: r + 1 });
        }
    }
    if i == j {
        return Err(GenError::Precondition("the rewrite needs i != j".into()));
    }
    Ok(())
}

/// `S_r(a·e_1 + b·e_k, c·e_1 + d·e_l)` as an atom.
fn s_atom(ring: &Ring, r: usize, v: (&Elem, &Elem, usize), w: (&Elem, &Elem, usize)) -> GenAtom {
    let n = r + 1;
    let e1 = unit_vector(ring, n, 1);
    GenAtom::suslin(
        combine(v.0, &e1, v.1, &unit_vector(ring, n, v.2)),
        combine(w.0, &e1, w.1, &unit_vector(ring, n, w.2)),
    )
}

/// Left side and right-hand word of the truncation rewrite for
/// `E(c)(-2λ)^{tb}` with `c = e_i` or `e_i^*`, using the auxiliary index `j`.
///
/// The `top` form is the `bot` word read backwards.
pub fn lemma32_word(
    variant: Lemma32Variant,
    tb: Trunc,
    i: usize,
    j: usize,
    lambda: &Elem,
    r: usize,
) -> Result<(GenAtom, GenWord), GenError> {
    check_pair_indices(i, j, r)?;
    let ring = lambda.ring();
    let one = ring.int(1);
    let neg = ring.int(-1);
    let one_plus = &one + lambda;
    let one_minus = &one - lambda;
    let neg_lambda = -lambda;
    let lhs = GenAtom::gen(variant.kind(), i, ring.int(-2) * lambda).truncated(tb);
    let gen = |k, x: &Elem| GenWord::from(GenAtom::gen(variant.kind(), k, x.clone()));
    let bot_word: GenWord = match variant {
        Lemma32Variant::First => [
            s_atom(ring, r, (&one, &neg, j), (&one, &neg, i)),
            s_atom(ring, r, (&one_plus, &one, j), (&one, &neg_lambda, j)),
            s_atom(ring, r, (&one, &neg, j), (&one, &one, i)),
            s_atom(ring, r, (&one_minus, &one, j), (&one, lambda, j)),
        ]
        .into_iter()
        .collect::<GenWord>()
        .then(&GenWord::commutator(&gen(j, lambda), &gen(i, &one))),
        Lemma32Variant::Second => GenWord::commutator(&gen(i, &neg), &gen(j, &neg_lambda)).then(
            &[
                s_atom(ring, r, (&one, lambda, j), (&one_minus, &one, j)),
                s_atom(ring, r, (&one, &one, i), (&one, &neg, j)),
                s_atom(ring, r, (&one, &neg_lambda, j), (&one_plus, &one, j)),
                s_atom(ring, r, (&one, &neg, i), (&one, &neg, j)),
            ]
            .into_iter()
            .collect(),
        ),
    };
    let rhs = match tb {
        Trunc::Bot => bot_word,
        Trunc::Top => bot_word.reversed(),
    };
    Ok((lhs, rhs))
}

/// The second rewrite with the factor `S_r(e_1+e_i, e_1+e_j)` in place of
/// `S_r(e_1+e_i, e_1-e_j)`; this form is not an identity.
pub fn lemma32_printed_second(i: usize, j: usize, lambda: &Elem, r: usize) -> Result<(GenAtom, GenWord), GenError> {
    let (lhs, mut rhs) = lemma32_word(Lemma32Variant::Second, Trunc::Bot, i, j, lambda, r)?;
    let ring = lambda.ring();
    let one = ring.int(1);
    rhs.0[5] = s_atom(ring, r, (&one, &one, i), (&one, &one, j));
    Ok((lhs, rhs))
}

/// Evaluates both sides of [`lemma32_word`] and compares them.
pub fn lemma32_check(
    variant: Lemma32Variant,
    tb: Trunc,
    i: usize,
    j: usize,
    lambda: &Elem,
    r: usize,
) -> Result<bool, GenError> {
    let ring = lambda.ring();
    if !ring.int(2).is_unit() {
        return Err(GenError::Precondition(format!("2 is not invertible in {ring}")));
    }
    let (lhs, rhs) = lemma32_word(variant, tb, i, j, lambda, r)?;
    Ok(atom_matrix(&lhs, r, ring)? == word_matrix(&rhs, r, ring)?)
}

/// Truncations of the outer pair and of the middle factor in
/// `E(c)(Z)^{tb} E(d)(X³Y)^{tb} E(c)(-Z)^{tb}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TbPattern {
    pub outer: Trunc,
    pub middle: Trunc,
}

impl TbPattern {
    pub const ALL: [TbPattern; 4] = [
        TbPattern { outer: Trunc::Top, middle: Trunc::Top },
        TbPattern { outer: Trunc::Top, middle: Trunc::Bot },
        TbPattern { outer: Trunc::Bot, middle: Trunc::Top },
        TbPattern { outer: Trunc::Bot, middle: Trunc::Bot },
    ];
}

fn triple_word(c: GenKind, i: usize, z: &Elem, d: GenKind, j: usize, mid: &Elem, tb: TbPattern) -> GenWord {
    GenWord(vec![
        GenAtom::gen(c, i, z.clone()).truncated(tb.outer),
        GenAtom::gen(d, j, mid.clone()).truncated(tb.middle),
        GenAtom::gen(c, i, -z).truncated(tb.outer),
    ])
}

fn check_conjugating_kinds(c: GenKind, d: GenKind) -> Result<(), GenError> {
    for k in [c, d] {
        if !matches!(k, GenKind::Ei | GenKind::EiStar) {
            return Err(GenError::Precondition("kinds must be e_i or e_i^*".into()));
        }
    }
    Ok(())
}

/// `E(c)(Z)^{tb} E(d)(X³Y)^{tb} E(c)(-Z)^{tb}` over `Q[X, Y, Z]`.
pub fn lemma42_product(c: GenKind, i: usize, d: GenKind, j: usize, tb: TbPattern, r: usize) -> Result<RMatrix, GenError> {
    check_conjugating_kinds(c, d)?;
    let ring = Ring::poly(&Ring::rationals(), &["X", "Y", "Z"])?;
    let z = ring.var("Z")?;
    let mid = ring.var("X")?.pow(3) * ring.var("Y")?;
    word_matrix(&triple_word(c, i, &z, d, j, &mid, tb), r, &ring)
}

/// Whether the triple product is `≡ I` modulo `(X)`.
pub fn lemma42_congruence(c: GenKind, i: usize, d: GenKind, j: usize, tb: TbPattern, r: usize) -> Result<bool, GenError> {
    let m = lemma42_product(c, i, d, j, tb, r)?;
    let x = m.ring().var("X")?;
    Ok(m.congruent_mod(&RMatrix::identity(m.ring(), 1 << r), &x, 1)?)
}

/// `E(c)(1)^{bot} E(d)(s³x)^{top} E(c)(-1)^{bot}` over `Q[s, x]`, the
/// specialisation `Z = 1, X = s, Y = x` of the triple product.
pub fn lemma43_product(c: GenKind, i: usize, d: GenKind, j: usize, r: usize) -> Result<RMatrix, GenError> {
    check_conjugating_kinds(c, d)?;
    let ring = Ring::poly(&Ring::rationals(), &["s", "x"])?;
    let mid = ring.var("s")?.pow(3) * ring.var("x")?;
    let tb = TbPattern { outer: Trunc::Bot, middle: Trunc::Top };
    word_matrix(&triple_word(c, i, &ring.int(1), d, j, &mid, tb), r, &ring)
}

/// The five bracketed pairs, with parameters `p` (outer) and `q` (middle):
/// `{E(p)^b E*(p)^b}{E*(-1)^b E(-1)^b}{E(q)^t E*(q)^t}{E(1)^b E*(1)^b}{E(p)^t E*(p)^t}`
/// where `E = E(e_2)`, `E* = E(e_2^*)`.
pub fn lemma44_word(p: &Elem, q: &Elem) -> GenWord {
    let ring = p.ring();
    let e = |x: &Elem| GenAtom::gen(GenKind::Ei, 2, x.clone());
    let es = |x: &Elem| GenAtom::gen(GenKind::EiStar, 2, x.clone());
    let (one, neg) = (ring.int(1), ring.int(-1));
    GenWord(vec![
        e(p).bot(),
        es(p).bot(),
        es(&neg).bot(),
        e(&neg).bot(),
        e(q).top(),
        es(q).top(),
        e(&one).bot(),
        es(&one).bot(),
        e(p).top(),
        es(p).top(),
    ])
}

fn check_involution(u: &Elem) -> Result<Elem, GenError> {
    if !(u * u).is_one() {
        return Err(GenError::Precondition(format!("{u} does not square to 1")));
    }
    if !u.ring().int(2).is_unit() {
        return Err(GenError::Precondition(format!("2 is not invertible in {}", u.ring())));
    }
    Ok(u.inv()?)
}

/// `[u] ⊥ [u⁻¹]` as the product of [`lemma44_word`] with `p = 1 - u⁻¹`,
/// `q = 1 - u`.
pub fn lemma44_product(u: &Elem, r: usize) -> Result<RMatrix, GenError> {
    let u_inv = check_involution(u)?;
    let one = u.one_like();
    word_matrix(&lemma44_word(&(&one - &u_inv), &(&one - u)), r, u.ring())
}

/// The same product after rewriting `u⁻¹` as `u`: every parameter is `1 - u`.
pub fn lemma44_second_display(u: &Elem, r: usize) -> Result<RMatrix, GenError> {
    check_involution(u)?;
    let p = u.one_like() - u;
    word_matrix(&lemma44_word(&p, &p), r, u.ring())
}

/// Checks the regrouping `{outer-bot} α {outer-top}` with
/// `α = E*(-1)^b {E(-1)^b E(p)^t E(1)^b}{E(-1)^b E*(p)^t E(1)^b} E*(1)^b`,
/// `p = 1 - u`, against the second display.
pub fn lemma44_alpha_check(u: &Elem, r: usize) -> Result<bool, GenError> {
    check_involution(u)?;
    let ring = u.ring();
    let p = u.one_like() - u;
    let e = |x: &Elem| GenAtom::gen(GenKind::Ei, 2, x.clone());
    let es = |x: &Elem| GenAtom::gen(GenKind::EiStar, 2, x.clone());
    let (one, neg) = (ring.int(1), ring.int(-1));
    let alpha_grouped = GenWord(vec![
        es(&neg).bot(),
        e(&neg).bot(),
        e(&p).top(),
        e(&one).bot(),
        e(&neg).bot(),
        es(&p).top(),
        e(&one).bot(),
        es(&one).bot(),
    ]);
    let alpha_plain = GenWord(lemma44_word(&p, &p).0[2..8].to_vec());
    let outer_bot = GenWord(vec![e(&p).bot(), es(&p).bot()]);
    let outer_top = GenWord(vec![e(&p).top(), es(&p).top()]);
    let whole = outer_bot.then(&alpha_grouped).then(&outer_top);
    let a1 = word_matrix(&alpha_plain, r, ring)?;
    let a2 = word_matrix(&alpha_grouped, r, ring)?;
    Ok(a1 == a2 && word_matrix(&whole, r, ring)? == lemma44_second_display(u, r)?)
}

/// Checks `[α, β] = ητη⁻¹τ⁻¹ (τητ⁻¹α₀τη⁻¹τ⁻¹)(τηβ₀α₀⁻¹η⁻¹τ⁻¹)(τβ₀⁻¹τ⁻¹)`
/// with `η = αα₀⁻¹`, `τ = ββ₀⁻¹`.
pub fn lemma03_factorization_check(
    alpha: &RMatrix,
    beta: &RMatrix,
    alpha0: &RMatrix,
    beta0: &RMatrix,
) -> Result<bool, GenError> {
    let a0i = alpha0.inverse()?;
    let b0i = beta0.inverse()?;
    let eta = alpha.try_mul(&a0i)?;
    let tau = beta.try_mul(&b0i)?;
    let ei = eta.inverse()?;
    let ti = tau.inverse()?;
    let prod = |ms: &[&RMatrix]| -> Result<RMatrix, GenError> {
        let mut acc = ms[0].clone();
        for m in &ms[1..] {
            acc = acc.try_mul(m)?;
        }
        Ok(acc)
    };
    let lhs = prod(&[alpha, beta, &alpha.inverse()?, &beta.inverse()?])?;
    let rhs = prod(&[
        &eta, &tau, &ei, &ti,
        &tau, &eta, &ti, alpha0, &tau, &ei, &ti,
        &tau, &eta, beta0, &a0i, &ei, &ti,
        &tau, &b0i, &ti,
    ])?;
    Ok(lhs == rhs)
}

/// Entrywise `(r, i) ↦ r + i`.
pub fn retract_matrix(m: &RMatrix) -> Result<RMatrix, GenError> {
    let RingKind::Excision { base, .. } = m.ring().kind() else {
        return Err(crate::ring::RingError::NotExcision(m.ring().to_string()).into());
    };
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for i in 1..=m.rows() {
        for j in 1..=m.cols() {
            data.push(excision_retract(&m.get(i, j))?.into_value());
        }
    }
    Ok(RMatrix::from_values(base, m.rows(), m.cols(), data)?)
}

/// Lifts `α = I + α'` to `(I, α')` over the excision ring of `word`,
/// checks that `word` evaluates to the lift, retracts every atom parameter
/// and returns the retracted product, which must equal `α`.
pub fn excision_lift_and_retract(alpha: &RMatrix, word: &GenWord, exc: &Ring, r: usize) -> Result<RMatrix, GenError> {
    let RingKind::Excision { base, .. } = exc.kind() else {
        return Err(crate::ring::RingError::NotExcision(exc.to_string()).into());
    };
    if alpha.ring() != base {
        return Err(GenError::Precondition(format!("matrix over {}, expected {base}", alpha.ring())));
    }
    let n = 1usize << r;
    if alpha.shape() != (n, n) {
        return Err(GenError::Precondition(format!("expected a {n}x{n} matrix")));
    }
    let mut lift = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let delta = base.int(i64::from(i == j));
            let tail = alpha.get(i, j) - &delta;
            lift.push(exc.excision_pair(&delta, &tail)?.into_value());
        }
    }
    let lift = RMatrix::from_values(exc, n, n, lift)?;
    if word_matrix(word, r, exc)? != lift {
        return Err(GenError::Precondition("word does not evaluate to the lifted matrix".into()));
    }
    let retract = |x: &Elem| excision_retract(x).map_err(GenError::from);
    let mut acc = RMatrix::identity(base, n);
    for atom in word.atoms() {
        let image = retract_matrix(&atom_matrix(atom, r, exc)?)?;
        let down = atom_matrix(&atom.map_scalars(&retract)?, r, base)?;
        if image != down {
            return Err(GenError::Precondition(format!("retraction of {atom} is not the retracted atom")));
        }
        acc = acc.try_mul(&down)?;
    }
    if acc != *alpha {
        return Err(GenError::Precondition("retracted word does not evaluate to the matrix".into()));
    }
    Ok(acc)
}
