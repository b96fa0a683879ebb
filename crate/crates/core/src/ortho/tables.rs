//! Images of generator words under `φ`: the truncated-generator and
//! commutator tables, a word for every `oe_{kl}`, the block-by-block
//! computation behind the first table row, and the congruence of `T_β`.

use crate::elemgen::{GenAtom, GenKind, GenWord};
use crate::linalg::RMatrix;
use crate::ring::{Elem, Ring};
use crate::suslin::{combine, unit_vector};

use super::{ortho_product, phi_word, pi, t_matrix, OrthoError, OrthoGen};

/// A generator word and the product of orthogonal generators it should map to.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub label: String,
    pub word: GenWord,
    pub image: Vec<OrthoGen>,
}

impl TableRow {
    /// `(φ(word), expected)`.
    pub fn evaluate(&self, r: usize, ring: &Ring) -> Result<(RMatrix, RMatrix), OrthoError> {
        Ok((phi_word(&self.word, r, ring)?, ortho_product(&self.image, r, ring)?))
    }

    pub fn holds(&self, r: usize, ring: &Ring) -> Result<bool, OrthoError> {
        let (lhs, rhs) = self.evaluate(r, ring)?;
        Ok(lhs == rhs)
    }
}

fn gen(kind: GenKind, i: usize, lambda: &Elem) -> GenAtom {
    GenAtom::gen(kind, i, lambda.clone())
}

fn row(label: String, word: impl Into<GenWord>, image: Vec<OrthoGen>) -> TableRow {
    TableRow { label, word: word.into(), image }
}

/// The four truncated generators at `-λ` and their images.
pub fn cor33_rows(i: usize, lambda: &Elem, r: usize) -> Result<Vec<TableRow>, OrthoError> {
    let p1 = pi(1, r)?;
    let neg = -lambda;
    Ok(vec![
        row(format!("E(e{i}*)(-l)^bot"), gen(GenKind::EiStar, i, &neg).bot(), vec![OrthoGen::oe(p1, i, lambda.clone())]),
        row(format!("E(e{i})(-l)^top"), gen(GenKind::Ei, i, &neg).top(), vec![OrthoGen::oe(i, p1, neg.clone())]),
        row(format!("E(e{i}*)(-l)^top"), gen(GenKind::EiStar, i, &neg).top(), vec![OrthoGen::oe(1, i, lambda.clone())]),
        row(format!("E(e{i})(-l)^bot"), gen(GenKind::Ei, i, &neg).bot(), vec![OrthoGen::oe(i, 1, neg)]),
    ])
}

fn bracket(top_kind: GenKind, j: usize, lambda: &Elem, bot_kind: GenKind, i: usize) -> GenWord {
    let one = lambda.ring().int(1);
    GenWord::commutator(&gen(top_kind, j, lambda).top().into(), &gen(bot_kind, i, &one).bot().into())
}

/// The seven rows for the pair `i != j`: four untruncated generators at
/// index `i` and three commutators of truncated ones.
pub fn cor34_rows(i: usize, j: usize, lambda: &Elem, r: usize) -> Result<Vec<TableRow>, OrthoError> {
    if i == j {
        return Err(OrthoError::Partner { k: i, l: j });
    }
    let (p1, pi_, pj) = (pi(1, r)?, pi(i, r)?, pi(j, r)?);
    let l = lambda.clone();
    let neg = -lambda;
    Ok(vec![
        row(format!("E(e{i})(l)"), gen(GenKind::Ei, i, &l), vec![OrthoGen::oe(i, p1, l.clone()), OrthoGen::oe(i, 1, l.clone())]),
        row(
            format!("E(e{i}*)(l)"),
            gen(GenKind::EiStar, i, &l),
            vec![OrthoGen::oe(p1, i, neg.clone()), OrthoGen::oe(1, i, neg)],
        ),
        row(
            format!("E(e{i}1)(l)"),
            gen(GenKind::Ei1, i, &l),
            vec![OrthoGen::oe(1, i, l.clone()), OrthoGen::oe(1, pi_, l.clone()), OrthoGen::Pi1i(i)],
        ),
        row(
            format!("E(e{i}1*)(l)"),
            gen(GenKind::Ei1Star, i, &l),
            vec![OrthoGen::Pi1i(i), OrthoGen::oe(1, i, l.clone()), OrthoGen::oe(1, pi_, l.clone())],
        ),
        row(
            format!("[E(e{j}*)(l)^top, E(e{i})(1)^bot]"),
            bracket(GenKind::EiStar, j, &l, GenKind::Ei, i),
            vec![OrthoGen::oe(i, j, l.clone())],
        ),
        row(
            format!("[E(e{j})(l)^top, E(e{i})(1)^bot]"),
            bracket(GenKind::Ei, j, &l, GenKind::Ei, i),
            vec![OrthoGen::oe(i, pj, l.clone())],
        ),
        row(
            format!("[E(e{j}*)(l)^top, E(e{i}*)(1)^bot]"),
            bracket(GenKind::EiStar, j, &l, GenKind::EiStar, i),
            vec![OrthoGen::oe(pi_, j, l)],
        ),
    ])
}

/// A generator word whose image is `oe_{kl}(λ)`.
///
/// Pairs not in the tables directly are reached through
/// `oe_{kl}(λ) = oe_{π(l)π(k)}(-λ)`.
pub fn prop35_word(k: usize, l: usize, lambda: &Elem, r: usize) -> Result<GenWord, OrthoError> {
    let n = r + 1;
    let (pk, _) = (pi(k, r)?, pi(l, r)?);
    if k == l || l == pk {
        return Err(OrthoError::Partner { k, l });
    }
    let p1 = n + 1;
    let low = |x: usize| (2..=n).contains(&x);
    let high = |x: usize| (n + 2..=2 * n).contains(&x);
    let neg = -lambda;
    let word: GenWord = match (k, l) {
        (k, l) if k == p1 && low(l) => gen(GenKind::EiStar, l, &neg).bot().into(),
        (k, l) if low(k) && l == p1 => gen(GenKind::Ei, k, lambda).top().into(),
        (1, l) if low(l) => gen(GenKind::EiStar, l, &neg).top().into(),
        (k, 1) if low(k) => gen(GenKind::Ei, k, lambda).bot().into(),
        (k, l) if low(k) && low(l) => bracket(GenKind::EiStar, l, lambda, GenKind::Ei, k),
        (k, l) if low(k) && high(l) => bracket(GenKind::Ei, l - n, lambda, GenKind::Ei, k),
        (k, l) if high(k) && low(l) => bracket(GenKind::EiStar, l, lambda, GenKind::EiStar, k - n),
        _ => return prop35_word(pi(l, r)?, pk, &neg, r),
    };
    Ok(word)
}

/// One intermediate matrix of the block computation, recomputed and as displayed.
#[derive(Clone, Debug)]
pub struct ProofStep {
    pub name: &'static str,
    pub computed: RMatrix,
    pub displayed: RMatrix,
}

impl ProofStep {
    pub fn holds(&self) -> bool {
        self.computed == self.displayed
    }
}

/// Sums `I·id + Σ c·e_{ab}` in `(r+1)`-square blocks.
struct Blocks<'a> {
    ring: &'a Ring,
    n: usize,
}

impl Blocks<'_> {
    fn sum(&self, id: bool, terms: &[(Elem, usize, usize)]) -> RMatrix {
        let mut m = if id { RMatrix::identity(self.ring, self.n) } else { RMatrix::zeros(self.ring, self.n, self.n) };
        for (c, a, b) in terms {
            let cur = m.get(*a, *b);
            m.set(*a, *b, (&cur + c).into_value());
        }
        m
    }

    fn zero(&self) -> RMatrix {
        RMatrix::zeros(self.ring, self.n, self.n)
    }

    fn id(&self) -> RMatrix {
        RMatrix::identity(self.ring, self.n)
    }
}

fn quarters(m: &RMatrix) -> [RMatrix; 4] {
    let n = m.rows() / 2;
    [m.block(1, 1, n, n), m.block(1, n + 1, n, n), m.block(n + 1, 1, n, n), m.block(n + 1, n + 1, n, n)]
}

/// Recomputes each matrix in the block derivation of
/// `φ(E(e_i^*)(-2λ)^{bot}) = oe_{π(1)i}(2λ)` and pairs it with the
/// closed form written for it.
pub fn cor33_proof_fixtures(i: usize, j: usize, lambda: &Elem, r: usize) -> Result<Vec<ProofStep>, OrthoError> {
    let n = r + 1;
    if i == j || !(2..=n).contains(&i) || !(2..=n).contains(&j) {
        return Err(OrthoError::Partner { k: i, l: j });
    }
    let ring = lambda.ring();
    let l = lambda.clone();
    let c = |k: i64| ring.int(k);
    let one = c(1);
    let e = |k| unit_vector(ring, n, k);
    let vec2 = |a: &Elem, x: usize, b: &Elem, y: usize| combine(a, &e(x), b, &e(y));
    let bl = Blocks { ring, n };
    let two_l = &c(2) * &l;
    let l2 = &l * &l;
    let full = |q: [RMatrix; 4]| RMatrix::from_blocks(&q[0], &q[1], &q[2], &q[3]);

    let a = t_matrix(&vec2(&one, 1, &c(-1), j), &vec2(&one, 1, &c(-1), i))?;
    let b = t_matrix(&vec2(&(&one + &l), 1, &one, j), &vec2(&one, 1, &-&l, j))?;
    let cm = t_matrix(&vec2(&one, 1, &c(-1), j), &vec2(&one, 1, &one, i))?;
    let d = t_matrix(&vec2(&(&one - &l), 1, &one, j), &vec2(&one, 1, &l, j))?;
    let p = t_matrix(&e(1), &vec2(&one, 1, &l, j))?;
    let p_neg = t_matrix(&e(1), &vec2(&one, 1, &-&l, j))?;
    let q = t_matrix(&e(1), &vec2(&one, 1, &one, i))?;
    let q_neg = t_matrix(&e(1), &vec2(&one, 1, &c(-1), i))?;
    let ab = a.try_mul(&b)?;
    let cd = cm.try_mul(&d)?;
    let abcd = ab.try_mul(&cd)?;
    let pq = crate::linalg::commutator(&p, &q)?;
    let last = abcd.try_mul(&pq)?;

    let a_disp = full([
        bl.sum(true, &[(c(1), 1, i), (c(-1), j, 1), (c(-1), j, i)]),
        bl.sum(false, &[(c(1), 1, j), (c(-1), j, 1), (c(-1), j, j)]),
        bl.sum(false, &[(c(1), 1, i), (c(-1), i, 1), (c(-1), i, i)]),
        bl.sum(true, &[(c(1), 1, j), (c(-1), i, 1), (c(-1), i, j)]),
    ])?;
    let b_disp = [
        bl.sum(true, &[(&l * &(&l + &c(2)), 1, 1), (&l * &(&one + &l), 1, j), (&one + &l, j, 1), (l.clone(), j, j)]),
        bl.sum(false, &[(l.clone(), 1, 1), (-(&one + &l), 1, j), (c(1), j, 1), (c(-1), j, j)]),
        bl.sum(false, &[(l.clone(), 1, 1), (l.clone(), 1, j), (-(&l * &(&one + &l)), j, 1), (-&l2, j, j)]),
        bl.sum(true, &[(c(-1), 1, j), (-&l, j, 1), (l.clone(), j, j)]),
    ];
    let c_disp = full([
        bl.sum(true, &[(c(-1), 1, i), (c(-1), j, 1), (c(1), j, i)]),
        bl.sum(false, &[(c(1), 1, j), (c(-1), j, 1), (c(-1), j, j)]),
        bl.sum(false, &[(c(-1), 1, i), (c(1), i, 1), (c(-1), i, i)]),
        bl.sum(true, &[(c(1), 1, j), (c(1), i, 1), (c(1), i, j)]),
    ])?;
    let d_disp = [
        bl.sum(true, &[(&l * &(&l - &c(2)), 1, 1), (&l * &(&l - &one), 1, j), (&one - &l, j, 1), (-&l, j, j)]),
        bl.sum(false, &[(-&l, 1, 1), (&l - &one, 1, j), (c(1), j, 1), (c(-1), j, j)]),
        bl.sum(false, &[(-&l, 1, 1), (-&l, 1, j), (&l * &(&one - &l), j, 1), (-&l2, j, j)]),
        bl.sum(true, &[(c(-1), 1, j), (l.clone(), j, 1), (-&l, j, j)]),
    ];
    let alpha_disp = [
        bl.sum(true, &[(l.clone(), 1, 1), (l.clone(), 1, j), (-&l, j, 1), (-&l, j, j), (c(1), 1, i), (c(-1), j, i)]),
        bl.zero(),
        bl.sum(
            false,
            &[
                (c(1), 1, i),
                (-(&one + &two_l), i, 1),
                (-&two_l, i, j),
                (c(-1), i, i),
                (-&l2, 1, 1),
                (&l * &(&one - &l), 1, j),
                (-(&l * &(&one + &l)), j, 1),
                (-&l2, j, j),
            ],
        ),
        bl.sum(true, &[(c(-1), i, 1), (c(1), i, j), (-&l, j, 1), (l.clone(), j, j), (-&l, 1, 1), (l.clone(), 1, j)]),
    ];
    let beta_disp = [
        bl.sum(true, &[(-&l, 1, 1), (-&l, 1, j), (l.clone(), j, 1), (l.clone(), j, j), (c(-1), 1, i), (c(1), j, i)]),
        bl.zero(),
        bl.sum(
            false,
            &[
                (c(-1), 1, i),
                (-&l2, 1, 1),
                (-(&l * &(&one + &l)), 1, j),
                (&one - &two_l, i, 1),
                (-&two_l, i, j),
                (c(-1), i, i),
                (&l * &(&one - &l), j, 1),
                (-&l2, j, j),
            ],
        ),
        bl.sum(true, &[(c(-1), i, j), (-&l, 1, j), (l.clone(), j, 1), (-&l, j, j), (l.clone(), 1, 1), (c(1), i, 1)]),
    ];
    let abcd_disp = full([
        bl.id(),
        bl.zero(),
        bl.sum(false, &[(two_l.clone(), 1, i), (-&two_l, i, 1), (-&two_l, i, j), (two_l.clone(), j, i)]),
        bl.id(),
    ])?;
    let p_disp = full([
        bl.sum(true, &[(-&l, 1, j)]),
        bl.zero(),
        bl.sum(false, &[(l.clone(), j, 1), (-&l, 1, j), (-&l2, j, j)]),
        bl.sum(true, &[(l.clone(), j, 1)]),
    ])?;
    let p_inv_disp = full([
        bl.sum(true, &[(l.clone(), 1, j)]),
        bl.zero(),
        bl.sum(false, &[(-&l, j, 1), (l.clone(), 1, j), (-&l2, j, j)]),
        bl.sum(true, &[(-&l, j, 1)]),
    ])?;
    let q_disp = full([
        bl.sum(true, &[(c(-1), 1, i)]),
        bl.zero(),
        bl.sum(false, &[(c(-1), 1, i), (c(1), i, 1), (c(-1), i, i)]),
        bl.sum(true, &[(c(1), i, 1)]),
    ])?;
    let q_inv_disp = full([
        bl.sum(true, &[(c(1), 1, i)]),
        bl.zero(),
        bl.sum(false, &[(c(1), 1, i), (c(-1), i, 1), (c(-1), i, i)]),
        bl.sum(true, &[(c(-1), i, 1)]),
    ])?;
    let pq_disp = full([bl.id(), bl.zero(), bl.sum(false, &[(two_l.clone(), i, j), (-&two_l, j, i)]), bl.id()])?;
    let last_disp = full([bl.id(), bl.zero(), bl.sum(false, &[(two_l.clone(), 1, i), (-&two_l, i, 1)]), bl.id()])?;

    let [b11, b12, b21, b22] = quarters(&b);
    let [d11, d12, d21, d22] = quarters(&d);
    let [a11, a12, a21, a22] = quarters(&ab);
    let [c11, c12, c21, c22] = quarters(&cd);
    let [bd11, bd12, bd21, bd22] = b_disp;
    let [dd11, dd12, dd21, dd22] = d_disp;
    let [ad11, ad12, ad21, ad22] = alpha_disp;
    let [cd11, cd12, cd21, cd22] = beta_disp;
    let step = |name, computed: RMatrix, displayed: RMatrix| ProofStep { name, computed, displayed };
    Ok(vec![
        step("A", a, a_disp),
        step("B11", b11, bd11),
        step("B12", b12, bd12),
        step("B21", b21, bd21),
        step("B22", b22, bd22),
        step("C", cm, c_disp),
        step("D11", d11, dd11),
        step("D12", d12, dd12),
        step("D21", d21, dd21),
        step("D22", d22, dd22),
        step("alpha11", a11, ad11),
        step("alpha12", a12, ad12),
        step("alpha21", a21, ad21),
        step("alpha22", a22, ad22),
        step("beta11", c11, cd11),
        step("beta12", c12, cd12),
        step("beta21", c21, cd21),
        step("beta22", c22, cd22),
        step("ABCD", abcd, abcd_disp),
        step("P", p.clone(), p_disp.clone()),
        step("P^-1", p.inverse()?, p_inv_disp.clone()),
        step("P(-l)", p_neg, p_inv_disp),
        step("Q", q.clone(), q_disp),
        step("Q^-1", q.inverse()?, q_inv_disp.clone()),
        step("Q(-l)", q_neg, q_inv_disp),
        step("[P,Q]", pq, pq_disp),
        step("ABCD[P,Q]", last.clone(), last_disp),
        step("oe", last, ortho_product(&[OrthoGen::oe(pi(1, r)?, i, two_l)], r, ring)?),
    ])
}

/// `t_matrix(e_1 + sⁿx, e_1 + sⁿy)` over `ℚ[s, x_1.., y_1..]`.
pub fn lemma41_matrix(n: u32, r: usize) -> Result<RMatrix, OrthoError> {
    let m = r + 1;
    let names: Vec<String> = std::iter::once("s".to_string())
        .chain((1..=m).map(|k| format!("x{k}")))
        .chain((1..=m).map(|k| format!("y{k}")))
        .collect();
    let ring = Ring::poly(&Ring::rationals(), &names)?;
    let sn = ring.var("s")?.pow(n);
    let one = ring.int(1);
    let e1 = unit_vector(&ring, m, 1);
    let perturbed = |prefix: char| -> Result<Vec<Elem>, OrthoError> {
        let x: Vec<Elem> = (1..=m).map(|k| ring.var(&format!("{prefix}{k}"))).collect::<Result<_, _>>()?;
        Ok(combine(&one, &e1, &sn, &x))
    };
    t_matrix(&perturbed('x')?, &perturbed('y')?)
}

/// Whether `t_matrix(e_1 + sⁿx, e_1 + sⁿy) ≡ I mod sⁿ`.
pub fn lemma41_check(n: u32, r: usize) -> Result<bool, OrthoError> {
    let t = lemma41_matrix(n, r)?;
    let ring = t.ring().clone();
    let s = ring.var("s")?;
    Ok(t.congruent_mod(&RMatrix::identity(&ring, 2 * (r + 1)), &s, n)?)
}
