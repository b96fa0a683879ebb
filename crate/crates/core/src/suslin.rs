//! Suslin matrices `S_r(v, w)` of size `2^r` and the Suslin space they span.

use thiserror::Error;

use crate::linalg::{LinalgError, RMatrix};
use crate::ring::{Elem, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuslinError {
    #[error("vectors of lengths {0} and {1} do not match")]
    LengthMismatch(usize, usize),
    #[error("vectors must be nonempty")]
    Empty,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Size { expected: usize, rows: usize, cols: usize },
    #[error("matrix is not S_r(v, w) for any v, w")]
    NotInSuslinSpace,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The argument `(v, w)` of `S_r`, with `v, w` of length `r + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuslinPair {
    pub v: Vec<Elem>,
    pub w: Vec<Elem>,
}

impl SuslinPair {
    pub fn new(v: Vec<Elem>, w: Vec<Elem>) -> Result<SuslinPair, SuslinError> {
        check_pair(&v, &w)?;
        Ok(SuslinPair { v, w })
    }

    pub fn r(&self) -> usize {
        self.v.len() - 1
    }

    pub fn ring(&self) -> &Ring {
        self.v[0].ring()
    }

    pub fn inner(&self) -> Elem {
        inner(&self.v, &self.w).expect("validated pair")
    }

    pub fn matrix(&self) -> RMatrix {
        suslin_matrix(&self.v, &self.w).expect("validated pair")
    }

    /// `(w, v)`.
    pub fn swapped(&self) -> SuslinPair {
        SuslinPair { v: self.w.clone(), w: self.v.clone() }
    }
}

fn check_pair(v: &[Elem], w: &[Elem]) -> Result<(), SuslinError> {
    if v.len() != w.len() {
        return Err(SuslinError::LengthMismatch(v.len(), w.len()));
    }
    let Some(first) = v.first() else { return Err(SuslinError::Empty) };
    for x in v.iter().chain(w) {
        if x.ring() != first.ring() {
            return Err(RingError::Mismatch(x.ring().to_string(), first.ring().to_string()).into());
        }
    }
    Ok(())
}

/// `e_i` of length `len` (1-based `i`).
pub fn unit_vector(ring: &Ring, len: usize, i: usize) -> Vec<Elem> {
    (1..=len).map(|k| ring.int(i64::from(k == i))).collect()
}

pub fn zero_vector(ring: &Ring, len: usize) -> Vec<Elem> {
    vec![ring.int(0); len]
}

/// `a·x + b·y` for equal-length vectors.
pub fn combine(a: &Elem, x: &[Elem], b: &Elem, y: &[Elem]) -> Vec<Elem> {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

/// `Σ v_i w_i`.
pub fn inner(v: &[Elem], w: &[Elem]) -> Result<Elem, SuslinError> {
    check_pair(v, w)?;
    let mut acc = v[0].zero_like();
    for (a, b) in v.iter().zip(w) {
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}

/// `S_r(v, w)`, built by the recursion
/// `S_r = [[a₀·I, S_{r-1}(v₁, w₁)], [-S_{r-1}(w₁, v₁)ᵀ, b₀·I]]`, `S_0 = a₀`.
pub fn suslin_matrix(v: &[Elem], w: &[Elem]) -> Result<RMatrix, SuslinError> {
    check_pair(v, w)?;
    Ok(build(v, w))
}

fn build(v: &[Elem], w: &[Elem]) -> RMatrix {
    let ring = v[0].ring();
    if v.len() == 1 {
        return RMatrix::from_values(ring, 1, 1, vec![v[0].value().clone()]).expect("1x1");
    }
    let half = 1usize << (v.len() - 2);
    let id = RMatrix::identity(ring, half);
    let upper_right = build(&v[1..], &w[1..]);
    let lower_left = build(&w[1..], &v[1..]).transpose().neg();
    RMatrix::from_blocks(&id.scale(&v[0]), &upper_right, &lower_left, &id.scale(&w[0])).expect("block shapes agree")
}

/// `S_r(w, v)ᵀ`; satisfies `S_r(v, w)·S_r(w, v)ᵀ = ⟨v, w⟩·I`.
pub fn suslin_adjoint(v: &[Elem], w: &[Elem]) -> Result<RMatrix, SuslinError> {
    Ok(suslin_matrix(w, v)?.transpose())
}

/// `S_r(v, w)⁻¹` for `⟨v, w⟩` a unit.
pub fn suslin_inverse(v: &[Elem], w: &[Elem]) -> Result<RMatrix, SuslinError> {
    let q = inner(v, w)?;
    let q_inv = q.inv().map_err(|_| LinalgError::NotInvertible)?;
    Ok(suslin_adjoint(v, w)?.scale(&q_inv))
}

/// The spanning family `S_r(e_1, 0), …, S_r(e_{r+1}, 0), S_r(0, e_1), …, S_r(0, e_{r+1})`.
pub fn suslin_basis(ring: &Ring, r: usize) -> Vec<RMatrix> {
    let n = r + 1;
    let zero = zero_vector(ring, n);
    let firsts = (1..=n).map(|i| build(&unit_vector(ring, n, i), &zero));
    let seconds = (1..=n).map(|i| build(&zero, &unit_vector(ring, n, i)));
    firsts.chain(seconds).collect()
}

/// Recovers `(v, w)` with `S_r(v, w) = m`.
///
/// Reads `a₀ = m[1,1]`, `b₀ = m[2^r, 2^r]` and recurses into the
/// off-diagonal blocks, then checks the reconstruction. For `r = 0` the
/// matrix does not determine `b₀`, which is returned as zero.
pub fn suslin_coords(m: &RMatrix, r: usize) -> Result<(Vec<Elem>, Vec<Elem>), SuslinError> {
    let size = 1usize << r;
    if m.shape() != (size, size) {
        return Err(SuslinError::Size { expected: size, rows: m.rows(), cols: m.cols() });
    }
    let ring = m.ring();
    let (v, w) = if r == 0 {
        (vec![m.get(1, 1)], vec![ring.int(0)])
    } else {
        let half = size / 2;
        let mut v = vec![m.get(1, 1)];
        v.extend(leading_vector(&m.block(1, half + 1, half, half), r - 1));
        let mut w = vec![m.get(size, size)];
        w.extend(leading_vector(&m.block(half + 1, 1, half, half).transpose().neg(), r - 1));
        (v, w)
    };
    if build(&v, &w) == *m {
        Ok((v, w))
    } else {
        Err(SuslinError::NotInSuslinSpace)
    }
}

/// The `v` of a would-be `S_r(v, w)`.
fn leading_vector(m: &RMatrix, r: usize) -> Vec<Elem> {
    let mut v = vec![m.get(1, 1)];
    if r > 0 {
        let half = 1usize << (r - 1);
        v.extend(leading_vector(&m.block(1, half + 1, half, half), r - 1));
    }
    v
}

/// `(v', w')` with `S_r(s, t)·S_r(v, w)·S_r(s, t) = S_r(v', w')`.
pub fn fundamental_conjugate(
    s: &[Elem],
    t: &[Elem],
    v: &[Elem],
    w: &[Elem],
) -> Result<(Vec<Elem>, Vec<Elem>), SuslinError> {
    check_pair(s, v)?;
    let outer = suslin_matrix(s, t)?;
    let middle = suslin_matrix(v, w)?;
    let p = outer.try_mul(&middle)?.try_mul(&outer)?;
    suslin_coords(&p, s.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(r: usize) -> (Ring, Vec<Elem>, Vec<Elem>) {
        let names: Vec<String> =
            (0..=r).map(|k| format!("a{k}")).chain((0..=r).map(|k| format!("b{k}"))).collect();
        let ring = Ring::poly(&Ring::rationals(), &names).unwrap();
        let v = (0..=r).map(|k| ring.var(&format!("a{k}")).unwrap()).collect();
        let w = (0..=r).map(|k| ring.var(&format!("b{k}")).unwrap()).collect();
        (ring, v, w)
    }

    fn rows(ring: &Ring, rows: &[&[&str]]) -> RMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        RMatrix::parse_rows(ring, &rows).unwrap()
    }

    #[test]
    fn small_unfoldings() {
        let (ring, v, w) = sym(0);
        assert_eq!(suslin_matrix(&v, &w).unwrap(), rows(&ring, &[&["a0"]]));
        let (ring, v, w) = sym(1);
        assert_eq!(suslin_matrix(&v, &w).unwrap(), rows(&ring, &[&["a0", "a1"], &["-b1", "b0"]]));
        let (ring, v, w) = sym(2);
        let expected = rows(
            &ring,
            &[
                &["a0", "0", "a1", "a2"],
                &["0", "a0", "-b2", "b1"],
                &["-b1", "a2", "b0", "0"],
                &["-b2", "-a1", "0", "b0"],
            ],
        );
        assert_eq!(suslin_matrix(&v, &w).unwrap(), expected);
    }

    #[test]
    fn inner_examples() {
        let q = Ring::rationals();
        assert!(inner(&unit_vector(&q, 3, 1), &unit_vector(&q, 3, 1)).unwrap().is_one());
        let v: Vec<Elem> = [1, 2, 3].iter().map(|&k| q.int(k)).collect();
        let w: Vec<Elem> = [3, -1, 0].iter().map(|&k| q.int(k)).collect();
        assert!(inner(&v, &w).unwrap().is_one());
        assert!(matches!(inner(&v, &w[..2]), Err(SuslinError::LengthMismatch(3, 2))));
    }

    #[test]
    fn basis_small_cases() {
        let q = Ring::rationals();
        let b = suslin_basis(&q, 1);
        assert_eq!(b.len(), 4);
        assert_eq!(b[0], rows(&q, &[&["1", "0"], &["0", "0"]]));
        assert_eq!(b[3], rows(&q, &[&["0", "0"], &["-1", "0"]]));
    }

    #[test]
    fn basis_reconstructs_symbolic_matrix() {
        let (ring, v, w) = sym(2);
        let basis = suslin_basis(&ring, 2);
        let mut acc = RMatrix::zeros(&ring, 4, 4);
        for (c, b) in v.iter().chain(&w).zip(&basis) {
            acc = acc.try_add(&b.scale(c)).unwrap();
        }
        assert_eq!(acc, suslin_matrix(&v, &w).unwrap());
    }

    #[test]
    fn identity_coordinates() {
        let q = Ring::rationals();
        for r in 0..=4 {
            let (v, w) = suslin_coords(&RMatrix::identity(&q, 1 << r), r).unwrap();
            assert_eq!(v, unit_vector(&q, r + 1, 1));
            if r > 0 {
                assert_eq!(w, unit_vector(&q, r + 1, 1));
            }
        }
    }

    #[test]
    fn non_suslin_matrix_is_rejected() {
        let q = Ring::rationals();
        let m = RMatrix::elementary(&q, 4, 1, 2, &q.one());
        assert!(matches!(suslin_coords(&m, 2), Err(SuslinError::NotInSuslinSpace)));
    }

    #[test]
    fn adjoint_identity() {
        for r in 1..=3 {
            let (_, v, w) = sym(r);
            let prod = suslin_matrix(&v, &w).unwrap().try_mul(&suslin_adjoint(&v, &w).unwrap()).unwrap();
            let id = RMatrix::identity(prod.ring(), 1 << r);
            assert_eq!(prod, id.scale(&inner(&v, &w).unwrap()));
        }
    }

    #[test]
    fn symbolic_determinant_r1() {
        let (_, v, w) = sym(1);
        assert_eq!(suslin_matrix(&v, &w).unwrap().det().unwrap(), inner(&v, &w).unwrap());
    }

    #[test]
    fn conjugation_by_identity() {
        let (ring, v, w) = sym(2);
        let e1 = unit_vector(&ring, 3, 1);
        assert_eq!(fundamental_conjugate(&e1, &e1, &v, &w).unwrap(), (v, w));
    }

    #[test]
    fn fundamental_property_r1() {
        let names = ["s0", "s1", "t0", "t1", "a0", "a1", "b0", "b1"];
        let ring = Ring::poly(&Ring::rationals(), &names).unwrap();
        let g = |n: &str| ring.var(n).unwrap();
        let (s, t) = (vec![g("s0"), g("s1")], vec![g("t0"), g("t1")]);
        let (v, w) = (vec![g("a0"), g("a1")], vec![g("b0"), g("b1")]);
        let (v2, w2) = fundamental_conjugate(&s, &t, &v, &w).unwrap();
        let st = inner(&s, &t).unwrap();
        assert_eq!(inner(&v2, &w2).unwrap(), &st * &st * inner(&v, &w).unwrap());
    }
}
