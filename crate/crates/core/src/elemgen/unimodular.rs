//! Unimodular rows: completion to elementary matrices and reduction to
//! `e_1` over `Z/m`.

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::RMatrix;
use crate::ring::{Elem, Ring, RingKind};
use crate::suslin::{inner, unit_vector};

use super::GenError;

pub const DEFAULT_ORBIT_BUDGET: u64 = 1_000_000;

/// `I + λ·e_{ij}` with `i != j`, acting on row vectors from the right
/// (adds `λ·v_i` to `v_j`).
#[derive(Clone, Debug, PartialEq)]
pub struct Transvection {
    pub i: usize,
    pub j: usize,
    pub lambda: Elem,
}

impl Transvection {
    pub fn matrix(&self, n: usize) -> RMatrix {
        RMatrix::elementary(self.lambda.ring(), n, self.i, self.j, self.lambda.value())
    }
}

/// `v·ε₁·ε₂⋯`.
pub fn apply_transvections(v: &[Elem], word: &[Transvection]) -> Vec<Elem> {
    let mut out = v.to_vec();
    for t in word {
        out[t.j - 1] = &out[t.j - 1] + &(&t.lambda * &out[t.i - 1]);
    }
    out
}

/// Result of completing a unimodular pair.
#[derive(Clone, Debug)]
pub struct Completion {
    /// `ζ = I + vᵀ(e_1(σ⁻¹)ᵀ - w)`.
    pub zeta: RMatrix,
    /// `ε = σ ζᵀ`.
    pub epsilon: RMatrix,
    pub epsilon_inv: RMatrix,
}

fn row(v: &[Elem]) -> Result<RMatrix, GenError> {
    Ok(RMatrix::from_elems(v[0].ring(), &[v.to_vec()])?)
}

/// Given `v·wᵀ = 1` and `v = e_1 σ`, builds `ε` with `v = e_1 ε` and
/// `w = e_1 (ε⁻¹)ᵀ`, checking both.
pub fn complete_pair(v: &[Elem], w: &[Elem], sigma: &RMatrix) -> Result<Completion, GenError> {
    let n = v.len();
    if w.len() != n || sigma.shape() != (n, n) {
        return Err(GenError::Precondition("dimensions of v, w and σ disagree".into()));
    }
    let ring = sigma.ring();
    if !inner(v, w)?.is_one() {
        return Err(GenError::Precondition("v·wᵀ is not 1".into()));
    }
    let e1 = row(&unit_vector(ring, n, 1))?;
    let vr = row(v)?;
    if e1.try_mul(sigma)? != vr {
        return Err(GenError::Precondition("v is not e_1 σ".into()));
    }
    let sigma_inv = sigma.inverse()?;
    let target = e1.try_mul(&sigma_inv.transpose())?;
    let id = RMatrix::identity(ring, n);
    let zeta = id.try_add(&vr.transpose().try_mul(&target.try_sub(&row(w)?)?)?)?;
    let epsilon = sigma.try_mul(&zeta.transpose())?;
    // ζ - I squares to zero, so ζ⁻¹ = 2I - ζ.
    let zeta_inv = id.scale(&ring.int(2)).try_sub(&zeta)?;
    let epsilon_inv = zeta_inv.transpose().try_mul(&sigma_inv)?;
    if !epsilon.try_mul(&epsilon_inv)?.is_identity() {
        return Err(GenError::Precondition("σ ζᵀ is not inverted by (2I - ζ)ᵀ σ⁻¹".into()));
    }
    if e1.try_mul(&epsilon)? != vr || e1.try_mul(&epsilon_inv.transpose())? != row(w)? {
        return Err(GenError::Precondition("completion postconditions fail".into()));
    }
    Ok(Completion { zeta, epsilon, epsilon_inv })
}

fn zmod_params(ring: &Ring) -> Result<(u64, Vec<u64>), GenError> {
    match ring.kind() {
        RingKind::Zmod { modulus, primes } => Ok((*modulus, primes.clone())),
        _ => Err(GenError::Precondition(format!("expected Z/m, got {ring}"))),
    }
}

fn residue(x: &Elem) -> u64 {
    match x.value() {
        crate::ring::Value::Mod(k) => *k,
        _ => unreachable!("residue of a non-modular value"),
    }
}

/// Whether the entries of `v` generate the unit ideal of `Z/m`.
pub fn is_unimodular_mod(v: &[u64], primes: &[u64]) -> bool {
    primes.iter().all(|p| v.iter().any(|x| x % p != 0))
}

/// Chinese remaindering of `target[k] mod p_k^{e_k}` into `Z/m`.
fn crt(targets: &[(u64, u64)], modulus: u64) -> u64 {
    let mut acc = 0u128;
    for &(t, q) in targets {
        let rest = modulus / q;
        let inv = crate::ring::arith::inv_mod(rest % q, q).expect("coprime prime powers");
        acc += t as u128 * rest as u128 % modulus as u128 * inv as u128;
        acc %= modulus as u128;
    }
    acc as u64
}

/// A word of transvections `ε` with `v ε = e_1`.
///
/// First entry made a unit by adding `λ_j v_j` (the `λ_j` glued by CRT over
/// the prime powers of `m`), the other entries cleared against it, and the
/// remaining unit turned into 1 with three more moves.
pub fn reduce_unimodular_modn(v: &[Elem]) -> Result<Vec<Transvection>, GenError> {
    let Some(first) = v.first() else {
        return Err(GenError::Precondition("empty vector".into()));
    };
    let ring = first.ring().clone();
    let (modulus, primes) = zmod_params(&ring)?;
    let raw: Vec<u64> = v.iter().map(residue).collect();
    if !is_unimodular_mod(&raw, &primes) {
        return Err(GenError::NotUnimodular);
    }
    let n = v.len();
    let mut word = Vec::new();
    let mut cur = v.to_vec();
    let mut push = |t: Transvection, cur: &mut Vec<Elem>| {
        if !t.lambda.is_zero() {
            *cur = apply_transvections(cur, std::slice::from_ref(&t));
            word.push(t);
        }
    };
    if !cur[0].is_unit() {
        let prime_powers: Vec<(u64, u64)> = primes
            .iter()
            .map(|&p| {
                let mut q = p;
                while modulus % (q * p) == 0 {
                    q *= p;
                }
                (p, q)
            })
            .collect();
        for j in 2..=n {
            let targets: Vec<(u64, u64)> = prime_powers
                .iter()
                .map(|&(p, q)| {
                    let pick = raw[0].is_multiple_of(p) && (2..=n).find(|&k| !raw[k - 1].is_multiple_of(p)) == Some(j);
                    (u64::from(pick), q)
                })
                .collect();
            let lambda = ring.int(crt(&targets, modulus) as i64);
            push(Transvection { i: j, j: 1, lambda }, &mut cur);
        }
    }
    let u_inv = cur[0].inv().map_err(|_| GenError::NotUnimodular)?;
    for j in 2..=n {
        let lambda = -(&cur[j - 1] * &u_inv);
        push(Transvection { i: 1, j, lambda }, &mut cur);
    }
    if !cur[0].is_one() {
        if n < 2 {
            return Err(GenError::Precondition("a unit other than 1 in length one".into()));
        }
        let u = cur[0].clone();
        let one = ring.int(1);
        push(Transvection { i: 1, j: 2, lambda: u.inv()? }, &mut cur);
        push(Transvection { i: 2, j: 1, lambda: &one - &u }, &mut cur);
        push(Transvection { i: 1, j: 2, lambda: -one }, &mut cur);
    }
    debug_assert_eq!(cur, unit_vector(&ring, n, 1));
    Ok(word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    pub modulus: u64,
    pub length: usize,
    pub vectors: u64,
    pub unimodular_total: u64,
    pub orbit_of_e1: u64,
}

/// Enumerates `(Z/m)^{r+1}`, counting unimodular vectors and those that
/// [`reduce_unimodular_modn`] carries to `e_1` (checked by applying the word).
pub fn orbit_enumerate(modulus: u64, r: usize, budget: u64) -> Result<OrbitCounts, GenError> {
    let ring = Ring::zmod(modulus)?;
    let (_, primes) = zmod_params(&ring)?;
    let n = r + 1;
    let needed = (modulus as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(GenError::BudgetExceeded { needed, budget });
    }
    let total = needed as u64;
    let per_lead = total / modulus;
    let e1 = unit_vector(&ring, n, 1);
    let (unimodular, reached) = (0..modulus)
        .into_par_iter()
        .map(|lead| {
            let mut counts = (0u64, 0u64);
            for rest in 0..per_lead {
                let mut raw = vec![lead];
                let mut k = rest;
                for _ in 1..n {
                    raw.push(k % modulus);
                    k /= modulus;
                }
                if !is_unimodular_mod(&raw, &primes) {
                    continue;
                }
                counts.0 += 1;
                let v: Vec<Elem> = raw.iter().map(|&x| ring.int(x as i64)).collect();
                if let Ok(word) = reduce_unimodular_modn(&v) {
                    if apply_transvections(&v, &word) == e1 {
                        counts.1 += 1;
                    }
                }
            }
            counts
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(OrbitCounts { modulus, length: n, vectors: total, unimodular_total: unimodular, orbit_of_e1: reached })
}
