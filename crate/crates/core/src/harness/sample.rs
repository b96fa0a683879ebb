//! Seeded random elements, vectors and matrices.
//!
//! Every trial gets its own ChaCha stream keyed by `(seed, stream)`, so
//! trials can run in any order or in parallel with the same results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elemgen::{apply_transvections, Transvection};
use crate::linalg::RMatrix;
use crate::ring::{Elem, Ring, RingKind};
use crate::suslin::{combine, inner, unit_vector};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.random_range(0..n)
    }

    pub fn small(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn elem(&mut self, ring: &Ring) -> Elem {
        match ring.kind() {
            RingKind::Rationals => {
                let num = self.small(-9, 9);
                let den = self.small(1, 4);
                &ring.int(num) * &ring.int(den).inv().expect("nonzero rational")
            }
            RingKind::Integers => ring.int(self.small(-20, 20)),
            RingKind::Zmod { modulus, .. } => ring.int(self.below(*modulus) as i64),
            RingKind::Poly { base, vars } => {
                let mut acc = ring.int(0);
                for _ in 0..self.small(1, 3) {
                    let mut term = ring.elem(ring.embed_base(self.elem(base).into_value()));
                    for _ in 0..self.small(0, 2) {
                        let v = &vars[self.below(vars.len() as u64) as usize];
                        term = &term * &ring.var(v).expect("own variable");
                    }
                    acc = &acc + &term;
                }
                acc
            }
            RingKind::QuotU2 { base, generator } => {
                let a = ring.elem(ring.embed_base(self.elem(base).into_value()));
                let b = ring.elem(ring.embed_base(self.elem(base).into_value()));
                &a + &(&b * &ring.var(generator).expect("generator"))
            }
            RingKind::Frac { base } => {
                let num = self.elem(base);
                let den = loop {
                    let d = self.elem(base);
                    if !d.is_zero() {
                        break d;
                    }
                };
                let lift = |x: Elem| ring.elem(ring.embed_base(x.into_value()));
                &lift(num) * &lift(den).inv().expect("nonzero in a fraction field")
            }
            RingKind::Excision { base, s } => {
                let r = self.elem(base);
                let i = &base.elem(s.clone()) * &self.elem(base);
                ring.excision_pair(&r, &i).expect("multiple of s lies in the ideal")
            }
        }
    }

    pub fn vector(&mut self, ring: &Ring, len: usize) -> Vec<Elem> {
        (0..len).map(|_| self.elem(ring)).collect()
    }

    pub fn matrix(&mut self, ring: &Ring, rows: usize, cols: usize) -> RMatrix {
        RMatrix::from_fn(ring, rows, cols, |_, _| self.elem(ring).into_value())
    }

    /// A random word of `count` transvections on vectors of length `n`.
    pub fn transvections(&mut self, ring: &Ring, n: usize, count: usize) -> Vec<Transvection> {
        if n < 2 {
            return Vec::new();
        }
        (0..count)
            .map(|_| {
                let i = self.below(n as u64) as usize + 1;
                let mut j = self.below(n as u64 - 1) as usize + 1;
                if j >= i {
                    j += 1;
                }
                Transvection { i, j, lambda: self.elem(ring) }
            })
            .collect()
    }

    /// `(v, w, σ)` with `v = e_1 σ`, `w = e_1 (σ⁻¹)ᵀ` for a random
    /// elementary `σ`, so `⟨v, w⟩ = 1`.
    pub fn unimodular_pair(&mut self, ring: &Ring, n: usize) -> (Vec<Elem>, Vec<Elem>, RMatrix) {
        let word = self.transvections(ring, n, 2 * n + 2);
        let e1 = unit_vector(ring, n, 1);
        let v = apply_transvections(&e1, &word);
        let sigma = word.iter().fold(RMatrix::identity(ring, n), |acc, t| {
            acc.try_mul(&t.matrix(n)).expect("same ring and size")
        });
        // (σ⁻¹)ᵀ is the product of the transposed inverse factors in the same order.
        let dual: Vec<Transvection> =
            word.iter().map(|t| Transvection { i: t.j, j: t.i, lambda: -&t.lambda }).collect();
        let w = apply_transvections(&e1, &dual);
        debug_assert!(inner(&v, &w).map(|d| d.is_one()).unwrap_or(false));
        (v, w, sigma)
    }

    /// Another `w'` with `⟨v, w'⟩ = 1`: `w + x - ⟨x, v⟩ w` for random `x`.
    pub fn other_dual(&mut self, v: &[Elem], w: &[Elem]) -> Vec<Elem> {
        let ring = v[0].ring();
        let x = self.vector(ring, v.len());
        let c = inner(&x, v).expect("equal lengths");
        let one = ring.int(1);
        combine(&(&one - &c), w, &one, &x)
    }

    /// A random invertible matrix: unit diagonal times a transvection word.
    pub fn invertible(&mut self, ring: &Ring, n: usize) -> RMatrix {
        let diag = RMatrix::from_fn(ring, n, n, |i, j| {
            if i == j {
                loop {
                    let u = self.elem(ring);
                    if u.is_unit() {
                        break u.into_value();
                    }
                }
            } else {
                ring.zero()
            }
        });
        self.transvections(ring, n, 3 * n)
            .iter()
            .fold(diag, |acc, t| acc.try_mul(&t.matrix(n)).expect("same ring and size"))
    }
}
