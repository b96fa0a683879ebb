//! Sparse multivariate polynomials over an arbitrary base ring.
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients. The
//! map is ordered lexicographically on exponent vectors, so the last entry is
//! the leading term for the lex order with the first variable most
//! significant.

use std::collections::BTreeMap;

use super::{Ring, Value};

pub type Monomial = Vec<u32>;
pub type PolyMap = BTreeMap<Monomial, Value>;

pub(crate) fn constant(base: &Ring, c: Value, nvars: usize) -> PolyMap {
    let mut p = PolyMap::new();
    if !base.is_zero(&c) {
        p.insert(vec![0; nvars], c);
    }
    p
}

pub(crate) fn variable(base: &Ring, nvars: usize, idx: usize) -> PolyMap {
    let mut m = vec![0; nvars];
    m[idx] = 1;
    let mut p = PolyMap::new();
    p.insert(m, base.one());
    p
}

fn add_term(base: &Ring, p: &mut PolyMap, m: Monomial, c: Value) {
    use std::collections::btree_map::Entry;
    match p.entry(m) {
        Entry::Vacant(e) => {
            if !base.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = base.add(e.get(), &c);
            if base.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub(crate) fn add(base: &Ring, a: &PolyMap, b: &PolyMap) -> PolyMap {
    let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = big.clone();
    for (m, c) in small {
        add_term(base, &mut out, m.clone(), c.clone());
    }
    out
}

pub(crate) fn neg(base: &Ring, a: &PolyMap) -> PolyMap {
    a.iter().map(|(m, c)| (m.clone(), base.neg(c))).collect()
}

pub(crate) fn scale(base: &Ring, a: &PolyMap, c: &Value) -> PolyMap {
    let mut out = PolyMap::new();
    for (m, x) in a {
        let y = base.mul(x, c);
        if !base.is_zero(&y) {
            out.insert(m.clone(), y);
        }
    }
    out
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Monomial> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect::<Option<Monomial>>()
}

pub(crate) fn mul(base: &Ring, a: &PolyMap, b: &PolyMap) -> PolyMap {
    let mut out = PolyMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(base, &mut out, mono_mul(ma, mb), base.mul(ca, cb));
        }
    }
    out
}

/// Constant coefficient, or zero.
pub(crate) fn constant_term(base: &Ring, a: &PolyMap, nvars: usize) -> Value {
    a.get(&vec![0; nvars]).cloned().unwrap_or_else(|| base.zero())
}

pub(crate) fn is_constant(a: &PolyMap) -> bool {
    a.keys().all(|m| m.iter().all(|&e| e == 0))
}

/// Exact quotient `a / b`, or `None` when the lex division algorithm leaves
/// a remainder. Conclusive whenever the leading coefficient of `b` is a unit
/// or the base is a domain.
pub(crate) fn div_exact(base: &Ring, a: &PolyMap, b: &PolyMap) -> Option<PolyMap> {
    let (lm_b, lc_b) = b.last_key_value()?;
    let mut rem = a.clone();
    let mut quot = PolyMap::new();
    while let Some((lm_r, lc_r)) = rem.last_key_value() {
        let qm = mono_div(lm_r, lm_b)?;
        let qc = base.div_exact(lc_r, lc_b)?;
        let mut term = PolyMap::new();
        term.insert(qm.clone(), qc.clone());
        let sub = mul(base, &term, b);
        rem = add(base, &rem, &neg(base, &sub));
        add_term(base, &mut quot, qm, qc);
    }
    Some(quot)
}

/// Leading coefficient under the lex order.
pub(crate) fn leading_coeff(a: &PolyMap) -> Option<&Value> {
    a.last_key_value().map(|(_, c)| c)
}

pub(crate) fn is_variable(base: &Ring, a: &PolyMap) -> Option<usize> {
    if a.len() != 1 {
        return None;
    }
    let (m, c) = a.iter().next()?;
    if !base.is_one(c) {
        return None;
    }
    let mut idx = None;
    for (k, &e) in m.iter().enumerate() {
        match (e, idx) {
            (0, _) => {}
            (1, None) => idx = Some(k),
            _ => return None,
        }
    }
    idx
}
