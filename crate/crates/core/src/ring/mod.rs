//! Exact commutative rings.
//!
//! A [`Ring`] is a cheap, shareable descriptor for one member of a small
//! tower of constructions: the rationals, the integers, residues modulo an
//! odd integer, polynomial rings, the quotient `R[u]/(u^2 - 1)`, fraction
//! fields of domains and excision rings `R ⊕ sR`. Ring values ([`Value`])
//! are kept in canonical form, so equality is structural; the only
//! exception is a fraction field over a base without gcds, whose equality
//! goes through cross multiplication in [`Ring::eq_values`].
//!
//! Arithmetic at this level is on bare values and trusts the caller to pass
//! values of the right ring. [`Elem`] pairs a value with its ring and checks
//! ring agreement on every operation.

pub(crate) mod arith;
mod elem;
mod parse;
pub(crate) mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use elem::{congruent_mod_power, excision_retract, Elem};
pub use poly::{Monomial, PolyMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("unknown variable `{0}` in {1}")]
    UnknownVariable(String, String),
    #[error("unsupported congruence test: {0}")]
    UnsupportedCongruence(String),
    #[error("{0} does not lie in the ideal ({1})")]
    NotInIdeal(String, String),
    #[error("expected an element of an excision ring, found one of {0}")]
    NotExcision(String),
}

/// Canonical payload of a ring element.
///
/// `Pair` carries `a + b u` in a quadratic quotient, `num / den` in a
/// fraction field and `(r, i)` in an excision ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(PolyMap),
    Pair(Box<[Value; 2]>),
}

impl Value {
    pub(crate) fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new([a, b]))
    }

    fn as_pair(&self) -> (&Value, &Value) {
        match self {
            Value::Pair(p) => (&p[0], &p[1]),
            other => panic!("expected a pair payload, found {other:?}"),
        }
    }

    fn as_poly(&self) -> &PolyMap {
        match self {
            Value::Poly(p) => p,
            other => panic!("expected a polynomial payload, found {other:?}"),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum RingKind {
    Rationals,
    Integers,
    Zmod { modulus: u64, primes: Vec<u64> },
    Poly { base: Ring, vars: Vec<String> },
    /// `base[u]/(u^2 - 1)`, stored as `a + b u`.
    QuotU2 { base: Ring, generator: String },
    Frac { base: Ring },
    /// `base ⊕ s·base` with product `(r,i)(r',i') = (rr', ri' + r'i + ii')`.
    Excision { base: Ring, s: Value },
}

#[derive(Clone, Debug)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }

    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    /// Residues modulo an odd `modulus >= 3`.
    pub fn zmod(modulus: u64) -> Result<Ring, RingError> {
        if modulus < 3 || modulus.is_multiple_of(2) {
            return Err(RingError::InvalidRing(format!(
                "modulus must be odd and at least 3, got {modulus}"
            )));
        }
        let primes = arith::prime_divisors(modulus);
        Ok(Ring(Arc::new(RingKind::Zmod { modulus, primes })))
    }

    pub fn poly<S: AsRef<str>>(base: &Ring, vars: &[S]) -> Result<Ring, RingError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() {
            return Err(RingError::InvalidRing("polynomial ring needs at least one variable".into()));
        }
        for (k, v) in vars.iter().enumerate() {
            if !parse::is_identifier(v) {
                return Err(RingError::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..k].contains(v) {
                return Err(RingError::InvalidRing(format!("variable `{v}` listed twice")));
            }
        }
        Ok(Ring(Arc::new(RingKind::Poly { base: base.clone(), vars })))
    }

    /// `base[u]/(u^2 - 1)`.
    pub fn quot_u2(base: &Ring) -> Ring {
        Ring(Arc::new(RingKind::QuotU2 { base: base.clone(), generator: "u".into() }))
    }

    pub fn frac(base: &Ring) -> Result<Ring, RingError> {
        if !base.is_domain() {
            return Err(RingError::InvalidRing(format!(
                "fraction ring requires an integral domain, {base} is not one"
            )));
        }
        Ok(Ring(Arc::new(RingKind::Frac { base: base.clone() })))
    }

    /// The excision ring `base ⊕ (s)`.
    pub fn excision(base: &Ring, s: &Elem) -> Result<Ring, RingError> {
        if s.ring() != base {
            return Err(RingError::Mismatch(s.ring().to_string(), base.to_string()));
        }
        Ok(Ring(Arc::new(RingKind::Excision { base: base.clone(), s: s.value().clone() })))
    }

    /// Parses a ring spec such as `Poly:Zmod:15[x,y]` or `Exc:Poly:Q[s]:s`.
    pub fn parse(spec: &str) -> Result<Ring, RingError> {
        parse::parse_ring(spec)
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn base(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Poly { base, .. }
            | RingKind::QuotU2 { base, .. }
            | RingKind::Frac { base }
            | RingKind::Excision { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Variables of a polynomial ring (empty for other rings).
    pub fn vars(&self) -> &[String] {
        match self.kind() {
            RingKind::Poly { vars, .. } => vars,
            _ => &[],
        }
    }

    pub fn is_domain(&self) -> bool {
        match self.kind() {
            RingKind::Rationals | RingKind::Integers | RingKind::Frac { .. } => true,
            RingKind::Zmod { modulus, primes } => primes.len() == 1 && primes[0] == *modulus,
            RingKind::Poly { base, .. } => base.is_domain(),
            RingKind::QuotU2 { .. } => false,
            RingKind::Excision { base, s } => base.is_zero(s) && base.is_domain(),
        }
    }

    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::Rationals | RingKind::Frac { .. } => true,
            RingKind::Zmod { .. } => self.is_domain(),
            _ => false,
        }
    }

    // ---- elements -------------------------------------------------------

    pub fn zero(&self) -> Value {
        match self.kind() {
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Zmod { .. } => Value::Mod(0),
            RingKind::Poly { .. } => Value::Poly(PolyMap::new()),
            RingKind::QuotU2 { base, .. } | RingKind::Excision { base, .. } => {
                Value::pair(base.zero(), base.zero())
            }
            RingKind::Frac { base } => Value::pair(base.zero(), base.one()),
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match self.kind() {
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::Zmod { modulus, .. } => {
                let m = BigInt::from(*modulus);
                Value::Mod(n.mod_floor(&m).to_u64().expect("residue fits in u64"))
            }
            _ => self.embed_base(self.base().unwrap().from_bigint(n)),
        }
    }

    /// The structural map `base -> self`.
    pub(crate) fn embed_base(&self, b: Value) -> Value {
        match self.kind() {
            RingKind::Poly { base, vars } => Value::Poly(poly::constant(base, b, vars.len())),
            RingKind::QuotU2 { base, .. } | RingKind::Excision { base, .. } => {
                Value::pair(b, base.zero())
            }
            RingKind::Frac { base } => Value::pair(b, base.one()),
            _ => panic!("{self} has no base ring"),
        }
    }

    pub fn elem(&self, value: Value) -> Elem {
        Elem::from_parts(self.clone(), value)
    }

    pub fn int(&self, n: i64) -> Elem {
        self.elem(self.from_i64(n))
    }

    /// Generator named `name` of this ring or of any ring below it.
    pub fn var(&self, name: &str) -> Result<Elem, RingError> {
        self.var_value(name).map(|v| self.elem(v))
    }

    pub(crate) fn var_value(&self, name: &str) -> Result<Value, RingError> {
        match self.kind() {
            RingKind::Poly { base, vars } => match vars.iter().position(|v| v == name) {
                Some(idx) => Ok(Value::Poly(poly::variable(base, vars.len(), idx))),
                None => Ok(self.embed_base(base.var_value(name)?)),
            },
            RingKind::QuotU2 { base, generator } if generator == name => {
                Ok(Value::pair(base.zero(), base.one()))
            }
            RingKind::QuotU2 { base, .. } | RingKind::Frac { base } | RingKind::Excision { base, .. } => {
                Ok(self.embed_base(base.var_value(name)?))
            }
            _ => Err(RingError::UnknownVariable(name.to_string(), self.to_string())),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem, RingError> {
        parse::parse_elem(self, text)
    }

    /// Builds `(r, i)` in an excision ring, checking `i ∈ (s)`.
    pub fn excision_pair(&self, r: &Elem, i: &Elem) -> Result<Elem, RingError> {
        let RingKind::Excision { base, s } = self.kind() else {
            return Err(RingError::NotExcision(self.to_string()));
        };
        for x in [r, i] {
            if x.ring() != base {
                return Err(RingError::Mismatch(x.ring().to_string(), base.to_string()));
            }
        }
        match base.ideal_contains(s, i.value()) {
            Some(true) => Ok(self.elem(Value::pair(r.value().clone(), i.value().clone()))),
            Some(false) => Err(RingError::NotInIdeal(i.to_string(), base.format(s))),
            None => Err(RingError::UnsupportedCongruence(format!(
                "membership in ({}) is not decidable in {base}",
                base.format(s)
            ))),
        }
    }

    // ---- arithmetic on values ---------------------------------------------

    pub fn is_zero(&self, a: &Value) -> bool {
        match (self.kind(), a) {
            (RingKind::Frac { base }, Value::Pair(p)) => base.is_zero(&p[0]),
            _ => *a == self.zero(),
        }
    }

    pub fn is_one(&self, a: &Value) -> bool {
        self.eq_values(a, &self.one())
    }

    pub fn eq_values(&self, a: &Value, b: &Value) -> bool {
        match self.kind() {
            RingKind::Frac { base } => {
                let (an, ad) = a.as_pair();
                let (bn, bd) = b.as_pair();
                base.eq_values(&base.mul(an, bd), &base.mul(bn, ad))
            }
            _ => a == b,
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::Zmod { modulus, .. }, Value::Mod(x), Value::Mod(y)) => {
                Value::Mod(arith::add_mod(*x, *y, *modulus))
            }
            (RingKind::Poly { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(poly::add(base, x, y))
            }
            (RingKind::QuotU2 { base, .. } | RingKind::Excision { base, .. }, _, _) => {
                let (a0, a1) = a.as_pair();
                let (b0, b1) = b.as_pair();
                Value::pair(base.add(a0, b0), base.add(a1, b1))
            }
            (RingKind::Frac { base }, _, _) => {
                let (an, ad) = a.as_pair();
                let (bn, bd) = b.as_pair();
                if base.eq_values(ad, bd) {
                    return self.frac_normalize(base.add(an, bn), ad.clone());
                }
                let num = base.add(&base.mul(an, bd), &base.mul(bn, ad));
                self.frac_normalize(num, base.mul(ad, bd))
            }
            _ => panic!("value does not belong to {self}: {a:?} / {b:?}"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Rationals, Value::Rat(x)) => Value::Rat(-x),
            (RingKind::Integers, Value::Int(x)) => Value::Int(-x),
            (RingKind::Zmod { modulus, .. }, Value::Mod(x)) => Value::Mod(arith::neg_mod(*x, *modulus)),
            (RingKind::Poly { base, .. }, Value::Poly(x)) => Value::Poly(poly::neg(base, x)),
            (RingKind::QuotU2 { base, .. } | RingKind::Excision { base, .. }, _) => {
                let (a0, a1) = a.as_pair();
                Value::pair(base.neg(a0), base.neg(a1))
            }
            (RingKind::Frac { base }, _) => {
                let (an, ad) = a.as_pair();
                Value::pair(base.neg(an), ad.clone())
            }
            _ => panic!("value does not belong to {self}: {a:?}"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::Zmod { modulus, .. }, Value::Mod(x), Value::Mod(y)) => {
                Value::Mod(arith::mul_mod(*x, *y, *modulus))
            }
            (RingKind::Poly { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(poly::mul(base, x, y))
            }
            (RingKind::QuotU2 { base, .. }, _, _) => {
                // (a0 + a1 u)(b0 + b1 u) = a0 b0 + a1 b1 + (a0 b1 + a1 b0) u
                let (a0, a1) = a.as_pair();
                let (b0, b1) = b.as_pair();
                let c0 = base.add(&base.mul(a0, b0), &base.mul(a1, b1));
                let c1 = base.add(&base.mul(a0, b1), &base.mul(a1, b0));
                Value::pair(c0, c1)
            }
            (RingKind::Excision { base, .. }, _, _) => {
                let (r, i) = a.as_pair();
                let (r2, i2) = b.as_pair();
                let first = base.mul(r, r2);
                let second = base.add(&base.add(&base.mul(r, i2), &base.mul(r2, i)), &base.mul(i, i2));
                Value::pair(first, second)
            }
            (RingKind::Frac { base }, _, _) => {
                let (an, ad) = a.as_pair();
                let (bn, bd) = b.as_pair();
                self.frac_normalize(base.mul(an, bn), base.mul(ad, bd))
            }
            _ => panic!("value does not belong to {self}: {a:?} / {b:?}"),
        }
    }

    pub fn pow(&self, a: &Value, mut exp: u32) -> Value {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self, a: &Value) -> bool {
        match (self.kind(), a) {
            (RingKind::Zmod { primes, .. }, Value::Mod(x)) => {
                let rad: u64 = primes.iter().product();
                x % rad == 0
            }
            (RingKind::Poly { base, .. }, Value::Poly(p)) => p.values().all(|c| base.is_nilpotent(c)),
            (RingKind::QuotU2 { base, .. }, _) => {
                // a + bu corresponds to (a + b, a - b) in base × base.
                let (x, y) = a.as_pair();
                base.is_nilpotent(&base.add(x, y)) && base.is_nilpotent(&base.sub(x, y))
            }
            (RingKind::Excision { base, .. }, _) => {
                // (r, i) corresponds to (r, r + i) in base × base.
                let (r, i) = a.as_pair();
                base.is_nilpotent(r) && base.is_nilpotent(&base.add(r, i))
            }
            _ => self.is_zero(a),
        }
    }

    pub fn is_unit(&self, a: &Value) -> bool {
        self.inv(a).is_some()
    }

    /// Multiplicative inverse, or `None` for a non-unit.
    pub fn inv(&self, a: &Value) -> Option<Value> {
        match (self.kind(), a) {
            (RingKind::Rationals, Value::Rat(x)) => (!x.is_zero()).then(|| Value::Rat(x.recip())),
            (RingKind::Integers, Value::Int(x)) => (x.abs().is_one()).then(|| Value::Int(x.clone())),
            (RingKind::Zmod { modulus, .. }, Value::Mod(x)) => arith::inv_mod(*x, *modulus).map(Value::Mod),
            (RingKind::Poly { base, vars }, Value::Poly(p)) => {
                let c0 = poly::constant_term(base, p, vars.len());
                let c0_inv = base.inv(&c0)?;
                let rest: PolyMap = p
                    .iter()
                    .filter(|(m, _)| m.iter().any(|&e| e > 0))
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect();
                if !rest.values().all(|c| base.is_nilpotent(c)) {
                    return None;
                }
                // (c0 + N)^-1 = c0^-1 * sum_k (-c0^-1 N)^k, finite since N is nilpotent.
                let ratio = poly::neg(base, &poly::scale(base, &rest, &c0_inv));
                let mut sum = poly::constant(base, base.one(), vars.len());
                let mut power = sum.clone();
                loop {
                    power = poly::mul(base, &power, &ratio);
                    if power.is_empty() {
                        break;
                    }
                    sum = poly::add(base, &sum, &power);
                }
                Some(Value::Poly(poly::scale(base, &sum, &c0_inv)))
            }
            (RingKind::QuotU2 { base, .. }, _) => {
                let (x, y) = a.as_pair();
                let norm = base.sub(&base.mul(x, x), &base.mul(y, y));
                let n_inv = base.inv(&norm)?;
                Some(Value::pair(base.mul(x, &n_inv), base.neg(&base.mul(y, &n_inv))))
            }
            (RingKind::Excision { base, .. }, _) => {
                let (r, i) = a.as_pair();
                let r_inv = base.inv(r)?;
                let ri_inv = base.inv(&base.add(r, i))?;
                Some(Value::pair(r_inv.clone(), base.sub(&ri_inv, &r_inv)))
            }
            (RingKind::Frac { base }, _) => {
                let (n, d) = a.as_pair();
                if base.is_zero(n) {
                    return None;
                }
                Some(self.frac_normalize(d.clone(), n.clone()))
            }
            _ => panic!("value does not belong to {self}: {a:?}"),
        }
    }

    /// Some `q` with `q * b = a`, when this ring can find one.
    ///
    /// Conclusive (a `None` means no quotient exists) for units `b`, for the
    /// integers, and for polynomial rings over domains or with unit leading
    /// coefficient in `b`.
    pub fn div_exact(&self, a: &Value, b: &Value) -> Option<Value> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if let Some(b_inv) = self.inv(b) {
            return Some(self.mul(a, &b_inv));
        }
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => {
                if y.is_zero() {
                    return None;
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Value::Int(q))
            }
            (RingKind::Poly { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                poly::div_exact(base, x, y).map(Value::Poly)
            }
            _ => None,
        }
    }

    /// Whether `x` lies in the principal ideal `(g)`; `None` if undecidable here.
    pub(crate) fn ideal_contains(&self, g: &Value, x: &Value) -> Option<bool> {
        if self.is_zero(x) {
            return Some(true);
        }
        if self.is_zero(g) {
            return Some(false);
        }
        match (self.kind(), g, x) {
            (RingKind::Zmod { modulus, .. }, Value::Mod(g), Value::Mod(x)) => {
                Some(x % arith::gcd(*g, *modulus) == 0)
            }
            (RingKind::Integers, _, _) | (RingKind::Rationals, _, _) | (RingKind::Frac { .. }, _, _) => {
                Some(self.div_exact(x, g).is_some())
            }
            (RingKind::Poly { base, .. }, Value::Poly(gp), _) => {
                let conclusive = base.is_domain()
                    || poly::leading_coeff(gp).map(|c| base.is_unit(c)).unwrap_or(false);
                if self.div_exact(x, g).is_some() {
                    Some(true)
                } else if conclusive {
                    Some(false)
                } else {
                    None
                }
            }
            _ => {
                if self.div_exact(x, g).is_some() {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    fn frac_normalize(&self, num: Value, den: Value) -> Value {
        let RingKind::Frac { base } = self.kind() else { unreachable!() };
        if base.is_zero(&num) {
            return Value::pair(base.zero(), base.one());
        }
        if let Some(d_inv) = base.inv(&den) {
            return Value::pair(base.mul(&num, &d_inv), base.one());
        }
        match (base.kind(), &num, &den) {
            (RingKind::Integers, Value::Int(n), Value::Int(d)) => {
                let g = n.gcd(d);
                let sign = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
                Value::pair(Value::Int(n / &g * &sign), Value::Int(d / &g * &sign))
            }
            (RingKind::Poly { base: coeffs, .. }, _, Value::Poly(_)) => {
                if let Some(q) = base.div_exact(&num, &den) {
                    return Value::pair(q, base.one());
                }
                let (num, den) = match base.div_exact(&den, &num) {
                    Some(q) => (base.one(), q),
                    None => (num, den),
                };
                let Value::Poly(dp) = &den else { unreachable!() };
                // Make the denominator's leading coefficient 1 when possible.
                match poly::leading_coeff(dp).and_then(|c| coeffs.inv(c)) {
                    Some(lc_inv) => {
                        let unit = base.embed_base_value(&lc_inv);
                        Value::pair(base.mul(&num, &unit), base.mul(&den, &unit))
                    }
                    None => Value::pair(num, den),
                }
            }
            _ => Value::pair(num, den),
        }
    }

    fn embed_base_value(&self, b: &Value) -> Value {
        self.embed_base(b.clone())
    }

    // ---- formatting -----------------------------------------------------

    /// Renders a value in the element syntax accepted by [`Ring::parse_elem`].
    pub fn format(&self, a: &Value) -> String {
        match (self.kind(), a) {
            (RingKind::Rationals, Value::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (RingKind::Integers, Value::Int(x)) => x.to_string(),
            (RingKind::Zmod { .. }, Value::Mod(x)) => x.to_string(),
            (RingKind::Poly { base, vars }, Value::Poly(p)) => {
                let terms: Vec<(String, String)> = p
                    .iter()
                    .rev()
                    .map(|(m, c)| (base.format(c), monomial_string(vars, m)))
                    .collect();
                join_terms(terms)
            }
            (RingKind::QuotU2 { base, generator }, _) => {
                let (x, y) = a.as_pair();
                let mut terms = Vec::new();
                if !base.is_zero(y) {
                    terms.push((base.format(y), generator.clone()));
                }
                if !base.is_zero(x) {
                    terms.push((base.format(x), String::new()));
                }
                join_terms(terms)
            }
            (RingKind::Frac { base }, _) => {
                let (n, d) = a.as_pair();
                if base.is_one(d) {
                    base.format(n)
                } else {
                    format!("({})/({})", base.format(n), base.format(d))
                }
            }
            (RingKind::Excision { base, .. }, _) => {
                let (r, i) = a.as_pair();
                format!("({}, {})", base.format(r), base.format(i))
            }
            _ => format!("<{a:?} not in {self}>"),
        }
    }

    pub(crate) fn poly_parts<'a>(&self, a: &'a Value) -> &'a PolyMap {
        a.as_poly()
    }

    pub(crate) fn pair_parts<'a>(&self, a: &'a Value) -> (&'a Value, &'a Value) {
        a.as_pair()
    }
}

fn monomial_string(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

fn is_atomic(c: &str) -> bool {
    let body = c.strip_prefix('-').unwrap_or(c);
    !body.is_empty()
        && body.chars().all(|ch| ch.is_ascii_digit() || ch == '/')
        && !body.starts_with('/')
}

/// Joins `(coefficient, monomial)` pairs into `c*m + ... - c*m`.
fn join_terms(terms: Vec<(String, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, m)) in terms.into_iter().enumerate() {
        let term = if m.is_empty() {
            if is_atomic(&c) || k == 0 {
                c
            } else {
                format!("({c})")
            }
        } else if c == "1" {
            m
        } else if c == "-1" {
            format!("-{m}")
        } else if is_atomic(&c) {
            format!("{c}*{m}")
        } else {
            format!("({c})*{m}")
        };
        if k == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Rationals => write!(f, "Q"),
            RingKind::Integers => write!(f, "Z"),
            RingKind::Zmod { modulus, .. } => write!(f, "Zmod:{modulus}"),
            RingKind::Poly { base, vars } => write!(f, "Poly:{base}[{}]", vars.join(",")),
            RingKind::QuotU2 { base, .. } => write!(f, "QuotU2:{base}"),
            RingKind::Frac { base } => write!(f, "Frac:{base}"),
            RingKind::Excision { base, s } => write!(f, "Exc:{base}:{}", base.format(s)),
        }
    }
}
