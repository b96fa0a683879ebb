use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{arith, poly, Ring, RingError, RingKind, Value};

/// A ring value tagged with its ring.
#[derive(Clone)]
pub struct Elem {
    ring: Ring,
    value: Value,
}

impl Elem {
    pub(crate) fn from_parts(ring: Ring, value: Value) -> Elem {
        Elem { ring, value }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn zero_like(&self) -> Elem {
        self.ring.int(0)
    }

    pub fn one_like(&self) -> Elem {
        self.ring.int(1)
    }

    fn check(&self, other: &Elem) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::Mismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem, RingError> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.add(&self.value, &other.value)))
    }

    pub fn try_sub(&self, other: &Elem) -> Result<Elem, RingError> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.sub(&self.value, &other.value)))
    }

    pub fn try_mul(&self, other: &Elem) -> Result<Elem, RingError> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.mul(&self.value, &other.value)))
    }

    pub fn inv(&self) -> Result<Elem, RingError> {
        self.ring
            .inv(&self.value)
            .map(|v| self.ring.elem(v))
            .ok_or_else(|| RingError::NotAUnit(self.to_string()))
    }

    pub fn pow(&self, exp: u32) -> Elem {
        self.ring.elem(self.ring.pow(&self.value, exp))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ring.eq_values(&self.value, &other.value)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Elem> for &Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.ring.elem(self.ring.neg(&self.value))
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

/// Whether `x - y` lies in the ideal `(s^n)`.
///
/// Supported: `s` a variable of a polynomial ring (at any level of the
/// tower), `s` an integer in `Q`, `Z` or `Z/m`, and quadratic quotients or
/// polynomial rings over supported rings with `s` coming from the base.
pub fn congruent_mod_power(x: &Elem, y: &Elem, s: &Elem, n: u32) -> Result<bool, RingError> {
    x.check(y)?;
    x.check(s)?;
    let diff = x.ring.sub(&x.value, &y.value);
    in_power_ideal(&x.ring, &diff, &s.value, n)
}

fn in_power_ideal(ring: &Ring, d: &Value, s: &Value, n: u32) -> Result<bool, RingError> {
    if ring.is_zero(d) || n == 0 {
        return Ok(true);
    }
    let unsupported = || {
        RingError::UnsupportedCongruence(format!("({})^{n} in {ring}", ring.format(s)))
    };
    match ring.kind() {
        RingKind::Rationals | RingKind::Frac { .. } => Ok(!ring.is_zero(s)),
        RingKind::Integers => {
            let (Value::Int(d), Value::Int(s)) = (d, s) else { unreachable!() };
            if s.is_zero() {
                return Ok(false);
            }
            Ok((d % s.abs().pow(n)).is_zero())
        }
        RingKind::Zmod { modulus, .. } => {
            let (Value::Mod(d), Value::Mod(s)) = (d, s) else { unreachable!() };
            let sn = arith::pow_mod(*s, n as u64, *modulus);
            Ok(d % arith::gcd(sn, *modulus) == 0)
        }
        RingKind::Poly { base, vars } => {
            let sp = ring.poly_parts(s);
            let dp = ring.poly_parts(d);
            if let Some(idx) = poly::is_variable(base, sp) {
                return Ok(dp.keys().all(|m| m[idx] >= n));
            }
            if poly::is_constant(sp) {
                let c = poly::constant_term(base, sp, vars.len());
                for coeff in dp.values() {
                    if !in_power_ideal(base, coeff, &c, n)? {
                        return Ok(false);
                    }
                }
                return Ok(true);
            }
            Err(unsupported())
        }
        RingKind::QuotU2 { base, .. } => {
            let (s0, s1) = ring.pair_parts(s);
            if !base.is_zero(s1) {
                return Err(unsupported());
            }
            let (a, b) = ring.pair_parts(d);
            Ok(in_power_ideal(base, a, s0, n)? && in_power_ideal(base, b, s0, n)?)
        }
        RingKind::Excision { .. } => Err(unsupported()),
    }
}

/// The retraction `(r, i) ↦ r + i` onto the base ring.
pub fn excision_retract(x: &Elem) -> Result<Elem, RingError> {
    let RingKind::Excision { base, .. } = x.ring.kind() else {
        return Err(RingError::NotExcision(x.ring.to_string()));
    };
    let (r, i) = x.ring.pair_parts(&x.value);
    Ok(base.elem(base.add(r, i)))
}
