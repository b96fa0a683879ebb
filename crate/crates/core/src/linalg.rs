//! Dense matrices over the rings of [`crate::ring`].
//!
//! Entry access is 1-based: `m.get(i, j)` is the entry in row `i`, column
//! `j`, matching the usual `e_{ij}` notation. Storage is row-major.

use std::fmt;
use std::ops::Mul;

use serde_json::Value as Json;
use thiserror::Error;

use crate::ring::{congruent_mod_power, Elem, Ring, RingError, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("index ({0}, {1}) out of range")]
    Index(usize, usize),
    #[error("matrices over different rings: {0} and {1}")]
    RingMismatch(String, String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("malformed matrix literal: {0}")]
    Literal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone)]
pub struct RMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl RMatrix {
    pub fn from_values(ring: &Ring, rows: usize, cols: usize, data: Vec<Value>) -> Result<RMatrix, LinalgError> {
        if rows * cols != data.len() || rows == 0 || cols == 0 {
            return Err(LinalgError::Literal(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RMatrix { ring: ring.clone(), rows, cols, data })
    }

    /// Builds a matrix from a function of 1-based `(row, col)`.
    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Value) -> RMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        RMatrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn from_elems(ring: &Ring, rows: &[Vec<Elem>]) -> Result<RMatrix, LinalgError> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::new();
        for row in rows {
            if row.len() != ncols {
                return Err(LinalgError::Literal("ragged rows".into()));
            }
            for x in row {
                if x.ring() != ring {
                    return Err(LinalgError::RingMismatch(x.ring().to_string(), ring.to_string()));
                }
                data.push(x.value().clone());
            }
        }
        RMatrix::from_values(ring, rows.len(), ncols, data)
    }

    /// Parses rows of element strings, e.g. `[["1", "x"], ["0", "1"]]`.
    pub fn parse_rows<S: AsRef<str>>(ring: &Ring, rows: &[Vec<S>]) -> Result<RMatrix, LinalgError> {
        let elems = rows
            .iter()
            .map(|row| row.iter().map(|t| ring.parse_elem(t.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        RMatrix::from_elems(ring, &elems)
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> RMatrix {
        RMatrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> RMatrix {
        RMatrix::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    /// `I + c·e_{ij}` (1-based), an elementary transvection when `i != j`.
    pub fn elementary(ring: &Ring, n: usize, i: usize, j: usize, c: &Value) -> RMatrix {
        let mut m = RMatrix::identity(ring, n);
        let k = m.offset(i, j);
        m.data[k] = ring.add(&m.data[k], c);
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "entry ({i}, {j}) outside a {}x{} matrix",
            self.rows,
            self.cols
        );
        (i - 1) * self.cols + (j - 1)
    }

    /// Entry `(i, j)`, 1-based. Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> &Value {
        &self.data[self.offset(i, j)]
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.ring.elem(self.entry(i, j).clone())
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<Elem, LinalgError> {
        if (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j) {
            Ok(self.get(i, j))
        } else {
            Err(LinalgError::Index(i, j))
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        let k = self.offset(i, j);
        self.data[k] = v;
    }

    pub fn values(&self) -> &[Value] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (1..=self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (1..=self.rows).map(|i| self.get(i, j)).collect()
    }

    fn same_ring(&self, other: &RMatrix) -> Result<(), LinalgError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(LinalgError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    fn square(&self, op: &'static str) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare { op, rows: self.rows, cols: self.cols })
        }
    }

    pub fn try_mul(&self, other: &RMatrix) -> Result<RMatrix, LinalgError> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape { op: "mul", left: self.shape(), right: other.shape() });
        }
        let ring = &self.ring;
        let mut data = vec![ring.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if ring.is_zero(b) {
                        continue;
                    }
                    let slot = &mut data[i * other.cols + j];
                    *slot = ring.add(slot, &ring.mul(a, b));
                }
            }
        }
        Ok(RMatrix { ring: ring.clone(), rows: self.rows, cols: other.cols, data })
    }

    fn zip(&self, other: &RMatrix, op: &'static str, f: impl Fn(&Value, &Value) -> Value) -> Result<RMatrix, LinalgError> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape { op, left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(RMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &RMatrix) -> Result<RMatrix, LinalgError> {
        self.zip(other, "add", |a, b| self.ring.add(a, b))
    }

    pub fn try_sub(&self, other: &RMatrix) -> Result<RMatrix, LinalgError> {
        self.zip(other, "sub", |a, b| self.ring.sub(a, b))
    }

    pub fn map(&self, f: impl Fn(&Value) -> Value) -> RMatrix {
        RMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Elem) -> RMatrix {
        assert_eq!(c.ring(), &self.ring, "scalar from another ring");
        self.map(|x| self.ring.mul(x, c.value()))
    }

    pub fn neg(&self) -> RMatrix {
        self.map(|x| self.ring.neg(x))
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    /// Keeps entries on and above the diagonal.
    pub fn top(&self) -> Result<RMatrix, LinalgError> {
        let n = self.square("top")?;
        Ok(RMatrix::from_fn(&self.ring, n, n, |i, j| {
            if i <= j { self.entry(i, j).clone() } else { self.ring.zero() }
        }))
    }

    /// Keeps entries on and below the diagonal.
    pub fn bot(&self) -> Result<RMatrix, LinalgError> {
        let n = self.square("bot")?;
        Ok(RMatrix::from_fn(&self.ring, n, n, |i, j| {
            if i >= j { self.entry(i, j).clone() } else { self.ring.zero() }
        }))
    }

    pub fn diag(&self) -> Result<RMatrix, LinalgError> {
        let n = self.square("diag")?;
        Ok(RMatrix::from_fn(&self.ring, n, n, |i, j| {
            if i == j { self.entry(i, j).clone() } else { self.ring.zero() }
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (1..=self.rows).all(|i| {
                (1..=self.cols).all(|j| {
                    let x = self.entry(i, j);
                    if i == j { self.ring.is_one(x) } else { self.ring.is_zero(x) }
                })
            })
    }

    /// Rows `r0..r0+rows`, columns `c0..c0+cols` (1-based start).
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RMatrix {
        RMatrix::from_fn(&self.ring, rows, cols, |i, j| self.entry(r0 + i - 1, c0 + j - 1).clone())
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &RMatrix, b: &RMatrix, c: &RMatrix, d: &RMatrix) -> Result<RMatrix, LinalgError> {
        for m in [b, c, d] {
            a.same_ring(m)?;
        }
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(LinalgError::Shape { op: "blocks", left: a.shape(), right: d.shape() });
        }
        let (top, left) = (a.rows, a.cols);
        Ok(RMatrix::from_fn(&a.ring, a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i <= top, j <= left) {
                (true, true) => a.entry(i, j),
                (true, false) => b.entry(i, j - left),
                (false, true) => c.entry(i - top, j),
                (false, false) => d.entry(i - top, j - left),
            }
            .clone()
        }))
    }

    pub fn pow(&self, exp: u32) -> Result<RMatrix, LinalgError> {
        let n = self.square("pow")?;
        let mut acc = RMatrix::identity(&self.ring, n);
        for _ in 0..exp {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant.
    ///
    /// Fraction-free Bareiss elimination over domains; cofactor expansion up
    /// to 4x4 over other rings; beyond that, the division-free Berkowitz method.
    pub fn det(&self) -> Result<Elem, LinalgError> {
        let n = self.square("det")?;
        if self.ring.is_domain() {
            return Ok(self.ring.elem(self.det_bareiss(n)));
        }
        if n <= 4 {
            return Ok(self.ring.elem(self.det_cofactor()));
        }
        Ok(self.ring.elem(self.det_berkowitz(n)))
    }

    fn det_bareiss(&self, n: usize) -> Value {
        let ring = &self.ring;
        let mut a: Vec<Vec<Value>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut negate = false;
        let mut prev = ring.one();
        for k in 0..n.saturating_sub(1) {
            if ring.is_zero(&a[k][k]) {
                match (k + 1..n).find(|&i| !ring.is_zero(&a[i][k])) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                    a[i][j] = ring
                        .div_exact(&num, &prev)
                        .expect("Bareiss quotient is exact over a domain");
                }
                a[i][k] = ring.zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate { ring.neg(&d) } else { d }
    }

    fn det_cofactor(&self) -> Value {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.cofactor_rec(0, &cols)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> Value {
        let ring = &self.ring;
        if cols.len() == 1 {
            return self.data[row * self.cols + cols[0]].clone();
        }
        let mut acc = ring.zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = &self.data[row * self.cols + c];
            if ring.is_zero(a) {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = ring.mul(a, &self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }

    /// Berkowitz: the characteristic polynomial built up through the leading
    /// principal submatrices, using only ring operations.
    fn det_berkowitz(&self, n: usize) -> Value {
        let ring = &self.ring;
        let at = |i: usize, j: usize| &self.data[i * n + j];
        let mut coeffs = vec![ring.one(), ring.neg(at(0, 0))];
        for k in 1..n {
            let mut col = vec![ring.one(), ring.neg(at(k, k))];
            let mut x: Vec<Value> = (0..k).map(|i| at(i, k).clone()).collect();
            for _ in 0..k {
                let rx = (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(at(k, j), &x[j])));
                col.push(ring.neg(&rx));
                x = (0..k)
                    .map(|i| (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(at(i, j), &x[j]))))
                    .collect();
            }
            coeffs = (0..k + 2)
                .map(|i| {
                    (0..=i.min(k)).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&col[i - j], &coeffs[j])))
                })
                .collect();
        }
        let last = coeffs.pop().expect("n + 1 coefficients");
        if n.is_multiple_of(2) { last } else { ring.neg(&last) }
    }

    /// Two-sided inverse.
    ///
    /// Gauss-Jordan with unit pivots, falling back to the adjugate divided
    /// by a unit determinant.
    pub fn inverse(&self) -> Result<RMatrix, LinalgError> {
        let n = self.square("inverse")?;
        if let Some(inv) = self.inverse_gauss_jordan(n) {
            return Ok(inv);
        }
        let det = self.det()?;
        let det_inv = det.inv().map_err(|_| LinalgError::NotInvertible)?;
        Ok(self.adjugate(n)?.scale(&det_inv))
    }

    fn inverse_gauss_jordan(&self, n: usize) -> Option<RMatrix> {
        let ring = &self.ring;
        let mut a: Vec<Vec<Value>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut b: Vec<Vec<Value>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
        for k in 0..n {
            let p = (k..n).find(|&i| ring.is_unit(&a[i][k]))?;
            a.swap(p, k);
            b.swap(p, k);
            let inv = ring.inv(&a[k][k])?;
            for j in 0..n {
                a[k][j] = ring.mul(&a[k][j], &inv);
                b[k][j] = ring.mul(&b[k][j], &inv);
            }
            for i in 0..n {
                if i == k || ring.is_zero(&a[i][k]) {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let ta = ring.mul(&f, &a[k][j]);
                    a[i][j] = ring.sub(&a[i][j], &ta);
                    let tb = ring.mul(&f, &b[k][j]);
                    b[i][j] = ring.sub(&b[i][j], &tb);
                }
            }
        }
        Some(RMatrix { ring: ring.clone(), rows: n, cols: n, data: b.into_iter().flatten().collect() })
    }

    fn adjugate(&self, n: usize) -> Result<RMatrix, LinalgError> {
        if n == 1 {
            return Ok(RMatrix::identity(&self.ring, 1));
        }
        let mut out = RMatrix::zeros(&self.ring, n, n);
        for i in 1..=n {
            for j in 1..=n {
                let minor = RMatrix::from_fn(&self.ring, n - 1, n - 1, |a, b| {
                    let r = if a < j { a } else { a + 1 };
                    let c = if b < i { b } else { b + 1 };
                    self.entry(r, c).clone()
                });
                let d = minor.det()?.into_value();
                out.set(i, j, if (i + j) % 2 == 0 { d } else { self.ring.neg(&d) });
            }
        }
        Ok(out)
    }

    /// Whether every entry of `self - other` lies in `(s^n)`.
    pub fn congruent_mod(&self, other: &RMatrix, s: &Elem, n: u32) -> Result<bool, LinalgError> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape { op: "congruent_mod", left: self.shape(), right: other.shape() });
        }
        for (a, b) in self.data.iter().zip(&other.data) {
            let x = self.ring.elem(a.clone());
            let y = self.ring.elem(b.clone());
            if !congruent_mod_power(&x, &y, s, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rows of formatted entries.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (1..=self.rows).map(|i| (1..=self.cols).map(|j| self.ring.format(self.entry(i, j))).collect()).collect()
    }

    pub fn to_json(&self) -> Json {
        Json::Array(
            self.to_strings()
                .into_iter()
                .map(|row| Json::Array(row.into_iter().map(Json::String).collect()))
                .collect(),
        )
    }

    /// Reads an array of rows whose entries are element strings or integers.
    pub fn from_json(ring: &Ring, json: &Json) -> Result<RMatrix, LinalgError> {
        let rows = json.as_array().ok_or_else(|| LinalgError::Literal("expected an array of rows".into()))?;
        let mut out = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| LinalgError::Literal("expected each row to be an array".into()))?;
            let mut parsed = Vec::new();
            for x in row {
                let text = match x {
                    Json::String(s) => s.clone(),
                    Json::Number(n) => n.to_string(),
                    other => return Err(LinalgError::Literal(format!("bad entry {other}"))),
                };
                parsed.push(text);
            }
            out.push(parsed);
        }
        RMatrix::parse_rows(ring, &out)
    }
}

impl PartialEq for RMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.shape() == other.shape()
            && self.data.iter().zip(&other.data).all(|(a, b)| self.ring.eq_values(a, b))
    }
}

impl Mul for &RMatrix {
    type Output = RMatrix;
    fn mul(self, rhs: &RMatrix) -> RMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_strings();
        let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for (k, row) in rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.ring)?;
        fmt::Display::fmt(self, f)
    }
}

/// Ordered product of a sequence of square matrices; `I_n` when empty.
pub fn product<'a>(ring: &Ring, n: usize, factors: impl IntoIterator<Item = &'a RMatrix>) -> Result<RMatrix, LinalgError> {
    let mut acc = RMatrix::identity(ring, n);
    for m in factors {
        acc = acc.try_mul(m)?;
    }
    Ok(acc)
}

/// `a b a⁻¹ b⁻¹`.
pub fn commutator(a: &RMatrix, b: &RMatrix) -> Result<RMatrix, LinalgError> {
    let ai = a.inverse()?;
    let bi = b.inverse()?;
    a.try_mul(b)?.try_mul(&ai)?.try_mul(&bi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ring: &Ring, rows: &[&[&str]]) -> RMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        RMatrix::parse_rows(ring, &rows).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let r = Ring::zmod(15).unwrap();
        let a = m(&r, &[&["1", "2", "3", "4"], &["5", "6", "7", "8"], &["9", "10", "11", "12"], &["13", "14", "0", "1"]]);
        assert_eq!(&RMatrix::identity(&r, 4) * &a, a);
        assert_eq!(&a * &RMatrix::identity(&r, 4), a);
    }

    #[test]
    fn four_times_identity_squares_to_one_mod_15() {
        let r = Ring::zmod(15).unwrap();
        let a = m(&r, &[&["4", "0"], &["0", "4"]]);
        assert!((&a * &a).is_identity());
    }

    #[test]
    fn truncations() {
        let q = Ring::rationals();
        let a = m(&q, &[&["1", "2"], &["3", "4"]]);
        assert_eq!(a.top().unwrap(), m(&q, &[&["1", "2"], &["0", "4"]]));
        assert_eq!(a.bot().unwrap(), m(&q, &[&["1", "0"], &["3", "4"]]));
        let back = a.top().unwrap().try_add(&a.bot().unwrap()).unwrap().try_sub(&a.diag().unwrap()).unwrap();
        assert_eq!(back, a);
        let id = RMatrix::identity(&q, 3);
        assert_eq!(id.top().unwrap(), id);
        assert_eq!(id.bot().unwrap(), id);
        assert!(matches!(RMatrix::zeros(&q, 2, 3).top(), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn shape_and_ring_errors() {
        let q = Ring::rationals();
        let z = Ring::zmod(15).unwrap();
        let a = RMatrix::zeros(&q, 2, 3);
        assert!(matches!(a.try_mul(&a), Err(LinalgError::Shape { .. })));
        let b = RMatrix::identity(&z, 3);
        assert!(matches!(a.try_mul(&b), Err(LinalgError::RingMismatch(..))));
    }

    #[test]
    fn determinants() {
        let q = Ring::rationals();
        assert!(RMatrix::identity(&q, 8).det().unwrap().is_one());
        let a = m(&q, &[&["0", "1", "2"], &["1", "0", "3"], &["4", "-3", "8"]]);
        assert_eq!(a.det().unwrap(), q.int(-2));
        let z = Ring::zmod(15).unwrap();
        let b = m(&z, &[&["3", "5"], &["5", "3"]]);
        assert_eq!(b.det().unwrap(), z.int(9 - 25));
    }

    #[test]
    fn det_over_zero_divisors_beyond_cofactor_size() {
        let z = Ring::zmod(15).unwrap();
        let mut a = RMatrix::identity(&z, 5);
        a.set(1, 1, z.from_i64(4));
        a.set(2, 5, z.from_i64(7));
        assert_eq!(a.det().unwrap(), z.int(4));
        let mut b = RMatrix::identity(&z, 6);
        for k in 1..=3 {
            b.set(2 * k - 1, 2 * k - 1, z.from_i64(3));
            b.set(2 * k - 1, 2 * k, z.from_i64(5));
            b.set(2 * k, 2 * k - 1, z.from_i64(5));
            b.set(2 * k, 2 * k, z.from_i64(3));
        }
        assert_eq!(b.det().unwrap(), z.int(14 * 14 * 14));
        assert_eq!(b.try_mul(&b.inverse().unwrap()).unwrap(), RMatrix::identity(&z, 6));
    }

    #[test]
    fn inverse_round_trip() {
        let r = Ring::parse("Poly:Q[x]").unwrap();
        let a = m(&r, &[&["x", "1"], &["1", "0"]]);
        let ai = a.inverse().unwrap();
        assert!((&a * &ai).is_identity());
        let b = m(&r, &[&["x", "0"], &["0", "1"]]);
        assert!(matches!(b.inverse(), Err(LinalgError::NotInvertible)));
    }

    #[test]
    fn congruence_of_matrices() {
        let r = Ring::parse("Poly:Q[s]").unwrap();
        let s = r.var("s").unwrap();
        let id = RMatrix::identity(&r, 3);
        let a = id.try_add(&RMatrix::elementary(&r, 3, 1, 2, s.pow(2).value()).try_sub(&id).unwrap()).unwrap();
        assert!(a.congruent_mod(&id, &s, 2).unwrap());
        let b = RMatrix::elementary(&r, 3, 2, 3, s.value());
        assert!(!b.congruent_mod(&id, &s, 2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::parse("Poly:Q[x]").unwrap();
        let a = m(&r, &[&["x^2 - 1/3", "1"], &["0", "-x"]]);
        assert_eq!(RMatrix::from_json(&r, &a.to_json()).unwrap(), a);
    }
}
