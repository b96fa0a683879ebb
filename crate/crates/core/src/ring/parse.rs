//! Text syntax for rings and their elements.
//!
//! Ring specs:
//!
//! ```text
//! ring := "Q" | "Z" | "Zmod:" m | "Poly:" ring "[" name ("," name)* "]"
//!       | "QuotU2:" ring | "Frac:" ring | "Exc:" ring ":" element
//! ```
//!
//! Elements are arithmetic expressions over integers and variable names with
//! `+ - * / ^` and parentheses. `/` is exact division. In an excision ring a
//! parenthesised pair `(r, i)` denotes the element with components `r` and
//! `i`; a plain expression `r` means `(r, 0)`.

use num_bigint::BigInt;

use super::{Elem, Ring, RingError, RingKind};

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_err(text: &str, reason: impl Into<String>) -> RingError {
    RingError::Parse { text: text.to_string(), reason: reason.into() }
}

pub(crate) fn parse_ring(spec: &str) -> Result<Ring, RingError> {
    let spec = spec.trim();
    match spec {
        "Q" => return Ok(Ring::rationals()),
        "Z" => return Ok(Ring::integers()),
        _ => {}
    }
    if let Some(m) = spec.strip_prefix("Zmod:") {
        let m: u64 = m.trim().parse().map_err(|_| parse_err(spec, "modulus is not a number"))?;
        return Ring::zmod(m);
    }
    if let Some(rest) = spec.strip_prefix("Poly:") {
        let rest = rest.trim_end();
        if !rest.ends_with(']') {
            return Err(parse_err(spec, "expected `[vars]` at the end"));
        }
        let open = matching_open(rest).ok_or_else(|| parse_err(spec, "unbalanced brackets"))?;
        let base = parse_ring(&rest[..open])?;
        let vars: Vec<&str> = rest[open + 1..rest.len() - 1].split(',').map(str::trim).collect();
        return Ring::poly(&base, &vars);
    }
    if let Some(rest) = spec.strip_prefix("QuotU2:") {
        return Ok(Ring::quot_u2(&parse_ring(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("Frac:") {
        return Ring::frac(&parse_ring(rest)?);
    }
    if let Some(rest) = spec.strip_prefix("Exc:") {
        let colon = rest.rfind(':').ok_or_else(|| parse_err(spec, "expected `Exc:<base>:<s>`"))?;
        let base = parse_ring(&rest[..colon])?;
        let s = parse_elem(&base, &rest[colon + 1..])?;
        return Ring::excision(&base, &s);
    }
    Err(parse_err(spec, "unknown ring"))
}

/// Index of the `[` matching the final `]`.
fn matching_open(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (k, c) in s.char_indices().rev() {
        match c {
            ']' => depth += 1,
            '[' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, RingError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            k += 1;
        } else {
            return Err(parse_err(text, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

pub(crate) fn parse_elem(ring: &Ring, text: &str) -> Result<Elem, RingError> {
    let mut p = Parser { text, toks: tokenize(text)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(parse_err(text, "empty expression"));
    }
    let e = p.expr(ring)?;
    if p.pos != p.toks.len() {
        return Err(parse_err(text, format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, reason: impl Into<String>) -> RingError {
        parse_err(self.text, reason)
    }

    fn expr(&mut self, ring: &Ring) -> Result<Elem, RingError> {
        let mut acc = self.term(ring)?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term(ring)?;
            } else if self.eat('-') {
                acc = &acc - &self.term(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<Elem, RingError> {
        let mut acc = self.factor(ring)?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor(ring)?;
            } else if self.eat('/') {
                let d = self.factor(ring)?;
                let q = ring
                    .div_exact(acc.value(), d.value())
                    .ok_or_else(|| self.err(format!("{acc} is not divisible by {d}")))?;
                acc = ring.elem(q);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ring: &Ring) -> Result<Elem, RingError> {
        if self.eat('-') {
            return Ok(-self.factor(ring)?);
        }
        if self.eat('+') {
            return self.factor(ring);
        }
        let base = self.atom(ring)?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ring: &Ring) -> Result<Elem, RingError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ring.elem(ring.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                ring.var(&name)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                if let RingKind::Excision { base, .. } = ring.kind() {
                    if self.pair_ahead() {
                        let r = self.expr(base)?;
                        if !self.eat(',') {
                            return Err(self.err("expected `,` in pair"));
                        }
                        let i = self.expr(base)?;
                        if !self.eat(')') {
                            return Err(self.err("expected `)`"));
                        }
                        return ring.excision_pair(&r, &i);
                    }
                }
                let e = self.expr(ring)?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Whether the group opened just before `pos` contains a top-level comma.
    fn pair_ahead(&self) -> bool {
        let mut depth = 0;
        for t in &self.toks[self.pos..] {
            match t {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') if depth == 0 => return false,
                Tok::Sym(')') => depth -= 1,
                Tok::Sym(',') if depth == 0 => return true,
                _ => {}
            }
        }
        false
    }
}
