//! Coefficient rings `Z_n[T,T^-1]/(h)` and group-ring values `Z[A]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};

/// Element of an [`AlexanderRing`]: coefficients of `1, T, ..., T^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    coeffs: Vec<BigInt>,
}

impl RingElem {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Polynomial text, highest power first: `T+2`, `-T^2+1`, `0`.
    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let unit = mag.is_one();
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&mag.to_string());
                    }
                    out.push('T');
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

/// The ring `Z_n[T,T^-1]/(h)`; `n = 0` means integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderRing {
    modulus: u64,
    h: Vec<BigInt>,
    t_inv: RingElem,
}

impl AlexanderRing {
    pub fn new(modulus: u64, h: &[i64]) -> Result<Self> {
        Self::from_big(modulus, h.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `h` is given lowest power first and may carry leading `T^k` factors.
    pub fn from_big(modulus: u64, h: Vec<BigInt>) -> Result<Self> {
        if modulus == 1 {
            return Err(Error::ZeroRing);
        }
        let n = BigInt::from(modulus);
        let mut h: Vec<BigInt> = h
            .into_iter()
            .map(|c| if modulus > 0 { c.mod_floor(&n) } else { c })
            .collect();
        while h.last().is_some_and(Zero::is_zero) {
            h.pop();
        }
        let shift = h.iter().take_while(|c| c.is_zero()).count();
        h.drain(..shift);
        if h.is_empty() {
            return Err(Error::NotInvertible("h is zero".into()));
        }
        if h.len() == 1 {
            return Err(Error::ZeroRing);
        }
        let lead = h.last().unwrap().clone();
        let lead_inv = unit_inverse(&lead, modulus)
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {lead}")))?;
        if unit_inverse(&h[0], modulus).is_none() {
            return Err(Error::NotInvertible(format!("constant coefficient {}", h[0])));
        }
        for c in h.iter_mut() {
            *c = reduce(&(&*c * &lead_inv), modulus);
        }
        let d = h.len() - 1;
        // T * g(T) = -h0 with h = h0 + T g(T), so T^-1 = -g / h0.
        let h0_inv = unit_inverse(&h[0], modulus).unwrap();
        let coeffs = (0..d).map(|k| reduce(&(-&h[k + 1] * &h0_inv), modulus)).collect();
        Ok(AlexanderRing { modulus, h, t_inv: RingElem { coeffs } })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.h.len() - 1
    }

    /// Monic normalized `h`, lowest power first.
    pub fn h(&self) -> &[BigInt] {
        &self.h
    }

    pub fn is_finite(&self) -> bool {
        self.modulus > 0
    }

    /// Number of elements, if finite and representable.
    pub fn size(&self) -> Option<usize> {
        if self.modulus == 0 {
            return None;
        }
        (self.modulus as usize).checked_pow(self.degree() as u32)
    }

    pub fn reduce_int(&self, c: &BigInt) -> BigInt {
        reduce(c, self.modulus)
    }

    pub fn zero(&self) -> RingElem {
        RingElem { coeffs: vec![BigInt::zero(); self.degree()] }
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn t(&self) -> RingElem {
        self.from_poly(&[BigInt::zero(), BigInt::one()])
    }

    pub fn t_inv(&self) -> &RingElem {
        &self.t_inv
    }

    pub fn from_int(&self, c: i64) -> RingElem {
        self.from_bigint(&BigInt::from(c))
    }

    pub fn from_bigint(&self, c: &BigInt) -> RingElem {
        let mut e = self.zero();
        e.coeffs[0] = self.reduce_int(c);
        e
    }

    /// Reduces an arbitrary polynomial (lowest power first) into the ring.
    pub fn from_poly(&self, p: &[BigInt]) -> RingElem {
        let d = self.degree();
        let mut p: Vec<BigInt> = p.to_vec();
        if p.len() < d {
            p.resize(d, BigInt::zero());
        }
        for k in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                p[k - d + j] -= &c * &self.h[j];
            }
        }
        p.truncate(d);
        for c in p.iter_mut() {
            *c = self.reduce_int(c);
        }
        RingElem { coeffs: p }
    }

    pub fn elem(&self, coeffs: &[i64]) -> RingElem {
        let p: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        self.from_poly(&p)
    }

    pub fn check(&self, a: &RingElem) -> Result<()> {
        if a.coeffs.len() != self.degree() {
            return Err(Error::Foreign(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                a.coeffs.len()
            )));
        }
        if self.modulus > 0 {
            let n = BigInt::from(self.modulus);
            if a.coeffs.iter().any(|c| c.is_negative() || *c >= n) {
                return Err(Error::Foreign(format!("{a} is not a canonical residue vector")));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.reduce_int(&(x + y)))
            .collect();
        RingElem { coeffs }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.reduce_int(&(x - y)))
            .collect();
        RingElem { coeffs }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        let coeffs = a.coeffs.iter().map(|x| self.reduce_int(&-x)).collect();
        RingElem { coeffs }
    }

    pub fn scale(&self, k: &BigInt, a: &RingElem) -> RingElem {
        let coeffs = a.coeffs.iter().map(|x| self.reduce_int(&(k * x))).collect();
        RingElem { coeffs }
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let d = self.degree();
        let mut p = vec![BigInt::zero(); 2 * d];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        self.from_poly(&p)
    }

    /// Checked binary operation, rejecting operands of another ring.
    pub fn arith(&self, op: ArithOp, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    pub fn t_mul(&self, a: &RingElem) -> RingElem {
        let mut p = Vec::with_capacity(a.coeffs.len() + 1);
        p.push(BigInt::zero());
        p.extend(a.coeffs.iter().cloned());
        self.from_poly(&p)
    }

    /// `T^k a`; negative powers go through the inverse of `T`.
    pub fn t_pow(&self, a: &RingElem, k: i64) -> RingElem {
        let mut r = a.clone();
        if k >= 0 {
            for _ in 0..k {
                r = self.t_mul(&r);
            }
        } else {
            for _ in 0..(-k) {
                r = self.mul(&self.t_inv, &r);
            }
        }
        r
    }

    /// `a * b = T a + (1 - T) b`.
    pub fn quandle_op(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let diff = self.sub(a, b);
        self.add(&self.t_mul(&diff), b)
    }

    /// Index of `a` in [`Self::enumerate`] order: `sum a_i n^i`.
    pub fn index_of(&self, a: &RingElem) -> Result<usize> {
        if self.modulus == 0 {
            return Err(Error::InfiniteRing);
        }
        let n = self.modulus as usize;
        let mut idx = 0usize;
        for c in a.coeffs.iter().rev() {
            idx = idx * n + c.to_usize().ok_or_else(|| Error::Foreign(a.to_string()))?;
        }
        Ok(idx)
    }

    pub fn element_at(&self, mut idx: usize) -> RingElem {
        let n = self.modulus as usize;
        let coeffs = (0..self.degree())
            .map(|_| {
                let c = idx % n;
                idx /= n;
                BigInt::from(c)
            })
            .collect();
        RingElem { coeffs }
    }

    /// All elements, counting with the constant coefficient as least significant digit.
    pub fn enumerate(&self) -> Result<Vec<RingElem>> {
        let size = self.size().ok_or(Error::InfiniteRing)?;
        Ok((0..size).map(|i| self.element_at(i)).collect())
    }

    /// Matrix of multiplication by `T` on the basis `1, T, ..., T^(d-1)`.
    pub fn companion(&self) -> Vec<Vec<BigInt>> {
        let d = self.degree();
        let mut m = vec![vec![BigInt::zero(); d]; d];
        for k in 0..d {
            let mut e = self.zero();
            e.coeffs[k] = BigInt::one();
            let col = self.t_mul(&e);
            for (r, c) in col.coeffs.into_iter().enumerate() {
                m[r][k] = c;
            }
        }
        m
    }

    pub fn descriptor(&self) -> String {
        let h = RingElem { coeffs: self.h.clone() };
        format!("Z{}[T]/({})", self.modulus, h.to_poly_string())
    }

    pub fn parse_elem(&self, text: &str) -> Result<RingElem> {
        let p = parse_poly(text)?;
        Ok(self.from_poly(&p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Neg,
    Mul,
}

impl fmt::Display for AlexanderRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for AlexanderRing {
    type Err = Error;

    /// `Z3[T]/(T+1)`, `Z0[T]/(T^2-1)`, `z[t, t^-1] / (t + 1)`.
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let rest = s
            .strip_prefix('z')
            .ok_or_else(|| parse_err("ring descriptor", format!("`{text}` must start with Z")))?;
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let rest = &rest[digits.len()..];
        let modulus: u64 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| parse_err("ring descriptor", "bad modulus"))?
        };
        let rest = rest
            .strip_prefix("[t]")
            .or_else(|| rest.strip_prefix("[t,t^-1]"))
            .or_else(|| rest.strip_prefix("[t,t^{-1}]"))
            .ok_or_else(|| parse_err("ring descriptor", format!("`{text}`: expected [T]")))?;
        let poly = rest
            .strip_prefix("/(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_err("ring descriptor", format!("`{text}`: expected /(h)")))?;
        AlexanderRing::from_big(modulus, parse_poly(poly)?)
    }
}

fn reduce(c: &BigInt, modulus: u64) -> BigInt {
    if modulus == 0 {
        c.clone()
    } else {
        c.mod_floor(&BigInt::from(modulus))
    }
}

fn unit_inverse(c: &BigInt, modulus: u64) -> Option<BigInt> {
    if modulus == 0 {
        return if c.abs().is_one() { Some(c.clone()) } else { None };
    }
    let n = BigInt::from(modulus);
    let e = c.extended_gcd(&n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(&n))
    } else {
        None
    }
}

/// Parses a Laurent polynomial in `T` into dense coefficients, lowest power first,
/// after multiplying by the power of `T` that clears negative exponents.
pub fn parse_poly(text: &str) -> Result<Vec<BigInt>> {
    let s: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase()
        .replace('−', "-");
    if s.is_empty() {
        return Err(parse_err("polynomial", "empty"));
    }
    let mut terms: Vec<(BigInt, i64)> = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<BigInt> = if i > start {
            Some(bytes[start..i].iter().collect::<String>().parse().unwrap())
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
        }
        let mut exp = 0i64;
        if i < bytes.len() && bytes[i] == 't' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let braced = i < bytes.len() && (bytes[i] == '{' || bytes[i] == '(');
                if braced {
                    i += 1;
                }
                let es = i;
                if i < bytes.len() && bytes[i] == '-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = bytes[es..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| parse_err("polynomial", format!("bad exponent in `{text}`")))?;
                if braced {
                    if i < bytes.len() && (bytes[i] == '}' || bytes[i] == ')') {
                        i += 1;
                    } else {
                        return Err(parse_err("polynomial", format!("unclosed exponent in `{text}`")));
                    }
                }
            }
        } else if coef.is_none() {
            return Err(parse_err("polynomial", format!("unexpected input in `{text}` at {i}")));
        }
        if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            return Err(parse_err("polynomial", format!("unexpected `{}` in `{text}`", bytes[i])));
        }
        terms.push((sign * coef.unwrap_or_else(BigInt::one), exp));
    }
    let lo = terms.iter().map(|t| t.1).min().unwrap_or(0).min(0);
    let hi = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (c, e) in terms {
        dense[(e - lo) as usize] += c;
    }
    Ok(dense)
}

/// Value in the group ring `Z[A]`: a finite map from ring elements to multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<RingElem, i64>,
}

const LETTERS: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];

impl GroupRingElem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn integer(ring: &AlexanderRing, k: i64) -> Self {
        let mut g = Self::new();
        g.add_term(ring.zero(), k);
        g
    }

    pub fn terms(&self) -> &BTreeMap<RingElem, i64> {
        &self.terms
    }

    pub fn add_term(&mut self, key: RingElem, mult: i64) {
        let e = self.terms.entry(key).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.retain(|_, m| *m != 0);
        }
    }

    pub fn add(&mut self, other: &GroupRingElem) {
        for (k, m) in &other.terms {
            self.add_term(k.clone(), *m);
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::new();
        }
        let terms = self.terms.iter().map(|(a, m)| (a.clone(), m * k)).collect();
        GroupRingElem { terms }
    }

    /// Applies `T^k` to every key.
    pub fn t_act(&self, ring: &AlexanderRing, k: i64) -> Self {
        let mut out = Self::new();
        for (a, m) in &self.terms {
            out.add_term(ring.t_pow(a, k), *m);
        }
        out
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The multiplicity of the identity if no other key occurs.
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (k, m) = self.terms.iter().next().unwrap();
                k.is_zero().then_some(*m)
            }
            _ => None,
        }
    }

    pub fn render(&self, ring: &AlexanderRing) -> String {
        self.render_with(&LETTERS[..])
            .unwrap_or_else(|| self.render_with(&generated_letters(ring.degree())).unwrap())
    }

    /// Renders with explicit generator names for `T^0, T^1, ...`; `None` if too few names.
    pub fn render_with(&self, letters: &[impl AsRef<str>]) -> Option<String> {
        let mut keyed: Vec<(&RingElem, i64)> = self.terms.iter().map(|(k, m)| (k, *m)).collect();
        keyed.sort_by(|a, b| term_order(a.0).cmp(&term_order(b.0)).then(a.0.cmp(b.0)));
        let mut out = String::new();
        for (key, m) in keyed {
            let word = monomial_word(key, letters)?;
            let mag = m.abs();
            let body = match (&word, mag) {
                (None, _) => mag.to_string(),
                (Some(w), 1) => w.clone(),
                (Some(w), _) => format!("{mag}{w}"),
            };
            if out.is_empty() {
                if m < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if m < 0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        Some(out)
    }

    /// Representative of the `T`-orbit whose rendered text is least.
    pub fn canonical_under_t(&self, ring: &AlexanderRing) -> Self {
        const MAX_ORBIT: usize = 4096;
        let mut best = self.clone();
        let mut best_text = self.render(ring);
        let mut cur = self.t_act(ring, 1);
        let mut steps = 0;
        while cur != *self && steps < MAX_ORBIT {
            let text = cur.render(ring);
            if text < best_text {
                best_text = text;
                best = cur.clone();
            }
            cur = cur.t_act(ring, 1);
            steps += 1;
        }
        best
    }
}

impl GroupRingElem {
    /// Inverse of [`GroupRingElem::render_with`]: `2 + 2st`, `3 + 3t + 3t²`, `-(st)⁻¹`.
    pub fn parse_with(text: &str, ring: &AlexanderRing, letters: &[impl AsRef<str>]) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = GroupRingElem::new();
        if s.is_empty() {
            return Err(parse_err("group ring value", "empty"));
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            let word = &term[digits.len()..];
            let mult: i64 = if digits.is_empty() {
                if word.is_empty() {
                    return Err(parse_err("group ring value", format!("empty term in `{text}`")));
                }
                1
            } else {
                digits.parse().map_err(|_| parse_err("group ring value", "multiplicity too large"))?
            };
            let mut exps = vec![BigInt::zero(); letters.len()];
            let mut chars = word;
            parse_word(&mut chars, letters, &mut exps, &BigInt::one(), text)?;
            if !chars.is_empty() {
                return Err(parse_err("group ring value", format!("unexpected `{chars}` in `{text}`")));
            }
            out.add_term(ring.from_poly(&exps), sign * mult);
        }
        Ok(out)
    }
}

fn parse_word(s: &mut &str, letters: &[impl AsRef<str>], exps: &mut [BigInt], scale: &BigInt, text: &str) -> Result<()> {
    while let Some(c) = s.chars().next() {
        if c == ')' {
            return Ok(());
        }
        if c == '(' {
            *s = &s[1..];
            let mut inner = vec![BigInt::zero(); exps.len()];
            parse_word(s, letters, &mut inner, &BigInt::one(), text)?;
            *s = s.strip_prefix(')').ok_or_else(|| parse_err("group ring value", format!("unbalanced `(` in `{text}`")))?;
            let e = read_superscript(s).unwrap_or_else(BigInt::one) * scale;
            for (x, y) in exps.iter_mut().zip(inner) {
                *x += y * &e;
            }
            continue;
        }
        let (i, l) = letters
            .iter()
            .enumerate()
            .filter(|(_, l)| s.starts_with(l.as_ref()))
            .max_by_key(|(_, l)| l.as_ref().len())
            .ok_or_else(|| parse_err("group ring value", format!("unknown generator at `{s}` in `{text}`")))?;
        *s = &s[l.as_ref().len()..];
        let e = read_superscript(s).unwrap_or_else(BigInt::one);
        exps[i] += e * scale;
    }
    Ok(())
}

fn read_superscript(s: &mut &str) -> Option<BigInt> {
    let mut neg = false;
    let mut digits = String::new();
    let mut used = 0;
    for c in s.chars() {
        let d = match c {
            '\u{207b}' if digits.is_empty() && !neg => {
                neg = true;
                used += c.len_utf8();
                continue;
            }
            '\u{2070}' => '0',
            '\u{b9}' => '1',
            '\u{b2}' => '2',
            '\u{b3}' => '3',
            '\u{2074}'..='\u{2079}' => char::from_digit(c as u32 - 0x2070, 10).unwrap(),
            _ => break,
        };
        digits.push(d);
        used += c.len_utf8();
    }
    if digits.is_empty() {
        return None;
    }
    *s = &s[used..];
    let v: BigInt = digits.parse().ok()?;
    Some(if neg { -v } else { v })
}

fn generated_letters(d: usize) -> Vec<String> {
    (0..d).map(|i| LETTERS.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("g{i}"))).collect()
}

fn term_order(key: &RingElem) -> (bool, BigInt, Vec<(BigInt, bool)>) {
    let total = key.coeffs.iter().map(|c| c.abs()).sum();
    let shape = key.coeffs.iter().map(|c| (c.abs(), c.is_negative())).collect();
    (!key.is_zero(), total, shape)
}

fn monomial_word(key: &RingElem, letters: &[impl AsRef<str>]) -> Option<Option<String>> {
    if key.is_zero() {
        return Some(None);
    }
    if letters.len() < key.coeffs.len() {
        return None;
    }
    let all_negative = key.coeffs.iter().all(|c| !c.is_positive());
    let word = |negate: bool| {
        let mut w = String::new();
        for (c, l) in key.coeffs.iter().zip(letters) {
            let e = if negate { -c } else { c.clone() };
            if e.is_zero() {
                continue;
            }
            w.push_str(l.as_ref());
            if !e.is_one() {
                w.push_str(&superscript(&e));
            }
        }
        w
    };
    Some(Some(if all_negative {
        format!("({})\u{207b}\u{b9}", word(true))
    } else {
        word(false)
    }))
}

fn superscript(e: &BigInt) -> String {
    e.to_string()
        .chars()
        .map(|c| match c {
            '-' => '\u{207b}',
            '0' => '\u{2070}',
            '1' => '\u{b9}',
            '2' => '\u{b2}',
            '3' => '\u{b3}',
            d => char::from_u32(0x2070 + d.to_digit(10).unwrap()).unwrap(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn dihedral_three() {
        let r3: AlexanderRing = "Z3[T]/(T+1)".parse().unwrap();
        assert_eq!(r3.size(), Some(3));
        assert_eq!(r3.t(), r3.from_int(-1));
        assert_eq!(r3.mul(&r3.t(), &r3.from_int(2)), r3.from_int(1));
        assert_eq!(r3.t_pow(&r3.one(), 5), r3.from_int(2));
        assert_eq!(r3.quandle_op(&r3.from_int(1), &r3.from_int(0)), r3.from_int(2));
    }

    #[test]
    fn integer_dihedral() {
        let rinf = AlexanderRing::new(0, &[1, 1]).unwrap();
        assert_eq!(rinf.t(), rinf.from_int(-1));
        assert_eq!(rinf.enumerate(), Err(Error::InfiniteRing));
        assert_eq!(rinf.size(), None);
    }

    #[test]
    fn four_element_field() {
        let f4 = AlexanderRing::new(2, &[1, 1, 1]).unwrap();
        let all = f4.enumerate().unwrap();
        let text: Vec<String> = all.iter().map(|e| e.to_string()).collect();
        assert_eq!(text, ["0", "1", "T", "T+1"]);
    }

    #[test]
    fn arithmetic_examples() {
        let a = AlexanderRing::new(0, &[-1, 0, 1]).unwrap();
        assert_eq!(a.mul(&a.t(), &a.t()), a.one());
        let b = AlexanderRing::new(3, &[1, 2, 1]).unwrap();
        assert_eq!(b.mul(&b.t(), &b.t()), b.elem(&[2, 1]));
        assert_eq!(b.quandle_op(&b.one(), &b.zero()), b.t());
        assert_eq!(a.t_pow(&a.elem(&[1, 1]), 1), a.elem(&[1, 1]));
    }

    #[test]
    fn rejects_bad_h() {
        assert!(matches!(AlexanderRing::new(4, &[1, 2]), Err(Error::NotInvertible(_))));
        assert!(matches!(AlexanderRing::new(0, &[2, 1]), Err(Error::NotInvertible(_))));
        assert_eq!(AlexanderRing::new(5, &[3]), Err(Error::ZeroRing));
        assert_eq!(AlexanderRing::new(5, &[1, 5]), Err(Error::ZeroRing));
    }

    #[test]
    fn normalization_is_canonical() {
        let a = AlexanderRing::new(5, &[2, 2]).unwrap();
        let b = AlexanderRing::new(5, &[0, 1, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.descriptor(), "Z5[T]/(T+1)");
        let c: AlexanderRing = " z5 [t] / ( 2 t^2 + 2 t ) ".parse().unwrap();
        assert_eq!(a, c);
        let d: AlexanderRing = "Z0[T,T^-1]/(T - 2 + T^-1)".parse().unwrap();
        assert_eq!(d.h(), big(&[1, -2, 1]).as_slice());
    }

    #[test]
    fn foreign_elements() {
        let r3 = AlexanderRing::new(3, &[1, 1]).unwrap();
        let f4 = AlexanderRing::new(2, &[1, 1, 1]).unwrap();
        assert!(matches!(r3.arith(ArithOp::Add, &f4.one(), &r3.one()), Err(Error::Foreign(_))));
    }

    #[test]
    fn render_examples() {
        let a = AlexanderRing::new(0, &[-1, 0, 1]).unwrap();
        let mut g = GroupRingElem::new();
        g.add_term(a.zero(), 2);
        g.add_term(a.elem(&[1, 1]), 2);
        assert_eq!(g.render(&a), "2 + 2st");
        let mut g = GroupRingElem::new();
        g.add_term(a.elem(&[-1, -1]), 2);
        g.add_term(a.elem(&[1, 1]), 2);
        g.add_term(a.zero(), 23);
        assert_eq!(g.render(&a), "23 + 2st + 2(st)\u{207b}\u{b9}");
        let mut g = GroupRingElem::new();
        g.add_term(a.elem(&[2, -1]), -1);
        assert_eq!(g.render(&a), "-s\u{b2}t\u{207b}\u{b9}");
        assert_eq!(GroupRingElem::new().render(&a), "0");
    }

    #[test]
    fn parse_round_trips() {
        let a = AlexanderRing::new(0, &[-1, 0, 1]).unwrap();
        for text in ["2 + 2st", "23 + 2st + 2(st)\u{207b}\u{b9}", "-s\u{b2}t\u{207b}\u{b9}", "0", "5"] {
            let g = GroupRingElem::parse_with(text, &a, &LETTERS[..]).unwrap();
            assert_eq!(g.render(&a), text);
        }
        let r3 = AlexanderRing::new(3, &[1, 1]).unwrap();
        let g = GroupRingElem::parse_with("3 + 3t + 3t\u{b2}", &r3, &["t"]).unwrap();
        assert_eq!(g.render_with(&["t"]).unwrap(), "3 + 3t + 3t\u{b2}");
        assert!(GroupRingElem::parse_with("2 + q", &a, &LETTERS[..]).is_err());
    }

    #[test]
    fn r3_orbit_is_fixed() {
        let r3 = AlexanderRing::new(3, &[1, 1]).unwrap();
        let mut g = GroupRingElem::new();
        for i in 0..3 {
            g.add_term(r3.from_int(i), 3);
        }
        assert_eq!(g.t_act(&r3, 1), g);
        assert_eq!(g.render(&r3), "3 + 3s + 3s\u{b2}");
        assert_eq!(g.render_with(&["t"]).unwrap(), "3 + 3t + 3t\u{b2}");
        let nine = GroupRingElem::integer(&r3, 9);
        assert_eq!(nine.canonical_under_t(&r3), nine);
    }
}
