//! Sparse polynomials with arbitrary-precision integer coefficients: [`BiPoly`]
//! in `X, Y` and [`UniPoly`] in `L` (the Bott variable).
//!
//! Text form lists terms in graded-lex descending order with `X` before `Y`,
//! for example `X^2 + 3*X + Y + 3`; the zero polynomial prints as `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial in `X` and `Y`, keyed by exponent pair; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

/// Polynomial in `L`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    terms: BTreeMap<u32, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `c * X^a * Y^b`.
    pub fn monomial(a: u32, b: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c.into());
        p
    }

    /// Adds `c * X^a * Y^b` in place.
    pub fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Terms `((a, b), c)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `X -> X + dx`, `Y -> Y + dy`.
    pub fn shift(&self, dx: i64, dy: i64) -> Self {
        let mut out = Self::zero();
        let (dx, dy) = (BigInt::from(dx), BigInt::from(dy));
        for (&(a, b), c) in &self.terms {
            for i in 0..=a {
                let ca = binomial(BigInt::from(a), BigInt::from(i)) * pow_big(&dx, a - i);
                if ca.is_zero() {
                    continue;
                }
                for k in 0..=b {
                    let cb = binomial(BigInt::from(b), BigInt::from(k)) * pow_big(&dy, b - k);
                    out.add_term(i, k, c * &ca * cb);
                }
            }
        }
        out
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * pow_big(x, a) * pow_big(y, b))
            .sum()
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn swap(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// `(-1)^sign_exponent * p(-1, -L)`.
    pub fn to_bott_substitution(&self, sign_exponent: u64) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&(a, b), c) in &self.terms {
            let negative = (a + b) % 2 == 1;
            let v = if negative { -c.clone() } else { c.clone() };
            out.add_term(b, v);
        }
        if sign_exponent % 2 == 1 {
            out = -out;
        }
        out
    }

    /// `p / X` when every term has positive `X` degree.
    pub fn div_exact_by_x(&self) -> Option<Self> {
        if self.terms.keys().any(|&(a, _)| a == 0) {
            return None;
        }
        Some(BiPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a - 1, b), c.clone())).collect(),
        })
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Terms in display order: descending total degree, then descending `X` degree.
    fn display_order(&self) -> Vec<((u32, u32), &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2, a2).cmp(&(a1 + b1, a1)));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::parse(1, 1, "expected a JSON array of terms"))?;
        let mut p = Self::zero();
        for (i, item) in items.iter().enumerate() {
            let exp = |key: &str| {
                item.get(key)
                    .and_then(serde_json::Value::as_u64)
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or_else(|| Error::parse(1, i + 1, format!("term {i}: bad `{key}`")))
            };
            let c = json_bigint(item.get("c"))
                .ok_or_else(|| Error::parse(1, i + 1, format!("term {i}: bad `c`")))?;
            p.add_term(exp("x")?, exp("y")?, c);
        }
        Ok(p)
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(e: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn add_term(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: u32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn evaluate(&self, l: &BigInt) -> BigInt {
        self.terms.iter().map(|(&e, c)| c * pow_big(l, e)).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::parse(1, 1, "expected a JSON array of terms"))?;
        let mut p = Self::zero();
        for (i, item) in items.iter().enumerate() {
            let e = item
                .get("l")
                .and_then(serde_json::Value::as_u64)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| Error::parse(1, i + 1, format!("term {i}: bad `l`")))?;
            let c = json_bigint(item.get("c"))
                .ok_or_else(|| Error::parse(1, i + 1, format!("term {i}: bad `c`")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn pow_big(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

fn json_bigint(v: Option<&serde_json::Value>) -> Option<BigInt> {
    match v? {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Writes an integer as a JSON number when it fits in `i64`, else as a decimal string.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn serialize_bigints<S: Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    struct One<'a>(&'a BigInt);
    impl Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serialize_bigint(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&One(x))?;
    }
    seq.end()
}

struct JsonTerm<'a> {
    keys: [(&'static str, u32); 2],
    nkeys: usize,
    c: &'a BigInt,
}

impl Serialize for JsonTerm<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct C<'a>(&'a BigInt);
        impl Serialize for C<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut st = s.serialize_struct("Term", self.nkeys + 1)?;
        for &(k, v) in &self.keys[..self.nkeys] {
            st.serialize_field(k, &v)?;
        }
        st.serialize_field("c", &C(self.c))?;
        st.end()
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let order = self.display_order();
        let mut seq = s.serialize_seq(Some(order.len()))?;
        for ((a, b), c) in order {
            seq.serialize_element(&JsonTerm {
                keys: [("x", a), ("y", b)],
                nkeys: 2,
                c,
            })?;
        }
        seq.end()
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in self.terms.iter().rev() {
            seq.serialize_element(&JsonTerm {
                keys: [("l", e), ("", 0)],
                nkeys: 1,
                c,
            })?;
        }
        seq.end()
    }
}

/// Writes `terms` (already in display order) as `c*V^e*... + ...`.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    vars: &[&str],
    terms: impl Iterator<Item = (Vec<u32>, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (exps, c) in terms {
        let negative = c.is_negative();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (v, &e) in vars.iter().zip(&exps) {
            match e {
                0 => {}
                1 => factors.push((*v).to_string()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            f.write_str(&factors.join("*"))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.display_order();
        write_terms(f, &["X", "Y"], order.into_iter().map(|((a, b), c)| (vec![a, b], c)))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &["L"], self.terms.iter().rev().map(|(&e, c)| (vec![e], c)))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a sum of monomials over `vars`; returns `(exponents, coefficient)` terms.
fn parse_terms(text: &str, vars: &[&str]) -> Result<Vec<(Vec<u32>, BigInt)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut pos = 0;
    let col = |pos: usize| chars.get(pos).map_or(text.chars().count() + 1, |_| pos + 1);
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].1.is_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].1.is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().map(|&(_, c)| c).collect())
    };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            if first {
                return Err(Error::parse(1, col(pos), "empty polynomial"));
            }
            break;
        }
        let mut sign = 1;
        match chars[pos].1 {
            '+' | '-' => {
                if chars[pos].1 == '-' {
                    sign = -1;
                }
                pos += 1;
            }
            _ if !first => return Err(Error::parse(1, col(pos), "expected `+` or `-`")),
            _ => {}
        }
        first = false;
        let mut coef = BigInt::from(sign);
        let mut exps = vec![0u32; vars.len()];
        let mut need_factor = true;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                if need_factor {
                    return Err(Error::parse(1, col(pos), "expected a term"));
                }
                break;
            }
            if !need_factor {
                if chars[pos].1 == '*' {
                    pos += 1;
                    need_factor = true;
                    continue;
                }
                break;
            }
            if let Some(digits) = read_int(&mut pos) {
                coef *= digits.parse::<BigInt>().expect("digits");
            } else if let Some(v) = vars.iter().position(|v| {
                let n = v.chars().count();
                pos + n <= chars.len() && chars[pos..pos + n].iter().map(|&(_, c)| c).eq(v.chars())
            }) {
                pos += vars[v].chars().count();
                skip_ws(&mut pos);
                let mut e = 1u32;
                if pos < chars.len() && chars[pos].1 == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let at = col(pos);
                    e = read_int(&mut pos)
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| Error::parse(1, at, "expected an exponent"))?;
                }
                exps[v] += e;
            } else {
                return Err(Error::parse(
                    1,
                    col(pos),
                    format!("unexpected character `{}`", chars[pos].1),
                ));
            }
            need_factor = false;
        }
        out.push((exps, coef));
    }
    Ok(out)
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = BiPoly::zero();
        for (e, c) in parse_terms(s, &["X", "Y"])? {
            p.add_term(e[0], e[1], c);
        }
        Ok(p)
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = UniPoly::zero();
        for (e, c) in parse_terms(s, &["L"])? {
            p.add_term(e[0], c);
        }
        Ok(p)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs.clone())
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
