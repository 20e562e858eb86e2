//! Laurent polynomials in `t^{1/2}` and multilinear tile polynomials.
//!
//! Exponents of [`HLPoly`] are stored as integer multiples of `1/2`, so knot
//! polynomials (integer exponents) and 2-component link polynomials
//! (exponents in `1/2 + Z`) share one type.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A half-integer `k/2`, stored as `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_halves(halves: i64) -> Self {
        HalfInt(halves)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// `k` or `k/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse(0, format!("invalid exponent {s:?}"));
        match s.split_once('/') {
            Some((k, "2")) => {
                let k: i64 = k.trim().parse().map_err(|_| bad())?;
                Ok(HalfInt(k))
            }
            Some(_) => Err(bad()),
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                n.checked_mul(2).map(HalfInt).ok_or_else(bad)
            }
        }
    }
}

/// Laurent polynomial in `t^{1/2}` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HLPoly {
    // half-unit exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl HLPoly {
    pub fn zero() -> Self {
        HLPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, HalfInt::ZERO)
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: HalfInt) -> Self {
        let mut p = HLPoly::zero();
        p.add_term(e.0, c.into());
        p
    }

    /// `t^e`.
    pub fn t_pow(e: HalfInt) -> Self {
        Self::monomial(1, e)
    }

    /// `q^k` with `q = -t^{-1}`.
    pub fn q_pow(k: i64) -> Self {
        let c = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(c, HalfInt::from_int(-k))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (HalfInt, C)>,
        C: Into<BigInt>,
    {
        let mut p = HLPoly::zero();
        for (e, c) in terms {
            p.add_term(e.0, c.into());
        }
        p
    }

    /// Builds from integer exponents.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (HalfInt::from_int(e), c)))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: HalfInt) -> BigInt {
        self.terms.get(&e.0).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, &BigInt)> + '_ {
        self.terms.iter().rev().map(|(&e, c)| (HalfInt(e), c))
    }

    /// The bar involution `t^{1/2} -> t^{-1/2}`.
    pub fn bar(&self) -> HLPoly {
        HLPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: HalfInt) -> HLPoly {
        HLPoly {
            terms: self.terms.iter().map(|(&k, c)| (k + e.0, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> HLPoly {
        if c.is_zero() {
            return HLPoly::zero();
        }
        HLPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Highest exponent and its coefficient.
    pub fn leading_term(&self) -> Result<(HalfInt, BigInt)> {
        self.terms
            .iter()
            .next_back()
            .map(|(&e, c)| (HalfInt(e), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Lowest exponent and its coefficient.
    pub fn trailing_term(&self) -> Result<(HalfInt, BigInt)> {
        self.terms
            .iter()
            .next()
            .map(|(&e, c)| (HalfInt(e), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn degree(&self) -> Result<HalfInt> {
        self.leading_term().map(|(e, _)| e)
    }

    /// Highest minus lowest exponent.
    pub fn width(&self) -> Result<HalfInt> {
        Ok(self.leading_term()?.0 - self.trailing_term()?.0)
    }

    /// `Some(true)` when all exponents are integers, `Some(false)` when all
    /// lie in `1/2 + Z`, `None` when mixed or zero.
    pub fn integer_grid(&self) -> Option<bool> {
        let mut parities = self.terms.keys().map(|e| e.rem_euclid(2) == 0);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }

    /// Whether the coefficient signs alternate with the exponent on the
    /// integer grid, i.e. the polynomial is `±Σ(-1)^i a_i t^i` with
    /// `a_i >= 0` after shifting half-integer exponents by `1/2`.
    pub fn is_alternating(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        if self.integer_grid().is_none() {
            return Err(Error::MixedGrid);
        }
        let mut signs = self.terms.iter().map(|(&e, c)| {
            let step = Integer::div_floor(&e, &2);
            c.is_positive() == (step.rem_euclid(2) == 0)
        });
        let first = signs.next().unwrap();
        Ok(signs.all(|s| s == first))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &HLPoly) -> Option<HLPoly> {
        let (d_lead, d_coeff) = divisor.leading_term().ok()?;
        let (d_low, _) = divisor.trailing_term().ok()?;
        let Ok((a_low, _)) = self.trailing_term() else {
            return Some(HLPoly::zero());
        };
        // an exact quotient has lowest exponent a_low - d_low
        let q_low = a_low - d_low;
        let mut rem = self.clone();
        let mut quot = HLPoly::zero();
        while let Ok((r_lead, r_coeff)) = rem.leading_term() {
            if r_lead - d_lead < q_low {
                return None;
            }
            let (c, r) = r_coeff.div_rem(&d_coeff);
            if !r.is_zero() {
                return None;
            }
            let term = HLPoly::monomial(c, r_lead - d_lead);
            rem = &rem - &(&term * divisor);
            quot = quot + term;
        }
        Some(quot)
    }

    /// LaTeX rendering, e.g. `-t^{5/2}-t^{1/2}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if e == HalfInt::ZERO {
                out.push_str(&mag.to_string());
                continue;
            }
            if !unit {
                out.push_str(&mag.to_string());
            }
            if e == HalfInt::from_int(1) {
                out.push('t');
            } else {
                out.push_str(&format!("t^{{{e}}}"));
            }
        }
        out
    }
}

impl fmt::Display for HLPoly {
    /// `c*t^(e)` terms in descending order, e.g. `t^(-1) + t^(-3) - t^(-4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == HalfInt::ZERO {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "t^({e})")?;
            } else {
                write!(f, "{mag}*t^({e})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for HLPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TermParser { src: s.as_bytes(), pos: 0 }.parse()
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", b as char)))
        }
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// What follows a `t`: nothing, `^k` or `^(k)`, `^(k/2)`.
    fn power(&mut self) -> Result<HalfInt> {
        if !self.eat(b'^') {
            return Ok(HalfInt::from_int(1));
        }
        if self.peek() == Some(b'(') {
            return self.exponent();
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let k: i64 = self
            .digits()
            .ok_or_else(|| Error::parse(at, "expected exponent digits"))?
            .parse()
            .map_err(|_| Error::parse(at, "exponent out of range"))?;
        Ok(HalfInt::from_int(if neg { -k } else { k }))
    }

    fn exponent(&mut self) -> Result<HalfInt> {
        self.expect(b'(')?;
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        let at = self.pos;
        let k: i64 = self
            .digits()
            .ok_or_else(|| Error::parse(at, "expected exponent digits"))?
            .parse()
            .map_err(|_| Error::parse(start, "exponent out of range"))?;
        let k = if neg { -k } else { k };
        self.skip_ws();
        let e = if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            if self.digits() != Some("2") {
                return Err(Error::parse(at, "only halves are allowed as exponent denominators"));
            }
            HalfInt(k)
        } else {
            HalfInt::from_int(k)
        };
        self.skip_ws();
        self.expect(b')')?;
        Ok(e)
    }

    fn parse(mut self) -> Result<HLPoly> {
        let mut poly = HLPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        if self.eat(b'0') {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(poly);
            }
            self.pos = 0;
            self.skip_ws();
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                if first {
                    return Err(Error::parse(self.pos - 1, "leading '+'"));
                }
                false
            } else if first {
                false
            } else {
                return Err(Error::parse(self.pos, "expected '+' or '-'"));
            };
            first = false;
            self.skip_ws();
            let coeff_at = self.pos;
            let coeff = self.digits().map(|d| d.parse::<BigInt>().unwrap());
            let exp = if coeff.is_some() {
                if self.eat(b'*') {
                    self.expect(b't')?;
                    Some(self.power()?)
                } else if self.eat(b't') {
                    Some(self.power()?)
                } else {
                    None
                }
            } else if self.eat(b't') {
                Some(self.power()?)
            } else {
                return Err(Error::parse(coeff_at, "expected a coefficient or 't'"));
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if c.is_zero() {
                return Err(Error::parse(coeff_at, "zero coefficient"));
            }
            if neg {
                c = -c;
            }
            poly.add_term(exp.unwrap_or(HalfInt::ZERO).0, c);
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(poly);
            }
        }
    }
}

impl Add for HLPoly {
    type Output = HLPoly;
    fn add(mut self, rhs: HLPoly) -> HLPoly {
        self += &rhs;
        self
    }
}

impl Add<&HLPoly> for &HLPoly {
    type Output = HLPoly;
    fn add(self, rhs: &HLPoly) -> HLPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&HLPoly> for HLPoly {
    fn add_assign(&mut self, rhs: &HLPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for HLPoly {
    type Output = HLPoly;
    fn neg(self) -> HLPoly {
        HLPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &HLPoly {
    type Output = HLPoly;
    fn neg(self) -> HLPoly {
        -self.clone()
    }
}

impl Sub for HLPoly {
    type Output = HLPoly;
    fn sub(self, rhs: HLPoly) -> HLPoly {
        self + (-rhs)
    }
}

impl Sub<&HLPoly> for &HLPoly {
    type Output = HLPoly;
    fn sub(self, rhs: &HLPoly) -> HLPoly {
        self + &(-rhs)
    }
}

impl Mul<&HLPoly> for &HLPoly {
    type Output = HLPoly;
    fn mul(self, rhs: &HLPoly) -> HLPoly {
        let mut out = HLPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HLPoly {
    type Output = HLPoly;
    fn mul(self, rhs: HLPoly) -> HLPoly {
        &self * &rhs
    }
}

impl Zero for HLPoly {
    fn zero() -> Self {
        HLPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for HLPoly {
    fn one() -> Self {
        HLPoly::one()
    }
}

impl std::iter::Sum for HLPoly {
    fn sum<I: Iterator<Item = HLPoly>>(iter: I) -> HLPoly {
        iter.fold(HLPoly::zero(), |a, b| a + b)
    }
}

/// `[b]_q = 1 + q + ... + q^{b-1}` at `q = -t^{-1}`, or at `q̄ = -t` when
/// `barred`.
pub fn q_integer(b: usize, barred: bool) -> HLPoly {
    let dir = if barred { 1 } else { -1 };
    HLPoly::from_terms((0..b as i64).map(|k| {
        let c = if k % 2 == 0 { 1 } else { -1 };
        (HalfInt::from_int(dir * k), c)
    }))
}

/// Largest tile index a [`YPoly`] can carry.
pub const MAX_TILES: usize = 63;

/// Polynomial in tile variables `y_1, ..., y_d` with every exponent 0 or 1.
/// Monomials are stored as bitsets, bit `j - 1` standing for `y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct YPoly {
    terms: BTreeMap<u64, BigInt>,
}

impl YPoly {
    pub fn zero() -> Self {
        YPoly::default()
    }

    pub fn one() -> Self {
        let mut p = YPoly::zero();
        p.add_monomial(0, BigInt::one());
        p
    }

    /// Monomial `c * Π_{j in tiles} y_j`, tiles numbered from 1.
    pub fn monomial(tiles: &[usize], c: impl Into<BigInt>) -> Result<Self> {
        let mut p = YPoly::zero();
        p.add_monomial(Self::mask(tiles)?, c.into());
        Ok(p)
    }

    pub(crate) fn mask(tiles: &[usize]) -> Result<u64> {
        tiles.iter().try_fold(0u64, |m, &j| {
            if j == 0 || j > MAX_TILES {
                Err(Error::TooManyTiles(j))
            } else {
                Ok(m | 1 << (j - 1))
            }
        })
    }

    pub(crate) fn add_monomial(&mut self, mask: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `Π_{j in tiles} y_j`.
    pub fn coeff(&self, tiles: &[usize]) -> BigInt {
        Self::mask(tiles)
            .ok()
            .and_then(|m| self.terms.get(&m).cloned())
            .unwrap_or_default()
    }

    /// `(tile indices, coefficient)` pairs, ordered by bitset value.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> + '_ {
        self.terms.iter().map(|(&m, c)| (tiles_of(m), c))
    }

    /// Largest variable index present, 0 for a constant.
    pub fn max_var(&self) -> usize {
        self.terms
            .keys()
            .fold(0u64, |acc, m| acc | m)
            .checked_ilog2()
            .map_or(0, |b| b as usize + 1)
    }

    /// Replaces each monomial `y^S` by `y^{{1..d} \ S}`, which equals
    /// `y_1 ... y_d` times the monomial with all exponents negated.
    pub fn complement(&self, d: usize) -> Result<YPoly> {
        if d > MAX_TILES {
            return Err(Error::TooManyTiles(d));
        }
        let full = full_mask(d);
        Ok(YPoly {
            terms: self.terms.iter().map(|(&m, c)| (full & !m, c.clone())).collect(),
        })
    }

    /// Product of polynomials in disjoint sets of variables; `None` when a
    /// variable would be squared.
    pub fn checked_mul(&self, rhs: &YPoly) -> Option<YPoly> {
        let mut out = YPoly::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                if m1 & m2 != 0 {
                    return None;
                }
                out.add_monomial(m1 | m2, c1 * c2);
            }
        }
        Some(out)
    }

    /// Substitutes `y_1 = t^{-2}` and `y_j = -t^{-1}` for `j >= 2`.
    pub fn specialize(&self, d: usize) -> Result<HLPoly> {
        specialize_y(self, d)
    }
}

impl Add for YPoly {
    type Output = YPoly;
    fn add(mut self, rhs: YPoly) -> YPoly {
        for (m, c) in rhs.terms {
            self.add_monomial(m, c);
        }
        self
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // by total degree, then lexicographically
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a.cmp(b)));
        for (i, (tiles, c)) in terms.into_iter().enumerate() {
            if c.is_negative() {
                f.write_str(if i == 0 { "-" } else { " - " })?;
            } else if i > 0 {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if tiles.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let vars: Vec<String> = tiles.iter().map(|j| format!("y{j}")).collect();
            f.write_str(&vars.join("*"))?;
        }
        Ok(())
    }
}

pub(crate) fn full_mask(d: usize) -> u64 {
    if d == 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

fn tiles_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// `F(y_1 = t^{-2}, y_j = -t^{-1})` for a polynomial in `y_1..y_d`.
pub fn specialize_y(poly: &YPoly, d: usize) -> Result<HLPoly> {
    if d > MAX_TILES {
        return Err(Error::TooManyTiles(d));
    }
    if poly.max_var() > d {
        return Err(Error::OutOfRange(format!(
            "variable y{} outside tiles 1..={d}",
            poly.max_var()
        )));
    }
    let mut out = HLPoly::zero();
    for (&mask, c) in &poly.terms {
        let has_first = mask & 1 == 1;
        let others = (mask >> 1).count_ones() as i64;
        // y_1 -> t^{-2}, y_j -> -t^{-1}
        let halves = -4 * has_first as i64 - 2 * others;
        let c = if others % 2 == 0 { c.clone() } else { -c };
        out.add_term(halves, c);
    }
    Ok(out)
}
