//! Exact rationals and continued fractions.
//!
//! Two kinds of expansions are used throughout the crate: positive ones
//! (every entry `>= 1`, computed by the Euclidean algorithm) and even ones
//! (every entry even and nonzero, computed by division with an even quotient
//! and a remainder in `[-|q|, |q|)`). A rational `p/q` has an even expansion
//! exactly when `p` and `q` are not both odd.

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::OutOfRange("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::ZeroTail);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p/q` or a bare integer, surrounding whitespace allowed.
    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let parse_int = |text: &str, offset: usize| {
            text.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::parse(offset, format!("expected an integer, found {:?}", text.trim())))
        };
        let n = parse_int(num, 0)?;
        match den {
            Some(d) => {
                let d = parse_int(d, num.len() + 1)?;
                if d.is_zero() {
                    return Err(Error::parse(num.len() + 1, "zero denominator"));
                }
                Rat::new(n, d)
            }
            None => Ok(Rat::from_integer(n)),
        }
    }
}

/// `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `(-1)^k`
    pub fn alternating(k: usize) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

fn small(x: &BigInt) -> Result<usize> {
    x.abs()
        .to_usize()
        .filter(|v| *v <= u32::MAX as usize)
        .ok_or_else(|| Error::OutOfRange(format!("entry {x} is too large for polynomial arithmetic")))
}

/// Continued fraction `[a_1, ..., a_n]` with every entry `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveCF {
    entries: Vec<BigInt>,
}

impl PositiveCF {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyCf);
        }
        if let Some(bad) = entries.iter().find(|a| !a.is_positive()) {
            return Err(Error::InvalidEntry {
                entry: bad.to_string(),
                reason: "positive continued fraction entries must be >= 1",
            });
        }
        Ok(PositiveCF { entries })
    }

    pub fn from_slice(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entries as machine integers, for constructions whose size is linear
    /// in the entries (snake graphs, polynomials).
    pub fn small_entries(&self) -> Result<Vec<usize>> {
        self.entries.iter().map(small).collect()
    }

    /// Partial sums `l_i = a_1 + ... + a_i` for `i = 1..=n`.
    pub fn partial_sums(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .scan(BigInt::zero(), |acc, a| {
                *acc += a;
                Some(acc.clone())
            })
            .collect()
    }

    /// Number of tiles `d = a_1 + ... + a_n - 1` of the snake graph.
    pub fn tile_count(&self) -> BigInt {
        self.entries.iter().sum::<BigInt>() - 1
    }

    pub fn value(&self) -> Rat {
        eval_cf(&self.entries).expect("positive continued fractions have no zero tail")
    }

    /// The non-canonical expansion `[a_1, ..., a_n - 1, 1]` of the same value.
    /// Returns `None` for `[1]`, whose last entry cannot be split.
    pub fn split_last(&self) -> Option<PositiveCF> {
        let last = self.entries.last()?;
        if last.is_one() {
            return None;
        }
        let mut entries = self.entries.clone();
        *entries.last_mut().unwrap() -= 1;
        entries.push(BigInt::one());
        Some(PositiveCF { entries })
    }
}

impl fmt::Display for PositiveCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.entries)
    }
}

/// Continued fraction `[b_1, ..., b_m]` with every entry even and nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenCF {
    entries: Vec<BigInt>,
}

impl EvenCF {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyCf);
        }
        if let Some(bad) = entries.iter().find(|b| b.is_zero() || b.is_odd()) {
            return Err(Error::InvalidEntry {
                entry: bad.to_string(),
                reason: "even continued fraction entries must be even and nonzero",
            });
        }
        Ok(EvenCF { entries })
    }

    pub fn from_slice(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&b| BigInt::from(b)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn small_entries(&self) -> Result<Vec<usize>> {
        self.entries.iter().map(small).collect()
    }

    /// Signed entries as `i64`.
    pub fn signed_entries(&self) -> Result<Vec<i64>> {
        self.entries
            .iter()
            .map(|b| {
                small(b)?;
                Ok(b.to_i64().unwrap())
            })
            .collect()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.entries.iter().map(Sign::of).collect()
    }

    pub fn value(&self) -> Rat {
        eval_cf(&self.entries).expect("even continued fractions have no zero tail")
    }

    /// `[-b_1, ..., -b_m]`, the expansion of the mirror link.
    pub fn negated(&self) -> EvenCF {
        EvenCF {
            entries: self.entries.iter().map(|b| -b).collect(),
        }
    }

    /// The prefix `[b_1, ..., b_k]`, `1 <= k <= m`.
    pub fn prefix(&self, k: usize) -> Option<EvenCF> {
        (1..=self.len()).contains(&k).then(|| EvenCF {
            entries: self.entries[..k].to_vec(),
        })
    }
}

impl fmt::Display for EvenCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.entries)
    }
}

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[BigInt]) -> fmt::Result {
    f.write_str("[")?;
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str("]")
}

/// Sign sequence of an even continued fraction: `|b_i|` copies of
/// `(-1)^{i+1} sgn(b_i)` for each block `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSeq {
    signs: Vec<Sign>,
    block_offsets: Vec<usize>,
}

impl SignSeq {
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Start index of each block; block `i` covers
    /// `block_offsets[i]..block_offsets[i] + |b_{i+1}|`.
    pub fn block_offsets(&self) -> &[usize] {
        &self.block_offsets
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signs(f, &self.signs)
    }
}

/// Type sequence `(sgn(b_1), -sgn(b_2), ..., (-1)^{m+1} sgn(b_m))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSeq(Vec<Sign>);

impl TypeSeq {
    pub fn new(types: Vec<Sign>) -> Self {
        TypeSeq(types)
    }

    pub fn types(&self) -> &[Sign] {
        &self.0
    }

    pub fn last(&self) -> Option<Sign> {
        self.0.last().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TypeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signs(f, &self.0)
    }
}

fn write_signs(f: &mut fmt::Formatter<'_>, signs: &[Sign]) -> fmt::Result {
    f.write_str("(")?;
    for (i, s) in signs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{s}")?;
    }
    f.write_str(")")
}

/// Evaluates `[c_1, ..., c_n] = c_1 + 1/(c_2 + 1/(... + 1/c_n))` exactly,
/// right to left.
pub fn eval_cf(entries: &[BigInt]) -> Result<Rat> {
    let (last, rest) = entries.split_last().ok_or(Error::EmptyCf)?;
    let mut value = Rat::from_integer(last.clone());
    for c in rest.iter().rev() {
        value = Rat::from_integer(c.clone()) + value.recip()?;
    }
    if value.is_zero() {
        return Err(Error::ZeroTail);
    }
    Ok(value)
}

/// Euclidean expansion of `r >= 1`. The result ends in an entry `>= 2`
/// unless it has length one.
pub fn positive_cf(r: &Rat) -> Result<PositiveCF> {
    if r.num() < r.den() {
        return Err(Error::OutOfRange(format!(
            "positive continued fractions need a value >= 1, got {r}"
        )));
    }
    let mut p = r.num().clone();
    let mut q = r.den().clone();
    let mut entries = Vec::new();
    while !q.is_zero() {
        let (a, rem) = p.div_rem(&q);
        entries.push(a);
        p = q;
        q = rem;
    }
    PositiveCF::new(entries)
}

/// The unique pair `(b, s)` with `p = b*q + s`, `b` even and
/// `-|q| <= s < |q|`. Fails when that `b` is zero.
pub fn even_division(p: &BigInt, q: &BigInt) -> Result<(BigInt, BigInt)> {
    if q.is_zero() {
        return Err(Error::OutOfRange("division by zero".into()));
    }
    let q_abs = q.abs();
    // quotient with respect to |q|, then fix the sign of q
    let half = (p + &q_abs).div_floor(&(&q_abs * 2));
    let b_abs: BigInt = half * 2;
    let b = if q.is_negative() { -b_abs } else { b_abs };
    if b.is_zero() {
        return Err(Error::NoEvenQuotient {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    let s = p - &b * q;
    Ok((b, s))
}

/// The unique even expansion of `r`, with `|r| > 1` and not both of
/// numerator and denominator odd.
pub fn even_cf(r: &Rat) -> Result<EvenCF> {
    if r.num().is_odd() && r.den().is_odd() {
        return Err(Error::BothOdd {
            p: r.num().to_string(),
            q: r.den().to_string(),
        });
    }
    if r.num().abs() <= *r.den() {
        return Err(Error::OutOfRange(format!(
            "even continued fractions need |value| > 1, got {r}"
        )));
    }
    let mut p = r.num().clone();
    let mut q = r.den().clone();
    let mut entries = Vec::new();
    loop {
        let (b, s) = even_division(&p, &q)?;
        entries.push(b);
        if s.is_zero() {
            break;
        }
        p = q;
        q = s;
    }
    EvenCF::new(entries)
}

fn require_link_value(r: &Rat) -> Result<()> {
    if r.num() <= r.den() || !r.den().is_positive() {
        return Err(Error::OutOfRange(format!(
            "2-bridge link values must satisfy p > q >= 1, got {r}"
        )));
    }
    Ok(())
}

/// Even expansion describing the link `C(p/q)`: `p/q` itself when `pq` is
/// even, otherwise `p/(p-q)`.
pub fn even_cf_for_link(r: &Rat) -> Result<EvenCF> {
    require_link_value(r)?;
    if (r.num() * r.den()).is_even() {
        even_cf(r)
    } else {
        even_cf(&Rat::new(r.num().clone(), r.num() - r.den())?)
    }
}

/// Even expansion whose Jones polynomial coincides with the one of the
/// positive expansion of `r`, orientation included. Agrees with
/// [`even_cf_for_link`] when `pq` is even; otherwise it is the expansion of
/// `-p/(p-q)`, the mirror of the `p/(p-q)` fallback.
pub fn even_cf_same_link(r: &Rat) -> Result<EvenCF> {
    require_link_value(r)?;
    if (r.num() * r.den()).is_even() {
        even_cf(r)
    } else {
        Ok(even_cf(&Rat::new(r.num().clone(), r.num() - r.den())?)?.negated())
    }
}

/// Numerator recursion `N[] = 1`, `N[L_1] = L_1`,
/// `N[L_1..L_k] = L_k N[L_1..L_{k-1}] + N[L_1..L_{k-2}]` over any
/// commutative ring.
pub fn numerator_rec<T>(entries: &[T]) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut prev = T::one();
    let mut cur = match entries.first() {
        Some(first) => first.clone(),
        None => return T::one(),
    };
    for entry in &entries[1..] {
        let next = entry.clone() * cur.clone() + prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Euler-Minding expansion of the numerator: the sum, over all ways of
/// deleting pairwise disjoint pairs of adjacent entries, of the product of
/// the remaining entries. Division free.
pub fn euler_minding<T>(entries: &[T]) -> T
where
    T: Clone + One + Zero + Add<Output = T> + Mul<Output = T>,
{
    fn go<T>(entries: &[T], acc: T, out: &mut T)
    where
        T: Clone + One + Zero + Add<Output = T> + Mul<Output = T>,
    {
        match entries {
            [] => {
                let total = std::mem::replace(out, T::zero());
                *out = total + acc;
            }
            [first, rest @ ..] => {
                go(rest, acc.clone() * first.clone(), out);
                if let [_, tail @ ..] = rest {
                    go(tail, acc, out);
                }
            }
        }
    }
    let mut out = T::zero();
    go(entries, T::one(), &mut out);
    out
}

pub fn sign_sequence(cf: &EvenCF) -> SignSeq {
    let types = type_sequence(cf);
    let mut signs = Vec::new();
    let mut block_offsets = Vec::with_capacity(cf.len());
    for (b, ty) in cf.entries().iter().zip(types.types()) {
        block_offsets.push(signs.len());
        let len = b.abs().to_usize().expect("entry too large for a sign sequence");
        signs.extend(std::iter::repeat(*ty).take(len));
    }
    SignSeq {
        signs,
        block_offsets,
    }
}

pub fn type_sequence(cf: &EvenCF) -> TypeSeq {
    TypeSeq(
        cf.entries()
            .iter()
            .enumerate()
            .map(|(i, b)| Sign::alternating(i) * Sign::of(b))
            .collect(),
    )
}

/// Number of (overlapping) occurrences of `+,+` in a type sequence.
pub fn tau(ts: &TypeSeq) -> usize {
    ts.types()
        .windows(2)
        .filter(|w| w[0] == Sign::Plus && w[1] == Sign::Plus)
        .count()
}

/// Number of indices `i` with `sgn(b_i) != sgn(b_{i+1})`.
pub fn sign_changes(cf: &EvenCF) -> usize {
    cf.signs().windows(2).filter(|w| w[0] != w[1]).count()
}
