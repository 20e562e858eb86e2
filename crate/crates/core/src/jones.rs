//! Jones polynomials of 2-bridge links.
//!
//! Three engines compute the same polynomial:
//!
//! * [`jones_recursive`]: the skein recursion on the even continued fraction;
//! * [`jones_via_f`]: sign and power of `t` from closed forms, times the
//!   specialized F-polynomial;
//! * [`jones_direct`]: the continued fraction of q-integers built from the
//!   positive continued fraction, normalized through the even expansion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::cfrac::{
    even_cf_same_link, numerator_rec, positive_cf, tau, type_sequence, EvenCF, PositiveCF, Sign,
};
use crate::error::{Error, Result};
use crate::laurent::{q_integer, HLPoly, HalfInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Recursive,
    Direct,
    FPoly,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Recursive, Engine::Direct, Engine::FPoly];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Recursive => "recursive",
            Engine::Direct => "direct",
            Engine::FPoly => "fpoly",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Jones polynomial together with its leading term and the quotient by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesResult {
    pub poly: HLPoly,
    pub degree: HalfInt,
    pub leading_sign: Sign,
    /// `poly / (leading_sign * t^degree)`: constant term 1, degree 0.
    pub normalized: HLPoly,
    pub engine: Engine,
}

impl JonesResult {
    pub fn from_poly(poly: HLPoly, engine: Engine) -> Result<JonesResult> {
        let (degree, lead) = poly.leading_term()?;
        let leading_sign = Sign::of(&lead);
        let normalized = poly.shift(-degree).scale(&BigInt::from(leading_sign.to_i32()));
        Ok(JonesResult {
            poly,
            degree,
            leading_sign,
            normalized,
            engine,
        })
    }

    /// Same polynomial, so results of different engines compare equal here.
    pub fn same_polynomial(&self, other: &JonesResult) -> bool {
        self.poly == other.poly
    }
}

fn t_int(k: i64) -> HLPoly {
    HLPoly::t_pow(HalfInt::from_int(k))
}

fn t_half(halves: i64) -> HLPoly {
    HLPoly::t_pow(HalfInt::from_halves(halves))
}

/// `(ε, ε̄, V_[], V_[0])`: the skein coefficient, its bar, the unknot and
/// the two-component unlink.
pub fn skein_constants() -> (HLPoly, HLPoly, HLPoly, HLPoly) {
    let eps = t_half(-3) - t_half(-1);
    let eps_bar = t_half(3) - t_half(1);
    let unlink = -(t_half(-1) + t_half(1));
    (eps, eps_bar, HLPoly::one(), unlink)
}

/// Skein recursion over the prefixes of `cf`:
/// `V_k = t^{-|b_k|} V_{k-2} - t^{-1/2} [|b_k|]_q V_{k-1}` when the `k`-th
/// type is `-`, and the barred form when it is `+`.
pub fn jones_recursive(cf: &EvenCF) -> Result<JonesResult> {
    let sizes = cf.small_entries()?;
    let types = type_sequence(cf);
    let (_, _, unknot, unlink) = skein_constants();
    let mut before = unlink;
    let mut last = unknot;
    for (&b, &ty) in sizes.iter().zip(types.types()) {
        let next = match ty {
            Sign::Minus => &t_int(-(b as i64)) * &before - &t_half(-1) * &(&q_integer(b, false) * &last),
            Sign::Plus => &t_int(b as i64) * &before - &t_half(1) * &(&q_integer(b, true) * &last),
        };
        before = last;
        last = next;
    }
    JonesResult::from_poly(last, Engine::Recursive)
}

/// Specialized F-polynomial of a positive continued fraction, as the
/// numerator of a continued fraction of q-integers.
pub fn specialized_f_positive(cf: &PositiveCF) -> Result<HLPoly> {
    let a = cf.small_entries()?;
    let n = a.len();
    let mut entries = Vec::with_capacity(n);
    let mut ell = 0i64;
    for (i, &ai) in a.iter().enumerate() {
        let prev = ell;
        ell += ai as i64;
        let entry = if i == 0 {
            q_integer(ai + 1, false) - HLPoly::q_pow(1)
        } else if i % 2 == 1 {
            &q_integer(ai, false) * &HLPoly::q_pow(-ell)
        } else {
            &q_integer(ai, false) * &HLPoly::q_pow(prev + 1)
        };
        entries.push(entry);
    }
    let numerator = numerator_rec(&entries);
    Ok(if n % 2 == 0 {
        &numerator * &HLPoly::q_pow(ell)
    } else {
        numerator
    })
}

/// Specialized F-polynomial of an even continued fraction: that of the
/// positive expansion of `|value|`, mirrored and shifted when `b_1 < 0`.
pub fn specialized_f_even(cf: &EvenCF) -> Result<HLPoly> {
    let pos = positive_cf(&cf.value().abs())?;
    let f = specialized_f_positive(&pos)?;
    if cf.signs()[0] == Sign::Plus {
        return Ok(f);
    }
    let d: i64 = pos.small_entries()?.iter().sum::<usize>() as i64 - 1;
    Ok(&HLPoly::q_pow(d + 1) * &f.bar())
}

/// Specialized F-polynomial by the two-term recursion
/// `F_m = μ F_{m-2} + ν [|b_m|]_q F_{m-1}`, with `μ, ν` read off the last
/// three types. Only defined for `b_1 > 0`.
pub fn f_recursive(cf: &EvenCF) -> Result<HLPoly> {
    let sizes = cf.small_entries()?;
    if cf.signs()[0] == Sign::Minus {
        return Err(Error::WrongOrientation);
    }
    let types = type_sequence(cf);
    let types = types.types();
    let mut before = HLPoly::one();
    let mut last = q_integer(sizes[0] + 1, false) - HLPoly::q_pow(1);
    for m in 1..sizes.len() {
        let (bm, bp) = (sizes[m] as i64, sizes[m - 1] as i64);
        // the type before the first entry counts as `-`
        let third = if m >= 2 { types[m - 2] } else { Sign::Minus };
        let (mu, nu) = match (third, types[m - 1], types[m]) {
            (_, Sign::Minus, Sign::Minus) => (t_int(1 - bm), HLPoly::one()),
            (Sign::Minus, Sign::Plus, Sign::Minus) => (t_int(-bm - bp), HLPoly::one()),
            (Sign::Plus, Sign::Plus, Sign::Minus) => (-t_int(1 - bm - bp), HLPoly::one()),
            (_, Sign::Minus, Sign::Plus) => (HLPoly::one(), -t_int(-1)),
            (Sign::Minus, Sign::Plus, Sign::Plus) => (-t_int(-bp), HLPoly::one()),
            (Sign::Plus, Sign::Plus, Sign::Plus) => (t_int(1 - bp), HLPoly::one()),
        };
        let next = &mu * &before + &nu * &(&q_integer(sizes[m], false) * &last);
        before = last;
        last = next;
    }
    Ok(last)
}

/// Degree `j` and leading sign `δ = (-1)^{m-τ}` of the Jones polynomial of
/// `cf`, with `2j = Σ max(2 (-1)^{i+1} b_i + sign(b_i b_{i-1}), -1)` and
/// `sign(b_0) = 1`.
pub fn degree_and_sign(cf: &EvenCF) -> Result<(HalfInt, Sign)> {
    let b = cf.signed_entries()?;
    let mut halves = 0i64;
    let mut prev_sign = 1i64;
    for (i, &bi) in b.iter().enumerate() {
        let alt = if i % 2 == 0 { 1 } else { -1 };
        let sign = bi.signum();
        halves += (2 * alt * bi + sign * prev_sign).max(-1);
        prev_sign = sign;
    }
    let ts = type_sequence(cf);
    let delta = Sign::alternating(cf.len() - tau(&ts));
    Ok((HalfInt::from_halves(halves), delta))
}

/// `δ t^j F_{b_1..b_m}`.
pub fn jones_via_f(cf: &EvenCF) -> Result<JonesResult> {
    let (j, delta) = degree_and_sign(cf)?;
    let f = specialized_f_even(cf)?;
    let poly = f.shift(j).scale(&BigInt::from(delta.to_i32()));
    JonesResult::from_poly(poly, Engine::FPoly)
}

/// Jones polynomial from the positive continued fraction: the normalized
/// part is [`specialized_f_positive`], the leading term comes from the even
/// expansion of the same link.
pub fn jones_direct(cf: &PositiveCF) -> Result<JonesResult> {
    let f = specialized_f_positive(cf)?;
    let value = cf.value();
    if value.num().is_one() && value.den().is_one() {
        // [1] is the unknot
        return JonesResult::from_poly(f, Engine::Direct);
    }
    let (j, delta) = degree_and_sign(&even_cf_same_link(&value)?)?;
    let poly = f.shift(j).scale(&BigInt::from(delta.to_i32()));
    JonesResult::from_poly(poly, Engine::Direct)
}

/// The first three and last three absolute coefficients
/// `(v_0, v_1, v_2, v_{ℓ-2}, v_{ℓ-1}, v_ℓ)` of the normalized Jones
/// polynomial, `ℓ = a_1 + ... + a_n`, from closed forms in `n`, the number
/// `α` of entries equal to 1, and whether `a_1` or `a_n` equals 2.
///
/// For even `n`, `v_2` carries the correction `-δ_{a_n,2}`. Inputs with
/// `ℓ < 4` are rejected: there the six positions overlap and the closed
/// forms contradict each other.
pub fn boundary_coefficients(cf: &PositiveCF) -> Result<[BigInt; 6]> {
    let a = cf.entries();
    let two = BigInt::from(2);
    let (first, last) = (&a[0], &a[a.len() - 1]);
    if *first < two || *last < two {
        return Err(Error::HypothesisViolated(format!(
            "boundary coefficients need a_1 >= 2 and a_n >= 2, got {cf}"
        )));
    }
    if cf.tile_count() < BigInt::from(3) {
        return Err(Error::HypothesisViolated(format!(
            "boundary coefficients need a_1 + ... + a_n >= 4, got {cf}"
        )));
    }
    let alpha = BigInt::from(a.iter().filter(|x| x.is_one()).count());
    let d1 = BigInt::from((*first == two) as u8);
    let dn = BigInt::from((*last == two) as u8);
    let k = BigInt::from(a.len() / 2);
    let one = BigInt::one();
    let (v1, v2, w2, w1) = if a.len() % 2 == 1 {
        (
            k.clone(),
            (&k + 1u8) * (&k + 2u8) / 2u8 - &alpha,
            (&k * &k + &k * 5u8 + 2u8) / 2u8 - &alpha - &d1 - &dn,
            &k + 1u8,
        )
    } else {
        let base = &k * (&k + 3u8) / 2u8 - &alpha;
        (k.clone(), &base - &dn, &base - &d1, k)
    };
    Ok([one.clone(), v1, v2, w2, w1, one])
}

/// Bounds `(0.35367 (n-2), 30 v_3 (n-1))` on the hyperbolic volume of the
/// complement, `v_3 = 1.0149`, valid when every `a_i >= 3`.
pub fn volume_bounds(cf: &PositiveCF) -> Result<(f64, f64)> {
    if let Some(bad) = cf.entries().iter().find(|x| **x < BigInt::from(3)) {
        return Err(Error::HypothesisViolated(format!(
            "volume bounds need every a_i >= 3, found {bad} in {cf}"
        )));
    }
    let n = cf.len() as f64;
    Ok((0.35367 * (n - 2.0), 30.0 * 1.0149 * (n - 1.0)))
}

/// Jones polynomial of the mirror image.
pub fn mirror(res: &JonesResult) -> JonesResult {
    JonesResult::from_poly(res.poly.bar(), res.engine).expect("Jones polynomials are nonzero")
}
