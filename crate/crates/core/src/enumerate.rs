//! Exhaustive enumeration of small continued fractions, for sweeps.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::cfrac::{EvenCF, PositiveCF, Rat};

/// Every positive continued fraction with entry sum at most `max_sum` and
/// entries at most `max_entry`, including the non-canonical ones ending in 1.
pub fn positive_cfs(max_sum: usize, max_entry: usize) -> Vec<PositiveCF> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<i64>::new(), 0usize)];
    while let Some((prefix, sum)) = stack.pop() {
        if !prefix.is_empty() {
            out.push(PositiveCF::from_slice(&prefix).expect("positive entries"));
        }
        for a in (1..=max_entry.min(max_sum - sum)).rev() {
            let mut next = prefix.clone();
            next.push(a as i64);
            stack.push((next, sum + a));
        }
    }
    out
}

/// Every even continued fraction whose entries have absolute values in
/// `sizes` and whose absolute entry sum is at most `max_sum`.
pub fn even_cfs(max_sum: usize, sizes: &[usize]) -> Vec<EvenCF> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<i64>::new(), 0usize)];
    while let Some((prefix, sum)) = stack.pop() {
        if !prefix.is_empty() {
            out.push(EvenCF::from_slice(&prefix).expect("even nonzero entries"));
        }
        for &b in sizes.iter().rev() {
            if sum + b > max_sum {
                continue;
            }
            for s in [-1, 1] {
                let mut next = prefix.clone();
                next.push(s * b as i64);
                stack.push((next, sum + b));
            }
        }
    }
    out
}

/// Every reduced `p/q` with `1 <= q < p <= max_p`.
pub fn fractions(max_p: u64) -> Vec<Rat> {
    let mut out = Vec::new();
    for p in 2..=max_p {
        for q in 1..p {
            if p.gcd(&q) == 1 {
                out.push(Rat::new(BigInt::from(p), BigInt::from(q)).expect("nonzero denominator"));
            }
        }
    }
    out
}
