//! Deciding `Σ_{k=1}^{D} (n/2)^{-1/2^k} ≥ 1` without a floating-point verdict.
//!
//! With `y = (n/2)^{-1/2^D}` the sum is `g(y) = Σ_{j<D} y^{2^j}`, increasing
//! in `y`. A double-precision estimate settles almost every case; near the
//! boundary `y` and the root of `g(y) = 1` are bracketed by dyadic
//! bisection with exact integer comparisons.

use num_bigint::BigInt;
use num_traits::One;

const FLOAT_MARGIN: f64 = 1e-9;
const MAX_BISECTIONS: u32 = 512;

/// Whether the sum with `terms` terms reaches 1.
pub fn degree_sum_reaches_one(n: u64, terms: u32) -> bool {
    if terms == 0 {
        return false;
    }
    if n <= 2 {
        // every term is at least 1
        return true;
    }
    let x = n as f64 / 2.0;
    let estimate: f64 = (1..=terms).map(|k| x.powf(-1.0 / 2f64.powi(k as i32))).sum();
    if (estimate - 1.0).abs() > FLOAT_MARGIN || terms > 6 {
        // past six terms the sum exceeds 1 by a wide margin for any u64 n
        return estimate >= 1.0;
    }
    exact(n, terms)
}

fn exact(n: u64, d: u32) -> bool {
    let top = 1u64 << d;
    let n_big = BigInt::from(n);
    // y_x ≥ p/2^b  ⇔  2 · 2^{b·2^d} ≥ n · p^{2^d}
    let y_at_least = |p: &BigInt, b: u32| -> bool {
        let lhs = BigInt::from(2) << (b as u64 * top) as usize;
        lhs >= &n_big * p.pow(top as u32)
    };
    // g(p/2^b) ≥ 1  ⇔  Σ_j p^{2^j} 2^{b(2^{d-1} - 2^j)} ≥ 2^{b·2^{d-1}}
    let g_at_least_one = |p: &BigInt, b: u32| -> bool {
        let half = 1u64 << (d - 1);
        let mut sum = BigInt::from(0);
        for j in 0..d {
            let e = 1u64 << j;
            sum += p.pow(e as u32) << (b as u64 * (half - e)) as usize;
        }
        sum >= (BigInt::one() << (b as u64 * half) as usize)
    };
    // invariant: y_x and the root both lie in [lo, lo + 1] / 2^b
    let mut lo = BigInt::from(0);
    for b in 1..=MAX_BISECTIONS {
        let c = (&lo << 1usize) + 1;
        let (y_above, root_below) = (y_at_least(&c, b), g_at_least_one(&c, b));
        match (y_above, root_below) {
            (true, true) => return true,
            (false, false) => return false,
            (true, false) => lo = c,
            (false, true) => lo <<= 1usize,
        }
    }
    // unresolved only if y_x is the root itself, where the sum equals 1
    true
}
