//! Closed form for the e-coefficients of paths.
//!
//! For `λ = (1^{a_1}, …, n^{a_n}) ⊢ n` and `A = Σ a_j`:
//!
//! ```text
//! [e_λ] X_{P_n} = multinomial(A; a) · Π_j (j-1)^{a_j}
//!              + Σ_{i: a_i>0} multinomial(A-1; a - 1_i) · Π_{j≠i} (j-1)^{a_j} · (i-1)^{a_i-1}
//! ```
//!
//! with `0^0 = 1`, so parts equal to 1 only contribute through the second sum.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::partition::{multinomial, partitions_of, Partition};
use crate::symfunc::EExpansion;

pub fn path_e_coefficient(n: u64, lam: &Partition) -> Result<BigInt> {
    if n == 0 || lam.weight() != n {
        return Err(Error::WeightMismatch { partition: lam.to_string(), weight: lam.weight(), expected: n });
    }
    let form = lam.exponential_form();
    let mults: Vec<u64> = form.iter().map(|&(_, m)| m as u64).collect();
    let powers: Vec<BigInt> = form.iter().map(|&(v, m)| BigInt::from(v - 1).pow(m as u32)).collect();

    let mut total = multinomial(&mults) * powers.iter().product::<BigInt>();
    for (i, &(value, mult)) in form.iter().enumerate() {
        let mut reduced = mults.clone();
        reduced[i] -= 1;
        let mut term = multinomial(&reduced) * BigInt::from(value - 1).pow(mult as u32 - 1);
        for (j, p) in powers.iter().enumerate() {
            if j != i {
                term *= p;
            }
        }
        if !term.is_zero() {
            total += term;
        }
    }
    Ok(total)
}

/// `X_{P_n}` assembled from [`path_e_coefficient`].
pub fn path_csf_uncached(n: u64) -> EExpansion {
    if n == 0 {
        return EExpansion::one();
    }
    let terms = partitions_of(n).map(|lam| {
        let c = path_e_coefficient(n, &lam).expect("λ ⊢ n");
        (lam, c)
    });
    EExpansion::from_terms(terms).expect("homogeneous")
}
