//! Closed forms for individual spider coefficients.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::graph::Spider;
use crate::partition::Partition;

/// `1 + Σ (λ_i mod m)`.
pub fn residue_sum(s: &Spider, m: u64) -> u64 {
    1 + s.legs().parts().iter().map(|&l| l % m).sum::<u64>()
}

/// Whether `s` has a connected partition of type `(m^q, r)`, `n = mq + r`,
/// decided from leg residues alone.
pub fn has_mod_type(s: &Spider, m: u64) -> bool {
    assert!(m > 1, "modulus must exceed 1");
    let r = s.vertex_count() % m;
    let sigma = residue_sum(s, m);
    sigma == r || (sigma == m + r && s.legs().parts().iter().any(|&l| l % m >= r))
}

/// The type `(m^q, r)` (no part `r` when `r = 0`).
pub fn mod_type(n: u64, m: u64) -> Partition {
    let (q, r) = (n / m, n % m);
    let mut parts = vec![m; q as usize];
    if r > 0 {
        parts.push(r);
    }
    Partition::new(parts).expect("positive parts")
}

/// `[e_{(m^q)}] X_S = m(m-1)^{q-1}` when `m | n` and the type `(m^q)` is present.
pub fn coeff_mq(s: &Spider, m: u64) -> Result<BigInt> {
    let n = s.vertex_count();
    if m < 2 || !n.is_multiple_of(m) {
        return Err(Error::Precondition(format!("{m} must be at least 2 and divide n = {n}")));
    }
    if !has_mod_type(s, m) {
        return Err(Error::Precondition(format!("{s} has no connected partition of type ({m}^{})", n / m)));
    }
    Ok(BigInt::from(m) * BigInt::from(m - 1).pow((n / m - 1) as u32))
}

/// `[e_{(2^{n/2})}] X_S = (-1)^{(j-1)/2} 2` with `j` odd legs, for even `n`.
pub fn coeff_two_powers(s: &Spider) -> Result<BigInt> {
    let n = s.vertex_count();
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("{s} has an odd number of vertices")));
    }
    let j = odd_leg_count(s);
    Ok(if ((j - 1) / 2).is_multiple_of(2) { BigInt::from(2) } else { BigInt::from(-2) })
}

fn odd_leg_count(s: &Spider) -> usize {
    s.legs().parts().iter().filter(|&&l| l % 2 == 1).count()
}

/// The key `(3, 2^{(n-3)/2})`.
pub fn three_two_partition(n: u64) -> Result<Partition> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("(3, 2^k) needs odd n >= 3, got {n}")));
    }
    let mut parts = vec![3];
    parts.extend(std::iter::repeat_n(2, ((n - 3) / 2) as usize));
    Partition::new(parts)
}

/// `[e_{(3,2^k)}] X_S = 4(k_1 + k_2 - k_3 - … - k_d) + 2d - 1` for a spider
/// with exactly two odd legs `2k_1+1 ≥ 2k_2+1` and even legs `2k_3, …, 2k_d`.
pub fn coeff_three_two(s: &Spider) -> Result<BigInt> {
    let legs = s.legs().parts();
    if odd_leg_count(s) != 2 {
        return Err(Error::Precondition(format!("{s} must have exactly two odd legs")));
    }
    let (mut odd, mut even) = (0i64, 0i64);
    for &l in legs {
        if l % 2 == 1 {
            odd += (l / 2) as i64;
        } else {
            even += (l / 2) as i64;
        }
    }
    Ok(BigInt::from(4 * (odd - even) + 2 * legs.len() as i64 - 1))
}

/// Parameters of a four-leg spider: `m = λ_3 + λ_4`, `n = mq + m + r`, `0 ≤ r < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourLegParams {
    pub m: u64,
    pub q: u64,
    pub r: u64,
}

impl FourLegParams {
    pub fn of(s: &Spider) -> Result<Self> {
        if s.leg_count() != 4 {
            return Err(Error::Precondition(format!("{s} does not have four legs")));
        }
        let m = s.leg(2) + s.leg(3);
        let n = s.vertex_count();
        // n ≥ 1 + 2m since λ_1, λ_2 ≥ λ_3 ≥ m/2
        Ok(Self { m, q: n / m - 1, r: n % m })
    }
}

/// Coefficient of `e_{(m+r, m^q)}` in `X_S` for a four-leg spider, together
/// with that partition. Requires `r ≠ 0` and a connected partition of type
/// `(m^{q+1}, r)`.
pub fn coeff_four_leg(s: &Spider) -> Result<(Partition, BigInt)> {
    let FourLegParams { m, q, r } = FourLegParams::of(s)?;
    if r == 0 {
        return Err(Error::Precondition(format!("{s}: r = 0")));
    }
    if q < 2 && m > 2 {
        return Err(Error::Precondition(format!("{s}: q = {q} < 2 with m = {m} > 2")));
    }
    if !has_mod_type(s, m) {
        return Err(Error::Precondition(format!("{s} has no connected partition of type ({m}^{}, {r})", q + 1)));
    }
    let (mb, qb, rb) = (BigInt::from(m), BigInt::from(q), BigInt::from(r));
    let m2 = &mb * &mb;
    let inner = &m2 * &mb - &m2 * &qb + &m2 * &rb - BigInt::from(2) * &m2 - &mb * &qb * &rb + &mb * &qb + &mb + &rb;
    // for m = 2 the prefactor is 1 for every q
    let factor = if m == 2 { BigInt::from(1) } else { BigInt::from(m - 1).pow((q - 2) as u32) };
    let mut parts = vec![m + r];
    parts.extend(std::iter::repeat_n(m, q as usize));
    Ok((Partition::new(parts)?, factor * inner))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(legs: &[u64]) -> Spider {
        Spider::from_legs(legs).unwrap()
    }

    #[test]
    fn mq_examples() {
        assert_eq!(coeff_mq(&s(&[3]), 2).unwrap(), BigInt::from(2));
        assert_eq!(coeff_mq(&s(&[2, 2, 1]), 2).unwrap(), BigInt::from(2));
        assert!(coeff_mq(&s(&[2, 2, 1]), 3).is_err());
        assert!(coeff_mq(&s(&[2, 2, 1]), 4).is_err());
    }

    #[test]
    fn two_powers_examples() {
        assert_eq!(coeff_two_powers(&s(&[1, 1, 1])).unwrap(), BigInt::from(-2));
        assert_eq!(coeff_two_powers(&s(&[3])).unwrap(), BigInt::from(2));
        assert_eq!(coeff_two_powers(&s(&[1, 1, 1, 1, 1])).unwrap(), BigInt::from(2));
        assert!(coeff_two_powers(&s(&[2, 2])).is_err());
    }

    #[test]
    fn three_two_examples() {
        assert_eq!(coeff_three_two(&s(&[3, 1])).unwrap(), BigInt::from(7));
        assert_eq!(coeff_three_two(&s(&[2, 1, 1])).unwrap(), BigInt::from(1));
        assert_eq!(coeff_three_two(&s(&[4, 3, 1])).unwrap(), BigInt::from(1));
        assert_eq!(coeff_three_two(&s(&[6, 3, 3, 2])).unwrap(), BigInt::from(-1));
        assert!(coeff_three_two(&s(&[1, 1, 1])).is_err());
        assert_eq!(three_two_partition(7).unwrap().to_string(), "[3,2,2]");
        assert!(three_two_partition(6).is_err());
    }

    #[test]
    fn four_leg_examples() {
        let (w, v) = coeff_four_leg(&s(&[3, 3, 2, 1])).unwrap();
        assert_eq!(w.to_string(), "[4,3,3]");
        assert_eq!(v, BigInt::from(4));
        let (w, v) = coeff_four_leg(&s(&[6, 4, 1, 1])).unwrap();
        assert_eq!(w.to_string(), "[3,2,2,2,2,2]");
        assert_eq!(v, BigInt::from(-13));
        assert!(coeff_four_leg(&s(&[4, 4, 2, 1])).is_err());
        assert!(coeff_four_leg(&s(&[4, 4, 2])).is_err());
    }

    #[test]
    fn mod_type_shapes() {
        assert_eq!(mod_type(7, 2).to_string(), "[2,2,2,1]");
        assert_eq!(mod_type(6, 3).to_string(), "[3,3]");
        assert!(!has_mod_type(&s(&[1, 1, 1]), 2));
        assert!(has_mod_type(&s(&[2, 2, 2]), 2));
    }
}
