//! Rational numbers for the characteristic-zero side (Q_K = Q).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator (maintained
/// by `num_rational`).
#[derive(Clone, PartialEq, Eq)]
pub struct RationalNum(pub BigRational);

impl RationalNum {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(RationalNum(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        RationalNum(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        RationalNum(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalNum(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RationalNum(&self.0 + &rhs.0)
    }

    pub fn neg(&self) -> Self {
        RationalNum(-self.0.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RationalNum(&self.0 - &rhs.0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RationalNum(&self.0 * &rhs.0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("inverse of 0 in Q".into()));
        }
        Ok(RationalNum(self.0.recip()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// p-adic valuation of a nonzero rational.
    pub fn val_p(&self, p: u32) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let vp = |m: &BigUint| -> i64 {
            let p = BigUint::from(p);
            let mut m = m.clone();
            let mut v = 0i64;
            while (&m % &p).is_zero() {
                m /= &p;
                v += 1;
            }
            v
        };
        Some(vp(self.0.numer().magnitude()) - vp(self.0.denom().magnitude()))
    }

    /// Archimedean size of the numerator / denominator, used by the height.
    pub fn size_num(&self) -> u128 {
        biguint_to_u128_saturating(self.0.numer().magnitude())
    }

    pub fn size_den(&self) -> u128 {
        biguint_to_u128_saturating(self.0.denom().magnitude())
    }

    /// Deterministic total order on enumeration keys: by (den, |num|, sign).
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.0
            .denom()
            .cmp(other.0.denom())
            .then_with(|| self.0.numer().abs().cmp(&other.0.numer().abs()))
            .then_with(|| self.0.numer().cmp(other.0.numer()))
    }
}

fn biguint_to_u128_saturating(m: &BigUint) -> u128 {
    u128::try_from(m.clone()).unwrap_or(u128::MAX)
}

impl fmt::Debug for RationalNum {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

impl fmt::Display for RationalNum {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(fm, "{}", self.0.numer())
        } else {
            write!(fm, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// All rationals with max(|num|, den) <= t in deterministic
/// (height, den, |num|, sign) order.
pub fn rationals_of_height_le(t: u64) -> Vec<RationalNum> {
    let mut out = Vec::new();
    for den in 1..=t as i64 {
        for num in -(t as i64)..=(t as i64) {
            if num_integer::gcd(num, den) == 1 || (num == 0 && den == 1) {
                out.push(RationalNum(BigRational::new(
                    BigInt::from(num),
                    BigInt::from(den),
                )));
            }
        }
    }
    out.sort_by(|a, b| {
        let ha = a.size_num().max(a.size_den()).max(1);
        let hb = b.size_num().max(b.size_den()).max(1);
        ha.cmp(&hb).then_with(|| a.cmp_key(b))
    });
    out
}

/// Sign of the numerator; used when embedding into Q_p.
pub fn numer_sign(x: &RationalNum) -> Sign {
    x.0.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_50_at_5() {
        let x = RationalNum::from_int(50);
        assert_eq!(x.val_p(5), Some(2));
        assert_eq!(x.val_p(2), Some(1));
        let half = RationalNum::new(BigInt::from(1), BigInt::from(50)).unwrap();
        assert_eq!(half.val_p(5), Some(-2));
    }

    #[test]
    fn height_one_points_are_zero_and_units() {
        let pts = rationals_of_height_le(1);
        // {0, 1, -1}
        assert_eq!(pts.len(), 3);
    }

    #[test]
    fn enumeration_is_reduced() {
        for x in rationals_of_height_le(6) {
            let g = num_integer::gcd(x.0.numer().clone(), x.0.denom().clone());
            assert!(g.is_one());
        }
    }
}
