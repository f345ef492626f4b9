//! The rational function field k = F_q(T) in canonical reduced form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::localfield::fq::FqTable;
use crate::localfield::fqpoly::FqPoly;

/// num/den with den monic, den != 0 and gcd(num, den) = 1. The canonical
/// form is unique, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: FqPoly,
    den: FqPoly,
}

impl RationalFn {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.divrem(&g).expect("gcd nonzero").0,
                den.divrem(&g).expect("gcd nonzero").0,
            )
        };
        let lc_inv = den.leading().unwrap().inv()?;
        Ok(RationalFn { num: num.scale(lc_inv), den: den.monic() })
    }

    pub fn from_poly(p: FqPoly) -> Self {
        let one = FqPoly::one(p.field());
        RationalFn { num: p, den: one }
    }

    pub fn zero(field: &'static FqTable) -> Self {
        Self::from_poly(FqPoly::zero(field))
    }

    pub fn one(field: &'static FqTable) -> Self {
        Self::from_poly(FqPoly::one(field))
    }

    pub fn t(field: &'static FqTable) -> Self {
        Self::from_poly(FqPoly::t(field))
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn field(&self) -> &'static FqTable {
        self.num.field()
    }

    pub fn q(&self) -> u32 {
        self.num.q()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, rhs: &RationalFn) -> RationalFn {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RationalFn::new(num, den).expect("den nonzero")
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &RationalFn) -> RationalFn {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("den nonzero")
    }

    pub fn inv(&self) -> Result<RationalFn> {
        if self.is_zero() {
            return Err(Error::Invalid("inverse of 0 in F_q(T)".into()));
        }
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RationalFn) -> Result<RationalFn> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u32) -> RationalFn {
        let mut acc = RationalFn::one(self.field());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// x -> x^{q^j}. Canonical form is preserved.
    pub fn frobenius(&self, j: u32) -> RationalFn {
        RationalFn { num: self.num.frobenius(j), den: self.den.frobenius(j) }
    }

    /// Valuation at the place at infinity, in 1/T units: deg den - deg num.
    /// None for zero.
    pub fn val_infty(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        let dd = self.den.degree().unwrap() as i64;
        Some(dd - dn)
    }

    /// Size at the infinite place: q^{deg} for nonzero entries, 0 for zero.
    /// Used by the height function coordinate-wise.
    pub fn size_num(&self) -> u128 {
        match self.num.degree() {
            None => 0,
            Some(d) => (self.q() as u128).pow(d as u32),
        }
    }

    pub fn size_den(&self) -> u128 {
        (self.q() as u128).pow(self.den.degree().unwrap() as u32)
    }

    /// Deterministic total order: by (den, num) keys.
    pub fn cmp_key(&self, other: &RationalFn) -> Ordering {
        self.den
            .cmp_key(&other.den)
            .then_with(|| self.num.cmp_key(&other.num))
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(fm, "{}", self.num);
        }
        let ns = self.num.to_string();
        let ds = self.den.to_string();
        let wrap = |s: &str| -> String {
            if s.contains('+') || s.contains('*') || s.contains(' ') {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(fm, "{}/{}", wrap(&ns), wrap(&ds))
    }
}

/// All reduced fractions with max(q^{deg num}, q^{deg den}) <= q^s, i.e.
/// height at most q^s, in deterministic (height, den, num) order.
pub fn fractions_of_height_le(field: &'static FqTable, s: usize) -> Vec<RationalFn> {
    let mut out = Vec::new();
    let nums = FqPoly::all_of_degree_le(field, s);
    let dens: Vec<FqPoly> = FqPoly::all_of_degree_le(field, s)
        .into_iter()
        .filter(|d| d.is_monic())
        .collect();
    for den in &dens {
        for num in &nums {
            if num.is_zero() {
                if den.degree() != Some(0) {
                    continue; // 0 is only represented as 0/1
                }
            } else if !num.gcd(den).is_constant() {
                continue;
            }
            out.push(RationalFn { num: num.clone(), den: den.clone() });
        }
    }
    out.sort_by(|a, b| {
        let ha = a.size_num().max(a.size_den()).max(1);
        let hb = b.size_num().max(b.size_den()).max(1);
        ha.cmp(&hb).then_with(|| a.cmp_key(b))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> &'static FqTable {
        FqTable::get(2).unwrap()
    }

    #[test]
    fn canonical_form_is_reduced_and_monic() {
        // (T^2 + T) / (T^2) reduces to (T+1)/T
        let num = FqPoly::from_ints(f2(), &[0, 1, 1]);
        let den = FqPoly::from_ints(f2(), &[0, 0, 1]);
        let r = RationalFn::new(num, den).unwrap();
        assert_eq!(r.num(), &FqPoly::from_ints(f2(), &[1, 1]));
        assert_eq!(r.den(), &FqPoly::from_ints(f2(), &[0, 1]));
        assert!(r.den().is_monic());
    }

    #[test]
    fn reduction_is_idempotent() {
        let r = RationalFn::new(
            FqPoly::from_ints(f2(), &[1, 1, 1]),
            FqPoly::from_ints(f2(), &[0, 1, 1]),
        )
        .unwrap();
        let again = RationalFn::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn field_laws() {
        let f3 = FqTable::get(3).unwrap();
        let a = RationalFn::new(FqPoly::from_ints(f3, &[1, 2]), FqPoly::from_ints(f3, &[0, 1]))
            .unwrap();
        let b = RationalFn::new(FqPoly::from_ints(f3, &[2]), FqPoly::from_ints(f3, &[1, 1]))
            .unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b).unwrap(), a);
        assert_eq!(a.add(&b).sub(&b), a);
        assert!(a.mul(&a.inv().unwrap()).sub(&RationalFn::one(f3)).is_zero());
    }

    #[test]
    fn enumeration_matches_hand_count_at_t2() {
        // over F_2, height <= 2 means degrees <= 1: the 8 points of the spec
        let pts = fractions_of_height_le(f2(), 1);
        assert_eq!(pts.len(), 8);
    }
}
