//! Polynomials over F_q: the ring A = F_q[T].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::localfield::fq::{FqElem, FqTable};

/// A dense polynomial in T over F_q, coefficients ascending, trailing
/// coefficient nonzero. The zero polynomial has an empty coefficient vector.
#[derive(Clone)]
pub struct FqPoly {
    field: &'static FqTable,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(field: &'static FqTable, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().map_or(false, FqElem::is_zero) {
            coeffs.pop();
        }
        FqPoly { field, coeffs }
    }

    pub fn zero(field: &'static FqTable) -> Self {
        FqPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: &'static FqTable) -> Self {
        FqPoly { field, coeffs: vec![field.one()] }
    }

    pub fn constant(field: &'static FqTable, c: FqElem) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable T.
    pub fn t(field: &'static FqTable) -> Self {
        FqPoly { field, coeffs: vec![field.zero(), field.one()] }
    }

    /// T^k.
    pub fn t_pow(field: &'static FqTable, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        FqPoly { field, coeffs }
    }

    pub fn from_ints(field: &'static FqTable, ints: &[i64]) -> Self {
        Self::new(field, ints.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &'static FqTable {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &FqPoly) -> FqPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i).add(rhs.coeff(i)));
        }
        FqPoly::new(self.field, out)
    }

    pub fn neg(&self) -> FqPoly {
        FqPoly { field: self.field, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, rhs: &FqPoly) -> FqPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FqPoly) -> FqPoly {
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(a.mul(b));
            }
        }
        FqPoly::new(self.field, out)
    }

    pub fn scale(&self, c: FqElem) -> FqPoly {
        FqPoly::new(self.field, self.coeffs.iter().map(|&a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> FqPoly {
        let mut acc = FqPoly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: self = q*rhs + r with deg r < deg rhs.
    pub fn divrem(&self, rhs: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if rhs.is_zero() {
            return Err(Error::Invalid("division by the zero polynomial".into()));
        }
        let mut rem = self.coeffs.clone();
        let d = rhs.degree().unwrap();
        let lc_inv = rhs.leading().unwrap().inv()?;
        if rem.len() < rhs.coeffs.len() {
            return Ok((FqPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let qc = c.mul(lc_inv);
            quot[i - d] = qc;
            for (k, &bk) in rhs.coeffs.iter().enumerate() {
                rem[i - d + k] = rem[i - d + k].sub(qc.mul(bk));
            }
        }
        Ok((FqPoly::new(self.field, quot), FqPoly::new(self.field, rem)))
    }

    pub fn rem(&self, rhs: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(rhs)?.1)
    }

    pub fn divides(&self, other: &FqPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, rhs: &FqPoly) -> FqPoly {
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(self.field);
        }
        let g = self.gcd(rhs);
        self.mul(rhs).divrem(&g).expect("gcd nonzero").0.monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> FqPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(lc.inv().expect("leading coefficient nonzero")),
        }
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let mut acc = self.field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute T -> T^k.
    pub fn subst_t_pow(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k] = c;
        }
        FqPoly::new(self.field, out)
    }

    /// The ring Frobenius a -> a^{q^j}; coefficients are fixed by x -> x^q,
    /// so this is exponent spreading.
    pub fn frobenius(&self, j: u32) -> FqPoly {
        let k = (self.field.q as u64).pow(j);
        self.subst_t_pow(k as usize)
    }

    /// |a|_{1/T} = q^{deg a} as an exact (base, exponent) statement; zero has
    /// absolute value 0 and is reported as None.
    pub fn abs_deg(&self) -> Option<usize> {
        self.degree()
    }

    /// Total order used for deterministic enumeration: by degree, then by
    /// coefficient representations from the constant term up.
    pub fn cmp_key(&self, other: &FqPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                    match a.rep().cmp(&b.rep()) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }

    /// All polynomials of degree <= d (including zero), in `cmp_key` order.
    pub fn all_of_degree_le(field: &'static FqTable, d: usize) -> Vec<FqPoly> {
        let q = field.q as u64;
        let mut out = vec![FqPoly::zero(field)];
        for deg in 0..=d {
            let count = (q - 1) * q.pow(deg as u32);
            let mut idx = vec![0u64; deg + 1];
            for k in 0..count {
                let mut rest = k;
                for slot in idx.iter_mut().take(deg) {
                    *slot = rest % q;
                    rest /= q;
                }
                idx[deg] = rest + 1; // leading coefficient nonzero
                let coeffs: Vec<FqElem> =
                    idx.iter().map(|&r| field.from_rep(r as u32)).collect();
                out.push(FqPoly::new(field, coeffs));
            }
        }
        out
    }
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.q == other.field.q && self.coeffs == other.coeffs
    }
}
impl Eq for FqPoly {}

impl fmt::Debug for FqPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(fm, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let needs_parens = cs.contains('^') || cs.contains('+');
            match i {
                0 => {
                    if needs_parens {
                        write!(fm, "({cs})")?;
                    } else {
                        write!(fm, "{cs}")?;
                    }
                }
                _ => {
                    if !c.is_one() {
                        if needs_parens {
                            write!(fm, "({cs})*")?;
                        } else {
                            write!(fm, "{cs}*")?;
                        }
                    }
                    if i == 1 {
                        write!(fm, "T")?;
                    } else {
                        write!(fm, "T^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> &'static FqTable {
        FqTable::get(2).unwrap()
    }

    #[test]
    fn ring_basics() {
        let t = FqPoly::t(f2());
        let one = FqPoly::one(f2());
        let t1 = t.add(&one);
        // (T+1)^2 = T^2 + 1 in characteristic 2
        let sq = t1.mul(&t1);
        assert_eq!(sq, FqPoly::from_ints(f2(), &[1, 0, 1]));
        assert_eq!(sq.degree(), Some(2));
        // (T^2+1) / (T+1) = T+1 rem 0
        let (quot, rem) = sq.divrem(&t1).unwrap();
        assert_eq!(quot, t1);
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_and_lcm() {
        let f3 = FqTable::get(3).unwrap();
        let t = FqPoly::t(f3);
        let a = t.mul(&t.add(&FqPoly::one(f3))); // T(T+1)
        let b = t.clone(); // T
        assert_eq!(a.gcd(&b), t);
        assert_eq!(a.lcm(&b), a);
        assert!(a.gcd(&b).is_monic());
    }

    #[test]
    fn frobenius_spreads_exponents() {
        let a = FqPoly::from_ints(f2(), &[1, 1]); // T + 1
        let fr = a.frobenius(1); // (T+1)^2 = T^2 + 1
        assert_eq!(fr, FqPoly::from_ints(f2(), &[1, 0, 1]));
        assert_eq!(fr, a.mul(&a));
    }

    #[test]
    fn enumeration_count() {
        // #polys of degree <= d over F_q is q^{d+1} (including 0)
        let polys = FqPoly::all_of_degree_le(f2(), 2);
        assert_eq!(polys.len(), 8);
        let f3 = FqTable::get(3).unwrap();
        assert_eq!(FqPoly::all_of_degree_le(f3, 2).len(), 27);
    }
}
