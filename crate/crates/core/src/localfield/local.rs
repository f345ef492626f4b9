//! Precision-tracked elements of non-archimedean local fields.
//!
//! Two flavors share one type: Laurent-series fields F_{q^f}((u)) with
//! u^e = 1/T (tame, explicitly parameterized extensions of F_q((1/T))) and
//! the p-adic fields Q_p. An element is stored as a valuation, an absolute
//! precision and the digit string of its unit part; every operation
//! propagates precision exactly and fails loudly instead of returning fewer
//! correct digits than it claims.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::localfield::fq::{FqElem, FqTable};
use crate::localfield::fqpoly::FqPoly;
use crate::localfield::ratfn::RationalFn;
use crate::localfield::ratnum::RationalNum;

/// Desk-scale caps on field parameters.
pub const MAX_BASE_Q: u32 = 16;
pub const MAX_P: u32 = 13;
pub const MAX_RAMIFICATION: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LaurentParams {
    /// Base field order (the q of F_q(T)).
    pub q: u32,
    /// Ramification index: u^e = 1/T.
    pub e: u32,
    /// Residue degree: residue field F_{q^f}.
    pub f: u32,
}

impl LaurentParams {
    pub fn new(q: u32, e: u32, f: u32) -> Result<Self> {
        let table = FqTable::get(q)?;
        if q > MAX_BASE_Q {
            return Err(Error::Invalid(format!("base field order {q} exceeds {MAX_BASE_Q}")));
        }
        if e == 0 || f == 0 || e > MAX_RAMIFICATION {
            return Err(Error::Invalid(format!("bad extension parameters e={e}, f={f}")));
        }
        if e % table.p == 0 {
            return Err(Error::Invalid(format!(
                "wild ramification rejected: p={} divides e={e}",
                table.p
            )));
        }
        let rf = (q as u64).checked_pow(f).filter(|&r| r <= crate::localfield::fq::MAX_ORDER);
        if rf.is_none() {
            return Err(Error::Invalid(format!("residue field order q^f = {q}^{f} too large")));
        }
        Ok(LaurentParams { q, e, f })
    }

    pub fn base_table(&self) -> &'static FqTable {
        FqTable::get(self.q).expect("validated at construction")
    }

    pub fn residue_table(&self) -> &'static FqTable {
        FqTable::get((self.q as u64).pow(self.f) as u32).expect("validated at construction")
    }

    /// Does this extension contain the other one (so elements promote)?
    pub fn contains(&self, other: &LaurentParams) -> bool {
        self.q == other.q && self.e % other.e == 0 && self.f % other.f == 0
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    Laurent(LaurentParams),
    Padic(u32),
}

impl Flavor {
    pub fn laurent(q: u32, e: u32, f: u32) -> Result<Flavor> {
        Ok(Flavor::Laurent(LaurentParams::new(q, e, f)?))
    }

    pub fn padic(p: u32) -> Result<Flavor> {
        if p < 2 || p > MAX_P || !is_prime(p) {
            return Err(Error::Invalid(format!("p = {p} must be a prime <= {MAX_P}")));
        }
        Ok(Flavor::Padic(p))
    }

    /// Residue characteristic.
    pub fn p(&self) -> u32 {
        match self {
            Flavor::Laurent(lp) => lp.base_table().p,
            Flavor::Padic(p) => *p,
        }
    }

    /// Size of the residue field.
    pub fn residue_order(&self) -> u64 {
        match self {
            Flavor::Laurent(lp) => (lp.q as u64).pow(lp.f),
            Flavor::Padic(p) => *p as u64,
        }
    }

    /// The base of the absolute value (q or p).
    pub fn abs_base(&self) -> u32 {
        match self {
            Flavor::Laurent(lp) => lp.q,
            Flavor::Padic(p) => *p,
        }
    }

    /// Ramification over the reference place (e for Laurent, 1 for Q_p).
    pub fn ramification(&self) -> u32 {
        match self {
            Flavor::Laurent(lp) => lp.e,
            Flavor::Padic(_) => 1,
        }
    }

    fn uniformizer_symbol(&self) -> String {
        match self {
            Flavor::Laurent(_) => "u".into(),
            Flavor::Padic(p) => p.to_string(),
        }
    }

    pub fn check_same(&self, other: &Flavor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FlavorMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Clone, PartialEq, Eq)]
enum Digits {
    Fq(Vec<FqElem>),
    P(Vec<u32>),
}

impl Digits {
    fn len(&self) -> usize {
        match self {
            Digits::Fq(v) => v.len(),
            Digits::P(v) => v.len(),
        }
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An element of a local field known modulo u^prec: `digits[i]` is the
/// coefficient of u^{val+i}, `digits.len() == prec - val`, and the leading
/// digit is nonzero unless the element is indistinguishable from zero (then
/// `val == prec` and the digit string is empty).
#[derive(Clone, PartialEq, Eq)]
pub struct LocalFieldElem {
    flavor: Flavor,
    val: i64,
    prec: i64,
    digits: Digits,
}

impl LocalFieldElem {
    // ----- constructors -----

    pub fn zero(flavor: Flavor, prec: i64) -> Self {
        let digits = match flavor {
            Flavor::Laurent(_) => Digits::Fq(Vec::new()),
            Flavor::Padic(_) => Digits::P(Vec::new()),
        };
        LocalFieldElem { flavor, val: prec, prec, digits }
    }

    pub fn one(flavor: Flavor, prec: i64) -> Self {
        Self::from_int(flavor, 1, prec)
    }

    pub fn from_int(flavor: Flavor, k: i64, prec: i64) -> Self {
        match flavor {
            Flavor::Laurent(lp) => {
                let rt = lp.residue_table();
                Self::from_fq_digits(flavor, 0, prec, vec![rt.from_int(k)])
            }
            Flavor::Padic(_) => {
                let big = BigInt::from(k);
                Self::from_bigint(flavor, &big, 0, prec).expect("integer embeds")
            }
        }
    }

    /// Laurent element from explicit digits starting at valuation `val`;
    /// digits beyond the supplied ones are zero up to `prec`.
    pub fn from_fq_digits(flavor: Flavor, val: i64, prec: i64, digits: Vec<FqElem>) -> Self {
        let mut el = LocalFieldElem { flavor, val, prec, digits: Digits::Fq(digits) };
        el.pad_and_normalize();
        el
    }

    /// p-adic element from digits (little-endian, base p) starting at `val`.
    pub fn from_p_digits(flavor: Flavor, val: i64, prec: i64, digits: Vec<u32>) -> Self {
        let mut el = LocalFieldElem { flavor, val, prec, digits: Digits::P(digits) };
        el.pad_and_normalize();
        el
    }

    /// p-adic element representing `n * p^shift` to absolute precision `prec`.
    pub fn from_bigint(flavor: Flavor, n: &BigInt, shift: i64, prec: i64) -> Result<Self> {
        let p = match flavor {
            Flavor::Padic(p) => p,
            _ => return Err(Error::FlavorMismatch("from_bigint needs a p-adic flavor".into())),
        };
        if n.is_zero() {
            return Ok(Self::zero(flavor, prec));
        }
        let pb = BigInt::from(p);
        let mut m = n.clone();
        let mut val = shift;
        while (&m % &pb).is_zero() {
            m /= &pb;
            val += 1;
        }
        if val >= prec {
            return Ok(Self::zero(flavor, prec));
        }
        let ndigits = (prec - val) as usize;
        let modulus = pb.pow(ndigits as u32);
        let mut m = m % &modulus;
        if m.is_negative() {
            m += &modulus;
        }
        let mut digits = Vec::with_capacity(ndigits);
        let mut mu: BigUint = m.to_biguint().expect("nonnegative");
        let pu = BigUint::from(p);
        for _ in 0..ndigits {
            let d = (&mu % &pu).to_u32_digits();
            digits.push(if d.is_empty() { 0 } else { d[0] });
            mu /= &pu;
        }
        Ok(Self::from_p_digits(flavor, val, prec, digits))
    }

    /// The uniformizer u (resp. p).
    pub fn uniformizer(flavor: Flavor, prec: i64) -> Self {
        match flavor {
            Flavor::Laurent(lp) => {
                let rt = lp.residue_table();
                Self::from_fq_digits(flavor, 1, prec, vec![rt.one()])
            }
            Flavor::Padic(_) => {
                let mut one = Self::one(flavor, prec);
                one = one.shift(1);
                one.truncate(prec)
            }
        }
    }

    fn pad_and_normalize(&mut self) {
        // pad to prec - val digits, then strip leading zeros
        let want = (self.prec - self.val).max(0) as usize;
        match &mut self.digits {
            Digits::Fq(v) => {
                let rt = match self.flavor {
                    Flavor::Laurent(lp) => lp.residue_table(),
                    _ => unreachable!(),
                };
                v.truncate(want);
                while v.len() < want {
                    v.push(rt.zero());
                }
                let lead = v.iter().position(|d| !d.is_zero());
                match lead {
                    None => {
                        v.clear();
                        self.val = self.prec;
                    }
                    Some(k) => {
                        v.drain(..k);
                        self.val += k as i64;
                    }
                }
            }
            Digits::P(v) => {
                v.truncate(want);
                while v.len() < want {
                    v.push(0);
                }
                let lead = v.iter().position(|&d| d != 0);
                match lead {
                    None => {
                        v.clear();
                        self.val = self.prec;
                    }
                    Some(k) => {
                        v.drain(..k);
                        self.val += k as i64;
                    }
                }
            }
        }
    }

    // ----- observers -----

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// True when no nonzero digit is known (the element is 0 mod u^prec).
    pub fn is_zero_at_precision(&self) -> bool {
        self.digits.is_empty()
    }

    /// Exact valuation in uniformizer units.
    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero_at_precision() {
            Err(Error::InexactZero { prec: self.prec })
        } else {
            Ok(self.val)
        }
    }

    /// Valuation if known, otherwise the precision (a lower bound on v).
    pub fn val_floor(&self) -> i64 {
        self.val
    }

    /// |x| as an exact pair (base, exponent): base^{exponent} with
    /// exponent = -v/e kept as a rational.
    pub fn absolute_value(&self) -> Result<(u32, Ratio<i64>)> {
        let v = self.valuation()?;
        Ok((
            self.flavor.abs_base(),
            Ratio::new(-v, self.flavor.ramification() as i64),
        ))
    }

    pub fn digit_fq(&self, abs_pos: i64) -> FqElem {
        let rt = match self.flavor {
            Flavor::Laurent(lp) => lp.residue_table(),
            _ => panic!("digit_fq on p-adic element"),
        };
        if abs_pos < self.val {
            return rt.zero();
        }
        match &self.digits {
            Digits::Fq(v) => v
                .get((abs_pos - self.val) as usize)
                .copied()
                .unwrap_or_else(|| rt.zero()),
            _ => unreachable!(),
        }
    }

    pub fn fq_digits(&self) -> &[FqElem] {
        match &self.digits {
            Digits::Fq(v) => v,
            _ => panic!("fq_digits on p-adic element"),
        }
    }

    pub fn p_digits(&self) -> &[u32] {
        match &self.digits {
            Digits::P(v) => v,
            _ => panic!("p_digits on Laurent element"),
        }
    }

    fn unit_biguint(&self, p: u32) -> BigUint {
        let mut acc = BigUint::zero();
        match &self.digits {
            Digits::P(v) => {
                for &d in v.iter().rev() {
                    acc = acc * BigUint::from(p) + BigUint::from(d);
                }
            }
            _ => unreachable!(),
        }
        acc
    }

    // ----- arithmetic -----

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.flavor.check_same(&rhs.flavor)?;
        let prec = self.prec.min(rhs.prec);
        let start = self.val.min(rhs.val).min(prec);
        match (&self.digits, &rhs.digits) {
            (Digits::Fq(_), Digits::Fq(_)) => {
                let n = (prec - start) as usize;
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let pos = start + i as i64;
                    out.push(self.digit_fq(pos).add(rhs.digit_fq(pos)));
                }
                Ok(Self::from_fq_digits(self.flavor, start, prec, out))
            }
            (Digits::P(_), Digits::P(_)) => {
                let p = self.flavor.p();
                let a = self.unit_biguint(p);
                let b = rhs.unit_biguint(p);
                let pa = BigUint::from(p).pow((self.val - start) as u32);
                let pb = BigUint::from(p).pow((rhs.val - start) as u32);
                let sum = a * pa + b * pb;
                Self::from_bigint(
                    self.flavor,
                    &BigInt::from(sum),
                    start,
                    prec,
                )
            }
            _ => Err(Error::FlavorMismatch("mixed digit kinds".into())),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.digits {
            Digits::Fq(v) => {
                let out: Vec<FqElem> = v.iter().map(|d| d.neg()).collect();
                LocalFieldElem {
                    flavor: self.flavor,
                    val: self.val,
                    prec: self.prec,
                    digits: Digits::Fq(out),
                }
            }
            Digits::P(v) => {
                if v.is_empty() {
                    return self.clone();
                }
                let p = self.flavor.p();
                let n = v.len();
                let modulus = BigUint::from(p).pow(n as u32);
                let unit = self.unit_biguint(p);
                let neg = &modulus - unit;
                Self::from_bigint(self.flavor, &BigInt::from(neg), self.val, self.prec)
                    .expect("same flavor")
            }
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.flavor.check_same(&rhs.flavor)?;
        let val = self.val + rhs.val;
        let prec = (self.prec + rhs.val).min(rhs.prec + self.val);
        match (&self.digits, &rhs.digits) {
            (Digits::Fq(a), Digits::Fq(b)) => {
                let n = (prec - val).max(0) as usize;
                let rt = match self.flavor {
                    Flavor::Laurent(lp) => lp.residue_table(),
                    _ => unreachable!(),
                };
                let mut out = vec![rt.zero(); n];
                for (i, &ai) in a.iter().enumerate() {
                    if ai.is_zero() || i >= n {
                        continue;
                    }
                    for (j, &bj) in b.iter().enumerate() {
                        if i + j >= n {
                            break;
                        }
                        out[i + j] = out[i + j].add(ai.mul(bj));
                    }
                }
                Ok(Self::from_fq_digits(self.flavor, val, prec, out))
            }
            (Digits::P(_), Digits::P(_)) => {
                let p = self.flavor.p();
                let prod = self.unit_biguint(p) * rhs.unit_biguint(p);
                Self::from_bigint(self.flavor, &BigInt::from(prod), val, prec)
            }
            _ => Err(Error::FlavorMismatch("mixed digit kinds".into())),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero_at_precision() {
            return Err(Error::InexactZeroInverse { prec: self.prec });
        }
        let n = (self.prec - self.val) as usize; // unit digits known
        let val = -self.val;
        let prec = self.prec - 2 * self.val;
        match &self.digits {
            Digits::Fq(d) => {
                let d0inv = d[0].inv()?;
                let mut out = Vec::with_capacity(n);
                out.push(d0inv);
                for k in 1..n {
                    let mut acc = match self.flavor {
                        Flavor::Laurent(lp) => lp.residue_table().zero(),
                        _ => unreachable!(),
                    };
                    for i in 1..=k {
                        if i < d.len() {
                            acc = acc.add(d[i].mul(out[k - i]));
                        }
                    }
                    out.push(acc.neg().mul(d0inv));
                }
                Ok(Self::from_fq_digits(self.flavor, val, prec, out))
            }
            Digits::P(_) => {
                let p = self.flavor.p();
                let modulus = BigInt::from(p).pow(n as u32);
                let unit = BigInt::from(self.unit_biguint(p));
                let inv = modular_inverse(&unit, &modulus)
                    .ok_or_else(|| Error::Invalid("unit not invertible (impossible)".into()))?;
                Self::from_bigint(self.flavor, &inv, val, prec)
            }
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.flavor, self.prec));
        }
        let mut acc: Option<Self> = None;
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul(&b)?,
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc.expect("e > 0"))
    }

    /// Multiply by the integer k (char p: k mod p as a residue scalar;
    /// char 0: the p-adic integer k).
    pub fn mul_int(&self, k: i64) -> Result<Self> {
        let scalar = Self::from_int(self.flavor, k, self.prec + self.val.abs() + 8);
        self.mul(&scalar)
    }

    /// Multiply by u^k (exact).
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.val += k;
        out.prec += k;
        out
    }

    /// Reduce absolute precision to `new_prec` (no-op if already lower).
    pub fn truncate(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec {
            return self.clone();
        }
        let mut out = self.clone();
        out.prec = new_prec;
        if out.val >= new_prec {
            return Self::zero(self.flavor, new_prec);
        }
        out.pad_and_normalize();
        out
    }

    /// x -> x^{q^j} on Laurent elements: digit-wise Frobenius with exponent
    /// spreading. Absolute precision multiplies by q^j.
    pub fn frobenius(&self, j: u32) -> Result<Self> {
        let lp = match self.flavor {
            Flavor::Laurent(lp) => lp,
            Flavor::Padic(_) => {
                return Err(Error::FlavorMismatch("frobenius needs a Laurent flavor".into()))
            }
        };
        if j == 0 {
            return Ok(self.clone());
        }
        let scale = (lp.q as i64)
            .checked_pow(j)
            .ok_or_else(|| Error::Overflow(format!("q^{j}")))?;
        let val = self
            .val
            .checked_mul(scale)
            .ok_or_else(|| Error::Overflow("frobenius valuation".into()))?;
        let prec = self
            .prec
            .checked_mul(scale)
            .ok_or_else(|| Error::Overflow("frobenius precision".into()))?;
        match &self.digits {
            Digits::Fq(v) => {
                let rt = lp.residue_table();
                let n = (prec - val) as usize;
                let mut out = vec![rt.zero(); n];
                for (i, d) in v.iter().enumerate() {
                    let pos = i as i64 * scale;
                    if (pos as usize) < n {
                        out[pos as usize] = d.frobenius_pow(lp.q, j);
                    }
                }
                Ok(Self::from_fq_digits(self.flavor, val, prec, out))
            }
            _ => unreachable!(),
        }
    }

    /// Promote into a larger tame extension (e | e', f | f').
    pub fn promote(&self, target: LaurentParams) -> Result<Self> {
        let lp = match self.flavor {
            Flavor::Laurent(lp) => lp,
            Flavor::Padic(_) => {
                return Err(Error::FlavorMismatch("promote needs a Laurent flavor".into()))
            }
        };
        if lp == target {
            return Ok(self.clone());
        }
        if !target.contains(&lp) {
            return Err(Error::FlavorMismatch(format!(
                "({},{}) does not embed into ({},{})",
                lp.e, lp.f, target.e, target.f
            )));
        }
        let s = (target.e / lp.e) as i64;
        let big = target.residue_table();
        let val = self.val * s;
        let prec = self.prec * s;
        let n = (prec - val) as usize;
        let mut out = vec![big.zero(); n];
        if let Digits::Fq(v) = &self.digits {
            for (i, d) in v.iter().enumerate() {
                let pos = (i as i64 * s) as usize;
                if pos < n {
                    out[pos] = d.embed_into(big)?;
                }
            }
        }
        Ok(Self::from_fq_digits(Flavor::Laurent(target), val, prec, out))
    }

    /// The smallest (e, f) subextension containing this element, with its
    /// representative there. Used to put search results in canonical form.
    pub fn demote_minimal(&self) -> Result<(LaurentParams, Self)> {
        let lp = match self.flavor {
            Flavor::Laurent(lp) => lp,
            Flavor::Padic(_) => {
                return Err(Error::FlavorMismatch("demote needs a Laurent flavor".into()))
            }
        };
        let digits = match &self.digits {
            Digits::Fq(v) => v,
            _ => unreachable!(),
        };
        // minimal ramification: largest s | e with all nonzero digit
        // positions divisible by s
        let mut best_s = lp.e as i64;
        for (i, d) in digits.iter().enumerate() {
            if !d.is_zero() {
                best_s = gcd_i64(best_s, self.val + i as i64);
            }
        }
        if best_s == 0 {
            best_s = lp.e as i64;
        }
        let mut s = gcd_i64(best_s.abs(), lp.e as i64).max(1);
        if self.is_zero_at_precision() {
            s = lp.e as i64;
        }
        // minimal residue degree: smallest f' | f containing all digits
        let mut fmin = lp.f;
        for cand in 1..=lp.f {
            if lp.f % cand != 0 {
                continue;
            }
            let small = FqTable::get((lp.q as u64).pow(cand) as u32)?;
            if digits.iter().all(|d| d.is_zero() || d.project_into(small).is_some()) {
                fmin = cand;
                break;
            }
        }
        let new_params = LaurentParams::new(lp.q, lp.e / s as u32, fmin)?;
        let small = new_params.residue_table();
        let val = self.val / s;
        let prec = self.prec / s; // floor: digits beyond are unknown
        let n = (prec - val).max(0) as usize;
        let mut out = vec![small.zero(); n];
        for (i, d) in digits.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let pos = (self.val + i as i64) / s - val;
            if (pos as usize) < n {
                out[pos as usize] = d
                    .project_into(small)
                    .expect("digit checked to lie in the subfield");
            }
        }
        Ok((new_params, Self::from_fq_digits(Flavor::Laurent(new_params), val, prec, out)))
    }

    /// Valuation of self - rhs, or the common precision when they agree on
    /// all known digits (a lower bound in that case).
    pub fn residual_valuation(&self, rhs: &Self) -> Result<i64> {
        let d = self.sub(rhs)?;
        Ok(d.val_floor())
    }

    /// Deterministic ordering key: (valuation-or-prec, digit reps).
    pub fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        self.val.cmp(&other.val).then_with(|| match (&self.digits, &other.digits) {
            (Digits::Fq(a), Digits::Fq(b)) => {
                let ka: Vec<u32> = a.iter().map(|d| d.rep()).collect();
                let kb: Vec<u32> = b.iter().map(|d| d.rep()).collect();
                ka.cmp(&kb)
            }
            (Digits::P(a), Digits::P(b)) => a.cmp(b),
            _ => std::cmp::Ordering::Equal,
        })
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn modular_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let mut t = BigInt::zero();
    let mut new_t = BigInt::one();
    let mut r = m.clone();
    let mut new_r = ((a % m) + m) % m;
    while !new_r.is_zero() {
        let q = &r / &new_r;
        let tmp_t = &t - &q * &new_t;
        t = std::mem::replace(&mut new_t, tmp_t);
        let tmp_r = &r - &q * &new_r;
        r = std::mem::replace(&mut new_r, tmp_r);
    }
    if !r.is_one() {
        return None;
    }
    Some(((t % m) + m) % m)
}

// ----- embeddings of global elements -----

/// Embed a(T) in F_q[T] exactly: T = u^{-e}.
pub fn embed_poly(a: &FqPoly, params: LaurentParams, prec: i64) -> Result<LocalFieldElem> {
    let flavor = Flavor::Laurent(params);
    let rt = params.residue_table();
    if a.is_zero() {
        return Ok(LocalFieldElem::zero(flavor, prec));
    }
    if a.q() != params.q {
        return Err(Error::FlavorMismatch(format!(
            "polynomial over F_{} into a field over F_{}",
            a.q(),
            params.q
        )));
    }
    let deg = a.degree().unwrap() as i64;
    let e = params.e as i64;
    let val = -e * deg;
    let n = (prec - val).max(0) as usize;
    let mut out = vec![rt.zero(); n];
    for (i, &c) in a.coeffs().iter().enumerate() {
        let pos = (-e * i as i64 - val) as usize;
        if pos < n {
            out[pos] = c.embed_into(rt)?;
        }
    }
    Ok(LocalFieldElem::from_fq_digits(flavor, val, prec, out))
}

/// Embed a reduced rational function to absolute precision `prec`.
pub fn embed_ratfn(x: &RationalFn, params: LaurentParams, prec: i64) -> Result<LocalFieldElem> {
    if x.is_zero() {
        return Ok(LocalFieldElem::zero(Flavor::Laurent(params), prec));
    }
    let e = params.e as i64;
    let dn = x.num().degree().unwrap() as i64;
    let dd = x.den().degree().unwrap() as i64;
    let work = prec + e * (dn + 2 * dd) + 2;
    let num = embed_poly(x.num(), params, work)?;
    let den = embed_poly(x.den(), params, work)?;
    Ok(num.div(&den)?.truncate(prec))
}

/// Embed a rational number into Q_p to absolute precision `prec`.
pub fn embed_ratnum(x: &RationalNum, p: u32, prec: i64) -> Result<LocalFieldElem> {
    let flavor = Flavor::padic(p)?;
    if x.is_zero() {
        return Ok(LocalFieldElem::zero(flavor, prec));
    }
    let vnum = x.val_p(p).expect("nonzero");
    let work = prec + 2 * vnum.abs() + 2;
    let num = LocalFieldElem::from_bigint(flavor, x.0.numer(), 0, work)?;
    let den = LocalFieldElem::from_bigint(flavor, x.0.denom(), 0, work)?;
    Ok(num.div(&den)?.truncate(prec))
}

impl fmt::Debug for LocalFieldElem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

impl fmt::Display for LocalFieldElem {
    /// Canonical rendering: `u^v*(d0 + d1*u + ...) + O(u^P)` for Laurent
    /// elements, `p^v*[d0,d1,...] + O(p^P)` (digits little-endian) for
    /// p-adics.
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.flavor.uniformizer_symbol();
        if self.is_zero_at_precision() {
            return write!(fm, "O({}^{})", sym, self.prec);
        }
        match &self.digits {
            Digits::Fq(v) => {
                write!(fm, "{}^{}*(", sym, self.val)?;
                let mut first = true;
                for (i, d) in v.iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(fm, " + ")?;
                    }
                    first = false;
                    let ds = d.to_string();
                    let wrapped = if ds.contains('^') || ds.contains('+') {
                        format!("({ds})")
                    } else {
                        ds
                    };
                    match i {
                        0 => write!(fm, "{wrapped}")?,
                        1 => {
                            if wrapped == "1" {
                                write!(fm, "{sym}")?
                            } else {
                                write!(fm, "{wrapped}*{sym}")?
                            }
                        }
                        _ => {
                            if wrapped == "1" {
                                write!(fm, "{sym}^{i}")?
                            } else {
                                write!(fm, "{wrapped}*{sym}^{i}")?
                            }
                        }
                    }
                }
                write!(fm, ") + O({}^{})", sym, self.prec)
            }
            Digits::P(v) => {
                let list: Vec<String> = v.iter().map(|d| d.to_string()).collect();
                write!(
                    fm,
                    "{}^{}*[{}] + O({}^{})",
                    sym,
                    self.val,
                    list.join(","),
                    sym,
                    self.prec
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::fqpoly::FqPoly;

    fn f2u() -> Flavor {
        Flavor::laurent(2, 1, 1).unwrap()
    }

    #[test]
    fn char2_cancellation() {
        let one_plus_u = LocalFieldElem::from_fq_digits(
            f2u(),
            0,
            8,
            vec![FqTable::get(2).unwrap().one(), FqTable::get(2).unwrap().one()],
        );
        let sum = one_plus_u.add(&one_plus_u).unwrap();
        assert!(sum.is_zero_at_precision());
        assert_eq!(sum.precision(), 8);
    }

    #[test]
    fn uniformizer_is_inverse_of_t() {
        let params = LaurentParams::new(2, 1, 1).unwrap();
        let t = embed_poly(&FqPoly::t(FqTable::get(2).unwrap()), params, 10).unwrap();
        assert_eq!(t.valuation().unwrap(), -1);
        let tinv = t.inv().unwrap();
        assert_eq!(tinv.valuation().unwrap(), 1);
        let u = LocalFieldElem::uniformizer(f2u(), 10);
        assert_eq!(tinv.truncate(5), u.truncate(5));
    }

    #[test]
    fn geometric_series_inverse() {
        // inv(1 - u) = 1 + u + u^2 + u^3 + O(u^4) over F_2
        let f = FqTable::get(2).unwrap();
        let x = LocalFieldElem::from_fq_digits(f2u(), 0, 4, vec![f.one(), f.one()]);
        let y = x.inv().unwrap();
        assert_eq!(y.precision(), 4);
        assert_eq!(y.fq_digits().len(), 4);
        assert!(y.fq_digits().iter().all(|d| d.is_one()));
        // multiply back: == 1 at available precision
        let back = x.mul(&y).unwrap();
        let one = LocalFieldElem::one(f2u(), back.precision());
        assert!(back.sub(&one).unwrap().is_zero_at_precision());
    }

    #[test]
    fn absolute_values() {
        // |T^2 + 1| = 2^2 over F_2, e = 1
        let f = FqTable::get(2).unwrap();
        let params = LaurentParams::new(2, 1, 1).unwrap();
        let x = embed_poly(&FqPoly::from_ints(f, &[1, 0, 1]), params, 10).unwrap();
        let (b, ex) = x.absolute_value().unwrap();
        assert_eq!((b, ex), (2, Ratio::new(2, 1)));
        // |u| = 3^{1/2} in F_3((u)), e = 2
        let fl = Flavor::laurent(3, 2, 1).unwrap();
        let u = LocalFieldElem::uniformizer(fl, 10);
        let (b, ex) = u.absolute_value().unwrap();
        assert_eq!((b, ex), (3, Ratio::new(-1, 2)));
        // |50| = 5^{-2} in Q_5
        let x = embed_ratnum(&RationalNum::from_int(50), 5, 6).unwrap();
        let (b, ex) = x.absolute_value().unwrap();
        assert_eq!((b, ex), (5, Ratio::new(-2, 1)));
    }

    #[test]
    fn embed_one_third_in_q5() {
        // 1/3 = 2 + 3*5 + 1*5^2 + O(5^3)
        let x = RationalNum::new(1.into(), 3.into()).unwrap();
        let e = embed_ratnum(&x, 5, 3).unwrap();
        assert_eq!(e.valuation().unwrap(), 0);
        assert_eq!(e.p_digits(), &[2, 3, 1]);
    }

    #[test]
    fn embed_rational_function() {
        // 1/(T+1) = u + u^2 + u^3 + u^4 + O(u^5) over F_2
        let f = FqTable::get(2).unwrap();
        let params = LaurentParams::new(2, 1, 1).unwrap();
        let x = RationalFn::new(FqPoly::one(f), FqPoly::from_ints(f, &[1, 1])).unwrap();
        let e = embed_ratfn(&x, params, 5).unwrap();
        assert_eq!(e.valuation().unwrap(), 1);
        assert_eq!(e.fq_digits().len(), 4);
        assert!(e.fq_digits().iter().all(|d| d.is_one()));
    }

    #[test]
    fn frobenius_examples() {
        // frobenius(u, 1) = u^2 over F_2((u))
        let u = LocalFieldElem::uniformizer(f2u(), 6);
        let fu = u.frobenius(1).unwrap();
        assert_eq!(fu.valuation().unwrap(), 2);
        // frobenius(1 + u, 1) = 1 + u^2
        let f = FqTable::get(2).unwrap();
        let x = LocalFieldElem::from_fq_digits(f2u(), 0, 6, vec![f.one(), f.one()]);
        let fx = x.frobenius(1).unwrap();
        assert_eq!(fx.digit_fq(0), f.one());
        assert_eq!(fx.digit_fq(1), f.zero());
        assert_eq!(fx.digit_fq(2), f.one());
        // over F_9 = F_3 (f=2): c * u^{-1} -> c^3 * u^{-3}
        let fl = Flavor::laurent(3, 1, 2).unwrap();
        let f9 = FqTable::get(9).unwrap();
        let c = f9.generator();
        let x = LocalFieldElem::from_fq_digits(fl, -1, 5, vec![c]);
        let fx = x.frobenius(1).unwrap();
        assert_eq!(fx.valuation().unwrap(), -3);
        assert_eq!(fx.digit_fq(-3), c.pow(3));
    }

    #[test]
    fn promotion_and_demotion_roundtrip() {
        let small = LaurentParams::new(3, 1, 1).unwrap();
        let big = LaurentParams::new(3, 2, 2).unwrap();
        let f3 = FqTable::get(3).unwrap();
        let x = LocalFieldElem::from_fq_digits(
            Flavor::Laurent(small),
            -1,
            4,
            vec![f3.from_int(2), f3.one(), f3.one()],
        );
        let promoted = x.promote(big).unwrap();
        assert_eq!(promoted.valuation().unwrap(), -2);
        let (params, back) = promoted.demote_minimal().unwrap();
        assert_eq!(params, small);
        assert_eq!(back, x);
    }

    #[test]
    fn precision_rules() {
        let f = FqTable::get(2).unwrap();
        let x = LocalFieldElem::from_fq_digits(f2u(), 2, 10, vec![f.one()]); // u^2, prec 10
        let y = x.inv().unwrap();
        assert_eq!(y.valuation().unwrap(), -2);
        assert_eq!(y.precision(), 10 - 4);
        let z = x.mul(&y).unwrap();
        assert_eq!(z.precision(), (10 + -2).min(6 + 2));
    }

    #[test]
    fn display_rendering() {
        let f = FqTable::get(2).unwrap();
        let x = LocalFieldElem::from_fq_digits(f2u(), -1, 3, vec![f.one(), f.zero(), f.one()]);
        assert_eq!(x.to_string(), "u^-1*(1 + u^2) + O(u^3)");
        let z = LocalFieldElem::zero(f2u(), 4);
        assert_eq!(z.to_string(), "O(u^4)");
        let q5 = embed_ratnum(&RationalNum::from_int(50), 5, 5).unwrap();
        assert_eq!(q5.to_string(), "5^2*[2,0,0] + O(5^5)");
    }
}
