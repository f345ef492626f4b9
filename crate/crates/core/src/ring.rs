//! Field-as-object traits so the same exact algorithms (elimination,
//! twisted-polynomial arithmetic, series solving) run over F_q(T), Q,
//! finite fields and precision-tracked local fields.

use crate::error::{Error, Result};
use crate::localfield::fq::{FqElem, FqTable};
use crate::localfield::local::{embed_ratfn, embed_ratnum, Flavor, LocalFieldElem};
use crate::localfield::ratfn::RationalFn;
use crate::localfield::ratnum::RationalNum;

/// A field presented as an object carrying its parameters; elements are
/// plain values.
pub trait Ring: Clone + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let bi = self.inv(b)?;
        self.mul(a, &bi)
    }

    fn from_int(&self, k: i64) -> Self::Elem;

    /// Pivot preference for elimination; smaller is better, None means the
    /// entry cannot be used as a pivot. Exact fields use 0 for any nonzero
    /// entry; local fields prefer minimal valuation.
    fn pivot_weight(&self, a: &Self::Elem) -> Option<i64> {
        if self.is_zero(a) {
            None
        } else {
            Some(0)
        }
    }
}

/// Rings carrying the q-power Frobenius used by twisted polynomials.
pub trait FrobRing: Ring {
    /// The Frobenius base q.
    fn q(&self) -> u32;
    /// a -> a^{q^j}.
    fn frobenius(&self, a: &Self::Elem, j: u32) -> Result<Self::Elem>;
}

/// Rings whose elements embed into a local field at a given precision.
pub trait LocalEmbed: Ring {
    fn embed_local(&self, a: &Self::Elem, target: &Flavor, prec: i64) -> Result<LocalFieldElem>;
}

/// Coefficient rings that can host a T-module: they contain T, the base
/// field F_q, and embed into local fields for evaluation.
pub trait TCoeffRing: FrobRing + LocalEmbed {
    fn t_element(&self) -> Result<Self::Elem>;
    fn from_base_fq(&self, c: FqElem) -> Result<Self::Elem>;
    fn base_field(&self) -> Result<&'static FqTable>;
}

// ----- finite fields -----

#[derive(Clone, Copy, Debug)]
pub struct FqField(pub &'static FqTable);

impl Ring for FqField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        self.0.zero()
    }
    fn one(&self) -> FqElem {
        self.0.one()
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(a.add(*b))
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        a.neg()
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(a.mul(*b))
    }
    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        a.inv()
    }
    fn from_int(&self, k: i64) -> FqElem {
        self.0.from_int(k)
    }
}

// ----- F_q(T) -----

#[derive(Clone, Copy, Debug)]
pub struct RatFnField(pub &'static FqTable);

impl RatFnField {
    pub fn of_q(q: u32) -> Result<Self> {
        Ok(RatFnField(FqTable::get(q)?))
    }
}

impl Ring for RatFnField {
    type Elem = RationalFn;

    fn zero(&self) -> RationalFn {
        RationalFn::zero(self.0)
    }
    fn one(&self) -> RationalFn {
        RationalFn::one(self.0)
    }
    fn is_zero(&self, a: &RationalFn) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
        Ok(a.add(b))
    }
    fn neg(&self, a: &RationalFn) -> RationalFn {
        a.neg()
    }
    fn mul(&self, a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
        Ok(a.mul(b))
    }
    fn inv(&self, a: &RationalFn) -> Result<RationalFn> {
        a.inv()
    }
    fn from_int(&self, k: i64) -> RationalFn {
        RationalFn::from_poly(crate::localfield::fqpoly::FqPoly::from_ints(self.0, &[k]))
    }
}

impl FrobRing for RatFnField {
    fn q(&self) -> u32 {
        self.0.q
    }
    fn frobenius(&self, a: &RationalFn, j: u32) -> Result<RationalFn> {
        Ok(a.frobenius(j))
    }
}

impl LocalEmbed for RatFnField {
    fn embed_local(&self, a: &RationalFn, target: &Flavor, prec: i64) -> Result<LocalFieldElem> {
        match target {
            Flavor::Laurent(lp) => embed_ratfn(a, *lp, prec),
            Flavor::Padic(_) => Err(Error::FlavorMismatch(
                "cannot embed F_q(T) into a p-adic field".into(),
            )),
        }
    }
}

impl TCoeffRing for RatFnField {
    fn t_element(&self) -> Result<RationalFn> {
        Ok(RationalFn::t(self.0))
    }
    fn from_base_fq(&self, c: FqElem) -> Result<RationalFn> {
        if c.field().q != self.0.q {
            return Err(Error::FlavorMismatch("constant from a different base field".into()));
        }
        Ok(RationalFn::from_poly(crate::localfield::fqpoly::FqPoly::constant(self.0, c)))
    }
    fn base_field(&self) -> Result<&'static FqTable> {
        Ok(self.0)
    }
}

// ----- Q -----

#[derive(Clone, Copy, Debug)]
pub struct RatField;

impl Ring for RatField {
    type Elem = RationalNum;

    fn zero(&self) -> RationalNum {
        RationalNum::zero()
    }
    fn one(&self) -> RationalNum {
        RationalNum::one()
    }
    fn is_zero(&self, a: &RationalNum) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RationalNum, b: &RationalNum) -> Result<RationalNum> {
        Ok(a.add(b))
    }
    fn neg(&self, a: &RationalNum) -> RationalNum {
        a.neg()
    }
    fn mul(&self, a: &RationalNum, b: &RationalNum) -> Result<RationalNum> {
        Ok(a.mul(b))
    }
    fn inv(&self, a: &RationalNum) -> Result<RationalNum> {
        a.inv()
    }
    fn from_int(&self, k: i64) -> RationalNum {
        RationalNum::from_int(k)
    }
}

impl LocalEmbed for RatField {
    fn embed_local(&self, a: &RationalNum, target: &Flavor, prec: i64) -> Result<LocalFieldElem> {
        match target {
            Flavor::Padic(p) => embed_ratnum(a, *p, prec),
            Flavor::Laurent(_) => Err(Error::FlavorMismatch(
                "cannot embed Q into a Laurent-series field".into(),
            )),
        }
    }
}

// ----- local fields at a fixed ambient precision -----

#[derive(Clone, Copy, Debug)]
pub struct LocalRing {
    pub flavor: Flavor,
    pub prec: i64,
}

impl LocalRing {
    pub fn new(flavor: Flavor, prec: i64) -> Self {
        LocalRing { flavor, prec }
    }
}

impl Ring for LocalRing {
    type Elem = LocalFieldElem;

    fn zero(&self) -> LocalFieldElem {
        LocalFieldElem::zero(self.flavor, self.prec)
    }
    fn one(&self) -> LocalFieldElem {
        LocalFieldElem::one(self.flavor, self.prec)
    }
    fn is_zero(&self, a: &LocalFieldElem) -> bool {
        a.is_zero_at_precision()
    }
    fn add(&self, a: &LocalFieldElem, b: &LocalFieldElem) -> Result<LocalFieldElem> {
        a.add(b)
    }
    fn neg(&self, a: &LocalFieldElem) -> LocalFieldElem {
        a.neg()
    }
    fn mul(&self, a: &LocalFieldElem, b: &LocalFieldElem) -> Result<LocalFieldElem> {
        a.mul(b)
    }
    fn inv(&self, a: &LocalFieldElem) -> Result<LocalFieldElem> {
        a.inv()
    }
    fn from_int(&self, k: i64) -> LocalFieldElem {
        LocalFieldElem::from_int(self.flavor, k, self.prec)
    }
    fn pivot_weight(&self, a: &LocalFieldElem) -> Option<i64> {
        if a.is_zero_at_precision() {
            None
        } else {
            Some(a.val_floor())
        }
    }
}

impl FrobRing for LocalRing {
    fn q(&self) -> u32 {
        match self.flavor {
            Flavor::Laurent(lp) => lp.q,
            Flavor::Padic(p) => p,
        }
    }
    fn frobenius(&self, a: &LocalFieldElem, j: u32) -> Result<LocalFieldElem> {
        a.frobenius(j)
    }
}

impl LocalEmbed for LocalRing {
    fn embed_local(&self, a: &LocalFieldElem, target: &Flavor, prec: i64) -> Result<LocalFieldElem> {
        match (self.flavor, target) {
            (Flavor::Laurent(_), Flavor::Laurent(big)) => Ok(a.promote(*big)?.truncate(prec)),
            (Flavor::Padic(p), Flavor::Padic(pt)) if p == *pt => Ok(a.truncate(prec)),
            _ => Err(Error::FlavorMismatch("incompatible local embedding".into())),
        }
    }
}

impl TCoeffRing for LocalRing {
    fn t_element(&self) -> Result<LocalFieldElem> {
        match self.flavor {
            Flavor::Laurent(lp) => crate::localfield::local::embed_poly(
                &crate::localfield::fqpoly::FqPoly::t(lp.base_table()),
                lp,
                self.prec,
            ),
            Flavor::Padic(_) => Err(Error::FlavorMismatch("no T in a p-adic field".into())),
        }
    }
    fn from_base_fq(&self, c: FqElem) -> Result<LocalFieldElem> {
        match self.flavor {
            Flavor::Laurent(lp) => {
                let d = c.embed_into(lp.residue_table())?;
                Ok(LocalFieldElem::from_fq_digits(self.flavor, 0, self.prec, vec![d]))
            }
            Flavor::Padic(_) => Err(Error::FlavorMismatch("no F_q in a p-adic field".into())),
        }
    }
    fn base_field(&self) -> Result<&'static FqTable> {
        match self.flavor {
            Flavor::Laurent(lp) => Ok(lp.base_table()),
            Flavor::Padic(_) => Err(Error::FlavorMismatch("p-adic field has no F_q".into())),
        }
    }
}
