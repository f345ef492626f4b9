//! Twisted polynomials: sums a_0 + a_1*t + ... + a_d*t^d with t*c = c^q*t,
//! scalar or matrix coefficients, acting on points as F_q-linear maps
//! x -> sum a_i x^{(q^i)}.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::localfield::{Flavor, LocalFieldElem};
use crate::ring::{FrobRing, LocalEmbed, Ring};
use crate::textexpr::{self, Expr};

#[derive(Clone, Debug)]
pub struct TwistedPoly<R: FrobRing> {
    ring: R,
    m: usize,
    /// coeffs[i] is the m x m matrix on t^i; trailing matrix nonzero.
    coeffs: Vec<Mat<R::Elem>>,
}

impl<R: FrobRing> PartialEq for TwistedPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.coeffs == other.coeffs
    }
}

fn mat_is_zero<R: Ring>(ring: &R, m: &Mat<R::Elem>) -> bool {
    (0..m.rows).all(|r| (0..m.cols).all(|c| ring.is_zero(m.at(r, c))))
}

/// Entry-wise Frobenius on a matrix.
pub fn mat_frobenius<R: FrobRing>(ring: &R, a: &Mat<R::Elem>, j: u32) -> Result<Mat<R::Elem>> {
    a.try_map(|x| ring.frobenius(x, j))
}

impl<R: FrobRing> TwistedPoly<R> {
    pub fn new(ring: R, m: usize, mut coeffs: Vec<Mat<R::Elem>>) -> Result<Self> {
        for c in &coeffs {
            if c.rows != m || c.cols != m {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient is {}x{}, expected {m}x{m}",
                    c.rows, c.cols
                )));
            }
        }
        while coeffs.last().map_or(false, |c| mat_is_zero(&ring, c)) {
            coeffs.pop();
        }
        Ok(TwistedPoly { ring, m, coeffs })
    }

    pub fn zero(ring: R, m: usize) -> Self {
        TwistedPoly { ring, m, coeffs: Vec::new() }
    }

    pub fn one(ring: R, m: usize) -> Self {
        let id = linalg::identity(&ring, m);
        TwistedPoly { ring, m, coeffs: vec![id] }
    }

    /// Scalar (m = 1) twisted polynomial from plain coefficients.
    pub fn scalar(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mats = coeffs
            .into_iter()
            .map(|c| Mat::from_rows(vec![vec![c]]))
            .collect();
        Self::new(ring.clone(), 1, mats).expect("1x1 shapes")
    }

    pub fn constant(ring: R, mat: Mat<R::Elem>) -> Result<Self> {
        let m = mat.rows;
        Self::new(ring, m, vec![mat])
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in t, or None for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Mat<R::Elem> {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| linalg::zeros(&self.ring, self.m, self.m))
    }

    pub fn coeffs(&self) -> &[Mat<R::Elem>] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Mat<R::Elem>> {
        self.coeffs.last()
    }

    /// The constant (t^0) coefficient: the differential of the additive map.
    pub fn constant_term(&self) -> Mat<R::Elem> {
        self.coeff(0)
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.m, rhs.m)));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(linalg::add(&self.ring, &self.coeff(i), &rhs.coeff(i))?);
        }
        Self::new(self.ring.clone(), self.m, out)
    }

    pub fn neg(&self) -> Self {
        TwistedPoly {
            ring: self.ring.clone(),
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c.map(|x| self.ring.neg(x))).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// (A t^i)(B t^j) = A * B^{(q^i)} t^{i+j}, extended bilinearly.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.ring.clone(), self.m));
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![linalg::zeros(&self.ring, self.m, self.m); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if mat_is_zero(&self.ring, a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let tw = mat_frobenius(&self.ring, b, i as u32)?;
                let prod = linalg::mul(&self.ring, a, &tw)?;
                out[i + j] = linalg::add(&self.ring, &out[i + j], &prod)?;
            }
        }
        Self::new(self.ring.clone(), self.m, out)
    }

    /// Left scalar multiple by a matrix.
    pub fn scale_left(&self, mat: &Mat<R::Elem>) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(linalg::mul(&self.ring, mat, c)?);
        }
        Self::new(self.ring.clone(), self.m, out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ring.clone(), self.m);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Entry (i, j) as a scalar twisted polynomial.
    pub fn entry_poly(&self, i: usize, j: usize) -> TwistedPoly<R> {
        let coeffs: Vec<R::Elem> = self.coeffs.iter().map(|c| c.at(i, j).clone()).collect();
        TwistedPoly::scalar(self.ring.clone(), coeffs)
    }

    /// Left Euclidean division of scalar twisted polynomials:
    /// self = quot * rhs + rem with deg rem < deg rhs.
    pub fn left_divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        if self.m != 1 || rhs.m != 1 {
            return Err(Error::DimensionMismatch("left division is scalar-only".into()));
        }
        if rhs.is_zero() {
            return Err(Error::Invalid("division by the zero twisted polynomial".into()));
        }
        let ring = self.ring.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(ring.clone(), 1);
        let db = rhs.degree().unwrap();
        let lb = rhs.coeffs[db].at(0, 0).clone();
        while let Some(da) = rem.degree() {
            if da < db {
                break;
            }
            let d = da - db;
            let la = rem.coeffs[da].at(0, 0).clone();
            // (x t^d)(lb t^db) = x * lb^{(q^d)} t^da  =>  x = la / lb^{(q^d)}
            let lbf = ring.frobenius(&lb, d as u32)?;
            let x = ring.div(&la, &lbf)?;
            let mut mono = vec![ring.zero(); d + 1];
            mono[d] = x;
            let mono = Self::scalar(ring.clone(), mono);
            rem = rem.sub(&mono.mul(rhs)?)?;
            quot = quot.add(&mono)?;
        }
        Ok((quot, rem))
    }

    /// Evaluate the additive map at a point: sum_i a_i * x^{(q^i)}.
    pub fn eval(
        &self,
        point: &[LocalFieldElem],
        flavor: &Flavor,
        prec: i64,
    ) -> Result<Vec<LocalFieldElem>>
    where
        R: LocalEmbed,
    {
        if point.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, module dimension is {}",
                point.len(),
                self.m
            )));
        }
        if prec <= 0 {
            return Err(Error::PrecisionExhausted(format!("working precision {prec}")));
        }
        for x in point {
            x.flavor().check_same(flavor)?;
        }
        // guard digits cover valuation losses from negative-valuation coefficients
        let guard = 4 * (self.coeffs.len() as i64 + 2);
        let mut acc = vec![LocalFieldElem::zero(*flavor, prec); self.m];
        for (i, a) in self.coeffs.iter().enumerate() {
            // x^{(q^i)} coordinate-wise, truncated back to working precision
            let mut fx = Vec::with_capacity(self.m);
            for x in point {
                let xf = match flavor {
                    Flavor::Laurent(_) => x.frobenius(i as u32)?.truncate(prec + guard),
                    Flavor::Padic(_) => {
                        if i == 0 {
                            x.clone()
                        } else {
                            return Err(Error::FlavorMismatch(
                                "twisted evaluation needs a Laurent flavor".into(),
                            ));
                        }
                    }
                };
                fx.push(xf);
            }
            for r in 0..self.m {
                for c in 0..self.m {
                    let aentry = a.at(r, c);
                    if self.ring.is_zero(aentry) {
                        continue;
                    }
                    let ae = self.ring.embed_local(aentry, flavor, prec + guard)?;
                    acc[r] = acc[r].add(&ae.mul(&fx[c])?)?;
                }
            }
        }
        Ok(acc.into_iter().map(|x| x.truncate(prec)).collect())
    }
}

// ----- text grammar -----

/// Render in the canonical `a0 + a1*t + a2*t^2` form; matrices row-major.
pub fn render<R: FrobRing>(p: &TwistedPoly<R>) -> String
where
    R::Elem: std::fmt::Display,
{
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate() {
        if mat_is_zero(p.ring(), c) {
            continue;
        }
        if !first {
            out.push_str(" + ");
        }
        first = false;
        let coeff_str = if p.dim() == 1 {
            let s = c.at(0, 0).to_string();
            if s.contains('+') || s.contains(' ') || s.contains('-') {
                format!("({s})")
            } else {
                s
            }
        } else {
            let rows: Vec<String> = (0..c.rows)
                .map(|r| {
                    let cells: Vec<String> =
                        c.row(r).iter().map(|x| x.to_string()).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        };
        match i {
            0 => {
                let _ = write!(out, "{coeff_str}");
            }
            1 => {
                let _ = write!(out, "{coeff_str}*t");
            }
            _ => {
                let _ = write!(out, "{coeff_str}*t^{i}");
            }
        }
    }
    out
}

/// Parse the canonical grammar. Coefficients are scalar expressions (m = 1,
/// or scalar-times-identity for m > 1) or matrix literals; `t` powers must
/// trail their coefficient.
pub fn parse<R: FrobRing>(
    s: &str,
    ring: &R,
    m: usize,
    resolve: impl Fn(&str) -> Option<R::Elem> + Copy,
    line: usize,
) -> Result<TwistedPoly<R>> {
    let ast = textexpr::parse_expr(s, line)?;
    let mut acc = TwistedPoly::zero(ring.clone(), m);
    collect_terms(&ast, false, ring, m, resolve, line, &mut acc)?;
    Ok(acc)
}

fn collect_terms<R: FrobRing>(
    e: &Expr,
    negate: bool,
    ring: &R,
    m: usize,
    resolve: impl Fn(&str) -> Option<R::Elem> + Copy,
    line: usize,
    acc: &mut TwistedPoly<R>,
) -> Result<()> {
    match e {
        Expr::Add(a, b) => {
            collect_terms(a, negate, ring, m, resolve, line, acc)?;
            collect_terms(b, negate, ring, m, resolve, line, acc)?;
        }
        Expr::Sub(a, b) => {
            collect_terms(a, negate, ring, m, resolve, line, acc)?;
            collect_terms(b, !negate, ring, m, resolve, line, acc)?;
        }
        Expr::Neg(a) => collect_terms(a, !negate, ring, m, resolve, line, acc)?,
        term => {
            let (coeff_expr, tau) = split_tau(term, line)?;
            let mat = match coeff_expr {
                None => linalg::identity(ring, m),
                Some(Expr::Matrix(rows)) => {
                    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                        return Err(Error::parse(
                            line,
                            format!("matrix coefficient is not {m}x{m}"),
                        ));
                    }
                    let mut mat = linalg::zeros(ring, m, m);
                    for (r, row) in rows.iter().enumerate() {
                        for (c, cell) in row.iter().enumerate() {
                            mat.set(r, c, eval_scalar(cell, ring, resolve)?);
                        }
                    }
                    mat
                }
                Some(scalar) => {
                    let v = eval_scalar(&scalar, ring, resolve)?;
                    let mut mat = linalg::zeros(ring, m, m);
                    for i in 0..m {
                        mat.set(i, i, v.clone());
                    }
                    mat
                }
            };
            let mat = if negate { mat.map(|x| ring.neg(x)) } else { mat };
            let mut coeffs = vec![linalg::zeros(ring, m, m); tau + 1];
            coeffs[tau] = mat;
            let term_poly = TwistedPoly::new(ring.clone(), m, coeffs)?;
            *acc = acc.add(&term_poly)?;
        }
    }
    Ok(())
}

/// Split a multiplicative term into (coefficient expr, tau power). `t`
/// factors must be rightmost.
fn split_tau(e: &Expr, line: usize) -> Result<(Option<Expr>, usize)> {
    match e {
        Expr::Var(v) if v == "t" => Ok((None, 1)),
        Expr::Pow(b, k) => {
            if matches!(&**b, Expr::Var(v) if v == "t") {
                Ok((None, *k as usize))
            } else {
                Ok((Some(e.clone()), 0))
            }
        }
        Expr::Mul(a, b) => {
            let (cb, tb) = split_tau(b, line)?;
            if let Some(cbe) = cb {
                if tb != 0 {
                    return Err(Error::parse(line, "t factors must be rightmost in a term"));
                }
                // b carries no tau: whole product is a coefficient
                let (ca, ta) = split_tau(a, line)?;
                if ta != 0 {
                    return Err(Error::parse(line, "t factors must be rightmost in a term"));
                }
                match ca {
                    None => Ok((Some(cbe), 0)),
                    Some(cae) => Ok((Some(Expr::Mul(Box::new(cae), Box::new(cbe))), 0)),
                }
            } else {
                // b is a pure tau power; a may carry more tau on its right
                let (ca, ta) = split_tau(a, line)?;
                Ok((ca, ta + tb))
            }
        }
        other => Ok((Some(other.clone()), 0)),
    }
}

fn eval_scalar<R: Ring>(
    e: &Expr,
    ring: &R,
    resolve: impl Fn(&str) -> Option<R::Elem>,
) -> Result<R::Elem> {
    let alg = textexpr::ScalarAlg { ring, resolve };
    textexpr::eval_expr(e, &alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::{FqTable, RationalFn};
    use crate::ring::RatFnField;

    fn ratfn_ring(q: u32) -> RatFnField {
        RatFnField::of_q(q).unwrap()
    }

    fn carlitz_phi(q: u32) -> TwistedPoly<RatFnField> {
        let ring = ratfn_ring(q);
        TwistedPoly::scalar(ring.clone(), vec![RationalFn::t(ring.0), ring.one()])
    }

    fn resolve_t(ring: &RatFnField) -> impl Fn(&str) -> Option<RationalFn> + Copy + '_ {
        move |name: &str| match name {
            "T" => Some(RationalFn::t(ring.0)),
            "g" if ring.0.n > 1 => Some(RationalFn::from_poly(
                crate::localfield::FqPoly::constant(ring.0, ring.0.generator()),
            )),
            _ => None,
        }
    }

    #[test]
    fn char2_coefficient_cancellation() {
        // (T + t) + t = T over F_2
        let p = carlitz_phi(2);
        let ring = ratfn_ring(2);
        let tau = TwistedPoly::scalar(ring.clone(), vec![ring.zero(), ring.one()]);
        let s = p.add(&tau).unwrap();
        assert_eq!(s.degree(), Some(0));
        assert_eq!(s.constant_term().at(0, 0).to_string(), "T");
    }

    #[test]
    fn defining_relation() {
        // t * c = c^q * t
        for q in [2u32, 3, 4] {
            let ring = ratfn_ring(q);
            let tau = TwistedPoly::scalar(ring.clone(), vec![ring.zero(), ring.one()]);
            let c = TwistedPoly::scalar(
                ring.clone(),
                vec![textexpr::parse_ratfn("T+1", ring.0, 1).unwrap()],
            );
            let lhs = tau.mul(&c).unwrap();
            assert_eq!(lhs.degree(), Some(1));
            let expect = textexpr::parse_ratfn("T+1", ring.0, 1).unwrap().frobenius(1);
            assert_eq!(lhs.coeff(1).at(0, 0), &expect);
        }
    }

    #[test]
    fn carlitz_square() {
        // (T + t)^2 = T^2 + (T^q + T) t + t^2
        for q in [2u32, 3, 5] {
            let p = carlitz_phi(q);
            let sq = p.mul(&p).unwrap();
            assert_eq!(sq.degree(), Some(2));
            let ring = ratfn_ring(q);
            let tq_plus_t = textexpr::parse_ratfn(&format!("T^{q} + T"), ring.0, 1).unwrap();
            assert_eq!(sq.coeff(0).at(0, 0).to_string(), "T^2");
            assert_eq!(sq.coeff(1).at(0, 0), &tq_plus_t);
            assert!(sq.coeff(2).at(0, 0).to_string() == "1");
        }
    }

    #[test]
    fn evaluation_is_additive_and_matches_by_hand() {
        use crate::localfield::{embed_ratfn, LaurentParams, LocalFieldElem};
        // tw_eval(T + t, 1/T) = 1 + T^{-2} over q=2
        let p = carlitz_phi(2);
        let params = LaurentParams::new(2, 1, 1).unwrap();
        let flavor = Flavor::Laurent(params);
        let x = embed_ratfn(
            &textexpr::parse_ratfn("1/T", FqTable::get(2).unwrap(), 1).unwrap(),
            params,
            30,
        )
        .unwrap();
        let y = p.eval(&[x.clone()], &flavor, 25).unwrap();
        let expect = embed_ratfn(
            &textexpr::parse_ratfn("1 + 1/(T^2)", FqTable::get(2).unwrap(), 1).unwrap(),
            params,
            25,
        )
        .unwrap();
        assert!(y[0].sub(&expect).unwrap().is_zero_at_precision());
        // additive map sends 0 to 0
        let z = LocalFieldElem::zero(flavor, 25);
        let y0 = p.eval(&[z], &flavor, 25).unwrap();
        assert!(y0[0].is_zero_at_precision());
    }

    #[test]
    fn double_frobenius_eval() {
        use crate::localfield::LocalFieldElem;
        // tw_eval(t^2, u) = u^9 over F_3((u))
        let ring = ratfn_ring(3);
        let tau2 = TwistedPoly::scalar(
            ring.clone(),
            vec![ring.zero(), ring.zero(), ring.one()],
        );
        let flavor = Flavor::laurent(3, 1, 1).unwrap();
        let u = LocalFieldElem::uniformizer(flavor, 20);
        let y = tau2.eval(&[u], &flavor, 15).unwrap();
        assert_eq!(y[0].valuation().unwrap(), 9);
    }

    #[test]
    fn parse_render_roundtrip() {
        let ring = ratfn_ring(2);
        let s = "T + (T^2 + 1)*t + t^2";
        let p = parse(s, &ring, 1, resolve_t(&ring), 1).unwrap();
        assert_eq!(p.degree(), Some(2));
        let rendered = render(&p);
        let p2 = parse(&rendered, &ring, 1, resolve_t(&ring), 1).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn parse_matrix_form() {
        let ring = ratfn_ring(2);
        let s = "[[T,1],[0,T]] + [[1,0],[0,1]]*t";
        let p = parse(s, &ring, 2, resolve_t(&ring), 1).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.coeff(0).at(0, 1).to_string(), "1");
        let rendered = render(&p);
        let p2 = parse(&rendered, &ring, 2, resolve_t(&ring), 1).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn left_division() {
        // divide (T+t)^2 by (T+t): quotient (T+t), remainder 0
        let p = carlitz_phi(3);
        let sq = p.mul(&p).unwrap();
        let (q, r) = sq.left_divrem(&p).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p);
    }
}
