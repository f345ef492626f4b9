//! Sparse multivariate polynomials over a generic coefficient field.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::localfield::{Flavor, LocalFieldElem};
use crate::ring::{LocalEmbed, Ring};
use crate::textexpr::{eval_expr, parse_expr, Expr, ExprAlg};

/// Terms keyed by exponent vector (graded order comes from the map order
/// only through explicit sorting; the BTreeMap key order is lexicographic,
/// which is deterministic, and that is what matters here).
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<R: Ring> {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, R::Elem>,
}

impl<R: Ring> MPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Self::zero(nvars);
        if !ring.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(ring: &R, nvars: usize, i: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exps, ring.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, ring: &R, exps: Vec<u32>, c: R::Elem) -> Result<()> {
        if ring.is_zero(&c) {
            return Ok(());
        }
        match self.terms.remove(&exps) {
            None => {
                self.terms.insert(exps, c);
            }
            Some(old) => {
                let s = ring.add(&old, &c)?;
                if !ring.is_zero(&s) {
                    self.terms.insert(exps, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, ring: &R, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(ring, e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self, ring: &R) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = ring.neg(c);
        }
        out
    }

    pub fn sub(&self, ring: &R, rhs: &Self) -> Result<Self> {
        self.add(ring, &rhs.neg(ring))
    }

    pub fn mul(&self, ring: &R, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(ring, exps, ring.mul(ca, cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.insert_term(ring, e.clone(), ring.mul(a, c)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, ring: &R, e: u32) -> Result<Self> {
        let mut acc = Self::constant(ring, self.nvars, ring.one());
        for _ in 0..e {
            acc = acc.mul(ring, self)?;
        }
        Ok(acc)
    }

    /// Exact evaluation at a point of the coefficient field.
    pub fn eval(&self, ring: &R, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "evaluating {}-variable polynomial at a {}-tuple",
                self.nvars,
                point.len()
            )));
        }
        let mut acc = ring.zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term = ring.mul(&term, x)?;
                }
            }
            acc = ring.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable i (exponents drop
    /// into the coefficient field through `from_int`, so characteristic-p
    /// conventions apply automatically).
    pub fn derivative(&self, ring: &R, i: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (exps, c) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e2 = exps.clone();
            e2[i] -= 1;
            let k = ring.from_int(exps[i] as i64);
            out.insert_term(ring, e2, ring.mul(c, &k)?)?;
        }
        Ok(out)
    }
}

impl<R: Ring + LocalEmbed> MPoly<R> {
    /// Evaluate at a local-field point, embedding coefficients at the
    /// point's precision plus a small guard.
    pub fn eval_local(
        &self,
        ring: &R,
        flavor: &Flavor,
        prec: i64,
        point: &[LocalFieldElem],
    ) -> Result<LocalFieldElem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "evaluating {}-variable polynomial at a {}-tuple",
                self.nvars,
                point.len()
            )));
        }
        let guard = 8;
        let mut acc = LocalFieldElem::zero(*flavor, prec);
        for (exps, c) in &self.terms {
            let mut term = ring.embed_local(c, flavor, prec + guard)?;
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    term = term.mul(&x.pow(e as u64)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Algebra instance so the expression parser can build polynomials;
/// variables resolve through `vars` first, then coefficient symbols through
/// `consts`.
pub struct PolyAlg<'a, R: Ring, FC: Fn(&str) -> Option<R::Elem>> {
    pub ring: &'a R,
    pub var_names: &'a [String],
    pub consts: FC,
}

impl<'a, R: Ring, FC: Fn(&str) -> Option<R::Elem>> ExprAlg for PolyAlg<'a, R, FC> {
    type Value = MPoly<R>;

    fn from_int(&self, k: i64) -> Result<MPoly<R>> {
        Ok(MPoly::constant(self.ring, self.var_names.len(), self.ring.from_int(k)))
    }

    fn var(&self, name: &str) -> Result<MPoly<R>> {
        if let Some(i) = self.var_names.iter().position(|v| v == name) {
            return Ok(MPoly::var(self.ring, self.var_names.len(), i));
        }
        if let Some(c) = (self.consts)(name) {
            return Ok(MPoly::constant(self.ring, self.var_names.len(), c));
        }
        Err(Error::Invalid(format!("unknown symbol '{name}'")))
    }

    fn add(&self, a: &MPoly<R>, b: &MPoly<R>) -> Result<MPoly<R>> {
        a.add(self.ring, b)
    }
    fn sub(&self, a: &MPoly<R>, b: &MPoly<R>) -> Result<MPoly<R>> {
        a.sub(self.ring, b)
    }
    fn mul(&self, a: &MPoly<R>, b: &MPoly<R>) -> Result<MPoly<R>> {
        a.mul(self.ring, b)
    }
    fn div(&self, a: &MPoly<R>, b: &MPoly<R>) -> Result<MPoly<R>> {
        // division only by a nonzero constant
        if b.total_degree() != 0 || b.is_zero() {
            return Err(Error::Invalid("polynomial division only by constants".into()));
        }
        let c = b.terms.values().next().unwrap();
        a.scale(self.ring, &self.ring.inv(c)?)
    }
    fn neg(&self, a: &MPoly<R>) -> Result<MPoly<R>> {
        Ok(a.neg(self.ring))
    }
}

/// Parse a polynomial in the named variables; other symbols go through
/// `consts` (e.g. `T` and `g` over F_q(T)).
pub fn parse_mpoly<R: Ring>(
    s: &str,
    ring: &R,
    var_names: &[String],
    consts: impl Fn(&str) -> Option<R::Elem>,
    line: usize,
) -> Result<MPoly<R>> {
    let e: Expr = parse_expr(s, line)?;
    let alg = PolyAlg { ring, var_names, consts };
    eval_expr(&e, &alg)
}

/// Canonical variable names x1..xn.
pub fn xvars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Render with `*` and `^`, terms in the map's deterministic order.
pub fn render_mpoly<R: Ring>(p: &MPoly<R>, var_names: &[String]) -> String
where
    R::Elem: std::fmt::Display,
{
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (exps, c) in &p.terms {
        if !first {
            out.push_str(" + ");
        }
        first = false;
        let cs = c.to_string();
        let monomial: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    var_names[i].clone()
                } else {
                    format!("{}^{}", var_names[i], e)
                }
            })
            .collect();
        if monomial.is_empty() {
            let _ = write!(out, "({cs})");
        } else if cs == "1" {
            let _ = write!(out, "{}", monomial.join("*"));
        } else {
            let _ = write!(out, "({cs})*{}", monomial.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::FqTable;
    use crate::ring::RatFnField;

    #[test]
    fn parse_eval_roundtrip() {
        let ring = RatFnField(FqTable::get(3).unwrap());
        let vars = xvars(2);
        let p = parse_mpoly("x2 - x1^2 + T*x1", &ring, &vars, |n| {
            (n == "T").then(|| crate::localfield::RationalFn::t(ring.0))
        }, 1)
        .unwrap();
        assert_eq!(p.total_degree(), 2);
        // eval at (1, 1): 1 - 1 + T = T
        let one = ring.one();
        let v = p.eval(&ring, &[one.clone(), one]).unwrap();
        assert_eq!(v.to_string(), "T");
    }

    #[test]
    fn derivative_in_char_p() {
        let ring = RatFnField(FqTable::get(2).unwrap());
        let vars = xvars(1);
        // d/dx (x^2) = 2x = 0 in char 2
        let p = parse_mpoly("x1^2", &ring, &vars, |_| None, 1).unwrap();
        assert!(p.derivative(&ring, 0).unwrap().is_zero());
        // d/dx (x^3) = 3x^2 = x^2
        let p = parse_mpoly("x1^3", &ring, &vars, |_| None, 1).unwrap();
        let d = p.derivative(&ring, 0).unwrap();
        assert_eq!(render_mpoly(&d, &vars), "x1^2");
    }
}
