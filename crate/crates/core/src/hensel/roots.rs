//! Roots of univariate polynomials over Laurent local fields.
//!
//! Strategy: Newton-polygon slopes give the candidate valuations; for each
//! integer slope the scaled equation reduces to a residue-field polynomial
//! whose roots are enumerated by brute force; simple residue roots lift by
//! Newton iteration, multiple ones recurse on the shifted polynomial.

use crate::error::{Error, Result};
use crate::localfield::{Flavor, LocalFieldElem};

const MAX_RECURSION: usize = 64;
const MAX_NEWTON_STEPS: usize = 64;

/// Evaluate a dense polynomial (ascending coefficients) by Horner.
pub fn poly_eval(coeffs: &[LocalFieldElem], x: &LocalFieldElem) -> Result<LocalFieldElem> {
    let flavor = *x.flavor();
    let prec = x.precision() + 64;
    let mut acc = LocalFieldElem::zero(flavor, prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x)?.add(c)?;
    }
    Ok(acc)
}

/// Formal derivative.
pub fn poly_derivative(coeffs: &[LocalFieldElem]) -> Result<Vec<LocalFieldElem>> {
    let mut out = Vec::with_capacity(coeffs.len().saturating_sub(1));
    for (j, c) in coeffs.iter().enumerate().skip(1) {
        out.push(c.mul_int(j as i64)?);
    }
    Ok(out)
}

/// Newton iteration from `x0` until v(F(x)) >= target. Enforces the Hensel
/// guard v(F(x0)) > 2 v(F'(x0)) before starting.
pub fn newton_lift(
    coeffs: &[LocalFieldElem],
    x0: &LocalFieldElem,
    target: i64,
) -> Result<LocalFieldElem> {
    let deriv = poly_derivative(coeffs)?;
    let mut x = x0.clone();
    let f0 = poly_eval(coeffs, &x)?;
    let d0 = poly_eval(&deriv, &x)?;
    let vf = f0.val_floor();
    let vd = d0
        .valuation()
        .map_err(|_| Error::SingularJacobian)?;
    if !f0.is_zero_at_precision() && vf <= 2 * vd {
        return Err(Error::HenselConditionFailed { residual: vf, jacdet2: 2 * vd });
    }
    for _ in 0..MAX_NEWTON_STEPS {
        let f = poly_eval(coeffs, &x)?;
        if f.is_zero_at_precision() || f.val_floor() >= target {
            return Ok(x);
        }
        let d = poly_eval(&deriv, &x)?;
        x = x.sub(&f.div(&d)?)?;
    }
    Err(Error::LiftDivergence(format!(
        "newton did not reach residual {target} in {MAX_NEWTON_STEPS} steps"
    )))
}

/// Taylor shift: coefficients of P(r + z) as a polynomial in z.
fn taylor_shift(coeffs: &[LocalFieldElem], r: &LocalFieldElem) -> Result<Vec<LocalFieldElem>> {
    let n = coeffs.len();
    let mut b: Vec<LocalFieldElem> = coeffs.to_vec();
    if n == 0 {
        return Ok(b);
    }
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = b[j + 1].mul(r)?;
            b[j] = b[j].add(&t)?;
        }
        let _ = i;
    }
    Ok(b)
}

/// Candidate integer root valuations from the lower Newton polygon.
fn polygon_slopes(points: &[(i64, i64)]) -> Vec<i64> {
    // lower convex hull of (exponent, valuation), exponents ascending
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep the hull lower-convex: remove b if it lies above segment a-p
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let (j1, v1) = w[0];
        let (j2, v2) = w[1];
        let dv = v1 - v2;
        let dj = j2 - j1;
        if dv % dj == 0 {
            out.push(dv / dj); // root valuation on this edge
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All roots of the polynomial in the field of its coefficients, to residual
/// valuation >= `target`. Roots of any valuation are searched (`min_w` is
/// used internally by the recursion to restrict to positive-valuation roots).
pub fn univariate_roots(coeffs: &[LocalFieldElem], target: i64) -> Result<Vec<LocalFieldElem>> {
    roots_rec(coeffs, target, None, 0)
}

fn roots_rec(
    coeffs: &[LocalFieldElem],
    target: i64,
    min_w: Option<i64>,
    depth: usize,
) -> Result<Vec<LocalFieldElem>> {
    if depth > MAX_RECURSION {
        return Err(Error::LiftDivergence("root search recursion limit".into()));
    }
    let flavor = coeffs
        .first()
        .map(|c| *c.flavor())
        .ok_or_else(|| Error::Invalid("empty polynomial".into()))?;
    let (lp, rt) = match flavor {
        Flavor::Laurent(lp) => (lp, lp.residue_table()),
        Flavor::Padic(_) => {
            return Err(Error::FlavorMismatch("root search needs a Laurent flavor".into()))
        }
    };
    let prec_floor = coeffs.iter().map(|c| c.precision()).min().unwrap();

    let mut out: Vec<LocalFieldElem> = Vec::new();
    // exact zero root(s): strip leading zero coefficients
    let k = coeffs
        .iter()
        .position(|c| !c.is_zero_at_precision())
        .ok_or_else(|| Error::Invalid("polynomial is zero at working precision".into()))?;
    if k > 0 {
        out.push(LocalFieldElem::zero(flavor, prec_floor));
    }
    let work = &coeffs[k..];
    if work.len() <= 1 {
        return Ok(out);
    }

    let pts: Vec<(i64, i64)> = work
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero_at_precision())
        .map(|(j, c)| (j as i64, c.val_floor()))
        .collect();
    let slopes = polygon_slopes(&pts);

    for w in slopes {
        if let Some(mw) = min_w {
            if w < mw {
                continue;
            }
        }
        // scale x = u^w y and normalize by u^mu
        let mu = work
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_at_precision())
            .map(|(j, c)| c.val_floor() + j as i64 * w)
            .min()
            .unwrap();
        let scaled: Vec<LocalFieldElem> = work
            .iter()
            .enumerate()
            .map(|(j, c)| c.shift(j as i64 * w - mu))
            .collect();
        // residue polynomial over F_{q^f}
        let rpoly: Vec<crate::localfield::FqElem> =
            scaled.iter().map(|c| c.digit_fq(0)).collect();
        let rderiv: Vec<crate::localfield::FqElem> = rpoly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| {
                let mut acc = rt.zero();
                for _ in 0..(j as u32 % rt.p) {
                    acc = acc.add(*c);
                }
                acc
            })
            .collect();
        let eval_res = |poly: &[crate::localfield::FqElem], x: crate::localfield::FqElem| {
            let mut acc = rt.zero();
            for c in poly.iter().rev() {
                acc = acc.mul(x).add(*c);
            }
            acc
        };
        for r in rt.elements() {
            if r.is_zero() {
                continue; // zero residues belong to higher slopes
            }
            if !eval_res(&rpoly, r).is_zero() {
                continue;
            }
            let rp = (prec_floor - mu).max(target - mu).max(8);
            let r_el = LocalFieldElem::from_fq_digits(flavor, 0, rp, vec![r]);
            let simple = !eval_res(&rderiv, r).is_zero();
            if simple {
                let y = newton_lift(&scaled, &r_el, (target - mu).max(1))?;
                out.push(y.shift(w).truncate(target.max(y.val_floor() + 1)));
            } else {
                // multiple residue root: shift and recurse on v(z) >= 1
                let shifted = taylor_shift(&scaled, &r_el)?;
                let sub = roots_rec(&shifted, (target - mu).max(1), Some(1), depth + 1)?;
                for z in sub {
                    let y = r_el.add(&z)?;
                    out.push(y.shift(w).truncate(target.max(y.val_floor() + 1)));
                }
            }
        }
    }
    // canonical order, dedupe equal representations
    out.sort_by(|a, b| a.cmp_key(b));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::{embed_poly, FqPoly, FqTable, LaurentParams, LocalFieldElem};

    fn embed_coeffs(ints: &[&[i64]], q: u32, e: u32, f: u32, prec: i64) -> Vec<LocalFieldElem> {
        let field = FqTable::get(q).unwrap();
        let params = LaurentParams::new(q, e, f).unwrap();
        ints.iter()
            .map(|c| embed_poly(&FqPoly::from_ints(field, c), params, prec).unwrap())
            .collect()
    }

    #[test]
    fn carlitz_t_torsion_roots_q2() {
        // Tx + x^2 = 0 over F_2((u)): roots 0 and T
        let coeffs = embed_coeffs(&[&[0], &[0, 1], &[1]], 2, 1, 1, 40);
        let roots = univariate_roots(&coeffs, 30).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].valuation().unwrap() == -1); // T
        assert!(roots[1].is_zero_at_precision());
        for r in &roots {
            let res = poly_eval(&coeffs, r).unwrap();
            assert!(res.is_zero_at_precision() || res.val_floor() >= 25);
        }
    }

    #[test]
    fn carlitz_t_torsion_needs_f2_over_q3() {
        // Tx + x^3 over F_3: nonzero roots satisfy x^2 = -T, living in e=2, f=2
        let coeffs_e2f1 = embed_coeffs(&[&[0], &[0, 1], &[0], &[1]], 3, 2, 1, 40);
        let roots = univariate_roots(&coeffs_e2f1, 30).unwrap();
        assert_eq!(roots.len(), 1); // only x = 0
        let coeffs_e2f2 = embed_coeffs(&[&[0], &[0, 1], &[0], &[1]], 3, 2, 2, 40);
        let roots = univariate_roots(&coeffs_e2f2, 30).unwrap();
        assert_eq!(roots.len(), 3);
        let nonzero: Vec<_> = roots.iter().filter(|r| !r.is_zero_at_precision()).collect();
        assert_eq!(nonzero.len(), 2);
        for r in nonzero {
            assert_eq!(r.valuation().unwrap(), -1); // -1 in u-units = -1/2 in 1/T units
            let res = poly_eval(&coeffs_e2f2, r).unwrap();
            assert!(res.is_zero_at_precision() || res.val_floor() >= 25);
        }
    }

    #[test]
    fn anderson_coleman_parameter() {
        // c^2 - Tc + 1 = 0 with |c| < 1: c = u + u^3 + ... in F_2((u))
        let coeffs = embed_coeffs(&[&[1], &[0, -1], &[1]], 2, 1, 1, 40);
        let u = LocalFieldElem::uniformizer(crate::localfield::Flavor::laurent(2, 1, 1).unwrap(), 40);
        let c = newton_lift(&coeffs, &u, 35).unwrap();
        assert_eq!(c.valuation().unwrap(), 1);
        let res = poly_eval(&coeffs, &c).unwrap();
        assert!(res.is_zero_at_precision() || res.val_floor() >= 35);
    }

    #[test]
    fn quadratic_with_multiple_residue_root() {
        // (x - 1)(x - (1+u)) = x^2 - (2+u)x + (1+u): residue root 1 is double
        let fl = crate::localfield::Flavor::laurent(3, 1, 1).unwrap();
        let f3 = FqTable::get(3).unwrap();
        let one = LocalFieldElem::one(fl, 30);
        let u = LocalFieldElem::uniformizer(fl, 30);
        let r2 = one.add(&u).unwrap();
        // expand coefficients
        let c0 = one.mul(&r2).unwrap();
        let c1 = one.add(&r2).unwrap().neg();
        let c2 = LocalFieldElem::one(fl, 30);
        let roots = univariate_roots(&[c0, c1, c2], 25).unwrap();
        assert_eq!(roots.len(), 2);
        let _ = f3;
    }
}
