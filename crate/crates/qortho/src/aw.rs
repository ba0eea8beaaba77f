//! Askey-Wilson polynomials, their weight, and the closed-form
//! orthogonality constants. This family is the integer-degree anchor for
//! the nonterminating 8phi7 functions: u_n reduces to a multiple of p_n.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::QParams;
use crate::qcore::{phi_eval, pinf_multi, qpoch, qpoch_multi, PochOrder, PRODUCT_TOL};
use crate::quad::re_checked;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The Askey-Wilson polynomial p_n(x; a, b, c, d):
/// a^{-n} (ab, ac, ad; q)_n 4phi3(q^{-n}, abcd q^{n-1}, a e^{it}, a e^{-it};
/// ab, ac, ad; q, q) with x = cos t.
///
/// Evaluated directly as the terminating 4phi3 (n + 1 terms); the imaginary
/// residue of the conjugate-pair sum is checked and discarded.
///
/// ```
/// use qortho::lattice::QParams;
/// use qortho::qcore::QBase;
///
/// let base = QBase::new(0.5).unwrap();
/// let params = QParams::from_real(base, 0.3, 0.2, 0.1, 2.2, 0.8).unwrap();
/// assert_eq!(qortho::aw::aw_poly(0, 0.4, &params).unwrap(), 1.0);
/// // degree one is linear in x
/// let p = |x: f64| qortho::aw::aw_poly(1, x, &params).unwrap();
/// let slope_lo = (p(0.0) - p(-0.5)) / 0.5;
/// let slope_hi = (p(0.5) - p(0.0)) / 0.5;
/// assert!((slope_lo - slope_hi).abs() < 1e-12);
/// ```
pub fn aw_poly(n: u32, x: f64, params: &QParams) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Param(format!("x = {x} outside [-1, 1]")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    if params.a.norm() == 0.0 {
        return Err(Error::Param("a = 0: prefactor a^-n undefined for n >= 1".into()));
    }
    let base = params.base;
    let q = base.q();
    let w = Complex64::new(x, (1.0 - x * x).max(0.0).sqrt());
    let (a, b, c, d) = (params.a, params.b, params.c, params.d);
    let qmn = Complex64::new(q.powi(-(n as i32)), 0.0);
    let series = phi_eval(
        &[qmn, params.abcd() * q.powi(n as i32 - 1), a * w, a * w.conj()],
        &[a * b, a * c, a * d],
        base,
        Complex64::new(q, 0.0),
        PRODUCT_TOL,
    )?;
    let pref = a.powi(-(n as i32))
        * qpoch_multi(&[a * b, a * c, a * d], base, PochOrder::Finite(n), PRODUCT_TOL)?;
    re_checked(pref * series.value, "Askey-Wilson polynomial")
}

/// The weight factor of the Askey-Wilson orthogonality integrand:
/// (e^{2it}, e^{-2it}; q)_inf / (a e^{it}, a e^{-it}, ..., d e^{-it}; q)_inf.
pub fn aw_weight(theta: f64, params: &QParams, tol: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::PoleProximity(format!(
            "theta = {theta} outside the open interval (0, pi)"
        )));
    }
    let base = params.base;
    let w = Complex64::new(theta.cos(), theta.sin());
    let wi = w.conj();
    let num = pinf_multi(&[w * w, wi * wi], base)?;
    let den = pinf_multi(
        &[
            params.a * w,
            params.a * wi,
            params.b * w,
            params.b * wi,
            params.c * w,
            params.c * wi,
            params.d * w,
            params.d * wi,
        ],
        base,
    )?;
    if den.norm() < 1e-13 {
        return Err(Error::PoleProximity(format!(
            "weight denominator {:.3e} underflowed at theta = {theta}",
            den.norm()
        )));
    }
    let _ = tol;
    re_checked(num / den, "Askey-Wilson weight")
}

/// The closed form of int_0^pi p_n p_m w dtheta: zero off the diagonal and
///
///   2 pi (abcd; q)_inf / (q, ab, ac, ad, bc, bd, cd; q)_inf
///   * (1 - abcd/q) (q, ab, ac, ad, bc, bd, cd; q)_n
///     / ((1 - abcd q^{2n-1}) (abcd/q; q)_n)
///
/// on it. The n-independent constant is the Askey-Wilson q-beta integral;
/// the quadrature oracle pins its orientation.
pub fn aw_norm(n: u32, m: u32, params: &QParams) -> Result<f64> {
    if n != m {
        return Ok(0.0);
    }
    let base = params.base;
    let q = base.q();
    let (a, b, c, d) = (params.a, params.b, params.c, params.d);
    let abcd = params.abcd();
    let pairs = [Complex64::new(q, 0.0), a * b, a * c, a * d, b * c, b * d, c * d];
    let h0 =
        2.0 * std::f64::consts::PI * pinf_multi(&[abcd], base)? / pinf_multi(&pairs, base)?;
    let ratio = (ONE - abcd / q) * qpoch_multi(&pairs, base, PochOrder::Finite(n), PRODUCT_TOL)?
        / ((ONE - abcd * q.powi(2 * n as i32 - 1)) * qpoch(abcd / q, base, n));
    re_checked(h0 * ratio, "Askey-Wilson norm")
}
