//! Deterministic, tolerance-controlled quadrature of the orthogonality
//! integrals over theta in [0, pi].
//!
//! Composite Gauss-Legendre panels double until two successive estimates
//! agree; nodes are strictly interior, which is all the endpoint care the
//! integrands need (the weights vanish there like theta^2). Reductions use
//! pairwise summation so results do not depend on evaluation order.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::QParams;
use crate::qcore::pinf_multi;

/// Nodes per Gauss-Legendre panel.
const PANEL_NODES: usize = 16;
/// Default node count of the first composite rule.
const START_NODES: usize = 64;
/// Hard ceiling on the node count.
const MAX_NODES: usize = 4096;

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence from the Chebyshev initial guess.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Pairwise (cascade) summation: deterministic and O(log n) error growth.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// The composite rule over (0, pi) with `total` nodes split into 16-point
/// panels. Returned thetas are strictly interior.
pub(crate) fn composite_nodes(total: usize) -> (Vec<f64>, Vec<f64>) {
    let panels = (total / PANEL_NODES).max(1);
    let (xs, ws) = gauss_legendre(PANEL_NODES);
    let h = std::f64::consts::PI / panels as f64;
    let mut thetas = Vec::with_capacity(panels * PANEL_NODES);
    let mut weights = Vec::with_capacity(panels * PANEL_NODES);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for i in 0..PANEL_NODES {
            thetas.push(mid + 0.5 * h * xs[i]);
            weights.push(0.5 * h * ws[i]);
        }
    }
    (thetas, weights)
}

/// Integrate f over (0, pi): composite Gauss-Legendre with panel doubling
/// until successive estimates differ by less than tol * (1 + |I|).
///
/// Returns the value and the last inter-level difference as error estimate.
pub fn integrate<F>(mut f: F, tol: f64, max_depth: u32) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Param(format!("tolerance {tol} must be positive")));
    }
    let mut nodes = START_NODES;
    let mut prev: Option<f64> = None;
    let mut depth = 0u32;
    loop {
        let (thetas, weights) = composite_nodes(nodes);
        let mut terms = Vec::with_capacity(thetas.len());
        for (&t, &w) in thetas.iter().zip(&weights) {
            terms.push(w * f(t)?);
        }
        let value = pairwise_sum(&terms);
        if let Some(p) = prev {
            let err = (value - p).abs();
            if err <= tol * (1.0 + value.abs()) {
                return Ok((value, err));
            }
        }
        prev = Some(value);
        depth += 1;
        if nodes >= MAX_NODES || depth > max_depth {
            return Err(Error::NoConvergence {
                max_terms: nodes,
                last_term: prev.map_or(f64::NAN, |p| p),
            });
        }
        nodes *= 2;
    }
}

/// Check a nominally real value and strip its round-off imaginary part.
pub(crate) fn re_checked(v: Complex64, what: &'static str) -> Result<f64> {
    let bound = 1e-10 * (1.0 + v.norm());
    if v.im.abs() > bound {
        return Err(Error::ImaginaryResidual { what, imag: v.im.abs(), bound });
    }
    Ok(v.re)
}

/// The orthogonality weight paired with the entire functions v_nu:
///
/// (e^{2it}, e^{-2it}; q)_inf / [ (a e^{it}, a e^{-it}, b e^{it}, b e^{-it},
/// c e^{it}, c e^{-it}, q e^{it}/d, q e^{-it}/d; q)_inf
/// (alpha e^{it}, alpha e^{-it}, q e^{it}/alpha, q e^{-it}/alpha; q)_inf ].
///
/// Real and nonnegative for admissible parameters.
pub fn weight_8phi7(theta: f64, params: &QParams, tol: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::PoleProximity(format!(
            "theta = {theta} outside the open interval (0, pi)"
        )));
    }
    let base = params.base;
    let q = base.q();
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
            q * w / params.d,
            q * wi / params.d,
            params.alpha * w,
            params.alpha * wi,
            q * w / params.alpha,
            q * wi / params.alpha,
        ],
        base,
    )?;
    if den.norm() < 1e-13 {
        return Err(Error::PoleProximity(format!(
            "weight denominator {:.3e} numerically zero at theta = {theta}",
            den.norm()
        )));
    }
    let _ = tol;
    re_checked(num / den, "8phi7 weight")
}

/// The same weight in u-normalization: the (q e^{+-it}/d; q)_inf pair moves
/// to the numerator. This is the form whose reciprocal is |A(e^{it})|^2 and
/// which collapses to the Askey-Wilson weight at alpha = d.
pub fn weight_u(theta: f64, params: &QParams, tol: f64) -> Result<f64> {
    let base = params.base;
    let q = base.q();
    let w = Complex64::new(theta.cos(), theta.sin());
    let wi = w.conj();
    let pair = pinf_multi(&[q * w / params.d, q * wi / params.d], base)?;
    let vd = weight_8phi7(theta, params, tol)?;
    re_checked(vd * pair * pair, "u-normalized weight")
}

/// One theta-grid with cached weight values, reused across (mu, nu) pairs.
///
/// The infinite products dominate the cost of the orthogonality integrals,
/// so the weight (and each v_nu column) is computed once per grid.
pub struct OrthoGrid {
    pub thetas: Vec<f64>,
    pub gl_weights: Vec<f64>,
    pub weight: Vec<f64>,
}

impl OrthoGrid {
    /// Build the grid with `nodes` total quadrature nodes.
    pub fn build(params: &QParams, nodes: usize, tol: f64) -> Result<OrthoGrid> {
        let (thetas, gl_weights) = composite_nodes(nodes.clamp(PANEL_NODES, MAX_NODES));
        let mut weight = Vec::with_capacity(thetas.len());
        for &t in &thetas {
            weight.push(weight_8phi7(t, params, tol)?);
        }
        Ok(OrthoGrid { thetas, gl_weights, weight })
    }

    /// Column of v_nu values over the grid.
    pub fn v_column(&self, nu: f64, params: &QParams, tol: f64) -> Result<Vec<f64>> {
        let mut col = Vec::with_capacity(self.thetas.len());
        for &t in &self.thetas {
            let point = crate::lattice::LatticePoint::from_theta(t, params.base);
            let v = crate::u8phi7::v_nu(Complex64::new(nu, 0.0), &point, params, tol)?;
            col.push(re_checked(v, "v_nu on the contour")?);
        }
        Ok(col)
    }

    /// The weighted inner product of two cached columns.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        let terms: Vec<f64> = (0..self.thetas.len())
            .map(|i| self.gl_weights[i] * self.weight[i] * f[i] * g[i])
            .collect();
        pairwise_sum(&terms)
    }
}

/// The orthogonality integral int_0^pi v_mu v_nu w(theta) dtheta, with grid
/// doubling until two successive estimates agree to tol.
pub fn ortho_integral(mu: f64, nu: f64, params: &QParams, tol: f64) -> Result<f64> {
    let mut nodes = START_NODES * 2;
    let mut prev: Option<f64> = None;
    loop {
        let grid = OrthoGrid::build(params, nodes, tol)?;
        let vmu = grid.v_column(mu, params, tol)?;
        let vnu =
            if (mu - nu).abs() < 1e-15 { vmu.clone() } else { grid.v_column(nu, params, tol)? };
        let value = grid.inner(&vmu, &vnu);
        if let Some(p) = prev {
            if (value - p).abs() <= tol * (1.0 + value.abs()) {
                return Ok(value);
            }
        }
        prev = Some(value);
        if nodes >= MAX_NODES {
            return Err(Error::NoConvergence { max_terms: nodes, last_term: prev.unwrap() });
        }
        nodes *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QBase;

    fn base() -> QBase {
        QBase::new(0.5).unwrap()
    }

    fn p0() -> QParams {
        QParams::from_real(base(), 0.3, 0.2, 0.1, 2.2, 0.8).unwrap()
    }

    #[test]
    fn integrate_constant_gives_pi() {
        let (v, _) = integrate(|_| Ok(1.0), 1e-13, 8).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn integrate_cosine_gives_zero() {
        let (v, _) = integrate(|t| Ok(t.cos()), 1e-13, 8).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn integrate_self_consistency() {
        // Halving the tolerance changes the result by less than the
        // reported error estimate.
        let f = |t: f64| Ok((3.0 * t).sin().exp());
        let (v1, err1) = integrate(f, 1e-8, 8).unwrap();
        let (v2, _) = integrate(f, 5e-9, 8).unwrap();
        assert!((v1 - v2).abs() <= err1.max(1e-14));
    }

    #[test]
    fn weight_positive_and_symmetric_under_reflection() {
        let params = p0();
        for &theta in &[0.3, 1.2, 2.6] {
            let w = weight_8phi7(theta, &params, 1e-12).unwrap();
            assert!(w >= 0.0);
            // theta -> pi - theta with sign-flipped parameters
            let flipped = QParams::new_unchecked(
                base(),
                -params.a,
                -params.b,
                -params.c,
                -params.d,
                -params.alpha,
            );
            let w2 = weight_8phi7(std::f64::consts::PI - theta, &flipped, 1e-12).unwrap();
            assert!((w - w2).abs() <= 1e-11 * (1.0 + w.abs()), "theta = {theta}");
        }
    }

    #[test]
    fn weight_rejects_endpoints() {
        let params = p0();
        assert!(weight_8phi7(0.0, &params, 1e-12).is_err());
        assert!(weight_8phi7(std::f64::consts::PI, &params, 1e-12).is_err());
    }

    #[test]
    fn weight_u_alpha_equals_d_is_askey_wilson() {
        // With alpha = d the alpha-block cancels the q/d-block and the
        // u-weight is exactly the Askey-Wilson integrand.
        let params = QParams::new_unchecked(
            base(),
            Complex64::new(0.3, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.6, 0.0),
            Complex64::new(0.6, 0.0),
        );
        for &theta in &[0.8, 2.0] {
            let wu = weight_u(theta, &params, 1e-12).unwrap();
            let w = Complex64::new(theta.cos(), theta.sin());
            let wi = w.conj();
            let aw = pinf_multi(&[w * w, wi * wi], base()).unwrap()
                / pinf_multi(
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
                    base(),
                )
                .unwrap();
            assert!((wu - aw.re).abs() <= 1e-10 * (1.0 + aw.norm()), "theta = {theta}");
        }
    }

    #[test]
    fn ortho_integral_symmetric_in_its_degrees() {
        let params = p0();
        let a = ortho_integral(0.6, 1.9, &params, 1e-9).unwrap();
        let b = ortho_integral(1.9, 0.6, &params, 1e-9).unwrap();
        assert!((a - b).abs() <= 1e-13 * (1.0 + a.abs()));
    }

    #[test]
    fn pairwise_sum_matches_naive_on_smooth_data() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.001 - 0.05).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }
}
