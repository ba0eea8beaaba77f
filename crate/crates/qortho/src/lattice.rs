//! The q-quadratic grid x(z) = (q^z + q^{-z})/2 and the hypergeometric
//! difference-equation data attached to it: the quartic coefficient sigma,
//! the linear-in-x coefficient tau, the eigenvalue lambda_nu, Pearson weight
//! solutions, and the lattice Wronskian.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{pinf_multi, QBase};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Parameter bundle (q, a, b, c, d, alpha) of the orthogonal family.
///
/// Validated construction enforces the orthogonality-side conditions:
/// max(|a|, |b|, |c|, |q/d|) < 1, alpha and d nonzero, and reality — either
/// all of a, b, c, d, alpha real, or exactly one pair among {a, b, c} complex
/// conjugate with everything else real. Internal parameter swaps (c <-> d,
/// the q^{1/2} shift) construct unchecked bundles: those are evaluation
/// domains, not orthogonality domains.
#[derive(Debug, Clone, Copy)]
pub struct QParams {
    pub base: QBase,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub alpha: Complex64,
}

const REALITY_EPS: f64 = 1e-12;

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= REALITY_EPS * (1.0 + z.re.abs())
}

impl QParams {
    pub fn new(
        base: QBase,
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        alpha: Complex64,
    ) -> Result<Self> {
        if d.norm() == 0.0 {
            return Err(Error::Param("d must be nonzero".into()));
        }
        if alpha.norm() == 0.0 {
            return Err(Error::Param("alpha must be nonzero".into()));
        }
        let q = base.q();
        let bound = a.norm().max(b.norm()).max(c.norm()).max(q / d.norm());
        if bound >= 1.0 {
            return Err(Error::Param(format!(
                "max(|a|, |b|, |c|, |q/d|) = {bound} must be < 1"
            )));
        }
        if !is_real(d) || !is_real(alpha) {
            return Err(Error::Param("d and alpha must be real".into()));
        }
        let all_real = is_real(a) && is_real(b) && is_real(c);
        let conj_pair = |x: Complex64, y: Complex64, z: Complex64| {
            (x - y.conj()).norm() <= REALITY_EPS * (1.0 + x.norm()) && is_real(z)
        };
        if !(all_real || conj_pair(a, b, c) || conj_pair(a, c, b) || conj_pair(b, c, a)) {
            return Err(Error::Param(
                "a, b, c must be real or contain exactly one conjugate pair".into(),
            ));
        }
        Ok(QParams { base, a, b, c, d, alpha })
    }

    /// Construct without the orthogonality-side checks. Used for internal
    /// parameter swaps and shifts where only series convergence matters.
    pub fn new_unchecked(
        base: QBase,
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        alpha: Complex64,
    ) -> Self {
        QParams { base, a, b, c, d, alpha }
    }

    /// Convenience constructor from real parameters.
    pub fn from_real(base: QBase, a: f64, b: f64, c: f64, d: f64, alpha: f64) -> Result<Self> {
        QParams::new(
            base,
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
            Complex64::new(alpha, 0.0),
        )
    }

    #[inline]
    pub fn abcd(&self) -> Complex64 {
        self.a * self.b * self.c * self.d
    }

    /// The bundle with c and d interchanged (unchecked).
    pub fn swap_cd(&self) -> QParams {
        QParams { base: self.base, a: self.a, b: self.b, c: self.d, d: self.c, alpha: self.alpha }
    }

    /// The bundle with every Askey-Wilson parameter multiplied by q^{1/2}
    /// (unchecked), as appears in the difference-differentiation formula.
    pub fn shift_half(&self) -> QParams {
        let s = self.base.q().sqrt();
        QParams {
            base: self.base,
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
            alpha: self.alpha,
        }
    }

    /// True when all parameters are real (no conjugate pair).
    pub fn all_real(&self) -> bool {
        is_real(self.a) && is_real(self.b) && is_real(self.c)
    }
}

/// A point on the q-quadratic grid, carrying z, q^z and x(z) coherently.
#[derive(Debug, Clone, Copy)]
pub struct LatticePoint {
    pub z: Complex64,
    pub qz: Complex64,
    pub x: Complex64,
}

impl LatticePoint {
    /// Point on the orthogonality contour: q^z = e^{i theta}, x = cos theta.
    pub fn from_theta(theta: f64, base: QBase) -> Self {
        let qz = Complex64::new(theta.cos(), theta.sin());
        LatticePoint {
            z: Complex64::new(0.0, theta) / base.ln_q(),
            qz,
            x: Complex64::new(theta.cos(), 0.0),
        }
    }

    /// Point from a given q^z value.
    pub fn from_qz(qz: Complex64, base: QBase) -> Result<Self> {
        if qz.norm() == 0.0 {
            return Err(Error::Param("q^z must be nonzero".into()));
        }
        Ok(LatticePoint { z: qz.ln() / base.ln_q(), qz, x: 0.5 * (qz + ONE / qz) })
    }

    /// Point from a complex lattice coordinate z.
    pub fn from_z(z: Complex64, base: QBase) -> Self {
        let qz = base.powc(z);
        LatticePoint { z, qz, x: 0.5 * (qz + ONE / qz) }
    }

    /// The point z + h for a real shift h (qz scales by q^h).
    pub fn shift(&self, h: f64, base: QBase) -> LatticePoint {
        let qz = self.qz * base.powf(h);
        LatticePoint { z: self.z + h, qz, x: 0.5 * (qz + ONE / qz) }
    }

    /// The reflected point -z (qz -> 1/qz); x is unchanged.
    pub fn reflect(&self) -> LatticePoint {
        LatticePoint { z: -self.z, qz: ONE / self.qz, x: self.x }
    }
}

/// An eigenvalue lambda_nu of the difference equation, paired with its
/// degree parameter.
#[derive(Debug, Clone, Copy)]
pub struct Eigenvalue {
    pub nu: Complex64,
    pub lambda: Complex64,
}

/// lambda_nu = 4 q^{3/2} / (1-q)^2 (1 - q^{-nu})(1 - abcd q^{nu-1}).
pub fn lambda_nu(nu: Complex64, params: &QParams) -> Eigenvalue {
    let q = params.base.q();
    let k = 4.0 * q.powf(1.5) / ((1.0 - q) * (1.0 - q));
    let lambda = k * (ONE - params.base.powc(-nu)) * (ONE - params.abcd() * params.base.powc(nu - 1.0));
    Eigenvalue { nu, lambda }
}

/// Analytic derivative d lambda / d nu = 4 q^{3/2}/(1-q)^2 ln q (q^{-nu} - abcd q^{nu-1}).
pub fn dlambda_dnu(nu: Complex64, params: &QParams) -> Complex64 {
    let q = params.base.q();
    let k = 4.0 * q.powf(1.5) / ((1.0 - q) * (1.0 - q));
    k * params.base.ln_q() * (params.base.powc(-nu) - params.abcd() * params.base.powc(nu - 1.0))
}

/// sigma(z) = q^{-2z} (q^z - a)(q^z - b)(q^z - c)(q^z - d).
pub fn sigma(point: &LatticePoint, params: &QParams) -> Complex64 {
    let w = point.qz;
    (w - params.a) * (w - params.b) * (w - params.c) * (w - params.d) / (w * w)
}

/// The closed linear-in-x form of tau:
/// (2 q^{1/2}/(1-q)) (abc + abd + acd + bcd - a - b - c - d + 2(1 - abcd) x).
pub fn tau(x: Complex64, params: &QParams) -> Complex64 {
    let q = params.base.q();
    let (a, b, c, d) = (params.a, params.b, params.c, params.d);
    let e3 = a * b * c + a * b * d + a * c * d + b * c * d;
    let e1 = a + b + c + d;
    2.0 * q.sqrt() / (1.0 - q) * (e3 - e1 + 2.0 * (ONE - params.abcd()) * x)
}

/// The lattice step nabla x_1(z) = x(z + 1/2) - x(z - 1/2)
/// = (q^{1/2} - q^{-1/2})(q^z - q^{-z}) / 2.
pub fn nabla_x1(point: &LatticePoint, base: QBase) -> Complex64 {
    let q = base.q();
    0.5 * (q.sqrt() - 1.0 / q.sqrt()) * (point.qz - ONE / point.qz)
}

const RHO_POLE_EPS: f64 = 1e-13;

/// The Pearson weight solution carrying the extra parameter alpha:
///
/// rho(z) = (q^z - q^{-z})^{-1} (q^{2z}, q^{-2z}, q^{1+z}/d, q^{1-z}/d; q)_inf
///          / (alpha q^z, alpha q^{-z}, q^{1+z}/alpha, q^{1-z}/alpha,
///             a q^z, a q^{-z}, b q^z, b q^{-z}, c q^z, c q^{-z}; q)_inf.
pub fn pearson_rho(point: &LatticePoint, params: &QParams, tol: f64) -> Result<Complex64> {
    let base = params.base;
    let q = base.q();
    let w = point.qz;
    let wi = ONE / w;
    if (w - ONE).norm() < 1e-8 || (w + ONE).norm() < 1e-8 {
        return Err(Error::PoleProximity(format!("q^z = {w} too close to +-1")));
    }
    let num = pinf_multi(&[w * w, wi * wi, q * w / params.d, q * wi / params.d], base)?;
    let den = pinf_multi(
        &[
            params.alpha * w,
            params.alpha * wi,
            q * w / params.alpha,
            q * wi / params.alpha,
            params.a * w,
            params.a * wi,
            params.b * w,
            params.b * wi,
            params.c * w,
            params.c * wi,
        ],
        base,
    )?;
    if den.norm() < RHO_POLE_EPS {
        return Err(Error::PoleProximity(format!(
            "denominator product {:.3e} below {RHO_POLE_EPS:.0e}",
            den.norm()
        )));
    }
    let _ = tol;
    Ok(num / (den * (w - wi)))
}

/// The two-solution Pearson weight used for the Wronskian identity:
///
/// rho(z) = (q^{1+z}/c, q^{1-z}/c, q^{1+z}/d, q^{1-z}/d; q)_inf
///          / (a q^z, a q^{-z}, b q^z, b q^{-z}; q)_inf.
pub fn pearson_rho_sec7(point: &LatticePoint, params: &QParams, tol: f64) -> Result<Complex64> {
    let base = params.base;
    let q = base.q();
    let w = point.qz;
    let wi = ONE / w;
    let num = pinf_multi(
        &[q * w / params.c, q * wi / params.c, q * w / params.d, q * wi / params.d],
        base,
    )?;
    let den = pinf_multi(&[params.a * w, params.a * wi, params.b * w, params.b * wi], base)?;
    if den.norm() < RHO_POLE_EPS {
        return Err(Error::PoleProximity(format!(
            "denominator product {:.3e} below {RHO_POLE_EPS:.0e}",
            den.norm()
        )));
    }
    let _ = tol;
    Ok(num / den)
}

/// The lattice Wronskian
/// W(u, v)(z) = (v(z) u(z-1) - u(z) v(z-1)) / (x(z) - x(z-1)),
/// built from already-evaluated function values.
pub fn wronskian(
    u_at_z: Complex64,
    u_at_zm1: Complex64,
    v_at_z: Complex64,
    v_at_zm1: Complex64,
    x_z: Complex64,
    x_zm1: Complex64,
) -> Result<Complex64> {
    let dx = x_z - x_zm1;
    if dx.norm() < 1e-14 {
        return Err(Error::DegenerateStep(dx.norm()));
    }
    Ok((v_at_z * u_at_zm1 - u_at_z * v_at_zm1) / dx)
}

/// Ratio sigma(-z)/sigma(z+1), the right side of the first-order Pearson
/// recurrence rho(z+1)/rho(z).
pub fn pearson_ratio_rhs(point: &LatticePoint, params: &QParams) -> Complex64 {
    let zp1 = point.shift(1.0, params.base);
    sigma(&point.reflect(), params) / sigma(&zp1, params)
}
