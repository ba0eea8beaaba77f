//! Locating the real nu-zeros of the boundary function f(nu) =
//! v_nu(eta; a, b, c; d): sign-change scan plus bisection, the interlacing
//! of f- and g-zeros, and Jensen-style zero counts in disks of the
//! zeta = q^{-nu} + abcd q^{nu-1} plane.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::QParams;
use crate::qcore::QBase;
use crate::u8phi7::{boundary_f, boundary_g};

/// A located zero of the boundary function.
#[derive(Debug, Clone, Copy)]
pub struct ZeroRecord {
    /// 1-based index in ascending order.
    pub index: u32,
    /// The located zero.
    pub nu: f64,
    /// Final bisection bracket (sign change holds across it).
    pub bracket: (f64, f64),
    /// |f(nu)| relative to the boundary-function scale across the original
    /// scan bracket.
    pub f_residual: f64,
    /// Asymptotic prediction index - log(alpha d)/log q.
    pub predicted: f64,
    /// Sign of the companion g at the zero.
    pub g_sign: i8,
}

/// Interlacing summary of f-zeros (nu) and g-zeros (mu).
#[derive(Debug, Clone)]
pub struct InterlacingReport {
    pub f_zeros: Vec<f64>,
    pub g_zeros: Vec<f64>,
    /// nu_k < mu_{k+1} < nu_{k+1} for every checked k >= 1.
    pub strict_interlacing: bool,
    /// Number of (nu_k, mu_{k+1}, nu_{k+1}) triples checked.
    pub pairs_checked: usize,
    /// Whether mu_1 < nu_1 was observed. Reported, never asserted: the
    /// ordering of the first pair is an open conjecture.
    pub mu1_below_nu1: Option<bool>,
    /// Sign of g alternates along successive f-zeros.
    pub g_sign_alternates: bool,
}

/// One Jensen disk count against its unit-width bounds.
#[derive(Debug, Clone, Copy)]
pub struct JensenReport {
    pub n: u32,
    pub radius: f64,
    pub count: usize,
    pub lower: f64,
    pub upper: f64,
    pub within: bool,
}

/// Test points omega_n = omega_0 + n with q^{omega_0} = beta, q < beta < 1.
pub fn test_points(beta: f64, n_max: u32, base: QBase) -> Result<Vec<f64>> {
    let q = base.q();
    if !(beta > q && beta < 1.0) {
        return Err(Error::BadBeta { beta, q });
    }
    let omega0 = beta.ln() / q.ln();
    Ok((0..=n_max).map(|n| omega0 + n as f64).collect())
}

/// All sign-change brackets of f on the grid lo, lo+step, ..., up to hi.
pub fn scan_brackets<F>(mut f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(step > 0.0) {
        return Err(Error::Param(format!("scan step {step} must be positive")));
    }
    let mut brackets = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0)?;
    let mut x = lo + step;
    while x0 < hi {
        let f1 = f(x)?;
        if f0 == 0.0 {
            brackets.push((x0 - 0.5 * step, x0 + 0.5 * step));
        } else if f0 * f1 < 0.0 {
            brackets.push((x0, x));
        }
        x0 = x;
        f0 = f1;
        x += step;
    }
    Ok(brackets)
}

/// Bisection on a sign-change bracket down to |hi - lo| <= tol.
pub fn bisect<F>(mut f: F, bracket: (f64, f64), tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = bracket;
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(Error::Param(format!("no sign change across [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Whether the parameters sit in the box q^{1/2} < alpha < 1, alpha d > q,
/// alpha abc < q (with the bundle's own max(|a|,|b|,|c|,|q/d|) < 1), where
/// the boundary-function zeros are guaranteed real and simple. Outside it
/// [`find_zeros`] still scans, but the records are best-effort.
pub fn in_guaranteed_box(params: &QParams) -> bool {
    let q = params.base.q();
    let al = params.alpha.norm();
    let ad = (params.alpha * params.d).norm();
    let aabc = (params.alpha * params.a * params.b * params.c).norm();
    params.all_real() && al > q.sqrt() && al < 1.0 && ad > q && aabc < q
}

/// Scan cap guaranteeing coverage of the first `n_zeros` zeros under the
/// nu_n = n - log(alpha d)/log q law.
fn scan_cap(n_zeros: usize, params: &QParams) -> f64 {
    let offset = ((params.alpha * params.d).norm().ln() / params.base.q().ln()).abs();
    n_zeros as f64 + 5.0 + offset
}

/// Locate the first `n_zeros` positive zeros of the boundary function.
///
/// A sign-change scan with the given step feeds bisection; each record
/// carries its bracket, relative residual, asymptotic prediction and the
/// sign of g there. Inside [`in_guaranteed_box`] the zeros are known real
/// and simple; elsewhere the scan is best-effort.
pub fn find_zeros(
    params: &QParams,
    n_zeros: usize,
    scan_step: f64,
    tol: f64,
) -> Result<Vec<ZeroRecord>> {
    if n_zeros == 0 {
        return Ok(Vec::new());
    }
    let cap = scan_cap(n_zeros, params);
    let feval = |nu: f64| Ok(boundary_f(nu, params, 1e-13)?.value);
    let brackets = scan_brackets(feval, 1e-6, cap, scan_step)?;
    if brackets.len() < n_zeros {
        return Err(Error::ScanExhausted { found: brackets.len(), requested: n_zeros, cap });
    }
    let offset = -((params.alpha * params.d).norm().ln() / params.base.q().ln());
    let mut records = Vec::with_capacity(n_zeros);
    for (k, &(lo0, hi0)) in brackets.iter().take(n_zeros).enumerate() {
        let nu = bisect(feval, (lo0, hi0), tol)?;
        let scale = feval(lo0)?.abs().max(feval(hi0)?.abs());
        let fval = feval(nu)?.abs();
        let g = boundary_g(nu, params, 1e-13)?;
        records.push(ZeroRecord {
            index: (k + 1) as u32,
            nu,
            bracket: (lo0, hi0),
            f_residual: if scale > 0.0 { fval / scale } else { fval },
            predicted: (k + 1) as f64 + offset,
            g_sign: if g >= 0.0 { 1 } else { -1 },
        });
    }
    Ok(records)
}

/// Locate g-zeros alongside the f-zeros and report the interlacing
/// structure of the two sets.
pub fn interlacing_report(
    params: &QParams,
    n_zeros: usize,
    tol: f64,
) -> Result<InterlacingReport> {
    if n_zeros == 0 {
        return Ok(InterlacingReport {
            f_zeros: Vec::new(),
            g_zeros: Vec::new(),
            strict_interlacing: true,
            pairs_checked: 0,
            mu1_below_nu1: None,
            g_sign_alternates: true,
        });
    }
    let f_records = find_zeros(params, n_zeros, 0.05, tol)?;
    let f_zeros: Vec<f64> = f_records.iter().map(|r| r.nu).collect();
    let cap = f_zeros.last().unwrap() + 1.0;
    let geval = |nu: f64| boundary_g(nu, params, 1e-13);
    let g_brackets = scan_brackets(geval, 1e-6, cap, 0.05)?;
    let mut g_zeros = Vec::with_capacity(g_brackets.len());
    for &br in &g_brackets {
        g_zeros.push(bisect(geval, br, tol)?);
    }

    // nu_k < mu_{k+1} < nu_{k+1}: mu index offset depends on whether a g-zero
    // precedes nu_1.
    let mu1_below_nu1 = g_zeros.first().map(|&mu1| mu1 < f_zeros[0]);
    let first_inner = g_zeros.iter().position(|&mu| mu > f_zeros[0]);
    let mut strict = true;
    let mut pairs = 0usize;
    if let Some(start) = first_inner {
        for k in 0..f_zeros.len() - 1 {
            if start + k >= g_zeros.len() {
                strict = false;
                break;
            }
            let mu = g_zeros[start + k];
            if !(f_zeros[k] < mu && mu < f_zeros[k + 1]) {
                strict = false;
                break;
            }
            pairs += 1;
        }
    } else if f_zeros.len() > 1 {
        strict = false;
    }

    let mut alternates = true;
    for w in f_records.windows(2) {
        if w[0].g_sign * w[1].g_sign != -1 {
            alternates = false;
        }
    }

    Ok(InterlacingReport {
        f_zeros,
        g_zeros,
        strict_interlacing: strict,
        pairs_checked: pairs,
        mu1_below_nu1,
        g_sign_alternates: alternates,
    })
}

/// The zeta-plane image of a degree: zeta(nu) = q^{-nu} + abcd q^{nu-1}.
pub fn zeta_image(nu: f64, params: &QParams) -> Complex64 {
    let base = params.base;
    base.powc(Complex64::new(-nu, 0.0))
        + params.abcd() * base.powc(Complex64::new(nu - 1.0, 0.0))
}

/// Count located zeros inside the Jensen disk |zeta| < R_n with
/// R_n = q^{-n}/beta + beta abcd q^{n-1}, and compare against the
/// unit-width bounds n - 1 - log gamma / log q^{-1} < count < n - ...,
/// gamma = |alpha beta d|.
pub fn jensen_count_check(
    params: &QParams,
    beta: f64,
    n: u32,
    zeros: &[ZeroRecord],
) -> Result<JensenReport> {
    let q = params.base.q();
    if !(beta > q && beta < 1.0) {
        return Err(Error::BadBeta { beta, q });
    }
    if zeros.len() <= n as usize {
        return Err(Error::InsufficientZeros { needed: n as usize + 1, have: zeros.len() });
    }
    let radius = q.powi(-(n as i32)) / beta + beta * params.abcd().norm() * q.powi(n as i32 - 1);
    // Monotonicity of |zeta| along the located zeros lets the first
    // out-of-disk zero certify the count.
    let last = zeros.last().unwrap();
    if zeta_image(last.nu, params).norm() < radius {
        return Err(Error::InsufficientZeros { needed: zeros.len() + 1, have: zeros.len() });
    }
    let count = zeros.iter().filter(|r| zeta_image(r.nu, params).norm() < radius).count();
    let gamma = (params.alpha * params.d).norm() * beta;
    let shift = gamma.ln() / (1.0 / q).ln();
    let lower = n as f64 - 1.0 - shift;
    let upper = n as f64 - shift;
    Ok(JensenReport {
        n,
        radius,
        count,
        lower,
        upper,
        within: lower < count as f64 && (count as f64) < upper,
    })
}
