//! The end-to-end verification suite: twelve numbered criteria, each an
//! oracle- or property-based check of a closed form against an independent
//! route (quadrature, asymptotics, zero counts). The acceptance tests and
//! the CLI `verify` subcommand both drive [`run_criterion`]; every
//! tolerance is pinned here.
//!
//! Criterion 12 is expected to fail: the product form it tests is
//! internally inconsistent with the integral it annotates (an
//! omega-dependent factor, confirmed by high-precision forensics); the
//! outcome carries the measured ratios so the defect stays visible.

use num_complex::Complex64;

use crate::aw;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, QParams};
use crate::norms;
use crate::qcore::{pinf_multi, w_series, QBase};
use crate::quad::{self, pairwise_sum};
use crate::special;
use crate::u8phi7::{self, Representation};
use crate::zerofind;

/// Outcome of one criterion run.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    /// The pinned tolerance (after any scale override).
    pub tolerance: f64,
    /// Worst measured residual / deviation across the criterion's checks.
    pub worst: f64,
    pub passed: bool,
    /// One line per individual check.
    pub details: Vec<String>,
    /// Set when the criterion documents a known defect of its source
    /// relation rather than of this implementation.
    pub note: Option<String>,
    /// Wall-clock seconds.
    pub seconds: f64,
}

impl CriterionOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:2} {:28} {}  worst = {:9.3e}  tol = {:.1e}  ({:.2}s)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.worst,
            self.tolerance,
            self.seconds
        )
    }
}

/// The reference parameter bundle used throughout the suite.
pub fn reference_params() -> QParams {
    QParams::from_real(QBase::new(0.5).unwrap(), 0.3, 0.2, 0.1, 2.2, 0.8).unwrap()
}

/// Criterion names addressable by the CLI `--only` filter.
pub const CRITERION_NAMES: [&str; 12] = [
    "aw_orthogonality",
    "polynomial_reduction",
    "representation_equivalence",
    "phi65_closed_form",
    "main_identity",
    "orthogonality_at_zeros",
    "wronskian",
    "zero_asymptotics",
    "interlacing",
    "jensen_bounds",
    "special_ladder",
    "qtrig_diagonal",
];

struct Check {
    worst: f64,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { worst: 0.0, details: Vec::new() }
    }

    fn record(&mut self, label: impl Into<String>, value: f64) {
        self.worst = self.worst.max(value);
        self.details.push(format!("{}: {:.3e}", label.into(), value));
    }

    /// Record a condition that must hold; a violated condition saturates
    /// the worst-residual at infinity.
    fn require(&mut self, label: impl Into<String>, ok: bool) {
        if !ok {
            self.worst = f64::INFINITY;
        }
        self.details.push(format!("{}: {}", label.into(), if ok { "ok" } else { "VIOLATED" }));
    }
}

/// Tiny deterministic generator for the randomized draws so runs are
/// reproducible without a dependency.
struct Lcg(u64);

impl Lcg {
    fn next_unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64) / ((1u64 << 53) as f64)
    }
}

const C: fn(f64) -> Complex64 = |x| Complex64::new(x, 0.0);

/// Gram matrix of the Askey-Wilson polynomials 0..=n_max under their weight
/// on a fixed composite grid.
fn aw_gram(params: &QParams, n_max: u32, nodes: usize) -> Result<Vec<Vec<f64>>> {
    let (thetas, wts) = quad::composite_nodes(nodes);
    let mut weight = Vec::with_capacity(thetas.len());
    for &t in &thetas {
        weight.push(aw::aw_weight(t, params, 1e-14)?);
    }
    let mut polys = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let col: Result<Vec<f64>> = thetas.iter().map(|&t| aw::aw_poly(n, t.cos(), params)).collect();
        polys.push(col?);
    }
    let dim = n_max as usize + 1;
    let mut gram = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in 0..=i {
            let terms: Vec<f64> = (0..thetas.len())
                .map(|k| wts[k] * weight[k] * polys[i][k] * polys[j][k])
                .collect();
            let v = pairwise_sum(&terms);
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    Ok(gram)
}

fn criterion_aw_orthogonality(tol_scale: f64, check: &mut Check) -> Result<f64> {
    // The reference bundle's d = 2.2 puts a discrete mass into the
    // Askey-Wilson measure; the admissible anchor uses the module's
    // exemplar d = 0.1 with the reference q, a, b, c.
    let base = QBase::new(0.5).unwrap();
    let params = QParams::new_unchecked(base, C(0.3), C(0.2), C(0.1), C(0.1), C(0.8));
    let tol = 1e-8 * tol_scale;
    let n_max = 6u32;
    let coarse = aw_gram(&params, n_max, 512)?;
    let fine = aw_gram(&params, n_max, 1024)?;
    for n in 0..=n_max as usize {
        for m in 0..=n {
            let quadrature = fine[n][m];
            check.require(
                format!("quadrature converged at ({n},{m})"),
                (coarse[n][m] - quadrature).abs() <= 0.2 * tol * (1.0 + quadrature.abs()),
            );
            let closed = aw::aw_norm(n as u32, m as u32, &params)?;
            let scale = (fine[n][n] * fine[m][m]).sqrt();
            let deviation = (quadrature - closed).abs() / if n == m { closed } else { scale };
            check.record(format!("({n},{m})"), deviation);
        }
    }
    Ok(tol)
}

fn criterion_polynomial_reduction(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let params = reference_params();
    let base = params.base;
    let q = base.q();
    let tol = 1e-10 * tol_scale;
    for n in 0..=6u32 {
        let factor_sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let poch = crate::qcore::qpoch_multi(
            &[params.a * params.b, params.a * params.c, params.b * params.c],
            base,
            crate::qcore::PochOrder::Finite(n),
            1e-15,
        )?;
        let dpow = params.d.norm().powi(n as i32);
        let scale = factor_sign * q.powi(-((n * n.saturating_sub(1)) as i32) / 2) / (poch.re * dpow);
        for k in 0..10 {
            let theta = 0.15 + (std::f64::consts::PI - 0.3) * k as f64 / 9.0;
            let point = LatticePoint::from_theta(theta, base);
            let u = u8phi7::u_nu(C(n as f64), &point, &params, Representation::Auto, 1e-13)?;
            let p = aw::aw_poly(n, theta.cos(), &params)?;
            let expect = scale * p;
            let deviation = (u.re - expect).abs() / (1.0 + expect.abs());
            check.record(format!("n = {n}, theta = {theta:.3}"), deviation);
        }
    }
    Ok(tol)
}

fn criterion_representation_equivalence(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let tol = 1e-8 * tol_scale;
    let bundles = [
        reference_params(),
        QParams::from_real(QBase::new(0.6).unwrap(), 0.4, 0.25, 0.15, 3.0, 0.85)?,
        QParams::from_real(QBase::new(0.4).unwrap(), 0.25, 0.2, 0.3, 1.8, 0.7)?,
    ];
    let reps = [
        Representation::A87,
        Representation::B43Pair,
        Representation::CSym,
        Representation::DAsym,
    ];
    for (bi, params) in bundles.iter().enumerate() {
        for &nu in &[0.5, 1.7, 3.3] {
            for k in 1..=5 {
                let theta = 0.12 + (std::f64::consts::PI - 0.24) * k as f64 / 6.0;
                let point = LatticePoint::from_theta(theta, params.base);
                let mut values = Vec::new();
                for rep in reps {
                    if let Ok(u) = u8phi7::u_nu(C(nu), &point, params, rep, 0.1 * tol) {
                        values.push((rep, u));
                    }
                }
                check.require(
                    format!("bundle {bi}, nu {nu}, theta {theta:.2}: >= 2 admissible"),
                    values.len() >= 2,
                );
                for i in 0..values.len() {
                    for j in i + 1..values.len() {
                        let (r1, v1) = values[i];
                        let (r2, v2) = values[j];
                        let dev = (v1 - v2).norm() / (1.0 + v1.norm());
                        check.record(
                            format!(
                                "bundle {bi}, nu {nu}, theta {theta:.2}: {} vs {}",
                                r1.name(),
                                r2.name()
                            ),
                            dev,
                        );
                    }
                }
            }
        }
    }
    Ok(tol)
}

fn criterion_phi65_closed_form(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let tol = 1e-12 * tol_scale;
    let base = QBase::new(0.5).unwrap();
    let (a, b, cc, alpha) = (C(0.2), C(0.3), C(0.1), C(0.8));
    let q = C(0.5);
    let head = a * b * cc / (q * alpha);
    let extras = [a / alpha, b / alpha, cc / alpha];
    let direct = w_series(head, &extras, base, alpha * alpha, 1e-15)?.value;
    let product = pinf_multi(&[alpha * a, alpha * b, alpha * cc, a * b * cc / alpha], base)?
        / pinf_multi(&[a * b, a * cc, b * cc, alpha * alpha], base)?;
    check.record("6W5 sum / product - 1", (direct / product - C(1.0)).norm());
    Ok(tol)
}

fn criterion_main_identity(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let params = reference_params();
    let tol = 1e-6 * tol_scale;
    for &(mu, nu) in &[(0.5, 1.7), (1.3, 2.6), (0.7, 3.1), (2.2, 4.4), (1.0, 2.0)] {
        let r = norms::main_identity_residual(mu, nu, &params, 1e-9)?;
        check.record(format!("(mu, nu) = ({mu}, {nu})"), r);
    }
    Ok(tol)
}

fn criterion_orthogonality_at_zeros(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let params = reference_params();
    let tol = 1e-6 * tol_scale;
    let zeros = zerofind::find_zeros(&params, 4, 0.05, 1e-12)?;
    let nus: Vec<f64> = zeros.iter().map(|z| z.nu).collect();

    let gram_at = |nodes: usize| -> Result<Vec<Vec<f64>>> {
        let grid = quad::OrthoGrid::build(&params, nodes, 1e-13)?;
        let cols: Result<Vec<Vec<f64>>> =
            nus.iter().map(|&nu| grid.v_column(nu, &params, 1e-13)).collect();
        let cols = cols?;
        Ok((0..4)
            .map(|i| (0..4).map(|j| grid.inner(&cols[i], &cols[j])).collect())
            .collect())
    };
    let coarse = gram_at(1024)?;
    let gram = gram_at(2048)?;
    for i in 0..4 {
        check.require(
            format!("diagonal {i} quadrature converged"),
            (coarse[i][i] - gram[i][i]).abs() <= 0.1 * tol * gram[i][i].abs(),
        );
    }

    for i in 0..4 {
        for j in 0..i {
            let dev = gram[i][j].abs() / (gram[i][i] * gram[j][j]).sqrt();
            check.record(format!("off-diagonal ({i},{j})"), dev);
        }
    }
    for (i, &nu) in nus.iter().enumerate() {
        let closed = norms::norm_sq_closed(C(nu), &params, 1e-13)?;
        check.record(
            format!("diagonal {i} vs closed form"),
            (gram[i][i] - closed).abs() / closed.abs(),
        );
    }
    // The boundary-data route carries a differencing error; its tolerance
    // is one decade looser.
    for (i, &nu) in nus.iter().enumerate() {
        let rhs = norms::norm_sq_rhs(nu, &params, 1e-4, 1e-13)?;
        check.record(
            format!("diagonal {i} vs boundary route (x 0.1)"),
            0.1 * (gram[i][i] - rhs).abs() / rhs.abs(),
        );
        check.require(format!("diagonal {i} positive"), rhs > 0.0 && gram[i][i] > 0.0);
    }
    Ok(tol)
}

fn criterion_wronskian(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let base = QBase::new(0.5).unwrap();
    let params = QParams::from_real(base, 0.3, 0.2, 0.15, 2.5, 0.8)?;
    let tol = 1e-8 * tol_scale;
    let mut rng = Lcg(0x8_BADF00D);
    for k in 0..20 {
        let nu = 0.2 + 4.6 * rng.next_unit();
        let theta = 0.15 + (std::f64::consts::PI - 0.3) * rng.next_unit();
        let point = LatticePoint::from_theta(theta, base);
        let r = norms::wronskian_identity_residual(C(nu), &point, &params, 1e-13)?;
        check.record(format!("draw {k}: nu = {nu:.4}, theta = {theta:.4}"), r);
    }
    Ok(tol)
}

fn criterion_zero_asymptotics(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let params = reference_params();
    let tol = 0.02 * tol_scale;
    let zeros = zerofind::find_zeros(&params, 12, 0.05, 1e-12)?;
    let mut prev = f64::INFINITY;
    for r in zeros.iter().skip(5) {
        let dev = (r.nu - r.predicted).abs();
        check.require(
            format!("|nu_{} - predicted| = {dev:.3e} decreasing", r.index),
            dev < prev,
        );
        prev = dev;
    }
    check.record("deviation at n = 12", (zeros[11].nu - zeros[11].predicted).abs());
    Ok(tol)
}

fn criterion_interlacing(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let params = reference_params();
    let tol = tol_scale; // structural criterion; tolerance is vacuous
    let report = zerofind::interlacing_report(&params, 6, 1e-12)?;
    check.require("strict interlacing nu_k < mu_{k+1} < nu_{k+1}", report.strict_interlacing);
    check.require("at least 5 interlaced pairs", report.pairs_checked >= 5);
    check.require("g-sign alternates along f-zeros", report.g_sign_alternates);
    check.details.push(format!(
        "mu_1 < nu_1 observed: {:?} (reported, not asserted)",
        report.mu1_below_nu1
    ));
    Ok(tol)
}

fn criterion_jensen_bounds(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let params = reference_params();
    let tol = tol_scale;
    let beta = 0.5f64.sqrt();
    let zeros = zerofind::find_zeros(&params, 12, 0.05, 1e-12)?;
    let mut last_ratio = 0.0;
    for n in 6..=10u32 {
        let rep = zerofind::jensen_count_check(&params, beta, n, &zeros)?;
        check.require(
            format!(
                "n = {n}: count {} inside ({:.4}, {:.4})",
                rep.count, rep.lower, rep.upper
            ),
            rep.within,
        );
        check.require(format!("n = {n}: unit-width bounds"), (rep.upper - rep.lower - 1.0).abs() < 1e-12);
        last_ratio = rep.count as f64 / n as f64;
    }
    check.details.push(format!("count/n at n = 10: {last_ratio:.3} (trend to 1)"));
    Ok(tol)
}

fn criterion_special_ladder(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let base = QBase::new(0.5).unwrap();
    let tol = 1e-3 * tol_scale;
    let theta = 0.9;
    let point = LatticePoint::from_theta(theta, base);
    let (a, b, cc) = (C(0.3), C(0.2), C(2.2));

    // Continuity probes: parent at 1e-6 against the child formula.
    let parent = QParams::new_unchecked(base, a, b, C(1e-6), cc, C(0.8));
    for &nu in &[0.7, 1.4] {
        let pval = u8phi7::u_nu(C(nu), &point, &parent, Representation::Auto, 1e-13)?;
        let child = special::dual_qhahn_u(C(nu), &point, a, b, cc, base, 1e-13)?;
        check.record(
            format!("8phi7 -> dual q-Hahn at nu = {nu}"),
            (pval - child).norm() / (1.0 + child.norm()),
        );
    }
    for &nu in &[0.8, 1.9] {
        let pval = special::dual_qhahn_u(C(nu), &point, a, C(1e-6), cc, base, 1e-13)?;
        let child = special::al_salam_chihara_u(C(nu), &point, a, cc, base, 1e-13)?;
        check.record(
            format!("dual q-Hahn -> Al-Salam-Chihara at nu = {nu}"),
            (pval - child).norm() / (1.0 + child.norm()),
        );
    }
    for &nu in &[0.9, 1.7] {
        let pval = special::al_salam_chihara_u(C(nu), &point, C(1e-6), cc, base, 1e-13)?;
        let child = special::big_qhermite_u(C(nu), &point, cc, base, 1e-13)?;
        check.record(
            format!("Al-Salam-Chihara -> big q-Hermite at nu = {nu}"),
            (pval - child).norm() / (1.0 + child.norm()),
        );
    }

    // nu = 0 collapses to 1 for every child (scaled into the 1e-3 gate:
    // the raw residuals must sit at 1e-9).
    let ones = [
        ("dual q-Hahn", special::dual_qhahn_u(C(0.0), &point, a, b, cc, base, 1e-13)?),
        ("Al-Salam-Chihara", special::al_salam_chihara_u(C(0.0), &point, a, cc, base, 1e-13)?),
        ("big q-Hermite", special::big_qhermite_u(C(0.0), &point, cc, base, 1e-13)?),
        ("q-Hermite", special::qhermite_h(C(0.0), &point, base, 1e-13)?),
    ];
    for (name, v) in ones {
        let dev = (v - C(1.0)).norm();
        check.require(format!("{name}: u_0 = 1 at 1e-9 ({dev:.2e})"), dev <= 1e-9 * tol_scale);
    }

    // Integer-degree proportionality against the polynomial families:
    // the ratio over three contour points must be constant to 1e-8.
    let ratio_constancy = |vals: [f64; 3]| -> f64 {
        let m = vals[0];
        ((vals[1] - m).abs() / m.abs()).max((vals[2] - m).abs() / m.abs())
    };
    let thetas = [0.7, 1.4, 2.1];

    let dq_poly = QParams::new_unchecked(base, a, b, cc, C(0.0), C(0.8));
    let mut r = [0.0; 3];
    for (i, &t) in thetas.iter().enumerate() {
        let p = LatticePoint::from_theta(t, base);
        r[i] = special::dual_qhahn_u(C(3.0), &p, a, b, cc, base, 1e-13)?.re
            / aw::aw_poly(3, t.cos(), &dq_poly)?;
    }
    check.require(
        format!("dual q-Hahn integer ratio constancy ({:.2e})", ratio_constancy(r)),
        ratio_constancy(r) <= 1e-8 * tol_scale,
    );

    let asc_poly = QParams::new_unchecked(base, a, cc, C(0.0), C(0.0), C(0.8));
    for (i, &t) in thetas.iter().enumerate() {
        let p = LatticePoint::from_theta(t, base);
        r[i] = special::al_salam_chihara_u(C(2.0), &p, a, cc, base, 1e-13)?.re
            / aw::aw_poly(2, t.cos(), &asc_poly)?;
    }
    check.require(
        format!("Al-Salam-Chihara integer ratio constancy ({:.2e})", ratio_constancy(r)),
        ratio_constancy(r) <= 1e-8 * tol_scale,
    );

    let bqh_poly = QParams::new_unchecked(base, cc, C(0.0), C(0.0), C(0.0), C(0.8));
    for (i, &t) in thetas.iter().enumerate() {
        let p = LatticePoint::from_theta(t, base);
        r[i] = special::big_qhermite_u(C(2.0), &p, cc, base, 1e-13)?.re
            / aw::aw_poly(2, t.cos(), &bqh_poly)?;
    }
    check.require(
        format!("big q-Hermite integer ratio constancy ({:.2e})", ratio_constancy(r)),
        ratio_constancy(r) <= 1e-8 * tol_scale,
    );

    // q-Hermite: even degrees (the extension is the even-sector solution).
    for n in [2u32, 4] {
        for (i, &t) in thetas.iter().enumerate() {
            let p = LatticePoint::from_theta(t, base);
            r[i] = special::qhermite_h(C(n as f64), &p, base, 1e-13)?.re
                / special::qhermite_poly(n, t, base);
        }
        check.require(
            format!("q-Hermite degree {n} ratio constancy ({:.2e})", ratio_constancy(r)),
            ratio_constancy(r) <= 1e-8 * tol_scale,
        );
    }
    Ok(tol)
}

fn criterion_qtrig_diagonal(tol_scale: f64, check: &mut Check) -> Result<f64> {
    let base = QBase::new(0.5).unwrap();
    let tol = 1e-6 * tol_scale;
    let eta = special::qtrig_eta(base);
    let f = |om: f64| special::qtrig_s(eta, om, base, 1e-13);
    let brackets = zerofind::scan_brackets(f, 0.05, 6.0, 0.02)?;
    if brackets.len() < 2 {
        return Err(Error::ScanExhausted { found: brackets.len(), requested: 2, cap: 6.0 });
    }
    for (k, &br) in brackets.iter().take(2).enumerate() {
        let omega = zerofind::bisect(f, br, 1e-11)?;
        let (quadrature, _) = quad::integrate(
            |t| {
                Ok(special::qtrig_c(t.cos(), omega, base, 1e-12)?
                    * special::qtrig_c(t.cos(), omega, base, 1e-12)?
                    * special::qtrig_weight(t, base, 1e-12)?)
            },
            1e-9,
            8,
        )?;
        let closed = special::qtrig_diag_closed(omega, base, 1e-13)?;
        check.record(
            format!("root {} (omega = {omega:.6}): closed {closed:.6} vs quadrature {quadrature:.6}", k + 1),
            (closed - quadrature).abs() / quadrature.abs(),
        );
    }
    Ok(tol)
}

/// Run one criterion (1-based id) with all its tolerances multiplied by
/// `tol_scale`.
pub fn run_criterion(id: u32, tol_scale: f64) -> Result<CriterionOutcome> {
    let start = std::time::Instant::now();
    let mut check = Check::new();
    if !(1..=12).contains(&id) {
        return Err(Error::Param(format!("criterion id {id} outside 1..=12")));
    }
    let name = CRITERION_NAMES[id as usize - 1];
    let tolerance = match id {
        1 => criterion_aw_orthogonality(tol_scale, &mut check)?,
        2 => criterion_polynomial_reduction(tol_scale, &mut check)?,
        3 => criterion_representation_equivalence(tol_scale, &mut check)?,
        4 => criterion_phi65_closed_form(tol_scale, &mut check)?,
        5 => criterion_main_identity(tol_scale, &mut check)?,
        6 => criterion_orthogonality_at_zeros(tol_scale, &mut check)?,
        7 => criterion_wronskian(tol_scale, &mut check)?,
        8 => criterion_zero_asymptotics(tol_scale, &mut check)?,
        9 => criterion_interlacing(tol_scale, &mut check)?,
        10 => criterion_jensen_bounds(tol_scale, &mut check)?,
        11 => criterion_special_ladder(tol_scale, &mut check)?,
        12 => criterion_qtrig_diagonal(tol_scale, &mut check)?,
        _ => unreachable!(),
    };
    let note = (id == 12).then(|| {
        "known defect of the closed product form itself (omega-dependent factor, \
         verified at 40-digit precision); the quadrature side is sound: the C/S \
         orthogonality holds and the diagonal integrals obey the boundary-data \
         Sturm-Liouville ratio law (see the q-trigonometric tests)"
            .to_string()
    });
    Ok(CriterionOutcome {
        id,
        name,
        tolerance,
        worst: check.worst,
        passed: check.worst <= tolerance,
        details: check.details,
        note,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Run every criterion (or the ones matching `only`). Individual execution
/// errors become failed outcomes rather than aborting the suite.
pub fn run_all(tol_scale: f64, only: Option<&str>) -> Vec<CriterionOutcome> {
    let mut outcomes = Vec::new();
    for id in 1..=12u32 {
        let name = CRITERION_NAMES[id as usize - 1];
        if let Some(filter) = only {
            if !name.contains(filter) {
                continue;
            }
        }
        let outcome = run_criterion(id, tol_scale).unwrap_or_else(|e| CriterionOutcome {
            id,
            name,
            tolerance: f64::NAN,
            worst: f64::INFINITY,
            passed: false,
            details: vec![format!("execution error: {e}")],
            note: None,
            seconds: 0.0,
        });
        outcomes.push(outcome);
    }
    outcomes
}
