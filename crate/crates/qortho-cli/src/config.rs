//! JSON configuration for the CLI. One document covers all subcommands;
//! command-line flags override individual fields. Every default is
//! centralized here.

use num_complex::Complex64;
use serde::Deserialize;

use qortho::lattice::QParams;
use qortho::qcore::QBase;
use qortho::u8phi7::Representation;

/// Top-level configuration document.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub params: ParamsConfig,
    /// Evaluation tolerance (default 1e-10). For `verify` this scales the
    /// pinned per-criterion tolerances instead.
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub eval: EvalConfig,
    #[serde(default)]
    pub zeros: ZerosConfig,
    #[serde(default)]
    pub wronskian: WronskianConfig,
    #[serde(default)]
    pub norm: NormConfig,
}

/// Parameter bundle (q, a, b, c, d, alpha). Defaults to the suite's
/// reference set.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub q: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub alpha: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig { q: 0.5, a: 0.3, b: 0.2, c: 0.1, d: 2.2, alpha: 0.8 }
    }
}

impl ParamsConfig {
    pub fn base(&self) -> anyhow::Result<QBase> {
        Ok(QBase::new(self.q)?)
    }

    /// Build the validated bundle; families that relax the orthogonality
    /// box (evaluation-only uses) fall back to the unchecked constructor.
    pub fn build(&self, checked: bool) -> anyhow::Result<QParams> {
        let base = self.base()?;
        if checked {
            Ok(QParams::from_real(base, self.a, self.b, self.c, self.d, self.alpha)?)
        } else {
            Ok(QParams::new_unchecked(
                base,
                Complex64::new(self.a, 0.0),
                Complex64::new(self.b, 0.0),
                Complex64::new(self.c, 0.0),
                Complex64::new(self.d, 0.0),
                Complex64::new(self.alpha, 0.0),
            ))
        }
    }
}

/// Which function family a table evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    AskeyWilson,
    U8,
    DualQhahn,
    AlSalamChihara,
    BigQhermite,
    Qhermite,
    Qbessel,
    QtrigC,
    QtrigS,
}

/// u (meromorphic) vs v (entire) output for the 8phi7 family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UOrV {
    U,
    V,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub family: Family,
    /// Degrees nu (or integer degrees for askey_wilson).
    #[serde(default)]
    pub nu_list: Vec<f64>,
    /// Contour abscissas; defaults to an 8-point grid inside (0, pi).
    #[serde(default)]
    pub theta_grid: Option<ThetaGrid>,
    #[serde(default = "default_rep")]
    pub representation: String,
    #[serde(default)]
    pub output: Option<UOrV>,
    /// Scan variable of the q-Bessel family (r) or the q-trigonometric
    /// families (omega).
    #[serde(default)]
    pub r_list: Vec<f64>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            family: Family::U8,
            nu_list: vec![0.0, 0.5, 1.0, 1.7],
            theta_grid: None,
            representation: default_rep(),
            output: None,
            r_list: Vec::new(),
        }
    }
}

fn default_rep() -> String {
    "auto".to_string()
}

pub fn parse_representation(s: &str) -> anyhow::Result<Representation> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "auto" => Representation::Auto,
        "a" | "a87" => Representation::A87,
        "b" | "b43pair" => Representation::B43Pair,
        "c" | "csym" => Representation::CSym,
        "d" | "dasym" => Representation::DAsym,
        other => anyhow::bail!("unknown representation {other:?} (auto|a87|b43pair|csym|dasym)"),
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl ThetaGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count <= 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

pub fn default_thetas() -> Vec<f64> {
    ThetaGrid { start: 0.3, stop: std::f64::consts::PI - 0.3, count: 8 }.points()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZerosConfig {
    #[serde(default = "default_n_zeros")]
    pub n_zeros: usize,
    #[serde(default = "default_scan_step")]
    pub scan_step: f64,
    /// Test-point base beta in (q, 1); defaults to sqrt(q).
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default = "default_true")]
    pub interlacing: bool,
}

impl Default for ZerosConfig {
    fn default() -> Self {
        ZerosConfig {
            n_zeros: default_n_zeros(),
            scan_step: default_scan_step(),
            beta: None,
            interlacing: true,
        }
    }
}

fn default_n_zeros() -> usize {
    6
}

fn default_scan_step() -> f64 {
    0.05
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WronskianConfig {
    #[serde(default = "default_wronskian_nus")]
    pub nu_list: Vec<f64>,
    #[serde(default)]
    pub theta_list: Vec<f64>,
    /// Parameter bundle for the two-solution identity; defaults keep c and
    /// d away from the q b/c = q^k degeneration the global reference set
    /// sits on.
    #[serde(default = "default_wronskian_params")]
    pub params: ParamsConfig,
}

impl Default for WronskianConfig {
    fn default() -> Self {
        WronskianConfig {
            nu_list: default_wronskian_nus(),
            theta_list: Vec::new(),
            params: default_wronskian_params(),
        }
    }
}

fn default_wronskian_params() -> ParamsConfig {
    ParamsConfig { q: 0.5, a: 0.3, b: 0.2, c: 0.15, d: 2.5, alpha: 0.8 }
}

fn default_wronskian_nus() -> Vec<f64> {
    vec![0.5, 1.5, 2.5, 3.5]
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    /// Degrees to evaluate; empty locates the first two boundary zeros
    /// (the boundary-data route equals the norm only at zeros).
    #[serde(default)]
    pub nu_list: Vec<f64>,
    /// Central-difference step of the boundary-data route.
    #[serde(default = "default_dnu")]
    pub dnu: f64,
    /// Also run the quadrature cross-check per degree.
    #[serde(default = "default_true")]
    pub quadrature: bool,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { nu_list: Vec::new(), dnu: default_dnu(), quadrature: true }
    }
}

fn default_dnu() -> f64 {
    1e-4
}
