//! Command-line front end: evaluation tables, zero reports, Wronskian and
//! norm checks, and the full verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/config error,
//! 3 numerical error (convergence, poles, inadmissible representations).

mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use config::{default_thetas, parse_representation, Config, Family, UOrV};
use output::{Cell, Table};
use qortho::lattice::LatticePoint;
use qortho::u8phi7;
use qortho::zerofind;
use qortho::Error as QError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qortho", version, about = "Orthogonal 8phi7 function tables and verification")]
struct Cli {
    /// JSON configuration document (defaults baked in when omitted).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Evaluation tolerance; for `verify`, a scale on the pinned
    /// per-criterion tolerances (values < 1 tighten them).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Table format: csv for tables, json for reports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Upper bound on worker threads. Evaluation is sequential and
    /// deterministic; the flag is accepted so callers can pin environments.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate a function family over degrees and contour points.
    Eval,
    /// Locate boundary-function zeros; report predictions and interlacing.
    Zeros,
    /// Run the verification suite and emit a pass/fail JSON report.
    Verify {
        /// Run only criteria whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
    /// Residuals of the two-solution Wronskian identity on a (nu, theta) grid.
    Wronskian,
    /// Squared norms: closed form, boundary-data route, quadrature.
    Norm,
}

fn load_config(path: &Option<PathBuf>) -> anyhow::Result<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", p.display()))?;
            let cfg: Config = serde_json::from_str(&text)
                .map_err(|e| anyhow::anyhow!("config parse error in {}: {e}", p.display()))?;
            Ok(cfg)
        }
    }
}

fn emit(table: &Table, format: Format, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let mut buffer: Vec<u8> = Vec::new();
    match format {
        Format::Csv => table.write_csv(&mut buffer)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut buffer, &table.to_json())?;
            buffer.push(b'\n');
        }
    }
    match out {
        None => std::io::stdout().write_all(&buffer)?,
        Some(p) => std::fs::write(p, &buffer)?,
    }
    Ok(())
}

fn cmd_eval(cfg: &Config, tol: f64, format: Format, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let e = &cfg.eval;
    let thetas = e.theta_grid.as_ref().map_or_else(default_thetas, |g| g.points());
    let rep = parse_representation(&e.representation)?;
    let base = cfg.params.base()?;
    let mut table = Table::new(vec![
        "family", "nu", "theta", "x", "value", "representation", "tol",
    ]);
    let fam_name = |f: Family| match f {
        Family::AskeyWilson => "askey_wilson",
        Family::U8 => "u8",
        Family::DualQhahn => "dual_qhahn",
        Family::AlSalamChihara => "al_salam_chihara",
        Family::BigQhermite => "big_qhermite",
        Family::Qhermite => "qhermite",
        Family::Qbessel => "qbessel",
        Family::QtrigC => "qtrig_c",
        Family::QtrigS => "qtrig_s",
    };
    let mut push = |nu: f64, theta: f64, value: f64, rep_name: &str| {
        table.push(vec![
            Cell::Text(fam_name(e.family).into()),
            Cell::Num(nu),
            Cell::Num(theta),
            Cell::Num(theta.cos()),
            Cell::Num(value),
            Cell::Text(rep_name.into()),
            Cell::Num(tol),
        ]);
    };

    match e.family {
        Family::AskeyWilson => {
            let params = cfg.params.build(false)?;
            for &nu in &e.nu_list {
                let n = nu.round();
                if (nu - n).abs() > 1e-12 || n < 0.0 {
                    anyhow::bail!("askey_wilson degrees must be nonnegative integers, got {nu}");
                }
                for &t in &thetas {
                    let v = qortho::aw::aw_poly(n as u32, t.cos(), &params)?;
                    push(nu, t, v, "terminating");
                }
            }
        }
        Family::U8 => {
            let params = cfg.params.build(true)?;
            let want_v = e.output == Some(UOrV::V);
            for &nu in &e.nu_list {
                for &t in &thetas {
                    let point = LatticePoint::from_theta(t, base);
                    let (u, v, used) =
                        u8phi7::u_v_with_rep(Complex64::new(nu, 0.0), &point, &params, rep, tol)?;
                    let value = if want_v { v } else { u };
                    push(nu, t, value.re, used.name());
                }
            }
        }
        Family::DualQhahn | Family::AlSalamChihara | Family::BigQhermite | Family::Qhermite => {
            let p = &cfg.params;
            let (a, b, c) = (
                Complex64::new(p.a, 0.0),
                Complex64::new(p.b, 0.0),
                Complex64::new(p.d, 0.0),
            );
            for &nu in &e.nu_list {
                for &t in &thetas {
                    let point = LatticePoint::from_theta(t, base);
                    let nuc = Complex64::new(nu, 0.0);
                    let v = match e.family {
                        Family::DualQhahn => {
                            qortho::special::dual_qhahn_u(nuc, &point, a, b, c, base, tol)?
                        }
                        Family::AlSalamChihara => {
                            qortho::special::al_salam_chihara_u(nuc, &point, a, c, base, tol)?
                        }
                        Family::BigQhermite => {
                            qortho::special::big_qhermite_u(nuc, &point, c, base, tol)?
                        }
                        Family::Qhermite => qortho::special::qhermite_h(nuc, &point, base, tol)?,
                        _ => unreachable!(),
                    };
                    push(nu, t, v.re, "series");
                }
            }
        }
        Family::Qbessel => {
            // Degree axis is r; rows iterate r over nu_list x r_list grids.
            let rs = if e.r_list.is_empty() { vec![0.5, 1.0, 1.5] } else { e.r_list.clone() };
            for &nu in &e.nu_list {
                for &r in &rs {
                    for &t in &thetas {
                        let point = LatticePoint::from_theta(t, base);
                        let v = qortho::special::qbessel_j(
                            Complex64::new(nu, 0.0),
                            &point,
                            r,
                            base,
                            tol,
                        )?;
                        // reuse the nu column for r by encoding both
                        table.push(vec![
                            Cell::Text("qbessel".into()),
                            Cell::Num(nu),
                            Cell::Num(t),
                            Cell::Num(r),
                            Cell::Num(v.re),
                            Cell::Text("series".into()),
                            Cell::Num(tol),
                        ]);
                    }
                }
            }
        }
        Family::QtrigC | Family::QtrigS => {
            let oms = if e.r_list.is_empty() { vec![0.5, 1.0] } else { e.r_list.clone() };
            for &om in &oms {
                for &t in &thetas {
                    let x = t.cos();
                    let v = match e.family {
                        Family::QtrigC => qortho::special::qtrig_c(x, om, base, tol)?,
                        _ => qortho::special::qtrig_s(x, om, base, tol)?,
                    };
                    push(om, t, v, "series");
                }
            }
        }
    }
    emit(&table, format, out)
}

fn cmd_zeros(cfg: &Config, tol: f64, format: Format, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let params = cfg.params.build(true)?;
    let z = &cfg.zeros;
    if let Some(beta) = z.beta {
        // validate the test-point base early: a bad beta is a config error
        // (exit 2), not a numerical one
        zerofind::test_points(beta, 0, params.base)
            .map_err(|e| anyhow::anyhow!("config: {e}"))?;
    }
    let zeros = zerofind::find_zeros(&params, z.n_zeros, z.scan_step, tol.min(1e-10))?;
    let mut table = Table::new(vec![
        "index",
        "nu",
        "bracket_lo",
        "bracket_hi",
        "f_residual",
        "predicted",
        "nu_minus_predicted",
        "g_sign",
    ]);
    for r in &zeros {
        table.push(vec![
            Cell::Int(r.index as i64),
            Cell::Num(r.nu),
            Cell::Num(r.bracket.0),
            Cell::Num(r.bracket.1),
            Cell::Num(r.f_residual),
            Cell::Num(r.predicted),
            Cell::Num(r.nu - r.predicted),
            Cell::Int(r.g_sign as i64),
        ]);
    }
    if !z.interlacing {
        return emit(&table, format, out);
    }
    let report = zerofind::interlacing_report(&params, z.n_zeros, tol.min(1e-10))?;
    match format {
        Format::Csv => {
            // table first, then the interlacing section as a second block
            let mut buffer: Vec<u8> = Vec::new();
            table.write_csv(&mut buffer)?;
            writeln!(buffer)?;
            writeln!(buffer, "interlacing,strict,{}", report.strict_interlacing)?;
            writeln!(buffer, "interlacing,pairs_checked,{}", report.pairs_checked)?;
            writeln!(
                buffer,
                "interlacing,mu1_below_nu1,{}",
                report.mu1_below_nu1.map_or("unknown".into(), |b| b.to_string())
            )?;
            writeln!(buffer, "interlacing,g_sign_alternates,{}", report.g_sign_alternates)?;
            for (i, mu) in report.g_zeros.iter().enumerate() {
                writeln!(buffer, "g_zero,{},{}", i + 1, mu)?;
            }
            match &cli_out(out) {
                None => std::io::stdout().write_all(&buffer)?,
                Some(p) => std::fs::write(p, &buffer)?,
            }
            Ok(())
        }
        Format::Json => {
            let doc = serde_json::json!({
                "guaranteed_box": zerofind::in_guaranteed_box(&params),
                "zeros": table.to_json(),
                "interlacing": {
                    "strict": report.strict_interlacing,
                    "pairs_checked": report.pairs_checked,
                    "mu1_below_nu1": report.mu1_below_nu1,
                    "g_sign_alternates": report.g_sign_alternates,
                    "g_zeros": report.g_zeros,
                }
            });
            write_json(&doc, out)
        }
    }
}

fn cli_out(out: &Option<PathBuf>) -> Option<PathBuf> {
    out.clone()
}

fn write_json(doc: &serde_json::Value, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let mut buffer = serde_json::to_vec_pretty(doc)?;
    buffer.push(b'\n');
    match out {
        None => std::io::stdout().write_all(&buffer)?,
        Some(p) => std::fs::write(p, &buffer)?,
    }
    Ok(())
}

/// Returns false when any criterion failed.
fn cmd_verify(
    tol_scale: f64,
    only: Option<&str>,
    out: &Option<PathBuf>,
) -> anyhow::Result<bool> {
    let outcomes = qortho::verify::run_all(tol_scale, only);
    if outcomes.is_empty() {
        anyhow::bail!("--only {:?} matched no criterion", only.unwrap_or(""));
    }
    let all_passed = outcomes.iter().all(|o| o.passed);
    let doc = serde_json::json!({
        "tolerance_scale": tol_scale,
        "all_passed": all_passed,
        "criteria": outcomes.iter().map(|o| serde_json::json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed,
            "tolerance": o.tolerance,
            "worst": o.worst,
            "seconds": o.seconds,
            "note": o.note,
            "details": o.details,
        })).collect::<Vec<_>>(),
    });
    write_json(&doc, out)?;
    for o in &outcomes {
        eprintln!("{}", o.summary_line());
    }
    Ok(all_passed)
}

fn cmd_wronskian(
    cfg: &Config,
    tol: f64,
    format: Format,
    out: &Option<PathBuf>,
) -> anyhow::Result<()> {
    let params = cfg.wronskian.params.build(true)?;
    let thetas = if cfg.wronskian.theta_list.is_empty() {
        vec![0.6, 1.3, 2.1]
    } else {
        cfg.wronskian.theta_list.clone()
    };
    let mut table = Table::new(vec!["nu", "theta", "residual"]);
    for &nu in &cfg.wronskian.nu_list {
        for &t in &thetas {
            let point = LatticePoint::from_theta(t, params.base);
            let r = qortho::norms::wronskian_identity_residual(
                Complex64::new(nu, 0.0),
                &point,
                &params,
                tol,
            )?;
            table.push(vec![Cell::Num(nu), Cell::Num(t), Cell::Num(r)]);
        }
    }
    emit(&table, format, out)
}

fn cmd_norm(cfg: &Config, tol: f64, format: Format, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let params = cfg.params.build(true)?;
    let mut table = Table::new(vec![
        "nu",
        "closed_form",
        "boundary_route",
        "quadrature",
        "max_rel_deviation",
    ]);
    // The boundary-data route represents the norm only at boundary zeros,
    // so those are the default abscissas.
    let nu_list = if cfg.norm.nu_list.is_empty() {
        zerofind::find_zeros(&params, 2, 0.05, 1e-12)?.iter().map(|r| r.nu).collect()
    } else {
        cfg.norm.nu_list.clone()
    };
    for &nu in &nu_list {
        let closed = qortho::norms::norm_sq_closed(Complex64::new(nu, 0.0), &params, tol)?;
        let rhs = qortho::norms::norm_sq_rhs(nu, &params, cfg.norm.dnu, tol)?;
        let quad = if cfg.norm.quadrature {
            Some(qortho::quad::ortho_integral(nu, nu, &params, tol.max(1e-10))?)
        } else {
            None
        };
        let mut dev = (closed - rhs).abs() / closed.abs();
        if let Some(q) = quad {
            dev = dev.max((closed - q).abs() / closed.abs());
        }
        table.push(vec![
            Cell::Num(nu),
            Cell::Num(closed),
            Cell::Num(rhs),
            match quad {
                Some(q) => Cell::Num(q),
                None => Cell::Text("skipped".into()),
            },
            Cell::Num(dev),
        ]);
    }
    emit(&table, format, out)
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let cfg = load_config(&cli.config)?;
    let tol = cli.tol.or(cfg.tol).unwrap_or(1e-10);
    // rejects NaN alongside nonpositive values
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > 0.0) {
        anyhow::bail!("tolerance must be positive, got {tol}");
    }
    let format = cli.format.unwrap_or(match cli.cmd {
        Cmd::Verify { .. } => Format::Json,
        _ => Format::Csv,
    });
    match &cli.cmd {
        Cmd::Eval => {
            cmd_eval(&cfg, tol, format, &cli.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Zeros => {
            cmd_zeros(&cfg, tol, format, &cli.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { only } => {
            let scale = cli.tol.unwrap_or(1.0);
            let ok = cmd_verify(scale, only.as_deref(), &cli.out)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Wronskian => {
            cmd_wronskian(&cfg, tol, format, &cli.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Norm => {
            cmd_norm(&cfg, tol, format, &cli.out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            // Numerical failures exit 3; config/usage problems exit 2.
            let numerical = err.downcast_ref::<QError>().is_some();
            if numerical {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
