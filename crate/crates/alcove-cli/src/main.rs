//! `alcove` — describe root data, build alcove Laplacians, solve Bethe-type
//! spectra, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical non-convergence.

use alcove::affine_weyl::{Alcove, AffineWeylElement};
use alcove::bethe::{MorseProblem, SpectralPoint};
use alcove::hecke::build_coeff_table;
use alcove::qpoly::QPoly;
use alcove::root_system::{RootSystem, TypeLabel, Weight};
use alcove::spectral::{diagonalize, fmt_complex, gaudin_rhs, gram_csv, verify, Tolerances};
use alcove::{C64, TauParams};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "alcove", version, about = "Discrete harmonic analysis on a Weyl alcove")]
struct Cli {
    /// Optional TOML config file; command-line flags win over its values.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Root system type: one of A, B, C, D, E, F, G.
    #[arg(long = "type", value_name = "LETTER")]
    type_label: Option<char>,
    #[arg(long)]
    rank: Option<usize>,
    /// Integer scale parameter c > 1.
    #[arg(long)]
    c: Option<i64>,
    /// Multiplicity parameter on short roots (tau, not tau^2).
    #[arg(long)]
    tau_s: Option<f64>,
    /// Multiplicity parameter on long roots; defaults to tau-s.
    #[arg(long)]
    tau_l: Option<f64>,
    /// Squared multiplicity parameters; may be negative with
    /// --allow-negative-tau. Overrides --tau-s/--tau-l when given.
    #[arg(long, allow_hyphen_values = true)]
    tau2_s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau2_l: Option<f64>,
    /// Admit the regime -1 < tau^2 < 0.
    #[arg(long, default_value_t = false)]
    allow_negative_tau: bool,
    /// Output format.
    #[arg(long, value_parser = ["json", "csv"])]
    format: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Worker threads for the per-coweight solves.
    #[arg(long)]
    jobs: Option<usize>,
    /// Gradient-norm tolerance of the Newton solver.
    #[arg(long)]
    tol_grad: Option<f64>,
    /// Relative eigen-residual tolerance of the verification suite.
    #[arg(long)]
    tol_eigen: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    type_label: Option<char>,
    rank: Option<usize>,
    c: Option<i64>,
    tau_s: Option<f64>,
    tau_l: Option<f64>,
    tau2_s: Option<f64>,
    tau2_l: Option<f64>,
    allow_negative_tau: Option<bool>,
    format: Option<String>,
    jobs: Option<usize>,
    tol_grad: Option<f64>,
    tol_eigen: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root-system data (simple roots, marks, h, h^vee, index).
    Describe(Common),
    /// Expand T_w X^nu and dump the coefficient table.
    Coeffs {
        #[command(flatten)]
        common: Common,
        /// Reduced word of w as comma-separated simple indices, e.g. "0,1,2".
        #[arg(long)]
        word: String,
        /// nu in fundamental-weight coordinates, e.g. "1,0".
        #[arg(long)]
        nu: String,
        /// Dump exact integer polynomials in q_s, q_l instead of numbers.
        #[arg(long, default_value_t = false)]
        exact: bool,
    },
    /// Emit the matrix of the Laplacian L_omega on the alcove.
    Laplacian {
        #[command(flatten)]
        common: Common,
        /// "quasiminuscule" or the index j of a minuscule fundamental weight.
        #[arg(long)]
        omega: String,
    },
    /// Solve the Bethe-type equations for every coweight in the dual alcove.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Keep only the extended-invariant part of the spectrum
        /// (coweights in the coroot lattice).
        #[arg(long, default_value_t = false)]
        w_invariant_only: bool,
    },
    /// Run the verification suites; exit code 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Re-verify a previously saved spectrum JSON instead of solving.
        #[arg(long)]
        spectrum: Option<std::path::PathBuf>,
        /// Also write the Gram matrix of spherical functions as CSV.
        #[arg(long)]
        gram_csv: Option<std::path::PathBuf>,
    },
    /// Quadratic norms of the spherical functions against the determinant
    /// formula.
    Norms(Common),
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            classify(&e)
        }
    });
}

fn classify(e: &anyhow::Error) -> i32 {
    if let Some(err) = e.downcast_ref::<alcove::Error>() {
        match err {
            alcove::Error::NoConvergence { .. } | alcove::Error::Certification(_) => return 3,
            _ => return 2,
        }
    }
    2
}

struct Setup {
    rs: RootSystem,
    c: i64,
    tau: TauParams,
    tolerances: Tolerances,
}

fn merge(common: &Common, config: &Option<std::path::PathBuf>) -> anyhow::Result<Common> {
    let mut out = common.clone();
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)?;
        let file: FileConfig = toml::from_str(&text)?;
        out.type_label = out.type_label.or(file.type_label);
        out.rank = out.rank.or(file.rank);
        out.c = out.c.or(file.c);
        out.tau_s = out.tau_s.or(file.tau_s);
        out.tau_l = out.tau_l.or(file.tau_l);
        out.tau2_s = out.tau2_s.or(file.tau2_s);
        out.tau2_l = out.tau2_l.or(file.tau2_l);
        out.allow_negative_tau |= file.allow_negative_tau.unwrap_or(false);
        out.format = out.format.or(file.format);
        out.jobs = out.jobs.or(file.jobs);
        out.tol_grad = out.tol_grad.or(file.tol_grad);
        out.tol_eigen = out.tol_eigen.or(file.tol_eigen);
    }
    Ok(out)
}

fn setup(common: &Common) -> anyhow::Result<Setup> {
    let label = common
        .type_label
        .and_then(TypeLabel::from_char)
        .ok_or_else(|| anyhow::anyhow!("--type must be one of A,B,C,D,E,F,G"))?;
    let rank = common.rank.ok_or_else(|| anyhow::anyhow!("--rank is required"))?;
    let rs = RootSystem::new(label, rank)?;
    let c = common.c.unwrap_or(2);
    if c <= 1 {
        return Err(alcove::Error::InvalidScale(c).into());
    }
    let tau2_s = common.tau2_s.or(common.tau_s.map(|t| t * t)).unwrap_or(0.25);
    let tau2_l = common.tau2_l.or(common.tau_l.map(|t| t * t)).unwrap_or(tau2_s);
    if (tau2_s <= 0.0 || tau2_l <= 0.0) && !common.allow_negative_tau {
        return Err(anyhow::anyhow!(
            "tau^2 = ({tau2_s}, {tau2_l}) is outside (0,1); pass --allow-negative-tau for the extended regime"
        ));
    }
    let tau = TauParams::from_tau2(tau2_s, tau2_l)?;
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    let mut tolerances = Tolerances::default();
    if let Some(g) = common.tol_grad {
        tolerances.grad = g;
    }
    if let Some(e) = common.tol_eigen {
        tolerances.eigen = e;
    }
    Ok(Setup { rs, c, tau, tolerances })
}

fn emit(common: &Common, text: String) -> anyhow::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn parse_word(s: &str, rank: usize) -> anyhow::Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|p| {
            let j: usize = p.trim().parse()?;
            if j > rank {
                anyhow::bail!("letter {j} out of range 0..={rank}");
            }
            Ok(j)
        })
        .collect()
}

fn parse_weight(s: &str, rank: usize) -> anyhow::Result<Weight> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(Into::into))
        .collect::<anyhow::Result<_>>()?;
    if coords.len() != rank {
        anyhow::bail!("expected {rank} coordinates, got {}", coords.len());
    }
    Ok(Weight(coords))
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Describe(common) => {
            let common = merge(&common, &cli.config)?;
            let s = setup(&common)?;
            let json = s.rs.describe_json(Some(s.c));
            emit(&common, serde_json::to_string_pretty(&json)?)?;
            Ok(0)
        }
        Command::Coeffs { common, word, nu, exact } => {
            let common = merge(&common, &cli.config)?;
            let s = setup(&common)?;
            let letters = parse_word(&word, s.rs.rank)?;
            let nu = parse_weight(&nu, s.rs.rank)?;
            let mut w = AffineWeylElement::identity(s.rs.rank);
            for &j in &letters {
                w = w.mul(&AffineWeylElement::simple(&s.rs, j));
            }
            let json = if exact {
                let q_of = |j: usize| {
                    if TauParams::short_j(&s.rs, j) {
                        QPoly::gen_qs()
                    } else {
                        QPoly::gen_ql()
                    }
                };
                let t = build_coeff_table(&s.rs, &w, &nu, &q_of)?;
                let mut a: Vec<_> = t
                    .a
                    .iter()
                    .map(|((v, eta), c)| {
                        (v.word_string(&s.rs), eta.0.clone(), c.terms.clone())
                    })
                    .collect();
                a.sort();
                let a: Vec<_> = a
                    .into_iter()
                    .map(|(v, eta, terms)| {
                        serde_json::json!({
                            "v": v,
                            "eta": eta,
                            "poly": terms.iter().map(|(&(es, el), &k)| {
                                serde_json::json!({"qs": es, "ql": el, "coef": k})
                            }).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let mut b: Vec<_> = t
                    .b
                    .iter()
                    .map(|(v, c)| (v.word_string(&s.rs), c.terms.clone()))
                    .collect();
                b.sort();
                let b: Vec<_> = b
                    .into_iter()
                    .map(|(v, terms)| {
                        serde_json::json!({
                            "v": v,
                            "poly": terms.iter().map(|(&(es, el), &k)| {
                                serde_json::json!({"qs": es, "ql": el, "coef": k})
                            }).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                serde_json::json!({"w": w.word_string(&s.rs), "nu": nu.0, "a": a, "b": b})
            } else {
                let q_of = |j: usize| s.tau.q_j(&s.rs, j);
                let t: alcove::CoeffTableNum = build_coeff_table(&s.rs, &w, &nu, &q_of)?;
                let mut a: Vec<_> = t
                    .a
                    .iter()
                    .map(|((v, eta), c)| (v.word_string(&s.rs), eta.0.clone(), fmt_complex(*c)))
                    .collect();
                a.sort();
                let a: Vec<_> = a
                    .into_iter()
                    .map(|(v, eta, value)| serde_json::json!({"v": v, "eta": eta, "value": value}))
                    .collect();
                let mut b: Vec<_> = t
                    .b
                    .iter()
                    .map(|(v, c)| (v.word_string(&s.rs), fmt_complex(*c)))
                    .collect();
                b.sort();
                let b: Vec<_> = b
                    .into_iter()
                    .map(|(v, value)| serde_json::json!({"v": v, "value": value}))
                    .collect();
                serde_json::json!({"w": w.word_string(&s.rs), "nu": nu.0, "a": a, "b": b})
            };
            emit(&common, serde_json::to_string_pretty(&json)?)?;
            Ok(0)
        }
        Command::Laplacian { common, omega } => {
            let common = merge(&common, &cli.config)?;
            let s = setup(&common)?;
            let alc = Alcove::new(&s.rs, s.c)?;
            let omega = resolve_omega(&s.rs, &omega)?;
            let ops = alcove::LatticeOps::new(&alc, &s.tau);
            let lap = ops.laplacian_matrix(&omega)?;
            let text = match common.format.as_deref() {
                Some("csv") => lap.to_csv(),
                _ => serde_json::to_string_pretty(&lap.to_json())?,
            };
            emit(&common, text)?;
            Ok(0)
        }
        Command::Spectrum { common, w_invariant_only } => {
            let common = merge(&common, &cli.config)?;
            let s = setup(&common)?;
            let alc = Alcove::new(&s.rs, s.c)?;
            let mut points =
                alcove::bethe::spectrum(&alc, &s.tau, s.tolerances.grad, s.tolerances.bae)?;
            if w_invariant_only {
                points.retain(|p| s.rs.in_coroot_lattice(&p.mu));
            }
            let text = match common.format.as_deref() {
                Some("csv") => spectrum_csv(&points),
                _ => serde_json::to_string_pretty(&points)?,
            };
            emit(&common, text)?;
            Ok(0)
        }
        Command::Verify { common, spectrum, gram_csv: gram_path } => {
            let common = merge(&common, &cli.config)?;
            let s = setup(&common)?;
            let alc = Alcove::new(&s.rs, s.c)?;
            if let Some(path) = &spectrum {
                // Round-trip check: the stored points must re-certify.
                let text = std::fs::read_to_string(path)?;
                let points: Vec<SpectralPoint> = serde_json::from_str(&text)?;
                let p = MorseProblem::new(&alc, &s.tau);
                for pt in &points {
                    let g = p.gradient(&pt.mu, &pt.xi);
                    if p.v_norm(&g) > 10.0 * s.tolerances.grad
                        || p.bae_residual(&pt.xi)? > s.tolerances.bae
                    {
                        return Err(alcove::Error::Certification(format!(
                            "stored point mu={:?} no longer certifies",
                            pt.mu
                        ))
                        .into());
                    }
                }
            }
            let report = verify(&alc, &s.tau, &s.tolerances)?;
            if let Some(path) = gram_path {
                let diag = diagonalize(&alc, &s.tau, &s.tolerances)?;
                std::fs::write(path, gram_csv(&diag)?)?;
            }
            emit(&common, serde_json::to_string_pretty(&report)?)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Norms(common) => {
            let common = merge(&common, &cli.config)?;
            let s = setup(&common)?;
            let alc = Alcove::new(&s.rs, s.c)?;
            let diag = diagonalize(&alc, &s.tau, &s.tolerances)?;
            let k = diag.basis.len();
            let mut rows = Vec::new();
            for (i, pt) in diag.points.iter().enumerate() {
                let f: Vec<C64> = (0..k).map(|x| diag.phi[(i, x)]).collect();
                let lhs = alcove::spectral::inner_product(&f, &f, &diag.weights).re;
                let (rhs, imag) = gaudin_rhs(&alc, &s.tau, &pt.xi)?;
                rows.push((pt.mu.0.clone(), lhs, rhs, lhs / rhs, imag));
            }
            let text = match common.format.as_deref() {
                Some("csv") => {
                    let mut t = String::from("mu,norm_sq,determinant_formula,ratio\n");
                    for (mu, lhs, rhs, ratio, _) in &rows {
                        t.push_str(&format!("{:?},{lhs},{rhs},{ratio}\n", mu).replace(' ', ""));
                    }
                    t
                }
                _ => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|(mu, lhs, rhs, ratio, imag)| {
                            serde_json::json!({
                                "mu": mu,
                                "norm_sq": lhs,
                                "determinant_formula": rhs,
                                "ratio": ratio,
                                "imag_residue": imag,
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&items)?
                }
            };
            emit(&common, text)?;
            Ok(0)
        }
    }
}

fn resolve_omega(rs: &RootSystem, selector: &str) -> anyhow::Result<Weight> {
    if selector.eq_ignore_ascii_case("quasiminuscule") || selector.eq_ignore_ascii_case("qm") {
        return Ok(rs.quasi_minuscule_weight());
    }
    let j: usize = selector
        .parse()
        .map_err(|_| anyhow::anyhow!("--omega must be 'quasiminuscule' or a fundamental-weight index"))?;
    if j == 0 || j > rs.rank {
        anyhow::bail!("--omega index out of range 1..={}", rs.rank);
    }
    let mut v = vec![0i64; rs.rank];
    v[j - 1] = 1;
    let omega = Weight(v);
    if !rs.is_minuscule(&omega) {
        anyhow::bail!("omega_{j} is not minuscule for this type (marks m_{j} != 1)");
    }
    Ok(omega)
}

fn spectrum_csv(points: &[SpectralPoint]) -> String {
    let mut t = String::from(
        "mu,xi,grad_norm,hessian_det,bae_residual,in_alcove,moment_gap_ok,newton_iters\n",
    );
    for p in points {
        t.push_str(&format!(
            "{:?},{:?},{},{},{},{},{},{}\n",
            p.mu.0, p.xi, p.grad_norm, p.hessian_det, p.bae_residual, p.in_alcove,
            p.moment_gap_ok, p.newton_iters
        ).replace(' ', ""));
    }
    t
}
