//! Command-line front end: spectra, clique tensors, theta quantities,
//! theorem verification batches, and instance generation over the shared
//! text format.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hyperspec_core::cliques::{clique_number, enumerate_cliques};
use hyperspec_core::graph::Graph;
use hyperspec_core::hypergraph::UniformHypergraph;
use hyperspec_core::io;
use hyperspec_core::spectra::{beta, clique_spectral_radius, degree_bounds, gamma};
use hyperspec_core::theorems::{self, Branch, TheoremReport};
use hyperspec_core::theta::{
    local_chromatic_bruteforce, local_vector_chromatic, theta_prime, two_distance_rep,
    vector_chromatic, RepMode, TwoDistanceRep, PSI_LIMIT,
};
use hyperspec_core::{Error, Real};

use output::{envelope, print_json, sig6, table_row, Format};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NONCONVERGED: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_FAILED_CHECK: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hyperspec",
    version,
    about = "Spectral radii, Lagrangians, theta SDPs and local-structure checks \
             for graphs and uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Certificate tolerance for iterative solvers.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Output format.
    #[arg(long, default_value = "table")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral radius, 2-section radius, and the ratio beta for a
    /// hypergraph file.
    Spectra {
        #[command(flatten)]
        common: CommonOpts,
        /// Input file in the shared text format.
        input: PathBuf,
    },
    /// Clique counts, r-clique spectral radius, gamma, and the clique-count
    /// margin for a graph file.
    Cliques {
        #[command(flatten)]
        common: CommonOpts,
        /// Clique size r.
        #[arg(long, default_value_t = 3)]
        r: usize,
        input: PathBuf,
    },
    /// Schrijver theta, vector and local chromatic quantities for a graph
    /// file.
    Theta {
        #[command(flatten)]
        common: CommonOpts,
        input: PathBuf,
    },
    /// Run theorem checkers over a file or a seeded random batch.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated checker ids:
        /// thm31,thm32,cor33,thm34,thm41,cor42,thm43,thm44,thm51.
        #[arg(long, required = true)]
        theorem: String,
        /// Input file; omit when generating a batch with --count.
        input: Option<PathBuf>,
        /// Batch generation: number of instances.
        #[arg(long)]
        count: Option<usize>,
        /// Batch generation: vertices.
        #[arg(long)]
        n: Option<usize>,
        /// Batch generation: edge size (2 = graphs).
        #[arg(long)]
        r: Option<usize>,
        /// Batch generation: edges per instance.
        #[arg(long)]
        m: Option<usize>,
        /// Master seed (required for any randomized run).
        #[arg(long)]
        seed: Option<u64>,
        /// Lagrangian restarts for the lambda-based checker.
        #[arg(long, default_value_t = hyperspec_core::theorems::DEFAULT_RESTARTS)]
        restarts: usize,
        /// 2-distance representation for thm51: identity, heuristic, or a
        /// matrix file of whitespace-separated rows.
        #[arg(long, default_value = "identity")]
        f: String,
        /// Pattern file for thm32/thm43.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Caller-supplied extremal spectral radius for thm32/thm43.
        #[arg(long)]
        spex: Option<f64>,
        /// Hypothesis branch for thm32/thm43 (1, 2 or 3).
        #[arg(long, default_value_t = 1)]
        branch: usize,
    },
    /// Write a named instance in the shared text format.
    Gen {
        /// One of: fano, complete, kplus, book, matching, random-hypergraph,
        /// random-graph, star-join.
        kind: String,
        /// Source file (star-join only).
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Matching size t.
        #[arg(long)]
        t: Option<usize>,
        /// Book page count p.
        #[arg(long)]
        p: Option<usize>,
        /// Edge probability for random-graph.
        #[arg(long)]
        prob: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Force the hypergraph join (rank+1) on rank-2 input.
        #[arg(long, default_value_t = false)]
        hyper: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_hypergraph(path: &PathBuf) -> Result<UniformHypergraph, Error> {
    io::parse_hypergraph(&read_to_string(path)?)
}

fn load_graph(path: &PathBuf) -> Result<Graph, Error> {
    io::parse_graph(&read_to_string(path)?)
}

fn validate_tol(common: &CommonOpts) -> Result<(), Error> {
    if !(common.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {}",
            common.tol
        )));
    }
    Ok(())
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Spectra { common, input } => {
            validate_tol(&common)?;
            cmd_spectra(&common, &input)
        }
        Command::Cliques { common, r, input } => {
            validate_tol(&common)?;
            cmd_cliques(&common, r, &input)
        }
        Command::Theta { common, input } => {
            validate_tol(&common)?;
            cmd_theta(&common, &input)
        }
        Command::Verify {
            common,
            theorem,
            input,
            count,
            n,
            r,
            m,
            seed,
            restarts,
            f,
            pattern,
            spex,
            branch,
        } => {
            validate_tol(&common)?;
            cmd_verify(VerifyConfig {
            common,
            theorem,
            input,
            count,
            n,
            r,
            m,
            seed,
            restarts,
            f,
            pattern,
            spex,
            branch,
        })
        }
        Command::Gen {
            kind,
            input,
            n,
            r,
            m,
            t,
            p,
            prob,
            seed,
            out,
            hyper,
        } => cmd_gen(GenConfig {
            kind,
            input,
            n,
            r,
            m,
            t,
            p,
            prob,
            seed,
            out,
            hyper,
        }),
    }
}

fn certificate_json(c: &hyperspec_core::SpectralCertificate) -> Value {
    json!({
        "rho": c.rho,
        "cw_low": c.cw_low,
        "cw_high": c.cw_high,
        "iterations": c.iterations,
        "converged": c.converged,
        "x": c.x,
    })
}

fn cmd_spectra(common: &CommonOpts, input: &PathBuf) -> Result<u8, Error> {
    let h = load_hypergraph(input)?;
    let ratio = beta(&h, common.tol)?;
    let (lower, upper) = degree_bounds(&h)?;
    let converged = ratio.numerator.converged && ratio.denominator.converged;
    match common.format {
        Format::Json => {
            let payload = json!({
                "rank": h.rank(),
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "rho": certificate_json(&ratio.numerator),
                "rho_two_section": certificate_json(&ratio.denominator),
                "beta": { "value": ratio.value, "low": ratio.low, "high": ratio.high },
                "degree_bounds": {
                    "lower": format!("{lower}"),
                    "upper": format!("{upper}"),
                },
            });
            print_json(&envelope("spectra", &payload));
        }
        Format::Table => {
            table_row(
                "rank / vertices / edges",
                &format!("{} / {} / {}", h.rank(), h.vertex_count(), h.edge_count()),
            );
            table_row("rho(H)", &sig6(ratio.numerator.rho));
            table_row(
                "  bracket",
                &format!(
                    "[{}, {}]",
                    sig6(ratio.numerator.cw_low),
                    sig6(ratio.numerator.cw_high)
                ),
            );
            table_row("rho(H^(2))", &sig6(ratio.denominator.rho));
            table_row(
                "  bracket",
                &format!(
                    "[{}, {}]",
                    sig6(ratio.denominator.cw_low),
                    sig6(ratio.denominator.cw_high)
                ),
            );
            table_row("beta", &sig6(ratio.value));
            table_row("degree bounds", &format!("{lower} <= rho <= {upper}"));
        }
    }
    Ok(if converged { EXIT_OK } else { EXIT_NONCONVERGED })
}

fn cmd_cliques(common: &CommonOpts, r: usize, input: &PathBuf) -> Result<u8, Error> {
    let g = load_graph(input)?;
    let family = enumerate_cliques(&g, r);
    let count = family.len();
    let rho_r = clique_spectral_radius(&g, r, common.tol)?;
    let n = g.vertex_count() as Real;
    let margin = n / r as Real * rho_r.rho - count as Real;
    let ratio = if count > 0 { Some(gamma(&g, r, common.tol)?) } else { None };
    match common.format {
        Format::Json => {
            let payload = json!({
                "r": r,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "clique_count": count,
                "rho_r": certificate_json(&rho_r),
                "gamma": ratio.as_ref().map(|x| json!({
                    "value": x.value, "low": x.low, "high": x.high
                })),
                "clique_count_margin": margin,
                "note": if count == 0 { Some(format!("no {r}-cliques")) } else { None },
            });
            print_json(&envelope("cliques", &payload));
        }
        Format::Table => {
            table_row(&format!("|C_{r}(G)|"), &count.to_string());
            table_row(&format!("rho_{r}(G)"), &sig6(rho_r.rho));
            table_row(
                &format!("gamma_{r}(G)"),
                &ratio
                    .as_ref()
                    .map(|x| sig6(x.value))
                    .unwrap_or_else(|| format!("- (no {r}-cliques)")),
            );
            table_row("(n/r) rho_r - |C_r|", &sig6(margin));
        }
    }
    Ok(if rho_r.converged { EXIT_OK } else { EXIT_NONCONVERGED })
}

fn cmd_theta(common: &CommonOpts, input: &PathBuf) -> Result<u8, Error> {
    let g = load_graph(input)?;
    let sdp_tol = common.tol.min(1e-7);
    let theta = theta_prime(&g, sdp_tol)?;
    let chi_v = vector_chromatic(&g, sdp_tol)?;
    let (phi, phi_vertex) = local_vector_chromatic(&g, sdp_tol)?;
    let omega = clique_number(&g);
    let psi = if g.vertex_count() <= PSI_LIMIT {
        Some(local_chromatic_bruteforce(&g)?)
    } else {
        None
    };
    let chain_tol = 1e-4;
    let omega_le_phi = omega as Real <= phi + chain_tol;
    let phi_le_psi = psi.map(|p| phi <= p as Real + chain_tol);
    let converged = theta.converged && chi_v.converged;
    match common.format {
        Format::Json => {
            let payload = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "theta_prime": { "value": theta.value, "iterations": theta.iterations,
                                  "converged": theta.converged },
                "vector_chromatic": { "value": chi_v.value, "iterations": chi_v.iterations,
                                       "converged": chi_v.converged },
                "local_vector_chromatic": { "value": phi, "argmax_vertex": phi_vertex },
                "clique_number": omega,
                "local_chromatic": psi,
                "chain": { "omega_le_phi": omega_le_phi, "phi_le_psi": phi_le_psi },
            });
            print_json(&envelope("theta", &payload));
        }
        Format::Table => {
            table_row("theta'(G)", &sig6(theta.value));
            table_row("chi_v(G)", &sig6(chi_v.value));
            table_row("phi(G)", &sig6(phi));
            table_row("omega(G)", &omega.to_string());
            table_row(
                "psi(G)",
                &psi.map(|p| p.to_string())
                    .unwrap_or_else(|| format!("- (n > {PSI_LIMIT})")),
            );
            table_row("omega <= phi", if omega_le_phi { "yes" } else { "NO" });
            if let Some(ok) = phi_le_psi {
                table_row("phi <= psi", if ok { "yes" } else { "NO" });
            }
        }
    }
    Ok(if converged { EXIT_OK } else { EXIT_NONCONVERGED })
}

struct VerifyConfig {
    common: CommonOpts,
    theorem: String,
    input: Option<PathBuf>,
    count: Option<usize>,
    n: Option<usize>,
    r: Option<usize>,
    m: Option<usize>,
    seed: Option<u64>,
    restarts: usize,
    f: String,
    pattern: Option<PathBuf>,
    spex: Option<f64>,
    branch: usize,
}

fn parse_rep_mode(mode: &str, g: &Graph) -> Result<TwoDistanceRep<Real>, Error> {
    match mode {
        "identity" => two_distance_rep(g, RepMode::Identity),
        "heuristic" => two_distance_rep(g, RepMode::Heuristic),
        path => {
            let text = read_to_string(&PathBuf::from(path))?;
            let entries: Vec<Vec<Real>> = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .filter(|l| !l.trim().is_empty())
                .map(|line| {
                    line.split_whitespace()
                        .map(|tok| {
                            tok.parse::<Real>().map_err(|_| Error::Parse {
                                line: 0,
                                message: format!("bad matrix entry `{tok}`"),
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            two_distance_rep(g, RepMode::User(entries))
        }
    }
}

/// Deterministically generates the i-th instance; graph theorems get a
/// triangle by bumping the derived seed.
fn generate_instance(
    n: usize,
    r: usize,
    m: usize,
    seed: u64,
    index: usize,
    need_triangle: bool,
) -> Result<UniformHypergraph, Error> {
    let mut derived = seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1));
    for _ in 0..100_000 {
        let h = UniformHypergraph::random(n, r, m, derived)?;
        if !need_triangle {
            return Ok(h);
        }
        let g = io::hypergraph_to_graph(&h)?;
        if !enumerate_cliques(&g, 3).is_empty() {
            return Ok(h);
        }
        derived = derived.wrapping_add(1);
    }
    Err(Error::InvalidParameter(format!(
        "could not generate an instance with a triangle at n={n}, m={m}"
    )))
}

fn cmd_verify(config: VerifyConfig) -> Result<u8, Error> {
    let theorems_requested: Vec<String> = config
        .theorem
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if theorems_requested.is_empty() {
        return Err(Error::InvalidParameter("no theorem ids given".into()));
    }
    for id in &theorems_requested {
        if !matches!(
            id.as_str(),
            "thm31" | "thm32" | "cor33" | "thm34" | "thm41" | "cor42" | "thm43" | "thm44"
                | "thm51"
        ) {
            return Err(Error::InvalidParameter(format!(
                "unsupported theorem id `{id}`"
            )));
        }
    }

    let instances: Vec<UniformHypergraph> = match (&config.input, config.count) {
        (Some(path), None) => vec![load_hypergraph(path)?],
        (None, Some(count)) => {
            let (n, r, m) = match (config.n, config.r, config.m) {
                (Some(n), Some(r), Some(m)) => (n, r, m),
                _ => {
                    return Err(Error::InvalidParameter(
                        "batch generation needs --n, --r and --m".into(),
                    ))
                }
            };
            let seed = config
                .seed
                .ok_or_else(|| Error::InvalidParameter("randomized runs need --seed".into()))?;
            let need_triangle = theorems_requested
                .iter()
                .any(|t| matches!(t.as_str(), "thm41" | "cor42" | "thm43" | "thm44" | "thm51"));
            (0..count)
                .map(|i| generate_instance(n, r, m, seed, i, need_triangle && r == 2))
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of an input file or --count with --n/--r/--m/--seed".into(),
            ))
        }
    };

    let tol = config.common.tol.max(1e-9);
    let mut reports: Vec<(usize, TheoremReport<Real>)> = Vec::new();
    for (index, h) in instances.iter().enumerate() {
        for id in &theorems_requested {
            let report = run_one_theorem(id, h, &config, tol)?;
            reports.push((index, report));
        }
    }

    let pass = reports.iter().filter(|(_, r)| r.holds).count();
    let inconclusive = reports.iter().filter(|(_, r)| r.inconclusive).count();
    let fail = reports
        .iter()
        .filter(|(_, r)| !r.holds && !r.inconclusive)
        .count();
    match config.common.format {
        Format::Json => {
            let payload = json!({
                "instances": reports.iter().map(|(i, r)| json!({
                    "instance": i,
                    "report": r,
                })).collect::<Vec<_>>(),
                "summary": { "pass": pass, "fail": fail, "inconclusive": inconclusive },
                "seed": config.seed,
            });
            print_json(&envelope("verify", &payload));
        }
        Format::Table => {
            for (i, r) in &reports {
                let verdict = if r.holds {
                    "PASS"
                } else if r.inconclusive {
                    "INC"
                } else {
                    "FAIL"
                };
                println!(
                    "{:<8} #{:<4} {:<4} lhs={} rhs={}",
                    r.theorem,
                    i,
                    verdict,
                    sig6(r.lhs),
                    sig6(r.rhs),
                );
            }
            match config.seed {
                Some(seed) => println!(
                    "summary: pass={pass} fail={fail} inconclusive={inconclusive} seed={seed}"
                ),
                None => println!("summary: pass={pass} fail={fail} inconclusive={inconclusive}"),
            }
        }
    }
    Ok(if fail > 0 {
        EXIT_FAILED_CHECK
    } else if inconclusive > 0 {
        EXIT_NONCONVERGED
    } else {
        EXIT_OK
    })
}

fn run_one_theorem(
    id: &str,
    h: &UniformHypergraph,
    config: &VerifyConfig,
    tol: Real,
) -> Result<TheoremReport<Real>, Error> {
    let as_graph = || io::hypergraph_to_graph(h);
    match id {
        "thm31" => theorems::verify_thm31(h, tol),
        "thm34" => theorems::verify_thm34_restarts(h, config.restarts, tol),
        "cor33" => theorems::verify_cor33(h, tol),
        "thm32" => {
            let path = config
                .pattern
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("thm32 needs --pattern".into()))?;
            let spex = config
                .spex
                .ok_or_else(|| Error::InvalidParameter("thm32 needs --spex".into()))?;
            let pattern = load_hypergraph(path)?;
            theorems::verify_thm32(h, &pattern, spex, Branch::from_index(config.branch)?, tol)
        }
        "thm41" => theorems::verify_thm41(&as_graph()?, config.r.unwrap_or(3).max(3), tol),
        "cor42" => theorems::verify_cor42(&as_graph()?, tol),
        "thm44" => theorems::verify_thm44(&as_graph()?, config.r.unwrap_or(3).max(3), tol),
        "thm43" => {
            let path = config
                .pattern
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("thm43 needs --pattern".into()))?;
            let spex = config
                .spex
                .ok_or_else(|| Error::InvalidParameter("thm43 needs --spex".into()))?;
            let pattern = load_graph(path)?;
            theorems::verify_thm43(
                &as_graph()?,
                &pattern,
                spex,
                Branch::from_index(config.branch)?,
                tol,
            )
        }
        "thm51" => {
            let g = as_graph()?;
            let rep = parse_rep_mode(&config.f, &g)?;
            theorems::verify_thm51(&g, &rep, tol.max(1e-4))
        }
        other => Err(Error::InvalidParameter(format!(
            "unsupported theorem id `{other}`"
        ))),
    }
}

struct GenConfig {
    kind: String,
    input: Option<PathBuf>,
    n: Option<usize>,
    r: Option<usize>,
    m: Option<usize>,
    t: Option<usize>,
    p: Option<usize>,
    prob: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    hyper: bool,
}

fn cmd_gen(config: GenConfig) -> Result<u8, Error> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| Error::InvalidParameter(format!("gen {} needs --{flag}", config.kind)))
    };
    let text = match config.kind.as_str() {
        "fano" => io::serialize_hypergraph(&UniformHypergraph::fano()),
        "complete" => {
            let n = need(config.n, "n")?;
            let r = need(config.r, "r")?;
            if r == 2 {
                io::serialize_graph(&Graph::complete(n))
            } else {
                io::serialize_hypergraph(&UniformHypergraph::complete(n, r)?)
            }
        }
        "kplus" => {
            let r = need(config.r, "r")?;
            io::serialize_hypergraph(&UniformHypergraph::k_plus(r)?)
        }
        "book" => {
            let p = need(config.p, "p")?;
            io::serialize_graph(&Graph::book(p))
        }
        "matching" => {
            let r = need(config.r, "r")?;
            let t = need(config.t, "t")?;
            io::serialize_hypergraph(&UniformHypergraph::matching(t, r)?)
        }
        "random-hypergraph" => {
            let n = need(config.n, "n")?;
            let r = need(config.r, "r")?;
            let m = need(config.m, "m")?;
            let seed = config
                .seed
                .ok_or_else(|| Error::InvalidParameter("randomized runs need --seed".into()))?;
            io::serialize_hypergraph(&UniformHypergraph::random(n, r, m, seed)?)
        }
        "random-graph" => {
            let n = need(config.n, "n")?;
            let prob = config
                .prob
                .ok_or_else(|| Error::InvalidParameter("gen random-graph needs --prob".into()))?;
            let seed = config
                .seed
                .ok_or_else(|| Error::InvalidParameter("randomized runs need --seed".into()))?;
            io::serialize_graph(&Graph::random(n, prob, seed)?)
        }
        "star-join" => {
            let path = config
                .input
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("gen star-join needs an input file".into()))?;
            let h = load_hypergraph(path)?;
            if h.rank() == 2 && !config.hyper {
                io::serialize_graph(&io::hypergraph_to_graph(&h)?.star_join())
            } else {
                io::serialize_hypergraph(&h.star_join())
            }
        }
        other => return Err(Error::InvalidParameter(format!("unknown gen kind `{other}`"))),
    };
    match &config.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}
