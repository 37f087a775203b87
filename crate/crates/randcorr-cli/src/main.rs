//! Command-line front end: designs, moment engines, criteria scans, and the
//! CSV data files behind the reference figures.

mod output;
mod statespec;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use randcorr::criteria::{
    self, criterion_f, criterion_r6, Verdict, WClassCriterionParams,
};
use randcorr::designs::{
    self, design_json, icosahedron_design, load_design, octahedron_design, project_to_sphere,
    save_design, verify_spherical_design, Design, SphericalDesign,
};
use randcorr::moments::{
    bd_moments, moment_design, moments_design, moments_mc, moments_monomial, MomentSet,
};
use randcorr::qcore::random::{
    dirichlet_flat, random_density_matrix, random_mixed_wclass, random_separable_mixture,
    seeded_rng,
};
use randcorr::qcore::states::{self, BellDiagonalParams};
use randcorr::qcore::{CorrelationTensor, DensityMatrix};
use randcorr::witness::{
    amplitude_threshold, compute_line_params, noise_threshold, CriterionKind,
};

use output::{fmt, write_csv, RunManifest};
use statespec::parse_state;

const EXIT_USAGE: i32 = 1;
const EXIT_VERIFY: i32 = 2;

#[derive(Parser)]
#[command(
    name = "randcorr",
    version,
    about = "Moments of randomized local correlation measurements: designs, engines, criteria"
)]
struct Cli {
    /// Worker threads (overrides RANDCORR_THREADS; default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build, verify, project or print measurement designs
    Design {
        #[command(subcommand)]
        cmd: DesignCmd,
    },
    /// Compute the moments R^(2), R^(4) (and R^(6) where available) of a state
    Moments(MomentsArgs),
    /// Emit the Bell-diagonal boundary curves and labeled reference points
    Fig2a(Fig2aArgs),
    /// Scan Dicke-state detection over (N, k)
    Fig2b(Fig2bArgs),
    /// Scatter random-state moments with labeled anchor states
    Fig3a(Fig3aArgs),
    /// Noise and amplitude thresholds of the W-class criteria per qubit number
    Fig3b(Fig3bArgs),
    /// Cross-validate the Bell-diagonal criteria against the exact rule
    ScanBd(ScanBdArgs),
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Construct a shipped design and print its element counts
    Build {
        /// octahedron | icosahedron | clifford | sl2f5
        name: String,
        /// Save the design as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the design property at a given strength (exit 2 on failure)
    Verify {
        /// Shipped design name (omit when using --file)
        name: Option<String>,
        /// Load the design from a JSON file instead
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        strength: u32,
    },
    /// Bloch-sphere projection of a unitary design
    Project {
        name: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Write points as CSV instead of printing them
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a design as JSON
    Show { name: String },
}

#[derive(Args)]
struct MomentsArgs {
    /// State spec: bell | ghz:N | w:N | dicke:N,k | bd:c1,c2,c3 |
    /// noisyghz:N,p | psitheta:N,theta | file:path.json
    #[arg(long)]
    state: String,
    /// design | mc | monomial | bd
    #[arg(long, default_value = "design")]
    engine: String,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Fig2aArgs {
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Fig2bArgs {
    #[arg(long, default_value_t = 200)]
    nmax: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Fig3aArgs {
    #[arg(long, default_value_t = 2000)]
    count: usize,
    /// mixed | fullysep | wclass
    #[arg(long, default_value = "mixed")]
    class: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Qubit number (anchors and W-class sampling supported for 3..=6)
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Fig3bArgs {
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScanBdArgs {
    #[arg(long, default_value_t = 10_000)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn verify_fail(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_VERIFY,
        message: msg.into(),
    }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("RANDCORR_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(k) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("thread pool setup failed: {e}");
            std::process::exit(EXIT_USAGE);
        }
    }
    let result = match cli.cmd {
        Cmd::Design { cmd } => run_design(cmd),
        Cmd::Moments(a) => run_moments(a),
        Cmd::Fig2a(a) => run_fig2a(a),
        Cmd::Fig2b(a) => run_fig2b(a),
        Cmd::Fig3a(a) => run_fig3a(a),
        Cmd::Fig3b(a) => run_fig3b(a),
        Cmd::ScanBd(a) => run_scan_bd(a),
    };
    if let Err(f) = result {
        eprintln!("{}", f.message);
        std::process::exit(f.code);
    }
}

fn built_in_design(name: &str) -> Result<Design, Failure> {
    match name {
        "octahedron" => Ok(Design::Spherical(octahedron_design())),
        "icosahedron" => Ok(Design::Spherical(icosahedron_design())),
        "clifford" => Ok(Design::Unitary(
            designs::clifford_group_1q().map_err(internal)?,
        )),
        "sl2f5" => Ok(Design::Unitary(designs::sl2f5_design().map_err(internal)?)),
        other => Err(usage(format!(
            "unknown design '{other}'; known: octahedron, icosahedron, clifford, sl2f5"
        ))),
    }
}

fn resolve_design(name: Option<&str>, file: Option<&Path>) -> Result<Design, Failure> {
    match (name, file) {
        (Some(n), None) => built_in_design(n),
        (None, Some(p)) => load_design(p).map_err(|e| verify_fail(e.to_string())),
        _ => Err(usage("give exactly one of a design name or --file")),
    }
}

fn run_design(cmd: DesignCmd) -> Result<(), Failure> {
    match cmd {
        DesignCmd::Build { name, out } => {
            let design = built_in_design(&name)?;
            match &design {
                Design::Spherical(s) => {
                    println!("{}: {} points, strength {}", s.name, s.len(), s.strength)
                }
                Design::Unitary(u) => {
                    if u.name == "sl2f5" {
                        println!("{}: 120 group elements -> {} unitaries, strength {}",
                            u.name, u.len(), u.strength);
                    } else {
                        println!("{}: {} unitaries, strength {}", u.name, u.len(), u.strength);
                    }
                }
            }
            if let Some(path) = out {
                save_design(&design, &path).map_err(internal)?;
                println!("saved to {}", path.display());
            }
            Ok(())
        }
        DesignCmd::Verify { name, file, strength } => {
            let design = resolve_design(name.as_deref(), file.as_deref())?;
            let (label, points, tol) = match &design {
                Design::Spherical(s) => (s.name.clone(), s.points.clone(), 1e-10),
                // a unitary design is checked through its projected point set
                Design::Unitary(u) => {
                    let p = project_to_sphere(u);
                    (u.name.clone(), p.points, 1e-8)
                }
            };
            let check = verify_spherical_design(&points, strength, tol);
            println!(
                "{label} at strength {strength}: {} (max deviation {:.3e})",
                if check.pass { "pass" } else { "FAIL" },
                check.max_deviation
            );
            if check.pass {
                Ok(())
            } else {
                Err(verify_fail(format!(
                    "{label} fails the design property at strength {strength}"
                )))
            }
        }
        DesignCmd::Project { name, file, out } => {
            let design = resolve_design(name.as_deref(), file.as_deref())?;
            let sphere: SphericalDesign = match &design {
                Design::Spherical(s) => s.clone(),
                Design::Unitary(u) => project_to_sphere(u),
            };
            println!("{}: {} points", sphere.name, sphere.len());
            if let Some(path) = out {
                let mut manifest = RunManifest::new(None);
                let rows: Vec<Vec<String>> = sphere
                    .points
                    .iter()
                    .map(|p| vec![fmt(p.x), fmt(p.y), fmt(p.z)])
                    .collect();
                write_csv(&mut manifest, &path, &["x", "y", "z"], &rows).map_err(internal)?;
                manifest.write().map_err(internal)?;
            } else {
                for p in &sphere.points {
                    println!("{} {} {}", fmt(p.x), fmt(p.y), fmt(p.z));
                }
            }
            Ok(())
        }
        DesignCmd::Show { name } => {
            let design = built_in_design(&name)?;
            println!("{}", design_json(&design));
            Ok(())
        }
    }
}

fn run_moments(a: MomentsArgs) -> Result<(), Failure> {
    let parsed = parse_state(&a.state).map_err(usage)?;
    let set: MomentSet = match a.engine.as_str() {
        "design" => {
            let t = CorrelationTensor::from_state(&parsed.rho);
            moments_design(&t).map_err(internal)?
        }
        "mc" => {
            let t = CorrelationTensor::from_state(&parsed.rho);
            moments_mc(&t, a.samples, a.seed).map_err(internal)?
        }
        "monomial" => {
            let t = CorrelationTensor::from_state(&parsed.rho);
            moments_monomial(&t).map_err(internal)?
        }
        "bd" => {
            let params = parsed
                .bd
                .ok_or_else(|| usage("--engine bd needs a bd:c1,c2,c3 state"))?;
            bd_moments(&params)
        }
        other => {
            return Err(usage(format!(
                "unknown engine '{other}'; known: design, mc, monomial, bd"
            )))
        }
    };
    println!("{}", serde_json::to_string_pretty(&set).unwrap());
    Ok(())
}

fn run_fig2a(a: Fig2aArgs) -> Result<(), Failure> {
    if a.points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    let header = ["label", "r2", "f_lb", "f_ub", "f_lb_sep", "f_ub_ent", "r4"];
    let mut rows = Vec::new();
    for i in 0..=a.points {
        let r2 = i as f64 / a.points as f64 / 3.0;
        rows.push(vec![
            String::new(),
            fmt(r2),
            fmt(criteria::f_lb(r2).map_err(internal)?),
            fmt(criteria::f_ub(r2).map_err(internal)?),
            fmt(criteria::f_lb_sep(r2).map_err(internal)?),
            fmt(criteria::f_ub_ent(r2).map_err(internal)?),
            String::new(),
        ]);
    }
    let mut anchor = |label: &str, r2: f64, r4: f64| {
        rows.push(vec![
            label.to_string(),
            fmt(r2),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            fmt(r4),
        ]);
    };
    anchor("A", 0.0, 0.0);
    anchor("B", 1.0 / 9.0, 1.0 / 25.0);
    anchor("C", 1.0 / 3.0, 1.0 / 5.0);
    let ico = icosahedron_design();
    for (i, n) in (3u64..=7).enumerate() {
        let t = states::dicke_marginal_tensor(n, 2).map_err(internal)?;
        let r2 = moment_design(&t, 2, &ico).map_err(internal)?;
        let r4 = moment_design(&t, 4, &ico).map_err(internal)?;
        anchor(&format!("D{}", i + 1), r2, r4);
    }
    let mut manifest = RunManifest::new(None);
    write_csv(&mut manifest, &a.out, &header, &rows).map_err(internal)?;
    manifest.write().map_err(internal)?;
    Ok(())
}

fn run_fig2b(a: Fig2bArgs) -> Result<(), Failure> {
    let header = ["N", "k", "r2", "r4", "detected", "margin"];
    let ico = icosahedron_design();
    let mut rows = Vec::new();
    for n in 2..=a.nmax {
        for k in 0..=n / 2 {
            let t = states::dicke_marginal_tensor(n, k).map_err(internal)?;
            let r2 = moment_design(&t, 2, &ico).map_err(internal)?;
            let r4 = moment_design(&t, 4, &ico).map_err(internal)?;
            let v = criterion_f(r2, r4).map_err(internal)?;
            rows.push(vec![
                n.to_string(),
                k.to_string(),
                fmt(r2),
                fmt(r4),
                ((v.verdict == Verdict::Entangled) as u8).to_string(),
                fmt(v.margin),
            ]);
        }
    }
    let mut manifest = RunManifest::new(None);
    write_csv(&mut manifest, &a.out, &header, &rows).map_err(internal)?;
    manifest.write().map_err(internal)?;
    Ok(())
}

/// (r2, r4) of a dense state via the exact design engines.
fn state_moments(rho: &DensityMatrix) -> Result<(f64, f64), Failure> {
    let t = CorrelationTensor::from_state(rho);
    let r2 = t.norm_sqr() / 3.0_f64.powi(rho.nqubits() as i32);
    let r4 = moment_design(&t, 4, &icosahedron_design()).map_err(internal)?;
    Ok((r2, r4))
}

fn run_fig3a(a: Fig3aArgs) -> Result<(), Failure> {
    if !(2..=6).contains(&a.n) {
        return Err(usage("--n must be in 2..=6"));
    }
    let mut rng = seeded_rng(a.seed);
    let header = ["label", "r2", "r4"];
    let mut rows = Vec::new();
    for _ in 0..a.count {
        let rho = match a.class.as_str() {
            "mixed" => random_density_matrix(a.n, &mut rng),
            "fullysep" => random_separable_mixture(a.n, 2 * a.n, &mut rng),
            "wclass" => random_mixed_wclass(a.n, 2 * a.n, &mut rng),
            other => {
                return Err(usage(format!(
                    "unknown class '{other}'; known: mixed, fullysep, wclass"
                )))
            }
        }
        .map_err(internal)?;
        let (r2, r4) = state_moments(&rho)?;
        rows.push(vec![String::new(), fmt(r2), fmt(r4)]);
    }
    // anchors: maximally mixed, product, |0..0> (x) Bell, W, GHZ
    let mut anchor = |label: &str, r2: f64, r4: f64| {
        rows.push(vec![label.to_string(), fmt(r2), fmt(r4)]);
    };
    anchor("A", 0.0, 0.0);
    anchor(
        "B",
        3.0_f64.powi(-(a.n as i32)),
        5.0_f64.powi(-(a.n as i32)),
    );
    if a.n >= 3 {
        // bi-separable |0>^(N-2) (x) |Bell>: moments factor over the cut,
        // and a Bell pair contributes (1/3, 1/5)
        anchor(
            "C",
            3.0_f64.powi(-(a.n as i32 - 1)),
            5.0_f64.powi(-(a.n as i32 - 1)),
        );
    }
    let (wr2, wr4) = state_moments(&states::w_state(a.n).map_err(internal)?)?;
    anchor("D", wr2, wr4);
    let (gr2, gr4) = state_moments(&states::ghz(a.n).map_err(internal)?)?;
    anchor("E", gr2, gr4);

    let mut manifest = RunManifest::new(Some(a.seed));
    write_csv(&mut manifest, &a.out, &header, &rows).map_err(internal)?;
    manifest.write().map_err(internal)?;
    Ok(())
}

fn line_params_for(n: usize, seed: u64) -> Result<WClassCriterionParams, Failure> {
    if let Some(p) = WClassCriterionParams::shipped(n as u32) {
        return Ok(p);
    }
    compute_line_params(n, seed).map_err(internal)
}

fn run_fig3b(a: Fig3bArgs) -> Result<(), Failure> {
    if !(3..=6).contains(&a.nmax) {
        return Err(usage("--nmax must be in 3..=6"));
    }
    let header = [
        "N",
        "p_star_r2",
        "p_star_line",
        "theta_star_r2",
        "theta_star_line",
    ];
    let mut rows = Vec::new();
    for n in 3..=a.nmax {
        let params = line_params_for(n, a.seed.wrapping_add(n as u64))?;
        let cell = |r: randcorr::Result<randcorr::witness::ThresholdResult>| match r {
            Ok(t) => fmt(t.threshold),
            Err(_) => String::new(),
        };
        rows.push(vec![
            n.to_string(),
            cell(noise_threshold(&params, CriterionKind::R2Only)),
            cell(noise_threshold(&params, CriterionKind::Line)),
            cell(amplitude_threshold(&params, CriterionKind::R2Only)),
            cell(amplitude_threshold(&params, CriterionKind::Line)),
        ]);
    }
    let mut manifest = RunManifest::new(Some(a.seed));
    write_csv(&mut manifest, &a.out, &header, &rows).map_err(internal)?;
    manifest.write().map_err(internal)?;
    Ok(())
}

fn run_scan_bd(a: ScanBdArgs) -> Result<(), Failure> {
    let mut rng = seeded_rng(a.seed);
    let mut f_sep_flagged = 0u64;
    let mut f_ent_detected = 0u64;
    let mut f_ent_missed = 0u64;
    let mut f_sep_passed = 0u64;
    let mut r6_agree = 0u64;
    let mut r6_disagree = 0u64;
    let mut r6_band = 0u64;
    for _ in 0..a.count {
        // flat Dirichlet eigenvalues -> uniform over physical BD states
        let lam = dirichlet_flat(4, &mut rng);
        let c = BellDiagonalParams::new(
            lam[1] + lam[2] - lam[0] - lam[3],
            lam[1] + lam[3] - lam[0] - lam[2],
            lam[2] + lam[3] - lam[0] - lam[1],
        );
        let m = bd_moments(&c);
        let sep = c.l1_norm() <= 1.0;
        let f = criterion_f(m.r2, m.r4).map_err(internal)?;
        match (sep, f.verdict == Verdict::Entangled) {
            (true, true) => f_sep_flagged += 1,
            (true, false) => f_sep_passed += 1,
            (false, true) => f_ent_detected += 1,
            (false, false) => f_ent_missed += 1,
        }
        if (c.l1_norm() - 1.0).abs() <= 1e-8 {
            r6_band += 1;
        } else {
            let v = criterion_r6(m.r2, m.r4, m.r6.unwrap());
            let agree = (v.verdict == Verdict::Separable) == sep;
            if agree {
                r6_agree += 1;
            } else {
                r6_disagree += 1;
            }
        }
    }
    let summary = serde_json::json!({
        "count": a.count,
        "seed": a.seed,
        "criterion_f": {
            "separable_flagged": f_sep_flagged,
            "separable_passed": f_sep_passed,
            "entangled_detected": f_ent_detected,
            "entangled_missed": f_ent_missed,
        },
        "criterion_r6": {
            "agree": r6_agree,
            "disagree": r6_disagree,
            "boundary_band": r6_band,
        },
    });
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    if f_sep_flagged > 0 || r6_disagree > 0 {
        return Err(verify_fail(
            "criterion soundness violated on sampled Bell-diagonal states",
        ));
    }
    Ok(())
}
