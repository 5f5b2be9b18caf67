mod output;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confighom::bounds::{
    bcm_e1_assemble, cohdim_bound, cohdim_from_r_k, connectivity_formulas, e1_connectivity_bound,
    mod2_cohdim_disc, stability_ranges, surface_e1_profile, BoundResult, ConnectivityFormula,
    StabilityKind,
};
use confighom::braidduality::{braid_cohomology, SpaceDescriptor};
use confighom::corpus::{run_verification, Registry};
use confighom::spsym::{sp_homology, Preset, TwoComplexPresentation};
use confighom::tsp::{circle_skeleton, reduced_tp_circle, tp_circle_complex};
use confighom::{homology, relative_homology, Coefficients, Error, GradedGroup};

use output::{Format, Grading};

#[derive(Parser, Debug)]
#[command(name = "confighom", version, about = "Exact homology of symmetric products, truncated products and braid spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Homology of a symmetric or truncated product.
    #[command(subcommand)]
    Homology(HomologyTarget),
    /// Cohomology of a braid space through duality.
    Braid(BraidArgs),
    /// Evaluate a connectivity, dimension or stability bound.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Recompute the known-values registry and run the invariant checks.
    Verify,
    /// Reformat a stored JSON table (`-` reads stdin).
    Table { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum HomologyTarget {
    /// `SP^n(X)` for a two-complex given by preset or presentation file.
    Sp(SpArgs),
    /// `TP^n(S^1)`, optionally relative to a lower skeleton.
    Tp(TpArgs),
}

#[derive(Args, Debug)]
struct SpArgs {
    /// Built-in presentation: point, s2, circle, wedge:<w>.
    #[arg(long, conflicts_with = "presentation", required_unless_present = "presentation")]
    preset: Option<String>,
    /// Presentation JSON file.
    #[arg(long)]
    presentation: Option<PathBuf>,
    #[arg(short = 'n', long)]
    n: usize,
    /// The quotient `SP^n / SP^{n-1}` instead of `SP^n`.
    #[arg(long)]
    reduced: bool,
    #[arg(long, default_value = "Z")]
    coeffs: String,
}

#[derive(Args, Debug)]
struct TpArgs {
    /// Only the circle has a built-in model.
    #[arg(long, default_value = "circle")]
    preset: String,
    #[arg(short = 'n', long)]
    n: usize,
    /// Homology relative to `TP^j`.
    #[arg(long, conflicts_with = "reduced")]
    relative_to: Option<i64>,
    /// Reduced table of `TP^n / TP^{n-1}`.
    #[arg(long)]
    reduced: bool,
    #[arg(long, default_value = "Z")]
    coeffs: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BraidPreset {
    ClosedCircle,
    PuncturedCircle,
}

#[derive(Args, Debug)]
struct BraidArgs {
    #[arg(long, value_enum, conflicts_with = "descriptor", required_unless_present = "descriptor")]
    preset: Option<BraidPreset>,
    /// Space descriptor JSON file.
    #[arg(long)]
    descriptor: Option<PathBuf>,
    /// Number of points.
    #[arg(short = 'k', long)]
    k: usize,
    #[arg(long, default_value = "F2")]
    coeffs: String,
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Cohomological dimension `(d-1)k - r`, plus one when closed.
    Cohdim {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Punctures or boundary present.
        #[arg(long)]
        punctured: bool,
    },
    /// Named connectivity statement.
    Connectivity {
        #[arg(value_parser = ["nakaoka", "reduced_sp", "reduced_sp_2complex", "R_lower"])]
        name: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        w: Option<usize>,
        /// Closed unpunctured case of R_lower.
        #[arg(long)]
        closed: bool,
    },
    /// Cohomological dimension `dk - R_k - 1` from the pair connectivity.
    ConR {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        r_k: i64,
    },
    /// Mod-2 cohomological dimension of braid spaces of a disc.
    Mod2Disc {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Homological stability range.
    Stability {
        /// arnold, riemann_surface, scanning:arnold or scanning:riemann_surface.
        kind: String,
        #[arg(long)]
        k: usize,
    },
    /// Both dimension bounds for braid spaces of a surface: the E1 route and main3.
    Surface {
        #[arg(long)]
        k: usize,
        /// Number of one-cells of the quotient two-complex.
        #[arg(long, default_value_t = 1)]
        w: usize,
        /// Connectivity of the quotient.
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long)]
        closed: bool,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Verification,
    Rejected(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_rejected_hypothesis() {
            Failure::Rejected(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn coeffs(s: &str) -> Result<Coefficients, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("--coeffs: {e}")))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn need(v: Option<usize>, flag: &str, name: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{name} needs --{flag}")))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let format = cli.format;
    match cli.verb {
        Verb::Homology(HomologyTarget::Sp(a)) => {
            let p = match (&a.preset, &a.presentation) {
                (Some(name), _) => name.parse::<Preset>()?.presentation(),
                (None, Some(path)) => TwoComplexPresentation::from_json(&read_input(path)?)?,
                (None, None) => unreachable!("clap requires one of --preset, --presentation"),
            };
            let h = sp_homology(&p, a.n, a.reduced, coeffs(&a.coeffs)?)?;
            output::table(out, &h, Grading::Homology, format)?;
        }
        Verb::Homology(HomologyTarget::Tp(a)) => {
            if a.preset != "circle" {
                return Err(Error::UnsupportedSpace {
                    reason: format!("no truncated-product cell model for `{}`", a.preset),
                    needed: "the circle preset, or reduced tables through `braid --descriptor` with quotient_model user:<path>".into(),
                }
                .into());
            }
            let c = coeffs(&a.coeffs)?;
            let h = if a.reduced {
                reduced_tp_circle(a.n, c)?.into_table()
            } else if let Some(j) = a.relative_to {
                relative_homology(&tp_circle_complex(a.n), &circle_skeleton(j.min(a.n as i64)), c)?
            } else {
                homology(&tp_circle_complex(a.n), c)?
            };
            output::table(out, &h, Grading::Homology, format)?;
        }
        Verb::Braid(a) => {
            let desc = match (a.preset, &a.descriptor) {
                (Some(BraidPreset::ClosedCircle), _) => SpaceDescriptor::closed_circle(),
                (Some(BraidPreset::PuncturedCircle), _) => SpaceDescriptor::punctured_circle(),
                (None, Some(path)) => SpaceDescriptor::from_json(&read_input(path)?)?,
                (None, None) => unreachable!("clap requires one of --preset, --descriptor"),
            };
            let h = braid_cohomology(&desc, a.k, coeffs(&a.coeffs)?)?;
            output::table(out, &h, Grading::Cohomology, format)?;
        }
        Verb::Bounds(cmd) => {
            let results = bounds(cmd)?;
            output::bounds(out, &results, format)?;
        }
        Verb::Verify => {
            let report = run_verification(&Registry::from_env()?);
            output::report(out, &report, format)?;
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Verb::Table { file } => {
            let text = read_input(&file)?;
            let t: GradedGroup =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            output::table(out, &t, Grading::Homology, format)?;
        }
    }
    Ok(())
}

fn bounds(cmd: BoundsCmd) -> Result<Vec<BoundResult>, Failure> {
    let one = |r: confighom::Result<BoundResult>| -> Result<Vec<BoundResult>, Failure> { Ok(vec![r?]) };
    match cmd {
        BoundsCmd::Cohdim { d, k, r, punctured } => one(cohdim_bound(d, k, r, punctured)),
        BoundsCmd::Connectivity { name, k, n, r, w, closed } => {
            let f = match name.as_str() {
                "nakaoka" => ConnectivityFormula::Nakaoka { r: need(r, "r", &name)?, k: need(k, "k", &name)? },
                "reduced_sp" => ConnectivityFormula::ReducedSp { n: need(n, "n", &name)?, r: need(r, "r", &name)? },
                "reduced_sp_2complex" => {
                    ConnectivityFormula::ReducedSp2Complex { n: need(n, "n", &name)?, w: need(w, "w", &name)? }
                }
                _ => ConnectivityFormula::RLower { k: need(k, "k", &name)?, r: need(r, "r", &name)?, closed },
            };
            one(connectivity_formulas(f))
        }
        BoundsCmd::ConR { d, k, r_k } => one(cohdim_from_r_k(d, k, r_k)),
        BoundsCmd::Mod2Disc { d, k } => one(mod2_cohdim_disc(d, k)),
        BoundsCmd::Stability { kind, k } => {
            let kind: StabilityKind = kind.parse()?;
            one(stability_ranges(kind, k))
        }
        BoundsCmd::Surface { k, w, r, closed } => {
            let field = Coefficients::F2;
            let (x, sx) = surface_e1_profile(w, k, field);
            let e1 = bcm_e1_assemble(&x, &sx, k, field)?;
            let e1_bounds = e1_connectivity_bound(&e1, k, closed)?;
            let mut out = vec![e1_bounds.connectivity, e1_bounds.cohdim];
            if k >= 2 {
                out.push(cohdim_bound(2, k, r, !closed)?);
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            1
        }
        Err(Failure::Rejected(e)) => {
            match e.anchor() {
                Some(anchor) => eprintln!("rejected (anchor {anchor}): {e}"),
                None => eprintln!("rejected: {e}"),
            }
            3
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            2
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
