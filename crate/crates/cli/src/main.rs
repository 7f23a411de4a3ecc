mod groupfile;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfusion_core::catalog::{self, GroupExpr};
use pfusion_core::fusion::FusionSystem;
use pfusion_core::group::factorize;
use pfusion_core::local::{p_rank, sylow_containing};
use pfusion_core::verify::{self, AgreementFamily, ReportFile, VerificationReport};
use pfusion_core::{Error, Group, GroupMap, Limits, Subgroup};

use groupfile::GroupFile;

/// Finite groups, fusion systems and control-of-fusion checks.
#[derive(Parser)]
#[command(name = "pfusion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read a group file and print a summary.
    Build { file: PathBuf },
    /// Run a check on given groups, or on the whole catalog with --sweep.
    Check(CheckArgs),
    /// List or emit bundled groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print every bundled group expression.
    List,
    /// Write one bundled group as a group file.
    Emit {
        name: String,
        #[arg(long, value_enum, default_value = "cayley")]
        kind: EmitKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitKind {
    Cayley,
    Expr,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Elementary abelian for odd p, abelian of exponent at most 4 for p = 2.
    Small,
    /// Elementary abelian at every prime.
    Elementary,
}

#[derive(Args)]
struct CheckArgs {
    /// control, theorem12, theorem14, saturation, thompson, lemma-small,
    /// main-lemma, sylowiso, extraspecial-note, rep-count or p2-identity.
    id: String,
    /// Subgroup of G (see the README for the accepted forms).
    #[arg(long = "H")]
    h: Option<String>,
    /// Ambient group.
    #[arg(long = "G")]
    g: Option<String>,
    /// Source group for rep-count.
    #[arg(long = "A")]
    a: Option<String>,
    /// Prime; restricts a sweep to this prime when given
    #[arg(long)]
    p: Option<u32>,
    /// Rank for lemma-small (default: 1).
    #[arg(long)]
    n: Option<u32>,
    /// Run over the bundled catalog instead of the given groups.
    #[arg(long, value_parser = ["catalog"])]
    sweep: Option<String>,
    /// Agreement family for theorem12.
    #[arg(long, value_enum, default_value = "small")]
    family: FamilyArg,
    /// For theorem14: search for examples bijective one rank below rk_p(G).
    #[arg(long)]
    gap: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero elapsed times so repeated runs are byte-identical.
    #[arg(long)]
    stable: bool,
    /// Cap on subgroup lattice size (default 20000)
    #[arg(long)]
    max_subgroups: Option<usize>,
    /// Cap on constructed group order; also replaces the gn/hn cap (defaults 1000 and 1200)
    #[arg(long)]
    max_order: Option<usize>,
    /// Cap on stored fusion-system morphisms (default 500000)
    #[arg(long)]
    max_morphisms: Option<usize>,
    /// Per-instance time budget for sweeps.
    #[arg(long)]
    budget_secs: Option<u64>,
}

pub enum CliError {
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap() => 3,
            CliError::Core(Error::InvariantViolation(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { file } => cmd_build(&file),
        Command::Check(args) => cmd_check(&args),
        Command::Catalog { action } => cmd_catalog(action),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_build(file: &Path) -> Result<u8, CliError> {
    let limits = Limits::default();
    let g = GroupFile::read(file)?.build(&limits)?;
    let whole = Subgroup::whole(&g);
    println!("name: {}", g.name());
    println!("order: {}", g.order());
    println!("exponent: {}", whole.exponent());
    println!("center: {}", whole.center().order());
    for (p, _) in factorize(g.order() as u64) {
        println!("{p}-rank: {}", p_rank(&g, p)?);
    }
    Ok(0)
}

fn cmd_catalog(action: CatalogAction) -> Result<u8, CliError> {
    match action {
        CatalogAction::List => {
            for name in catalog::list() {
                println!("{name}");
            }
        }
        CatalogAction::Emit { name, kind, out } => {
            let expr = GroupExpr::parse(&name)?;
            let file = match kind {
                EmitKind::Cayley => GroupFile::cayley(&*catalog::build(&expr)?),
                EmitKind::Expr => GroupFile::expr(&expr),
            };
            let text = serde_json::to_string(&file).expect("group files serialize") + "\n";
            write_output(out.as_ref(), &text)?;
        }
    }
    Ok(0)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn limits_of(args: &CheckArgs) -> Limits {
    let mut l = Limits::default();
    if let Some(x) = args.max_subgroups {
        l.max_subgroups = x;
    }
    if let Some(x) = args.max_order {
        l.max_order = x;
        l.max_order_gn = x;
    }
    if let Some(x) = args.max_morphisms {
        l.max_morphisms = x;
    }
    if let Some(x) = args.budget_secs {
        l.budget = Duration::from_secs(x);
    }
    l
}

const CHECK_IDS: &[&str] = &[
    "control",
    "theorem12",
    "theorem14",
    "saturation",
    "thompson",
    "lemma-small",
    "main-lemma",
    "sylowiso",
    "extraspecial-note",
    "rep-count",
    "p2-identity",
];

fn cmd_check(args: &CheckArgs) -> Result<u8, CliError> {
    if !CHECK_IDS.contains(&args.id.as_str()) {
        return Err(CliError::Input(format!(
            "unknown check id {:?}; expected one of {}",
            args.id,
            CHECK_IDS.join(", ")
        )));
    }
    let limits = limits_of(args);
    let mut file = if args.sweep.is_some() {
        let id = match (args.id.as_str(), args.family, args.gap) {
            ("theorem12", FamilyArg::Elementary, _) => "theorem12-elementary-only",
            ("theorem14", _, true) => "theorem14-gap",
            (id, _, _) => id,
        };
        verify::sweep(id, args.p, &limits)?
    } else {
        ReportFile::new(single_check(args, &limits)?, Vec::new())
    };
    if args.stable {
        file.stabilize();
    }
    let text = serde_json::to_string_pretty(&file).expect("reports serialize") + "\n";
    write_output(args.out.as_ref(), &text)?;
    Ok(if file.violations() > 0 { 1 } else { 0 })
}

fn need<'a>(v: &'a Option<String>, flag: &str, id: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Input(format!("{id} needs --{flag}")))
}

fn need_p(args: &CheckArgs) -> Result<u32, CliError> {
    args.p.ok_or_else(|| CliError::Input(format!("{} needs --p", args.id)))
}

/// `G` and `H ≤ G` from the flags; `H` defaults to `G`.
fn pair(args: &CheckArgs, limits: &Limits) -> Result<(Arc<Group>, Subgroup), CliError> {
    let g = spec::group(need(&args.g, "G", &args.id)?, limits)?;
    let h = match &args.h {
        Some(h) => spec::subgroup(h, &g, limits)?,
        None => Subgroup::whole(&g),
    };
    Ok((g, h))
}

fn single_check(args: &CheckArgs, limits: &Limits) -> Result<Vec<VerificationReport>, CliError> {
    let id = args.id.as_str();
    let reports = match id {
        "control" => {
            let (g, h) = pair(args, limits)?;
            vec![verify::control_p_fusion(&h, &g, need_p(args)?, limits)?]
        }
        "theorem12" => {
            let (g, h) = pair(args, limits)?;
            let (fh, fg) = verify::sylow_pair_systems(&h, &Subgroup::whole(&g), need_p(args)?, limits)?;
            let which = match args.family {
                FamilyArg::Small => AgreementFamily::SmallExponent,
                FamilyArg::Elementary => AgreementFamily::ElementaryOnly,
            };
            vec![verify::small_abelian_control_instance(&fg, &fh, which)?]
        }
        "theorem14" => {
            let (g, h) = pair(args, limits)?;
            let phi = GroupMap::inclusion(&h, &Subgroup::whole(&g))?;
            let p = need_p(args)?;
            if args.gap {
                vec![verify::rank_gap_instance(&phi, p, limits)?]
            } else {
                vec![verify::rep_bijection_control_instance(&phi, p, limits)?]
            }
        }
        "lemma-small" => {
            let (g, h) = pair(args, limits)?;
            let phi = GroupMap::inclusion(&h, &Subgroup::whole(&g))?;
            vec![verify::rep_rank_equivalence_instance(&phi, need_p(args)?, args.n.unwrap_or(1), limits)?]
        }
        "saturation" => {
            let (g, h) = pair(args, limits)?;
            let p = need_p(args)?;
            let s = sylow_containing(&h, p, &Subgroup::trivial(&g));
            let fs = FusionSystem::transporter(p, &s, &h, limits)?;
            vec![pfusion_core::fusion::check_saturation(&fs)?]
        }
        "thompson" => {
            let (_, h) = pair(args, limits)?;
            vec![verify::thompson_check(&h, limits)?]
        }
        "p2-identity" => {
            let (_, h) = pair(args, limits)?;
            vec![verify::p2_identity_check(&h)]
        }
        "main-lemma" => {
            let (g, h) = pair(args, limits)?;
            let (fh, fg) = verify::sylow_pair_systems(&h, &Subgroup::whole(&g), need_p(args)?, limits)?;
            verify::aut_generation_all(&fg, &fh)?
        }
        "sylowiso" => {
            let (g, h) = pair(args, limits)?;
            let p = need_p(args)?;
            let t = sylow_containing(&h, p, &Subgroup::trivial(&g));
            let s = sylow_containing(&Subgroup::whole(&g), p, &t);
            let f = FusionSystem::transporter(p, &s, &Subgroup::whole(&g), limits)?;
            let fsub = FusionSystem::transporter(p, &t, &h, limits)?;
            vec![verify::centric_agreement_instance(&f, &fsub)?]
        }
        "extraspecial-note" => vec![verify::extraspecial_detection_check(need_p(args)?, limits)?],
        "rep-count" => {
            let a = spec::group(need(&args.a, "A", id)?, limits)?;
            let g = spec::group(need(&args.g, "G", id)?, limits)?;
            vec![verify::rep_count_check(&Subgroup::whole(&a), &Subgroup::whole(&g), limits)?]
        }
        _ => unreachable!("check ids are validated"),
    };
    Ok(reports)
}
