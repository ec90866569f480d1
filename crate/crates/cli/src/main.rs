use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use subshift_core::examples::{find_example, named_examples};
use subshift_core::lang::{
    check_convergence_with_budget, resolution_distance_with_budget, window_language_with_budget,
};
use subshift_core::one_dim::{
    build_graph, is_transitive, isolated_verdict_1d, maximal_subsystems, maximality_decomposition,
    maximality_type, star_check, subsystem_lattice, IsolationVerdict,
};
use subshift_core::robinson::{
    check_local_rules, locate_structure, parse_patch, render, serialize_patch, tile_legend, Quadrant,
    RenderFormat, SupertileGenerator, SupertileId, DEFAULT_ORDER_CAP,
};
use subshift_core::space::{build_ladder_examples, cb_ladder_from, distance_matrix_with_budget, load_family};
use subshift_core::times23::{
    lambda_decode, lambda_encode, multiplication_compatibility_check, square_from_corners,
    squares_with_corners, verify_diagonal_determinism, Digit,
};
use subshift_core::{parse_spec, Error, Pattern, ShiftSpec, Window, DEFAULT_BUDGET};

const EXIT_CLAIM: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Subshifts of finite type: window languages, distances, 1D isolation,
/// Robinson supertiles, the x2x3 shift and finite Cantor-Bendixson ladders.
///
/// Exit codes: 0 success, 1 claim or audit failure, 2 usage or input error,
/// 3 search budget exhausted.
#[derive(Parser, Debug)]
#[command(name = "subshift", version)]
struct Cli {
    /// Node budget for window-language searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Machine-readable `key value` lines instead of prose.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Window language of a spec on a centered or corner box.
    Lang(LangArgs),
    /// Resolution distance between two specs.
    Dist(DistArgs),
    /// Convergence of a sequence of specs towards a limit spec.
    Converge(ConvergeArgs),
    /// Isolation verdict for a one-dimensional spec.
    Iso1d(Iso1dArgs),
    /// Robinson supertiles, audits and renders.
    #[command(subcommand)]
    Robinson(RobinsonCommand),
    /// The x2x3 shift: squares, diagonal determinism, encodings.
    #[command(subcommand)]
    Times23(Times23Command),
    /// Finite families of shifts.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Named example shifts and their claims.
    #[command(subcommand)]
    Examples(ExamplesCommand),
}

#[derive(Args, Debug)]
struct LangArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Box radius: side 2R+1 centered, or side R+1 from the origin with --corner.
    #[arg(long)]
    radius: u32,
    #[arg(long, default_value_t = 1)]
    margin: u32,
    /// Use the corner box [0, R]^d instead of the centered one.
    #[arg(long)]
    corner: bool,
    /// Print every pattern, one per line, cells in window order.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct DistArgs {
    a: PathBuf,
    b: PathBuf,
    /// Largest radius compared.
    #[arg(long)]
    radius: u32,
    #[arg(long, default_value_t = 1)]
    margin: u32,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long)]
    limit: PathBuf,
    /// Members of the sequence, in order.
    #[arg(required = true)]
    sequence: Vec<PathBuf>,
    #[arg(long)]
    radius: u32,
    #[arg(long, default_value_t = 1)]
    margin: u32,
}

#[derive(Args, Debug)]
struct Iso1dArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Largest word length tried.
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Write the word graph used for the verdict in DOT format.
    #[arg(long)]
    emit_dot: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PatchFormat {
    Ascii,
    Svg,
    Pgm,
    /// `robipatch v1` text, readable by `robinson audit`.
    Patch,
}

#[derive(Subcommand, Debug)]
enum RobinsonCommand {
    /// Generate and audit a supertile.
    Supertile {
        #[arg(long, default_value = "sw")]
        quadrant: String,
        #[arg(long)]
        order: u32,
        /// Output file; the format follows the extension (.svg, .pgm, .txt for patch text).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<PatchFormat>,
    },
    /// Check rules 1-4 on a patch file and report its hierarchy.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Render a patch file.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<PatchFormat>,
    },
    /// Print the tile table.
    Legend,
}

#[derive(Subcommand, Debug)]
enum Times23Command {
    /// Diagonal determinism over all 6^m diagonal words.
    Verify {
        #[arg(long)]
        m: usize,
    },
    /// The 2x2 square with given south west and north east corners.
    Square {
        #[arg(long, num_args = 2, value_names = ["SW", "NE"])]
        corners: Vec<Digit>,
    },
    /// Fill the square whose diagonal is the given base-6 digits.
    Encode {
        /// Digits, e.g. 0153.
        #[arg(long)]
        digits: String,
    },
    /// Doubling and tripling compatibility of decoded diagonals.
    Compat {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SpaceCommand {
    /// Distance matrix and Cantor-Bendixson ladder of a family file.
    Derive {
        #[arg(long)]
        family: PathBuf,
        /// Overrides the file's resolution.
        #[arg(long)]
        resolution: Option<u32>,
        /// Overrides the file's margin.
        #[arg(long)]
        margin: Option<u32>,
    },
    /// Run the built-in ladder presets.
    Presets {
        /// Only this preset.
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesCommand {
    List,
    /// Run an example's claims; all examples when no name is given.
    Check { name: Option<String> },
    /// Render an example's sample configuration on B_R.
    Render {
        name: String,
        #[arg(long)]
        window: u32,
        #[arg(long, default_value = "ascii")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    ClaimFailed,
}

fn read_spec(path: &Path) -> anyhow::Result<ShiftSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("in {}", path.display()))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn pattern_line(p: &Pattern) -> String {
    p.cells().map(|(_, s)| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_lang(cli: &Cli, a: &LangArgs) -> anyhow::Result<Outcome> {
    let spec = read_spec(&a.spec)?;
    let window = if a.corner {
        Window::corner(spec.dim(), a.radius)
    } else {
        Window::centered(spec.dim(), a.radius)
    };
    let lang = window_language_with_budget(&spec, &window, a.margin, cli.budget)?;
    let mut out = String::new();
    if cli.porcelain {
        let _ = writeln!(out, "cells {}\nmargin {}\ncount {}\nnodes {}", window.cells().len(), a.margin, lang.len(), lang.nodes());
    } else {
        let kind = if a.corner { "corner" } else { "centered" };
        let _ = writeln!(
            out,
            "{kind} box radius {} ({} cells), margin {}: {} locally admissible patterns",
            a.radius,
            window.cells().len(),
            a.margin,
            lang.len()
        );
    }
    if a.list {
        for p in lang.patterns() {
            let _ = writeln!(out, "{}", pattern_line(&p));
        }
    }
    print!("{out}");
    Ok(Outcome::Ok)
}

fn cmd_dist(cli: &Cli, a: &DistArgs) -> anyhow::Result<Outcome> {
    let (x, y) = (read_spec(&a.a)?, read_spec(&a.b)?);
    let d = resolution_distance_with_budget(&x, &y, a.radius, a.margin, cli.budget)?;
    if cli.porcelain {
        match d.separating_radius {
            Some(s) => println!("separating_radius {s}\nvalue {}", d.value()),
            None => println!("separating_radius none\ncap {}", d.cap),
        }
    } else {
        println!("d = {d}");
    }
    Ok(Outcome::Ok)
}

fn cmd_converge(cli: &Cli, a: &ConvergeArgs) -> anyhow::Result<Outcome> {
    let limit = read_spec(&a.limit)?;
    let seq = a.sequence.iter().map(|p| read_spec(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let r = check_convergence_with_budget(&seq, &limit, a.radius, a.margin, cli.budget)?;
    if cli.porcelain {
        print!("{}", r.to_lines());
    } else {
        print!("{r}");
    }
    Ok(Outcome::Ok)
}

fn cmd_iso1d(cli: &Cli, a: &Iso1dArgs) -> anyhow::Result<Outcome> {
    let spec = read_spec(&a.spec)?;
    if spec.dim() != 1 {
        bail!(Error::InvalidArgument(format!("iso1d needs a 1D spec, got dimension {}", spec.dim())));
    }
    let verdict = isolated_verdict_1d(&spec, a.nmax)?;
    let mut out = String::new();
    let graph = match &verdict {
        IsolationVerdict::NotIsolated { n, graph, certificate } => {
            if cli.porcelain {
                let _ = writeln!(out, "verdict NotIsolated\nn {n}\ncertificate {}", certificate.describe(graph));
                let _ = writeln!(out, "certificate_valid {}", certificate.validate(graph));
            } else {
                let _ = writeln!(out, "verdict: {verdict}");
            }
            (**graph).clone()
        }
        IsolationVerdict::Isolated { nmc_from } => {
            let g = build_graph(&spec, *nmc_from)?;
            let lat = subsystem_lattice(&g)?;
            let maximals = maximal_subsystems(&lat);
            let star = star_check(&lat);
            let trans = is_transitive(&g);
            let dec = maximality_decomposition(&lat);
            if cli.porcelain {
                let _ = writeln!(out, "verdict Isolated\nn {nmc_from}");
                let _ = writeln!(out, "lattice_elements {}", lat.len());
                let _ = writeln!(out, "maximal_subsystems {}", maximals.len());
                let _ = writeln!(out, "maximality_type {}", maximality_type(&lat));
                let _ = writeln!(out, "star {}", star.holds());
                let _ = writeln!(out, "transitive {}", trans.holds());
                let _ = writeln!(out, "decomposition_conditions {}", dec.conditions_hold());
                let _ = writeln!(out, "decomposition_reproduces {}", dec.reproduces_maximals());
            } else {
                let _ = writeln!(out, "verdict: {verdict}");
                let _ = writeln!(out, "lattice: {} elements", lat.len());
                for m in &maximals {
                    let _ = writeln!(out, "  maximal: {}", lat.describe(m));
                }
                let _ = writeln!(out, "maximality type: {}", maximality_type(&lat));
                let _ = writeln!(out, "(*) property: {}", star.holds());
                let _ = writeln!(out, "transitive: {trans:?}");
                let _ = writeln!(
                    out,
                    "decomposition: conditions {}, reproduces maximal subsystems {}",
                    dec.conditions_hold(),
                    dec.reproduces_maximals()
                );
            }
            g
        }
    };
    print!("{out}");
    if let Some(path) = &a.emit_dot {
        emit(Some(path), graph.to_dot().as_bytes())?;
    }
    Ok(Outcome::Ok)
}

fn patch_format(explicit: Option<PatchFormat>, out: Option<&Path>) -> PatchFormat {
    explicit.unwrap_or_else(|| match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("svg") => PatchFormat::Svg,
        Some("pgm") => PatchFormat::Pgm,
        Some("txt") => PatchFormat::Patch,
        _ => PatchFormat::Ascii,
    })
}

fn patch_bytes(p: &subshift_core::RobinsonPatch, f: PatchFormat) -> Vec<u8> {
    match f {
        PatchFormat::Ascii => render(p, RenderFormat::Ascii),
        PatchFormat::Svg => render(p, RenderFormat::Svg),
        PatchFormat::Pgm => render(p, RenderFormat::Pgm),
        PatchFormat::Patch => serialize_patch(p).into_bytes(),
    }
}

fn cmd_robinson(cli: &Cli, c: &RobinsonCommand) -> anyhow::Result<Outcome> {
    match c {
        RobinsonCommand::Supertile { quadrant, order, out, format } => {
            let q: Quadrant = quadrant.parse()?;
            if *order > DEFAULT_ORDER_CAP {
                bail!(Error::InvalidArgument(format!("order {order} is above the cap {DEFAULT_ORDER_CAP}")));
            }
            let p = SupertileGenerator::default().get(SupertileId { quadrant: q, order: *order })?;
            let violations = check_local_rules(&p);
            emit(out.as_deref(), &patch_bytes(&p, patch_format(*format, out.as_deref())))?;
            if cli.porcelain {
                eprintln!("side {}\nviolations {}", p.width(), violations.len());
            } else {
                eprintln!("supertile {q} order {order}: {0}x{0}, {1} violations", p.width(), violations.len());
            }
            Ok(if violations.is_empty() { Outcome::Ok } else { Outcome::ClaimFailed })
        }
        RobinsonCommand::Audit { input } => {
            let text = std::fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
            let p = parse_patch(&text)?;
            let violations = check_local_rules(&p);
            let report = locate_structure(&p)?;
            if cli.porcelain {
                println!("violations {}", violations.len());
                for v in &violations {
                    println!("violation {} {} {}", v.rule, v.x, v.y);
                }
                println!("blue {}\nred {}", report.blue.len(), report.red.len());
                for (k, x, y) in &report.sites {
                    println!("site {k} {x} {y}");
                }
            } else {
                println!("{}x{} patch, {} violations", p.width(), p.height(), violations.len());
                for v in &violations {
                    println!("  {v}");
                }
                println!("{report}");
            }
            Ok(if violations.is_empty() { Outcome::Ok } else { Outcome::ClaimFailed })
        }
        RobinsonCommand::Render { input, out, format } => {
            let text = std::fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
            let p = parse_patch(&text)?;
            emit(out.as_deref(), &patch_bytes(&p, patch_format(*format, out.as_deref())))?;
            Ok(Outcome::Ok)
        }
        RobinsonCommand::Legend => {
            print!("{}", tile_legend());
            Ok(Outcome::Ok)
        }
    }
}

fn cmd_times23(cli: &Cli, c: &Times23Command) -> anyhow::Result<Outcome> {
    match c {
        Times23Command::Verify { m } => {
            let r = verify_diagonal_determinism(*m)?;
            if cli.porcelain {
                println!("m {}\nwords {}\nunique {}", r.m, r.words, r.unique);
            } else {
                println!("{r}");
            }
            Ok(if r.all_unique() { Outcome::Ok } else { Outcome::ClaimFailed })
        }
        Times23Command::Square { corners } => {
            let (k, l) = (corners[0], corners[1]);
            let count = squares_with_corners(k, l).len();
            let s = square_from_corners(k, l)?;
            if cli.porcelain {
                println!("a {}\nb {}\nc {}\nd {}\ncount {count}", s.a, s.b, s.c, s.d);
            } else {
                println!("{s}");
            }
            Ok(if count == 1 { Outcome::Ok } else { Outcome::ClaimFailed })
        }
        Times23Command::Encode { digits } => {
            let ds: Vec<Digit> = digits
                .chars()
                .map(|c| c.to_digit(6).map(|d| d as Digit))
                .collect::<Option<_>>()
                .ok_or_else(|| anyhow!(Error::InvalidArgument(format!("`{digits}` is not a base-6 word"))))?;
            let e = lambda_encode(&ds)?;
            let value = lambda_decode(&ds)?;
            if cli.porcelain {
                println!("value {value}\nunique {}", e.unique);
            } else {
                println!("lambda = {value}, filling unique: {}", e.unique);
            }
            print!("{}", e.patch);
            Ok(if e.unique { Outcome::Ok } else { Outcome::ClaimFailed })
        }
        Times23Command::Compat { m } => {
            let r = multiplication_compatibility_check(*m)?;
            if cli.porcelain {
                println!("m {}\npatches {}\nworst_east {}\nbound_east {}", r.m, r.patches, r.worst_east, r.bound_east);
                println!("worst_north {}\nbound_north {}\nfailures {}", r.worst_north, r.bound_north, r.failures.len());
            } else {
                println!("{r}");
            }
            Ok(if r.passes() { Outcome::Ok } else { Outcome::ClaimFailed })
        }
    }
}

fn cmd_space(cli: &Cli, c: &SpaceCommand) -> anyhow::Result<Outcome> {
    let show = |name: &str, fam: &subshift_core::ShiftFamily| -> anyhow::Result<()> {
        let m = distance_matrix_with_budget(fam, cli.budget)?;
        let t = cb_ladder_from(&m);
        if cli.porcelain {
            print!("{}{}", m.to_lines(), t.to_lines());
        } else {
            if !name.is_empty() {
                println!("== {name}");
            }
            print!("{m}");
            println!("{t}");
        }
        Ok(())
    };
    match c {
        SpaceCommand::Derive { family, resolution, margin } => {
            let mut fam = load_family(family)?;
            if let Some(n) = resolution {
                fam = fam.with_resolution(*n);
            }
            if let Some(m) = margin {
                fam = fam.with_margin(*m);
            }
            show("", &fam)?;
        }
        SpaceCommand::Presets { name } => {
            let presets = build_ladder_examples()?;
            let chosen: Vec<_> = presets.iter().filter(|p| name.as_deref().is_none_or(|n| n == p.name)).collect();
            if chosen.is_empty() {
                bail!(Error::InvalidArgument(format!("no preset named `{}`", name.as_deref().unwrap_or(""))));
            }
            for p in chosen {
                show(p.name, &p.family)?;
                if !cli.porcelain {
                    println!("expected: {}", p.expected);
                }
            }
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_examples(c: &ExamplesCommand) -> anyhow::Result<Outcome> {
    match c {
        ExamplesCommand::List => {
            for e in named_examples() {
                println!("{:<14} {} claims  {}", e.name, e.claims.len(), e.summary);
            }
            Ok(Outcome::Ok)
        }
        ExamplesCommand::Check { name } => {
            let examples = match name {
                Some(n) => vec![find_example(n)?],
                None => named_examples(),
            };
            let mut ok = true;
            for e in &examples {
                for r in e.check() {
                    ok &= r.passed;
                    println!("{r}");
                }
            }
            Ok(if ok { Outcome::Ok } else { Outcome::ClaimFailed })
        }
        ExamplesCommand::Render { name, window, format, out } => {
            let bytes = find_example(name)?.render(*window, format)?;
            emit(out.as_deref(), &bytes)?;
            Ok(Outcome::Ok)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Lang(a) => cmd_lang(cli, a),
        Command::Dist(a) => cmd_dist(cli, a),
        Command::Converge(a) => cmd_converge(cli, a),
        Command::Iso1d(a) => cmd_iso1d(cli, a),
        Command::Robinson(c) => cmd_robinson(cli, c),
        Command::Times23(c) => cmd_times23(cli, c),
        Command::Space(c) => cmd_space(cli, c),
        Command::Examples(c) => cmd_examples(c),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::BudgetExhausted { .. }) => EXIT_BUDGET,
        Some(Error::Defect(_)) => EXIT_CLAIM,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ClaimFailed) => ExitCode::from(EXIT_CLAIM),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
