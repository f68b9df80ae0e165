//! `steinhaus`: build, verify and search balanced figures in the orbits of
//! the Pascal-rule automaton over `Z/nZ`.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use steinhaus_core::figure::{rot120, rot240};
use steinhaus_core::idao::{idao_system_solve, idao_verify, wendt, IdaoVerdict};
use steinhaus_core::lab::{
    admissible_orders, proportion_report, verify_antisymmetric_figures, verify_base_triangles,
    verify_dat_balance, verify_elementary_triangles, verify_idao_figures, verify_universal_figures,
    FamilyParams, Offsets, OrderKind, PascalHeights, VerifyReport,
};
use steinhaus_core::search::{search_balanced, SearchKind, SearchReport, SearchSpec, Strategy};
use steinhaus_core::sequence::{universal_orbit_entry, universal_sequence};
use steinhaus_core::tetra::{pascal_tetrahedron, search_balanced_tetra, steinhaus_tetrahedron, TetraKind, Tetrahedron, TriangleSlice};
use steinhaus_core::{Figure, FiniteSeq, IapSpec, Ring, Weights};

/// `println!` that reports write failures instead of panicking.
macro_rules! out {
    ($($t:tt)*) => {
        writeln!(std::io::stdout(), $($t)*)?
    };
}

const EXIT_REFUTED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "steinhaus", version, about = "Balanced Steinhaus figures over Z/nZ")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweeps and searches.
    #[arg(long, global = true, env = "STEINHAUS_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one figure.
    Figure {
        #[command(subcommand)]
        shape: FigureCmd,
    },
    /// Derive a sequence one or more times.
    Derive {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Derivation weights, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
    /// Generating sequence of a rotated Steinhaus triangle.
    Rotate {
        #[arg(value_parser = ["120", "240"])]
        angle: String,
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Windows and orbit cells of the universal sequence.
    Universal {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Orbit row of the window.
        #[arg(long, default_value_t = 0)]
        row: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
        /// Print the closed-form cell `i,j` instead of a window.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        cell: Option<Vec<u64>>,
    },
    /// Interlaced doubly arithmetic orbits.
    Idao {
        #[command(subcommand)]
        action: IdaoCmd,
    },
    /// Exhaustive search for balanced figures.
    Search(SearchArgs),
    /// Sweep a family of figures that should all be balanced.
    Verify {
        #[command(subcommand)]
        claim: VerifyCmd,
    },
    /// Orders whose cardinality is divisible by the modulus.
    Admissible {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, value_enum, default_value_t = OrderArg::Triangle)]
        kind: OrderArg,
    },
    /// Share of admissible orders covered by the universal sequence.
    Proportions {
        #[arg(long = "mod")]
        modulus: u64,
    },
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long = "mod")]
    modulus: u64,
    /// Terms, comma separated; reduced modulo `--mod`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    seq: Vec<i64>,
}

impl SeqArgs {
    fn build(&self) -> Result<FiniteSeq> {
        Ok(FiniteSeq::modular(self.modulus, &self.seq)?)
    }
}

#[derive(Subcommand, Debug)]
enum FigureCmd {
    Triangle {
        #[command(flatten)]
        seq: SeqArgs,
    },
    Trapezoid {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        height: usize,
    },
    Pascal {
        #[command(flatten)]
        seq: SeqArgs,
    },
    PascalTrapezoid {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        height: usize,
    },
    Lozenge {
        #[command(flatten)]
        seq: SeqArgs,
    },
    Dat {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d2: i64,
        #[arg(long)]
        order: usize,
    },
    /// Tetrahedron over a triangular base, rows separated by `/`.
    Tetra {
        #[arg(long = "mod")]
        modulus: u64,
        /// Base rows, e.g. `012/34/5`; cells may be comma separated.
        #[arg(long)]
        base: String,
        /// Build the central Pascal tetrahedron instead.
        #[arg(long)]
        pascal: bool,
    },
}

#[derive(Subcommand, Debug)]
enum IdaoCmd {
    /// Rank and determinant of the circulant of binomial coefficients.
    Wendt {
        #[arg(long)]
        k: usize,
    },
    /// Integer kernel basis of the interlacing system.
    Solve {
        #[arg(long)]
        k: usize,
    },
    /// Check that an interlaced progression has a doubly arithmetic orbit.
    Verify {
        /// Omit for integer coefficients.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        firsts: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        diffs: Vec<i64>,
        #[arg(long, default_value_t = 6)]
        k1: usize,
        #[arg(long, default_value_t = 3)]
        k2: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        width: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchShape {
    Triangle,
    Trapezoid,
    Pascal,
    PascalTrapezoid,
    Lozenge,
    Tetra,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Full,
    Prefix,
    FixedPoint,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(value_enum)]
    shape: SearchShape,
    #[arg(long = "mod")]
    modulus: u64,
    /// Length of the generating sequence (base size for tetrahedra).
    #[arg(long)]
    order: usize,
    #[arg(long)]
    height: Option<usize>,
    /// Node budget.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Prefix)]
    strategy: StrategyArg,
    /// Identify each sequence with its negation.
    #[arg(long)]
    negation_halving: bool,
    #[arg(long, default_value_t = 100)]
    max_found: usize,
    /// Search Pascal tetrahedra.
    #[arg(long)]
    pascal: bool,
}

#[derive(Args, Debug)]
struct Sweep {
    #[arg(long = "mod")]
    modulus: u64,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, default_value_t = 0)]
    a: u64,
    #[arg(long, default_value_t = 1)]
    lambda: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HeightsArg {
    Complement,
    Swapped,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Doubly arithmetic triangles.
    Dat {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<usize>>,
    },
    /// Orbit of `IAP((a0,a1,a2),(d,-2d-3s,d+3s))`.
    Family {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a0: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a1: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a2: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cols: Option<Vec<i64>>,
    },
    /// Orbit of an antisymmetric window.
    Antisymmetric(Sweep),
    /// Orbit of the universal sequence.
    Universal {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        #[arg(long, value_enum, default_value_t = HeightsArg::Complement)]
        pascal_heights: HeightsArg,
    },
    /// Elementary triangles of the universal orbit.
    Elementary {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// Base triangles of the antisymmetric family.
    Base {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 0)]
        a: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Triangle,
    Lozenge,
    Trapezoid,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn run(cli: &Cli) -> Result<u8> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Figure { shape } => figure(shape, json),
        Command::Derive { seq, times, weights } => {
            let mut s = seq.build()?;
            let w = match weights {
                Some(w) => Weights::new(w.clone())?,
                None => Weights::standard(),
            };
            for _ in 0..*times {
                s = s.derive_alpha(&w)?;
            }
            print_values(&s.residue_values()?, json)?;
            Ok(0)
        }
        Command::Rotate { angle, seq } => {
            let s = seq.build()?;
            let r = if angle == "120" { rot120(&s)? } else { rot240(&s)? };
            print_values(&r.residue_values()?, json)?;
            Ok(0)
        }
        Command::Universal { modulus, d, row, from, to, cell } => {
            if let Some(c) = cell {
                if c.len() != 2 {
                    bail!("--cell takes two coordinates i,j");
                }
                let v = universal_orbit_entry(*modulus, *d, c[0], c[1])?.value();
                if json {
                    out!("{}", json!({ "modulus": modulus, "d": d, "i": c[0], "j": c[1], "value": v }));
                } else {
                    out!("{v}");
                }
                return Ok(0);
            }
            let to = to.unwrap_or(*from + 3 * *modulus as i64 - 1);
            let w = universal_sequence(*modulus, *d)?.orbit_window(*row, *from, to)?;
            print_values(&w.residue_values()?, json)?;
            Ok(0)
        }
        Command::Idao { action } => idao(action, json),
        Command::Search(args) => search(args, json),
        Command::Verify { claim } => verify(claim, json),
        Command::Admissible { modulus, kind } => {
            let kind = match kind {
                OrderArg::Triangle => OrderKind::Triangle,
                OrderArg::Lozenge => OrderKind::Lozenge,
                OrderArg::Trapezoid => OrderKind::Trapezoid,
            };
            let a = admissible_orders(*modulus, kind)?;
            if json {
                out!("{}", serde_json::to_string(&a)?);
            } else if kind == OrderKind::Trapezoid {
                let pairs: Vec<String> = a.pairs.iter().map(|(m, h)| format!("({m},{h})")).collect();
                out!("(m, h) mod {}: {}", a.period, pairs.join(" "));
            } else {
                out!("m mod {}: {}", a.period, join(&a.classes));
            }
            Ok(0)
        }
        Command::Proportions { modulus } => {
            let r = proportion_report(*modulus)?;
            if json {
                out!("{}", serde_json::to_string(&r)?);
            } else {
                let f = |(a, b): (u64, u64)| format!("{a}/{b}");
                out!("classes mod {}, omega = {}", r.period, r.omega);
                out!("triangles  {}", f(r.triangle_fraction()));
                out!("pascal     {}", f(r.pascal_fraction()));
                out!("lozenges   {}", f(r.lozenge_fraction()));
                if let Some(b) = r.bound {
                    out!("bound      {} ({})", f(b), if r.meets_bound() { "met" } else { "not met" });
                }
            }
            Ok(0)
        }
    }
}

fn csv<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn join(v: &[u64]) -> String {
    csv(v)
}

fn print_values(v: &[u64], json: bool) -> Result<()> {
    if json {
        out!("{}", json!(v));
    } else {
        out!("{}", join(v));
    }
    Ok(())
}

fn figure(shape: &FigureCmd, json: bool) -> Result<u8> {
    let fig = match shape {
        FigureCmd::Triangle { seq } => Figure::steinhaus_triangle(&seq.build()?)?,
        FigureCmd::Trapezoid { seq, height } => Figure::steinhaus_trapezoid(&seq.build()?, *height)?,
        FigureCmd::Pascal { seq } => Figure::pascal_triangle(&seq.build()?)?,
        FigureCmd::PascalTrapezoid { seq, height } => Figure::pascal_trapezoid(&seq.build()?, *height)?,
        FigureCmd::Lozenge { seq } => Figure::lozenge(&seq.build()?)?,
        FigureCmd::Dat { modulus, a, d1, d2, order } => Figure::dat(*a, *d1, *d2, *order, *modulus)?,
        FigureCmd::Tetra { modulus, base, pascal } => {
            let t = parse_slice(*modulus, base)?;
            let tet = if *pascal { pascal_tetrahedron(&t)? } else { steinhaus_tetrahedron(&t)? };
            print_tetra(&tet, json)?;
            return Ok(0);
        }
    };
    if json {
        out!("{}", fig.render_json());
    } else {
        write!(std::io::stdout(), "{}", fig.render_text())?;
        let t = fig.multiplicity();
        out!(
            "cells {}, counts [{}], {}",
            fig.cardinality(),
            join(t.counts()),
            if t.is_balanced() { "balanced" } else { "not balanced" }
        );
    }
    Ok(0)
}

fn parse_slice(modulus: u64, base: &str) -> Result<TriangleSlice> {
    let rows = base
        .split('/')
        .map(|r| {
            let r = r.trim();
            if r.contains(',') {
                r.split(',').map(|c| c.trim().parse::<i64>().context("bad cell")).collect::<Result<Vec<_>>>()
            } else {
                r.chars().map(|c| c.to_digit(10).map(i64::from).context("bad digit")).collect()
            }
        })
        .map(|r| r.map(|v| v.into_iter().map(|x| x.rem_euclid(modulus.max(1) as i64) as u64).collect()))
        .collect::<Result<Vec<Vec<u64>>>>()?;
    Ok(TriangleSlice::new(modulus, rows)?)
}

fn print_tetra(t: &Tetrahedron, json: bool) -> Result<()> {
    if json {
        out!("{}", t.to_json());
        return Ok(());
    }
    for (f, floor) in t.floors().iter().enumerate() {
        out!("floor {f}");
        for r in floor.row_strings() {
            out!("  {r}");
        }
    }
    let m = t.multiplicity();
    out!(
        "cells {}, counts [{}], {}",
        t.cardinality(),
        join(m.counts()),
        if m.is_balanced() { "balanced" } else { "not balanced" }
    );
    Ok(())
}

fn idao(action: &IdaoCmd, json: bool) -> Result<u8> {
    match action {
        IdaoCmd::Wendt { k } => {
            let w = wendt(*k);
            let (rank, det) = (w.rank(), w.determinant()?);
            if json {
                out!("{}", json!({ "k": k, "rank": rank, "determinant": det.to_string() }));
            } else {
                out!("k {k}: rank {rank}, determinant {det}");
            }
            Ok(0)
        }
        IdaoCmd::Solve { k } => {
            let basis = idao_system_solve(*k);
            if json {
                out!("{}", serde_json::to_string(&json!({ "k": k, "dimension": basis.len(), "basis": basis }))?);
            } else {
                out!("k {k}: kernel dimension {}", basis.len());
                for v in &basis {
                    out!("  IAP(({}),({}))", csv(&v.firsts), csv(&v.diffs));
                }
            }
            Ok(0)
        }
        IdaoCmd::Verify { modulus, firsts, diffs, k1, k2, depth, width } => {
            let ring = match modulus {
                Some(n) => Ring::modular(*n)?,
                None => Ring::Integers,
            };
            let spec = IapSpec::from_i64(ring, firsts, diffs)?;
            let verdict = idao_verify(&spec, *k1, *k2, *depth, *width)?;
            if json {
                out!("{}", serde_json::to_string(&verdict)?);
            } else {
                match &verdict {
                    IdaoVerdict::Witness(w) => {
                        out!("({},{})-interlaced doubly arithmetic on {}x{} classes", w.k1, w.k2, w.depth, w.width)
                    }
                    IdaoVerdict::Refuted(r) => {
                        out!("refuted at ({},{}): expected {}, found {}", r.row, r.col, r.expected, r.actual)
                    }
                }
            }
            Ok(if verdict.is_witness() { 0 } else { EXIT_REFUTED })
        }
    }
}

fn search(args: &SearchArgs, json: bool) -> Result<u8> {
    let start = Instant::now();
    let (report, noun) = match args.shape {
        SearchShape::Tetra => {
            let kind = if args.pascal { TetraKind::Pascal } else { TetraKind::Steinhaus };
            let noun = if args.pascal { "pascal tetrahedron" } else { "tetrahedron" };
            (search_balanced_tetra(args.modulus, args.order, kind, args.budget)?, noun)
        }
        shape => {
            let need_height = || args.height.context("--height is required for trapezoids");
            let (kind, noun) = match shape {
                SearchShape::Triangle => (SearchKind::Triangle, "triangle"),
                SearchShape::Trapezoid => (SearchKind::Trapezoid { height: need_height()? }, "trapezoid"),
                SearchShape::Pascal => (SearchKind::PascalTriangle, "pascal triangle"),
                SearchShape::PascalTrapezoid => {
                    (SearchKind::PascalTrapezoid { height: need_height()? }, "pascal trapezoid")
                }
                SearchShape::Lozenge => (SearchKind::Lozenge, "lozenge"),
                SearchShape::Tetra => unreachable!(),
            };
            let strategy = match args.strategy {
                StrategyArg::Full => Strategy::Full,
                StrategyArg::Prefix => Strategy::PrefixParallel,
                StrategyArg::FixedPoint => Strategy::FirstRowFixedPoint,
            };
            let spec = SearchSpec::new(args.modulus, kind, args.order)
                .with_strategy(strategy)
                .with_budget(args.budget)
                .with_negation_halving(args.negation_halving)
                .with_max_found(args.max_found);
            (search_balanced(&spec)?, noun)
        }
    };
    eprintln!("elapsed {} ms", start.elapsed().as_millis());
    print_search(&report, noun, json)?;
    Ok(if report.exhaustive { 0 } else { EXIT_BUDGET })
}

fn print_search(r: &SearchReport, noun: &str, json: bool) -> Result<()> {
    if json {
        out!("{}", serde_json::to_string(&r.deterministic_json())?);
        return Ok(());
    }
    let scope = if r.exhaustive { "exhaustive" } else { "budget exhausted" };
    if r.found_count == 0 {
        out!("no balanced {noun}; {scope}");
    } else {
        let noun = match (r.found_count, noun.strip_suffix("tetrahedron")) {
            (1, _) => noun.to_string(),
            (_, Some(head)) => format!("{head}tetrahedra"),
            _ => format!("{noun}s"),
        };
        out!("{} balanced {noun}; {scope}", r.found_count);
        for s in &r.found {
            out!("  {}", join(s));
        }
    }
    if !r.admissible {
        out!("  (modulus does not divide the cardinality)");
    }
    out!("  examined {} nodes", r.examined);
    if !r.reductions.is_empty() {
        out!("  reductions: {}", r.reductions.join(", "));
    }
    Ok(())
}

fn verify(claim: &VerifyCmd, json: bool) -> Result<u8> {
    let start = Instant::now();
    let report = match claim {
        VerifyCmd::Dat { modulus, orders } => verify_dat_balance(*modulus, orders.as_deref())?,
        VerifyCmd::Family { modulus, a0, a1, a2, d, lambda, rows, cols } => {
            let mut offsets = Offsets::default();
            if let Some(r) = rows {
                offsets.rows = r.clone();
            }
            if let Some(c) = cols {
                offsets.cols = c.clone();
            }
            let p = FamilyParams { a0: *a0, a1: *a1, a2: *a2, d: *d };
            verify_idao_figures(*modulus, p, *lambda, &offsets)?
        }
        VerifyCmd::Antisymmetric(s) => verify_antisymmetric_figures(s.modulus, s.a, s.d, s.lambda)?,
        VerifyCmd::Universal { modulus, d, lambda, pascal_heights } => {
            let h = match pascal_heights {
                HeightsArg::Complement => PascalHeights::Complement,
                HeightsArg::Swapped => PascalHeights::Swapped,
            };
            verify_universal_figures(*modulus, *d, *lambda, h)?
        }
        VerifyCmd::Elementary { modulus, d } => verify_elementary_triangles(*modulus, *d)?,
        VerifyCmd::Base { modulus, d, a } => verify_base_triangles(*modulus, *a, *d)?,
    };
    eprintln!("elapsed {} ms", start.elapsed().as_millis());
    print_verify(&report, json)?;
    Ok(if report.passed() { 0 } else { EXIT_REFUTED })
}

fn print_verify(r: &VerifyReport, json: bool) -> Result<()> {
    if json {
        out!("{}", serde_json::to_string(r)?);
        return Ok(());
    }
    out!("{}", r.claim);
    let width = r.checks.iter().map(|c| c.label.chars().count()).max().unwrap_or(0);
    for c in &r.checks {
        let pad = " ".repeat(width - c.label.chars().count());
        out!("  {}{pad} {:>8} figures  {} failures", c.label, c.figures, c.failures);
    }
    for v in r.violations.iter().take(20) {
        out!("  unbalanced: {} [{}]", v.figure, join(&v.counts));
    }
    if r.passed() {
        out!("all {} checks pass", r.examined);
    } else {
        out!("{} of {} checks fail", r.violations.len(), r.examined);
    }
    Ok(())
}
