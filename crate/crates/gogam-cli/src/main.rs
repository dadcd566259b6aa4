//! Command-line front end: enumeration and counting over the two pattern
//! families, the width-one/width-two trapezoid maps with optional traces,
//! canonical completions, and the named verification suites.
//!
//! Exit codes: 0 success, 1 membership or check failure, 2 usage or parse
//! error. `GOGAM_THREADS` caps worker threads for enumeration-heavy work.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gogam_core::bijection::{gog_to_gogam_left, gogam_to_gog_left};
use gogam_core::checks::{run_suite, CheckOptions, Suite};
use gogam_core::gog;
use gogam_core::gogam;
use gogam_core::pattern::{Pattern, Shape, ShapeKind};
use gogam_core::search::{count_with, enumerate_with, Family, FamilySpec, SearchOptions};

#[derive(Parser)]
#[command(name = "gogam", version, about = "Triangle and trapezoid pattern calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stream every member of a family on a shape, in lexicographic order.
    Enumerate(EnumerateArgs),
    /// Count the members of a family on a shape.
    Count(CountArgs),
    /// Map a left trapezoid of width 1 or 2 between the two families.
    Map(MapArgs),
    /// Complete a trapezoid (or rectangle) to its canonical triangle.
    Complete(CompleteArgs),
    /// Run a named verification suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gog,
    Gogam,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Gog => Family::Gog,
            FamilyArg::Gogam => Family::Gogam,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Triangle,
    Left,
    Right,
    Rect,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    GogToGogam,
    GogamToGog,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct ShapeFlags {
    /// Pattern family.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Shape kind.
    #[arg(long, value_enum)]
    shape: ShapeArg,
    /// Size (rows of the ambient triangle).
    #[arg(long)]
    n: usize,
    /// Left width (left trapezoids and rectangles only).
    #[arg(long)]
    k: Option<usize>,
    /// Right width (right trapezoids and rectangles only).
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    shape: ShapeFlags,
    /// Output format: text blocks separated by blank lines, or one JSON
    /// object per line.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    shape: ShapeFlags,
    /// Also print the bottom-entry histogram (text output).
    #[arg(long)]
    by_bottom: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct MapArgs {
    /// Map orientation.
    #[arg(long, value_enum)]
    direction: DirectionArg,
    /// Trapezoid width; must match the input shape. Inferred when omitted.
    #[arg(long, value_parser = clap::value_parser!(usize))]
    k: Option<usize>,
    /// Also print the step-by-step trace after the image.
    #[arg(long)]
    trace: bool,
    /// Read the input pattern from this file instead of stdin.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args)]
struct CompleteArgs {
    /// Family whose canonical completion to apply.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Which side the missing cells are filled from: `left` completes left
    /// trapezoids and rectangles, `right` completes right trapezoids.
    #[arg(long, value_enum)]
    side: SideArg,
    /// Read the input pattern from this file instead of stdin.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name: paper-examples, equienumeration, roundtrip, statistic,
    /// gogam-oracle, lattice, or standard-procedure.
    suite: String,
    /// Size cap for the suite (defaults: 8 for roundtrip, 6 otherwise).
    #[arg(long)]
    n_max: Option<usize>,
    /// Seed for randomized samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format: one status line or one JSON object per check.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage_err(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Enumerate(args) => cmd_enumerate(args),
        Cmd::Count(args) => cmd_count(args),
        Cmd::Map(args) => cmd_map(args),
        Cmd::Complete(args) => cmd_complete(args),
        Cmd::Check(args) => cmd_check(args),
    }
}

impl ShapeFlags {
    fn build(&self) -> Result<FamilySpec, Failure> {
        let shape = match self.shape {
            ShapeArg::Triangle => {
                reject_width(self.k, "--k", "triangle")?;
                reject_width(self.l, "--l", "triangle")?;
                Shape::triangle(self.n)
            }
            ShapeArg::Left => {
                reject_width(self.l, "--l", "left trapezoid")?;
                let k = self.k.ok_or_else(|| usage_err("left trapezoids need --k"))?;
                Shape::left_trapezoid(self.n, k)
            }
            ShapeArg::Right => {
                reject_width(self.k, "--k", "right trapezoid")?;
                let l = self.l.ok_or_else(|| usage_err("right trapezoids need --l"))?;
                Shape::right_trapezoid(self.n, l)
            }
            ShapeArg::Rect => {
                let k = self.k.ok_or_else(|| usage_err("rectangles need --k"))?;
                let l = self.l.ok_or_else(|| usage_err("rectangles need --l"))?;
                Shape::rectangle(self.n, k, l)
            }
        }
        .map_err(|e| usage_err(e.to_string()))?;
        Ok(FamilySpec { family: self.family.into(), shape })
    }
}

fn reject_width(value: Option<usize>, flag: &str, kind: &str) -> Result<(), Failure> {
    match value {
        Some(_) => Err(usage_err(format!("{kind} shapes do not take {flag}"))),
        None => Ok(()),
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<u8, Failure> {
    let spec = args.shape.build()?;
    let items = enumerate_with(&spec, &SearchOptions::default());
    match args.format {
        FormatArg::Text => {
            let blocks: Vec<String> = items.iter().map(|p| p.serialize()).collect();
            print!("{}", blocks.join("\n"));
        }
        FormatArg::Json => {
            for p in &items {
                println!("{}", p.to_json_string());
            }
        }
    }
    Ok(0)
}

fn cmd_count(args: CountArgs) -> Result<u8, Failure> {
    let spec = args.shape.build()?;
    let report = count_with(&spec, &SearchOptions::default());
    match args.format {
        FormatArg::Text => {
            println!("total {}", report.total);
            if args.by_bottom {
                for (value, count) in &report.by_bottom_entry {
                    println!("bottom {value} {count}");
                }
            }
        }
        FormatArg::Json => println!("{}", report.to_json()),
    }
    Ok(0)
}

fn read_pattern(file: &Option<String>) -> Result<Pattern, Failure> {
    let text = match file {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| usage_err(format!("cannot read {path}: {e}")))?
        }
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage_err(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    Pattern::parse(&text).map_err(|e| usage_err(e.to_string()))
}

fn cmd_map(args: MapArgs) -> Result<u8, Failure> {
    let input = read_pattern(&args.file)?;
    if input.shape().kind() != ShapeKind::LeftTrapezoid {
        return Err(usage_err(format!(
            "map expects a left trapezoid of width 1 or 2, got {}",
            input.shape()
        )));
    }
    let width = input.shape().k().unwrap();
    if let Some(k) = args.k {
        if k != width {
            return Err(usage_err(format!("--k {k} does not match the input width {width}")));
        }
    }
    let (image, trace) = match args.direction {
        DirectionArg::GogToGogam => gog_to_gogam_left(&input),
        DirectionArg::GogamToGog => gogam_to_gog_left(&input),
    }
    .map_err(|e| input_err(e.to_string()))?;
    print!("{}", image.serialize());
    if args.trace {
        print!("{}", trace.dump());
    }
    Ok(0)
}

fn cmd_complete(args: CompleteArgs) -> Result<u8, Failure> {
    let input = read_pattern(&args.file)?;
    let family: Family = args.family.into();
    let kind = input.shape().kind();
    let triangle = match (args.side, kind) {
        (SideArg::Left, ShapeKind::LeftTrapezoid) => match family {
            Family::Gog => gog::complete_left_gog(&input).map_err(|e| input_err(e.to_string()))?,
            Family::Gogam => {
                if !gogam::is_left_gogam_trapezoid(&input) {
                    return Err(input_err("input fails is_left_gogam_trapezoid"));
                }
                gogam::complete_left_gogam(&input)
            }
        },
        (SideArg::Left, ShapeKind::Rectangle) => match family {
            Family::Gog => {
                if !gog::is_gog_rectangle(&input) {
                    return Err(input_err("input fails is_gog_rectangle"));
                }
                gog::complete_left_gog(&gog::complete_rectangle_left_gog(&input))
                    .map_err(|e| input_err(e.to_string()))?
            }
            Family::Gogam => {
                if !gogam::is_gogam_rectangle(&input) {
                    return Err(input_err("input fails is_gogam_rectangle"));
                }
                gogam::complete_left_gogam(&gogam::complete_rectangle_left_gogam(&input))
            }
        },
        (SideArg::Right, ShapeKind::RightTrapezoid) => match family {
            Family::Gog => {
                if !gog::is_right_gog_trapezoid(&input) {
                    return Err(input_err("input fails is_right_gog_trapezoid"));
                }
                gog::complete_right_gog(&input)
            }
            Family::Gogam => {
                if !gogam::is_right_gogam_trapezoid(&input) {
                    return Err(input_err("input fails is_right_gogam_trapezoid"));
                }
                gogam::complete_right_gogam(&input)
            }
        },
        (side, kind) => {
            let side = match side {
                SideArg::Left => "left",
                SideArg::Right => "right",
            };
            return Err(usage_err(format!(
                "--side {side} cannot complete a {} input",
                kind.token()
            )));
        }
    };
    print!("{}", triangle.serialize());
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<u8, Failure> {
    let suite = Suite::from_token(&args.suite)
        .ok_or_else(|| usage_err(format!("unknown suite '{}'", args.suite)))?;
    let opts = CheckOptions { n_max: args.n_max, seed: args.seed, ..Default::default() };
    let results = run_suite(suite, &opts);
    let mut all_passed = true;
    for r in &results {
        match args.format {
            FormatArg::Text => println!("{}", r.line()),
            FormatArg::Json => println!("{}", r.to_json()),
        }
        all_passed &= r.passed;
    }
    Ok(if all_passed { 0 } else { 1 })
}
