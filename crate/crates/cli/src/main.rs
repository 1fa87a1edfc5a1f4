//! `orbigw`: invariants, tables and verification suites from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or mismatch, 2 truncation
//! budget exceeded, 3 bad arguments.

mod render;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbigw::correlators::one_point::{one_point_closed, one_point_series};
use orbigw::correlators::tables::{compute_table, CellValue, TableRequest};
use orbigw::correlators::{invariant, Insertion, InvariantRecord};
use orbigw::exact::rational::{format_rational, int};
use orbigw::golden::golden_table;
use orbigw::tde::OrbifoldStructure;
use orbigw::{Error, Rational};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_ARGS: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "orbigw", version, about = "Gromov-Witten invariants of orbifold projective lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One invariant <tau_i1(phi_a1) ...>_g.
    Invariant(InvariantArgs),
    /// A grid of <tau_i(phi_a)^k>_g over k and g.
    Table(TableArgs),
    /// Run verification suites and report PASS/FAIL per check.
    Verify(VerifyArgs),
    /// The 1-point invariants <tau_i(phi_a)>_g.
    Onepoint(OnepointArgs),
}

#[derive(Args, Debug)]
struct StructureArgs {
    #[arg(long, default_value_t = 2)]
    m1: usize,
    #[arg(long, default_value_t = 1)]
    m2: usize,
}

impl StructureArgs {
    fn build(&self) -> Result<OrbifoldStructure, Error> {
        OrbifoldStructure::new(self.m1, self.m2)
    }
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[command(flatten)]
    structure: StructureArgs,
    /// Comma-separated `a:i` or `a:i*count`, e.g. `1:1*5` or `1:1,2:0*2`.
    #[arg(long)]
    insertions: String,
    #[arg(long, default_value_t = 0)]
    genus: usize,
    /// Lambda order of the resolvent series (default from the budget rule).
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// An embedded table such as `P21-tau11`; sets the structure and insertion.
    #[arg(long)]
    table_id: Option<String>,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    m2: Option<usize>,
    /// Sector a of the repeated insertion tau_i(phi_a).
    #[arg(long)]
    sector: Option<usize>,
    /// Descendant level i of the repeated insertion.
    #[arg(long)]
    level: Option<usize>,
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    #[arg(long, default_value_t = 3)]
    gmax: usize,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tde,
    Symmetry,
    Algebra,
    Routes,
    Golden,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 2)]
    pub m1: usize,
    #[arg(long, default_value_t = 1)]
    pub m2: usize,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Golden suite only: one table id or `all`.
    #[arg(long, default_value = "all")]
    pub table_id: String,
    /// Golden suite only: grid bounds.
    #[arg(long, default_value_t = 6)]
    pub kmax: usize,
    #[arg(long, default_value_t = 3)]
    pub gmax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Operator,
    Closed,
    Both,
}

#[derive(Args, Debug)]
struct OnepointArgs {
    #[command(flatten)]
    structure: StructureArgs,
    #[arg(long)]
    sector: usize,
    #[arg(long, default_value_t = 4)]
    imax: usize,
    #[arg(long, default_value_t = 3)]
    gmax: usize,
    #[arg(long, value_enum, default_value_t = Method::Operator)]
    method: Method,
}

/// Errors carry their exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Truncation { .. } | Error::InsufficientBuffer { .. } => EXIT_BUDGET,
            Error::Precondition(_) | Error::Parse(_) => EXIT_ARGS,
            _ => EXIT_FAIL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn bad_args(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_ARGS, message: message.into() }
}

fn parse_insertions(text: &str) -> Result<Vec<Insertion>, Failure> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (body, count) = match item.split_once('*') {
            Some((b, c)) => (b, c.trim().parse::<usize>().map_err(|_| bad_args(format!("bad count in {item:?}")))?),
            None => (item, 1),
        };
        let (a, i) = body.split_once(':').ok_or_else(|| bad_args(format!("expected a:i, got {item:?}")))?;
        let a = a.trim().parse().map_err(|_| bad_args(format!("bad sector in {item:?}")))?;
        let i = i.trim().parse().map_err(|_| bad_args(format!("bad level in {item:?}")))?;
        out.extend(std::iter::repeat_n(Insertion::new(a, i), count));
    }
    if out.is_empty() {
        return Err(bad_args("no insertions given"));
    }
    Ok(out)
}

/// `rho (sum i + sum q - k - 2g + 2)` as a string trace and its value.
fn degree_trace(st: &OrbifoldStructure, ins: &[Insertion], g: usize) -> (String, Rational) {
    let sum_i: usize = ins.iter().map(|x| x.i).sum();
    let sum_q = ins.iter().fold(int(0), |acc, x| acc + st.q(x.a));
    let inner = int(sum_i as i64) + &sum_q - int(ins.len() as i64) - int(2 * g as i64) + int(2);
    let d = &st.rho * &inner;
    let trace = format!(
        "d = rho (sum i + sum q - k - 2g + 2) = {} * ({} + {} - {} - {} + 2) = {}",
        format_rational(&st.rho),
        sum_i,
        format_rational(&sum_q),
        ins.len(),
        2 * g,
        format_rational(&d)
    );
    (trace, d)
}

fn cmd_invariant(args: &InvariantArgs) -> Result<u8, Failure> {
    let st = args.structure.build()?;
    let ins = parse_insertions(&args.insertions)?;
    for x in &ins {
        st.check_sector(x.a)?;
    }
    let (trace, _) = degree_trace(&st, &ins, args.genus);
    let rec: InvariantRecord = invariant(&st, &ins, args.genus, args.order)?;
    if rec.vanishes() {
        println!("{}", render::record_label(&rec));
        println!("vanishes (degree-dimension)");
    } else {
        println!("{} = {}", render::record_label(&rec), format_rational(&rec.value));
    }
    println!("{trace}");
    Ok(0)
}

fn cmd_table(args: &TableArgs) -> Result<u8, Failure> {
    let (st, fixed) = match &args.table_id {
        Some(id) => {
            if args.m1.is_some() || args.m2.is_some() || args.sector.is_some() || args.level.is_some() {
                return Err(bad_args("--table-id fixes the structure and insertion"));
            }
            let t = golden_table(id).ok_or_else(|| bad_args(format!("unknown table id {id:?}")))?;
            (t.structure, t.fixed)
        }
        None => {
            let (Some(m1), Some(m2), Some(a), Some(i)) = (args.m1, args.m2, args.sector, args.level) else {
                return Err(bad_args("give --table-id or all of --m1 --m2 --sector --level"));
            };
            let st = OrbifoldStructure::new(m1, m2)?;
            st.check_sector(a)?;
            (st, Insertion::new(a, i))
        }
    };
    if args.kmax == 0 {
        return Err(bad_args("--kmax must be at least 1"));
    }
    let req = TableRequest {
        structure: st,
        fixed,
        ks: (1..=args.kmax).collect(),
        gs: (0..=args.gmax).collect(),
        order: args.order,
    };
    let cells = compute_table(&req)?;
    let order = req.order.unwrap_or_else(|| req.default_order());
    let text = match args.format {
        Format::Csv => render::csv(&cells).map_err(|e| Failure { code: EXIT_FAIL, message: e.to_string() })?,
        Format::Json => render::json(&req.structure, fixed, order, &cells),
        Format::Md => render::markdown(&req.structure, fixed, args.kmax, args.gmax, &cells),
    };
    match &args.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure { code: EXIT_FAIL, message: e.to_string() })?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_FAIL, message: e.to_string() })?,
    }
    let truncated = cells.iter().filter(|c| c.value == CellValue::Trunc).count();
    if truncated > 0 {
        eprintln!("{truncated} cells truncated; raise --order");
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn cmd_onepoint(args: &OnepointArgs) -> Result<u8, Failure> {
    let st = args.structure.build()?;
    st.check_sector(args.sector)?;
    let (a, i, g) = (args.sector, args.imax, args.gmax);
    let records = match args.method {
        Method::Operator => one_point_series(&st, a, i, g)?,
        Method::Closed => one_point_closed(&st, a, i, g)?,
        Method::Both => {
            let op = one_point_series(&st, a, i, g)?;
            let closed = one_point_closed(&st, a, i, g)?;
            let mut mismatches = 0;
            for (x, y) in op.iter().zip(&closed) {
                if x != y {
                    mismatches += 1;
                    eprintln!(
                        "MISMATCH i={} g={}: operator {} closed {}",
                        x.insertions[0].i,
                        x.g,
                        format_rational(&x.value),
                        format_rational(&y.value)
                    );
                }
            }
            if mismatches > 0 || op.len() != closed.len() {
                return Ok(EXIT_FAIL);
            }
            op
        }
    };
    println!("i,g,d,value");
    for r in records.iter().filter(|r| !r.vanishes()) {
        println!("{},{},{},{}", r.insertions[0].i, r.g, r.d.unwrap(), format_rational(&r.value));
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGS } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Invariant(a) => cmd_invariant(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => verify::run(a).map_err(Failure::from),
        Command::Onepoint(a) => cmd_onepoint(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
