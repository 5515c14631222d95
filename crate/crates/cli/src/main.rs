//! `multisum`: exact subset, multiset and partition counts over finite abelian groups.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use multisum::closed_form::{self, m_full, n_full, p_parts};
use multisum::oracle::{Oracle, DEFAULT_BUDGET};
use multisum::restricted::{m_restricted, n_restricted};
use multisum::verify::{sweep, SweepConfig};
use multisum::{Count, Error, ExcludedSet, GroupElement, GroupSpec, Quantity};

use output::{CountRecord, Format};

/// Exit status for a disagreement between a formula and an oracle.
const EXIT_MISMATCH: u8 = 1;
/// Exit status for malformed input.
const EXIT_USAGE: u8 = 2;
/// Exit status when an oracle refuses to exceed its enumeration budget.
const EXIT_BUDGET: u8 = 3;
/// Exit status for an internal invariant violation.
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "multisum", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count size-i collections with sum g.
    Count(CountArgs),
    /// Print every count for sizes 0..=max-size and every target.
    Table(TableArgs),
    /// Cross-check the formulas against enumeration over all small groups.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BudgetArg {
    /// Largest number of collections an enumeration oracle may visit.
    #[arg(long, env = "MULTISUM_ENUM_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct CountArgs {
    /// Group, e.g. `Z4`, `Z4xZ6` or `4x6`.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, ignore_case = true)]
    quantity: QuantityArg,
    #[arg(long)]
    size: u64,
    /// Target element: comma-separated residues, e.g. `1,3`.
    #[arg(long)]
    target: String,
    /// Elements removed from the group, separated by `;`, e.g. `0;1` or `1,0;0,2`.
    #[arg(long, default_value = "")]
    exclude: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also count by enumeration and fail if the two disagree.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, ignore_case = true)]
    quantity: QuantityArg,
    #[arg(long)]
    max_size: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Expand the group-ring generating function instead of using the closed forms.
    #[arg(long)]
    series: bool,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_order: u64,
    #[arg(long)]
    max_size: u64,
    #[arg(long, default_value_t = 0)]
    max_excluded: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum QuantityArg {
    M,
    N,
    P,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::M => Quantity::M,
            QuantityArg::N => Quantity::N,
            QuantityArg::P => Quantity::P,
        }
    }
}

/// A failed command: the message for stderr and the exit status.
struct Failure {
    message: String,
    status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Domain(_) | Error::GroupMismatch { .. } => EXIT_USAGE,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InvariantViolation(_) => EXIT_INTERNAL,
        };
        Failure {
            message: e.to_string(),
            status,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            message: e.to_string(),
            status: EXIT_INTERNAL,
        }
    }
}

type CmdResult = Result<(), Failure>;

fn exact_count(
    quantity: Quantity,
    excluded: &ExcludedSet,
    i: u64,
    g: &GroupElement,
) -> multisum::Result<Count> {
    let group = excluded.group();
    match quantity {
        Quantity::M if excluded.is_empty() => m_full(group, i, g),
        Quantity::M => m_restricted(excluded, i, g),
        Quantity::N if excluded.is_empty() => n_full(group, i, g),
        Quantity::N => n_restricted(excluded, i, g),
        Quantity::P => p_parts(group, i, g),
    }
}

fn enumerated_count(
    quantity: Quantity,
    excluded: &ExcludedSet,
    oracle: Oracle,
    i: u64,
    g: &GroupElement,
) -> multisum::Result<Count> {
    match quantity {
        Quantity::M => oracle.brute_multisets(excluded, i, g),
        Quantity::N => oracle.brute_subsets(excluded, i, g),
        Quantity::P => {
            let group = excluded.group();
            oracle.brute_multisets(&ExcludedSet::new(group, [group.zero()])?, i, g)
        }
    }
}

fn cmd_count(args: CountArgs, out: &mut impl Write) -> CmdResult {
    let group: GroupSpec = args.group.parse()?;
    let target = group.parse_element(&args.target)?;
    let excluded = ExcludedSet::parse(&group, &args.exclude)?;
    let quantity = Quantity::from(args.quantity);
    if quantity == Quantity::P && !excluded.is_empty() {
        return Err(Failure {
            message: format!(
                "invalid `--exclude {}`: quantity P already excludes 0 and takes no exclude set",
                args.exclude
            ),
            status: EXIT_USAGE,
        });
    }

    let count = exact_count(quantity, &excluded, args.size, &target)?;
    if args.oracle {
        let oracle = Oracle::with_budget(args.budget.budget);
        let expected = enumerated_count(quantity, &excluded, oracle, args.size, &target)?;
        if expected != count {
            return Err(Failure {
                message: format!(
                    "mismatch: group={group} quantity={quantity} size={} target=({target}) exclude={{{excluded}}} formula={count} enumeration={expected}",
                    args.size
                ),
                status: EXIT_MISMATCH,
            });
        }
    }

    let record = CountRecord::new(&group, quantity, args.size, &target, &excluded, &count);
    output::write_count(out, args.format, &record)?;
    Ok(())
}

fn cmd_table(args: TableArgs, out: &mut impl Write) -> CmdResult {
    let group: GroupSpec = args.group.parse()?;
    let quantity = Quantity::from(args.quantity);
    let table = if args.series {
        let oracle = Oracle::with_budget(args.budget.budget);
        match quantity {
            Quantity::M => {
                oracle.series_multiset_table(&ExcludedSet::empty(&group), args.max_size)?
            }
            Quantity::N => {
                oracle.series_subset_table(&ExcludedSet::empty(&group), args.max_size)?
            }
            Quantity::P => {
                let no_zero = ExcludedSet::new(&group, [group.zero()])?;
                let t = oracle.series_multiset_table(&no_zero, args.max_size)?;
                let rows = (0..=args.max_size)
                    .map(|i| t.row(i).unwrap_or_default().to_vec())
                    .collect();
                multisum::CountTable::new(group.clone(), Quantity::P, Vec::new(), rows)?
            }
        }
    } else {
        closed_form::table(&group, quantity, args.max_size)?
    };
    output::write_table(out, args.format, &table)?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> CmdResult {
    if args.max_order == 0 {
        return Err(Failure {
            message: "invalid `--max-order 0`: must be positive".into(),
            status: EXIT_USAGE,
        });
    }
    let report = sweep(&SweepConfig {
        max_order: args.max_order,
        max_size: args.max_size,
        max_excluded: args.max_excluded,
        oracle: Oracle::with_budget(args.budget.budget),
    })?;
    output::write_report(out, args.format, &report)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            message: format!(
                "{} of {} checks failed",
                report.mismatches.len(),
                report.checks
            ),
            status: EXIT_MISMATCH,
        })
    }
}

/// Debug builds accept `MULTISUM_DEBUG_CORRUPT_MOBIUS=m:value` to overwrite one
/// Möbius value, for checking that `verify` notices.
#[cfg(debug_assertions)]
fn apply_debug_fault() {
    let Ok(spec) = std::env::var("MULTISUM_DEBUG_CORRUPT_MOBIUS") else {
        return;
    };
    if let Some((m, v)) = spec.split_once(':') {
        if let (Ok(m), Ok(v)) = (m.trim().parse(), v.trim().parse()) {
            multisum::numtheory::fault::corrupt_mobius(m, v);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(debug_assertions)]
    apply_debug_fault();

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Count(args) => cmd_count(args, &mut out),
        Command::Table(args) => cmd_table(args, &mut out),
        Command::Verify(args) => cmd_verify(args, &mut out),
    };
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(EXIT_INTERNAL),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
