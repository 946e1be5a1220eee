mod suites;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use singlet_core::builder::{count_table, singlet_basis_with_budget, DEFAULT_BUDGET};
use singlet_core::correlations::{format_csv, reconcile_selection, scan, Curve};
use singlet_core::{Error, HalfInt, StateExportDocument};

#[derive(Parser)]
#[command(name = "singlet", version, about = "Exact singlet states of spin chains and their correlations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle of multiplet counts.
    Counts {
        /// Doubled spin (1 for spin one-half).
        #[arg(long)]
        spin2: u8,
        #[arg(long)]
        nmax: usize,
        /// Show every cell instead of those that can still reach a singlet at nmax.
        #[arg(long)]
        full: bool,
        /// Also write the triangle as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct all singlet states of n particles.
    Singlets {
        #[arg(long)]
        spin2: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Amplitude-count limit for the construction.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run the exact verification suites up to nmax particles.
    Verify {
        #[arg(long)]
        spin2: u8,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Tabulate parity probabilities along one scan curve.
    Scan {
        #[arg(long, value_parser = parse_curve)]
        curve: Curve,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare printed selection formulas with candidate definitions.
    Reconcile {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_curve(s: &str) -> Result<Curve, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

fn spin_of(spin2: u8) -> HalfInt {
    HalfInt::from_twice(spin2 as i32)
}

/// Write through a temporary file in the target directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn counts(spin: HalfInt, nmax: usize, full: bool, out: Option<&Path>) -> anyhow::Result<()> {
    if nmax == 0 {
        return Err(Error::Domain("nmax must be at least 1".into()).into());
    }
    let table = count_table(nmax, spin);
    let top = nmax as i32 * spin.twice;
    // cells that can still descend to the lowest j at nmax
    let shown = |h: usize, j: HalfInt| {
        let floor = (h as i32 * spin.twice) % 2;
        full || j.twice <= ((h.min(nmax - h) as i32) * spin.twice).max(floor)
    };
    let mut rows: Vec<(HalfInt, Vec<String>)> = Vec::new();
    for t in (0..=top).rev() {
        let j = HalfInt::from_twice(t);
        let cells: Vec<String> = (1..=nmax)
            .map(|h| match table[h - 1].get(&j) {
                Some(c) if shown(h, j) => c.to_string(),
                _ => String::new(),
            })
            .collect();
        if cells.iter().any(|c| !c.is_empty()) {
            rows.push((j, cells));
        }
    }
    let width = rows
        .iter()
        .flat_map(|(_, c)| c.iter().map(String::len))
        .chain(std::iter::once(nmax.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut text = String::new();
    for (j, cells) in &rows {
        let _ = write!(text, "j={:<5}", j.to_string());
        for c in cells {
            let _ = write!(text, " {c:>width$}");
        }
        text.push('\n');
    }
    let _ = write!(text, "{:<7}", "N");
    for h in 1..=nmax {
        let _ = write!(text, " {h:>width$}");
    }
    text.push('\n');
    print!("{text}");
    if let Some(path) = out {
        let mut csv = String::from("n,j,count\n");
        for h in 1..=nmax {
            for (j, c) in &table[h - 1] {
                if shown(h, *j) {
                    let _ = writeln!(csv, "{h},{j},{c}");
                }
            }
        }
        write_atomic(path, &csv)?;
    }
    Ok(())
}

fn singlets(spin: HalfInt, n: usize, out: Option<&Path>, format: Format, budget: u64) -> anyhow::Result<()> {
    let basis = singlet_basis_with_budget(n, spin, budget)?;
    let doc = StateExportDocument::from_basis(&basis);
    let body = match format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    };
    emit(out, &body)?;
    if out.is_some() {
        eprintln!("{} singlet state(s) of {n} spin-{spin} particles", basis.len());
    }
    Ok(())
}

fn verify(spin: HalfInt, nmax: usize, budget: u64) -> anyhow::Result<bool> {
    let results = suites::run_all(spin, nmax, budget)?;
    let mut all = true;
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{status} {} ({} checks)", r.name, r.checks);
        for f in r.failures.iter().take(10) {
            println!("    {f}");
        }
        all &= r.passed();
    }
    Ok(all)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Counts { spin2, nmax, full, out } => counts(spin_of(spin2), nmax, full, out.as_deref())?,
        Command::Singlets { spin2, n, out, format, budget } => {
            singlets(spin_of(spin2), n, out.as_deref(), format, budget)?
        }
        Command::Verify { spin2, nmax, budget } => return verify(spin_of(spin2), nmax, budget),
        Command::Scan { curve, samples, out } => {
            let rows = scan(curve, samples)?;
            emit(out.as_deref(), &format_csv(&rows))?;
        }
        Command::Reconcile { samples, seed, out, format } => {
            let report = reconcile_selection(samples, seed)?;
            let body = match format {
                Format::Text => format!("{report}\n"),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            emit(out.as_deref(), &body)?;
            if out.is_some() {
                eprintln!("seed {seed}");
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Capacity { .. }) => EXIT_CAPACITY,
                Some(Error::Domain(_)) => EXIT_USAGE,
                _ => EXIT_VERIFY,
            };
            ExitCode::from(code)
        }
    }
}
