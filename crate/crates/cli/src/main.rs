//! `qcop`: validate, convert and query irreducible discrete quasi-copulas.
//!
//! Exit status: 0 on success, 1 on a mathematical negative verdict (a grid
//! that is not a quasi-copula, a conversion that needs a copula, a failed
//! verification suite), 2 on usage or I/O errors.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qcop_core::copula::{classify, Classification};
use qcop_core::enumeration::{robbins, BigUint};
use qcop_core::formats::{
    parse_asm, parse_perm, parse_qcm, parse_qcm_grid, render_asm, render_decomposition,
    render_perm, render_qcm, ParseError,
};
use qcop_core::irreducible::{decompose, enumerate_meet_irreducibles, m_p_all, verify_completion};
use qcop_core::matrixrep::BigrassmannianParams;
use qcop_core::order::{
    check_lattice_laws, check_lattice_laws_random, hasse_with_limit, leq, meet,
    non_lattice_witness, verify_order_isomorphism, NonLatticeSubset,
};
use qcop_core::poset::{dedekind_macneille, FinitePoset};
use qcop_core::stats::{entry_sum, m_value, tau_bound_check, verify_max_inversions, StatsReport};
use qcop_core::QuasiCopula;

#[derive(Parser)]
#[command(
    name = "qcop",
    version,
    about = "Exact toolkit for irreducible discrete quasi-copulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a grid file and report its positive/negative positions.
    Validate {
        /// Grid in qcm format; use '-' for standard input.
        file: PathBuf,
    },
    /// Convert between the qcm, asm and perm representations.
    Convert {
        #[arg(long, value_enum)]
        from: Format,
        #[arg(long, value_enum)]
        to: Format,
        file: PathBuf,
    },
    /// Entrywise minimum of two grids (greatest lower bound).
    Meet { a: PathBuf, b: PathBuf },
    /// Entrywise maximum of two grids (least upper bound).
    Join { a: PathBuf, b: PathBuf },
    /// Write the unique antichain of meet-irreducible copulas meeting to the
    /// input grid.
    Decompose { file: PathBuf },
    /// List every meet-irreducible copula of order n.
    MiList {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Exact statistics of a grid.
    Stats { file: PathBuf },
    /// The full concordance order of order n as a Hasse diagram.
    Hasse {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Dot)]
        format: DiagramFormat,
        /// Raise the enumeration bound (default 5).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Print a Fréchet–Hoeffding bound grid.
    Frechet {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum)]
        bound: Bound,
    },
    /// Run the verification suites and print a pass/fail table.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Evaluate the checks of the suite on a thread pool.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Qcm,
    Asm,
    Perm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Bound {
    Lower,
    Upper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Lattice,
    Completion,
    Mth1,
    Tau,
    Assoc,
}

/// Failures split by exit code: usage/IO problems exit 2, mathematical
/// negatives exit 1.
enum Failure {
    Usage(String),
    Math(String),
}

impl Failure {
    fn from_parse(err: ParseError) -> Self {
        if err.is_structural() {
            Failure::Usage(err.to_string())
        } else {
            Failure::Math(err.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
    }
}

fn read_qcm(path: &Path) -> Result<QuasiCopula, Failure> {
    parse_qcm(&read_input(path)?).map_err(Failure::from_parse)
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Convert { from, to, file } => convert(from, to, &file),
        Command::Meet { a, b } => combine(&a, &b, true),
        Command::Join { a, b } => combine(&a, &b, false),
        Command::Decompose { file } => {
            let q = read_qcm(&file)?;
            let parts = decompose(&q);
            if parts.is_empty() {
                println!("maximum element; empty decomposition");
            } else {
                print!("{}", render_decomposition(&parts));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::MiList { n } => {
            let blocks: Vec<String> = enumerate_meet_irreducibles(n as usize)
                .iter()
                .map(render_qcm)
                .collect();
            print!("{}", blocks.join("\n"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { file } => {
            let q = read_qcm(&file)?;
            print!("{}", StatsReport::new(&q));
            Ok(ExitCode::SUCCESS)
        }
        Command::Hasse {
            n,
            format: DiagramFormat::Dot,
            limit,
        } => {
            let diagram = hasse_with_limit(n as usize, limit.unwrap_or(5) as usize)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", diagram.to_dot());
            Ok(ExitCode::SUCCESS)
        }
        Command::Frechet { n, bound } => {
            let q = match bound {
                Bound::Lower => QuasiCopula::frechet_lower(n as usize),
                Bound::Upper => QuasiCopula::frechet_upper(n as usize),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", render_qcm(&q));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n, suite, parallel } => verify(n as usize, suite, parallel),
    }
}

fn validate(file: &Path) -> Result<ExitCode, Failure> {
    let grid = parse_qcm_grid(&read_input(file)?).map_err(Failure::from_parse)?;
    let verdict = classify(&grid).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{verdict}");
    if verdict == Classification::NotQuasiCopula {
        let reason = qcop_core::copula::first_violation(&grid).expect("verdict has a witness");
        println!("reason: {reason}");
        return Ok(ExitCode::from(1));
    }
    let q = QuasiCopula::from_full_grid(&grid).expect("classified as quasi-copula");
    let sets = q.positions();
    println!("positive:{}", render_positions(sets.positive.iter()));
    println!("negative:{}", render_positions(sets.negative.iter()));
    Ok(ExitCode::SUCCESS)
}

fn render_positions<'a>(positions: impl Iterator<Item = &'a (usize, usize)>) -> String {
    let mut out = String::new();
    for (i, j) in positions {
        write!(out, " ({i},{j})").unwrap();
    }
    out
}

fn convert(from: Format, to: Format, file: &Path) -> Result<ExitCode, Failure> {
    let input = read_input(file)?;
    let q: QuasiCopula = match from {
        Format::Qcm => parse_qcm(&input).map_err(Failure::from_parse)?,
        Format::Asm => parse_asm(&input)
            .map_err(Failure::from_parse)?
            .quasi_copula(),
        Format::Perm => parse_perm(&input)
            .map_err(Failure::from_parse)?
            .quasi_copula(),
    };
    let rendered = match to {
        Format::Qcm => render_qcm(&q),
        Format::Asm => render_asm(&q.sign_matrix()),
        Format::Perm => {
            let w = q.permutation().map_err(|e| Failure::Math(e.to_string()))?;
            render_perm(&w)
        }
    };
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn combine(a: &Path, b: &Path, take_meet: bool) -> Result<ExitCode, Failure> {
    let p = read_qcm(a)?;
    let q = read_qcm(b)?;
    let result = if take_meet {
        meet(&p, &q)
    } else {
        qcop_core::order::join(&p, &q)
    };
    let result = result.map_err(|e| Failure::Usage(e.to_string()))?;
    print!("{}", render_qcm(&result));
    Ok(ExitCode::SUCCESS)
}

type Check = (String, Box<dyn Fn() -> bool + Send + Sync>);

fn verify(n: usize, suite: Suite, parallel: bool) -> Result<ExitCode, Failure> {
    let mut checks: Vec<Check> = Vec::new();
    match suite {
        Suite::All => {
            checks.extend(lattice_checks(n)?);
            checks.extend(completion_checks(n)?);
            checks.extend(mth1_checks(n)?);
            checks.extend(tau_checks(n)?);
            checks.extend(assoc_checks(n)?);
        }
        Suite::Lattice => checks.extend(lattice_checks(n)?),
        Suite::Completion => checks.extend(completion_checks(n)?),
        Suite::Mth1 => checks.extend(mth1_checks(n)?),
        Suite::Tau => checks.extend(tau_checks(n)?),
        Suite::Assoc => checks.extend(assoc_checks(n)?),
    }

    let outcomes: Vec<bool> = if parallel {
        checks.par_iter().map(|(_, run)| run()).collect()
    } else {
        checks.iter().map(|(_, run)| run()).collect()
    };
    for ((name, _), ok) in checks.iter().zip(&outcomes) {
        println!("{} {name}", if *ok { "[PASS]" } else { "[FAIL]" });
    }
    let failed = outcomes.iter().filter(|&&ok| !ok).count();
    if failed == 0 {
        println!("all {} checks passed", outcomes.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failed} of {} checks failed", outcomes.len());
        Ok(ExitCode::from(1))
    }
}

fn require(n: usize, low: usize, high: usize, suite: &str) -> Result<(), Failure> {
    if n < low || n > high {
        return Err(Failure::Usage(format!(
            "suite {suite} runs for {low} <= n <= {high}, got {n}"
        )));
    }
    Ok(())
}

fn all_quasi(n: usize) -> Vec<QuasiCopula> {
    qcop_core::enumeration::enumerate_quasi_copulas(n)
        .expect("suite bounds keep n within the default limit")
        .collect()
}

fn all_copulas(n: usize) -> Vec<QuasiCopula> {
    qcop_core::enumeration::enumerate_copulas(n)
        .expect("suite bounds keep n within the default limit")
        .collect()
}

fn lattice_checks(n: usize) -> Result<Vec<Check>, Failure> {
    require(n, 2, 5, "lattice")?;
    let mut checks: Vec<Check> = vec![
        (
            if n <= 4 {
                format!("lattice: closure and laws over all of Q_{n} (exhaustive)")
            } else {
                format!("lattice: closure and laws over all of Q_{n} (100000 sampled triples)")
            },
            Box::new(move || {
                let all = all_quasi(n);
                let report = if n <= 4 {
                    check_lattice_laws(&all)
                } else {
                    check_lattice_laws_random(&all, 100_000, 0x5eed)
                };
                report.map(|r| r.passed()).unwrap_or(false)
            }),
        ),
        (
            format!("lattice: concordance order on copulas matches reverse Bruhat order (n = {n})"),
            Box::new(move || verify_order_isomorphism(n)),
        ),
        (
            format!("lattice: Frechet grids bound all of Q_{n}"),
            Box::new(move || {
                let lower = QuasiCopula::frechet_lower(n).unwrap();
                let upper = QuasiCopula::frechet_upper(n).unwrap();
                all_quasi(n)
                    .iter()
                    .all(|q| leq(&lower, q).unwrap() && leq(q, &upper).unwrap())
            }),
        ),
    ];
    if n >= 3 {
        checks.push((
            format!("lattice: copulas of order {n} are not meet-closed"),
            Box::new(move || {
                let (v, w) = non_lattice_witness(n, NonLatticeSubset::Copulas).unwrap();
                meet(&v, &w).unwrap().classification() == Classification::ProperQuasiCopula
            }),
        ));
    }
    if n >= 4 {
        checks.push((
            format!("lattice: proper quasi-copulas of order {n} are not meet-closed"),
            Box::new(move || {
                let (v, w) = non_lattice_witness(n, NonLatticeSubset::ProperQuasiCopulas).unwrap();
                meet(&v, &w).unwrap().classification() == Classification::Copula
            }),
        ));
    }
    Ok(checks)
}

fn completion_checks(n: usize) -> Result<Vec<Check>, Failure> {
    require(n, 2, 5, "completion")?;
    Ok(vec![
        (
            format!("completion: Dedekind-MacNeille completion of P_{n} is Q_{n}"),
            Box::new(move || verify_completion(n)),
        ),
        (
            format!("completion: cut count equals the Robbins number A_{n}"),
            Box::new(move || {
                let copulas = all_copulas(n);
                let poset =
                    FinitePoset::new(copulas.len(), |a, b| leq(&copulas[a], &copulas[b]).unwrap())
                        .unwrap();
                BigUint::from(dedekind_macneille(&poset).len()) == robbins(n)
            }),
        ),
    ])
}

fn mth1_checks(n: usize) -> Result<Vec<Check>, Failure> {
    require(n, 2, 5, "mth1")?;
    Ok(vec![
        (
            format!("rank: m(Q) counts the meet-irreducibles above Q (all of Q_{n})"),
            Box::new(move || {
                let all = all_quasi(n);
                all.iter()
                    .zip(m_p_all(&all))
                    .all(|(q, count)| m_value(q) == count as i64)
            }),
        ),
        (
            format!("rank: beta(w) = m(Q(w)) for every w in S_{n}"),
            Box::new(move || {
                all_copulas(n)
                    .iter()
                    .all(|q| qcop_core::stats::beta(&q.permutation().unwrap()) == m_value(q))
            }),
        ),
        (
            format!("rank: covers raise the entry sum by exactly one (n = {n})"),
            Box::new(move || {
                let h = hasse_with_limit(n, 5).unwrap();
                h.edges()
                    .iter()
                    .all(|&(lo, hi)| entry_sum(&h.nodes()[hi]) - entry_sum(&h.nodes()[lo]) == 1)
            }),
        ),
        (
            format!("rank: m is strictly decreasing along the order (n = {n})"),
            Box::new(move || {
                let all = all_quasi(n);
                all.iter().all(|p| {
                    all.iter()
                        .all(|q| p == q || !leq(p, q).unwrap() || m_value(p) > m_value(q))
                })
            }),
        ),
    ])
}

fn tau_checks(n: usize) -> Result<Vec<Check>, Failure> {
    require(n, 2, 8, "tau")?;
    Ok(vec![
        (
            format!("tau: max inversions over meet-irreducibles is floor(n^2/4) (n = {n})"),
            Box::new(move || verify_max_inversions(n)),
        ),
        (
            format!("tau: tau lies in [-1/(n-1), 1] on meet-irreducibles (n = {n})"),
            Box::new(move || tau_bound_check(n)),
        ),
        (
            format!("tau: entry-sum and rank formulas for the Frechet bounds (n = {n})"),
            Box::new(move || {
                let k = n as i64;
                entry_sum(&QuasiCopula::frechet_upper(n).unwrap()) == k * (k + 1) * (2 * k + 1) / 6
                    && m_value(&QuasiCopula::frechet_lower(n).unwrap()) == (k - 1) * k * (k + 1) / 6
            }),
        ),
    ])
}

fn assoc_checks(n: usize) -> Result<Vec<Check>, Failure> {
    require(n, 2, 5, "assoc")?;
    Ok(vec![
        (
            format!(
                "assoc: ternary associativity = Lukasiewicz ordinal sum (all copulas, n = {n})"
            ),
            Box::new(move || {
                all_copulas(n).iter().all(|q| {
                    q.is_associative() == q.sign_matrix().lukasiewicz_decomposition().is_some()
                })
            }),
        ),
        (
            format!(
                "assoc: associative meet-irreducibles are the {} Coxeter copulas",
                n - 1
            ),
            Box::new(move || {
                let associative: Vec<QuasiCopula> = enumerate_meet_irreducibles(n)
                    .into_iter()
                    .filter(QuasiCopula::is_associative)
                    .collect();
                associative.len() == n - 1
                    && associative
                        .iter()
                        .all(|q| q.permutation().unwrap().is_adjacent_transposition())
            }),
        ),
        (
            format!("assoc: commutative meet-irreducibles have i2 = i3 (n = {n})"),
            Box::new(move || {
                BigrassmannianParams::enumerate(n)
                    .iter()
                    .all(|p| p.permutation().quasi_copula().is_commutative() == (p.i2 == p.i3))
            }),
        ),
    ])
}
