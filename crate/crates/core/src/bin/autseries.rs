//! Command-line front end. Usage errors exit with status 2, computation
//! failures with status 1.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use autseries::algebra::{hensel_root, parse_bipoly, parse_series, truncated_solutions, BiPoly, TruncSeries};
use autseries::catalog::{self, catalog_verify, VerifyOptions};
use autseries::christol::{solve, Method, SolveOptions};
use autseries::classify::{classify_hierarchy, sync_analysis, word, ClassifyOptions, DEFAULT_MMAX};
use autseries::dfao::Dfao;
use autseries::enumerate::{enumerate_finite_order, SearchConfig};
use autseries::inverse::{break_sequence_of, compose_power, exact_order, truncated_order, BREAK_PRECISION_CAP};
use autseries::nottingham::{ks_breaks, WittVec, F2};
use autseries::{Error, Result};

#[derive(Parser)]
#[command(name = "autseries", version, about = "Automatic power series over F_2: solve, invert, order, classify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AutomatonArg {
    /// Automaton file.
    #[arg(long)]
    automaton: PathBuf,
}

#[derive(Args)]
struct Output {
    /// Write the automaton to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a Graphviz edge list instead of the automaton text.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve F(t, X) = 0 for power series roots and build their automata.
    Solve {
        /// Polynomial, or a file containing one.
        #[arg(long)]
        eq: String,
        /// Initial terms selecting the root, e.g. `t+O(t^2)`.
        #[arg(long)]
        prefix: Option<String>,
        #[arg(long, default_value = "diagonal")]
        method: Method,
        /// Number of coefficients printed.
        #[arg(short = 'N', default_value_t = 200)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Coefficient a_k of the series of an automaton.
    Coeff {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[arg(long)]
        k: u128,
    },
    /// The series of an automaton to O(t^N).
    Series {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[arg(short = 'N', default_value_t = 200)]
        n: usize,
    },
    /// Minimize an automaton.
    Minimize {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[command(flatten)]
        output: Output,
    },
    /// Compositional order 2^n (n ≤ nmax); truncated unless --exact.
    Order {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Lower break sequence b_0, …, b_{n-1}.
    Breaks {
        #[command(flatten)]
        automaton: AutomatonArg,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Equation and initial terms of σ^{∘2^n}.
    Power {
        #[arg(long)]
        eq: String,
        #[arg(long)]
        prefix: String,
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'N', default_value_t = 200)]
        precision: usize,
    },
    /// Position in the sparseness hierarchy, with certificates.
    Classify {
        #[command(flatten)]
        automaton: AutomatonArg,
        /// Minimal polynomial (guessed and certified when omitted).
        #[arg(long)]
        eq: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MMAX)]
        mmax: u64,
    },
    /// Synchronizing word and absorbing states.
    Sync {
        #[command(flatten)]
        automaton: AutomatonArg,
    },
    /// All minimal automata on at most N states with series of a given order.
    Enumerate {
        #[arg(short = 'N')]
        states: usize,
        /// Target order, a power of two.
        #[arg(long)]
        order: u64,
        /// Output directory for the automata and the manifest.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = autseries::inverse::FILTER_PRECISION)]
        prefilter: usize,
        /// Skip exact certification (filter only).
        #[arg(long)]
        no_exact: bool,
        /// Percentage of filter rejections re-checked exactly.
        #[arg(long, default_value_t = 0)]
        audit: u32,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// The built-in catalog of named series.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Break sequences predicted from a Witt vector β = Σ a_i t^{-i}.
    WittBreaks {
        /// Terms `i:c0c1…`, comma separated, e.g. `1:10,3:01`.
        #[arg(long)]
        terms: String,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry names.
    List,
    /// Verify one entry, or all of them.
    Verify {
        #[arg(default_value = "all")]
        name: String,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Solve an entry and print (or write) its minimal automaton.
    Export {
        name: String,
        #[command(flatten)]
        output: Output,
    },
}

fn read_automaton(path: &Path) -> Result<Dfao> {
    let text = fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?;
    Dfao::from_text(&text)
}

/// A polynomial given inline or as a file name.
fn read_poly(src: &str) -> Result<BiPoly> {
    let path = Path::new(src);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{src}: {e}")))?;
        parse_bipoly(text.trim(), 2)
    } else {
        parse_bipoly(src, 2)
    }
}

fn emit(a: &Dfao, output: &Output) -> Result<()> {
    let text = if output.dot { a.to_dot() } else { a.to_text() };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Precondition(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_terms(spec: &str) -> Result<Vec<(u64, WittVec<F2>)>> {
    let bad = || Error::Precondition(format!("bad term list `{spec}` (expected `i:c0c1…,…`)"));
    spec.split(',')
        .map(|term| {
            let (i, comps) = term.trim().split_once(':').ok_or_else(bad)?;
            let i = i.parse().map_err(|_| bad())?;
            let comps = comps
                .chars()
                .map(|c| c.to_digit(2).map(|d| F2(d as u8)).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?;
            Ok((i, WittVec::new(comps)?))
        })
        .collect()
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Solve {
            eq,
            prefix,
            method,
            n,
            output,
        } => {
            let f = read_poly(&eq)?;
            let c = prefix.as_deref().map(|p| parse_series(p, 2)).transpose()?;
            let opts = SolveOptions {
                method,
                precision: n,
                ..SolveOptions::default()
            };
            let sols = solve(&f, c.as_ref(), &opts)?;
            if sols.is_empty() {
                return Err(Error::NoSeed);
            }
            if output.out.is_some() && sols.len() > 1 {
                return Err(Error::Precondition(format!(
                    "{} roots; give a longer --prefix to select one",
                    sols.len()
                )));
            }
            for (i, s) in sols.iter().enumerate() {
                let sizes: Vec<String> = s.orbit_sizes.iter().map(|(m, k)| format!("{m} {k}")).collect();
                eprintln!(
                    "root {}: {} states (orbit: {})",
                    i + 1,
                    s.automaton.num_states(),
                    sizes.join(", ")
                );
                eprintln!("series: {}", s.root);
                emit(&s.automaton, &output)?;
            }
        }
        Command::Coeff { automaton, k } => println!("{}", read_automaton(&automaton.automaton)?.coeff_at(k)),
        Command::Series { automaton, n } => println!("{}", read_automaton(&automaton.automaton)?.series_prefix(n)),
        Command::Minimize { automaton, output } => emit(&read_automaton(&automaton.automaton)?.minimize(), &output)?,
        Command::Order { automaton, exact, nmax } => {
            let a = read_automaton(&automaton.automaton)?;
            if exact {
                println!("{}", exact_order(&a, nmax)?);
            } else {
                let p = autseries::inverse::FILTER_PRECISION;
                match truncated_order(&a.series_prefix(p), nmax)? {
                    Some(n) => println!("order 2^{n} (truncated to O(t^{p}))"),
                    None => println!("not of order 2^n for n ≤ {nmax} (exact, witnessed below t^{p})"),
                }
            }
        }
        Command::Breaks { automaton, n } => {
            let b = break_sequence_of(&read_automaton(&automaton.automaton)?, n, BREAK_PRECISION_CAP)?;
            let b: Vec<String> = b.iter().map(ToString::to_string).collect();
            println!("({})", b.join(","));
        }
        Command::Power {
            eq,
            prefix,
            n,
            precision,
        } => {
            let f = read_poly(&eq)?;
            let c = parse_series(&prefix, 2)?;
            let mut seeds = truncated_solutions(&f, Some(&c))?;
            if seeds.len() != 1 {
                return Err(Error::Precondition(format!("prefix selects {} roots", seeds.len())));
            }
            let root = hensel_root(&f, &seeds.remove(0), precision)?;
            let (g, s): (BiPoly, TruncSeries) = compose_power(&f, &root, n)?;
            println!("equation: {g}");
            println!("series: {s}");
        }
        Command::Classify { automaton, eq, mmax } => {
            let a = read_automaton(&automaton.automaton)?;
            let f = eq.as_deref().map(read_poly).transpose()?;
            let opts = ClassifyOptions {
                mmax,
                ..ClassifyOptions::default()
            };
            let r = classify_hierarchy(&a, f.as_ref(), opts)?;
            let level = match r.levels() {
                (true, _, _) => "S".to_string(),
                (false, Some(true), _) => "Ŝ \\ S".to_string(),
                (false, Some(false), Some(true)) => "QS \\ Ŝ".to_string(),
                (false, Some(false), Some(false)) => "not QS".to_string(),
                _ => "inconclusive".to_string(),
            };
            println!("{level}");
            print!("{r}");
        }
        Command::Sync { automaton } => {
            let a = read_automaton(&automaton.automaton)?;
            let r = sync_analysis(&a);
            match &r.word {
                Some(w) => println!("synchronizing word (reading order): {}", word(w)),
                None => {
                    let (u, v) = r.obstruction.expect("unmergeable pair");
                    println!("not synchronizing: states {} and {} never merge", u + 1, v + 1);
                }
            }
            let abs: Vec<String> = r.absorbing.iter().map(|s| (s + 1).to_string()).collect();
            println!("absorbing states: {}", if abs.is_empty() { "none".into() } else { abs.join(",") });
        }
        Command::Enumerate {
            states,
            order,
            out,
            prefilter,
            no_exact,
            audit,
            workers,
        } => {
            if !order.is_power_of_two() || order < 2 {
                return Err(Error::Precondition(format!("order {order} is not a power of two ≥ 2")));
            }
            let cfg = SearchConfig {
                prefilter,
                exact: !no_exact,
                audit_percent: audit,
                ..SearchConfig::new(states, order.trailing_zeros())
            };
            let r = enumerate_finite_order(&cfg, workers)?;
            print!("{}", r.manifest);
            println!("emitted = {}", r.automata.len());
            for (i, a) in r.automata.iter().enumerate() {
                println!("automaton {}: {} states, series {}", i + 1, a.num_states(), a.series_prefix(16));
            }
            if let Some(dir) = out {
                r.write_to(&dir)?;
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for e in catalog::entries()? {
                    println!("{}", e.name);
                }
            }
            CatalogAction::Verify { name, workers } => {
                let reports = catalog_verify(&name, &VerifyOptions::default(), workers)?;
                let mut ok = true;
                for r in &reports {
                    print!("{r}");
                    ok &= r.passed();
                }
                let passed = reports.iter().filter(|r| r.passed()).count();
                println!("{passed}/{} entries pass", reports.len());
                return Ok(ok);
            }
            CatalogAction::Export { name, output } => {
                emit(&catalog::solve_entry(&catalog::entry(&name)?)?, &output)?;
            }
        },
        Command::WittBreaks { terms, n } => println!("{}", ks_breaks(&parse_terms(&terms)?, n)?),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
