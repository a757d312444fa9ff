//! Command-line front end: exact evaluation, identity verification, table
//! reproduction, grid runs, and character inspection.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gauss_analogue::characters::{check_primitive_factorization, gauss_sum_half, Character};
use gauss_analogue::closedform::{class_number, g_of_chi};
use gauss_analogue::harness::{
    self, reports_to_csv, reports_to_json, GridSpec, VerificationReport,
};
use gauss_analogue::sums::{self, SumFamily};
use gauss_analogue::{cyclotomic, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Print the floating-point cross-check alongside text output
    #[arg(long)]
    float_check: bool,

    /// Cap on the cyclotomic field order M (guards runaway parameters)
    #[arg(long, default_value_t = 2000)]
    max_field_order: u64,
}

#[derive(Debug, Args)]
struct FamilyOpts {
    /// Family tag: S1Odd, S1Even, S2..S9, GeneralEven, GeneralOdd, Ident1,
    /// Ident2, CosPower, SinCot, CosSq, CharOnly
    #[arg(long)]
    family: String,

    /// Modulus k (may instead be given as the trailing entry of --params)
    #[arg(long)]
    k: Option<u64>,

    /// Comma-separated parameters. Per family: S1Odd/S1Even a,b; S4 b,d;
    /// S5 b; S6 a,b,d; S7/S8/S9 a,b; CosPower a; SinCot b;
    /// GeneralEven/GeneralOdd L,a,J,b..,c..,d..; others none.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<i64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "gauss-analogue",
    version,
    about = "Exact verification of trigonometric character sum evaluations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a sum family exactly by direct summation
    Eval {
        #[command(flatten)]
        family: FamilyOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify one identity: direct sum vs closed form, exact equality
    Verify {
        #[command(flatten)]
        family: FamilyOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Reproduce every tabulated value
    Tables {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the default verification grid over all theorems
    Grid {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Inspect the real primitive character mod k
    Char {
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn parse_family(opts: &FamilyOpts) -> Result<SumFamily, Error> {
    let tag = opts.family.as_str();
    let lower = tag.to_ascii_lowercase();
    let fixed_k7 = lower == "ident1" || lower == "ident2";
    match opts.k {
        Some(k) => SumFamily::from_tag(tag, k, &opts.params),
        None if fixed_k7 => SumFamily::from_tag(tag, 7, &opts.params),
        None => {
            // allow the modulus as the trailing params entry (e.g. S8 7,2,13)
            if opts.params.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "family {tag} needs --k (or the modulus as the last --params entry)"
                )));
            }
            let (head, tail) = opts.params.split_at(opts.params.len() - 1);
            let k = u64::try_from(tail[0]).map_err(|_| {
                Error::InvalidParameter(format!("modulus {} must be positive", tail[0]))
            })?;
            SumFamily::from_tag(tag, k, head)
        }
    }
}

fn print_reports(reports: &[VerificationReport], common: &CommonOpts) {
    match common.format {
        Format::Json => println!("{}", reports_to_json(reports)),
        Format::Csv => print!("{}", reports_to_csv(reports)),
        Format::Text => {
            for r in reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let mut line = format!("{} = {}  [exact]  {}", r.family, r.lhs_exact, verdict);
                if let Some(matches) = r.matches_paper {
                    if !matches {
                        line.push_str("  [suspected erratum in the published table]");
                    }
                }
                if common.float_check {
                    line.push_str(&format!("  (float residual {:.3e})", r.float_residual));
                }
                println!("{line}");
                if let (Some(false), Some(citation)) = (r.matches_paper, &r.paper_citation) {
                    println!("    note: {citation}");
                }
            }
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();

    let common = match &cli.command {
        Command::Eval { common, .. }
        | Command::Verify { common, .. }
        | Command::Tables { common }
        | Command::Grid { common }
        | Command::Char { common, .. } => common,
    };
    cyclotomic::set_max_field_order(common.max_field_order);

    if let Ok(threads) = std::env::var("GAUSS_ANALOGUE_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            // ignore failure if a global pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    match &cli.command {
        Command::Eval { family, common } => {
            let fam = parse_family(family)?;
            let value = sums::sum_value(&fam)?;
            match common.format {
                Format::Text => {
                    println!("{value}");
                    if common.float_check {
                        let f = sums::eval_direct_float(&fam)?;
                        println!("float: {f:.12}");
                    }
                }
                Format::Json => {
                    let json = serde_json::json!({
                        "family_tag": fam.tag(),
                        "k": fam.modulus(),
                        "params": fam.params(),
                        "value": {
                            "sqrt_coeff_num": value.sqrt_coeff.numer().to_string(),
                            "sqrt_coeff_den": value.sqrt_coeff.denom().to_string(),
                            "rat_num": value.rational_part.numer().to_string(),
                            "rat_den": value.rational_part.denom().to_string(),
                        },
                        "rendered": value.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                Format::Csv => {
                    println!("family_tag,k,params,rendered");
                    let params = fam
                        .params()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(";");
                    println!("{},{},{},{}", fam.tag(), fam.modulus(), params, value);
                }
            }
            Ok(0)
        }
        Command::Verify { family, common } => {
            let fam = parse_family(family)?;
            let report = harness::verify_identity(&fam)?;
            print_reports(std::slice::from_ref(&report), common);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Tables { common } => {
            let reports = harness::run_paper_tables()?;
            print_reports(&reports, common);
            let all_exact = reports.iter().all(|r| r.passed());
            if common.format == Format::Text {
                let matched = reports
                    .iter()
                    .filter(|r| r.matches_paper == Some(true))
                    .count();
                println!(
                    "tables: {}/{} exact, {}/{} matching the published values",
                    reports.iter().filter(|r| r.passed()).count(),
                    reports.len(),
                    matched,
                    reports.len()
                );
            }
            Ok(if all_exact { 0 } else { 1 })
        }
        Command::Grid { common } => {
            let grid = GridSpec::default_grid();
            let outcome = harness::run_grid(&grid)?;
            print_reports(&outcome.reports, common);
            if common.format == Format::Text {
                println!("grid: {} pass, {} fail", outcome.pass, outcome.fail);
            }
            Ok(if outcome.fail == 0 { 0 } else { 1 })
        }
        Command::Char { k, common } => {
            let chi = Character::build_real_primitive(*k)?;
            match common.format {
                Format::Json => {
                    let json = serde_json::json!({
                        "k": k,
                        "parity": if chi.is_even() { "even" } else { "odd" },
                        "values": chi.values(),
                        "g_chi": g_of_chi(&chi),
                        "gauss_sum_half": gauss_sum_half(&chi),
                        "class_number": class_number(*k).ok(),
                        "primitive_factorization": check_primitive_factorization(&chi)?,
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                _ => {
                    println!("character: real primitive chi mod {k}");
                    println!("parity: {}", if chi.is_even() { "even" } else { "odd" });
                    let values = chi
                        .values()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    println!("values (n = 0..{}): {}", k - 1, values);
                    println!("g(chi) = {}", g_of_chi(&chi));
                    println!("G(k/2, chi) = {}", gauss_sum_half(&chi));
                    if let Ok(h) = class_number(*k) {
                        println!("h(-{k}) = {h}");
                    }
                    println!(
                        "Gauss-sum factorization G(n,chi) = chi(n)G(chi): {}",
                        if check_primitive_factorization(&chi)? {
                            "holds"
                        } else {
                            "fails"
                        }
                    );
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
