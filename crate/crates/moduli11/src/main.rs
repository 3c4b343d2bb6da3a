//! `moduli11`: the 1|1 moduli space from the command line.
//!
//! Every subcommand recomputes its answer from scratch in exact rational
//! arithmetic; identical invocations produce byte-identical output. Exit
//! status is 0 exactly when all checks of the invoked command pass, 1 on a
//! failed check or a non-codifferential input, and 2 on usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coderiv::cohomology::Complex;
use coderiv::deform::{default_samples, deformation_record, moduli_diagram};
use coderiv::graded::GradedBasis;
use coderiv::linalg::{fmt_rat, parse_rat, Rat};
use coderiv::moduli::{
    are_equivalent, canonical_coeffs, classify, mc_conditions, CoeffVector, OrbitLabel,
};
use coderiv::selfcheck;
use coderiv::Error;

#[derive(Parser)]
#[command(
    name = "moduli11",
    about = "Cohomology, classification, and deformations of 1|1-dimensional graded associative algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute h^0..h^4 of d1..d6 and compare with the expected table
    Table1,
    /// Classify a coefficient vector x,y,z,w into its orbit
    Classify {
        /// Coefficients of psi[ff->f], psi[ef->e], psi[fe->e], psi[ee->f]
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum, default_value_t = ClassifyFormat::Text)]
        format: ClassifyFormat,
    },
    /// Print the six Maurer-Cartan residuals of a coefficient vector
    Mc {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Per-degree cohomology report of one algebra
    Cohomology {
        /// Algebra label d1..d6 (or `zero`)
        #[arg(long)]
        alg: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=14))]
        max_degree: u32,
        /// Show the even/odd split in the text output
        #[arg(long)]
        parity_split: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Decide equivalence of two coefficient vectors under even automorphisms
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Odd H^2 generators, obstruction brackets, and jump targets
    Deform {
        #[arg(long)]
        alg: String,
        /// Rational sample points t, comma separated
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
    },
    /// The jump-deformation diagram over the six orbits
    Diagram {
        #[arg(long, value_enum, default_value_t = DiagramFormat::Dot)]
        format: DiagramFormat,
        /// Add the zero structure as an isolated node
        #[arg(long)]
        include_zero: bool,
    },
    /// Run the consistency suites
    Selfcheck {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=14))]
        max_degree: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Table1 => cmd_table1(),
        Command::Classify { coeffs, format } => cmd_classify(&coeffs, format),
        Command::Mc { coeffs } => cmd_mc(&coeffs),
        Command::Cohomology {
            alg,
            max_degree,
            parity_split,
            format,
        } => cmd_cohomology(&alg, max_degree as usize, parity_split, format),
        Command::Equiv { left, right } => cmd_equiv(&left, &right),
        Command::Deform { alg, samples } => cmd_deform(&alg, samples.as_deref()),
        Command::Diagram {
            format,
            include_zero,
        } => cmd_diagram(format, include_zero),
        Command::Selfcheck { max_degree } => cmd_selfcheck(max_degree as usize),
    }
}

fn cmd_table1() -> Result<ExitCode, Error> {
    let mut all_ok = true;
    println!("algebra  computed h^0..h^4  expected        status");
    for (label, expected) in selfcheck::TABLE1 {
        let computed = selfcheck::table1_row(label)?;
        let ok = computed == expected;
        all_ok &= ok;
        println!(
            "{label}       {}          {}       {}",
            join_usize(&computed),
            join_usize(&expected),
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("table1: {}", if all_ok { "PASS" } else { "FAIL" });
    Ok(exit_flag(all_ok))
}

fn cmd_classify(coeffs: &str, format: ClassifyFormat) -> Result<ExitCode, Error> {
    let c = CoeffVector::parse(coeffs)?;
    if !coderiv::moduli::is_codifferential(&c) {
        let residuals = mc_conditions(&c);
        match format {
            ClassifyFormat::Text => {
                println!("input: {c}");
                println!("not a codifferential; Maurer-Cartan residuals:");
                print_residuals(&residuals);
            }
            ClassifyFormat::Json => {
                let json = serde_json::json!({
                    "input": c.to_string(),
                    "label": serde_json::Value::Null,
                    "mc_residuals": residuals.iter().map(fmt_rat).collect::<Vec<_>>(),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json).expect("serializes")
                );
            }
        }
        return Ok(ExitCode::from(1));
    }
    let label = classify(&c)?;
    let witness = if label == OrbitLabel::Zero {
        None
    } else {
        are_equivalent(&c, &canonical_coeffs(label))?
    };
    match format {
        ClassifyFormat::Text => {
            println!("input: {c}");
            println!("label: {label}");
            match &witness {
                Some(w) => println!("witness vs canonical {label}: {w}"),
                None => println!("witness: identity (zero structure)"),
            }
        }
        ClassifyFormat::Json => {
            let json = serde_json::json!({
                "input": c.to_string(),
                "label": label.to_string(),
                "witness": witness.map(|w| {
                    serde_json::json!({"b": w.b_text(), "a_squared": w.a_squared_text()})
                }),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("serializes")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_mc(coeffs: &str) -> Result<ExitCode, Error> {
    let c = CoeffVector::parse(coeffs)?;
    let residuals = mc_conditions(&c);
    println!("input: {c}");
    print_residuals(&residuals);
    let ok = residuals.iter().all(|r| r == &Rat::from_integer(0.into()));
    println!(
        "codifferential: {}",
        if ok { "yes ([d,d] = 0)" } else { "no" }
    );
    Ok(exit_flag(ok))
}

fn cmd_cohomology(
    alg: &str,
    max_degree: usize,
    parity_split: bool,
    format: ReportFormat,
) -> Result<ExitCode, Error> {
    let label: OrbitLabel = alg.parse()?;
    let d = canonical_coeffs(label).to_codifferential()?;
    let mut cx = Complex::new(GradedBasis::one_one(), d);
    let report = cx.report(&label.to_string(), max_degree)?;
    match format {
        ReportFormat::Text => print!("{}", report.to_text(parity_split)),
        ReportFormat::Json => println!("{}", report.to_json()),
        ReportFormat::Csv => print!("{}", report.to_csv()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(left: &str, right: &str) -> Result<ExitCode, Error> {
    let l = CoeffVector::parse(left)?;
    let r = CoeffVector::parse(right)?;
    match are_equivalent(&l, &r)? {
        Some(w) => {
            println!("equivalent: {w}");
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("not equivalent");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_deform(alg: &str, samples: Option<&str>) -> Result<ExitCode, Error> {
    let label: OrbitLabel = alg.parse()?;
    let samples = match samples {
        Some(text) => text
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?,
        None => default_samples(),
    };
    let record = deformation_record(label, &samples)?;
    let basis = GradedBasis::one_one();
    println!("deformations of {label}");
    if record.generators.is_empty() {
        println!("odd H^2 generators: none");
        println!("no infinitesimal deformations");
        return Ok(ExitCode::SUCCESS);
    }
    let gens: Vec<String> = record
        .generators
        .iter()
        .map(|g| g.to_text(&basis))
        .collect();
    println!("odd H^2 generators: {}", gens.join("; "));
    if record.miniversal_is_infinitesimal() {
        println!("obstruction brackets: all zero; miniversal = infinitesimal");
    } else {
        for ((i, j), c) in &record.obstructions {
            println!("obstruction [delta{i},delta{j}]: {}", c.to_text(&basis));
        }
    }
    println!("family: {}", record.family.to_text());
    let targets: Vec<String> = record.jump_targets.iter().map(|l| l.to_string()).collect();
    if targets.is_empty() {
        println!("jump targets: none");
    } else {
        println!("jump targets: {}", targets.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_diagram(format: DiagramFormat, include_zero: bool) -> Result<ExitCode, Error> {
    let diagram = moduli_diagram(include_zero)?;
    match format {
        DiagramFormat::Dot => print!("{}", diagram.to_dot()),
        DiagramFormat::Json => println!("{}", diagram.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selfcheck(max_degree: usize) -> Result<ExitCode, Error> {
    let results = selfcheck::run(max_degree)?;
    let mut all_ok = true;
    for suite in &results {
        all_ok &= suite.passed;
        println!(
            "suite {}: {} ({})",
            suite.name,
            if suite.passed { "PASS" } else { "FAIL" },
            suite.detail
        );
    }
    println!("selfcheck: {}", if all_ok { "PASS" } else { "FAIL" });
    Ok(exit_flag(all_ok))
}

fn print_residuals(residuals: &[Rat; 6]) {
    let slots = [
        "phi[eff->e]",
        "phi[eee->e]",
        "phi[efe->f]",
        "phi[eef->f]",
        "phi[ffe->e]",
        "phi[fee->f]",
    ];
    for (slot, value) in slots.iter().zip(residuals) {
        println!("  {slot}: {}", fmt_rat(value));
    }
}

fn join_usize(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn exit_flag(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
