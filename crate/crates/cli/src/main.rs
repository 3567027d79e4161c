use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use expoly::artifact::Artifact;
use expoly::expr::{elaborate, format_epoly, format_exponent, format_laurent, parse, ElabOptions};
use expoly::{factor_epoly, lattice_basis, support_basis, to_associate, BasisOrder, Config, EPoly, Error};
use serde_json::json;

/// Factor exponential polynomials over cyclotomic fields.
#[derive(Parser, Debug)]
#[command(name = "expoly", version)]
struct Cli {
    /// Initial cyclotomic order N of the coefficient field Q(zeta_N).
    #[arg(long, global = true, default_value_t = 1)]
    cyclotomic_order: u32,
    /// Total-degree bound for classical factorization.
    #[arg(long, global = true, default_value_t = expoly::factor::DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
    /// Largest nesting of E(...) accepted.
    #[arg(long, global = true, default_value_t = 3)]
    height_cap: u32,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized drivers; factorization itself is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor an expression.
    Factor { expr: String },
    /// Print the support: term exponents and the dimension of their span.
    Support { expr: String },
    /// Print a support basis, the exponent matrix and the associate polynomial.
    Associate {
        expr: String,
        #[arg(long, value_enum, default_value_t = BasisKind::Picked)]
        basis: BasisKind,
    },
    /// Re-check a JSON artifact written by `factor --json` ("-" reads stdin).
    Verify { file: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisKind {
    /// Chosen among the exponents and rescaled by the denominators.
    Picked,
    /// Hermite normal form of the exponent lattice (used by `factor`).
    Lattice,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 2 } else { 1 })
        }
    }
}

fn read_input(cli: &Cli, src: &str) -> Result<(EPoly, Vec<String>), Error> {
    let opts = ElabOptions { order: cli.cyclotomic_order.max(1), height_cap: cli.height_cap, ..Default::default() };
    elaborate(&parse(src)?, &opts)
}

fn run(cli: &Cli) -> Result<String, Error> {
    if cli.cyclotomic_order == 0 {
        return Err(Error::InvalidArgument("--cyclotomic-order must be positive".into()));
    }
    match &cli.command {
        Command::Factor { expr } => factor(cli, expr),
        Command::Support { expr } => support(cli, expr),
        Command::Associate { expr, basis } => associate(cli, expr, *basis),
        Command::Verify { file } => verify(cli, file),
    }
}

fn factor(cli: &Cli, src: &str) -> Result<String, Error> {
    let start = Instant::now();
    let (f, vars) = read_input(cli, src)?;
    let parsed = start.elapsed();
    let cfg = Config {
        ambient_order: cli.cyclotomic_order,
        degree_cap: cli.degree_cap,
        height_cap: cli.height_cap,
        ..Config::default()
    };
    let fac = factor_epoly(&f, &cfg)?;
    let mut timings = BTreeMap::new();
    timings.insert("parse_ms".to_string(), parsed.as_secs_f64() * 1e3);
    timings.insert("total_ms".to_string(), start.elapsed().as_secs_f64() * 1e3);
    let art = Artifact::new(src, &vars, &fac, timings);
    if cli.json {
        return Ok(art.to_json());
    }
    let mut out = format!("input: {}\nambient order: {}\n", format_epoly(&f, &vars), art.ambient_order);
    out += &format!("unit: {}", art.unit.scalar);
    if !fac.unit.exponent.is_zero() {
        out += &format!(" * E({})", art.unit.exponent);
    }
    out.push('\n');
    let list = |title: &str, items: Vec<String>| {
        if items.is_empty() {
            format!("{title}: none\n")
        } else {
            format!("{title}:\n{}", items.iter().map(|s| format!("  {s}\n")).collect::<String>())
        }
    };
    let with_mult = |s: &str, m: u32| if m == 1 { s.to_string() } else { format!("({s})^{m}") };
    out += &list("classical", art.classical.iter().map(|c| with_mult(&c.factor, c.multiplicity)).collect());
    out += &list(
        "simple blocks",
        art.simple_blocks.iter().map(|b| format!("[support {}] {}", b.support_line, b.block)).collect(),
    );
    out += &list("nonsimple", art.nonsimple.iter().map(|c| with_mult(&c.factor, c.multiplicity)).collect());
    for rec in &fac.power_searches {
        let r = &rec.result;
        let ys: Vec<String> = (1..=rec.v.nvars()).map(|i| format!("y{i}")).collect();
        out += &format!(
            "power search: V = {}, t* = {:?}, q = {}, M = {}, orbit check: {}\n",
            format_laurent(&rec.v, &ys, &vars),
            r.t_star,
            r.q,
            r.m,
            match rec.orbit_ok {
                Some(true) => "ok",
                Some(false) => "FAILED",
                None => "skipped",
            }
        );
    }
    out += &format!("time: {:.1} ms", art.timings["total_ms"]);
    Ok(out)
}

fn support(cli: &Cli, src: &str) -> Result<String, Error> {
    let (f, vars) = read_input(cli, src)?;
    let s = f.support()?;
    let gens: Vec<String> = s.generators.iter().rev().map(|a| format_exponent(a, &vars, f.order())).collect();
    if cli.json {
        return Ok(json!({ "generators": gens, "dimension": s.dimension }).to_string());
    }
    Ok(format!("generators: {}\ndimension: {}", gens.join(", "), s.dimension))
}

fn associate(cli: &Cli, src: &str, kind: BasisKind) -> Result<String, Error> {
    let (f, vars) = read_input(cli, src)?;
    let basis = match kind {
        BasisKind::Picked => support_basis(&f, BasisOrder::Forward)?,
        BasisKind::Lattice => lattice_basis(&f, BasisOrder::Forward)?,
    };
    let (q, unit) = to_associate(&f, &basis)?;
    let ys: Vec<String> = (1..=basis.dimension()).map(|i| format!("y{i}")).collect();
    let nu: Vec<String> = basis.nu.iter().map(|v| format_exponent(v, &vars, f.order())).collect();
    let rows: Vec<(String, Vec<i64>)> = basis
        .exponents
        .iter()
        .zip(&basis.matrix)
        .rev()
        .map(|(a, r)| (format_exponent(a, &vars, f.order()), r.clone()))
        .collect();
    let qtext = format_laurent(&q, &ys, &vars);
    let unit_text = if unit.exponent.is_zero() {
        "1".to_string()
    } else {
        format!("E({})", format_exponent(&unit.exponent, &vars, f.order()))
    };
    if cli.json {
        let matrix: Vec<_> = rows.iter().map(|(a, r)| json!({ "exponent": a, "row": r })).collect();
        return Ok(json!({ "nu": nu, "matrix": matrix, "q": qtext, "unit": unit_text }).to_string());
    }
    let mut out = String::new();
    for (y, v) in ys.iter().zip(&nu) {
        out += &format!("{y} = E({v})\n");
    }
    out += "exponent matrix:\n";
    for (a, r) in &rows {
        out += &format!("  {a}: {r:?}\n");
    }
    out += &format!("Q = {qtext}\nunit: {unit_text}");
    Ok(out)
}

fn verify(cli: &Cli, file: &str) -> Result<String, Error> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Error::InvalidArgument(format!("{file}: {e}")))?
    };
    let art = Artifact::from_json(&text)?;
    if !art.verify(cli.height_cap)? {
        return Err(Error::InvalidArgument("reconstruction failed: the parts do not multiply to the input".into()));
    }
    let parts = art.classical.len() + art.simple_blocks.len() + art.nonsimple.len();
    if cli.json {
        return Ok(json!({ "verified": true, "parts": parts }).to_string());
    }
    Ok(format!("verified: {parts} parts multiply back to the input"))
}
