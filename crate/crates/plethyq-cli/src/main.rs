//! Command-line front end for the plethyq library.
//!
//! Exit codes: 0 = success/pass, 1 = verification failure (counterexamples
//! printed), 2 = usage error, 3 = resource cap exceeded.  Messages go to
//! standard error, data to standard output.

use std::fs;
use std::io::{BufRead, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use plethyq::classify::{
    exceptional_census, label_record, run_with_threads, search_equivalences, verify_theorem,
    ClassifyError, SearchBounds, Theorem, TheoremReport, VerifyBounds,
};
use plethyq::equivalence::{is_equivalent_validated, EquivalenceError, EquivalenceRecord};
use plethyq::identities::{
    check_chu_vandermonde, check_corollary_qbinom_det, check_proposition_dets, check_ssyt_to_pp,
    macmahon_product, IdentitiesError,
};
use plethyq::irreducible::{is_ell_irreducible, is_ell_irreducible_oracle};
use plethyq::partitions::{Partition, PartitionError};
use plethyq::qpoly::QPoly;
use plethyq::specialize::{
    schur_spec_hcf, schur_spec_validated, skew_spec_capped, SpecializeError,
};
use plethyq::tableaux::{
    plane_partition_gf_by_enumeration, weight_enumerator_capped, SkewShape, TableauxError,
    DEFAULT_CAP,
};

/// Exact computation with principal specializations of Schur functions.
#[derive(Parser)]
#[command(name = "plethyq", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute s_λ(1,q,…,q^ℓ).
    Spec(SpecArgs),
    /// Compute a skew specialization s_{outer/inner}(1,q,…,q^ℓ).
    SkewSpec(SkewSpecArgs),
    /// Decide λ ≡_ℓ^m μ, or re-verify cached records.
    Equiv(EquivArgs),
    /// Exhaustively search for equivalences within bounds.
    Search(SearchArgs),
    /// Verify a theorem on a finite window.
    Verify(VerifyArgs),
    /// Count exceptional equal-degree equivalences.
    Census(CensusArgs),
    /// Test a skew shape for ℓ-irreducibility.
    Irreducible(IrreducibleArgs),
    /// Run the polynomial-identity checks (MacMahon, determinants,
    /// Chu–Vandermonde, tableau/plane-partition bijection).
    Identities(IdentitiesArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Partition, e.g. "8,7,2,2".
    #[arg(long)]
    lambda: String,
    /// Degree ℓ (number of variables minus one).
    #[arg(long)]
    ell: u32,
    /// Cross-check the hook-content, pyramid, and tableau-oracle routes.
    #[arg(long)]
    validate: bool,
    /// Compute by the tableau oracle only.
    #[arg(long)]
    oracle: bool,
    /// Raise the oracle work cap (default 10^7 tableaux).
    #[arg(long)]
    max_work: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SkewSpecArgs {
    /// Skew shape "outer/inner", e.g. "3,3,3,3,1/2"; a plain partition is
    /// treated as a straight shape.
    #[arg(long)]
    shape: String,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    max_work: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long, required_unless_present = "check_record")]
    lambda: Option<String>,
    #[arg(long, required_unless_present = "check_record")]
    ell: Option<u32>,
    #[arg(long, required_unless_present = "check_record")]
    mu: Option<String>,
    #[arg(long, required_unless_present = "check_record")]
    m: Option<u32>,
    /// Re-verify JSON-lines records from a cache file ("-" = standard input).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["lambda", "ell", "mu", "m"])]
    check_record: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    max_size: u32,
    #[arg(long)]
    max_ell: u32,
    #[arg(long)]
    max_m: u32,
    /// Keep only prime equivalences (ℓ ≥ len λ, m ≥ len μ).
    #[arg(long)]
    prime_only: bool,
    /// Keep only equal-degree equivalences (ℓ = m).
    #[arg(long)]
    equal_degree_only: bool,
    /// Also emit identity pairs λ = μ, ℓ = m.
    #[arg(long)]
    include_self_pairs: bool,
    /// Worker threads (default: one per CPU).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the results as a JSON-lines cache file.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
    /// Reuse a cache file written with --out if its bounds match.
    #[arg(long, value_name = "FILE")]
    resume: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem name (conjugates, multiple-pairs, complements, rectangles,
    /// one-row, irreducible, table1, equal-degree, exceptional, solitary)
    /// or "all".
    theorem: String,
    #[arg(long)]
    max_size: Option<u32>,
    #[arg(long)]
    max_ell: Option<u32>,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_k: Option<u32>,
    #[arg(long)]
    max_mu_size: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 35)]
    max_size: u32,
    /// Degree window bound (default: max-size + 6).
    #[arg(long)]
    max_ell: Option<u32>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IrreducibleArgs {
    /// Skew shape "outer/inner".
    #[arg(long)]
    shape: String,
    #[arg(long)]
    ell: u32,
    /// Cross-check the structural classifier against the tableau oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Box-dimension bound for the determinant and bijection checks.
    #[arg(long, default_value_t = 4)]
    max_abc: u32,
    /// Bound on m and r for the Chu–Vandermonde checks.
    #[arg(long, default_value_t = 8)]
    max_mr: u32,
    /// Volume bound for MacMahon-vs-enumeration comparison.
    #[arg(long, default_value_t = 48)]
    max_volume: u32,
    #[arg(long)]
    json: bool,
}

/// A failure carrying its process exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        fail(2, e.to_string())
    }
}

impl From<TableauxError> for Failure {
    fn from(e: TableauxError) -> Self {
        match e {
            TableauxError::CapExceeded { .. } | TableauxError::ShapeTooLarge { .. } => {
                fail(3, e.to_string())
            }
            other => fail(2, other.to_string()),
        }
    }
}

impl From<SpecializeError> for Failure {
    fn from(e: SpecializeError) -> Self {
        let msg = e.to_string();
        match e {
            SpecializeError::Oracle(t) => t.into(),
            SpecializeError::InternalDisagreement(_) => fail(1, msg),
            _ => fail(2, msg),
        }
    }
}

impl From<EquivalenceError> for Failure {
    fn from(e: EquivalenceError) -> Self {
        let msg = e.to_string();
        match e {
            EquivalenceError::NotEquivalent(_) | EquivalenceError::InternalDisagreement(_) => {
                fail(1, msg)
            }
            _ => fail(2, msg),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let msg = e.to_string();
        match e {
            ClassifyError::LimitExceeded { .. } => fail(3, msg),
            ClassifyError::Equivalence(inner) => inner.into(),
            _ => fail(2, msg),
        }
    }
}

impl From<IdentitiesError> for Failure {
    fn from(e: IdentitiesError) -> Self {
        match e {
            IdentitiesError::CapExceeded { .. } => fail(3, e.to_string()),
            IdentitiesError::Oracle(t) => t.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(2, e.to_string())
    }
}

fn parse_shape(text: &str) -> Result<SkewShape, Failure> {
    let (outer, inner) = match text.split_once('/') {
        Some((o, i)) => (
            Partition::parse(o)?,
            if i.trim().is_empty() {
                Partition::empty()
            } else {
                Partition::parse(i)?
            },
        ),
        None => (Partition::parse(text)?, Partition::empty()),
    };
    Ok(SkewShape::new(outer, inner)?)
}

fn print_poly(name: &str, poly: &QPoly, json: bool, extra: serde_json::Value) {
    if json {
        let mut obj = json!({ "poly": poly.to_json() });
        if let (Some(map), Some(e)) = (obj.as_object_mut(), extra.as_object()) {
            for (k, v) in e {
                map.insert(k.clone(), v.clone());
            }
        }
        println!("{obj}");
    } else {
        println!("{name} = {poly}");
    }
}

fn cmd_spec(a: &SpecArgs) -> Result<u8, Failure> {
    let lam = Partition::parse(&a.lambda)?;
    let poly = if a.oracle {
        let cap = a.max_work.unwrap_or(DEFAULT_CAP);
        weight_enumerator_capped(&SkewShape::straight(lam.clone()), a.ell, cap)?
    } else if a.validate {
        schur_spec_validated(&lam, a.ell)?
    } else {
        schur_spec_hcf(&lam, a.ell)
    };
    print_poly(
        &format!("s_({lam})(1,q,…,q^{})", a.ell),
        &poly,
        a.json,
        json!({ "lambda": lam, "ell": a.ell }),
    );
    if a.validate && !a.json {
        eprintln!("validated: hook-content, pyramid, and tableau-oracle routes agree");
    }
    Ok(0)
}

fn cmd_skew_spec(a: &SkewSpecArgs) -> Result<u8, Failure> {
    let shape = parse_shape(&a.shape)?;
    let cap = a.max_work.unwrap_or(DEFAULT_CAP);
    let poly = skew_spec_capped(&shape, a.ell, cap)?;
    print_poly(
        &format!("s_({shape})(1,q,…,q^{})", a.ell),
        &poly,
        a.json,
        json!({ "shape": shape.to_string(), "ell": a.ell }),
    );
    Ok(0)
}

fn cmd_equiv(a: &EquivArgs) -> Result<u8, Failure> {
    if let Some(path) = &a.check_record {
        return check_records(path, a.json);
    }
    let lam = Partition::parse(a.lambda.as_ref().unwrap())?;
    let mu = Partition::parse(a.mu.as_ref().unwrap())?;
    let (ell, m) = (a.ell.unwrap(), a.m.unwrap());
    match is_equivalent_validated(&lam, ell, &mu, m)? {
        Some(_) => {
            let mut record = EquivalenceRecord::new(lam, ell, mu, m)?;
            record.labels = label_record(&record);
            if a.json {
                println!("{}", record.to_json());
            } else {
                let lift = if record.lifts_to_gl() {
                    ", lifts to GL".to_string()
                } else {
                    format!(
                        ", lifts to the subgroup for divisors of {}",
                        record.lift_divisor()
                    )
                };
                println!(
                    "equivalent, d={}, D={}{lift} [{}]",
                    record.d,
                    record.lift_divisor(),
                    record.labels.join(", ")
                );
            }
            Ok(0)
        }
        None => {
            if a.json {
                println!("{}", json!({ "equivalent": false }));
            } else {
                println!("not equivalent");
            }
            Ok(1)
        }
    }
}

fn check_records(path: &str, json: bool) -> Result<u8, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        for line in std::io::stdin().lock().lines() {
            buf.push_str(&line?);
            buf.push('\n');
        }
        buf
    } else {
        fs::read_to_string(path)?
    };
    let mut checked = 0u64;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| fail(2, format!("line {}: {e}", n + 1)))?;
        if v.get("version").is_some() {
            continue; // cache header
        }
        let record = EquivalenceRecord::from_json(&v)?;
        record.check()?;
        checked += 1;
    }
    if json {
        println!("{}", json!({ "checked": checked, "pass": true }));
    } else {
        println!("checked {checked} records: all verify");
    }
    Ok(0)
}

fn cache_header(bounds: &SearchBounds) -> serde_json::Value {
    json!({ "version": env!("CARGO_PKG_VERSION"), "bounds": bounds })
}

fn load_cache(
    path: &str,
    bounds: &SearchBounds,
) -> Result<Option<Vec<EquivalenceRecord>>, Failure> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: serde_json::Value = match lines.next() {
        Some(l) => serde_json::from_str(l).map_err(|e| fail(2, format!("{path}: {e}")))?,
        None => return Ok(None),
    };
    let cached: Option<SearchBounds> = header
        .get("bounds")
        .and_then(|b| serde_json::from_value(b.clone()).ok());
    if cached.as_ref() != Some(bounds) {
        eprintln!("cache {path} has different bounds; recomputing");
        return Ok(None);
    }
    let mut records = Vec::new();
    for line in lines {
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| fail(2, format!("{path}: {e}")))?;
        let r = EquivalenceRecord::from_json(&v)?;
        r.check()?;
        records.push(r);
    }
    Ok(Some(records))
}

fn cmd_search(a: &SearchArgs) -> Result<u8, Failure> {
    let bounds = SearchBounds {
        max_size: a.max_size,
        max_ell: a.max_ell,
        max_m: a.max_m,
        prime_only: a.prime_only,
        equal_degree_only: a.equal_degree_only,
        include_self_pairs: a.include_self_pairs,
    };
    let records = match a
        .resume
        .as_deref()
        .map(|p| load_cache(p, &bounds))
        .transpose()?
    {
        Some(Some(cached)) => {
            eprintln!("resumed {} records from cache", cached.len());
            cached
        }
        _ => run_with_threads(a.threads, || search_equivalences(&bounds))?,
    };
    if let Some(path) = &a.out {
        let mut f = fs::File::create(path)?;
        writeln!(f, "{}", cache_header(&bounds))?;
        for r in &records {
            writeln!(f, "{}", r.to_json())?;
        }
    }
    // Stream to stdout, treating a closed pipe (e.g. `| head`) as done.
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut emit = |line: String| -> Result<bool, Failure> {
        match writeln!(out, "{line}") {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(false),
            Err(e) => Err(e.into()),
        }
    };
    if a.json {
        if emit(cache_header(&bounds).to_string())? {
            for r in &records {
                if !emit(r.to_json().to_string())? {
                    break;
                }
            }
        }
    } else {
        for r in &records {
            if !emit(format!("{r}  [{}]", r.labels.join(", ")))? {
                break;
            }
        }
        eprintln!("{} equivalences found", records.len());
    }
    Ok(0)
}

fn report_out(rep: &TheoremReport, json: bool) -> u8 {
    if json {
        println!("{}", serde_json::to_string(rep).unwrap());
    } else if rep.pass {
        println!("{}: pass ({} checks)", rep.theorem, rep.checked);
    } else {
        println!(
            "{}: FAIL ({} checks, {} counterexamples)",
            rep.theorem,
            rep.checked,
            rep.counterexamples.len()
        );
        for c in &rep.counterexamples {
            println!("  counterexample: {c}");
        }
    }
    if rep.pass {
        0
    } else {
        1
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let theorems: Vec<Theorem> = if a.theorem == "all" {
        Theorem::ALL.to_vec()
    } else {
        vec![a.theorem.parse().map_err(|e: String| fail(2, e))?]
    };
    let mut code = 0;
    for t in theorems {
        let mut b: VerifyBounds = t.default_bounds();
        if let Some(v) = a.max_size {
            b.max_size = v;
        }
        if let Some(v) = a.max_ell {
            b.max_ell = v;
        }
        if let Some(v) = a.max_m {
            b.max_m = v;
        }
        if let Some(v) = a.max_k {
            b.max_k = v;
        }
        if let Some(v) = a.max_mu_size {
            b.max_mu_size = v;
        }
        let rep = verify_theorem(t, b)?;
        code = code.max(report_out(&rep, a.json));
    }
    Ok(code)
}

fn cmd_census(a: &CensusArgs) -> Result<u8, Failure> {
    let report = run_with_threads(a.threads, || exceptional_census(a.max_size, a.max_ell))?;
    if a.json {
        println!("{}", serde_json::to_string(&report).unwrap());
    } else {
        println!(
            "exceptional equivalences with size ≤ {} over window 5 ≤ ℓ ≤ {}: {}",
            report.max_size, report.max_ell, report.total
        );
        for (ell, n) in &report.by_ell {
            println!("  ℓ = {ell:2}: {n}");
        }
        match &report.min_equal_size {
            Some(r) => println!("minimal equal-size pair: {r}"),
            None => println!("no equal-size pair in range"),
        }
    }
    Ok(0)
}

fn cmd_irreducible(a: &IrreducibleArgs) -> Result<u8, Failure> {
    let shape = parse_shape(&a.shape)?;
    let irreducible = is_ell_irreducible(&shape, a.ell);
    if a.oracle {
        let by_oracle =
            is_ell_irreducible_oracle(&shape, a.ell).map_err(|e| fail(3, e.to_string()))?;
        if by_oracle != irreducible {
            return Err(fail(
                1,
                format!("classifier and oracle disagree on {shape} at ℓ = {}", a.ell),
            ));
        }
    }
    if a.json {
        println!(
            "{}",
            json!({ "shape": shape.to_string(), "ell": a.ell, "irreducible": irreducible })
        );
    } else {
        println!(
            "{shape} is {} at ℓ = {}",
            if irreducible {
                "irreducible"
            } else {
                "reducible"
            },
            a.ell
        );
    }
    Ok(0)
}

fn cmd_identities(a: &IdentitiesArgs) -> Result<u8, Failure> {
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0u64;
    for x in 1..=a.max_abc {
        for y in 1..=a.max_abc {
            for z in 1..=a.max_abc {
                checked += 3;
                if !check_ssyt_to_pp(x, y, z)? {
                    failures.push(format!("tableau/plane-partition bijection ({x},{y},{z})"));
                }
                if !check_proposition_dets(x, y, z)? {
                    failures.push(format!("determinant identities ({x},{y},{z})"));
                }
                if !check_corollary_qbinom_det(x, y, z)? {
                    failures.push(format!("q-binomial determinant ({x},{y},{z})"));
                }
            }
        }
    }
    for m in 0..=a.max_mr {
        for r in 0..=a.max_mr {
            for ell in 0..=m {
                checked += 1;
                if !check_chu_vandermonde(m, r, ell) {
                    failures.push(format!("Chu–Vandermonde (m,r,ℓ)=({m},{r},{ell})"));
                }
            }
        }
    }
    for x in 1..=a.max_volume {
        for y in x..=a.max_volume {
            for z in y..=a.max_volume {
                if x * y * z > a.max_volume {
                    break;
                }
                checked += 1;
                if macmahon_product(x, y, z)? != plane_partition_gf_by_enumeration(x, y, z)? {
                    failures.push(format!("MacMahon product vs enumeration ({x},{y},{z})"));
                }
            }
        }
    }
    let pass = failures.is_empty();
    if a.json {
        println!(
            "{}",
            json!({ "checked": checked, "pass": pass, "failures": failures })
        );
    } else if pass {
        println!("identities: pass ({checked} checks)");
    } else {
        println!("identities: FAIL ({} of {checked} checks)", failures.len());
        for f in &failures {
            println!("  counterexample: {f}");
        }
    }
    Ok(if pass { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spec(a) => cmd_spec(a),
        Command::SkewSpec(a) => cmd_skew_spec(a),
        Command::Equiv(a) => cmd_equiv(a),
        Command::Search(a) => cmd_search(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Census(a) => cmd_census(a),
        Command::Irreducible(a) => cmd_irreducible(a),
        Command::Identities(a) => cmd_identities(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
