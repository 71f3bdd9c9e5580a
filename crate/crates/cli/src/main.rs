//! `sepcert`: build and check separation certificates from the command line.
//!
//! Exit codes: 0 success, 1 mathematical failure (including a certificate
//! that does not verify), 2 resource exhaustion, 3 malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sepcert_core::chevalley::chevalley_modulus_parallel;
use sepcert_core::format::{
    certificate_to_json, element_to_json, field_to_json, group_to_json, parse_certificate, parse_element,
    parse_field, parse_group, parse_problem,
};
use sepcert_core::nfield::triangularize_abelian;
use sepcert_core::separator::{bs12_odd_order, verify_certificate_with_cap};
use sepcert_core::units::free_basis;
use sepcert_core::{separate_abelian, Config, Error, FieldElement, Integer, NumberField, UnitList};

#[derive(Parser)]
#[command(name = "sepcert", version, about = "Finite-quotient separation certificates for abelian linear groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Tuning {
    /// Coefficient bound for the multiplicative relation search.
    #[arg(long)]
    relation_bound: Option<u32>,
    /// Largest modulus tried by searches.
    #[arg(long)]
    search_limit: Option<u64>,
    /// Largest finite group enumerated.
    #[arg(long)]
    closure_cap: Option<usize>,
    /// Try single small primes first.
    #[arg(long)]
    fast_path: bool,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

impl Tuning {
    fn apply(&self, mut c: Config) -> Config {
        if let Some(b) = self.relation_bound {
            c.relation_bound = b;
        }
        if let Some(s) = self.search_limit {
            c.search_limit = s;
        }
        if let Some(k) = self.closure_cap {
            c.closure_cap = k;
        }
        if self.fast_path {
            c.fast_path = true;
        }
        if let Some(j) = self.jobs {
            c.jobs = j.max(1);
        }
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Separate the target of a problem file from its subgroup.
    Separate {
        problem: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
        /// Certificate destination; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a problem file.
    Verify {
        certificate: PathBuf,
        problem: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Smallest q such that units ≡ 1 (mod q) are r-th powers in ⟨units⟩.
    Chevalley {
        /// Comma separated units; "a:b" gives a + b·x in an extension.
        #[arg(allow_hyphen_values = true)]
        units: String,
        #[arg(long, default_value_t = 2)]
        r: u64,
        /// Comma separated integers that q must be coprime to.
        #[arg(long, allow_hyphen_values = true)]
        avoid: Option<String>,
        /// Minimal polynomial, comma separated, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Torsion order, free basis indices and index of the free part.
    UnitsBasis {
        #[arg(allow_hyphen_values = true)]
        units: String,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Simultaneously triangularize a commuting generator list.
    Triangularize {
        group: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Orders of the image of a in BS(1,2) modulo odd primes.
    DemoBs12 {
        #[arg(long, default_value_t = 3)]
        from: u64,
        #[arg(long, default_value_t = 97)]
        to: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Math(String),
    Resource(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Parse(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Math(m) | Failure::Resource(m) | Failure::Parse(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = format!("{e:?}");
        let name = kind.split(['(', ' ', '{']).next().unwrap_or_default();
        let msg = format!("{name}: {e}");
        match e {
            Error::Parse(_) => Failure::Parse(msg),
            _ if e.is_resource() => Failure::Resource(msg),
            _ => Failure::Math(msg),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn field_arg(spec: Option<&str>) -> Result<NumberField, Failure> {
    let coeffs = match spec {
        None => Vec::new(),
        Some(s) => s.split(',').map(|c| Value::String(c.trim().to_string())).collect(),
    };
    Ok(parse_field(&coeffs)?)
}

fn units_arg(k: &NumberField, spec: &str) -> Result<Vec<FieldElement>, Failure> {
    spec.split(',')
        .map(|u| {
            let u = u.trim();
            let v = if u.contains(':') {
                Value::Array(u.split(':').map(|c| Value::String(c.to_string())).collect())
            } else {
                Value::String(u.to_string())
            };
            Ok(parse_element(k, &v)?)
        })
        .collect()
}

fn integers_arg(spec: &str) -> Result<Vec<Integer>, Failure> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Failure::Parse(format!("not an integer: {s:?}"))))
        .collect()
}

fn separate(problem: &Path, tuning: &Tuning, output: Option<&Path>) -> Outcome {
    let p = parse_problem(&read(problem)?)?;
    let config = tuning.apply(p.config.clone());
    let s = separate_abelian(&p.gamma, &p.subgroup, &p.target, &config)?;
    emit(&certificate_to_json(&s.certificate), output)?;
    eprintln!(
        "separated: moduli {:?}, closure order {}, depth {}",
        s.certificate.moduli(),
        s.certificate.closure_order,
        s.trace.max_depth()
    );
    Ok(())
}

fn verify(certificate: &Path, problem: &Path, tuning: &Tuning) -> Outcome {
    let cert = parse_certificate(&read(certificate)?)?;
    let p = parse_problem(&read(problem)?)?;
    let cap = tuning.apply(p.config.clone()).closure_cap;
    let v = verify_certificate_with_cap(&cert, &p.gamma, &p.subgroup, &p.target, cap);
    if v.ok {
        println!("ok");
        Ok(())
    } else {
        Err(Failure::Math(format!("verification failed: {}", v.reason.unwrap_or_default())))
    }
}

fn chevalley(
    units: &str,
    r: u64,
    avoid: Option<&str>,
    field: Option<&str>,
    tuning: &Tuning,
    output: Option<&Path>,
) -> Outcome {
    let config = tuning.apply(Config::default());
    let k = field_arg(field)?;
    let list = UnitList::new(&k, units_arg(&k, units)?, config.relation_bound)?;
    let avoid = match avoid {
        Some(a) => integers_arg(a)?,
        None => Vec::new(),
    };
    let cm = chevalley_modulus_parallel(&list, r, &avoid, config.search_limit, config.jobs)?;
    println!("q={}", cm.q);
    println!("r={}", cm.r);
    println!("image order={}", cm.image_order());
    if let Some(out) = output {
        let v = json!({
            "field": field_to_json(&k),
            "units": list.units().iter().map(element_to_json).collect::<Vec<_>>(),
            "r": cm.r,
            "q": cm.q,
            "image_steps": cm.image_steps,
            "kernel": cm.kernel.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        emit(&pretty(&v), Some(out))?;
    }
    Ok(())
}

fn units_basis(units: &str, field: Option<&str>, tuning: &Tuning, output: Option<&Path>) -> Outcome {
    let config = tuning.apply(Config::default());
    let k = field_arg(field)?;
    let list = UnitList::new(&k, units_arg(&k, units)?, config.relation_bound)?;
    let b = free_basis(&list)?;
    let one_based: Vec<usize> = b.basis_indices.iter().map(|i| i + 1).collect();
    let set = one_based.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    println!("p={}", b.torsion_order);
    println!("I={{{set}}}");
    println!("D={}", b.index);
    if let Some(out) = output {
        let v = json!({
            "field": field_to_json(&k),
            "units": list.units().iter().map(element_to_json).collect::<Vec<_>>(),
            "torsion_order": b.torsion_order,
            "basis": one_based,
            "index": b.index.to_string(),
            "spans_powers": b.spans_powers,
        });
        emit(&pretty(&v), Some(out))?;
    }
    Ok(())
}

fn triangularize(group: &Path, output: Option<&Path>) -> Outcome {
    let g = parse_group(&read(group)?)?;
    let (p, t) = triangularize_abelian(&g)?;
    let tri: Value = serde_json::from_str(&group_to_json(&t)).expect("valid json");
    let v = json!({
        "conjugator": sepcert_core::format::matrix_to_json(&p),
        "triangular": tri,
    });
    emit(&pretty(&v), output)
}

fn demo_bs12(from: u64, to: u64, output: Option<&Path>) -> Outcome {
    let primes: Vec<u64> = (from.max(3)..=to).filter(|&p| sepcert_core::exact::arith::is_prime_u64(p)).collect();
    let rows = bs12_odd_order(&primes)?;
    let mut text = String::from("p\torder\todd\trelation\n");
    for r in &rows {
        text.push_str(&format!("{}\t{}\t{}\t{}\n", r.prime, r.order, r.odd, r.relation_holds));
    }
    let all = rows.iter().all(|r| r.odd && r.relation_holds);
    text.push_str(&format!("all odd: {all}\n"));
    print!("{text}");
    if let Some(out) = output {
        let v = json!(rows
            .iter()
            .map(|r| json!({"prime": r.prime, "order": r.order, "odd": r.odd, "relation": r.relation_holds}))
            .collect::<Vec<_>>());
        emit(&pretty(&v), Some(out))?;
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Math("an image of a has even order".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Separate { problem, tuning, output } => separate(problem, tuning, output.as_deref()),
        Command::Verify { certificate, problem, tuning } => verify(certificate, problem, tuning),
        Command::Chevalley { units, r, avoid, field, tuning, output } => {
            chevalley(units, *r, avoid.as_deref(), field.as_deref(), tuning, output.as_deref())
        }
        Command::UnitsBasis { units, field, tuning, output } => {
            units_basis(units, field.as_deref(), tuning, output.as_deref())
        }
        Command::Triangularize { group, output } => triangularize(group, output.as_deref()),
        Command::DemoBs12 { from, to, output } => demo_bs12(*from, *to, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
