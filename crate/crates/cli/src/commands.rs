use std::path::{Path, PathBuf};
use std::time::Instant;

use hypiso_core::catalog::fixture::parse_assignments;
use hypiso_core::catalog::{
    build_construction, load_catalog, reduce, specialize, Catalog, Construction, FamilyRecord, LITERAL_FAMILIES,
};
use hypiso_core::differential::{diff_matrix, rosati_product};
use hypiso_core::fields::{format_rational, ReductionMap};
use hypiso_core::jacobian::roundtrip;
use hypiso_core::kernel::full_kernel_report;
use hypiso_core::poly::Var;
use hypiso_core::simplicity::WeilData;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::report::{self, Check, Status, VerificationReport};
use crate::table::{par_map, run_theorem_table, TableOptions};
use crate::{checks, CatalogCmd, Cli, Command, DiffCmd, FamilyArgs, Global, JacCmd, KernelArgs, RoundtripArgs, SimpleArgs};

/// A problem with the invocation or the fixtures (exit status 2).
#[derive(Debug)]
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

type Outcome = Result<i32, ConfigError>;

pub fn run(cli: &Cli) -> i32 {
    let g = &cli.global;
    let res = match &cli.command {
        Command::Catalog(CatalogCmd::Verify { family }) => catalog_verify(g, family.as_deref()),
        Command::Diff(DiffCmd::Matrix { fam, holomorphic }) => diff_matrix_cmd(g, fam, *holomorphic),
        Command::Diff(DiffCmd::Rosati { fam }) => rosati_cmd(g, fam),
        Command::Kernel(args) => kernel_cmd(g, args),
        Command::Jac(JacCmd::Roundtrip(args)) => roundtrip_cmd(g, args),
        Command::Simple(args) => simple_cmd(g, args),
        Command::TheoremTable(args) => theorem_table_cmd(g, args.prime_bound),
    };
    match res {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            if g.json {
                let doc = json!({ "schema": report::SCHEMA, "status": "error", "error": msg });
                println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            } else {
                eprintln!("error: {msg}");
            }
            2
        }
    }
}

fn catalog(g: &Global) -> Result<Catalog, ConfigError> {
    Ok(load_catalog(&g.fixtures.join("families"))?)
}

fn family(g: &Global, fam: &FamilyArgs) -> Result<(FamilyRecord, Construction), ConfigError> {
    let c = Construction::parse(&fam.construction)
        .ok_or_else(|| ConfigError(format!("unknown construction `{}` (linear or quadratic)", fam.construction)))?;
    Ok((catalog(g)?.get(&fam.family)?, c))
}

fn params(s: &str) -> Result<Vec<(Var, BigRational)>, ConfigError> {
    parse_assignments(s).ok_or_else(|| ConfigError(format!("cannot parse parameters `{s}` (expected e.g. \"t=0 s=4\")")))
}

fn emit(g: &Global, command: &str, reports: &[VerificationReport]) -> i32 {
    if g.json {
        let doc = report::to_json(command, reports, g.timing);
        println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
    } else {
        print!("{}", report::to_text(reports, g.timing));
    }
    report::exit_code(report::overall(reports))
}

fn catalog_verify(g: &Global, name: Option<&str>) -> Outcome {
    let cat = catalog(g)?;
    let names: Vec<String> = match name {
        Some(n) => vec![n.to_string()],
        None => LITERAL_FAMILIES.iter().map(|s| s.to_string()).collect(),
    };
    let reports = par_map(&names, g.jobs as usize, |name| {
        let start = Instant::now();
        let mut r = VerificationReport::new(name, None, None);
        match cat.get(name) {
            Ok(rec) => r.checks = vec![checks::factorization(&rec), checks::symmetry(&rec), checks::constants(&rec)],
            Err(e) => r.checks.push(Check::error("catalog", e.to_string())),
        }
        r.elapsed = start.elapsed();
        r
    });
    Ok(emit(g, "catalog verify", &reports))
}

fn diff_matrix_cmd(g: &Global, fam: &FamilyArgs, holomorphic: bool) -> Outcome {
    let (rec, c) = family(g, fam)?;
    let mut m = diff_matrix(&build_construction(&rec, c)?)?;
    if holomorphic {
        m = m.in_holomorphic_basis();
    }
    if g.json {
        let rows: Vec<Vec<String>> = m.entries.iter().map(|r| r.iter().map(|e| e.to_text()).collect()).collect();
        let doc = json!({
            "schema": report::SCHEMA,
            "command": "diff matrix",
            "family": rec.name,
            "construction": c.name(),
            "basis": if holomorphic { "x^(i-1)dx/y" } else { "d(x^i)/y" },
            "rows": rows,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("{}", m.to_text());
    }
    Ok(0)
}

fn rosati_cmd(g: &Global, fam: &FamilyArgs) -> Outcome {
    let (rec, c) = family(g, fam)?;
    let start = Instant::now();
    let mut r = VerificationReport::new(&rec.name, Some(c.name()), Some(c.genus(rec.degree())));
    r.checks.push(checks::rosati(&rec, c).0);
    r.elapsed = start.elapsed();
    if !g.json {
        if let Some(product) = r.checks[0].evidence.get("product").and_then(Value::as_str) {
            println!("{product}");
        }
    }
    Ok(emit(g, "diff rosati", &[r]))
}

fn kernel_cmd(g: &Global, args: &KernelArgs) -> Outcome {
    let (rec, c) = family(g, &args.fam)?;
    let (values, prime) = match (&args.params, args.prime) {
        (Some(p), prime) => (params(p)?, prime),
        (None, Some(_)) => return Err(ConfigError("--prime needs --params".into())),
        (None, None) => match rec.specialization(c) {
            Some(s) => (s.values.clone(), Some(s.prime)),
            None => (Vec::new(), None),
        },
    };
    let start = Instant::now();
    let mut r = VerificationReport::new(&rec.name, Some(c.name()), Some(c.genus(rec.degree())));
    let check = match full_kernel_report(&rec, c, &values, prime) {
        Ok(k) => {
            let ev = serde_json::to_value(&k)?;
            let nu = k.nu.map_or(String::new(), |nu| format!(" (ν = {nu})"));
            match (k.matches_expectation(), &k.expected) {
                (Some(false), Some(want)) => Check::fail("kernel", format!("{}{nu}, expected {want}", k.group), ev),
                _ => Check::pass("kernel", format!("m = {}, {}{nu}", k.m, k.group), ev),
            }
        }
        Err(e) => Check::fail("kernel", e.to_string(), json!({})),
    };
    r.checks.push(check);
    r.elapsed = start.elapsed();
    Ok(emit(g, "kernel", &[r]))
}

fn roundtrip_cmd(g: &Global, args: &RoundtripArgs) -> Outcome {
    let (rec, c) = family(g, &args.fam)?;
    let values = params(&args.params)?;
    let start = Instant::now();
    let generic = build_construction(&rec, c)?;
    let (m, _, _) = rosati_product(&generic)?;
    let spec = specialize(&generic, &values)?;
    let maps = ReductionMap::enumerate(&rec.field, args.prime)?;
    let Some((idx, reduced)) = maps.iter().enumerate().find_map(|(i, map)| reduce(&spec, map).ok().map(|r| (i, r))) else {
        return Err(ConfigError(format!("no prime above {} gives good reduction", args.prime)));
    };
    let seeds = g.seed..g.seed.saturating_add(args.count);
    let trials = roundtrip(&reduced, m, seeds)?;
    let mut r = VerificationReport::new(&rec.name, Some(c.name()), Some(c.genus(rec.degree())));
    let param_text: Vec<String> = values.iter().map(|(v, x)| format!("{v}={}", format_rational(x))).collect();
    r.checks = trials
        .iter()
        .map(|t| {
            let ev = json!({
                "seed": t.seed,
                "divisor": t.divisor.to_text(),
                "m": m,
                "prime": args.prime,
                "residue_map": idx,
                "params": param_text,
            });
            let summary = format!("seed {}: φ̂(φ(D)) {} [{m}]D", t.seed, if t.passed { "=" } else { "≠" });
            Check::new("roundtrip", if t.passed { Status::Pass } else { Status::Fail }, summary, ev)
        })
        .collect();
    r.elapsed = start.elapsed();
    Ok(emit(g, "jac roundtrip", &[r]))
}

fn resolve_weil(g: &Global, path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let under = g.fixtures.join("weil").join(path);
    if under.exists() {
        return under;
    }
    let with_ext = under.with_extension("weil");
    if with_ext.exists() {
        with_ext
    } else {
        path.to_path_buf()
    }
}

fn simple_cmd(g: &Global, args: &SimpleArgs) -> Outcome {
    let path = resolve_weil(g, &args.weil);
    let data = WeilData::load(&path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    if data.g >= checks::DEEP_GENUS && !g.deep {
        return Err(ConfigError(format!("g = {} requires --deep", data.g)));
    }
    let start = Instant::now();
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    let mut r = VerificationReport::new(&name, None, Some(data.g));
    let check = checks::simplicity_of(&data, g.deep, args.prime_bound, !args.verbatim);
    if !g.json {
        print_d_evidence(&check.evidence);
    }
    r.checks.push(check);
    r.elapsed = start.elapsed();
    Ok(emit(g, "simple", &[r]))
}

fn print_d_evidence(ev: &Value) {
    let Some(checked) = ev.pointer("/verdict/checked").and_then(Value::as_array) else {
        return;
    };
    for d in checked {
        let proof = match &d["evidence"] {
            Value::Object(o) if o.contains_key("modular") => format!("squarefree mod {}", o["modular"]),
            Value::String(s) if s == "exact_gcd" => "exact gcd".into(),
            other => other.to_string(),
        };
        println!(
            "d = {:<4} χ ∈ Z[x^d]: {:<5}  R_d squarefree: {:<5}  ({proof})",
            d["d"], d["in_z_x_d"], d["r_d_squarefree"]
        );
    }
}

fn theorem_table_cmd(g: &Global, prime_bound: u64) -> Outcome {
    let cat = catalog(g)?;
    let weil_dir = g.fixtures.join("weil");
    let opts = TableOptions { weil_dir: &weil_dir, deep: g.deep, prime_bound, jobs: g.jobs as usize };
    let reports = run_theorem_table(&cat, &LITERAL_FAMILIES, &opts);
    Ok(emit(g, "theorem-table", &reports))
}
