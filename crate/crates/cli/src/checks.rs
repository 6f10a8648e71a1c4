//! One function per verification step. Each returns a finished [`Check`]
//! and never panics on bad input.

use std::path::{Path, PathBuf};

use hypiso_core::catalog::{
    build_construction, check_normalization_constants, symmetry_unit, verify_factorization, verify_symmetry, CatalogError, Construction,
    FamilyRecord,
};
use hypiso_core::differential::{rosati_product, DiffError};
use hypiso_core::fields::format_rational;
use hypiso_core::kernel::{kernel_group, two_rank_at};
use hypiso_core::simplicity::{howe_zhu_check, is_palindromic, satisfies_weil_bound, weil_expand, SimplicityVerdict, WeilData};
use serde_json::{json, Value};

use crate::report::Check;

/// Simplicity at or above this genus only runs with `--deep`.
pub const DEEP_GENUS: u32 = 12;

pub fn factorization(rec: &FamilyRecord) -> Check {
    match verify_factorization(rec) {
        Ok(b) => Check::pass(
            "factorization",
            format!("A divides f(x1) - g(x2), cofactor has {} terms", b.num_terms()),
            json!({ "cofactor_terms": b.num_terms(), "factor_terms": rec.a.num_terms() }),
        ),
        Err(e @ CatalogError::FactorizationFails { .. }) => Check::fail("factorization", e.to_string(), json!({})),
        Err(e) => Check::error("factorization", e.to_string()),
    }
}

pub fn symmetry(rec: &FamilyRecord) -> Check {
    if rec.sign.is_none() {
        // no declared ε: any unit c with A(x2,x1) = c·A^σ(x1,x2) will do
        return match symmetry_unit(rec) {
            Ok(Some(c)) => {
                let c = rec.field.display(&c);
                Check::pass("symmetry", format!("A(x2,x1) = c·A^σ(x1,x2), c = {c}"), json!({ "unit": c }))
            }
            Ok(None) => Check::fail("symmetry", "A(x2,x1) is not a multiple of A^σ(x1,x2)", json!({})),
            Err(e) => Check::error("symmetry", e.to_string()),
        };
    }
    match verify_symmetry(rec) {
        Ok(eps) => Check::pass("symmetry", format!("A(x2,x1) = {eps:+}·A^σ(x1,x2)"), json!({ "sign": eps })),
        Err(e @ CatalogError::SymmetryFails { .. }) => Check::fail("symmetry", e.to_string(), json!({})),
        Err(e) => Check::error("symmetry", e.to_string()),
    }
}

pub fn constants(rec: &FamilyRecord) -> Check {
    match check_normalization_constants(rec) {
        Ok(r) => {
            let mut done = Vec::new();
            if r.linear.is_some() {
                done.push("c3 = κ·c2");
            }
            if r.quadratic.is_some() {
                done.push("c5 = λ·c4");
            }
            Check::pass("constants", done.join(", "), json!({ "kappa": r.linear.is_some(), "lambda": r.quadratic.is_some() }))
        }
        Err(CatalogError::NoConstants { .. }) => Check::skip("constants", "no normalization constants for this family"),
        Err(e @ CatalogError::ConstantMismatch { .. }) => Check::fail("constants", e.to_string(), json!({})),
        Err(e) => Check::error("constants", e.to_string()),
    }
}

/// The Rosati check together with the scalar m when it exists.
pub fn rosati(rec: &FamilyRecord, c: Construction) -> (Check, Option<i64>) {
    let corr = match build_construction(rec, c) {
        Ok(corr) => corr,
        Err(e) => return (Check::error("rosati", e.to_string()), None),
    };
    let expected = rec.expectation(c).map(|e| i64::from(e.m));
    match rosati_product(&corr) {
        Ok((m, _, _)) => {
            let ev = json!({ "m": m, "expected": expected });
            let check = match expected {
                Some(want) if want != m => Check::fail("rosati", format!("m = {m}, expected {want}"), ev),
                _ => Check::pass("rosati", format!("M(φ)·M(φ̂) = {m}·I"), ev),
            };
            (check, Some(m))
        }
        Err(DiffError::NotScalar(text)) => {
            (Check::fail("rosati", "product is not a scalar matrix", json!({ "product": text })), None)
        }
        Err(e) => (Check::error("rosati", e.to_string()), None),
    }
}

fn is_deep_kernel(rec: &FamilyRecord, c: Construction) -> bool {
    rec.degree() == 31 && c == Construction::Quadratic
}

/// The kernel group from m and, for m ∈ {4, 8}, the two-rank at the
/// catalog's specialization.
pub fn kernel(rec: &FamilyRecord, c: Construction, m: Option<i64>, deep: bool) -> Check {
    let Some(m) = m else {
        return Check::skip("kernel", "no scalar m");
    };
    let g = c.genus(rec.degree());
    let expected = rec.expectation(c).map(|e| e.group.clone());
    let (nu, extra) = if matches!(m, 4 | 8) {
        if is_deep_kernel(rec, c) && !deep {
            return Check::skip("kernel", "requires --deep");
        }
        let Some(spec) = rec.specialization(c) else {
            return Check::error("kernel", format!("{} {c}: no specialization in the catalog", rec.name));
        };
        match two_rank_at(rec, c, &spec.values, spec.prime) {
            Ok(at) => {
                let params: Vec<Value> =
                    spec.values.iter().map(|(v, x)| json!([v.name(), format_rational(x)])).collect();
                let ev = json!({
                    "prime": spec.prime,
                    "params": params,
                    "nu": at.nu,
                    "field_degree": at.field_degree,
                    "residue_map": at.map_index,
                });
                (Some(at.nu), ev)
            }
            Err(e) => return Check::fail("kernel", e.to_string(), json!({ "prime": spec.prime })),
        }
    } else {
        (None, json!({}))
    };
    let group = match kernel_group(m, g, nu) {
        Ok(group) => group,
        Err(e) => return Check::fail("kernel", e.to_string(), extra),
    };
    let mut ev = extra;
    ev["m"] = json!(m);
    ev["group"] = json!(group.compact());
    ev["expected"] = json!(expected.as_ref().map(|e| e.compact()));
    let nu_text = nu.map_or(String::new(), |nu| format!(" (ν = {nu})"));
    match expected {
        Some(want) if want != group => Check::fail("kernel", format!("{group}{nu_text}, expected {want}"), ev),
        _ => Check::pass("kernel", format!("{group}{nu_text}"), ev),
    }
}

/// Rows printed without a Weil table; their simplicity rests on other
/// arguments.
const NO_TABLE: [(&str, Construction); 2] = [("f7", Construction::Linear), ("f13", Construction::Linear)];

pub fn weil_path(dir: &Path, rec: &FamilyRecord, c: Construction) -> PathBuf {
    dir.join(format!("{}-{}.weil", c.name(), rec.degree()))
}

pub fn simplicity(weil_dir: &Path, rec: &FamilyRecord, c: Construction, deep: bool, prime_bound: u64) -> Check {
    if NO_TABLE.contains(&(rec.name.as_str(), c)) {
        return Check::skip("simplicity", "no Weil table for this row");
    }
    let path = weil_path(weil_dir, rec, c);
    if !path.exists() {
        return Check::error("simplicity", format!("{}: Weil table missing for {} {c}", path.display(), rec.name));
    }
    match WeilData::load(&path) {
        Ok(data) => simplicity_of(&data, deep, prime_bound, true),
        Err(e) => Check::error("simplicity", format!("{}: {e}", path.display())),
    }
}

/// Ingestion checks and the Howe–Zhu verdict for one table, with its
/// declared errata applied unless `errata` is false.
pub fn simplicity_of(data: &WeilData, deep: bool, prime_bound: u64, errata: bool) -> Check {
    if data.g >= DEEP_GENUS && !deep {
        return Check::skip("simplicity", format!("g = {} requires --deep", data.g));
    }
    let corrected = if errata { data.corrected() } else { data.clone() };
    let chi = weil_expand(&corrected);
    let applied: Vec<Value> = if !errata { Vec::new() } else { data.errata() }.iter().map(|(i, v)| json!([i, v.to_string()])).collect();
    let mut ev = json!({
        "q": data.q,
        "g": data.g,
        "errata": applied,
        "palindromic": is_palindromic(&chi, data.q),
        "weil_bound": satisfies_weil_bound(&chi, data.q),
    });
    if !ev["palindromic"].as_bool().unwrap_or(false) || !ev["weil_bound"].as_bool().unwrap_or(false) {
        return Check::fail("simplicity", "table is not a Weil polynomial", ev);
    }
    let verdict = howe_zhu_check(&corrected, prime_bound);
    ev["verdict"] = serde_json::to_value(&verdict).unwrap_or(Value::Null);
    let summary = match &verdict {
        SimplicityVerdict::AbsolutelySimple { witness, checked } => {
            format!("absolutely simple (irreducible mod {witness}, {} values of d excluded)", checked.len())
        }
        SimplicityVerdict::Inconclusive { remaining, .. } => {
            let ds: Vec<String> = remaining.iter().map(|(d, _)| d.to_string()).collect();
            format!("inconclusive, d ∈ {{{}}} remain", ds.join(", "))
        }
        SimplicityVerdict::IrreducibilityUnknown { bound, .. } => format!("no irreducibility witness below {bound}"),
    };
    if verdict.is_absolutely_simple() {
        Check::pass("simplicity", summary, ev)
    } else {
        Check::fail("simplicity", summary, ev)
    }
}
