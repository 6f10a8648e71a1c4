//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with timing.
//! Exits nonzero when any criterion fails.

mod support;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypiso_core::catalog::{
    build_construction, check_normalization_constants, cyclic, dickson_family, load_catalog, reduce, specialize,
    verify_factorization, Catalog, Construction, LITERAL_FAMILIES,
};
use hypiso_core::differential::{diff_matrix, rosati_product, verify_rm_charpoly};
use hypiso_core::fields::{Field, NumberField, ReductionMap};
use hypiso_core::jacobian::{roundtrip, CorrespondenceAction};
use hypiso_core::kernel::{full_kernel_report, multiplicity_matrix};
use hypiso_core::poly::{MPoly, Var};
use hypiso_core::simplicity::{howe_zhu_check, is_palindromic, weil_expand, WeilData};
use num_bigint::BigInt;
use num_rational::BigRational;
use support::props;

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn catalog() -> Result<Catalog, String> {
    load_catalog(&fixtures().join("families")).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let cat = catalog()?;
    let mut count = 0;
    for name in LITERAL_FAMILIES {
        verify_factorization(&cat.get(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        count += 1;
    }
    for n in (3..=13).step_by(2) {
        for e in 1..n {
            verify_factorization(&cyclic(n, e)).map_err(|err| format!("cyclic-{n}-{e}: {err}"))?;
            count += 1;
        }
        for i in 1..=(n - 1) / 2 {
            verify_factorization(&dickson_family(n, i)).map_err(|err| format!("dickson-{n}-{i}: {err}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} factorizations with zero remainder"))
}

fn ac2() -> Outcome {
    let cat = catalog()?;
    let rec = cat.get("f7").map_err(|e| e.to_string())?;
    let k: &NumberField = &rec.field;
    let entry = |a: i64, b: i64, tk: u32| {
        let c = k.from_coords(&[BigRational::from_integer(BigInt::from(a)), BigRational::from_integer(BigInt::from(b))]);
        MPoly::var(k, Var::T).pow(tk).scale(&c)
    };
    let zero = MPoly::zero(k);
    // α, α^σ = −1 − α and (−1 − 2α)t
    let printed = vec![
        vec![entry(0, 1, 0), zero.clone(), zero.clone()],
        vec![zero.clone(), entry(0, 1, 0), zero.clone()],
        vec![entry(-1, -2, 1), zero.clone(), entry(-1, -1, 0)],
    ];
    let m = diff_matrix(&build_construction(&rec, Construction::Linear).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(m.in_holomorphic_basis().entries == printed, || format!("f7 linear matrix differs:\n{}", m.to_text()))?;
    let mut ms = Vec::new();
    for name in LITERAL_FAMILIES {
        let rec = cat.get(name).map_err(|e| e.to_string())?;
        for c in Construction::ALL {
            let corr = build_construction(&rec, c).map_err(|e| e.to_string())?;
            let (m, _, _) = rosati_product(&corr).map_err(|e| format!("{name} {c}: {e}"))?;
            ms.push(m);
        }
    }
    ensure(ms == [2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 8, 8], || format!("m column {ms:?}"))?;
    Ok(format!("f7 linear matrix reproduced; m = {ms:?}"))
}

fn ac3() -> Outcome {
    let cat = catalog()?;
    let rows = [
        ("f15", Construction::Linear, "4^4 2^6"),
        ("f15", Construction::Quadratic, "4^9 2^10"),
        ("f21", Construction::Linear, "4^9 2^2"),
        ("f21", Construction::Quadratic, "4^19 2^2"),
        ("f31", Construction::Linear, "8^5 4^10 2^10"),
        ("f31", Construction::Quadratic, "8^11 4^19 2^19"),
        ("f7", Construction::Linear, "2^3"),
        ("f11", Construction::Linear, "3^5"),
        ("f13", Construction::Linear, "3^6"),
        ("f11", Construction::Quadratic, "3^10"),
        ("f13", Construction::Quadratic, "3^12"),
    ];
    for (name, c, want) in rows {
        let rec = cat.get(name).map_err(|e| e.to_string())?;
        let (values, prime) = match rec.specialization(c) {
            Some(s) => (s.values.clone(), Some(s.prime)),
            None => (Vec::new(), None),
        };
        let r = full_kernel_report(&rec, c, &values, prime).map_err(|e| format!("{name} {c}: {e}"))?;
        ensure(r.group.compact() == want, || format!("{name} {c}: {} instead of {want}", r.group.compact()))?;
    }
    Ok(format!("{} kernel groups reproduced", rows.len()))
}

fn ac4() -> Outcome {
    let cat = catalog()?;
    let mut trials = 0;
    for (name, values, p) in [("f7", vec![(Var::T, 0), (Var::S, 4)], 29u64), ("f11", vec![(Var::S, 3)], 367)] {
        let rec = cat.get(name).map_err(|e| e.to_string())?;
        let generic = build_construction(&rec, Construction::Linear).map_err(|e| e.to_string())?;
        let (m, _, _) = rosati_product(&generic).map_err(|e| e.to_string())?;
        let vals: Vec<(Var, BigRational)> =
            values.iter().map(|&(v, x)| (v, BigRational::from_integer(BigInt::from(x)))).collect();
        let spec = specialize(&generic, &vals).map_err(|e| e.to_string())?;
        let map = ReductionMap::build(&rec.field, p, None).map_err(|e| e.to_string())?;
        ensure(map.target().k() == 1, || format!("{p} does not split in the field of {name}"))?;
        let corr = reduce(&spec, &map).map_err(|e| e.to_string())?;
        let results = roundtrip(&corr, m, 0..10).map_err(|e| format!("{name}: {e}"))?;
        if let Some(bad) = results.iter().find(|t| !t.passed) {
            return Err(format!("{name}: seed {} fails", bad.seed));
        }
        trials += results.len();
        let phi = CorrespondenceAction::new(&corr).map_err(|e| e.to_string())?;
        let mm = multiplicity_matrix(&corr).map_err(|e| e.to_string())?;
        let (jx, jy) = (&phi.source, &phi.target);
        for i in 0..mm.rows {
            let image = phi.apply(&jx.two_torsion_class(i + 1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let mut predicted = jy.identity();
            for j in (0..mm.cols).filter(|&j| mm.bits[i][j] == 1) {
                predicted = jy.add(&predicted, &jy.two_torsion_class(j + 1).map_err(|e| e.to_string())?);
            }
            ensure(image == predicted, || format!("{name}: two-torsion row {} disagrees", i + 1))?;
        }
    }
    Ok(format!("{trials} roundtrips, two-torsion images match the formula"))
}

fn ac5() -> Outcome {
    let small = ["quadratic-7", "linear-11", "quadratic-11", "linear-15", "linear-21"];
    let large = ["quadratic-13", "quadratic-15", "linear-31", "quadratic-21", "quadratic-31"];
    let start = Instant::now();
    let mut small_time = Duration::ZERO;
    for (i, name) in small.iter().chain(&large).enumerate() {
        let w = WeilData::load(&fixtures().join("weil").join(format!("{name}.weil"))).map_err(|e| format!("{name}: {e}"))?;
        ensure(is_palindromic(&weil_expand(&w), w.q), || format!("{name}: not palindromic"))?;
        let v = howe_zhu_check(&w.corrected(), 2000);
        ensure(v.is_absolutely_simple(), || format!("{name}: {}", v.label()))?;
        if i + 1 == small.len() {
            small_time = start.elapsed();
        }
    }
    ensure(small_time < Duration::from_secs(600), || format!("g ≤ 10 tables took {small_time:?}"))?;
    Ok(format!("10 tables palindromic and absolutely simple (g ≤ 10 in {:.1} s)", small_time.as_secs_f64()))
}

fn ac6() -> Outcome {
    let mut count = 0;
    for n in [3u32, 5, 7, 11, 13] {
        for i in 1..=(n - 1) / 2 {
            for c in Construction::ALL {
                verify_rm_charpoly(n, i, c).map_err(|e| format!("n = {n}, i = {i}, {c}: {e}"))?;
                count += 1;
            }
        }
    }
    for n in [3u32, 5, 7] {
        for e in 1..n {
            let rec = cyclic(n, e);
            let k = &rec.field;
            for c in Construction::ALL {
                let m = diff_matrix(&build_construction(&rec, c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                for (i, row) in m.entries.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        let want = if i == j {
                            MPoly::constant(k, k.pow(&k.gen(0), ((i as u64 + 1) * u64::from(e)) % u64::from(n)))
                        } else {
                            MPoly::zero(k)
                        };
                        ensure(*x == want, || format!("cyclic n = {n}, e = {e}, {c}: entry ({i}, {j})"))?;
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} closed forms"))
}

fn ac7() -> Outcome {
    let cat = catalog()?;
    for name in LITERAL_FAMILIES {
        let rec = cat.get(name).map_err(|e| e.to_string())?;
        let r = check_normalization_constants(&rec).map_err(|e| e.to_string())?;
        ensure(r.linear.is_some() && r.quadratic.is_some(), || format!("{name}: κ or λ missing"))?;
    }
    Ok("κ and λ ratios hold for all six families".into())
}

fn ac8() -> Outcome {
    for (name, suite) in props::SUITES {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites × {} cases", props::SUITES.len(), props::CASES))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome, u64); 8] = [
        ("AC1", "factorization identities", ac1, 60),
        ("AC2", "differential matrices and m", ac2, 300),
        ("AC3", "kernel groups", ac3, 120),
        ("AC4", "end-to-end isogeny action", ac4, 180),
        ("AC5", "simplicity verdicts", ac5, u64::MAX),
        ("AC6", "RM/CM closed forms", ac6, 60),
        ("AC7", "normalization constants", ac7, u64::MAX),
        ("AC8", "property suites", ac8, u64::MAX),
    ];
    let mut failed = 0;
    for (id, title, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let secs = start.elapsed().as_secs_f64();
        if outcome.is_ok() && secs > budget as f64 {
            outcome = Err(format!("took {secs:.1} s, budget {budget} s"));
        }
        match outcome {
            Ok(detail) => println!("{id} PASS  {title} ({secs:.1} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL  {title} ({secs:.1} s): {why}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
