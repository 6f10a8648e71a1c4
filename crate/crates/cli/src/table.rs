use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use hypiso_core::catalog::{Catalog, Construction, FamilyRecord};

use crate::checks;
use crate::report::{Check, VerificationReport};

/// Runs `work` on every item with up to `jobs` threads; results come back
/// in input order whatever the scheduling.
pub fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, work: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = work(item);
                slots.lock().expect("no worker panicked while holding the lock")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("workers joined").into_iter().map(|r| r.expect("every slot filled")).collect()
}

pub struct TableOptions<'a> {
    pub weil_dir: &'a Path,
    pub deep: bool,
    pub prime_bound: u64,
    pub jobs: usize,
}

/// Both rows of one family. Factorization and symmetry are per family and
/// reported on each row.
fn family_rows(rec: &FamilyRecord, opts: &TableOptions) -> Vec<VerificationReport> {
    let start = Instant::now();
    let fact = checks::factorization(rec);
    let sym = checks::symmetry(rec);
    let shared = start.elapsed();
    Construction::ALL
        .iter()
        .map(|&c| {
            let start = Instant::now();
            let mut r = VerificationReport::new(&rec.name, Some(c.name()), Some(c.genus(rec.degree())));
            let (ros, m) = checks::rosati(rec, c);
            r.checks = vec![
                fact.clone(),
                sym.clone(),
                ros,
                checks::kernel(rec, c, m, opts.deep),
                checks::simplicity(opts.weil_dir, rec, c, opts.deep, opts.prime_bound),
            ];
            r.elapsed = shared + start.elapsed();
            r
        })
        .collect()
}

pub fn run_theorem_table(catalog: &Catalog, names: &[&str], opts: &TableOptions) -> Vec<VerificationReport> {
    par_map(names, opts.jobs, |name| match catalog.get(name) {
        Ok(rec) => family_rows(&rec, opts),
        Err(e) => {
            let mut r = VerificationReport::new(name, None, None);
            r.checks.push(Check::error("catalog", e.to_string()));
            vec![r]
        }
    })
    .into_iter()
    .flatten()
    .collect()
}
