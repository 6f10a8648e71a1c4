//! Completes a family fixture whose factor A is only partially printed.
//!
//! Usage: `cargo run --release --example reconstruct_factor -- fixtures/families/f31.fam`

use std::path::Path;

use hypiso_core::catalog::{fixture, reconstruct_factor, verify_factorization};

fn main() {
    let path = std::env::args().nth(1).expect("usage: reconstruct_factor FILE");
    let mut rec = fixture::load_family_file(Path::new(&path)).unwrap_or_else(|e| panic!("{e}"));
    let a = reconstruct_factor(&rec).unwrap_or_else(|e| panic!("{e}"));
    println!("{}: A has {} terms", rec.name, a.num_terms());
    rec.a = a.clone();
    let b = verify_factorization(&rec).unwrap_or_else(|e| panic!("{e}"));
    println!("cofactor B has {} terms", b.num_terms());
    let text = std::fs::read_to_string(&path).expect("read");
    std::fs::write(&path, fixture::replace_factor(&text, &rec.field, &a)).expect("write");
    println!("wrote {path}");
}
