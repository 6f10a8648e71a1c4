//! Randomized algebraic properties, shared by the `properties` and
//! `acceptance` targets.

use std::path::PathBuf;
use std::sync::OnceLock;

use hypiso_core::catalog::{load_catalog, Construction};
use hypiso_core::fields::{FfElem, Field, FiniteField, NfElem, NumberField, ReductionMap};
use hypiso_core::jacobian::JacobianCtx;
use hypiso_core::kernel::{multiplicity_matrix_with, split_reduction, two_rank, SplitReduction};
use hypiso_core::poly::UPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 256;

fn field(sel: usize) -> FiniteField {
    let (p, k) = [(7, 1), (7, 3), (11, 2), (31, 1), (31, 2), (2, 4)][sel % 6];
    FiniteField::with_degree(p, k).unwrap()
}

fn elem(f: &FiniteField, seed: &[u64]) -> FfElem {
    f.from_coords(&seed[..f.k()])
}

fn upoly(f: &FiniteField, coeffs: &[u64]) -> UPoly<FiniteField> {
    UPoly::new(f.clone(), coeffs.iter().map(|&c| f.from_u64(c)).collect())
}

fn nf(k: &NumberField, num: &[i64], den: &[i64]) -> NfElem {
    let c: Vec<BigRational> = (0..k.degree())
        .map(|i| BigRational::new(BigInt::from(num[i % num.len()]), BigInt::from(den[i % den.len()])))
        .collect();
    k.from_coords(&c)
}

fn families() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/families")
}

fn f15_linear() -> &'static SplitReduction {
    static RED: OnceLock<SplitReduction> = OnceLock::new();
    RED.get_or_init(|| {
        let rec = load_catalog(&families()).unwrap().get("f15").unwrap();
        let s = rec.specialization(Construction::Linear).unwrap().clone();
        split_reduction(&rec, Construction::Linear, &s.values, s.prime, None).unwrap()
    })
}

fn reductions() -> &'static Vec<(NumberField, ReductionMap)> {
    static MAPS: OnceLock<Vec<(NumberField, ReductionMap)>> = OnceLock::new();
    MAPS.get_or_init(|| {
        let cat = load_catalog(&families()).unwrap();
        let f7 = cat.get("f7").unwrap().field;
        let f13 = cat.get("f13").unwrap().field;
        let z7 = NumberField::cyclotomic(7);
        [(f7, 11), (f13, 47), (z7.clone(), 29), (z7, 13)]
            .into_iter()
            .map(|(k, p)| {
                let map = ReductionMap::build(&k, p, None).unwrap();
                (k, map)
            })
            .collect()
    })
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, input) => format!("{why} for {input:?}"),
        TestError::Abort(why) => why.to_string(),
    })
}

pub fn finite_field_axioms() -> Result<(), String> {
    let s = (0usize..6, vec(0u64..1000, 4), vec(0u64..1000, 4), vec(0u64..1000, 4));
    run(s, |(sel, a, b, c)| {
        let f = field(sel);
        let (a, b, c) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        prop_assert_eq!(f.mul(&a, &f.one()), a.clone());
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            let q = f.order_u128().unwrap() as u64;
            prop_assert!(f.is_one(&f.pow(&a, q - 1)));
        }
        Ok(())
    })
}

pub fn number_field_axioms() -> Result<(), String> {
    let k = NumberField::cyclotomic(5);
    run((vec(-20i64..20, 4), vec(-20i64..20, 4), vec(1i64..6, 4)), |(a, b, c)| {
        let (x, y) = (nf(&k, &a, &c), nf(&k, &b, &c));
        prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
        prop_assert_eq!(k.mul(&x, &k.add(&x, &y)), k.add(&k.mul(&x, &x), &k.mul(&x, &y)));
        if !k.is_zero(&x) {
            prop_assert!(k.is_one(&k.mul(&x, &k.inv(&x).unwrap())));
        }
        Ok(())
    })
}

pub fn polynomial_ring_axioms() -> Result<(), String> {
    let s = (0usize..6, vec(0u64..50, 0..8), vec(0u64..50, 1..6), vec(0u64..50, 0..5));
    run(s, |(sel, a, b, c)| {
        let f = field(sel);
        let (a, b, c) = (upoly(&f, &a), upoly(&f, &b), upoly(&f, &c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !b.is_zero() {
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            prop_assert!(r.is_zero() || r.degree() < b.degree());
            let g = a.gcd(&b);
            prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
        }
        Ok(())
    })
}

/// Associativity, identity, inverses and commutativity on random curves
/// y² = h(x) of genus 1 to 3 over F_7, F_11 and F_31.
pub fn cantor_group_axioms() -> Result<(), String> {
    let s = (1usize..=3, 0usize..3, vec(0u64..31, 7), vec(any::<u64>(), 3));
    run(s, |(g, qsel, h, seeds)| {
        let f = FiniteField::prime([7, 11, 31][qsel]).unwrap();
        let mut coeffs = h[..2 * g + 1].to_vec();
        coeffs.push(1);
        let Ok(j) = JacobianCtx::new(upoly(&f, &coeffs)) else { return Ok(()) };
        let [a, b, c] = [0, 1, 2].map(|i| j.random_divisor(seeds[i]));
        prop_assert!(j.is_valid(&a) && j.is_valid(&b) && j.is_valid(&c));
        prop_assert_eq!(j.add(&a, &j.identity()), a.clone());
        prop_assert!(j.add(&a, &j.neg(&a)).is_identity());
        prop_assert_eq!(j.add(&a, &b), j.add(&b, &a));
        prop_assert_eq!(j.add(&j.add(&a, &b), &c), j.add(&a, &j.add(&b, &c)));
        prop_assert_eq!(j.double(&a), j.add(&a, &a));
        Ok(())
    })
}

/// ν for f15 linear at p = 31 under random orderings of both root lists.
pub fn nullity_permutation_invariance() -> Result<(), String> {
    let red = f15_linear();
    run(any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut gammas, mut deltas) = (red.gammas.clone(), red.deltas.clone());
        gammas.shuffle(&mut rng);
        deltas.shuffle(&mut rng);
        prop_assert_eq!(two_rank(&multiplicity_matrix_with(&red.split, gammas, deltas).unwrap()), 10);
        Ok(())
    })
}

pub fn reduction_homomorphism() -> Result<(), String> {
    let maps = reductions();
    run((0usize..4, vec(-30i64..30, 6), vec(-30i64..30, 6), vec(1i64..5, 6)), |(sel, a, b, d)| {
        let (k, map) = &maps[sel];
        let (x, y) = (nf(k, &a, &d), nf(k, &b, &d));
        let f = map.target();
        let (mx, my) = (map.apply(&x).unwrap(), map.apply(&y).unwrap());
        prop_assert_eq!(map.apply(&k.add(&x, &y)).unwrap(), f.add(&mx, &my));
        prop_assert_eq!(map.apply(&k.mul(&x, &y)).unwrap(), f.mul(&mx, &my));
        prop_assert!(f.is_one(&map.apply(&k.one()).unwrap()));
        Ok(())
    })
}

#[allow(dead_code)]
pub const SUITES: [(&str, fn() -> Result<(), String>); 6] = [
    ("finite field axioms", finite_field_axioms),
    ("number field axioms", number_field_axioms),
    ("polynomial ring axioms", polynomial_ring_axioms),
    ("Cantor group axioms", cantor_group_axioms),
    ("nullity permutation invariance", nullity_permutation_invariance),
    ("reduction map homomorphism", reduction_homomorphism),
];
