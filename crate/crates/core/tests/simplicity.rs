use std::path::{Path, PathBuf};

use hypiso_core::catalog::{build_construction, load_catalog, reduce, specialize, Construction};
use hypiso_core::fields::{FfEmbedding, Field, FiniteField, ReductionMap};
use hypiso_core::poly::{UPoly, Var};
use hypiso_core::simplicity::*;
use num_bigint::BigInt;
use num_rational::BigRational;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn table(name: &str) -> WeilData {
    WeilData::load(&root().join("weil").join(format!("{name}.weil"))).unwrap()
}

const SMALL: [&str; 5] = ["quadratic-7", "linear-11", "quadratic-11", "linear-15", "linear-21"];
const LARGE: [&str; 5] = ["quadratic-13", "quadratic-15", "linear-31", "quadratic-21", "quadratic-31"];

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn expansion_examples() {
    let chi = weil_expand(&WeilData::from_ints(49, &[12, 28, -152, 3652, 53722]));
    assert_eq!(chi.len(), 11);
    assert_eq!(chi[0], BigInt::from(49).pow(5));
    assert_eq!(chi[9], BigInt::from(12));
    assert_eq!(chi[4], BigInt::from(3652 * 49));
    assert_eq!(chi[1], BigInt::from(12) * BigInt::from(49).pow(4));
}

#[test]
fn witnesses() {
    assert_eq!(irreducibility_witness(&ints(&[2, 1, 1]), 20), Some(3));
    assert_eq!(irreducibility_witness(&ints(&[-1, 0, 1]), 200), None);
    let chi = weil_expand(&table("linear-11"));
    assert!(irreducibility_witness(&chi, 200).is_some());
}

#[test]
fn candidate_sets_match_a_totient_scan() {
    fn phi(n: u64) -> u64 {
        (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
    }
    for g in 1..=8u32 {
        let scan: Vec<u64> = (2..=600).filter(|&d| (2 * g as u64).is_multiple_of(phi(d))).collect();
        assert_eq!(candidate_set(g), scan, "g = {g}");
    }
    assert_eq!(candidate_set(3), [2, 3, 4, 6, 7, 9, 14, 18]);
    assert_eq!(candidate_set(5), [2, 3, 4, 6, 11, 22]);
}

#[test]
fn supersingular_shape_is_inconclusive() {
    let v = howe_zhu_check(&WeilData::from_ints(7, &[0]), 100);
    let SimplicityVerdict::Inconclusive { remaining, .. } = v else { panic!("{v:?}") };
    assert_eq!(remaining[0].0, 2);
    assert!(remaining[0].1.contains("Z[x^2]"));
}

#[test]
fn reducible_polynomial_has_no_witness() {
    // (x² − 2x + 5)², a square of an elliptic Weil polynomial
    let v = howe_zhu_check(&WeilData::from_ints(5, &[-4, 14]), 500);
    assert!(matches!(v, SimplicityVerdict::IrreducibilityUnknown { .. }), "{v:?}");
}

#[test]
fn parse_errors() {
    assert_eq!(WeilData::parse("q 5\n1\n"), Err(SimplicityError::MissingHeader("g")));
    assert_eq!(WeilData::parse("q 5\ng 2\n1\n"), Err(SimplicityError::WrongCount { expected: 2, found: 1 }));
    assert!(matches!(WeilData::parse("q 5\ng 1\n1x\n"), Err(SimplicityError::Parse { line: 3, .. })));
}

#[test]
fn every_table_is_palindromic() {
    for name in SMALL.iter().chain(&LARGE) {
        let w = table(name);
        assert_eq!(w.w.len(), w.g as usize);
        assert!(is_palindromic(&weil_expand(&w), w.q), "{name}");
        assert!(is_palindromic(&weil_expand(&w.corrected()), w.q), "{name}");
    }
}

#[test]
fn printed_quadratic_seven_violates_the_weil_bound() {
    let w = table("quadratic-7");
    assert!(!satisfies_weil_bound(&weil_expand(&w), w.q));
    assert_eq!(w.errata(), vec![(2, BigInt::from(46))]);
    assert!(satisfies_weil_bound(&weil_expand(&w.corrected()), w.q));
}

fn assert_simple(names: &[&str]) {
    for name in names {
        let w = table(name);
        let corrected = w.corrected();
        assert!(satisfies_weil_bound(&weil_expand(&corrected), w.q), "{name}");
        for data in [&w, &corrected] {
            let v = howe_zhu_check(data, 2000);
            assert!(v.is_absolutely_simple(), "{name}: {v:?}");
        }
    }
}

#[test]
fn small_tables_are_absolutely_simple() {
    assert_simple(&SMALL);
}

#[test]
fn large_tables_are_absolutely_simple() {
    assert_simple(&LARGE);
}

/// #X(F) for y² = h(x) over the target of `emb`, counting points at infinity.
fn count_points(h: &UPoly<FiniteField>, emb: &FfEmbedding) -> i128 {
    let big = &emb.target;
    let n = big.order_u128().unwrap() as usize;
    let mut square = vec![false; n];
    for x in big.elements() {
        square[big.index_of(&big.mul(&x, &x)) as usize] = true;
    }
    let hb = h.map(big, |c| emb.apply(c));
    let affine: i128 = big
        .elements()
        .map(|x| {
            let y = hb.eval(&x);
            if big.is_zero(&y) {
                1
            } else if square[big.index_of(&y) as usize] {
                2
            } else {
                0
            }
        })
        .sum();
    let infinity = match hb.degree().unwrap() % 2 {
        1 => 1,
        _ if square[big.index_of(hb.lc().unwrap()) as usize] => 2,
        _ => 0,
    };
    affine + infinity
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// (w_1, w_2) from point counts over F_q and F_{q²} on the first reduction of
/// the table's specialized curve whose w_1 agrees, or the w_1 values seen.
fn counted_coefficients(w: &WeilData) -> Result<(i128, i128), Vec<i128>> {
    let cat = load_catalog(&root().join("families")).unwrap();
    let rec = cat.get(w.meta("family").unwrap()).unwrap();
    let construction = Construction::parse(w.meta("construction").unwrap()).unwrap();
    let values: Vec<(Var, i64)> = w
        .meta("specialization")
        .unwrap()
        .split_whitespace()
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap();
            (Var::from_name(k).unwrap(), v.parse().unwrap())
        })
        .collect();
    let get = |v: Var| values.iter().find(|(k, _)| *k == v).map(|(_, x)| *x);
    // f itself: the linear model at s = 0
    let mut base = vec![(Var::S, rational(0))];
    if let Some(t) = get(Var::T) {
        base.push((Var::T, rational(t)));
    }
    let f_model = specialize(&build_construction(&rec, Construction::Linear).unwrap(), &base).unwrap();
    let p: u64 = w.meta("prime").unwrap().parse().unwrap();
    let q = w.q as i128;
    let e = (1..).find(|&e| (p as i128).pow(e) == q).unwrap() as usize;
    let w1 = i128::try_from(&w.w[0]).unwrap();
    let mut seen = Vec::new();
    for map in ReductionMap::enumerate(&rec.field, p).unwrap() {
        let Ok(red) = reduce(&f_model, &map) else { continue };
        let k = red.field().clone();
        let monic = red.x.h.to_upoly(Var::X).unwrap().monic();
        let c = |v: Var| k.from_int(get(v).unwrap());
        let h = match construction {
            Construction::Linear => monic.add(&UPoly::constant(&k, c(Var::S))),
            Construction::Quadratic => monic
                .mul(&monic)
                .add(&monic.scale(&c(Var::S1)))
                .add(&UPoly::constant(&k, c(Var::S2))),
        };
        let count = |m: usize| {
            let big = FiniteField::with_degree(p, e * m).unwrap();
            count_points(&h, &k.embedding_into(&big).unwrap())
        };
        let s1 = q + 1 - count(1);
        seen.push(-s1);
        if -s1 == w1 {
            let s2 = q * q + 1 - count(2);
            return Ok((-s1, (s1 * s1 - s2) / 2));
        }
    }
    Err(seen)
}

#[test]
fn leading_coefficients_agree_with_point_counts() {
    for name in SMALL.iter().chain(&LARGE) {
        let w = table(name).corrected();
        let expect = (i128::try_from(&w.w[0]).unwrap(), i128::try_from(&w.w[1]).unwrap());
        assert_eq!(counted_coefficients(&w), Ok(expect), "{name}");
    }
}

#[test]
fn loads_from_path() {
    let w = WeilData::load(Path::new(&root().join("weil/linear-15.weil"))).unwrap();
    assert_eq!((w.q, w.g), (17, 7));
    assert_eq!(w.w, ints(&[0, -4, -30, 158, 972, -2264, -18434]));
    assert_eq!(w.point_count(), BigInt::from(18));
}
