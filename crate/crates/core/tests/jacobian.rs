use std::path::PathBuf;

use hypiso_core::catalog::{build_construction, load_catalog, reduce, specialize, Construction, Correspondence, HyperellipticModel};
use hypiso_core::differential::rosati_product;
use hypiso_core::fields::{FiniteField, Field, ReductionMap};
use hypiso_core::jacobian::{CorrespondenceAction, JacobianCtx, MumfordDivisor};
use hypiso_core::kernel::{multiplicity_matrix, two_rank};
use hypiso_core::poly::{MPoly, UPoly, Var};
use num_bigint::BigInt;
use num_rational::BigRational;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/families")
}

fn curve(p: u64, coeffs: &[i64]) -> JacobianCtx {
    let f = FiniteField::prime(p).unwrap();
    JacobianCtx::new(UPoly::new(f.clone(), coeffs.iter().map(|&c| f.from_int(c)).collect())).unwrap()
}

/// #Jac for genus 2 from #X(F_q) and #X(F_q²): L(1) with
/// L(T) = 1 + a1·T + a2·T² + q·a1·T³ + q²·T⁴.
fn genus2_order(q: i128, n1: i128, n2: i128) -> i128 {
    let a1 = n1 - q - 1;
    let a2 = (n2 - q * q - 1 + a1 * a1) / 2;
    1 + a1 + a2 + q * a1 + q * q
}

#[test]
fn group_order_oracle_genus_two() {
    let j = curve(7, &[1, 0, 0, 0, 0, 1]);
    let f49 = FiniteField::with_degree(7, 2).unwrap();
    let emb = j.field().embedding_into(&f49).unwrap();
    let n1 = j.count_points() as i128;
    let n2 = j.base_change(&emb).count_points() as i128;
    let order = genus2_order(7, n1, n2);
    assert!(order > 0);
    let f = j.field().clone();
    let (a, b) = f
        .elements()
        .find_map(|a| f.sqrt(&j.h().eval(&a)).filter(|b| !f.is_zero(b)).map(|b| (a, b)))
        .unwrap();
    let pt = j.point(&a, &b).unwrap();
    assert!(j.scalar_mul(&pt, order as i64).is_identity());
    let ord_pt = (1..=order).find(|&k| j.scalar_mul(&pt, k as i64).is_identity()).unwrap();
    assert_eq!(order % ord_pt, 0);
    for seed in 0..10 {
        let d = j.random_divisor(seed);
        assert!(j.scalar_mul(&d, order as i64).is_identity());
    }
}

#[test]
fn genus_one_points() {
    let j = curve(7, &[1, 0, 0, 1]);
    let f = j.field();
    for seed in 0..10 {
        let d = j.random_divisor(seed);
        assert_eq!(d.degree(), 1);
        let a = f.neg(&d.u.coeff(0));
        let b = d.v.coeff(0);
        assert_eq!(f.mul(&b, &b), j.h().eval(&a));
    }
}

#[test]
fn scalar_mul_consistency() {
    let j = curve(31, &[3, 1, 0, 2, 0, 0, 0, 1]);
    let d = j.random_divisor(7);
    assert!(j.scalar_mul(&d, 0).is_identity());
    assert_eq!(j.scalar_mul(&d, 2), j.add(&d, &d));
    assert_eq!(j.scalar_mul(&d, -3), j.neg(&j.scalar_mul(&d, 3)));
    assert_eq!(j.scalar_mul(&d, 5), j.add(&j.scalar_mul(&d, 2), &j.scalar_mul(&d, 3)));
}

#[test]
fn weierstrass_classes_independent() {
    // y² = x(x−1)(x−2)(x−3)(x−4) over F_11
    let f = FiniteField::prime(11).unwrap();
    let h = (0..5).fold(UPoly::one(&f), |acc, k| acc.mul(&UPoly::linear(&f, &f.from_u64(k))));
    let j = JacobianCtx::new(h).unwrap();
    let classes: Vec<MumfordDivisor> = (1..=4).map(|i| j.two_torsion_class(i).unwrap()).collect();
    for c in &classes {
        assert!(j.double(c).is_identity());
    }
    for mask in 1u32..16 {
        let sum = (0..4).filter(|b| mask >> b & 1 == 1).fold(j.identity(), |acc, b| j.add(&acc, &classes[b]));
        assert!(!sum.is_identity(), "subset {mask:04b} sums to zero");
    }
    assert!(j.two_torsion_class(5).is_err());
}

struct Linear {
    corr: Correspondence<FiniteField>,
    m: i64,
}

fn linear_over(name: &str, values: &[(Var, i64)], p: u64) -> Linear {
    let cat = load_catalog(&fixtures()).unwrap();
    let rec = cat.get(name).unwrap();
    let generic = build_construction(&rec, Construction::Linear).unwrap();
    let (m, _, _) = rosati_product(&generic).unwrap();
    let vals: Vec<(Var, BigRational)> =
        values.iter().map(|&(v, x)| (v, BigRational::from_integer(BigInt::from(x)))).collect();
    let spec = specialize(&generic, &vals).unwrap();
    let map = ReductionMap::build(&rec.field, p, None).unwrap();
    assert_eq!(map.target().k(), 1, "{p} should split");
    Linear { corr: reduce(&spec, &map).unwrap(), m }
}

fn roundtrip(lin: &Linear, trials: u64) {
    let phi = CorrespondenceAction::new(&lin.corr).unwrap();
    let dual = CorrespondenceAction::new(&lin.corr.swap_roles()).unwrap();
    let jx = &phi.source;
    for seed in 0..trials {
        let d = jx.random_divisor(seed);
        let there = phi.apply(&d).unwrap();
        assert!(phi.target.is_valid(&there));
        assert_eq!(dual.apply(&there).unwrap(), jx.scalar_mul(&d, lin.m), "seed {seed}");
    }
}

fn two_torsion_agrees(lin: &Linear) {
    let phi = CorrespondenceAction::new(&lin.corr).unwrap();
    let m = multiplicity_matrix(&lin.corr).unwrap();
    let (jx, jy) = (&phi.source, &phi.target);
    for i in 0..m.rows {
        let image = phi.apply(&jx.two_torsion_class(i + 1).unwrap()).unwrap();
        let predicted = (0..m.cols)
            .filter(|&j| m.bits[i][j] == 1)
            .fold(jy.identity(), |acc, j| jy.add(&acc, &jy.two_torsion_class(j + 1).unwrap()));
        assert_eq!(image, predicted, "row {}", i + 1);
    }
}

#[test]
fn f7_linear_roundtrip_and_two_torsion() {
    let lin = linear_over("f7", &[(Var::T, 0), (Var::S, 4)], 29);
    assert_eq!(lin.m, 2);
    roundtrip(&lin, 10);
    two_torsion_agrees(&lin);
    // m = 2: the kernel (Z/2)³ lies in the 2-torsion.
    assert_eq!(two_rank(&multiplicity_matrix(&lin.corr).unwrap()), 3);
}

#[test]
fn f11_linear_roundtrip_and_two_torsion() {
    let lin = linear_over("f11", &[(Var::S, 3)], 367);
    assert_eq!(lin.m, 3);
    roundtrip(&lin, 10);
    two_torsion_agrees(&lin);
    assert_eq!(two_rank(&multiplicity_matrix(&lin.corr).unwrap()), 0);
}

#[test]
fn correspondence_is_additive() {
    let lin = linear_over("f7", &[(Var::T, 0), (Var::S, 4)], 29);
    let phi = CorrespondenceAction::new(&lin.corr).unwrap();
    let jx = &phi.source;
    for seed in 0..5 {
        let (d1, d2) = (jx.random_divisor(2 * seed), jx.random_divisor(2 * seed + 1));
        let lhs = phi.apply(&jx.add(&d1, &d2)).unwrap();
        let rhs = phi.target.add(&phi.apply(&d1).unwrap(), &phi.apply(&d2).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn diagonal_correspondence_is_identity() {
    let lin = linear_over("f7", &[(Var::T, 0), (Var::S, 4)], 29);
    let f = lin.corr.field().clone();
    let diag = Correspondence {
        construction: Construction::Linear,
        x: lin.corr.x.clone(),
        y: HyperellipticModel::new(lin.corr.x.h.clone(), lin.corr.x.genus),
        a: MPoly::var(&f, Var::X1).sub(&MPoly::var(&f, Var::X2)),
        params: Vec::new(),
    };
    let phi = CorrespondenceAction::new(&diag).unwrap();
    for seed in 0..5 {
        let d = phi.source.random_divisor(seed);
        assert_eq!(phi.apply(&d).unwrap(), d);
    }
}
