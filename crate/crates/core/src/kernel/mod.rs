//! Kernels of isogenies splitting multiplication by m: the F₂ matrix of
//! Weierstrass-point multiplicities, its nullity, and the resulting groups.

mod group;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{build_construction, reduce, specialize, CatalogError, Construction, Correspondence, FamilyRecord, HyperellipticModel};
use crate::differential::{rosati_product, DiffError};
use crate::fields::{format_rational, FfElem, FfEmbedding, Field, FieldError, FiniteField, ReductionMap};
use crate::poly::{MPoly, PolyError, UPoly, Var};

pub use group::GroupStructure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("{curve} does not split over F_{q}")]
    NotSplit { curve: String, q: String },
    #[error("{curve} has repeated roots")]
    RepeatedRoots { curve: String },
    #[error("A(γ_{row}, x2) drops degree")]
    DegreeDrop { row: usize },
    #[error("ν = {nu} outside [{g}, {}]", 2 * g)]
    NuOutOfRange { nu: u32, g: u32 },
    #[error("m = {0} is not covered by the kernel lemmas")]
    UnsupportedM(i64),
    #[error("m = {0} needs the two-rank ν")]
    NuRequired(i64),
    #[error("no specialization given for a non-squarefree m")]
    NoSpecialization,
    #[error("catalog: {0}")]
    Catalog(#[from] CatalogError),
    #[error("differential: {0}")]
    Differential(#[from] DiffError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The 2g_X × 2g_Y matrix over F₂ with entries ν_{i,j} + ν_{i,2g_Y+1}, and
/// the root orderings it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTorsionMatrix {
    pub rows: usize,
    pub cols: usize,
    pub bits: Vec<Vec<u8>>,
    /// ν_{i,j} for every root pair, including the index 2g+1 (and 2g+2 for even degree).
    pub nu: Vec<Vec<u32>>,
    pub gammas: Vec<FfElem>,
    pub deltas: Vec<FfElem>,
}

/// Roots of a model's polynomial in index order; errors unless they are
/// all simple and rational.
pub fn split_roots(model: &HyperellipticModel<FiniteField>, curve: &str) -> Result<Vec<FfElem>, KernelError> {
    let h = model.h.to_upoly(Var::X)?;
    let roots = h.roots();
    if roots.iter().any(|(_, m)| *m > 1) {
        return Err(KernelError::RepeatedRoots { curve: curve.into() });
    }
    if roots.len() != h.degree().unwrap_or(0) {
        let f = h.field();
        return Err(KernelError::NotSplit { curve: curve.into(), q: format!("{}^{}", f.p(), f.k()) });
    }
    Ok(roots.into_iter().map(|(r, _)| r).collect())
}

/// The matrix of the two-rank lemma for roots in index order.
pub fn multiplicity_matrix(corr: &Correspondence<FiniteField>) -> Result<TwoTorsionMatrix, KernelError> {
    let gammas = split_roots(&corr.x, "X")?;
    let deltas = split_roots(&corr.y, "Y")?;
    multiplicity_matrix_with(corr, gammas, deltas)
}

/// The matrix for explicit root orderings; index 2g+1 is the last
/// listed root in the odd case and the second to last in the even case.
pub fn multiplicity_matrix_with(
    corr: &Correspondence<FiniteField>,
    gammas: Vec<FfElem>,
    deltas: Vec<FfElem>,
) -> Result<TwoTorsionMatrix, KernelError> {
    let f = corr.field();
    let rows = 2 * corr.x.genus as usize;
    let cols = 2 * corr.y.genus as usize;
    let deg_a = corr.a.degree_in(Var::X2).unwrap_or(0) as usize;
    let mut nu = Vec::with_capacity(gammas.len());
    for (i, g) in gammas.iter().enumerate() {
        let fiber = corr.a.eval_var(Var::X1, g).to_upoly(Var::X2)?;
        if fiber.degree() != Some(deg_a) {
            return Err(KernelError::DegreeDrop { row: i + 1 });
        }
        nu.push(deltas.iter().map(|d| multiplicity(&fiber, f, d)).collect::<Vec<u32>>());
    }
    let bits = (0..rows)
        .map(|i| (0..cols).map(|j| ((nu[i][j] + nu[i][cols]) % 2) as u8).collect())
        .collect();
    Ok(TwoTorsionMatrix { rows, cols, bits, nu, gammas, deltas })
}

fn multiplicity(p: &UPoly<FiniteField>, f: &FiniteField, r: &FfElem) -> u32 {
    let lin = UPoly::linear(f, r);
    let mut cur = p.clone();
    let mut m = 0;
    while let Some(q) = cur.exact_div(&lin) {
        cur = q;
        m += 1;
    }
    m
}

/// Rank of a matrix over F₂.
pub fn rank_f2(bits: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = bits.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// dim ker M: the F₂-rank of ker φ ∩ Jac X[2].
pub fn two_rank(m: &TwoTorsionMatrix) -> u32 {
    (m.rows - rank_f2(&m.bits)) as u32
}

/// The kernel group from m, g and (for m = 4, 8) the two-rank ν.
pub fn kernel_group(m: i64, g: u32, nu: Option<u32>) -> Result<GroupStructure, KernelError> {
    let need_nu = || -> Result<u32, KernelError> {
        let nu = nu.ok_or(KernelError::NuRequired(m))?;
        if nu < g || nu > 2 * g {
            return Err(KernelError::NuOutOfRange { nu, g });
        }
        Ok(nu)
    };
    match m {
        2 | 3 => Ok(GroupStructure::new(vec![(m as u32, g)])),
        4 => {
            let nu = need_nu()?;
            Ok(GroupStructure::new(vec![(4, 2 * g - nu), (2, 2 * (nu - g))]))
        }
        8 => {
            let nu = need_nu()?;
            Ok(GroupStructure::new(vec![(8, 2 * g - nu), (4, nu - g), (2, nu - g)]))
        }
        _ => Err(KernelError::UnsupportedM(m)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub family: String,
    pub construction: String,
    pub genus: u32,
    pub m: i64,
    pub params: Vec<(String, String)>,
    pub prime: Option<u64>,
    /// Which prime above p, as an index into [`ReductionMap::enumerate`].
    pub residue_map: Option<usize>,
    /// Degree over F_p of the field holding every Weierstrass point.
    pub field_degree: Option<usize>,
    pub nu: Option<u32>,
    pub group: GroupStructure,
    pub expected: Option<GroupStructure>,
}

impl KernelReport {
    pub fn matches_expectation(&self) -> Option<bool> {
        self.expected.as_ref().map(|e| *e == self.group)
    }
}

/// The correspondence with coefficients pushed into a larger field.
pub fn base_change(corr: &Correspondence<FiniteField>, emb: &FfEmbedding) -> Correspondence<FiniteField> {
    let map = |p: &MPoly<FiniteField>| p.map_coeffs(&emb.target, |c| emb.apply(c));
    Correspondence {
        construction: corr.construction,
        x: HyperellipticModel::new(map(&corr.x.h), corr.x.genus),
        y: HyperellipticModel::new(map(&corr.y.h), corr.y.genus),
        a: map(&corr.a),
        params: corr.params.clone(),
    }
}

/// A reduction of a specialized correspondence together with the field
/// holding every Weierstrass point of both curves.
#[derive(Debug, Clone)]
pub struct SplitReduction {
    /// Over the residue field.
    pub reduced: Correspondence<FiniteField>,
    /// Over the splitting field.
    pub split: Correspondence<FiniteField>,
    pub gammas: Vec<FfElem>,
    pub deltas: Vec<FfElem>,
    /// Position of the residue map in [`ReductionMap::enumerate`].
    pub map_index: usize,
}

impl SplitReduction {
    pub fn matrix(&self) -> Result<TwoTorsionMatrix, KernelError> {
        multiplicity_matrix_with(&self.split, self.gammas.clone(), self.deltas.clone())
    }
}

/// Specializes, reduces at the first prime above `prime` with good
/// reduction (or the one at `map_index`), and extends scalars until both
/// hyperelliptic polynomials split.
pub fn split_reduction(
    rec: &FamilyRecord,
    c: Construction,
    values: &[(Var, BigRational)],
    prime: u64,
    map_index: Option<usize>,
) -> Result<SplitReduction, KernelError> {
    let corr = specialize(&build_construction(rec, c)?, values)?;
    let maps = ReductionMap::enumerate(&rec.field, prime)?;
    let mut last = None;
    let mut found = None;
    for (idx, map) in maps.iter().enumerate() {
        if map_index.is_some_and(|i| i != idx) {
            continue;
        }
        match reduce(&corr, map) {
            Ok(red) => {
                found = Some((idx, red));
                break;
            }
            Err(e) => last = Some(e),
        }
    }
    let (map_index, reduced) = match (found, last) {
        (Some(f), _) => f,
        (None, Some(e)) => return Err(e.into()),
        (None, None) => return Err(FieldError::NoPrimeAbove { p: prime, reason: "no such residue map".into() }.into()),
    };
    let hx = reduced.x.h.to_upoly(Var::X)?;
    let hy = reduced.y.h.to_upoly(Var::X)?;
    let fx = hx.factor();
    let fy = hy.factor();
    for (name, fac) in [("X", &fx), ("Y", &fy)] {
        if fac.iter().any(|(_, m)| *m > 1) {
            return Err(KernelError::RepeatedRoots { curve: name.into() });
        }
    }
    let deg = fx.iter().chain(&fy).map(|(w, _)| w.degree().unwrap_or(1)).fold(1, num_integer::lcm);
    let base = reduced.field().clone();
    let (split, emb) = if deg == 1 {
        (reduced.clone(), None)
    } else {
        let big = FiniteField::with_degree(prime, base.k() * deg)?;
        let emb = base.embedding_into(&big).ok_or_else(|| FieldError::InvalidFiniteField("no embedding".into()))?;
        (base_change(&reduced, &emb), Some(emb))
    };
    let gammas = roots_via_factors(&fx, emb.as_ref());
    let deltas = roots_via_factors(&fy, emb.as_ref());
    Ok(SplitReduction { reduced, split, gammas, deltas, map_index })
}

/// All roots in the target of `emb` of a product of distinct irreducibles,
/// one root per factor by descent and the rest by Frobenius; index order.
fn roots_via_factors(factors: &[(UPoly<FiniteField>, usize)], emb: Option<&FfEmbedding>) -> Vec<FfElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_70075);
    let mut out = Vec::new();
    for (w, _) in factors {
        let Some(emb) = emb else {
            out.push(w.field().neg(&w.coeff(0)));
            continue;
        };
        let l = &emb.target;
        let wl = w.map(l, |c| emb.apply(c));
        let q = emb.source.order();
        let mut r = wl.split_root(&mut rng).expect("factor splits in the extension");
        for _ in 0..w.degree().unwrap() {
            out.push(r.clone());
            r = l.pow_big(&r, &q);
        }
    }
    let f = emb.map_or_else(|| factors[0].0.field().clone(), |e| e.target.clone());
    out.sort_by_key(|r| f.order_key(r));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoRankAt {
    pub nu: u32,
    pub field_degree: usize,
    pub map_index: usize,
}

/// ν at the first prime above `prime` with good reduction.
pub fn two_rank_at(
    rec: &FamilyRecord,
    c: Construction,
    values: &[(Var, BigRational)],
    prime: u64,
) -> Result<TwoRankAt, KernelError> {
    let red = split_reduction(rec, c, values, prime, None)?;
    Ok(TwoRankAt { nu: two_rank(&red.matrix()?), field_degree: red.split.field().k(), map_index: red.map_index })
}

/// m from the differential representation, then ν at the given
/// specialization when m is 4 or 8, then the group.
pub fn full_kernel_report(
    rec: &FamilyRecord,
    c: Construction,
    values: &[(Var, BigRational)],
    prime: Option<u64>,
) -> Result<KernelReport, KernelError> {
    let corr = build_construction(rec, c)?;
    let (m, _, _) = rosati_product(&corr)?;
    let g = corr.x.genus;
    let at = match (m, prime) {
        (4 | 8, None) => return Err(KernelError::NoSpecialization),
        (4 | 8, Some(p)) => Some(two_rank_at(rec, c, values, p)?),
        _ => None,
    };
    let nu = at.map(|a| a.nu);
    let group = kernel_group(m, g, nu)?;
    debug_assert_eq!(group.order(), num_bigint::BigUint::from(m as u64).pow(g));
    Ok(KernelReport {
        family: rec.name.clone(),
        construction: c.name().into(),
        genus: g,
        m,
        params: values.iter().map(|(v, x)| (v.name().to_string(), format_rational(x))).collect(),
        prime: at.and(prime),
        residue_map: at.map(|a| a.map_index),
        field_degree: at.map(|a| a.field_degree),
        nu,
        group,
        expected: rec.expectation(c).map(|e| e.group.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_from_formulas() {
        assert_eq!(kernel_group(2, 3, None).unwrap().compact(), "2^3");
        assert_eq!(kernel_group(4, 7, Some(10)).unwrap().compact(), "4^4 2^6");
        assert_eq!(kernel_group(4, 9, Some(9)).unwrap().compact(), "4^9");
        assert_eq!(kernel_group(8, 30, Some(49)).unwrap().compact(), "8^11 4^19 2^19");
        assert_eq!(kernel_group(4, 7, Some(15)), Err(KernelError::NuOutOfRange { nu: 15, g: 7 }));
        assert_eq!(kernel_group(4, 7, None), Err(KernelError::NuRequired(4)));
        assert_eq!(kernel_group(9, 2, None), Err(KernelError::UnsupportedM(9)));
    }

    #[test]
    fn f2_rank() {
        assert_eq!(rank_f2(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_f2(&[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank_f2(&[vec![1, 0], vec![1, 1]]), 2);
    }
}
