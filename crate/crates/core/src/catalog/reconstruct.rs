//! Recovery of a factor A of f(x1) − g(x2) from a few printed coefficients.
//!
//! The top homogeneous form of f(x1) − g(x2) is (x1ⁿ − x2ⁿ)/n, so the top
//! form of A is a product of factors x1 − ζ^e·x2 over an exponent set S. The
//! set is found numerically by matching the printed coefficients in every
//! complex embedding of K, the coefficients are recognized as rationals on
//! the tower basis and then checked exactly. The lower homogeneous parts are
//! solved one degree at a time from A_top·B_{k} + B_top·A_{k} = known terms.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{FamilyRecord, Partner};
use crate::fields::{Field, NfElem, NumberField};
use crate::poly::{MPoly, Monomial, UPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("no top form matches the printed coefficients in embedding {0}")]
    NoTopForm(usize),
    #[error("several top forms match the printed coefficients in embedding {0}")]
    AmbiguousTopForm(usize),
    #[error("coefficient of x^{0} of the top form is not a small rational combination")]
    Recognition(usize),
    #[error("top form does not divide xⁿ − 1 exactly")]
    TopFormCheck,
    #[error("no solution in degree {0}")]
    Lift(u32),
}

type Embedding = Vec<Complex64>;

/// Roots of a complex polynomial (coefficients low to high) by Aberth–Ehrlich iteration.
fn complex_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lc).collect();
    let eval = |z: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

fn to_c(r: &BigRational) -> Complex64 {
    Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
}

/// Complex values of the monomial basis at the given generator values.
fn basis_values(k: &NumberField, gens: &[Complex64], len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|idx| {
            let mut rem = idx;
            let mut acc = Complex64::new(1.0, 0.0);
            for (g, v) in k.generators().iter().zip(gens) {
                let e = rem % g.degree();
                rem /= g.degree();
                acc *= v.powu(e as u32);
            }
            acc
        })
        .collect()
}

/// All complex embeddings, as generator values.
fn embeddings(k: &NumberField) -> Vec<Embedding> {
    let mut partial: Vec<Embedding> = vec![Vec::new()];
    for (level, g) in k.generators().iter().enumerate() {
        let sub = k.sub_degree(level);
        let mut next = Vec::new();
        for e in &partial {
            let bv = basis_values(k, e, sub);
            let coeffs: Vec<Complex64> =
                g.min_poly.iter().map(|c| c.iter().zip(&bv).map(|(x, b)| to_c(x) * b).sum()).collect();
            for r in complex_roots(&coeffs) {
                let mut e2 = e.clone();
                e2.push(r);
                next.push(e2);
            }
        }
        partial = next;
    }
    partial
}

fn eval_elem(k: &NumberField, a: &NfElem, bv: &[Complex64]) -> Complex64 {
    k.coords(a).iter().zip(bv).map(|(c, b)| to_c(c) * b).sum()
}

/// Best rational approximation with denominator at most `max_den`.
fn recognize(x: f64, max_den: i64) -> Option<BigRational> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > i128::from(max_den) {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= 1e-7 * x.abs().max(1.0) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac.abs() < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

/// Solves V·c = v by Gaussian elimination with partial pivoting.
fn solve_complex(mut m: Vec<Vec<Complex64>>, mut v: Vec<Complex64>) -> Vec<Complex64> {
    let n = v.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())).expect("nonempty");
        m.swap(col, piv);
        v.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let t = m[col][c];
                m[r][c] -= f * t;
            }
            let t = v[col];
            v[r] -= f * t;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for r in (0..n).rev() {
        let s: Complex64 = (r + 1..n).map(|c| m[r][c] * x[c]).sum();
        x[r] = (v[r] - s) / m[r][r];
    }
    x
}

fn primitive_root(n: u32) -> u32 {
    (2..n)
        .find(|&g| {
            let mut x = 1u32;
            (1..n - 1).all(|_| {
                x = x * g % n;
                x != 1
            })
        })
        .expect("prime modulus")
}

/// Exponent sets that are unions of cosets of the subgroup of (Z/n)^× of
/// index [K:Q], possibly together with 0.
fn candidate_sets(n: u32, deg_k: u32, d: u32) -> Vec<Vec<u32>> {
    let h = (n - 1) / deg_k;
    let g = primitive_root(n);
    let cosets: Vec<Vec<u32>> = (0..deg_k)
        .map(|j| {
            let start = (0..j).fold(1u32, |x, _| x * g % n);
            let gen = (0..deg_k).fold(1u32, |x, _| x * g % n);
            (0..h).scan(start, |x, _| {
                let cur = *x;
                *x = *x * gen % n;
                Some(cur)
            })
            .collect()
        })
        .collect();
    let with_zero = d % h == 1;
    let pick = (d - u32::from(with_zero)) / h;
    let mut out = Vec::new();
    for mask in 0u32..(1 << deg_k) {
        if mask.count_ones() != pick {
            continue;
        }
        let mut s: Vec<u32> = (0..deg_k as usize).filter(|j| mask >> j & 1 == 1).flat_map(|j| cosets[j].clone()).collect();
        if with_zero {
            s.push(0);
        }
        out.push(s);
    }
    out
}

/// Coefficients (low to high) of ∏_{e∈S} (x − ζ^e) with ζ = exp(2πi/n).
fn numeric_top(n: u32, s: &[u32]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for &e in s {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(e) / f64::from(n));
        let mut q = vec![Complex64::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            q[i + 1] += c;
            q[i] -= z * c;
        }
        p = q;
    }
    p
}

fn homogenize(k: &NumberField, p: &UPoly<NumberField>, deg: u32) -> MPoly<NumberField> {
    MPoly::from_terms(
        k,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::from_pairs(&[(Var::X1, i as u32), (Var::X2, deg - i as u32)]), c.clone())),
    )
}

/// Reconstructs the factor A of a t-free family from its anchors.
pub fn reconstruct_factor(rec: &FamilyRecord) -> Result<MPoly<NumberField>, ReconstructError> {
    let k = &rec.field;
    let n = rec.degree();
    if rec.has_t() || rec.partner == Partner::Identity {
        return Err(ReconstructError::Unsupported("needs a t-free family with a conjugate partner".into()));
    }
    let d = rec.anchors.iter().map(|(m, _)| m.total()).max().ok_or_else(|| ReconstructError::Unsupported("no anchors".into()))?;
    let deg_k = k.degree() as u32;
    if !crate::fields::is_prime_u64(u64::from(n)) || !(n - 1).is_multiple_of(deg_k) {
        return Err(ReconstructError::Unsupported("K must be a subfield of Q(ζ_n) for prime n".into()));
    }
    let top_anchors: Vec<(u32, &NfElem)> =
        rec.anchors.iter().filter(|(m, _)| m.total() == d).map(|(m, c)| (m.exp(Var::X1), c)).collect();
    let sets = candidate_sets(n, deg_k, d);
    let embs = embeddings(k);
    let bvs: Vec<Vec<Complex64>> = embs.iter().map(|e| basis_values(k, e, k.degree())).collect();

    // Complex top-form coefficients in each embedding.
    let mut values: Vec<Vec<Complex64>> = Vec::new();
    for (ei, bv) in bvs.iter().enumerate() {
        let targets: Vec<(u32, Complex64)> = top_anchors.iter().map(|(j, c)| (*j, eval_elem(k, c, bv))).collect();
        let scale = targets.iter().map(|(_, v)| v.norm()).fold(1.0, f64::max);
        let matches: Vec<Vec<Complex64>> = sets
            .iter()
            .map(|s| numeric_top(n, s))
            .filter(|p| targets.iter().all(|(j, v)| (p[*j as usize] - v).norm() < 1e-8 * scale))
            .collect();
        match matches.len() {
            0 => return Err(ReconstructError::NoTopForm(ei)),
            1 => values.push(matches.into_iter().next().expect("one match")),
            _ => return Err(ReconstructError::AmbiguousTopForm(ei)),
        }
    }

    // Rational coordinates of each coefficient.
    let mut top = Vec::new();
    for j in 0..=d as usize {
        let v: Vec<Complex64> = values.iter().map(|p| p[j]).collect();
        let coords = solve_complex(bvs.clone(), v);
        let rat = coords
            .iter()
            .map(|c| recognize(c.re, 100_000))
            .collect::<Option<Vec<_>>>()
            .ok_or(ReconstructError::Recognition(j))?;
        top.push(k.from_coords(&rat));
    }
    let a_top = UPoly::new(k.clone(), top);
    let one = k.one();
    let xn_minus_1 = UPoly::monomial(k, one.clone(), n as usize).sub(&UPoly::one(k));
    let inv_n = k.from_rational(&BigRational::new(1.into(), BigInt::from(n))).expect("rational");
    let b_top = xn_minus_1.exact_div(&a_top).ok_or(ReconstructError::TopFormCheck)?.scale(&inv_n);

    // Graded lifting: a_r has degree ≤ d − r, b_r degree ≤ (n − d) − r.
    let g = rec.partner_poly().map_err(|e| ReconstructError::Unsupported(e.to_string()))?;
    let (gg, _, v) = a_top.ext_gcd(&b_top);
    if gg.degree() != Some(0) {
        return Err(ReconstructError::TopFormCheck);
    }
    let e = n - d;
    let mut a_parts = vec![a_top.clone()];
    let mut b_parts = vec![b_top.clone()];
    for r in 1..=d {
        let deg = n - r;
        let fc = rec.f.coeff(&Monomial::var(Var::X, deg));
        let gc = g.coeff(&Monomial::var(Var::X, deg));
        let mut rhs = UPoly::monomial(k, fc, deg as usize).sub(&UPoly::constant(k, gc));
        for i in 1..r {
            rhs = rhs.sub(&a_parts[i as usize].mul(&b_parts[(r - i) as usize]));
        }
        let a_r = rhs.mul(&v).rem(&a_top);
        let b_r = rhs.sub(&b_top.mul(&a_r)).exact_div(&a_top).ok_or(ReconstructError::Lift(deg))?;
        if a_r.degree().unwrap_or(0) > (d - r) as usize || b_r.degree().unwrap_or(0) > e.saturating_sub(r) as usize {
            return Err(ReconstructError::Lift(deg));
        }
        a_parts.push(a_r);
        b_parts.push(b_r);
    }
    let mut a = MPoly::zero(k);
    for (r, part) in a_parts.iter().enumerate() {
        a = a.add(&homogenize(k, part, d - r as u32));
    }
    Ok(a)
}
