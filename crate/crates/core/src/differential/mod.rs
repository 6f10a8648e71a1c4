//! Action of correspondence-induced homomorphisms on regular differentials.
//!
//! On X: y² = h(x) of genus g the regular differentials are spanned by
//! d(xⁱ)/y for i = 1…g. Pushing d(x1ⁱ)/y1 through the correspondence
//! A(x1, x2) = 0, y1 = y2 gives d(tᵢ)/y2, where tᵢ is the i-th power sum of
//! the x1-roots of A, so the matrix entry t_{i,j} is the coefficient of x2^j
//! in tᵢ.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::catalog::{build_construction, dickson, dickson_family, Construction, Correspondence};
use crate::fields::{Field, FieldError, NfElem, NumberField, Rationals};
use crate::poly::{MPoly, UPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffError {
    #[error("A is not monic in x1 up to a unit constant")]
    NotMonic,
    #[error("the Rosati product is not a scalar integer matrix:\n{0}")]
    NotScalar(String),
    #[error("trace t_{index} has degree {degree} in x2")]
    TraceDegree { index: usize, degree: u32 },
    #[error("closed form mismatch: {0}")]
    ClosedFormMismatch(String),
    #[error("conjugation relation fails: {0}")]
    Conjugation(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Catalog(String),
}

/// Matrix of a homomorphism on regular differentials; row i is the image
/// of d(x^{i+1})/y.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<MPoly<F>>>,
    /// Leading x1-coefficient of A divided out before taking traces.
    pub unit: F::Elem,
}

impl<F: Field> DiffMatrix<F> {
    pub fn get(&self, i: usize, j: usize) -> &MPoly<F> {
        &self.entries[i][j]
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.entries[i][j].is_zero()))
    }

    pub fn mul(&self, o: &DiffMatrix<F>) -> Vec<Vec<MPoly<F>>> {
        let field = self.unit_field();
        (0..self.rows)
            .map(|i| {
                (0..o.cols)
                    .map(|j| {
                        (0..self.cols).fold(MPoly::zero(field), |acc, k| acc.add(&self.entries[i][k].mul(&o.entries[k][j])))
                    })
                    .collect()
            })
            .collect()
    }

    fn unit_field(&self) -> &F {
        self.entries[0][0].field()
    }

    /// Canonical text: one row per line, entries separated by ` ; `.
    pub fn to_text(&self) -> String {
        matrix_text(&self.entries)
    }

    /// The same map on the basis x^{i−1}dx/y = d(xⁱ)/(i·y): entry (i, j)
    /// becomes j·t_{i,j}/i.
    pub fn in_holomorphic_basis(&self) -> DiffMatrix<F> {
        let field = self.unit_field().clone();
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let inv = field.inv(&field.from_int(i as i64 + 1)).expect("characteristic zero or large");
                row.iter()
                    .enumerate()
                    .map(|(j, e)| e.scale(&field.mul(&field.from_int(j as i64 + 1), &inv)))
                    .collect()
            })
            .collect();
        DiffMatrix { rows: self.rows, cols: self.cols, entries, unit: self.unit.clone() }
    }

    pub fn diagonal(&self) -> Vec<MPoly<F>> {
        (0..self.rows.min(self.cols)).map(|i| self.entries[i][i].clone()).collect()
    }
}

pub fn matrix_text<F: Field>(m: &[Vec<MPoly<F>>]) -> String {
    m.iter()
        .map(|row| row.iter().map(|e| e.to_text()).collect::<Vec<_>>().join(" ; "))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Power sums t₁…t_k of the x1-roots of A by the Newton–Girard recurrence.
/// Returns the traces together with the x1-leading coefficient of A.
pub fn newton_traces<F: Field>(a: &MPoly<F>, k: usize) -> Result<(Vec<MPoly<F>>, F::Elem), DiffError> {
    let field = a.field();
    let d = a.degree_in(Var::X1).ok_or(DiffError::NotMonic)? as usize;
    let lc = a.leading_coeff_in(Var::X1).as_constant().ok_or(DiffError::NotMonic)?;
    let inv = field.inv(&lc).ok_or(DiffError::NotMonic)?;
    let coeffs = a.coeffs_in(Var::X1);
    // e_i = (−1)^i a_{d−i} / a_d
    let e: Vec<MPoly<F>> = (0..=d)
        .map(|i| {
            let c = coeffs[d - i].scale(&inv);
            if i % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
        .collect();
    let mut t: Vec<MPoly<F>> = Vec::with_capacity(k + 1);
    t.push(MPoly::from_int(field, d as i64));
    for m in 1..=k {
        let mut s = MPoly::zero(field);
        for i in 1..=m.min(d) {
            let term = if i == m {
                e[i].scale(&field.from_int(m as i64))
            } else {
                e[i].mul(&t[m - i])
            };
            s = if i % 2 == 1 { s.add(&term) } else { s.sub(&term) };
        }
        t.push(s);
    }
    t.remove(0);
    Ok((t, lc))
}

/// M(φ) for the homomorphism X → Y induced by the correspondence.
pub fn diff_matrix<F: Field>(corr: &Correspondence<F>) -> Result<DiffMatrix<F>, DiffError> {
    let (gx, gy) = (corr.x.genus as usize, corr.y.genus as usize);
    let (traces, unit) = newton_traces(&corr.a, gx)?;
    let mut entries = Vec::with_capacity(gx);
    for (i, ti) in traces.iter().enumerate() {
        let deg = ti.degree_in(Var::X2).unwrap_or(0);
        if deg as usize > i + 1 {
            return Err(DiffError::TraceDegree { index: i + 1, degree: deg });
        }
        entries.push((1..=gy).map(|j| ti.coeff_in(Var::X2, j as u32)).collect());
    }
    Ok(DiffMatrix { rows: gx, cols: gy, entries, unit })
}

/// Rosati check: M(φ)·M(φ̂) = m·I, with M(φ̂) from the role-swapped
/// correspondence. Returns m together with both matrices.
pub fn rosati_product<F: Field>(corr: &Correspondence<F>) -> Result<(i64, DiffMatrix<F>, DiffMatrix<F>), DiffError> {
    let m = diff_matrix(corr)?;
    let dual = diff_matrix(&corr.swap_roles())?;
    let prod = m.mul(&dual);
    let not_scalar = || DiffError::NotScalar(matrix_text(&prod));
    let field = corr.field();
    let scalar = prod[0][0].as_constant().unwrap_or_else(|| field.zero());
    let scalar = if prod[0][0].is_zero() || prod[0][0].is_constant() { scalar } else { return Err(not_scalar()) };
    for (i, row) in prod.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let want = if i == j { MPoly::constant(field, scalar.clone()) } else { MPoly::zero(field) };
            if *e != want {
                return Err(not_scalar());
            }
        }
    }
    let m_int = (-1000..=1000).find(|&k| field.from_int(k) == scalar).ok_or_else(not_scalar)?;
    Ok((m_int, m, dual))
}

pub fn conjugate_matrix(m: &DiffMatrix<NumberField>) -> Result<DiffMatrix<NumberField>, FieldError> {
    let entries = m
        .entries
        .iter()
        .map(|row| row.iter().map(crate::catalog::conjugate_poly).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let k = m.unit_field();
    Ok(DiffMatrix { rows: m.rows, cols: m.cols, entries, unit: k.conjugate(&m.unit)? })
}

/// Checks M(φ̂) = M(φ)^σ and e·e^σ = m for each diagonal entry e.
pub fn check_sigma_relations(m: &DiffMatrix<NumberField>, dual: &DiffMatrix<NumberField>, scalar: i64) -> Result<(), DiffError> {
    let conj = conjugate_matrix(m)?;
    if conj.entries != dual.entries {
        return Err(DiffError::Conjugation("M(φ̂) differs from M(φ)^σ".into()));
    }
    let k = m.unit_field();
    for (i, e) in m.diagonal().iter().enumerate() {
        let c = e.as_constant().ok_or_else(|| DiffError::Conjugation(format!("diagonal entry {} is not constant", i + 1)))?;
        if k.relative_norm(&c)? != k.from_int(scalar) {
            return Err(DiffError::Conjugation(format!("diagonal entry {} has norm ≠ {scalar}", i + 1)));
        }
    }
    Ok(())
}

/// Minimal polynomial of ζ_n + ζ_n^{-1} over Q for an odd prime n, from
/// Φ_n(x)/x^h = 1 + Σ_{k=1}^{h} (x^k + x^{−k}) and x^k + x^{−k} = D_k(x + 1/x).
pub fn real_cyclotomic_minpoly(n: u32) -> UPoly<Rationals> {
    let q = Rationals;
    let h = (n - 1) / 2;
    let p = (1..=h).fold(MPoly::one(&q), |acc, k| acc.add(&dickson(&q, k, Var::X)));
    p.to_upoly(Var::X).expect("univariate")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmReport {
    pub n: u32,
    pub i: u32,
    pub construction: Construction,
    pub genus: u32,
    /// Characteristic polynomial, coefficients low to high.
    pub charpoly: Vec<BigRational>,
    /// Whether m(M) = 0 holds at the matrix level.
    pub annihilated: bool,
}

/// For the Dickson correspondence A_{n,i}: the diagonal of M(φ) is
/// ζ^{ij} + ζ^{−ij} and the characteristic polynomial is m or m².
pub fn verify_rm_charpoly(n: u32, i: u32, c: Construction) -> Result<RmReport, DiffError> {
    if n < 3 || i == 0 || i > (n - 1) / 2 {
        return Err(DiffError::ClosedFormMismatch(format!("index i = {i} out of range for n = {n}")));
    }
    let rec = dickson_family(n, i);
    let k = rec.field.clone();
    let corr = build_construction(&rec, c).map_err(|e| DiffError::Catalog(e.to_string()))?;
    let m = diff_matrix(&corr)?;
    if !m.is_lower_triangular() {
        return Err(DiffError::ClosedFormMismatch("matrix is not lower triangular".into()));
    }
    let z = k.gen(0);
    let mut diag: Vec<NfElem> = Vec::new();
    for (j, e) in m.diagonal().iter().enumerate() {
        let ij = u64::from(i) * (j as u64 + 1) % u64::from(n);
        let want = k.add(&k.pow(&z, ij), &k.pow(&z, (u64::from(n) - ij) % u64::from(n)));
        let got = e.as_constant().unwrap_or_else(|| k.zero());
        if !e.is_constant() && !e.is_zero() || got != want {
            return Err(DiffError::ClosedFormMismatch(format!("diagonal entry {} is {}", j + 1, e.to_text())));
        }
        diag.push(got);
    }
    // Triangular, so the characteristic polynomial is the product over the diagonal.
    let x = UPoly::x(&k);
    let chi = diag.iter().fold(UPoly::one(&k), |acc, d| acc.mul(&x.sub(&UPoly::constant(&k, d.clone()))));
    let mp = real_cyclotomic_minpoly(n);
    let expected = match c {
        Construction::Linear => mp.clone(),
        Construction::Quadratic => mp.mul(&mp),
    };
    let chi_q: Vec<BigRational> = chi
        .coeffs()
        .iter()
        .map(|c| c.to_rational())
        .collect::<Option<_>>()
        .ok_or_else(|| DiffError::ClosedFormMismatch("characteristic polynomial is not rational".into()))?;
    if chi_q != expected.coeffs() {
        return Err(DiffError::ClosedFormMismatch(format!(
            "characteristic polynomial {} ≠ {}",
            UPoly::new(Rationals, chi_q).fmt_with("x"),
            expected.fmt_with("x")
        )));
    }
    let annihilated = eval_matrix_poly(&m, &mp).iter().all(|row| row.iter().all(|e| e.is_zero()));
    Ok(RmReport { n, i, construction: c, genus: corr.x.genus, charpoly: chi_q, annihilated })
}

fn eval_matrix_poly(m: &DiffMatrix<NumberField>, p: &UPoly<Rationals>) -> Vec<Vec<MPoly<NumberField>>> {
    let k = m.unit_field().clone();
    let n = m.rows;
    let ident = |c: &BigRational| -> Vec<Vec<MPoly<NumberField>>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { MPoly::constant(&k, k.from_rational(c).expect("rational")) } else { MPoly::zero(&k) })
                    .collect()
            })
            .collect()
    };
    // Horner: acc = acc·M + c·I
    let mut acc = ident(&BigRational::zero());
    for c in p.coeffs().iter().rev() {
        let prod = DiffMatrix { rows: n, cols: n, entries: acc, unit: k.one() }.mul(m);
        let add = ident(c);
        acc = prod.iter().zip(add).map(|(r, a)| r.iter().zip(a).map(|(x, y)| x.add(&y)).collect()).collect();
    }
    acc
}

/// The scalar matrix m·I, for comparisons.
pub fn scalar_matrix<F: Field>(field: &F, n: usize, m: i64) -> Vec<Vec<MPoly<F>>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { MPoly::from_int(field, m) } else { MPoly::zero(field) }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn traces_of_simple_factors() {
        let k = q();
        let x1 = MPoly::var(&k, Var::X1);
        let x2 = MPoly::var(&k, Var::X2);
        let c = MPoly::from_int(&k, 3);
        let (t, _) = newton_traces(&x1.sub(&x2.mul(&c)), 3).unwrap();
        assert_eq!(t[2], x2.pow(3).mul(&MPoly::from_int(&k, 27)));
        let quad = x1.pow(2).sub(&x1.mul(&c)).add(&MPoly::from_int(&k, 2));
        let (t, _) = newton_traces(&quad, 3).unwrap();
        assert_eq!(t[0], MPoly::from_int(&k, 3));
        assert_eq!(t[1], MPoly::from_int(&k, 5));
        assert_eq!(t[2], MPoly::from_int(&k, 9));
        assert_eq!(newton_traces(&x2.mul(&x1), 1).unwrap_err(), DiffError::NotMonic);
    }

    #[test]
    fn minimal_polynomials() {
        let show = |n| real_cyclotomic_minpoly(n).fmt_with("x");
        assert_eq!(show(3), UPoly::new(q(), vec![BigRational::one(), BigRational::one()]).fmt_with("x"));
        let p7 = real_cyclotomic_minpoly(7);
        let want: Vec<BigRational> = [-1, -2, 1, 1].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        assert_eq!(p7.coeffs(), want.as_slice());
    }
}
