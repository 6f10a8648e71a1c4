use super::{MPoly, PolyError, UPoly, Var};
use crate::fields::Field;

/// Determinant by fraction-free Bareiss elimination; entries live in a
/// polynomial ring, and every division is exact.
pub fn bareiss_det<F: Field>(field: &F, mut m: Vec<Vec<MPoly<F>>>) -> MPoly<F> {
    let n = m.len();
    if n == 0 {
        return MPoly::one(field);
    }
    let mut sign_neg = false;
    let mut prev = MPoly::one(field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return MPoly::zero(field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero(field);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        d.neg()
    } else {
        d
    }
}

/// Resultant with respect to `v`, as the Sylvester determinant.
pub fn resultant<F: Field>(a: &MPoly<F>, b: &MPoly<F>, v: Var) -> MPoly<F> {
    let field = a.field();
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    if m == 0 && n == 0 {
        return MPoly::one(field);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MPoly::zero(field); size];
        for (j, c) in ca.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MPoly::zero(field); size];
        for (j, c) in cb.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(field, rows)
}

/// (−1)^{n(n−1)/2} Res(a, a′) / lc(a).
pub fn discriminant<F: Field>(a: &MPoly<F>, v: Var) -> Result<MPoly<F>, PolyError> {
    let n = a.degree_in(v).unwrap_or(0);
    if n == 0 {
        return Err(PolyError::ConstantInput);
    }
    let r = resultant(a, &a.derivative(v), v);
    let lc = a.leading_coeff_in(v);
    let q = r.exact_div(&lc).ok_or(PolyError::NonUnitLeadingCoefficient)?;
    Ok(if (n as u64 * (n as u64 - 1) / 2) % 2 == 1 { q.neg() } else { q })
}

/// Monic gcd of two polynomials in the single variable `v`.
pub fn gcd<F: Field>(a: &MPoly<F>, b: &MPoly<F>, v: Var) -> Result<MPoly<F>, PolyError> {
    let ua: UPoly<F> = a.to_upoly(v)?;
    let ub = b.to_upoly(v)?;
    Ok(MPoly::from_upoly(&ua.gcd(&ub), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, Rationals};

    fn v(x: Var) -> MPoly<Rationals> {
        MPoly::var(&Rationals, x)
    }

    fn c(n: i64) -> MPoly<Rationals> {
        MPoly::from_int(&Rationals, n)
    }

    #[test]
    fn resultant_examples() {
        let (x, y) = (v(Var::X), v(Var::X1));
        let r = resultant(&y.pow(2).sub(&c(2)), &x.sub(&y.pow(2)), Var::X1);
        assert_eq!(r, x.sub(&c(2)).pow(2));
        let (cc, d) = (v(Var::S1), v(Var::S2));
        assert_eq!(resultant(&x.sub(&cc), &x.sub(&d), Var::X), cc.sub(&d));
        let (b, k) = (v(Var::S), v(Var::T));
        let quad = x.pow(2).add(&b.mul(&x)).add(&k);
        let lin = x.scale(&Rationals.from_int(2)).add(&b);
        assert_eq!(resultant(&quad, &lin, Var::X), k.scale(&Rationals.from_int(4)).sub(&b.pow(2)));
    }

    #[test]
    fn discriminant_examples() {
        let x = v(Var::X);
        let (b, k) = (v(Var::S), v(Var::T));
        let quad = x.pow(2).add(&b.mul(&x)).add(&k);
        assert_eq!(discriminant(&quad, Var::X).unwrap(), b.pow(2).sub(&k.scale(&Rationals.from_int(4))));
        let cubic = x.pow(3).add(&b.mul(&x)).add(&k);
        let expect = b.pow(3).scale(&Rationals.from_int(-4)).sub(&k.pow(2).scale(&Rationals.from_int(27)));
        assert_eq!(discriminant(&cubic, Var::X).unwrap(), expect);
        let f = FiniteField::prime(31).unwrap();
        let xf = MPoly::var(&f, Var::X);
        let d = discriminant(&xf.pow(2).sub(&MPoly::one(&f)), Var::X).unwrap();
        assert_eq!(d, MPoly::from_int(&f, 4));
    }

    #[test]
    fn gcd_examples() {
        let x = v(Var::X);
        assert_eq!(gcd(&x.pow(2).sub(&c(1)), &x.sub(&c(1)), Var::X).unwrap(), x.sub(&c(1)));
        let sq = x.sub(&c(2)).pow(2);
        assert_eq!(gcd(&sq, &x.sub(&c(2)).scale(&Rationals.from_int(2)), Var::X).unwrap(), x.sub(&c(2)));
        assert_eq!(gcd(&x.mul(&v(Var::T)), &x, Var::X), Err(PolyError::MultivariateInput));
    }
}
