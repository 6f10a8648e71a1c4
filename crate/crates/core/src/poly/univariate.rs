use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::{factor_u64, FfElem, Field, FiniteField};

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn zero(field: &F) -> Self {
        UPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field.clone(), vec![c])
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, e: usize) -> Self {
        let mut v = vec![field.zero(); e];
        v.push(c);
        Self::new(field.clone(), v)
    }

    /// x − a
    pub fn linear(field: &F, a: &F::Elem) -> Self {
        Self::new(field.clone(), vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, b: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(b.coeffs.len());
        Self::new(f.clone(), (0..n).map(|i| f.add(&self.coeff(i), &b.coeff(i))).collect())
    }

    pub fn sub(&self, b: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(b.coeffs.len());
        Self::new(f.clone(), (0..n).map(|i| f.sub(&self.coeff(i), &b.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.field.clone(), self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(self.field.clone(), self.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, b: &Self) -> Self {
        if self.is_zero() || b.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        Self::new(f.clone(), out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics if `b` is zero.
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        let f = &self.field;
        let db = b.degree().expect("division by the zero polynomial");
        let inv = f.inv(b.lc().unwrap()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + db], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, bj));
            }
            q[i] = c;
        }
        r.truncate(db);
        (Self::new(f.clone(), q), Self::new(f.clone(), r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divrem(b).1
    }

    /// Quotient when `b` divides `self` exactly.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.divrem(b);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("nonzero")),
        }
    }

    pub fn gcd(&self, b: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·b = g, g monic.
    pub fn ext_gcd(&self, b: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(&lc).expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f.clone(),
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_int(i as i64))).collect(),
        )
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(&self.field, c.clone()));
        }
        acc
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, target: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> UPoly<G> {
        UPoly::new(target.clone(), self.coeffs.iter().map(phi).collect())
    }

    /// Yun's squarefree decomposition, valid when the characteristic is 0
    /// or exceeds the degree: pairs (a_i, i) with self = lc · ∏ a_i^i.
    pub fn squarefree_decomposition_char0(&self) -> Vec<(Self, usize)> {
        let a = self.monic();
        let mut out = Vec::new();
        if a.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = a.derivative();
        let b = a.gcd(&d);
        let mut c = a.exact_div(&b).expect("gcd divides");
        let mut dd = d.exact_div(&b).expect("gcd divides").sub(&c.derivative());
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let g = c.gcd(&dd);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            c = c.exact_div(&g).expect("gcd divides");
            dd = dd.exact_div(&g).expect("gcd divides").sub(&c.derivative());
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let c = self.field.fmt_elem(c);
            parts.push(match i {
                0 => c,
                1 => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl UPoly<FiniteField> {
    fn q(&self) -> BigUint {
        self.field.order()
    }

    /// Rabin's test over the coefficient field F_q.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = Self::x(&self.field);
        let q = self.q();
        let frob = |k: usize| {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.powmod(&q, &f);
            }
            h
        };
        if !frob(n).sub(&x).rem(&f).is_zero() {
            return false;
        }
        for (r, _) in factor_u64(n as u64) {
            let h = frob(n / r as usize).sub(&x);
            if f.gcd(&h).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.field.p() as usize;
        let e = self.q() / BigUint::from(self.field.p());
        let coeffs = self.coeffs.iter().step_by(p).map(|c| self.field.pow_big(c, &e)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Squarefree factorization: pairs (a_i, m_i), a_i squarefree, pairwise coprime.
    pub fn squarefree_factorization(&self) -> Vec<(Self, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = f.derivative();
        if d.is_zero() {
            let p = self.field.p() as usize;
            return f.pth_root().squarefree_factorization().into_iter().map(|(g, m)| (g, m * p)).collect();
        }
        let mut c = f.gcd(&d);
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y).expect("gcd divides");
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac, i));
            }
            w = y;
            c = c.exact_div(&w).expect("gcd divides");
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let p = self.field.p() as usize;
            for (g, m) in c.pth_root().squarefree_factorization() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let mut f = self.monic();
        let x = Self::x(&self.field);
        let q = self.q();
        let mut out = Vec::new();
        let mut h = x.clone();
        let mut i = 1;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = h.powmod(&q, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                f = f.exact_div(&g).expect("gcd divides");
                h = h.rem(&f);
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = f.degree() {
            if d > 0 {
                out.push((f, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let f = self.monic();
        let n = f.degree().unwrap_or(0);
        if n == d {
            return vec![f];
        }
        assert!(self.field.p() != 2, "equal-degree splitting needs odd characteristic");
        let e = (self.q().pow(d as u32) - 1u32) >> 1;
        loop {
            let a = Self::new(self.field.clone(), (0..n).map(|_| self.field.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = f.gcd(&a);
            let split = if g.degree().unwrap_or(0) > 0 && g.degree() != Some(n) {
                g
            } else {
                let b = a.powmod(&e, &f).sub(&Self::one(&self.field));
                f.gcd(&b)
            };
            if let Some(k) = split.degree() {
                if k > 0 && k < n {
                    let rest = f.exact_div(&split).expect("gcd divides");
                    let mut out = split.equal_degree(d, rng);
                    out.extend(rest.equal_degree(d, rng));
                    return out;
                }
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients; deterministic.
    pub fn factor(&self) -> Vec<(Self, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        for (sf, m) in self.squarefree_factorization() {
            for (g, d) in sf.distinct_degree() {
                for h in g.equal_degree(d, &mut rng) {
                    out.push((h, m));
                }
            }
        }
        let fld = self.field.clone();
        out.sort_by_key(|(h, _)| {
            (h.degree(), h.coeffs.iter().rev().map(|c| fld.order_key(c)).collect::<Vec<_>>())
        });
        out
    }

    /// Roots in the coefficient field with multiplicities, sorted by element index.
    pub fn roots(&self) -> Vec<(FfElem, usize)> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let fld = &self.field;
        let mut distinct: Vec<FfElem> = match fld.order_u128() {
            Some(n) if n <= 1_000_000 => fld.elements().filter(|a| fld.is_zero(&self.eval(a))).collect(),
            _ => {
                let f = self.monic();
                let g = f.gcd(&Self::x(fld).powmod(&self.q(), &f).sub(&Self::x(fld)));
                if g.degree().unwrap_or(0) == 0 {
                    Vec::new()
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(0x7007);
                    g.equal_degree(1, &mut rng).iter().map(|l| fld.neg(&l.coeff(0))).collect()
                }
            }
        };
        distinct.sort_by_key(|a| fld.order_key(a));
        distinct
            .into_iter()
            .map(|r| {
                let lin = Self::linear(fld, &r);
                let mut m = 0;
                let mut cur = self.clone();
                while let Some(q) = cur.exact_div(&lin) {
                    cur = q;
                    m += 1;
                }
                (r, m)
            })
            .collect()
    }

    /// One root of a polynomial that splits into distinct linear factors,
    /// by Cantor–Zassenhaus descent along a single branch.
    pub fn split_root(&self, rng: &mut ChaCha8Rng) -> Option<FfElem> {
        let fld = &self.field;
        let mut f = self.monic();
        let e = (self.q() - 1u32) >> 1;
        while f.degree()? > 1 {
            let n = f.degree().unwrap();
            let a = Self::new(fld.clone(), (0..n).map(|_| fld.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = f.gcd(&a.powmod(&e, &f).sub(&Self::one(fld)));
            let d = g.degree().unwrap_or(0);
            if d > 0 && d < n {
                f = if 2 * d <= n { g } else { f.exact_div(&g).expect("gcd divides") };
            }
        }
        if f.degree() != Some(1) {
            return None;
        }
        Some(fld.neg(&f.coeff(0)))
    }

    /// Whether the polynomial is a product of distinct linear factors.
    pub fn splits_with_simple_roots(&self) -> bool {
        let r = self.roots();
        r.len() == self.degree().unwrap_or(0) && r.iter().all(|(_, m)| *m == 1)
    }

    /// Smallest k with all roots in the degree-k extension of the coefficient field.
    pub fn splitting_degree(&self) -> usize {
        self.factor()
            .iter()
            .map(|(h, _)| h.degree().unwrap_or(1))
            .fold(1, num_integer::lcm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rationals;
    use num_rational::BigRational;

    fn fp(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn upf(f: &FiniteField, c: &[i64]) -> UPoly<FiniteField> {
        UPoly::new(f.clone(), c.iter().map(|&x| f.from_int(x)).collect())
    }

    fn upq(c: &[i64]) -> UPoly<Rationals> {
        UPoly::new(Rationals, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn roots_examples() {
        let f = fp(31);
        let r = upf(&f, &[-1, 0, 1]).roots();
        assert_eq!(r, vec![(f.from_u64(1), 1), (f.from_u64(30), 1)]);
        let mut c = vec![0i64; 16];
        c[0] = 1;
        c[15] = 1;
        assert_eq!(upf(&f, &c).roots().len(), 15);
        let f7 = fp(7);
        assert_eq!(upf(&f7, &[4, -4, 1]).roots(), vec![(f7.from_u64(2), 2)]);
    }

    #[test]
    fn large_field_roots_match_product() {
        let big = FiniteField::with_degree(31, 5).unwrap();
        let mut c = vec![0i64; 16];
        c[0] = 1;
        c[15] = 1;
        let p = upf(&big, &c);
        let r = p.roots();
        assert_eq!(r.len(), 15);
        for (a, _) in &r {
            assert!(big.is_zero(&p.eval(a)));
        }
    }

    #[test]
    fn factorization_and_irreducibility() {
        let f = fp(13);
        assert!(upf(&f, &[2, 1, 1]).is_irreducible());
        assert!(!upf(&f, &[-1, 0, 1]).is_irreducible());
        let p = upf(&f, &[2, 1, 1]).mul(&upf(&f, &[1, 1])).mul(&upf(&f, &[1, 1]));
        let fac = p.factor();
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0], (upf(&f, &[1, 1]), 2));
        assert_eq!(fac[1], (upf(&f, &[2, 1, 1]), 1));
        let f3 = fp(3);
        let x9 = upf(&f3, &[1, 0, 0, 1]).pow(3);
        assert_eq!(x9.squarefree_factorization(), vec![(upf(&f3, &[1, 1]), 9)]);
    }

    #[test]
    fn rational_gcd_and_decomposition() {
        let a = upq(&[-1, 0, 1]);
        assert_eq!(a.gcd(&upq(&[-1, 1])), upq(&[-1, 1]));
        let sq = upq(&[-2, 1]).pow(2);
        assert_eq!(sq.gcd(&upq(&[-4, 2])), upq(&[-2, 1]));
        let chi = upq(&[9, 3, 2, 1, 1]);
        assert_eq!(chi.gcd(&chi.derivative()), upq(&[1]));
        let d = upq(&[-1, 1]).mul(&upq(&[1, 0, 1]).pow(3));
        assert_eq!(d.squarefree_decomposition_char0(), vec![(upq(&[-1, 1]), 1), (upq(&[1, 0, 1]), 3)]);
        let (g, s, t) = upq(&[1, 2, 1]).ext_gcd(&upq(&[-1, 0, 1]));
        assert_eq!(s.mul(&upq(&[1, 2, 1])).add(&t.mul(&upq(&[-1, 0, 1]))), g);
    }

    #[test]
    fn splitting_degree_of_x15_plus_1_over_31() {
        let f = fp(31);
        let mut c = vec![0i64; 16];
        c[0] = 15;
        c[15] = 1;
        assert_eq!(upf(&f, &c).splitting_degree(), 5);
    }
}
