use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{PolyError, UPoly};
use crate::fields::Field;

/// The variables a polynomial may involve, in lexicographic priority order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    X,
    X1,
    X2,
    T,
    S,
    S1,
    S2,
}

pub const NVARS: usize = 7;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::X1, Var::X2, Var::T, Var::S, Var::S1, Var::S2];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::T => "t",
            Var::S => "s",
            Var::S1 => "s1",
            Var::S2 => "s2",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    fn idx(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Self::one();
        m.0[v.idx()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m.0[v.idx()] += e;
        }
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.idx()]
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Self {
        self.0[v.idx()] = e;
        self
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..NVARS {
            m.0[i] += o.0[i];
        }
        m
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for i in 0..NVARS {
            m.0[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn fmt_text(&self) -> String {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter(|v| self.exp(**v) > 0)
            .map(|v| match self.exp(*v) {
                1 => v.name().to_string(),
                e => format!("{}^{}", v.name(), e),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<F: Field> {
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: &F) -> Self {
        MPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::term(field, c, Monomial::one())
    }

    pub fn from_int(field: &F, n: i64) -> Self {
        Self::constant(field, field.from_int(n))
    }

    pub fn var(field: &F, v: Var) -> Self {
        Self::term(field, field.one(), Monomial::var(v, 1))
    }

    pub fn term(field: &F, c: F::Elem, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        MPoly { field: field.clone(), terms }
    }

    pub fn from_terms(field: &F, it: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<F::Elem> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        let f = &self.field;
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, self.field.neg(c));
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| self.field.neg(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        self.map_terms(|x| self.field.mul(x, c))
    }

    fn map_terms(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        MPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !self.field.is_zero(c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &F::Elem, mono: &Monomial) -> Self {
        let f = &self.field;
        MPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.mul(mono), f.mul(x, c)))
                .filter(|(_, x)| !f.is_zero(x))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let p = f.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(old) => *old = f.add(old, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !f.is_zero(c));
        MPoly { field: f.clone(), terms: acc }
    }

    pub fn pow(&self, mut e: u32) -> Self {
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

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total).max()
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0)).collect()
    }

    /// Coefficient of v^e, as a polynomial in the other variables.
    pub fn coeff_in(&self, v: Var, e: u32) -> Self {
        MPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == e)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of v^0, v^1, ... up to the degree in v.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        let d = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.field); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(field: &F, v: Var, coeffs: &[Self]) -> Self {
        let mut r = Self::zero(field);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                r.add_term(m.with_exp(v, m.exp(v) + e as u32), x.clone());
            }
        }
        r
    }

    pub fn leading_coeff_in(&self, v: Var) -> Self {
        self.coeff_in(v, self.degree_in(v).unwrap_or(0))
    }

    pub fn derivative(&self, v: Var) -> Self {
        let f = &self.field;
        let mut r = Self::zero(f);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                r.add_term(m.with_exp(v, e - 1), f.mul(c, &f.from_int(e as i64)));
            }
        }
        r
    }

    /// Simultaneous substitution of each bound variable.
    pub fn substitute(&self, bindings: &[(Var, Self)]) -> Self {
        let f = &self.field;
        let mut powers: Vec<(Var, Vec<Self>)> = bindings.iter().map(|(v, p)| (*v, vec![Self::one(f), p.clone()])).collect();
        let mut out = Self::zero(f);
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut t = Self::one(f);
            for (v, pw) in powers.iter_mut() {
                let e = m.exp(*v) as usize;
                if e == 0 {
                    continue;
                }
                rest = rest.with_exp(*v, 0);
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            out = out.add(&t.mul_term(c, &rest));
        }
        out
    }

    pub fn eval_var(&self, v: Var, val: &F::Elem) -> Self {
        let f = &self.field;
        let d = self.degree_in(v).unwrap_or(0) as u64;
        let pows: Vec<F::Elem> = (0..=d).map(|e| f.pow(val, e)).collect();
        let mut r = Self::zero(f);
        for (m, c) in &self.terms {
            r.add_term(m.with_exp(v, 0), f.mul(c, &pows[m.exp(v) as usize]));
        }
        r
    }

    /// Renames variables (applied simultaneously).
    pub fn rename(&self, map: &[(Var, Var)]) -> Self {
        let mut r = Self::zero(&self.field);
        for (m, c) in &self.terms {
            let mut n = *m;
            for (a, _) in map {
                n = n.with_exp(*a, 0);
            }
            for (a, b) in map {
                n = n.with_exp(*b, n.exp(*b) + m.exp(*a));
            }
            r.add_term(n, c.clone());
        }
        r
    }

    pub fn swap(&self, a: Var, b: Var) -> Self {
        self.rename(&[(a, b), (b, a)])
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> MPoly<G> {
        MPoly::from_terms(target, self.terms.iter().map(|(m, c)| (*m, phi(c))))
    }

    pub fn try_map_coeffs<G: Field, E>(
        &self,
        target: &G,
        phi: impl Fn(&F::Elem) -> Result<G::Elem, E>,
    ) -> Result<MPoly<G>, E> {
        let mut r = MPoly::zero(target);
        for (m, c) in &self.terms {
            r.add_term(*m, phi(c)?);
        }
        Ok(r)
    }

    /// Division with respect to `v`; the leading coefficient of `b` in `v`
    /// must be a nonzero constant.
    pub fn divrem(&self, b: &Self, v: Var) -> Result<(Self, Self), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = &self.field;
        let db = b.degree_in(v).unwrap_or(0);
        let lc = b.leading_coeff_in(v).as_constant().ok_or(PolyError::NonUnitLeadingCoefficient)?;
        let inv = f.inv(&lc).ok_or(PolyError::NonUnitLeadingCoefficient)?;
        let mut q = Self::zero(f);
        let mut r = self.clone();
        while let Some(dr) = r.degree_in(v) {
            if dr < db || r.is_zero() {
                break;
            }
            let lead = r.coeff_in(v, dr).scale(&inv);
            let shift = Monomial::var(v, dr - db);
            let t = lead.mul_term(&f.one(), &shift);
            r = r.sub(&t.mul(b));
            q = q.add(&t);
        }
        Ok((q, r))
    }

    /// Exact quotient `self / b`, or `None` when `b` does not divide.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let f = &self.field;
        let (bm, bc) = b.leading()?;
        let (bm, binv) = (*bm, f.inv(bc)?);
        let mut q = Self::zero(f);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading() {
            let m = rm.div(&bm)?;
            let c = f.mul(rc, &binv);
            r = r.sub(&b.mul_term(&c, &m));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Univariate view; fails if any variable other than `v` appears.
    pub fn to_upoly(&self, v: Var) -> Result<UPoly<F>, PolyError> {
        if self.vars().iter().any(|w| *w != v) {
            return Err(PolyError::MultivariateInput);
        }
        let d = self.degree_in(v).unwrap_or(0) as usize;
        let mut c = vec![self.field.zero(); d + 1];
        for (m, x) in &self.terms {
            c[m.exp(v) as usize] = x.clone();
        }
        Ok(UPoly::new(self.field.clone(), c))
    }

    pub fn from_upoly(p: &UPoly<F>, v: Var) -> Self {
        MPoly::from_terms(
            p.field(),
            p.coeffs().iter().enumerate().map(|(e, c)| (Monomial::var(v, e as u32), c.clone())),
        )
    }

    /// Canonical text: terms in descending graded-lex order, each as
    /// `coefficient*monomial` with the field's canonical element form.
    pub fn to_text(&self) -> String {
        self.fmt_with(|c| self.field.fmt_elem(c))
    }

    pub fn fmt_with(&self, fc: impl Fn(&F::Elem) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| if m.is_one() { fc(c) } else { format!("{}*{}", fc(c), m.fmt_text()) })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rationals;
    use num_rational::BigRational;

    fn q() -> Rationals {
        Rationals
    }

    fn v(x: Var) -> MPoly<Rationals> {
        MPoly::var(&q(), x)
    }

    fn c(n: i64) -> MPoly<Rationals> {
        MPoly::from_int(&q(), n)
    }

    #[test]
    fn divrem_examples() {
        let (x1, x2) = (v(Var::X1), v(Var::X2));
        let a = x1.pow(2).sub(&x2.pow(2));
        let (qq, r) = a.divrem(&x1.sub(&x2), Var::X1).unwrap();
        assert_eq!(qq, x1.add(&x2));
        assert!(r.is_zero());
        let (qq, r) = x1.pow(3).add(&c(1)).divrem(&x1.add(&c(1)), Var::X1).unwrap();
        assert_eq!(qq, x1.pow(2).sub(&x1).add(&c(1)));
        assert!(r.is_zero());
        assert_eq!(
            x1.pow(2).divrem(&x2.mul(&x1).add(&c(1)), Var::X1),
            Err(PolyError::NonUnitLeadingCoefficient)
        );
    }

    #[test]
    fn substitution_and_swap() {
        let x = v(Var::X);
        let p = x.pow(2).add(&c(1));
        assert_eq!(p.substitute(&[(Var::X, v(Var::T))]), v(Var::T).pow(2).add(&c(1)));
        let a = v(Var::X1).mul(&v(Var::X2).pow(2));
        assert_eq!(a.swap(Var::X1, Var::X2), v(Var::X2).mul(&v(Var::X1).pow(2)));
        let s = a.substitute(&[(Var::X1, v(Var::X2)), (Var::X2, v(Var::X1))]);
        assert_eq!(s, a.swap(Var::X1, Var::X2));
    }

    #[test]
    fn text_and_order() {
        let p = v(Var::X1).pow(2).add(&v(Var::X2).scale(&BigRational::new(1.into(), 2.into()))).add(&c(-3));
        assert_eq!(p.to_text(), "1/1*x1^2 + 1/2*x2 + -3/1");
        assert_eq!(p.leading().unwrap().0, &Monomial::var(Var::X1, 2));
        let e = p.mul(&v(Var::T).add(&c(1)));
        assert_eq!(e.exact_div(&p), Some(v(Var::T).add(&c(1))));
        assert_eq!(e.exact_div(&v(Var::S)), None);
    }
}
