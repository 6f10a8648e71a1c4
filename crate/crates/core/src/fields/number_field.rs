use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational};
use super::{Field, FieldError};

/// One step of a tower: a generator and its monic minimal polynomial over
/// the subtower generated by the earlier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Coefficients from the constant term up to the leading 1, each given
    /// as a coordinate vector on the subtower basis.
    pub min_poly: Vec<Vec<BigRational>>,
}

impl Generator {
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }
}

/// Element of a [`NumberField`]: integer coordinates over a common positive
/// denominator, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NfElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            return NfElem { num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        NfElem { num, den }
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }
}

/// A tower Q(g_1)(g_2)... stored on the monomial basis ∏ g_i^{e_i}, with
/// the basis index `e_top * deg(subtower) + index_in_subtower`.
#[derive(Debug)]
pub struct FieldTower {
    generators: Vec<Generator>,
    involution: Option<Vec<Vec<BigRational>>>,
    degree: usize,
    /// Sparse products of basis elements, indexed by `i * degree + j`.
    table: Vec<Vec<(usize, BigInt)>>,
    table_den: BigInt,
    /// Images of basis elements under the involution over `conj_den`.
    conj: Option<(Vec<Vec<BigInt>>, BigInt)>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.involution == other.involution
    }
}

/// Shared handle to a [`FieldTower`]; cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<FieldTower>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.generators.iter().map(|g| g.name.as_str()).collect();
        write!(f, "NumberField({})", names.join(","))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

fn qzero() -> BigRational {
    BigRational::zero()
}

/// Multiplication by recursion on the tower, used only while building the
/// structure-constant table.
fn mul_rec(gens: &[Generator], level: usize, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let gen = &gens[level - 1];
    let d = gen.degree();
    let sub: usize = gens[..level - 1].iter().map(Generator::degree).product();
    let chunk = |v: &[BigRational], e: usize| v[e * sub..(e + 1) * sub].to_vec();
    let mut prod: Vec<Vec<BigRational>> = vec![vec![qzero(); sub]; 2 * d - 1];
    for i in 0..d {
        let ai = chunk(a, i);
        if ai.iter().all(Zero::is_zero) {
            continue;
        }
        for j in 0..d {
            let bj = chunk(b, j);
            if bj.iter().all(Zero::is_zero) {
                continue;
            }
            let c = mul_rec(gens, level - 1, &ai, &bj);
            for (x, y) in prod[i + j].iter_mut().zip(c) {
                *x += y;
            }
        }
    }
    for e in (d..2 * d - 1).rev() {
        let top = std::mem::replace(&mut prod[e], vec![qzero(); sub]);
        if top.iter().all(Zero::is_zero) {
            continue;
        }
        for k in 0..d {
            let c = mul_rec(gens, level - 1, &top, &gen.min_poly[k]);
            for (x, y) in prod[e - d + k].iter_mut().zip(c) {
                *x -= y;
            }
        }
    }
    prod.truncate(d);
    prod.concat()
}

fn lcm_of_denoms<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Solves `m x = rhs` over Q; `None` if singular.
pub(crate) fn solve_rational(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..n {
                    let t = &factor * &m[col][c];
                    m[r][c] -= t;
                }
                let t = &factor * &rhs[col];
                rhs[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return qzero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] / &p;
                for c in col..n {
                    let t = &factor * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    det
}

impl NumberField {
    /// Builds a tower; the involution, when given, lists the image of each
    /// generator as a coordinate vector on the full basis.
    pub fn new(
        generators: Vec<Generator>,
        involution: Option<Vec<Vec<BigRational>>>,
    ) -> Result<Self, FieldError> {
        let bad = |s: String| Err(FieldError::InvalidTower(s));
        let mut sub = 1usize;
        for g in &generators {
            if g.min_poly.len() < 2 {
                return bad(format!("minimal polynomial of {} has degree 0", g.name));
            }
            if g.min_poly.iter().any(|c| c.len() != sub) {
                return bad(format!("coefficients of {} must have length {sub}", g.name));
            }
            let lead = g.min_poly.last().unwrap();
            if !lead[0].is_one() || lead[1..].iter().any(|c| !c.is_zero()) {
                return bad(format!("minimal polynomial of {} is not monic", g.name));
            }
            sub *= g.degree();
        }
        let degree = sub;
        let mut rat_table = Vec::with_capacity(degree * degree);
        for i in 0..degree {
            for j in 0..degree {
                if j < i {
                    let prev: &Vec<BigRational> = &rat_table[j * degree + i];
                    rat_table.push(prev.clone());
                    continue;
                }
                let mut a = vec![qzero(); degree];
                let mut b = vec![qzero(); degree];
                a[i] = BigRational::one();
                b[j] = BigRational::one();
                rat_table.push(mul_rec(&generators, generators.len(), &a, &b));
            }
        }
        let table_den = lcm_of_denoms(rat_table.iter().flatten());
        let table = rat_table
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, (c * &table_den).to_integer()))
                    .collect()
            })
            .collect();
        let mut tower = FieldTower {
            generators,
            involution: None,
            degree,
            table,
            table_den,
            conj: None,
        };
        if let Some(images) = involution {
            if images.len() != tower.generators.len() || images.iter().any(|v| v.len() != degree) {
                return bad("involution must give one full-basis image per generator".into());
            }
            let nf = NumberField(Arc::new(tower));
            let imgs: Vec<NfElem> = images.iter().map(|v| nf.from_coords(v)).collect();
            let conj = nf.basis_images(&imgs);
            tower = Arc::try_unwrap(nf.0).expect("sole owner");
            tower.involution = Some(images);
            tower.conj = Some(conj);
            let nf = NumberField(Arc::new(tower));
            nf.check_involution()?;
            return Ok(nf);
        }
        Ok(NumberField(Arc::new(tower)))
    }

    /// Q(ζ_n) with ζ ↦ ζ^{-1}.
    pub fn cyclotomic(n: u32) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        let gen = Generator {
            name: format!("zeta{n}"),
            min_poly: phi.iter().map(|c| vec![BigRational::from_integer(c.clone())]).collect(),
        };
        let base = NumberField::new(vec![gen.clone()], None).expect("cyclotomic tower");
        let z = base.gen(0);
        let zinv = base.pow(&z, u64::from(n) - 1);
        let image = base.coords(&zinv);
        debug_assert_eq!(image.len(), deg);
        NumberField::new(vec![gen], Some(vec![image])).expect("cyclotomic involution")
    }

    pub fn tower(&self) -> &FieldTower {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0.generators
    }

    pub fn involution_images(&self) -> Option<&[Vec<BigRational>]> {
        self.0.involution.as_deref()
    }

    pub fn has_involution(&self) -> bool {
        self.0.conj.is_some()
    }

    /// Degree of the subtower generated by the first `level` generators.
    pub fn sub_degree(&self, level: usize) -> usize {
        self.0.generators[..level].iter().map(Generator::degree).product()
    }

    pub fn gen(&self, i: usize) -> NfElem {
        let mut num = vec![BigInt::zero(); self.degree()];
        let idx = self.sub_degree(i);
        if self.0.generators[i].degree() == 1 {
            let c = &self.0.generators[i].min_poly[0];
            return self.from_coords(&c.iter().map(|x| -x).chain(std::iter::repeat(qzero())).take(self.degree()).collect::<Vec<_>>());
        }
        num[idx] = BigInt::one();
        NfElem { num, den: BigInt::one() }
    }

    pub fn gen_by_name(&self, name: &str) -> Option<NfElem> {
        self.0.generators.iter().position(|g| g.name == name).map(|i| self.gen(i))
    }

    pub fn from_coords(&self, c: &[BigRational]) -> NfElem {
        assert_eq!(c.len(), self.degree(), "coordinate vector length");
        let den = lcm_of_denoms(c.iter());
        let num = c.iter().map(|x| (x * &den).to_integer()).collect();
        NfElem::normalized(num, den)
    }

    /// Embeds a coordinate vector of the subtower of the first `level` generators.
    pub fn from_sub_coords(&self, c: &[BigRational]) -> NfElem {
        let mut v = c.to_vec();
        v.resize(self.degree(), qzero());
        self.from_coords(&v)
    }

    pub fn coords(&self, a: &NfElem) -> Vec<BigRational> {
        a.num.iter().map(|n| BigRational::new(n.clone(), a.den.clone())).collect()
    }

    pub fn from_bigint(&self, n: BigInt) -> NfElem {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = n;
        NfElem { num, den: BigInt::one() }
    }

    pub fn scale_int(&self, a: &NfElem, n: &BigInt) -> NfElem {
        NfElem::normalized(a.num.iter().map(|c| c * n).collect(), a.den.clone())
    }

    /// σ(a).
    pub fn conjugate(&self, a: &NfElem) -> Result<NfElem, FieldError> {
        let (imgs, den) = self.0.conj.as_ref().ok_or(FieldError::NoInvolution)?;
        let d = self.degree();
        let mut num = vec![BigInt::zero(); d];
        for (k, ak) in a.num.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for (m, c) in imgs[k].iter().enumerate() {
                if !c.is_zero() {
                    num[m] += ak * c;
                }
            }
        }
        Ok(NfElem::normalized(num, &a.den * den))
    }

    /// a · σ(a).
    pub fn relative_norm(&self, a: &NfElem) -> Result<NfElem, FieldError> {
        Ok(self.mul(a, &self.conjugate(a)?))
    }

    /// Determinant of multiplication by `a` on the monomial basis.
    pub fn absolute_norm(&self, a: &NfElem) -> BigRational {
        det_rational(self.mult_matrix(a))
    }

    /// Column j holds the coordinates of a · b_j.
    fn mult_matrix(&self, a: &NfElem) -> Vec<Vec<BigRational>> {
        let d = self.degree();
        let cols: Vec<Vec<BigRational>> = (0..d).map(|j| self.coords(&self.mul(a, &self.basis(j)))).collect();
        (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
    }

    pub fn basis(&self, j: usize) -> NfElem {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[j] = BigInt::one();
        NfElem { num, den: BigInt::one() }
    }

    /// Maps each basis monomial through generator images, as integer rows over a common denominator.
    fn basis_images(&self, imgs: &[NfElem]) -> (Vec<Vec<BigInt>>, BigInt) {
        let d = self.degree();
        let mut out = Vec::with_capacity(d);
        for idx in 0..d {
            let mut rem = idx;
            let mut acc = self.one();
            for (g, img) in self.0.generators.iter().zip(imgs) {
                let e = rem % g.degree();
                rem /= g.degree();
                acc = self.mul(&acc, &self.pow(img, e as u64));
            }
            out.push(acc);
        }
        let den = out.iter().fold(BigInt::one(), |acc, e| acc.lcm(&e.den));
        let rows = out
            .iter()
            .map(|e| {
                let f = &den / &e.den;
                e.num.iter().map(|c| c * &f).collect()
            })
            .collect();
        (rows, den)
    }

    fn check_involution(&self) -> Result<(), FieldError> {
        for (i, g) in self.0.generators.iter().enumerate() {
            let image = self.conjugate(&self.gen(i))?;
            let mut acc = self.zero();
            for c in g.min_poly.iter().rev() {
                let c = self.conjugate(&self.from_sub_coords(c))?;
                acc = self.add(&self.mul(&acc, &image), &c);
            }
            if !self.is_zero(&acc) {
                return Err(FieldError::InvalidTower(format!(
                    "involution does not preserve the minimal polynomial of {}",
                    g.name
                )));
            }
            if self.conjugate(&image)? != self.gen(i) {
                return Err(FieldError::InvalidTower(format!("involution is not of order 2 on {}", g.name)));
            }
        }
        Ok(())
    }

    /// Parses `[c0, c1, ...]` with one rational per basis element.
    pub fn parse_elem(&self, s: &str) -> Result<NfElem, FieldError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| FieldError::Parse(s.to_string()))?;
        let parts: Vec<BigRational> = inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<_, _>>()?;
        if parts.len() != self.degree() {
            return Err(FieldError::Parse(format!(
                "{s}: expected {} coordinates, found {}",
                self.degree(),
                parts.len()
            )));
        }
        Ok(self.from_coords(&parts))
    }

    /// Human-readable form over the generator names, e.g. `3/2*beta*alpha`.
    pub fn display(&self, a: &NfElem) -> String {
        let mut terms = Vec::new();
        for (idx, c) in self.coords(a).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rem = idx;
            let mut mono = Vec::new();
            for g in &self.0.generators {
                let e = rem % g.degree();
                rem /= g.degree();
                match e {
                    0 => {}
                    1 => mono.push(g.name.clone()),
                    _ => mono.push(format!("{}^{}", g.name, e)),
                }
            }
            let coef = if c.is_integer() { c.numer().to_string() } else { format!("{}/{}", c.numer(), c.denom()) };
            if mono.is_empty() {
                terms.push(coef);
            } else if c.is_one() {
                terms.push(mono.join("*"));
            } else if (-c).is_one() {
                terms.push(format!("-{}", mono.join("*")));
            } else {
                terms.push(format!("{coef}*{}", mono.join("*")));
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { num: vec![BigInt::zero(); self.degree()], den: BigInt::one() }
    }

    fn one(&self) -> NfElem {
        self.from_bigint(BigInt::one())
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.num.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return NfElem::normalized(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        NfElem::normalized(num, &a.den * &b.den)
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        let d = self.degree();
        if a.is_rational() {
            let c = &a.num[0];
            return NfElem::normalized(b.num.iter().map(|x| x * c).collect(), &a.den * &b.den);
        }
        if b.is_rational() {
            return self.mul(b, a);
        }
        let t = &self.0;
        let mut acc = vec![BigInt::zero(); d];
        for (i, ai) in a.num.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.num.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in &t.table[i * d + j] {
                    acc[*k] += &ab * c;
                }
            }
        }
        NfElem::normalized(acc, &a.den * &b.den * &t.table_den)
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { num: a.num.iter().map(|x| -x).collect(), den: a.den.clone() }
    }

    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if self.is_zero(a) {
            return None;
        }
        if a.is_rational() {
            return Some(NfElem::normalized(
                std::iter::once(a.den.clone()).chain(std::iter::repeat(BigInt::zero())).take(self.degree()).collect(),
                a.num[0].clone(),
            ));
        }
        let mut rhs = vec![qzero(); self.degree()];
        rhs[0] = BigRational::one();
        solve_rational(self.mult_matrix(a), rhs).map(|x| self.from_coords(&x))
    }

    fn from_rational(&self, r: &BigRational) -> Option<NfElem> {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        Some(NfElem::normalized(num, r.denom().clone()))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn fmt_elem(&self, a: &NfElem) -> String {
        let parts: Vec<String> = self.coords(a).iter().map(format_rational).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_poly(d);
            p = exact_int_div(&p, &q);
        }
    }
    p
}

fn exact_int_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db].clone();
        q[i] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}
