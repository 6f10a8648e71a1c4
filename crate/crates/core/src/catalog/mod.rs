//! Polynomial families with their factorizations f(x1) − g(x2) = A·B, and
//! the linear and quadratic constructions of curve pairs from them.

pub mod fixture;
mod reconstruct;
mod special;

use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::fields::{Field, FieldError, NfElem, NumberField};
use crate::kernel::GroupStructure;
use crate::poly::{MPoly, Monomial, PolyError, Var};

pub use reconstruct::{reconstruct_factor, ReconstructError};
pub use special::{reduce, specialize, Correspondence, HyperellipticModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{file}: {msg}")]
    Io { file: String, msg: String },
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("{file}: checksum mismatch (recorded {expected}, computed {actual})")]
    ChecksumMismatch { file: String, expected: String, actual: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("no fixture for family `{0}`")]
    MissingFamily(String),
    #[error("{family}: factorization fails, remainder {remainder}")]
    FactorizationFails { family: String, remainder: String },
    #[error("{family}: symmetry fails: {detail}")]
    SymmetryFails { family: String, detail: String },
    #[error("{family}: {constant} mismatch: {lhs} vs {rhs}")]
    ConstantMismatch { family: String, constant: String, lhs: String, rhs: String },
    #[error("{family}: no normalization constants declared")]
    NoConstants { family: String },
    #[error("specialization lies on the discriminant locus of {curve}")]
    OnDiscriminantLocus { curve: String },
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("parameter {0} left unbound")]
    UnboundParameter(Var),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    Linear,
    Quadratic,
}

impl Construction {
    pub const ALL: [Construction; 2] = [Construction::Linear, Construction::Quadratic];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "linear" => Some(Construction::Linear),
            "quadratic" => Some(Construction::Quadratic),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::Linear => "linear",
            Construction::Quadratic => "quadratic",
        }
    }

    /// Parameters of the generic monic F.
    pub fn params(self) -> &'static [Var] {
        match self {
            Construction::Linear => &[Var::S],
            Construction::Quadratic => &[Var::S1, Var::S2],
        }
    }

    /// The generic monic F of degree 1 or 2, evaluated at `p`.
    pub fn compose<F: Field>(self, p: &MPoly<F>) -> MPoly<F> {
        let field = p.field();
        match self {
            Construction::Linear => p.add(&MPoly::var(field, Var::S)),
            Construction::Quadratic => p
                .pow(2)
                .add(&p.mul(&MPoly::var(field, Var::S1)))
                .add(&MPoly::var(field, Var::S2)),
        }
    }

    pub fn genus(self, n: u32) -> u32 {
        match self {
            Construction::Linear => (n - 1) / 2,
            Construction::Quadratic => n - 1,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the partner polynomial g is obtained from f.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    Conjugate,
    NegatedConjugate,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Literal,
    Cyclic { n: u32, e: u32 },
    Dickson { n: u32, i: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub construction: Construction,
    pub m: u32,
    pub group: GroupStructure,
}

/// A parameter point at which the paper reduces modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub construction: Construction,
    pub prime: u64,
    pub values: Vec<(Var, BigRational)>,
}

#[derive(Debug, Clone)]
pub struct FamilyRecord {
    pub name: String,
    pub kind: FamilyKind,
    pub field: NumberField,
    /// f in K[t][x].
    pub f: MPoly<NumberField>,
    pub partner: Partner,
    /// A in K[t][x1, x2].
    pub a: MPoly<NumberField>,
    /// Printed coefficients of A that a reconstructed A must reproduce.
    pub anchors: Vec<(Monomial, NfElem)>,
    /// ε with A(x2, x1) = ε·A^σ(x1, x2).
    pub sign: Option<i32>,
    pub leading: BigRational,
    pub kappa: Option<NfElem>,
    pub lambda: Option<NfElem>,
    pub expectations: Vec<Expectation>,
    pub specializations: Vec<Specialization>,
}

impl FamilyRecord {
    /// Degree of f, the index n of the family.
    pub fn degree(&self) -> u32 {
        self.f.degree_in(Var::X).unwrap_or(0)
    }

    pub fn has_t(&self) -> bool {
        self.f.degree_in(Var::T).unwrap_or(0) > 0 || self.a.degree_in(Var::T).unwrap_or(0) > 0
    }

    pub fn expectation(&self, c: Construction) -> Option<&Expectation> {
        self.expectations.iter().find(|e| e.construction == c)
    }

    pub fn specialization(&self, c: Construction) -> Option<&Specialization> {
        self.specializations.iter().find(|s| s.construction == c)
    }

    pub(crate) fn check_shape(&self) -> Result<(), String> {
        let n = self.degree();
        if n < 3 || n.is_multiple_of(2) {
            return Err(format!("deg f = {n} is not an odd integer ≥ 3"));
        }
        let lead = self.f.coeff(&Monomial::var(Var::X, n));
        if lead != self.field.from_rational(&self.leading).expect("rational") {
            return Err("leading coefficient of f differs from the declared value".into());
        }
        if self.f.vars().iter().any(|v| !matches!(v, Var::X | Var::T)) {
            return Err("f involves variables other than x and t".into());
        }
        if self.a.vars().iter().any(|v| !matches!(v, Var::X1 | Var::X2 | Var::T)) {
            return Err("A involves variables other than x1, x2 and t".into());
        }
        if let Some(s) = self.sign {
            if s != 1 && s != -1 {
                return Err(format!("sign {s} is not ±1"));
            }
        }
        if !self.a.is_zero() {
            for (m, c) in &self.anchors {
                if self.a.coeff(m) != *c {
                    return Err(format!("A disagrees with the printed coefficient of {}", m.fmt_text()));
                }
            }
        }
        Ok(())
    }

    /// The partner polynomial g.
    pub fn partner_poly(&self) -> Result<MPoly<NumberField>, CatalogError> {
        Ok(match self.partner {
            Partner::Identity => self.f.clone(),
            Partner::Conjugate => conjugate_poly(&self.f)?,
            Partner::NegatedConjugate => conjugate_poly(&self.f)?.neg(),
        })
    }
}

/// Applies σ to every coefficient.
pub fn conjugate_poly(p: &MPoly<NumberField>) -> Result<MPoly<NumberField>, FieldError> {
    let k = p.field().clone();
    p.try_map_coeffs(&k, |c| k.conjugate(c))
}

/// Literal families read from fixtures; cyclic and Dickson families are
/// generated on request.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub families: Vec<FamilyRecord>,
}

pub const LITERAL_FAMILIES: [&str; 6] = ["f7", "f11", "f13", "f15", "f21", "f31"];

impl Catalog {
    /// Looks up `f7` … `f31`, `cyclic-N[-E]` or `dickson-N[-I]`.
    pub fn get(&self, name: &str) -> Result<FamilyRecord, CatalogError> {
        if let Some(r) = self.families.iter().find(|r| r.name == name) {
            return Ok(r.clone());
        }
        let parse = |rest: &str| -> Option<(u32, u32)> {
            let mut it = rest.split('-');
            let n = it.next()?.parse().ok()?;
            let e = it.next().map_or(Some(1), |s| s.parse().ok())?;
            it.next().is_none().then_some((n, e))
        };
        let bad = || CatalogError::MissingFamily(name.to_string());
        if let Some(rest) = name.strip_prefix("cyclic-") {
            let (n, e) = parse(rest).ok_or_else(bad)?;
            if n < 3 || n % 2 == 0 || e == 0 || e >= n {
                return Err(bad());
            }
            return Ok(cyclic(n, e));
        }
        if let Some(rest) = name.strip_prefix("dickson-") {
            let (n, i) = parse(rest).ok_or_else(bad)?;
            if n < 3 || n % 2 == 0 || i == 0 || i > (n - 1) / 2 {
                return Err(bad());
            }
            return Ok(dickson_family(n, i));
        }
        Err(bad())
    }

    pub fn names(&self) -> Vec<String> {
        self.families.iter().map(|r| r.name.clone()).collect()
    }
}

/// Loads every `*.fam` file of `dir`, in order of family degree.
pub fn load_catalog(dir: &Path) -> Result<Catalog, CatalogError> {
    let file = dir.display().to_string();
    if file.is_empty() {
        return Err(CatalogError::Parse { file, line: 0, msg: "empty fixture path".into() });
    }
    let entries = std::fs::read_dir(dir).map_err(|e| CatalogError::Io { file: file.clone(), msg: e.to_string() })?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "fam"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CatalogError::Parse { file, line: 0, msg: "no family fixtures found".into() });
    }
    let mut families = paths.iter().map(|p| fixture::load_family_file(p)).collect::<Result<Vec<_>, _>>()?;
    families.sort_by_key(|r| r.degree());
    Ok(Catalog { families })
}

/// Dickson polynomial D_n in `v`: D_0 = 2, D_1 = v, D_n = v·D_{n−1} − D_{n−2}.
pub fn dickson<F: Field>(field: &F, n: u32, v: Var) -> MPoly<F> {
    let x = MPoly::var(field, v);
    let (mut prev, mut cur) = (MPoly::from_int(field, 2), x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn base_record(name: String, kind: FamilyKind, field: NumberField, f: MPoly<NumberField>, a: MPoly<NumberField>) -> FamilyRecord {
    FamilyRecord {
        name,
        kind,
        field,
        f,
        partner: Partner::Identity,
        a,
        anchors: Vec::new(),
        sign: None,
        leading: BigRational::one(),
        kappa: None,
        lambda: None,
        expectations: Vec::new(),
        specializations: Vec::new(),
    }
}

/// The pair (xⁿ, xⁿ) over Q(ζ_n) with A = x1 − ζ_n^e·x2.
pub fn cyclic(n: u32, e: u32) -> FamilyRecord {
    let k = NumberField::cyclotomic(n);
    let z = k.pow(&k.gen(0), u64::from(e));
    let f = MPoly::var(&k, Var::X).pow(n);
    let a = MPoly::var(&k, Var::X1).sub(&MPoly::var(&k, Var::X2).scale(&z));
    base_record(format!("cyclic-{n}-{e}"), FamilyKind::Cyclic { n, e }, k, f, a)
}

/// ζ^i + ζ^{-i} and (ζ^i − ζ^{-i})² in Q(ζ_n).
fn dickson_consts(k: &NumberField, n: u32, i: u32) -> (NfElem, NfElem) {
    let z = k.gen(0);
    let zi = k.pow(&z, u64::from(i % n));
    let zmi = k.pow(&z, u64::from((n - i % n) % n));
    let diff = k.sub(&zi, &zmi);
    (k.add(&zi, &zmi), k.mul(&diff, &diff))
}

/// A_{n,i} = x1² − (ζ^i+ζ^{-i})·x1·x2 + x2² + (ζ^i−ζ^{-i})².
pub fn dickson_factor(k: &NumberField, n: u32, i: u32) -> MPoly<NumberField> {
    let (c, d) = dickson_consts(k, n, i);
    let x1 = MPoly::var(k, Var::X1);
    let x2 = MPoly::var(k, Var::X2);
    x1.pow(2).sub(&x1.mul(&x2).scale(&c)).add(&x2.pow(2)).add(&MPoly::constant(k, d))
}

/// The pair (D_n, D_n) over Q(ζ_n) with A = A_{n,i}.
pub fn dickson_family(n: u32, i: u32) -> FamilyRecord {
    let k = NumberField::cyclotomic(n);
    let f = dickson(&k, n, Var::X);
    let a = dickson_factor(&k, n, i);
    let mut r = base_record(format!("dickson-{n}-{i}"), FamilyKind::Dickson { n, i }, k, f, a);
    r.sign = Some(1);
    r
}

/// f(x1) − g(x2).
pub fn difference_poly(rec: &FamilyRecord) -> Result<MPoly<NumberField>, CatalogError> {
    let g = rec.partner_poly()?;
    Ok(rec.f.rename(&[(Var::X, Var::X1)]).sub(&g.rename(&[(Var::X, Var::X2)])))
}

/// Certifies A | f(x1) − g(x2) and returns the cofactor B. For cyclic and
/// Dickson families the full product of the conjugate factors is checked
/// as well.
pub fn verify_factorization(rec: &FamilyRecord) -> Result<MPoly<NumberField>, CatalogError> {
    let fail = |r: &MPoly<NumberField>| CatalogError::FactorizationFails {
        family: rec.name.clone(),
        remainder: if r.num_terms() > 6 { format!("{} terms", r.num_terms()) } else { r.to_text() },
    };
    if rec.a.is_zero() {
        return Err(CatalogError::InvariantViolation(format!("{}: factor A is missing", rec.name)));
    }
    let diff = difference_poly(rec)?;
    let (b, r) = diff.divrem(&rec.a, Var::X1)?;
    if !r.is_zero() {
        return Err(fail(&r));
    }
    let k = &rec.field;
    let product = match rec.kind {
        FamilyKind::Literal => None,
        FamilyKind::Cyclic { n, .. } => {
            let x1 = MPoly::var(k, Var::X1);
            let x2 = MPoly::var(k, Var::X2);
            let z = k.gen(0);
            let p = (0..n).fold(MPoly::one(k), |acc, e| acc.mul(&x1.sub(&x2.scale(&k.pow(&z, u64::from(e))))));
            Some(p)
        }
        FamilyKind::Dickson { n, .. } => {
            let base = MPoly::var(k, Var::X1).sub(&MPoly::var(k, Var::X2));
            Some((1..=(n - 1) / 2).fold(base, |acc, i| acc.mul(&dickson_factor(k, n, i))))
        }
    };
    if let Some(p) = product {
        let r = p.sub(&diff);
        if !r.is_zero() {
            return Err(fail(&r));
        }
    }
    Ok(b)
}

/// Finds the unit c with A(x2, x1) = c·A^σ(x1, x2), if any.
pub fn symmetry_unit(rec: &FamilyRecord) -> Result<Option<NfElem>, CatalogError> {
    let swapped = rec.a.swap(Var::X1, Var::X2);
    let conj = conjugate_poly(&rec.a)?;
    let k = &rec.field;
    let Some((m, c)) = conj.leading() else {
        return Ok(None);
    };
    let unit = k.div(&swapped.coeff(m), c).ok_or(FieldError::DivisionByZero)?;
    Ok((swapped == conj.scale(&unit)).then_some(unit))
}

/// Returns ε ∈ {+1, −1} with A(x2, x1) = ε·A^σ(x1, x2), checked against
/// the declared sign.
pub fn verify_symmetry(rec: &FamilyRecord) -> Result<i32, CatalogError> {
    let fail = |detail: String| CatalogError::SymmetryFails { family: rec.name.clone(), detail };
    let k = &rec.field;
    let unit = symmetry_unit(rec)?.ok_or_else(|| fail("A(x2,x1) is not a multiple of A^σ(x1,x2)".into()))?;
    let eps = if k.is_one(&unit) {
        1
    } else if k.is_one(&k.neg(&unit)) {
        -1
    } else {
        return Err(fail(format!("A(x2,x1) = c·A^σ(x1,x2) with c = {}", k.display(&unit))));
    };
    match rec.sign {
        Some(s) if s != eps => Err(fail(format!("declared sign {s}, found {eps}"))),
        _ => Ok(eps),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationReport {
    /// (c2, c3) of the linear model, coefficients in K[t].
    pub linear: Option<(MPoly<NumberField>, MPoly<NumberField>)>,
    /// (c4, c5) of the quadratic model.
    pub quadratic: Option<(MPoly<NumberField>, MPoly<NumberField>)>,
}

/// Checks c3 = κ·c2 on y² = f(x) + s and c5 = λ·c4 on y² = F(f(x)),
/// where c_k is the coefficient of x^{deg − k}. Both hold identically in t.
pub fn check_normalization_constants(rec: &FamilyRecord) -> Result<NormalizationReport, CatalogError> {
    if rec.kappa.is_none() && rec.lambda.is_none() {
        return Err(CatalogError::NoConstants { family: rec.name.clone() });
    }
    let n = rec.degree();
    let mut report = NormalizationReport { linear: None, quadratic: None };
    let check = |name: &str, c: &NfElem, lo: MPoly<NumberField>, hi: MPoly<NumberField>| {
        let rhs = lo.scale(c);
        if hi != rhs {
            return Err(CatalogError::ConstantMismatch {
                family: rec.name.clone(),
                constant: name.into(),
                lhs: hi.to_text(),
                rhs: rhs.to_text(),
            });
        }
        Ok((lo, hi))
    };
    if let Some(kappa) = &rec.kappa {
        let h = Construction::Linear.compose(&rec.f);
        report.linear = Some(check("kappa", kappa, h.coeff_in(Var::X, n - 2), h.coeff_in(Var::X, n - 3))?);
    }
    if let Some(lambda) = &rec.lambda {
        let h = Construction::Quadratic.compose(&rec.f);
        let d = 2 * n;
        report.quadratic = Some(check("lambda", lambda, h.coeff_in(Var::X, d - 4), h.coeff_in(Var::X, d - 5))?);
    }
    Ok(report)
}

/// Builds X: y² = F(f(x)), Y: y² = F(g(x)) and the correspondence cut out
/// by A(x1, x2) and y1 − y2.
pub fn build_construction(rec: &FamilyRecord, c: Construction) -> Result<Correspondence<NumberField>, CatalogError> {
    let g = rec.partner_poly()?;
    let n = rec.degree();
    let mut params: Vec<Var> = Vec::new();
    if rec.has_t() {
        params.push(Var::T);
    }
    params.extend_from_slice(c.params());
    Ok(Correspondence {
        construction: c,
        x: HyperellipticModel::new(c.compose(&rec.f), c.genus(n)),
        y: HyperellipticModel::new(c.compose(&g), c.genus(n)),
        a: rec.a.clone(),
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rationals;

    #[test]
    fn dickson_small() {
        let q = Rationals;
        let x = MPoly::var(&q, Var::X);
        let c = |n| MPoly::from_int(&q, n);
        assert_eq!(dickson(&q, 1, Var::X), x);
        assert_eq!(dickson(&q, 3, Var::X), x.pow(3).sub(&x.mul(&c(3))));
        assert_eq!(dickson(&q, 5, Var::X), x.pow(5).sub(&x.pow(3).mul(&c(5))).add(&x.mul(&c(5))));
    }

    #[test]
    fn dickson_functional_identity() {
        // xⁿ·D_n(x + 1/x) = x^{2n} + 1
        let q = Rationals;
        let x = MPoly::var(&q, Var::X);
        let shifted = x.pow(2).add(&MPoly::one(&q));
        for n in 1..=31u32 {
            let d = dickson(&q, n, Var::X);
            let mut lhs = MPoly::zero(&q);
            for k in 0..=n {
                let c = d.coeff(&Monomial::var(Var::X, k));
                lhs = lhs.add(&shifted.pow(k).mul(&x.pow(n - k)).scale(&c));
            }
            assert_eq!(lhs, x.pow(2 * n).add(&MPoly::one(&q)), "n = {n}");
        }
    }

    #[test]
    fn cyclic_and_dickson_factorizations() {
        for n in [3u32, 5, 7] {
            verify_factorization(&cyclic(n, 1)).unwrap();
            verify_factorization(&dickson_family(n, 1)).unwrap();
        }
        assert_eq!(verify_symmetry(&dickson_family(5, 2)).unwrap(), 1);
    }

    #[test]
    fn catalog_names() {
        let cat = Catalog::default();
        assert_eq!(cat.get("cyclic-5").unwrap().name, "cyclic-5-1");
        assert_eq!(cat.get("dickson-7-3").unwrap().kind, FamilyKind::Dickson { n: 7, i: 3 });
        assert!(matches!(cat.get("dickson-7-4"), Err(CatalogError::MissingFamily(_))));
        assert!(matches!(cat.get("f7"), Err(CatalogError::MissingFamily(_))));
    }

    #[test]
    fn genera() {
        assert_eq!(Construction::Linear.genus(7), 3);
        assert_eq!(Construction::Quadratic.genus(31), 30);
        let corr = build_construction(&cyclic(5, 1), Construction::Quadratic).unwrap();
        assert_eq!(corr.x.genus, 4);
        assert_eq!(corr.x.h.degree_in(Var::X), Some(10));
    }
}
