use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intpoly::{self, ZPoly};
use super::SimplicityError;

/// Weil coefficients w_1 … w_g of an abelian variety over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilData {
    pub q: u64,
    pub g: u32,
    pub w: Vec<BigInt>,
    /// Header lines other than `q` and `g`, in file order.
    pub meta: Vec<(String, String)>,
}

impl WeilData {
    pub fn new(q: u64, w: Vec<BigInt>) -> Self {
        WeilData { q, g: w.len() as u32, w, meta: Vec::new() }
    }

    pub fn from_ints(q: u64, w: &[i64]) -> Self {
        Self::new(q, w.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Header lines `key value…`, `#` comments, then one integer per line.
    pub fn parse(text: &str) -> Result<Self, SimplicityError> {
        let mut q = None;
        let mut g = None;
        let mut meta = Vec::new();
        let mut w = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| SimplicityError::Parse { line: n + 1, what: what.into() };
            if line.starts_with(|c: char| c.is_ascii_alphabetic()) {
                if !w.is_empty() {
                    return Err(bad("header line after coefficients"));
                }
                let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
                let value = value.trim();
                match key {
                    "q" => q = Some(value.parse::<u64>().map_err(|_| bad("q"))?),
                    "g" => g = Some(value.parse::<u32>().map_err(|_| bad("g"))?),
                    _ => meta.push((key.to_string(), value.to_string())),
                }
            } else {
                w.push(line.parse::<BigInt>().map_err(|_| bad("integer"))?);
            }
        }
        let q = q.ok_or(SimplicityError::MissingHeader("q"))?;
        let g = g.ok_or(SimplicityError::MissingHeader("g"))?;
        if w.len() != g as usize {
            return Err(SimplicityError::WrongCount { expected: g, found: w.len() });
        }
        Ok(WeilData { q, g, w, meta })
    }

    pub fn load(path: &Path) -> Result<Self, SimplicityError> {
        let text = fs::read_to_string(path).map_err(|e| SimplicityError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Corrections recorded as `erratum wI VALUE` header lines.
    pub fn errata(&self) -> Vec<(usize, BigInt)> {
        self.meta
            .iter()
            .filter(|(k, _)| k == "erratum")
            .filter_map(|(_, v)| {
                let (i, x) = v.split_once(char::is_whitespace)?;
                Some((i.strip_prefix('w')?.parse().ok()?, x.trim().parse().ok()?))
            })
            .collect()
    }

    /// The coefficients with every erratum applied.
    pub fn corrected(&self) -> WeilData {
        let mut out = self.clone();
        for (i, x) in self.errata() {
            if (1..=self.w.len()).contains(&i) {
                out.w[i - 1] = x;
            }
        }
        out
    }

    /// #X(F_q) = q + 1 + w_1 for a curve X with this Jacobian.
    pub fn point_count(&self) -> BigInt {
        BigInt::from(self.q) + 1 + self.w.first().cloned().unwrap_or_default()
    }
}

/// χ(x) = x^{2g} + w_1 x^{2g−1} + ⋯ + w_g x^g + q w_{g−1} x^{g−1} + ⋯ + q^g, lowest degree first.
pub fn weil_expand(data: &WeilData) -> ZPoly {
    let g = data.g as usize;
    let q = BigInt::from(data.q);
    let mut chi = vec![BigInt::zero(); 2 * g + 1];
    chi[2 * g] = BigInt::one();
    for (i, wi) in data.w.iter().enumerate() {
        chi[2 * g - 1 - i] = wi.clone();
    }
    // x^k carries w_k·q^(g−k) for k < g, with w_0 = 1
    let mut qk = BigInt::one();
    for k in (0..g).rev() {
        qk *= &q;
        chi[k] = if k == 0 { qk.clone() } else { &data.w[k - 1] * &qk };
    }
    chi
}

/// x^{2g}·χ(q/x) = q^g·χ(x).
pub fn is_palindromic(chi: &[BigInt], q: u64) -> bool {
    let n = chi.len() - 1;
    if n % 2 == 1 {
        return false;
    }
    let g = n / 2;
    let q = BigInt::from(q);
    let pow = |e: usize| num_traits::pow(q.clone(), e);
    (0..=n).all(|i| &chi[i] * pow(i) == &chi[n - i] * pow(g))
}

/// The real Weil polynomial h with χ(x) = x^g·h(x + q/x); `None` if χ is not of that shape.
pub fn real_weil_polynomial(chi: &[BigInt], q: u64) -> Option<ZPoly> {
    let n = chi.len() - 1;
    if n % 2 == 1 {
        return None;
    }
    let g = n / 2;
    let qq = BigInt::from(q);
    let mut rest = chi.to_vec();
    let mut h = vec![BigInt::zero(); g + 1];
    // x^g·(x + q/x)^k = x^(g−k)·(x² + q)^k
    for k in (0..=g).rev() {
        let b = rest[g + k].clone();
        if b.is_zero() {
            continue;
        }
        let mut term = vec![BigInt::one()];
        for _ in 0..k {
            term = intpoly::mul(&term, &[qq.clone(), BigInt::zero(), BigInt::one()]);
        }
        for (i, c) in term.iter().enumerate() {
            rest[g - k + i] -= &b * c;
        }
        h[k] = b;
    }
    rest.iter().all(Zero::is_zero).then_some(h)
}

/// Every root of χ has absolute value √q: h is real-rooted with all roots in [−2√q, 2√q].
pub fn satisfies_weil_bound(chi: &[BigInt], q: u64) -> bool {
    let Some(h) = real_weil_polynomial(chi, q) else { return false };
    let distinct = intpoly::degree(&h).unwrap_or(0) - intpoly::degree(&intpoly::gcd(&h, &intpoly::derivative(&h))).unwrap_or(0);
    if intpoly::real_roots_above(&h, None) != distinct {
        return false;
    }
    // roots r_i² of H(z), with H(x²) = ±h(x)·h(−x)
    let h_neg: ZPoly = h.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    let prod = intpoly::mul(&h, &h_neg);
    let big_h: ZPoly = prod.iter().step_by(2).cloned().collect();
    intpoly::real_roots_above(&big_h, Some(&(BigInt::from(4u64) * BigInt::from(q)))) == 0
}
