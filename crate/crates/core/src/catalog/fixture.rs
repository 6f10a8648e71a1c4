//! Text format of family fixtures.
//!
//! ```text
//! family f7
//! gen a = [2/1] [1/1] [1/1]
//! sigma a = [-1/1, -1/1]
//! partner conjugate
//! sign -1
//! leading 1/7
//! kappa [1/1, 0/1]
//! lambda [502/277, 44/277]
//! expect linear m 2 group 2^3
//! special linear prime 31 s=1 t=0
//! f 7 0 [1/7, 0/1]
//! A 3 0 0 [1/1, 0/1]
//! anchor 3 0 0 [1/1, 0/1]
//! checksum sha256:<hex digest of every preceding byte>
//! ```
//!
//! `f d e c` is the term c·x^d·t^e; `A i j e c` is c·x1^i·x2^j·t^e.

use std::path::Path;

use num_rational::BigRational;
use sha2::{Digest, Sha256};

use super::{CatalogError, Construction, Expectation, FamilyKind, FamilyRecord, Partner, Specialization};
use crate::fields::{parse_rational, Field, Generator, NumberField};
use crate::kernel::GroupStructure;
use crate::poly::{MPoly, Monomial, Var};

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// Splits `[..] [..] ...` into its bracketed groups.
fn bracket_groups(s: &str) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('[') {
            return None;
        }
        let end = rest.find(']')?;
        out.push(&rest[..=end]);
        rest = rest[end + 1..].trim_start();
    }
    Some(out)
}

fn parse_coord_array(s: &str) -> Option<Vec<BigRational>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    inner.split(',').map(|p| parse_rational(p).ok()).collect()
}

/// Verifies the trailing checksum line and returns the body.
pub fn check_checksum<'a>(file: &str, text: &'a str) -> Result<&'a str, CatalogError> {
    let trimmed = text.trim_end_matches('\n');
    let (body_end, last) = match trimmed.rfind('\n') {
        Some(i) => (i + 1, &trimmed[i + 1..]),
        None => (0, trimmed),
    };
    let digest = last.strip_prefix("checksum sha256:").ok_or_else(|| CatalogError::Parse {
        file: file.into(),
        line: trimmed.lines().count(),
        msg: "missing checksum line".into(),
    })?;
    let body = &text[..body_end];
    let actual = sha256_hex(body.as_bytes());
    if actual != digest.trim() {
        return Err(CatalogError::ChecksumMismatch { file: file.into(), expected: digest.trim().into(), actual });
    }
    Ok(body)
}

/// Appends a fresh checksum line to `body` (which must end in a newline).
pub fn seal(body: &str) -> String {
    format!("{body}checksum sha256:{}\n", sha256_hex(body.as_bytes()))
}

pub fn load_family_file(path: &Path) -> Result<FamilyRecord, CatalogError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io { file: file.clone(), msg: e.to_string() })?;
    parse_family(&file, &text)
}

pub fn parse_family(file: &str, text: &str) -> Result<FamilyRecord, CatalogError> {
    if text.trim().is_empty() {
        return Err(CatalogError::Parse { file: file.into(), line: 0, msg: "empty fixture".into() });
    }
    let body = check_checksum(file, text)?;
    let mut name = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut sigma_lines: Vec<(String, String, usize)> = Vec::new();
    let mut partner = None;
    let mut sign = None;
    let mut leading = None;
    let mut kappa_s = None;
    let mut lambda_s = None;
    let mut expectations = Vec::new();
    let mut specializations = Vec::new();
    let mut f_terms: Vec<(Monomial, String, usize)> = Vec::new();
    let mut a_terms: Vec<(Monomial, String, usize)> = Vec::new();
    let mut anchor_terms: Vec<(Monomial, String, usize)> = Vec::new();

    for (idx, raw) in body.lines().enumerate() {
        let lineno = idx + 1;
        let err = |msg: &str| CatalogError::Parse { file: file.into(), line: lineno, msg: msg.into() };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "family" => name = Some(rest.to_string()),
            "gen" => {
                let (gname, arrays) = rest.split_once('=').ok_or_else(|| err("expected `gen NAME = [..] ...`"))?;
                let groups = bracket_groups(arrays).ok_or_else(|| err("malformed coefficient arrays"))?;
                let min_poly = groups
                    .iter()
                    .map(|g| parse_coord_array(g))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| err("malformed rational"))?;
                gens.push(Generator { name: gname.trim().to_string(), min_poly });
            }
            "sigma" => {
                let (gname, arr) = rest.split_once('=').ok_or_else(|| err("expected `sigma NAME = [..]`"))?;
                sigma_lines.push((gname.trim().to_string(), arr.trim().to_string(), lineno));
            }
            "partner" => {
                partner = Some(match rest {
                    "conjugate" => Partner::Conjugate,
                    "negated-conjugate" => Partner::NegatedConjugate,
                    "self" => Partner::Identity,
                    _ => return Err(err("unknown partner rule")),
                })
            }
            "sign" => sign = Some(rest.parse::<i32>().map_err(|_| err("bad sign"))?),
            "leading" => leading = Some(parse_rational(rest).map_err(|_| err("bad leading coefficient"))?),
            "kappa" => kappa_s = Some((rest.to_string(), lineno)),
            "lambda" => lambda_s = Some((rest.to_string(), lineno)),
            "expect" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() < 5 || toks[1] != "m" || toks[3] != "group" {
                    return Err(err("expected `expect CONSTRUCTION m M group G`"));
                }
                let construction = Construction::parse(toks[0]).ok_or_else(|| err("unknown construction"))?;
                let m = toks[2].parse().map_err(|_| err("bad m"))?;
                let group = GroupStructure::parse(&toks[4..].join(" ")).ok_or_else(|| err("bad group"))?;
                expectations.push(Expectation { construction, m, group });
            }
            "special" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() < 3 || toks[1] != "prime" {
                    return Err(err("expected `special CONSTRUCTION prime P VAR=VALUE ...`"));
                }
                let construction = Construction::parse(toks[0]).ok_or_else(|| err("unknown construction"))?;
                let prime = toks[2].parse().map_err(|_| err("bad prime"))?;
                let values = parse_assignments(&toks[3..].join(" ")).ok_or_else(|| err("bad assignment"))?;
                specializations.push(Specialization { construction, prime, values });
            }
            "f" | "A" | "anchor" => {
                let mut it = rest.splitn(if key == "f" { 3 } else { 4 }, ' ');
                let mut exps = Vec::new();
                for _ in 0..(if key == "f" { 2 } else { 3 }) {
                    exps.push(it.next().and_then(|s| s.parse::<u32>().ok()).ok_or_else(|| err("bad exponent"))?);
                }
                let elem = it.next().ok_or_else(|| err("missing coefficient"))?.trim().to_string();
                if key == "f" {
                    f_terms.push((Monomial::from_pairs(&[(Var::X, exps[0]), (Var::T, exps[1])]), elem, lineno));
                } else {
                    let m = Monomial::from_pairs(&[(Var::X1, exps[0]), (Var::X2, exps[1]), (Var::T, exps[2])]);
                    if key == "A" {
                        a_terms.push((m, elem, lineno));
                    } else {
                        anchor_terms.push((m, elem, lineno));
                    }
                }
            }
            _ => return Err(err(&format!("unknown key `{key}`"))),
        }
    }

    let missing = |what: &str| CatalogError::Parse { file: file.into(), line: 0, msg: format!("missing `{what}`") };
    let name = name.ok_or_else(|| missing("family"))?;
    if gens.is_empty() {
        return Err(missing("gen"));
    }
    let plain = NumberField::new(gens.clone(), None)
        .map_err(|e| CatalogError::InvariantViolation(format!("{file}: {e}")))?;
    let mut images = Vec::new();
    for g in &gens {
        let (_, arr, lineno) = sigma_lines
            .iter()
            .find(|(n, _, _)| *n == g.name)
            .ok_or_else(|| missing(&format!("sigma {}", g.name)))?;
        let c = parse_coord_array(arr)
            .filter(|c| c.len() == plain.degree())
            .ok_or_else(|| CatalogError::Parse { file: file.into(), line: *lineno, msg: "bad involution image".into() })?;
        images.push(c);
    }
    let field = NumberField::new(gens, Some(images))
        .map_err(|e| CatalogError::InvariantViolation(format!("{file}: {e}")))?;
    let elem = |s: &str, line: usize| {
        field
            .parse_elem(s)
            .map_err(|e| CatalogError::Parse { file: file.into(), line, msg: e.to_string() })
    };
    let poly = |terms: &[(Monomial, String, usize)]| -> Result<MPoly<NumberField>, CatalogError> {
        let mut p = MPoly::zero(&field);
        for (m, s, line) in terms {
            p = p.add(&MPoly::term(&field, elem(s, *line)?, *m));
        }
        Ok(p)
    };
    let f = poly(&f_terms)?;
    let a = poly(&a_terms)?;
    let anchors = anchor_terms
        .iter()
        .map(|(m, s, line)| Ok((*m, elem(s, *line)?)))
        .collect::<Result<Vec<_>, CatalogError>>()?;
    let kappa = kappa_s.map(|(s, l)| elem(&s, l)).transpose()?;
    let lambda = lambda_s.map(|(s, l)| elem(&s, l)).transpose()?;
    let leading = leading.ok_or_else(|| missing("leading"))?;

    let rec = FamilyRecord {
        name,
        kind: FamilyKind::Literal,
        field,
        f,
        partner: partner.ok_or_else(|| missing("partner"))?,
        a,
        anchors,
        sign,
        leading,
        kappa,
        lambda,
        expectations,
        specializations,
    };
    rec.check_shape().map_err(|m| CatalogError::InvariantViolation(format!("{file}: {m}")))?;
    Ok(rec)
}

/// Parses `s=1 t=0` style assignments with rational values.
pub fn parse_assignments(s: &str) -> Option<Vec<(Var, BigRational)>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (v, val) = p.split_once('=')?;
            Some((Var::from_name(v.trim())?, parse_rational(val).ok()?))
        })
        .collect()
}

/// Replaces the `A` lines of a fixture with `a` and reseals it.
pub fn replace_factor(text: &str, field: &NumberField, a: &MPoly<NumberField>) -> String {
    let mut body = String::new();
    for line in text.lines() {
        if line.starts_with("A ") || line.starts_with("checksum ") {
            continue;
        }
        body.push_str(line);
        body.push('\n');
    }
    for (m, c) in a.terms().rev() {
        body.push_str(&format!(
            "A {} {} {} {}\n",
            m.exp(Var::X1),
            m.exp(Var::X2),
            m.exp(Var::T),
            field.fmt_elem(c)
        ));
    }
    seal(&body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_detects_edits() {
        let sealed = seal("family x\n");
        assert!(check_checksum("t", &sealed).is_ok());
        let tampered = sealed.replace("family x", "family y");
        assert!(matches!(check_checksum("t", &tampered), Err(CatalogError::ChecksumMismatch { .. })));
        assert!(check_checksum("t", "family x\n").is_err());
    }

    #[test]
    fn empty_fixture_is_a_parse_error() {
        assert!(matches!(parse_family("empty", ""), Err(CatalogError::Parse { .. })));
    }

    #[test]
    fn assignments() {
        let v = parse_assignments("s1=0 s2=-1 t=0").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1].0, Var::S2);
        assert!(parse_assignments("q=1").is_none());
    }
}
