use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// A finite abelian group ∏ (Z/n)^e, kept with orders descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupStructure(Vec<(u32, u32)>);

impl GroupStructure {
    pub fn new(mut parts: Vec<(u32, u32)>) -> Self {
        parts.retain(|&(n, e)| n > 1 && e > 0);
        parts.sort_by_key(|p| std::cmp::Reverse(p.0));
        let mut merged: Vec<(u32, u32)> = Vec::new();
        for (n, e) in parts {
            match merged.last_mut() {
                Some(last) if last.0 == n => last.1 += e,
                _ => merged.push((n, e)),
            }
        }
        GroupStructure(merged)
    }

    pub fn trivial() -> Self {
        GroupStructure(Vec::new())
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn order(&self) -> BigUint {
        self.0.iter().fold(BigUint::from(1u32), |acc, &(n, e)| acc * BigUint::from(n).pow(e))
    }

    /// Parses `4^9 2^2`; `1` is the trivial group.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "1" {
            return Some(Self::trivial());
        }
        let parts = s
            .split_whitespace()
            .map(|p| {
                let (n, e) = p.split_once('^').unwrap_or((p, "1"));
                Some((n.parse().ok()?, e.parse().ok()?))
            })
            .collect::<Option<Vec<(u32, u32)>>>()?;
        if parts.is_empty() || parts.iter().any(|&(n, e)| n < 2 || e == 0) {
            return None;
        }
        Some(Self::new(parts))
    }

    /// Compact form `4^9 2^2`, inverse of [`GroupStructure::parse`].
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|(n, e)| format!("{n}^{e}")).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.0.iter().map(|(n, e)| format!("(Z/{n})^{e}")).collect();
        f.write_str(&s.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = GroupStructure::parse("2^10 8^5 4^10").unwrap();
        assert_eq!(g.compact(), "8^5 4^10 2^10");
        assert_eq!(g.to_string(), "(Z/8)^5 x (Z/4)^10 x (Z/2)^10");
        assert_eq!(g.order(), BigUint::from(8u32).pow(15));
        assert_eq!(GroupStructure::parse("1").unwrap(), GroupStructure::trivial());
        assert!(GroupStructure::parse("4^x").is_none());
        assert!(GroupStructure::parse("").is_none());
    }
}
