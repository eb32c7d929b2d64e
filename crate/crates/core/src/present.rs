//! Symbolic words in free groups on named generators, and finite
//! presentations built from them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sym {
    pub name: String,
    pub inv: bool,
}

impl Sym {
    pub fn inverse(&self) -> Sym {
        Sym { name: self.name.clone(), inv: !self.inv }
    }
}

/// Word over named symbols. Products freely reduce; the constructor does not.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymWord(pub Vec<Sym>);

impl SymWord {
    pub fn empty() -> Self {
        SymWord(Vec::new())
    }

    pub fn gen(name: &str) -> Self {
        SymWord(vec![Sym { name: name.to_string(), inv: false }])
    }

    pub fn letter(name: &str, inv: bool) -> Self {
        SymWord(vec![Sym { name: name.to_string(), inv }])
    }

    /// Same token syntax as group words: `a b' 1`.
    pub fn parse(text: &str) -> Self {
        SymWord(
            text.split_whitespace()
                .filter(|t| *t != "1")
                .map(|t| match t.strip_suffix('\'') {
                    Some(n) => Sym { name: n.to_string(), inv: true },
                    None => Sym { name: t.to_string(), inv: false },
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.0.iter().map(|s| s.name.clone()).collect()
    }

    pub fn inverse(&self) -> SymWord {
        SymWord(self.0.iter().rev().map(Sym::inverse).collect())
    }

    pub fn free_reduce(&self) -> SymWord {
        let mut out: Vec<Sym> = Vec::with_capacity(self.0.len());
        for s in &self.0 {
            if out.last().is_some_and(|t| t.name == s.name && t.inv != s.inv) {
                out.pop();
            } else {
                out.push(s.clone());
            }
        }
        SymWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0].name != p[1].name || p[0].inv == p[1].inv)
    }

    /// Reduced product.
    pub fn mul(&self, other: &SymWord) -> SymWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SymWord(v).free_reduce()
    }

    pub fn product<'a, I: IntoIterator<Item = &'a SymWord>>(parts: I) -> SymWord {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        SymWord(v).free_reduce()
    }

    pub fn pow(&self, k: i64) -> SymWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        SymWord::product(std::iter::repeat_n(&base, k.unsigned_abs() as usize))
    }

    /// `[a,b] = a⁻¹b⁻¹ab`.
    pub fn commutator(a: &SymWord, b: &SymWord) -> SymWord {
        SymWord::product([&a.inverse(), &b.inverse(), a, b])
    }

    /// `a^x = x⁻¹ax`.
    pub fn conjugate(a: &SymWord, x: &SymWord) -> SymWord {
        SymWord::product([&x.inverse(), a, x])
    }

    /// Replaces each symbol by its image (or itself when `f` returns None), then reduces.
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<SymWord>) -> SymWord {
        let mut v = Vec::new();
        for s in &self.0 {
            match f(&s.name) {
                Some(img) => {
                    if s.inv {
                        v.extend(img.inverse().0);
                    } else {
                        v.extend(img.0);
                    }
                }
                None => v.push(s.clone()),
            }
        }
        SymWord(v).free_reduce()
    }

    /// Exponent sum of one symbol.
    pub fn exponent_sum(&self, name: &str) -> i64 {
        self.0.iter().filter(|s| s.name == name).map(|s| if s.inv { -1 } else { 1 }).sum()
    }

    pub fn occurrences(&self, name: &str) -> usize {
        self.0.iter().filter(|s| s.name == name).count()
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|s| if s.inv { format!("{}'", s.name) } else { s.name.clone() }).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for SymWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(SymWord::parse(&String::deserialize(d)?))
    }
}

/// Generators and relators. `notes` carries side conditions that are stated
/// rather than checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<SymWord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Self {
        Presentation { generators, relations: Vec::new(), notes: Vec::new() }
    }

    /// Adds a reduced relator unless it is trivial or already present.
    pub fn push(&mut self, r: SymWord) {
        let r = r.free_reduce();
        if !r.is_empty() && !self.relations.contains(&r) {
            self.relations.push(r);
        }
    }

    pub fn validate(&self) -> Result<()> {
        let gens: BTreeSet<&str> = self.generators.iter().map(String::as_str).collect();
        for r in &self.relations {
            if let Some(s) = r.0.iter().find(|s| !gens.contains(s.name.as_str())) {
                return Err(Error::UnknownVertex(s.name.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}
