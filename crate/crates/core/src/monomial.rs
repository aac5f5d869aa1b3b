//! Monomials of `k[x_1, ..., x_n]` as exponent vectors.
//!
//! A [`Monomial`] does not hold a reference to its [`VarContext`]; binary
//! operations compare vector lengths and report [`Error::ContextMismatch`]
//! when they disagree.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ordered list of variables of the ambient polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarContext {
    names: Vec<String>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidContext("at least one variable is required".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            if !is_identifier(n) {
                return Err(Error::InvalidContext(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(VarContext { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.len())
    }

    /// The product of all variables, `x_1 * ... * x_n`.
    pub fn all_variables(&self) -> Monomial {
        Monomial::from_exponents(vec![1; self.len()])
    }

    pub fn parse(&self, text: &str) -> Result<Monomial> {
        Monomial::parse(text, self)
    }

    /// Checks that `m` lives in this context.
    pub fn check(&self, m: &Monomial) -> Result<()> {
        if m.nvars() == self.len() {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                expected: self.len(),
                found: m.nvars(),
            })
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}`, stored as its exponent vector.
///
/// Multidegrees in the multigraded setting are recorded as monomials, so
/// this type also serves as the `Z^n`-degree of homogeneous elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
        }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The single variable `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// Parses `1` or a `*`-separated product of `var` / `var^k` factors.
    pub fn parse(text: &str, ctx: &VarContext) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::MalformedMonomial(text.to_string()));
        }
        let mut exps = vec![0u32; ctx.len()];
        if text == "1" {
            return Ok(Monomial { exponents: exps });
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), Some(e.trim())),
                None => (factor, None),
            };
            if !is_identifier(name) {
                return Err(Error::MalformedMonomial(text.to_string()));
            }
            let var = ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            let k = match exp {
                None => 1,
                Some(e) => parse_exponent(e, factor)?,
            };
            exps[var] = exps[var].checked_add(k).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { exponents: exps })
    }

    /// Renders the monomial in the context's variable order; `1` for the unit.
    pub fn format(&self, ctx: &VarContext) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            let name = ctx.names().get(i).map(String::as_str).unwrap_or("?");
            out.push_str(name);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }

    fn same_context(&self, other: &Monomial) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            })
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.same_context(other)?;
        Ok(self.zip_with(other, u32::max))
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.same_context(other)?;
        Ok(self.zip_with(other, u32::min))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.same_context(other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let exponents = self
            .exponents
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    /// `true` when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.nvars() == other.nvars()
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    /// Exact quotient `self / divisor`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        self.same_context(divisor)?;
        let mut exponents = Vec::with_capacity(self.nvars());
        for (var, (a, b)) in self.exponents.iter().zip(&divisor.exponents).enumerate() {
            if b > a {
                return Err(Error::NotDivisible {
                    dividend: self.exponents.clone(),
                    divisor: divisor.exponents.clone(),
                    var,
                });
            }
            exponents.push(a - b);
        }
        Ok(Monomial { exponents })
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

fn parse_exponent(e: &str, factor: &str) -> Result<u32> {
    if let Some(rest) = e.strip_prefix('-') {
        if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::NegativeExponent(factor.to_string()));
        }
        return Err(Error::MalformedExponent(factor.to_string()));
    }
    if e.is_empty() || !e.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::MalformedExponent(factor.to_string()));
    }
    match e.parse::<u32>() {
        Ok(0) => Err(Error::MalformedExponent(factor.to_string())),
        Ok(k) => Ok(k),
        Err(_) => Err(Error::ExponentOverflow),
    }
}

/// lcm of a nonempty list of monomials.
pub fn lcm_all<'a, I>(ms: I) -> Result<Monomial>
where
    I: IntoIterator<Item = &'a Monomial>,
{
    let mut it = ms.into_iter();
    let first = it.next().ok_or(Error::EmptyInput("lcm of no monomials"))?;
    it.try_fold(first.clone(), |acc, m| acc.lcm(m))
}

/// Smallest superset of `ms` closed under pairwise lcm.
pub fn lcm_closure(ms: &[Monomial]) -> Result<BTreeSet<Monomial>> {
    let first = ms.first().ok_or(Error::EmptyInput("lcm closure of an empty set"))?;
    for m in ms {
        first.same_context(m)?;
    }
    let mut closed: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier: Vec<Monomial> = Vec::new();
    for m in ms {
        if closed.insert(m.clone()) {
            frontier.push(m.clone());
        }
    }
    while let Some(m) = frontier.pop() {
        let joins: Vec<Monomial> = closed.iter().map(|c| c.zip_with(&m, u32::max)).collect();
        for j in joins {
            if closed.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(closed)
}
