//! Laurent monomials in the variables `Y_{i,p}`.
//!
//! Text format: space separated tokens `i_p` with an optional exponent,
//! written either `i_p^e` or `i^e_p`; braces as in `1_{-6}` are accepted.
//! The empty monomial renders as `1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::laurent::{LaurentPoly, Monomial, VarTable};
use crate::Error;

/// Variable `Y_{i,p}` with a 0-based vertex. Ordered by vertex, then by
/// spectral parameter descending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct YKey {
    pub i: usize,
    pub p: i64,
}

impl Ord for YKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.i.cmp(&other.i).then(other.p.cmp(&self.p))
    }
}

impl PartialOrd for YKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl YKey {
    pub fn name(&self) -> String {
        format!("Y{}_{}", self.i + 1, self.p)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial(BTreeMap<YKey, i64>);

impl YMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize, p: i64) -> Self {
        Self::from_pairs([(i, p, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64, i64)>) -> Self {
        let mut m = Self::one();
        for (i, p, e) in pairs {
            m.mul_var(i, p, e);
        }
        m
    }

    fn mul_var(&mut self, i: usize, p: i64, e: i64) {
        if e == 0 {
            return;
        }
        let key = YKey { i, p };
        let slot = self.0.entry(key).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&key);
        }
    }

    pub fn exp(&self, i: usize, p: i64) -> i64 {
        self.0.get(&YKey { i, p }).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (YKey, i64)> + '_ {
        self.0.iter().map(|(k, &e)| (*k, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.values().all(|&e| e > 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.mul_var(k.i, k.p, e);
        }
        out
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.pow(-1))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        YMonomial(self.0.iter().map(|(k, &x)| (*k, x * e)).collect())
    }

    /// Product of `bases[i]^exps[i]`.
    pub fn product(bases: &[YMonomial], exps: &[i64]) -> Self {
        bases.iter().zip(exps).fold(Self::one(), |acc, (b, &e)| acc.mul(&b.pow(e)))
    }

    /// Shifts every spectral parameter by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        YMonomial(self.0.iter().map(|(k, &e)| (YKey { i: k.i, p: k.p + s }, e)).collect())
    }

    pub fn max_spectral(&self) -> Option<i64> {
        self.0.keys().map(|k| k.p).max()
    }

    pub fn keys(&self) -> impl Iterator<Item = YKey> + '_ {
        self.0.keys().copied()
    }

    pub fn to_monomial(&self, table: &VarTable) -> Result<Monomial, Error> {
        let pairs = self
            .iter()
            .map(|(k, e)| {
                table
                    .lookup(&k.name())
                    .map(|idx| (idx, e))
                    .ok_or_else(|| Error::InvalidInput(format!("variable {} not in table", k.name())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::from_pairs(pairs))
    }

    pub fn to_poly(&self, table: &Arc<VarTable>) -> Result<LaurentPoly, Error> {
        Ok(LaurentPoly::monomial(table, self.to_monomial(table)?, 1.into()))
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(k, e)| if e == 1 { format!("{}_{}", k.i + 1, k.p) } else { format!("{}_{}^{}", k.i + 1, k.p, e) })
            .collect();
        parts.join(" ")
    }
}

/// Variable table over a set of keys, in canonical key order.
pub fn y_table(keys: impl IntoIterator<Item = YKey>) -> Arc<VarTable> {
    let mut ks: Vec<YKey> = keys.into_iter().collect();
    ks.sort();
    ks.dedup();
    VarTable::new(ks.iter().map(YKey::name)).expect("distinct keys give distinct names")
}

/// Reads a polynomial over a Y table back as a list of monomials.
pub fn poly_terms(p: &LaurentPoly) -> Result<Vec<(YMonomial, i64)>, Error> {
    let names = p.vars().names();
    let keys: Vec<YKey> = names.iter().map(|n| parse_name(n)).collect::<Result<_, _>>()?;
    p.terms()
        .map(|(m, c)| {
            let coeff = i64::try_from(c.clone()).map_err(|_| Error::InvalidInput("coefficient too large".into()))?;
            Ok((YMonomial::from_pairs(m.iter().map(|(k, e)| (keys[k].i, keys[k].p, e))), coeff))
        })
        .collect()
}

fn parse_name(name: &str) -> Result<YKey, Error> {
    let bad = || Error::InvalidInput(format!("not a Y variable: {name}"));
    let rest = name.strip_prefix('Y').ok_or_else(bad)?;
    let (i, p) = rest.split_once('_').ok_or_else(bad)?;
    let i: usize = i.parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(bad());
    }
    Ok(YKey { i: i - 1, p: p.parse().map_err(|_| bad())? })
}

fn parse_int(s: &str) -> Option<i64> {
    let s = s.trim();
    let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    s.parse().ok()
}

fn parse_token(tok: &str) -> Option<(usize, i64, i64)> {
    // forms: i_p, i_p^e, i^e_p (each part possibly braced)
    let (head, tail) = tok.split_once('_')?;
    let (i, mut e) = match head.split_once('^') {
        Some((i, e)) => (i, parse_int(e)?),
        None => (head, 1),
    };
    let p = match tail.split_once('^') {
        Some((p, e2)) => {
            e *= parse_int(e2)?;
            p
        }
        None => tail,
    };
    let i: usize = i.parse().ok()?;
    if i == 0 {
        return None;
    }
    Some((i - 1, parse_int(p)?, e))
}

impl FromStr for YMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        if s.is_empty() {
            return Err(Error::InvalidInput("empty monomial".into()));
        }
        let mut m = Self::one();
        for tok in s.split_whitespace() {
            let (i, p, e) =
                parse_token(tok).ok_or_else(|| Error::InvalidInput(format!("bad monomial token `{tok}`")))?;
            m.mul_var(i, p, e);
        }
        Ok(m)
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for YMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}
