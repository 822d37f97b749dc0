//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients, and the tropical semifield with min as addition.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (k, n) in names.iter().enumerate() {
            if index.insert(n.clone(), k).is_some() {
                return Err(Error::InvalidInput(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Exponent vector stored as sorted `(variable, exponent)` pairs with no
/// zero exponents.
///
/// Ordering is lexicographic on the dense vector, which is compatible with
/// multiplication. Exact division relies on that.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(k: usize) -> Self {
        Monomial(vec![(k as u32, 1)])
    }

    pub fn from_dense(exps: &[i64]) -> Self {
        Monomial(exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (k as u32, e as i32)).collect())
    }

    pub fn from_pairs(mut pairs: Vec<(usize, i64)>) -> Self {
        pairs.sort_unstable_by_key(|p| p.0);
        let mut out: Vec<(u32, i32)> = Vec::with_capacity(pairs.len());
        for (k, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == k as u32 => last.1 += e as i32,
                _ => out.push((k as u32, e as i32)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, k: usize) -> i64 {
        match self.0.binary_search_by_key(&(k as u32), |p| p.0) {
            Ok(pos) => self.0[pos].1 as i64,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|&(k, e)| (k as usize, e as i64))
    }

    pub fn to_dense(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for (k, e) in self.iter() {
            v[k] = e;
        }
        v
    }

    fn combine(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let e = a[i].1 + sign * b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, -1)
    }

    pub fn pow(&self, e: i64) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(k, x)| (k, x * e as i32)).collect())
    }

    pub fn degree_in(&self, vars: impl Fn(usize) -> bool) -> i64 {
        self.iter().filter(|(k, _)| vars(*k)).map(|(_, e)| e).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(ka, ea)), Some(&(kb, eb))) => {
                    if ka < kb {
                        return ea.cmp(&0);
                    } else if kb < ka {
                        return 0.cmp(&eb);
                    } else if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Laurent polynomial over a [`VarTable`] with integer coefficients.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Arc<VarTable>, c: i64) -> Self {
        let mut p = Self::zero(vars);
        if c != 0 {
            p.terms.insert(Monomial::one(), BigInt::from(c));
        }
        p
    }

    pub fn var(vars: &Arc<VarTable>, k: usize) -> Self {
        Self::monomial(vars, Monomial::var(k), BigInt::one())
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn same_table(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(Error::VarTableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (t, k) in &self.terms {
            out.terms.insert(t.mul(m), k * c);
        }
        out
    }

    /// Integer power; negative exponents are allowed only for monomials.
    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e < 0 {
            let (m, c) = self.as_monomial().ok_or(Error::NonMonomialPower)?;
            if !c.abs().is_one() {
                return Err(Error::NonMonomialPower);
            }
            let sign = if c.is_negative() && (-e) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            return Ok(Self::monomial(&self.vars, m.pow(e), sign));
        }
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self, Error> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        if let Some((m, c)) = d.as_monomial() {
            let mut out = Self::zero(&self.vars);
            for (t, k) in &self.terms {
                let (q, r) = k.div_rem(c);
                if !r.is_zero() {
                    return Err(Error::InexactDivision);
                }
                out.terms.insert(t.div(m), q);
            }
            return Ok(out);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Quotient exponents are confined to a box; leaving it proves inexactness.
        let n = self.vars.len();
        let (lo_a, hi_a) = self.exponent_box(n);
        let (lo_d, hi_d) = d.exponent_box(n);
        let (lt_m, lt_c) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let (q, r) = rc.div_rem(&lt_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qm = rm.div(&lt_m);
            for k in 0..n {
                let e = qm.exp(k);
                if e < lo_a[k] - lo_d[k] || e > hi_a[k] - hi_d[k] {
                    return Err(Error::InexactDivision);
                }
            }
            for (t, c) in &d.terms {
                rem.add_term(t.mul(&qm), -(c * &q));
            }
            quot.terms.insert(qm, q);
        }
        Ok(quot)
    }

    /// Componentwise minimum and maximum exponent over all terms.
    pub fn exponent_box(&self, n: usize) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for m in self.terms.keys() {
            let d = m.to_dense(n);
            for k in 0..n {
                lo[k] = lo[k].min(d[k]);
                hi[k] = hi[k].max(d[k]);
            }
        }
        (lo, hi)
    }

    /// Composition: variable `k` is replaced by `images[k]`, all images
    /// living over `target`.
    pub fn substitute(&self, images: &[LaurentPoly], target: &Arc<VarTable>) -> Result<Self, Error> {
        if images.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        for img in images {
            if !(Arc::ptr_eq(&img.vars, target) || *img.vars == **target) {
                return Err(Error::VarTableMismatch);
            }
        }
        let mut cache: HashMap<(usize, i64), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, 1).mul_monomial(&Monomial::one(), c);
            for (k, e) in m.iter() {
                let factor = match cache.get(&(k, e)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = images[k].pow(e)?;
                        cache.insert((k, e), f.clone());
                        f
                    }
                };
                term = &term * &factor;
            }
            for (t, k) in term.terms {
                out.add_term(t, k);
            }
        }
        Ok(out)
    }

    /// Evaluates every variable whose mask entry is set at 1.
    pub fn set_to_one(&self, mask: &[bool]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let kept = Monomial(m.0.iter().copied().filter(|&(k, _)| !mask[k as usize]).collect());
            out.add_term(kept, c.clone());
        }
        out
    }

    /// Image in the tropical semifield: each monomial maps to the weighted sum
    /// of generator exponents, and sums map to componentwise minima.
    pub fn tropical_eval(&self, images: &[TropMonomial]) -> Result<TropMonomial, Error> {
        if self.is_zero() {
            return Err(Error::ZeroTropical);
        }
        if images.len() != self.vars.len() {
            return Err(Error::Dimension("tropical images".into()));
        }
        let g = images.first().map(|t| t.exps.len()).unwrap_or(0);
        let mut acc: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let mut v = vec![0i64; g];
            for (k, e) in m.iter() {
                for (slot, x) in v.iter_mut().zip(&images[k].exps) {
                    *slot += e * x;
                }
            }
            acc = Some(match acc {
                None => v,
                Some(a) => a.iter().zip(&v).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        Ok(TropMonomial { exps: acc.unwrap_or_else(|| vec![0; g]) })
    }

    /// Every coefficient is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Canonical rendering: terms ascending, `*` between factors, `^e` for
    /// exponents other than 1.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (k, e) in m.iter() {
                let name = self.vars.name(k);
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on mismatched tables; the `checked_*` methods report it.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable tables differ")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable tables differ")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable tables differ")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

/// Element of the tropical semifield on a fixed set of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropMonomial {
    pub exps: Vec<i64>,
}

impl TropMonomial {
    pub fn one(n: usize) -> Self {
        TropMonomial { exps: vec![0; n] }
    }

    pub fn generator(n: usize, k: usize) -> Self {
        let mut exps = vec![0; n];
        exps[k] = 1;
        TropMonomial { exps }
    }

    pub fn new(exps: Vec<i64>) -> Self {
        TropMonomial { exps }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TropMonomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn inv(&self) -> Self {
        TropMonomial { exps: self.exps.iter().map(|a| -a).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        TropMonomial { exps: self.exps.iter().map(|a| a * e).collect() }
    }

    /// Tropical addition.
    pub fn oplus(&self, other: &Self) -> Self {
        TropMonomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> Arc<VarTable> {
        VarTable::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn ring_basics() {
        let t = table(&["y1", "y2"]);
        let one = LaurentPoly::one(&t);
        let y1 = LaurentPoly::var(&t, 0);
        let y2 = LaurentPoly::var(&t, 1);
        let p = &(&one + &y1) * &(&one + &y2);
        assert_eq!(p.render(), "1 + y2 + y1 + y1*y2");
        let sq = (&y1 + &y2).pow(2).unwrap();
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&Monomial::from_dense(&[1, 1])), BigInt::from(2));
        let inv = y1.pow(-1).unwrap();
        assert_eq!(&inv * &y1, one);
    }

    #[test]
    fn exact_division() {
        let t = table(&["x1", "x2", "y1"]);
        let one = LaurentPoly::one(&t);
        let x1 = LaurentPoly::var(&t, 0);
        let x2 = LaurentPoly::var(&t, 1);
        let y1 = LaurentPoly::var(&t, 2);
        let a = &(&x1 + &(&y1 * &x2)) + &one;
        let b = &(&x2 * &x1.pow(-1).unwrap()) + &(&y1 * &x1);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        let off = &prod + &one;
        assert_eq!(off.exact_div(&a), Err(Error::InexactDivision));
    }

    #[test]
    fn tropical_min_convention() {
        // A2 with 1 -> 2: F(S1) = 1 + y1 and F(P1) = 1 + y2 + y1 y2.
        let t = table(&["y1", "y2"]);
        let one = LaurentPoly::one(&t);
        let y1 = LaurentPoly::var(&t, 0);
        let y2 = LaurentPoly::var(&t, 1);
        let imgs = vec![TropMonomial::new(vec![-1, 0]), TropMonomial::new(vec![1, -1])];
        assert_eq!((&one + &y1).tropical_eval(&imgs).unwrap().exps, vec![-1, 0]);
        let fp = &(&one + &y2) + &(&y1 * &y2);
        assert_eq!(fp.tropical_eval(&imgs).unwrap().exps, vec![0, -1]);
        assert_eq!(one.tropical_eval(&imgs).unwrap().exps, vec![0, 0]);
        assert_eq!(LaurentPoly::zero(&t).tropical_eval(&imgs), Err(Error::ZeroTropical));
    }

    #[test]
    fn substitution() {
        let t = table(&["y1"]);
        let target = table(&["a", "b"]);
        let f = &LaurentPoly::one(&t) + &LaurentPoly::var(&t, 0);
        let img = LaurentPoly::monomial(&target, Monomial::from_dense(&[-1, 1]), BigInt::one());
        let out = f.substitute(std::slice::from_ref(&img), &target).unwrap();
        assert_eq!(out, &LaurentPoly::one(&target) + &img);
        let id = f.substitute(&[LaurentPoly::var(&t, 0)], &t).unwrap();
        assert_eq!(id, f);
        let g = LaurentPoly::var(&t, 0).pow(-1).unwrap();
        let non_mono = &img + &LaurentPoly::one(&target);
        assert_eq!(g.substitute(&[non_mono], &target), Err(Error::NonMonomialPower));
    }

    #[test]
    fn mismatch_detected() {
        let a = table(&["x"]);
        let b = table(&["z"]);
        assert_eq!(LaurentPoly::var(&a, 0).checked_add(&LaurentPoly::var(&b, 0)), Err(Error::VarTableMismatch));
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let a = Monomial::from_dense(&[1, -2, 0]);
        let b = Monomial::from_dense(&[1, 0, -5]);
        let c = Monomial::from_dense(&[-3, 4, 1]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        assert!(Monomial::one() < Monomial::var(2));
        assert!(Monomial::var(2) < Monomial::var(0));
    }
}
