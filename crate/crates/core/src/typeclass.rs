//! Closed-form highest l-weight monomials for types A and D, and the
//! predicates describing which monomials occur at all.
//!
//! Vertices are 1-based here, like the root labels `[i,j]` and `{i,±j}`.
//! `Y_{k,p}` with `k` outside `1..=n` is 1. A virtual vertex 0 carries
//! `xi(0) = xi(1) - 1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::grid::HeightFunction;
use crate::root::Family;
use crate::ymono::YMonomial;
use crate::Error;

/// Positive roots of `A_n` as segments, plus the negative simples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ARoot {
    /// `-alpha_j`
    Neg(usize),
    /// `alpha_i + ... + alpha_j`
    Seg(usize, usize),
}

/// Positive roots of `D_n` as `{i,-j} = e_i - e_j` and `{i,j} = e_i + e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DRoot {
    Neg(usize),
    Minus(usize, usize),
    Plus(usize, usize),
}

impl fmt::Display for ARoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ARoot::Neg(j) => write!(f, "[-{j}]"),
            ARoot::Seg(i, j) if i == j => write!(f, "[{i}]"),
            ARoot::Seg(i, j) => write!(f, "[{i},{j}]"),
        }
    }
}

impl fmt::Display for DRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DRoot::Neg(j) => write!(f, "-a{j}"),
            DRoot::Minus(i, j) => write!(f, "{{{i},-{j}}}"),
            DRoot::Plus(i, j) => write!(f, "{{{i},{j}}}"),
        }
    }
}

impl ARoot {
    pub fn all(n: usize) -> Vec<ARoot> {
        let mut v: Vec<ARoot> = (1..=n).map(ARoot::Neg).collect();
        for i in 1..=n {
            for j in i..=n {
                v.push(ARoot::Seg(i, j));
            }
        }
        v
    }

    /// Dimension vector (0-based coordinates); `None` for negative simples.
    pub fn dims(&self, n: usize) -> Option<Vec<i64>> {
        match *self {
            ARoot::Neg(_) => None,
            ARoot::Seg(i, j) => Some((1..=n).map(|k| i64::from(i <= k && k <= j)).collect()),
        }
    }
}

impl DRoot {
    pub fn all(n: usize) -> Vec<DRoot> {
        let mut v: Vec<DRoot> = (1..=n).map(DRoot::Neg).collect();
        for i in 1..n {
            for j in i + 1..=n {
                v.push(DRoot::Minus(i, j));
                v.push(DRoot::Plus(i, j));
            }
        }
        v
    }

    pub fn dims(&self, n: usize) -> Option<Vec<i64>> {
        let mut d = vec![0i64; n];
        match *self {
            DRoot::Neg(_) => return None,
            DRoot::Minus(i, j) => (i..j).for_each(|k| d[k - 1] = 1),
            DRoot::Plus(i, j) if j == n => {
                (i..=n - 2).for_each(|k| d[k - 1] = 1);
                d[n - 1] = 1;
            }
            DRoot::Plus(i, j) => {
                (i..j).for_each(|k| d[k - 1] = 1);
                (j..=n - 2).for_each(|k| d[k - 1] = 2);
                d[n - 2] = 1;
                d[n - 1] = 1;
            }
        }
        Some(d)
    }
}

/// `xi` with 1-based access, the virtual vertex 0, and the helpers shared by
/// every case table.
struct Ctx<'a> {
    h: &'a HeightFunction,
    n: usize,
}

impl Ctx<'_> {
    fn x(&self, k: usize) -> Option<i64> {
        match k {
            0 => Some(self.h.at(0) - 1),
            k if k <= self.n => Some(self.h.at(k - 1)),
            _ => None,
        }
    }

    fn xv(&self, k: usize) -> i64 {
        self.x(k).expect("vertex in range")
    }

    fn top(&self, k: usize) -> YMonomial {
        if (1..=self.n).contains(&k) {
            YMonomial::var(k - 1, self.xv(k))
        } else {
            YMonomial::one()
        }
    }

    fn bot(&self, k: usize) -> YMonomial {
        if (1..=self.n).contains(&k) {
            YMonomial::var(k - 1, self.xv(k) - 2)
        } else {
            YMonomial::one()
        }
    }

    /// `d_j`: whether `j` is the first `k >= j` with `xi(k-1) = xi(k+1)`
    /// (falling back to `n`).
    fn d(&self, j: usize) -> i64 {
        let first = (j..=self.n)
            .find(|&k| k >= 1 && matches!((self.x(k - 1), self.x(k + 1)), (Some(a), Some(b)) if a == b))
            .unwrap_or(self.n);
        i64::from(first == j)
    }

    fn neighbors(&self, p: usize) -> Vec<usize> {
        self.h.diagram().neighbors(p - 1).iter().map(|&q| q + 1).collect()
    }

    fn is_source(&self, p: usize) -> bool {
        self.neighbors(p).iter().all(|&q| self.xv(q) < self.xv(p))
    }

    fn is_sink(&self, p: usize) -> bool {
        self.neighbors(p).iter().all(|&q| self.xv(q) > self.xv(p))
    }

    /// Product of `Y_{p,a_p}` over sources and sinks `p` in `lo..=hi`, where
    /// sources contribute `Y_{p,xi(p)}` and sinks `Y_{p,xi(p)-2}`.
    fn y_range(&self, lo: usize, hi: usize) -> YMonomial {
        let mut m = YMonomial::one();
        for p in lo.max(1)..=hi.min(self.n) {
            if self.is_source(p) {
                m = m.mul(&self.top(p));
            } else if self.is_sink(p) {
                m = m.mul(&self.bot(p));
            }
        }
        m
    }

    /// Open interval `(i,j)`.
    fn y_open(&self, i: usize, j: usize) -> YMonomial {
        if j <= i + 1 {
            YMonomial::one()
        } else {
            self.y_range(i + 1, j - 1)
        }
    }

    /// Factor depending only on the left end `i` of a segment.
    fn left(&self, i: usize) -> YMonomial {
        if self.xv(i) > self.xv(i + 1) {
            self.top(i - 1).pow(1 - self.d(i))
        } else {
            self.top(i - 1).pow(self.d(i)).mul(&self.bot(i))
        }
    }

    fn delta(&self, a: usize, b: usize, shift: i64) -> i64 {
        i64::from(self.xv(a) == self.xv(b) + shift)
    }
}

/// The six shapes of `xi` around the fork `n-2; n-1, n` of `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fork {
    /// `xi(n-2) > xi(n-1) = xi(n)`
    DownEq,
    /// `xi(n-2) < xi(n-1) = xi(n)`
    UpEq,
    /// `xi(n-3) = xi(n) > xi(n-2) > xi(n-1)`
    NHighFromBelow,
    /// `xi(n) > xi(n-2) > xi(n-1) = xi(n-3)`
    NHighFromAbove,
    /// `xi(n-3) = xi(n-1) > xi(n-2) > xi(n)`
    N1HighFromBelow,
    /// `xi(n-1) > xi(n-2) > xi(n-3) = xi(n)`
    N1HighFromAbove,
}

fn fork(c: &Ctx) -> Result<Fork, Error> {
    let n = c.n;
    let (a, b, p, q) = (c.xv(n - 3), c.xv(n - 2), c.xv(n - 1), c.xv(n));
    let f = if p == q && b > p {
        Fork::DownEq
    } else if p == q && b < p {
        Fork::UpEq
    } else if a == q && q > b && b > p {
        Fork::NHighFromBelow
    } else if q > b && b > p && p == a {
        Fork::NHighFromAbove
    } else if a == p && p > b && b > q {
        Fork::N1HighFromBelow
    } else if p > b && b > a && a == q {
        Fork::N1HighFromAbove
    } else {
        return Err(Error::Inconsistent(format!("height function {} matches no fork case", c.h.render())));
    };
    Ok(f)
}

fn prod(ms: &[YMonomial]) -> YMonomial {
    ms.iter().fold(YMonomial::one(), |a, b| a.mul(b))
}

fn check_family(xi: &HeightFunction, fam: Family) -> Result<usize, Error> {
    let d = xi.diagram();
    if d.family() != fam {
        return Err(Error::InvalidInput(format!("expected type {fam}, got {}", d.name())));
    }
    Ok(d.rank())
}

/// Closed form of the highest l-weight monomial attached to a type-A root.
pub fn phi_closed_type_a(root: ARoot, xi: &HeightFunction) -> Result<YMonomial, Error> {
    let n = check_family(xi, Family::A)?;
    let c = Ctx { h: xi, n };
    match root {
        ARoot::Neg(j) if (1..=n).contains(&j) => Ok(c.top(j)),
        ARoot::Seg(i, j) if 1 <= i && i <= j && j <= n => Ok(type_a_segment(&c, i, j)),
        _ => Err(Error::InvalidInput(format!("{root} is not a root of A{n}"))),
    }
}

fn type_a_simple(c: &Ctx, j: usize) -> YMonomial {
    if c.xv(j - 1) > c.xv(j) {
        prod(&[c.top(j - 1), c.bot(j), c.top(j + 1).pow(c.d(j))])
    } else {
        c.top(j + 1).pow(1 - c.d(j)).mul(&c.bot(j))
    }
}

fn type_a_segment(c: &Ctx, i: usize, j: usize) -> YMonomial {
    if i == j {
        return type_a_simple(c, j);
    }
    let right =
        if c.xv(j - 1) > c.xv(j) { c.bot(j).mul(&c.top(j + 1).pow(c.d(j))) } else { c.top(j + 1).pow(1 - c.d(j)) };
    prod(&[c.left(i), c.y_open(i, j), right])
}

/// Closed form for a type-D root. Inputs that fall outside every tabulated
/// case are reported as errors.
pub fn phi_closed_type_d(root: DRoot, xi: &HeightFunction) -> Result<YMonomial, Error> {
    let n = check_family(xi, Family::D)?;
    let c = Ctx { h: xi, n };
    let bad = || Error::InvalidInput(format!("{root} is not a root of D{n}"));
    match root {
        DRoot::Neg(j) if (1..=n).contains(&j) => Ok(c.top(j)),
        DRoot::Minus(i, j) if 1 <= i && i < j && j <= n => d_minus(&c, i, j),
        DRoot::Plus(i, j) if 1 <= i && i < j && j <= n => d_plus(&c, i, j),
        _ => Err(bad()),
    }
}

/// Rows of the tables whose literal reading at the fork vertex `n-2` does
/// not determine the monomial.
fn unmatched(c: &Ctx, r: DRoot) -> Error {
    Error::Unmatched(format!("{r} at xi = {}", c.h.render()))
}

fn d_minus(c: &Ctx, i: usize, j: usize) -> Result<YMonomial, Error> {
    let n = c.n;
    if j == i + 1 && i <= n - 3 {
        return Ok(type_a_simple(c, i));
    }
    if j <= n - 2 {
        return Ok(type_a_segment(c, i, j - 1));
    }
    if (i, j) == (n - 2, n - 1) {
        return Ok(prod(&[
            c.top(n - 3).pow(c.delta(n - 3, n - 2, 1)),
            c.bot(n - 2),
            c.top(n - 1).pow(c.delta(n - 1, n - 2, 1)),
            c.top(n).pow(c.delta(n, n - 2, 1)),
        ]));
    }
    if (i, j) == (n - 1, n) {
        return Ok(c.top(n - 2).pow(c.delta(n - 2, n - 1, 1)).mul(&c.bot(n - 1)));
    }
    if i == n - 2 {
        return Err(unmatched(c, DRoot::Minus(i, j)));
    }
    let f = fork(c)?;
    let right = if j == n - 1 {
        match f {
            Fork::DownEq => c.y_open(i, n - 2).mul(&c.bot(n - 2).pow(1 - c.d(n - 2))),
            Fork::UpEq => c.y_open(i, n).mul(&c.top(n)),
            Fork::NHighFromBelow => prod(&[c.y_open(i, n - 2), c.bot(n - 2), c.top(n)]),
            Fork::NHighFromAbove => c.y_open(i, n - 1).mul(&c.top(n)),
            Fork::N1HighFromBelow => prod(&[c.y_open(i, n - 2), c.bot(n - 2), c.top(n - 1)]),
            Fork::N1HighFromAbove => c.y_open(i, n - 2).mul(&c.top(n - 1)),
        }
    } else {
        match f {
            Fork::DownEq => c.y_open(i, n - 1).mul(&c.bot(n - 1)),
            Fork::UpEq => c.y_open(i, n - 1).mul(&c.top(n)),
            Fork::NHighFromBelow => prod(&[c.y_open(i, n - 1), c.bot(n - 1), c.top(n)]),
            Fork::NHighFromAbove => prod(&[c.y_open(i, n - 2), c.top(n - 2), c.bot(n - 1), c.top(n)]),
            Fork::N1HighFromBelow => c.y_open(i, n - 2).mul(&c.bot(n - 2)),
            Fork::N1HighFromAbove => c.y_open(i, n - 2),
        }
    };
    Ok(c.left(i).mul(&right))
}

fn d_plus(c: &Ctx, i: usize, j: usize) -> Result<YMonomial, Error> {
    let n = c.n;
    if (i, j) == (n - 1, n) {
        return Ok(c.top(n - 2).pow(c.delta(n - 2, n, 1)).mul(&c.bot(n)));
    }
    let f = fork(c)?;
    let split = !matches!(f, Fork::DownEq | Fork::UpEq);
    if i == n - 2 || (j == n - 2 && split) {
        return Err(unmatched(c, DRoot::Plus(i, j)));
    }
    let right = if j == n {
        match f {
            Fork::DownEq => c.y_open(i, n - 1).mul(&c.bot(n)),
            Fork::UpEq => c.y_open(i, n - 1).mul(&c.top(n - 1)),
            Fork::NHighFromBelow => c.y_open(i, n - 2).mul(&c.bot(n - 2)),
            Fork::NHighFromAbove => c.y_open(i, n - 2),
            Fork::N1HighFromBelow => prod(&[c.y_open(i, n - 2), c.top(n - 1), c.bot(n)]),
            Fork::N1HighFromAbove => prod(&[c.y_open(i, n - 2), c.top(n - 2), c.top(n - 1), c.bot(n)]),
        }
    } else if j == n - 1 {
        match f {
            Fork::DownEq => prod(&[c.y_open(i, n), c.top(n - 2), c.bot(n)]),
            Fork::UpEq => c.y_open(i, n - 2).mul(&c.bot(n - 2).pow(c.d(n - 2))),
            Fork::NHighFromBelow => c.y_open(i, n - 2).mul(&c.bot(n - 1)),
            Fork::NHighFromAbove => prod(&[c.y_open(i, n - 2), c.top(n - 2), c.bot(n - 1)]),
            Fork::N1HighFromBelow => c.y_open(i, n - 2).mul(&c.bot(n)),
            Fork::N1HighFromAbove => prod(&[c.y_open(i, n - 2), c.top(n - 2), c.bot(n)]),
        }
    } else {
        // Y(i,n] and the j-dependent tail; Y_{n-2} depends on the fork.
        let base = c.y_range(i + 1, n);
        let j_down = c.xv(j - 1) > c.xv(j);
        let tail_j = |hi: usize| {
            if j_down {
                c.y_range(j, hi).mul(&c.top(j - 1))
            } else {
                c.y_range(j + 1, hi).mul(&c.bot(j).pow(1 - c.d(j)))
            }
        };
        if !split {
            base.mul(&tail_j(n - 2))
        } else {
            let mid = if c.xv(n - 3) > c.xv(n - 2) { c.bot(n - 2) } else { c.top(n - 2) };
            prod(&[base, mid, tail_j(n - 3)])
        }
    };
    Ok(c.left(i).mul(&right))
}

/// Factors of `m` as `(i, a, e)` with 1-based `i`, sorted by `i`.
fn factors(m: &YMonomial) -> Vec<(usize, i64, i64)> {
    m.iter().map(|(k, e)| (k.i + 1, k.p, e)).collect()
}

/// Zigzag condition on a chain `(i_j, a_j)`: slopes alternate in sign and
/// `|a_j - a_{j-1}| = i_j - i_{j-1} + 2`.
fn zigzag(chain: &[(usize, i64)]) -> bool {
    let steps_ok = chain.windows(2).all(|w| w[0].0 < w[1].0 && (w[1].1 - w[0].1).abs() == (w[1].0 - w[0].0) as i64 + 2);
    let alt_ok = chain.windows(3).all(|w| (w[1].1 - w[0].1) * (w[2].1 - w[1].1) < 0);
    steps_ok && alt_ok
}

/// The type-A classification: distinct vertices, each with exponent one,
/// whose spectral parameters zigzag.
pub fn is_hl_type_a(m: &YMonomial) -> bool {
    let fs = factors(m);
    if fs.is_empty() || fs.iter().any(|&(_, _, e)| e != 1) {
        return false;
    }
    let chain: Vec<(usize, i64)> = fs.iter().map(|&(i, a, _)| (i, a)).collect();
    zigzag(&chain)
}

/// Every monomial on `A_n` accepted by [`is_hl_type_a`] whose spectral
/// parameters all lie in `lo..=hi`.
pub fn type_a_chains(n: usize, lo: i64, hi: i64) -> BTreeSet<YMonomial> {
    fn extend(n: usize, lo: i64, hi: i64, ch: &mut Vec<(usize, i64)>, out: &mut BTreeSet<YMonomial>) {
        if !zigzag(ch) {
            return;
        }
        out.insert(YMonomial::from_pairs(ch.iter().map(|&(i, a)| (i - 1, a, 1))));
        let (i, a) = *ch.last().expect("chain is non-empty");
        for j in i + 1..=n {
            for s in [-1, 1] {
                let b = a + s * ((j - i) as i64 + 2);
                if (lo..=hi).contains(&b) {
                    ch.push((j, b));
                    extend(n, lo, hi, ch, out);
                    ch.pop();
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for a in lo..=hi {
            extend(n, lo, hi, &mut vec![(i, a)], &mut out);
        }
    }
    out
}

/// The type-D classification for `D_n`.
///
/// A monomial qualifies if it is a zigzag chain on `1..=n-2` (exponents 1
/// then 2) closed off by one of the allowed tails at the fork, optionally
/// with one extra factor inserted after the last exponent-one vertex.
pub fn is_hl_type_d(m: &YMonomial, n: usize) -> bool {
    let fs = factors(m);
    if fs.is_empty() || n < 4 || fs.iter().any(|&(i, _, e)| i > n || !(1..=2).contains(&e)) {
        return false;
    }
    let body: Vec<(usize, i64, i64)> = fs.iter().copied().filter(|&(i, _, _)| i <= n - 2).collect();
    let fork_n1: Vec<(i64, i64)> = fs.iter().filter(|f| f.0 == n - 1).map(|f| (f.1, f.2)).collect();
    let fork_n: Vec<(i64, i64)> = fs.iter().filter(|f| f.0 == n).map(|f| (f.1, f.2)).collect();
    if fork_n1.len() > 1 || fork_n.len() > 1 || fork_n1.iter().chain(&fork_n).any(|&(_, e)| e != 1) {
        return false;
    }
    match (fork_n1.first(), fork_n.first()) {
        (None, None) => form_plain(&body),
        (Some(&(a, _)), None) | (None, Some(&(a, _))) => form_one_leg(&body, a, n),
        (Some(&(a, _)), Some(&(b, _))) if a == b => form_both_legs(&body, a, n),
        (Some(&(a, _)), Some(&(b, _))) => form_split(&body, a, b, n),
    }
}

/// [`is_hl_type_d`] together with the zigzag chains that run up one leg of
/// the fork and back down the other: `Y_{n-1,a} Y_{n,a±4}` with no
/// `Y_{n-2}` factor, preceded by an ordinary chain on `1..=n-2`. Such
/// monomials do occur as highest weights (for example `Y_{3,-2} Y_{4,2}` in
/// `D_4`) but are rejected by [`is_hl_type_d`].
pub fn is_hl_type_d_completed(m: &YMonomial, n: usize) -> bool {
    is_hl_type_d(m, n) || leg_to_leg(m, n)
}

fn leg_to_leg(m: &YMonomial, n: usize) -> bool {
    let fs = factors(m);
    if n < 4 || fs.iter().any(|&(_, _, e)| e != 1) {
        return false;
    }
    let body: Vec<(usize, i64)> = fs.iter().filter(|f| f.0 < n - 2).map(|f| (f.0, f.1)).collect();
    let a = fs.iter().find(|f| f.0 == n - 1).map(|f| f.1);
    let b = fs.iter().find(|f| f.0 == n).map(|f| f.1);
    let (Some(a), Some(b)) = (a, b) else { return false };
    if fs.iter().any(|f| f.0 == n - 2) || (a - b).abs() != 4 {
        return false;
    }
    // Unfold the fork into a path: first leg at position n-1, second at n+1.
    [(a, b), (b, a)].iter().any(|&(x, y)| {
        let mut ch = body.clone();
        ch.push((n - 1, x));
        ch.push((n + 1, y));
        zigzag(&ch)
    })
}

fn all_simple(body: &[(usize, i64, i64)]) -> Option<Vec<(usize, i64)>> {
    body.iter().map(|&(i, a, e)| (e == 1).then_some((i, a))).collect()
}

/// No factor at the fork: an ordinary type-A chain.
fn form_plain(body: &[(usize, i64, i64)]) -> bool {
    all_simple(body).is_some_and(|ch| !ch.is_empty() && zigzag(&ch))
}

/// The chain together with the endpoint `(i_{k+1}, a_{k+1})`, whose step
/// from the last body vertex must be `gap`.
fn chain_closes(ch: &[(usize, i64)], end: (usize, i64), gap: i64) -> bool {
    let Some(&last) = ch.last() else { return true };
    if (end.1 - last.1).abs() != gap {
        return false;
    }
    if !zigzag(ch) {
        return false;
    }
    ch.len() < 2 || {
        let prev = ch[ch.len() - 2];
        (last.1 - prev.1) * (end.1 - last.1) < 0
    }
}

fn form_one_leg(body: &[(usize, i64, i64)], a: i64, n: usize) -> bool {
    all_simple(body).is_some_and(|ch| {
        let gap = ch.last().map_or(0, |l| (n - l.0) as i64 + 1);
        chain_closes(&ch, (n - 1, a), gap)
    })
}

/// `... Y_{n-1,a} Y_{n,a}`: chain of exponents 1 then 2, optionally with one
/// extra exponent-one factor between the two parts.
fn form_both_legs(body: &[(usize, i64, i64)], a: i64, n: usize) -> bool {
    squared_chain(body, (n - 1, a), n as i64 + 1, n - 1)
}

/// `... Y_{n-2,c} Y_{n-1,c±3} Y_{n,c∓1}` or with `n-1` and `n` swapped.
fn form_split(body: &[(usize, i64, i64)], a: i64, b: i64, n: usize) -> bool {
    let Some(pos) = body.iter().position(|f| f.0 == n - 2) else { return false };
    let (_, c, e) = body[pos];
    if e != 1 {
        return false;
    }
    let legs_ok = (a - c == 3 && b - c == -1)
        || (a - c == -3 && b - c == 1)
        || (b - c == 3 && a - c == -1)
        || (b - c == -3 && a - c == 1);
    if !legs_ok {
        return false;
    }
    let rest: Vec<(usize, i64, i64)> = body.iter().copied().filter(|f| f.0 != n - 2).collect();
    squared_chain(&rest, (n - 2, c), n as i64, n - 2)
}

/// Checks a body of the form `chain(exp 1) chain(exp 2) [+ one extra]`
/// closing at `end` with last step `|a_{k+1} - a_k| = top - i_k`. The extra
/// vertex sits strictly between the last exponent-one vertex and the next
/// chain vertex (`cap` if there is none).
fn squared_chain(body: &[(usize, i64, i64)], end: (usize, i64), top: i64, cap: usize) -> bool {
    let gap = |ch: &[(usize, i64)]| ch.last().map_or(0, |l| top - l.0 as i64);
    // Without the extra factor the sequence of exponents must be 1...1 2...2.
    let well_ordered = |b: &[(usize, i64, i64)]| b.windows(2).all(|w| w[0].2 <= w[1].2);
    let chain_of = |b: &[(usize, i64, i64)]| b.iter().map(|&(i, a, _)| (i, a)).collect::<Vec<_>>();
    if well_ordered(body) && (body.is_empty() || body[0].2 == 1) {
        let ch = chain_of(body);
        if chain_closes(&ch, end, gap(&ch)) {
            return true;
        }
    }
    // Try each exponent-one factor as the extra one.
    for (x, &(ix, ax, ex)) in body.iter().enumerate() {
        if ex != 1 {
            continue;
        }
        let rest: Vec<(usize, i64, i64)> = body.iter().enumerate().filter(|&(k, _)| k != x).map(|(_, f)| *f).collect();
        if rest.is_empty() || rest[0].2 != 1 || !well_ordered(&rest) {
            continue;
        }
        let ch = chain_of(&rest);
        if !chain_closes(&ch, end, gap(&ch)) {
            continue;
        }
        let ell = rest.iter().rposition(|f| f.2 == 1).expect("first factor has exponent one");
        let (il, al) = (rest[ell].0, rest[ell].1);
        let (inext, anext) = rest.get(ell + 1).map_or((cap, end.1), |f| (f.0, f.1));
        if il < ix && ix < inext && (ax - al).abs() == (ix - il) as i64 && (anext - ax).abs() == (inext - ix) as i64 + 2
        {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::ARNode;
    use crate::hl::hl_table;
    use crate::root::DynkinDiagram;

    fn xi(f: Family, v: &[i64]) -> HeightFunction {
        let d = DynkinDiagram::new(f, v.len()).unwrap();
        HeightFunction::new(&d, v.to_vec()).unwrap()
    }

    #[test]
    fn a2_examples() {
        let h = xi(Family::A, &[0, -1]);
        assert_eq!(phi_closed_type_a(ARoot::Neg(2), &h).unwrap().render(), "2_-1");
        assert_eq!(phi_closed_type_a(ARoot::Seg(2, 2), &h).unwrap().render(), "1_0 2_-3");
        assert!(!is_hl_type_a(&"1_0 2_-1".parse().unwrap()));
        assert!(is_hl_type_a(&"1_0 2_-3".parse().unwrap()));
    }

    #[test]
    fn d4_fork_formulas() {
        let h = xi(Family::D, &[4, 3, 2, 2]);
        // {n-1,-n}: xi(2) = xi(3) + 1, so Y_{2,3} appears.
        assert_eq!(phi_closed_type_d(DRoot::Minus(3, 4), &h).unwrap().render(), "2_3 3_0");
    }

    fn hw_of_label(t: &crate::hl::HLTable, dims: Option<Vec<i64>>, neg: usize) -> YMonomial {
        match dims {
            None => t.hw(ARNode::Shifted(neg - 1)).clone(),
            Some(dv) => t.hw(ARNode::Module(t.ar.index_of_root(&dv).unwrap())).clone(),
        }
    }

    #[test]
    fn type_a_closed_form_matches_algorithm() {
        for n in 1..=6 {
            let d = DynkinDiagram::new(Family::A, n).unwrap();
            for h in HeightFunction::all_orientations(&d, 0) {
                let t = hl_table(&h).unwrap();
                for r in ARoot::all(n) {
                    let neg = if let ARoot::Neg(j) = r { j } else { 0 };
                    let expect = hw_of_label(&t, r.dims(n), neg);
                    assert_eq!(phi_closed_type_a(r, &h).unwrap(), expect, "{r} at {}", h.render());
                    assert!(is_hl_type_a(&expect));
                }
            }
        }
    }

    #[test]
    fn type_a_window_is_exactly_the_predicate() {
        for n in 2..=3 {
            let d = DynkinDiagram::new(Family::A, n).unwrap();
            let (lo, hi) = (-2 * n as i64 - 2, 0);
            let mut got = BTreeSet::new();
            for h in HeightFunction::all_orientations(&d, 0) {
                for s in -(4 * n as i64 + 6)..=(4 * n as i64 + 6) {
                    for m in hl_table(&h.shifted(s)).unwrap().monomials() {
                        if m.iter().all(|(k, _)| (lo..=hi).contains(&k.p)) {
                            got.insert(m);
                        }
                    }
                }
            }
            assert_eq!(got, type_a_chains(n, lo, hi));
        }
    }

    #[test]
    fn type_d_closed_forms_agree_or_report() {
        for n in 4..=5 {
            let d = DynkinDiagram::new(Family::D, n).unwrap();
            let mut unmatched = 0;
            for h in HeightFunction::all_orientations(&d, 0) {
                let t = hl_table(&h).unwrap();
                for r in DRoot::all(n) {
                    let neg = if let DRoot::Neg(j) = r { j } else { 0 };
                    match phi_closed_type_d(r, &h) {
                        Ok(m) => assert_eq!(m, hw_of_label(&t, r.dims(n), neg), "{r} at {}", h.render()),
                        Err(Error::Unmatched(_)) => unmatched += 1,
                        Err(e) => panic!("{e}"),
                    }
                }
                for rec in &t.records {
                    assert!(is_hl_type_d_completed(&rec.hw, n), "{}", rec.hw);
                }
            }
            assert!(unmatched > 0);
        }
    }

    #[test]
    fn d4_ground_truth_table_by_closed_form() {
        let h = xi(Family::D, &[4, 3, 2, 2]);
        let t = hl_table(&h).unwrap();
        for r in DRoot::all(4) {
            let neg = if let DRoot::Neg(j) = r { j } else { 0 };
            if let Ok(m) = phi_closed_type_d(r, &h) {
                assert_eq!(m, hw_of_label(&t, r.dims(4), neg));
            }
        }
    }

    #[test]
    fn literal_forms_miss_leg_to_leg_chains() {
        let m: YMonomial = "3_-2 4_2".parse().unwrap();
        assert!(!is_hl_type_d(&m, 4));
        assert!(is_hl_type_d_completed(&m, 4));
        assert!(is_hl_type_d(&"1_4 2_3 3_0 4_0".parse().unwrap(), 4));
        assert!(!is_hl_type_d(&"1_4 3_1".parse().unwrap(), 4));
    }
}
