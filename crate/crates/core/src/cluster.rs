//! Seeds, Fomin-Zelevinsky mutation, principal coefficients, g-vectors and
//! F-polynomials.
//!
//! Exchange matrices use the convention `b_ij = #(j -> i) - #(i -> j)`: rows
//! are all variables, columns the mutable ones. Two mutation engines live
//! here. [`Seed`] mutates actual Laurent polynomials and is the reference
//! path. [`GSeed`] only tracks g-vectors and the coefficient matrix, which is
//! enough to enumerate a finite-type cluster complex, and computes each new
//! F-polynomial once by the separation recurrence.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::grid::{mutate_b, HeightFunction};
use crate::laurent::{LaurentPoly, Monomial, TropMonomial, VarTable};
use crate::{Error, DEFAULT_SEED_CAP};

/// Seed whose variables are Laurent polynomials in the initial variables.
#[derive(Clone, Debug)]
pub struct Seed {
    pub b: Vec<Vec<i64>>,
    /// Row of each mutable column.
    pub col_rows: Vec<usize>,
    pub vars: Vec<LaurentPoly>,
    /// Mutation path from the initial seed, as column indices.
    pub path: Vec<usize>,
}

impl Seed {
    /// Initial seed over fresh variables named by `names` (one per row).
    pub fn initial(b: Vec<Vec<i64>>, col_rows: Vec<usize>, names: Vec<String>) -> Result<Self, Error> {
        if names.len() != b.len() {
            return Err(Error::Dimension("one variable name per row is needed".into()));
        }
        let table = VarTable::new(names)?;
        let vars = (0..b.len()).map(|k| LaurentPoly::var(&table, k)).collect();
        Ok(Seed { b, col_rows, vars, path: Vec::new() })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.vars[0].vars()
    }

    pub fn num_mutable(&self) -> usize {
        self.col_rows.len()
    }

    /// Exchange relation at column `k`; checks the Laurent phenomenon for
    /// the new variable.
    pub fn mutate(&self, k: usize) -> Result<Seed, Error> {
        if k >= self.col_rows.len() {
            return Err(Error::InvalidInput(format!("column {k} is not mutable")));
        }
        let table = self.table().clone();
        let r = self.col_rows[k];
        let mut pos = LaurentPoly::one(&table);
        let mut neg = LaurentPoly::one(&table);
        for (i, row) in self.b.iter().enumerate() {
            let e = row[k];
            if e > 0 {
                pos = pos.checked_mul(&self.vars[i].pow(e)?)?;
            } else if e < 0 {
                neg = neg.checked_mul(&self.vars[i].pow(-e)?)?;
            }
        }
        let new = pos.checked_add(&neg)?.exact_div(&self.vars[r])?;
        let mutable: HashSet<usize> = self.col_rows.iter().copied().collect();
        for (m, _) in new.terms() {
            if m.iter().any(|(v, e)| e < 0 && !mutable.contains(&v)) {
                return Err(Error::Inconsistent("frozen variable in a denominator".into()));
            }
        }
        let mut vars = self.vars.clone();
        vars[r] = new;
        let mut path = self.path.clone();
        path.push(k);
        Ok(Seed { b: mutate_b(&self.b, &self.col_rows, k)?, col_rows: self.col_rows.clone(), vars, path })
    }
}

/// Exchange matrix of the Dynkin quiver with `i -> j` iff `xi(i) = xi(j) + 1`.
pub fn dynkin_b(xi: &HeightFunction) -> Vec<Vec<i64>> {
    let d = xi.diagram();
    let n = d.rank();
    let mut b = vec![vec![0i64; n]; n];
    for &(u, v) in d.edges() {
        let (s, t) = if xi.arrow(u, v) { (u, v) } else { (v, u) };
        b[t][s] += 1;
        b[s][t] -= 1;
    }
    b
}

/// `(B ; I)` with variables `x1..xn, y1..yn`.
pub fn principal_seed(b: &[Vec<i64>]) -> Result<Seed, Error> {
    let n = b.len();
    let mut full: Vec<Vec<i64>> = b.to_vec();
    for j in 0..n {
        let mut row = vec![0; n];
        row[j] = 1;
        full.push(row);
    }
    let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect();
    Seed::initial(full, (0..n).collect(), names)
}

/// g-vector, F-polynomial and denominator vector of a cluster variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterVarData {
    pub g: Vec<i64>,
    #[serde(serialize_with = "ser_poly")]
    pub f: LaurentPoly,
    pub denom: Vec<i64>,
}

fn ser_poly<S: serde::Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.render())
}

/// Table `y1..yn` for F-polynomials.
pub fn y_vars(n: usize) -> Arc<VarTable> {
    VarTable::new((1..=n).map(|i| format!("y{i}"))).expect("distinct names")
}

impl ClusterVarData {
    /// Data of the initial variable `x_k`.
    pub fn initial(n: usize, k: usize) -> Self {
        let mut g = vec![0; n];
        g[k] = 1;
        let mut denom = vec![0; n];
        denom[k] = -1;
        ClusterVarData { g, f: LaurentPoly::one(&y_vars(n)), denom }
    }

    fn from_g_f(g: Vec<i64>, f: LaurentPoly, b0: &[Vec<i64>]) -> Self {
        let n = g.len();
        let mut denom = vec![i64::MIN; n];
        for (m, _) in f.terms() {
            let e = m.to_dense(n);
            for (i, slot) in denom.iter_mut().enumerate() {
                let x = g[i] + (0..n).map(|j| b0[i][j] * e[j]).sum::<i64>();
                *slot = (*slot).max(-x);
            }
        }
        ClusterVarData { g, f, denom }
    }

    /// `x^g F(y-hat)` with `y-hat_j = y_j prod_i x_i^{b_ij}` over the
    /// principal table `x1..xn, y1..yn`.
    pub fn laurent(&self, b0: &[Vec<i64>], table: &Arc<VarTable>) -> Result<LaurentPoly, Error> {
        let n = self.g.len();
        let images: Vec<LaurentPoly> = (0..n)
            .map(|j| {
                let pairs = (0..n).map(|i| (i, b0[i][j])).chain(std::iter::once((n + j, 1))).collect();
                LaurentPoly::monomial(table, Monomial::from_pairs(pairs), BigInt::from(1))
            })
            .collect();
        let fy = self.f.substitute(&images, table)?;
        Ok(fy.mul_monomial(&Monomial::from_dense(&self.g), &BigInt::from(1)))
    }

    /// Tropical evaluation of F with `y_j` sent to `images[j]`.
    pub fn f_tropical(&self, images: &[TropMonomial]) -> Result<TropMonomial, Error> {
        self.f.tropical_eval(images)
    }
}

/// Reads g, F and the denominator vector off a principal-coefficient Laurent
/// polynomial over `x1..xn, y1..yn`.
pub fn extract_gf(var: &LaurentPoly, n: usize) -> Result<ClusterVarData, Error> {
    if var.vars().len() != 2 * n {
        return Err(Error::Dimension("expected a principal-coefficient table".into()));
    }
    let ys = y_vars(n);
    let mut f_terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    let mut g = None;
    let mut denom = vec![i64::MIN; n];
    for (m, c) in var.terms() {
        let d = m.to_dense(2 * n);
        let y_part = Monomial::from_dense(&d[n..]);
        for (i, slot) in denom.iter_mut().enumerate() {
            *slot = (*slot).max(-d[i]);
        }
        if y_part.is_one() {
            if g.is_some() {
                return Err(Error::Inconsistent("several terms of y-degree zero".into()));
            }
            g = Some(d[..n].to_vec());
        }
        *f_terms.entry(y_part).or_default() += c;
    }
    let g = g.ok_or_else(|| Error::Inconsistent("no term of y-degree zero".into()))?;
    let mut f = LaurentPoly::zero(&ys);
    for (m, c) in f_terms {
        f = f.checked_add(&LaurentPoly::monomial(&ys, m, c))?;
    }
    if f.coeff(&Monomial::one()) != BigInt::from(1) {
        return Err(Error::Inconsistent("F-polynomial lacks constant term 1".into()));
    }
    Ok(ClusterVarData { g, f, denom })
}

/// Seed tracked by g-vectors and c-vectors only.
#[derive(Clone, Debug)]
pub struct GSeed {
    /// Extended matrix: `n` rows of the exchange matrix, then `n` c-rows.
    pub bc: Vec<Vec<i64>>,
    /// Column `k` holds the g-vector of the k-th variable.
    pub g: Vec<Vec<i64>>,
}

impl GSeed {
    pub fn initial(b0: &[Vec<i64>]) -> Self {
        let n = b0.len();
        let mut bc = b0.to_vec();
        for j in 0..n {
            let mut row = vec![0; n];
            row[j] = 1;
            bc.push(row);
        }
        let g = (0..n)
            .map(|k| {
                let mut v = vec![0; n];
                v[k] = 1;
                v
            })
            .collect();
        GSeed { bc, g }
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    /// The g-vector of the variable replacing `x_k`.
    pub fn new_g(&self, k: usize, b0: &[Vec<i64>]) -> Vec<i64> {
        let n = self.n();
        let mut out: Vec<i64> = self.g[k].iter().map(|x| -x).collect();
        for i in 0..n {
            let b = self.bc[i][k];
            if b > 0 {
                for (o, x) in out.iter_mut().zip(&self.g[i]) {
                    *o += b * x;
                }
            }
        }
        for j in 0..n {
            let c = self.bc[n + j][k];
            if c > 0 {
                for (i, o) in out.iter_mut().enumerate() {
                    *o -= c * b0[i][j];
                }
            }
        }
        out
    }

    pub fn mutate(&self, k: usize, b0: &[Vec<i64>]) -> Result<GSeed, Error> {
        let n = self.n();
        let cols: Vec<usize> = (0..n).collect();
        let bc = mutate_b(&self.bc, &cols, k)?;
        let mut g = self.g.clone();
        g[k] = self.new_g(k, b0);
        Ok(GSeed { bc, g })
    }

    /// Seed identity up to permutation of the cluster.
    pub fn key(&self) -> Vec<Vec<i64>> {
        let mut k = self.g.clone();
        k.sort();
        k
    }
}

/// F-polynomial of the variable replacing `x_k`, from those of the seed.
fn new_f(seed: &GSeed, fs: &[&LaurentPoly], k: usize, ys: &Arc<VarTable>) -> Result<LaurentPoly, Error> {
    let n = seed.n();
    let mut pos_y = Vec::new();
    let mut neg_y = Vec::new();
    for j in 0..n {
        let c = seed.bc[n + j][k];
        if c > 0 {
            pos_y.push((j, c));
        } else if c < 0 {
            neg_y.push((j, -c));
        }
    }
    let one = BigInt::from(1);
    let mut pos = LaurentPoly::monomial(ys, Monomial::from_pairs(pos_y), one.clone());
    let mut neg = LaurentPoly::monomial(ys, Monomial::from_pairs(neg_y), one);
    for i in 0..n {
        let b = seed.bc[i][k];
        if b > 0 {
            pos = pos.checked_mul(&fs[i].pow(b)?)?;
        } else if b < 0 {
            neg = neg.checked_mul(&fs[i].pow(-b)?)?;
        }
    }
    pos.checked_add(&neg)?.exact_div(fs[k])
}

/// Result of a breadth-first enumeration of the exchange graph.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub b0: Vec<Vec<i64>>,
    /// All cluster variables, initial ones included, sorted by g-vector.
    pub vars: Vec<ClusterVarData>,
    pub seeds: usize,
}

impl Enumeration {
    pub fn non_initial(&self) -> impl Iterator<Item = &ClusterVarData> {
        self.vars.iter().filter(|v| v.denom.iter().any(|&d| d > 0))
    }

    pub fn by_g(&self, g: &[i64]) -> Option<&ClusterVarData> {
        self.vars.binary_search_by(|v| v.g.as_slice().cmp(g)).ok().map(|k| &self.vars[k])
    }
}

/// The seed cap: `HLC_BUDGET` wins over an explicit request, which wins over
/// the default.
pub fn effective_cap(requested: Option<usize>) -> usize {
    std::env::var("HLC_BUDGET").ok().and_then(|s| s.trim().parse().ok()).or(requested).unwrap_or(DEFAULT_SEED_CAP)
}

/// Breadth-first search over seeds reachable from the principal seed of
/// `b0`, deduplicating seeds by their sorted g-vectors.
pub fn enumerate_bfs(b0: &[Vec<i64>], cap: usize) -> Result<Enumeration, Error> {
    let n = b0.len();
    let ys = y_vars(n);
    let mut fpolys: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    let start = GSeed::initial(b0);
    for g in &start.g {
        fpolys.insert(g.clone(), LaurentPoly::one(&ys));
    }
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    seen.insert(start.key());
    let mut queue = VecDeque::from([start]);
    while let Some(seed) = queue.pop_front() {
        for k in 0..n {
            let next = seed.mutate(k, b0)?;
            let g = &next.g[k];
            if !fpolys.contains_key(g) {
                let fs: Vec<&LaurentPoly> = seed.g.iter().map(|v| &fpolys[v]).collect();
                let f = new_f(&seed, &fs, k, &ys)?;
                fpolys.insert(g.clone(), f);
            }
            if seen.insert(next.key()) {
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded(cap));
                }
                queue.push_back(next);
            }
        }
    }
    let vars = fpolys
        .into_iter()
        .map(|(g, f)| {
            let mut d = ClusterVarData::from_g_f(g, f, b0);
            if d.f.len() == 1 && d.denom.iter().all(|&x| x <= 0) {
                // initial variable
                d.denom = d.g.iter().map(|&x| -x).collect();
            }
            d
        })
        .collect();
    Ok(Enumeration { b0: b0.to_vec(), vars, seeds: seen.len() })
}

/// One variable produced by a source sweep, matched to a root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepVar {
    /// Word position of the matching root.
    pub root: usize,
    pub data: ClusterVarData,
}

/// Mutates at the source of largest height (smallest index on ties) and
/// lowers its height by two, until every positive root has appeared as a
/// denominator vector. Returns the variables in the order of `roots`.
///
/// g-vectors follow the sweep itself; F-polynomials are looked up in a
/// breadth-first enumeration, which finds each of them through a short
/// mutation path instead of dividing the large products met late in a sweep.
pub fn source_sweep(xi: &HeightFunction, roots: &[Vec<i64>]) -> Result<Vec<SweepVar>, Error> {
    let b0 = dynkin_b(xi);
    let table = enumerate_bfs(&b0, DEFAULT_SEED_CAP)?;
    sweep_impl(xi, roots, |seed, _fs, k| {
        let g = seed.new_g(k, &b0);
        table.by_g(&g).map(|v| v.f.clone()).ok_or_else(|| Error::Inconsistent(format!("g-vector {g:?} not enumerated")))
    })
}

/// Same as [`source_sweep`] but with every F-polynomial obtained from the
/// recurrence along the sweep. Slow beyond rank 7.
pub fn source_sweep_direct(xi: &HeightFunction, roots: &[Vec<i64>]) -> Result<Vec<SweepVar>, Error> {
    let ys = y_vars(xi.diagram().rank());
    sweep_impl(xi, roots, |seed, fs, k| {
        let refs: Vec<&LaurentPoly> = fs.iter().collect();
        new_f(seed, &refs, k, &ys)
    })
}

fn sweep_impl(
    xi: &HeightFunction,
    roots: &[Vec<i64>],
    mut f_of: impl FnMut(&GSeed, &[LaurentPoly], usize) -> Result<LaurentPoly, Error>,
) -> Result<Vec<SweepVar>, Error> {
    let d = xi.diagram();
    let n = d.rank();
    let b0 = dynkin_b(xi);
    let ys = y_vars(n);
    let mut seed = GSeed::initial(&b0);
    let mut fs: Vec<LaurentPoly> = vec![LaurentPoly::one(&ys); n];
    let mut found: Vec<Option<ClusterVarData>> = vec![None; roots.len()];
    let mut h = xi.values().to_vec();
    let limit = n * (d.coxeter_number() as usize + 2);
    let mut steps = 0;
    while found.iter().any(Option::is_none) {
        if steps == limit {
            return Err(Error::Inconsistent("source sweep did not reach every positive root".into()));
        }
        steps += 1;
        let top = *h.iter().max().unwrap();
        let k = (0..n).find(|&i| h[i] == top).unwrap();
        h[k] -= 2;
        let f = f_of(&seed, &fs, k)?;
        seed = seed.mutate(k, &b0)?;
        fs[k] = f.clone();
        let data = ClusterVarData::from_g_f(seed.g[k].clone(), f, &b0);
        if let Some(pos) = roots.iter().position(|r| *r == data.denom) {
            if found[pos].is_none() {
                found[pos] = Some(data);
            }
        } else if data.denom.iter().any(|&x| x > 0) {
            return Err(Error::Inconsistent(format!("denominator {:?} is not a positive root", data.denom)));
        }
    }
    Ok(found.into_iter().enumerate().map(|(root, d)| SweepVar { root, data: d.unwrap() }).collect())
}
