//! Highest l-weight monomials of the simple modules attached to the objects
//! of the cluster category, truncated q-characters and the exchange
//! identities they satisfy.
//!
//! With `z_i = Y_{i,xi(i)}` and `f_i = Y_{i,xi(i)-2} Y_{i,xi(i)}`, an object
//! `M` goes to `z^{g(M)} f^{soc(M)}`. The same monomials also come out of the
//! mesh recursion started at the injectives, and both paths are compared.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::ar::{self, ARNode, ARQuiver};
use crate::cluster::{self, ClusterVarData};
use crate::grid::{GridQuiver, HeightFunction};
use crate::laurent::{LaurentPoly, Monomial, TropMonomial, VarTable};
use crate::root::DynkinDiagram;
use crate::ymono::{y_table, YKey, YMonomial};
use crate::Error;

pub fn z_mon(xi: &HeightFunction, i: usize) -> YMonomial {
    YMonomial::var(i, xi.at(i))
}

pub fn f_mon(xi: &HeightFunction, i: usize) -> YMonomial {
    YMonomial::from_pairs([(i, xi.at(i) - 2, 1), (i, xi.at(i), 1)])
}

/// `A^{-1}_{i,r} = Y_{i,r-1}^{-1} Y_{i,r+1}^{-1} prod_{j ~ i} Y_{j,r}`.
pub fn ainv_mon(d: &DynkinDiagram, i: usize, r: i64) -> YMonomial {
    let mut m = YMonomial::from_pairs([(i, r - 1, -1), (i, r + 1, -1)]);
    for &j in d.neighbors(i) {
        m = m.mul(&YMonomial::var(j, r));
    }
    m
}

fn f_power(xi: &HeightFunction, e: &[i64]) -> YMonomial {
    let fs: Vec<YMonomial> = (0..e.len()).map(|i| f_mon(xi, i)).collect();
    YMonomial::product(&fs, e)
}

fn z_power(xi: &HeightFunction, e: &[i64]) -> YMonomial {
    let zs: Vec<YMonomial> = (0..e.len()).map(|i| z_mon(xi, i)).collect();
    YMonomial::product(&zs, e)
}

/// `z^{g(M)} f^{soc(M)}`.
pub fn hw_closed(ar: &ARQuiver, node: ARNode) -> Result<YMonomial, Error> {
    let xi = ar.height();
    let m = z_power(xi, &ar.g_vector(node)).mul(&f_power(xi, &ar.socle(node)));
    if !m.is_dominant() {
        return Err(Error::Inconsistent(format!("highest weight of {node} is not dominant: {m}")));
    }
    Ok(m)
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn socle_sum(ar: &ARQuiver, nodes: &[ARNode]) -> Vec<i64> {
    nodes.iter().fold(vec![0; ar.diagram().rank()], |acc, &n| add(&acc, &ar.socle(n)))
}

/// `delta(X, Y)_i = max(soc(X)_i - soc(Y)_i, 0)`.
fn delta(ar: &ARQuiver, x: &[ARNode], y: &[ARNode]) -> Vec<i64> {
    sub(&socle_sum(ar, x), &socle_sum(ar, y)).into_iter().map(|v| v.max(0)).collect()
}

/// Exponents `c` and `d` of the mesh ending at `N`.
pub fn mesh_cd(ar: &ARQuiver, mesh: &ar::Mesh) -> Result<(Vec<i64>, Vec<i64>), Error> {
    let middle: Vec<ARNode> = mesh.middle.iter().map(|&k| ARNode::Module(k)).collect();
    let c = delta(ar, &[ARNode::Module(mesh.n)], &middle);
    let n = ARNode::Module(mesh.n);
    let d = add(&add(&ar.socle(ARNode::Module(mesh.tau_n)), &ar.socle(n)), &ar.g_vector(n));
    if d.iter().any(|&x| x < 0) {
        return Err(Error::Inconsistent(format!("negative d-vector on the mesh ending at {n}")));
    }
    Ok((c, d))
}

/// One row of the table.
#[derive(Clone, Debug, Serialize)]
pub struct HLRecord {
    pub node: ARNode,
    pub dims: Vec<i64>,
    pub g: Vec<i64>,
    pub soc: Vec<i64>,
    pub hw: YMonomial,
    #[serde(rename = "F", serialize_with = "ser_opt_poly", skip_serializing_if = "Option::is_none")]
    pub f: Option<LaurentPoly>,
    #[serde(serialize_with = "ser_opt_poly", skip_serializing_if = "Option::is_none")]
    pub qchar: Option<LaurentPoly>,
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<LaurentPoly>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.render()),
        None => s.serialize_none(),
    }
}

/// Highest weights of every object of the cluster category of `Q`.
#[derive(Clone, Debug)]
pub struct HLTable {
    pub ar: ARQuiver,
    /// Sorted by highest weight.
    pub records: Vec<HLRecord>,
    index: BTreeMap<ARNode, usize>,
    ytab: Arc<VarTable>,
}

/// Mesh recursion: start from `P(i)[1]` and `I(i)`, then repeatedly use
/// `hw(tau N) = hw(M) f^c / hw(N)` until every node is reached.
pub fn hw_by_meshes(ar: &ARQuiver) -> Result<BTreeMap<ARNode, YMonomial>, Error> {
    let xi = ar.height();
    let n = ar.diagram().rank();
    let mut known: BTreeMap<ARNode, YMonomial> = BTreeMap::new();
    for i in 0..n {
        known.insert(ARNode::Shifted(i), z_mon(xi, i));
        known.insert(ARNode::Module(ar.injective(i)), YMonomial::var(i, xi.at(i) - 2));
    }
    let meshes = ar.meshes();
    loop {
        let mut progress = false;
        for mesh in &meshes {
            let t = ARNode::Module(mesh.tau_n);
            if known.contains_key(&t) {
                continue;
            }
            let Some(hn) = known.get(&ARNode::Module(mesh.n)) else { continue };
            let mids: Option<Vec<&YMonomial>> = mesh.middle.iter().map(|&k| known.get(&ARNode::Module(k))).collect();
            let Some(mids) = mids else { continue };
            let (c, _) = mesh_cd(ar, mesh)?;
            let hm = mids.into_iter().fold(YMonomial::one(), |acc, m| acc.mul(m));
            let value = hm.mul(&f_power(xi, &c)).div(hn);
            known.insert(t, value);
            progress = true;
        }
        if known.len() == n + ar.len() {
            return Ok(known);
        }
        if !progress {
            return Err(Error::Inconsistent("mesh recursion stalled".into()));
        }
    }
}

/// Builds the table and checks the closed form against the mesh recursion
/// on every node.
pub fn hl_table(xi: &HeightFunction) -> Result<HLTable, Error> {
    let ar = ARQuiver::new(xi)?;
    let recursive = hw_by_meshes(&ar)?;
    let mut records = Vec::with_capacity(ar.len() + ar.diagram().rank());
    for node in ar.nodes() {
        let hw = hw_closed(&ar, node)?;
        if recursive[&node] != hw {
            return Err(Error::Inconsistent(format!(
                "{node}: closed form {hw} but mesh recursion {}",
                recursive[&node]
            )));
        }
        records.push(HLRecord {
            node,
            dims: ar.dims(node),
            g: ar.g_vector(node),
            soc: ar.socle(node),
            hw,
            f: None,
            qchar: None,
        });
    }
    records.sort_by(|a, b| a.hw.cmp(&b.hw));
    for w in records.windows(2) {
        if w[0].hw == w[1].hw {
            return Err(Error::Inconsistent(format!("highest weight {} appears twice", w[0].hw)));
        }
    }
    let index = records.iter().enumerate().map(|(k, r)| (r.node, k)).collect();
    let d = xi.diagram();
    let ytab = y_table((0..d.rank()).flat_map(|i| [YKey { i, p: xi.at(i) }, YKey { i, p: xi.at(i) - 2 }]));
    Ok(HLTable { ar, records, index, ytab })
}

impl HLTable {
    pub fn height(&self) -> &HeightFunction {
        self.ar.height()
    }

    pub fn record(&self, node: ARNode) -> &HLRecord {
        &self.records[self.index[&node]]
    }

    pub fn hw(&self, node: ARNode) -> &YMonomial {
        &self.record(node).hw
    }

    pub fn monomials(&self) -> Vec<YMonomial> {
        self.records.iter().map(|r| r.hw.clone()).collect()
    }

    pub fn find(&self, m: &YMonomial) -> Option<&HLRecord> {
        self.records.binary_search_by(|r| r.hw.cmp(m)).ok().map(|k| &self.records[k])
    }

    pub fn y_vars(&self) -> &Arc<VarTable> {
        &self.ytab
    }

    /// Attaches F-polynomials from a source sweep and the truncated
    /// q-characters `hw * F(y-hat)` with `y-hat_j = A^{-1}_{j, xi(j)-1}`.
    pub fn compute_qchars(&mut self) -> Result<(), Error> {
        let xi = self.height().clone();
        let d = xi.diagram().clone();
        let n = d.rank();
        let sweep = cluster::source_sweep(&xi, self.ar.roots())?;
        let yhat: Vec<LaurentPoly> =
            (0..n).map(|j| ainv_mon(&d, j, xi.at(j) - 1).to_poly(&self.ytab)).collect::<Result<_, _>>()?;
        let ys = cluster::y_vars(n);
        for rec in self.records.iter_mut() {
            let f = match rec.node {
                ARNode::Module(k) => sweep[k].data.f.clone(),
                ARNode::Shifted(_) => LaurentPoly::one(&ys),
            };
            let q = f.substitute(&yhat, &self.ytab)?.mul_monomial(&rec.hw.to_monomial(&self.ytab)?, &BigInt::from(1));
            rec.f = Some(f);
            rec.qchar = Some(q);
        }
        Ok(())
    }

    pub fn qchar(&self, node: ARNode) -> Result<&LaurentPoly, Error> {
        self.record(node).qchar.as_ref().ok_or_else(|| Error::InvalidInput("q-characters not computed".into()))
    }

    /// Truncated q-character of `f^e`, which is the monomial itself.
    pub fn f_poly(&self, e: &[i64]) -> Result<LaurentPoly, Error> {
        f_power(self.height(), e).to_poly(&self.ytab)
    }

    pub fn product(&self, nodes: &[ARNode]) -> Result<LaurentPoly, Error> {
        let mut acc = LaurentPoly::one(&self.ytab);
        for &n in nodes {
            acc = acc.checked_mul(self.qchar(n)?)?;
        }
        Ok(acc)
    }

    /// q-character of a module named by its highest weight; frozen
    /// monomials `f_i` are accepted too.
    pub fn qchar_of(&self, m: &YMonomial) -> Result<LaurentPoly, Error> {
        if let Some(r) = self.find(m) {
            return self.qchar(r.node).cloned();
        }
        let n = self.ar.diagram().rank();
        if let Some(i) = (0..n).find(|&i| f_mon(self.height(), i) == *m) {
            let mut e = vec![0; n];
            e[i] = 1;
            return self.f_poly(&e);
        }
        Err(Error::InvalidInput(format!("{m} is not in the table")))
    }

    /// `chi(tau N) chi(N) = chi(M) f^c + f^d`.
    pub fn verify_mesh_identity(&self, mesh: &ar::Mesh) -> Result<bool, Error> {
        let (c, d) = mesh_cd(&self.ar, mesh)?;
        let lhs = self.product(&[ARNode::Module(mesh.tau_n), ARNode::Module(mesh.n)])?;
        let middle: Vec<ARNode> = mesh.middle.iter().map(|&k| ARNode::Module(k)).collect();
        let rhs = self.product(&middle)?.checked_mul(&self.f_poly(&c)?)?.checked_add(&self.f_poly(&d)?)?;
        Ok(lhs == rhs)
    }

    /// `[A][B] = prod [C] + prod [D]` for modules named by highest weights.
    pub fn verify_relation(&self, lhs: &[YMonomial], first: &[YMonomial], second: &[YMonomial]) -> Result<bool, Error> {
        let prod = |ms: &[YMonomial]| -> Result<LaurentPoly, Error> {
            let mut acc = LaurentPoly::one(&self.ytab);
            for m in ms {
                acc = acc.checked_mul(&self.qchar_of(m)?)?;
            }
            Ok(acc)
        };
        Ok(prod(lhs)? == prod(first)?.checked_add(&prod(second)?)?)
    }
}

/// Data of an exchange pair `(L, N)` with `L -> M -> N -> L[1]` and
/// `N -> M' -> L -> N[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeData {
    pub l: ARNode,
    pub n: ARNode,
    pub m: Vec<ARNode>,
    pub m_prime: Vec<ARNode>,
    pub image: Vec<i64>,
    pub c: Vec<i64>,
    pub d: Vec<i64>,
}

/// Computes `M`, `M' = tau Ker(h) + Coker(h)`, and the exponents
/// `c = delta(N + tau Ker h, M)` and `d = soc L + soc N + g(Im h) - soc M'`.
/// The pair is reordered when the extension goes the other way.
pub fn exchange_cd(ar: &ARQuiver, l: ARNode, n: ARNode) -> Result<ExchangeData, Error> {
    if ar.ext_cluster(l, n) != 1 {
        return Err(Error::InvalidInput(format!("{l} and {n} do not form an exchange pair")));
    }
    let (l, n) = match (l, n) {
        (ARNode::Module(_), ARNode::Shifted(_)) => (n, l),
        (ARNode::Module(a), ARNode::Module(b)) if ar.ext(b, a) == 0 => (n, l),
        _ => (l, n),
    };
    let ARNode::Module(nk) = n else { unreachable!("two shifted projectives have no extension") };
    let h = ar::exchange_pair_h(ar, l, n)?;
    let m: Vec<ARNode> = match l {
        ARNode::Module(lk) => ar::extension_middle(ar, lk, nk)?.into_iter().map(ARNode::Module).collect(),
        ARNode::Shifted(i) => {
            let (ker, coker) = ar::map_to_injective(ar, i, nk)?;
            ker.into_iter()
                .map(ARNode::Module)
                .chain(coker.into_iter().map(|k| ar.tau_inverse(ARNode::Module(k))))
                .collect()
        }
    };
    let tau_ker: Vec<ARNode> = h.kernel_summands.iter().map(|&k| ar.tau(ARNode::Module(k))).collect();
    let m_prime: Vec<ARNode> =
        tau_ker.iter().copied().chain(h.cokernel_summands.iter().map(|&k| ARNode::Module(k))).collect();
    let mut first = vec![n];
    first.extend(&tau_ker);
    let c = delta(ar, &first, &m);
    let g_im = ar::g_vector_of_dims(ar.height(), &h.image);
    let d = sub(&add(&add(&ar.socle(l), &ar.socle(n)), &g_im), &socle_sum(ar, &m_prime));
    if d.iter().any(|&x| x < 0) {
        return Err(Error::Inconsistent(format!("negative d-vector for ({l}, {n})")));
    }
    let xi = ar.height();
    let lhs = hw_closed(ar, l)?.mul(&hw_closed(ar, n)?);
    let mut rhs = f_power(xi, &c);
    for &x in &m {
        rhs = rhs.mul(&hw_closed(ar, x)?);
    }
    if lhs != rhs {
        return Err(Error::Inconsistent(format!("highest weight identity fails for ({l}, {n})")));
    }
    Ok(ExchangeData { l, n, m, m_prime, image: h.image, c, d })
}

impl HLTable {
    /// `chi(L) chi(N) = chi(M) f^c + chi(M') f^d`.
    pub fn verify_exchange_identity(&self, e: &ExchangeData) -> Result<bool, Error> {
        let lhs = self.product(&[e.l, e.n])?;
        let rhs = self
            .product(&e.m)?
            .checked_mul(&self.f_poly(&e.c)?)?
            .checked_add(&self.product(&e.m_prime)?.checked_mul(&self.f_poly(&e.d)?)?)?;
        Ok(lhs == rhs)
    }
}

/// All pairs of distinct nodes with one-dimensional `Ext^1` in the cluster
/// category, each once.
pub fn exchange_pairs(ar: &ARQuiver) -> Vec<(ARNode, ARNode)> {
    let nodes = ar.nodes();
    let mut out = Vec::new();
    for (a, &x) in nodes.iter().enumerate() {
        for &y in &nodes[a + 1..] {
            if ar.ext_cluster(x, y) == 1 {
                out.push((x, y));
            }
        }
    }
    out
}

/// Coefficient-free cluster characters: `x_i` for `P(i)[1]`, and for a
/// module the Laurent polynomial of the sweep variable matched to it.
pub fn cluster_characters(ar: &ARQuiver) -> Result<(Arc<VarTable>, BTreeMap<ARNode, LaurentPoly>), Error> {
    let xi = ar.height();
    let n = xi.diagram().rank();
    let b0 = cluster::dynkin_b(xi);
    let sweep = cluster::source_sweep(xi, ar.roots())?;
    let principal = VarTable::new((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))))?;
    let xs = VarTable::new((1..=n).map(|i| format!("x{i}")))?;
    let drop_y: Vec<LaurentPoly> =
        (0..2 * n).map(|k| if k < n { LaurentPoly::var(&xs, k) } else { LaurentPoly::one(&xs) }).collect();
    let mut out = BTreeMap::new();
    for i in 0..n {
        out.insert(ARNode::Shifted(i), LaurentPoly::var(&xs, i));
    }
    for v in sweep {
        let lp = v.data.laurent(&b0, &principal)?;
        out.insert(ARNode::Module(v.root), lp.substitute(&drop_y, &xs)?);
    }
    Ok((xs, out))
}

/// Checks `x_L x_N = x_M + x_{M'}` for an exchange pair.
pub fn hubery_check(
    chars: &BTreeMap<ARNode, LaurentPoly>,
    table: &Arc<VarTable>,
    e: &ExchangeData,
) -> Result<bool, Error> {
    let prod = |ns: &[ARNode]| -> Result<LaurentPoly, Error> {
        ns.iter().try_fold(LaurentPoly::one(table), |acc, x| acc.checked_mul(&chars[x]))
    };
    Ok(prod(&[e.l, e.n])? == prod(&e.m)?.checked_add(&prod(&e.m_prime)?)?)
}

/// Tropical images `y_i -> f_i^{-1} prod_{j -> i} f_j` over the generators
/// `f_1..f_n`.
pub fn y_tropical_images(xi: &HeightFunction) -> Vec<TropMonomial> {
    let d = xi.diagram();
    let n = d.rank();
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = -1;
            for &j in d.neighbors(i) {
                if xi.arrow(j, i) {
                    e[j] += 1;
                }
            }
            TropMonomial::new(e)
        })
        .collect()
}

/// `F_M|_P`, `f^{-soc M}` and `(1 + y^{dim M})|_P` for one module.
pub fn tropical_triple(
    xi: &HeightFunction,
    f: &ClusterVarData,
    soc: &[i64],
    dims: &[i64],
) -> Result<[TropMonomial; 3], Error> {
    let images = y_tropical_images(xi);
    let ft = f.f_tropical(&images)?;
    let neg_soc = TropMonomial::new(soc.iter().map(|x| -x).collect());
    let ys = f.f.vars().clone();
    let binom =
        LaurentPoly::one(&ys).checked_add(&LaurentPoly::monomial(&ys, Monomial::from_dense(dims), BigInt::from(1)))?;
    Ok([ft, neg_soc, binom.tropical_eval(&images)?])
}

/// `prod_j A^{-dim M_j}_{j, xi(j)-1}` and `z^{a(M)} f^{g(M)}`.
pub fn a_monomial_sides(xi: &HeightFunction, dims: &[i64]) -> (YMonomial, YMonomial) {
    let d = xi.diagram();
    let lhs = (0..d.rank()).fold(YMonomial::one(), |acc, j| acc.mul(&ainv_mon(d, j, xi.at(j) - 1).pow(dims[j])));
    let a = ar::a_vector(xi, dims);
    let g = ar::g_vector_of_dims(xi, dims);
    (lhs, z_power(xi, &a).mul(&f_power(xi, &g)))
}

/// The correspondence for a sink-source height function:
/// `prod_{sources} Y_{i,xi(i)}^{a_i} prod_{sinks} Y_{j,xi(j)-2}^{a_j}`.
pub fn sink_source_phi(xi: &HeightFunction, root: &[i64]) -> Result<YMonomial, Error> {
    if !xi.is_sink_source() {
        return Err(Error::InvalidInput("height function is not sink-source".into()));
    }
    let d = xi.diagram();
    let mut m = YMonomial::one();
    for i in 0..d.rank() {
        let source = d.neighbors(i).iter().all(|&j| xi.arrow(i, j));
        let p = if source { xi.at(i) } else { xi.at(i) - 2 };
        m = m.mul(&YMonomial::var(i, p).pow(root[i]));
    }
    Ok(m)
}

/// `Y_{i,r} Y_{i,r+2} ... Y_{i,xi(i)}`.
pub fn kr_monomial(xi: &HeightFunction, i: usize, r: i64) -> YMonomial {
    let mut m = YMonomial::one();
    let mut p = r;
    while p <= xi.at(i) {
        m = m.mul(&YMonomial::var(i, p));
        p += 2;
    }
    m
}

/// Level-l seed data: the exchange matrix of the mutable part and the
/// tropical images of its coefficients.
#[derive(Clone, Debug)]
pub struct LevelSeed {
    pub grid: GridQuiver,
    pub b0: Vec<Vec<i64>>,
    pub mutable: Vec<usize>,
    pub frozen: Vec<usize>,
    /// `y_v -> prod_{frozen k} f_k^{b_kv}` over the frozen generators.
    pub y_images: Vec<TropMonomial>,
}

impl LevelSeed {
    pub fn new(xi: &HeightFunction, ell: usize) -> Result<Self, Error> {
        let grid = GridQuiver::new(xi, ell)?;
        let b = grid.b_matrix();
        let mutable = grid.mutable_rows();
        let frozen: Vec<usize> = (0..grid.vertices().len()).filter(|&k| grid.is_frozen(k)).collect();
        let b0 = mutable.iter().map(|&r| b[r].clone()).collect();
        let y_images =
            (0..mutable.len()).map(|v| TropMonomial::new(frozen.iter().map(|&k| b[k][v]).collect())).collect();
        Ok(LevelSeed { grid, b0, mutable, frozen, y_images })
    }

    /// `m = z^g / F|_P` written in the `Y` variables.
    pub fn hw_level_l(&self, var: &ClusterVarData) -> Result<YMonomial, Error> {
        let xi = self.grid.height();
        let verts = self.grid.vertices();
        let ft = var.f_tropical(&self.y_images)?;
        let mut m = YMonomial::one();
        for (v, &row) in self.mutable.iter().enumerate() {
            m = m.mul(&kr_monomial(xi, verts[row].i, verts[row].p).pow(var.g[v]));
        }
        for (k, &row) in self.frozen.iter().enumerate() {
            m = m.mul(&kr_monomial(xi, verts[row].i, verts[row].p).pow(-ft.exps[k]));
        }
        if !m.is_dominant() {
            return Err(Error::Inconsistent(format!("level-l monomial {m} is not dominant")));
        }
        Ok(m)
    }
}
