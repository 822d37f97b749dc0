//! Auslander-Reiten theory of a Dynkin quiver: the adapted word, ordered
//! positive roots, explicit indecomposable representations, Hom and Ext,
//! socles, g-vectors, the translate and the meshes.
//!
//! Roots are indexed by their position `k` in the word order. Arrows of the
//! AR quiver point from larger to smaller index, injectives come first and
//! `tau(beta_k) = beta_{k+}`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::grid::HeightFunction;
use crate::linalg::{self, Mat, Q};
use crate::root::DynkinDiagram;
use crate::Error;

/// Explicit representation: one matrix per Dynkin edge, shaped
/// `dim(target) x dim(source)` for the edge's current direction.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    /// `forward[e]` means edge `e = (a, b)` is oriented `a -> b`.
    pub forward: Vec<bool>,
    pub maps: Vec<Mat>,
}

fn orientation_of(diagram: &DynkinDiagram, h: &[i64]) -> Vec<bool> {
    diagram.edges().iter().map(|&(a, b)| h[a] == h[b] + 1).collect()
}

impl QuiverRep {
    pub fn simple(diagram: &DynkinDiagram, forward: Vec<bool>, i: usize) -> Self {
        let mut dims = vec![0; diagram.rank()];
        dims[i] = 1;
        let maps = diagram
            .edges()
            .iter()
            .zip(&forward)
            .map(|(&(a, b), &fw)| {
                let (s, t) = if fw { (a, b) } else { (b, a) };
                linalg::zeros(dims[t], dims[s]).into_iter().map(|r| r.into_iter().collect()).collect()
            })
            .collect();
        QuiverRep { dims, forward, maps }
    }

    /// `(source, target, matrix)` for every arrow.
    pub fn arrows<'a>(&'a self, diagram: &'a DynkinDiagram) -> impl Iterator<Item = (usize, usize, &'a Mat)> + 'a {
        diagram.edges().iter().zip(&self.forward).zip(&self.maps).map(
            |((&(a, b), &fw), m)| {
                if fw {
                    (a, b, m)
                } else {
                    (b, a, m)
                }
            },
        )
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Reflection functor at a sink `i`: the new space at `i` is the kernel of
    /// the sum of the incoming maps and the arrows at `i` are reversed.
    pub fn reflect_at_sink(&self, diagram: &DynkinDiagram, i: usize) -> QuiverRep {
        let edges = diagram.edges();
        let incoming: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter_map(|(e, &(a, b))| {
                let (s, t) = if self.forward[e] { (a, b) } else { (b, a) };
                (t == i).then_some((e, s))
            })
            .collect();
        debug_assert_eq!(incoming.len(), diagram.neighbors(i).len(), "vertex {i} is not a sink");
        let width: usize = incoming.iter().map(|&(_, s)| self.dims[s]).sum();
        let mut phi = linalg::zeros(self.dims[i], width);
        let mut offset = 0;
        for &(e, s) in &incoming {
            for r in 0..self.dims[i] {
                for c in 0..self.dims[s] {
                    phi[r][offset + c] = self.maps[e][r][c];
                }
            }
            offset += self.dims[s];
        }
        let kernel = linalg::nullspace(&phi, width);
        let mut out = self.clone();
        out.dims[i] = kernel.len();
        let mut offset = 0;
        for &(e, s) in &incoming {
            let block: Mat = (0..self.dims[s]).map(|r| kernel.iter().map(|v| v[offset + r]).collect()).collect();
            out.maps[e] = block;
            out.forward[e] = !self.forward[e];
            offset += self.dims[s];
        }
        out
    }
}

/// Euler form `<a, b> = sum a_i b_i - sum_{i -> j} a_i b_j`.
pub fn euler_form(xi: &HeightFunction, a: &[i64], b: &[i64]) -> i64 {
    let d = xi.diagram();
    let mut s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    for &(u, v) in d.edges() {
        if xi.arrow(u, v) {
            s -= a[u] * b[v];
        } else {
            s -= a[v] * b[u];
        }
    }
    s
}

/// Dimension of the space of morphisms `x -> y`.
pub fn hom_dim(diagram: &DynkinDiagram, x: &QuiverRep, y: &QuiverRep) -> usize {
    hom_space(diagram, x, y).len()
}

/// Basis of `Hom(x, y)`; each element lists one matrix per vertex,
/// shaped `dim y_v x dim x_v`.
pub fn hom_space(diagram: &DynkinDiagram, x: &QuiverRep, y: &QuiverRep) -> Vec<Vec<Mat>> {
    let n = diagram.rank();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let vars = offset[n];
    let idx = |v: usize, r: usize, c: usize| offset[v] + r * x.dims[v] + c;
    let mut rows: Mat = Vec::new();
    for (e, (s, t, xa)) in x.arrows(diagram).enumerate() {
        let ya = &y.maps[e];
        debug_assert_eq!(x.forward[e], y.forward[e]);
        // (Y_a phi_s - phi_t X_a)[r][c] = 0
        for r in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                let mut row = vec![Q::zero(); vars];
                for k in 0..y.dims[s] {
                    let w = ya[r][k];
                    if !w.is_zero() {
                        row[idx(s, k, c)] += w;
                    }
                }
                for k in 0..x.dims[t] {
                    let w = xa[k][c];
                    if !w.is_zero() {
                        row[idx(t, r, k)] -= w;
                    }
                }
                rows.push(row);
            }
        }
    }
    linalg::nullspace(&rows, vars)
        .into_iter()
        .map(|v| {
            (0..n)
                .map(|u| (0..y.dims[u]).map(|r| (0..x.dims[u]).map(|c| v[idx(u, r, c)]).collect()).collect())
                .collect()
        })
        .collect()
}

pub fn ext_dim(xi: &HeightFunction, x: &QuiverRep, y: &QuiverRep) -> usize {
    let h = hom_dim(xi.diagram(), x, y) as i64;
    let e = h - euler_form(xi, &x.dim_vector(), &y.dim_vector());
    debug_assert!(e >= 0);
    e as usize
}

/// `soc(M)_i` is the dimension of the joint kernel of the arrows leaving `i`.
pub fn socle(diagram: &DynkinDiagram, m: &QuiverRep) -> Vec<i64> {
    let n = diagram.rank();
    let mut out = vec![0i64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut stacked: Mat = Vec::new();
        for (s, _, a) in m.arrows(diagram) {
            if s == i {
                stacked.extend(a.iter().cloned());
            }
        }
        *slot = (m.dims[i] - linalg::rank(&stacked, m.dims[i])) as i64;
    }
    out
}

/// `g_i = sum_{i -> j} dim M_j - dim M_i`.
pub fn g_vector_of_dims(xi: &HeightFunction, dims: &[i64]) -> Vec<i64> {
    let d = xi.diagram();
    (0..d.rank())
        .map(|i| d.neighbors(i).iter().filter(|&&j| xi.arrow(i, j)).map(|&j| dims[j]).sum::<i64>() - dims[i])
        .collect()
}

/// `a(M)_i = sum_{j -> i} dim M_j - sum_{i -> j} dim M_j`.
pub fn a_vector(xi: &HeightFunction, dims: &[i64]) -> Vec<i64> {
    let d = xi.diagram();
    (0..d.rank())
        .map(|i| d.neighbors(i).iter().map(|&j| if xi.arrow(j, i) { dims[j] } else { -dims[j] }).sum())
        .collect()
}

/// Object of the cluster category: an indecomposable module (by word
/// position) or a shifted projective `P(i)[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ARNode {
    Module(usize),
    Shifted(usize),
}

impl Serialize for ARNode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for ARNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ARNode::Module(k) => write!(f, "M{}", k + 1),
            ARNode::Shifted(i) => write!(f, "P{}[1]", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mesh {
    pub tau_n: usize,
    pub middle: Vec<usize>,
    pub n: usize,
}

/// The Auslander-Reiten quiver of `mod kQ` together with representations.
#[derive(Clone, Debug)]
pub struct ARQuiver {
    xi: HeightFunction,
    word: Vec<usize>,
    roots: Vec<Vec<i64>>,
    reps: Vec<QuiverRep>,
    arrows: Vec<(usize, usize)>,
    tau: Vec<Option<usize>>,
    projective: Vec<usize>,
    injective: Vec<usize>,
    socles: Vec<Vec<i64>>,
}

/// Reduced word for the longest element adapted to the orientation: take
/// the unfinished vertex of largest height (smallest index on ties), then
/// lower its height by two. A vertex is finished once the prefix `w` sends
/// `alpha_i` to a negative root.
pub fn adapted_word(xi: &HeightFunction) -> Vec<usize> {
    adapted_word_with_orientations(xi).0
}

/// The word together with the orientation of `Q_m` before each letter, as
/// forward flags per edge.
fn adapted_word_with_orientations(xi: &HeightFunction) -> (Vec<usize>, Vec<Vec<bool>>) {
    let d = xi.diagram();
    let nu = d.num_positive_roots();
    let mut h = xi.values().to_vec();
    let mut word: Vec<usize> = Vec::with_capacity(nu);
    let mut fw = orientation_of(d, &h);
    let mut orientations = vec![fw.clone()];
    let positive_after = |word: &[usize], i: usize| {
        let mut v = vec![0i64; d.rank()];
        v[i] = 1;
        for &m in word.iter().rev() {
            d.reflect(m, &mut v);
        }
        v.iter().all(|&x| x >= 0)
    };
    while word.len() < nu {
        let Some(i) =
            (0..d.rank()).filter(|&i| positive_after(&word, i)).max_by(|&a, &b| h[a].cmp(&h[b]).then(b.cmp(&a)))
        else {
            break;
        };
        word.push(i);
        h[i] -= 2;
        for (e, &(a, b)) in d.edges().iter().enumerate() {
            if a == i || b == i {
                fw[e] = !fw[e];
            }
        }
        orientations.push(fw.clone());
    }
    (word, orientations)
}

/// `beta_k = s_{i1} ... s_{i(k-1)} (alpha_{ik})`.
pub fn positive_roots(xi: &HeightFunction) -> Result<Vec<Vec<i64>>, Error> {
    let d = xi.diagram();
    let word = adapted_word(xi);
    let mut roots: Vec<Vec<i64>> = Vec::with_capacity(word.len());
    for k in 0..word.len() {
        let mut v = vec![0i64; d.rank()];
        v[word[k]] = 1;
        for m in (0..k).rev() {
            d.reflect(word[m], &mut v);
        }
        if v.iter().any(|&x| x < 0) || roots.contains(&v) {
            return Err(Error::Inconsistent(format!("word position {} gives root {:?}", k + 1, v)));
        }
        roots.push(v);
    }
    Ok(roots)
}

/// Representation of `beta_k` by reflection functors along the word.
pub fn build_rep(xi: &HeightFunction, k: usize) -> Result<QuiverRep, Error> {
    let d = xi.diagram();
    let (word, orientations) = adapted_word_with_orientations(xi);
    if k >= word.len() {
        return Err(Error::InvalidInput(format!("root index {} out of range", k + 1)));
    }
    let rep = rep_along_word(d, &word, &orientations, k)?;
    if hom_dim(d, &rep, &rep) != 1 || ext_dim(xi, &rep, &rep) != 0 {
        return Err(Error::Inconsistent(format!("representation of root {} is not a brick", k + 1)));
    }
    Ok(rep)
}

fn is_sink(d: &DynkinDiagram, forward: &[bool], i: usize) -> bool {
    d.edges().iter().zip(forward).all(|(&(a, b), &f)| (a != i || !f) && (b != i || f))
}

fn rep_along_word(d: &DynkinDiagram, word: &[usize], orientations: &[Vec<bool>], k: usize) -> Result<QuiverRep, Error> {
    let mut rep = QuiverRep::simple(d, orientations[k].clone(), word[k]);
    for m in (0..k).rev() {
        if !is_sink(d, &rep.forward, word[m]) {
            return Err(Error::Inconsistent(format!("word letter {} is not a source", m + 1)));
        }
        rep = rep.reflect_at_sink(d, word[m]);
    }
    Ok(rep)
}

impl ARQuiver {
    pub fn new(xi: &HeightFunction) -> Result<Self, Error> {
        let d = xi.diagram();
        let n = d.rank();
        let (word, orientations) = adapted_word_with_orientations(xi);
        let roots = positive_roots(xi)?;
        let nu = word.len();
        if nu != d.num_positive_roots() {
            return Err(Error::Inconsistent("adapted word is too short".into()));
        }
        let reps: Vec<QuiverRep> =
            (0..nu).map(|k| rep_along_word(d, &word, &orientations, k)).collect::<Result<_, _>>()?;
        for (k, r) in reps.iter().enumerate() {
            if r.dim_vector() != roots[k] {
                return Err(Error::Inconsistent(format!("representation {} has the wrong dimension", k + 1)));
            }
        }
        let next = |k: usize| (k + 1..nu).find(|&m| word[m] == word[k]);
        let prev = |k: usize| (0..k).rev().find(|&m| word[m] == word[k]);
        let mut arrows = Vec::new();
        for k in 0..nu {
            for j in 0..k {
                if !d.adjacent(word[k], word[j]) {
                    continue;
                }
                let j_plus = next(j).unwrap_or(nu);
                let k_minus = prev(k).map_or(-1, |m| m as i64);
                if j_plus > k && (j as i64) > k_minus {
                    arrows.push((k, j));
                }
            }
        }
        let tau: Vec<Option<usize>> = (0..nu).map(next).collect();
        let mut projective = vec![usize::MAX; n];
        let mut injective = vec![usize::MAX; n];
        let paths = |from: usize| -> Vec<i64> {
            let mut v = vec![0i64; n];
            let mut stack = vec![from];
            while let Some(u) = stack.pop() {
                if v[u] == 0 {
                    v[u] = 1;
                    stack.extend(d.neighbors(u).iter().filter(|&&w| xi.arrow(u, w)));
                }
            }
            v
        };
        for (i, slot) in projective.iter_mut().enumerate() {
            let target = paths(i);
            *slot = (0..nu)
                .find(|&k| tau[k].is_none() && roots[k] == target)
                .ok_or_else(|| Error::Inconsistent(format!("projective P({}) not found", i + 1)))?;
        }
        for k in 0..nu {
            if prev(k).is_none() {
                injective[word[k]] = k;
            }
        }
        let socles = reps.iter().map(|r| socle(d, r)).collect();
        let ar = ARQuiver { xi: xi.clone(), word, roots, reps, arrows, tau, projective, injective, socles };
        ar.validate()?;
        Ok(ar)
    }

    fn validate(&self) -> Result<(), Error> {
        let d = self.xi.diagram();
        let c = |v: &[i64]| self.coxeter(v);
        for k in 0..self.roots.len() {
            let image = c(&self.roots[k]);
            match self.tau[k] {
                Some(t) if self.roots[t] != image => {
                    return Err(Error::Inconsistent(format!(
                        "tau of root {} disagrees with the Coxeter element",
                        k + 1
                    )));
                }
                None if image.iter().all(|&x| x >= 0) => {
                    return Err(Error::Inconsistent(format!("root {} should not be projective", k + 1)));
                }
                _ => {}
            }
        }
        for i in 0..d.rank() {
            let p = &self.roots[self.projective[i]];
            let inj = &self.roots[self.injective[i]];
            for j in 0..d.rank() {
                if p[j] != i64::from(self.path(i, j)) || inj[j] != i64::from(self.path(j, i)) {
                    return Err(Error::Inconsistent(format!("projective or injective at vertex {} misplaced", i + 1)));
                }
            }
        }
        for mesh in self.meshes() {
            let mut lhs: Vec<i64> =
                self.roots[mesh.tau_n].iter().zip(&self.roots[mesh.n]).map(|(a, b)| a + b).collect();
            for &m in &mesh.middle {
                for (slot, x) in lhs.iter_mut().zip(&self.roots[m]) {
                    *slot -= x;
                }
            }
            if lhs.iter().any(|&x| x != 0) || mesh.middle.is_empty() {
                return Err(Error::Inconsistent(format!("mesh ending at root {} is not additive", mesh.n + 1)));
            }
        }
        Ok(())
    }

    /// Whether there is an oriented path `i -> ... -> j` (trivial path included).
    pub fn path(&self, i: usize, j: usize) -> bool {
        let d = self.xi.diagram();
        let mut stack = vec![i];
        let mut seen = vec![false; d.rank()];
        while let Some(u) = stack.pop() {
            if u == j {
                return true;
            }
            if std::mem::replace(&mut seen[u], true) {
                continue;
            }
            stack.extend(d.neighbors(u).iter().filter(|&&v| self.xi.arrow(u, v)));
        }
        false
    }

    /// Coxeter transformation `c = s_{i1} ... s_{in}` for the vertices in
    /// decreasing height, a source sequence of the quiver.
    pub fn coxeter(&self, v: &[i64]) -> Vec<i64> {
        let d = self.xi.diagram();
        let mut order: Vec<usize> = (0..d.rank()).collect();
        order.sort_by_key(|&i| (-self.xi.at(i), i));
        let mut w = v.to_vec();
        for &i in order.iter().rev() {
            d.reflect(i, &mut w);
        }
        w
    }

    pub fn height(&self) -> &HeightFunction {
        &self.xi
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        self.xi.diagram()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn rep(&self, k: usize) -> &QuiverRep {
        &self.reps[k]
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn index_of_root(&self, dims: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == dims)
    }

    pub fn projective(&self, i: usize) -> usize {
        self.projective[i]
    }

    pub fn injective(&self, i: usize) -> usize {
        self.injective[i]
    }

    pub fn is_projective(&self, k: usize) -> bool {
        self.tau[k].is_none()
    }

    pub fn is_injective(&self, k: usize) -> bool {
        self.injective.contains(&k)
    }

    /// Translate in the cluster category: `tau(P(i)) = P(i)[1]` and
    /// `tau(P(i)[1]) = I(i)`.
    pub fn tau(&self, node: ARNode) -> ARNode {
        match node {
            ARNode::Module(k) => match self.tau[k] {
                Some(t) => ARNode::Module(t),
                None => ARNode::Shifted(self.projective.iter().position(|&p| p == k).expect("projective")),
            },
            ARNode::Shifted(i) => ARNode::Module(self.injective[i]),
        }
    }

    pub fn tau_inverse(&self, node: ARNode) -> ARNode {
        match node {
            ARNode::Module(k) => {
                if let Some(j) = (0..k).rev().find(|&m| self.word[m] == self.word[k]) {
                    ARNode::Module(j)
                } else {
                    ARNode::Shifted(self.word[k])
                }
            }
            ARNode::Shifted(i) => ARNode::Module(self.projective[i]),
        }
    }

    /// All nodes of the cluster category: the shifted projectives first,
    /// then the modules in word order.
    pub fn nodes(&self) -> Vec<ARNode> {
        let n = self.diagram().rank();
        (0..n).map(ARNode::Shifted).chain((0..self.len()).map(ARNode::Module)).collect()
    }

    pub fn dims(&self, node: ARNode) -> Vec<i64> {
        match node {
            ARNode::Module(k) => self.roots[k].clone(),
            ARNode::Shifted(_) => vec![0; self.diagram().rank()],
        }
    }

    pub fn socle(&self, node: ARNode) -> Vec<i64> {
        match node {
            ARNode::Module(k) => self.socles[k].clone(),
            ARNode::Shifted(_) => vec![0; self.diagram().rank()],
        }
    }

    pub fn g_vector(&self, node: ARNode) -> Vec<i64> {
        match node {
            ARNode::Module(k) => g_vector_of_dims(&self.xi, &self.roots[k]),
            ARNode::Shifted(i) => {
                let mut e = vec![0; self.diagram().rank()];
                e[i] = 1;
                e
            }
        }
    }

    /// One mesh per non-projective module `N`.
    pub fn meshes(&self) -> Vec<Mesh> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            if let Some(t) = self.tau[j] {
                let middle: Vec<usize> = self.arrows.iter().filter(|&&(_, b)| b == j).map(|&(a, _)| a).collect();
                out.push(Mesh { tau_n: t, middle, n: j });
            }
        }
        out
    }

    /// `tau`-orbits of modules, each listed from the injective end.
    pub fn tau_orbits(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.diagram().rank() {
            let mut orbit = vec![self.injective[i]];
            while let Some(t) = self.tau[*orbit.last().unwrap()] {
                orbit.push(t);
            }
            out.push(orbit);
        }
        out
    }

    pub fn hom(&self, a: usize, b: usize) -> usize {
        hom_dim(self.diagram(), &self.reps[a], &self.reps[b])
    }

    pub fn ext(&self, a: usize, b: usize) -> usize {
        ext_dim(&self.xi, &self.reps[a], &self.reps[b])
    }

    /// `dim Ext^1` in the cluster category between two nodes.
    pub fn ext_cluster(&self, x: ARNode, y: ARNode) -> usize {
        match (x, y) {
            (ARNode::Module(a), ARNode::Module(b)) => self.ext(a, b) + self.ext(b, a),
            (ARNode::Module(a), ARNode::Shifted(i)) | (ARNode::Shifted(i), ARNode::Module(a)) => {
                self.roots[a][i] as usize
            }
            (ARNode::Shifted(_), ARNode::Shifted(_)) => 0,
        }
    }

    /// Multiplicities of the indecomposable summands of a representation,
    /// read off from `dim Hom(beta_a, M)`.
    pub fn decompose(&self, m: &QuiverRep) -> Vec<usize> {
        let d = self.diagram();
        let nu = self.len();
        let h: Vec<i64> = (0..nu).map(|a| hom_dim(d, &self.reps[a], m) as i64).collect();
        // Hom(beta_a, beta_b) vanishes unless a >= b, so the system is triangular.
        let mut mult = vec![0i64; nu];
        for a in 0..nu {
            let mut rest = h[a];
            for b in 0..a {
                if mult[b] != 0 {
                    rest -= self.hom(a, b) as i64 * mult[b];
                }
            }
            mult[a] = rest;
        }
        mult.into_iter().map(|x| x.max(0) as usize).collect()
    }
}

/// Subrepresentation spanned by the given bases at each vertex.
fn subrep(diagram: &DynkinDiagram, m: &QuiverRep, bases: &[Vec<Vec<Q>>]) -> QuiverRep {
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut out = QuiverRep { dims: dims.clone(), forward: m.forward.clone(), maps: Vec::new() };
    for (s, t, a) in m.arrows(diagram) {
        // express a * b for each basis vector b of the source in the target basis
        let mut block = linalg::zeros(dims[t], dims[s]);
        for (c, b) in bases[s].iter().enumerate() {
            let img: Vec<Q> = (0..m.dims[t]).map(|r| (0..m.dims[s]).map(|k| a[r][k] * b[k]).sum()).collect();
            let coords = solve_in_basis(&bases[t], &img, m.dims[t]).expect("subspace is invariant");
            for (r, x) in coords.into_iter().enumerate() {
                block[r][c] = x;
            }
        }
        out.maps.push(block);
    }
    out
}

/// Coordinates of `v` in the span of `basis` (vectors of length `dim`).
fn solve_in_basis(basis: &[Vec<Q>], v: &[Q], dim: usize) -> Option<Vec<Q>> {
    let k = basis.len();
    let mut aug: Mat = (0..dim).map(|r| basis.iter().map(|b| b[r]).chain(std::iter::once(v[r])).collect()).collect();
    let pivots = linalg::rref(&mut aug, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][k];
    }
    Some(x)
}

/// Quotient `m / sub` where `sub` is given by bases at each vertex.
fn quotient_rep(diagram: &DynkinDiagram, m: &QuiverRep, sub: &[Vec<Vec<Q>>]) -> QuiverRep {
    let n = diagram.rank();
    // basis at each vertex: sub basis followed by chosen complement vectors
    let mut full: Vec<Vec<Vec<Q>>> = Vec::with_capacity(n);
    let mut comp_len = Vec::with_capacity(n);
    for v in 0..n {
        let comp = linalg::complement_basis(&sub[v], m.dims[v]);
        let mut basis = sub[v].clone();
        for e in &comp {
            let mut u = vec![Q::zero(); m.dims[v]];
            u[*e] = Q::from_integer(1);
            basis.push(u);
        }
        comp_len.push(comp.len());
        full.push(basis);
    }
    let mut out = QuiverRep { dims: comp_len.clone(), forward: m.forward.clone(), maps: Vec::new() };
    for (s, t, a) in m.arrows(diagram) {
        let mut block = linalg::zeros(comp_len[t], comp_len[s]);
        for c in 0..comp_len[s] {
            let b = &full[s][sub[s].len() + c];
            let img: Vec<Q> = (0..m.dims[t]).map(|r| (0..m.dims[s]).map(|k| a[r][k] * b[k]).sum()).collect();
            let coords = solve_in_basis(&full[t], &img, m.dims[t]).expect("full basis");
            for r in 0..comp_len[t] {
                block[r][c] = coords[sub[t].len() + r];
            }
        }
        out.maps.push(block);
    }
    out
}

/// Kernel, image and cokernel of a morphism given by vertex matrices.
pub struct MorphismData {
    pub image: Vec<i64>,
    pub kernel: QuiverRep,
    pub cokernel: QuiverRep,
}

pub fn morphism_data(diagram: &DynkinDiagram, x: &QuiverRep, y: &QuiverRep, phi: &[Mat]) -> MorphismData {
    let n = diagram.rank();
    let mut ker_bases = Vec::with_capacity(n);
    let mut im_bases = Vec::with_capacity(n);
    let mut image = Vec::with_capacity(n);
    for v in 0..n {
        ker_bases.push(linalg::nullspace(&phi[v], x.dims[v]));
        // column space of phi_v via rref of its transpose
        let mut t: Mat = (0..x.dims[v]).map(|c| (0..y.dims[v]).map(|r| phi[v][r][c]).collect()).collect();
        let piv = linalg::rref(&mut t, y.dims[v]);
        let cols: Vec<Vec<Q>> = t.into_iter().take(piv.len()).collect();
        image.push(cols.len() as i64);
        im_bases.push(cols);
    }
    MorphismData { image, kernel: subrep(diagram, x, &ker_bases), cokernel: quotient_rep(diagram, y, &im_bases) }
}

/// Data of the exchange pair `(L, N)`: the nonzero morphism
/// `h : tau^{-1} L -> N`, unique up to scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeH {
    pub image: Vec<i64>,
    pub kernel: Vec<i64>,
    pub cokernel: Vec<i64>,
    /// Indecomposable summands of the kernel and the cokernel, with repetition.
    pub kernel_summands: Vec<usize>,
    pub cokernel_summands: Vec<usize>,
}

fn summands(ar: &ARQuiver, m: &QuiverRep) -> Vec<usize> {
    if m.total_dim() == 0 {
        return Vec::new();
    }
    let mult = ar.decompose(m);
    mult.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k, c)).collect()
}

fn expand(ar: &ARQuiver, list: &[usize]) -> Vec<i64> {
    let mut v = vec![0i64; ar.diagram().rank()];
    for &k in list {
        for (s, x) in v.iter_mut().zip(ar.root(k)) {
            *s += x;
        }
    }
    v
}

/// Solves for `h : tau^{-1} L -> N` when `Ext^1_C(N, L)` is one-dimensional.
pub fn exchange_pair_h(ar: &ARQuiver, l: ARNode, n: ARNode) -> Result<ExchangeH, Error> {
    let d = ar.diagram();
    let ARNode::Module(nk) = n else {
        return Err(Error::InvalidInput("the second object must be a module".into()));
    };
    if ar.ext_cluster(n, l) != 1 {
        return Err(Error::InvalidInput("Ext^1 in the cluster category is not one-dimensional".into()));
    }
    let source = match ar.tau_inverse(l) {
        ARNode::Module(k) => k,
        ARNode::Shifted(_) => return Err(Error::InvalidInput("tau^{-1} L is not a module".into())),
    };
    let x = ar.rep(source);
    let y = ar.rep(nk);
    let space = hom_space(d, x, y);
    if space.len() != 1 {
        return Err(Error::Inconsistent(format!("Hom(tau^-1 L, N) has dimension {}", space.len())));
    }
    let data = morphism_data(d, x, y, &space[0]);
    let ks = summands(ar, &data.kernel);
    let cs = summands(ar, &data.cokernel);
    if expand(ar, &ks) != data.kernel.dim_vector() || expand(ar, &cs) != data.cokernel.dim_vector() {
        return Err(Error::Inconsistent("decomposition does not add up".into()));
    }
    Ok(ExchangeH {
        image: data.image,
        kernel: data.kernel.dim_vector(),
        cokernel: data.cokernel.dim_vector(),
        kernel_summands: ks,
        cokernel_summands: cs,
    })
}

/// Middle term of the nonsplit extension `0 -> L -> M -> N -> 0`, assuming
/// `Ext^1(N, L)` is one-dimensional, as a list of indecomposable summands.
pub fn extension_middle(ar: &ARQuiver, l: usize, n: usize) -> Result<Vec<usize>, Error> {
    let d = ar.diagram();
    let (lr, nr) = (ar.rep(l), ar.rep(n));
    let dim = d.rank();
    // delta : (phi_v : N_v -> L_v) -> (L_a phi_s - phi_t N_a)_a
    let mut dom_off = vec![0usize; dim + 1];
    for v in 0..dim {
        dom_off[v + 1] = dom_off[v] + lr.dims[v] * nr.dims[v];
    }
    let arrows: Vec<(usize, usize, usize)> = nr.arrows(d).enumerate().map(|(e, (s, t, _))| (e, s, t)).collect();
    let mut cod_off = vec![0usize; arrows.len() + 1];
    for (idx, &(_, s, t)) in arrows.iter().enumerate() {
        cod_off[idx + 1] = cod_off[idx] + lr.dims[t] * nr.dims[s];
    }
    let cod = cod_off[arrows.len()];
    let mut images: Vec<Vec<Q>> = Vec::new();
    for v in 0..dim {
        for r in 0..lr.dims[v] {
            for c in 0..nr.dims[v] {
                let mut img = vec![Q::zero(); cod];
                for (idx, &(e, s, t)) in arrows.iter().enumerate() {
                    let (la, na) = (&lr.maps[e], &nr.maps[e]);
                    if s == v {
                        // (L_a E_rc)[rr][c] = L_a[rr][r]
                        for rr in 0..lr.dims[t] {
                            img[cod_off[idx] + rr * nr.dims[s] + c] += la[rr][r];
                        }
                    }
                    if t == v {
                        // (E_rc N_a)[r][cc] = N_a[c][cc]
                        for cc in 0..nr.dims[s] {
                            img[cod_off[idx] + r * nr.dims[s] + cc] -= na[c][cc];
                        }
                    }
                }
                images.push(img);
            }
        }
    }
    let comp = linalg::complement_basis(&images, cod);
    if comp.len() != 1 {
        return Err(Error::InvalidInput(format!("Ext^1(N, L) has dimension {}", comp.len())));
    }
    let mut eps = vec![Q::zero(); cod];
    eps[comp[0]] = Q::from_integer(1);
    let dims: Vec<usize> = (0..dim).map(|v| lr.dims[v] + nr.dims[v]).collect();
    let mut maps = Vec::new();
    for (e, _) in d.edges().iter().enumerate() {
        let idx = arrows.iter().position(|a| a.0 == e).unwrap();
        let (_, s, t) = arrows[idx];
        let mut block = linalg::zeros(dims[t], dims[s]);
        for r in 0..lr.dims[t] {
            for c in 0..lr.dims[s] {
                block[r][c] = lr.maps[e][r][c];
            }
            for c in 0..nr.dims[s] {
                block[r][lr.dims[s] + c] = eps[cod_off[idx] + r * nr.dims[s] + c];
            }
        }
        for r in 0..nr.dims[t] {
            for c in 0..nr.dims[s] {
                block[lr.dims[t] + r][lr.dims[s] + c] = nr.maps[e][r][c];
            }
        }
        maps.push(block);
    }
    let m = QuiverRep { dims, forward: lr.forward.clone(), maps };
    let parts = summands(ar, &m);
    if expand(ar, &parts) != m.dim_vector() {
        return Err(Error::Inconsistent("extension does not decompose".into()));
    }
    Ok(parts)
}

/// For `L = P(i)[1]`: the kernel and cokernel summands of the nonzero map
/// `N -> I(i)`.
pub fn map_to_injective(ar: &ARQuiver, i: usize, n: usize) -> Result<(Vec<usize>, Vec<usize>), Error> {
    let d = ar.diagram();
    let inj = ar.injective(i);
    let space = hom_space(d, ar.rep(n), ar.rep(inj));
    if space.len() != 1 {
        return Err(Error::InvalidInput(format!("Hom(N, I({})) has dimension {}", i + 1, space.len())));
    }
    let data = morphism_data(d, ar.rep(n), ar.rep(inj), &space[0]);
    Ok((summands(ar, &data.kernel), summands(ar, &data.cokernel)))
}

/// `h : P(i) -> N` for `L = P(i)[1]`.
pub fn map_from_projective(ar: &ARQuiver, i: usize, n: usize) -> Result<ExchangeH, Error> {
    let d = ar.diagram();
    let p = ar.projective(i);
    let space = hom_space(d, ar.rep(p), ar.rep(n));
    if space.len() != 1 {
        return Err(Error::InvalidInput(format!("Hom(P({}), N) has dimension {}", i + 1, space.len())));
    }
    let data = morphism_data(d, ar.rep(p), ar.rep(n), &space[0]);
    let ks = summands(ar, &data.kernel);
    let cs = summands(ar, &data.cokernel);
    Ok(ExchangeH {
        image: data.image,
        kernel: data.kernel.dim_vector(),
        cokernel: data.cokernel.dim_vector(),
        kernel_summands: ks,
        cokernel_summands: cs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::Family;

    fn a2() -> HeightFunction {
        let d = DynkinDiagram::new(Family::A, 2).unwrap();
        HeightFunction::new(&d, vec![1, 0]).unwrap()
    }

    #[test]
    fn a2_word_and_roots() {
        let xi = a2();
        assert_eq!(adapted_word(&xi), vec![0, 1, 0]);
        assert_eq!(positive_roots(&xi).unwrap(), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        let ar = ARQuiver::new(&xi).unwrap();
        assert_eq!(ar.arrows(), &[(1, 0), (2, 1)]);
        assert_eq!(ar.tau(ARNode::Module(0)), ARNode::Module(2));
        assert_eq!(ar.tau(ARNode::Module(2)), ARNode::Shifted(1));
        assert_eq!(ar.projective(0), 1);
        assert_eq!(ar.injective(1), 1);
        assert_eq!(ar.meshes(), vec![Mesh { tau_n: 2, middle: vec![1], n: 0 }]);
    }

    #[test]
    fn a2_homological() {
        let xi = a2();
        let ar = ARQuiver::new(&xi).unwrap();
        // S(1) = beta_1, S(2) = beta_3
        assert_eq!(ar.ext(0, 2), 1);
        assert_eq!(ar.hom(0, 2), 0);
        assert_eq!(ar.socle(ARNode::Module(1)), vec![0, 1]);
        assert_eq!(ar.g_vector(ARNode::Module(2)), vec![1, -1]);
        assert_eq!(ar.g_vector(ARNode::Module(0)), vec![-1, 0]);
        let rep = build_rep(&xi, 1).unwrap();
        assert_eq!(rep.dims, vec![1, 1]);
    }

    #[test]
    fn d4_highest_root_socle() {
        let d = DynkinDiagram::new(Family::D, 4).unwrap();
        let xi = HeightFunction::new(&d, vec![4, 3, 2, 2]).unwrap();
        assert_eq!(adapted_word(&xi)[0], 0);
        let ar = ARQuiver::new(&xi).unwrap();
        let k = ar.index_of_root(&[1, 2, 1, 1]).unwrap();
        assert_eq!(ar.socle(ARNode::Module(k)), vec![0, 0, 1, 1]);
        assert_eq!(ar.hom(k, k), 1);
        assert_eq!(ar.ext(k, k), 0);
    }

    #[test]
    fn t_system_morphism() {
        let d = DynkinDiagram::new(Family::A, 3).unwrap();
        let xi = HeightFunction::new(&d, vec![0, 1, 0]).unwrap();
        let ar = ARQuiver::new(&xi).unwrap();
        let h = map_from_projective(&ar, 1, ar.injective(1)).unwrap();
        assert_eq!(h.image, vec![0, 1, 0]);
        let mut ks = h.kernel_summands.clone();
        ks.sort();
        let mut want = vec![ar.projective(0), ar.projective(2)];
        want.sort();
        assert_eq!(ks, want);
    }
}
