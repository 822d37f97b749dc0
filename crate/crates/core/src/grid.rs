//! Height functions, the grid quivers with a frozen bottom row, and the
//! matrices `B` and `L` of their initial quantum seed.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::root::{DynkinDiagram, QCartanTable};
use crate::Error;

/// Integer labeling of the Dynkin vertices that changes by one across every
/// edge. The orientation it induces has `i -> j` iff `xi(i) = xi(j) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    diagram: DynkinDiagram,
    values: Vec<i64>,
}

impl HeightFunction {
    pub fn new(diagram: &DynkinDiagram, values: Vec<i64>) -> Result<Self, Error> {
        if values.len() != diagram.rank() {
            return Err(Error::InvalidInput(format!(
                "height function has {} values, {} needs {}",
                values.len(),
                diagram,
                diagram.rank()
            )));
        }
        for &(a, b) in diagram.edges() {
            if (values[a] - values[b]).abs() != 1 {
                return Err(Error::InvalidInput(format!(
                    "xi({})={} and xi({})={} differ by more than one along an edge",
                    a + 1,
                    values[a],
                    b + 1,
                    values[b]
                )));
            }
        }
        Ok(HeightFunction { diagram: diagram.clone(), values })
    }

    /// Parses a comma separated list aligned with the Bourbaki order.
    pub fn parse(diagram: &DynkinDiagram, text: &str) -> Result<Self, Error> {
        let values = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad height value `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(diagram, values)
    }

    /// Height function of an orientation given by one bit per edge, in the
    /// order of [`DynkinDiagram::edges`]; bit set means the edge points from
    /// its smaller to its larger endpoint. Vertex 1 gets height `base`.
    pub fn from_edge_bits(diagram: &DynkinDiagram, bits: u64, base: i64) -> Self {
        let n = diagram.rank();
        let mut vals: Vec<Option<i64>> = vec![None; n];
        vals[0] = Some(base);
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(a, b)) in diagram.edges().iter().enumerate() {
                let down = bits >> e & 1 == 1; // a -> b means xi(a) = xi(b) + 1
                match (vals[a], vals[b]) {
                    (Some(x), None) => {
                        vals[b] = Some(if down { x - 1 } else { x + 1 });
                        changed = true;
                    }
                    (None, Some(y)) => {
                        vals[a] = Some(if down { y + 1 } else { y - 1 });
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let values = vals.into_iter().map(|v| v.expect("Dynkin diagrams are connected")).collect();
        HeightFunction { diagram: diagram.clone(), values }
    }

    /// One height function per orientation, with `xi(1) = base`.
    pub fn all_orientations(diagram: &DynkinDiagram, base: i64) -> Vec<Self> {
        let e = diagram.edges().len();
        (0..1u64 << e).map(|bits| Self::from_edge_bits(diagram, bits, base)).collect()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> i64 {
        self.values[i]
    }

    /// `i -> j` in the induced orientation.
    pub fn arrow(&self, i: usize, j: usize) -> bool {
        self.diagram.adjacent(i, j) && self.values[i] == self.values[j] + 1
    }

    pub fn shifted(&self, s: i64) -> Self {
        HeightFunction { diagram: self.diagram.clone(), values: self.values.iter().map(|v| v + s).collect() }
    }

    pub fn render(&self) -> String {
        self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Every vertex is a local maximum or a local minimum.
    pub fn is_sink_source(&self) -> bool {
        (0..self.diagram.rank()).all(|i| {
            let nb = self.diagram.neighbors(i);
            nb.iter().all(|&j| self.values[j] < self.values[i]) || nb.iter().all(|&j| self.values[j] > self.values[i])
        })
    }
}

impl fmt::Display for HeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render())
    }
}

/// Vertex `(i, p)` of the grid. Ordered by `i` ascending, then `p` descending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GridVertex {
    pub i: usize,
    pub p: i64,
}

impl Ord for GridVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.i.cmp(&other.i).then(other.p.cmp(&self.p))
    }
}

impl PartialOrd for GridVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.p)
    }
}

/// The quiver with vertices `(i, p)`, `p = xi(i), xi(i)-2, ..., xi(i)-2l`,
/// and arrows `(i,r) -> (j,s)` whenever `C_ij != 0` and `s = r + C_ij`.
#[derive(Clone, Debug)]
pub struct GridQuiver {
    xi: HeightFunction,
    ell: usize,
    vertices: Vec<GridVertex>,
    frozen: Vec<bool>,
    arrows: Vec<(usize, usize)>,
}

impl GridQuiver {
    pub fn new(xi: &HeightFunction, ell: usize) -> Result<Self, Error> {
        if ell == 0 {
            return Err(Error::InvalidInput("grid level must be at least 1".into()));
        }
        let d = xi.diagram();
        let mut vertices = Vec::new();
        for i in 0..d.rank() {
            for k in 0..=ell as i64 {
                vertices.push(GridVertex { i, p: xi.at(i) - 2 * k });
            }
        }
        vertices.sort();
        let frozen: Vec<bool> = vertices.iter().map(|v| v.p == xi.at(v.i) - 2 * ell as i64).collect();
        let pos = |v: GridVertex| vertices.binary_search(&v).ok();
        let mut arrows = Vec::new();
        for (a, &u) in vertices.iter().enumerate() {
            for j in 0..d.rank() {
                let c = d.cartan(u.i, j);
                if c == 0 {
                    continue;
                }
                if let Some(b) = pos(GridVertex { i: j, p: u.p + c }) {
                    arrows.push((a, b));
                }
            }
        }
        arrows.sort_unstable();
        Ok(GridQuiver { xi: xi.clone(), ell, vertices, frozen, arrows })
    }

    pub fn height(&self) -> &HeightFunction {
        &self.xi
    }

    pub fn level(&self) -> usize {
        self.ell
    }

    pub fn vertices(&self) -> &[GridVertex] {
        &self.vertices
    }

    pub fn is_frozen(&self, k: usize) -> bool {
        self.frozen[k]
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn index_of(&self, v: GridVertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Row indices of the mutable vertices in canonical order.
    pub fn mutable_rows(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&k| !self.frozen[k]).collect()
    }

    /// `b_uv = #arrows(v -> u) - #arrows(u -> v)`; rows are all vertices,
    /// columns the mutable ones.
    pub fn b_matrix(&self) -> Vec<Vec<i64>> {
        let cols = self.mutable_rows();
        let m = self.vertices.len();
        let mut full = vec![vec![0i64; m]; m];
        for &(a, b) in &self.arrows {
            full[b][a] += 1;
            full[a][b] -= 1;
        }
        (0..m).map(|u| cols.iter().map(|&v| full[u][v]).collect()).collect()
    }

    /// The skew-symmetric matrix `L` built from the function `N`.
    pub fn l_matrix(&self, table: &QCartanTable) -> Vec<Vec<i64>> {
        let xi = &self.xi;
        let m = self.vertices.len();
        let mut l = vec![vec![0i64; m]; m];
        for (a, u) in self.vertices.iter().enumerate() {
            for (b, v) in self.vertices.iter().enumerate() {
                let mut s = 0;
                let mut r = u.p;
                while r <= xi.at(u.i) {
                    let mut t = v.p;
                    while t <= xi.at(v.i) {
                        s += table.n_func(u.i, v.i, t - r);
                        t += 2;
                    }
                    r += 2;
                }
                l[a][b] = s;
            }
        }
        l
    }

    pub fn seed_matrices(&self, table: &QCartanTable) -> SeedMatrices {
        SeedMatrices {
            vertices: self.vertices.clone(),
            col_rows: self.mutable_rows(),
            b: self.b_matrix(),
            l: self.l_matrix(table),
        }
    }

    /// The 3-cycles `(i,r) -> (j,r-1) -> (i,r-2) -> (i,r)` among mutable
    /// vertices, as triples of vertex indices.
    pub fn potential_cycles(&self) -> Vec<[usize; 3]> {
        let d = self.xi.diagram();
        let mut out = Vec::new();
        for (a, &u) in self.vertices.iter().enumerate() {
            if self.frozen[a] {
                continue;
            }
            for &j in d.neighbors(u.i) {
                let b = self.index_of(GridVertex { i: j, p: u.p - 1 });
                let c = self.index_of(GridVertex { i: u.i, p: u.p - 2 });
                if let (Some(b), Some(c)) = (b, c) {
                    if !self.frozen[b] && !self.frozen[c] {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }
}

/// Exchange matrix and skew-symmetric form of a quantum seed, rows in the
/// canonical vertex order and columns for the mutable vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedMatrices {
    pub vertices: Vec<GridVertex>,
    /// Row index of each column's vertex.
    pub col_rows: Vec<usize>,
    pub b: Vec<Vec<i64>>,
    pub l: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub ok: bool,
    pub product: Vec<Vec<i64>>,
    pub diagonal: Vec<i64>,
}

fn transpose_times(b: &[Vec<i64>], l: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = b.len();
    let n = b.first().map_or(0, |r| r.len());
    let cols = l.first().map_or(0, |r| r.len());
    let mut p = vec![vec![0i64; cols]; n];
    for k in 0..n {
        for v in 0..cols {
            p[k][v] = (0..m).map(|u| b[u][k] * l[u][v]).sum();
        }
    }
    p
}

/// Checks `B^T L = (2 I | 0)`: twice the identity on the mutable columns and
/// zero on the frozen ones.
pub fn check_compatible(b: &[Vec<i64>], col_rows: &[usize], l: &[Vec<i64>]) -> Result<CompatReport, Error> {
    let m = b.len();
    if l.len() != m || l.iter().any(|r| r.len() != m) || b.iter().any(|r| r.len() != col_rows.len()) {
        return Err(Error::Dimension("B and L do not fit together".into()));
    }
    let product = transpose_times(b, l);
    let mut ok = true;
    let mut diagonal = Vec::with_capacity(col_rows.len());
    for (k, row) in product.iter().enumerate() {
        diagonal.push(row[col_rows[k]]);
        for (v, &x) in row.iter().enumerate() {
            let want = if v == col_rows[k] { 2 } else { 0 };
            if x != want {
                ok = false;
            }
        }
    }
    Ok(CompatReport { ok, product, diagonal })
}

fn e_matrix(b: &[Vec<i64>], col_rows: &[usize], k: usize, eps: i64) -> Vec<Vec<i64>> {
    let m = b.len();
    let rk = col_rows[k];
    let mut e: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
    for (i, row) in e.iter_mut().enumerate() {
        row[rk] = if i == rk { -1 } else { (-eps * b[i][k]).max(0) };
    }
    e
}

fn f_matrix(b: &[Vec<i64>], col_rows: &[usize], k: usize, eps: i64) -> Vec<Vec<i64>> {
    let n = col_rows.len();
    let rk = col_rows[k];
    let mut f: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for j in 0..n {
        f[k][j] = if j == k { -1 } else { (eps * b[rk][j]).max(0) };
    }
    f
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect()).collect()
}

fn check_column(col_rows: &[usize], k: usize) -> Result<(), Error> {
    if k >= col_rows.len() {
        return Err(Error::InvalidInput(format!("column {k} is not a mutable direction")));
    }
    Ok(())
}

/// Matrix mutation `B' = E_eps B F_eps` in direction `k` (a column index).
pub fn mutate_b_eps(b: &[Vec<i64>], col_rows: &[usize], k: usize, eps: i64) -> Result<Vec<Vec<i64>>, Error> {
    check_column(col_rows, k)?;
    let e = e_matrix(b, col_rows, k, eps);
    let f = f_matrix(b, col_rows, k, eps);
    Ok(matmul(&matmul(&e, b), &f))
}

pub fn mutate_b(b: &[Vec<i64>], col_rows: &[usize], k: usize) -> Result<Vec<Vec<i64>>, Error> {
    mutate_b_eps(b, col_rows, k, 1)
}

/// `L' = E_eps^T L E_eps`; the input pair must be compatible.
pub fn mutate_lambda(
    b: &[Vec<i64>],
    col_rows: &[usize],
    l: &[Vec<i64>],
    k: usize,
    eps: i64,
) -> Result<Vec<Vec<i64>>, Error> {
    check_column(col_rows, k)?;
    if !check_compatible(b, col_rows, l)?.ok {
        return Err(Error::InvalidInput("B and L are not compatible".into()));
    }
    let e = e_matrix(b, col_rows, k, eps);
    let et: Vec<Vec<i64>> = (0..e.len()).map(|i| e.iter().map(|r| r[i]).collect()).collect();
    Ok(matmul(&matmul(&et, l), &e))
}

impl SeedMatrices {
    pub fn compat(&self) -> CompatReport {
        check_compatible(&self.b, &self.col_rows, &self.l).expect("seed matrices have matching shapes")
    }

    pub fn mutate(&self, k: usize) -> Result<SeedMatrices, Error> {
        let l = mutate_lambda(&self.b, &self.col_rows, &self.l, k, 1)?;
        let b = mutate_b(&self.b, &self.col_rows, k)?;
        Ok(SeedMatrices { vertices: self.vertices.clone(), col_rows: self.col_rows.clone(), b, l })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::Family;

    fn a2_example() -> (GridQuiver, QCartanTable) {
        let d = DynkinDiagram::new(Family::A, 2).unwrap();
        let xi = HeightFunction::new(&d, vec![-1, 0]).unwrap();
        (GridQuiver::new(&xi, 2).unwrap(), QCartanTable::new(&d))
    }

    #[test]
    fn rejects_bad_heights() {
        let d = DynkinDiagram::new(Family::A, 3).unwrap();
        assert!(HeightFunction::new(&d, vec![0, 2, 1]).is_err());
        assert!(HeightFunction::new(&d, vec![0, 1]).is_err());
        assert!(HeightFunction::parse(&d, "0,-1,0").is_ok());
    }

    #[test]
    fn level_one_is_dynkin_quiver() {
        let d = DynkinDiagram::new(Family::A, 3).unwrap();
        let xi = HeightFunction::new(&d, vec![0, -1, 0]).unwrap();
        let g = GridQuiver::new(&xi, 1).unwrap();
        assert_eq!(g.vertices().len(), 6);
        let top: Vec<usize> = g.mutable_rows();
        let mut arrows: Vec<(usize, usize)> = g
            .arrows()
            .iter()
            .filter(|(a, b)| top.contains(a) && top.contains(b))
            .map(|&(a, b)| (g.vertices()[a].i, g.vertices()[b].i))
            .collect();
        arrows.sort();
        assert_eq!(arrows, vec![(0, 1), (2, 1)]);
        assert!(g.potential_cycles().is_empty());
    }

    #[test]
    fn a2_level_two_cycles() {
        let (g, _) = a2_example();
        assert_eq!(g.vertices().len(), 6);
        let cyc = g.potential_cycles();
        // (1,-1) -> (2,-2) -> (1,-3) and (2,0) -> (1,-1) -> (2,-2)
        let named: Vec<Vec<GridVertex>> = cyc.iter().map(|c| c.iter().map(|&k| g.vertices()[k]).collect()).collect();
        assert_eq!(named.len(), 2);
        for c in &named {
            assert_eq!(c[0].i, c[2].i);
            assert_eq!(c[0].p - 2, c[2].p);
        }
    }

    #[test]
    fn a2_compatible() {
        let (g, t) = a2_example();
        let s = g.seed_matrices(&t);
        let rep = s.compat();
        assert!(rep.ok);
        assert_eq!(rep.diagonal, vec![2, 2, 2, 2]);
        let mut bad = s.clone();
        bad.l[0][1] += 1;
        assert!(!bad.compat().ok);
    }

    #[test]
    fn rank_two_flip() {
        let b = vec![vec![0, 1], vec![-1, 0]];
        assert_eq!(mutate_b(&b, &[0, 1], 0).unwrap(), vec![vec![0, -1], vec![1, 0]]);
        assert!(mutate_b(&b, &[0, 1], 2).is_err());
    }

    #[test]
    fn mutation_involution_and_eps() {
        let (g, t) = a2_example();
        let s = g.seed_matrices(&t);
        for k in 0..s.col_rows.len() {
            let once = s.mutate(k).unwrap();
            assert!(once.compat().ok);
            assert_eq!(once.mutate(k).unwrap(), s);
            let lm = mutate_lambda(&s.b, &s.col_rows, &s.l, k, -1).unwrap();
            assert_eq!(lm, once.l);
            assert_eq!(mutate_b_eps(&s.b, &s.col_rows, k, -1).unwrap(), once.b);
        }
    }
}
