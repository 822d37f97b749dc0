//! Simply-laced Dynkin diagrams, Cartan matrices and the inverse quantum
//! Cartan matrix.
//!
//! Vertices are `0..rank` internally; every text format shifts them to the
//! Bourbaki labels `1..=rank`.

use std::fmt;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::InvalidInput(format!("unknown Dynkin family `{other}`"))),
        }
    }
}

/// A connected simply-laced Dynkin diagram with Bourbaki labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !valid {
            return Err(Error::InvalidInput(format!("{family}{rank} is not a simply-laced Dynkin type")));
        }
        // 1-based Bourbaki edges, shifted below
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match family {
            Family::A => edges.extend((1..rank).map(|i| (i, i + 1))),
            Family::D => {
                edges.extend((1..rank - 1).map(|i| (i, i + 1)));
                edges.push((rank - 2, rank));
            }
            Family::E => {
                edges.push((1, 3));
                edges.push((2, 4));
                edges.extend((3..rank).map(|i| (i, i + 1)));
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
        let mut adj = vec![Vec::new(); rank];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(DynkinDiagram { family, rank, edges, adj })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Cartan matrix entry `C_ij`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    pub fn coxeter_number(&self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            Family::A => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    /// Number of positive roots, `rank * h / 2`.
    pub fn num_positive_roots(&self) -> usize {
        self.rank * self.coxeter_number() as usize / 2
    }

    /// Simple reflection `s_i` acting on a vector of simple-root coordinates.
    pub fn reflect(&self, i: usize, v: &mut [i64]) {
        let pairing: i64 = (0..self.rank).map(|j| self.cartan(i, j) * v[j]).sum();
        v[i] -= pairing;
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Table of `C~_ij(m)`, the coefficients of the inverse quantum Cartan matrix.
///
/// Values for `1 <= m <= 2h` are computed once by the defining recurrence;
/// every other argument is reduced using `C~(m) = 0` for `m <= 0` and
/// `2h`-periodicity for `m >= 1`.
#[derive(Clone, Debug)]
pub struct QCartanTable {
    diagram: DynkinDiagram,
    period: i64,
    // index: [m - 1][i][j] for m in 1..=2h
    values: Vec<Vec<Vec<i64>>>,
}

impl QCartanTable {
    pub fn new(diagram: &DynkinDiagram) -> Self {
        let period = 2 * diagram.coxeter_number();
        let values = qcartan_by_recurrence(diagram, period as usize);
        QCartanTable { diagram: diagram.clone(), period, values }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn entry(&self, i: usize, j: usize, m: i64) -> i64 {
        if m <= 0 {
            return 0;
        }
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let r = (m - 1).rem_euclid(self.period) as usize;
        self.values[r][a][b]
    }

    /// `N_ij(k) = C~(k+1) + C~(-k-1) - C~(k-1) - C~(-k+1)`.
    pub fn n_func(&self, i: usize, j: usize, k: i64) -> i64 {
        self.entry(i, j, k + 1) + self.entry(i, j, -k - 1) - self.entry(i, j, k - 1) - self.entry(i, j, 1 - k)
    }
}

/// Runs `C~_ij(m+1) = sum_{k~j} C~_ik(m) - C~_ij(m-1)` from the base cases
/// and returns the values for `m = 1..=m_max` as `[m-1][i][j]`.
pub fn qcartan_by_recurrence(diagram: &DynkinDiagram, m_max: usize) -> Vec<Vec<Vec<i64>>> {
    let n = diagram.rank();
    let mut out: Vec<Vec<Vec<i64>>> = Vec::with_capacity(m_max);
    let mut prev = vec![vec![0i64; n]; n];
    let mut cur: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..m_max {
        out.push(cur.clone());
        let mut next = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let s: i64 = diagram.neighbors(j).iter().map(|&k| cur[i][k]).sum();
                next[i][j] = s - prev[i][j];
            }
        }
        prev = cur;
        cur = next;
    }
    out
}

/// Closed form of `C~_ij(m)` in type `A_n`, read off from the generating
/// function `(sum_s z^{j-i+2s+1} - sum_s z^{j+i+2s+1}) / (1 - z^{2(n+1)})`
/// with 1-based `i <= j`.
pub fn qcartan_type_a_closed(n: usize, i: usize, j: usize, m: i64) -> i64 {
    if m <= 0 {
        return 0;
    }
    let (i, j) = if i <= j { (i as i64 + 1, j as i64 + 1) } else { (j as i64 + 1, i as i64 + 1) };
    let n = n as i64;
    let period = 2 * (n + 1);
    let mut total = 0;
    for s in 0..=(n - j) {
        let plus = j - i + 2 * s + 1;
        let minus = j + i + 2 * s + 1;
        if plus <= m && (m - plus) % period == 0 {
            total += 1;
        }
        if minus <= m && (m - minus) % period == 0 {
            total -= 1;
        }
    }
    total
}
