//! Plain-text fixtures: a `# key: value` header followed by one record per
//! line. Monomial fixtures are compared as sets; matrix fixtures entry by
//! entry.
//!
//! ```text
//! # type: D4
//! # xi: 1=4,2=3,3=2,4=2
//! # source: where the rows were transcribed from
//! # mode: exact
//! 1_4 2_1
//! ```
//!
//! Optional keys: `level` (default 1), `mode` (`exact` or `subset`, default
//! `exact`), `kind` (`monomials` or `matrices`), `rows` for matrix fixtures.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cluster;
use crate::grid::{GridQuiver, GridVertex, HeightFunction};
use crate::hl::{hl_table, LevelSeed};
use crate::root::{DynkinDiagram, Family, QCartanTable};
use crate::ymono::YMonomial;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Computed set equals the fixture set.
    Exact,
    /// Every fixture line occurs in the computed set.
    Subset,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Monomials(Vec<YMonomial>),
    /// Rows listed in `rows`; `b` has one column per mutable row, in row order.
    Matrices {
        rows: Vec<GridVertex>,
        b: Vec<Vec<i64>>,
        l: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureFile {
    pub diagram: DynkinDiagram,
    pub xi: HeightFunction,
    pub source: String,
    pub level: usize,
    pub mode: Mode,
    pub body: Body,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FixtureReport {
    pub checked: usize,
    /// Fixture lines the computation does not produce.
    pub missing: Vec<String>,
    /// Computed records absent from an `exact` fixture.
    pub unexpected: Vec<String>,
    pub seeds: Option<usize>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.missing {
            writeln!(f, "- {m}")?;
        }
        for m in &self.unexpected {
            writeln!(f, "+ {m}")?;
        }
        let verdict = if self.passed() { "ok" } else { "DIFF" };
        write!(
            f,
            "{verdict}: {} lines checked, {} missing, {} unexpected",
            self.checked,
            self.missing.len(),
            self.unexpected.len()
        )
    }
}

/// `"D4"`, `"E 6"` or `"A2"`.
pub fn parse_type(s: &str) -> Result<DynkinDiagram, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (fam, rank) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    let family = Family::from_str(fam)?;
    let rank = rank.parse().map_err(|_| Error::InvalidInput(format!("bad rank in type `{s}`")))?;
    DynkinDiagram::new(family, rank)
}

/// `1=4,2=3,...` in any order, or a bare comma list in vertex order.
fn parse_xi(d: &DynkinDiagram, s: &str) -> Result<HeightFunction, Error> {
    if !s.contains('=') {
        return HeightFunction::parse(d, s);
    }
    let mut vals = vec![None; d.rank()];
    for part in s.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::InvalidInput(format!("bad xi entry `{part}`")))?;
        let k: usize = k.trim().parse().map_err(|_| Error::InvalidInput(format!("bad vertex `{k}`")))?;
        let v: i64 = v.trim().parse().map_err(|_| Error::InvalidInput(format!("bad height `{v}`")))?;
        if k == 0 || k > d.rank() || vals[k - 1].replace(v).is_some() {
            return Err(Error::InvalidInput(format!("vertex {k} out of range or repeated")));
        }
    }
    let vals: Option<Vec<i64>> = vals.into_iter().collect();
    HeightFunction::new(d, vals.ok_or_else(|| Error::InvalidInput("xi misses a vertex".into()))?)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    s.split_whitespace().map(|t| t.parse().map_err(|_| Error::InvalidInput(format!("bad integer `{t}`")))).collect()
}

/// `1,-1; 1,-3; ...`
fn parse_rows(s: &str) -> Result<Vec<GridVertex>, Error> {
    s.split(';')
        .map(|r| {
            let v = parse_ints(&r.replace(',', " "))?;
            match v[..] {
                [i, p] if i >= 1 => Ok(GridVertex { i: (i - 1) as usize, p }),
                _ => Err(Error::InvalidInput(format!("bad row `{r}`"))),
            }
        })
        .collect()
}

impl FromStr for FixtureFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let mut header = std::collections::BTreeMap::new();
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(h) = line.strip_prefix('#') {
                if let Some((k, v)) = h.split_once(':') {
                    header.insert(k.trim().to_lowercase(), v.trim().to_string());
                }
            } else if !line.is_empty() {
                lines.push((no + 1, line));
            }
        }
        let get = |k: &str| header.get(k).ok_or_else(|| Error::InvalidInput(format!("fixture header lacks `{k}`")));
        let diagram = parse_type(get("type")?)?;
        if let Some(r) = header.get("rank") {
            if r.parse::<usize>().ok() != Some(diagram.rank()) {
                return Err(Error::InvalidInput(format!("rank `{r}` disagrees with type")));
            }
        }
        let xi = parse_xi(&diagram, get("xi")?)?;
        let level = match header.get("level") {
            Some(l) => l.parse().map_err(|_| Error::InvalidInput(format!("bad level `{l}`")))?,
            None => 1,
        };
        let mode = match header.get("mode").map(String::as_str) {
            None | Some("exact") => Mode::Exact,
            Some("subset") => Mode::Subset,
            Some(m) => return Err(Error::InvalidInput(format!("unknown mode `{m}`"))),
        };
        let body = match header.get("kind").map(String::as_str) {
            None | Some("monomials") => {
                let mons = lines
                    .iter()
                    .map(|(no, l)| l.parse().map_err(|e| Error::InvalidInput(format!("line {no}: {e}"))))
                    .collect::<Result<_, _>>()?;
                Body::Monomials(mons)
            }
            Some("matrices") => {
                let rows = parse_rows(get("rows")?)?;
                let (mut b, mut l) = (Vec::new(), Vec::new());
                for (no, line) in &lines {
                    match line.split_once(char::is_whitespace) {
                        Some(("B", rest)) => b.push(parse_ints(rest)?),
                        Some(("L", rest)) => l.push(parse_ints(rest)?),
                        _ => return Err(Error::InvalidInput(format!("line {no}: expected `B ...` or `L ...`"))),
                    }
                }
                Body::Matrices { rows, b, l }
            }
            Some(k) => return Err(Error::InvalidInput(format!("unknown kind `{k}`"))),
        };
        Ok(FixtureFile { diagram, xi, source: header.get("source").cloned().unwrap_or_default(), level, mode, body })
    }
}

impl FixtureFile {
    pub fn load(path: &std::path::Path) -> Result<Self, Error> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    /// Recompute and diff. `cap` bounds the seed search for level `>= 2`.
    pub fn verify(&self, cap: usize) -> Result<FixtureReport, Error> {
        match &self.body {
            Body::Monomials(mons) => self.verify_monomials(mons, cap),
            Body::Matrices { rows, b, l } => self.verify_matrices(rows, b, l),
        }
    }

    fn verify_monomials(&self, mons: &[YMonomial], cap: usize) -> Result<FixtureReport, Error> {
        let mut report = FixtureReport { checked: mons.len(), ..Default::default() };
        let computed: BTreeSet<YMonomial> = if self.level == 1 {
            hl_table(&self.xi)?.monomials().into_iter().collect()
        } else {
            let ls = LevelSeed::new(&self.xi, self.level)?;
            let e = cluster::enumerate_bfs(&ls.b0, cap)?;
            report.seeds = Some(e.seeds);
            e.vars.iter().map(|v| ls.hw_level_l(v)).collect::<Result<_, _>>()?
        };
        let wanted: BTreeSet<YMonomial> = mons.iter().cloned().collect();
        report.missing = wanted.difference(&computed).map(YMonomial::render).collect();
        if self.mode == Mode::Exact {
            report.unexpected = computed.difference(&wanted).map(YMonomial::render).collect();
        }
        Ok(report)
    }

    fn verify_matrices(&self, rows: &[GridVertex], b: &[Vec<i64>], l: &[Vec<i64>]) -> Result<FixtureReport, Error> {
        let grid = GridQuiver::new(&self.xi, self.level)?;
        let sm = grid.seed_matrices(&QCartanTable::new(&self.diagram));
        let perm: Vec<usize> = rows
            .iter()
            .map(|&v| grid.index_of(v).ok_or_else(|| Error::InvalidInput(format!("row {v:?} is not a grid vertex"))))
            .collect::<Result<_, _>>()?;
        let mutable: Vec<usize> = perm.iter().copied().filter(|&k| !grid.is_frozen(k)).collect();
        let col_of = |k: usize| sm.col_rows.iter().position(|&r| r == k).expect("mutable row has a column");
        let mut report = FixtureReport::default();
        let mut diff = |name: &str, want: &[Vec<i64>], got: Vec<Vec<i64>>| {
            report.checked += want.len();
            for (r, (w, g)) in want.iter().zip(&got).enumerate() {
                if w != g {
                    report.missing.push(format!("{name} row {}: expected {w:?}", r + 1));
                    report.unexpected.push(format!("{name} row {}: computed {g:?}", r + 1));
                }
            }
            if want.len() != got.len() {
                report.missing.push(format!("{name}: expected {} rows, computed {}", want.len(), got.len()));
            }
        };
        let got_b = perm.iter().map(|&r| mutable.iter().map(|&c| sm.b[r][col_of(c)]).collect()).collect();
        diff("B", b, got_b);
        let got_l = perm.iter().map(|&r| perm.iter().map(|&c| sm.l[r][c]).collect()).collect();
        diff("L", l, got_l);
        Ok(report)
    }

    /// Render back to the text format.
    pub fn render(&self) -> String {
        let xi: Vec<String> = self.xi.values().iter().enumerate().map(|(k, v)| format!("{}={v}", k + 1)).collect();
        let mut s =
            format!("# type: {}\n# rank: {}\n# xi: {}\n", self.diagram.name(), self.diagram.rank(), xi.join(","));
        if !self.source.is_empty() {
            s += &format!("# source: {}\n", self.source);
        }
        if self.level != 1 {
            s += &format!("# level: {}\n", self.level);
        }
        s += &format!("# mode: {}\n", if self.mode == Mode::Exact { "exact" } else { "subset" });
        match &self.body {
            Body::Monomials(ms) => {
                for m in ms {
                    s += &format!("{}\n", m.render());
                }
            }
            Body::Matrices { rows, b, l } => {
                let rs: Vec<String> = rows.iter().map(|v| format!("{},{}", v.i + 1, v.p)).collect();
                s += &format!("# kind: matrices\n# rows: {}\n", rs.join("; "));
                let line = |tag: &str, r: &Vec<i64>| {
                    format!("{tag} {}\n", r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
                };
                b.iter().for_each(|r| s += &line("B", r));
                l.iter().for_each(|r| s += &line("L", r));
            }
        }
        s
    }
}
