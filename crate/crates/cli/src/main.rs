//! `hlc`: command-line access to seed matrices, Auslander-Reiten quivers,
//! highest l-weight monomials and cluster variables.
//!
//! Exit status: 0 on success, 2 on invalid input, 1 when a fixture or a
//! requested verification does not match.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hlc_core::ar::ARQuiver;
use hlc_core::cluster::{self, effective_cap};
use hlc_core::fixture::{Body, FixtureFile, Mode};
use hlc_core::grid::GridQuiver;
use hlc_core::hl::{self, hl_table, LevelSeed};
use hlc_core::output;
use hlc_core::{DynkinDiagram, Error, Family, HeightFunction, QCartanTable};

#[derive(Parser)]
#[command(name = "hlc", version, about = "Cluster structures on categories of quantum affine algebra modules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TypeArgs {
    /// Dynkin family: A, D or E.
    family: String,
    /// Rank.
    rank: usize,
}

impl TypeArgs {
    fn diagram(&self) -> Result<DynkinDiagram, Error> {
        DynkinDiagram::new(self.family.parse::<Family>()?, self.rank)
    }
}

#[derive(Args)]
struct XiArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Height function as a comma list in vertex order, e.g. `--xi=-1,0`.
    /// Defaults to the orientation with every edge pointing away from 1.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

impl XiArgs {
    fn height(&self) -> Result<HeightFunction, Error> {
        let d = self.ty.diagram()?;
        match &self.xi {
            Some(s) => HeightFunction::parse(&d, s),
            None => Ok(HeightFunction::from_edge_bits(&d, u64::MAX, 0)),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Inverse quantum Cartan coefficients and the N function.
    Cartan {
        #[command(flatten)]
        ty: TypeArgs,
        /// Largest argument to print (default: 2h).
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Exchange matrix B, the matrix L and the check B^T L = (2I | 0).
    Compat {
        #[command(flatten)]
        x: XiArgs,
        /// Number of rows per column of the grid.
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long)]
        json: bool,
    },
    /// Vertices and arrows of the grid quiver.
    Grid {
        #[command(flatten)]
        x: XiArgs,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Auslander-Reiten quiver of the cluster category.
    Arquiver {
        #[command(flatten)]
        x: XiArgs,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Highest l-weight monomials of every object.
    Hl {
        #[command(flatten)]
        x: XiArgs,
        /// Also compute truncated q-characters.
        #[arg(long)]
        qchar: bool,
        /// Check every mesh exchange identity and the closed form against the
        /// mesh recursion.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        /// Print in fixture format.
        #[arg(long, conflicts_with = "json")]
        fixture: bool,
    },
    /// Breadth-first enumeration of cluster variables.
    ClusterVars {
        #[command(flatten)]
        x: XiArgs,
        /// Grid level; 1 is the Dynkin quiver itself.
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// Maximum number of seeds (HLC_BUDGET takes precedence).
        #[arg(long = "seed-cap", visible_alias = "budget")]
        seed_cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute fixture files and report differences.
    VerifyFixture {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Seed cap for level >= 2 fixtures (HLC_BUDGET takes precedence).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Invalid(String),
    /// A report whose check failed, printed as usual: exit 1.
    Mismatch(String),
    /// The computation itself failed: exit 1.
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Dimension(_) => Failure::Invalid(e.to_string()),
            other => Failure::Failed(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            print!("{msg}");
            if !msg.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Cartan { ty, m, json } => cartan(&ty.diagram()?, m, json),
        Cmd::Compat { x, ell, json } => {
            let g = GridQuiver::new(&x.height()?, ell)?;
            let sm = g.seed_matrices(&QCartanTable::new(x.height()?.diagram()));
            let report = sm.compat();
            if json {
                return Ok(pretty(&output::seed_json(&g, &sm, &report)));
            }
            let rows: Vec<String> = g.vertices().iter().map(|v| format!("({},{})", v.i + 1, v.p)).collect();
            Ok(format!(
                "rows: {}\nB =\n{}L =\n{}B^T L =\n{}compatible: {}\n",
                rows.join(" "),
                output::matrix_text(&sm.b),
                output::matrix_text(&sm.l),
                output::matrix_text(&report.product),
                report.ok
            ))
        }
        Cmd::Grid { x, ell, dot, json } => {
            let g = GridQuiver::new(&x.height()?, ell)?;
            if dot {
                return Ok(output::grid_dot(&g));
            }
            let name = |k: usize| format!("({},{})", g.vertices()[k].i + 1, g.vertices()[k].p);
            if json {
                let verts: Vec<String> = (0..g.vertices().len()).map(name).collect();
                let arrows: Vec<[String; 2]> = g.arrows().iter().map(|&(a, b)| [name(a), name(b)]).collect();
                let frozen: Vec<String> = (0..g.vertices().len()).filter(|&k| g.is_frozen(k)).map(name).collect();
                return Ok(pretty(&serde_json::json!({"vertices": verts, "frozen": frozen, "arrows": arrows})));
            }
            let mut s = String::new();
            for k in 0..g.vertices().len() {
                s += &format!("{}{}\n", name(k), if g.is_frozen(k) { " frozen" } else { "" });
            }
            for &(a, b) in g.arrows() {
                s += &format!("{} -> {}\n", name(a), name(b));
            }
            Ok(s)
        }
        Cmd::Arquiver { x, dot, json } => {
            let ar = ARQuiver::new(&x.height()?)?;
            if dot {
                return Ok(output::ar_dot(&ar));
            }
            if json {
                return Ok(pretty(&output::ar_json(&ar)));
            }
            let mut s =
                format!("word: {}\n", ar.word().iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "));
            for n in ar.nodes() {
                let dims: Vec<String> = ar.dims(n).iter().map(i64::to_string).collect();
                s += &format!("{n}\tdims {}\ttau {}\n", dims.join(""), ar.tau(n));
            }
            Ok(s)
        }
        Cmd::Hl { x, qchar, verify, json, fixture } => hl_cmd(&x.height()?, qchar, verify, json, fixture),
        Cmd::ClusterVars { x, ell, seed_cap, json } => {
            let cap = effective_cap(seed_cap);
            let xi = x.height()?;
            let ls = LevelSeed::new(&xi, ell)?;
            let e = cluster::enumerate_bfs(&ls.b0, cap)?;
            if json {
                return Ok(pretty(&output::cluster_json(&e)));
            }
            let mut s =
                format!("seeds: {}\nvariables: {} ({} non-initial)\n", e.seeds, e.vars.len(), e.non_initial().count());
            for v in &e.vars {
                let g: Vec<String> = v.g.iter().map(i64::to_string).collect();
                s += &format!("g=({})\t{}\n", g.join(","), ls.hw_level_l(v)?.render());
            }
            Ok(s)
        }
        Cmd::VerifyFixture { paths, budget, json } => {
            let cap = effective_cap(budget);
            let mut out = String::new();
            let mut reports = Vec::new();
            let mut all_ok = true;
            for p in &paths {
                let f = FixtureFile::load(p)?;
                let r = f.verify(cap)?;
                all_ok &= r.passed();
                out += &format!("{}\n{r}\n", p.display());
                reports.push(serde_json::json!({"path": p.display().to_string(), "passed": r.passed(), "report": r}));
            }
            if json {
                out = pretty(&serde_json::Value::Array(reports));
            }
            if all_ok {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
    }
}

fn cartan(d: &DynkinDiagram, m: Option<i64>, json: bool) -> Result<String, Failure> {
    let t = QCartanTable::new(d);
    let m_max = m.unwrap_or(t.period());
    if m_max < 1 {
        return Err(Failure::Invalid("--m must be at least 1".into()));
    }
    if json {
        return Ok(pretty(&output::cartan_json(&t, m_max)));
    }
    let n = d.rank();
    let mut s = format!("{d}, h = {}, period 2h = {}\n", d.coxeter_number(), t.period());
    for k in 1..=m_max {
        let c: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| t.entry(i, j, k)).collect()).collect();
        let nn: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| t.n_func(i, j, k)).collect()).collect();
        let flag = if k > t.period() { format!("  (periodic: equals m = {})", k - t.period()) } else { String::new() };
        s += &format!("m = {k}{flag}\nC~ =\n{}N =\n{}", output::matrix_text(&c), output::matrix_text(&nn));
    }
    Ok(s)
}

fn hl_cmd(xi: &HeightFunction, qchar: bool, verify: bool, json: bool, fixture: bool) -> Result<String, Failure> {
    let mut t = hl_table(xi)?;
    if qchar || verify {
        t.compute_qchars()?;
    }
    let mut problems = Vec::new();
    if verify {
        let by_mesh = hl::hw_by_meshes(&t.ar)?;
        for (node, m) in &by_mesh {
            if &hl::hw_closed(&t.ar, *node)? != m {
                problems.push(format!("closed form and mesh recursion differ at {node}"));
            }
        }
        for mesh in t.ar.meshes() {
            if !t.verify_mesh_identity(&mesh)? {
                problems.push(format!("mesh identity fails at M{}", mesh.n + 1));
            }
        }
    }
    let body = if json {
        pretty(&output::hl_json(&t))
    } else if fixture {
        FixtureFile {
            diagram: xi.diagram().clone(),
            xi: xi.clone(),
            source: "hlc hl".into(),
            level: 1,
            mode: Mode::Exact,
            body: Body::Monomials(t.monomials()),
        }
        .render()
    } else {
        let mut s = String::new();
        for r in &t.records {
            s += &format!("{}\t{}", r.node, r.hw.render());
            if let Some(q) = &r.qchar {
                s += &format!("\t{}", q.render());
            }
            s.push('\n');
        }
        s
    };
    if verify {
        if problems.is_empty() {
            let summary = format!("verified: {} nodes, {} meshes\n", t.records.len(), t.ar.meshes().len());
            return Ok(if json { body } else { body + &summary });
        }
        return Err(Failure::Mismatch(body + &problems.join("\n")));
    }
    Ok(body)
}
