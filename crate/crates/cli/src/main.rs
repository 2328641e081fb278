//! `qc`: runs the qcenter verification suites and emits JSON or CSV.

use clap::{Args, Parser, Subcommand};
use qcenter::center::{hc_iota, resolve_orientation, t_element, two_p_at, CenterError};
use qcenter::frob::{counting_identities, zfr_crosscheck, FrobPair};
use qcenter::modrep::{module_checks, Irrep};
use qcenter::qscalar::{build_context, AtRoot, Generic, Ring};
use qcenter::report::{Report, SCHEMA};
use qcenter::rootlat::{longest_word, RootSystem};
use qcenter::runner::{parse_ells, parse_jset, parse_lambdas, parse_types, run_all, run_suite, Params, RunError, Suite};
use qcenter::uqpbw::{Engine, Pbw};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::rc::Rc;

#[derive(Parser)]
#[command(name = "qc", version, about = "Exact verification suites for quantum groups at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a suite (drinfeld, pbw, rel-zeta, rel-epsilon, theta, center, frob, counting, epsilon) or `all`.
    Run(RunArgs),
    /// Same as `run`.
    Verify(RunArgs),
    /// Root-system tables: roots, d, reduced word, PBW root sequence.
    RootSystem(Common),
    /// An irreducible module: dimension, character and module checks.
    Module(Common),
    /// Central elements from quantum traces.
    #[command(subcommand)]
    Center(CenterCmd),
    /// Frobenius center: counting tables and membership crosschecks.
    #[command(subcommand)]
    Frob(FrobCmd),
}

#[derive(Subcommand)]
enum CenterCmd {
    /// The central element t_M of a module and its Harish-Chandra image.
    TElement {
        #[command(flatten)]
        common: Common,
        /// Comma list of `element`, `iota`.
        #[arg(long, default_value = "iota")]
        emit: String,
    },
}

#[derive(Subcommand)]
enum FrobCmd {
    /// Counting identities over a grid of types and orders.
    Table(Common),
    /// Frobenius-center membership against brute-force centrality.
    Crosscheck(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Root system label such as `B2`, or a bare letter used with --rank.
    #[arg(long = "type", default_value = "A1")]
    type_: String,
    #[arg(long)]
    rank: Option<usize>,
    /// Several types: `A1,B2`, `A1..G2` over the standard list, or `all`.
    #[arg(long)]
    types: Option<String>,
    /// Order of ζ: `N`, `a..b` or a comma list.
    #[arg(long, default_value = "4")]
    ell: String,
    #[arg(long, default_value_t = 3)]
    bound: u16,
    /// Per-root exponent bound of the Frobenius grid.
    #[arg(long)]
    grid: Option<u16>,
    /// Dominant weights, `1,0;0,1`.
    #[arg(long)]
    lambda: Option<String>,
    /// Reduced word for the longest element, 1-based, `1,2,1`.
    #[arg(long)]
    word: Option<String>,
    /// Twist set, 1-based, `1,3`.
    #[arg(long = "J")]
    jset: Option<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (tables only); an optional value is the output path.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    csv: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct RunArgs {
    suite: String,
    #[command(flatten)]
    common: Common,
}

impl Common {
    fn rs(&self) -> Result<RootSystem, RunError> {
        let label = match self.rank {
            Some(n) => format!("{}{n}", self.type_.trim_end_matches(|c: char| c.is_ascii_digit())),
            None => self.type_.clone(),
        };
        RootSystem::parse(&label).map_err(|e| RunError::Usage(e.to_string()))
    }

    fn params(&self) -> Result<Params, RunError> {
        let rs = self.rs()?;
        let ells = parse_ells(&self.ell)?;
        let mut p = Params::new(rs.clone(), ells[0]);
        p.ells = ells;
        p.bound = self.bound;
        p.grid = self.grid;
        p.word = self.word.clone();
        p.seed = self.seed;
        p.samples = self.samples;
        if let Some(l) = &self.lambda {
            p.lambdas = parse_lambdas(l, rs.rank)?;
        }
        if let Some(j) = &self.jset {
            p.jset = Some(parse_jset(j, rs.rank)?);
        }
        if let Some(t) = &self.types {
            p.types = parse_types(t)?;
        }
        Ok(p)
    }

    fn single_ell(&self) -> Result<u32, RunError> {
        match parse_ells(&self.ell)?.as_slice() {
            [l] => Ok(*l),
            _ => Err(RunError::Usage("a single --ell is required".into())),
        }
    }

    fn emit_text(&self, text: &str) -> Result<(), RunError> {
        let path = self.out.as_deref().or(self.csv.as_deref().filter(|p| *p != "-"));
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| RunError::Usage(format!("cannot write {p}: {e}"))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit(&self, v: &Value) -> Result<(), RunError> {
        self.emit_text(&(serde_json::to_string_pretty(v).expect("json") + "\n"))
    }
}

fn reports_json(reps: &[Report], timing: bool) -> Value {
    let ok = reps.iter().all(Report::passed);
    json!({
        "schema": SCHEMA,
        "suite": "all",
        "status": if ok { "pass" } else { "fail" },
        "reports": reps.iter().map(|r| r.to_json(timing)).collect::<Vec<_>>(),
    })
}

fn csv_text<T: serde::Serialize>(rows: &[T]) -> Result<String, RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| RunError::Usage(e.to_string()))?;
    }
    String::from_utf8(w.into_inner().map_err(|e| RunError::Usage(e.to_string()))?).map_err(|e| RunError::Usage(e.to_string()))
}

/// Pass or fail of the emitted reports.
fn cmd_run(a: &RunArgs) -> Result<bool, RunError> {
    let c = &a.common;
    let p = c.params()?;
    let timing = !c.no_timing;
    if a.suite == "all" {
        let reps = run_all(&p, c.jobs)?;
        c.emit(&reports_json(&reps, timing))?;
        return Ok(reps.iter().all(Report::passed));
    }
    let suite: Suite = a.suite.parse()?;
    if suite != Suite::Counting && suite != Suite::Epsilon {
        p.check_contexts()?;
    }
    if suite == Suite::Counting && c.csv.is_some() {
        let types = if p.types.is_empty() { vec![p.rs.clone()] } else { p.types.clone() };
        let rows = counting_identities(&types, p.ells.clone()).map_err(|e| RunError::Context(e.to_string()))?;
        c.emit_text(&csv_text(&rows)?)?;
        return Ok(rows.iter().all(|r| r.skipped.is_some() || (r.identity && r.p_double_matches_table)));
    }
    let rep = run_suite(suite, &p)?;
    c.emit(&rep.to_json(timing))?;
    Ok(rep.passed())
}

fn cmd_root_system(c: &Common) -> Result<bool, RunError> {
    let rs = c.rs()?;
    let pbw = match &c.word {
        Some(w) => Pbw::with_word(rs.clone(), qcenter::rootlat::ReducedWord::parse(&rs, w).map_err(|e| RunError::Usage(e.to_string()))?),
        None => Pbw::new(rs.clone()),
    }
    .map_err(|e| RunError::Context(e.to_string()))?;
    let word = pbw.word.clone();
    c.emit(&json!({
        "schema": SCHEMA,
        "system": rs,
        "longest_word": word.display(),
        "default_word": longest_word(&rs).display(),
        "beta_sequence": pbw.betas,
        "beta_d": pbw.dbeta,
        "rho": rs.rho(),
    }))?;
    Ok(true)
}

fn irreps(c: &Common, e: &Rc<Engine<Generic>>) -> Result<Vec<Irrep>, RunError> {
    let rs = e.pbw.rs();
    let lambdas = match &c.lambda {
        Some(l) => parse_lambdas(l, rs.rank)?,
        None => vec![(0..rs.rank).map(|i| i64::from(i == 0)).collect()],
    };
    lambdas.iter().map(|l| Irrep::build(e.clone(), l, None).map_err(|e| RunError::Context(e.to_string()))).collect()
}

fn generic_engine(c: &Common) -> Result<Rc<Engine<Generic>>, RunError> {
    let pbw = Rc::new(Pbw::new(c.rs()?).map_err(|e| RunError::Context(e.to_string()))?);
    Ok(Rc::new(Engine::new(Generic, pbw).map_err(|e| RunError::Context(e.to_string()))?))
}

fn cmd_module(c: &Common) -> Result<bool, RunError> {
    let e = generic_engine(c)?;
    let mut out = Vec::new();
    let mut ok = true;
    for m in irreps(c, &e)? {
        let cases = module_checks(&m).map_err(|e| RunError::Context(e.to_string()))?;
        ok &= cases.iter().all(|c| !c.failed());
        let ch: Vec<Value> = m.character().into_iter().map(|(w, k)| json!({"weight": w, "mult": k})).collect();
        out.push(json!({
            "highest": m.highest,
            "dimension": m.basis_weights().len(),
            "character": ch,
            "character_invariant": m.character_is_invariant(),
            "cases": cases,
        }));
    }
    c.emit(&json!({"schema": SCHEMA, "type": e.pbw.rs().label, "modules": out}))?;
    Ok(ok)
}

fn cmd_t_element(c: &Common, emit: &str) -> Result<bool, RunError> {
    let ell = c.single_ell()?;
    let rs = c.rs()?;
    build_context(&rs, ell).map_err(|e| RunError::Context(e.to_string()))?;
    let e = generic_engine(c)?;
    let mods = irreps(c, &e)?;
    let refs: Vec<&Irrep> = mods.iter().collect();
    let cerr = |e: CenterError| RunError::Context(e.to_string());
    let t = t_element(&refs).map_err(cerr)?;
    let iota = hc_iota(&e, &t.element).map_err(cerr)?;
    let orientation = resolve_orientation(&refs, std::slice::from_ref(&iota));
    let ring = AtRoot::new(ell);
    let z = Engine::new(ring.clone(), e.pbw.clone()).map_err(|e| RunError::Context(e.to_string()))?;
    let at = z.from_generic(&t.element).map_err(|e| RunError::Context(e.to_string()))?;
    let central_at = z.is_central(&at);
    let mut v = json!({
        "schema": SCHEMA,
        "type": rs.label,
        "ell": ell,
        "lambda": mods.iter().map(|m| m.highest.clone()).collect::<Vec<_>>(),
        "central_generic": true,
        "central_at_zeta": central_at,
        "conventions": {"iota_orientation": orientation},
    });
    for part in emit.split(',').map(str::trim) {
        match part {
            "element" => {
                v["element"] = e.format(&t.element).into();
                v["element_at_zeta"] = z.format(&at).into();
            }
            "iota" => {
                let terms: Vec<Value> = iota.iter().map(|(l, c)| json!({"e2": l, "coeff": e.ring.format(c)})).collect();
                v["iota"] = terms.into();
                if let Some(iz) = two_p_at(&ring, &iota) {
                    v["iota_at_zeta"] = iz.iter().map(|(l, c)| json!({"e2": l, "coeff": ring.format(c)})).collect::<Vec<_>>().into();
                }
            }
            "" => {}
            other => return Err(RunError::Usage(format!("unknown --emit item {other:?}"))),
        }
    }
    c.emit(&v)?;
    Ok(central_at && orientation.is_some())
}

fn cmd_frob(f: &FrobCmd) -> Result<bool, RunError> {
    match f {
        FrobCmd::Table(c) => {
            let a = RunArgs { suite: "counting".into(), common: c.clone() };
            let mut a = a;
            if a.common.types.is_none() {
                a.common.types = Some(a.common.type_.clone());
            }
            cmd_run(&a)
        }
        FrobCmd::Crosscheck(c) => {
            let ell = c.single_ell()?;
            let fp = FrobPair::new(&c.rs()?, ell).map_err(|e| RunError::Context(e.to_string()))?;
            let grid = c.grid.unwrap_or(c.bound);
            let t0 = std::time::Instant::now();
            let mut rep = Report::new("frob-crosscheck").param("type", fp.rs().label.clone()).param("ell", ell).param("bound", grid);
            rep.extend(zfr_crosscheck(&fp, grid).map_err(|e| RunError::Context(e.to_string()))?);
            rep.timing = Some(t0.elapsed());
            c.emit(&rep.to_json(!c.no_timing))?;
            Ok(rep.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Run(a) | Cmd::Verify(a) => cmd_run(a),
        Cmd::RootSystem(c) => cmd_root_system(c),
        Cmd::Module(c) => cmd_module(c),
        Cmd::Center(CenterCmd::TElement { common, emit }) => cmd_t_element(common, emit),
        Cmd::Frob(f) => cmd_frob(f),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qc: {e}");
            ExitCode::from(2)
        }
    }
}
