//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use qcenter::center::verify_center;
use qcenter::frob::{counting_identities, m_from_table, standard_types, txi_cases, xi_cases, zfr_crosscheck, FrobPair};
use qcenter::qscalar::{build_context, verify_epsilon, AtRoot, Generic};
use qcenter::report::{Case, Report};
use qcenter::rootlat::RootSystem;
use qcenter::uqpbw::suites::{drinfeld_cases, serre_cases, verify_pbw};
use qcenter::uqpbw::{Engine, Pbw};
use qcenter::uzeta::{root_vector_signs, valid_twist_sets, verify_epsilon_relations, verify_theta, verify_zeta_relations, RootData};
use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::rc::Rc;
use std::time::{Duration, Instant};

const SEED: u64 = 7;

fn rs(label: &str) -> RootSystem {
    RootSystem::parse(label).unwrap()
}

fn pbw(label: &str) -> Rc<Pbw> {
    Rc::new(Pbw::new(rs(label)).unwrap())
}

/// The relation grid shared by criteria 4-6.
fn relation_grid() -> Vec<(&'static str, u32)> {
    let mut g = Vec::new();
    g.extend([3, 4, 6, 8].map(|l| ("A1", l)));
    g.extend([3, 4, 5, 6, 8].map(|l| ("A2", l)));
    g.extend([6, 8].map(|l| ("B2", l)));
    g.push(("G2", 9));
    g
}

/// Outcome of one criterion: pass flag and a one-line summary.
struct Outcome {
    ok: bool,
    detail: String,
}

fn tally(cases: &[Case]) -> Outcome {
    let failed: Vec<&Case> = cases.iter().filter(|c| c.failed()).collect();
    let mut detail = format!("{} checks, {} failed", cases.len(), failed.len());
    if let Some(c) = failed.first() {
        detail.push_str(&format!("; first: {} {}", c.name, c.detail.clone().unwrap_or_default()));
    }
    Outcome { ok: failed.is_empty() && !cases.is_empty(), detail }
}

fn within(o: Outcome, spent: Duration, limit: Duration) -> Outcome {
    let ok = o.ok && spent <= limit;
    Outcome { ok, detail: format!("{} in {:.1}s (limit {}s)", o.detail, spent.as_secs_f64(), limit.as_secs()) }
}

fn drinfeld_diagonality() -> Outcome {
    let t0 = Instant::now();
    let cases: Vec<Case> = ["A2", "B2"].iter().flat_map(|l| drinfeld_cases(&pbw(l), 3)).collect();
    within(tally(&cases), t0.elapsed(), Duration::from_secs(120))
}

fn serre_radical() -> Outcome {
    tally(&["A2", "B2"].iter().flat_map(|l| serre_cases(&pbw(l))).collect::<Vec<_>>())
}

fn engine_laws() -> Outcome {
    let mut cases = Vec::new();
    for l in ["A1", "A2", "B2"] {
        cases.extend(verify_pbw(pbw(l), 100, SEED).unwrap().cases);
    }
    tally(&cases)
}

fn rel_zeta() -> Outcome {
    let mut cases = Vec::new();
    let mut slowest = Duration::ZERO;
    for (t, l) in relation_grid() {
        let t0 = Instant::now();
        let data = RootData::new(&rs(t), l).unwrap();
        cases.extend(verify_zeta_relations(&data, 3, None).unwrap().cases);
        slowest = slowest.max(t0.elapsed());
    }
    within(tally(&cases), slowest, Duration::from_secs(300))
}

fn rel_epsilon() -> Outcome {
    let mut cases = Vec::new();
    let mut signs = BTreeSet::new();
    for (t, l) in relation_grid() {
        let data = RootData::new(&rs(t), l).unwrap();
        signs.insert(data.ctx.epsilon);
        cases.extend(verify_epsilon_relations(&data, None).unwrap().cases);
    }
    let o = tally(&cases);
    Outcome { ok: o.ok && signs.len() == 2, detail: format!("{}; epsilon values {signs:?}", o.detail) }
}

fn epsilon_table() -> Outcome {
    let grid: Vec<(RootSystem, u32)> = relation_grid().into_iter().map(|(t, l)| (rs(t), l)).collect();
    let r = verify_epsilon(&grid);
    let skipped = r.counts().2;
    let o = tally(&r.cases);
    Outcome { ok: o.ok && skipped == 0, detail: o.detail }
}

/// Center reports for the contexts of criteria 7 and 8, with the wall time.
fn center_reports() -> (Vec<Report>, Duration) {
    let t0 = Instant::now();
    let mut out = Vec::new();
    for ell in [3, 4, 6] {
        out.push(center_report("A1", ell, &[vec![1], vec![2], vec![3]]));
    }
    for ell in [4, 5] {
        out.push(center_report("A2", ell, &[vec![1, 0], vec![0, 1]]));
    }
    (out, t0.elapsed())
}

fn center_report(label: &str, ell: u32, lambdas: &[Vec<i64>]) -> Report {
    let p = pbw(label);
    let g = Rc::new(Engine::new(Generic, p.clone()).unwrap());
    let z = Engine::new(AtRoot::new(ell), p).unwrap();
    verify_center(g, &z, lambdas).unwrap()
}

fn select(reps: &[Report], keys: &[&str]) -> Vec<Case> {
    reps.iter().flat_map(|r| r.cases.iter()).filter(|c| keys.iter().any(|k| c.name.contains(k))).cloned().collect()
}

fn t_centrality(reps: &[Report], spent: Duration) -> Outcome {
    let cases = select(reps, &["central (generic)", "central at zeta"]);
    // A1: three modules at three orders; A2: two at two. Each certified generically and at zeta.
    let o = tally(&cases);
    let o = Outcome { ok: o.ok && cases.len() == 2 * (3 * 3 + 2 * 2), detail: o.detail };
    within(o, spent, Duration::from_secs(600))
}

fn hc_image(reps: &[Report]) -> Outcome {
    let cases = select(reps, &["iota", "character sum"]);
    let orientations: BTreeSet<String> = reps.iter().map(|r| r.conventions["iota_orientation"].to_string()).collect();
    let o = tally(&cases);
    Outcome { ok: o.ok && orientations.len() == 1 && !orientations.contains("null"), detail: format!("{}; orientation {orientations:?}", o.detail) }
}

fn frob_contexts() -> Vec<(&'static str, u32)> {
    let mut g = Vec::new();
    g.extend([3, 4, 6, 8].map(|l| ("A1", l)));
    g.extend([3, 4, 5, 6, 8].map(|l| ("A2", l)));
    g.extend([6, 8].map(|l| ("B2", l)));
    g
}

fn txi_structure() -> Outcome {
    let mut cases = Vec::new();
    for (t, l) in frob_contexts() {
        let fp = FrobPair::new(&rs(t), l).unwrap();
        cases.extend(txi_cases(&fp, 50, SEED));
    }
    let pairs = cases.iter().filter(|c| c.name.contains("multiplicative")).count();
    let o = tally(&cases);
    Outcome { ok: o.ok && pairs == frob_contexts().len(), detail: o.detail }
}

fn zfr_grid() -> Outcome {
    let mut cases = Vec::new();
    for (t, l, bound) in [("A1", 3, 2), ("A1", 4, 2), ("A1", 6, 2), ("B2", 6, 1)] {
        let fp = FrobPair::new(&rs(t), l).unwrap();
        let all = zfr_crosscheck(&fp, bound).unwrap();
        cases.extend(all.into_iter().filter(|c| c.name.starts_with("membership <=> central") || c.name.starts_with("odd ell")));
    }
    let odd = cases.iter().filter(|c| c.name.starts_with("odd ell")).count();
    let o = tally(&cases);
    Outcome { ok: o.ok && odd == 1, detail: o.detail }
}

fn counting() -> Outcome {
    let t0 = Instant::now();
    let rows = counting_identities(&standard_types(), 2..=24).unwrap();
    let mut bad = Vec::new();
    let mut used = 0;
    for r in &rows {
        if r.skipped.is_some() {
            continue;
        }
        used += 1;
        let t = rs(&r.type_label);
        let ctx = build_context(&t, r.ell).unwrap();
        let degree_ok = r.degree == r.m as u128 * ctx.roots.iter().map(|o| o.r as u128).product::<u128>();
        if !(r.identity && r.p_double_matches_table && r.m == m_from_table(&t, r.ell) && degree_ok) {
            bad.push(format!("{} ell={}", r.type_label, r.ell));
        }
    }
    let o = Outcome { ok: bad.is_empty() && used > 0, detail: format!("{used} rows with r > d, {} failed {bad:?}", bad.len()) };
    within(o, t0.elapsed(), Duration::from_secs(60))
}

fn theta_twist() -> Outcome {
    let mut cases = Vec::new();
    let mut sign_notes = Vec::new();
    for t in ["A1", "A2", "B2"] {
        let sys = rs(t);
        let p = pbw(t);
        let mut seen: BTreeMap<Vec<i64>, BTreeSet<(Option<i64>, Option<i64>)>> = BTreeMap::new();
        for j in valid_twist_sets(&sys) {
            cases.extend(verify_theta(&sys, 6, Some(j.clone()), None, 12, SEED).unwrap().cases);
            for s in root_vector_signs(&p, &j).unwrap() {
                seen.entry(s.root).or_default().insert((s.e_sign, s.sf_sign));
            }
        }
        let varying = seen.values().filter(|v| v.len() > 1).count();
        sign_notes.push(format!("{t}: {} roots, {varying} with J-dependent signs", seen.len()));
        cases.push(Case::new(format!("{t} signs recorded for every root"), seen.len() == sys.num_positive() && seen.values().flatten().all(|(e, f)| e.is_some() && f.is_some())));
        let fp = FrobPair::new(&sys, 6).unwrap();
        cases.extend(xi_cases(&fp, 10, SEED).unwrap());
    }
    let o = tally(&cases);
    Outcome { ok: o.ok, detail: format!("{}; {}", o.detail, sign_notes.join("; ")) }
}

fn sign_invariance(reps: &[Report]) -> Outcome {
    let cases = select(reps, &["sign group fixes"]);
    let o = tally(&cases);
    Outcome { ok: o.ok && cases.len() == reps.len(), detail: o.detail }
}

fn main() -> ExitCode {
    for (t, l) in relation_grid() {
        build_context(&rs(t), l).expect("grid satisfies r > d");
    }
    let mut lines: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut run = |n: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let o = f();
        println!("criterion {n:>2} {}: {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        lines.push((n, name, o));
    };
    run(1, "Drinfeld diagonality", &mut drinfeld_diagonality);
    run(2, "pairing kills Serre relations", &mut serre_radical);
    run(3, "engine laws", &mut engine_laws);
    run(4, "relations at zeta", &mut rel_zeta);
    run(5, "relations at epsilon", &mut rel_epsilon);
    run(6, "epsilon classification", &mut epsilon_table);
    let (reps, spent) = center_reports();
    run(7, "centrality of t_M", &mut || t_centrality(&reps, spent));
    run(8, "Harish-Chandra image", &mut || hc_image(&reps));
    run(9, "transpose Frobenius structure", &mut txi_structure);
    run(10, "Frobenius center crosscheck", &mut zfr_grid);
    run(11, "counting identities", &mut counting);
    run(12, "theta twist", &mut theta_twist);
    run(13, "sign-group invariance of the center", &mut || sign_invariance(&reps));
    let failed = lines.iter().filter(|(_, _, o)| !o.ok).count();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
