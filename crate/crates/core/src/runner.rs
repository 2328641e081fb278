//! Named suites with validated parameters: the surface shared by the `qc` binary
//! and the acceptance harness.

use crate::center::verify_center;
use crate::frob::{standard_types, verify_counting, verify_frob, FrobPair};
use crate::qscalar::{build_context, verify_epsilon, AtRoot, Generic};
use crate::report::Report;
use crate::rootlat::{ReducedWord, RootSystem};
use crate::uqpbw::suites::{verify_drinfeld, verify_pbw};
use crate::uqpbw::{Engine, Pbw, Wt};
use crate::uzeta::{verify_epsilon_relations, verify_theta, verify_zeta_relations, RootData};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

/// Bad parameters or an excluded context; the binary maps this to exit code 2.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Context(String),
}

fn ctx_err(e: impl fmt::Display) -> RunError {
    RunError::Context(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Drinfeld,
    Pbw,
    RelZeta,
    RelEpsilon,
    Theta,
    Center,
    Frob,
    Counting,
    Epsilon,
}

impl Suite {
    /// Everything `all` runs, in order. `counting` and `epsilon` are tables over many
    /// contexts and are run only by name.
    pub const PER_CONTEXT: [Suite; 7] = [Suite::Drinfeld, Suite::Pbw, Suite::RelZeta, Suite::RelEpsilon, Suite::Theta, Suite::Center, Suite::Frob];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Drinfeld => "drinfeld",
            Suite::Pbw => "pbw",
            Suite::RelZeta => "rel-zeta",
            Suite::RelEpsilon => "rel-epsilon",
            Suite::Theta => "theta",
            Suite::Center => "center",
            Suite::Frob => "frob",
            Suite::Counting => "counting",
            Suite::Epsilon => "epsilon",
        }
    }
}

impl FromStr for Suite {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Suite, RunError> {
        let all = [Suite::Drinfeld, Suite::Pbw, Suite::RelZeta, Suite::RelEpsilon, Suite::Theta, Suite::Center, Suite::Frob, Suite::Counting, Suite::Epsilon];
        all.into_iter().find(|x| x.name() == s).ok_or_else(|| RunError::Usage(format!("unknown suite {s:?}")))
    }
}

/// Parameters shared by all suites; each suite reads what it needs.
#[derive(Clone, Debug)]
pub struct Params {
    pub rs: RootSystem,
    pub ells: Vec<u32>,
    pub bound: u16,
    /// Per-root exponent bound of the Frobenius grid; defaults by rank.
    pub grid: Option<u16>,
    pub lambdas: Vec<Wt>,
    pub word: Option<String>,
    pub jset: Option<Vec<usize>>,
    pub seed: u64,
    pub samples: usize,
    pub types: Vec<RootSystem>,
}

impl Params {
    pub fn new(rs: RootSystem, ell: u32) -> Params {
        Params { rs, ells: vec![ell], bound: 3, grid: None, lambdas: Vec::new(), word: None, jset: None, seed: 7, samples: 100, types: Vec::new() }
    }

    fn ell(&self) -> Result<u32, RunError> {
        match self.ells.as_slice() {
            [l] => Ok(*l),
            _ => Err(RunError::Usage("this suite needs a single --ell".into())),
        }
    }

    fn word(&self) -> Result<Option<ReducedWord>, RunError> {
        self.word.as_deref().map(|w| ReducedWord::parse(&self.rs, w).map_err(|e| RunError::Usage(e.to_string()))).transpose()
    }

    fn pbw(&self) -> Result<Rc<Pbw>, RunError> {
        let p = match self.word()? {
            Some(w) => Pbw::with_word(self.rs.clone(), w),
            None => Pbw::new(self.rs.clone()),
        };
        p.map(Rc::new).map_err(ctx_err)
    }

    /// The module weights for `center`: the given ones, or every fundamental weight.
    fn center_lambdas(&self) -> Vec<Wt> {
        if !self.lambdas.is_empty() {
            return self.lambdas.clone();
        }
        let n = self.rs.rank;
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    /// Checks `r > d` for every requested `ℓ`.
    pub fn check_contexts(&self) -> Result<(), RunError> {
        for &l in &self.ells {
            build_context(&self.rs, l).map_err(ctx_err)?;
        }
        Ok(())
    }
}

/// Parses `N`, `a..b` (inclusive) or a comma list.
pub fn parse_ells(s: &str) -> Result<Vec<u32>, RunError> {
    let bad = || RunError::Usage(format!("bad --ell {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

/// Parses `A1,B2`, a range `A1..G2` over the standard list, or `all`.
pub fn parse_types(s: &str) -> Result<Vec<RootSystem>, RunError> {
    let std = standard_types();
    if s == "all" {
        return Ok(std);
    }
    if let Some((a, b)) = s.split_once("..") {
        let pos = |l: &str| std.iter().position(|r| r.label == l.trim()).ok_or_else(|| RunError::Usage(format!("{l:?} is not in the standard list")));
        let (i, j) = (pos(a)?, pos(b)?);
        if i > j {
            return Err(RunError::Usage(format!("empty type range {s:?}")));
        }
        return Ok(std[i..=j].to_vec());
    }
    s.split(',').map(|t| RootSystem::parse(t.trim()).map_err(|e| RunError::Usage(e.to_string()))).collect()
}

/// Parses `1,0;0,1` into weights of the given rank.
pub fn parse_lambdas(s: &str, rank: usize) -> Result<Vec<Wt>, RunError> {
    s.split(';')
        .map(|w| {
            let v: Vec<i64> = w.split(',').map(|t| t.trim().parse().map_err(|_| RunError::Usage(format!("bad weight {w:?}")))).collect::<Result<_, _>>()?;
            if v.len() != rank || v.iter().any(|&x| x < 0) {
                return Err(RunError::Usage(format!("{w:?} is not a dominant weight of rank {rank}")));
            }
            Ok(v)
        })
        .collect()
}

/// Parses a 1-based index list such as `1,3`.
pub fn parse_jset(s: &str, rank: usize) -> Result<Vec<usize>, RunError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(RunError::Usage(format!("bad J entry {t:?}"))),
        })
        .collect()
}

/// Runs one suite. Context errors (`r ≤ d`, bad words) surface as [`RunError`].
pub fn run_suite(suite: Suite, p: &Params) -> Result<Report, RunError> {
    let t0 = Instant::now();
    let mut rep = match suite {
        Suite::Drinfeld => verify_drinfeld(&*p.pbw()?, p.bound),
        Suite::Pbw => verify_pbw(p.pbw()?, p.samples, p.seed).map_err(ctx_err)?,
        Suite::RelZeta | Suite::RelEpsilon => {
            let ell = p.ell()?;
            let data = RootData::new(&p.rs, ell).map_err(ctx_err)?;
            if suite == Suite::RelZeta {
                verify_zeta_relations(&data, p.bound as u32, p.word()?)
            } else {
                verify_epsilon_relations(&data, p.word()?)
            }
            .map_err(ctx_err)?
        }
        Suite::Theta => {
            let ell = p.ell()?;
            build_context(&p.rs, ell).map_err(ctx_err)?;
            verify_theta(&p.rs, ell, p.jset.clone(), p.word()?, 20, p.seed).map_err(ctx_err)?
        }
        Suite::Center => {
            let ell = p.ell()?;
            build_context(&p.rs, ell).map_err(ctx_err)?;
            let pbw = p.pbw()?;
            let g = Rc::new(Engine::new(Generic, pbw.clone()).map_err(ctx_err)?);
            let z = Engine::new(AtRoot::new(ell), pbw).map_err(ctx_err)?;
            verify_center(g, &z, &p.center_lambdas()).map_err(ctx_err)?
        }
        Suite::Frob => {
            let ell = p.ell()?;
            let fp = FrobPair::new(&p.rs, ell).map_err(ctx_err)?;
            let grid = p.grid.unwrap_or(if p.rs.rank == 1 { 2 } else { 1 });
            verify_frob(&fp, grid, 50, p.seed).map_err(ctx_err)?
        }
        Suite::Counting => {
            let types = if p.types.is_empty() { vec![p.rs.clone()] } else { p.types.clone() };
            verify_counting(&types, p.ells.clone()).map_err(ctx_err)?
        }
        Suite::Epsilon => {
            let types = if p.types.is_empty() { vec![p.rs.clone()] } else { p.types.clone() };
            let grid: Vec<(RootSystem, u32)> = types.iter().flat_map(|rs| p.ells.iter().map(move |&l| (rs.clone(), l))).collect();
            verify_epsilon(&grid)
        }
    };
    rep.timing = Some(t0.elapsed());
    Ok(rep)
}

/// Every per-context suite, optionally on `jobs` threads; each thread builds its own engines.
pub fn run_all(p: &Params, jobs: usize) -> Result<Vec<Report>, RunError> {
    p.check_contexts()?;
    let suites = Suite::PER_CONTEXT;
    if jobs <= 1 {
        return suites.iter().map(|&s| run_suite(s, p)).collect();
    }
    let mut out: Vec<Option<Result<Report, RunError>>> = (0..suites.len()).map(|_| None).collect();
    std::thread::scope(|sc| {
        for chunk in out.chunks_mut(suites.len().div_ceil(jobs)).zip(suites.chunks(suites.len().div_ceil(jobs))) {
            let (slots, names) = chunk;
            sc.spawn(move || {
                for (slot, &s) in slots.iter_mut().zip(names) {
                    *slot = Some(run_suite(s, p));
                }
            });
        }
    });
    out.into_iter().map(|r| r.expect("every slot filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_ells("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_ells("3,4").unwrap(), vec![3, 4]);
        assert!(parse_ells("5..2").is_err());
        assert_eq!(parse_types("A1..A3").unwrap().len(), 3);
        assert_eq!(parse_types("B2,G2").unwrap()[1].label, "G2");
        assert_eq!(parse_lambdas("1,0;0,2", 2).unwrap(), vec![vec![1, 0], vec![0, 2]]);
        assert!(parse_lambdas("1", 2).is_err());
        assert_eq!(parse_jset("1,2", 2).unwrap(), vec![0, 1]);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn ell_one_is_a_context_error() {
        let p = Params::new(RootSystem::new('A', 1).unwrap(), 1);
        assert!(matches!(run_suite(Suite::RelZeta, &p), Err(RunError::Context(_))));
    }

    #[test]
    fn all_on_a1_four_passes() {
        let p = Params::new(RootSystem::new('A', 1).unwrap(), 4);
        let seq = run_all(&p, 1).unwrap();
        assert_eq!(seq.len(), Suite::PER_CONTEXT.len());
        assert!(seq.iter().all(|r| r.passed()), "{:?}", seq.iter().filter(|r| !r.passed()).map(|r| &r.suite).collect::<Vec<_>>());
        let par = run_all(&p, 3).unwrap();
        let strip = |rs: &[Report]| rs.iter().map(|r| r.to_json(false)).collect::<Vec<_>>();
        assert_eq!(strip(&seq), strip(&par));
    }
}
