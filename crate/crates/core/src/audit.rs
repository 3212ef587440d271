//! Randomized property suites over generated programs.

use std::fmt;

use crate::basic::{answer_sets_basic, BasicProgram};
use crate::gen::{random_ground_program, random_splitting_set, rng_for, GenConfig};
use crate::model::*;
use crate::solver::{
    audit_antichain, audit_rule_satisfaction, audit_splitting_theorem, audit_supportedness, solve, solve_full,
    Semantics,
};
use crate::{Limits, Result};

/// A program on which a property failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub seed: u64,
    pub program: String,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}: {}", self.seed, self.detail)?;
        for line in self.program.lines() {
            writeln!(f, "    {line}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub findings: Vec<Finding>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

fn show(sets: &[Interpretation]) -> String {
    if sets.is_empty() {
        return "none".into();
    }
    sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn run(
    name: &str,
    seed: u64,
    count: usize,
    cfg: &GenConfig,
    limits: &Limits,
    mut check: impl FnMut(&mut rand_chacha::ChaCha8Rng, &GroundProgram) -> Result<Option<String>>,
) -> Result<SuiteReport> {
    let mut findings = Vec::new();
    for i in 0..count as u64 {
        let case_seed = seed.wrapping_add(i);
        let mut rng = rng_for(case_seed);
        let (p, g) = random_ground_program(&mut rng, cfg, limits)?;
        if let Some(detail) = check(&mut rng, &g)? {
            findings.push(Finding { seed: case_seed, program: p.to_string(), detail });
        }
    }
    Ok(SuiteReport { name: name.into(), cases: count, findings })
}

/// Every strong answer set is a weak one.
pub fn theorem1(seed: u64, count: usize, limits: &Limits) -> Result<SuiteReport> {
    run("alog answer sets are slog+ answer sets", seed, count, &GenConfig::default(), limits, |_, g| {
        let strong = solve(g, Semantics::Alog, limits)?;
        let weak = solve(g, Semantics::SlogPlus, limits)?;
        let missing: Vec<Interpretation> = strong.into_iter().filter(|a| !weak.contains(a)).collect();
        Ok((!missing.is_empty()).then(|| format!("not slog+ answer sets: {}", show(&missing))))
    })
}

/// Rule satisfaction, supportedness, and (without set-introduction rules)
/// the anti-chain property, under both semantics.
pub fn answer_set_properties(seed: u64, count: usize, limits: &Limits) -> Result<SuiteReport> {
    run("rule satisfaction, supportedness, anti-chain", seed, count, &GenConfig::default(), limits, |_, g| {
        check_answer_set_properties(g, limits)
    })
}

/// The per-program check behind [`answer_set_properties`].
pub fn check_answer_set_properties(g: &GroundProgram, limits: &Limits) -> Result<Option<String>> {
    for sem in [Semantics::Alog, Semantics::SlogPlus] {
        let sets = solve(g, sem, limits)?;
        for a in &sets {
            if !audit_rule_satisfaction(g, a)? {
                return Ok(Some(format!("{sem}: {a} violates a rule")));
            }
            if !audit_supportedness(g, a)? {
                return Ok(Some(format!("{sem}: {a} has an unsupported literal")));
            }
        }
        if !g.has_set_intro() && !audit_antichain(&sets) {
            return Ok(Some(format!("{sem}: answer sets not an anti-chain: {}", show(&sets))));
        }
    }
    Ok(None)
}

/// The splitting equivalence on random splitting sets.
pub fn splitting(seed: u64, count: usize, sem: Semantics, limits: &Limits) -> Result<SuiteReport> {
    let name = format!("splitting under {sem}");
    run(&name, seed, count, &GenConfig::default(), limits, |rng, g| {
        let s = random_splitting_set(rng, g, limits)?;
        let audit = audit_splitting_theorem(g, &s, sem, limits)?;
        Ok(audit.counterexample.map(|a| {
            format!("splitting set {} disagrees on {a}", Interpretation::from(s.clone()))
        }))
    })
}

/// On set-free programs both semantics coincide with the classical one.
pub fn set_free_agreement(seed: u64, count: usize, limits: &Limits) -> Result<SuiteReport> {
    run("set-free programs match classical answer sets", seed, count, &GenConfig::set_free(), limits, |_, g| {
        let expected = answer_sets_basic(&BasicProgram::from_ground(g)?, limits)?;
        for sem in [Semantics::Alog, Semantics::SlogPlus] {
            let got = solve(g, sem, limits)?;
            if got != expected {
                return Ok(Some(format!("{sem}: {} but classical: {}", show(&got), show(&expected))));
            }
        }
        Ok(None)
    })
}

/// Searching the candidate universe finds the same answer sets as
/// searching every set of Herbrand literals.
pub fn universe_restriction(seed: u64, count: usize, limits: &Limits) -> Result<SuiteReport> {
    run("candidate universe loses no answer sets", seed, count, &GenConfig::tiny(), limits, |_, g| {
        for sem in [Semantics::Alog, Semantics::SlogPlus] {
            let restricted = solve(g, sem, limits)?;
            let full = solve_full(g, sem, limits)?;
            if restricted != full {
                return Ok(Some(format!("{sem}: restricted {} but full {}", show(&restricted), show(&full))));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let l = Limits::default();
        assert!(theorem1(1, 20, &l).unwrap().passed());
        assert!(answer_set_properties(1, 20, &l).unwrap().passed());
        assert!(splitting(1, 20, Semantics::Alog, &l).unwrap().passed());
        assert!(set_free_agreement(1, 20, &l).unwrap().passed());
        assert!(universe_restriction(1, 10, &l).unwrap().passed());
    }

    #[test]
    fn reports_are_reproducible() {
        let l = Limits::default();
        assert_eq!(splitting(5, 10, Semantics::SlogPlus, &l).unwrap(), splitting(5, 10, Semantics::SlogPlus, &l).unwrap());
    }
}
