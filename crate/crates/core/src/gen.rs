//! Seeded random programs for the property audits.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ground::{ground_program_with, herbrand_atoms_with, DomainConfig};
use crate::model::*;
use crate::solver::{candidate_universe, splitting_closure};
use crate::{Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// Unary predicates to draw from (at most 4).
    pub predicates: usize,
    pub max_rules: usize,
    pub int_range: (i64, i64),
    pub set_atoms: bool,
    pub set_intro: bool,
    pub max_candidates: usize,
    /// Bound on the Herbrand base, for audits that enumerate all of it.
    pub max_herbrand: Option<usize>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            predicates: 4,
            max_rules: 6,
            int_range: (0, 2),
            set_atoms: true,
            set_intro: true,
            max_candidates: 14,
            max_herbrand: None,
        }
    }
}

impl GenConfig {
    pub fn set_free() -> Self {
        GenConfig { set_atoms: false, set_intro: false, ..Self::default() }
    }

    /// Small enough that the whole Herbrand base can be enumerated.
    pub fn tiny() -> Self {
        GenConfig { predicates: 2, max_rules: 4, int_range: (0, 1), max_candidates: 10, max_herbrand: Some(10), ..Self::default() }
    }
}

const PREDICATES: [&str; 4] = ["p", "q", "r", "s"];
const RULE_VAR: &str = "X";
const SET_VAR: &str = "Y";

struct Gen<'a, R> {
    rng: &'a mut R,
    cfg: GenConfig,
}

impl<R: Rng> Gen<'_, R> {
    fn predicate(&mut self) -> &'static str {
        PREDICATES[self.rng.gen_range(0..self.cfg.predicates.clamp(1, 4))]
    }

    fn int(&mut self) -> Term {
        Term::Int(self.rng.gen_range(self.cfg.int_range.0..=self.cfg.int_range.1))
    }

    fn literal(&mut self, with_var: bool) -> Literal {
        let arg = if with_var && self.rng.gen_bool(0.5) { Term::Var(sym(RULE_VAR)) } else { self.int() };
        let negated = self.rng.gen_bool(0.1);
        Literal::new(negated, self.predicate(), vec![arg])
    }

    fn set_name(&mut self) -> SetName {
        let negated = self.rng.gen_bool(0.1);
        SetName::new(&[SET_VAR], vec![Literal::new(negated, self.predicate(), vec![Term::Var(sym(SET_VAR))])])
    }

    fn set_atom(&mut self) -> SetAtom {
        const FNS: [AggregateFn; 5] =
            [AggregateFn::Card, AggregateFn::Card, AggregateFn::Min, AggregateFn::Sum, AggregateFn::Max];
        const OPS: [CmpOp; 6] = [CmpOp::Gt, CmpOp::Ge, CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ne];
        const RELS: [SetRelOp; 3] = [SetRelOp::Subset, SetRelOp::SubsetEq, SetRelOp::Equal];
        let roll = self.rng.gen_range(0..20);
        if roll < 12 {
            SetAtom::AggCmp {
                func: *FNS.choose(self.rng).unwrap(),
                set: self.set_name(),
                op: *OPS.choose(self.rng).unwrap(),
                bound: self.int(),
            }
        } else if roll < 17 {
            SetAtom::SetRel { left: self.set_name(), op: *RELS.choose(self.rng).unwrap(), right: self.set_name() }
        } else {
            SetAtom::AggAggCmp {
                left_fn: *FNS.choose(self.rng).unwrap(),
                left: self.set_name(),
                op: *OPS.choose(self.rng).unwrap(),
                right_fn: *FNS.choose(self.rng).unwrap(),
                right: self.set_name(),
            }
        }
    }

    fn rule(&mut self) -> Rule {
        let with_var = self.rng.gen_bool(0.25);
        let roll = self.rng.gen_range(0..10);
        let head = if roll == 0 {
            Head::Disjunction(Vec::new())
        } else if roll == 1 && self.cfg.set_intro {
            const KINDS: [SetIntroKind; 3] = [SetIntroKind::SubsetOf, SetIntroKind::SupersetOf, SetIntroKind::Equals];
            Head::SetIntro {
                kind: *KINDS.choose(self.rng).unwrap(),
                predicate: sym(self.predicate()),
                set: self.set_name(),
            }
        } else if roll <= 3 {
            Head::Disjunction(vec![self.literal(with_var), self.literal(with_var)])
        } else {
            Head::Disjunction(vec![self.literal(with_var)])
        };
        let mut body = Vec::new();
        if with_var {
            let p = self.predicate();
            body.push(BodyElement::Pos(Literal::new(false, p, vec![Term::Var(sym(RULE_VAR))])));
        }
        let min_len = usize::from(matches!(&head, Head::Disjunction(d) if d.is_empty()));
        for _ in 0..self.rng.gen_range(min_len..=2) {
            let roll = self.rng.gen_range(0..20);
            body.push(if self.cfg.set_atoms && roll < 7 {
                BodyElement::Set(self.set_atom())
            } else if roll < 12 {
                BodyElement::Naf(self.literal(with_var))
            } else {
                BodyElement::Pos(self.literal(with_var))
            });
        }
        Rule { head, body }
    }
}

/// A random program; not checked against the size bounds.
pub fn random_program<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Program {
    let mut g = Gen { rng, cfg: *cfg };
    let n = g.rng.gen_range(1..=cfg.max_rules.max(1));
    let rules = (0..n).map(|_| g.rule()).collect();
    Program::new(rules, Some(cfg.int_range)).expect("generated programs are unary")
}

/// A random program whose grounding fits the configured bounds, with its
/// grounding.
pub fn random_ground_program<R: Rng>(rng: &mut R, cfg: &GenConfig, limits: &Limits) -> Result<(Program, GroundProgram)> {
    loop {
        let p = random_program(rng, cfg);
        let g = ground_program_with(&p, &DomainConfig::for_program(&p), limits)?;
        if candidate_universe(&g).len() > cfg.max_candidates {
            continue;
        }
        if let Some(h) = cfg.max_herbrand {
            if herbrand_atoms_with(&g, limits)?.len() > h {
                continue;
            }
        }
        return Ok((p, g));
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The least splitting set containing a random part of the candidate
/// universe.
pub fn random_splitting_set<R: Rng>(rng: &mut R, g: &GroundProgram, limits: &Limits) -> Result<BTreeSet<GroundLiteral>> {
    let p = [0.0, 0.2, 0.5][rng.gen_range(0..3)];
    let seed: BTreeSet<GroundLiteral> = candidate_universe(g).into_iter().filter(|_| rng.gen_bool(p)).collect();
    splitting_closure(g, &seed, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;
    use crate::solver::check_splitting_set;

    #[test]
    fn deterministic() {
        let a = random_program(&mut rng_for(7), &GenConfig::default());
        let b = random_program(&mut rng_for(7), &GenConfig::default());
        assert_eq!(a, b);
    }

    #[test]
    fn generated_programs_reparse() {
        for seed in 0..200 {
            let p = random_program(&mut rng_for(seed), &GenConfig::default());
            let text = p.to_string();
            assert_eq!(parse_program(&text).unwrap(), p, "{text}");
        }
    }

    #[test]
    fn bounds_respected() {
        let limits = Limits::default();
        for seed in 0..50 {
            let (_, g) = random_ground_program(&mut rng_for(seed), &GenConfig::tiny(), &limits).unwrap();
            assert!(candidate_universe(&g).len() <= 10);
            assert!(herbrand_atoms_with(&g, &limits).unwrap().len() <= 10);
        }
    }

    #[test]
    fn set_free_config() {
        for seed in 0..50 {
            let (_, g) = random_ground_program(&mut rng_for(seed), &GenConfig::set_free(), &Limits::default()).unwrap();
            assert!(g.is_set_free());
        }
    }

    #[test]
    fn splitting_sets_are_valid() {
        let limits = Limits::default();
        for seed in 0..50 {
            let mut rng = rng_for(seed);
            let (_, g) = random_ground_program(&mut rng, &GenConfig::default(), &limits).unwrap();
            let s = random_splitting_set(&mut rng, &g, &limits).unwrap();
            assert!(check_splitting_set(&g, &s).unwrap());
        }
    }
}
