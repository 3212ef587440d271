//! Answer set search, splitting, and the checks that answer sets must pass.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::alog::is_alog_answer_set_with;
use crate::eval::{eval_body, instantiate_set_name, is_cond_instance, rule_satisfied};
use crate::ground::{herbrand_atoms_with, tuples};
use crate::model::*;
use crate::slogp::is_slogp_answer_set_with;
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Alog,
    SlogPlus,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Alog => "alog",
            Semantics::SlogPlus => "slog+",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SemanticsMode {
    #[default]
    Alog,
    SlogPlus,
    Both,
}

impl SemanticsMode {
    pub fn semantics(self) -> Vec<Semantics> {
        match self {
            SemanticsMode::Alog => vec![Semantics::Alog],
            SemanticsMode::SlogPlus => vec![Semantics::SlogPlus],
            SemanticsMode::Both => vec![Semantics::Alog, Semantics::SlogPlus],
        }
    }
}

pub fn is_answer_set(g: &GroundProgram, a: &Interpretation, sem: Semantics, limits: &Limits) -> Result<bool> {
    match sem {
        Semantics::Alog => is_alog_answer_set_with(g, a, limits),
        Semantics::SlogPlus => is_slogp_answer_set_with(g, a, limits),
    }
}

/// Literals that can appear in an answer set: disjunctive head literals and
/// every atom of a set-introduction predicate over the term pool.
pub fn candidate_universe(g: &GroundProgram) -> BTreeSet<GroundLiteral> {
    let pool: Vec<GroundTerm> = g.pool.iter().cloned().collect();
    let mut out = BTreeSet::new();
    for r in &g.rules {
        match &r.head {
            GroundHead::Disjunction(h) => out.extend(h.iter().cloned()),
            GroundHead::SetIntro { predicate, .. } => {
                let arity = g.arities.get(predicate).copied().unwrap_or(1);
                for t in tuples(&pool, arity) {
                    out.insert(GroundLiteral { predicate: predicate.clone(), args: t, negated: false });
                }
            }
        }
    }
    out
}

fn check_universe(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_candidates || n >= 64 {
        return Err(Error::UniverseTooLarge {
            what: "candidate universe",
            size: n as u128,
            limit: limits.max_candidates as u128,
        });
    }
    Ok(())
}

/// Answer sets among the consistent subsets of `universe`, sorted.
pub fn solve_over(
    g: &GroundProgram,
    universe: &BTreeSet<GroundLiteral>,
    sem: Semantics,
    limits: &Limits,
) -> Result<Vec<Interpretation>> {
    let lits: Vec<&GroundLiteral> = universe.iter().collect();
    check_universe(lits.len(), limits)?;
    let mut found = (0u64..1 << lits.len())
        .into_par_iter()
        .filter_map(|mask| {
            let a: Interpretation =
                (0..lits.len()).filter(|i| mask >> i & 1 == 1).map(|i| lits[i].clone()).collect();
            if !a.is_consistent() {
                return None;
            }
            match is_answer_set(g, &a, sem, limits) {
                Ok(true) => Some(Ok(a)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    found.sort();
    Ok(found)
}

pub fn solve(g: &GroundProgram, sem: Semantics, limits: &Limits) -> Result<Vec<Interpretation>> {
    solve_over(g, &candidate_universe(g), sem, limits)
}

/// Answer sets for every semantics of `mode`, in order.
pub fn solve_mode(
    g: &GroundProgram,
    mode: SemanticsMode,
    limits: &Limits,
) -> Result<Vec<(Semantics, Vec<Interpretation>)>> {
    mode.semantics().into_iter().map(|s| Ok((s, solve(g, s, limits)?))).collect()
}

/// Brute force over every consistent set of Herbrand literals.
pub fn solve_full(g: &GroundProgram, sem: Semantics, limits: &Limits) -> Result<Vec<Interpretation>> {
    solve_over(g, &herbrand_atoms_with(g, limits)?, sem, limits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Occurrence {
    No,
    InHead,
    InBody,
    Both,
}

fn body_mentions(b: &GroundBody, l: &GroundLiteral) -> bool {
    match b {
        GroundBody::Pos(x) | GroundBody::Naf(x) => x == l,
        GroundBody::Set(sa) => sa.set_names().into_iter().any(|s| is_cond_instance(s, l)),
    }
}

fn head_mentions(h: &GroundHead, l: &GroundLiteral) -> bool {
    match h {
        GroundHead::Disjunction(d) => d.contains(l),
        GroundHead::SetIntro { predicate, set, .. } => {
            (!l.negated && &l.predicate == predicate) || is_cond_instance(set, l)
        }
    }
}

pub fn occurs_in(l: &GroundLiteral, r: &GroundRule) -> Occurrence {
    match (head_mentions(&r.head, l), r.body.iter().any(|b| body_mentions(b, l))) {
        (true, true) => Occurrence::Both,
        (true, false) => Occurrence::InHead,
        (false, true) => Occurrence::InBody,
        (false, false) => Occurrence::No,
    }
}

/// The literals of `universe` a rule defines (its head literals, or the
/// atoms of its set-introduction predicate) and those it depends on
/// (body occurrences and the condition instances of a head set name).
fn rule_literals(
    r: &GroundRule,
    universe: &BTreeSet<GroundLiteral>,
) -> (BTreeSet<GroundLiteral>, BTreeSet<GroundLiteral>) {
    let mut defined = BTreeSet::new();
    let mut deps = BTreeSet::new();
    match &r.head {
        GroundHead::Disjunction(d) => defined.extend(d.iter().cloned()),
        GroundHead::SetIntro { predicate, set, .. } => {
            for l in universe {
                if !l.negated && &l.predicate == predicate {
                    defined.insert(l.clone());
                }
                if is_cond_instance(set, l) {
                    deps.insert(l.clone());
                }
            }
        }
    }
    for b in &r.body {
        match b {
            GroundBody::Pos(l) | GroundBody::Naf(l) => {
                deps.insert(l.clone());
            }
            GroundBody::Set(_) => deps.extend(universe.iter().filter(|l| body_mentions(b, l)).cloned()),
        }
    }
    (defined, deps)
}

fn literal_universe(g: &GroundProgram, s: &BTreeSet<GroundLiteral>, limits: &Limits) -> Result<BTreeSet<GroundLiteral>> {
    let mut u = herbrand_atoms_with(g, limits)?;
    u.extend(s.iter().cloned());
    for r in &g.rules {
        if let GroundHead::Disjunction(d) = &r.head {
            u.extend(d.iter().cloned());
        }
        for b in &r.body {
            if let GroundBody::Pos(l) | GroundBody::Naf(l) = b {
                u.insert(l.clone());
            }
        }
    }
    Ok(u)
}

/// A rule that defines a literal of `s` must define only literals of `s`
/// and depend only on literals of `s`.
pub fn check_splitting_set(g: &GroundProgram, s: &BTreeSet<GroundLiteral>) -> Result<bool> {
    check_splitting_set_with(g, s, &Limits::default())
}

pub fn check_splitting_set_with(g: &GroundProgram, s: &BTreeSet<GroundLiteral>, limits: &Limits) -> Result<bool> {
    let u = literal_universe(g, s, limits)?;
    Ok(g.rules.iter().all(|r| {
        let (defined, deps) = rule_literals(r, &u);
        defined.is_disjoint(s) || (defined.is_subset(s) && deps.is_subset(s))
    }))
}

/// The least splitting set containing `seed`.
pub fn splitting_closure(
    g: &GroundProgram,
    seed: &BTreeSet<GroundLiteral>,
    limits: &Limits,
) -> Result<BTreeSet<GroundLiteral>> {
    let u = literal_universe(g, seed, limits)?;
    let per_rule: Vec<_> = g.rules.iter().map(|r| rule_literals(r, &u)).collect();
    let mut s = seed.clone();
    loop {
        let before = s.len();
        for (defined, deps) in &per_rule {
            if !defined.is_disjoint(&s) {
                s.extend(defined.iter().cloned());
                s.extend(deps.iter().cloned());
            }
        }
        if s.len() == before {
            return Ok(s);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub bottom: GroundProgram,
    pub top: GroundProgram,
}

/// Bottom: the rules built only from literals of `s`. Top: the rest.
pub fn split(g: &GroundProgram, s: &BTreeSet<GroundLiteral>) -> Result<SplitResult> {
    split_with(g, s, &Limits::default())
}

pub fn split_with(g: &GroundProgram, s: &BTreeSet<GroundLiteral>, limits: &Limits) -> Result<SplitResult> {
    let u = literal_universe(g, s, limits)?;
    let mut bottom = Vec::new();
    let mut top = Vec::new();
    for r in &g.rules {
        let (defined, deps) = rule_literals(r, &u);
        if !defined.is_disjoint(s) && !(defined.is_subset(s) && deps.is_subset(s)) {
            return Err(Error::NotASplittingSet(format!("rule `{r}`")));
        }
        if defined.is_subset(s) && deps.is_subset(s) {
            bottom.push(r.clone());
        } else {
            top.push(r.clone());
        }
    }
    Ok(SplitResult { bottom: g.with_rules(bottom), top: g.with_rules(top) })
}

/// Result of comparing a program's answer sets with those assembled from
/// its bottom and top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAudit {
    pub checked: usize,
    pub counterexample: Option<Interpretation>,
}

impl SplitAudit {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every consistent candidate `a`: `a` is an answer set of `g` iff
/// `a ∩ s` is one of the bottom and `a` is one of `(a ∩ s) ∪ top`.
pub fn audit_splitting_theorem(
    g: &GroundProgram,
    s: &BTreeSet<GroundLiteral>,
    sem: Semantics,
    limits: &Limits,
) -> Result<SplitAudit> {
    let parts = split_with(g, s, limits)?;
    let lits: Vec<GroundLiteral> = candidate_universe(g).into_iter().collect();
    check_universe(lits.len(), limits)?;
    let results = (0u64..1 << lits.len())
        .into_par_iter()
        .map(|mask| {
            let a: Interpretation = (0..lits.len()).filter(|i| mask >> i & 1 == 1).map(|i| lits[i].clone()).collect();
            if !a.is_consistent() {
                return Ok(None);
            }
            let lhs = is_answer_set(g, &a, sem, limits)?;
            let below = a.intersection(s);
            let mut rhs = is_answer_set(&parts.bottom, &below, sem, limits)?;
            if rhs {
                let mut rules: Vec<GroundRule> = below.iter().cloned().map(GroundRule::fact).collect();
                rules.extend(parts.top.rules.iter().cloned());
                rhs = is_answer_set(&g.with_rules(rules), &a, sem, limits)?;
            }
            Ok(Some((lhs != rhs).then_some(a)))
        })
        .collect::<Result<Vec<_>>>()?;
    let checked = results.iter().filter(|r| r.is_some()).count();
    let counterexample = results.into_iter().flatten().flatten().min();
    Ok(SplitAudit { checked, counterexample })
}

pub fn audit_rule_satisfaction(g: &GroundProgram, a: &Interpretation) -> Result<bool> {
    for r in &g.rules {
        if !rule_satisfied(r, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every literal of `a` is the only true head literal of a rule whose body
/// holds, or the atom of a set-introduction head whose body holds. For
/// `p <= S` and `p = S` the atom's tuple must also be in `S`.
pub fn audit_supportedness(g: &GroundProgram, a: &Interpretation) -> Result<bool> {
    let mut bodies = Vec::with_capacity(g.rules.len());
    for r in &g.rules {
        bodies.push(eval_body(&r.body, a)?.is_true());
    }
    Ok(a.iter().all(|l| {
        g.rules.iter().zip(&bodies).any(|(r, &body)| {
            body && match &r.head {
                GroundHead::Disjunction(d) => d.contains(l) && d.iter().filter(|x| a.contains(x)).all(|x| x == l),
                GroundHead::SetIntro { kind, predicate, set } => {
                    !l.negated
                        && &l.predicate == predicate
                        && match kind {
                            SetIntroKind::SupersetOf => true,
                            _ => instantiate_set_name(set, a).0.contains(&l.args),
                        }
                }
            }
        })
    }))
}

/// No answer set is a proper subset of another.
pub fn audit_antichain(results: &[Interpretation]) -> bool {
    results.iter().all(|x| results.iter().all(|y| x == y || !x.is_subset(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{ground_program, DomainConfig};
    use crate::parser::{parse_literals, parse_program};

    fn ground(src: &str) -> GroundProgram {
        let p = parse_program(src).unwrap();
        ground_program(&p, &DomainConfig::for_program(&p)).unwrap()
    }

    fn lits(src: &str) -> BTreeSet<GroundLiteral> {
        parse_literals(src).unwrap().into_iter().collect()
    }

    fn shown(v: &[Interpretation]) -> Vec<String> {
        v.iter().map(|a| a.to_string()).collect()
    }

    const P9: &str = "q(a).\np <= {X:q(X)}.";
    const P4: &str = "p(a) :- p <= {X:q(X)}.\nq(a).";

    #[test]
    fn universe() {
        assert_eq!(candidate_universe(&ground("p(1) :- card{X:p(X)} != 1.")), lits("p(1)"));
        assert_eq!(candidate_universe(&ground(P9)), lits("q(a), p(a)"));
        assert_eq!(candidate_universe(&ground("-r.")), lits("-r"));
    }

    #[test]
    fn solving() {
        let l = Limits::default();
        let p1 = ground("p(0) :- p(1).\np(1) :- card{X:p(X)} != 1.");
        assert!(solve(&p1, Semantics::Alog, &l).unwrap().is_empty());
        assert!(solve(&p1, Semantics::SlogPlus, &l).unwrap().is_empty());
        let p2 = ground("#int(0,1).\np(1) :- card{X:p(X)} >= 0.");
        assert!(solve(&p2, Semantics::Alog, &l).unwrap().is_empty());
        assert_eq!(shown(&solve(&p2, Semantics::SlogPlus, &l).unwrap()), ["{p(1)}"]);
        let p9 = ground(P9);
        for sem in [Semantics::Alog, Semantics::SlogPlus] {
            assert_eq!(shown(&solve(&p9, sem, &l).unwrap()), ["{p(a), q(a)}", "{q(a)}"]);
        }
    }

    #[test]
    fn occurrences() {
        let g = ground("t :- card{X:p(X)} >= 0.\nt :- r.\np <= {X:q(X)}.\np(a) :- p(a).");
        let p1 = GroundLiteral::new(false, "p", vec![GroundTerm::Int(1)]);
        assert_eq!(occurs_in(&p1, &g.rules[0]), Occurrence::InBody);
        assert_eq!(occurs_in(&p1, &g.rules[1]), Occurrence::No);
        let qa = GroundLiteral::new(false, "q", vec![GroundTerm::Const(sym("a"))]);
        assert_eq!(occurs_in(&qa, &g.rules[2]), Occurrence::InHead);
        let pa = GroundLiteral::new(false, "p", vec![GroundTerm::Const(sym("a"))]);
        assert_eq!(occurs_in(&pa, &g.rules[3]), Occurrence::Both);
    }

    #[test]
    fn splitting_sets() {
        let g = ground("q :- r.\nr :- q.");
        assert!(!check_splitting_set(&g, &lits("q")).unwrap());
        assert!(check_splitting_set(&g, &lits("q, r")).unwrap());
        let p4 = ground(P4);
        assert!(check_splitting_set(&p4, &lits("q(a)")).unwrap());
        let parts = split(&p4, &lits("q(a)")).unwrap();
        assert_eq!(parts.bottom.to_string(), "q(a).\n");
        assert_eq!(parts.top.to_string(), "p(a) :- {X:p(X)} <= {X:q(X)}.\n");
        let facts = ground("a. b.");
        let parts = split(&facts, &BTreeSet::new()).unwrap();
        assert!(parts.bottom.rules.is_empty());
        assert_eq!(parts.top.rules.len(), 2);
        assert!(matches!(split(&g, &lits("q")), Err(Error::NotASplittingSet(_))));
        assert!(check_splitting_set(&ground(P9), &lits("q(a)")).unwrap());
    }

    #[test]
    fn splitting_audits() {
        let l = Limits::default();
        let p4 = ground(P4);
        assert!(audit_splitting_theorem(&p4, &lits("q(a)"), Semantics::Alog, &l).unwrap().holds());
        let p9 = ground(P9);
        for sem in [Semantics::Alog, Semantics::SlogPlus] {
            assert!(audit_splitting_theorem(&p9, &lits("q(a)"), sem, &l).unwrap().holds());
        }
        let g = ground("a :- not b.\nb :- not a.\nc :- a.");
        let all = lits("a, b, c");
        let audit = audit_splitting_theorem(&g, &all, Semantics::Alog, &l).unwrap();
        assert!(audit.holds());
        assert_eq!(audit.checked, 8);
    }

    #[test]
    fn closure() {
        let g = ground("a :- b.\nb :- c.\nd :- a.");
        let s = splitting_closure(&g, &lits("a"), &Limits::default()).unwrap();
        assert_eq!(s, lits("a, b, c"));
        assert!(check_splitting_set(&g, &s).unwrap());
    }

    #[test]
    fn property_audits() {
        let p9 = ground(P9);
        let a2: Interpretation = lits("q(a), p(a)").into();
        assert!(audit_supportedness(&p9, &a2).unwrap());
        assert!(audit_rule_satisfaction(&p9, &a2).unwrap());
        let unsupported: Interpretation = lits("q(a), p(b)").into();
        assert!(!audit_supportedness(&p9, &unsupported).unwrap());
        let sets = solve(&ground("p | q."), Semantics::Alog, &Limits::default()).unwrap();
        assert!(audit_antichain(&sets));
        let chain: Vec<Interpretation> = vec![lits("q(a)").into(), a2];
        assert!(!audit_antichain(&chain));
    }

    #[test]
    fn cap() {
        let src: String = (0..21).map(|i| format!("p({i}) | q({i}).\n")).collect();
        let err = solve(&ground(&src), Semantics::Alog, &Limits::default()).unwrap_err();
        assert!(err.is_cap());
    }
}
