//! Disjunctive programs without set atoms, with the classical
//! Classical answer set check: reduct by default negation, then minimality.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::*;
use crate::{Error, Limits, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicRule {
    pub head: Vec<GroundLiteral>,
    pub pos: Vec<GroundLiteral>,
    pub naf: Vec<GroundLiteral>,
}

impl BasicRule {
    pub fn fact(l: GroundLiteral) -> Self {
        BasicRule { head: vec![l], ..Default::default() }
    }

    pub fn literals(&self) -> impl Iterator<Item = &GroundLiteral> {
        self.head.iter().chain(&self.pos).chain(&self.naf)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasicProgram {
    pub rules: Vec<BasicRule>,
}

impl BasicProgram {
    pub fn new(rules: Vec<BasicRule>) -> Self {
        BasicProgram { rules }
    }

    /// Fails on set atoms and set-introduction heads.
    pub fn from_ground(g: &GroundProgram) -> Result<Self> {
        g.rules.iter().map(BasicRule::try_from).collect::<Result<_>>().map(BasicProgram::new)
    }

    pub fn literals(&self) -> BTreeSet<GroundLiteral> {
        self.rules.iter().flat_map(|r| r.literals().cloned()).collect()
    }

    pub fn head_literals(&self) -> BTreeSet<GroundLiteral> {
        self.rules.iter().flat_map(|r| r.head.iter().cloned()).collect()
    }
}

impl TryFrom<&GroundRule> for BasicRule {
    type Error = Error;

    fn try_from(r: &GroundRule) -> Result<Self> {
        let head = match &r.head {
            GroundHead::Disjunction(h) => h.clone(),
            GroundHead::SetIntro { .. } => return Err(Error::UnexpectedSetIntro(r.to_string())),
        };
        let mut out = BasicRule { head, ..Default::default() };
        for b in &r.body {
            match b {
                GroundBody::Pos(l) => out.pos.push(l.clone()),
                GroundBody::Naf(l) => out.naf.push(l.clone()),
                GroundBody::Set(_) => {
                    return Err(Error::UnexpectedSetIntro(format!("set atom in `{r}`")));
                }
            }
        }
        Ok(out)
    }
}

/// Drops rules whose `not l` is contradicted by `a`, then deletes every
/// remaining `not l`.
pub fn gl_reduct(p: &BasicProgram, a: &Interpretation) -> BasicProgram {
    p.rules
        .iter()
        .filter(|r| r.naf.iter().all(|l| !a.contains(l)))
        .map(|r| BasicRule { head: r.head.clone(), pos: r.pos.clone(), naf: Vec::new() })
        .collect::<Vec<_>>()
        .into()
}

impl From<Vec<BasicRule>> for BasicProgram {
    fn from(rules: Vec<BasicRule>) -> Self {
        BasicProgram { rules }
    }
}

pub fn rule_holds(r: &BasicRule, a: &Interpretation) -> bool {
    let body = r.pos.iter().all(|l| a.contains(l)) && r.naf.iter().all(|l| !a.contains(l));
    !body || r.head.iter().any(|l| a.contains(l))
}

pub fn is_model(p: &BasicProgram, a: &Interpretation) -> bool {
    p.rules.iter().all(|r| rule_holds(r, a))
}

/// Least model of rules with exactly one head literal and no `not`.
fn least_model<'a>(rules: impl Iterator<Item = (&'a [GroundLiteral], &'a GroundLiteral)> + Clone) -> BTreeSet<GroundLiteral> {
    let mut m = BTreeSet::new();
    loop {
        let mut changed = false;
        for (pos, h) in rules.clone() {
            if !m.contains(h) && pos.iter().all(|l| m.contains(l)) {
                m.insert(h.clone());
                changed = true;
            }
        }
        if !changed {
            return m;
        }
    }
}

/// Whether some proper subset of `a` is a model of the `not`-free program
/// `r`. `a` itself must be a model.
fn has_smaller_model(r: &BasicProgram, a: &Interpretation, limits: &Limits) -> Result<bool> {
    // Only rules that can fire below `a` matter, and only their heads inside `a`.
    let relevant: Vec<(Vec<GroundLiteral>, Vec<GroundLiteral>)> = r
        .rules
        .iter()
        .filter(|r| r.pos.iter().all(|l| a.contains(l)))
        .map(|r| (r.pos.clone(), r.head.iter().filter(|l| a.contains(l)).cloned().collect()))
        .collect();
    let units = relevant.iter().filter(|(_, h)| h.len() == 1).map(|(p, h)| (p.as_slice(), &h[0]));
    let forced = least_model(units);
    if relevant.iter().all(|(_, h)| h.len() == 1) {
        return Ok(forced.len() < a.len());
    }
    let free: Vec<&GroundLiteral> = a.iter().filter(|l| !forced.contains(*l)).collect();
    if free.len() > limits.max_minimality {
        return Err(Error::UniverseTooLarge {
            what: "minimality check",
            size: free.len() as u128,
            limit: limits.max_minimality as u128,
        });
    }
    let full = (1u64 << free.len()) - 1;
    for mask in 0..full {
        let b: BTreeSet<&GroundLiteral> =
            forced.iter().chain((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i])).collect();
        let ok = relevant
            .iter()
            .all(|(pos, h)| !pos.iter().all(|l| b.contains(l)) || h.iter().any(|l| b.contains(l)));
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `a` is a consistent, minimal model of the reduct of `p` with respect to `a`.
pub fn is_answer_set_basic(p: &BasicProgram, a: &Interpretation) -> Result<bool> {
    is_answer_set_basic_with(p, a, &Limits::default())
}

pub fn is_answer_set_basic_with(p: &BasicProgram, a: &Interpretation, limits: &Limits) -> Result<bool> {
    if !a.is_consistent() {
        return Ok(false);
    }
    let r = gl_reduct(p, a);
    if !is_model(&r, a) {
        return Ok(false);
    }
    Ok(!has_smaller_model(&r, a, limits)?)
}

/// All answer sets, by brute force over subsets of the head literals.
pub fn answer_sets_basic(p: &BasicProgram, limits: &Limits) -> Result<Vec<Interpretation>> {
    let heads: Vec<GroundLiteral> = p.head_literals().into_iter().collect();
    if heads.len() > limits.max_candidates {
        return Err(Error::UniverseTooLarge {
            what: "candidate universe",
            size: heads.len() as u128,
            limit: limits.max_candidates as u128,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << heads.len() {
        let a: Interpretation = (0..heads.len()).filter(|i| mask >> i & 1 == 1).map(|i| heads[i].clone()).collect();
        if is_answer_set_basic_with(p, &a, limits)? {
            out.push(a);
        }
    }
    out.sort();
    Ok(out)
}

impl fmt::Display for BasicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        let body: Vec<String> = self
            .pos
            .iter()
            .map(ToString::to_string)
            .chain(self.naf.iter().map(|l| format!("not {l}")))
            .collect();
        if body.is_empty() {
            if self.head.is_empty() {
                f.write_str(":- ")?;
            }
            return f.write_str(".");
        }
        if !self.head.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, ":- {}.", body.join(", "))
    }
}

impl fmt::Display for BasicProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{ground_program, DomainConfig};
    use crate::parser::{parse_literals, parse_program};

    fn basic(src: &str) -> BasicProgram {
        let p = parse_program(src).unwrap();
        BasicProgram::from_ground(&ground_program(&p, &DomainConfig::for_program(&p)).unwrap()).unwrap()
    }

    fn interp(src: &str) -> Interpretation {
        parse_literals(src).unwrap().into_iter().collect()
    }

    fn sets(p: &BasicProgram) -> Vec<String> {
        answer_sets_basic(p, &Limits::default()).unwrap().iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn classic_programs() {
        assert_eq!(sets(&basic("p :- not q.\nq :- not p.")), ["{p}", "{q}"]);
        assert_eq!(sets(&basic("p :- not p.")), Vec::<String>::new());
        assert_eq!(sets(&basic("a | b.")), ["{a}", "{b}"]);
        assert_eq!(sets(&basic("a | b.\na :- b.\nb :- a.")), ["{a, b}"]);
        assert_eq!(sets(&basic("p. -p.")), Vec::<String>::new());
        assert_eq!(sets(&basic("")), ["{}"]);
        assert_eq!(sets(&basic("p :- p.")), ["{}"]);
    }

    #[test]
    fn reduct() {
        let p = basic("p :- q, not r.\ns :- not q.");
        assert_eq!(gl_reduct(&p, &interp("q")).to_string(), "p :- q.\n");
        assert_eq!(gl_reduct(&p, &interp("r")).to_string(), "s.\n");
    }

    #[test]
    fn minimality_with_disjunction() {
        let p = basic("a | b.\nc :- a.\nc :- b.");
        assert!(is_answer_set_basic(&p, &interp("a, c")).unwrap());
        assert!(!is_answer_set_basic(&p, &interp("a, b, c")).unwrap());
        let p = basic("a | b | c.\n:- a, b.");
        assert!(!is_answer_set_basic(&p, &interp("a, c")).unwrap());
    }

    #[test]
    fn set_atoms_rejected() {
        let p = parse_program("p :- card{X:q(X)} > 0.").unwrap();
        let g = ground_program(&p, &DomainConfig::for_program(&p)).unwrap();
        assert!(BasicProgram::from_ground(&g).is_err());
    }

    #[test]
    fn display() {
        let r = BasicRule {
            head: vec![GroundLiteral::new(false, "p", vec![GroundTerm::Const(sym("a"))])],
            pos: vec![
                GroundLiteral::new(false, "p", vec![GroundTerm::Const(sym("a"))]),
                GroundLiteral::new(false, "q", vec![GroundTerm::Const(sym("a"))]),
            ],
            naf: vec![],
        };
        assert_eq!(r.to_string(), "p(a) :- p(a), q(a).");
        assert_eq!(BasicRule::default().to_string(), ":- .");
    }
}
