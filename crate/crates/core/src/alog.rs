//! The strong reading: set atoms are replaced by everything their set
//! names denote in the candidate.

use crate::basic::{is_answer_set_basic_with, BasicProgram, BasicRule};
use crate::eval::{eval_set_atom, head_true, set_name_matches};
use crate::model::*;
use crate::{Error, Limits, Result};

/// Set-introduction rules whose head is false in `a` become constraints;
/// those whose head is true become one rule `p(t̄) :- body` per `p(t̄) ∈ a`.
pub fn set_intro_reduct(g: &GroundProgram, a: &Interpretation) -> GroundProgram {
    let mut rules = Vec::with_capacity(g.rules.len());
    for r in &g.rules {
        match &r.head {
            GroundHead::SetIntro { predicate, .. } => {
                if head_true(&r.head, a) {
                    for l in a.iter().filter(|l| !l.negated && &l.predicate == predicate) {
                        rules.push(GroundRule {
                            head: GroundHead::Disjunction(vec![l.clone()]),
                            body: r.body.clone(),
                        });
                    }
                } else {
                    rules.push(GroundRule { head: GroundHead::Disjunction(Vec::new()), body: r.body.clone() });
                }
            }
            GroundHead::Disjunction(_) => rules.push(r.clone()),
        }
    }
    g.with_rules(rules)
}

/// The literals a set atom stands for under the strong reading: every
/// condition instance satisfied in `a`, left set name first.
pub fn set_atom_expansion(sa: &SetAtom, a: &Interpretation) -> Vec<GroundLiteral> {
    let mut out: Vec<GroundLiteral> = Vec::new();
    for s in sa.set_names() {
        for m in set_name_matches(s, a.literals()) {
            for l in m.witness {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// Builds a basic rule from a ground rule, replacing set atom number `i`
/// of the body by `replace(i, atom)`.
pub(crate) fn replace_set_atoms(
    r: &GroundRule,
    mut replace: impl FnMut(usize, &SetAtom) -> Vec<GroundLiteral>,
) -> Result<BasicRule> {
    let head = match &r.head {
        GroundHead::Disjunction(h) => h.clone(),
        GroundHead::SetIntro { .. } => return Err(Error::UnexpectedSetIntro(r.to_string())),
    };
    let mut out = BasicRule { head, ..Default::default() };
    let mut k = 0;
    for b in &r.body {
        match b {
            GroundBody::Pos(l) => out.pos.push(l.clone()),
            GroundBody::Naf(l) => out.naf.push(l.clone()),
            GroundBody::Set(sa) => {
                out.pos.extend(replace(k, sa));
                k += 1;
            }
        }
    }
    Ok(out)
}

/// Whether every set atom in the body of `r` is true in `a`.
pub(crate) fn set_atoms_true(r: &GroundRule, a: &Interpretation) -> Result<bool> {
    for b in &r.body {
        if let GroundBody::Set(sa) = b {
            if !eval_set_atom(sa, a)?.is_true() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Removes rules with a false or undefined set atom and expands the rest.
/// `g` must not contain set-introduction rules.
pub fn set_reduct(g: &GroundProgram, a: &Interpretation) -> Result<BasicProgram> {
    let mut rules = Vec::new();
    for r in &g.rules {
        if set_atoms_true(r, a)? {
            rules.push(replace_set_atoms(r, |_, sa| set_atom_expansion(sa, a))?);
        }
    }
    Ok(BasicProgram::new(rules))
}

/// Set-introduction reduct followed by set reduct.
pub fn alog_reduct(g: &GroundProgram, a: &Interpretation) -> Result<BasicProgram> {
    set_reduct(&set_intro_reduct(g, a), a)
}

pub fn is_alog_answer_set(g: &GroundProgram, a: &Interpretation) -> Result<bool> {
    is_alog_answer_set_with(g, a, &Limits::default())
}

pub fn is_alog_answer_set_with(g: &GroundProgram, a: &Interpretation, limits: &Limits) -> Result<bool> {
    if !a.is_consistent() {
        return Ok(false);
    }
    is_answer_set_basic_with(&alog_reduct(g, a)?, a, limits)
}
