//! Three-valued evaluation of set atoms, bodies and rules against an
//! interpretation.

use std::collections::BTreeSet;

use crate::model::*;
use crate::{Error, Result};

pub type Tuple = Vec<GroundTerm>;

/// The value `{t̄ : cond(t̄) ⊆ A}` of a set name in `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instantiation(pub BTreeSet<Tuple>);

impl Instantiation {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Tuple> for Instantiation {
    fn from_iter<I: IntoIterator<Item = Tuple>>(iter: I) -> Self {
        Instantiation(iter.into_iter().collect())
    }
}

/// A tuple of a set name's instantiation together with the ground
/// condition literals that put it there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub tuple: Tuple,
    pub witness: Vec<GroundLiteral>,
}

fn literals_of<'a>(
    a: &'a BTreeSet<GroundLiteral>,
    predicate: &'a Symbol,
) -> impl Iterator<Item = &'a GroundLiteral> + 'a {
    let from = GroundLiteral { predicate: predicate.clone(), args: Vec::new(), negated: false };
    a.range(from..).take_while(move |l| &l.predicate == predicate)
}

fn match_term(pattern: &Term, value: &GroundTerm, vars: &[Symbol], binding: &mut [Option<GroundTerm>]) -> bool {
    match (pattern, value) {
        (Term::Var(v), _) => match vars.iter().position(|x| x == v) {
            Some(i) => match &binding[i] {
                Some(bound) => bound == value,
                None => {
                    binding[i] = Some(value.clone());
                    true
                }
            },
            None => false,
        },
        (Term::Int(i), GroundTerm::Int(j)) => i == j,
        (Term::Const(c), GroundTerm::Const(d)) => c == d,
        (Term::Func(f, args), GroundTerm::Func(g, vals)) => {
            f == g
                && args.len() == vals.len()
                && args.iter().zip(vals).all(|(p, v)| match_term(p, v, vars, binding))
        }
        _ => false,
    }
}

fn substitute(t: &Term, vars: &[Symbol], binding: &[Option<GroundTerm>]) -> Option<GroundTerm> {
    match t {
        Term::Var(v) => {
            let i = vars.iter().position(|x| x == v)?;
            binding[i].clone()
        }
        Term::Func(f, args) => Some(GroundTerm::Func(
            f.clone(),
            args.iter().map(|a| substitute(a, vars, binding)).collect::<Option<_>>()?,
        )),
        other => other.to_ground(),
    }
}

/// Whether `l` is a ground instance of some condition literal of `s`.
pub fn is_cond_instance(s: &SetName, l: &GroundLiteral) -> bool {
    s.cond.iter().any(|c| {
        let mut binding = vec![None; s.vars.len()];
        c.predicate == l.predicate
            && c.negated == l.negated
            && c.args.len() == l.args.len()
            && c.args.iter().zip(&l.args).all(|(p, v)| match_term(p, v, &s.vars, &mut binding))
    })
}

/// Every tuple `t̄` with `cond(t̄) ⊆ a`, sorted by tuple.
pub fn set_name_matches(s: &SetName, a: &BTreeSet<GroundLiteral>) -> Vec<Match> {
    fn go(
        s: &SetName,
        a: &BTreeSet<GroundLiteral>,
        depth: usize,
        binding: &mut [Option<GroundTerm>],
        out: &mut Vec<Match>,
    ) {
        let Some(pattern) = s.cond.get(depth) else {
            let tuple: Option<Tuple> = binding.iter().cloned().collect();
            if let Some(tuple) = tuple {
                let witness = s
                    .cond
                    .iter()
                    .map(|l| GroundLiteral {
                        predicate: l.predicate.clone(),
                        args: l.args.iter().map(|t| substitute(t, &s.vars, binding).unwrap()).collect(),
                        negated: l.negated,
                    })
                    .collect();
                out.push(Match { tuple, witness });
            }
            return;
        };
        for lit in literals_of(a, &pattern.predicate) {
            if lit.negated != pattern.negated || lit.args.len() != pattern.args.len() {
                continue;
            }
            let mut next = binding.to_vec();
            if pattern.args.iter().zip(&lit.args).all(|(p, v)| match_term(p, v, &s.vars, &mut next)) {
                go(s, a, depth + 1, &mut next, out);
            }
        }
    }
    let mut out = Vec::new();
    go(s, a, 0, &mut vec![None; s.vars.len()], &mut out);
    out.sort_by(|x, y| x.tuple.cmp(&y.tuple));
    out.dedup_by(|x, y| x.tuple == y.tuple);
    out
}

pub fn instantiate_set_name(s: &SetName, a: &Interpretation) -> Instantiation {
    set_name_matches(s, a.literals()).into_iter().map(|m| m.tuple).collect()
}

/// `None` when the aggregate is undefined on the instantiation. `sum`, `min`
/// and `max` read the first coordinate of each tuple and are only defined
/// when all of those are natural numbers.
pub fn eval_aggregate(f: AggregateFn, inst: &Instantiation) -> Result<Option<i64>> {
    if f == AggregateFn::Card {
        return Ok(Some(inst.len() as i64));
    }
    let firsts: Option<Vec<i64>> = inst.0.iter().map(|t| t.first().and_then(GroundTerm::as_natural)).collect();
    let Some(values) = firsts else { return Ok(None) };
    Ok(match f {
        AggregateFn::Sum => {
            let total: i128 = values.iter().map(|&v| v as i128).sum();
            Some(i64::try_from(total).map_err(|_| Error::Overflow("sum aggregate".into()))?)
        }
        AggregateFn::Min => values.iter().copied().min(),
        AggregateFn::Max => values.iter().copied().max(),
        AggregateFn::Card => unreachable!(),
    })
}

/// Evaluates `sa` with its set names (in [`SetAtom::set_names`] order)
/// already instantiated.
pub fn eval_with_instantiations(sa: &SetAtom, insts: &[Instantiation]) -> Result<TruthValue> {
    Ok(match sa {
        SetAtom::AggCmp { func, op, bound, .. } => {
            let k = bound.as_int().ok_or_else(|| Error::NotGround(format!("aggregate bound `{bound}`")))?;
            match eval_aggregate(*func, &insts[0])? {
                Some(v) => TruthValue::from_bool(op.holds(v, k)),
                None => TruthValue::Undefined,
            }
        }
        SetAtom::AggAggCmp { left_fn, op, right_fn, .. } => {
            match (eval_aggregate(*left_fn, &insts[0])?, eval_aggregate(*right_fn, &insts[1])?) {
                (Some(l), Some(r)) => TruthValue::from_bool(op.holds(l, r)),
                _ => TruthValue::Undefined,
            }
        }
        SetAtom::SetRel { op, .. } => TruthValue::from_bool(op.holds(&insts[0].0, &insts[1].0)),
    })
}

pub fn eval_set_atom(sa: &SetAtom, a: &Interpretation) -> Result<TruthValue> {
    let insts: Vec<Instantiation> = sa.set_names().into_iter().map(|s| instantiate_set_name(s, a)).collect();
    eval_with_instantiations(sa, &insts)
}

pub fn eval_body_element(el: &GroundBody, a: &Interpretation) -> Result<TruthValue> {
    Ok(match el {
        GroundBody::Pos(l) => TruthValue::from_bool(a.contains(l)),
        GroundBody::Naf(l) => TruthValue::from_bool(!a.contains(l)),
        GroundBody::Set(sa) => eval_set_atom(sa, a)?,
    })
}

pub fn eval_body(body: &[GroundBody], a: &Interpretation) -> Result<TruthValue> {
    let mut value = TruthValue::True;
    for el in body {
        value = value.and(eval_body_element(el, a)?);
        if value == TruthValue::False {
            break;
        }
    }
    Ok(value)
}

pub fn head_true(head: &GroundHead, a: &Interpretation) -> bool {
    match head {
        GroundHead::Disjunction(lits) => lits.iter().any(|l| a.contains(l)),
        GroundHead::SetIntro { kind, predicate, set } => {
            let ext = a.extension(predicate);
            let inst = instantiate_set_name(set, a).0;
            match kind {
                SetIntroKind::SubsetOf => ext.is_subset(&inst),
                SetIntroKind::SupersetOf => inst.is_subset(&ext),
                SetIntroKind::Equals => ext == inst,
            }
        }
    }
}

/// A rule is satisfied when its head is true or its body is false or undefined.
pub fn rule_satisfied(r: &GroundRule, a: &Interpretation) -> Result<bool> {
    Ok(head_true(&r.head, a) || !eval_body(&r.body, a)?.is_true())
}
