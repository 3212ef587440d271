//! Naive full instantiation over a finite domain.
//!
//! Every rule variable (a variable occurring outside set names, possibly
//! also inside them) is bound to every value of the domain: the program's
//! object constants plus the integers of the configured range. Set names
//! keep their own variables. Arithmetic is evaluated; builtin comparisons
//! are decided and removed, deleting the instance when they are false.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::*;
use crate::{Error, Limits, Result};

pub type Binding = BTreeMap<Symbol, GroundTerm>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DomainConfig {
    /// Inclusive; `None` means no integers besides those written in the program.
    pub int_range: Option<(i64, i64)>,
    pub constants: BTreeSet<Symbol>,
}

impl DomainConfig {
    /// Constants of the program; the `#int` range if declared, otherwise the
    /// span of integers written in the program.
    pub fn for_program(p: &Program) -> Self {
        let sig = &p.signature;
        let int_range = sig.int_range.or_else(|| {
            let lo = sig.integers.first()?;
            let hi = sig.integers.last()?;
            Some((*lo, *hi))
        });
        DomainConfig { int_range, constants: sig.constants.clone() }
    }

    pub fn with_int_range(mut self, lo: i64, hi: i64) -> Self {
        self.int_range = Some((lo, hi));
        self
    }

    fn in_range(&self, i: i64) -> bool {
        self.int_range.is_some_and(|(lo, hi)| lo <= i && i <= hi)
    }

    /// Values rule variables range over, sorted.
    pub fn values(&self, limits: &Limits) -> Result<Vec<GroundTerm>> {
        let mut out = Vec::new();
        if let Some((lo, hi)) = self.int_range {
            if lo > hi {
                return Err(Error::Type(format!("empty integer range {lo}..{hi}")));
            }
            let size = (hi as i128 - lo as i128 + 1) as u128;
            if size > limits.max_int_range {
                return Err(Error::DomainTooLarge { what: "integer range", needed: size, limit: limits.max_int_range });
            }
            out.extend((lo..=hi).map(GroundTerm::Int));
        }
        out.extend(self.constants.iter().cloned().map(GroundTerm::Const));
        Ok(out)
    }
}

/// Evaluates a term under a binding of all its variables.
pub fn eval_arith(t: &Term, binding: &Binding) -> Result<GroundTerm> {
    match t {
        Term::Int(i) => Ok(GroundTerm::Int(*i)),
        Term::Const(c) => Ok(GroundTerm::Const(c.clone())),
        Term::Var(v) => binding
            .get(v)
            .cloned()
            .ok_or_else(|| Error::Scope(format!("variable `{v}` is not bound"))),
        Term::Func(f, args) => Ok(GroundTerm::Func(
            f.clone(),
            args.iter().map(|a| eval_arith(a, binding)).collect::<Result<_>>()?,
        )),
        Term::Arith(op, l, r) => {
            let (lv, rv) = (eval_arith(l, binding)?, eval_arith(r, binding)?);
            match (&lv, &rv) {
                (GroundTerm::Int(a), GroundTerm::Int(b)) => op
                    .apply(*a, *b)
                    .map(GroundTerm::Int)
                    .ok_or_else(|| Error::Overflow(format!("{a}{}{b}", op.as_str()))),
                _ => Err(Error::Type(format!("`{lv}{}{rv}` needs integer operands", op.as_str()))),
            }
        }
    }
}

/// Instances whose arithmetic fails to type-check or leaves the range are
/// dropped; overflow is fatal.
enum Inst<T> {
    Keep(T),
    Drop,
}

fn ground_term(t: &Term, binding: &Binding, d: &DomainConfig) -> Result<Inst<GroundTerm>> {
    match eval_arith(t, binding) {
        Ok(g) => {
            if let (Term::Arith(..), GroundTerm::Int(i)) = (t, &g) {
                if !d.in_range(*i) {
                    return Ok(Inst::Drop);
                }
            }
            Ok(Inst::Keep(g))
        }
        Err(Error::Type(_)) => Ok(Inst::Drop),
        Err(e) => Err(e),
    }
}

fn ground_literal(l: &Literal, binding: &Binding, d: &DomainConfig) -> Result<Inst<GroundLiteral>> {
    let mut args = Vec::with_capacity(l.args.len());
    for a in &l.args {
        match ground_term(a, binding, d)? {
            Inst::Keep(g) => args.push(g),
            Inst::Drop => return Ok(Inst::Drop),
        }
    }
    Ok(Inst::Keep(GroundLiteral { predicate: l.predicate.clone(), args, negated: l.negated }))
}

/// Substitutes rule variables inside a set name; set variables stay.
fn subst_term(t: &Term, binding: &Binding, d: &DomainConfig) -> Result<Inst<Term>> {
    let mut vars = Vec::new();
    t.collect_vars(&mut vars);
    if vars.iter().all(|v| binding.contains_key(v)) {
        return Ok(match ground_term(t, binding, d)? {
            Inst::Keep(g) => Inst::Keep(Term::from(&g)),
            Inst::Drop => Inst::Drop,
        });
    }
    Ok(match t {
        Term::Func(f, args) => {
            let mut out = Vec::with_capacity(args.len());
            for a in args {
                match subst_term(a, binding, d)? {
                    Inst::Keep(g) => out.push(g),
                    Inst::Drop => return Ok(Inst::Drop),
                }
            }
            Inst::Keep(Term::Func(f.clone(), out))
        }
        other => Inst::Keep(other.clone()),
    })
}

fn subst_set_name(s: &SetName, binding: &Binding, d: &DomainConfig) -> Result<Inst<SetName>> {
    let mut cond = Vec::with_capacity(s.cond.len());
    for l in &s.cond {
        let mut args = Vec::with_capacity(l.args.len());
        for a in &l.args {
            match subst_term(a, binding, d)? {
                Inst::Keep(t) => args.push(t),
                Inst::Drop => return Ok(Inst::Drop),
            }
        }
        cond.push(Literal { negated: l.negated, predicate: l.predicate.clone(), args });
    }
    Ok(Inst::Keep(SetName { vars: s.vars.clone(), cond }))
}

fn subst_set_atom(sa: &SetAtom, binding: &Binding, d: &DomainConfig) -> Result<Inst<SetAtom>> {
    let mut out = sa.clone();
    for s in out.set_names_mut() {
        match subst_set_name(s, binding, d)? {
            Inst::Keep(g) => *s = g,
            Inst::Drop => return Ok(Inst::Drop),
        }
    }
    if let SetAtom::AggCmp { bound, .. } = &mut out {
        match ground_term(bound, binding, d)? {
            Inst::Keep(GroundTerm::Int(k)) => *bound = Term::Int(k),
            _ => return Ok(Inst::Drop),
        }
    }
    Ok(Inst::Keep(out))
}

/// Rule variables in a deterministic (lexicographic) order.
pub fn rule_variables(r: &Rule) -> Vec<Symbol> {
    let mut vars = Vec::new();
    if let Head::Disjunction(lits) = &r.head {
        lits.iter().for_each(|l| l.collect_vars(&mut vars));
    }
    if let Head::SetIntro { set, .. } = &r.head {
        vars.extend(set.free_vars());
    }
    for el in &r.body {
        match el {
            BodyElement::Pos(l) | BodyElement::Naf(l) => l.collect_vars(&mut vars),
            BodyElement::Cmp(l, _, r) => {
                l.collect_vars(&mut vars);
                r.collect_vars(&mut vars);
            }
            BodyElement::Set(sa) => {
                if let SetAtom::AggCmp { bound, .. } = sa {
                    bound.collect_vars(&mut vars);
                }
                for s in sa.set_names() {
                    vars.extend(s.free_vars());
                }
            }
        }
    }
    let set: BTreeSet<Symbol> = vars.into_iter().collect();
    set.into_iter().collect()
}

/// Rejects rules with a variable that only occurs under `not`.
fn check_safety(r: &Rule) -> Result<()> {
    let mut naf_vars = Vec::new();
    let mut other = r.clone();
    other.body.retain(|el| match el {
        BodyElement::Naf(l) => {
            l.collect_vars(&mut naf_vars);
            false
        }
        _ => true,
    });
    let elsewhere = rule_variables(&other);
    match naf_vars.iter().find(|v| !elsewhere.contains(v)) {
        Some(v) => Err(Error::Scope(format!("variable `{v}` occurs only under `not` in `{r}`"))),
        None => Ok(()),
    }
}

fn instantiate(r: &Rule, binding: &Binding, d: &DomainConfig) -> Result<Option<GroundRule>> {
    macro_rules! keep {
        ($e:expr) => {
            match $e? {
                Inst::Keep(v) => v,
                Inst::Drop => return Ok(None),
            }
        };
    }
    let head = match &r.head {
        Head::Disjunction(lits) => {
            let mut out = Vec::with_capacity(lits.len());
            for l in lits {
                out.push(keep!(ground_literal(l, binding, d)));
            }
            GroundHead::Disjunction(out)
        }
        Head::SetIntro { kind, predicate, set } => GroundHead::SetIntro {
            kind: *kind,
            predicate: predicate.clone(),
            set: keep!(subst_set_name(set, binding, d)),
        },
    };
    let mut body = Vec::with_capacity(r.body.len());
    for el in &r.body {
        match el {
            BodyElement::Pos(l) => body.push(GroundBody::Pos(keep!(ground_literal(l, binding, d)))),
            BodyElement::Naf(l) => body.push(GroundBody::Naf(keep!(ground_literal(l, binding, d)))),
            BodyElement::Set(sa) => body.push(GroundBody::Set(keep!(subst_set_atom(sa, binding, d)))),
            BodyElement::Cmp(l, op, rt) => {
                let lv = keep!(ground_term(l, binding, d));
                let rv = keep!(ground_term(rt, binding, d));
                if !op.holds(&lv, &rv) {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(GroundRule { head, body }))
}

pub fn ground_program(p: &Program, d: &DomainConfig) -> Result<GroundProgram> {
    ground_program_with(p, d, &Limits::default())
}

pub fn ground_program_with(p: &Program, d: &DomainConfig, limits: &Limits) -> Result<GroundProgram> {
    let values = d.values(limits)?;
    let mut total: u128 = 0;
    let mut plans = Vec::with_capacity(p.rules.len());
    for r in &p.rules {
        check_safety(r)?;
        let vars = rule_variables(r);
        let count = (values.len() as u128)
            .checked_pow(vars.len() as u32)
            .unwrap_or(u128::MAX);
        total = total.saturating_add(count);
        if total > limits.max_instances {
            return Err(Error::DomainTooLarge {
                what: "ground instances",
                needed: total,
                limit: limits.max_instances,
            });
        }
        plans.push(vars);
    }

    let mut rules = Vec::new();
    for (r, vars) in p.rules.iter().zip(&plans) {
        // bindings in lexicographic order, last variable fastest
        let n = values.len();
        let count = n.pow(vars.len() as u32);
        for code in 0..count {
            let mut rest = code;
            let mut picked = vec![0usize; vars.len()];
            for slot in picked.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            let binding: Binding =
                vars.iter().cloned().zip(picked.iter().map(|&i| values[i].clone())).collect();
            if let Some(g) = instantiate(r, &binding, d)? {
                rules.push(g);
            }
        }
    }

    let mut pool: BTreeSet<GroundTerm> = values.into_iter().collect();
    for r in &rules {
        if let GroundHead::Disjunction(lits) = &r.head {
            for l in lits {
                pool.extend(l.args.iter().cloned());
            }
        }
        for b in &r.body {
            match b {
                GroundBody::Pos(l) | GroundBody::Naf(l) => pool.extend(l.args.iter().cloned()),
                GroundBody::Set(sa) => {
                    for s in sa.set_names() {
                        for l in &s.cond {
                            pool.extend(l.args.iter().filter_map(Term::to_ground));
                        }
                    }
                }
            }
        }
    }
    Ok(GroundProgram { rules, arities: p.signature.arities.clone(), pool })
}

/// Every literal formable from the program's predicates over its term
/// pool, in both polarities.
pub fn herbrand_atoms(g: &GroundProgram) -> Result<BTreeSet<GroundLiteral>> {
    herbrand_atoms_with(g, &Limits::default())
}

pub fn herbrand_atoms_with(g: &GroundProgram, limits: &Limits) -> Result<BTreeSet<GroundLiteral>> {
    let pool: Vec<GroundTerm> = g.pool.iter().cloned().collect();
    let mut size: u128 = 0;
    for &arity in g.arities.values() {
        let n = (pool.len() as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
        size = size.saturating_add(n.saturating_mul(2));
    }
    if size > limits.max_herbrand {
        return Err(Error::DomainTooLarge { what: "herbrand base", needed: size, limit: limits.max_herbrand });
    }
    let mut out = BTreeSet::new();
    for (pred, &arity) in &g.arities {
        for args in tuples(&pool, arity) {
            out.insert(GroundLiteral { predicate: pred.clone(), args: args.clone(), negated: false });
            out.insert(GroundLiteral { predicate: pred.clone(), args, negated: true });
        }
    }
    Ok(out)
}

/// All tuples of the given arity over `pool`, in lexicographic order.
pub fn tuples(pool: &[GroundTerm], arity: usize) -> Vec<Vec<GroundTerm>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    fn int(i: i64) -> GroundTerm {
        GroundTerm::Int(i)
    }

    #[test]
    fn eval_arith_cases() {
        let i = Term::Var(sym("I"));
        let plus2 = Term::Arith(ArithOp::Add, Box::new(i), Box::new(Term::Int(2)));
        let b: Binding = [(sym("I"), int(4))].into();
        assert_eq!(eval_arith(&plus2, &b).unwrap(), int(6));
        let b: Binding = [(sym("I"), GroundTerm::Const(sym("a")))].into();
        assert!(matches!(eval_arith(&plus2, &b), Err(Error::Type(_))));
        let six = Term::Arith(ArithOp::Mul, Box::new(Term::Int(3)), Box::new(Term::Int(2)));
        assert_eq!(eval_arith(&six, &Binding::new()).unwrap(), int(6));
        let big = Term::Arith(ArithOp::Mul, Box::new(Term::Int(i64::MAX)), Box::new(Term::Int(2)));
        assert!(matches!(eval_arith(&big, &Binding::new()), Err(Error::Overflow(_))));
    }

    #[test]
    fn p5_grounds_to_p6() {
        let p = parse_program("p(1) :- card{X: p(X)} = Y, Y >= 0.").unwrap();
        let d = DomainConfig::for_program(&p).with_int_range(0, 1);
        let g = ground_program(&p, &d).unwrap();
        let shown: Vec<String> = g.rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["p(1) :- card{X:p(X)} = 0.", "p(1) :- card{X:p(X)} = 1."]);
    }

    #[test]
    fn ground_input_is_unchanged() {
        let src = "q(a).\np(a) :- p <= {X:q(X)}.\nr | s :- not q(a), card{X:q(X)} > 0.\n";
        let p = parse_program(src).unwrap();
        let g = ground_program(&p, &DomainConfig::for_program(&p)).unwrap();
        assert_eq!(g.to_string(), pretty_print_ground(&p));
    }

    fn pretty_print_ground(p: &Program) -> String {
        p.rules.iter().map(|r| format!("{r}\n")).collect()
    }

    #[test]
    fn single_constant_substitution() {
        let p = parse_program("q(X) :- r(X).").unwrap();
        let mut d = DomainConfig::for_program(&p);
        d.constants.insert(sym("a"));
        let g = ground_program(&p, &d).unwrap();
        assert_eq!(g.to_string(), "q(a) :- r(a).\n");
    }

    #[test]
    fn arithmetic_leaving_range_drops_instance() {
        let p = parse_program("#int(0,4).\neven(0).\neven(I+2) :- even(I).").unwrap();
        let g = ground_program(&p, &DomainConfig::for_program(&p)).unwrap();
        let shown: Vec<String> = g.rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["even(0).", "even(2) :- even(0).", "even(3) :- even(1).", "even(4) :- even(2)."]);
    }

    #[test]
    fn rule_variables_inside_set_names_are_substituted() {
        let p = parse_program("t(m,c). r(c). ok(S) :- {C: r(C)} <= {C: t(S,C)}.").unwrap();
        let g = ground_program(&p, &DomainConfig::for_program(&p)).unwrap();
        assert!(g.to_string().contains("ok(m) :- {C:r(C)} <= {C:t(m,C)}."));
    }

    #[test]
    fn unsafe_rule_rejected() {
        let p = parse_program("p :- not q(X).").unwrap();
        assert!(matches!(ground_program(&p, &DomainConfig::for_program(&p)), Err(Error::Scope(_))));
        let ok = parse_program("-r(X) :- not r(X).").unwrap();
        assert!(ground_program(&ok, &DomainConfig::for_program(&ok)).is_ok());
    }

    #[test]
    fn instance_cap() {
        let p = parse_program("#int(0,99).\np(X,Y,Z) :- q(X), q(Y), q(Z).").unwrap();
        let limits = Limits { max_instances: 1000, ..Limits::default() };
        let e = ground_program_with(&p, &DomainConfig::for_program(&p), &limits).unwrap_err();
        assert!(e.is_cap());
    }

    #[test]
    fn herbrand_of_p0() {
        let p = parse_program("p(1) :- card{X: p(X)} != 1.").unwrap();
        let g = ground_program(&p, &DomainConfig::for_program(&p).with_int_range(0, 1)).unwrap();
        let h: Vec<String> = herbrand_atoms(&g).unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(h, ["p(0)", "-p(0)", "p(1)", "-p(1)"]);
        let empty = parse_program("").unwrap();
        let g = ground_program(&empty, &DomainConfig::for_program(&empty)).unwrap();
        assert!(herbrand_atoms(&g).unwrap().is_empty());
    }

    #[test]
    fn bounded_instance_count() {
        // |ground rules| <= |rules| * |domain|^(max free variables)
        let p = parse_program("#int(0,2).\nq(a).\np(X) :- q(X).\nr(X,Y) :- q(X), not p(Y).").unwrap();
        let d = DomainConfig::for_program(&p);
        let g = ground_program(&p, &d).unwrap();
        let dom = d.values(&Limits::default()).unwrap().len();
        assert!(g.rules.len() <= p.rules.len() * dom.pow(2));
    }
}
