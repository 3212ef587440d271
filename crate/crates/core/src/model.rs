//! Syntactic and semantic domain types shared by the whole engine.
//!
//! Non-ground programs ([`Program`], [`Rule`]) come out of the parser; the
//! grounder turns them into [`GroundProgram`]s whose regular literals are
//! ground and whose set names keep only their own bound variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub type Symbol = Arc<str>;

pub fn sym(s: &str) -> Symbol {
    Arc::from(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    pub fn as_str(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        }
    }

    /// `None` on overflow.
    pub fn apply(self, l: i64, r: i64) -> Option<i64> {
        match self {
            ArithOp::Add => l.checked_add(r),
            ArithOp::Sub => l.checked_sub(r),
            ArithOp::Mul => l.checked_mul(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Int(i64),
    Const(Symbol),
    Var(Symbol),
    Func(Symbol, Vec<Term>),
    Arith(ArithOp, Box<Term>, Box<Term>),
}

impl Term {
    /// Ground terms contain no variables and no arithmetic.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Int(_) | Term::Const(_) => true,
            Term::Var(_) | Term::Arith(..) => false,
            Term::Func(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Int(_) | Term::Const(_) | Term::Var(_) => 1,
            Term::Func(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            Term::Arith(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn to_ground(&self) -> Option<GroundTerm> {
        match self {
            Term::Int(i) => Some(GroundTerm::Int(*i)),
            Term::Const(c) => Some(GroundTerm::Const(c.clone())),
            Term::Func(f, args) => args
                .iter()
                .map(Term::to_ground)
                .collect::<Option<Vec<_>>>()
                .map(|args| GroundTerm::Func(f.clone(), args)),
            Term::Var(_) | Term::Arith(..) => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Term::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// Appends variables in first-occurrence order, without duplicates.
    pub fn collect_vars(&self, out: &mut Vec<Symbol>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Func(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Arith(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Int(_) | Term::Const(_) => {}
        }
    }

    pub fn has_arith(&self) -> bool {
        match self {
            Term::Arith(..) => true,
            Term::Func(_, args) => args.iter().any(Term::has_arith),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundTerm {
    Int(i64),
    Const(Symbol),
    Func(Symbol, Vec<GroundTerm>),
}

impl GroundTerm {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            GroundTerm::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// Natural numbers are the only values `sum`, `min` and `max` are defined on.
    pub fn as_natural(&self) -> Option<i64> {
        self.as_int().filter(|i| *i >= 0)
    }
}

impl From<&GroundTerm> for Term {
    fn from(t: &GroundTerm) -> Self {
        match t {
            GroundTerm::Int(i) => Term::Int(*i),
            GroundTerm::Const(c) => Term::Const(c.clone()),
            GroundTerm::Func(f, args) => Term::Func(f.clone(), args.iter().map(Term::from).collect()),
        }
    }
}

/// A regular literal: an atom, possibly under classical negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub negated: bool,
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(negated: bool, predicate: &str, args: Vec<Term>) -> Self {
        Literal { negated, predicate: sym(predicate), args }
    }

    pub fn collect_vars(&self, out: &mut Vec<Symbol>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub fn to_ground(&self) -> Option<GroundLiteral> {
        let args = self.args.iter().map(Term::to_ground).collect::<Option<Vec<_>>>()?;
        Some(GroundLiteral { predicate: self.predicate.clone(), args, negated: self.negated })
    }
}

/// Field order fixes the output order: predicate, then arguments, then
/// positive before classically negated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundLiteral {
    pub predicate: Symbol,
    pub args: Vec<GroundTerm>,
    pub negated: bool,
}

impl GroundLiteral {
    pub fn new(negated: bool, predicate: &str, args: Vec<GroundTerm>) -> Self {
        GroundLiteral { predicate: sym(predicate), args, negated }
    }

    pub fn complement(&self) -> Self {
        GroundLiteral { negated: !self.negated, ..self.clone() }
    }
}

impl From<&GroundLiteral> for Literal {
    fn from(l: &GroundLiteral) -> Self {
        Literal {
            negated: l.negated,
            predicate: l.predicate.clone(),
            args: l.args.iter().map(Term::from).collect(),
        }
    }
}

pub fn complement(l: &GroundLiteral) -> GroundLiteral {
    l.complement()
}

/// True iff no literal occurs together with its classical complement.
pub fn is_consistent<'a>(lits: impl IntoIterator<Item = &'a GroundLiteral>) -> bool {
    let set: BTreeSet<&GroundLiteral> = lits.into_iter().collect();
    set.iter().all(|l| !l.negated || !set.contains(&l.complement()))
}

/// `{X̄ : cond}`. `vars` are the variables bound by the set name, in the
/// order written; they fix the tuple layout of the denoted set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetName {
    pub vars: Vec<Symbol>,
    pub cond: Vec<Literal>,
}

impl SetName {
    pub fn new(vars: &[&str], cond: Vec<Literal>) -> Self {
        SetName { vars: vars.iter().map(|v| sym(v)).collect(), cond }
    }

    /// `{X1,..,Xn : p(X1,..,Xn)}`, the set name a bare predicate stands for.
    pub fn of_predicate(predicate: &Symbol, vars: &[Symbol]) -> Self {
        SetName {
            vars: vars.to_vec(),
            cond: vec![Literal {
                negated: false,
                predicate: predicate.clone(),
                args: vars.iter().map(|v| Term::Var(v.clone())).collect(),
            }],
        }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Variables in `cond` that are not bound by this set name.
    pub fn free_vars(&self) -> Vec<Symbol> {
        let mut all = Vec::new();
        self.cond.iter().for_each(|l| l.collect_vars(&mut all));
        all.retain(|v| !self.vars.contains(v));
        all
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AggregateFn {
    Card,
    Sum,
    Min,
    Max,
}

impl AggregateFn {
    pub fn as_str(self) -> &'static str {
        match self {
            AggregateFn::Card => "card",
            AggregateFn::Sum => "sum",
            AggregateFn::Min => "min",
            AggregateFn::Max => "max",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "card" => Some(AggregateFn::Card),
            "sum" => Some(AggregateFn::Sum),
            "min" => Some(AggregateFn::Min),
            "max" => Some(AggregateFn::Max),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Gt,
    Ge,
    Lt,
    Le,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn holds<T: Ord>(self, l: T, r: T) -> bool {
        match self {
            CmpOp::Gt => l > r,
            CmpOp::Ge => l >= r,
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
        }
    }

    /// The relation with its operands swapped: `a op b` iff `b op.flip() a`.
    pub fn flip(self) -> Self {
        match self {
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Ge => CmpOp::Le,
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Eq | CmpOp::Ne => self,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetRelOp {
    /// Strict subset.
    Subset,
    SubsetEq,
    Equal,
}

impl SetRelOp {
    pub fn holds<T: Ord>(self, l: &BTreeSet<T>, r: &BTreeSet<T>) -> bool {
        match self {
            SetRelOp::Subset => l.is_subset(r) && l.len() < r.len(),
            SetRelOp::SubsetEq => l.is_subset(r),
            SetRelOp::Equal => l == r,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SetRelOp::Subset => "<",
            SetRelOp::SubsetEq => "<=",
            SetRelOp::Equal => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetAtom {
    /// `f(S) op k`. The bound is an integer term once grounded.
    AggCmp { func: AggregateFn, set: SetName, op: CmpOp, bound: Term },
    /// `f1(S1) op f2(S2)`.
    AggAggCmp { left_fn: AggregateFn, left: SetName, op: CmpOp, right_fn: AggregateFn, right: SetName },
    /// `S1 op S2`; `p op S` is stored with `p` expanded to `{X̄ : p(X̄)}`.
    SetRel { left: SetName, op: SetRelOp, right: SetName },
}

impl SetAtom {
    /// Set name occurrences, left to right. Each is one coordinate of a
    /// support vector.
    pub fn set_names(&self) -> Vec<&SetName> {
        match self {
            SetAtom::AggCmp { set, .. } => vec![set],
            SetAtom::AggAggCmp { left, right, .. } | SetAtom::SetRel { left, right, .. } => {
                vec![left, right]
            }
        }
    }

    pub fn set_names_mut(&mut self) -> Vec<&mut SetName> {
        match self {
            SetAtom::AggCmp { set, .. } => vec![set],
            SetAtom::AggAggCmp { left, right, .. } | SetAtom::SetRel { left, right, .. } => {
                vec![left, right]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetIntroKind {
    /// `p ⊆ S`
    SubsetOf,
    /// `S ⊆ p`
    SupersetOf,
    /// `p = S`
    Equals,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Disjunction(Vec<Literal>),
    SetIntro { kind: SetIntroKind, predicate: Symbol, set: SetName },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BodyElement {
    Pos(Literal),
    Naf(Literal),
    Set(SetAtom),
    /// Builtin comparison between terms, resolved during grounding.
    Cmp(Term, CmpOp, Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Head,
    pub body: Vec<BodyElement>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub arities: BTreeMap<Symbol, usize>,
    pub constants: BTreeSet<Symbol>,
    /// Integers occurring as (sub)terms of literals.
    pub integers: BTreeSet<i64>,
    /// From a `#int(min,max).` directive.
    pub int_range: Option<(i64, i64)>,
}

/// Two uses of one predicate with different arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityConflict {
    pub predicate: Symbol,
    pub first: usize,
    pub second: usize,
}

impl Signature {
    pub fn collect(rules: &[Rule], int_range: Option<(i64, i64)>) -> Result<Self, ArityConflict> {
        let mut sig = Signature { int_range, ..Default::default() };
        for rule in rules {
            match &rule.head {
                Head::Disjunction(lits) => {
                    for l in lits {
                        sig.add_literal(l)?;
                    }
                }
                Head::SetIntro { predicate, set, .. } => {
                    sig.add_arity(predicate, set.arity())?;
                    sig.add_set_name(set)?;
                }
            }
            for el in &rule.body {
                match el {
                    BodyElement::Pos(l) | BodyElement::Naf(l) => sig.add_literal(l)?,
                    BodyElement::Set(sa) => {
                        if let SetAtom::AggCmp { bound, .. } = sa {
                            sig.add_term(bound);
                        }
                        for s in sa.set_names() {
                            sig.add_set_name(s)?;
                        }
                    }
                    BodyElement::Cmp(l, _, r) => {
                        sig.add_term(l);
                        sig.add_term(r);
                    }
                }
            }
        }
        Ok(sig)
    }

    pub fn add_arity(&mut self, predicate: &Symbol, arity: usize) -> Result<(), ArityConflict> {
        match self.arities.get(predicate) {
            Some(&a) if a != arity => {
                Err(ArityConflict { predicate: predicate.clone(), first: a, second: arity })
            }
            Some(_) => Ok(()),
            None => {
                self.arities.insert(predicate.clone(), arity);
                Ok(())
            }
        }
    }

    fn add_literal(&mut self, l: &Literal) -> Result<(), ArityConflict> {
        self.add_arity(&l.predicate, l.args.len())?;
        l.args.iter().for_each(|t| self.add_term(t));
        Ok(())
    }

    fn add_set_name(&mut self, s: &SetName) -> Result<(), ArityConflict> {
        s.cond.iter().try_for_each(|l| self.add_literal(l))
    }

    fn add_term(&mut self, t: &Term) {
        match t {
            Term::Int(i) => {
                self.integers.insert(*i);
            }
            Term::Const(c) => {
                self.constants.insert(c.clone());
            }
            Term::Var(_) => {}
            Term::Func(_, args) => args.iter().for_each(|a| self.add_term(a)),
            Term::Arith(_, l, r) => {
                self.add_term(l);
                self.add_term(r);
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub signature: Signature,
}

impl Program {
    pub fn new(rules: Vec<Rule>, int_range: Option<(i64, i64)>) -> Result<Self, ArityConflict> {
        let signature = Signature::collect(&rules, int_range)?;
        Ok(Program { rules, signature })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundHead {
    Disjunction(Vec<GroundLiteral>),
    SetIntro { kind: SetIntroKind, predicate: Symbol, set: SetName },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundBody {
    Pos(GroundLiteral),
    Naf(GroundLiteral),
    Set(SetAtom),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundRule {
    pub head: GroundHead,
    pub body: Vec<GroundBody>,
}

impl GroundRule {
    pub fn fact(l: GroundLiteral) -> Self {
        GroundRule { head: GroundHead::Disjunction(vec![l]), body: Vec::new() }
    }

    pub fn has_set_atoms(&self) -> bool {
        self.body.iter().any(|b| matches!(b, GroundBody::Set(_)))
    }

    pub fn is_set_intro(&self) -> bool {
        matches!(self.head, GroundHead::SetIntro { .. })
    }
}

/// A grounded program together with the term pool and arities it was
/// grounded over.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
    pub arities: BTreeMap<Symbol, usize>,
    pub pool: BTreeSet<GroundTerm>,
}

impl GroundProgram {
    /// Same signature, different rules.
    pub fn with_rules(&self, rules: Vec<GroundRule>) -> Self {
        GroundProgram { rules, arities: self.arities.clone(), pool: self.pool.clone() }
    }

    pub fn has_set_intro(&self) -> bool {
        self.rules.iter().any(GroundRule::is_set_intro)
    }

    pub fn is_set_free(&self) -> bool {
        self.rules.iter().all(|r| !r.is_set_intro() && !r.has_set_atoms())
    }
}

/// A finite set of ground literals; a candidate answer set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<GroundLiteral>);

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, l: &GroundLiteral) -> bool {
        self.0.contains(l)
    }

    pub fn insert(&mut self, l: GroundLiteral) -> bool {
        self.0.insert(l)
    }

    pub fn is_consistent(&self) -> bool {
        is_consistent(&self.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundLiteral> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn literals(&self) -> &BTreeSet<GroundLiteral> {
        &self.0
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    /// `{t̄ : p(t̄) ∈ A}` for positive literals of `predicate`.
    pub fn extension(&self, predicate: &Symbol) -> BTreeSet<Vec<GroundTerm>> {
        self.0
            .iter()
            .filter(|l| !l.negated && &l.predicate == predicate)
            .map(|l| l.args.clone())
            .collect()
    }

    pub fn intersection(&self, other: &BTreeSet<GroundLiteral>) -> Interpretation {
        Interpretation(self.0.intersection(other).cloned().collect())
    }
}

impl FromIterator<GroundLiteral> for Interpretation {
    fn from_iter<I: IntoIterator<Item = GroundLiteral>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl From<BTreeSet<GroundLiteral>> for Interpretation {
    fn from(s: BTreeSet<GroundLiteral>) -> Self {
        Interpretation(s)
    }
}

impl IntoIterator for Interpretation {
    type Item = GroundLiteral;
    type IntoIter = std::collections::btree_set::IntoIter<GroundLiteral>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Interpretation {
    type Item = &'a GroundLiteral;
    type IntoIter = std::collections::btree_set::Iter<'a, GroundLiteral>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Undefined,
}

impl TruthValue {
    /// Three-valued conjunction: false dominates undefined.
    pub fn and(self, other: TruthValue) -> TruthValue {
        use TruthValue::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (Undefined, _) | (_, Undefined) => Undefined,
            (True, True) => True,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn is_true(self) -> bool {
        self == TruthValue::True
    }
}

// ---------------------------------------------------------------------------
// Concrete syntax

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

fn write_args<T: fmt::Display>(f: &mut fmt::Formatter<'_>, args: &[T]) -> fmt::Result {
    if !args.is_empty() {
        f.write_str("(")?;
        join(f, args, ",")?;
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(i) => write!(f, "{i}"),
            Term::Const(c) | Term::Var(c) => f.write_str(c),
            Term::Func(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
            Term::Arith(op, l, r) => {
                let side = |f: &mut fmt::Formatter<'_>, t: &Term| match t {
                    Term::Arith(..) => write!(f, "({t})"),
                    _ => write!(f, "{t}"),
                };
                side(f, l)?;
                f.write_str(op.as_str())?;
                side(f, r)
            }
        }
    }
}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundTerm::Int(i) => write!(f, "{i}"),
            GroundTerm::Const(c) => f.write_str(c),
            GroundTerm::Func(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        write_args(f, &self.args)
    }
}

impl fmt::Display for GroundLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        write_args(f, &self.args)
    }
}

impl fmt::Display for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        join(f, &self.vars, ",")?;
        // `:-` would lex as the rule arrow
        if self.cond.first().is_some_and(|l| l.negated) {
            f.write_str(": ")?;
        } else {
            f.write_str(":")?;
        }
        join(f, &self.cond, ",")?;
        f.write_str("}")
    }
}

impl fmt::Display for SetAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetAtom::AggCmp { func, set, op, bound } => {
                write!(f, "{}{} {} {}", func.as_str(), set, op.as_str(), bound)
            }
            SetAtom::AggAggCmp { left_fn, left, op, right_fn, right } => write!(
                f,
                "{}{} {} {}{}",
                left_fn.as_str(),
                left,
                op.as_str(),
                right_fn.as_str(),
                right
            ),
            SetAtom::SetRel { left, op, right } => write!(f, "{} {} {}", left, op.as_str(), right),
        }
    }
}

fn write_set_intro(
    f: &mut fmt::Formatter<'_>,
    kind: SetIntroKind,
    predicate: &Symbol,
    set: &SetName,
) -> fmt::Result {
    match kind {
        SetIntroKind::SubsetOf => write!(f, "{predicate} <= {set}"),
        SetIntroKind::SupersetOf => write!(f, "{set} <= {predicate}"),
        SetIntroKind::Equals => write!(f, "{predicate} = {set}"),
    }
}

impl fmt::Display for BodyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyElement::Pos(l) => write!(f, "{l}"),
            BodyElement::Naf(l) => write!(f, "not {l}"),
            BodyElement::Set(sa) => write!(f, "{sa}"),
            BodyElement::Cmp(l, op, r) => write!(f, "{} {} {}", l, op.as_str(), r),
        }
    }
}

impl fmt::Display for GroundBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundBody::Pos(l) => write!(f, "{l}"),
            GroundBody::Naf(l) => write!(f, "not {l}"),
            GroundBody::Set(sa) => write!(f, "{sa}"),
        }
    }
}

/// Shared layout for every rule flavour: `head :- b1, b2.`, `head.`,
/// `:- body.` and the empty rule `:- .`.
pub(crate) fn write_rule(
    f: &mut fmt::Formatter<'_>,
    head: &dyn Fn(&mut fmt::Formatter<'_>) -> Result<bool, fmt::Error>,
    body: &[&dyn fmt::Display],
) -> fmt::Result {
    let has_head = head(f)?;
    if body.is_empty() {
        return f.write_str(if has_head { "." } else { ":- ." });
    }
    f.write_str(if has_head { " :- " } else { ":- " })?;
    join(f, body, ", ")?;
    f.write_str(".")
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<&dyn fmt::Display> = self.body.iter().map(|b| b as &dyn fmt::Display).collect();
        write_rule(
            f,
            &|f| match &self.head {
                Head::Disjunction(lits) => {
                    join(f, lits, " | ")?;
                    Ok(!lits.is_empty())
                }
                Head::SetIntro { kind, predicate, set } => {
                    write_set_intro(f, *kind, predicate, set)?;
                    Ok(true)
                }
            },
            &body,
        )
    }
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<&dyn fmt::Display> = self.body.iter().map(|b| b as &dyn fmt::Display).collect();
        write_rule(
            f,
            &|f| match &self.head {
                GroundHead::Disjunction(lits) => {
                    join(f, lits, " | ")?;
                    Ok(!lits.is_empty())
                }
                GroundHead::SetIntro { kind, predicate, set } => {
                    write_set_intro(f, *kind, predicate, set)?;
                    Ok(true)
                }
            },
            &body,
        )
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((lo, hi)) = self.signature.int_range {
            writeln!(f, "#int({lo},{hi}).")?;
        }
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let lits: Vec<_> = self.0.iter().collect();
        join(f, &lits, ", ")?;
        f.write_str("}")
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Undefined => "undefined",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(neg: bool, p: &str, args: &[i64]) -> GroundLiteral {
        GroundLiteral::new(neg, p, args.iter().map(|i| GroundTerm::Int(*i)).collect())
    }

    #[test]
    fn complement_flips_and_is_involutive() {
        let p1 = lit(false, "p", &[1]);
        assert_eq!(complement(&p1), lit(true, "p", &[1]));
        let nq = GroundLiteral::new(
            true,
            "q",
            vec![GroundTerm::Const(sym("a")), GroundTerm::Const(sym("b"))],
        );
        assert!(!complement(&nq).negated);
        assert_eq!(complement(&nq).predicate, sym("q"));
        let p0 = lit(false, "p", &[0]);
        assert_eq!(complement(&complement(&p0)), p0);
    }

    #[test]
    fn consistency() {
        let qa = GroundLiteral::new(false, "q", vec![GroundTerm::Const(sym("a"))]);
        assert!(is_consistent(&[lit(false, "p", &[1]), qa]));
        assert!(!is_consistent(&[lit(false, "p", &[1]), lit(true, "p", &[1])]));
        assert!(is_consistent(&Vec::<GroundLiteral>::new()));
    }

    #[test]
    fn literal_order_puts_negative_after_positive() {
        let mut v = [lit(true, "p", &[0]), lit(false, "q", &[0]), lit(false, "p", &[1]), lit(false, "p", &[0])];
        v.sort();
        let shown: Vec<String> = v.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["p(0)", "-p(0)", "p(1)", "q(0)"]);
    }

    #[test]
    fn ground_terms() {
        let t = Term::Func(sym("f"), vec![Term::Const(sym("a")), Term::Int(3)]);
        assert!(t.is_ground());
        let v = Term::Func(sym("f"), vec![Term::Var(sym("X"))]);
        assert!(!v.is_ground());
        let a = Term::Arith(ArithOp::Add, Box::new(Term::Int(1)), Box::new(Term::Int(2)));
        assert!(!a.is_ground());
        assert_eq!(a.depth(), 2);
    }

    #[test]
    fn three_valued_and() {
        use TruthValue::*;
        assert_eq!(True.and(Undefined), Undefined);
        assert_eq!(Undefined.and(False), False);
        assert_eq!(True.and(True), True);
    }

    #[test]
    fn strict_subset() {
        let a: BTreeSet<i32> = [1].into();
        let b: BTreeSet<i32> = [1, 2].into();
        assert!(SetRelOp::Subset.holds(&a, &b));
        assert!(!SetRelOp::Subset.holds(&a, &a));
        assert!(SetRelOp::SubsetEq.holds(&a, &a));
        assert!(SetRelOp::Equal.holds(&b, &b));
    }
}
