//! Lexer and recursive-descent parser for `.alog` programs.
//!
//! ASCII and mathematical spellings are both accepted:
//!
//! | meaning              | ASCII            | unicode |
//! |----------------------|------------------|---------|
//! | rule arrow           | `:-`             | `←`     |
//! | classical negation   | `-`              | `¬`     |
//! | disjunction          | `\|`, `or`       | `∨`     |
//! | strict subset        | `<`, `<s`        | `⊂`     |
//! | subset               | `<=`, `<=s`      | `⊆`     |
//! | set equality         | `=`, `=s`        | `=`     |
//! | not equal            | `!=`             | `≠`     |
//! | ordering             | `>=`, `<=`       | `≥ ≤`   |
//!
//! `<`, `<=` and `=` relate sets when one operand is a set name (or a bare
//! predicate next to a set name) and numbers otherwise; the `s`-suffixed
//! forms are always set relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::model::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Scope,
    Arity,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Scope => "scope error",
            ParseErrorKind::Arity => "arity error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into(), kind }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    SetLt,
    SetLe,
    SetEq,
}

impl Rel {
    fn arith(self) -> Option<CmpOp> {
        match self {
            Rel::Lt => Some(CmpOp::Lt),
            Rel::Le => Some(CmpOp::Le),
            Rel::Gt => Some(CmpOp::Gt),
            Rel::Ge => Some(CmpOp::Ge),
            Rel::Eq => Some(CmpOp::Eq),
            Rel::Ne => Some(CmpOp::Ne),
            Rel::SetLt | Rel::SetLe | Rel::SetEq => None,
        }
    }

    fn set(self) -> Option<SetRelOp> {
        match self {
            Rel::Lt | Rel::SetLt => Some(SetRelOp::Subset),
            Rel::Le | Rel::SetLe => Some(SetRelOp::SubsetEq),
            Rel::Eq | Rel::SetEq => Some(SetRelOp::Equal),
            Rel::Gt | Rel::Ge | Rel::Ne => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    If,
    Bar,
    Minus,
    Plus,
    Star,
    Rel(Rel),
    Not,
    Or,
    IntDirective,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Rel(r) => write!(f, "relation {r:?}"),
            Tok::Not => f.write_str("`not`"),
            Tok::Or => f.write_str("`or`"),
            Tok::IntDirective => f.write_str("`#int`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        let peek = chars.get(i + 1).copied();
        // length in chars of the token just recognised
        let mut len = 1;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '|' | '∨' => Tok::Bar,
            '-' | '¬' => Tok::Minus,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '←' => Tok::If,
            '⊆' => Tok::Rel(Rel::SetLe),
            '⊂' => Tok::Rel(Rel::SetLt),
            '≠' => Tok::Rel(Rel::Ne),
            '≥' => Tok::Rel(Rel::Ge),
            '≤' => Tok::Rel(Rel::Le),
            ':' if peek == Some('-') => {
                len = 2;
                Tok::If
            }
            ':' => Tok::Colon,
            '!' if peek == Some('=') => {
                len = 2;
                Tok::Rel(Rel::Ne)
            }
            '>' if peek == Some('=') => {
                len = 2;
                Tok::Rel(Rel::Ge)
            }
            '>' => Tok::Rel(Rel::Gt),
            '<' | '=' => {
                let (base, set) = match (c, peek) {
                    ('<', Some('=')) => {
                        len = 2;
                        (Rel::Le, Rel::SetLe)
                    }
                    ('<', _) => (Rel::Lt, Rel::SetLt),
                    _ => (Rel::Eq, Rel::SetEq),
                };
                let suffix = chars.get(i + len) == Some(&'s')
                    && !chars.get(i + len + 1).is_some_and(|c| is_ident_char(*c));
                if suffix {
                    len += 1;
                    Tok::Rel(set)
                } else {
                    Tok::Rel(base)
                }
            }
            '#' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i + 1..j].iter().collect();
                if word != "int" {
                    return Err(pos.error(ParseErrorKind::Lexical, format!("unknown directive `#{word}`")));
                }
                len = j - i;
                Tok::IntDirective
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let value = text
                    .parse::<i64>()
                    .map_err(|_| pos.error(ParseErrorKind::Lexical, format!("integer `{text}` out of range")))?;
                len = j - i;
                Tok::Int(value)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                len = j - i;
                match word.as_str() {
                    "not" => Tok::Not,
                    "or" => Tok::Or,
                    _ if c.is_uppercase() || c == '_' => Tok::Var(word),
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(pos.error(ParseErrorKind::Lexical, format!("unexpected character `{other}`")));
            }
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

/// Options for [`parse_program_with`].
#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_term_depth: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_term_depth: 32 }
    }
}

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    parse_program_with(src, ParseOptions::default())
}

pub fn parse_program_with(src: &str, opts: ParseOptions) -> Result<Program, ParseError> {
    let mut p = Parser::new(src, opts)?;
    let mut rules = Vec::new();
    let mut int_range = None;
    while p.peek() != &Tok::Eof {
        if p.peek() == &Tok::IntDirective {
            let pos = p.pos();
            let range = p.int_directive()?;
            if int_range.replace(range).is_some() {
                return Err(pos.error(ParseErrorKind::Syntax, "duplicate #int directive"));
            }
        } else {
            rules.push(p.rule()?);
        }
    }
    // arities were already checked literal by literal
    let program = Program::new(rules, int_range).map_err(|c| {
        Pos { line: 1, column: 1 }.error(
            ParseErrorKind::Arity,
            format!("predicate `{}` used with arities {} and {}", c.predicate, c.first, c.second),
        )
    })?;
    Ok(program)
}

/// Parses a comma-separated list of ground literals, optionally wrapped in
/// braces: `p(1), -q(a)` or `{p(1), -q(a)}`.
pub fn parse_literals(src: &str) -> Result<Vec<GroundLiteral>, ParseError> {
    let mut p = Parser::new(src, ParseOptions::default())?;
    let braced = p.eat(&Tok::LBrace);
    let mut out = Vec::new();
    let closing = if braced { Tok::RBrace } else { Tok::Eof };
    if p.peek() != &closing {
        loop {
            let pos = p.pos();
            let lit = p.literal()?;
            let ground = lit
                .to_ground()
                .ok_or_else(|| pos.error(ParseErrorKind::Syntax, format!("literal `{lit}` is not ground")))?;
            out.push(ground);
            if !p.eat(&Tok::Comma) {
                break;
            }
        }
    }
    p.expect(&closing)?;
    if braced {
        p.expect(&Tok::Eof)?;
    }
    Ok(out)
}

pub fn pretty_print(p: &Program) -> String {
    p.to_string()
}

enum Operand {
    Agg(AggregateFn, SetName),
    Set(SetName),
    NegLit(Literal),
    Term(Term),
}

/// A set name seen while parsing the current rule, for the scope check.
struct SeenSet {
    set: SetName,
    pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    last: usize,
    opts: ParseOptions,
    arities: BTreeMap<Symbol, usize>,
    sets: Vec<SeenSet>,
}

impl Parser {
    fn new(src: &str, opts: ParseOptions) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, i: 0, last: 0, opts, arities: BTreeMap::new(), sets: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, n: usize) -> &Tok {
        &self.toks[(self.i + n).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        self.last = self.i;
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(self.pos().error(ParseErrorKind::Syntax, message))
    }

    /// Reports a token that was already consumed.
    fn unexpected<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(self.toks[self.last].1.error(ParseErrorKind::Syntax, message))
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.syntax(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn int_directive(&mut self) -> Result<(i64, i64), ParseError> {
        self.expect(&Tok::IntDirective)?;
        self.expect(&Tok::LParen)?;
        let lo = self.signed_int()?;
        self.expect(&Tok::Comma)?;
        let hi = self.signed_int()?;
        self.expect(&Tok::RParen)?;
        let pos = self.pos();
        self.expect(&Tok::Dot)?;
        if lo > hi {
            return Err(pos.error(ParseErrorKind::Syntax, format!("empty integer range {lo}..{hi}")));
        }
        Ok((lo, hi))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(&Tok::Minus);
        match self.bump() {
            Tok::Int(i) => Ok(if neg { -i } else { i }),
            other => self.unexpected(format!("expected an integer, found {other}")),
        }
    }

    fn register_arity(&mut self, predicate: &Symbol, arity: usize, pos: Pos) -> Result<(), ParseError> {
        match self.arities.get(predicate) {
            Some(&a) if a != arity => Err(pos.error(
                ParseErrorKind::Arity,
                format!("predicate `{predicate}` used with arity {arity}, previously {a}"),
            )),
            _ => {
                self.arities.insert(predicate.clone(), arity);
                Ok(())
            }
        }
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        self.sets.clear();
        let head = if self.peek() == &Tok::If {
            Head::Disjunction(Vec::new())
        } else {
            self.head()?
        };
        let mut body = Vec::new();
        if self.eat(&Tok::If) && self.peek() != &Tok::Dot {
            loop {
                body.push(self.body_element()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(&Tok::Dot)?;
        let rule = Rule { head, body };
        self.check_scope(&rule)?;
        Ok(rule)
    }

    fn head(&mut self) -> Result<Head, ParseError> {
        if self.peek() == &Tok::LBrace {
            let pos = self.pos();
            let set = self.set_name()?;
            let kind = match self.bump() {
                Tok::Rel(Rel::Le | Rel::SetLe) => SetIntroKind::SupersetOf,
                Tok::Rel(Rel::Eq | Rel::SetEq) => SetIntroKind::Equals,
                _ => {
                    return Err(pos.error(
                        ParseErrorKind::Syntax,
                        "set-introduction heads must have the form p <= S, S <= p or p = S",
                    ))
                }
            };
            let predicate = self.bare_predicate()?;
            self.register_arity(&predicate, set.arity(), pos)?;
            return Ok(Head::SetIntro { kind, predicate, set });
        }
        if let (Tok::Ident(name), Tok::Rel(rel), Tok::LBrace) =
            (self.peek().clone(), self.peek_at(1).clone(), self.peek_at(2).clone())
        {
            let pos = self.pos();
            self.bump();
            self.bump();
            let kind = match rel {
                Rel::Le | Rel::SetLe => SetIntroKind::SubsetOf,
                Rel::Eq | Rel::SetEq => SetIntroKind::Equals,
                _ => {
                    return Err(pos.error(
                        ParseErrorKind::Syntax,
                        "set-introduction heads must have the form p <= S, S <= p or p = S",
                    ))
                }
            };
            let set = self.set_name()?;
            let predicate = sym(&name);
            self.register_arity(&predicate, set.arity(), pos)?;
            return Ok(Head::SetIntro { kind, predicate, set });
        }
        let mut lits = vec![self.literal()?];
        while self.eat(&Tok::Bar) || self.eat(&Tok::Or) {
            lits.push(self.literal()?);
        }
        Ok(Head::Disjunction(lits))
    }

    fn bare_predicate(&mut self) -> Result<Symbol, ParseError> {
        match self.bump() {
            Tok::Ident(name) if self.peek() != &Tok::LParen => Ok(sym(&name)),
            other => self.unexpected(format!("expected a bare predicate name, found {other}")),
        }
    }

    fn starts_set_atom(&self) -> bool {
        match (self.peek(), self.peek_at(1)) {
            (Tok::LBrace, _) => true,
            (Tok::Ident(name), Tok::LBrace) => AggregateFn::from_name(name).is_some(),
            (Tok::Ident(_), Tok::Rel(_)) => matches!(self.peek_at(2), Tok::LBrace),
            _ => false,
        }
    }

    fn body_element(&mut self) -> Result<BodyElement, ParseError> {
        if self.eat(&Tok::Not) {
            if self.starts_set_atom() {
                return self.syntax("default negation cannot be applied to a set atom");
            }
            let lit = self.literal()?;
            if let Tok::Rel(_) = self.peek() {
                return self.syntax("default negation cannot be applied to a comparison");
            }
            return Ok(BodyElement::Naf(lit));
        }
        let pos = self.pos();
        let left = self.operand()?;
        let rel = match self.peek() {
            Tok::Rel(r) => *r,
            _ => {
                return match left {
                    Operand::NegLit(l) => Ok(BodyElement::Pos(l)),
                    Operand::Term(t) => Ok(BodyElement::Pos(self.term_to_literal(t, pos)?)),
                    Operand::Agg(..) | Operand::Set(_) => {
                        self.syntax(format!("expected a relation, found {}", self.peek()))
                    }
                }
            }
        };
        self.bump();
        let rpos = self.pos();
        let right = self.operand()?;
        self.comparison(left, rel, right, pos, rpos)
    }

    fn comparison(
        &mut self,
        left: Operand,
        rel: Rel,
        right: Operand,
        pos: Pos,
        rpos: Pos,
    ) -> Result<BodyElement, ParseError> {
        use Operand::*;
        let arith = |p: Pos| {
            rel.arith()
                .ok_or_else(|| p.error(ParseErrorKind::Syntax, "set relation used between numeric operands"))
        };
        let set_op = |p: Pos| {
            rel.set()
                .ok_or_else(|| p.error(ParseErrorKind::Syntax, "only <, <= and = relate sets"))
        };
        let atom = match (left, right) {
            (Agg(lf, ls), Agg(rf, rs)) => {
                SetAtom::AggAggCmp { left_fn: lf, left: ls, op: arith(pos)?, right_fn: rf, right: rs }
            }
            (Agg(func, set), Term(bound)) => SetAtom::AggCmp { func, set, op: arith(pos)?, bound },
            (Term(bound), Agg(func, set)) => SetAtom::AggCmp { func, set, op: arith(pos)?.flip(), bound },
            (Set(left), Set(right)) => SetAtom::SetRel { left, op: set_op(pos)?, right },
            (Set(right), Term(t)) => {
                let op = set_op(pos)?;
                let left = self.predicate_set(t, &right, rpos)?;
                // `S op p` keeps the set name on the left
                SetAtom::SetRel { left: right, op, right: left }
            }
            (Term(t), Set(right)) => {
                let op = set_op(pos)?;
                let left = self.predicate_set(t, &right, pos)?;
                SetAtom::SetRel { left, op, right }
            }
            (Term(l), Term(r)) => return Ok(BodyElement::Cmp(l, arith(pos)?, r)),
            _ => return Err(pos.error(ParseErrorKind::Syntax, "operands cannot be compared")),
        };
        Ok(BodyElement::Set(atom))
    }

    /// `p` next to a set name `S` stands for `{X̄ : p(X̄)}` with `S`'s variables.
    fn predicate_set(&mut self, t: Term, other: &SetName, pos: Pos) -> Result<SetName, ParseError> {
        match t {
            Term::Const(p) => {
                self.register_arity(&p, other.arity(), pos)?;
                let set = SetName::of_predicate(&p, &other.vars);
                self.sets.push(SeenSet { set: set.clone(), pos });
                Ok(set)
            }
            other => Err(pos.error(
                ParseErrorKind::Syntax,
                format!("expected a set name or a bare predicate, found `{other}`"),
            )),
        }
    }

    fn operand(&mut self) -> Result<Operand, ParseError> {
        match (self.peek().clone(), self.peek_at(1).clone()) {
            (Tok::Ident(name), Tok::LBrace) if AggregateFn::from_name(&name).is_some() => {
                self.bump();
                let set = self.set_name()?;
                Ok(Operand::Agg(AggregateFn::from_name(&name).unwrap(), set))
            }
            (Tok::LBrace, _) => Ok(Operand::Set(self.set_name()?)),
            (Tok::Minus, Tok::Ident(_)) => Ok(Operand::NegLit(self.literal()?)),
            _ => Ok(Operand::Term(self.term()?)),
        }
    }

    fn term_to_literal(&mut self, t: Term, pos: Pos) -> Result<Literal, ParseError> {
        let (predicate, args) = match t {
            Term::Const(p) => (p, Vec::new()),
            Term::Func(p, args) => (p, args),
            other => {
                return Err(pos.error(ParseErrorKind::Syntax, format!("expected a literal, found `{other}`")))
            }
        };
        self.register_arity(&predicate, args.len(), pos)?;
        Ok(Literal { negated: false, predicate, args })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let pos = self.pos();
        let negated = self.eat(&Tok::Minus);
        let name = match self.bump() {
            Tok::Ident(name) => name,
            other => return self.unexpected(format!("expected a literal, found {other}")),
        };
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        let predicate = sym(&name);
        self.register_arity(&predicate, args.len(), pos)?;
        Ok(Literal { negated, predicate, args })
    }

    fn set_name(&mut self) -> Result<SetName, ParseError> {
        let pos = self.pos();
        self.expect(&Tok::LBrace)?;
        let mut vars = Vec::new();
        loop {
            match self.bump() {
                Tok::Var(v) => vars.push(sym(&v)),
                other => return self.unexpected(format!("expected a set variable, found {other}")),
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        // `{X:-p(X)}` lexes the colon and the negation as one arrow token
        let negate_first = match self.bump() {
            Tok::Colon => false,
            Tok::If => true,
            other => return self.unexpected(format!("expected `:`, found {other}")),
        };
        let mut cond = Vec::new();
        loop {
            let mut lit = self.literal()?;
            if negate_first && cond.is_empty() {
                if lit.negated {
                    return self.syntax("double classical negation");
                }
                lit.negated = true;
            }
            cond.push(lit);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RBrace)?;
        let set = SetName { vars, cond };
        self.sets.push(SeenSet { set: set.clone(), pos });
        Ok(set)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let t = self.sum()?;
        if t.depth() > self.opts.max_term_depth {
            return Err(pos.error(
                ParseErrorKind::Syntax,
                format!("term nesting exceeds the limit of {}", self.opts.max_term_depth),
            ));
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(t),
            };
            self.bump();
            let r = self.product()?;
            t = Term::Arith(op, Box::new(t), Box::new(r));
        }
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.eat(&Tok::Star) {
            let r = self.primary()?;
            t = Term::Arith(ArithOp::Mul, Box::new(t), Box::new(r));
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Tok::Int(i) => Ok(Term::Int(i)),
            Tok::Minus => match self.bump() {
                Tok::Int(i) => Ok(Term::Int(-i)),
                other => self.unexpected(format!("expected an integer after `-`, found {other}")),
            },
            Tok::Var(v) => Ok(Term::Var(sym(&v))),
            Tok::Ident(name) => {
                if self.eat(&Tok::LParen) {
                    let mut args = Vec::new();
                    loop {
                        args.push(self.sum()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(Term::Func(sym(&name), args))
                } else {
                    Ok(Term::Const(sym(&name)))
                }
            }
            Tok::LParen => {
                let t = self.sum()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            other => self.unexpected(format!("expected a term, found {other}")),
        }
    }

    /// Rule variables are those occurring outside set names. Set variables
    /// must be declared, occur in their condition and not shadow a rule
    /// variable; any other variable inside a set name must be a rule variable.
    fn check_scope(&self, rule: &Rule) -> Result<(), ParseError> {
        let mut rule_vars = Vec::new();
        if let Head::Disjunction(lits) = &rule.head {
            lits.iter().for_each(|l| l.collect_vars(&mut rule_vars));
        }
        for el in &rule.body {
            match el {
                BodyElement::Pos(l) | BodyElement::Naf(l) => l.collect_vars(&mut rule_vars),
                BodyElement::Cmp(l, _, r) => {
                    l.collect_vars(&mut rule_vars);
                    r.collect_vars(&mut rule_vars);
                }
                BodyElement::Set(SetAtom::AggCmp { bound, .. }) => bound.collect_vars(&mut rule_vars),
                BodyElement::Set(_) => {}
            }
        }
        let rule_vars: BTreeSet<Symbol> = rule_vars.into_iter().collect();
        let scope = |pos: Pos, msg: String| Err(pos.error(ParseErrorKind::Scope, msg));
        for SeenSet { set, pos } in &self.sets {
            let pos = *pos;
            let mut occurring = Vec::new();
            set.cond.iter().for_each(|l| l.collect_vars(&mut occurring));
            let mut declared = BTreeSet::new();
            for v in &set.vars {
                if !declared.insert(v.clone()) {
                    return scope(pos, format!("set variable `{v}` declared twice"));
                }
                if !occurring.contains(v) {
                    return scope(pos, format!("set variable `{v}` does not occur in the condition"));
                }
                if rule_vars.contains(v) {
                    return scope(pos, format!("set variable `{v}` shadows a rule variable"));
                }
            }
            for v in set.free_vars() {
                if !rule_vars.contains(&v) {
                    return scope(pos, format!("variable `{v}` is not bound"));
                }
            }
            for l in &set.cond {
                for t in &l.args {
                    if t.has_arith() {
                        let mut vs = Vec::new();
                        t.collect_vars(&mut vs);
                        if vs.iter().any(|v| declared.contains(v)) {
                            return Err(pos.error(
                                ParseErrorKind::Syntax,
                                "arithmetic over set variables is not supported",
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
