//! The weak reading: a set atom is replaced by one of its minimal
//! supports, and the candidate only needs one reduct to accept it.

use std::collections::BTreeSet;
use std::fmt;

use crate::alog::{replace_set_atoms, set_atoms_true, set_intro_reduct};
use crate::basic::{is_answer_set_basic_with, BasicProgram};
use crate::eval::{eval_with_instantiations, set_name_matches, Instantiation};
use crate::model::*;
use crate::{Error, Limits, Result};

/// One set of literals per set name occurrence of a set atom.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportVector {
    pub coords: Vec<BTreeSet<GroundLiteral>>,
}

impl SupportVector {
    pub fn new(coords: Vec<BTreeSet<GroundLiteral>>) -> Self {
        SupportVector { coords }
    }

    /// Componentwise inclusion.
    pub fn le(&self, other: &SupportVector) -> bool {
        self.coords.len() == other.coords.len() && self.coords.iter().zip(&other.coords).all(|(w, v)| w.is_subset(v))
    }

    /// Union of the coordinates, in coordinate order, without repeats.
    pub fn union(&self) -> Vec<GroundLiteral> {
        let mut out: Vec<GroundLiteral> = Vec::new();
        for l in self.coords.iter().flatten() {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }
}

impl fmt::Display for SupportVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", Interpretation::from(c.clone()))?;
        }
        f.write_str("]")
    }
}

fn instantiate_in(s: &SetName, w: &BTreeSet<GroundLiteral>) -> Instantiation {
    set_name_matches(s, w).into_iter().map(|m| m.tuple).collect()
}

/// Evaluates `sa` with the i-th set name instantiated from the i-th
/// coordinate. Undefined counts as unsatisfied.
pub fn satisfied_by_vector(sa: &SetAtom, w: &SupportVector) -> Result<bool> {
    let names = sa.set_names();
    if names.len() != w.coords.len() {
        return Err(Error::Type(format!("`{sa}` has {} set names, vector has {}", names.len(), w.coords.len())));
    }
    let insts: Vec<Instantiation> = names.iter().zip(&w.coords).map(|(s, c)| instantiate_in(s, c)).collect();
    Ok(eval_with_instantiations(sa, &insts)?.is_true())
}

/// Literals of `a` that can matter to coordinate `s`: those in some
/// condition instance satisfied in `a`.
pub fn coordinate_pool(s: &SetName, a: &Interpretation) -> Vec<GroundLiteral> {
    let pool: BTreeSet<GroundLiteral> = set_name_matches(s, a.literals()).into_iter().flat_map(|m| m.witness).collect();
    pool.into_iter().collect()
}

pub fn minimal_supports(sa: &SetAtom, a: &Interpretation) -> Result<Vec<SupportVector>> {
    minimal_supports_with(sa, a, &Limits::default())
}

/// All minimal supports of `sa` in `a`, sorted.
pub fn minimal_supports_with(sa: &SetAtom, a: &Interpretation, limits: &Limits) -> Result<Vec<SupportVector>> {
    let pools: Vec<Vec<GroundLiteral>> = sa.set_names().into_iter().map(|s| coordinate_pool(s, a)).collect();
    let bits: usize = pools.iter().map(Vec::len).sum();
    if bits > limits.max_support_pool {
        return Err(Error::UniverseTooLarge {
            what: "support search space",
            size: bits as u128,
            limit: limits.max_support_pool as u128,
        });
    }
    let vector = |mask: usize| {
        let mut coords = Vec::with_capacity(pools.len());
        let mut offset = 0;
        for pool in &pools {
            coords.push((0..pool.len()).filter(|i| mask >> (offset + i) & 1 == 1).map(|i| pool[i].clone()).collect());
            offset += pool.len();
        }
        SupportVector::new(coords)
    };
    let size = 1usize << bits;
    let mut good = vec![false; size];
    for m in (0..size).rev() {
        if !satisfied_by_vector(sa, &vector(m))? {
            continue;
        }
        good[m] = (0..bits).all(|b| m >> b & 1 == 1 || good[m | 1 << b]);
    }
    let mut out: Vec<SupportVector> = (0..size)
        .filter(|&m| good[m] && (0..bits).all(|b| m >> b & 1 == 0 || !good[m & !(1 << b)]))
        .map(vector)
        .collect();
    out.sort();
    Ok(out)
}

/// The weak set reducts of a program free of set-introduction rules, one
/// per choice of minimal support for each remaining set atom, produced
/// lazily with the last atom's choice varying fastest.
pub struct WeakReducts {
    rules: Vec<GroundRule>,
    // per kept rule, per set atom: the candidate replacements
    options: Vec<Vec<Vec<Vec<GroundLiteral>>>>,
    digits: Vec<usize>,
    radices: Vec<usize>,
    total: u128,
    done: bool,
}

impl WeakReducts {
    pub fn new(g: &GroundProgram, a: &Interpretation, limits: &Limits) -> Result<Self> {
        let mut rules = Vec::new();
        let mut options = Vec::new();
        for r in &g.rules {
            if r.is_set_intro() {
                return Err(Error::UnexpectedSetIntro(r.to_string()));
            }
            if !set_atoms_true(r, a)? {
                continue;
            }
            let mut per_atom = Vec::new();
            for b in &r.body {
                if let GroundBody::Set(sa) = b {
                    let supports = minimal_supports_with(sa, a, limits)?;
                    per_atom.push(supports.iter().map(SupportVector::union).collect::<Vec<_>>());
                }
            }
            rules.push(r.clone());
            options.push(per_atom);
        }
        let radices: Vec<usize> = options.iter().flatten().map(Vec::len).collect();
        let total = radices.iter().try_fold(1u128, |acc, &r| acc.checked_mul(r as u128)).unwrap_or(u128::MAX);
        if total > limits.max_reducts {
            return Err(Error::UniverseTooLarge { what: "weak set reducts", size: total, limit: limits.max_reducts });
        }
        Ok(WeakReducts { rules, options, digits: vec![0; radices.len()], radices, total, done: total == 0 })
    }

    /// Number of reducts the iterator produces in total.
    pub fn total(&self) -> u128 {
        self.total
    }

    fn current(&self) -> Result<BasicProgram> {
        let mut k = 0;
        let mut out = Vec::with_capacity(self.rules.len());
        for (r, opts) in self.rules.iter().zip(&self.options) {
            let base = k;
            out.push(replace_set_atoms(r, |i, _| opts[i][self.digits[base + i]].clone())?);
            k += opts.len();
        }
        Ok(BasicProgram::new(out))
    }
}

impl Iterator for WeakReducts {
    type Item = Result<BasicProgram>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.current();
        self.done = true;
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                self.done = false;
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}

pub fn weak_set_reducts(g: &GroundProgram, a: &Interpretation, limits: &Limits) -> Result<WeakReducts> {
    WeakReducts::new(g, a, limits)
}

/// Outcome of checking one candidate under the weak reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlogCheck {
    /// The first reduct (in enumeration order) that accepts the candidate.
    pub witness: Option<BasicProgram>,
    pub tried: u128,
    pub total: u128,
}

pub fn check_slogp(g: &GroundProgram, a: &Interpretation, limits: &Limits) -> Result<SlogCheck> {
    if !a.is_consistent() {
        return Ok(SlogCheck { witness: None, tried: 0, total: 0 });
    }
    let reduced = set_intro_reduct(g, a);
    let reducts = weak_set_reducts(&reduced, a, limits)?;
    let total = reducts.total();
    let mut tried = 0;
    for r in reducts {
        let r = r?;
        tried += 1;
        if is_answer_set_basic_with(&r, a, limits)? {
            return Ok(SlogCheck { witness: Some(r), tried, total });
        }
    }
    Ok(SlogCheck { witness: None, tried, total })
}

pub fn is_slogp_answer_set(g: &GroundProgram, a: &Interpretation) -> Result<bool> {
    is_slogp_answer_set_with(g, a, &Limits::default())
}

pub fn is_slogp_answer_set_with(g: &GroundProgram, a: &Interpretation, limits: &Limits) -> Result<bool> {
    Ok(check_slogp(g, a, limits)?.witness.is_some())
}
