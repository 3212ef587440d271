use std::collections::BTreeSet;

use alog_core::alog::set_atom_expansion;
use alog_core::eval::{eval_aggregate, eval_body, eval_set_atom, instantiate_set_name, Instantiation};
use alog_core::gen::{random_ground_program, random_program, rng_for, GenConfig};
use alog_core::ground::{ground_program, rule_variables, DomainConfig};
use alog_core::slogp::{coordinate_pool, minimal_supports, satisfied_by_vector, SupportVector};
use alog_core::solver::{solve, Semantics};
use alog_core::*;
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (-5i64..5).prop_map(Term::Int),
        "[a-c]".prop_map(|s| Term::Const(sym(&s))),
        "[XYZ]".prop_map(|s| Term::Var(sym(&s))),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            ("[fg]", prop::collection::vec(inner.clone(), 1..3)).prop_map(|(f, args)| Term::Func(sym(&f), args)),
            (inner.clone(), inner).prop_map(|(l, r)| Term::Arith(ArithOp::Add, Box::new(l), Box::new(r))),
        ]
    })
}

fn scan(t: &Term) -> bool {
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            Term::Var(_) | Term::Arith(..) => return false,
            Term::Func(_, args) => stack.extend(args),
            Term::Int(_) | Term::Const(_) => {}
        }
    }
    true
}

const PREDS: [&str; 4] = ["p", "q", "r", "s"];

fn all_literals() -> Vec<GroundLiteral> {
    let mut v = Vec::new();
    for p in PREDS {
        for i in 0..3 {
            for neg in [false, true] {
                v.push(GroundLiteral::new(neg, p, vec![GroundTerm::Int(i)]));
            }
        }
    }
    v
}

/// A consistent interpretation over the four unary predicates and 0..2.
fn interpretation() -> impl Strategy<Value = Interpretation> {
    prop::collection::vec(any::<bool>(), 24).prop_map(|bits| {
        let mut a = Interpretation::new();
        for (l, b) in all_literals().into_iter().zip(bits) {
            if b && !a.contains(&l.complement()) {
                a.insert(l);
            }
        }
        a
    })
}

fn nested() -> impl Strategy<Value = (Interpretation, Interpretation)> {
    (interpretation(), prop::collection::vec(any::<bool>(), 24)).prop_map(|(b, keep)| {
        let a: Interpretation = b.iter().zip(keep.iter().cycle()).filter(|(_, k)| **k).map(|(l, _)| l.clone()).collect();
        (a, b)
    })
}

fn set_name(var: &str, pred: &str, neg: bool) -> SetName {
    SetName::new(&[var], vec![Literal::new(neg, pred, vec![Term::Var(sym(var))])])
}

fn rename_sets(p: &Program, to: &str) -> Program {
    let mut p = p.clone();
    let rename = |s: &mut SetName| {
        s.vars = vec![sym(to)];
        for l in &mut s.cond {
            l.args = vec![Term::Var(sym(to))];
        }
    };
    for r in &mut p.rules {
        if let Head::SetIntro { set, .. } = &mut r.head {
            rename(set);
        }
        for b in &mut r.body {
            if let BodyElement::Set(sa) = b {
                sa.set_names_mut().into_iter().for_each(rename);
            }
        }
    }
    p
}

fn ground_renamed(g: &GroundProgram, to: &str) -> Vec<String> {
    g.rules.iter().map(|r| r.to_string().replace("{Y:", &format!("{{{to}:")).replace("(Y)", &format!("({to})"))).collect()
}

fn set_atoms(g: &GroundProgram) -> Vec<SetAtom> {
    g.rules
        .iter()
        .flat_map(|r| &r.body)
        .filter_map(|b| if let GroundBody::Set(sa) = b { Some(sa.clone()) } else { None })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let p = random_program(&mut rng_for(seed), &GenConfig::default());
        let text = pretty_print(&p);
        prop_assert_eq!(parse_program(&text).unwrap(), p);
    }

    #[test]
    fn ground_check_matches_scan(t in term()) {
        prop_assert_eq!(t.is_ground(), scan(&t));
        prop_assert_eq!(t.to_ground().is_some(), scan(&t));
    }

    #[test]
    fn instantiation_is_monotone((a, b) in nested(), pred in 0..4usize, neg: bool) {
        prop_assert!(a.is_subset(&b));
        let s = set_name("X", PREDS[pred], neg);
        prop_assert!(instantiate_set_name(&s, &a).0.is_subset(&instantiate_set_name(&s, &b).0));
        let joined = SetName::new(&["X"], vec![
            Literal::new(false, PREDS[pred], vec![Term::Var(sym("X"))]),
            Literal::new(true, PREDS[(pred + 1) % 4], vec![Term::Var(sym("X"))]),
        ]);
        prop_assert!(instantiate_set_name(&joined, &a).0.is_subset(&instantiate_set_name(&joined, &b).0));
    }

    #[test]
    fn aggregates_respect_inclusion((a, b) in nested(), pred in 0..4usize) {
        let s = set_name("X", PREDS[pred], false);
        let (i, j): (Instantiation, Instantiation) = (instantiate_set_name(&s, &a), instantiate_set_name(&s, &b));
        let card = |x: &Instantiation| eval_aggregate(AggregateFn::Card, x).unwrap().unwrap();
        prop_assert!(card(&i) <= card(&j));
        if let (Some(x), Some(y)) = (eval_aggregate(AggregateFn::Min, &i).unwrap(), eval_aggregate(AggregateFn::Min, &j).unwrap()) {
            prop_assert!(x >= y);
        }
        if let (Some(x), Some(y)) = (eval_aggregate(AggregateFn::Max, &i).unwrap(), eval_aggregate(AggregateFn::Max, &j).unwrap()) {
            prop_assert!(x <= y);
        }
        if let (Some(x), Some(y)) = (eval_aggregate(AggregateFn::Sum, &i).unwrap(), eval_aggregate(AggregateFn::Sum, &j).unwrap()) {
            prop_assert!(x <= y);
        }
    }

    #[test]
    fn set_variable_renaming_is_invisible(a in interpretation(), seed in any::<u64>()) {
        let cfg = GenConfig::default();
        let p = random_program(&mut rng_for(seed), &cfg);
        let q = rename_sets(&p, "W");
        let gp = ground_program(&p, &DomainConfig::for_program(&p)).unwrap();
        let gq = ground_program(&q, &DomainConfig::for_program(&q)).unwrap();
        prop_assert_eq!(ground_renamed(&gp, "W"), gq.rules.iter().map(|r| r.to_string()).collect::<Vec<_>>());
        for (x, y) in set_atoms(&gp).iter().zip(set_atoms(&gq).iter()) {
            prop_assert_eq!(eval_set_atom(x, &a).unwrap(), eval_set_atom(y, &a).unwrap());
        }
    }

    #[test]
    fn grounding_size_bound(seed in any::<u64>()) {
        let p = random_program(&mut rng_for(seed), &GenConfig::default());
        let d = DomainConfig::for_program(&p);
        let g = ground_program(&p, &d).unwrap();
        let domain = d.values(&Limits::default()).unwrap().len() as u128;
        let vars = p.rules.iter().map(|r| rule_variables(r).len()).max().unwrap_or(0) as u32;
        prop_assert!(g.rules.len() as u128 <= p.rules.len() as u128 * domain.pow(vars));
    }

    #[test]
    fn set_free_bodies_are_two_valued(a in interpretation(), seed in any::<u64>()) {
        let (_, g) = random_ground_program(&mut rng_for(seed), &GenConfig::set_free(), &Limits::default()).unwrap();
        for r in &g.rules {
            prop_assert_ne!(eval_body(&r.body, &a).unwrap(), TruthValue::Undefined);
        }
    }

    #[test]
    fn minimal_supports_are_upward_closed_antichains(a in interpretation(), seed in any::<u64>()) {
        let (_, g) = random_ground_program(&mut rng_for(seed), &GenConfig::default(), &Limits::default()).unwrap();
        for sa in set_atoms(&g) {
            let supports = minimal_supports(&sa, &a).unwrap();
            let pools: Vec<Vec<GroundLiteral>> = sa.set_names().into_iter().map(|s| coordinate_pool(s, &a)).collect();
            let full = SupportVector::new(pools.iter().map(|p| p.iter().cloned().collect()).collect());
            prop_assert_eq!(eval_set_atom(&sa, &a).unwrap().is_true(), !supports.is_empty());
            for (i, w) in supports.iter().enumerate() {
                for (j, v) in supports.iter().enumerate() {
                    prop_assert!(i == j || !w.le(v));
                }
                prop_assert!(w.le(&full));
                // every enlargement within the pools satisfies the atom
                let extra: Vec<(usize, GroundLiteral)> = pools.iter().enumerate()
                    .flat_map(|(k, p)| p.iter().filter(move |l| !w.coords[k].contains(*l)).map(move |l| (k, l.clone())))
                    .collect();
                for mask in 0u32..1 << extra.len().min(10) {
                    let mut v = w.clone();
                    for (b, (k, l)) in extra.iter().enumerate().take(10) {
                        if mask >> b & 1 == 1 {
                            v.coords[*k].insert(l.clone());
                        }
                    }
                    prop_assert!(satisfied_by_vector(&sa, &v).unwrap());
                }
            }
            if supports == [full.clone()] {
                let strong: BTreeSet<GroundLiteral> = set_atom_expansion(&sa, &a).into_iter().collect();
                let weak: BTreeSet<GroundLiteral> = full.union().into_iter().collect();
                prop_assert_eq!(strong, weak);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strong_answer_sets_are_weak(seed in any::<u64>()) {
        let l = Limits::default();
        let (_, g) = random_ground_program(&mut rng_for(seed), &GenConfig::default(), &l).unwrap();
        let weak = solve(&g, Semantics::SlogPlus, &l).unwrap();
        for a in solve(&g, Semantics::Alog, &l).unwrap() {
            prop_assert!(weak.contains(&a));
        }
    }
}

#[test]
fn complement_is_involutive() {
    let p0 = GroundLiteral::new(false, "p", vec![GroundTerm::Int(0)]);
    assert_eq!(complement(&complement(&p0)), p0);
    let nq = GroundLiteral::new(true, "q", vec![GroundTerm::Const(sym("a")), GroundTerm::Const(sym("b"))]);
    assert_eq!(complement(&nq).to_string(), "q(a,b)");
    assert!(is_consistent(&[p0.clone(), nq.clone()]));
    assert!(!is_consistent(&[p0.clone(), complement(&p0)]));
    assert!(is_consistent(&[]));
}
