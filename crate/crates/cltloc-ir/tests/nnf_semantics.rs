//! Negation normal form preserves truth on lasso models, and its output
//! contains negations only above atoms or as the origin idiom.

use cltloc_ir::eval::eval_lasso;
use cltloc_ir::*;
use proptest::prelude::*;

fn clock_a() -> ClockId {
    ClockId {
        owner: 0,
        kind: ClockKind::Z0,
    }
}

fn clock_b() -> ClockId {
    ClockId {
        owner: 0,
        kind: ClockKind::Aux(1),
    }
}

fn formula_strategy() -> impl Strategy<Value = CltlocFormula> {
    let rel = prop_oneof![
        Just(Rel::Lt),
        Just(Rel::Le),
        Just(Rel::Eq),
        Just(Rel::Ge),
        Just(Rel::Gt),
        Just(Rel::Ne),
    ];
    let leaf = prop_oneof![
        Just(atom("p")),
        Just(atom("q")),
        Just(tt()),
        (rel, 0u64..4).prop_map(|(r, c)| constraint(clock_a(), r, c)),
        proptest::bool::ANY.prop_map(|strict| CltlocFormula::ClockOrder {
            left: clock_a(),
            right: clock_b(),
            strict,
        }),
    ];
    leaf.prop_recursive(4, 40, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(not),
            prop::collection::vec(inner.clone(), 0..3).prop_map(CltlocFormula::And),
            prop::collection::vec(inner.clone(), 0..3).prop_map(CltlocFormula::Or),
            inner.clone().prop_map(next),
            inner.clone().prop_map(yesterday),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| until(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| since(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| release(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| trigger(a, b)),
        ]
    })
}

#[derive(Debug, Clone)]
struct Model {
    p: Vec<bool>,
    q: Vec<bool>,
    va: Vec<u64>,
    vb: Vec<u64>,
    loop_idx: usize,
}

fn model_strategy() -> impl Strategy<Value = Model> {
    let n = 6usize;
    (
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(0u64..4, n),
        prop::collection::vec(0u64..4, n),
        0usize..n,
    )
        .prop_map(|(p, q, va, vb, loop_idx)| Model {
            p,
            q,
            va,
            vb,
            loop_idx,
        })
}

fn eval_on(f: &CltlocFormula, m: &Model) -> Vec<bool> {
    let mut leaf = |leaf: &CltlocFormula, i: usize| match leaf {
        CltlocFormula::Atom(name) if name == "p" => m.p[i],
        CltlocFormula::Atom(name) if name == "q" => m.q[i],
        CltlocFormula::Constraint(c) => {
            let v = if c.clock == clock_a() { m.va[i] } else { m.vb[i] };
            match c.rel {
                Rel::Lt => v < c.constant,
                Rel::Le => v <= c.constant,
                Rel::Eq => v == c.constant,
                Rel::Ge => v >= c.constant,
                Rel::Gt => v > c.constant,
                Rel::Ne => v != c.constant,
            }
        }
        CltlocFormula::ClockOrder { left, strict, .. } => {
            // Only the (a, b) order occurs in generated formulas.
            let (l, r) = if *left == clock_a() {
                (m.va[i], m.vb[i])
            } else {
                (m.vb[i], m.va[i])
            };
            if *strict {
                l < r
            } else {
                l <= r
            }
        }
        other => panic!("unexpected leaf {:?}", other),
    };
    eval_lasso(f, m.p.len(), m.loop_idx, &mut leaf)
}

fn only_allowed_negations(f: &CltlocFormula) -> bool {
    match f {
        CltlocFormula::Not(g) => {
            matches!(**g, CltlocFormula::Atom(_))
                || **g == CltlocFormula::Yesterday(Box::new(CltlocFormula::True))
        }
        CltlocFormula::True
        | CltlocFormula::Atom(_)
        | CltlocFormula::Constraint(_)
        | CltlocFormula::ClockOrder { .. } => true,
        CltlocFormula::And(v) | CltlocFormula::Or(v) => v.iter().all(only_allowed_negations),
        CltlocFormula::Next(g) | CltlocFormula::Yesterday(g) => only_allowed_negations(g),
        CltlocFormula::Until(a, b)
        | CltlocFormula::Since(a, b)
        | CltlocFormula::Release(a, b)
        | CltlocFormula::Trigger(a, b) => only_allowed_negations(a) && only_allowed_negations(b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn nnf_preserves_truth_on_lassos(f in formula_strategy(), m in model_strategy()) {
        let before = eval_on(&f, &m);
        let after = eval_on(&nnf(&f), &m);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn nnf_output_negates_only_atoms_or_origin(f in formula_strategy()) {
        prop_assert!(only_allowed_negations(&nnf(&f)));
    }
}
