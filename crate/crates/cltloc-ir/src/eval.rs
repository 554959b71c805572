//! Exact evaluation over a lasso-shaped infinite word.
//!
//! The word has positions `0..n` followed by the loop segment
//! `loop_idx..n` repeated forever. Leaves (atoms, clock tests) are
//! position-stable across loop iterations, matching exactly periodic
//! models. Future operators are solved by fixpoint on the cycle; past
//! operators are unrolled until they stabilize, which monotone
//! since/trigger recursions always do within one segment per nesting
//! level.

use crate::CltlocFormula;

/// Truth of `f` at positions `0..n` of the lasso `0..n (loop_idx..n)^w`.
///
/// `leaf` decides atoms, clock constraints, and clock orders at a folded
/// position; composite nodes must not reach it. Panics if a past operator
/// fails to stabilize, which indicates a non-position-stable `leaf`.
pub fn eval_lasso(
    f: &CltlocFormula,
    n: usize,
    loop_idx: usize,
    leaf: &mut dyn FnMut(&CltlocFormula, usize) -> bool,
) -> Vec<bool> {
    assert!(n >= 1, "need at least one position");
    assert!(loop_idx < n, "loop index {} out of range for {} positions", loop_idx, n);
    let copies = past_depth(f) + 3;
    let seg = n - loop_idx;
    // Virtual timeline: full prefix then `copies` extra loop segments.
    let total = n + copies * seg;
    let fold: Vec<usize> = (0..total)
        .map(|v| if v < n { v } else { loop_idx + (v - n) % seg })
        .collect();
    let vals = eval_virtual(f, &fold, seg, leaf);
    vals[..n].to_vec()
}

fn past_depth(f: &CltlocFormula) -> usize {
    use CltlocFormula as F;
    match f {
        F::True | F::Atom(_) | F::Constraint(_) | F::ClockOrder { .. } => 0,
        F::Not(g) | F::Next(g) => past_depth(g),
        F::Yesterday(g) => 1 + past_depth(g),
        F::And(v) | F::Or(v) => v.iter().map(past_depth).max().unwrap_or(0),
        F::Until(a, b) | F::Release(a, b) => past_depth(a).max(past_depth(b)),
        F::Since(a, b) | F::Trigger(a, b) => 1 + past_depth(a).max(past_depth(b)),
    }
}

fn eval_virtual(
    f: &CltlocFormula,
    fold: &[usize],
    seg: usize,
    leaf: &mut dyn FnMut(&CltlocFormula, usize) -> bool,
) -> Vec<bool> {
    use CltlocFormula as F;
    let total = fold.len();
    let out = match f {
        F::True => vec![true; total],
        F::Atom(_) | F::Constraint(_) | F::ClockOrder { .. } => {
            (0..total).map(|v| leaf(f, fold[v])).collect()
        }
        F::Not(g) => {
            let g = eval_virtual(g, fold, seg, leaf);
            g.into_iter().map(|b| !b).collect()
        }
        F::And(v) => {
            let kids: Vec<Vec<bool>> = v.iter().map(|g| eval_virtual(g, fold, seg, leaf)).collect();
            (0..total).map(|i| kids.iter().all(|k| k[i])).collect()
        }
        F::Or(v) => {
            let kids: Vec<Vec<bool>> = v.iter().map(|g| eval_virtual(g, fold, seg, leaf)).collect();
            (0..total).map(|i| kids.iter().any(|k| k[i])).collect()
        }
        F::Next(g) => {
            let g = eval_virtual(g, fold, seg, leaf);
            let mut r = vec![false; total];
            for v in 0..total {
                // The final virtual position continues into its own segment
                // one iteration earlier, which carries the same values.
                r[v] = if v + 1 < total { g[v + 1] } else { g[v + 1 - seg] };
            }
            r
        }
        F::Yesterday(g) => {
            let g = eval_virtual(g, fold, seg, leaf);
            let mut r = vec![false; total];
            for v in 1..total {
                r[v] = g[v - 1];
            }
            r
        }
        F::Since(a, b) => {
            let a = eval_virtual(a, fold, seg, leaf);
            let b = eval_virtual(b, fold, seg, leaf);
            let mut r = vec![false; total];
            r[0] = b[0];
            for v in 1..total {
                r[v] = b[v] || (a[v] && r[v - 1]);
            }
            r
        }
        F::Trigger(a, b) => {
            let a = eval_virtual(a, fold, seg, leaf);
            let b = eval_virtual(b, fold, seg, leaf);
            let mut r = vec![false; total];
            r[0] = b[0];
            for v in 1..total {
                r[v] = b[v] && (a[v] || r[v - 1]);
            }
            r
        }
        F::Until(a, b) => {
            let a = eval_virtual(a, fold, seg, leaf);
            let b = eval_virtual(b, fold, seg, leaf);
            solve_future(&a, &b, seg, false)
        }
        F::Release(a, b) => {
            let a = eval_virtual(a, fold, seg, leaf);
            let b = eval_virtual(b, fold, seg, leaf);
            solve_future(&a, &b, seg, true)
        }
    };
    // Stability check on the last two segments: every operator's values
    // must agree there for the first-copy answers to be exact.
    let total = out.len();
    for i in 0..seg {
        assert_eq!(
            out[total - seg + i],
            out[total - 2 * seg + i],
            "values failed to stabilize across loop iterations"
        );
    }
    out
}

/// Solves the until (least fixpoint) or release (greatest fixpoint)
/// recursion: first on the final segment treated as a cycle, then
/// backward through the earlier timeline.
fn solve_future(a: &[bool], b: &[bool], seg: usize, greatest: bool) -> Vec<bool> {
    let total = a.len();
    let start = total - seg;
    let mut r = vec![greatest; total];
    // Fixpoint on the cycle: one extra sweep past the segment length
    // guarantees convergence of the one-bit recursion.
    for _ in 0..=seg {
        for off in (0..seg).rev() {
            let v = start + off;
            let succ = if off + 1 < seg { v + 1 } else { start };
            r[v] = if greatest {
                b[v] && (a[v] || r[succ])
            } else {
                b[v] || (a[v] && r[succ])
            };
        }
    }
    for v in (0..start).rev() {
        r[v] = if greatest {
            b[v] && (a[v] || r[v + 1])
        } else {
            b[v] || (a[v] && r[v + 1])
        };
    }
    r
}
