//! Unrolling of a clock formula over a bounded lasso into SMT-LIB2 QF_LRA.
//!
//! Positions run `0..=k`; the successor of position `k` is a loop target
//! `j` in `1..=k` chosen by one-hot selectors. Each temporal subformula
//! gets one boolean label per position, tied to its operands by the
//! defining recursion. Until labels must discharge their obligation inside
//! the loop; yesterday, since, and trigger labels must agree where the
//! loop closes, so only models whose past values are stable across loop
//! iterations are found. Clocks either stay exactly periodic over the loop
//! or saturate strictly above every compared constant, which keeps all
//! clock comparisons iteration-stable. A `sat` answer therefore always
//! denotes a genuine lasso model, while an `unsat` answer only rules out
//! lassos at this bound, never satisfiability outright.

use std::collections::HashMap;

use cltloc_ir::{max_constant, nnf, ClockId, CltlocFormula, Rel};
use thiserror::Error;

/// Errors from script construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    /// The lasso needs at least one loop position.
    #[error("bound must be at least 1, got {0}")]
    BoundTooSmall(usize),
}

/// An SMT-LIB2 script plus the tables needed to read a model back.
#[derive(Debug, Clone)]
pub struct SmtScript {
    /// Full script text, ending in `(check-sat)` and `(get-model)`.
    pub text: String,
    /// Bound `k`: positions `0..=k`, loop targets `1..=k`.
    pub bound: usize,
    /// Atom names; atom `i` at position `t` is the variable `a{i}_{t}`.
    pub atoms: Vec<String>,
    /// Clocks; clock `i` at position `t` is the variable `c{i}_{t}`.
    pub clocks: Vec<ClockId>,
}

/// Encodes truth of `formula` at position 0 of some lasso with bound `k`.
///
/// The formula is first brought into negation normal form, so release and
/// trigger obligations only ever occur positively and their loop
/// approximation stays sound. Time advances `d_{t}` are strictly positive
/// and every clock either progresses by the advance or resets to zero.
/// Across the loop edge a clock may instead sit strictly above every
/// compared constant on both sides: a clock that never resets inside the
/// loop grows without bound, so exact periodicity would reject such runs,
/// while beyond the largest constant every comparison's truth is already
/// stable under further growth.
pub fn encode(formula: &CltlocFormula, bound: usize) -> Result<SmtScript, EncodeError> {
    if bound == 0 {
        return Err(EncodeError::BoundTooSmall(bound));
    }
    let f = nnf(formula);
    let mut enc = Encoder {
        bound,
        max_const: max_constant(&f),
        atoms: Vec::new(),
        atom_idx: HashMap::new(),
        clocks: Vec::new(),
        clock_idx: HashMap::new(),
        labels: Vec::new(),
        label_idx: HashMap::new(),
    };
    enc.collect(&f);
    let text = enc.emit(&f);
    Ok(SmtScript {
        text,
        bound,
        atoms: enc.atoms,
        clocks: enc.clocks,
    })
}

struct Encoder {
    bound: usize,
    max_const: u64,
    atoms: Vec<String>,
    atom_idx: HashMap<String, usize>,
    clocks: Vec<ClockId>,
    clock_idx: HashMap<ClockId, usize>,
    labels: Vec<CltlocFormula>,
    label_idx: HashMap<CltlocFormula, usize>,
}

/// Conjunction term; empty is `true`, singletons stay bare.
fn and_of(mut parts: Vec<String>) -> String {
    match parts.len() {
        0 => "true".into(),
        1 => parts.pop().unwrap(),
        _ => format!("(and {})", parts.join(" ")),
    }
}

/// Disjunction term; empty is `false`, singletons stay bare.
fn or_of(mut parts: Vec<String>) -> String {
    match parts.len() {
        0 => "false".into(),
        1 => parts.pop().unwrap(),
        _ => format!("(or {})", parts.join(" ")),
    }
}

fn imp(a: String, b: String) -> String {
    format!("(=> {} {})", a, b)
}

fn eq(a: String, b: String) -> String {
    format!("(= {} {})", a, b)
}

/// Real literal for a natural constant.
fn num(c: u64) -> String {
    format!("{}.0", c)
}

impl Encoder {
    fn register_clock(&mut self, clock: ClockId) {
        if !self.clock_idx.contains_key(&clock) {
            self.clock_idx.insert(clock, self.clocks.len());
            self.clocks.push(clock);
        }
    }

    /// Registers atoms, clocks, and temporal labels in post-order.
    fn collect(&mut self, f: &CltlocFormula) {
        use CltlocFormula as F;
        match f {
            F::True => {}
            F::Atom(name) => {
                if !self.atom_idx.contains_key(name) {
                    self.atom_idx.insert(name.clone(), self.atoms.len());
                    self.atoms.push(name.clone());
                }
            }
            F::Constraint(c) => self.register_clock(c.clock),
            F::ClockOrder { left, right, .. } => {
                self.register_clock(*left);
                self.register_clock(*right);
            }
            F::Not(g) => self.collect(g),
            F::And(v) | F::Or(v) => {
                for g in v {
                    self.collect(g);
                }
            }
            F::Next(g) | F::Yesterday(g) => {
                self.collect(g);
                self.register_label(f);
            }
            F::Until(a, b) | F::Since(a, b) | F::Release(a, b) | F::Trigger(a, b) => {
                self.collect(a);
                self.collect(b);
                self.register_label(f);
            }
        }
    }

    fn register_label(&mut self, f: &CltlocFormula) {
        if !self.label_idx.contains_key(f) {
            self.label_idx.insert(f.clone(), self.labels.len());
            self.labels.push(f.clone());
        }
    }

    /// SMT term for `g` at position `t`; temporal nodes refer to their label.
    fn term(&self, g: &CltlocFormula, t: usize) -> String {
        use CltlocFormula as F;
        match g {
            F::True => "true".into(),
            F::Atom(name) => format!("a{}_{}", self.atom_idx[name], t),
            F::Constraint(c) => {
                let v = format!("c{}_{}", self.clock_idx[&c.clock], t);
                let k = num(c.constant);
                match c.rel {
                    Rel::Lt => format!("(< {} {})", v, k),
                    Rel::Le => format!("(<= {} {})", v, k),
                    Rel::Eq => format!("(= {} {})", v, k),
                    Rel::Ge => format!("(>= {} {})", v, k),
                    Rel::Gt => format!("(> {} {})", v, k),
                    Rel::Ne => format!("(not (= {} {}))", v, k),
                }
            }
            F::ClockOrder {
                left,
                right,
                strict,
            } => {
                let l = format!("c{}_{}", self.clock_idx[left], t);
                let r = format!("c{}_{}", self.clock_idx[right], t);
                if *strict {
                    format!("(< {} {})", l, r)
                } else {
                    format!("(<= {} {})", l, r)
                }
            }
            F::Not(g) => format!("(not {})", self.term(g, t)),
            F::And(v) => and_of(v.iter().map(|g| self.term(g, t)).collect()),
            F::Or(v) => or_of(v.iter().map(|g| self.term(g, t)).collect()),
            _ => format!("sf{}_{}", self.label_idx[g], t),
        }
    }

    /// The value of `g` at the successor of the last position: a choice
    /// over loop targets.
    fn wrap(&self, g: &CltlocFormula) -> String {
        let k = self.bound;
        or_of(
            (1..=k)
                .map(|j| and_of(vec![format!("l_{}", j), self.term(g, j)]))
                .collect(),
        )
    }

    fn emit(&self, root: &CltlocFormula) -> String {
        let k = self.bound;
        let mut s = String::new();
        s.push_str("(set-option :produce-models true)\n");
        s.push_str("(set-logic QF_LRA)\n");
        for j in 1..=k {
            s.push_str(&format!("(declare-fun l_{} () Bool)\n", j));
        }
        for t in 0..=k {
            s.push_str(&format!("(declare-fun d_{} () Real)\n", t));
        }
        for (i, _) in self.atoms.iter().enumerate() {
            for t in 0..=k {
                s.push_str(&format!("(declare-fun a{}_{} () Bool)\n", i, t));
            }
        }
        for (i, _) in self.clocks.iter().enumerate() {
            for t in 0..=k {
                s.push_str(&format!("(declare-fun c{}_{} () Real)\n", i, t));
            }
        }
        for (i, _) in self.labels.iter().enumerate() {
            for t in 0..=k {
                s.push_str(&format!("(declare-fun sf{}_{} () Bool)\n", i, t));
            }
        }
        let mut asserts: Vec<String> = Vec::new();
        self.emit_structure(&mut asserts);
        for label in &self.labels {
            self.emit_label(label, &mut asserts);
        }
        asserts.push(self.term(root, 0));
        for a in asserts {
            s.push_str(&format!("(assert {})\n", a));
        }
        s.push_str("(check-sat)\n(get-model)\n");
        s
    }

    /// Loop selection, time advance, and clock progression constraints.
    fn emit_structure(&self, out: &mut Vec<String>) {
        let k = self.bound;
        out.push(or_of((1..=k).map(|j| format!("l_{}", j)).collect()));
        for i in 1..=k {
            for j in (i + 1)..=k {
                out.push(format!("(not (and l_{} l_{}))", i, j));
            }
        }
        for t in 0..=k {
            out.push(format!("(> d_{} 0.0)", t));
        }
        for (i, _) in self.clocks.iter().enumerate() {
            out.push(format!("(>= c{}_0 0.0)", i));
            for t in 0..k {
                out.push(format!(
                    "(or (= c{i}_{n} 0.0) (= c{i}_{n} (+ c{i}_{t} d_{t})))",
                    i = i,
                    t = t,
                    n = t + 1,
                ));
            }
            let m = num(self.max_const);
            for j in 1..=k {
                out.push(imp(
                    format!("l_{}", j),
                    format!(
                        "(or (= c{i}_{j} 0.0) (= c{i}_{j} (+ c{i}_{k} d_{k})) \
                         (and (> c{i}_{j} {m}) (> (+ c{i}_{k} d_{k}) {m})))",
                        i = i,
                        j = j,
                        k = k,
                        m = m,
                    ),
                ));
            }
        }
    }

    /// Defining constraints for one temporal label at every position.
    fn emit_label(&self, f: &CltlocFormula, out: &mut Vec<String>) {
        use CltlocFormula as F;
        let k = self.bound;
        let me = |t: usize| self.term(f, t);
        match f {
            F::Next(g) => {
                for t in 0..k {
                    out.push(eq(me(t), self.term(g, t + 1)));
                }
                out.push(eq(me(k), self.wrap(g)));
            }
            F::Yesterday(g) => {
                out.push(format!("(not {})", me(0)));
                for t in 1..=k {
                    out.push(eq(me(t), self.term(g, t - 1)));
                }
                // Entering position j from the loop edge must read the same
                // operand value as entering it from position j - 1.
                for j in 1..=k {
                    out.push(imp(
                        format!("l_{}", j),
                        eq(self.term(g, j - 1), self.term(g, k)),
                    ));
                }
            }
            F::Until(a, b) => {
                for t in 0..k {
                    out.push(eq(
                        me(t),
                        or_of(vec![
                            self.term(b, t),
                            and_of(vec![self.term(a, t), me(t + 1)]),
                        ]),
                    ));
                }
                out.push(eq(
                    me(k),
                    or_of(vec![
                        self.term(b, k),
                        and_of(vec![self.term(a, k), self.wrap(f)]),
                    ]),
                ));
                // An until holding at the loop target needs its witness
                // inside the loop; one check at the target covers every
                // loop position reachable along the left operand.
                for j in 1..=k {
                    out.push(imp(
                        format!("l_{}", j),
                        imp(me(j), or_of((j..=k).map(|t| self.term(b, t)).collect())),
                    ));
                }
            }
            F::Release(a, b) => {
                for t in 0..k {
                    out.push(eq(
                        me(t),
                        and_of(vec![
                            self.term(b, t),
                            or_of(vec![self.term(a, t), me(t + 1)]),
                        ]),
                    ));
                }
                out.push(eq(
                    me(k),
                    and_of(vec![
                        self.term(b, k),
                        or_of(vec![self.term(a, k), self.wrap(f)]),
                    ]),
                ));
            }
            F::Since(a, b) => {
                out.push(eq(me(0), self.term(b, 0)));
                for t in 1..=k {
                    out.push(eq(
                        me(t),
                        or_of(vec![
                            self.term(b, t),
                            and_of(vec![self.term(a, t), me(t - 1)]),
                        ]),
                    ));
                }
                for j in 1..=k {
                    out.push(imp(format!("l_{}", j), eq(me(j - 1), me(k))));
                }
            }
            F::Trigger(a, b) => {
                out.push(eq(me(0), self.term(b, 0)));
                for t in 1..=k {
                    out.push(eq(
                        me(t),
                        and_of(vec![
                            self.term(b, t),
                            or_of(vec![self.term(a, t), me(t - 1)]),
                        ]),
                    ));
                }
                for j in 1..=k {
                    out.push(imp(format!("l_{}", j), eq(me(j - 1), me(k))));
                }
            }
            _ => unreachable!("only temporal nodes carry labels"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cltloc_ir::{
        and, atom, constraint, eventually, next, not, or, since, until, yesterday, ClockKind, Rel,
    };

    fn clock(owner: u32, kind: ClockKind) -> ClockId {
        ClockId { owner, kind }
    }

    #[test]
    fn zero_bound_is_rejected() {
        assert!(matches!(
            encode(&atom("p"), 0),
            Err(EncodeError::BoundTooSmall(0))
        ));
    }

    #[test]
    fn script_skeleton_is_well_formed() {
        let f = until(atom("p"), atom("q"));
        let s = encode(&f, 2).unwrap();
        assert_eq!(s.bound, 2);
        assert_eq!(s.atoms, vec!["p".to_string(), "q".to_string()]);
        assert!(s.clocks.is_empty());
        assert!(s.text.starts_with("(set-option :produce-models true)\n(set-logic QF_LRA)\n"));
        assert!(s.text.ends_with("(check-sat)\n(get-model)\n"));
        // Selectors, advances, two atom rows, one label row.
        assert_eq!(s.text.matches("(declare-fun").count(), 2 + 3 + 6 + 3);
        let opens = s.text.matches('(').count();
        let closes = s.text.matches(')').count();
        assert_eq!(opens, closes);
    }

    #[test]
    fn single_loop_target_needs_no_exclusion() {
        let s = encode(&atom("p"), 1).unwrap();
        assert!(s.text.contains("(assert l_1)\n"));
        assert!(!s.text.contains("(not (and l_"));
    }

    #[test]
    fn shared_subformulas_share_labels() {
        let f = and(vec![next(atom("p")), next(atom("p"))]);
        let s = encode(&f, 3).unwrap();
        assert_eq!(s.text.matches("declare-fun sf").count(), 4);
        assert!(!s.text.contains("sf1_"));
    }

    #[test]
    fn clock_constraints_declare_and_progress_the_clock() {
        let z = clock(2, ClockKind::Z0);
        let f = eventually(constraint(z, Rel::Eq, 3));
        let s = encode(&f, 2).unwrap();
        assert_eq!(s.clocks, vec![z]);
        assert!(s.text.contains("(assert (>= c0_0 0.0))"));
        assert!(s.text.contains("(assert (or (= c0_1 0.0) (= c0_1 (+ c0_0 d_0))))"));
        assert!(s.text.contains("(assert (or (= c0_2 0.0) (= c0_2 (+ c0_1 d_1))))"));
        assert!(s.text.contains(
            "(assert (=> l_1 (or (= c0_1 0.0) (= c0_1 (+ c0_2 d_2)) \
             (and (> c0_1 3.0) (> (+ c0_2 d_2) 3.0)))))"
        ));
        assert!(s.text.contains("(= c0_0 3.0)"));
        assert!(s.text.contains("(assert (> d_0 0.0))"));
    }

    #[test]
    fn until_obligation_is_checked_at_the_loop_target() {
        let f = until(atom("p"), atom("q"));
        let s = encode(&f, 2).unwrap();
        // At target 1 the witness may sit at position 1 or 2; at target 2
        // it must sit at position 2.
        assert!(s.text.contains("(assert (=> l_1 (=> sf0_1 (or a1_1 a1_2))))"));
        assert!(s.text.contains("(assert (=> l_2 (=> sf0_2 a1_2)))"));
    }

    #[test]
    fn negation_normalization_happens_before_encoding() {
        // not (p U q) encodes as a release, which has no loop obligation.
        let f = not(until(atom("p"), atom("q")));
        let s = encode(&f, 2).unwrap();
        assert!(!s.text.contains("(=> sf"));
        // not (z = 0) encodes with the relation flipped, not with SMT not.
        let z = clock(0, ClockKind::Z1);
        let s = encode(&not(constraint(z, Rel::Eq, 0)), 1).unwrap();
        assert!(s.text.contains("(assert (not (= c0_0 0.0)))"));
    }

    #[test]
    fn yesterday_is_pinned_false_at_the_origin() {
        let f = yesterday(atom("p"));
        let s = encode(&f, 2).unwrap();
        assert!(s.text.contains("(assert (not sf0_0))"));
        assert!(s.text.contains("(assert (= sf0_1 a0_0))"));
        assert!(s.text.contains("(assert (= sf0_2 a0_1))"));
        assert!(s.text.contains("(assert (=> l_1 (= a0_0 a0_2)))"));
    }

    #[test]
    fn since_and_trigger_pin_the_loop_seam() {
        let f = since(atom("p"), atom("q"));
        let s = encode(&f, 2).unwrap();
        assert!(s.text.contains("(assert (= sf0_0 a1_0))"));
        assert!(s.text.contains("(assert (=> l_1 (= sf0_0 sf0_2)))"));
        assert!(s.text.contains("(assert (=> l_2 (= sf0_1 sf0_2)))"));
    }

    #[test]
    fn boolean_structure_is_inlined() {
        let f = or(vec![atom("p"), and(vec![atom("q"), atom("r")])]);
        let s = encode(&f, 1).unwrap();
        assert!(!s.text.contains("sf"));
        assert!(s.text.contains("(assert (or a0_0 (and a1_0 a2_0)))"));
    }
}
