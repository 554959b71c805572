//! Interval-mode translation: one atom per subformula, true at positions
//! whose whole left-closed right-open interval satisfies it.
//!
//! Truth switches of each subformula reset its clock pair alternately, so
//! the smaller pair reading is always the elapsed time since the last
//! switch. Bounded windows with a positive lower bound also own an
//! auxiliary rotation deep enough to span the window at maximal switch
//! density; rises and falls of such a window are read off an auxiliary
//! that was reset at the output switch and runs to the operand switch.
//! Boolean and untimed shapes constrain the atoms directly.

use cltloc_ir::{
    and, atom, constraint, eventually, globally, iff, implies, next, not, or, origin, release,
    until, yesterday, ClockId, CltlocFormula, Rel,
};
use mitl_core::{MitlFormula, Mode, SubEntry, SubformulaTable, TimeInterval};

use crate::alloc::ClockAllocation;
use crate::atoms::AtomScheme;
use crate::{unsupported, TranslationError};

pub(crate) fn build(
    table: &SubformulaTable,
    alloc: &ClockAllocation,
) -> Result<CltlocFormula, TranslationError> {
    let cx = Cx { alloc };
    let mut parts = vec![atom(AtomScheme::up(table.root))];
    for (i, e) in table.entries.iter().enumerate() {
        if let Some(m) = cx.shape(i, e)? {
            parts.push(globally(m));
        }
    }
    for i in 0..table.entries.len() {
        parts.push(eq0(alloc.z0(i)));
    }
    for i in 0..table.entries.len() {
        parts.push(globally(cx.pair_rules(i)));
    }
    for i in 0..table.entries.len() {
        if alloc.aux_count(i) > 0 {
            parts.push(cx.aux_origin(i));
            parts.push(globally(cx.aux_rules(i)));
        }
    }
    Ok(and(parts))
}

fn eq0(c: ClockId) -> CltlocFormula {
    constraint(c, Rel::Eq, 0)
}

fn gt0(c: ClockId) -> CltlocFormula {
    constraint(c, Rel::Gt, 0)
}

fn ne0(c: ClockId) -> CltlocFormula {
    constraint(c, Rel::Ne, 0)
}

fn at(c: ClockId, v: u64) -> CltlocFormula {
    constraint(c, Rel::Eq, v)
}

struct Cx<'a> {
    alloc: &'a ClockAllocation,
}

impl Cx<'_> {
    fn up(&self, i: usize) -> CltlocFormula {
        atom(AtomScheme::up(i))
    }

    /// Truth switches on at this position.
    fn rise(&self, i: usize) -> CltlocFormula {
        and(vec![not(yesterday(self.up(i))), self.up(i)])
    }

    /// Truth switches off at this position.
    fn fall(&self, i: usize) -> CltlocFormula {
        and(vec![not(yesterday(not(self.up(i)))), not(self.up(i))])
    }

    /// At a switch of `p`: the previous switch lies further back than `c`.
    /// One pair clock reads zero at a switch, so the other carries the
    /// elapsed time and the disjunction reads it.
    fn gap_above(&self, p: usize, c: u64) -> CltlocFormula {
        or(vec![
            constraint(self.alloc.z0(p), Rel::Gt, c),
            constraint(self.alloc.z1(p), Rel::Gt, c),
        ])
    }

    /// At a switch of `p`: the previous switch lies within the last `c`.
    fn gap_within(&self, p: usize, c: u64) -> CltlocFormula {
        and(vec![
            constraint(self.alloc.z0(p), Rel::Le, c),
            constraint(self.alloc.z1(p), Rel::Le, c),
        ])
    }

    fn shape(&self, i: usize, e: &SubEntry) -> Result<Option<CltlocFormula>, TranslationError> {
        match &e.formula {
            MitlFormula::Prop(_) => Ok(None),
            MitlFormula::Not(_) => {
                let p = e.children[0];
                Ok(Some(iff(self.up(i), not(self.up(p)))))
            }
            MitlFormula::And(..) => {
                let (a, b) = (e.children[0], e.children[1]);
                Ok(Some(iff(self.up(i), and(vec![self.up(a), self.up(b)]))))
            }
            MitlFormula::Until(iv, ..) if iv.is_zero_inf() => {
                let (a, b) = (e.children[0], e.children[1]);
                Ok(Some(iff(
                    self.up(i),
                    and(vec![self.up(a), until(self.up(a), self.up(b))]),
                )))
            }
            MitlFormula::Eventually(iv, _) => {
                let p = e.children[0];
                self.window(i, p, iv, &e.formula).map(Some)
            }
            f => Err(unsupported(f, Mode::Lcro)),
        }
    }

    fn window(
        &self,
        i: usize,
        p: usize,
        iv: &TimeInterval,
        src: &MitlFormula,
    ) -> Result<CltlocFormula, TranslationError> {
        match iv.upper {
            None if iv.lower == 0 => Ok(iff(self.up(i), eventually(self.up(p)))),
            None => Ok(self.window_tail(i, p, iv.lower, iv.lower_open)),
            Some(_) if iv.upper_open => Err(unsupported(src, Mode::Lcro)),
            Some(b) if iv.lower == 0 => Ok(self.window_from_zero(i, p, b)),
            Some(b) => Ok(self.window_positive(i, p, iv.lower, b, iv.lower_open)),
        }
    }

    /// Bounded window with a positive lower bound, read off the auxiliary
    /// rotation.
    fn window_positive(
        &self,
        i: usize,
        p: usize,
        a: u64,
        b: u64,
        lower_open: bool,
    ) -> CltlocFormula {
        let d = self.alloc.aux_count(i) as u32;
        let width = b - a;
        let fresh = self.gap_above(p, width);

        // A rise reads a window-opening operand rise at distance exactly the
        // upper bound; at the origin it instead scans for operand truth
        // whose window position works out, including truth reached just
        // before the lower bound is passed.
        let read = or((0..d)
            .map(|j| {
                let x = self.alloc.aux(i, j);
                and(vec![
                    eq0(x),
                    next(until(
                        gt0(x),
                        and(vec![self.rise(p), at(x, b), fresh.clone()]),
                    )),
                ])
            })
            .collect::<Vec<_>>());
        let x0 = self.alloc.aux(i, 0);
        let in_window = if lower_open {
            constraint(x0, Rel::Gt, a)
        } else {
            constraint(x0, Rel::Ge, a)
        };
        let before_window = if lower_open {
            constraint(x0, Rel::Le, a)
        } else {
            constraint(x0, Rel::Lt, a)
        };
        let witness = or(vec![
            and(vec![in_window, constraint(x0, Rel::Le, b)]),
            and(vec![before_window, next(constraint(x0, Rel::Gt, a))]),
        ]);
        let scan = and(vec![
            origin(),
            until(or(vec![origin(), gt0(x0)]), and(vec![self.up(p), witness])),
        ]);
        let rise_rule = iff(
            self.rise(i),
            or(vec![and(vec![not(origin()), read]), scan]),
        );

        // Every window-opening operand rise lands on some auxiliary reading
        // exactly the upper bound.
        let rise_force = implies(
            and(vec![self.rise(p), fresh]),
            or((0..d).map(|j| at(self.alloc.aux(i, j), b)).collect()),
        );

        // A fall reads a terminal operand fall at distance exactly the
        // lower bound; terminal means no operand rise follows while the
        // reading auxiliary is within the upper bound.
        let fall_read = or((0..d)
            .map(|j| {
                let x = self.alloc.aux(i, j);
                and(vec![
                    eq0(x),
                    next(until(
                        gt0(x),
                        and(vec![
                            self.fall(p),
                            at(x, a),
                            release(
                                self.rise(p),
                                not(and(vec![self.rise(p), constraint(x, Rel::Le, b)])),
                            ),
                        ]),
                    )),
                ])
            })
            .collect::<Vec<_>>());
        let fall_rule = iff(
            self.fall(i),
            or(vec![fall_read, and(vec![origin(), not(self.rise(i))])]),
        );

        // Every terminal operand fall lands on some auxiliary reading
        // exactly the lower bound; terminal here is measured by the
        // operand's own switch gap at the next rise.
        let fall_force = implies(
            and(vec![
                self.fall(p),
                release(
                    self.rise(p),
                    not(and(vec![self.rise(p), self.gap_within(p, width)])),
                ),
            ]),
            or((0..d).map(|j| at(self.alloc.aux(i, j), a)).collect()),
        );

        and(vec![rise_rule, rise_force, fall_rule, fall_force])
    }

    /// Bounded window anchored at zero, read off the owner's own pair.
    fn window_from_zero(&self, i: usize, p: usize, b: u64) -> CltlocFormula {
        let zs = [self.alloc.z0(i), self.alloc.z1(i)];
        let fresh = self.gap_above(p, b);
        let read = or(zs
            .iter()
            .map(|&z| {
                and(vec![
                    eq0(z),
                    next(until(
                        gt0(z),
                        and(vec![self.rise(p), at(z, b), fresh.clone()]),
                    )),
                ])
            })
            .collect::<Vec<_>>());
        let scan = and(vec![
            origin(),
            until(
                or(vec![origin(), gt0(zs[0])]),
                and(vec![self.up(p), constraint(zs[0], Rel::Le, b)]),
            ),
        ]);
        let rise_rule = iff(
            self.rise(i),
            or(vec![
                and(vec![not(origin()), not(self.up(p)), read]),
                scan,
            ]),
        );
        let rise_force = implies(
            and(vec![self.rise(p), fresh]),
            or(vec![at(zs[0], b), at(zs[1], b)]),
        );
        // With the window anchored at zero the output falls exactly at
        // terminal operand falls.
        let fall_rule = iff(
            self.fall(i),
            and(vec![
                self.fall(p),
                release(
                    self.rise(p),
                    not(and(vec![self.rise(p), self.gap_within(p, b)])),
                ),
            ]),
        );
        and(vec![rise_rule, rise_force, fall_rule])
    }

    /// Unbounded window with a positive lower bound: truth is a prefix, so
    /// the only rise sits at the origin and the only fall trails the final
    /// operand fall by the lower bound.
    fn window_tail(&self, i: usize, p: usize, a: u64, lower_open: bool) -> CltlocFormula {
        let z0 = self.alloc.z0(i);
        let z1 = self.alloc.z1(i);
        let in_reach = if lower_open {
            constraint(z0, Rel::Gt, a)
        } else {
            constraint(z0, Rel::Ge, a)
        };
        let before_reach = if lower_open {
            constraint(z0, Rel::Le, a)
        } else {
            constraint(z0, Rel::Lt, a)
        };
        let witness = or(vec![
            in_reach,
            and(vec![before_reach, next(constraint(z0, Rel::Gt, a))]),
        ]);
        let rise_rule = iff(
            self.rise(i),
            and(vec![
                origin(),
                until(or(vec![origin(), gt0(z0)]), and(vec![self.up(p), witness])),
            ]),
        );
        let fall_read = and(vec![
            eq0(z1),
            next(until(
                gt0(z1),
                and(vec![
                    self.fall(p),
                    at(z1, a),
                    globally(not(self.rise(p))),
                ]),
            )),
        ]);
        let fall_rule = iff(
            self.fall(i),
            or(vec![fall_read, and(vec![origin(), not(self.rise(i))])]),
        );
        let fall_force = implies(
            and(vec![self.fall(p), globally(not(self.rise(p)))]),
            at(z1, a),
        );
        and(vec![rise_rule, fall_rule, fall_force])
    }

    /// Switch events of entry `i` reset its pair clocks alternately and
    /// never both at once.
    fn pair_rules(&self, i: usize) -> CltlocFormula {
        let z0 = self.alloc.z0(i);
        let z1 = self.alloc.z1(i);
        let mark = iff(
            or(vec![self.rise(i), self.fall(i)]),
            or(vec![eq0(z0), eq0(z1)]),
        );
        let single = not(and(vec![eq0(z0), eq0(z1)]));
        let alternate = and(vec![
            implies(eq0(z0), next(release(eq0(z1), ne0(z0)))),
            implies(eq0(z1), next(release(eq0(z0), ne0(z1)))),
        ]);
        and(vec![mark, single, alternate])
    }

    /// At the origin the first auxiliary reads zero and the others sit
    /// strictly ordered one rotation step apart.
    fn aux_origin(&self, i: usize) -> CltlocFormula {
        let d = self.alloc.aux_count(i) as u32;
        let mut parts = vec![eq0(self.alloc.aux(i, 0))];
        let mut prev = 0u32;
        for j in (1..d).rev() {
            parts.push(CltlocFormula::ClockOrder {
                left: self.alloc.aux(i, prev),
                right: self.alloc.aux(i, j),
                strict: true,
            });
            prev = j;
        }
        and(parts)
    }

    /// Auxiliary resets mark exactly the owner's switch events, one clock
    /// per event in rotation order.
    fn aux_rules(&self, i: usize) -> CltlocFormula {
        let d = self.alloc.aux_count(i) as u32;
        let mut parts = vec![iff(
            or(vec![self.rise(i), self.fall(i)]),
            or((0..d).map(|j| eq0(self.alloc.aux(i, j))).collect()),
        )];
        for j in 0..d {
            for k in (j + 1)..d {
                parts.push(not(and(vec![
                    eq0(self.alloc.aux(i, j)),
                    eq0(self.alloc.aux(i, k)),
                ])));
            }
        }
        for j in 0..d {
            let succ = (j + 1) % d;
            let others = (0..d)
                .filter(|&m| m != succ)
                .map(|m| gt0(self.alloc.aux(i, m)))
                .collect();
            parts.push(implies(
                eq0(self.alloc.aux(i, j)),
                next(release(eq0(self.alloc.aux(i, succ)), and(others))),
            ));
        }
        and(parts)
    }
}
