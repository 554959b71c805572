//! General-signal translation: two atoms per subformula, one for truth at
//! the sampled instant and one for truth on the open interval up to the
//! next sample. Point and interval truth move independently, so isolated
//! true points, isolated false points, and unattained interval endpoints
//! are all representable.
//!
//! Clock discipline mirrors the interval mode: each subformula's pair
//! marks its truth events, and bounded windows with a positive lower bound
//! own an auxiliary rotation. Future windows anchor readings at the output
//! event and scan forward to the operand event; past windows reset a clock
//! at the operand event and read the output event off the elapsed time.
//! Window endpoint attainment rides along as a point-truth condition at
//! the far end of every reading.

use cltloc_ir::{
    and, atom, constraint, globally, iff, implies, next, not, or, origin, release, since, tt,
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
    let mut parts = vec![atom(AtomScheme::fst(table.root))];
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

/// Bicond between an away-from-origin event conjunction and its reading;
/// a missing reading forbids the event conjunction outright.
fn event_rule(lhs: Vec<CltlocFormula>, rhs: Option<CltlocFormula>) -> CltlocFormula {
    let mut guarded = vec![not(origin())];
    guarded.extend(lhs);
    let lhs = and(guarded);
    match rhs {
        Some(r) => iff(lhs, and(vec![not(origin()), r])),
        None => not(lhs),
    }
}

struct Cx<'a> {
    alloc: &'a ClockAllocation,
}

impl Cx<'_> {
    fn fst(&self, i: usize) -> CltlocFormula {
        atom(AtomScheme::fst(i))
    }

    fn rest(&self, i: usize) -> CltlocFormula {
        atom(AtomScheme::rest(i))
    }

    /// Truth at the instant and on the interval after it.
    fn solid(&self, i: usize) -> CltlocFormula {
        and(vec![self.fst(i), self.rest(i)])
    }

    /// Interval truth switches on at this position.
    fn rise(&self, i: usize) -> CltlocFormula {
        and(vec![not(yesterday(self.rest(i))), self.rest(i)])
    }

    /// Interval truth switches off at this position.
    fn fall(&self, i: usize) -> CltlocFormula {
        and(vec![not(yesterday(not(self.rest(i)))), not(self.rest(i))])
    }

    /// Isolated true instant: interval truth off on both sides.
    fn point_on(&self, i: usize) -> CltlocFormula {
        and(vec![
            yesterday(not(self.rest(i))),
            self.fst(i),
            not(self.rest(i)),
        ])
    }

    /// Isolated false instant: interval truth on on both sides.
    fn point_off(&self, i: usize) -> CltlocFormula {
        and(vec![
            yesterday(self.rest(i)),
            not(self.fst(i)),
            self.rest(i),
        ])
    }

    /// Any truth event.
    fn event(&self, i: usize) -> CltlocFormula {
        or(vec![
            self.rise(i),
            self.fall(i),
            self.point_on(i),
            self.point_off(i),
        ])
    }

    /// Truth begins here: a rise, an isolated instant, or live truth at the
    /// origin instant.
    fn starts(&self, i: usize) -> CltlocFormula {
        or(vec![
            self.rise(i),
            self.point_on(i),
            and(vec![origin(), self.fst(i)]),
        ])
    }

    /// Truth stops here: a fall or an isolated instant.
    fn ends(&self, i: usize) -> CltlocFormula {
        or(vec![self.fall(i), self.point_on(i)])
    }

    /// Truth stops here and some truth actually preceded; at the origin a
    /// bare interval-false reading is not an end.
    fn genuine_end(&self, i: usize) -> CltlocFormula {
        and(vec![self.ends(i), or(vec![not(origin()), self.fst(i)])])
    }

    /// No operand truth has ended strictly earlier.
    fn no_prior_end(&self, p: usize) -> CltlocFormula {
        not(yesterday(since(tt(), self.genuine_end(p))))
    }

    /// No operand truth has begun strictly earlier.
    fn no_prior_start(&self, p: usize) -> CltlocFormula {
        not(yesterday(since(tt(), self.starts(p))))
    }

    /// The latest operand end attained its endpoint.
    fn last_end_attained(&self, p: usize) -> CltlocFormula {
        yesterday(since(
            not(self.ends(p)),
            and(vec![self.ends(p), self.fst(p)]),
        ))
    }

    /// At a truth event of `p`: the previous event lies further back than
    /// `c`. One pair clock reads zero at an event, so the other carries the
    /// elapsed time and the disjunction reads it.
    fn gap_above(&self, p: usize, c: u64) -> CltlocFormula {
        or(vec![
            constraint(self.alloc.z0(p), Rel::Gt, c),
            constraint(self.alloc.z1(p), Rel::Gt, c),
        ])
    }

    /// At a truth event of `p`: the previous event lies at least `c` back.
    fn gap_at_least(&self, p: usize, c: u64) -> CltlocFormula {
        or(vec![
            constraint(self.alloc.z0(p), Rel::Ge, c),
            constraint(self.alloc.z1(p), Rel::Ge, c),
        ])
    }

    /// At a truth event of `p`: the previous event lies within the last `c`.
    fn gap_within(&self, p: usize, c: u64) -> CltlocFormula {
        and(vec![
            constraint(self.alloc.z0(p), Rel::Le, c),
            constraint(self.alloc.z1(p), Rel::Le, c),
        ])
    }

    /// At a truth event of `p`: the previous event lies strictly within `c`.
    fn gap_below(&self, p: usize, c: u64) -> CltlocFormula {
        and(vec![
            constraint(self.alloc.z0(p), Rel::Lt, c),
            constraint(self.alloc.z1(p), Rel::Lt, c),
        ])
    }

    /// The operand start here opens a new window cluster: the gap from the
    /// previous end exceeds the merge width, or equals it with neither seam
    /// endpoint attained, or no end precedes at all.
    fn fresh(
        &self,
        p: usize,
        width: u64,
        cover_prev_end: bool,
        cover_start: bool,
    ) -> CltlocFormula {
        let mut seam = vec![self.gap_at_least(p, width)];
        if cover_prev_end {
            seam.push(not(self.last_end_attained(p)));
        }
        if cover_start {
            seam.push(not(self.fst(p)));
        }
        or(vec![
            self.no_prior_end(p),
            self.gap_above(p, width),
            and(seam),
        ])
    }

    /// The operand start here continues the previous cluster: the gap sits
    /// below the merge width, or equals it with a seam endpoint attained.
    fn too_soon(
        &self,
        p: usize,
        width: u64,
        cover_prev_end: bool,
        cover_start: bool,
    ) -> CltlocFormula {
        let mut cover = Vec::new();
        if cover_prev_end {
            cover.push(self.last_end_attained(p));
        }
        if cover_start {
            cover.push(self.fst(p));
        }
        if cover.is_empty() {
            self.gap_below(p, width)
        } else {
            or(vec![
                self.gap_below(p, width),
                and(vec![self.gap_within(p, width), or(cover)]),
            ])
        }
    }

    /// Instant truth of a future window only at interval truth or at an
    /// attained left endpoint beside it.
    fn structural_future(&self, i: usize, c_l: bool, c_r: bool) -> CltlocFormula {
        let mut on_right = vec![self.rest(i)];
        if c_l {
            on_right.push(yesterday(self.rest(i)));
            on_right.push(origin());
        }
        let mut on_left = vec![yesterday(self.rest(i)), origin()];
        if c_r {
            on_left.push(self.rest(i));
        }
        implies(self.fst(i), and(vec![or(on_right), or(on_left)]))
    }

    /// Instant truth of a past window only at interval truth or at an
    /// attained endpoint beside it.
    fn structural_past(&self, i: usize, c_l: bool, c_r: bool) -> CltlocFormula {
        let mut on_right = vec![self.rest(i)];
        if c_r {
            on_right.push(yesterday(self.rest(i)));
        }
        let mut on_left = vec![yesterday(self.rest(i))];
        if c_l {
            on_left.push(self.rest(i));
        }
        implies(self.fst(i), and(vec![or(on_right), or(on_left)]))
    }

    fn shape(&self, i: usize, e: &SubEntry) -> Result<Option<CltlocFormula>, TranslationError> {
        match &e.formula {
            MitlFormula::Prop(_) => Ok(None),
            MitlFormula::Not(_) => {
                let p = e.children[0];
                Ok(Some(and(vec![
                    iff(self.fst(i), not(self.fst(p))),
                    iff(self.rest(i), not(self.rest(p))),
                ])))
            }
            MitlFormula::And(..) => {
                let (a, b) = (e.children[0], e.children[1]);
                Ok(Some(and(vec![
                    iff(self.fst(i), and(vec![self.fst(a), self.fst(b)])),
                    iff(self.rest(i), and(vec![self.rest(a), self.rest(b)])),
                ])))
            }
            MitlFormula::Until(iv, ..) if iv.is_zero_inf() => {
                let (a, b) = (e.children[0], e.children[1]);
                Ok(Some(self.until_shape(i, a, b)))
            }
            MitlFormula::Since(iv, ..) if iv.is_zero_inf() => {
                let (a, b) = (e.children[0], e.children[1]);
                Ok(Some(self.since_shape(i, a, b)))
            }
            MitlFormula::Eventually(iv, _) if !iv.closed_at_zero() => {
                let p = e.children[0];
                Ok(Some(self.future_window(i, p, iv)))
            }
            MitlFormula::PastEventually(iv, _) if !iv.closed_at_zero() => {
                let p = e.children[0];
                Ok(Some(self.past_window(i, p, iv)))
            }
            f => Err(unsupported(f, Mode::General)),
        }
    }

    /// Untimed until with a strict-future witness: truth needs the hold
    /// operand live on the whole open stretch up to a witness instant or a
    /// witness interval entered under hold truth.
    fn until_shape(&self, i: usize, a: usize, b: usize) -> CltlocFormula {
        let chain = next(until(
            self.solid(a),
            or(vec![
                self.fst(b),
                and(vec![self.rest(b), self.solid(a)]),
            ]),
        ));
        and(vec![
            iff(self.fst(i), self.rest(i)),
            iff(
                self.rest(i),
                and(vec![self.rest(a), or(vec![self.rest(b), chain])]),
            ),
        ])
    }

    /// Untimed since with a strict-past witness.
    fn since_shape(&self, i: usize, a: usize, b: usize) -> CltlocFormula {
        and(vec![
            iff(self.fst(i), yesterday(self.rest(i))),
            iff(
                self.rest(i),
                since(
                    self.solid(a),
                    and(vec![or(vec![self.fst(b), self.rest(b)]), self.rest(a)]),
                ),
            ),
        ])
    }

    fn future_window(&self, i: usize, p: usize, iv: &TimeInterval) -> CltlocFormula {
        let c_l = !iv.lower_open;
        match iv.upper {
            None if iv.lower == 0 => self.f_strict_tail(i, p),
            None => self.f_tail(i, p, iv.lower, c_l),
            Some(b) if iv.lower == 0 => self.f_window_zero(i, p, b, !iv.upper_open),
            Some(b) => self.f_window_positive(i, p, iv.lower, b, c_l, !iv.upper_open),
        }
    }

    fn past_window(&self, i: usize, p: usize, iv: &TimeInterval) -> CltlocFormula {
        let c_l = !iv.lower_open;
        match iv.upper {
            None if iv.lower == 0 => self.p_strict_tail(i, p),
            None => self.p_tail(i, p, iv.lower, c_l),
            Some(b) if iv.lower == 0 => self.p_window_zero(i, p, b, !iv.upper_open),
            Some(b) => self.p_window_positive(i, p, iv.lower, b, c_l, !iv.upper_open),
        }
    }

    /// Bounded future window with a positive lower bound, read off the
    /// auxiliary rotation.
    fn f_window_positive(
        &self,
        i: usize,
        p: usize,
        a: u64,
        b: u64,
        c_l: bool,
        c_r: bool,
    ) -> CltlocFormula {
        let d = self.alloc.aux_count(i) as u32;
        let width = b - a;

        let rise_read = |attr: Option<CltlocFormula>| {
            or((0..d)
                .map(|j| {
                    let x = self.alloc.aux(i, j);
                    let mut w = vec![self.starts(p)];
                    if let Some(a) = &attr {
                        w.push(a.clone());
                    }
                    w.push(at(x, b));
                    w.push(self.gap_above(p, width));
                    and(vec![eq0(x), next(until(gt0(x), and(w)))])
                })
                .collect::<Vec<_>>())
        };
        let r_plus = event_rule(
            vec![self.rise(i), self.fst(i)],
            if c_r {
                Some(rise_read(Some(self.fst(p))))
            } else {
                None
            },
        );
        let r_minus = event_rule(
            vec![self.rise(i), not(self.fst(i))],
            Some(rise_read(if c_r { Some(not(self.fst(p))) } else { None })),
        );
        let rise_force = implies(
            and(vec![self.starts(p), self.fresh(p, width, c_l, c_r)]),
            or((0..d).map(|j| at(self.alloc.aux(i, j), b)).collect()),
        );

        let fall_read = |attr: Option<CltlocFormula>| {
            or((0..d)
                .map(|j| {
                    let x = self.alloc.aux(i, j);
                    let mut w = vec![self.ends(p)];
                    if let Some(a) = &attr {
                        w.push(a.clone());
                    }
                    w.push(at(x, a));
                    w.push(next(release(
                        self.starts(p),
                        not(and(vec![self.starts(p), constraint(x, Rel::Le, b)])),
                    )));
                    and(vec![eq0(x), next(until(gt0(x), and(w)))])
                })
                .collect::<Vec<_>>())
        };
        let f_plus = event_rule(
            vec![self.fall(i), self.fst(i)],
            if c_l {
                Some(fall_read(Some(self.fst(p))))
            } else {
                None
            },
        );
        let f_minus = event_rule(
            vec![self.fall(i), not(self.fst(i))],
            Some(fall_read(if c_l { Some(not(self.fst(p))) } else { None })),
        );
        let fall_force = implies(
            and(vec![
                self.ends(p),
                next(release(
                    self.starts(p),
                    not(and(vec![
                        self.starts(p),
                        self.too_soon(p, width, c_l, c_r),
                    ])),
                )),
            ]),
            or((0..d).map(|j| at(self.alloc.aux(i, j), a)).collect()),
        );

        // An isolated false instant sits on an exact unattained seam: one
        // auxiliary runs from it to the previous end at the lower bound and
        // on to the next start at the upper bound.
        let seam_read = or((0..d)
            .map(|j| {
                let x = self.alloc.aux(i, j);
                let mut end_w = vec![self.ends(p)];
                if c_l {
                    end_w.push(not(self.fst(p)));
                }
                end_w.push(at(x, a));
                let mut start_w = vec![self.starts(p)];
                if c_r {
                    start_w.push(not(self.fst(p)));
                }
                start_w.push(at(x, b));
                end_w.push(next(until(not(self.starts(p)), and(start_w))));
                and(vec![eq0(x), next(until(gt0(x), and(end_w)))])
            })
            .collect::<Vec<_>>());
        let p_off = iff(
            self.point_off(i),
            and(vec![not(origin()), seam_read]),
        );

        let x0 = self.alloc.aux(i, 0);
        let fst_point = {
            let mut w = vec![self.fst(p)];
            w.push(if c_l {
                constraint(x0, Rel::Ge, a)
            } else {
                constraint(x0, Rel::Gt, a)
            });
            w.push(if c_r {
                constraint(x0, Rel::Le, b)
            } else {
                constraint(x0, Rel::Lt, b)
            });
            and(w)
        };
        let reach_lower = or(vec![
            constraint(x0, Rel::Ge, a),
            next(constraint(x0, Rel::Gt, a)),
        ]);
        let w_fst = or(vec![
            fst_point,
            and(vec![
                self.rest(p),
                constraint(x0, Rel::Lt, b),
                reach_lower.clone(),
            ]),
        ]);
        let w_rest = or(vec![
            and(vec![
                self.fst(p),
                constraint(x0, Rel::Gt, a),
                constraint(x0, Rel::Le, b),
            ]),
            and(vec![
                self.rest(p),
                constraint(x0, Rel::Le, b),
                reach_lower,
            ]),
        ]);
        let scan = |w| until(or(vec![origin(), gt0(x0)]), w);
        let origin_rules = implies(
            origin(),
            and(vec![
                iff(self.fst(i), scan(w_fst)),
                iff(self.rest(i), scan(w_rest)),
            ]),
        );

        let mut parts = vec![
            self.structural_future(i, c_l, c_r),
            r_plus,
            r_minus,
            rise_force,
            f_plus,
            f_minus,
            fall_force,
            p_off,
            origin_rules,
        ];
        parts.extend(self.aux_event_rules(i, d));
        and(parts)
    }

    /// Bounded future window reaching back to zero exclusive, read off the
    /// owner's own pair.
    fn f_window_zero(&self, i: usize, p: usize, b: u64, c_r: bool) -> CltlocFormula {
        let zs = [self.alloc.z0(i), self.alloc.z1(i)];
        let rise_read = |attr: Option<CltlocFormula>| {
            or(zs
                .iter()
                .map(|&z| {
                    let mut w = vec![self.starts(p)];
                    if let Some(a) = &attr {
                        w.push(a.clone());
                    }
                    w.push(at(z, b));
                    w.push(self.gap_above(p, b));
                    and(vec![eq0(z), next(until(gt0(z), and(w)))])
                })
                .collect::<Vec<_>>())
        };
        let r_plus = event_rule(
            vec![self.rise(i), self.fst(i)],
            if c_r {
                Some(rise_read(Some(self.fst(p))))
            } else {
                None
            },
        );
        let r_minus = event_rule(
            vec![self.rise(i), not(self.fst(i))],
            Some(rise_read(if c_r { Some(not(self.fst(p))) } else { None })),
        );
        let rise_force = implies(
            and(vec![self.starts(p), self.fresh(p, b, false, c_r)]),
            or(vec![at(zs[0], b), at(zs[1], b)]),
        );

        // The window touches the present, so the output falls right at
        // terminal operand ends and its right ends are never attained.
        let fall_rule = event_rule(
            vec![self.fall(i)],
            Some(and(vec![
                self.ends(p),
                next(release(
                    self.starts(p),
                    not(and(vec![self.starts(p), self.gap_within(p, b)])),
                )),
            ])),
        );
        let fall_open = implies(self.fall(i), not(self.fst(i)));
        let p_off = {
            let mut w = vec![self.starts(p)];
            if c_r {
                w.push(not(self.fst(p)));
            }
            w.push(self.gap_at_least(p, b));
            w.push(self.gap_within(p, b));
            iff(
                self.point_off(i),
                and(vec![
                    not(origin()),
                    self.ends(p),
                    next(until(not(self.starts(p)), and(w))),
                ]),
            )
        };

        let x = zs[0];
        let w_fst = or(vec![
            and(vec![self.rest(p), constraint(x, Rel::Lt, b)]),
            and(vec![
                self.fst(p),
                gt0(x),
                if c_r {
                    constraint(x, Rel::Le, b)
                } else {
                    constraint(x, Rel::Lt, b)
                },
            ]),
        ]);
        let w_rest = or(vec![
            and(vec![self.rest(p), constraint(x, Rel::Le, b)]),
            and(vec![self.fst(p), gt0(x), constraint(x, Rel::Le, b)]),
        ]);
        let scan = |w| until(or(vec![origin(), gt0(x)]), w);
        let origin_rules = implies(
            origin(),
            and(vec![
                iff(self.fst(i), scan(w_fst)),
                iff(self.rest(i), scan(w_rest)),
            ]),
        );

        and(vec![
            self.structural_future(i, false, c_r),
            r_plus,
            r_minus,
            rise_force,
            fall_rule,
            fall_open,
            p_off,
            origin_rules,
        ])
    }

    /// Unbounded future window with a positive lower bound: truth is a
    /// prefix, falling behind the final operand end by the lower bound.
    fn f_tail(&self, i: usize, p: usize, a: u64, c_l: bool) -> CltlocFormula {
        let z1 = self.alloc.z1(i);
        let monotone = implies(
            not(origin()),
            and(vec![not(self.rise(i)), not(self.point_off(i))]),
        );
        let fall_read = |attr: Option<CltlocFormula>| {
            let mut w = vec![self.ends(p)];
            if let Some(g) = &attr {
                w.push(g.clone());
            }
            w.push(at(z1, a));
            w.push(next(globally(not(self.starts(p)))));
            and(vec![eq0(z1), next(until(gt0(z1), and(w)))])
        };
        let f_plus = event_rule(
            vec![self.fall(i), self.fst(i)],
            if c_l {
                Some(fall_read(Some(self.fst(p))))
            } else {
                None
            },
        );
        let f_minus = event_rule(
            vec![self.fall(i), not(self.fst(i))],
            Some(fall_read(if c_l { Some(not(self.fst(p))) } else { None })),
        );
        let fall_force = implies(
            and(vec![self.ends(p), next(globally(not(self.starts(p))))]),
            at(z1, a),
        );

        let x = self.alloc.z0(i);
        let w_fst = or(vec![
            and(vec![
                self.fst(p),
                if c_l {
                    constraint(x, Rel::Ge, a)
                } else {
                    constraint(x, Rel::Gt, a)
                },
            ]),
            and(vec![self.rest(p), next(constraint(x, Rel::Gt, a))]),
        ]);
        let w_rest = or(vec![
            and(vec![self.fst(p), constraint(x, Rel::Gt, a)]),
            and(vec![self.rest(p), next(constraint(x, Rel::Gt, a))]),
        ]);
        let scan = |w| until(or(vec![origin(), gt0(x)]), w);
        let origin_rules = implies(
            origin(),
            and(vec![
                iff(self.fst(i), scan(w_fst)),
                iff(self.rest(i), scan(w_rest)),
            ]),
        );

        and(vec![
            self.structural_future(i, c_l, false),
            monotone,
            f_plus,
            f_minus,
            fall_force,
            origin_rules,
        ])
    }

    /// Unbounded future window from zero exclusive: truth is a prefix
    /// ending right at the final operand end.
    fn f_strict_tail(&self, i: usize, p: usize) -> CltlocFormula {
        let monotone = implies(
            not(origin()),
            and(vec![not(self.rise(i)), not(self.point_off(i))]),
        );
        let fall_rule = event_rule(
            vec![self.fall(i)],
            Some(and(vec![
                self.ends(p),
                next(globally(not(self.starts(p)))),
            ])),
        );
        let fall_open = implies(self.fall(i), not(self.fst(i)));
        let x = self.alloc.z0(i);
        let w = or(vec![and(vec![self.fst(p), gt0(x)]), self.rest(p)]);
        let scan = until(or(vec![origin(), gt0(x)]), w);
        let origin_rules = implies(
            origin(),
            and(vec![
                iff(self.fst(i), scan.clone()),
                iff(self.rest(i), scan),
            ]),
        );
        and(vec![
            self.structural_future(i, false, false),
            monotone,
            fall_rule,
            fall_open,
            origin_rules,
        ])
    }

    /// Bounded past window with a positive lower bound. Only cluster-opening
    /// starts and cluster-closing ends reset the rotation; rises and falls
    /// of the output read the elapsed clock at exactly the window bounds.
    fn p_window_positive(
        &self,
        i: usize,
        p: usize,
        a: u64,
        b: u64,
        c_l: bool,
        c_r: bool,
    ) -> CltlocFormula {
        let d = self.alloc.aux_count(i) as u32;
        let width = b - a;

        let sel_up = and(vec![self.starts(p), self.fresh(p, width, c_r, c_l)]);
        let sel_dn = and(vec![
            self.ends(p),
            next(release(
                self.starts(p),
                not(and(vec![
                    self.starts(p),
                    self.too_soon(p, width, c_r, c_l),
                ])),
            )),
        ]);

        let reset_mark = iff(
            or((0..d).map(|j| eq0(self.alloc.aux(i, j))).collect()),
            or(vec![origin(), sel_up.clone(), sel_dn.clone()]),
        );
        let force_up = implies(
            sel_up.clone(),
            or((0..d)
                .map(|j| {
                    let x = self.alloc.aux(i, j);
                    and(vec![eq0(x), next(until(gt0(x), at(x, a)))])
                })
                .collect::<Vec<_>>()),
        );
        let force_dn = implies(
            sel_dn.clone(),
            or((0..d)
                .map(|j| {
                    let x = self.alloc.aux(i, j);
                    and(vec![eq0(x), next(until(gt0(x), at(x, b)))])
                })
                .collect::<Vec<_>>()),
        );

        let pin = |x: ClockId, w: CltlocFormula| {
            yesterday(since(gt0(x), and(vec![w, eq0(x)])))
        };
        let start_read = |attr: Option<CltlocFormula>| {
            or((0..d)
                .map(|j| {
                    let x = self.alloc.aux(i, j);
                    let mut w = vec![sel_up.clone()];
                    if let Some(g) = &attr {
                        w.push(g.clone());
                    }
                    and(vec![at(x, a), pin(x, and(w))])
                })
                .collect::<Vec<_>>())
        };
        let end_read = |attr: Option<CltlocFormula>| {
            or((0..d)
                .map(|j| {
                    let x = self.alloc.aux(i, j);
                    let mut w = vec![sel_dn.clone()];
                    if let Some(g) = &attr {
                        w.push(g.clone());
                    }
                    and(vec![at(x, b), pin(x, and(w))])
                })
                .collect::<Vec<_>>())
        };
        let start_pin_any = start_read(None);
        let end_pin_any = end_read(None);

        let r_plus = event_rule(
            vec![self.rise(i), self.fst(i)],
            if c_l {
                Some(and(vec![
                    start_read(Some(self.fst(p))),
                    not(end_pin_any.clone()),
                ]))
            } else {
                None
            },
        );
        let r_minus = event_rule(
            vec![self.rise(i), not(self.fst(i))],
            Some(and(vec![
                start_read(if c_l { Some(not(self.fst(p))) } else { None }),
                not(end_pin_any.clone()),
            ])),
        );
        let f_plus = event_rule(
            vec![self.fall(i), self.fst(i)],
            if c_r {
                Some(and(vec![
                    end_read(Some(self.fst(p))),
                    not(start_pin_any.clone()),
                ]))
            } else {
                None
            },
        );
        let f_minus = event_rule(
            vec![self.fall(i), not(self.fst(i))],
            Some(and(vec![
                end_read(if c_r { Some(not(self.fst(p))) } else { None }),
                not(start_pin_any),
            ])),
        );
        let p_off = iff(
            self.point_off(i),
            and(vec![
                not(origin()),
                end_read(if c_r { Some(not(self.fst(p))) } else { None }),
                start_read(if c_l { Some(not(self.fst(p))) } else { None }),
            ]),
        );

        let origin_rules = implies(
            origin(),
            and(vec![not(self.fst(i)), not(self.rest(i))]),
        );

        let mut parts = vec![
            self.structural_past(i, c_l, c_r),
            reset_mark,
            force_up,
            force_dn,
            r_plus,
            r_minus,
            f_plus,
            f_minus,
            p_off,
            origin_rules,
        ];
        parts.extend(self.aux_pairwise(i, d));
        parts.extend(self.aux_rotation(i, d));
        and(parts)
    }

    /// Bounded past window reaching back from zero exclusive: rises sit on
    /// cluster-opening operand starts, falls trail cluster-closing ends by
    /// the upper bound, read off the operand's own pair.
    fn p_window_zero(&self, i: usize, p: usize, b: u64, c_r: bool) -> CltlocFormula {
        let rise_rule = event_rule(
            vec![self.rise(i)],
            Some(and(vec![
                self.starts(p),
                or(vec![self.no_prior_end(p), self.gap_above(p, b)]),
            ])),
        );
        let rise_open = implies(self.rise(i), not(self.fst(i)));

        let pin_end = |z: ClockId, attr: Option<CltlocFormula>| {
            let mut w = vec![self.genuine_end(p)];
            if let Some(g) = &attr {
                w.push(g.clone());
            }
            w.push(eq0(z));
            and(vec![
                at(z, b),
                yesterday(since(not(self.event(p)), and(w))),
            ])
        };
        let end_read = |attr: Option<CltlocFormula>| {
            or(vec![
                pin_end(self.alloc.z0(p), attr.clone()),
                pin_end(self.alloc.z1(p), attr),
            ])
        };
        let f_plus = event_rule(
            vec![self.fall(i), self.fst(i)],
            if c_r {
                Some(and(vec![
                    not(self.starts(p)),
                    end_read(Some(self.fst(p))),
                ]))
            } else {
                None
            },
        );
        let f_minus = event_rule(
            vec![self.fall(i), not(self.fst(i))],
            Some(and(vec![
                not(self.starts(p)),
                end_read(if c_r { Some(not(self.fst(p))) } else { None }),
            ])),
        );
        let p_off = iff(
            self.point_off(i),
            and(vec![
                not(origin()),
                self.starts(p),
                end_read(if c_r { Some(not(self.fst(p))) } else { None }),
            ]),
        );
        let fall_force = implies(
            and(vec![
                self.genuine_end(p),
                next(release(
                    self.starts(p),
                    not(and(vec![self.starts(p), self.too_soon(p, b, c_r, false)])),
                )),
            ]),
            or(vec![self.alloc.z0(p), self.alloc.z1(p)]
                .into_iter()
                .map(|z| and(vec![eq0(z), next(until(gt0(z), at(z, b)))]))
                .collect()),
        );

        let origin_rules = implies(
            origin(),
            and(vec![
                not(self.fst(i)),
                iff(self.rest(i), or(vec![self.fst(p), self.rest(p)])),
            ]),
        );

        and(vec![
            self.structural_past(i, false, c_r),
            rise_rule,
            rise_open,
            f_plus,
            f_minus,
            p_off,
            fall_force,
            origin_rules,
        ])
    }

    /// Unbounded past window with a positive lower bound: truth is a tail
    /// rising behind the first operand start by the lower bound, tracked by
    /// one dedicated clock.
    fn p_tail(&self, i: usize, p: usize, a: u64, c_l: bool) -> CltlocFormula {
        let x = self.alloc.aux(i, 0);
        let sel = and(vec![self.starts(p), self.no_prior_start(p)]);
        let reset_mark = iff(eq0(x), or(vec![origin(), sel.clone()]));
        let force = implies(sel.clone(), next(until(gt0(x), at(x, a))));
        let rise_read = |attr: Option<CltlocFormula>| {
            let mut w = vec![eq0(x), self.starts(p)];
            if let Some(g) = &attr {
                w.push(g.clone());
            }
            and(vec![at(x, a), yesterday(since(gt0(x), and(w)))])
        };
        let r_plus = event_rule(
            vec![self.rise(i), self.fst(i)],
            if c_l {
                Some(rise_read(Some(self.fst(p))))
            } else {
                None
            },
        );
        let r_minus = event_rule(
            vec![self.rise(i), not(self.fst(i))],
            Some(rise_read(if c_l { Some(not(self.fst(p))) } else { None })),
        );
        let monotone = implies(
            not(origin()),
            and(vec![not(self.fall(i)), not(self.point_off(i))]),
        );
        let origin_rules = implies(
            origin(),
            and(vec![not(self.fst(i)), not(self.rest(i))]),
        );
        and(vec![
            self.structural_past(i, c_l, false),
            reset_mark,
            force,
            r_plus,
            r_minus,
            monotone,
            origin_rules,
        ])
    }

    /// Unbounded past window from zero exclusive: truth is a tail rising
    /// right at the first operand start.
    fn p_strict_tail(&self, i: usize, p: usize) -> CltlocFormula {
        let rise_rule = event_rule(
            vec![self.rise(i)],
            Some(and(vec![self.starts(p), self.no_prior_start(p)])),
        );
        let rise_open = implies(self.rise(i), not(self.fst(i)));
        let monotone = implies(
            not(origin()),
            and(vec![not(self.fall(i)), not(self.point_off(i))]),
        );
        let origin_rules = implies(
            origin(),
            and(vec![
                not(self.fst(i)),
                iff(self.rest(i), or(vec![self.fst(p), self.rest(p)])),
            ]),
        );
        and(vec![
            self.structural_past(i, false, false),
            rise_rule,
            rise_open,
            monotone,
            origin_rules,
        ])
    }

    /// Truth events of entry `i` reset its pair clocks alternately and
    /// never both at once.
    fn pair_rules(&self, i: usize) -> CltlocFormula {
        let z0 = self.alloc.z0(i);
        let z1 = self.alloc.z1(i);
        let mark = iff(self.event(i), or(vec![eq0(z0), eq0(z1)]));
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

    /// Auxiliary resets mark exactly the owner's truth events, one clock
    /// per event in rotation order.
    fn aux_event_rules(&self, i: usize, d: u32) -> Vec<CltlocFormula> {
        let mut parts = vec![iff(
            self.event(i),
            or((0..d).map(|j| eq0(self.alloc.aux(i, j))).collect()),
        )];
        parts.extend(self.aux_pairwise(i, d));
        parts.extend(self.aux_rotation(i, d));
        parts
    }

    /// No two auxiliaries of entry `i` read zero together.
    fn aux_pairwise(&self, i: usize, d: u32) -> Vec<CltlocFormula> {
        let mut parts = Vec::new();
        for j in 0..d {
            for k in (j + 1)..d {
                parts.push(not(and(vec![
                    eq0(self.alloc.aux(i, j)),
                    eq0(self.alloc.aux(i, k)),
                ])));
            }
        }
        parts
    }

    /// Auxiliary resets follow rotation order.
    fn aux_rotation(&self, i: usize, d: u32) -> Vec<CltlocFormula> {
        let mut parts = Vec::new();
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
        parts
    }
}
