//! Ultimately periodic subsets of the nonnegative reals with exact
//! rational endpoints and per-endpoint closure flags.
//!
//! A set is stored as its components inside `[0, t + delta)` together
//! with the tail start `t` and period `delta`; membership beyond the
//! stored window folds back into the pattern `[t, t + delta)`. Every
//! operator verifies the window-shift equality of its result before
//! trusting a candidate tail start, growing it on failure up to a cap.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

/// Exact rational time value.
pub type Q = BigRational;

/// Errors from set construction and operator evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpsetError {
    /// The result never verified as periodic within the retry cap.
    #[error("periodicity verification failed: {0}")]
    Stabilization(String),
    /// Inconsistent operand structure.
    #[error("invalid ultimately periodic set: {0}")]
    Invalid(String),
}

/// Convenience constructor for small rationals.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Extended value for transient interval arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ext {
    /// Below every rational.
    NegInf,
    /// A finite value.
    Fin(Q),
    /// Above every rational.
    PosInf,
}

impl Ext {
    fn add_q(&self, d: &Q) -> Ext {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::PosInf => Ext::PosInf,
            Ext::Fin(v) => Ext::Fin(v + d),
        }
    }

    fn sub_q(&self, d: &Q) -> Ext {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::PosInf => Ext::PosInf,
            Ext::Fin(v) => Ext::Fin(v - d),
        }
    }
}

/// A nonempty finite component within the stored window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comp {
    /// Left endpoint.
    pub lo: Q,
    /// Whether the left endpoint belongs to the component.
    pub lo_closed: bool,
    /// Right endpoint.
    pub hi: Q,
    /// Whether the right endpoint belongs to the component.
    pub hi_closed: bool,
}

impl Comp {
    /// A single instant.
    pub fn point(t: Q) -> Comp {
        Comp {
            lo: t.clone(),
            lo_closed: true,
            hi: t,
            hi_closed: true,
        }
    }

    /// True when the component contains at least one value.
    pub fn is_nonempty(&self) -> bool {
        self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed)
    }

    /// True when the component is a single instant.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Membership test.
    pub fn contains(&self, t: &Q) -> bool {
        let above = t > &self.lo || (t == &self.lo && self.lo_closed);
        let below = t < &self.hi || (t == &self.hi && self.hi_closed);
        above && below
    }
}

/// A component with possibly infinite right end, as returned when
/// enumerating the true maximal components of a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TComp {
    /// Left endpoint.
    pub lo: Q,
    /// Whether the left endpoint is attained.
    pub lo_closed: bool,
    /// Right endpoint; `PosInf` for a final all-true tail.
    pub hi: Ext,
    /// Whether the right endpoint is attained; false when infinite.
    pub hi_closed: bool,
}

/// Transient component with extended endpoints.
#[derive(Debug, Clone)]
struct XComp {
    lo: Ext,
    lo_closed: bool,
    hi: Ext,
    hi_closed: bool,
}

impl XComp {
    /// Intersects with `[0, w)` and converts to a finite component.
    fn clip(&self, w: &Q) -> Option<Comp> {
        let (lo, lo_closed) = match &self.lo {
            Ext::NegInf => (Q::zero(), true),
            Ext::PosInf => return None,
            Ext::Fin(v) => {
                if v < &Q::zero() {
                    (Q::zero(), true)
                } else {
                    (v.clone(), self.lo_closed)
                }
            }
        };
        let (hi, hi_closed) = match &self.hi {
            Ext::NegInf => return None,
            Ext::PosInf => (w.clone(), false),
            Ext::Fin(v) => {
                if v >= w {
                    (w.clone(), false)
                } else {
                    (v.clone(), self.hi_closed)
                }
            }
        };
        let c = Comp {
            lo,
            lo_closed,
            hi,
            hi_closed,
        };
        c.is_nonempty().then_some(c)
    }
}

/// True when there is a gap between an end `(hi, hi_closed)` and a
/// following start `(lo, lo_closed)`, so the two cannot merge.
fn gap_between(hi: &Q, hi_closed: bool, lo: &Q, lo_closed: bool) -> bool {
    hi < lo || (hi == lo && !hi_closed && !lo_closed)
}

/// Sorts, merges overlapping or touching components, drops empty ones.
pub fn merge_comps(mut v: Vec<Comp>) -> Vec<Comp> {
    v.retain(Comp::is_nonempty);
    v.sort_by(|a, b| {
        a.lo
            .cmp(&b.lo)
            .then_with(|| b.lo_closed.cmp(&a.lo_closed))
    });
    let mut out: Vec<Comp> = Vec::with_capacity(v.len());
    for c in v {
        if let Some(last) = out.last_mut() {
            if !gap_between(&last.hi, last.hi_closed, &c.lo, c.lo_closed) {
                // Union is a single interval; keep the later end.
                if c.hi > last.hi || (c.hi == last.hi && c.hi_closed) {
                    last.hi = c.hi;
                    last.hi_closed = c.hi_closed;
                }
                continue;
            }
        }
        out.push(c);
    }
    out
}

/// Intersects two merged component lists.
pub fn intersect_comps(a: &[Comp], b: &[Comp]) -> Vec<Comp> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let x = &a[i];
        let y = &b[j];
        let (lo, lo_closed) = if x.lo > y.lo || (x.lo == y.lo && !x.lo_closed) {
            (x.lo.clone(), x.lo_closed)
        } else {
            (y.lo.clone(), y.lo_closed)
        };
        let (hi, hi_closed, x_ends) = if x.hi < y.hi || (x.hi == y.hi && !x.hi_closed) {
            (x.hi.clone(), x.hi_closed, true)
        } else {
            (y.hi.clone(), y.hi_closed, false)
        };
        let c = Comp {
            lo,
            lo_closed,
            hi,
            hi_closed,
        };
        if c.is_nonempty() {
            out.push(c);
        }
        if x_ends {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Complements a merged component list within `[0, w)`.
pub fn complement_comps(a: &[Comp], w: &Q) -> Vec<Comp> {
    let mut out = Vec::new();
    let mut cur = Q::zero();
    let mut cur_closed = true;
    for c in a {
        let gap = Comp {
            lo: cur.clone(),
            lo_closed: cur_closed,
            hi: c.lo.clone(),
            hi_closed: !c.lo_closed,
        };
        if gap.is_nonempty() {
            out.push(gap);
        }
        cur = c.hi.clone();
        cur_closed = !c.hi_closed;
    }
    if &cur < w {
        out.push(Comp {
            lo: cur,
            lo_closed: cur_closed,
            hi: w.clone(),
            hi_closed: false,
        });
    }
    out
}

/// Clips a merged list to `[0, w)`.
fn clip_comps(a: &[Comp], w: &Q) -> Vec<Comp> {
    let mut out = Vec::new();
    for c in a {
        if &c.lo >= w {
            break;
        }
        let mut c = c.clone();
        if &c.hi >= w {
            c.hi = w.clone();
            c.hi_closed = false;
        }
        if c.is_nonempty() {
            out.push(c);
        }
    }
    out
}

/// Shifts all endpoints by `d`.
fn shift_comps(a: &[Comp], d: &Q) -> Vec<Comp> {
    a.iter()
        .map(|c| Comp {
            lo: &c.lo + d,
            lo_closed: c.lo_closed,
            hi: &c.hi + d,
            hi_closed: c.hi_closed,
        })
        .collect()
}

/// Restricts a merged list to the window `[lo, hi)`.
pub fn window_comps(a: &[Comp], lo: &Q, hi: &Q) -> Vec<Comp> {
    let win = [Comp {
        lo: lo.clone(),
        lo_closed: true,
        hi: hi.clone(),
        hi_closed: false,
    }];
    intersect_comps(a, &win)
}

/// An ultimately periodic subset of the nonnegative reals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPSet {
    comps: Vec<Comp>,
    t: Q,
    delta: Q,
}

impl UPSet {
    /// Builds from components on `[0, w)` that already satisfy the
    /// window-shift equality at `t`; callers go through [`build_upset`].
    fn from_verified(comps_on_w: &[Comp], t: Q, delta: Q) -> UPSet {
        let limit = &t + &delta;
        UPSet {
            comps: clip_comps(comps_on_w, &limit),
            t,
            delta,
        }
    }

    /// Constructs a set directly from components on `[0, t + 2 delta)`,
    /// verifying the window-shift equality once.
    pub fn from_window(
        comps: Vec<Comp>,
        t: Q,
        delta: Q,
    ) -> Result<UPSet, UpsetError> {
        let merged = merge_comps(comps);
        if verify_pattern(&merged, &t, &delta) {
            Ok(UPSet::from_verified(&merged, t, delta))
        } else {
            Err(UpsetError::Invalid(
                "window-shift equality fails at the declared tail start".into(),
            ))
        }
    }

    /// Constructs a set from declared tail parameters without the
    /// window-shift check, for sources whose periodicity is validated
    /// separately; components beyond `t + delta` are folded away.
    pub fn from_declared(comps: Vec<Comp>, t: Q, delta: Q) -> UPSet {
        let merged = merge_comps(comps);
        UPSet::from_verified(&merged, t, delta)
    }

    /// The empty set.
    pub fn empty(delta: Q) -> UPSet {
        UPSet {
            comps: vec![],
            t: Q::zero(),
            delta,
        }
    }

    /// The full set `[0, inf)`.
    pub fn full(delta: Q) -> UPSet {
        let limit = delta.clone();
        UPSet {
            comps: vec![Comp {
                lo: Q::zero(),
                lo_closed: true,
                hi: limit,
                hi_closed: false,
            }],
            t: Q::zero(),
            delta,
        }
    }

    /// Tail start.
    pub fn tail_start(&self) -> &Q {
        &self.t
    }

    /// Period.
    pub fn period(&self) -> &Q {
        &self.delta
    }

    /// The components of the pattern window `[t, t + delta)`.
    fn pattern(&self) -> Vec<Comp> {
        let hi = &self.t + &self.delta;
        window_comps(&self.comps, &self.t, &hi)
    }

    /// True when the tail is all true, i.e. the pattern covers its window.
    pub fn tail_all_true(&self) -> bool {
        let pat = self.pattern();
        pat.len() == 1
            && pat[0].lo == self.t
            && pat[0].lo_closed
            && pat[0].hi == &self.t + &self.delta
    }

    /// True when the tail is all false.
    pub fn tail_empty(&self) -> bool {
        self.pattern().is_empty()
    }

    /// True when the whole set is empty.
    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Membership at `t`, folding into the pattern beyond the window.
    pub fn contains(&self, at: &Q) -> bool {
        let limit = &self.t + &self.delta;
        let folded = if at < &limit {
            at.clone()
        } else {
            let span = at - &self.t;
            let k = (&span / &self.delta).floor();
            at - k * &self.delta
        };
        self.comps.iter().any(|c| c.contains(&folded))
    }

    /// Components of the set intersected with `[0, w)`, merged maximal.
    pub fn materialize(&self, w: &Q) -> Vec<Comp> {
        let limit = &self.t + &self.delta;
        if w <= &limit {
            return clip_comps(&self.comps, w);
        }
        let mut all = self.comps.clone();
        let pat = self.pattern();
        if !pat.is_empty() {
            let mut shift = self.delta.clone();
            loop {
                let copy_start = &self.t + &shift;
                if &copy_start >= w {
                    break;
                }
                all.extend(shift_comps(&pat, &shift));
                shift += &self.delta;
            }
        }
        clip_comps(&merge_comps(all), w)
    }

    /// The true maximal components intersecting `[0, w)` with exact ends;
    /// a final component is infinite exactly when the tail is all true.
    pub fn true_components(&self, w: &Q) -> Vec<TComp> {
        if self.tail_all_true() {
            let mats = self.materialize(&(&self.t + &self.delta));
            let mut out: Vec<TComp> = Vec::new();
            for c in &mats {
                if c.hi == &self.t + &self.delta {
                    // This component continues forever.
                    out.push(TComp {
                        lo: c.lo.clone(),
                        lo_closed: c.lo_closed,
                        hi: Ext::PosInf,
                        hi_closed: false,
                    });
                } else {
                    out.push(TComp {
                        lo: c.lo.clone(),
                        lo_closed: c.lo_closed,
                        hi: Ext::Fin(c.hi.clone()),
                        hi_closed: c.hi_closed,
                    });
                }
            }
            out.retain(|c| &c.lo < w);
            return out;
        }
        // Tail not all true: every component is finite, and a component
        // starting before w must close strictly before the widened bound,
        // else it would cover a full period window inside the tail.
        let base = if w > &self.t { w.clone() } else { self.t.clone() };
        let wide = base + &self.delta + &self.delta;
        let mats = self.materialize(&wide);
        mats.iter()
            .filter(|c| &c.lo < w)
            .map(|c| {
                debug_assert!(c.hi < wide, "unbounded component without an all-true tail");
                TComp {
                    lo: c.lo.clone(),
                    lo_closed: c.lo_closed,
                    hi: Ext::Fin(c.hi.clone()),
                    hi_closed: c.hi_closed,
                }
            })
            .collect()
    }
}

/// Checks the window-shift equality of `comps` (given on at least
/// `[0, t + 2 delta)`) at tail start `t`.
fn verify_pattern(comps: &[Comp], t: &Q, delta: &Q) -> bool {
    let mid = t + delta;
    let end = &mid + delta;
    let first = window_comps(comps, t, &mid);
    let second = window_comps(comps, &mid, &end);
    shift_comps(&first, delta) == second
}

/// Runs `compute` on growing windows until the result verifies as
/// periodic with the candidate tail start; `compute(w)` must return the
/// exact merged components of the result on `[0, w)`.
pub fn build_upset(
    t0: Q,
    delta: Q,
    cap: usize,
    mut compute: impl FnMut(&Q) -> Result<Vec<Comp>, UpsetError>,
) -> Result<UPSet, UpsetError> {
    let mut t_cand = t0;
    for _ in 0..cap.max(1) {
        let w = &t_cand + &delta + &delta;
        let comps = merge_comps(compute(&w)?);
        if verify_pattern(&comps, &t_cand, &delta) {
            return Ok(UPSet::from_verified(&comps, t_cand, delta));
        }
        t_cand += &delta;
    }
    Err(UpsetError::Stabilization(format!(
        "no verified tail start within {} retries",
        cap
    )))
}

/// Interval of an operator window, mirroring the formula-level type but
/// with rational-friendly endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    /// Lower offset.
    pub lo: Q,
    /// Whether the lower offset is attained.
    pub lo_closed: bool,
    /// Upper offset; `None` for unbounded.
    pub hi: Option<Q>,
    /// Whether the upper offset is attained.
    pub hi_closed: bool,
}

impl Window {
    /// True when offset 0 is attained.
    pub fn attains_zero(&self) -> bool {
        self.lo.is_zero() && self.lo_closed
    }

    /// The same window with an excluded 0 offset.
    pub fn strict(&self) -> Window {
        Window {
            lo: self.lo.clone(),
            lo_closed: if self.lo.is_zero() { false } else { self.lo_closed },
            hi: self.hi.clone(),
            hi_closed: self.hi_closed,
        }
    }
}

/// Future dilation of one component: all `t` with some witness in
/// `(t + window) \cap comp`.
fn dilate_comp_future(c: &TComp, win: &Window) -> XComp {
    let (lo, lo_closed) = match &win.hi {
        None => (Ext::NegInf, false),
        Some(b) => (c_lo_minus(c, b), c.lo_closed && win.hi_closed),
    };
    let hi = c.hi.sub_q(&win.lo);
    let hi_closed = c.hi_closed && win.lo_closed;
    XComp {
        lo,
        lo_closed,
        hi,
        hi_closed,
    }
}

fn c_lo_minus(c: &TComp, b: &Q) -> Ext {
    Ext::Fin(&c.lo - b)
}

/// Past dilation of one component: all `t` with some witness in
/// `(t - window) \cap comp`.
fn dilate_comp_past(c: &TComp, win: &Window) -> XComp {
    let lo = Ext::Fin(&c.lo + &win.lo);
    let lo_closed = c.lo_closed && win.lo_closed;
    let (hi, hi_closed) = match &win.hi {
        None => (Ext::PosInf, false),
        Some(b) => (c.hi.add_q(b), c.hi_closed && win.hi_closed),
    };
    XComp {
        lo,
        lo_closed,
        hi,
        hi_closed,
    }
}

fn comp_to_tcomp(c: &Comp) -> TComp {
    TComp {
        lo: c.lo.clone(),
        lo_closed: c.lo_closed,
        hi: Ext::Fin(c.hi.clone()),
        hi_closed: c.hi_closed,
    }
}

/// Retry cap for periodicity detection, scaled by how far constants can
/// push the transient part relative to the period.
pub fn retry_cap(max_const: u64, depth: usize, delta: &Q) -> usize {
    let budget = Q::from(BigInt::from(max_const)) * Q::from(BigInt::from(depth as u64));
    let periods = if delta.is_zero() {
        Q::zero()
    } else {
        (&budget / delta).ceil()
    };
    let p: usize = periods
        .to_integer()
        .try_into()
        .unwrap_or(usize::MAX / 2);
    p.saturating_add(16)
}

/// Complement within the nonnegative reals.
pub fn op_not(a: &UPSet, cap: usize) -> Result<UPSet, UpsetError> {
    build_upset(a.t.clone(), a.delta.clone(), cap, |w| {
        Ok(complement_comps(&a.materialize(w), w))
    })
}

/// Intersection.
pub fn op_and(a: &UPSet, b: &UPSet, cap: usize) -> Result<UPSet, UpsetError> {
    assert_eq!(a.delta, b.delta, "operands must share one period");
    let t0 = a.t.clone().max(b.t.clone());
    build_upset(t0, a.delta.clone(), cap, |w| {
        Ok(intersect_comps(&a.materialize(w), &b.materialize(w)))
    })
}

/// Union.
pub fn op_or(a: &UPSet, b: &UPSet, cap: usize) -> Result<UPSet, UpsetError> {
    assert_eq!(a.delta, b.delta, "operands must share one period");
    let t0 = a.t.clone().max(b.t.clone());
    build_upset(t0, a.delta.clone(), cap, |w| {
        let mut v = a.materialize(w);
        v.extend(b.materialize(w));
        Ok(merge_comps(v))
    })
}

/// Timed eventually: witnesses ahead by an offset inside the window.
pub fn op_future(a: &UPSet, win: &Window, cap: usize) -> Result<UPSet, UpsetError> {
    let t0 = a.t.clone();
    build_upset(t0, a.delta.clone(), cap, |w| {
        let comps: Vec<TComp> = match &win.hi {
            Some(b) => {
                let need = w + b + Q::one();
                a.materialize(&need).iter().map(comp_to_tcomp).collect()
            }
            None => {
                if !a.tail_empty() {
                    // Truth recurs forever, so every instant has a witness.
                    return Ok(vec![Comp {
                        lo: Q::zero(),
                        lo_closed: true,
                        hi: w.clone(),
                        hi_closed: false,
                    }]);
                }
                let all = &a.t + &a.delta;
                a.materialize(&all).iter().map(comp_to_tcomp).collect()
            }
        };
        let mut out = Vec::new();
        for c in &comps {
            if let Some(x) = dilate_comp_future(c, win).clip(w) {
                out.push(x);
            }
        }
        Ok(merge_comps(out))
    })
}

/// Timed past eventually: witnesses behind by an offset inside the window.
pub fn op_past(a: &UPSet, win: &Window, cap: usize) -> Result<UPSet, UpsetError> {
    let t0 = match &win.hi {
        Some(b) => &a.t + b + &a.delta,
        None => &a.t + &win.lo + &a.delta,
    };
    build_upset(t0, a.delta.clone(), cap, |w| {
        let comps: Vec<TComp> = a.materialize(w).iter().map(comp_to_tcomp).collect();
        let mut out = Vec::new();
        for c in &comps {
            if let Some(x) = dilate_comp_past(c, win).clip(w) {
                out.push(x);
            }
        }
        Ok(merge_comps(out))
    })
}

/// Timed until: a witness for the second operand ahead inside the window,
/// with the first operand holding on the open interval up to it.
pub fn op_until(
    g: &UPSet,
    p: &UPSet,
    win: &Window,
    cap: usize,
) -> Result<UPSet, UpsetError> {
    assert_eq!(g.delta, p.delta, "operands must share one period");
    if win.attains_zero() {
        let strict = op_until(g, p, &win.strict(), cap)?;
        return op_or(p, &strict, cap);
    }
    let delta = g.delta.clone();
    let t0 = g.t.clone().max(p.t.clone()) + &delta;
    build_upset(t0, delta.clone(), cap, |w| {
        let gs = g.true_components(w);
        let bplus = win.hi.clone().unwrap_or_else(Q::zero);
        let wide = w + &bplus + &delta + &delta + &delta + Q::one();
        let ps = p.materialize(&wide);
        let p_tail_nonempty = !p.tail_empty();
        let mut out: Vec<Comp> = Vec::new();
        for gc in &gs {
            if gc.hi == Ext::PosInf && win.hi.is_none() && p_tail_nonempty {
                // Witnesses recur forever inside an everlasting component.
                let piece = XComp {
                    lo: Ext::Fin(gc.lo.clone()),
                    lo_closed: true,
                    hi: Ext::PosInf,
                    hi_closed: false,
                };
                if let Some(x) = piece.clip(w) {
                    out.push(x);
                }
                continue;
            }
            for pc in &ps {
                // Clip the witness component at the carrier's right end,
                // which stays admissible as a witness position.
                let mut cc = comp_to_tcomp(pc);
                if let Ext::Fin(gr) = &gc.hi {
                    if &cc.lo > gr || (&cc.lo == gr && !cc.lo_closed) {
                        continue;
                    }
                    if let Ext::Fin(ph) = &cc.hi {
                        if ph > gr {
                            cc.hi = Ext::Fin(gr.clone());
                            cc.hi_closed = true;
                        }
                    }
                }
                let d = dilate_comp_future(&cc, win);
                // Constrain to instants at or after the carrier's start.
                let lo_bound = gc.lo.clone();
                let piece = XComp {
                    lo: match &d.lo {
                        Ext::NegInf => Ext::Fin(lo_bound.clone()),
                        Ext::PosInf => Ext::PosInf,
                        Ext::Fin(v) => {
                            if v < &lo_bound {
                                Ext::Fin(lo_bound.clone())
                            } else {
                                d.lo.clone()
                            }
                        }
                    },
                    lo_closed: match &d.lo {
                        Ext::Fin(v) if v >= &lo_bound => d.lo_closed,
                        _ => true,
                    },
                    hi: d.hi.clone(),
                    hi_closed: d.hi_closed,
                };
                if let Some(x) = piece.clip(w) {
                    out.push(x);
                }
            }
        }
        Ok(merge_comps(out))
    })
}

/// Timed since: a witness for the second operand behind inside the window,
/// with the first operand holding on the open interval since it.
pub fn op_since(
    g: &UPSet,
    p: &UPSet,
    win: &Window,
    cap: usize,
) -> Result<UPSet, UpsetError> {
    assert_eq!(g.delta, p.delta, "operands must share one period");
    if win.attains_zero() {
        let strict = op_since(g, p, &win.strict(), cap)?;
        return op_or(p, &strict, cap);
    }
    let delta = g.delta.clone();
    let extra = match &win.hi {
        Some(b) => b.clone(),
        None => win.lo.clone(),
    };
    let t0 = g.t.clone().max(p.t.clone()) + &extra + &delta;
    build_upset(t0, delta.clone(), cap, |w| {
        let gs = g.true_components(w);
        let ps = p.materialize(w);
        let mut out: Vec<Comp> = Vec::new();
        for gc in &gs {
            for pc in &ps {
                // Clip the witness component at the carrier's start.
                let mut cc = comp_to_tcomp(pc);
                if cc.lo < gc.lo {
                    cc.lo = gc.lo.clone();
                    cc.lo_closed = true;
                }
                if let Ext::Fin(ph) = &cc.hi {
                    let as_comp = Comp {
                        lo: cc.lo.clone(),
                        lo_closed: cc.lo_closed,
                        hi: ph.clone(),
                        hi_closed: cc.hi_closed,
                    };
                    if !as_comp.is_nonempty() {
                        continue;
                    }
                }
                let d = dilate_comp_past(&cc, win);
                // Constrain to instants at or before the carrier's end.
                let piece = match &gc.hi {
                    Ext::PosInf => d,
                    Ext::Fin(gr) => {
                        let (hi, hi_closed) = match &d.hi {
                            Ext::PosInf => (Ext::Fin(gr.clone()), true),
                            Ext::Fin(v) => {
                                if v > gr {
                                    (Ext::Fin(gr.clone()), true)
                                } else {
                                    (d.hi.clone(), d.hi_closed)
                                }
                            }
                            Ext::NegInf => (Ext::NegInf, false),
                        };
                        XComp {
                            lo: d.lo.clone(),
                            lo_closed: d.lo_closed,
                            hi,
                            hi_closed,
                        }
                    }
                    Ext::NegInf => unreachable!("component ends cannot be below every value"),
                };
                if let Some(x) = piece.clip(w) {
                    out.push(x);
                }
            }
        }
        Ok(merge_comps(out))
    })
}
