//! Exact lightcone-coordinate geometry on the Minkowski plane and the flat
//! cylinder: open intervals with extended-rational endpoints, double cones,
//! causal wedges, causal disjointness and Cauchy development.
//!
//! Everything here is a decision procedure over exact rationals; no floating
//! point enters this module.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::rat::{floor_int, format_rat, Rat};

/// A rational extended with `-inf` and `+inf`, totally ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rat),
    PosInf,
}

pub use ExtendedRational::{Finite, NegInf, PosInf};

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    /// Parses `"p/q"`, `"-inf"` or `"+inf"` (also bare `"inf"`).
    pub fn parse(s: &str) -> Result<Self, crate::rat::RatParseError> {
        match s.trim() {
            "-inf" => Ok(NegInf),
            "+inf" | "inf" => Ok(PosInf),
            other => crate::rat::parse_rat(other).map(Finite),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            PosInf => write!(f, "+inf"),
            Finite(r) => write!(f, "{}", format_rat(r)),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Rat> for ExtendedRational {
    fn from(r: Rat) -> Self {
        Finite(r)
    }
}

/// Open interval `(lo, hi)` with `lo < hi`. The empty set is represented by
/// absence (`Option<Interval>`), never by a degenerate pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: ExtendedRational,
    hi: ExtendedRational,
}

impl Interval {
    pub fn new(lo: ExtendedRational, hi: ExtendedRational) -> Result<Self, GeometryError> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(GeometryError::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            })
        }
    }

    /// Bounded interval from rational endpoints.
    pub fn bounded(lo: Rat, hi: Rat) -> Result<Self, GeometryError> {
        Interval::new(Finite(lo), Finite(hi))
    }

    pub fn full_line() -> Self {
        Interval {
            lo: NegInf,
            hi: PosInf,
        }
    }

    pub fn lo(&self) -> &ExtendedRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExtendedRational {
        &self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo < Finite(x.clone()) && Finite(x.clone()) < self.hi
    }

    /// Factor-wise inclusion `self ⊆ other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Length as an extended rational (`+inf` when unbounded).
    pub fn length(&self) -> ExtendedRational {
        match (&self.lo, &self.hi) {
            (Finite(a), Finite(b)) => Finite(b - a),
            _ => PosInf,
        }
    }

    /// Intersection of two open intervals, `None` when they do not meet.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        Interval::new(lo, hi).ok()
    }

    /// Translate by a rational shift; infinite endpoints stay put.
    pub fn translate(&self, t: &Rat) -> Interval {
        let mv = |e: &ExtendedRational| match e {
            Finite(r) => Finite(r + t),
            other => other.clone(),
        };
        Interval {
            lo: mv(&self.lo),
            hi: mv(&self.hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Double cone `I_+ × I_-` in lightcone coordinates; both factors nonempty
/// open intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCone {
    pub iplus: Interval,
    pub iminus: Interval,
}

impl DoubleCone {
    pub fn new(iplus: Interval, iminus: Interval) -> Self {
        DoubleCone { iplus, iminus }
    }

    pub fn contains(&self, p: &(Rat, Rat)) -> bool {
        self.iplus.contains(&p.0) && self.iminus.contains(&p.1)
    }

    pub fn subset_of(&self, other: &DoubleCone) -> bool {
        self.iplus.subset_of(&other.iplus) && self.iminus.subset_of(&other.iminus)
    }

    /// Translate by `(+n, -n)`, the deck transformation of the cylinder cover.
    pub fn deck_translate(&self, n: &BigInt) -> DoubleCone {
        let n = Rat::from_integer(n.clone());
        DoubleCone {
            iplus: self.iplus.translate(&n),
            iminus: self.iminus.translate(&(-n.clone())),
        }
    }
}

impl fmt::Display for DoubleCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.iplus, self.iminus)
    }
}

/// Finite nonempty union of double cones. Overlapping members are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeUnion {
    cones: Vec<DoubleCone>,
}

impl ConeUnion {
    pub fn new(cones: Vec<DoubleCone>) -> Result<Self, GeometryError> {
        if cones.is_empty() {
            Err(GeometryError::EmptyRegion)
        } else {
            Ok(ConeUnion { cones })
        }
    }

    pub fn singleton(dc: DoubleCone) -> Self {
        ConeUnion { cones: vec![dc] }
    }

    pub fn cones(&self) -> &[DoubleCone] {
        &self.cones
    }

    pub fn contains(&self, p: &(Rat, Rat)) -> bool {
        self.cones.iter().any(|c| c.contains(p))
    }
}

/// Pair of strict bounds cutting out a causal wedge. For `J^+` the bounds are
/// lower (`x^± > a^±`), for `J^-` they are upper (`x^± < b^±`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeConstraint {
    pub plus: ExtendedRational,
    pub minus: ExtendedRational,
    pub direction: WedgeDirection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeDirection {
    Future,
    Past,
}

impl WedgeConstraint {
    pub fn contains(&self, p: &(Rat, Rat)) -> bool {
        let pp = Finite(p.0.clone());
        let pm = Finite(p.1.clone());
        match self.direction {
            WedgeDirection::Future => pp > self.plus && pm > self.minus,
            WedgeDirection::Past => pp < self.plus && pm < self.minus,
        }
    }
}

/// Causal future `J^+` of a double cone: `x^+ > lo_+` and `x^- > lo_-`.
pub fn causal_future(dc: &DoubleCone) -> WedgeConstraint {
    WedgeConstraint {
        plus: dc.iplus.lo().clone(),
        minus: dc.iminus.lo().clone(),
        direction: WedgeDirection::Future,
    }
}

/// Causal past `J^-` of a double cone: `x^+ < hi_+` and `x^- < hi_-`.
pub fn causal_past(dc: &DoubleCone) -> WedgeConstraint {
    WedgeConstraint {
        plus: dc.iplus.hi().clone(),
        minus: dc.iminus.hi().clone(),
        direction: WedgeDirection::Past,
    }
}

/// Causal disjointness of two double cones in the Minkowski plane:
/// `J(dc1) ∩ dc2 = ∅`, decided by four open-endpoint comparisons.
pub fn causally_disjoint_minkowski(dc1: &DoubleCone, dc2: &DoubleCone) -> bool {
    // J^+(dc1) meets dc2 iff dc2 reaches strictly above both lower bounds.
    let future_meets = dc2.iplus.hi() > dc1.iplus.lo() && dc2.iminus.hi() > dc1.iminus.lo();
    let past_meets = dc2.iplus.lo() < dc1.iplus.hi() && dc2.iminus.lo() < dc1.iminus.hi();
    !(future_meets || past_meets)
}

/// Causal disjointness on the cylinder: Minkowski disjointness of `dc1`
/// against every deck translate `dc2 + (n, -n)`.
///
/// Both cones must have factor lengths `<= 1` (images of morphisms into the
/// cylinder). The integer quantifier is eliminated: each wedge condition
/// holds exactly on one open rational interval of `n`, so it suffices to
/// test those two intervals for integer points.
pub fn causally_disjoint_cylinder(
    dc1: &DoubleCone,
    dc2: &DoubleCone,
) -> Result<bool, GeometryError> {
    for (tag, dc) in [("first", dc1), ("second", dc2)] {
        if dc.iplus.length() > Finite(Rat::one()) || dc.iminus.length() > Finite(Rat::one()) {
            return Err(GeometryError::FactorTooWide {
                which: tag,
                cone: dc.to_string(),
            });
        }
    }
    // dc2 + (n, -n) meets J^+(dc1)  iff  d2p + n > a1p  and  d2m - n > a1m,
    // i.e. n in (a1p - d2p, d2m - a1m). Dually for J^-.
    let future_window = open_window(
        diff(dc1.iplus.lo(), dc2.iplus.hi()),
        diff(dc2.iminus.hi(), dc1.iminus.lo()),
    );
    let past_window = open_window(
        diff(dc2.iminus.lo(), dc1.iminus.hi()),
        diff(dc1.iplus.hi(), dc2.iplus.lo()),
    );
    Ok(!window_has_integer(&future_window) && !window_has_integer(&past_window))
}

/// `a - b` in extended arithmetic, with the convention that any expression
/// involving an infinity saturates to the dominating sign. The callers only
/// form differences whose indeterminate cases (`inf - inf`) cannot occur on
/// valid cones of finite width; mixed cases saturate correctly for them.
fn diff(a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
    match (a, b) {
        (Finite(x), Finite(y)) => Finite(x - y),
        (PosInf, _) | (_, NegInf) => PosInf,
        (NegInf, _) | (_, PosInf) => NegInf,
    }
}

fn open_window(
    lo: ExtendedRational,
    hi: ExtendedRational,
) -> Option<(ExtendedRational, ExtendedRational)> {
    if lo < hi {
        Some((lo, hi))
    } else {
        None
    }
}

fn window_has_integer(w: &Option<(ExtendedRational, ExtendedRational)>) -> bool {
    match w {
        None => false,
        Some((NegInf, _)) | Some((_, PosInf)) => true,
        Some((Finite(a), Finite(b))) => {
            // smallest integer strictly above a is floor(a) + 1
            let n = floor_int(a) + 1;
            Rat::from_integer(n) < *b
        }
        Some(_) => unreachable!("window endpoints are ordered"),
    }
}

/// Cauchy development of a cone union: the double cone spanned by its
/// lightcone projections. Errors when a projection is not a single interval.
pub fn cauchy_development(region: &ConeUnion) -> Result<DoubleCone, GeometryError> {
    let iplus = hull_projection(region.cones().iter().map(|c| c.iplus.clone()))?;
    let iminus = hull_projection(region.cones().iter().map(|c| c.iminus.clone()))?;
    Ok(DoubleCone::new(iplus, iminus))
}

fn hull_projection(intervals: impl Iterator<Item = Interval>) -> Result<Interval, GeometryError> {
    let mut sorted: Vec<Interval> = intervals.collect();
    sorted.sort_by(|a, b| a.lo().cmp(b.lo()).then_with(|| a.hi().cmp(b.hi())));
    let mut merged = sorted[0].clone();
    for next in &sorted[1..] {
        // open intervals: touching endpoints leave a gap point
        if next.lo() < merged.hi() {
            if next.hi() > merged.hi() {
                merged = Interval::new(merged.lo().clone(), next.hi().clone())
                    .expect("widening keeps the interval nonempty");
            }
        } else {
            return Err(GeometryError::DisconnectedProjection {
                gap_at: merged.hi().to_string(),
            });
        }
    }
    Ok(merged)
}

/// Verdict of the randomized causal-convexity probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexityVerdict {
    /// No violation found; probabilistic.
    Pass,
    /// Sound witness: `p`, `q` lie in the region, are causally related, and
    /// `gap` on the diamond between them does not.
    Counterexample {
        p: (Rat, Rat),
        q: (Rat, Rat),
        gap: (Rat, Rat),
    },
}

/// Randomized check that a cone union is causally convex: sample point pairs
/// inside the region and test a small grid on the diamond between causally
/// related pairs. `Pass` is probabilistic; a counterexample is sound.
pub fn is_causally_convex_sampled(
    region: &ConeUnion,
    sample_count: u32,
    seed: u64,
) -> ConvexityVerdict {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample_count {
        let p = sample_point(region, &mut rng);
        let q = sample_point(region, &mut rng);
        let (a, b) = if p.0 <= q.0 && p.1 <= q.1 {
            (p, q)
        } else if q.0 <= p.0 && q.1 <= p.1 {
            (q, p)
        } else {
            continue; // not causally related
        };
        for (u, v) in diamond_grid(&a, &b) {
            if !region.contains(&(u.clone(), v.clone())) {
                return ConvexityVerdict::Counterexample {
                    p: a,
                    q: b,
                    gap: (u, v),
                };
            }
        }
    }
    ConvexityVerdict::Pass
}

fn sample_point(region: &ConeUnion, rng: &mut impl Rng) -> (Rat, Rat) {
    let idx = rng.gen_range(0..region.cones().len());
    let dc = &region.cones()[idx];
    (
        sample_in_interval(&dc.iplus, rng),
        sample_in_interval(&dc.iminus, rng),
    )
}

fn sample_in_interval(iv: &Interval, rng: &mut impl Rng) -> Rat {
    const WINDOW: i64 = 16;
    let lo = match iv.lo() {
        Finite(r) => r.clone(),
        NegInf => crate::rat::int(-WINDOW),
        PosInf => unreachable!("interval lo is never +inf"),
    };
    let hi = match iv.hi() {
        Finite(r) => r.clone(),
        PosInf => (crate::rat::int(WINDOW)).max(lo.clone() + crate::rat::int(WINDOW)),
        NegInf => unreachable!("interval hi is never -inf"),
    };
    let k = rng.gen_range(1..64i64);
    lo.clone() + (hi - lo) * crate::rat::rat(k, 64)
}

fn diamond_grid(a: &(Rat, Rat), b: &(Rat, Rat)) -> Vec<(Rat, Rat)> {
    let mut pts = Vec::new();
    for i in 0..=4i64 {
        for j in 0..=4i64 {
            let t = crate::rat::rat(i, 4);
            let s = crate::rat::rat(j, 4);
            let u = &a.0 + (&b.0 - &a.0) * t;
            let v = &a.1 + (&b.1 - &a.1) * s;
            pts.push((u, v));
        }
    }
    pts
}

/// Errors raised by geometric constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("interval ({lo}, {hi}) is empty")]
    EmptyInterval { lo: String, hi: String },
    #[error("cone union must contain at least one cone")]
    EmptyRegion,
    #[error("{which} cone {cone} has a factor wider than 1")]
    FactorTooWide { which: &'static str, cone: String },
    #[error("projection of the region is not a single interval (gap at {gap_at})")]
    DisconnectedProjection { gap_at: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::bounded(int(lo), int(hi)).unwrap()
    }

    fn ivr(lo: Rat, hi: Rat) -> Interval {
        Interval::bounded(lo, hi).unwrap()
    }

    fn cone(pl: i64, ph: i64, ml: i64, mh: i64) -> DoubleCone {
        DoubleCone::new(iv(pl, ph), iv(ml, mh))
    }

    /// Grid oracle: does any point of a rational raster inside `dc2` lie in
    /// `J(dc1)`? Infinite endpoints are clipped to a wide window, which is
    /// sound for the bounded test cases below.
    fn grid_meets_j(dc1: &DoubleCone, dc2: &DoubleCone) -> bool {
        let fut = causal_future(dc1);
        let past = causal_past(dc1);
        let clip = |e: &ExtendedRational, def: i64| match e {
            Finite(r) => r.clone(),
            _ => int(def),
        };
        let plo = clip(dc2.iplus.lo(), -8);
        let phi = clip(dc2.iplus.hi(), 8);
        let mlo = clip(dc2.iminus.lo(), -8);
        let mhi = clip(dc2.iminus.hi(), 8);
        let n = 24i64;
        for i in 1..n {
            for j in 1..n {
                let x = &plo + (&phi - &plo) * rat(i, n);
                let y = &mlo + (&mhi - &mlo) * rat(j, n);
                let p = (x, y);
                if dc2.contains(&p) && (fut.contains(&p) || past.contains(&p)) {
                    return true;
                }
            }
        }
        false
    }

    /// Enumeration oracle for the cylinder relation: check Minkowski
    /// disjointness for every `n` in `[-window, window]`.
    fn cylinder_oracle(dc1: &DoubleCone, dc2: &DoubleCone, window: i64) -> bool {
        (-window..=window)
            .all(|n| causally_disjoint_minkowski(dc1, &dc2.deck_translate(&BigInt::from(n))))
    }

    #[test]
    fn causal_future_bounds_and_membership() {
        let w = causal_future(&cone(0, 1, 0, 1));
        assert_eq!(w.plus, Finite(int(0)));
        assert_eq!(w.minus, Finite(int(0)));
        assert!(w.contains(&(int(2), int(2))));
        assert!(!w.contains(&(int(2), int(-1))));

        let dc = DoubleCone::new(Interval::new(NegInf, Finite(int(1))).unwrap(), iv(0, 1));
        let w = causal_future(&dc);
        assert_eq!(w.plus, NegInf);
        assert!(w.contains(&(int(-100), rat(1, 2))));
        assert!(!w.contains(&(int(-100), int(0))));
    }

    #[test]
    fn causal_past_bounds_and_membership() {
        let w = causal_past(&cone(0, 1, 0, 1));
        assert_eq!(w.plus, Finite(int(1)));
        assert!(w.contains(&(int(-1), int(-1))));
        assert!(!w.contains(&(int(2), rat(1, 2))));

        let dc = DoubleCone::new(
            Interval::new(Finite(int(0)), PosInf).unwrap(),
            Interval::new(Finite(int(0)), PosInf).unwrap(),
        );
        let w = causal_past(&dc);
        assert_eq!(w.plus, PosInf);
        assert!(w.contains(&(int(1000), int(1000))));
    }

    #[test]
    fn minkowski_disjointness_matches_grid_oracle_on_named_cases() {
        let spacelike = (cone(0, 1, 0, 1), cone(2, 3, -3, -2));
        let timelike = (cone(0, 1, 0, 1), cone(2, 3, 2, 3));
        assert!(causally_disjoint_minkowski(&spacelike.0, &spacelike.1));
        assert!(!grid_meets_j(&spacelike.0, &spacelike.1));
        assert!(!causally_disjoint_minkowski(&timelike.0, &timelike.1));
        assert!(grid_meets_j(&timelike.0, &timelike.1));
        // a set is never causally disjoint from itself
        let dc = cone(0, 1, 0, 1);
        assert!(!causally_disjoint_minkowski(&dc, &dc));
    }

    #[test]
    fn minkowski_disjointness_matches_grid_oracle_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut e = || rat(rng.gen_range(-12..12), rng.gen_range(1..4));
            let mk = |a: Rat, b: Rat, c: Rat, d: Rat| -> Option<DoubleCone> {
                let ip = Interval::bounded(a.clone().min(b.clone()), a.max(b)).ok()?;
                let im = Interval::bounded(c.clone().min(d.clone()), c.max(d)).ok()?;
                Some(DoubleCone::new(ip, im))
            };
            let (Some(dc1), Some(dc2)) = (mk(e(), e(), e(), e()), mk(e(), e(), e(), e())) else {
                continue;
            };
            assert_eq!(
                causally_disjoint_minkowski(&dc1, &dc2),
                !grid_meets_j(&dc1, &dc2),
                "disagreement on {dc1} vs {dc2}"
            );
        }
    }

    #[test]
    fn cylinder_disjointness_examples() {
        let q = |a: i64, b: i64| ivr(rat(a, 4), rat(b, 4));
        let dc1 = DoubleCone::new(q(0, 1), q(0, 1));
        let spacelike = DoubleCone::new(q(2, 3), q(-3, -2));
        let timelike = DoubleCone::new(q(2, 3), q(2, 3));
        assert!(causally_disjoint_cylinder(&dc1, &spacelike).unwrap());
        assert!(cylinder_oracle(&dc1, &spacelike, 5));
        assert!(!causally_disjoint_cylinder(&dc1, &timelike).unwrap());
        assert!(!cylinder_oracle(&dc1, &timelike, 5));
        assert!(!causally_disjoint_cylinder(&dc1, &dc1).unwrap());
    }

    #[test]
    fn cylinder_rejects_wide_factors() {
        let wide = DoubleCone::new(iv(0, 2), iv(0, 1));
        let ok = DoubleCone::new(iv(0, 1), iv(0, 1));
        assert!(matches!(
            causally_disjoint_cylinder(&wide, &ok),
            Err(GeometryError::FactorTooWide { .. })
        ));
    }

    #[test]
    fn cylinder_window_matches_bruteforce_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let strip = |rng: &mut rand_chacha::ChaCha8Rng| {
                let lo = rat(rng.gen_range(-24..24), 8);
                let len = rat(rng.gen_range(1..=8), 8);
                Interval::bounded(lo.clone(), lo + len).unwrap()
            };
            let dc1 = DoubleCone::new(strip(&mut rng), strip(&mut rng));
            let dc2 = DoubleCone::new(strip(&mut rng), strip(&mut rng));
            assert_eq!(
                causally_disjoint_cylinder(&dc1, &dc2).unwrap(),
                cylinder_oracle(&dc1, &dc2, 10),
                "window derivation disagrees with enumeration on {dc1} vs {dc2}"
            );
        }
    }

    #[test]
    fn development_of_single_cone_is_itself() {
        let dc = cone(0, 1, 0, 1);
        let u = ConeUnion::singleton(dc.clone());
        assert_eq!(cauchy_development(&u).unwrap(), dc);
    }

    #[test]
    fn development_hulls_overlapping_union() {
        // projection-union oracle: the merged projections are (0,2) and (0,2)
        let u = ConeUnion::new(vec![
            cone(0, 1, 0, 1),
            DoubleCone::new(ivr(rat(1, 2), int(2)), ivr(rat(1, 2), int(2))),
        ])
        .unwrap();
        assert_eq!(cauchy_development(&u).unwrap(), cone(0, 2, 0, 2));
    }

    #[test]
    fn development_rejects_gapped_union() {
        let u = ConeUnion::new(vec![cone(0, 1, 0, 1), cone(3, 4, 3, 4)]).unwrap();
        assert!(matches!(
            cauchy_development(&u),
            Err(GeometryError::DisconnectedProjection { .. })
        ));
    }

    #[test]
    fn development_is_idempotent() {
        let u = ConeUnion::new(vec![
            cone(0, 1, 0, 1),
            DoubleCone::new(ivr(rat(1, 2), int(2)), ivr(rat(1, 2), int(2))),
        ])
        .unwrap();
        let d = cauchy_development(&u).unwrap();
        let d2 = cauchy_development(&ConeUnion::singleton(d.clone())).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn convexity_passes_on_double_cone_and_joined_union() {
        let single = ConeUnion::singleton(cone(0, 1, 0, 1));
        assert_eq!(
            is_causally_convex_sampled(&single, 64, 1),
            ConvexityVerdict::Pass
        );
        // union is the double cone (0,3)x(0,1)
        let joined = ConeUnion::new(vec![cone(0, 2, 0, 1), cone(1, 3, 0, 1)]).unwrap();
        assert_eq!(
            is_causally_convex_sampled(&joined, 128, 2),
            ConvexityVerdict::Pass
        );
    }

    #[test]
    fn convexity_finds_gap_between_separated_cones() {
        let u = ConeUnion::new(vec![cone(0, 1, 0, 1), cone(2, 3, 2, 3)]).unwrap();
        match is_causally_convex_sampled(&u, 256, 3) {
            ConvexityVerdict::Counterexample { p, q, gap } => {
                assert!(u.contains(&p) && u.contains(&q));
                assert!(!u.contains(&gap));
                assert!(p.0 <= q.0 && p.1 <= q.1);
            }
            ConvexityVerdict::Pass => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn disjointness_is_symmetric_and_monotone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let mut e = || rat(rng.gen_range(-10..10), rng.gen_range(1..3));
            let mk = |a: Rat, b: Rat| Interval::bounded(a.clone().min(b.clone()), a.max(b)).ok();
            let (Some(p1), Some(m1), Some(p2), Some(m2)) =
                (mk(e(), e()), mk(e(), e()), mk(e(), e()), mk(e(), e()))
            else {
                continue;
            };
            let dc1 = DoubleCone::new(p1, m1);
            let dc2 = DoubleCone::new(p2.clone(), m2.clone());
            assert_eq!(
                causally_disjoint_minkowski(&dc1, &dc2),
                causally_disjoint_minkowski(&dc2, &dc1)
            );
            // shrink dc2 and check monotonicity
            let shrink = |i: &Interval| {
                let (Finite(a), Finite(b)) = (i.lo().clone(), i.hi().clone()) else {
                    unreachable!()
                };
                let len = &b - &a;
                ivr(&a + &len * rat(1, 4), &b - &len * rat(1, 4))
            };
            let dc2_small = DoubleCone::new(shrink(&p2), shrink(&m2));
            if causally_disjoint_minkowski(&dc1, &dc2) {
                assert!(causally_disjoint_minkowski(&dc1, &dc2_small));
            }
        }
    }

    #[test]
    fn cylinder_agrees_with_minkowski_in_narrow_strip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 1000 {
            // endpoints inside (0, 1/4): total strip width < 1/2, so no
            // nonzero deck translate can interact
            let mut e = || rat(rng.gen_range(0..16), 64);
            let mk = |a: Rat, b: Rat| Interval::bounded(a.clone().min(b.clone()), a.max(b)).ok();
            let (Some(p1), Some(m1), Some(p2), Some(m2)) =
                (mk(e(), e()), mk(e(), e()), mk(e(), e()), mk(e(), e()))
            else {
                continue;
            };
            let dc1 = DoubleCone::new(p1, m1);
            let dc2 = DoubleCone::new(p2, m2);
            assert_eq!(
                causally_disjoint_cylinder(&dc1, &dc2).unwrap(),
                causally_disjoint_minkowski(&dc1, &dc2)
            );
            checked += 1;
        }
    }
}
