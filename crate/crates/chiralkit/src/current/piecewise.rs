//! Piecewise-polynomial test functions: compactly supported functions on
//! the line and periodic functions on the circle, with the exact Poisson
//! pairings `-1/2 ∫ φ dψ` and the pushforwards along piecewise-linear
//! reparametrizations.
//!
//! Functions may jump at breakpoints; the pairing handles distributional
//! derivatives with the midpoint convention, which is what keeps it exactly
//! antisymmetric.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::CurrentError;
use crate::maps1d::{CircleMapLift, LineEmbedding};
use crate::rat::{floor_int, int, Rat};

/// Compactly supported piecewise polynomial: `polys[i]` on the open cell
/// `(breakpoints[i], breakpoints[i+1])`, identically zero outside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LineFn {
    breakpoints: Vec<Rat>,
    polys: Vec<Poly>,
}

impl LineFn {
    pub fn zero() -> Self {
        LineFn::default()
    }

    /// Builds from breakpoints and cell polynomials and canonicalizes:
    /// adjacent equal polynomials merge, zero margins are trimmed.
    pub fn new(breakpoints: Vec<Rat>, polys: Vec<Poly>) -> Result<Self, CurrentError> {
        if breakpoints.is_empty() && polys.is_empty() {
            return Ok(LineFn::zero());
        }
        if breakpoints.len() != polys.len() + 1 {
            return Err(CurrentError::MalformedFunction);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CurrentError::MalformedFunction);
        }
        let mut f = LineFn { breakpoints, polys };
        f.canonicalize();
        Ok(f)
    }

    /// Single polynomial supported on one cell.
    pub fn piece(lo: Rat, hi: Rat, poly: Poly) -> Result<Self, CurrentError> {
        LineFn::new(vec![lo, hi], vec![poly])
    }

    /// Triangle bump: 0 at `lo`, `peak` at the midpoint, 0 at `hi`.
    pub fn triangle(lo: Rat, hi: Rat, peak: Rat) -> Result<Self, CurrentError> {
        if lo >= hi {
            return Err(CurrentError::MalformedFunction);
        }
        let mid = (&lo + &hi) / int(2);
        let up_slope = &peak / (&mid - &lo);
        let down_slope = -&peak / (&hi - &mid);
        let up = Poly::from_coeffs(vec![-&up_slope * &lo, up_slope]);
        let down = Poly::from_coeffs(vec![-&down_slope * &hi, down_slope]);
        LineFn::new(vec![lo, mid, hi], vec![up, down])
    }

    fn canonicalize(&mut self) {
        // merge equal neighbours
        let mut i = 0;
        while i + 1 < self.polys.len() {
            if self.polys[i] == self.polys[i + 1] {
                self.polys.remove(i + 1);
                self.breakpoints.remove(i + 1);
            } else {
                i += 1;
            }
        }
        // trim zero margins
        while self.polys.first().is_some_and(Poly::is_zero) {
            self.polys.remove(0);
            self.breakpoints.remove(0);
        }
        while self.polys.last().is_some_and(Poly::is_zero) {
            self.polys.pop();
            self.breakpoints.pop();
        }
        if self.polys.is_empty() {
            self.breakpoints.clear();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Closed support `[first, last]` of a nonzero function.
    pub fn support(&self) -> Option<(Rat, Rat)> {
        if self.is_zero() {
            None
        } else {
            Some((
                self.breakpoints[0].clone(),
                self.breakpoints[self.breakpoints.len() - 1].clone(),
            ))
        }
    }

    /// Polynomial on the cell containing an interior point, zero outside.
    pub fn poly_at_interior(&self, x: &Rat) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let k = self.breakpoints.partition_point(|b| b <= x);
        if k == 0 || k == self.breakpoints.len() {
            Poly::zero()
        } else {
            self.polys[k - 1].clone()
        }
    }

    /// Limit from the right.
    pub fn eval_right(&self, x: &Rat) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let k = self.breakpoints.partition_point(|b| b <= x);
        if k == 0 || k == self.breakpoints.len() {
            Rat::zero()
        } else {
            self.polys[k - 1].eval(x)
        }
    }

    /// Limit from the left.
    pub fn eval_left(&self, x: &Rat) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let k = self.breakpoints.partition_point(|b| b < x);
        if k == 0 || k == self.breakpoints.len() {
            Rat::zero()
        } else {
            self.polys[k - 1].eval(x)
        }
    }

    /// Midpoint-convention value: the average of the one-sided limits.
    pub fn eval_mid(&self, x: &Rat) -> Rat {
        (self.eval_left(x) + self.eval_right(x)) / int(2)
    }

    /// Jump height at `x` (zero off the breakpoints).
    pub fn jump(&self, x: &Rat) -> Rat {
        self.eval_right(x) - self.eval_left(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        for (i, w) in self.breakpoints.windows(2).enumerate() {
            if crate::rat::rat_to_f64(&w[0]) <= x && x < crate::rat::rat_to_f64(&w[1]) {
                return self.polys[i].eval_f64(x);
            }
        }
        0.0
    }

    pub fn add(&self, other: &LineFn) -> LineFn {
        let mut bps: Vec<Rat> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        bps.sort();
        bps.dedup();
        if bps.is_empty() {
            return LineFn::zero();
        }
        let mut polys = Vec::with_capacity(bps.len().saturating_sub(1));
        for w in bps.windows(2) {
            let mid = (&w[0] + &w[1]) / int(2);
            polys.push(
                self.poly_at_interior(&mid)
                    .add(&other.poly_at_interior(&mid)),
            );
        }
        LineFn::new(bps, polys).expect("refined cells are ordered")
    }

    pub fn neg(&self) -> LineFn {
        LineFn {
            breakpoints: self.breakpoints.clone(),
            polys: self.polys.iter().map(Poly::neg).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> LineFn {
        if k.is_zero() {
            return LineFn::zero();
        }
        LineFn {
            breakpoints: self.breakpoints.clone(),
            polys: self.polys.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Total mass `∫ f`.
    pub fn mass(&self) -> Rat {
        self.breakpoints
            .windows(2)
            .zip(&self.polys)
            .map(|(w, p)| p.integral_over(&w[0], &w[1]))
            .sum()
    }

    /// `∫_{-inf}^{x} f`, exact.
    pub fn mass_below(&self, x: &Rat) -> Rat {
        self.breakpoints
            .windows(2)
            .zip(&self.polys)
            .map(|(w, p)| {
                if *x <= w[0] {
                    Rat::zero()
                } else if *x >= w[1] {
                    p.integral_over(&w[0], &w[1])
                } else {
                    p.integral_over(&w[0], x)
                }
            })
            .sum()
    }

    /// `∫ sgn(x - y) f(y) dy = below - above`.
    pub fn signed_mass(&self, x: &Rat) -> Rat {
        let below = self.mass_below(x);
        &below + &below - self.mass()
    }

    pub fn is_continuous(&self) -> bool {
        self.breakpoints.iter().all(|x| self.jump(x).is_zero())
    }

    /// Translation `f(x - t)`.
    pub fn translate(&self, t: &Rat) -> LineFn {
        LineFn {
            breakpoints: self.breakpoints.iter().map(|b| b + t).collect(),
            polys: self.polys.iter().map(|p| p.shift(&-t.clone())).collect(),
        }
    }

    /// Classical cellwise derivative, ignoring jump layers.
    pub fn derivative_cellwise(&self) -> LineFn {
        let mut out = LineFn {
            breakpoints: self.breakpoints.clone(),
            polys: self.polys.iter().map(Poly::derivative).collect(),
        };
        out.canonicalize();
        out
    }

    /// All jump discontinuities as `(position, height)` pairs.
    pub fn jump_list(&self) -> Vec<(Rat, Rat)> {
        self.breakpoints
            .iter()
            .filter_map(|x| {
                let d = self.jump(x);
                if d.is_zero() {
                    None
                } else {
                    Some((x.clone(), d))
                }
            })
            .collect()
    }
}

/// `-1/2 ∫ φ dψ` on the line: exact cellwise integration of `φ ψ'` plus
/// midpoint-convention jump terms.
pub fn tau_line(phi: &LineFn, psi: &LineFn) -> Rat {
    let mut bps: Vec<Rat> = phi
        .breakpoints
        .iter()
        .chain(psi.breakpoints.iter())
        .cloned()
        .collect();
    bps.sort();
    bps.dedup();
    let mut total = Rat::zero();
    for w in bps.windows(2) {
        let mid = (&w[0] + &w[1]) / int(2);
        let p = phi.poly_at_interior(&mid);
        let q = psi.poly_at_interior(&mid);
        total += p.mul(&q.derivative()).integral_over(&w[0], &w[1]);
    }
    for u in &bps {
        let dq = psi.jump(u);
        if !dq.is_zero() {
            total += phi.eval_mid(u) * dq;
        }
    }
    -total / int(2)
}

/// Piecewise polynomial on the circle of unit circumference: `polys[i]` is
/// a polynomial of the line coordinate, valid on `[t_i, t_{i+1})` with the
/// last cell wrapping to `t_0 + 1`; the function extends 1-periodically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CircleFn {
    breakpoints: Vec<Rat>,
    polys: Vec<Poly>,
}

impl CircleFn {
    pub fn constant(c: Rat) -> Self {
        CircleFn {
            breakpoints: vec![Rat::zero()],
            polys: vec![Poly::constant(c)],
        }
    }

    pub fn zero() -> Self {
        CircleFn::constant(Rat::zero())
    }

    pub fn new(breakpoints: Vec<Rat>, polys: Vec<Poly>) -> Result<Self, CurrentError> {
        if breakpoints.is_empty()
            || breakpoints.len() != polys.len()
            || breakpoints.windows(2).any(|w| w[0] >= w[1])
            || breakpoints
                .iter()
                .any(|t| *t < Rat::zero() || *t >= Rat::one())
        {
            return Err(CurrentError::MalformedFunction);
        }
        let mut f = CircleFn { breakpoints, polys };
        f.canonicalize();
        Ok(f)
    }

    fn canonicalize(&mut self) {
        let mut i = 1;
        while i < self.breakpoints.len() {
            if self.polys[i - 1] == self.polys[i] {
                self.breakpoints.remove(i);
                self.polys.remove(i);
            } else {
                i += 1;
            }
        }
        // the anchor breakpoint is redundant when the last polynomial,
        // pulled back one period, continues into the first
        while self.breakpoints.len() > 1 {
            let wrapped = self.polys.last().expect("nonempty").shift(&int(1));
            if wrapped == self.polys[0] {
                self.breakpoints.remove(0);
                self.polys.remove(0);
            } else {
                break;
            }
        }
        if self.breakpoints.len() == 1 {
            let p = &self.polys[0];
            if p.shift(&int(1)) == *p {
                // 1-periodic polynomial: a constant; anchor at zero
                self.breakpoints[0] = Rat::zero();
            }
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn is_zero(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_zero()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.polys.len() == 1 && self.polys[0].coeffs().len() <= 1 {
            Some(
                self.polys[0]
                    .coeffs()
                    .first()
                    .cloned()
                    .unwrap_or_else(Rat::zero),
            )
        } else {
            None
        }
    }

    fn anchor(&self) -> &Rat {
        &self.breakpoints[0]
    }

    fn stored_cell(&self, y: &Rat) -> usize {
        self.breakpoints.partition_point(|b| b <= y) - 1
    }

    /// Value of the periodic extension (right-continuous convention).
    pub fn eval(&self, x: &Rat) -> Rat {
        let n = floor_int(&(x - self.anchor()));
        let y = x - Rat::from_integer(n);
        self.polys[self.stored_cell(&y)].eval(&y)
    }

    /// Left limit of the periodic extension.
    pub fn eval_left(&self, x: &Rat) -> Rat {
        let n = floor_int(&(x - self.anchor()));
        let y = x - Rat::from_integer(n);
        if y == *self.anchor() {
            // left of the anchor lives in the last cell, one period up
            self.polys.last().expect("nonempty").eval(&(&y + int(1)))
        } else {
            let k = self.breakpoints.partition_point(|b| b < &y);
            self.polys[k - 1].eval(&y)
        }
    }

    pub fn eval_mid(&self, x: &Rat) -> Rat {
        (self.eval_left(x) + self.eval(x)) / int(2)
    }

    pub fn jump(&self, x: &Rat) -> Rat {
        self.eval(x) - self.eval_left(x)
    }

    /// Polynomial of the line coordinate valid on a cell `[u, v)` that does
    /// not straddle any breakpoint mod 1.
    fn poly_on_cell(&self, u: &Rat) -> Poly {
        let n = floor_int(&(u - self.anchor()));
        let shift = Rat::from_integer(n);
        let y = u - &shift;
        self.polys[self.stored_cell(&y)].shift(&shift)
    }

    /// One period of cells `[lo, hi)` with their polynomials, starting at
    /// the anchor.
    pub fn cells(&self) -> Vec<(Rat, Rat, Poly)> {
        let k = self.breakpoints.len();
        (0..k)
            .map(|i| {
                let lo = self.breakpoints[i].clone();
                let hi = if i + 1 < k {
                    self.breakpoints[i + 1].clone()
                } else {
                    self.anchor() + int(1)
                };
                (lo, hi, self.polys[i].clone())
            })
            .collect()
    }

    /// Rebuilds a circle function from cells tiling a window `[s, s+1)`.
    pub fn from_line_window(cells: Vec<(Rat, Rat, Poly)>) -> Result<Self, CurrentError> {
        let mut reduced: Vec<(Rat, Rat, Poly)> = Vec::new();
        for (u, v, p) in cells {
            if v <= u {
                return Err(CurrentError::MalformedFunction);
            }
            let n = Rat::from_integer(floor_int(&u));
            let (u0, v0) = (&u - &n, &v - &n);
            if v0 <= Rat::one() {
                reduced.push((u0, v0, p.shift(&n)));
            } else {
                reduced.push((u0, Rat::one(), p.shift(&n)));
                reduced.push((Rat::zero(), v0 - int(1), p.shift(&(&n + int(1)))));
            }
        }
        reduced.sort_by(|a, b| a.0.cmp(&b.0));
        let breakpoints: Vec<Rat> = reduced.iter().map(|c| c.0.clone()).collect();
        let polys: Vec<Poly> = reduced.into_iter().map(|c| c.2).collect();
        CircleFn::new(breakpoints, polys)
    }

    /// Integral over one period.
    pub fn mass(&self) -> Rat {
        self.cells()
            .iter()
            .map(|(lo, hi, p)| p.integral_over(lo, hi))
            .sum()
    }

    pub fn add(&self, other: &CircleFn) -> CircleFn {
        let mut bps: Vec<Rat> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        bps.sort();
        bps.dedup();
        let k = bps.len();
        let polys: Vec<Poly> = (0..k)
            .map(|i| {
                let u = &bps[i];
                self.poly_on_cell(u).add(&other.poly_on_cell(u))
            })
            .collect();
        CircleFn::new(bps, polys).expect("refined breakpoints are valid")
    }

    pub fn scale(&self, k: &Rat) -> CircleFn {
        if k.is_zero() {
            return CircleFn::zero();
        }
        CircleFn {
            breakpoints: self.breakpoints.clone(),
            polys: self.polys.iter().map(|p| p.scale(k)).collect(),
        }
    }

    pub fn neg(&self) -> CircleFn {
        self.scale(&-Rat::one())
    }

    /// Rotation action `f(x - t)` on the circle.
    pub fn rotate(&self, t: &Rat) -> CircleFn {
        let cells = self
            .cells()
            .into_iter()
            .map(|(lo, hi, p)| (lo + t, hi + t, p.shift(&-t.clone())))
            .collect();
        CircleFn::from_line_window(cells).expect("rotation preserves the window")
    }
}

/// `-1/2 ∫_T φ dψ` over one period, with the same jump convention as on the
/// line.
pub fn tau_circle(phi: &CircleFn, psi: &CircleFn) -> Rat {
    let mut bps: Vec<Rat> = phi
        .breakpoints
        .iter()
        .chain(psi.breakpoints.iter())
        .cloned()
        .collect();
    bps.sort();
    bps.dedup();
    let mut total = Rat::zero();
    for i in 0..bps.len() {
        let lo = bps[i].clone();
        let hi = if i + 1 < bps.len() {
            bps[i + 1].clone()
        } else {
            &bps[0] + int(1)
        };
        let p = phi.poly_on_cell(&lo);
        let q = psi.poly_on_cell(&lo);
        total += p.mul(&q.derivative()).integral_over(&lo, &hi);
    }
    for u in &bps {
        let dq = psi.jump(u);
        if !dq.is_zero() {
            total += phi.eval_mid(u) * dq;
        }
    }
    -total / int(2)
}

/// Pushforward `(f_* φ)(y) = φ(f⁻¹(y))` along a line embedding that is
/// affine wherever `φ` is nonzero.
pub fn pushforward_line(map: &LineEmbedding, phi: &LineFn) -> Result<LineFn, CurrentError> {
    if phi.is_zero() {
        return Ok(LineFn::zero());
    }
    let (s0, s1) = phi.support().expect("nonzero function");
    let mut bps: Vec<Rat> = phi.breakpoints.clone();
    for b in map.breakpoints() {
        if *b > s0 && *b < s1 {
            bps.push(b.clone());
        }
    }
    bps.sort();
    bps.dedup();
    let mut out_bps = Vec::with_capacity(bps.len());
    let mut out_polys = Vec::with_capacity(bps.len().saturating_sub(1));
    for (i, w) in bps.windows(2).enumerate() {
        let _ = i;
        let mid = (&w[0] + &w[1]) / int(2);
        let p = phi.poly_at_interior(&mid);
        out_bps.push(map.eval(&w[0]));
        if p.is_zero() {
            out_polys.push(Poly::zero());
            continue;
        }
        let piece = map.piece_at(&mid);
        if piece.pole().is_some() {
            return Err(CurrentError::NonPolynomialPushforward);
        }
        let [a, b, _c, d] = piece.entries();
        let alpha = a / d;
        let beta = b / d;
        out_polys.push(p.compose_affine(&(Rat::one() / &alpha), &(-&beta / &alpha)));
    }
    out_bps.push(map.eval(bps.last().expect("nonempty")));
    LineFn::new(out_bps, out_polys)
}

/// Pushforward of a circle function along a circle-diffeomorphism lift that
/// is affine wherever the function is nonzero.
pub fn pushforward_circle(lift: &CircleMapLift, phi: &CircleFn) -> Result<CircleFn, CurrentError> {
    let period = phi.cells();
    let anchor = period[0].0.clone();
    let upper = &anchor + int(1);
    let mut bps: Vec<Rat> = period.iter().map(|c| c.0.clone()).collect();
    for b in lift.extended_breakpoints_in(&anchor, &upper) {
        if b > anchor && b < upper {
            bps.push(b);
        }
    }
    bps.sort();
    bps.dedup();
    let mut cells = Vec::with_capacity(bps.len());
    for i in 0..bps.len() {
        let lo = bps[i].clone();
        let hi = if i + 1 < bps.len() {
            bps[i + 1].clone()
        } else {
            upper.clone()
        };
        let mid = (&lo + &hi) / int(2);
        let p = phi.poly_on_cell(&lo);
        let (glo, ghi) = (lift.eval(&lo), lift.eval(&hi));
        if p.is_zero() {
            cells.push((glo, ghi, Poly::zero()));
            continue;
        }
        let piece = lift.piece_extended_at(&mid);
        if piece.pole().is_some() {
            return Err(CurrentError::NonPolynomialPushforward);
        }
        let [a, b, _c, d] = piece.entries();
        let alpha = a / d;
        let beta = b / d;
        cells.push((
            glo,
            ghi,
            p.compose_affine(&(Rat::one() / &alpha), &(-&beta / &alpha)),
        ));
    }
    CircleFn::from_line_window(cells)
}

/// Reinterprets a line function supported in an interval of length < 1 as a
/// circle function via the quotient.
pub fn line_to_circle(phi: &LineFn) -> Result<CircleFn, CurrentError> {
    let Some((s0, s1)) = phi.support() else {
        return Ok(CircleFn::zero());
    };
    if &s1 - &s0 >= Rat::one() {
        return Err(CurrentError::SupportTooWide);
    }
    let mut cells: Vec<(Rat, Rat, Poly)> = phi
        .breakpoints
        .windows(2)
        .zip(&phi.polys)
        .map(|(w, p)| (w[0].clone(), w[1].clone(), p.clone()))
        .collect();
    cells.push((s1, &s0 + int(1), Poly::zero()));
    CircleFn::from_line_window(cells)
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    prop_compose! {
        fn small_poly()(coeffs in proptest::collection::vec((-4i64..4, 1i64..3), 0..3)) -> Poly {
            Poly::from_coeffs(coeffs.into_iter().map(|(n, d)| rat(n, d)).collect())
        }
    }

    prop_compose! {
        fn line_fn()(
            start in (-8i64..8, 1i64..4),
            steps in proptest::collection::vec((1i64..4, small_poly()), 1..4)
        ) -> LineFn {
            let mut bps = vec![rat(start.0, start.1)];
            let mut polys = Vec::new();
            for (width, p) in steps {
                let next = bps.last().unwrap() + rat(width, 2);
                bps.push(next);
                polys.push(p);
            }
            LineFn::new(bps, polys).unwrap()
        }
    }

    proptest! {
        #[test]
        fn tau_is_antisymmetric(f in line_fn(), g in line_fn()) {
            prop_assert_eq!(tau_line(&f, &g), -tau_line(&g, &f));
        }

        #[test]
        fn tau_is_bilinear(f in line_fn(), g in line_fn(), h in line_fn(),
                           k in (-3i64..4, 1i64..3)) {
            let k = rat(k.0, k.1);
            let left = tau_line(&f.scale(&k).add(&g), &h);
            let right = tau_line(&f, &h) * &k + tau_line(&g, &h);
            prop_assert_eq!(left, right);
        }

        #[test]
        fn addition_matches_pointwise_midpoint_values(f in line_fn(), g in line_fn(),
                                                      x in (-20i64..20, 1i64..5)) {
            let x = rat(x.0, x.1);
            prop_assert_eq!(f.add(&g).eval_mid(&x), f.eval_mid(&x) + g.eval_mid(&x));
        }

        #[test]
        fn circle_tau_is_antisymmetric(f in line_fn(), g in line_fn()) {
            // squeeze the supports into one period before wrapping
            let squeeze = |h: &LineFn| {
                let Some((lo, hi)) = h.support() else { return CircleFn::zero() };
                let width = &hi - &lo;
                let map = crate::maps1d::LineEmbedding::affine(
                    &(rat(1, 2) / width),
                    &Rat::zero(),
                ).unwrap();
                let moved = pushforward_line(&map, &h.translate(&-lo)).unwrap();
                line_to_circle(&moved).unwrap()
            };
            let (cf, cg) = (squeeze(&f), squeeze(&g));
            prop_assert_eq!(tau_circle(&cf, &cg), -tau_circle(&cg, &cf));
        }
    }
}
