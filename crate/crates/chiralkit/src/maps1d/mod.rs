//! Exact piecewise-Möbius models of the one-dimensional reparametrization
//! monoids: strictly increasing self-embeddings of the line, their partial
//! inverses, bounded embeddings with image of length at most one, and the
//! canonical mod-Z normal form for pairs.
//!
//! A map is stored as sorted rational breakpoints plus one 2x2 rational
//! matrix per cell. Positive determinants, pole exclusion from each cell's
//! closure, and continuity at breakpoints together force global strict
//! monotonicity, so validity is a finite check. Matrices are kept in a
//! canonical projective form (coprime integer entries, largest-magnitude
//! entry positive), which makes equality of maps decidable and structural.

mod circle;

pub use circle::CircleMapLift;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::{ExtendedRational, Finite, Interval, NegInf, PosInf};
use crate::rat::{floor_int, format_rat, int, Rat};

/// One Möbius piece `x -> (ax + b) / (cx + d)` with `ad - bc > 0`, stored in
/// canonical projective form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MobiusPiece {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
}

impl MobiusPiece {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self, MapError> {
        let det = &a * &d - &b * &c;
        if det <= Rat::zero() {
            return Err(MapError::NonpositiveDeterminant);
        }
        let mut p = MobiusPiece { a, b, c, d };
        p.canonicalize();
        Ok(p)
    }

    pub fn identity() -> Self {
        MobiusPiece {
            a: Rat::one(),
            b: Rat::zero(),
            c: Rat::zero(),
            d: Rat::one(),
        }
    }

    pub fn translation(t: &Rat) -> Self {
        let mut p = MobiusPiece {
            a: Rat::one(),
            b: t.clone(),
            c: Rat::zero(),
            d: Rat::one(),
        };
        p.canonicalize();
        p
    }

    /// `x -> slope * x + offset` with `slope > 0`.
    pub fn affine(slope: &Rat, offset: &Rat) -> Result<Self, MapError> {
        MobiusPiece::new(slope.clone(), offset.clone(), Rat::zero(), Rat::one())
    }

    pub fn entries(&self) -> [&Rat; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        *self == MobiusPiece::identity()
    }

    /// Evaluates at a rational point. The callers keep poles outside every
    /// cell closure, so the denominator cannot vanish on valid data.
    pub fn eval(&self, x: &Rat) -> Rat {
        let den = &self.c * x + &self.d;
        assert!(!den.is_zero(), "evaluation at a Möbius pole");
        (&self.a * x + &self.b) / den
    }

    /// Finite pole `-d/c`, when the piece is not affine.
    pub fn pole(&self) -> Option<Rat> {
        if self.c.is_zero() {
            None
        } else {
            Some(-&self.d / &self.c)
        }
    }

    /// Limit for `x -> -inf`: `a/c` for a true Möbius piece, `-inf` for an
    /// affine one.
    pub fn limit_down(&self) -> ExtendedRational {
        if self.c.is_zero() {
            NegInf
        } else {
            Finite(&self.a / &self.c)
        }
    }

    /// Limit for `x -> +inf`.
    pub fn limit_up(&self) -> ExtendedRational {
        if self.c.is_zero() {
            PosInf
        } else {
            Finite(&self.a / &self.c)
        }
    }

    /// Matrix product `self * inner`, i.e. the piece of `self ∘ inner`.
    pub fn compose(&self, inner: &MobiusPiece) -> MobiusPiece {
        let mut p = MobiusPiece {
            a: &self.a * &inner.a + &self.b * &inner.c,
            b: &self.a * &inner.b + &self.b * &inner.d,
            c: &self.c * &inner.a + &self.d * &inner.c,
            d: &self.c * &inner.b + &self.d * &inner.d,
        };
        p.canonicalize();
        p
    }

    /// Inverse transformation `(d, -b; -c, a)`.
    pub fn inverse(&self) -> MobiusPiece {
        let mut p = MobiusPiece {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        };
        p.canonicalize();
        p
    }

    /// Conjugate by an integer translation: `T_n * self * T_{-n}`, the piece
    /// of a Z-equivariant extension shifted by `n` periods.
    pub(crate) fn shift_conjugate(&self, n: &BigInt) -> MobiusPiece {
        let t = Rat::from_integer(n.clone());
        MobiusPiece::translation(&t)
            .compose(self)
            .compose(&MobiusPiece::translation(&(-t.clone())))
    }

    /// Scale to coprime integer entries with the largest-magnitude entry
    /// positive; ties resolved by the first entry in `(a, b, c, d)` order.
    fn canonicalize(&mut self) {
        let lcm = [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|r| (*r * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if !gcd.is_zero() {
            for n in ints.iter_mut() {
                *n = &*n / &gcd;
            }
        }
        let mut lead = 0;
        for (i, n) in ints.iter().enumerate() {
            if n.abs() > ints[lead].abs() {
                lead = i;
            }
        }
        if ints[lead].is_negative() {
            for n in ints.iter_mut() {
                *n = -&*n;
            }
        }
        self.a = Rat::from_integer(ints[0].clone());
        self.b = Rat::from_integer(ints[1].clone());
        self.c = Rat::from_integer(ints[2].clone());
        self.d = Rat::from_integer(ints[3].clone());
    }
}

impl fmt::Display for MobiusPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}; {}, {}]",
            format_rat(&self.a),
            format_rat(&self.b),
            format_rat(&self.c),
            format_rat(&self.d)
        )
    }
}

/// Strictly increasing piecewise-Möbius self-embedding of the line.
///
/// `pieces[i]` acts on the `i`-th cell of the partition induced by
/// `breakpoints`, the two unbounded cells included.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LineEmbedding {
    breakpoints: Vec<Rat>,
    pieces: Vec<MobiusPiece>,
}

/// Defect reported by `validate`; the first problem found wins.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("piece determinant is not positive")]
    NonpositiveDeterminant,
    #[error("piece {index} has determinant <= 0")]
    NonpositiveDeterminantAt { index: usize },
    #[error("piece {index} has its pole inside the closure of its cell")]
    PoleInCell { index: usize },
    #[error("discontinuity at breakpoint {at}")]
    Discontinuity { at: String },
    #[error("breakpoints must be strictly increasing")]
    UnsortedBreakpoints,
    #[error("expected {expected} pieces for {got_breakpoints} breakpoints, got {got}")]
    PieceCountMismatch {
        expected: usize,
        got: usize,
        got_breakpoints: usize,
    },
    #[error("image {0} is not a bounded interval of length <= 1")]
    ImageTooWide(String),
    #[error("value {0} lies outside the map's domain")]
    OutsideDomain(String),
    #[error("map is not surjective; image is {0}")]
    NotSurjective(String),
    #[error("circle-lift breakpoints must lie in [0, 1)")]
    BreakpointOutOfPeriod,
    #[error("lift violates f(x + 1) = f(x) + 1 at the period wrap")]
    WrapMismatch,
    #[error("a circle lift needs at least one cell")]
    EmptyLift,
}

/// Validates raw map data: matrices per cell of the breakpoint partition.
/// Returns the first defect found, per the checks in the type's contract.
pub fn validate(breakpoints: &[Rat], matrices: &[[Rat; 4]]) -> Result<(), MapError> {
    if matrices.len() != breakpoints.len() + 1 {
        return Err(MapError::PieceCountMismatch {
            expected: breakpoints.len() + 1,
            got: matrices.len(),
            got_breakpoints: breakpoints.len(),
        });
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MapError::UnsortedBreakpoints);
    }
    for (i, m) in matrices.iter().enumerate() {
        let det = &m[0] * &m[3] - &m[1] * &m[2];
        if det <= Rat::zero() {
            return Err(MapError::NonpositiveDeterminantAt { index: i });
        }
        if !m[2].is_zero() {
            let pole = -&m[3] / &m[2];
            let lo = if i == 0 {
                None
            } else {
                Some(&breakpoints[i - 1])
            };
            let hi = breakpoints.get(i);
            let inside = lo.map_or(true, |l| pole >= *l) && hi.map_or(true, |h| pole <= *h);
            if inside {
                return Err(MapError::PoleInCell { index: i });
            }
        }
    }
    for (i, bp) in breakpoints.iter().enumerate() {
        let left = eval_matrix(&matrices[i], bp);
        let right = eval_matrix(&matrices[i + 1], bp);
        if left != right {
            return Err(MapError::Discontinuity { at: format_rat(bp) });
        }
    }
    Ok(())
}

fn eval_matrix(m: &[Rat; 4], x: &Rat) -> Rat {
    (&m[0] * x + &m[1]) / (&m[2] * x + &m[3])
}

impl LineEmbedding {
    /// Builds and canonicalizes a map from raw matrices, rejecting invalid
    /// data with the first defect found.
    pub fn new(breakpoints: Vec<Rat>, matrices: Vec<[Rat; 4]>) -> Result<Self, MapError> {
        validate(&breakpoints, &matrices)?;
        let pieces = matrices
            .into_iter()
            .map(|[a, b, c, d]| MobiusPiece::new(a, b, c, d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_pieces(breakpoints, pieces))
    }

    /// Internal constructor for data already known valid; canonicalizes.
    pub(crate) fn from_pieces(breakpoints: Vec<Rat>, pieces: Vec<MobiusPiece>) -> Self {
        debug_assert_eq!(pieces.len(), breakpoints.len() + 1);
        let mut f = LineEmbedding {
            breakpoints,
            pieces,
        };
        f.merge_redundant();
        f
    }

    pub fn identity() -> Self {
        LineEmbedding {
            breakpoints: vec![],
            pieces: vec![MobiusPiece::identity()],
        }
    }

    pub fn translation(t: &Rat) -> Self {
        LineEmbedding {
            breakpoints: vec![],
            pieces: vec![MobiusPiece::translation(t)],
        }
    }

    pub fn affine(slope: &Rat, offset: &Rat) -> Result<Self, MapError> {
        Ok(LineEmbedding {
            breakpoints: vec![],
            pieces: vec![MobiusPiece::affine(slope, offset)?],
        })
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[MobiusPiece] {
        &self.pieces
    }

    fn merge_redundant(&mut self) {
        let mut i = 0;
        while i < self.breakpoints.len() {
            if self.pieces[i] == self.pieces[i + 1] {
                self.breakpoints.remove(i);
                self.pieces.remove(i + 1);
            } else {
                i += 1;
            }
        }
    }

    fn cell_index(&self, x: &Rat) -> usize {
        self.breakpoints.partition_point(|b| b <= x)
    }

    pub fn piece_at(&self, x: &Rat) -> &MobiusPiece {
        &self.pieces[self.cell_index(x)]
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.piece_at(x).eval(x)
    }

    /// Evaluation extended to the endpoints of the line by tail limits.
    pub fn eval_extended(&self, x: &ExtendedRational) -> ExtendedRational {
        match x {
            NegInf => self.pieces.first().expect("nonempty").limit_down(),
            PosInf => self.pieces.last().expect("nonempty").limit_up(),
            Finite(r) => Finite(self.eval(r)),
        }
    }

    /// Open image interval, computed from the two tail limits.
    pub fn image(&self) -> Interval {
        Interval::new(self.eval_extended(&NegInf), self.eval_extended(&PosInf))
            .expect("strictly increasing maps have nonempty image")
    }

    /// Image of an open interval: monotonicity maps endpoints to endpoints.
    pub fn map_interval(&self, iv: &Interval) -> Interval {
        Interval::new(self.eval_extended(iv.lo()), self.eval_extended(iv.hi()))
            .expect("strictly increasing maps preserve interval nonemptiness")
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == Interval::full_line()
    }

    /// Solves `f(x) = y` for `y` in the image.
    pub fn invert_value(&self, y: &Rat) -> Result<Rat, MapError> {
        if !self.image().contains(y) {
            return Err(MapError::OutsideDomain(format_rat(y)));
        }
        // breakpoint values are increasing; find the cell whose image holds y
        let k = self
            .breakpoints
            .iter()
            .map(|b| self.eval(b))
            .collect::<Vec<_>>()
            .partition_point(|v| v <= y);
        Ok(self.pieces[k].inverse().eval(y))
    }

    /// Piecewise-Möbius inverse, defined on the image interval.
    pub fn invert_on_image(&self) -> PartialMobiusMap {
        PartialMobiusMap {
            domain: self.image(),
            breakpoints: self.breakpoints.iter().map(|b| self.eval(b)).collect(),
            pieces: self.pieces.iter().map(MobiusPiece::inverse).collect(),
        }
    }

    /// Total inverse, available exactly for the surjective maps.
    pub fn inverse_total(&self) -> Result<LineEmbedding, MapError> {
        if !self.is_surjective() {
            return Err(MapError::NotSurjective(self.image().to_string()));
        }
        let p = self.invert_on_image();
        Ok(LineEmbedding::from_pieces(p.breakpoints, p.pieces))
    }

    /// Preimage of an open subinterval of the image.
    pub fn preimage_interval(&self, iv: &Interval) -> Result<Interval, MapError> {
        let img = self.image();
        let sub = iv
            .intersect(&img)
            .ok_or(MapError::OutsideDomain(iv.to_string()))?;
        let back = |e: &ExtendedRational, side_limit: ExtendedRational| match e {
            Finite(y) => {
                if img.contains(y) {
                    Finite(self.invert_value(y).expect("y is in the image"))
                } else {
                    side_limit
                }
            }
            _ => side_limit,
        };
        Interval::new(back(sub.lo(), NegInf), back(sub.hi(), PosInf))
            .map_err(|_| MapError::OutsideDomain(iv.to_string()))
    }

    /// Post-compose with a rational translation.
    pub fn translate(&self, t: &Rat) -> LineEmbedding {
        compose_line(&LineEmbedding::translation(t), self)
    }
}

impl fmt::Display for LineEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " | {} | ", format_rat(&self.breakpoints[i - 1]))?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Composite `g ∘ f`. Output breakpoints are those of `f` together with the
/// `f`-preimages of the breakpoints of `g` that land in the image of `f`.
pub fn compose_line(g: &LineEmbedding, f: &LineEmbedding) -> LineEmbedding {
    let image = f.image();
    let mut bps = f.breakpoints.clone();
    for t in &g.breakpoints {
        if image.contains(t) {
            bps.push(f.invert_value(t).expect("breakpoint is in the image"));
        }
    }
    bps.sort();
    bps.dedup();
    let pieces = cell_representatives(&bps)
        .map(|x| g.piece_at(&f.eval(&x)).compose(f.piece_at(&x)))
        .collect();
    LineEmbedding::from_pieces(bps, pieces)
}

/// One interior representative per cell of a breakpoint partition.
fn cell_representatives(bps: &[Rat]) -> impl Iterator<Item = Rat> + '_ {
    (0..=bps.len()).map(move |i| {
        if bps.is_empty() {
            Rat::zero()
        } else if i == 0 {
            &bps[0] - int(1)
        } else if i == bps.len() {
            &bps[bps.len() - 1] + int(1)
        } else {
            (&bps[i - 1] + &bps[i]) / int(2)
        }
    })
}

/// Strictly increasing piecewise-Möbius map defined on an open interval,
/// e.g. the inverse of an embedding on its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMobiusMap {
    domain: Interval,
    breakpoints: Vec<Rat>,
    pieces: Vec<MobiusPiece>,
}

impl PartialMobiusMap {
    pub(crate) fn from_parts(
        domain: Interval,
        breakpoints: Vec<Rat>,
        pieces: Vec<MobiusPiece>,
    ) -> Self {
        debug_assert_eq!(pieces.len(), breakpoints.len() + 1);
        PartialMobiusMap {
            domain,
            breakpoints,
            pieces,
        }
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn piece_at(&self, x: &Rat) -> &MobiusPiece {
        &self.pieces[self.breakpoints.partition_point(|b| b <= x)]
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, MapError> {
        if !self.domain.contains(x) {
            return Err(MapError::OutsideDomain(format_rat(x)));
        }
        Ok(self.piece_at(x).eval(x))
    }

    /// One-sided limits at the open ends of the domain; interior points
    /// evaluate directly.
    pub fn eval_extended(&self, x: &ExtendedRational) -> Result<ExtendedRational, MapError> {
        if x <= self.domain.lo() {
            if x < self.domain.lo() {
                return Err(MapError::OutsideDomain(x.to_string()));
            }
            return Ok(match self.domain.lo() {
                Finite(r) => Finite(self.pieces.first().expect("nonempty").eval(r)),
                NegInf => self.pieces.first().expect("nonempty").limit_down(),
                PosInf => unreachable!(),
            });
        }
        if x >= self.domain.hi() {
            if x > self.domain.hi() {
                return Err(MapError::OutsideDomain(x.to_string()));
            }
            return Ok(match self.domain.hi() {
                Finite(r) => Finite(self.pieces.last().expect("nonempty").eval(r)),
                PosInf => self.pieces.last().expect("nonempty").limit_up(),
                NegInf => unreachable!(),
            });
        }
        match x {
            Finite(r) => Ok(Finite(self.piece_at(r).eval(r))),
            _ => unreachable!("infinite x is handled by the endpoint branches"),
        }
    }

    /// Total composite `self ∘ f`, defined when the image of `f` lies inside
    /// this map's domain.
    pub fn compose_after(&self, f: &LineEmbedding) -> Result<LineEmbedding, MapError> {
        let image = f.image();
        if !image.subset_of(&self.domain) {
            return Err(MapError::OutsideDomain(image.to_string()));
        }
        let mut bps = f.breakpoints.clone();
        for t in &self.breakpoints {
            if image.contains(t) {
                bps.push(f.invert_value(t).expect("breakpoint is in the image"));
            }
        }
        bps.sort();
        bps.dedup();
        let pieces = cell_representatives(&bps)
            .map(|x| self.piece_at(&f.eval(&x)).compose(f.piece_at(&x)))
            .collect();
        Ok(LineEmbedding::from_pieces(bps, pieces))
    }
}

/// Line embedding whose image is a bounded open interval of length <= 1;
/// the raw material of morphisms into the cylinder.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundedLineEmbedding {
    base: LineEmbedding,
}

impl BoundedLineEmbedding {
    pub fn new(base: LineEmbedding) -> Result<Self, MapError> {
        let img = base.image();
        match img.length() {
            Finite(len) if len <= Rat::one() => Ok(BoundedLineEmbedding { base }),
            _ => Err(MapError::ImageTooWide(img.to_string())),
        }
    }

    pub fn base(&self) -> &LineEmbedding {
        &self.base
    }

    pub fn image(&self) -> Interval {
        self.base.image()
    }

    pub fn image_lo(&self) -> Rat {
        match self.base.image().lo() {
            Finite(r) => r.clone(),
            _ => unreachable!("bounded embeddings have finite endpoints"),
        }
    }

    /// Post-compose with an integer translation.
    pub fn translate_by_int(&self, n: &BigInt) -> BoundedLineEmbedding {
        BoundedLineEmbedding {
            base: self.base.translate(&Rat::from_integer(n.clone())),
        }
    }
}

/// A mod-Z normal pair: translate representative with `image(plus).lo` in
/// `[0, 1)`. Two pairs are equal modulo the diagonal Z-action exactly when
/// their normal forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalizedPair {
    plus: BoundedLineEmbedding,
    minus: BoundedLineEmbedding,
}

impl NormalizedPair {
    pub fn plus(&self) -> &BoundedLineEmbedding {
        &self.plus
    }

    pub fn minus(&self) -> &BoundedLineEmbedding {
        &self.minus
    }
}

/// Applies the unique translation `(f+, f-) -> (f+ + n, f- - n)` that puts
/// `image(f+).lo` into `[0, 1)`, returning it with the integer used.
pub fn normalize_pair_mod_z(
    fplus: &BoundedLineEmbedding,
    fminus: &BoundedLineEmbedding,
) -> (NormalizedPair, BigInt) {
    let n = -floor_int(&fplus.image_lo());
    let pair = NormalizedPair {
        plus: fplus.translate_by_int(&n),
        minus: fminus.translate_by_int(&(-n.clone())),
    };
    (pair, n)
}

/// Normalizes a single bounded embedding in its own mod-Z class, for the
/// circle-valued morphisms of the one-dimensional category.
pub fn normalize_single_mod_z(h: &BoundedLineEmbedding) -> (BoundedLineEmbedding, BigInt) {
    let n = -floor_int(&h.image_lo());
    (h.translate_by_int(&n), n)
}

/// Canonical embedding of the line onto a target interval: the identity for
/// the full line, otherwise a deterministic two-piece map anchored at the
/// breakpoint 0 (bounded targets hit their midpoint there).
pub fn chart_onto(target: &Interval) -> LineEmbedding {
    let two = int(2);
    match (target.lo(), target.hi()) {
        (NegInf, PosInf) => LineEmbedding::identity(),
        (Finite(lo), PosInf) => {
            // x < 0: lo + 1/(1-x); x >= 0: x + lo + 1
            let left = MobiusPiece::new(-lo.clone(), lo + int(1), int(-1), int(1))
                .expect("unit determinant");
            let right = MobiusPiece::translation(&(lo + int(1)));
            LineEmbedding::from_pieces(vec![Rat::zero()], vec![left, right])
        }
        (NegInf, Finite(hi)) => {
            // x < 0: x + hi - 1; x >= 0: hi - 1/(1+x)
            let left = MobiusPiece::translation(&(hi - int(1)));
            let right = MobiusPiece::new(hi.clone(), hi - int(1), int(1), int(1))
                .expect("unit determinant");
            LineEmbedding::from_pieces(vec![Rat::zero()], vec![left, right])
        }
        (Finite(lo), Finite(hi)) => {
            let mid = (lo + hi) / &two;
            let half = (hi - lo) / &two;
            // x < 0: mid + half*x/(1-x); x >= 0: mid + half*x/(1+x)
            let left = MobiusPiece::new(&half - &mid, mid.clone(), int(-1), int(1))
                .expect("determinant is the half-length");
            let right = MobiusPiece::new(&half + &mid, mid.clone(), int(1), int(1))
                .expect("determinant is the half-length");
            LineEmbedding::from_pieces(vec![Rat::zero()], vec![left, right])
        }
        _ => unreachable!("intervals are nonempty"),
    }
}

/// Bounded variant of `chart_onto` for targets of length <= 1.
pub fn chart_onto_bounded(target: &Interval) -> Result<BoundedLineEmbedding, MapError> {
    BoundedLineEmbedding::new(chart_onto(target))
}

/// Increasing piecewise-linear surjection through the given nodes, with
/// affine tails of the prescribed slopes. Surjective by construction.
pub fn piecewise_linear(
    nodes: &[(Rat, Rat)],
    left_slope: &Rat,
    right_slope: &Rat,
) -> Result<LineEmbedding, MapError> {
    if nodes.is_empty() {
        return Ok(LineEmbedding::identity());
    }
    if nodes
        .windows(2)
        .any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1)
    {
        return Err(MapError::UnsortedBreakpoints);
    }
    let mut breakpoints = Vec::with_capacity(nodes.len());
    let mut pieces = Vec::with_capacity(nodes.len() + 1);
    let (x0, y0) = &nodes[0];
    pieces.push(MobiusPiece::affine(left_slope, &(y0 - left_slope * x0))?);
    for w in nodes.windows(2) {
        let (ref xa, ref ya) = w[0];
        let (ref xb, ref yb) = w[1];
        let slope = (yb - ya) / (xb - xa);
        breakpoints.push(xa.clone());
        pieces.push(MobiusPiece::affine(&slope, &(ya - &slope * xa))?);
    }
    let (xn, yn) = nodes.last().expect("nonempty");
    breakpoints.push(xn.clone());
    pieces.push(MobiusPiece::affine(right_slope, &(yn - right_slope * xn))?);
    Ok(LineEmbedding::from_pieces(breakpoints, pieces))
}

/// Embedding with prescribed bounded image that is affine on `[-w, w]`.
/// Useful wherever pushforwards need a piecewise-linear window around the
/// supports being moved while the image must stay bounded.
pub fn embedding_with_plateau(target: &Interval, w: &Rat) -> Result<LineEmbedding, MapError> {
    let (Finite(lo), Finite(hi)) = (target.lo().clone(), target.hi().clone()) else {
        return Err(MapError::ImageTooWide(target.to_string()));
    };
    let quarter = (&hi - &lo) / int(4);
    let a = &lo + &quarter;
    let b = &hi - &quarter;
    let slope = (&b - &a) / (int(2) * w);
    let offset = (&a + &b) / int(2);
    let middle = MobiusPiece::affine(&slope, &offset)?;
    let at_left = middle.eval(&-w.clone());
    let at_right = middle.eval(w);
    let left = tail_piece_down(&lo, &at_left, w)?;
    let right = tail_piece_up(&hi, &at_right, w)?;
    Ok(LineEmbedding::from_pieces(
        vec![-w.clone(), w.clone()],
        vec![left, middle, right],
    ))
}

/// Piece on `(-inf, -w]` with limit `lo` at `-inf` and value `val` at `-w`:
/// `x -> lo + (val - lo) / (1 - (x + w))`, matrix `(-lo, val - lo*w; -1, 1 - w)`.
fn tail_piece_down(lo: &Rat, val: &Rat, w: &Rat) -> Result<MobiusPiece, MapError> {
    MobiusPiece::new(-lo.clone(), val - lo * w, int(-1), int(1) - w)
}

/// Piece on `[w, +inf)` with value `val` at `w` and limit `hi` at `+inf`:
/// `x -> hi - (hi - val) / (1 + (x - w))`, matrix `(hi, val - hi*w; 1, 1 - w)`.
fn tail_piece_up(hi: &Rat, val: &Rat, w: &Rat) -> Result<MobiusPiece, MapError> {
    MobiusPiece::new(hi.clone(), val - hi * w, int(1), int(1) - w)
}
