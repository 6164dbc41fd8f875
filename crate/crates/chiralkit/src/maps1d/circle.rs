//! Z-equivariant lifts of orientation-preserving circle diffeomorphisms.
//!
//! A lift stores one period of data: breakpoints in `[0, 1)` and one Möbius
//! piece per cell, the last cell wrapping to `t_0 + 1`. Continuity, positive
//! determinants, pole exclusion and the wrap condition
//! `f(t_0 + 1) = f(t_0) + 1` make the periodic extension a strictly
//! increasing bijection of the line with `f(x + 1) = f(x) + 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MapError, MobiusPiece, PartialMobiusMap};
use crate::geometry::{Finite, Interval};
use crate::rat::{floor_int, int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CircleMapLift {
    breakpoints: Vec<Rat>,
    pieces: Vec<MobiusPiece>,
}

impl CircleMapLift {
    pub fn new(breakpoints: Vec<Rat>, matrices: Vec<[Rat; 4]>) -> Result<Self, MapError> {
        if breakpoints.is_empty() {
            return Err(MapError::EmptyLift);
        }
        if matrices.len() != breakpoints.len() {
            return Err(MapError::PieceCountMismatch {
                expected: breakpoints.len(),
                got: matrices.len(),
                got_breakpoints: breakpoints.len(),
            });
        }
        if breakpoints
            .iter()
            .any(|t| *t < Rat::zero() || *t >= Rat::one())
        {
            return Err(MapError::BreakpointOutOfPeriod);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MapError::UnsortedBreakpoints);
        }
        let pieces = matrices
            .into_iter()
            .map(|[a, b, c, d]| MobiusPiece::new(a, b, c, d))
            .collect::<Result<Vec<_>, _>>()?;
        let lift = CircleMapLift {
            breakpoints,
            pieces,
        };
        lift.check_cells()?;
        Ok(lift.canonicalized())
    }

    fn check_cells(&self) -> Result<(), MapError> {
        let k = self.breakpoints.len();
        for i in 0..k {
            let lo = &self.breakpoints[i];
            let hi = if i + 1 < k {
                self.breakpoints[i + 1].clone()
            } else {
                &self.breakpoints[0] + int(1)
            };
            if let Some(pole) = self.pieces[i].pole() {
                if pole >= *lo && pole <= hi {
                    return Err(MapError::PoleInCell { index: i });
                }
            }
            if i + 1 < k {
                let left = self.pieces[i].eval(&hi);
                let right = self.pieces[i + 1].eval(&hi);
                if left != right {
                    return Err(MapError::Discontinuity {
                        at: crate::rat::format_rat(&hi),
                    });
                }
            } else {
                let wrap_left = self.pieces[i].eval(&hi);
                let wrap_right = self.pieces[0].eval(&self.breakpoints[0]) + int(1);
                if wrap_left != wrap_right {
                    return Err(MapError::WrapMismatch);
                }
            }
        }
        Ok(())
    }

    /// Drops breakpoints at which the periodic extension does not actually
    /// change matrix; a pure translation normalizes to a single cell at 0.
    fn canonicalized(mut self) -> Self {
        // interior breakpoints first
        let mut i = 1;
        while i < self.breakpoints.len() {
            if self.pieces[i - 1] == self.pieces[i] {
                self.breakpoints.remove(i);
                self.pieces.remove(i);
            } else {
                i += 1;
            }
        }
        // the anchor breakpoint: compare the last piece, pulled back one
        // period, against the first piece
        while self.breakpoints.len() > 1 {
            let last = self
                .pieces
                .last()
                .expect("nonempty")
                .shift_conjugate(&BigInt::from(-1));
            if last == self.pieces[0] {
                self.breakpoints.remove(0);
                self.pieces.remove(0);
            } else {
                break;
            }
        }
        if self.breakpoints.len() == 1 {
            let m = &self.pieces[0];
            if *m == m.shift_conjugate(&BigInt::one()) {
                // commutes with unit translation: a translation piece
                self.breakpoints[0] = Rat::zero();
            }
        }
        self
    }

    pub(crate) fn from_pieces(breakpoints: Vec<Rat>, pieces: Vec<MobiusPiece>) -> Self {
        let lift = CircleMapLift {
            breakpoints,
            pieces,
        };
        debug_assert!(
            lift.check_cells().is_ok(),
            "internal lift construction is valid"
        );
        lift.canonicalized()
    }

    pub fn identity() -> Self {
        CircleMapLift {
            breakpoints: vec![Rat::zero()],
            pieces: vec![MobiusPiece::identity()],
        }
    }

    /// Rigid rotation, lifted to the translation by `r`.
    pub fn rotation(r: &Rat) -> Self {
        CircleMapLift {
            breakpoints: vec![Rat::zero()],
            pieces: vec![MobiusPiece::translation(r)],
        }
    }

    /// Piecewise-linear lift through the nodes `(u_i, v_i)`: `u` strictly
    /// increasing in `[0, 1)`, `v` strictly increasing with `v_last < v_0 + 1`.
    pub fn piecewise_linear(nodes: &[(Rat, Rat)]) -> Result<Self, MapError> {
        if nodes.is_empty() {
            return Err(MapError::EmptyLift);
        }
        let mut breakpoints = Vec::with_capacity(nodes.len());
        let mut pieces = Vec::with_capacity(nodes.len());
        for (i, (u, v)) in nodes.iter().enumerate() {
            let (u2, v2) = if i + 1 < nodes.len() {
                (nodes[i + 1].0.clone(), nodes[i + 1].1.clone())
            } else {
                (&nodes[0].0 + int(1), &nodes[0].1 + int(1))
            };
            if u2 <= *u || v2 <= *v {
                return Err(MapError::UnsortedBreakpoints);
            }
            let slope = (&v2 - v) / (&u2 - u);
            let offset = v - &slope * u;
            breakpoints.push(u.clone());
            pieces.push(MobiusPiece::affine(&slope, &offset)?);
        }
        let lift = CircleMapLift {
            breakpoints,
            pieces,
        };
        lift.check_cells()?;
        if lift
            .breakpoints
            .iter()
            .any(|t| *t < Rat::zero() || *t >= Rat::one())
        {
            return Err(MapError::BreakpointOutOfPeriod);
        }
        Ok(lift.canonicalized())
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[MobiusPiece] {
        &self.pieces
    }

    /// Anchor of the stored period, `t_0`.
    fn anchor(&self) -> &Rat {
        &self.breakpoints[0]
    }

    /// Index of the stored cell containing `y` in `[t_0, t_0 + 1)`.
    fn stored_cell(&self, y: &Rat) -> usize {
        self.breakpoints.partition_point(|b| b <= y) - 1
    }

    /// Evaluates the periodic extension at any rational.
    pub fn eval(&self, x: &Rat) -> Rat {
        let n = floor_int(&(x - self.anchor()));
        let shift = Rat::from_integer(n);
        let y = x - &shift;
        self.pieces[self.stored_cell(&y)].eval(&y) + shift
    }

    /// Canonical matrix of the periodic extension on the cell containing `x`.
    pub fn piece_extended_at(&self, x: &Rat) -> MobiusPiece {
        let n = floor_int(&(x - self.anchor()));
        let y = x - Rat::from_integer(n.clone());
        self.pieces[self.stored_cell(&y)].shift_conjugate(&n)
    }

    /// All breakpoints of the periodic extension inside a bounded closed
    /// range, sorted.
    pub fn extended_breakpoints_in(&self, lo: &Rat, hi: &Rat) -> Vec<Rat> {
        let mut out = Vec::new();
        let n_lo = floor_int(&(lo - int(1)));
        let n_hi = floor_int(&(hi + int(1)));
        let mut n = n_lo;
        while n <= n_hi {
            let shift = Rat::from_integer(n.clone());
            for t in &self.breakpoints {
                let s = t + &shift;
                if s >= *lo && s <= *hi {
                    out.push(s);
                }
            }
            n += 1;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Restriction of the periodic extension to a bounded open interval.
    pub fn restrict(&self, iv: &Interval) -> Result<PartialMobiusMap, MapError> {
        let (Finite(lo), Finite(hi)) = (iv.lo().clone(), iv.hi().clone()) else {
            return Err(MapError::OutsideDomain(iv.to_string()));
        };
        let bps: Vec<Rat> = self
            .extended_breakpoints_in(&lo, &hi)
            .into_iter()
            .filter(|t| *t > lo && *t < hi)
            .collect();
        let mut reps = Vec::with_capacity(bps.len() + 1);
        for i in 0..=bps.len() {
            let a = if i == 0 { &lo } else { &bps[i - 1] };
            let b = if i == bps.len() { &hi } else { &bps[i] };
            reps.push((a + b) / int(2));
        }
        let pieces = reps.iter().map(|x| self.piece_extended_at(x)).collect();
        Ok(PartialMobiusMap::from_parts(iv.clone(), bps, pieces))
    }

    /// Inverse lift: the periodic extension of the inverse diffeomorphism.
    pub fn invert(&self) -> CircleMapLift {
        let k = self.breakpoints.len();
        let mut bps: Vec<Rat> = (0..k)
            .map(|i| {
                let v = self.pieces[i].eval(&self.breakpoints[i]);
                &v - Rat::from_integer(floor_int(&v))
            })
            .collect();
        bps.sort();
        bps.dedup();
        let mut reps = Vec::with_capacity(bps.len());
        for i in 0..bps.len() {
            let a = &bps[i];
            let b = if i + 1 < bps.len() {
                bps[i + 1].clone()
            } else {
                &bps[0] + int(1)
            };
            reps.push((a + &b) / int(2));
        }
        let pieces = reps.iter().map(|y| self.inverse_piece_at(y)).collect();
        CircleMapLift::from_pieces(bps, pieces)
    }

    /// Matrix of the inverse extension on the cell containing `y`.
    fn inverse_piece_at(&self, y: &Rat) -> MobiusPiece {
        let base = self.pieces[0].eval(self.anchor());
        let n = floor_int(&(y - &base));
        let y0 = y - Rat::from_integer(n.clone());
        // image anchors g(t_i) are increasing within the period
        let values: Vec<Rat> = self
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, t)| self.pieces[i].eval(t))
            .collect();
        let j = values.partition_point(|v| v <= &y0) - 1;
        self.pieces[j].inverse().shift_conjugate(&n)
    }

    /// Value of the inverse extension.
    pub fn eval_inverse(&self, y: &Rat) -> Rat {
        self.inverse_piece_at(y).eval(y)
    }

    /// Composite lift `g2 ∘ g1`.
    pub fn compose(g2: &CircleMapLift, g1: &CircleMapLift) -> CircleMapLift {
        let mut bps: Vec<Rat> = g1.breakpoints.clone();
        for t in &g2.breakpoints {
            let x = g1.eval_inverse(t);
            bps.push(&x - Rat::from_integer(floor_int(&x)));
        }
        bps.sort();
        bps.dedup();
        let mut reps = Vec::with_capacity(bps.len());
        for i in 0..bps.len() {
            let a = &bps[i];
            let b = if i + 1 < bps.len() {
                bps[i + 1].clone()
            } else {
                &bps[0] + int(1)
            };
            reps.push((a + &b) / int(2));
        }
        let pieces = reps
            .iter()
            .map(|x| {
                g2.piece_extended_at(&g1.eval(x))
                    .compose(&g1.piece_extended_at(x))
            })
            .collect();
        CircleMapLift::from_pieces(bps, pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn rotations_compose_by_adding_angles() {
        let q = CircleMapLift::rotation(&rat(1, 4));
        let h = CircleMapLift::rotation(&rat(1, 2));
        assert_eq!(
            CircleMapLift::compose(&q, &h),
            CircleMapLift::rotation(&rat(3, 4))
        );
        assert_eq!(CircleMapLift::compose(&q, &CircleMapLift::identity()), q);
    }

    #[test]
    fn pl_lift_is_equivariant_and_composes_equivariantly() {
        let g1 = CircleMapLift::piecewise_linear(&[(rat(0, 1), rat(1, 8)), (rat(1, 2), rat(3, 4))])
            .unwrap();
        let g2 = CircleMapLift::piecewise_linear(&[
            (rat(0, 1), rat(0, 1)),
            (rat(1, 4), rat(1, 2)),
            (rat(3, 4), rat(7, 8)),
        ])
        .unwrap();
        let comp = CircleMapLift::compose(&g2, &g1);
        for k in -50..50i64 {
            let x = rat(k, 17);
            assert_eq!(comp.eval(&x), g2.eval(&g1.eval(&x)), "pointwise at {x}");
            assert_eq!(
                comp.eval(&(&x + int(1))),
                comp.eval(&x) + int(1),
                "equivariance at {x}"
            );
        }
    }

    #[test]
    fn inverse_round_trips_pointwise() {
        let g = CircleMapLift::piecewise_linear(&[
            (rat(0, 1), rat(1, 3)),
            (rat(1, 3), rat(1, 2)),
            (rat(2, 3), rat(9, 10)),
        ])
        .unwrap();
        let ginv = g.invert();
        for k in -40..40i64 {
            let x = rat(k, 13);
            assert_eq!(ginv.eval(&g.eval(&x)), x);
            assert_eq!(g.eval(&ginv.eval(&x)), x);
        }
        assert_eq!(CircleMapLift::compose(&ginv, &g), CircleMapLift::identity());
    }

    #[test]
    fn wrap_violations_are_rejected() {
        // two affine cells that meet continuously at 1/2 but break the wrap
        let err = CircleMapLift::new(
            vec![rat(0, 1), rat(1, 2)],
            vec![
                [int(1), int(0), int(0), int(1)],
                [int(2), rat(-1, 2), int(0), int(1)],
            ],
        );
        assert!(matches!(err, Err(MapError::WrapMismatch)));
    }

    #[test]
    fn rotation_translates_lift_values() {
        let r = CircleMapLift::rotation(&rat(1, 4));
        assert_eq!(r.eval(&rat(7, 8)), rat(9, 8));
        assert_eq!(r.eval(&rat(-3, 2)), rat(-5, 4));
    }
}
