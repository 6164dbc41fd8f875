//! The span-of-spans diagrams that connect two plane-to-cylinder morphisms
//! sharing a plus factor, and chains of them when the minus images do not
//! meet directly.

use num_traits::Signed;
use rand::Rng;

use crate::geometry::{Finite, Interval};
use crate::maps1d::{chart_onto, compose_line, BoundedLineEmbedding, LineEmbedding};
use crate::rat::{int, Rat};

use super::{compose2, cyl_points_equal, SkelError, SkelMorphism2};

/// One zig-zag: two outer objects `[h, f1]`, `[h, f2]`, the co-restrictions
/// onto the shared window, and the bridge between them. All seven morphisms
/// are kept; the five constructed ones are the legs, the two middle objects
/// and the bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigZag {
    pub outer_left: SkelMorphism2,
    pub leg_left: SkelMorphism2,
    pub mid_left: SkelMorphism2,
    pub bridge: SkelMorphism2,
    pub mid_right: SkelMorphism2,
    pub leg_right: SkelMorphism2,
    pub outer_right: SkelMorphism2,
}

impl ZigZag {
    /// The five constructed morphisms in diagram order.
    pub fn morphisms(&self) -> [&SkelMorphism2; 5] {
        [
            &self.leg_left,
            &self.mid_left,
            &self.bridge,
            &self.mid_right,
            &self.leg_right,
        ]
    }

    /// Structural commutativity: the three cells as equalities of canonical
    /// forms.
    pub fn cells_commute_structurally(&self) -> Result<bool, SkelError> {
        let left = compose2(&self.outer_left, &self.leg_left)?;
        let square = compose2(&self.mid_right, &self.bridge)?;
        let right = compose2(&self.outer_right, &self.leg_right)?;
        Ok(left == self.mid_left && square == self.mid_left && right == self.mid_right)
    }

    /// Pointwise commutativity of every cell, and of the two composite
    /// outer paths, on the given sample points.
    pub fn cells_commute_at(&self, samples: &[(Rat, Rat)]) -> bool {
        samples.iter().all(|p| {
            let via_left = self.outer_left.apply_point(&self.leg_left.apply_point(p));
            let mid = self.mid_left.apply_point(p);
            let via_bridge = self.mid_right.apply_point(&self.bridge.apply_point(p));
            let right_mid = self.mid_right.apply_point(p);
            let via_right = self.outer_right.apply_point(&self.leg_right.apply_point(p));
            let across = self
                .outer_right
                .apply_point(&self.leg_right.apply_point(&self.bridge.apply_point(p)));
            cyl_points_equal(&via_left, &mid)
                && cyl_points_equal(&via_bridge, &mid)
                && cyl_points_equal(&via_right, &right_mid)
                && cyl_points_equal(&across, &mid)
                && cyl_points_equal(&via_left, &via_bridge)
        })
    }

    /// Pointwise commutativity on seeded random rational samples.
    pub fn cells_commute_sampled(&self, count: usize, rng: &mut impl Rng) -> bool {
        let samples: Vec<(Rat, Rat)> = (0..count)
            .map(|_| {
                (
                    crate::rat::rat(rng.gen_range(-40..40), rng.gen_range(1..8)),
                    crate::rat::rat(rng.gen_range(-40..40), rng.gen_range(1..8)),
                )
            })
            .collect();
        self.cells_commute_at(&samples)
    }
}

/// Connects `[h, f1]` and `[h, f2]` whose minus images intersect. The legs
/// chart onto the preimages of the shared window; the bridge is the exact
/// Möbius composite `(f2 k')⁻¹ (f1 k)`.
pub fn build_zigzag(
    h: &BoundedLineEmbedding,
    f1: &BoundedLineEmbedding,
    f2: &BoundedLineEmbedding,
) -> Result<ZigZag, SkelError> {
    let window = f1
        .image()
        .intersect(&f2.image())
        .ok_or(SkelError::EmptyIntersection)?;
    let k = chart_onto(&f1.base().preimage_interval(&window)?);
    let kp = chart_onto(&f2.base().preimage_interval(&window)?);
    let f1k = compose_line(f1.base(), &k);
    let f2kp = compose_line(f2.base(), &kp);
    let bridge_minus = f2kp.invert_on_image().compose_after(&f1k)?;
    let id = LineEmbedding::identity();
    let bounded = |f: LineEmbedding| {
        BoundedLineEmbedding::new(f).expect("windows of bounded images stay bounded")
    };
    Ok(ZigZag {
        outer_left: SkelMorphism2::m_to_cyl(h.clone(), f1.clone()),
        leg_left: SkelMorphism2::m_to_m(id.clone(), k),
        mid_left: SkelMorphism2::m_to_cyl(h.clone(), bounded(f1k)),
        bridge: SkelMorphism2::m_to_m(id.clone(), bridge_minus),
        mid_right: SkelMorphism2::m_to_cyl(h.clone(), bounded(f2kp)),
        leg_right: SkelMorphism2::m_to_m(id, kp),
        outer_right: SkelMorphism2::m_to_cyl(h.clone(), f2.clone()),
    })
}

/// Connects arbitrary `[h, f1]`, `[h, f2]` through a finite chain of
/// zig-zags, stepping the minus image by half its length until it overlaps
/// the far image. Returns one zig-zag when the images already intersect.
pub fn connect_chain(
    h: &BoundedLineEmbedding,
    f1: &BoundedLineEmbedding,
    f2: &BoundedLineEmbedding,
) -> Result<Vec<ZigZag>, SkelError> {
    if f1.image().intersect(&f2.image()).is_some() {
        return Ok(vec![build_zigzag(h, f1, f2)?]);
    }
    let len = interval_length(&f1.image());
    let step = if f2.image().lo() >= f1.image().hi() {
        &len / int(2)
    } else {
        -(&len / int(2))
    };
    let mut links = Vec::new();
    let mut current = f1.clone();
    loop {
        let next = BoundedLineEmbedding::new(current.base().translate(&step))
            .expect("translation preserves image length");
        links.push(build_zigzag(h, &current, &next)?);
        if next.image().intersect(&f2.image()).is_some() {
            links.push(build_zigzag(h, &next, f2)?);
            return Ok(links);
        }
        current = next;
    }
}

/// Constructive bound on the chain length produced by `connect_chain` for
/// non-overlapping inputs: steps of half the image length across the gap,
/// plus the two end links.
pub fn chain_length_bound(f1: &BoundedLineEmbedding, f2: &BoundedLineEmbedding) -> usize {
    let len = interval_length(&f1.image());
    let gap = gap_between(&f1.image(), &f2.image());
    let steps = (&gap * int(2) / &len).ceil().to_integer();
    let steps: usize = steps.max(0.into()).try_into().unwrap_or(usize::MAX);
    steps + 2
}

fn interval_length(iv: &Interval) -> Rat {
    match (iv.lo(), iv.hi()) {
        (Finite(a), Finite(b)) => b - a,
        _ => unreachable!("bounded embeddings have finite endpoints"),
    }
}

fn gap_between(a: &Interval, b: &Interval) -> Rat {
    let (Finite(alo), Finite(ahi)) = (a.lo(), a.hi()) else {
        unreachable!()
    };
    let (Finite(blo), Finite(bhi)) = (b.lo(), b.hi()) else {
        unreachable!()
    };
    if blo >= ahi {
        blo - ahi
    } else if alo >= bhi {
        alo - bhi
    } else {
        Rat::from_integer(0.into())
    }
    .abs()
}
