//! Seeded random generators for maps, morphisms and regions. The scenario
//! runner's `sample = N` directives and the law-suite tests draw from here,
//! so everything is deterministic in the seed.
//!
//! Plane-sourced morphisms are affine on the window `[-1, 1]`; observable
//! generators keep their supports inside that window, which is what lets
//! pushforwards stay inside the piecewise-polynomial class.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ConeUnion, DoubleCone, Interval};
use crate::maps1d::{
    self, chart_onto, compose_line, embedding_with_plateau, BoundedLineEmbedding, CircleMapLift,
    LineEmbedding,
};
use crate::rat::{int, rat, Rat};
use crate::skelcat::{orthogonal2, ChiralSign, SkelMorphism2, SkelObject2};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in `[lo, hi]` with denominator up to `den`.
pub fn rat_between(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rat {
    let d = rng.gen_range(1..=den);
    rat(rng.gen_range(lo * d..=hi * d), d)
}

/// Bounded open interval with endpoints in `[-span, span]`.
pub fn bounded_interval(rng: &mut ChaCha8Rng, span: i64) -> Interval {
    loop {
        let a = rat_between(rng, -span, span, 4);
        let b = rat_between(rng, -span, span, 4);
        if a != b {
            return Interval::bounded(a.clone().min(b.clone()), a.max(b)).expect("a != b");
        }
    }
}

/// Bounded open interval of length <= 1 with lo in `[-span, span]`.
pub fn short_interval(rng: &mut ChaCha8Rng, span: i64) -> Interval {
    let lo = rat_between(rng, -span, span, 4);
    let len = rat(rng.gen_range(1..=8), 8);
    Interval::bounded(lo.clone(), lo + len).expect("positive length")
}

/// Random double cone with bounded factors.
pub fn double_cone(rng: &mut ChaCha8Rng, span: i64) -> DoubleCone {
    DoubleCone::new(bounded_interval(rng, span), bounded_interval(rng, span))
}

/// Cone union made of 1-3 cones overlapping in both projections.
pub fn overlapping_union(rng: &mut ChaCha8Rng) -> ConeUnion {
    let base = double_cone(rng, 2);
    let mut cones = vec![base.clone()];
    for _ in 0..rng.gen_range(0..3) {
        let prev = cones.last().expect("nonempty").clone();
        let grow = rat(rng.gen_range(1..4), 4);
        // center within half the growth of the previous midpoint, so the new
        // cone always straddles it and both projections stay connected
        let shift = &grow * rat(rng.gen_range(0..3), 8);
        let stretch = |iv: &Interval| {
            let lo = iv.lo().finite().expect("bounded").clone();
            let hi = iv.hi().finite().expect("bounded").clone();
            let mid = (&lo + &hi) / int(2);
            Interval::bounded(mid.clone() + &shift - &grow, mid + &shift + &grow)
                .expect("positive length")
        };
        cones.push(DoubleCone::new(stretch(&prev.iplus), stretch(&prev.iminus)));
    }
    ConeUnion::new(cones).expect("nonempty list")
}

/// General line embedding: composite of affine maps, translations and
/// charts. Not necessarily surjective or piecewise linear.
pub fn line_embedding(rng: &mut ChaCha8Rng) -> LineEmbedding {
    let mut f = LineEmbedding::identity();
    for _ in 0..rng.gen_range(1..=3) {
        let g = match rng.gen_range(0..4) {
            0 => {
                let slope = rat(rng.gen_range(1..5), rng.gen_range(1..3));
                let offset = rat_between(rng, -2, 2, 3);
                LineEmbedding::affine(&slope, &offset).expect("positive slope")
            }
            1 => LineEmbedding::translation(&rat_between(rng, -3, 3, 4)),
            2 => chart_onto(&bounded_interval(rng, 3)),
            _ => {
                let lo = rat_between(rng, -3, 3, 2);
                chart_onto(
                    &Interval::new(crate::geometry::Finite(lo), crate::geometry::PosInf)
                        .expect("half line"),
                )
            }
        };
        f = compose_line(&g, &f);
    }
    f
}

/// Increasing piecewise-linear surjection, affine on `[-1, 1]` with slope
/// at most 2 and offset at most 1, so images of the generator window stay
/// inside `[-3, 3]`. These are the Cauchy endomorphisms used by time-slice
/// and pushforward tests.
pub fn pl_surjection(rng: &mut ChaCha8Rng) -> LineEmbedding {
    let s0 = rat(rng.gen_range(1..=4), 2);
    let t = rat_between(rng, -1, 1, 4);
    let x1 = int(rng.gen_range(2..4));
    let y1 = &s0 * &x1 + &t;
    let dy = rat(rng.gen_range(1..4), 1);
    let nodes = vec![
        (-x1.clone(), &s0 * -&x1 + &t),
        (x1.clone(), y1.clone()),
        (&x1 + int(1), y1 + dy),
    ];
    let right = rat(rng.gen_range(1..3), 1);
    maps1d::piecewise_linear(&nodes, &s0, &right).expect("increasing nodes")
}

/// Width of the affine window of sampled plateau embeddings. Composites of
/// sampled morphisms keep the moved generator supports inside `[-8, 8]`, so
/// this window keeps every pushforward piecewise linear.
pub const PLATEAU_WINDOW: i64 = 16;

/// Bounded embedding onto the target that is affine on the plateau window.
pub fn plateau_onto(target: &Interval) -> BoundedLineEmbedding {
    BoundedLineEmbedding::new(
        embedding_with_plateau(target, &int(PLATEAU_WINDOW)).expect("bounded target"),
    )
    .expect("target length <= 1")
}

/// Circle automorphism lift: a rotation or a piecewise-linear lift.
pub fn circle_lift(rng: &mut ChaCha8Rng) -> CircleMapLift {
    if rng.gen_bool(0.5) {
        CircleMapLift::rotation(&rat(rng.gen_range(-8..8), 8))
    } else {
        let u1 = rat(rng.gen_range(1..4), 8);
        let u2 = &u1 + rat(rng.gen_range(1..4), 8);
        let v0 = rat(rng.gen_range(-4..4), 8);
        let v1 = &v0 + rat(rng.gen_range(1..3), 8);
        let v2 = &v1 + rat(rng.gen_range(1..3), 8);
        CircleMapLift::piecewise_linear(&[(int(0), v0), (u1, v1), (u2, v2)])
            .expect("increasing nodes within bounds")
    }
}

/// Cheap plane endomorphism: a pair of affine maps. Used where many
/// composables are needed and piecewise structure is irrelevant.
pub fn affine_m_to_m(rng: &mut ChaCha8Rng) -> SkelMorphism2 {
    let aff = |rng: &mut ChaCha8Rng| {
        let slope = rat(rng.gen_range(1..4), rng.gen_range(1..3));
        let offset = rat_between(rng, -2, 2, 4);
        LineEmbedding::affine(&slope, &offset).expect("positive slope")
    };
    let plus = aff(rng);
    let minus = aff(rng);
    SkelMorphism2::m_to_m(plus, minus)
}

/// Plane endomorphism of the skeletal category, affine on the generator
/// window. With `surjective` both factors are increasing PL surjections.
pub fn m_to_m(rng: &mut ChaCha8Rng, surjective: bool) -> SkelMorphism2 {
    let plus_surj = surjective || rng.gen_bool(0.5);
    let minus_surj = surjective || rng.gen_bool(0.5);
    let pick = |surj: bool, rng: &mut ChaCha8Rng| {
        if surj {
            pl_surjection(rng)
        } else {
            let target = short_interval(rng, 2);
            plateau_onto(&target).base().clone()
        }
    };
    let plus = pick(plus_surj, rng);
    let minus = pick(minus_surj, rng);
    SkelMorphism2::m_to_m(plus, minus)
}

/// Plane-to-cylinder morphism with plateau factors.
pub fn m_to_cyl(rng: &mut ChaCha8Rng) -> SkelMorphism2 {
    let tp = short_interval(rng, 2);
    let tm = short_interval(rng, 2);
    SkelMorphism2::m_to_cyl(plateau_onto(&tp), plateau_onto(&tm))
}

/// Cylinder automorphism.
pub fn cyl_auto(rng: &mut ChaCha8Rng) -> SkelMorphism2 {
    let plus = circle_lift(rng);
    let minus = circle_lift(rng);
    SkelMorphism2::cyl_to_cyl(plus, minus)
}

/// Any morphism of the two-dimensional skeletal category.
pub fn skel2(rng: &mut ChaCha8Rng) -> SkelMorphism2 {
    match rng.gen_range(0..3) {
        0 => {
            let surj = rng.gen_bool(0.4);
            m_to_m(rng, surj)
        }
        1 => m_to_cyl(rng),
        _ => cyl_auto(rng),
    }
}

/// Composable pair `(outer, inner)` in the two-dimensional category.
pub fn composable_pair2(rng: &mut ChaCha8Rng) -> (SkelMorphism2, SkelMorphism2) {
    match rng.gen_range(0..4) {
        0 => {
            let (s1, s2) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
            (m_to_m(rng, s1), m_to_m(rng, s2))
        }
        1 => {
            let s = rng.gen_bool(0.5);
            (m_to_cyl(rng), m_to_m(rng, s))
        }
        2 => (cyl_auto(rng), m_to_cyl(rng)),
        _ => (cyl_auto(rng), cyl_auto(rng)),
    }
}

/// Spacelike-separated pair of plane endomorphisms: the second image cone
/// sits where both wedge tests fail.
pub fn orthogonal_mtom_pair(rng: &mut ChaCha8Rng) -> (SkelMorphism2, SkelMorphism2) {
    let p1 = short_interval(rng, 2);
    let m1 = short_interval(rng, 2);
    let gap = rat(rng.gen_range(1..4), 4);
    let len2p = rat(rng.gen_range(1..=4), 8);
    let len2m = rat(rng.gen_range(1..=4), 8);
    let right_of = |iv: &Interval, len: &Rat| {
        let hi = iv.hi().finite().expect("bounded").clone();
        Interval::bounded(&hi + &gap, &hi + &gap + len).expect("positive length")
    };
    let left_of = |iv: &Interval, len: &Rat| {
        let lo = iv.lo().finite().expect("bounded").clone();
        Interval::bounded(&lo - &gap - len, &lo - &gap).expect("positive length")
    };
    let (p2, m2) = if rng.gen_bool(0.5) {
        (right_of(&p1, &len2p), left_of(&m1, &len2m))
    } else {
        (left_of(&p1, &len2p), right_of(&m1, &len2m))
    };
    let mk = |ip: &Interval, im: &Interval| {
        SkelMorphism2::m_to_m(
            embedding_with_plateau(ip, &int(PLATEAU_WINDOW)).expect("bounded"),
            embedding_with_plateau(im, &int(PLATEAU_WINDOW)).expect("bounded"),
        )
    };
    let pair = (mk(&p1, &m1), mk(&p2, &m2));
    debug_assert_eq!(orthogonal2(&pair.0, &pair.1), Ok(true));
    pair
}

/// Orthogonal pair of plane-to-cylinder morphisms, built from the
/// half-period spacelike pattern: the second image cone sits half a period
/// away in the plus factor and half a period the other way in the minus
/// factor. With lengths at most 3/16 and jitters at most 3/32 both integer
/// windows of the cylinder relation stay strictly inside `(-1, 0)`, so no
/// deck translate interacts.
pub fn orthogonal_mtocyl_pair(rng: &mut ChaCha8Rng) -> (SkelMorphism2, SkelMorphism2) {
    let len = |rng: &mut ChaCha8Rng| rat(rng.gen_range(1..=3), 16);
    let a0 = rat_between(rng, -1, 1, 4);
    let b0 = rat_between(rng, -1, 1, 4);
    let (l1, l2, l3, l4) = (len(rng), len(rng), len(rng), len(rng));
    let j1 = rat(rng.gen_range(0..=3), 32);
    let j2 = rat(rng.gen_range(0..=3), 32);
    let half = rat(1, 2);
    let plus1 = Interval::bounded(a0.clone(), &a0 + &l1).expect("positive length");
    let minus1 = Interval::bounded(b0.clone(), &b0 + &l2).expect("positive length");
    let plus2_lo = &a0 + &half + &j1;
    let plus2 = Interval::bounded(plus2_lo.clone(), &plus2_lo + &l3).expect("positive length");
    let minus2_hi = &b0 - &half - &j2;
    let minus2 = Interval::bounded(&minus2_hi - &l4, minus2_hi).expect("positive length");
    let (m1, m2) = if rng.gen_bool(0.5) {
        (
            SkelMorphism2::m_to_cyl(plateau_onto(&plus1), plateau_onto(&minus1)),
            SkelMorphism2::m_to_cyl(plateau_onto(&plus2), plateau_onto(&minus2)),
        )
    } else {
        (
            SkelMorphism2::m_to_cyl(plateau_onto(&plus2), plateau_onto(&minus2)),
            SkelMorphism2::m_to_cyl(plateau_onto(&plus1), plateau_onto(&minus1)),
        )
    };
    debug_assert_eq!(orthogonal2(&m1, &m2), Ok(true));
    (m1, m2)
}

/// A pair orthogonal in the skeletal sense, of either kind.
pub fn orthogonal_pair2(rng: &mut ChaCha8Rng) -> (SkelMorphism2, SkelMorphism2) {
    if rng.gen_bool(0.5) {
        orthogonal_mtom_pair(rng)
    } else {
        orthogonal_mtocyl_pair(rng)
    }
}

/// Chart-backed orthogonal pair: same image-cone patterns as
/// `orthogonal_pair2` but with two-piece charts instead of plateau
/// embeddings. Cheap enough for high-volume relation checks; not suitable
/// for pushing observables.
pub fn orthogonal_pair2_light(rng: &mut ChaCha8Rng) -> (SkelMorphism2, SkelMorphism2) {
    use crate::maps1d::chart_onto_bounded;
    let chart = |iv: &Interval| chart_onto_bounded(iv).expect("short interval");
    if rng.gen_bool(0.5) {
        let p1 = short_interval(rng, 2);
        let m1 = short_interval(rng, 2);
        let gap = rat(rng.gen_range(1..4), 4);
        let len2p = rat(rng.gen_range(1..=4), 8);
        let len2m = rat(rng.gen_range(1..=4), 8);
        let right_of = |iv: &Interval, len: &Rat| {
            let hi = iv.hi().finite().expect("bounded").clone();
            Interval::bounded(&hi + &gap, &hi + &gap + len).expect("positive length")
        };
        let left_of = |iv: &Interval, len: &Rat| {
            let lo = iv.lo().finite().expect("bounded").clone();
            Interval::bounded(&lo - &gap - len, &lo - &gap).expect("positive length")
        };
        let (p2, m2) = if rng.gen_bool(0.5) {
            (right_of(&p1, &len2p), left_of(&m1, &len2m))
        } else {
            (left_of(&p1, &len2p), right_of(&m1, &len2m))
        };
        let pair = (
            SkelMorphism2::m_to_m(chart(&p1).base().clone(), chart(&m1).base().clone()),
            SkelMorphism2::m_to_m(chart(&p2).base().clone(), chart(&m2).base().clone()),
        );
        debug_assert_eq!(orthogonal2(&pair.0, &pair.1), Ok(true));
        pair
    } else {
        let len = |rng: &mut ChaCha8Rng| rat(rng.gen_range(1..=3), 16);
        let a0 = rat_between(rng, -1, 1, 4);
        let b0 = rat_between(rng, -1, 1, 4);
        let (l1, l2, l3, l4) = (len(rng), len(rng), len(rng), len(rng));
        let j1 = rat(rng.gen_range(0..=3), 32);
        let j2 = rat(rng.gen_range(0..=3), 32);
        let half = rat(1, 2);
        let plus1 = Interval::bounded(a0.clone(), &a0 + &l1).expect("positive length");
        let minus1 = Interval::bounded(b0.clone(), &b0 + &l2).expect("positive length");
        let plus2_lo = &a0 + &half + &j1;
        let plus2 = Interval::bounded(plus2_lo.clone(), &plus2_lo + &l3).expect("positive length");
        let minus2_hi = &b0 - &half - &j2;
        let minus2 = Interval::bounded(&minus2_hi - &l4, minus2_hi).expect("positive length");
        let pair = (
            SkelMorphism2::m_to_cyl(chart(&plus1), chart(&minus1)),
            SkelMorphism2::m_to_cyl(chart(&plus2), chart(&minus2)),
        );
        debug_assert_eq!(orthogonal2(&pair.0, &pair.1), Ok(true));
        pair
    }
}

/// Cauchy morphism at either object.
pub fn cauchy_morphism2(rng: &mut ChaCha8Rng) -> SkelMorphism2 {
    if rng.gen_bool(0.5) {
        let plus = pl_surjection(rng);
        let minus = pl_surjection(rng);
        SkelMorphism2::m_to_m(plus, minus)
    } else {
        cyl_auto(rng)
    }
}

/// Witness morphisms at one object acting only on the chirality opposite
/// to `sign`. The first two witnesses are fixed discriminators: a large
/// translation and a half-turn, which cannot fix a generator whose moving
/// slot has small support or sub-half-period features.
pub fn witnesses_for_object(
    sign: ChiralSign,
    object: SkelObject2,
    count: usize,
    seed: u64,
) -> Vec<SkelMorphism2> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    match object {
        SkelObject2::Minkowski => {
            out.push(witness_plane(sign, &LineEmbedding::translation(&int(3))));
            out.push(witness_plane(
                sign,
                &LineEmbedding::translation(&rat(-7, 2)),
            ));
            while out.len() < count {
                let k = if rng.gen_bool(0.5) {
                    LineEmbedding::translation(&rat_between(&mut rng, -4, 4, 4))
                } else {
                    pl_surjection(&mut rng)
                };
                out.push(witness_plane(sign, &k));
            }
        }
        SkelObject2::Cylinder => {
            out.push(witness_cylinder(sign, &CircleMapLift::rotation(&rat(1, 2))));
            out.push(witness_cylinder(sign, &CircleMapLift::rotation(&rat(1, 3))));
            while out.len() < count {
                let g = circle_lift(&mut rng);
                out.push(witness_cylinder(sign, &g));
            }
        }
    }
    out.truncate(count);
    out
}

fn witness_plane(sign: ChiralSign, k: &LineEmbedding) -> SkelMorphism2 {
    match sign {
        ChiralSign::Plus => SkelMorphism2::m_to_m(LineEmbedding::identity(), k.clone()),
        ChiralSign::Minus => SkelMorphism2::m_to_m(k.clone(), LineEmbedding::identity()),
    }
}

fn witness_cylinder(sign: ChiralSign, g: &CircleMapLift) -> SkelMorphism2 {
    match sign {
        ChiralSign::Plus => SkelMorphism2::cyl_to_cyl(CircleMapLift::identity(), g.clone()),
        ChiralSign::Minus => SkelMorphism2::cyl_to_cyl(g.clone(), CircleMapLift::identity()),
    }
}
