//! The development functor on the cone-union fragment: hulls of unions,
//! the induced morphism between developments, Cauchy detection and the
//! randomized causal-convexity probe.

use chiralkit::geometry::{
    cauchy_development, is_causally_convex_sampled, ConeUnion, ConvexityVerdict, DoubleCone,
    Interval,
};
use chiralkit::maps1d::LineEmbedding;
use chiralkit::rat::{int, rat};
use chiralkit::skelcat::{d_localize, is_cauchy2, SkelMorphism2, SkelObject2};

fn cone(pl: i64, ph: i64, ml: i64, mh: i64) -> DoubleCone {
    DoubleCone::new(
        Interval::bounded(int(pl), int(ph)).unwrap(),
        Interval::bounded(int(ml), int(mh)).unwrap(),
    )
}

fn main() {
    let overlap = ConeUnion::new(vec![
        cone(0, 1, 0, 1),
        DoubleCone::new(
            Interval::bounded(rat(1, 2), int(2)).unwrap(),
            Interval::bounded(rat(1, 2), int(2)).unwrap(),
        ),
    ])
    .unwrap();
    println!("region: two overlapping cones");
    println!("  D(region) = {}", cauchy_development(&overlap).unwrap());

    let gapped = ConeUnion::new(vec![cone(0, 1, 0, 1), cone(3, 4, 3, 4)]).unwrap();
    println!(
        "  gapped union -> {:?}",
        cauchy_development(&gapped).unwrap_err()
    );

    // the development of a morphism is the same pair between developments
    let stretch = SkelMorphism2::m_to_m(
        LineEmbedding::affine(&int(2), &int(1)).unwrap(),
        LineEmbedding::identity(),
    );
    let localized = d_localize(&stretch, &overlap).unwrap();
    println!("\nD(f) for f = (x -> 2x + 1, id):");
    println!("  source development  {}", localized.source);
    println!("  target development  {}", localized.target);
    println!("  skeletal conjugate is Cauchy: {}", {
        let skel = localized.to_c2d().unwrap().skel().clone();
        is_cauchy2(&skel)
    });

    println!("\nCauchy detection:");
    println!(
        "  identity on the plane: {}",
        is_cauchy2(&SkelMorphism2::identity(SkelObject2::Minkowski))
    );
    println!("  (x -> 2x + 1, id): {}", is_cauchy2(&stretch));

    println!("\nconvexity probe:");
    for (label, region) in [
        (
            "joined union",
            ConeUnion::new(vec![cone(0, 2, 0, 1), cone(1, 3, 0, 1)]).unwrap(),
        ),
        (
            "separated cones",
            ConeUnion::new(vec![cone(0, 1, 0, 1), cone(2, 3, 2, 3)]).unwrap(),
        ),
    ] {
        match is_causally_convex_sampled(&region, 256, 1) {
            ConvexityVerdict::Pass => println!("  {label}: PASS"),
            ConvexityVerdict::Counterexample { p, q, gap } => println!(
                "  {label}: COUNTEREXAMPLE p=({}, {}), q=({}, {}), gap=({}, {})",
                p.0, p.1, q.0, q.1, gap.0, gap.1
            ),
        }
    }
}
