//! The causal-disjointness decision procedures: wedges, the plane relation,
//! and the integer-translate relation on the cylinder.

use chiralkit::geometry::{
    causal_future, causal_past, causally_disjoint_cylinder, causally_disjoint_minkowski,
    DoubleCone, Interval,
};
use chiralkit::maps1d::chart_onto_bounded;
use chiralkit::rat::{int, rat};
use chiralkit::skelcat::{orthogonal2, SkelMorphism2};

fn cone(pl: i64, ph: i64, ml: i64, mh: i64) -> DoubleCone {
    DoubleCone::new(
        Interval::bounded(int(pl), int(ph)).unwrap(),
        Interval::bounded(int(ml), int(mh)).unwrap(),
    )
}

fn main() {
    let unit = cone(0, 1, 0, 1);
    println!("double cone U = {unit}");
    let fut = causal_future(&unit);
    let past = causal_past(&unit);
    println!("  J+(U) cuts at x+ > {}, x- > {}", fut.plus, fut.minus);
    println!("  J-(U) cuts at x+ < {}, x- < {}", past.plus, past.minus);
    println!("  (2,2) in J+? {}", fut.contains(&(int(2), int(2))));
    println!("  (2,-1) in J+? {}\n", fut.contains(&(int(2), int(-1))));

    let spacelike = cone(2, 3, -3, -2);
    let timelike = cone(2, 3, 2, 3);
    println!("plane relation:");
    println!(
        "  U vs {spacelike}: disjoint = {}",
        causally_disjoint_minkowski(&unit, &spacelike)
    );
    println!(
        "  U vs {timelike}: disjoint = {}\n",
        causally_disjoint_minkowski(&unit, &timelike)
    );

    // on the cylinder, every deck translate (+n, -n) must fail too
    let q = |a: i64, b: i64| Interval::bounded(rat(a, 4), rat(b, 4)).unwrap();
    let a = DoubleCone::new(q(0, 1), q(0, 1));
    let b = DoubleCone::new(q(2, 3), q(-3, -2));
    let c = DoubleCone::new(q(2, 3), q(2, 3));
    println!("cylinder relation (all integer translates):");
    println!(
        "  {a} vs {b}: disjoint = {}",
        causally_disjoint_cylinder(&a, &b).unwrap()
    );
    println!(
        "  {a} vs {c}: disjoint = {}\n",
        causally_disjoint_cylinder(&a, &c).unwrap()
    );

    // the same decisions through skeletal morphisms
    let onto = |lo: chiralkit::Rat, hi: chiralkit::Rat| {
        chart_onto_bounded(&Interval::bounded(lo, hi).unwrap()).unwrap()
    };
    let m1 = SkelMorphism2::m_to_cyl(onto(rat(0, 4), rat(1, 4)), onto(rat(0, 4), rat(1, 4)));
    let m2 = SkelMorphism2::m_to_cyl(onto(rat(2, 4), rat(3, 4)), onto(rat(-3, 4), rat(-2, 4)));
    println!(
        "as morphisms into the cylinder: {}",
        orthogonal2(&m1, &m2).unwrap()
    );
}
