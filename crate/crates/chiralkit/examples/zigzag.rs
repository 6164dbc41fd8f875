//! Zig-zag diagrams connecting cylinder-valued morphisms that share a plus
//! factor, and the finite chains that bridge non-overlapping minus images.

use chiralkit::geometry::Interval;
use chiralkit::maps1d::chart_onto_bounded;
use chiralkit::rat::rat;
use chiralkit::sampling;
use chiralkit::skelcat::{build_zigzag, chain_length_bound, connect_chain};

fn main() {
    let onto = |a: i64, b: i64, d: i64| {
        chart_onto_bounded(&Interval::bounded(rat(a, d), rat(b, d)).unwrap()).unwrap()
    };
    let h = onto(0, 1, 4);
    let f1 = onto(0, 2, 4);
    let f2 = onto(1, 3, 4);
    let zz = build_zigzag(&h, &f1, &f2).unwrap();
    println!("overlapping minus images (0,1/2) and (1/4,3/4):");
    println!("  shared window is the minus image of the middle objects");
    println!(
        "  cells commute structurally: {}",
        zz.cells_commute_structurally().unwrap()
    );
    let mut rng = sampling::seeded(0);
    println!(
        "  cells commute on 50 samples: {}",
        zz.cells_commute_sampled(50, &mut rng)
    );

    let far = onto(2, 3, 4);
    println!("\ndisjoint minus images (0,1/2) and (1/2,3/4):");
    match build_zigzag(&h, &f1, &far) {
        Err(e) => println!("  single zig-zag impossible: {e}"),
        Ok(_) => unreachable!(),
    }
    let chain = connect_chain(&h, &f1, &far).unwrap();
    println!(
        "  chain of {} zig-zags (bound {})",
        chain.len(),
        chain_length_bound(&f1, &far)
    );
    for (i, link) in chain.iter().enumerate() {
        println!(
            "    link {i}: commutes = {}",
            link.cells_commute_structurally().unwrap() && link.cells_commute_sampled(20, &mut rng)
        );
    }
}
