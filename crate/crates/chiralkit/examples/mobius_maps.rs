//! Piecewise-Möbius embeddings of the line: canonical charts, exact
//! composition and inversion, and the mod-Z normal form of bounded pairs.

use chiralkit::geometry::{Finite, Interval, PosInf};
use chiralkit::maps1d::{
    chart_onto, chart_onto_bounded, compose_line, normalize_pair_mod_z, LineEmbedding,
};
use chiralkit::rat::{format_rat, int, rat};

fn main() {
    let unit = chart_onto(&Interval::bounded(int(0), int(1)).unwrap());
    println!("chart onto (0,1): {unit}");
    println!("  image = {}", unit.image());
    println!(
        "  value at 0 (midpoint anchor) = {}",
        format_rat(&unit.eval(&int(0)))
    );

    let half_line = chart_onto(&Interval::new(Finite(int(0)), PosInf).unwrap());
    println!("chart onto (0,+inf): {half_line}");

    let affine = LineEmbedding::affine(&rat(3, 2), &int(-1)).unwrap();
    let composite = compose_line(&unit, &affine);
    println!("\n(chart onto (0,1)) after (x -> 3/2 x - 1): {composite}");
    println!("  image = {}", composite.image());

    let inverse = unit.invert_on_image();
    for k in [-3i64, 0, 2] {
        let x = rat(k, 2);
        let y = unit.eval(&x);
        println!(
            "  chart({}) = {}, inverse({}) = {}",
            format_rat(&x),
            format_rat(&y),
            format_rat(&y),
            format_rat(&inverse.eval(&y).unwrap()),
        );
    }

    // bounded pairs are stored modulo the diagonal translation action
    let plus = chart_onto_bounded(&Interval::bounded(rat(6, 5), rat(3, 2)).unwrap()).unwrap();
    let minus = chart_onto_bounded(&Interval::bounded(int(0), rat(1, 2)).unwrap()).unwrap();
    let (pair, n) = normalize_pair_mod_z(&plus, &minus);
    println!("\npair with plus image (6/5, 3/2):");
    println!("  normal form shifts by n = {n}");
    println!("  plus image  -> {}", pair.plus().image());
    println!("  minus image -> {}", pair.minus().image());
}
