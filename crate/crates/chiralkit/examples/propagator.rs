//! The sign-kernel causal propagator: exact point values on the plane, the
//! method of images on the cylinder, and the numeric cross-check of the
//! Poisson structure through exterior derivatives.

use chiralkit::current::{
    causal_propagator_cylinder, causal_propagator_cylinder_windowed, causal_propagator_minkowski,
    fiber_integrate, tau_line, tau_via_propagator, LineFn, OneFormPair, Poly, TwoForm,
};
use chiralkit::rat::{format_rat, int, rat, rat_to_f64};
use chiralkit::skelcat::ChiralSign;

fn main() {
    let square = TwoForm::separable(
        LineFn::piece(int(0), int(1), Poly::constant(int(1))).unwrap(),
        LineFn::piece(int(0), int(1), Poly::constant(int(1))).unwrap(),
    );
    println!("G applied to the unit-square density:");
    for (p, m) in [(int(2), int(2)), (int(2), int(-1)), (rat(1, 2), int(2))] {
        let v = causal_propagator_minkowski(&square, &(p.clone(), m.clone()));
        println!(
            "  G(omega)({}, {}) = {}",
            format_rat(&p),
            format_rat(&m),
            format_rat(&v)
        );
    }

    let bump = LineFn::triangle(int(0), rat(1, 2), int(1)).unwrap();
    let omega = TwoForm::separable(bump.clone(), bump);
    let point = (int(7), int(7));
    let value = causal_propagator_cylinder(&omega, &point);
    println!("\nmethod of images at (7,7): {}", format_rat(&value));
    println!(
        "  window + 5 gives the same value: {}",
        causal_propagator_cylinder_windowed(&omega, &point, 5) == value
    );
    println!(
        "  spacelike point (3/4, -1/4): {}",
        format_rat(&causal_propagator_cylinder(
            &omega,
            &(rat(3, 4), rat(-1, 4))
        ))
    );

    // two routes to the Poisson pairing
    let alpha = OneFormPair::anti_self_dual(
        LineFn::triangle(int(0), int(2), int(1)).unwrap(),
        LineFn::triangle(int(-1), int(1), int(1)).unwrap(),
    );
    let beta = OneFormPair::anti_self_dual(
        LineFn::triangle(int(1), int(3), int(1)).unwrap(),
        LineFn::triangle(int(0), int(2), int(1)).unwrap(),
    );
    let numeric = tau_via_propagator(&alpha, &beta);
    let (ap, _) = alpha.to_observable_slots();
    let (bp, _) = beta.to_observable_slots();
    let exact = tau_line(&ap, &bp);
    println!("\ntau through the propagator: {numeric:.12}");
    println!("tau through fiber integration: {}", format_rat(&exact));
    println!("difference: {:.3e}", (numeric - rat_to_f64(&exact)).abs());

    // the fiber integral itself
    let rho = LineFn::triangle(int(-1), int(1), int(1)).unwrap();
    println!(
        "\nfiber integral of phi(x+) rho(x-) over x-: mass(rho) = {}",
        format_rat(&rho.mass())
    );
    let phi = LineFn::triangle(int(0), int(2), int(3)).unwrap();
    let slot = fiber_integrate(&TwoForm::separable(phi.clone(), rho), ChiralSign::Plus);
    println!("  recovers phi exactly: {}", slot == phi);
}
