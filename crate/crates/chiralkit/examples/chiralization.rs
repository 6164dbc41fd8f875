//! Chiral extraction: the exact membership predicate, the counit-based
//! chirality detector, the unit identity of the adjunction, and the
//! topological generator on the cylinder.

use chiralkit::aqft::{check_unit_identity, counit_and_chirality, pullback_model, PiFunctor};
use chiralkit::current::{
    chiral_component_model, chiral_generator_predicate, cohomology_basis_zeta, current_model,
    CircleFn, LineFn, Observable,
};
use chiralkit::rat::{int, rat};
use chiralkit::sampling;
use chiralkit::scalar::Tolerance;
use chiralkit::skelcat::{ChiralSign, SkelObject2};

fn main() {
    let bump = LineFn::triangle(int(0), int(1), int(1)).unwrap();
    println!("exact chiral membership (plus component):");
    for (label, obs) in [
        (
            "(phi, 0) on the plane",
            Observable::plane_plus(bump.clone()),
        ),
        (
            "(0, phi) on the plane",
            Observable::plane_minus(bump.clone()),
        ),
        (
            "(bump, constant) on the cylinder",
            Observable::cylinder(
                chiralkit::current::line_to_circle(
                    &LineFn::triangle(int(0), rat(1, 2), int(1)).unwrap(),
                )
                .unwrap(),
                CircleFn::constant(rat(7, 3)),
            ),
        ),
    ] {
        println!(
            "  {label}: {}",
            chiral_generator_predicate(ChiralSign::Plus, &obs)
        );
    }

    let model = current_model();
    let sign = ChiralSign::Plus;
    let mut witnesses = sampling::witnesses_for_object(sign, SkelObject2::Minkowski, 8, 0);
    witnesses.extend(sampling::witnesses_for_object(
        sign,
        SkelObject2::Cylinder,
        8,
        1,
    ));
    println!(
        "\nchirality of the full current (plus): {}",
        counit_and_chirality(&model, sign, &witnesses, &Tolerance::Exact).unwrap()
    );

    let chiral = chiral_component_model(sign);
    let pulled = pullback_model(&chiral, PiFunctor { sign });
    println!(
        "chirality of its plus-pullback: {}",
        counit_and_chirality(&pulled, sign, &witnesses, &Tolerance::Exact).unwrap()
    );

    let report = check_unit_identity(&chiral, &pulled, sign, 8, 0, &Tolerance::Exact).unwrap();
    println!("\nunit identity: {}", report.summary());

    let rho = LineFn::triangle(int(0), int(2), int(1)).unwrap();
    let zeta = cohomology_basis_zeta(&rho, ChiralSign::Plus).unwrap();
    println!("\nzeta from a unit-mass profile: constant one in the minus slot");
    println!(
        "  chiral for plus: {}",
        chiral_generator_predicate(ChiralSign::Plus, &zeta)
    );
}
