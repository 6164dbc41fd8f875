//! The Weyl algebra over observables: the contraction star product, the
//! canonical commutation relation, and associativity by expansion.

use chiralkit::current::{poisson_tau, tau_same_ambient, weyl::WeylElement, LineFn, Observable};
use chiralkit::rat::int;
use chiralkit::skelcat::SkelObject2;

fn main() {
    let phi = Observable::plane_plus(LineFn::triangle(int(0), int(2), int(1)).unwrap());
    let psi = Observable::plane_plus(LineFn::triangle(int(1), int(3), int(1)).unwrap());
    println!("triangle pair on [0,2] and [1,3]:");
    println!(
        "  tau(phi, psi) = {}",
        chiralkit::rat::format_rat(&poisson_tau(&phi, &psi).unwrap())
    );

    let a = WeylElement::generator(phi.clone());
    let b = WeylElement::generator(psi.clone());
    let comm = a.commutator(&b, &tau_same_ambient);
    println!(
        "  [Phi(phi), Phi(psi)] = ({}) * unit",
        comm.coefficient(&[])
    );

    let prod = chiralkit::current::weyl_product(&a, &b, SkelObject2::Minkowski).unwrap();
    println!(
        "\nstar product Phi(phi) * Phi(psi) has {} terms:",
        prod.terms().count()
    );
    for (word, coeff) in prod.terms() {
        println!("  word of length {} with coefficient {}", word.len(), coeff);
    }

    // associativity by exhaustive expansion
    let c = WeylElement::word(vec![phi, psi.clone()]);
    let left = chiralkit::current::weyl_product(
        &chiralkit::current::weyl_product(&a, &c, SkelObject2::Minkowski).unwrap(),
        &b,
        SkelObject2::Minkowski,
    )
    .unwrap();
    let right = chiralkit::current::weyl_product(
        &a,
        &chiralkit::current::weyl_product(&c, &b, SkelObject2::Minkowski).unwrap(),
        SkelObject2::Minkowski,
    )
    .unwrap();
    println!("\n(a * c) * b == a * (c * b): {}", left == right);
}
