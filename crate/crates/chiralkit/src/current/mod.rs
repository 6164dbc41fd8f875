//! The Abelian current in the primed presentation: observables are pairs of
//! one-dimensional test functions carried by the two skeletal objects, the
//! Poisson structure is `-1/2 ∫ (φ+ dψ+ + φ- dψ-)`, quantization is the
//! Weyl algebra with the contraction star product, and the chiral
//! components are cut out exactly by slot conditions.

pub mod piecewise;
pub mod poly;
pub mod propagator;
pub mod weyl;

mod model;

pub use model::{
    chiral_component_model, chiral_generators, chiral_tau, current_generators, current_model,
    invariant_under_witnesses, pushforward_chiral, ChiralCurrentModel, ChiralElement, ChiralGen,
    CurrentElement, CurrentModel,
};
pub use piecewise::{
    line_to_circle, pushforward_circle, pushforward_line, tau_circle, tau_line, CircleFn, LineFn,
};
pub use poly::Poly;
pub use propagator::{
    causal_propagator_cylinder, causal_propagator_cylinder_windowed, causal_propagator_minkowski,
    exterior_derivative, fiber_integrate, fiber_integrate_cylinder_diagonal, tau_via_propagator,
    CurvatureData, JumpLine, OneFormPair, TwoForm, TwoFormTerm,
};

use num_traits::One;

use crate::rat::Rat;
use crate::skelcat::{ChiralSign, SkelError, SkelMorphism2, SkelObject2};

/// Errors of the field-theory layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurrentError {
    #[error("observables live on different objects")]
    AmbientMismatch,
    #[error("a Möbius piece meets the support; pushforward needs affine pieces there")]
    NonPolynomialPushforward,
    #[error("malformed piecewise data")]
    MalformedFunction,
    #[error("support does not fit inside one period")]
    SupportTooWide,
    #[error("profile must have unit integral")]
    NonUnitIntegral,
    #[error("morphism does not act on this observable's object")]
    WrongMorphism,
    #[error(transparent)]
    Skel(#[from] SkelError),
}

/// Linear observable: a (plus-slot, minus-slot) pair of test functions on
/// the object it lives on. The plus slot transforms under the plus factor
/// of a morphism, the minus slot under the minus factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Observable {
    Minkowski { plus: LineFn, minus: LineFn },
    Cylinder { plus: CircleFn, minus: CircleFn },
}

impl Observable {
    pub fn minkowski(plus: LineFn, minus: LineFn) -> Self {
        Observable::Minkowski { plus, minus }
    }

    pub fn cylinder(plus: CircleFn, minus: CircleFn) -> Self {
        Observable::Cylinder { plus, minus }
    }

    pub fn plane_plus(phi: LineFn) -> Self {
        Observable::Minkowski {
            plus: phi,
            minus: LineFn::zero(),
        }
    }

    pub fn plane_minus(psi: LineFn) -> Self {
        Observable::Minkowski {
            plus: LineFn::zero(),
            minus: psi,
        }
    }

    pub fn ambient(&self) -> SkelObject2 {
        match self {
            Observable::Minkowski { .. } => SkelObject2::Minkowski,
            Observable::Cylinder { .. } => SkelObject2::Cylinder,
        }
    }
}

/// Slot-diagonal Poisson structure `-1/2 ∫ (φ+ dψ+ + φ- dψ-)`, exact.
pub fn poisson_tau(a: &Observable, b: &Observable) -> Result<Rat, CurrentError> {
    match (a, b) {
        (
            Observable::Minkowski {
                plus: ap,
                minus: am,
            },
            Observable::Minkowski {
                plus: bp,
                minus: bm,
            },
        ) => Ok(tau_line(ap, bp) + tau_line(am, bm)),
        (
            Observable::Cylinder {
                plus: ap,
                minus: am,
            },
            Observable::Cylinder {
                plus: bp,
                minus: bm,
            },
        ) => Ok(tau_circle(ap, bp) + tau_circle(am, bm)),
        _ => Err(CurrentError::AmbientMismatch),
    }
}

/// Slot-wise pushforward of an observable along a skeletal morphism:
/// `f_*(φ+) ⊕ f_*(φ-)`, reinterpreted on the cylinder when the morphism
/// lands there.
pub fn pushforward_observable(
    m: &SkelMorphism2,
    o: &Observable,
) -> Result<Observable, CurrentError> {
    match (m, o) {
        (
            SkelMorphism2::MToM { plus, minus },
            Observable::Minkowski {
                plus: op,
                minus: om,
            },
        ) => Ok(Observable::Minkowski {
            plus: pushforward_line(plus, op)?,
            minus: pushforward_line(minus, om)?,
        }),
        (
            SkelMorphism2::MToCyl(pair),
            Observable::Minkowski {
                plus: op,
                minus: om,
            },
        ) => {
            let plus = pushforward_line(pair.plus().base(), op)?;
            let minus = pushforward_line(pair.minus().base(), om)?;
            Ok(Observable::Cylinder {
                plus: line_to_circle(&plus)?,
                minus: line_to_circle(&minus)?,
            })
        }
        (
            SkelMorphism2::CylToCyl { plus, minus },
            Observable::Cylinder {
                plus: op,
                minus: om,
            },
        ) => Ok(Observable::Cylinder {
            plus: pushforward_circle(plus, op)?,
            minus: pushforward_circle(minus, om)?,
        }),
        _ => Err(CurrentError::WrongMorphism),
    }
}

/// Star product of Weyl elements over observables of a common object.
pub fn weyl_product(
    a: &CurrentElement,
    b: &CurrentElement,
    ambient: SkelObject2,
) -> Result<CurrentElement, CurrentError> {
    for elem in [a, b] {
        for (word, _) in elem.terms() {
            if word.iter().any(|o| o.ambient() != ambient) {
                return Err(CurrentError::AmbientMismatch);
            }
        }
    }
    Ok(a.product(b, &tau_same_ambient))
}

/// Poisson pairing for observables already known to share an object.
pub fn tau_same_ambient(a: &Observable, b: &Observable) -> Rat {
    poisson_tau(a, b).expect("words are ambient-homogeneous")
}

/// Exact chiral membership: for the plus component, the minus slot must
/// vanish on the plane and be constant on the cylinder; mirrored for minus.
pub fn chiral_generator_predicate(sign: ChiralSign, o: &Observable) -> bool {
    match (sign, o) {
        (ChiralSign::Plus, Observable::Minkowski { minus, .. }) => minus.is_zero(),
        (ChiralSign::Minus, Observable::Minkowski { plus, .. }) => plus.is_zero(),
        (ChiralSign::Plus, Observable::Cylinder { minus, .. }) => minus.as_constant().is_some(),
        (ChiralSign::Minus, Observable::Cylinder { plus, .. }) => plus.as_constant().is_some(),
    }
}

/// The topological generator of one chirality on the cylinder: the fiber
/// integral of the diagonal representative `ρ(x+ + x-) dx^±` with unit-mass
/// profile, which is the constant function one in the slot of the opposite
/// lightcone coordinate.
pub fn cohomology_basis_zeta(rho: &LineFn, sign: ChiralSign) -> Result<Observable, CurrentError> {
    let mass = rho.mass();
    if mass != Rat::one() {
        return Err(CurrentError::NonUnitIntegral);
    }
    let constant = CircleFn::constant(mass);
    Ok(match sign {
        ChiralSign::Plus => Observable::Cylinder {
            plus: CircleFn::zero(),
            minus: constant,
        },
        ChiralSign::Minus => Observable::Cylinder {
            plus: constant,
            minus: CircleFn::zero(),
        },
    })
}
