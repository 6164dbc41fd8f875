//! The Abelian-current functor and its chiral components as law-checkable
//! models: Weyl algebras over observables, morphisms acting by slot-wise
//! pushforward, and fixed generator samples per object.

use num_traits::Zero;

use super::piecewise::{
    line_to_circle, pushforward_circle, pushforward_line, tau_circle, tau_line, CircleFn, LineFn,
};
use super::weyl::WeylElement;
use super::{pushforward_observable, CurrentError, Observable};
use crate::aqft::{AqftModel, ModelError};
use crate::rat::{int, rat, Rat};
use crate::scalar::{ComplexRat, Tolerance};
use crate::skelcat::{ChiralSign, SkelMorphism1, SkelMorphism2, SkelObject1, SkelObject2};

/// Element of the quantized current algebra.
pub type CurrentElement = WeylElement<Observable>;

/// The two-dimensional Abelian current on the skeletal spacetime category.
pub struct CurrentModel;

/// The model functor: objects to Weyl algebras over observables with the
/// slot-diagonal Poisson structure, morphisms to pushforward algebra maps.
pub fn current_model() -> CurrentModel {
    CurrentModel
}

fn weyl_equal_within<G: Ord + Clone + std::fmt::Debug>(
    a: &WeylElement<G>,
    b: &WeylElement<G>,
    tol: &Tolerance,
) -> bool {
    match tol {
        Tolerance::Exact => a == b,
        Tolerance::Abs(eps) => a.sub(b).terms().all(|(_, c)| c.abs_f64() <= *eps),
    }
}

impl AqftModel for CurrentModel {
    type Cat = crate::aqft::Skel2Cat;
    type Elem = CurrentElement;

    fn apply(&self, m: &SkelMorphism2, a: &CurrentElement) -> Result<CurrentElement, ModelError> {
        Ok(a.map_generators(&|o: &Observable| pushforward_observable(m, o))?)
    }

    fn product(
        &self,
        o: &SkelObject2,
        a: &CurrentElement,
        b: &CurrentElement,
    ) -> Result<CurrentElement, ModelError> {
        Ok(super::weyl_product(a, b, *o)?)
    }

    fn unit(&self, _o: &SkelObject2) -> CurrentElement {
        WeylElement::unit()
    }

    fn involution(&self, _o: &SkelObject2, a: &CurrentElement) -> CurrentElement {
        a.conjugate()
    }

    fn scale(&self, _o: &SkelObject2, c: &ComplexRat, a: &CurrentElement) -> CurrentElement {
        a.scale(c)
    }

    fn equal_within(
        &self,
        _o: &SkelObject2,
        a: &CurrentElement,
        b: &CurrentElement,
        tol: &Tolerance,
    ) -> bool {
        weyl_equal_within(a, b, tol)
    }

    fn generators(&self, o: &SkelObject2) -> Vec<CurrentElement> {
        current_generators(o)
            .into_iter()
            .map(WeylElement::generator)
            .collect()
    }
}

/// Fixed bump-like generator family. Supports stay inside `(-1, 1)` on the
/// plane, where the sampled morphisms are affine.
pub fn current_generators(o: &SkelObject2) -> Vec<Observable> {
    match o {
        SkelObject2::Minkowski => {
            let bump = LineFn::triangle(rat(-1, 2), rat(1, 2), int(1)).expect("valid bump");
            let off = LineFn::triangle(rat(-3, 4), rat(1, 4), int(2)).expect("valid bump");
            vec![
                Observable::plane_plus(bump.clone()),
                Observable::plane_minus(bump),
                Observable::minkowski(off.clone(), off),
            ]
        }
        SkelObject2::Cylinder => {
            let bump = line_to_circle(&LineFn::triangle(int(0), rat(1, 2), int(1)).expect("valid"))
                .expect("narrow support");
            let shifted =
                line_to_circle(&LineFn::triangle(rat(1, 4), rat(5, 8), int(1)).expect("valid"))
                    .expect("narrow support");
            vec![
                Observable::cylinder(bump.clone(), CircleFn::zero()),
                Observable::cylinder(CircleFn::zero(), bump),
                Observable::cylinder(shifted.clone(), CircleFn::constant(int(1))),
                Observable::cylinder(CircleFn::constant(int(1)), shifted),
            ]
        }
    }
}

/// Generator of the chiral current: a compactly supported function on the
/// line, or a circle function together with a multiple of the central
/// topological generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChiralGen {
    Line(LineFn),
    Circle { fun: CircleFn, zeta: Rat },
}

/// Element of the chiral current algebra.
pub type ChiralElement = WeylElement<ChiralGen>;

/// Poisson pairing of the chiral model: `tau_R` on the line, `tau_T` on the
/// circle functions, extended by zero on the central generator.
pub fn chiral_tau(a: &ChiralGen, b: &ChiralGen) -> Rat {
    match (a, b) {
        (ChiralGen::Line(f), ChiralGen::Line(g)) => tau_line(f, g),
        (ChiralGen::Circle { fun: f, .. }, ChiralGen::Circle { fun: g, .. }) => tau_circle(f, g),
        _ => Rat::zero(),
    }
}

/// Pushforward action on chiral generators; the central generator is fixed
/// by every circle diffeomorphism.
pub fn pushforward_chiral(m: &SkelMorphism1, g: &ChiralGen) -> Result<ChiralGen, CurrentError> {
    match (m, g) {
        (SkelMorphism1::LineToLine(f), ChiralGen::Line(phi)) => {
            Ok(ChiralGen::Line(pushforward_line(f, phi)?))
        }
        (SkelMorphism1::LineToCircle(h), ChiralGen::Line(phi)) => {
            let moved = pushforward_line(h.base(), phi)?;
            Ok(ChiralGen::Circle {
                fun: line_to_circle(&moved)?,
                zeta: Rat::zero(),
            })
        }
        (SkelMorphism1::CircleToCircle(g2), ChiralGen::Circle { fun, zeta }) => {
            Ok(ChiralGen::Circle {
                fun: pushforward_circle(g2, fun)?,
                zeta: zeta.clone(),
            })
        }
        _ => Err(CurrentError::WrongMorphism),
    }
}

/// The chiral component of the current as a model on the one-dimensional
/// skeletal category.
pub struct ChiralCurrentModel {
    pub sign: ChiralSign,
}

/// Line object: Weyl algebra over compactly supported functions with
/// `tau_R`; circle object: Weyl algebra over circle functions extended by
/// one central topological generator.
pub fn chiral_component_model(sign: ChiralSign) -> ChiralCurrentModel {
    ChiralCurrentModel { sign }
}

impl AqftModel for ChiralCurrentModel {
    type Cat = crate::aqft::Man1Cat;
    type Elem = ChiralElement;

    fn apply(&self, m: &SkelMorphism1, a: &ChiralElement) -> Result<ChiralElement, ModelError> {
        Ok(a.map_generators(&|g: &ChiralGen| pushforward_chiral(m, g))?)
    }

    fn product(
        &self,
        o: &SkelObject1,
        a: &ChiralElement,
        b: &ChiralElement,
    ) -> Result<ChiralElement, ModelError> {
        for elem in [a, b] {
            for (word, _) in elem.terms() {
                let homogeneous = word.iter().all(|g| match (o, g) {
                    (SkelObject1::Line, ChiralGen::Line(_)) => true,
                    (SkelObject1::Circle, ChiralGen::Circle { .. }) => true,
                    _ => false,
                });
                if !homogeneous {
                    return Err(ModelError::Current(CurrentError::AmbientMismatch));
                }
            }
        }
        Ok(a.product(b, &chiral_tau))
    }

    fn unit(&self, _o: &SkelObject1) -> ChiralElement {
        WeylElement::unit()
    }

    fn involution(&self, _o: &SkelObject1, a: &ChiralElement) -> ChiralElement {
        a.conjugate()
    }

    fn scale(&self, _o: &SkelObject1, c: &ComplexRat, a: &ChiralElement) -> ChiralElement {
        a.scale(c)
    }

    fn equal_within(
        &self,
        _o: &SkelObject1,
        a: &ChiralElement,
        b: &ChiralElement,
        tol: &Tolerance,
    ) -> bool {
        weyl_equal_within(a, b, tol)
    }

    fn generators(&self, o: &SkelObject1) -> Vec<ChiralElement> {
        chiral_generators(o)
            .into_iter()
            .map(WeylElement::generator)
            .collect()
    }
}

/// Generator family of the chiral model; the circle family includes the
/// central generator and a constant function.
pub fn chiral_generators(o: &SkelObject1) -> Vec<ChiralGen> {
    match o {
        SkelObject1::Line => {
            let bump = LineFn::triangle(rat(-1, 2), rat(1, 2), int(1)).expect("valid bump");
            let off = LineFn::triangle(rat(-3, 4), rat(1, 4), int(2)).expect("valid bump");
            vec![ChiralGen::Line(bump), ChiralGen::Line(off)]
        }
        SkelObject1::Circle => {
            let bump = line_to_circle(&LineFn::triangle(int(0), rat(1, 2), int(1)).expect("valid"))
                .expect("narrow support");
            vec![
                ChiralGen::Circle {
                    fun: bump,
                    zeta: Rat::zero(),
                },
                ChiralGen::Circle {
                    fun: CircleFn::constant(int(1)),
                    zeta: Rat::zero(),
                },
                ChiralGen::Circle {
                    fun: CircleFn::zero(),
                    zeta: Rat::from_integer(1.into()),
                },
            ]
        }
    }
}

/// The sampled-invariance counterpart of the exact chiral predicate: true
/// when every supplied witness fixes the observable exactly.
pub fn invariant_under_witnesses(
    o: &Observable,
    witnesses: &[SkelMorphism2],
) -> Result<bool, CurrentError> {
    for w in witnesses {
        if w.source() != o.ambient() {
            continue;
        }
        if pushforward_observable(w, o)? != *o {
            return Ok(false);
        }
    }
    Ok(true)
}
