//! Algebra-valued functors on orthogonal categories and their law suites:
//! functoriality, commutation across orthogonal pairs, invertibility on
//! Cauchy morphisms, pullback along orthogonal functors, orthogonality
//! reflection, and the unit/counit checks of the chiralization adjunction.
//!
//! A model is a functor presented operationally: morphisms act on algebra
//! elements, algebra structure is exposed through products, units,
//! involutions and scalars, and each object carries a finite generator
//! sample that the law suites probe.

use std::fmt;
use std::marker::PhantomData;

use crate::current::CurrentError;
use crate::geometry::ConeUnion;
use crate::scalar::{ComplexRat, Tolerance};
use crate::skelcat::{
    compose1, compose2, compose_c2d, compose_fragment, inverse1, inverse2, is_cauchy1, is_cauchy2,
    orthogonal1, orthogonal2, orthogonal_c2d, orthogonal_fragment, pi_project, pi_project_object,
    skeletalize_object, C2DMorphism, C2DObject, ChiralSign, FragMorphism2, FragRegion, SkelError,
    SkelMorphism1, SkelMorphism2, SkelObject1, SkelObject2,
};

/// A small category with a causal-independence relation, presented through
/// total functions on its morphisms.
pub trait OrthCategory {
    type Object: Clone + PartialEq + fmt::Debug;
    type Morphism: Clone + PartialEq + fmt::Debug;

    fn source(m: &Self::Morphism) -> Self::Object;
    fn target(m: &Self::Morphism) -> Self::Object;
    fn identity(o: &Self::Object) -> Self::Morphism;
    fn compose(outer: &Self::Morphism, inner: &Self::Morphism)
        -> Result<Self::Morphism, SkelError>;
    fn orthogonal(a: &Self::Morphism, b: &Self::Morphism) -> Result<bool, SkelError>;
    fn is_cauchy(m: &Self::Morphism) -> bool;
    fn inverse(m: &Self::Morphism) -> Option<Self::Morphism>;
    /// Compact label for report records.
    fn describe(m: &Self::Morphism) -> String {
        format!("{:?} -> {:?}", Self::source(m), Self::target(m))
    }
}

/// The skeletal two-dimensional spacetime category.
pub struct Skel2Cat;

impl OrthCategory for Skel2Cat {
    type Object = SkelObject2;
    type Morphism = SkelMorphism2;

    fn source(m: &SkelMorphism2) -> SkelObject2 {
        m.source()
    }
    fn target(m: &SkelMorphism2) -> SkelObject2 {
        m.target()
    }
    fn identity(o: &SkelObject2) -> SkelMorphism2 {
        SkelMorphism2::identity(*o)
    }
    fn compose(outer: &SkelMorphism2, inner: &SkelMorphism2) -> Result<SkelMorphism2, SkelError> {
        compose2(outer, inner)
    }
    fn orthogonal(a: &SkelMorphism2, b: &SkelMorphism2) -> Result<bool, SkelError> {
        orthogonal2(a, b)
    }
    fn is_cauchy(m: &SkelMorphism2) -> bool {
        is_cauchy2(m)
    }
    fn inverse(m: &SkelMorphism2) -> Option<SkelMorphism2> {
        inverse2(m)
    }
    fn describe(m: &SkelMorphism2) -> String {
        format!("{} -> {}", m.source(), m.target())
    }
}

/// The skeletal one-dimensional category of the line and the circle.
pub struct Man1Cat;

impl OrthCategory for Man1Cat {
    type Object = SkelObject1;
    type Morphism = SkelMorphism1;

    fn source(m: &SkelMorphism1) -> SkelObject1 {
        m.source()
    }
    fn target(m: &SkelMorphism1) -> SkelObject1 {
        m.target()
    }
    fn identity(o: &SkelObject1) -> SkelMorphism1 {
        SkelMorphism1::identity(*o)
    }
    fn compose(outer: &SkelMorphism1, inner: &SkelMorphism1) -> Result<SkelMorphism1, SkelError> {
        compose1(outer, inner)
    }
    fn orthogonal(a: &SkelMorphism1, b: &SkelMorphism1) -> Result<bool, SkelError> {
        orthogonal1(a, b)
    }
    fn is_cauchy(m: &SkelMorphism1) -> bool {
        is_cauchy1(m)
    }
    fn inverse(m: &SkelMorphism1) -> Option<SkelMorphism1> {
        inverse1(m)
    }
    fn describe(m: &SkelMorphism1) -> String {
        format!("{} -> {}", m.source(), m.target())
    }
}

/// The double-cone category: objects stable under Cauchy development.
pub struct C2DCat;

impl OrthCategory for C2DCat {
    type Object = C2DObject;
    type Morphism = C2DMorphism;

    fn source(m: &C2DMorphism) -> C2DObject {
        m.source().clone()
    }
    fn target(m: &C2DMorphism) -> C2DObject {
        m.target().clone()
    }
    fn identity(o: &C2DObject) -> C2DMorphism {
        C2DMorphism::identity(o)
    }
    fn compose(outer: &C2DMorphism, inner: &C2DMorphism) -> Result<C2DMorphism, SkelError> {
        compose_c2d(outer, inner)
    }
    fn orthogonal(a: &C2DMorphism, b: &C2DMorphism) -> Result<bool, SkelError> {
        orthogonal_c2d(a, b)
    }
    fn is_cauchy(m: &C2DMorphism) -> bool {
        m.is_cauchy()
    }
    fn inverse(m: &C2DMorphism) -> Option<C2DMorphism> {
        let inv = inverse2(m.skel())?;
        C2DMorphism::new(m.target().clone(), m.source().clone(), inv).ok()
    }
}

/// Plane-side fragment of the ambient category: cone-union regions and
/// global pairs restricted to them.
pub struct FragmentCat;

impl OrthCategory for FragmentCat {
    type Object = ConeUnion;
    type Morphism = FragMorphism2;

    fn source(m: &FragMorphism2) -> ConeUnion {
        m.source().clone()
    }
    fn target(m: &FragMorphism2) -> ConeUnion {
        match m.target() {
            FragRegion::Union(u) => u.clone(),
            FragRegion::Cylinder => unreachable!("plane-side fragment morphisms only"),
        }
    }
    fn identity(o: &ConeUnion) -> FragMorphism2 {
        FragMorphism2::identity(o.clone()).expect("regions include themselves")
    }
    fn compose(outer: &FragMorphism2, inner: &FragMorphism2) -> Result<FragMorphism2, SkelError> {
        compose_fragment(outer, inner)
    }
    fn orthogonal(a: &FragMorphism2, b: &FragMorphism2) -> Result<bool, SkelError> {
        orthogonal_fragment(a, b)
    }
    fn is_cauchy(m: &FragMorphism2) -> bool {
        m.is_cauchy().unwrap_or(false)
    }
    fn inverse(m: &FragMorphism2) -> Option<FragMorphism2> {
        let inv = inverse2(m.map())?;
        let FragRegion::Union(target) = m.target() else {
            return None;
        };
        FragMorphism2::new(inv, target.clone(), FragRegion::Union(m.source().clone())).ok()
    }
    fn describe(m: &FragMorphism2) -> String {
        format!("{} cones -> fragment", m.source().cones().len())
    }
}

/// Errors surfaced by model evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("morphism is not invertible")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Current(#[from] CurrentError),
    #[error(transparent)]
    Skel(#[from] SkelError),
}

/// An algebra-valued functor presented operationally, together with its
/// per-object generator sample.
pub trait AqftModel {
    type Cat: OrthCategory;
    type Elem: Clone + PartialEq + fmt::Debug;

    fn apply(
        &self,
        m: &<Self::Cat as OrthCategory>::Morphism,
        a: &Self::Elem,
    ) -> Result<Self::Elem, ModelError>;

    /// Inverse action for Cauchy morphisms, by default through the
    /// categorical inverse. Pullbacks override this to invert downstairs.
    fn inverse_apply(
        &self,
        m: &<Self::Cat as OrthCategory>::Morphism,
        a: &Self::Elem,
    ) -> Result<Self::Elem, ModelError> {
        let inv = Self::Cat::inverse(m).ok_or(ModelError::NotInvertible)?;
        self.apply(&inv, a)
    }

    fn product(
        &self,
        o: &<Self::Cat as OrthCategory>::Object,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> Result<Self::Elem, ModelError>;

    fn unit(&self, o: &<Self::Cat as OrthCategory>::Object) -> Self::Elem;

    fn involution(&self, o: &<Self::Cat as OrthCategory>::Object, a: &Self::Elem) -> Self::Elem;

    fn scale(
        &self,
        o: &<Self::Cat as OrthCategory>::Object,
        c: &ComplexRat,
        a: &Self::Elem,
    ) -> Self::Elem;

    fn equal_within(
        &self,
        o: &<Self::Cat as OrthCategory>::Object,
        a: &Self::Elem,
        b: &Self::Elem,
        tol: &Tolerance,
    ) -> bool;

    fn generators(&self, o: &<Self::Cat as OrthCategory>::Object) -> Vec<Self::Elem>;
}

/// Object map plus morphism map between orthogonal categories.
pub trait OrthFunctor {
    type Src: OrthCategory;
    type Dst: OrthCategory;

    fn map_object(
        &self,
        o: &<Self::Src as OrthCategory>::Object,
    ) -> <Self::Dst as OrthCategory>::Object;

    fn map_morphism(
        &self,
        m: &<Self::Src as OrthCategory>::Morphism,
    ) -> Result<<Self::Dst as OrthCategory>::Morphism, SkelError>;
}

/// Projection onto one chirality.
pub struct PiFunctor {
    pub sign: ChiralSign,
}

impl OrthFunctor for PiFunctor {
    type Src = Skel2Cat;
    type Dst = Man1Cat;

    fn map_object(&self, o: &SkelObject2) -> SkelObject1 {
        pi_project_object(*o)
    }
    fn map_morphism(&self, m: &SkelMorphism2) -> Result<SkelMorphism1, SkelError> {
        Ok(pi_project(m, self.sign))
    }
}

/// The equivalence from the double-cone category onto its two-object
/// skeleton, realized by chart conjugation.
pub struct SkeletalizeFunctor;

impl OrthFunctor for SkeletalizeFunctor {
    type Src = C2DCat;
    type Dst = Skel2Cat;

    fn map_object(&self, o: &C2DObject) -> SkelObject2 {
        skeletalize_object(o).0
    }
    fn map_morphism(&self, m: &C2DMorphism) -> Result<SkelMorphism2, SkelError> {
        Ok(m.skel().clone())
    }
}

/// The development functor composed with skeletalization, from the
/// plane-side fragment to the skeleton.
pub struct DevelopFunctor;

impl OrthFunctor for DevelopFunctor {
    type Src = FragmentCat;
    type Dst = Skel2Cat;

    fn map_object(&self, _o: &ConeUnion) -> SkelObject2 {
        SkelObject2::Minkowski
    }
    fn map_morphism(&self, m: &FragMorphism2) -> Result<SkelMorphism2, SkelError> {
        m.to_skel()
    }
}

/// Identity functor, for pullback sanity checks.
pub struct IdentityFunctor<C: OrthCategory>(pub PhantomData<C>);

impl<C: OrthCategory> Default for IdentityFunctor<C> {
    fn default() -> Self {
        IdentityFunctor(PhantomData)
    }
}

impl<C: OrthCategory> OrthFunctor for IdentityFunctor<C> {
    type Src = C;
    type Dst = C;

    fn map_object(&self, o: &C::Object) -> C::Object {
        o.clone()
    }
    fn map_morphism(&self, m: &C::Morphism) -> Result<C::Morphism, SkelError> {
        Ok(m.clone())
    }
}

/// Lazily composed pullback `F*(model) = model ∘ F`.
pub struct PullbackModel<'a, M: AqftModel, F: OrthFunctor<Dst = M::Cat>> {
    pub inner: &'a M,
    pub functor: F,
}

/// Builds the pullback of a model along an orthogonal functor.
pub fn pullback_model<M: AqftModel, F: OrthFunctor<Dst = M::Cat>>(
    inner: &M,
    functor: F,
) -> PullbackModel<'_, M, F> {
    PullbackModel { inner, functor }
}

impl<M: AqftModel, F: OrthFunctor<Dst = M::Cat>> AqftModel for PullbackModel<'_, M, F> {
    type Cat = F::Src;
    type Elem = M::Elem;

    fn apply(
        &self,
        m: &<F::Src as OrthCategory>::Morphism,
        a: &Self::Elem,
    ) -> Result<Self::Elem, ModelError> {
        self.inner.apply(&self.functor.map_morphism(m)?, a)
    }

    fn inverse_apply(
        &self,
        m: &<F::Src as OrthCategory>::Morphism,
        a: &Self::Elem,
    ) -> Result<Self::Elem, ModelError> {
        self.inner.inverse_apply(&self.functor.map_morphism(m)?, a)
    }

    fn product(
        &self,
        o: &<F::Src as OrthCategory>::Object,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> Result<Self::Elem, ModelError> {
        self.inner.product(&self.functor.map_object(o), a, b)
    }

    fn unit(&self, o: &<F::Src as OrthCategory>::Object) -> Self::Elem {
        self.inner.unit(&self.functor.map_object(o))
    }

    fn involution(&self, o: &<F::Src as OrthCategory>::Object, a: &Self::Elem) -> Self::Elem {
        self.inner.involution(&self.functor.map_object(o), a)
    }

    fn scale(
        &self,
        o: &<F::Src as OrthCategory>::Object,
        c: &ComplexRat,
        a: &Self::Elem,
    ) -> Self::Elem {
        self.inner.scale(&self.functor.map_object(o), c, a)
    }

    fn equal_within(
        &self,
        o: &<F::Src as OrthCategory>::Object,
        a: &Self::Elem,
        b: &Self::Elem,
        tol: &Tolerance,
    ) -> bool {
        self.inner
            .equal_within(&self.functor.map_object(o), a, b, tol)
    }

    fn generators(&self, o: &<F::Src as OrthCategory>::Object) -> Vec<Self::Elem> {
        self.inner.generators(&self.functor.map_object(o))
    }
}

/// Status of a single law-suite record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One record of a law suite: the law checked, the inputs probed, and a
/// witness when the check failed.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub law: String,
    pub inputs: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            CheckStatus::Pass => write!(f, "ok   {} [{}]", self.law, self.inputs),
            CheckStatus::Fail => write!(
                f,
                "FAIL {} [{}] witness: {}",
                self.law,
                self.inputs,
                self.witness.as_deref().unwrap_or("-")
            ),
        }
    }
}

/// Ordered collection of check records; merged deterministically in input
/// order.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, law: &str, inputs: String) {
        self.records.push(CheckRecord {
            law: law.to_owned(),
            inputs,
            status: CheckStatus::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, law: &str, inputs: String, witness: String) {
        self.records.push(CheckRecord {
            law: law.to_owned(),
            inputs,
            status: CheckStatus::Fail,
            witness: Some(witness),
        });
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// One-line summary `passed/total`.
    pub fn summary(&self) -> String {
        let total = self.records.len();
        let passed = self
            .records
            .iter()
            .filter(|r| r.status == CheckStatus::Pass)
            .count();
        format!("{passed}/{total} checks passed")
    }
}

/// Functor laws on sampled composable pairs: composition compatibility on
/// every generator, plus the identity law at the sources.
pub fn check_functoriality<M: AqftModel>(
    model: &M,
    pairs: &[(
        <M::Cat as OrthCategory>::Morphism,
        <M::Cat as OrthCategory>::Morphism,
    )],
    tol: &Tolerance,
) -> Result<Report, ModelError> {
    let mut report = Report::new();
    for (idx, (outer, inner)) in pairs.iter().enumerate() {
        let inputs = format!(
            "pair {idx}: {} after {}",
            M::Cat::describe(outer),
            M::Cat::describe(inner)
        );
        let composed = M::Cat::compose(outer, inner)?;
        let src = M::Cat::source(inner);
        let id = M::Cat::identity(&src);
        let mut ok = true;
        let mut witness = String::new();
        for (g_idx, x) in model.generators(&src).iter().enumerate() {
            let via_composite = model.apply(&composed, x)?;
            let via_steps = model.apply(outer, &model.apply(inner, x)?)?;
            let tgt = M::Cat::target(outer);
            if !model.equal_within(&tgt, &via_composite, &via_steps, tol) {
                ok = false;
                witness = format!("generator {g_idx}: composite disagrees with steps");
                break;
            }
            let fixed = model.apply(&id, x)?;
            if !model.equal_within(&src, &fixed, x, tol) {
                ok = false;
                witness = format!("generator {g_idx}: identity moved it");
                break;
            }
        }
        if ok {
            report.pass("functoriality", inputs);
        } else {
            report.fail("functoriality", inputs, witness);
        }
    }
    Ok(report)
}

/// Commutation of images across orthogonal pairs, on all generator pairs.
pub fn check_einstein_causality<M: AqftModel>(
    model: &M,
    pairs: &[(
        <M::Cat as OrthCategory>::Morphism,
        <M::Cat as OrthCategory>::Morphism,
    )],
    tol: &Tolerance,
) -> Result<Report, ModelError> {
    let mut report = Report::new();
    for (idx, (f1, f2)) in pairs.iter().enumerate() {
        if !M::Cat::orthogonal(f1, f2)? {
            return Err(ModelError::Precondition(format!(
                "pair {idx} is not orthogonal"
            )));
        }
        let inputs = format!(
            "pair {idx}: {} perp {}",
            M::Cat::describe(f1),
            M::Cat::describe(f2)
        );
        let tgt = M::Cat::target(f1);
        let mut ok = true;
        let mut witness = String::new();
        'outer: for (i, a) in model.generators(&M::Cat::source(f1)).iter().enumerate() {
            for (j, b) in model.generators(&M::Cat::source(f2)).iter().enumerate() {
                let fa = model.apply(f1, a)?;
                let fb = model.apply(f2, b)?;
                let left = model.product(&tgt, &fa, &fb)?;
                let right = model.product(&tgt, &fb, &fa)?;
                if !model.equal_within(&tgt, &left, &right, tol) {
                    ok = false;
                    witness = format!("generators ({i}, {j}) fail to commute");
                    break 'outer;
                }
            }
        }
        if ok {
            report.pass("einstein-causality", inputs);
        } else {
            report.fail("einstein-causality", inputs, witness);
        }
    }
    Ok(report)
}

/// Two-sided invertibility of the action of Cauchy morphisms on generators.
/// Non-Cauchy inputs are a precondition violation.
pub fn check_time_slice<M: AqftModel>(
    model: &M,
    morphisms: &[<M::Cat as OrthCategory>::Morphism],
    tol: &Tolerance,
) -> Result<Report, ModelError> {
    let mut report = Report::new();
    for (idx, m) in morphisms.iter().enumerate() {
        if !M::Cat::is_cauchy(m) {
            return Err(ModelError::Precondition(format!(
                "morphism {idx} is not Cauchy"
            )));
        }
        let inputs = format!("morphism {idx}: {}", M::Cat::describe(m));
        let src = M::Cat::source(m);
        let tgt = M::Cat::target(m);
        let mut ok = true;
        let mut witness = String::new();
        for (i, x) in model.generators(&src).iter().enumerate() {
            let round = model.inverse_apply(m, &model.apply(m, x)?)?;
            if !model.equal_within(&src, &round, x, tol) {
                ok = false;
                witness = format!("left inverse fails on source generator {i}");
                break;
            }
        }
        if ok {
            for (i, y) in model.generators(&tgt).iter().enumerate() {
                let round = model.apply(m, &model.inverse_apply(m, y)?)?;
                if !model.equal_within(&tgt, &round, y, tol) {
                    ok = false;
                    witness = format!("right inverse fails on target generator {i}");
                    break;
                }
            }
        }
        if ok {
            report.pass("time-slice", inputs);
        } else {
            report.fail("time-slice", inputs, witness);
        }
    }
    Ok(report)
}

/// Biconditional orthogonality along a functor: `a perp b` upstairs exactly
/// when the images are orthogonal downstairs. Reports one record per pair.
pub fn check_orthogonality_reflection<F: OrthFunctor>(
    functor: &F,
    pairs: &[(
        <F::Src as OrthCategory>::Morphism,
        <F::Src as OrthCategory>::Morphism,
    )],
) -> Result<Report, SkelError> {
    let mut report = Report::new();
    for (idx, (a, b)) in pairs.iter().enumerate() {
        let upstairs = F::Src::orthogonal(a, b)?;
        let downstairs = F::Dst::orthogonal(&functor.map_morphism(a)?, &functor.map_morphism(b)?)?;
        let inputs = format!("pair {idx}: {}", F::Src::describe(a));
        if upstairs == downstairs {
            report.pass("orthogonality-reflection", inputs);
        } else {
            report.fail(
                "orthogonality-reflection",
                inputs,
                format!("upstairs {upstairs} but downstairs {downstairs}"),
            );
        }
    }
    Ok(report)
}

/// Verdict of the chirality detector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiralityVerdict {
    /// All sampled generators fixed by all witnesses. `low_confidence`
    /// marks a vacuous sweep (no generators).
    Chiral { low_confidence: bool },
    /// Some generator is moved by an opposite-chirality witness.
    NotChiral { witness: String },
}

impl fmt::Display for ChiralityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiralityVerdict::Chiral {
                low_confidence: false,
            } => write!(f, "CHIRAL"),
            ChiralityVerdict::Chiral {
                low_confidence: true,
            } => {
                write!(f, "CHIRAL (low confidence: no generators)")
            }
            ChiralityVerdict::NotChiral { witness } => write!(f, "NOT_CHIRAL ({witness})"),
        }
    }
}

/// Counit-based chirality detection: the model is chiral for `sign` exactly
/// when the opposite-chirality witnesses fix every sampled generator. A
/// moving witness is sound evidence of non-chirality; the chiral verdict is
/// sampled.
pub fn counit_and_chirality<M: AqftModel<Cat = Skel2Cat>>(
    model: &M,
    sign: ChiralSign,
    witnesses: &[SkelMorphism2],
    tol: &Tolerance,
) -> Result<ChiralityVerdict, ModelError> {
    let _ = sign;
    let mut saw_generator = false;
    for w in witnesses {
        let o = w.source();
        if w.target() != o {
            return Err(ModelError::Precondition(
                "witnesses must be endomorphisms".into(),
            ));
        }
        for (i, g) in model.generators(&o).iter().enumerate() {
            saw_generator = true;
            let moved = model.apply(w, g)?;
            if !model.equal_within(&o, &moved, g, tol) {
                return Ok(ChiralityVerdict::NotChiral {
                    witness: format!("generator {i} at {o} moved by an opposite-chirality witness"),
                });
            }
        }
    }
    Ok(ChiralityVerdict::Chiral {
        low_confidence: !saw_generator,
    })
}

/// Unit identity of the chiralization adjunction: pulling a chiral model
/// back along the projection and extracting invariants returns the model
/// itself. `pulled` is the pullback under test (pass a corrupted wrapper
/// for negative controls); the extraction is realized by the invariance
/// sweep plus comparison of objects, morphism actions and generators.
pub fn check_unit_identity<E, B, P>(
    chiral: &B,
    pulled: &P,
    sign: ChiralSign,
    witnesses_per_object: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Report, ModelError>
where
    E: Clone + PartialEq + fmt::Debug,
    B: AqftModel<Cat = Man1Cat, Elem = E>,
    P: AqftModel<Cat = Skel2Cat, Elem = E>,
{
    let mut report = Report::new();
    for (o1, o2) in [
        (SkelObject1::Line, SkelObject2::Minkowski),
        (SkelObject1::Circle, SkelObject2::Cylinder),
    ] {
        // 1. every pulled-back generator is invariant under the opposite
        //    chirality, so extraction keeps all of them
        let witnesses = crate::sampling::witnesses_for_object(sign, o2, witnesses_per_object, seed);
        let gens = pulled.generators(&o2);
        let mut invariant = true;
        let mut witness = String::new();
        'sweep: for (i, g) in gens.iter().enumerate() {
            for w in &witnesses {
                let moved = pulled.apply(w, g)?;
                if !pulled.equal_within(&o2, &moved, g, tol) {
                    invariant = false;
                    witness = format!("generator {i} at {o2} is not invariant");
                    break 'sweep;
                }
            }
        }
        if invariant {
            report.pass("unit-identity/invariance", format!("object {o2}"));
        } else {
            report.fail("unit-identity/invariance", format!("object {o2}"), witness);
        }

        // 2. the extracted generators coincide with the chiral model's
        let chiral_gens = chiral.generators(&o1);
        if gens.len() == chiral_gens.len()
            && gens
                .iter()
                .zip(&chiral_gens)
                .all(|(a, b)| chiral.equal_within(&o1, a, b, tol))
        {
            report.pass("unit-identity/generators", format!("object {o1}"));
        } else {
            report.fail(
                "unit-identity/generators",
                format!("object {o1}"),
                "extracted generator family differs".into(),
            );
        }
    }

    // 3. morphism actions agree through the canonical lifts
    let mut rng = crate::sampling::seeded(seed ^ 0x5ca1e);
    let line_gens = chiral.generators(&SkelObject1::Line);
    let circle_gens = chiral.generators(&SkelObject1::Circle);
    for idx in 0..4 {
        let h = crate::sampling::pl_surjection(&mut rng);
        let lifted = match sign {
            ChiralSign::Plus => {
                SkelMorphism2::m_to_m(h.clone(), crate::maps1d::LineEmbedding::identity())
            }
            ChiralSign::Minus => {
                SkelMorphism2::m_to_m(crate::maps1d::LineEmbedding::identity(), h.clone())
            }
        };
        let downstairs = SkelMorphism1::LineToLine(h);
        let mut ok = true;
        for g in &line_gens {
            let via_pullback = pulled.apply(&lifted, g)?;
            let via_chiral = chiral.apply(&downstairs, g)?;
            if !chiral.equal_within(&SkelObject1::Line, &via_pullback, &via_chiral, tol) {
                ok = false;
                break;
            }
        }
        let inputs = format!("line endomorphism {idx}");
        if ok {
            report.pass("unit-identity/morphisms", inputs);
        } else {
            report.fail("unit-identity/morphisms", inputs, "actions differ".into());
        }
    }
    for idx in 0..4 {
        let g2 = crate::sampling::circle_lift(&mut rng);
        let lifted = match sign {
            ChiralSign::Plus => {
                SkelMorphism2::cyl_to_cyl(g2.clone(), crate::maps1d::CircleMapLift::identity())
            }
            ChiralSign::Minus => {
                SkelMorphism2::cyl_to_cyl(crate::maps1d::CircleMapLift::identity(), g2.clone())
            }
        };
        let downstairs = SkelMorphism1::CircleToCircle(g2);
        let mut ok = true;
        for g in &circle_gens {
            let via_pullback = pulled.apply(&lifted, g)?;
            let via_chiral = chiral.apply(&downstairs, g)?;
            if !chiral.equal_within(&SkelObject1::Circle, &via_pullback, &via_chiral, tol) {
                ok = false;
                break;
            }
        }
        let inputs = format!("circle automorphism {idx}");
        if ok {
            report.pass("unit-identity/morphisms", inputs);
        } else {
            report.fail("unit-identity/morphisms", inputs, "actions differ".into());
        }
    }
    Ok(report)
}

/// Negative-control wrapper: flips the sign of every non-identity action,
/// breaking functoriality and invariance while leaving the algebra alone.
pub struct CorruptedModel<'a, M: AqftModel> {
    pub inner: &'a M,
}

impl<M: AqftModel> AqftModel for CorruptedModel<'_, M> {
    type Cat = M::Cat;
    type Elem = M::Elem;

    fn apply(
        &self,
        m: &<M::Cat as OrthCategory>::Morphism,
        a: &Self::Elem,
    ) -> Result<Self::Elem, ModelError> {
        let out = self.inner.apply(m, a)?;
        let identity = <M::Cat as OrthCategory>::identity(&<M::Cat as OrthCategory>::source(m));
        if *m == identity {
            Ok(out)
        } else {
            let tgt = <M::Cat as OrthCategory>::target(m);
            Ok(self.inner.scale(&tgt, &(-ComplexRat::one()), &out))
        }
    }

    fn product(
        &self,
        o: &<M::Cat as OrthCategory>::Object,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> Result<Self::Elem, ModelError> {
        self.inner.product(o, a, b)
    }

    fn unit(&self, o: &<M::Cat as OrthCategory>::Object) -> Self::Elem {
        self.inner.unit(o)
    }

    fn involution(&self, o: &<M::Cat as OrthCategory>::Object, a: &Self::Elem) -> Self::Elem {
        self.inner.involution(o, a)
    }

    fn scale(
        &self,
        o: &<M::Cat as OrthCategory>::Object,
        c: &ComplexRat,
        a: &Self::Elem,
    ) -> Self::Elem {
        self.inner.scale(o, c, a)
    }

    fn equal_within(
        &self,
        o: &<M::Cat as OrthCategory>::Object,
        a: &Self::Elem,
        b: &Self::Elem,
        tol: &Tolerance,
    ) -> bool {
        self.inner.equal_within(o, a, b, tol)
    }

    fn generators(&self, o: &<M::Cat as OrthCategory>::Object) -> Vec<Self::Elem> {
        self.inner.generators(o)
    }
}

/// One-dimensional trivial model: every object carries the scalars, every
/// morphism acts as the identity.
pub struct TrivialModel;

impl AqftModel for TrivialModel {
    type Cat = Skel2Cat;
    type Elem = ComplexRat;

    fn apply(&self, _m: &SkelMorphism2, a: &ComplexRat) -> Result<ComplexRat, ModelError> {
        Ok(a.clone())
    }

    fn inverse_apply(&self, _m: &SkelMorphism2, a: &ComplexRat) -> Result<ComplexRat, ModelError> {
        Ok(a.clone())
    }

    fn product(
        &self,
        _o: &SkelObject2,
        a: &ComplexRat,
        b: &ComplexRat,
    ) -> Result<ComplexRat, ModelError> {
        Ok(a.clone() * b.clone())
    }

    fn unit(&self, _o: &SkelObject2) -> ComplexRat {
        ComplexRat::one()
    }

    fn involution(&self, _o: &SkelObject2, a: &ComplexRat) -> ComplexRat {
        a.conj()
    }

    fn scale(&self, _o: &SkelObject2, c: &ComplexRat, a: &ComplexRat) -> ComplexRat {
        c.clone() * a.clone()
    }

    fn equal_within(
        &self,
        _o: &SkelObject2,
        a: &ComplexRat,
        b: &ComplexRat,
        tol: &Tolerance,
    ) -> bool {
        tol.eq_complex(a, b)
    }

    fn generators(&self, _o: &SkelObject2) -> Vec<ComplexRat> {
        vec![ComplexRat::from_rat(crate::rat::rat(2, 1)), ComplexRat::i()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::{chiral_component_model, current_model};
    use crate::maps1d::chart_onto;
    use crate::rat::int;
    use crate::sampling;

    #[test]
    fn skeletalization_reflects_orthogonality_on_500_pairs() {
        let mut rng = sampling::seeded(120);
        let mut pairs = Vec::new();
        for _ in 0..500 {
            let target = C2DObject::Cone(sampling::double_cone(&mut rng, 3));
            let source = C2DObject::Cone(sampling::double_cone(&mut rng, 3));
            let m1 = C2DMorphism::new(
                source.clone(),
                target.clone(),
                sampling::m_to_m(&mut rng, false),
            )
            .unwrap();
            let m2 = C2DMorphism::new(source, target, sampling::m_to_m(&mut rng, false)).unwrap();
            pairs.push((m1, m2));
        }
        let report = check_orthogonality_reflection(&SkeletalizeFunctor, &pairs).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.records.len(), 500);
        // the empty table passes trivially
        let empty = check_orthogonality_reflection(&SkeletalizeFunctor, &[]).unwrap();
        assert!(empty.passed());
        assert!(empty.records.is_empty());
    }

    #[test]
    fn projection_does_not_reflect_orthogonality() {
        // timelike-related cones whose plus factors are disjoint: orthogonal
        // after projecting, not orthogonal upstairs
        let cone = |a: i64, b: i64| {
            chart_onto(&crate::geometry::Interval::bounded(int(a), int(b)).unwrap())
        };
        let m1 = SkelMorphism2::m_to_m(cone(0, 1), cone(0, 1));
        let m2 = SkelMorphism2::m_to_m(cone(2, 3), cone(2, 3));
        assert_eq!(crate::skelcat::orthogonal2(&m1, &m2), Ok(false));
        let report = check_orthogonality_reflection(
            &PiFunctor {
                sign: ChiralSign::Plus,
            },
            &[(m1, m2)],
        )
        .unwrap();
        assert!(!report.passed(), "a violation must be exhibited");
    }

    #[test]
    fn pullback_along_the_identity_is_the_same_model() {
        let model = current_model();
        let pulled = pullback_model(&model, IdentityFunctor::<Skel2Cat>::default());
        let mut rng = sampling::seeded(121);
        for o in [SkelObject2::Minkowski, SkelObject2::Cylinder] {
            assert_eq!(pulled.generators(&o), model.generators(&o));
        }
        for _ in 0..10 {
            let m = sampling::skel2(&mut rng);
            let g = &model.generators(&m.source())[0];
            assert_eq!(pulled.apply(&m, g).unwrap(), model.apply(&m, g).unwrap());
        }
    }

    #[test]
    fn pullbacks_of_functorial_models_stay_functorial() {
        let chiral = chiral_component_model(ChiralSign::Plus);
        let pulled = pullback_model(
            &chiral,
            PiFunctor {
                sign: ChiralSign::Plus,
            },
        );
        let mut rng = sampling::seeded(122);
        let pairs: Vec<_> = (0..15)
            .map(|_| sampling::composable_pair2(&mut rng))
            .collect();
        let report = check_functoriality(&pulled, &pairs, &Tolerance::Exact).unwrap();
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn empty_generator_models_are_flagged_low_confidence() {
        struct Hollow;
        impl AqftModel for Hollow {
            type Cat = Skel2Cat;
            type Elem = ComplexRat;
            fn apply(&self, _m: &SkelMorphism2, a: &ComplexRat) -> Result<ComplexRat, ModelError> {
                Ok(a.clone())
            }
            fn product(
                &self,
                _o: &SkelObject2,
                a: &ComplexRat,
                b: &ComplexRat,
            ) -> Result<ComplexRat, ModelError> {
                Ok(a.clone() * b.clone())
            }
            fn unit(&self, _o: &SkelObject2) -> ComplexRat {
                ComplexRat::one()
            }
            fn involution(&self, _o: &SkelObject2, a: &ComplexRat) -> ComplexRat {
                a.conj()
            }
            fn scale(&self, _o: &SkelObject2, c: &ComplexRat, a: &ComplexRat) -> ComplexRat {
                c.clone() * a.clone()
            }
            fn equal_within(
                &self,
                _o: &SkelObject2,
                a: &ComplexRat,
                b: &ComplexRat,
                tol: &Tolerance,
            ) -> bool {
                tol.eq_complex(a, b)
            }
            fn generators(&self, _o: &SkelObject2) -> Vec<ComplexRat> {
                Vec::new()
            }
        }
        let witnesses =
            sampling::witnesses_for_object(ChiralSign::Plus, SkelObject2::Minkowski, 4, 0);
        let verdict =
            counit_and_chirality(&Hollow, ChiralSign::Plus, &witnesses, &Tolerance::Exact).unwrap();
        assert_eq!(
            verdict,
            ChiralityVerdict::Chiral {
                low_confidence: true
            }
        );
    }

    #[test]
    fn reflection_holds_along_the_development_functor() {
        let mut rng = sampling::seeded(123);
        let mut pairs = Vec::new();
        for _ in 0..60 {
            let source_a = sampling::overlapping_union(&mut rng);
            let source_b = sampling::overlapping_union(&mut rng);
            let target = sampling::overlapping_union(&mut rng);
            let grow = |u: &crate::geometry::ConeUnion| {
                // a target wide enough to contain both images
                let dev = crate::geometry::cauchy_development(u).unwrap();
                let pad = |iv: &crate::geometry::Interval| {
                    crate::geometry::Interval::bounded(
                        iv.lo().finite().unwrap() - int(64),
                        iv.hi().finite().unwrap() + int(64),
                    )
                    .unwrap()
                };
                crate::geometry::ConeUnion::singleton(crate::geometry::DoubleCone::new(
                    pad(&dev.iplus),
                    pad(&dev.iminus),
                ))
            };
            let wide = grow(&target);
            let m1 = crate::skelcat::FragMorphism2::new(
                sampling::m_to_m(&mut rng, false),
                source_a,
                crate::skelcat::FragRegion::Union(wide.clone()),
            );
            let m2 = crate::skelcat::FragMorphism2::new(
                sampling::m_to_m(&mut rng, false),
                source_b,
                crate::skelcat::FragRegion::Union(wide),
            );
            if let (Ok(m1), Ok(m2)) = (m1, m2) {
                pairs.push((m1, m2));
            }
        }
        assert!(pairs.len() > 30, "most sampled pairs fit the padded target");
        let report = check_orthogonality_reflection(&DevelopFunctor, &pairs).unwrap();
        assert!(report.passed(), "{}", report.render());
    }
}
