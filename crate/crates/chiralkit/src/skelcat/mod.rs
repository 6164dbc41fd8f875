//! The two-object skeletal spacetime categories and their orthogonality
//! structure.
//!
//! The two-dimensional category has objects the Minkowski plane and the flat
//! cylinder; morphisms are pairs of line embeddings, mod-Z classes of bounded
//! pairs, or pairs of circle-diffeomorphism lifts. The one-dimensional
//! category is the single-factor analogue on the line and the circle. On top
//! of these sit the double-cone category (objects stable under Cauchy
//! development), the development functor on cone-union fragments, and the
//! skeletalization isomorphisms.

mod fragment;
mod zigzag;

pub use fragment::{compose_fragment, orthogonal_fragment, FragMorphism2, FragRegion};
pub use zigzag::{build_zigzag, chain_length_bound, connect_chain, ZigZag};

use std::fmt;

use crate::geometry::{
    cauchy_development, causally_disjoint_cylinder, causally_disjoint_minkowski, ConeUnion,
    DoubleCone, GeometryError, Interval,
};
use crate::maps1d::{
    chart_onto, compose_line, normalize_pair_mod_z, normalize_single_mod_z, BoundedLineEmbedding,
    CircleMapLift, LineEmbedding, MapError, NormalizedPair,
};
use crate::rat::{floor_int, Rat};

/// The two objects of the skeletal two-dimensional category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkelObject2 {
    Minkowski,
    Cylinder,
}

impl fmt::Display for SkelObject2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkelObject2::Minkowski => write!(f, "M"),
            SkelObject2::Cylinder => write!(f, "M/Z"),
        }
    }
}

/// Chirality selector for projections and chiral extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiralSign {
    Plus,
    Minus,
}

impl ChiralSign {
    pub fn opposite(self) -> ChiralSign {
        match self {
            ChiralSign::Plus => ChiralSign::Minus,
            ChiralSign::Minus => ChiralSign::Plus,
        }
    }
}

impl fmt::Display for ChiralSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiralSign::Plus => write!(f, "+"),
            ChiralSign::Minus => write!(f, "-"),
        }
    }
}

/// Morphism of the skeletal two-dimensional category.
///
/// There is no cylinder-to-plane variant: that Hom-set is empty. Morphisms
/// into the cylinder are stored in mod-Z normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkelMorphism2 {
    MToM {
        plus: LineEmbedding,
        minus: LineEmbedding,
    },
    MToCyl(NormalizedPair),
    CylToCyl {
        plus: CircleMapLift,
        minus: CircleMapLift,
    },
}

impl SkelMorphism2 {
    pub fn m_to_m(plus: LineEmbedding, minus: LineEmbedding) -> Self {
        SkelMorphism2::MToM { plus, minus }
    }

    /// Builds the mod-Z class of a bounded pair, normalizing on the way in.
    pub fn m_to_cyl(plus: BoundedLineEmbedding, minus: BoundedLineEmbedding) -> Self {
        let (pair, _) = normalize_pair_mod_z(&plus, &minus);
        SkelMorphism2::MToCyl(pair)
    }

    pub fn cyl_to_cyl(plus: CircleMapLift, minus: CircleMapLift) -> Self {
        SkelMorphism2::CylToCyl { plus, minus }
    }

    pub fn identity(o: SkelObject2) -> Self {
        match o {
            SkelObject2::Minkowski => {
                SkelMorphism2::m_to_m(LineEmbedding::identity(), LineEmbedding::identity())
            }
            SkelObject2::Cylinder => {
                SkelMorphism2::cyl_to_cyl(CircleMapLift::identity(), CircleMapLift::identity())
            }
        }
    }

    pub fn source(&self) -> SkelObject2 {
        match self {
            SkelMorphism2::MToM { .. } | SkelMorphism2::MToCyl(_) => SkelObject2::Minkowski,
            SkelMorphism2::CylToCyl { .. } => SkelObject2::Cylinder,
        }
    }

    pub fn target(&self) -> SkelObject2 {
        match self {
            SkelMorphism2::MToM { .. } => SkelObject2::Minkowski,
            SkelMorphism2::MToCyl(_) | SkelMorphism2::CylToCyl { .. } => SkelObject2::Cylinder,
        }
    }

    /// Image double cone of a plane-sourced morphism.
    pub fn image_cone(&self) -> Option<DoubleCone> {
        match self {
            SkelMorphism2::MToM { plus, minus } => {
                Some(DoubleCone::new(plus.image(), minus.image()))
            }
            SkelMorphism2::MToCyl(pair) => {
                Some(DoubleCone::new(pair.plus().image(), pair.minus().image()))
            }
            SkelMorphism2::CylToCyl { .. } => None,
        }
    }

    /// Applies the morphism to a point in lightcone coordinates. For
    /// cylinder-valued morphisms the result is a representative of the
    /// orbit; compare with `cyl_points_equal`.
    pub fn apply_point(&self, p: &(Rat, Rat)) -> (Rat, Rat) {
        match self {
            SkelMorphism2::MToM { plus, minus } => (plus.eval(&p.0), minus.eval(&p.1)),
            SkelMorphism2::MToCyl(pair) => (
                pair.plus().base().eval(&p.0),
                pair.minus().base().eval(&p.1),
            ),
            SkelMorphism2::CylToCyl { plus, minus } => (plus.eval(&p.0), minus.eval(&p.1)),
        }
    }
}

/// Equality of points of the cylinder presented in covering coordinates:
/// `(a+, a-) ~ (a+ + n, a- - n)`.
pub fn cyl_points_equal(a: &(Rat, Rat), b: &(Rat, Rat)) -> bool {
    let dplus = &b.0 - &a.0;
    dplus.is_integer() && (&b.1 - &a.1) == -dplus
}

/// Errors of the categorical layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkelError {
    #[error("source/target mismatch: expected {expected}, got {got}")]
    SourceTargetMismatch { expected: String, got: String },
    #[error("morphism kind does not match the given objects")]
    KindMismatch,
    #[error("there is no morphism from the cylinder to the plane")]
    NoSuchHom,
    #[error("the cylinder images do not intersect")]
    EmptyIntersection,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Composition in the two-dimensional skeletal category.
pub fn compose2(outer: &SkelMorphism2, inner: &SkelMorphism2) -> Result<SkelMorphism2, SkelError> {
    if inner.target() != outer.source() {
        return Err(SkelError::SourceTargetMismatch {
            expected: outer.source().to_string(),
            got: inner.target().to_string(),
        });
    }
    Ok(match (outer, inner) {
        (
            SkelMorphism2::MToM {
                plus: gp,
                minus: gm,
            },
            SkelMorphism2::MToM {
                plus: fp,
                minus: fm,
            },
        ) => SkelMorphism2::m_to_m(compose_line(gp, fp), compose_line(gm, fm)),
        (
            SkelMorphism2::MToCyl(pair),
            SkelMorphism2::MToM {
                plus: fp,
                minus: fm,
            },
        ) => {
            let plus = BoundedLineEmbedding::new(compose_line(pair.plus().base(), fp))
                .expect("restriction of a bounded image stays bounded");
            let minus = BoundedLineEmbedding::new(compose_line(pair.minus().base(), fm))
                .expect("restriction of a bounded image stays bounded");
            SkelMorphism2::m_to_cyl(plus, minus)
        }
        (
            SkelMorphism2::CylToCyl {
                plus: gp,
                minus: gm,
            },
            SkelMorphism2::MToCyl(pair),
        ) => SkelMorphism2::m_to_cyl(
            lift_after_bounded(gp, pair.plus())?,
            lift_after_bounded(gm, pair.minus())?,
        ),
        (
            SkelMorphism2::CylToCyl {
                plus: gp,
                minus: gm,
            },
            SkelMorphism2::CylToCyl {
                plus: fp,
                minus: fm,
            },
        ) => SkelMorphism2::cyl_to_cyl(
            CircleMapLift::compose(gp, fp),
            CircleMapLift::compose(gm, fm),
        ),
        _ => unreachable!("remaining combinations fail the object check"),
    })
}

/// Equivariant lifts carry intervals of length <= 1 to intervals of
/// length <= 1, so the composite stays a bounded embedding.
fn lift_after_bounded(
    lift: &CircleMapLift,
    f: &BoundedLineEmbedding,
) -> Result<BoundedLineEmbedding, SkelError> {
    let restricted = lift.restrict(&f.image())?;
    let composed = restricted.compose_after(f.base())?;
    Ok(BoundedLineEmbedding::new(composed).expect("equivariant lifts preserve width <= 1"))
}

/// Orthogonality in the two-dimensional skeletal category: causal
/// disjointness of image cones in the shared target; cylinder automorphisms
/// are orthogonal to nothing.
pub fn orthogonal2(m1: &SkelMorphism2, m2: &SkelMorphism2) -> Result<bool, SkelError> {
    if m1.target() != m2.target() {
        return Err(SkelError::SourceTargetMismatch {
            expected: m1.target().to_string(),
            got: m2.target().to_string(),
        });
    }
    Ok(match (m1, m2) {
        (SkelMorphism2::MToM { .. }, SkelMorphism2::MToM { .. }) => causally_disjoint_minkowski(
            &m1.image_cone().expect("plane morphism"),
            &m2.image_cone().expect("plane morphism"),
        ),
        (SkelMorphism2::MToCyl(_), SkelMorphism2::MToCyl(_)) => causally_disjoint_cylinder(
            &m1.image_cone().expect("plane morphism"),
            &m2.image_cone().expect("plane morphism"),
        )?,
        _ => false,
    })
}

/// A morphism is Cauchy exactly when the development functor sends it to an
/// isomorphism: both components surjective for plane endomorphisms, always
/// for cylinder automorphisms, never for plane-to-cylinder morphisms.
pub fn is_cauchy2(m: &SkelMorphism2) -> bool {
    match m {
        SkelMorphism2::MToM { plus, minus } => plus.is_surjective() && minus.is_surjective(),
        SkelMorphism2::MToCyl(_) => false,
        SkelMorphism2::CylToCyl { .. } => true,
    }
}

/// Two-sided inverse, defined exactly for the Cauchy endomorphisms.
pub fn inverse2(m: &SkelMorphism2) -> Option<SkelMorphism2> {
    match m {
        SkelMorphism2::MToM { plus, minus } => Some(SkelMorphism2::m_to_m(
            plus.inverse_total().ok()?,
            minus.inverse_total().ok()?,
        )),
        SkelMorphism2::MToCyl(_) => None,
        SkelMorphism2::CylToCyl { plus, minus } => {
            Some(SkelMorphism2::cyl_to_cyl(plus.invert(), minus.invert()))
        }
    }
}

/// The two objects of the skeletal one-dimensional category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkelObject1 {
    Line,
    Circle,
}

impl fmt::Display for SkelObject1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkelObject1::Line => write!(f, "R"),
            SkelObject1::Circle => write!(f, "T"),
        }
    }
}

/// Morphism of the skeletal one-dimensional category; no circle-to-line
/// variant exists. Circle-valued embeddings are stored in their own mod-Z
/// normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkelMorphism1 {
    LineToLine(LineEmbedding),
    LineToCircle(BoundedLineEmbedding),
    CircleToCircle(CircleMapLift),
}

impl SkelMorphism1 {
    pub fn line_to_circle(h: BoundedLineEmbedding) -> Self {
        let (normal, _) = normalize_single_mod_z(&h);
        SkelMorphism1::LineToCircle(normal)
    }

    pub fn identity(o: SkelObject1) -> Self {
        match o {
            SkelObject1::Line => SkelMorphism1::LineToLine(LineEmbedding::identity()),
            SkelObject1::Circle => SkelMorphism1::CircleToCircle(CircleMapLift::identity()),
        }
    }

    pub fn source(&self) -> SkelObject1 {
        match self {
            SkelMorphism1::LineToLine(_) | SkelMorphism1::LineToCircle(_) => SkelObject1::Line,
            SkelMorphism1::CircleToCircle(_) => SkelObject1::Circle,
        }
    }

    pub fn target(&self) -> SkelObject1 {
        match self {
            SkelMorphism1::LineToLine(_) => SkelObject1::Line,
            SkelMorphism1::LineToCircle(_) | SkelMorphism1::CircleToCircle(_) => {
                SkelObject1::Circle
            }
        }
    }

    pub fn image(&self) -> Option<Interval> {
        match self {
            SkelMorphism1::LineToLine(f) => Some(f.image()),
            SkelMorphism1::LineToCircle(h) => Some(h.image()),
            SkelMorphism1::CircleToCircle(_) => None,
        }
    }
}

/// Composition in the one-dimensional skeletal category.
pub fn compose1(outer: &SkelMorphism1, inner: &SkelMorphism1) -> Result<SkelMorphism1, SkelError> {
    if inner.target() != outer.source() {
        return Err(SkelError::SourceTargetMismatch {
            expected: outer.source().to_string(),
            got: inner.target().to_string(),
        });
    }
    Ok(match (outer, inner) {
        (SkelMorphism1::LineToLine(g), SkelMorphism1::LineToLine(f)) => {
            SkelMorphism1::LineToLine(compose_line(g, f))
        }
        (SkelMorphism1::LineToCircle(h), SkelMorphism1::LineToLine(f)) => {
            let composed = BoundedLineEmbedding::new(compose_line(h.base(), f))
                .expect("restriction of a bounded image stays bounded");
            SkelMorphism1::line_to_circle(composed)
        }
        (SkelMorphism1::CircleToCircle(g), SkelMorphism1::LineToCircle(h)) => {
            let restricted = g.restrict(&h.image())?;
            let composed = BoundedLineEmbedding::new(restricted.compose_after(h.base())?)
                .expect("equivariant lifts preserve width <= 1");
            SkelMorphism1::line_to_circle(composed)
        }
        (SkelMorphism1::CircleToCircle(g2), SkelMorphism1::CircleToCircle(g1)) => {
            SkelMorphism1::CircleToCircle(CircleMapLift::compose(g2, g1))
        }
        _ => unreachable!("remaining combinations fail the object check"),
    })
}

/// Orthogonality in the one-dimensional skeletal category: disjoint images
/// on the line, translate-disjoint images into the circle, and nothing for
/// circle automorphisms.
pub fn orthogonal1(m1: &SkelMorphism1, m2: &SkelMorphism1) -> Result<bool, SkelError> {
    if m1.target() != m2.target() {
        return Err(SkelError::SourceTargetMismatch {
            expected: m1.target().to_string(),
            got: m2.target().to_string(),
        });
    }
    Ok(match (m1, m2) {
        (SkelMorphism1::LineToLine(f), SkelMorphism1::LineToLine(g)) => {
            f.image().intersect(&g.image()).is_none()
        }
        (SkelMorphism1::LineToCircle(h1), SkelMorphism1::LineToCircle(h2)) => {
            translate_disjoint(&h1.image(), &h2.image())
        }
        _ => false,
    })
}

/// No integer translate of the second interval meets the first: the open
/// window of admissible `n` contains no integer.
fn translate_disjoint(i1: &Interval, i2: &Interval) -> bool {
    let (a1, b1) = (finite(i1.lo()), finite(i1.hi()));
    let (a2, b2) = (finite(i2.lo()), finite(i2.hi()));
    // (i2 + n) meets i1 iff  a1 - b2 < n < b1 - a2
    let lo = &a1 - &b2;
    let hi = &b1 - &a2;
    let n = floor_int(&lo) + 1;
    !(Rat::from_integer(n) < hi)
}

fn finite(e: &crate::geometry::ExtendedRational) -> Rat {
    e.finite()
        .expect("bounded embeddings have finite endpoints")
        .clone()
}

pub fn is_cauchy1(m: &SkelMorphism1) -> bool {
    match m {
        SkelMorphism1::LineToLine(f) => f.is_surjective(),
        SkelMorphism1::LineToCircle(_) => false,
        SkelMorphism1::CircleToCircle(_) => true,
    }
}

pub fn inverse1(m: &SkelMorphism1) -> Option<SkelMorphism1> {
    match m {
        SkelMorphism1::LineToLine(f) => Some(SkelMorphism1::LineToLine(f.inverse_total().ok()?)),
        SkelMorphism1::LineToCircle(_) => None,
        SkelMorphism1::CircleToCircle(g) => Some(SkelMorphism1::CircleToCircle(g.invert())),
    }
}

/// Projection functor onto one chirality: objects map plane -> line and
/// cylinder -> circle; morphisms forget the opposite component. The
/// circle-valued factor is renormalized in its own mod-Z class.
pub fn pi_project(m: &SkelMorphism2, sign: ChiralSign) -> SkelMorphism1 {
    match m {
        SkelMorphism2::MToM { plus, minus } => SkelMorphism1::LineToLine(match sign {
            ChiralSign::Plus => plus.clone(),
            ChiralSign::Minus => minus.clone(),
        }),
        SkelMorphism2::MToCyl(pair) => SkelMorphism1::line_to_circle(match sign {
            ChiralSign::Plus => pair.plus().clone(),
            ChiralSign::Minus => pair.minus().clone(),
        }),
        SkelMorphism2::CylToCyl { plus, minus } => SkelMorphism1::CircleToCircle(match sign {
            ChiralSign::Plus => plus.clone(),
            ChiralSign::Minus => minus.clone(),
        }),
    }
}

pub fn pi_project_object(o: SkelObject2) -> SkelObject1 {
    match o {
        SkelObject2::Minkowski => SkelObject1::Line,
        SkelObject2::Cylinder => SkelObject1::Circle,
    }
}

/// Object of the double-cone category: a double cone in the plane or the
/// full cylinder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C2DObject {
    Cone(DoubleCone),
    Cylinder,
}

impl fmt::Display for C2DObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C2DObject::Cone(dc) => write!(f, "{dc}"),
            C2DObject::Cylinder => write!(f, "M/Z"),
        }
    }
}

/// The skeletalizing isomorphism attached to an object: for a cone, the
/// factor charts from the line onto the cone's intervals (the iso to the
/// skeleton is their inverse); the cylinder is already skeletal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkeletalizeIso {
    Cone {
        chart_plus: LineEmbedding,
        chart_minus: LineEmbedding,
    },
    CylinderIdentity,
}

impl SkeletalizeIso {
    /// Applies the iso (cone point -> plane point, or identity).
    pub fn apply_point(&self, p: &(Rat, Rat)) -> Result<(Rat, Rat), SkelError> {
        match self {
            SkeletalizeIso::Cone {
                chart_plus,
                chart_minus,
            } => Ok((
                chart_plus.invert_value(&p.0)?,
                chart_minus.invert_value(&p.1)?,
            )),
            SkeletalizeIso::CylinderIdentity => Ok(p.clone()),
        }
    }
}

/// Deterministic skeletalization witness for an object of the double-cone
/// category.
pub fn skeletalize_object(o: &C2DObject) -> (SkelObject2, SkeletalizeIso) {
    match o {
        C2DObject::Cone(dc) => (
            SkelObject2::Minkowski,
            SkeletalizeIso::Cone {
                chart_plus: chart_onto(&dc.iplus),
                chart_minus: chart_onto(&dc.iminus),
            },
        ),
        C2DObject::Cylinder => (SkelObject2::Cylinder, SkeletalizeIso::CylinderIdentity),
    }
}

/// Morphism of the double-cone category, carried by its skeletal conjugate:
/// the actual map is `chart_target ∘ skel ∘ chart_source⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C2DMorphism {
    source: C2DObject,
    target: C2DObject,
    skel: SkelMorphism2,
}

impl C2DMorphism {
    pub fn new(
        source: C2DObject,
        target: C2DObject,
        skel: SkelMorphism2,
    ) -> Result<Self, SkelError> {
        let ok = match (&source, &target, &skel) {
            (C2DObject::Cone(_), C2DObject::Cone(_), SkelMorphism2::MToM { .. }) => true,
            (C2DObject::Cone(_), C2DObject::Cylinder, SkelMorphism2::MToCyl(_)) => true,
            (C2DObject::Cylinder, C2DObject::Cylinder, SkelMorphism2::CylToCyl { .. }) => true,
            (C2DObject::Cylinder, C2DObject::Cone(_), _) => return Err(SkelError::NoSuchHom),
            _ => false,
        };
        if !ok {
            return Err(SkelError::KindMismatch);
        }
        Ok(C2DMorphism {
            source,
            target,
            skel,
        })
    }

    pub fn identity(o: &C2DObject) -> Self {
        let skel = match o {
            C2DObject::Cone(_) => SkelMorphism2::identity(SkelObject2::Minkowski),
            C2DObject::Cylinder => SkelMorphism2::identity(SkelObject2::Cylinder),
        };
        C2DMorphism {
            source: o.clone(),
            target: o.clone(),
            skel,
        }
    }

    pub fn source(&self) -> &C2DObject {
        &self.source
    }

    pub fn target(&self) -> &C2DObject {
        &self.target
    }

    /// The skeletal conjugate; this is the action of the equivalence onto
    /// the two-object skeleton.
    pub fn skel(&self) -> &SkelMorphism2 {
        &self.skel
    }

    /// Image of the morphism inside its target, in ambient coordinates.
    pub fn image_in_target(&self) -> Option<DoubleCone> {
        let cone = self.skel.image_cone()?;
        match &self.target {
            C2DObject::Cone(dc) => {
                let cp = chart_onto(&dc.iplus);
                let cm = chart_onto(&dc.iminus);
                Some(DoubleCone::new(
                    cp.map_interval(&cone.iplus),
                    cm.map_interval(&cone.iminus),
                ))
            }
            C2DObject::Cylinder => Some(cone),
        }
    }

    pub fn is_cauchy(&self) -> bool {
        is_cauchy2(&self.skel)
    }
}

/// Composition in the double-cone category: structural object match plus
/// skeletal composition.
pub fn compose_c2d(outer: &C2DMorphism, inner: &C2DMorphism) -> Result<C2DMorphism, SkelError> {
    if inner.target != outer.source {
        return Err(SkelError::SourceTargetMismatch {
            expected: outer.source.to_string(),
            got: inner.target.to_string(),
        });
    }
    C2DMorphism::new(
        inner.source.clone(),
        outer.target.clone(),
        compose2(&outer.skel, &inner.skel)?,
    )
}

/// Orthogonality in the double-cone category, computed in the target's
/// ambient coordinates. This is an independent route from `orthogonal2` on
/// the skeletal conjugates; the two must agree (orthogonality reflection of
/// the skeletalization equivalence).
pub fn orthogonal_c2d(m1: &C2DMorphism, m2: &C2DMorphism) -> Result<bool, SkelError> {
    if m1.target != m2.target {
        return Err(SkelError::SourceTargetMismatch {
            expected: m1.target.to_string(),
            got: m2.target.to_string(),
        });
    }
    match (m1.image_in_target(), m2.image_in_target()) {
        (Some(c1), Some(c2)) => match &m1.target {
            C2DObject::Cone(_) => Ok(causally_disjoint_minkowski(&c1, &c2)),
            C2DObject::Cylinder => match (&m1.skel, &m2.skel) {
                (SkelMorphism2::MToCyl(_), SkelMorphism2::MToCyl(_)) => {
                    Ok(causally_disjoint_cylinder(&c1, &c2)?)
                }
                _ => Ok(false),
            },
        },
        _ => Ok(false),
    }
}

/// A fragment morphism localized by the development functor: the same pair,
/// now acting between Cauchy developments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedMorphism {
    pub source: DoubleCone,
    pub target: C2DObject,
    pub map: SkelMorphism2,
}

/// Applies the development functor to a plane-sourced morphism restricted
/// to a cone-union region with connected projections.
pub fn d_localize(m: &SkelMorphism2, region: &ConeUnion) -> Result<LocalizedMorphism, SkelError> {
    let dev = cauchy_development(region)?;
    match m {
        SkelMorphism2::MToM { plus, minus } => {
            let target = DoubleCone::new(
                plus.map_interval(&dev.iplus),
                minus.map_interval(&dev.iminus),
            );
            Ok(LocalizedMorphism {
                source: dev,
                target: C2DObject::Cone(target),
                map: m.clone(),
            })
        }
        SkelMorphism2::MToCyl(_) => Ok(LocalizedMorphism {
            source: dev,
            target: C2DObject::Cylinder,
            map: m.clone(),
        }),
        SkelMorphism2::CylToCyl { .. } => Err(SkelError::KindMismatch),
    }
}

impl LocalizedMorphism {
    /// Conjugates by the skeletalization charts, landing in the two-object
    /// skeleton.
    pub fn to_c2d(&self) -> Result<C2DMorphism, SkelError> {
        let chart_p = chart_onto(&self.source.iplus);
        let chart_m = chart_onto(&self.source.iminus);
        let skel = match (&self.map, &self.target) {
            (SkelMorphism2::MToM { plus, minus }, C2DObject::Cone(tc)) => {
                let conj_p = chart_onto(&tc.iplus)
                    .invert_on_image()
                    .compose_after(&compose_line(plus, &chart_p))?;
                let conj_m = chart_onto(&tc.iminus)
                    .invert_on_image()
                    .compose_after(&compose_line(minus, &chart_m))?;
                SkelMorphism2::m_to_m(conj_p, conj_m)
            }
            (SkelMorphism2::MToCyl(pair), C2DObject::Cylinder) => {
                let plus = BoundedLineEmbedding::new(compose_line(pair.plus().base(), &chart_p))
                    .expect("restriction of a bounded image stays bounded");
                let minus = BoundedLineEmbedding::new(compose_line(pair.minus().base(), &chart_m))
                    .expect("restriction of a bounded image stays bounded");
                SkelMorphism2::m_to_cyl(plus, minus)
            }
            _ => return Err(SkelError::KindMismatch),
        };
        C2DMorphism::new(
            C2DObject::Cone(self.source.clone()),
            self.target.clone(),
            skel,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps1d::chart_onto_bounded;
    use crate::rat::{int, rat};
    use crate::sampling;
    use rand::Rng;

    fn unit_interval(lo: Rat, hi: Rat) -> Interval {
        Interval::bounded(lo, hi).unwrap()
    }

    fn mtocyl_images(pl: Rat, ph: Rat, ml: Rat, mh: Rat) -> SkelMorphism2 {
        SkelMorphism2::m_to_cyl(
            chart_onto_bounded(&unit_interval(pl, ph)).unwrap(),
            chart_onto_bounded(&unit_interval(ml, mh)).unwrap(),
        )
    }

    fn mtom_images(pl: i64, ph: i64, ml: i64, mh: i64) -> SkelMorphism2 {
        SkelMorphism2::m_to_m(
            chart_onto(&unit_interval(int(pl), int(ph))),
            chart_onto(&unit_interval(int(ml), int(mh))),
        )
    }

    #[test]
    fn identity_is_neutral_for_composition() {
        let mut rng = sampling::seeded(40);
        for _ in 0..30 {
            let m = sampling::skel2(&mut rng);
            let id_src = SkelMorphism2::identity(m.source());
            let id_tgt = SkelMorphism2::identity(m.target());
            assert_eq!(compose2(&m, &id_src).unwrap(), m);
            assert_eq!(compose2(&id_tgt, &m).unwrap(), m);
        }
    }

    #[test]
    fn rotation_after_mtocyl_shifts_images() {
        let m = mtocyl_images(int(0), rat(1, 2), int(0), rat(1, 2));
        let rot = SkelMorphism2::cyl_to_cyl(
            CircleMapLift::rotation(&rat(1, 4)),
            CircleMapLift::rotation(&rat(1, 4)),
        );
        let composed = compose2(&rot, &m).unwrap();
        let expected_cone = DoubleCone::new(
            unit_interval(rat(1, 4), rat(3, 4)),
            unit_interval(rat(1, 4), rat(3, 4)),
        );
        assert_eq!(composed.image_cone().unwrap(), expected_cone);
        // pointwise on a rational grid, modulo the cylinder identification
        for k in -12..12i64 {
            for j in -12..12i64 {
                let p = (rat(k, 5), rat(j, 5));
                let lhs = composed.apply_point(&p);
                let rhs = rot.apply_point(&m.apply_point(&p));
                assert!(cyl_points_equal(&lhs, &rhs));
            }
        }
    }

    #[test]
    fn composition_is_mod_z_coherent() {
        // composing shifted representatives and renormalizing equals
        // composing the normal forms
        let mut rng = sampling::seeded(41);
        for _ in 0..20 {
            let g = sampling::cyl_auto(&mut rng);
            let plus = chart_onto_bounded(&sampling::short_interval(&mut rng, 2)).unwrap();
            let minus = chart_onto_bounded(&sampling::short_interval(&mut rng, 2)).unwrap();
            let normal =
                compose2(&g, &SkelMorphism2::m_to_cyl(plus.clone(), minus.clone())).unwrap();
            for k in -2..=2i64 {
                let k = num_bigint::BigInt::from(k);
                let shifted = SkelMorphism2::m_to_cyl(
                    plus.translate_by_int(&k),
                    minus.translate_by_int(&(-k.clone())),
                );
                assert_eq!(compose2(&g, &shifted).unwrap(), normal);
            }
        }
    }

    #[test]
    fn orthogonality_matches_relations() {
        let spacelike = (mtom_images(0, 1, 0, 1), mtom_images(2, 3, -3, -2));
        assert_eq!(orthogonal2(&spacelike.0, &spacelike.1), Ok(true));

        let cyl_spacelike = (
            mtocyl_images(int(0), rat(1, 4), int(0), rat(1, 4)),
            mtocyl_images(rat(1, 2), rat(3, 4), rat(-3, 4), rat(-1, 2)),
        );
        assert_eq!(orthogonal2(&cyl_spacelike.0, &cyl_spacelike.1), Ok(true));

        let mut rng = sampling::seeded(42);
        for _ in 0..20 {
            let g = sampling::cyl_auto(&mut rng);
            let other = if rng.gen_bool(0.5) {
                sampling::m_to_cyl(&mut rng)
            } else {
                sampling::cyl_auto(&mut rng)
            };
            assert_eq!(orthogonal2(&g, &other), Ok(false));
            assert_eq!(orthogonal2(&other, &g), Ok(false));
        }

        // mismatched targets are an error
        let m = mtom_images(0, 1, 0, 1);
        let c = mtocyl_images(int(0), rat(1, 4), int(0), rat(1, 4));
        assert!(orthogonal2(&m, &c).is_err());
    }

    #[test]
    fn orthogonality_axioms_hold_on_samples() {
        let mut rng = sampling::seeded(43);
        for _ in 0..100 {
            let (a, b) = sampling::orthogonal_pair2(&mut rng);
            // symmetry
            assert_eq!(orthogonal2(&a, &b), Ok(true));
            assert_eq!(orthogonal2(&b, &a), Ok(true));
            // composition stability: g . a . h1  vs  g . b . h2
            let g = match a.target() {
                SkelObject2::Minkowski => sampling::m_to_m(&mut rng, false),
                SkelObject2::Cylinder => sampling::cyl_auto(&mut rng),
            };
            let h1 = sampling::m_to_m(&mut rng, false);
            let h2 = sampling::m_to_m(&mut rng, false);
            let left = compose2(&g, &compose2(&a, &h1).unwrap()).unwrap();
            let right = compose2(&g, &compose2(&b, &h2).unwrap()).unwrap();
            assert_eq!(orthogonal2(&left, &right), Ok(true), "stability failed");
        }
    }

    #[test]
    fn one_dimensional_relations() {
        let f = SkelMorphism1::LineToLine(chart_onto(&unit_interval(int(0), int(1))));
        let g = SkelMorphism1::LineToLine(chart_onto(&unit_interval(int(2), int(3))));
        assert_eq!(orthogonal1(&f, &g), Ok(true));

        let h1 = SkelMorphism1::line_to_circle(
            chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap(),
        );
        let h2 = SkelMorphism1::line_to_circle(
            chart_onto_bounded(&unit_interval(rat(1, 2), rat(3, 4))).unwrap(),
        );
        assert_eq!(orthogonal1(&h1, &h2), Ok(true));
        // overlapping translates
        let h3 = SkelMorphism1::line_to_circle(
            chart_onto_bounded(&unit_interval(rat(9, 8), rat(11, 8))).unwrap(),
        );
        assert_eq!(orthogonal1(&h1, &h3), Ok(false));

        let mut rng = sampling::seeded(44);
        let g1 = SkelMorphism1::CircleToCircle(sampling::circle_lift(&mut rng));
        assert_eq!(
            orthogonal1(&g1, &SkelMorphism1::identity(SkelObject1::Circle)),
            Ok(false)
        );
    }

    #[test]
    fn projection_is_an_orthogonal_functor() {
        let mut rng = sampling::seeded(45);
        for _ in 0..60 {
            let (outer, inner) = sampling::composable_pair2(&mut rng);
            let comp = compose2(&outer, &inner).unwrap();
            for sign in [ChiralSign::Plus, ChiralSign::Minus] {
                let lhs = pi_project(&comp, sign);
                let rhs = compose1(&pi_project(&outer, sign), &pi_project(&inner, sign)).unwrap();
                assert_eq!(lhs, rhs, "functor law for {sign}");
            }
        }
        for _ in 0..60 {
            let (a, b) = sampling::orthogonal_pair2(&mut rng);
            for sign in [ChiralSign::Plus, ChiralSign::Minus] {
                assert_eq!(
                    orthogonal1(&pi_project(&a, sign), &pi_project(&b, sign)),
                    Ok(true),
                    "projection must preserve orthogonality"
                );
            }
        }
    }

    #[test]
    fn projection_of_mtom_keeps_the_chosen_factor() {
        let plus = chart_onto(&unit_interval(int(0), int(1)));
        let minus = chart_onto(&unit_interval(int(5), int(7)));
        let m = SkelMorphism2::m_to_m(plus.clone(), minus.clone());
        assert_eq!(
            pi_project(&m, ChiralSign::Plus),
            SkelMorphism1::LineToLine(plus)
        );
        assert_eq!(
            pi_project(&m, ChiralSign::Minus),
            SkelMorphism1::LineToLine(minus)
        );
    }

    #[test]
    fn projection_of_mtocyl_renormalizes_its_own_class() {
        let m = mtocyl_images(rat(6, 5), rat(3, 2), int(0), rat(1, 2));
        let SkelMorphism1::LineToCircle(h) = pi_project(&m, ChiralSign::Minus) else {
            panic!("minus projection of a cylinder-valued morphism")
        };
        let lo = h.image_lo();
        assert!(
            lo >= int(0) && lo < int(1),
            "normal form anchors the image in [0,1)"
        );
    }

    #[test]
    fn composition_is_associative_in_both_categories() {
        let mut rng = sampling::seeded(39);
        for _ in 0..40 {
            // composable triple ending wherever the chain leads
            let a = sampling::m_to_m(&mut rng, false);
            let b = sampling::m_to_m(&mut rng, false);
            let c = match rng.gen_range(0..3) {
                0 => sampling::m_to_m(&mut rng, false),
                1 => sampling::m_to_cyl(&mut rng),
                _ => {
                    let m = sampling::m_to_cyl(&mut rng);
                    compose2(&sampling::cyl_auto(&mut rng), &m).unwrap()
                }
            };
            let left = compose2(&c, &compose2(&b, &a).unwrap()).unwrap();
            let right = compose2(&compose2(&c, &b).unwrap(), &a).unwrap();
            assert_eq!(left, right, "two-dimensional associativity");
            for sign in [ChiralSign::Plus, ChiralSign::Minus] {
                let (pa, pb, pc) = (
                    pi_project(&a, sign),
                    pi_project(&b, sign),
                    pi_project(&c, sign),
                );
                let l1 = compose1(&pc, &compose1(&pb, &pa).unwrap()).unwrap();
                let r1 = compose1(&compose1(&pc, &pb).unwrap(), &pa).unwrap();
                assert_eq!(l1, r1, "one-dimensional associativity");
            }
        }
    }

    #[test]
    fn cauchy_detection_and_closure() {
        assert!(is_cauchy2(&SkelMorphism2::identity(SkelObject2::Minkowski)));
        let bounded_plus = SkelMorphism2::m_to_m(
            chart_onto(&unit_interval(int(0), int(1))),
            LineEmbedding::identity(),
        );
        assert!(!is_cauchy2(&bounded_plus));
        let mut rng = sampling::seeded(46);
        for _ in 0..30 {
            let c = sampling::cyl_auto(&mut rng);
            assert!(is_cauchy2(&c), "cylinder automorphisms are Cauchy");
            assert!(!is_cauchy2(&sampling::m_to_cyl(&mut rng)));
        }
        // closed under composition, contains isomorphisms
        for _ in 0..30 {
            let a = sampling::cauchy_morphism2(&mut rng);
            let b = match a.source() {
                SkelObject2::Minkowski => SkelMorphism2::m_to_m(
                    sampling::pl_surjection(&mut rng),
                    sampling::pl_surjection(&mut rng),
                ),
                SkelObject2::Cylinder => sampling::cyl_auto(&mut rng),
            };
            let comp = compose2(&a, &b).unwrap();
            assert!(is_cauchy2(&comp));
            let inv = inverse2(&a).expect("Cauchy morphisms invert");
            assert_eq!(
                compose2(&inv, &a).unwrap(),
                SkelMorphism2::identity(a.source())
            );
            assert_eq!(
                compose2(&a, &inv).unwrap(),
                SkelMorphism2::identity(a.target())
            );
        }
    }

    #[test]
    fn skeletalization_witnesses() {
        let (obj, iso) = skeletalize_object(&C2DObject::Cylinder);
        assert_eq!(obj, SkelObject2::Cylinder);
        assert_eq!(iso, SkeletalizeIso::CylinderIdentity);

        let full = C2DObject::Cone(DoubleCone::new(
            Interval::full_line(),
            Interval::full_line(),
        ));
        let (obj, iso) = skeletalize_object(&full);
        assert_eq!(obj, SkelObject2::Minkowski);
        match iso {
            SkeletalizeIso::Cone {
                chart_plus,
                chart_minus,
            } => {
                assert_eq!(chart_plus, LineEmbedding::identity());
                assert_eq!(chart_minus, LineEmbedding::identity());
            }
            SkeletalizeIso::CylinderIdentity => panic!("cone skeletalizes through charts"),
        }

        let unit = C2DObject::Cone(DoubleCone::new(
            unit_interval(int(0), int(1)),
            unit_interval(int(0), int(1)),
        ));
        let (_, iso) = skeletalize_object(&unit);
        let SkeletalizeIso::Cone {
            chart_plus,
            chart_minus,
        } = &iso
        else {
            panic!()
        };
        for k in 1..100i64 {
            let p = (rat(k, 101), rat(k, 103));
            let q = iso.apply_point(&p).unwrap();
            assert_eq!(chart_plus.eval(&q.0), p.0);
            assert_eq!(chart_minus.eval(&q.1), p.1);
        }
    }

    #[test]
    fn development_of_identity_on_a_cone_is_the_cone() {
        let dc = DoubleCone::new(unit_interval(int(0), int(1)), unit_interval(int(0), int(1)));
        let region = ConeUnion::singleton(dc.clone());
        let id = SkelMorphism2::identity(SkelObject2::Minkowski);
        let loc = d_localize(&id, &region).unwrap();
        assert_eq!(loc.source, dc);
        assert_eq!(loc.target, C2DObject::Cone(dc));
        assert_eq!(loc.map, id);
    }

    #[test]
    fn development_hulls_the_union_and_is_natural() {
        let region = ConeUnion::new(vec![
            DoubleCone::new(unit_interval(int(0), int(1)), unit_interval(int(0), int(1))),
            DoubleCone::new(
                unit_interval(rat(1, 2), int(2)),
                unit_interval(rat(1, 2), int(2)),
            ),
        ])
        .unwrap();
        let m = SkelMorphism2::m_to_m(
            LineEmbedding::affine(&int(2), &int(1)).unwrap(),
            LineEmbedding::identity(),
        );
        let loc = d_localize(&m, &region).unwrap();
        assert_eq!(
            loc.source,
            DoubleCone::new(unit_interval(int(0), int(2)), unit_interval(int(0), int(2)))
        );
        assert_eq!(
            loc.target,
            C2DObject::Cone(DoubleCone::new(
                unit_interval(int(1), int(5)),
                unit_interval(int(0), int(2)),
            ))
        );
        // unit naturality: for interior points the two routes agree exactly
        // and memberships are preserved
        let mut rng = sampling::seeded(47);
        for _ in 0..100 {
            let idx = rng.gen_range(0..region.cones().len());
            let dc = &region.cones()[idx];
            let p = (
                sample_interior(&mut rng, &dc.iplus),
                sample_interior(&mut rng, &dc.iminus),
            );
            let through_map = m.apply_point(&p);
            let C2DObject::Cone(target) = &loc.target else {
                panic!()
            };
            assert!(
                loc.source.contains(&p),
                "unit includes the region in its development"
            );
            assert!(target.contains(&through_map));
            assert_eq!(loc.map.apply_point(&p), through_map);
        }
    }

    fn sample_interior(rng: &mut rand_chacha::ChaCha8Rng, iv: &Interval) -> Rat {
        let lo = iv.lo().finite().unwrap().clone();
        let hi = iv.hi().finite().unwrap().clone();
        let k = rng.gen_range(1..64i64);
        &lo + (&hi - &lo) * rat(k, 64)
    }

    #[test]
    fn development_rejects_disconnected_regions() {
        let region = ConeUnion::new(vec![
            DoubleCone::new(unit_interval(int(0), int(1)), unit_interval(int(0), int(1))),
            DoubleCone::new(unit_interval(int(3), int(4)), unit_interval(int(3), int(4))),
        ])
        .unwrap();
        let id = SkelMorphism2::identity(SkelObject2::Minkowski);
        assert!(matches!(
            d_localize(&id, &region),
            Err(SkelError::Geometry(
                GeometryError::DisconnectedProjection { .. }
            ))
        ));
    }

    #[test]
    fn c2d_orthogonality_reflects_the_skeletal_relation() {
        let mut rng = sampling::seeded(48);
        let mut checked = 0;
        for _ in 0..300 {
            // random cone targets and morphisms between them
            let target = C2DObject::Cone(sampling::double_cone(&mut rng, 3));
            let skel1 = sampling::m_to_m(&mut rng, false);
            let skel2m = sampling::m_to_m(&mut rng, false);
            let source = C2DObject::Cone(sampling::double_cone(&mut rng, 3));
            let m1 = C2DMorphism::new(source.clone(), target.clone(), skel1).unwrap();
            let m2 = C2DMorphism::new(source, target, skel2m).unwrap();
            let via_ambient = orthogonal_c2d(&m1, &m2).unwrap();
            let via_skeleton = orthogonal2(m1.skel(), m2.skel()).unwrap();
            assert_eq!(via_ambient, via_skeleton);
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn fragment_morphisms_localize_and_skeletalize() {
        let mut rng = sampling::seeded(49);
        for _ in 0..30 {
            let region = sampling::overlapping_union(&mut rng);
            let map = sampling::m_to_m(&mut rng, true);
            let dev = cauchy_development(&region).unwrap();
            let SkelMorphism2::MToM { plus, minus } = &map else {
                panic!()
            };
            let image = ConeUnion::singleton(DoubleCone::new(
                plus.map_interval(&dev.iplus),
                minus.map_interval(&dev.iminus),
            ));
            let frag = FragMorphism2::new(map.clone(), region, FragRegion::Union(image)).unwrap();
            // co-restrictions onto the image are Cauchy, and the skeletal
            // conjugate is an isomorphism
            assert_eq!(frag.is_cauchy(), Ok(true));
            let skel = frag.to_skel().unwrap();
            assert!(is_cauchy2(&skel), "development sends Cauchy to iso");
        }
        // a strict inclusion is not Cauchy
        let small = ConeUnion::singleton(DoubleCone::new(
            unit_interval(int(0), int(1)),
            unit_interval(int(0), int(1)),
        ));
        let big = ConeUnion::singleton(DoubleCone::new(
            unit_interval(int(-1), int(2)),
            unit_interval(int(0), int(1)),
        ));
        let inclusion = FragMorphism2::new(
            SkelMorphism2::identity(SkelObject2::Minkowski),
            small,
            FragRegion::Union(big),
        )
        .unwrap();
        assert_eq!(inclusion.is_cauchy(), Ok(false));
        let skel = inclusion.to_skel().unwrap();
        assert!(!is_cauchy2(&skel));
    }

    #[test]
    fn zigzag_on_named_windows_commutes() {
        let h = chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap();
        let f1 = chart_onto_bounded(&unit_interval(int(0), rat(1, 2))).unwrap();
        let f2 = chart_onto_bounded(&unit_interval(rat(1, 4), rat(3, 4))).unwrap();
        let zz = build_zigzag(&h, &f1, &f2).unwrap();
        assert!(zz.cells_commute_structurally().unwrap());
        let mut rng = sampling::seeded(50);
        assert!(zz.cells_commute_sampled(50, &mut rng));
        // the shared window is (1/4, 1/2)
        let SkelMorphism2::MToCyl(pair) = &zz.mid_left else {
            panic!()
        };
        assert_eq!(pair.minus().image(), unit_interval(rat(1, 4), rat(1, 2)));
    }

    #[test]
    fn zigzag_with_equal_objects_uses_identity_compatible_bridge() {
        let h = chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap();
        let f = chart_onto_bounded(&unit_interval(int(0), rat(1, 2))).unwrap();
        let zz = build_zigzag(&h, &f, &f).unwrap();
        assert!(zz.cells_commute_structurally().unwrap());
        assert_eq!(zz.bridge, SkelMorphism2::identity(SkelObject2::Minkowski));
    }

    #[test]
    fn zigzag_rejects_disjoint_windows() {
        let h = chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap();
        let f1 = chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap();
        let f2 = chart_onto_bounded(&unit_interval(rat(1, 2), rat(3, 4))).unwrap();
        assert!(matches!(
            build_zigzag(&h, &f1, &f2),
            Err(SkelError::EmptyIntersection)
        ));
    }

    #[test]
    fn chains_bridge_disjoint_windows() {
        let h = chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap();
        let f1 = chart_onto_bounded(&unit_interval(int(0), rat(1, 4))).unwrap();
        let f2 = chart_onto_bounded(&unit_interval(rat(1, 2), rat(3, 4))).unwrap();
        let chain = connect_chain(&h, &f1, &f2).unwrap();
        assert!(chain.len() >= 2);
        assert!(chain.len() <= chain_length_bound(&f1, &f2));
        let mut rng = sampling::seeded(51);
        for link in &chain {
            assert!(link.cells_commute_structurally().unwrap());
            assert!(link.cells_commute_sampled(20, &mut rng));
        }
        // neighboring links share their middle object
        for w in chain.windows(2) {
            assert_eq!(w[0].outer_right, w[1].outer_left);
        }
        // overlapping inputs give a single link
        let near = chart_onto_bounded(&unit_interval(rat(1, 8), rat(3, 8))).unwrap();
        assert_eq!(connect_chain(&h, &f1, &near).unwrap().len(), 1);
        // stepping works leftwards too
        let left_chain = connect_chain(&h, &f2, &f1).unwrap();
        assert!(left_chain.len() >= 2);
        for link in &left_chain {
            assert!(link.cells_commute_structurally().unwrap());
        }
    }
}
