//! Cone-union fragment of the ambient spacetime category: plane-sourced
//! morphisms restricted to regions, with just enough structure to feed the
//! development functor and its law tests.

use crate::geometry::{
    cauchy_development, causally_disjoint_cylinder, causally_disjoint_minkowski, ConeUnion,
    DoubleCone,
};

use super::{compose2, d_localize, C2DObject, LocalizedMorphism, SkelError, SkelMorphism2};

/// Target of a fragment morphism: another cone-union region of the plane or
/// the full cylinder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FragRegion {
    Union(ConeUnion),
    Cylinder,
}

/// A global plane-sourced morphism restricted to a source region. The
/// restriction is implicit: validity asks that the source development maps
/// into the target development, which is exactly what the development
/// functor consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragMorphism2 {
    map: SkelMorphism2,
    source: ConeUnion,
    target: FragRegion,
}

impl FragMorphism2 {
    pub fn new(
        map: SkelMorphism2,
        source: ConeUnion,
        target: FragRegion,
    ) -> Result<Self, SkelError> {
        let dev = cauchy_development(&source)?;
        match (&map, &target) {
            (SkelMorphism2::MToM { plus, minus }, FragRegion::Union(u)) => {
                let tdev = cauchy_development(u)?;
                let image = DoubleCone::new(
                    plus.map_interval(&dev.iplus),
                    minus.map_interval(&dev.iminus),
                );
                if !image.subset_of(&tdev) {
                    return Err(SkelError::KindMismatch);
                }
            }
            (SkelMorphism2::MToCyl(_), FragRegion::Cylinder) => {}
            _ => return Err(SkelError::KindMismatch),
        }
        Ok(FragMorphism2 {
            map,
            source,
            target,
        })
    }

    pub fn identity(region: ConeUnion) -> Result<Self, SkelError> {
        FragMorphism2::new(
            SkelMorphism2::identity(super::SkelObject2::Minkowski),
            region.clone(),
            FragRegion::Union(region),
        )
    }

    pub fn map(&self) -> &SkelMorphism2 {
        &self.map
    }

    pub fn source(&self) -> &ConeUnion {
        &self.source
    }

    pub fn target(&self) -> &FragRegion {
        &self.target
    }

    pub fn source_development(&self) -> Result<DoubleCone, SkelError> {
        Ok(cauchy_development(&self.source)?)
    }

    /// Image of the source development under the pair, in ambient
    /// coordinates of the target.
    pub fn image_development(&self) -> Result<DoubleCone, SkelError> {
        let dev = self.source_development()?;
        match &self.map {
            SkelMorphism2::MToM { plus, minus } => Ok(DoubleCone::new(
                plus.map_interval(&dev.iplus),
                minus.map_interval(&dev.iminus),
            )),
            SkelMorphism2::MToCyl(pair) => Ok(DoubleCone::new(
                pair.plus().base().map_interval(&dev.iplus),
                pair.minus().base().map_interval(&dev.iminus),
            )),
            SkelMorphism2::CylToCyl { .. } => Err(SkelError::KindMismatch),
        }
    }

    /// Cauchy exactly when the development functor sends the morphism to an
    /// isomorphism: the image development equals the target development.
    pub fn is_cauchy(&self) -> Result<bool, SkelError> {
        match &self.target {
            FragRegion::Union(u) => Ok(self.image_development()? == cauchy_development(u)?),
            FragRegion::Cylinder => Ok(false),
        }
    }

    /// The development functor: the same pair between developments, with the
    /// explicit target.
    pub fn localize(&self) -> Result<LocalizedMorphism, SkelError> {
        let localized = d_localize(&self.map, &self.source)?;
        let target = match &self.target {
            FragRegion::Union(u) => C2DObject::Cone(cauchy_development(u)?),
            FragRegion::Cylinder => C2DObject::Cylinder,
        };
        Ok(LocalizedMorphism {
            source: localized.source,
            target,
            map: localized.map,
        })
    }

    /// Full composite into the two-object skeleton: develop, then conjugate
    /// by the skeletalization charts.
    pub fn to_skel(&self) -> Result<SkelMorphism2, SkelError> {
        Ok(self.localize()?.to_c2d()?.skel().clone())
    }
}

/// Composition of fragment morphisms; the middle regions must agree
/// structurally.
pub fn compose_fragment(
    outer: &FragMorphism2,
    inner: &FragMorphism2,
) -> Result<FragMorphism2, SkelError> {
    match &inner.target {
        FragRegion::Union(u) if *u == outer.source => {}
        _ => {
            return Err(SkelError::SourceTargetMismatch {
                expected: "matching middle region".into(),
                got: "different region".into(),
            })
        }
    }
    FragMorphism2::new(
        compose2(&outer.map, &inner.map)?,
        inner.source.clone(),
        outer.target.clone(),
    )
}

/// Orthogonality of fragment morphisms to a common target: causal
/// disjointness of the image developments in the ambient target. Two
/// subsets are causally disjoint exactly when their developments are, so
/// this is the fragment's honest relation.
pub fn orthogonal_fragment(m1: &FragMorphism2, m2: &FragMorphism2) -> Result<bool, SkelError> {
    if m1.target != m2.target {
        return Err(SkelError::SourceTargetMismatch {
            expected: "shared target region".into(),
            got: "different targets".into(),
        });
    }
    let c1 = m1.image_development()?;
    let c2 = m2.image_development()?;
    match &m1.target {
        FragRegion::Union(_) => Ok(causally_disjoint_minkowski(&c1, &c2)),
        FragRegion::Cylinder => Ok(causally_disjoint_cylinder(&c1, &c2)?),
    }
}
