//! Copy inducers: which boundary entity a particle reaches, and where its
//! images must go.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tileset::{ConnectivityAnalysis, Entity, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InducerKind {
    Tile,
    Edge,
    Vertex,
    Face,
    CubeEdge,
    CubeVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CopyInducer {
    pub kind: InducerKind,
    /// The boundary entity reached; `None` for [`InducerKind::Tile`].
    pub entity: Option<Entity>,
}

/// Whether a circumscribed radius `r` about coordinate `c` reaches the
/// boundary inset by `inset` on the given side. Shared by the inducer test
/// and the strip classification of the artificial field.
#[inline]
pub(crate) fn reaches<T: Real>(c: T, r: T, inset: T, side: Side) -> bool {
    let half = T::lit(0.5);
    match side {
        Side::Low => c - r <= -half + inset,
        Side::High => c + r >= half - inset,
    }
}

/// Entity formed by the sides reached along each axis, if any.
pub(crate) fn reached_entity<T: Real>(dim: usize, c: [T; 3], r: T, inset: T) -> Option<Entity> {
    let mut fixed = 0u8;
    let mut sides = 0u8;
    for a in 0..dim {
        if reaches(c[a], r, inset, Side::Low) {
            fixed |= 1 << a;
        } else if reaches(c[a], r, inset, Side::High) {
            fixed |= 1 << a;
            sides |= 1 << a;
        }
    }
    (fixed != 0).then(|| Entity::new(fixed, sides))
}

/// Classifies the particle by the inset boundary parts its circumscribed
/// circle/sphere reaches, tested axis by axis: reaching one side gives an
/// edge (face), two sides a vertex (cube edge), three a cube vertex.
///
/// Requires `r + inset < 0.5` so that opposite sides are never both hit.
pub fn find_copy_inducer<T: Real>(dim: usize, center: [T; 3], radius: T, inset: T) -> Result<CopyInducer> {
    if !(radius + inset < T::lit(0.5)) || radius <= T::zero() || inset < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "radius {radius} and inset {inset} must be positive with sum below half a tile"
        )));
    }
    let entity = reached_entity(dim, center, radius, inset);
    let kind = match (dim, entity.map(|e| e.codim())) {
        (_, None) => InducerKind::Tile,
        (2, Some(1)) => InducerKind::Edge,
        (2, Some(_)) => InducerKind::Vertex,
        (_, Some(1)) => InducerKind::Face,
        (_, Some(2)) => InducerKind::CubeEdge,
        _ => InducerKind::CubeVertex,
    };
    Ok(CopyInducer { kind, entity })
}

/// Images of a particle in `source_tile` induced by `inducer`: one per
/// other member of the entity's class, as `(tile, translation)` where the
/// translation is in tile widths.
///
/// Members of the same orientation get a zero translation: in an assembly
/// they sit where the source sits, next to a neighbour that carries the
/// image across the shared entity.
pub fn propagate_copies(
    inducer: &CopyInducer,
    source_tile: usize,
    analysis: &ConnectivityAnalysis,
) -> Vec<(usize, [i32; 3])> {
    let Some(entity) = inducer.entity else {
        return Vec::new();
    };
    let class = analysis.class(analysis.class_of(source_tile, entity));
    class
        .members()
        .iter()
        .filter(|&&(t, e)| (t, e) != (source_tile, entity))
        .map(|&(t, e)| (t, entity.translation_to(&e)))
        .collect()
}
