//! Level-set generation of particle, closed-foam and open-foam
//! microstructures on sets of Wang tiles and Wang cubes.
//!
//! A tile set is analysed for code connectivity, packed with particles by
//! random sequential adsorption on per-tile distance fields (with particles
//! crossing a tile boundary copied to every tile sharing that boundary
//! code), morphed into foams, assembled into stochastic tilings and
//! characterised by the two-point probability function.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64`, and the `*32` variants fix `f32`.

pub mod error;
pub mod geometry;
pub mod io;
pub mod levelset;
pub mod morphology;
pub mod packing;
pub mod pipeline;
pub mod scalar;
pub mod stats;
pub mod tileset;

pub use error::{Error, Result};
pub use geometry::{EllipsoidParams, PolygonParams, ShapeSampler};
pub use levelset::GridSpec;
pub use morphology::MorphMode;
pub use packing::{pack, Phase, StopCriterion};
pub use scalar::Real;
pub use stats::{render, s2_fft, secondary_peaks};
pub use tileset::{analyze_codes, assemble, validate_stochastic, Entity, Side, TileSet, Tiling};

pub type Shape = geometry::Shape<f64>;
pub type Particle = geometry::Particle<f64>;
pub type TileFields = levelset::TileFields<f64>;
pub type PackingParams = packing::PackingParams<f64>;
pub type PackingState = packing::PackingState<f64>;
pub type PlacedParticle = packing::PlacedParticle<f64>;
pub type MorphParams = morphology::MorphParams<f64>;

pub type Shape32 = geometry::Shape<f32>;
pub type Particle32 = geometry::Particle<f32>;
pub type TileFields32 = levelset::TileFields<f32>;
pub type PackingParams32 = packing::PackingParams<f32>;
pub type PackingState32 = packing::PackingState<f32>;
pub type PlacedParticle32 = packing::PlacedParticle<f32>;
pub type MorphParams32 = morphology::MorphParams<f32>;
