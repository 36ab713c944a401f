//! Distance-field morphing of packings into foam-like phases.
//!
//! Solid is where the morphed field is `≤ 0`. Walls of a closed foam lie
//! where the two nearest particles are about equally far,
//! `F_c = (LS2 - LS1) - t_c`; ligaments of an open foam where the three
//! nearest are, `F_o = (LS3 + LS2)/2 - LS1 - t_o`. Their pointwise minimum
//! is the union of both solids.

use crate::error::{Error, Result};
use crate::levelset::TileFields;
use crate::scalar::Real;

pub fn offset<T: Real>(field: &[T], gamma: T) -> Vec<T> {
    field.iter().map(|&v| v + gamma).collect()
}

pub fn closed_foam<T: Real>(ls1: &[T], ls2: &[T], t_c: T) -> Vec<T> {
    ls1.iter().zip(ls2).map(|(&a, &b)| (b - a) - t_c).collect()
}

pub fn open_foam<T: Real>(ls1: &[T], ls2: &[T], ls3: &[T], t_o: T) -> Vec<T> {
    let half = T::lit(0.5);
    ls1.iter()
        .zip(ls2)
        .zip(ls3)
        .map(|((&a, &b), &c)| (half * (c + b) - a) - t_o)
        .collect()
}

pub fn combine<T: Real>(f_c: &[T], f_o: &[T]) -> Vec<T> {
    f_c.iter().zip(f_o).map(|(&a, &b)| a.min(b)).collect()
}

/// Node-wise solid indicator, `F ≤ 0`.
pub fn extract_phase<T: Real>(field: &[T]) -> Vec<bool> {
    field.iter().map(|&v| v <= T::zero()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphMode {
    /// The particles themselves, `F = LS1`.
    Particles,
    ClosedFoam,
    OpenFoam,
    /// Union of closed and open foam.
    Combined,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MorphParams<T> {
    pub mode: MorphMode,
    pub t_c: T,
    pub t_o: T,
    /// Constant added to the result (negative values dilate the solid).
    pub gamma: T,
}

impl<T: Real> MorphParams<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_c >= T::zero()) || !(self.t_o >= T::zero()) || !self.gamma.is_finite() {
            return Err(Error::InvalidParameter(
                "t_c and t_o must be non-negative and gamma finite".into(),
            ));
        }
        Ok(())
    }
}

/// Morphed field of every tile.
pub fn morph_fields<T: Real>(fields: &TileFields<T>, params: &MorphParams<T>) -> Result<Vec<Vec<T>>> {
    params.validate()?;
    (0..fields.len())
        .map(|t| {
            let ls1 = fields.ls1(t);
            let ls2 = fields.ls2(t);
            let f = match params.mode {
                MorphMode::Particles => ls1.to_vec(),
                MorphMode::ClosedFoam => closed_foam(ls1, ls2, params.t_c),
                MorphMode::OpenFoam => open_foam(ls1, ls2, fields.ls3(t)?, params.t_o),
                MorphMode::Combined => combine(
                    &closed_foam(ls1, ls2, params.t_c),
                    &open_foam(ls1, ls2, fields.ls3(t)?, params.t_o),
                ),
            };
            Ok(if params.gamma == T::zero() { f } else { offset(&f, params.gamma) })
        })
        .collect()
}

/// Solid indicator of every tile after morphing.
pub fn morph_phases<T: Real>(fields: &TileFields<T>, params: &MorphParams<T>) -> Result<Vec<Vec<bool>>> {
    Ok(morph_fields(fields, params)?.iter().map(|f| extract_phase(f)).collect())
}
