//! Random sequential adsorption over a whole tile set.
//!
//! Every step samples a node uniformly among the admissible nodes of all
//! tiles, jitters it off the grid, draws a shape, finds the copy inducer,
//! copies the particle to the inducer's class and updates the fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Particle, ShapeSampler};
use crate::levelset::{
    admissible_mask, build_artificial_field, find_copy_inducer, init_fields, jitter_center,
    propagate_copies, refresh_artificial_field, update_with_particle, AdmissibleMask, Anchor,
    BookKeeping, CopyInducer, GridSpec, MaskParams, NodeBox, TileFields, UpdateOptions,
};
use crate::scalar::Real;
use crate::tileset::{analyze_codes, build_neighbor_grids, ConnectivityAnalysis, NeighborGrid, TileSet};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StopCriterion {
    /// Phase ends after this many placements.
    MaxSteps(usize),
    /// Phase ends once the fraction of nodes with `LS1 ≤ 0` reaches this.
    VolumeFraction(f64),
    /// Phase runs until no admissible node is left.
    Exhaustion,
}

/// One stage of the schedule; `None` for ρ or σ means unbounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phase<T> {
    pub radius: T,
    pub kappa: T,
    pub rho: Option<T>,
    pub sigma: Option<T>,
    pub stop: StopCriterion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingParams<T> {
    pub phases: Vec<Phase<T>>,
    /// Virtual boundary inset; `None` uses the phase radius when LS3 is
    /// tracked and zero otherwise.
    pub inset: Option<T>,
    pub exclude_vertices: bool,
    pub track_ls3: bool,
    pub seed: u64,
    pub shape: ShapeSampler,
    pub jitter: bool,
    pub use_patch: bool,
    /// Patch half-width in nodes; `None` derives it from the phase.
    pub patch_half_width: Option<usize>,
}

impl<T: Real> PackingParams<T> {
    /// Defaults around a single phase.
    pub fn new(phase: Phase<T>) -> PackingParams<T> {
        PackingParams {
            phases: vec![phase],
            inset: None,
            exclude_vertices: false,
            track_ls3: false,
            seed: 0,
            shape: ShapeSampler::Sphere,
            jitter: true,
            use_patch: true,
            patch_half_width: None,
        }
    }

    pub fn inset_for(&self, phase: &Phase<T>) -> T {
        match self.inset {
            Some(w) => w,
            None if self.track_ls3 => phase.radius,
            None => T::zero(),
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.phases.is_empty() {
            return Err(Error::InvalidParameter("packing schedule has no phase".into()));
        }
        let bad = |m: String| Err(Error::InvalidParameter(m));
        for (i, p) in self.phases.iter().enumerate() {
            let inset = self.inset_for(p);
            if !(p.radius > T::zero()) {
                return bad(format!("phase {i}: radius must be positive"));
            }
            if !(p.kappa >= T::zero()) {
                return bad(format!("phase {i}: kappa must be non-negative"));
            }
            if p.rho.is_some_and(|v| !(v > T::zero())) || p.sigma.is_some_and(|v| !(v > T::zero())) {
                return bad(format!("phase {i}: rho and sigma must be positive or infinite"));
            }
            if !(inset >= T::zero()) || !(p.radius + inset < T::lit(0.5)) {
                return bad(format!("phase {i}: radius plus inset must stay below half a tile"));
            }
            if let StopCriterion::VolumeFraction(v) = p.stop {
                if !(0.0..=1.0).contains(&v) {
                    return bad(format!("phase {i}: volume fraction {v} outside [0, 1]"));
                }
            }
        }
        match (self.shape, dim) {
            (ShapeSampler::Polygon(_), 3) => bad("polygons are two-dimensional".into()),
            (ShapeSampler::Ellipsoid(_), 2) => bad("ellipsoids are three-dimensional".into()),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Original,
    /// Copy of the original with the same id, shifted by whole tiles.
    Image { translation: [i32; 3] },
}

/// A particle as stored in one tile (centre in that tile's frame).
#[derive(Clone, Debug, PartialEq)]
pub struct PlacedParticle<T> {
    pub id: usize,
    pub tile: usize,
    pub particle: Particle<T>,
    pub anchor: Anchor<T>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseEnd {
    Criterion,
    Exhausted,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhaseStats {
    pub placed: usize,
    pub admissible_at_start: usize,
    pub admissible_at_end: usize,
    pub ended: Option<PhaseEnd>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepOutcome {
    Placed { id: usize, inducer: CopyInducer, images: usize },
    Exhausted,
}

pub struct PackingState<T> {
    set: TileSet,
    analysis: ConnectivityAnalysis,
    grids: Vec<NeighborGrid>,
    fields: TileFields<T>,
    particles: Vec<PlacedParticle<T>>,
    originals: usize,
    steps: usize,
    stats: Vec<PhaseStats>,
    mask: Option<AdmissibleMask<T>>,
    /// Same constraints without σ; sampled from when σ leaves nothing.
    relaxed: Option<AdmissibleMask<T>>,
    rng: ChaCha8Rng,
}

impl<T: Real> PackingState<T> {
    /// Empty state with sentinel fields; randomness seeded from `seed`.
    pub fn new(set: &TileSet, grid: GridSpec, track_ls3: bool, seed: u64) -> Result<PackingState<T>> {
        if grid.dim() != set.dim() {
            return Err(Error::InvalidParameter(format!(
                "grid dimension {} does not match tile set dimension {}",
                grid.dim(),
                set.dim()
            )));
        }
        let analysis = analyze_codes(set);
        let grids = build_neighbor_grids(set, &analysis);
        Ok(PackingState {
            set: set.clone(),
            analysis,
            grids,
            fields: init_fields(set.len(), grid, track_ls3)?,
            particles: Vec::new(),
            originals: 0,
            steps: 0,
            stats: Vec::new(),
            mask: None,
            relaxed: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn set(&self) -> &TileSet {
        &self.set
    }

    pub fn analysis(&self) -> &ConnectivityAnalysis {
        &self.analysis
    }

    pub fn neighbor_grids(&self) -> &[NeighborGrid] {
        &self.grids
    }

    pub fn fields(&self) -> &TileFields<T> {
        &self.fields
    }

    pub fn into_fields(self) -> TileFields<T> {
        self.fields
    }

    /// Originals and images, in placement order.
    pub fn particles(&self) -> &[PlacedParticle<T>] {
        &self.particles
    }

    pub fn original_count(&self) -> usize {
        self.originals
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn phase_stats(&self) -> &[PhaseStats] {
        &self.stats
    }

    pub fn mask(&self) -> Option<&AdmissibleMask<T>> {
        self.mask.as_ref()
    }

    /// The mask sampled from in the next step: the full one, or the σ-free
    /// one once σ empties the domain.
    pub fn active_mask(&self) -> Option<&AdmissibleMask<T>> {
        match (&self.mask, &self.relaxed) {
            (Some(m), _) if m.total() > 0 => Some(m),
            (Some(_), Some(r)) => Some(r),
            (m, None) => m.as_ref(),
            (None, Some(_)) => None,
        }
    }

    fn mask_params(params: &PackingParams<T>, phase: &Phase<T>) -> MaskParams<T> {
        MaskParams {
            radius: phase.radius,
            kappa: phase.kappa,
            rho: phase.rho,
            sigma: phase.sigma,
            inset: params.inset_for(phase),
            exclude_vertices: params.exclude_vertices,
        }
    }

    /// Rebuilds ~LS and the mask from scratch if the constraints changed.
    fn prepare(&mut self, mp: MaskParams<T>) {
        if self.mask.as_ref().is_some_and(|m| *m.params() == mp) {
            return;
        }
        build_artificial_field(&mut self.fields, &self.analysis, mp.radius, mp.inset);
        self.mask = Some(admissible_mask(&self.fields, mp));
        self.relaxed = mp
            .sigma
            .is_some()
            .then(|| admissible_mask(&self.fields, MaskParams { sigma: None, ..mp }));
    }

    /// Admissible node count under the given phase.
    pub fn admissible_count(&mut self, params: &PackingParams<T>, phase: &Phase<T>) -> usize {
        self.prepare(Self::mask_params(params, phase));
        self.active_mask().map_or(0, AdmissibleMask::total)
    }

    fn patch_half_width(&self, params: &PackingParams<T>, phase: &Phase<T>) -> usize {
        if let Some(w) = params.patch_half_width {
            return w;
        }
        let h = self.fields.grid().h::<T>();
        let inf = T::zero();
        let reach = phase.rho.unwrap_or(inf).max(phase.sigma.unwrap_or(inf)).max(h + h);
        let w = (phase.radius + reach + T::lit(4.0) * h) / h;
        w.ceil().to_usize().unwrap_or(0)
    }

    /// Places one particle under `phase`, or reports an empty admissible
    /// domain.
    pub fn step(&mut self, params: &PackingParams<T>, phase: &Phase<T>) -> Result<StepOutcome> {
        let mp = Self::mask_params(params, phase);
        self.prepare(mp);
        let grid = *self.fields.grid();
        let use_relaxed = self.mask.as_ref().is_some_and(|m| m.total() == 0) && self.relaxed.is_some();
        let mask = if use_relaxed { &self.relaxed } else { &self.mask };
        let mask = mask.as_ref().expect("mask prepared");
        let total = mask.total();
        if total == 0 {
            return Ok(StepOutcome::Exhausted);
        }
        let k = self.rng.random_range(0..total);
        let (tile, index) = mask.nth(k).expect("k below admissible count");
        let node = grid.node(index);
        let anchor = if params.jitter {
            jitter_center(mask, &grid, tile, node, &mut self.rng, phase.radius)
        } else {
            Anchor::at_node(node)
        };
        let center = anchor.center(&grid);
        let shape = params.shape.sample(&mut self.rng, phase.radius)?;
        let particle = Particle::with_radius(shape, center, phase.radius)?;
        let inducer = find_copy_inducer(grid.dim(), center, phase.radius, mp.inset)?;
        let images = propagate_copies(&inducer, tile, &self.analysis);

        let options = UpdateOptions {
            use_patch: params.use_patch,
            patch_half_width: self.patch_half_width(params, phase),
            prescreen: true,
        };
        let mut book = BookKeeping::new();
        let report = update_with_particle(
            &mut self.fields,
            &self.grids,
            &particle.shape,
            phase.radius,
            &anchor,
            tile,
            &images,
            &mut book,
            &options,
        );
        let art_dirty =
            refresh_artificial_field(&mut self.fields, &self.analysis, mp.radius, mp.inset, &report.dirty_ls1);
        let mut dirty = report.dirty_ls12;
        for (d, a) in dirty.iter_mut().zip(art_dirty) {
            NodeBox::merge(d, a);
        }
        self.mask
            .as_mut()
            .expect("mask prepared")
            .refresh(&self.fields, &dirty);
        if let Some(r) = self.relaxed.as_mut() {
            r.refresh(&self.fields, &dirty);
        }

        let id = self.originals;
        self.originals += 1;
        self.steps += 1;
        let t_real = |t: [i32; 3]| t.map(|v| T::from_int(v as i64));
        self.particles.push(PlacedParticle {
            id,
            tile,
            particle: particle.clone(),
            anchor,
            provenance: Provenance::Original,
        });
        for &(t, tau) in &images {
            self.particles.push(PlacedParticle {
                id,
                tile: t,
                particle: particle.translated(t_real(tau)),
                anchor: anchor.translated(&grid, tau),
                provenance: Provenance::Image { translation: tau },
            });
        }
        Ok(StepOutcome::Placed {
            id,
            inducer,
            images: images.len(),
        })
    }

    /// Runs the remaining schedule from the current state.
    pub fn run(&mut self, params: &PackingParams<T>) -> Result<()> {
        for phase in &params.phases {
            let mut stats = PhaseStats {
                admissible_at_start: self.admissible_count(params, phase),
                ..Default::default()
            };
            let ended = loop {
                let done = match phase.stop {
                    StopCriterion::MaxSteps(n) => stats.placed >= n,
                    StopCriterion::VolumeFraction(v) => self.fields.volume_fraction() >= v,
                    StopCriterion::Exhaustion => false,
                };
                if done {
                    break PhaseEnd::Criterion;
                }
                match self.step(params, phase)? {
                    StepOutcome::Placed { .. } => stats.placed += 1,
                    StepOutcome::Exhausted => break PhaseEnd::Exhausted,
                }
            };
            stats.admissible_at_end = self.admissible_count(params, phase);
            stats.ended = Some(ended);
            self.stats.push(stats);
        }
        Ok(())
    }

    /// Whether the last phase ended because nothing was admissible.
    pub fn exhausted(&self) -> bool {
        self.stats.last().and_then(|s| s.ended) == Some(PhaseEnd::Exhausted)
    }
}

/// Packs `set` on `grid` following `params`.
pub fn pack<T: Real>(set: &TileSet, grid: GridSpec, params: &PackingParams<T>) -> Result<PackingState<T>> {
    params.validate(set.dim())?;
    let report = crate::tileset::validate_stochastic(set);
    if !report.is_stochastic {
        return Err(Error::InvalidTileSet(format!(
            "set is not stochastic: {} constraint combination(s) without a tile",
            report.deficient_combinations.len()
        )));
    }
    let mut state = PackingState::new(set, grid, params.track_ls3, params.seed)?;
    state.run(params)?;
    Ok(state)
}

/// The step-by-step schedule used for the polygon microstructure: radius
/// 0.08, raised to 0.1 after 40 steps and lowered to 0.06 after another 60;
/// ρ drops from 0.05 to 0.02 after 50 steps. The last phase runs to
/// exhaustion.
pub fn polygon_schedule<T: Real>(kappa: T) -> Vec<Phase<T>> {
    let phase = |r: f64, rho: f64, stop| Phase {
        radius: T::lit(r),
        kappa,
        rho: Some(T::lit(rho)),
        sigma: None,
        stop,
    };
    vec![
        phase(0.08, 0.05, StopCriterion::MaxSteps(40)),
        phase(0.1, 0.05, StopCriterion::MaxSteps(10)),
        phase(0.1, 0.02, StopCriterion::MaxSteps(50)),
        phase(0.06, 0.02, StopCriterion::Exhaustion),
    ]
}
