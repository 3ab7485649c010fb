//! Ensembles and spacing densities selectable by identifier.

use super::{
    bulk_gue, bulk_spacing_density, conditioned_soft_density, ginibre_disk, goe_counts,
    gse_counts, soft_edge, EnsembleResult,
};
use crate::error::{Error, Result};
use crate::fredholm::{auto_order, Region};
use crate::kernels::{Parity, SineParityKernel};
use crate::quadrature::DEFAULT_TRUNCATION;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams {
    /// Region parameter: J = (0, s) in the bulk, (−s, ∞) at the soft edge,
    /// the disk radius for Ginibre.
    pub s: f64,
    pub order: Option<usize>,
    pub truncation: f64,
}

impl EnsembleParams {
    pub fn new(s: f64) -> Self {
        Self {
            s,
            order: None,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

pub trait Ensemble: Send + Sync {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, params: &EnsembleParams) -> Result<EnsembleResult>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingParams {
    pub order: Option<usize>,
    pub truncation: f64,
}

impl Default for SpacingParams {
    fn default() -> Self {
        Self {
            order: None,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

/// A one-parameter family of probability densities in s, indexed by k.
pub trait SpacingDensity: Send + Sync {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn density(&self, k: usize, s: f64, params: &SpacingParams) -> Result<f64>;
}

struct GueBulk;

impl Ensemble for GueBulk {
    fn id(&self) -> &'static str {
        "gue-bulk"
    }
    fn description(&self) -> &'static str {
        "bulk-scaled GUE (sine kernel) on (0, s)"
    }
    fn run(&self, p: &EnsembleParams) -> Result<EnsembleResult> {
        bulk_gue(p.s, p.order)
    }
}

struct GueSoft;

impl Ensemble for GueSoft {
    fn id(&self) -> &'static str {
        "gue-soft"
    }
    fn description(&self) -> &'static str {
        "soft-edge GUE (Airy kernel) on (-s, T)"
    }
    fn run(&self, p: &EnsembleParams) -> Result<EnsembleResult> {
        soft_edge(p.s, p.order, p.truncation)
    }
}

fn parity_order(length: f64) -> usize {
    let kernel = SineParityKernel { parity: Parity::Plus };
    auto_order(&kernel, 0.0, length.max(0.0))
}

struct GseBulk;

impl Ensemble for GseBulk {
    fn id(&self) -> &'static str {
        "gse-bulk"
    }
    fn description(&self) -> &'static str {
        "bulk GSE on (0, s) from the parity-split sine kernels"
    }
    fn run(&self, p: &EnsembleParams) -> Result<EnsembleResult> {
        let order = p.order.unwrap_or_else(|| parity_order(p.s));
        let dist = gse_counts(p.s, Some(order))?;
        let mut r = EnsembleResult::new(self.id(), p.s, Region::Interval { a: 0.0, b: p.s }, order, dist)?;
        r.asymptotic_mu = Some(p.s);
        Ok(r)
    }
}

struct GoeBulk;

impl Ensemble for GoeBulk {
    fn id(&self) -> &'static str {
        "goe-bulk"
    }
    fn description(&self) -> &'static str {
        "bulk GOE on (0, s) by the parity recursion on (0, s/2)"
    }
    fn run(&self, p: &EnsembleParams) -> Result<EnsembleResult> {
        let order = p.order.unwrap_or_else(|| parity_order(0.5 * p.s));
        let dist = goe_counts(0.5 * p.s, Some(order))?;
        let mut r = EnsembleResult::new(self.id(), p.s, Region::Interval { a: 0.0, b: p.s }, order, dist)?;
        r.asymptotic_mu = Some(p.s);
        Ok(r)
    }
}

struct GinibreDisk;

impl Ensemble for GinibreDisk {
    fn id(&self) -> &'static str {
        "ginibre-disk"
    }
    fn description(&self) -> &'static str {
        "Ginibre process in the disk of radius s (explicit spectrum)"
    }
    fn run(&self, p: &EnsembleParams) -> Result<EnsembleResult> {
        ginibre_disk(p.s, None)
    }
}

struct SpacingBulk;

impl SpacingDensity for SpacingBulk {
    fn id(&self) -> &'static str {
        "spacing-bulk"
    }
    fn description(&self) -> &'static str {
        "k-th neighbour spacing density p^bulk(k; s) of the bulk GUE"
    }
    fn density(&self, k: usize, s: f64, p: &SpacingParams) -> Result<f64> {
        if s == 0.0 {
            // ρ₂(0, 0) = 0
            return Ok(0.0);
        }
        bulk_spacing_density(k, s, p.order)
    }
}

struct KthLargestSoft;

impl SpacingDensity for KthLargestSoft {
    fn id(&self) -> &'static str {
        "kth-largest-soft"
    }
    fn description(&self) -> &'static str {
        "density p^soft(k; (-s, inf)) of the (k+1)-th largest soft-edge eigenvalue at -s"
    }
    fn density(&self, k: usize, s: f64, p: &SpacingParams) -> Result<f64> {
        conditioned_soft_density(k, s, p.order, p.truncation)
    }
}

/// Name-keyed registry of ensembles and spacing densities.
pub struct EnsembleRegistry {
    ensembles: BTreeMap<&'static str, Box<dyn Ensemble>>,
    spacings: BTreeMap<&'static str, Box<dyn SpacingDensity>>,
}

impl Default for EnsembleRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl EnsembleRegistry {
    pub fn empty() -> Self {
        Self {
            ensembles: BTreeMap::new(),
            spacings: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(GueBulk));
        r.register(Box::new(GueSoft));
        r.register(Box::new(GseBulk));
        r.register(Box::new(GoeBulk));
        r.register(Box::new(GinibreDisk));
        r.register_spacing(Box::new(SpacingBulk));
        r.register_spacing(Box::new(KthLargestSoft));
        r
    }

    pub fn register(&mut self, ensemble: Box<dyn Ensemble>) {
        self.ensembles.insert(ensemble.id(), ensemble);
    }

    pub fn register_spacing(&mut self, density: Box<dyn SpacingDensity>) {
        self.spacings.insert(density.id(), density);
    }

    pub fn ensemble(&self, id: &str) -> Result<&dyn Ensemble> {
        self.ensembles
            .get(id)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownId {
                kind: "ensemble",
                id: id.to_string(),
            })
    }

    pub fn spacing(&self, id: &str) -> Result<&dyn SpacingDensity> {
        self.spacings
            .get(id)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownId {
                kind: "spacing density",
                id: id.to_string(),
            })
    }

    pub fn ensemble_ids(&self) -> Vec<&'static str> {
        self.ensembles.keys().copied().collect()
    }

    pub fn spacing_ids(&self) -> Vec<&'static str> {
        self.spacings.keys().copied().collect()
    }
}
