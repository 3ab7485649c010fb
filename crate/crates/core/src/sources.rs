//! Kernel identifiers resolved to spectrum sources.
//!
//! Identifiers: `sine`, `sine-plus`, `sine-minus`, `airy`,
//! `airy-conditioned:<s>` (Airy kernel conditioned at −s),
//! `sine-conditioned:<p1>[,<p2>]`, and `ginibre-disk`.

use crate::ensembles::ginibre_lambdas;
use crate::error::{Error, Result};
use crate::fredholm::{auto_order, nystrom_spectrum, Region, Spectrum};
use crate::kernels::{airy_kernel, deflate, sine_kernel, sine_pm_kernel, KernelRef, Parity};
use std::collections::BTreeMap;

/// Anything that can produce an operator spectrum on a region.
pub trait SpectrumSource: Send + Sync {
    fn name(&self) -> String;

    /// Resolved quadrature order for the region (0 when no quadrature is used).
    fn order_for(&self, region: &Region, order: Option<usize>) -> Result<usize>;

    fn spectrum(&self, region: &Region, order: Option<usize>) -> Result<Spectrum>;
}

/// Nyström spectrum of a real-line kernel.
pub struct LineKernelSource {
    kernel: KernelRef,
}

impl LineKernelSource {
    pub fn new(kernel: KernelRef) -> Self {
        Self { kernel }
    }

    pub fn kernel(&self) -> &KernelRef {
        &self.kernel
    }

    fn interval(&self, region: &Region) -> Result<(f64, f64)> {
        match *region {
            Region::Interval { a, b } => Ok((a, b)),
            Region::Disk { .. } => Err(Error::InvalidArgument(format!(
                "kernel `{}` needs an interval, not a disk",
                self.kernel.name()
            ))),
        }
    }
}

impl SpectrumSource for LineKernelSource {
    fn name(&self) -> String {
        self.kernel.name()
    }

    fn order_for(&self, region: &Region, order: Option<usize>) -> Result<usize> {
        let (a, b) = self.interval(region)?;
        Ok(order.unwrap_or_else(|| auto_order(self.kernel.as_ref(), a, b)))
    }

    fn spectrum(&self, region: &Region, order: Option<usize>) -> Result<Spectrum> {
        let (a, b) = self.interval(region)?;
        let order = self.order_for(region, order)?;
        nystrom_spectrum(self.kernel.as_ref(), a, b, order)
    }
}

/// Explicit disk spectrum of the Ginibre kernel.
pub struct GinibreDiskSource;

impl SpectrumSource for GinibreDiskSource {
    fn name(&self) -> String {
        "ginibre-disk".into()
    }

    fn order_for(&self, _region: &Region, _order: Option<usize>) -> Result<usize> {
        Ok(0)
    }

    fn spectrum(&self, region: &Region, _order: Option<usize>) -> Result<Spectrum> {
        match *region {
            Region::Disk { radius } => {
                Spectrum::explicit(ginibre_lambdas(radius, None)?, *region, self.name())
            }
            Region::Interval { .. } => Err(Error::InvalidArgument(
                "kernel `ginibre-disk` needs a disk radius".into(),
            )),
        }
    }
}

type Factory = fn(Option<&str>) -> Result<Box<dyn SpectrumSource>>;

fn parse_points(id: &str, arg: Option<&str>, max: usize) -> Result<Vec<f64>> {
    let arg = arg.ok_or_else(|| {
        Error::InvalidArgument(format!("kernel `{id}` requires a parameter, e.g. `{id}:1.5`"))
    })?;
    let points = arg
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad number `{t}` in `{id}:{arg}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if points.is_empty() || points.len() > max {
        return Err(Error::InvalidArgument(format!(
            "kernel `{id}` takes 1..={max} parameters"
        )));
    }
    Ok(points)
}

fn no_argument(id: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::InvalidArgument(format!(
            "kernel `{id}` takes no parameter, got `{a}`"
        ))),
    }
}

fn line(kernel: KernelRef) -> Box<dyn SpectrumSource> {
    Box::new(LineKernelSource::new(kernel))
}

/// Registry mapping kernel identifiers to spectrum-source factories.
pub struct KernelRegistry {
    factories: BTreeMap<&'static str, Factory>,
}

impl Default for KernelRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl KernelRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("sine", |a| {
            no_argument("sine", a)?;
            Ok(line(sine_kernel()))
        });
        r.register("sine-plus", |a| {
            no_argument("sine-plus", a)?;
            Ok(line(sine_pm_kernel(Parity::Plus)))
        });
        r.register("sine-minus", |a| {
            no_argument("sine-minus", a)?;
            Ok(line(sine_pm_kernel(Parity::Minus)))
        });
        r.register("airy", |a| {
            no_argument("airy", a)?;
            Ok(line(airy_kernel()))
        });
        r.register("airy-conditioned", |a| {
            let s = parse_points("airy-conditioned", a, 1)?[0];
            Ok(line(deflate(airy_kernel(), -s)?))
        });
        r.register("sine-conditioned", |a| {
            let points = parse_points("sine-conditioned", a, 2)?;
            let mut kernel: KernelRef = sine_kernel();
            for p in points {
                kernel = deflate(kernel, p)?;
            }
            Ok(line(kernel))
        });
        r.register("ginibre-disk", |a| {
            no_argument("ginibre-disk", a)?;
            Ok(Box::new(GinibreDiskSource))
        });
        r
    }

    pub fn register(&mut self, id: &'static str, factory: Factory) {
        self.factories.insert(id, factory);
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }

    /// Resolves `name` or `name:params`.
    pub fn resolve(&self, text: &str) -> Result<Box<dyn SpectrumSource>> {
        let (id, arg) = match text.split_once(':') {
            Some((id, arg)) => (id, Some(arg)),
            None => (text, None),
        };
        let factory = self.factories.get(id).ok_or_else(|| Error::UnknownId {
            kind: "kernel",
            id: text.to_string(),
        })?;
        factory(arg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_every_builtin() {
        let r = KernelRegistry::with_builtins();
        for id in [
            "sine",
            "sine-plus",
            "sine-minus",
            "airy",
            "airy-conditioned:3",
            "sine-conditioned:0",
            "sine-conditioned:0,2.5",
            "ginibre-disk",
        ] {
            assert!(r.resolve(id).is_ok(), "{id}");
        }
    }

    #[test]
    fn malformed_identifiers() {
        let r = KernelRegistry::with_builtins();
        assert!(matches!(r.resolve("bessel"), Err(Error::UnknownId { .. })));
        assert!(r.resolve("sine:3").is_err());
        assert!(r.resolve("airy-conditioned").is_err());
        assert!(r.resolve("airy-conditioned:x").is_err());
        assert!(r.resolve("sine-conditioned:0,1,2").is_err());
        assert!(matches!(
            r.resolve("sine-conditioned:1,1"),
            Err(Error::DegenerateConditioning { .. })
        ));
    }

    #[test]
    fn region_kinds_are_checked() {
        let r = KernelRegistry::with_builtins();
        let disk = Region::Disk { radius: 1.0 };
        let interval = Region::Interval { a: 0.0, b: 1.0 };
        assert!(r.resolve("sine").unwrap().spectrum(&disk, None).is_err());
        assert!(r.resolve("ginibre-disk").unwrap().spectrum(&interval, None).is_err());
        let s = r.resolve("ginibre-disk").unwrap().spectrum(&Region::Disk { radius: 2.0 }, None).unwrap();
        assert!((s.lambdas[0] - 0.9816843611).abs() < 1e-10);
    }

    #[test]
    fn conditioned_sine_source_matches_manual_deflation() {
        let r = KernelRegistry::with_builtins();
        let region = Region::Interval { a: 0.0, b: 2.5 };
        let s = r.resolve("sine-conditioned:0,2.5").unwrap().spectrum(&region, Some(60)).unwrap();
        let k = deflate(deflate(sine_kernel(), 0.0).unwrap(), 2.5).unwrap();
        let direct = nystrom_spectrum(k.as_ref(), 0.0, 2.5, 60).unwrap();
        assert_eq!(s.lambdas, direct.lambdas);
    }
}
