//! First-order deformations: lifts over the dual numbers `k[ε]`, the tangent
//! space, and the resulting statement about the universal deformation ring.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::indec::all_indecomposables;
use crate::par::Execution;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{end_dim, ext1_space, hom_space, is_coboundary, Representation};
use crate::xlinalg::FieldSpec;
use crate::xlinalg::Matrix;

/// The `k[ε] ⊗ kQ`-module with arrow action `f_α + ε g_α` on `k[ε] ⊗ M`,
/// together with the identification of its reduction mod `ε` with `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumberLift {
    base: Representation,
    perturbation: Vec<Matrix>,
}

impl DualNumberLift {
    pub fn base(&self) -> &Representation {
        &self.base
    }

    pub fn perturbation(&self) -> &[Matrix] {
        &self.perturbation
    }

    /// Reduction mod `ε`.
    pub fn reduce(&self) -> Representation {
        self.base.clone()
    }

    /// The lift as a representation over `k` of twice the dimension, in the
    /// basis `(m, εm)`: each arrow acts by `[[f, 0], [g, f]]`.
    pub fn as_k_representation(&self) -> Result<Representation> {
        let field = self.base.field();
        let maps = self
            .base
            .maps()
            .iter()
            .zip(&self.perturbation)
            .map(|(f, g)| {
                let zero = Matrix::zeros(field, f.rows(), f.cols());
                let top = Matrix::hstack(field, f.rows(), &[f, &zero])?;
                let bottom = Matrix::hstack(field, f.rows(), &[g, f])?;
                Matrix::vstack(field, 2 * f.cols(), &[&top, &bottom])
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = self.base.dims().add(self.base.dims());
        Representation::new(self.base.quiver().clone(), field, dims, maps)
    }
}

/// Lift of `M` with perturbation `g`; `g` needs the shapes of `M`'s arrow maps.
pub fn make_lift(m: &Representation, g: Vec<Matrix>) -> Result<DualNumberLift> {
    if g.len() != m.maps().len()
        || g.iter()
            .zip(m.maps())
            .any(|(a, b)| a.shape() != b.shape() || a.field() != b.field())
    {
        return Err(Error::ShapeMismatch(
            "perturbation must match the arrow maps of the base".into(),
        ));
    }
    Ok(DualNumberLift {
        base: m.clone(),
        perturbation: g,
    })
}

/// `k[ε] ⊗ M`.
pub fn trivial_lift(m: &Representation) -> DualNumberLift {
    let g = m
        .maps()
        .iter()
        .map(|f| Matrix::zeros(m.field(), f.rows(), f.cols()))
        .collect();
    DualNumberLift {
        base: m.clone(),
        perturbation: g,
    }
}

/// Two lifts are isomorphic through some `id + εh` exactly when the
/// difference of their perturbations is a coboundary.
pub fn lifts_isomorphic(l1: &DualNumberLift, l2: &DualNumberLift) -> Result<bool> {
    if l1.base != l2.base {
        return Err(Error::Mismatch("lifts of different representations".into()));
    }
    let diff = l1
        .perturbation
        .iter()
        .zip(&l2.perturbation)
        .map(|(a, b)| a.sub(b))
        .collect::<Result<Vec<_>>>()?;
    is_coboundary(&l1.base, &l1.base, &diff)
}

/// Dimension of the space of lifts over `k[ε]` modulo isomorphism: all
/// perturbations `⊕_α Hom(V_s, V_t)` modulo the coboundaries, whose dimension
/// is `Σ dim End_k(V_i) − dim End(M)`.
pub fn tangent_space_dim(m: &Representation) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let d = m.dims();
    let perturbations: usize = m
        .quiver()
        .arrows()
        .iter()
        .map(|a| d[a.source] * d[a.target])
        .sum();
    let gauge: usize = d.coords().iter().map(|x| x * x).sum();
    let coboundaries = gauge - end_dim(m)?;
    Ok(perturbations - coboundaries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `End = k` and `Ext¹ = 0`: the universal deformation ring is `k`.
    IsomorphicToK,
    /// `End = k` and `dim Ext¹ = r > 0`: the ring is a quotient of `k[[t_1..t_r]]`.
    QuotientOfPowerSeries(usize),
    /// `End ≠ k`: existence of a universal ring is not guaranteed.
    NoUniversalRingGuaranteed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::IsomorphicToK => write!(f, "IsomorphicToK"),
            Verdict::QuotientOfPowerSeries(r) => write!(f, "QuotientOfPowerSeries({r})"),
            Verdict::NoUniversalRingGuaranteed => write!(f, "NoUniversalRingGuaranteed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdrReport {
    pub dims: DimVector,
    pub end_dim: usize,
    pub ext_dim: usize,
    pub has_universal_ring: bool,
    pub verdict: Verdict,
}

impl UdrReport {
    pub fn from_dims(dims: DimVector, end_dim: usize, ext_dim: usize) -> Self {
        let verdict = match (end_dim, ext_dim) {
            (1, 0) => Verdict::IsomorphicToK,
            (1, r) => Verdict::QuotientOfPowerSeries(r),
            _ => Verdict::NoUniversalRingGuaranteed,
        };
        Self {
            dims,
            end_dim,
            ext_dim,
            has_universal_ring: end_dim == 1,
            verdict,
        }
    }
}

pub fn udr_report(q: &Quiver, m: &Representation) -> Result<UdrReport> {
    if m.quiver() != q {
        return Err(Error::Mismatch(
            "representation lives on a different quiver".into(),
        ));
    }
    if m.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let end = hom_space(m, m)?.dimension();
    let ext = ext1_space(m, m)?.dimension();
    Ok(UdrReport::from_dims(m.dims().clone(), end, ext))
}

/// Outcome of checking one module: the report, the tangent dimension computed
/// through the kernel path, and how many sampled lifts turned out trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCheck {
    pub report: UdrReport,
    pub tangent_dim: usize,
    pub lifts_sampled: usize,
    pub lifts_trivial: usize,
}

impl ModuleCheck {
    /// `End = k`, `Ext¹ = 0`, both tangent computations agree and every
    /// sampled lift is trivial.
    pub fn verified(&self) -> bool {
        self.report.verdict == Verdict::IsomorphicToK
            && self.tangent_dim == 0
            && self.lifts_trivial == self.lifts_sampled
    }
}

pub fn check_module(
    q: &Quiver,
    m: &Representation,
    lift_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ModuleCheck> {
    let report = udr_report(q, m)?;
    let tangent_dim = tangent_space_dim(m)?;
    if tangent_dim != report.ext_dim {
        return Err(Error::Internal(format!(
            "tangent dimension {tangent_dim} differs from dim Ext^1 = {} at {}",
            report.ext_dim, report.dims
        )));
    }
    let trivial = trivial_lift(m);
    let mut lifts_trivial = 0;
    for _ in 0..lift_samples {
        let g = Representation::random(q, m.field(), m.dims().clone(), rng, 3);
        let lift = make_lift(m, g.maps().to_vec())?;
        if lifts_isomorphic(&lift, &trivial)? {
            lifts_trivial += 1;
        }
    }
    Ok(ModuleCheck {
        report,
        tangent_dim,
        lifts_sampled: lift_samples,
        lifts_trivial,
    })
}

/// Checks every indecomposable of a finite-type quiver. Entry `k` samples its
/// lifts from stream `k` of a generator seeded with `seed`, so the result does
/// not depend on the execution strategy.
pub fn verify_catalog(
    q: &Quiver,
    field: FieldSpec,
    lift_samples: usize,
    seed: u64,
    execution: Execution,
) -> Result<Vec<ModuleCheck>> {
    let catalog = all_indecomposables(q, field, execution)?;
    let indexed: Vec<(usize, &Representation)> =
        catalog.entries.iter().map(|(_, m)| m).enumerate().collect();
    execution
        .map(&indexed, |&(k, m)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            check_module(q, m, lift_samples, &mut rng)
        })
        .into_iter()
        .collect()
}
