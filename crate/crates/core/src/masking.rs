//! The independent masking process `M_μ`: every coordinate of a full sample
//! is revealed with probability `μ` and hidden (`*`) otherwise.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::DistributionSource;
use crate::exec::Execution;
use crate::logic::PartialAssignment;
use crate::rng::{stream, Role, CHUNK};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaskError {
    #[error("reveal probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("sample has {got} coordinates, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskedSampleSet {
    pub n: usize,
    pub mu: f64,
    pub seed: u64,
    pub provenance: String,
    pub samples: Vec<PartialAssignment>,
}

impl MaskedSampleSet {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn check_mu(mu: f64) -> Result<(), MaskError> {
    if (0.0..=1.0).contains(&mu) {
        Ok(())
    } else {
        Err(MaskError::BadProbability(mu))
    }
}

/// Reveal each coordinate independently with probability `mu`, consuming
/// one Bernoulli draw per coordinate in ascending order.
pub fn mask_independent(x: &[bool], mu: f64, rng: &mut dyn RngCore) -> Result<PartialAssignment, MaskError> {
    check_mu(mu)?;
    Ok(mask_unchecked(x, mu, rng))
}

fn mask_unchecked(x: &[bool], mu: f64, rng: &mut dyn RngCore) -> PartialAssignment {
    PartialAssignment::new(x.iter().map(|&b| rng.gen_bool(mu).then_some(b)).collect())
}

/// Draw `m` full samples from `source` without masking.
pub fn draw_samples(source: &dyn DistributionSource, m: usize, seed: u64, exec: Execution) -> Vec<Vec<bool>> {
    let chunks = m.div_ceil(CHUNK);
    exec.map_range(0, chunks, |c| {
        let mut rng = stream(seed, Role::Sample, c as u64);
        let len = CHUNK.min(m - c * CHUNK);
        (0..len).map(|_| source.sample(&mut rng)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Mask already drawn full samples with the masking stream of `seed`.
pub fn mask_samples(
    xs: &[Vec<bool>],
    mu: f64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<PartialAssignment>, MaskError> {
    check_mu(mu)?;
    let chunks: Vec<&[Vec<bool>]> = xs.chunks(CHUNK).collect();
    Ok(exec
        .map_range(0, chunks.len(), |c| {
            let mut rng = stream(seed, Role::Mask, c as u64);
            chunks[c].iter().map(|x| mask_unchecked(x, mu, &mut rng)).collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect())
}

/// Apply `M_μ` on top of an existing sample set: a coordinate stays
/// revealed with probability `mu`. On fully revealed input this matches
/// [`mask_samples`] with the same seed.
pub fn remask(set: &MaskedSampleSet, mu: f64, seed: u64, exec: Execution) -> Result<MaskedSampleSet, MaskError> {
    check_mu(mu)?;
    let chunks: Vec<&[PartialAssignment]> = set.samples.chunks(CHUNK).collect();
    let samples = exec
        .map_range(0, chunks.len(), |c| {
            let mut rng = stream(seed, Role::Mask, c as u64);
            chunks[c]
                .iter()
                .map(|r| {
                    // one draw per coordinate, hidden or not, to stay aligned with `mask_samples`
                    let values = r.values().iter().map(|&v| {
                        let keep = rng.gen_bool(mu);
                        v.filter(|_| keep)
                    });
                    PartialAssignment::new(values.collect())
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    Ok(MaskedSampleSet { n: set.n, mu: set.mu * mu, seed, provenance: set.provenance.clone(), samples })
}

/// `m` independent draws from `source`, each masked independently.
///
/// Returns the underlying full samples alongside the masked set.
pub fn draw_masked_samples_with_sources(
    source: &dyn DistributionSource,
    mu: f64,
    m: usize,
    seed: u64,
    exec: Execution,
) -> Result<(Vec<Vec<bool>>, MaskedSampleSet), MaskError> {
    check_mu(mu)?;
    if m == 0 {
        return Err(MaskError::NoSamples);
    }
    let xs = draw_samples(source, m, seed, exec);
    let samples = mask_samples(&xs, mu, seed, exec)?;
    debug_assert!(xs.iter().zip(&samples).all(|(x, r)| r.is_consistent_with(x)));
    let set = MaskedSampleSet { n: source.num_vars(), mu, seed, provenance: source.describe(), samples };
    Ok((xs, set))
}

pub fn draw_masked_samples(
    source: &dyn DistributionSource,
    mu: f64,
    m: usize,
    seed: u64,
    exec: Execution,
) -> Result<MaskedSampleSet, MaskError> {
    draw_masked_samples_with_sources(source, mu, m, seed, exec).map(|(_, s)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{AffineSystem, Uniform};

    #[test]
    fn extremes() {
        let x = vec![true, false, true];
        let mut rng = stream(0, Role::Aux, 0);
        assert_eq!(mask_independent(&x, 1.0, &mut rng).unwrap(), PartialAssignment::full(&x));
        assert_eq!(mask_independent(&x, 0.0, &mut rng).unwrap(), PartialAssignment::unassigned(3));
        assert!(mask_independent(&x, 1.5, &mut rng).is_err());
        assert!(mask_independent(&x, -0.1, &mut rng).is_err());
    }

    #[test]
    fn reveal_rates_and_pairwise_independence() {
        // n=20, μ=0.5, 40000 masks: per-coordinate rate within ±0.02 and
        // reveal indicators of coordinate pairs uncorrelated within ±0.02.
        let n = 20;
        let m = 40_000;
        let xs = vec![vec![true; n]; m];
        let rhos = mask_samples(&xs, 0.5, 99, Execution::default()).unwrap();
        let rev: Vec<Vec<f64>> =
            rhos.iter().map(|r| r.values().iter().map(|v| v.is_some() as u8 as f64).collect()).collect();
        let mean: Vec<f64> = (0..n).map(|i| rev.iter().map(|r| r[i]).sum::<f64>() / m as f64).collect();
        for &p in &mean {
            assert!((p - 0.5).abs() <= 0.02, "rate {p}");
        }
        for i in 0..n {
            for j in i + 1..n {
                let cov = rev.iter().map(|r| (r[i] - mean[i]) * (r[j] - mean[j])).sum::<f64>() / m as f64;
                let corr = cov / (mean[i] * (1.0 - mean[i]) * mean[j] * (1.0 - mean[j])).sqrt();
                assert!(corr.abs() <= 0.02, "pair ({i},{j}) corr {corr}");
            }
        }
    }

    #[test]
    fn draw_examples() {
        let a = AffineSystem::from_rows(3, &[(vec![0], true)]).unwrap();
        let s = draw_masked_samples(&a, 1.0, 3, 4, Execution::default()).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.samples.iter().all(|r| r.get(crate::logic::Var(0)) == Some(true)));
        let hidden = draw_masked_samples(&Uniform::new(5), 0.0, 7, 4, Execution::default()).unwrap();
        assert!(hidden.samples.iter().all(|r| r.revealed() == 0));
        assert_eq!(draw_masked_samples(&a, 0.5, 0, 4, Execution::default()), Err(MaskError::NoSamples));
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let u = Uniform::new(9);
        let a = draw_masked_samples(&u, 0.4, 1000, 17, Execution::Sequential).unwrap();
        let b = draw_masked_samples(&u, 0.4, 1000, 17, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let c = draw_masked_samples(&u, 0.4, 1000, 18, Execution::Sequential).unwrap();
        assert_ne!(a.samples, c.samples);
    }

    #[test]
    fn remask_matches_direct_masking() {
        let u = Uniform::new(7);
        let full = draw_masked_samples(&u, 1.0, 700, 3, Execution::default()).unwrap();
        let direct = draw_masked_samples(&u, 0.4, 700, 3, Execution::default()).unwrap();
        let again = remask(&full, 0.4, 3, Execution::Sequential).unwrap();
        assert_eq!(again.samples, direct.samples);
        assert_eq!(again.mu, 0.4);
    }

    #[test]
    fn changing_mu_keeps_assignments() {
        let u = Uniform::new(6);
        let (x1, s1) = draw_masked_samples_with_sources(&u, 0.3, 600, 5, Execution::default()).unwrap();
        let (x2, _) = draw_masked_samples_with_sources(&u, 0.8, 600, 5, Execution::default()).unwrap();
        assert_eq!(x1, x2);
        assert!(x1.iter().zip(&s1.samples).all(|(x, r)| r.is_consistent_with(x)));
    }
}
