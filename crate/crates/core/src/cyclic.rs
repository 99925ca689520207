//! Symmetry-adapted bases for cyclic physical systems: molecular orbitals
//! of an `N`-site ring and spin waves of a cyclic spin chain.
//!
//! Both are the `a = 0` construction in disguise:
//! `|kappa_s> = N^{-1/2} sum_n exp(i 2 pi n s / N) |phi_n>`, and each
//! `|kappa_s>` equals an eigenbasis vector `|0 alpha>` up to a unit phase.
//! The phase and the `s -> alpha` pairing are computed, not assumed.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::basis::{Basis, BasisVector, VectorLabel};
use crate::error::{Error, Result};
use crate::mub::eigenbasis;
use crate::scalar::CycloScalar;

/// An `N`-site ring, optionally with site names (atom identifiers).
#[derive(Debug, Clone)]
pub struct RingSpec {
    sites: u64,
    site_labels: Option<Vec<String>>,
}

impl RingSpec {
    pub fn new(sites: u64) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidArgument(
                "a ring needs at least one site".into(),
            ));
        }
        Ok(Self {
            sites,
            site_labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.sites as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} site labels, got {}",
                self.sites,
                labels.len()
            )));
        }
        self.site_labels = Some(labels);
        Ok(self)
    }

    pub fn sites(&self) -> u64 {
        self.sites
    }

    pub fn site_labels(&self) -> Option<&[String]> {
        self.site_labels.as_deref()
    }
}

fn wave_vectors(n: u64, label: impl Fn(u64) -> VectorLabel) -> Vec<BasisVector> {
    (0..n)
        .map(|s| {
            let amps = (0..n)
                .map(|site| {
                    CycloScalar::root_of_unity(n, (site * s) as i64)
                        .expect("n >= 1")
                        .with_sqrt_d_power(1)
                })
                .collect();
            BasisVector::new(n as usize, amps, label(s))
        })
        .collect()
}

/// Molecular orbitals `|kappa_s>` of the ring, `s = 0..N-1`.
pub fn molecular_orbitals(ring: &RingSpec) -> Basis {
    let n = ring.sites;
    Basis::new(
        n as usize,
        wave_vectors(n, |s| VectorLabel::Orbital { s }),
        format!("orbitals_N{n}"),
    )
}

/// Spin waves of a cyclic chain of `N` spins; the same amplitudes with
/// spin-chain metadata.
pub fn spin_wave_basis(n: u64) -> Result<Basis> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a chain needs at least one spin".into(),
        ));
    }
    Ok(Basis::new(
        n as usize,
        wave_vectors(n, |s| VectorLabel::SpinWave { s }),
        format!("spin_waves_N{n}"),
    ))
}

/// One row of the orbital/eigenbasis match: `|kappa_s> = phase * |0 alpha>`.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitalCorrespondence {
    pub s: u64,
    pub alpha: u64,
    pub phase: CycloScalar,
}

/// Matches every `|kappa_s>` against the `a = 0` eigenbasis, returning the
/// per-`s` unit phase and checking that `s -> alpha` is a bijection.
pub fn orbital_eigenbasis_correspondence(n: u64) -> Result<Vec<OrbitalCorrespondence>> {
    let ring = RingSpec::new(n)?;
    let orbitals = molecular_orbitals(&ring);
    let eigen = eigenbasis(n, 0, &BigRational::zero());
    let mut used = vec![false; n as usize];
    let mut out = Vec::with_capacity(n as usize);
    for (s, kappa) in orbitals.vectors().iter().enumerate() {
        let mut matched = None;
        for (alpha, candidate) in eigen.vectors().iter().enumerate() {
            if let Some(phase) = candidate.phase_to(kappa) {
                matched = Some((alpha, phase));
                break;
            }
        }
        let (alpha, phase) = matched.ok_or_else(|| {
            Error::VerificationFailed(format!(
                "orbital s={s} does not match any eigenbasis vector for N={n}"
            ))
        })?;
        if !phase.abs_squared().eq_in_dim(&CycloScalar::one(), n) {
            return Err(Error::VerificationFailed(format!(
                "orbital s={s} matches alpha={alpha} with a non-unit factor"
            )));
        }
        if std::mem::replace(&mut used[alpha], true) {
            return Err(Error::VerificationFailed(format!(
                "eigenbasis vector alpha={alpha} matched twice; s -> alpha is not a bijection"
            )));
        }
        out.push(OrbitalCorrespondence {
            s: s as u64,
            alpha: alpha as u64,
            phase,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benzene_orbitals() {
        let ring = RingSpec::new(6).unwrap();
        let orbitals = molecular_orbitals(&ring);
        assert_eq!(orbitals.vectors().len(), 6);
        assert!(orbitals.gram_is_identity());
        // s = 0 orbital is the uniform combination
        let uniform = CycloScalar::one().with_sqrt_d_power(1);
        for k in 0..6 {
            assert_eq!(orbitals.vector(0).amp(k), &uniform);
        }
    }

    #[test]
    fn single_site_ring() {
        let ring = RingSpec::new(1).unwrap();
        let orbitals = molecular_orbitals(&ring);
        assert!(orbitals.vector(0).amp(0).eq_in_dim(&CycloScalar::one(), 1));
    }

    #[test]
    fn n4_s2_alternating_signs() {
        // oracle: exp(i pi n) = (-1)^n summed directly
        let ring = RingSpec::new(4).unwrap();
        let orbitals = molecular_orbitals(&ring);
        let v = orbitals.vector(2);
        let half = CycloScalar::one().with_sqrt_d_power(1);
        assert_eq!(v.amp(0), &half);
        assert_eq!(v.amp(1), &half.neg());
        assert_eq!(v.amp(2), &half);
        assert_eq!(v.amp(3), &half.neg());
        let numeric: f64 = (0..4)
            .map(|n| (std::f64::consts::PI * n as f64 * 2.0 * 2.0 / 4.0).cos())
            .map(|c| c * 0.5)
            .zip(v.to_approx().iter().map(|a| a.re))
            .map(|(expect, got)| (expect - got).abs())
            .fold(0.0, f64::max);
        assert!(numeric < 1e-12);
    }

    #[test]
    fn spin_waves_n2_and_n3() {
        let b = spin_wave_basis(2).unwrap();
        let h = CycloScalar::one().with_sqrt_d_power(1);
        assert_eq!(b.vector(0).amp(0), &h);
        assert_eq!(b.vector(0).amp(1), &h);
        assert_eq!(b.vector(1).amp(0), &h);
        assert_eq!(b.vector(1).amp(1), &h.neg());
        // N=3 rows are the conjugated Fourier rows; they match the a=0
        // eigenbasis up to per-vector phases
        for row in orbital_eigenbasis_correspondence(3).unwrap() {
            assert!(row.phase.abs_squared().eq_in_dim(&CycloScalar::one(), 3));
        }
        // N=1 degenerates to the single wave (1)
        let b1 = spin_wave_basis(1).unwrap();
        assert!(b1.vector(0).amp(0).eq_in_dim(&CycloScalar::one(), 1));
        assert!(spin_wave_basis(0).is_err());
    }

    #[test]
    fn correspondence_is_a_bijection() {
        for n in 1..=10u64 {
            let rows = orbital_eigenbasis_correspondence(n).unwrap();
            let mut alphas: Vec<u64> = rows.iter().map(|r| r.alpha).collect();
            alphas.sort_unstable();
            assert_eq!(alphas, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn label_count_is_validated() {
        let err = RingSpec::new(3)
            .unwrap()
            .with_labels(vec!["C0".into(), "C1".into()]);
        assert!(err.is_err());
    }
}
