//! Eigenvector bases of the cyclic operators and mutually unbiased sets.
//!
//! For `r = 0` the basis `B_{0a}` has amplitudes
//!
//! ```text
//! <k | a alpha> = q^{(d-k-1)(k+1)a/2 - (k+1)alpha} / sqrt(d)
//! ```
//!
//! with half-integer exponents represented exactly over the `2d`-th roots.
//! For prime `d` the computational basis together with `B_{00} .. B_{0,d-1}`
//! forms a complete set of `d+1` mutually unbiased bases; every cross-basis
//! overlap has magnitude `1/sqrt(d)`, certified here by exhaustive exact
//! computation. Dimension 4 gets its own five-basis tensor-product
//! construction (`dim4` below).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::basis::{Basis, BasisVector, VectorLabel};
use crate::error::{Error, Result};
use crate::scalar::CycloScalar;
use crate::weyl::scalar_order;

pub use dim4::{is_product_vector, mub_set_dim4};

/// The standard basis `|0> .. |d-1>`.
pub fn computational_basis(d: u64) -> Basis {
    let dim = d as usize;
    let vectors = (0..dim)
        .map(|k| {
            let amps = (0..dim)
                .map(|i| {
                    if i == k {
                        CycloScalar::one()
                    } else {
                        CycloScalar::zero()
                    }
                })
                .collect();
            BasisVector::new(dim, amps, VectorLabel::Computational { k: k as u64 })
        })
        .collect();
    Basis::new(dim, vectors, format!("B_{d}"))
}

fn basis_tag(a: u64, r: &BigRational) -> String {
    if r.is_zero() {
        format!("B_0{a}")
    } else {
        format!("B_r{r}_a{a}")
    }
}

/// The eigenvector basis `B_{ra}` of the cyclic operator `v_{ra}`.
///
/// Vectors are ordered by `alpha = 0..d-1` and stored exactly as the
/// defining formula produces them (no rephasing).
pub fn eigenbasis(d: u64, a: u64, r: &BigRational) -> Basis {
    assert!(d >= 1, "dimension must be positive");
    let a = a % d;
    let dim = d as usize;
    let order = scalar_order(d, r);
    let vectors = (0..d)
        .map(|alpha| {
            let amps = (0..d)
                .map(|k| {
                    let f = amp_circle_fraction(d, a, alpha, k, r);
                    CycloScalar::circle_fraction(order, &f).with_sqrt_d_power(1)
                })
                .collect();
            BasisVector::new(
                dim,
                amps,
                VectorLabel::Eigen {
                    a,
                    alpha,
                    r: r.clone(),
                },
            )
        })
        .collect();
    Basis::new(dim, vectors, basis_tag(a, r))
}

/// Fraction of the full circle carried by amplitude `k` of `|a alpha>`:
/// `[(d-k-1)(k+1)a/2 - j(j-k)r + (d-k-1)alpha] / d` in `q`-exponent units
/// (`j = (d-1)/2`, `m = j-k`). For `r = 0` the `alpha` term is congruent
/// to `-(k+1)alpha` mod `d`, matching the qudit form of the formula.
fn amp_circle_fraction(d: u64, a: u64, alpha: u64, k: u64, r: &BigRational) -> BigRational {
    let big = |v: u64| BigInt::from(v);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = BigRational::from_integer(big(d - 1 - k) * big(k + 1) * big(a)) * &half;
    // j(j-k) = (d-1)(d-1-2k)/4, signed
    let jm = BigRational::new(
        big(d - 1) * (BigInt::from(d as i64 - 1 - 2 * k as i64)),
        BigInt::from(4),
    );
    let alpha_term = BigRational::from_integer(big(d - 1 - k) * big(alpha));
    (base - jm * r + alpha_term) / BigRational::from_integer(big(d))
}

/// The eigenvector basis with a floating-point `r`, for parameters outside
/// the exact rational subset.
pub fn eigenbasis_approx(d: u64, a: u64, r: f64) -> crate::basis::ApproxBasis {
    use crate::scalar::ApproxScalar;
    let a = a % d;
    let tau = 2.0 * std::f64::consts::PI;
    let scale = 1.0 / (d as f64).sqrt();
    let mut vectors = Vec::with_capacity(d as usize);
    let mut labels = Vec::with_capacity(d as usize);
    for alpha in 0..d {
        let amps = (0..d)
            .map(|k| {
                let base = (d - 1 - k) as f64 * (k + 1) as f64 * a as f64 / 2.0;
                let jm = (d as f64 - 1.0) * (d as f64 - 1.0 - 2.0 * k as f64) / 4.0;
                let exponent = base - jm * r + ((d - 1 - k) * alpha) as f64;
                let theta = tau * exponent / d as f64;
                ApproxScalar::new(scale * theta.cos(), scale * theta.sin())
            })
            .collect();
        vectors.push(amps);
        labels.push(VectorLabel::Other {
            name: format!("eigen(a={a}, alpha={alpha}, r~{r})"),
        });
    }
    crate::basis::ApproxBasis {
        dim: d as usize,
        tag: format!("B_r~{r}_a{a}"),
        vectors,
        labels,
    }
}

/// The eigenvalue `q^{j(a+r) - alpha}` of `v_{ra}` on `|a alpha>`.
pub fn eigenvalue(d: u64, a: u64, alpha: u64, r: &BigRational) -> CycloScalar {
    let j = BigRational::new(BigInt::from(d - 1), BigInt::from(2));
    let exponent = j * (BigRational::from_integer(BigInt::from(a)) + r)
        - BigRational::from_integer(BigInt::from(alpha));
    let f = exponent / BigRational::from_integer(BigInt::from(d));
    CycloScalar::circle_fraction(scalar_order(d, r), &f)
}

/// `<u|v>`, exact.
pub fn overlap(u: &BasisVector, v: &BasisVector) -> Result<CycloScalar> {
    u.dot(v)
}

/// `|<u|v>|^2`, exact.
pub fn overlap_magnitude_squared(u: &BasisVector, v: &BasisVector) -> Result<CycloScalar> {
    Ok(u.dot(v)?.abs_squared())
}

/// Orthonormality report for one basis of a set.
#[derive(Debug, Clone, Serialize)]
pub struct GramCheck {
    pub basis: usize,
    pub tag: String,
    pub pass: bool,
}

/// Cross-overlap report for one unordered basis pair.
#[derive(Debug, Clone, Serialize)]
pub struct PairOverlaps {
    pub first: usize,
    pub second: usize,
    pub pass: bool,
    /// Distinct `|<u|v>|^2` values observed, in canonical exact form.
    pub magnitudes_sq: Vec<CycloScalar>,
    pub magnitudes_sq_approx: Vec<f64>,
}

/// Exhaustive unbiasedness certificate for a set of bases.
#[derive(Debug, Clone, Serialize)]
pub struct MubCertificate {
    pub dim: u64,
    pub pass: bool,
    pub gram: Vec<GramCheck>,
    pub cross: Vec<PairOverlaps>,
    pub diagnostic: Option<String>,
}

/// A collection of bases over one space plus its overlap certificate.
#[derive(Debug, Clone, Serialize)]
pub struct MubSet {
    pub dim: u64,
    pub bases: Vec<Basis>,
    pub certificate: MubCertificate,
}

/// Exhaustively computes every within- and cross-basis overlap.
///
/// Within a basis the Gram matrix must be the identity; across bases every
/// magnitude squared must equal `1/d`. Exact mode admits no tolerance;
/// failures are reported, not raised.
pub fn certify(dim: u64, bases: &[Basis]) -> MubCertificate {
    let target = CycloScalar::from_rational(BigRational::new(BigInt::one(), BigInt::from(dim)));
    let mut gram = Vec::new();
    let mut cross = Vec::new();
    let mut diagnostic = None;

    for (i, basis) in bases.iter().enumerate() {
        gram.push(GramCheck {
            basis: i,
            tag: basis.tag().to_string(),
            pass: basis.gram_is_identity(),
        });
    }
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let mut pass = true;
            let mut magnitudes: Vec<CycloScalar> = Vec::new();
            for u in bases[i].vectors() {
                for v in bases[j].vectors() {
                    let m = overlap_magnitude_squared(u, v)
                        .expect("bases in a set share one dimension")
                        .fold_sqrt_d(dim)
                        .normal_form();
                    if !m.eq_in_dim(&target, dim) {
                        pass = false;
                    }
                    if !magnitudes.iter().any(|seen| seen.eq_in_dim(&m, dim)) {
                        magnitudes.push(m);
                    }
                }
            }
            if !pass && diagnostic.is_none() {
                diagnostic = Some(format!(
                    "bases {} and {} are not mutually unbiased: observed |<u|v>|^2 values {}",
                    bases[i].tag(),
                    bases[j].tag(),
                    magnitudes
                        .iter()
                        .map(|m| format!("{:.6}", m.to_approx(dim).re))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            let approx = magnitudes.iter().map(|m| m.to_approx(dim).re).collect();
            cross.push(PairOverlaps {
                first: i,
                second: j,
                pass,
                magnitudes_sq: magnitudes,
                magnitudes_sq_approx: approx,
            });
        }
    }
    let pass = gram.iter().all(|g| g.pass) && cross.iter().all(|c| c.pass);
    MubCertificate {
        dim,
        pass,
        gram,
        cross,
        diagnostic,
    }
}

/// The complete set of `d+1` mutually unbiased bases for prime `d`:
/// the computational basis followed by `B_{00} .. B_{0,d-1}`.
pub fn mub_set_prime(d: u64) -> Result<MubSet> {
    if !is_prime(d) {
        return Err(Error::UnsupportedDimension {
            dim: d,
            reason: "a complete unbiased set from the eigenbasis family needs a prime dimension"
                .into(),
        });
    }
    let set = eigenbasis_family(d);
    if !set.certificate.pass {
        return Err(Error::VerificationFailed(format!(
            "certification unexpectedly failed for prime dimension {d}: {:?}",
            set.certificate.diagnostic
        )));
    }
    Ok(set)
}

/// The computational basis plus every `B_{0a}`, with the certificate of
/// whatever unbiasedness actually holds. For prime `d` this certifies; for
/// other dimensions the certificate reports the failures (e.g. `d = 4`,
/// where the family is not a complete unbiased system).
pub fn eigenbasis_family(d: u64) -> MubSet {
    let zero = BigRational::zero();
    let mut bases = vec![computational_basis(d)];
    for a in 0..d {
        bases.push(eigenbasis(d, a, &zero));
    }
    let certificate = certify(d, &bases);
    MubSet {
        dim: d,
        bases,
        certificate,
    }
}

mod dim4 {
    //! The five mutually unbiased bases of dimension `4 = 2^2`, built on
    //! the two-qubit space: the canonical product basis, the pure tensor
    //! bases `w_00` and `w_11`, and the intricated bases `w_01` and `w_10`
    //! whose vectors combine the two members of each degenerate eigenspace
    //! of `w_ab = v_0a (x) v_0b` with weights `lambda = (1-i)/2` and
    //! `mu = (1+i)/2`.
    //!
    //! Vectors are stored in the published column-vector form. The `w_ab`
    //! eigen-tensor products reproduce these columns only up to per-vector
    //! unit phases (the tests pin down exactly which), so the columns
    //! themselves are the canonical representatives.

    use super::*;

    /// `(re + im*i) / 2` as an exact amplitude.
    fn half_gaussian(re: i64, im: i64) -> CycloScalar {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        CycloScalar::from_integer(re)
            .add(&CycloScalar::imaginary_unit().scale(&BigRational::from_integer(BigInt::from(im))))
            .scale(&half)
    }

    fn vector(amps: [(i64, i64); 4], label: VectorLabel) -> BasisVector {
        let amps = amps.iter().map(|&(re, im)| half_gaussian(re, im)).collect();
        BasisVector::new(4, amps, label)
    }

    fn sign_qubit(alpha: u64) -> BasisVector {
        // (|0> + (-1)^alpha |1>)/sqrt(2)
        let s = if alpha.is_multiple_of(2) { 1 } else { -1 };
        BasisVector::new(
            2,
            vec![
                CycloScalar::one().with_sqrt_d_power(1),
                CycloScalar::from_integer(s).with_sqrt_d_power(1),
            ],
            VectorLabel::Eigen {
                a: 0,
                alpha,
                r: BigRational::zero(),
            },
        )
    }

    fn phase_qubit(alpha: u64) -> BasisVector {
        // (|0> + i(-1)^alpha |1>)/sqrt(2)
        let s = if alpha.is_multiple_of(2) { 1 } else { -1 };
        BasisVector::new(
            2,
            vec![
                CycloScalar::one().with_sqrt_d_power(1),
                CycloScalar::imaginary_unit()
                    .scale(&BigRational::from_integer(BigInt::from(s)))
                    .with_sqrt_d_power(1),
            ],
            VectorLabel::Eigen {
                a: 1,
                alpha,
                r: BigRational::zero(),
            },
        )
    }

    fn w00_basis() -> Basis {
        let mut vectors = Vec::new();
        for alpha in 0..2u64 {
            for beta in 0..2u64 {
                vectors.push(sign_qubit(alpha).tensor(
                    &sign_qubit(beta),
                    VectorLabel::Tensor {
                        a: 0,
                        b: 0,
                        alpha,
                        beta,
                    },
                ));
            }
        }
        Basis::new(4, vectors, "w_00")
    }

    fn w11_basis() -> Basis {
        let mut vectors = Vec::new();
        for alpha in 0..2u64 {
            for beta in 0..2u64 {
                vectors.push(phase_qubit(alpha).tensor(
                    &phase_qubit(beta),
                    VectorLabel::Tensor {
                        a: 1,
                        b: 1,
                        alpha,
                        beta,
                    },
                ));
            }
        }
        Basis::new(4, vectors, "w_11")
    }

    fn w01_basis() -> Basis {
        let rows = [
            [(1, 0), (1, 0), (0, -1), (0, 1)],
            [(1, 0), (-1, 0), (0, 1), (0, 1)],
            [(1, 0), (-1, 0), (0, -1), (0, -1)],
            [(1, 0), (1, 0), (0, 1), (0, -1)],
        ];
        let vectors = rows
            .iter()
            .enumerate()
            .map(|(index, amps)| {
                vector(
                    *amps,
                    VectorLabel::Combined {
                        a: 0,
                        b: 1,
                        index: index as u64,
                    },
                )
            })
            .collect();
        Basis::new(4, vectors, "w_01")
    }

    fn w10_basis() -> Basis {
        let rows = [
            [(1, 0), (0, -1), (1, 0), (0, 1)],
            [(1, 0), (0, 1), (-1, 0), (0, 1)],
            [(1, 0), (0, 1), (1, 0), (0, -1)],
            [(1, 0), (0, -1), (-1, 0), (0, -1)],
        ];
        let vectors = rows
            .iter()
            .enumerate()
            .map(|(index, amps)| {
                vector(
                    *amps,
                    VectorLabel::Combined {
                        a: 1,
                        b: 0,
                        index: index as u64,
                    },
                )
            })
            .collect();
        Basis::new(4, vectors, "w_10")
    }

    /// The five pairwise unbiased bases of dimension 4, certified.
    pub fn mub_set_dim4() -> MubSet {
        let canonical = {
            let b = computational_basis(4);
            Basis::new(4, b.vectors().to_vec(), "canonical")
        };
        let bases = vec![
            canonical,
            w00_basis(),
            w11_basis(),
            w01_basis(),
            w10_basis(),
        ];
        let certificate = certify(4, &bases);
        MubSet {
            dim: 4,
            bases,
            certificate,
        }
    }

    /// Decides exactly, via the determinant of the 2x2 amplitude reshape,
    /// whether a two-qubit vector is a tensor product; returns the two
    /// factors when it is.
    pub fn is_product_vector(v: &BasisVector) -> Result<Option<(BasisVector, BasisVector)>> {
        if v.dim() != 4 {
            return Err(Error::DimensionMismatch(v.dim(), 4));
        }
        let a = v.amps();
        let det = a[0].mul(&a[3]).sub(&a[1].mul(&a[2]));
        if !det.is_zero() {
            return Ok(None);
        }
        let (i, j) = (0..4)
            .map(|p| (p / 2, p % 2))
            .find(|&(i, j)| !a[2 * i + j].is_zero())
            .expect("a basis vector has a nonzero amplitude");
        let pivot_inv = a[2 * i + j]
            .try_inverse()
            .expect("pivot amplitude must be exactly invertible");
        let left = BasisVector::new(
            2,
            vec![a[j].clone(), a[2 + j].clone()],
            VectorLabel::Other {
                name: "factor_left".into(),
            },
        );
        let right = BasisVector::new(
            2,
            vec![a[2 * i].mul(&pivot_inv), a[2 * i + 1].mul(&pivot_inv)],
            VectorLabel::Other {
                name: "factor_right".into(),
            },
        );
        Ok(Some((left, right)))
    }
}
