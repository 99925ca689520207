//! State vectors and ordered bases over exact amplitudes.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ApproxScalar, CycloScalar};

/// Identifies how a basis vector was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorLabel {
    /// `|k>` of the computational basis.
    Computational { k: u64 },
    /// `|a alpha>` eigenvector of the cyclic operator with parameter `r`.
    Eigen { a: u64, alpha: u64, r: BigRational },
    /// `|a alpha> (x) |b beta>` tensor-product vector.
    Tensor {
        a: u64,
        b: u64,
        alpha: u64,
        beta: u64,
    },
    /// Linear combination inside a degenerate eigenspace of `w_ab`.
    Combined { a: u64, b: u64, index: u64 },
    /// Coupled two-spin vector (symmetric or antisymmetric under swap).
    Coupled { index: u64, symmetric: bool },
    /// Ring molecular orbital `|kappa_s>`.
    Orbital { s: u64 },
    /// Cyclic spin-chain wave with wavenumber `s`.
    SpinWave { s: u64 },
    /// Free-form tag (e.g. factors extracted from a product vector).
    Other { name: String },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum VectorLabelRepr {
    Computational {
        k: u64,
    },
    Eigen {
        a: u64,
        alpha: u64,
        r: String,
    },
    Tensor {
        a: u64,
        b: u64,
        alpha: u64,
        beta: u64,
    },
    Combined {
        a: u64,
        b: u64,
        index: u64,
    },
    Coupled {
        index: u64,
        symmetric: bool,
    },
    Orbital {
        s: u64,
    },
    SpinWave {
        s: u64,
    },
    Other {
        name: String,
    },
}

impl Serialize for VectorLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            VectorLabel::Computational { k } => VectorLabelRepr::Computational { k: *k },
            VectorLabel::Eigen { a, alpha, r } => VectorLabelRepr::Eigen {
                a: *a,
                alpha: *alpha,
                r: r.to_string(),
            },
            VectorLabel::Tensor { a, b, alpha, beta } => VectorLabelRepr::Tensor {
                a: *a,
                b: *b,
                alpha: *alpha,
                beta: *beta,
            },
            VectorLabel::Combined { a, b, index } => VectorLabelRepr::Combined {
                a: *a,
                b: *b,
                index: *index,
            },
            VectorLabel::Coupled { index, symmetric } => VectorLabelRepr::Coupled {
                index: *index,
                symmetric: *symmetric,
            },
            VectorLabel::Orbital { s: v } => VectorLabelRepr::Orbital { s: *v },
            VectorLabel::SpinWave { s: v } => VectorLabelRepr::SpinWave { s: *v },
            VectorLabel::Other { name } => VectorLabelRepr::Other { name: name.clone() },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        Ok(match VectorLabelRepr::deserialize(d)? {
            VectorLabelRepr::Computational { k } => VectorLabel::Computational { k },
            VectorLabelRepr::Eigen { a, alpha, r } => VectorLabel::Eigen {
                a,
                alpha,
                r: r.parse()
                    .map_err(|e| D::Error::custom(format!("bad rational {r:?}: {e}")))?,
            },
            VectorLabelRepr::Tensor { a, b, alpha, beta } => {
                VectorLabel::Tensor { a, b, alpha, beta }
            }
            VectorLabelRepr::Combined { a, b, index } => VectorLabel::Combined { a, b, index },
            VectorLabelRepr::Coupled { index, symmetric } => {
                VectorLabel::Coupled { index, symmetric }
            }
            VectorLabelRepr::Orbital { s } => VectorLabel::Orbital { s },
            VectorLabelRepr::SpinWave { s } => VectorLabel::SpinWave { s },
            VectorLabelRepr::Other { name } => VectorLabel::Other { name },
        })
    }
}

/// A vector in dimension `d`, stored as `d` exact amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    dim: usize,
    amps: Vec<CycloScalar>,
    label: VectorLabel,
}

impl BasisVector {
    pub fn new(dim: usize, amps: Vec<CycloScalar>, label: VectorLabel) -> Self {
        assert_eq!(amps.len(), dim, "amplitude count must equal the dimension");
        Self { dim, amps, label }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amps(&self) -> &[CycloScalar] {
        &self.amps
    }

    pub fn amp(&self, k: usize) -> &CycloScalar {
        &self.amps[k]
    }

    pub fn label(&self) -> &VectorLabel {
        &self.label
    }

    pub fn with_label(mut self, label: VectorLabel) -> Self {
        self.label = label;
        self
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        Self {
            dim: self.dim,
            amps: self.amps.iter().map(|a| a.mul(s)).collect(),
            label: self.label.clone(),
        }
    }

    /// `<self|other>` with the physics convention (conjugate on the left).
    pub fn dot(&self, other: &Self) -> Result<CycloScalar> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut acc = CycloScalar::zero();
        for (u, v) in self.amps.iter().zip(other.amps.iter()) {
            if u.num_terms() == 0 || v.num_terms() == 0 {
                continue;
            }
            acc = acc.add(&u.conj().mul(v));
        }
        Ok(acc)
    }

    pub fn norm_squared(&self) -> CycloScalar {
        self.dot(self).expect("same vector")
    }

    pub fn is_unit(&self) -> bool {
        self.norm_squared()
            .eq_in_dim(&CycloScalar::one(), self.dim as u64)
    }

    /// Tensor product, amplitude `k1*d2 + k2 = amp1(k1)*amp2(k2)`.
    ///
    /// When the two factors share a dimension, the accumulated
    /// `1/sqrt(d)` exponents (which refer to the factor dimension) are
    /// folded into rational coefficients so the result carries no stale
    /// normalization context.
    pub fn tensor(&self, other: &Self, label: VectorLabel) -> Self {
        let d1 = self.dim;
        let d2 = other.dim;
        let mut amps = Vec::with_capacity(d1 * d2);
        for a in &self.amps {
            for b in &other.amps {
                let mut p = a.mul(b);
                if d1 == d2 {
                    p = p.fold_sqrt_d(d1 as u64);
                } else {
                    assert!(
                        p.sqrt_d_power() % 2 == 0,
                        "cannot normalize a mixed-dimension tensor amplitude with an odd sqrt power"
                    );
                }
                amps.push(p);
            }
        }
        Self::new(d1 * d2, amps, label)
    }

    pub fn to_approx(&self) -> Vec<ApproxScalar> {
        self.amps
            .iter()
            .map(|a| a.to_approx(self.dim as u64))
            .collect()
    }

    /// Entrywise exact equality in this vector's dimension context.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .amps
                .iter()
                .zip(other.amps.iter())
                .all(|(a, b)| a.eq_in_dim(b, self.dim as u64))
    }

    /// If `other = c * self` for a scalar `c`, returns `c`.
    pub fn phase_to(&self, other: &Self) -> Option<CycloScalar> {
        if self.dim != other.dim {
            return None;
        }
        let k = self.amps.iter().position(|a| !a.is_zero())?;
        let c = self.amps[k].try_inverse()?.mul(&other.amps[k]);
        for (a, b) in self.amps.iter().zip(other.amps.iter()) {
            if !a.mul(&c).eq_in_dim(b, self.dim as u64) {
                return None;
            }
        }
        Some(c)
    }
}

#[derive(Serialize, Deserialize)]
struct BasisVectorRepr {
    label: VectorLabel,
    amps: Vec<CycloScalar>,
}

impl Serialize for BasisVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasisVectorRepr {
            label: self.label.clone(),
            amps: self.amps.clone(),
        }
        .serialize(s)
    }
}

/// An ordered list of `d` vectors in dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    dim: usize,
    vectors: Vec<BasisVector>,
    tag: String,
}

impl Basis {
    pub fn new(dim: usize, vectors: Vec<BasisVector>, tag: impl Into<String>) -> Self {
        assert_eq!(vectors.len(), dim, "a basis holds exactly dim vectors");
        assert!(vectors.iter().all(|v| v.dim() == dim));
        Self {
            dim,
            vectors,
            tag: tag.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn vectors(&self) -> &[BasisVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &BasisVector {
        &self.vectors[i]
    }

    pub fn to_approx(&self) -> ApproxBasis {
        ApproxBasis {
            dim: self.dim,
            tag: self.tag.clone(),
            vectors: self.vectors.iter().map(|v| v.to_approx()).collect(),
            labels: self.vectors.iter().map(|v| v.label().clone()).collect(),
        }
    }

    /// Exact orthonormality: the Gram matrix is the identity.
    pub fn gram_is_identity(&self) -> bool {
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let g = u.dot(v).expect("equal dims within a basis");
                let target = if i == j {
                    CycloScalar::one()
                } else {
                    CycloScalar::zero()
                };
                if !g.eq_in_dim(&target, self.dim as u64) {
                    return false;
                }
            }
        }
        true
    }
}

impl Serialize for Basis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            dim: usize,
            tag: &'a str,
            mode: &'static str,
            vectors: Vec<Vec<CycloScalar>>,
            labels: Vec<&'a VectorLabel>,
        }
        Repr {
            dim: self.dim,
            tag: &self.tag,
            mode: "exact",
            vectors: self.vectors.iter().map(|v| v.amps().to_vec()).collect(),
            labels: self.vectors.iter().map(|v| v.label()).collect(),
        }
        .serialize(s)
    }
}

/// Floating-point counterpart of [`Basis`] for the approximate mode.
#[derive(Debug, Clone)]
pub struct ApproxBasis {
    pub dim: usize,
    pub tag: String,
    pub vectors: Vec<Vec<ApproxScalar>>,
    pub labels: Vec<VectorLabel>,
}

impl ApproxBasis {
    /// Largest entrywise deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let mut acc = ApproxScalar::zero();
                for (a, b) in u.iter().zip(v.iter()) {
                    acc = acc + a.conj() * *b;
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - ApproxScalar::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

impl Serialize for ApproxBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            dim: usize,
            tag: &'a str,
            mode: &'static str,
            vectors: &'a [Vec<ApproxScalar>],
            labels: &'a [VectorLabel],
        }
        Repr {
            dim: self.dim,
            tag: &self.tag,
            mode: "approx",
            vectors: &self.vectors,
            labels: &self.labels,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(dim: usize, k: usize) -> BasisVector {
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
    }

    #[test]
    fn unit_vectors_are_orthonormal() {
        let b = Basis::new(3, (0..3).map(|k| unit(3, k)).collect(), "B_3");
        assert!(b.gram_is_identity());
        assert!(b.vectors().iter().all(|v| v.is_unit()));
    }

    #[test]
    fn dot_rejects_dimension_mismatch() {
        let u = unit(2, 0);
        let v = unit(3, 0);
        assert!(matches!(u.dot(&v), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn tensor_of_units() {
        let t = unit(2, 1).tensor(
            &unit(2, 0),
            VectorLabel::Tensor {
                a: 0,
                b: 0,
                alpha: 0,
                beta: 0,
            },
        );
        assert_eq!(t.dim(), 4);
        assert!(t.amp(2).is_one());
        assert!(t.amp(0).is_zero());
    }

    #[test]
    fn phase_matching_detects_collinearity() {
        let u = unit(2, 0);
        let i = CycloScalar::imaginary_unit();
        let v = u.scale(&i);
        let c = u.phase_to(&v).unwrap();
        assert_eq!(c, i);
        assert!(u.phase_to(&unit(2, 1)).is_none());
    }
}
