//! Dense square matrices over exact cyclotomic scalars.
//!
//! Rows and columns are indexed `0..d-1` following the ordering
//! `|j,j> .. |j,-j>`, i.e. `|k=0> .. |k=d-1>` in qudit notation.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ApproxScalar, CycloScalar};

/// Structured tag describing how a matrix was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixLabel {
    /// The cyclic operator matrix `V_{ra}`.
    V {
        r: BigRational,
        a: u64,
    },
    /// The shift matrix (cyclic permutation).
    X,
    /// The clock matrix (diagonal of `q` powers).
    Z,
    /// Generalized Pauli `x^a z^b`.
    U {
        a: u64,
        b: u64,
    },
    /// Pauli-group element `q^phase x^a z^b`.
    W {
        phase: u64,
        a: u64,
        b: u64,
    },
    Identity,
    Product,
    Other(String),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum LabelRepr {
    V { r: String, a: u64 },
    X,
    Z,
    U { a: u64, b: u64 },
    W { phase: u64, a: u64, b: u64 },
    Identity,
    Product,
    Other { name: String },
}

impl From<&MatrixLabel> for LabelRepr {
    fn from(l: &MatrixLabel) -> Self {
        match l {
            MatrixLabel::V { r, a } => LabelRepr::V {
                r: r.to_string(),
                a: *a,
            },
            MatrixLabel::X => LabelRepr::X,
            MatrixLabel::Z => LabelRepr::Z,
            MatrixLabel::U { a, b } => LabelRepr::U { a: *a, b: *b },
            MatrixLabel::W { phase, a, b } => LabelRepr::W {
                phase: *phase,
                a: *a,
                b: *b,
            },
            MatrixLabel::Identity => LabelRepr::Identity,
            MatrixLabel::Product => LabelRepr::Product,
            MatrixLabel::Other(name) => LabelRepr::Other { name: name.clone() },
        }
    }
}

impl TryFrom<LabelRepr> for MatrixLabel {
    type Error = String;
    fn try_from(l: LabelRepr) -> std::result::Result<Self, String> {
        Ok(match l {
            LabelRepr::V { r, a } => MatrixLabel::V {
                r: r.parse().map_err(|e| format!("bad rational {r:?}: {e}"))?,
                a,
            },
            LabelRepr::X => MatrixLabel::X,
            LabelRepr::Z => MatrixLabel::Z,
            LabelRepr::U { a, b } => MatrixLabel::U { a, b },
            LabelRepr::W { phase, a, b } => MatrixLabel::W { phase, a, b },
            LabelRepr::Identity => MatrixLabel::Identity,
            LabelRepr::Product => MatrixLabel::Product,
            LabelRepr::Other { name } => MatrixLabel::Other(name),
        })
    }
}

impl Serialize for MatrixLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabelRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        LabelRepr::deserialize(d)?
            .try_into()
            .map_err(D::Error::custom)
    }
}

/// Dense `d x d` matrix of exact cyclotomic scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct GPMatrix {
    dim: usize,
    entries: Vec<CycloScalar>,
    label: MatrixLabel,
}

impl GPMatrix {
    pub fn from_fn(
        dim: usize,
        label: MatrixLabel,
        f: impl Fn(usize, usize) -> CycloScalar,
    ) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self {
            dim,
            entries,
            label,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, MatrixLabel::Identity, |i, j| {
            if i == j {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &MatrixLabel {
        &self.label
    }

    pub fn with_label(mut self, label: MatrixLabel) -> Self {
        self.label = label;
        self
    }

    pub fn entry(&self, row: usize, col: usize) -> &CycloScalar {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycloScalar]> {
        self.entries.chunks(self.dim)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let d = self.dim;
        Self::from_fn(d, MatrixLabel::Product, |i, j| {
            let mut acc = CycloScalar::zero();
            for k in 0..d {
                let a = self.entry(i, k);
                if a.num_terms() == 0 {
                    continue;
                }
                let b = other.entry(k, j);
                if b.num_terms() == 0 {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions must agree");
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Self {
            dim: self.dim,
            entries,
            label: MatrixLabel::Product,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scalar_mul(&CycloScalar::from_integer(-1)))
    }

    pub fn scalar_mul(&self, s: &CycloScalar) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
            label: MatrixLabel::Product,
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        Self::from_fn(d, MatrixLabel::Product, |i, j| self.entry(j, i).conj())
    }

    pub fn trace(&self) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for i in 0..self.dim {
            acc = acc.add(self.entry(i, i));
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product; indices are `(i1*d2 + i2, j1*d2 + j2)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let d1 = self.dim;
        let d2 = other.dim;
        GPMatrix::from_fn(d1 * d2, MatrixLabel::Product, |i, j| {
            self.entry(i / d2, j / d2).mul(other.entry(i % d2, j % d2))
        })
    }

    /// Apply to a column vector of amplitudes.
    pub fn apply(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(v.len(), self.dim, "vector length must match dimension");
        (0..self.dim)
            .map(|i| {
                let mut acc = CycloScalar::zero();
                for (k, vk) in v.iter().enumerate() {
                    let a = self.entry(i, k);
                    if a.num_terms() == 0 || vk.num_terms() == 0 {
                        continue;
                    }
                    acc = acc.add(&a.mul(vk));
                }
                acc
            })
            .collect()
    }

    /// Entrywise exact equality of the represented values.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a == b)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.eq_exact(&Self::identity(self.dim))
    }

    /// `M M† = 1`, exactly.
    pub fn is_unitary(&self) -> bool {
        self.mul(&self.dagger()).is_identity()
    }

    pub fn require_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn to_approx(&self) -> ApproxMatrix {
        ApproxMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| e.to_approx(self.dim as u64))
                .collect(),
            label: self.label.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    mode: String,
    entries: Vec<Vec<CycloScalar>>,
    label: MatrixLabel,
}

impl Serialize for GPMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            dim: self.dim,
            mode: "exact".into(),
            entries: self.rows().map(|r| r.to_vec()).collect(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GPMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = MatrixRepr::deserialize(d)?;
        if repr.mode != "exact" {
            return Err(D::Error::custom("expected an exact-mode matrix"));
        }
        if repr.entries.len() != repr.dim || repr.entries.iter().any(|r| r.len() != repr.dim) {
            return Err(D::Error::custom("entry grid does not match dim"));
        }
        Ok(GPMatrix {
            dim: repr.dim,
            entries: repr.entries.into_iter().flatten().collect(),
            label: repr.label,
        })
    }
}

/// Floating-point matrix for the approximate mode.
#[derive(Debug, Clone)]
pub struct ApproxMatrix {
    pub dim: usize,
    pub entries: Vec<ApproxScalar>,
    pub label: MatrixLabel,
}

impl ApproxMatrix {
    pub fn entry(&self, row: usize, col: usize) -> ApproxScalar {
        self.entries[row * self.dim + col]
    }

    /// Largest entrywise deviation from `M M† = 1`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ApproxScalar::zero();
                for k in 0..d {
                    acc = acc + self.entry(i, k) * self.entry(j, k).conj();
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - ApproxScalar::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

impl Serialize for ApproxMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            dim: usize,
            mode: &'static str,
            entries: Vec<&'a [ApproxScalar]>,
            label: &'a MatrixLabel,
        }
        Repr {
            dim: self.dim,
            mode: "approx",
            entries: self.entries.chunks(self.dim).collect(),
            label: &self.label,
        }
        .serialize(s)
    }
}
