//! The cyclic operators `v_{ra}`, the Weyl pair `(x, z)` and the
//! generalized Pauli matrices `u_ab = x^a z^b`.
//!
//! Matrix conventions: rows and columns are labeled `|k=0> .. |k=d-1>`
//! (equivalently `|j,j> .. |j,-j>`). `v_{ra}` has `q^a, q^{2a}, ...` on the
//! superdiagonal and `exp(i 2 pi j r)` in the bottom-left corner; `x` shifts
//! (`x|k> = |k-1>` mod `d`) and `z` is the clock (`z|k> = q^k |k>`).

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, lcm_u64};
use crate::basis::{Basis, BasisVector, VectorLabel};
use crate::error::{Error, Result};
use crate::matrix::{GPMatrix, MatrixLabel};
use crate::scalar::CycloScalar;

/// Parameters of the cyclic operator `v_{ra}` in dimension `d = 2j+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorParams {
    dim: u64,
    r: BigRational,
    a: u64,
}

impl OperatorParams {
    pub fn new(dim: u64, r: BigRational, a: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Self { dim, r, a: a % dim })
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn a(&self) -> u64 {
        self.a
    }
}

/// Index pair `(a, b)` of a generalized Pauli `u_ab = x^a z^b`, reduced mod `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliLabel {
    pub a: u64,
    pub b: u64,
}

impl PauliLabel {
    pub fn new(d: u64, a: u64, b: u64) -> Self {
        Self { a: a % d, b: b % d }
    }
}

/// Which bracket `[A, B]_{-+}` to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bracket {
    Commutator,
    Anticommutator,
}

/// Root order over which all phases of a `(d, r)` construction are exact.
///
/// For `r = 0` the half-integer exponents of the eigenvector formula live in
/// the `2d`-th roots. For rational `r = p/s` the corner phase and the
/// `j m r` exponents need denominators up to `s` (odd `d`) or `4s` (even
/// `d`, where `j` and `m` are half-integers).
pub fn scalar_order(d: u64, r: &BigRational) -> u64 {
    if r.is_zero() {
        return 2 * d;
    }
    let s = r.denom().to_u64().expect("denominator fits in u64");
    if d % 2 == 1 {
        lcm_u64(2 * d, s * d)
    } else {
        lcm_u64(2 * d, 4 * s * d)
    }
}

/// `q^e` with `q = exp(2 pi i / d)` and integer exponent `e`.
pub fn q_power(d: u64, e: i64) -> CycloScalar {
    CycloScalar::root_of_unity(d, e).expect("d >= 1")
}

/// The corner phase `exp(i 2 pi j r)` with `j = (d-1)/2`.
fn corner_phase(d: u64, r: &BigRational) -> CycloScalar {
    let f = BigRational::new(BigInt::from(d - 1), BigInt::from(2)) * r;
    CycloScalar::circle_fraction(scalar_order(d, r), &f)
}

/// The matrix `V_{ra}`: superdiagonal `q^a, q^{2a}, ..., q^{2ja}` and
/// `exp(i 2 pi j r)` in the bottom-left corner.
pub fn build_v_matrix(p: &OperatorParams) -> GPMatrix {
    let d = p.dim as usize;
    let corner = corner_phase(p.dim, &p.r);
    let a = p.a;
    GPMatrix::from_fn(
        d,
        MatrixLabel::V {
            r: p.r.clone(),
            a: p.a,
        },
        |i, j| {
            if j == i + 1 {
                q_power(d as u64, (j as u64 * a) as i64)
            } else if i == d - 1 && j == 0 {
                corner.clone()
            } else {
                CycloScalar::zero()
            }
        },
    )
}

/// `V_{ra}` with a floating-point `r`, for parameters outside the exact
/// rational subset.
pub fn build_v_matrix_approx(d: u64, r: f64, a: u64) -> crate::matrix::ApproxMatrix {
    use crate::scalar::ApproxScalar;
    let dim = d as usize;
    let a = a % d;
    let mut entries = vec![ApproxScalar::zero(); dim * dim];
    let tau = 2.0 * std::f64::consts::PI;
    for i in 0..dim.saturating_sub(1) {
        let theta = tau * ((i + 1) as u64 * a) as f64 / d as f64;
        entries[i * dim + (i + 1)] = ApproxScalar::new(theta.cos(), theta.sin());
    }
    let corner = tau * (d as f64 - 1.0) / 2.0 * r;
    entries[(dim - 1) * dim] = ApproxScalar::new(corner.cos(), corner.sin());
    if dim == 1 {
        entries[0] = ApproxScalar::new(corner.cos(), corner.sin());
    }
    crate::matrix::ApproxMatrix {
        dim,
        entries,
        label: MatrixLabel::Other(format!("V(r~{r}, a={a})")),
    }
}

/// The Weyl pair: `x = v_00` (shift) and `z = v_00^dagger v_01` (clock).
pub fn weyl_pair(d: u64) -> (GPMatrix, GPMatrix) {
    let zero = BigRational::zero();
    let v00 = build_v_matrix(&OperatorParams::new(d, zero.clone(), 0).expect("d >= 1"));
    let v01 = build_v_matrix(&OperatorParams::new(d, zero, 1 % d).expect("d >= 1"));
    let x = v00.clone().with_label(MatrixLabel::X);
    let z = v00.dagger().mul(&v01).with_label(MatrixLabel::Z);
    (x, z)
}

type MatrixCache = HashMap<(u64, u64, u64), Arc<GPMatrix>>;

static U_CACHE: Lazy<RwLock<MatrixCache>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `u_ab = x^a z^b`, memoized per `(d, a, b)`.
pub fn generalized_pauli(d: u64, label: PauliLabel) -> Arc<GPMatrix> {
    let key = (d, label.a % d, label.b % d);
    if let Some(m) = U_CACHE.read().unwrap().get(&key) {
        return Arc::clone(m);
    }
    let (x, z) = weyl_pair(d);
    let m = x
        .pow(key.1 as u32)
        .mul(&z.pow(key.2 as u32))
        .with_label(MatrixLabel::U { a: key.1, b: key.2 });
    let m = Arc::new(m);
    U_CACHE
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&m))
        .clone()
}

/// `Tr(u^dagger v)`; for generalized Paulis this is `d * delta delta`.
pub fn trace_inner_product(u: &GPMatrix, v: &GPMatrix) -> Result<CycloScalar> {
    u.require_same_dim(v)?;
    Ok(u.dagger().mul(v).trace())
}

/// Coefficient and result label of `[u_ab, u_a'b']_{-+}`:
/// the bracket equals `(q^{-ba'} -+ q^{-ab'}) u_{a+a', b+b'}` with the
/// result label reduced mod `d`.
pub fn structure_constants(
    d: u64,
    l: PauliLabel,
    lp: PauliLabel,
    bracket: Bracket,
) -> (CycloScalar, PauliLabel) {
    let first = q_power(d, -((l.b * lp.a) as i64));
    let second = q_power(d, -((l.a * lp.b) as i64));
    let coeff = match bracket {
        Bracket::Commutator => first.sub(&second),
        Bracket::Anticommutator => first.add(&second),
    };
    (coeff, PauliLabel::new(d, l.a + lp.a, l.b + lp.b))
}

/// The explicit matrix `u u' -+ u' u`.
pub fn bracket_matrix(d: u64, l: PauliLabel, lp: PauliLabel, bracket: Bracket) -> GPMatrix {
    let u = generalized_pauli(d, l);
    let up = generalized_pauli(d, lp);
    let forward = u.mul(&up);
    let backward = up.mul(&u);
    match bracket {
        Bracket::Commutator => forward.sub(&backward),
        Bracket::Anticommutator => forward.add(&backward),
    }
}

/// Whether `u_l` and `u_lp` commute, decided on the matrices.
pub fn commute(d: u64, l: PauliLabel, lp: PauliLabel) -> bool {
    bracket_matrix(d, l, lp, Bracket::Commutator).is_zero()
}

/// Partition of the `d^2 - 1` non-identity labels into `d + 1` internally
/// commuting classes of `d - 1` labels each (prime `d` only).
///
/// Classes are the slope families `{(t, lambda*t) : t = 1..d-1}` for
/// `lambda = 0..d-1`, followed by `{(0, t) : t = 1..d-1}`. Membership is
/// re-verified on the matrices, pair by pair, not assumed from the
/// `ab' - ba' = 0 (mod d)` criterion.
pub fn partition_commuting_classes(d: u64) -> Result<Vec<Vec<PauliLabel>>> {
    if !is_prime(d) {
        return Err(Error::UnsupportedDimension {
            dim: d,
            reason: "the commuting-class partition is stated for prime dimensions".into(),
        });
    }
    let mut classes: Vec<Vec<PauliLabel>> = Vec::with_capacity(d as usize + 1);
    for lambda in 0..d {
        classes.push((1..d).map(|t| PauliLabel::new(d, t, lambda * t)).collect());
    }
    classes.push((1..d).map(|t| PauliLabel::new(d, 0, t)).collect());

    for (ci, class) in classes.iter().enumerate() {
        for (i, &l) in class.iter().enumerate() {
            for &lp in &class[i + 1..] {
                if !commute(d, l, lp) {
                    return Err(Error::VerificationFailed(format!(
                        "labels {l:?} and {lp:?} of class {ci} do not commute"
                    )));
                }
            }
        }
    }
    for (ci, class) in classes.iter().enumerate() {
        for other in classes.iter().skip(ci + 1) {
            for &l in class {
                for &lp in other {
                    if commute(d, l, lp) {
                        return Err(Error::VerificationFailed(format!(
                            "labels {l:?} and {lp:?} commute across classes"
                        )));
                    }
                }
            }
        }
    }
    Ok(classes)
}

/// The coupled two-spin basis of `E(2) (x) E(2)`: triplet vectors
/// (symmetric under factor swap) followed by the singlet (antisymmetric),
/// each normalized to unit length.
pub fn coupled_spin_basis() -> Basis {
    let zero = CycloScalar::zero();
    let one = CycloScalar::one();
    let h = CycloScalar::inv_sqrt_two();
    let vecs = vec![
        BasisVector::new(
            4,
            vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
            VectorLabel::Coupled {
                index: 0,
                symmetric: true,
            },
        ),
        BasisVector::new(
            4,
            vec![zero.clone(), h.clone(), h.clone(), zero.clone()],
            VectorLabel::Coupled {
                index: 1,
                symmetric: true,
            },
        ),
        BasisVector::new(
            4,
            vec![zero.clone(), zero.clone(), zero.clone(), one],
            VectorLabel::Coupled {
                index: 2,
                symmetric: true,
            },
        ),
        BasisVector::new(
            4,
            vec![zero.clone(), h.clone(), h.neg(), zero],
            VectorLabel::Coupled {
                index: 3,
                symmetric: false,
            },
        ),
    ];
    Basis::new(4, vecs, "coupled")
}

/// The factor-swap permutation on `E(2) (x) E(2)`.
pub fn swap_matrix() -> GPMatrix {
    GPMatrix::from_fn(4, MatrixLabel::Other("swap".into()), |i, j| {
        let swapped = (i % 2) * 2 + i / 2;
        if j == swapped {
            CycloScalar::one()
        } else {
            CycloScalar::zero()
        }
    })
}
