//! The finite Pauli group: `w_abc = q^a x^b z^c` with all three indices
//! mod `d`, a group of order `d^3` under operator multiplication.
//!
//! The multiplication law on labels is never hardcoded; a product is
//! computed on the matrices, decoded back to the unique matching label and
//! memoized. Decoding re-verifies the full matrix, so a product that left
//! the `d^3` label set (which would mean the label set is not closed)
//! surfaces as an error instead of being silently relabeled.

use std::collections::HashMap;
use std::sync::RwLock;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{GPMatrix, MatrixLabel};
use crate::weyl::{generalized_pauli, q_power, PauliLabel};

/// Group element `q^a x^b z^c` (phase exponent, shift power, clock power).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl PauliElement {
    pub fn new(d: u64, a: u64, b: u64, c: u64) -> Self {
        Self {
            a: a % d,
            b: b % d,
            c: c % d,
        }
    }

    pub fn identity() -> Self {
        Self { a: 0, b: 0, c: 0 }
    }
}

/// The matrix of `w_abc = q^a u_bc`.
pub fn element_matrix(d: u64, e: &PauliElement) -> GPMatrix {
    let u = generalized_pauli(d, PauliLabel::new(d, e.b, e.c));
    u.scalar_mul(&q_power(d, e.a as i64))
        .with_label(MatrixLabel::W {
            phase: e.a % d,
            a: e.b % d,
            b: e.c % d,
        })
}

/// Recovers the unique label whose matrix equals `m`, verifying the whole
/// matrix rather than trusting the decoded indices.
fn decode(d: u64, m: &GPMatrix) -> Result<PauliElement> {
    let closure_err = || {
        Error::VerificationFailed(format!(
            "matrix does not belong to the d^3 Pauli label set for d={d}"
        ))
    };
    let dim = d as usize;
    let row0 = (0..dim)
        .find(|&i| !m.entry(i, 0).is_zero())
        .ok_or_else(closure_err)?;
    let b = (d - row0 as u64) % d;
    let exponent_of = |entry: &crate::scalar::CycloScalar| -> Option<u64> {
        (0..d).find(|&e| entry == &q_power(d, e as i64))
    };
    let a = exponent_of(m.entry(row0, 0)).ok_or_else(closure_err)?;
    let c = if d == 1 {
        0
    } else {
        let r1 = ((1 + d - b) % d) as usize;
        let e1 = exponent_of(m.entry(r1, 1)).ok_or_else(closure_err)?;
        (e1 + d - a) % d
    };
    let candidate = PauliElement::new(d, a, b, c);
    if element_matrix(d, &candidate).eq_exact(m) {
        Ok(candidate)
    } else {
        Err(closure_err())
    }
}

type ProductCache = HashMap<(u64, PauliElement, PauliElement), PauliElement>;

static MUL_CACHE: Lazy<RwLock<ProductCache>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Product of two elements: the unique label whose matrix equals
/// `matrix(x) * matrix(y)`. Memoized per `(d, x, y)`.
pub fn multiply(d: u64, x: &PauliElement, y: &PauliElement) -> Result<PauliElement> {
    let key = (d, *x, *y);
    if let Some(p) = MUL_CACHE.read().unwrap().get(&key) {
        return Ok(*p);
    }
    let product = decode(d, &element_matrix(d, x).mul(&element_matrix(d, y)))?;
    MUL_CACHE.write().unwrap().insert(key, product);
    Ok(product)
}

/// Inverse, read off the conjugate-transpose matrix (the elements are
/// unitary).
pub fn inverse(d: u64, x: &PauliElement) -> Result<PauliElement> {
    decode(d, &element_matrix(d, x).dagger())
}

/// All `d^3` elements, in lexicographic `(a, b, c)` order.
pub fn enumerate_group(d: u64) -> Vec<PauliElement> {
    let mut out = Vec::with_capacity((d * d * d) as usize);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                out.push(PauliElement { a, b, c });
            }
        }
    }
    out
}

/// Full multiplication table (rows x columns in enumeration order).
pub fn cayley_table(d: u64) -> Result<Vec<Vec<PauliElement>>> {
    let elements = enumerate_group(d);
    elements
        .iter()
        .map(|x| elements.iter().map(|y| multiply(d, x, y)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        for d in [1u64, 2, 3] {
            let id = PauliElement::identity();
            for y in enumerate_group(d) {
                assert_eq!(multiply(d, &id, &y).unwrap(), y);
                assert_eq!(multiply(d, &y, &id).unwrap(), y);
            }
        }
    }

    #[test]
    fn xz_product_label_d2() {
        // oracle: the explicit 2x2 matrix product X * Z is the matrix of XZ
        let x = PauliElement::new(2, 0, 1, 0);
        let z = PauliElement::new(2, 0, 0, 1);
        let product = multiply(2, &x, &z).unwrap();
        assert_eq!(product, PauliElement::new(2, 0, 1, 1));
        let oracle = element_matrix(2, &x).mul(&element_matrix(2, &z));
        assert!(oracle.eq_exact(&element_matrix(2, &product)));
    }

    #[test]
    fn group_order_and_distinct_matrices() {
        for d in [1u64, 2, 3] {
            let elements = enumerate_group(d);
            assert_eq!(elements.len(), (d * d * d) as usize);
            let matrices: Vec<GPMatrix> = elements.iter().map(|e| element_matrix(d, e)).collect();
            for i in 0..matrices.len() {
                for j in i + 1..matrices.len() {
                    assert!(
                        !matrices[i].eq_exact(&matrices[j]),
                        "labels {:?} and {:?} share a matrix for d={d}",
                        elements[i],
                        elements[j]
                    );
                }
            }
        }
    }

    #[test]
    fn closure_d3_exhaustive() {
        let elements = enumerate_group(3);
        for x in &elements {
            for y in &elements {
                multiply(3, x, y).expect("product stays in the label set");
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(
            inverse(2, &PauliElement::new(2, 0, 1, 0)).unwrap(),
            PauliElement::new(2, 0, 1, 0)
        );
        // d=3: x^{-1} = x^2, checked through the matrices
        let inv = inverse(3, &PauliElement::new(3, 0, 1, 0)).unwrap();
        assert_eq!(inv, PauliElement::new(3, 0, 2, 0));
        for d in [1u64, 2, 3] {
            for x in enumerate_group(d) {
                let inv = inverse(d, &x).unwrap();
                assert_eq!(multiply(d, &x, &inv).unwrap(), PauliElement::identity());
            }
        }
    }

    #[test]
    fn u_subset_matches_weyl_module() {
        for d in [2u64, 3] {
            for b in 0..d {
                for c in 0..d {
                    let w = element_matrix(d, &PauliElement::new(d, 0, b, c));
                    let u = generalized_pauli(d, PauliLabel::new(d, b, c));
                    assert!(w.eq_exact(&u));
                }
            }
        }
    }
}
