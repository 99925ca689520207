//! The full invariant sweep behind the `verify` command: every identity
//! the library promises, run up to a dimension cap, each reported as one
//! pass/fail line.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::is_prime;
use crate::basis::Basis;
use crate::cyclic;
use crate::mub;
use crate::pauli_group::{self, PauliElement};
use crate::scalar::CycloScalar;
use crate::weyl::{self, Bracket, OperatorParams, PauliLabel};

/// Outcome of one invariant check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckReport {
    fn new(name: &str, passed: bool, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            details: details.into(),
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rationals() -> [BigRational; 3] {
    [
        BigRational::zero(),
        BigRational::new(1.into(), 2.into()),
        BigRational::new(1.into(), 3.into()),
    ]
}

fn check_v_unitarity(d_max: u64) -> CheckReport {
    let cap = d_max.min(12);
    for d in 1..=cap {
        for a in 0..d {
            for r in rationals() {
                let m = weyl::build_v_matrix(&OperatorParams::new(d, r.clone(), a).unwrap());
                if !m.is_unitary() {
                    return CheckReport::new(
                        "v-unitarity",
                        false,
                        format!("V(r={r}, a={a}) not unitary at d={d}"),
                    );
                }
            }
        }
    }
    CheckReport::new(
        "v-unitarity",
        true,
        format!("V(r,a) unitary for d <= {cap}, r in {{0, 1/2, 1/3}}"),
    )
}

fn check_weyl_pair(d_max: u64) -> CheckReport {
    let cap = d_max.min(12);
    for d in 1..=cap {
        let (x, z) = weyl::weyl_pair(d);
        let q = weyl::q_power(d, 1);
        if !x.mul(&z).sub(&z.mul(&x).scalar_mul(&q)).is_zero() {
            return CheckReport::new("weyl-pair", false, format!("xz != q zx at d={d}"));
        }
        if !x.pow(d as u32).is_identity() || !z.pow(d as u32).is_identity() {
            return CheckReport::new("weyl-pair", false, format!("x^d or z^d != 1 at d={d}"));
        }
    }
    CheckReport::new(
        "weyl-pair",
        true,
        format!("xz = q zx and x^d = z^d = 1 for d <= {cap}"),
    )
}

fn check_trace_orthogonality(d_max: u64) -> CheckReport {
    let cap = d_max.min(9);
    for d in 1..=cap {
        for a in 0..d {
            for b in 0..d {
                let u = weyl::generalized_pauli(d, PauliLabel::new(d, a, b));
                for ap in 0..d {
                    for bp in 0..d {
                        let v = weyl::generalized_pauli(d, PauliLabel::new(d, ap, bp));
                        let t = weyl::trace_inner_product(&u, &v).expect("same dimension");
                        let expect = if a == ap && b == bp {
                            CycloScalar::from_integer(d as i64)
                        } else {
                            CycloScalar::zero()
                        };
                        if t != expect {
                            return CheckReport::new(
                                "trace-orthogonality",
                                false,
                                format!("Tr(u†u') wrong at d={d} ({a},{b}) ({ap},{bp})"),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckReport::new(
        "trace-orthogonality",
        true,
        format!("Tr(u†u') = d δδ over all label pairs for d <= {cap}"),
    )
}

fn check_structure_constants(d_max: u64) -> CheckReport {
    let cap = d_max.min(7);
    for d in 1..=cap {
        for a in 0..d {
            for b in 0..d {
                for ap in 0..d {
                    for bp in 0..d {
                        let l = PauliLabel::new(d, a, b);
                        let lp = PauliLabel::new(d, ap, bp);
                        for bracket in [Bracket::Commutator, Bracket::Anticommutator] {
                            let lhs = weyl::bracket_matrix(d, l, lp, bracket);
                            let (coeff, label) = weyl::structure_constants(d, l, lp, bracket);
                            let rhs = weyl::generalized_pauli(d, label).scalar_mul(&coeff);
                            if !lhs.eq_exact(&rhs) {
                                return CheckReport::new(
                                    "structure-constants",
                                    false,
                                    format!("bracket mismatch d={d} {l:?} {lp:?} {bracket:?}"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    CheckReport::new(
        "structure-constants",
        true,
        format!("[u,u']-+ = (q^-ba' -+ q^-ab') u'' entrywise for d <= {cap}"),
    )
}

fn check_anticommutator_pattern(d_max: u64) -> CheckReport {
    for d in (3..=d_max.min(9)).step_by(2) {
        for a in 0..d {
            for b in 0..d {
                for ap in 0..d {
                    for bp in 0..d {
                        let m = weyl::bracket_matrix(
                            d,
                            PauliLabel::new(d, a, b),
                            PauliLabel::new(d, ap, bp),
                            Bracket::Anticommutator,
                        );
                        if m.is_zero() {
                            return CheckReport::new(
                                "anticommutator-pattern",
                                false,
                                format!("vanishing anticommutator at odd d={d}"),
                            );
                        }
                    }
                }
            }
        }
    }
    for d in [2u64, 4] {
        if d > d_max {
            continue;
        }
        for a in 0..d {
            for b in 0..d {
                for ap in 0..d {
                    for bp in 0..d {
                        let m = weyl::bracket_matrix(
                            d,
                            PauliLabel::new(d, a, b),
                            PauliLabel::new(d, ap, bp),
                            Bracket::Anticommutator,
                        );
                        let criterion = (a * bp + d * d - b * ap) % d == d / 2;
                        if m.is_zero() != criterion {
                            return CheckReport::new(
                                "anticommutator-pattern",
                                false,
                                format!("zero pattern mismatch at d={d} ({a},{b}),({ap},{bp})"),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckReport::new(
        "anticommutator-pattern",
        true,
        format!(
            "no vanishing anticommutator for odd d <= {}; for d in {{2,4}} (up to d_max) zero iff ab'-ba' = d/2 (mod d)",
            d_max.min(9)
        ),
    )
}

fn check_eigenvalue_equations(d_max: u64) -> CheckReport {
    let zero = BigRational::zero();
    let cap = d_max.min(12);
    for d in 1..=cap {
        for a in 0..d {
            let v = weyl::build_v_matrix(&OperatorParams::new(d, zero.clone(), a).unwrap());
            let basis = mub::eigenbasis(d, a, &zero);
            for (alpha, vec) in basis.vectors().iter().enumerate() {
                let lam = mub::eigenvalue(d, a, alpha as u64, &zero);
                let image = v.apply(vec.amps());
                for (got, amp) in image.iter().zip(vec.amps()) {
                    if !got.sub(&lam.mul(amp)).is_zero() {
                        return CheckReport::new(
                            "eigenvalue-equations",
                            false,
                            format!("residual nonzero at d={d} a={a} alpha={alpha} r=0"),
                        );
                    }
                }
            }
        }
    }
    for d in [2u64, 3, 5] {
        if d > d_max {
            continue;
        }
        for r in [
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ] {
            for a in 0..d {
                let v = weyl::build_v_matrix(&OperatorParams::new(d, r.clone(), a).unwrap());
                let basis = mub::eigenbasis(d, a, &r);
                for (alpha, vec) in basis.vectors().iter().enumerate() {
                    let lam = mub::eigenvalue(d, a, alpha as u64, &r);
                    let image = v.apply(vec.amps());
                    for (got, amp) in image.iter().zip(vec.amps()) {
                        if !got.sub(&lam.mul(amp)).is_zero() {
                            return CheckReport::new(
                                "eigenvalue-equations",
                                false,
                                format!("residual nonzero at d={d} a={a} alpha={alpha} r={r}"),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckReport::new(
        "eigenvalue-equations",
        true,
        format!("exact eigenvalue residuals for d <= {cap} (r=0) and r in {{1/2,1/3}} at d in {{2,3,5}}"),
    )
}

fn check_mub_certification(d_max: u64) -> CheckReport {
    for d in [2u64, 3, 5, 7, 11, 13] {
        if d > d_max {
            continue;
        }
        match mub::mub_set_prime(d) {
            Ok(set) => {
                if !set.certificate.pass || set.bases.len() != d as usize + 1 {
                    return CheckReport::new(
                        "mub-certification",
                        false,
                        format!("prime d={d} failed certification"),
                    );
                }
            }
            Err(e) => {
                return CheckReport::new("mub-certification", false, format!("d={d}: {e}"));
            }
        }
    }
    if d_max >= 4 {
        let set = mub::mub_set_dim4();
        if !set.certificate.pass {
            return CheckReport::new("mub-certification", false, "dim-4 tensor set failed");
        }
        let family = mub::eigenbasis_family(4);
        if family.certificate.pass {
            return CheckReport::new(
                "mub-certification",
                false,
                "dim-4 eigenbasis family certified but must not be complete",
            );
        }
    }
    CheckReport::new(
        "mub-certification",
        true,
        format!(
            "complete sets certified for primes <= {d_max}; dim-4 tensor set certified; naive dim-4 family rejected"
        ),
    )
}

fn check_partition(d_max: u64) -> CheckReport {
    for d in 2..=d_max.min(13) {
        if !is_prime(d) {
            continue;
        }
        match weyl::partition_commuting_classes(d) {
            Ok(classes) => {
                let total: usize = classes.iter().map(Vec::len).sum();
                let sizes_ok = classes.len() == d as usize + 1
                    && classes.iter().all(|c| c.len() == d as usize - 1);
                let mut all: Vec<PauliLabel> = classes.iter().flatten().copied().collect();
                all.sort();
                all.dedup();
                if !sizes_ok || total != all.len() || total != (d * d - 1) as usize {
                    return CheckReport::new(
                        "commuting-partition",
                        false,
                        format!("wrong partition shape at d={d}"),
                    );
                }
            }
            Err(e) => {
                return CheckReport::new("commuting-partition", false, format!("d={d}: {e}"));
            }
        }
    }
    CheckReport::new(
        "commuting-partition",
        true,
        format!(
            "d+1 disjoint classes of d-1 commuting labels for primes <= {}",
            d_max.min(13)
        ),
    )
}

fn check_pauli_group(d_max: u64, seed: u64) -> CheckReport {
    for d in [2u64, 3, 5] {
        if d > d_max {
            continue;
        }
        let elements = pauli_group::enumerate_group(d);
        if elements.len() != (d * d * d) as usize {
            return CheckReport::new("pauli-group", false, format!("wrong order at d={d}"));
        }
        for x in &elements {
            for y in &elements {
                if pauli_group::multiply(d, x, y).is_err() {
                    return CheckReport::new(
                        "pauli-group",
                        false,
                        format!("closure violated at d={d} by {x:?} * {y:?}"),
                    );
                }
            }
            match pauli_group::inverse(d, x) {
                Ok(inv) => {
                    if pauli_group::multiply(d, x, &inv).unwrap() != PauliElement::identity() {
                        return CheckReport::new(
                            "pauli-group",
                            false,
                            format!("inverse wrong at d={d} for {x:?}"),
                        );
                    }
                }
                Err(e) => {
                    return CheckReport::new("pauli-group", false, format!("d={d}: {e}"));
                }
            }
        }
        // associativity spot check on seeded random triples
        let mut state = seed ^ (d.wrapping_mul(0x9E37_79B9));
        let trials = 10_000 / 3;
        for _ in 0..trials {
            let pick = |state: &mut u64| {
                let i = (splitmix64(state) % (elements.len() as u64)) as usize;
                elements[i]
            };
            let (x, y, z) = (pick(&mut state), pick(&mut state), pick(&mut state));
            let left =
                pauli_group::multiply(d, &pauli_group::multiply(d, &x, &y).unwrap(), &z).unwrap();
            let right =
                pauli_group::multiply(d, &x, &pauli_group::multiply(d, &y, &z).unwrap()).unwrap();
            if left != right {
                return CheckReport::new(
                    "pauli-group",
                    false,
                    format!("associativity broken at d={d}"),
                );
            }
        }
    }
    CheckReport::new(
        "pauli-group",
        true,
        "order d^3, closure, inverses and sampled associativity for d in {2,3,5}",
    )
}

fn check_molecular_orbitals(d_max: u64) -> CheckReport {
    let exact_cap = d_max.min(24);
    for n in 1..=exact_cap {
        let ring = cyclic::RingSpec::new(n).expect("n >= 1");
        let orbitals = cyclic::molecular_orbitals(&ring);
        if !orbitals.gram_is_identity() {
            return CheckReport::new(
                "molecular-orbitals",
                false,
                format!("orbitals not orthonormal at N={n}"),
            );
        }
    }
    for n in 1..=d_max.min(64) {
        let ring = cyclic::RingSpec::new(n).expect("n >= 1");
        let residual = gram_residual(&cyclic::molecular_orbitals(&ring));
        if residual > 1e-10 {
            return CheckReport::new(
                "molecular-orbitals",
                false,
                format!("numeric Gram residual {residual:.2e} at N={n}"),
            );
        }
    }
    for n in 1..=d_max.min(12) {
        if let Err(e) = cyclic::orbital_eigenbasis_correspondence(n) {
            return CheckReport::new("molecular-orbitals", false, format!("N={n}: {e}"));
        }
    }
    CheckReport::new(
        "molecular-orbitals",
        true,
        format!(
            "orthonormal (exact to N={exact_cap}, numeric to N={}); s->alpha bijective",
            d_max.min(64)
        ),
    )
}

fn gram_residual(basis: &Basis) -> f64 {
    let vecs: Vec<Vec<crate::scalar::ApproxScalar>> =
        basis.vectors().iter().map(|v| v.to_approx()).collect();
    let mut worst: f64 = 0.0;
    for (i, u) in vecs.iter().enumerate() {
        for (j, v) in vecs.iter().enumerate() {
            let mut acc = crate::scalar::ApproxScalar::zero();
            for (a, b) in u.iter().zip(v.iter()) {
                acc = acc + a.conj() * *b;
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - crate::scalar::ApproxScalar::new(target, 0.0)).norm());
        }
    }
    worst
}

fn check_coupled_basis() -> CheckReport {
    let basis = weyl::coupled_spin_basis();
    if !basis.gram_is_identity() {
        return CheckReport::new("coupled-basis", false, "coupled basis not orthonormal");
    }
    let swap = weyl::swap_matrix();
    for (i, v) in basis.vectors().iter().enumerate() {
        let sign = if i == 3 { -1 } else { 1 };
        let swapped = swap.apply(v.amps());
        let expect = v.scale(&CycloScalar::from_integer(sign));
        if !swapped
            .iter()
            .zip(expect.amps())
            .all(|(a, b)| a.eq_in_dim(b, 4))
        {
            return CheckReport::new(
                "coupled-basis",
                false,
                format!("vector {i} has the wrong swap parity"),
            );
        }
    }
    CheckReport::new(
        "coupled-basis",
        true,
        "three symmetric vectors and one antisymmetric under factor swap",
    )
}

/// Runs every invariant up to `d_max` (each check also applies its own
/// documented cap) and returns one report per check.
pub fn run_all(d_max: u64, seed: u64) -> Vec<CheckReport> {
    let w01 = pauli_group_closure_report(d_max);
    let mut reports = vec![
        check_v_unitarity(d_max),
        check_weyl_pair(d_max),
        check_trace_orthogonality(d_max),
        check_structure_constants(d_max),
        check_anticommutator_pattern(d_max),
        check_eigenvalue_equations(d_max),
        check_mub_certification(d_max),
        check_partition(d_max),
        check_pauli_group(d_max, seed),
        check_molecular_orbitals(d_max),
        check_coupled_basis(),
    ];
    reports.push(w01);
    reports
}

/// Whether the matrix products of all label pairs stay inside the `d^3`
/// label set (they do; a violation would be reported, not absorbed).
fn pauli_group_closure_report(d_max: u64) -> CheckReport {
    for d in 1..=d_max.min(4) {
        for x in pauli_group::enumerate_group(d) {
            for y in pauli_group::enumerate_group(d) {
                if pauli_group::multiply(d, &x, &y).is_err() {
                    return CheckReport::new(
                        "pauli-closure-bound",
                        false,
                        format!("matrix closure exceeds the d^3 label set at d={d}"),
                    );
                }
            }
        }
    }
    CheckReport::new(
        "pauli-closure-bound",
        true,
        format!(
            "matrix products of labels never leave the d^3 set (d <= {})",
            d_max.min(4)
        ),
    )
}
