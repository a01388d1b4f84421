//! Stock algebras used across tests and the radical/block corpus:
//! matrix algebras, cyclic group algebras with the regular trace, and
//! truncated polynomial rings.

use crate::arith::Scalar;

use super::algebra::FiniteTraceAlgebra;

/// M_k with the matrix-unit basis e_{ij} and the ordinary trace; the
/// declared CH degree is k.
pub fn matrix_algebra(k: usize) -> FiniteTraceAlgebra {
    assert!(k >= 1);
    let idx = |i: usize, j: usize| i * k + j;
    let labels: Vec<String> = (0..k)
        .flat_map(|i| (0..k).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    let mut structure = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                // e_{ij} · e_{jl} = e_{il}
                structure.push((idx(i, j), idx(j, l), idx(i, l), Scalar::one()));
            }
        }
    }
    let mut unit = vec![Scalar::zero(); k * k];
    let mut trace = vec![Scalar::zero(); k * k];
    for i in 0..k {
        unit[idx(i, i)] = Scalar::one();
        trace[idx(i, i)] = Scalar::one();
    }
    FiniteTraceAlgebra::new(labels, structure, unit, trace, k).unwrap()
}

/// Group algebra of ℤ/n with the regular trace t(1) = n, t(g^i) = 0.
pub fn group_algebra_cyclic(n: usize) -> FiniteTraceAlgebra {
    assert!(n >= 1);
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            structure.push((i, j, (i + j) % n, Scalar::one()));
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = Scalar::one();
    let mut trace = vec![Scalar::zero(); n];
    trace[0] = Scalar::from_i64(n as i64);
    FiniteTraceAlgebra::new(labels, structure, unit, trace, n).unwrap()
}

/// ℚ\[x\]/(x^k) with basis 1, x, ..., x^{k−1} and the given trace vector
/// (integers for convenience). The regular trace is (k, 0, ..., 0).
pub fn truncated_polynomial(k: usize, trace: &[i64]) -> FiniteTraceAlgebra {
    assert!(k >= 1 && trace.len() == k);
    let labels: Vec<String> = (0..k)
        .map(|i| if i == 0 { "1".into() } else { format!("x{i}") })
        .collect();
    let mut structure = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                structure.push((i, j, i + j, Scalar::one()));
            }
        }
    }
    let mut unit = vec![Scalar::zero(); k];
    unit[0] = Scalar::one();
    let trace_vec: Vec<Scalar> = trace.iter().map(|&t| Scalar::from_i64(t)).collect();
    let n = trace[0] as usize;
    FiniteTraceAlgebra::new(labels, structure, unit, trace_vec, n).unwrap()
}
