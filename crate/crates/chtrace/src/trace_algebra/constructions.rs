//! Trace-compatible constructions: rescaled trace, direct sum, and
//! tensor product. The rescaled trace r·t turns an n-CH algebra into an
//! (rn)-CH algebra; sums add degrees and traces, tensors multiply them.

use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::algebra::FiniteTraceAlgebra;

/// Multiply the trace by a positive integer r and the CH degree by r.
pub fn rescale_trace(a: &FiniteTraceAlgebra, r: usize) -> Result<FiniteTraceAlgebra> {
    if r == 0 {
        return Err(Error::invalid_parameter("rescale factor must be positive"));
    }
    let factor = Scalar::from_i64(r as i64);
    let trace = a.trace_vec().iter().map(|t| t * &factor).collect();
    FiniteTraceAlgebra::new(
        a.labels().to_vec(),
        a.structure_entries(),
        a.unit().to_vec(),
        trace,
        a.ch_degree() * r,
    )
}

/// Direct sum with t(r₁, r₂) = t(r₁) + t(r₂) and degree n₁ + n₂.
pub fn direct_sum(a: &FiniteTraceAlgebra, b: &FiniteTraceAlgebra) -> Result<FiniteTraceAlgebra> {
    let da = a.dim();
    let labels: Vec<String> = a
        .labels()
        .iter()
        .map(|l| format!("L.{l}"))
        .chain(b.labels().iter().map(|l| format!("R.{l}")))
        .collect();
    let mut structure = a.structure_entries();
    for (i, j, k, c) in b.structure_entries() {
        structure.push((i + da, j + da, k + da, c));
    }
    let unit: Vec<Scalar> = a
        .unit()
        .iter()
        .cloned()
        .chain(b.unit().iter().cloned())
        .collect();
    let trace: Vec<Scalar> = a
        .trace_vec()
        .iter()
        .cloned()
        .chain(b.trace_vec().iter().cloned())
        .collect();
    FiniteTraceAlgebra::new(
        labels,
        structure,
        unit,
        trace,
        a.ch_degree() + b.ch_degree(),
    )
}

/// Tensor product with t(r₁ ⊗ r₂) = t(r₁)·t(r₂) and degree n₁·n₂.
pub fn tensor_product(
    a: &FiniteTraceAlgebra,
    b: &FiniteTraceAlgebra,
) -> Result<FiniteTraceAlgebra> {
    let db = b.dim();
    let idx = |i: usize, j: usize| i * db + j;
    let labels: Vec<String> = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("{la}*{lb}")))
        .collect();
    let mut structure = Vec::new();
    for (i1, j1, k1, c1) in a.structure_entries() {
        for (i2, j2, k2, c2) in b.structure_entries() {
            structure.push((idx(i1, i2), idx(j1, j2), idx(k1, k2), c1.try_mul(&c2)?));
        }
    }
    let mut unit = vec![Scalar::zero(); a.dim() * db];
    let mut trace = vec![Scalar::zero(); a.dim() * db];
    for i in 0..a.dim() {
        for j in 0..db {
            unit[idx(i, j)] = a.unit()[i].try_mul(&b.unit()[j])?;
            trace[idx(i, j)] = a.trace_vec()[i].try_mul(&b.trace_vec()[j])?;
        }
    }
    FiniteTraceAlgebra::new(
        labels,
        structure,
        unit,
        trace,
        a.ch_degree() * b.ch_degree(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace_algebra::standard::matrix_algebra;

    #[test]
    fn rescale_degree_and_trace() {
        let m2 = matrix_algebra(2);
        let r = rescale_trace(&m2, 2).unwrap();
        assert_eq!(r.ch_degree(), 4);
        assert!(r.trace_of(r.unit()).try_eq(&Scalar::from_i64(4)).unwrap());
        assert!(r.check_axioms().passed());
        assert!(r.ch_check(6, 3));
    }

    #[test]
    fn direct_sum_passes_checks() {
        let s = direct_sum(&matrix_algebra(1), &matrix_algebra(2)).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.ch_degree(), 3);
        assert!(s.check_axioms().passed());
        assert!(s.ch_check(6, 5));
    }

    #[test]
    fn tensor_product_passes_checks() {
        let t = tensor_product(&matrix_algebra(2), &matrix_algebra(2)).unwrap();
        assert_eq!(t.dim(), 16);
        assert_eq!(t.ch_degree(), 4);
        assert!(t.check_axioms().passed());
        assert!(t.ch_check(4, 7));
    }

    #[test]
    fn tensor_of_matrix_algebras_is_matrix_algebra() {
        // Kronecker-product isomorphism oracle: e_{ij}⊗e_{kl} ↦
        // e_{(i,k),(j,l)} identifies M₂⊗M₂ with M₄ exactly.
        let t = tensor_product(&matrix_algebra(2), &matrix_algebra(2)).unwrap();
        let m4 = matrix_algebra(4);
        // basis of t is ordered e_{ij}⊗e_{kl} with (i,j) outer, (k,l)
        // inner; map to matrix-unit index ((2i+k),(2j+l)) in M₄.
        let reindex = |a: usize, b: usize| -> usize {
            let (i, j) = (a / 2, a % 2);
            let (k, l) = (b / 2, b % 2);
            (2 * i + k) * 4 + (2 * j + l)
        };
        let mut table_t = std::collections::BTreeMap::new();
        for (i, j, k, c) in t.structure_entries() {
            let (ia, ib) = (i / 4, i % 4);
            let (ja, jb) = (j / 4, j % 4);
            let (ka, kb) = (k / 4, k % 4);
            table_t.insert((reindex(ia, ib), reindex(ja, jb), reindex(ka, kb)), c);
        }
        for (i, j, k, c) in m4.structure_entries() {
            let got = table_t.get(&(i, j, k)).expect("missing structure entry");
            assert!(got.try_eq(&c).unwrap());
        }
    }
}
