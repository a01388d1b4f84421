//! The radical as the kernel of the trace form. For a CH algebra with
//! trace values in the base field this kernel is the Jacobson radical;
//! its elements are nilpotent because their power traces, hence their
//! whole characteristic polynomial except t^n, vanish.

use crate::arith::{Scalar, ScalarTag};
use crate::error::Result;
use crate::linalg::{self, CMat};

use super::algebra::FiniteTraceAlgebra;

/// Basis of ker(gram). Exact elimination on exact tags; numeric kernel
/// with relative tolerance `1e-9` on the complex tag.
pub fn radical(a: &FiniteTraceAlgebra) -> Result<Vec<Vec<Scalar>>> {
    a.validate_trace_form()?;
    let gram = a.gram();
    match a.tag() {
        ScalarTag::C64 => {
            let m = CMat::from_fn(a.dim(), a.dim(), |i, j| gram[i][j].embed());
            Ok(linalg::nullspace(&m, 1e-9)
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::C64).collect())
                .collect())
        }
        _ => Ok(linalg::nullspace_exact(&gram)),
    }
}

/// Quotient by the span of `rad` (a radical basis as returned by
/// [`radical`]). Returns the quotient algebra together with the indices
/// of the original basis vectors that represent the quotient basis.
pub(crate) fn quotient_mod_radical(
    a: &FiniteTraceAlgebra,
    rad: &[Vec<Scalar>],
) -> Result<(FiniteTraceAlgebra, Vec<usize>)> {
    let d = a.dim();
    if rad.is_empty() {
        return Ok((a.clone(), (0..d).collect()));
    }
    // Row-reduce the radical basis to get reduction rows keyed by pivot
    // column; complement basis = non-pivot coordinates.
    let (rows, pivot_cols): (Vec<Vec<Scalar>>, Vec<usize>) = match a.tag() {
        ScalarTag::C64 => {
            let mut m = CMat::from_fn(rad.len(), d, |i, j| rad[i][j].embed());
            let (rank, pivots) = linalg::rref(&mut m, 1e-9);
            let rows = (0..rank)
                .map(|i| (0..d).map(|j| Scalar::C64(m[(i, j)])).collect())
                .collect();
            (rows, pivots)
        }
        _ => {
            let mut m = rad.to_vec();
            let (rank, pivots) = linalg::rref_exact(&mut m);
            m.truncate(rank);
            (m, pivots)
        }
    };
    let complement: Vec<usize> = (0..d).filter(|j| !pivot_cols.contains(j)).collect();
    let reduce = |mut v: Vec<Scalar>| -> Vec<Scalar> {
        for (row, &p) in rows.iter().zip(&pivot_cols) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (vi, ri) in v.iter_mut().zip(row) {
                let t = &f * ri;
                *vi = &*vi - &t;
            }
        }
        complement.iter().map(|&j| v[j].clone()).collect()
    };
    let labels: Vec<String> = complement.iter().map(|&j| a.labels()[j].clone()).collect();
    let mut structure = Vec::new();
    for (qi, &bi) in complement.iter().enumerate() {
        for (qj, &bj) in complement.iter().enumerate() {
            let prod = a.mul_vec(&a.basis_vec(bi), &a.basis_vec(bj));
            for (qk, c) in reduce(prod).into_iter().enumerate() {
                if !c.is_zero() {
                    structure.push((qi, qj, qk, c));
                }
            }
        }
    }
    let unit = reduce(a.unit().to_vec());
    let trace: Vec<Scalar> = complement
        .iter()
        .map(|&j| a.trace_vec()[j].clone())
        .collect();
    let q = FiniteTraceAlgebra::new(labels, structure, unit, trace, a.ch_degree())?;
    Ok((q, complement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace_algebra::standard::{matrix_algebra, truncated_polynomial};
    use crate::trace_algebra::{direct_sum, FiniteTraceAlgebra};

    #[test]
    fn radical_of_truncated_polynomial() {
        // ℚ[x]/(x²) with regular trace (2,0): gram = [[2,0],[0,0]],
        // radical = span{x}
        let a = truncated_polynomial(2, &[2, 0]);
        let rad = radical(&a).unwrap();
        assert_eq!(rad.len(), 1);
        assert!(rad[0][0].is_zero());
        assert!(!rad[0][1].is_zero());
        // nilpotency: x² = 0
        let sq = a.mul_vec(&rad[0], &rad[0]);
        assert!(sq.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn radical_of_matrix_algebra_is_zero() {
        assert!(radical(&matrix_algebra(2)).unwrap().is_empty());
    }

    #[test]
    fn radical_of_mixed_sum() {
        // ℚ ⊕ ℚ[x]/(x²): radical = span{x}
        let a = direct_sum(&matrix_algebra(1), &truncated_polynomial(2, &[2, 0])).unwrap();
        let rad = radical(&a).unwrap();
        assert_eq!(rad.len(), 1);
        // the radical element is supported on the x coordinate (index 2)
        assert!(rad[0][0].is_zero() && rad[0][1].is_zero());
        // two-sided ideal: e·r and r·e stay in the span for basis e
        for i in 0..3 {
            let left = a.mul_vec(&a.basis_vec(i), &rad[0]);
            let right = a.mul_vec(&rad[0], &a.basis_vec(i));
            for v in [left, right] {
                // span{x} means coordinates 0 and 1 vanish
                assert!(v[0].is_zero() && v[1].is_zero());
            }
        }
    }

    #[test]
    fn broken_symmetry_is_invalid_input() {
        let m = matrix_algebra(2);
        let mut trace = m.trace_vec().to_vec();
        trace[0] = crate::arith::Scalar::from_i64(3);
        let broken = FiniteTraceAlgebra::new(
            m.labels().to_vec(),
            m.structure_entries(),
            m.unit().to_vec(),
            trace,
            2,
        )
        .unwrap();
        assert!(radical(&broken).is_err());
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let a = direct_sum(&matrix_algebra(1), &truncated_polynomial(2, &[2, 0])).unwrap();
        let rad = radical(&a).unwrap();
        let (q, complement) = quotient_mod_radical(&a, &rad).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(complement, vec![0, 1]);
        assert!(q.check_axioms().passed());
        assert!(radical(&q).unwrap().is_empty());
    }
}
