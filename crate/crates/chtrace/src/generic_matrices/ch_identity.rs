//! The polarized Cayley-Hamilton identity as a signed sum of trace-cycle
//! maps over S_{n+1}.
//!
//! A permutation σ of {1..n+1} written in cycles
//! (i₁..i_a)(j₁..j_b)...(u₁..u_s, n+1) contributes
//! φ_σ = t(x_{i₁}···x_{i_a})·t(x_{j₁}···x_{j_b})··· x_{u₁}···x_{u_s},
//! and CH(x₁,...,x_n) = (−1)ⁿ Σ_σ sgn(σ) φ_σ. The n = 1 case CH(x) =
//! x − t(x) pins the sign convention.

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg::ScalarMatrix;

use super::expr::MatrixTuple;

/// Permutation of {1..n+1} in cycle notation, with the cycle containing
/// the distinguished point n+1 kept separate (n+1 removed).
#[derive(Clone, Debug)]
pub struct CyclePermutation {
    /// Cycles not containing n+1, as 1-based variable indices.
    pub trace_cycles: Vec<Vec<usize>>,
    /// The cycle through n+1, listed in cycle order starting after n+1.
    pub spine: Vec<usize>,
    /// Number of points n+1.
    pub degree: usize,
    /// sgn(σ) = (−1)^{(n+1) − #cycles}.
    pub sign: i8,
}

impl CyclePermutation {
    /// Build from one-line notation over 0-based points {0..n}, with
    /// point n distinguished. `perm[i]` is the image of i.
    pub fn from_one_line(perm: &[usize]) -> Result<Self> {
        let np1 = perm.len();
        if np1 == 0 {
            return Err(Error::invalid_parameter("empty permutation"));
        }
        let mut seen = vec![false; np1];
        for &p in perm {
            if p >= np1 || seen[p] {
                return Err(Error::invalid_parameter("not a permutation"));
            }
            seen[p] = true;
        }
        let mut visited = vec![false; np1];
        let mut trace_cycles = Vec::new();
        let mut spine = Vec::new();
        let mut cycle_count = 0;
        for start in 0..np1 {
            if visited[start] {
                continue;
            }
            cycle_count += 1;
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                visited[cur] = true;
                cycle.push(cur);
                cur = perm[cur];
                if cur == start {
                    break;
                }
            }
            if let Some(pos) = cycle.iter().position(|&x| x == np1 - 1) {
                // rotate so the walk starts right after the point n+1
                spine = cycle[pos + 1..]
                    .iter()
                    .chain(cycle[..pos].iter())
                    .map(|&x| x + 1)
                    .collect();
            } else {
                trace_cycles.push(cycle.iter().map(|&x| x + 1).collect());
            }
        }
        let sign = if (np1 - cycle_count) % 2 == 0 { 1 } else { -1 };
        Ok(CyclePermutation {
            trace_cycles,
            spine,
            degree: np1,
            sign,
        })
    }
}

/// φ_σ evaluated on a tuple of n matrices (n = σ's degree − 1): the
/// product of traces over the non-distinguished cycles times the ordered
/// matrix product along the spine (identity when the spine is empty).
pub fn phi_sigma(sigma: &CyclePermutation, tuple: &MatrixTuple) -> Result<ScalarMatrix> {
    if tuple.len() + 1 != sigma.degree {
        return Err(Error::invalid_parameter(format!(
            "tuple of {} matrices does not match permutation degree {}",
            tuple.len(),
            sigma.degree
        )));
    }
    let k = tuple.size();
    let mut coeff = Scalar::one();
    for cycle in &sigma.trace_cycles {
        let mut prod = ScalarMatrix::identity(k);
        for &v in cycle {
            prod = prod.matmul(&tuple.matrices[v - 1]);
        }
        coeff = &coeff * &prod.trace();
    }
    let mut spine_prod = ScalarMatrix::identity(k);
    for &v in &sigma.spine {
        spine_prod = spine_prod.matmul(&tuple.matrices[v - 1]);
    }
    Ok(spine_prod.scale(&coeff))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The multilinear Cayley-Hamilton polynomial CH(x₁,...,x_n) evaluated on
/// n matrices of any common size: (−1)ⁿ Σ_{σ ∈ S_{n+1}} sgn(σ) φ_σ.
/// Zero when the matrix size is at most n. Permutations are enumerated
/// in lexicographic order so exact sums are reproducible.
pub fn ch_multilinear(n: usize, tuple: &MatrixTuple) -> Result<ScalarMatrix> {
    if n == 0 {
        return Err(Error::invalid_parameter("n must be positive"));
    }
    if n > 6 {
        return Err(Error::invalid_parameter(
            "polarized CH enumeration is capped at n = 6",
        ));
    }
    if tuple.len() != n {
        return Err(Error::invalid_parameter(format!(
            "expected {n} matrices, got {}",
            tuple.len()
        )));
    }
    let k = tuple.size();
    let mut perm: Vec<usize> = (0..=n).collect();
    let mut acc = ScalarMatrix::zeros(k);
    loop {
        let sigma = CyclePermutation::from_one_line(&perm)?;
        let term = phi_sigma(&sigma, tuple)?;
        acc = if sigma.sign > 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    if n % 2 == 1 {
        acc = acc.neg();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace_algebra::char_poly_coeffs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tuple(rng: &mut ChaCha8Rng, m: usize, k: usize) -> MatrixTuple {
        MatrixTuple::new(
            (0..m)
                .map(|_| {
                    let rows: Vec<Vec<Scalar>> = (0..k)
                        .map(|_| {
                            (0..k)
                                .map(|_| Scalar::from_i64(rng.gen_range(-5..6)))
                                .collect()
                        })
                        .collect();
                    ScalarMatrix::from_rows(rows).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn phi_sigma_cycle_readings() {
        // n = 1, S₂ over {0,1} with 1 distinguished.
        let a = ScalarMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let tuple = MatrixTuple::new(vec![a.clone()]).unwrap();
        // identity = (1)(2): φ = t(x1)·I
        let id = CyclePermutation::from_one_line(&[0, 1]).unwrap();
        let phi = phi_sigma(&id, &tuple).unwrap();
        assert_eq!(phi, ScalarMatrix::identity(2).scale(&Scalar::from_i64(5)));
        // transposition (1 2): φ = x1
        let tr = CyclePermutation::from_one_line(&[1, 0]).unwrap();
        assert_eq!(phi_sigma(&tr, &tuple).unwrap(), a);
        // σ = (1)(2 3) in S₃ (n = 2): φ = t(x1)·x2
        let b = ScalarMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        let t2 = MatrixTuple::new(vec![a.clone(), b.clone()]).unwrap();
        let s = CyclePermutation::from_one_line(&[0, 2, 1]).unwrap();
        assert_eq!(phi_sigma(&s, &t2).unwrap(), b.scale(&Scalar::from_i64(5)));
    }

    #[test]
    fn ch_n1_is_x_minus_trace() {
        // CH(x) = x − t(x)·I; on a 1×1 matrix this is 0
        let tuple = MatrixTuple::new(vec![ScalarMatrix::from_i64_rows(&[&[7]])]).unwrap();
        let ch = ch_multilinear(1, &tuple).unwrap();
        assert!(ch.is_zero());
        // on a 2×2 it is x − t(x): check the sign convention explicitly
        let a = ScalarMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let t = MatrixTuple::new(vec![a.clone()]).unwrap();
        let ch = ch_multilinear(1, &t).unwrap();
        let expect = a.sub(&ScalarMatrix::identity(2).scale(&Scalar::from_i64(5)));
        assert_eq!(ch, expect);
    }

    #[test]
    fn ch_vanishes_on_matching_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2usize, 3] {
            for _ in 0..5 {
                let tuple = random_tuple(&mut rng, n, n);
                let ch = ch_multilinear(n, &tuple).unwrap();
                assert!(ch.is_zero(), "CH must vanish on {n}x{n} tuples");
            }
        }
    }

    #[test]
    fn ch_nonzero_on_larger_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let tuple = random_tuple(&mut rng, 2, 3);
        let ch = ch_multilinear(2, &tuple).unwrap();
        assert!(!ch.is_zero(), "CH(2) is generically nonzero on 3x3");
    }

    #[test]
    fn polarization_recovers_char_poly() {
        // CH(a,...,a) = n!·χ_a^n(a), checked exactly
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [1usize, 2, 3] {
            let a = random_tuple(&mut rng, 1, n).matrices.remove(0);
            let tuple = MatrixTuple::new(vec![a.clone(); n]).unwrap();
            let ch = ch_multilinear(n, &tuple).unwrap();
            // χ_a^n(a) via Newton coefficients from power traces
            let mut traces = Vec::new();
            let mut p = ScalarMatrix::identity(n);
            for _ in 0..n {
                p = p.matmul(&a);
                traces.push(p.trace());
            }
            let coeffs = char_poly_coeffs(&traces, n).unwrap();
            let mut chi = a.pow(n as u32);
            for (i, c) in coeffs.iter().enumerate() {
                chi = chi.add(&a.pow((n - i - 1) as u32).scale(c));
            }
            let mut factorial = 1i64;
            for i in 2..=n as i64 {
                factorial *= i;
            }
            assert_eq!(ch, chi.scale(&Scalar::from_i64(factorial)), "n = {n}");
        }
    }
}
