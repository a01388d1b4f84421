//! The algebra generated by a matrix tuple, Artin's closed-orbit
//! semisimplicity criterion, the discriminant probe for the Azumaya
//! locus, and the equivariance property of trace expressions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Scalar, ScalarTag};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ScalarMatrix};
use crate::trace_algebra::{radical, FiniteTraceAlgebra};

use super::expr::{eval, MatrixTuple, TraceExpr, Value};

fn tuple_tag(tuple: &MatrixTuple) -> Result<ScalarTag> {
    let mut tag = ScalarTag::Rat;
    for m in &tuple.matrices {
        for e in &m.entries {
            tag = Scalar::join_tag(tag, e.tag())?;
        }
    }
    Ok(tag)
}

/// Basis of the unital algebra generated by the tuple, grown by iterated
/// products with rank tests: exact row reduction on exact tags, relative
/// tolerance 1e-9 on the complex tag. Capped at n² basis elements.
pub fn generated_matrix_algebra(tuple: &MatrixTuple) -> Result<Vec<ScalarMatrix>> {
    let n = tuple.size();
    let tag = tuple_tag(tuple)?;
    if tag == ScalarTag::C64 {
        let gens: Vec<CMat> = tuple.matrices.iter().map(|m| m.embed()).collect();
        let basis = linalg::matrix_algebra_closure(n, &gens, 1e-9);
        return Ok(basis
            .into_iter()
            .map(|b| {
                let mut m = ScalarMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, Scalar::C64(b[(i, j)]));
                    }
                }
                m
            })
            .collect());
    }
    // exact closure: echelon of vectorized elements with exact arithmetic
    let cap = n * n;
    let mut echelon: Vec<Vec<Scalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut basis: Vec<ScalarMatrix> = Vec::new();
    let try_add = |m: &ScalarMatrix,
                   echelon: &mut Vec<Vec<Scalar>>,
                   pivots: &mut Vec<usize>,
                   basis: &mut Vec<ScalarMatrix>|
     -> bool {
        let mut v = m.entries.clone();
        for (row, &p) in echelon.iter().zip(pivots.iter()) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (vi, ri) in v.iter_mut().zip(row) {
                let t = &f * ri;
                *vi = &*vi - &t;
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].try_inv().expect("nonzero pivot");
        for vi in v.iter_mut() {
            *vi = &*vi * &inv;
        }
        echelon.push(v);
        pivots.push(pivot);
        basis.push(m.clone());
        true
    };
    try_add(
        &ScalarMatrix::identity(n),
        &mut echelon,
        &mut pivots,
        &mut basis,
    );
    for g in &tuple.matrices {
        if basis.len() >= cap {
            break;
        }
        try_add(g, &mut echelon, &mut pivots, &mut basis);
    }
    let mut next = 0;
    while next < basis.len() && basis.len() < cap {
        let b = basis[next].clone();
        for g in &tuple.matrices {
            if basis.len() >= cap {
                break;
            }
            let p = b.matmul(g);
            try_add(&p, &mut echelon, &mut pivots, &mut basis);
        }
        next += 1;
    }
    Ok(basis)
}

/// The generated algebra as a trace algebra with the ordinary matrix
/// trace and ch_degree = n.
pub fn image_trace_algebra(tuple: &MatrixTuple) -> Result<FiniteTraceAlgebra> {
    let basis = generated_matrix_algebra(tuple)?;
    trace_algebra_from_matrix_basis(tuple.size(), &basis)
}

/// Build a [`FiniteTraceAlgebra`] from a linearly independent matrix
/// basis closed under products, with the ordinary trace. Structure
/// constants come from one elimination shared across all products.
pub fn trace_algebra_from_matrix_basis(
    n: usize,
    basis: &[ScalarMatrix],
) -> Result<FiniteTraceAlgebra> {
    let d = basis.len();
    if d == 0 {
        return Err(Error::InvalidInput("empty basis".into()));
    }
    let tag = {
        let mut tag = ScalarTag::Rat;
        for m in basis {
            for e in &m.entries {
                tag = Scalar::join_tag(tag, e.tag())?;
            }
        }
        tag
    };
    // coordinates of a vector w.r.t. the basis, via an rref of
    // [rows = basis vectorizations | identity] computed once
    let nn = n * n;
    let express: Box<dyn Fn(&ScalarMatrix) -> Result<Vec<Scalar>>> = if tag == ScalarTag::C64 {
        let mut aug = CMat::zeros(d, nn + d);
        for (r, b) in basis.iter().enumerate() {
            for (c, e) in b.entries.iter().enumerate() {
                aug[(r, c)] = e.embed();
            }
            aug[(r, nn + r)] = linalg::C64::new(1.0, 0.0);
        }
        let (rank, pivots) = linalg::rref_limited(&mut aug, 1e-9, nn);
        if rank < d {
            return Err(Error::InvalidInput("basis is numerically dependent".into()));
        }
        Box::new(move |m: &ScalarMatrix| {
            // β_r = value of m at pivot column r; coords = Σ β_r·T_r
            let v: Vec<linalg::C64> = m.entries.iter().map(|e| e.embed()).collect();
            let mut coords = vec![linalg::C64::new(0.0, 0.0); d];
            let mut resid = v.clone();
            for (r, &p) in pivots.iter().enumerate() {
                let beta = resid[p];
                if beta.norm() == 0.0 {
                    continue;
                }
                for c in 0..nn {
                    resid[c] -= beta * aug[(r, c)];
                }
                for s in 0..d {
                    coords[s] += beta * aug[(r, nn + s)];
                }
            }
            let res_norm: f64 = resid.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if res_norm > 1e-6 * (1.0 + v.iter().map(|z| z.norm()).fold(0.0, f64::max)) {
                return Err(Error::Arithmetic(
                    "product escapes the generated algebra span".into(),
                ));
            }
            Ok(coords.into_iter().map(Scalar::C64).collect())
        })
    } else {
        let mut aug: Vec<Vec<Scalar>> = basis
            .iter()
            .enumerate()
            .map(|(r, b)| {
                let mut row = b.entries.clone();
                row.extend((0..d).map(|s| {
                    if s == r {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        // exact rref never pivots on the identity block: basis rows are
        // independent, so rank d is reached inside the first nn columns
        let (rank, pivots) = {
            // restrict pivot search to the first nn columns by zero-ing
            // trick: run a manual elimination
            let mut pivots = Vec::new();
            let mut r = 0;
            for j in 0..nn {
                if r >= d {
                    break;
                }
                let Some(pi) = (r..d).find(|&i| !aug[i][j].is_zero()) else {
                    continue;
                };
                aug.swap(r, pi);
                let inv = aug[r][j].try_inv().expect("nonzero pivot");
                for x in aug[r].iter_mut() {
                    *x = &*x * &inv;
                }
                for i in 0..d {
                    if i == r || aug[i][j].is_zero() {
                        continue;
                    }
                    let f = aug[i][j].clone();
                    for k in 0..nn + d {
                        let t = &f * &aug[r][k];
                        aug[i][k] = &aug[i][k] - &t;
                    }
                }
                pivots.push(j);
                r += 1;
            }
            (r, pivots)
        };
        if rank < d {
            return Err(Error::InvalidInput("basis is linearly dependent".into()));
        }
        let aug = aug;
        Box::new(move |m: &ScalarMatrix| {
            let mut coords = vec![Scalar::zero(); d];
            let mut resid = m.entries.clone();
            for (r, &p) in pivots.iter().enumerate() {
                if resid[p].is_zero() {
                    continue;
                }
                let beta = resid[p].clone();
                for c in 0..nn {
                    let t = &beta * &aug[r][c];
                    resid[c] = &resid[c] - &t;
                }
                for s in 0..d {
                    let t = &beta * &aug[r][nn + s];
                    coords[s] = &coords[s] + &t;
                }
            }
            if resid.iter().any(|x| !x.is_zero()) {
                return Err(Error::Arithmetic(
                    "product escapes the generated algebra span".into(),
                ));
            }
            Ok(coords)
        })
    };

    let mut structure = Vec::new();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let coords = express(&bi.matmul(bj))?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    structure.push((i, j, k, c));
                }
            }
        }
    }
    let unit_coords = express(&ScalarMatrix::identity(n))?;
    let trace_vec: Vec<Scalar> = basis.iter().map(|b| b.trace()).collect();
    let labels: Vec<String> = (0..d).map(|i| format!("b{i}")).collect();
    FiniteTraceAlgebra::new(labels, structure, unit_coords, trace_vec, n)
}

/// Artin's criterion: the tuple lies in a closed orbit (equivalently the
/// generated algebra is semisimple) iff the trace-form radical of the
/// generated algebra vanishes.
pub fn artin_semisimple(tuple: &MatrixTuple) -> Result<bool> {
    let alg = image_trace_algebra(tuple)?;
    Ok(radical(&alg)?.is_empty())
}

/// Sample `trials` n²-tuples of random integer combinations from the
/// generated algebra and return the largest trace-form discriminant
/// det(tr(u_i·u_j)) found (ranked by complex magnitude). A nonzero value
/// certifies the Azumaya condition at the tuple; when the generated
/// algebra has dimension < n² every discriminant vanishes identically.
pub fn discriminant_probe(tuple: &MatrixTuple, trials: usize, seed: u64) -> Result<Scalar> {
    let n = tuple.size();
    let basis = generated_matrix_algebra(tuple)?;
    let d = basis.len();
    if d < n * n {
        return Ok(Scalar::zero());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = Scalar::zero();
    let mut best_mag = -1.0f64;
    for _ in 0..trials.max(1) {
        let us: Vec<ScalarMatrix> = (0..n * n)
            .map(|_| {
                let mut acc = ScalarMatrix::zeros(n);
                for b in &basis {
                    let c = Scalar::from_i64(rng.gen_range(-3..4));
                    acc = acc.add(&b.scale(&c));
                }
                acc
            })
            .collect();
        let gram: Vec<Vec<Scalar>> = us
            .iter()
            .map(|ui| us.iter().map(|uj| ui.matmul(uj).trace()).collect())
            .collect();
        let det = linalg::det_exact(&gram);
        let mag = det.abs_embed();
        if mag > best_mag {
            best_mag = mag;
            best = det;
        }
    }
    Ok(best)
}

/// Check f(g·x·g⁻¹) = g·f(x)·g⁻¹ for the given expression and tuple;
/// exact comparison on exact tags, 1e-9 relative on the complex tag.
pub fn equivariance_check(expr: &TraceExpr, tuple: &MatrixTuple, g: &ScalarMatrix) -> Result<bool> {
    if g.n != tuple.size() {
        return Err(Error::invalid_parameter(
            "conjugating matrix size differs from tuple",
        ));
    }
    let g_inv = g
        .inverse()
        .map_err(|_| Error::invalid_parameter("conjugating matrix is singular"))?;
    let conj: Vec<ScalarMatrix> = tuple
        .matrices
        .iter()
        .map(|m| g.matmul(m).matmul(&g_inv))
        .collect();
    let conj_tuple = MatrixTuple::new(conj)?;
    let lhs = eval(expr, &conj_tuple)?;
    let rhs = eval(expr, tuple)?;
    let n = tuple.size();
    let (lhs_m, rhs_m) = match (lhs, rhs) {
        (Value::Scalar(a), Value::Scalar(b)) => {
            return values_close(&a, &b);
        }
        (l, r) => (l.into_matrix(n), g.matmul(&r.into_matrix(n)).matmul(&g_inv)),
    };
    let diff = lhs_m.sub(&rhs_m);
    if diff.is_exact() {
        Ok(diff.is_zero())
    } else {
        let scale = 1.0 + rhs_m.embed().max_abs();
        Ok(diff.embed().max_abs() <= 1e-9 * scale)
    }
}

fn values_close(a: &Scalar, b: &Scalar) -> Result<bool> {
    if a.is_exact() && b.is_exact() {
        a.try_eq(b)
    } else {
        Ok((a.embed() - b.embed()).norm() <= 1e-9 * (1.0 + b.abs_embed()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic_matrices::expr::parse_expr;

    fn diag_and_cycle(n: usize) -> MatrixTuple {
        let mut d = ScalarMatrix::zeros(n);
        for i in 0..n {
            d.set(i, i, Scalar::from_i64(i as i64 + 1));
        }
        let mut p = ScalarMatrix::zeros(n);
        for i in 0..n {
            p.set(i, (i + 1) % n, Scalar::one());
        }
        MatrixTuple::new(vec![d, p]).unwrap()
    }

    #[test]
    fn diag_and_cycle_generate_full_algebra() {
        for n in [2usize, 3] {
            let basis = generated_matrix_algebra(&diag_and_cycle(n)).unwrap();
            assert_eq!(basis.len(), n * n);
            assert!(artin_semisimple(&diag_and_cycle(n)).unwrap());
        }
    }

    #[test]
    fn nilpotent_jordan_block_is_not_semisimple() {
        let j = ScalarMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let tuple = MatrixTuple::new(vec![j]).unwrap();
        assert!(!artin_semisimple(&tuple).unwrap());
    }

    #[test]
    fn identity_alone_is_semisimple() {
        let tuple = MatrixTuple::new(vec![ScalarMatrix::identity(3)]).unwrap();
        assert!(artin_semisimple(&tuple).unwrap());
        let basis = generated_matrix_algebra(&tuple).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn discriminant_probe_values() {
        // generators of M₂ → nonzero discriminant
        let d = discriminant_probe(&diag_and_cycle(2), 8, 1).unwrap();
        assert!(!d.is_zero());
        // a single Jordan block generates a proper subalgebra → 0
        let j = ScalarMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let d = discriminant_probe(&MatrixTuple::new(vec![j]).unwrap(), 4, 1).unwrap();
        assert!(d.is_zero());
        // m = 1 with size ≥ 2 always gives 0 (commutative image)
        for mat in [
            ScalarMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]),
            ScalarMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]),
        ] {
            let d = discriminant_probe(&MatrixTuple::new(vec![mat]).unwrap(), 4, 2).unwrap();
            assert!(d.is_zero());
        }
    }

    #[test]
    fn probe_nonzero_implies_semisimple() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..10 {
            let ms: Vec<ScalarMatrix> = (0..2)
                .map(|_| {
                    let rows: Vec<Vec<Scalar>> = (0..2)
                        .map(|_| {
                            (0..2)
                                .map(|_| Scalar::from_i64(rng.gen_range(-3..4)))
                                .collect()
                        })
                        .collect();
                    ScalarMatrix::from_rows(rows).unwrap()
                })
                .collect();
            let tuple = MatrixTuple::new(ms).unwrap();
            let probe = discriminant_probe(&tuple, 4, trial).unwrap();
            if !probe.is_zero() {
                assert!(artin_semisimple(&tuple).unwrap());
            }
        }
    }

    #[test]
    fn trace_expressions_are_equivariant() {
        let expr = parse_expr("(add (mul x1 x2) (mul (tr x1) x2))").unwrap();
        let tuple = diag_and_cycle(3);
        let g = ScalarMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        assert!(equivariance_check(&expr, &tuple, &g).unwrap());
        assert!(equivariance_check(&expr, &tuple, &ScalarMatrix::identity(3)).unwrap());
    }

    #[test]
    fn constant_matrix_is_not_equivariant() {
        let mut e11 = ScalarMatrix::zeros(2);
        e11.set(0, 0, Scalar::one());
        let expr = TraceExpr::ConstMatrix(e11);
        let tuple = diag_and_cycle(2);
        let g = ScalarMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert!(!equivariance_check(&expr, &tuple, &g).unwrap());
    }

    #[test]
    fn singular_conjugator_rejected() {
        let expr = parse_expr("x1").unwrap();
        let tuple = diag_and_cycle(2);
        let g = ScalarMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(equivariance_check(&expr, &tuple, &g).is_err());
    }

    #[test]
    fn conjugation_invariance_of_artin_criterion() {
        let tuple = diag_and_cycle(3);
        let g = ScalarMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let g_inv = g.inverse().unwrap();
        let conj = MatrixTuple::new(
            tuple
                .matrices
                .iter()
                .map(|m| g.matmul(m).matmul(&g_inv))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            artin_semisimple(&tuple).unwrap(),
            artin_semisimple(&conj).unwrap()
        );
    }
}
