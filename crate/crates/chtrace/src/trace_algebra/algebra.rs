//! Finite-dimensional associative algebras with a scalar-valued formal
//! trace, given by structure constants, plus the Cayley-Hamilton
//! machinery: Newton-identity characteristic coefficients, the formal
//! characteristic polynomial evaluated inside the algebra, and the
//! axiom/identity diagnostics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{Scalar, ScalarTag};
use crate::error::{Error, Result};

/// Algebra of dimension d over a tagged scalar field, with basis
/// multiplication e_i·e_j = Σ_k c_{ij}^k e_k, a distinguished unit
/// vector, a trace vector t(e_i), and a declared Cayley-Hamilton degree
/// n with t(1) = n.
#[derive(Clone, Debug)]
pub struct FiniteTraceAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// structure[i*dim + j] lists (k, c_{ij}^k) with nonzero c.
    structure: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
    trace_vec: Vec<Scalar>,
    ch_degree: usize,
    tag: ScalarTag,
}

/// One failed axiom with a witness.
#[derive(Clone, Debug, Serialize)]
pub enum AxiomFailure {
    UnitLeft { basis: usize },
    UnitRight { basis: usize },
    Associativity { i: usize, j: usize, k: usize },
    TraceSymmetry { i: usize, j: usize },
    TraceUnit { expected: usize, found: String },
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomFailure::UnitLeft { basis } => write!(f, "unit fails on the left at e_{basis}"),
            AxiomFailure::UnitRight { basis } => write!(f, "unit fails on the right at e_{basis}"),
            AxiomFailure::Associativity { i, j, k } => {
                write!(f, "associativity fails on (e_{i}, e_{j}, e_{k})")
            }
            AxiomFailure::TraceSymmetry { i, j } => {
                write!(f, "t(e_{i} e_{j}) != t(e_{j} e_{i})")
            }
            AxiomFailure::TraceUnit { expected, found } => {
                write!(f, "t(1) = {found}, expected ch degree {expected}")
            }
        }
    }
}

/// Per-axiom diagnostics from [`FiniteTraceAlgebra::check_axioms`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct DiagnosticReport {
    pub failures: Vec<AxiomFailure>,
}

impl DiagnosticReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for DiagnosticReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "all axioms pass")
        } else {
            writeln!(f, "{} axiom failure(s):", self.failures.len())?;
            for fail in &self.failures {
                writeln!(f, "  - {fail}")?;
            }
            Ok(())
        }
    }
}

impl FiniteTraceAlgebra {
    /// Build an algebra from its raw data. All scalars are promoted to a
    /// common tag; the structural axioms are NOT verified here (use
    /// [`check_axioms`](Self::check_axioms)), but shapes and the degree
    /// are validated.
    pub fn new(
        labels: Vec<String>,
        structure_entries: Vec<(usize, usize, usize, Scalar)>,
        unit: Vec<Scalar>,
        trace_vec: Vec<Scalar>,
        ch_degree: usize,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "algebra dimension must be positive".into(),
            ));
        }
        if ch_degree == 0 {
            return Err(Error::InvalidInput("ch_degree must be positive".into()));
        }
        if unit.len() != dim || trace_vec.len() != dim {
            return Err(Error::InvalidInput(
                "unit and trace vectors must have length dim".into(),
            ));
        }
        // common tag across every scalar present
        let mut tag = ScalarTag::Rat;
        for s in structure_entries
            .iter()
            .map(|(_, _, _, s)| s)
            .chain(unit.iter())
            .chain(trace_vec.iter())
        {
            tag = Scalar::join_tag(tag, s.tag())?;
        }
        let promote_all = |v: Vec<Scalar>| -> Result<Vec<Scalar>> {
            v.into_iter().map(|s| s.promote(tag)).collect()
        };
        let unit = promote_all(unit)?;
        let trace_vec = promote_all(trace_vec)?;
        let mut structure = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in structure_entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "structure index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if !c.is_zero() {
                structure[i * dim + j].push((k, c.promote(tag)?));
            }
        }
        Ok(FiniteTraceAlgebra {
            dim,
            labels,
            structure,
            unit,
            trace_vec,
            ch_degree,
            tag,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ch_degree(&self) -> usize {
        self.ch_degree
    }

    pub fn tag(&self) -> ScalarTag {
        self.tag
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn trace_vec(&self) -> &[Scalar] {
        &self.trace_vec
    }

    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in &self.structure[i * self.dim + j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i * self.dim + j]
    }

    /// Product of two coordinate vectors.
    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let f = &a[i] * &b[j];
                for (k, c) in self.product_of_basis(i, j) {
                    let t = &f * c;
                    out[*k] = &out[*k] + &t;
                }
            }
        }
        out
    }

    /// Trace of a coordinate vector.
    pub fn trace_of(&self, a: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (ai, ti) in a.iter().zip(&self.trace_vec) {
            if !ai.is_zero() {
                acc = &acc + &(ai * ti);
            }
        }
        acc
    }

    /// a^e by repeated multiplication; a^0 is the unit.
    pub fn pow_vec(&self, a: &[Scalar], e: usize) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul_vec(&acc, a);
        }
        acc
    }

    /// Gram matrix of the trace form, `gram[i][j]` = t(e_i e_j).
    pub fn gram(&self) -> Vec<Vec<Scalar>> {
        let mut g = vec![vec![Scalar::zero(); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Scalar::zero();
                for (k, c) in self.product_of_basis(i, j) {
                    acc = &acc + &(c * &self.trace_vec[*k]);
                }
                g[i][j] = acc;
            }
        }
        g
    }

    fn scalars_eq(&self, a: &Scalar, b: &Scalar) -> bool {
        match self.tag {
            ScalarTag::C64 => (a.embed() - b.embed()).norm() <= 1e-9 * (1.0 + a.abs_embed()),
            _ => a.try_eq(b).unwrap_or(false),
        }
    }

    /// Verify the trace-algebra axioms on all basis tuples. The
    /// centrality and multiplicativity axioms for trace values are
    /// automatic for a scalar-valued trace, so the checks are: two-sided
    /// unit, associativity on basis triples, trace symmetry on basis
    /// pairs, and t(1) equal to the declared degree.
    pub fn check_axioms(&self) -> DiagnosticReport {
        let mut report = DiagnosticReport::default();
        let vecs_eq = |a: &[Scalar], b: &[Scalar]| {
            a.iter().zip(b).all(|(x, y)| self.scalars_eq(x, y))
        };
        for i in 0..self.dim {
            let e = self.basis_vec(i);
            if !vecs_eq(&self.mul_vec(&self.unit, &e), &e) {
                report.failures.push(AxiomFailure::UnitLeft { basis: i });
            }
            if !vecs_eq(&self.mul_vec(&e, &self.unit), &e) {
                report.failures.push(AxiomFailure::UnitRight { basis: i });
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                    let jk = self.mul_vec(&self.basis_vec(j), &self.basis_vec(k));
                    let lhs = self.mul_vec(&ij, &self.basis_vec(k));
                    let rhs = self.mul_vec(&self.basis_vec(i), &jk);
                    let ok = lhs.iter().zip(&rhs).all(|(a, b)| self.scalars_eq(a, b));
                    if !ok {
                        report
                            .failures
                            .push(AxiomFailure::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let tij = self.trace_of(&self.mul_vec(&self.basis_vec(i), &self.basis_vec(j)));
                let tji = self.trace_of(&self.mul_vec(&self.basis_vec(j), &self.basis_vec(i)));
                if !self.scalars_eq(&tij, &tji) {
                    report.failures.push(AxiomFailure::TraceSymmetry { i, j });
                }
            }
        }
        let t1 = self.trace_of(&self.unit);
        if !self.scalars_eq(&t1, &Scalar::from_i64(self.ch_degree as i64)) {
            report.failures.push(AxiomFailure::TraceUnit {
                expected: self.ch_degree,
                found: t1.to_string(),
            });
        }
        report
    }

    /// Cheap subset of the axioms used as a precondition by operations
    /// that consume the trace form: t(1) = n and trace symmetry.
    pub(crate) fn validate_trace_form(&self) -> Result<()> {
        let t1 = self.trace_of(&self.unit);
        if !self.scalars_eq(&t1, &Scalar::from_i64(self.ch_degree as i64)) {
            return Err(Error::InvalidInput(format!(
                "t(1) = {t1} but ch_degree = {}",
                self.ch_degree
            )));
        }
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let tij = self.trace_of(&self.mul_vec(&self.basis_vec(i), &self.basis_vec(j)));
                let tji = self.trace_of(&self.mul_vec(&self.basis_vec(j), &self.basis_vec(i)));
                if !self.scalars_eq(&tij, &tji) {
                    return Err(Error::InvalidInput(format!(
                        "trace form not symmetric at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluate the formal characteristic polynomial χ_a^n at a itself,
    /// with n the declared degree. Returns the coordinate vector of
    /// χ_a^n(a); the zero vector iff a satisfies the CH identity.
    pub fn ch_defect(&self, a: &[Scalar]) -> Vec<Scalar> {
        let n = self.ch_degree;
        let mut power_traces = Vec::with_capacity(n);
        let mut p = self.unit.clone();
        for _ in 0..n {
            p = self.mul_vec(&p, a);
            power_traces.push(self.trace_of(&p));
        }
        let coeffs = char_poly_coeffs(&power_traces, n).expect("valid degree");
        // χ(a) = a^n + Σ P_i a^{n−i}
        let mut acc = self.pow_vec(a, n);
        for (i, c) in coeffs.iter().enumerate() {
            // term P_{i+1} · a^{n−i−1}
            let power = self.pow_vec(a, n - i - 1);
            for (dst, p) in acc.iter_mut().zip(&power) {
                let t = c * p;
                *dst = &*dst + &t;
            }
        }
        acc
    }

    fn defect_is_zero(&self, defect: &[Scalar]) -> bool {
        match self.tag {
            ScalarTag::C64 => {
                let norm: f64 = defect
                    .iter()
                    .map(|s| s.embed().norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                norm < 1e-9 * self.dim as f64
            }
            _ => defect.iter().all(|s| s.is_zero()),
        }
    }

    /// True iff the CH identity of the declared degree holds on all basis
    /// vectors, all pairwise basis sums, and `sample_count` seeded random
    /// vectors; also requires t(1) = n.
    pub fn ch_check(&self, sample_count: usize, seed: u64) -> bool {
        let t1 = self.trace_of(&self.unit);
        if !self.scalars_eq(&t1, &Scalar::from_i64(self.ch_degree as i64)) {
            return false;
        }
        for i in 0..self.dim {
            if !self.defect_is_zero(&self.ch_defect(&self.basis_vec(i))) {
                return false;
            }
        }
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let mut v = self.basis_vec(i);
                v[j] = Scalar::one();
                if !self.defect_is_zero(&self.ch_defect(&v)) {
                    return false;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample_count {
            let v: Vec<Scalar> = (0..self.dim)
                .map(|_| match self.tag {
                    ScalarTag::C64 => {
                        Scalar::complex(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    }
                    _ => Scalar::from_i64(rng.gen_range(-4..5)),
                })
                .collect();
            if !self.defect_is_zero(&self.ch_defect(&v)) {
                return false;
            }
        }
        true
    }

    /// Embed every scalar into the complex field.
    pub fn embed_complex(&self) -> FiniteTraceAlgebra {
        let conv =
            |v: &[Scalar]| -> Vec<Scalar> { v.iter().map(|s| Scalar::C64(s.embed())).collect() };
        FiniteTraceAlgebra {
            dim: self.dim,
            labels: self.labels.clone(),
            structure: self
                .structure
                .iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|(k, c)| (*k, Scalar::C64(c.embed())))
                        .collect()
                })
                .collect(),
            unit: conv(&self.unit),
            trace_vec: conv(&self.trace_vec),
            ch_degree: self.ch_degree,
            tag: ScalarTag::C64,
        }
    }
}

/// Coefficients P_1..P_n of the formal characteristic polynomial
/// χ(t) = t^n + Σ P_i t^{n−i}, from power traces t(a), ..., t(a^n), by
/// the exact Newton-identity recursion (characteristic zero only).
pub fn char_poly_coeffs(power_traces: &[Scalar], n: usize) -> Result<Vec<Scalar>> {
    if n == 0 {
        return Err(Error::invalid_parameter("degree must be positive"));
    }
    if power_traces.len() < n {
        return Err(Error::invalid_parameter(format!(
            "need {n} power traces, got {}",
            power_traces.len()
        )));
    }
    // e_0 = 1; i·e_i = Σ_{j=1..i} (−1)^{j−1} e_{i−j} ψ_j; P_i = (−1)^i e_i
    let mut elementary: Vec<Scalar> = vec![Scalar::one()];
    for i in 1..=n {
        let mut acc = Scalar::zero();
        let mut sign = Scalar::one();
        for j in 1..=i {
            let term = &elementary[i - j] * &power_traces[j - 1];
            let term = &sign * &term;
            acc = &acc + &term;
            sign = sign.neg();
        }
        let e_i = acc.try_div(&Scalar::from_i64(i as i64))?;
        elementary.push(e_i);
    }
    Ok((1..=n)
        .map(|i| {
            if i % 2 == 1 {
                elementary[i].neg()
            } else {
                elementary[i].clone()
            }
        })
        .collect())
}
