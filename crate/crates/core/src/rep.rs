//! Symmetric-group structure of the dot action: characters of the induced
//! action on low-degree quotient pieces, exact decomposition into the
//! permutation modules M^lambda, and the closed-form answers to compare
//! against.

use crate::classes::{self, EquivariantClass};
use crate::cohomology::{
    self, class_int_vector, graph_cohomology_basis, monomial_basis, RationalMatrix, TrackedReducer,
};
use crate::combinatorics::{
    factorial, lambda_set_strict, partitions_of, HessenbergFunction, Partition, Permutation,
};
use crate::error::{Error, Result};
use crate::gkm::build_graph;
use crate::symbolic::PoincarePolynomial;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Cycle type of a permutation, as a partition of n.
pub fn cycle_type(w: &Permutation) -> Partition {
    let n = w.n();
    let mut seen = vec![false; n + 1];
    let mut parts = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = w.apply(at);
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_parts(parts)
}

/// The canonical representative of a conjugacy class: cycles in decreasing
/// length, each on a run of consecutive integers.
pub fn cycle_type_representative(mu: &Partition) -> Permutation {
    let n = mu.sum();
    let mut images: Vec<usize> = (1..=n).collect();
    let mut start = 1;
    for &len in mu.parts() {
        for offset in 0..len {
            images[start + offset - 1] = start + (offset + 1) % len;
        }
        start += len;
    }
    Permutation::from_images(images).expect("cycle layout is a bijection")
}

/// Character of the permutation module M^lambda at cycle type mu: the number
/// of ordered set partitions of [n] with block sizes lambda fixed by a
/// permutation of cycle type mu, i.e. distributions of mu's cycles into the
/// blocks. Computed by a bitmask DP over the cycles.
pub fn m_lambda_character(lambda: &Partition, mu: &Partition) -> Result<u64> {
    if lambda.sum() != mu.sum() {
        return Err(Error::SizeMismatch {
            left: lambda.sum(),
            right: mu.sum(),
        });
    }
    let cycles = mu.parts();
    let c = cycles.len();
    let mut prefix = vec![0usize];
    for &p in lambda.parts() {
        prefix.push(prefix.last().unwrap() + p);
    }
    let sum_of = |mask: usize| -> usize {
        (0..c).filter(|i| mask >> i & 1 == 1).map(|i| cycles[i]).sum()
    };
    let mut dp = vec![0u64; 1 << c];
    dp[0] = 1;
    for mask in 0..(1usize << c) {
        if dp[mask] == 0 {
            continue;
        }
        let s = sum_of(mask);
        let Some(k) = prefix.iter().position(|&p| p == s) else {
            continue;
        };
        if k == lambda.parts().len() {
            continue;
        }
        let want = lambda.parts()[k];
        let free = !mask & ((1 << c) - 1);
        // Enumerate submasks of the free set with total size `want`.
        let mut sub = free;
        loop {
            if sub != 0 && sum_of(sub) == want {
                dp[mask | sub] += dp[mask];
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    Ok(dp[(1 << c) - 1])
}

/// An integer-valued function on the conjugacy classes of S_n, stored in the
/// canonical partition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    values: Vec<BigInt>,
}

impl ClassFunction {
    pub fn new(n: usize, values: Vec<BigInt>) -> Result<Self> {
        let expected = partitions_of(n).len();
        if values.len() != expected {
            return Err(Error::SizeMismatch {
                left: values.len(),
                right: expected,
            });
        }
        Ok(ClassFunction { n, values })
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        let count = partitions_of(n).len();
        ClassFunction {
            n,
            values: vec![c.into(); count],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Values aligned with `partitions_of(n)`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value(&self, mu: &Partition) -> Result<&BigInt> {
        let classes = partitions_of(self.n);
        let idx = classes
            .iter()
            .position(|p| p == mu)
            .ok_or(Error::SizeMismatch {
                left: mu.sum(),
                right: self.n,
            })?;
        Ok(&self.values[idx])
    }

    /// The value at the identity's class (cycle type all ones).
    pub fn at_identity(&self) -> &BigInt {
        self.values.last().expect("at least one class")
    }
}

/// An integer combination of permutation modules M^lambda.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleDecomposition {
    coeffs: BTreeMap<Partition, BigInt>,
}

impl ModuleDecomposition {
    pub fn new(coeffs: BTreeMap<Partition, BigInt>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ModuleDecomposition { coeffs }
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.coeffs.get(lambda).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero coefficients, keyed by partition.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total dimension: sum of coefficients times dim M^lambda.
    pub fn dimension(&self) -> BigInt {
        let mut total = BigInt::zero();
        for (lambda, c) in &self.coeffs {
            let mut dim = BigInt::from(factorial(lambda.sum()));
            for &p in lambda.parts() {
                dim /= BigInt::from(factorial(p));
            }
            total += c * dim;
        }
        total
    }

    /// The character of this combination.
    pub fn character(&self, n: usize) -> Result<ClassFunction> {
        let classes = partitions_of(n);
        let mut values = vec![BigInt::zero(); classes.len()];
        for (lambda, c) in &self.coeffs {
            if lambda.sum() != n {
                return Err(Error::SizeMismatch {
                    left: lambda.sum(),
                    right: n,
                });
            }
            for (i, mu) in classes.iter().enumerate() {
                values[i] += c * BigInt::from(m_lambda_character(lambda, mu)?);
            }
        }
        ClassFunction::new(n, values)
    }
}

impl fmt::Display for ModuleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // Descending lex over partitions: (n) first.
        let mut first = true;
        for (lambda, c) in self.coeffs.iter().rev() {
            let magnitude = c.magnitude();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "M{lambda}")?;
        }
        Ok(())
    }
}

/// Exact decomposition of an integer class function over the M^lambda basis.
/// Errors with NonIntegralSolution when the coefficients are not integers,
/// which signals a corrupted character upstream.
pub fn decompose(chi: &ClassFunction) -> Result<ModuleDecomposition> {
    let n = chi.n();
    let lambdas = partitions_of(n);
    let classes = lambdas.clone();
    let entries: Vec<Vec<BigRational>> = classes
        .iter()
        .map(|mu| {
            lambdas
                .iter()
                .map(|lambda| {
                    Ok(BigRational::from_integer(BigInt::from(m_lambda_character(
                        lambda, mu,
                    )?)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = RationalMatrix::new(entries, lambdas.len())?;
    let rhs: Vec<BigRational> = chi
        .values()
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let solution = matrix.solve(&rhs)?.ok_or(Error::NonIntegralSolution)?;
    let mut coeffs = BTreeMap::new();
    for (lambda, c) in lambdas.iter().zip(solution) {
        if !c.is_integer() {
            return Err(Error::NonIntegralSolution);
        }
        let int = c.to_integer();
        if !int.is_zero() {
            coeffs.insert(lambda.clone(), int);
        }
    }
    Ok(ModuleDecomposition::new(coeffs))
}

/// Character of the dot action on the degree-d piece of the quotient by the
/// ideal generated by the constants. Computed on an adapted basis: a maximal
/// independent family of ideal vectors first, extended by solution-basis
/// classes; the trace at one representative per cycle type is the sum of the
/// extension classes' own coordinates in their images.
pub fn dot_action_character(h: &HessenbergFunction, d: u32, budget: u128) -> Result<ClassFunction> {
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = h.n();
    if d == 0 {
        return Ok(ClassFunction::constant(n, 1));
    }
    // Refuse on size estimates alone; building the graph first would already
    // be expensive for the inputs the budget is meant to reject.
    cohomology::guard(cohomology::congruence_entry_count_for(h, d), 1, budget)?;
    cohomology::guard(cohomology::congruence_entry_count_for(h, d - 1), 1, budget)?;
    let g = build_graph(h)?;
    let full = graph_cohomology_basis(&g, d, budget)?;
    let lower = graph_cohomology_basis(&g, d - 1, budget)?;
    let monos = monomial_basis(n, d);
    let cols = g.vertices().len() * monos.len();

    let to_rational = |v: Vec<BigInt>| -> Vec<BigRational> {
        v.into_iter().map(BigRational::from_integer).collect()
    };

    let mut reducer = TrackedReducer::new(cols);
    for b in &lower {
        for k in 1..=n {
            let t = classes::class_t(n, k)?;
            let product = b.mul(&t)?;
            reducer.insert(to_rational(class_int_vector(&product, g.vertices(), &monos)));
        }
    }
    let ideal_rank = reducer.rank();

    let mut extension: Vec<(usize, EquivariantClass)> = Vec::new();
    for b in &full {
        let kept = reducer.rank();
        if reducer.insert(to_rational(class_int_vector(b, g.vertices(), &monos))) {
            extension.push((kept, b.clone()));
        }
    }
    debug_assert_eq!(reducer.rank(), full.len());
    debug_assert_eq!(extension.len() + ideal_rank, full.len());

    let mut values = Vec::new();
    for mu in partitions_of(n) {
        let sigma = cycle_type_representative(&mu);
        let mut trace = BigRational::zero();
        for (position, class) in &extension {
            let moved = classes::dot_act(&sigma, class)?;
            let coords = reducer
                .express(&to_rational(class_int_vector(&moved, g.vertices(), &monos)))
                .expect("dot action preserves the solution space");
            trace += &coords[*position];
        }
        if !trace.is_integer() {
            return Err(Error::NonIntegralSolution);
        }
        values.push(trace.to_integer());
    }
    ClassFunction::new(n, values)
}

/// The closed-form decomposition of the degree-2 quotient piece: one module
/// per j in [n-2] according to the shape of h at j, plus a trailing trivial
/// module.
pub fn beta_formula(h: &HessenbergFunction) -> Result<ModuleDecomposition> {
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = h.n();
    let mut coeffs: BTreeMap<Partition, BigInt> = BTreeMap::new();
    let mut bump = |lambda: Partition| {
        *coeffs.entry(lambda).or_insert_with(BigInt::zero) += 1;
    };
    for j in 1..=n.saturating_sub(2) {
        let prev = if j == 1 { 1 } else { h.value(j - 1) };
        let beta = if prev == j && h.value(j) == j + 1 {
            Partition::from_parts(vec![n - j, j])
        } else if prev == j + 1 && h.value(j) == j + 1 {
            Partition::from_parts(vec![n - 1, 1])
        } else {
            Partition::from_parts(vec![n])
        };
        bump(beta);
    }
    if n >= 2 {
        bump(Partition::from_parts(vec![n]));
    }
    Ok(ModuleDecomposition::new(coeffs))
}

/// The closed-form decomposition in degree 2d for d >= 2 under the
/// hypothesis `h(j) >= j + d` on `[n-d]`: a positive number of trivial
/// modules plus one copy of M^(n-1,1) per strict member of the d-offset
/// diagonal set.
pub fn h2d_decomposition_formula(h: &HessenbergFunction, d: u32) -> Result<ModuleDecomposition> {
    let n = h.n();
    let d_us = d as usize;
    if d_us < 2 || d_us > n.saturating_sub(1) {
        return Err(Error::PreconditionUnmet {
            hypothesis: "degree comparison needs 2 <= d <= n-1".to_string(),
        });
    }
    for j in 1..=(n - d_us) {
        if h.value(j) < j + d_us {
            return Err(Error::PreconditionUnmet {
                hypothesis: format!("h({j}) >= {} required", j + d_us),
            });
        }
    }
    let lambda = lambda_set_strict(h, d_us);
    let flag = PoincarePolynomial::flag(n).coefficient(d_us) as i64;
    let m_d = flag - lambda.len() as i64;
    assert!(m_d > 0, "trivial multiplicity must be positive");
    let mut coeffs = BTreeMap::new();
    coeffs.insert(Partition::from_parts(vec![n]), BigInt::from(m_d));
    if !lambda.is_empty() {
        coeffs.insert(
            Partition::from_parts(vec![n - 1, 1]),
            BigInt::from(lambda.len() as i64),
        );
    }
    Ok(ModuleDecomposition::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti;
    use crate::combinatorics::enumerate_hessenberg;
    use crate::cohomology::DEFAULT_LA_BUDGET;

    fn h(values: &[usize]) -> HessenbergFunction {
        HessenbergFunction::from_values(values.to_vec()).unwrap()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::from_parts(parts.to_vec())
    }

    #[test]
    fn cycle_types() {
        let w: Permutation = "231".parse().unwrap();
        assert_eq!(cycle_type(&w), part(&[3]));
        let v: Permutation = "2143".parse().unwrap();
        assert_eq!(cycle_type(&v), part(&[2, 2]));
        assert_eq!(cycle_type(&Permutation::identity(4)), part(&[1, 1, 1, 1]));
    }

    #[test]
    fn representative_has_its_cycle_type() {
        for n in 1..=6 {
            for mu in partitions_of(n) {
                let sigma = cycle_type_representative(&mu);
                assert_eq!(cycle_type(&sigma), mu, "mu = {mu}");
            }
        }
        let sigma = cycle_type_representative(&part(&[3, 2]));
        assert_eq!(sigma.images(), &[2, 3, 1, 5, 4]);
    }

    #[test]
    fn m_lambda_character_values() {
        // Trivial module: always 1.
        for mu in partitions_of(5) {
            assert_eq!(m_lambda_character(&part(&[5]), &mu).unwrap(), 1);
        }
        // Natural permutation module: counts fixed points.
        for mu in partitions_of(5) {
            let fixed = mu.parts().iter().filter(|&&p| p == 1).count() as u64;
            assert_eq!(m_lambda_character(&part(&[4, 1]), &mu).unwrap(), fixed);
        }
        // Regular representation: n! at the identity, 0 elsewhere.
        for mu in partitions_of(4) {
            let expected = if mu == part(&[1, 1, 1, 1]) { 24 } else { 0 };
            assert_eq!(
                m_lambda_character(&part(&[1, 1, 1, 1]), &mu).unwrap(),
                expected
            );
        }
        assert!(m_lambda_character(&part(&[3]), &part(&[2, 2])).is_err());
    }

    #[test]
    fn m_lambda_dimension_is_multinomial() {
        for n in 1..=6 {
            let ones = part(&vec![1; n]);
            for lambda in partitions_of(n) {
                let dim = m_lambda_character(&lambda, &ones).unwrap();
                let mut expected = factorial(n);
                for &p in lambda.parts() {
                    expected /= factorial(p);
                }
                assert_eq!(dim, expected, "lambda = {lambda}");
            }
        }
    }

    #[test]
    fn character_matrix_invertible_up_to_n8() {
        for n in 1..=8 {
            let lambdas = partitions_of(n);
            let entries: Vec<Vec<BigRational>> = lambdas
                .iter()
                .map(|mu| {
                    lambdas
                        .iter()
                        .map(|lambda| {
                            BigRational::from_integer(BigInt::from(
                                m_lambda_character(lambda, mu).unwrap(),
                            ))
                        })
                        .collect()
                })
                .collect();
            let m = RationalMatrix::new(entries, lambdas.len()).unwrap();
            assert_eq!(m.rank(), lambdas.len(), "n = {n}");
        }
    }

    #[test]
    fn decompose_basic_characters() {
        // Constant 1 is the trivial module.
        let one = ClassFunction::constant(5, 1);
        let dec = decompose(&one).unwrap();
        assert_eq!(dec.coefficient(&part(&[5])), BigInt::one());
        assert_eq!(dec.entries().count(), 1);

        // Fixed-point character is the natural module.
        let classes = partitions_of(5);
        let fixed: Vec<BigInt> = classes
            .iter()
            .map(|mu| BigInt::from(mu.parts().iter().filter(|&&p| p == 1).count()))
            .collect();
        let chi = ClassFunction::new(5, fixed).unwrap();
        let dec = decompose(&chi).unwrap();
        assert_eq!(dec.coefficient(&part(&[4, 1])), BigInt::one());
        assert_eq!(dec.entries().count(), 1);

        // Not a permutation-module combination: over the classes ((2),(1,1))
        // the characters of M^(2) and M^(1,1) are (1,1) and (0,2), so the
        // target (0,1) solves to a half-integer coefficient.
        let bad = ClassFunction::new(2, vec![BigInt::zero(), BigInt::one()]).unwrap();
        assert!(matches!(decompose(&bad), Err(Error::NonIntegralSolution)));
    }

    #[test]
    fn decomposition_roundtrips_through_characters() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(part(&[4]), BigInt::from(3));
        coeffs.insert(part(&[3, 1]), BigInt::from(-1));
        coeffs.insert(part(&[2, 2]), BigInt::from(2));
        let dec = ModuleDecomposition::new(coeffs);
        let chi = dec.character(4).unwrap();
        assert_eq!(decompose(&chi).unwrap(), dec);
    }

    #[test]
    fn decomposition_display_and_dimension() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(part(&[8]), BigInt::from(3));
        coeffs.insert(part(&[7, 1]), BigInt::from(2));
        coeffs.insert(part(&[6, 2]), BigInt::from(2));
        let dec = ModuleDecomposition::new(coeffs);
        assert_eq!(dec.to_string(), "3*M(8) + 2*M(7,1) + 2*M(6,2)");
        assert_eq!(
            dec.dimension(),
            BigInt::from(3 + 2 * 8 + 2 * 28)
        );
        assert_eq!(ModuleDecomposition::default().to_string(), "0");
    }

    #[test]
    fn beta_formula_examples() {
        let dec = beta_formula(&h(&[2, 3, 3])).unwrap();
        assert_eq!(dec.coefficient(&part(&[3])), BigInt::one());
        assert_eq!(dec.coefficient(&part(&[2, 1])), BigInt::one());

        let big = beta_formula(&h(&[2, 3, 6, 6, 6, 7, 8, 8])).unwrap();
        assert_eq!(big.to_string(), "3*M(8) + 2*M(7,1) + 2*M(6,2)");

        let five = beta_formula(&h(&[3, 3, 4, 5, 5])).unwrap();
        assert_eq!(five.to_string(), "2*M(5) + M(4,1) + M(3,2)");
        assert_eq!(five.dimension(), BigInt::from(17));

        let flag = beta_formula(&h(&[4, 4, 4, 4])).unwrap();
        assert_eq!(flag.to_string(), "3*M(4)");

        assert!(beta_formula(&h(&[1, 2, 3])).is_err());
    }

    #[test]
    fn beta_formula_dimension_matches_closed_form() {
        for n in 2..=8 {
            for f in enumerate_hessenberg(n) {
                if !f.is_connected() {
                    continue;
                }
                let dec = beta_formula(&f).unwrap();
                assert_eq!(
                    dec.dimension(),
                    BigInt::from(betti::b2_closed_form(&f).unwrap()),
                    "h = {f}"
                );
            }
        }
    }

    #[test]
    fn dot_character_examples() {
        let chi = dot_action_character(&h(&[2, 3, 3]), 1, DEFAULT_LA_BUDGET).unwrap();
        assert_eq!(chi.at_identity(), &BigInt::from(4));
        assert_eq!(chi.value(&part(&[3])).unwrap(), &BigInt::one());

        // Trivial action on the full flag's degree-2 piece.
        let flag = dot_action_character(&h(&[3, 3, 3]), 1, DEFAULT_LA_BUDGET).unwrap();
        for v in flag.values() {
            assert_eq!(v, &BigInt::from(2));
        }
    }

    #[test]
    fn dot_character_decomposes_to_beta_formula_up_to_n4() {
        for n in 2..=4 {
            for f in enumerate_hessenberg(n) {
                if !f.is_connected() {
                    continue;
                }
                let chi = dot_action_character(&f, 1, DEFAULT_LA_BUDGET).unwrap();
                let dec = decompose(&chi).unwrap();
                assert_eq!(dec, beta_formula(&f).unwrap(), "h = {f}");
            }
        }
    }

    #[test]
    fn h2d_formula_examples() {
        let dec = h2d_decomposition_formula(&h(&[3, 4, 5, 5, 5]), 2).unwrap();
        assert_eq!(dec.coefficient(&part(&[5])), BigInt::from(7));
        assert_eq!(dec.coefficient(&part(&[4, 1])), BigInt::from(2));
        assert_eq!(dec.dimension(), BigInt::from(17));

        let flag = h2d_decomposition_formula(&h(&[4, 4, 4, 4]), 2).unwrap();
        assert_eq!(flag.to_string(), "5*M(4)");

        assert!(h2d_decomposition_formula(&h(&[2, 3, 3]), 2).is_err());
    }

    #[test]
    fn h2d_formula_matches_computed_character_up_to_n4() {
        for n in 3..=4 {
            for f in enumerate_hessenberg(n) {
                for d in 2..n {
                    if (1..=(n - d)).any(|j| f.value(j) < j + d) {
                        continue;
                    }
                    let formula = h2d_decomposition_formula(&f, d as u32).unwrap();
                    let chi = dot_action_character(&f, d as u32, DEFAULT_LA_BUDGET).unwrap();
                    assert_eq!(decompose(&chi).unwrap(), formula, "h = {f}, d = {d}");
                }
            }
        }
    }

    #[test]
    fn character_dimension_matches_betti_numbers() {
        for f in enumerate_hessenberg(4) {
            if !f.is_connected() {
                continue;
            }
            let poincare = betti::poincare_bruteforce(&f).unwrap();
            for d in 0..=2u32 {
                let chi = dot_action_character(&f, d, DEFAULT_LA_BUDGET).unwrap();
                assert_eq!(
                    chi.at_identity(),
                    &BigInt::from(poincare.coefficient(d as usize)),
                    "h = {f}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn triviality_below_the_hypothesis_degree() {
        // For h = (4,4,4,4) with d = 3 the hypothesis holds, so the action
        // in degrees p < d is trivial: every value equals the flag Betti
        // number.
        let f = h(&[4, 4, 4, 4]);
        for p in 1..3u32 {
            let chi = dot_action_character(&f, p, DEFAULT_LA_BUDGET).unwrap();
            let expected = BigInt::from(PoincarePolynomial::flag(4).coefficient(p as usize));
            for v in chi.values() {
                assert_eq!(v, &expected, "p = {p}");
            }
        }
    }
}
