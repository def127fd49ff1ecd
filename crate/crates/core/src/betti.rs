//! Betti numbers along three independent routes.
//!
//! `poincare_bruteforce` counts permutations by their bounded inversion
//! statistic; `poincare_inductive` knows nothing about inversions and runs
//! the deletion recursion over reduced Hessenberg functions; the closed
//! forms (`b2_closed_form`, `betti_low_degree`) are pure index-set
//! arithmetic. Agreement between the three is the core cross-check of the
//! whole crate.

use crate::combinatorics::{
    self, binomial, bottom_set, h_inversions, l_set, lambda_set_strict, reduce,
    HessenbergFunction, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::symbolic::PoincarePolynomial;
use std::collections::HashMap;

/// Complex dimension of the underlying space: `sum_j (h(j) - j)`.
pub fn dimension(h: &HessenbergFunction) -> usize {
    (1..=h.n()).map(|j| h.value(j) - j).sum()
}

/// Poincaré polynomial by direct enumeration: coefficient `k` counts the
/// permutations with exactly `k` inversion pairs `j < i <= h(j)`.
pub fn poincare_bruteforce_capped(h: &HessenbergFunction, cap: usize) -> Result<PoincarePolynomial> {
    let mut coeffs = vec![0u64; dimension(h) + 1];
    for w in combinatorics::enumerate_group_capped(h.n(), cap)? {
        let k = h_inversions(h, &w)? as usize;
        coeffs[k] += 1;
    }
    Ok(PoincarePolynomial::new(coeffs))
}

/// `poincare_bruteforce_capped` with the default cap of 8.
pub fn poincare_bruteforce(h: &HessenbergFunction) -> Result<PoincarePolynomial> {
    poincare_bruteforce_capped(h, DEFAULT_CAP)
}

/// Memo table for the deletion recursion, keyed by the value sequence.
/// One cache can be shared across many top-level calls (e.g. a sweep).
#[derive(Default)]
pub struct PoincareCache {
    memo: HashMap<Vec<usize>, PoincarePolynomial>,
}

impl PoincareCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

/// Poincaré polynomial by the deletion recursion
/// `P(h) = sum_j q^{h(j)-j} P(h^j)`, with `P = 1` at `n = 1`.
///
/// Shares no code with the inversion count above; the two are mutual
/// oracles.
pub fn poincare_inductive_with(
    h: &HessenbergFunction,
    cache: &mut PoincareCache,
) -> Result<PoincarePolynomial> {
    if let Some(hit) = cache.memo.get(h.values()) {
        return Ok(hit.clone());
    }
    let result = if h.n() == 1 {
        PoincarePolynomial::one()
    } else {
        let mut acc = PoincarePolynomial::zero();
        for j in 1..=h.n() {
            let sub = poincare_inductive_with(&reduce(h, j)?, cache)?;
            acc = acc.add(&sub.shift(h.value(j) - j));
        }
        acc
    };
    cache.memo.insert(h.values().to_vec(), result.clone());
    Ok(result)
}

/// `poincare_inductive_with` with a fresh cache.
pub fn poincare_inductive(h: &HessenbergFunction) -> Result<PoincarePolynomial> {
    poincare_inductive_with(h, &mut PoincareCache::new())
}

/// Closed form for the second Betti number of a connected graph:
/// `sum_{j in L(h)} C(n,j) + (n-1)|bottom(h)| - |L(h)|`.
pub fn b2_closed_form(h: &HessenbergFunction) -> Result<u64> {
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = h.n();
    let bottom = bottom_set(h);
    let l = l_set(h);
    let sum: u64 = l.iter().map(|&j| binomial(n, j)).sum();
    Ok(sum + (n as u64 - 1) * bottom.len() as u64 - l.len() as u64)
}

/// Betti numbers `b_0, b_2, ..., b_{2d}` under the hypothesis
/// `h(j) >= j+d` on `[n-d]` (with `d >= 2`): all but the top agree with the
/// full flag variety, and the top receives `(n-1)` extra classes for each
/// strict member of `Λ_d(h)`.
pub fn betti_low_degree(h: &HessenbergFunction, d: usize) -> Result<Vec<u64>> {
    let n = h.n();
    if d < 2 || d >= n {
        // Below d = 2 the degree-2 classes interfere; at d >= n the
        // hypothesis below is vacuous and the comparison has no content.
        return Err(Error::PreconditionUnmet {
            hypothesis: "low-degree comparison needs 2 <= d <= n-1".to_string(),
        });
    }
    if let Some(j) = (1..=n - d).find(|&j| h.value(j) < j + d) {
        return Err(Error::PreconditionUnmet {
            hypothesis: format!("h(j) >= j+{d} fails at j = {j}"),
        });
    }
    let flag = PoincarePolynomial::flag(n);
    let mut betti: Vec<u64> = (0..d).map(|i| flag.coefficient(i)).collect();
    let correction = (n as u64 - 1) * lambda_set_strict(h, d).len() as u64;
    betti.push(flag.coefficient(d) + correction);
    Ok(betti)
}

/// Number of connected components of the moment graph, by a union-find over
/// the admissible transposition moves (no labels, no graph construction).
pub fn component_count_capped(h: &HessenbergFunction, cap: usize) -> Result<u64> {
    let n = h.n();
    let group = combinatorics::enumerate_group_capped(n, cap)?;
    let mut parent: Vec<usize> = (0..group.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for (wi, w) in group.iter().enumerate() {
        for j in 1..=n {
            for i in (j + 1)..=h.value(j) {
                let vi = w.swap_right(i, j).lex_rank();
                let a = find(&mut parent, wi);
                let b = find(&mut parent, vi);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let roots: std::collections::HashSet<usize> =
        (0..group.len()).map(|x| find(&mut parent, x)).collect();
    Ok(roots.len() as u64)
}

/// `component_count_capped` with the default cap of 8.
pub fn component_count(h: &HessenbergFunction) -> Result<u64> {
    component_count_capped(h, DEFAULT_CAP)
}
