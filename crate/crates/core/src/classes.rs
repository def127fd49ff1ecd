//! The classical generating classes and the symmetric-group dot action.
//!
//! A class assigns to every vertex `w` a homogeneous polynomial of one fixed
//! degree. Values are stored densely (all n! at once) for n <= 6 and as
//! evaluation closures above that, so the same constructors serve both the
//! exhaustive small-n verifications and formula-level spot checks at n = 8.
//!
//! The constructors provided here are the ones that generate the low-degree
//! cohomology: the constants `t_k`, the coordinate classes `x_i`, the
//! flag-descended products `y_{j,k}`, their mirrored companions `y*_{i,k}`,
//! and the subset classes `tau_A`.

use crate::combinatorics::{
    self, bottom_set, dual_value, l_set, lambda_set_strict, subsets_of_size, HessenbergFunction,
    Permutation,
};
use crate::error::{Error, Result};
use crate::gkm::{self, LabeledGraph};
use crate::symbolic::Polynomial;
use num::BigInt;
use std::fmt;
use std::sync::Arc;

/// Values are materialized eagerly up to this n and lazily beyond it.
const DENSE_LIMIT: usize = 6;

#[derive(Clone)]
enum Values {
    Dense(Arc<Vec<Polynomial>>),
    Lazy(Arc<dyn Fn(&Permutation) -> Polynomial + Send + Sync>),
}

/// A vertex-indexed family of homogeneous polynomials of one degree.
#[derive(Clone)]
pub struct EquivariantClass {
    n: usize,
    degree: u32,
    values: Values,
}

impl fmt::Debug for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let storage = match self.values {
            Values::Dense(_) => "dense",
            Values::Lazy(_) => "lazy",
        };
        write!(
            f,
            "EquivariantClass(n={}, degree={}, {storage})",
            self.n, self.degree
        )
    }
}

impl EquivariantClass {
    /// Builds a class from an evaluation rule. For n <= 6 the rule is run on
    /// every vertex immediately and each value's homogeneity is checked; for
    /// larger n evaluation is deferred.
    pub fn from_fn<F>(n: usize, degree: u32, rule: F) -> Result<Self>
    where
        F: Fn(&Permutation) -> Polynomial + Send + Sync + 'static,
    {
        if n <= DENSE_LIMIT {
            let values: Vec<Polynomial> = combinatorics::enumerate_group_capped(n, DENSE_LIMIT)?
                .iter()
                .map(|w| rule(w))
                .collect();
            EquivariantClass::from_values(n, degree, values)
        } else {
            Ok(EquivariantClass {
                n,
                degree,
                values: Values::Lazy(Arc::new(rule)),
            })
        }
    }

    /// Builds a dense class from explicit values in canonical vertex order.
    pub fn from_values(n: usize, degree: u32, values: Vec<Polynomial>) -> Result<Self> {
        let expected = combinatorics::factorial(n) as usize;
        if values.len() != expected {
            return Err(Error::SizeMismatch {
                left: values.len(),
                right: expected,
            });
        }
        for v in &values {
            if v.n() != n {
                return Err(Error::SizeMismatch {
                    left: v.n(),
                    right: n,
                });
            }
            if !v.is_homogeneous_of_degree(degree) {
                return Err(Error::PreconditionUnmet {
                    hypothesis: format!("all values homogeneous of degree {degree}"),
                });
            }
        }
        Ok(EquivariantClass {
            n,
            degree,
            values: Values::Dense(Arc::new(values)),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The value at a vertex.
    pub fn eval(&self, w: &Permutation) -> Polynomial {
        debug_assert_eq!(w.n(), self.n);
        match &self.values {
            Values::Dense(values) => values[w.lex_rank()].clone(),
            Values::Lazy(rule) => {
                let value = rule(w);
                debug_assert!(
                    value.is_homogeneous_of_degree(self.degree),
                    "lazy class value at {w} is not homogeneous of degree {}",
                    self.degree
                );
                value
            }
        }
    }

    fn check_compatible(&self, other: &EquivariantClass, same_degree: bool) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if same_degree && self.degree != other.degree {
            return Err(Error::PreconditionUnmet {
                hypothesis: format!(
                    "matching degrees (got {} and {})",
                    self.degree, other.degree
                ),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &EquivariantClass) -> Result<EquivariantClass> {
        self.check_compatible(other, true)?;
        let (a, b) = (self.clone(), other.clone());
        EquivariantClass::from_fn(self.n, self.degree, move |w| {
            a.eval(w).add(&b.eval(w)).expect("same ambient n")
        })
    }

    pub fn sub(&self, other: &EquivariantClass) -> Result<EquivariantClass> {
        self.add(&other.scale(BigInt::from(-1)))
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> EquivariantClass {
        let a = self.clone();
        let c = c.into();
        EquivariantClass::from_fn(self.n, self.degree, move |w| a.eval(w).scale(c.clone()))
            .expect("scaling preserves the class invariants")
    }

    /// Pointwise product; degrees add.
    pub fn mul(&self, other: &EquivariantClass) -> Result<EquivariantClass> {
        self.check_compatible(other, false)?;
        let (a, b) = (self.clone(), other.clone());
        EquivariantClass::from_fn(self.n, self.degree + other.degree, move |w| {
            a.eval(w).mul(&b.eval(w)).expect("same ambient n")
        })
    }

    /// Whether the edge congruences of `graph` hold for this class.
    pub fn is_gkm(&self, graph: &LabeledGraph) -> Result<bool> {
        if graph.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: graph.n(),
            });
        }
        let vertices = graph.vertices();
        gkm::check_gkm(graph, |i| self.eval(&vertices[i]))
    }

    /// Pointwise equality over all of `S_n`.
    pub fn pointwise_eq(&self, other: &EquivariantClass) -> Result<bool> {
        self.check_compatible(other, true)?;
        let group = combinatorics::enumerate_group_capped(self.n, combinatorics::DEFAULT_CAP)?;
        Ok(group.iter().all(|w| self.eval(w) == other.eval(w)))
    }
}

/// The constant class `t_k` in degree 1.
pub fn class_t(n: usize, k: usize) -> Result<EquivariantClass> {
    let value = Polynomial::var(n, k)?;
    EquivariantClass::from_fn(n, 1, move |_| value.clone())
}

/// The coordinate class `x_i : w -> t_{w(i)}`.
pub fn class_x(n: usize, i: usize) -> Result<EquivariantClass> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    EquivariantClass::from_fn(n, 1, move |w| {
        Polynomial::var(n, w.apply(i)).expect("image is in 1..=n")
    })
}

fn prefix_contains(w: &Permutation, j: usize, k: usize) -> bool {
    (1..=j).any(|p| w.apply(p) == k)
}

/// `y_{j,k}` in degree `h(j) - j`: at `w`, the product
/// `prod_{l=j+1}^{h(j)} (t_k - t_{w(l)})` when `k` appears among the first
/// `j` entries of `w`, and zero otherwise.
pub fn class_y(h: &HessenbergFunction, j: usize, k: usize) -> Result<EquivariantClass> {
    let n = h.n();
    for (idx, bound) in [(j, n), (k, n)] {
        if idx == 0 || idx > bound {
            return Err(Error::IndexOutOfRange { index: idx, bound });
        }
    }
    let degree = (h.value(j) - j) as u32;
    let top = h.value(j);
    EquivariantClass::from_fn(n, degree, move |w| {
        if !prefix_contains(w, j, k) {
            return Polynomial::zero(n);
        }
        let mut acc = Polynomial::constant(n, 1);
        for l in (j + 1)..=top {
            let factor = Polynomial::var_difference(n, k, w.apply(l)).expect("indices in range");
            acc = acc.mul(&factor).expect("same ambient n");
        }
        acc
    })
}

/// `y*_{i,k}` in degree `i - h*(i)`: at `w`, the product
/// `prod_{l=h*(i)}^{i-1} (t_k - t_{w(l)})` when `k` appears among the last
/// `n-i+1` entries of `w`, and zero otherwise.
pub fn class_y_star(h: &HessenbergFunction, i: usize, k: usize) -> Result<EquivariantClass> {
    let n = h.n();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    let start = dual_value(h, i)?;
    let degree = (i - start) as u32;
    EquivariantClass::from_fn(n, degree, move |w| {
        if prefix_contains(w, i - 1, k) {
            return Polynomial::zero(n);
        }
        let mut acc = Polynomial::constant(n, 1);
        for l in start..i {
            let factor = Polynomial::var_difference(n, k, w.apply(l)).expect("indices in range");
            acc = acc.mul(&factor).expect("same ambient n");
        }
        acc
    })
}

/// `tau_A` in degree 1, defined when `|A|` lies in the L-set of `h`: at `w`
/// it is `t_{w(j)} - t_{w(j+1)}` when the first `j = |A|` entries of `w` are
/// exactly `A`, and zero otherwise.
pub fn class_tau(h: &HessenbergFunction, a: &[usize]) -> Result<EquivariantClass> {
    let n = h.n();
    let j = a.len();
    if !l_set(h).contains(&j) {
        return Err(Error::InvalidCardinality { cardinality: j });
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != j || sorted.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::PreconditionUnmet {
            hypothesis: "A must be a subset of [n] without repeats".to_string(),
        });
    }
    EquivariantClass::from_fn(n, 1, move |w| {
        let mut prefix: Vec<usize> = (1..=j).map(|p| w.apply(p)).collect();
        prefix.sort_unstable();
        if prefix == sorted {
            Polynomial::var_difference(n, w.apply(j), w.apply(j + 1)).expect("indices in range")
        } else {
            Polynomial::zero(n)
        }
    })
}

/// The dot action: `(sigma . f)(w) = sigma(f(sigma^{-1} w))`, where `sigma`
/// acts on polynomial values by renaming variables.
pub fn dot_act(sigma: &Permutation, f: &EquivariantClass) -> Result<EquivariantClass> {
    if sigma.n() != f.n() {
        return Err(Error::SizeMismatch {
            left: f.n(),
            right: sigma.n(),
        });
    }
    let sigma = sigma.clone();
    let inverse = sigma.inverse();
    let f = f.clone();
    EquivariantClass::from_fn(f.n(), f.degree(), move |w| {
        let moved = inverse.compose(w).expect("same n");
        f.eval(&moved)
            .permute_variables(&sigma)
            .expect("same ambient n")
    })
}

/// One named pointwise identity, with its outcome.
#[derive(Debug, Clone)]
pub struct RelationEntry {
    pub name: String,
    pub passed: bool,
}

/// Outcome of `verify_relation_suite`.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Checks, pointwise over all of `S_n`, every linear identity satisfied by
/// the generating classes of a connected `h`:
///
/// 1. `sum_i x_i = sum_k t_k`;
/// 2. `sum_k y_{j,k} = x_1 + ... + x_j - j*x_{j+1}` for each bottom index j;
/// 3. `sum_k y_{j,k} = sum_{i<=j} prod_{l=j+1}^{h(j)} (x_i - x_l)` for every j;
/// 4. `sum_{|A|=j} tau_A = x_j - x_{j+1}` for each L-index j;
/// 5. the telescoping identity `y_{m,k} + sum_{A ni k, m<|A|<=n-1} tau_A =
///    t_k - x_n` with `m = max bottom(h)` (0 when empty);
/// 6. `y_{j,k} + y*_{j+1+d,k} = prod_{l=j+1}^{j+d} (t_k - x_l)` for every d
///    whose hypothesis `h(j) >= j+d` on `[n-d]` holds and every strict
///    member j of `Λ_d(h)`.
pub fn verify_relation_suite(h: &HessenbergFunction) -> Result<RelationReport> {
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = h.n();
    let mut entries = Vec::new();
    let mut check = |name: String, lhs: &EquivariantClass, rhs: &EquivariantClass| -> Result<()> {
        entries.push(RelationEntry {
            passed: lhs.pointwise_eq(rhs)?,
            name,
        });
        Ok(())
    };

    let x: Vec<EquivariantClass> = (1..=n).map(|i| class_x(n, i)).collect::<Result<_>>()?;
    let t: Vec<EquivariantClass> = (1..=n).map(|k| class_t(n, k)).collect::<Result<_>>()?;
    let sum_classes = |cs: &[EquivariantClass]| -> Result<EquivariantClass> {
        let mut acc = cs[0].clone();
        for c in &cs[1..] {
            acc = acc.add(c)?;
        }
        Ok(acc)
    };

    check("sum x_i = sum t_k".to_string(), &sum_classes(&x)?, &sum_classes(&t)?)?;

    for j in bottom_set(h) {
        let ys: Vec<EquivariantClass> = (1..=n).map(|k| class_y(h, j, k)).collect::<Result<_>>()?;
        let mut rhs = sum_classes(&x[..j])?;
        rhs = rhs.add(&x[j].scale(-(j as i64)))?;
        check(format!("degree-1 y sum at j={j}"), &sum_classes(&ys)?, &rhs)?;
    }

    for j in 1..=n {
        let ys: Vec<EquivariantClass> = (1..=n).map(|k| class_y(h, j, k)).collect::<Result<_>>()?;
        let degree = (h.value(j) - j) as u32;
        let mut rhs_terms = Vec::new();
        for i in 1..=j {
            let mut prod = EquivariantClass::from_fn(n, 0, {
                let n = n;
                move |_| Polynomial::constant(n, 1)
            })?;
            for l in (j + 1)..=h.value(j) {
                prod = prod.mul(&x[i - 1].sub(&x[l - 1])?)?;
            }
            rhs_terms.push(prod);
        }
        let rhs = sum_classes(&rhs_terms)?;
        debug_assert_eq!(rhs.degree(), degree);
        check(format!("general y sum at j={j}"), &sum_classes(&ys)?, &rhs)?;
    }

    for j in l_set(h) {
        let taus: Vec<EquivariantClass> = subsets_of_size(n, j)
            .iter()
            .map(|a| class_tau(h, a))
            .collect::<Result<_>>()?;
        let rhs = x[j - 1].sub(&x[j])?;
        check(format!("tau sum at j={j}"), &sum_classes(&taus)?, &rhs)?;
    }

    let bottom = bottom_set(h);
    let l = l_set(h);
    let m = bottom.last().copied().unwrap_or(0);
    for j in (m + 1)..n {
        if !l.contains(&j) {
            return Err(Error::PreconditionUnmet {
                hypothesis: format!(
                    "every index in ({m}, {}] must lie in the L-set; {j} does not",
                    n - 1
                ),
            });
        }
    }
    for k in 1..=n {
        let mut terms: Vec<EquivariantClass> = Vec::new();
        if m > 0 {
            terms.push(class_y(h, m, k)?);
        }
        for j in (m + 1)..n {
            for a in subsets_of_size(n, j) {
                if a.contains(&k) {
                    terms.push(class_tau(h, &a)?);
                }
            }
        }
        let lhs = if terms.is_empty() {
            // Can only happen for n = 1 where the identity is 0 = 0.
            EquivariantClass::from_fn(n, 1, move |_| Polynomial::zero(n))?
        } else {
            sum_classes(&terms)?
        };
        let rhs = t[k - 1].sub(&x[n - 1])?;
        check(format!("telescoping at k={k}"), &lhs, &rhs)?;
    }

    for d in 1..n {
        if !(1..=n - d).all(|j| h.value(j) >= j + d) {
            continue;
        }
        for j in lambda_set_strict(h, d) {
            for k in 1..=n {
                let lhs = class_y(h, j, k)?.add(&class_y_star(h, j + 1 + d, k)?)?;
                let mut rhs = EquivariantClass::from_fn(n, 0, move |_| Polynomial::constant(n, 1))?;
                for l in (j + 1)..=(j + d) {
                    rhs = rhs.mul(&t[k - 1].sub(&x[l - 1])?)?;
                }
                check(format!("y plus y-star at d={d}, j={j}, k={k}"), &lhs, &rhs)?;
            }
        }
    }

    Ok(RelationReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_hessenberg;
    use crate::gkm::build_graph;

    fn h(values: &[usize]) -> HessenbergFunction {
        HessenbergFunction::from_values(values.to_vec()).unwrap()
    }

    fn w(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    fn poly(n: usize, text: &str) -> Polynomial {
        crate::symbolic::parse_polynomial(n, text).unwrap()
    }

    #[test]
    fn coordinate_class_values() {
        let x1 = class_x(3, 1).unwrap();
        assert_eq!(x1.eval(&w("312")), poly(3, "t3"));
        assert_eq!(x1.eval(&w("123")), poly(3, "t1"));
        assert!(class_x(3, 4).is_err());
    }

    #[test]
    fn y_class_values() {
        let f = h(&[2, 3, 3]);
        let y13 = class_y(&f, 1, 3).unwrap();
        assert_eq!(y13.degree(), 1);
        assert_eq!(y13.eval(&w("312")), poly(3, "t3-t1"));
        assert_eq!(y13.eval(&w("123")), Polynomial::zero(3));

        // Degree-2 specimen: h(1) = 3 gives a two-factor product.
        let g = h(&[3, 3, 4, 5, 5]);
        let y15 = class_y(&g, 1, 5).unwrap();
        assert_eq!(y15.degree(), 2);
        let at = w("51234");
        assert_eq!(
            y15.eval(&at),
            poly(5, "t5-t1").mul(&poly(5, "t5-t2")).unwrap()
        );
        assert_eq!(y15.eval(&w("15234")), Polynomial::zero(5));

        // j = n gives the constant indicator 1 in degree 0.
        let yn = class_y(&f, 3, 2).unwrap();
        assert_eq!(yn.degree(), 0);
        assert_eq!(yn.eval(&w("213")), Polynomial::constant(3, 1));
    }

    #[test]
    fn tau_class_values() {
        let f = h(&[2, 3, 3]);
        let tau2 = class_tau(&f, &[2]).unwrap();
        assert_eq!(tau2.eval(&w("213")), poly(3, "t2-t1"));
        assert_eq!(tau2.eval(&w("123")), Polynomial::zero(3));

        let tau13 = class_tau(&f, &[1, 3]).unwrap();
        assert_eq!(tau13.eval(&w("132")), poly(3, "t3-t2"));
        assert_eq!(tau13.eval(&w("312")), poly(3, "t1-t2"));
        assert_eq!(tau13.eval(&w("123")), Polynomial::zero(3));

        // |A| must lie in the L-set.
        let g = h(&[3, 3, 4, 5, 5]);
        assert_eq!(
            class_tau(&g, &[1, 2]).unwrap_err(),
            Error::InvalidCardinality { cardinality: 2 }
        );
        assert!(class_tau(&g, &[1, 2, 3]).is_ok());
    }

    #[test]
    fn y_star_class_values() {
        let g = h(&[3, 3, 4, 5, 5]);
        // h*(4) = 3, so the product runs over positions 3..=3.
        let ys = class_y_star(&g, 4, 2).unwrap();
        assert_eq!(ys.degree(), 1);
        assert_eq!(ys.eval(&w("13425")), poly(5, "t2-t4"));
        assert_eq!(ys.eval(&w("12345")), Polynomial::zero(5));
        assert!(class_y_star(&g, 1, 2).is_err());

        // Mirrored degree check: i - h*(i) over all valid i.
        for i in 2..=5 {
            let expect = (i - dual_value(&g, i).unwrap()) as u32;
            assert_eq!(class_y_star(&g, i, 1).unwrap().degree(), expect);
        }
    }

    #[test]
    fn all_generating_classes_are_admissible_up_to_n4() {
        for n in 2..=4 {
            for f in enumerate_hessenberg(n) {
                let graph = build_graph(&f).unwrap();
                for i in 1..=n {
                    assert!(class_x(n, i).unwrap().is_gkm(&graph).unwrap());
                    assert!(class_t(n, i).unwrap().is_gkm(&graph).unwrap());
                }
                for j in 1..=n {
                    for k in 1..=n {
                        assert!(
                            class_y(&f, j, k).unwrap().is_gkm(&graph).unwrap(),
                            "y_({j},{k}) on h = {f}"
                        );
                    }
                }
                for i in 2..=n {
                    for k in 1..=n {
                        assert!(
                            class_y_star(&f, i, k).unwrap().is_gkm(&graph).unwrap(),
                            "y*_({i},{k}) on h = {f}"
                        );
                    }
                }
                for j in l_set(&f) {
                    for a in subsets_of_size(n, j) {
                        assert!(
                            class_tau(&f, &a).unwrap().is_gkm(&graph).unwrap(),
                            "tau_{a:?} on h = {f}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dot_action_permutes_the_class_families() {
        let f = h(&[2, 3, 3]);
        let n = 3;
        for sigma in combinatorics::enumerate_group(n).unwrap() {
            for i in 1..=n {
                let xi = class_x(n, i).unwrap();
                assert!(dot_act(&sigma, &xi).unwrap().pointwise_eq(&xi).unwrap());
            }
            for j in 1..=n {
                for k in 1..=n {
                    let moved = dot_act(&sigma, &class_y(&f, j, k).unwrap()).unwrap();
                    let expected = class_y(&f, j, sigma.apply(k)).unwrap();
                    assert!(moved.pointwise_eq(&expected).unwrap(), "sigma={sigma}, j={j}, k={k}");
                }
            }
            for j in l_set(&f) {
                for a in subsets_of_size(n, j) {
                    let moved = dot_act(&sigma, &class_tau(&f, &a).unwrap()).unwrap();
                    let image: Vec<usize> = a.iter().map(|&p| sigma.apply(p)).collect();
                    let expected = class_tau(&f, &image).unwrap();
                    assert!(moved.pointwise_eq(&expected).unwrap(), "sigma={sigma}, A={a:?}");
                }
            }
        }
    }

    #[test]
    fn dot_action_composes_and_preserves_admissibility() {
        let f = h(&[2, 3, 3]);
        let graph = build_graph(&f).unwrap();
        let y = class_y(&f, 1, 2).unwrap();
        let group = combinatorics::enumerate_group(3).unwrap();
        for s in &group {
            assert!(dot_act(s, &y).unwrap().is_gkm(&graph).unwrap());
            for t in &group {
                let twice = dot_act(s, &dot_act(t, &y).unwrap()).unwrap();
                let once = dot_act(&s.compose(t).unwrap(), &y).unwrap();
                assert!(twice.pointwise_eq(&once).unwrap());
            }
        }
    }

    #[test]
    fn relation_suite_passes_for_connected_h_up_to_n4() {
        for n in 1..=4 {
            for f in enumerate_hessenberg(n) {
                if !f.is_connected() {
                    assert!(verify_relation_suite(&f).is_err());
                    continue;
                }
                let report = verify_relation_suite(&f).unwrap();
                for entry in &report.entries {
                    assert!(entry.passed, "h = {f}: {}", entry.name);
                }
            }
        }
    }

    #[test]
    fn telescoping_identity_shape_for_small_example() {
        // For h = (2,3,3) the bottom set is empty (m = 0), so the identity
        // reads: sum of tau_A over A containing k, 0 < |A| <= 2, equals
        // t_k - x_3.
        let f = h(&[2, 3, 3]);
        let report = verify_relation_suite(&f).unwrap();
        let telescoping: Vec<_> = report
            .entries
            .iter()
            .filter(|e| e.name.starts_with("telescoping"))
            .collect();
        assert_eq!(telescoping.len(), 3);
        assert!(telescoping.iter().all(|e| e.passed));
    }

    #[test]
    fn class_arithmetic_checks_shapes() {
        let a = class_x(3, 1).unwrap();
        let b = class_x(4, 1).unwrap();
        assert!(a.add(&b).is_err());
        let t = class_t(3, 1).unwrap();
        let product = a.mul(&t).unwrap();
        assert_eq!(product.degree(), 2);
        assert!(a.add(&product).is_err());
    }

    #[test]
    fn lazy_storage_above_the_dense_limit() {
        let x1 = class_x(7, 1).unwrap();
        assert_eq!(format!("{x1:?}"), "EquivariantClass(n=7, degree=1, lazy)");
        let id = Permutation::identity(7);
        assert_eq!(x1.eval(&id), Polynomial::var(7, 1).unwrap());
        let f = HessenbergFunction::from_values(vec![3, 3, 4, 5, 6, 7, 7]).unwrap();
        let y = class_y(&f, 1, 4).unwrap();
        assert_eq!(y.degree(), 2);
        let at: Permutation = "4123567".parse().unwrap();
        assert_eq!(
            y.eval(&at),
            poly(7, "t4-t1").mul(&poly(7, "t4-t2")).unwrap()
        );
    }
}
