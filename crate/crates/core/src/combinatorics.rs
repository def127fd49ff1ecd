//! Permutations, Hessenberg functions, and the index sets derived from them.
//!
//! Everything downstream (graphs, classes, Betti numbers, presentations) is
//! phrased in terms of the types here. Indices are 1-based in the public
//! vocabulary: `w.apply(1)` is the image of 1, `h.value(1)` is the first
//! entry, and `h.value(0)` is defined to be 1 so that boundary formulas can
//! be written without case splits.

use crate::error::{Error, Result};
use std::collections::HashSet;
use std::fmt;

/// Default bound on n for full symmetric-group enumerations.
pub const DEFAULT_CAP: usize = 8;

/// A permutation of `[n]` in one-line notation.
///
/// `images[i-1]` is the image of `i`. Comparison order is lexicographic on
/// the one-line word, which is also the enumeration order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its one-line images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        let mut seen = vec![false; n + 1];
        for (pos, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::OutOfRange { position: pos + 1 });
            }
            if seen[v] {
                return Err(Error::NotABijection { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition exchanging `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > n {
            return Err(Error::IndexOutOfRange { index: a, bound: n });
        }
        if b == 0 || b > n {
            return Err(Error::IndexOutOfRange { index: b, bound: n });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// The image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let images = (1..=self.n()).map(|i| self.apply(other.apply(i))).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for i in 1..=self.n() {
            images[self.apply(i) - 1] = i;
        }
        Permutation { images }
    }

    /// Right multiplication by the transposition of positions/values `a, b`:
    /// the result `v` satisfies `v(a) = self(b)`, `v(b) = self(a)` and agrees
    /// with `self` elsewhere.
    pub fn swap_right(&self, a: usize, b: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    /// Lexicographic rank within `S_n` (0-based), via the Lehmer code.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0usize;
        let mut fact = 1usize;
        let mut suffix_fact = vec![1usize; n];
        for i in 1..n {
            fact *= i;
            suffix_fact[i] = fact;
        }
        for i in 0..n {
            let smaller_later = (i + 1..n)
                .filter(|&j| self.images[j] < self.images[i])
                .count();
            rank += smaller_later * suffix_fact[n - 1 - i];
        }
        rank
    }

    /// Number of classical inversions: pairs `j < i` with `w(j) > w(i)`.
    pub fn inversions(&self) -> u64 {
        let n = self.n();
        let mut count = 0u64;
        for j in 1..=n {
            for i in (j + 1)..=n {
                if self.apply(j) > self.apply(i) {
                    count += 1;
                }
            }
        }
        count
    }

    fn parse(text: &str) -> Result<Self> {
        let images: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    part.trim().parse::<usize>().map_err(|_| Error::Parse {
                        message: format!("bad permutation entry {part:?}"),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            text.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or(Error::Parse {
                        message: format!("bad permutation digit {c:?}"),
                    })
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            for &v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

/// A Hessenberg function: weakly increasing `h: [n] -> [n]` with `h(j) >= j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HessenbergFunction {
    values: Vec<usize>,
}

impl HessenbergFunction {
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        for (idx, &v) in values.iter().enumerate() {
            let j = idx + 1;
            if v < j {
                return Err(Error::BelowDiagonal { position: j });
            }
            if v > n {
                return Err(Error::OutOfRange { position: j });
            }
            if idx > 0 && v < values[idx - 1] {
                return Err(Error::NotWeaklyIncreasing { position: j });
            }
        }
        Ok(HessenbergFunction { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Total accessor: `value(0) = 1` by convention, `value(j) = h(j)` for
    /// `1 <= j <= n`.
    pub fn value(&self, j: usize) -> usize {
        if j == 0 {
            1
        } else {
            self.values[j - 1]
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Whether `h(j) >= j+1` for every `j in [n-1]` — exactly the condition
    /// for the moment graph to be connected.
    pub fn is_connected(&self) -> bool {
        (1..self.n()).all(|j| self.value(j) >= j + 1)
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for HessenbergFunction {
    type Err = Error;

    /// Parses the comma-separated form, e.g. `"3,3,4,5,5"`.
    fn from_str(s: &str) -> Result<Self> {
        let values: Vec<usize> = s
            .split(',')
            .map(|part| {
                part.trim().parse::<usize>().map_err(|_| Error::Parse {
                    message: format!("bad Hessenberg entry {part:?}"),
                })
            })
            .collect::<Result<_>>()?;
        HessenbergFunction::from_values(values)
    }
}

/// The size-(n-1) function obtained by deleting index `j`, written `h^j`.
///
/// Piecewise: for `i < j` the value is `h(i)` when `h(i) < j` and `h(i) - 1`
/// otherwise; for `i >= j` it is `h(i+1) - 1`.
pub fn reduce(h: &HessenbergFunction, j: usize) -> Result<HessenbergFunction> {
    let n = h.n();
    if n < 2 {
        return Err(Error::PreconditionUnmet {
            hypothesis: "reduction needs n >= 2".to_string(),
        });
    }
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, bound: n });
    }
    let mut values = Vec::with_capacity(n - 1);
    for i in 1..n {
        let v = if i < j {
            if h.value(i) < j {
                h.value(i)
            } else {
                h.value(i) - 1
            }
        } else {
            h.value(i + 1) - 1
        };
        values.push(v);
    }
    HessenbergFunction::from_values(values)
}

/// `h*(i) = min { j : h(j) >= i }`, defined for `1 < i <= n`.
pub fn dual_value(h: &HessenbergFunction, i: usize) -> Result<usize> {
    let n = h.n();
    if i <= 1 || i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    // h(n) = n >= i always, so the minimum exists.
    Ok((1..=n).find(|&j| h.value(j) >= i).unwrap())
}

/// The set of `j in [n-1]` with `h(j-1) = h(j) = j+1` (using `h(0) = 1`).
pub fn bottom_set(h: &HessenbergFunction) -> Vec<usize> {
    (1..h.n())
        .filter(|&j| h.value(j - 1) == j + 1 && h.value(j) == j + 1)
        .collect()
}

/// The set of `j in [n-1]` with `h(j-1) = j` and `h(j) = j+1`.
pub fn l_set(h: &HessenbergFunction) -> Vec<usize> {
    (1..h.n())
        .filter(|&j| h.value(j - 1) == j && h.value(j) == j + 1)
        .collect()
}

/// `Λ_d(h) = { j in [n-d] : h(j) = j+d }`.
pub fn lambda_set(h: &HessenbergFunction, d: usize) -> Vec<usize> {
    let n = h.n();
    if d > n {
        return Vec::new();
    }
    (1..=n - d).filter(|&j| h.value(j) == j + d).collect()
}

/// The members `j` of `Λ_d(h)` with `j + d < n`.
///
/// These are the indices that actually index degree-d corrections: they are
/// exactly the ones matched with `Λ*_d(h)` under `j <-> j+1+d`, while the
/// boundary member `j = n-d` (present when `h(n-d) = n`) is not.
pub fn lambda_set_strict(h: &HessenbergFunction, d: usize) -> Vec<usize> {
    lambda_set(h, d)
        .into_iter()
        .filter(|&j| j + d < h.n())
        .collect()
}

/// `Λ*_d(h) = { i : d+2 <= i <= n, h*(i) = i-d }`.
pub fn lambda_star_set(h: &HessenbergFunction, d: usize) -> Vec<usize> {
    let n = h.n();
    if d + 2 > n {
        return Vec::new();
    }
    (d + 2..=n)
        .filter(|&i| dual_value(h, i).expect("i in 2..=n") == i - d)
        .collect()
}

/// Number of pairs `j < i <= h(j)` with `w(j) > w(i)`.
pub fn h_inversions(h: &HessenbergFunction, w: &Permutation) -> Result<u64> {
    if h.n() != w.n() {
        return Err(Error::SizeMismatch {
            left: h.n(),
            right: w.n(),
        });
    }
    let mut count = 0u64;
    for j in 1..=h.n() {
        for i in (j + 1)..=h.value(j) {
            if w.apply(j) > w.apply(i) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// All of `S_n` in lexicographic one-line order, bounded by `cap`.
pub fn enumerate_group_capped(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut result = Vec::with_capacity(factorial(n) as usize);
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        result.push(Permutation {
            images: current.clone(),
        });
        // Standard next-permutation step; stops after the descending word.
        let Some(pivot) = (0..n - 1).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let successor = (pivot + 1..n)
            .rev()
            .find(|&j| current[j] > current[pivot])
            .unwrap();
        current.swap(pivot, successor);
        current[pivot + 1..].reverse();
    }
    Ok(result)
}

/// `enumerate_group_capped` with the default cap of 8.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    enumerate_group_capped(n, DEFAULT_CAP)
}

/// All Hessenberg functions on `[n]`, in lexicographic order of their value
/// sequences (depth-first over weakly increasing choices with `h(j) >= j`).
pub fn enumerate_hessenberg(n: usize) -> Vec<HessenbergFunction> {
    fn extend(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<HessenbergFunction>) {
        let j = prefix.len() + 1;
        if j > n {
            out.push(HessenbergFunction {
                values: prefix.clone(),
            });
            return;
        }
        let lo = j.max(prefix.last().copied().unwrap_or(1));
        for v in lo..=n {
            prefix.push(v);
            extend(n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(n, &mut Vec::new(), &mut out);
    }
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// All k-element subsets of `[n]` as sorted vectors, in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, k: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in start..=n {
            prefix.push(v);
            extend(n, k, v + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        extend(n, k, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// An integer partition: weakly decreasing positive parts.
///
/// Comparison is lexicographic on the parts vector, so sorting descending
/// lists partitions of the same weight from `(n)` down to `(1,...,1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Normalizes any finite multiset of part sizes: sorts descending and
    /// drops zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in descending lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn extend(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            extend(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// Checks that two sorted index sets are disjoint (used in tests and in
/// presentation bookkeeping, where the degree-2 index sets must not overlap).
pub fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let set: HashSet<usize> = a.iter().copied().collect();
    b.iter().all(|x| !set.contains(x))
}
