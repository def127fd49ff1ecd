//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Variables are `t1, ..., tn`; the ambient count `n` is part of every
//! polynomial. Term order is graded lexicographic (total degree first, then
//! `t1` strongest), and the printed normal form lists terms in descending
//! order, e.g. `t1^2 - 2*t1*t2 + t2^2`. Also provides the single-variable
//! `q`-polynomials used for Poincaré series, over plain machine integers
//! since their coefficients are bounded by n!.

use crate::combinatorics::Permutation;
use crate::error::{Error, Result};
use num::bigint::Sign;
use num::{BigInt, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(i: usize) -> Self {
        Monomial {
            factors: vec![(i, 1)],
        }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.factors
            .iter()
            .find(|&&(v, _)| v == var)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<usize, u32> = BTreeMap::new();
        for &(v, e) in self.factors.iter().chain(other.factors.iter()) {
            *merged.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: merged.into_iter().collect(),
        }
    }

    /// Replaces `t_a` by `t_b` (no-op when `a = b`).
    fn substitute(&self, a: usize, b: usize) -> Monomial {
        if a == b || self.exponent(a) == 0 {
            return self.clone();
        }
        let mut merged: BTreeMap<usize, u32> = BTreeMap::new();
        for &(v, e) in &self.factors {
            let target = if v == a { b } else { v };
            *merged.entry(target).or_insert(0) += e;
        }
        Monomial {
            factors: merged.into_iter().collect(),
        }
    }

    /// Renames `t_i` to `t_{sigma(i)}`.
    fn permute(&self, sigma: &Permutation) -> Monomial {
        let mut factors: Vec<(usize, u32)> = self
            .factors
            .iter()
            .map(|&(v, e)| (sigma.apply(v), e))
            .collect();
        factors.sort_unstable();
        Monomial { factors }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: higher total degree is greater; among equal
    /// degrees the first variable (lowest index) with a larger exponent wins.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors.iter().peekable();
        let mut b = other.factors.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        // `self` uses an earlier variable that `other` lacks.
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `t1..tn` with `BigInt` coefficients.
///
/// Zero coefficients are never stored, so equality is term-map equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { n, terms }
    }

    /// The variable `t_i`.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(i), BigInt::one());
        Ok(Polynomial { n, terms })
    }

    /// The linear form `t_a - t_b`.
    pub fn var_difference(n: usize, a: usize, b: usize) -> Result<Self> {
        Polynomial::var(n, a)?.sub(&Polynomial::var(n, b)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// True when every term has total degree `d` (vacuously for zero).
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn check_size(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_size(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial { n: self.n, terms })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_size(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Polynomial { n: self.n, terms })
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Polynomial {
        let c = c.into();
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * &c)).collect(),
        }
    }

    /// Replaces every occurrence of `t_a` by `t_b`.
    pub fn substitute(&self, a: usize, b: usize) -> Result<Polynomial> {
        for i in [a, b] {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: self.n,
                });
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_term(&mut terms, m.substitute(a, b), c.clone());
        }
        Ok(Polynomial { n: self.n, terms })
    }

    /// Whether `t_a - t_b` divides this polynomial; decided by checking that
    /// the substitution `t_a -> t_b` annihilates it.
    pub fn divisible_by_linear(&self, a: usize, b: usize) -> Result<bool> {
        if a == b {
            return Err(Error::PreconditionUnmet {
                hypothesis: "divisor t_a - t_b needs a != b".to_string(),
            });
        }
        Ok(self.substitute(a, b)?.is_zero())
    }

    /// Applies `t_i -> t_{sigma(i)}` to every term.
    pub fn permute_variables(&self, sigma: &Permutation) -> Result<Polynomial> {
        if sigma.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: sigma.n(),
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_term(&mut terms, m.permute(sigma), c.clone());
        }
        Ok(Polynomial { n: self.n, terms })
    }

    /// The canonical form without spaces, used inside JSON documents.
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }

    fn render(&self, spaced: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.sign() == Sign::Minus;
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if spaced {
                out.push_str(if negative { " - " } else { " + " });
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let mag = c.abs();
            let mono = render_monomial(m);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|&(v, e)| {
            if e == 1 {
                format!("t{v}")
            } else {
                format!("t{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(true))
    }
}

/// Parses the printed normal form back into a polynomial (spaced or compact).
pub fn parse_polynomial(n: usize, text: &str) -> Result<Polynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            message: "empty polynomial text".to_string(),
        });
    }
    let bad = |message: String| Error::Parse { message };
    let mut result = Polynomial::zero(n);
    let bytes: Vec<char> = compact.chars().collect();
    let mut pos = 0usize;
    while pos < bytes.len() {
        let mut sign = BigInt::one();
        while pos < bytes.len() && (bytes[pos] == '+' || bytes[pos] == '-') {
            if bytes[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        if pos >= bytes.len() {
            return Err(bad("dangling sign".to_string()));
        }
        let mut coeff: Option<BigInt> = None;
        if bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = bytes[start..pos].iter().collect();
            coeff = Some(digits.parse().unwrap());
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
            }
        }
        let mut mono = Monomial::one();
        while pos < bytes.len() && bytes[pos] == 't' {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("variable without index".to_string()));
            }
            let var: usize = bytes[start..pos].iter().collect::<String>().parse().unwrap();
            if var == 0 || var > n {
                return Err(bad(format!("variable t{var} outside t1..t{n}")));
            }
            let mut exp = 1u32;
            if pos < bytes.len() && bytes[pos] == '^' {
                pos += 1;
                let estart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if estart == pos {
                    return Err(bad("caret without exponent".to_string()));
                }
                exp = bytes[estart..pos].iter().collect::<String>().parse().unwrap();
            }
            let mut factor = Monomial::one();
            factor.factors.push((var, exp));
            mono = mono.mul(&factor);
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != 't' {
                    return Err(bad("dangling '*'".to_string()));
                }
            }
        }
        let Some(coeff) = coeff.or_else(|| (!mono.factors.is_empty()).then(BigInt::one)) else {
            return Err(bad("term with neither coefficient nor variables".to_string()));
        };
        Polynomial::insert_term(&mut result.terms, mono, sign * coeff);
        if pos < bytes.len() && bytes[pos] != '+' && bytes[pos] != '-' {
            return Err(bad(format!("unexpected character {:?}", bytes[pos])));
        }
    }
    Ok(result)
}

/// A polynomial in the single grading variable `q` with machine-integer
/// coefficients (Betti numbers never exceed n!). Trailing zeros are trimmed
/// so equality is coefficient-list equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    coeffs: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        PoincarePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PoincarePolynomial { coeffs: vec![1] }
    }

    pub fn coefficient(&self, r: usize) -> u64 {
        self.coeffs.get(r).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree of the top term, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn sum(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &PoincarePolynomial) -> PoincarePolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|r| self.coefficient(r) + other.coefficient(r))
            .collect();
        PoincarePolynomial::new(coeffs)
    }

    pub fn mul(&self, other: &PoincarePolynomial) -> PoincarePolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return PoincarePolynomial::zero();
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PoincarePolynomial::new(coeffs)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> PoincarePolynomial {
        if self.coeffs.is_empty() {
            return PoincarePolynomial::zero();
        }
        let mut coeffs = vec![0u64; k];
        coeffs.extend_from_slice(&self.coeffs);
        PoincarePolynomial::new(coeffs)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|r| c[r] == c[c.len() - 1 - r])
    }

    /// The full-flag series `prod_{i=1}^{n} (1 + q + ... + q^{i-1})`,
    /// computed by exact polynomial multiplication.
    pub fn flag(n: usize) -> PoincarePolynomial {
        let mut acc = PoincarePolynomial::one();
        for i in 1..=n {
            acc = acc.mul(&PoincarePolynomial::new(vec![1; i]));
        }
        acc
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (r, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, c) => write!(f, "{c}q")?,
                (r, 1) => write!(f, "q^{r}")?,
                (r, c) => write!(f, "{c}q^{r}")?,
            }
        }
        Ok(())
    }
}
