//! Dense univariate polynomials with exact coefficients.
//!
//! Everything here is exact: integer polynomials carry `BigInt`
//! coefficients, rational ones `BigRational`. Real roots are counted with
//! Sturm sequences over the rationals, never by floating point search.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients; `coeffs[i]` is
/// the coefficient of `x^i`. Trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Polynomial with reduced rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(coeffs: &mut Vec<T>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(1 + x)^k`
    pub fn one_plus_x_pow(k: usize) -> Self {
        Self::new((0..=k as u64).map(|i| binomial(k as u64, i)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `f(c x)`
    pub fn scale_argument(&self, c: &BigInt) -> Self {
        let mut power = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Self::new(out)
    }

    pub fn to_rat(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Coefficients as `i64`, for reports. Panics on overflow, which cannot
    /// happen within the size guards.
    pub fn to_i64s(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| i64::try_from(c).expect("coefficient exceeds i64"))
            .collect()
    }

    /// `x^n f(1/x) == f` with `n` supplied explicitly; trailing zero
    /// coefficients up to `n` count.
    pub fn is_palindromic_at(&self, n: usize) -> bool {
        if self.degree().is_some_and(|d| d > n) {
            return false;
        }
        (0..=n).all(|i| self.coeff(i) == self.coeff(n - i))
    }
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, m: i64) -> BigRational {
        self.eval(&BigRational::from_integer(m.into()))
    }

    /// The integer polynomial with the same coefficients, if every
    /// denominator is one.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
            rem.pop();
            trim(&mut rem);
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

macro_rules! impl_ring_ops {
    ($ty:ident, $zero:expr) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let len = self.coeffs.len().max(rhs.coeffs.len());
                $ty::new(
                    (0..len)
                        .map(|i| self.coeff(i) + rhs.coeff(i))
                        .collect(),
                )
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let len = self.coeffs.len().max(rhs.coeffs.len());
                $ty::new(
                    (0..len)
                        .map(|i| self.coeff(i) - rhs.coeff(i))
                        .collect(),
                )
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                if self.is_zero() || rhs.is_zero() {
                    return $ty::new(Vec::new());
                }
                let mut out = vec![$zero; self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                $ty::new(out)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(self.coeffs.iter().map(|c| -c).collect())
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
    };
}

impl_ring_ops!(IntPolynomial, BigInt::zero());
impl_ring_ops!(RatPolynomial, BigRational::zero());

fn write_terms<T: fmt::Display + Signed>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let unit = abs.is_one();
        match i {
            0 => write!(f, "{abs}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{abs}{var}")?,
            _ if unit => write!(f, "{var}^{i}")?,
            _ => write!(f, "{abs}{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "m")
    }
}

/// Shape flags of a polynomial with real coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyProperties {
    pub palindromic: bool,
    pub unimodal: bool,
    pub log_concave: bool,
    pub gamma_positive: bool,
    pub real_root_count: usize,
}

/// Newton interpolation through `(nodes[i], values[i])`.
pub fn interpolate_at(nodes: &[i64], values: &[BigRational]) -> RatPolynomial {
    assert_eq!(nodes.len(), values.len(), "one value per node");
    let mut table: Vec<BigRational> = values.to_vec();
    let k = nodes.len();
    // divided differences in place
    for level in 1..k {
        for i in (level..k).rev() {
            let denom = BigRational::from_integer((nodes[i] - nodes[i - level]).into());
            table[i] = (&table[i] - &table[i - 1]) / denom;
        }
    }
    let mut poly = RatPolynomial::new(Vec::new());
    let mut basis = RatPolynomial::from_i64s(&[1]);
    for (i, c) in table.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        basis = &basis * &RatPolynomial::from_i64s(&[-nodes[i], 1]);
    }
    poly
}

/// The unique polynomial of degree at most `d` through `(m, values[m])` for
/// `m = 0..=d`.
pub fn interpolate(values: &[BigInt]) -> RatPolynomial {
    let nodes: Vec<i64> = (0..values.len() as i64).collect();
    let values: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    interpolate_at(&nodes, &values)
}

/// h*-coefficients from `L(0), ..., L(n)`:
/// `h*_j = sum_{i=0..=j} (-1)^i C(n+1, i) L(j - i)`.
pub fn hstar_from_counts(l_values: &[BigInt], n: usize) -> Result<IntPolynomial> {
    assert_eq!(l_values.len(), n + 1, "need L(0), ..., L(n)");
    let mut h = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for i in 0..=j {
            let term = binomial(n as u64 + 1, i as u64) * &l_values[j - i];
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(Error::NegativeHStar {
                index: j,
                value: acc.to_string(),
            });
        }
        h.push(acc);
    }
    Ok(IntPolynomial::new(h))
}

/// Same as [`hstar_from_counts`], sampling an interpolated Ehrhart
/// polynomial at `0..=n`. Non-integral samples are reported.
pub fn hstar_from_polynomial(l: &RatPolynomial, n: usize) -> Result<IntPolynomial> {
    let mut values = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let v = l.eval_int(m as i64);
        if !v.is_integer() {
            return Err(Error::NonInteger {
                index: m,
                value: v.to_string(),
            });
        }
        values.push(v.to_integer());
    }
    hstar_from_counts(&values, n)
}

/// Coefficients `0..terms` of `h(x) / (1 - x)^(n+1)`.
pub fn series_from_hstar(h: &IntPolynomial, n: usize, terms: usize) -> Vec<BigInt> {
    (0..terms)
        .map(|m| {
            (0..=m)
                .map(|j| h.coeff(j) * binomial((m - j + n) as u64, n as u64))
                .sum()
        })
        .collect()
}

/// `gamma_0, ..., gamma_{n/2}` with `h = sum gamma_i x^i (1+x)^(n-2i)`.
pub fn gamma_expansion(h: &IntPolynomial, n: usize) -> Result<Vec<BigInt>> {
    if !h.is_palindromic_at(n) {
        return Err(Error::NotPalindromic { degree: n });
    }
    let mut rest = h.clone();
    let mut gamma = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let g = rest.coeff(i);
        let basis = &IntPolynomial::monomial(g.clone(), i) * &IntPolynomial::one_plus_x_pow(n - 2 * i);
        rest = &rest - &basis;
        gamma.push(g);
    }
    debug_assert!(rest.is_zero(), "palindromic input must expand exactly");
    if !rest.is_zero() {
        return Err(Error::NotPalindromic { degree: n });
    }
    Ok(gamma)
}

/// `sum gamma_i x^i (1+x)^(n-2i)`
pub fn gamma_reconstruct(gamma: &[BigInt], n: usize) -> IntPolynomial {
    gamma.iter().enumerate().fold(IntPolynomial::zero(), |acc, (i, g)| {
        &acc + &(&IntPolynomial::monomial(g.clone(), i) * &IntPolynomial::one_plus_x_pow(n - 2 * i))
    })
}

fn sign_changes(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots via a Sturm sequence.
pub fn distinct_real_roots(f: &RatPolynomial) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let at_pos_inf = seq.iter().map(|p| sign(p.leading().unwrap()));
    let at_neg_inf = seq.iter().map(|p| {
        let s = sign(p.leading().unwrap());
        if p.degree().unwrap() % 2 == 1 {
            -s
        } else {
            s
        }
    });
    sign_changes(at_neg_inf) - sign_changes(at_pos_inf)
}

/// Real roots counted with multiplicity, from the chain
/// `f, gcd(f, f'), gcd(g, g'), ...`.
pub fn real_root_count(f: &IntPolynomial) -> usize {
    let mut g = f.to_rat();
    let mut total = 0;
    while g.degree().unwrap_or(0) > 0 {
        total += distinct_real_roots(&g);
        g = g.gcd(&g.derivative());
    }
    total
}

pub fn is_unimodal(coeffs: &[BigInt]) -> bool {
    let mut i = 0;
    while i + 1 < coeffs.len() && coeffs[i] <= coeffs[i + 1] {
        i += 1;
    }
    while i + 1 < coeffs.len() && coeffs[i] >= coeffs[i + 1] {
        i += 1;
    }
    i + 1 >= coeffs.len()
}

pub fn is_log_concave(coeffs: &[BigInt]) -> bool {
    coeffs
        .windows(3)
        .all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Shape flags of a nonzero polynomial; palindromicity is taken at the
/// stored degree.
pub fn polynomial_properties(f: &IntPolynomial) -> PolyProperties {
    let degree = f.degree().expect("properties of the zero polynomial");
    let palindromic = f.is_palindromic_at(degree);
    let gamma_positive = palindromic
        && gamma_expansion(f, degree)
            .map(|g| g.iter().all(|c| !c.is_negative()))
            .unwrap_or(false);
    PolyProperties {
        palindromic,
        unimodal: is_unimodal(f.coeffs()),
        log_concave: is_log_concave(f.coeffs()),
        gamma_positive,
        real_root_count: real_root_count(f),
    }
}

/// Macaulay pseudopower `N^<k>`: write
/// `N = C(a_k, k) + C(a_{k-1}, k-1) + ... + C(a_j, j)` greedily and shift
/// every binomial up by one.
pub fn pseudopower(mut value: u128, k: u32) -> u128 {
    let mut out = 0u128;
    let mut level = k as u64;
    while value > 0 && level > 0 {
        let mut a = level;
        while binomial(a + 1, level) <= BigInt::from(value) {
            a += 1;
        }
        let c = binomial(a, level);
        value -= u128::try_from(&c).unwrap();
        out += u128::try_from(&binomial(a, level + 1)).unwrap();
        level -= 1;
    }
    out
}

/// True iff `(f_{-1}, f_0, f_1, ...)` is the f-vector of a simplicial
/// complex. A leading entry other than 1 is rejected.
pub fn kruskal_katona_check(f_vector: &[u64]) -> bool {
    match f_vector.first() {
        Some(1) => {}
        _ => return false,
    }
    // f_vector[k] counts faces with k vertices.
    f_vector
        .windows(2)
        .enumerate()
        .skip(1)
        .all(|(k, w)| w[1] as u128 <= pseudopower(w[0] as u128, k as u32))
}

pub(crate) fn lcm_of_denominators(values: &[BigRational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
