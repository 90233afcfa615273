//! Exact arithmetic in `Z[zeta_N]`.
//!
//! Values are integer coefficient vectors of length `phi(N)` in the power
//! basis `1, zeta, ..., zeta^(phi(N)-1)`. Since `Phi_N` is the minimal
//! polynomial of `zeta_N`, two values are equal exactly when their vectors are.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, lowest degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(x^k)`
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor. `None` if the divisor is not monic.
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        if !divisor.is_monic() {
            return None;
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::default(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, p) in divisor.coeffs[..dd].iter().enumerate() {
                if !p.is_zero() {
                    rem[i - dd + j] -= &c * p;
                }
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    distinct_prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// The `n`-th cyclotomic polynomial.
///
/// The squarefree part uses `Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x)` for primes
/// `p` not dividing `m`, each an exact division; the general case then follows
/// from `Phi_n(x) = Phi_rad(n)(x^(n / rad(n)))`.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::InvalidModulus);
    }
    let primes = distinct_prime_factors(n);
    let mut phi = IntPolynomial::from_i64(&[-1, 1]);
    let mut radical = 1u64;
    for &p in &primes {
        let lifted = phi.substitute_power(p as usize);
        let (q, r) = lifted.div_rem_monic(&phi).expect("cyclotomic polynomials are monic");
        debug_assert!(r.is_zero());
        phi = q;
        radical *= p;
    }
    Ok(phi.substitute_power((n / radical) as usize))
}

/// Coefficient vector, kept in machine words whenever every entry fits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum ExactKey {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl ExactKey {
    fn from_big(coeffs: Vec<BigInt>) -> Self {
        let small: Option<Vec<i64>> = coeffs.iter().map(|c| c.to_i64()).collect();
        match small {
            Some(v) => ExactKey::Small(v),
            None => ExactKey::Big(coeffs),
        }
    }

    pub(crate) fn into_value(self, modulus: u64) -> CyclotomicInteger {
        let coeffs = match self {
            ExactKey::Small(v) => v.into_iter().map(BigInt::from).collect(),
            ExactKey::Big(v) => v,
        };
        CyclotomicInteger { modulus, coeffs }
    }
}

/// Arithmetic context for a fixed modulus `N`: caches `Phi_N`.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    modulus: u64,
    phi: IntPolynomial,
    degree: usize,
    // non-leading terms of Phi_N as (power, coefficient)
    tail_big: Vec<(usize, BigInt)>,
    tail_small: Option<Vec<(usize, i64)>>,
}

impl CyclotomicRing {
    pub fn new(modulus: u64) -> Result<Self> {
        let phi = cyclotomic_polynomial(modulus)?;
        let degree = phi.degree().expect("nonzero");
        let tail_big: Vec<(usize, BigInt)> = phi.coeffs()[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect();
        let tail_small = tail_big.iter().map(|(j, c)| c.to_i64().map(|c| (*j, c))).collect();
        Ok(Self { modulus, phi, degree, tail_big, tail_small })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `phi(N)`, the length of every coefficient vector.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.phi
    }

    pub fn zero(&self) -> CyclotomicInteger {
        CyclotomicInteger { modulus: self.modulus, coeffs: vec![BigInt::zero(); self.degree] }
    }

    pub fn integer(&self, value: impl Into<BigInt>) -> CyclotomicInteger {
        let mut z = self.zero();
        z.coeffs[0] = value.into();
        z
    }

    /// `sum_e zeta_N^e` over the multiset of exponents.
    pub fn root_power_sum<I>(&self, exponents: I) -> CyclotomicInteger
    where
        I: IntoIterator<Item = u64>,
    {
        let n = self.modulus;
        let mut counts = vec![0i64; n as usize];
        for e in exponents {
            counts[(e % n) as usize] += 1;
        }
        self.reduce_counts(counts).into_value(n)
    }

    /// Reduce a length-`N` exponent count vector modulo `Phi_N`.
    pub(crate) fn reduce_counts(&self, counts: Vec<i64>) -> ExactKey {
        if let Some(tail) = &self.tail_small {
            let mut work = counts.clone();
            if Self::reduce_in_place_small(&mut work, self.degree, tail) {
                work.truncate(self.degree);
                work.resize(self.degree, 0);
                return ExactKey::Small(work);
            }
        }
        let big: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
        ExactKey::from_big(self.reduce_big(big))
    }

    // false on i64 overflow; `counts` is then garbage and the caller must restart
    fn reduce_in_place_small(counts: &mut [i64], degree: usize, tail: &[(usize, i64)]) -> bool {
        for i in (degree..counts.len()).rev() {
            let c = counts[i];
            if c == 0 {
                continue;
            }
            counts[i] = 0;
            for &(j, p) in tail {
                let slot = &mut counts[i - degree + j];
                match c.checked_mul(p).and_then(|d| slot.checked_sub(d)) {
                    Some(v) => *slot = v,
                    None => return false,
                }
            }
        }
        true
    }

    fn reduce_big(&self, mut counts: Vec<BigInt>) -> Vec<BigInt> {
        for i in (self.degree..counts.len()).rev() {
            let c = std::mem::take(&mut counts[i]);
            if c.is_zero() {
                continue;
            }
            for (j, p) in &self.tail_big {
                counts[i - self.degree + j] -= &c * p;
            }
        }
        counts.truncate(self.degree);
        counts.resize(self.degree, BigInt::zero());
        counts
    }

    /// Image of `x` under `zeta_N -> zeta_N^t`.
    pub fn galois(&self, t: u64, x: &CyclotomicInteger) -> Result<CyclotomicInteger> {
        self.check(x)?;
        let n = self.modulus;
        if t.gcd(&n) != 1 {
            return Err(Error::NotCoprime { t, modulus: n });
        }
        let mut acc = vec![BigInt::zero(); n as usize];
        for (i, c) in x.coeffs.iter().enumerate() {
            let idx = (i as u128 * t as u128 % n as u128) as usize;
            acc[idx] += c;
        }
        Ok(CyclotomicInteger { modulus: n, coeffs: self.reduce_big(acc) })
    }

    /// `x` in `Z[zeta_d]` with `d | N`, re-expressed in `Z[zeta_N]` via `e -> e N/d`.
    pub fn lift(&self, x: &CyclotomicInteger) -> Result<CyclotomicInteger> {
        let d = x.modulus;
        if !self.modulus.is_multiple_of(d) {
            return Err(Error::NotAMultiple { from: d, modulus: self.modulus });
        }
        let scale = (self.modulus / d) as usize;
        let mut acc = vec![BigInt::zero(); self.modulus as usize];
        for (i, c) in x.coeffs.iter().enumerate() {
            acc[i * scale] += c;
        }
        Ok(CyclotomicInteger { modulus: self.modulus, coeffs: self.reduce_big(acc) })
    }

    fn check(&self, x: &CyclotomicInteger) -> Result<()> {
        if x.modulus != self.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: x.modulus });
        }
        Ok(())
    }
}

/// `sum_e zeta_N^e` reduced modulo `Phi_N`.
pub fn root_power_sum<I>(modulus: u64, exponents: I) -> Result<CyclotomicInteger>
where
    I: IntoIterator<Item = u64>,
{
    Ok(CyclotomicRing::new(modulus)?.root_power_sum(exponents))
}

/// An element of `Z[zeta_N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicInteger {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { modulus: self.modulus, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Exact equality; fails when the moduli differ (lift first).
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        self.same_modulus(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn galois(&self, t: u64) -> Result<Self> {
        CyclotomicRing::new(self.modulus)?.galois(t, self)
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conjugate(&self) -> Self {
        let t = if self.modulus <= 2 { 1 } else { self.modulus - 1 };
        self.galois(t).expect("N - 1 is a unit")
    }

    pub fn lift_to(&self, modulus: u64) -> Result<Self> {
        CyclotomicRing::new(modulus)?.lift(self)
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let angle = std::f64::consts::TAU * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl std::ops::Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        -&self
    }
}

impl fmt::Display for CyclotomicInteger {
    /// Power-basis form such as `1 + 2z^3 - z^5`, where `z = zeta_N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{magnitude}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{magnitude}z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
