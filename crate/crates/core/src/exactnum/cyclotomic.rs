use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CONDUCTOR: u64 = 10_000;

thread_local! {
    static MAX_CONDUCTOR: Cell<u64> = const { Cell::new(DEFAULT_MAX_CONDUCTOR) };
}

/// Largest conductor any checked operation on this thread may produce.
pub fn max_conductor() -> u64 {
    MAX_CONDUCTOR.with(Cell::get)
}

/// Sets the cap for the current thread. Groups whose exponent exceeds the cap
/// cannot be constructed; lowering it below the exponent of an existing group
/// makes character evaluation on that group panic.
pub fn set_max_conductor(n: u64) {
    MAX_CONDUCTOR.with(|c| c.set(n.max(1)));
}

fn check_conductor(n: u64) -> Result<()> {
    let max = max_conductor();
    if n == 0 {
        return Err(Error::Parse("conductor must be positive".into()));
    }
    if n > max {
        return Err(Error::ConductorOverflow { requested: n, max });
    }
    Ok(())
}

type PolyCache = Mutex<HashMap<u64, Arc<Vec<i64>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = divide_monic(&num, &div);
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - dn] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[i - dn + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, which is the degree of Φ_n.
#[cfg(test)]
fn totient(n: u64) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Reduces a polynomial in ζ_n modulo Φ_n, returning exactly φ(n) coefficients.
fn reduce(mut poly: Vec<Rational>, n: u64) -> Vec<Rational> {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    for i in (d..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], Rational::zero());
        for (j, &pj) in phi[..d].iter().enumerate() {
            if pj != 0 {
                poly[i - d + j] -= &c * Rational::from_integer(BigInt::from(pj));
            }
        }
    }
    poly.resize(d, Rational::zero());
    poly
}

/// An element of the cyclotomic field Q(ζ_n), stored as its unique
/// coordinate vector in the power basis 1, ζ_n, …, ζ_n^{φ(n)-1}.
///
/// Binary operations promote both operands to the lcm of their conductors.
/// The conductor is never lowered automatically, so equality compares at the
/// common conductor rather than field by field.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// ζ_n^e.
    pub fn root_of_unity(n: u64, e: i64) -> Result<Self> {
        check_conductor(n)?;
        let e = e.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Ok(Cyclotomic { conductor: n, coeffs: reduce(poly, n) })
    }

    /// exp(2πi·t) for a rational number of turns t.
    pub fn from_turn(t: &Rational) -> Result<Self> {
        let n = t
            .denom()
            .to_u64()
            .ok_or_else(|| Error::ConductorOverflow { requested: u64::MAX, max: max_conductor() })?;
        check_conductor(n)?;
        let e = t.numer().mod_floor(&BigInt::from(n)).to_i64().unwrap();
        Self::root_of_unity(n, e)
    }

    /// Σ_e counts[e]·ζ_n^e with exponents taken mod n.
    pub fn from_power_sum(n: u64, counts: &[i64]) -> Result<Self> {
        check_conductor(n)?;
        let mut poly = vec![Rational::zero(); n as usize];
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                poly[e % n as usize] += Rational::from_integer(BigInt::from(c));
            }
        }
        Ok(Cyclotomic { conductor: n, coeffs: reduce(poly, n) })
    }

    /// Builds from explicit (exponent, coefficient) pairs at conductor n.
    pub fn from_terms(n: u64, terms: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        check_conductor(n)?;
        let mut poly = vec![Rational::zero(); n as usize];
        for (e, c) in terms {
            poly[(e % n) as usize] += c;
        }
        Ok(Cyclotomic { conductor: n, coeffs: reduce(poly, n) })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coordinates; the length is φ(conductor).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    /// Rewrites the value at a multiple `n` of the current conductor.
    pub fn promote(&self, n: u64) -> Result<Self> {
        check_conductor(n)?;
        Ok(self.promote_unchecked(n))
    }

    fn promote_unchecked(&self, n: u64) -> Self {
        if n == self.conductor {
            return self.clone();
        }
        assert!(n.is_multiple_of(self.conductor), "conductor {} does not divide {n}", self.conductor);
        let step = (n / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            poly[e * step] = c.clone();
        }
        Cyclotomic { conductor: n, coeffs: reduce(poly, n) }
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        let n = self.conductor.lcm(&other.conductor);
        check_conductor(n)?;
        Ok((self.promote_unchecked(n), other.promote_unchecked(n)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_rational() {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return Ok(out);
        }
        if self.is_rational() {
            return other.checked_add(self);
        }
        let (mut a, b) = self.common(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r));
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r));
        }
        let (a, b) = self.common(other)?;
        let d = a.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Ok(Cyclotomic { conductor: a.conductor, coeffs: reduce(poly, a.conductor) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Image under ζ_n ↦ ζ_n^{-1}, i.e. complex conjugation.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut poly = vec![Rational::zero(); n];
        for (e, c) in self.coeffs.iter().enumerate() {
            poly[(n - e) % n] += c;
        }
        Cyclotomic { conductor: self.conductor, coeffs: reduce(poly, self.conductor) }
    }

    /// Floating-point value under ζ_n = exp(2πi/n).
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let angle = std::f64::consts::TAU * e as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }

    /// Non-zero (exponent, coefficient) pairs in the power basis.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u64, c))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let n = self.conductor.lcm(&other.conductor);
        self.promote_unchecked(n).coeffs == other.promote_unchecked(n).coeffs
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{}", format_rational(&abs))?,
                (_, true) => write!(f, "z{}^{e}", self.conductor)?,
                (_, false) => write!(f, "{}*z{}^{e}", format_rational(&abs), self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn expect_cap<T>(r: Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("cyclotomic arithmetic: {e}"))
}

// The operator impls panic where the checked_* methods would return an error.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                expect_cap(self.$checked(rhs))
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                expect_cap(self.$checked(&rhs))
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                expect_cap(self.$checked(rhs))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}
