//! Differential K-theory of a point orbifold `[*/G]`.
//!
//! Degree 0 is `R(G)`. Degree 1 is the quotient `C[G]^G / ch(R(G))`, which the
//! character basis identifies with `(C/Z)^{|Ĝ|} = R(G) ⊗ T`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::grouprep::{ClassFunction, FiniteAbelianGroup, RepRingElement};

/// An element of `T = C/Z`, represented by a cyclotomic number.
#[derive(Clone, Debug)]
pub struct TorusScalar(Cyclotomic);

impl TorusScalar {
    /// Rational values are reduced into `[0, 1)`.
    pub fn new(x: Cyclotomic) -> Self {
        match x.as_rational() {
            Some(r) => TorusScalar(Cyclotomic::from_rational(r - r.floor())),
            None => TorusScalar(x),
        }
    }

    pub fn zero() -> Self {
        TorusScalar(Cyclotomic::zero())
    }

    pub fn representative(&self) -> &Cyclotomic {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.0.checked_add(&other.0)?))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.0)
    }

    /// Fixed by complex conjugation, as an element of C/Z.
    pub fn is_real(&self) -> bool {
        (&self.0 - &self.0.conj()).is_integer()
    }
}

impl PartialEq for TorusScalar {
    fn eq(&self, other: &Self) -> bool {
        self.0.checked_sub(&other.0).is_ok_and(|d| d.is_integer())
    }
}

impl Eq for TorusScalar {}

impl fmt::Display for TorusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Z", self.0)
    }
}

fn reduce_coefficient(c: &Cyclotomic) -> Cyclotomic {
    match c.as_rational() {
        Some(r) => Cyclotomic::from_rational(r - r.floor()),
        None => c.clone(),
    }
}

fn is_integral(coeffs: &BTreeMap<Vec<u64>, Cyclotomic>) -> bool {
    coeffs.values().all(Cyclotomic::is_integer)
}

/// A class function modulo the character lattice `ch(R(G))`.
///
/// The stored representative has every rational character coefficient in
/// `[0, 1)`. Equality is decided by integrality of the difference, so two
/// values compare equal whenever they define the same class.
#[derive(Clone, Debug)]
pub struct TorusClassFunction {
    representative: ClassFunction,
}

impl TorusClassFunction {
    pub fn new(f: ClassFunction) -> Result<Self> {
        let coeffs: BTreeMap<_, _> = f.ch_inverse().iter().map(|(k, c)| (k.clone(), reduce_coefficient(c))).collect();
        let representative = ClassFunction::from_coefficients(f.group(), &coeffs)?;
        Ok(TorusClassFunction { representative })
    }

    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        TorusClassFunction { representative: ClassFunction::zero(group) }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.representative.group()
    }

    pub fn representative(&self) -> &ClassFunction {
        &self.representative
    }

    /// Character coefficients of the representative; each is well defined
    /// modulo Z.
    pub fn coefficients_mod_z(&self) -> BTreeMap<Vec<u64>, Cyclotomic> {
        self.representative.ch_inverse()
    }

    pub fn is_zero(&self) -> bool {
        is_integral(&self.representative.ch_inverse())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(self.representative.add(&other.representative)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(self.representative.sub(&other.representative)?)
    }

    pub fn neg(&self) -> Result<Self> {
        Self::new(self.representative.neg())
    }

    /// Multiplication by an integer.
    pub fn multiple(&self, n: i64) -> Result<Self> {
        Self::new(self.representative.scale(&Cyclotomic::from_int(n))?)
    }
}

impl PartialEq for TorusClassFunction {
    fn eq(&self, other: &Self) -> bool {
        torus_equal(self, other).unwrap_or(false)
    }
}

impl fmt::Display for TorusClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients_mod_z()
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let labels: Vec<String> = k.iter().map(u64::to_string).collect();
                format!("({c})[{}]", labels.join(","))
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 mod R(G)")
        } else {
            write!(f, "{} mod R(G)", terms.join(" + "))
        }
    }
}

/// `a: C[G]^G → K̂¹([*/G])`, the class of `f` modulo characters.
pub fn a_map(f: &ClassFunction) -> Result<TorusClassFunction> {
    TorusClassFunction::new(f.clone())
}

pub fn torus_equal(u: &TorusClassFunction, v: &TorusClassFunction) -> Result<bool> {
    let d = u.representative.sub(&v.representative)?;
    Ok(is_integral(&d.ch_inverse()))
}

/// `Tr_G` descended to `C/Z`: well defined because `Tr_G(ch(x)) ∈ Z`.
pub fn torus_trace(u: &TorusClassFunction) -> TorusScalar {
    TorusScalar::new(u.representative.trace())
}

/// Whether the class lies in `R(G) ⊗ R/Z`, i.e. has a representative fixed
/// by the real structure.
pub fn is_real(u: &TorusClassFunction) -> bool {
    u.coefficients_mod_z().values().all(|c| *c == c.conj())
}

/// Common denominator of the character coefficients, if all are rational.
pub fn coefficient_denominators(u: &TorusClassFunction) -> Option<u64> {
    let mut lcm = 1u64;
    for c in u.coefficients_mod_z().values() {
        let r: &Rational = c.as_rational()?;
        lcm = lcm.lcm(&u64::try_from(r.denom()).ok()?);
    }
    Some(lcm)
}

/// A point of `K̂*([*/G])`.
#[derive(Clone, Debug, PartialEq)]
pub enum HatKPoint {
    Even(RepRingElement),
    Odd(TorusClassFunction),
}

impl HatKPoint {
    pub fn degree(&self) -> u8 {
        match self {
            HatKPoint::Even(_) => 0,
            HatKPoint::Odd(_) => 1,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        match self {
            HatKPoint::Even(x) => x.group(),
            HatKPoint::Odd(u) => u.group(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (HatKPoint::Even(x), HatKPoint::Even(y)) => Ok(HatKPoint::Even(x.add(y)?)),
            (HatKPoint::Odd(u), HatKPoint::Odd(v)) => Ok(HatKPoint::Odd(u.add(v)?)),
            _ => Err(Error::Shape("cannot add classes of different degrees".into())),
        }
    }

    pub fn neg(&self) -> Result<Self> {
        match self {
            HatKPoint::Even(x) => Ok(HatKPoint::Even(x.scale(-1))),
            HatKPoint::Odd(u) => Ok(HatKPoint::Odd(u.neg()?)),
        }
    }
}
