//! Flat classes of mapping tori.
//!
//! For an automorphism `φ` of a family over `[*/G]` with vanishing index, the
//! mapping torus defines a class in `R(G) ⊗ T` represented by
//!
//! ```text
//! Φ(g) = (1/2πi) Σ_θ θ · log( det φ⁺(θ) / det φ⁻(θ) )
//! ```
//!
//! where `V^± = ⊕_θ V^±(θ)` is the eigen-decomposition of `g` on the kernel
//! bundles. Holonomies enter only through their determinants, which are given
//! here as turns: `det φ = exp(2πi·t)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, IntLattice, Rational};
use crate::grouprep::{ClassFunction, FiniteAbelianGroup, GroupElement};
use crate::hatk_point::TorusClassFunction;

/// A determinant phase `exp(2πi·t)`, given by its turn `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum Turn {
    Exact(Rational),
    Approx(f64),
}

impl Turn {
    pub fn exact(&self) -> Result<&Rational> {
        match self {
            Turn::Exact(r) => Ok(r),
            Turn::Approx(x) => Err(Error::Inexact(format!("turn {x} is a floating-point value"))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Turn::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Turn::Approx(x) => *x,
        }
    }
}

impl From<Rational> for Turn {
    fn from(r: Rational) -> Self {
        Turn::Exact(r)
    }
}

/// The `θ`-eigenspace data of one group element: `θ = exp(2πi·theta)` and the
/// determinant turns of the holonomies on `V⁺(θ)` and `V⁻(θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSector {
    pub theta: Rational,
    pub plus: Vec<Turn>,
    pub minus: Vec<Turn>,
}

impl EigenSector {
    pub fn new(theta: Rational, plus: Vec<Turn>, minus: Vec<Turn>) -> Self {
        EigenSector { theta: reduce_turn(&theta), plus, minus }
    }
}

fn reduce_turn(t: &Rational) -> Rational {
    t - t.floor()
}

/// Eigen-sector holonomy data for every group element. Elements without
/// entries contribute nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyData {
    group: FiniteAbelianGroup,
    sectors: BTreeMap<usize, Vec<EigenSector>>,
}

impl HolonomyData {
    pub fn new(group: &FiniteAbelianGroup) -> Self {
        HolonomyData { group: group.clone(), sectors: BTreeMap::new() }
    }

    /// Adds the data of one eigenspace of `g`. Eigenvalues must be roots of
    /// unity of order dividing `ord(g)` and may occur once per element.
    pub fn insert(&mut self, g: &GroupElement, sector: EigenSector) -> Result<()> {
        self.group.check_same(g.group())?;
        let sector = EigenSector::new(sector.theta, sector.plus, sector.minus);
        let period = &sector.theta * Rational::from_integer(BigInt::from(g.order()));
        if !period.is_integer() {
            return Err(Error::MalformedSectors(format!(
                "eigenvalue exp(2πi·{}) is not an {}-th root of unity for {g}",
                sector.theta,
                g.order()
            )));
        }
        let list = self.sectors.entry(g.index()).or_default();
        if list.iter().any(|s| s.theta == sector.theta) {
            return Err(Error::MalformedSectors(format!("eigenvalue turn {} repeated at {g}", sector.theta)));
        }
        list.push(sector);
        list.sort_by(|a, b| a.theta.cmp(&b.theta));
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn sectors(&self) -> impl Iterator<Item = (GroupElement, &[EigenSector])> {
        self.sectors.iter().map(|(&i, s)| (self.group.element_at(i), s.as_slice()))
    }

    /// `(g, θ)` for every eigenspace present.
    pub fn periods(&self) -> Vec<(usize, Rational)> {
        self.sectors.iter().flat_map(|(&i, list)| list.iter().map(move |s| (i, s.theta.clone()))).collect()
    }

    /// Direct sum: eigenspaces with the same `(g, θ)` are merged.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (&i, list) in &other.sectors {
            let mine = out.sectors.entry(i).or_default();
            for s in list {
                match mine.iter_mut().find(|m| m.theta == s.theta) {
                    Some(m) => {
                        m.plus.extend(s.plus.iter().cloned());
                        m.minus.extend(s.minus.iter().cloned());
                    }
                    None => mine.push(s.clone()),
                }
            }
            mine.sort_by(|a, b| a.theta.cmp(&b.theta));
        }
        Ok(out)
    }

    /// Exchanges `V⁺` and `V⁻`.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        for list in out.sectors.values_mut() {
            for s in list {
                std::mem::swap(&mut s.plus, &mut s.minus);
            }
        }
        out
    }

    fn sector_turn(s: &EigenSector) -> Result<Rational> {
        let mut t = Rational::zero();
        for x in &s.plus {
            t += x.exact()?;
        }
        for x in &s.minus {
            t -= x.exact()?;
        }
        Ok(t)
    }
}

/// The class `a(Φ)` together with the eigenspaces whose log-branch choice it
/// depends on.
#[derive(Clone, Debug)]
pub struct MappingTorusClass {
    class: TorusClassFunction,
    phi: ClassFunction,
    periods: Vec<(usize, Rational)>,
}

impl MappingTorusClass {
    pub fn class(&self) -> &TorusClassFunction {
        &self.class
    }

    /// `Φ` itself, before passing to the quotient.
    pub fn phi(&self) -> &ClassFunction {
        &self.phi
    }

    pub fn periods(&self) -> &[(usize, Rational)] {
        &self.periods
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.phi.group()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let phi = self.phi.add(&other.phi)?;
        let mut periods = self.periods.clone();
        periods.extend(other.periods.iter().cloned());
        Ok(MappingTorusClass { class: TorusClassFunction::new(phi.clone())?, phi, periods })
    }

    pub fn neg(&self) -> Result<Self> {
        let phi = self.phi.neg();
        Ok(MappingTorusClass { class: TorusClassFunction::new(phi.clone())?, phi, periods: self.periods.clone() })
    }

    pub fn is_zero(&self) -> Result<bool> {
        let zero = ClassFunction::zero(self.group());
        lattice_contains(&self.phi, &zero, &self.periods)
    }

    /// Equality modulo `ch(R(G))` and the log-branch periods `θ·δ_g` of both
    /// operands.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        let mut periods = self.periods.clone();
        periods.extend(other.periods.iter().cloned());
        lattice_contains(&self.phi, &other.phi, &periods)
    }
}

fn lattice_contains(a: &ClassFunction, b: &ClassFunction, periods: &[(usize, Rational)]) -> Result<bool> {
    let group = a.group();
    let diff = a.sub(b)?;
    let mut n = group.exponent();
    for v in diff.values() {
        n = n.lcm(&v.conductor());
    }
    for (_, theta) in periods {
        n = n.lcm(&theta.denom().to_u64().unwrap_or(u64::MAX));
    }
    let order = group.order();
    let width = Cyclotomic::root_of_unity(n, 0)?.coeffs().len();
    let dim = order * width;

    let embed = |f: &dyn Fn(usize) -> Result<Cyclotomic>| -> Result<Option<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(dim);
        for i in 0..order {
            for c in f(i)?.promote(n)?.coeffs() {
                if !c.is_integer() {
                    return Ok(None);
                }
                out.push(c.to_integer());
            }
        }
        Ok(Some(out))
    };

    let Some(target) = embed(&|i| Ok(diff.values()[i].clone()))? else { return Ok(false) };
    let mut lattice = IntLattice::new(dim);
    for pi in group.irreps() {
        let v = embed(&|i| pi.value(&group.element_at(i)))?.expect("characters are integral");
        lattice.insert(v);
    }
    for (g, theta) in periods {
        let root = Cyclotomic::from_turn(theta)?;
        let v = embed(&|i| Ok(if i == *g { root.clone() } else { Cyclotomic::zero() }))?.expect("roots are integral");
        lattice.insert(v);
    }
    Ok(lattice.contains(&target))
}

/// `Φ(g) = Σ_θ θ · (Σ plus − Σ minus)` in exact arithmetic.
pub fn mapping_torus_class(d: &HolonomyData) -> Result<MappingTorusClass> {
    let group = &d.group;
    let mut values = vec![Cyclotomic::zero(); group.order()];
    for (&i, list) in &d.sectors {
        for s in list {
            let t = HolonomyData::sector_turn(s)?;
            let term = Cyclotomic::from_turn(&s.theta)?.scale(&t);
            values[i] = values[i].checked_add(&term)?;
        }
    }
    let phi = ClassFunction::new(group, values)?;
    Ok(MappingTorusClass { class: TorusClassFunction::new(phi.clone())?, phi, periods: d.periods() })
}

/// `Φ` evaluated in floating point; accepts inexact turns.
pub fn approximate_values(d: &HolonomyData) -> Vec<Complex64> {
    let mut values = vec![Complex64::new(0.0, 0.0); d.group.order()];
    for (&i, list) in &d.sectors {
        for s in list {
            let t: f64 = s.plus.iter().map(Turn::to_f64).sum::<f64>() - s.minus.iter().map(Turn::to_f64).sum::<f64>();
            let theta = s.theta.to_f64().unwrap_or(f64::NAN) * std::f64::consts::TAU;
            values[i] += Complex64::from_polar(1.0, theta) * t;
        }
    }
    values
}

/// One line of an automorphism's eigen-decomposition: the irreducible
/// representation `G` acts by, and the turn `φ` acts by.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenLine {
    pub labels: Vec<i64>,
    pub turn: Rational,
}

/// The holonomy data of an automorphism `φ` commuting with `G`, given in a
/// simultaneous eigenbasis of `V⁺` and `V⁻`.
pub fn holonomy_from_automorphism(
    group: &FiniteAbelianGroup,
    plus: &[EigenLine],
    minus: &[EigenLine],
) -> Result<HolonomyData> {
    let n = group.exponent() as i64;
    let mut d = HolonomyData::new(group);
    for g in group.elements() {
        let mut by_theta: BTreeMap<Rational, (Vec<Turn>, Vec<Turn>)> = BTreeMap::new();
        for (lines, is_plus) in [(plus, true), (minus, false)] {
            for line in lines {
                let pi = group.irrep(&line.labels)?;
                let e = group.pairing_exponent(pi.labels(), g.coords()) as i64;
                let theta = reduce_turn(&Rational::new(BigInt::from(e), BigInt::from(n)));
                let entry = by_theta.entry(theta).or_default();
                let side = if is_plus { &mut entry.0 } else { &mut entry.1 };
                side.push(Turn::Exact(line.turn.clone()));
            }
        }
        for (theta, (p, m)) in by_theta {
            d.insert(&g, EigenSector::new(theta, p, m))?;
        }
    }
    Ok(d)
}

pub fn mapping_torus_from_automorphism(
    group: &FiniteAbelianGroup,
    plus: &[EigenLine],
    minus: &[EigenLine],
) -> Result<MappingTorusClass> {
    mapping_torus_class(&holonomy_from_automorphism(group, plus, minus)?)
}
