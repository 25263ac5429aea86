use std::collections::BTreeMap;
use std::fmt;

use super::classfun::ClassFunction;
use super::group::{FiniteAbelianGroup, GroupElement, Irrep};
use crate::error::Result;
use crate::exactnum::{Cyclotomic, IntMatrix};

/// A virtual character: an integer combination of irreducibles, stored
/// sparsely by label tuple with zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepRingElement {
    group: FiniteAbelianGroup,
    coeffs: BTreeMap<Vec<u64>, i64>,
}

impl RepRingElement {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        RepRingElement { group: group.clone(), coeffs: BTreeMap::new() }
    }

    /// The unit of R(G), the trivial representation.
    pub fn one(group: &FiniteAbelianGroup) -> Self {
        Self::from_irrep(&group.trivial_irrep())
    }

    pub fn from_irrep(pi: &Irrep) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(pi.labels().to_vec(), 1);
        RepRingElement { group: pi.group().clone(), coeffs }
    }

    /// Sum of (labels, coefficient) pairs; labels are reduced mod the orders.
    pub fn from_terms<'a>(
        group: &FiniteAbelianGroup,
        terms: impl IntoIterator<Item = (&'a [i64], i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(group);
        for (labels, n) in terms {
            out.add_term(group.reduce(labels)?, n);
        }
        Ok(out)
    }

    /// The regular representation, every irreducible once.
    pub fn regular(group: &FiniteAbelianGroup) -> Self {
        let mut out = Self::zero(group);
        for pi in group.irreps() {
            out.add_term(pi.labels().to_vec(), 1);
        }
        out
    }

    pub(crate) fn add_term(&mut self, labels: Vec<u64>, n: i64) {
        if n == 0 {
            return;
        }
        let entry = self.coeffs.entry(labels).or_insert(0);
        *entry += n;
        if *entry == 0 {
            self.coeffs.retain(|_, c| *c != 0);
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coeff(&self, labels: &[u64]) -> i64 {
        self.coeffs.get(labels).copied().unwrap_or(0)
    }

    pub fn coeff_of(&self, pi: &Irrep) -> i64 {
        self.coeff(pi.labels())
    }

    /// Non-zero terms in lexicographic label order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u64], i64)> {
        self.coeffs.iter().map(|(l, &n)| (l.as_slice(), n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Virtual dimension; every irreducible of an abelian group is a line.
    pub fn dim(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (l, &n) in &other.coeffs {
            out.add_term(l.clone(), n);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(&self.group);
        }
        RepRingElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|(l, &n)| (l.clone(), k * n)).collect() }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        let mut out = Self::zero(&self.group);
        for (a, &n) in &self.coeffs {
            for (b, &m) in &other.coeffs {
                out.add_term(self.group.add_coords(a, b), n * m);
            }
        }
        Ok(out)
    }

    pub fn dual(&self) -> Self {
        let group = &self.group;
        RepRingElement { group: group.clone(), coeffs: self.coeffs.iter().map(|(l, &n)| (group.neg_coords(l), n)).collect() }
    }

    /// Coefficient of the trivial representation.
    pub fn trace(&self) -> i64 {
        self.coeff(&vec![0; self.group.rank()])
    }

    /// (x, y) = Tr_G(x ⊗ y).
    pub fn pairing(&self, other: &Self) -> Result<i64> {
        self.group.check_same(&other.group)?;
        // only terms whose labels cancel contribute
        let group = &self.group;
        Ok(self.coeffs.iter().map(|(a, &n)| n * other.coeff(&group.neg_coords(a))).sum())
    }

    pub fn value(&self, g: &GroupElement) -> Result<Cyclotomic> {
        self.group.check_same(g.group())?;
        Ok(self.value_at(g.coords()))
    }

    pub(crate) fn value_at(&self, coords: &[u64]) -> Cyclotomic {
        let n = self.group.exponent();
        let mut counts = vec![0i64; n as usize];
        for (l, &c) in &self.coeffs {
            counts[self.group.pairing_exponent(l, coords) as usize] += c;
        }
        Cyclotomic::from_power_sum(n, &counts).expect("group exponent within conductor cap")
    }

    /// The character Σ n_π χ_π.
    pub fn ch(&self) -> ClassFunction {
        let values = (0..self.group.order()).map(|i| self.value_at(&self.group.coords_of(i))).collect();
        ClassFunction::new(&self.group, values).expect("one value per element")
    }
}

impl fmt::Display for RepRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, &n)) in self.coeffs.iter().enumerate() {
            let label: Vec<String> = l.iter().map(u64::to_string).collect();
            let label = label.join(",");
            let sign = if n < 0 { "-" } else { "+" };
            if i == 0 {
                if n < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if n.abs() == 1 {
                write!(f, "[{label}]")?;
            } else {
                write!(f, "{}[{label}]", n.abs())?;
            }
        }
        Ok(())
    }
}

/// Matrix of pairings (πᵢ, πⱼ) over the lexicographic irreducible order.
pub fn dual_pairing_matrix(group: &FiniteAbelianGroup) -> IntMatrix {
    let irreps: Vec<RepRingElement> = group.irreps().iter().map(RepRingElement::from_irrep).collect();
    IntMatrix::from_fn(irreps.len(), irreps.len(), |i, j| irreps[i].pairing(&irreps[j]).unwrap())
}
