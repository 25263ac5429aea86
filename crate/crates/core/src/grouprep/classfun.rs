use std::collections::BTreeMap;

use super::group::{FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Cyclotomic};

/// A function G → Q(ζ). For abelian G every function is a class function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    group: FiniteAbelianGroup,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    /// `values` are listed in the group's element order.
    pub fn new(group: &FiniteAbelianGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Shape(format!("{} values for a group of order {}", values.len(), group.order())));
        }
        Ok(ClassFunction { group: group.clone(), values })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, mut f: impl FnMut(&GroupElement) -> Cyclotomic) -> Self {
        ClassFunction { group: group.clone(), values: group.elements().map(|g| f(&g)).collect() }
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Cyclotomic) -> Self {
        ClassFunction { group: group.clone(), values: vec![c; group.order()] }
    }

    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        Self::constant(group, Cyclotomic::zero())
    }

    /// Σ_π c_π χ_π from a coefficient table keyed by irreducible labels.
    pub fn from_coefficients(group: &FiniteAbelianGroup, coeffs: &BTreeMap<Vec<u64>, Cyclotomic>) -> Result<Self> {
        let mut values = vec![Cyclotomic::zero(); group.order()];
        for (labels, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let pi = group.irrep(&labels.iter().map(|&l| l as i64).collect::<Vec<_>>())?;
            for (i, v) in values.iter_mut().enumerate() {
                *v = v.checked_add(&c.checked_mul(&pi.value_at(&group.coords_of(i)))?)?;
            }
        }
        Ok(ClassFunction { group: group.clone(), values })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, g: &GroupElement) -> Result<&Cyclotomic> {
        self.group.check_same(g.group())?;
        Ok(&self.values[g.index()])
    }

    pub(crate) fn value_at_index(&self, i: usize) -> &Cyclotomic {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Result<Cyclotomic>) -> Result<Self> {
        self.group.check_same(&other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Cyclotomic::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Cyclotomic::checked_sub)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Cyclotomic::checked_mul)
    }

    pub fn neg(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self> {
        let values = self.values.iter().map(|v| v.checked_mul(c)).collect::<Result<_>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// Tr_G(f) = (1/|G|) Σ_g f(g).
    pub fn trace(&self) -> Cyclotomic {
        let sum = self.values.iter().fold(Cyclotomic::zero(), |acc, v| acc + v);
        sum.scale(&rat(1, self.group.order() as i64))
    }

    /// Coefficients in the basis of irreducible characters:
    /// c_π = (1/|G|) Σ_g f(g)·conj(χ_π(g)).
    pub fn ch_inverse(&self) -> BTreeMap<Vec<u64>, Cyclotomic> {
        let g = &self.group;
        let n = g.exponent();
        let inv_order = rat(1, g.order() as i64);
        g.irreps()
            .into_iter()
            .map(|pi| {
                let mut acc = Cyclotomic::zero();
                for (i, f) in self.values.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let e = g.pairing_exponent(pi.labels(), &g.coords_of(i));
                    let conj = Cyclotomic::root_of_unity(n, -(e as i64)).expect("group exponent within cap");
                    acc = acc + f * &conj;
                }
                (pi.labels().to_vec(), acc.scale(&inv_order))
            })
            .collect()
    }

    /// Q(f)(g) = conj(f(−g)).
    pub fn real_structure(&self) -> Self {
        let g = &self.group;
        let values = (0..g.order()).map(|i| self.values[g.index_of(&g.neg_coords(&g.coords_of(i)))].conj()).collect();
        ClassFunction { group: g.clone(), values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::RepRingElement;
    use proptest::prelude::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    fn half() -> Cyclotomic {
        Cyclotomic::from_rational(rat(1, 2))
    }

    fn irrep_ch(g: &FiniteAbelianGroup, l: i64) -> ClassFunction {
        RepRingElement::from_irrep(&g.irrep(&[l]).unwrap()).ch()
    }

    #[test]
    fn trace_examples() {
        assert!(irrep_ch(&z(2), 1).trace().is_zero());
        assert_eq!(ClassFunction::constant(&z(5), Cyclotomic::one()).trace(), Cyclotomic::one());
        assert!(irrep_ch(&z(4), 2).trace().is_zero());
    }

    #[test]
    fn ch_inverse_examples() {
        let c = ClassFunction::constant(&z(2), half()).ch_inverse();
        assert_eq!(c[&vec![0]], half());
        assert!(c[&vec![1]].is_zero());

        let f = ClassFunction::new(&z(2), vec![Cyclotomic::one(), Cyclotomic::from_int(-1)]).unwrap();
        let c = f.ch_inverse();
        assert!(c[&vec![0]].is_zero());
        assert_eq!(c[&vec![1]], Cyclotomic::one());
    }

    #[test]
    fn real_structure_examples() {
        let chi = irrep_ch(&z(3), 1);
        assert_eq!(chi.real_structure(), chi);
        let zeta = Cyclotomic::root_of_unity(3, 1).unwrap();
        let f = ClassFunction::constant(&z(3), zeta);
        assert_eq!(f.real_structure(), ClassFunction::constant(&z(3), Cyclotomic::root_of_unity(3, 2).unwrap()));
        let h = ClassFunction::constant(&z(3), half());
        assert_eq!(h.real_structure(), h);
    }

    #[test]
    fn length_is_checked() {
        assert!(matches!(ClassFunction::new(&z(3), vec![Cyclotomic::one()]), Err(Error::Shape(_))));
    }

    fn classfun() -> impl Strategy<Value = ClassFunction> {
        prop::sample::select(vec![vec![2u64], vec![3], vec![4], vec![2, 2], vec![6]]).prop_flat_map(|o| {
            let g = FiniteAbelianGroup::new(o).unwrap();
            let n = g.order();
            prop::collection::vec((-4i64..=4, 1i64..=3, 0i64..12), n).prop_map(move |vals| {
                let values = vals
                    .into_iter()
                    .map(|(p, q, e)| Cyclotomic::root_of_unity(12, e).unwrap().scale(&rat(p, q)))
                    .collect();
                ClassFunction::new(&g, values).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn ch_of_ch_inverse_is_identity(f in classfun()) {
            let coeffs = f.ch_inverse();
            prop_assert_eq!(ClassFunction::from_coefficients(f.group(), &coeffs).unwrap(), f);
        }

        #[test]
        fn real_structure_is_involutive(f in classfun()) {
            prop_assert_eq!(f.real_structure().real_structure(), f);
        }
    }
}
