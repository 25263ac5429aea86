use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::subgroup::Embedding;
use crate::error::{Error, Result};
use crate::exactnum::{max_conductor, Cyclotomic};

/// Largest group this crate will enumerate.
pub const MAX_GROUP_ORDER: usize = 1 << 16;

/// Z/n₁ × … × Z/n_r, with elements and characters indexed lexicographically
/// (last coordinate fastest).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Arc<[u64]>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("a group needs at least one cyclic factor".into()));
        }
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factors must have order at least 1".into()));
        }
        let order = orders.iter().try_fold(1usize, |acc, &o| acc.checked_mul(usize::try_from(o).ok()?));
        match order {
            Some(n) if n <= MAX_GROUP_ORDER => {}
            _ => return Err(Error::InvalidGroup(format!("group order exceeds {MAX_GROUP_ORDER}"))),
        }
        // character values live in the exponent-th cyclotomic field
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
        if exponent > max_conductor() {
            return Err(Error::ConductorOverflow { requested: exponent, max: max_conductor() });
        }
        Ok(FiniteAbelianGroup { orders: orders.into() })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("cyclic group too large or beyond the conductor cap")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    /// Least common multiple of the element orders; every character value is
    /// a power of ζ with this conductor.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, o| acc.lcm(o))
    }

    /// Abelian groups of order `n` in invariant-factor form d₁ | d₂ | … with
    /// every dᵢ > 1 (the trivial group is `[1]`).
    pub fn all_of_order(n: u64) -> Vec<Self> {
        fn rec(n: u64, min_divisor_of: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if n == 1 {
                out.push(acc.clone());
                return;
            }
            // invariant factors listed largest first while recursing
            for d in (2..=n).rev() {
                if n.is_multiple_of(d) && min_divisor_of.is_multiple_of(d) {
                    acc.push(d);
                    rec(n / d, d, acc, out);
                    acc.pop();
                }
            }
        }
        if n == 1 {
            return vec![Self::trivial()];
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|mut f| {
                f.reverse();
                Self::new(f).unwrap()
            })
            .collect()
    }

    pub(crate) fn reduce(&self, coords: &[i64]) -> Result<Vec<u64>> {
        if coords.len() != self.rank() {
            return Err(Error::Shape(format!("{} coordinates for a group of rank {}", coords.len(), self.rank())));
        }
        Ok(coords.iter().zip(self.orders.iter()).map(|(&c, &o)| c.rem_euclid(o as i64) as u64).collect())
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        Ok(GroupElement { group: self.clone(), coords: self.reduce(coords)? })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { group: self.clone(), coords: vec![0; self.rank()] }
    }

    pub fn index_of(&self, coords: &[u64]) -> usize {
        coords.iter().zip(self.orders.iter()).fold(0usize, |acc, (&c, &o)| acc * o as usize + c as usize)
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<u64> {
        let mut coords = vec![0; self.rank()];
        for (c, &o) in coords.iter_mut().zip(self.orders.iter()).rev() {
            *c = (index % o as usize) as u64;
            index /= o as usize;
        }
        coords
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement { group: self.clone(), coords: self.coords_of(index) }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    pub fn irrep(&self, labels: &[i64]) -> Result<Irrep> {
        Ok(Irrep { group: self.clone(), labels: self.reduce(labels)? })
    }

    pub fn trivial_irrep(&self) -> Irrep {
        Irrep { group: self.clone(), labels: vec![0; self.rank()] }
    }

    /// All irreducible characters in lexicographic label order.
    pub fn irreps(&self) -> Vec<Irrep> {
        (0..self.order()).map(|i| Irrep { group: self.clone(), labels: self.coords_of(i) }).collect()
    }

    pub(crate) fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(self.orders.iter()).map(|((x, y), o)| (x + y) % o).collect()
    }

    pub(crate) fn neg_coords(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(self.orders.iter()).map(|(x, o)| (o - x) % o).collect()
    }

    pub(crate) fn scale_coords(&self, a: &[u64], n: i64) -> Vec<u64> {
        a.iter()
            .zip(self.orders.iter())
            .map(|(&x, &o)| ((x as i128 * n as i128).rem_euclid(o as i128)) as u64)
            .collect()
    }

    pub(crate) fn order_of_coords(&self, a: &[u64]) -> u64 {
        a.iter().zip(self.orders.iter()).fold(1, |acc, (&x, &o)| acc.lcm(&(o / x.gcd(&o))))
    }

    /// Exponent e with χ_labels(g) = ζ_N^e, N the group exponent.
    pub(crate) fn pairing_exponent(&self, labels: &[u64], coords: &[u64]) -> u64 {
        let n = self.exponent();
        labels
            .iter()
            .zip(coords)
            .zip(self.orders.iter())
            .fold(0u64, |acc, ((&l, &c), &o)| (acc + (l * c % o) * (n / o)) % n)
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(self, other))
        }
    }

    /// Every subgroup once, each presented by [`Embedding::generated_by`].
    pub fn subgroups(&self) -> Vec<Embedding> {
        let n = self.order();
        let mut seen: std::collections::HashSet<Vec<bool>> = std::collections::HashSet::new();
        let mut out = Vec::new();
        // every subgroup of an abelian group of rank r is generated by r elements
        let r = self.rank();
        let total = n.pow(r as u32);
        for t in 0..total {
            let mut rest = t;
            let gens: Vec<Vec<u64>> = (0..r)
                .map(|_| {
                    let g = self.coords_of(rest % n);
                    rest /= n;
                    g
                })
                .collect();
            let members = self.generated_set(&gens);
            if seen.insert(members) {
                let gens: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
                out.push(Embedding::generated_by(self, &gens).expect("generators come from the group"));
            }
        }
        out.sort_by_key(|e| e.domain().order());
        out
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub(crate) fn generated_set(&self, gens: &[Vec<u64>]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut frontier = vec![vec![0u64; self.rank()]];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add_coords(&x, g);
                let i = self.index_of(&y);
                if !mask[i] {
                    mask[i] = true;
                    frontier.push(y);
                }
            }
        }
        mask
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|o| format!("Z/{o}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FiniteAbelianGroup,
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn index(&self) -> usize {
        self.group.index_of(&self.coords)
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn order(&self) -> u64 {
        self.group.order_of_coords(&self.coords)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.check_same(&other.group)?;
        Ok(GroupElement { group: self.group.clone(), coords: self.group.add_coords(&self.coords, &other.coords) })
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement { group: self.group.clone(), coords: self.group.neg_coords(&self.coords) }
    }

    pub fn multiple(&self, n: i64) -> GroupElement {
        GroupElement { group: self.group.clone(), coords: self.group.scale_coords(&self.coords, n) }
    }

    /// The cyclic subgroup ⟨self⟩, listed as 0, self, 2·self, ….
    pub fn cyclic_subgroup(&self) -> Vec<GroupElement> {
        (0..self.order() as i64).map(|k| self.multiple(k)).collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A one-dimensional character g ↦ ∏ᵢ ζ_{nᵢ}^{lᵢ·gᵢ}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Irrep {
    group: FiniteAbelianGroup,
    labels: Vec<u64>,
}

impl PartialOrd for FiniteAbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteAbelianGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.orders.cmp(&other.orders)
    }
}

impl Irrep {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub fn dual(&self) -> Irrep {
        Irrep { group: self.group.clone(), labels: self.group.neg_coords(&self.labels) }
    }

    pub fn tensor(&self, other: &Irrep) -> Result<Irrep> {
        self.group.check_same(&other.group)?;
        Ok(Irrep { group: self.group.clone(), labels: self.group.add_coords(&self.labels, &other.labels) })
    }

    pub fn value(&self, g: &GroupElement) -> Result<Cyclotomic> {
        self.group.check_same(&g.group)?;
        Ok(self.value_at(&g.coords))
    }

    pub(crate) fn value_at(&self, coords: &[u64]) -> Cyclotomic {
        let e = self.group.pairing_exponent(&self.labels, coords);
        Cyclotomic::root_of_unity(self.group.exponent(), e as i64).expect("group exponent within conductor cap")
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
