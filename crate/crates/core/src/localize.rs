//! Localization of sector data at the prime ideal `I(g) ⊂ R(G)` of virtual
//! characters vanishing at `g`.
//!
//! For abelian `G` the inertia orbifold of `[M/G]` splits into one sector per
//! element `h`. After localizing at `I(g)` only the sectors with `g ∈ ⟨h⟩`
//! survive; for every other sector there is a character that vanishes on
//! `⟨h⟩` but not at `g`, and it acts invertibly on the localization.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;
use crate::grouprep::{FiniteAbelianGroup, GroupElement, RepRingElement};

/// Whether the sector at `h` survives localization at `I(g)`.
pub fn survives(h: &GroupElement, g: &GroupElement) -> Result<bool> {
    h.group().check_same(g.group())?;
    Ok(h.cyclic_subgroup().iter().any(|x| x == g))
}

/// A virtual character vanishing on `⟨h⟩` and nonzero at `g`, when one
/// exists: `[G:⟨h⟩]·1 − Σ{π : π|⟨h⟩ trivial}`.
pub fn separating_witness(h: &GroupElement, g: &GroupElement) -> Result<Option<RepRingElement>> {
    if survives(h, g)? {
        return Ok(None);
    }
    let group = h.group();
    let index = (group.order() as u64 / h.order()) as i64;
    let mut x = RepRingElement::one(group).scale(index);
    for pi in group.irreps() {
        if pi.value(h)? == Cyclotomic::one() {
            x = x.sub(&RepRingElement::from_irrep(&pi))?;
        }
    }
    Ok(Some(x))
}

/// Sectors of the inertia orbifold, one per group element, each with an
/// opaque rank label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorModule {
    group: FiniteAbelianGroup,
    sectors: Vec<(GroupElement, u64)>,
}

impl SectorModule {
    pub fn new(group: &FiniteAbelianGroup, sectors: Vec<(GroupElement, u64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (h, _) in &sectors {
            group.check_same(h.group())?;
            if !seen.insert(h.index()) {
                return Err(Error::MalformedSectors(format!("sector {h} listed twice")));
            }
        }
        Ok(SectorModule { group: group.clone(), sectors })
    }

    /// Every element with the same rank label.
    pub fn full(group: &FiniteAbelianGroup, rank: u64) -> Self {
        SectorModule { group: group.clone(), sectors: group.elements().map(|h| (h, rank)).collect() }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn sectors(&self) -> &[(GroupElement, u64)] {
        &self.sectors
    }

    pub fn total_rank(&self) -> u64 {
        self.sectors.iter().map(|(_, r)| r).sum()
    }
}

/// Keeps exactly the sectors surviving localization at `I(g)`.
pub fn localize_module(m: &SectorModule, g: &GroupElement) -> Result<SectorModule> {
    m.group.check_same(g.group())?;
    let mut sectors = Vec::new();
    for (h, r) in &m.sectors {
        if survives(h, g)? {
            sectors.push((h.clone(), *r));
        }
    }
    Ok(SectorModule { group: m.group.clone(), sectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &FiniteAbelianGroup, c: &[i64]) -> GroupElement {
        g.element(c).unwrap()
    }

    #[test]
    fn survives_examples() {
        let g = FiniteAbelianGroup::cyclic(4);
        assert!(survives(&el(&g, &[2]), &el(&g, &[2])).unwrap());
        assert!(!survives(&el(&g, &[2]), &el(&g, &[1])).unwrap());
        for h in g.elements() {
            assert!(survives(&h, &g.identity()).unwrap());
        }
        assert!(survives(&g.identity(), &FiniteAbelianGroup::cyclic(2).identity()).is_err());
    }

    #[test]
    fn witness_examples() {
        let g = FiniteAbelianGroup::cyclic(4);
        let x = separating_witness(&el(&g, &[2]), &el(&g, &[1])).unwrap().unwrap();
        let expected = RepRingElement::from_terms(&g, [(&[0i64][..], 1), (&[2][..], -1)]).unwrap();
        assert_eq!(x, expected);
        let f = x.ch();
        assert!(f.value(&el(&g, &[0])).unwrap().is_zero());
        assert!(f.value(&el(&g, &[2])).unwrap().is_zero());
        assert_eq!(f.value(&el(&g, &[1])).unwrap(), &Cyclotomic::from_int(2));
        assert!(separating_witness(&el(&g, &[2]), &el(&g, &[2])).unwrap().is_none());

        let g = FiniteAbelianGroup::cyclic(2);
        let x = separating_witness(&g.identity(), &el(&g, &[1])).unwrap().unwrap();
        assert_eq!(x, RepRingElement::from_terms(&g, [(&[0i64][..], 1), (&[1][..], -1)]).unwrap());
        assert_eq!(x.ch().value(&el(&g, &[1])).unwrap(), &Cyclotomic::from_int(2));
    }

    #[test]
    fn localize_examples() {
        let g = FiniteAbelianGroup::cyclic(4);
        let m = SectorModule::full(&g, 1);
        let loc = localize_module(&m, &el(&g, &[1])).unwrap();
        let kept: Vec<u64> = loc.sectors().iter().map(|(h, _)| h.coords()[0]).collect();
        assert_eq!(kept, vec![1, 3]);
        assert_eq!(localize_module(&m, &g.identity()).unwrap(), m);

        let single = SectorModule::new(&g, vec![(el(&g, &[3]), 5)]).unwrap();
        assert_eq!(localize_module(&single, &el(&g, &[3])).unwrap(), single);
        assert_eq!(localize_module(&loc, &el(&g, &[1])).unwrap(), loc);
    }

    #[test]
    fn duplicate_sectors_are_rejected() {
        let g = FiniteAbelianGroup::cyclic(3);
        let e = g.identity();
        assert!(matches!(SectorModule::new(&g, vec![(e.clone(), 1), (e, 2)]), Err(Error::MalformedSectors(_))));
    }

    fn small_characters(g: &FiniteAbelianGroup) -> Vec<RepRingElement> {
        let irreps = g.irreps();
        let mut out = vec![RepRingElement::zero(g)];
        for pi in &irreps {
            let one = RepRingElement::from_irrep(pi);
            out = out
                .iter()
                .flat_map(|x| [x.sub(&one).unwrap(), x.clone(), x.add(&one).unwrap()])
                .collect();
        }
        out
    }

    #[test]
    fn vanishing_characters_form_an_ideal() {
        for orders in [vec![4], vec![2, 2]] {
            let g = FiniteAbelianGroup::new(orders).unwrap();
            let all = small_characters(&g);
            for at in g.elements() {
                let ideal: Vec<&RepRingElement> = all.iter().filter(|x| x.value(&at).unwrap().is_zero()).collect();
                for a in &ideal {
                    for b in &ideal {
                        assert!(a.add(b).unwrap().value(&at).unwrap().is_zero());
                    }
                    for pi in g.irreps() {
                        let y = a.tensor(&RepRingElement::from_irrep(&pi)).unwrap();
                        assert!(y.value(&at).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_are_sound_and_complete() {
        for n in 1..=12 {
            for g in FiniteAbelianGroup::all_of_order(n) {
                for h in g.elements() {
                    let span = h.cyclic_subgroup();
                    for x in g.elements() {
                        match separating_witness(&h, &x).unwrap() {
                            Some(w) => {
                                assert!(!span.contains(&x));
                                assert!(span.iter().all(|y| w.value(y).unwrap().is_zero()));
                                assert!(!w.value(&x).unwrap().is_zero());
                            }
                            None => assert!(span.contains(&x)),
                        }
                    }
                }
            }
        }
    }
}
