use std::collections::HashMap;

use super::classfun::ClassFunction;
use super::group::FiniteAbelianGroup;
use super::rep::RepRingElement;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Cyclotomic, IntMatrix};

/// An injective homomorphism H → G, given by the images of the standard
/// generators of H. All subgroups of an abelian group are normal, so every
/// embedding also has a [`Quotient`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    domain: FiniteAbelianGroup,
    ambient: FiniteAbelianGroup,
    images: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(domain: &FiniteAbelianGroup, ambient: &FiniteAbelianGroup, images: &[Vec<i64>]) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::Shape(format!(
                "{} generator images for a domain of rank {}",
                images.len(),
                domain.rank()
            )));
        }
        let images: Vec<Vec<u64>> = images.iter().map(|g| ambient.reduce(g)).collect::<Result<_>>()?;
        for (img, &o) in images.iter().zip(domain.orders()) {
            if o % ambient.order_of_coords(img) != 0 {
                return Err(Error::NotInjective(format!(
                    "image of a generator of order {o} has order {}",
                    ambient.order_of_coords(img)
                )));
            }
        }
        let emb = Embedding { domain: domain.clone(), ambient: ambient.clone(), images };
        let mut seen = vec![false; ambient.order()];
        for i in 0..domain.order() {
            let j = ambient.index_of(&emb.map_coords(&domain.coords_of(i)));
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotInjective(format!("map {domain} -> {ambient} has a non-trivial kernel")));
            }
        }
        Ok(emb)
    }

    /// The identity map G → G.
    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let images = (0..group.rank())
            .map(|i| (0..group.rank()).map(|j| u64::from(i == j)).collect())
            .collect();
        Embedding { domain: group.clone(), ambient: group.clone(), images }
    }

    /// The subgroup generated by `gens`, presented in invariant-factor form
    /// via the relation lattice of the generators.
    pub fn generated_by(ambient: &FiniteAbelianGroup, gens: &[Vec<i64>]) -> Result<Self> {
        if gens.is_empty() {
            return Self::new(&FiniteAbelianGroup::trivial(), ambient, &[vec![0; ambient.rank()]]);
        }
        let reduced: Vec<Vec<u64>> = gens.iter().map(|g| ambient.reduce(g)).collect::<Result<_>>()?;
        // Kernel of Z^r → G: left kernel of [gens; diag(orders)], cut to the first r columns.
        let r = gens.len();
        let m = ambient.rank();
        let mut rows: Vec<Vec<i64>> = reduced.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
        for (i, &o) in ambient.orders().iter().enumerate() {
            rows.push((0..m).map(|j| if i == j { o as i64 } else { 0 }).collect());
        }
        let snf = IntMatrix::from_rows(m, &rows)?.smith_normal_form();
        let rank = snf.rank();
        let kernel: Vec<Vec<i64>> = (rank..r + m).map(|i| snf.u.row(i)[..r].to_vec()).collect();
        let kernel = IntMatrix::from_rows(r, &kernel)?;

        let snf = kernel.smith_normal_form();
        let mut domain_orders = Vec::new();
        let mut images = Vec::new();
        for (i, &d) in snf.diagonal().iter().enumerate() {
            if d == 1 {
                continue;
            }
            debug_assert!(d > 1, "subgroup of a finite group is finite");
            let lift = snf.v_inv.row(i);
            let mut img = vec![0i64; m];
            for (c, g) in lift.iter().zip(&reduced) {
                for (t, &x) in img.iter_mut().zip(g) {
                    *t += c * x as i64;
                }
            }
            domain_orders.push(d as u64);
            images.push(img);
        }
        if domain_orders.is_empty() {
            return Self::generated_by(ambient, &[]);
        }
        Self::new(&FiniteAbelianGroup::new(domain_orders)?, ambient, &images)
    }

    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    /// [G : H].
    pub fn index(&self) -> usize {
        self.ambient.order() / self.domain.order()
    }

    pub(crate) fn map_coords(&self, h: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.ambient.rank()];
        for (&c, img) in h.iter().zip(&self.images) {
            out = self.ambient.add_coords(&out, &self.ambient.scale_coords(img, c as i64));
        }
        out
    }

    /// Element indices of the image subgroup, in domain element order.
    pub fn image_indices(&self) -> Vec<usize> {
        (0..self.domain.order()).map(|i| self.ambient.index_of(&self.map_coords(&self.domain.coords_of(i)))).collect()
    }

    /// Label of π∘ι for a character π of the ambient group.
    pub(crate) fn restrict_labels(&self, labels: &[u64]) -> Vec<u64> {
        let n = self.ambient.exponent();
        self.images
            .iter()
            .zip(self.domain.orders())
            .map(|(img, &o)| {
                let e = self.ambient.pairing_exponent(labels, img);
                // ζ_N^e is an o-th root of unity because ord(img) | o
                (e * o / n) % o
            })
            .collect()
    }

    pub fn restrict(&self, x: &RepRingElement) -> Result<RepRingElement> {
        self.ambient.check_same(x.group())?;
        let mut out = RepRingElement::zero(&self.domain);
        for (labels, n) in x.terms() {
            out.add_term(self.restrict_labels(labels), n);
        }
        Ok(out)
    }

    /// Induction H → G: each irreducible σ of H goes to the sum of the
    /// irreducibles of G restricting to σ.
    pub fn induce(&self, x: &RepRingElement) -> Result<RepRingElement> {
        self.domain.check_same(x.group())?;
        let mut fibres: HashMap<Vec<u64>, Vec<Vec<u64>>> = HashMap::new();
        for pi in self.ambient.irreps() {
            fibres.entry(self.restrict_labels(pi.labels())).or_default().push(pi.labels().to_vec());
        }
        let mut out = RepRingElement::zero(&self.ambient);
        for (sigma, n) in x.terms() {
            for pi in fibres.get(sigma).into_iter().flatten() {
                out.add_term(pi.clone(), n);
            }
        }
        Ok(out)
    }

    pub fn quotient(&self) -> Quotient {
        Quotient::new(self)
    }

    /// The H-invariant part, as a virtual character of G/H.
    pub fn invariants(&self, x: &RepRingElement) -> Result<RepRingElement> {
        self.ambient.check_same(x.group())?;
        let q = self.quotient();
        let trivial = vec![0u64; self.domain.rank()];
        let mut out = RepRingElement::zero(&q.group);
        for (labels, n) in x.terms() {
            if self.restrict_labels(labels) == trivial {
                out.add_term(q.descend_labels(labels), n);
            }
        }
        Ok(out)
    }

    /// av(f)(Hg) = (1/|H|) Σ_{h∈H} f(hg), a class function on G/H.
    pub fn average(&self, f: &ClassFunction) -> Result<ClassFunction> {
        self.ambient.check_same(f.group())?;
        let q = self.quotient();
        let members: Vec<Vec<u64>> = (0..self.domain.order()).map(|i| self.map_coords(&self.domain.coords_of(i))).collect();
        let weight = rat(1, self.domain.order() as i64);
        let values = (0..q.group.order())
            .map(|i| {
                let g = q.lift(&q.group.coords_of(i));
                let sum = members.iter().try_fold(Cyclotomic::zero(), |acc, h| {
                    acc.checked_add(f.value_at_index(self.ambient.index_of(&self.ambient.add_coords(h, &g))))
                })?;
                Ok(sum.scale(&weight))
            })
            .collect::<Result<Vec<_>>>()?;
        ClassFunction::new(&q.group, values)
    }
}

/// G/H in invariant-factor form, with the projection and a section on
/// generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: FiniteAbelianGroup,
    group: FiniteAbelianGroup,
    // column j maps ambient coordinates to quotient coordinate j
    projection: Vec<Vec<i64>>,
    lifts: Vec<Vec<u64>>,
}

impl Quotient {
    fn new(emb: &Embedding) -> Self {
        let g = &emb.ambient;
        let m = g.rank();
        let mut rows: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { g.orders()[i] as i64 } else { 0 }).collect())
            .collect();
        rows.extend(emb.images.iter().map(|img| img.iter().map(|&x| x as i64).collect()));
        let snf = IntMatrix::from_rows(m, &rows).expect("rectangular").smith_normal_form();
        let mut orders = Vec::new();
        let mut projection = Vec::new();
        let mut lifts = Vec::new();
        for (i, &d) in snf.diagonal().iter().enumerate() {
            if d == 1 {
                continue;
            }
            orders.push(d as u64);
            projection.push((0..m).map(|r| snf.v[(r, i)]).collect());
            lifts.push(g.reduce(snf.v_inv.row(i)).expect("rank matches"));
        }
        if orders.is_empty() {
            orders.push(1);
            projection.push(vec![0; m]);
            lifts.push(vec![0; m]);
        }
        let group = FiniteAbelianGroup::new(orders).expect("quotient of a valid group");
        Quotient { ambient: g.clone(), group, projection, lifts }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn project(&self, g: &[u64]) -> Vec<u64> {
        self.projection
            .iter()
            .zip(self.group.orders())
            .map(|(col, &d)| {
                let s: i128 = col.iter().zip(g).map(|(&a, &x)| a as i128 * x as i128).sum();
                s.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// Some preimage of a quotient element.
    pub fn lift(&self, q: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.ambient.rank()];
        for (&c, l) in q.iter().zip(&self.lifts) {
            out = self.ambient.add_coords(&out, &self.ambient.scale_coords(l, c as i64));
        }
        out
    }

    /// Label over G/H of a character of G that is trivial on H.
    fn descend_labels(&self, labels: &[u64]) -> Vec<u64> {
        let n = self.ambient.exponent();
        self.lifts
            .iter()
            .zip(self.group.orders())
            .map(|(l, &d)| {
                let e = self.ambient.pairing_exponent(labels, l);
                (e * d / n) % d
            })
            .collect()
    }
}
