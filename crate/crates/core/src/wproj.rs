//! Equivariant line bundles on the orbifold `[CP¹/(Z/k)]`.
//!
//! `Z/k` acts on `CP¹` by `u ↦ ξu`. The bundle `L_{l,h}` has fibre weight `l` at
//! `u = 0`, weight `−h` at `v = 1/u = 0` and degree `l + h`. Its sections are
//! spanned by the monomials `u^s`, `0 ≤ s ≤ l + h`, on which the generator acts
//! by `ξ^{l−s}`; Serre duality with `K = L_{−1,−1}` gives `H¹`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, IntMatrix, SmithForm};
use crate::grouprep::{FiniteAbelianGroup, RepRingElement};

/// `L_{l,h}` over `Z/k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivLineBundle {
    k: u64,
    l: i64,
    h: i64,
}

impl EquivLineBundle {
    pub fn new(k: u64, l: i64, h: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidGroup("Z/0".into()));
        }
        Ok(EquivLineBundle { k, l, h })
    }

    pub fn trivial(k: u64) -> Result<Self> {
        Self::new(k, 0, 0)
    }

    pub fn canonical(k: u64) -> Result<Self> {
        Self::new(k, -1, -1)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn degree(&self) -> i64 {
        self.l + self.h
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(self.k)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_k(self.k, other.k)?;
        Ok(EquivLineBundle { k: self.k, l: self.l + other.l, h: self.h + other.h })
    }

    pub fn dual(&self) -> Self {
        EquivLineBundle { k: self.k, l: -self.l, h: -self.h }
    }
}

impl fmt::Display for EquivLineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{{{},{}}}", self.l, self.h)
    }
}

fn check_k(a: u64, b: u64) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::mismatch(format!("Z/{a}"), format!("Z/{b}")))
    }
}

/// `Σ_{s=0}^{n−1} [w₀ + step·s]` over `Z/k`, counted per residue.
fn arithmetic_sum(k: u64, n: i64, w0: i64, step: i64) -> RepRingElement {
    let group = FiniteAbelianGroup::cyclic(k);
    let mut x = RepRingElement::zero(&group);
    if n <= 0 {
        return x;
    }
    let k = k as i64;
    for r in 0..k {
        // s with w0 + step·s ≡ r, step = ±1
        let s0 = ((r - w0) * step).rem_euclid(k);
        if s0 < n {
            x.add_term(vec![r as u64], (n - 1 - s0) / k + 1);
        }
    }
    x
}

/// Range bounds of the cohomology formulas. The standard rules are the
/// default; the shifts exist so that golden values can be shown to detect an
/// off-by-one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CohomologyRules {
    pub h0_upper_shift: i64,
    pub h1_upper_shift: i64,
}

impl CohomologyRules {
    pub const STANDARD: CohomologyRules = CohomologyRules { h0_upper_shift: 0, h1_upper_shift: 0 };

    /// `H⁰(L_{l,h}) = ⊕_{s=0}^{l+h} [l−s]`.
    pub fn h0(&self, b: &EquivLineBundle) -> RepRingElement {
        arithmetic_sum(b.k, b.degree() + 1 + self.h0_upper_shift, b.l, -1)
    }

    /// `H¹(L_{l,h}) = ⊕_{s=0}^{−l−h−2} [l+s+1]`.
    pub fn h1(&self, b: &EquivLineBundle) -> RepRingElement {
        arithmetic_sum(b.k, -b.degree() - 1 + self.h1_upper_shift, b.l + 1, 1)
    }

    /// The equivariant index `H⁰ − H¹` of the Dolbeault operator.
    pub fn index(&self, b: &EquivLineBundle) -> RepRingElement {
        self.h0(b).sub(&self.h1(b)).expect("same group")
    }

    /// `(L, L') = Tr_G index(L ⊗ L')`.
    pub fn intersection(&self, a: &EquivLineBundle, b: &EquivLineBundle) -> Result<i64> {
        Ok(self.index(&a.tensor(b)?).trace())
    }

    pub fn pairing_matrix(&self, basis: &[EquivLineBundle]) -> Result<IntMatrix> {
        if let Some(first) = basis.first() {
            for b in basis {
                check_k(first.k, b.k)?;
            }
        }
        let mut m = IntMatrix::zeros(basis.len(), basis.len());
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                m[(i, j)] = self.intersection(a, b)?;
            }
        }
        Ok(m)
    }
}

pub fn h0(b: &EquivLineBundle) -> RepRingElement {
    CohomologyRules::STANDARD.h0(b)
}

pub fn h1(b: &EquivLineBundle) -> RepRingElement {
    CohomologyRules::STANDARD.h1(b)
}

pub fn index(b: &EquivLineBundle) -> RepRingElement {
    CohomologyRules::STANDARD.index(b)
}

pub fn intersection(a: &EquivLineBundle, b: &EquivLineBundle) -> Result<i64> {
    CohomologyRules::STANDARD.intersection(a, b)
}

pub fn pairing_matrix(basis: &[EquivLineBundle]) -> Result<IntMatrix> {
    CohomologyRules::STANDARD.pairing_matrix(basis)
}

/// Enumerates monomial sections directly: `u^s` extends over `v = 0` iff it
/// becomes `v^{l+h−s}` with a nonnegative exponent, and carries weight `l − s`.
pub fn h0_bruteforce(b: &EquivLineBundle, bound: i64) -> Result<RepRingElement> {
    let size = b.l.abs() + b.h.abs();
    if size > bound {
        return Err(Error::BoundExceeded(format!("|l|+|h| = {size} > {bound}")));
    }
    let group = b.group();
    let mut x = RepRingElement::zero(&group);
    for s in 0..=size {
        if b.l + b.h - s >= 0 {
            x.add_term(vec![(b.l - s).rem_euclid(b.k as i64) as u64], 1);
        }
    }
    Ok(x)
}

/// Generators of `K⁰([CP¹/(Z/k)])` from the Mayer–Vietoris sequence:
/// `L_{0,0}, L_{0,−k}`, then `L_{−l,0}` and `L_{0,−l}` for `1 ≤ l < k`.
pub fn mv_generators(k: u64) -> Result<Vec<EquivLineBundle>> {
    let mut out = vec![EquivLineBundle::new(k, 0, 0)?, EquivLineBundle::new(k, 0, -(k as i64))?];
    out.extend((1..k as i64).map(|l| EquivLineBundle { k, l: -l, h: 0 }));
    out.extend((1..k as i64).map(|h| EquivLineBundle { k, l: 0, h: -h }));
    Ok(out)
}

/// Restriction to the two fixed points, `K⁰ → R(Z/k) ⊕ R(Z/k)`, as a vector
/// of multiplicities `(χ_0, …, χ_{k−1}, μ_0, …, μ_{k−1})`.
pub fn chart_restriction(b: &EquivLineBundle) -> Vec<i64> {
    let k = b.k as i64;
    let mut v = vec![0; 2 * b.k as usize];
    v[b.l.rem_euclid(k) as usize] += 1;
    v[(k + (-b.h).rem_euclid(k)) as usize] += 1;
    v
}

/// An integer combination of [`mv_generators`]`(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClassCP1 {
    k: u64,
    coords: Vec<i64>,
}

impl KClassCP1 {
    pub fn new(k: u64, coords: Vec<i64>) -> Result<Self> {
        let n = mv_generators(k)?.len();
        if coords.len() != n {
            return Err(Error::Shape(format!("{} coordinates for {n} generators", coords.len())));
        }
        Ok(KClassCP1 { k, coords })
    }

    pub fn generator(k: u64, i: usize) -> Result<Self> {
        let mut coords = vec![0; mv_generators(k)?.len()];
        *coords.get_mut(i).ok_or_else(|| Error::Shape(format!("no generator {i}")))? = 1;
        Ok(KClassCP1 { k, coords })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_k(self.k, other.k)?;
        Ok(KClassCP1 { k: self.k, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, n: i64) -> Self {
        KClassCP1 { k: self.k, coords: self.coords.iter().map(|a| a * n).collect() }
    }

    /// The index, extended linearly from the generators.
    pub fn index(&self) -> Result<RepRingElement> {
        let mut x = RepRingElement::zero(&FiniteAbelianGroup::cyclic(self.k));
        for (b, &c) in mv_generators(self.k)?.iter().zip(&self.coords) {
            x = x.add(&index(b).scale(c))?;
        }
        Ok(x)
    }

    /// The intersection pairing, extended bilinearly.
    pub fn pairing(&self, other: &Self) -> Result<i64> {
        check_k(self.k, other.k)?;
        let a = pairing_matrix(&mv_generators(self.k)?)?;
        let mut total = 0;
        for (i, x) in self.coords.iter().enumerate() {
            for (j, y) in other.coords.iter().enumerate() {
                total += x * a[(i, j)] * y;
            }
        }
        Ok(total)
    }
}

/// `[L_{0,−k}] − [L_{0,0}]`, the image of `1` under the boundary map.
pub fn delta_class(k: u64) -> Result<KClassCP1> {
    let mut coords = vec![0; mv_generators(k)?.len()];
    coords[0] = -1;
    coords[1] = 1;
    KClassCP1::new(k, coords)
}

/// Determinant and Smith form of a pairing matrix, and what they say about the
/// induced `C/Z`-valued pairing on `(C/Z)^n`.
#[derive(Clone, Debug)]
pub struct NondegeneracyReport {
    pub matrix: IntMatrix,
    pub det: i64,
    pub smith: SmithForm,
    pub unimodular: bool,
}

impl NondegeneracyReport {
    /// Diagonal entries of the Smith form other than 1; empty iff unimodular.
    pub fn obstructions(&self) -> Vec<i64> {
        self.smith.diagonal().into_iter().filter(|&d| d != 1).collect()
    }

    /// `A⁻¹ = V·U` when `A` is unimodular.
    pub fn inverse(&self) -> Option<IntMatrix> {
        self.unimodular.then(|| &self.smith.v * &self.smith.u)
    }

    /// Solves `A·x ≡ t (mod Z^n)`; unique modulo `Z^n` when `A` is unimodular.
    pub fn solve_mod_z(&self, target: &[Cyclotomic]) -> Result<Option<Vec<Cyclotomic>>> {
        let n = self.matrix.rows();
        if target.len() != n {
            return Err(Error::Shape(format!("target of length {} for a {n}x{n} pairing", target.len())));
        }
        let Some(inv) = self.inverse() else { return Ok(None) };
        Ok(Some(apply(&inv, target)?))
    }

    /// A vector `x ∉ Z^n` with `A·x ∈ Z^n`, witnessing a kernel of the induced
    /// map, when `A` is not unimodular.
    pub fn kernel_witness(&self) -> Option<Vec<Cyclotomic>> {
        let diag = self.smith.diagonal();
        let n = self.matrix.cols();
        let i = (0..n).find(|&i| diag.get(i).copied().unwrap_or(0) != 1)?;
        let d = diag.get(i).copied().unwrap_or(0);
        let denom = if d == 0 { 2 } else { d };
        let r = crate::exactnum::rat(1, denom);
        Some((0..n).map(|j| Cyclotomic::from_int(self.smith.v[(j, i)]).scale(&r)).collect())
    }
}

/// `A·x` for an integer matrix and a vector of cyclotomic numbers.
pub fn apply(a: &IntMatrix, x: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    if a.cols() != x.len() {
        return Err(Error::Shape(format!("{}x{} matrix applied to a vector of length {}", a.rows(), a.cols(), x.len())));
    }
    (0..a.rows())
        .map(|i| {
            x.iter().enumerate().try_fold(Cyclotomic::zero(), |acc, (j, v)| {
                acc.checked_add(&v.scale(&crate::exactnum::rat(a[(i, j)], 1)))
            })
        })
        .collect()
}

pub fn nondegeneracy_check(basis: &[EquivLineBundle]) -> Result<NondegeneracyReport> {
    let matrix = pairing_matrix(basis)?;
    let det = matrix.det()?;
    let smith = matrix.smith_normal_form();
    let unimodular = det.abs() == 1;
    Ok(NondegeneracyReport { matrix, det, smith, unimodular })
}
