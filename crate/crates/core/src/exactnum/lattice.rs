use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sublattice of Z^n given by generators, kept in row echelon form so that
/// membership can be decided exactly.
#[derive(Clone, Debug)]
pub struct IntLattice {
    dim: usize,
    // echelon rows with strictly increasing pivot columns and positive pivots
    rows: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn new(dim: usize) -> Self {
        IntLattice { dim, rows: Vec::new() }
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut lattice = Self::new(dim);
        for g in gens {
            lattice.insert(g);
        }
        lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot(row: &[BigInt]) -> Option<usize> {
        row.iter().position(|x| !x.is_zero())
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "generator has the wrong dimension");
        let mut idx = 0;
        while let Some(p) = Self::pivot(&v) {
            while idx < self.rows.len() && Self::pivot(&self.rows[idx]).unwrap() < p {
                idx += 1;
            }
            if idx == self.rows.len() || Self::pivot(&self.rows[idx]).unwrap() > p {
                if v[p].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(idx, v);
                return;
            }
            // same pivot column: replace the pair by (gcd row, eliminated row)
            let row = &self.rows[idx];
            let (a, b) = (&row[p], &v[p]);
            let ext = a.extended_gcd(b);
            let (x, y, g) = (ext.x, ext.y, ext.gcd);
            let (ra, rb) = (a / &g, b / &g);
            let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, w)| &x * r + &y * w).collect();
            let rest: Vec<BigInt> = row.iter().zip(&v).map(|(r, w)| &ra * w - &rb * r).collect();
            self.rows[idx] = new_row;
            if self.rows[idx][p].is_negative() {
                self.rows[idx].iter_mut().for_each(|x| *x = -&*x);
            }
            v = rest;
            idx += 1;
        }
    }

    /// Decides whether `v` is an integer combination of the generators.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim, "vector has the wrong dimension");
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = Self::pivot(row).unwrap();
            // entries left of p are already zero
            if let Some(q) = Self::pivot(&v) {
                if q < p {
                    return false;
                }
            } else {
                return true;
            }
            if v[p].is_zero() {
                continue;
            }
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Index of the lattice in Z^n when it has full rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.dim).then(|| self.rows.iter().enumerate().fold(BigInt::one(), |acc, (i, r)| acc * &r[i]))
    }
}
