//! Dense exact linear algebra.
//!
//! Elimination runs on integer rows: each rational row is scaled by the lcm of
//! its denominators, rows are combined fraction-free and divided by their
//! content after every update, and the pivot in each column is the candidate
//! entry of smallest bit length. Rational normalization happens only when the
//! reduced echelon form is read out, so results do not depend on pivot choice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{bit_size, common_denominator, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.row_iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn rref(&self) -> Rref {
        Rref::of_rows(self.cols, self.row_iter().map(|r| r.to_vec()).collect())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right null space, read off the reduced echelon form: one
    /// vector per free column (ascending), with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.rref().kernel_basis()
    }
}

/// Reduced row echelon form with rational entries and unit pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn of_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let int_rows = rows.iter().map(|r| to_int_row(r)).collect();
        let (ints, pivots) = reduce(int_rows, cols);
        let rows = ints
            .into_iter()
            .zip(&pivots)
            .map(|(r, &p)| {
                let piv = Rational::from_integer(r[p].clone());
                r.into_iter().map(|a| Rational::from_integer(a) / &piv).collect()
            })
            .collect();
        Rref { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        crate::coverage::hit(crate::coverage::Op::KernelBasis);
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![Rational::zero(); self.cols];
                v[j] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[j].clone();
                }
                v
            })
            .collect()
    }
}

pub(crate) fn to_int_row(r: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(r);
    r.iter().map(|q| if q.is_zero() { BigInt::zero() } else { q.numer() * (&den / q.denom()) }).collect()
}

fn make_primitive(r: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for a in r.iter() {
        if !a.is_zero() {
            g = g.gcd(a);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for a in r.iter_mut() {
        if !a.is_zero() {
            *a = &*a / &g;
        }
    }
}

/// `target <- piv * target - factor * source`, then divides out the content.
fn eliminate(target: &mut [BigInt], source: &[BigInt], piv: &BigInt, factor: &BigInt, from: usize) {
    for j in from..target.len() {
        let s = &source[j];
        let t = &mut target[j];
        if s.is_zero() {
            if !t.is_zero() {
                *t *= piv;
            }
        } else if t.is_zero() {
            *t = -(factor * s);
        } else {
            *t = &*t * piv - factor * s;
        }
    }
    make_primitive(target);
}

/// Gauss–Jordan on integer rows. Returns the nonzero reduced rows (each pivot
/// column is zero outside its row) and the pivot columns, in increasing order.
pub(crate) fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == rows.len() {
            break;
        }
        let choice = (top..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| bit_size(&rows[i][c]));
        let Some(i) = choice else { continue };
        rows.swap(top, i);
        let (head, tail) = rows.split_at_mut(top);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        if prow[c].is_negative() {
            for a in prow.iter_mut() {
                *a = -&*a;
            }
        }
        let piv = prow[c].clone();
        for r in head.iter_mut().chain(rest.iter_mut()) {
            if r[c].is_zero() {
                continue;
            }
            let g = piv.gcd(&r[c]);
            let pm = &piv / &g;
            let fm = &r[c] / &g;
            eliminate(r, prow, &pm, &fm, 0);
        }
        pivots.push(c);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

/// An incrementally grown row space, kept in reduced echelon form over the
/// integers. Used to pick vectors independent of a given span.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduced(&self, v: &[Rational]) -> Vec<BigInt> {
        let mut r = to_int_row(v);
        make_primitive(&mut r);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let g = row[p].gcd(&r[p]);
            let pm = &row[p] / &g;
            let fm = &r[p] / &g;
            eliminate(&mut r, row, &pm, &fm, 0);
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduced(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false (and leaves the space unchanged) when `v` is
    /// already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut r = self.reduced(v);
        let Some(p) = r.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        if r[p].is_negative() {
            for a in r.iter_mut() {
                *a = -&*a;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let g = r[p].gcd(&row[p]);
            let pm = &r[p] / &g;
            let fm = &row[p] / &g;
            eliminate(row, &r, &pm, &fm, 0);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Inserts many vectors and returns the dimension gained.
    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a Vec<Rational>>) -> usize {
        vs.into_iter().filter(|v| self.insert(v)).count()
    }
}

/// Rank of a family of vectors of common length `cols`.
pub fn rank_of(cols: usize, vectors: &[Vec<Rational>]) -> usize {
    Rref::of_rows(cols, vectors.to_vec()).rank()
}

/// Solves `sum_i c_i * basis[i] = target` when the basis vectors are linearly
/// independent; `None` when `target` is outside their span.
pub fn coordinates(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = target.len();
    let k = basis.len();
    // Columns are basis vectors, augmented with target.
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let rref = Rref::of_rows(k + 1, rows);
    if rref.pivots().contains(&k) || rref.rank() < k {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
        c[p] = row[k].clone();
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{rat, ratio};

    fn m(rows: &[&[i64]]) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        QMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&a| rat(a)).collect()).collect())
    }

    #[test]
    fn kernels_of_small_matrices() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(QMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let k = m(&[&[1, 1, 0], &[0, 0, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1), rat(0)]]);
    }

    #[test]
    fn rref_is_pivot_order_independent() {
        let a = m(&[&[2, 4, 1], &[3, 6, 5], &[1, 2, 0]]);
        let b = m(&[&[1, 2, 0], &[3, 6, 5], &[2, 4, 1]]);
        assert_eq!(a.rref(), b.rref());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn row_space_and_coordinates() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&[rat(1), rat(2), rat(3)]));
        assert!(!rs.insert(&[rat(2), rat(4), rat(6)]));
        assert!(rs.insert(&[ratio(1, 2), rat(0), rat(1)]));
        assert!(rs.contains(&[rat(3), rat(4), rat(8)]));
        let c = coordinates(&[vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]], &[rat(2), rat(3), rat(5)])
            .unwrap();
        assert_eq!(c, vec![rat(2), rat(3)]);
        assert!(coordinates(&[vec![rat(1), rat(0), rat(0)]], &[rat(0), rat(1), rat(0)]).is_none());
    }
}
