//! Intersection lattice: points, multiplicities and the characteristic polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Arrangement, LinearForm3};
use crate::error::Result;
use crate::exactalg::{format_rational, Rational};

/// A point of the projective plane scaled so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([Rational; 3]);

impl ProjPoint {
    pub fn new(coords: [Rational; 3]) -> Option<Self> {
        let last = coords.iter().rev().find(|c| !c.is_zero())?.clone();
        Some(ProjPoint(coords.map(|c| c / &last)))
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.0
    }

    /// The common zero of two non-proportional forms.
    pub fn meet(a: &LinearForm3, b: &LinearForm3) -> Option<Self> {
        let [a0, a1, a2] = a.coeffs();
        let [b0, b1, b2] = b.coeffs();
        ProjPoint::new([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn lies_on(&self, l: &LinearForm3) -> bool {
        l.eval(&self.0).is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "({}:{}:{})", format_rational(a), format_rational(b), format_rational(c))
    }
}

/// A point where at least two lines meet, with the indices of all lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatPoint {
    pub point: ProjPoint,
    pub incident_lines: Vec<usize>,
}

impl FlatPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident_lines.len()
    }

    pub fn contains_line(&self, i: usize) -> bool {
        self.incident_lines.binary_search(&i).is_ok()
    }
}

pub(super) fn compute_points(lines: &[LinearForm3]) -> Vec<FlatPoint> {
    let mut map: BTreeMap<ProjPoint, Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = ProjPoint::meet(&lines[i], &lines[j]).expect("distinct lines meet in a point");
            let entry = map.entry(p).or_default();
            for k in [i, j] {
                if let Err(at) = entry.binary_search(&k) {
                    entry.insert(at, k);
                }
            }
        }
    }
    map.into_iter().map(|(point, incident_lines)| FlatPoint { point, incident_lines }).collect()
}

pub fn intersection_points(a: &Arrangement) -> &[FlatPoint] {
    a.points()
}

/// Number of intersection points on line `h`.
pub fn n_h(a: &Arrangement, h: usize) -> Result<usize> {
    crate::coverage::hit(crate::coverage::Op::NH);
    a.line(h)?;
    Ok(a.points().iter().filter(|p| p.contains_line(h)).count())
}

/// Characteristic polynomial data of a rank at most 3 arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyData {
    pub size: usize,
    pub b2_0: i64,
    /// Coefficients of `chi(t)`, highest degree first.
    pub chi: [i64; 4],
    /// Coefficients of `chi0(t) = t^2 - (|A| - 1) t + b2_0`, highest degree first.
    pub chi0: [i64; 3],
}

impl CharPolyData {
    pub fn eval_chi0(&self, t: i64) -> i64 {
        self.chi0[0] * t * t + self.chi0[1] * t + self.chi0[2]
    }
}

/// `chi(t) = sum mu(X) t^dim(X)` over the lattice, by the Möbius recursion.
pub fn chi0_mobius(a: &Arrangement) -> CharPolyData {
    let n = a.len() as i64;
    let pts = a.points();
    // mu(V) = 1, mu(H) = -1, mu(X) = -(1 - m(X)) for each point.
    let mu_points: Vec<i64> = pts.iter().map(|p| p.multiplicity() as i64 - 1).collect();
    let mut chi = [1, -n, 0, 0];
    // A single point through which every line passes is the top of a rank 2 lattice.
    let rank3 = pts.len() > 1 || (pts.len() == 1 && pts[0].multiplicity() < a.len());
    if rank3 {
        chi[2] = mu_points.iter().sum();
        // The origin lies below everything.
        chi[3] = -(1 - n + chi[2]);
    } else {
        // The top flat is the common line of dimension 1.
        chi[2] = mu_points.iter().sum();
    }
    // Synthetic division by (t - 1).
    let q0 = chi[0];
    let q1 = chi[1] + q0;
    let q2 = chi[2] + q1;
    let rem = chi[3] + q2;
    assert_eq!(rem, 0, "characteristic polynomial must vanish at 1");
    CharPolyData { size: a.len(), b2_0: q2, chi, chi0: [q0, q1, q2] }
}

/// The characteristic polynomial data, cross-checked against the closed form
/// `b2_0 = sum (m(X) - 1) - (|A| - 1)`.
pub fn chi0(a: &Arrangement) -> CharPolyData {
    crate::coverage::hit(crate::coverage::Op::Chi0);
    let data = chi0_mobius(a);
    let excess: i64 = a.points().iter().map(|p| p.multiplicity() as i64 - 1).sum();
    let closed = excess - (a.len() as i64 - 1);
    assert_eq!(data.b2_0, closed, "Möbius and closed form disagree");
    assert_eq!(data.chi0[1], -(a.len() as i64 - 1));
    data
}

/// Outcome of the balancedness test with every violating (line, point) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Balance {
    pub balanced: bool,
    /// Pairs `(line index, index into the sorted intersection points)`.
    pub violations: Vec<(usize, usize)>,
}

/// Checks `m(X) - 1 <= (|A| - 1) / 2` on every line through every point.
pub fn is_balanced(a: &Arrangement) -> Balance {
    crate::coverage::hit(crate::coverage::Op::IsBalanced);
    let bound = a.len() as i64 - 1;
    let mut violations = Vec::new();
    for (xi, p) in a.points().iter().enumerate() {
        if 2 * (p.multiplicity() as i64 - 1) > bound {
            for &h in &p.incident_lines {
                violations.push((h, xi));
            }
        }
    }
    violations.sort_unstable();
    Balance { balanced: violations.is_empty(), violations }
}

/// `chi0(t) = (t - n)(t - n - r) + c` with `2n + r = |A| - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRForm {
    pub n: i64,
    pub r: i64,
    pub c: i64,
}

/// Picks the largest `n` in `[0, (|A| - 1) / 2]` with `n (n + r) <= b2_0`; the
/// residual is reported, not required to be 1.
pub fn nr_form(a: &Arrangement) -> NRForm {
    crate::coverage::hit(crate::coverage::Op::NrForm);
    nr_form_of(a.len() as i64 - 1, chi0(a).b2_0)
}

pub(crate) fn nr_form_of(big_n: i64, b: i64) -> NRForm {
    let n = (0..=big_n / 2).rev().find(|n| n * (big_n - n) <= b).unwrap_or(0);
    let r = big_n - 2 * n;
    NRForm { n, r, c: b - n * (n + r) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(rows: &[[i64; 3]]) -> Arrangement {
        Arrangement::from_int_rows(None, rows).unwrap()
    }

    fn generic4() -> Arrangement {
        arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    }

    #[test]
    fn generic_points() {
        let a = generic4();
        assert_eq!(a.points().len(), 6);
        assert!(a.points().iter().all(|p| p.multiplicity() == 2));
        assert_eq!(chi0(&a).b2_0, 3);
        assert_eq!(n_h(&a, 2).unwrap(), 3);
        assert!(is_balanced(&a).balanced);
        assert_eq!(nr_form(&a), NRForm { n: 1, r: 1, c: 1 });
    }

    #[test]
    fn pencil() {
        let a = arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        assert_eq!(a.points().len(), 1);
        assert_eq!(a.points()[0].multiplicity(), 3);
        let c = chi0(&a);
        assert_eq!(c.chi0, [1, -2, 0]);
        assert_eq!(c.chi, [1, -3, 2, 0]);
        assert_eq!(nr_form(&a), NRForm { n: 0, r: 2, c: 0 });
    }

    #[test]
    fn generic_three_and_single() {
        let c = chi0(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(c.chi0, [1, -2, 1]);
        let c = chi0(&arr(&[[1, 2, 3]]));
        assert_eq!(c.chi0, [1, 0, 0]);
    }

    #[test]
    fn counter_example_counts() {
        // xyz(x+4y)(x+5y+z)(y+z)
        let a = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 4, 0], [1, 5, 1], [0, 1, 1]]);
        // x + 4y, x + 5y + z and y + z are concurrent, so x + 4y carries only 3 points.
        let counts: Vec<usize> = (0..6).map(|i| n_h(&a, i).unwrap()).collect();
        assert_eq!(counts, vec![4, 3, 4, 3, 4, 3]);
        assert_eq!(chi0(&a).b2_0, 7);
        assert_eq!(nr_form(&a), NRForm { n: 2, r: 1, c: 1 });
        assert!(n_h(&a, 6).is_err());
    }

    #[test]
    fn near_pencil_unbalanced() {
        let a = arr(&[[0, 1, 0], [1, 0, 0], [1, 1, 0], [1, 2, 0], [1, 3, 0], [0, 0, 1]]);
        let b = is_balanced(&a);
        assert!(!b.balanced);
        assert_eq!(b.violations.len(), 5);
    }

    #[test]
    fn projective_scaling() {
        let p = ProjPoint::new([crate::exactalg::rat(2), crate::exactalg::rat(4), crate::exactalg::rat(0)]).unwrap();
        assert_eq!(p.to_string(), "(1/2:1:0)");
    }
}
