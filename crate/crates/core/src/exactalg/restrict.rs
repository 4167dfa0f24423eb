//! Restriction of forms in `x, y, z` to a plane through the origin.

use num_traits::{Signed, Zero};

use super::poly::HomPoly;
use super::rational::Rational;

/// Elimination parametrization of the plane `a x + b y + c z = 0`: one
/// coordinate is expressed through the two retained ones, which become the
/// coordinates `(s, t)` of the plane (in their original order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    eliminated: usize,
    retained: [usize; 2],
    /// Images of `x, y, z` as linear forms in `(s, t)`.
    images: [HomPoly; 3],
}

const NAMES: [&str; 3] = ["x", "y", "z"];

impl Parametrization {
    /// Eliminates the coordinate whose coefficient has the largest magnitude,
    /// preferring `z`, then `y`, then `x` on ties.
    ///
    /// # Panics
    /// On the zero form.
    pub fn eliminating_largest(coeffs: &[Rational; 3]) -> Self {
        let mut best: Option<usize> = None;
        for i in [2, 1, 0] {
            if coeffs[i].is_zero() {
                continue;
            }
            match best {
                Some(b) if coeffs[i].abs() <= coeffs[b].abs() => {}
                _ => best = Some(i),
            }
        }
        let e = best.expect("nonzero linear form");
        Self::eliminating(coeffs, e)
    }

    /// Eliminates coordinate `e`, whose coefficient must be nonzero.
    pub fn eliminating(coeffs: &[Rational; 3], e: usize) -> Self {
        assert!(!coeffs[e].is_zero(), "cannot eliminate a coordinate with zero coefficient");
        let retained: [usize; 2] = match e {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let zero = Rational::zero();
        let mut images: [HomPoly; 3] = std::array::from_fn(|_| HomPoly::linear(&[zero.clone(), zero.clone()]));
        for (slot, &r) in retained.iter().enumerate() {
            let mut c = [zero.clone(), zero.clone()];
            c[slot] = Rational::from_integer(1.into());
            images[r] = HomPoly::linear(&c);
        }
        let c: Vec<Rational> = retained.iter().map(|&r| -&coeffs[r] / &coeffs[e]).collect();
        images[e] = HomPoly::linear(&c);
        Parametrization { eliminated: e, retained, images }
    }

    pub fn eliminated(&self) -> usize {
        self.eliminated
    }

    pub fn retained(&self) -> [usize; 2] {
        self.retained
    }

    pub fn images(&self) -> &[HomPoly; 3] {
        &self.images
    }

    /// Names of the plane coordinates, e.g. `["x", "y"]` for `z = 0`.
    pub fn coordinate_names(&self) -> [&'static str; 2] {
        [NAMES[self.retained[0]], NAMES[self.retained[1]]]
    }

    /// Coefficients of the eliminated coordinate in terms of the retained ones.
    pub fn elimination_coeffs(&self) -> &[Rational] {
        self.images[self.eliminated].coeffs()
    }
}

/// Restricts a form in three variables to the plane.
pub fn substitute_line(p: &HomPoly, h: &Parametrization) -> HomPoly {
    crate::coverage::hit(crate::coverage::Op::SubstituteLine);
    p.compose_linear(&h.images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn p3(s: &str) -> HomPoly {
        HomPoly::parse(s, &['x', 'y', 'z']).unwrap()
    }
    fn p2(s: &str) -> HomPoly {
        HomPoly::parse(s, &['s', 't']).unwrap()
    }

    #[test]
    fn examples() {
        let z0 = Parametrization::eliminating_largest(&[rat(0), rat(0), rat(1)]);
        assert_eq!(z0.coordinate_names(), ["x", "y"]);
        assert_eq!(substitute_line(&p3("x+5y+z"), &z0), p2("s+5t"));
        assert!(substitute_line(&p3("z"), &z0).is_zero());

        // x + y + z = 0: all ties, eliminate z.
        let h = Parametrization::eliminating_largest(&[rat(1), rat(1), rat(1)]);
        assert_eq!(h.eliminated(), 2);
        let h = Parametrization::eliminating(&[rat(1), rat(1), rat(1)], 0);
        assert_eq!(substitute_line(&p3("x^2"), &h), p2("(s+t)^2"));
        assert!(substitute_line(&p3("x+y+z"), &h).is_zero());
    }

    #[test]
    fn largest_magnitude_wins() {
        let h = Parametrization::eliminating_largest(&[rat(-7), rat(2), rat(3)]);
        assert_eq!(h.eliminated(), 0);
        assert_eq!(h.retained(), [1, 2]);
    }
}
