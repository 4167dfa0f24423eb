//! The Jacobian syzygy module `AR(f) = { (a, b, c) : a f_x + b f_y + c f_z = 0 }`.

use num_traits::Zero;

use super::Derivation3;
use crate::arrangement::Arrangement;
use crate::exactalg::{monomial_count, monomial_exponents, HomPoly, QMatrix, Rational};

/// The defining polynomial and its partial derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianRow {
    pub f: HomPoly,
    pub fx: HomPoly,
    pub fy: HomPoly,
    pub fz: HomPoly,
}

impl JacobianRow {
    /// # Panics
    /// If the Euler identity fails, which would mean broken arithmetic.
    pub fn new(a: &Arrangement) -> Self {
        let f = a.defining_polynomial();
        let row = JacobianRow { fx: f.derivative(0), fy: f.derivative(1), fz: f.derivative(2), f };
        assert!(row.euler_holds(), "Euler identity failed");
        row
    }

    /// `x f_x + y f_y + z f_z = deg(f) f`.
    pub fn euler_holds(&self) -> bool {
        let d = self.f.degree();
        if d == 0 {
            return true;
        }
        let lhs = &(&(&HomPoly::var(3, 0) * &self.fx) + &(&HomPoly::var(3, 1) * &self.fy))
            + &(&HomPoly::var(3, 2) * &self.fz);
        lhs == self.f.scale(&Rational::from_integer(d.into()))
    }

    pub fn partials(&self) -> [&HomPoly; 3] {
        [&self.fx, &self.fy, &self.fz]
    }

    /// The linear system of `AR(f)_k`: one row per monomial of degree `k + |A| - 1`.
    fn system(&self, k: usize) -> QMatrix {
        let n = monomial_count(3, k);
        let target_deg = k + self.fx.degree();
        let mut m = QMatrix::zeros(monomial_count(3, target_deg), 3 * n);
        let exps = monomial_exponents(3, k);
        for (i, p) in self.partials().into_iter().enumerate() {
            for (j, e) in exps.iter().enumerate() {
                let col = p.mul_monomial(e);
                for (r, c) in col.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        m.set(r, i * n + j, c.clone());
                    }
                }
            }
        }
        m
    }

    pub fn syzygy_space(&self, k: usize) -> Vec<Vec<Rational>> {
        self.system(k).kernel_basis()
    }
}

pub fn ar_basis(a: &Arrangement, k: usize) -> Vec<Derivation3> {
    JacobianRow::new(a).syzygy_space(k).iter().map(|v| Derivation3::from_vector(k, v)).collect()
}

pub fn ar_dim(a: &Arrangement, k: usize) -> usize {
    crate::coverage::hit(crate::coverage::Op::ArDim);
    let row = JacobianRow::new(a);
    3 * monomial_count(3, k) - row.system(k).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let single = Arrangement::from_int_rows(None, &[[1, 0, 0]]).unwrap();
        assert_eq!(ar_dim(&single, 0), 2);
        let g = Arrangement::from_int_rows(None, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        assert_eq!(ar_dim(&g, 1), 0);
        assert_eq!(ar_dim(&g, 2), 3);
        let row = JacobianRow::new(&g);
        for t in ar_basis(&g, 2) {
            assert!(t.apply_poly(&row.f).is_zero());
        }
    }
}
