//! Graded pieces, exponents and bases of `D(M)` for a multiarrangement `M`.

use num_traits::{One, Zero};

use super::{Derivation2, Exponents, LinearForm2, Multiarrangement2};
use crate::error::{Error, Result};
use crate::exactalg::{monomial_exponents, HomPoly, QMatrix, Rational, RowSpace};

/// Coordinates `(A, B)` with `A = alpha`: images of `s, t` as forms in `A, B`.
fn adapted_images(form: &LinearForm2) -> [HomPoly; 2] {
    let [a, b] = form.coeffs();
    let (zero, one) = (Rational::zero(), Rational::one());
    if !a.is_zero() {
        [HomPoly::linear(&[one.clone() / a, -b / a]), HomPoly::linear(&[zero, one])]
    } else {
        [HomPoly::linear(&[zero, one.clone()]), HomPoly::linear(&[one / b, Rational::zero()])]
    }
}

/// Rows `r_i` such that a degree-`k` form `g` is divisible by `alpha^m` iff
/// `r_i . g = 0` for all `i`: the coefficients of `A^i B^(k-i)`, `i < m`.
fn divisibility_rows(form: &LinearForm2, m: usize, k: usize) -> Vec<Vec<Rational>> {
    let images = adapted_images(form);
    let n = k + 1;
    let m = m.min(n);
    let mut rows = vec![vec![Rational::zero(); n]; m];
    for (j, e) in monomial_exponents(2, k).iter().enumerate() {
        let mono = HomPoly::monomial(2, &e[..2], Rational::one()).expect("monomial");
        let t = mono.compose_linear(&images);
        for (i, row) in rows.iter_mut().enumerate() {
            // In two variables the coefficient of A^i B^(k-i) sits at index k - i.
            row[j] = t.coeffs()[k - i].clone();
        }
    }
    rows
}

pub fn divisible_by_power(g: &HomPoly, form: &LinearForm2, m: usize) -> bool {
    divisibility_rows(form, m, g.degree())
        .iter()
        .all(|r| r.iter().zip(g.coeffs()).map(|(a, b)| a * b).sum::<Rational>().is_zero())
}

/// `theta(alpha)` divisible by `alpha^m(alpha)` for every form.
pub fn is_member(theta: &Derivation2, m: &Multiarrangement2) -> bool {
    m.iter().all(|(f, mu)| divisible_by_power(&theta.apply(f), f, mu))
}

/// The degree-`k` piece `D(M)_k` as a kernel basis of stacked `[p; q]` vectors.
#[derive(Clone, Debug)]
pub struct DerivSpace {
    pub degree: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl DerivSpace {
    pub fn compute(m: &Multiarrangement2, k: usize) -> Self {
        crate::coverage::hit(crate::coverage::Op::DerivDim);
        let n = k + 1;
        let mut rows = Vec::new();
        for (f, mu) in m.iter() {
            let [a, b] = f.coeffs();
            for r in divisibility_rows(f, mu, k) {
                let mut full: Vec<Rational> = r.iter().map(|c| c * a).collect();
                full.extend(r.iter().map(|c| c * b));
                rows.push(full);
            }
        }
        let basis = if rows.is_empty() {
            QMatrix::identity(2 * n).row_iter().map(<[Rational]>::to_vec).collect()
        } else {
            QMatrix::from_rows(2 * n, rows).kernel_basis()
        };
        DerivSpace { degree: k, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn derivations(&self) -> Vec<Derivation2> {
        self.basis.iter().map(|v| Derivation2::from_vector(self.degree, v)).collect()
    }
}

pub fn deriv_dim(m: &Multiarrangement2, k: usize) -> usize {
    DerivSpace::compute(m, k).dim()
}

pub fn deriv_basis(m: &Multiarrangement2, k: usize) -> Vec<Derivation2> {
    DerivSpace::compute(m, k).derivations()
}

/// Reads `(e1, e2)` off the graded dimensions and certifies the rank two
/// free pattern.
pub fn exponents(m: &Multiarrangement2) -> Result<Exponents> {
    crate::coverage::hit(crate::coverage::Op::Exponents);
    let total = m.total();
    let mut dims = Vec::new();
    let mut e1 = None;
    let mut e2 = None;
    for k in 0..=total {
        let d = deriv_dim(m, k);
        dims.push(d);
        match e1 {
            None if d == 1 => e1 = Some(k),
            None if d >= 2 => {
                e1 = Some(k);
                e2 = Some(k);
            }
            Some(a) if d > k + 1 - a => e2 = Some(k),
            _ => {}
        }
        if e2.is_some() {
            break;
        }
    }
    let fail = |why: &str| Error::FreenessCertificateFailure(format!("{why}; dimensions {dims:?}"));
    let (Some(e1), Some(e2)) = (e1, e2) else {
        return Err(fail("no second generator up to |m|"));
    };
    let exps = Exponents { e1, e2 };
    if exps.sum() != total {
        return Err(fail("exponents do not sum to |m|"));
    }
    for (k, &d) in dims.iter().enumerate() {
        if d != exps.graded_dim(k) {
            return Err(fail("dimension sequence is not that of a free module"));
        }
    }
    if deriv_dim(m, e2 + 1) != exps.graded_dim(e2 + 1) {
        return Err(fail("dimension past e2 is not that of a free module"));
    }
    Ok(exps)
}

/// A homogeneous basis `(theta1, theta2)` of degrees `(e1, e2)`, certified by
/// the Saito determinant.
pub fn basis(m: &Multiarrangement2) -> Result<(Derivation2, Derivation2)> {
    crate::coverage::hit(crate::coverage::Op::Basis);
    let exps = exponents(m)?;
    let low = DerivSpace::compute(m, exps.e1);
    let theta1 = Derivation2::from_vector(exps.e1, &low.basis[0]);
    let high = if exps.e1 == exps.e2 { low } else { DerivSpace::compute(m, exps.e2) };
    let shift = exps.e2 - exps.e1;
    let mut span = RowSpace::new(2 * (exps.e2 + 1));
    for e in monomial_exponents(2, shift) {
        let mono = HomPoly::monomial(2, &e[..2], Rational::one()).expect("monomial");
        span.insert(&theta1.mul_poly(&mono).to_vector());
    }
    let v = high
        .basis
        .iter()
        .find(|v| !span.contains(v))
        .ok_or_else(|| Error::FreenessCertificateFailure("no second basis element".into()))?;
    let theta2 = Derivation2::from_vector(exps.e2, v);
    if !saito_check(&theta1, &theta2, m) {
        return Err(Error::FreenessCertificateFailure("basis fails the Saito determinant test".into()));
    }
    Ok((theta1, theta2))
}

/// Both derivations lie in `D(M)`, their degrees add up to `|m|` and their
/// determinant is a nonzero multiple of the defining polynomial of `M`.
pub fn saito_check(theta1: &Derivation2, theta2: &Derivation2, m: &Multiarrangement2) -> bool {
    crate::coverage::hit(crate::coverage::Op::SaitoCheck);
    if theta1.degree() + theta2.degree() != m.total() {
        return false;
    }
    if !is_member(theta1, m) || !is_member(theta2, m) {
        return false;
    }
    let det = theta1.det(theta2);
    let q = m.defining_polynomial();
    let Some(i) = q.coeffs().iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let c = &det.coeffs()[i] / &q.coeffs()[i];
    !c.is_zero() && det == q.scale(&c)
}
