//! Logarithmic derivations of an arrangement: the Jacobian syzygy module, the
//! modules `D_H`, minimal resolutions and the free / nearly free / plus-one
//! generated classification.

mod classify;
mod dh;
mod presenter;
mod syzygy;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, LinearForm3};
use crate::error::{Error, Result};
use crate::exactalg::poly::index_of;
use crate::exactalg::{monomial_count, monomial_exponents, substitute_line, HomPoly, Parametrization, Rational};
use crate::multiarr::Derivation2;

pub use classify::{
    classify, classify_with, minimal_resolution, minimal_resolution_jacobian, Classification, ResolutionShape, Verdict,
};
pub use dh::{dh_basis, dh_dim, DhSystem, ImageLevel, ImageTower};
pub use presenter::hilbert_value;
pub use syzygy::{ar_basis, ar_dim, JacobianRow};

/// Jacobian syzygies are derivations killing the defining polynomial.
pub type SyzygyElement = Derivation3;

/// Safety caps for degree scans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Overrides the default cap of `2 |A|` when set.
    pub max_degree: Option<usize>,
}

impl Limits {
    pub const ENV_VAR: &'static str = "ARRLOG_MAX_DEGREE";

    /// Reads `ARRLOG_MAX_DEGREE`; unparsable values are reported.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|d| Limits { max_degree: Some(d) })
                .map_err(|_| Error::Parse(format!("{} must be a non-negative integer, got {v:?}", Self::ENV_VAR))),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn cap(&self, n_lines: usize) -> usize {
        self.max_degree.unwrap_or(2 * n_lines)
    }
}

/// A homogeneous derivation `a d/dx + b d/dy + c d/dz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation3 {
    comps: [HomPoly; 3],
}

impl Derivation3 {
    pub fn new(comps: [HomPoly; 3]) -> Result<Self> {
        let d = comps[0].degree();
        if comps.iter().any(|c| c.nvars() != 3 || c.degree() != d) {
            return Err(Error::Precondition("derivation components must be forms in x, y, z of one degree".into()));
        }
        Ok(Derivation3 { comps })
    }

    /// Parses components written in `x, y, z`; zero components take the common degree.
    pub fn parse(texts: [&str; 3]) -> Result<Self> {
        let parsed = texts.iter().map(|t| HomPoly::parse(t, &['x', 'y', 'z'])).collect::<Result<Vec<_>>>()?;
        let degree = parsed.iter().find(|p| !p.is_zero()).map_or(0, HomPoly::degree);
        let comps: Vec<HomPoly> =
            parsed.into_iter().map(|p| if p.is_zero() { HomPoly::zero(3, degree) } else { p }).collect();
        Self::new(comps.try_into().expect("three components"))
    }

    /// Reads the stacked coefficient vector of a degree-`k` derivation.
    pub fn from_vector(k: usize, v: &[Rational]) -> Self {
        let n = monomial_count(3, k);
        assert_eq!(v.len(), 3 * n);
        let comps =
            [0, 1, 2].map(|i| HomPoly::from_coeffs(3, k, v[i * n..(i + 1) * n].to_vec()).expect("coefficient count"));
        Derivation3 { comps }
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        self.comps.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn comps(&self) -> &[HomPoly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> usize {
        self.comps[0].degree()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(HomPoly::is_zero)
    }

    /// `theta(alpha)` for a linear form.
    pub fn apply(&self, form: &LinearForm3) -> HomPoly {
        let c = form.coeffs();
        let mut acc = HomPoly::zero(3, self.degree());
        for (ci, comp) in c.iter().zip(&self.comps) {
            if !ci.is_zero() {
                acc = &acc + &comp.scale(ci);
            }
        }
        acc
    }

    /// `theta(f)` for an arbitrary form.
    pub fn apply_poly(&self, f: &HomPoly) -> HomPoly {
        let mut acc: Option<HomPoly> = None;
        for i in 0..3 {
            let t = &self.comps[i] * &f.derivative(i);
            acc = Some(match acc {
                None => t,
                Some(a) => &a + &t,
            });
        }
        acc.expect("three components")
    }

    /// `theta(alpha_K)` vanishes on `K` for every line, i.e. `theta in D(A)`.
    pub fn is_logarithmic(&self, a: &Arrangement) -> bool {
        a.lines().iter().all(|l| {
            let p = Parametrization::eliminating_largest(l.coeffs());
            substitute_line(&self.apply(l), &p).is_zero()
        })
    }

    /// Membership in `D_H(A)`: logarithmic and `theta(alpha_H) = 0`.
    pub fn in_dh(&self, a: &Arrangement, h: usize) -> Result<bool> {
        Ok(self.apply(a.line(h)?).is_zero() && self.is_logarithmic(a))
    }

    /// The restriction to the plane of `p`, written in its retained coordinates.
    pub fn restrict(&self, p: &Parametrization) -> Derivation2 {
        let [r1, r2] = p.retained();
        Derivation2::new(substitute_line(&self.comps[r1], p), substitute_line(&self.comps[r2], p))
            .expect("restricted components share a degree")
    }

    pub fn mul_poly(&self, f: &HomPoly) -> Self {
        Derivation3 { comps: [0, 1, 2].map(|i| f * &self.comps[i]) }
    }
}

impl fmt::Display for Derivation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let mut parts = Vec::new();
        for (c, n) in self.comps.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            parts.push(if c.terms().count() > 1 { format!("({s})∂{n}") } else { format!("{s}∂{n}") });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Deriv3Doc {
    degree: usize,
    components: [String; 3],
}

impl Serialize for Derivation3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Deriv3Doc { degree: self.degree(), components: [0, 1, 2].map(|i| self.comps[i].to_string()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivation3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = Deriv3Doc::deserialize(d)?;
        let comps = doc
            .components
            .iter()
            .map(|t| {
                let p = HomPoly::parse(t, &['x', 'y', 'z'])?;
                Ok(if p.is_zero() { HomPoly::zero(3, doc.degree) } else { p })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Derivation3::new(comps.try_into().expect("three components")).map_err(D::Error::custom)
    }
}

/// `x_var * v` for a stacked vector of `comps` forms of degree `k` in `nvars` variables.
pub(crate) fn shift_vector(v: &[Rational], nvars: usize, comps: usize, k: usize, var: usize) -> Vec<Rational> {
    let n0 = monomial_count(nvars, k);
    let n1 = monomial_count(nvars, k + 1);
    let mut out = vec![Rational::zero(); comps * n1];
    let exps = monomial_exponents(nvars, k);
    for c in 0..comps {
        for (j, e) in exps.iter().enumerate() {
            let a = &v[c * n0 + j];
            if a.is_zero() {
                continue;
            }
            let mut f = *e;
            f[var] += 1;
            out[c * n1 + index_of(&f, k + 1, nvars)] = a.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_round_trip() {
        let t = Derivation3::parse(["x", "0", "y"]).unwrap();
        let s = shift_vector(&t.to_vector(), 3, 3, 1, 2);
        let u = Derivation3::from_vector(2, &s);
        assert_eq!(u, Derivation3::parse(["xz", "0", "yz"]).unwrap());
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(serde_json::from_str::<Derivation3>(&text).unwrap(), u);
        assert_eq!(u.to_string(), "xz∂x + yz∂z");
    }

    #[test]
    fn limits() {
        assert_eq!(Limits::default().cap(5), 10);
        assert_eq!(Limits { max_degree: Some(3) }.cap(5), 3);
    }
}
