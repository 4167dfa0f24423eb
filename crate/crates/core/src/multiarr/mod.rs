//! Multiarrangements of lines through the origin of the plane and their
//! (always free) derivation modules.

mod module;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{substitute_line, HomPoly, NumRepr, Parametrization, Rational};

pub use module::{basis, deriv_basis, deriv_dim, divisible_by_power, exponents, is_member, saito_check, DerivSpace};

/// A nonzero linear form `a s + b t`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm2([Rational; 2]);

impl LinearForm2 {
    pub fn new(coeffs: [Rational; 2]) -> Option<Self> {
        let lead = coeffs.iter().find(|c| !c.is_zero())?.clone();
        Some(LinearForm2(coeffs.map(|c| c / &lead)))
    }

    pub fn from_ints(a: i64, b: i64) -> Option<Self> {
        Self::new([a, b].map(crate::exactalg::rat))
    }

    /// Reads a degree-one polynomial in two variables.
    pub fn from_poly(p: &HomPoly) -> Option<Self> {
        if p.nvars() != 2 || p.degree() != 1 {
            return None;
        }
        Self::new([p.coeffs()[0].clone(), p.coeffs()[1].clone()])
    }

    pub fn coeffs(&self) -> &[Rational; 2] {
        &self.0
    }

    pub fn to_poly(&self) -> HomPoly {
        HomPoly::linear(&self.0)
    }
}

impl fmt::Display for LinearForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_string())
    }
}

impl Serialize for LinearForm2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [NumRepr::from(&self.0[0]), NumRepr::from(&self.0[1])].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearForm2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let [a, b] = <[NumRepr; 2]>::deserialize(d)?;
        let a = a.to_rational().map_err(D::Error::custom)?;
        let b = b.to_rational().map_err(D::Error::custom)?;
        LinearForm2::new([a, b]).ok_or_else(|| D::Error::custom("zero linear form"))
    }
}

/// Pairwise non-proportional forms with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Multiarrangement2 {
    forms: Vec<LinearForm2>,
    mult: Vec<usize>,
}

impl Multiarrangement2 {
    pub fn new(forms: Vec<LinearForm2>, mult: Vec<usize>) -> Result<Self> {
        if forms.len() != mult.len() {
            return Err(Error::Precondition(format!("{} forms but {} multiplicities", forms.len(), mult.len())));
        }
        if let Some(i) = mult.iter().position(|&m| m == 0) {
            return Err(Error::Precondition(format!("multiplicity of form {i} is zero")));
        }
        for j in 0..forms.len() {
            if let Some(i) = forms[..j].iter().position(|f| *f == forms[j]) {
                return Err(Error::DuplicateLine { first: i, second: j });
            }
        }
        Ok(Multiarrangement2 { forms, mult })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn forms(&self) -> &[LinearForm2] {
        &self.forms
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// `|m|`, the sum of the multiplicities.
    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinearForm2, usize)> {
        self.forms.iter().zip(self.mult.iter().copied())
    }

    /// `prod alpha^m(alpha)`.
    pub fn defining_polynomial(&self) -> HomPoly {
        self.iter().fold(HomPoly::constant(2, Rational::one()), |acc, (f, m)| &acc * &f.to_poly().pow(m))
    }

    /// The same forms with multiplicity `m` of form `i` replaced.
    pub fn with_mult(&self, i: usize, m: usize) -> Result<Self> {
        let mut mult = self.mult.clone();
        *mult.get_mut(i).ok_or(Error::BadIndex { index: i, len: self.len() })? = m;
        Self::new(self.forms.clone(), mult)
    }
}

#[derive(Serialize, Deserialize)]
struct MultiDoc {
    forms: Vec<[NumRepr; 2]>,
    mult: Vec<usize>,
}

impl Serialize for Multiarrangement2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiDoc {
            forms: self.forms.iter().map(|f| [NumRepr::from(&f.0[0]), NumRepr::from(&f.0[1])]).collect(),
            mult: self.mult.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multiarrangement2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = MultiDoc::deserialize(d)?;
        let forms = doc
            .forms
            .iter()
            .map(|[a, b]| {
                let c = [a.to_rational()?, b.to_rational()?];
                LinearForm2::new(c).ok_or_else(|| Error::Parse("zero form in multiarrangement".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Multiarrangement2::new(forms, doc.mult).map_err(D::Error::custom)
    }
}

/// A homogeneous derivation `p d/ds + q d/dt` of the two variable ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation2 {
    p: HomPoly,
    q: HomPoly,
}

impl Derivation2 {
    pub fn new(p: HomPoly, q: HomPoly) -> Result<Self> {
        if p.nvars() != 2 || q.nvars() != 2 || p.degree() != q.degree() {
            return Err(Error::Precondition("derivation components must be two variable forms of one degree".into()));
        }
        Ok(Derivation2 { p, q })
    }

    /// Reads the stacked coefficient vector `[p; q]` of a degree-`k` derivation.
    pub fn from_vector(k: usize, v: &[Rational]) -> Self {
        let n = k + 1;
        assert_eq!(v.len(), 2 * n);
        Derivation2 {
            p: HomPoly::from_coeffs(2, k, v[..n].to_vec()).expect("coefficient count"),
            q: HomPoly::from_coeffs(2, k, v[n..].to_vec()).expect("coefficient count"),
        }
    }

    /// Parses the two components written in `s, t` (or any two named variables).
    pub fn parse(p: &str, q: &str, vars: [char; 2]) -> Result<Self> {
        let mut p = HomPoly::parse(p, &vars)?;
        let mut q = HomPoly::parse(q, &vars)?;
        if p.is_zero() {
            p = HomPoly::zero(2, q.degree());
        } else if q.is_zero() {
            q = HomPoly::zero(2, p.degree());
        }
        Self::new(p, q)
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        self.p.coeffs().iter().chain(self.q.coeffs()).cloned().collect()
    }

    pub fn p(&self) -> &HomPoly {
        &self.p
    }

    pub fn q(&self) -> &HomPoly {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// `theta(alpha)`.
    pub fn apply(&self, form: &LinearForm2) -> HomPoly {
        &self.p.scale(&form.0[0]) + &self.q.scale(&form.0[1])
    }

    pub fn mul_poly(&self, f: &HomPoly) -> Self {
        Derivation2 { p: f * &self.p, q: f * &self.q }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Derivation2 { p: self.p.scale(c), q: self.q.scale(c) }
    }

    /// `det [[p1, q1], [p2, q2]]`.
    pub fn det(&self, other: &Derivation2) -> HomPoly {
        &(&self.p * &other.q) - &(&self.q * &other.p)
    }

    pub fn display_with(&self, names: [&str; 2]) -> String {
        let term = |c: &HomPoly, n: &str| {
            let s = c.display_with(&names);
            if c.terms().count() > 1 {
                format!("({s})∂{n}")
            } else {
                format!("{s}∂{n}")
            }
        };
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => term(&self.p, names[0]),
            (true, false) => term(&self.q, names[1]),
            (false, false) => format!("{} + {}", term(&self.p, names[0]), term(&self.q, names[1])),
        }
    }
}

impl fmt::Display for Derivation2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["s", "t"]))
    }
}

#[derive(Serialize, Deserialize)]
struct DerivDoc {
    degree: usize,
    p: String,
    q: String,
}

impl Serialize for Derivation2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DerivDoc { degree: self.degree(), p: self.p.to_string(), q: self.q.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivation2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = DerivDoc::deserialize(d)?;
        let component = |text: &str| -> Result<HomPoly> {
            let p = HomPoly::parse(text, &['s', 't'])?;
            Ok(if p.is_zero() { HomPoly::zero(2, doc.degree) } else { p })
        };
        let p = component(&doc.p).map_err(D::Error::custom)?;
        let q = component(&doc.q).map_err(D::Error::custom)?;
        if p.degree() != doc.degree {
            return Err(D::Error::custom("derivation degree mismatch"));
        }
        Derivation2::new(p, q).map_err(D::Error::custom)
    }
}

/// `(e1, e2)` with `e1 <= e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents {
    pub e1: usize,
    pub e2: usize,
}

impl Exponents {
    pub fn new(a: usize, b: usize) -> Self {
        Exponents { e1: a.min(b), e2: a.max(b) }
    }

    pub fn sum(&self) -> usize {
        self.e1 + self.e2
    }

    pub fn product(&self) -> usize {
        self.e1 * self.e2
    }

    /// `dim D_k` of a free rank two module with these exponents.
    pub fn graded_dim(&self, k: usize) -> usize {
        (k + 1).saturating_sub(self.e1) + (k + 1).saturating_sub(self.e2)
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.e1, self.e2)
    }
}

impl Serialize for Exponents {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.e1, self.e2].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exponents {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        Ok(Exponents::new(a, b))
    }
}

/// The Ziegler restriction onto one line, with the plane coordinates used and
/// the lines of the arrangement grouped by restricted form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZieglerRestriction {
    pub line: usize,
    pub multi: Multiarrangement2,
    pub param: Parametrization,
    /// For each form of `multi`, the indices of the lines restricting to it.
    pub members: Vec<Vec<usize>>,
}

/// Restricts every other line to `H` and weights each intersection point by
/// the number of lines other than `H` through it.
pub fn ziegler_restriction(a: &Arrangement, h: usize) -> Result<ZieglerRestriction> {
    crate::coverage::hit(crate::coverage::Op::ZieglerRestriction);
    let param = Parametrization::eliminating_largest(a.line(h)?.coeffs());
    let mut forms: Vec<LinearForm2> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (k, line) in a.lines().iter().enumerate() {
        if k == h {
            continue;
        }
        let r = substitute_line(&line.to_poly(), &param);
        let form = LinearForm2::from_poly(&r).expect("distinct lines restrict to a nonzero form");
        match forms.iter().position(|f| *f == form) {
            Some(i) => members[i].push(k),
            None => {
                forms.push(form);
                members.push(vec![k]);
            }
        }
    }
    let mult = members.iter().map(Vec::len).collect();
    Ok(ZieglerRestriction { line: h, multi: Multiarrangement2::new(forms, mult)?, param, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_of_pog_example() {
        // xyz(x+y)(-x+2y+z)(x+2y+z) onto z = 0
        let a = Arrangement::from_int_rows(None, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [-1, 2, 1], [1, 2, 1]])
            .unwrap();
        let r = ziegler_restriction(&a, 2).unwrap();
        assert_eq!(r.multi.mult(), &[1, 1, 1, 1, 1]);
        assert_eq!(r.multi.total(), 5);
        assert_eq!(r.param.coordinate_names(), ["x", "y"]);
    }

    #[test]
    fn restriction_with_multiplicity() {
        // xyz(x+z)(-x+y+2z)(x+y+2z) onto z = 0: x appears twice.
        let a = Arrangement::from_int_rows(None, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [-1, 1, 2], [1, 1, 2]])
            .unwrap();
        let r = ziegler_restriction(&a, 2).unwrap();
        let mut pairs: Vec<(String, usize)> = r.multi.iter().map(|(f, m)| (f.to_string(), m)).collect();
        pairs.sort();
        assert_eq!(pairs, vec![("s".into(), 2), ("s + t".into(), 1), ("s - t".into(), 1), ("t".into(), 1)]);
        assert_eq!(r.members[0], vec![0, 3]);
    }

    #[test]
    fn pencil_restriction() {
        let a = Arrangement::from_int_rows(None, &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]).unwrap();
        let r = ziegler_restriction(&a, 1).unwrap();
        assert_eq!(r.multi.mult(), &[3]);
    }

    #[test]
    fn serde_round_trips() {
        let m = Multiarrangement2::new(
            vec![LinearForm2::from_ints(1, 0).unwrap(), LinearForm2::from_ints(2, 3).unwrap()],
            vec![2, 1],
        )
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"forms":[[1,0],[1,"3/2"]],"mult":[2,1]}"#);
        assert_eq!(serde_json::from_str::<Multiarrangement2>(&text).unwrap(), m);
        let d = Derivation2::parse("s^2", "0", ['s', 't']).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<Derivation2>(&text).unwrap(), d);
        assert_eq!(d.to_string(), "s^2∂s");
    }
}
