//! Central line arrangements in the projective plane and their lattice data.

mod lattice;
mod parse;

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{HomPoly, NumRepr, Rational};

pub use lattice::{
    chi0, chi0_mobius, intersection_points, is_balanced, n_h, nr_form, Balance, CharPolyData, FlatPoint, NRForm,
    ProjPoint,
};
pub use parse::{parse_arrangement, parse_factored, ArrangementDocument};

/// A nonzero linear form in `x, y, z`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm3([Rational; 3]);

impl LinearForm3 {
    pub fn new(coeffs: [Rational; 3]) -> Option<Self> {
        let lead = coeffs.iter().find(|c| !c.is_zero())?.clone();
        Some(LinearForm3(coeffs.map(|c| c / &lead)))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Self> {
        Self::new([a, b, c].map(crate::exactalg::rat))
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn to_poly(&self) -> HomPoly {
        HomPoly::linear(&self.0)
    }

    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        self.0.iter().zip(p).map(|(a, b)| a * b).sum()
    }

    /// The same form scaled to integer coefficients with no common factor.
    pub fn integer_coeffs(&self) -> [num_bigint::BigInt; 3] {
        let row = crate::exactalg::matrix::to_int_row(&self.0);
        let g = row.iter().fold(num_bigint::BigInt::zero(), |g, a| num_integer::Integer::gcd(&g, a));
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        [0, 1, 2].map(|i| &row[i] / &g)
    }
}

impl fmt::Display for LinearForm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.integer_coeffs().map(Rational::from_integer);
        f.write_str(&HomPoly::linear(&c).to_string())
    }
}

impl Serialize for LinearForm3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(NumRepr::from).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearForm3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let [a, b, c] = <[NumRepr; 3]>::deserialize(d)?;
        let coeffs = [a.to_rational(), b.to_rational(), c.to_rational()];
        let coeffs = coeffs.map(|q| q.map_err(D::Error::custom));
        let [a, b, c] = coeffs;
        LinearForm3::new([a?, b?, c?]).ok_or_else(|| D::Error::custom("zero linear form"))
    }
}

/// A finite set of pairwise non-proportional lines through the origin of a
/// three dimensional space, i.e. lines in the projective plane.
#[derive(Clone, Debug)]
pub struct Arrangement {
    name: Option<String>,
    lines: Vec<LinearForm3>,
    points: OnceLock<Vec<FlatPoint>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.lines == other.lines
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    /// Validates and canonicalizes the given coefficient rows.
    pub fn new(name: Option<String>, rows: Vec<[Rational; 3]>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Parse("an arrangement needs at least one line".into()));
        }
        let mut lines: Vec<LinearForm3> = Vec::with_capacity(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            let form = LinearForm3::new(r).ok_or(Error::ZeroForm(i))?;
            if let Some(first) = lines.iter().position(|l| *l == form) {
                return Err(Error::DuplicateLine { first, second: i });
            }
            lines.push(form);
        }
        Ok(Arrangement { name, lines, points: OnceLock::new() })
    }

    pub fn from_forms(name: Option<String>, forms: Vec<LinearForm3>) -> Result<Self> {
        Self::new(name, forms.into_iter().map(|f| f.0).collect())
    }

    pub fn from_int_rows(name: Option<&str>, rows: &[[i64; 3]]) -> Result<Self> {
        Self::new(name.map(str::to_owned), rows.iter().map(|r| r.map(crate::exactalg::rat)).collect())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[LinearForm3] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> Result<&LinearForm3> {
        self.lines.get(i).ok_or(Error::BadIndex { index: i, len: self.lines.len() })
    }

    pub fn position(&self, form: &LinearForm3) -> Option<usize> {
        self.lines.iter().position(|l| l == form)
    }

    /// The arrangement with line `i` deleted; `None` if that leaves nothing.
    pub fn deletion(&self, i: usize) -> Option<Arrangement> {
        if self.lines.len() <= 1 || i >= self.lines.len() {
            return None;
        }
        let mut lines = self.lines.clone();
        lines.remove(i);
        Some(Arrangement { name: self.name.as_ref().map(|n| format!("{n} \\ H{i}")), lines, points: OnceLock::new() })
    }

    /// The defining polynomial, the product of the forms.
    pub fn defining_polynomial(&self) -> HomPoly {
        self.lines.iter().fold(HomPoly::constant(3, Rational::one()), |acc, l| &acc * &l.to_poly())
    }

    pub fn points(&self) -> &[FlatPoint] {
        crate::coverage::hit(crate::coverage::Op::IntersectionPoints);
        self.points.get_or_init(|| lattice::compute_points(&self.lines))
    }

    pub fn to_document(&self) -> ArrangementDocument {
        ArrangementDocument {
            name: self.name.clone(),
            lines: Some(
                self.lines
                    .iter()
                    .map(|l| {
                        l.integer_coeffs().iter().map(|c| NumRepr::from(&Rational::from_integer(c.clone()))).collect()
                    })
                    .collect(),
            ),
            factored: None,
            expected: None,
        }
    }

    /// The product of the forms written as a factored polynomial, e.g. `xyz(x + y + z)`.
    pub fn factored_string(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let s = l.to_string();
            if s.len() == 1 {
                out.push_str(&s);
            } else {
                out.push('(');
                out.push_str(&s);
                out.push(')');
            }
        }
        out
    }
}

impl Serialize for Arrangement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arrangement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ArrangementDocument::deserialize(d)?;
        doc.to_arrangement().map_err(serde::de::Error::custom)
    }
}
