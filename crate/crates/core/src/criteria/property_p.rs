//! Deciding property [P] for one line from the graded image of its Ziegler map.
//!
//! With `(d1, d2)` a homogeneous basis of `D(A^H, m^H)` of degrees `e1 <= e2`:
//!
//! * `variant1`: some basis element of degree `e2` lies in the image together
//!   with `alpha d1` for a linear form `alpha`. Equivalently the image in degree
//!   `e2` has an element with nonzero constant `d2`-coordinate, and the image
//!   in degree `e1 + 1` meets `S_1 d1`.
//! * `variant2`: `d1` lies in the image together with `beta d2'` for some basis
//!   element `d2'` of degree `e2`. Equivalently the image is nonzero in degree
//!   `e1` and has an element with nonzero `d2`-coordinate in degree `e2 + 1`.
//!
//! When `e1 = e2` and the map is not onto, the image in degree `e1` is
//! spanned by one element `u`, and the property holds iff the image in degree
//! `e1 + 1` has a nonzero coordinate on a complement of `u`; it is reported as
//! `variant1`. In every case the map must not be onto.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::tower;
use crate::arrangement::Arrangement;
use crate::derivation::{Derivation3, ImageLevel, ImageTower, Limits};
use crate::error::{Error, Result};
use crate::exactalg::{coordinates, monomial_count, monomial_exponents, HomPoly, Parametrization, QMatrix, Rational};
use crate::multiarr::{basis, saito_check, Derivation2, LinearForm2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyPVariant {
    None,
    Variant1,
    Variant2,
}

/// A certified instance of property [P]: `{in_image, other}` is a basis of
/// `D(A^H, m^H)`, and `in_image`, `form * other` are restrictions of the two
/// preimages, both members of `D_H(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyPWitness {
    pub in_image: Derivation2,
    pub other: Derivation2,
    pub form: LinearForm2,
    /// Names of the plane coordinates of `H` used by the derivations above.
    pub coordinates: [String; 2],
    pub in_image_preimage: Derivation3,
    pub scaled_preimage: Derivation3,
}

impl PropertyPWitness {
    /// The linear form written in the plane coordinates of `H`.
    pub fn form_string(&self) -> String {
        let names = [self.coordinates[0].as_str(), self.coordinates[1].as_str()];
        self.form.to_poly().display_with(&names)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyPResult {
    pub line: usize,
    pub holds: PropertyPVariant,
    pub witness: Option<PropertyPWitness>,
}

impl PropertyPResult {
    pub fn holds(&self) -> bool {
        self.holds != PropertyPVariant::None
    }
}

pub fn property_p(a: &Arrangement, h: usize) -> Result<PropertyPResult> {
    decide(a, &tower(a, h, &Limits::default())?)
}

/// Coordinates of degree-`k` elements on the basis `{m first} + {m second}`.
struct Frame<'a> {
    first: &'a Derivation2,
    second: &'a Derivation2,
}

impl Frame<'_> {
    /// `(f, g)` with `v = f first + g second`; a part is `None` below its degree.
    fn split(&self, k: usize, v: &[Rational]) -> Result<(Option<HomPoly>, Option<HomPoly>)> {
        let parts = [self.first, self.second].map(|d| k.checked_sub(d.degree()));
        let mut vectors = Vec::new();
        for (d, part) in [self.first, self.second].into_iter().zip(parts) {
            if let Some(j) = part {
                for e in monomial_exponents(2, j) {
                    let mono = HomPoly::monomial(2, &e[..2], Rational::one()).expect("monomial");
                    vectors.push(d.mul_poly(&mono).to_vector());
                }
            }
        }
        let c = coordinates(&vectors, v)
            .ok_or_else(|| Error::CertificationFailure(format!("image element of degree {k} outside D(A^H, m^H)")))?;
        let mut at = 0;
        let mut take = |part: Option<usize>| {
            part.map(|j| {
                let n = monomial_count(2, j);
                let p = HomPoly::from_coeffs(2, j, c[at..at + n].to_vec()).expect("coefficient count");
                at += n;
                p
            })
        };
        let f = take(parts[0]);
        let g = take(parts[1]);
        Ok((f, g))
    }
}

fn nonzero(p: &Option<HomPoly>) -> bool {
    p.as_ref().is_some_and(|p| !p.is_zero())
}

/// `f(s, t)` written in the retained coordinates of `x, y, z`.
fn embed(f: &HomPoly, param: &Parametrization) -> HomPoly {
    let [r1, r2] = param.retained();
    f.compose_linear(&[HomPoly::var(3, r1), HomPoly::var(3, r2)])
}

fn combine(k: usize, coeffs: &[Rational], lifts: &[Derivation3]) -> Derivation3 {
    let mut acc = vec![Rational::zero(); 3 * monomial_count(3, k)];
    for (c, l) in coeffs.iter().zip(lifts) {
        if c.is_zero() {
            continue;
        }
        for (a, b) in acc.iter_mut().zip(l.to_vector()) {
            *a += c * b;
        }
    }
    Derivation3::from_vector(k, &acc)
}

fn minus(a: &Derivation3, b: &Derivation3) -> Derivation3 {
    let v: Vec<Rational> = a.to_vector().iter().zip(b.to_vector()).map(|(x, y)| x - y).collect();
    Derivation3::from_vector(a.degree(), &v)
}

struct Level {
    image: Vec<Vec<Rational>>,
    lifts: Vec<Derivation3>,
}

fn level(t: &ImageTower, k: usize) -> Level {
    let explicit;
    let lvl: &ImageLevel = match t.levels().get(k) {
        Some(l) if l.lifts.is_some() => l,
        _ => {
            explicit = t.explicit_level(k);
            &explicit
        }
    };
    Level { image: lvl.image.clone(), lifts: lvl.lifts.clone().expect("explicit levels carry lifts") }
}

/// Decides [P] for the line of `t`, which must have been run to surjectivity.
pub(crate) fn decide(a: &Arrangement, t: &ImageTower) -> Result<PropertyPResult> {
    crate::coverage::hit(crate::coverage::Op::PropertyP);
    let h = t.line();
    let none = Ok(PropertyPResult { line: h, holds: PropertyPVariant::None, witness: None });
    let onto = t.surjective_from().is_some() && t.levels().iter().all(|l| l.coker() == 0);
    if t.surjective_from().is_none() {
        return Err(Error::Precondition("the Ziegler map must be computed to surjectivity".into()));
    }
    if onto {
        return none;
    }
    let multi = &t.restriction.multi;
    let param = &t.restriction.param;
    let (d1, d2) = basis(multi)?;
    let (e1, e2) = (t.exponents.e1, t.exponents.e2);

    let found = if e1 < e2 {
        variant1(t, &d1, &d2).or_else(|| variant2(t, &d1, &d2, param))
    } else {
        equal_exponents(t, &d1, &d2, param)
    };
    let found = match found {
        Some(r) => r?,
        None => return none,
    };
    let (variant, in_image, other, form, pre_in, pre_scaled) = found;
    let scaled = other.mul_poly(&form.to_poly());
    let certified = saito_check(&in_image, &other, multi)
        && pre_in.in_dh(a, h)?
        && pre_scaled.in_dh(a, h)?
        && pre_in.restrict(param) == in_image
        && pre_scaled.restrict(param) == scaled;
    if !certified {
        return Err(Error::CertificationFailure(format!("property [P] witness on line {h} fails to certify")));
    }
    Ok(PropertyPResult {
        line: h,
        holds: variant,
        witness: Some(PropertyPWitness {
            in_image,
            other,
            form,
            coordinates: param.coordinate_names().map(String::from),
            in_image_preimage: pre_in,
            scaled_preimage: pre_scaled,
        }),
    })
}

type Found = (PropertyPVariant, Derivation2, Derivation2, LinearForm2, Derivation3, Derivation3);

fn variant1(t: &ImageTower, d1: &Derivation2, d2: &Derivation2) -> Option<Result<Found>> {
    let (e1, e2) = (d1.degree(), d2.degree());
    let frame = Frame { first: d1, second: d2 };
    let run = || -> Result<Option<Found>> {
        let top = level(t, e2);
        let mut full = None;
        for (v, l) in top.image.iter().zip(&top.lifts) {
            let (_, g) = frame.split(e2, v)?;
            let c = g.expect("degree e2 has a d2 part").coeffs()[0].clone();
            if !c.is_zero() {
                let inv = Rational::one() / c;
                full = Some((
                    Derivation2::from_vector(e2, v).scale(&inv),
                    l.to_owned().mul_poly(&HomPoly::constant(3, inv)),
                ));
                break;
            }
        }
        let Some((in_image, pre_in)) = full else {
            return Ok(None);
        };
        let k = e1 + 1;
        let low = level(t, k);
        if low.image.is_empty() {
            return Ok(None);
        }
        let parts = low.image.iter().map(|v| frame.split(k, v)).collect::<Result<Vec<_>>>()?;
        // Combinations of the image vectors with vanishing d2-coordinate.
        let g_len = parts[0].1.as_ref().map_or(0, |g| g.coeffs().len());
        let combo = if g_len == 0 {
            let mut c = vec![Rational::zero(); parts.len()];
            c[0] = Rational::one();
            Some(c)
        } else {
            let mut m = QMatrix::zeros(g_len, parts.len());
            for (j, (_, g)) in parts.iter().enumerate() {
                for (i, c) in g.as_ref().expect("present").coeffs().iter().enumerate() {
                    m.set(i, j, c.clone());
                }
            }
            m.kernel_basis().into_iter().next()
        };
        let Some(c) = combo else {
            return Ok(None);
        };
        let mut alpha = HomPoly::zero(2, 1);
        for (ci, (f, _)) in c.iter().zip(&parts) {
            alpha = &alpha + &f.as_ref().expect("degree e1 + 1 has a d1 part").scale(ci);
        }
        let form =
            LinearForm2::from_poly(&alpha).ok_or_else(|| Error::CertificationFailure("vanishing form".into()))?;
        // Normalizing the form rescales the preimage by the same factor.
        let factor =
            &form.coeffs().iter().zip(alpha.coeffs()).find(|(_, a)| !a.is_zero()).map(|(f, a)| f / a).expect("nonzero");
        let c: Vec<Rational> = c.iter().map(|x| x * factor).collect();
        let pre_scaled = combine(k, &c, &low.lifts);
        Ok(Some((PropertyPVariant::Variant1, in_image, d1.clone(), form, pre_in, pre_scaled)))
    };
    run().transpose()
}

fn variant2(t: &ImageTower, d1: &Derivation2, d2: &Derivation2, param: &Parametrization) -> Option<Result<Found>> {
    let (e1, e2) = (d1.degree(), d2.degree());
    let frame = Frame { first: d1, second: d2 };
    let run = || -> Result<Option<Found>> {
        let low = level(t, e1);
        let (Some(u), Some(lift_u)) = (low.image.first(), low.lifts.first()) else {
            return Ok(None);
        };
        let in_image = Derivation2::from_vector(e1, u);
        let (cu, _) = frame.split(e1, u)?;
        let cu = cu.expect("degree e1 has a d1 part").coeffs()[0].clone();
        let k = e2 + 1;
        let high = level(t, k);
        for (v, l) in high.image.iter().zip(&high.lifts) {
            let (f, g) = frame.split(k, v)?;
            if !nonzero(&g) {
                continue;
            }
            let beta = g.expect("checked");
            let form = LinearForm2::from_poly(&beta).expect("nonzero linear form");
            let factor = form
                .coeffs()
                .iter()
                .zip(beta.coeffs())
                .find(|(_, b)| !b.is_zero())
                .map(|(f, b)| f / b)
                .expect("nonzero");
            // v = f d1 + beta d2 and d1 = u / cu, so beta d2 = v - (f / cu) u.
            let f = f.expect("degree e2 + 1 has a d1 part").scale(&(Rational::one() / &cu));
            let pre = minus(l, &lift_u.mul_poly(&embed(&f, param)));
            let pre = pre.mul_poly(&HomPoly::constant(3, factor));
            return Ok(Some((PropertyPVariant::Variant2, in_image, d2.clone(), form, lift_u.clone(), pre)));
        }
        Ok(None)
    };
    run().transpose()
}

fn equal_exponents(
    t: &ImageTower,
    d1: &Derivation2,
    d2: &Derivation2,
    param: &Parametrization,
) -> Option<Result<Found>> {
    let e = d1.degree();
    let run = || -> Result<Option<Found>> {
        let low = level(t, e);
        if low.image.len() != 1 {
            return Ok(None);
        }
        let (u, lift_u) = (Derivation2::from_vector(e, &low.image[0]), low.lifts[0].clone());
        let (_, b) = Frame { first: d1, second: d2 }.split(e, &low.image[0])?;
        let out = if nonzero(&b) { d1 } else { d2 };
        let frame = Frame { first: out, second: &u };
        let high = level(t, e + 1);
        for (v, l) in high.image.iter().zip(&high.lifts) {
            let (f, g) = frame.split(e + 1, v)?;
            if !nonzero(&f) {
                continue;
            }
            let alpha = f.expect("checked");
            let form = LinearForm2::from_poly(&alpha).expect("nonzero linear form");
            let factor = form
                .coeffs()
                .iter()
                .zip(alpha.coeffs())
                .find(|(_, a)| !a.is_zero())
                .map(|(f, a)| f / a)
                .expect("nonzero");
            let g = g.expect("degree e + 1 has a u part");
            let pre = minus(l, &lift_u.mul_poly(&embed(&g, param)));
            let pre = pre.mul_poly(&HomPoly::constant(3, factor));
            return Ok(Some((PropertyPVariant::Variant1, u, out.clone(), form, lift_u, pre)));
        }
        Ok(None)
    };
    run().transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_factored;

    fn arr(text: &str) -> Arrangement {
        Arrangement::new(None, parse_factored(text).unwrap()).unwrap()
    }

    #[test]
    fn free_has_no_p() {
        let a = arr("xy(x+y)(x+2y)z");
        for h in 0..a.len() {
            assert_eq!(property_p(&a, h).unwrap().holds, PropertyPVariant::None);
        }
    }

    #[test]
    fn generic_four_has_p() {
        let a = arr("xyz(x+y+z)");
        let r = property_p(&a, 0).unwrap();
        assert_eq!(r.holds, PropertyPVariant::Variant1);
    }
}
