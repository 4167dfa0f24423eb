//! Minimal resolutions of `D_0(A) = AR(f)` and the classification.
//!
//! The resolution is computed through `D_H(A)`, `H` the first line, which is
//! isomorphic to `D_0(A)` as a graded module. Restriction to `H` kills
//! exactly `alpha_H D_H(A)`, and `alpha_H` is a nonzerodivisor, so minimal
//! generators and relations of `D_H(A)` correspond degree for degree to
//! those of its image in `k[s, t]^2`. The image is computed from `D_H(A)_k`
//! until the restriction becomes surjective past `e2`; from there on it
//! coincides with the free module `D(A^H, m^H)`. If that happens in degree
//! `s`, the image differs from a free module generated in degrees `<= e2`
//! by a finite length cokernel living below `s`, so its regularity is at
//! most `s` and the scan stops at `s + 2`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::presenter::{hilbert_value, Presenter};
use super::{Derivation3, ImageTower, JacobianRow, Limits};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{monomial_count, monomial_exponents, QMatrix, Rational};

/// Degrees of minimal generators and of minimal relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionShape {
    pub generator_degrees: Vec<usize>,
    pub relation_degrees: Vec<usize>,
    /// Last degree that was computed.
    pub certified_to: usize,
    /// True when the degree cap stopped the scan before certification.
    pub cap_hit: bool,
}

impl ResolutionShape {
    /// `dim AR(f)_k` predicted by the shape.
    pub fn hilbert(&self, k: usize) -> i64 {
        hilbert_value(3, &self.generator_degrees, &self.relation_degrees, k)
    }
}

struct Resolution {
    shape: ResolutionShape,
    /// Generators lifted to `D_H(A)`, sorted by degree.
    lifts: Vec<Derivation3>,
}

fn star(p: &Presenter) -> usize {
    let g = p.generator_degrees().into_iter().max().unwrap_or(0);
    let r = p.relation_degrees().iter().copied().max().unwrap_or(0);
    g + r + 2
}

fn resolve(a: &Arrangement, limits: &Limits) -> Result<Resolution> {
    crate::coverage::hit(crate::coverage::Op::MinimalResolution);
    let cap = limits.cap(a.len());
    let mut tower = ImageTower::new(a, 0)?;
    let mut p = Presenter::new(2, 2);
    let mut k = 0;
    let mut cap_hit = false;
    loop {
        if k > cap {
            cap_hit = true;
            break;
        }
        let lvl = tower.level(k);
        let tags = match &lvl.lifts {
            Some(l) => (0..l.len()).map(Some).collect(),
            None => vec![None; lvl.image.len()],
        };
        let dim = lvl.image_dim() as i64;
        p.push(lvl.image.clone(), tags);
        let predicted = hilbert_value(2, &p.generator_degrees(), p.relation_degrees(), k);
        if predicted != dim {
            return Err(Error::CertificationFailure(format!(
                "Hilbert identity fails in degree {k}: image has dimension {dim}, presentation predicts {predicted}"
            )));
        }
        // With surjectivity from degree s the image has regularity at most s:
        // generators live in degrees <= s and relations in degrees <= s + 1.
        if tower.surjective_from().is_some_and(|s| k >= s + 2) {
            break;
        }
        k += 1;
    }
    let mut lifts = Vec::new();
    for g in p.generators() {
        let lift =
            g.tag.and_then(|i| tower.levels()[g.degree].lifts.as_ref().map(|l| l[i].clone())).ok_or_else(|| {
                Error::CertificationFailure(format!("generator in degree {} past surjectivity", g.degree))
            })?;
        lifts.push(lift);
    }
    let shape = ResolutionShape {
        generator_degrees: p.generator_degrees(),
        relation_degrees: p.relation_degrees().to_vec(),
        certified_to: k.min(cap),
        cap_hit,
    };
    if !cap_hit && shape.generator_degrees.len() != shape.relation_degrees.len() + 2 {
        return Err(Error::CertificationFailure(format!("rank of the presentation is not 2: {shape:?}")));
    }
    Ok(Resolution { shape, lifts })
}

/// Minimal generator and relation degrees of `AR(f)`.
pub fn minimal_resolution(a: &Arrangement, limits: &Limits) -> Result<ResolutionShape> {
    Ok(resolve(a, limits)?.shape)
}

/// The same shape computed literally from the Jacobian syzygies in three
/// variables, scanning to `max(k*, |A|)`. Much slower; used to cross-check.
pub fn minimal_resolution_jacobian(a: &Arrangement, limits: &Limits) -> Result<ResolutionShape> {
    let cap = limits.cap(a.len());
    let row = JacobianRow::new(a);
    let mut p = Presenter::new(3, 3);
    let mut k = 0;
    let mut cap_hit = false;
    loop {
        if k > cap {
            cap_hit = true;
            break;
        }
        let basis = row.syzygy_space(k);
        let dim = basis.len() as i64;
        let tags = vec![None; basis.len()];
        p.push(basis, tags);
        let predicted = hilbert_value(3, &p.generator_degrees(), p.relation_degrees(), k);
        if predicted != dim {
            return Err(Error::CertificationFailure(format!(
                "Hilbert identity fails in degree {k}: AR has dimension {dim}, presentation predicts {predicted}"
            )));
        }
        if k >= star(&p).max(a.len()) {
            break;
        }
        k += 1;
    }
    Ok(ResolutionShape {
        generator_degrees: p.generator_degrees(),
        relation_degrees: p.relation_degrees().to_vec(),
        certified_to: k.min(cap),
        cap_hit,
    })
}

/// The unique relation of degree `d + 1` among three generators has a
/// nonzero (necessarily linear) coefficient on some generator of degree `d`.
fn linear_coefficient_on_top(gens: &[Derivation3], d: usize) -> Result<bool> {
    let target = d + 1;
    let width = 3 * monomial_count(3, target);
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut owner = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for e in monomial_exponents(3, target - g.degree()) {
            let comps = g.comps().clone().map(|c| c.mul_monomial(&e));
            columns.push(comps.iter().flat_map(|c| c.coeffs().iter().cloned()).collect());
            owner.push(i);
        }
    }
    let mut m = QMatrix::zeros(width, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c.clone());
            }
        }
    }
    let kernel = m.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::CertificationFailure(format!(
            "expected one relation in degree {target}, found {}",
            kernel.len()
        )));
    }
    Ok(kernel[0].iter().zip(&owner).any(|(c, &i)| gens[i].degree() == d && !c.is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Free { a: usize, b: usize },
    NearlyFree { a: usize, b: usize },
    PlusOneGenerated { a: usize, b: usize, d: usize },
    Other { generators: Vec<usize>, relations: Vec<usize>, cap_hit: bool },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Free { .. } => "free",
            Verdict::NearlyFree { .. } => "nearly-free",
            Verdict::PlusOneGenerated { .. } => "plus-one-generated",
            Verdict::Other { .. } => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub mdr: usize,
    pub nu: Option<usize>,
    pub shape: ResolutionShape,
}

impl Classification {
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, Verdict::Free { .. })
    }

    pub fn is_nearly_free(&self) -> bool {
        matches!(self.verdict, Verdict::NearlyFree { .. })
    }

    /// Plus-one generated in the broad sense, nearly free included.
    pub fn is_pog(&self) -> bool {
        self.pog().is_some()
    }

    /// `(a, b, d)` for plus-one generated and nearly free (`d = b`) verdicts.
    pub fn pog(&self) -> Option<(usize, usize, usize)> {
        match self.verdict {
            Verdict::NearlyFree { a, b } => Some((a, b, b)),
            Verdict::PlusOneGenerated { a, b, d } => Some((a, b, d)),
            _ => None,
        }
    }

    pub fn free_exponents(&self) -> Option<(usize, usize)> {
        match self.verdict {
            Verdict::Free { a, b } => Some((a, b)),
            _ => None,
        }
    }

    pub fn exponents(&self) -> Option<(usize, usize)> {
        match self.verdict {
            Verdict::Free { a, b } | Verdict::NearlyFree { a, b } | Verdict::PlusOneGenerated { a, b, .. } => {
                Some((a, b))
            }
            Verdict::Other { .. } => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ClassificationDoc {
    verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponents: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<usize>,
    mdr: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu: Option<usize>,
    generators: Vec<usize>,
    relations: Vec<usize>,
    certified_to: usize,
    cap_hit: bool,
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let level = self.pog().map(|(_, _, d)| d);
        ClassificationDoc {
            verdict: self.verdict.label().into(),
            exponents: self.exponents().map(|(a, b)| [a, b]),
            level,
            mdr: self.mdr,
            nu: self.nu,
            generators: self.shape.generator_degrees.clone(),
            relations: self.shape.relation_degrees.clone(),
            certified_to: self.shape.certified_to,
            cap_hit: self.shape.cap_hit,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Classification {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = ClassificationDoc::deserialize(d)?;
        let need = |x: Option<[usize; 2]>| x.ok_or_else(|| D::Error::custom("missing exponents"));
        let verdict = match doc.verdict.as_str() {
            "free" => {
                let [a, b] = need(doc.exponents)?;
                Verdict::Free { a, b }
            }
            "nearly-free" => {
                let [a, b] = need(doc.exponents)?;
                Verdict::NearlyFree { a, b }
            }
            "plus-one-generated" => {
                let [a, b] = need(doc.exponents)?;
                Verdict::PlusOneGenerated { a, b, d: doc.level.ok_or_else(|| D::Error::custom("missing level"))? }
            }
            "other" => Verdict::Other {
                generators: doc.generators.clone(),
                relations: doc.relations.clone(),
                cap_hit: doc.cap_hit,
            },
            v => return Err(D::Error::custom(format!("unknown verdict {v:?}"))),
        };
        Ok(Classification {
            verdict,
            mdr: doc.mdr,
            nu: doc.nu,
            shape: ResolutionShape {
                generator_degrees: doc.generators,
                relation_degrees: doc.relations,
                certified_to: doc.certified_to,
                cap_hit: doc.cap_hit,
            },
        })
    }
}

pub fn classify(a: &Arrangement) -> Result<Classification> {
    classify_with(a, &Limits::default())
}

pub fn classify_with(a: &Arrangement, limits: &Limits) -> Result<Classification> {
    crate::coverage::hit(crate::coverage::Op::Classify);
    let res = resolve(a, limits)?;
    let shape = res.shape;
    let gens = &shape.generator_degrees;
    let rels = &shape.relation_degrees;
    let mdr = gens.iter().copied().min().unwrap_or(0);
    let other = || Verdict::Other { generators: gens.clone(), relations: rels.clone(), cap_hit: shape.cap_hit };
    let verdict = if shape.cap_hit {
        other()
    } else if gens.len() == 2 && rels.is_empty() {
        Verdict::Free { a: gens[0], b: gens[1] }
    } else if gens.len() == 3 && rels.len() == 1 {
        let (a, b, d) = (gens[0], gens[1], gens[2]);
        if rels[0] == d + 1 && linear_coefficient_on_top(&res.lifts, d)? {
            if b == d {
                Verdict::NearlyFree { a, b }
            } else {
                Verdict::PlusOneGenerated { a, b, d }
            }
        } else {
            other()
        }
    } else {
        other()
    };
    let nu = match verdict {
        Verdict::NearlyFree { .. } => Some(1),
        Verdict::PlusOneGenerated { b, d, .. } => Some(d - b + 1),
        _ => None,
    };
    Ok(Classification { verdict, mdr, nu, shape })
}
