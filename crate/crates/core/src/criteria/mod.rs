//! Invariants read off the Ziegler restriction map `pi: D_H(A) -> D(A^H, m^H)`:
//! cokernel dimensions, Yoshinaga defects, splitting types, property [P] and
//! the theorem validators.

mod property_p;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{chi0, Arrangement, LinearForm3};
use crate::corpus::{external_lines, is_admissible, Xorshift64Star};
use crate::derivation::{classify, Classification, ImageTower, JacobianRow, Limits};
use crate::error::{Error, Result};
use crate::exactalg::{monomial_exponents, substitute_line, HomPoly, Parametrization, QMatrix};
use crate::multiarr::Exponents;

pub use property_p::{property_p, PropertyPResult, PropertyPVariant, PropertyPWitness};
pub use verify::{verify, verify_with, CheckResult, CheckStatus, LineReport, TheoremReport, VerifyOptions};

/// Seed of the external line sample used when none is given.
pub const DEFAULT_EXTERNAL_SEED: u64 = 0x5EED;

/// Number of external lines scanned by default.
pub const DEFAULT_EXTERNAL_LINES: usize = 20;

/// One degree of the Ziegler map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZieglerLevel {
    pub degree: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub image_dim: usize,
    pub coker: usize,
}

/// Graded dimensions of the Ziegler map of one line, from degree 0 up to the
/// first degree `>= e2` where it is onto (it stays onto from there on).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZieglerMapData {
    pub line: usize,
    pub exponents: Exponents,
    pub levels: Vec<ZieglerLevel>,
}

impl ZieglerMapData {
    fn from_tower(tower: &ImageTower) -> Self {
        crate::coverage::hit(crate::coverage::Op::ZieglerMap);
        let levels = tower
            .levels()
            .iter()
            .take(tower.surjective_from().map_or(tower.computed(), |s| s + 1))
            .map(|l| ZieglerLevel {
                degree: l.degree,
                domain_dim: l.domain_dim,
                codomain_dim: l.codomain_dim,
                image_dim: l.image_dim(),
                coker: l.coker(),
            })
            .collect();
        ZieglerMapData { line: tower.line(), exponents: tower.exponents, levels }
    }

    pub fn coker_by_degree(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.coker).collect()
    }

    pub fn coker_total(&self) -> usize {
        self.levels.iter().map(|l| l.coker).sum()
    }
}

fn tower(a: &Arrangement, h: usize, limits: &Limits) -> Result<ImageTower> {
    let mut t = ImageTower::new(a, h)?;
    t.run_to_surjectivity(limits.cap(a.len()))?;
    Ok(t)
}

pub fn ziegler_map(a: &Arrangement, h: usize) -> Result<ZieglerMapData> {
    ziegler_map_with(a, h, &Limits::default())
}

pub fn ziegler_map_with(a: &Arrangement, h: usize, limits: &Limits) -> Result<ZieglerMapData> {
    Ok(ZieglerMapData::from_tower(&tower(a, h, limits)?))
}

/// `b2_0 - e1 e2` next to the cokernel dimension of the Ziegler map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub line: usize,
    pub exponents: Exponents,
    pub b2_0: i64,
    pub defect: i64,
    pub coker_total: usize,
}

pub(crate) fn defect_report(data: &ZieglerMapData, b2_0: i64) -> Result<DefectReport> {
    crate::coverage::hit(crate::coverage::Op::YoshinagaDefect);
    let defect = b2_0 - data.exponents.product() as i64;
    let coker_total = data.coker_total();
    if defect != coker_total as i64 {
        return Err(Error::ConsistencyFailure(format!(
            "line {}: b2_0 - e1 e2 = {defect} but the cokernel has dimension {coker_total}",
            data.line
        )));
    }
    Ok(DefectReport { line: data.line, exponents: data.exponents, b2_0, defect, coker_total })
}

pub fn yoshinaga_defect(a: &Arrangement, h: usize) -> Result<DefectReport> {
    defect_report(&ziegler_map(a, h)?, chi0(a).b2_0)
}

/// A line of the arrangement or a line outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SplitLine {
    Member(usize),
    External(LinearForm3),
}

impl fmt::Display for SplitLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitLine::Member(i) => write!(f, "H{i}"),
            SplitLine::External(l) => write!(f, "{l}"),
        }
    }
}

/// The splitting type of the bundle of logarithmic vector fields along a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub line: SplitLine,
    pub exponents: Exponents,
}

/// Reads the splitting type: the Ziegler exponents for a line of `a`, and for
/// other lines the degrees of the kernel of the restricted Jacobian row.
pub fn splitting_type(a: &Arrangement, line: &SplitLine) -> Result<SplittingType> {
    crate::coverage::hit(crate::coverage::Op::SplittingType);
    match line {
        SplitLine::Member(h) => {
            let r = crate::multiarr::ziegler_restriction(a, *h)?;
            Ok(SplittingType { line: line.clone(), exponents: crate::multiarr::exponents(&r.multi)? })
        }
        SplitLine::External(form) => match a.position(form) {
            Some(h) => splitting_type(a, &SplitLine::Member(h)),
            None => Ok(SplittingType { line: line.clone(), exponents: external_exponents(a, form)? }),
        },
    }
}

fn external_exponents(a: &Arrangement, form: &LinearForm3) -> Result<Exponents> {
    if !is_admissible(a, form) {
        return Err(Error::InadmissibleLine(format!("{form} passes through an intersection point")));
    }
    let row = JacobianRow::new(a);
    let param = Parametrization::eliminating_largest(form.coeffs());
    let g: Vec<HomPoly> = row.partials().iter().map(|p| substitute_line(p, &param)).collect();
    let top = a.len() - 1;
    let kernel_dim = |k: usize| -> usize {
        let monos = monomial_exponents(2, k);
        let mut m = QMatrix::zeros(k + top + 1, 3 * monos.len());
        for (i, gi) in g.iter().enumerate() {
            for (j, e) in monos.iter().enumerate() {
                for (r, c) in gi.mul_monomial(e).coeffs().iter().enumerate() {
                    m.set(r, i * monos.len() + j, c.clone());
                }
            }
        }
        3 * monos.len() - m.rank()
    };
    let mut dims = Vec::new();
    let mut found = None;
    let mut e1 = None;
    for k in 0..=top {
        let d = kernel_dim(k);
        dims.push(d);
        match e1 {
            None if d >= 2 => found = Some(Exponents::new(k, k)),
            None if d == 1 => e1 = Some(k),
            Some(e) if d > k + 1 - e => found = Some(Exponents::new(e, k)),
            _ => {}
        }
        if found.is_some() {
            break;
        }
    }
    let fail = || Error::InadmissibleLine(format!("restricted Jacobian kernel along {form} has dimensions {dims:?}"));
    let exps = found.ok_or_else(fail)?;
    let pattern_ok = dims.iter().enumerate().all(|(k, &d)| d == exps.graded_dim(k))
        && kernel_dim(exps.e2 + 1) == exps.graded_dim(exps.e2 + 1);
    if exps.sum() != top || !pattern_ok {
        return Err(fail());
    }
    Ok(exps)
}

/// A line realizing `b2_0 - e1 e2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionWitness {
    pub line: SplitLine,
    pub exponents: Exponents,
}

/// Looks for a line with defect exactly 1: every line of `a`, then the
/// default sample of external lines.
pub fn nearly_free_by_criterion(a: &Arrangement) -> Result<Option<CriterionWitness>> {
    let mut rng = Xorshift64Star::new(DEFAULT_EXTERNAL_SEED);
    let external = external_lines(a, DEFAULT_EXTERNAL_LINES, &mut rng);
    nearly_free_by_criterion_among(a, &external)
}

/// As [`nearly_free_by_criterion`] with an explicit external sample.
pub fn nearly_free_by_criterion_among(a: &Arrangement, external: &[LinearForm3]) -> Result<Option<CriterionWitness>> {
    crate::coverage::hit(crate::coverage::Op::NearlyFreeByCriterion);
    let b2_0 = chi0(a).b2_0;
    let candidates = (0..a.len()).map(SplitLine::Member).chain(external.iter().cloned().map(SplitLine::External));
    for line in candidates {
        let st = splitting_type(a, &line)?;
        if b2_0 - st.exponents.product() as i64 == 1 {
            return Ok(Some(CriterionWitness { line, exponents: st.exponents }));
        }
    }
    Ok(None)
}

/// First components `r0' ..= r0` allowed for splitting types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRange {
    pub r0: usize,
    pub r0_prime: usize,
    pub candidates: Vec<Exponents>,
}

impl SplittingRange {
    pub fn contains(&self, e: &Exponents) -> bool {
        self.candidates.contains(e)
    }
}

pub fn splitting_range(a: &Arrangement) -> Result<SplittingRange> {
    splitting_range_of(&classify(a)?, a.len())
}

/// The range for a known classification of an arrangement of `n` lines.
pub fn splitting_range_of(c: &Classification, n: usize) -> Result<SplittingRange> {
    crate::coverage::hit(crate::coverage::Op::SplittingRange);
    let nu = c.nu.ok_or_else(|| Error::NotApplicable(format!("no nu for a {} arrangement", c.verdict.label())))?;
    let r0 = c.mdr.min((n - 1) / 2);
    let r0_prime = c.mdr.saturating_sub(nu);
    let candidates = (r0_prime..=r0).map(|r| Exponents::new(r, n - 1 - r)).collect();
    Ok(SplittingRange { r0, r0_prime, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_factored;

    fn arr(text: &str) -> Arrangement {
        Arrangement::new(None, parse_factored(text).unwrap()).unwrap()
    }

    #[test]
    fn generic_four_defects() {
        let a = arr("xyz(x+y+z)");
        for h in 0..4 {
            let d = yoshinaga_defect(&a, h).unwrap();
            assert_eq!((d.b2_0, d.defect), (3, 1));
            assert_eq!(d.exponents, Exponents::new(1, 2));
        }
        let w = nearly_free_by_criterion(&a).unwrap().unwrap();
        assert_eq!(w.line, SplitLine::Member(0));
    }

    #[test]
    fn external_line_of_generic_four() {
        let a = arr("xyz(x+y+z)");
        let l = LinearForm3::from_ints(1, 2, 5).unwrap();
        let st = splitting_type(&a, &SplitLine::External(l)).unwrap();
        assert_eq!(st.exponents, Exponents::new(1, 2));
        let bad = LinearForm3::from_ints(1, 1, 0).unwrap();
        assert!(matches!(splitting_type(&a, &SplitLine::External(bad)), Err(Error::InadmissibleLine(_))));
    }

    #[test]
    fn single_line() {
        let a = arr("x");
        let z = ziegler_map(&a, 0).unwrap();
        assert_eq!(z.coker_total(), 0);
        assert_eq!(z.levels[0].domain_dim, z.levels[0].codomain_dim);
        let st = splitting_type(&a, &SplitLine::External(LinearForm3::from_ints(0, 1, 0).unwrap())).unwrap();
        assert_eq!(st.exponents, Exponents::new(0, 0));
    }

    #[test]
    fn ranges() {
        let c = classify(&arr("xyz(x+y)(-x+2y+z)(x+2y+z)")).unwrap();
        let r = splitting_range_of(&c, 6).unwrap();
        assert_eq!((r.r0, r.r0_prime), (2, 1));
        assert_eq!(r.candidates, vec![Exponents::new(1, 4), Exponents::new(2, 3)]);
        let free = classify(&arr("xy(x+y)z")).unwrap();
        assert!(matches!(splitting_range_of(&free, 4), Err(Error::NotApplicable(_))));
    }
}
