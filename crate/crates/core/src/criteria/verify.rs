//! The umbrella validator: every applicable theorem check on one arrangement.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::property_p::{decide, PropertyPVariant};
use super::{
    defect_report, nearly_free_by_criterion_among, splitting_range_of, splitting_type, tower, SplitLine, SplittingType,
    ZieglerMapData, DEFAULT_EXTERNAL_LINES, DEFAULT_EXTERNAL_SEED,
};
use crate::arrangement::{chi0, is_balanced, n_h, nr_form, Arrangement};
use crate::corpus::{external_lines, Xorshift64Star};
use crate::derivation::{ar_dim, classify_with, dh_basis, Classification, JacobianRow, Limits, Verdict};
use crate::error::Result;
use crate::multiarr::{basis, saito_check, Exponents};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Number of random admissible lines outside the arrangement.
    pub external_lines: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { limits: Limits::default(), external_lines: DEFAULT_EXTERNAL_LINES, seed: DEFAULT_EXTERNAL_SEED }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Na,
    OneSided,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Na => "na",
            CheckStatus::OneSided => "one-sided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineReport {
    #[serde(rename = "H")]
    pub h: usize,
    pub exponents: Exponents,
    pub defect: i64,
    #[serde(rename = "n_H")]
    pub n_h: usize,
    pub coker_by_degree: Vec<usize>,
    pub property_p: PropertyPVariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property_p_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub arrangement: Arrangement,
    pub classification: Classification,
    pub b2_0: i64,
    pub lines: Vec<LineReport>,
    pub external: Vec<SplittingType>,
    pub checks: Vec<CheckResult>,
}

impl TheoremReport {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Per line data gathered before the checks run.
struct LineWork {
    data: ZieglerMapData,
    property_p: super::PropertyPResult,
    saito: bool,
    /// `Err` carries the mismatch between `b2_0 - e1 e2` and the cokernel.
    defect: std::result::Result<i64, String>,
    n_h: usize,
    deletion: Option<Classification>,
}

fn line_work(a: &Arrangement, h: usize, b2_0: i64, limits: &Limits) -> Result<LineWork> {
    let t = tower(a, h, limits)?;
    let data = ZieglerMapData::from_tower(&t);
    let defect = match defect_report(&data, b2_0) {
        Ok(d) => Ok(d.defect),
        Err(e) => Err(e.to_string()),
    };
    let property_p = decide(a, &t)?;
    let (t1, t2) = basis(&t.restriction.multi)?;
    let saito = saito_check(&t1, &t2, &t.restriction.multi);
    let deletion = match a.deletion(h) {
        Some(b) => Some(classify_with(&b, limits)?),
        None => None,
    };
    Ok(LineWork { data, property_p, saito, defect, n_h: n_h(a, h)?, deletion })
}

pub fn verify(a: &Arrangement) -> Result<TheoremReport> {
    verify_with(a, &VerifyOptions::default())
}

pub fn verify_with(a: &Arrangement, opts: &VerifyOptions) -> Result<TheoremReport> {
    crate::coverage::hit(crate::coverage::Op::Verify);
    let c = classify_with(a, &opts.limits)?;
    let b2_0 = chi0(a).b2_0;
    let work = (0..a.len()).into_par_iter().map(|h| line_work(a, h, b2_0, &opts.limits)).collect::<Result<Vec<_>>>()?;
    let mut rng = Xorshift64Star::new(opts.seed);
    let forms = external_lines(a, opts.external_lines, &mut rng);
    let external =
        forms.par_iter().map(|l| splitting_type(a, &SplitLine::External(l.clone()))).collect::<Result<Vec<_>>>()?;
    let witness = nearly_free_by_criterion_among(a, &forms)?.map(|w| w.line.to_string());
    let lines: Vec<LineReport> = work
        .iter()
        .enumerate()
        .map(|(h, w)| LineReport {
            h,
            exponents: w.data.exponents,
            defect: b2_0 - w.data.exponents.product() as i64,
            n_h: w.n_h,
            coker_by_degree: w.data.coker_by_degree(),
            property_p: w.property_p.holds,
            property_p_form: w.property_p.witness.as_ref().map(|x| x.form_string()),
        })
        .collect();
    let ctx = Ctx { a, c: &c, b2_0, work: &work, lines: &lines, external: &external, witness };
    let checks = ctx.run();
    Ok(TheoremReport { arrangement: a.clone(), classification: c.clone(), b2_0, lines, external, checks })
}

struct Ctx<'a> {
    a: &'a Arrangement,
    c: &'a Classification,
    b2_0: i64,
    work: &'a [LineWork],
    lines: &'a [LineReport],
    external: &'a [SplittingType],
    witness: Option<String>,
}

fn result(id: &str, status: CheckStatus, detail: impl Into<String>) -> CheckResult {
    CheckResult { id: id.into(), status, detail: detail.into() }
}

fn pass_if(id: &str, ok: bool, detail: impl Into<String>) -> CheckResult {
    result(id, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail)
}

fn na(id: &str, detail: impl Into<String>) -> CheckResult {
    result(id, CheckStatus::Na, detail)
}

fn list<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.a.len()
    }

    fn all_types(&self) -> Vec<(String, Exponents)> {
        self.lines
            .iter()
            .map(|l| (format!("H{}", l.h), l.exponents))
            .chain(self.external.iter().map(|s| (s.line.to_string(), s.exponents)))
            .collect()
    }

    fn run(&self) -> Vec<CheckResult> {
        vec![
            self.euler(),
            self.hilbert(),
            self.dh_dims(),
            self.saito(),
            self.classification_sums(),
            self.pog_level_bound(),
            self.thm1_2(),
            self.thm1_3(),
            self.thm1_5(),
            self.thm1_6(),
            self.thm1_7(),
            self.thm2_3(),
            self.prop2_5(),
            self.thm2_7(),
            self.thm2_8(),
            self.prop3_1(),
            self.prop3_2(),
            self.prop3_5(),
            self.cor3_6(),
            self.prop4_1(),
            self.prop4_2(),
            self.thm4_3(),
            self.lemma4_4(),
            self.cor4_5(),
            self.prop4_6(),
            self.prop4_7(),
        ]
    }

    fn euler(&self) -> CheckResult {
        pass_if("euler", JacobianRow::new(self.a).euler_holds(), "x fx + y fy + z fz = |A| f")
    }

    /// `dim AR(f)_k` up to one past the top generator, computed in three variables.
    fn ar_dims(&self) -> Vec<usize> {
        let top = self.c.shape.generator_degrees.iter().copied().max().unwrap_or(0) + 1;
        (0..=top.min(self.n())).map(|k| ar_dim(self.a, k)).collect()
    }

    fn hilbert(&self) -> CheckResult {
        if self.c.shape.cap_hit {
            return na("hilbert", "degree cap hit before certification");
        }
        let dims = self.ar_dims();
        let predicted: Vec<i64> = (0..dims.len()).map(|k| self.c.shape.hilbert(k)).collect();
        let ok = dims.iter().zip(&predicted).all(|(&d, &p)| d as i64 == p);
        pass_if("hilbert", ok, format!("ar_dim {} vs resolution {}", list(&dims), list(&predicted)))
    }

    fn dh_dims(&self) -> CheckResult {
        let dims = self.ar_dims();
        let mut bad = Vec::new();
        for w in self.work {
            for l in &w.data.levels {
                if l.degree < dims.len() && l.domain_dim != dims[l.degree] {
                    bad.push(format!("H{} k={}: {} vs {}", w.data.line, l.degree, l.domain_dim, dims[l.degree]));
                }
            }
        }
        let mdr = self.c.mdr;
        match dh_basis(self.a, 0, mdr) {
            Ok(b) => {
                let members = b.iter().all(|t| t.in_dh(self.a, 0).unwrap_or(false));
                if !members || b.len() != ar_dim(self.a, mdr) {
                    bad.push(format!("D_H(A)_{mdr} basis of {} elements, members {members}", b.len()));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
        pass_if(
            "dh_dims",
            bad.is_empty(),
            if bad.is_empty() { format!("ar_dim {}", list(&dims)) } else { bad.join("; ") },
        )
    }

    fn saito(&self) -> CheckResult {
        let bad: Vec<usize> = self.work.iter().filter(|w| !w.saito).map(|w| w.data.line).collect();
        pass_if("saito", bad.is_empty(), format!("Ziegler bases failing the determinant test: {}", list(&bad)))
    }

    fn classification_sums(&self) -> CheckResult {
        let n = self.n();
        match self.c.verdict {
            Verdict::Free { a, b } => pass_if(
                "classification_sums",
                a + b == n - 1 && (a * b) as i64 == self.b2_0,
                format!("free ({a}, {b}); |A| - 1 = {}, b2_0 = {}", n - 1, self.b2_0),
            ),
            Verdict::NearlyFree { .. } | Verdict::PlusOneGenerated { .. } => {
                let (a, b, d) = self.c.pog().expect("plus-one generated");
                let expected = ((a as i64) - 1) * ((b as i64) - 1) + d as i64;
                pass_if(
                    "classification_sums",
                    a + b == n && expected == self.b2_0,
                    format!("({a}, {b}) level {d}; |A| = {n}, b2_0 = {} vs (a-1)(b-1)+d = {expected}", self.b2_0),
                )
            }
            Verdict::Other { .. } => na("classification_sums", "verdict other"),
        }
    }

    fn pog_level_bound(&self) -> CheckResult {
        match self.c.pog() {
            Some((a, b, d)) => pass_if(
                "pog_level_bound",
                b <= d && d < a + b,
                format!("b = {b} <= d = {d} <= a + b - 1 = {}", a + b - 1),
            ),
            None => na("pog_level_bound", "not plus-one generated"),
        }
    }

    fn thm1_2(&self) -> CheckResult {
        let Some((a, b)) = self.c.free_exponents() else {
            return na("thm1.2", "not free");
        };
        let e = Exponents::new(a, b);
        let ok =
            self.lines.iter().all(|l| l.exponents == e && l.defect == 0 && l.coker_by_degree.iter().all(|&c| c == 0));
        pass_if("thm1.2", ok, format!("exponents {}", list(self.lines.iter().map(|l| l.exponents))))
    }

    fn thm1_3(&self) -> CheckResult {
        let mut ok = true;
        let mut detail = String::new();
        for (l, w) in self.lines.iter().zip(self.work) {
            let coker = w.data.coker_total() as i64;
            ok &= w.defect == Ok(l.defect) && l.defect == coker && l.defect >= 0;
            let _ = write!(detail, "H{}: defect {} coker {}; ", l.h, l.defect, coker);
        }
        let zero_somewhere = self.lines.iter().any(|l| l.defect == 0);
        let zero_everywhere = self.lines.iter().all(|l| l.defect == 0);
        ok &= zero_somewhere == self.c.is_free() && (!self.c.is_free() || zero_everywhere);
        pass_if("thm1.3", ok, detail.trim_end_matches("; ").to_string())
    }

    fn thm1_5(&self) -> CheckResult {
        let id = "thm1.5";
        let negative = self.external.iter().any(|s| self.b2_0 < s.exponents.product() as i64);
        if negative {
            return result(id, CheckStatus::Fail, "an external line has b2_0 < e1 e2");
        }
        match (self.c.is_nearly_free(), self.witness.clone()) {
            (true, Some(w)) => pass_if(id, true, format!("nearly free; defect 1 along {w}")),
            (true, None) => result(id, CheckStatus::Fail, "nearly free but no scanned line has defect 1"),
            (false, Some(w)) => result(id, CheckStatus::Fail, format!("defect 1 along {w} but not nearly free")),
            (false, None) => result(
                id,
                CheckStatus::OneSided,
                format!("no defect 1 among {} lines of A and {} external lines", self.lines.len(), self.external.len()),
            ),
        }
    }

    fn thm1_6(&self) -> CheckResult {
        let with_p: Vec<usize> =
            self.lines.iter().filter(|l| l.property_p != PropertyPVariant::None).map(|l| l.h).collect();
        pass_if(
            "thm1.6",
            with_p.is_empty() != self.c.is_pog(),
            format!("[P] holds on lines {}; verdict {}", list(&with_p), self.c.verdict.label()),
        )
    }

    fn thm1_7(&self) -> CheckResult {
        let Verdict::NearlyFree { a, b } = self.c.verdict else {
            return na("thm1.7", "not nearly free");
        };
        let allowed = [Exponents::new(a.saturating_sub(1), b), Exponents::new(a, b.saturating_sub(1))];
        let ok = a >= 1 && self.lines.iter().all(|l| allowed.contains(&l.exponents));
        pass_if("thm1.7", ok, format!("exponents {}", list(self.lines.iter().map(|l| l.exponents))))
    }

    fn thm2_3(&self) -> CheckResult {
        let Some((a, b)) = self.c.free_exponents() else {
            return na("thm2.3", "not free");
        };
        let ok = self.lines.iter().all(|l| l.n_h <= a + 1 || l.n_h == b + 1);
        pass_if("thm2.3", ok, format!("free ({a}, {b}); n_H {}", list(self.lines.iter().map(|l| l.n_h))))
    }

    fn prop2_5(&self) -> CheckResult {
        let n = self.n();
        let hits: Vec<&LineReport> = self.lines.iter().filter(|l| 2 * l.n_h > n).collect();
        if hits.is_empty() {
            return na("prop2.5", "no line with n_H >= (|A| + 1) / 2");
        }
        let ok = hits.iter().all(|l| l.exponents == Exponents::new(n - l.n_h, l.n_h - 1));
        pass_if("prop2.5", ok, list(hits.iter().map(|l| format!("H{}: n_H {} exponents {}", l.h, l.n_h, l.exponents))))
    }

    fn thm2_7(&self) -> CheckResult {
        let unbalanced: BTreeSet<usize> = is_balanced(self.a).violations.iter().map(|&(h, _)| h).collect();
        let hits: Vec<&LineReport> = self.lines.iter().filter(|l| !unbalanced.contains(&l.h) && l.n_h > 2).collect();
        if hits.is_empty() {
            return na("thm2.7", "no balanced restriction with more than two points");
        }
        let ok = hits.iter().all(|l| l.exponents.e2 - l.exponents.e1 <= l.n_h - 2);
        pass_if("thm2.7", ok, list(hits.iter().map(|l| format!("H{}: {} with {} points", l.h, l.exponents, l.n_h))))
    }

    fn thm2_8(&self) -> CheckResult {
        let mut detail = Vec::new();
        let mut ok = true;
        for (l, w) in self.lines.iter().zip(self.work) {
            let Some((a, b)) = w.deletion.as_ref().and_then(Classification::free_exponents) else {
                continue;
            };
            let nearly = self.c.verdict == Verdict::NearlyFree { a: a + 1, b: b + 1 };
            let count = l.n_h == b + 2;
            ok &= nearly == count;
            detail.push(format!(
                "H{}: A \\ H free ({a}, {b}), nearly free ({}, {}) {nearly}, n_H = {} {count}",
                l.h,
                a + 1,
                b + 1,
                b + 2
            ));
        }
        if detail.is_empty() {
            return na("thm2.8", "no deletion is free");
        }
        pass_if("thm2.8", ok, detail.join("; "))
    }

    fn prop3_1(&self) -> CheckResult {
        let nr = nr_form(self.a);
        if nr.c != 1 {
            return na("prop3.1", format!("chi0 = (t-{})(t-{}) + {}", nr.n, nr.n + nr.r, nr.c));
        }
        let (n, r) = (nr.n as usize, nr.r as usize);
        let inside: Vec<usize> =
            self.lines.iter().filter(|l| n + 1 < l.n_h && l.n_h < n + r + 1).map(|l| l.h).collect();
        let exceptional = r == 2 && self.c.verdict == Verdict::Free { a: n + 1, b: n + 1 };
        let ok =
            if exceptional { self.lines.iter().all(|l| l.n_h <= n + 1 || l.n_h == n + 2) } else { inside.is_empty() };
        pass_if("prop3.1", ok, format!("n = {n}, r = {r}; lines with n+1 < n_H < n+r+1: {}", list(&inside)))
    }

    fn prop3_2(&self) -> CheckResult {
        let nr = nr_form(self.a);
        if !is_balanced(self.a).balanced || nr.c != 1 {
            return na("prop3.2", "not balanced with residual 1");
        }
        let (n, r) = (nr.n as usize, nr.r as usize);
        let Some(l) = self.lines.iter().find(|l| l.n_h == r + 2) else {
            return na("prop3.2", format!("no line with n_H = r + 2 = {}", r + 2));
        };
        let ok = self.c.is_nearly_free() || (r == 2 && self.c.verdict == Verdict::Free { a: n + 1, b: n + 1 });
        pass_if("prop3.2", ok, format!("H{} has n_H = {}; verdict {}", l.h, l.n_h, self.c.verdict.label()))
    }

    fn is_generic_four(&self) -> bool {
        self.n() == 4 && self.a.points().iter().all(|p| p.multiplicity() == 2)
    }

    fn prop3_5(&self) -> CheckResult {
        let Verdict::NearlyFree { b, .. } = self.c.verdict else {
            return na("prop3.5", "not nearly free");
        };
        let bounded = self.lines.iter().all(|l| l.n_h <= b + 1);
        let below = self.is_generic_four() || self.lines.iter().any(|l| l.n_h < b + 1);
        pass_if(
            "prop3.5",
            bounded && below,
            format!("b + 1 = {}; n_H {}", b + 1, list(self.lines.iter().map(|l| l.n_h))),
        )
    }

    fn cor3_6(&self) -> CheckResult {
        let Verdict::NearlyFree { b, .. } = self.c.verdict else {
            return na("cor3.6", "not nearly free");
        };
        let top: Vec<usize> = self.lines.iter().filter(|l| l.n_h == b + 1).map(|l| l.h).collect();
        let mut ok = true;
        for (i, &h) in top.iter().enumerate() {
            for &k in &top[i + 1..] {
                let m = self
                    .a
                    .points()
                    .iter()
                    .find(|p| p.contains_line(h) && p.contains_line(k))
                    .map_or(0, |p| p.multiplicity());
                ok &= m == 2;
            }
        }
        pass_if("cor3.6", ok, format!("lines with n_H = b + 1: {}", list(&top)))
    }

    fn prop4_1(&self) -> CheckResult {
        let n = self.n();
        let bad: Vec<String> =
            self.all_types().into_iter().filter(|(_, e)| e.sum() != n - 1).map(|(l, e)| format!("{l}: {e}")).collect();
        pass_if(
            "prop4.1",
            bad.is_empty(),
            format!("{} splitting types; off by sum: {}", self.all_types().len(), list(&bad)),
        )
    }

    fn prop4_2(&self) -> CheckResult {
        let Ok(range) = splitting_range_of(self.c, self.n()) else {
            return na("prop4.2", "no nu for this verdict");
        };
        let bad: Vec<String> = self
            .all_types()
            .into_iter()
            .filter(|(_, e)| !range.contains(e))
            .map(|(l, e)| format!("{l}: {e}"))
            .collect();
        pass_if(
            "prop4.2",
            bad.is_empty(),
            format!("r0' = {}, r0 = {}; outside: {}", range.r0_prime, range.r0, list(&bad)),
        )
    }

    fn thm4_3(&self) -> CheckResult {
        let Some((a, b, d)) = self.c.pog() else {
            return na("thm4.3", "not plus-one generated");
        };
        let mut allowed = vec![Exponents::new(a.saturating_sub(1), b), Exponents::new(a, b.saturating_sub(1))];
        if a + b > d {
            allowed.push(Exponents::new(a + b - d - 1, d));
        }
        let types = self.all_types();
        let seen: BTreeSet<Exponents> = types.iter().map(|(_, e)| *e).collect();
        let bad: Vec<String> =
            types.iter().filter(|(_, e)| !allowed.contains(e)).map(|(l, e)| format!("{l}: {e}")).collect();
        pass_if(
            "thm4.3",
            a >= 1 && bad.is_empty(),
            format!("allowed {}; observed {}; outside: {}", list(&allowed), list(&seen), list(&bad)),
        )
    }

    fn lemma4_4(&self) -> CheckResult {
        let Some((a, b, d)) = self.c.pog() else {
            return na("lemma4.4", "not plus-one generated");
        };
        if b == d {
            return na("lemma4.4", "b = d");
        }
        let third = Exponents::new((a + b).saturating_sub(d + 1), d);
        let hits: Vec<usize> = self.lines.iter().filter(|l| l.exponents == third).map(|l| l.h).collect();
        pass_if("lemma4.4", hits.len() <= 1, format!("lines with exponents {third}: {}", list(&hits)))
    }

    fn cor4_5(&self) -> CheckResult {
        let Some((_, b, d)) = self.c.pog() else {
            return na("cor4.5", "not plus-one generated");
        };
        let hits: Vec<usize> = self.lines.iter().filter(|l| l.n_h == d + 1).map(|l| l.h).collect();
        if b == d {
            return na("cor4.5", format!("b = d, uniqueness not claimed; lines with n_H = {}: {}", d + 1, list(&hits)));
        }
        pass_if("cor4.5", hits.len() <= 1, format!("lines with n_H = {}: {}", d + 1, list(&hits)))
    }

    fn prop4_6(&self) -> CheckResult {
        let Some((_, _, d)) = self.c.pog() else {
            return na("prop4.6", "not plus-one generated");
        };
        pass_if(
            "prop4.6",
            self.lines.iter().all(|l| l.n_h <= d + 1),
            format!("d + 1 = {}; n_H {}", d + 1, list(self.lines.iter().map(|l| l.n_h))),
        )
    }

    fn prop4_7(&self) -> CheckResult {
        let Some((a, b, d)) = self.c.pog() else {
            return na("prop4.7", "not plus-one generated");
        };
        let allowed = [a, a + 1, b, b + 1, d + 1];
        let ok = self.lines.iter().filter(|l| l.n_h >= a).all(|l| allowed.contains(&l.n_h));
        pass_if("prop4.7", ok, format!("allowed {}; n_H {}", list(allowed), list(self.lines.iter().map(|l| l.n_h))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_factored;

    #[test]
    fn generic_four_report() {
        let a = Arrangement::new(None, parse_factored("xyz(x+y+z)").unwrap()).unwrap();
        let r = verify(&a).unwrap();
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.check("thm1.5").unwrap().status, CheckStatus::Pass);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<TheoremReport>(&text).unwrap(), r);
    }
}
