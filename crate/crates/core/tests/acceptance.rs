//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p arrlog-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use arrlog::arrangement::{chi0, n_h};
use arrlog::corpus::{external_lines, fixture, fixtures, generate, random_corpus, Family, Xorshift64Star};
use arrlog::criteria::{
    property_p, splitting_type, verify, ziegler_map, CheckStatus, PropertyPVariant, SplitLine, DEFAULT_EXTERNAL_LINES,
    DEFAULT_EXTERNAL_SEED,
};
use arrlog::derivation::{classify, Derivation3, Verdict};
use arrlog::multiarr::{exponents, saito_check, ziegler_restriction, Derivation2, Exponents, LinearForm2};
use arrlog::{Arrangement, LinearForm3};
use rayon::prelude::*;

const CORPUS_SEED: u64 = 20_240_401;
const CORPUS_SIZE: usize = 100;
const FIXTURE_BUDGET: Duration = Duration::from_secs(5);
const SUITE_BUDGET: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn line_of(a: &Arrangement, c: [i64; 3]) -> usize {
    let form = LinearForm3::from_ints(c[0], c[1], c[2]).unwrap();
    a.position(&form).unwrap_or_else(|| panic!("{form} not in {}", a.factored_string()))
}

fn corpus() -> Vec<Arrangement> {
    let mut out: Vec<Arrangement> = fixtures().into_iter().map(|f| f.arrangement).collect();
    out.extend(random_corpus(CORPUS_SIZE, 8, CORPUS_SEED).unwrap());
    out
}

fn name(a: &Arrangement) -> String {
    a.name().unwrap_or("?").to_string()
}

fn criterion1() -> Outcome {
    let mut seen = Vec::new();
    for f in fixtures() {
        let t = Instant::now();
        let c = classify(&f.arrangement).map_err(|e| format!("{}: {e}", f.name))?;
        ensure(t.elapsed() < FIXTURE_BUDGET, || format!("{} took {:?}", f.name, t.elapsed()))?;
        ensure(c.verdict == f.expected, || format!("{}: {:?} vs {:?}", f.name, c.verdict, f.expected))?;
        seen.push(format!("{} {}", f.name, c.verdict.label()));
    }
    let counter = classify(&fixture("counter").unwrap().arrangement).unwrap();
    ensure(counter.pog() == Some((3, 3, 3)), || "counter is not POG(3,3,3)".into())?;
    Ok(seen.join(", "))
}

fn criterion2() -> Outcome {
    let expect = |fx: &str, lines: Vec<usize>, e: Exponents| -> Result<(), String> {
        let a = fixture(fx).unwrap().arrangement;
        for h in lines {
            let got = ziegler_map(&a, h).map_err(|e| e.to_string())?.exponents;
            let direct = exponents(&ziegler_restriction(&a, h).unwrap().multi).unwrap();
            ensure(got == e && direct == e, || format!("{fx} H{h}: {got} / {direct} vs {e}"))?;
        }
        Ok(())
    };
    let z = [0, 0, 1];
    let pog_one = fixture("pog_one_h").unwrap().arrangement;
    expect("pog_one_h", vec![line_of(&pog_one, z)], Exponents::new(1, 4))?;
    let no_h = fixture("pog_no_h").unwrap().arrangement;
    expect("pog_no_h", (0..no_h.len()).collect(), Exponents::new(2, 3))?;
    expect("generic_4lines", (0..4).collect(), Exponents::new(1, 2))?;
    let nsc = fixture("necsufcond").unwrap().arrangement;
    expect("necsufcond", vec![line_of(&nsc, z)], Exponents::new(2, 3))?;
    let nsc2 = fixture("necsufcond2").unwrap().arrangement;
    expect("necsufcond2", vec![line_of(&nsc2, z)], Exponents::new(2, 4))?;

    let counter = fixture("counter").unwrap().arrangement;
    let l = line_of(&counter, [1, 5, 1]);
    let h = line_of(&counter, [1, 4, 0]);
    let nl = n_h(&counter, l).unwrap();
    let nh = n_h(&counter, h).unwrap();
    let four: Vec<usize> = (0..counter.len()).filter(|&i| n_h(&counter, i).unwrap() == 4).collect();
    ensure(nl == 4, || format!("counter: n_L = {nl} for x+5y+z"))?;
    ensure(four.len() >= 2, || format!("counter: lines with n_H = 4: {four:?}"))?;
    Ok(format!(
        "exponents match; counter n_(x+5y+z) = {nl}, lines with n_H = 4: {four:?}; \
         n_(x+4y) = {nh}, not 4: x+4y, y+z, x+5y+z meet at (-4:1:-1)"
    ))
}

fn criterion3() -> Outcome {
    let xy = ['x', 'y'];
    let d2 = |p: &str, q: &str| Derivation2::parse(p, q, xy).unwrap();
    let d3 = |c: [&str; 3]| Derivation3::parse(c).unwrap();

    let a = fixture("necsufcond").unwrap().arrangement;
    let h = line_of(&a, [0, 0, 1]);
    let r = ziegler_restriction(&a, h).unwrap();
    let delta1 = d2("x^2", "xy");
    let delta2 = d2("2x^2y", "y(x^2+2xy-y^2)");
    ensure(saito_check(&delta1, &delta2, &r.multi), || "necsufcond: delta basis fails Saito".into())?;
    let theta1 = d3(["y(x+z)x", "y(x+z)(y+2z)", "0"]);
    let theta2 = d3(["2xy(x+z)", "y(x^2+2xy-y^2+4xz-2yz)", "0"]);
    for (t, deg) in [(&theta1, 3), (&theta2, 3)] {
        ensure(t.degree() == deg && t.in_dh(&a, h).unwrap(), || format!("necsufcond: {t:?} not in D_H"))?;
    }
    let y = LinearForm2::from_ints(0, 1).unwrap();
    ensure(theta1.restrict(&r.param) == delta1.mul_poly(&y.to_poly()), || "necsufcond: pi(theta1) != y delta1".into())?;
    ensure(theta2.restrict(&r.param) == delta2, || "necsufcond: pi(theta2) != delta2".into())?;
    let p = property_p(&a, h).unwrap();
    let w = p.witness.as_ref().ok_or("necsufcond: no [P] witness")?;
    ensure(p.holds == PropertyPVariant::Variant1 && w.form == y, || {
        format!("necsufcond: {:?} alpha {}", p.holds, w.form_string())
    })?;
    let alpha1 = w.form_string();

    let a = fixture("necsufcond2").unwrap().arrangement;
    let h = line_of(&a, [0, 0, 1]);
    let r = ziegler_restriction(&a, h).unwrap();
    let delta1 = d2("xy", "y^2");
    let delta2 = d2("x(x+4y)(x^2-7xy-12y^2)", "-y^2(x+4y)(7x+11y)");
    ensure(saito_check(&delta1, &delta2, &r.multi), || "necsufcond2: delta basis fails Saito".into())?;
    let theta1 = d3(["(y+z)(x+4y+z)x", "(y+z)(x+4y+z)y", "0"]);
    let theta2 = d3(["x(x+4y+z)(x^2-7xy-12y^2-7xz-11yz)", "-y(y+z)(x+4y+z)(7x+11y)", "0"]);
    let psi = d3(["-xz(y+z)(4xy-12y^2+xz-11yz-8z^2)", "yz(y+z)(x^2-4xy+11y^2-xz+11yz+8z^2)", "0"]);
    for (t, deg) in [(&theta1, 3), (&theta2, 4)] {
        ensure(t.degree() == deg && t.in_dh(&a, h).unwrap(), || {
            format!("necsufcond2: degree {deg} element not in D_H")
        })?;
    }
    let alpha = LinearForm2::from_ints(1, 4).unwrap();
    ensure(theta1.restrict(&r.param) == delta1.mul_poly(&alpha.to_poly()), || {
        "necsufcond2: pi(theta1) != alpha delta1".into()
    })?;
    ensure(theta2.restrict(&r.param) == delta2, || "necsufcond2: pi(theta2) != delta2".into())?;
    let p = property_p(&a, h).unwrap();
    let w = p.witness.as_ref().ok_or("necsufcond2: no [P] witness")?;
    ensure(p.holds == PropertyPVariant::Variant1 && w.form == alpha, || {
        format!("necsufcond2: {:?} alpha {}", p.holds, w.form_string())
    })?;
    let psi_tangent = psi.is_logarithmic(&a);
    Ok(format!(
        "Saito and D_H membership hold; variant 1 with alpha = {alpha1} and {}; \
         the printed degree 5 psi is logarithmic: {psi_tangent} (not tangent to x+4y+z)",
        w.form_string()
    ))
}

fn criterion4(corpus: &[Arrangement]) -> Outcome {
    let checked: usize = corpus
        .par_iter()
        .map(|a| -> Result<usize, String> {
            let t = Instant::now();
            let free = classify(a).map_err(|e| e.to_string())?.is_free();
            let b2_0 = chi0(a).b2_0;
            let mut zeros = 0;
            for h in 0..a.len() {
                let e = exponents(&ziegler_restriction(a, h).unwrap().multi).unwrap();
                let defect = b2_0 - e.product() as i64;
                let coker = ziegler_map(a, h).map_err(|e| e.to_string())?.coker_total() as i64;
                ensure(defect == coker && defect >= 0, || format!("{} H{h}: defect {defect} coker {coker}", name(a)))?;
                zeros += usize::from(defect == 0);
            }
            ensure((zeros > 0) == free && (!free || zeros == a.len()), || {
                format!("{}: zero defects on {zeros} lines, free {free}", name(a))
            })?;
            ensure(t.elapsed() < FIXTURE_BUDGET, || format!("{} took {:?}", name(a), t.elapsed()))?;
            Ok(a.len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{} arrangements, {checked} lines", corpus.len()))
}

fn criterion5(corpus: &[Arrangement]) -> Outcome {
    let pog: usize = corpus
        .par_iter()
        .map(|a| -> Result<usize, String> {
            let c = classify(a).map_err(|e| e.to_string())?;
            let mut with_p = false;
            for h in 0..a.len() {
                with_p |= property_p(a, h).map_err(|e| e.to_string())?.holds();
            }
            ensure(with_p == c.is_pog(), || format!("{}: [P] {with_p}, verdict {}", name(a), c.verdict.label()))?;
            Ok(usize::from(with_p))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{} arrangements, {pog} plus-one generated, zero disagreements", corpus.len()))
}

fn criterion6(corpus: &[Arrangement]) -> Outcome {
    let stats = corpus
        .par_iter()
        .map(|a| -> Result<(usize, usize), String> {
            let c = classify(a).map_err(|e| e.to_string())?;
            let Some((pa, pb, d)) = c.pog() else {
                return Ok((0, 0));
            };
            let n = a.len();
            let mut allowed = vec![Exponents::new(pa - 1, pb), Exponents::new(pa, pb - 1)];
            if pa + pb > d {
                allowed.push(Exponents::new(pa + pb - d - 1, d));
            }
            let mut rng = Xorshift64Star::new(DEFAULT_EXTERNAL_SEED);
            let externals = external_lines(a, DEFAULT_EXTERNAL_LINES, &mut rng);
            ensure(externals.len() == DEFAULT_EXTERNAL_LINES, || {
                format!("{}: only {} external lines", name(a), externals.len())
            })?;
            let lines = (0..n).map(SplitLine::Member).chain(externals.into_iter().map(SplitLine::External));
            let mut third_members = 0;
            let mut top = 0;
            let mut count = 0;
            for l in lines {
                let s = splitting_type(a, &l).map_err(|e| e.to_string())?;
                ensure(allowed.contains(&s.exponents) && s.exponents.sum() == n - 1, || {
                    format!("{} {}: {} outside {allowed:?}", name(a), s.line, s.exponents)
                })?;
                if let SplitLine::Member(h) = l {
                    third_members += usize::from(s.exponents == Exponents::new(pa + pb - d - 1, d));
                    top += usize::from(n_h(a, h).unwrap() == d + 1);
                }
                count += 1;
            }
            if pb < d {
                ensure(third_members <= 1 && top <= 1, || {
                    format!("{}: {third_members} third-type lines, {top} with n_H = d+1", name(a))
                })?;
            }
            Ok((1, count))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let members: usize = stats.iter().map(|s| s.0).sum();
    let types: usize = stats.iter().map(|s| s.1).sum();
    ensure(members > 0, || "no plus-one generated corpus members".into())?;
    Ok(format!("{members} plus-one generated members, {types} splitting types"))
}

fn criterion7() -> Outcome {
    for n in 4..=8 {
        let a = generate(Family::NearPencil, n, 0).unwrap();
        let c = classify(&a).map_err(|e| e.to_string())?;
        ensure(c.verdict == Verdict::Free { a: 1, b: n - 2 }, || format!("near-pencil {n}: {:?}", c.verdict))?;
        let b2_0 = chi0(&a).b2_0;
        for h in 0..n {
            let e = ziegler_map(&a, h).map_err(|e| e.to_string())?.exponents;
            ensure(e == Exponents::new(1, n - 2) && b2_0 == e.product() as i64, || {
                format!("near-pencil {n} H{h}: {e}")
            })?;
        }
    }
    Ok("near-pencils with 4 to 8 lines are free (1, n-2) with zero defects".into())
}

const COMBINATORIAL: [&str; 10] =
    ["thm2.3", "prop2.5", "thm2.7", "thm2.8", "prop3.1", "prop3.2", "prop3.5", "cor3.6", "prop4.6", "prop4.7"];

fn criterion8(corpus: &[Arrangement]) -> Outcome {
    let applied = corpus
        .par_iter()
        .map(|a| -> Result<usize, String> {
            let r = verify(a).map_err(|e| e.to_string())?;
            let mut applied = 0;
            for id in COMBINATORIAL {
                let c = r.check(id).ok_or_else(|| format!("missing check {id}"))?;
                ensure(c.status != CheckStatus::Fail, || format!("{} {id}: {}", name(a), c.detail))?;
                applied += usize::from(c.status == CheckStatus::Pass);
            }
            Ok(applied)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum::<usize>();
    Ok(format!("{} arrangements, {applied} applicable checks passed, zero failures", corpus.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let runs: Vec<Criterion> = vec![
        ("1 fixture classifications", Box::new(criterion1)),
        ("2 Ziegler exponents", Box::new(criterion2)),
        ("3 witness data", Box::new(criterion3)),
        ("4 defect equals cokernel", Box::new(|| criterion4(&corpus))),
        ("5 [P] iff plus-one generated", Box::new(|| criterion5(&corpus))),
        ("6 splitting types", Box::new(|| criterion6(&corpus))),
        ("7 near-pencil oracle", Box::new(criterion7)),
        ("8 combinatorial validators", Box::new(|| criterion8(&corpus))),
    ];
    let mut failed = 0;
    for (label, run) in runs {
        let t = Instant::now();
        let outcome =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {label} ({:.2?}): {detail}", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {label} ({:.2?}): {detail}", t.elapsed());
            }
        }
    }
    let total = start.elapsed();
    if total > SUITE_BUDGET {
        failed += 1;
        println!("FAIL suite time {total:.2?} over {SUITE_BUDGET:?}");
    }
    println!("acceptance: {} of 8 criteria passed in {total:.2?}", 8 - failed.min(8));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
