//! The fixture corpus and seeded arrangement generators.

mod rng;

use std::fmt;
use std::str::FromStr;

use crate::arrangement::{parse_arrangement, Arrangement, LinearForm3};
use crate::derivation::Verdict;
use crate::error::{Error, Result};

pub use rng::Xorshift64Star;

const FIXTURE_SOURCES: [(&str, &str); 6] = [
    ("counter", include_str!("../../fixtures/counter.json")),
    ("pog_one_h", include_str!("../../fixtures/pog_one_h.json")),
    ("pog_no_h", include_str!("../../fixtures/pog_no_h.json")),
    ("generic_4lines", include_str!("../../fixtures/generic_4lines.json")),
    ("necsufcond", include_str!("../../fixtures/necsufcond.json")),
    ("necsufcond2", include_str!("../../fixtures/necsufcond2.json")),
];

/// Attempts allowed per line before a generator gives up.
const LINE_BUDGET: usize = 1000;

/// A stored example with its expected verdict.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub arrangement: Arrangement,
    pub expected: Verdict,
}

fn expected_verdict(source: &str) -> Result<Verdict> {
    let doc: serde_json::Value = serde_json::from_str(source).map_err(|e| Error::Parse(e.to_string()))?;
    let exp = &doc["expected"];
    let num = |v: &serde_json::Value| -> Result<usize> {
        v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("bad expected entry {v}")))
    };
    let (a, b) = (num(&exp["exponents"][0])?, num(&exp["exponents"][1])?);
    match exp["verdict"].as_str() {
        Some("free") => Ok(Verdict::Free { a, b }),
        Some("nearly-free") => Ok(Verdict::NearlyFree { a, b }),
        Some("plus-one-generated") => Ok(Verdict::PlusOneGenerated { a, b, d: num(&exp["level"])? }),
        other => Err(Error::Parse(format!("unknown expected verdict {other:?}"))),
    }
}

/// The six stored examples, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    FIXTURE_SOURCES
        .iter()
        .map(|&(name, source)| Fixture {
            name,
            source,
            arrangement: parse_arrangement(source).expect("stored fixture parses"),
            expected: expected_verdict(source).expect("stored fixture has an expected verdict"),
        })
        .collect()
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Generic,
    NearPencil,
    Pencil,
    Random,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Generic, Family::NearPencil, Family::Pencil, Family::Random];

    pub fn name(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::NearPencil => "near-pencil",
            Family::Pencil => "pencil",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

fn random_row(rng: &mut Xorshift64Star, bound: i64) -> [i64; 3] {
    [rng.range(-bound, bound), rng.range(-bound, bound), rng.range(-bound, bound)]
}

/// True when adding `row` keeps every intersection point a double point.
fn keeps_generic(rows: &[[i64; 3]], row: [i64; 3]) -> bool {
    let det = |a: [i64; 3], b: [i64; 3], c: [i64; 3]| {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if det(rows[i], rows[j], row) == 0 {
                return false;
            }
        }
    }
    true
}

fn sample_lines(n: usize, rng: &mut Xorshift64Star, bound: i64, generic: bool) -> Result<Vec<[i64; 3]>> {
    let mut rows: Vec<[i64; 3]> = Vec::with_capacity(n);
    let mut forms: Vec<LinearForm3> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut placed = false;
        for _ in 0..LINE_BUDGET {
            let row = random_row(rng, bound);
            let Some(form) = LinearForm3::from_ints(row[0], row[1], row[2]) else {
                continue;
            };
            if forms.contains(&form) || (generic && !keeps_generic(&rows, row)) {
                continue;
            }
            rows.push(row);
            forms.push(form);
            placed = true;
            break;
        }
        if !placed {
            return Err(Error::Precondition(format!("resampling budget exhausted after {} lines", rows.len())));
        }
    }
    Ok(rows)
}

/// Generates `n >= 1` lines of the given family; deterministic in `seed`.
///
/// * generic: coefficients in `[-9, 9]`, resampled until no three lines meet;
/// * near-pencil: `y, x, x + y, ..., x + (n-3) y` through `(0:0:1)`, plus `z`;
/// * pencil: `y, x, x + y, ..., x + (n-2) y`;
/// * random: coefficients in `[-2, 2]`, repeated lines rejected.
pub fn generate(family: Family, n: usize, seed: u64) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::Precondition("an arrangement needs at least one line".into()));
    }
    let mut rng = Xorshift64Star::new(seed);
    let through_origin = |count: usize| -> Vec<[i64; 3]> {
        (0..count)
            .map(|i| match i {
                0 => [0, 1, 0],
                1 => [1, 0, 0],
                _ => [1, i as i64 - 1, 0],
            })
            .collect()
    };
    let rows = match family {
        Family::Generic => sample_lines(n, &mut rng, 9, true)?,
        Family::Random => sample_lines(n, &mut rng, 2, false)?,
        Family::Pencil => through_origin(n),
        Family::NearPencil => {
            let mut rows = through_origin(n - 1);
            rows.push([0, 0, 1]);
            rows
        }
    };
    let name = match family {
        Family::Generic | Family::Random => format!("{family}-{n}-seed{seed}"),
        Family::Pencil | Family::NearPencil => format!("{family}-{n}"),
    };
    Arrangement::from_int_rows(Some(&name), &rows)
}

/// `count` random arrangements with between 3 and `max_lines` lines.
pub fn random_corpus(count: usize, max_lines: usize, seed: u64) -> Result<Vec<Arrangement>> {
    if max_lines < 3 {
        return Err(Error::Precondition("max_lines must be at least 3".into()));
    }
    let mut rng = Xorshift64Star::new(seed);
    (0..count)
        .map(|i| {
            let n = rng.range(3, max_lines as i64) as usize;
            let sub = rng.next_u64();
            Ok(generate(Family::Random, n, sub)?.with_name(format!("random-{seed}-{i}-n{n}")))
        })
        .collect()
}

/// Lines outside `a` through none of its intersection points, with
/// coefficients in `[-9, 9]`, drawn with at most 100 attempts each.
pub fn external_lines(a: &Arrangement, count: usize, rng: &mut Xorshift64Star) -> Vec<LinearForm3> {
    let mut out: Vec<LinearForm3> = Vec::with_capacity(count);
    for _ in 0..count {
        for _ in 0..100 {
            let row = random_row(rng, 9);
            let Some(form) = LinearForm3::from_ints(row[0], row[1], row[2]) else {
                continue;
            };
            if is_admissible(a, &form) && !out.contains(&form) {
                out.push(form);
                break;
            }
        }
    }
    out
}

/// Not a line of `a` and avoiding every intersection point of `a`.
pub fn is_admissible(a: &Arrangement, form: &LinearForm3) -> bool {
    a.position(form).is_none() && a.points().iter().all(|p| !p.point.lies_on(form))
}
