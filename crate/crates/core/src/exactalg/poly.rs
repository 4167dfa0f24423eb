//! Dense homogeneous polynomials in two or three variables.
//!
//! A `HomPoly` stores one coefficient per monomial of its degree, indexed in
//! graded-lexicographic order with `x > y > z` (or `s > t` in two variables).
//! Every computation downstream works inside a single graded piece, so this
//! dense layout feeds the linear solvers directly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector; the third slot is zero in two variables.
pub type Exps = [usize; 3];

/// Number of monomials of degree `degree` in `nvars` variables.
pub fn monomial_count(nvars: usize, degree: usize) -> usize {
    match nvars {
        1 => 1,
        2 => degree + 1,
        3 => (degree + 1) * (degree + 2) / 2,
        _ => panic!("unsupported variable count {nvars}"),
    }
}

/// Position of a monomial in the graded-lexicographic order of its degree.
pub fn monomial_index(exps: &[usize], degree: usize, nvars: usize) -> Result<usize> {
    crate::coverage::hit(crate::coverage::Op::MonomialIndex);
    if exps.len() != nvars || !(2..=3).contains(&nvars) {
        return Err(Error::Precondition(format!("exponent tuple of length {} for {nvars} variables", exps.len())));
    }
    if exps.iter().sum::<usize>() != degree {
        return Err(Error::Precondition(format!("exponents {exps:?} do not sum to degree {degree}")));
    }
    let mut e = [0; 3];
    e[..nvars].copy_from_slice(exps);
    Ok(index_of(&e, degree, nvars))
}

#[inline]
pub(crate) fn index_of(e: &Exps, degree: usize, nvars: usize) -> usize {
    if nvars == 2 {
        degree - e[0]
    } else {
        let rest = degree - e[0];
        rest * (rest + 1) / 2 + (rest - e[1])
    }
}

/// All exponent vectors of the given degree, in index order.
pub fn monomial_exponents(nvars: usize, degree: usize) -> Vec<Exps> {
    let mut out = Vec::with_capacity(monomial_count(nvars, degree));
    match nvars {
        2 => {
            for a in (0..=degree).rev() {
                out.push([a, degree - a, 0]);
            }
        }
        3 => {
            for a in (0..=degree).rev() {
                for b in (0..=degree - a).rev() {
                    out.push([a, b, degree - a - b]);
                }
            }
        }
        _ => panic!("unsupported variable count {nvars}"),
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    nvars: usize,
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        assert!((2..=3).contains(&nvars), "unsupported variable count {nvars}");
        HomPoly { nvars, degree, coeffs: vec![Rational::zero(); monomial_count(nvars, degree)] }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars, 0);
        p.coeffs[0] = c;
        p
    }

    pub fn from_coeffs(nvars: usize, degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if !(2..=3).contains(&nvars) || coeffs.len() != monomial_count(nvars, degree) {
            return Err(Error::Precondition(format!(
                "{} coefficients for degree {degree} in {nvars} variables",
                coeffs.len()
            )));
        }
        Ok(HomPoly { nvars, degree, coeffs })
    }

    /// The linear form `c[0] v0 + c[1] v1 (+ c[2] v2)`.
    pub fn linear(c: &[Rational]) -> Self {
        // In grlex the degree-1 monomials are x, y(, z), so the index is the variable.
        HomPoly { nvars: c.len(), degree: 1, coeffs: c.to_vec() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); nvars];
        c[i] = Rational::one();
        Self::linear(&c)
    }

    pub fn monomial(nvars: usize, exps: &[usize], coeff: Rational) -> Result<Self> {
        let degree = exps.iter().sum();
        let idx = monomial_index(exps, degree, nvars)?;
        let mut p = Self::zero(nvars, degree);
        p.coeffs[idx] = coeff;
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, exps: &Exps) -> &Rational {
        &self.coeffs[index_of(exps, self.degree, self.nvars)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as (exponents, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Exps, &Rational)> + '_ {
        monomial_exponents(self.nvars, self.degree).into_iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HomPoly { nvars: self.nvars, degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.degree != other.degree {
            return Err(Error::Precondition(format!("adding forms of degrees {} and {}", self.degree, other.degree)));
        }
        Ok(HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Product; degree is the sum of the degrees.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        crate::coverage::hit(crate::coverage::Op::PolyMul);
        self.check_same_ring(other)?;
        let n = self.nvars;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(n, degree);
        let rhs: Vec<(Exps, &Rational)> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for (eb, cb) in &rhs {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.coeffs[index_of(&e, degree, n)] += ca * *cb;
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial with exponents `m`.
    pub fn mul_monomial(&self, m: &Exps) -> Self {
        let n = self.nvars;
        let degree = self.degree + m[0] + m[1] + m[2];
        let mut out = Self::zero(n, degree);
        for (e, c) in self.terms() {
            let f = [e[0] + m[0], e[1] + m[1], e[2] + m[2]];
            out.coeffs[index_of(&f, degree, n)] = c.clone();
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (v, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial derivative with respect to variable `var`. The derivative of a
    /// constant is the zero form of degree 0.
    pub fn derivative(&self, var: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(self.nvars, 0);
        }
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (mut e, c) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let k = e[var];
            e[var] -= 1;
            out.coeffs[index_of(&e, self.degree - 1, self.nvars)] += c * Rational::from_integer(k.into());
        }
        out
    }

    /// Substitutes the `i`-th variable by `images[i]`, a linear form in another
    /// (two or three variable) ring.
    pub fn compose_linear(&self, images: &[HomPoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images[0].nvars;
        debug_assert!(images.iter().all(|l| l.degree == 1 && l.nvars == target));
        let powers: Vec<Vec<HomPoly>> = images
            .iter()
            .map(|l| {
                let mut v = vec![HomPoly::constant(target, Rational::one())];
                for k in 1..=self.degree {
                    let next = &v[k - 1] * l;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(target, self.degree);
        for (e, c) in self.terms() {
            let mut t = HomPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate().take(self.nvars) {
                if k > 0 {
                    t = &t * &powers[i][k];
                }
            }
            for (o, a) in out.coeffs.iter_mut().zip(t.coeffs) {
                *o += a;
            }
        }
        out
    }

    /// Parses a homogeneous polynomial expression such as `2x^2y + y(x^2+2xy-y^2)`.
    ///
    /// Juxtaposition and `*` both denote multiplication; `vars` names the
    /// variables in order.
    pub fn parse(text: &str, vars: &[char]) -> Result<Self> {
        let mut p = ExprParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, vars };
        let sparse = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected {:?} in {text:?}", p.chars[p.pos])));
        }
        sparse_to_hom(&sparse, vars.len()).ok_or_else(|| Error::Parse(format!("{text:?} is not homogeneous")))
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = String::new();
            for (i, &k) in e.iter().enumerate().take(self.nvars) {
                match k {
                    0 => {}
                    1 => mono.push_str(names[i]),
                    _ => mono.push_str(&format!("{}^{k}", names[i])),
                }
            }
            if mono.is_empty() || !mag.is_one() {
                out.push_str(&format_rational(&mag));
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = if self.nvars == 3 { &["x", "y", "z"] } else { &["s", "t"] };
        f.write_str(&self.display_with(names))
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;

    /// # Panics
    /// When the operands live in rings with different variable counts.
    fn mul(self, rhs: &HomPoly) -> HomPoly {
        self.checked_mul(rhs).expect("polynomial product")
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;

    fn add(self, rhs: &HomPoly) -> HomPoly {
        self.checked_add(rhs).expect("polynomial sum")
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;

    fn neg(self) -> HomPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &HomPoly {
    type Output = HomPoly;

    fn sub(self, rhs: &HomPoly) -> HomPoly {
        self + &(-rhs)
    }
}

type Sparse = BTreeMap<Exps, Rational>;

fn sparse_to_hom(s: &Sparse, nvars: usize) -> Option<HomPoly> {
    let mut degrees = s.iter().filter(|(_, c)| !c.is_zero()).map(|(e, _)| e.iter().sum::<usize>());
    let degree = degrees.next().unwrap_or(0);
    if degrees.any(|d| d != degree) {
        return None;
    }
    let mut p = HomPoly::zero(nvars, degree);
    for (e, c) in s.iter().filter(|(_, c)| !c.is_zero()) {
        p.coeffs[index_of(e, degree, nvars)] = c.clone();
    }
    Some(p)
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [char],
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                _ if first => Rational::one(),
                _ => break,
            };
            first = false;
            for (e, c) in self.term()? {
                *acc.entry(e).or_insert_with(Rational::zero) += c * &sign;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::from([([0, 0, 0], Rational::one())]);
        let mut any = false;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
            }
            match self.peek() {
                Some(c) if c == '(' || c.is_ascii_digit() || self.vars.contains(&c) => {
                    let f = self.power()?;
                    acc = sparse_mul(&acc, &f);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(Error::Parse(format!("expected a factor at position {}", self.pos)));
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: usize = e.to_string().parse().map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut acc = Sparse::from([([0, 0, 0], Rational::one())]);
            for _ in 0..e {
                acc = sparse_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected an integer at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(Sparse::from([([0, 0, 0], q)]))
            }
            Some(c) => {
                let i = self
                    .vars
                    .iter()
                    .position(|&v| v == c)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol {c:?}")))?;
                self.pos += 1;
                let mut e = [0; 3];
                e[i] = 1;
                Ok(Sparse::from([(e, Rational::one())]))
            }
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn p3(s: &str) -> HomPoly {
        HomPoly::parse(s, &['x', 'y', 'z']).unwrap()
    }

    fn p2(s: &str) -> HomPoly {
        HomPoly::parse(s, &['x', 'y']).unwrap()
    }

    #[test]
    fn grlex_indices() {
        assert_eq!(monomial_index(&[2, 0, 0], 2, 3).unwrap(), 0);
        assert_eq!(monomial_index(&[0, 0, 2], 2, 3).unwrap(), 5);
        assert_eq!(monomial_index(&[1, 1], 2, 2).unwrap(), 1);
        assert!(monomial_index(&[1, 0, 0], 2, 3).is_err());
        for n in 2..=3 {
            for d in 0..6 {
                for (i, e) in monomial_exponents(n, d).iter().enumerate() {
                    assert_eq!(monomial_index(&e[..n], d, n).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn products() {
        assert_eq!(&p2("x+y") * &p2("x-y"), p2("x^2-y^2"));
        assert_eq!(&p2("x+4y") * &p2("x+4y"), p2("x^2+8xy+16y^2"));
        let q = p3("x^2+yz");
        let z = HomPoly::zero(3, 0);
        let prod = &z * &q;
        assert!(prod.is_zero());
        assert_eq!(prod.degree(), 2);
        assert_eq!(p2("x").checked_mul(&p3("x")), Err(Error::NvarsMismatch(2, 3)));
    }

    #[test]
    fn substitution_onto_a_plane() {
        // z = 0, keep (x, y)
        let img = [p2("x"), p2("y"), HomPoly::zero(2, 1)];
        assert_eq!(p3("x+5y+z").compose_linear(&img), p2("x+5y"));
        // x = -(y+z), keep (y, z) renamed to (s, t)
        let img = [p2("-x-y"), p2("x"), p2("y")];
        assert_eq!(p3("x^2").compose_linear(&img), p2("(x+y)^2"));
        assert!(p3("x+y+z").compose_linear(&img).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let f = p3("xyz(x+y+z)");
        let d = f.derivative(0);
        assert_eq!(d, p3("2xyz + y^2z + yz^2"));
        let pt = [rat(1), rat(2), rat(3)];
        assert_eq!(f.eval(&pt), rat(36));
    }

    #[test]
    fn parse_rejects_inhomogeneous() {
        assert!(HomPoly::parse("x^2+y", &['x', 'y']).is_err());
        assert!(HomPoly::parse("x+q", &['x', 'y']).is_err());
        assert_eq!(p2("0").degree(), 0);
        assert_eq!(p2("x^2y").to_string(), "s^2t");
    }
}
