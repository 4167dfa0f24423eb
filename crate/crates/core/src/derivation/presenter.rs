//! Minimal generators and relations of a graded submodule of a free module,
//! fed one degree at a time.

use num_traits::Zero;

use super::shift_vector;
use crate::exactalg::poly::index_of;
use crate::exactalg::{monomial_count, monomial_exponents, QMatrix, Rational, RowSpace};

/// `dim` in degree `k` of `sum S(-g) - sum S(-r)` over `nvars` variables.
pub fn hilbert_value(nvars: usize, gens: &[usize], rels: &[usize], k: usize) -> i64 {
    let part =
        |ds: &[usize]| -> i64 { ds.iter().filter(|&&d| d <= k).map(|&d| monomial_count(nvars, k - d) as i64).sum() };
    part(gens) - part(rels)
}

/// A chosen minimal generator: its degree, its vector and a caller tag.
#[derive(Clone, Debug)]
pub struct Generator {
    pub degree: usize,
    pub vector: Vec<Rational>,
    pub tag: Option<usize>,
}

/// Degree by degree Betti number computation for a submodule `M` of
/// `S^comps`, `S` a polynomial ring in `nvars` variables. Elements of `M_k`
/// are stacked coefficient vectors, `comps` blocks of `C(k + nvars - 1, nvars - 1)`.
pub(crate) struct Presenter {
    nvars: usize,
    comps: usize,
    next: usize,
    prev_basis: Vec<Vec<Rational>>,
    gens: Vec<Generator>,
    rel_degrees: Vec<usize>,
    /// Kernel of `F0_(k-1) -> M_(k-1)` in free-module coordinates.
    prev_kernel: Vec<Vec<Rational>>,
}

impl Presenter {
    pub fn new(nvars: usize, comps: usize) -> Self {
        Presenter {
            nvars,
            comps,
            next: 0,
            prev_basis: Vec::new(),
            gens: Vec::new(),
            rel_degrees: Vec::new(),
            prev_kernel: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn relation_degrees(&self) -> &[usize] {
        &self.rel_degrees
    }

    fn free_offsets(&self, k: usize) -> (Vec<usize>, usize) {
        let mut offsets = Vec::new();
        let mut total = 0;
        for g in self.gens.iter().filter(|g| g.degree <= k) {
            offsets.push(total);
            total += monomial_count(self.nvars, k - g.degree);
        }
        (offsets, total)
    }

    /// Feeds a spanning family of `M_k` (independent vectors) with tags.
    /// Returns the numbers of new generators and new relations in degree `k`.
    pub fn push(&mut self, basis: Vec<Vec<Rational>>, tags: Vec<Option<usize>>) -> (usize, usize) {
        let k = self.next;
        self.next += 1;
        let width = self.comps * monomial_count(self.nvars, k);

        let mut span = RowSpace::new(width);
        if k > 0 {
            for v in &self.prev_basis {
                for var in 0..self.nvars {
                    span.insert(&shift_vector(v, self.nvars, self.comps, k - 1, var));
                }
            }
        }
        let mut new_gens = 0;
        for (v, tag) in basis.iter().zip(&tags) {
            if span.insert(v) {
                self.gens.push(Generator { degree: k, vector: v.clone(), tag: *tag });
                new_gens += 1;
            }
        }

        // Images of the free module basis in degree k.
        let (offsets, total) = self.free_offsets(k);
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(total);
        for g in self.gens.iter().filter(|g| g.degree <= k) {
            for e in monomial_exponents(self.nvars, k - g.degree) {
                columns.push(mul_monomial_vector(&g.vector, self.nvars, self.comps, g.degree, &e));
            }
        }
        let kernel = if total == 0 {
            Vec::new()
        } else {
            let mut m = QMatrix::zeros(width, total);
            for (j, col) in columns.iter().enumerate() {
                for (i, c) in col.iter().enumerate() {
                    if !c.is_zero() {
                        m.set(i, j, c.clone());
                    }
                }
            }
            m.kernel_basis()
        };

        let mut old = RowSpace::new(total);
        if k > 0 {
            let (prev_offsets, _) = self.free_offsets(k - 1);
            for v in &self.prev_kernel {
                for var in 0..self.nvars {
                    old.insert(&self.shift_free(v, k - 1, var, &prev_offsets, &offsets, total));
                }
            }
        }
        let new_rels = kernel.len() - old.dim();
        self.rel_degrees.extend(std::iter::repeat_n(k, new_rels));
        self.prev_kernel = kernel;
        self.prev_basis = basis;
        (new_gens, new_rels)
    }

    /// `x_var * v` for `v` in `F0_k`, landing in `F0_(k+1)`.
    fn shift_free(
        &self,
        v: &[Rational],
        k: usize,
        var: usize,
        from: &[usize],
        to: &[usize],
        total: usize,
    ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); total];
        for (i, g) in self.gens.iter().filter(|g| g.degree <= k).enumerate() {
            let d = k - g.degree;
            for (j, e) in monomial_exponents(self.nvars, d).iter().enumerate() {
                let a = &v[from[i] + j];
                if a.is_zero() {
                    continue;
                }
                let mut f = *e;
                f[var] += 1;
                out[to[i] + index_of(&f, d + 1, self.nvars)] = a.clone();
            }
        }
        out
    }
}

/// `mono * v` for a stacked vector of degree `k`.
fn mul_monomial_vector(v: &[Rational], nvars: usize, comps: usize, k: usize, mono: &[usize; 3]) -> Vec<Rational> {
    let d = mono.iter().sum::<usize>();
    let n0 = monomial_count(nvars, k);
    let n1 = monomial_count(nvars, k + d);
    let mut out = vec![Rational::zero(); comps * n1];
    for (j, e) in monomial_exponents(nvars, k).iter().enumerate() {
        let f = [e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]];
        let idx = index_of(&f, k + d, nvars);
        for c in 0..comps {
            let a = &v[c * n0 + j];
            if !a.is_zero() {
                out[c * n1 + idx] = a.clone();
            }
        }
    }
    out
}
