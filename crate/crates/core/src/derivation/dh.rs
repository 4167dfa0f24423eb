//! `D_H(A) = { theta in D(A) : theta(alpha_H) = 0 }` degree by degree, and
//! its image under restriction to `H`.

use num_traits::{One, Zero};

use super::Derivation3;
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{monomial_count, monomial_exponents, HomPoly, Parametrization, QMatrix, Rational, RowSpace};
use crate::multiarr::{exponents, ziegler_restriction, DerivSpace, Exponents, ZieglerRestriction};

/// `(k + 1) x C(k + 2, 2)` matrix sending a form of degree `k` in `x, y, z`
/// to its restriction, as columns indexed by monomials.
fn restriction_matrix(p: &Parametrization, k: usize) -> Vec<Vec<Rational>> {
    let images = p.images();
    let powers: Vec<Vec<HomPoly>> = images
        .iter()
        .map(|l| {
            let mut v = vec![HomPoly::constant(2, Rational::one())];
            for i in 1..=k {
                let next = &v[i - 1] * l;
                v.push(next);
            }
            v
        })
        .collect();
    let cols = monomial_count(3, k);
    let mut m = vec![vec![Rational::zero(); cols]; k + 1];
    for (j, e) in monomial_exponents(3, k).iter().enumerate() {
        let t = &(&powers[0][e[0]] * &powers[1][e[1]]) * &powers[2][e[2]];
        for (r, c) in t.coeffs().iter().enumerate() {
            m[r][j] = c.clone();
        }
    }
    m
}

fn apply_rows(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
}

/// The linear conditions cutting out `D_H(A)_k`. The component along the
/// eliminated coordinate of `H` is solved for, so the unknowns are the two
/// retained components, stacked.
#[derive(Clone, Debug)]
pub struct DhSystem {
    h: usize,
    param: Parametrization,
    h_coeffs: [Rational; 3],
    /// For each other line: coefficients of `theta(alpha_K)` on the retained
    /// components, and the parametrization of `K`.
    conds: Vec<([Rational; 2], Parametrization)>,
}

impl DhSystem {
    pub fn new(a: &Arrangement, h: usize) -> Result<Self> {
        let hc = a.line(h)?.coeffs().clone();
        let param = Parametrization::eliminating_largest(&hc);
        let e = param.eliminated();
        let [r1, r2] = param.retained();
        let conds = a
            .lines()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != h)
            .map(|(_, l)| {
                let c = l.coeffs();
                let ratio = &c[e] / &hc[e];
                let coeffs = [&c[r1] - &ratio * &hc[r1], &c[r2] - &ratio * &hc[r2]];
                (coeffs, Parametrization::eliminating_largest(c))
            })
            .collect();
        Ok(DhSystem { h, param, h_coeffs: hc, conds })
    }

    pub fn line(&self) -> usize {
        self.h
    }

    pub fn parametrization(&self) -> &Parametrization {
        &self.param
    }

    /// Kernel basis of the stacked retained components at degree `k`.
    pub fn reduced_basis(&self, k: usize) -> Vec<Vec<Rational>> {
        let n = monomial_count(3, k);
        let mut rows = Vec::with_capacity(self.conds.len() * (k + 1));
        for (c, p) in &self.conds {
            let r = restriction_matrix(p, k);
            for row in r {
                let mut full: Vec<Rational> = row.iter().map(|v| v * &c[0]).collect();
                full.extend(row.iter().map(|v| v * &c[1]));
                rows.push(full);
            }
        }
        if rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
            return QMatrix::identity(2 * n).row_iter().map(<[Rational]>::to_vec).collect();
        }
        QMatrix::from_rows(2 * n, rows).kernel_basis()
    }

    /// The full derivation for a stacked pair of retained components.
    pub fn lift(&self, k: usize, v: &[Rational]) -> Derivation3 {
        let n = monomial_count(3, k);
        let e = self.param.eliminated();
        let [r1, r2] = self.param.retained();
        let a = HomPoly::from_coeffs(3, k, v[..n].to_vec()).expect("coefficient count");
        let b = HomPoly::from_coeffs(3, k, v[n..].to_vec()).expect("coefficient count");
        let he = &self.h_coeffs[e];
        let c = &a.scale(&(-&self.h_coeffs[r1] / he)) + &b.scale(&(-&self.h_coeffs[r2] / he));
        let mut comps: [HomPoly; 3] = std::array::from_fn(|_| HomPoly::zero(3, k));
        comps[r1] = a;
        comps[r2] = b;
        comps[e] = c;
        Derivation3::new(comps).expect("components share a degree")
    }

    /// Restriction to `H` of a stacked pair, as a stacked `[p; q]` vector in
    /// the plane coordinates of `H`.
    pub fn restrict_vector(&self, k: usize, v: &[Rational], rh: &[Vec<Rational>]) -> Vec<Rational> {
        let n = monomial_count(3, k);
        let mut out = apply_rows(rh, &v[..n]);
        out.extend(apply_rows(rh, &v[n..]));
        out
    }

    pub fn restriction_onto_h(&self, k: usize) -> Vec<Vec<Rational>> {
        restriction_matrix(&self.param, k)
    }
}

pub fn dh_basis(a: &Arrangement, h: usize, k: usize) -> Result<Vec<Derivation3>> {
    crate::coverage::hit(crate::coverage::Op::DhBasis);
    let sys = DhSystem::new(a, h)?;
    Ok(sys.reduced_basis(k).iter().map(|v| sys.lift(k, v)).collect())
}

pub fn dh_dim(a: &Arrangement, h: usize, k: usize) -> Result<usize> {
    Ok(DhSystem::new(a, h)?.reduced_basis(k).len())
}

/// One degree of the Ziegler map `D_H(A)_k -> D(A^H, m^H)_k`.
#[derive(Clone, Debug)]
pub struct ImageLevel {
    pub degree: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    /// Independent image vectors spanning `Im_k`, stacked `[p; q]`.
    pub image: Vec<Vec<Rational>>,
    /// Preimages in `D_H(A)_k` of the image vectors, when computed.
    pub lifts: Option<Vec<Derivation3>>,
}

impl ImageLevel {
    pub fn image_dim(&self) -> usize {
        self.image.len()
    }

    pub fn coker(&self) -> usize {
        self.codomain_dim - self.image.len()
    }
}

/// The graded image of the Ziegler map of one line, computed lazily. Once a
/// degree at least `e2` with zero cokernel is reached the map is surjective
/// in every higher degree, so those layers are read off `D(A^H, m^H)`.
#[derive(Clone, Debug)]
pub struct ImageTower {
    pub restriction: ZieglerRestriction,
    pub exponents: Exponents,
    system: DhSystem,
    levels: Vec<ImageLevel>,
    surjective_from: Option<usize>,
}

impl ImageTower {
    pub fn new(a: &Arrangement, h: usize) -> Result<Self> {
        let restriction = ziegler_restriction(a, h)?;
        let exponents = exponents(&restriction.multi)?;
        Ok(ImageTower {
            system: DhSystem::new(a, h)?,
            restriction,
            exponents,
            levels: Vec::new(),
            surjective_from: None,
        })
    }

    pub fn line(&self) -> usize {
        self.system.line()
    }

    pub fn system(&self) -> &DhSystem {
        &self.system
    }

    /// First degree `>= e2` with zero cokernel, if reached.
    pub fn surjective_from(&self) -> Option<usize> {
        self.surjective_from
    }

    pub fn computed(&self) -> usize {
        self.levels.len()
    }

    fn compute(&self, k: usize) -> ImageLevel {
        if self.surjective_from.is_some_and(|s| k > s) {
            let codomain = DerivSpace::compute(&self.restriction.multi, k);
            return ImageLevel {
                degree: k,
                domain_dim: 0,
                codomain_dim: codomain.dim(),
                image: codomain.basis,
                lifts: None,
            };
        }
        self.explicit_level(k)
    }

    /// Degree `k` of the image computed from `D_H(A)_k`, with lifts, whatever
    /// the surjectivity status. Not cached.
    pub fn explicit_level(&self, k: usize) -> ImageLevel {
        let codomain = DerivSpace::compute(&self.restriction.multi, k);
        let dh = self.system.reduced_basis(k);
        let rh = self.system.restriction_onto_h(k);
        let mut span = RowSpace::new(2 * (k + 1));
        let mut image = Vec::new();
        let mut lifts = Vec::new();
        for v in &dh {
            if span.dim() == codomain.dim() {
                break;
            }
            let w = self.system.restrict_vector(k, v, &rh);
            if span.insert(&w) {
                image.push(w);
                lifts.push(self.system.lift(k, v));
            }
        }
        ImageLevel { degree: k, domain_dim: dh.len(), codomain_dim: codomain.dim(), image, lifts: Some(lifts) }
    }

    /// Degree `k` of the image, computing all lower degrees on the way.
    pub fn level(&mut self, k: usize) -> &ImageLevel {
        while self.levels.len() <= k {
            let d = self.levels.len();
            let lvl = self.compute(d);
            if self.surjective_from.is_none() && d >= self.exponents.e2 && lvl.coker() == 0 {
                self.surjective_from = Some(d);
            }
            self.levels.push(lvl);
        }
        &self.levels[k]
    }

    pub fn levels(&self) -> &[ImageLevel] {
        &self.levels
    }

    /// Computes degrees until the map is known to be surjective from then on,
    /// or `cap` is passed. Returns the cokernel dimensions by degree.
    pub fn run_to_surjectivity(&mut self, cap: usize) -> Result<Vec<usize>> {
        let mut k = 0;
        while self.surjective_from.is_none() {
            if k > cap {
                return Err(Error::ConsistencyFailure(format!(
                    "Ziegler map of line {} still not surjective at degree {cap}",
                    self.line()
                )));
            }
            self.level(k);
            k += 1;
        }
        let stop = self.surjective_from.expect("set above");
        Ok(self.levels[..=stop].iter().map(ImageLevel::coker).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::ar_dim;

    #[test]
    fn dh_matches_ar_on_generic() {
        let a = Arrangement::from_int_rows(None, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        for h in 0..4 {
            for k in 0..=4 {
                assert_eq!(dh_dim(&a, h, k).unwrap(), ar_dim(&a, k), "h={h} k={k}");
            }
        }
        for t in dh_basis(&a, 3, 2).unwrap() {
            assert!(t.in_dh(&a, 3).unwrap());
        }
    }

    #[test]
    fn generic_image_tower() {
        let a = Arrangement::from_int_rows(None, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        let mut t = ImageTower::new(&a, 0).unwrap();
        let coker = t.run_to_surjectivity(8).unwrap();
        assert_eq!(coker.iter().sum::<usize>(), 1);
    }
}
