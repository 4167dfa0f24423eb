use arrlog::arrangement::{chi0, chi0_mobius, n_h};
use arrlog::criteria::{property_p, yoshinaga_defect};
use arrlog::derivation::{ar_dim, dh_dim, minimal_resolution, minimal_resolution_jacobian, Limits};
use arrlog::exactalg::{format_rational, parse_rational, rat, ratio, HomPoly, QMatrix, Rational};
use arrlog::multiarr::{basis, deriv_dim, exponents, saito_check, ziegler_restriction};
use arrlog::Arrangement;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> QMatrix {
    QMatrix::from_rows(cols, entries.chunks(cols).take(rows).map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
}

fn arb_matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..6, 1usize..7)
        .prop_flat_map(|(r, c)| prop::collection::vec(-3i64..=3, r * c).prop_map(move |e| matrix(r, c, &e)))
}

fn arb_poly(nvars: usize, degree: usize) -> impl Strategy<Value = HomPoly> {
    let n = arrlog::exactalg::monomial_count(nvars, degree);
    prop::collection::vec(-4i64..=4, n)
        .prop_map(move |c| HomPoly::from_coeffs(nvars, degree, c.into_iter().map(rat).collect()).unwrap())
}

fn arb_arrangement(max_lines: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::array::uniform3(-3i64..=3), 3..=max_lines)
        .prop_filter_map("zero or repeated line", |rows| Arrangement::from_int_rows(None, &rows).ok())
}

/// Applies an invertible integer change of coordinates to every line.
fn transform(a: &Arrangement, m: &[[i64; 3]; 3]) -> Arrangement {
    let rows: Vec<[Rational; 3]> = a
        .lines()
        .iter()
        .map(|l| {
            let c = l.coeffs();
            [0, 1, 2].map(|j| (0..3).map(|i| &c[i] * rat(m[i][j])).sum())
        })
        .collect();
    Arrangement::new(None, rows).unwrap()
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(m in arb_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn kernel_is_deterministic(m in arb_matrix()) {
        prop_assert_eq!(m.kernel_basis(), m.clone().kernel_basis());
    }

    #[test]
    fn product_evaluates_pointwise(p in arb_poly(3, 2), q in arb_poly(3, 3), pt in prop::array::uniform3(-5i64..=5)) {
        let pt = pt.map(rat);
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn closed_form_chi_matches_mobius(a in arb_arrangement(7)) {
        prop_assert_eq!(chi0(&a), chi0_mobius(&a));
    }

    #[test]
    fn lattice_invariants_survive_coordinate_change(
        a in arb_arrangement(7),
        m in prop::array::uniform3(prop::array::uniform3(-2i64..=2)).prop_filter("singular", |m| det3(m) != 0),
    ) {
        let b = transform(&a, &m);
        prop_assert_eq!(chi0(&a).b2_0, chi0(&b).b2_0);
        for h in 0..a.len() {
            prop_assert_eq!(n_h(&a, h).unwrap(), n_h(&b, h).unwrap());
            let ea = exponents(&ziegler_restriction(&a, h).unwrap().multi).unwrap();
            let eb = exponents(&ziegler_restriction(&b, h).unwrap().multi).unwrap();
            prop_assert_eq!(ea, eb);
        }
    }

    #[test]
    fn ziegler_exponents_sum_and_saito(a in arb_arrangement(7)) {
        for h in 0..a.len() {
            let r = ziegler_restriction(&a, h).unwrap();
            let e = exponents(&r.multi).unwrap();
            prop_assert_eq!(e.sum(), a.len() - 1);
            let (t1, t2) = basis(&r.multi).unwrap();
            prop_assert!(saito_check(&t1, &t2, &r.multi));
            for k in 0..a.len() + 1 {
                prop_assert_eq!(deriv_dim(&r.multi, k), e.graded_dim(k));
                prop_assert!(deriv_dim(&r.multi, k) <= deriv_dim(&r.multi, k + 1));
            }
        }
    }

    #[test]
    fn defects_are_nonnegative(a in arb_arrangement(6)) {
        for h in 0..a.len() {
            let d = yoshinaga_defect(&a, h).unwrap();
            prop_assert!(d.defect >= 0);
            prop_assert_eq!(d.defect, d.coker_total as i64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dh_dims_match_jacobian_syzygies(a in arb_arrangement(6)) {
        for k in 0..a.len() {
            let ar = ar_dim(&a, k);
            for h in 0..a.len() {
                prop_assert_eq!(dh_dim(&a, h, k).unwrap(), ar);
            }
        }
    }

    #[test]
    fn resolution_routes_agree(a in arb_arrangement(5)) {
        let limits = Limits::default();
        let via_dh = minimal_resolution(&a, &limits).unwrap();
        let via_jacobian = minimal_resolution_jacobian(&a, &limits).unwrap();
        prop_assert_eq!(&via_dh.generator_degrees, &via_jacobian.generator_degrees);
        prop_assert_eq!(&via_dh.relation_degrees, &via_jacobian.relation_degrees);
    }

    #[test]
    fn property_p_needs_a_proper_image(a in arb_arrangement(6)) {
        for h in 0..a.len() {
            let d = yoshinaga_defect(&a, h).unwrap();
            let p = property_p(&a, h).unwrap();
            if d.defect == 0 {
                prop_assert!(!p.holds());
            }
        }
    }
}
