use proptest::prelude::*;

use hardy_spectra::gelfand::{gelfand_evaluate, spectrum_general, Extended, IdealPoint, QcSurrogate, SpectrumGrids};
use hardy_spectra::symbols::{ClusterSampling, TrigPolynomial};
use hardy_spectra::{
    multiplier_matrix, singular_values, toeplitz_matrix, winding_index, EtaMap, Expr, MultiplierSymbol, ParabolicParam,
    PiecewiseSymbol, QuadratureScheme, SelfMap, ToeplitzSymbol, C64,
};

fn complex(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(re, im)| C64::new(re, im))
}

fn upper(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, 0.1..range).prop_map(|(re, im)| C64::new(re, im))
}

fn trig() -> impl Strategy<Value = TrigPolynomial> {
    prop::collection::vec((-4i64..=4, complex(1.0)), 1..5).prop_map(TrigPolynomial::from_coeffs)
}

fn piecewise() -> impl Strategy<Value = PiecewiseSymbol> {
    (trig(), prop::collection::vec((0.0..std::f64::consts::TAU, complex(1.0)), 0..3)).prop_map(|(p, jumps)| {
        jumps.into_iter().fold(PiecewiseSymbol::trig(p), |acc, (angle, h)| {
            acc.add(&PiecewiseSymbol::step(angle, h).unwrap()).unwrap()
        })
    })
}

/// Random expression trees over a fixed leaf pool.
fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Identity),
        piecewise().prop_map(Expr::toeplitz),
        upper(2.0).prop_map(|a| Expr::multiplier(MultiplierSymbol::exponential(a).unwrap())),
        upper(2.0).prop_map(|c| Expr::composition(SelfMap::Eta(EtaMap::constant(c).unwrap()))),
        upper(2.0).prop_map(|a| Expr::composition(SelfMap::Parabolic(ParabolicParam::new(a).unwrap()))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (complex(2.0), inner.clone()).prop_map(|(s, a)| a.scale(s)),
            inner.prop_map(Expr::adjoint),
        ]
    })
}

fn point_for(e: &Expr, seed: (f64, f64, f64, bool, f64)) -> IdealPoint {
    let (lambda, s, t, finite, w_re) = seed;
    let values = e
        .etas()
        .iter()
        .enumerate()
        .map(|(k, eta)| (eta.label().to_string(), C64::new(w_re + k as f64, 0.5 + k as f64)))
        .collect();
    let q = QcSurrogate::new("test", values);
    if finite {
        IdealPoint::new(0.0, s, Extended::Finite(t), q).unwrap()
    } else {
        IdealPoint::new(lambda, s, Extended::Infinity, q).unwrap()
    }
}

fn point_seed() -> impl Strategy<Value = (f64, f64, f64, bool, f64)> {
    (0.0..std::f64::consts::TAU, 0.0..=1.0f64, 0.0..20.0f64, any::<bool>(), -2.0..2.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jump_heights_are_exact(p in trig(), angle in 0.1..6.0f64, h in complex(2.0)) {
        let a = PiecewiseSymbol::trig(p).add(&PiecewiseSymbol::step(angle, h).unwrap()).unwrap();
        let (left, right) = a.one_sided_limits(angle);
        prop_assert!((left - right - h).norm() < 1e-12);
    }

    #[test]
    fn real_symbols_have_conjugate_symmetric_coefficients(a in piecewise()) {
        let real = a.add(&a.conj()).unwrap();
        let coeffs = real.fourier_coefficients(8).unwrap();
        for n in 1..=8usize {
            prop_assert!((coeffs[8 + n] - coeffs[8 - n].conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn toeplitz_entries_depend_on_difference(a in piecewise()) {
        let m = toeplitz_matrix(&ToeplitzSymbol::Piecewise(a), 12).unwrap();
        for j in 1..12 {
            for k in 1..12 {
                prop_assert_eq!(m.get(j, k), m.get(j - 1, k - 1));
            }
        }
    }

    #[test]
    fn real_toeplitz_is_hermitian(a in piecewise()) {
        let real = a.add(&a.conj()).unwrap();
        let m = toeplitz_matrix(&ToeplitzSymbol::Piecewise(real), 16).unwrap();
        prop_assert!(m.hermitian_defect() < 1e-12);
    }

    #[test]
    fn winding_is_additive_on_monomials(m in -6i64..=6, n in -6i64..=6, c in 1.5..3.0f64) {
        // c + z is zero-free on the circle and has winding number 0
        let shifted = PiecewiseSymbol::trig(TrigPolynomial::from_coeffs([(0, C64::new(c, 0.0)), (1, C64::new(1.0, 0.0))]));
        let zm = PiecewiseSymbol::monomial(m);
        let zn = PiecewiseSymbol::monomial(n);
        let prod = zm.mul(&zn).unwrap().mul(&shifted).unwrap();
        let w = |a: &PiecewiseSymbol| winding_index(a, 512).unwrap();
        prop_assert_eq!(w(&prod), w(&zm) + w(&zn) + w(&shifted));
        prop_assert_eq!(w(&prod), -(m + n));
    }

    #[test]
    fn toeplitz_norm_bounded_by_symbol_sup(c in complex(2.0), n in -3i64..=3, angle in 0.0..std::f64::consts::TAU) {
        for a in [
            PiecewiseSymbol::monomial(n).scale(c),
            PiecewiseSymbol::step(angle, c).unwrap(),
        ] {
            let m = toeplitz_matrix(&ToeplitzSymbol::Piecewise(a), 64).unwrap();
            prop_assert!(singular_values(&m).unwrap()[0] <= c.norm() + 1e-12);
        }
    }

    #[test]
    fn gelfand_is_multiplicative_and_star_preserving(a in expr(), b in expr(), seed in point_seed()) {
        let ab = a.clone() * b.clone();
        let p = point_for(&ab, seed);
        let (ga, gb) = (gelfand_evaluate(&a, &p).unwrap(), gelfand_evaluate(&b, &p).unwrap());
        prop_assert!((gelfand_evaluate(&ab, &p).unwrap() - ga * gb).norm() <= 1e-12 * (1.0 + (ga * gb).norm()));
        prop_assert_eq!(gelfand_evaluate(&a.clone().adjoint(), &p).unwrap(), ga.conj());
        prop_assert_eq!(gelfand_evaluate(&Expr::Identity, &p).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn compositions_vanish_off_the_base_point(a in upper(2.0), lambda in 0.1..6.0f64, s in 0.0..=1.0f64) {
        let e = Expr::composition(SelfMap::Parabolic(ParabolicParam::new(a).unwrap()));
        let p = point_for(&e, (lambda, s, 0.0, false, 0.0));
        prop_assert_eq!(gelfand_evaluate(&e, &p).unwrap(), C64::new(0.0, 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn real_multiplier_is_hermitian_and_bounded(im in 0.2..3.0f64) {
        let th = MultiplierSymbol::exponential(C64::new(0.0, im)).unwrap();
        let q = QuadratureScheme::for_dimension(48).unwrap();
        let d = multiplier_matrix(&th, 48, &q).unwrap();
        prop_assert!(d.hermitian_defect() < 1e-12);
        prop_assert!(singular_values(&d).unwrap()[0] <= th.sup_norm() + 1e-10);
    }

    #[test]
    fn spectrum_respects_scaling_and_adjoint(a in piecewise(), eta in upper(2.0), s in complex(2.0)) {
        let grids = SpectrumGrids {
            t_values: vec![0.0, 0.5, 1.0, 4.0],
            s_points: 5,
            lambda_points: 8,
            cluster: ClusterSampling::default(),
            max_cluster_points: 4,
            resolution: None,
        };
        let e = Expr::toeplitz(a) * Expr::composition(SelfMap::Eta(EtaMap::constant(eta).unwrap()));
        let base = spectrum_general(&e, &grids).unwrap();
        let adj = spectrum_general(&e.clone().adjoint(), &grids).unwrap();
        prop_assert_eq!(adj.points, base.conj().points);
        let scaled = spectrum_general(&e.clone().scale(s), &grids).unwrap();
        let raw = hardy_spectra::gelfand::ideal_points(&e, &grids).unwrap();
        let want: Vec<C64> = raw.iter().map(|p| s * gelfand_evaluate(&e, p).unwrap()).collect();
        for v in &scaled.points {
            prop_assert!(want.contains(v));
        }
    }
}
