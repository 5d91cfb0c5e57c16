//! Library outputs checked against values computed independently here:
//! direct quadrature, closed forms and Cauchy integrals.

use hardy_spectra::symbols::{cluster_set, step_coefficient, ClusterSampling};
use hardy_spectra::verify::{identity_residual, IdentityForm};
use hardy_spectra::{
    composition_matrix, multiplier_matrix, toeplitz_matrix, EtaMap, MultiplierSymbol, ParabolicParam, PiecewiseSymbol,
    QuadratureScheme, SelfMap, ToeplitzSymbol, C64,
};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `(1/2π) ∫ f(θ) e^{−inθ} dθ` by the midpoint rule on a grid starting at
/// `start`, which should be the discontinuity of `f` if it has one.
fn fourier_midpoint(f: impl Fn(f64) -> C64, n: i64, samples: usize, start: f64) -> C64 {
    let h = std::f64::consts::TAU / samples as f64;
    let sum: C64 = (0..samples)
        .map(|k| {
            let th = start + (k as f64 + 0.5) * h;
            f(th) * C64::from_polar(1.0, -(n as f64) * th)
        })
        .sum();
    sum * h / std::f64::consts::TAU
}

/// `E₁(x)` from its convergent power series.
fn exp_integral_e1(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        sum += term / k as f64;
    }
    -EULER_GAMMA - x.ln() - sum
}

#[test]
fn step_coefficients_match_midpoint_quadrature() {
    let u = |th: f64| c(th / std::f64::consts::TAU, 0.0);
    for n in [-5i64, -1, 0, 1, 2, 7] {
        let want = fourier_midpoint(u, n, 1 << 16, 0.0);
        assert!((step_coefficient(n) - want).norm() < 1e-8, "n = {n}");
    }
}

#[test]
fn rotated_step_matrix_matches_quadrature() {
    let angle = 1.3;
    let a = PiecewiseSymbol::step(angle, c(2.0, -1.0)).unwrap();
    let f = |th: f64| {
        let d = (th - angle).rem_euclid(std::f64::consts::TAU);
        c(2.0, -1.0) * (d / std::f64::consts::TAU)
    };
    let m = toeplitz_matrix(&ToeplitzSymbol::Piecewise(a), 6).unwrap();
    for j in 0..6 {
        for k in 0..6 {
            let want = fourier_midpoint(f, j as i64 - k as i64, 1 << 16, angle);
            assert!((m.get(j, k) - want).norm() < 1e-8, "({j},{k}) {} vs {want}", m.get(j, k));
        }
    }
}

#[test]
fn rational_multiplier_entry_matches_exponential_integral() {
    // 2∫ e^{−2t}/(1+t) dt = 2e²E₁(2)
    let th = MultiplierSymbol::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let q = QuadratureScheme::for_dimension(8).unwrap();
    let d = multiplier_matrix(&th, 8, &q).unwrap();
    let want = 2.0 * 2f64.exp() * exp_integral_e1(2.0);
    assert!((want - 0.72265).abs() < 1e-5);
    assert!((d.get(0, 0).re - want).abs() < 1e-9, "{} vs {want}", d.get(0, 0));
}

#[test]
fn exponential_multiplier_matches_closed_forms() {
    // 2∫ e^{iat} L_m(2t) L_n(2t) e^{−2t} dt with L_0 = 1, L_1 = 1 − x
    let a = c(0.7, 1.3);
    let th = MultiplierSymbol::exponential(a).unwrap();
    let q = QuadratureScheme::for_dimension(16).unwrap();
    let d = multiplier_matrix(&th, 16, &q).unwrap();
    let b = c(2.0, 0.0) - c(0.0, 1.0) * a;
    let m0 = |p: i32| -> C64 {
        // ∫ t^p e^{−bt} dt = p!/b^{p+1}
        let fact = (1..=p).product::<i32>().max(1) as f64;
        c(fact, 0.0) / b.powi(p + 1)
    };
    let d00 = m0(0) * 2.0;
    let d01 = (m0(0) - m0(1) * 2.0) * 2.0;
    let d11 = (m0(0) - m0(1) * 4.0 + m0(2) * 4.0) * 2.0;
    assert!((d.get(0, 0) - d00).norm() < 1e-12);
    assert!((d.get(0, 1) - d01).norm() < 1e-12);
    assert!((d.get(1, 0) - d01).norm() < 1e-12);
    assert!((d.get(1, 1) - d11).norm() < 1e-12);
}

#[test]
fn composition_columns_match_cauchy_integrals() {
    let a = ParabolicParam::new(c(1.0, 1.0)).unwrap();
    let phi = SelfMap::Parabolic(a);
    let n = 12;
    let m = composition_matrix(&phi, n).unwrap();
    let r = 0.5;
    let samples = 4096;
    for col in [0usize, 1, 3, 7] {
        for row in 0..n {
            // coefficient of z^row in φ^col via the circle |z| = r
            let h = std::f64::consts::TAU / samples as f64;
            let sum: C64 = (0..samples)
                .map(|k| {
                    let z = C64::from_polar(r, k as f64 * h);
                    phi.value(z).powi(col as i32) * z.powi(-(row as i32))
                })
                .sum();
            let want = sum / samples as f64;
            assert!((m.get(row, col) - want).norm() < 1e-10, "({row},{col})");
        }
    }
}

#[test]
fn parabolic_semigroup_holds_on_blocks() {
    let (a, b) = (c(0.0, 1.0), c(1.0, 0.5));
    let pa = SelfMap::Parabolic(ParabolicParam::new(a).unwrap());
    let pb = SelfMap::Parabolic(ParabolicParam::new(b).unwrap());
    let pab = SelfMap::Parabolic(ParabolicParam::new(a + b).unwrap());
    let block = 4;
    let residual = |n: usize| {
        // C_{φ_a} C_{φ_b} = C_{φ_b ∘ φ_a} = C_{φ_{a+b}}
        let prod = composition_matrix(&pa, n).unwrap().matmul(&composition_matrix(&pb, n).unwrap()).unwrap();
        prod.sub(&composition_matrix(&pab, n).unwrap()).unwrap().principal_block(block).unwrap().max_modulus()
    };
    // the tail Σ_{k≥N} of the product is below rounding already at N = 32
    let r: Vec<f64> = [8, 32, 128].iter().map(|&n| residual(n)).collect();
    assert!(r[0] > r[2] && r[1] < 1e-13 && r[2] < 1e-13, "{r:?}");
}

#[test]
fn multiplier_multiplicativity_block_converges() {
    let t1 = MultiplierSymbol::exponential(c(0.0, 1.0)).unwrap();
    let t2 = MultiplierSymbol::rational(vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let t12 = MultiplierSymbol::product(vec![t1.clone(), t2.clone()]).unwrap();
    let residual = |n: usize| {
        let q = QuadratureScheme::for_dimension(n).unwrap();
        let prod = multiplier_matrix(&t1, n, &q).unwrap().matmul(&multiplier_matrix(&t2, n, &q).unwrap()).unwrap();
        prod.sub(&multiplier_matrix(&t12, n, &q).unwrap()).unwrap().principal_block(4).unwrap().max_modulus()
    };
    let r: Vec<f64> = [16, 64, 256].iter().map(|&n| residual(n)).collect();
    assert!(r[2] < r[0] && r[2] < 1e-3, "{r:?}");
}

#[test]
fn identity_residual_nonincreasing_in_dimension() {
    for a in [c(0.0, 1.0), c(1.0, 1.0), c(0.0, 2.0)] {
        let a = ParabolicParam::new(a).unwrap();
        let r: Vec<f64> =
            [64, 128, 256].iter().map(|&n| identity_residual(&a, n, 8, IdentityForm::Corrected).unwrap()).collect();
        // the identity is exact, so the residuals are rounding noise; 1e-10
        // is the rounding floor for these dimensions
        assert!(r.iter().all(|&v| v < 1e-10), "{a:?}: {r:?}");
        assert!(r.windows(2).all(|w| w[1] <= w[0] + 1e-10), "{a:?}: {r:?}");
    }
}

#[test]
fn singular_inner_cluster_set_fills_annulus() {
    let eta = EtaMap::singular_inner();
    let cs = cluster_set(&eta, 0.0, &ClusterSampling::default()).unwrap();
    let two_i = c(0.0, 2.0);
    assert!(cs.points.iter().any(|p| (p - two_i).norm() > 0.99), "{:?}", &cs.points[..4]);
    assert!(cs.points.iter().any(|p| (p - two_i).norm() < 1e-9));
    assert!(cs.points.iter().all(|p| (p - two_i).norm() <= 1.0 + 1e-12 && p.norm() <= cs.radius + 1e-12));
}
