use nalgebra::DVector;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use xorgap::concentration::{envelope, TailSpec};
use xorgap::game::{self, ClassicalStrategy, EntangledStrategy, XorGame};
use xorgap::linalg::CMat;
use xorgap::nets;
use xorgap::pauli;
use xorgap::tensor::{self, SamplerConfig, Tensor3};

fn cmat(n: usize, v: &[(f64, f64)]) -> CMat {
    CMat::from_fn(n, n, |i, j| C::new(v[i * n + j].0, v[i * n + j].1))
}

fn hermitian(n: usize, v: &[(f64, f64)]) -> CMat {
    let a = cmat(n, v);
    (&a + a.adjoint()).scale(0.5)
}

fn entries(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
}

fn tensor1(v: &[(f64, f64)]) -> Tensor3 {
    Tensor3::from_matrix(1, cmat(8, v)).unwrap()
}

fn close(a: C, b: C, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fourier_is_linear(a in entries(64), b in entries(64), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let (ta, tb) = (tensor1(&a), tensor1(&b));
        let combo = ta.combine(C::new(s, 0.0), &tb, C::new(0.0, t)).unwrap();
        let (fa, fb, fc) = (pauli::fourier(&ta), pauli::fourier(&tb), pauli::fourier(&combo));
        for i in 0..fc.coefficients().len() {
            let expect = fa.coefficients()[i] * s + fb.coefficients()[i] * C::new(0.0, t);
            prop_assert!(close(fc.coefficients()[i], expect, 1e-12));
        }
    }

    #[test]
    fn inverse_fourier_undoes_fourier(a in entries(64)) {
        let t = tensor1(&a);
        let back = pauli::inverse_fourier(&pauli::fourier(&t));
        for (x, y) in back.matrix().iter().zip(t.matrix().iter()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn hermitian_tensor_has_real_coefficients(seed in any::<u64>()) {
        let t = tensor::sample_tensor(1, &SamplerConfig::gaussian(seed)).unwrap();
        prop_assert!(t.is_hermitian(1e-14));
        let f = pauli::fourier(&t);
        let scale = f.coefficients().iter().fold(1.0f64, |m, z| m.max(z.norm()));
        prop_assert!(f.coefficients().iter().all(|z| z.im.abs() <= 1e-12 * scale));
    }

    #[test]
    fn trilinear_eval_is_linear_in_each_slot(a in entries(64), x in entries(4), x2 in entries(4), y in entries(4), z in entries(4), s in -2.0f64..2.0) {
        let t = tensor1(&a);
        let (x, x2, y, z) = (hermitian(2, &x), hermitian(2, &x2), hermitian(2, &y), hermitian(2, &z));
        let lhs = tensor::trilinear_eval(&t, &(&x + x2.scale(s)), &y, &z).unwrap();
        let rhs = tensor::trilinear_eval(&t, &x, &y, &z).unwrap() + tensor::trilinear_eval(&t, &x2, &y, &z).unwrap() * s;
        prop_assert!(close(lhs, rhs, 1e-12));
        let lhs = tensor::trilinear_eval(&t, &x, &y, &z.scale(s)).unwrap();
        prop_assert!(close(lhs, tensor::trilinear_eval(&t, &x, &y, &z).unwrap() * s, 1e-12));
    }

    #[test]
    fn spectral_norm_is_homogeneous(seed in any::<u64>(), c in 0.01f64..10.0) {
        let t = tensor::sample_tensor(1, &SamplerConfig::gaussian(seed)).unwrap();
        let base = tensor::spectral_norm(&t).value;
        let scaled = tensor::spectral_norm(&t.scaled(C::new(0.0, -c))).value;
        prop_assert!((scaled - c * base).abs() <= 1e-10 * c * base);
    }

    #[test]
    fn hermitization_is_hermitian_and_idempotent(a in entries(64)) {
        let t = tensor1(&a);
        let h = tensor::hermitize(&t);
        prop_assert!(h.is_hermitian(1e-13));
        let hh = tensor::hermitize(&h);
        for (x, y) in hh.matrix().iter().zip(h.matrix().iter()) {
            prop_assert!((x - y).norm() <= 1e-13);
        }
    }

    #[test]
    fn games_from_weights_are_distributions(w in prop::collection::vec(-1.0f64..1.0, 27)) {
        prop_assume!(w.iter().any(|&x| x != 0.0));
        let g = XorGame::from_weights(3, &w).unwrap();
        prop_assert!((g.pi().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for (i, &x) in w.iter().enumerate() {
            prop_assert_eq!(g.signs()[i], if x < 0.0 { -1 } else { 1 });
        }
    }

    #[test]
    fn classical_bias_bounds(w in prop::collection::vec(-1.0f64..1.0, 27), seed in any::<u64>()) {
        prop_assume!(w.iter().any(|&x| x != 0.0));
        let g = XorGame::from_weights(3, &w).unwrap();
        let (exact, s) = game::classical_bias_exact(&g).unwrap();
        let (heur, _) = game::classical_bias_heuristic(&g, 4, seed).unwrap();
        prop_assert!(exact > 0.0 && exact <= 1.0 + 1e-12);
        prop_assert!(heur <= exact + 1e-12);
        // a deterministic strategy played through the entangled evaluator
        let as_quantum = game::entangled_bias_eval(&g, &EntangledStrategy::from_classical(&s)).unwrap();
        prop_assert!((as_quantum - exact).abs() <= 1e-12);
    }

    #[test]
    fn classical_value_flips_with_one_player(w in prop::collection::vec(-1.0f64..1.0, 8), bits in 0u8..64) {
        prop_assume!(w.iter().any(|&x| x != 0.0));
        let g = XorGame::from_weights(2, &w).unwrap();
        let sgn = |b: u8| if b & 1 == 1 { -1i8 } else { 1 };
        let s = ClassicalStrategy {
            chi: vec![sgn(bits), sgn(bits >> 1)],
            upsilon: vec![sgn(bits >> 2), sgn(bits >> 3)],
            zeta: vec![sgn(bits >> 4), sgn(bits >> 5)],
        };
        let flipped = ClassicalStrategy { zeta: s.zeta.iter().map(|x| -x).collect(), ..s.clone() };
        let v = game::classical_value(&g, &s).unwrap();
        prop_assert!((game::classical_value(&g, &flipped).unwrap() + v).abs() <= 1e-15);
    }

    #[test]
    fn lorentz_reconstructs(v in entries(16), scale in 0.05f64..1.0) {
        let h = hermitian(4, &v);
        let fro = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(fro > 1e-6);
        let x = h.scale(scale / fro);
        let d = nets::lorentz_decompose(&x).unwrap();
        let err = (d.reconstruct(4) - &x).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        prop_assert!(err <= 1e-12);
        prop_assert!(d.l1_norm() <= 4.0 * 4f64.ln().sqrt());
    }

    #[test]
    fn envelopes_decrease_in_t(w in prop::collection::vec(-2.0f64..2.0, 1..12), t in 0.0f64..20.0, dt in 0.0f64..5.0) {
        prop_assume!(w.iter().any(|&x| x != 0.0));
        for spec in [
            TailSpec::Gaussian,
            TailSpec::ChiSquare { n: w.len() },
            TailSpec::BernoulliProjection { weights: w.clone() },
            TailSpec::Bernstein { k: 2.0, weights: w.clone() },
        ] {
            let env = envelope(spec).unwrap();
            prop_assert!(env.bound(t + dt) <= env.bound(t) + 1e-15);
            prop_assert!(env.bound(0.0) >= 1.0);
        }
    }

    #[test]
    fn tensor_io_round_trips(seed in any::<u64>(), n in 1u32..=2) {
        let t = tensor::sample_tensor(n, &SamplerConfig::bernoulli(seed)).unwrap();
        let mut buf = Vec::new();
        tensor::write_tensor(&mut buf, &t).unwrap();
        let back = tensor::read_tensor(&mut buf.as_slice()).unwrap();
        prop_assert_eq!(back.matrix(), t.matrix());
        prop_assert_eq!(back.raw(), t.raw());
    }

    #[test]
    fn pauli_strategy_state_is_dominant(seed in any::<u64>()) {
        let t = tensor::sample_tensor(1, &SamplerConfig::gaussian(seed)).unwrap();
        let s = game::pauli_strategy(&t).unwrap();
        let psi: &DVector<C> = s.state();
        let rayleigh = psi.dotc(&(t.matrix() * psi)).re.abs();
        prop_assert!((rayleigh - tensor::spectral_norm(&t).value).abs() <= 1e-10 * rayleigh);
    }
}
