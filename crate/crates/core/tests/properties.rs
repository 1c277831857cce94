use halfspec::flow::{
    compute_flow, compute_flow_between, hermitian_eigenvalues, hermitian_norm, truncated_operator,
    FlowConfig, HermitianMatrix, MatrixPath, ScalarShift,
};
use halfspec::operator::{apply_a, resolvent, SpectralParam};
use halfspec::scale::{scale_norm, ScaleIndex};
use halfspec::transform::{
    forward, forward_direct, inverse, inverse_direct, twist, untwist, GridSamples, ModeWindow,
    TwistedCoeffs,
};
use halfspec::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn coeffs(k: usize) -> impl Strategy<Value = TwistedCoeffs> {
    prop::collection::vec(complex(), 2 * k)
        .prop_map(move |v| TwistedCoeffs::new(ModeWindow::new(k).unwrap(), v).unwrap())
}

fn grid(n: usize) -> impl Strategy<Value = GridSamples> {
    prop::collection::vec(complex(), n).prop_map(|v| GridSamples::new(v).unwrap())
}

fn s_index(v: f64) -> ScaleIndex {
    ScaleIndex::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_is_unitary(g in grid(48)) {
        let t = twist(&g);
        prop_assert!((t.l2_norm() - g.l2_norm()).abs() <= 1e-14 * g.l2_norm().max(1.0));
        prop_assert!(untwist(&t).max_abs_diff(&g) <= 1e-14);
    }

    #[test]
    fn band_limited_round_trip(c in coeffs(16), extra in 0usize..40) {
        let n = 32 + extra;
        let g = inverse(&c, n).unwrap();
        prop_assert!(forward(&g, c.window()).unwrap().max_abs_diff(&c) <= 1e-13);
        prop_assert!(inverse_direct(&c, n).unwrap().max_abs_diff(&g) <= 1e-13);
        // discrete Parseval for band-limited data
        prop_assert!((g.mean_energy() - c.energy()).abs() <= 1e-13 * c.energy().max(1.0));
    }

    #[test]
    fn fft_and_direct_agree(g in grid(40), k in 1usize..=20) {
        let w = ModeWindow::new(k).unwrap();
        let a = forward(&g, w).unwrap();
        let b = forward_direct(&g, w).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-13);
    }

    #[test]
    fn scale_norms_increase_with_s(c in coeffs(8), s in -5.0..5.0f64, ds in 0.0..3.0f64) {
        let lo = scale_norm(&c, s_index(s)).value;
        let hi = scale_norm(&c, s_index(s + ds)).value;
        prop_assert!(lo <= hi * (1.0 + 1e-14));
    }

    #[test]
    fn operator_bounds(c in coeffs(10), s in -3.0..3.0f64) {
        let ac = apply_a(&c);
        prop_assert!(ac.l2_norm() >= 0.5 * c.l2_norm() * (1.0 - 1e-15));
        let lhs = scale_norm(&ac, s_index(s)).value;
        let rhs = scale_norm(&c, s_index(s + 1.0)).value;
        prop_assert!(lhs <= rhs * (1.0 + 1e-14));
    }

    #[test]
    fn resolvent_identity(c in coeffs(6), i in 0usize..4, j in 0usize..4) {
        let pts = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 3.0),
            Complex64::new(0.49, 0.0),
        ];
        let (l, m) = (SpectralParam(pts[i]), SpectralParam(pts[j]));
        let rl = resolvent(&c, l).unwrap();
        let rm = resolvent(&c, m).unwrap();
        let diff = rl.map(|k, v| v - rm.get(k).unwrap());
        let rhs = resolvent(&rl, m).unwrap().map(|_, v| v * (pts[i] - pts[j]));
        prop_assert!(diff.max_abs_diff(&rhs) <= 1e-12 * (1.0 + rl.l2_norm() * rm.l2_norm()));
    }

    #[test]
    fn resolvent_decays_in_mode_index(c in coeffs(12)) {
        let r = resolvent(&c, SpectralParam(Complex64::new(0.3, 0.7))).unwrap();
        for (k, v) in r.iter() {
            let a = c.get(k).unwrap().norm();
            prop_assert!(v.norm() <= a / ((k as f64 + 0.5 - 0.3).abs().max(0.7)) * (1.0 + 1e-14));
        }
    }

    #[test]
    fn scalar_shift_flow_is_exact(c in -2.4..2.4f64) {
        let nearest = (c.abs() - 0.5).round() + 0.5;
        prop_assume!((c.abs() - nearest).abs() > 1e-3);
        let crossings = (c.abs() + 0.5).floor() as i64;
        let want = if c < 0.0 { -crossings } else { crossings };
        for k in [2usize, 4, 8, 16] {
            let fam = ScalarShift { window: ModeWindow::new(k).unwrap(), c };
            let r = compute_flow(&fam, &FlowConfig::default()).unwrap();
            prop_assert_eq!(r.flow, want);
            prop_assert_eq!(r.crossing_sum(), want);
            for x in &r.crossings {
                // crossing of the mode with frequency h sits at t = h / |c|
                let h = (x.t * c.abs() * 2.0).round() / 2.0;
                prop_assert!((x.t - h / c.abs()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn flow_is_additive_under_concatenation(c in -2.4..2.4f64, tau in 0.05..0.95f64) {
        let fam = ScalarShift { window: ModeWindow::new(4).unwrap(), c };
        let cfg = FlowConfig::default();
        let whole = compute_flow(&fam, &cfg);
        let left = compute_flow_between(&fam, 0.0, tau, &cfg);
        let right = compute_flow_between(&fam, tau, 1.0, &cfg);
        match (whole, left, right) {
            (Ok(w), Ok(l), Ok(r)) => prop_assert_eq!(w.flow, l.flow + r.flow),
            (_, Err(Error::EndpointOnSpectrum { .. }), _)
            | (_, _, Err(Error::EndpointOnSpectrum { .. }))
            | (Err(Error::EndpointOnSpectrum { .. }), _, _) => {}
            (w, l, r) => prop_assert!(false, "{w:?} {l:?} {r:?}"),
        }
    }

    #[test]
    fn weyl_bound_for_random_hermitian(entries in prop::collection::vec(complex(), 64), scale in 0.0..2.0f64) {
        let w = ModeWindow::new(4).unwrap();
        let raw = HermitianMatrix::from_vec(8, 8, entries);
        let m = (&raw + raw.adjoint()) * Complex64::new(scale / 2.0, 0.0);
        let base = hermitian_eigenvalues(&truncated_operator(w));
        let pert = hermitian_eigenvalues(&(truncated_operator(w) + &m));
        let norm = hermitian_norm(&m);
        for (a, b) in base.iter().zip(&pert) {
            prop_assert!((a - b).abs() <= norm * (1.0 + 1e-12) + 1e-12);
        }
        // a matrix path through it never reports more crossings than eigenvalues
        if let Ok(path) = MatrixPath::linear(m) {
            if let Ok(r) = compute_flow(&path, &FlowConfig::default()) {
                prop_assert!(r.flow.unsigned_abs() as usize <= 8);
                prop_assert_eq!(r.flow, r.negative_at_start as i64 - r.negative_at_end as i64);
            }
        }
    }
}
