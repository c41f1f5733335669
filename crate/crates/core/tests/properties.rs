use std::f64::consts::TAU;

use mbaa_core::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn cfg(n: usize) -> ArrayConfig {
    ArrayConfig::new(n).unwrap()
}

proptest! {
    // the N beams form an orthonormal basis, so their powers sum to 1 at any angle
    #[test]
    fn beam_powers_sum_to_one(n in 2usize..200, u in 0.0f64..TAU) {
        let c = cfg(n);
        let total: f64 = (0..n).map(|b| beam_gain(&c, b, BeamspaceAngle::new(u), 1.0).unwrap().norm_sqr()).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_beam_gain_is_bounded(n in 2usize..200, b in 0usize..200, u in 0.0f64..TAU, f in 0.5f64..=1.0) {
        let c = cfg(n);
        let b = b % n;
        let g = beam_gain(&c, b, BeamspaceAngle::new(u), f).unwrap().norm();
        prop_assert!(g <= 1.0 + 1e-12);
    }

    #[test]
    fn combined_gain_is_linear(
        w in proptest::collection::vec(-1i8..=1, 16),
        u in 0.0f64..TAU,
    ) {
        prop_assume!(w.iter().any(|x| *x != 0));
        let c = cfg(16);
        let sel = SelectionVector::new(w.clone(), Normalization::Unit).unwrap();
        let direct = combined_gain(&c, &sel, BeamspaceAngle::new(u), 1.0).unwrap();
        let summed: Complex64 = w
            .iter()
            .enumerate()
            .map(|(b, &x)| beam_gain(&c, b, BeamspaceAngle::new(u), 1.0).unwrap() * x as f64)
            .sum();
        prop_assert!((direct - summed).norm() < 1e-12);
        let split = sel.clone().with_normalization(Normalization::EvenPowerSplit);
        let scaled = combined_gain(&c, &split, BeamspaceAngle::new(u), 1.0).unwrap();
        prop_assert!((scaled * (sel.nonzero_count() as f64).sqrt() - direct).norm() < 1e-12);
    }

    #[test]
    fn synthesized_lobe_covers_its_beams(first in 0usize..64, len in 1usize..20) {
        let c = cfg(64);
        let last = (first + len - 1) % 64;
        let t = AngularInterval::around_beams(&c, first, last, 0.5).unwrap();
        let sel = synthesize_mainlobes(&c, &[t]).unwrap();
        let picked: Vec<usize> = sel.selected().collect();
        for k in 0..len {
            prop_assert!(picked.contains(&((first + k) % 64)));
        }
        prop_assert!(sel.nonzero_count() <= len);
    }

    #[test]
    fn estimate_stays_inside_its_interval(
        re_d in -2.0f64..2.0, im_d in -2.0f64..2.0,
        re_e in -2.0f64..2.0, im_e in -2.0f64..2.0,
        n in 0usize..16,
    ) {
        let x_d = Complex64::new(re_d, im_d);
        let x_e = Complex64::new(re_e, im_e);
        prop_assume!(x_d.norm_sqr() + x_e.norm_sqr() > 1e-9);
        let m = build_ratio_model(&cfg(16), n, 128).unwrap();
        let est = estimate_from_samples(x_d, x_e, &m).unwrap();
        let lo = BeamspaceAngle::new(m.angles()[0]);
        let hi = BeamspaceAngle::new(m.angles()[127]);
        prop_assert!(est.distance(lo) + est.distance(hi) <= m.interval_width() + 1e-9);
    }

    #[test]
    fn type1_selection_counts(n in 3usize..40, x in 1usize..40, comm in 0usize..40, t in 1usize..60) {
        prop_assume!(x < n && comm < n);
        for collision in [CollisionPolicy::SubstituteNext, CollisionPolicy::SkipComm] {
            let cfg = JcasConfig::new(n, comm, x, Scheme::Type1, t, 0).unwrap().with_collision(collision);
            let s = type1_schedule(&cfg).unwrap();
            for (set, sel) in s.sensing_sets().iter().zip(s.selections()) {
                prop_assert_eq!(set.len(), x);
                prop_assert!(!set.contains(&comm));
                prop_assert_eq!(sel.nonzero_count(), x + 1);
            }
        }
    }

    #[test]
    fn bh_modulation_is_injective(bits in 1u32..4) {
        let beams = [1usize, 4, 7, 9];
        let gains = [
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(0.7, 2.1),
            Complex64::from_polar(0.5, -1.2),
            Complex64::from_polar(0.3, 0.9),
        ];
        let ch = BhChannel::new(beams.to_vec(), gains.to_vec()).unwrap();
        let subsets = enumerate_subsets(&beams).unwrap();
        let cb = select_codebook(&subsets, &ch, bits).unwrap();
        for w in 0..cb.len() {
            let s = modulate(w, &cb).unwrap();
            prop_assert_eq!(demodulate(ch.expected(s).unwrap(), &cb), w);
        }
    }
}

#[test]
fn wide_beam_keeps_mainlobe_on_target_across_band() {
    let c = cfg(128);
    let band = FrequencyBand::with_rho(0.9).unwrap();
    for x in [71usize, 90, 110, 127] {
        let sel = squint_compensated_selection(&c, x, &band).unwrap();
        let p = frequency_profile(&c, &sel, &band, x).unwrap();
        let worst = p.gains().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(20.0 * worst.log10() >= -3.92, "x={x}");
    }
}

#[test]
fn search_then_estimate_recovers_off_grid_paths() {
    let c = cfg(64);
    for k in 0..64 {
        let u = BeamspaceAngle::new((k as f64 + 0.37) * c.beam_spacing());
        let scene = PathSet::single(u, Complex64::from_polar(0.3, 1.0));
        let out = multisection_search(&c, |s| scene.response(&c, s), &AngularInterval::full_circle(), 2, 4096).unwrap();
        assert_eq!(out.beam, k);
        assert!(out.estimate.distance(u) < 1e-4);
    }
}
