mod common;

use common::*;
use eraser_core::modes::{collective_coordinates, overlap_isotropic, ModeDictionary};
use eraser_core::qcore::{marginal_distribution, Sector};
use eraser_core::scenario::{
    apply_pulse2, collective_emission_instantaneous, collective_emission_rate, dicke_decompose, dicke_recompose,
    emission_map, ingraham_emission, late_decay, late_decay_map, prepare_after_gamma, prompt_emission_probability,
    psi_minus, pulse2_map, EmissionWindow,
};
use eraser_core::{inner_product, AtomLevel, Complex64, GammaSector, LinearMapSpec, PhiSector, StateVector};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 1000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn correct_maps_preserve_norm_on_random_domain_states() {
    let mut r = rng(1);
    let domain = emission_domain();
    let everything = labels_where(|_| true);
    for _ in 0..CASES {
        let s_phi = r.random_range(-1.0..=1.0);
        let gamma_t = r.random_range(0.0..20.0);
        let s = random_combination(&mut r, &domain);
        for out in [
            collective_emission_instantaneous(&s, s_phi).unwrap(),
            collective_emission_rate(&s, s_phi, gamma_t).unwrap(),
            late_decay(&s).unwrap(),
        ] {
            assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
        let any = random_combination(&mut r, &everything);
        assert!((apply_pulse2(&any).norm_sqr() - 1.0).abs() < 1e-12);
        let prepared = prepare_after_gamma(r.random_range(-1.0..=1.0)).unwrap();
        assert!((prepared.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn apply_map_is_linear() {
    let mut r = rng(2);
    let domain = emission_domain();
    for _ in 0..200 {
        let m = emission_map(r.random_range(-1.0..=1.0), EmissionWindow::Finite { gamma_t: r.random_range(0.0..5.0) })
            .unwrap();
        let u = random_combination(&mut r, &domain);
        let v = random_combination(&mut r, &domain);
        let a = Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let b = Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let lhs = m.apply(&(u.clone() * a + v.clone() * b)).unwrap();
        let rhs = m.apply(&u).unwrap() * a + m.apply(&v).unwrap() * b;
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }
}

#[test]
fn gram_entries_agree_between_apply_and_dense_matrix() {
    let mut r = rng(3);
    let domain = emission_domain();
    let maps: Vec<LinearMapSpec> = vec![
        emission_map(0.4, EmissionWindow::Complete).unwrap(),
        emission_map(1.0, EmissionWindow::Finite { gamma_t: 0.7 }).unwrap(),
        late_decay_map(),
        eraser_core::scenario::ingraham_map(0.8).unwrap(),
    ];
    for m in &maps {
        let dense = m.matrix();
        for _ in 0..20 {
            let u = random_combination(&mut r, &domain);
            let v = random_combination(&mut r, &domain);
            let (u, v) = if m.label() == "ingraham" {
                (random_combination(&mut r, &bp_sector()), random_combination(&mut r, &bp_sector()))
            } else {
                (u, v)
            };
            let direct = inner_product(&m.apply(&u).unwrap(), &m.apply(&v).unwrap());
            let mu = &dense * DVector::from_column_slice(u.amplitudes());
            let mv = &dense * DVector::from_column_slice(v.amplitudes());
            let via_matrix: Complex64 = mu.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum();
            assert!((direct - via_matrix).norm() < 1e-10, "{}", m.label());
        }
    }
    // The permutation map's matrix is unitary.
    let p = pulse2_map().matrix();
    let id = p.adjoint() * &p;
    for i in 0..eraser_core::DIM {
        for j in 0..eraser_core::DIM {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((id[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn dicke_round_trip_and_subradiance() {
    let mut r = rng(4);
    let sector = bp_sector();
    for _ in 0..CASES {
        let s = random_combination(&mut r, &sector);
        let parts = dicke_decompose(&s);
        for d in &parts {
            assert!((d.plus_amplitude.norm_sqr() + d.minus_amplitude.norm_sqr() - d.excited_weight).abs() < 1e-12);
        }
        assert!(dicke_recompose(&parts).max_abs_diff(&s) < 1e-12);

        let out = collective_emission_instantaneous(&s, 1.0).unwrap();
        for g in GammaSector::ALL {
            let before = inner_product(&psi_minus(g), &s);
            let after = inner_product(&psi_minus(g), &out);
            assert!((before - after).norm() < 1e-15);
        }
    }
}

/// Coupled-dipole amplitudes for one excitation shared by two emitters:
/// `d/dt (c₁, c₂) = −½ [[1, s], [s, 1]] (c₁, c₂)` in units of Γ, integrated by
/// RK4 in the site basis. Returns the emitted probability `1 − |c₁|² − |c₂|²`.
fn coupled_dipole_emission(c1: Complex64, c2: Complex64, s: f64, gamma_t: f64) -> f64 {
    let steps = 20_000;
    let h = gamma_t / steps as f64;
    let f = |a: Complex64, b: Complex64| (-(a + b * s) * 0.5, -(b + a * s) * 0.5);
    let (mut a, mut b) = (c1, c2);
    for _ in 0..steps {
        let (k1a, k1b) = f(a, b);
        let (k2a, k2b) = f(a + k1a * (h / 2.0), b + k1b * (h / 2.0));
        let (k3a, k3b) = f(a + k2a * (h / 2.0), b + k2b * (h / 2.0));
        let (k4a, k4b) = f(a + k3a * h, b + k3b * h);
        a += (k1a + k2a * 2.0 + k3a * 2.0 + k4a) * (h / 6.0);
        b += (k1b + k2b * 2.0 + k3b * 2.0 + k4b) * (h / 6.0);
    }
    (c1.norm_sqr() + c2.norm_sqr()) - a.norm_sqr() - b.norm_sqr()
}

#[test]
fn rate_regime_matches_coupled_dipole_integration() {
    let mut r = rng(5);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let input = StateVector::from_terms([
        (label(AtomLevel::Bp, AtomLevel::C, GammaSector::G1, PhiSector::Vac), Complex64::new(h, 0.0)),
        (label(AtomLevel::C, AtomLevel::Bp, GammaSector::G2, PhiSector::Vac), Complex64::new(h, 0.0)),
    ]);
    for _ in 0..20 {
        let s = r.random_range(0.0..=1.0);
        let gamma_t = r.random_range(0.0..10.0);
        let out = collective_emission_rate(&input, s, gamma_t).unwrap();
        let simulated = prompt_emission_probability(&out);
        // Each γ branch holds one atom excited with weight ½.
        let oracle = coupled_dipole_emission(Complex64::new(h, 0.0), Complex64::new(0.0, 0.0), s, gamma_t)
            + coupled_dipole_emission(Complex64::new(0.0, 0.0), Complex64::new(h, 0.0), s, gamma_t);
        let closed = 0.5 * (1.0 - (-(1.0 + s) * gamma_t).exp()) + 0.5 * (1.0 - (-(1.0 - s) * gamma_t).exp());
        assert!((simulated - oracle).abs() < 1e-9, "s={s} gt={gamma_t}: {simulated} vs {oracle}");
        assert!((simulated - closed).abs() < 1e-12);
    }
}

#[test]
fn ingraham_overlap_equals_phi_overlap() {
    for k in 0..=20 {
        let s = -1.0 + 0.1 * k as f64;
        let u = StateVector::basis(label(AtomLevel::Bp, AtomLevel::C, GammaSector::G2, PhiSector::Vac));
        let v = StateVector::basis(label(AtomLevel::C, AtomLevel::Bp, GammaSector::G2, PhiSector::Vac));
        let overlap = inner_product(&ingraham_emission(&u, s).unwrap(), &ingraham_emission(&v, s).unwrap());
        assert!((overlap - Complex64::new(s, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn marginals_sum_to_one_for_scenario_outputs() {
    let mut r = rng(6);
    for _ in 0..200 {
        let s = prepare_after_gamma(r.random_range(0.0..0.3)).unwrap();
        let s =
            collective_emission_rate(&apply_pulse2(&s), r.random_range(0.0..=1.0), r.random_range(0.0..10.0)).unwrap();
        let s = late_decay(&s).unwrap();
        for sector in [Sector::Gamma, Sector::Phi, Sector::Atoms, Sector::Atom1, Sector::Atom2] {
            let m = marginal_distribution(&s, sector).unwrap();
            assert!((m.total() - 1.0).abs() < 1e-12);
            assert!(m.entries.iter().all(|(_, p)| *p >= 0.0));
        }
    }
}

/// Atom marginal of the collective output, by direct |amplitude|² summation
/// over all 192 labels.
#[test]
fn atom_marginal_of_collective_output() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let input = StateVector::from_terms([
        (label(AtomLevel::Bp, AtomLevel::C, GammaSector::G1, PhiSector::Vac), Complex64::new(h, 0.0)),
        (label(AtomLevel::C, AtomLevel::Bp, GammaSector::G2, PhiSector::Vac), Complex64::new(h, 0.0)),
    ]);
    let out = collective_emission_instantaneous(&input, 1.0).unwrap();
    let mut cc = 0.0;
    let mut single = 0.0;
    for (l, a) in out.iter() {
        match (l.atom1, l.atom2) {
            (AtomLevel::C, AtomLevel::C) => cc += a.norm_sqr(),
            (AtomLevel::Bp, AtomLevel::C) | (AtomLevel::C, AtomLevel::Bp) => single += a.norm_sqr(),
            _ => assert_eq!(a.norm(), 0.0),
        }
    }
    assert!((cc - 0.5).abs() < 1e-15 && (single - 0.5).abs() < 1e-15);
    let m = marginal_distribution(&out, Sector::Atoms).unwrap();
    assert!((m.get("c,c") - cc).abs() < 1e-15);
    assert!((m.get("bp,c") + m.get("c,bp") - single).abs() < 1e-15);
}

#[test]
fn gram_reconstruction_over_overlap_grid() {
    for k in 0..=10 {
        let s = 0.1 * k as f64;
        let d = ModeDictionary::two_mode("phi1", "phi2", s).unwrap();
        assert!(d.reconstruction_error() < 1e-12);
        let [(b1, d1), (b2, d2)] = collective_coordinates(s).unwrap();
        assert!((b1 * b2 + d1 * d2 - s).abs() < 1e-12);
        assert!((b1 * b1 + d1 * d1 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn kernel_is_bounded_by_one() {
    let mut r = rng(7);
    for _ in 0..10_000 {
        let wavelength = r.random_range(1e-3..1e3);
        // Stay above the region where sin(x)/x rounds to exactly 1.
        let separation = wavelength * r.random_range(1e-3..100.0);
        let v = overlap_isotropic(wavelength, separation).unwrap();
        assert!(v.abs() < 1.0, "{wavelength} {separation} {v}");
    }
}

#[test]
fn kernel_decreases_before_first_zero() {
    let wavelength = 1.3;
    let mut prev = overlap_isotropic(wavelength, 0.0).unwrap();
    for i in 1..=1000 {
        let d = 0.5 * wavelength * i as f64 / 1000.0;
        let v = overlap_isotropic(wavelength, d).unwrap();
        assert!(v < prev);
        prev = v;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inner_product_is_conjugate_symmetric(
        u in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), eraser_core::DIM),
        v in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), eraser_core::DIM),
    ) {
        let u = StateVector::from_amplitudes(u.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
        let v = StateVector::from_amplitudes(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
        prop_assert_eq!(inner_product(&u, &v), inner_product(&v, &u).conj());
    }

    #[test]
    fn state_json_round_trips(
        amps in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), eraser_core::DIM),
    ) {
        let s = StateVector::from_amplitudes(amps.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: StateVector = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn pulse2_is_an_involution(
        amps in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), eraser_core::DIM),
    ) {
        let s = StateVector::from_amplitudes(amps.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
        prop_assert_eq!(apply_pulse2(&apply_pulse2(&s)), s);
    }
}
