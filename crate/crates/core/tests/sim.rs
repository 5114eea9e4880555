use dimwit::sim::{
    noise_ceiling_demo, pm_qubit_ideal, run_batch, simulate_pm_two_bits, simulate_singlet_one_bit, BlochVector,
    Protocol, BATCH_CSV_HEADER,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: u64 = 1_000_000;

#[test]
fn equal_settings_always_plus() {
    let v = BlochVector::from_angles(1.3, 0.4);
    let b = run_batch(Protocol::PrepareMeasure, v, v, N, 2).unwrap();
    assert_eq!(b.tallies[0], N);
    assert_eq!(pm_qubit_ideal(&v, &v).unwrap(), 1.0);
}

#[test]
fn prepare_measure_matches_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..5 {
        let x = BlochVector(rand::Rng::sample(&mut rng, rand_distr::UnitSphere));
        let y = BlochVector(rand::Rng::sample(&mut rng, rand_distr::UnitSphere));
        let b = run_batch(Protocol::PrepareMeasure, x, y, N, k).unwrap();
        assert!(b.within_sigmas(3.0), "pair {k}: z = {}", b.z_score());
        assert!((b.oracle() - pm_qubit_ideal(&x, &y).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn singlet_correlations() {
    let z = BlochVector::new(0.0, 0.0, 1.0);
    let x = BlochVector::new(1.0, 0.0, 0.0);
    let par = run_batch(Protocol::Singlet, z, z, N, 1).unwrap();
    assert_eq!(par.empirical(), -1.0);
    let orth = run_batch(Protocol::Singlet, z, x, N, 2).unwrap();
    assert!(orth.within_sigmas(3.0), "{}", orth.z_score());
    let (ma, mb) = orth.marginals();
    assert!(ma.abs() <= 3.0 / (N as f64).sqrt() && mb.abs() <= 3.0 / (N as f64).sqrt());
}

#[test]
fn transcripts_respect_budgets() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = BlochVector::from_angles(0.2, 0.1);
    let b = BlochVector::from_angles(2.2, -1.0);
    for _ in 0..1000 {
        assert_eq!(simulate_pm_two_bits(&a, &b, &mut rng).bits.len(), 2);
        let r = simulate_singlet_one_bit(&a, &b, &mut rng);
        assert!(r.a.abs() == 1 && r.b.abs() == 1);
    }
    let batch = run_batch(Protocol::Singlet, a, b, 100_000, 9).unwrap();
    assert_eq!(batch.bits_sent, 100_000);
}

#[test]
fn csv_rows_are_reproducible() {
    let a = BlochVector::from_angles(0.2, 0.1);
    let r1 = run_batch(Protocol::PrepareMeasure, a, a.scaled(-1.0), 70_000, 5).unwrap().to_csv_row();
    let r2 = run_batch(Protocol::PrepareMeasure, a, a.scaled(-1.0), 70_000, 5).unwrap().to_csv_row();
    assert_eq!(r1, r2);
    assert_eq!(r1.split(',').count(), BATCH_CSV_HEADER.split(',').count());
}

#[test]
fn noise_ceiling_monotone_and_bounded() {
    let x = BlochVector::new(1.0, 0.0, 0.0);
    let z = BlochVector::new(0.0, 0.0, 1.0);
    let bb84 = [x, x.scaled(-1.0), z, z.scaled(-1.0)];
    assert!(noise_ceiling_demo(&bb84, &[x, z], 0.5).unwrap().inside);
    assert!(noise_ceiling_demo(&bb84, &[x, z], 1.0).unwrap().inside);
    let s = 1.0 / 3f64.sqrt();
    let tetra = [
        BlochVector::new(s, s, s),
        BlochVector::new(s, -s, -s),
        BlochVector::new(-s, s, -s),
        BlochVector::new(-s, -s, s),
    ];
    let y = BlochVector::new(0.0, 1.0, 0.0);
    let r = noise_ceiling_demo(&tetra, &[x, y, z], 0.05).unwrap();
    assert!(!r.inside);
    let max_out = r.trace.iter().filter(|t| !t.1).map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    let min_in = r.trace.iter().filter(|t| t.1).map(|t| t.0).fold(f64::INFINITY, f64::min);
    assert!(max_out < min_in);
    assert!(r.threshold <= 0.5);
    assert!(r.summary().contains("verdict = Outside"));
}

#[test]
fn rejects_non_unit_and_large_instances() {
    let x = BlochVector::new(1.0, 0.0, 0.0);
    assert!(pm_qubit_ideal(&x.scaled(2.0), &x).is_err());
    assert!(run_batch(Protocol::Singlet, x.scaled(0.9), x, 10, 0).is_err());
    assert!(noise_ceiling_demo(&[x; 4], &[x; 4], 0.5).is_err());
}
