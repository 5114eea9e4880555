//! Values frozen from the independent brute-force oracle in `oracles/`.

use dimwit::catalog::{appendix_witness, drac_witness, wd_witness, wj_witness};
use dimwit::classical::{classical_bound, enumerate_vertices, verify_facet, DEFAULT_CAP};
use dimwit::rational::{frac, int, Rational};
use dimwit::sim::{noise_ceiling_demo, BlochVector};
use dimwit::{Scenario, Witness};

const APPENDIX_SATURATING: [usize; 13] = [16, 13, 14, 12, 10, 10, 10, 9, 11, 11, 16, 9, 20];

#[test]
fn vertex_counts() {
    let a = Scenario::line(3, 2, 1, 2, 2, [2, 2]).unwrap();
    assert_eq!(enumerate_vertices(&a, [2, 2], DEFAULT_CAP).unwrap().len(), 232);
    let k = Scenario::two_prep(3, 3, 1, 2, [2, 2]).unwrap();
    assert_eq!(enumerate_vertices(&k, [2, 2], DEFAULT_CAP).unwrap().len(), 104);
}

#[test]
fn wj_face() {
    let w = wj_witness();
    let r = verify_facet(&w, w.scenario(), [2, 2]).unwrap();
    assert_eq!((r.affine_dim_polytope, r.affine_dim_face, r.saturating_count), (12, 11, 16));
    assert!(r.is_facet);
}

#[test]
fn appendix_faces() {
    for (k, &sat) in APPENDIX_SATURATING.iter().enumerate() {
        let w = appendix_witness(k + 1);
        let r = verify_facet(&w, w.scenario(), [2, 2]).unwrap();
        assert_eq!((r.affine_dim_polytope, r.affine_dim_face, r.saturating_count), (9, 8, sat), "witness {}", k + 1);
        assert_eq!(&r.max_over_vertices, w.bound());
    }
}

fn bounds(w: &Witness, ds: &[usize]) -> Vec<Rational> {
    ds.iter().map(|&d| classical_bound(w, w.scenario(), [d, d]).unwrap().0).collect()
}

#[test]
fn bound_table() {
    assert_eq!(bounds(&wj_witness(), &[1, 2, 3]), [int(0), int(2), int(4)]);
    assert_eq!(bounds(&drac_witness(), &[1, 2, 3]), [frac(1, 2), frac(2, 3), frac(19, 24)]);
    assert_eq!(bounds(&wd_witness(), &[1, 2, 3]), [int(0), frac(1, 4), frac(9, 16)]);
    for k in 1..=13 {
        let w = appendix_witness(k);
        assert_eq!(&bounds(&w, &[2])[0], w.bound(), "witness {k}");
    }
}

#[test]
fn noise_thresholds() {
    let x = BlochVector::new(1.0, 0.0, 0.0);
    let y = BlochVector::new(0.0, 1.0, 0.0);
    let z = BlochVector::new(0.0, 0.0, 1.0);
    let bb84 = noise_ceiling_demo(&[x, x.scaled(-1.0), z, z.scaled(-1.0)], &[x, z], 0.0).unwrap();
    assert!(bb84.inside);
    assert_eq!(bb84.threshold, 0.0);

    let third = 2.0 * std::f64::consts::PI / 3.0;
    let trine: Vec<BlochVector> = (0..3)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_2 + third * k as f64;
            BlochVector::new(a.cos(), 0.0, a.sin())
        })
        .collect();
    let r = noise_ceiling_demo(&trine, &[x, z], 0.0).unwrap();
    assert!(!r.inside);
    assert!((r.threshold - 0.19615).abs() <= 2e-4, "{}", r.threshold);

    let s = 1.0 / 3f64.sqrt();
    let tetra = [
        BlochVector::new(s, s, s),
        BlochVector::new(s, -s, -s),
        BlochVector::new(-s, s, -s),
        BlochVector::new(-s, -s, s),
    ];
    let r = noise_ceiling_demo(&tetra, &[x, y, z], 0.0).unwrap();
    assert!((r.threshold - 0.13398).abs() <= 2e-4, "{}", r.threshold);
}
