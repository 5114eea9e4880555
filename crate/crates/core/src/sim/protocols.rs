//! One-bit singlet simulation and the two-bit prepare-and-measure simulation.

use rand::Rng;
use rand_distr::UnitSphere;

use super::BlochVector;

fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

fn random_direction(rng: &mut impl Rng) -> BlochVector {
    BlochVector(rng.sample(UnitSphere))
}

/// One round of the singlet simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingletRound {
    pub a: i8,
    pub b: i8,
    /// The single communicated bit (`true` for `+1`).
    pub bit: bool,
}

impl SingletRound {
    pub const BITS: usize = 1;
}

/// Outcomes `(a, b)` with `E[a] = E[b] = 0` and `E[ab] = -a_setting . b_setting`.
///
/// With shared uniform directions `l1`, `l2`: the first party outputs
/// `-sgn(a . l1)` and sends `c = sgn(a . l1) sgn(a . l2)`; the second outputs
/// `sgn(b . (l1 + c l2))`.
pub fn simulate_singlet_one_bit(a_setting: &BlochVector, b_setting: &BlochVector, rng: &mut impl Rng) -> SingletRound {
    let l1 = random_direction(rng);
    let l2 = random_direction(rng);
    singlet_round(a_setting, b_setting, &l1, &l2)
}

fn singlet_round(a_setting: &BlochVector, b_setting: &BlochVector, l1: &BlochVector, l2: &BlochVector) -> SingletRound {
    let s1 = sign(a_setting.dot(l1));
    let c = s1 * sign(a_setting.dot(l2));
    let sum = BlochVector([0, 1, 2].map(|k| l1.0[k] + f64::from(c) * l2.0[k]));
    SingletRound {
        a: -s1,
        b: sign(b_setting.dot(&sum)),
        bit: c > 0,
    }
}

/// One round of the prepare-and-measure simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PmRound {
    pub b: i8,
    /// The preparing side's outcome and the singlet simulation bit.
    pub bits: [bool; 2],
}

impl PmRound {
    pub const BITS: usize = 2;
}

/// Samples `b` with `p(b = +1) = (1 + x . y) / 2`.
///
/// The preparing side measures `x . sigma` on its half of a simulated singlet
/// and sends the outcome `a`; the measuring side measures `-a y . sigma` on
/// the other half.
pub fn simulate_pm_two_bits(x: &BlochVector, y: &BlochVector, rng: &mut impl Rng) -> PmRound {
    let l1 = random_direction(rng);
    let l2 = random_direction(rng);
    // The preparing side's outcome does not depend on the other setting.
    let a = -sign(x.dot(&l1));
    let setting = y.scaled(-f64::from(a));
    let r = singlet_round(x, &setting, &l1, &l2);
    debug_assert_eq!(r.a, a);
    PmRound {
        b: r.b,
        bits: [a > 0, r.bit],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parallel_settings_anticorrelate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z = BlochVector::new(0.0, 0.0, 1.0);
        for _ in 0..1000 {
            let r = simulate_singlet_one_bit(&z, &z, &mut rng);
            assert_eq!(r.a, -r.b);
        }
    }

    #[test]
    fn equal_vectors_always_plus() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let v = BlochVector::from_angles(0.7, 2.0);
        assert!((0..1000).all(|_| simulate_pm_two_bits(&v, &v, &mut rng).b == 1));
    }
}
