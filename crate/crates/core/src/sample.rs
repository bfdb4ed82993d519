//! Seeded random specs for property checks and benchmarks.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::compress::CompressedDouble;
use crate::double::DarSpec;
use crate::rational::{int, rat, Rational};
use crate::series::Series;
use crate::tp::{pf_series, PfGenerator};

fn small_nonzero<R: Rng>(rng: &mut R) -> Rational {
    int(*[-2, -1, 1, 2].choose(rng).expect("nonempty"))
}

fn parity_series<R: Rng>(rng: &mut R, trunc: usize, odd: bool) -> Series {
    let start = usize::from(odd);
    let coeffs = (0..=trunc)
        .map(|i| {
            if i < start || (i - start) % 2 == 1 {
                Rational::zero()
            } else if i == start {
                small_nonzero(rng)
            } else {
                int(rng.gen_range(-3..=3))
            }
        })
        .collect();
    Series::from_coeffs(coeffs)
}

/// A double almost-Riordan spec with small integer coefficients and
/// nonzero leading terms.
pub fn random_dar_spec<R: Rng>(rng: &mut R, trunc: usize) -> DarSpec {
    DarSpec::new(
        parity_series(rng, trunc, false),
        parity_series(rng, trunc, false),
        parity_series(rng, trunc, true),
        parity_series(rng, trunc, true),
    )
    .expect("random spec satisfies the constructor's checks")
}

fn pf_param<R: Rng>(rng: &mut R) -> Rational {
    [rat(1, 2), int(1), int(2), int(3)]
        .choose(rng)
        .expect("nonempty")
        .clone()
}

/// A Pólya frequency generator with up to two `alpha` and two `beta` factors.
pub fn random_pf_generator<R: Rng>(rng: &mut R, k: usize) -> PfGenerator {
    let c = [int(1), int(2)].choose(rng).expect("nonempty").clone();
    let alphas = (0..rng.gen_range(0..=2)).map(|_| pf_param(rng)).collect();
    let betas = (0..rng.gen_range(0..=2)).map(|_| pf_param(rng)).collect();
    PfGenerator::new(c, k, Rational::zero(), alphas, betas).expect("parameters are nonnegative")
}

/// A compressed double Riordan triple of Pólya frequency series.
pub fn random_pf_core<R: Rng>(rng: &mut R, trunc: usize) -> CompressedDouble {
    let g = pf_series(&random_pf_generator(rng, 0), trunc);
    let f1 = pf_series(&random_pf_generator(rng, 1), trunc);
    let f2 = pf_series(&random_pf_generator(rng, 1), trunc);
    CompressedDouble::new(g, f1, f2).expect("leading terms are positive")
}
