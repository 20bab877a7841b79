//! Seeded random rationals and polynomials. All randomness in the crate goes
//! through `ChaCha8Rng` so results depend only on the seed.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symexpr::{Monomial, Polynomial, VarSet};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p ∈ [−max_num, max_num]`, `q ∈ [1, max_den]`.
pub fn rational(rng: &mut SeededRng, max_num: i64, max_den: i64) -> BigRational {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    BigRational::new(p.into(), q.into())
}

/// Nonzero variant of [`rational`].
pub fn nonzero_rational(rng: &mut SeededRng, max_num: i64, max_den: i64) -> BigRational {
    loop {
        let r = rational(rng, max_num, max_den);
        if r != BigRational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Random polynomial in the first `ncoords` variables of `vars` with up to
/// `terms` terms of total degree at most `max_degree`.
pub fn polynomial(rng: &mut SeededRng, vars: &VarSet, ncoords: usize, terms: usize, max_degree: u16) -> Polynomial {
    let mut out = Polynomial::zero(vars);
    for _ in 0..terms {
        let mut exps = vec![0u16; vars.len()];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            exps[rng.gen_range(0..ncoords)] += 1;
        }
        let c = nonzero_rational(rng, 5, 3);
        out = &out + &Polynomial::monomial(vars, Monomial::from_exponents(&exps), c);
    }
    out
}
