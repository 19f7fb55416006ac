//! Seeded random samplers shared by the algebra tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::herm::Herm2;
use super::matrix::{Mat2, Mat4C};
use super::twistor::{Rep, Spinor, TwistorVec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    eprintln!("seed={seed}");
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(r: &mut impl Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_spinor(r: &mut impl Rng) -> Spinor {
    Spinor::new(random_complex(r), random_complex(r))
}

pub fn random_twistor(r: &mut impl Rng, rep: Rep) -> TwistorVec {
    TwistorVec { upper: random_spinor(r), lower: random_spinor(r), rep }
}

pub fn random_herm(r: &mut impl Rng) -> Herm2 {
    Herm2::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

fn random_mat2(r: &mut impl Rng) -> Mat2 {
    Mat2::new(random_complex(r), random_complex(r), random_complex(r), random_complex(r))
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `exp` of a random element `[[iα, β], [β⁺, iδ]]` of the diagonal Lie algebra.
pub fn random_group_element(r: &mut impl Rng) -> Mat4C {
    let beta = random_mat2(r).scale(Complex64::new(0.5, 0.0));
    let gen = Mat4C::from_blocks(
        random_herm(r).to_dense().scale(I * 0.5),
        beta,
        beta.adjoint(),
        random_herm(r).to_dense().scale(I * 0.5),
    );
    gen.exp()
}

/// Random element of `U(2) × U(2)`.
pub fn random_compact_element(r: &mut impl Rng) -> Mat4C {
    let gen = Mat4C::from_blocks(
        random_herm(r).to_dense().scale(I),
        Mat2::ZERO,
        Mat2::ZERO,
        random_herm(r).to_dense().scale(I),
    );
    gen.exp()
}
