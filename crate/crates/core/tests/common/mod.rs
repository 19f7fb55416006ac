#![allow(dead_code)]

use num_complex::Complex64;
use pkepler::kepler::PhasePoint;
use pkepler::oscillator::ComplexState;
use pkepler::pauli::{Rep, Spinor, TwistorVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn spinor(r: &mut ChaCha8Rng) -> Spinor {
    Spinor::new(complex(r), complex(r))
}

pub fn twistor(r: &mut ChaCha8Rng, rep: Rep) -> TwistorVec {
    TwistorVec { upper: spinor(r), lower: spinor(r), rep }
}

pub fn state(r: &mut ChaCha8Rng) -> ComplexState {
    ComplexState::new(spinor(r), spinor(r))
}

/// Random `(y⃗, x⃗)` with `‖x⃗‖ ≥ 0.2`.
pub fn phase_point(r: &mut ChaCha8Rng) -> PhasePoint {
    loop {
        let x = [0; 3].map(|_| r.gen_range(-1.0..1.0));
        let y = [0; 3].map(|_| r.gen_range(-1.0..1.0));
        let pt = PhasePoint { y, x };
        if pt.norm_x() >= 0.2 {
            return pt;
        }
    }
}

/// Writes `text` into `dir/name` and returns the path.
pub fn write_file(dir: &std::path::Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub const COMPARE_CONFIG: &str = "# worked example, l = +1\n\
    chart = kepler\n\
    t_end = 10\n\
    samples = 201\n\
    example.I0 = 1\n\
    example.G0 = 0.1\n\
    example.H = 4.1\n\
    example.l = 1\n";
