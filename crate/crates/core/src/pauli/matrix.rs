//! Fixed-size complex matrices used by the twistor layer.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    /// Pauli basis element `σ_μ`, with `σ2 = [[0, i], [-i, 0]]`.
    pub fn sigma(mu: usize) -> Self {
        match mu {
            0 => Self::identity(),
            1 => Mat2([[ZERO, ONE], [ONE, ZERO]]),
            2 => Mat2([[ZERO, I], [-I, ZERO]]),
            3 => Mat2([[ONE, ZERO], [ZERO, -ONE]]),
            _ => panic!("Pauli index {mu} out of range"),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Inverse, or `None` when `|det| <= min_det`.
    pub fn inverse(&self, min_det: f64) -> Option<Self> {
        let det = self.det();
        if det.norm() <= min_det {
            return None;
        }
        let m = &self.0;
        let inv = ONE / det;
        Some(Mat2([[m[1][1] * inv, -m[0][1] * inv], [-m[1][0] * inv, m[0][0] * inv]]))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Outer product `a b⁺`.
    pub fn outer(a: [Complex64; 2], b: [Complex64; 2]) -> Self {
        Mat2([[a[0] * b[0].conj(), a[0] * b[1].conj()], [a[1] * b[0].conj(), a[1] * b[1].conj()]])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

/// A complex 4×4 matrix, row-major, read in 2×2 blocks `[[A, B], [C, D]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4C(pub [[Complex64; 4]; 4]);

impl Mat4C {
    pub const ZERO: Mat4C = Mat4C([[ZERO; 4]; 4]);

    pub fn identity() -> Self {
        let mut m = Self::ZERO;
        for k in 0..4 {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_blocks(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> Self {
        let mut m = Self::ZERO;
        for r in 0..2 {
            for col in 0..2 {
                m.0[r][col] = a.0[r][col];
                m.0[r][col + 2] = b.0[r][col];
                m.0[r + 2][col] = c.0[r][col];
                m.0[r + 2][col + 2] = d.0[r][col];
            }
        }
        m
    }

    /// Block `(row, col)` with each index in `{0, 1}`.
    pub fn block(&self, row: usize, col: usize) -> Mat2 {
        let (r0, c0) = (2 * row, 2 * col);
        Mat2([[self.0[r0][c0], self.0[r0][c0 + 1]], [self.0[r0 + 1][c0], self.0[r0 + 1][c0 + 1]]])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::ZERO;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = self.0[c][r].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn apply(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.0[r][c] * v[c]).sum();
        }
        out
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn exp(&self) -> Self {
        let norm: f64 = self.0.iter().flatten().map(|z| z.norm()).sum();
        let mut squarings = 0;
        let mut scaled = *self;
        if norm > 0.5 {
            squarings = (norm / 0.5).log2().ceil() as u32;
            scaled = self.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
        }
        let mut result = Self::identity();
        let mut term = Self::identity();
        for n in 1..=20 {
            term = (term * scaled).scale(Complex64::new(1.0 / n as f64, 0.0));
            result = result + term;
        }
        for _ in 0..squarings {
            result = result * result;
        }
        result
    }
}

impl Add for Mat4C {
    type Output = Mat4C;
    fn add(self, o: Mat4C) -> Mat4C {
        let mut m = self;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] += o.0[r][c];
            }
        }
        m
    }
}

impl Sub for Mat4C {
    type Output = Mat4C;
    fn sub(self, o: Mat4C) -> Mat4C {
        self + o.scale(-ONE)
    }
}

impl Mul for Mat4C {
    type Output = Mat4C;
    fn mul(self, o: Mat4C) -> Mat4C {
        let mut m = Self::ZERO;
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = (0..4).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra_relations() {
        // σ_k² = σ0 and σ1σ2 = -iσ3 with this σ2 sign.
        for k in 1..4 {
            let s = Mat2::sigma(k);
            assert!((s * s).max_abs_diff(&Mat2::identity()) < 1e-15);
        }
        let prod = Mat2::sigma(1) * Mat2::sigma(2);
        assert!(prod.max_abs_diff(&Mat2::sigma(3).scale(-I)) < 1e-15);
    }

    #[test]
    fn inverse_of_singular_is_none() {
        let m = Mat2::outer([ONE, ONE], [ONE, ONE]);
        assert!(m.inverse(1e-14).is_none());
        let a = Mat2::new(ONE, I, ZERO, ONE * 2.0);
        let inv = a.inverse(1e-14).unwrap();
        assert!((a * inv).max_abs_diff(&Mat2::identity()) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal_phase() {
        let t = 0.7;
        let gen =
            Mat4C::from_blocks(Mat2::identity().scale(I * t), Mat2::ZERO, Mat2::ZERO, Mat2::identity().scale(-I * t));
        let g = gen.exp();
        let expected = Mat4C::from_blocks(
            Mat2::identity().scale(Complex64::from_polar(1.0, t)),
            Mat2::ZERO,
            Mat2::ZERO,
            Mat2::identity().scale(Complex64::from_polar(1.0, -t)),
        );
        assert!(g.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn blocks_roundtrip() {
        let a = Mat2::sigma(1);
        let b = Mat2::sigma(2);
        let c = Mat2::sigma(3);
        let d = Mat2::identity().scale(I);
        let m = Mat4C::from_blocks(a, b, c, d);
        assert_eq!(m.block(0, 0), a);
        assert_eq!(m.block(0, 1), b);
        assert_eq!(m.block(1, 0), c);
        assert_eq!(m.block(1, 1), d);
    }
}
