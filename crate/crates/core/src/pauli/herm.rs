use num_complex::Complex64;

use super::matrix::Mat2;
use super::AlgebraError;

/// Hermitian-matrix tolerance for [`Herm2::from_dense`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A hermitian 2×2 matrix stored by its Pauli coefficients,
/// `H = a0·σ0 + a1·σ1 + a2·σ2 + a3·σ3`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Herm2 {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Herm2 {
    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Herm2 { a0, a1, a2, a3 }
    }

    /// Traceless matrix `v·σ⃗`.
    pub const fn from_vector(v: [f64; 3]) -> Self {
        Herm2::new(0.0, v[0], v[1], v[2])
    }

    /// Rank-one projector `ζζ⁺`.
    pub fn projector(z: [Complex64; 2]) -> Self {
        let c = z[0].conj() * z[1];
        Herm2::new(0.5 * (z[0].norm_sqr() + z[1].norm_sqr()), c.re, -c.im, 0.5 * (z[0].norm_sqr() - z[1].norm_sqr()))
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn det(&self) -> f64 {
        self.a0 * self.a0 - self.a1 * self.a1 - self.a2 * self.a2 - self.a3 * self.a3
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.a0
    }

    pub fn to_dense(&self) -> Mat2 {
        let off = Complex64::new(self.a1, self.a2);
        Mat2::new(Complex64::new(self.a0 + self.a3, 0.0), off, off.conj(), Complex64::new(self.a0 - self.a3, 0.0))
    }

    /// Pauli expansion of a dense matrix, rejecting inputs that are not
    /// hermitian to within [`HERMITIAN_TOL`].
    pub fn from_dense(m: &Mat2) -> Result<Self, AlgebraError> {
        let deviation = m.max_abs_diff(&m.adjoint());
        if !(deviation <= HERMITIAN_TOL) {
            return Err(AlgebraError::NotHermitian { deviation });
        }
        Ok(Self::from_dense_unchecked(m))
    }

    /// Pauli coefficients `a_μ = ½ Re Tr(σ_μ m)`.
    pub(crate) fn from_dense_unchecked(m: &Mat2) -> Self {
        let x = &m.0;
        // Average the off-diagonal pair so mild asymmetry is projected out.
        let off = 0.5 * (x[0][1] + x[1][0].conj());
        Herm2::new(0.5 * (x[0][0].re + x[1][1].re), off.re, off.im, 0.5 * (x[0][0].re - x[1][1].re))
    }
}

/// Pauli coefficients of a dense hermitian matrix.
pub fn pauli_expand(m: &Mat2) -> Result<Herm2, AlgebraError> {
    Herm2::from_dense(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_elements() {
        assert_eq!(pauli_expand(&Mat2::sigma(3)).unwrap(), Herm2::new(0.0, 0.0, 0.0, 1.0));
        assert_eq!(pauli_expand(&Mat2::sigma(0)).unwrap(), Herm2::new(1.0, 0.0, 0.0, 0.0));
        for mu in 0..4 {
            let h = pauli_expand(&Mat2::sigma(mu)).unwrap();
            assert!(h.to_dense().max_abs_diff(&Mat2::sigma(mu)) < 1e-15);
        }
    }

    #[test]
    fn mixed_example() {
        let m = Mat2::new(c(2.0, 0.0), c(1.0, -1.0), c(1.0, 1.0), c(0.0, 0.0));
        let h = pauli_expand(&m).unwrap();
        assert_eq!(h, Herm2::new(1.0, 1.0, -1.0, 1.0));
        assert!(h.to_dense().max_abs_diff(&m) < 1e-14);
        let dense_det = m.det();
        assert!((dense_det.re - h.det()).abs() < 1e-14 && dense_det.im.abs() < 1e-14);
        assert!((m.trace().re - h.trace()).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Mat2::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        match pauli_expand(&m) {
            Err(AlgebraError::NotHermitian { deviation }) => assert!((deviation - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let tiny = Mat2::new(c(1.0, 1e-13), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(pauli_expand(&tiny).is_ok());
    }

    #[test]
    fn projector_matches_outer_product() {
        let z = [c(0.3, -1.2), c(-0.7, 0.4)];
        let p = Herm2::projector(z);
        assert!(p.to_dense().max_abs_diff(&Mat2::outer(z, z)) < 1e-15);
        assert!(p.det().abs() < 1e-15);
    }
}
