//! Cotangent-bundle pictures of the twistor momentum map: `T*U(2)` in
//! coordinates `(Z, ρ)` and `H(2) × H(2)` in coordinates `(Y, X)`, the
//! Cayley map between them and the `U(2,2)` actions on each.

use num_complex::Complex64;

use super::herm::Herm2;
use super::matrix::{Mat2, Mat4C};
use super::twistor::{Rep, TwistorVec};
use super::AlgebraError;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Unitarity / group-relation tolerance.
pub const GROUP_TOL: f64 = 1e-10;
/// Smallest determinant accepted when inverting `−iY + σ0`.
pub const CAYLEY_DET_MIN: f64 = 1e-14;
/// Smallest determinant accepted when inverting `iZ + σ0`.
pub const CAYLEY_INVERSE_DET_MIN: f64 = 1e-12;
/// Smallest determinant accepted for the denominators of fractional-linear actions.
pub const ACTION_DET_MIN: f64 = 1e-14;

/// A point of one of the two classical phase spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalPoint {
    /// `(Z, ρ) ∈ U(2) × H(2)`, the cotangent bundle of `U(2)`.
    Diagonal { z: Mat2, rho: Herm2 },
    /// `(Y, X) ∈ H(2) × H(2)`.
    AntiDiagonal { y: Herm2, x: Herm2 },
}

impl ClassicalPoint {
    pub fn rep(&self) -> Rep {
        match self {
            ClassicalPoint::Diagonal { .. } => Rep::Diagonal,
            ClassicalPoint::AntiDiagonal { .. } => Rep::AntiDiagonal,
        }
    }
}

fn unitarity_defect(z: &Mat2) -> f64 {
    (z.adjoint() * *z).max_abs_diff(&Mat2::identity())
}

/// `I_d(Z, ρ)` or `I_a(Y, X)` by their block formulas.
pub fn moment_map_classical(point: &ClassicalPoint) -> Result<Mat4C, AlgebraError> {
    match point {
        ClassicalPoint::Diagonal { z, rho } => {
            let deviation = unitarity_defect(z);
            if !(deviation <= GROUP_TOL) {
                return Err(AlgebraError::NotUnitary { deviation });
            }
            let r = rho.to_dense();
            let zr = *z * r;
            Ok(Mat4C::from_blocks((zr * z.adjoint()).scale(I), zr.scale(-I), zr.adjoint().scale(I), r.scale(-I)))
        }
        ClassicalPoint::AntiDiagonal { y, x } => {
            let (y, x) = (y.to_dense(), x.to_dense());
            Ok(Mat4C::from_blocks(-(y * x), y * x * y, -x, x * y))
        }
    }
}

/// The cotangent-lift of the Cayley transform,
/// `(Y, X) ↦ (Z, ρ) = ((Y − iσ0)(−iY + σ0)⁻¹, ½(−iY + σ0) X (−iY + σ0)⁺)`.
pub fn cayley_cotangent(y: &Herm2, x: &Herm2) -> Result<(Mat2, Herm2), AlgebraError> {
    let yd = y.to_dense();
    let s0 = Mat2::identity();
    let w = yd.scale(-I) + s0;
    let w_inv = w.inverse(CAYLEY_DET_MIN).ok_or(AlgebraError::CayleyBoundary { det: w.det().norm() })?;
    let z = (yd - s0.scale(I)) * w_inv;
    let rho = (w * x.to_dense() * w.adjoint()).scale(Complex64::new(0.5, 0.0));
    Ok((z, Herm2::from_dense_unchecked(&rho)))
}

/// Inverse Cayley map `Y = (Z + iσ0)(iZ + σ0)⁻¹`, defined off `det(iZ + σ0) = 0`.
pub fn cayley_inverse(z: &Mat2) -> Result<Herm2, AlgebraError> {
    let s0 = Mat2::identity();
    let w = z.scale(I) + s0;
    let w_inv = w.inverse(CAYLEY_INVERSE_DET_MIN).ok_or(AlgebraError::CayleyBoundary { det: w.det().norm() })?;
    Ok(Herm2::from_dense_unchecked(&((*z + s0.scale(I)) * w_inv)))
}

/// Inverse `ρ` map: `X = 2 (−iY + σ0)⁻¹ ρ (−iY + σ0)⁻⁺`.
pub fn cayley_inverse_rho(y: &Herm2, rho: &Herm2) -> Result<Herm2, AlgebraError> {
    let w = y.to_dense().scale(-I) + Mat2::identity();
    let w_inv = w.inverse(CAYLEY_DET_MIN).ok_or(AlgebraError::CayleyBoundary { det: w.det().norm() })?;
    let x = (w_inv * rho.to_dense() * w_inv.adjoint()).scale(Complex64::new(2.0, 0.0));
    Ok(Herm2::from_dense_unchecked(&x))
}

/// Largest violation of the defining block relations of `U_d(2,2)` or `U_a(2,2)`.
pub fn group_defect(rep: Rep, g: &Mat4C) -> f64 {
    let (a, b, c, d) = (g.block(0, 0), g.block(0, 1), g.block(1, 0), g.block(1, 1));
    let s0 = Mat2::identity();
    match rep {
        Rep::Diagonal => [
            (a.adjoint() * a).max_abs_diff(&(s0 + c.adjoint() * c)),
            (d.adjoint() * d).max_abs_diff(&(s0 + b.adjoint() * b)),
            (d.adjoint() * c).max_abs_diff(&(b.adjoint() * a)),
        ],
        Rep::AntiDiagonal => [
            (a.adjoint() * c).max_abs_diff(&(c.adjoint() * a)),
            (d.adjoint() * b).max_abs_diff(&(b.adjoint() * d)),
            (a.adjoint() * d).max_abs_diff(&(s0 + c.adjoint() * b)),
        ],
    }
    .into_iter()
    .fold(0.0, f64::max)
}

/// `g⁻¹ = φ g⁺ φ` for a group element.
pub fn group_inverse(rep: Rep, g: &Mat4C) -> Mat4C {
    let phi = rep.metric();
    phi * g.adjoint() * phi
}

/// `Ad_g X = g X g⁻¹`.
pub fn adjoint_action(rep: Rep, g: &Mat4C, x: &Mat4C) -> Mat4C {
    *g * *x * group_inverse(rep, g)
}

/// Anything a `U(2,2)` element can act on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActionPoint {
    Twistor(TwistorVec),
    Classical(ClassicalPoint),
}

impl ActionPoint {
    pub fn rep(&self) -> Rep {
        match self {
            ActionPoint::Twistor(v) => v.rep,
            ActionPoint::Classical(c) => c.rep(),
        }
    }
}

/// Action of `g ∈ U(2,2)` (in representation `rep`): linear on twistors,
/// fractional-linear `Λ_d` / `Λ_a` on the classical phase spaces.
pub fn group_action(rep: Rep, g: &Mat4C, point: &ActionPoint) -> Result<ActionPoint, AlgebraError> {
    if point.rep() != rep {
        return Err(AlgebraError::RepMismatch { left: rep, right: point.rep() });
    }
    let residual = group_defect(rep, g);
    if !(residual <= GROUP_TOL) {
        return Err(AlgebraError::NotInGroup { residual });
    }
    let (a, b, c, d) = (g.block(0, 0), g.block(0, 1), g.block(1, 0), g.block(1, 1));
    let fractional = |m: Mat2| -> Result<(Mat2, Mat2), AlgebraError> {
        let den = c * m + d;
        let den_inv = den.inverse(ACTION_DET_MIN).ok_or(AlgebraError::SingularAction { det: den.det().norm() })?;
        Ok(((a * m + b) * den_inv, den))
    };
    Ok(match point {
        ActionPoint::Twistor(v) => ActionPoint::Twistor(v.transform(g)),
        ActionPoint::Classical(ClassicalPoint::Diagonal { z, rho }) => {
            let (z_new, den) = fractional(*z)?;
            let rho_new = den * rho.to_dense() * den.adjoint();
            ActionPoint::Classical(ClassicalPoint::Diagonal { z: z_new, rho: Herm2::from_dense_unchecked(&rho_new) })
        }
        ActionPoint::Classical(ClassicalPoint::AntiDiagonal { y, x }) => {
            let (y_new, den) = fractional(y.to_dense())?;
            let x_new = den * x.to_dense() * den.adjoint();
            ActionPoint::Classical(ClassicalPoint::AntiDiagonal {
                y: Herm2::from_dense_unchecked(&y_new),
                x: Herm2::from_dense_unchecked(&x_new),
            })
        }
    })
}

/// Momentum-map image of any action point.
pub fn moment_of(point: &ActionPoint) -> Result<Mat4C, AlgebraError> {
    match point {
        ActionPoint::Twistor(v) => Ok(super::twistor::momentum_map(v)),
        ActionPoint::Classical(c) => moment_map_classical(c),
    }
}
