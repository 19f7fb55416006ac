use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::matrix::{Mat2, Mat4C};
use super::AlgebraError;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A pair of complex numbers.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor { c1: Complex64::new(0.0, 0.0), c2: Complex64::new(0.0, 0.0) };

    pub const fn new(c1: Complex64, c2: Complex64) -> Self {
        Spinor { c1, c2 }
    }

    pub fn real(c1: f64, c2: f64) -> Self {
        Spinor::new(Complex64::new(c1, 0.0), Complex64::new(c2, 0.0))
    }

    pub fn as_array(&self) -> [Complex64; 2] {
        [self.c1, self.c2]
    }

    pub fn from_array(a: [Complex64; 2]) -> Self {
        Spinor::new(a[0], a[1])
    }

    /// Hermitian product `self⁺ other`.
    pub fn dot(&self, other: &Spinor) -> Complex64 {
        self.c1.conj() * other.c1 + self.c2.conj() * other.c2
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    pub fn scale(&self, s: Complex64) -> Spinor {
        Spinor::new(self.c1 * s, self.c2 * s)
    }

    pub fn add(&self, o: &Spinor) -> Spinor {
        Spinor::new(self.c1 + o.c1, self.c2 + o.c2)
    }

    pub fn transform(&self, m: &Mat2) -> Spinor {
        Spinor::from_array(m.apply(self.as_array()))
    }

    /// `self⁺ σ_μ other`.
    pub fn sandwich(&self, mu: usize, other: &Spinor) -> Complex64 {
        self.dot(&other.transform(&Mat2::sigma(mu)))
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }
}

/// Which spinor presentation of the twistor metric is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rep {
    /// `φ_d = diag(σ0, −σ0)`, spinors `(η, ξ)`.
    Diagonal,
    /// `φ_a = i[[0, −σ0], [σ0, 0]]`, spinors `(ϑ, ζ)`.
    AntiDiagonal,
}

impl Rep {
    pub fn metric(self) -> Mat4C {
        let s0 = Mat2::identity();
        match self {
            Rep::Diagonal => Mat4C::from_blocks(s0, Mat2::ZERO, Mat2::ZERO, -s0),
            Rep::AntiDiagonal => Mat4C::from_blocks(Mat2::ZERO, s0.scale(-I), s0.scale(I), Mat2::ZERO),
        }
    }
}

/// The fixed unitary taking anti-diagonal components to diagonal ones,
/// `(η, ξ) = C (ϑ, ζ)`.
pub fn representation_change() -> Mat4C {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let s0 = Mat2::identity().scale(s);
    Mat4C::from_blocks(s0, s0.scale(-I), s0.scale(-I), s0)
}

/// A twistor: two spinors plus the representation they are written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistorVec {
    pub upper: Spinor,
    pub lower: Spinor,
    pub rep: Rep,
}

impl TwistorVec {
    pub fn diagonal(eta: Spinor, xi: Spinor) -> Self {
        TwistorVec { upper: eta, lower: xi, rep: Rep::Diagonal }
    }

    pub fn anti_diagonal(theta: Spinor, zeta: Spinor) -> Self {
        TwistorVec { upper: theta, lower: zeta, rep: Rep::AntiDiagonal }
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.upper.c1, self.upper.c2, self.lower.c1, self.lower.c2]
    }

    pub fn from_components(c: [Complex64; 4], rep: Rep) -> Self {
        TwistorVec { upper: Spinor::new(c[0], c[1]), lower: Spinor::new(c[2], c[3]), rep }
    }

    pub fn transform(&self, g: &Mat4C) -> Self {
        Self::from_components(g.apply(self.components()), self.rep)
    }

    /// The same twistor written in the other representation.
    pub fn to_rep(&self, rep: Rep) -> Self {
        match (self.rep, rep) {
            (a, b) if a == b => *self,
            (Rep::AntiDiagonal, Rep::Diagonal) => {
                Self::from_components(representation_change().apply(self.components()), Rep::Diagonal)
            }
            _ => Self::from_components(representation_change().adjoint().apply(self.components()), Rep::AntiDiagonal),
        }
    }
}

/// `⟨v, w⟩ = v⁺ φ w` with the metric of the shared representation.
pub fn twistor_inner(v: &TwistorVec, w: &TwistorVec) -> Result<Complex64, AlgebraError> {
    if v.rep != w.rep {
        return Err(AlgebraError::RepMismatch { left: v.rep, right: w.rep });
    }
    Ok(match v.rep {
        Rep::Diagonal => v.upper.dot(&w.upper) - v.lower.dot(&w.lower),
        Rep::AntiDiagonal => I * (v.lower.dot(&w.upper) - v.upper.dot(&w.lower)),
    })
}

/// The momentum map `J(v) = i v v⁺ φ`, by its block formula in each
/// representation.
pub fn momentum_map(v: &TwistorVec) -> Mat4C {
    let (a, b) = (v.upper.as_array(), v.lower.as_array());
    match v.rep {
        Rep::Diagonal => Mat4C::from_blocks(
            Mat2::outer(a, a).scale(I),
            Mat2::outer(a, b).scale(-I),
            Mat2::outer(b, a).scale(I),
            Mat2::outer(b, b).scale(-I),
        ),
        Rep::AntiDiagonal => {
            Mat4C::from_blocks(-Mat2::outer(a, b), Mat2::outer(a, a), -Mat2::outer(b, b), Mat2::outer(b, a))
        }
    }
}

/// Pauli components `I_μ = ½ η⁺σ_μη` and `J_ν = ½ ξ⁺σ_νξ`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IJComponents {
    pub i: [f64; 4],
    pub j: [f64; 4],
}

impl IJComponents {
    /// `I0² − |I⃗|²` and `J0² − |J⃗|²`; both vanish identically.
    pub fn rank_defects(&self) -> (f64, f64) {
        let d = |v: &[f64; 4]| v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
        (d(&self.i), d(&self.j))
    }
}

pub fn iju_components(eta: &Spinor, xi: &Spinor) -> IJComponents {
    let comp = |s: &Spinor| {
        let c = s.c1 * s.c2.conj();
        [0.5 * s.norm_sqr(), c.re, c.im, 0.5 * (s.c1.norm_sqr() - s.c2.norm_sqr())]
    };
    IJComponents { i: comp(eta), j: comp(xi) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::testutil::{random_spinor, random_twistor, rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_product_examples() {
        let e1 = TwistorVec::diagonal(Spinor::real(1.0, 0.0), Spinor::ZERO);
        assert_eq!(twistor_inner(&e1, &e1).unwrap(), c(1.0, 0.0));
        let e3 = TwistorVec::diagonal(Spinor::ZERO, Spinor::real(1.0, 0.0));
        assert_eq!(twistor_inner(&e3, &e3).unwrap(), c(-1.0, 0.0));
        let a = TwistorVec::anti_diagonal(Spinor::real(1.0, 0.0), Spinor::real(1.0, 0.0));
        assert_eq!(twistor_inner(&a, &a).unwrap(), c(0.0, 0.0));
        assert!(matches!(twistor_inner(&e1, &a), Err(AlgebraError::RepMismatch { .. })));
    }

    #[test]
    fn inner_matches_dense_metric_and_is_conjugate_symmetric() {
        let mut r = rng(11);
        for rep in [Rep::Diagonal, Rep::AntiDiagonal] {
            let phi = rep.metric();
            for _ in 0..50 {
                let v = random_twistor(&mut r, rep);
                let w = random_twistor(&mut r, rep);
                let dense: Complex64 = {
                    let pw = phi.apply(w.components());
                    v.components().iter().zip(pw).map(|(a, b)| a.conj() * b).sum()
                };
                let vw = twistor_inner(&v, &w).unwrap();
                let wv = twistor_inner(&w, &v).unwrap();
                assert!((vw - dense).norm() < 1e-13);
                assert!((vw - wv.conj()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn metrics_related_by_representation_change() {
        let cm = representation_change();
        let lhs = cm.adjoint() * Rep::Diagonal.metric() * cm;
        assert!(lhs.max_abs_diff(&Rep::AntiDiagonal.metric()) < 1e-15);
        assert!((cm.adjoint() * cm).max_abs_diff(&Mat4C::identity()) < 1e-15);
    }

    #[test]
    fn inner_invariant_under_representation_change() {
        let mut r = rng(12);
        for _ in 0..100 {
            let v = random_twistor(&mut r, Rep::AntiDiagonal);
            let w = random_twistor(&mut r, Rep::AntiDiagonal);
            let a = twistor_inner(&v, &w).unwrap();
            let d = twistor_inner(&v.to_rep(Rep::Diagonal), &w.to_rep(Rep::Diagonal)).unwrap();
            assert!((a - d).norm() < 1e-13);
            let back = v.to_rep(Rep::Diagonal).to_rep(Rep::AntiDiagonal);
            assert!(back.upper.add(&v.upper.scale(c(-1.0, 0.0))).norm_sqr() < 1e-28);
        }
    }

    #[test]
    fn momentum_map_examples() {
        let v = TwistorVec::diagonal(Spinor::real(1.0, 0.0), Spinor::ZERO);
        let mut expected = Mat4C::ZERO;
        expected.0[0][0] = I;
        assert_eq!(momentum_map(&v), expected);

        let a = TwistorVec::anti_diagonal(Spinor::real(1.0, 0.0), Spinor::real(0.0, 1.0));
        let m = momentum_map(&a);
        // [[−ϑζ⁺, ϑϑ⁺], [−ζζ⁺, ζϑ⁺]] with ϑ = e1, ζ = e2
        let mut e = Mat4C::ZERO;
        e.0[0][1] = c(-1.0, 0.0);
        e.0[0][2] = c(1.0, 0.0);
        e.0[3][1] = c(-1.0, 0.0);
        e.0[3][2] = c(1.0, 0.0);
        assert_eq!(m, e);

        let null = TwistorVec::diagonal(Spinor::real(1.0, 0.0), Spinor::real(1.0, 0.0));
        assert!(momentum_map(&null).trace().norm() < 1e-15);
    }

    #[test]
    fn momentum_map_is_i_v_vplus_phi() {
        let mut r = rng(13);
        for rep in [Rep::Diagonal, Rep::AntiDiagonal] {
            for _ in 0..50 {
                let v = random_twistor(&mut r, rep);
                let comps = v.components();
                let mut vv = Mat4C::ZERO;
                for a in 0..4 {
                    for b in 0..4 {
                        vv.0[a][b] = I * comps[a] * comps[b].conj();
                    }
                }
                let generic = vv * rep.metric();
                assert!(momentum_map(&v).max_abs_diff(&generic) < 1e-13);
            }
        }
    }

    #[test]
    fn momentum_maps_intertwined_by_representation_change() {
        let mut r = rng(14);
        let cm = representation_change();
        for _ in 0..50 {
            let v = random_twistor(&mut r, Rep::AntiDiagonal);
            let lhs = momentum_map(&v.to_rep(Rep::Diagonal));
            let rhs = cm * momentum_map(&v) * cm.adjoint();
            assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        }
    }

    #[test]
    fn iju_examples() {
        let e = iju_components(&Spinor::real(1.0, 0.0), &Spinor::real(0.0, 1.0));
        assert_eq!(e.i, [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(e.j, [0.5, 0.0, 0.0, -0.5]);
        let f = iju_components(&Spinor::real(1.0, 1.0), &Spinor::ZERO);
        assert_eq!(f.i, [1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn iju_matches_sigma_sandwich_and_rank_one() {
        let mut r = rng(15);
        for _ in 0..100 {
            let (eta, xi) = (random_spinor(&mut r), random_spinor(&mut r));
            let ij = iju_components(&eta, &xi);
            for mu in 0..4 {
                assert!((ij.i[mu] - 0.5 * eta.sandwich(mu, &eta).re).abs() < 1e-13);
                assert!((ij.j[mu] - 0.5 * xi.sandwich(mu, &xi).re).abs() < 1e-13);
            }
            let (di, dj) = ij.rank_defects();
            assert!(di.abs() < 1e-13 * (1.0 + ij.i[0] * ij.i[0]));
            assert!(dj.abs() < 1e-13 * (1.0 + ij.j[0] * ij.j[0]));
        }
    }
}
