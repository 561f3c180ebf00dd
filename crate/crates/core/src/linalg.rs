//! Small fixed-size linear algebra: planar vectors, 2x2 cost matrices,
//! control-dimension square matrices with Cholesky factorization, and the
//! 2xm input map of the agent dynamics.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::scalar::Real;

/// Planar state vector. Components are named after the two position
/// coordinates of the agent state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2<R> {
    pub x1: R,
    pub x2: R,
}

impl<R: Real> Vec2<R> {
    pub fn new(x1: R, x2: R) -> Self {
        Self { x1, x2 }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero())
    }

    pub fn dot(self, other: Self) -> R {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    pub fn norm_sq(self) -> R {
        self.dot(self)
    }

    pub fn norm(self) -> R {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, c: R) -> Self {
        Self::new(self.x1 * c, self.x2 * c)
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Largest component magnitude, used by the integration blowup guard.
    pub fn max_abs(self) -> R {
        self.x1.abs().max(self.x2.abs())
    }
}

impl<R: Real> Add for Vec2<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl<R: Real> Sub for Vec2<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl<R: Real> Neg for Vec2<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2)
    }
}

impl<R: Real> Mul<R> for Vec2<R> {
    type Output = Self;
    fn mul(self, c: R) -> Self {
        self.scale(c)
    }
}

/// Dense 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2<R> {
    pub m11: R,
    pub m12: R,
    pub m21: R,
    pub m22: R,
}

impl<R: Real> Mat2<R> {
    pub fn from_row_major(v: [R; 4]) -> Self {
        Self {
            m11: v[0],
            m12: v[1],
            m21: v[2],
            m22: v[3],
        }
    }

    pub fn scaled_identity(c: R) -> Self {
        Self::from_row_major([c, R::zero(), R::zero(), c])
    }

    pub fn mul_vec(&self, v: Vec2<R>) -> Vec2<R> {
        Vec2::new(
            self.m11 * v.x1 + self.m12 * v.x2,
            self.m21 * v.x1 + self.m22 * v.x2,
        )
    }

    /// Quadratic form v' M v.
    pub fn quad_form(&self, v: Vec2<R>) -> R {
        v.dot(self.mul_vec(v))
    }

    pub fn det(&self) -> R {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn is_symmetric(&self, tol: R) -> bool {
        (self.m12 - self.m21).abs() <= tol * (R::one() + self.m12.abs().max(self.m21.abs()))
    }

    /// Positive semi-definiteness for a symmetric 2x2 matrix: nonnegative
    /// diagonal and determinant (up to a relative slack for rounding).
    pub fn is_psd(&self, tol: R) -> bool {
        let scale = R::one() + self.m11.abs().max(self.m22.abs());
        self.is_symmetric(tol)
            && self.m11 >= -tol * scale
            && self.m22 >= -tol * scale
            && self.det() >= -tol * scale * scale
    }

    /// Lower Cholesky factor of a PSD matrix; `None` if indefinite.
    /// Accepts singular matrices (zero pivots), which sampling from a
    /// degenerate covariance needs.
    pub fn cholesky_psd(&self) -> Option<Mat2<R>> {
        if !self.is_psd(R::of(1e-12)) {
            return None;
        }
        let l11 = self.m11.max(R::zero()).sqrt();
        let l21 = if l11 > R::zero() {
            self.m21 / l11
        } else {
            R::zero()
        };
        let d = self.m22 - l21 * l21;
        let l22 = d.max(R::zero()).sqrt();
        Some(Mat2 {
            m11: l11,
            m12: R::zero(),
            m21: l21,
            m22: l22,
        })
    }
}

/// Dense n x n matrix (row major) for control-cost weights. n equals the
/// control dimension, so it stays tiny; no blocked algorithms here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareMat<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Real> SquareMat<R> {
    pub fn from_row_major(n: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != n * n {
            return Err(SimError::DimensionMismatch(format!(
                "square matrix of order {n} needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        self.data[i * self.n + j]
    }

    pub fn is_symmetric(&self, tol: R) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if (a - b).abs() > tol * (R::one() + a.abs().max(b.abs())) {
                    return false;
                }
            }
        }
        true
    }

    /// Quadratic form u' M u.
    pub fn quad_form(&self, u: &[R]) -> Result<R> {
        if u.len() != self.n {
            return Err(SimError::DimensionMismatch(format!(
                "quadratic form: matrix order {} vs vector length {}",
                self.n,
                u.len()
            )));
        }
        let mut acc = R::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = acc + u[i] * self.get(i, j) * u[j];
            }
        }
        Ok(acc)
    }

    /// Cholesky factorization; fails on any non-positive pivot, which is the
    /// positive-definiteness check used at config load.
    pub fn cholesky(&self) -> Result<Cholesky<R>> {
        let n = self.n;
        let mut l = vec![R::zero(); n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d = d - l[j * n + k] * l[j * n + k];
            }
            if !(d > R::zero()) || !d.is_finite() {
                return Err(SimError::SingularR);
            }
            let ljj = d.sqrt();
            l[j * n + j] = ljj;
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s = s - l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / ljj;
            }
        }
        Ok(Cholesky { n, l })
    }
}

/// Lower-triangular Cholesky factor of a positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky<R> {
    n: usize,
    l: Vec<R>,
}

impl<R: Real> Cholesky<R> {
    /// Solve M x = b through the factor.
    pub fn solve(&self, b: &[R]) -> Result<Vec<R>> {
        if b.len() != self.n {
            return Err(SimError::DimensionMismatch(format!(
                "cholesky solve: order {} vs rhs length {}",
                self.n,
                b.len()
            )));
        }
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = self.l[i * n + k] * y[k];
                y[i] = y[i] - t;
            }
            y[i] = y[i] / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let t = self.l[k * n + i] * y[k];
                y[i] = y[i] - t;
            }
            y[i] = y[i] / self.l[i * n + i];
        }
        Ok(y)
    }
}

/// Input map g(x) of the agent dynamics: a 2 x m matrix mapping the control
/// vector into state space. The built-in models use constant maps; the
/// accessor on `GroupModel` keeps the state argument so state-dependent maps
/// can slot in later.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputMap<R> {
    m: usize,
    /// Row major, 2 rows by m columns.
    data: Vec<R>,
}

impl<R: Real> InputMap<R> {
    pub fn from_row_major(m: usize, data: Vec<R>) -> Result<Self> {
        if m == 0 {
            return Err(SimError::DimensionMismatch(
                "input map needs at least one control column".into(),
            ));
        }
        if data.len() != 2 * m {
            return Err(SimError::DimensionMismatch(format!(
                "input map with {m} controls needs {} entries, got {}",
                2 * m,
                data.len()
            )));
        }
        Ok(Self { m, data })
    }

    pub fn control_dim(&self) -> usize {
        self.m
    }

    /// g u, the control contribution to the drift.
    pub fn mul_control(&self, u: &[R]) -> Result<Vec2<R>> {
        if u.len() != self.m {
            return Err(SimError::DimensionMismatch(format!(
                "control has length {}, input map expects {}",
                u.len(),
                self.m
            )));
        }
        let mut r1 = R::zero();
        let mut r2 = R::zero();
        for (j, &uj) in u.iter().enumerate() {
            r1 = r1 + self.data[j] * uj;
            r2 = r2 + self.data[self.m + j] * uj;
        }
        Ok(Vec2::new(r1, r2))
    }

    /// g' v, the adjoint action used by the optimal-control relation.
    pub fn t_mul_vec(&self, v: Vec2<R>) -> Vec<R> {
        (0..self.m)
            .map(|j| self.data[j] * v.x1 + self.data[self.m + j] * v.x2)
            .collect()
    }
}

/// Axis-aligned rectangle: the mass-density grid domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridBounds<R> {
    pub x1_min: R,
    pub x1_max: R,
    pub x2_min: R,
    pub x2_max: R,
}

impl<R: Real> GridBounds<R> {
    pub fn new(x1_min: R, x1_max: R, x2_min: R, x2_max: R) -> Self {
        Self {
            x1_min,
            x1_max,
            x2_min,
            x2_max,
        }
    }

    pub fn width(&self) -> R {
        self.x1_max - self.x1_min
    }

    pub fn height(&self) -> R {
        self.x2_max - self.x2_min
    }

    pub fn area(&self) -> R {
        self.width() * self.height()
    }

    pub fn contains(&self, p: Vec2<R>) -> bool {
        p.x1 >= self.x1_min && p.x1 <= self.x1_max && p.x2 >= self.x2_min && p.x2 <= self.x2_max
    }

    /// Clamp a point into the rectangle, shrunk by `margin` on every side.
    /// Returns the clamped point and whether clamping moved it.
    pub fn clamp_inside(&self, p: Vec2<R>, margin: R) -> (Vec2<R>, bool) {
        let c = Vec2::new(
            p.x1.max(self.x1_min + margin).min(self.x1_max - margin),
            p.x2.max(self.x2_min + margin).min(self.x2_max - margin),
        );
        (c, c != p)
    }
}

/// Mean of a slice in a canonical summation order, so the result is exactly
/// invariant under permutations of the input. Inputs must be finite.
pub fn canonical_mean<R: Real>(values: &[Vec2<R>]) -> Option<Vec2<R>> {
    if values.is_empty() {
        return None;
    }
    let n = R::of(values.len() as f64);
    Some(Vec2::new(
        canonical_component_sum(values.iter().map(|v| v.x1)) / n,
        canonical_component_sum(values.iter().map(|v| v.x2)) / n,
    ))
}

fn canonical_component_sum<R: Real>(values: impl Iterator<Item = R>) -> R {
    let mut v: Vec<R> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    v.into_iter().fold(R::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vec2_arithmetic() {
        let a = Vec2::new(1.0, 2.0);
        let b = Vec2::new(-3.0, 5.0);
        assert_eq!(a + b, Vec2::new(-2.0, 7.0));
        assert_eq!(a - b, Vec2::new(4.0, -3.0));
        assert_eq!(a.scale(2.0), Vec2::new(2.0, 4.0));
        assert_eq!(a.dot(b), 7.0);
        assert_eq!(Vec2::new(3.0, 4.0).norm(), 5.0);
    }

    #[test]
    fn mat2_psd_checks() {
        let q = Mat2::scaled_identity(2.0);
        assert!(q.is_psd(1e-12));
        assert_eq!(q.quad_form(Vec2::new(1.0, 1.0)), 4.0);

        let indefinite = Mat2::from_row_major([1.0, 0.0, 0.0, -1.0]);
        assert!(!indefinite.is_psd(1e-12));

        let asymmetric = Mat2::from_row_major([1.0, 0.5, 0.2, 1.0]);
        assert!(!asymmetric.is_symmetric(1e-12));
    }

    #[test]
    fn cholesky_pd_and_failure() {
        let r = SquareMat::from_row_major(2, vec![4.0, 1.0, 1.0, 3.0]).unwrap();
        let chol = r.cholesky().unwrap();
        // Solve R x = b and verify by multiplying back.
        let x = chol.solve(&[1.0, 2.0]).unwrap();
        let back0 = 4.0 * x[0] + 1.0 * x[1];
        let back1 = 1.0 * x[0] + 3.0 * x[1];
        assert!((back0 - 1.0).abs() < 1e-12);
        assert!((back1 - 2.0).abs() < 1e-12);

        let bad = SquareMat::from_row_major(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(matches!(bad.cholesky(), Err(SimError::SingularR)));
    }

    #[test]
    fn input_map_shapes() {
        let g = InputMap::from_row_major(1, vec![0.0, 1.0]).unwrap();
        assert_eq!(g.mul_control(&[2.0]).unwrap(), Vec2::new(0.0, 2.0));
        assert_eq!(g.t_mul_vec(Vec2::new(5.0, 4.0)), vec![4.0]);
        assert!(g.mul_control(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn canonical_mean_is_permutation_invariant() {
        let xs = vec![
            Vec2::new(0.1, -2.7),
            Vec2::new(3.3, 0.2),
            Vec2::new(-1.9, 1.4142135),
            Vec2::new(0.7777, -0.333),
        ];
        let mut shuffled = xs.clone();
        shuffled.swap(0, 3);
        shuffled.swap(1, 2);
        let a = canonical_mean(&xs).unwrap();
        let b = canonical_mean(&shuffled).unwrap();
        assert_eq!(a.x1.to_bits(), b.x1.to_bits());
        assert_eq!(a.x2.to_bits(), b.x2.to_bits());
    }

    #[test]
    fn clamp_inside_flags_moves() {
        let b = GridBounds::new(-1.0, 1.0, -1.0, 1.0);
        let (p, moved) = b.clamp_inside(Vec2::new(0.0, 0.0), 0.1);
        assert!(!moved);
        assert_eq!(p, Vec2::new(0.0, 0.0));
        let (p, moved) = b.clamp_inside(Vec2::new(2.0, -3.0), 0.1);
        assert!(moved);
        assert_eq!(p, Vec2::new(0.9, -0.9));
    }
}
