//! Minimal 3D vector/matrix helpers used by the body model and rasterizers.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn vec3(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3 { x, y, z }
}

impl Vec3 {
    pub const ZERO: Vec3 = vec3(0.0, 0.0, 0.0);

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        vec3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        if n == 0.0 {
            Vec3::ZERO
        } else {
            self * (1.0 / n)
        }
    }

    pub fn scale(self, s: f64) -> Vec3 {
        vec3(self.x * s, self.y * s, self.z * s)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        vec3(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        vec3(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        self.scale(s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        vec3(-self.x, -self.y, -self.z)
    }
}

/// Row-major 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Rotation by `angle` radians about a unit `axis` (Rodrigues).
    pub fn rotation(axis: Vec3, angle: f64) -> Mat3 {
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let (x, y, z) = (axis.x, axis.y, axis.z);
        Mat3 {
            rows: [
                [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
            ],
        }
    }

    /// Euler XYZ: R = Rz(z) * Ry(y) * Rx(x), applied to column vectors.
    pub fn euler_xyz(x: f64, y: f64, z: f64) -> Mat3 {
        let rx = Mat3::rotation(vec3(1.0, 0.0, 0.0), x);
        let ry = Mat3::rotation(vec3(0.0, 1.0, 0.0), y);
        let rz = Mat3::rotation(vec3(0.0, 0.0, 1.0), z);
        rz.mul_mat(&ry).mul_mat(&rx)
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let r = &self.rows;
        vec3(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
        )
    }

    pub fn mul_mat(&self, o: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.rows[i][k] * o.rows[k][j]).sum();
            }
        }
        Mat3 { rows: out }
    }

    pub fn transpose(&self) -> Mat3 {
        let r = &self.rows;
        Mat3 {
            rows: [
                [r[0][0], r[1][0], r[2][0]],
                [r[0][1], r[1][1], r[2][1]],
                [r[0][2], r[1][2], r[2][2]],
            ],
        }
    }
}

/// Rigid transform `x -> rotation * x + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rigid {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl Rigid {
    pub const IDENTITY: Rigid = Rigid {
        rotation: Mat3::IDENTITY,
        translation: Vec3::ZERO,
    };

    /// Rotation about an arbitrary pivot point.
    pub fn about_pivot(rotation: Mat3, pivot: Vec3) -> Rigid {
        // x -> pivot + R (x - pivot)
        Rigid {
            rotation,
            translation: pivot - rotation.mul_vec(pivot),
        }
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.rotation.mul_vec(v) + self.translation
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Rigid) -> Rigid {
        Rigid {
            rotation: self.rotation.mul_mat(&other.rotation),
            translation: self.rotation.mul_vec(other.translation) + self.translation,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_preserves_length() {
        let r = Mat3::rotation(vec3(0.0, 1.0, 0.0), 1.1);
        let v = vec3(0.3, -0.7, 2.0);
        assert!((r.mul_vec(v).norm() - v.norm()).abs() < 1e-12);
    }

    #[test]
    fn rotation_about_x_quarter_turn() {
        let r = Mat3::rotation(vec3(1.0, 0.0, 0.0), std::f64::consts::FRAC_PI_2);
        let v = r.mul_vec(vec3(0.0, 1.0, 0.0));
        assert!((v - vec3(0.0, 0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn pivot_rotation_fixes_pivot() {
        let pivot = vec3(1.0, 2.0, 3.0);
        let t = Rigid::about_pivot(Mat3::rotation(vec3(0.0, 0.0, 1.0), 0.8), pivot);
        assert!((t.apply(pivot) - pivot).norm() < 1e-12);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = Rigid::about_pivot(Mat3::rotation(vec3(1.0, 0.0, 0.0), 0.4), vec3(0.1, 0.2, 0.3));
        let b = Rigid::about_pivot(Mat3::rotation(vec3(0.0, 1.0, 0.0), -0.9), vec3(1.0, 0.0, 0.0));
        let v = vec3(0.5, -0.5, 0.25);
        let lhs = a.compose(&b).apply(v);
        let rhs = a.apply(b.apply(v));
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
