//! Pinhole camera and vertex projection.

use super::mesh::Mesh;
use crate::error::{Error, Result};
use crate::geom::{vec3, Mat3, Rigid, Vec3};
use serde::{Deserialize, Serialize};

/// Pinhole camera: square pixels, no distortion. The stored transform maps
/// camera coordinates (x right, y down, z forward) to world coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Camera {
    pub focal: f64,
    pub principal: [f64; 2],
    pub resolution: [usize; 2],
    pub c2w_rotation: [[f64; 3]; 3],
    pub c2w_translation: [f64; 3],
    #[serde(default = "default_near")]
    pub near: f64,
}

fn default_near() -> f64 {
    1e-3
}

/// Projected vertices: pixel coordinates plus camera-space depth, one entry
/// per mesh vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageCoords {
    pub pixels: Vec<[f64; 2]>,
    pub depths: Vec<f64>,
}

impl Camera {
    pub fn validate(&self) -> Result<()> {
        if !(self.focal > 0.0) {
            return Err(Error::Config(format!("focal length must be > 0, got {}", self.focal)));
        }
        if self.resolution[0] < 16 || self.resolution[1] < 16 {
            return Err(Error::Config(format!(
                "resolution must be at least 16x16, got {}x{}",
                self.resolution[0], self.resolution[1]
            )));
        }
        Ok(())
    }

    /// Camera at `eye` looking toward `target`, world +Y as up reference.
    pub fn look_at(eye: Vec3, target: Vec3, focal: f64, resolution: [usize; 2]) -> Camera {
        let forward = (target - eye).normalized();
        let up = vec3(0.0, 1.0, 0.0);
        let right = forward.cross(up).norm() > 1e-9;
        let right = if right {
            forward.cross(up).normalized() * -1.0 // see below
        } else {
            vec3(1.0, 0.0, 0.0)
        };
        // CV convention: x right, y down, z forward. cross(f, up) points
        // to the left of the view for +Y up, so flip it.
        let down = forward.cross(right).normalized();
        let rot = Mat3 {
            rows: [
                [right.x, down.x, forward.x],
                [right.y, down.y, forward.y],
                [right.z, down.z, forward.z],
            ],
        };
        Camera {
            focal,
            principal: [resolution[0] as f64 / 2.0, resolution[1] as f64 / 2.0],
            resolution,
            c2w_rotation: rot.rows,
            c2w_translation: [eye.x, eye.y, eye.z],
            near: default_near(),
        }
    }

    /// Default view used throughout the pipeline: full default body in frame.
    pub fn default_for_body() -> Camera {
        Camera::look_at(vec3(0.0, 0.95, 2.8), vec3(0.0, 0.95, 0.0), 256.0, [256, 256])
    }

    pub fn eye(&self) -> Vec3 {
        let t = self.c2w_translation;
        vec3(t[0], t[1], t[2])
    }

    fn world_to_cam(&self) -> Rigid {
        let rot = Mat3 { rows: self.c2w_rotation }.transpose();
        Rigid {
            rotation: rot,
            translation: rot.mul_vec(-self.eye()),
        }
    }

    /// Camera-space position of a world point.
    pub fn to_camera(&self, p: Vec3) -> Vec3 {
        self.world_to_cam().apply(p)
    }

    /// Pixel coordinates and depth of a world point. Errors if the point is
    /// at or behind the near plane.
    pub fn project_point(&self, p: Vec3) -> Result<([f64; 2], f64)> {
        let c = self.to_camera(p);
        if c.z <= self.near {
            return Err(Error::Projection {
                vertex: 0,
                depth: c.z,
                near: self.near,
            });
        }
        let x = self.principal[0] + self.focal * c.x / c.z;
        let y = self.principal[1] + self.focal * c.y / c.z;
        Ok(([x, y], c.z))
    }

    pub fn in_frame(&self, px: [f64; 2]) -> bool {
        px[0] >= 0.0 && px[0] < self.resolution[0] as f64 && px[1] >= 0.0 && px[1] < self.resolution[1] as f64
    }
}

/// Project every vertex of a mesh. Fails (naming the vertex) if any vertex
/// sits at or behind the near plane.
pub fn project(mesh: &Mesh, camera: &Camera) -> Result<ImageCoords> {
    camera.validate()?;
    let w2c = camera.world_to_cam();
    let mut pixels = Vec::with_capacity(mesh.vertices.len());
    let mut depths = Vec::with_capacity(mesh.vertices.len());
    for (i, v) in mesh.vertices.iter().enumerate() {
        let c = w2c.apply(*v);
        if c.z <= camera.near {
            return Err(Error::Projection {
                vertex: i,
                depth: c.z,
                near: camera.near,
            });
        }
        pixels.push([
            camera.principal[0] + camera.focal * c.x / c.z,
            camera.principal[1] + camera.focal * c.y / c.z,
        ]);
        depths.push(c.z);
    }
    Ok(ImageCoords { pixels, depths })
}
