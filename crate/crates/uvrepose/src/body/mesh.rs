//! Rest-mesh construction: capsule segments packed into a guttered UV atlas.

use super::config::{BodyConfig, BodyPart, Joint, ALL_PARTS};
use crate::error::{Error, Result};
use crate::geom::{vec3, Vec3};

/// Gap kept between a chart and its cell border, in UV units (two texels of
/// the default 256 atlas). Keeps charts disjoint so seam filtering stays
/// unambiguous.
pub const ATLAS_GUTTER: f64 = 2.0 / 256.0;

/// Rest-pose joint pivots; carried along with the mesh so keypoints and
/// forward kinematics never have to re-derive the skeleton.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton {
    pub pelvis: Vec3,
    pub chest: Vec3,
    pub head_center: Vec3,
    pub shoulder_l: Vec3,
    pub shoulder_r: Vec3,
    pub elbow_l: Vec3,
    pub elbow_r: Vec3,
    pub hip_l: Vec3,
    pub hip_r: Vec3,
    pub knee_l: Vec3,
    pub knee_r: Vec3,
    pub joint_limit: f64,
}

impl Skeleton {
    pub fn pivot(&self, j: Joint) -> Vec3 {
        match j {
            Joint::Neck => self.chest,
            Joint::ShoulderL => self.shoulder_l,
            Joint::ShoulderR => self.shoulder_r,
            Joint::ElbowL => self.elbow_l,
            Joint::ElbowR => self.elbow_r,
            Joint::HipL => self.hip_l,
            Joint::HipR => self.hip_r,
            Joint::KneeL => self.knee_l,
            Joint::KneeR => self.knee_r,
        }
    }
}

/// Triangulated articulated body. Faces and UVs are fixed topology: posing
/// only moves `vertices`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
    pub uv: Vec<[f64; 2]>,
    pub face_part: Vec<BodyPart>,
    pub skeleton: Skeleton,
}

impl Mesh {
    pub fn validate(&self) -> Result<()> {
        if self.uv.len() != self.vertices.len() {
            return Err(Error::Format(format!(
                "uv count {} != vertex count {}",
                self.uv.len(),
                self.vertices.len()
            )));
        }
        if self.face_part.len() != self.faces.len() {
            return Err(Error::Format("face_part count != face count".into()));
        }
        for (i, f) in self.faces.iter().enumerate() {
            for &vi in f {
                if vi >= self.vertices.len() {
                    return Err(Error::Format(format!(
                        "face {i} references vertex {vi} out of {}",
                        self.vertices.len()
                    )));
                }
            }
        }
        for (i, uv) in self.uv.iter().enumerate() {
            if !(0.0..=1.0).contains(&uv[0]) || !(0.0..=1.0).contains(&uv[1]) {
                return Err(Error::Format(format!("uv {i} = {uv:?} outside [0,1]^2")));
            }
        }
        Ok(())
    }

    /// Part owning each vertex, derived from face labels. Charts never share
    /// vertices, so ownership is unique.
    pub fn vertex_parts(&self) -> Vec<BodyPart> {
        let mut parts = vec![BodyPart::Torso; self.vertices.len()];
        for (f, &part) in self.faces.iter().zip(&self.face_part) {
            for &vi in f {
                parts[vi] = part;
            }
        }
        parts
    }

    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = vec3(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = vec3(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = vec3(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = vec3(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    /// Total UV area covered by triangles, in units of the unit square.
    pub fn uv_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let a = self.uv[f[0]];
                let b = self.uv[f[1]];
                let c = self.uv[f[2]];
                0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).abs()
            })
            .sum()
    }

    /// Absolute UV rectangle of a part's chart in the default atlas.
    pub fn chart_rect(part: BodyPart) -> super::config::UvRect {
        let (col, row) = atlas_cell(part);
        chart_rect_for_cell(col, row)
    }
}

/// Atlas cell (col, row) per part in a 4x3 grid; cell (3,2) stays empty.
fn atlas_cell(part: BodyPart) -> (usize, usize) {
    match part {
        BodyPart::Torso => (0, 0),
        BodyPart::Head => (1, 0),
        BodyPart::Neck => (2, 0),
        BodyPart::UpperArmL => (3, 0),
        BodyPart::ForearmL => (0, 1),
        BodyPart::UpperArmR => (1, 1),
        BodyPart::ForearmR => (2, 1),
        BodyPart::ThighL => (3, 1),
        BodyPart::ShinL => (0, 2),
        BodyPart::ThighR => (1, 2),
        BodyPart::ShinR => (2, 2),
    }
}

fn chart_rect_for_cell(col: usize, row: usize) -> super::config::UvRect {
    let cw = 0.25;
    let ch = 1.0 / 3.0;
    super::config::UvRect {
        u0: col as f64 * cw + ATLAS_GUTTER,
        v0: row as f64 * ch + ATLAS_GUTTER,
        u1: (col + 1) as f64 * cw - ATLAS_GUTTER,
        v1: (row + 1) as f64 * ch - ATLAS_GUTTER,
    }
}

/// Build the rest-pose body. Deterministic for equal configs.
pub fn build_body(config: &BodyConfig) -> Result<Mesh> {
    config.validate()?;
    let c = config;
    let pelvis = vec3(0.0, c.pelvis_height, 0.0);
    let chest = pelvis + vec3(0.0, c.torso_len, 0.0);
    let neck_top = chest + vec3(0.0, c.neck_len, 0.0);
    let head_center = neck_top + vec3(0.0, c.head_radius, 0.0);
    let shoulder_l = chest + vec3(-c.shoulder_offset, 0.0, 0.0);
    let shoulder_r = chest + vec3(c.shoulder_offset, 0.0, 0.0);
    let elbow_l = shoulder_l + vec3(0.0, -c.upper_arm_len, 0.0);
    let elbow_r = shoulder_r + vec3(0.0, -c.upper_arm_len, 0.0);
    let wrist_l = elbow_l + vec3(0.0, -c.lower_arm_len, 0.0);
    let wrist_r = elbow_r + vec3(0.0, -c.lower_arm_len, 0.0);
    let hip_l = pelvis + vec3(-c.hip_offset, 0.0, 0.0);
    let hip_r = pelvis + vec3(c.hip_offset, 0.0, 0.0);
    let knee_l = hip_l + vec3(0.0, -c.thigh_len, 0.0);
    let knee_r = hip_r + vec3(0.0, -c.thigh_len, 0.0);
    let ankle_l = knee_l + vec3(0.0, -c.shin_len, 0.0);
    let ankle_r = knee_r + vec3(0.0, -c.shin_len, 0.0);

    let skeleton = Skeleton {
        pelvis,
        chest,
        head_center,
        shoulder_l,
        shoulder_r,
        elbow_l,
        elbow_r,
        hip_l,
        hip_r,
        knee_l,
        knee_r,
        joint_limit: c.joint_limit,
    };

    let t = c.tessellation as usize;
    let mut mesh = Mesh {
        vertices: Vec::new(),
        faces: Vec::new(),
        uv: Vec::new(),
        face_part: Vec::new(),
        skeleton,
    };

    for part in ALL_PARTS {
        let (col, row) = atlas_cell(part);
        let rect = chart_rect_for_cell(col, row);
        match part {
            BodyPart::Torso => add_capsule(&mut mesh, part, rect, pelvis, chest, c.torso_radius, 4 * t, 2 * t, t),
            BodyPart::Neck => add_capsule(&mut mesh, part, rect, chest, neck_top, c.neck_radius, 4 * t, t, t),
            BodyPart::Head => {
                add_capsule(&mut mesh, part, rect, head_center, head_center, c.head_radius, 8 * t, 0, 2 * t)
            }
            BodyPart::UpperArmL => {
                add_capsule(&mut mesh, part, rect, shoulder_l, elbow_l, c.arm_radius, 4 * t, 2 * t, t)
            }
            BodyPart::ForearmL => add_capsule(&mut mesh, part, rect, elbow_l, wrist_l, c.arm_radius, 4 * t, 2 * t, t),
            BodyPart::UpperArmR => {
                add_capsule(&mut mesh, part, rect, shoulder_r, elbow_r, c.arm_radius, 4 * t, 2 * t, t)
            }
            BodyPart::ForearmR => add_capsule(&mut mesh, part, rect, elbow_r, wrist_r, c.arm_radius, 4 * t, 2 * t, t),
            BodyPart::ThighL => add_capsule(&mut mesh, part, rect, hip_l, knee_l, c.leg_radius, 4 * t, 2 * t, t),
            BodyPart::ShinL => add_capsule(&mut mesh, part, rect, knee_l, ankle_l, c.leg_radius, 4 * t, 2 * t, t),
            BodyPart::ThighR => add_capsule(&mut mesh, part, rect, hip_r, knee_r, c.leg_radius, 4 * t, 2 * t, t),
            BodyPart::ShinR => add_capsule(&mut mesh, part, rect, knee_r, ankle_r, c.leg_radius, 4 * t, 2 * t, t),
        }
    }

    mesh.validate()?;
    Ok(mesh)
}

/// Append a capsule (cylinder with hemispherical caps) running from `a` to
/// `b`, unwrapped into `rect`: u = angle (seam duplicated), v = arc length
/// from bottom pole to top pole. `a == b` produces a sphere.
#[allow(clippy::too_many_arguments)]
fn add_capsule(
    mesh: &mut Mesh,
    part: BodyPart,
    rect: super::config::UvRect,
    a: Vec3,
    b: Vec3,
    radius: f64,
    segs: usize,
    side_rows: usize,
    cap_rows: usize,
) {
    let len = (b - a).norm();
    let axis = if len > 1e-12 { (b - a) * (1.0 / len) } else { vec3(0.0, 1.0, 0.0) };
    // Basis perpendicular to the axis; rest-pose axes are all +/-Y so the
    // near-parallel branch is the one normally taken.
    let e1 = if axis.y.abs() > 0.9 {
        vec3(1.0, 0.0, 0.0)
    } else {
        vec3(0.0, 1.0, 0.0).cross(axis).normalized()
    };
    let e2 = axis.cross(e1).normalized();

    let side_rows = if len > 1e-12 { side_rows.max(1) } else { 0 };
    let quarter = std::f64::consts::FRAC_PI_2 * radius;
    let total_arc = 2.0 * quarter + len;

    // Row ladder: (ring radius, position along axis from `a`, v in [0,1]).
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..=cap_rows {
        let phi = -std::f64::consts::FRAC_PI_2 + std::f64::consts::FRAC_PI_2 * i as f64 / cap_rows as f64;
        let arc = quarter * (i as f64 / cap_rows as f64);
        rows.push((radius * phi.cos(), radius * phi.sin(), arc / total_arc));
    }
    for j in 1..=side_rows {
        let y = len * j as f64 / side_rows as f64;
        rows.push((radius, y, (quarter + y) / total_arc));
    }
    for i in 1..=cap_rows {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 / cap_rows as f64;
        let arc = quarter + len + quarter * (i as f64 / cap_rows as f64);
        rows.push((radius * phi.cos(), len + radius * phi.sin(), arc / total_arc));
    }

    let base = mesh.vertices.len();
    let cols = segs + 1; // seam column duplicated
    for (ring_r, along, vfrac) in &rows {
        for k in 0..cols {
            let theta = std::f64::consts::TAU * k as f64 / segs as f64;
            let p = a + axis * *along + (e1 * theta.cos() + e2 * theta.sin()) * *ring_r;
            let u = rect.u0 + (rect.u1 - rect.u0) * (k as f64 / segs as f64);
            let v = rect.v0 + (rect.v1 - rect.v0) * vfrac;
            mesh.vertices.push(p);
            mesh.uv.push([u, v]);
        }
    }

    for i in 0..rows.len() - 1 {
        for k in 0..segs {
            let r0 = base + i * cols + k;
            let r1 = base + (i + 1) * cols + k;
            // Winding gives outward normals with e2 = axis x e1.
            mesh.faces.push([r0, r0 + 1, r1 + 1]);
            mesh.face_part.push(part);
            mesh.faces.push([r0, r1 + 1, r1]);
            mesh.face_part.push(part);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_body_is_valid_and_deterministic() {
        let cfg = BodyConfig::default();
        let a = build_body(&cfg).unwrap();
        let b = build_body(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.uv.len(), a.vertices.len());
        a.validate().unwrap();
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = BodyConfig {
            torso_radius: -0.1,
            ..BodyConfig::default()
        };
        assert!(matches!(build_body(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn bounding_box_is_tessellation_invariant() {
        let mk = |t| {
            build_body(&BodyConfig {
                tessellation: t,
                ..BodyConfig::default()
            })
            .unwrap()
            .bounding_box()
        };
        let (lo2, hi2) = mk(2);
        let (lo4, hi4) = mk(4);
        assert!((lo2 - lo4).norm() < 1e-6);
        assert!((hi2 - hi4).norm() < 1e-6);
    }

    #[test]
    fn uv_coverage_and_disjoint_charts() {
        let mesh = build_body(&BodyConfig::default()).unwrap();
        assert!(mesh.uv_area() >= 0.30, "uv coverage {}", mesh.uv_area());
        // every face's uv triangle stays inside its part's chart rect
        for (f, part) in mesh.faces.iter().zip(&mesh.face_part) {
            let rect = Mesh::chart_rect(*part);
            for &vi in f {
                let [u, v] = mesh.uv[vi];
                assert!(
                    u >= rect.u0 - 1e-12 && u <= rect.u1 + 1e-12 && v >= rect.v0 - 1e-12 && v <= rect.v1 + 1e-12,
                    "uv ({u},{v}) escapes chart of {part:?}"
                );
            }
        }
    }

    #[test]
    fn capsule_side_normals_point_outward() {
        let mesh = build_body(&BodyConfig::default()).unwrap();
        // sample torso faces: normal must have positive dot with the radial
        // direction from the torso axis
        let mut checked = 0;
        for (f, part) in mesh.faces.iter().zip(&mesh.face_part) {
            if *part != BodyPart::Torso {
                continue;
            }
            let [a, b, c] = [mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]];
            let n = (b - a).cross(c - a);
            if n.norm() < 1e-12 {
                continue; // degenerate pole sliver
            }
            let centroid = (a + b + c) * (1.0 / 3.0);
            let radial = vec3(centroid.x, 0.0, centroid.z);
            if radial.norm() > 1e-6 {
                assert!(n.dot(radial) > 0.0, "inward-facing normal on torso");
                checked += 1;
            }
        }
        assert!(checked > 20);
    }

    #[test]
    fn face_rect_sits_inside_head_chart() {
        let cfg = BodyConfig::default();
        let head = Mesh::chart_rect(BodyPart::Head);
        let f = cfg.face_uv_rect;
        assert!(f.u0 >= head.u0 && f.u1 <= head.u1 && f.v0 >= head.v0 && f.v1 <= head.v1);
    }
}
