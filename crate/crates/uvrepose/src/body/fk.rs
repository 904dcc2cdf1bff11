//! Rigid per-segment forward kinematics over the fixed joint tree:
//! pelvis -> torso -> neck -> head; torso -> shoulders -> elbows;
//! pelvis -> hips -> knees.

use super::config::{BodyPart, Joint, PoseParams};
use super::mesh::{Mesh, Skeleton};
use crate::geom::{vec3, Mat3, Rigid, Vec3};

/// Hinge axis of each joint in its parent frame (world frame at rest).
/// Shoulders, hips, knees and the neck swing in the sagittal plane; elbows
/// hinge about Z so a forward-raised arm folds across the chest.
pub fn hinge_axis(j: Joint) -> Vec3 {
    match j {
        Joint::Neck
        | Joint::ShoulderL
        | Joint::ShoulderR
        | Joint::HipL
        | Joint::HipR
        | Joint::KneeL
        | Joint::KneeR => vec3(1.0, 0.0, 0.0),
        Joint::ElbowL | Joint::ElbowR => vec3(0.0, 0.0, 1.0),
    }
}

/// World transforms of every rigid segment under a pose.
#[derive(Debug, Clone)]
pub struct SegmentTransforms {
    pub root: Rigid,
    pub neck: Rigid,
    pub shoulder_l: Rigid,
    pub shoulder_r: Rigid,
    pub elbow_l: Rigid,
    pub elbow_r: Rigid,
    pub hip_l: Rigid,
    pub hip_r: Rigid,
    pub knee_l: Rigid,
    pub knee_r: Rigid,
}

impl SegmentTransforms {
    pub fn for_part(&self, part: BodyPart) -> &Rigid {
        match part {
            BodyPart::Torso => &self.root,
            BodyPart::Neck | BodyPart::Head => &self.neck,
            BodyPart::UpperArmL => &self.shoulder_l,
            BodyPart::ForearmL => &self.elbow_l,
            BodyPart::UpperArmR => &self.shoulder_r,
            BodyPart::ForearmR => &self.elbow_r,
            BodyPart::ThighL => &self.hip_l,
            BodyPart::ShinL => &self.knee_l,
            BodyPart::ThighR => &self.hip_r,
            BodyPart::ShinR => &self.knee_r,
        }
    }
}

fn joint_rigid(skeleton: &Skeleton, pose: &PoseParams, j: Joint) -> Rigid {
    let limit = skeleton.joint_limit;
    let angle = pose.angles.get(j).clamp(-limit, limit);
    Rigid::about_pivot(Mat3::rotation(hinge_axis(j), angle), skeleton.pivot(j))
}

/// Compose the joint chain into per-segment world transforms.
pub fn segment_transforms(skeleton: &Skeleton, pose: &PoseParams) -> SegmentTransforms {
    let [rx, ry, rz] = pose.rotation;
    let [tx, ty, tz] = pose.translation;
    let global = Rigid {
        rotation: Mat3::IDENTITY,
        translation: vec3(tx, ty, tz),
    }
    .compose(&Rigid::about_pivot(Mat3::euler_xyz(rx, ry, rz), skeleton.pelvis));

    let neck = global.compose(&joint_rigid(skeleton, pose, Joint::Neck));
    let shoulder_l = global.compose(&joint_rigid(skeleton, pose, Joint::ShoulderL));
    let shoulder_r = global.compose(&joint_rigid(skeleton, pose, Joint::ShoulderR));
    let elbow_l = shoulder_l.compose(&joint_rigid(skeleton, pose, Joint::ElbowL));
    let elbow_r = shoulder_r.compose(&joint_rigid(skeleton, pose, Joint::ElbowR));
    let hip_l = global.compose(&joint_rigid(skeleton, pose, Joint::HipL));
    let hip_r = global.compose(&joint_rigid(skeleton, pose, Joint::HipR));
    let knee_l = hip_l.compose(&joint_rigid(skeleton, pose, Joint::KneeL));
    let knee_r = hip_r.compose(&joint_rigid(skeleton, pose, Joint::KneeR));

    SegmentTransforms {
        root: global,
        neck,
        shoulder_l,
        shoulder_r,
        elbow_l,
        elbow_r,
        hip_l,
        hip_r,
        knee_l,
        knee_r,
    }
}

/// Apply a pose to a rest mesh. Topology, UVs, and the stored rest skeleton
/// are untouched; only vertex positions move.
pub fn pose_body(mesh: &Mesh, pose: &PoseParams) -> Mesh {
    let transforms = segment_transforms(&mesh.skeleton, pose);
    let parts = mesh.vertex_parts();
    let vertices = mesh
        .vertices
        .iter()
        .zip(&parts)
        .map(|(v, part)| transforms.for_part(*part).apply(*v))
        .collect();
    Mesh {
        vertices,
        faces: mesh.faces.clone(),
        uv: mesh.uv.clone(),
        face_part: mesh.face_part.clone(),
        skeleton: mesh.skeleton.clone(),
    }
}

/// Joint pivots (plus pelvis and head center) after forward kinematics,
/// in the order used by keypoint sets.
pub fn posed_pivots(skeleton: &Skeleton, pose: &PoseParams) -> Vec<(&'static str, Vec3)> {
    let t = segment_transforms(skeleton, pose);
    vec![
        ("pelvis", t.root.apply(skeleton.pelvis)),
        ("neck", t.root.apply(skeleton.chest)),
        ("head", t.neck.apply(skeleton.head_center)),
        ("shoulder_l", t.root.apply(skeleton.shoulder_l)),
        ("shoulder_r", t.root.apply(skeleton.shoulder_r)),
        ("elbow_l", t.shoulder_l.apply(skeleton.elbow_l)),
        ("elbow_r", t.shoulder_r.apply(skeleton.elbow_r)),
        ("hip_l", t.root.apply(skeleton.hip_l)),
        ("hip_r", t.root.apply(skeleton.hip_r)),
        ("knee_l", t.hip_l.apply(skeleton.knee_l)),
        ("knee_r", t.hip_r.apply(skeleton.knee_r)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::config::BodyConfig;
    use crate::body::mesh::build_body;

    fn default_mesh() -> Mesh {
        build_body(&BodyConfig::default()).unwrap()
    }

    #[test]
    fn identity_pose_is_exact() {
        let mesh = default_mesh();
        let posed = pose_body(&mesh, &PoseParams::default());
        assert_eq!(mesh.vertices, posed.vertices);
        assert_eq!(mesh.uv, posed.uv);
        assert_eq!(mesh.faces, posed.faces);
    }

    #[test]
    fn translation_offsets_every_vertex_exactly() {
        let mesh = default_mesh();
        let pose = PoseParams {
            translation: [1.0, 2.0, 3.0],
            ..PoseParams::default()
        };
        let posed = pose_body(&mesh, &pose);
        for (a, b) in mesh.vertices.iter().zip(&posed.vertices) {
            assert_eq!(*b, *a + vec3(1.0, 2.0, 3.0));
        }
    }

    #[test]
    fn elbow_hinge_matches_closed_form() {
        let cfg = BodyConfig::default();
        let mesh = build_body(&cfg).unwrap();
        let mut pose = PoseParams::default();
        pose.angles.elbow_r = std::f64::consts::FRAC_PI_2;

        // Rest forearm tip: one lower-arm length plus the cap radius below the
        // elbow. Closed form: rotate the rest tip about the elbow pivot by
        // +90 degrees about Z.
        let elbow = mesh.skeleton.elbow_r;
        let rest_tip = elbow + vec3(0.0, -(cfg.lower_arm_len + cfg.arm_radius), 0.0);
        let rel = rest_tip - elbow;
        let expect = elbow + vec3(-rel.y, rel.x, rel.z); // Rz(90deg)

        let posed = pose_body(&mesh, &pose);
        // lowest forearm-R vertex is the tip pole
        let parts = mesh.vertex_parts();
        let tip_idx = (0..mesh.vertices.len())
            .filter(|&i| parts[i] == BodyPart::ForearmR)
            .min_by(|&a, &b| mesh.vertices[a].y.partial_cmp(&mesh.vertices[b].y).unwrap())
            .unwrap();
        assert!((posed.vertices[tip_idx] - expect).norm() < 1e-9);
    }

    #[test]
    fn posing_preserves_segment_rigidity() {
        use rand::Rng;
        let mesh = default_mesh();
        let mut rng = crate::rng::SeedSplitter::new(7).stream("rigidity");
        let mut pose = PoseParams::default();
        for j in super::super::config::ALL_JOINTS {
            pose.angles.set(j, rng.random_range(-1.2..1.2));
        }
        pose.rotation = [rng.random_range(-0.5..0.5), rng.random_range(-3.0..3.0), 0.3];
        pose.translation = [0.2, -0.1, 0.4];
        let posed = pose_body(&mesh, &pose);
        let parts = mesh.vertex_parts();
        // pairwise distances within a part are preserved
        let idx: Vec<usize> = (0..mesh.vertices.len()).step_by(17).collect();
        for &i in &idx {
            for &j in &idx {
                if i < j && parts[i] == parts[j] {
                    let before = (mesh.vertices[i] - mesh.vertices[j]).norm();
                    let after = (posed.vertices[i] - posed.vertices[j]).norm();
                    if before > 1e-9 {
                        assert!(((after - before) / before).abs() < 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn uv_is_pose_invariant_bit_exact() {
        let mesh = default_mesh();
        let mut pose = PoseParams::default();
        pose.angles.shoulder_l = -1.0;
        pose.rotation = [0.1, 0.7, -0.2];
        let posed = pose_body(&mesh, &pose);
        assert_eq!(mesh.uv, posed.uv);
    }

    #[test]
    fn angles_are_clamped_to_limits() {
        let mesh = default_mesh();
        let mut a = PoseParams::default();
        a.angles.knee_l = 100.0;
        let mut b = PoseParams::default();
        b.angles.knee_l = mesh.skeleton.joint_limit;
        assert_eq!(pose_body(&mesh, &a).vertices, pose_body(&mesh, &b).vertices);
    }
}
