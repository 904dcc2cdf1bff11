use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Body-part labels. Each part is one rigid piece of geometry with its own
/// UV chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyPart {
    Torso,
    Neck,
    Head,
    UpperArmL,
    ForearmL,
    UpperArmR,
    ForearmR,
    ThighL,
    ShinL,
    ThighR,
    ShinR,
}

pub const ALL_PARTS: [BodyPart; 11] = [
    BodyPart::Torso,
    BodyPart::Neck,
    BodyPart::Head,
    BodyPart::UpperArmL,
    BodyPart::ForearmL,
    BodyPart::UpperArmR,
    BodyPart::ForearmR,
    BodyPart::ThighL,
    BodyPart::ShinL,
    BodyPart::ThighR,
    BodyPart::ShinR,
];

impl BodyPart {
    pub fn name(&self) -> &'static str {
        match self {
            BodyPart::Torso => "torso",
            BodyPart::Neck => "neck",
            BodyPart::Head => "head",
            BodyPart::UpperArmL => "upper_arm_l",
            BodyPart::ForearmL => "forearm_l",
            BodyPart::UpperArmR => "upper_arm_r",
            BodyPart::ForearmR => "forearm_r",
            BodyPart::ThighL => "thigh_l",
            BodyPart::ShinL => "shin_l",
            BodyPart::ThighR => "thigh_r",
            BodyPart::ShinR => "shin_r",
        }
    }

    pub fn from_name(name: &str) -> Option<BodyPart> {
        ALL_PARTS.iter().copied().find(|p| p.name() == name)
    }

    /// Fixed render color used by the pose-condition image.
    pub fn color(&self) -> [f64; 3] {
        match self {
            BodyPart::Torso => [0.85, 0.20, 0.20],
            BodyPart::Neck => [0.90, 0.60, 0.40],
            BodyPart::Head => [0.95, 0.80, 0.60],
            BodyPart::UpperArmL => [0.20, 0.60, 0.90],
            BodyPart::ForearmL => [0.30, 0.80, 0.90],
            BodyPart::UpperArmR => [0.20, 0.90, 0.50],
            BodyPart::ForearmR => [0.40, 0.95, 0.60],
            BodyPart::ThighL => [0.60, 0.30, 0.90],
            BodyPart::ShinL => [0.70, 0.50, 0.95],
            BodyPart::ThighR => [0.90, 0.70, 0.20],
            BodyPart::ShinR => [0.95, 0.85, 0.40],
        }
    }
}

/// Posable joints. Every joint is a one-axis hinge; the hinge axes are fixed
/// by the joint tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Joint {
    Neck,
    ShoulderL,
    ShoulderR,
    ElbowL,
    ElbowR,
    HipL,
    HipR,
    KneeL,
    KneeR,
}

pub const ALL_JOINTS: [Joint; 9] = [
    Joint::Neck,
    Joint::ShoulderL,
    Joint::ShoulderR,
    Joint::ElbowL,
    Joint::ElbowR,
    Joint::HipL,
    Joint::HipR,
    Joint::KneeL,
    Joint::KneeR,
];

/// Axis-aligned UV rectangle, corners in [0,1]^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UvRect {
    pub u0: f64,
    pub v0: f64,
    pub u1: f64,
    pub v1: f64,
}

impl UvRect {
    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u0 && u < self.u1 && v >= self.v0 && v < self.v1
    }

    pub fn inside_unit_square(&self) -> bool {
        self.u0 >= 0.0 && self.v0 >= 0.0 && self.u1 <= 1.0 && self.v1 <= 1.0 && self.u0 < self.u1 && self.v0 < self.v1
    }
}

/// Proportions and tessellation of the procedural body. Lengths and radii are
/// in scene units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BodyConfig {
    pub pelvis_height: f64,
    pub torso_len: f64,
    pub torso_radius: f64,
    pub neck_len: f64,
    pub neck_radius: f64,
    pub head_radius: f64,
    pub upper_arm_len: f64,
    pub lower_arm_len: f64,
    pub arm_radius: f64,
    pub thigh_len: f64,
    pub shin_len: f64,
    pub leg_radius: f64,
    pub shoulder_offset: f64,
    pub hip_offset: f64,
    /// Segments per quarter turn of a cylinder; ring segments are 4x this.
    pub tessellation: u32,
    /// Symmetric joint-angle limit in radians; poses are clamped to it.
    pub joint_limit: f64,
    /// The head chart's sub-rectangle reserved for the face, in absolute UV.
    pub face_uv_rect: UvRect,
}

impl Default for BodyConfig {
    fn default() -> Self {
        BodyConfig {
            pelvis_height: 0.95,
            torso_len: 0.45,
            torso_radius: 0.16,
            neck_len: 0.10,
            neck_radius: 0.05,
            head_radius: 0.12,
            upper_arm_len: 0.30,
            lower_arm_len: 0.28,
            arm_radius: 0.045,
            thigh_len: 0.40,
            shin_len: 0.40,
            leg_radius: 0.06,
            shoulder_offset: 0.24,
            hip_offset: 0.09,
            tessellation: 2,
            joint_limit: 2.8,
            face_uv_rect: default_face_uv_rect(),
        }
    }
}

/// Front-facing band of the head chart (chart layout fixed in `mesh.rs`).
/// The head chart spans cell (col 1, row 0) of the 4x3 atlas; the face is the
/// quarter of the circumference centered on the +Z direction, at mid
/// latitudes.
pub fn default_face_uv_rect() -> UvRect {
    let (cu0, cv0) = (0.25, 0.0);
    let (cw, ch) = (0.25, 1.0 / 3.0);
    let g = super::mesh::ATLAS_GUTTER;
    let chart_u0 = cu0 + g;
    let chart_w = cw - 2.0 * g;
    let chart_v0 = cv0 + g;
    let chart_h = ch - 2.0 * g;
    // +Z sits at angle fraction 1/4 of the seam-duplicated circumference.
    UvRect {
        u0: chart_u0 + chart_w * 0.125,
        v0: chart_v0 + chart_h * 0.30,
        u1: chart_u0 + chart_w * 0.375,
        v1: chart_v0 + chart_h * 0.80,
    }
}

impl BodyConfig {
    pub fn validate(&self) -> Result<()> {
        let dims = [
            ("pelvis_height", self.pelvis_height),
            ("torso_len", self.torso_len),
            ("torso_radius", self.torso_radius),
            ("neck_len", self.neck_len),
            ("neck_radius", self.neck_radius),
            ("head_radius", self.head_radius),
            ("upper_arm_len", self.upper_arm_len),
            ("lower_arm_len", self.lower_arm_len),
            ("arm_radius", self.arm_radius),
            ("thigh_len", self.thigh_len),
            ("shin_len", self.shin_len),
            ("leg_radius", self.leg_radius),
            ("shoulder_offset", self.shoulder_offset),
            ("hip_offset", self.hip_offset),
            ("joint_limit", self.joint_limit),
        ];
        for (name, v) in dims {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be strictly positive, got {v}")));
            }
        }
        if self.tessellation == 0 {
            return Err(Error::Config("tessellation must be >= 1".into()));
        }
        if !self.face_uv_rect.inside_unit_square() {
            return Err(Error::Config("face_uv_rect must lie inside [0,1]^2".into()));
        }
        Ok(())
    }
}

/// Joint angles in radians. Missing entries in JSON default to zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JointAngles {
    pub neck: f64,
    pub shoulder_l: f64,
    pub shoulder_r: f64,
    pub elbow_l: f64,
    pub elbow_r: f64,
    pub hip_l: f64,
    pub hip_r: f64,
    pub knee_l: f64,
    pub knee_r: f64,
}

impl JointAngles {
    pub fn get(&self, j: Joint) -> f64 {
        match j {
            Joint::Neck => self.neck,
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

    pub fn set(&mut self, j: Joint, v: f64) {
        match j {
            Joint::Neck => self.neck = v,
            Joint::ShoulderL => self.shoulder_l = v,
            Joint::ShoulderR => self.shoulder_r = v,
            Joint::ElbowL => self.elbow_l = v,
            Joint::ElbowR => self.elbow_r = v,
            Joint::HipL => self.hip_l = v,
            Joint::HipR => self.hip_r = v,
            Joint::KneeL => self.knee_l = v,
            Joint::KneeR => self.knee_r = v,
        }
    }
}

/// Pose of one body instance: hinge angles plus a global rigid transform
/// (Euler XYZ rotation about the pelvis, then translation).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PoseParams {
    pub angles: JointAngles,
    pub rotation: [f64; 3],
    pub translation: [f64; 3],
}

impl PoseParams {
    pub fn is_finite(&self) -> bool {
        ALL_JOINTS.iter().all(|&j| self.angles.get(j).is_finite())
            && self.rotation.iter().all(|v| v.is_finite())
            && self.translation.iter().all(|v| v.is_finite())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<PoseParams> {
        let p: PoseParams = serde_json::from_str(s)?;
        if !p.is_finite() {
            return Err(Error::Input("pose contains non-finite values".into()));
        }
        Ok(p)
    }
}
