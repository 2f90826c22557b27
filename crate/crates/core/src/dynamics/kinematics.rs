//! Tether attachment geometry and the inverse kinematic Jacobian at the
//! nominal pose.
//!
//! Tether `k` sits at azimuth `120 k` deg. Its attachment point lies where the
//! ray from the centroid, tilted `alpha_ap` from the downward vertical towards
//! that azimuth, leaves the hull. The tether reaches the attachment point from
//! an anchor further out on the sea floor, inclined `alpha_t` from the
//! vertical in the same vertical plane. A positive tether rate means the
//! tether lengthens.

use nalgebra::{Matrix3, SMatrix, Vector3, Vector6};

use crate::error::Result;

use super::WecGeometry;

pub const TETHER_COUNT: usize = 3;

/// Maps body velocity (surge, sway, heave, roll, pitch, yaw) to tether rates.
pub type InverseJacobian = SMatrix<f64, 3, 6>;

pub fn tether_azimuths() -> [f64; TETHER_COUNT] {
    [0.0, 120.0_f64.to_radians(), 240.0_f64.to_radians()]
}

/// Attachment points relative to the centroid, body frame.
pub fn attachment_points(geom: &WecGeometry) -> Result<[Vector3<f64>; TETHER_COUNT]> {
    geom.validate()?;
    let (sin_ap, cos_ap) = geom.attachment_angle.to_radians().sin_cos();
    // distance along the ray to the side wall and to the bottom face
    let to_side = if sin_ap > 0.0 {
        geom.radius / sin_ap
    } else {
        f64::INFINITY
    };
    let to_bottom = 0.5 * geom.height / cos_ap;
    let reach = to_side.min(to_bottom);
    Ok(tether_azimuths().map(|phi| {
        let (s, c) = phi.sin_cos();
        reach * Vector3::new(sin_ap * c, sin_ap * s, -cos_ap)
    }))
}

/// Unit vectors from each anchor towards its attachment point.
pub fn tether_directions(geom: &WecGeometry) -> [Vector3<f64>; TETHER_COUNT] {
    let (sin_t, cos_t) = geom.tether_inclination.to_radians().sin_cos();
    tether_azimuths().map(|phi| {
        let (s, c) = phi.sin_cos();
        Vector3::new(-sin_t * c, -sin_t * s, cos_t)
    })
}

/// Anchor positions on the sea floor, global frame.
pub fn anchor_points(geom: &WecGeometry) -> Result<[Vector3<f64>; TETHER_COUNT]> {
    let attach = attachment_points(geom)?;
    let dirs = tether_directions(geom);
    let centroid = Vector3::new(0.0, 0.0, geom.centroid_z());
    Ok(std::array::from_fn(|k| {
        let p = centroid + attach[k];
        let length = (geom.depth + p.z) / dirs[k].z;
        p - dirs[k] * length
    }))
}

/// Body rotation for roll, pitch, yaw angles applied as `Rz Ry Rx`.
pub fn rotation(roll: f64, pitch: f64, yaw: f64) -> Matrix3<f64> {
    let (sr, cr) = roll.sin_cos();
    let (sp, cp) = pitch.sin_cos();
    let (sy, cy) = yaw.sin_cos();
    let rx = Matrix3::new(1.0, 0.0, 0.0, 0.0, cr, -sr, 0.0, sr, cr);
    let ry = Matrix3::new(cp, 0.0, sp, 0.0, 1.0, 0.0, -sp, 0.0, cp);
    let rz = Matrix3::new(cy, -sy, 0.0, sy, cy, 0.0, 0.0, 0.0, 1.0);
    rz * ry * rx
}

/// Exact tether lengths with the buoy displaced by `pose` from nominal.
pub fn tether_lengths(geom: &WecGeometry, pose: &Vector6<f64>) -> Result<[f64; TETHER_COUNT]> {
    let attach = attachment_points(geom)?;
    let anchors = anchor_points(geom)?;
    let centroid = Vector3::new(pose[0], pose[1], geom.centroid_z() + pose[2]);
    let r = rotation(pose[3], pose[4], pose[5]);
    Ok(std::array::from_fn(|k| {
        (centroid + r * attach[k] - anchors[k]).norm()
    }))
}

/// Inverse kinematic Jacobian at the nominal pose: row `k` is
/// `[u_k, r_k x u_k]`.
pub fn inverse_jacobian(geom: &WecGeometry) -> Result<InverseJacobian> {
    let attach = attachment_points(geom)?;
    let dirs = tether_directions(geom);
    let mut j = InverseJacobian::zeros();
    for k in 0..TETHER_COUNT {
        let u = dirs[k];
        let m = attach[k].cross(&u);
        for c in 0..3 {
            j[(k, c)] = u[c];
            j[(k, c + 3)] = m[c];
        }
    }
    Ok(j)
}
