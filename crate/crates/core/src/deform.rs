//! Probe-based mesh deformation.
//!
//! Each probe carries an initial and a current pose. The rigid motion between
//! them is lifted to a unit DCN, and every mesh vertex is moved by the DLB
//! blend of all probe motions, weighted per vertex:
//!
//! `v_j ↦ dlb(p_1..p_n; w_1j..w_nj) · v_j`
//!
//! Rest positions are never modified; a deformation is a pure function of the
//! mesh, the probes and the weight field.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dcn::{dlb, Point2, UnitDcn};
use crate::error::DcnError;

pub const DEFAULT_ALPHA: f64 = 2.0;
pub const DEFAULT_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformError {
    #[error("vertex {vertex}: {source}")]
    Blend { vertex: usize, source: DcnError },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub const fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<Point2>,
    pub triangles: Vec<[usize; 3]>,
    pub uv: Vec<[f64; 2]>,
}

impl Mesh {
    /// Regular grid with `rows × cols` vertices spanning `rect`, two
    /// triangles per cell, uv running over `[0, 1]²` (v = 0 on row 0).
    pub fn grid(rows: usize, cols: usize, rect: Rect) -> Result<Self, DeformError> {
        if rows < 2 || cols < 2 {
            return Err(DeformError::InvalidParameter(format!(
                "grid needs at least 2×2 vertices, got {rows}×{cols}"
            )));
        }
        let mut vertices = Vec::with_capacity(rows * cols);
        let mut uv = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let v = r as f64 / (rows - 1) as f64;
            for c in 0..cols {
                let u = c as f64 / (cols - 1) as f64;
                vertices.push(Point2::new(
                    rect.x0 + u * (rect.x1 - rect.x0),
                    rect.y0 + v * (rect.y1 - rect.y0),
                ));
                uv.push([u, v]);
            }
        }
        let mut triangles = Vec::with_capacity(2 * (rows - 1) * (cols - 1));
        for r in 0..rows - 1 {
            for c in 0..cols - 1 {
                let a = r * cols + c;
                let b = a + 1;
                let d = a + cols;
                let e = d + 1;
                triangles.push([a, b, e]);
                triangles.push([a, e, d]);
            }
        }
        Ok(Self {
            vertices,
            triangles,
            uv,
        })
    }

    pub fn validate(&self) -> Result<(), DeformError> {
        let n = self.vertices.len();
        if self.uv.len() != n {
            return Err(DeformError::InvalidMesh(format!(
                "{} uv coordinates for {n} vertices",
                self.uv.len()
            )));
        }
        if let Some(i) = self.vertices.iter().position(|v| !v.is_finite()) {
            return Err(DeformError::InvalidMesh(format!("vertex {i} is not finite")));
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            if let Some(&bad) = tri.iter().find(|&&i| i >= n) {
                return Err(DeformError::InvalidMesh(format!(
                    "triangle {t} references vertex {bad}, mesh has {n}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub center: Point2,
    /// Radians, unwrapped (cumulative over a gesture).
    pub angle: f64,
}

impl Pose {
    pub const fn new(center: Point2, angle: f64) -> Self {
        Self { center, angle }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub id: u64,
    pub initial: Pose,
    pub current: Pose,
}

impl Probe {
    /// A probe at rest: current pose equal to the initial one.
    pub fn at(id: u64, center: Point2) -> Self {
        let pose = Pose::new(center, 0.0);
        Self {
            id,
            initial: pose,
            current: pose,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.initial.center.is_finite()
            && self.current.center.is_finite()
            && self.initial.angle.is_finite()
            && self.current.angle.is_finite()
    }
}

/// The motion taking the probe's initial pose to its current one: rotate by
/// the angle change about the initial center, then translate the center to
/// its current position. The lift with `Re(p0) ≥ 0` is returned.
pub fn probe_dcn(probe: &Probe) -> UnitDcn {
    let turn = UnitDcn::from_rotation(probe.current.angle - probe.initial.angle, probe.initial.center);
    let shift = UnitDcn::from_translation(probe.current.center - probe.initial.center);
    (shift * turn).hemisphere_aligned(UnitDcn::IDENTITY)
}

/// Dense probes × vertices weight matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightField {
    probes: usize,
    vertices: usize,
    w: Vec<f64>,
}

impl WeightField {
    /// Validates that weights are finite and nonnegative and that every
    /// vertex has some positive weight.
    pub fn new(probes: usize, vertices: usize, w: Vec<f64>) -> Result<Self, DeformError> {
        if w.len() != probes * vertices {
            return Err(DeformError::InvalidWeights(format!(
                "{} entries for {probes} probes × {vertices} vertices",
                w.len()
            )));
        }
        if let Some(k) = w.iter().position(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(DeformError::InvalidWeights(format!(
                "weight of probe {} on vertex {} is {}",
                k / vertices.max(1),
                k % vertices.max(1),
                w[k]
            )));
        }
        let field = Self { probes, vertices, w };
        if let Some(j) = (0..vertices).find(|&j| field.column(j).all(|x| x == 0.0)) {
            return Err(DeformError::InvalidWeights(format!(
                "vertex {j} has no positive weight"
            )));
        }
        Ok(field)
    }

    /// One row per probe.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, DeformError> {
        let vertices = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != vertices) {
            return Err(DeformError::InvalidWeights(format!(
                "row {i} has {} entries, row 0 has {vertices}",
                rows[i].len()
            )));
        }
        Self::new(rows.len(), vertices, rows.concat())
    }

    pub fn probes(&self) -> usize {
        self.probes
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn get(&self, probe: usize, vertex: usize) -> f64 {
        self.w[probe * self.vertices + vertex]
    }

    pub fn column(&self, vertex: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.probes).map(move |i| self.get(i, vertex))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.w.chunks(self.vertices.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    /// Copy with every vertex column scaled to sum to 1. Blending is
    /// invariant under this, so it only matters for display.
    pub fn normalized(&self) -> Self {
        let mut w = self.w.clone();
        for j in 0..self.vertices {
            let total: f64 = self.column(j).sum();
            for i in 0..self.probes {
                w[i * self.vertices + j] /= total;
            }
        }
        Self { w, ..*self }
    }
}

/// Shepard (normalized inverse-distance) weights against the probes'
/// initial centers, `w_ij ∝ max(d_ij, eps)^-alpha`.
///
/// A vertex within `eps` of a probe is bound to the nearest such probe alone.
pub fn auto_weights(vertices: &[Point2], probes: &[Probe], alpha: f64, eps: f64) -> Result<WeightField, DeformError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(DeformError::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(DeformError::InvalidParameter(format!(
            "eps must be nonnegative, got {eps}"
        )));
    }
    if probes.is_empty() {
        return Err(DeformError::InvalidParameter("at least one probe is required".into()));
    }
    let n = probes.len();
    let m = vertices.len();
    let mut w = vec![0.0; n * m];
    let mut dist = vec![0.0; n];
    for (j, &v) in vertices.iter().enumerate() {
        for (d, probe) in dist.iter_mut().zip(probes) {
            *d = v.distance(probe.initial.center);
        }
        let nearest = (0..n).min_by(|&a, &b| dist[a].total_cmp(&dist[b])).expect("nonempty");
        if dist[nearest] <= eps {
            w[nearest * m + j] = 1.0;
            continue;
        }
        let raw: Vec<f64> = dist.iter().map(|d| d.max(eps).powf(-alpha)).collect();
        let total: f64 = raw.iter().sum();
        for (i, r) in raw.into_iter().enumerate() {
            w[i * m + j] = r / total;
        }
    }
    WeightField::new(n, m, w)
}

fn check_dims(rest: usize, dcns: usize, weights: &WeightField) -> Result<(), DeformError> {
    if weights.probes() != dcns || weights.vertices() != rest {
        return Err(DeformError::Dimension(format!(
            "weights are {}×{} but there are {dcns} probes and {rest} vertices",
            weights.probes(),
            weights.vertices()
        )));
    }
    Ok(())
}

/// Deforms every vertex; the first degenerate blend aborts with its vertex index.
pub fn deform(mesh: &Mesh, probes: &[Probe], weights: &WeightField) -> Result<Vec<Point2>, DeformError> {
    let dcns: Vec<UnitDcn> = probes.iter().map(probe_dcn).collect();
    deform_with_dcns(&mesh.vertices, &dcns, weights)
}

pub fn deform_with_dcns(rest: &[Point2], dcns: &[UnitDcn], weights: &WeightField) -> Result<Vec<Point2>, DeformError> {
    check_dims(rest.len(), dcns.len(), weights)?;
    let mut column = vec![0.0; dcns.len()];
    rest.iter()
        .enumerate()
        .map(|(j, &v)| {
            column.iter_mut().zip(weights.column(j)).for_each(|(c, w)| *c = w);
            dlb(dcns, &column)
                .map(|blend| blend.act(v))
                .map_err(|source| DeformError::Blend { vertex: j, source })
        })
        .collect()
}

/// Result of a fault-tolerant deformation pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub positions: Vec<Point2>,
    /// Vertices whose blend degenerated; they kept their previous position.
    pub degenerate: Vec<usize>,
}

/// Like [`deform_with_dcns`], but a vertex whose blend degenerates keeps its
/// position from `previous` instead of failing the whole pass.
pub fn deform_interactive(
    rest: &[Point2],
    dcns: &[UnitDcn],
    weights: &WeightField,
    previous: &[Point2],
) -> Result<Frame, DeformError> {
    check_dims(rest.len(), dcns.len(), weights)?;
    if previous.len() != rest.len() {
        return Err(DeformError::Dimension(format!(
            "{} previous positions for {} vertices",
            previous.len(),
            rest.len()
        )));
    }
    let mut column = vec![0.0; dcns.len()];
    let mut degenerate = Vec::new();
    let positions = rest
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            column.iter_mut().zip(weights.column(j)).for_each(|(c, w)| *c = w);
            match dlb(dcns, &column) {
                Ok(blend) => blend.act(v),
                Err(_) => {
                    degenerate.push(j);
                    previous[j]
                }
            }
        })
        .collect();
    Ok(Frame { positions, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex;
    use std::f64::consts::PI;

    fn unit_square(rows: usize) -> Mesh {
        Mesh::grid(rows, rows, Rect::new(0.0, 0.0, 1.0, 1.0)).unwrap()
    }

    #[test]
    fn grid_layout() {
        let m = Mesh::grid(3, 4, Rect::new(-1.0, 0.0, 2.0, 4.0)).unwrap();
        assert_eq!(m.vertices.len(), 12);
        assert_eq!(m.triangles.len(), 2 * 2 * 3);
        assert_eq!(m.vertices[0], Point2::new(-1.0, 0.0));
        assert_eq!(m.vertices[11], Point2::new(2.0, 4.0));
        assert_eq!(m.uv[11], [1.0, 1.0]);
        m.validate().unwrap();
        assert!(Mesh::grid(1, 5, Rect::new(0.0, 0.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn validate_catches_bad_meshes() {
        let mut m = unit_square(2);
        m.triangles.push([0, 1, 9]);
        assert!(matches!(m.validate(), Err(DeformError::InvalidMesh(_))));
        let mut m = unit_square(2);
        m.uv.pop();
        assert!(matches!(m.validate(), Err(DeformError::InvalidMesh(_))));
    }

    #[test]
    fn probe_dcn_examples() {
        let rest = Probe::at(0, Point2::new(0.3, 0.4));
        assert_eq!(probe_dcn(&rest), UnitDcn::IDENTITY);

        let d = Point2::new(1.5, -0.5);
        let mut dragged = rest.clone();
        dragged.current.center = rest.initial.center + d;
        assert_eq!(probe_dcn(&dragged), UnitDcn::from_translation(d));

        let mut turned = Probe::at(1, Point2::new(1.0, 0.0));
        turned.current.angle = PI;
        let p = probe_dcn(&turned);
        assert!((p.p0() - Complex::new(0.0, 1.0)).norm() < 1e-15);
        assert!((p.p1() - Complex::new(0.0, -1.0)).norm() < 1e-15);
        assert!(p.act(Point2::new(1.0, 0.0)).distance(Point2::new(1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn probe_dcn_moves_center_and_turns_frame() {
        let probe = Probe {
            id: 7,
            initial: Pose::new(Point2::new(2.0, 1.0), 0.4),
            current: Pose::new(Point2::new(-1.0, 3.0), 0.4 + 5.0),
        };
        let p = probe_dcn(&probe);
        assert!(p.act(probe.initial.center).distance(probe.current.center) < 1e-14);
        let want = (5.0f64 + PI).rem_euclid(2.0 * PI) - PI;
        assert!((p.rotation_angle() - want).abs() < 1e-14);
        assert!(p.p0().re >= 0.0);
    }

    #[test]
    fn auto_weights_examples() {
        let verts = [Point2::new(0.0, 0.0), Point2::new(5.0, 1.0)];
        let one = auto_weights(&verts, &[Probe::at(0, Point2::new(1.0, 1.0))], 2.0, 1e-6).unwrap();
        assert_eq!(one.as_slice(), &[1.0, 1.0]);

        let probes = [
            Probe::at(0, Point2::new(-1.0, 0.0)),
            Probe::at(1, Point2::new(1.0, 0.0)),
        ];
        let sym = auto_weights(&[Point2::new(0.0, 3.0)], &probes, 2.0, 1e-6).unwrap();
        assert_eq!(sym.as_slice(), &[0.5, 0.5]);

        let probes = [
            Probe::at(0, Point2::new(1.0, 0.0)),
            Probe::at(1, Point2::new(-2.0, 0.0)),
        ];
        let w = auto_weights(&[Point2::ORIGIN], &probes, 2.0, 1e-6).unwrap();
        assert!((w.get(0, 0) - 0.8).abs() < 1e-15);
        assert!((w.get(1, 0) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn auto_weights_binds_vertices_on_probes() {
        let probes = [Probe::at(0, Point2::new(0.0, 0.0)), Probe::at(1, Point2::new(1.0, 0.0))];
        let w = auto_weights(&[Point2::new(1.0, 0.0)], &probes, 2.0, 1e-6).unwrap();
        assert_eq!(w.as_slice(), &[0.0, 1.0]);
        let w = auto_weights(&[Point2::new(0.0, 0.0)], &probes, 2.0, 0.0).unwrap();
        assert_eq!(w.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn auto_weights_rejects_bad_parameters() {
        let p = [Probe::at(0, Point2::ORIGIN)];
        assert!(auto_weights(&[], &p, 0.0, 1e-6).is_err());
        assert!(auto_weights(&[], &p, 2.0, -1.0).is_err());
        assert!(auto_weights(&[], &[], 2.0, 1e-6).is_err());
    }

    #[test]
    fn weight_field_validation() {
        assert!(WeightField::new(1, 2, vec![1.0]).is_err());
        assert!(WeightField::new(1, 2, vec![1.0, -0.1]).is_err());
        assert!(WeightField::new(2, 2, vec![1.0, 0.0, 1.0, 0.0]).is_err());
        assert!(WeightField::from_rows(&[vec![1.0, 1.0], vec![1.0]]).is_err());
        let w = WeightField::from_rows(&[vec![1.0, 3.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(w.normalized().rows(), vec![vec![0.5, 0.75], vec![0.5, 0.25]]);
    }

    #[test]
    fn identity_at_rest() {
        let mesh = unit_square(5);
        let probes = [Probe::at(0, Point2::new(0.2, 0.2)), Probe::at(1, Point2::new(0.9, 0.5))];
        let w = auto_weights(&mesh.vertices, &probes, 2.0, 1e-6).unwrap();
        assert_eq!(deform(&mesh, &probes, &w).unwrap(), mesh.vertices);
    }

    #[test]
    fn two_translating_probes_average() {
        let mesh = unit_square(3);
        let mut a = Probe::at(0, Point2::new(0.0, 0.0));
        let mut b = Probe::at(1, Point2::new(1.0, 1.0));
        a.current.center = Point2::new(0.0, 0.0);
        b.current.center = Point2::new(3.0, 1.0);
        let w = WeightField::new(2, 9, vec![1.0; 18]).unwrap();
        let out = deform(&mesh, &[a, b], &w).unwrap();
        for (o, v) in out.iter().zip(&mesh.vertices) {
            assert!(o.distance(*v + Point2::new(1.0, 0.0)) < 1e-15);
        }
    }

    #[test]
    fn weight_scaling_does_not_change_result() {
        let mesh = unit_square(4);
        let mut probes = vec![Probe::at(0, Point2::new(0.1, 0.1)), Probe::at(1, Point2::new(0.8, 0.7))];
        probes[0].current = Pose::new(Point2::new(0.3, -0.2), 0.9);
        probes[1].current = Pose::new(Point2::new(1.0, 0.9), -0.4);
        let w = auto_weights(&mesh.vertices, &probes, 2.0, 1e-6).unwrap();
        let scaled = WeightField::new(2, 16, w.as_slice().iter().map(|x| x * 7.5).collect()).unwrap();
        let a = deform(&mesh, &probes, &w).unwrap();
        let b = deform(&mesh, &probes, &scaled).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!(p.distance(*q) < 1e-14);
        }
    }

    #[test]
    fn degenerate_blend_reports_vertex() {
        let rest = [Point2::ORIGIN, Point2::new(1.0, 0.0)];
        // the two lifts ±i of a half turn sit on the identity's hemisphere
        // boundary, so neither gets flipped and they cancel
        let a = UnitDcn::from_rotation(PI, Point2::ORIGIN);
        let b = UnitDcn::from_rotation(-PI, Point2::ORIGIN);
        let dcns = [UnitDcn::IDENTITY, a, b];
        let w = WeightField::new(3, 2, vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        let err = deform_with_dcns(&rest, &dcns, &w).unwrap_err();
        assert!(matches!(
            err,
            DeformError::Blend {
                vertex: 1,
                source: DcnError::DegenerateBlend { .. }
            }
        ));

        let previous = [Point2::new(9.0, 9.0), Point2::new(7.0, 7.0)];
        let frame = deform_interactive(&rest, &dcns, &w, &previous).unwrap();
        assert_eq!(frame.degenerate, vec![1]);
        assert_eq!(frame.positions[0], Point2::ORIGIN);
        assert_eq!(frame.positions[1], previous[1]);
    }

    #[test]
    fn dimension_mismatch() {
        let w = WeightField::new(1, 1, vec![1.0]).unwrap();
        assert!(matches!(
            deform_with_dcns(&[Point2::ORIGIN; 2], &[UnitDcn::IDENTITY], &w),
            Err(DeformError::Dimension(_))
        ));
    }
}
