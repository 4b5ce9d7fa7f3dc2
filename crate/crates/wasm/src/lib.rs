//! Browser boundary for the deformer and interpolation demo.
//!
//! Everything crosses as flat `f64` arrays: DCNs as 4 floats each
//! (`p0.re, p0.im, p1.re, p1.im`), points as interleaved `x, y`, weights
//! row-major with one row per probe. The plain functions in this module are
//! the boundary and are testable natively; the `#[wasm_bindgen]` wrappers
//! only translate errors into JS exceptions.

use dcn::deform::{self, Mesh, Pose, Probe, Rect, WeightField};
use dcn::{Point2, UnitDcn};
use wasm_bindgen::prelude::*;

pub type BoundaryResult<T> = Result<T, String>;

fn chunks<const N: usize>(flat: &[f64], what: &str) -> BoundaryResult<Vec<[f64; N]>> {
    if !flat.len().is_multiple_of(N) {
        return Err(format!("{what}: length {} is not a multiple of {N}", flat.len()));
    }
    Ok(flat
        .chunks_exact(N)
        .map(|c| c.try_into().expect("exact chunk"))
        .collect())
}

fn points(flat: &[f64], what: &str) -> BoundaryResult<Vec<Point2>> {
    Ok(chunks::<2>(flat, what)?.into_iter().map(Point2::from).collect())
}

fn flatten_points(points: &[Point2]) -> Vec<f64> {
    points.iter().flat_map(|p| [p.x, p.y]).collect()
}

fn units(flat: &[f64]) -> BoundaryResult<Vec<UnitDcn>> {
    chunks::<4>(flat, "dcns")?
        .into_iter()
        .enumerate()
        .map(|(i, a)| dcn::io::unit_from_array(a).map_err(|e| format!("dcn {i}: {e}")))
        .collect()
}

fn unit(flat: &[f64]) -> BoundaryResult<UnitDcn> {
    let a: [f64; 4] = flat.try_into().map_err(|_| "a DCN is 4 floats".to_string())?;
    dcn::io::unit_from_array(a).map_err(|e| e.to_string())
}

fn field(weights: &[f64], probes: usize, vertices: usize) -> BoundaryResult<WeightField> {
    WeightField::new(probes, vertices, weights.to_vec()).map_err(|e| e.to_string())
}

/// Deformed vertices, failing on the first degenerate blend.
pub fn deform_flat(rest: &[f64], dcns: &[f64], weights: &[f64]) -> BoundaryResult<Vec<f64>> {
    let rest = points(rest, "rest")?;
    let dcns = units(dcns)?;
    let w = field(weights, dcns.len(), rest.len())?;
    let moved = deform::deform_with_dcns(&rest, &dcns, &w).map_err(|e| e.to_string())?;
    Ok(flatten_points(&moved))
}

/// Per-frame deformation: degenerate vertices keep `previous`. The returned
/// array is the new positions followed by one trailing float holding the
/// number of degenerate vertices.
pub fn deform_frame_flat(rest: &[f64], dcns: &[f64], weights: &[f64], previous: &[f64]) -> BoundaryResult<Vec<f64>> {
    let rest = points(rest, "rest")?;
    let previous = points(previous, "previous")?;
    let dcns = units(dcns)?;
    let w = field(weights, dcns.len(), rest.len())?;
    let frame = deform::deform_interactive(&rest, &dcns, &w, &previous).map_err(|e| e.to_string())?;
    let mut out = flatten_points(&frame.positions);
    out.push(frame.degenerate.len() as f64);
    Ok(out)
}

/// Unit DCN moving a probe from its initial to its current pose; each pose
/// is `[cx, cy, angle]`.
pub fn probe_dcn_flat(initial: &[f64], current: &[f64]) -> BoundaryResult<Vec<f64>> {
    let pose = |p: &[f64]| -> BoundaryResult<Pose> {
        match *p {
            [x, y, a] if p.iter().all(|v| v.is_finite()) => Ok(Pose::new(Point2::new(x, y), a)),
            _ => Err("a pose is 3 finite floats [cx, cy, angle]".into()),
        }
    };
    let probe = Probe {
        id: 0,
        initial: pose(initial)?,
        current: pose(current)?,
    };
    Ok(deform::probe_dcn(&probe).to_array().to_vec())
}

/// Shepard weights for probes centered at `centers` (interleaved x, y).
pub fn auto_weights_flat(vertices: &[f64], centers: &[f64], alpha: f64, eps: f64) -> BoundaryResult<Vec<f64>> {
    let vertices = points(vertices, "vertices")?;
    let probes: Vec<Probe> = points(centers, "centers")?
        .into_iter()
        .enumerate()
        .map(|(i, c)| Probe::at(i as u64, c))
        .collect();
    let w = deform::auto_weights(&vertices, &probes, alpha, eps).map_err(|e| e.to_string())?;
    Ok(w.as_slice().to_vec())
}

pub fn blend_flat(dcns: &[f64], weights: &[f64]) -> BoundaryResult<Vec<f64>> {
    let dcns = units(dcns)?;
    dcn::dlb(&dcns, weights)
        .map(|p| p.to_array().to_vec())
        .map_err(|e| e.to_string())
}

pub fn slerp_flat(p: &[f64], q: &[f64], t: f64) -> BoundaryResult<Vec<f64>> {
    dcn::slerp(unit(p)?, unit(q)?, t)
        .map(|r| r.to_array().to_vec())
        .map_err(|e| e.to_string())
}

/// Transforms interleaved points by one DCN.
pub fn transform_flat(p: &[f64], pts: &[f64]) -> BoundaryResult<Vec<f64>> {
    let p = unit(p)?;
    let moved: Vec<Point2> = points(pts, "points")?.into_iter().map(|v| p.act(v)).collect();
    Ok(flatten_points(&moved))
}

/// Grid mesh as `(vertices, triangles, uv)`, all flat.
pub fn grid_flat(rows: usize, cols: usize, rect: &[f64]) -> BoundaryResult<(Vec<f64>, Vec<u32>, Vec<f64>)> {
    let [x0, y0, x1, y1] = <[f64; 4]>::try_from(rect).map_err(|_| "rect is [x0, y0, x1, y1]".to_string())?;
    let mesh: Mesh = Mesh::grid(rows, cols, Rect::new(x0, y0, x1, y1)).map_err(|e| e.to_string())?;
    let tris = mesh.triangles.iter().flatten().map(|&i| i as u32).collect();
    let uv = mesh.uv.iter().flatten().copied().collect();
    Ok((flatten_points(&mesh.vertices), tris, uv))
}

fn js<T>(r: BoundaryResult<T>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn deform(rest: &[f64], dcns: &[f64], weights: &[f64]) -> Result<Vec<f64>, JsError> {
    js(deform_flat(rest, dcns, weights))
}

#[wasm_bindgen(js_name = deformFrame)]
pub fn deform_frame(rest: &[f64], dcns: &[f64], weights: &[f64], previous: &[f64]) -> Result<Vec<f64>, JsError> {
    js(deform_frame_flat(rest, dcns, weights, previous))
}

#[wasm_bindgen(js_name = probeDcn)]
pub fn probe_dcn(initial: &[f64], current: &[f64]) -> Result<Vec<f64>, JsError> {
    js(probe_dcn_flat(initial, current))
}

#[wasm_bindgen(js_name = autoWeights)]
pub fn auto_weights(vertices: &[f64], centers: &[f64], alpha: f64, eps: f64) -> Result<Vec<f64>, JsError> {
    js(auto_weights_flat(vertices, centers, alpha, eps))
}

#[wasm_bindgen]
pub fn blend(dcns: &[f64], weights: &[f64]) -> Result<Vec<f64>, JsError> {
    js(blend_flat(dcns, weights))
}

#[wasm_bindgen]
pub fn slerp(p: &[f64], q: &[f64], t: f64) -> Result<Vec<f64>, JsError> {
    js(slerp_flat(p, q, t))
}

#[wasm_bindgen]
pub fn transform(p: &[f64], points: &[f64]) -> Result<Vec<f64>, JsError> {
    js(transform_flat(p, points))
}

#[wasm_bindgen]
pub struct Grid {
    vertices: Vec<f64>,
    triangles: Vec<u32>,
    uv: Vec<f64>,
}

#[wasm_bindgen]
impl Grid {
    #[wasm_bindgen(constructor)]
    pub fn new(rows: usize, cols: usize, rect: &[f64]) -> Result<Grid, JsError> {
        let (vertices, triangles, uv) = js(grid_flat(rows, cols, rect))?;
        Ok(Grid {
            vertices,
            triangles,
            uv,
        })
    }

    #[wasm_bindgen(getter)]
    pub fn vertices(&self) -> Vec<f64> {
        self.vertices.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn triangles(&self) -> Vec<u32> {
        self.triangles.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn uv(&self) -> Vec<f64> {
        self.uv.clone()
    }
}
