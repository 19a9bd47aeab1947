//! Lattice sampling of surfaces and mesh/CSV export.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::bjorling::{DomainRect, Surface};
use crate::error::{Error, Result};
use crate::lorentz::{CausalCharacter, LorentzVec};

/// Step of the finite differences behind the singular flags.
pub const METRIC_STEP: f64 = 1e-6;
/// A vertex is singular when `|EG - F^2| <= METRIC_TOL * |X_u|^2 |X_v|^2`
/// (Euclidean lengths).
pub const METRIC_TOL: f64 = 1e-6;

/// Row-major samples of a surface: vertex `(i, j)` sits at
/// `u_i = u0 + i du`, `v_j = v0 + j dv` and is stored at `j * nu + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePatch {
    pub nu: usize,
    pub nv: usize,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    /// `None` outside the sampled region.
    pub vertices: Vec<Option<LorentzVec>>,
    pub singular: Vec<bool>,
    /// Causal character of the induced metric; `LightLike` where it
    /// degenerates.
    pub character: Vec<Option<CausalCharacter>>,
}

impl SurfacePatch {
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn param(&self, i: usize, j: usize) -> (f64, f64) {
        (
            lattice_coord(self.u_range, self.nu, i),
            lattice_coord(self.v_range, self.nv, j),
        )
    }

    pub fn vertex(&self, i: usize, j: usize) -> Option<LorentzVec> {
        self.vertices[self.index(i, j)]
    }

    pub fn present(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_some()).count()
    }

    pub fn singular_count(&self) -> usize {
        self.singular.iter().filter(|&&s| s).count()
    }
}

fn lattice_coord((a, b): (f64, f64), n: usize, k: usize) -> f64 {
    if k + 1 == n {
        b
    } else {
        a + k as f64 * (b - a) / (n - 1) as f64
    }
}

fn partial(surface: &dyn Surface, x: LorentzVec, p: (f64, f64), dir: (f64, f64)) -> Result<LorentzVec> {
    let h = METRIC_STEP;
    let fwd = surface.eval(p.0 + h * dir.0, p.1 + h * dir.1);
    let bwd = surface.eval(p.0 - h * dir.0, p.1 - h * dir.1);
    match (fwd, bwd) {
        (Ok(f), Ok(b)) => Ok((f - b) * (0.5 / h)),
        (Ok(f), Err(_)) => Ok((f - x) * (1.0 / h)),
        (Err(_), Ok(b)) => Ok((x - b) * (1.0 / h)),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Singular flag and causal character of the induced metric at `(u, v)`.
pub fn metric_character(surface: &dyn Surface, x: LorentzVec, u: f64, v: f64) -> Result<(bool, CausalCharacter)> {
    let xu = partial(surface, x, (u, v), (1.0, 0.0))?;
    let xv = partial(surface, x, (u, v), (0.0, 1.0))?;
    let (e, f, g) = (xu.inner(&xu), xu.inner(&xv), xv.inner(&xv));
    let det = e * g - f * f;
    let scale = xu.euclid_norm_sq() * xv.euclid_norm_sq();
    if det.abs() <= METRIC_TOL * scale {
        Ok((true, CausalCharacter::LightLike))
    } else if det > 0.0 {
        Ok((false, CausalCharacter::SpaceLike))
    } else {
        Ok((false, CausalCharacter::TimeLike))
    }
}

/// Samples `surface` on an `nu x nv` lattice of the region's bounding box.
/// Lattice points outside the region are left absent.
pub fn sample_patch(surface: &dyn Surface, region: &DomainRect, nu: usize, nv: usize) -> Result<SurfacePatch> {
    if nu < 2 || nv < 2 {
        return Err(Error::InvalidData(format!(
            "patch needs at least 2x2 points, got {nu}x{nv}"
        )));
    }
    let (u_range, v_range) = region.bounds();
    let n = nu * nv;
    let mut patch = SurfacePatch {
        nu,
        nv,
        u_range,
        v_range,
        vertices: vec![None; n],
        singular: vec![false; n],
        character: vec![None; n],
    };
    for j in 0..nv {
        for i in 0..nu {
            let (u, v) = patch.param(i, j);
            if !region.contains(u, v) {
                continue;
            }
            let at = |source: Error| Error::AtGridPoint {
                i,
                j,
                source: Box::new(source),
            };
            let x = surface.eval(u, v).map_err(at)?;
            let (singular, character) = metric_character(surface, x, u, v).map_err(at)?;
            let k = patch.index(i, j);
            patch.vertices[k] = Some(x);
            patch.singular[k] = singular;
            patch.character[k] = Some(character);
        }
    }
    Ok(patch)
}

/// Wavefront OBJ text: one `v` line per present vertex in row-major order,
/// two triangles per lattice cell, triangles touching an absent vertex
/// dropped.
pub fn obj_string(patch: &SurfacePatch) -> String {
    let mut out = String::new();
    let mut number = vec![0usize; patch.vertices.len()];
    let mut next = 1;
    for (k, v) in patch.vertices.iter().enumerate() {
        if let Some(x) = v {
            let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", x.x1, x.x2, x.x3);
            number[k] = next;
            next += 1;
        }
    }
    let id = |i: usize, j: usize| number[patch.index(i, j)];
    for j in 0..patch.nv.saturating_sub(1) {
        for i in 0..patch.nu.saturating_sub(1) {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            for tri in [[a, b, c], [a, c, d]] {
                if tri.iter().all(|&t| t != 0) {
                    let _ = writeln!(out, "f {} {} {}", tri[0], tri[1], tri[2]);
                }
            }
        }
    }
    out
}

/// `u,v,x1,x2,x3,singular` rows for the present vertices.
pub fn csv_string(patch: &SurfacePatch) -> String {
    let mut out = String::from("u,v,x1,x2,x3,singular\n");
    for j in 0..patch.nv {
        for i in 0..patch.nu {
            let k = patch.index(i, j);
            if let Some(x) = patch.vertices[k] {
                let (u, v) = patch.param(i, j);
                let _ = writeln!(
                    out,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                    u, v, x.x1, x.x2, x.x3, patch.singular[k] as u8
                );
            }
        }
    }
    out
}

/// Writes `contents` through a temporary file in the target directory and
/// renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn export_obj(patch: &SurfacePatch, path: &Path) -> Result<()> {
    write_atomic(path, obj_string(patch).as_bytes())
}

pub fn export_csv(patch: &SurfacePatch, path: &Path) -> Result<()> {
    write_atomic(path, csv_string(patch).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjorling::BjorlingData;
    use std::f64::consts::PI;

    fn plane(u: f64, v: f64) -> Result<LorentzVec> {
        Ok(LorentzVec::new(u, v, 0.0))
    }

    #[test]
    fn middle_row_is_the_curve() {
        let data = BjorlingData::parse(["cos(t)", "sin(t)", "t"], None, (0.0, PI)).unwrap();
        let patch = sample_patch(&data.maxface(), &DomainRect::rect((0.0, PI), (-0.1, 0.1)), 3, 3).unwrap();
        assert_eq!(patch.vertices.len(), 9);
        for i in 0..3 {
            let (u, v) = patch.param(i, 1);
            assert_eq!(v, 0.0);
            let x = patch.vertex(i, 1).unwrap();
            assert!((x - data.gamma_at(u).unwrap()).max_abs() < 1e-14);
            assert!(patch.singular[patch.index(i, 1)]);
        }
        assert!(!patch.singular[patch.index(1, 0)]);
        assert_eq!(patch.character[patch.index(1, 0)], Some(CausalCharacter::SpaceLike));
    }

    #[test]
    fn diamond_corners_absent() {
        let patch = sample_patch(&plane, &DomainRect::diamond(0.0, 1.0), 10, 10).unwrap();
        for (i, j) in [(0, 0), (9, 0), (0, 9), (9, 9)] {
            assert!(patch.vertex(i, j).is_none());
        }
        assert!(patch.vertex(4, 5).is_some());
    }

    #[test]
    fn transposed_sampling_same_vertices() {
        let region = DomainRect::rect((0.0, 1.0), (0.0, 1.0));
        let f = |u: f64, v: f64| Ok(LorentzVec::new(u * v, u + v, u - v));
        let a = sample_patch(&f, &region, 5, 7).unwrap();
        let g = |u: f64, v: f64| f(v, u);
        let b = sample_patch(&g, &region, 7, 5).unwrap();
        let key = |x: &LorentzVec| x.to_array().map(f64::to_bits);
        let mut xs: Vec<_> = a.vertices.iter().flatten().map(key).collect();
        let mut ys: Vec<_> = b.vertices.iter().flatten().map(key).collect();
        xs.sort();
        ys.sort();
        assert_eq!(xs, ys);
    }

    #[test]
    fn errors_carry_grid_point() {
        let f = |u: f64, _v: f64| {
            if u > 0.5 {
                Err(Error::NonFinite("test"))
            } else {
                Ok(LorentzVec::ZERO)
            }
        };
        let err = sample_patch(&f, &DomainRect::rect((0.0, 1.0), (0.0, 1.0)), 3, 2).unwrap_err();
        assert!(matches!(err, Error::AtGridPoint { i: 2, j: 0, .. }));
        assert!(sample_patch(&f, &DomainRect::rect((0.0, 1.0), (0.0, 1.0)), 1, 2).is_err());
    }

    #[test]
    fn plane_obj_and_csv() {
        let patch = sample_patch(&plane, &DomainRect::rect((0.0, 1.0), (0.0, 1.0)), 2, 2).unwrap();
        let obj = obj_string(&patch);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2);
        assert_eq!(
            obj.lines().next().unwrap(),
            "v 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0"
        );
        let csv = csv_string(&patch);
        assert_eq!(csv.lines().next().unwrap(), "u,v,x1,x2,x3,singular");
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(patch.character[0], Some(CausalCharacter::SpaceLike));
    }

    #[test]
    fn absent_vertex_drops_faces() {
        let mut patch = sample_patch(&plane, &DomainRect::rect((0.0, 1.0), (0.0, 1.0)), 2, 2).unwrap();
        patch.vertices[1] = None;
        let obj = obj_string(&patch);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 3);
        // vertices (0,0), (0,1), (1,1) renumber to 1, 2, 3
        let faces: Vec<&str> = obj.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces, ["f 1 3 2"]);
        assert_eq!(csv_string(&patch).lines().count(), 4);
    }

    #[test]
    fn exports_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let patch = sample_patch(&plane, &DomainRect::rect((0.0, 1.0), (-1.0, 1.0)), 4, 3).unwrap();
        let (p1, p2) = (dir.path().join("a.obj"), dir.path().join("b.obj"));
        export_obj(&patch, &p1).unwrap();
        export_obj(&patch, &p2).unwrap();
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
        let missing = dir.path().join("no/such/dir/x.csv");
        assert!(matches!(export_csv(&patch, &missing), Err(Error::Io { .. })));
    }
}
