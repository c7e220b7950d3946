//! Sampling a front on a grid and writing it out as OBJ or CSV.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::surface::Surface;

/// Radius of the disks cut out around punctures.
pub const DEFAULT_EXCLUSION: f64 = 0.05;

/// `||rho| - 1|` below which a vertex is flagged singular outright.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based vertex indices.
    pub faces: Vec<[usize; 3]>,
    pub singular_flags: Vec<bool>,
    pub domain_points: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    pub exclusion: f64,
    pub singular_tol: f64,
}

impl Default for MeshOptions {
    fn default() -> Self {
        Self {
            exclusion: DEFAULT_EXCLUSION,
            singular_tol: DEFAULT_SINGULAR_TOL,
        }
    }
}

struct Sample {
    point: Complex64,
    position: [f64; 3],
    gap: Option<f64>,
}

/// Evaluates `psi` on the grid, drops samples within `exclusion` of a
/// puncture (a lattice point on the torus) and triangulates what is left.
///
/// A vertex is flagged singular when `||rho| - 1| < singular_tol`, or when
/// `|rho| - 1` changes sign along one of its grid edges and this vertex is
/// the endpoint closer to the zero. The second rule puts exactly one layer
/// of flagged vertices along every crossing of the singular curve.
pub fn sample_mesh(surface: &Surface, grid: &GridSpec, options: MeshOptions) -> Result<SurfaceMesh> {
    let domain = &surface.data().domain;
    let g = grid.build(domain.lattice())?;
    // surfaces the period gate before any work is done
    if let Some(&z) = g.points.first() {
        if let Err(e @ Error::PeriodConditionViolated { .. }) = surface.psi(z) {
            return Err(e);
        }
    }
    let samples: Vec<Option<Sample>> = g
        .points
        .par_iter()
        .map(|&z| {
            if domain.distance_to_punctures(z) < options.exclusion {
                return Ok(None);
            }
            let psi = match surface.psi(z) {
                Ok(p) => p,
                Err(e @ Error::PeriodConditionViolated { .. }) => return Err(e),
                Err(_) => return Ok(None),
            };
            let position = psi.to_array();
            if position.iter().any(|c| !c.is_finite()) {
                return Ok(None);
            }
            Ok(Some(Sample {
                point: z,
                position,
                gap: surface.rho_gap(z).ok().flatten(),
            }))
        })
        .collect::<Result<_>>()?;

    let mut index = vec![usize::MAX; samples.len()];
    let mut mesh = SurfaceMesh {
        vertices: Vec::new(),
        faces: Vec::new(),
        singular_flags: Vec::new(),
        domain_points: Vec::new(),
    };
    for (k, s) in samples.iter().enumerate() {
        if let Some(s) = s {
            index[k] = mesh.vertices.len();
            mesh.vertices.push(s.position);
            mesh.domain_points.push(s.point);
            mesh.singular_flags.push(s.gap.is_some_and(|d| d.abs() < options.singular_tol));
        }
    }
    if mesh.vertices.is_empty() {
        return Err(Error::EmptyMesh);
    }

    let gap = |k: usize| samples[k].as_ref().and_then(|s| s.gap);
    for (a, b) in g.edges() {
        let (Some(ga), Some(gb)) = (gap(a), gap(b)) else {
            continue;
        };
        if ga.signum() != gb.signum() && ga != 0.0 && gb != 0.0 {
            let nearer = if ga.abs() <= gb.abs() { a } else { b };
            mesh.singular_flags[index[nearer]] = true;
        }
    }

    for [a, b, c, d] in g.quads() {
        for tri in [[a, b, c], [a, c, d]] {
            if tri.iter().all(|&k| index[k] != usize::MAX) {
                mesh.faces.push(tri.map(|k| index[k]));
            }
        }
    }
    Ok(mesh)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Obj,
    Csv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(Self::Obj),
            "csv" => Ok(Self::Csv),
            other => Err(Error::InvalidInput(format!("unknown mesh format '{other}'"))),
        }
    }
}

/// Shortest round-trip decimal form, so output is exact and deterministic.
pub fn to_obj(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    for [x, y, z] in &mesh.vertices {
        let _ = writeln!(out, "v {x} {y} {z}");
    }
    for [a, b, c] in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
    }
    out
}

/// One row per vertex. A view factor scales the third coordinate and is
/// recorded in a leading comment line.
pub fn to_csv(mesh: &SurfaceMesh, z_view_factor: Option<f64>) -> String {
    let mut out = String::new();
    if let Some(f) = z_view_factor {
        let _ = writeln!(out, "# z_view_factor={f}");
    }
    out.push_str("re,im,x,y,z,singular\n");
    let scale = z_view_factor.unwrap_or(1.0);
    for (k, [x, y, z]) in mesh.vertices.iter().enumerate() {
        let p = mesh.domain_points[k];
        let _ = writeln!(
            out,
            "{},{},{x},{y},{},{}",
            p.re,
            p.im,
            z * scale,
            u8::from(mesh.singular_flags[k])
        );
    }
    out
}

pub fn export(mesh: &SurfaceMesh, format: ExportFormat) -> String {
    match format {
        ExportFormat::Obj => to_obj(mesh),
        ExportFormat::Csv => to_csv(mesh, None),
    }
}

/// Vertices and zero-based faces read back from OBJ text.
pub type ObjContents = (Vec<[f64; 3]>, Vec<[usize; 3]>);

/// Reads the `v` and `f` lines of an OBJ file; face indices become zero-based.
pub fn parse_obj(text: &str) -> Result<ObjContents> {
    let bad = |line: &str| Error::InvalidInput(format!("malformed OBJ line '{line}'"));
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let v: Vec<f64> = it
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                let [x, y, z] = v[..] else { return Err(bad(line)) };
                vertices.push([x, y, z]);
            }
            Some("f") => {
                let f: Vec<usize> = it
                    .map(|t| t.split('/').next().unwrap_or(t).parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(line))?;
                let [a, b, c] = f[..] else { return Err(bad(line)) };
                if a == 0 || b == 0 || c == 0 {
                    return Err(bad(line));
                }
                faces.push([a - 1, b - 1, c - 1]);
            }
            _ => {}
        }
    }
    Ok((vertices, faces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_data;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rotational(a: f64) -> Surface {
        let params = [("a".to_string(), vec![c(a)])].into_iter().collect();
        Surface::new(catalog_data("rotational", &params).unwrap().0).unwrap()
    }

    fn triangle() -> SurfaceMesh {
        SurfaceMesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.5], [0.0, 1.0, -0.25]],
            faces: vec![[0, 1, 2]],
            singular_flags: vec![false, true, false],
            domain_points: vec![c(0.0), c(1.0), Complex64::i()],
        }
    }

    #[test]
    fn rotational_flags_the_ring_nearest_the_singular_circle() {
        let s = rotational(2.0);
        let grid = GridSpec::annulus(0.2, 2.0, 64, 64);
        let mesh = sample_mesh(&s, &grid, MeshOptions::default()).unwrap();
        assert_eq!(mesh.vertices.len(), 4096);
        let target = 0.5f64.sqrt();
        let ring = |r: f64| ((r - 0.2) / (1.8 / 63.0)).round() as usize;
        let nearest = ring(target);
        for (k, &flag) in mesh.singular_flags.iter().enumerate() {
            let r = mesh.domain_points[k].norm();
            assert_eq!(flag, ring(r) == nearest, "vertex {k} at r = {r}");
        }
    }

    #[test]
    fn small_obj_has_one_line_per_element() {
        let obj = to_obj(&triangle());
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 1);
        assert!(obj.contains("f 1 2 3"));
    }

    #[test]
    fn csv_has_header_and_one_row_per_vertex() {
        let m = triangle();
        let csv = to_csv(&m, None);
        assert_eq!(csv.lines().count(), m.vertices.len() + 1);
        assert_eq!(csv.lines().next(), Some("re,im,x,y,z,singular"));
        let scaled = to_csv(&m, Some(2.0));
        assert!(scaled.starts_with("# z_view_factor=2\n"));
        assert!(scaled.lines().nth(3).unwrap().ends_with(",1,1"));
    }

    #[test]
    fn obj_round_trips() {
        let s = rotational(2.0);
        let mesh = sample_mesh(&s, &GridSpec::annulus(0.3, 1.5, 9, 12), MeshOptions::default()).unwrap();
        let (v, f) = parse_obj(&to_obj(&mesh)).unwrap();
        assert_eq!(f, mesh.faces);
        for (a, b) in v.iter().zip(&mesh.vertices) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() <= 1e-9 * b[k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn excluded_disk_leaves_a_hole() {
        let s = rotational(2.0);
        let grid = GridSpec {
            kind: crate::grid::GridKind::Rect {
                min: Complex64::new(-1.0, -1.0),
                max: Complex64::new(1.0, 1.0),
            },
            n: 21,
            m: 21,
        };
        let mesh = sample_mesh(&s, &grid, MeshOptions { exclusion: 0.25, ..Default::default() }).unwrap();
        assert!(mesh.vertices.len() < 441);
        assert!(mesh.domain_points.iter().all(|p| p.norm() >= 0.25));
        let n = mesh.vertices.len();
        assert!(mesh.faces.iter().flatten().all(|&k| k < n));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_obj("v 1 2").is_err());
        assert!(parse_obj("f 0 1 2").is_err());
    }
}
