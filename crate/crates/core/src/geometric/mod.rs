//! Embedded complexes, normalized solid angles, the vertex function φ built from angle
//! sums, and star-isometry classification.
//!
//! Angles are normalized so the full unit sphere of the relevant dimension has measure 1,
//! and are always measured intrinsically inside the affine hull of the simplex, so the
//! ambient dimension may exceed the complex dimension.

mod angles;
mod isometry;
mod phi;
mod tfamily;

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;

use crate::complex::{Complex, Simplex, VertexId};
use crate::constructions::CycleCopy;
use crate::error::{Error, Result};
use crate::io::ComplexFile;

pub use angles::{
    gram_check, gram_check_with, monte_carlo_solid_angle, solid_angle, solid_angle_with, AngleMethod, AngleOptions,
    SolidAngle,
};
pub use isometry::{
    star_isometry_classes, star_isometry_classes_with, star_shape, stars_isometric, StarIsometryClass, StarShape, StarSignature};
pub use phi::{
    lift_stellar_subdivide, p_constant, phi, phi_all, phi_all_with, phi_with, subdivision_invariance_report,
    subdivision_invariance_report_with, verify_geometric_ld, verify_geometric_ld_with, GeometricLdReport, PhiChange,
    SubdivisionReport,
};
pub use tfamily::{
    embed_t_complex, geometric_ld_demo, geometric_ld_demo_with, star_class_system, GeometricDemo, StarClass,
};

/// Normalized Gram determinant below which a simplex counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct EmbeddedComplex {
    complex: Complex,
    coords: BTreeMap<VertexId, Vec<f64>>,
    ambient_dim: usize,
    /// Cycle-copy partition, when built from a `T_{s,t}`.
    pub copies: Option<Vec<CycleCopy>>,
}

impl EmbeddedComplex {
    /// Validates coverage, a common ambient dimension `N ≥ dim K`, finiteness, and
    /// nondegeneracy of every facet (faces of a nondegenerate simplex are nondegenerate).
    pub fn new(complex: Complex, coords: BTreeMap<VertexId, Vec<f64>>) -> Result<Self> {
        if complex.is_empty() {
            return Err(Error::EmptyComplex);
        }
        if let Some(v) = complex.vertices().iter().find(|v| !coords.contains_key(v)) {
            return Err(Error::Coordinates(format!("vertex {v} has no coordinates")));
        }
        if let Some(v) = coords.keys().find(|v| !complex.has_vertex(**v)) {
            return Err(Error::Coordinates(format!("coordinates given for {v}, which is not a vertex")));
        }
        let ambient_dim = coords.values().next().map_or(0, Vec::len);
        for (v, x) in &coords {
            if x.len() != ambient_dim {
                return Err(Error::Coordinates(format!(
                    "vertex {v} has {} coordinates, expected {ambient_dim}",
                    x.len()
                )));
            }
            if x.iter().any(|c| !c.is_finite()) {
                return Err(Error::Coordinates(format!("vertex {v} has a non-finite coordinate")));
            }
        }
        if (ambient_dim as i32) < complex.dim() {
            return Err(Error::Coordinates(format!(
                "ambient dimension {ambient_dim} is below complex dimension {}",
                complex.dim()
            )));
        }
        let e = EmbeddedComplex { complex, coords, ambient_dim, copies: None };
        for sigma in e.complex.facets() {
            let measure = e.normalized_gram(sigma);
            if measure < DEGENERACY_TOL {
                return Err(Error::Degenerate { simplex: sigma.clone(), measure });
            }
        }
        Ok(e)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn coords(&self, v: VertexId) -> &[f64] {
        &self.coords[&v]
    }

    pub fn coords_map(&self) -> &BTreeMap<VertexId, Vec<f64>> {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> i32 {
        self.complex.dim()
    }

    /// `det(EᵀE) / Π|e_j|²` for the edge vectors from the first vertex; 1 for an
    /// orthogonal frame, 0 when degenerate. Vertices count as nondegenerate.
    pub fn normalized_gram(&self, sigma: &Simplex) -> f64 {
        let vs = sigma.vertices();
        if vs.len() <= 1 {
            return 1.0;
        }
        let x0 = self.coords(vs[0]);
        let edges: Vec<Vec<f64>> = vs[1..].iter().map(|&w| sub(self.coords(w), x0)).collect();
        let k = edges.len();
        let gram = DMatrix::from_fn(k, k, |i, j| dot(&edges[i], &edges[j]));
        let scale: f64 = edges.iter().map(|e| dot(e, e)).product();
        if scale == 0.0 {
            return 0.0;
        }
        (gram.determinant() / scale).max(0.0)
    }

    /// Applies `f` to every coordinate vector and revalidates.
    pub fn map_coords(&self, f: impl Fn(VertexId, &[f64]) -> Vec<f64>) -> Result<Self> {
        let coords = self.coords.iter().map(|(&v, x)| (v, f(v, x))).collect();
        let mut e = EmbeddedComplex::new(self.complex.clone(), coords)?;
        e.copies = self.copies.clone();
        Ok(e)
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let complex = file.to_complex()?;
        let coords = file.coords.clone().ok_or_else(|| Error::Coordinates("file has no coords".into()))?;
        EmbeddedComplex::new(complex, coords)
    }

    pub fn to_file(&self, name: Option<String>) -> ComplexFile {
        let mut file = ComplexFile::from_complex(name, &self.complex);
        file.coords = Some(self.coords.clone());
        file
    }
}

/// Reads a complex file that carries coordinates.
pub fn load_embedded(path: impl AsRef<Path>) -> Result<EmbeddedComplex> {
    EmbeddedComplex::from_file(&ComplexFile::read(path)?)
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplex_boundary;

    pub(crate) fn tetrahedron() -> EmbeddedComplex {
        let s = 1.0 / 2f64.sqrt();
        let coords = BTreeMap::from([
            (0, vec![1.0, 0.0, -s]),
            (1, vec![-1.0, 0.0, -s]),
            (2, vec![0.0, 1.0, s]),
            (3, vec![0.0, -1.0, s]),
        ]);
        EmbeddedComplex::new(simplex_boundary(3).unwrap(), coords).unwrap()
    }

    #[test]
    fn validates() {
        let e = tetrahedron();
        assert_eq!(e.ambient_dim(), 3);
        let k = Complex::from_facets([[0u32, 1, 2]]).unwrap();
        let collinear = BTreeMap::from([(0, vec![0.0, 0.0]), (1, vec![1.0, 0.0]), (2, vec![2.0, 0.0])]);
        assert!(matches!(EmbeddedComplex::new(k.clone(), collinear), Err(Error::Degenerate { .. })));
        let missing = BTreeMap::from([(0, vec![0.0, 0.0]), (1, vec![1.0, 0.0])]);
        assert!(matches!(EmbeddedComplex::new(k.clone(), missing), Err(Error::Coordinates(_))));
        let ragged = BTreeMap::from([(0, vec![0.0, 0.0]), (1, vec![1.0, 0.0]), (2, vec![0.0])]);
        assert!(matches!(EmbeddedComplex::new(k.clone(), ragged), Err(Error::Coordinates(_))));
        let low = BTreeMap::from([(0, vec![0.0]), (1, vec![1.0]), (2, vec![3.0])]);
        assert!(matches!(EmbeddedComplex::new(k, low), Err(Error::Coordinates(_))));
    }

    #[test]
    fn file_round_trip() {
        let e = tetrahedron();
        let file = e.to_file(Some("tet".into()));
        let back = EmbeddedComplex::from_file(&ComplexFile::parse(&file.to_json()).unwrap()).unwrap();
        assert_eq!(back.coords_map(), e.coords_map());
        assert!(EmbeddedComplex::from_file(&ComplexFile::from_complex(None, e.complex())).is_err());
    }
}
