use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::isometry::{classify, star_isometry_classes_with, star_shape, StarIsometryClass, StarSignature};
use super::EmbeddedComplex;
use crate::complex::VertexId;
use crate::constructions::{t_complex, TFamilySpec};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::functionals::LinearFunctional;
use crate::solver::{solve, ClassLabel, ClassTable, LDSystem, LDVerdict};

/// `T_{p−u,u}` in `ℝ^{2p}`: cycle copy `j` lies on the unit circle of coordinate plane
/// `(2j, 2j+1)`, vertices equally spaced.
pub fn embed_t_complex(p: u32, u: u32, n: u32, m: u32) -> Result<EmbeddedComplex> {
    if p < 1 || u > p {
        return Err(Error::InvalidParameter(format!("need 0 <= u <= p and p >= 1, got p={p}, u={u}")));
    }
    if n < 4 || m < 4 || n == m {
        return Err(Error::InvalidParameter(format!("need n, m >= 4 and n != m, got n={n}, m={m}")));
    }
    let t = t_complex(TFamilySpec::new(p - u, u, n, m))?;
    let dim = 2 * p as usize;
    let mut coords = BTreeMap::new();
    for (j, copy) in t.copies.iter().enumerate() {
        for (k, v) in copy.vertices().enumerate() {
            let theta = 2.0 * PI * k as f64 / copy.length as f64;
            let mut x = vec![0.0; dim];
            x[2 * j] = theta.cos();
            x[2 * j + 1] = theta.sin();
            coords.insert(v, x);
        }
    }
    let mut e = EmbeddedComplex::new(t.complex, coords)?;
    e.copies = Some(t.copies);
    Ok(e)
}

/// A star-isometry class merged across a family: members are `(row, vertex)`.
#[derive(Clone, Debug)]
pub struct StarClass {
    pub representative: (usize, VertexId),
    pub members: Vec<(usize, VertexId)>,
    pub signature: StarSignature,
}

impl ClassLabel for StarClass {
    fn label(&self) -> String {
        let (row, v) = self.representative;
        format!("star of vertex {v} in member {row} ({} vertices, {} facets)", self.signature.num_vertices, self.signature.num_facets)
    }
}

/// Local-determinability system over an embedded family with one unknown per
/// star-isometry class, merged across members only when a center-fixing isometry exists.
pub fn star_class_system(
    family: &[EmbeddedComplex],
    f: &LinearFunctional,
    tol: f64,
    mode: Execution,
) -> Result<LDSystem<StarClass>> {
    if family.is_empty() {
        return Err(Error::Precondition("family must be nonempty".into()));
    }
    let items: Vec<(usize, VertexId)> =
        family.iter().enumerate().flat_map(|(row, e)| e.complex().vertices().iter().map(move |&v| (row, v))).collect();
    let shapes = exec::map(mode, &items, |&(row, v)| star_shape(&family[row], v));
    let class_of = classify(&shapes, tol);

    let mut classes: Vec<StarClass> = Vec::new();
    let mut counts = vec![Vec::new(); family.len()];
    for ((&item, shape), &c) in items.iter().zip(&shapes).zip(&class_of) {
        if c == classes.len() {
            classes.push(StarClass { representative: item, members: Vec::new(), signature: shape.signature.clone() });
            counts.iter_mut().for_each(|row: &mut Vec<u64>| row.push(0));
        }
        classes[c].members.push(item);
        counts[item.0][c] += 1;
    }
    let rhs = family.iter().map(|e| f.evaluate(e.complex())).collect::<Result<Vec<_>>>()?;
    Ok(LDSystem { table: ClassTable { classes, counts }, rhs })
}

#[derive(Clone, Debug)]
pub struct GeometricDemo {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub family: Vec<EmbeddedComplex>,
    /// Star-isometry classes inside each member separately.
    pub member_classes: Vec<Vec<StarIsometryClass>>,
    /// Unknowns are star classes merged across the whole family.
    pub system: LDSystem<StarClass>,
    pub verdict: LDVerdict,
}

pub fn geometric_ld_demo(p: u32, n: u32, m: u32, f: &LinearFunctional) -> Result<GeometricDemo> {
    geometric_ld_demo_with(p, n, m, f, 1e-9, Execution::default())
}

/// [`star_class_system`] for the embedded counterexample family `T_{p−u,u}`, `u = 0..=p`.
pub fn geometric_ld_demo_with(
    p: u32,
    n: u32,
    m: u32,
    f: &LinearFunctional,
    tol: f64,
    mode: Execution,
) -> Result<GeometricDemo> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p must be at least 2, got {p}")));
    }
    let family = (0..=p).map(|u| embed_t_complex(p, u, n, m)).collect::<Result<Vec<_>>>()?;
    let member_classes = family.iter().map(|e| star_isometry_classes_with(e, tol, mode)).collect();
    let system = star_class_system(&family, f, tol, mode)?;
    let verdict = solve(&system);
    Ok(GeometricDemo { p, n, m, family, member_classes, system, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometric::star_isometry_classes;

    #[test]
    fn embedding_shape() {
        let e = embed_t_complex(2, 0, 4, 5).unwrap();
        assert_eq!(e.complex().num_vertices(), 8);
        assert_eq!(e.ambient_dim(), 4);
        for x in e.coords_map().values() {
            let r2 = x.iter().map(|c| c * c).sum::<f64>();
            assert!((r2 - 1.0).abs() < 1e-12);
        }
        assert!(embed_t_complex(2, 3, 4, 5).is_err());
        assert!(embed_t_complex(2, 1, 4, 4).is_err());
        assert!(embed_t_complex(2, 1, 3, 5).is_err());
    }

    #[test]
    fn classes_within_members() {
        let classes = star_isometry_classes(&embed_t_complex(2, 1, 4, 5).unwrap(), 1e-9);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 5]);
        for u in [0, 2] {
            assert_eq!(star_isometry_classes(&embed_t_complex(2, u, 4, 5).unwrap(), 1e-9).len(), 1);
        }
        let classes = star_isometry_classes(&embed_t_complex(3, 1, 4, 6).unwrap(), 1e-9);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![6, 8]);
    }

    /// A `C_n`-vertex of `T_{p−u,u}` and a `C_m`-vertex of `T_{p−u−1,u+1}` have
    /// combinatorially equal links, but their cycle neighbours sit at chord lengths
    /// `2 sin(π/n)` vs `2 sin(π/m)`, so no star isometry exists across members: the
    /// family yields four classes for p = 2 and every row has its own unknowns.
    #[test]
    fn merged_classes_do_not_couple_members() {
        let d = geometric_ld_demo(2, 4, 5, &LinearFunctional::charney_davis(3)).unwrap();
        assert_eq!(d.system.table.classes.len(), 4);
        assert_eq!(d.system.table.counts, vec![vec![8, 0, 0, 0], vec![0, 4, 5, 0], vec![0, 0, 0, 10]]);
        assert!(d.verdict.is_consistent());
        assert!(d.verdict.verify(&d.system));
        let e = geometric_ld_demo(2, 4, 5, &LinearFunctional::euler(3)).unwrap();
        assert!(e.verdict.is_consistent());
    }
}
