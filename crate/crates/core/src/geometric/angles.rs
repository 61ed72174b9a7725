use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{dot, norm, sub, EmbeddedComplex};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

const CHUNK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleMethod {
    Exact,
    MonteCarlo { samples: u64, std_error: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolidAngle {
    /// Fraction of the unit sphere, in `[0, 1]`.
    pub value: f64,
    pub method: AngleMethod,
}

#[derive(Clone, Copy, Debug)]
pub struct AngleOptions {
    /// Monte Carlo sample count for cones of dimension ≥ 4.
    pub samples: u64,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for AngleOptions {
    fn default() -> Self {
        AngleOptions { samples: 1_000_000, seed: 0, exec: Execution::default() }
    }
}

/// Solid angle of `sigma` along its face `eta`, with default options.
pub fn solid_angle(e: &EmbeddedComplex, eta: &Simplex, sigma: &Simplex) -> Result<SolidAngle> {
    solid_angle_with(e, eta, sigma, &AngleOptions::default())
}

/// Exact for cones of dimension 2 (planar angle) and 3 (spherical excess); Monte Carlo
/// otherwise.
pub fn solid_angle_with(e: &EmbeddedComplex, eta: &Simplex, sigma: &Simplex, opts: &AngleOptions) -> Result<SolidAngle> {
    let gens = cone_generators(e, eta, sigma)?;
    Ok(match gens.len() {
        2 => SolidAngle { value: planar_angle(&gens[0], &gens[1]) / (2.0 * PI), method: AngleMethod::Exact },
        3 => SolidAngle { value: trihedral_angle(&gens) / (4.0 * PI), method: AngleMethod::Exact },
        _ => monte_carlo(&gens, opts),
    })
}

/// Direction-sampling estimate regardless of cone dimension.
pub fn monte_carlo_solid_angle(
    e: &EmbeddedComplex,
    eta: &Simplex,
    sigma: &Simplex,
    opts: &AngleOptions,
) -> Result<SolidAngle> {
    Ok(monte_carlo(&cone_generators(e, eta, sigma)?, opts))
}

/// `Σ_{η ⊂ σ, 0 ≤ dim η ≤ n−2} (−1)^{dim η} α(η, σ)`, expected to equal `(−1)^n (n−1)/2`.
pub fn gram_check(e: &EmbeddedComplex, sigma: &Simplex) -> Result<f64> {
    gram_check_with(e, sigma, &AngleOptions::default())
}

pub fn gram_check_with(e: &EmbeddedComplex, sigma: &Simplex, opts: &AngleOptions) -> Result<f64> {
    let n = sigma.dim();
    let mut total = 0.0;
    for eta in sigma.faces().filter(|eta| eta.dim() <= n - 2) {
        let a = solid_angle_with(e, &eta, sigma, opts)?.value;
        total += if eta.dim() % 2 == 0 { a } else { -a };
    }
    Ok(total)
}

/// Generators of the tangent cone of `sigma` along `eta`, written in an orthonormal
/// basis of the orthogonal complement of `eta`'s span inside `sigma`'s span.
fn cone_generators(e: &EmbeddedComplex, eta: &Simplex, sigma: &Simplex) -> Result<Vec<Vec<f64>>> {
    if !e.complex().contains_face(sigma) {
        return Err(Error::NotAFace(sigma.clone()));
    }
    if eta.is_empty() || !eta.is_subset_of(sigma) {
        return Err(Error::NotAFace(eta.clone()));
    }
    if eta.dim() > sigma.dim() - 2 {
        return Err(Error::InvalidParameter(format!(
            "face dimension {} must be at most {} for a {}-simplex",
            eta.dim(),
            sigma.dim() - 2,
            sigma.dim()
        )));
    }
    let x0 = e.coords(eta.vertices()[0]);
    let eta_basis = orthonormalize(eta.vertices()[1..].iter().map(|&w| sub(e.coords(w), x0)));
    let projected: Vec<Vec<f64>> = sigma
        .difference(eta)
        .vertices()
        .iter()
        .map(|&w| reject(sub(e.coords(w), x0), &eta_basis))
        .collect();
    let basis = orthonormalize(projected.iter().cloned());
    if basis.len() != projected.len() {
        return Err(Error::Degenerate { simplex: sigma.clone(), measure: e.normalized_gram(sigma) });
    }
    Ok(projected.iter().map(|u| basis.iter().map(|q| dot(q, u)).collect()).collect())
}

/// Removes the components of `v` along the orthonormal `basis`.
fn reject(mut v: Vec<f64>, basis: &[Vec<f64>]) -> Vec<f64> {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, &v);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
        }
    }
    v
}

/// Modified Gram–Schmidt with reorthogonalization; drops numerically dependent inputs.
fn orthonormalize(vs: impl Iterator<Item = Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let scale = norm(&v);
        let w = reject(v, &basis);
        let len = norm(&w);
        if scale > 0.0 && len > 1e-10 * scale {
            basis.push(w.into_iter().map(|x| x / len).collect());
        }
    }
    basis
}

fn planar_angle(a: &[f64], b: &[f64]) -> f64 {
    (a[0] * b[1] - a[1] * b[0]).abs().atan2(dot(a, b))
}

/// Solid angle (steradians) of the cone over three vectors in ℝ³ via spherical excess:
/// the sum of the cone's dihedral angles minus π.
fn trihedral_angle(g: &[Vec<f64>]) -> f64 {
    let dihedral = |a: &[f64], b: &[f64], c: &[f64]| {
        let ah: Vec<f64> = a.iter().map(|x| x / norm(a)).collect();
        let b = reject(b.to_vec(), std::slice::from_ref(&ah));
        let c = reject(c.to_vec(), std::slice::from_ref(&ah));
        norm(&cross(&b, &c)).atan2(dot(&b, &c))
    };
    let excess = dihedral(&g[0], &g[1], &g[2]) + dihedral(&g[1], &g[2], &g[0]) + dihedral(&g[2], &g[0], &g[1]) - PI;
    excess.max(0.0)
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Fraction of isotropic Gaussian directions whose cone coordinates are all nonnegative.
/// Chunk `i` draws from stream `i` of a ChaCha8 generator keyed by the seed, so the
/// estimate is the same whatever the thread count.
fn monte_carlo(gens: &[Vec<f64>], opts: &AngleOptions) -> SolidAngle {
    let k = gens.len();
    let c = DMatrix::from_fn(k, k, |i, j| gens[j][i]);
    let inv = c.try_inverse().expect("cone generators are linearly independent");
    let samples = opts.samples.max(1);
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = exec::map_range(opts.exec, chunks as usize, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(chunk as u64);
        let len = CHUNK.min(samples - chunk as u64 * CHUNK);
        let mut y = DVector::<f64>::zeros(k);
        let mut count = 0u64;
        for _ in 0..len {
            y.iter_mut().for_each(|x| *x = rng.sample(StandardNormal));
            if (&inv * &y).iter().all(|&x| x >= 0.0) {
                count += 1;
            }
        }
        count
    })
    .into_iter()
    .sum();
    let value = hits as f64 / samples as f64;
    let std_error = (value * (1.0 - value) / samples as f64).sqrt();
    SolidAngle { value, method: AngleMethod::MonteCarlo { samples, std_error } }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::tests::tetrahedron;
    use super::*;
    use crate::complex::Complex;
    use crate::constructions::simplex_boundary;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    /// Van Oosterom–Strackee: tan(Ω/2) = |a·(b×c)| / (abc + (a·b)c + (a·c)b + (b·c)a).
    fn oosterom_strackee(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        let (na, nb, nc) = (norm(a), norm(b), norm(c));
        let num = dot(a, &cross(b, c)).abs();
        let den = na * nb * nc + dot(a, b) * nc + dot(a, c) * nb + dot(b, c) * na;
        2.0 * num.atan2(den)
    }

    fn solid_tet(pts: [[f64; 3]; 4]) -> EmbeddedComplex {
        let coords = (0..4u32).map(|i| (i, pts[i as usize].to_vec())).collect();
        EmbeddedComplex::new(Complex::from_facets([[0u32, 1, 2, 3]]).unwrap(), coords).unwrap()
    }

    #[test]
    fn equilateral_triangle_vertex() {
        let h = 3f64.sqrt() / 2.0;
        let coords = BTreeMap::from([(0, vec![0.0, 0.0, 5.0]), (1, vec![1.0, 0.0, 5.0]), (2, vec![0.5, h, 5.0])]);
        let e = EmbeddedComplex::new(Complex::from_facets([[0u32, 1, 2]]).unwrap(), coords).unwrap();
        let a = solid_angle(&e, &s(&[0]), &s(&[0, 1, 2])).unwrap();
        assert!((a.value - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(a.method, AngleMethod::Exact);
        assert!((gram_check(&e, &s(&[0, 1, 2])).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn regular_tetrahedron_angles() {
        let s8 = 1.0 / 2f64.sqrt();
        let e = solid_tet([[1.0, 0.0, -s8], [-1.0, 0.0, -s8], [0.0, 1.0, s8], [0.0, -1.0, s8]]);
        let sigma = s(&[0, 1, 2, 3]);
        let vertex = solid_angle(&e, &s(&[0]), &sigma).unwrap().value;
        let edge = solid_angle(&e, &s(&[0, 1]), &sigma).unwrap().value;
        assert!((vertex - 0.04386991402295545).abs() < 1e-12);
        assert!((edge - (1.0f64 / 3.0).acos() / (2.0 * PI)).abs() < 1e-12);
        assert!((gram_check(&e, &sigma).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spherical_excess_matches_oosterom_strackee() {
        let pts = [[0.1, -0.3, 0.2], [1.7, 0.2, -0.1], [0.4, 2.1, 0.3], [0.2, 0.5, 1.9]];
        let e = solid_tet(pts);
        for apex in 0..4usize {
            let others: Vec<Vec<f64>> =
                (0..4).filter(|&j| j != apex).map(|j| sub(&pts[j], &pts[apex])).collect();
            let want = oosterom_strackee(&others[0], &others[1], &others[2]) / (4.0 * PI);
            let got = solid_angle(&e, &s(&[apex as u32]), &s(&[0, 1, 2, 3])).unwrap().value;
            assert!((got - want).abs() < 1e-12, "apex {apex}: {got} vs {want}");
        }
    }

    #[test]
    fn intrinsic_in_higher_ambient_dimension() {
        // a planar right angle sitting in ℝ⁵
        let coords = BTreeMap::from([
            (0, vec![1.0, 1.0, 1.0, 1.0, 1.0]),
            (1, vec![1.0, 3.0, 1.0, 1.0, 1.0]),
            (2, vec![1.0, 1.0, 1.0, 1.0, 4.0]),
        ]);
        let e = EmbeddedComplex::new(Complex::from_facets([[0u32, 1, 2]]).unwrap(), coords).unwrap();
        assert!((solid_angle(&e, &s(&[0]), &s(&[0, 1, 2])).unwrap().value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_agrees_and_is_schedule_independent() {
        let e = tetrahedron();
        let sigma = s(&[0, 1, 2]);
        let exact = solid_angle(&e, &s(&[0]), &sigma).unwrap().value;
        let seq = AngleOptions { samples: 200_000, seed: 7, exec: Execution::Sequential };
        let par = AngleOptions { exec: Execution::Parallel, ..seq };
        let a = monte_carlo_solid_angle(&e, &s(&[0]), &sigma, &seq).unwrap();
        let b = monte_carlo_solid_angle(&e, &s(&[0]), &sigma, &par).unwrap();
        assert_eq!(a, b);
        let AngleMethod::MonteCarlo { std_error, .. } = a.method else { panic!() };
        assert!((a.value - exact).abs() < 4.0 * std_error);
    }

    #[test]
    fn four_dimensional_cone_uses_monte_carlo() {
        // vertex of the standard 4-simplex: orthant cone, fraction 1/16
        let mut coords = BTreeMap::new();
        coords.insert(0, vec![0.0; 4]);
        for i in 0..4 {
            let mut x = vec![0.0; 4];
            x[i] = 1.0;
            coords.insert(i as u32 + 1, x);
        }
        let e = EmbeddedComplex::new(Complex::from_facets([[0u32, 1, 2, 3, 4]]).unwrap(), coords).unwrap();
        let a = solid_angle_with(&e, &s(&[0]), &s(&[0, 1, 2, 3, 4]), &AngleOptions { samples: 100_000, ..Default::default() })
            .unwrap();
        let AngleMethod::MonteCarlo { std_error, samples } = a.method else { panic!() };
        assert_eq!(samples, 100_000);
        assert!((a.value - 1.0 / 16.0).abs() < 4.0 * std_error);
        // codimension-3 face of the same simplex is an exact trihedral cone: the orthant's 1/8
        let b = solid_angle(&e, &s(&[0, 1]), &s(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(b.method, AngleMethod::Exact);
        assert!((b.value - 0.125).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_faces() {
        let e = EmbeddedComplex::new(
            simplex_boundary(3).unwrap(),
            tetrahedron().coords_map().clone(),
        )
        .unwrap();
        assert!(solid_angle(&e, &s(&[0, 1]), &s(&[0, 1, 2])).is_err());
        assert!(solid_angle(&e, &s(&[3]), &s(&[0, 1, 2])).is_err());
        assert!(solid_angle(&e, &s(&[0]), &s(&[0, 1, 2, 3])).is_err());
    }
}
