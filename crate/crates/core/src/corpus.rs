//! Seeded generators for test and benchmark corpora: random small complexes, named
//! spheres and surfaces, and embedded complexes for the geometric checks.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::rat;
use crate::complex::{Complex, Simplex, VertexId};
use crate::constructions::{cycle_complex, simplex_boundary, suspension, t_complex, zero_sphere, TFamilySpec};
use crate::functionals::LinearFunctional;
use crate::geometric::EmbeddedComplex;

/// A random complex on at most `max_vertices` vertices with facets of up to 4 vertices;
/// typically neither pure nor a manifold.
pub fn random_complex(rng: &mut impl Rng, max_vertices: u32) -> Complex {
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let labels: Vec<VertexId> = (0..nv).collect();
    let num_facets = rng.gen_range(1..=2 * nv as usize);
    let facets: Vec<Vec<VertexId>> = (0..num_facets)
        .map(|_| {
            let size = rng.gen_range(1..=nv.min(4) as usize);
            labels.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Complex::from_facets(facets).expect("distinct labels per facet")
}

/// The same complex with vertex labels permuted into a random sparse label set.
pub fn random_relabel(rng: &mut impl Rng, k: &Complex) -> Complex {
    let mut pool: Vec<VertexId> = (0..4 * k.num_vertices() as u32 + 4).collect();
    pool.shuffle(rng);
    let map: BTreeMap<VertexId, VertexId> = k.vertices().iter().copied().zip(pool).collect();
    k.relabel(|v| map[&v])
}

pub fn octahedron() -> Complex {
    suspension(&cycle_complex(4).expect("n >= 3"))
}

pub fn icosahedron() -> Complex {
    // two poles, two staggered pentagons
    let mut facets = Vec::new();
    for i in 0..5u32 {
        let (a, b) = (1 + i, 1 + (i + 1) % 5);
        let (c, d) = (6 + i, 6 + (i + 1) % 5);
        facets.push(vec![0, a, b]);
        facets.push(vec![11, c, d]);
        facets.push(vec![a, b, c]);
        facets.push(vec![b, c, d]);
    }
    Complex::from_facets(facets).expect("valid facets")
}

/// Ten pairwise non-isomorphic triangulated 2-spheres.
pub fn two_spheres() -> Vec<Complex> {
    let mut candidates = vec![simplex_boundary(3).expect("k >= 1")];
    candidates.extend((3..=9).map(|n| suspension(&cycle_complex(n).expect("n >= 3"))));
    candidates.push(icosahedron());
    let face = Simplex::new([0, 1, 2]).expect("distinct");
    candidates.push(icosahedron().stellar_subdivide(&face).expect("face of the icosahedron").0);
    let mut seen = std::collections::BTreeSet::new();
    candidates.retain(|k| seen.insert(k.canonical_key()));
    candidates.truncate(10);
    candidates
}

/// Named complexes plus random ones, `count` in total, deliberately including
/// non-manifolds, non-pure complexes and isolated vertices.
pub fn mixed_corpus(rng: &mut impl Rng, count: usize) -> Vec<Complex> {
    let mut out = vec![
        zero_sphere(),
        cycle_complex(3).expect("n >= 3"),
        cycle_complex(6).expect("n >= 3"),
        simplex_boundary(3).expect("k >= 1"),
        simplex_boundary(4).expect("k >= 1"),
        octahedron(),
        icosahedron(),
        t_complex(TFamilySpec::new(1, 1, 4, 5)).expect("valid").complex,
        t_complex(TFamilySpec::new(2, 0, 4, 4)).expect("valid").complex,
        Complex::from_facets([[0u32, 1, 2], [0, 3, 4]]).expect("bowtie"),
        Complex::from_facets(vec![vec![0u32, 1, 2], vec![2, 3], vec![5]]).expect("non-pure"),
        Complex::from_facets([[0u32, 1, 2, 3]]).expect("solid simplex"),
    ];
    while out.len() < count {
        out.push(random_complex(rng, 8));
    }
    out.truncate(count);
    out
}

/// Small random rational with numerator in `-9..=9` and denominator in `1..=6`.
pub fn random_rational(rng: &mut impl Rng) -> num_rational::BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

/// Random functional `b_{−1}, …, b_{max_dim}`; `b_{−1} = 0` unless `with_constant`.
pub fn random_functional(rng: &mut impl Rng, max_dim: u32, with_constant: bool) -> LinearFunctional {
    let mut coeffs: Vec<_> = (0..=max_dim as usize + 1).map(|_| random_rational(rng)).collect();
    if !with_constant {
        coeffs[0] = rat(0, 1);
    }
    LinearFunctional::new(coeffs).expect("nonempty")
}

fn embed(k: Complex, coords: BTreeMap<VertexId, Vec<f64>>) -> EmbeddedComplex {
    EmbeddedComplex::new(k, coords).expect("generator produces a valid embedding")
}

/// A single `k`-simplex in `ℝ^k` with normalized Gram determinant at least `1e−3`.
pub fn random_simplex(rng: &mut impl Rng, k: usize) -> EmbeddedComplex {
    let facet: Vec<VertexId> = (0..=k as u32).collect();
    let complex = Complex::from_facets([facet]).expect("distinct");
    loop {
        let coords: BTreeMap<VertexId, Vec<f64>> =
            (0..=k as u32).map(|v| (v, (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect())).collect();
        if let Ok(e) = EmbeddedComplex::new(complex.clone(), coords) {
            if e.normalized_gram(&complex.facets()[0]) >= 1e-3 {
                return e;
            }
        }
    }
}

pub fn regular_octahedron() -> EmbeddedComplex {
    let mut coords = BTreeMap::from([(0, vec![0.0, 0.0, 1.0]), (1, vec![0.0, 0.0, -1.0])]);
    for (i, x) in [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]].iter().enumerate() {
        coords.insert(i as u32 + 2, vec![x[0], x[1], 0.0]);
    }
    embed(octahedron(), coords)
}

/// A 100-triangle sphere: the octahedron after 46 stellar subdivisions of random
/// triangles, new vertices pushed radially onto the unit sphere.
pub fn irregular_sphere(rng: &mut impl Rng) -> EmbeddedComplex {
    let mut e = regular_octahedron();
    for _ in 0..46 {
        let facets = e.complex().facets();
        let face = facets[rng.gen_range(0..facets.len())].clone();
        let (k, apex) = e.complex().stellar_subdivide(&face).expect("facet of the complex");
        let mut c = vec![0.0; 3];
        for &v in face.vertices() {
            c.iter_mut().zip(e.coords(v)).for_each(|(a, x)| *a += x);
        }
        let r = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut coords = e.coords_map().clone();
        coords.insert(apex, c.into_iter().map(|x| x / r).collect());
        e = embed(k, coords);
    }
    e
}

/// `a × b` grid torus, each square split along the same diagonal.
pub fn grid_torus(a: u32, b: u32) -> Complex {
    let id = |i: u32, j: u32| (i % a) * b + (j % b);
    let mut facets = Vec::new();
    for i in 0..a {
        for j in 0..b {
            facets.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            facets.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    Complex::from_facets(facets).expect("a, b >= 3")
}

/// The grid torus on the Clifford torus in `ℝ⁴`: intrinsically flat, every angle sum 2π.
pub fn flat_torus(a: u32, b: u32) -> EmbeddedComplex {
    let mut coords = BTreeMap::new();
    for i in 0..a {
        for j in 0..b {
            let (s, t) = (2.0 * PI * i as f64 / a as f64, 2.0 * PI * j as f64 / b as f64);
            coords.insert(i * b + j, vec![s.cos(), s.sin(), t.cos(), t.sin()]);
        }
    }
    embed(grid_torus(a, b), coords)
}

/// A torus of revolution in `ℝ³` with jittered grid angles and radii.
pub fn irregular_torus(rng: &mut impl Rng, a: u32, b: u32) -> EmbeddedComplex {
    let mut coords = BTreeMap::new();
    for i in 0..a {
        for j in 0..b {
            let s = 2.0 * PI * (i as f64 + rng.gen_range(-0.3..0.3)) / a as f64;
            let t = 2.0 * PI * (j as f64 + rng.gen_range(-0.3..0.3)) / b as f64;
            let (big, small) = (3.0 + rng.gen_range(-0.2..0.2), 1.0 + rng.gen_range(-0.2..0.2));
            let r = big + small * t.cos();
            coords.insert(i * b + j, vec![r * s.cos(), r * s.sin(), small * t.sin()]);
        }
    }
    embed(grid_torus(a, b), coords)
}

/// Boundary of the 4-simplex in `ℝ⁴`: origin-shifted standard simplex with jitter.
pub fn four_simplex_boundary(rng: &mut impl Rng) -> EmbeddedComplex {
    let mut coords = BTreeMap::new();
    for v in 0..5u32 {
        let mut x: Vec<f64> = (0..4).map(|_| rng.gen_range(-0.15..0.15)).collect();
        if v > 0 {
            x[v as usize - 1] += 1.0;
        }
        coords.insert(v, x);
    }
    embed(simplex_boundary(4).expect("k >= 1"), coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_spheres_are_distinct_spheres() {
        let spheres = two_spheres();
        assert_eq!(spheres.len(), 10);
        for k in &spheres {
            assert!(k.is_strict_pseudomanifold(2));
            assert_eq!(k.euler_characteristic().unwrap(), 2);
        }
    }

    #[test]
    fn irregular_sphere_has_100_triangles() {
        let e = irregular_sphere(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(e.complex().f_vector().get(2), 100);
        assert_eq!(e.complex().euler_characteristic().unwrap(), 2);
        assert!(e.complex().is_pseudomanifold(2));
    }

    #[test]
    fn tori() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for e in [flat_torus(5, 6), irregular_torus(&mut rng, 6, 7)] {
            assert_eq!(e.complex().euler_characteristic().unwrap(), 0);
            assert!(e.complex().is_strict_pseudomanifold(2));
        }
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_complex(&mut ChaCha8Rng::seed_from_u64(9), 8);
        let b = random_complex(&mut ChaCha8Rng::seed_from_u64(9), 8);
        assert_eq!(a, b);
        assert!(a.num_vertices() <= 8);
        let r = random_relabel(&mut ChaCha8Rng::seed_from_u64(2), &a);
        assert!(r.is_isomorphic(&a));
        assert_eq!(mixed_corpus(&mut ChaCha8Rng::seed_from_u64(0), 50).len(), 50);
    }
}
