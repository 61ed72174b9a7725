use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::angles::{solid_angle_with, AngleOptions};
use super::EmbeddedComplex;
use crate::arith::{int, rat, to_f64};
use crate::complex::{Simplex, VertexId};
use crate::error::{Error, Result};
use crate::exec;
use crate::functionals::LinearFunctional;

/// `P = 2(−1)^n/(n−1) · [(n+1)/2 · b_{n−1} + b_n]`.
pub fn p_constant(f: &LinearFunctional, n: u32) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("P needs n >= 2, got {n}")));
    }
    let b = |i: u32| {
        f.coefficient(i as i32).cloned().ok_or_else(|| {
            Error::InvalidParameter(format!("functional has no b_{i} (max index {})", f.max_dim()))
        })
    };
    let sign = if n.is_multiple_of(2) { 2 } else { -2 };
    Ok(rat(sign, n as i64 - 1) * (rat(n as i64 + 1, 2) * b(n - 1)? + b(n)?))
}

/// Angle data for one facet: every face `η` of dimension `≤ n−2` with `α(η, σ)`.
type FacetAngles = Vec<(Simplex, f64)>;

struct PhiContext<'a> {
    e: &'a EmbeddedComplex,
    n: i32,
    /// `b_i / (i+1)` for `0 ≤ i ≤ n−2`.
    face_weight: Vec<BigRational>,
    /// `(−1)^i P / (i+1)` as reals.
    angle_weight: Vec<f64>,
}

impl<'a> PhiContext<'a> {
    fn new(e: &'a EmbeddedComplex, f: &LinearFunctional) -> Result<Self> {
        let n = e.dim();
        if n < 2 || e.complex().facets().iter().any(|s| s.dim() != n) {
            return Err(Error::Precondition(format!("φ needs a pure complex of dimension >= 2, got dimension {n}")));
        }
        let p = p_constant(f, n as u32)?;
        let face_weight = (0..=n - 2)
            .map(|i| f.coefficient(i).cloned().unwrap_or_else(BigRational::zero) / int(i + 1))
            .collect();
        let angle_weight = (0..=n - 2)
            .map(|i| {
                let w = &p / int(i + 1);
                to_f64(&if i % 2 == 0 { w } else { -w })
            })
            .collect();
        Ok(PhiContext { e, n, face_weight, angle_weight })
    }

    fn facet_angles(&self, sigma: &Simplex, opts: &AngleOptions) -> Result<FacetAngles> {
        sigma
            .faces()
            .filter(|eta| eta.dim() <= self.n - 2)
            .map(|eta| {
                let o = AngleOptions { seed: face_seed(opts.seed, &eta, sigma), ..*opts };
                let a = solid_angle_with(self.e, &eta, sigma, &o)?.value;
                Ok((eta, a))
            })
            .collect()
    }

    /// Rational face-count part plus the angle part, summed in facet order then face
    /// order so a vertex whose star is unchanged gets a bit-identical value.
    fn value(&self, v: VertexId, angles: &BTreeMap<&Simplex, FacetAngles>) -> f64 {
        let k = self.e.complex();
        let counts: BigRational = (0..=self.n - 2)
            .map(|i| {
                let c = k.faces(i).iter().filter(|s| s.contains(v)).count() as i64;
                &self.face_weight[i as usize] * int(c)
            })
            .sum();
        let mut real = 0.0;
        for sigma in k.facets().iter().filter(|s| s.contains(v)) {
            for (eta, a) in &angles[sigma] {
                if eta.contains(v) {
                    real += self.angle_weight[eta.dim() as usize] * a;
                }
            }
        }
        to_f64(&counts) + real
    }
}

/// Deterministic per-(η, σ) Monte Carlo seed.
fn face_seed(root: u64, eta: &Simplex, sigma: &Simplex) -> u64 {
    let mut h = root ^ 0x9e37_79b9_7f4a_7c15;
    for &v in eta.vertices().iter().chain([&u32::MAX]).chain(sigma.vertices()) {
        h = splitmix(h ^ v as u64);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `φ(v) = Σ_{i=0}^{n−2} 1/(i+1) Σ_{η^i ∋ v} [b_i + (−1)^i P Σ_{σ ⊃ η} α(η, σ)]`.
pub fn phi(e: &EmbeddedComplex, f: &LinearFunctional, v: VertexId) -> Result<f64> {
    phi_with(e, f, v, &AngleOptions::default())
}

pub fn phi_with(e: &EmbeddedComplex, f: &LinearFunctional, v: VertexId, opts: &AngleOptions) -> Result<f64> {
    if !e.complex().has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let ctx = PhiContext::new(e, f)?;
    let facets: Vec<&Simplex> = e.complex().facets().iter().filter(|s| s.contains(v)).collect();
    let mut angles = BTreeMap::new();
    for sigma in facets {
        angles.insert(sigma, ctx.facet_angles(sigma, opts)?);
    }
    Ok(ctx.value(v, &angles))
}

pub fn phi_all(e: &EmbeddedComplex, f: &LinearFunctional) -> Result<BTreeMap<VertexId, f64>> {
    phi_all_with(e, f, &AngleOptions::default())
}

/// φ at every vertex; facet angle computations run concurrently.
pub fn phi_all_with(e: &EmbeddedComplex, f: &LinearFunctional, opts: &AngleOptions) -> Result<BTreeMap<VertexId, f64>> {
    let ctx = PhiContext::new(e, f)?;
    let facets = e.complex().facets();
    // angles inside each facet are computed sequentially; facets fan out
    let inner = AngleOptions { exec: exec::Execution::Sequential, ..*opts };
    let per_facet = exec::map(opts.exec, facets, |sigma| ctx.facet_angles(sigma, &inner));
    let mut angles = BTreeMap::new();
    for (sigma, a) in facets.iter().zip(per_facet) {
        angles.insert(sigma, a?);
    }
    Ok(e.complex().vertices().iter().map(|&v| (v, ctx.value(v, &angles))).collect())
}

#[derive(Clone, Debug)]
pub struct GeometricLdReport {
    pub n: i32,
    pub phi: BTreeMap<VertexId, f64>,
    pub sum_phi: f64,
    /// `Σ_{i=0}^{n} b_i f_i`, the value `Σ φ` should reproduce.
    pub target: BigRational,
    /// Full `Λ = Σ_{i≥−1} b_i f_i`.
    pub lambda: BigRational,
    /// `b_{−1} f_{−1}`: the gap between `Λ` and the target.
    pub b_minus_one_offset: BigRational,
    /// `Σ φ − target`.
    pub residual: f64,
}

impl GeometricLdReport {
    /// `|residual| ≤ tol · (1 + |Λ|)`.
    pub fn within(&self, tol: f64) -> bool {
        self.residual.abs() <= tol * (1.0 + to_f64(&self.lambda.abs()))
    }
}

pub fn verify_geometric_ld(e: &EmbeddedComplex, f: &LinearFunctional) -> Result<GeometricLdReport> {
    verify_geometric_ld_with(e, f, &AngleOptions::default())
}

pub fn verify_geometric_ld_with(
    e: &EmbeddedComplex,
    f: &LinearFunctional,
    opts: &AngleOptions,
) -> Result<GeometricLdReport> {
    let n = e.dim();
    if !e.complex().is_pseudomanifold(n) {
        return Err(Error::NotPseudomanifold(n));
    }
    let phi = phi_all_with(e, f, opts)?;
    let sum_phi: f64 = phi.values().sum();
    let fv = e.complex().f_vector();
    let target: BigRational = (0..=n)
        .map(|i| f.coefficient(i).cloned().unwrap_or_else(BigRational::zero) * int(fv.get(i)))
        .sum();
    let b_minus_one_offset = f.b_minus_one().clone();
    let lambda = &target + &b_minus_one_offset;
    let residual = sum_phi - to_f64(&target);
    Ok(GeometricLdReport { n, phi, sum_phi, target, lambda, b_minus_one_offset, residual })
}

/// Stellar subdivision with the new vertex at the barycenter of `face`.
pub fn lift_stellar_subdivide(e: &EmbeddedComplex, face: &Simplex) -> Result<(EmbeddedComplex, VertexId)> {
    let (complex, apex) = e.complex().stellar_subdivide(face)?;
    let k = face.len() as f64;
    let mut bary = vec![0.0; e.ambient_dim()];
    for &v in face.vertices() {
        bary.iter_mut().zip(e.coords(v)).for_each(|(b, x)| *b += x / k);
    }
    let mut coords = e.coords_map().clone();
    coords.insert(apex, bary);
    Ok((EmbeddedComplex::new(complex, coords)?, apex))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiChange {
    pub vertex: VertexId,
    pub before: f64,
    pub after: f64,
    /// Whether the vertex lies in a facet containing the subdivided face.
    pub touched: bool,
    /// Expected change, when a closed form is known (facet subdivision with n = 3).
    pub predicted_delta: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct SubdivisionReport {
    pub n: i32,
    pub apex: VertexId,
    pub rows: Vec<PhiChange>,
    /// Pointwise invariance within 1e−9; only decided for n = 2.
    pub invariant_holds: Option<bool>,
}

pub fn subdivision_invariance_report(
    e: &EmbeddedComplex,
    f: &LinearFunctional,
    face: &Simplex,
) -> Result<SubdivisionReport> {
    subdivision_invariance_report_with(e, f, face, &AngleOptions::default())
}

/// φ at every original vertex before and after a barycentric stellar subdivision.
/// For `n = 3` and a facet, each vertex of the facet gains one interior edge, around
/// which angles sum to 1, so φ shifts by `(b_1 − P)/2 = (b_1 + 2b_2 + b_3)/2`.
pub fn subdivision_invariance_report_with(
    e: &EmbeddedComplex,
    f: &LinearFunctional,
    face: &Simplex,
    opts: &AngleOptions,
) -> Result<SubdivisionReport> {
    let n = e.dim();
    let (sub, apex) = lift_stellar_subdivide(e, face)?;
    let before = phi_all_with(e, f, opts)?;
    let after = phi_all_with(&sub, f, opts)?;
    let per_edge = if n == 3 && face.dim() == 3 {
        let b1 = f.coefficient(1).cloned().unwrap_or_else(BigRational::zero);
        Some(to_f64(&((b1 - p_constant(f, 3)?) / int(2))))
    } else {
        None
    };
    let rows: Vec<PhiChange> = before
        .iter()
        .map(|(&v, &b)| PhiChange {
            vertex: v,
            before: b,
            after: after[&v],
            touched: e.complex().facets().iter().any(|s| face.is_subset_of(s) && s.contains(v)),
            predicted_delta: per_edge.map(|d| if face.contains(v) { d } else { 0.0 }),
        })
        .collect();
    let invariant_holds = (n == 2).then(|| rows.iter().all(|r| (r.after - r.before).abs() <= 1e-9));
    Ok(SubdivisionReport { n, apex, rows, invariant_holds })
}
