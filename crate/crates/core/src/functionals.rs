//! Linear f-vector functionals `Λ(K) = Σ_{i≥-1} b_i f_i(K)` and vertex-local formulas
//! `g(M) = Σ_{i≥-1} a_i f_i(M)` evaluated on links.
//!
//! Everything is exact. Evaluating on a complex whose dimension exceeds the stored
//! coefficient range is an error rather than an implicit zero extension.

use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{int, rat, sign};
use crate::complex::{Complex, FVector};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Coefficients indexed from -1: `coeffs[0]` is the `f_{-1}` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Coefficients(Vec<BigRational>);

impl Coefficients {
    fn get(&self, i: i32) -> Option<&BigRational> {
        if i < -1 {
            return None;
        }
        self.0.get((i + 1) as usize)
    }

    fn max_index(&self) -> i32 {
        self.0.len() as i32 - 2
    }

    fn apply(&self, f: &FVector) -> Result<BigRational> {
        let d = f.dim();
        if d > self.max_index() {
            return Err(Error::DimensionOutOfRange { complex_dim: d, max_index: self.max_index() });
        }
        Ok((-1..=d).fold(BigRational::zero(), |acc, i| acc + self.get(i).unwrap() * int(f.get(i))))
    }
}

/// `Λ(K) = Σ_{i=-1}^{dim K} b_i f_i(K)` with exact rational `b_i` for `-1 <= i <= max_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    b: Coefficients,
}

impl LinearFunctional {
    /// `coeffs[0] = b_{-1}`, `coeffs[1] = b_0`, and so on. Must be nonempty.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a functional needs at least b_{-1}".into()));
        }
        Ok(LinearFunctional { b: Coefficients(coeffs) })
    }

    /// `λ(K) = Σ (-1/2)^{i+1} f_i(K)` for complexes up to dimension `max_dim`.
    pub fn charney_davis(max_dim: u32) -> Self {
        let half = rat(-1, 2);
        let mut coeffs = vec![BigRational::one()];
        for _ in 0..=max_dim {
            let next = coeffs.last().unwrap() * &half;
            coeffs.push(next);
        }
        LinearFunctional { b: Coefficients(coeffs) }
    }

    /// `χ`: `b_{-1} = 0`, `b_i = (-1)^i`.
    pub fn euler(max_dim: u32) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend((0..=max_dim as i64).map(|i| int(sign(i))));
        LinearFunctional { b: Coefficients(coeffs) }
    }

    /// `K ↦ f_i(K)`.
    pub fn face_count(i: u32, max_dim: u32) -> Self {
        let mut coeffs = vec![BigRational::zero(); max_dim.max(i) as usize + 2];
        coeffs[i as usize + 1] = BigRational::one();
        LinearFunctional { b: Coefficients(coeffs) }
    }

    pub fn zero(max_dim: u32) -> Self {
        LinearFunctional { b: Coefficients(vec![BigRational::zero(); max_dim as usize + 2]) }
    }

    /// `b_i`, or `None` outside `-1..=max_dim`.
    pub fn coefficient(&self, i: i32) -> Option<&BigRational> {
        self.b.get(i)
    }

    pub fn b_minus_one(&self) -> &BigRational {
        &self.b.0[0]
    }

    /// Largest `i` with an explicit `b_i`.
    pub fn max_dim(&self) -> i32 {
        self.b.max_index()
    }

    /// All coefficients starting at `b_{-1}`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.b.0
    }

    pub fn evaluate(&self, k: &Complex) -> Result<BigRational> {
        self.b.apply(&k.f_vector())
    }

    pub fn evaluate_fvector(&self, f: &FVector) -> Result<BigRational> {
        self.b.apply(f)
    }

    /// `α·F + β·G`, defined on the common coefficient range.
    pub fn linear_combination(alpha: &BigRational, f: &Self, beta: &BigRational, g: &Self) -> Self {
        let len = f.b.0.len().min(g.b.0.len());
        let coeffs = (0..len).map(|i| alpha * &f.b.0[i] + beta * &g.b.0[i]).collect();
        LinearFunctional { b: Coefficients(coeffs) }
    }

    /// The same functional with `b_{-1}` replaced by zero.
    pub fn without_constant(&self) -> Self {
        let mut coeffs = self.b.0.clone();
        coeffs[0] = BigRational::zero();
        LinearFunctional { b: Coefficients(coeffs) }
    }
}

/// `g(M) = Σ_{i=-1}^{dim M} a_i f_i(M)`, meant to be evaluated on vertex links.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalFormula {
    a: Coefficients,
}

impl LocalFormula {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LocalFormula { a: Coefficients(coeffs) }
    }

    pub fn coefficient(&self, i: i32) -> Option<&BigRational> {
        self.a.get(i)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.a.0
    }

    pub fn max_index(&self) -> i32 {
        self.a.max_index()
    }

    pub fn evaluate(&self, m: &Complex) -> Result<BigRational> {
        self.a.apply(&m.f_vector())
    }
}

/// `a_i = b_{i+1} / (i+2)`; requires `b_{-1} = 0`.
pub fn local_formula_part2(f: &LinearFunctional) -> Result<LocalFormula> {
    if !f.b_minus_one().is_zero() {
        return Err(Error::Precondition(format!(
            "b_{{-1}} must be 0 for the b_{{-1}}=0 construction, got {}",
            f.b_minus_one()
        )));
    }
    Ok(LocalFormula::new(shifted_average(f)))
}

/// `a_i = b_{i+1}/(i+2) + (-1)^{i+1} b_{-1} / (E (i+2))`, correct on any family whose
/// members all have Euler characteristic `E ≠ 0`.
pub fn local_formula_part1(f: &LinearFunctional, euler: &BigRational) -> Result<LocalFormula> {
    if euler.is_zero() {
        return Err(Error::Precondition("Euler characteristic E must be nonzero".into()));
    }
    let correction = f.b_minus_one() / euler;
    let coeffs = shifted_average(f)
        .into_iter()
        .enumerate()
        .map(|(idx, a)| {
            let i = idx as i64 - 1;
            let term = &correction / int(i + 2);
            if sign(i + 1) > 0 {
                a + term
            } else {
                a - term
            }
        })
        .collect();
    Ok(LocalFormula::new(coeffs))
}

/// `[b_0/1, b_1/2, ..., b_D/(D+1)]` as `a_{-1}..a_{D-1}`.
fn shifted_average(f: &LinearFunctional) -> Vec<BigRational> {
    f.b.0.iter().enumerate().skip(1).map(|(idx, b)| b / int(idx as i64)).collect()
}

/// `Σ_v g(lk v)`, computed both directly over links and through
/// `Σ_v f_i(lk v) = (i+2) f_{i+1}(K)`; the two must agree.
pub fn vertex_link_sum(k: &Complex, g: &LocalFormula) -> Result<BigRational> {
    vertex_link_sum_with(k, g, Execution::default())
}

pub fn vertex_link_sum_with(k: &Complex, g: &LocalFormula, mode: Execution) -> Result<BigRational> {
    let top = k.dim() - 1;
    if top > g.max_index() {
        return Err(Error::DimensionOutOfRange { complex_dim: top, max_index: g.max_index() });
    }
    let per_vertex: Vec<Result<BigRational>> = exec::map(mode, k.vertices(), |&v| g.evaluate(&k.link(v)?));
    let direct = per_vertex.into_iter().try_fold(BigRational::zero(), |acc, x| Ok::<_, Error>(acc + x?))?;
    let f = k.f_vector();
    let via_identity = (-1..=top).fold(BigRational::zero(), |acc, i| {
        acc + g.coefficient(i).unwrap() * int(i as i64 + 2) * int(f.get(i + 1))
    });
    assert_eq!(direct, via_identity, "link-sum identity failed; this is a bug");
    Ok(direct)
}

/// `vertex_link_sum(K, g) - Λ(K)` for each member of `family`.
pub fn verify_local_formula(f: &LinearFunctional, g: &LocalFormula, family: &[Complex]) -> Result<Vec<BigRational>> {
    family.iter().map(|k| Ok(vertex_link_sum(k, g)? - f.evaluate(k)?)).collect()
}

impl Neg for LinearFunctional {
    type Output = LinearFunctional;
    fn neg(self) -> Self {
        LinearFunctional { b: Coefficients(self.b.0.into_iter().map(|x| -x).collect()) }
    }
}
