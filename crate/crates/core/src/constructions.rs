//! Named complexes: cycles, `S^0`, simplex boundaries, suspensions and the iterated
//! cycle joins `T_{s,t} = C_n * ... * C_n * C_m * ... * C_m`, together with closed-form
//! f-vectors for the latter.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::complex::{Complex, VertexId};
use crate::error::{Error, Result};

/// `C_n`: vertices `0..n`, edges `{i, i+1 mod n}`.
pub fn cycle_complex(n: u32) -> Result<Complex> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    Complex::from_facets((0..n).map(|i| [i, (i + 1) % n]))
}

/// Two isolated vertices `{0}`, `{1}`.
pub fn zero_sphere() -> Complex {
    Complex::from_facets([[0u32], [1]]).expect("static facets")
}

/// Boundary of the `k`-simplex on vertices `0..=k`.
pub fn simplex_boundary(k: u32) -> Result<Complex> {
    if k < 1 {
        return Err(Error::InvalidParameter("simplex boundary needs k >= 1".into()));
    }
    Complex::from_facets((0..=k).map(|skip| (0..=k).filter(|&v| v != skip).collect::<Vec<_>>()))
}

/// `S^0 * K`; the two cone points are `0` and `1`, `K` is shifted by 2.
pub fn suspension(k: &Complex) -> Complex {
    zero_sphere().join(k)
}

/// Parameters of `T_{s,t}`: `s` copies of `C_n` followed by `t` copies of `C_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TFamilySpec {
    pub s: u32,
    pub t: u32,
    pub n: u32,
    pub m: u32,
}

impl TFamilySpec {
    pub fn new(s: u32, t: u32, n: u32, m: u32) -> Self {
        TFamilySpec { s, t, n, m }
    }

    pub fn dim(&self) -> i32 {
        2 * (self.s + self.t) as i32 - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CycleKind {
    /// A copy of `C_n`.
    N,
    /// A copy of `C_m`.
    M,
}

/// One cycle factor of a `T_{s,t}`, occupying labels `first..first + length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCopy {
    pub kind: CycleKind,
    pub length: u32,
    pub first: VertexId,
}

impl CycleCopy {
    pub fn contains(&self, v: VertexId) -> bool {
        (self.first..self.first + self.length).contains(&v)
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        self.first..self.first + self.length
    }
}

/// A built `T_{s,t}` with its copy-membership partition.
#[derive(Clone, Debug)]
pub struct TComplex {
    pub spec: TFamilySpec,
    pub complex: Complex,
    pub copies: Vec<CycleCopy>,
}

impl TComplex {
    pub fn copy_of(&self, v: VertexId) -> Option<&CycleCopy> {
        self.copies.iter().find(|c| c.contains(v))
    }
}

/// Builds `T_{s,t}` as an iterated join. `s = t = 0` gives the empty complex.
pub fn t_complex(spec: TFamilySpec) -> Result<TComplex> {
    if (spec.s > 0 && spec.n < 3) || (spec.t > 0 && spec.m < 3) {
        return Err(Error::InvalidParameter(format!("cycle lengths must be >= 3, got n={} m={}", spec.n, spec.m)));
    }
    let mut complex = Complex::empty();
    let mut copies = Vec::new();
    let factors = std::iter::repeat_n((CycleKind::N, spec.n), spec.s as usize)
        .chain(std::iter::repeat_n((CycleKind::M, spec.m), spec.t as usize));
    for (kind, length) in factors {
        let first = complex.join_offset();
        complex = complex.join(&cycle_complex(length)?);
        copies.push(CycleCopy { kind, length, first });
    }
    Ok(TComplex { spec, complex, copies })
}

/// `f_i(T_{s,0}) = Σ_j C(s,j) C(j, 2j-i-1) n^j`; zero outside `-1..=2s-1`.
pub fn ts0_fvector(s: u32, n: u32, i: i64) -> BigInt {
    let n = BigInt::from(n);
    (0..=s as i64)
        .map(|j| binomial(s as i64, j) * binomial(j, 2 * j - i - 1) * num_traits::pow(n.clone(), j as usize))
        .sum()
}

/// The quadruple sum for `f_r(T_{s,t})` obtained by convolving the two single-cycle
/// families.
pub fn t_fvector_closed_form(spec: TFamilySpec, r: i64) -> BigInt {
    let (s, t) = (spec.s as i64, spec.t as i64);
    let n = BigInt::from(spec.n);
    let m = BigInt::from(spec.m);
    let mut total = BigInt::zero();
    for i in -1..=r {
        for j in 0..=s {
            let left = binomial(s, j) * binomial(j, 2 * j + i - r);
            if left.is_zero() {
                continue;
            }
            for k in 0..=t {
                let right = binomial(t, k) * binomial(k, 2 * k - i - 1);
                if right.is_zero() {
                    continue;
                }
                total += &left * right * num_traits::pow(n.clone(), j as usize) * num_traits::pow(m.clone(), k as usize);
            }
        }
    }
    total
}
