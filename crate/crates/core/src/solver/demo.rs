//! The T_{s,t} counterexample family, its binomial certificate, and the coefficient
//! identities that make the certificate's pairing collapse to `(m/n − 1)^p · b_{−1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{build_system_with, solve, LDSystem, LDVerdict};
use crate::arith::{binomial, int, powi, rat, sign};
use crate::constructions::{t_complex, t_fvector_closed_form, TComplex, TFamilySpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::functionals::LinearFunctional;

/// `[T_{p−u,u} : u = 0..=p]`, all flag `(2p−1)`-spheres.
pub fn counterexample_family(p: u32, n: u32, m: u32) -> Result<Vec<TComplex>> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p must be at least 2, got {p}")));
    }
    if n < 4 || m < 4 {
        return Err(Error::InvalidParameter(format!("cycle lengths must be at least 4, got n={n}, m={m}")));
    }
    if n == m {
        return Err(Error::InvalidParameter(format!("cycle lengths must differ, got n=m={n}")));
    }
    (0..=p).map(|u| t_complex(TFamilySpec::new(p - u, u, n, m))).collect()
}

/// `c_w = (−1)^w C(p,w) (m/n)^{p−w}`; pairs with the right-hand side to `(m/n − 1)^p · b_{−1}`.
pub fn binomial_certificate(p: u32, n: u32, m: u32) -> Vec<BigRational> {
    let q = rat(m as i64, n as i64);
    let p = p as i64;
    (0..=p).map(|w| int(sign(w) * binomial(p, w)) * powi(&q, p - w)).collect()
}

#[derive(Clone, Debug)]
pub struct Demo {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub family: Vec<TComplex>,
    pub system: LDSystem,
    pub verdict: LDVerdict,
}

/// λ over the counterexample family; always inconsistent with pairing `(m/n − 1)^p`.
pub fn demo_charney_davis(p: u32, n: u32, m: u32) -> Result<Demo> {
    demo_functional(p, n, m, &LinearFunctional::charney_davis(2 * p - 1))
}

/// Runs the solver on the counterexample family. When inconsistent, the reported
/// certificate is the binomial combination whenever it verifies, so output is the
/// same closed form for every `p` (the left nullspace has dimension `p − 1`).
pub fn demo_functional(p: u32, n: u32, m: u32, f: &LinearFunctional) -> Result<Demo> {
    demo_functional_with(p, n, m, f, Execution::default())
}

pub fn demo_functional_with(p: u32, n: u32, m: u32, f: &LinearFunctional, mode: Execution) -> Result<Demo> {
    let family = counterexample_family(p, n, m)?;
    let complexes: Vec<_> = family.iter().map(|t| t.complex.clone()).collect();
    let system = build_system_with(&complexes, f, mode)?;
    let mut verdict = solve(&system);
    if let LDVerdict::Inconsistent { .. } = verdict {
        let certificate = binomial_certificate(p, n, m);
        let pairing = super::linalg::dot(&certificate, &system.rhs);
        let candidate = LDVerdict::Inconsistent { certificate, pairing };
        if candidate.verify(&system) {
            verdict = candidate;
        }
    }
    Ok(Demo { p, n, m, family, system, verdict })
}

fn check_g_params(p: u32, r: i64, n: u32, m: u32) -> Result<()> {
    if p < 1 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    if n < 3 || m < 3 {
        return Err(Error::InvalidParameter(format!("cycle lengths must be at least 3, got n={n}, m={m}")));
    }
    let top = 2 * p as i64 - 1;
    if !(-1..=top).contains(&r) {
        return Err(Error::InvalidParameter(format!("r={r} outside [-1, {top}]")));
    }
    Ok(())
}

/// Laurent expansion of `G_r`: `(a, b) ↦` coefficient of `m^a / n^b`, collected term by
/// term from the quadruple alternating sum. Zero coefficients are dropped.
pub fn g_r_expansion(p: u32, r: i64) -> BTreeMap<(i64, i64), BigInt> {
    let p = p as i64;
    let mut out: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    for w in 0..=p {
        for i in -1..=r {
            for j in 0..=p - w {
                for k in 0..=w {
                    let c = sign(w)
                        * binomial(p, w)
                        * binomial(p - w, j)
                        * binomial(j, 2 * j + i - r)
                        * binomial(w, k)
                        * binomial(k, 2 * k - i - 1);
                    if !c.is_zero() {
                        *out.entry((p - w + k, p - w - j)).or_default() += c;
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficient of `b_r` in the binomial combination of the family's equations.
/// Evaluated both from the Laurent expansion and from closed-form f-vectors; the two
/// must agree.
pub fn g_r_coefficient(p: u32, r: i64, n: u32, m: u32) -> Result<BigRational> {
    check_g_params(p, r, n, m)?;
    let (nn, mm) = (int(n), int(m));
    let direct: BigRational =
        g_r_expansion(p, r).iter().map(|(&(a, b), c)| int(c.clone()) * powi(&mm, a) / powi(&nn, b)).sum();
    let q = rat(m as i64, n as i64);
    let pi = p as i64;
    let via_f: BigRational = (0..=p)
        .map(|w| {
            let f = t_fvector_closed_form(TFamilySpec::new(p - w, w, n, m), r);
            int(sign(w as i64) * binomial(pi, w as i64)) * powi(&q, pi - w as i64) * int(f)
        })
        .sum();
    assert_eq!(direct, via_f, "G_r expansion disagrees with the f-vector form at p={p}, r={r}, n={n}, m={m}");
    Ok(direct)
}

/// Coefficient of `m^a / n^b` in `G_r`, for `0 ≤ b < a ≤ p` and `0 ≤ r ≤ 2p − 1`.
pub fn d_ab_coefficient(p: u32, r: i64, a: i64, b: i64) -> Result<BigRational> {
    let pi = p as i64;
    if a == b {
        return Err(Error::InvalidParameter(format!("a = b = {a}: such coefficients vanish term by term")));
    }
    if !(0 <= b && b < a && a <= pi) {
        return Err(Error::InvalidParameter(format!("need 0 <= b < a <= p, got a={a}, b={b}, p={p}")));
    }
    if !(0..=2 * pi - 1).contains(&r) {
        return Err(Error::InvalidParameter(format!("r={r} outside [0, {}]", 2 * pi - 1)));
    }
    Ok(int(d_ab_raw(pi, r, a, b)))
}

pub(super) fn d_ab_raw(p: i64, r: i64, a: i64, b: i64) -> BigInt {
    (0..=p)
        .map(|w| {
            let (j, k) = (p - w - b, a - (p - w));
            sign(w) * binomial(p, w) * binomial(p - w, j) * binomial(w, k) * vandermonde_inner(j, k, r)
        })
        .sum()
}

/// `Σ_{i=−1}^{r} C(j, 2j+i−r) C(k, 2k−i−1)`.
pub(super) fn vandermonde_inner(j: i64, k: i64, r: i64) -> BigInt {
    (-1..=r).map(|i| binomial(j, 2 * j + i - r) * binomial(k, 2 * k - i - 1)).sum()
}

/// Sum of the two coefficients of `A_{p−u,u−1}` in the combined equations.
pub(super) fn rhs_cancellation(p: u32, u: u32, n: u32, m: u32) -> BigRational {
    let q = rat(m as i64, n as i64);
    let (pi, ui) = (p as i64, u as i64);
    let first = int(sign(ui - 1) * binomial(pi, ui - 1)) * powi(&q, pi - ui + 1) * int((p - u + 1) * n);
    let second = int(sign(ui) * binomial(pi, ui)) * powi(&q, pi - ui) * int(u * m);
    first + second
}

pub(super) fn g_minus_one_expected(p: u32, n: u32, m: u32) -> BigRational {
    powi(&(rat(m as i64, n as i64) - BigRational::one()), p as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shape() {
        let fam = counterexample_family(2, 4, 5).unwrap();
        let f0: Vec<u64> = fam.iter().map(|t| t.complex.f_vector().get(0)).collect();
        assert_eq!(f0, vec![8, 9, 10]);
        for t in &fam {
            assert!(t.complex.is_flag());
            assert_eq!(t.complex.euler_characteristic().unwrap(), 0);
            assert_eq!(t.complex.dim(), 3);
        }
        assert!(counterexample_family(1, 4, 5).is_err());
        assert!(counterexample_family(2, 3, 5).is_err());
        assert!(counterexample_family(2, 5, 5).is_err());
    }

    #[test]
    fn demo_pairings() {
        for (p, n, m, pairing) in [(2, 4, 5, rat(1, 16)), (2, 4, 6, rat(1, 4)), (3, 4, 5, rat(1, 64))] {
            let d = demo_charney_davis(p, n, m).unwrap();
            let LDVerdict::Inconsistent { certificate, pairing: got } = &d.verdict else { panic!() };
            assert_eq!(got, &pairing, "(p,n,m)=({p},{n},{m})");
            assert_eq!(certificate, &binomial_certificate(p, n, m));
            assert!(d.verdict.verify(&d.system));
        }
        let d = demo_charney_davis(2, 4, 5).unwrap();
        assert_eq!(binomial_certificate(2, 4, 5), vec![rat(25, 16), rat(-5, 2), int(1)]);
        assert_eq!(d.system.rhs, vec![int(0), int(0), rat(1, 16)]);
    }

    #[test]
    fn pairing_formula_for_general_functionals() {
        let cd = LinearFunctional::charney_davis(5);
        let eu = LinearFunctional::euler(5);
        let f = LinearFunctional::linear_combination(&rat(3, 2), &cd, &rat(-2, 7), &eu);
        let d = demo_functional(3, 5, 7, &f).unwrap();
        let LDVerdict::Inconsistent { pairing, .. } = &d.verdict else { panic!() };
        assert_eq!(pairing, &(g_minus_one_expected(3, 5, 7) * f.b_minus_one()));
        let d = demo_functional(3, 5, 7, &f.without_constant()).unwrap();
        assert!(d.verdict.is_consistent());
    }

    #[test]
    fn g_r_examples() {
        assert_eq!(g_r_coefficient(2, -1, 4, 5).unwrap(), rat(1, 16));
        assert_eq!(g_r_coefficient(2, 0, 4, 5).unwrap(), int(0));
        assert_eq!(g_r_coefficient(2, 3, 7, 9).unwrap(), int(0));
        assert!(g_r_coefficient(2, 4, 4, 5).is_err());
        assert!(g_r_coefficient(2, -2, 4, 5).is_err());
        // the expansion for r ≥ 0 vanishes identically
        assert!(g_r_expansion(3, 2).is_empty());
        assert_eq!(g_r_expansion(2, -1).len(), 3);
    }

    #[test]
    fn d_ab_examples() {
        assert_eq!(d_ab_coefficient(2, 1, 2, 1).unwrap(), int(0));
        assert_eq!(d_ab_coefficient(3, 2, 3, 0).unwrap(), int(0));
        assert!(d_ab_coefficient(2, 1, 1, 1).is_err());
        assert!(d_ab_coefficient(2, 1, 1, 2).is_err());
        assert!(d_ab_coefficient(2, 4, 2, 1).is_err());
    }

    #[test]
    fn vandermonde_instance() {
        assert_eq!(vandermonde_inner(1, 1, 1), BigInt::from(1));
        assert_eq!(binomial(2, 2), BigInt::from(1));
    }

    #[test]
    fn rhs_cancels() {
        for u in 1..=3 {
            assert!(rhs_cancellation(3, u, 4, 7).is_zero());
        }
    }
}
