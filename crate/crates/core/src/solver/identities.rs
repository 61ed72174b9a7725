//! Exhaustive exact checks of the binomial identities behind the vanishing of `G_r`.

use num_traits::Zero;
use serde::Serialize;

use super::demo::{d_ab_raw, g_minus_one_expected, g_r_expansion, rhs_cancellation, vandermonde_inner};
use super::g_r_coefficient;
use crate::arith::{binomial, fmt_rational};
use crate::exec::{self, Execution};

const CYCLE_RANGE: std::ops::RangeInclusive<u32> = 4..=7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case in enumeration order, if any.
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub p_max: u32,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

pub fn identity_suite(p_max: u32) -> IdentityReport {
    identity_suite_with(p_max, Execution::default())
}

/// Cells are evaluated independently (in parallel when enabled); the report only depends
/// on enumeration order, never on schedule.
pub fn identity_suite_with(p_max: u32, mode: Execution) -> IdentityReport {
    let ps: Vec<i64> = (2..=p_max as i64).collect();
    let pairs: Vec<(u32, u32)> =
        CYCLE_RANGE.flat_map(|n| CYCLE_RANGE.map(move |m| (n, m))).filter(|(n, m)| n != m).collect();

    let mut checks = Vec::new();

    // (p, w, a, b) with 0 ≤ b ≤ a ≤ p
    let cells: Vec<(i64, i64, i64, i64)> = ps
        .iter()
        .flat_map(|&p| (0..=p).flat_map(move |w| (0..=p).flat_map(move |a| (0..=a).map(move |b| (p, w, a, b)))))
        .collect();
    checks.push(run(mode, "trinomial", &cells, |&(p, w, a, b)| {
        let lhs = binomial(p, w) * binomial(p - w, p - w - b) * binomial(w, a - (p - w));
        let rhs = binomial(p, a - b) * binomial(p - (a - b), b) * binomial(a - b, a - (p - w));
        (lhs != rhs).then(|| format!("p={p} w={w} a={a} b={b}: {lhs} != {rhs}"))
    }));

    // (p, w, a, b, r) with j = p−w−b ≥ 0 and 0 ≤ k = a−(p−w) ≤ w
    let cells: Vec<(i64, i64, i64, i64, i64)> = ps
        .iter()
        .flat_map(|&p| {
            (0..=p).flat_map(move |w| {
                (0..=p).flat_map(move |a| {
                    (0..=a).flat_map(move |b| (-1..=2 * p - 1).map(move |r| (p, w, a, b, r)))
                })
            })
        })
        .filter(|&(p, w, a, b, _)| p - w - b >= 0 && a - (p - w) >= 0 && a - (p - w) <= w)
        .collect();
    checks.push(run(mode, "vandermonde", &cells, |&(p, w, a, b, r)| {
        let lhs = vandermonde_inner(p - w - b, a - (p - w), r);
        let rhs = binomial(a - b, 2 * (a - b) - r - 1);
        (lhs != rhs).then(|| format!("p={p} w={w} a={a} b={b} r={r}: {lhs} != {rhs}"))
    }));

    // (p, r, a, b) with 0 ≤ b < a ≤ p, 0 ≤ r ≤ 2p−1
    let cells: Vec<(i64, i64, i64, i64)> = ps
        .iter()
        .flat_map(|&p| {
            (0..=2 * p - 1).flat_map(move |r| (0..=p).flat_map(move |a| (0..a).map(move |b| (p, r, a, b))))
        })
        .collect();
    checks.push(run(mode, "d_ab_vanishes", &cells, |&(p, r, a, b)| {
        let d = d_ab_raw(p, r, a, b);
        (!d.is_zero()).then(|| format!("p={p} r={r} a={a} b={b}: D={d}"))
    }));

    // expansion of G_r has no a ≤ b terms and its a > b terms equal D_{a,b}
    let cells: Vec<(i64, i64)> = ps.iter().flat_map(|&p| (0..=2 * p - 1).map(move |r| (p, r))).collect();
    checks.push(run(mode, "d_ab_matches_expansion", &cells, |&(p, r)| {
        let exp = g_r_expansion(p as u32, r);
        if let Some(((a, b), c)) = exp.iter().find(|((a, b), _)| a <= b) {
            return Some(format!("p={p} r={r}: unexpected term m^{a}/n^{b} with coefficient {c}"));
        }
        (0..=p).flat_map(|a| (0..a).map(move |b| (a, b))).find_map(|(a, b)| {
            let got = exp.get(&(a, b)).cloned().unwrap_or_default();
            let d = d_ab_raw(p, r, a, b);
            (got != d).then(|| format!("p={p} r={r} a={a} b={b}: expansion {got} != D {d}"))
        })
    }));

    let cells: Vec<(u32, u32, u32)> =
        ps.iter().flat_map(|&p| pairs.iter().map(move |&(n, m)| (p as u32, n, m))).collect();
    checks.push(run(mode, "g_minus_one", &cells, |&(p, n, m)| {
        let g = g_r_coefficient(p, -1, n, m).expect("in range");
        let want = g_minus_one_expected(p, n, m);
        (g != want).then(|| format!("p={p} n={n} m={m}: {} != {}", fmt_rational(&g), fmt_rational(&want)))
    }));

    let mut cells: Vec<(u32, i64, u32, u32)> = Vec::new();
    for &p in &ps {
        for r in 0..=2 * p - 1 {
            cells.extend(pairs.iter().map(|&(n, m)| (p as u32, r, n, m)));
        }
    }
    checks.push(run(mode, "g_r_vanishes", &cells, |&(p, r, n, m)| {
        let g = g_r_coefficient(p, r, n, m).expect("in range");
        (!g.is_zero()).then(|| format!("p={p} r={r} n={n} m={m}: G={}", fmt_rational(&g)))
    }));

    let mut cells: Vec<(u32, u32, u32, u32)> = Vec::new();
    for &p in &ps {
        for u in 1..=p as u32 {
            cells.extend(pairs.iter().map(|&(n, m)| (p as u32, u, n, m)));
        }
    }
    checks.push(run(mode, "rhs_cancellation", &cells, |&(p, u, n, m)| {
        let s = rhs_cancellation(p, u, n, m);
        (!s.is_zero()).then(|| format!("p={p} u={u} n={n} m={m}: {}", fmt_rational(&s)))
    }));

    IdentityReport { p_max, checks }
}

fn run<T: Sync, F>(mode: Execution, name: &'static str, cells: &[T], check: F) -> IdentityCheck
where
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    let results = exec::map(mode, cells, check);
    IdentityCheck { name, cases: cells.len(), counterexample: results.into_iter().flatten().next() }
}
