//! Deciding combinatorial local determinability over a finite family.
//!
//! Unknowns are the values `h(c)` on link isomorphism classes realized in the family;
//! each member contributes `Σ_c N[K][c]·h(c) = Λ(K)`. A consistent system yields a
//! witness `h`, an inconsistent one a rational row combination `c` with `cᵀN = 0` and
//! `cᵀΛ ≠ 0`. Both are re-checked by direct multiplication before being returned.

mod demo;
mod identities;
pub mod linalg;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::int;
use crate::complex::{CanonicalKey, Complex};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::functionals::LinearFunctional;

pub use demo::{
    binomial_certificate, counterexample_family, d_ab_coefficient, demo_charney_davis, demo_functional,
    g_r_coefficient, g_r_expansion, Demo,
};
pub use identities::{identity_suite, identity_suite_with, IdentityCheck, IdentityReport};
use linalg::Outcome;

/// One realized link type.
#[derive(Clone, Debug)]
pub struct LinkClass {
    pub key: CanonicalKey,
    pub representative: Complex,
}

impl ClassLabel for LinkClass {
    fn label(&self) -> String {
        format!("link f={} facets={}", self.representative.f_vector(), self.representative.facets().len())
    }
}

/// Something that can name an unknown in reports.
pub trait ClassLabel {
    fn label(&self) -> String;
}

/// Unknown classes plus `counts[row][class]`, the number of vertices of family member
/// `row` falling into `class`.
#[derive(Clone, Debug)]
pub struct ClassTable<C> {
    pub classes: Vec<C>,
    pub counts: Vec<Vec<u64>>,
}

pub type LinkClassTable = ClassTable<LinkClass>;

impl<C> ClassTable<C> {
    pub fn rows(&self) -> usize {
        self.counts.len()
    }

    pub fn matrix(&self) -> Vec<Vec<BigRational>> {
        self.counts.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }
}

impl LinkClassTable {
    /// Classifies every vertex link of every member; classes sorted by canonical key.
    pub fn build(family: &[Complex]) -> Self {
        Self::build_with(family, Execution::default())
    }

    pub fn build_with(family: &[Complex], mode: Execution) -> Self {
        let per_member: Vec<Vec<(CanonicalKey, Complex)>> = family
            .iter()
            .map(|k| {
                exec::map(mode, k.vertices(), |&v| {
                    let lk = k.link(v).expect("vertex of its own complex");
                    (lk.canonical_key(), lk)
                })
            })
            .collect();
        let mut reps: BTreeMap<CanonicalKey, Complex> = BTreeMap::new();
        for (key, lk) in per_member.iter().flatten() {
            reps.entry(key.clone()).or_insert_with(|| lk.clone());
        }
        let index: BTreeMap<&CanonicalKey, usize> = reps.keys().enumerate().map(|(i, k)| (k, i)).collect();
        let counts = per_member
            .iter()
            .map(|links| {
                let mut row = vec![0u64; reps.len()];
                for (key, _) in links {
                    row[index[key]] += 1;
                }
                row
            })
            .collect();
        let classes =
            reps.iter().map(|(key, rep)| LinkClass { key: key.clone(), representative: rep.clone() }).collect();
        ClassTable { classes, counts }
    }
}

/// The linear system `N h = Λ`.
#[derive(Clone, Debug)]
pub struct LDSystem<C = LinkClass> {
    pub table: ClassTable<C>,
    pub rhs: Vec<BigRational>,
}

/// Link-class system for `family` and `f`.
pub fn build_system(family: &[Complex], f: &LinearFunctional) -> Result<LDSystem> {
    build_system_with(family, f, Execution::default())
}

pub fn build_system_with(family: &[Complex], f: &LinearFunctional, mode: Execution) -> Result<LDSystem> {
    if family.is_empty() {
        return Err(Error::Precondition("family must be nonempty".into()));
    }
    let rhs = family.iter().map(|k| f.evaluate(k)).collect::<Result<Vec<_>>>()?;
    Ok(LDSystem { table: LinkClassTable::build_with(family, mode), rhs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LDVerdict {
    /// `h_values[c]` for each class; satisfies every row exactly.
    Consistent { h_values: Vec<BigRational> },
    /// `cᵀN = 0`, `cᵀ·rhs = pairing ≠ 0`.
    Inconsistent { certificate: Vec<BigRational>, pairing: BigRational },
}

impl LDVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, LDVerdict::Consistent { .. })
    }

    /// Re-checks the witness or certificate against `system` by direct multiplication.
    pub fn verify<C>(&self, system: &LDSystem<C>) -> bool {
        let n = system.table.matrix();
        match self {
            LDVerdict::Consistent { h_values } => {
                h_values.len() == system.table.classes.len() && linalg::mat_vec(&n, h_values) == system.rhs
            }
            LDVerdict::Inconsistent { certificate, pairing } => {
                certificate.len() == system.rhs.len()
                    && linalg::vec_mat(certificate, &n).iter().all(Zero::is_zero)
                    && linalg::dot(certificate, &system.rhs) == *pairing
                    && !pairing.is_zero()
            }
        }
    }
}

/// Exact decision with a re-verified witness or certificate.
pub fn solve<C>(system: &LDSystem<C>) -> LDVerdict {
    let n = system.table.matrix();
    let verdict = match linalg::solve_exact(&n, &system.rhs) {
        Outcome::Solution(h_values) => LDVerdict::Consistent { h_values },
        Outcome::Certificate(certificate) => {
            let pairing = linalg::dot(&certificate, &system.rhs);
            LDVerdict::Inconsistent { certificate, pairing }
        }
    };
    assert!(verdict.verify(system), "solver produced an unverifiable verdict; this is a bug");
    verdict
}
