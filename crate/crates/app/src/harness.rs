//! Structural checks on QSymm at small degrees, and Hochschild ranks of NSymm.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use qsym_core::combinat::is_prime;
use qsym_core::linalg::{rank, smith_invariant_factors};
use qsym_core::lyndon::{euler_product, lyndon_by_degree};
use qsym_core::qsymm::{decomposables_matrix, indecomposables_dimension};
use qsym_core::{Composition, Ring, RingError, Scalar};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_DEGREE_BOUND: usize = 8;
/// Integral torsion check runs up to this degree.
pub const SNF_MAX_DEGREE: usize = 6;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("degree {requested} exceeds the configured bound {bound}")]
    ResourceBound { requested: usize, bound: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.passed() { "PASS" } else { "FAIL" })
    }
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub n: usize,
    /// Indecomposable dimension keyed by characteristic (0 for Q).
    pub pi: BTreeMap<u64, usize>,
    pub lyndon: usize,
    pub poincare_product: String,
    pub poincare_expected: String,
    /// Largest Smith invariant factor of the decomposables matrix, when checked.
    pub snf_max_factor: Option<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check: String,
    pub parameters: serde_json::Value,
    pub verdict: Verdict,
    pub degrees: Vec<DegreeRow>,
    pub counterexample: Option<serde_json::Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Dimension(usize, u64),
    Smith(usize),
}

enum Outcome {
    Dimension(usize),
    Smith(BigInt),
}

fn run(task: Task) -> Result<Outcome, RingError> {
    match task {
        Task::Dimension(n, 0) => Ok(Outcome::Dimension(indecomposables_dimension(n, Ring::Rationals)?)),
        Task::Dimension(n, p) => Ok(Outcome::Dimension(indecomposables_dimension(n, Ring::PrimeField(p))?)),
        Task::Smith(n) => {
            let factors = smith_invariant_factors(decomposables_matrix(n));
            Ok(Outcome::Smith(factors.into_iter().max().unwrap_or_else(BigInt::one)))
        }
    }
}

pub fn ditters_verify(max_degree: usize, primes: &[u64]) -> Result<VerificationReport, HarnessError> {
    ditters_verify_bounded(max_degree, primes, DEFAULT_DEGREE_BOUND)
}

/// Polynomiality of QSymm through `max_degree`: indecomposable counts agree over
/// Q and every `F_p`, match Lyndon counts and the Poincaré series, and the
/// integral indecomposables are torsion-free through degree 6.
pub fn ditters_verify_bounded(max_degree: usize, primes: &[u64], bound: usize) -> Result<VerificationReport, HarnessError> {
    if max_degree == 0 {
        return Err(HarnessError::ZeroDegree);
    }
    if max_degree > bound {
        return Err(HarnessError::ResourceBound { requested: max_degree, bound });
    }
    let primes: BTreeSet<u64> = primes.iter().copied().collect();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(HarnessError::NotPrime(p));
    }
    let chars: Vec<u64> = std::iter::once(0).chain(primes.iter().copied()).collect();
    let mut tasks = Vec::new();
    for n in 1..=max_degree {
        tasks.extend(chars.iter().map(|&p| Task::Dimension(n, p)));
        if n <= SNF_MAX_DEGREE {
            tasks.push(Task::Smith(n));
        }
    }
    let results: Vec<(usize, Outcome)> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, &t)| run(t).map(|o| (i, o)))
        .collect::<Result<_, _>>()?;

    let mut pi: BTreeMap<usize, BTreeMap<u64, usize>> = BTreeMap::new();
    let mut smith: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (i, outcome) in results {
        match (tasks[i], outcome) {
            (Task::Dimension(n, p), Outcome::Dimension(d)) => {
                pi.entry(n).or_default().insert(p, d);
            }
            (Task::Smith(n), Outcome::Smith(f)) => {
                smith.insert(n, f);
            }
            _ => unreachable!("task and outcome kinds match"),
        }
    }

    let rational: Vec<usize> = (1..=max_degree).map(|n| pi[&n][&0]).collect();
    let product = euler_product(&rational, max_degree);
    let mut degrees = Vec::new();
    let mut counterexample = None;
    for n in 1..=max_degree {
        let row_pi = pi.remove(&n).unwrap_or_default();
        let lyndon = lyndon_by_degree(n).len();
        let expected = BigInt::one() << (n - 1);
        let snf = smith.get(&n);
        let ok = row_pi.values().all(|&d| d == lyndon) && product[n] == expected && snf.is_none_or(BigInt::is_one);
        if !ok && counterexample.is_none() {
            counterexample = Some(serde_json::json!({ "degree": n }));
        }
        degrees.push(DegreeRow {
            n,
            pi: row_pi,
            lyndon,
            poincare_product: product[n].to_string(),
            poincare_expected: expected.to_string(),
            snf_max_factor: snf.map(BigInt::to_string),
            verdict: Verdict::from_bool(ok),
        });
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        check: "ditters".into(),
        parameters: serde_json::json!({
            "max_degree": max_degree,
            "primes": primes,
            "snf_max_degree": SNF_MAX_DEGREE.min(max_degree),
        }),
        verdict: Verdict::from_bool(degrees.iter().all(|r| r.verdict.passed())),
        degrees,
        counterexample,
    })
}

/// `(rank HH_0, rank HH_1)` of NSymm in internal degree `2n`: both are the number
/// of cyclic rotation classes of compositions of `n`.
pub fn hh_ranks(n: usize) -> Result<(usize, usize), HarnessError> {
    if n == 0 {
        return Err(HarnessError::ZeroDegree);
    }
    let orbits: BTreeSet<Composition> = Composition::all_of_degree(n).iter().map(Composition::rotation_class_min).collect();
    Ok((orbits.len(), orbits.len()))
}

/// Ranks from the rotation operator itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HhLinearAlgebra {
    pub n: usize,
    pub dimension: usize,
    pub coinvariants: usize,
    pub invariants: usize,
    /// All nonzero invariant factors of `1 - τ` over Z equal 1, so the coinvariants are free.
    pub coinvariants_free: bool,
}

/// Rotation `τ` on compositions of `n` as a matrix, then `dim - rank(1 - τ)`
/// for the coinvariants and the nullity for the invariants.
pub fn hh_linear_algebra(n: usize) -> Result<HhLinearAlgebra, HarnessError> {
    if n == 0 {
        return Err(HarnessError::ZeroDegree);
    }
    let basis = Composition::all_of_degree(n);
    let index: BTreeMap<&Composition, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let dim = basis.len();
    let mut rows = vec![vec![BigInt::zero(); dim]; dim];
    for (j, k) in basis.iter().enumerate() {
        let mut parts = k.parts().to_vec();
        parts.rotate_left(1);
        let image = Composition::new(parts).expect("rotation keeps parts positive");
        rows[j][j] += 1;
        rows[index[&image]][j] -= 1;
    }
    let rational: Vec<Vec<Scalar>> =
        rows.iter().map(|r| r.iter().map(|c| Scalar::from_integer(c.clone())).collect()).collect();
    let r = rank(Ring::Rationals, rational)?;
    let factors = smith_invariant_factors(rows);
    Ok(HhLinearAlgebra {
        n,
        dimension: dim,
        coinvariants: dim - r,
        invariants: dim - r,
        coinvariants_free: factors.iter().all(BigInt::is_one),
    })
}
