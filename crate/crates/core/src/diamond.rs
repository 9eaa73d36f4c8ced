//! The diamond product on NSymm, quasi-Witt vectors dual to it, and the
//! abelianization `NSymm -> Symm`.
//!
//! `◇` is evaluated on monomials by decomposing the right factor first: a
//! right factor of length `m ≥ 2` goes through the `m`-fold coproduct of the
//! left factor, a generator on the right with a product on the left uses
//! right distributivity, and generator ◇ generator has a closed formula.
//! The unit satisfies `1 ◇ 1 = 1` and annihilates everything else.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::{binomial, factorial};
use crate::composition::Composition;
use crate::element::AlgebraElement;
use crate::linalg::row_reduce;
use crate::nsymm::{self, monomial_coproduct_k, Side};
use crate::poly::{Monomial, Poly};
use crate::qsymm;
use crate::ring::{Ring, RingError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiamondError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("no value given for {0}")]
    MissingValue(Composition),
    #[error("value at [] must be 1")]
    NotUnital,
    #[error("not multiplicative: f({left}) f({right}) differs from f({left} ⊙ {right})")]
    NotMultiplicative { left: Composition, right: Composition },
    #[error("truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `Z_i ◇ Z_j = Σ_{r≤i, s≤j} C(r+s, r) χ(Z_{j-s}) Z_{r+s} χ(Z_{i-r})`.
pub fn diamond_gen(ring: Ring, i: u32, j: u32) -> AlgebraElement {
    let chi = |n: u32| {
        if n == 0 {
            AlgebraElement::one(ring)
        } else {
            nsymm::antipode_generator(ring, n)
        }
    };
    let mut out = AlgebraElement::zero(ring);
    for r in 0..=i {
        for s in 0..=j {
            let middle = nsymm::generator(ring, r + s);
            let term = chi(j - s).product(&middle).product(&chi(i - r));
            out.add_scaled(&term, &ring.element(Scalar::from_integer(binomial((r + s) as u64, r as u64))).expect("integer"));
        }
    }
    out
}

/// Memo for monomial diamond products over one ring.
#[derive(Debug)]
pub struct DiamondCache {
    ring: Ring,
    generators: HashMap<(u32, u32), AlgebraElement>,
    monomials: HashMap<(Composition, Composition), AlgebraElement>,
}

impl DiamondCache {
    pub fn new(ring: Ring) -> Self {
        DiamondCache { ring, generators: HashMap::new(), monomials: HashMap::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    fn generator_pair(&mut self, i: u32, j: u32) -> AlgebraElement {
        let ring = self.ring;
        self.generators.entry((i, j)).or_insert_with(|| diamond_gen(ring, i, j)).clone()
    }

    /// `u ◇ v` for monomials.
    pub fn monomial(&mut self, u: &Composition, v: &Composition) -> AlgebraElement {
        let ring = self.ring;
        match (u.is_empty(), v.is_empty()) {
            (true, true) => return AlgebraElement::one(ring),
            (true, false) | (false, true) => return AlgebraElement::zero(ring),
            _ => {}
        }
        if let Some(hit) = self.monomials.get(&(u.clone(), v.clone())) {
            return hit.clone();
        }
        let out = if v.len() >= 2 {
            // left distributivity through the v.len()-fold coproduct of u
            let mut acc = AlgebraElement::zero(ring);
            for pieces in monomial_coproduct_k(u, v.len()) {
                if pieces.iter().any(Composition::is_empty) {
                    continue;
                }
                let mut term = AlgebraElement::one(ring);
                for (piece, &b) in pieces.iter().zip(v.parts()) {
                    let factor = self.monomial(piece, &Composition::single(b));
                    if factor.is_zero() {
                        term = factor;
                        break;
                    }
                    term = term.product(&factor);
                }
                acc = &acc + &term;
            }
            acc
        } else if u.len() >= 2 {
            // right distributivity for a generator on the right
            let j = v.parts()[0];
            let mut acc = AlgebraElement::zero(ring);
            for split in positive_splits(j, u.len()) {
                let mut term = AlgebraElement::one(ring);
                for (&a, &ji) in u.parts().iter().zip(&split) {
                    term = term.product(&self.generator_pair(a, ji));
                }
                acc = &acc + &term;
            }
            acc
        } else {
            self.generator_pair(u.parts()[0], v.parts()[0])
        };
        self.monomials.insert((u.clone(), v.clone()), out.clone());
        out
    }

    pub fn product(&mut self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, RingError> {
        let ring = self.ring;
        ring.ensure_same(&x.ring())?;
        ring.ensure_same(&y.ring())?;
        let mut out = AlgebraElement::zero(ring);
        for (u, cu) in x.terms() {
            for (v, cv) in y.terms() {
                let m = self.monomial(u, v);
                out.add_scaled(&m, &ring.mul(cu, cv));
            }
        }
        Ok(out)
    }

    /// `Σ (u' ◇ a)(u'' ◇ b)` over the coproduct of `u`: one step of left
    /// distributivity with the right factor split as `a·b`.
    pub fn split_right(&mut self, u: &Composition, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let ring = self.ring;
        let mut out = AlgebraElement::zero(ring);
        for ((u1, u2), c) in nsymm::monomial_coproduct(ring, u).terms() {
            let left = self.product(&AlgebraElement::basis(ring, u1.clone()), a).expect("same ring");
            if left.is_zero() {
                continue;
            }
            let right = self.product(&AlgebraElement::basis(ring, u2.clone()), b).expect("same ring");
            out.add_scaled(&left.product(&right), c);
        }
        out
    }
}

/// Ordered ways to write `n` as a sum of `k` positive parts.
fn positive_splits(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return if n >= 1 { vec![vec![n]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..n {
        for mut rest in positive_splits(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn diamond(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, RingError> {
    DiamondCache::new(x.ring()).product(x, y)
}

/// Right-nested power `Z_1 ◇ (Z_1 ◇ (... ◇ Z_1))`.
pub fn diamond_power_z1(ring: Ring, n: u32) -> Result<AlgebraElement, DiamondError> {
    if n == 0 {
        return Err(DiamondError::ZeroIndex);
    }
    let z1 = nsymm::generator(ring, 1);
    let mut cache = DiamondCache::new(ring);
    let mut acc = z1.clone();
    for _ in 1..n {
        acc = cache.product(&z1, &acc)?;
    }
    Ok(acc)
}

/// `(-1)^{n-1} (n-1)! Q_n`.
pub fn expected_diamond_power_z1(ring: Ring, n: u32) -> AlgebraElement {
    let q = nsymm::newton_q(ring, n, Side::Left).expect("n >= 1");
    let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    q.scale(&ring.element(Scalar::from_integer(sign * factorial(n as u64 - 1))).expect("integer"))
}

/// Ring map `Z_i ↦ c_i` into Symm.
pub fn abelianize(x: &AlgebraElement) -> Poly {
    x.map_keys(|k| Monomial::from_variables(&k.parts().iter().map(|&a| a as usize - 1).collect::<Vec<_>>()))
}

/// `(x y) ◇ v` against `Σ (x ◇ v')(y ◇ v'')` over the coproduct of `v`, for
/// monomials `x`, `y` of positive degree and every right factor `v` with total
/// degree at most `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightDistributivityReport {
    pub max_degree: usize,
    pub generator_cases: usize,
    pub generator_failures: usize,
    pub general_cases: usize,
    pub general_failures: usize,
    pub first_failure: Option<(Composition, Composition, Composition)>,
}

pub fn right_distributivity_report(ring: Ring, max_degree: usize) -> RightDistributivityReport {
    let mut cache = DiamondCache::new(ring);
    let mut report = RightDistributivityReport {
        max_degree,
        generator_cases: 0,
        generator_failures: 0,
        general_cases: 0,
        general_failures: 0,
        first_failure: None,
    };
    let keys: Vec<Composition> = Composition::all_up_to_degree(max_degree).into_iter().filter(|k| !k.is_empty()).collect();
    for x in &keys {
        for y in &keys {
            for v in &keys {
                if x.degree() + y.degree() + v.degree() > max_degree {
                    continue;
                }
                let lhs = cache.monomial(&x.concat(y), v);
                let mut rhs = AlgebraElement::zero(ring);
                for ((v1, v2), c) in nsymm::monomial_coproduct(ring, v).terms() {
                    let a = cache.monomial(x, v1);
                    let b = cache.monomial(y, v2);
                    rhs.add_scaled(&a.product(&b), c);
                }
                let holds = lhs == rhs;
                if v.len() == 1 {
                    report.generator_cases += 1;
                    report.generator_failures += usize::from(!holds);
                } else {
                    report.general_cases += 1;
                    report.general_failures += usize::from(!holds);
                    if !holds && report.first_failure.is_none() {
                        report.first_failure = Some((x.clone(), y.clone(), v.clone()));
                    }
                }
            }
        }
    }
    report
}

/// Transpose of `◇` in monomial bases, over `Z`: for each key `α`, the pairs
/// `(u, v)` with `⟨α, u ◇ v⟩ ≠ 0`.
#[derive(Debug)]
pub struct DiamondTable {
    len: usize,
    by_key: BTreeMap<Composition, Vec<(Composition, Composition, BigInt)>>,
}

impl DiamondTable {
    pub fn new(len: usize) -> Self {
        let mut cache = DiamondCache::new(Ring::Integers);
        let mut by_key: BTreeMap<Composition, Vec<(Composition, Composition, BigInt)>> = BTreeMap::new();
        by_key.entry(Composition::empty()).or_default().push((Composition::empty(), Composition::empty(), BigInt::one()));
        for n in 2..=len {
            for du in 1..n {
                for u in Composition::all_of_degree(du) {
                    for v in Composition::all_of_degree(n - du) {
                        for (k, c) in cache.monomial(&u, &v).terms() {
                            by_key.entry(k.clone()).or_default().push((u.clone(), v.clone(), c.to_integer()));
                        }
                    }
                }
            }
        }
        DiamondTable { len, by_key }
    }

    pub fn cached(len: usize) -> Arc<DiamondTable> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<DiamondTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(t) = cache.read().expect("cache lock").get(&len) {
            return Arc::clone(t);
        }
        let built = Arc::new(DiamondTable::new(len));
        let mut guard = cache.write().expect("cache lock");
        Arc::clone(guard.entry(len).or_insert(built))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn pairs(&self, key: &Composition) -> &[(Composition, Composition, BigInt)] {
        self.by_key.get(key).map_or(&[], Vec::as_slice)
    }
}

/// A multiplicative functional on QSymm, recorded on every composition of degree at most `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiWittVector {
    ring: Ring,
    len: usize,
    values: BTreeMap<Composition, Scalar>,
}

impl QuasiWittVector {
    /// Validates unitality and multiplicativity on all products landing in degree `≤ len`.
    pub fn from_values(ring: Ring, len: usize, values: BTreeMap<Composition, Scalar>) -> Result<Self, DiamondError> {
        let mut clean = BTreeMap::new();
        for key in Composition::all_up_to_degree(len) {
            let v = values.get(&key).cloned().ok_or_else(|| DiamondError::MissingValue(key.clone()))?;
            clean.insert(key, ring.element(v)?);
        }
        let f = QuasiWittVector { ring, len, values: clean };
        if !f.values[&Composition::empty()].is_one() {
            return Err(DiamondError::NotUnital);
        }
        f.check_multiplicative()?;
        Ok(f)
    }

    fn check_multiplicative(&self) -> Result<(), DiamondError> {
        let r = self.ring;
        let keys: Vec<&Composition> = self.values.keys().filter(|k| !k.is_empty()).collect();
        for a in &keys {
            for b in &keys {
                if a.degree() + b.degree() > self.len || b < a {
                    continue;
                }
                let lhs = r.mul(&self.values[*a], &self.values[*b]);
                let rhs = qsymm::shuffle_keys(a, b).into_iter().fold(Scalar::zero(), |acc, (k, m)| {
                    r.add(&acc, &r.mul(&r.element(Scalar::from_integer(m)).expect("integer"), &self.values[&k]))
                });
                if lhs != rhs {
                    return Err(DiamondError::NotMultiplicative { left: (*a).clone(), right: (*b).clone() });
                }
            }
        }
        Ok(())
    }

    /// The counit: 1 on `[]`, 0 elsewhere.
    pub fn counit(ring: Ring, len: usize) -> Self {
        let values = Composition::all_up_to_degree(len)
            .into_iter()
            .map(|k| {
                let v = if k.is_empty() { ring.one() } else { ring.zero() };
                (k, v)
            })
            .collect();
        QuasiWittVector { ring, len, values }
    }

    /// Evaluation of the monomial quasisymmetric functions at a point:
    /// `f([a1..an]) = Σ_{i1<...<in} x_{i1}^{a1} ... x_{in}^{an}`.
    pub fn evaluation(ring: Ring, len: usize, point: &[Scalar]) -> Result<Self, DiamondError> {
        let point: Vec<Scalar> = point.iter().map(|x| ring.element(x.clone())).collect::<Result<_, _>>()?;
        let values = Composition::all_up_to_degree(len)
            .into_iter()
            .map(|k| {
                let v = monomial_quasisymmetric(ring, &k, &point);
                (k, v)
            })
            .collect();
        Ok(QuasiWittVector { ring, len, values })
    }

    /// Over Q, the functional with prescribed values on the Lyndon words; the
    /// remaining values follow from multiplicativity.
    pub fn from_lyndon_values(len: usize, lyndon_values: &BTreeMap<Composition, Scalar>) -> Result<Self, DiamondError> {
        let q = Ring::Rationals;
        let mut values: BTreeMap<Composition, Scalar> = BTreeMap::new();
        values.insert(Composition::empty(), q.one());
        for n in 1..=len {
            let basis = Composition::all_of_degree(n);
            let index: HashMap<&Composition, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
            let width = basis.len();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for d in 1..=n / 2 {
                for a in Composition::all_of_degree(d) {
                    for b in Composition::all_of_degree(n - d) {
                        let mut row = vec![Scalar::zero(); width + 1];
                        for (k, m) in qsymm::shuffle_keys(&a, &b) {
                            row[index[&k]] = Scalar::from_integer(m);
                        }
                        row[width] = &values[&a] * &values[&b];
                        rows.push(row);
                    }
                }
            }
            for w in crate::lyndon::lyndon_by_degree(n) {
                let key = Composition::new(w).expect("positive");
                let v = lyndon_values.get(&key).cloned().ok_or_else(|| DiamondError::MissingValue(key.clone()))?;
                let mut row = vec![Scalar::zero(); width + 1];
                row[index[&key]] = Scalar::one();
                row[width] = v;
                rows.push(row);
            }
            let (reduced, pivots) = row_reduce(q, rows)?;
            for (row, &col) in reduced.iter().zip(&pivots) {
                if col < width {
                    values.insert(basis[col].clone(), row[width].clone());
                }
            }
        }
        QuasiWittVector::from_values(q, len, values)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self, key: &Composition) -> Option<&Scalar> {
        self.values.get(key)
    }

    pub fn values(&self) -> &BTreeMap<Composition, Scalar> {
        &self.values
    }

    fn check(&self, other: &QuasiWittVector) -> Result<(), DiamondError> {
        self.ring.ensure_same(&other.ring)?;
        if self.len != other.len {
            return Err(DiamondError::TruncationMismatch(self.len, other.len));
        }
        Ok(())
    }

    /// Linear extension to a QSymm element of degree `≤ len`.
    pub fn apply(&self, x: &AlgebraElement) -> Scalar {
        let r = self.ring;
        x.terms().fold(Scalar::zero(), |acc, (k, c)| r.add(&acc, &r.mul(c, &self.values[k])))
    }

    /// Convolution through the deconcatenation coproduct.
    pub fn star(&self, other: &QuasiWittVector) -> Result<QuasiWittVector, DiamondError> {
        self.check(other)?;
        let r = self.ring;
        let values = self
            .values
            .keys()
            .map(|k| {
                let v = (0..=k.len()).fold(Scalar::zero(), |acc, i| {
                    r.add(&acc, &r.mul(&self.values[&k.prefix(i)], &other.values[&k.suffix(i)]))
                });
                (k.clone(), v)
            })
            .collect();
        Ok(QuasiWittVector { ring: r, len: self.len, values })
    }

    /// Inverse for `⋆`: precomposition with the antipode.
    pub fn star_inverse(&self) -> QuasiWittVector {
        let values = self
            .values
            .keys()
            .map(|k| (k.clone(), self.apply(&qsymm::antipode_key(self.ring, k))))
            .collect();
        QuasiWittVector { ring: self.ring, len: self.len, values }
    }

    /// `(f ◇ g)(α) = Σ ⟨α, u ◇ v⟩ f(u) g(v)`.
    pub fn diamond(&self, other: &QuasiWittVector) -> Result<QuasiWittVector, DiamondError> {
        self.check(other)?;
        let r = self.ring;
        let table = DiamondTable::cached(self.len);
        let values = self
            .values
            .keys()
            .map(|k| {
                let v = table.pairs(k).iter().fold(Scalar::zero(), |acc, (u, w, c)| {
                    let c = r.element(Scalar::from_integer(c.clone())).expect("integer");
                    r.add(&acc, &r.mul(&c, &r.mul(&self.values[u], &other.values[w])))
                });
                (k.clone(), v)
            })
            .collect();
        Ok(QuasiWittVector { ring: r, len: self.len, values })
    }

    /// Multiplicativity of a computed result.
    pub fn is_multiplicative(&self) -> bool {
        self.check_multiplicative().is_ok() && self.values[&Composition::empty()].is_one()
    }

    /// First key (in canonical order) where two functionals differ.
    pub fn first_difference(&self, other: &QuasiWittVector) -> Option<Composition> {
        self.values.iter().find(|(k, v)| other.values.get(*k) != Some(*v)).map(|(k, _)| k.clone())
    }
}

pub fn monomial_quasisymmetric(ring: Ring, key: &Composition, point: &[Scalar]) -> Scalar {
    // dp[j] = value of the prefix of key processed so far using variables before the current one
    let parts = key.parts();
    let mut dp = vec![Scalar::zero(); parts.len() + 1];
    dp[0] = ring.one();
    for x in point {
        for j in (1..=parts.len()).rev() {
            let t = ring.mul(&dp[j - 1], &ring.pow(x, parts[j - 1]));
            dp[j] = ring.add(&dp[j], &t);
        }
    }
    dp[parts.len()].clone()
}
