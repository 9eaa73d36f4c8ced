//! Big Witt vectors `W(R)` truncated at length `N`, the series group `Λ(R)`
//! and the exponential `E(x) = Π (1 - x_i t^i)` between them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use super::WittError;
use crate::combinat::divisors;
use crate::poly::{evaluate_in, var, Poly};
use crate::ring::{Ring, Scalar};

/// Universal sum, product and negation polynomials for one truncation.
/// In each polynomial `a_i` is variable `i-1` and `b_i` is variable `N+i-1`.
#[derive(Debug, Clone)]
pub struct WittRing {
    len: usize,
    sum: Vec<Poly>,
    product: Vec<Poly>,
    negation: Vec<Poly>,
}

fn ghost_poly(ring: Ring, n: usize, offset: usize) -> Poly {
    let mut g = Poly::zero(ring);
    for d in divisors(n as u64) {
        let d = d as usize;
        g.add_scaled(&var(ring, offset + d - 1).pow((n / d) as u32), &ring.from_int(d as i64));
    }
    g
}

/// Solve `Σ_{d|n} d X_d^{n/d} = target_n` for `X_n` over Q, then check integrality.
fn solve_ghost(len: usize, target: impl Fn(usize) -> Poly, what: &str) -> Result<Vec<Poly>, WittError> {
    let q = Ring::Rationals;
    let mut xs: Vec<Poly> = Vec::with_capacity(len);
    for n in 1..=len {
        let mut rest = target(n);
        for d in divisors(n as u64) {
            let d = d as usize;
            if d < n {
                rest.add_scaled(&xs[d - 1].pow((n / d) as u32), &q.from_int(-(d as i64)));
            }
        }
        xs.push(rest.scale(&Scalar::new(1.into(), (n as i64).into())));
    }
    xs.into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.change_ring(Ring::Integers)
                .map_err(|_| WittError::NotIntegral(format!("universal {what} polynomial {}", i + 1)))
        })
        .collect()
}

impl WittRing {
    pub fn new(len: usize) -> Result<Self, WittError> {
        let q = Ring::Rationals;
        let ga: Vec<Poly> = (1..=len).map(|n| ghost_poly(q, n, 0)).collect();
        let gb: Vec<Poly> = (1..=len).map(|n| ghost_poly(q, n, len)).collect();
        let sum = solve_ghost(len, |n| &ga[n - 1] + &gb[n - 1], "sum")?;
        let product = solve_ghost(len, |n| ga[n - 1].product(&gb[n - 1]), "product")?;
        let negation = solve_ghost(len, |n| -&ga[n - 1], "negation")?;
        Ok(WittRing { len, sum, product, negation })
    }

    /// Shared instance for a truncation, built on first use.
    pub fn cached(len: usize) -> Arc<WittRing> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<WittRing>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(w) = cache.read().expect("cache lock").get(&len) {
            return Arc::clone(w);
        }
        let built = Arc::new(WittRing::new(len).expect("universal Witt polynomials are integral"));
        let mut guard = cache.write().expect("cache lock");
        Arc::clone(guard.entry(len).or_insert(built))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sum_polynomials(&self) -> &[Poly] {
        &self.sum
    }

    pub fn product_polynomials(&self) -> &[Poly] {
        &self.product
    }

    pub fn negation_polynomials(&self) -> &[Poly] {
        &self.negation
    }

    /// Largest number of monomials in any universal polynomial.
    pub fn max_terms(&self) -> usize {
        self.sum.iter().chain(&self.product).chain(&self.negation).map(Poly::len).max().unwrap_or(0)
    }
}

/// Truncated big Witt vector `(x_1, ..., x_N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittVector {
    ring: Ring,
    coords: Vec<Scalar>,
}

impl WittVector {
    pub fn new(ring: Ring, coords: Vec<Scalar>) -> Result<Self, WittError> {
        let coords = coords.into_iter().map(|c| ring.element(c)).collect::<Result<_, _>>()?;
        Ok(WittVector { ring, coords })
    }

    pub fn from_ints(ring: Ring, coords: &[i64]) -> Self {
        WittVector { ring, coords: coords.iter().map(|&c| ring.from_int(c)).collect() }
    }

    pub fn zero(ring: Ring, len: usize) -> Self {
        WittVector { ring, coords: vec![Scalar::zero(); len] }
    }

    /// Multiplicative unit `(1, 0, ..., 0)`.
    pub fn one(ring: Ring, len: usize) -> Self {
        let mut coords = vec![Scalar::zero(); len];
        if len > 0 {
            coords[0] = ring.one();
        }
        WittVector { ring, coords }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    fn check(&self, other: &WittVector) -> Result<(), WittError> {
        self.ring.ensure_same(&other.ring)?;
        if self.len() != other.len() {
            return Err(WittError::TruncationMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    fn eval(&self, polys: &[Poly], other: Option<&WittVector>) -> WittVector {
        let mut point = self.coords.clone();
        match other {
            Some(o) => point.extend(o.coords.iter().cloned()),
            None => point.extend(std::iter::repeat_n(Scalar::zero(), self.len())),
        }
        WittVector { ring: self.ring, coords: polys.iter().map(|p| evaluate_in(p, self.ring, &point)).collect() }
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.check(other)?;
        Ok(self.eval(WittRing::cached(self.len()).sum_polynomials(), Some(other)))
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.check(other)?;
        Ok(self.eval(WittRing::cached(self.len()).product_polynomials(), Some(other)))
    }

    pub fn neg(&self) -> WittVector {
        self.eval(WittRing::cached(self.len()).negation_polynomials(), None)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.add(&other.neg())
    }

    /// Ghost components `gh_n = Σ_{d|n} d x_d^{n/d}`.
    pub fn ghost(&self) -> Result<Vec<Scalar>, WittError> {
        if !self.ring.is_torsion_free() {
            return Err(WittError::NotTorsionFree(self.ring));
        }
        let r = self.ring;
        Ok((1..=self.len())
            .map(|n| {
                divisors(n as u64).into_iter().fold(Scalar::zero(), |acc, d| {
                    let d = d as usize;
                    let term = r.mul(&r.from_int(d as i64), &r.pow(&self.coords[d - 1], (n / d) as u32));
                    r.add(&acc, &term)
                })
            })
            .collect())
    }

    /// `E(x) = Π (1 - x_i t^i)` truncated at `t^N`.
    pub fn exponential(&self) -> LambdaSeries {
        let r = self.ring;
        let n = self.len();
        let mut series = LambdaSeries::one(r, n);
        for (i, x) in self.coords.iter().enumerate() {
            let mut factor = vec![Scalar::zero(); n];
            if i < n {
                factor[i] = r.neg(x);
            }
            series = series.mul(&LambdaSeries { ring: r, coeffs: factor }).expect("same shape");
        }
        series
    }
}

/// Truncated power series `1 + a_1 t + ... + a_N t^N`; addition in `Λ(R)` is multiplication here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSeries {
    ring: Ring,
    coeffs: Vec<Scalar>,
}

impl LambdaSeries {
    pub fn new(ring: Ring, coeffs: Vec<Scalar>) -> Result<Self, WittError> {
        let coeffs = coeffs.into_iter().map(|c| ring.element(c)).collect::<Result<_, _>>()?;
        Ok(LambdaSeries { ring, coeffs })
    }

    pub fn one(ring: Ring, len: usize) -> Self {
        LambdaSeries { ring, coeffs: vec![Scalar::zero(); len] }
    }

    /// `a_1, ..., a_N`; the constant term is always 1.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn mul(&self, other: &LambdaSeries) -> Result<LambdaSeries, WittError> {
        self.ring.ensure_same(&other.ring)?;
        if self.coeffs.len() != other.coeffs.len() {
            return Err(WittError::TruncationMismatch(self.coeffs.len(), other.coeffs.len()));
        }
        let r = self.ring;
        let n = self.coeffs.len();
        let full = |s: &LambdaSeries, i: usize| if i == 0 { r.one() } else { s.coeffs[i - 1].clone() };
        let coeffs = (1..=n)
            .map(|k| (0..=k).fold(Scalar::zero(), |acc, i| r.add(&acc, &r.mul(&full(self, i), &full(other, k - i)))))
            .collect();
        Ok(LambdaSeries { ring: r, coeffs })
    }

    /// Inverse of the exponential: peel off `(1 - x_n t^n)` one degree at a time.
    pub fn to_witt(&self) -> WittVector {
        let r = self.ring;
        let n = self.coeffs.len();
        let mut rest = self.clone();
        let mut xs = Vec::with_capacity(n);
        for k in 1..=n {
            let x = r.neg(&rest.coeffs[k - 1]);
            // multiply by (1 - x t^k)^{-1} = Σ_j x^j t^{jk}
            let mut inv = vec![Scalar::zero(); n];
            let mut j = 1;
            while j * k <= n {
                inv[j * k - 1] = r.pow(&x, j as u32);
                j += 1;
            }
            rest = rest.mul(&LambdaSeries { ring: r, coeffs: inv }).expect("same shape");
            xs.push(x);
        }
        WittVector { ring: r, coords: xs }
    }
}

/// Number of monomials of the universal polynomials, for reports.
pub fn universal_polynomial_sizes(len: usize) -> Vec<(usize, usize, usize)> {
    let w = WittRing::cached(len);
    (0..len).map(|i| (w.sum[i].len(), w.product[i].len(), w.negation[i].len())).collect()
}
