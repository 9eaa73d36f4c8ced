//! Sparse linear combinations of basis keys over a [`Ring`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::composition::Composition;
use crate::ring::{is_negative, scalar_string, Ring, RingError, Scalar};

/// Basis keys that carry a grading.
pub trait Graded {
    fn degree(&self) -> usize;
}

/// Basis keys forming a monoid, so that linear combinations form a monoid algebra.
pub trait MonoidKey: Ord + Clone {
    fn unit() -> Self;
    fn combine(&self, other: &Self) -> Self;
}

impl Graded for Composition {
    fn degree(&self) -> usize {
        Composition::degree(self)
    }
}

impl MonoidKey for Composition {
    fn unit() -> Self {
        Composition::empty()
    }
    fn combine(&self, other: &Self) -> Self {
        self.concat(other)
    }
}

impl<A: Graded, B: Graded> Graded for (A, B) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
}

impl<A: MonoidKey, B: MonoidKey> MonoidKey for (A, B) {
    fn unit() -> Self {
        (A::unit(), B::unit())
    }
    fn combine(&self, other: &Self) -> Self {
        (self.0.combine(&other.0), self.1.combine(&other.1))
    }
}

impl<A: Graded, B: Graded, C: Graded> Graded for (A, B, C) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree() + self.2.degree()
    }
}

impl<A: MonoidKey, B: MonoidKey, C: MonoidKey> MonoidKey for (A, B, C) {
    fn unit() -> Self {
        (A::unit(), B::unit(), C::unit())
    }
    fn combine(&self, other: &Self) -> Self {
        (
            self.0.combine(&other.0),
            self.1.combine(&other.1),
            self.2.combine(&other.2),
        )
    }
}

/// A finite linear combination `sum c_k * k` with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element<K: Ord> {
    ring: Ring,
    terms: BTreeMap<K, Scalar>,
}

pub type AlgebraElement = Element<Composition>;
pub type TensorElement = Element<(Composition, Composition)>;
pub type Tensor3Element = Element<(Composition, Composition, Composition)>;

impl<K: Ord + Clone> Element<K> {
    pub fn zero(ring: Ring) -> Self {
        Element { ring, terms: BTreeMap::new() }
    }

    pub fn basis(ring: Ring, key: K) -> Self {
        Self::term(ring, key, Scalar::one())
    }

    /// `c * key`; the coefficient is reduced into the ring (and must belong to it).
    pub fn term(ring: Ring, key: K, c: Scalar) -> Self {
        let mut e = Self::zero(ring);
        let c = ring.element(c).expect("coefficient belongs to ring");
        e.add_term(key, &c);
        e
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<K, Scalar> {
        self.terms
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Add `c * key` in place, pruning zeros.
    pub fn add_term(&mut self, key: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                let c = ring.add(&Scalar::zero(), c);
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = ring.add(o.get(), c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        for (k, v) in &other.terms {
            let cv = self.ring.mul(v, c);
            self.add_term(k.clone(), &cv);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self - other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ring);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&self.ring.from_int(c))
    }

    /// Apply a linear map given on basis keys.
    pub fn linear_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Element<K2>) -> Element<K2> {
        let mut out = Element::zero(self.ring);
        for (k, c) in &self.terms {
            let image = f(k);
            out.add_scaled(&image, c);
        }
        out
    }

    /// Relabel keys; colliding keys are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Element<K2> {
        let mut out = Element::zero(self.ring);
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    /// Re-read the coefficients in another ring (e.g. `Z -> F_p`).
    pub fn change_ring(&self, ring: Ring) -> Result<Self, RingError> {
        let mut out = Element::zero(ring);
        for (k, c) in &self.terms {
            let c = ring.coerce_from(c)?;
            out.add_term(k.clone(), &c);
        }
        Ok(out)
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Element {
            ring: self.ring,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Render with a key printer; `unit` is the rendering of the unit key (coefficient-only terms).
    pub fn render_with(&self, mut key: impl FnMut(&K) -> String, is_unit: impl Fn(&K) -> bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if is_unit(k) {
                out.push_str(&scalar_string(&abs));
            } else if abs.is_one() {
                out.push_str(&key(k));
            } else {
                out.push_str(&scalar_string(&abs));
                out.push('*');
                out.push_str(&key(k));
            }
        }
        out
    }
}

impl<K: Ord + Clone + Graded> Element<K> {
    pub fn homogeneous(&self, degree: usize) -> Self {
        self.filter(|k| k.degree() == degree)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Graded::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Graded::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Drop every term above `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        self.filter(|k| k.degree() <= degree)
    }
}

impl<K: MonoidKey> Element<K> {
    pub fn one(ring: Ring) -> Self {
        Self::basis(ring, K::unit())
    }

    pub fn scalar(ring: Ring, c: Scalar) -> Self {
        Self::term(ring, K::unit(), c)
    }

    /// Monoid-algebra product.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut out = Self::zero(self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.combine(b), &self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn checked_product(&self, other: &Self) -> Result<Self, RingError> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.product(other))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Coefficient of the unit key.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&K::unit())
    }
}

impl<K: Ord + Clone> Add for &Element<K> {
    type Output = Element<K>;
    fn add(self, rhs: &Element<K>) -> Element<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<K: Ord + Clone> Sub for &Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: &Element<K>) -> Element<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl<K: Ord + Clone> Neg for &Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        self.scale(&-Scalar::one())
    }
}

/// `x ⊗ y` for two linear combinations.
pub fn tensor<A: Ord + Clone, B: Ord + Clone>(x: &Element<A>, y: &Element<B>) -> Element<(A, B)> {
    assert_eq!(x.ring(), y.ring(), "ring mismatch");
    let ring = x.ring();
    let mut out = Element::zero(ring);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out.add_term((a.clone(), b.clone()), &ring.mul(ca, cb));
        }
    }
    out
}

/// Apply `f ⊗ g` to a tensor.
pub fn tensor_map<A, B, C, D>(
    t: &Element<(A, B)>,
    mut f: impl FnMut(&A) -> Element<C>,
    mut g: impl FnMut(&B) -> Element<D>,
) -> Element<(C, D)>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
    D: Ord + Clone,
{
    t.linear_map(|(a, b)| tensor(&f(a), &g(b)))
}

/// Render a tensor of compositions as `x ⊗ y` terms.
pub fn render_tensor<A: Ord + Clone, B: Ord + Clone>(
    t: &Element<(A, B)>,
    left: impl Fn(&A) -> String,
    right: impl Fn(&B) -> String,
) -> String {
    t.render_with(|(a, b)| format!("{} ⊗ {}", left(a), right(b)), |_| false)
}
