//! Commutative polynomials with exponent-vector keys.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::One;

use crate::element::{Element, MonoidKey};
use crate::ring::{Ring, Scalar};

/// Exponent vector; variable `i` has exponent `self.0[i]`. Trailing zeros are trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// `sum_i weight(i) * e_i`.
    pub fn weight(&self, weight: impl Fn(usize) -> usize) -> usize {
        self.0.iter().enumerate().map(|(i, &e)| weight(i) * e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::new(v)
    }

    /// Variables with multiplicity, e.g. `x0^2 x2` gives `[0, 0, 2]`.
    pub fn variables(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn from_variables(vars: &[usize]) -> Self {
        let n = vars.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0; n];
        for &i in vars {
            v[i] += 1;
        }
        Monomial::new(v)
    }

    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    // more of an earlier variable sorts first
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MonoidKey for Monomial {
    fn unit() -> Self {
        Monomial::one()
    }
    fn combine(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

pub type Poly = Element<Monomial>;

pub fn var(ring: Ring, i: usize) -> Poly {
    Poly::basis(ring, Monomial::var(i))
}

/// Algebra map out of a polynomial ring: variable `i` goes to `image(i)`.
pub fn substitute<K: MonoidKey>(p: &Poly, mut image: impl FnMut(usize) -> Element<K>) -> Element<K> {
    let ring = p.ring();
    let mut images: HashMap<usize, Vec<Element<K>>> = HashMap::new();
    let mut out = Element::zero(ring);
    for (m, c) in p.terms() {
        let mut term = Element::scalar(ring, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let powers = images.entry(i).or_insert_with(|| vec![Element::one(ring), image(i)]);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().product(&powers[1]);
                powers.push(next);
            }
            term = term.product(&powers[e as usize]);
        }
        out = &out + &term;
    }
    out
}

/// Evaluate at a point; the point's coordinates are read in the polynomial's ring.
pub fn evaluate(p: &Poly, point: &[Scalar]) -> Scalar {
    let ring = p.ring();
    let mut total = Scalar::default();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = ring.mul(&t, &ring.pow(&point[i], e));
            }
        }
        total = ring.add(&total, &t);
    }
    total
}

/// Evaluate a polynomial with coefficients in `Z` inside another ring.
pub fn evaluate_in(p: &Poly, ring: Ring, point: &[Scalar]) -> Scalar {
    let mut total = Scalar::default();
    for (m, c) in p.terms() {
        let mut t = ring.coerce_from(c).expect("integral coefficient");
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = ring.mul(&t, &ring.pow(&point[i], e));
            }
        }
        total = ring.add(&total, &t);
    }
    total
}

pub fn render_poly(p: &Poly, name: impl Fn(usize) -> String) -> String {
    p.render_with(|m| m.render(&name), Monomial::is_one)
}

/// Scalar multiple of one.
pub fn constant(ring: Ring, c: Scalar) -> Poly {
    Poly::scalar(ring, c)
}

pub fn is_constant_one(p: &Poly) -> bool {
    p.len() == 1 && p.constant_term().is_one()
}
