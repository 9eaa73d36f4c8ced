//! Reduced power operations on QSymm(F_p). For `p = 2`, `P^i` stands for `Sq^{2i}`.

use thiserror::Error;

use crate::combinat::{binomial_mod_p, is_prime};
use crate::composition::Composition;
use crate::element::AlgebraElement;
use crate::qsymm::shuffle_power;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("reduced powers act on F_{p} coefficients, got {ring}")]
    WrongRing { p: u64, ring: Ring },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SteenrodContext {
    p: u64,
}

impl SteenrodContext {
    pub fn new(p: u64) -> Result<Self, SteenrodError> {
        if !is_prime(p) {
            return Err(SteenrodError::NotPrime(p));
        }
        Ok(SteenrodContext { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ring(&self) -> Ring {
        Ring::PrimeField(self.p)
    }

    /// True when `P^i` is read as the even square `Sq^{2i}`.
    pub fn uses_even_squares(&self) -> bool {
        self.p == 2
    }

    /// `P^k[n] = C(n,k) [n + k(p-1)]`.
    pub fn single(&self, k: u32, n: u32) -> AlgebraElement {
        let ring = self.ring();
        let c = binomial_mod_p(n as u64, k as u64, self.p).expect("prime checked");
        let part = n + k * (self.p as u32 - 1);
        AlgebraElement::term(ring, Composition::single(part), ring.from_int(c))
    }

    /// `P^k` on one key, by the Cartan formula across concatenated parts.
    pub fn on_key(&self, k: u32, key: &Composition) -> AlgebraElement {
        let ring = self.ring();
        let mut remaining_parts: u32 = key.parts().iter().sum();
        let mut budget = vec![(Composition::empty(), k, ring.one())];
        // distribute k over the parts; a part n absorbs at most n
        for &n in key.parts() {
            remaining_parts -= n;
            let mut next = Vec::new();
            for (prefix, left, c) in &budget {
                for ki in 0..=(*left).min(n) {
                    if left - ki > remaining_parts {
                        continue;
                    }
                    let b = binomial_mod_p(n as u64, ki as u64, self.p).expect("prime checked");
                    if b == 0 {
                        continue;
                    }
                    let part = n + ki * (self.p as u32 - 1);
                    next.push((
                        prefix.concat(&Composition::single(part)),
                        left - ki,
                        ring.mul(c, &ring.from_int(b)),
                    ));
                }
            }
            budget = next;
        }
        let mut acc = AlgebraElement::zero(ring);
        for (key, left, c) in budget {
            if left == 0 {
                acc.add_term(key, &c);
            }
        }
        acc
    }

    pub fn apply(&self, k: u32, x: &AlgebraElement) -> Result<AlgebraElement, SteenrodError> {
        self.check_ring(x)?;
        Ok(x.linear_map(|key| self.on_key(k, key)))
    }

    /// The Bockstein vanishes: everything sits in even degrees.
    pub fn bockstein(&self, x: &AlgebraElement) -> Result<AlgebraElement, SteenrodError> {
        self.check_ring(x)?;
        Ok(AlgebraElement::zero(self.ring()))
    }

    /// `α^{⊙p} = [p a1, ..., p ar] = P^{deg α}(α)` in QSymm(F_p).
    pub fn verify_pth_power(&self, alpha: &Composition) -> bool {
        let ring = self.ring();
        let x = AlgebraElement::basis(ring, alpha.clone());
        let power = shuffle_power(&x, self.p as u32);
        let scaled = AlgebraElement::basis(ring, alpha.scaled(self.p as u32));
        let top = self.on_key(alpha.degree() as u32, alpha);
        power == scaled && top == scaled
    }

    fn check_ring(&self, x: &AlgebraElement) -> Result<(), SteenrodError> {
        if x.ring() != self.ring() {
            return Err(SteenrodError::WrongRing { p: self.p, ring: x.ring() });
        }
        Ok(())
    }
}
