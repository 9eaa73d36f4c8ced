//! NSymm: the free associative algebra on `Z_1, Z_2, ...` with the coproduct
//! `Δ(Z_n) = Σ Z_p ⊗ Z_q`, its antipode and the Newton primitives.

use thiserror::Error;

use crate::composition::{render_nsymm_monomial, Composition};
use crate::element::{render_tensor, AlgebraElement, Tensor3Element, TensorElement};
use crate::linalg::kernel_basis;
use crate::ring::{Ring, RingError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NsymmError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("primitives live in even topological degree, got {0}")]
    OddDegree(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Which logarithmic derivative a Newton primitive comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `Q_n`, from `Z(t)^{-1} Z'(t)`.
    Left,
    /// `Q'_n`, from `Z'(t) Z(t)^{-1}`.
    Right,
}

/// `Z_n`, with `Z_0 = 1`.
pub fn generator(ring: Ring, n: u32) -> AlgebraElement {
    AlgebraElement::basis(ring, Composition::from_parts_skipping_zeros([n]))
}

pub fn monomial(ring: Ring, parts: &[u32]) -> AlgebraElement {
    AlgebraElement::basis(ring, Composition::from_parts_skipping_zeros(parts.iter().copied()))
}

/// Concatenation product.
pub fn product(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, RingError> {
    x.checked_product(y)
}

pub fn counit(x: &AlgebraElement) -> Scalar {
    x.constant_term()
}

fn generator_coproduct(ring: Ring, n: u32) -> TensorElement {
    let mut t = TensorElement::zero(ring);
    for p in 0..=n {
        t.add_term(
            (
                Composition::from_parts_skipping_zeros([p]),
                Composition::from_parts_skipping_zeros([n - p]),
            ),
            &ring.one(),
        );
    }
    t
}

/// Coproduct of a single monomial: the product of the generator coproducts.
pub fn monomial_coproduct(ring: Ring, key: &Composition) -> TensorElement {
    key.parts()
        .iter()
        .fold(TensorElement::one(ring), |acc, &a| acc.product(&generator_coproduct(ring, a)))
}

pub fn coproduct(x: &AlgebraElement) -> TensorElement {
    let ring = x.ring();
    x.linear_map(|k| monomial_coproduct(ring, k))
}

/// `Δ(x) - x⊗1 - 1⊗x`.
pub fn reduced_coproduct(x: &AlgebraElement) -> TensorElement {
    coproduct(x).filter(|(a, b)| !a.is_empty() && !b.is_empty())
}

/// Iterated coproduct into three tensor factors, `(Δ⊗id)Δ`.
pub fn coproduct_left_iterated(x: &AlgebraElement) -> Tensor3Element {
    let ring = x.ring();
    coproduct(x).linear_map(|(a, b)| {
        monomial_coproduct(ring, a).map_keys(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
    })
}

/// `(id⊗Δ)Δ`.
pub fn coproduct_right_iterated(x: &AlgebraElement) -> Tensor3Element {
    let ring = x.ring();
    coproduct(x).linear_map(|(a, b)| {
        monomial_coproduct(ring, b).map_keys(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
    })
}

/// `k`-fold coproduct of a monomial into `k` tensor factors (each part of
/// `Z_a` split as `a = a_1 + ... + a_k`), returned as lists of keys.
pub fn monomial_coproduct_k(key: &Composition, k: usize) -> Vec<Vec<Composition>> {
    fn splits(n: u32, k: usize) -> Vec<Vec<u32>> {
        if k == 1 {
            return vec![vec![n]];
        }
        let mut out = Vec::new();
        for first in 0..=n {
            for mut rest in splits(n - first, k - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut acc: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); k]];
    for &a in key.parts() {
        let mut next = Vec::new();
        for partial in &acc {
            for s in splits(a, k) {
                let mut p = partial.clone();
                for (slot, &piece) in p.iter_mut().zip(&s) {
                    if piece > 0 {
                        slot.push(piece);
                    }
                }
                next.push(p);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|slots| slots.into_iter().map(|v| Composition::new(v).expect("positive")).collect())
        .collect()
}

/// `χ(Z_n) = Σ_{a_1+...+a_m=n} (-1)^m Z_{a_1}...Z_{a_m}`.
pub fn antipode_generator(ring: Ring, n: u32) -> AlgebraElement {
    let mut out = AlgebraElement::zero(ring);
    for c in Composition::all_of_degree(n as usize) {
        let sign = if c.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(c, &ring.from_int(sign));
    }
    out
}

/// Antipode, an anti-automorphism: `χ(Z_a1...Z_an) = χ(Z_an)...χ(Z_a1)`.
pub fn antipode(x: &AlgebraElement) -> AlgebraElement {
    let ring = x.ring();
    x.linear_map(|k| {
        k.parts()
            .iter()
            .rev()
            .fold(AlgebraElement::one(ring), |acc, &a| acc.product(&antipode_generator(ring, a)))
    })
}

/// Reverse every word; the anti-automorphism fixing the generators.
pub fn reverse(x: &AlgebraElement) -> AlgebraElement {
    x.map_keys(Composition::reversed)
}

/// Newton primitive `Q_n` (left) or `Q'_n` (right) via the recursions
/// `Q_n = Z_1 Q_{n-1} - Z_2 Q_{n-2} + ... + (-1)^n Z_{n-1} Q_1 + (-1)^{n-1} n Z_n`.
pub fn newton_q(ring: Ring, n: u32, side: Side) -> Result<AlgebraElement, NsymmError> {
    if n == 0 {
        return Err(NsymmError::ZeroIndex);
    }
    Ok(newton_q_family(ring, n, side).pop().expect("n >= 1"))
}

/// `[Q_1, ..., Q_n]` for the given side.
pub fn newton_q_family(ring: Ring, n: u32, side: Side) -> Vec<AlgebraElement> {
    let mut qs: Vec<AlgebraElement> = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let top_sign = if m % 2 == 1 { 1 } else { -1 };
        let mut q = generator(ring, m).scale_int(top_sign * m as i64);
        for i in 1..m {
            // sign of Z_i Q_{m-i} is (-1)^{i-1}
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let z = generator(ring, i);
            let prev = &qs[(m - i - 1) as usize];
            let term = match side {
                Side::Left => z.product(prev),
                Side::Right => prev.product(&z),
            };
            q.add_scaled(&term, &ring.from_int(sign));
        }
        qs.push(q);
    }
    qs
}

/// `Q_n = (-1)^{n-1} Σ_j j χ(Z_{n-j}) Z_j`, and the mirror formula for `Q'_n`.
pub fn newton_q_via_chi(ring: Ring, n: u32, side: Side) -> Result<AlgebraElement, NsymmError> {
    if n == 0 {
        return Err(NsymmError::ZeroIndex);
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let mut out = AlgebraElement::zero(ring);
    for j in 1..=n {
        let chi = if j == n { AlgebraElement::one(ring) } else { antipode_generator(ring, n - j) };
        let z = generator(ring, j);
        let term = match side {
            Side::Left => chi.product(&z),
            Side::Right => z.product(&chi),
        };
        out.add_scaled(&term, &ring.from_int(sign * j as i64));
    }
    Ok(out)
}

pub fn is_primitive(x: &AlgebraElement) -> bool {
    counit(x) == Scalar::default() && reduced_coproduct(x).is_zero()
}

/// Basis of the primitives of topological degree `degree2n` (composition degree `n`)
/// over a field, as the kernel of the reduced coproduct.
pub fn primitive_space_basis(degree2n: usize, ring: Ring) -> Result<Vec<AlgebraElement>, NsymmError> {
    if degree2n % 2 == 1 {
        return Err(NsymmError::OddDegree(degree2n));
    }
    if !ring.is_field() {
        return Err(RingError::NotAField(ring).into());
    }
    let n = degree2n / 2;
    if n == 0 {
        return Ok(Vec::new());
    }
    let basis = Composition::all_of_degree(n);
    let images: Vec<TensorElement> =
        basis.iter().map(|k| reduced_coproduct(&AlgebraElement::basis(ring, k.clone()))).collect();
    let mut row_keys: Vec<(Composition, Composition)> =
        images.iter().flat_map(|t| t.keys().cloned()).collect();
    row_keys.sort();
    row_keys.dedup();
    let rows: Vec<Vec<Scalar>> =
        row_keys.iter().map(|rk| images.iter().map(|t| t.coeff(rk)).collect()).collect();
    let kernel = kernel_basis(ring, rows, basis.len())?;
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut e = AlgebraElement::zero(ring);
            for (k, c) in basis.iter().zip(&v) {
                e.add_term(k.clone(), c);
            }
            e
        })
        .collect())
}

pub fn render(x: &AlgebraElement) -> String {
    x.render_with(render_nsymm_monomial, Composition::is_empty)
}

pub fn render_tensor_element(t: &TensorElement) -> String {
    render_tensor(t, render_nsymm_monomial, render_nsymm_monomial)
}

/// Factorwise product in `NSymm ⊗ NSymm`.
pub fn tensor_product(a: &TensorElement, b: &TensorElement) -> TensorElement {
    a.product(b)
}

/// Multiplication map `NSymm ⊗ NSymm -> NSymm`.
pub fn multiply_tensor(t: &TensorElement) -> AlgebraElement {
    t.map_keys(|(a, b)| a.concat(b))
}
