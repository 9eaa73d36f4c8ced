//! Symm as a polynomial Hopf algebra on `c_1, c_2, ...` (variable `i` is `c_{i+1}`).
//!
//! Alternative generating sets are polynomials over the same exponent keys
//! with the variables read differently: `v_n` (Witt generators), `q_n`
//! (Newton primitives, also written `s_n`).

use super::WittError;
use crate::combinat::{binomial, distinct_partitions, is_prime};
use crate::composition::Composition;
use crate::element::{tensor, Element};
use crate::poly::{render_poly, substitute, var, Monomial, Poly};
use crate::ring::{Ring, RingError, Scalar};

pub type SymmElement = Poly;
pub type SymmTensor = Element<(Monomial, Monomial)>;
pub type SymmTensor3 = Element<(Monomial, Monomial, Monomial)>;

/// `c_n`, with `c_0 = 1`.
pub fn c(ring: Ring, n: usize) -> SymmElement {
    if n == 0 {
        Poly::one(ring)
    } else {
        var(ring, n - 1)
    }
}

/// Weighted degree with `weight(c_i) = i`.
pub fn weight(m: &Monomial) -> usize {
    m.weight(|i| i + 1)
}

pub fn homogeneous(x: &SymmElement, degree: usize) -> SymmElement {
    x.filter(|m| weight(m) == degree)
}

/// All monomials of weight `n`, one per partition of `n`.
pub fn monomials_of_weight(n: usize) -> Vec<Monomial> {
    crate::combinat::partitions(n as u32)
        .into_iter()
        .map(|p| Monomial::from_variables(&p.iter().map(|&a| a as usize - 1).collect::<Vec<_>>()))
        .collect()
}

pub fn render(x: &SymmElement) -> String {
    render_named(x, "c")
}

/// Render reading variable `i` as `{name}{i+1}`.
pub fn render_named(x: &Poly, name: &str) -> String {
    render_poly(x, |i| format!("{name}{}", i + 1))
}

pub fn render_tensor_named(t: &SymmTensor, name: &str) -> String {
    let side = |m: &Monomial| m.render(|i| format!("{name}{}", i + 1));
    crate::element::render_tensor(t, side, side)
}

fn generator_coproduct(ring: Ring, n: usize) -> SymmTensor {
    let mut t = SymmTensor::zero(ring);
    for p in 0..=n {
        let left = if p == 0 { Monomial::one() } else { Monomial::var(p - 1) };
        let right = if p == n { Monomial::one() } else { Monomial::var(n - p - 1) };
        t.add_term((left, right), &ring.one());
    }
    t
}

/// `Δ(c_n) = Σ c_p ⊗ c_q`, extended multiplicatively.
pub fn cartan_coproduct(x: &SymmElement) -> SymmTensor {
    let ring = x.ring();
    substitute(x, |i| generator_coproduct(ring, i + 1))
}

pub fn counit(x: &SymmElement) -> Scalar {
    x.constant_term()
}

/// `(Δ⊗id)Δ` and `(id⊗Δ)Δ`.
pub fn iterated_coproducts(x: &SymmElement) -> (SymmTensor3, SymmTensor3) {
    let ring = x.ring();
    let d = cartan_coproduct(x);
    let left = d.linear_map(|(a, b)| {
        cartan_coproduct(&Poly::basis(ring, a.clone())).map_keys(|(a1, a2)| (a1.clone(), a2.clone(), b.clone()))
    });
    let right = d.linear_map(|(a, b)| {
        cartan_coproduct(&Poly::basis(ring, b.clone())).map_keys(|(b1, b2)| (a.clone(), b1.clone(), b2.clone()))
    });
    (left, right)
}

/// `m ∘ (f ⊗ g)` on a tensor.
pub fn multiply_through(t: &SymmTensor, f: impl Fn(&Poly) -> Poly, g: impl Fn(&Poly) -> Poly) -> SymmElement {
    let ring = t.ring();
    t.linear_map(|(a, b)| f(&Poly::basis(ring, a.clone())).product(&g(&Poly::basis(ring, b.clone()))))
}

/// `χ(c_n) = Σ_{i1+...+im=n} (-1)^m c_{i1}...c_{im}`.
pub fn antipode_generator(ring: Ring, n: usize) -> SymmElement {
    let mut out = Poly::zero(ring);
    for comp in Composition::all_of_degree(n) {
        let sign = if comp.len() % 2 == 0 { 1 } else { -1 };
        let vars: Vec<usize> = comp.parts().iter().map(|&a| a as usize - 1).collect();
        out.add_term(Monomial::from_variables(&vars), &ring.from_int(sign));
    }
    out
}

pub fn antipode(x: &SymmElement) -> SymmElement {
    let ring = x.ring();
    substitute(x, |i| antipode_generator(ring, i + 1))
}

/// `[q_1, ..., q_n]` in the c-basis.
pub fn newton_q_family(ring: Ring, n: usize) -> Vec<SymmElement> {
    let mut qs: Vec<SymmElement> = Vec::with_capacity(n);
    for m in 1..=n {
        let top = if m % 2 == 1 { 1 } else { -1 };
        let mut q = c(ring, m).scale_int(top * m as i64);
        for i in 1..m {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            q.add_scaled(&c(ring, i).product(&qs[m - i - 1]), &ring.from_int(sign));
        }
        qs.push(q);
    }
    qs
}

/// Newton primitive `q_n = c_1 q_{n-1} - c_2 q_{n-2} + ... + (-1)^{n-1} n c_n`.
pub fn newton_q(ring: Ring, n: usize) -> Result<SymmElement, WittError> {
    if n == 0 {
        return Err(WittError::ZeroIndex);
    }
    Ok(newton_q_family(ring, n).pop().expect("n >= 1"))
}

fn require_rationals(ring: Ring) -> Result<(), WittError> {
    if ring != Ring::Rationals {
        return Err(WittError::NotRational(ring));
    }
    Ok(())
}

/// `[c_1, ..., c_n]` written in the q-basis (q-variables), over Q.
pub fn c_in_q_basis(n: usize) -> Vec<Poly> {
    let ring = Ring::Rationals;
    let mut cs: Vec<Poly> = Vec::with_capacity(n);
    for m in 1..=n {
        // q_m = Σ_{i<m} (-1)^{i-1} c_i q_{m-i} + (-1)^{m-1} m c_m
        let mut rest = var(ring, m - 1);
        for i in 1..m {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            rest.add_scaled(&cs[i - 1].product(&var(ring, m - i - 1)), &ring.from_int(-sign));
        }
        let top = if m % 2 == 1 { 1 } else { -1 };
        cs.push(rest.scale(&Scalar::new(top.into(), (m as i64).into())));
    }
    cs
}

/// Rewrite a c-basis element over Q in the q-basis.
pub fn c_to_q_basis(x: &SymmElement) -> Result<Poly, WittError> {
    require_rationals(x.ring())?;
    let n = x.keys().map(|m| m.exponents().len()).max().unwrap_or(0);
    let cs = c_in_q_basis(n);
    Ok(substitute(x, |i| cs[i].clone()))
}

/// Rewrite a q-basis element in the c-basis.
pub fn q_to_c_basis(x: &Poly) -> SymmElement {
    let n = x.keys().map(|m| m.exponents().len()).max().unwrap_or(0);
    let qs = newton_q_family(x.ring(), n);
    substitute(x, |i| qs[i].clone())
}

/// `[v_1, ..., v_n]` in the c-basis, from `Π_k (1 - v_k t^k) = Σ_n c_n (-t)^n`.
pub fn witt_generators(ring: Ring, n: usize) -> Vec<SymmElement> {
    let mut vs: Vec<SymmElement> = Vec::with_capacity(n);
    for m in 1..=n {
        // t^m: Σ over distinct partitions λ of m of (-1)^{len λ} Π v_λ = (-1)^m c_m
        let sign_c = if m % 2 == 0 { -1 } else { 1 };
        let mut v = c(ring, m).scale_int(sign_c);
        for lambda in distinct_partitions(m as u32) {
            if lambda.len() < 2 {
                continue;
            }
            let sign = if lambda.len() % 2 == 0 { 1 } else { -1 };
            let prod = lambda.iter().fold(Poly::one(ring), |acc, &k| acc.product(&vs[k as usize - 1]));
            v.add_scaled(&prod, &ring.from_int(sign));
        }
        vs.push(v);
    }
    vs
}

pub fn witt_generator(ring: Ring, n: usize) -> Result<SymmElement, WittError> {
    if n == 0 {
        return Err(WittError::ZeroIndex);
    }
    Ok(witt_generators(ring, n).pop().expect("n >= 1"))
}

/// `c_n` written in the v-basis: `(-1)^n Σ_{λ distinct} (-1)^{len λ} Π v_λ`.
pub fn c_in_v_basis(ring: Ring, n: usize) -> Poly {
    let mut out = Poly::zero(ring);
    for lambda in distinct_partitions(n as u32) {
        let sign = if (lambda.len() + n).is_multiple_of(2) { 1 } else { -1 };
        let vars: Vec<usize> = lambda.iter().map(|&k| k as usize - 1).collect();
        out.add_term(Monomial::from_variables(&vars), &ring.from_int(sign));
    }
    out
}

pub fn c_to_v_basis(x: &SymmElement) -> Poly {
    let ring = x.ring();
    substitute(x, |i| c_in_v_basis(ring, i + 1))
}

pub fn v_to_c_basis(x: &Poly) -> SymmElement {
    let n = x.keys().map(|m| m.exponents().len()).max().unwrap_or(0);
    let vs = witt_generators(x.ring(), n);
    substitute(x, |i| vs[i].clone())
}

/// p-typical generator `v_{n,r}` from
/// `q_{n p^r} = Σ_{j=0}^{r} p^j v_{n,j}^{p^{r-j}}`, returned over `Z_(p)`.
pub fn p_typical_v(n: usize, r: u32, p: u64) -> Result<SymmElement, WittError> {
    if !is_prime(p) {
        return Err(WittError::NotPrime(p));
    }
    if n == 0 {
        return Err(WittError::ZeroIndex);
    }
    if (n as u64).is_multiple_of(p) {
        return Err(WittError::DividesIndex { p, n });
    }
    let q = Ring::Rationals;
    let top = n * (p as usize).pow(r);
    let qs = newton_q_family(q, top);
    let mut levels: Vec<Poly> = Vec::with_capacity(r as usize + 1);
    for s in 0..=r {
        let mut rest = qs[n * (p as usize).pow(s) - 1].clone();
        for (j, vj) in levels.iter().enumerate() {
            let pj = q.from_int((p as i64).pow(j as u32));
            rest.add_scaled(&vj.pow((p as u32).pow(s - j as u32)), &q.neg(&pj));
        }
        let ps = Scalar::from_integer((p as i64).pow(s).into());
        levels.push(rest.scale(&q.inv(&ps).expect("nonzero")));
    }
    let v = levels.pop().expect("r + 1 levels");
    v.change_ring(Ring::PLocal(p)).map_err(|_| WittError::NotIntegral(format!("v_{{{n},{r}}} at p = {p}")))
}

/// Frobenius on the v-basis: the algebra map `v_n ↦ v_{nd}`.
pub fn frobenius_v(d: usize, x: &Poly) -> Poly {
    let ring = x.ring();
    substitute(x, |i| var(ring, (i + 1) * d - 1))
}

/// Verschiebung on the v-basis: the algebra map `v_n ↦ d v_{n/d}` when `d | n`, else `0`.
pub fn verschiebung_v(d: usize, x: &Poly) -> Poly {
    let ring = x.ring();
    substitute(x, |i| {
        let n = i + 1;
        if n % d == 0 {
            var(ring, n / d - 1).scale_int(d as i64)
        } else {
            Poly::zero(ring)
        }
    })
}

/// Frobenius through the Newton primitives, `q_n ↦ q_{nd}`; a Hopf endomorphism.
pub fn ghost_frobenius(d: usize, x: &SymmElement) -> Result<SymmElement, WittError> {
    let in_q = c_to_q_basis(x)?;
    let ring = x.ring();
    Ok(q_to_c_basis(&substitute(&in_q, |i| var(ring, (i + 1) * d - 1))))
}

/// Verschiebung through the Newton primitives, `q_n ↦ d q_{n/d}` or `0`.
pub fn ghost_verschiebung(d: usize, x: &SymmElement) -> Result<SymmElement, WittError> {
    let in_q = c_to_q_basis(x)?;
    let ring = x.ring();
    let mapped = substitute(&in_q, |i| {
        let n = i + 1;
        if n % d == 0 {
            var(ring, n / d - 1).scale_int(d as i64)
        } else {
            Poly::zero(ring)
        }
    });
    Ok(q_to_c_basis(&mapped))
}

/// `ψ_⊗(s_n) = Σ_{i=0}^{n} C(n,i) s_i ⊗ s_{n-i}` with `s_0 = 1`, extended
/// multiplicatively. Input in the c-basis over Q; output in the s-basis.
pub fn psi_otimes(x: &SymmElement) -> Result<SymmTensor, WittError> {
    let ring = x.ring();
    let in_s = c_to_q_basis(x)?;
    Ok(substitute(&in_s, |i| {
        let n = i + 1;
        let mut t = SymmTensor::zero(ring);
        for j in 0..=n {
            let left = if j == 0 { Monomial::one() } else { Monomial::var(j - 1) };
            let right = if j == n { Monomial::one() } else { Monomial::var(n - j - 1) };
            t.add_term((left, right), &Scalar::from_integer(binomial(n as u64, j as u64)));
        }
        t
    }))
}

/// Ghost-multiplicative coproduct `s_n ↦ s_n ⊗ s_n`, dual to Witt-vector multiplication.
pub fn psi_otimes_ghost(x: &SymmElement) -> Result<SymmTensor, WittError> {
    let ring = x.ring();
    let in_s = c_to_q_basis(x)?;
    Ok(substitute(&in_s, |i| tensor(&var(ring, i), &var(ring, i))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiComparison {
    pub n: usize,
    pub graded: String,
    pub ghost_multiplicative: String,
    pub equal: bool,
}

/// Compare the two readings of `ψ_⊗` on `s_1, ..., s_max`.
pub fn compare_psi(max: usize) -> Vec<PsiComparison> {
    let q = Ring::Rationals;
    newton_q_family(q, max)
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let a = psi_otimes(s).expect("rational");
            let b = psi_otimes_ghost(s).expect("rational");
            PsiComparison {
                n: i + 1,
                graded: render_tensor_named(&a, "s"),
                ghost_multiplicative: render_tensor_named(&b, "s"),
                equal: a == b,
            }
        })
        .collect()
}

/// Apply `f ⊗ f` to a tensor of polynomials.
pub fn tensor_square_map(t: &SymmTensor, f: impl Fn(&Poly) -> Poly) -> SymmTensor {
    let ring = t.ring();
    t.linear_map(|(a, b)| tensor(&f(&Poly::basis(ring, a.clone())), &f(&Poly::basis(ring, b.clone()))))
}

/// Coefficients must be integral for the c-basis element to live over `Z`.
pub fn to_integers(x: &SymmElement) -> Result<SymmElement, RingError> {
    x.change_ring(Ring::Integers)
}
