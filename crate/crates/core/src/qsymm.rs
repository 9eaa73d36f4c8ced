//! QSymm, the graded dual of NSymm, in the monomial basis `[a1,...,an]`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::composition::Composition;
use crate::element::{AlgebraElement, TensorElement};
use crate::linalg::rank;
use crate::ring::{Ring, RingError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsymmError {
    #[error("{0:?} is not a partition (parts must be positive and weakly decreasing)")]
    NotPartition(Vec<u32>),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Overlapping shuffle product of two keys, with nonnegative integer multiplicities.
pub fn shuffle_keys(a: &Composition, b: &Composition) -> BTreeMap<Composition, BigInt> {
    let (a, b) = (a.parts(), b.parts());
    let (n, m) = (a.len(), b.len());
    // table[i][j] holds the product of the suffixes a[i..] and b[j..], stored reversed
    let mut table: Vec<Vec<HashMap<Vec<u32>, BigInt>>> = vec![vec![HashMap::new(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let mut out: HashMap<Vec<u32>, BigInt> = HashMap::new();
            if i == n || j == m {
                let mut rest: Vec<u32> = if i == n { b[j..].to_vec() } else { a[i..].to_vec() };
                rest.reverse();
                out.insert(rest, BigInt::one());
            } else {
                let mut push = |head: u32, from: &HashMap<Vec<u32>, BigInt>| {
                    for (w, c) in from {
                        let mut w = w.clone();
                        w.push(head);
                        *out.entry(w).or_insert_with(BigInt::zero) += c;
                    }
                };
                push(a[i], &table[i + 1][j]);
                push(b[j], &table[i][j + 1]);
                push(a[i] + b[j], &table[i + 1][j + 1]);
            }
            table[i][j] = out;
        }
    }
    std::mem::take(&mut table[0][0])
        .into_iter()
        .map(|(mut w, c)| {
            w.reverse();
            (Composition::new(w).expect("positive parts"), c)
        })
        .collect()
}

/// The commutative product `x ⊙ y`.
pub fn overlapping_shuffle(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, RingError> {
    let ring = x.ring();
    ring.ensure_same(&y.ring())?;
    let mut out = AlgebraElement::zero(ring);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let cab = ring.mul(ca, cb);
            for (k, m) in shuffle_keys(a, b) {
                out.add_term(k, &ring.mul(&cab, &Scalar::from_integer(m)));
            }
        }
    }
    Ok(out)
}

/// `x^{⊙e}`. Over `F_p` with `p | e` the Frobenius `(Σ c_i α_i)^p = Σ c_i^p α_i^p`
/// reduces to key powers first.
pub fn shuffle_power(x: &AlgebraElement, e: u32) -> AlgebraElement {
    let ring = x.ring();
    if let Ring::PrimeField(p) = ring {
        let p32 = p as u32;
        if e > 0 && e.is_multiple_of(p32) && x.len() > 1 {
            let mut frob = AlgebraElement::zero(ring);
            for (k, c) in x.terms() {
                frob.add_scaled(&key_power(ring, k, p32), &ring.pow(c, p32));
            }
            return shuffle_power(&frob, e / p32);
        }
    }
    if x.len() == 1 {
        let (k, c) = x.terms().next().expect("one term");
        return key_power(ring, k, e).scale(&ring.pow(c, e));
    }
    let mut acc = AlgebraElement::one(ring);
    for _ in 0..e {
        acc = overlapping_shuffle(&acc, x).expect("same ring");
    }
    acc
}

/// `α^{⊙e}` by walking `e` identical copies of `α` together. A state records how
/// many copies sit at each position; advancing `k_i` of the `n_i` copies at
/// position `i` contributes `Π C(n_i, k_i)` and the part `Σ k_i a_i`.
pub fn key_power(ring: Ring, key: &Composition, e: u32) -> AlgebraElement {
    let a = key.parts();
    let r = a.len();
    if e == 0 || r == 0 {
        return AlgebraElement::one(ring);
    }
    let mut start = vec![0u32; r + 1];
    start[0] = e;
    // potential Σ i·n_i grows with every step
    let mut layers: BTreeMap<u32, HashMap<(Vec<u32>, Vec<u32>), Scalar>> = BTreeMap::new();
    layers.entry(0).or_default().insert((start, Vec::new()), ring.one());
    let mut out = AlgebraElement::zero(ring);
    while let Some((_, layer)) = layers.pop_first() {
        for ((state, prefix), c) in layer {
            if state[r] == e {
                out.add_term(Composition::new(prefix).expect("positive parts"), &c);
                continue;
            }
            let mut ks = vec![0u32; r];
            loop {
                // next k-vector in mixed radix, k_i ≤ n_i
                let mut i = 0;
                while i < r && ks[i] == state[i] {
                    ks[i] = 0;
                    i += 1;
                }
                if i == r {
                    break;
                }
                ks[i] += 1;
                let mut next = state.clone();
                let mut part = 0;
                let mut weight = BigInt::one();
                for (j, &k) in ks.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    weight *= crate::combinat::binomial(state[j] as u64, k as u64);
                    next[j] -= k;
                    next[j + 1] += k;
                    part += k * a[j];
                }
                let w = ring.element(Scalar::from_integer(weight)).expect("integer");
                let w = ring.mul(&w, &c);
                if w.is_zero() {
                    continue;
                }
                let potential: u32 = next.iter().enumerate().map(|(j, &n)| j as u32 * n).sum();
                let mut np = prefix.clone();
                np.push(part);
                let slot = layers.entry(potential).or_default().entry((next, np)).or_insert_with(Scalar::zero);
                *slot = ring.add(slot, &w);
            }
        }
    }
    out
}

/// `Δ[a1..an] = Σ_i [a1..ai] ⊗ [a(i+1)..an]`.
pub fn deconcat_coproduct(x: &AlgebraElement) -> TensorElement {
    let ring = x.ring();
    x.linear_map(|k| {
        let mut t = TensorElement::zero(ring);
        for i in 0..=k.len() {
            t.add_term((k.prefix(i), k.suffix(i)), &ring.one());
        }
        t
    })
}

/// Factorwise `⊙` on `QSymm ⊗ QSymm`.
pub fn tensor_shuffle(x: &TensorElement, y: &TensorElement) -> TensorElement {
    let ring = x.ring();
    let mut out = TensorElement::zero(ring);
    for ((a1, a2), ca) in x.terms() {
        for ((b1, b2), cb) in y.terms() {
            let c = ring.mul(ca, cb);
            let left = shuffle_keys(a1, b1);
            let right = shuffle_keys(a2, b2);
            for (k1, m1) in &left {
                for (k2, m2) in &right {
                    let m = Scalar::from_integer(m1 * m2);
                    out.add_term((k1.clone(), k2.clone()), &ring.mul(&c, &m));
                }
            }
        }
    }
    out
}

/// Antipode of a single key via `Σ_i S([a1..ai]) ⊙ [a(i+1)..an] = 0`.
pub fn antipode_key(ring: Ring, key: &Composition) -> AlgebraElement {
    // prefix_images[i] = S(prefix of length i)
    let mut prefix_images: Vec<AlgebraElement> = vec![AlgebraElement::one(ring)];
    for n in 1..=key.len() {
        let prefix = key.prefix(n);
        let mut s = -&AlgebraElement::basis(ring, prefix.clone());
        for (i, img) in prefix_images.iter().enumerate().skip(1) {
            let suffix = AlgebraElement::basis(ring, prefix.suffix(i));
            s = &s - &overlapping_shuffle(img, &suffix).expect("same ring");
        }
        prefix_images.push(s);
    }
    prefix_images.pop().expect("nonempty")
}

pub fn antipode(x: &AlgebraElement) -> AlgebraElement {
    let ring = x.ring();
    x.linear_map(|k| antipode_key(ring, k))
}

/// `⟨q, m⟩`: the monomial bases are dual, so this is a diagonal lookup.
pub fn pairing(q: &AlgebraElement, m: &AlgebraElement) -> Result<Scalar, RingError> {
    let ring = q.ring();
    ring.ensure_same(&m.ring())?;
    Ok(q.terms()
        .fold(Scalar::zero(), |acc, (k, c)| ring.add(&acc, &ring.mul(c, &m.coeff(k)))))
}

/// Pairing of `QSymm ⊗ QSymm` with `NSymm ⊗ NSymm`, factorwise.
pub fn tensor_pairing(q: &TensorElement, m: &TensorElement) -> Result<Scalar, RingError> {
    let ring = q.ring();
    ring.ensure_same(&m.ring())?;
    Ok(q.terms()
        .fold(Scalar::zero(), |acc, (k, c)| ring.add(&acc, &ring.mul(c, &m.coeff(k)))))
}

/// Image of the monomial symmetric function `m_λ`: the sum of all distinct rearrangements.
pub fn from_symm(ring: Ring, partition: &[u32]) -> Result<AlgebraElement, QsymmError> {
    if partition.contains(&0) || partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(QsymmError::NotPartition(partition.to_vec()));
    }
    let key = Composition::new(partition.to_vec()).expect("checked positive");
    let mut out = AlgebraElement::zero(ring);
    for r in key.rearrangements() {
        out.add_term(r, &ring.one());
    }
    Ok(out)
}

/// Whether `x` lies in the image of Symm, i.e. is constant on rearrangement classes.
pub fn is_symmetric(x: &AlgebraElement) -> bool {
    x.keys().all(|k| k.rearrangements().iter().all(|r| x.coeff(r) == x.coeff(k)))
}

/// Coefficient vectors (over `Z`) of the products `α ⊙ β` with `α ≤ β`, both of
/// positive degree, spanning the decomposables in degree `n`. Columns follow
/// `Composition::all_of_degree(n)`.
pub fn decomposables_matrix(n: usize) -> Vec<Vec<BigInt>> {
    let basis = Composition::all_of_degree(n);
    let index: HashMap<&Composition, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = Vec::new();
    for d in 1..=n / 2 {
        let left = Composition::all_of_degree(d);
        let right = Composition::all_of_degree(n - d);
        for (i, a) in left.iter().enumerate() {
            for (j, b) in right.iter().enumerate() {
                if 2 * d == n && j < i {
                    continue;
                }
                let mut row = vec![BigInt::zero(); basis.len()];
                for (k, c) in shuffle_keys(a, b) {
                    row[index[&k]] = c;
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Dimension of the degree-`n` indecomposables `Q(QSymm ⊗ k)_n` over a field.
pub fn indecomposables_dimension(n: usize, ring: Ring) -> Result<usize, RingError> {
    if !ring.is_field() {
        return Err(RingError::NotAField(ring));
    }
    let total = Composition::all_of_degree(n).len();
    let rows: Vec<Vec<Scalar>> = decomposables_matrix(n)
        .into_iter()
        .map(|row| {
            row.into_iter().map(|c| ring.element(Scalar::from_integer(c)).expect("integer")).collect()
        })
        .collect();
    if rows.is_empty() {
        return Ok(total);
    }
    Ok(total - rank(ring, rows)?)
}

pub fn render(x: &AlgebraElement) -> String {
    x.render_with(|k| k.to_string(), Composition::is_empty)
}

pub fn render_tensor_element(t: &TensorElement) -> String {
    crate::element::render_tensor(t, |k| k.to_string(), |k| k.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    const Z: Ring = Ring::Integers;

    fn key(c: Composition) -> AlgebraElement {
        AlgebraElement::basis(Z, c)
    }

    #[test]
    fn key_power_matches_repeated_products() {
        for k in Composition::all_up_to_degree(3) {
            let x = key(k.clone());
            let mut acc = AlgebraElement::one(Z);
            for e in 0..=4u32 {
                assert_eq!(key_power(Z, &k, e), acc, "{k}^{e}");
                acc = overlapping_shuffle(&acc, &x).unwrap();
            }
        }
        let f3 = Ring::PrimeField(3);
        let x = &AlgebraElement::basis(f3, comp![1, 2]) + &AlgebraElement::basis(f3, comp![3]).scale_int(2);
        let direct = overlapping_shuffle(&overlapping_shuffle(&x, &x).unwrap(), &x).unwrap();
        assert_eq!(shuffle_power(&x, 3), direct);
    }

    /// All overlapping shuffles by brute force: choose the set of output
    /// positions hit by each factor; every position is hit by at least one.
    fn shuffle_oracle(a: &[u32], b: &[u32]) -> BTreeMap<Composition, BigInt> {
        fn increasing_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for mask in 0u32..(1 << k) {
                if mask.count_ones() as usize == n {
                    out.push((0..k).filter(|i| mask >> i & 1 == 1).collect());
                }
            }
            out
        }
        let mut out = BTreeMap::new();
        for k in a.len().max(b.len())..=a.len() + b.len() {
            for f in increasing_maps(a.len(), k) {
                for g in increasing_maps(b.len(), k) {
                    let mut parts = vec![0u32; k];
                    for (i, &p) in f.iter().enumerate() {
                        parts[p] += a[i];
                    }
                    for (j, &p) in g.iter().enumerate() {
                        parts[p] += b[j];
                    }
                    if parts.iter().all(|&x| x > 0) {
                        *out.entry(Composition::new(parts).unwrap()).or_insert_with(BigInt::zero) += 1;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn worked_product() {
        let p = overlapping_shuffle(&key(comp![3]), &key(comp![1, 2])).unwrap();
        assert_eq!(render(&p), "[1,5] + [4,2] + [1,2,3] + [1,3,2] + [3,1,2]");
        let p = overlapping_shuffle(&key(comp![1]), &key(comp![1])).unwrap();
        assert_eq!(render(&p), "[2] + 2*[1,1]");
        let e = key(comp![2, 1]);
        assert_eq!(overlapping_shuffle(&AlgebraElement::one(Z), &e).unwrap(), e);
    }

    #[test]
    fn recursion_matches_enumeration() {
        let all = Composition::all_up_to_degree(5);
        for a in &all {
            for b in &all {
                if a.degree() + b.degree() <= 6 {
                    assert_eq!(shuffle_keys(a, b), shuffle_oracle(a.parts(), b.parts()), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        let d = deconcat_coproduct(&key(comp![1, 2]));
        assert_eq!(render_tensor_element(&d), "[] ⊗ [1,2] + [1] ⊗ [2] + [1,2] ⊗ []");
        assert_eq!(deconcat_coproduct(&AlgebraElement::one(Z)).len(), 1);
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&key(comp![1])), key(comp![1]).scale_int(-1));
        assert_eq!(antipode(&key(comp![2])), key(comp![2]).scale_int(-1));
        assert_eq!(antipode(&key(comp![1, 1])), &key(comp![1, 1]) + &key(comp![2]));
    }

    #[test]
    fn pairing_examples() {
        let m12 = crate::nsymm::monomial(Z, &[1, 2]);
        let m21 = crate::nsymm::monomial(Z, &[2, 1]);
        assert_eq!(pairing(&key(comp![1, 2]), &m12).unwrap(), Z.one());
        assert!(pairing(&key(comp![1, 2]), &m21).unwrap().is_zero());
        let p = overlapping_shuffle(&key(comp![3]), &key(comp![1, 2])).unwrap();
        assert_eq!(pairing(&p, &crate::nsymm::monomial(Z, &[4, 2])).unwrap(), Z.one());
        assert!(pairing(&key(comp![1]), &crate::nsymm::monomial(Ring::Rationals, &[1])).is_err());
    }

    #[test]
    fn symm_inclusion() {
        assert_eq!(from_symm(Z, &[1]).unwrap(), key(comp![1]));
        assert_eq!(from_symm(Z, &[1, 1]).unwrap(), key(comp![1, 1]));
        assert_eq!(from_symm(Z, &[2, 1]).unwrap(), &key(comp![2, 1]) + &key(comp![1, 2]));
        assert!(from_symm(Z, &[1, 2]).is_err());
        // e_a ⊙ e_b stays symmetric
        for a in 1..=3u32 {
            for b in 1..=(6 - a) {
                let ea = from_symm(Z, &vec![1; a as usize]).unwrap();
                let eb = from_symm(Z, &vec![1; b as usize]).unwrap();
                assert!(is_symmetric(&overlapping_shuffle(&ea, &eb).unwrap()));
            }
        }
        assert!(!is_symmetric(&key(comp![1, 2])));
    }

    #[test]
    fn indecomposables_examples() {
        assert_eq!(indecomposables_dimension(1, Ring::Rationals).unwrap(), 1);
        assert_eq!(indecomposables_dimension(2, Ring::Rationals).unwrap(), 1);
        assert_eq!(indecomposables_dimension(4, Ring::PrimeField(2)).unwrap(), 3);
        assert!(indecomposables_dimension(2, Z).is_err());
    }
}
