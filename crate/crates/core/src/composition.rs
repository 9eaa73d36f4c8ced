use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("composition parts must be positive, got {0:?}")]
pub struct CompositionError(pub Vec<u32>);

/// A finite sequence of positive integers.
///
/// The same key indexes the monomial basis `[a1,...,an]` of QSymm and the
/// noncommutative monomial `Z_a1 ... Z_an` of NSymm. Ordered by degree, then
/// length, then lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if parts.contains(&0) {
            Err(CompositionError(parts))
        } else {
            Ok(Composition(parts))
        }
    }

    /// Builds a composition, dropping zero parts (`Z_0 = 1`).
    pub fn from_parts_skipping_zeros<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        Composition(parts.into_iter().filter(|&a| a > 0).collect())
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn single(n: u32) -> Self {
        assert!(n > 0, "single part must be positive");
        Composition(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, i: usize) -> Composition {
        Composition(self.0[..i].to_vec())
    }

    pub fn suffix(&self, i: usize) -> Composition {
        Composition(self.0[i..].to_vec())
    }

    /// Multiply every part by `k`.
    pub fn scaled(&self, k: u32) -> Composition {
        Composition(self.0.iter().map(|&a| a * k).collect())
    }

    /// All compositions of `n`, in canonical order.
    pub fn all_of_degree(n: usize) -> Vec<Composition> {
        fn go(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(prefix.clone()));
                return;
            }
            for a in 1..=rest {
                prefix.push(a);
                go(rest - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n as u32, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All compositions of degree at most `n`, including the empty one.
    pub fn all_up_to_degree(n: usize) -> Vec<Composition> {
        (0..=n).flat_map(Composition::all_of_degree).collect()
    }

    /// Distinct rearrangements of the parts, in canonical order.
    pub fn rearrangements(&self) -> Vec<Composition> {
        let mut parts = self.0.clone();
        parts.sort_unstable();
        let mut out = vec![Composition(parts.clone())];
        while next_permutation(&mut parts) {
            out.push(Composition(parts.clone()));
        }
        out.sort();
        out
    }

    /// Canonical representative of the cyclic rotation class.
    pub fn rotation_class_min(&self) -> Composition {
        let n = self.len();
        (0..n.max(1))
            .map(|i| {
                let mut v = self.0[i.min(n)..].to_vec();
                v.extend_from_slice(&self.0[..i.min(n)]);
                Composition(v)
            })
            .min()
            .unwrap_or_default()
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Render as a noncommutative monomial `Z1*Z2`, or `1` for the empty word.
pub fn render_nsymm_monomial(c: &Composition) -> String {
    if c.is_empty() {
        return "1".into();
    }
    c.parts().iter().map(|a| format!("Z{a}")).collect::<Vec<_>>().join("*")
}

#[macro_export]
macro_rules! comp {
    () => { $crate::composition::Composition::empty() };
    ($($a:expr),+ $(,)?) => {
        $crate::composition::Composition::new(vec![$($a),+]).expect("positive parts")
    };
}
