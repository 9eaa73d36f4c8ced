//! Lyndon words, Whitehead basic products, and the bijection between them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::binomial;
use crate::composition::Composition;

/// Words compare lexicographically with proper prefixes first, which is
/// exactly the ordering of `Vec<u32>`.
pub type Word = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LyndonError {
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("equal labels {0:?} meet at an internal node; the tree is not a basic product")]
    EqualLabels(Word),
}

pub fn is_lyndon(w: &[u32]) -> Result<bool, LyndonError> {
    if w.is_empty() {
        return Err(LyndonError::EmptyWord);
    }
    Ok((1..w.len()).all(|i| w < &w[i..]))
}

/// Lyndon words of length exactly `n` over `{1..k}`, in lexicographic order (Duval's algorithm).
pub fn lyndon_by_length(k: u32, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<u32> = vec![1];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // extend periodically to length n, then strip trailing maximal letters
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&k) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// Lyndon words over the positive integers with letter sum `n`, in composition order.
pub fn lyndon_by_degree(n: usize) -> Vec<Word> {
    Composition::all_of_degree(n)
        .into_iter()
        .filter(|c| !c.is_empty() && is_lyndon(c.parts()).unwrap_or(false))
        .map(Composition::into_parts)
        .collect()
}

/// Render a word as a digit string when every letter is a single digit, else as a comma list.
pub fn render_word(w: &[u32]) -> String {
    if w.iter().all(|&a| a <= 9) {
        w.iter().map(|a| a.to_string()).collect()
    } else {
        w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Which inequality between `rank(w1)` and `serial(w2)` makes `w1 w2` admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Admissibility {
    /// `rank(w1) ≤ serial(w2)`; the counts agree with the necklace formula.
    #[default]
    NonStrict,
    /// `rank(w1) < serial(w2)`; kept for comparison only.
    Strict,
}

impl Admissibility {
    fn admits(self, rank: usize, serial: usize) -> bool {
        match self {
            Admissibility::NonStrict => rank <= serial,
            Admissibility::Strict => rank < serial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    Leaf(u32),
    Node(Box<BasicProductTree>, Box<BasicProductTree>),
}

/// A basic product with its serial number and rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProductTree {
    shape: TreeShape,
    serial: usize,
    rank: usize,
    length: usize,
}

impl BasicProductTree {
    pub fn leaf(letter: u32) -> Self {
        BasicProductTree { shape: TreeShape::Leaf(letter), serial: letter as usize, rank: 0, length: 1 }
    }

    /// `left · right` with the given serial number, validated against the
    /// admissibility rule. Returns `None` when the pair is not admissible.
    pub fn node(
        left: &BasicProductTree,
        right: &BasicProductTree,
        serial: usize,
        rule: Admissibility,
    ) -> Option<Self> {
        if right.serial >= left.serial || !rule.admits(left.rank, right.serial) {
            return None;
        }
        Some(BasicProductTree {
            shape: TreeShape::Node(Box::new(left.clone()), Box::new(right.clone())),
            serial,
            rank: right.serial,
            length: left.length + right.length,
        })
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn serial(&self) -> usize {
        self.serial
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

impl fmt::Display for BasicProductTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            TreeShape::Leaf(a) => write!(f, "{a}"),
            TreeShape::Node(l, r) => write!(f, "({l}·{r})"),
        }
    }
}

/// All basic products of length `1..=n` over `{1..k}`, grouped by length.
/// Serial numbers run through the letters first and then follow generation order.
pub fn basic_products_up_to(k: u32, n: usize, rule: Admissibility) -> Vec<Vec<BasicProductTree>> {
    let mut by_length: Vec<Vec<BasicProductTree>> = vec![Vec::new()];
    if n == 0 {
        return by_length;
    }
    by_length.push((1..=k).map(BasicProductTree::leaf).collect());
    let mut next_serial = k as usize + 1;
    for len in 2..=n {
        let mut level = Vec::new();
        // every product of smaller length, in serial order
        let earlier: Vec<&BasicProductTree> = by_length[1..].iter().flatten().collect();
        for w1 in &earlier {
            for w2 in &earlier {
                if w1.length + w2.length != len {
                    continue;
                }
                if let Some(t) = BasicProductTree::node(w1, w2, next_serial, rule) {
                    next_serial += 1;
                    level.push(t);
                }
            }
        }
        by_length.push(level);
    }
    by_length
}

pub fn basic_products(k: u32, n: usize) -> Vec<BasicProductTree> {
    basic_products_with(k, n, Admissibility::NonStrict)
}

pub fn basic_products_with(k: u32, n: usize, rule: Admissibility) -> Vec<BasicProductTree> {
    if n == 0 {
        return Vec::new();
    }
    basic_products_up_to(k, n, rule).swap_remove(n)
}

/// Flatten a basic product to a Lyndon word: at each internal node the two
/// child labels are concatenated smaller first.
pub fn basic_to_lyndon(t: &BasicProductTree) -> Result<Word, LyndonError> {
    match &t.shape {
        TreeShape::Leaf(a) => Ok(vec![*a]),
        TreeShape::Node(l, r) => {
            let a = basic_to_lyndon(l)?;
            let b = basic_to_lyndon(r)?;
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => Err(LyndonError::EqualLabels(a)),
                std::cmp::Ordering::Less => Ok([a, b].concat()),
                std::cmp::Ordering::Greater => Ok([b, a].concat()),
            }
        }
    }
}

/// Outcome of flattening every basic product of one `(k, n)` stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub k: u32,
    pub n: usize,
    pub necklace_count: BigInt,
    pub lyndon_count: usize,
    /// Each tree (rendered) with its image, in serial order.
    pub pairs: Vec<(String, Word)>,
    pub images_are_lyndon: bool,
    /// Words hit by more than one tree, with the trees hitting them.
    pub collisions: Vec<(Word, Vec<String>)>,
}

impl BijectionReport {
    pub fn tree_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn counts_match(&self) -> bool {
        BigInt::from(self.tree_count()) == self.necklace_count
            && BigInt::from(self.lyndon_count) == self.necklace_count
    }

    pub fn is_bijection(&self) -> bool {
        self.counts_match() && self.images_are_lyndon && self.is_injective()
    }
}

pub fn bijection_report(k: u32, n: usize) -> BijectionReport {
    let trees = basic_products(k, n);
    let mut pairs = Vec::with_capacity(trees.len());
    let mut images_are_lyndon = true;
    let mut preimages: std::collections::BTreeMap<Word, Vec<String>> = std::collections::BTreeMap::new();
    for t in &trees {
        match basic_to_lyndon(t) {
            Ok(w) => {
                images_are_lyndon &= is_lyndon(&w).unwrap_or(false);
                preimages.entry(w.clone()).or_default().push(t.to_string());
                pairs.push((t.to_string(), w));
            }
            Err(_) => images_are_lyndon = false,
        }
    }
    let collisions = preimages.into_iter().filter(|(_, ts)| ts.len() > 1).collect();
    BijectionReport {
        k,
        n,
        necklace_count: crate::combinat::necklace_count(k as u64, n as u64),
        lyndon_count: lyndon_by_length(k, n).len(),
        pairs,
        images_are_lyndon,
        collisions,
    }
}

/// Coefficients of `Π_{m≥1} (1 - t^m)^{-g(m)}` up to `t^n`, where `g[m-1] = g(m)`.
pub fn euler_product(g: &[usize], n: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for (idx, &gm) in g.iter().enumerate() {
        let m = idx + 1;
        if gm == 0 || m > n {
            continue;
        }
        // (1 - t^m)^{-g} = Σ_j C(g + j - 1, j) t^{mj}
        let factor: Vec<BigInt> = (0..=n / m).map(|j| binomial((gm + j - 1) as u64, j as u64)).collect();
        let mut next = vec![BigInt::zero(); n + 1];
        for (i, a) in series.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, f) in factor.iter().enumerate() {
                let d = i + m * j;
                if d > n {
                    break;
                }
                next[d] += a * f;
            }
        }
        series = next;
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::necklace_count;

    fn brute_force(k: u32, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let total = (k as usize).pow(n as u32);
        for mut code in 0..total {
            let mut w = Vec::with_capacity(n);
            for _ in 0..n {
                w.push((code % k as usize) as u32 + 1);
                code /= k as usize;
            }
            w.reverse();
            if is_lyndon(&w).unwrap() {
                out.push(w);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[1, 2]).unwrap());
        assert!(!is_lyndon(&[1, 1]).unwrap());
        assert!(is_lyndon(&[7]).unwrap());
        assert!(!is_lyndon(&[2, 1]).unwrap());
        assert_eq!(is_lyndon(&[]), Err(LyndonError::EmptyWord));
    }

    #[test]
    fn duval_matches_brute_force_and_count() {
        for k in 1..=4 {
            for n in 1..=6 {
                let words = lyndon_by_length(k, n);
                assert_eq!(words, brute_force(k, n), "k={k} n={n}");
                assert_eq!(BigInt::from(words.len()), necklace_count(k as u64, n as u64));
            }
        }
        assert_eq!(lyndon_by_length(2, 3), vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(lyndon_by_length(2, 4).len(), 3);
        assert_eq!(lyndon_by_length(3, 1), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn lyndon_by_degree_examples() {
        assert_eq!(lyndon_by_degree(2), vec![vec![2]]);
        assert_eq!(lyndon_by_degree(4), vec![vec![4], vec![1, 3], vec![1, 1, 2]]);
        let five = lyndon_by_degree(5);
        assert_eq!(five.len(), 6);
        assert_eq!(
            five,
            vec![vec![5], vec![1, 4], vec![2, 3], vec![1, 1, 3], vec![1, 2, 2], vec![1, 1, 1, 2]]
        );
    }

    #[test]
    fn basic_products_small() {
        let two = basic_products(2, 2);
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].to_string(), "(2·1)");
        let three: Vec<String> = basic_products(2, 3).iter().map(|t| t.to_string()).collect();
        assert_eq!(three, vec!["((2·1)·1)", "((2·1)·2)"]);
        assert_eq!(basic_products(3, 1).len(), 3);
        let words: Vec<Word> = basic_products(2, 3).iter().map(|t| basic_to_lyndon(t).unwrap()).collect();
        assert_eq!(words, vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(basic_to_lyndon(&two[0]).unwrap(), vec![1, 2]);
        assert_eq!(basic_products_with(2, 3, Admissibility::Strict).len(), 1);
    }

    #[test]
    fn bijection_on_binary_alphabet_and_short_words() {
        for (k, n_max) in [(1, 6), (2, 6), (3, 3)] {
            for n in 1..=n_max {
                let r = bijection_report(k, n);
                assert!(r.is_bijection(), "k={k} n={n}");
                let mut words: Vec<Word> = r.pairs.iter().map(|(_, w)| w.clone()).collect();
                words.sort();
                assert_eq!(words, lyndon_by_length(k, n));
            }
        }
    }

    #[test]
    fn flattening_collides_on_three_letters() {
        let r = bijection_report(3, 4);
        assert_eq!((r.tree_count(), &r.necklace_count), (18, &BigInt::from(18)));
        assert!(r.images_are_lyndon);
        assert!(!r.is_injective());
        assert_eq!(
            r.collisions,
            vec![
                (vec![1, 2, 2, 3], vec!["((3·2)·(2·1))".to_string(), "(((2·1)·2)·3)".to_string()]),
                (vec![1, 3, 2, 3], vec!["((3·2)·(3·1))".to_string(), "(((3·1)·2)·3)".to_string()]),
            ]
        );
        let r = bijection_report(3, 5);
        let mut images: Vec<Word> = r.pairs.into_iter().map(|(_, w)| w).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 40);
    }

    #[test]
    fn equal_labels_rejected() {
        let one = BasicProductTree::leaf(1);
        let bogus = BasicProductTree {
            shape: TreeShape::Node(Box::new(one.clone()), Box::new(one)),
            serial: 9,
            rank: 1,
            length: 2,
        };
        assert!(matches!(basic_to_lyndon(&bogus), Err(LyndonError::EqualLabels(_))));
    }

    #[test]
    fn poincare_series_of_qsymm() {
        let g: Vec<usize> = (1..=8).map(|m| lyndon_by_degree(m).len()).collect();
        let series = euler_product(&g, 8);
        assert_eq!(series[0], BigInt::one());
        for n in 1..=8 {
            assert_eq!(series[n], BigInt::from(1u64 << (n - 1)));
        }
    }
}
