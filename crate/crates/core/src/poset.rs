//! Finite posets on the labels `1..=n` and the order-theoretic
//! enumerations everything else is built from.
//!
//! Subsets of the ground set are `u32` bitmasks, bit `i - 1` standing for
//! label `i`, which caps the ground set at 32 elements. The size guards keep
//! every caller far below that.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 32;

/// Labels of the set bits of `mask`, ascending.
pub fn mask_labels(mask: u32) -> Vec<usize> {
    (0..MAX_ELEMENTS)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

pub fn labels_mask(labels: &[usize]) -> u32 {
    labels.iter().fold(0, |m, &l| m | 1 << (l - 1))
}

/// A strict partial order on `1..=n`, stored transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `below[i]`: mask of labels strictly below label `i + 1`.
    below: Vec<u32>,
    above: Vec<u32>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.cover_relations())
    }
}

/// An antichain of a poset, as a bitmask of labels. The empty antichain is
/// a valid value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Antichain(pub u32);

impl Antichain {
    pub fn labels(self) -> Vec<usize> {
        mask_labels(self.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: usize) -> bool {
        self.0 >> (label - 1) & 1 == 1
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A down-closed subset together with its maximal elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PosetIdeal {
    pub elements: u32,
    pub max: Antichain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetPredicates {
    pub comparability_edges: Vec<(usize, usize)>,
    pub width: usize,
    pub narrow: bool,
}

impl Poset {
    /// Builds the poset generated by `covers`, where `(a, b)` means `a < b`.
    /// Any relations may be given; the transitive closure is taken.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if n > MAX_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "poset elements",
                requested: n as u128,
                limit: MAX_ELEMENTS as u128,
            });
        }
        let mut below = vec![0u32; n];
        for &(a, b) in covers {
            for l in [a, b] {
                if l == 0 || l > n {
                    return Err(Error::LabelOutOfRange { label: l, n });
                }
            }
            below[b - 1] |= 1 << (a - 1);
        }
        // Warshall closure on bitmasks.
        for k in 0..n {
            for i in 0..n {
                if below[i] >> k & 1 == 1 {
                    below[i] |= below[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i] >> i & 1 == 1) {
            return Err(Error::CycleDetected(i + 1));
        }
        Ok(Self::from_closed(below))
    }

    fn from_closed(below: Vec<u32>) -> Poset {
        let n = below.len();
        let mut above = vec![0u32; n];
        for (j, &b) in below.iter().enumerate() {
            for i in mask_labels(b) {
                above[i - 1] |= 1 << j;
            }
        }
        Poset { n, below, above }
    }

    pub fn chain(n: usize) -> Poset {
        Self::from_closed((0..n).map(|i| (1u32 << i) - 1).collect())
    }

    pub fn antichain(n: usize) -> Poset {
        Self::from_closed(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// `a <_P b` for labels `a`, `b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b - 1] >> (a - 1) & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// Mask of labels strictly below `label`.
    pub fn below_mask(&self, label: usize) -> u32 {
        self.below[label - 1]
    }

    pub fn above_mask(&self, label: usize) -> u32 {
        self.above[label - 1]
    }

    pub fn is_naturally_labeled(&self) -> bool {
        (1..=self.n).all(|j| self.below[j - 1] >> (j - 1) == 0)
    }

    /// `(a, b)` with `b` covering `a`, sorted.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 1..=self.n {
            for a in self.lower_covers(b) {
                out.push((a, b));
            }
        }
        out.sort_unstable();
        out
    }

    /// Elements covered by `label`.
    pub fn lower_covers(&self, label: usize) -> Vec<usize> {
        let below = self.below[label - 1];
        mask_labels(below)
            .into_iter()
            .filter(|&a| below & self.above[a - 1] == 0)
            .collect()
    }

    pub fn is_minimal(&self, label: usize) -> bool {
        self.below[label - 1] == 0
    }

    pub fn is_antichain(&self, mask: u32) -> bool {
        mask_labels(mask)
            .iter()
            .all(|&l| self.below[l - 1] & mask == 0)
    }

    /// Smallest ideal containing `mask`.
    pub fn down_closure(&self, mask: u32) -> u32 {
        mask_labels(mask)
            .iter()
            .fold(mask, |acc, &l| acc | self.below[l - 1])
    }

    pub fn is_ideal(&self, mask: u32) -> bool {
        self.down_closure(mask) == mask
    }

    /// Maximal elements of an arbitrary subset.
    pub fn maximal_elements(&self, mask: u32) -> Antichain {
        Antichain(
            mask_labels(mask)
                .into_iter()
                .filter(|&l| self.above[l - 1] & mask == 0)
                .fold(0, |m, l| m | 1 << (l - 1)),
        )
    }

    /// All antichains, sorted by size and then lexicographically by label
    /// list. The empty antichain comes first.
    pub fn antichains(&self) -> Vec<Antichain> {
        let mut out = Vec::new();
        self.extend_antichains(0, 1, &mut out);
        out.sort_by_key(|a| (a.len(), a.labels()));
        out
    }

    fn extend_antichains(&self, current: u32, next: usize, out: &mut Vec<Antichain>) {
        out.push(Antichain(current));
        for l in next..=self.n {
            let blocked = self.below[l - 1] | self.above[l - 1];
            if blocked & current == 0 {
                self.extend_antichains(current | 1 << (l - 1), l + 1, out);
            }
        }
    }

    /// Every maximal chain, each listed bottom to top; sorted.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in 1..=self.n {
            if self.is_minimal(start) {
                let mut path = vec![start];
                self.extend_chain(&mut path, &mut out);
            }
        }
        out.sort();
        out
    }

    fn extend_chain(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let top = *path.last().unwrap();
        let uppers: Vec<usize> = (1..=self.n)
            .filter(|&b| self.lower_covers(b).contains(&top))
            .collect();
        if uppers.is_empty() {
            out.push(path.clone());
            return;
        }
        for b in uppers {
            path.push(b);
            self.extend_chain(path, out);
            path.pop();
        }
    }

    /// All linear extensions in lexicographic order. `max_n` guards the
    /// factorial blow-up.
    pub fn linear_extensions(&self, max_n: usize) -> Result<Vec<Vec<usize>>> {
        if self.n > max_n {
            return Err(Error::SizeLimit {
                what: "linear extensions (poset size)",
                requested: self.n as u128,
                limit: max_n as u128,
            });
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        self.extend_linear(0, &mut prefix, &mut out);
        Ok(out)
    }

    fn extend_linear(&self, placed: u32, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == self.n {
            out.push(prefix.clone());
            return;
        }
        for l in 1..=self.n {
            let bit = 1 << (l - 1);
            if placed & bit == 0 && self.below[l - 1] & !placed == 0 {
                prefix.push(l);
                self.extend_linear(placed | bit, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Count of linear extensions without materializing them.
    pub fn count_linear_extensions(&self) -> u64 {
        // Dynamic programming over ideals.
        let full = self.full_mask();
        let mut ways = std::collections::HashMap::new();
        ways.insert(0u32, 1u64);
        let mut frontier = vec![0u32];
        for _ in 0..self.n {
            let mut next = Vec::new();
            for ideal in frontier {
                let w = ways[&ideal];
                for l in 1..=self.n {
                    let bit = 1 << (l - 1);
                    if ideal & bit == 0 && self.below[l - 1] & !ideal == 0 {
                        let grown = ideal | bit;
                        let e = ways.entry(grown).or_insert(0);
                        if *e == 0 {
                            next.push(grown);
                        }
                        *e += w;
                    }
                }
            }
            frontier = next;
        }
        ways.get(&full).copied().unwrap_or(1)
    }

    /// The ideal lattice J(P), listed in the order of [`Poset::antichains`]
    /// (ideals correspond to their maximal antichains). Closure under union
    /// and intersection is verified.
    pub fn ideal_lattice(&self) -> Result<Vec<PosetIdeal>> {
        let ideals: Vec<PosetIdeal> = self
            .antichains()
            .into_iter()
            .map(|a| PosetIdeal {
                elements: self.down_closure(a.0),
                max: a,
            })
            .collect();
        for i in &ideals {
            for j in &ideals {
                for combined in [i.elements | j.elements, i.elements & j.elements] {
                    if !self.is_ideal(combined) {
                        return Err(Error::IdentityViolation(format!(
                            "J(P) not closed: {:?}",
                            mask_labels(combined)
                        )));
                    }
                }
            }
        }
        Ok(ideals)
    }

    pub fn ideal(&self, elements: u32) -> Result<PosetIdeal> {
        if !self.is_ideal(elements) {
            return Err(Error::NotAnIdeal(mask_labels(elements)));
        }
        Ok(PosetIdeal {
            elements,
            max: self.maximal_elements(elements),
        })
    }

    /// `I * J`: the ideal generated by `max(I ∩ J) ∩ (max I ∪ max J)`.
    pub fn star(&self, i: u32, j: u32) -> Result<PosetIdeal> {
        let i = self.ideal(i)?;
        let j = self.ideal(j)?;
        let generators =
            self.maximal_elements(i.elements & j.elements).0 & (i.max.0 | j.max.0);
        self.ideal(self.down_closure(generators))
    }

    pub fn comparability_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if self.comparable(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Width (largest antichain) and narrowness (width at most two).
    pub fn predicates(&self) -> PosetPredicates {
        let width = self.antichains().iter().map(|a| a.len()).max().unwrap_or(0);
        PosetPredicates {
            comparability_edges: self.comparability_edges(),
            width,
            narrow: width <= 2,
        }
    }

    /// Lexicographically smallest linear extension when the labeling is not
    /// natural. Relabeling along it yields a naturally labeled copy with the
    /// same comparability graph up to the relabeling.
    pub fn natural_relabeling(&self) -> Option<Vec<usize>> {
        if self.is_naturally_labeled() {
            return None;
        }
        let mut placed = 0u32;
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let l = (1..=self.n)
                .find(|&l| placed >> (l - 1) & 1 == 0 && self.below[l - 1] & !placed == 0)
                .expect("acyclic relation always has a minimal element");
            placed |= 1 << (l - 1);
            order.push(l);
        }
        Some(order)
    }

    /// Relabels along a linear extension: `extension[k]` gets label `k + 1`.
    pub fn relabeled(&self, extension: &[usize]) -> Result<Poset> {
        assert_eq!(extension.len(), self.n);
        let mut new_label = vec![0usize; self.n];
        for (k, &old) in extension.iter().enumerate() {
            if old == 0 || old > self.n {
                return Err(Error::LabelOutOfRange {
                    label: old,
                    n: self.n,
                });
            }
            new_label[old - 1] = k + 1;
        }
        let covers: Vec<(usize, usize)> = self
            .cover_relations()
            .into_iter()
            .map(|(a, b)| (new_label[a - 1], new_label[b - 1]))
            .collect();
        Poset::from_covers(self.n, &covers)
    }

    /// A naturally labeled copy (self if already natural) and the
    /// extension used.
    pub fn canonicalize(&self) -> (Poset, Vec<usize>) {
        match self.natural_relabeling() {
            None => (self.clone(), (1..=self.n).collect()),
            Some(ext) => (self.relabeled(&ext).expect("extension is valid"), ext),
        }
    }
}

/// All naturally labeled posets on `1..=n`, in a deterministic order. Each
/// element's down-set is chosen as a down-closed subset of the smaller
/// labels.
pub fn naturally_labeled_posets(n: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    let mut below = Vec::with_capacity(n);
    extend_natural(n, &mut below, &mut out);
    out
}

fn extend_natural(n: usize, below: &mut Vec<u32>, out: &mut Vec<Poset>) {
    let j = below.len();
    if j == n {
        out.push(Poset::from_closed(below.clone()));
        return;
    }
    for mask in 0u32..(1u32 << j) {
        let closed = mask_labels(mask)
            .iter()
            .all(|&l| below[l - 1] & !mask == 0);
        if closed {
            below.push(mask);
            extend_natural(n, below, out);
            below.pop();
        }
    }
}

/// Every transitive orientation of the labeled graph `edges` on `1..=n`,
/// as posets. Exponential in the edge count; intended for small graphs.
pub fn transitive_orientations(n: usize, edges: &[(usize, usize)]) -> Vec<Poset> {
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << edges.len()) {
        let relations: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| if choice >> k & 1 == 0 { (a, b) } else { (b, a) })
            .collect();
        let Ok(p) = Poset::from_covers(n, &relations) else {
            continue;
        };
        // Closure must not add comparabilities the graph lacks.
        if p.comparability_edges().len() == edges.len() {
            out.push(p);
        }
    }
    out
}
