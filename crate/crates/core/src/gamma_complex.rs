//! Decorated permutations and the flag complex whose f-polynomial is the
//! γ-polynomial of h*.
//!
//! A decorated permutation carries a bar colored `0..=3` after each left
//! peak. Bars split the word into blocks; each block splits into a
//! decreasing part (`grave`) followed by an increasing part (`acute`). The
//! first block is read with a virtual `0` in front, so its decreasing part
//! is empty.
//!
//! ```
//! use enriched_chain::gamma_complex::DecoratedPermutation;
//!
//! let d: DecoratedPermutation = "3|^2 24|^1 157|^0 689".parse()?;
//! assert_eq!(d.perm(), &[3, 2, 4, 1, 5, 7, 6, 8, 9]);
//! assert_eq!(d.cover_reduce(2)?.to_string(), "3|^2 21457|^0 689");
//! # Ok::<(), enriched_chain::Error>(())
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{left_peak_positions, peak_polynomials};
use crate::polynomials::{kruskal_katona_check, IntPolynomial};
use crate::poset::Poset;
use crate::Guards;

/// A permutation with a colored bar after each left peak.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPermutation {
    perm: Vec<usize>,
    /// `(position, color)`: the bar follows `perm[position - 1]`.
    bars: Vec<(usize, u8)>,
}

/// The letters between consecutive bars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub word: Vec<usize>,
    pub grave: Vec<usize>,
    pub acute: Vec<usize>,
}

impl Block {
    /// Splits an inner block at the end of its maximal strictly decreasing
    /// prefix. The first block has an empty decreasing part.
    pub fn split(word: &[usize], first: bool) -> Result<Block> {
        let cut = if first || word.is_empty() {
            0
        } else {
            1 + word.windows(2).take_while(|p| p[0] > p[1]).count()
        };
        let (grave, acute) = word.split_at(cut);
        if acute.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::MalformedResult(format!(
                "block {} is not decreasing then increasing",
                letters(word)
            )));
        }
        Ok(Block {
            word: word.to_vec(),
            grave: grave.to_vec(),
            acute: acute.to_vec(),
        })
    }

    /// The split taken literally: the first letter always starts the
    /// decreasing part, also in the first block.
    pub fn split_literal(word: &[usize]) -> Result<Block> {
        Block::split(word, false)
    }
}

fn letters(w: &[usize]) -> String {
    w.iter().map(ToString::to_string).collect()
}

fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len() + 1];
    w.iter().all(|&x| x >= 1 && x <= w.len() && !std::mem::replace(&mut seen[x], true))
}

fn sorted(mut w: Vec<usize>) -> Vec<usize> {
    w.sort_unstable();
    w
}

impl DecoratedPermutation {
    /// Checks that `perm` is a permutation and the bars sit exactly at its
    /// left peaks.
    pub fn new(perm: Vec<usize>, mut bars: Vec<(usize, u8)>) -> Result<Self> {
        if !is_permutation(&perm) {
            return Err(Error::MalformedResult(format!("{} is not a permutation", letters(&perm))));
        }
        bars.sort_unstable();
        let positions: Vec<usize> = bars.iter().map(|b| b.0).collect();
        let peaks = left_peak_positions(&perm);
        if positions != peaks || bars.iter().any(|b| b.1 > 3) {
            let d = DecoratedPermutation { perm, bars };
            return Err(Error::MalformedResult(format!(
                "bars of {d} are not at its left peaks {peaks:?}"
            )));
        }
        Ok(DecoratedPermutation { perm, bars })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn bars(&self) -> &[(usize, u8)] {
        &self.bars
    }

    pub fn bar_count(&self) -> usize {
        self.bars.len()
    }

    /// Words between bars, left to right.
    pub fn words(&self) -> Vec<&[usize]> {
        let mut out = Vec::with_capacity(self.bars.len() + 1);
        let mut start = 0;
        for &(pos, _) in &self.bars {
            out.push(&self.perm[start..pos]);
            start = pos;
        }
        out.push(&self.perm[start..]);
        out
    }

    pub fn blocks(&self) -> Result<Vec<Block>> {
        self.words()
            .iter()
            .enumerate()
            .map(|(k, w)| Block::split(w, k == 0))
            .collect()
    }

    /// Removes bar `i` (1-based) and rewrites `w_i w_{i+1}` as
    /// `grave(w_i) sort(acute(w_i) w_{i+1})`.
    pub fn cover_reduce(&self, i: usize) -> Result<DecoratedPermutation> {
        self.reduce_with(i, |w, k| Block::split(w, k == 0))
    }

    /// [`cover_reduce`](Self::cover_reduce) with the literal block split,
    /// which can leave an unbarred left peak.
    pub fn cover_reduce_literal(&self, i: usize) -> Result<DecoratedPermutation> {
        self.reduce_with(i, |w, _| Block::split_literal(w))
    }

    fn reduce_with(&self, i: usize, split: impl Fn(&[usize], usize) -> Result<Block>) -> Result<DecoratedPermutation> {
        if i == 0 || i > self.bars.len() {
            return Err(Error::MalformedResult(format!("{self} has no bar {i}")));
        }
        let words = self.words();
        let block = split(words[i - 1], i - 1)?;
        let start = if i == 1 { 0 } else { self.bars[i - 2].0 };
        let mut merged = block.acute.clone();
        merged.extend_from_slice(words[i]);
        let mut perm = self.perm[..start].to_vec();
        perm.extend_from_slice(&block.grave);
        perm.extend(sorted(merged));
        let end = perm.len();
        perm.extend_from_slice(&self.perm[end..]);
        let mut bars = self.bars.clone();
        bars.remove(i - 1);
        DecoratedPermutation::new(perm, bars)
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words = self.words();
        for (k, w) in words.iter().enumerate() {
            write!(f, "{}", letters(w))?;
            if let Some((_, c)) = self.bars.get(k) {
                write!(f, "|^{c} ")?;
            }
        }
        Ok(())
    }
}

impl FromStr for DecoratedPermutation {
    type Err = Error;

    /// Parses `3|^2 24|^1 157|^0 689`; letters are single digits unless
    /// separated by commas.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedResult(format!("cannot parse decorated permutation {s:?}"));
        let mut perm = Vec::new();
        let mut bars = Vec::new();
        let mut parts = s.split("|^").enumerate().peekable();
        while let Some((k, part)) = parts.next() {
            let part = part.trim();
            let (color, word) = if k == 0 {
                (None, part)
            } else {
                let mut chars = part.chars();
                let c = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(bad)?;
                (Some(c as u8), chars.as_str().trim())
            };
            if let Some(c) = color {
                bars.push((perm.len(), c));
            }
            if word.contains(',') {
                for t in word.split(',') {
                    perm.push(t.trim().parse().map_err(|_| bad())?);
                }
            } else {
                for ch in word.chars().filter(|c| !c.is_whitespace()) {
                    perm.push(ch.to_digit(10).ok_or_else(bad)? as usize);
                }
            }
            if parts.peek().is_some() && word.is_empty() {
                return Err(bad());
            }
        }
        DecoratedPermutation::new(perm, bars)
    }
}

/// All `4^{pk_left(w)}` decorations of `w`.
pub fn decorate(w: &[usize]) -> Vec<DecoratedPermutation> {
    let peaks = left_peak_positions(w);
    let total = 1usize << (2 * peaks.len());
    (0..total)
        .map(|code| {
            let bars = peaks
                .iter()
                .enumerate()
                .map(|(k, &pos)| (pos, (code >> (2 * (peaks.len() - 1 - k)) & 3) as u8))
                .collect();
            DecoratedPermutation {
                perm: w.to_vec(),
                bars,
            }
        })
        .collect()
}

/// Adjacency of one-bar decorated permutations: with `|acute(u_1)| <
/// |acute(v_1)|`, the word `u_1 |^c grave(u_2) a |^d grave(v_2) acute(v_2)`,
/// `a = sort(acute(u_2) ∩ acute(v_1))`, must be a decorated permutation
/// whose φ-image is `{u, v}`. The valley letter of `u_2` may be read in
/// either part.
pub fn vertex_adjacent(u: &DecoratedPermutation, v: &DecoratedPermutation) -> bool {
    composite(u, v).is_some()
}

/// The two-bar decorated permutation witnessing adjacency.
pub fn composite(u: &DecoratedPermutation, v: &DecoratedPermutation) -> Option<DecoratedPermutation> {
    if u.bar_count() != 1 || v.bar_count() != 1 || u.perm.len() != v.perm.len() {
        return None;
    }
    let (u, v) = match u.bars[0].0.cmp(&v.bars[0].0) {
        std::cmp::Ordering::Less => (u, v),
        std::cmp::Ordering::Greater => (v, u),
        std::cmp::Ordering::Equal => return None,
    };
    let ub = u.blocks().ok()?;
    let vb = v.blocks().ok()?;
    let (first, second) = (&ub[0].acute, &ub[1].word);
    let graves = [ub[1].grave.len(), ub[1].grave.len().saturating_sub(1)];
    graves.iter().find_map(|&cut| {
        let (grave, acute) = second.split_at(cut);
        let a: Vec<usize> = acute.iter().copied().filter(|x| vb[0].acute.contains(x)).collect();
        let mut perm = first.clone();
        perm.extend_from_slice(grave);
        perm.extend(sorted(a));
        let bar = perm.len();
        perm.extend_from_slice(&vb[1].word);
        let c = DecoratedPermutation::new(perm, vec![(first.len(), u.bars[0].1), (bar, v.bars[0].1)]).ok()?;
        let image = phi_face_map(&c).ok()?;
        (image[0] == *u && image[1] == *v).then_some(c)
    })
}

/// `φ(d)`: vertex `i` is `sort(left of grave(w_{i+1})) |^{c_i}
/// grave(w_{i+1}) sort(right of grave(w_{i+1}))`.
pub fn phi_face_map(d: &DecoratedPermutation) -> Result<Vec<DecoratedPermutation>> {
    let blocks = d.blocks()?;
    let mut out = Vec::with_capacity(d.bars.len());
    for (i, &(pos, color)) in d.bars.iter().enumerate() {
        let grave = &blocks[i + 1].grave;
        let end = pos + grave.len();
        let mut perm = sorted(d.perm[..pos].to_vec());
        perm.extend_from_slice(grave);
        perm.extend(sorted(d.perm[end..].to_vec()));
        out.push(DecoratedPermutation::new(perm, vec![(pos, color)])?);
    }
    Ok(out)
}

/// The decorated linear extensions of `P` (`S_P`) and the flag complex on
/// its one-bar members.
#[derive(Clone, Debug)]
pub struct GammaComplex {
    pub vertices: Vec<DecoratedPermutation>,
    pub edges: Vec<(usize, usize)>,
    /// Cliques as sorted vertex index lists, the empty face first.
    pub faces: Vec<Vec<usize>>,
}

impl GammaComplex {
    /// `f[k]`: number of faces with `k` vertices.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; 1];
        for face in &self.faces {
            if f.len() <= face.len() {
                f.resize(face.len() + 1, 0);
            }
            f[face.len()] += 1;
        }
        f
    }

    pub fn f_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.f_vector().into_iter().map(BigInt::from).collect())
    }

    pub fn vertex_index(&self, d: &DecoratedPermutation) -> Option<usize> {
        self.vertices.binary_search(d).ok()
    }
}

/// Every decoration of every linear extension of `P`.
pub fn decorated_extensions(p: &Poset, guards: &Guards) -> Result<Vec<DecoratedPermutation>> {
    check_complex_n(p.n(), guards)?;
    let mut out: Vec<DecoratedPermutation> = p
        .linear_extensions(guards.max_extensions_n)?
        .iter()
        .flat_map(|w| decorate(w))
        .collect();
    out.sort();
    Ok(out)
}

fn check_complex_n(n: usize, guards: &Guards) -> Result<()> {
    if n > guards.max_complex_n {
        return Err(Error::SizeLimit {
            what: "decorated permutation complex",
            requested: n as u128,
            limit: guards.max_complex_n as u128,
        });
    }
    Ok(())
}

/// Builds `Γ(S_P)` without checking it against anything.
pub fn build_complex_unchecked(p: &Poset, guards: &Guards) -> Result<GammaComplex> {
    let vertices: Vec<DecoratedPermutation> = decorated_extensions(p, guards)?
        .into_iter()
        .filter(|d| d.bar_count() == 1)
        .collect();
    let mut neighbors = vec![Vec::new(); vertices.len()];
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            if vertex_adjacent(&vertices[a], &vertices[b]) {
                edges.push((a, b));
                neighbors[a].push(b);
            }
        }
    }
    let mut faces = vec![Vec::new()];
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..vertices.len())
        .rev()
        .map(|v| (vec![v], neighbors[v].clone()))
        .collect();
    while let Some((face, candidates)) = stack.pop() {
        for &c in candidates.iter().rev() {
            let next: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&x| x > c && neighbors[c].binary_search(&x).is_ok())
                .collect();
            let mut f = face.clone();
            f.push(c);
            stack.push((f, next));
        }
        faces.push(face);
    }
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(GammaComplex {
        vertices,
        edges,
        faces,
    })
}

/// Builds `Γ(S_P)` and checks its f-polynomial equals `W_left(4x)`.
pub fn build_complex(p: &Poset, guards: &Guards) -> Result<GammaComplex> {
    let complex = build_complex_unchecked(p, guards)?;
    let expected = peak_polynomials(p, guards)?.w_left.scale_argument(&BigInt::from(4));
    let f = complex.f_polynomial();
    if f != expected {
        return Err(Error::IdentityViolation(format!(
            "f-polynomial {f} of the decorated complex differs from W_left(4x) = {expected}"
        )));
    }
    Ok(complex)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub f_vector: Vec<u64>,
    pub w_left_4x: Vec<i64>,
    pub identity: bool,
    pub kruskal_katona: bool,
    pub isomorphism: bool,
    pub lower_ideal: bool,
}

/// The identity `f = W_left(4x)`, Kruskal–Katona, and [`iso_check`].
pub fn complex_report(p: &Poset, guards: &Guards) -> Result<ComplexReport> {
    let complex = build_complex_unchecked(p, guards)?;
    let w = peak_polynomials(p, guards)?.w_left.scale_argument(&BigInt::from(4));
    let f_vector = complex.f_vector();
    let f = complex.f_polynomial();
    let iso = iso_check_with(p, &complex, guards)?;
    Ok(ComplexReport {
        kruskal_katona: kruskal_katona_check(&f_vector),
        identity: f == w,
        w_left_4x: w.to_i64s(),
        f_vector,
        isomorphism: iso.isomorphism,
        lower_ideal: iso.lower_ideal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    /// `φ` is a grade preserving bijection from `S_P` onto the faces and
    /// turns every cover reduction into deletion of one vertex.
    pub isomorphism: bool,
    /// Every cover reduction of an element of `S_P` stays in `S_P`.
    pub lower_ideal: bool,
}

pub fn iso_check(p: &Poset, guards: &Guards) -> Result<IsoReport> {
    let complex = build_complex_unchecked(p, guards)?;
    iso_check_with(p, &complex, guards)
}

fn iso_check_with(p: &Poset, complex: &GammaComplex, guards: &Guards) -> Result<IsoReport> {
    let elements = decorated_extensions(p, guards)?;
    let members: BTreeSet<&DecoratedPermutation> = elements.iter().collect();
    let faces: BTreeSet<&Vec<usize>> = complex.faces.iter().collect();
    let mut images: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut isomorphism = true;
    let mut lower_ideal = true;

    let face_of = |d: &DecoratedPermutation| -> Option<Vec<usize>> {
        let vs = phi_face_map(d).ok()?;
        let mut idx: Vec<usize> = vs.iter().map(|v| complex.vertex_index(v)).collect::<Option<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        (idx.len() == vs.len()).then_some(idx)
    };

    for d in &elements {
        let Some(face) = face_of(d) else {
            isomorphism = false;
            continue;
        };
        if !faces.contains(&face) || face.len() != d.bar_count() {
            isomorphism = false;
        }
        *images.entry(face.clone()).or_default() += 1;
        for i in 1..=d.bar_count() {
            match d.cover_reduce(i) {
                Ok(r) => {
                    if !members.contains(&r) {
                        lower_ideal = false;
                    }
                    let removed = complex.vertex_index(&phi_face_map(d)?[i - 1]);
                    let expected: Vec<usize> = face.iter().copied().filter(|&v| Some(v) != removed).collect();
                    if face_of(&r) != Some(expected) {
                        isomorphism = false;
                    }
                }
                Err(_) => {
                    lower_ideal = false;
                    isomorphism = false;
                }
            }
        }
    }
    if images.len() != faces.len() || images.values().any(|&c| c != 1) {
        isomorphism = false;
    }
    Ok(IsoReport {
        isomorphism,
        lower_ideal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralRuleReport {
    pub reductions: u64,
    pub malformed: u64,
}

/// How often the literal block split produces a word with an unbarred
/// left peak, over every cover reduction in `S_P`.
pub fn literal_rule_frequency(p: &Poset, guards: &Guards) -> Result<LiteralRuleReport> {
    let mut report = LiteralRuleReport {
        reductions: 0,
        malformed: 0,
    };
    for d in decorated_extensions(p, guards)? {
        for i in 1..=d.bar_count() {
            report.reductions += 1;
            match d.cover_reduce_literal(i) {
                Ok(_) => {}
                Err(Error::MalformedResult(_)) => report.malformed += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}
