//! The toric ideal of the enriched chain polytope, its quadratic Gröbner
//! basis candidate, and the triangulation read off the initial ideal.
//!
//! Variables are signed antichains `x_A^ε`, mapped to `t^(signed
//! indicator of A) * s`. Two binomial families are generated: products of
//! two variables that disagree in sign on a shared element (the tail drops
//! that element from both), and sign-consistent liftings of the Hibi–Li
//! binomials `x_{max I} x_{max J} - x_{max(I∪J)} x_{max(I*J)}`. The term
//! order compares total antichain size, then an LP-certified weight on
//! antichains, then graded reverse lexicographic order on variables.
//!
//! The candidate is certified two ways: Buchberger's S-pair criterion
//! (verification only, no completion), and a Hilbert function check that
//! counts standard monomials against lattice point counts.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, LatticePoint};
use crate::lp;
use crate::polynomials::{self, IntPolynomial};
use crate::poset::{Antichain, Poset};
use crate::Guards;

/// `x_A^ε`: an antichain with the submask of its elements carrying `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedVariable {
    pub antichain: Antichain,
    pub negatives: u32,
}

impl SignedVariable {
    pub fn is_origin(&self) -> bool {
        self.antichain.is_empty()
    }

    /// Signs in label order, `+1` or `-1`.
    pub fn signs(&self) -> Vec<i8> {
        self.antichain
            .labels()
            .iter()
            .map(|&l| if self.negatives >> (l - 1) & 1 == 1 { -1 } else { 1 })
            .collect()
    }

    fn sort_key(&self) -> (Vec<usize>, Vec<i8>) {
        (self.antichain.labels(), self.signs())
    }

    /// Drops `label` from the antichain.
    fn without(&self, label: usize) -> SignedVariable {
        let bit = 1 << (label - 1);
        SignedVariable {
            antichain: Antichain(self.antichain.0 & !bit),
            negatives: self.negatives & !bit,
        }
    }
}

impl fmt::Display for SignedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_origin() {
            return write!(f, "x_0");
        }
        write!(f, "x_")?;
        for l in self.antichain.labels() {
            write!(f, "{l}")?;
        }
        write!(f, "^")?;
        for s in self.signs() {
            write!(f, "{}", if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A monomial as a sorted multiset of variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn new(mut vars: Vec<u16>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &v in &self.0 {
            if j < other.0.len() && other.0[j] == v {
                j += 1;
            } else if j < other.0.len() && other.0[j] < v {
                return None;
            } else {
                out.push(v);
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                out.push(b[j]);
                j += 1;
            } else {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        !self.0.iter().any(|v| other.0.binary_search(v).is_ok())
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

/// The polynomial ring of the toric ideal: one variable per lattice point,
/// sorted by `(antichain labels, signs)`. That order is also the tiebreak.
#[derive(Clone, Debug)]
pub struct ToricRing {
    n: usize,
    variables: Vec<SignedVariable>,
    images: Vec<LatticePoint>,
    index: HashMap<(u32, u32), u16>,
}

impl ToricRing {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variables(&self) -> &[SignedVariable] {
        &self.variables
    }

    /// Exponent of `t` of a variable; the `s`-degree is always one.
    pub fn image(&self, var: u16) -> &LatticePoint {
        &self.images[var as usize]
    }

    pub fn var(&self, v: SignedVariable) -> u16 {
        self.index[&(v.antichain.0, v.negatives)]
    }

    pub fn origin(&self) -> u16 {
        self.var(SignedVariable {
            antichain: Antichain(0),
            negatives: 0,
        })
    }

    /// `(t-exponent, s-degree)` of a monomial.
    pub fn monomial_image(&self, m: &Monomial) -> (Vec<i64>, usize) {
        let mut t = vec![0i64; self.n];
        for &v in &m.0 {
            for (acc, c) in t.iter_mut().zip(&self.images[v as usize].0) {
                *acc += c;
            }
        }
        (t, m.degree())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        m.0.iter()
            .map(|&v| self.variables[v as usize].to_string())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn format_binomial(&self, b: &ToricBinomial) -> String {
        format!("{} - {}", self.format_monomial(&b.lead), self.format_monomial(&b.tail))
    }
}

/// One variable per lattice point of `E_P`, with its image.
pub fn variables_and_map(p: &Poset) -> ToricRing {
    let mut variables: Vec<SignedVariable> = geometry::signed_antichains(p)
        .into_iter()
        .map(|(antichain, negatives)| SignedVariable { antichain, negatives })
        .collect();
    variables.sort_by_key(SignedVariable::sort_key);
    assert!(variables.len() < u16::MAX as usize, "too many variables");
    let images = variables
        .iter()
        .map(|v| LatticePoint::signed_indicator(p.n(), v.antichain, v.negatives))
        .collect();
    let index = variables
        .iter()
        .enumerate()
        .map(|(i, v)| ((v.antichain.0, v.negatives), i as u16))
        .collect();
    ToricRing {
        n: p.n(),
        variables,
        images,
        index,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Opposite signs on a shared element.
    SignClash,
    /// Lifted Hibi–Li binomial.
    IdealPair,
}

/// `lead - tail`, the first monomial being the intended initial term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricBinomial {
    pub lead: Monomial,
    pub tail: Monomial,
    pub family: Family,
}

/// Both binomial families, deduplicated, every member checked to lie in
/// the toric ideal by comparing images.
pub fn generate_groebner_candidates(p: &Poset, ring: &ToricRing) -> Result<Vec<ToricBinomial>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |lead: Monomial, tail: Monomial, family: Family| -> Result<()> {
        if lead == tail {
            return Ok(());
        }
        let b = ToricBinomial { lead, tail, family };
        if ring.monomial_image(&b.lead) != ring.monomial_image(&b.tail) {
            return Err(Error::ImageMismatch(ring.format_binomial(&b)));
        }
        if seen.insert((b.lead.clone(), b.tail.clone())) {
            out.push(b);
        }
        Ok(())
    };

    let vars = ring.variables();
    for (a, u) in vars.iter().enumerate() {
        for (b, v) in vars.iter().enumerate().skip(a + 1) {
            let clash = u.antichain.0 & v.antichain.0 & (u.negatives ^ v.negatives);
            for label in crate::poset::mask_labels(clash) {
                let lead = Monomial::new(vec![a as u16, b as u16]);
                let tail = Monomial::new(vec![ring.var(u.without(label)), ring.var(v.without(label))]);
                push(lead, tail, Family::SignClash)?;
            }
        }
    }

    let ideals = p.ideal_lattice()?;
    for (k, i) in ideals.iter().enumerate() {
        for j in &ideals[k + 1..] {
            let union = p.maximal_elements(i.elements | j.elements);
            let star = p.star(i.elements, j.elements)?.max;
            let support = i.max.0 | j.max.0;
            if (union.0 | star.0) & !support != 0 {
                return Err(Error::ImageMismatch(format!(
                    "tail antichains {union} {star} leave the support of {} {}",
                    i.max, j.max
                )));
            }
            // every sign pattern on the support; shared elements agree
            let mut neg = 0u32;
            loop {
                let signed = |a: Antichain| {
                    ring.var(SignedVariable {
                        antichain: a,
                        negatives: neg & a.0,
                    })
                };
                let lead = Monomial::new(vec![signed(i.max), signed(j.max)]);
                let tail = Monomial::new(vec![signed(union), signed(star)]);
                push(lead, tail, Family::IdealPair)?;
                if neg == support {
                    break;
                }
                neg = neg.wrapping_sub(support) & support;
            }
        }
    }
    Ok(out)
}

/// The order: total antichain size, then antichain weight, then graded
/// reverse lexicographic order on variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    /// Antichain size per variable.
    pub card: Vec<i64>,
    /// Sign-independent weight per variable, scaled to integers.
    pub weight: Vec<i64>,
    /// The LP solution on antichains, in [`Poset::antichains`] order.
    pub antichain_weights: Vec<BigRational>,
}

impl TermOrder {
    /// Order with explicit per-variable weights; used for mutation tests.
    pub fn from_weights(card: Vec<i64>, weight: Vec<i64>) -> Self {
        TermOrder {
            card,
            weight,
            antichain_weights: Vec::new(),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let sum = |w: &[i64], m: &Monomial| m.0.iter().map(|&v| w[v as usize]).sum::<i64>();
        sum(&self.card, a)
            .cmp(&sum(&self.card, b))
            .then_with(|| sum(&self.weight, a).cmp(&sum(&self.weight, b)))
            .then_with(|| grevlex(a, b))
    }
}

/// Graded reverse lexicographic comparison: higher degree wins; otherwise
/// the monomial with the smaller exponent at the smallest differing
/// variable is larger.
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    if a.degree() != b.degree() {
        return a.degree().cmp(&b.degree());
    }
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.0.get(i), b.0.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            // a holds more of the smaller variable x
            (Some(x), Some(y)) if x < y => return Ordering::Less,
            _ => return Ordering::Greater,
        }
    }
}

/// Solves for antichain weights making every Hibi–Li binomial on
/// incomparable ideals strictly decreasing, with margin one:
/// `w(max I) + w(max J) >= 1 + w(max(I∪J)) + w(max(I*J))`, `w >= 0`.
pub fn construct_order(p: &Poset, ring: &ToricRing) -> Result<TermOrder> {
    let ideals = p.ideal_lattice()?;
    let position: HashMap<u32, usize> = ideals
        .iter()
        .enumerate()
        .map(|(k, i)| (i.max.0, k))
        .collect();
    let cols = ideals.len();
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (k, i) in ideals.iter().enumerate() {
        for j in &ideals[k + 1..] {
            let comparable = i.elements & !j.elements == 0 || j.elements & !i.elements == 0;
            if comparable {
                continue;
            }
            let union = p.maximal_elements(i.elements | j.elements);
            let star = p.star(i.elements, j.elements)?.max;
            let mut row = vec![0i64; cols];
            row[position[&i.max.0]] += 1;
            row[position[&j.max.0]] += 1;
            row[position[&union.0]] -= 1;
            row[position[&star.0]] -= 1;
            rows.insert(row);
        }
    }
    let q = |v: i64| BigRational::from_integer(v.into());
    let a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let b = vec![BigRational::one(); a.len()];
    let c = vec![BigRational::one(); cols];
    let solution = match lp::minimize(&c, &a, &b) {
        lp::LpOutcome::Optimal { x, .. } => x,
        lp::LpOutcome::Infeasible => {
            return Err(Error::Infeasible(format!(
                "{} Hibi–Li margin constraints on {} antichains",
                a.len(),
                cols
            )))
        }
    };
    let scale = polynomials::lcm_of_denominators(&solution);
    let integral: Vec<i64> = solution
        .iter()
        .map(|w| (w * BigRational::from_integer(scale.clone())).to_integer().to_i64().expect("weight fits i64"))
        .collect();
    let card = ring.variables().iter().map(|v| v.antichain.len() as i64).collect();
    let weight = ring
        .variables()
        .iter()
        .map(|v| integral[position[&v.antichain.0]])
        .collect();
    Ok(TermOrder {
        card,
        weight,
        antichain_weights: solution,
    })
}

/// Confirms the first monomial of every binomial is its initial term.
pub fn check_orientation(ring: &ToricRing, basis: &[ToricBinomial], order: &TermOrder) -> Result<()> {
    for b in basis {
        if order.compare(&b.lead, &b.tail) != Ordering::Greater {
            return Err(Error::IdentityViolation(format!(
                "initial term of {} is not its first monomial",
                ring.format_binomial(b)
            )));
        }
    }
    Ok(())
}

/// Structural check on the claimed initial terms: squarefree, quadratic,
/// free of the origin variable.
pub fn leading_terms_ok(ring: &ToricRing, basis: &[ToricBinomial]) -> bool {
    let origin = ring.origin();
    basis
        .iter()
        .all(|b| b.lead.degree() == 2 && b.lead.is_squarefree() && !b.lead.0.contains(&origin))
}

/// Sparse polynomial with integer coefficients, terms sorted by the term
/// order, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<(Monomial, i128)>);

impl Poly {
    fn from_binomial(b: &ToricBinomial, order: &TermOrder) -> Poly {
        let mut p = Poly(vec![(b.lead.clone(), 1), (b.tail.clone(), -1)]);
        p.normalize(order);
        p
    }

    fn normalize(&mut self, order: &TermOrder) {
        self.0.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut merged: Vec<(Monomial, i128)> = Vec::with_capacity(self.0.len());
        for (m, c) in self.0.drain(..) {
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| *c != 0);
        let g = merged.iter().fold(0i128, |g, (_, c)| g.gcd(c));
        if g > 1 {
            for (_, c) in &mut merged {
                *c /= g;
            }
        }
        self.0 = merged;
    }

    fn lead(&self) -> Option<&(Monomial, i128)> {
        self.0.first()
    }

    /// `a * (m * self) - ...`: scaled, shifted copy.
    fn scaled_shift(&self, coeff: i128, shift: &Monomial) -> Vec<(Monomial, i128)> {
        self.0
            .iter()
            .map(|(m, c)| (m.mul(shift), c * coeff))
            .collect()
    }
}

struct Reducer<'a> {
    basis: Vec<Poly>,
    by_lead: HashMap<Monomial, usize>,
    lead_degrees: Vec<usize>,
    order: &'a TermOrder,
}

impl<'a> Reducer<'a> {
    fn new(basis: Vec<Poly>, order: &'a TermOrder) -> Self {
        let mut by_lead = HashMap::new();
        for (k, g) in basis.iter().enumerate() {
            if let Some((m, _)) = g.lead() {
                by_lead.entry(m.clone()).or_insert(k);
            }
        }
        let mut lead_degrees: Vec<usize> = by_lead.keys().map(Monomial::degree).collect();
        lead_degrees.sort_unstable();
        lead_degrees.dedup();
        Reducer {
            basis,
            by_lead,
            lead_degrees,
            order,
        }
    }

    /// A basis element whose leading monomial divides `m`.
    fn divisor(&self, m: &Monomial) -> Option<usize> {
        for &d in &self.lead_degrees {
            if d > m.degree() {
                break;
            }
            let mut found = None;
            sub_multisets(&m.0, d, &mut Vec::new(), 0, &mut |sub| {
                if found.is_none() {
                    found = self.by_lead.get(&Monomial(sub.to_vec())).copied();
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Top-reduces until zero or an irreducible leading term remains.
    fn reduces_to_zero(&self, mut h: Poly) -> bool {
        loop {
            let Some((m, c)) = h.lead().cloned() else {
                return true;
            };
            let Some(k) = self.divisor(&m) else {
                return false;
            };
            let g = &self.basis[k];
            let (gm, gc) = g.lead().unwrap();
            let shift = m.div(gm).expect("divisor found by lookup");
            let mut terms: Vec<(Monomial, i128)> =
                h.0.iter().map(|(mm, cc)| (mm.clone(), cc * gc)).collect();
            terms.extend(g.scaled_shift(-c, &shift));
            h = Poly(terms);
            h.normalize(self.order);
        }
    }
}

fn sub_multisets(items: &[u16], k: usize, current: &mut Vec<u16>, start: usize, visit: &mut dyn FnMut(&[u16])) {
    if current.len() == k {
        visit(current);
        return;
    }
    let mut i = start;
    while i < items.len() {
        current.push(items[i]);
        sub_multisets(items, k, current, i + 1, visit);
        current.pop();
        // skip repeated values at this depth
        let v = items[i];
        while i < items.len() && items[i] == v {
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuchbergerReport {
    pub basis_size: usize,
    pub pairs_reduced: u64,
    pub pairs_skipped_coprime: u64,
    pub failures: u64,
    pub passed: bool,
}

/// Buchberger's criterion on a fixed set of binomials: every S-pair with
/// non-coprime leading terms must reduce to zero. Leading terms are taken
/// from `order`, not from the binomials' flags.
pub fn buchberger_verify(basis: &[ToricBinomial], order: &TermOrder, guards: &Guards) -> Result<BuchbergerReport> {
    let size = basis.len() as u128;
    let pairs = size * size.saturating_sub(1) / 2;
    if pairs > guards.max_spairs {
        return Err(Error::SizeLimit {
            what: "S-pairs",
            requested: pairs,
            limit: guards.max_spairs,
        });
    }
    let polys: Vec<Poly> = basis.iter().map(|b| Poly::from_binomial(b, order)).collect();
    let reducer = Reducer::new(polys, order);

    let mut by_var: HashMap<u16, Vec<usize>> = HashMap::new();
    for (k, g) in reducer.basis.iter().enumerate() {
        if let Some((m, _)) = g.lead() {
            let mut vars = m.0.clone();
            vars.dedup();
            for v in vars {
                by_var.entry(v).or_default().push(k);
            }
        }
    }
    let mut candidate_pairs: Vec<(usize, usize)> = by_var
        .values()
        .flat_map(|ks| {
            ks.iter()
                .enumerate()
                .flat_map(move |(x, &a)| ks[x + 1..].iter().map(move |&b| (a.min(b), a.max(b))))
        })
        .collect();
    candidate_pairs.sort_unstable();
    candidate_pairs.dedup();

    let failures: u64 = candidate_pairs
        .par_iter()
        .map(|&(a, b)| {
            let (ga, gb) = (&reducer.basis[a], &reducer.basis[b]);
            let (ma, ca) = ga.lead().unwrap();
            let (mb, cb) = gb.lead().unwrap();
            let l = ma.lcm(mb);
            let mut terms = ga.scaled_shift(*cb, &l.div(ma).unwrap());
            terms.extend(gb.scaled_shift(-ca, &l.div(mb).unwrap()));
            let mut s = Poly(terms);
            s.normalize(order);
            u64::from(!reducer.reduces_to_zero(s))
        })
        .sum();
    let reduced = candidate_pairs.len() as u64;
    Ok(BuchbergerReport {
        basis_size: basis.len(),
        pairs_reduced: reduced,
        pairs_skipped_coprime: (pairs as u64).saturating_sub(reduced),
        failures,
        passed: failures == 0,
    })
}

/// Simple graph on the variables whose edges are the squarefree quadratic
/// initial terms. Its independent sets are the faces of the triangulation.
#[derive(Clone, Debug)]
pub struct InitialComplex {
    vertex_count: usize,
    origin: usize,
    /// `neighbors[v]`: bitset of variables sharing an initial term with `v`.
    neighbors: Vec<Vec<u64>>,
}

impl InitialComplex {
    pub fn new(ring: &ToricRing, basis: &[ToricBinomial]) -> Result<Self> {
        if !leading_terms_ok(ring, basis) {
            return Err(Error::IdentityViolation(
                "an initial term is not a squarefree quadratic avoiding the origin".into(),
            ));
        }
        let count = ring.variables().len();
        let words = count.div_ceil(64);
        let mut neighbors = vec![vec![0u64; words]; count];
        for b in basis {
            let (u, v) = (b.lead.0[0] as usize, b.lead.0[1] as usize);
            neighbors[u][v / 64] |= 1 << (v % 64);
            neighbors[v][u / 64] |= 1 << (u % 64);
        }
        Ok(InitialComplex {
            vertex_count: count,
            origin: ring.origin() as usize,
            neighbors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors
            .iter()
            .map(|w| w.iter().map(|x| x.count_ones() as usize).sum::<usize>())
            .sum::<usize>()
            / 2
    }

    /// Visits every nonempty independent set, in increasing vertex order.
    pub fn for_each_face(&self, visit: &mut dyn FnMut(&[usize], bool)) {
        let words = self.vertex_count.div_ceil(64);
        let mut all = vec![0u64; words];
        for v in 0..self.vertex_count {
            all[v / 64] |= 1 << (v % 64);
        }
        let mut face = Vec::new();
        self.grow(&mut face, &all, 0, visit);
    }

    /// `allowed`: vertices not adjacent to anything in `face`, including
    /// those smaller than the last vertex (for maximality).
    fn grow(&self, face: &mut Vec<usize>, allowed: &[u64], from: usize, visit: &mut dyn FnMut(&[usize], bool)) {
        for v in from..self.vertex_count {
            if allowed[v / 64] >> (v % 64) & 1 == 0 {
                continue;
            }
            face.push(v);
            let mut next: Vec<u64> = allowed
                .iter()
                .zip(&self.neighbors[v])
                .map(|(a, nb)| a & !nb)
                .collect();
            next[v / 64] &= !(1 << (v % 64));
            let maximal = face
                .iter()
                .fold(next.iter().any(|&w| w != 0), |_, _| next.iter().any(|&w| w != 0));
            visit(face, !maximal);
            self.grow(face, &next, v + 1, visit);
            face.pop();
        }
    }

    /// Number of independent sets by size; index `k` counts `k`-sets.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut counts = vec![1u64];
        self.for_each_face(&mut |face, _| {
            if counts.len() <= face.len() {
                counts.resize(face.len() + 1, 0);
            }
            counts[face.len()] += 1;
        });
        counts
    }

    /// Standard monomials of degree `m`: multisets supported on an
    /// independent set, `sum_S C(m-1, |S|-1)`.
    pub fn standard_monomial_count(face_counts: &[u64], m: u64) -> BigInt {
        if m == 0 {
            return BigInt::one();
        }
        face_counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| BigInt::from(c) * binom(m - 1, k as u64 - 1))
            .sum()
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Degree-`m` standard monomial count of the initial ideal generated by
/// the binomials' first monomials.
pub fn standard_monomial_count(ring: &ToricRing, basis: &[ToricBinomial], m: u64) -> Result<BigInt> {
    let complex = InitialComplex::new(ring, basis)?;
    Ok(InitialComplex::standard_monomial_count(&complex.face_counts(), m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    /// Maximal faces as lists of variable indices.
    pub maximal_faces: Vec<Vec<usize>>,
    /// Faces of the boundary (not containing the origin) by size.
    pub boundary_f_vector: Vec<u64>,
    pub boundary_h: Vec<i64>,
    pub unimodular: bool,
}

/// Reads the triangulation off the initial complex and checks: every
/// maximal simplex has `n + 1` vertices including the origin and
/// determinant `±1`, there are `2^n |L(P)|` of them, and the boundary
/// sphere's h-polynomial equals h*.
pub fn triangulation_extract(
    p: &Poset,
    ring: &ToricRing,
    basis: &[ToricBinomial],
    guards: &Guards,
) -> Result<Triangulation> {
    let n = p.n();
    let complex = InitialComplex::new(ring, basis)?;
    let origin = complex.origin;
    let mut maximal_faces = Vec::new();
    let mut boundary = vec![1u64];
    complex.for_each_face(&mut |face, is_maximal| {
        if is_maximal {
            maximal_faces.push(face.to_vec());
        }
        if !face.contains(&origin) {
            if boundary.len() <= face.len() {
                boundary.resize(face.len() + 1, 0);
            }
            boundary[face.len()] += 1;
        }
    });

    for face in &maximal_faces {
        if face.len() != n + 1 || !face.contains(&origin) {
            return Err(Error::IdentityViolation(format!(
                "maximal face {} has {} vertices{}",
                format_face(ring, face),
                face.len(),
                if face.contains(&origin) { "" } else { " and misses the origin" }
            )));
        }
        let rows: Vec<Vec<i64>> = face
            .iter()
            .filter(|&&v| v != origin)
            .map(|&v| ring.image(v as u16).0.clone())
            .collect();
        let det = determinant(rows);
        if det.abs() != 1 {
            return Err(Error::NonUnimodularSimplex {
                face: format_face(ring, face),
                det,
            });
        }
    }
    let expected = p.count_linear_extensions() << n;
    if maximal_faces.len() as u64 != expected {
        return Err(Error::FaceCountMismatch {
            expected,
            found: maximal_faces.len() as u64,
        });
    }

    boundary.resize(n + 1, 0);
    // h(x) = sum_i f_{i-1} x^i (1-x)^(n-i)
    let mut h = IntPolynomial::zero();
    for (i, &f) in boundary.iter().enumerate() {
        let mut term = IntPolynomial::monomial(BigInt::from(f), i);
        for _ in 0..n - i {
            term = &term * &IntPolynomial::from_i64s(&[1, -1]);
        }
        h = &h + &term;
    }
    let hstar = geometry::hstar_and_gamma(p, guards)?.hstar;
    if h != hstar {
        return Err(Error::IdentityViolation(format!(
            "boundary h-polynomial {h} differs from h* = {hstar}"
        )));
    }
    Ok(Triangulation {
        maximal_faces,
        boundary_f_vector: boundary,
        boundary_h: h.to_i64s(),
        unimodular: true,
    })
}

fn format_face(ring: &ToricRing, face: &[usize]) -> String {
    let names: Vec<String> = face.iter().map(|&v| ring.variables()[v].to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Exact integer determinant by fraction-free elimination.
pub fn determinant(mut rows: Vec<Vec<i64>>) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .drain(..)
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Everything the Gröbner certificate produced for one poset.
#[derive(Clone, Debug)]
pub struct GrobnerData {
    pub ring: ToricRing,
    pub basis: Vec<ToricBinomial>,
    pub order: TermOrder,
}

pub fn grobner_data(p: &Poset) -> Result<GrobnerData> {
    let ring = variables_and_map(p);
    let basis = generate_groebner_candidates(p, &ring)?;
    let order = construct_order(p, &ring)?;
    check_orientation(&ring, &basis, &order)?;
    Ok(GrobnerData { ring, basis, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::naturally_labeled_posets;

    fn var(ring: &ToricRing, labels: &[usize], signs: &[i8]) -> u16 {
        let antichain = Antichain(crate::poset::labels_mask(labels));
        let negatives = labels
            .iter()
            .zip(signs)
            .filter(|(_, &s)| s < 0)
            .fold(0, |m, (&l, _)| m | 1 << (l - 1));
        ring.var(SignedVariable { antichain, negatives })
    }

    #[test]
    fn variable_examples() {
        let chain = variables_and_map(&Poset::chain(2));
        assert_eq!(chain.variables().len(), 5);
        let names: Vec<String> = chain.variables().iter().map(ToString::to_string).collect();
        assert_eq!(names, vec!["x_0", "x_1^-", "x_1^+", "x_2^-", "x_2^+"]);

        let a2 = variables_and_map(&Poset::antichain(2));
        assert_eq!(a2.variables().len(), 9);
        let v = var(&a2, &[1, 2], &[1, -1]);
        assert_eq!(a2.image(v).0, vec![1, -1]);
        assert_eq!(a2.image(a2.origin()).0, vec![0, 0]);
    }

    #[test]
    fn chain_candidates() {
        let p = Poset::chain(2);
        let ring = variables_and_map(&p);
        let g = generate_groebner_candidates(&p, &ring).unwrap();
        let mut text: Vec<String> = g.iter().map(|b| ring.format_binomial(b)).collect();
        text.sort();
        assert_eq!(text, vec!["x_1^-*x_1^+ - x_0*x_0", "x_2^-*x_2^+ - x_0*x_0"]);
    }

    #[test]
    fn antichain_candidates() {
        let p = Poset::antichain(2);
        let ring = variables_and_map(&p);
        let g = generate_groebner_candidates(&p, &ring).unwrap();
        let origin = ring.origin();
        for (e, mu) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let lead = Monomial::new(vec![var(&ring, &[1], &[e]), var(&ring, &[2], &[mu])]);
            let tail = Monomial::new(vec![var(&ring, &[1, 2], &[e, mu]), origin]);
            assert!(g.iter().any(|b| b.lead == lead && b.tail == tail && b.family == Family::IdealPair));
        }
        // x_12^{++} x_12^{--} - x_2^+ x_2^- (drop the clash at 1)
        let lead = Monomial::new(vec![var(&ring, &[1, 2], &[1, 1]), var(&ring, &[1, 2], &[-1, -1])]);
        let tail = Monomial::new(vec![var(&ring, &[2], &[1]), var(&ring, &[2], &[-1])]);
        assert!(g.iter().any(|b| b.lead == lead && b.tail == tail && b.family == Family::SignClash));
    }

    #[test]
    fn order_examples() {
        let p = Poset::antichain(2);
        let ring = variables_and_map(&p);
        let order = construct_order(&p, &ring).unwrap();
        // antichains: {}, {1}, {2}, {1,2}
        let total = &order.antichain_weights[1] + &order.antichain_weights[2]
            - &order.antichain_weights[0]
            - &order.antichain_weights[3];
        assert!(total >= BigRational::one());

        let chain = Poset::chain(2);
        let ring = variables_and_map(&chain);
        let order = construct_order(&chain, &ring).unwrap();
        assert!(order.antichain_weights.iter().all(Zero::is_zero));
        let clash = Monomial::new(vec![var(&ring, &[1], &[1]), var(&ring, &[1], &[-1])]);
        let origin2 = Monomial::new(vec![ring.origin(), ring.origin()]);
        assert_eq!(order.compare(&clash, &origin2), Ordering::Greater);
    }

    #[test]
    fn buchberger_examples() {
        for p in [Poset::chain(2), Poset::antichain(2)] {
            let data = grobner_data(&p).unwrap();
            let report = buchberger_verify(&data.basis, &data.order, &Guards::default()).unwrap();
            assert!(report.passed, "{p:?}: {report:?}");
        }
    }

    #[test]
    fn deleting_a_generator_breaks_the_basis() {
        let data = grobner_data(&Poset::antichain(2)).unwrap();
        let broken = (0..data.basis.len()).any(|k| {
            let mut g = data.basis.clone();
            g.remove(k);
            !buchberger_verify(&g, &data.order, &Guards::default()).unwrap().passed
        });
        assert!(broken);
    }

    #[test]
    fn spair_guard() {
        let data = grobner_data(&Poset::antichain(2)).unwrap();
        let guards = Guards {
            max_spairs: 3,
            ..Guards::default()
        };
        assert!(matches!(
            buchberger_verify(&data.basis, &data.order, &guards),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn standard_monomial_examples() {
        let g = Guards::default();
        for (p, m, expected) in [
            (Poset::chain(2), 1, 5),
            (Poset::chain(2), 2, 13),
            (Poset::antichain(2), 1, 9),
        ] {
            let data = grobner_data(&p).unwrap();
            assert_eq!(
                standard_monomial_count(&data.ring, &data.basis, m).unwrap(),
                BigInt::from(expected)
            );
            assert_eq!(geometry::count_dilation(&p, m, &g).unwrap(), expected);
        }
    }

    #[test]
    fn triangulation_examples() {
        let g = Guards::default();
        let cases = [
            (Poset::chain(2), 4, vec![1, 2, 1]),
            (Poset::antichain(2), 8, vec![1, 6, 1]),
            (Poset::antichain(1), 2, vec![1, 1]),
        ];
        for (p, faces, h) in cases {
            let data = grobner_data(&p).unwrap();
            let t = triangulation_extract(&p, &data.ring, &data.basis, &g).unwrap();
            assert_eq!(t.maximal_faces.len(), faces);
            assert_eq!(t.boundary_h, h);
        }
        let data = grobner_data(&Poset::antichain(2)).unwrap();
        let t = triangulation_extract(&Poset::antichain(2), &data.ring, &data.basis, &g).unwrap();
        assert_eq!(t.boundary_f_vector, vec![1, 8, 8]);
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(vec![vec![1, 0], vec![0, -1]]), -1);
        assert_eq!(determinant(vec![vec![1, 1], vec![1, -1]]), -2);
        assert_eq!(determinant(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(determinant(vec![vec![2, 3], vec![4, 6]]), 0);
    }

    #[test]
    fn grevlex_is_a_total_order_on_degree_two() {
        let ms: Vec<Monomial> = (0..4u16)
            .flat_map(|a| (a..4).map(move |b| Monomial::new(vec![a, b])))
            .collect();
        for a in &ms {
            for b in &ms {
                assert_eq!(grevlex(a, b), grevlex(b, a).reverse());
                assert_eq!(grevlex(a, b) == Ordering::Equal, a == b);
            }
        }
        // x_1 x_1 < x_1 x_2 < x_2 x_2 when x_1 < x_2
        assert_eq!(grevlex(&Monomial(vec![1, 1]), &Monomial(vec![1, 2])), Ordering::Less);
    }

    #[test]
    fn candidates_lie_in_the_ideal_and_have_clean_leads() {
        for n in 0..=4 {
            for p in naturally_labeled_posets(n) {
                let data = grobner_data(&p).unwrap();
                assert!(leading_terms_ok(&data.ring, &data.basis));
                for b in &data.basis {
                    assert_eq!(data.ring.monomial_image(&b.lead), data.ring.monomial_image(&b.tail));
                    if b.family == Family::IdealPair {
                        let card = |m: &Monomial| m.0.iter().map(|&v| data.order.card[v as usize]).sum::<i64>();
                        assert_eq!(card(&b.lead), card(&b.tail));
                    }
                }
            }
        }
    }
}
