//! Enriched and left enriched P-partitions of naturally labeled posets,
//! the bijection between left enriched partitions and lattice points of
//! the dilated enriched chain polytope, and peak statistics of linear
//! extensions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, LatticePoint};
use crate::polynomials::{self, IntPolynomial, RatPolynomial};
use crate::poset::Poset;
use crate::Guards;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    /// Values in `{0, ±1, ..., ±m}`; equal absolute values force `f(y) >= 0`.
    Left,
    /// Values in `{±1, ..., ±m}`; equal absolute values force `f(y) > 0`.
    Enriched,
}

/// `f(i)` is `values[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftEnrichedPartition {
    pub values: Vec<i64>,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnrichedPartition {
    pub values: Vec<i64>,
    pub m: i64,
}

impl LeftEnrichedPartition {
    pub fn is_valid(&self, p: &Poset) -> bool {
        satisfies(p, &self.values, self.m, PartitionKind::Left)
    }
}

impl EnrichedPartition {
    pub fn is_valid(&self, p: &Poset) -> bool {
        satisfies(p, &self.values, self.m, PartitionKind::Enriched)
    }
}

fn satisfies(p: &Poset, f: &[i64], m: i64, kind: PartitionKind) -> bool {
    let in_range = f.iter().all(|&v| {
        v.abs() <= m && (kind == PartitionKind::Left || v != 0)
    });
    in_range
        && (1..=p.n()).all(|y| {
            (1..=p.n())
                .filter(|&x| p.less(x, y))
                .all(|x| pair_ok(f[x - 1], f[y - 1], kind))
        })
}

/// The two conditions for `x <_P y`.
fn pair_ok(fx: i64, fy: i64, kind: PartitionKind) -> bool {
    if fx.abs() > fy.abs() {
        return false;
    }
    if fx.abs() == fy.abs() {
        return match kind {
            PartitionKind::Left => fy >= 0,
            PartitionKind::Enriched => fy > 0,
        };
    }
    true
}

fn require_natural(p: &Poset) -> Result<()> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    Ok(())
}

fn candidates(m: i64, kind: PartitionKind) -> Vec<i64> {
    let mut v = Vec::with_capacity(2 * m as usize + 1);
    if kind == PartitionKind::Left {
        v.push(0);
    }
    for a in 1..=m {
        v.push(a);
        v.push(-a);
    }
    v
}

struct Search<'a> {
    p: &'a Poset,
    kind: PartitionKind,
    values: Vec<i64>,
}

impl Search<'_> {
    /// Labels are visited in increasing order, a linear extension for a
    /// naturally labeled poset, so every lower element is already fixed.
    fn fits(&self, label: usize, v: i64) -> bool {
        (1..label)
            .filter(|&x| self.p.less(x, label))
            .all(|x| pair_ok(self.values[x - 1], v, self.kind))
    }

    fn walk(&mut self, label: usize, m: i64, visit: &mut dyn FnMut(&[i64])) {
        if label > self.p.n() {
            visit(&self.values);
            return;
        }
        for v in candidates(m, self.kind) {
            if self.fits(label, v) {
                self.values[label - 1] = v;
                self.walk(label + 1, m, visit);
            }
        }
        self.values[label - 1] = 0;
    }
}

fn check_box(p: &Poset, m: u64, guards: &Guards) -> Result<()> {
    require_natural(p)?;
    if m == 0 {
        return Err(Error::InvalidPartition("the bound m must be positive".into()));
    }
    guards.check_n(p.n())?;
    guards.check_points(2 * m as u128 + 1, p.n())
}

/// Every partition of the given kind with values bounded by `m`, in
/// lexicographic order of the candidate sequence `0, 1, -1, 2, -2, ...`.
pub fn enumerate_partitions(
    p: &Poset,
    m: u64,
    kind: PartitionKind,
    guards: &Guards,
) -> Result<Vec<Vec<i64>>> {
    check_box(p, m, guards)?;
    let mut out = Vec::new();
    let mut search = Search {
        p,
        kind,
        values: vec![0; p.n()],
    };
    search.walk(1, m as i64, &mut |f| out.push(f.to_vec()));
    Ok(out)
}

/// Number of partitions, split across threads by the value at label 1.
pub fn count_partitions(p: &Poset, m: u64, kind: PartitionKind, guards: &Guards) -> Result<u64> {
    check_box(p, m, guards)?;
    if p.n() == 0 {
        return Ok(1);
    }
    let m = m as i64;
    Ok(candidates(m, kind)
        .into_par_iter()
        .map(|first| {
            let mut search = Search {
                p,
                kind,
                values: vec![0; p.n()],
            };
            search.values[0] = first;
            let mut count = 0u64;
            search.walk(2, m, &mut |_| count += 1);
            count
        })
        .sum())
}

/// The (left) enriched order polynomial, interpolated from the counts at
/// `m = 1, ..., n + 1`.
pub fn order_polynomial(p: &Poset, kind: PartitionKind, guards: &Guards) -> Result<RatPolynomial> {
    let n = p.n();
    let nodes: Vec<i64> = (1..=n as i64 + 1).collect();
    let values = nodes
        .iter()
        .map(|&m| count_partitions(p, m as u64, kind, guards).map(|c| BigRational::from_integer(c.into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(polynomials::interpolate_at(&nodes, &values))
}

/// Lattice point of `m E_P` attached to a left enriched partition.
pub fn phi_map(p: &Poset, f: &LeftEnrichedPartition) -> Result<LatticePoint> {
    require_natural(p)?;
    if f.values.len() != p.n() || !f.is_valid(p) {
        return Err(Error::InvalidPartition(format!("{:?}", f.values)));
    }
    let x = (1..=p.n())
        .map(|i| {
            let fi = f.values[i - 1];
            if p.is_minimal(i) {
                return fi;
            }
            let gap = p
                .lower_covers(i)
                .iter()
                .map(|&j| fi.abs() - f.values[j - 1].abs())
                .min()
                .expect("non-minimal element has a lower cover");
            if fi >= 0 {
                gap
            } else {
                -gap
            }
        })
        .collect();
    Ok(LatticePoint(x))
}

/// Left enriched partition attached to a lattice point of `m E_P`: the
/// absolute value at `i` is the heaviest chain sum of `|x|` ending at `i`,
/// the sign that of `x_i`.
pub fn psi_map(p: &Poset, x: &LatticePoint, m: i64) -> Result<LeftEnrichedPartition> {
    require_natural(p)?;
    if x.0.len() != p.n() || !geometry::in_dilated_enriched_polytope(p, &x.0, m) {
        return Err(Error::PointOutsidePolytope(x.0.clone()));
    }
    let mut reach = vec![0i64; p.n()];
    for i in 1..=p.n() {
        let below = (1..i)
            .filter(|&j| p.less(j, i))
            .map(|j| reach[j - 1])
            .max()
            .unwrap_or(0);
        reach[i - 1] = below + x.0[i - 1].abs();
    }
    let values = reach
        .iter()
        .zip(&x.0)
        .map(|(&r, &xi)| if xi >= 0 { r } else { -r })
        .collect();
    Ok(LeftEnrichedPartition { values, m })
}

/// Peak statistics of a permutation of `1..=n` (one-line notation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeakData {
    pub pk: usize,
    pub pk_left: usize,
    pub des: usize,
}

/// Positions `i` (1-based) with `w_{i-1} < w_i > w_{i+1}`, `w_0 = 0`,
/// for `1 <= i <= n - 1`.
pub fn left_peak_positions(w: &[usize]) -> Vec<usize> {
    (1..w.len())
        .filter(|&i| {
            let prev = if i == 1 { 0 } else { w[i - 2] };
            prev < w[i - 1] && w[i - 1] > w[i]
        })
        .collect()
}

pub fn peak_data(w: &[usize]) -> PeakData {
    let left = left_peak_positions(w);
    PeakData {
        pk: left.iter().filter(|&&i| i >= 2).count(),
        pk_left: left.len(),
        des: w.windows(2).filter(|p| p[0] > p[1]).count(),
    }
}

/// Peak, left peak and descent generating polynomials over `L(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakPolynomials {
    pub w: IntPolynomial,
    pub w_left: IntPolynomial,
    pub w_des: IntPolynomial,
}

pub fn peak_polynomials(p: &Poset, guards: &Guards) -> Result<PeakPolynomials> {
    let n = p.n();
    let mut w = vec![BigInt::zero(); n + 1];
    let mut w_left = w.clone();
    let mut w_des = w.clone();
    for ext in p.linear_extensions(guards.max_extensions_n)? {
        let d = peak_data(&ext);
        w[d.pk] += 1;
        w_left[d.pk_left] += 1;
        w_des[d.des] += 1;
    }
    Ok(PeakPolynomials {
        w: IntPolynomial::new(w),
        w_left: IntPolynomial::new(w_left),
        w_des: IntPolynomial::new(w_des),
    })
}

/// Both sides of
/// `sum_m Ω_left(m) x^m = (1+x)^n / (1-x)^(n+1) * W_left(4x / (1+x)^2)`
/// up to `x^truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub holds: bool,
}

pub fn series_identity(p: &Poset, truncation: usize, guards: &Guards) -> Result<SeriesComparison> {
    require_natural(p)?;
    let n = p.n();
    let omega = order_polynomial(p, PartitionKind::Left, guards)?;
    let lhs: Vec<BigRational> = (0..=truncation as i64).map(|m| omega.eval_int(m)).collect();

    let w_left = peak_polynomials(p, guards)?.w_left;
    let numerator = w_left
        .coeffs()
        .iter()
        .enumerate()
        .fold(IntPolynomial::zero(), |acc, (i, w)| {
            let term = IntPolynomial::monomial(w * BigInt::from(4).pow(i as u32), i);
            &acc + &(&term * &IntPolynomial::one_plus_x_pow(n - 2 * i))
        });
    let rhs: Vec<BigRational> = polynomials::series_from_hstar(&numerator, n, truncation + 1)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    Ok(SeriesComparison {
        holds: lhs == rhs,
        lhs: lhs.iter().map(ToString::to_string).collect(),
        rhs: rhs.iter().map(ToString::to_string).collect(),
    })
}

pub fn series_identity_check(p: &Poset, truncation: usize, guards: &Guards) -> Result<bool> {
    series_identity(p, truncation, guards).map(|s| s.holds)
}

/// Measured verdict on `Ω_left(m) = (Ω'(m+1) - Ω'(m)) / 2`, with both
/// polynomials computed independently by enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaRelation {
    pub left: String,
    pub enriched: String,
    pub half_difference: String,
    pub holds: bool,
}

pub fn omega_relation(p: &Poset, guards: &Guards) -> Result<OmegaRelation> {
    let left = order_polynomial(p, PartitionKind::Left, guards)?;
    let enriched = order_polynomial(p, PartitionKind::Enriched, guards)?;
    // Ω'(m+1) as a polynomial in m: interpolate its shifted samples.
    let n = p.n();
    let nodes: Vec<i64> = (0..=n as i64).collect();
    let half = BigRational::new(1.into(), 2.into());
    let samples: Vec<BigRational> = nodes
        .iter()
        .map(|&m| (enriched.eval_int(m + 1) - enriched.eval_int(m)) * &half)
        .collect();
    let half_difference = polynomials::interpolate_at(&nodes, &samples);
    Ok(OmegaRelation {
        holds: half_difference == left,
        left: left.to_string(),
        enriched: enriched.to_string(),
        half_difference: half_difference.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::naturally_labeled_posets;
    use std::collections::HashSet;

    fn g() -> Guards {
        Guards::default()
    }

    fn v_poset() -> Poset {
        Poset::from_covers(3, &[(1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let one = Poset::antichain(1);
        assert_eq!(enumerate_partitions(&one, 1, PartitionKind::Left, &g()).unwrap().len(), 3);
        assert_eq!(enumerate_partitions(&one, 1, PartitionKind::Enriched, &g()).unwrap().len(), 2);
        let chain = Poset::chain(2);
        let parts = enumerate_partitions(&chain, 1, PartitionKind::Left, &g()).unwrap();
        let set: HashSet<Vec<i64>> = parts.into_iter().collect();
        let expected: HashSet<Vec<i64>> =
            [vec![0, 0], vec![0, 1], vec![1, 1], vec![-1, 1], vec![0, -1]].into_iter().collect();
        assert_eq!(set, expected);
    }

    #[test]
    fn enumeration_requires_natural_labels() {
        let p = Poset::from_covers(2, &[(2, 1)]).unwrap();
        assert_eq!(
            enumerate_partitions(&p, 1, PartitionKind::Left, &g()),
            Err(Error::NotNaturallyLabeled)
        );
    }

    #[test]
    fn counts_match_enumeration() {
        for p in naturally_labeled_posets(4) {
            for kind in [PartitionKind::Left, PartitionKind::Enriched] {
                let listed = enumerate_partitions(&p, 2, kind, &g()).unwrap();
                assert_eq!(listed.len() as u64, count_partitions(&p, 2, kind, &g()).unwrap());
                assert!(listed.iter().all(|f| satisfies(&p, f, 2, kind)));
            }
        }
    }

    #[test]
    fn enumeration_is_complete() {
        // brute force over the whole box
        for p in naturally_labeled_posets(3) {
            for kind in [PartitionKind::Left, PartitionKind::Enriched] {
                let m = 2i64;
                let side = 2 * m + 1;
                let brute = (0..side.pow(3))
                    .filter(|&code| {
                        let f: Vec<i64> = (0..3).map(|k| code / side.pow(k) % side - m).collect();
                        satisfies(&p, &f, m, kind)
                    })
                    .count() as u64;
                assert_eq!(brute, count_partitions(&p, m as u64, kind, &g()).unwrap());
            }
        }
    }

    #[test]
    fn order_polynomial_examples() {
        assert_eq!(
            order_polynomial(&Poset::antichain(1), PartitionKind::Left, &g()).unwrap(),
            RatPolynomial::from_i64s(&[1, 2])
        );
        let chain = order_polynomial(&Poset::chain(2), PartitionKind::Left, &g()).unwrap();
        assert_eq!(chain, RatPolynomial::from_i64s(&[1, 2, 2]));
        assert_eq!(chain, geometry::ehrhart_polynomial(&Poset::chain(2), &g()).unwrap());
        assert_eq!(
            order_polynomial(&Poset::antichain(2), PartitionKind::Enriched, &g()).unwrap(),
            RatPolynomial::from_i64s(&[0, 0, 4])
        );
    }

    #[test]
    fn phi_examples() {
        let chain = Poset::chain(2);
        let f = |v: Vec<i64>| LeftEnrichedPartition { values: v, m: 1 };
        assert_eq!(phi_map(&chain, &f(vec![0, -1])).unwrap(), LatticePoint(vec![0, -1]));
        assert_eq!(phi_map(&chain, &f(vec![1, 1])).unwrap(), LatticePoint(vec![1, 0]));
        assert_eq!(phi_map(&v_poset(), &f(vec![0, 0, 0])).unwrap(), LatticePoint(vec![0, 0, 0]));
        assert!(matches!(
            phi_map(&chain, &f(vec![1, -1])),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn psi_examples() {
        let chain = Poset::chain(2);
        assert_eq!(
            psi_map(&chain, &LatticePoint(vec![0, -1]), 1).unwrap().values,
            vec![0, -1]
        );
        assert_eq!(psi_map(&chain, &LatticePoint(vec![1, 0]), 1).unwrap().values, vec![1, 1]);
        assert_eq!(psi_map(&v_poset(), &LatticePoint(vec![0; 3]), 1).unwrap().values, vec![0; 3]);
        assert!(matches!(
            psi_map(&chain, &LatticePoint(vec![1, 1]), 1),
            Err(Error::PointOutsidePolytope(_))
        ));
    }

    #[test]
    fn peak_examples() {
        let a3 = peak_polynomials(&Poset::antichain(3), &g()).unwrap();
        assert_eq!(a3.w_left, IntPolynomial::from_i64s(&[1, 5]));
        assert_eq!(a3.w, IntPolynomial::from_i64s(&[4, 2]));
        assert_eq!(a3.w_des, IntPolynomial::from_i64s(&[1, 4, 1]));
        let v = peak_polynomials(&v_poset(), &g()).unwrap();
        assert_eq!(v.w_left, IntPolynomial::from_i64s(&[1, 1]));
        assert_eq!(v.w_des, v.w_left);
        let c = peak_polynomials(&Poset::chain(4), &g()).unwrap();
        assert_eq!(c.w, IntPolynomial::one());
        assert_eq!(c.w_left, IntPolynomial::one());
        assert_eq!(c.w_des, IntPolynomial::one());
    }

    #[test]
    fn peak_data_convention() {
        // 213: left peak at 1 only because w_0 = 0
        assert_eq!(peak_data(&[2, 1, 3]), PeakData { pk: 0, pk_left: 1, des: 1 });
        assert_eq!(left_peak_positions(&[3, 2, 4, 1, 5, 7, 6, 8, 9]), vec![1, 3, 6]);
    }

    #[test]
    fn series_examples() {
        let s = series_identity(&Poset::antichain(1), 5, &g()).unwrap();
        assert!(s.holds);
        assert_eq!(s.lhs, vec!["1", "3", "5", "7", "9", "11"]);
        assert!(series_identity_check(&Poset::chain(2), 4, &g()).unwrap());
        let s = series_identity(&Poset::antichain(2), 4, &g()).unwrap();
        assert!(s.holds);
        assert_eq!(s.rhs, vec!["1", "9", "25", "49", "81"]);
    }

    #[test]
    fn omega_relation_on_a_point() {
        let r = omega_relation(&Poset::antichain(1), &g()).unwrap();
        assert_eq!(r.left, "1 + 2m");
        assert_eq!(r.enriched, "2m");
        assert_eq!(r.half_difference, "1");
        assert!(!r.holds);
    }

    #[test]
    fn bijection_roundtrip_small() {
        for n in 0..=4 {
            for p in naturally_labeled_posets(n) {
                for m in 1..=3i64 {
                    let parts = enumerate_partitions(&p, m as u64, PartitionKind::Left, &g()).unwrap();
                    let mut images = HashSet::new();
                    for values in parts.iter() {
                        let f = LeftEnrichedPartition { values: values.clone(), m };
                        let x = phi_map(&p, &f).unwrap();
                        assert!(geometry::in_dilated_enriched_polytope(&p, &x.0, m));
                        assert_eq!(psi_map(&p, &x, m).unwrap(), f);
                        images.insert(x);
                    }
                    assert_eq!(images.len(), parts.len());
                    assert_eq!(
                        images.len() as u64,
                        geometry::count_dilation(&p, m as u64, &g()).unwrap()
                    );
                }
            }
        }
    }
}
