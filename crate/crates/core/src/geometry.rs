//! The enriched chain polytope `E_P` and the chain polytope `C_P` as
//! implicit point sets.
//!
//! `C_P` is described by `y >= 0` and `sum_{i in C} y_i <= 1` for every
//! maximal chain `C`. Each closed orthant of `E_P` is a reflected copy of
//! `C_P`, so lattice points of `m E_P` are counted as nonnegative points of
//! `m C_P` weighted by `2^(number of nonzero coordinates)`. The chain
//! description is cross-checked against an exact LP membership oracle that
//! only knows the vertices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp;
use crate::partitions;
use crate::polynomials::{self, IntPolynomial, RatPolynomial};
use crate::poset::{Antichain, Poset};
use crate::Guards;

/// An integer point; coordinate `i` belongs to label `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn origin(n: usize) -> Self {
        LatticePoint(vec![0; n])
    }

    /// `sign(antichain, negatives)`: `+1` on the antichain, flipped to `-1`
    /// on the `negatives` submask.
    pub fn signed_indicator(n: usize, antichain: Antichain, negatives: u32) -> Self {
        LatticePoint(
            (0..n)
                .map(|i| {
                    if antichain.0 >> i & 1 == 0 {
                        0
                    } else if negatives >> i & 1 == 1 {
                        -1
                    } else {
                        1
                    }
                })
                .collect(),
        )
    }

    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn neg(&self) -> Self {
        LatticePoint(self.0.iter().map(|c| -c).collect())
    }
}

/// A closed orthant `{x : x_i * eps_i >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthantSign(pub Vec<i8>);

impl OrthantSign {
    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.0.iter().zip(&p.0).all(|(&e, &x)| e as i64 * x >= 0)
    }

    pub fn all(n: usize) -> Vec<OrthantSign> {
        (0u32..1 << n)
            .map(|bits| OrthantSign((0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()))
            .collect()
    }
}

/// Ehrhart data of `E_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    pub ehrhart: RatPolynomial,
    pub hstar: IntPolynomial,
    pub gamma: Vec<BigInt>,
    pub volume: BigInt,
}

impl EhrhartData {
    pub fn gamma_i64(&self) -> Vec<i64> {
        self.gamma.iter().map(|g| g.to_i64().expect("small gamma")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub volume: u64,
    pub linear_extensions: u64,
    pub reflexive: bool,
}

/// Every signed antichain `(A, negatives ⊆ A)`, in antichain order and
/// then by ascending negative mask. The origin comes first.
pub fn signed_antichains(p: &Poset) -> Vec<(Antichain, u32)> {
    let mut out = Vec::new();
    for a in p.antichains() {
        let mut sub = 0u32;
        loop {
            out.push((a, sub));
            if sub == a.0 {
                break;
            }
            // next submask in increasing order
            sub = (sub.wrapping_sub(a.0)) & a.0;
        }
    }
    out
}

/// `E_P ∩ Z^n`: the origin and every signed antichain indicator.
pub fn lattice_points_ep(p: &Poset) -> Vec<LatticePoint> {
    signed_antichains(p)
        .into_iter()
        .map(|(a, neg)| LatticePoint::signed_indicator(p.n(), a, neg))
        .collect()
}

/// Chain-inequality membership of an integer point in `m C_P`.
pub fn in_dilated_chain_polytope(p: &Poset, y: &[i64], m: i64) -> bool {
    y.iter().all(|&v| v >= 0)
        && p
            .maximal_chains()
            .iter()
            .all(|c| c.iter().map(|&l| y[l - 1]).sum::<i64>() <= m)
}

/// Membership of an integer point in `m E_P`, via its absolute values.
pub fn in_dilated_enriched_polytope(p: &Poset, x: &[i64], m: i64) -> bool {
    let abs: Vec<i64> = x.iter().map(|v| v.abs()).collect();
    in_dilated_chain_polytope(p, &abs, m)
}

/// Chain-inequality membership of a rational point in `C_P`.
pub fn in_chain_polytope(p: &Poset, y: &[BigRational]) -> bool {
    y.iter().all(|v| !v.is_negative())
        && p.maximal_chains().iter().all(|c| {
            c.iter().map(|&l| y[l - 1].clone()).sum::<BigRational>() <= BigRational::one()
        })
}

/// Membership in `C_P` decided as exact LP feasibility of a convex
/// combination of antichain indicators. Independent of the chain
/// inequalities.
pub fn membership_oracle(p: &Poset, point: &[BigRational], guards: &Guards) -> Result<bool> {
    guards.check_n(p.n())?;
    assert_eq!(point.len(), p.n());
    if point.iter().any(|v| v.is_negative()) {
        return Ok(false);
    }
    let antichains = p.antichains();
    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..p.n() {
        let row: Vec<BigRational> = antichains
            .iter()
            .map(|a| if a.0 >> i & 1 == 1 { one.clone() } else { zero.clone() })
            .collect();
        rows.push(row.iter().map(|v| -v).collect());
        rhs.push(-&point[i]);
        rows.push(row);
        rhs.push(point[i].clone());
    }
    rows.push(vec![one.clone(); antichains.len()]);
    rhs.push(one.clone());
    rows.push(vec![-&one; antichains.len()]);
    rhs.push(-&one);
    Ok(lp::feasible_point(&rows, &rhs).is_some())
}

/// `|m E_P ∩ Z^n|`, summing `2^(nonzeros)` over nonnegative points of
/// `m C_P`. The first element's value partitions the work across threads.
pub fn count_dilation(p: &Poset, m: u64, guards: &Guards) -> Result<u64> {
    guards.check_n(p.n())?;
    guards.check_points(m as u128 + 1, p.n())?;
    let n = p.n();
    if n == 0 {
        return Ok(1);
    }
    let order = p.canonicalize().1;
    // position-indexed lists of earlier elements below each element
    let below: Vec<Vec<usize>> = order
        .iter()
        .map(|&l| {
            order
                .iter()
                .enumerate()
                .filter(|(_, &k)| p.less(k, l))
                .map(|(pos, _)| pos)
                .collect()
        })
        .collect();
    let m = m as i64;
    let total: u64 = (0..=m)
        .into_par_iter()
        .map(|first| {
            let mut reach = vec![0i64; n];
            reach[0] = first;
            let weight = if first > 0 { 2 } else { 1 };
            weight * count_from(1, &below, &mut reach, m)
        })
        .sum();
    Ok(total)
}

/// `reach[k]`: largest chain sum ending at the `k`-th element of the
/// linear order.
fn count_from(k: usize, below: &[Vec<usize>], reach: &mut [i64], m: i64) -> u64 {
    if k == below.len() {
        return 1;
    }
    let base = below[k].iter().map(|&j| reach[j]).max().unwrap_or(0);
    let mut total = 0;
    for v in 0..=m - base {
        reach[k] = base + v;
        let weight = if v > 0 { 2 } else { 1 };
        total += weight * count_from(k + 1, below, reach, m);
    }
    total
}

/// Ehrhart polynomial of `E_P`, interpolated from `L(0), ..., L(n)`.
pub fn ehrhart_polynomial(p: &Poset, guards: &Guards) -> Result<RatPolynomial> {
    let counts = dilation_counts(p, guards)?;
    let l = polynomials::interpolate(&counts);
    let n = p.n();
    if l.degree() != Some(n) || !l.leading().is_some_and(Signed::is_positive) {
        return Err(Error::IdentityViolation(format!(
            "Ehrhart polynomial {l} does not have degree {n} with positive leading coefficient"
        )));
    }
    Ok(l)
}

fn dilation_counts(p: &Poset, guards: &Guards) -> Result<Vec<BigInt>> {
    (0..=p.n() as u64)
        .map(|m| count_dilation(p, m, guards).map(BigInt::from))
        .collect()
}

/// h* and γ of `E_P`, with the γ-positivity and left-peak identities
/// asserted.
pub fn hstar_and_gamma(p: &Poset, guards: &Guards) -> Result<EhrhartData> {
    let n = p.n();
    let counts = dilation_counts(p, guards)?;
    let ehrhart = polynomials::interpolate(&counts);
    let hstar = polynomials::hstar_from_counts(&counts, n)?;
    let gamma = polynomials::gamma_expansion(&hstar, n).map_err(|_| {
        Error::IdentityViolation(format!("h* = {hstar} is not palindromic at degree {n}"))
    })?;
    if let Some((index, g)) = gamma.iter().enumerate().find(|(_, g)| g.is_negative()) {
        return Err(Error::GammaNegative {
            index,
            value: g.to_string(),
        });
    }
    let (natural, _) = p.canonicalize();
    let peaks = partitions::peak_polynomials(&natural, guards)?;
    let predicted = peaks.w_left.scale_argument(&BigInt::from(4));
    if (0..gamma.len()).any(|i| gamma[i] != predicted.coeff(i))
        || predicted.degree().unwrap_or(0) >= gamma.len()
    {
        return Err(Error::IdentityViolation(format!(
            "gamma {:?} differs from W_left(4x) = {predicted}",
            gamma.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    let volume = hstar.eval(&BigInt::one());
    Ok(EhrhartData {
        ehrhart,
        hstar,
        gamma,
        volume,
    })
}

/// Normalized volume `h*(1)`, checked against `2^n |L(P)|`, and
/// reflexivity via palindromicity of h* at degree `n`.
pub fn volume_and_reflexivity(p: &Poset, guards: &Guards) -> Result<VolumeReport> {
    let n = p.n();
    let counts = dilation_counts(p, guards)?;
    let hstar = polynomials::hstar_from_counts(&counts, n)?;
    let volume = hstar.eval(&BigInt::one());
    let extensions = p.count_linear_extensions();
    if volume != BigInt::from(extensions) << n {
        return Err(Error::IdentityViolation(format!(
            "volume {volume} != 2^{n} * {extensions}"
        )));
    }
    let reflexive = hstar.is_palindromic_at(n);
    if !reflexive {
        return Err(Error::IdentityViolation(format!(
            "h* = {hstar} is not palindromic, so E_P would not be reflexive"
        )));
    }
    Ok(VolumeReport {
        volume: volume.to_u64().expect("volume fits u64"),
        linear_extensions: extensions,
        reflexive,
    })
}
