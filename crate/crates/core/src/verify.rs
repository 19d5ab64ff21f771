//! Runs every identity on a poset and collects one verdict per column.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma_complex;
use crate::geometry;
use crate::partitions::{self, PartitionKind};
use crate::polynomials::kruskal_katona_check;
use crate::poset::{naturally_labeled_posets, Poset};
use crate::toric;
use crate::Guards;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// An alarm-class error fired while computing the check.
    Alarm(String),
    Skipped(String),
    NotApplicable,
}

impl Verdict {
    pub fn is_alarm(&self) -> bool {
        matches!(self, Verdict::Fail(_) | Verdict::Alarm(_))
    }

    fn from_bool(ok: bool, detail: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(detail())
        }
    }

    fn from_result(r: Result<Verdict>) -> Verdict {
        match r {
            Ok(v) => v,
            Err(e @ Error::SizeLimit { .. }) => Verdict::Skipped(e.to_string()),
            Err(e) if e.is_alarm() => Verdict::Alarm(e.to_string()),
            Err(e) => Verdict::Fail(e.to_string()),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(m) => write!(f, "fail: {m}"),
            Verdict::Alarm(m) => write!(f, "alarm: {m}"),
            Verdict::Skipped(m) => write!(f, "skipped: {m}"),
            Verdict::NotApplicable => write!(f, "n/a"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Dilations `1..=max_m` compared against partition counts.
    pub max_m: u64,
    /// Series terms compared, `x^0..=x^truncation`.
    pub truncation: usize,
    pub guards: Guards,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_m: 4,
            truncation: 8,
            guards: Guards::default(),
        }
    }
}

/// The Ω relation is measured, not asserted; its row reports what it found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaVerdict {
    pub holds: bool,
    pub left: String,
    pub enriched: String,
    pub half_difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
    pub lattice_points_equal_partitions: Verdict,
    pub gamma_equals_left_peaks: Verdict,
    pub volume: Verdict,
    pub series_identity: Verdict,
    pub groebner_certificate: Verdict,
    pub triangulation: Verdict,
    pub complex_f_equals_gamma: Verdict,
    pub kruskal_katona: Verdict,
    pub narrow_left_peaks_equal_descents: Verdict,
    pub omega_relation: Option<OmegaVerdict>,
}

impl VerdictRow {
    pub const COLUMNS: [&'static str; 11] = [
        "n",
        "covers",
        "lattice_points_equal_partitions",
        "gamma_equals_left_peaks",
        "volume",
        "series_identity",
        "groebner_certificate",
        "triangulation",
        "complex_f_equals_gamma",
        "kruskal_katona",
        "narrow_left_peaks_equal_descents",
    ];

    pub fn verdicts(&self) -> [&Verdict; 9] {
        [
            &self.lattice_points_equal_partitions,
            &self.gamma_equals_left_peaks,
            &self.volume,
            &self.series_identity,
            &self.groebner_certificate,
            &self.triangulation,
            &self.complex_f_equals_gamma,
            &self.kruskal_katona,
            &self.narrow_left_peaks_equal_descents,
        ]
    }

    pub fn has_alarm(&self) -> bool {
        self.verdicts().iter().any(|v| v.is_alarm())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerdictRow>,
    pub alarms: usize,
    pub omega_relation_failures: usize,
}

impl VerifyReport {
    fn new(rows: Vec<VerdictRow>) -> Self {
        VerifyReport {
            alarms: rows.iter().filter(|r| r.has_alarm()).count(),
            omega_relation_failures: rows
                .iter()
                .filter(|r| r.omega_relation.as_ref().is_some_and(|o| !o.holds))
                .count(),
            rows,
        }
    }
}

/// Every naturally labeled poset with at most `max_n` elements.
pub fn verify_all(max_n: usize, config: &VerifyConfig) -> Result<VerifyReport> {
    config.guards.check_n(max_n)?;
    let posets: Vec<Poset> = (1..=max_n).flat_map(naturally_labeled_posets).collect();
    let rows = posets.par_iter().map(|p| verify_poset(p, config)).collect();
    Ok(VerifyReport::new(rows))
}

/// A single-row report.
pub fn verify_one(p: &Poset, config: &VerifyConfig) -> Result<VerifyReport> {
    config.guards.check_n(p.n())?;
    Ok(VerifyReport::new(vec![verify_poset(p, config)]))
}

pub fn verify_poset(p: &Poset, config: &VerifyConfig) -> VerdictRow {
    let g = &config.guards;
    let (natural, _) = p.canonicalize();

    let lattice_points_equal_partitions = Verdict::from_result((|| {
        for m in 1..=config.max_m {
            let points = geometry::count_dilation(p, m, g)?;
            let parts = partitions::count_partitions(&natural, m, PartitionKind::Left, g)?;
            if points != parts {
                return Ok(Verdict::Fail(format!("m = {m}: {points} points, {parts} partitions")));
            }
        }
        Ok(Verdict::Pass)
    })());

    let gamma_equals_left_peaks =
        Verdict::from_result(geometry::hstar_and_gamma(p, g).map(|_| Verdict::Pass));
    let volume = Verdict::from_result(geometry::volume_and_reflexivity(p, g).map(|_| Verdict::Pass));
    let series_identity = Verdict::from_result(
        partitions::series_identity(&natural, config.truncation, g)
            .map(|s| Verdict::from_bool(s.holds, || format!("{:?} vs {:?}", s.lhs, s.rhs))),
    );

    let grobner = toric::grobner_data(p);
    let groebner_certificate = Verdict::from_result((|| {
        let data = grobner.clone()?;
        let report = toric::buchberger_verify(&data.basis, &data.order, g)?;
        if !report.passed {
            return Ok(Verdict::Fail(format!("{} S-pairs do not reduce to zero", report.failures)));
        }
        let complex = toric::InitialComplex::new(&data.ring, &data.basis)?;
        let faces = complex.face_counts();
        for m in 0..=3 {
            let standard = toric::InitialComplex::standard_monomial_count(&faces, m);
            let points = geometry::count_dilation(p, m, g)?;
            if standard != BigInt::from(points) {
                return Ok(Verdict::Fail(format!("m = {m}: {standard} standard monomials, {points} points")));
            }
        }
        Ok(Verdict::Pass)
    })());
    let triangulation = Verdict::from_result((|| {
        let data = grobner.clone()?;
        toric::triangulation_extract(p, &data.ring, &data.basis, g)?;
        Ok(Verdict::Pass)
    })());

    let report = gamma_complex::complex_report(&natural, g);
    let complex_f_equals_gamma = Verdict::from_result(report.clone().map(|r| {
        Verdict::from_bool(r.identity && r.isomorphism && r.lower_ideal, || {
            format!("f = {:?}, W_left(4x) = {:?}, isomorphism {}, lower ideal {}", r.f_vector, r.w_left_4x, r.isomorphism, r.lower_ideal)
        })
    }));
    let kruskal_katona = Verdict::from_result(report.map(|r| {
        Verdict::from_bool(kruskal_katona_check(&r.f_vector), || format!("f = {:?}", r.f_vector))
    }));

    let narrow_left_peaks_equal_descents = if p.predicates().narrow {
        Verdict::from_result(partitions::peak_polynomials(&natural, g).map(|w| {
            Verdict::from_bool(w.w_left == w.w_des, || format!("W_left = {}, W_des = {}", w.w_left, w.w_des))
        }))
    } else {
        Verdict::NotApplicable
    };

    let omega_relation = partitions::omega_relation(&natural, g).ok().map(|o| OmegaVerdict {
        holds: o.holds,
        left: o.left,
        enriched: o.enriched,
        half_difference: o.half_difference,
    });

    VerdictRow {
        n: p.n(),
        covers: p.cover_relations(),
        lattice_points_equal_partitions,
        gamma_equals_left_peaks,
        volume,
        series_identity,
        groebner_certificate,
        triangulation,
        complex_f_equals_gamma,
        kruskal_katona,
        narrow_left_peaks_equal_descents,
        omega_relation,
    }
}
