use std::path::Path;

use enriched_chain::gamma_complex;
use enriched_chain::geometry;
use enriched_chain::partitions::{self, PartitionKind};
use enriched_chain::polynomials::polynomial_properties;
use enriched_chain::toric;
use enriched_chain::verify::{self, VerifyConfig};
use enriched_chain::{IntPolynomial, Poset, RatPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::{input, CliError, Command, Config};

type Outcome = Result<(Value, Option<CliError>), CliError>;

fn read_poset(path: &Path) -> Result<Poset, CliError> {
    let text = std::fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.display().to_string(),
        err,
    })?;
    input::parse_poset(&path.display().to_string(), &text)
}

fn int(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn rat(v: &BigRational) -> Value {
    if v.is_integer() {
        int(&v.to_integer())
    } else {
        Value::String(v.to_string())
    }
}

/// γ-vector without trailing zeros.
fn gamma(g: &[BigInt]) -> Value {
    let len = g.iter().rposition(|c| c.sign() != num_bigint::Sign::NoSign).map_or(1, |k| k + 1);
    Value::Array(g[..len.min(g.len())].iter().map(int).collect())
}

fn int_poly(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

fn rat_poly(p: &RatPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(rat).collect())
}

/// Partitions and peak statistics need natural labels; other labelings are
/// relabeled along their first linear extension, which is reported.
fn natural(p: &Poset) -> (Poset, Option<Vec<usize>>) {
    let (q, ext) = p.canonicalize();
    let relabeled = (!p.is_naturally_labeled()).then_some(ext);
    (q, relabeled)
}

fn with_relabeling(mut value: Value, relabeling: Option<Vec<usize>>) -> Value {
    if let (Some(ext), Value::Object(map)) = (relabeling, &mut value) {
        map.insert("relabeled_along".into(), json!(ext));
    }
    value
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn run(command: &Command, config: &Config) -> Outcome {
    let g = &config.guards;
    match command {
        Command::Antichains { input } => {
            let p = read_poset(input)?;
            let list: Vec<Vec<usize>> = p.antichains().iter().map(|a| a.labels()).collect();
            Ok((json!({"count": list.len(), "antichains": list}), None))
        }
        Command::Extensions { input } => {
            let p = read_poset(input)?;
            let list = p.linear_extensions(g.max_extensions_n)?;
            Ok((json!({"count": list.len(), "extensions": list}), None))
        }
        Command::Ehrhart { input } => {
            let p = read_poset(input)?;
            let data = geometry::hstar_and_gamma(&p, g)?;
            Ok((
                json!({
                    "L": rat_poly(&data.ehrhart),
                    "hstar": int_poly(&data.hstar),
                    "gamma": gamma(&data.gamma),
                    "volume": int(&data.volume),
                }),
                None,
            ))
        }
        Command::Hstar { input } => {
            let p = read_poset(input)?;
            let data = geometry::hstar_and_gamma(&p, g)?;
            let volume = geometry::volume_and_reflexivity(&p, g)?;
            let props = polynomial_properties(&data.hstar);
            Ok((
                json!({
                    "hstar": int_poly(&data.hstar),
                    "polynomial": data.hstar.to_string(),
                    "properties": props,
                    "reflexive": volume.reflexive,
                    "volume": volume.volume,
                    "linear_extensions": volume.linear_extensions,
                }),
                None,
            ))
        }
        Command::Gamma { input } => {
            let p = read_poset(input)?;
            let data = geometry::hstar_and_gamma(&p, g)?;
            let (q, relabeling) = natural(&p);
            let w_left = partitions::peak_polynomials(&q, g)?.w_left;
            let value = json!({
                "gamma": gamma(&data.gamma),
                "w_left": int_poly(&w_left),
                "w_left_4x": int_poly(&w_left.scale_argument(&BigInt::from(4))),
                "identity": "pass",
            });
            Ok((with_relabeling(value, relabeling), None))
        }
        Command::Partitions { input } => {
            let p = read_poset(input)?;
            let (q, relabeling) = natural(&p);
            let mut counts = Vec::new();
            for m in 1..=config.max_m {
                counts.push(json!({
                    "m": m,
                    "left": partitions::count_partitions(&q, m, PartitionKind::Left, g)?,
                    "enriched": partitions::count_partitions(&q, m, PartitionKind::Enriched, g)?,
                    "lattice_points": geometry::count_dilation(&q, m, g)?,
                }));
            }
            let left = partitions::order_polynomial(&q, PartitionKind::Left, g)?;
            let enriched = partitions::order_polynomial(&q, PartitionKind::Enriched, g)?;
            let relation = partitions::omega_relation(&q, g)?;
            let value = json!({
                "counts": counts,
                "left_order_polynomial": rat_poly(&left),
                "enriched_order_polynomial": rat_poly(&enriched),
                "omega_relation": relation,
            });
            Ok((with_relabeling(value, relabeling), None))
        }
        Command::Peaks { input } => {
            let p = read_poset(input)?;
            let (q, relabeling) = natural(&p);
            let w = partitions::peak_polynomials(&q, g)?;
            let series = partitions::series_identity(&q, config.truncation, g)?;
            let narrow = q.predicates().narrow;
            let failure = (!series.holds).then(|| CliError::CheckFailed("series identity fails".into()));
            let value = json!({
                "w": int_poly(&w.w),
                "w_left": int_poly(&w.w_left),
                "w_des": int_poly(&w.w_des),
                "narrow": narrow,
                "narrow_identity": if narrow { verdict(w.w_left == w.w_des) } else { "n/a" },
                "series_identity": verdict(series.holds),
                "series": series,
            });
            Ok((with_relabeling(value, relabeling), failure))
        }
        Command::Grobner { input } => {
            let p = read_poset(input)?;
            let data = toric::grobner_data(&p)?;
            let report = toric::buchberger_verify(&data.basis, &data.order, g)?;
            let complex = toric::InitialComplex::new(&data.ring, &data.basis)?;
            let faces = complex.face_counts();
            let mut checks = Vec::new();
            let mut hilbert_ok = true;
            for m in 0..=config.max_m {
                let standard = toric::InitialComplex::standard_monomial_count(&faces, m);
                let points = geometry::count_dilation(&p, m, g)?;
                let ok = standard == BigInt::from(points);
                hilbert_ok &= ok;
                checks.push(json!({"m": m, "standard_monomials": int(&standard), "lattice_points": points, "pass": ok}));
            }
            let antichains = p.antichains();
            let weights: Vec<Value> = antichains
                .iter()
                .zip(&data.order.antichain_weights)
                .map(|(a, w)| json!({"antichain": a.labels(), "weight": rat(w)}))
                .collect();
            let failure = if !report.passed {
                Some(CliError::CheckFailed(format!("{} S-pairs do not reduce to zero", report.failures)))
            } else if !hilbert_ok {
                Some(CliError::CheckFailed("standard monomial counts differ from lattice point counts".into()))
            } else {
                None
            };
            Ok((
                json!({
                    "variables": data.ring.variables().len(),
                    "basis_size": data.basis.len(),
                    "leading_terms_squarefree_quadratic": toric::leading_terms_ok(&data.ring, &data.basis),
                    "buchberger": report,
                    "hilbert_checks": checks,
                    "weights": weights,
                    "basis": data.basis.iter().map(|b| data.ring.format_binomial(b)).collect::<Vec<_>>(),
                }),
                failure,
            ))
        }
        Command::Triangulation { input } => {
            let p = read_poset(input)?;
            let data = toric::grobner_data(&p)?;
            let t = toric::triangulation_extract(&p, &data.ring, &data.basis, g)?;
            let names = |face: &Vec<usize>| -> Vec<String> {
                face.iter().map(|&v| data.ring.variables()[v].to_string()).collect()
            };
            Ok((
                json!({
                    "maximal_faces": t.maximal_faces.len(),
                    "unimodular": t.unimodular,
                    "boundary_f_vector": t.boundary_f_vector,
                    "boundary_h": t.boundary_h,
                    "faces": t.maximal_faces.iter().map(names).collect::<Vec<_>>(),
                }),
                None,
            ))
        }
        Command::Complex { input } => {
            let p = read_poset(input)?;
            let (q, relabeling) = natural(&p);
            let report = gamma_complex::complex_report(&q, g)?;
            let complex = gamma_complex::build_complex_unchecked(&q, g)?;
            let failure = (!report.identity).then(|| {
                CliError::CheckFailed(format!(
                    "f = {:?} differs from W_left(4x) = {:?}",
                    report.f_vector, report.w_left_4x
                ))
            });
            let value = json!({
                "f": report.f_vector,
                "identity": verdict(report.identity),
                "kruskal_katona": verdict(report.kruskal_katona),
                "isomorphism": verdict(report.isomorphism),
                "lower_ideal": verdict(report.lower_ideal),
                "vertices": complex.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "edges": complex
                    .edges
                    .iter()
                    .map(|&(a, b)| [complex.vertices[a].to_string(), complex.vertices[b].to_string()])
                    .collect::<Vec<_>>(),
            });
            Ok((with_relabeling(value, relabeling), failure))
        }
        Command::VerifyAll { poset } => {
            let vconfig = VerifyConfig {
                max_m: config.max_m,
                truncation: config.truncation,
                guards: config.guards,
            };
            let report = match (poset, config.max_n) {
                (Some(path), _) => verify::verify_one(&read_poset(path)?, &vconfig)?,
                (None, Some(n)) => verify::verify_all(n, &vconfig)?,
                (None, None) => return Err(CliError::Usage("verify-all needs --max-n or --poset".into())),
            };
            let failure = (report.alarms > 0)
                .then(|| CliError::CheckFailed(format!("{} posets raised alarms", report.alarms)));
            Ok((serde_json::to_value(&report).expect("report serializes"), failure))
        }
    }
}
