use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use monotone_core::analysis::{acin_disentangling_probe, monogamy_check, MonogamyOptions, MonogamyReport, Verdict};
use monotone_core::measures::MeasureId;
use monotone_core::states::{make_omega, make_phi, make_w, AcinParams, PhiParams, PhiRegime, PureState, State};
use serde::Serialize;

use super::{roof_options, to_json, Outcome};
use crate::args::{Cli, Family};
use crate::error::{LabError, Result};
use crate::numfmt::sig9;
use crate::statefile::read_state;

const CSV_HEADER: [&str; 8] = [
    "family",
    "measure",
    "e_a_bc",
    "e_ab",
    "e_ac",
    "e_ac_npt_proxy",
    "disentangling_gap",
    "verdict",
];

#[derive(Serialize)]
struct AcinSummary {
    condition_holds: bool,
    gap_closed: bool,
    agrees: bool,
}

#[derive(Serialize)]
struct Report {
    family: String,
    measure: String,
    convention: &'static str,
    e_a_bc: f64,
    e_ab: f64,
    e_ac: f64,
    e_ac_npt_proxy: Option<f64>,
    ab_schmidt_bounds: Option<[usize; 2]>,
    ac_schmidt_bounds: Option<[usize; 2]>,
    disentangling_gap: f64,
    verdict: String,
    expected: Option<String>,
    gap_tol: f64,
    witness_floor: f64,
    acin: Option<AcinSummary>,
}

/// `k=v,k=v` with keys restricted to `allowed`.
fn parse_params(text: Option<&str>, allowed: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    let Some(text) = text else { return Ok(map) };
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| LabError::validation("params", format!("`{pair}` is not key=value")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(LabError::validation(
                "params",
                format!("unknown key `{k}`; expected one of {}", allowed.join(", ")),
            ));
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn number(map: &BTreeMap<String, String>, key: &str, default: f64) -> Result<f64> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| LabError::validation("params", format!("`{key}={v}` is not a number"))),
    }
}

fn parse_verdict(s: &str) -> Result<Verdict> {
    match s.trim().to_ascii_uppercase().as_str() {
        "VIOLATION_WITNESS" => Ok(Verdict::ViolationWitness),
        "CONSISTENT" => Ok(Verdict::Consistent),
        "INCONCLUSIVE" => Ok(Verdict::Inconclusive),
        _ => Err(LabError::validation("verdict", format!("unknown verdict `{s}`"))),
    }
}

fn parse_measure(m: Option<&str>, default: MeasureId) -> Result<MeasureId> {
    Ok(match m {
        Some(m) => MeasureId::from_str(m)?,
        None => default,
    })
}

fn sqrt3(x: [f64; 3]) -> [f64; 3] {
    x.map(f64::sqrt)
}

/// A tripartite state, the measure to check and the verdict the family is
/// expected to produce with that measure.
struct Setup {
    psi: PureState,
    measure: MeasureId,
    expected: Option<Verdict>,
    acin: Option<AcinParams>,
}

fn setup(family: Family, params: Option<&str>, measure: Option<&str>, input: Option<&Path>) -> Result<Setup> {
    if family != Family::File && input.is_some() {
        return Err(LabError::validation("input", "--input is only used with --family file"));
    }
    match family {
        Family::Phi => {
            let map = parse_params(params, &["a0", "a1", "a2", "ap0", "ap1", "ap2", "regime"])?;
            let regime = match map.get("regime").map(String::as_str) {
                None | Some("largest") => PhiRegime::LargestShared,
                Some("smallest") => PhiRegime::SmallestShared,
                Some(other) => {
                    return Err(LabError::validation(
                        "params",
                        format!("regime `{other}`; expected largest or smallest"),
                    ))
                }
            };
            let (a, ap, default_measure) = match regime {
                PhiRegime::LargestShared => ([0.5, 0.3, 0.2], [0.5, 0.26, 0.24], MeasureId::E2Raw),
                PhiRegime::SmallestShared => ([0.2, 0.45, 0.35], [0.2, 0.44, 0.36], MeasureId::EMin),
            };
            let a = [
                number(&map, "a0", a[0])?,
                number(&map, "a1", a[1])?,
                number(&map, "a2", a[2])?,
            ];
            let ap = [
                number(&map, "ap0", ap[0])?,
                number(&map, "ap1", ap[1])?,
                number(&map, "ap2", ap[2])?,
            ];
            let measure_id = parse_measure(measure, default_measure)?;
            Ok(Setup {
                psi: make_phi(&PhiParams::from_squares(a, ap, regime))?,
                expected: (measure_id == default_measure).then_some(Verdict::ViolationWitness),
                measure: measure_id,
                acin: None,
            })
        }
        Family::Omega => {
            let map = parse_params(params, &["l0", "l1", "l2"])?;
            let l = sqrt3([
                number(&map, "l0", 0.5)?,
                number(&map, "l1", 0.3)?,
                number(&map, "l2", 0.2)?,
            ]);
            let measure_id = parse_measure(measure, MeasureId::PartialNegativity)?;
            Ok(Setup {
                psi: make_omega(l[0], l[1], l[2])?,
                expected: (measure_id == MeasureId::PartialNegativity).then_some(Verdict::ViolationWitness),
                measure: measure_id,
                acin: None,
            })
        }
        Family::Acin => {
            let map = parse_params(params, &["l0", "l1", "l2", "l3", "l4", "phi"])?;
            let mut lambda = [0.0; 5];
            for (i, l) in lambda.iter_mut().enumerate() {
                *l = number(&map, &format!("l{i}"), 0.2)?.sqrt();
            }
            let p = AcinParams {
                lambda,
                phi: number(&map, "phi", 0.0)?,
            };
            if parse_measure(measure, MeasureId::E2Raw)? != MeasureId::E2Raw {
                return Err(LabError::Capability(
                    "the canonical-form probe checks E2_RAW only".into(),
                ));
            }
            Ok(Setup {
                psi: monotone_core::states::make_acin(&p)?,
                measure: MeasureId::E2Raw,
                expected: None,
                acin: Some(p),
            })
        }
        Family::W => {
            parse_params(params, &[])?;
            let measure_id = parse_measure(measure, MeasureId::SchmidtRank)?;
            Ok(Setup {
                psi: make_w(),
                expected: (measure_id == MeasureId::SchmidtRank).then_some(Verdict::ViolationWitness),
                measure: measure_id,
                acin: None,
            })
        }
        Family::File => {
            parse_params(params, &[])?;
            let path = input.ok_or_else(|| LabError::validation("input", "--family file needs --input"))?;
            let psi = match read_state(path)? {
                State::Pure(p) => p,
                State::Mixed(_) => return Err(LabError::validation("kind", "monogamy needs a pure state")),
            };
            Ok(Setup {
                psi,
                measure: parse_measure(measure, MeasureId::E2Norm)?,
                expected: None,
                acin: None,
            })
        }
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Phi => "phi",
        Family::Omega => "omega",
        Family::Acin => "acin",
        Family::W => "w",
        Family::File => "file",
    }
}

fn csv_row(family: &str, r: &MonogamyReport) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    w.write_record([
        family.to_string(),
        r.measure.to_string(),
        sig9(r.e_a_bc),
        sig9(r.e_ab),
        sig9(r.e_ac),
        r.e_ac_npt_proxy.map(sig9).unwrap_or_default(),
        sig9(r.disentangling_gap),
        r.verdict.to_string(),
    ])
    .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn run(
    cli: &Cli,
    family: Family,
    params: Option<&str>,
    measure: Option<&str>,
    input: Option<&Path>,
    expect: Option<&str>,
) -> Result<Outcome> {
    let setup = setup(family, params, measure, input)?;
    let opts = MonogamyOptions {
        roof: roof_options(cli)?,
        ..MonogamyOptions::default()
    };
    let expected = match expect {
        Some(e) => Some(parse_verdict(e)?),
        None => setup.expected,
    };
    let (report, acin) = match setup.acin {
        Some(p) => {
            let probe = acin_disentangling_probe(&p, &opts)?;
            let summary = AcinSummary {
                condition_holds: probe.condition_holds,
                gap_closed: probe.gap_closed,
                agrees: probe.agrees(),
            };
            (probe.report, Some(summary))
        }
        None => (monogamy_check(&setup.psi, setup.measure, &opts)?, None),
    };
    let name = family_name(family);
    let bounds = report
        .schmidt_bounds
        .map(|(ab, ac)| ([ab.lower, ab.upper], [ac.lower, ac.upper]));
    let dto = Report {
        family: name.to_string(),
        measure: report.measure.to_string(),
        convention: report.measure.convention(),
        e_a_bc: report.e_a_bc,
        e_ab: report.e_ab,
        e_ac: report.e_ac,
        e_ac_npt_proxy: report.e_ac_npt_proxy,
        ab_schmidt_bounds: bounds.map(|b| b.0),
        ac_schmidt_bounds: bounds.map(|b| b.1),
        disentangling_gap: report.disentangling_gap,
        verdict: report.verdict.to_string(),
        expected: expected.map(|v| v.to_string()),
        gap_tol: report.gap_tol,
        witness_floor: report.witness_floor,
        acin,
    };
    let text = to_json(&dto);
    let mut failure = None;
    if let Some(want) = expected {
        if want != report.verdict {
            failure = Some(LabError::Failure {
                message: format!("{name}: expected {want}, got {}", report.verdict),
                case: text.clone(),
            });
        }
    }
    if dto.acin.as_ref().is_some_and(|a| !a.agrees) {
        failure = Some(LabError::Failure {
            message: "closed disentangling gap outside the canonical-form condition set".into(),
            case: text.clone(),
        });
    }
    Ok(Outcome {
        table: Some(csv_row(name, &report)),
        report: text,
        failure,
    })
}
