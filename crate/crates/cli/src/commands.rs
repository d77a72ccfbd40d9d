use std::collections::BTreeMap;

use serde_json::{json, Value};
use strata_cones::verify::{analyze_stratum, check_report, explore as run_sweep, Report};
use strata_cones::weights::{
    cone_d, delta_class, forced_divisors, gl2_product_cone, minimal_cone, phi_reduce, reduced_coordinates, BiWeight,
    Family,
};
use strata_cones::{Cone, EmbeddingId, Error, Membership, MinimalVariant, QVector, SplittingConfig, Stratum};

use crate::render;
use crate::Outcome;

fn strings(v: &QVector) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn report_outcome(report: &Report) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        text: render::report(report),
        json: serde_json::to_value(report)?,
        failed: !report.all_passed(),
    })
}

pub fn describe(t: &Stratum) -> Outcome {
    let record = analyze_stratum(t);
    Outcome {
        text: render::dossier(t, &record),
        json: serde_json::to_value(&record).expect("records serialise"),
        failed: false,
    }
}

pub fn check(t: &Stratum) -> Outcome {
    report_outcome(&check_report(t)).expect("reports serialise")
}

pub fn explore(p_list: &[u64], d_max: usize, jobs: Option<usize>) -> anyhow::Result<Outcome> {
    report_outcome(&run_sweep(p_list, d_max, jobs)?)
}

/// Parses `cycle.pos=a` pairs.
pub fn parse_powers(config: &SplittingConfig, s: &str) -> Result<BTreeMap<EmbeddingId, u64>, Error> {
    let mut out = BTreeMap::new();
    if s.trim().is_empty() {
        return Ok(out);
    }
    let mut offset = 0;
    for raw in s.split(',') {
        let at = offset;
        offset += raw.len() + 1;
        let tok = raw.trim();
        let bad = |reason: &str| Error::WeightEncoding {
            position: at,
            token: tok.to_string(),
            reason: reason.to_string(),
        };
        let (b, a) = tok.split_once('=').ok_or_else(|| bad("expected cycle.pos=a"))?;
        let t = strata_cones::encoding::parse_stratum(config, b).map_err(|_| bad("bad embedding"))?;
        let members = t.members();
        if members.len() != 1 {
            return Err(bad("expected a single embedding"));
        }
        let a: u64 = a
            .trim()
            .parse()
            .map_err(|_| bad("exponent is not a nonnegative integer"))?;
        out.insert(members[0], a);
    }
    Ok(out)
}

fn membership_json(cone: &Cone, m: &Membership) -> Value {
    let g = cone.generator_rep();
    match m {
        Membership::Inside {
            ray_coeffs,
            line_coeffs,
        } => json!({
            "inside": true,
            "certificate": {
                "rays": ray_coeffs.iter().map(|(&i, x)| json!({"ray": strings(&g.rays[i]), "coeff": x.to_string()})).collect::<Vec<_>>(),
                "lines": line_coeffs.iter().map(|(&i, x)| json!({"line": strings(&g.lines[i]), "coeff": x.to_string()})).collect::<Vec<_>>(),
            }
        }),
        Membership::Outside { violated_form } => json!({
            "inside": false,
            "violated_form": strings(violated_form.coeffs()),
        }),
    }
}

pub fn member(t: &Stratum, kappa: &QVector) -> anyhow::Result<Outcome> {
    let cone = cone_d(t, Family::GPrime);
    let m = cone.member(kappa)?;
    if !m.verify(&cone, kappa) {
        return Err(Error::Internal("membership certificate does not verify".into()).into());
    }
    let vanishing = !m.is_inside() && kappa.is_integral();
    let mut json = membership_json(&cone, &m);
    json["t"] = json!(t.to_string());
    json["weight"] = json!(strings(kappa));
    json["sections_vanish"] = json!(vanishing);
    Ok(Outcome {
        text: render::membership(t, kappa, &cone, &m, vanishing),
        json,
        failed: false,
    })
}

pub fn minimal(t: &Stratum, kappa: &QVector, powers: &BTreeMap<EmbeddingId, u64>) -> anyhow::Result<Outcome> {
    let forced = forced_divisors(t, kappa)?;
    let phi = phi_reduce(t, kappa, powers)?;
    let min = minimal_cone(t, MinimalVariant::Min)?;
    let min0 = minimal_cone(t, MinimalVariant::Min0)?;
    let in_min = min.contains(&phi.ell)?;
    let in_min0 = min0.contains(&phi.ell)?;
    let coords: Vec<String> = reduced_coordinates(t).iter().map(|b| b.to_string()).collect();
    let json = json!({
        "t": t.to_string(),
        "weight": strings(kappa),
        "powers": powers.iter().map(|(b, a)| (b.to_string(), *a)).collect::<BTreeMap<_, _>>(),
        "forced_divisors": forced.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "kappa0": strings(&phi.kappa0),
        "kappa0_in_cone": phi.kappa0_in_cone,
        "reduced_coordinates": coords,
        "reduced": strings(&phi.ell),
        "in_minimal": in_min,
        "in_minimal0": in_min0,
    });
    let text = render::minimal(t, kappa, &forced, &phi, &coords, in_min, in_min0);
    Ok(Outcome {
        text,
        json,
        failed: false,
    })
}

pub fn gl2(t: &Stratum, lambda: &QVector, kappa: &QVector) -> anyhow::Result<Outcome> {
    let config = t.config();
    let delta = delta_class(config, kappa)?;
    let bi = BiWeight::new(lambda.clone(), kappa.clone())?;
    let cone = gl2_product_cone(t);
    let v = bi.to_vector();
    let m = cone.member(&v)?;
    let mut json = membership_json(&cone, &m);
    json["t"] = json!(t.to_string());
    json["lambda"] = json!(strings(lambda));
    json["kappa"] = json!(strings(kappa));
    json["delta"] = json!({
        "residues": delta.residues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "moduli": delta.moduli.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text: render::gl2(t, &bi, &delta, &m),
        json,
        failed: false,
    })
}
