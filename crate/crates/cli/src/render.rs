//! Plain-text rendering.

use std::fmt::Write;

use strata_cones::encoding::parse_weight;
use strata_cones::verify::{ConeRecord, GeneratorRecord, Report, Status, StratumRecord};
use strata_cones::weights::PhiReduction;
use strata_cones::{BiWeight, Cone, DeltaClass, EmbeddingId, LinearForm, Membership, QVector, Stratum};

fn vector(xs: &[String]) -> String {
    format!("({})", xs.join(", "))
}

fn form(xs: &[String], var: &str) -> String {
    let v = parse_weight(&xs.join(","), xs.len()).expect("record holds rationals");
    LinearForm::new(v).render(var)
}

fn opt(x: Option<usize>) -> String {
    x.map_or("-".into(), |n| n.to_string())
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn generators(out: &mut String, title: &str, g: &GeneratorRecord) {
    writeln!(out, "{title}").unwrap();
    for r in &g.rays {
        writeln!(out, "  ray   {}", vector(r)).unwrap();
    }
    for l in &g.lines {
        writeln!(out, "  line  ±{}", vector(l)).unwrap();
    }
}

fn cone(out: &mut String, title: &str, c: &ConeRecord, var: &str) {
    writeln!(out, "{title}").unwrap();
    if c.inequalities.is_empty() && c.equations.is_empty() {
        writeln!(out, "  whole space").unwrap();
    }
    for f in &c.inequalities {
        writeln!(out, "  {} ≥ 0", form(f, var)).unwrap();
    }
    for f in &c.equations {
        writeln!(out, "  {} = 0", form(f, var)).unwrap();
    }
    for r in &c.rays {
        writeln!(out, "  ray   {}", vector(r)).unwrap();
    }
    for l in &c.lines {
        writeln!(out, "  line  ±{}", vector(l)).unwrap();
    }
}

fn checks(out: &mut String, record: &StratumRecord) {
    for c in &record.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        };
        write!(out, "  {status:<4}  {}", c.name).unwrap();
        if !c.detail.is_empty() {
            write!(out, ": {}", c.detail).unwrap();
        }
        writeln!(out).unwrap();
        if let (Status::Fail, Some(w)) = (c.status, &c.witness) {
            writeln!(out, "        witness {} ({})", vector(&w.vector), w.note).unwrap();
            if let Some(f) = &w.violated_form {
                writeln!(out, "        violated form {} ≥ 0", form(f, "x")).unwrap();
            }
        }
    }
}

pub fn dossier(t: &Stratum, r: &StratumRecord) -> String {
    let config = t.config();
    let mut out = String::new();
    writeln!(
        out,
        "p = {}, cycles = {:?}, d = {}",
        config.p(),
        config.cycles(),
        config.d()
    )
    .unwrap();
    writeln!(out, "T      = {{{}}}", r.t).unwrap();
    writeln!(out, "T̃      = {{{}}}", r.tilde).unwrap();
    writeln!(out, "S(T)   = {}", set(&r.places)).unwrap();
    writeln!(out, "Iw(T)  = {:?}", r.iw).unwrap();
    writeln!(out, "𝔹(T)   = {}", set(&r.admissible)).unwrap();
    for c in &r.chains {
        writeln!(out, "chain  [{}]", c.join(", ")).unwrap();
    }
    if !r.full_cycles.is_empty() {
        writeln!(out, "cycles inside T: {:?}", r.full_cycles).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "  β      T   T̃   μ   ν   n   n*  ε   𝔹(T)").unwrap();
    for row in &r.tables {
        let mark = |b: bool| if b { "x" } else { "." };
        writeln!(
            out,
            "  {:<6} {:<3} {:<3} {:<3} {:<3} {:<3} {:<3} {:<3} {}",
            row.beta,
            mark(row.in_t),
            mark(row.in_tilde),
            row.mu,
            opt(row.nu),
            opt(row.n),
            row.n_ext,
            if row.eps > 0 { "+" } else { "-" },
            mark(row.admissible)
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    generators(&mut out, "generators 𝒢", &r.generators_g);
    generators(&mut out, "generators 𝒢′", &r.generators_gprime);
    cone(&mut out, "𝒟_T", &r.halfspaces, "k");
    writeln!(out, "f_β(T)").unwrap();
    for f in &r.f_weights {
        let recipe: Vec<String> = f
            .recipe
            .iter()
            .map(|x| format!("{}({{{}}})^{}", x.label, x.base, x.exponent))
            .collect();
        writeln!(
            out,
            "  {:<6} {}  = {}  δ = {}",
            f.beta,
            vector(&f.weight),
            recipe.join(" * "),
            f.delta.join(", ")
        )
        .unwrap();
    }
    let coords: Vec<String> = t.complement().iter().map(EmbeddingId::to_string).collect();
    writeln!(out, "reduced coordinates ℓ = {}", vector(&coords)).unwrap();
    cone(&mut out, "𝒞^min", &r.minimal, "l");
    cone(&mut out, "𝒞^min,0", &r.minimal0, "l");
    writeln!(out, "checks").unwrap();
    checks(&mut out, r);
    out
}

pub fn report(report: &Report) -> String {
    let mut out = String::new();
    let s = &report.summary;
    writeln!(
        out,
        "{} configurations, {} strata: {} pass, {} fail, {} info",
        s.configs, s.strata, s.total.pass, s.total.fail, s.total.info
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(out, "  {:<26} {:>6} {:>6} {:>6}", "check", "pass", "fail", "info").unwrap();
    for (name, c) in &s.by_check {
        writeln!(out, "  {name:<26} {:>6} {:>6} {:>6}", c.pass, c.fail, c.info).unwrap();
    }
    let oq = &report.open_questions;
    writeln!(out).unwrap();
    writeln!(
        out,
        "𝒞^min = 𝒞^min,0 on {}/{} strata",
        oq.min_equals_min0_equal, oq.min_equals_min0_checked
    )
    .unwrap();
    for x in &oq.min_equals_min0_unequal {
        writeln!(out, "  unequal: p={} cycles={:?} T={{{}}}", x.p, x.cycles, x.t).unwrap();
    }
    if !report.dichotomy_exceptions.is_empty() {
        writeln!(
            out,
            "{} strata with T̃ ≠ T whose cone equals the Hasse-type cone",
            report.dichotomy_exceptions.len()
        )
        .unwrap();
    }
    let failures: Vec<_> = report.failures().collect();
    if !failures.is_empty() {
        writeln!(out).unwrap();
        writeln!(out, "failures").unwrap();
        for (c, s, f) in failures {
            writeln!(
                out,
                "  p={} cycles={:?} T={{{}}}  {}: {}",
                c.p, c.cycles, s.t, f.name, f.detail
            )
            .unwrap();
            if let Some(w) = &f.witness {
                writeln!(out, "    witness {} ({})", vector(&w.vector), w.note).unwrap();
            }
        }
    }
    if report.configs.len() == 1 && report.configs[0].strata.len() == 1 {
        writeln!(out).unwrap();
        checks(&mut out, &report.configs[0].strata[0]);
    }
    out
}

fn certificate(out: &mut String, cone: &Cone, m: &Membership) {
    let g = cone.generator_rep();
    match m {
        Membership::Inside {
            ray_coeffs,
            line_coeffs,
        } => {
            writeln!(out, "certificate").unwrap();
            for (&i, x) in ray_coeffs {
                writeln!(out, "  {x} · ({})", g.rays[i]).unwrap();
            }
            for (&i, x) in line_coeffs {
                writeln!(out, "  {x} · ({})  [line]", g.lines[i]).unwrap();
            }
        }
        Membership::Outside { violated_form } => {
            writeln!(out, "violated form {} ≥ 0", violated_form.render("k")).unwrap();
        }
    }
}

pub fn membership(t: &Stratum, kappa: &QVector, cone: &Cone, m: &Membership, vanishing: bool) -> String {
    let mut out = String::new();
    let verdict = if m.is_inside() { "inside" } else { "outside" };
    writeln!(out, "κ = ({kappa}) is {verdict} 𝒟_T for T = {{{t}}}").unwrap();
    certificate(&mut out, cone, m);
    if vanishing {
        writeln!(out, "H^0(X_T, δ^ξ ω^κ) = 0 for every ξ").unwrap();
    }
    out
}

pub fn minimal(
    t: &Stratum,
    kappa: &QVector,
    forced: &[EmbeddingId],
    phi: &PhiReduction,
    coords: &[String],
    in_min: bool,
    in_min0: bool,
) -> String {
    let mut out = String::new();
    let forced: Vec<String> = forced.iter().map(EmbeddingId::to_string).collect();
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "T = {{{t}}}, κ = ({kappa})").unwrap();
    writeln!(out, "forced divisors   {}", set(&forced)).unwrap();
    writeln!(out, "κ0                ({})", phi.kappa0).unwrap();
    writeln!(out, "κ0 ∈ 𝒞_T          {}", yes(phi.kappa0_in_cone)).unwrap();
    writeln!(
        out,
        "i_T(κ0)           ({})  in coordinates {}",
        phi.ell,
        vector(coords)
    )
    .unwrap();
    writeln!(out, "in 𝒞^min          {}", yes(in_min)).unwrap();
    writeln!(out, "in 𝒞^min,0        {}", yes(in_min0)).unwrap();
    out
}

pub fn gl2(t: &Stratum, bi: &BiWeight, delta: &DeltaClass, m: &Membership) -> String {
    let mut out = String::new();
    writeln!(out, "T = {{{t}}}, (λ; κ) = {bi}").unwrap();
    writeln!(out, "δ-class of κ: {delta}").unwrap();
    let verdict = if m.is_inside() { "inside" } else { "outside" };
    writeln!(out, "(λ; κ) is {verdict} ℚ^𝔹 × 𝒟_T").unwrap();
    if let Membership::Outside { violated_form } = m {
        writeln!(
            out,
            "violated form {} ≥ 0 (λ then κ coordinates)",
            violated_form.render("x")
        )
        .unwrap();
    }
    out
}
