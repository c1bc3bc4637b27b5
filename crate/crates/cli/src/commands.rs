use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, Context};

use serde_json::{json, Value};
use wallform_core::io::{self, Document};
use wallform_core::{
    cancel_standard, complement_standardize, connectivity_report, form_complex, kernel_rank_witness, lcm_report,
    perp_sum, rank_certificate, BigInt, stable_rank_certificate, transitivity_witness, Error, FgAbGroup, FormComplex,
    FormParameter, SearchBudget, WallForm, WallMorphism,
};

use crate::{Cli, Command};

pub enum Artifact {
    Json(Value),
    Text(String),
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: u8,
    pub artifact: Option<Artifact>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            exit: 0,
            artifact: None,
        }
    }

    fn with(mut self, artifact: Artifact) -> Self {
        self.artifact = Some(artifact);
        self
    }
}

pub enum Failure {
    Report(Report),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Axiom(v) => Failure::Report(Report {
                json: json!({"status": "invalid", "axiom": v.axiom.to_string(), "witness": v.witness}),
                text: format!("invalid: {v}\n"),
                exit: 1,
                artifact: None,
            }),
            Error::PreservationViolation { which, witness } => Failure::Report(Report {
                json: json!({"status": "invalid", "preserves": which.to_string(), "witness": witness}),
                text: format!("invalid: morphism does not preserve {which} at {witness}\n"),
                exit: 1,
                artifact: None,
            }),
            Error::BudgetExhausted => Failure::Report(Report {
                json: json!({"status": "budget-exhausted"}),
                text: "budget exhausted\n".into(),
                exit: 2,
                artifact: None,
            }),
            other => Failure::Other(anyhow!(other)),
        }
    }
}

type Run = std::result::Result<Report, Failure>;

fn load(path: &Path) -> std::result::Result<Document, Failure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(io::parse_document(&text, &path.display().to_string())?)
}

fn budget(cli: &Cli) -> SearchBudget {
    SearchBudget {
        bound: cli.bound,
        max_nodes: cli.budget,
    }
}

fn tag(mut v: Value, command: &str) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), json!(command));
        m.entry("status").or_insert(json!("ok"));
    }
    v
}

pub fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Validate { file } => validate(cli, &load(file)?),
        Command::Rank { file } => rank(cli, &load(file)?),
        Command::StableRank { file } => stable_rank(cli, &load(file)?),
        Command::Complement { file } => complement(&load(file)?),
        Command::Complex { file } => complex(cli, &load(file)?),
        Command::Homology { file } => homology(cli, &load(file)?),
        Command::Lcm { file, n } => lcm(cli, &load(file)?, *n),
        Command::Connectivity { file, g } => connectivity(cli, &load(file)?, *g),
        Command::Transitivity { file } => transitivity(&load(file)?),
        Command::KernelWitness { file } => kernel_witness(cli, &load(file)?),
        Command::Cancel { file } => cancel(&load(file)?),
        Command::StandardForm { g, h, param } => standard_form(*g, h, param),
    }
}

fn validate(cli: &Cli, doc: &Document) -> Run {
    let w = doc.validated()?;
    let samples = 200;
    w.check_sampled(samples, cli.seed).map_err(Error::from)?;
    let ns = w.nonsingularity();
    let json = tag(
        json!({
            "axioms": "pass",
            "sampled": {"count": samples, "seed": cli.seed, "result": "pass"},
            "nonsingular": ns.nonsingular,
        }),
        "validate",
    );
    let text = format!(
        "axioms i–vi: pass\nsampled checks: {samples} at seed {}: pass\nnon-singular: {}\n",
        cli.seed,
        if ns.nonsingular { "yes" } else { "no" }
    );
    Ok(Report::ok(json, text))
}

fn exactness(lower: i64, upper: usize, exhausted: bool) -> &'static str {
    if lower == upper as i64 {
        "EXACT"
    } else if exhausted {
        "BUDGET EXHAUSTED"
    } else {
        "NOT EXACT"
    }
}

fn rank(cli: &Cli, doc: &Document) -> Run {
    let w = doc.validated()?;
    let c = rank_certificate(&w, &budget(cli))?;
    let status = exactness(c.lower as i64, c.upper, c.budget_exhausted);
    let witness = io::morphism_to_json(&c.witness);
    let json = tag(
        json!({
            "lower": c.lower,
            "upper": c.upper,
            "exact": c.exact(),
            "budget_exhausted": c.budget_exhausted,
            "nodes": c.nodes,
            "bound": cli.bound,
            "witness": witness,
        }),
        "rank",
    );
    let text = format!("r ≥ {}, upper {}, {status}\n", c.lower, c.upper);
    let mut r = Report::ok(json, text).with(Artifact::Json(witness));
    if c.budget_exhausted && !c.exact() {
        r.exit = 2;
    }
    Ok(r)
}

fn stable_rank(cli: &Cli, doc: &Document) -> Run {
    let w = doc.validated()?;
    let c = stable_rank_certificate(&w, cli.jmax, &budget(cli))?;
    let status = exactness(c.lower, c.upper, c.budget_exhausted);
    let witness = io::morphism_to_json(&c.certificate.witness);
    let json = tag(
        json!({
            "lower": c.lower,
            "j": c.j,
            "jmax": cli.jmax,
            "upper": c.upper,
            "budget_exhausted": c.budget_exhausted,
            "bound": cli.bound,
            "witness": witness,
        }),
        "stable-rank",
    );
    let text = format!("stable r ≥ {} (j = {}), upper {}, {status}\n", c.lower, c.j, c.upper);
    let mut r = Report::ok(json, text).with(Artifact::Json(witness));
    if c.budget_exhausted && c.lower != c.upper as i64 {
        r.exit = 2;
    }
    Ok(r)
}

fn show(v: &[BigInt]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", s.join(", "))
}

fn complement(doc: &Document) -> Run {
    let w = doc.validated()?;
    let cx = doc.ctx();
    let (sub, morphism) = if let Some(v) = doc.field("morphism") {
        let f = io::parse_standard_morphism(v, &w, &cx).map_err(Failure::from)?;
        (f.image(), Some(f))
    } else if let Some(v) = doc.field("sub") {
        (io::parse_sub_form(v, &w, &cx)?, None)
    } else {
        return Err(anyhow!("document needs a `sub` or a `morphism` field").into());
    };
    let comp = sub.orthogonal_complement();
    let mut json = json!({"complement": io::sub_form_to_json(&comp)});
    let mut text = String::from("complement minus generators:\n");
    for g in comp.minus_gens() {
        let _ = writeln!(text, "  {}", show(g));
    }
    text.push_str("complement plus generators:\n");
    for g in comp.plus_gens() {
        let _ = writeln!(text, "  {}", show(g));
    }
    let mut artifact = io::sub_form_to_json(&comp);
    if let Some(f) = morphism {
        if w.standard_rank().is_some() {
            let c = complement_standardize(&f)?;
            let cj = io::morphism_to_json(&c);
            json["standardized"] = cj.clone();
            artifact = cj;
            let _ = writeln!(text, "standardized: W^{} onto the complement", c.source().minus().ngens());
        }
    }
    Ok(Report::ok(tag(json, "complement"), text).with(Artifact::Json(artifact)))
}

fn build(cli: &Cli, w: &Arc<WallForm>, max_dim: usize) -> std::result::Result<FormComplex, Failure> {
    let fc = form_complex(w, cli.bound, max_dim)?;
    let total: usize = fc.complex.simplex_counts().iter().sum();
    if total as u64 > cli.budget {
        return Err(Error::BudgetExhausted.into());
    }
    Ok(fc)
}

fn complex_json(fc: &FormComplex) -> Value {
    let rows: Vec<String> = fc
        .complex
        .adjacency_rows()
        .iter()
        .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
        .collect();
    json!({
        "bound": fc.bound,
        "vertices": fc.vertices.iter().map(io::morphism_to_json).collect::<Vec<_>>(),
        "adjacency": rows,
    })
}

fn evidence(bound: u32) -> String {
    format!("EVIDENCE-AT-BOUND-{bound}")
}

fn complex(cli: &Cli, doc: &Document) -> Run {
    let w = doc.validated()?;
    let fc = build(cli, &w, cli.max_degree + 1)?;
    let counts = fc.complex.simplex_counts();
    let json = tag(
        json!({"bound": cli.bound, "vertices": fc.vertices.len(), "simplex_counts": counts, "label": evidence(cli.bound)}),
        "complex",
    );
    let text = format!(
        "vertices: {}\nsimplices by dimension: {:?}\n{}\n",
        fc.vertices.len(),
        counts,
        evidence(cli.bound)
    );
    let wants_text = cli.emit.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "txt"));
    let artifact = if wants_text {
        Artifact::Text(fc.complex.to_edge_list())
    } else {
        Artifact::Json(complex_json(&fc))
    };
    Ok(Report::ok(json, text).with(artifact))
}

fn homology_json(h: &wallform_core::HomologyReport) -> Value {
    json!({
        "betti": h.betti,
        "torsion": h.torsion.iter().map(|t| io::elem_to_json(t)).collect::<Vec<_>>(),
        "simplex_counts": h.simplex_counts,
    })
}

fn homology(cli: &Cli, doc: &Document) -> Run {
    let w = doc.validated()?;
    let fc = build(cli, &w, cli.max_degree + 1)?;
    let h = fc.complex.homology(cli.max_degree)?;
    let json = tag(
        json!({"bound": cli.bound, "homology": homology_json(&h), "label": evidence(cli.bound)}),
        "homology",
    );
    let text = format!("{}{}\n", h.to_table(), evidence(cli.bound));
    Ok(Report::ok(json, text))
}

fn lcm(cli: &Cli, doc: &Document, n: i64) -> Run {
    let w = doc.validated()?;
    let fc = build(cli, &w, n.max(0) as usize)?;
    let r = lcm_report(&fc.complex, n)?;
    let failures: Vec<&wallform_core::LcmEntry> = r.entries.iter().filter(|e| !e.pass).collect();
    let json = tag(
        json!({
            "n": n,
            "bound": cli.bound,
            "pass": r.pass,
            "checked": r.entries.len(),
            "failures": failures.iter().map(|e| json!({"simplex": e.simplex, "required": e.required})).collect::<Vec<_>>(),
            "label": evidence(cli.bound),
        }),
        "lcm",
    );
    let mut text = format!(
        "lCM ≥ {n}: {} ({} links checked)\n",
        if r.pass { "pass" } else { "fail" },
        r.entries.len()
    );
    for e in failures {
        let _ = writeln!(text, "  link of {:?} not {}-connected", e.simplex, e.required);
    }
    let _ = writeln!(text, "{}", evidence(cli.bound));
    Ok(Report::ok(json, text))
}

fn connectivity(cli: &Cli, doc: &Document, g: Option<usize>) -> Run {
    let w = doc.validated()?;
    let r = connectivity_report(&w, g, cli.bound, cli.max_degree)?;
    let json = tag(
        json!({
            "bound": r.bound,
            "g": r.g,
            "d": r.d,
            "vertices": r.vertices,
            "edges": r.edges,
            "nonempty": r.nonempty,
            "homology": homology_json(&r.homology),
            "nonempty_expected": r.nonempty_expected,
            "connected_expected": r.connected_expected,
            "vanishing_degree": r.vanishing_degree,
            "consistent": r.consistent,
            "label": r.label(),
        }),
        "connectivity",
    );
    let mut text = format!(
        "g = {}, d = {}, vertices = {}, edges = {}\nnonempty: {} (expected: {})\nbetti₀ = {} (connected expected: {})\n",
        r.g,
        r.d,
        r.vertices,
        r.edges,
        r.nonempty,
        r.nonempty_expected,
        r.homology.betti[0],
        r.connected_expected
    );
    for (k, b) in r.homology.betti.iter().enumerate().skip(1) {
        let _ = writeln!(text, "betti{k} = {b}");
    }
    let _ = writeln!(text, "consistent with predictions: {}\n{}", r.consistent, r.label());
    Ok(Report::ok(json, text))
}

fn transitivity(doc: &Document) -> Run {
    let w = doc.validated()?;
    let cx = doc.ctx();
    let get = |k: &str| doc.field(k).ok_or_else(|| anyhow!("document needs a `{k}` field"));
    let f1 = io::parse_standard_morphism(get("f1")?, &w, &cx)?;
    let f2 = io::parse_standard_morphism(get("f2")?, &w, &cx)?;
    let phi = transitivity_witness(&f1, &f2)?;
    let pj = io::morphism_to_json(&phi);
    let json = tag(json!({"automorphism": pj, "bijective": phi.is_isomorphism()}), "transitivity");
    let text = format!(
        "automorphism with Φ∘f2 = f1 found; bijective: {}\n",
        if phi.is_isomorphism() { "yes" } else { "no" }
    );
    Ok(Report::ok(json, text).with(Artifact::Json(pj)))
}

fn kernel_witness(cli: &Cli, doc: &Document) -> Run {
    let w = doc.validated()?;
    let cx = doc.ctx();
    let probe = doc.field("probe").ok_or_else(|| anyhow!("document needs a `probe` field"))?;
    let (nu, phi) = io::parse_probe_map(probe, &w, &cx)?;
    let f = match doc.field("witness") {
        Some(v) => io::parse_standard_morphism(v, &w, &cx)?,
        None => match standard_witness(&w) {
            Some(f) => f,
            None => rank_certificate(&w, &budget(cli))?.witness,
        },
    };
    let k = kernel_rank_witness(&f, &phi, nu)?;
    let kj = io::morphism_to_json(&k);
    let rank = k.source().minus().ngens();
    let json = tag(
        json!({"nu": nu, "input_rank": f.source().minus().ngens(), "rank": rank, "witness": kj}),
        "kernel-witness",
    );
    let text = format!(
        "kernel of the probe map (nu = {nu}) has rank ≥ {rank} (from a rank-{} witness)\n",
        f.source().minus().ngens()
    );
    Ok(Report::ok(json, text).with(Artifact::Json(kj)))
}

fn cancel(doc: &Document) -> Run {
    let m = doc.validated()?;
    let n = doc.other_form("target_form")?;
    let w1 = Arc::new(WallForm::standard(1, m.param())?);
    let ms = perp_sum(&m, &w1)?;
    let ns = perp_sum(&n, &w1)?;
    let v = doc.field("iso").ok_or_else(|| anyhow!("document needs an `iso` field"))?;
    let iso = io::parse_morphism(v, &ms.form, &ns.form, &doc.ctx())?;
    let out = cancel_standard(&ms, &ns, &iso)?;
    let oj = io::morphism_to_json(&out);
    let json = tag(json!({"isomorphism": oj}), "cancel");
    Ok(Report::ok(json, "isomorphism M → N found\n".into()).with(Artifact::Json(oj)))
}

fn parse_h(text: &str) -> anyhow::Result<FgAbGroup> {
    let text = text.trim();
    if text == "0" {
        return Ok(FgAbGroup::trivial());
    }
    let mut moduli = Vec::new();
    for term in text.split('+') {
        let term = term.trim();
        if term == "Z" {
            moduli.push(BigInt::from(0));
        } else if let Some(n) = term.strip_prefix("Z/") {
            let n: BigInt = n.parse().map_err(|_| anyhow!("bad cyclic factor `{term}`"))?;
            if n <= BigInt::from(0) {
                return Err(anyhow!("bad cyclic factor `{term}`"));
            }
            moduli.push(n);
        } else {
            return Err(anyhow!("bad group term `{term}`; use Z or Z/n joined by +"));
        }
    }
    Ok(FgAbGroup::from_cyclic_factors(&moduli).group)
}

fn standard_form(g: usize, h: &str, param: &str) -> Run {
    let h = parse_h(h)?;
    let p = match param {
        "param:trivial" | "param:trivial:-1" => FormParameter::trivial(&h, -1),
        "param:trivial:1" | "param:trivial:+1" => FormParameter::trivial(&h, 1),
        "param:z2" => {
            let p = FormParameter::z2();
            if p.h() != &h {
                return Err(anyhow!("param:z2 needs H = Z/2").into());
            }
            p
        }
        other => return Err(anyhow!("unknown parameter `{other}`").into()),
    };
    let w = WallForm::standard(g, &p)?;
    let doc = io::document_to_json(&w);
    let text = serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n";
    Ok(Report::ok(doc.clone(), text).with(Artifact::Json(doc)))
}

fn standard_witness(w: &Arc<WallForm>) -> Option<WallMorphism> {
    w.standard_rank().map(|_| WallMorphism::identity(w))
}
