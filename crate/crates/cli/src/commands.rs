//! The `weights`, `posterior` and `analyze` commands. Each returns the full
//! text to print so output can be compared byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use evidence::{
    format_tag, Bounds, CombinationMode, Correlation, Dist, DistSet, Error, EvidenceSpace, GeneralizedEvidenceSpace,
    Label, Model, ModelError, ModelFile, ObservationSequence, Rational, Refinement,
};
use serde_json::{json, Map, Value};

use crate::render::{NumberFormat, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    /// 1 for bad invocations and malformed input, 2 when the question itself
    /// has no answer (total conflict, correlated space).
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Model(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

pub struct Query {
    pub model: Model,
    /// `None` asks about every single observation in turn.
    pub obs: Option<String>,
    pub mode: Option<CombinationMode>,
    pub format: Format,
    pub numbers: NumberFormat,
}

impl Query {
    fn sequences(&self) -> Result<Vec<ObservationSequence>, CliError> {
        let known: BTreeSet<Label> = self.model.space.observations().cloned().collect();
        let Some(csv) = &self.obs else {
            return Ok(known.into_iter().map(ObservationSequence::single).collect());
        };
        let mut items = Vec::new();
        for item in csv.split(',').map(str::trim) {
            if item.is_empty() {
                return Err(usage("--obs: empty observation in list"));
            }
            if !known.contains(item) {
                return Err(usage(format!("--obs: unknown observation {item:?}")));
            }
            items.push(item);
        }
        Ok(vec![ObservationSequence::new(items).map_err(|e| usage(format!("--obs: {e}")))?])
    }

    fn mode_for(&self, seq: &ObservationSequence) -> Result<CombinationMode, CliError> {
        match (self.mode, seq.len()) {
            (Some(mode), _) => Ok(mode),
            (None, 1) => Ok(CombinationMode::FixedMapping),
            (None, _) => Err(usage(
                "--mode fixed|per-observation is required for a sequence on a model with several mappings",
            )),
        }
    }

    fn hypotheses(&self) -> Vec<String> {
        self.model.space.hypotheses().map(|h| h.to_string()).collect()
    }

    fn masses(&self, d: &Dist) -> Vec<String> {
        d.masses().map(|m| self.numbers.show(m)).collect()
    }

    fn masses_json(&self, d: &Dist) -> Value {
        Value::Object(d.iter().map(|(h, m)| (h.to_string(), json!(self.numbers.show(m)))).collect())
    }

    fn bounds_json(&self, b: &Bounds) -> Value {
        json!({ "lower": self.numbers.show(&b.lower), "upper": self.numbers.show(&b.upper) })
    }
}

fn sequence_json(seq: &ObservationSequence) -> Value {
    json!(seq.items().iter().map(|o| o.to_string()).collect::<Vec<_>>())
}

fn tag_json(tag: &[usize]) -> Value {
    json!(tag.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn section_title(seq: &ObservationSequence, mode: Option<CombinationMode>) -> String {
    match mode {
        Some(mode) if seq.len() > 1 => format!("observations: {seq} (mode: {mode})"),
        _ if seq.len() > 1 => format!("observations: {seq}"),
        _ => format!("observation: {seq}"),
    }
}

/// Classical answers: one row per sequence.
fn classical_report(
    q: &Query,
    seqs: &[ObservationSequence],
    key: &str,
    f: impl Fn(&ObservationSequence) -> Result<Dist, Error>,
) -> Result<String, CliError> {
    let mut table = Table::new(std::iter::once("observation".to_string()).chain(q.hypotheses()));
    let mut results = Vec::new();
    for seq in seqs {
        let d = f(seq)?;
        table.row(std::iter::once(seq.to_string()).chain(q.masses(&d)));
        results.push(json!({ "observations": sequence_json(seq), key: q.masses_json(&d) }));
    }
    Ok(match q.format {
        Format::Table => table.render(),
        Format::Json => to_text(&json!({ "kind": "classical", "results": results })),
    })
}

struct GeneralizedResult {
    seq: ObservationSequence,
    mode: CombinationMode,
    set: DistSet,
    /// Bound formula per hypothesis, `None` where its denominator vanishes.
    formula: Option<BTreeMap<Label, Option<Bounds>>>,
}

fn generalized_report(q: &Query, key: &str, results: &[GeneralizedResult]) -> Result<String, CliError> {
    let hyps = q.hypotheses();
    let show_mode = q.mode.is_some();
    match q.format {
        Format::Table => {
            let mut sections = Vec::new();
            for r in results {
                let mut members = Table::new(std::iter::once("mapping".to_string()).chain(hyps.iter().cloned()));
                for t in r.set.entries() {
                    members.row(std::iter::once(format_tag(&t.tag)).chain(q.masses(&t.dist)));
                }
                let mut header = vec!["hypothesis", "lower", "upper"];
                if r.formula.is_some() {
                    header.extend(["formula lower", "formula upper"]);
                }
                let mut bounds = Table::new(header);
                for h in &hyps {
                    let b = r.set.bounds(h)?;
                    let mut row = vec![h.clone(), q.numbers.show(&b.lower), q.numbers.show(&b.upper)];
                    if let Some(formula) = &r.formula {
                        match &formula[h.as_str()] {
                            Some(f) => row.extend([q.numbers.show(&f.lower), q.numbers.show(&f.upper)]),
                            None => row.extend(["-".to_string(), "-".to_string()]),
                        }
                    }
                    bounds.row(row);
                }
                let mode = show_mode.then_some(r.mode);
                sections.push(format!(
                    "{}\n\n{}\n{}",
                    section_title(&r.seq, mode),
                    members.render(),
                    bounds.render()
                ));
            }
            Ok(sections.join("\n"))
        }
        Format::Json => {
            let mut out = Vec::new();
            for r in results {
                let members: Vec<Value> = r
                    .set
                    .entries()
                    .iter()
                    .map(|t| json!({ "tag": tag_json(&t.tag), "masses": q.masses_json(&t.dist) }))
                    .collect();
                let mut bounds = Map::new();
                for h in &hyps {
                    bounds.insert(h.clone(), q.bounds_json(&r.set.bounds(h)?));
                }
                let mut entry = json!({
                    "observations": sequence_json(&r.seq),
                    key: members,
                    "bounds": bounds,
                });
                if show_mode {
                    entry["mode"] = json!(r.mode.to_string());
                }
                if let Some(formula) = &r.formula {
                    let f: Map<String, Value> = formula
                        .iter()
                        .map(|(h, b)| (h.to_string(), b.as_ref().map_or(Value::Null, |b| q.bounds_json(b))))
                        .collect();
                    entry["formula_bounds"] = Value::Object(f);
                }
                out.push(entry);
            }
            Ok(to_text(&json!({ "kind": "generalized", "mappings": q.model.space.len(), "results": out })))
        }
    }
}

pub fn weights(q: &Query) -> Result<String, CliError> {
    let seqs = q.sequences()?;
    if let Some(e) = q.model.classical() {
        return classical_report(q, &seqs, "weights", |s| e.sequence_weight(s));
    }
    let g = &q.model.space;
    let mut results = Vec::new();
    for seq in seqs {
        let mode = q.mode_for(&seq)?;
        let set = g.generalized_sequence_weights(&seq, mode)?;
        results.push(GeneralizedResult {
            seq,
            mode,
            set,
            formula: None,
        });
    }
    generalized_report(q, "weights", &results)
}

/// Parses `h=p/q,...` into a distribution over the model's hypotheses.
pub fn parse_prior(text: &str, space: &GeneralizedEvidenceSpace) -> Result<Dist, CliError> {
    let mut masses: BTreeMap<Label, Rational> = BTreeMap::new();
    for part in text.split(',') {
        let (h, p) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("--prior: expected h=p/q, got {:?}", part.trim())))?;
        let (h, p) = (h.trim(), p.trim());
        if !space.has_hypothesis(h) {
            return Err(usage(format!("--prior: unknown hypothesis {h:?}")));
        }
        let p: Rational = p.parse().map_err(|e| usage(format!("--prior: {e}")))?;
        if masses.insert(Label::new(h), p).is_some() {
            return Err(usage(format!("--prior: {h:?} given twice")));
        }
    }
    if let Some(missing) = space.hypotheses().find(|h| !masses.contains_key(*h)) {
        return Err(usage(format!("--prior: no mass given for {missing}")));
    }
    Dist::from_pairs(masses).map_err(|e| usage(format!("--prior: {e}")))
}

pub fn posterior(q: &Query, prior: Option<&str>) -> Result<String, CliError> {
    let prior = match (prior, &q.model.prior) {
        (Some(text), _) => parse_prior(text, &q.model.space)?,
        (None, Some(p)) => p.clone(),
        (None, None) => return Err(usage("--prior is required: the model file has no prior")),
    };
    let seqs = q.sequences()?;
    if let Some(e) = q.model.classical() {
        return classical_report(q, &seqs, "posterior", |s| e.sequence_posterior(&prior, s));
    }
    let g = &q.model.space;
    let uncorrelated = g.factorization().is_uncorrelated();
    let mut results = Vec::new();
    for seq in seqs {
        let mode = q.mode_for(&seq)?;
        let set = g.sequence_posterior_set(&prior, &seq, mode)?;
        let formula = match seq.items() {
            [ob] if uncorrelated => {
                let mut per_h = BTreeMap::new();
                for h in g.hypotheses() {
                    let b = match g.posterior_bounds_formula(&prior, ob, h) {
                        Ok(b) => Some(b),
                        Err(Error::ZeroDenominator) => None,
                        Err(e) => return Err(e.into()),
                    };
                    per_h.insert(h.clone(), b);
                }
                Some(per_h)
            }
            _ => None,
        };
        results.push(GeneralizedResult {
            seq,
            mode,
            set,
            formula,
        });
    }
    generalized_report(q, "posteriors", &results)
}

fn likelihood_row(label: &str, extra: &[String], mu: &Dist, numbers: NumberFormat) -> Vec<String> {
    std::iter::once(label.to_string())
        .chain(extra.iter().cloned())
        .chain(mu.masses().map(|m| numbers.show(m)))
        .collect()
}

fn observation_header(first: &[&str], space: &EvidenceSpace) -> Vec<String> {
    first
        .iter()
        .map(|s| s.to_string())
        .chain(space.observations().map(|o| o.to_string()))
        .collect()
}

pub fn analyze(model: &Model, format: Format) -> Result<String, CliError> {
    let g = &model.space;
    let exact = NumberFormat::default();
    let hyps: Vec<String> = g.hypotheses().map(|h| h.to_string()).collect();
    let obs: Vec<String> = g.observations().map(|o| o.to_string()).collect();
    let first = &g.spaces()[0];
    match g.factorization() {
        Correlation::Uncorrelated(f) => {
            let r = Refinement::build(&f);
            match format {
                Format::Table => {
                    let mut sets = Table::new(observation_header(&["hypothesis", "member"], first));
                    for (h, set) in f.iter() {
                        for (k, mu) in set.iter().enumerate() {
                            sets.row(likelihood_row(h, &[(k + 1).to_string()], mu, exact));
                        }
                    }
                    let mut refined = Table::new(observation_header(&["refined", "coarse"], first));
                    for (fine, coarse) in r.surjection() {
                        let mu = r.refined().likelihood(fine).expect("refined hypothesis");
                        refined.row(likelihood_row(fine, &[coarse.to_string()], mu, exact));
                    }
                    Ok(format!(
                        "hypotheses: {}\nobservations: {}\nmappings: {}\nstatus: uncorrelated\n\nlikelihood sets\n{}\nrefinement\n{}",
                        hyps.join(", "),
                        obs.join(", "),
                        g.len(),
                        sets.render(),
                        refined.render()
                    ))
                }
                Format::Json => {
                    let description = Some(match &model.description {
                        Some(d) => format!("Refinement of: {d}"),
                        None => "Refinement".to_string(),
                    });
                    let refinement = ModelFile::from_space(r.refined(), description);
                    let sets: Map<String, Value> = f
                        .iter()
                        .map(|(h, set)| {
                            let members = set.iter().map(|mu| serde_json::to_value(mu).expect("serializable"));
                            (h.to_string(), Value::Array(members.collect()))
                        })
                        .collect();
                    Ok(to_text(&json!({
                        "hypotheses": hyps,
                        "observations": obs,
                        "mappings": g.len(),
                        "status": "uncorrelated",
                        "likelihood_sets": sets,
                        "surjection": r.surjection(),
                        "refinement": refinement,
                    })))
                }
            }
        }
        Correlation::Correlated(w) => match format {
            Format::Table => {
                let mut table = Table::new(observation_header(&["hypothesis", "from mapping"], first));
                for (h, mu) in w.mapping.iter() {
                    table.row(likelihood_row(h, &[(w.sources[h] + 1).to_string()], mu, exact));
                }
                Ok(format!(
                    "hypotheses: {}\nobservations: {}\nmappings: {}\nstatus: correlated\n\nwitness: a combination of likelihood functions that is not one of the mappings\n{}",
                    hyps.join(", "),
                    obs.join(", "),
                    g.len(),
                    table.render()
                ))
            }
            Format::Json => {
                let sources: Map<String, Value> =
                    w.sources.iter().map(|(h, i)| (h.to_string(), json!(i + 1))).collect();
                Ok(to_text(&json!({
                    "hypotheses": hyps,
                    "observations": obs,
                    "mappings": g.len(),
                    "status": "correlated",
                    "witness": { "mapping": w.mapping, "sources": sources },
                })))
            }
        },
    }
}
