//! Command execution and table rendering.

use serde::Serialize;
use thiserror::Error;

use icanon_core::hecke::{BasisExport as HeckeExport, Hecke};
use icanon_core::positivity::{expand_simple, mixed_report, pure_report, PositivityReport, SplitSpec};
use icanon_core::tensor::{build_space, BasisKind, ModuleDescriptor, Variant};
use icanon_core::weyl::{CoxType, GroupElement, ParabolicSet};

use crate::args::{Command, Common, Expansion, Format, Group, Kind, Module};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid --{field}: {message}")]
    Config { field: &'static str, message: String },
    #[error(transparent)]
    Core(#[from] icanon_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use icanon_core::Error as E;
        match self {
            CliError::Config { .. } => 2,
            CliError::Core(
                E::Parse(_)
                | E::InvalidElement(_)
                | E::InvalidParabolic(_)
                | E::InvalidDescriptor(_)
                | E::RankTooSmall { .. }
                | E::RankLimit { .. }
                | E::SizeLimit { .. },
            ) => 2,
            _ => 3,
        }
    }
}

fn config(field: &'static str, message: impl ToString) -> CliError {
    CliError::Config { field, message: message.to_string() }
}

/// Rendered output plus the positivity verdict, if the command has one.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub positive: Option<bool>,
    /// JSON list of negative coefficients.
    pub failures: Option<String>,
}

pub fn execute(cmd: &Command, common: &Common) -> Result<Outcome, CliError> {
    match cmd {
        Command::Kl(g) => {
            let h = hecke(g, common)?;
            let elems = (0..h.group().order())
                .map(|w| Ok(h.export("kl", w, &*h.kl_basis(w)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            render_hecke(&h, "kl", None, None, elems, common.format)
        }
        Command::Pkl { group, j } => {
            let h = hecke(group, common)?;
            let j = parabolic(&h, "J", j)?;
            let m = h.parabolic(j)?;
            let elems = m.reps().iter().map(|&w| Ok(h.export("pkl", w, &*m.kl(w)?))).collect::<Result<Vec<_>, CliError>>()?;
            render_hecke(&h, "pkl", None, Some(j), elems, common.format)
        }
        Command::Hybrid { group, i, j, w } => {
            let h = hecke(group, common)?;
            let i = parabolic(&h, "I", i)?;
            let j = j.as_deref().map(|s| parabolic(&h, "J", s)).transpose()?;
            let targets: Vec<usize> = match w {
                Some(s) => {
                    let e = GroupElement::parse(h.cox_type(), s).map_err(|e| config("w", e))?;
                    let idx = h.group().index_of(&e).map_err(|e| config("w", e))?;
                    if let Some(j) = j {
                        if !h.parabolic(j)?.contains(idx) {
                            return Err(config("w", format!("{e} is not a minimal coset representative for J = {j}")));
                        }
                    }
                    vec![idx]
                }
                None => match j {
                    Some(j) => h.parabolic(j)?.reps().to_vec(),
                    None => (0..h.group().order()).collect(),
                },
            };
            let elems = targets
                .iter()
                .map(|&w| {
                    let v = match j {
                        Some(j) => h.decompose_mj(i, j, w)?,
                        None => h.decompose_gh(i, w)?,
                    };
                    Ok(h.export("hybrid", w, &v))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            render_hecke(&h, "hybrid", Some(i), j, elems, common.format)
        }
        Command::Basis { module, kind } => {
            let desc = descriptor(module, common)?;
            let m = build_space(&desc)?;
            let export = m.export(match kind {
                Kind::Canonical => BasisKind::Canonical,
                Kind::Iota => BasisKind::Iota,
            });
            let bytes = match common.format {
                Format::Json => json(&export)?,
                Format::Text => export.to_text().into_bytes(),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["b", "word", "coefficient"]).map_err(csv_err)?;
                    for e in &export.elements {
                        for (word, c) in &e.terms {
                            w.write_record([word_str(&e.index), word_str(word), c.to_string()]).map_err(csv_err)?;
                        }
                    }
                    w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?
                }
            };
            Ok(Outcome { bytes, positive: None, failures: None })
        }
        Command::Positivity { module, split, expansion, lambda } => {
            let report = match expansion {
                Expansion::Simple => {
                    let lambda = lambda.as_deref().ok_or_else(|| config("lambda", "required for the simple expansion"))?;
                    let lambda: Vec<usize> = if lambda.trim().is_empty() {
                        Vec::new()
                    } else {
                        lambda.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| config("lambda", e))).collect::<Result<_, _>>()?
                    };
                    let variant: Variant = module.variant.parse().map_err(|e| config("variant", e))?;
                    let host = icanon_core::tensor::simple::host_descriptor(module.n, &lambda, variant)?;
                    check_size(&host, common)?;
                    expand_simple(module.n, &lambda, variant)?
                }
                Expansion::Mixed | Expansion::Pure => {
                    let desc = descriptor(module, common)?;
                    let l = split.ok_or_else(|| config("split", "required for mixed and pure expansions"))?;
                    let spec = SplitSpec::new(desc, l).map_err(|e| config("split", e))?;
                    if *expansion == Expansion::Mixed {
                        mixed_report(&spec)?
                    } else {
                        pure_report(&spec)?
                    }
                }
            };
            let bytes = render_report(&report, common.format)?;
            let failures = if report.all_positive() { None } else { Some(String::from_utf8_lossy(&json(&report.failures)?).into_owned()) };
            Ok(Outcome { bytes, positive: Some(report.all_positive()), failures })
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e.to_string()))
}

fn json<T: Serialize>(v: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(v).map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    out.push(b'\n');
    Ok(out)
}

fn word_str(w: &[u8]) -> String {
    icanon_core::tensor::space::word_string(w)
}

fn hecke(g: &Group, common: &Common) -> Result<std::sync::Arc<Hecke>, CliError> {
    let (ty, limit, family) = match g.family.as_str() {
        "A" | "a" => (CoxType::a(g.rank), common.max_rank_a, 'A'),
        _ => (CoxType::b(g.rank), common.max_rank_b, 'B'),
    };
    if g.rank == 0 {
        return Err(config("rank", "must be at least 1"));
    }
    if g.rank > limit {
        return Err(icanon_core::Error::RankLimit { family, rank: g.rank, limit }.into());
    }
    Ok(Hecke::get(ty))
}

fn parabolic(h: &Hecke, field: &'static str, s: &str) -> Result<ParabolicSet, CliError> {
    let set: ParabolicSet = if s.trim().is_empty() { ParabolicSet::empty() } else { s.parse().map_err(|e| config(field, e))? };
    set.validate(h.cox_type())?;
    Ok(set)
}

fn check_size(desc: &ModuleDescriptor, common: &Common) -> Result<(), CliError> {
    let dim = desc.dimension();
    if dim > common.max_dim as u128 {
        return Err(icanon_core::Error::SizeLimit { dim: usize::try_from(dim).unwrap_or(usize::MAX), limit: common.max_dim }.into());
    }
    Ok(())
}

fn descriptor(m: &Module, common: &Common) -> Result<ModuleDescriptor, CliError> {
    let factors = ModuleDescriptor::parse_factors(&m.factors).map_err(|e| config("factors", e))?;
    let variant: Variant = m.variant.parse().map_err(|e| config("variant", e))?;
    let desc = ModuleDescriptor::new(m.n, factors, variant)?;
    check_size(&desc, common)?;
    Ok(desc)
}

#[derive(Serialize)]
struct HeckeTable<'a> {
    #[serde(rename = "type")]
    ty: String,
    basis: &'a str,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    i: Option<String>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    j: Option<String>,
    elements: Vec<HeckeExport>,
}

fn render_hecke(h: &Hecke, basis: &str, i: Option<ParabolicSet>, j: Option<ParabolicSet>, elements: Vec<HeckeExport>, format: Format) -> Result<Outcome, CliError> {
    let bytes = match format {
        Format::Json => json(&HeckeTable { ty: h.cox_type().to_string(), basis, i: i.map(|s| s.to_string()), j: j.map(|s| s.to_string()), elements })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["w", "y", "coefficient"]).map_err(csv_err)?;
            for e in &elements {
                for (y, c) in &e.terms {
                    w.write_record([e.index.as_str(), y.as_str(), &c.to_string()]).map_err(csv_err)?;
                }
            }
            w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?
        }
        Format::Text => {
            let mut out = String::new();
            for e in &elements {
                for (y, c) in &e.terms {
                    out.push_str(&format!("{}\t{}\t{}\n", e.index, y, c));
                }
            }
            out.into_bytes()
        }
    };
    Ok(Outcome { bytes, positive: None, failures: None })
}

fn render_report(r: &PositivityReport, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["b", "b_alpha", "b_beta", "t", "verdict"]).map_err(csv_err)?;
            for x in &r.records {
                w.write_record([&x.b, &x.b_alpha, &x.b_beta, &x.t.to_string(), verdict(x.positive)]).map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
        }
        Format::Text => {
            let mut out = format!(
                "# {} {:?} split={} elements={} coefficients={} positive={}\n",
                r.space,
                r.kind,
                r.split.map(|l| l.to_string()).unwrap_or_else(|| "-".into()),
                r.elements,
                r.coefficients,
                r.positive
            );
            for x in &r.records {
                out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", x.b, x.b_alpha, x.b_beta, x.t, verdict(x.positive)));
            }
            Ok(out.into_bytes())
        }
    }
}

fn verdict(p: bool) -> &'static str {
    if p {
        "ok"
    } else {
        "NEGATIVE"
    }
}
