//! Command-line front end for `irum-core`.

pub mod input;
pub mod report;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use irum_core::bm::{is_rum, rum_representation, BMTable, MAX_RUM_REPRESENTATION_N};
use irum_core::bounds::{
    satisfies_correlation_bounds, satisfies_weak_correlation_bounds, CorrelationReport,
    MAX_BOUNDS_N,
};
use irum_core::choice::{
    AlternativeSet, PreferenceDistribution, StochasticChoiceFunction, MAX_ALTERNATIVES,
    MAX_CHOICE_FUNCTION_N,
};
use irum_core::demand::{extremal_table, irrational_share_bounds, ContingencyTable, Target, TwoBudgetData};
use irum_core::error::{Error, Result as CoreResult};
use irum_core::falsify::{alpha_bar, coarse_threshold, IrrationalFamily};
use irum_core::rational::parse_rational;
use irum_core::represent::{
    dual_decomposition, dual_irum_construction, equality_anchor, irum_decision, is_irum, is_pirum,
    pirum_representation, rum_decompose_irum_dual,
};
use irum_core::RandomChoiceModel;
use serde_json::{json, Value};

use report::{exact, menu_json, yes_no, Style};

#[derive(Debug, Parser)]
#[command(name = "irum", version, about = "Random utility checks and irrational representations for stochastic choice data")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Lower the alternative limit of the chosen subcommand; values above
    /// the library limit are refused.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Append decimal approximations with this many digits to text output.
    #[arg(long, global = true)]
    pub decimals: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block-Marschak test.
    CheckRum { data: PathBuf },
    /// Every Block-Marschak polynomial, singletons included.
    BmTable { data: PathBuf },
    /// Correlation and weak correlation bounds for every preference.
    Bounds { data: PathBuf },
    /// Whether the data is a RUM with an all-irrational representation.
    Irum { data: PathBuf },
    /// As `irum`, with an all-irrational witness found by LP.
    IrumWitness { data: PathBuf },
    /// Whether the data is a RUM with a partially irrational representation.
    Pirum { data: PathBuf },
    /// A representation with two irrational members.
    PirumWitness {
        data: PathBuf,
        /// Preference distribution representing the data; found by LP if absent.
        #[arg(long)]
        mu: Option<PathBuf>,
    },
    /// Split a RUM into an I-RUM pool and a dual RUM.
    Decompose {
        /// Dataset; its preference distribution is found by LP.
        data: Option<PathBuf>,
        #[arg(long, conflicts_with = "data")]
        mu: Option<PathBuf>,
    },
    /// Uniform swap-function representation of a dual RUM meeting the
    /// correlation bound with equality.
    DualConstruct {
        #[arg(long)]
        mu: PathBuf,
    },
    /// Write a distribution meeting the bound with equality as a mixture of
    /// dual RUMs.
    DualDecompose {
        #[arg(long)]
        mu: PathBuf,
        /// Preference such as `a>b>c`; defaults to the first one where the
        /// bound holds with equality.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Smallest rational share keeping every mixture with the family a RUM.
    AlphaBar {
        #[arg(long)]
        rho_star: PathBuf,
        /// `all`, or `file PATH` with a family document.
        #[arg(long, num_args = 1..=2, value_names = ["all|file", "PATH"], default_values_t = ["all".to_string()])]
        family: Vec<String>,
    },
    /// Bounds on the irrational share for two budgets and two segments.
    Demand {
        /// pi(1|B1) pi(2|B1) pi(1|B2) pi(2|B2)
        #[arg(long, num_args = 4, value_names = ["P11", "P21", "P12", "P22"], allow_hyphen_values = true)]
        pi: Vec<String>,
    },
}

/// A rendered result in both output formats.
pub struct Report {
    pub text: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.join("\n"),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialise"),
        }
    }
}

struct Ctx {
    max_n: Option<usize>,
    style: Style,
}

impl Ctx {
    fn guard(&self, operation: &'static str, alt: &AlternativeSet, max: usize) -> Result<()> {
        let limit = match self.max_n {
            Some(m) if m > max => bail!("--max-n {m} is above the {operation} limit of {max}"),
            Some(m) => m,
            None => max,
        };
        if alt.n() > limit {
            return Err(Error::TooManyAlternatives {
                operation,
                n: alt.n(),
                max: limit,
            }
            .into());
        }
        Ok(())
    }

    fn num(&self, v: &irum_core::Rational) -> String {
        self.style.num(v)
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    Ok(report(cli)?.render(cli.format))
}

pub fn report(cli: &Cli) -> Result<Report> {
    let ctx = Ctx {
        max_n: cli.max_n,
        style: Style {
            decimals: cli.decimals,
        },
    };
    match &cli.command {
        Command::CheckRum { data } => check_rum(&ctx, &load(&ctx, "check-rum", data, MAX_ALTERNATIVES)?),
        Command::BmTable { data } => bm_table(&ctx, &load(&ctx, "bm-table", data, MAX_ALTERNATIVES)?),
        Command::Bounds { data } => bounds(&ctx, &load(&ctx, "bounds", data, MAX_BOUNDS_N)?),
        Command::Irum { data } => irum(&ctx, &load(&ctx, "irum", data, MAX_BOUNDS_N)?, false),
        Command::IrumWitness { data } => {
            irum(&ctx, &load(&ctx, "irum-witness", data, MAX_CHOICE_FUNCTION_N)?, true)
        }
        Command::Pirum { data } => pirum(&ctx, &load(&ctx, "pirum", data, MAX_ALTERNATIVES)?),
        Command::PirumWitness { data, mu } => {
            let max = if mu.is_some() { MAX_ALTERNATIVES } else { MAX_RUM_REPRESENTATION_N };
            let rho = load(&ctx, "pirum-witness", data, max)?;
            pirum_witness(&ctx, &rho, mu.as_ref())
        }
        Command::Decompose { data, mu } => {
            let mu = match (data, mu) {
                (_, Some(path)) => load_mu(&ctx, "decompose", path, MAX_ALTERNATIVES)?,
                (Some(path), None) => {
                    let rho = load(&ctx, "decompose", path, MAX_RUM_REPRESENTATION_N)?;
                    represent_as_rum(&rho)?
                }
                (None, None) => bail!("decompose needs a dataset or --mu"),
            };
            decompose(&ctx, &mu)
        }
        Command::DualConstruct { mu } => {
            dual_construct(&ctx, &load_mu(&ctx, "dual-construct", mu, MAX_ALTERNATIVES)?)
        }
        Command::DualDecompose { mu, anchor } => {
            let mu = load_mu(&ctx, "dual-decompose", mu, MAX_BOUNDS_N)?;
            dual_decompose(&ctx, &mu, anchor.as_deref())
        }
        Command::AlphaBar { rho_star, family } => alpha(&ctx, rho_star, family),
        Command::Demand { pi } => demand(&ctx, pi),
    }
}

fn load(ctx: &Ctx, op: &'static str, path: &Path, max: usize) -> Result<StochasticChoiceFunction> {
    let rho = input::load_dataset(path)?;
    ctx.guard(op, rho.alternatives(), max)?;
    Ok(rho)
}

fn load_mu(ctx: &Ctx, op: &'static str, path: &Path, max: usize) -> Result<PreferenceDistribution> {
    let mu = input::load_distribution(path)?;
    ctx.guard(op, mu.alternatives(), max)?;
    Ok(mu)
}

fn represent_as_rum(rho: &StochasticChoiceFunction) -> Result<PreferenceDistribution> {
    let rcm = rum_representation(rho)?.context("the data is not a RUM")?;
    Ok(PreferenceDistribution::from_rcm(&rcm)?)
}

fn check_rum(ctx: &Ctx, rho: &StochasticChoiceFunction) -> Result<Report> {
    let alt = rho.alternatives();
    let v = is_rum(rho);
    let mut text = vec![format!("RUM: {}", yes_no(v.is_rum))];
    let mut violations = Vec::new();
    for (a, m, value) in &v.violations {
        text.push(format!("  BM({}, {}) = {}", alt.label(*a), alt.menu_name(*m), ctx.num(value)));
        violations.push(json!({ "alternative": alt.label(*a), "menu": menu_json(alt, *m), "value": exact(value) }));
    }
    Ok(Report {
        text,
        json: json!({ "is_rum": v.is_rum, "violations": violations }),
    })
}

fn bm_table(ctx: &Ctx, rho: &StochasticChoiceFunction) -> Result<Report> {
    let alt = rho.alternatives();
    let table = BMTable::new(rho);
    let mut text = Vec::new();
    let mut entries = Vec::new();
    for (a, m, value) in table.entries() {
        text.push(format!("BM({}, {}) = {}", alt.label(a), alt.menu_name(m), ctx.num(value)));
        entries.push(json!({ "alternative": alt.label(a), "menu": menu_json(alt, m), "value": exact(value) }));
    }
    Ok(Report {
        text,
        json: json!({ "entries": entries }),
    })
}

fn bound_report(ctx: &Ctx, alt: &AlternativeSet, name: &str, symbol: &str, r: &CorrelationReport) -> (Vec<String>, Value) {
    let status = if r.is_satisfied() { "satisfied" } else { "violated" };
    let mut text = vec![format!(
        "{name}: {status} (max {} at {})",
        ctx.num(&r.max),
        alt.preference_name(&r.argmax)
    )];
    let mut values = Vec::new();
    for (p, v) in &r.values {
        text.push(format!("  {symbol}({}) = {}", alt.preference_name(p), ctx.num(v)));
        values.push(json!({ "preference": alt.preference_name(p), "value": exact(v) }));
    }
    let violators: Vec<String> = r.violators.iter().map(|p| alt.preference_name(p)).collect();
    let json = json!({
        "satisfied": r.is_satisfied(),
        "max": exact(&r.max),
        "argmax": alt.preference_name(&r.argmax),
        "values": values,
        "violators": violators,
    });
    (text, json)
}

fn bounds(ctx: &Ctx, rho: &StochasticChoiceFunction) -> Result<Report> {
    let alt = rho.alternatives();
    let (mut text, strong) = bound_report(ctx, alt, "correlation bounds", "C", &satisfies_correlation_bounds(rho)?);
    let (weak_text, weak) = bound_report(ctx, alt, "weak correlation bounds", "W", &satisfies_weak_correlation_bounds(rho)?);
    text.extend(weak_text);
    Ok(Report {
        text,
        json: json!({ "correlation": strong, "weak": weak }),
    })
}

fn irum(ctx: &Ctx, rho: &StochasticChoiceFunction, witness: bool) -> Result<Report> {
    let alt = rho.alternatives();
    let v = if witness { is_irum(rho)? } else { irum_decision(rho)? };
    let bounds_text = match (alt.n(), v.bounds_ok) {
        (2, _) => "not applicable",
        (_, true) => "satisfied",
        (_, false) => "violated",
    };
    let mut text = vec![format!(
        "RUM: {}; correlation bounds: {bounds_text}; I-RUM: {}",
        yes_no(v.is_rum),
        yes_no(v.is_irum)
    )];
    let violators: Vec<String> = v.violators.iter().map(|p| alt.preference_name(p)).collect();
    if !violators.is_empty() {
        text.push(format!("violated at: {}", violators.join(", ")));
    }
    if let Some(note) = &v.note {
        text.push(format!("note: {note}"));
    }
    let mut json = json!({
        "is_rum": v.is_rum,
        "bounds_ok": v.bounds_ok,
        "is_irum": v.is_irum,
        "violators": violators,
        "note": v.note,
    });
    if witness {
        if let Some(w) = &v.witness {
            text.push("witness:".into());
            text.extend(report::rcm_text(w, ctx.style));
        }
        json["witness"] = v.witness.as_ref().map_or(Value::Null, report::rcm_json);
    }
    Ok(Report { text, json })
}

fn pirum(_ctx: &Ctx, rho: &StochasticChoiceFunction) -> Result<Report> {
    let alt = rho.alternatives();
    let v = is_pirum(rho);
    let mut text = vec![format!(
        "RUM: {}; condition 3: {}; pI-RUM: {}",
        yes_no(v.is_rum),
        if v.condition3 { "holds" } else { "fails" },
        yes_no(v.is_pirum)
    )];
    let witness = match v.witness_menus {
        Some((big, other, a, b)) => {
            text.push(format!(
                "  menus {} and {} both give positive probability to {} and {}",
                alt.menu_name(big),
                alt.menu_name(other),
                alt.label(a),
                alt.label(b)
            ));
            json!({
                "big": menu_json(alt, big),
                "other": menu_json(alt, other),
                "a": alt.label(a),
                "b": alt.label(b),
            })
        }
        None => Value::Null,
    };
    Ok(Report {
        text,
        json: json!({
            "is_rum": v.is_rum,
            "condition3": v.condition3,
            "is_pirum": v.is_pirum,
            "witness_menus": witness,
        }),
    })
}

fn witness_report(ctx: &Ctx, header: String, json: Value, rcm: Option<&RandomChoiceModel>) -> Report {
    let mut text = vec![header];
    let mut json = json;
    if let Some(rcm) = rcm {
        text.extend(report::rcm_text(rcm, ctx.style));
    }
    json["witness"] = rcm.map_or(Value::Null, report::rcm_json);
    Report { text, json }
}

fn pirum_witness(ctx: &Ctx, rho: &StochasticChoiceFunction, mu: Option<&PathBuf>) -> Result<Report> {
    let v = is_pirum(rho);
    let verdict = json!({ "is_rum": v.is_rum, "condition3": v.condition3, "is_pirum": v.is_pirum });
    if !v.is_pirum {
        return Ok(witness_report(ctx, "pI-RUM: no".into(), verdict, None));
    }
    let mu = match mu {
        Some(path) => input::load_distribution(path)?,
        None => represent_as_rum(rho)?,
    };
    let rcm = pirum_representation(rho, &mu)?;
    Ok(witness_report(ctx, "pI-RUM: yes; witness:".into(), verdict, Some(&rcm)))
}

fn decompose(ctx: &Ctx, mu: &PreferenceDistribution) -> Result<Report> {
    let split = rum_decompose_irum_dual(mu)?;
    let mut text = vec![format!("irrational weight: {}", ctx.num(&split.irrational_weight))];
    if let Some(pool) = &split.irrational_pool {
        text.push("irrational pool:".into());
        text.extend(report::rcm_text(pool, ctx.style));
    }
    text.push(format!(
        "residual dual RUM: {}",
        report::distribution_text(&split.residual_dual, ctx.style)
    ));
    Ok(Report {
        text,
        json: json!({
            "irrational_weight": exact(&split.irrational_weight),
            "irrational_pool": split.irrational_pool.as_ref().map_or(Value::Null, report::rcm_json),
            "residual_dual": report::distribution_json(&split.residual_dual),
        }),
    })
}

fn dual_construct(ctx: &Ctx, mu: &PreferenceDistribution) -> Result<Report> {
    let alt = mu.alternatives();
    let [(p, wp), (q, wq)] = mu.support() else {
        bail!("dual-construct needs exactly two preferences, got {}", mu.support().len());
    };
    let mut orders = vec![(p, wp, q, wq), (q, wq, p, wp)];
    orders.retain(|(_, w1, _, w2)| w1 <= w2);
    let mut last: Option<Error> = None;
    for (p1, m1, p2, m2) in orders {
        match dual_irum_construction(alt, p1, p2, m1, m2) {
            Ok(rcm) => {
                let header = format!(
                    "P1 = {}, P2 = {}; uniform over {} swap functions:",
                    alt.preference_name(p1),
                    alt.preference_name(p2),
                    rcm.support().len()
                );
                let json = json!({ "p1": alt.preference_name(p1), "p2": alt.preference_name(p2) });
                return Ok(witness_report(ctx, header, json, Some(&rcm)));
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one ordering is tried").into())
}

fn dual_decompose(ctx: &Ctx, mu: &PreferenceDistribution, anchor: Option<&str>) -> Result<Report> {
    let alt = mu.alternatives();
    let anchor = match anchor {
        Some(text) => alt.parse_preference(text)?,
        None => equality_anchor(mu)?.context("the correlation bound holds with equality at no preference")?,
    };
    let dec = dual_decomposition(mu, &anchor)?;
    let mut text = vec![format!("anchor: {}", alt.preference_name(&dec.anchor))];
    let mut components = Vec::new();
    for (delta, component) in &dec.components {
        text.push(format!("  {}  {}", ctx.num(delta), report::distribution_text(component, ctx.style)));
        components.push(json!({ "weight": exact(delta), "distribution": report::distribution_json(component) }));
    }
    Ok(Report {
        text,
        json: json!({ "anchor": alt.preference_name(&dec.anchor), "components": components }),
    })
}

fn alpha(ctx: &Ctx, rho_star: &Path, family: &[String]) -> Result<Report> {
    let star = input::load_dataset(rho_star)?;
    let alt = star.alternatives();
    let family = match family {
        [kind] if kind == "all" => {
            ctx.guard("alpha-bar", alt, MAX_CHOICE_FUNCTION_N)?;
            IrrationalFamily::AllRcms
        }
        [kind, path] if kind == "file" => {
            ctx.guard("alpha-bar", alt, MAX_ALTERNATIVES)?;
            IrrationalFamily::Finite(input::load_family(path.as_ref(), alt)?)
        }
        _ => bail!("--family takes `all` or `file PATH`"),
    };
    let r = alpha_bar(&star, &family)?;
    let coarse = coarse_threshold(&star, &family)?;
    let mut text = vec![format!("alpha-bar: {}", ctx.num(&r.alpha_bar))];
    let binding = match r.binding_constraint {
        Some((a, m)) => {
            text.push(format!("binding: BM({}, {})", alt.label(a), alt.menu_name(m)));
            json!({ "alternative": alt.label(a), "menu": menu_json(alt, m) })
        }
        None => Value::Null,
    };
    text.push(format!("coarse threshold: {}", ctx.num(&coarse)));
    if let Some(w) = &r.worst_vertex {
        text.push("worst vertex:".into());
        text.extend(report::rcm_text(w, ctx.style));
    }
    Ok(Report {
        text,
        json: json!({
            "alpha_bar": exact(&r.alpha_bar),
            "binding": binding,
            "coarse_threshold": exact(&coarse),
            "worst_vertex": r.worst_vertex.as_ref().map_or(Value::Null, report::rcm_json),
        }),
    })
}

fn table_json(t: &ContingencyTable) -> Value {
    json!({ "q11": exact(&t.q11), "q12": exact(&t.q12), "q21": exact(&t.q21), "q22": exact(&t.q22) })
}

fn demand(ctx: &Ctx, pi: &[String]) -> Result<Report> {
    let values = pi
        .iter()
        .map(|s| parse_rational(s))
        .collect::<CoreResult<Vec<_>>>()?;
    let [p11, p21, p12, p22] = <[_; 4]>::try_from(values).map_err(|_| anyhow::anyhow!("--pi takes four values"))?;
    let data = TwoBudgetData::new(p11, p21, p12, p22)?;
    let (lo, hi) = irrational_share_bounds(&data)?;
    let min = extremal_table(&data, Target::MinIrrational)?;
    let max = extremal_table(&data, Target::MaxIrrational)?;
    let share = if lo == hi {
        format!("irrational share: exactly {}", ctx.num(&lo))
    } else {
        format!("irrational share: between {} and {}", ctx.num(&lo), ctx.num(&hi))
    };
    let row = |name: &str, t: &ContingencyTable| {
        format!(
            "{name}: q11 = {}, q12 = {}, q21 = {}, q22 = {}",
            ctx.num(&t.q11),
            ctx.num(&t.q12),
            ctx.num(&t.q21),
            ctx.num(&t.q22)
        )
    };
    Ok(Report {
        text: vec![share, row("min table", &min), row("max table", &max)],
        json: json!({
            "lower": exact(&lo),
            "upper": exact(&hi),
            "min_table": table_json(&min),
            "max_table": table_json(&max),
        }),
    })
}
