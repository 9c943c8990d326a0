//! Rendering of rationals, choice functions and RCMs.

use std::collections::BTreeMap;

use irum_core::choice::{
    is_rational, AlternativeSet, ChoiceFunction, Menu, PreferenceDistribution, RandomChoiceModel,
};
use irum_core::rational::{to_f64, Rational};
use serde_json::{json, Value};

/// Text formatting of exact values, optionally with a decimal approximation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Style {
    pub decimals: Option<usize>,
}

impl Style {
    pub fn num(&self, v: &Rational) -> String {
        match self.decimals {
            Some(d) if !v.is_integer() => format!("{v} (~{:.*})", d, to_f64(v)),
            _ => v.to_string(),
        }
    }
}

pub fn exact(v: &Rational) -> Value {
    Value::String(v.to_string())
}

pub fn choice_table(alt: &AlternativeSet, c: &ChoiceFunction) -> BTreeMap<String, String> {
    alt.menus()
        .iter()
        .map(|&m| (alt.menu_key(m), alt.label(c.choice(alt, m)).to_string()))
        .collect()
}

pub fn rcm_json(rcm: &RandomChoiceModel) -> Value {
    let alt = rcm.alternatives();
    let support: Vec<Value> = rcm
        .support()
        .iter()
        .map(|(c, w)| {
            json!({
                "weight": exact(w),
                "irrational": is_rational(alt, c).is_none(),
                "choice": choice_table(alt, c),
            })
        })
        .collect();
    json!({ "support": support })
}

fn choice_text(alt: &AlternativeSet, c: &ChoiceFunction) -> String {
    alt.menus()
        .iter()
        .map(|&m| format!("{}->{}", alt.menu_name(m), alt.label(c.choice(alt, m))))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn rcm_text(rcm: &RandomChoiceModel, style: Style) -> Vec<String> {
    let alt = rcm.alternatives();
    rcm.support()
        .iter()
        .map(|(c, w)| {
            let kind = match is_rational(alt, c) {
                Some(p) => format!("rational, {}", alt.preference_name(&p)),
                None => "irrational".to_string(),
            };
            format!("  {}  [{kind}]  {}", style.num(w), choice_text(alt, c))
        })
        .collect()
}

pub fn distribution_json(mu: &PreferenceDistribution) -> Value {
    let alt = mu.alternatives();
    let prefs: Vec<Value> = mu
        .support()
        .iter()
        .map(|(p, w)| {
            let ranking: Vec<&str> = p.ranking().iter().map(|&a| alt.label(a)).collect();
            json!({ "ranking": ranking, "weight": exact(w) })
        })
        .collect();
    json!({ "alternatives": alt.labels(), "preferences": prefs })
}

pub fn distribution_text(mu: &PreferenceDistribution, style: Style) -> String {
    let alt = mu.alternatives();
    let parts: Vec<String> = mu
        .support()
        .iter()
        .map(|(p, w)| format!("{}: {}", alt.preference_name(p), style.num(w)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn menu_json(alt: &AlternativeSet, m: Menu) -> Value {
    Value::String(alt.menu_key(m))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
