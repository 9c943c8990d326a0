//! JSON input documents: datasets, preference distributions, RCM families.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use irum_core::choice::{
    AlternativeSet, ChoiceFunction, Menu, PreferenceDistribution, RandomChoiceModel,
    StochasticChoiceFunction,
};
use irum_core::rational::{parse_rational, Rational};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetDoc {
    pub alternatives: Vec<String>,
    pub choices: Vec<ChoiceRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChoiceRow {
    pub menu: Vec<String>,
    pub probs: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionDoc {
    pub alternatives: Vec<String>,
    pub preferences: Vec<RankingWeight>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankingWeight {
    pub ranking: Vec<String>,
    pub weight: String,
}

/// One RCM in the witness schema; `irrational` is recomputed, not trusted.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcmDoc {
    pub support: Vec<RcmMember>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcmMember {
    pub weight: String,
    #[serde(default)]
    pub irrational: Option<bool>,
    pub choice: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub alternatives: Vec<String>,
    pub vertices: Vec<RcmDoc>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn rational(text: &str, what: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("bad {what}"))
}

fn label_index(alt: &AlternativeSet, label: &str) -> Result<usize> {
    alt.index_of(label)
        .with_context(|| format!("unknown label {label:?}"))
}

pub fn parse_dataset(text: &str) -> Result<StochasticChoiceFunction> {
    let doc: DatasetDoc = serde_json::from_str(text).context("malformed dataset")?;
    dataset_from_doc(&doc)
}

pub fn dataset_from_doc(doc: &DatasetDoc) -> Result<StochasticChoiceFunction> {
    let alt = AlternativeSet::new(doc.alternatives.clone())?;
    let mut rows: Vec<Option<Vec<Rational>>> = vec![None; alt.k()];
    for row in &doc.choices {
        if row.menu.len() < 2 {
            bail!("menu {:?} has fewer than 2 members", row.menu);
        }
        let menu = alt.menu_from_labels(&row.menu)?;
        let pos = alt.menu_position(menu).expect("menus with 2+ members are in the domain");
        if rows[pos].is_some() {
            bail!("duplicate menu {}", alt.menu_key(menu));
        }
        for label in row.probs.keys() {
            let a = label_index(&alt, label)?;
            if !menu.contains(a) {
                bail!("label {label:?} is not in menu {}", alt.menu_key(menu));
            }
        }
        let probs = menu
            .members()
            .map(|a| match row.probs.get(alt.label(a)) {
                Some(v) => rational(v, &format!("probability for {:?}", alt.label(a))),
                None => Ok(Rational::default()),
            })
            .collect::<Result<Vec<_>>>()?;
        rows[pos] = Some(probs);
    }
    let rows = rows
        .into_iter()
        .zip(alt.menus())
        .map(|(row, &m)| row.with_context(|| format!("missing menu {}", alt.menu_key(m))))
        .collect::<Result<Vec<_>>>()?;
    Ok(StochasticChoiceFunction::new(&alt, rows)?)
}

pub fn load_dataset(path: &Path) -> Result<StochasticChoiceFunction> {
    parse_dataset(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn parse_distribution(text: &str) -> Result<PreferenceDistribution> {
    let doc: DistributionDoc = serde_json::from_str(text).context("malformed distribution")?;
    let alt = AlternativeSet::new(doc.alternatives)?;
    let weights = doc
        .preferences
        .iter()
        .map(|p| {
            let ranking = p
                .ranking
                .iter()
                .map(|l| label_index(&alt, l))
                .collect::<Result<Vec<_>>>()?;
            let pref = irum_core::Preference::new(alt.n(), ranking)?;
            Ok((pref, rational(&p.weight, "weight")?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PreferenceDistribution::new(&alt, weights)?)
}

pub fn load_distribution(path: &Path) -> Result<PreferenceDistribution> {
    parse_distribution(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn rcm_from_doc(alt: &AlternativeSet, doc: &RcmDoc) -> Result<RandomChoiceModel> {
    let support = doc
        .support
        .iter()
        .map(|m| Ok((choice_from_table(alt, &m.choice)?, rational(&m.weight, "weight")?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RandomChoiceModel::new(alt, support)?)
}

pub fn parse_rcm(alt: &AlternativeSet, text: &str) -> Result<RandomChoiceModel> {
    let doc: RcmDoc = serde_json::from_str(text).context("malformed RCM")?;
    rcm_from_doc(alt, &doc)
}

fn choice_from_table(alt: &AlternativeSet, table: &BTreeMap<String, String>) -> Result<ChoiceFunction> {
    let mut seen = HashSet::new();
    let pairs = table
        .iter()
        .map(|(key, label)| {
            let menu: Menu = alt.parse_menu(key)?;
            if !seen.insert(menu) {
                bail!("menu {key:?} listed twice");
            }
            Ok((menu, label_index(alt, label)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChoiceFunction::from_pairs(alt, &pairs)?)
}

pub fn load_family(path: &Path, alt: &AlternativeSet) -> Result<Vec<RandomChoiceModel>> {
    let text = read(path)?;
    let doc: FamilyDoc = serde_json::from_str(&text)
        .with_context(|| format!("malformed family in {}", path.display()))?;
    if doc.alternatives != alt.labels() {
        bail!("family alternatives {:?} differ from {:?}", doc.alternatives, alt.labels());
    }
    doc.vertices.iter().map(|v| rcm_from_doc(alt, v)).collect()
}
