use std::collections::BTreeMap;
use std::sync::Arc;

use flatquot_core::abgrp::FgAbGroup;
use flatquot_core::grading::MGrading;
use flatquot_core::quotients::ConstantAction;
use flatquot_core::{AlgError, Budget, CoeffField, PresentedAlgebra, Result};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub task: String,
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub ring: Option<RingSpec>,
    #[serde(default)]
    pub grading: Option<GradingSpec>,
    #[serde(default)]
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub descent: Option<DescentSpec>,
    #[serde(default)]
    pub finite_free: Option<FiniteFreeSpec>,
    #[serde(default)]
    pub gallery: Option<GallerySpec>,
    #[serde(default)]
    pub element: Option<String>,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub bound: Option<u32>,
    #[serde(default)]
    pub override_freeness: bool,
    #[serde(default)]
    pub fiber_square: Vec<u64>,
    #[serde(default)]
    pub budget: Option<BudgetSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime(u64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub inverted: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingSpec {
    pub group: String,
    pub degrees: BTreeMap<String, Vec<i64>>,
}

/// A cyclic action by one automorphism, or a full table with one
/// automorphism per element.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub images: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub automorphisms: Option<Vec<BTreeMap<String, String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub gens: usize,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentSpec {
    pub cover: CoverSpec,
    pub module: ModuleSpec,
    #[serde(default)]
    pub phi: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteFreeSpec {
    pub base_gens: Vec<String>,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub elements: Vec<String>,
    #[serde(default)]
    pub zero_locus_q: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GallerySpec {
    pub name: String,
    #[serde(default)]
    pub n: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    pub groebner_steps: Option<u64>,
    pub degree_bound: Option<u32>,
    pub point_cap: Option<u64>,
}

impl JobFile {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(s) = &self.budget {
            b.groebner_steps = s.groebner_steps.unwrap_or(b.groebner_steps);
            b.degree_bound = s.degree_bound.unwrap_or(b.degree_bound);
            b.point_cap = s.point_cap.unwrap_or(b.point_cap);
        }
        b
    }

    pub fn field(&self) -> Result<CoeffField> {
        match &self.field {
            None => Ok(CoeffField::Rationals),
            Some(FieldSpec::Prime(p)) => CoeffField::prime(*p),
            Some(FieldSpec::Name(s)) => parse_field(s),
        }
    }

    pub fn ring(&self) -> Result<Arc<PresentedAlgebra>> {
        let r = self.ring.as_ref().ok_or_else(|| missing("ring"))?;
        let vars: Vec<&str> = r.vars.iter().map(String::as_str).collect();
        let inv: Vec<&str> = r.inverted.iter().map(String::as_str).collect();
        let rels: Vec<&str> = r.relations.iter().map(String::as_str).collect();
        Ok(Arc::new(PresentedAlgebra::parse(self.field()?, &vars, &inv, &rels)?))
    }

    pub fn grading(&self, a: &Arc<PresentedAlgebra>) -> Result<MGrading> {
        let g = self.grading.as_ref().ok_or_else(|| missing("grading"))?;
        let group: FgAbGroup = g.group.parse()?;
        MGrading::from_names(a.clone(), group, &g.degrees)
    }

    pub fn action(&self, a: &Arc<PresentedAlgebra>, budget: &Budget) -> Result<ConstantAction> {
        let act = self.action.as_ref().ok_or_else(|| missing("action"))?;
        let images_of = |m: &BTreeMap<String, String>| -> Result<Vec<flatquot_core::Poly>> {
            for k in m.keys() {
                if !a.visible_names().contains(k) {
                    return Err(AlgError::InvalidInput(format!("action.images: unknown variable {k:?}")));
                }
            }
            a.visible_names()
                .iter()
                .map(|v| match m.get(v) {
                    Some(s) => a.parse_elem(s),
                    None => a.var_by_name(v),
                })
                .collect()
        };
        match (act.order, &act.images, &act.table, &act.automorphisms) {
            (Some(n), Some(images), None, None) => ConstantAction::cyclic(a.clone(), n, images_of(images)?, budget),
            (None, None, Some(table), Some(autos)) => {
                let group = flatquot_core::groups::ConstantGroupScheme::from_table(table.clone())?;
                let maps = autos
                    .iter()
                    .map(|m| flatquot_core::RingMap::new(a.clone(), a.clone(), images_of(m)?, budget))
                    .collect::<Result<Vec<_>>>()?;
                ConstantAction::new(a.clone(), group, maps, budget)
            }
            _ => Err(AlgError::InvalidInput("action: give either order + images or table + automorphisms".into())),
        }
    }
}

pub fn parse_field(s: &str) -> Result<CoeffField> {
    let t = s.trim();
    if matches!(t, "QQ" | "Q" | "QQ[]") {
        return Ok(CoeffField::Rationals);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix("GF"))
        .ok_or_else(|| AlgError::InvalidInput(format!("field: unknown field {s:?}")))?;
    let p: u64 = digits.parse().map_err(|_| AlgError::InvalidInput(format!("field: bad characteristic in {s:?}")))?;
    CoeffField::prime(p)
}

fn missing(what: &str) -> AlgError {
    AlgError::InvalidInput(format!("job is missing the {what:?} section"))
}
