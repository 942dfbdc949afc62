use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{ControlPolicy, EpiParams, VaccineParams};
use crate::scenario::{InitialConditions, IntegratorSettings, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub name: String,
    pub t0: f64,
    pub t_f: f64,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection {
            name: "baseline".into(),
            t0: 0.0,
            t_f: 365.0,
        }
    }
}

/// A scenario as written in a TOML file. Every omitted key takes its
/// Cape Verde baseline value.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigDocument {
    pub scenario: ScenarioSection,
    pub parameters: EpiParams,
    pub controls: ControlPolicy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vaccine: Option<VaccineParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_conditions: Option<InitialConditions>,
    pub integrator: IntegratorSettings,
}

impl ConfigDocument {
    /// Parses without validating. `origin` only labels errors.
    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigParse {
            path: origin.to_path_buf(),
            message: e.to_string().trim_end().to_string(),
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn to_scenario(&self) -> Scenario {
        Scenario {
            name: self.scenario.name.clone(),
            params: self.parameters,
            controls: self.controls,
            vaccine: self.vaccine,
            initial: self.initial_conditions,
            t0: self.scenario.t0,
            t_f: self.scenario.t_f,
            integrator: self.integrator,
        }
    }

    pub fn from_scenario(s: &Scenario) -> Self {
        ConfigDocument {
            scenario: ScenarioSection {
                name: s.name.clone(),
                t0: s.t0,
                t_f: s.t_f,
            },
            parameters: s.params,
            controls: s.controls,
            vaccine: s.vaccine,
            initial_conditions: s.initial,
            integrator: s.integrator,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.to_scenario().validate()
    }

    /// Applies `key=value` overrides in order, later ones winning.
    ///
    /// Keys are `section.field` or a bare field name that occurs in exactly
    /// one section. Setting a field of an absent optional section creates
    /// it from defaults.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[(S, S)]) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self.clone());
        }
        let mut root = toml::Value::try_from(self).map_err(|e| Error::Serialization(e.to_string()))?;
        let template = key_template();
        for (key, raw) in overrides {
            let (section, field) = resolve_key(&template, key.as_ref())?;
            let value = parse_value(raw.as_ref());
            let table = root
                .as_table_mut()
                .expect("document serializes to a table")
                .entry(section.clone())
                .or_insert_with(|| template[&section].clone());
            table
                .as_table_mut()
                .expect("sections are tables")
                .insert(field, value);
        }
        root.try_into().map_err(|e: toml::de::Error| Error::ConfigParse {
            path: "<overrides>".into(),
            message: e.to_string().trim_end().to_string(),
        })
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn provenance_hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&canonical))
    }
}

/// Every schema key with its default value, optional sections included.
fn key_template() -> toml::value::Table {
    let full = ConfigDocument {
        vaccine: Some(VaccineParams::default()),
        initial_conditions: Some(InitialConditions::outbreak_seed(&EpiParams::default())),
        integrator: IntegratorSettings {
            atol: Some(1e-8),
            ..Default::default()
        },
        ..Default::default()
    };
    match toml::Value::try_from(full).expect("defaults serialize") {
        toml::Value::Table(t) => t,
        _ => unreachable!(),
    }
}

fn resolve_key(template: &toml::value::Table, key: &str) -> Result<(String, String)> {
    let unknown = || Error::UnknownKey(key.to_string());
    if let Some((section, field)) = key.split_once('.') {
        let known = template
            .get(section)
            .and_then(|s| s.as_table())
            .is_some_and(|t| t.contains_key(field));
        return if known { Ok((section.into(), field.into())) } else { Err(unknown()) };
    }
    let hits: Vec<&String> = template
        .iter()
        .filter(|(_, v)| v.as_table().is_some_and(|t| t.contains_key(key)))
        .map(|(s, _)| s)
        .collect();
    match hits.as_slice() {
        [section] => Ok(((*section).clone(), key.into())),
        [] => Err(unknown()),
        _ => Err(Error::UnknownKey(format!("{key} (ambiguous, use section.{key})"))),
    }
}

/// A TOML literal when it parses as one, otherwise a bare string.
fn parse_value(raw: &str) -> toml::Value {
    let raw = raw.trim();
    toml::from_str::<toml::value::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

/// Splits `key=value`.
pub fn parse_override(s: &str) -> Result<(String, String)> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(Error::UnknownKey(format!("{s} (expected key=value)"))),
    }
}

/// Reads, parses and validates a configuration file.
pub fn load_config(path: &Path) -> Result<ConfigDocument> {
    if !path.is_file() {
        return Err(Error::ConfigNotFound(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc = ConfigDocument::from_toml_str(&text, path)?;
    doc.validate()?;
    Ok(doc)
}
