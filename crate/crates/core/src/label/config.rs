use serde::{Deserialize, Serialize};

use super::group::{KernelSpec, LabelGroup};
use crate::error::{Error, Result};

/// JSON description of a label group.
///
/// ```json
/// {"kind": "product_kernel",
///  "base": {"kind": "sym", "n": 2},
///  "kernel": {"kind": "free", "rank": 1},
///  "generators": ["s", "t"],
///  "colors": ["a", "b"]}
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelGroupConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<LabelGroupConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

impl LabelGroupConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<LabelGroup> {
        let mut group = self.build_unnamed()?;
        if let Some(colors) = &self.colors {
            group = group.with_color_names(colors)?;
        }
        Ok(group)
    }

    fn need_n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::Config(format!("kind `{}` needs \"n\"", self.kind)))
    }

    fn build_unnamed(&self) -> Result<LabelGroup> {
        let names = self.generators.as_deref();
        let group = match self.kind.as_str() {
            "trivial" => {
                let names: Vec<&str> = names.unwrap_or(&[]).iter().map(String::as_str).collect();
                return LabelGroup::trivial(self.n.unwrap_or(1), &names);
            }
            "cyclic_rotation" => LabelGroup::cyclic_rotation(self.need_n()?)?,
            "sym" => LabelGroup::sym(self.need_n()?)?,
            "finite_table" => {
                let table = self
                    .table
                    .clone()
                    .ok_or_else(|| Error::Config("finite_table needs \"table\"".into()))?;
                let degree = match (self.n, table.first()) {
                    (Some(n), _) => n,
                    (None, Some(row)) => row.len(),
                    (None, None) => return Err(Error::Config("finite_table needs \"n\" or a non-empty table".into())),
                };
                LabelGroup::finite_table(degree, table)?
            }
            "translation_Z" | "translation_z" => LabelGroup::translation_z(),
            "product_kernel" => {
                let base = self
                    .base
                    .as_ref()
                    .ok_or_else(|| Error::Config("product_kernel needs \"base\"".into()))?
                    .build()?;
                let kernel = self
                    .kernel
                    .as_ref()
                    .ok_or_else(|| Error::Config("product_kernel needs \"kernel\"".into()))?
                    .spec()?;
                LabelGroup::product_kernel(base, kernel)?
            }
            other => return Err(Error::Config(format!("unknown kind `{other}`"))),
        };
        match names {
            Some(names) => group.with_generator_names(names),
            None => Ok(group),
        }
    }
}

impl KernelConfig {
    fn spec(&self) -> Result<KernelSpec> {
        let rank = || self.rank.ok_or_else(|| Error::Config(format!("kernel `{}` needs \"rank\"", self.kind)));
        Ok(match self.kind.as_str() {
            "free" => KernelSpec::Free { rank: rank()? },
            "free_abelian" => KernelSpec::FreeAbelian { rank: rank()? },
            "finite" => KernelSpec::Finite {
                table: self.table.clone().ok_or_else(|| Error::Config("finite kernel needs \"table\"".into()))?,
            },
            other => return Err(Error::Config(format!("unknown kernel kind `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{ColorId, LabelOracle, OracleKind};

    #[test]
    fn product_kernel_from_json() {
        let cfg = LabelGroupConfig::from_json(
            r#"{"kind":"product_kernel","base":{"kind":"sym","n":2},
                "kernel":{"kind":"free","rank":1},"generators":["s","t"],"colors":["a","b"]}"#,
        )
        .unwrap();
        let g = cfg.build().unwrap();
        assert_eq!(g.generator_count(), 2);
        assert_eq!(g.parse_color("b").unwrap(), ColorId(1));
        assert_eq!(g.color_name(ColorId(0)), "a");
        assert!(matches!(g.kind(), OracleKind::ProductKernel { .. }));
    }

    #[test]
    fn trivial_with_generators() {
        let cfg = LabelGroupConfig::from_json(r#"{"kind":"trivial","n":2,"generators":["a"]}"#).unwrap();
        let g = cfg.build().unwrap();
        assert_eq!(g.generator_index("a"), Some(0));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(LabelGroupConfig::from_json(r#"{"kind":"sym"}"#).unwrap().build().is_err());
        assert!(LabelGroupConfig::from_json(r#"{"kind":"nope","n":1}"#).unwrap().build().is_err());
        assert!(LabelGroupConfig::from_json(r#"{"kind":"sym","n":2,"extra":1}"#).is_err());
        let dup = r#"{"kind":"sym","n":3,"generators":["x","x"]}"#;
        assert!(LabelGroupConfig::from_json(dup).unwrap().build().is_err());
    }
}
