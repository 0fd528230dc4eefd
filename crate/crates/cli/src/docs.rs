//! Input documents. Every document carries `"version": 1`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use twisted_core::abelian::{FgAbelianGroup, IntegerMatrix};
use twisted_core::groupwords::{FiniteGroupTable, TwistedFiniteGroupStructure};
use twisted_core::spaces::{ComplexViolation, FiniteCategory, OrderedComplex, Space};
use twisted_core::twist::{TwistedAbelianStructure, TwistedSliceStructure, TwistedStructure};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct MorphismDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDoc {
    /// `facets` are closed under faces; `simplices` are taken as given.
    Complex {
        version: u32,
        vertices: Vec<String>,
        #[serde(default)]
        facets: Option<Vec<Vec<String>>>,
        #[serde(default)]
        simplices: Option<Vec<Vec<String>>>,
    },
    Category {
        version: u32,
        objects: Vec<String>,
        #[serde(default)]
        morphisms: Vec<MorphismDoc>,
        /// `[g, f, g∘f]`
        #[serde(default)]
        compose: Vec<[String; 3]>,
    },
}

/// A space together with the problems found while reading it.
pub struct LoadedSpace {
    pub space: Space,
    pub violations: Vec<String>,
}

impl SpaceDoc {
    fn version(&self) -> u32 {
        match self {
            SpaceDoc::Complex { version, .. } | SpaceDoc::Category { version, .. } => *version,
        }
    }

    pub fn build(&self) -> Result<LoadedSpace> {
        check_version(self.version())?;
        match self {
            SpaceDoc::Complex { vertices, facets, simplices, .. } => match (facets, simplices) {
                (Some(f), None) => Ok(LoadedSpace { space: OrderedComplex::from_facets(vertices, f)?.into(), violations: vec![] }),
                (None, Some(s)) => {
                    let (k, mut found) = OrderedComplex::from_simplices(vertices, s);
                    found.extend(k.validate());
                    found.dedup();
                    let violations = found.iter().map(ComplexViolation::to_string).collect();
                    Ok(LoadedSpace { space: k.into(), violations })
                }
                _ => bail!("a complex needs exactly one of `facets` or `simplices`"),
            },
            SpaceDoc::Category { objects, morphisms, compose, .. } => {
                let arrows: Vec<(&str, &str, &str)> =
                    morphisms.iter().map(|m| (m.name.as_str(), m.src.as_str(), m.tgt.as_str())).collect();
                let table: Vec<(&str, &str, &str)> =
                    compose.iter().map(|[g, f, h]| (g.as_str(), f.as_str(), h.as_str())).collect();
                let objects: Vec<&str> = objects.iter().map(String::as_str).collect();
                let c = FiniteCategory::new(&objects, &arrows, &table)?;
                let violations = c.validate().iter().map(ToString::to_string).collect();
                Ok(LoadedSpace { space: c.into(), violations })
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct AbelianGroupDoc {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

/// A scalar `k` stands for `k·I`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Scalar(i64),
    Rows(Vec<Vec<i64>>),
}

impl MatrixDoc {
    fn build(&self, size: usize) -> Result<IntegerMatrix> {
        match self {
            MatrixDoc::Scalar(k) => Ok(IntegerMatrix::scalar(size, *k)),
            MatrixDoc::Rows(rows) => {
                ensure!(
                    rows.len() == size && rows.iter().all(|r| r.len() == size),
                    "expected a {size}x{size} matrix"
                );
                Ok(IntegerMatrix::from_rows(rows))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteGroupDoc {
    Cyclic(usize),
    Symmetric3,
    Table { names: Vec<String>, table: Vec<Vec<String>> },
}

impl FiniteGroupDoc {
    fn build(&self) -> Result<FiniteGroupTable> {
        Ok(match self {
            FiniteGroupDoc::Cyclic(n) => {
                ensure!(*n >= 1, "cyclic group of order 0");
                FiniteGroupTable::cyclic(*n)
            }
            FiniteGroupDoc::Symmetric3 => FiniteGroupTable::symmetric3(),
            FiniteGroupDoc::Table { names, table } => {
                let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
                let rows = table
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| index.get(x.as_str()).copied().with_context(|| format!("unknown element `{x}`")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroupTable::new(names.clone(), rows)?
            }
        })
    }
}

/// An endomorphism of a finite group.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupMapDoc {
    Power(u64),
    ConjugateBy(String),
    /// Image of each element, in table order.
    Images(Vec<String>),
}

impl GroupMapDoc {
    fn build(&self, g: &FiniteGroupTable) -> Result<Vec<usize>> {
        let element = |x: &str| g.element(x).with_context(|| format!("unknown element `{x}`"));
        Ok(match self {
            GroupMapDoc::Power(k) => g.power_map(*k),
            GroupMapDoc::ConjugateBy(x) => g.conjugation(element(x)?),
            GroupMapDoc::Images(xs) => {
                ensure!(xs.len() == g.order(), "{} images for a group of order {}", xs.len(), g.order());
                xs.iter().map(|x| element(x)).collect::<Result<_>>()?
            }
        })
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TwistDoc {
    Abelian { version: u32, group: AbelianGroupDoc, delta: BTreeMap<String, MatrixDoc> },
    FiniteGroup { version: u32, group: FiniteGroupDoc, delta: BTreeMap<String, GroupMapDoc> },
    /// Fibre is the classifying nerve of `group`; `δ_v` is the nerve map of the given endomorphism.
    Slice { version: u32, group: FiniteGroupDoc, delta: BTreeMap<String, GroupMapDoc> },
}

pub enum Twist {
    Abelian(TwistedAbelianStructure),
    FiniteGroup(TwistedFiniteGroupStructure),
    Slice { group: FiniteGroupTable, maps: Vec<(String, Vec<usize>)> },
}

impl Twist {
    pub fn kind(&self) -> &'static str {
        match self {
            Twist::Abelian(_) => "abelian",
            Twist::FiniteGroup(_) => "finite_group",
            Twist::Slice { .. } => "slice",
        }
    }

    pub fn abelian(&self) -> Result<&TwistedAbelianStructure> {
        match self {
            Twist::Abelian(s) => Ok(s),
            other => bail!("this command needs an abelian twist, got `{}`", other.kind()),
        }
    }

    pub fn finite_group(&self) -> Result<&TwistedFiniteGroupStructure> {
        match self {
            Twist::FiniteGroup(s) => Ok(s),
            other => bail!("this command needs a finite_group twist, got `{}`", other.kind()),
        }
    }

    /// The slice twist with its fibre tabulated to degree `cap`.
    pub fn slice(&self, cap: usize) -> Result<TwistedSliceStructure> {
        match self {
            Twist::Slice { group, maps } => {
                let (vertices, maps): (Vec<String>, Vec<_>) =
                    maps.iter().map(|(v, m)| (v.clone(), group.nerve_map(m, cap))).unzip();
                Ok(TwistedStructure::new(group.nerve_slice(cap), vertices, maps)?)
            }
            other => bail!("this command needs a slice twist, got `{}`", other.kind()),
        }
    }
}

impl TwistDoc {
    pub fn build(&self) -> Result<Twist> {
        match self {
            TwistDoc::Abelian { version, group, delta } => {
                check_version(*version)?;
                let g = FgAbelianGroup::from_summary(group.free_rank, &group.torsion);
                let size = g.generators();
                let (vertices, maps) = delta
                    .iter()
                    .map(|(v, m)| Ok((v.clone(), m.build(size).with_context(|| format!("δ_{v}"))?)))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .unzip();
                Ok(Twist::Abelian(TwistedStructure::new(g, vertices, maps)?))
            }
            TwistDoc::FiniteGroup { version, group, delta } => {
                check_version(*version)?;
                let g = group.build()?;
                let (vertices, maps) = group_maps(&g, delta)?.into_iter().unzip();
                Ok(Twist::FiniteGroup(TwistedStructure::new(g, vertices, maps)?))
            }
            TwistDoc::Slice { version, group, delta } => {
                check_version(*version)?;
                let g = group.build()?;
                let maps = group_maps(&g, delta)?;
                for (v, m) in &maps {
                    if let Some((x, y)) = g.homomorphism_violation(m) {
                        bail!("δ_{v} is not a homomorphism at ({}, {})", g.name(x), g.name(y));
                    }
                }
                Ok(Twist::Slice { group: g, maps })
            }
        }
    }
}

fn group_maps(g: &FiniteGroupTable, delta: &BTreeMap<String, GroupMapDoc>) -> Result<Vec<(String, Vec<usize>)>> {
    delta
        .iter()
        .map(|(v, m)| Ok((v.clone(), m.build(g).with_context(|| format!("δ_{v}"))?)))
        .collect()
}

fn check_version(v: u32) -> Result<()> {
    ensure!(v == SCHEMA_VERSION, "unsupported document version {v} (expected {SCHEMA_VERSION})");
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twist(text: &str) -> Result<Twist> {
        serde_json::from_str::<TwistDoc>(text)?.build()
    }

    #[test]
    fn scalar_and_matrix_entries() {
        let t = twist(r#"{"version":1,"kind":"abelian","group":{"free_rank":2},"delta":{"a":3,"b":[[1,1],[0,1]]}}"#).unwrap();
        let s = t.abelian().unwrap();
        assert_eq!(s.map_of("a").unwrap(), &IntegerMatrix::scalar(2, 3));
        assert!(twist(r#"{"version":1,"kind":"abelian","group":{"free_rank":2},"delta":{"a":[[1]]}}"#).is_err());
    }

    #[test]
    fn versions_are_enforced() {
        assert!(twist(r#"{"version":2,"kind":"abelian","group":{"free_rank":1},"delta":{"a":1}}"#).is_err());
        let doc: SpaceDoc = serde_json::from_str(r#"{"version":1,"type":"complex","vertices":["a"],"facets":[]}"#).unwrap();
        assert!(doc.build().is_ok());
    }

    #[test]
    fn group_tables_and_maps() {
        let t = twist(
            r#"{"version":1,"kind":"finite_group","group":{"table":{"names":["e","x"],"table":[["e","x"],["x","e"]]}},
                "delta":{"a":{"images":["e","x"]},"b":{"power":3}}}"#,
        )
        .unwrap();
        assert_eq!(t.finite_group().unwrap().map_of("b").unwrap(), &vec![0, 1]);
        assert!(twist(r#"{"version":1,"kind":"slice","group":"symmetric3","delta":{"a":{"images":["123","123","123","123","123","213"]}}}"#).is_err());
    }

    #[test]
    fn complexes_need_one_description() {
        let doc: SpaceDoc = serde_json::from_str(r#"{"version":1,"type":"complex","vertices":["a"]}"#).unwrap();
        assert!(doc.build().is_err());
    }
}
