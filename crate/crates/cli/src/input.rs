//! Input file model: a JSON document with a top-level kind tag, describing a
//! simplicial set, a monoid, or a category.

use std::collections::HashMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use hallcomb::sset::{Category, Monoid, SSet, Simplex};

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Input {
    SimplicialSet {
        dim_bound: usize,
        cells: Vec<CellSpec>,
    },
    Monoid {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    Category {
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        /// Entries `[f, g, h]` meaning `h` is the composite of `f` followed
        /// by `g`.
        composition: Vec<(String, String, String)>,
    },
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub id: String,
    pub dim: usize,
    /// Face `i` (skipping vertex `i`) as a degeneracy word applied to a cell.
    pub faces: Vec<(Vec<usize>, String)>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl Input {
    pub fn parse(text: &str) -> Result<Input> {
        serde_json::from_str(text).context("malformed input document")
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    /// Realizes the input as a simplicial set. Nerves of monoids and
    /// categories are truncated at `dim_bound`; an explicit simplicial set
    /// keeps its own bound, which must be at least the requested one.
    pub fn realize(&self, dim_bound: usize) -> Result<SSet> {
        match self {
            Input::SimplicialSet { dim_bound: db, cells } => {
                if *db < dim_bound {
                    bail!(
                        "input dimension bound {} is below the required {}",
                        db,
                        dim_bound
                    );
                }
                let index: HashMap<&str, usize> = cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.id.as_str(), i))
                    .collect();
                if index.len() != cells.len() {
                    bail!("duplicate cell id");
                }
                let data = cells
                    .iter()
                    .map(|c| {
                        let faces = c
                            .faces
                            .iter()
                            .map(|(word, id)| {
                                let cell = *index
                                    .get(id.as_str())
                                    .ok_or_else(|| anyhow!("unknown cell id {}", id))?;
                                Ok(Simplex {
                                    word: word.clone(),
                                    cell,
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok((c.id.clone(), c.dim, faces))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SSet::new(*db, data)?)
            }
            Input::Monoid { .. } => {
                let m = self.monoid()?;
                Ok(hallcomb::sset::nerve_monoid(&m, dim_bound)?)
            }
            Input::Category {
                objects,
                morphisms,
                composition,
            } => {
                let mor_index: HashMap<&str, usize> = morphisms
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.id.as_str(), i))
                    .collect();
                let obj_index: HashMap<&str, usize> = objects
                    .iter()
                    .enumerate()
                    .map(|(i, o)| (o.as_str(), i))
                    .collect();
                let mors = morphisms
                    .iter()
                    .map(|m| {
                        let s = *obj_index
                            .get(m.src.as_str())
                            .ok_or_else(|| anyhow!("unknown object {}", m.src))?;
                        let t = *obj_index
                            .get(m.tgt.as_str())
                            .ok_or_else(|| anyhow!("unknown object {}", m.tgt))?;
                        Ok((m.id.clone(), s, t))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut compose = HashMap::new();
                for (f, g, h) in composition {
                    let fi = *mor_index
                        .get(f.as_str())
                        .ok_or_else(|| anyhow!("unknown morphism {}", f))?;
                    let gi = *mor_index
                        .get(g.as_str())
                        .ok_or_else(|| anyhow!("unknown morphism {}", g))?;
                    let hi = *mor_index
                        .get(h.as_str())
                        .ok_or_else(|| anyhow!("unknown morphism {}", h))?;
                    compose.insert((fi, gi), hi);
                }
                // Identities are recognizable from the composition table.
                let identities = objects
                    .iter()
                    .enumerate()
                    .map(|(o, name)| {
                        (0..mors.len())
                            .find(|&i| {
                                mors[i].1 == o
                                    && mors[i].2 == o
                                    && (0..mors.len()).all(|f| {
                                        (mors[f].1 != o || compose.get(&(i, f)) == Some(&f))
                                            && (mors[f].2 != o
                                                || compose.get(&(f, i)) == Some(&f))
                                    })
                            })
                            .ok_or_else(|| anyhow!("no identity for object {}", name))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let cat = Category::new(objects.clone(), mors, compose, identities)?;
                Ok(hallcomb::sset::nerve_category(&cat, dim_bound)?)
            }
        }
    }

    pub fn monoid(&self) -> Result<Monoid> {
        match self {
            Input::Monoid { elements, table } => {
                Ok(Monoid::new(elements.clone(), table.clone())?)
            }
            _ => bail!("expected a monoid input"),
        }
    }
}

/// Rebuilds the document for a simplicial set, used when emitting corpus
/// files for materialized nerves and their mutants.
pub fn sset_to_input(s: &SSet) -> Input {
    let cells = (0..s.cell_count())
        .map(|c| CellSpec {
            id: s.cell_name(c).to_string(),
            dim: s.cell_dim(c),
            faces: s
                .cell_faces(c)
                .iter()
                .map(|f| (f.word.clone(), s.cell_name(f.cell).to_string()))
                .collect(),
        })
        .collect();
    Input::SimplicialSet {
        dim_bound: s.dim_bound(),
        cells,
    }
}
