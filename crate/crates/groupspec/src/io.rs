use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::caps::Caps;
use crate::equations::Word;
use crate::error::{Error, Result};
use crate::ggroup::GGroup;
use crate::group::FiniteGroup;
use crate::lie::{LieAlgebra, LinearMap, PrimeField, SLie};
use crate::morphism::make_morphism_canonical;
use crate::perm::Perm;

/// Group input: either permutation generators or a full table.
///
/// ```json
/// {"kind":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]}
/// {"kind":"table","order":2,"mul":[[0,1],[1,0]]}
/// ```
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupInput {
    Permutation {
        degree: usize,
        generators: Vec<Vec<u32>>,
        #[serde(default)]
        label: Option<String>,
    },
    Table {
        order: usize,
        mul: Vec<Vec<u32>>,
        #[serde(default)]
        label: Option<String>,
    },
}

impl GroupInput {
    pub fn build(&self, caps: &Caps) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupInput::Permutation {
                degree,
                generators,
                label,
            } => {
                let gens: Vec<Perm> = generators
                    .iter()
                    .map(|images| Perm::from_images(images.clone()))
                    .collect::<Result<_>>()?;
                FiniteGroup::from_permutations(
                    label.clone().unwrap_or_else(|| format!("perm:{degree}")),
                    *degree,
                    gens,
                    caps,
                )
            }
            GroupInput::Table { order, mul, label } => {
                if mul.len() != *order {
                    return Err(Error::BadTable(format!(
                        "declared order {order} but {} rows",
                        mul.len()
                    )));
                }
                FiniteGroup::from_table(
                    label.clone().unwrap_or_else(|| format!("table:{order}")),
                    mul.clone(),
                    caps,
                )
            }
        }
    }
}

/// A G-group input: base, ambient, and the images of the base's
/// canonical generators under the embedding.
///
/// For permutation groups the canonical generators are the input
/// generators in order; for table groups they are chosen greedily by
/// ascending id.
#[derive(Debug, Deserialize)]
pub struct GGroupInput {
    pub group: GroupInput,
    pub ambient: GroupInput,
    pub embedding: Vec<u32>,
}

impl GGroupInput {
    pub fn build(&self, caps: &Caps) -> Result<GGroup> {
        let g = self.group.build(caps)?;
        let h = self.ambient.build(caps)?;
        GGroup::new(make_morphism_canonical(&g, &h, &self.embedding)?)
    }
}

/// Lie algebra input: prime, dimension, and bracket entries; missing
/// pairs default to zero.
///
/// ```json
/// {"p":5,"dim":3,"brackets":[{"i":1,"j":0,"coeffs":[2,0,0]}, ...]}
/// ```
#[derive(Debug, Deserialize)]
pub struct LieInput {
    pub p: u32,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<i64>,
}

impl LieInput {
    pub fn build(&self) -> Result<LieAlgebra<PrimeField>> {
        let field = PrimeField::new(self.p)
            .ok_or_else(|| Error::BadLieAlgebra(format!("{} is not prime", self.p)))?;
        let entries: Vec<(usize, usize, Vec<u32>)> = self
            .brackets
            .iter()
            .map(|e| {
                (
                    e.i,
                    e.j,
                    e.coeffs.iter().map(|&c| field.from_int(c)).collect(),
                )
            })
            .collect();
        LieAlgebra::new(
            self.label.clone().unwrap_or_else(|| format!("lie:custom@{}", self.p)),
            field,
            self.dim,
            &entries,
        )
    }
}

/// An S-structure input: base and ambient algebras plus the embedding
/// matrix, one row per base basis vector.
#[derive(Debug, Deserialize)]
pub struct SLieInput {
    pub base: LieInput,
    pub ambient: LieInput,
    pub embedding: Vec<Vec<i64>>,
}

impl SLieInput {
    pub fn build(&self) -> Result<SLie<PrimeField>> {
        let s = self.base.build()?;
        let g = self.ambient.build()?;
        if self.base.p != self.ambient.p {
            return Err(Error::BadLieAlgebra("primes must match".into()));
        }
        let field = s.field().clone();
        if self.embedding.len() != s.dim() || self.embedding.iter().any(|r| r.len() != g.dim()) {
            return Err(Error::Usage("embedding matrix shape mismatch".into()));
        }
        let images: Vec<Vec<u32>> = self
            .embedding
            .iter()
            .map(|row| row.iter().map(|&c| field.from_int(c)).collect())
            .collect();
        let map = LinearMap::new(field, s.dim(), g.dim(), images);
        SLie::new(s, g, map)
    }
}

/// Word-system input: variable count and words as token lists.
///
/// ```json
/// {"variables":2,"words":[[{"const":3},{"var":0,"exp":1},{"const":5},{"var":0,"exp":-1}]]}
/// ```
#[derive(Debug, Deserialize)]
pub struct SystemInput {
    pub variables: usize,
    pub words: Vec<Vec<crate::equations::Letter>>,
}

impl SystemInput {
    pub fn words(&self) -> Vec<Word> {
        self.words.iter().map(|w| Word::new(w.clone())).collect()
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
