//! Bundled corpus: the standard inputs, the two mutants, and the expected
//! verdict sidecars consumed by the integration tests.

use std::path::{Path, PathBuf};

use anyhow::Result;
use serde::{Deserialize, Serialize};

use hallcomb::sset::{nerve_monoid, Monoid, SSet};

use crate::input::{sset_to_input, CellSpec, Input, MorphismSpec};

/// Expected verdicts consumed by the integration tests.
#[derive(Serialize, Deserialize, Debug)]
pub struct Expected {
    pub two_segal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_segal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hall_associative: Option<bool>,
}

pub fn monoid_inputs() -> Vec<(&'static str, Input)> {
    vec![
        (
            "trivial",
            Input::Monoid {
                elements: vec!["e".into()],
                table: vec![vec![0]],
            },
        ),
        (
            "z2",
            Input::Monoid {
                elements: vec!["e".into(), "g".into()],
                table: vec![vec![0, 1], vec![1, 0]],
            },
        ),
        (
            "z3",
            Input::Monoid {
                elements: vec!["e".into(), "g".into(), "h".into()],
                table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            },
        ),
        (
            "absorb3",
            Input::Monoid {
                elements: vec!["e".into(), "a".into(), "z".into()],
                table: vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
            },
        ),
    ]
}

pub fn chain3_input() -> Input {
    Input::Category {
        objects: vec!["0".into(), "1".into(), "2".into()],
        morphisms: vec![
            MorphismSpec { id: "id0".into(), src: "0".into(), tgt: "0".into() },
            MorphismSpec { id: "id1".into(), src: "1".into(), tgt: "1".into() },
            MorphismSpec { id: "id2".into(), src: "2".into(), tgt: "2".into() },
            MorphismSpec { id: "a".into(), src: "0".into(), tgt: "1".into() },
            MorphismSpec { id: "b".into(), src: "1".into(), tgt: "2".into() },
            MorphismSpec { id: "ab".into(), src: "0".into(), tgt: "2".into() },
        ],
        composition: vec![
            ("id0".into(), "id0".into(), "id0".into()),
            ("id1".into(), "id1".into(), "id1".into()),
            ("id2".into(), "id2".into(), "id2".into()),
            ("id0".into(), "a".into(), "a".into()),
            ("a".into(), "id1".into(), "a".into()),
            ("id1".into(), "b".into(), "b".into()),
            ("b".into(), "id2".into(), "b".into()),
            ("id0".into(), "ab".into(), "ab".into()),
            ("ab".into(), "id2".into(), "ab".into()),
            ("a".into(), "b".into(), "ab".into()),
        ],
    }
}

fn z3() -> Monoid {
    Monoid::new(
        vec!["e".into(), "g".into(), "h".into()],
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
    )
    .expect("valid table")
}

fn duplicate_cell(s: &SSet, victim: &str, copy_name: &str) -> Input {
    let mut doc = sset_to_input(s);
    let Input::SimplicialSet { cells, .. } = &mut doc else {
        unreachable!()
    };
    let original = cells
        .iter()
        .find(|c| c.id == victim)
        .expect("victim cell present")
        .clone();
    cells.push(CellSpec {
        id: copy_name.to_string(),
        dim: original.dim,
        faces: original.faces,
    });
    doc
}

/// The two mutants: a parallel copy of a nondegenerate triangle, and of
/// a nondegenerate tetrahedron, both over the three-element cyclic
/// group's nerve.
pub fn mutant_inputs() -> Vec<(&'static str, Input)> {
    let nerve = nerve_monoid(&z3(), 6).expect("nerve of a valid monoid");
    vec![
        ("dup2", duplicate_cell(&nerve, "g.g", "g.g-copy")),
        ("dup3", duplicate_cell(&nerve, "g.g.g", "g.g.g-copy")),
    ]
}

pub fn all_inputs() -> Vec<(&'static str, Input)> {
    let mut v = monoid_inputs();
    v.push(("chain3", chain3_input()));
    v.extend(mutant_inputs());
    v
}

pub fn expected_for(name: &str) -> Expected {
    match name {
        "chain3" => Expected {
            two_segal: true,
            three_segal: Some(true),
            hall_associative: None,
        },
        "dup2" => Expected {
            two_segal: false,
            three_segal: None,
            hall_associative: Some(false),
        },
        "dup3" => Expected {
            two_segal: false,
            three_segal: None,
            hall_associative: Some(true),
        },
        _ => Expected {
            two_segal: true,
            three_segal: Some(true),
            hall_associative: Some(true),
        },
    }
}

pub fn emit(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, doc) in all_inputs() {
        let path: PathBuf = dir.join(format!("{}.json", name));
        std::fs::write(&path, doc.to_json())?;
        written.push(format!("{}.json", name));
        let sidecar = dir.join(format!("{}.expected.json", name));
        let mut text =
            serde_json::to_string_pretty(&expected_for(name)).expect("serializable");
        text.push('\n');
        std::fs::write(&sidecar, text)?;
        written.push(format!("{}.expected.json", name));
    }
    Ok(written)
}
