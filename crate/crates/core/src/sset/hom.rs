//! Simplicial subcomplexes of a standard simplex, given by vertex subsets,
//! and their finite hom sets into a simplicial set.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ordcube::OrdMap;
use crate::sset::{SSet, Simplex};

/// Subcomplex of the standard simplex on vertices `0..=ambient`, generated
/// by a set of faces. Generators are kept as an antichain, sorted by
/// descending size then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexComplex {
    ambient: usize,
    generators: Vec<Vec<usize>>,
}

impl VertexComplex {
    pub fn new(ambient: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                return Err(Error::InvalidComplex("empty generator".into()));
            }
            if *g.last().unwrap() > ambient {
                return Err(Error::InvalidComplex(format!(
                    "generator {:?} exceeds ambient vertex {}",
                    g, ambient
                )));
            }
            gens.push(g);
        }
        // Antichain reduction.
        gens.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        gens.dedup();
        let mut reduced: Vec<Vec<usize>> = Vec::new();
        for g in gens {
            if !reduced
                .iter()
                .any(|big| g.iter().all(|v| big.contains(v)))
            {
                reduced.push(g);
            }
        }
        Ok(VertexComplex {
            ambient,
            generators: reduced,
        })
    }

    /// The full standard simplex on vertices `0..=m`.
    pub fn full(m: usize) -> Self {
        VertexComplex {
            ambient: m,
            generators: vec![(0..=m).collect()],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Index of a generator containing the given sorted vertex set.
    pub fn generator_containing(&self, subset: &[usize]) -> Option<usize> {
        self.generators
            .iter()
            .position(|g| subset.iter().all(|v| g.contains(v)))
    }

    pub fn is_subcomplex_of(&self, other: &VertexComplex) -> bool {
        self.ambient == other.ambient
            && self
                .generators
                .iter()
                .all(|g| other.generator_containing(g).is_some())
    }
}

/// Map from a vertex complex into a simplicial set, recorded by its values
/// on the generators, in generator order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HomElement {
    pub values: Vec<Simplex>,
}

#[derive(Clone, Debug)]
pub struct HomSet {
    pub complex: VertexComplex,
    pub elements: Vec<HomElement>,
    index: HashMap<HomElement, usize>,
}

impl HomSet {
    fn new(complex: VertexComplex, mut elements: Vec<HomElement>) -> Self {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        HomSet {
            complex,
            elements,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &HomElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Value of an element on any vertex subset of the complex.
    pub fn value_on(&self, s: &SSet, e: &HomElement, subset: &[usize]) -> Result<Simplex> {
        value_on(s, &self.complex, e, subset)
    }
}

fn positions_in(sub: &[usize], containing: &[usize]) -> Vec<usize> {
    sub.iter()
        .map(|v| containing.iter().position(|w| w == v).unwrap())
        .collect()
}

fn value_on(
    s: &SSet,
    complex: &VertexComplex,
    e: &HomElement,
    subset: &[usize],
) -> Result<Simplex> {
    let gi = complex.generator_containing(subset).ok_or_else(|| {
        Error::InvalidArgument(format!("{:?} is not a face of the complex", subset))
    })?;
    let theta = positions_in(subset, &complex.generators()[gi]);
    s.act(&e.values[gi], &theta)
}

/// All maps from the complex to the simplicial set, by backtracking over
/// generator assignments with agreement enforced on pairwise intersections.
pub fn hom(k: &VertexComplex, s: &SSet) -> Result<HomSet> {
    let gens = k.generators();
    for g in gens {
        if g.len() > s.dim_bound() + 1 {
            return Err(Error::InvalidArgument(format!(
                "generator {:?} exceeds the dimension bound {} of the simplicial set",
                g,
                s.dim_bound()
            )));
        }
    }
    let candidates: Vec<Vec<Simplex>> = gens
        .iter()
        .map(|g| s.materialize(g.len() - 1))
        .collect();
    // For each later generator, the overlap constraints against earlier ones.
    let mut constraints: Vec<Vec<(usize, Vec<usize>, Vec<usize>)>> = vec![Vec::new(); gens.len()];
    for i in 0..gens.len() {
        for j in 0..i {
            let overlap: Vec<usize> = gens[i]
                .iter()
                .copied()
                .filter(|v| gens[j].contains(v))
                .collect();
            if !overlap.is_empty() {
                constraints[i].push((
                    j,
                    positions_in(&overlap, &gens[i]),
                    positions_in(&overlap, &gens[j]),
                ));
            }
        }
    }
    let mut partial: Vec<Simplex> = Vec::new();
    let mut out: Vec<HomElement> = Vec::new();
    fn search(
        s: &SSet,
        candidates: &[Vec<Simplex>],
        constraints: &[Vec<(usize, Vec<usize>, Vec<usize>)>],
        partial: &mut Vec<Simplex>,
        out: &mut Vec<HomElement>,
    ) -> Result<()> {
        let i = partial.len();
        if i == candidates.len() {
            out.push(HomElement {
                values: partial.clone(),
            });
            return Ok(());
        }
        'cand: for x in &candidates[i] {
            for (j, theta_i, theta_j) in &constraints[i] {
                let a = s.act(x, theta_i)?;
                let b = s.act(&partial[*j], theta_j)?;
                if a != b {
                    continue 'cand;
                }
            }
            partial.push(x.clone());
            search(s, candidates, constraints, partial, out)?;
            partial.pop();
        }
        Ok(())
    }
    search(s, &candidates, &constraints, &mut partial, &mut out)?;
    Ok(HomSet::new(k.clone(), out))
}

/// Restriction of a hom element along a vertex map. `vertex_map` sends the
/// vertices of `kw` into the vertices of `kv` and must carry every generator
/// of `kw` into a face of `kv`.
pub fn restrict(
    s: &SSet,
    vertex_map: &OrdMap,
    kw: &VertexComplex,
    kv: &VertexComplex,
    e: &HomElement,
) -> Result<HomElement> {
    if vertex_map.src() != kw.ambient() + 1 || vertex_map.tgt() != kv.ambient() + 1 {
        return Err(Error::InvalidArgument(format!(
            "vertex map of sizes {}->{} between ambients {} and {}",
            vertex_map.src(),
            vertex_map.tgt(),
            kw.ambient(),
            kv.ambient()
        )));
    }
    let mut values = Vec::new();
    for g in kw.generators() {
        let image: Vec<usize> = g.iter().map(|&v| vertex_map.apply(v)).dedup().collect();
        let on_image = value_on(s, kv, e, &image)?;
        let theta: Vec<usize> = g
            .iter()
            .map(|&v| image.iter().position(|&w| w == vertex_map.apply(v)).unwrap())
            .collect();
        values.push(s.act(&on_image, &theta)?);
    }
    Ok(HomElement { values })
}
