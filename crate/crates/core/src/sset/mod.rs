//! Finite simplicial sets in normal form.
//!
//! A simplicial set is stored through its nondegenerate cells up to a
//! dimension bound, each cell carrying its faces as simplices. A simplex is
//! a degeneracy word (a weakly increasing surjective value table) applied to
//! a nondegenerate cell, which is the unique normal form of the
//! Eilenberg-Zilber lemma.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ordcube::OrdMap;

pub mod hom;
pub use hom::{hom, restrict, HomElement, HomSet, VertexComplex};

pub type CellId = usize;

/// Simplex in normal form: a surjective degeneracy word applied to a
/// nondegenerate cell. The word maps `0..=k` onto `0..=j` where `k` is the
/// simplex dimension and `j` the cell dimension.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Simplex {
    pub word: Vec<usize>,
    pub cell: CellId,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, cell: CellId) -> Self {
        Simplex {
            word: (0..=dim).collect(),
            cell,
        }
    }

    pub fn dim(&self) -> usize {
        self.word.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| i == v)
    }
}

#[derive(Clone, Debug)]
pub struct SSet {
    dim_bound: usize,
    cell_dim: Vec<usize>,
    /// For a cell of dimension `k > 0`: its `k + 1` faces, index `i` being
    /// the face skipping vertex `i`.
    faces: Vec<Vec<Simplex>>,
    names: Vec<String>,
    cells_by_dim: Vec<Vec<CellId>>,
}

impl SSet {
    pub fn new(
        dim_bound: usize,
        cells: Vec<(String, usize, Vec<Simplex>)>,
    ) -> Result<Self> {
        let mut cell_dim = Vec::new();
        let mut faces = Vec::new();
        let mut names = Vec::new();
        let mut cells_by_dim = vec![Vec::new(); dim_bound + 1];
        for (id, (name, dim, fs)) in cells.into_iter().enumerate() {
            if dim > dim_bound {
                return Err(Error::InvalidSSet(format!(
                    "cell {} has dimension {} above the bound {}",
                    name, dim, dim_bound
                )));
            }
            cell_dim.push(dim);
            faces.push(fs);
            names.push(name);
            cells_by_dim[dim].push(id);
        }
        let s = SSet {
            dim_bound,
            cell_dim,
            faces,
            names,
            cells_by_dim,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn cell_count(&self) -> usize {
        self.cell_dim.len()
    }

    pub fn cell_dim(&self, c: CellId) -> usize {
        self.cell_dim[c]
    }

    pub fn cell_name(&self, c: CellId) -> &str {
        &self.names[c]
    }

    pub fn cells_of_dim(&self, d: usize) -> &[CellId] {
        &self.cells_by_dim[d]
    }

    pub fn cell_faces(&self, c: CellId) -> &[Simplex] {
        &self.faces[c]
    }

    pub fn validate(&self) -> Result<()> {
        for (c, fs) in self.faces.iter().enumerate() {
            let dim = self.cell_dim[c];
            if dim == 0 {
                if !fs.is_empty() {
                    return Err(Error::InvalidSSet(format!(
                        "vertex {} carries faces",
                        self.names[c]
                    )));
                }
                continue;
            }
            if fs.len() != dim + 1 {
                return Err(Error::InvalidSSet(format!(
                    "cell {} of dimension {} has {} faces",
                    self.names[c],
                    dim,
                    fs.len()
                )));
            }
            for (i, f) in fs.iter().enumerate() {
                self.check_simplex(f).map_err(|e| {
                    Error::InvalidSSet(format!("face {} of cell {}: {}", i, self.names[c], e))
                })?;
                if f.dim() + 1 != dim {
                    return Err(Error::InvalidSSet(format!(
                        "face {} of cell {} has dimension {}",
                        i,
                        self.names[c],
                        f.dim()
                    )));
                }
            }
        }
        // Simplicial identities d_i d_j = d_{j-1} d_i for i < j.
        for c in 0..self.cell_count() {
            let dim = self.cell_dim[c];
            if dim < 2 {
                continue;
            }
            let top = Simplex::nondegenerate(dim, c);
            for j in 1..=dim {
                for i in 0..j {
                    let a = self.face_of(&self.face_of(&top, j)?, i)?;
                    let b = self.face_of(&self.face_of(&top, i)?, j - 1)?;
                    if a != b {
                        return Err(Error::InvalidSSet(format!(
                            "identity d_{} d_{} fails on cell {}",
                            i, j, self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_simplex(&self, x: &Simplex) -> Result<()> {
        if x.cell >= self.cell_count() {
            return Err(Error::InvalidSSet(format!("unknown cell {}", x.cell)));
        }
        let word = OrdMap::new(x.word.len(), self.cell_dim[x.cell] + 1, x.word.clone())
            .map_err(|e| Error::InvalidSSet(e.to_string()))?;
        if x.word.first() != Some(&0) || !word.is_surjective() {
            return Err(Error::InvalidSSet(format!(
                "degeneracy word {:?} is not surjective onto the cell dimension",
                x.word
            )));
        }
        Ok(())
    }

    /// Applies the simplicial operator `theta` (a monotone map on vertex
    /// positions, as a value table) to a simplex in normal form. The result
    /// is again in normal form.
    pub fn act(&self, x: &Simplex, theta: &[usize]) -> Result<Simplex> {
        if theta.is_empty() {
            return Err(Error::InvalidArgument("empty operator".into()));
        }
        let u: Vec<usize> = theta
            .iter()
            .map(|&t| {
                x.word.get(t).copied().ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "operator value {} out of range for simplex of dimension {}",
                        t,
                        x.dim()
                    ))
                })
            })
            .collect::<Result<_>>()?;
        for w in u.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidArgument(format!(
                    "operator {:?} is not monotone",
                    theta
                )));
            }
        }
        // Factor as a surjection followed by an injection.
        let image: Vec<usize> = u.iter().copied().dedup().collect();
        let surj: Vec<usize> = u
            .iter()
            .map(|&v| image.binary_search(&v).unwrap())
            .collect();
        let (inj_word, cell) = self.act_injective(x.cell, &image)?;
        let word = surj.iter().map(|&s| inj_word[s]).collect();
        Ok(Simplex { word, cell })
    }

    /// Restriction of a nondegenerate cell along an injective vertex
    /// selection, returning the normal form.
    fn act_injective(&self, cell: CellId, verts: &[usize]) -> Result<(Vec<usize>, CellId)> {
        let dim = self.cell_dim[cell];
        if verts.len() == dim + 1 {
            return Ok(((0..=dim).collect(), cell));
        }
        let missing = (0..=dim)
            .rev()
            .find(|m| !verts.contains(m))
            .expect("strictly fewer vertices than the cell dimension");
        let face = &self.faces[cell][missing];
        let adjusted: Vec<usize> = verts
            .iter()
            .map(|&v| if v > missing { v - 1 } else { v })
            .collect();
        let inner = self.act(face, &adjusted)?;
        Ok((inner.word, inner.cell))
    }

    pub fn face_of(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        let dim = x.dim();
        let theta: Vec<usize> = (0..=dim).filter(|&v| v != i).collect();
        self.act(x, &theta)
    }

    /// All simplices of dimension `k`, in a fixed deterministic order.
    pub fn materialize(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for j in 0..=k.min(self.dim_bound) {
            let words = degeneracy_words(k, j);
            for &cell in &self.cells_by_dim[j] {
                for word in &words {
                    out.push(Simplex {
                        word: word.clone(),
                        cell,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Human readable label for a simplex.
    pub fn describe(&self, x: &Simplex) -> String {
        if x.is_nondegenerate() {
            self.names[x.cell].clone()
        } else {
            format!("{}{:?}", self.names[x.cell], x.word)
        }
    }

    /// Adds one nondegenerate cell of dimension `k` with the given faces,
    /// which must satisfy the simplicial identities against each other.
    pub fn attach_cell(&self, name: &str, k: usize, boundary: Vec<Simplex>) -> Result<SSet> {
        if k == 0 || k > self.dim_bound {
            return Err(Error::InvalidArgument(format!(
                "cannot attach a cell of dimension {}",
                k
            )));
        }
        if boundary.len() != k + 1 {
            return Err(Error::InvalidArgument(format!(
                "a {}-cell needs {} faces, got {}",
                k,
                k + 1,
                boundary.len()
            )));
        }
        let mut cells: Vec<(String, usize, Vec<Simplex>)> = (0..self.cell_count())
            .map(|c| {
                (
                    self.names[c].clone(),
                    self.cell_dim[c],
                    self.faces[c].clone(),
                )
            })
            .collect();
        cells.push((name.to_string(), k, boundary));
        SSet::new(self.dim_bound, cells)
    }
}

/// All weakly increasing surjections from `0..=k` onto `0..=j` as value
/// tables, in lexicographic order.
pub fn degeneracy_words(k: usize, j: usize) -> Vec<Vec<usize>> {
    if j > k {
        return Vec::new();
    }
    // Choose the j positions (out of k) where the value increases.
    (1..=k)
        .combinations(j)
        .map(|steps| {
            let mut word = Vec::with_capacity(k + 1);
            let mut v = 0;
            for p in 0..=k {
                if steps.contains(&p) {
                    v += 1;
                }
                word.push(v);
            }
            word
        })
        .collect()
}

/// Finite monoid given by a multiplication table.
#[derive(Clone, Debug)]
pub struct Monoid {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl Monoid {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("table shape mismatch".into()));
        }
        if table
            .iter()
            .flatten()
            .any(|&v| v >= n)
        {
            return Err(Error::InvalidArgument("table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidArgument("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidArgument(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Monoid {
            elements,
            table,
            identity,
        })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// Finite category given by objects, morphisms, and a composition table.
#[derive(Clone, Debug)]
pub struct Category {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, usize, usize)>,
    /// `compose[(f, g)]` is the composite `g . f` for composable `f, g`.
    pub compose: HashMap<(usize, usize), usize>,
    pub identities: Vec<usize>,
}

impl Category {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        compose: HashMap<(usize, usize), usize>,
        identities: Vec<usize>,
    ) -> Result<Self> {
        let cat = Category {
            objects,
            morphisms,
            compose,
            identities,
        };
        let n = cat.morphisms.len();
        if cat.identities.len() != cat.objects.len() {
            return Err(Error::InvalidArgument(
                "one identity per object required".into(),
            ));
        }
        for (o, &i) in cat.identities.iter().enumerate() {
            let (_, s, t) = cat.morphisms[i];
            if s != o || t != o {
                return Err(Error::InvalidArgument(format!(
                    "identity of object {} has wrong endpoints",
                    cat.objects[o]
                )));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let (_, _, tf) = cat.morphisms[f];
                let (_, sg, _) = cat.morphisms[g];
                let composable = tf == sg;
                match cat.compose.get(&(f, g)) {
                    Some(&h) => {
                        if !composable {
                            return Err(Error::InvalidArgument(format!(
                                "composite defined for non composable pair ({}, {})",
                                cat.morphisms[f].0, cat.morphisms[g].0
                            )));
                        }
                        let (_, sf, _) = cat.morphisms[f];
                        let (_, _, tg) = cat.morphisms[g];
                        if cat.morphisms[h].1 != sf || cat.morphisms[h].2 != tg {
                            return Err(Error::InvalidArgument(format!(
                                "composite of ({}, {}) has wrong endpoints",
                                cat.morphisms[f].0, cat.morphisms[g].0
                            )));
                        }
                    }
                    None => {
                        if composable {
                            return Err(Error::InvalidArgument(format!(
                                "missing composite for ({}, {})",
                                cat.morphisms[f].0, cat.morphisms[g].0
                            )));
                        }
                    }
                }
            }
        }
        for f in 0..n {
            let (_, s, t) = cat.morphisms[f];
            if cat.compose[&(cat.identities[s], f)] != f || cat.compose[&(f, cat.identities[t])] != f
            {
                return Err(Error::InvalidArgument(format!(
                    "identity law fails at {}",
                    cat.morphisms[f].0
                )));
            }
        }
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if let (Some(&fg), Some(&gh)) =
                        (cat.compose.get(&(f, g)), cat.compose.get(&(g, h)))
                    {
                        if cat.compose[&(fg, h)] != cat.compose[&(f, gh)] {
                            return Err(Error::InvalidArgument(format!(
                                "associativity fails at ({}, {}, {})",
                                cat.morphisms[f].0, cat.morphisms[g].0, cat.morphisms[h].0
                            )));
                        }
                    }
                }
            }
        }
        Ok(cat)
    }
}

fn tuple_name(names: &[&str]) -> String {
    if names.is_empty() {
        "()".to_string()
    } else {
        names.join(".")
    }
}

/// Normal form of a tuple of monoid elements that may contain identities:
/// the degeneracy word repeats positions at identity entries and the cell is
/// the tuple with identities removed.
fn monoid_normal_form(
    m: &Monoid,
    tuple: &[usize],
    cell_of: &HashMap<Vec<usize>, CellId>,
) -> Simplex {
    let mut word = vec![0usize];
    let mut reduced = Vec::new();
    let mut v = 0;
    for &t in tuple {
        if t != m.identity {
            reduced.push(t);
            v += 1;
        }
        word.push(v);
    }
    Simplex {
        word,
        cell: cell_of[&reduced],
    }
}

/// Nerve of a finite monoid up to the dimension bound. Nondegenerate
/// `k`-cells are `k`-tuples of non-identity elements.
pub fn nerve_monoid(m: &Monoid, dim_bound: usize) -> Result<SSet> {
    let non_identity: Vec<usize> = (0..m.elements.len())
        .filter(|&x| x != m.identity)
        .collect();
    let mut tuples_by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut cell_of: HashMap<Vec<usize>, CellId> = HashMap::new();
    let mut next_id = 0;
    for k in 0..=dim_bound {
        let tuples: Vec<Vec<usize>> = (0..k)
            .map(|_| non_identity.iter().copied())
            .multi_cartesian_product()
            .collect();
        let tuples = if k == 0 { vec![Vec::new()] } else { tuples };
        for t in &tuples {
            cell_of.insert(t.clone(), next_id);
            next_id += 1;
        }
        tuples_by_dim.push(tuples);
    }
    let mut cells = Vec::new();
    for (k, tuples) in tuples_by_dim.iter().enumerate() {
        for t in tuples {
            let name = tuple_name(&t.iter().map(|&x| m.elements[x].as_str()).collect_vec());
            let mut fs = Vec::new();
            if k > 0 {
                for i in 0..=k {
                    let face_tuple: Vec<usize> = if i == 0 {
                        t[1..].to_vec()
                    } else if i == k {
                        t[..k - 1].to_vec()
                    } else {
                        let mut ft = t[..i - 1].to_vec();
                        ft.push(m.mul(t[i - 1], t[i]));
                        ft.extend_from_slice(&t[i + 1..]);
                        ft
                    };
                    fs.push(monoid_normal_form(m, &face_tuple, &cell_of));
                }
            }
            cells.push((name, k, fs));
        }
    }
    SSet::new(dim_bound, cells)
}

/// Nerve of a finite category up to the dimension bound. Nondegenerate
/// `k`-cells are composable chains of non-identity morphisms.
pub fn nerve_category(cat: &Category, dim_bound: usize) -> Result<SSet> {
    let is_id: Vec<bool> = (0..cat.morphisms.len())
        .map(|f| cat.identities.contains(&f))
        .collect();
    let mut chains_by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim_bound + 1];
    chains_by_dim[0] = (0..cat.objects.len()).map(|o| vec![o]).collect();
    if dim_bound >= 1 {
        chains_by_dim[1] = (0..cat.morphisms.len())
            .filter(|&f| !is_id[f])
            .map(|f| vec![f])
            .collect();
        for k in 2..=dim_bound {
            let mut out = Vec::new();
            for prev in &chains_by_dim[k - 1] {
                let last_tgt = cat.morphisms[*prev.last().unwrap()].2;
                for f in 0..cat.morphisms.len() {
                    if !is_id[f] && cat.morphisms[f].1 == last_tgt {
                        let mut c = prev.clone();
                        c.push(f);
                        out.push(c);
                    }
                }
            }
            chains_by_dim[k] = out;
        }
    }
    // Key cells by (level, chain) where level 0 holds object indices and
    // level 1 holds morphism chains, so the two index spaces stay apart.
    let mut cell_of: HashMap<(usize, Vec<usize>), CellId> = HashMap::new();
    let mut next_id = 0;
    for (k, chains) in chains_by_dim.iter().enumerate() {
        for c in chains {
            cell_of.insert((if k == 0 { 0 } else { 1 }, c.clone()), next_id);
            next_id += 1;
        }
    }
    let normal_form = |chain: &[usize], src_obj: usize| -> Simplex {
        let mut word = vec![0usize];
        let mut reduced = Vec::new();
        let mut v = 0;
        for &f in chain {
            if !is_id[f] {
                reduced.push(f);
                v += 1;
            }
            word.push(v);
        }
        let key = if reduced.is_empty() {
            (0, vec![src_obj])
        } else {
            (1, reduced)
        };
        Simplex {
            word,
            cell: cell_of[&key],
        }
    };
    let mut cells = Vec::new();
    for (k, chains) in chains_by_dim.iter().enumerate() {
        for c in chains {
            if k == 0 {
                cells.push((cat.objects[c[0]].clone(), 0, Vec::new()));
                continue;
            }
            let name = tuple_name(&c.iter().map(|&f| cat.morphisms[f].0.as_str()).collect_vec());
            let mut fs = Vec::new();
            for i in 0..=k {
                if k == 1 {
                    let (_, s, t) = cat.morphisms[c[0]];
                    let obj = if i == 0 { t } else { s };
                    fs.push(Simplex {
                        word: vec![0],
                        cell: cell_of[&(0, vec![obj])],
                    });
                    continue;
                }
                let (chain, src): (Vec<usize>, usize) = if i == 0 {
                    (c[1..].to_vec(), cat.morphisms[c[1]].1)
                } else if i == k {
                    (c[..k - 1].to_vec(), cat.morphisms[c[0]].1)
                } else {
                    let mut ch = c[..i - 1].to_vec();
                    ch.push(cat.compose[&(c[i - 1], c[i])]);
                    ch.extend_from_slice(&c[i + 1..]);
                    (ch, cat.morphisms[c[0]].1)
                };
                fs.push(normal_form(&chain, src));
            }
            cells.push((name, k, fs));
        }
    }
    SSet::new(dim_bound, cells)
}
