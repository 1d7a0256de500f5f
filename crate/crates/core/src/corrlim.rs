//! Cubes of finite sets, limits, pullback cubes, and invertibility of
//! evaluated cubes of correspondences.
//!
//! Positions of an `n`-cube of correspondences live in the poset with
//! coordinates in `{-, 0, +}`, encoded base 3 with direction 1 as the most
//! significant digit: 0 for `-`, 1 for `0`, 2 for `+`. Arrows point from a
//! position with a `0` coordinate to the position with that coordinate
//! pushed to `-` or `+`.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng as _;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flip {
    Minus,
    Plus,
}

const ZERO: usize = 1;

pub fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

pub fn digit(code: usize, dir: usize, dim: usize) -> usize {
    code / pow3(dim - dir) % 3
}

pub fn with_digit(code: usize, dir: usize, dim: usize, d: usize) -> usize {
    let p = pow3(dim - dir);
    code - digit(code, dir, dim) * p + d * p
}

/// Position poset of an `n`-cube of correspondences: `a <= b` when every
/// pushed coordinate of `a` agrees with `b`.
pub struct CorrPoset {
    pub dim: usize,
}

impl CorrPoset {
    pub fn size(&self) -> usize {
        pow3(self.dim)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        (1..=self.dim).all(|dir| {
            let da = digit(a, dir, self.dim);
            da == ZERO || digit(b, dir, self.dim) == da
        })
    }

    pub fn center(&self) -> usize {
        (0..self.dim).fold(0, |c, _| c * 3 + ZERO)
    }
}

/// Product of interval posets: a coordinate for bound `n` is a pair
/// `(m, l)` with `m + l <= n`, read as the interval from `m` to `m + l`,
/// ordered by reverse inclusion of intervals.
pub struct GridPoset {
    pub dims: Vec<usize>,
}

impl GridPoset {
    pub fn coordinate_symbols(n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for m in 0..=n {
            for l in 0..=(n - m) {
                out.push((m, l));
            }
        }
        out
    }

    pub fn elements(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for &n in &self.dims {
            let symbols = Self::coordinate_symbols(n);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    symbols.iter().map(move |&s| {
                        let mut p = prefix.clone();
                        p.push(s);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn size(&self) -> usize {
        self.dims.iter().map(|&n| (n + 1) * (n + 2) / 2).product()
    }

    /// `a <= b` when every coordinate interval of `b` sits inside the one
    /// of `a`.
    pub fn leq(a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
        a.iter()
            .zip(b)
            .all(|(&(m, l), &(m2, l2))| m2 >= m && m2 + l2 <= m + l)
    }
}

/// Checks that the all-ones grid poset is the cube position poset, under
/// the dictionary sending interval `(0,0)` to `-`, `(1,0)` to `+`, and
/// `(0,1)` to `0`.
pub fn grid_cube_dictionary_check(dim: usize) -> Result<()> {
    let grid = GridPoset {
        dims: vec![1; dim],
    };
    let cube = CorrPoset { dim };
    if grid.size() != cube.size() {
        return Err(Error::CheckFailed("size mismatch".into()));
    }
    let to_code = |e: &[(usize, usize)]| -> usize {
        e.iter().fold(0, |c, &s| {
            c * 3
                + match s {
                    (0, 0) => 0,
                    (1, 0) => 2,
                    (0, 1) => 1,
                    _ => unreachable!(),
                }
        })
    };
    let elements = grid.elements();
    for a in &elements {
        for b in &elements {
            if GridPoset::leq(a, b) != cube.leq(to_code(a), to_code(b)) {
                return Err(Error::CheckFailed(format!(
                    "order mismatch between {:?} and {:?}",
                    a, b
                )));
            }
        }
    }
    Ok(())
}

/// Functor from the position poset to finite sets: set sizes per position
/// and one function per elementary arrow.
#[derive(Clone, Debug)]
pub struct EvaluatedCube {
    pub dim: usize,
    /// Sizes indexed by position code.
    pub sets: Vec<usize>,
    /// Function tables for arrows pushing direction `dir` of `code` to the
    /// given side.
    pub maps: HashMap<(usize, usize, Flip), Vec<usize>>,
}

impl EvaluatedCube {
    pub fn try_new(
        dim: usize,
        sets: Vec<usize>,
        maps: HashMap<(usize, usize, Flip), Vec<usize>>,
    ) -> Result<Self> {
        let cube = EvaluatedCube { dim, sets, maps };
        cube.validate()?;
        Ok(cube)
    }

    fn validate(&self) -> Result<()> {
        if self.sets.len() != pow3(self.dim) {
            return Err(Error::InvalidCube(format!(
                "expected {} positions, got {}",
                pow3(self.dim),
                self.sets.len()
            )));
        }
        for code in 0..self.sets.len() {
            for dir in 1..=self.dim {
                if digit(code, dir, self.dim) != ZERO {
                    continue;
                }
                for flip in [Flip::Minus, Flip::Plus] {
                    let tgt = with_digit(code, dir, self.dim, if flip == Flip::Plus { 2 } else { 0 });
                    let f = self.maps.get(&(code, dir, flip)).ok_or_else(|| {
                        Error::InvalidCube(format!(
                            "missing arrow at position {} direction {} ({:?})",
                            code, dir, flip
                        ))
                    })?;
                    if f.len() != self.sets[code] || f.iter().any(|&v| v >= self.sets[tgt]) {
                        return Err(Error::InvalidCube(format!(
                            "arrow at position {} direction {} ({:?}) has wrong shape",
                            code, dir, flip
                        )));
                    }
                }
            }
        }
        // Elementary squares commute.
        for code in 0..self.sets.len() {
            for i in 1..=self.dim {
                for j in (i + 1)..=self.dim {
                    if digit(code, i, self.dim) != ZERO || digit(code, j, self.dim) != ZERO {
                        continue;
                    }
                    for fi in [Flip::Minus, Flip::Plus] {
                        for fj in [Flip::Minus, Flip::Plus] {
                            let di = if fi == Flip::Plus { 2 } else { 0 };
                            let dj = if fj == Flip::Plus { 2 } else { 0 };
                            let via_i = compose_tables(
                                &self.maps[&(code, i, fi)],
                                &self.maps[&(with_digit(code, i, self.dim, di), j, fj)],
                            );
                            let via_j = compose_tables(
                                &self.maps[&(code, j, fj)],
                                &self.maps[&(with_digit(code, j, self.dim, dj), i, fi)],
                            );
                            if via_i != via_j {
                                return Err(Error::InvalidCube(format!(
                                    "square at position {} directions {},{} does not commute",
                                    code, i, j
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Composite function along the canonical path from one position to a
    /// larger one, pushing the smallest direction first.
    pub fn map_between(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        let poset = CorrPoset { dim: self.dim };
        if !poset.leq(from, to) {
            return Err(Error::InvalidArgument(format!(
                "no arrow from position {} to {}",
                from, to
            )));
        }
        let mut table: Vec<usize> = (0..self.sets[from]).collect();
        let mut cur = from;
        for dir in 1..=self.dim {
            let (dc, dt) = (digit(cur, dir, self.dim), digit(to, dir, self.dim));
            if dc == ZERO && dt != ZERO {
                let flip = if dt == 2 { Flip::Plus } else { Flip::Minus };
                table = compose_tables(&table, &self.maps[&(cur, dir, flip)]);
                cur = with_digit(cur, dir, self.dim, dt);
            }
        }
        Ok(table)
    }
}

pub fn compose_tables(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| g[v]).collect()
}

/// Cube-shaped diagram of finite sets, indexed like a one-direction-per-bit
/// cube with the source at mask 0.
#[derive(Clone, Debug)]
pub struct FinSetCube {
    pub dim: usize,
    pub sets: Vec<usize>,
    /// Arrows from `mask` to `mask | bit(dir)`.
    pub maps: HashMap<(usize, usize), Vec<usize>>,
}

impl FinSetCube {
    pub fn bit(&self, dir: usize) -> usize {
        1 << (self.dim - dir)
    }

    pub fn is_commutative(&self) -> bool {
        for mask in 0..(1usize << self.dim) {
            for i in 1..=self.dim {
                for j in (i + 1)..=self.dim {
                    let (bi, bj) = (self.bit(i), self.bit(j));
                    if mask & bi != 0 || mask & bj != 0 {
                        continue;
                    }
                    let via_i =
                        compose_tables(&self.maps[&(mask, i)], &self.maps[&(mask | bi, j)]);
                    let via_j =
                        compose_tables(&self.maps[&(mask, j)], &self.maps[&(mask | bj, i)]);
                    if via_i != via_j {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn composite(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        if from & !to != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {:b} is not below {:b}",
                from, to
            )));
        }
        let mut table: Vec<usize> = (0..self.sets[from]).collect();
        let mut cur = from;
        for dir in 1..=self.dim {
            let bit = self.bit(dir);
            if to & bit != 0 && cur & bit == 0 {
                table = compose_tables(&table, &self.maps[&(cur, dir)]);
                cur |= bit;
            }
        }
        Ok(table)
    }

    pub fn face(&self, dir: usize, positive: bool) -> FinSetCube {
        let bit = self.bit(dir);
        let fixed = if positive { bit } else { 0 };
        let inject = |sub: usize| {
            let high = sub >> (self.dim - dir);
            let low = sub & (bit - 1);
            (high << (self.dim - dir + 1)) | fixed | low
        };
        let sub_dim = self.dim - 1;
        let sets = (0..(1usize << sub_dim)).map(|s| self.sets[inject(s)]).collect();
        let mut maps = HashMap::new();
        for sub in 0..(1usize << sub_dim) {
            for sd in 1..=sub_dim {
                if sub & (1 << (sub_dim - sd)) != 0 {
                    continue;
                }
                let orig = if sd < dir { sd } else { sd + 1 };
                maps.insert((sub, sd), self.maps[&(inject(sub), orig)].clone());
            }
        }
        FinSetCube {
            dim: sub_dim,
            sets,
            maps,
        }
    }
}

/// Finite diagram of sets: node sizes plus function arrows.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub sizes: Vec<usize>,
    pub arrows: Vec<(usize, usize, Vec<usize>)>,
}

/// All matching families of a finite acyclic diagram, each family listing
/// one element per node, in lexicographic order. Nodes with no incoming
/// arrow are enumerated; every other node is forced by its predecessors.
pub fn limit(d: &Diagram) -> Result<Vec<Vec<usize>>> {
    let n = d.sizes.len();
    // Topological order.
    let mut indeg = vec![0usize; n];
    for &(_, t, _) in &d.arrows {
        indeg[t] += 1;
    }
    let mut order: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut remaining = indeg.clone();
    while let Some(v) = queue.pop() {
        order.push(v);
        for &(s, t, _) in &d.arrows {
            if s == v {
                remaining[t] -= 1;
                if remaining[t] == 0 {
                    queue.push(t);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidArgument("diagram has a cycle".into()));
    }
    let incoming: Vec<Vec<&(usize, usize, Vec<usize>)>> = (0..n)
        .map(|v| d.arrows.iter().filter(|&&(_, t, _)| t == v).collect())
        .collect();
    let mut families = Vec::new();
    let mut assignment = vec![usize::MAX; n];
    fn search(
        d: &Diagram,
        order: &[usize],
        incoming: &[Vec<&(usize, usize, Vec<usize>)>],
        assignment: &mut Vec<usize>,
        pos: usize,
        families: &mut Vec<Vec<usize>>,
    ) {
        if pos == order.len() {
            families.push(assignment.clone());
            return;
        }
        let v = order[pos];
        if incoming[v].is_empty() {
            for x in 0..d.sizes[v] {
                assignment[v] = x;
                search(d, order, incoming, assignment, pos + 1, families);
            }
            assignment[v] = usize::MAX;
        } else {
            let forced = incoming[v][0].2[assignment[incoming[v][0].0]];
            if incoming[v]
                .iter()
                .all(|&&(s, _, ref f)| f[assignment[s]] == forced)
            {
                assignment[v] = forced;
                search(d, order, incoming, assignment, pos + 1, families);
                assignment[v] = usize::MAX;
            }
        }
    }
    search(d, &order, &incoming, &mut assignment, 0, &mut families);
    families.sort();
    Ok(families)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PullbackWitness {
    /// Two distinct source elements with the same image family.
    NotInjective(usize, usize),
    /// A matching family over the punctured cube with no preimage, listed
    /// by increasing mask (mask 0 excluded).
    NotSurjective(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub ok: bool,
    pub witness: Option<PullbackWitness>,
}

/// Diagram over the punctured cube (every vertex except the source).
fn punctured_diagram(c: &FinSetCube) -> Diagram {
    let total = 1usize << c.dim;
    let sizes = (1..total).map(|m| c.sets[m]).collect();
    let mut arrows = Vec::new();
    for mask in 1..total {
        for dir in 1..=c.dim {
            let bit = c.bit(dir);
            if mask & bit == 0 {
                arrows.push((mask - 1, (mask | bit) - 1, c.maps[&(mask, dir)].clone()));
            }
        }
    }
    Diagram { sizes, arrows }
}

/// Whether the source of the cube is the limit of the rest, with a witness
/// when it is not.
pub fn is_pullback_cube(c: &FinSetCube) -> Result<PullbackReport> {
    if !c.is_commutative() {
        return Err(Error::InvalidCube("cube does not commute".into()));
    }
    let total = 1usize << c.dim;
    let families = limit(&punctured_diagram(c))?;
    let family_index: HashMap<&Vec<usize>, usize> =
        families.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let composites: Vec<Vec<usize>> = (1..total)
        .map(|mask| c.composite(0, mask).unwrap())
        .collect();
    let mut hit = vec![false; families.len()];
    for x in 0..c.sets[0] {
        let fam: Vec<usize> = (1..total).map(|mask| composites[mask - 1][x]).collect();
        let fi = *family_index.get(&fam).expect("composite family matches");
        if let Some(&prev) = seen.get(&fi) {
            return Ok(PullbackReport {
                ok: false,
                witness: Some(PullbackWitness::NotInjective(prev, x)),
            });
        }
        seen.insert(fi, x);
        hit[fi] = true;
    }
    if let Some(miss) = hit.iter().position(|&h| !h) {
        return Ok(PullbackReport {
            ok: false,
            witness: Some(PullbackWitness::NotSurjective(families[miss].clone())),
        });
    }
    Ok(PullbackReport { ok: true, witness: None })
}

/// Pasting law instance: when the positive face in the given direction is a
/// pullback cube, the whole cube is one exactly when the negative face is.
/// Returns the three verdicts (whole, negative face, equivalence).
pub fn pasting_check(c: &FinSetCube, dir: usize) -> Result<(bool, bool, bool)> {
    let plus = is_pullback_cube(&c.face(dir, true))?;
    if !plus.ok {
        return Err(Error::InvalidArgument(
            "positive face is not a pullback cube".into(),
        ));
    }
    let whole = is_pullback_cube(c)?.ok;
    let minus = is_pullback_cube(&c.face(dir, false))?.ok;
    Ok((whole, minus, whole == minus))
}

/// Random commutative cube, built from the sink downwards: each vertex maps
/// into the limit of the part of the cube strictly above it.
pub fn random_commutative_cube<R: Rng>(rng: &mut R, dim: usize, max_size: usize) -> FinSetCube {
    random_cube_inner(rng, dim, max_size, false)
}

/// Random commutative cube whose positive face in direction 1 is a literal
/// pullback cube.
pub fn random_cube_with_pullback_face<R: Rng>(
    rng: &mut R,
    dim: usize,
    max_size: usize,
) -> FinSetCube {
    random_cube_inner(rng, dim, max_size, true)
}

fn random_cube_inner<R: Rng>(
    rng: &mut R,
    dim: usize,
    max_size: usize,
    pullback_face: bool,
) -> FinSetCube {
    let total = 1usize << dim;
    let mut sets = vec![0usize; total];
    let mut maps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for &mask in &order {
        if mask == total - 1 {
            sets[mask] = rng.gen_range(1..=max_size);
            continue;
        }
        // Limit of the strictly larger part.
        let above: Vec<usize> = (0..total).filter(|&v| v & mask == mask && v != mask).collect();
        let node_of: HashMap<usize, usize> =
            above.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut arrows = Vec::new();
        for &v in &above {
            for dir in 1..=dim {
                let bit = 1 << (dim - dir);
                if v & bit == 0 && (v | bit) & mask == mask {
                    arrows.push((node_of[&v], node_of[&(v | bit)], maps[&(v, dir)].clone()));
                }
            }
        }
        let families = limit(&Diagram {
            sizes: above.iter().map(|&v| sets[v]).collect(),
            arrows,
        })
        .expect("cube diagrams are acyclic");
        let is_pb_slot = pullback_face && mask == 1 << (dim - 1);
        let size = if is_pb_slot {
            families.len()
        } else if families.is_empty() {
            0
        } else {
            rng.gen_range(1..=max_size)
        };
        let choice: Vec<usize> = if is_pb_slot {
            (0..size).collect()
        } else {
            (0..size).map(|_| rng.gen_range(0..families.len())).collect()
        };
        sets[mask] = size;
        for dir in 1..=dim {
            let bit = 1 << (dim - dir);
            if mask & bit != 0 {
                continue;
            }
            let node = node_of[&(mask | bit)];
            maps.insert(
                (mask, dir),
                choice.iter().map(|&f| families[f][node]).collect(),
            );
        }
    }
    FinSetCube { dim, sets, maps }
}

/// Alternating corner positions whose pullback property defines
/// invertibility: direction `i` pushed to `+` for odd `i` in the first,
/// and to `-` for odd `i` in the second.
pub fn alternating_codes(dim: usize) -> (usize, usize) {
    let mut u = 0;
    let mut l = 0;
    for dir in 1..=dim {
        let (du, dl) = if dir % 2 == 1 { (2, 0) } else { (0, 2) };
        u = u * 3 + du;
        l = l * 3 + dl;
    }
    (u, l)
}

/// The sub cube of an evaluated cube spanned between two comparable
/// positions, over the directions where the coordinate actually moves.
pub fn subcube(e: &EvaluatedCube, from: usize, to: usize) -> Result<FinSetCube> {
    let poset = CorrPoset { dim: e.dim };
    if !poset.leq(from, to) {
        return Err(Error::InvalidArgument(format!(
            "position {} is not below {}",
            from, to
        )));
    }
    let moving: Vec<usize> = (1..=e.dim)
        .filter(|&dir| digit(from, dir, e.dim) == ZERO && digit(to, dir, e.dim) != ZERO)
        .collect();
    let k = moving.len();
    let code_at = |mask: usize| {
        let mut c = from;
        for (j, &dir) in moving.iter().enumerate() {
            if mask & (1 << (k - 1 - j)) != 0 {
                c = with_digit(c, dir, e.dim, digit(to, dir, e.dim));
            }
        }
        c
    };
    let sets = (0..(1usize << k)).map(|m| e.sets[code_at(m)]).collect();
    let mut maps = HashMap::new();
    for mask in 0..(1usize << k) {
        for (j, &dir) in moving.iter().enumerate() {
            let bit = 1 << (k - 1 - j);
            if mask & bit != 0 {
                continue;
            }
            let flip = if digit(to, dir, e.dim) == 2 {
                Flip::Plus
            } else {
                Flip::Minus
            };
            maps.insert((mask, j + 1), e.maps[&(code_at(mask), dir, flip)].clone());
        }
    }
    Ok(FinSetCube { dim: k, sets, maps })
}

#[derive(Clone, Debug)]
pub struct InvertibleReport {
    pub upper: PullbackReport,
    pub lower: PullbackReport,
}

impl InvertibleReport {
    pub fn ok(&self) -> bool {
        self.upper.ok && self.lower.ok
    }
}

/// Invertibility of an evaluated cube of correspondences: both alternating
/// sub cubes out of the center must be pullback cubes.
pub fn is_invertible_cube(e: &EvaluatedCube) -> Result<InvertibleReport> {
    let center = CorrPoset { dim: e.dim }.center();
    let (u, l) = alternating_codes(e.dim);
    Ok(InvertibleReport {
        upper: is_pullback_cube(&subcube(e, center, u)?)?,
        lower: is_pullback_cube(&subcube(e, center, l)?)?,
    })
}

/// Span of finite sets with a chosen apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub left: usize,
    pub right: usize,
    pub apex: usize,
    pub to_left: Vec<usize>,
    pub to_right: Vec<usize>,
}

impl Span {
    pub fn identity(n: usize) -> Span {
        Span {
            left: n,
            right: n,
            apex: n,
            to_left: (0..n).collect(),
            to_right: (0..n).collect(),
        }
    }
}

/// Composite span, with the new apex listed as lexicographically ordered
/// matching pairs.
pub fn compose_spans(s1: &Span, s2: &Span) -> Result<(Span, Vec<(usize, usize)>)> {
    if s1.right != s2.left {
        return Err(Error::InvalidArgument(format!(
            "spans do not share a foot: {} vs {}",
            s1.right, s2.left
        )));
    }
    let mut pairs = Vec::new();
    for x in 0..s1.apex {
        for y in 0..s2.apex {
            if s1.to_right[x] == s2.to_left[y] {
                pairs.push((x, y));
            }
        }
    }
    let span = Span {
        left: s1.left,
        right: s2.right,
        apex: pairs.len(),
        to_left: pairs.iter().map(|&(x, _)| s1.to_left[x]).collect(),
        to_right: pairs.iter().map(|&(_, y)| s2.to_right[y]).collect(),
    };
    Ok((span, pairs))
}

fn random_function<R: Rng>(rng: &mut R, src: usize, tgt: usize) -> Vec<usize> {
    (0..src).map(|_| rng.gen_range(0..tgt)).collect()
}

fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        q[v] = i;
    }
    q
}

/// Relabels the elements of each position set by a random bijection,
/// conjugating all arrows.
fn relabel_square<R: Rng>(rng: &mut R, sq: &mut EvaluatedCube, frozen: &[usize]) {
    let perms: Vec<Vec<usize>> = sq
        .sets
        .iter()
        .enumerate()
        .map(|(code, &n)| {
            if frozen.contains(&code) {
                (0..n).collect()
            } else {
                random_permutation(rng, n)
            }
        })
        .collect();
    let inverses: Vec<Vec<usize>> = perms.iter().map(|p| invert(p)).collect();
    let keys: Vec<(usize, usize, Flip)> = sq.maps.keys().copied().collect();
    for key in keys {
        let (code, dir, flip) = key;
        let tgt = with_digit(code, dir, sq.dim, if flip == Flip::Plus { 2 } else { 0 });
        let f = &sq.maps[&key];
        let new: Vec<usize> = inverses[code].iter().map(|&x| perms[tgt][f[x]]).collect();
        sq.maps.insert(key, new);
    }
}

/// Random invertible square of correspondences. Both alternating corners
/// are fiber products of a three-factor product at the center, so
/// invertibility holds by construction; element labels are then shuffled.
pub fn random_invertible_square<R: Rng>(rng: &mut R, max_size: usize) -> EvaluatedCube {
    let b = rng.gen_range(1..=max_size);
    let p = rng.gen_range(1..=max_size);
    let q = rng.gen_range(1..=max_size);
    let a = rng.gen_range(1..=max_size);
    let d = rng.gen_range(1..=max_size);
    let gamma = random_function(rng, b, a);
    let delta = random_function(rng, p, d);
    // Codes (x, y) with x horizontal: code = 3 * x + y, digits -,0,+ as 0,1,2.
    let code = |x: usize, y: usize| 3 * x + y;
    let mut sets = vec![0usize; 9];
    sets[code(1, 1)] = b * p * q;
    sets[code(2, 1)] = b * p;
    sets[code(0, 1)] = b * p;
    sets[code(1, 0)] = b * q;
    sets[code(1, 2)] = p * q;
    sets[code(2, 0)] = b;
    sets[code(0, 2)] = p;
    sets[code(0, 0)] = a;
    sets[code(2, 2)] = d;
    // Center elements are triples (bi, pi, qi) in lexicographic order.
    let enc_bpq = |bi: usize, pi: usize, qi: usize| (bi * p + pi) * q + qi;
    let mut maps = HashMap::new();
    let center: Vec<(usize, usize, usize)> = (0..b)
        .flat_map(|bi| (0..p).flat_map(move |pi| (0..q).map(move |qi| (bi, pi, qi))))
        .collect();
    debug_assert!(center
        .iter()
        .enumerate()
        .all(|(i, &(bi, pi, qi))| enc_bpq(bi, pi, qi) == i));
    maps.insert(
        (code(1, 1), 1, Flip::Plus),
        center.iter().map(|&(bi, pi, _)| bi * p + pi).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(1, 1), 1, Flip::Minus),
        center.iter().map(|&(bi, pi, _)| bi * p + pi).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(1, 1), 2, Flip::Minus),
        center.iter().map(|&(bi, _, qi)| bi * q + qi).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(1, 1), 2, Flip::Plus),
        center.iter().map(|&(_, pi, qi)| pi * q + qi).collect::<Vec<_>>(),
    );
    // Right column B x P: down to B, up to D through P.
    maps.insert(
        (code(2, 1), 2, Flip::Minus),
        (0..b * p).map(|x| x / p).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(2, 1), 2, Flip::Plus),
        (0..b * p).map(|x| delta[x % p]).collect::<Vec<_>>(),
    );
    // Left column B x P: down to A through B, up to P.
    maps.insert(
        (code(0, 1), 2, Flip::Minus),
        (0..b * p).map(|x| gamma[x / p]).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(0, 1), 2, Flip::Plus),
        (0..b * p).map(|x| x % p).collect::<Vec<_>>(),
    );
    // Bottom row B x Q: left to A through B, right to B.
    maps.insert(
        (code(1, 0), 1, Flip::Minus),
        (0..b * q).map(|x| gamma[x / q]).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(1, 0), 1, Flip::Plus),
        (0..b * q).map(|x| x / q).collect::<Vec<_>>(),
    );
    // Top row P x Q: left to P, right to D through P.
    maps.insert(
        (code(1, 2), 1, Flip::Minus),
        (0..p * q).map(|x| x / q).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(1, 2), 1, Flip::Plus),
        (0..p * q).map(|x| delta[x / q]).collect::<Vec<_>>(),
    );
    let mut sq = EvaluatedCube { dim: 2, sets, maps };
    relabel_square(rng, &mut sq, &[]);
    debug_assert!(sq.validate().is_ok());
    sq
}

/// Random pair of invertible squares sharing a row: the bottom row of the
/// first equals the top row of the second, so they compose vertically.
pub fn random_composable_invertible_pair<R: Rng>(
    rng: &mut R,
    max_size: usize,
) -> (EvaluatedCube, EvaluatedCube) {
    let bottom = random_invertible_square(rng, max_size);
    let code = |x: usize, y: usize| 3 * x + y;
    // Shared row: the bottom square's lower boundary.
    let c1 = bottom.sets[code(0, 0)];
    let h1 = bottom.sets[code(1, 0)];
    let d1 = bottom.sets[code(2, 0)];
    let h_to_c = bottom.maps[&(code(1, 0), 1, Flip::Minus)].clone();
    let h_to_d = bottom.maps[&(code(1, 0), 1, Flip::Plus)].clone();
    let f1 = rng.gen_range(1..=max_size);
    let a1 = rng.gen_range(1..=max_size);
    let psi = random_function(rng, f1, c1);
    let rho = random_function(rng, f1, a1);
    // Center: fiber product of psi and the shared-row map over C.
    let mut pairs = Vec::new();
    for f in 0..f1 {
        for h in 0..h1 {
            if psi[f] == h_to_c[h] {
                pairs.push((f, h));
            }
        }
    }
    let z1 = pairs.len();
    let mut sets = vec![0usize; 9];
    sets[code(1, 1)] = z1;
    sets[code(0, 1)] = f1;
    sets[code(1, 2)] = h1;
    sets[code(0, 2)] = c1;
    sets[code(2, 2)] = d1;
    sets[code(2, 1)] = z1;
    sets[code(1, 0)] = z1;
    sets[code(2, 0)] = z1;
    sets[code(0, 0)] = a1;
    let mut maps = HashMap::new();
    let proj_f: Vec<usize> = pairs.iter().map(|&(f, _)| f).collect();
    let proj_h: Vec<usize> = pairs.iter().map(|&(_, h)| h).collect();
    let id: Vec<usize> = (0..z1).collect();
    maps.insert((code(1, 1), 1, Flip::Minus), proj_f.clone());
    maps.insert((code(1, 1), 1, Flip::Plus), id.clone());
    maps.insert((code(1, 1), 2, Flip::Minus), id.clone());
    maps.insert((code(1, 1), 2, Flip::Plus), proj_h.clone());
    maps.insert((code(0, 1), 2, Flip::Minus), rho.clone());
    maps.insert((code(0, 1), 2, Flip::Plus), psi.clone());
    maps.insert(
        (code(2, 1), 2, Flip::Minus),
        id.clone(),
    );
    maps.insert(
        (code(2, 1), 2, Flip::Plus),
        proj_h.iter().map(|&h| h_to_d[h]).collect::<Vec<_>>(),
    );
    maps.insert(
        (code(1, 0), 1, Flip::Minus),
        proj_f.iter().map(|&f| rho[f]).collect::<Vec<_>>(),
    );
    maps.insert((code(1, 0), 1, Flip::Plus), id.clone());
    maps.insert(
        (code(1, 2), 1, Flip::Minus),
        h_to_c.clone(),
    );
    maps.insert(
        (code(1, 2), 1, Flip::Plus),
        h_to_d.clone(),
    );
    let mut top = EvaluatedCube { dim: 2, sets, maps };
    relabel_square(rng, &mut top, &[code(0, 2), code(1, 2), code(2, 2)]);
    debug_assert!(top.validate().is_ok());
    (top, bottom)
}

/// Vertical composite of two squares of correspondences whose shared row
/// agrees: the bottom boundary of `top` must equal the top boundary of
/// `bottom`. Middle-row sets of the composite are fiber products over the
/// shared row, as lexicographically ordered pairs.
pub fn compose_squares_vertical(
    top: &EvaluatedCube,
    bottom: &EvaluatedCube,
) -> Result<EvaluatedCube> {
    if top.dim != 2 || bottom.dim != 2 {
        return Err(Error::InvalidArgument("vertical composition needs squares".into()));
    }
    let code = |x: usize, y: usize| 3 * x + y;
    for x in 0..3 {
        if top.sets[code(x, 2)] != bottom.sets[code(x, 0)] {
            return Err(Error::InvalidArgument(format!(
                "shared row mismatch at column {}",
                x
            )));
        }
    }
    for flip in [Flip::Minus, Flip::Plus] {
        if top.maps[&(code(1, 2), 1, flip)] != bottom.maps[&(code(1, 0), 1, flip)] {
            return Err(Error::InvalidArgument(
                "shared row arrows disagree".into(),
            ));
        }
    }
    let mut columns: Vec<Vec<(usize, usize)>> = Vec::new();
    for x in 0..3 {
        let up = &top.maps[&(code(x, 1), 2, Flip::Plus)];
        let down = &bottom.maps[&(code(x, 1), 2, Flip::Minus)];
        let mut pairs = Vec::new();
        for t in 0..top.sets[code(x, 1)] {
            for bkey in 0..bottom.sets[code(x, 1)] {
                if up[t] == down[bkey] {
                    pairs.push((t, bkey));
                }
            }
        }
        columns.push(pairs);
    }
    let pair_index: Vec<HashMap<(usize, usize), usize>> = columns
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    let mut sets = vec![0usize; 9];
    let mut maps = HashMap::new();
    for x in 0..3 {
        sets[code(x, 0)] = top.sets[code(x, 0)];
        sets[code(x, 2)] = bottom.sets[code(x, 2)];
        sets[code(x, 1)] = columns[x].len();
    }
    for flip in [Flip::Minus, Flip::Plus] {
        maps.insert(
            (code(1, 0), 1, flip),
            top.maps[&(code(1, 0), 1, flip)].clone(),
        );
        maps.insert(
            (code(1, 2), 1, flip),
            bottom.maps[&(code(1, 2), 1, flip)].clone(),
        );
    }
    for x in 0..3 {
        maps.insert(
            (code(x, 1), 2, Flip::Minus),
            columns[x]
                .iter()
                .map(|&(t, _)| top.maps[&(code(x, 1), 2, Flip::Minus)][t])
                .collect::<Vec<_>>(),
        );
        maps.insert(
            (code(x, 1), 2, Flip::Plus),
            columns[x]
                .iter()
                .map(|&(_, bkey)| bottom.maps[&(code(x, 1), 2, Flip::Plus)][bkey])
                .collect::<Vec<_>>(),
        );
    }
    for (flip, x) in [(Flip::Minus, 0), (Flip::Plus, 2)] {
        let ht = &top.maps[&(code(1, 1), 1, flip)];
        let hb = &bottom.maps[&(code(1, 1), 1, flip)];
        maps.insert(
            (code(1, 1), 1, flip),
            columns[1]
                .iter()
                .map(|&(t, bkey)| pair_index[x][&(ht[t], hb[bkey])])
                .collect::<Vec<_>>(),
        );
    }
    EvaluatedCube::try_new(2, sets, maps)
}

/// Seeded trials: generate a vertically composable pair of invertible
/// squares, check both factors and their composite are invertible cubes.
pub fn invertible_composition_check(seed: u64, trials: usize) -> Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (top, bottom) = random_composable_invertible_pair(&mut rng, 3);
        for (name, square) in [("top", &top), ("bottom", &bottom)] {
            if !is_invertible_cube(square)?.ok() {
                return Err(Error::CheckFailed(format!(
                    "trial {}: {} factor is not invertible",
                    trial, name
                )));
            }
        }
        let composite = compose_squares_vertical(&top, &bottom)?;
        if !is_invertible_cube(&composite)?.ok() {
            return Err(Error::CheckFailed(format!(
                "trial {}: composite of invertible squares is not invertible",
                trial
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_sizes_and_dictionary() {
        assert_eq!(GridPoset { dims: vec![1] }.size(), 3);
        assert_eq!(GridPoset { dims: vec![2, 1] }.size(), 18);
        for dim in 1..=3 {
            grid_cube_dictionary_check(dim).unwrap();
        }
    }

    #[test]
    fn limit_of_cospan_is_fiber_product() {
        // 3 -> 2 <- 4 with surjective maps.
        let d = Diagram {
            sizes: vec![3, 2, 4],
            arrows: vec![
                (0, 1, vec![0, 0, 1]),
                (2, 1, vec![0, 1, 0, 1]),
            ],
        };
        let fams = limit(&d).unwrap();
        assert_eq!(fams.len(), 2 * 2 + 1 * 2);
        assert!(fams.contains(&vec![0, 0, 0]));
        assert!(!fams.contains(&vec![0, 0, 1]));
    }

    fn square(sizes: [usize; 4], f: Vec<usize>, g: Vec<usize>, h: Vec<usize>, k: Vec<usize>) -> FinSetCube {
        // Masks: 00 source, 10 dir1, 01 dir2, 11 sink.
        let mut maps = HashMap::new();
        maps.insert((0b00, 1), f);
        maps.insert((0b00, 2), g);
        maps.insert((0b10, 2), h);
        maps.insert((0b01, 1), k);
        FinSetCube {
            dim: 2,
            sets: sizes.to_vec(),
            maps,
        }
    }

    #[test]
    fn pullback_square_detection() {
        // Product square 4 = 2 x 2 over a point.
        let pb = square(
            [4, 2, 2, 1],
            vec![0, 0, 1, 1],
            vec![0, 1, 0, 1],
            vec![0, 0],
            vec![0, 0],
        );
        assert!(is_pullback_cube(&pb).unwrap().ok);
        let not = square(
            [3, 2, 2, 1],
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![0, 0],
            vec![0, 0],
        );
        let r = is_pullback_cube(&not).unwrap();
        assert!(!r.ok);
        assert_eq!(r.witness, Some(PullbackWitness::NotSurjective(vec![1, 1, 0])));
    }

    #[test]
    fn random_cubes_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 2..=4 {
            for _ in 0..20 {
                let c = random_commutative_cube(&mut rng, dim, 4);
                assert!(c.is_commutative());
            }
        }
    }

    #[test]
    fn generated_pullback_face_is_pullback() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let c = random_cube_with_pullback_face(&mut rng, 3, 4);
            assert!(is_pullback_cube(&c.face(1, true)).unwrap().ok);
        }
    }

    #[test]
    fn pasting_holds_on_random_cubes() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for dim in 2..=4 {
            for _ in 0..30 {
                let c = random_cube_with_pullback_face(&mut rng, dim, 3);
                let (_, _, equiv) = pasting_check(&c, 1).unwrap();
                assert!(equiv);
            }
        }
    }

    #[test]
    fn span_composition_associative() {
        let s1 = Span {
            left: 2,
            right: 2,
            apex: 3,
            to_left: vec![0, 1, 1],
            to_right: vec![0, 0, 1],
        };
        let s2 = Span::identity(2);
        let (c, _) = compose_spans(&s1, &s2).unwrap();
        assert_eq!(c.apex, 3);
        assert_eq!(c.to_left, s1.to_left);
        assert_eq!(c.to_right, s1.to_right);
    }

    #[test]
    fn random_squares_are_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let sq = random_invertible_square(&mut rng, 3);
            assert!(is_invertible_cube(&sq).unwrap().ok());
        }
    }

    #[test]
    fn composite_of_invertible_squares_is_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let (top, bottom) = random_composable_invertible_pair(&mut rng, 3);
            assert!(is_invertible_cube(&top).unwrap().ok());
            assert!(is_invertible_cube(&bottom).unwrap().ok());
            let composite = compose_squares_vertical(&top, &bottom).unwrap();
            assert!(is_invertible_cube(&composite).unwrap().ok());
        }
    }

    #[test]
    fn alternating_code_values() {
        assert_eq!(alternating_codes(2), (2 * 3 + 0, 0 * 3 + 2));
        assert_eq!(alternating_codes(3), (2 * 9 + 0 * 3 + 2, 0 * 9 + 2 * 3 + 0));
    }
}
