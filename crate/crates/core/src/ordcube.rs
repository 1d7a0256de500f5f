//! Finite ordinals, monotone maps, and commutative cubes of ordinals.
//!
//! An ordinal of size `n` has elements `0..n`; the empty ordinal is allowed.
//! Cubes of dimension `n` are indexed by bit masks over `n` directions,
//! direction 1 being the most significant bit. Every edge points from a
//! vertex to the vertex with one more bit set.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Monotone map between finite ordinals, stored as its value table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrdMap {
    src: usize,
    tgt: usize,
    values: Vec<usize>,
}

impl OrdMap {
    pub fn new(src: usize, tgt: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != src {
            return Err(Error::InvalidMap(format!(
                "value table has length {} for source of size {}",
                values.len(),
                src
            )));
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidMap(format!("not monotone: {:?}", values)));
            }
        }
        if let Some(&last) = values.last() {
            if last >= tgt {
                return Err(Error::InvalidMap(format!(
                    "value {} out of range for target of size {}",
                    last, tgt
                )));
            }
        }
        Ok(OrdMap { src, tgt, values })
    }

    pub fn identity(n: usize) -> Self {
        OrdMap {
            src: n,
            tgt: n,
            values: (0..n).collect(),
        }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjective(&self) -> bool {
        let mut next = 0;
        for &v in &self.values {
            if v == next {
                next += 1;
            }
        }
        next == self.tgt
    }

    /// Composite `g . self`, applying `self` first.
    pub fn then(&self, g: &OrdMap) -> Result<OrdMap> {
        if self.tgt != g.src {
            return Err(Error::InvalidMap(format!(
                "cannot compose: target {} != source {}",
                self.tgt, g.src
            )));
        }
        Ok(OrdMap {
            src: self.src,
            tgt: g.tgt,
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        })
    }

    /// Blockwise union: acts as `self` on the first block and as a shifted
    /// copy of `other` on the second.
    pub fn ordered_union(&self, other: &OrdMap) -> OrdMap {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + self.tgt));
        OrdMap {
            src: self.src + other.src,
            tgt: self.tgt + other.tgt,
            values,
        }
    }
}

/// The surjection out of an ordinal of size `m` that merges the two elements
/// at positions `i-1` and `i`, for `1 <= i <= m-1`.
pub fn surjection(m: usize, i: usize) -> Result<OrdMap> {
    if i == 0 || i + 1 > m {
        return Err(Error::InvalidArgument(format!(
            "no merge surjection with index {} out of size {}",
            i, m
        )));
    }
    let values = (0..m).map(|x| if x < i { x } else { x - 1 }).collect();
    OrdMap::new(m, m - 1, values)
}

/// Contravariant action on cut sets. For `f` from a size-`a` ordinal to a
/// size-`b` ordinal this is a map on cut positions, sending cut `k` of the
/// target to the number of source elements mapped below `k`.
pub fn cut_pullback(f: &OrdMap) -> OrdMap {
    let values = (0..=f.tgt)
        .map(|k| f.values.iter().filter(|&&v| v < k).count())
        .collect();
    OrdMap {
        src: f.tgt + 1,
        tgt: f.src + 1,
        values,
    }
}

/// Commutative cube of ordinals. Vertices are stored as sizes indexed by
/// mask; one monotone map per edge.
#[derive(Clone, PartialEq, Debug)]
pub struct PlusCube {
    dim: usize,
    vertices: Vec<usize>,
    edges: HashMap<(usize, usize), OrdMap>,
}

impl PlusCube {
    pub fn try_new(
        dim: usize,
        vertices: Vec<usize>,
        edges: HashMap<(usize, usize), OrdMap>,
    ) -> Result<Self> {
        if vertices.len() != 1 << dim {
            return Err(Error::InvalidCube(format!(
                "expected {} vertices, got {}",
                1usize << dim,
                vertices.len()
            )));
        }
        let cube = PlusCube {
            dim,
            vertices,
            edges,
        };
        cube.validate()?;
        Ok(cube)
    }

    pub fn validate(&self) -> Result<()> {
        for mask in 0..(1usize << self.dim) {
            for dir in 1..=self.dim {
                let bit = self.bit(dir);
                if mask & bit != 0 {
                    continue;
                }
                let e = self.edges.get(&(mask, dir)).ok_or_else(|| {
                    Error::InvalidCube(format!("missing edge at mask {:b} direction {}", mask, dir))
                })?;
                if e.src() != self.vertices[mask] || e.tgt() != self.vertices[mask | bit] {
                    return Err(Error::InvalidCube(format!(
                        "edge at mask {:b} direction {} has sizes {}->{}, vertices are {} and {}",
                        mask,
                        dir,
                        e.src(),
                        e.tgt(),
                        self.vertices[mask],
                        self.vertices[mask | bit]
                    )));
                }
            }
        }
        for mask in 0..(1usize << self.dim) {
            for i in 1..=self.dim {
                for j in (i + 1)..=self.dim {
                    let (bi, bj) = (self.bit(i), self.bit(j));
                    if mask & bi != 0 || mask & bj != 0 {
                        continue;
                    }
                    let via_i = self.edge(mask, i).then(self.edge(mask | bi, j))?;
                    let via_j = self.edge(mask, j).then(self.edge(mask | bj, i))?;
                    if via_i != via_j {
                        return Err(Error::InvalidCube(format!(
                            "square at mask {:b} directions {},{} does not commute",
                            mask, i, j
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bit(&self, dir: usize) -> usize {
        1 << (self.dim - dir)
    }

    pub fn vertex(&self, mask: usize) -> usize {
        self.vertices[mask]
    }

    pub fn edge(&self, mask: usize, dir: usize) -> &OrdMap {
        &self.edges[&(mask, dir)]
    }

    /// Composite along the path from `from` to `to` that always flips the
    /// smallest remaining direction first. Commutativity makes the choice of
    /// path irrelevant; this one is the canonical representative.
    pub fn composite(&self, from: usize, to: usize) -> Result<OrdMap> {
        if from & !to != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {:b} is not below mask {:b}",
                from, to
            )));
        }
        let mut map = OrdMap::identity(self.vertices[from]);
        let mut cur = from;
        for dir in 1..=self.dim {
            let bit = self.bit(dir);
            if to & bit != 0 && cur & bit == 0 {
                map = map.then(self.edge(cur, dir))?;
                cur |= bit;
            }
        }
        Ok(map)
    }

    /// The face where direction `dir` is frozen: at 1 if `positive`, else 0.
    pub fn face(&self, dir: usize, positive: bool) -> PlusCube {
        let bit = self.bit(dir);
        let fixed = if positive { bit } else { 0 };
        let inject = |sub: usize| -> usize {
            let high = sub >> (self.dim - dir);
            let low = sub & (bit - 1);
            (high << (self.dim - dir + 1)) | fixed | low
        };
        let sub_dim = self.dim - 1;
        let vertices = (0..(1usize << sub_dim))
            .map(|sub| self.vertices[inject(sub)])
            .collect();
        let mut edges = HashMap::new();
        for sub in 0..(1usize << sub_dim) {
            for sd in 1..=sub_dim {
                if sub & (1 << (sub_dim - sd)) != 0 {
                    continue;
                }
                let orig_dir = if sd < dir { sd } else { sd + 1 };
                edges.insert((sub, sd), self.edges[&(inject(sub), orig_dir)].clone());
            }
        }
        PlusCube {
            dim: sub_dim,
            vertices,
            edges,
        }
    }

    /// Directions along which every edge is an identity.
    pub fn degenerate_directions(&self) -> Vec<usize> {
        (1..=self.dim)
            .filter(|&dir| {
                let bit = self.bit(dir);
                (0..(1usize << self.dim))
                    .filter(|m| m & bit == 0)
                    .all(|m| self.edges[&(m, dir)].is_identity())
            })
            .collect()
    }

    /// Blockwise union: a cube of dimension `self.dim + other.dim` whose
    /// first block of directions acts through `self` and second through
    /// `other`, with vertex sizes added.
    pub fn ordered_union(&self, other: &PlusCube) -> PlusCube {
        let dim = self.dim + other.dim;
        let split = |mask: usize| (mask >> other.dim, mask & ((1 << other.dim) - 1));
        let vertices = (0..(1usize << dim))
            .map(|mask| {
                let (m1, m2) = split(mask);
                self.vertices[m1] + other.vertices[m2]
            })
            .collect();
        let mut edges = HashMap::new();
        for mask in 0..(1usize << dim) {
            for dir in 1..=dim {
                if mask & (1 << (dim - dir)) != 0 {
                    continue;
                }
                let (m1, m2) = split(mask);
                let map = if dir <= self.dim {
                    self.edges[&(m1, dir)].ordered_union(&OrdMap::identity(other.vertices[m2]))
                } else {
                    OrdMap::identity(self.vertices[m1])
                        .ordered_union(&other.edges[&(m2, dir - self.dim)])
                };
                edges.insert((mask, dir), map);
            }
        }
        PlusCube {
            dim,
            vertices,
            edges,
        }
    }
}

fn depth(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// The associator cube of dimension `n`. Vertex at a mask with `k` bits set
/// is the ordinal of size `n + 1 - k`; the edge in the `j`-th smallest free
/// direction at a vertex of size `m` merges elements `j-1` and `j`.
pub fn associator_cube(n: usize) -> PlusCube {
    let vertices: Vec<usize> = (0..(1usize << n)).map(|mask| n + 1 - depth(mask)).collect();
    let mut edges = HashMap::new();
    for mask in 0..(1usize << n) {
        let m = n + 1 - depth(mask);
        let mut j = 0;
        for dir in 1..=n {
            if mask & (1 << (n - dir)) != 0 {
                continue;
            }
            j += 1;
            edges.insert((mask, dir), surjection(m, j).expect("merge index in range"));
        }
    }
    PlusCube {
        dim: n,
        vertices,
        edges,
    }
}

/// Composes edge maps along every source-to-sink path. All composites must
/// agree; returns the number of paths.
pub fn source_sink_paths(c: &PlusCube) -> Result<usize> {
    let n = c.dim();
    let sink = (1usize << n) - 1;
    let mut composites: Vec<OrdMap> = Vec::new();
    let mut stack: Vec<(usize, OrdMap)> = vec![(0, OrdMap::identity(c.vertex(0)))];
    while let Some((mask, acc)) = stack.pop() {
        if mask == sink {
            composites.push(acc);
            continue;
        }
        for dir in 1..=n {
            let bit = c.bit(dir);
            if mask & bit == 0 {
                let next = acc.then(c.edge(mask, dir))?;
                stack.push((mask | bit, next));
            }
        }
    }
    if let Some(first) = composites.first() {
        if composites.iter().any(|m| m != first) {
            return Err(Error::CheckFailed(
                "source-to-sink composites disagree".into(),
            ));
        }
    }
    Ok(composites.len())
}

/// Exhaustively enumerates all assignments of merge surjections to the cube
/// edges on the associator vertex sizes, keeps the commutative ones whose
/// edges realize every merge surjection, and checks that they are exactly
/// the direction permutations of `associator_cube(n)`. Returns how many
/// such labelings exist.
pub fn verify_unique_associator(n: usize) -> Result<usize> {
    if n > 3 {
        return Err(Error::InvalidArgument(format!(
            "exhaustive labeling search is bounded at dimension 3, got {}",
            n
        )));
    }
    let reference = associator_cube(n);
    // Edges ordered by source depth so squares close early during search.
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for mask in 0..(1usize << n) {
        for dir in 1..=n {
            if mask & (1 << (n - dir)) == 0 {
                slots.push((mask, dir));
            }
        }
    }
    slots.sort_by_key(|&(mask, dir)| (depth(mask), mask, dir));
    let slot_index: HashMap<(usize, usize), usize> = slots
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();

    let mut assigned: Vec<Option<OrdMap>> = vec![None; slots.len()];
    let mut found: Vec<Vec<OrdMap>> = Vec::new();
    fn squares_ok(
        n: usize,
        slots: &[(usize, usize)],
        slot_index: &HashMap<(usize, usize), usize>,
        assigned: &[Option<OrdMap>],
        just: usize,
    ) -> bool {
        let (mask, dir) = slots[just];
        // Every square containing the new edge: ones based at its source,
        // and ones where it is the far leg across an already flipped
        // direction.
        let mut bases: Vec<(usize, usize, usize)> = Vec::new();
        for other in 1..=n {
            if other == dir {
                continue;
            }
            let bo = 1 << (n - other);
            let (i, j) = if dir < other { (dir, other) } else { (other, dir) };
            if mask & bo == 0 {
                bases.push((mask, i, j));
            } else {
                bases.push((mask & !bo, i, j));
            }
        }
        for (base, i, j) in bases {
            let (bi, bj) = (1 << (n - i), 1 << (n - j));
            let quad = [
                slot_index[&(base, i)],
                slot_index[&(base | bi, j)],
                slot_index[&(base, j)],
                slot_index[&(base | bj, i)],
            ];
            if quad.iter().any(|&q| assigned[q].is_none()) {
                continue;
            }
            let via_i = assigned[quad[0]]
                .as_ref()
                .unwrap()
                .then(assigned[quad[1]].as_ref().unwrap())
                .unwrap();
            let via_j = assigned[quad[2]]
                .as_ref()
                .unwrap()
                .then(assigned[quad[3]].as_ref().unwrap())
                .unwrap();
            if via_i != via_j {
                return false;
            }
        }
        true
    }
    fn search(
        n: usize,
        slots: &[(usize, usize)],
        slot_index: &HashMap<(usize, usize), usize>,
        assigned: &mut Vec<Option<OrdMap>>,
        pos: usize,
        found: &mut Vec<Vec<OrdMap>>,
    ) {
        if pos == slots.len() {
            found.push(assigned.iter().map(|e| e.clone().unwrap()).collect());
            return;
        }
        let (mask, _dir) = slots[pos];
        let m = n + 1 - depth(mask);
        for i in 1..m {
            assigned[pos] = Some(surjection(m, i).unwrap());
            if squares_ok(n, slots, slot_index, assigned, pos) {
                search(n, slots, slot_index, assigned, pos + 1, found);
            }
        }
        assigned[pos] = None;
    }
    search(n, &slots, &slot_index, &mut assigned, 0, &mut found);

    // Keep only labelings realizing every merge surjection p^m_i.
    let complete: Vec<Vec<OrdMap>> = found
        .into_iter()
        .filter(|edges| {
            (2..=n + 1).all(|m| (1..m).all(|i| edges.contains(&surjection(m, i).unwrap())))
        })
        .collect();

    // Expected solutions: the reference cube with its directions permuted.
    let mut expected: Vec<Vec<OrdMap>> = Vec::new();
    for perm in (1..=n).permutations(n) {
        let labeling: Vec<OrdMap> = slots
            .iter()
            .map(|&(mask, dir)| {
                let mut src_mask = 0usize;
                for d in 1..=n {
                    if mask & (1 << (n - d)) != 0 {
                        src_mask |= 1 << (n - perm[d - 1]);
                    }
                }
                reference.edge(src_mask, perm[dir - 1]).clone()
            })
            .collect();
        if !expected.contains(&labeling) {
            expected.push(labeling);
        }
    }

    let all_expected = complete.iter().all(|l| expected.contains(l))
        && expected.iter().all(|l| complete.contains(l));
    if !all_expected {
        return Err(Error::CheckFailed(format!(
            "found {} commutative complete labelings in dimension {}, not matching \
             the {} direction permutations of the associator cube",
            complete.len(),
            n,
            expected.len()
        )));
    }
    Ok(complete.len())
}

#[derive(Clone, Debug)]
pub struct FaceCheck {
    pub dir: usize,
    pub plus_is_associator: bool,
    /// Dimensions of the two blocks the negative face splits into.
    pub minus_split: (usize, usize),
    pub minus_is_union: bool,
}

#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub n: usize,
    pub faces: Vec<FaceCheck>,
}

impl BoundaryReport {
    pub fn all_ok(&self) -> bool {
        self.faces
            .iter()
            .all(|f| f.plus_is_associator && f.minus_is_union)
    }
}

/// Checks both faces of the associator cube in every direction: the positive
/// face is the next smaller associator cube, the negative face in direction
/// `i` is the blockwise union of the associator cubes of dimensions `i-1`
/// and `n-i`.
pub fn boundary_decomposition(n: usize) -> Result<BoundaryReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "boundary decomposition needs dimension at least 1".into(),
        ));
    }
    let cube = associator_cube(n);
    let smaller = associator_cube(n - 1);
    let mut faces = Vec::new();
    for dir in 1..=n {
        let plus = cube.face(dir, true);
        let expected_minus = associator_cube(dir - 1).ordered_union(&associator_cube(n - dir));
        let minus = cube.face(dir, false);
        faces.push(FaceCheck {
            dir,
            plus_is_associator: plus == smaller,
            minus_split: (dir - 1, n - dir),
            minus_is_union: minus == expected_minus,
        });
    }
    let report = BoundaryReport { n, faces };
    if !report.all_ok() {
        let bad: Vec<String> = report
            .faces
            .iter()
            .filter(|f| !(f.plus_is_associator && f.minus_is_union))
            .map(|f| format!("direction {}", f.dir))
            .collect();
        return Err(Error::CheckFailed(format!(
            "boundary mismatch in dimension {} at {}",
            n,
            bad.join(", ")
        )));
    }
    Ok(report)
}

/// Vertex of the fundamental cube at a subset `j` of directions: an ordinal
/// of size `|j| + 2`, read as the cut space of a size `|j| + 1` ordinal.
pub fn fundamental_vertex(j: &[usize]) -> usize {
    j.len() + 2
}

/// Edge (or longer arrow) of the fundamental cube from subset `i` to a
/// superset `j`. Endpoints go to endpoints and the element at position `m`
/// goes to the position of the same direction inside `j`.
pub fn fundamental_map(i: &[usize], j: &[usize]) -> Result<OrdMap> {
    let a = i.len() + 1;
    let b = j.len() + 1;
    let mut values = Vec::with_capacity(a + 1);
    values.push(0);
    for (m, &dir) in i.iter().enumerate() {
        let pos = j
            .iter()
            .position(|&d| d == dir)
            .ok_or_else(|| Error::InvalidArgument(format!("{} not in superset {:?}", dir, j)))?;
        let _ = m;
        values.push(pos + 1);
    }
    values.push(b);
    OrdMap::new(a + 1, b + 1, values)
}

/// Checks that every edge of the fundamental cube is the cut pullback of the
/// corresponding associator cube edge. Vertex masks and direction subsets
/// correspond by complement: direction `i` lies in the subset exactly when
/// its bit is unset.
pub fn check_fundamental_factorization(n: usize) -> Result<()> {
    let cube = associator_cube(n);
    for mask in 0..(1usize << n) {
        let j_set: Vec<usize> = (1..=n).filter(|&d| mask & (1 << (n - d)) == 0).collect();
        for &d in &j_set {
            let i_set: Vec<usize> = j_set.iter().copied().filter(|&x| x != d).collect();
            let fundamental = fundamental_map(&i_set, &j_set)?;
            let from_cube = cut_pullback(cube.edge(mask, d));
            if fundamental != from_cube {
                return Err(Error::CheckFailed(format!(
                    "edge at mask {:b} direction {}: fundamental map {:?} vs cut pullback {:?}",
                    mask,
                    d,
                    fundamental.values(),
                    from_cube.values()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_value_tables() {
        assert_eq!(surjection(3, 1).unwrap().values(), &[0, 0, 1]);
        assert_eq!(surjection(3, 2).unwrap().values(), &[0, 1, 1]);
        assert_eq!(surjection(2, 1).unwrap().values(), &[0, 0]);
        assert!(surjection(3, 3).is_err());
        assert!(surjection(3, 0).is_err());
    }

    #[test]
    fn compose_and_union() {
        let p1 = surjection(3, 1).unwrap();
        let p2 = surjection(2, 1).unwrap();
        assert_eq!(p1.then(&p2).unwrap().values(), &[0, 0, 0]);
        let u = p2.ordered_union(&OrdMap::identity(1));
        assert_eq!(u.values(), &[0, 0, 1]);
        assert_eq!(u.src(), 3);
        assert_eq!(u.tgt(), 2);
    }

    #[test]
    fn cut_pullback_examples() {
        let p = surjection(2, 1).unwrap();
        assert_eq!(cut_pullback(&p).values(), &[0, 2]);
        let p = surjection(3, 1).unwrap();
        assert_eq!(cut_pullback(&p).values(), &[0, 2, 3]);
        assert_eq!(cut_pullback(&OrdMap::identity(3)).values(), &[0, 1, 2, 3]);
    }

    #[test]
    fn associator_small_cases() {
        let a1 = associator_cube(1);
        assert_eq!(a1.vertex(0), 2);
        assert_eq!(a1.vertex(1), 1);
        assert_eq!(a1.edge(0, 1).values(), &[0, 0]);

        let a2 = associator_cube(2);
        assert_eq!(a2.vertex(0b00), 3);
        assert_eq!(a2.edge(0b00, 1).values(), &[0, 0, 1]);
        assert_eq!(a2.edge(0b00, 2).values(), &[0, 1, 1]);
        assert_eq!(a2.edge(0b10, 2).values(), &[0, 0]);
        assert_eq!(a2.edge(0b01, 1).values(), &[0, 0]);
        let mut edges = HashMap::new();
        for m in 0..4usize {
            for d in 1..=2usize {
                if m & (1 << (2 - d)) == 0 {
                    edges.insert((m, d), a2.edge(m, d).clone());
                }
            }
        }
        assert!(PlusCube::try_new(2, vec![3, 2, 2, 1], edges).is_ok());
    }

    #[test]
    fn associator_commutes_up_to_dim_five() {
        for n in 0..=5 {
            let c = associator_cube(n);
            assert!(c.validate().is_ok(), "dimension {}", n);
        }
    }

    #[test]
    fn associator_unique_small() {
        let mut fact = 1;
        for n in 1..=3 {
            fact *= n;
            assert_eq!(verify_unique_associator(n).unwrap(), fact);
        }
        assert!(verify_unique_associator(4).is_err());
    }

    #[test]
    fn path_counts_are_factorials() {
        let mut fact = 1;
        for n in 1..=5 {
            fact *= n;
            assert_eq!(source_sink_paths(&associator_cube(n)).unwrap(), fact);
        }
    }

    #[test]
    fn boundary_small() {
        for n in 1..=4 {
            let report = boundary_decomposition(n).unwrap();
            assert!(report.all_ok());
            assert_eq!(report.faces.len(), n);
        }
    }

    #[test]
    fn faces_of_square() {
        let a2 = associator_cube(2);
        let minus1 = a2.face(1, false);
        assert_eq!(minus1.vertex(0), 3);
        assert_eq!(minus1.vertex(1), 2);
        assert_eq!(minus1.edge(0, 1).values(), &[0, 1, 1]);
        let plus1 = a2.face(1, true);
        assert_eq!(plus1, associator_cube(1));
    }

    #[test]
    fn degenerate_direction_detection() {
        let mut edges = HashMap::new();
        edges.insert((0usize, 1usize), OrdMap::identity(2));
        let c = PlusCube::try_new(1, vec![2, 2], edges).unwrap();
        assert_eq!(c.degenerate_directions(), vec![1]);
        assert!(associator_cube(2).degenerate_directions().is_empty());
    }

    #[test]
    fn composite_independent_of_path() {
        let a3 = associator_cube(3);
        let c = a3.composite(0, 0b111).unwrap();
        assert_eq!(c.values(), &[0, 0, 0, 0]);
        let first_two = a3.composite(0, 0b110).unwrap();
        let rest = a3.composite(0b110, 0b111).unwrap();
        assert_eq!(first_two.then(&rest).unwrap(), c);
    }

    #[test]
    fn fundamental_edge_matches_cut_pullback() {
        for n in 0..=4 {
            check_fundamental_factorization(n).unwrap();
        }
        assert_eq!(fundamental_map(&[], &[1]).unwrap().values(), &[0, 2]);
        assert_eq!(fundamental_map(&[2], &[1, 2]).unwrap().values(), &[0, 2, 3]);
    }
}
