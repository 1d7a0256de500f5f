//! Combinatorial correspondence complexes attached to monotone maps, and
//! cubes of such complexes built from cubes of ordinals.
//!
//! A monotone map out of a size-`n` ordinal gives a subcomplex of the
//! standard simplex on the `n + 1` cut positions, generated by the interval
//! extensions of its fibers. A commutative cube of ordinals then yields a
//! cube of such complexes over the `{-, 0, +}` position poset, which can be
//! evaluated against a finite simplicial set to produce a cube of finite
//! sets.

use std::collections::HashMap;

use itertools::Itertools;

use crate::corrlim::{digit, pow3, with_digit, EvaluatedCube, Flip};
use crate::error::{Error, Result};
use crate::ordcube::{cut_pullback, OrdMap, PlusCube};
use crate::sset::{hom, restrict, HomSet, SSet, VertexComplex};

/// Vertices of the interval extension of the fiber starting at cut
/// position `start` with `len` elements: the fiber's elements together
/// with the enclosing cuts, or the single cut at an empty fiber.
pub fn interval_extension(ambient: usize, start: usize, len: usize) -> Result<Vec<usize>> {
    if start + len > ambient {
        return Err(Error::InvalidArgument(format!(
            "interval {}+{} exceeds ambient {}",
            start, len, ambient
        )));
    }
    Ok((start..=start + len).collect())
}

/// The correspondence complex of a monotone map: the subcomplex of the
/// standard simplex on the source's cut positions generated by the interval
/// extensions of all fibers.
pub fn h_comb(alpha: &OrdMap) -> Result<VertexComplex> {
    let ambient = alpha.src();
    let mut generators = Vec::new();
    for y in 0..alpha.tgt() {
        let len = alpha.values().iter().filter(|&&v| v == y).count();
        let start = alpha.values().iter().filter(|&&v| v < y).count();
        generators.push(interval_extension(ambient, start, len)?);
    }
    if alpha.tgt() == 0 {
        // Map to the empty ordinal: only possible from the empty ordinal,
        // leaving the complex with no generators.
        if ambient != 0 {
            return Err(Error::InvalidMap("nonempty source over empty target".into()));
        }
    }
    VertexComplex::new(ambient, generators)
}

/// Comparison map of complexes for a factorization `g . f`: the complex of
/// `f` includes into the complex of `g . f` over the same ambient simplex.
pub fn case_refinement(f: &OrdMap, g: &OrdMap) -> Result<OrdMap> {
    let fine = h_comb(f)?;
    let coarse = h_comb(&f.then(g)?)?;
    if !fine.is_subcomplex_of(&coarse) {
        return Err(Error::Invariant(format!(
            "complex of {:?} is not inside the complex of its coarsening",
            f.values()
        )));
    }
    Ok(OrdMap::identity(fine.ambient() + 1))
}

/// Comparison map of complexes for a factorization `g . f` read from the
/// other side: the cut pullback of `f` carries the complex of `g` into the
/// complex of `g . f`.
pub fn case_transport(f: &OrdMap, g: &OrdMap) -> Result<OrdMap> {
    let source = h_comb(g)?;
    let target = h_comb(&f.then(g)?)?;
    let vmap = cut_pullback(f);
    for gen in source.generators() {
        let image: Vec<usize> = gen.iter().map(|&v| vmap.apply(v)).dedup().collect();
        if target.generator_containing(&image).is_none() {
            return Err(Error::Invariant(format!(
                "cut pullback does not carry generator {:?} into the target complex",
                gen
            )));
        }
    }
    Ok(vmap)
}

/// Cube of correspondence complexes over the `{-, 0, +}` position poset.
#[derive(Clone, Debug)]
pub struct HCombCube {
    pub dim: usize,
    /// Complexes indexed by position code.
    pub positions: Vec<VertexComplex>,
    /// Vertex maps for the elementary arrows, sending the vertices of the
    /// pushed position's complex into the source position's complex.
    pub arrows: HashMap<(usize, usize, Flip), OrdMap>,
}

impl HCombCube {
    /// The monotone map underlying a position: the composite of cube edges
    /// from the vertex marked by the `+` coordinates to the one marked by
    /// everything except the `-` coordinates.
    pub fn position_map(cube: &PlusCube, code: usize) -> Result<OrdMap> {
        let dim = cube.dim();
        let mut start = 0usize;
        let mut end = 0usize;
        for dir in 1..=dim {
            let d = digit(code, dir, dim);
            if d == 2 {
                start |= cube.bit(dir);
            }
            if d != 0 {
                end |= cube.bit(dir);
            }
        }
        cube.composite(start, end)
    }
}

/// Builds the cube of correspondence complexes of a commutative cube of
/// ordinals. Pushing a coordinate to `-` keeps the ambient simplex and
/// refines, pushing to `+` transports along the cut pullback of the
/// traversed edge.
pub fn corr_cube(cube: &PlusCube) -> Result<HCombCube> {
    let dim = cube.dim();
    let total = pow3(dim);
    let mut positions = Vec::with_capacity(total);
    for code in 0..total {
        positions.push(h_comb(&HCombCube::position_map(cube, code)?)?);
    }
    let mut arrows = HashMap::new();
    for code in 0..total {
        for dir in 1..=dim {
            if digit(code, dir, dim) != 1 {
                continue;
            }
            let start = {
                let mut s = 0usize;
                for d2 in 1..=dim {
                    if digit(code, d2, dim) == 2 {
                        s |= cube.bit(d2);
                    }
                }
                s
            };
            let f = HCombCube::position_map(cube, code)?;
            // Arrow to the minus push: same ambient, inclusion of complexes.
            let minus_code = with_digit(code, dir, dim, 0);
            let g = HCombCube::position_map(cube, minus_code)?;
            if !positions[minus_code].is_subcomplex_of(&positions[code]) {
                return Err(Error::Invariant(format!(
                    "complex at position {} does not include into position {}",
                    minus_code, code
                )));
            }
            let _ = g;
            arrows.insert((code, dir, Flip::Minus), OrdMap::identity(f.src() + 1));
            // Arrow to the plus push: cut pullback of the traversed edge.
            let plus_code = with_digit(code, dir, dim, 2);
            let edge = cube.edge(start, dir);
            let vmap = cut_pullback(edge);
            for gen in positions[plus_code].generators() {
                let image: Vec<usize> = gen.iter().map(|&v| vmap.apply(v)).dedup().collect();
                if positions[code].generator_containing(&image).is_none() {
                    return Err(Error::Invariant(format!(
                        "arrow at position {} direction {} misses generator {:?}",
                        code, dir, gen
                    )));
                }
            }
            arrows.insert((code, dir, Flip::Plus), vmap);
        }
    }
    let out = HCombCube {
        dim,
        positions,
        arrows,
    };
    check_cube_commutes(&out)?;
    Ok(out)
}

fn check_cube_commutes(h: &HCombCube) -> Result<()> {
    for code in 0..pow3(h.dim) {
        for i in 1..=h.dim {
            for j in (i + 1)..=h.dim {
                if digit(code, i, h.dim) != 1 || digit(code, j, h.dim) != 1 {
                    continue;
                }
                for fi in [Flip::Minus, Flip::Plus] {
                    for fj in [Flip::Minus, Flip::Plus] {
                        let di = if fi == Flip::Plus { 2 } else { 0 };
                        let dj = if fj == Flip::Plus { 2 } else { 0 };
                        // Vertex maps run against the arrows, so the two
                        // composites start at the doubly pushed position.
                        let via_i = h.arrows[&(with_digit(code, i, h.dim, di), j, fj)]
                            .then(&h.arrows[&(code, i, fi)])?;
                        let via_j = h.arrows[&(with_digit(code, j, h.dim, dj), i, fi)]
                            .then(&h.arrows[&(code, j, fj)])?;
                        if via_i != via_j {
                            return Err(Error::Invariant(format!(
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

/// An evaluated cube of correspondence complexes: the raw hom sets per
/// position plus the induced functor of finite sets.
#[derive(Clone, Debug)]
pub struct EvaluatedHComb {
    pub cube: EvaluatedCube,
    pub homs: Vec<HomSet>,
}

/// Evaluates every position complex against the simplicial set and derives
/// the restriction functions along all elementary arrows.
pub fn evaluate(h: &HCombCube, s: &SSet) -> Result<EvaluatedHComb> {
    let total = pow3(h.dim);
    let mut homs = Vec::with_capacity(total);
    for code in 0..total {
        homs.push(hom(&h.positions[code], s)?);
    }
    let mut maps = HashMap::new();
    for (&(code, dir, flip), vmap) in &h.arrows {
        let pushed = with_digit(code, dir, h.dim, if flip == Flip::Plus { 2 } else { 0 });
        let mut table = Vec::with_capacity(homs[code].len());
        for e in &homs[code].elements {
            let r = restrict(s, vmap, &h.positions[pushed], &h.positions[code], e)?;
            let idx = homs[pushed].index_of(&r).ok_or_else(|| {
                Error::Invariant(format!(
                    "restriction along position {} direction {} left the hom set",
                    code, dir
                ))
            })?;
            table.push(idx);
        }
        maps.insert((code, dir, flip), table);
    }
    let cube = EvaluatedCube::try_new(h.dim, homs.iter().map(|h| h.len()).collect(), maps)?;
    Ok(EvaluatedHComb { cube, homs })
}

/// Checks that evaluation turns blockwise unions of cubes of ordinals into
/// products: for every pair of positions the hom set of the union complex
/// maps bijectively onto the product of the factor hom sets, compatibly
/// with all arrows. Requires the simplicial set to have a single vertex so
/// the junction of the two blocks glues uniquely.
pub fn check_product_law(c1: &PlusCube, c2: &PlusCube, s: &SSet) -> Result<()> {
    if s.materialize(0).len() != 1 {
        return Err(Error::InvalidArgument(
            "product law check needs a single-vertex simplicial set".into(),
        ));
    }
    let h1 = corr_cube(c1)?;
    let h2 = corr_cube(c2)?;
    let hu = corr_cube(&c1.ordered_union(c2))?;
    let e1 = evaluate(&h1, s)?;
    let e2 = evaluate(&h2, s)?;
    let eu = evaluate(&hu, s)?;
    let (t1, t2) = (pow3(c1.dim()), pow3(c2.dim()));
    // The projection of a union hom element to each factor, by reading off
    // derived values on the factor's generators.
    let project = |code_u: usize, code1: usize, code2: usize, x: usize| -> Result<(usize, usize)> {
        let element = &eu.homs[code_u].elements[x];
        let offset = h1.positions[code1].ambient();
        let mut v1 = Vec::new();
        for g in h1.positions[code1].generators() {
            v1.push(eu.homs[code_u].value_on(s, element, g)?);
        }
        let mut v2 = Vec::new();
        for g in h2.positions[code2].generators() {
            let shifted: Vec<usize> = g.iter().map(|&v| v + offset).collect();
            v2.push(eu.homs[code_u].value_on(s, element, &shifted)?);
        }
        let i1 = e1.homs[code1]
            .index_of(&crate::sset::HomElement { values: v1 })
            .ok_or_else(|| Error::Invariant("projection left the first hom set".into()))?;
        let i2 = e2.homs[code2]
            .index_of(&crate::sset::HomElement { values: v2 })
            .ok_or_else(|| Error::Invariant("projection left the second hom set".into()))?;
        Ok((i1, i2))
    };
    for code1 in 0..t1 {
        for code2 in 0..t2 {
            let code_u = code1 * t2 + code2;
            let (n1, n2) = (e1.cube.sets[code1], e2.cube.sets[code2]);
            if eu.cube.sets[code_u] != n1 * n2 {
                return Err(Error::CheckFailed(format!(
                    "position ({}, {}): union hom has {} elements, factors have {} and {}",
                    code1, code2, eu.cube.sets[code_u], n1, n2
                )));
            }
            let mut seen = vec![false; n1 * n2];
            let mut projections = Vec::new();
            for x in 0..eu.cube.sets[code_u] {
                let (i1, i2) = project(code_u, code1, code2, x)?;
                if std::mem::replace(&mut seen[i1 * n2 + i2], true) {
                    return Err(Error::CheckFailed(format!(
                        "position ({}, {}): projection is not injective",
                        code1, code2
                    )));
                }
                projections.push((i1, i2));
            }
            // Compatibility with the elementary arrows of the union cube.
            for dir in 1..=c1.dim() + c2.dim() {
                if digit(code_u, dir, hu.dim) != 1 {
                    continue;
                }
                for flip in [Flip::Minus, Flip::Plus] {
                    let pushed_u = with_digit(code_u, dir, hu.dim, if flip == Flip::Plus { 2 } else { 0 });
                    let table_u = &eu.cube.maps[&(code_u, dir, flip)];
                    for x in 0..eu.cube.sets[code_u] {
                        let (i1, i2) = projections[x];
                        let expected = if dir <= c1.dim() {
                            let t = &e1.cube.maps[&(code1, dir, flip)];
                            (t[i1], i2)
                        } else {
                            let t = &e2.cube.maps[&(code2, dir - c1.dim(), flip)];
                            (i1, t[i2])
                        };
                        let pushed1 = if dir <= c1.dim() {
                            with_digit(code1, dir, c1.dim(), if flip == Flip::Plus { 2 } else { 0 })
                        } else {
                            code1
                        };
                        let pushed2 = if dir <= c1.dim() {
                            code2
                        } else {
                            with_digit(code2, dir - c1.dim(), c2.dim(), if flip == Flip::Plus { 2 } else { 0 })
                        };
                        let got = project(pushed_u, pushed1, pushed2, table_u[x])?;
                        if got != expected {
                            return Err(Error::CheckFailed(format!(
                                "position ({}, {}) direction {}: arrows do not match the product",
                                code1, code2, dir
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordcube::{associator_cube, surjection};
    use crate::sset::{nerve_monoid, Monoid};

    fn z2() -> Monoid {
        Monoid::new(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn complexes_of_basic_maps() {
        let id2 = OrdMap::identity(2);
        let horn = h_comb(&id2).unwrap();
        assert_eq!(horn.generators(), &[vec![0, 1], vec![1, 2]]);
        let to_point = OrdMap::new(2, 1, vec![0, 0]).unwrap();
        assert_eq!(h_comb(&to_point).unwrap(), VertexComplex::full(2));
        let p1 = surjection(3, 1).unwrap();
        assert_eq!(
            h_comb(&p1).unwrap().generators(),
            &[vec![0, 1, 2], vec![2, 3]]
        );
        let empty = h_comb(&OrdMap::identity(0)).unwrap();
        assert!(empty.generators().is_empty());
    }

    #[test]
    fn refinement_and_transport() {
        let f = surjection(3, 1).unwrap();
        let g = surjection(2, 1).unwrap();
        assert!(case_refinement(&f, &g).unwrap().is_identity());
        let t = case_transport(&f, &g).unwrap();
        assert_eq!(t.values(), &[0, 2, 3]);
    }

    #[test]
    fn one_dimensional_cube_positions() {
        let h = corr_cube(&associator_cube(1)).unwrap();
        // Codes: 0 minus, 1 zero, 2 plus.
        assert_eq!(h.positions[0].generators(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(h.positions[1], VertexComplex::full(2));
        assert_eq!(h.positions[2], VertexComplex::full(1));
        assert_eq!(h.arrows[&(1, 1, Flip::Plus)].values(), &[0, 2]);
    }

    #[test]
    fn multiplication_span_on_nerve() {
        let s = nerve_monoid(&z2(), 3).unwrap();
        let e = evaluate(&corr_cube(&associator_cube(1)).unwrap(), &s).unwrap();
        assert_eq!(e.cube.sets, vec![4, 4, 2]);
        // The left leg lands in pairs, the right leg is multiplication.
        let left = &e.cube.maps[&(1, 1, Flip::Minus)];
        let right = &e.cube.maps[&(1, 1, Flip::Plus)];
        assert_eq!(left.len(), 4);
        // The hom set of the full triangle: elements are the 2-simplices.
        let mut products = Vec::new();
        for x in 0..4 {
            let tri = &e.homs[1].elements[x].values[0];
            let d2 = s.face_of(tri, 2).unwrap();
            let d0 = s.face_of(tri, 0).unwrap();
            let d1 = s.face_of(tri, 1).unwrap();
            // Pair position: the span foot is the spine hom set.
            let foot = &e.homs[0].elements[left[x]];
            assert_eq!(foot.values[0], d2);
            assert_eq!(foot.values[1], d0);
            let out = &e.homs[2].elements[right[x]];
            assert_eq!(out.values[0], d1);
            products.push((d2, d0, d1));
        }
        products.sort();
        products.dedup();
        assert_eq!(products.len(), 4);
    }

    #[test]
    fn cube_of_squares_commutes_and_evaluates() {
        let s = nerve_monoid(&z2(), 4).unwrap();
        let h = corr_cube(&associator_cube(2)).unwrap();
        let e = evaluate(&h, &s).unwrap();
        // Center is the full tetrahedron on four vertices.
        assert_eq!(e.cube.sets[crate::corrlim::CorrPoset { dim: 2 }.center()], 8);
    }

    #[test]
    fn union_evaluates_to_product() {
        let s = nerve_monoid(&z2(), 4).unwrap();
        check_product_law(&associator_cube(1), &associator_cube(1), &s).unwrap();
    }
}
