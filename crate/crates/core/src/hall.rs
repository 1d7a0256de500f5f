//! Counting Hall algebra of a finite simplicial set with a single vertex:
//! structure constants count triangles with prescribed outer faces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hcomb::{corr_cube, evaluate};
use crate::ordcube::associator_cube;
use crate::sset::{nerve_monoid, Monoid, SSet, Simplex};

/// Structure constant table over the canonical ordered basis of
/// 1-simplices. `constants` maps `(a, b, c)` to the number of 2-simplices
/// with long edges `a, b` and short edge `c`; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallTable {
    pub basis: Vec<Simplex>,
    pub basis_names: Vec<String>,
    pub constants: BTreeMap<(usize, usize, usize), u64>,
}

impl HallTable {
    pub fn constant(&self, a: usize, b: usize, c: usize) -> u64 {
        self.constants.get(&(a, b, c)).copied().unwrap_or(0)
    }
}

/// Reads the structure constants off the evaluated multiplication span and
/// cross-checks them against the direct face count of the 2-simplices.
/// Degenerate simplices participate throughout.
pub fn structure_constants(s: &SSet) -> Result<HallTable> {
    if s.materialize(0).len() != 1 {
        return Err(Error::InvalidArgument(
            "the Hall construction needs a single-vertex simplicial set".into(),
        ));
    }
    if s.dim_bound() < 3 {
        return Err(Error::InvalidArgument(
            "the Hall construction needs dimension bound at least 3".into(),
        ));
    }
    let basis = s.materialize(1);
    let index_of = |x: &Simplex| basis.binary_search(x).expect("basis is sorted");
    let mut constants: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    for sigma in s.materialize(2) {
        let a = index_of(&s.face_of(&sigma, 2)?);
        let b = index_of(&s.face_of(&sigma, 0)?);
        let c = index_of(&s.face_of(&sigma, 1)?);
        *constants.entry((a, b, c)).or_insert(0) += 1;
    }
    // Independent reading through the evaluated span of correspondences.
    let e = evaluate(&corr_cube(&associator_cube(1))?, s)?;
    let left = &e.cube.maps[&(1, 1, crate::corrlim::Flip::Minus)];
    let right = &e.cube.maps[&(1, 1, crate::corrlim::Flip::Plus)];
    let mut from_span: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    for x in 0..e.cube.sets[1] {
        let foot = &e.homs[0].elements[left[x]];
        let out = &e.homs[2].elements[right[x]];
        let a = index_of(&foot.values[0]);
        let b = index_of(&foot.values[1]);
        let c = index_of(&out.values[0]);
        *from_span.entry((a, b, c)).or_insert(0) += 1;
    }
    if from_span != constants {
        return Err(Error::Invariant(
            "span counting disagrees with the direct face count".into(),
        ));
    }
    let basis_names = basis.iter().map(|x| s.describe(x)).collect();
    Ok(HallTable {
        basis,
        basis_names,
        constants,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub x: usize,
    pub left_sum: u64,
    pub right_sum: u64,
}

/// Checks the associativity sums of the product; returns the first failing
/// quadruple under the basis order, if any.
pub fn check_associativity(t: &HallTable) -> Option<AssociativityWitness> {
    let n = t.basis.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for x in 0..n {
                    let left: u64 = (0..n).map(|e| t.constant(a, b, e) * t.constant(e, c, x)).sum();
                    let right: u64 = (0..n).map(|f| t.constant(b, c, f) * t.constant(a, f, x)).sum();
                    if left != right {
                        return Some(AssociativityWitness {
                            a,
                            b,
                            c,
                            x,
                            left_sum: left,
                            right_sum: right,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Independent oracle: the monoid algebra table, with a delta constant on
/// the multiplication law, indexed by the basis order of the monoid's
/// nerve.
pub fn monoid_algebra_oracle(m: &Monoid) -> Result<HallTable> {
    let s = nerve_monoid(m, 3)?;
    let basis = s.materialize(1);
    // Each basis simplex is either the degenerate edge at the point, which
    // stands for the identity, or a non-identity element.
    let element_of = |x: &Simplex| -> usize {
        if x.is_nondegenerate() {
            let name = s.cell_name(x.cell);
            m.elements.iter().position(|e| e == name).expect("named element")
        } else {
            m.identity
        }
    };
    let elements: Vec<usize> = basis.iter().map(element_of).collect();
    let mut constants = BTreeMap::new();
    for (a, &ea) in elements.iter().enumerate() {
        for (b, &eb) in elements.iter().enumerate() {
            let product = m.mul(ea, eb);
            let c = elements.iter().position(|&e| e == product).unwrap();
            constants.insert((a, b, c), 1);
        }
    }
    let basis_names = basis.iter().map(|x| s.describe(x)).collect();
    Ok(HallTable {
        basis,
        basis_names,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Monoid {
        Monoid::new(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn z3() -> Monoid {
        Monoid::new(
            vec!["e".into(), "g".into(), "h".into()],
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        )
        .unwrap()
    }

    fn absorb3() -> Monoid {
        // e identity, z absorbing, a with a * a = z.
        Monoid::new(
            vec!["e".into(), "a".into(), "z".into()],
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        )
        .unwrap()
    }

    #[test]
    fn nerve_tables_match_oracle() {
        for m in [z2(), z3(), absorb3()] {
            let s = nerve_monoid(&m, 3).unwrap();
            let table = structure_constants(&s).unwrap();
            let oracle = monoid_algebra_oracle(&m).unwrap();
            assert_eq!(table, oracle);
            assert_eq!(check_associativity(&table), None);
        }
    }

    #[test]
    fn trivial_monoid_table() {
        let m = Monoid::new(vec!["e".into()], vec![vec![0]]).unwrap();
        let s = nerve_monoid(&m, 3).unwrap();
        let t = structure_constants(&s).unwrap();
        assert_eq!(t.basis.len(), 1);
        assert_eq!(t.constant(0, 0, 0), 1);
    }

    #[test]
    fn duplicate_triangle_breaks_associativity() {
        let m = z3();
        let s = nerve_monoid(&m, 3).unwrap();
        let gg = s
            .cells_of_dim(2)
            .iter()
            .copied()
            .find(|&c| s.cell_name(c) == "g.g")
            .unwrap();
        let mutant = s.attach_cell("x", 2, s.cell_faces(gg).to_vec()).unwrap();
        let t = structure_constants(&mutant).unwrap();
        // The duplicated triangle doubles one constant.
        let g = t.basis_names.iter().position(|n| n == "g").unwrap();
        let h = t.basis_names.iter().position(|n| n == "h").unwrap();
        assert_eq!(t.constant(g, g, h), 2);
        let w = check_associativity(&t).expect("associativity must fail");
        assert_ne!(w.left_sum, w.right_sum);
    }
}
