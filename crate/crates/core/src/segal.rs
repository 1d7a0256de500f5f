//! Triangulations of simplices from the evenness criterion, adaptedness of
//! simplicial sets, and the higher Segal checkers.
//!
//! The checkers come in two independent flavors: restriction bijections
//! against triangulation subcomplexes, and invertibility of evaluated cubes
//! of correspondences. Both are truncated at an explicit bound and never
//! claim anything beyond it.

use itertools::Itertools;

use crate::corrlim::{is_invertible_cube, InvertibleReport};
use crate::error::{Error, Result};
use crate::hcomb::{corr_cube, evaluate};
use crate::ordcube::{associator_cube, OrdMap};
use crate::sset::{hom, restrict, SSet, VertexComplex};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Lower,
    Upper,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Lower => "lower",
            Kind::Upper => "upper",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub n: usize,
    pub d: usize,
    pub kind: Kind,
    pub simplices: Vec<Vec<usize>>,
}

/// Evenness: every vertex outside the subset sees an even number of larger
/// subset members.
pub fn is_even_subset(i: &[usize], n: usize) -> bool {
    (0..=n)
        .filter(|j| !i.contains(j))
        .all(|j| i.iter().filter(|&&x| x > j).count() % 2 == 0)
}

pub fn is_odd_subset(i: &[usize], n: usize) -> bool {
    (0..=n)
        .filter(|j| !i.contains(j))
        .all(|j| i.iter().filter(|&&x| x > j).count() % 2 == 1)
}

/// The lower or upper triangulation of the `n`-simplex into `d`-simplices,
/// by the evenness criterion.
pub fn gale_triangulation(n: usize, d: usize, kind: Kind) -> Result<Triangulation> {
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "no triangulation of the {}-simplex into {}-simplices",
            n, d
        )));
    }
    let simplices = (0..=n)
        .combinations(d + 1)
        .filter(|i| match kind {
            Kind::Lower => is_even_subset(i, n),
            Kind::Upper => is_odd_subset(i, n),
        })
        .collect();
    Ok(Triangulation {
        n,
        d,
        kind,
        simplices,
    })
}

pub fn triangulation_complex(t: &Triangulation) -> Result<VertexComplex> {
    VertexComplex::new(t.n, t.simplices.clone())
}

#[derive(Clone, Debug)]
pub struct AdaptReport {
    pub adapted: bool,
    pub full_count: usize,
    pub target_count: usize,
    /// Description of a target element with no or multiple preimages.
    pub witness: Option<String>,
}

/// Whether restriction from the full `n`-simplex to the subcomplex is a
/// bijection of hom sets.
pub fn is_adapted(s: &SSet, n: usize, k: &VertexComplex) -> Result<AdaptReport> {
    if k.ambient() != n {
        return Err(Error::InvalidArgument(format!(
            "complex has ambient {}, expected {}",
            k.ambient(),
            n
        )));
    }
    let full = VertexComplex::full(n);
    let hf = hom(&full, s)?;
    let hk = hom(k, s)?;
    let id = OrdMap::identity(n + 1);
    let mut preimages = vec![0usize; hk.len()];
    for e in &hf.elements {
        let r = restrict(s, &id, k, &full, e)?;
        let idx = hk
            .index_of(&r)
            .ok_or_else(|| Error::Invariant("restriction left the hom set".into()))?;
        preimages[idx] += 1;
    }
    let witness = preimages
        .iter()
        .position(|&c| c != 1)
        .map(|idx| {
            let e = &hk.elements[idx];
            format!(
                "element ({}) has {} preimages",
                e.values
                    .iter()
                    .map(|x| s.describe(x))
                    .join(", "),
                preimages[idx]
            )
        });
    Ok(AdaptReport {
        adapted: witness.is_none(),
        full_count: hf.len(),
        target_count: hk.len(),
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct SplitRow {
    pub n: usize,
    pub m: usize,
    pub report: AdaptReport,
}

#[derive(Clone, Debug)]
pub struct OneSegalReport {
    pub rows: Vec<SplitRow>,
    pub ok: bool,
}

/// Segal conditions in the classical sense: for every `n` up to the bound
/// and every split of `{0..n}` at a middle vertex `m`, the two-generator
/// complex `{0..m}, {m..n}` is adapted.
pub fn check_1segal(s: &SSet, n_max: usize) -> Result<OneSegalReport> {
    if n_max > s.dim_bound() {
        return Err(Error::InvalidArgument(format!(
            "bound {} exceeds the dimension bound {}",
            n_max,
            s.dim_bound()
        )));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for m in 1..n {
            let k = VertexComplex::new(n, vec![(0..=m).collect(), (m..=n).collect()])?;
            rows.push(SplitRow {
                n,
                m,
                report: is_adapted(s, n, &k)?,
            });
        }
    }
    let ok = rows.iter().all(|r| r.report.adapted);
    Ok(OneSegalReport { rows, ok })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TriangulationMode {
    Full,
    Reduced,
}

#[derive(Clone, Debug)]
pub struct ConditionRow {
    /// The triangulated simplex dimension and the piece dimension.
    pub n: usize,
    pub d: usize,
    pub kind: Kind,
    pub report: AdaptReport,
}

#[derive(Clone, Debug)]
pub struct TriangulationVerdict {
    pub mode: TriangulationMode,
    pub rows: Vec<ConditionRow>,
    pub ok: bool,
}

fn condition(s: &SSet, n: usize, d: usize, kind: Kind) -> Result<ConditionRow> {
    let t = gale_triangulation(n, d, kind)?;
    let k = triangulation_complex(&t)?;
    Ok(ConditionRow {
        n,
        d,
        kind,
        report: is_adapted(s, n, &k)?,
    })
}

/// Adaptedness route to the d-Segal conditions. Full mode checks the lower
/// and upper triangulations of every simplex up to the bound; reduced mode
/// checks only the one-step conditions, which suffice by the step-climbing
/// argument.
pub fn check_dsegal_triangulations(
    s: &SSet,
    d: usize,
    n_max: usize,
    mode: TriangulationMode,
) -> Result<TriangulationVerdict> {
    if n_max > s.dim_bound() {
        return Err(Error::InvalidArgument(format!(
            "bound {} exceeds the dimension bound {}",
            n_max,
            s.dim_bound()
        )));
    }
    if d > n_max {
        return Err(Error::InvalidArgument(format!(
            "empty range: d = {} exceeds the bound {}",
            d, n_max
        )));
    }
    let mut rows = Vec::new();
    match mode {
        TriangulationMode::Full => {
            for n in d..=n_max {
                for kind in [Kind::Lower, Kind::Upper] {
                    rows.push(condition(s, n, d, kind)?);
                }
            }
        }
        TriangulationMode::Reduced => {
            for n in d..n_max {
                for kind in [Kind::Lower, Kind::Upper] {
                    rows.push(condition(s, n + 1, n, kind)?);
                }
            }
        }
    }
    let ok = rows.iter().all(|r| r.report.adapted);
    Ok(TriangulationVerdict { mode, rows, ok })
}

/// One-sided variant: only the lower or only the upper conditions.
pub fn check_dsegal_one_sided(
    s: &SSet,
    d: usize,
    n_max: usize,
    kind: Kind,
) -> Result<bool> {
    for n in d..=n_max {
        if !condition(s, n, d, kind)?.report.adapted {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct CubeRow {
    pub n: usize,
    pub report: InvertibleReport,
}

#[derive(Clone, Debug)]
pub struct CubeVerdict {
    pub rows: Vec<CubeRow>,
    pub ok: bool,
}

/// Invertibility report for the evaluated cube of correspondences of one
/// associator cube.
pub fn cube_row(s: &SSet, n: usize) -> Result<CubeRow> {
    if n + 1 > s.dim_bound() {
        return Err(Error::InvalidArgument(format!(
            "cube dimension {} needs dimension bound {}",
            n,
            n + 1
        )));
    }
    let e = evaluate(&corr_cube(&associator_cube(n))?, s)?;
    Ok(CubeRow {
        n,
        report: is_invertible_cube(&e.cube)?,
    })
}

/// Cube route to the d-Segal conditions: every associator cube from
/// dimension `d` up to the bound must evaluate to an invertible cube.
pub fn check_dsegal_cubes(s: &SSet, d: usize, n_max: usize) -> Result<CubeVerdict> {
    if d > n_max {
        return Err(Error::InvalidArgument(format!(
            "empty range: d = {} exceeds the bound {}",
            d, n_max
        )));
    }
    let mut rows = Vec::new();
    for n in d..=n_max {
        rows.push(cube_row(s, n)?);
    }
    let ok = rows.iter().all(|r| r.report.ok());
    Ok(CubeVerdict { rows, ok })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pairing {
    /// Lower conditions match the minus-leading alternating subcube.
    Straight,
    /// Lower conditions match the plus-leading alternating subcube.
    Swapped,
    Both,
    Neither,
}

#[derive(Clone, Debug)]
pub struct LowerUpperReport {
    pub d: usize,
    pub lower_adapted: bool,
    pub upper_adapted: bool,
    /// Pullback verdict of the subcube whose first push is `+`.
    pub plus_leading_pullback: bool,
    /// Pullback verdict of the subcube whose first push is `-`.
    pub minus_leading_pullback: bool,
    pub pairing: Pairing,
}

/// Compares the two one-step triangulation conditions with the two
/// alternating-subcube conditions of the same dimension, and reports which
/// pairing matches.
pub fn lower_upper_diagnostic(s: &SSet, d: usize) -> Result<LowerUpperReport> {
    let lower = condition(s, d + 1, d, Kind::Lower)?.report.adapted;
    let upper = condition(s, d + 1, d, Kind::Upper)?.report.adapted;
    let row = cube_row(s, d)?;
    // The `upper` field of the invertibility report is the subcube pushing
    // direction 1 to `+`.
    let plus_leading = row.report.upper.ok;
    let minus_leading = row.report.lower.ok;
    let straight = lower == minus_leading && upper == plus_leading;
    let swapped = lower == plus_leading && upper == minus_leading;
    let pairing = match (straight, swapped) {
        (true, true) => Pairing::Both,
        (true, false) => Pairing::Straight,
        (false, true) => Pairing::Swapped,
        (false, false) => Pairing::Neither,
    };
    Ok(LowerUpperReport {
        d,
        lower_adapted: lower,
        upper_adapted: upper,
        plus_leading_pullback: plus_leading,
        minus_leading_pullback: minus_leading,
        pairing,
    })
}

#[derive(Clone, Debug)]
pub struct LaxDegreeReport {
    pub n_max: usize,
    /// Smallest `d >= 2` with every cube from `d` to the bound invertible.
    pub smallest_d: Option<usize>,
    /// The same threshold in the shifted convention, `smallest_d - 1`.
    pub lax_degree: Option<usize>,
}

/// Monotone scan of the cube verdicts, reporting the threshold dimension.
pub fn lax_degree(s: &SSet, n_max: usize) -> Result<LaxDegreeReport> {
    let mut verdicts = Vec::new();
    for n in 2..=n_max {
        verdicts.push(cube_row(s, n)?.report.ok());
    }
    let mut smallest = None;
    for d in (2..=n_max).rev() {
        if verdicts[d - 2..].iter().all(|&v| v) {
            smallest = Some(d);
        } else {
            break;
        }
    }
    Ok(LaxDegreeReport {
        n_max,
        smallest_d: smallest,
        lax_degree: smallest.map(|d| d - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{nerve_monoid, Monoid};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

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

    #[test]
    fn evenness_examples() {
        assert!(is_even_subset(&[0, 1, 2, 3], 3));
        assert!(is_odd_subset(&[0, 1, 2, 3], 3));
        assert!(is_even_subset(&[0, 1, 2], 3));
        assert!(is_odd_subset(&[0, 1, 3], 3));
        assert!(!is_even_subset(&[0, 1, 3], 3));
    }

    #[test]
    fn triangulation_tables() {
        let l = gale_triangulation(3, 2, Kind::Lower).unwrap();
        assert_eq!(l.simplices, vec![vec![0, 1, 2], vec![0, 2, 3]]);
        let u = gale_triangulation(4, 2, Kind::Upper).unwrap();
        assert_eq!(
            u.simplices,
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4]]
        );
        let single = gale_triangulation(2, 2, Kind::Lower).unwrap();
        assert_eq!(single.simplices, vec![vec![0, 1, 2]]);
        assert!(gale_triangulation(2, 3, Kind::Lower).is_err());
    }

    #[test]
    fn polygon_triangulation_sizes() {
        // A triangulated (n+1)-gon into triangles has n - 1 triangles.
        for n in 2..=6 {
            for kind in [Kind::Lower, Kind::Upper] {
                let t = gale_triangulation(n, 2, kind).unwrap();
                assert_eq!(t.simplices.len(), n - 1);
            }
        }
    }

    #[test]
    fn nerves_are_segal() {
        for (name, s) in [
            ("z2", nerve_monoid(&z2(), 4).unwrap()),
            ("z3", nerve_monoid(&z3(), 4).unwrap()),
        ] {
            let r = check_1segal(&s, 4).unwrap();
            assert!(r.ok, "{}", name);
            let t = check_dsegal_triangulations(&s, 2, 4, TriangulationMode::Full).unwrap();
            assert!(t.ok, "{}", name);
            let c = check_dsegal_cubes(&s, 2, 3).unwrap();
            assert!(c.ok, "{}", name);
        }
    }

    fn dup_triangle_mutant() -> crate::sset::SSet {
        // Duplicate the triangle with outer faces (g, g) over its composite.
        let m = z3();
        let s = nerve_monoid(&m, 4).unwrap();
        let gg = s
            .cells_of_dim(2)
            .iter()
            .copied()
            .find(|&c| s.cell_name(c) == "g.g")
            .unwrap();
        let faces = s.cell_faces(gg).to_vec();
        s.attach_cell("x", 2, faces).unwrap()
    }

    #[test]
    fn mutant_fails_two_segal_with_witness() {
        let s = dup_triangle_mutant();
        let t = check_dsegal_triangulations(&s, 2, 3, TriangulationMode::Full).unwrap();
        assert!(!t.ok);
        let bad = t.rows.iter().find(|r| !r.report.adapted).unwrap();
        assert!(bad.report.witness.is_some());
        let c = check_dsegal_cubes(&s, 2, 2).unwrap();
        assert!(!c.ok);
    }

    #[test]
    fn routes_agree_on_small_inputs() {
        let s = nerve_monoid(&z2(), 4).unwrap();
        for d in 2..=3 {
            let full = check_dsegal_triangulations(&s, d, 3, TriangulationMode::Full).unwrap();
            let reduced =
                check_dsegal_triangulations(&s, d, 3, TriangulationMode::Reduced).unwrap();
            let cubes = check_dsegal_cubes(&s, d, 3).unwrap();
            assert_eq!(full.ok, reduced.ok);
            assert_eq!(full.ok, cubes.ok);
        }
    }

    #[test]
    fn diagnostic_pairing_on_nerves() {
        let s = nerve_monoid(&z2(), 4).unwrap();
        for d in 2..=3 {
            let r = lower_upper_diagnostic(&s, d).unwrap();
            assert!(r.lower_adapted && r.upper_adapted);
            assert_eq!(r.pairing, Pairing::Both);
        }
    }

    #[test]
    fn lax_degree_of_nerve_is_one() {
        let s = nerve_monoid(&z2(), 5).unwrap();
        let r = lax_degree(&s, 4).unwrap();
        assert_eq!(r.smallest_d, Some(2));
        assert_eq!(r.lax_degree, Some(1));
    }

    /// Random triangulation of the convex polygon on vertices `0..=n`.
    fn random_polygon_triangulation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
        fn split<R: Rng>(rng: &mut R, verts: &[usize], out: &mut Vec<Vec<usize>>) {
            if verts.len() < 3 {
                return;
            }
            let k = rng.gen_range(1..verts.len() - 1);
            out.push(vec![verts[0], verts[k], verts[verts.len() - 1]]);
            split(rng, &verts[..=k], out);
            split(rng, &verts[k..], out);
        }
        let verts: Vec<usize> = (0..=n).collect();
        let mut out = Vec::new();
        split(rng, &verts, &mut out);
        out.sort();
        out
    }

    #[test]
    fn adapted_to_any_polygon_triangulation() {
        let s = nerve_monoid(&z3(), 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 3..=5 {
            for _ in 0..5 {
                let t = random_polygon_triangulation(&mut rng, n);
                let k = VertexComplex::new(n, t).unwrap();
                assert!(is_adapted(&s, n, &k).unwrap().adapted);
            }
        }
    }
}
