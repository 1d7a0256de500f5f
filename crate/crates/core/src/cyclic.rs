//! Exact rational geometry of cyclic polytopes: moment-curve points,
//! envelope facets by determinant signs, and certification of the
//! combinatorial triangulations. No floating point anywhere.

use itertools::Itertools;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::segal::{gale_triangulation, Kind};

pub type Rat = BigRational;

fn rat(i: i64) -> Rat {
    BigRational::from_integer(BigInt::from(i))
}

/// Point on the moment curve: `(t, t^2, ..., t^d)`.
pub fn moment_point(t: i64, d: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(d);
    let mut power = rat(1);
    let base = rat(t);
    for _ in 0..d {
        power *= &base;
        out.push(power.clone());
    }
    out
}

/// Exact determinant by fraction-free Gaussian elimination on rationals.
pub fn det(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    let mut m: Vec<Vec<Rat>> = mat.to_vec();
    let mut sign = Rat::one();
    let mut result = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        let p = m[col][col].clone();
        result *= &p;
        for r in (col + 1)..n {
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    sign * result
}

/// Solves a square exact linear system, if nonsingular.
pub fn solve(mat: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = mat.len();
    let mut m: Vec<Vec<Rat>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let sub = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn orientation_row(p: &[Rat]) -> Vec<Rat> {
    let mut row = Vec::with_capacity(p.len() + 1);
    row.push(Rat::one());
    row.extend_from_slice(p);
    row
}

/// Facets of the lower or upper envelope of the cyclic polytope one
/// dimension up, which project to the triangulation by dropping the last
/// coordinate. A `(d+1)`-subset spans a lower (resp. upper) facet when
/// every other vertex lies strictly above (resp. below) its affine hull.
pub fn envelope_facets(n: usize, d: usize, side: Kind) -> Result<Vec<Vec<usize>>> {
    if d + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "need more than {} points for dimension {}",
            d + 1,
            d
        )));
    }
    let upstairs = d + 1;
    let points: Vec<Vec<Rat>> = (0..=n as i64).map(|t| moment_point(t, upstairs)).collect();
    let mut facets = Vec::new();
    for subset in (0..=n).combinations(d + 1) {
        // Reference point: the first vertex moved straight up.
        let mut lifted = points[subset[0]].clone();
        let last = lifted.len() - 1;
        lifted[last] = &lifted[last] + Rat::one();
        let side_of = |p: &[Rat]| -> Result<i32> {
            let mut mat: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| orientation_row(&points[i]))
                .collect();
            mat.push(orientation_row(p));
            let value = det(&mat);
            if value.is_zero() {
                return Err(Error::Invariant(
                    "degenerate orientation on the moment curve".into(),
                ));
            }
            Ok(if value.is_positive() { 1 } else { -1 })
        };
        let up = side_of(&lifted)?;
        let mut is_lower = true;
        let mut is_upper = true;
        for v in 0..=n {
            if subset.contains(&v) {
                continue;
            }
            let s = side_of(&points[v])?;
            if s == up {
                is_upper = false;
            } else {
                is_lower = false;
            }
        }
        let keep = match side {
            Kind::Lower => is_lower,
            Kind::Upper => is_upper,
        };
        if keep {
            facets.push(subset);
        }
    }
    Ok(facets)
}

/// The combinatorial evenness triangulations agree with the geometric
/// envelope for both sides.
pub fn cross_check_gale(n: usize, d: usize) -> Result<bool> {
    for side in [Kind::Lower, Kind::Upper] {
        let geometric = envelope_facets(n, d, side)?;
        let combinatorial = gale_triangulation(n, d, side)?.simplices;
        if geometric != combinatorial {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Volume (scaled by `d!`) of the simplex on the given moment parameters.
fn simplex_volume_times_factorial(subset: &[usize], d: usize) -> Rat {
    let base = moment_point(subset[0] as i64, d);
    let mat: Vec<Vec<Rat>> = subset[1..]
        .iter()
        .map(|&i| {
            moment_point(i as i64, d)
                .iter()
                .zip(&base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    det(&mat).abs()
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub d: usize,
    pub side: Kind,
    pub seed: u64,
    pub samples: usize,
    /// Common total volume of the two triangulations, scaled by `d!`.
    pub total_volume: Rat,
    pub volumes_equal: bool,
    pub ok: bool,
    pub witness: Option<String>,
}

/// Exact barycentric coordinates of `p` with respect to the simplex on the
/// given moment parameters.
fn barycentric(subset: &[usize], d: usize, p: &[Rat]) -> Vec<Rat> {
    let mat: Vec<Vec<Rat>> = (0..=d)
        .map(|row| {
            subset
                .iter()
                .map(|&i| {
                    if row == 0 {
                        Rat::one()
                    } else {
                        moment_point(i as i64, d)[row - 1].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut rhs = vec![Rat::one()];
    rhs.extend_from_slice(p);
    solve(&mat, &rhs).expect("moment simplices are nonsingular")
}

/// Certifies one triangulation: equal total volume on both sides, and
/// sampled rational points of the hull land in at least one simplex, with
/// overlaps confined to shared faces.
pub fn certify_triangulation(
    n: usize,
    d: usize,
    side: Kind,
    samples: usize,
    seed: u64,
) -> Result<Certificate> {
    let lower = gale_triangulation(n, d, Kind::Lower)?.simplices;
    let upper = gale_triangulation(n, d, Kind::Upper)?.simplices;
    let vol = |t: &[Vec<usize>]| -> Rat {
        t.iter()
            .map(|s| simplex_volume_times_factorial(s, d))
            .fold(Rat::zero(), |a, b| a + b)
    };
    let (vl, vu) = (vol(&lower), vol(&upper));
    let volumes_equal = vl == vu;
    let simplices = match side {
        Kind::Lower => &lower,
        Kind::Upper => &upper,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    'outer: for _ in 0..samples {
        // Random rational convex combination of all hull vertices.
        let weights: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..=8)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        let mut p = vec![Rat::zero(); d];
        for (i, &w) in weights.iter().enumerate() {
            let q = moment_point(i as i64, d);
            for c in 0..d {
                p[c] = &p[c] + &q[c] * rat(w) / rat(total);
            }
        }
        let mut containing: Vec<(usize, Vec<usize>)> = Vec::new();
        for (si, subset) in simplices.iter().enumerate() {
            let coords = barycentric(subset, d, &p);
            if coords.iter().all(|c| !c.is_negative()) {
                let support: Vec<usize> = subset
                    .iter()
                    .zip(&coords)
                    .filter(|(_, c)| c.is_positive())
                    .map(|(&v, _)| v)
                    .collect();
                containing.push((si, support));
            }
        }
        if containing.is_empty() {
            witness = Some(format!("sampled point {:?} lies in no simplex", weights));
            break;
        }
        for a in 0..containing.len() {
            for b in (a + 1)..containing.len() {
                let (ia, sa) = &containing[a];
                let (ib, sb) = &containing[b];
                let shared: Vec<usize> = simplices[*ia]
                    .iter()
                    .copied()
                    .filter(|v| simplices[*ib].contains(v))
                    .collect();
                if !sa.iter().all(|v| shared.contains(v))
                    || !sb.iter().all(|v| shared.contains(v))
                {
                    witness = Some(format!(
                        "overlap of simplices {:?} and {:?} off their shared face",
                        simplices[*ia], simplices[*ib]
                    ));
                    break 'outer;
                }
            }
        }
    }
    let ok = volumes_equal && witness.is_none();
    Ok(Certificate {
        n,
        d,
        side,
        seed,
        samples,
        total_volume: vl,
        volumes_equal,
        ok,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_points() {
        assert_eq!(moment_point(0, 3), vec![rat(0), rat(0), rat(0)]);
        assert_eq!(moment_point(2, 3), vec![rat(2), rat(4), rat(8)]);
    }

    #[test]
    fn vandermonde_positivity() {
        // Any d+1 distinct parameters span positive volume.
        for d in 2..=3 {
            for subset in (0..=6usize).combinations(d + 1) {
                assert!(simplex_volume_times_factorial(&subset, d).is_positive());
            }
        }
    }

    #[test]
    fn envelope_matches_evenness() {
        assert_eq!(
            envelope_facets(3, 2, Kind::Lower).unwrap(),
            vec![vec![0, 1, 2], vec![0, 2, 3]]
        );
        assert_eq!(
            envelope_facets(4, 2, Kind::Upper).unwrap(),
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4]]
        );
        for d in 2..=3 {
            for n in (d + 1)..=6 {
                assert!(cross_check_gale(n, d).unwrap(), "n = {}, d = {}", n, d);
            }
        }
    }

    #[test]
    fn certification_small() {
        for d in 2..=3 {
            for n in (d + 1)..=5 {
                for side in [Kind::Lower, Kind::Upper] {
                    let c = certify_triangulation(n, d, side, 50, 41).unwrap();
                    assert!(c.ok, "n = {}, d = {}, {:?}: {:?}", n, d, side, c.witness);
                }
            }
        }
    }

    #[test]
    fn quadrilateral_area() {
        let c = certify_triangulation(3, 2, Kind::Lower, 5, 1).unwrap();
        // Triangles 012 and 023 on the parabola: 2 x area = 2 + 6.
        assert_eq!(c.total_volume, rat(8));
        assert!(c.volumes_equal);
    }
}
