//! Pipage rounding on partition and uniform matroids.

use alloc::vec;
use alloc::vec::Vec;

use super::polytope::Polytope;
use crate::error::{Error, Result};
use crate::extensions::{multilinear_eval_exact, FractionalPoint};
use crate::matroid::Matroid;
use crate::set::Set;
use crate::value::ValueOracle;

const SNAP: f64 = 1e-12;

/// Groups of elements and how many of each group may be chosen.
fn groups(p: &Polytope) -> Result<Vec<(Vec<usize>, usize)>> {
    let n = p.n();
    match p {
        Polytope::Box { .. } | Polytope::Matroid(Matroid::Free { .. }) => Ok((0..n).map(|v| (vec![v], 1)).collect()),
        Polytope::Matroid(Matroid::Uniform { rank, .. }) => Ok(vec![((0..n).collect(), *rank)]),
        Polytope::Matroid(Matroid::Partition { part_of, caps }) => Ok(caps
            .iter()
            .enumerate()
            .map(|(j, &c)| ((0..n).filter(|&v| part_of[v] == j).collect(), c))
            .collect()),
        _ => Err(Error::unsupported("pipage rounding needs a box, partition or uniform matroid")),
    }
}

fn snap(z: &mut [f64], v: usize) {
    if z[v] <= SNAP {
        z[v] = 0.0;
    } else if z[v] >= 1.0 - SNAP {
        z[v] = 1.0;
    }
}

fn eval(f: &ValueOracle, z: &[f64]) -> Result<f64> {
    multilinear_eval_exact(f, &FractionalPoint::new(z.to_vec())?)
}

/// Rounds `z ∈ P` to an independent set, one pair of fractional coordinates
/// at a time, keeping whichever endpoint of the `e_u - e_v` segment has the
/// larger exact multilinear value.
///
/// A lone fractional coordinate in a group is rounded to the better of 0
/// and 1, provided 1 fits the group's capacity.
pub fn round_partition_matroid(z: &FractionalPoint, p: &Polytope, f: &ValueOracle) -> Result<Set> {
    let groups = groups(p)?;
    if f.n() != p.n() {
        return Err(Error::invalid("function and polytope have different ground sets"));
    }
    if !p.contains(z)? {
        return Err(Error::precondition("point is not in the polytope"));
    }
    let start = multilinear_eval_exact(f, z)?;
    let mut x: Vec<f64> = z.as_slice().iter().map(|&t| t.min(1.0)).collect();
    for v in 0..x.len() {
        snap(&mut x, v);
    }
    for (members, cap) in &groups {
        loop {
            let frac: Vec<usize> = members.iter().copied().filter(|&v| x[v] > 0.0 && x[v] < 1.0).collect();
            match frac.as_slice() {
                [] => break,
                [u] => {
                    let ones = members.iter().filter(|&&v| x[v] == 1.0).count();
                    let mut lo = x.clone();
                    lo[*u] = 0.0;
                    if ones < *cap {
                        let mut hi = x.clone();
                        hi[*u] = 1.0;
                        x = if eval(f, &hi)? >= eval(f, &lo)? { hi } else { lo };
                    } else {
                        x = lo;
                    }
                }
                [u, v, ..] => {
                    let (u, v) = (*u, *v);
                    let mut up = x.clone();
                    let shift = (1.0 - x[u]).min(x[v]);
                    up[u] += shift;
                    up[v] -= shift;
                    let mut down = x.clone();
                    let shift = x[u].min(1.0 - x[v]);
                    down[u] -= shift;
                    down[v] += shift;
                    x = if eval(f, &up)? >= eval(f, &down)? { up } else { down };
                    snap(&mut x, u);
                    snap(&mut x, v);
                }
            }
        }
    }
    let s: Set = (0..x.len()).filter(|&v| x[v] == 1.0).collect();
    let independent = match p {
        Polytope::Box { .. } => true,
        Polytope::Matroid(m) | Polytope::MatroidBase(m) => m.is_independent(s),
    };
    if !independent {
        return Err(Error::invariant(alloc::format!("rounded set {s} is not independent")));
    }
    let end = f.value(s);
    if end < start - 1e-9 * start.abs().max(1.0) {
        return Err(Error::invariant(alloc::format!(
            "rounding lost value: f({s}) = {end} < {start}"
        )));
    }
    Ok(s)
}
