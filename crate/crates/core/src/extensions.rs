//! Lovász and multilinear extensions.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::set::{Set, MAX_ELEMENTS};
use crate::value::ValueOracle;

/// Most fractional coordinates an exact multilinear evaluation enumerates.
pub const MULTILINEAR_CAP: usize = 20;

/// A nonnegative vector over the ground set.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalPoint {
    z: Vec<f64>,
}

impl FractionalPoint {
    /// Any nonnegative finite vector.
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.len() > MAX_ELEMENTS {
            return Err(Error::capacity("point dimension", MAX_ELEMENTS, z.len()));
        }
        if let Some((v, x)) = z.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::invalid(alloc::format!(
                "component {v} is {x}; points must be finite and nonnegative"
            )));
        }
        Ok(FractionalPoint { z })
    }

    /// A point of the unit cube.
    pub fn unit(z: Vec<f64>) -> Result<Self> {
        let p = FractionalPoint::new(z)?;
        if let Some((v, x)) = p.z.iter().enumerate().find(|(_, x)| **x > 1.0 + 1e-12) {
            return Err(Error::invalid(alloc::format!("component {v} is {x} > 1")));
        }
        Ok(p)
    }

    pub fn zeros(n: usize) -> Self {
        FractionalPoint { z: vec![0.0; n] }
    }

    /// `χ^S` in dimension `n`.
    pub fn indicator(n: usize, s: Set) -> Self {
        FractionalPoint {
            z: (0..n).map(|v| if s.contains(v) { 1.0 } else { 0.0 }).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.z.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.z
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.z
    }

    /// Sets component `v`; negative or non-finite values are clamped to 0.
    pub fn set(&mut self, v: usize, x: f64) {
        self.z[v] = if x.is_finite() && x > 0.0 { x } else { 0.0 };
    }

    /// `{v : z(v) > 0}`.
    pub fn support(&self) -> Set {
        self.z
            .iter()
            .enumerate()
            .filter(|(_, x)| **x > 0.0)
            .map(|(v, _)| v)
            .collect()
    }

    /// `z(S)`.
    pub fn mass(&self, s: Set) -> f64 {
        s.iter().map(|v| self.z[v]).sum()
    }

    #[must_use]
    pub fn scaled(&self, alpha: f64) -> Self {
        FractionalPoint {
            z: self.z.iter().map(|x| x * alpha.max(0.0)).collect(),
        }
    }

    /// `z` restricted to `s`, zero elsewhere.
    #[must_use]
    pub fn restricted(&self, s: Set) -> Self {
        FractionalPoint {
            z: self
                .z
                .iter()
                .enumerate()
                .map(|(v, x)| if s.contains(v) { *x } else { 0.0 })
                .collect(),
        }
    }

    /// Elements sorted by nonincreasing value, ties by ascending index.
    pub fn level_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.z.len()).collect();
        order.sort_by(|&a, &b| self.z[b].total_cmp(&self.z[a]).then(a.cmp(&b)));
        order
    }
}

impl Index<usize> for FractionalPoint {
    type Output = f64;
    fn index(&self, v: usize) -> &f64 {
        &self.z[v]
    }
}

fn same_dim(f: &ValueOracle, z: &FractionalPoint) -> Result<()> {
    if f.n() != z.len() {
        return Err(Error::invalid(alloc::format!(
            "point has {} components, function has {} elements",
            z.len(),
            f.n()
        )));
    }
    Ok(())
}

/// `f^L(z) = Σ_j (z_{π(j)} - z_{π(j+1)}) f({π(1), .., π(j)})` over the level order.
pub fn lovasz_eval(f: &ValueOracle, z: &FractionalPoint) -> Result<f64> {
    same_dim(f, z)?;
    let order = z.level_order();
    let mut prefix = Set::EMPTY;
    let mut total = 0.0;
    for (j, &v) in order.iter().enumerate() {
        prefix.insert(v);
        let next = order.get(j + 1).map_or(0.0, |&u| z[u]);
        let gap = z[v] - next;
        if gap > 0.0 {
            total += gap * f.value(prefix);
        }
    }
    Ok(total)
}

/// The greedy vertex of the base polytope for the level order of `z`.
pub fn lovasz_subgradient(f: &ValueOracle, z: &FractionalPoint) -> Result<Vec<f64>> {
    same_dim(f, z)?;
    let mut s = vec![0.0; z.len()];
    let mut prefix = Set::EMPTY;
    let mut prev = f.value(prefix);
    for v in z.level_order() {
        prefix.insert(v);
        let cur = f.value(prefix);
        s[v] = cur - prev;
        prev = cur;
    }
    Ok(s)
}

/// Splits `z` into the set of ones and the list of strictly fractional coordinates.
fn split_unit(z: &FractionalPoint) -> Result<(Set, Vec<usize>)> {
    let mut ones = Set::EMPTY;
    let mut frac = Vec::new();
    for (v, &x) in z.as_slice().iter().enumerate() {
        if x > 1.0 + 1e-12 {
            return Err(Error::invalid(alloc::format!(
                "multilinear extension needs z in [0,1], component {v} is {x}"
            )));
        }
        if x >= 1.0 {
            ones.insert(v);
        } else if x > 0.0 {
            frac.push(v);
        }
    }
    if frac.len() > MULTILINEAR_CAP {
        return Err(Error::capacity(
            "fractional coordinates for exact multilinear evaluation",
            MULTILINEAR_CAP,
            frac.len(),
        ));
    }
    Ok((ones, frac))
}

/// `Σ_T f(base ∪ T) Π_{v∈T} z_v Π_{v∈frac\T} (1 - z_v)` over `T ⊆ frac`.
fn expectation(f: &ValueOracle, z: &FractionalPoint, base: Set, frac: &[usize]) -> f64 {
    let m = frac.len();
    let mut total = 0.0;
    for mask in 0u64..(1u64 << m) {
        let mut s = base;
        let mut p = 1.0;
        for (b, &v) in frac.iter().enumerate() {
            if mask >> b & 1 == 1 {
                s.insert(v);
                p *= z[v];
            } else {
                p *= 1.0 - z[v];
            }
        }
        if p != 0.0 {
            total += p * f.value(s);
        }
    }
    total
}

/// Exact `f^M(z)`, enumerating only the strictly fractional coordinates.
pub fn multilinear_eval_exact(f: &ValueOracle, z: &FractionalPoint) -> Result<f64> {
    same_dim(f, z)?;
    let (ones, frac) = split_unit(z)?;
    Ok(expectation(f, z, ones, &frac))
}

/// `f^M(z | z_v = 1) - f^M(z | z_v = 0)`.
pub fn multilinear_partial(f: &ValueOracle, z: &FractionalPoint, v: usize) -> Result<f64> {
    same_dim(f, z)?;
    if v >= z.len() {
        return Err(Error::invalid(alloc::format!("element {v} outside the point")));
    }
    let (ones, mut frac) = split_unit(z)?;
    frac.retain(|&u| u != v);
    let base = ones.without(v);
    Ok(expectation(f, z, base.with(v), &frac) - expectation(f, z, base, &frac))
}

/// `∇f^M(z)`, one exact partial per coordinate.
pub fn multilinear_gradient(f: &ValueOracle, z: &FractionalPoint) -> Result<Vec<f64>> {
    (0..z.len()).map(|v| multilinear_partial(f, z, v)).collect()
}

/// Monte-Carlo estimate of `f^M(z)`: `(mean, sample std / √samples)`.
pub fn multilinear_eval_mc(f: &ValueOracle, z: &FractionalPoint, samples: usize, seed: u64) -> Result<(f64, f64)> {
    same_dim(f, z)?;
    if samples == 0 {
        return Err(Error::precondition("at least one sample is required"));
    }
    split_unit_bounds(z)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let r: Set = (0..z.len()).filter(|&v| rng.gen::<f64>() < z[v]).collect();
        let x = f.value(r);
        sum += x;
        sum_sq += x * x;
    }
    let n = samples as f64;
    let mean = sum / n;
    let stderr = if samples > 1 {
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        libm::sqrt(var / n)
    } else {
        0.0
    };
    Ok((mean, stderr))
}

/// Monte-Carlo estimate of one partial, from paired samples.
pub fn multilinear_partial_mc(f: &ValueOracle, z: &FractionalPoint, v: usize, samples: usize, rng: &mut ChaCha8Rng) -> f64 {
    let mut sum = 0.0;
    for _ in 0..samples {
        let r: Set = (0..z.len()).filter(|&u| u != v && rng.gen::<f64>() < z[u]).collect();
        sum += f.value(r.with(v)) - f.value(r);
    }
    sum / samples.max(1) as f64
}

fn split_unit_bounds(z: &FractionalPoint) -> Result<()> {
    match z.as_slice().iter().position(|&x| x > 1.0 + 1e-12) {
        Some(v) => Err(Error::invalid(alloc::format!(
            "multilinear extension needs z in [0,1], component {v} is {}",
            z[v]
        ))),
        None => Ok(()),
    }
}
