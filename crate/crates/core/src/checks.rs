//! Exhaustive and sampled structural checkers.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family::FeasibleFamily;
use crate::set::Set;
use crate::value::ValueOracle;

/// Absolute tolerance for every numeric comparison in the checkers.
pub const TOLERANCE: f64 = 1e-9;

/// Default ground set cap for exhaustive checks.
pub const EXHAUSTIVE_CAP: usize = 14;

/// Ground set cap for the matroid axiom check.
pub const MATROID_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive { cap: usize },
    Sampled { seed: u64, trials: usize },
}

impl CheckMode {
    pub const fn exhaustive() -> Self {
        CheckMode::Exhaustive {
            cap: EXHAUSTIVE_CAP,
        }
    }
}

impl Default for CheckMode {
    fn default() -> Self {
        CheckMode::exhaustive()
    }
}

/// Outcome of a check. A failing verdict carries the offending pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<(Set, Set)>,
}

impl Verdict {
    pub const PASS: Verdict = Verdict {
        holds: true,
        witness: None,
    };

    pub fn fail(a: Set, b: Set) -> Self {
        Verdict {
            holds: false,
            witness: Some((a, b)),
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Set {
    Set::from_bits(rng.gen::<u64>()).intersection(Set::full(n))
}

fn cap_check(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::capacity(what, cap, n))
    } else {
        Ok(())
    }
}

/// Searches for `S, T` with `f(S) + f(T) < f(S ∪ T) + f(S ∩ T) - 1e-9`.
///
/// The exhaustive mode tests the equivalent local condition
/// `f(A+u) + f(A+v) >= f(A+u+v) + f(A)` and reports `(A+u, A+v)`.
pub fn check_submodular(f: &ValueOracle, mode: CheckMode) -> Result<Verdict> {
    let n = f.n();
    match mode {
        CheckMode::Exhaustive { cap } => {
            cap_check("exhaustive submodularity check", n, cap)?;
            for a in Set::all(n) {
                let fa = f.value(a);
                let rest: Vec<usize> = a.complement(n).to_vec();
                for (i, &u) in rest.iter().enumerate() {
                    let fu = f.value(a.with(u));
                    for &v in &rest[i + 1..] {
                        let lhs = fu + f.value(a.with(v));
                        let rhs = f.value(a.with(u).with(v)) + fa;
                        if lhs < rhs - TOLERANCE {
                            return Ok(Verdict::fail(a.with(u), a.with(v)));
                        }
                    }
                }
            }
            Ok(Verdict::PASS)
        }
        CheckMode::Sampled { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let (s, t) = (random_subset(&mut rng, n), random_subset(&mut rng, n));
                if f.value(s) + f.value(t) < f.value(s.union(t)) + f.value(s.intersection(t)) - TOLERANCE {
                    return Ok(Verdict::fail(s, t));
                }
            }
            Ok(Verdict::PASS)
        }
    }
}

/// Searches for `S` and `v ∉ S` with `f(S + v) < f(S) - 1e-9`; witness `(S, S + v)`.
pub fn check_monotone(f: &ValueOracle, mode: CheckMode) -> Result<Verdict> {
    let n = f.n();
    let falls = |s: Set, v: usize| f.value(s.with(v)) < f.value(s) - TOLERANCE;
    match mode {
        CheckMode::Exhaustive { cap } => {
            cap_check("exhaustive monotonicity check", n, cap)?;
            for s in Set::all(n) {
                if let Some(v) = s.complement(n).iter().find(|&v| falls(s, v)) {
                    return Ok(Verdict::fail(s, s.with(v)));
                }
            }
            Ok(Verdict::PASS)
        }
        CheckMode::Sampled { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let s = random_subset(&mut rng, n);
                if s == Set::full(n) {
                    continue;
                }
                let free = s.complement(n).to_vec();
                let v = free[rng.gen_range(0..free.len())];
                if falls(s, v) {
                    return Ok(Verdict::fail(s, s.with(v)));
                }
            }
            Ok(Verdict::PASS)
        }
    }
}

fn membership_table(family: &FeasibleFamily, cap: usize) -> Result<Vec<bool>> {
    let n = family.n();
    cap_check("family enumeration", n, cap)?;
    Ok(Set::all(n).map(|s| family.contains(s)).collect())
}

/// Largest member inside each `U`, assuming downward closure.
fn rank_table(member: &[bool]) -> Vec<Set> {
    let mut best = vec![Set::EMPTY; member.len()];
    for bits in 0..member.len() {
        let u = Set::from_bits(bits as u64);
        best[bits] = if member[bits] {
            u
        } else {
            u.iter()
                .map(|v| best[bits & !(1 << v)])
                .max_by_key(|s| s.len())
                .unwrap_or(Set::EMPTY)
        };
    }
    best
}

/// Checks the independence axioms: `∅ ∈ F`, downward closure, exchange.
///
/// Witnesses: `(∅, ∅)` if the empty set is missing; `(S, S - v)` for a
/// downward-closure failure; `(I, J)` with `|I| < |J|` and no element of
/// `J \ I` extending `I` for an exchange failure.
pub fn check_matroid(family: &FeasibleFamily) -> Result<Verdict> {
    let n = family.n();
    let member = membership_table(family, MATROID_CAP)?;
    if !member[0] {
        return Ok(Verdict::fail(Set::EMPTY, Set::EMPTY));
    }
    for bits in 0..member.len() {
        if !member[bits] {
            continue;
        }
        let s = Set::from_bits(bits as u64);
        if let Some(v) = s.iter().find(|&v| !member[bits & !(1 << v)]) {
            return Ok(Verdict::fail(s, s.without(v)));
        }
    }
    // I violates exchange iff a larger independent set avoids every element
    // that extends I.
    let best = rank_table(&member);
    for bits in 0..member.len() {
        if !member[bits] {
            continue;
        }
        let i = Set::from_bits(bits as u64);
        let ext = i
            .complement(n)
            .iter()
            .filter(|&v| member[bits | (1 << v)])
            .collect::<Set>();
        let j = best[ext.complement(n).bits() as usize];
        if j.len() > i.len() {
            return Ok(Verdict::fail(i, j));
        }
    }
    Ok(Verdict::PASS)
}

/// `max |basis| / min |basis|` maximized over `U ⊆ V`, as a fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PRatio {
    pub num: usize,
    pub den: usize,
}

impl PRatio {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn exceeds(self, other: PRatio) -> bool {
        self.num * other.den > other.num * self.den
    }
}

/// The smallest `p` for which `family` is a `p`-system.
///
/// A basis of `U` is an inclusion-maximal member contained in `U`. Sets `U`
/// whose only basis is `∅` count as ratio 1, as do sets with no basis at all.
pub fn p_system_ratio(family: &FeasibleFamily) -> Result<PRatio> {
    let n = family.n();
    let member = membership_table(family, EXHAUSTIVE_CAP)?;
    let size = member.len();
    let downward = (0..size).all(|b| {
        !member[b] || Set::from_bits(b as u64).iter().all(|v| member[b & !(1 << v)])
    });
    let mut max_b = vec![0usize; size];
    let mut min_b = vec![usize::MAX; size];
    if downward {
        // I is a basis of exactly the U in [I, V \ ext(I)].
        for bits in 0..size {
            if !member[bits] {
                continue;
            }
            let i = Set::from_bits(bits as u64);
            let ext = i
                .complement(n)
                .iter()
                .filter(|&v| member[bits | (1 << v)])
                .collect::<Set>();
            let free = ext.union(i).complement(n);
            for extra in free.subsets() {
                let u = i.union(extra).bits() as usize;
                max_b[u] = max_b[u].max(i.len());
                min_b[u] = min_b[u].min(i.len());
            }
        }
    } else {
        for bits in 0..size {
            let u = Set::from_bits(bits as u64);
            let inside: Vec<Set> = u.subsets().filter(|s| member[s.bits() as usize]).collect();
            for &i in &inside {
                let maximal = !inside.iter().any(|&j| j != i && i.is_subset(j));
                if maximal {
                    max_b[bits] = max_b[bits].max(i.len());
                    min_b[bits] = min_b[bits].min(i.len());
                }
            }
        }
    }
    let mut worst = PRatio { num: 1, den: 1 };
    for u in 0..size {
        if min_b[u] == usize::MAX || max_b[u] == 0 {
            continue;
        }
        let r = PRatio {
            num: max_b[u],
            den: min_b[u],
        };
        if r.den == 0 {
            return Ok(PRatio { num: 1, den: 0 });
        }
        if r.exceeds(worst) {
            worst = r;
        }
    }
    Ok(worst)
}

/// Closure under union and intersection; witness is a failing pair.
pub fn check_ring(family: &FeasibleFamily) -> Result<Verdict> {
    closure_check(family, |_, _| true)
}

/// Closure under union and intersection for crossing pairs
/// (`A ∩ B ≠ ∅` and `A ∪ B ≠ V`).
pub fn check_crossing(family: &FeasibleFamily) -> Result<Verdict> {
    let full = Set::full(family.n());
    closure_check(family, move |a, b| a.intersects(b) && a.union(b) != full)
}

fn closure_check(family: &FeasibleFamily, applies: impl Fn(Set, Set) -> bool) -> Result<Verdict> {
    let members = family.members()?;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if applies(a, b) && !(family.contains(a.union(b)) && family.contains(a.intersection(b))) {
                return Ok(Verdict::fail(a, b));
            }
        }
    }
    Ok(Verdict::PASS)
}
