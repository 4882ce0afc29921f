//! Value oracles: black-box set functions with a memo cache.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use core::cell::RefCell;
use core::fmt;

use crate::error::{Error, Result};
use crate::set::Set;

/// A set function over `{0, .., ground_size()-1}`.
pub trait SetFunction {
    fn ground_size(&self) -> usize;
    fn eval(&self, s: Set) -> f64;
}

/// Structural properties an oracle claims to have. Claims are promises made
/// by whoever built the oracle; `check_*` in [`crate::checks`] verifies them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Claims {
    pub monotone: bool,
    pub submodular: bool,
    pub normalized: bool,
}

impl Claims {
    pub const MONOTONE_SUBMODULAR: Claims = Claims {
        monotone: true,
        submodular: true,
        normalized: true,
    };
    pub const SUBMODULAR: Claims = Claims {
        monotone: false,
        submodular: true,
        normalized: true,
    };
    pub const NONE: Claims = Claims {
        monotone: false,
        submodular: false,
        normalized: false,
    };

    /// Properties that survive taking a nonnegative sum.
    pub fn meet(self, other: Claims) -> Claims {
        Claims {
            monotone: self.monotone && other.monotone,
            submodular: self.submodular && other.submodular,
            normalized: self.normalized && other.normalized,
        }
    }
}

/// Memoizing handle around a [`SetFunction`].
///
/// Clones share both the function and the cache. The cache sits behind a
/// `RefCell`, so an oracle is confined to one thread; parallel callers build
/// their own oracles.
#[derive(Clone)]
pub struct ValueOracle {
    func: Rc<dyn SetFunction>,
    cache: Rc<RefCell<BTreeMap<u64, f64>>>,
    claims: Claims,
}

impl ValueOracle {
    pub fn new<F: SetFunction + 'static>(func: F, claims: Claims) -> Self {
        ValueOracle {
            func: Rc::new(func),
            cache: Rc::new(RefCell::new(BTreeMap::new())),
            claims,
        }
    }

    /// Wraps a closure. Handy for ad-hoc functions in tests and experiments.
    pub fn from_fn<F>(n: usize, f: F, claims: Claims) -> Self
    where
        F: Fn(Set) -> f64 + 'static,
    {
        ValueOracle::new(
            ClosureFunction {
                n,
                f: Box::new(f),
            },
            claims,
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.func.ground_size()
    }

    #[inline]
    pub fn claims(&self) -> Claims {
        self.claims
    }

    /// Returns a handle with the same function and cache but different claims.
    pub fn with_claims(&self, claims: Claims) -> Self {
        ValueOracle {
            claims,
            ..self.clone()
        }
    }

    /// `f(S)`, served from the cache when possible.
    pub fn value(&self, s: Set) -> f64 {
        if let Some(&v) = self.cache.borrow().get(&s.bits()) {
            return v;
        }
        let v = self.func.eval(s);
        self.cache.borrow_mut().insert(s.bits(), v);
        v
    }

    /// `f(S)` bypassing the cache.
    pub fn value_uncached(&self, s: Set) -> f64 {
        self.func.eval(s)
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.borrow().len()
    }

    pub fn clear_cache(&self) {
        self.cache.borrow_mut().clear();
    }
}

impl SetFunction for ValueOracle {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn eval(&self, s: Set) -> f64 {
        self.value(s)
    }
}

impl fmt::Debug for ValueOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueOracle")
            .field("n", &self.n())
            .field("claims", &self.claims)
            .field("cached", &self.cached_entries())
            .finish()
    }
}

struct ClosureFunction {
    n: usize,
    f: Box<dyn Fn(Set) -> f64>,
}

impl SetFunction for ClosureFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Set) -> f64 {
        (self.f)(s)
    }
}

/// `f(S ∪ {v}) − f(S)`; `v` must not already be in `S`.
pub fn eval_marginal(oracle: &ValueOracle, s: Set, v: usize) -> Result<f64> {
    if v >= oracle.n() {
        return Err(Error::invalid(alloc::format!(
            "element {v} outside ground set of size {}",
            oracle.n()
        )));
    }
    if s.contains(v) {
        return Err(Error::precondition(alloc::format!(
            "element {v} already in {s}"
        )));
    }
    Ok(oracle.value(s.with(v)) - oracle.value(s))
}
