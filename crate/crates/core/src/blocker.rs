//! Blockers of upward-closed families and peeling to minimal members.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::{FeasibleFamily, ENUMERATION_CAP};
use crate::set::Set;

/// `up[S]` is true iff `S` contains a member of `family`.
fn upward_table(family: &FeasibleFamily) -> Result<Vec<bool>> {
    let n = family.n();
    if n > ENUMERATION_CAP {
        return Err(Error::capacity("blocker enumeration", ENUMERATION_CAP, n));
    }
    let size = 1usize << n;
    let mut up = vec![false; size];
    for bits in 0..size {
        let s = Set::from_bits(bits as u64);
        up[bits] = family.contains(s) || s.iter().any(|v| up[bits & !(1usize << v)]);
    }
    Ok(up)
}

/// Inclusion-minimal members of `family`, in increasing mask order.
pub fn minimal_members(family: &FeasibleFamily) -> Result<Vec<Set>> {
    let up = upward_table(family)?;
    Ok((0..up.len())
        .filter(|&bits| up[bits] && Set::from_bits(bits as u64).iter().all(|v| !up[bits & !(1 << v)]))
        .map(|bits| Set::from_bits(bits as u64))
        .collect())
}

/// The clutter of inclusion-minimal sets meeting every member of `family`.
///
/// Works on the upward closure of the membership oracle. Sorted by size,
/// then by mask.
pub fn compute_blocker(family: &FeasibleFamily) -> Result<Vec<Set>> {
    let n = family.n();
    let up = upward_table(family)?;
    let full = (1usize << n) - 1;
    if !up[full] {
        return Err(Error::infeasible("the family is empty, so its blocker is undefined"));
    }
    // B meets every member iff V \ B contains none.
    let mut out: Vec<Set> = (0..=full)
        .filter(|&b| {
            !up[full & !b] && Set::from_bits(b as u64).iter().all(|v| up[(full & !b) | (1 << v)])
        })
        .map(|b| Set::from_bits(b as u64))
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    Ok(out)
}

/// Removes elements from `s` while membership holds, scanning from the
/// highest index down and repeating until no single removal stays in `family`.
pub fn peel_to_minimal(family: &FeasibleFamily, s: Set) -> Result<Set> {
    if !family.contains(s) {
        return Err(Error::precondition(alloc::format!("{s} is not a member")));
    }
    let mut cur = s;
    loop {
        let mut changed = false;
        let elems: Vec<usize> = cur.iter().collect();
        for &v in elems.iter().rev() {
            if family.contains(cur.without(v)) {
                cur = cur.without(v);
                changed = true;
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}
