use std::ops::RangeInclusive;

use super::{BigradedEntry, BigradedPage, GroupExpr, SpectralError, Unknown};
use crate::abelian::AbelianGroup;

/// `H^q(SO(3); Z)` for `q = 0..=3`. Standard, not derived here.
pub fn so3_cohomology() -> [AbelianGroup; 4] {
    [AbelianGroup::free(1), AbelianGroup::trivial(), AbelianGroup::cyclic(2), AbelianGroup::free(1)]
}

/// `H^p(B; Z_2)`-type entry `(H^p ⊗ Z_2) ⊕ Tor(H^{p+1}, Z_2)` as a group
/// expression.
pub fn mod2_row_entry(hp: &GroupExpr, hp1: &GroupExpr) -> GroupExpr {
    let count = hp.known.tensor_z2() + hp1.known.tor_z2();
    let mut e = GroupExpr::known(AbelianGroup::from_cyclic_orders(vec![2u32.into(); count]));
    for u in &hp.unknowns {
        if let Unknown::T(k) = u {
            e = e.with_unknown(Unknown::TensorZ2(*k));
        }
    }
    for u in &hp1.unknowns {
        if let Unknown::T(k) = u {
            e = e.with_unknown(Unknown::TorZ2(*k));
        }
    }
    e
}

/// E2 page of an `SO(3)` bundle over a simply connected base with the given
/// integral cohomology, restricted to columns in `window`. Rows 0 and 3 copy
/// the base groups, row 2 is the base with `Z_2` coefficients.
pub fn so3_e2_page(base: &[GroupExpr], window: RangeInclusive<u32>) -> Result<BigradedPage, SpectralError> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi || hi as usize >= base.len() {
        return Err(SpectralError::Window { from: lo, to: hi, available: base.len() });
    }
    let at = |p: u32| base.get(p as usize).cloned().unwrap_or_default();
    let mut page = BigradedPage::new(2, 3);
    for p in window {
        page.insert(BigradedEntry { p, q: 0, group: at(p), labels: Vec::new() });
        page.insert(BigradedEntry { p, q: 2, group: mod2_row_entry(&at(p), &at(p + 1)), labels: Vec::new() });
        page.insert(BigradedEntry { p, q: 3, group: at(p), labels: Vec::new() });
    }
    Ok(page)
}
