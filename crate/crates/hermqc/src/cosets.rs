//! q^2-cyclotomic cosets modulo n, and the skew-symmetry classification that
//! drives Hermitian dual-containment of cyclic defining sets: C_i is skew
//! symmetric when (-q * i) mod n stays inside C_i, and otherwise pairs with
//! the skew partner C_{(-q*i) mod n}.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    /// Minimal member, the canonical representative.
    pub rep: u64,
    /// Members sorted ascending.
    pub members: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewKind {
    Symmetric,
    Asymmetric { partner: u64 },
}

/// The q^2-cyclotomic coset of i modulo n.
pub fn coset_of(n: u64, q2: u64, i: u64) -> Coset {
    let start = i % n;
    let mut members = vec![start];
    let mut cur = (start * q2) % n;
    while cur != start {
        members.push(cur);
        cur = (cur * q2) % n;
    }
    members.sort_unstable();
    Coset { rep: members[0], members }
}

/// All q^2-cyclotomic cosets modulo n, ordered by representative.
pub fn cyclotomic_cosets(n: u64, q2: u64) -> Vec<Coset> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i as usize] {
            continue;
        }
        let c = coset_of(n, q2, i);
        for &m in &c.members {
            seen[m as usize] = true;
        }
        out.push(c);
    }
    out
}

/// Skew classification of a coset with respect to i -> (-q * i) mod n.
pub fn skew_kind(n: u64, q: u64, coset: &Coset) -> SkewKind {
    let image = (n - (q * coset.rep) % n) % n;
    if coset.members.binary_search(&image).is_ok() {
        SkewKind::Symmetric
    } else {
        SkewKind::Asymmetric { partner: coset_of(n, q * q, image).rep }
    }
}

/// Image of a defining set under i -> (-q * i) mod n.
pub fn skew_image(n: u64, q: u64, set: &BTreeSet<u64>) -> BTreeSet<u64> {
    set.iter().map(|&i| (n - (q * i) % n) % n).collect()
}

/// A union of cosets T yields a Hermitian dual-containing cyclic code
/// exactly when T avoids its own skew image.
pub fn defining_set_dual_containing(n: u64, q: u64, set: &BTreeSet<u64>) -> bool {
    set.is_disjoint(&skew_image(n, q, set))
}

/// Closure of a set under multiplication by q^2 (coset closure).
pub fn coset_closure(n: u64, q2: u64, reps: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &r in reps {
        out.extend(coset_of(n, q2, r).members.iter().copied());
    }
    out
}

/// True when the set is a union of q^2-cyclotomic cosets.
pub fn is_coset_closed(n: u64, q2: u64, set: &BTreeSet<u64>) -> bool {
    set.iter().all(|&i| set.contains(&((i * q2) % n)))
}
