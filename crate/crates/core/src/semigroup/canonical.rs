use serde::{Deserialize, Serialize};

use super::FiniteSemigroup;

/// Equivalence used when identifying semigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CanonicalMode {
    /// Up to isomorphism.
    Iso,
    /// Up to isomorphism or anti-isomorphism.
    IsoOrAntiIso,
}

impl CanonicalMode {
    /// Name used in catalog headers and on the command line.
    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalMode::Iso => "iso",
            CanonicalMode::IsoOrAntiIso => "equiv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "iso" => Some(CanonicalMode::Iso),
            "equiv" | "iso_or_anti_iso" | "anti" => Some(CanonicalMode::IsoOrAntiIso),
            _ => None,
        }
    }
}

/// Calls `visit` once for every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Lexicographically smallest relabeled table of `s`, minimized with `best`.
fn minimize_into(s: &FiniteSemigroup, best: &mut [u8]) {
    let n = s.order();
    let mut inv = vec![0usize; n];
    let mut candidate = vec![0u8; n * n];
    for_each_permutation(n, |perm| {
        // perm maps old -> new; inv maps new -> old
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut decided = false;
        let mut smaller = false;
        for a in 0..n {
            for b in 0..n {
                let v = perm[s.mul(inv[a], inv[b])] as u8;
                let idx = a * n + b;
                candidate[idx] = v;
                if !decided {
                    if v < best[idx] {
                        decided = true;
                        smaller = true;
                    } else if v > best[idx] {
                        return;
                    }
                }
            }
        }
        if smaller {
            best.copy_from_slice(&candidate);
        }
    });
}

/// Minimal flattened table over all relabelings (and, in
/// [`CanonicalMode::IsoOrAntiIso`], over the dual as well).
///
/// Brute force over `n!` permutations; intended for `n <= 6`.
pub fn canonical_form(s: &FiniteSemigroup, mode: CanonicalMode) -> Vec<u8> {
    let n = s.order();
    let mut best = vec![u8::MAX; n * n];
    minimize_into(s, &mut best);
    if mode == CanonicalMode::IsoOrAntiIso {
        minimize_into(&s.dual(), &mut best);
    }
    best
}

/// Textual id `<order>:<digits>` of the canonical table.
pub fn canonical_code(s: &FiniteSemigroup, mode: CanonicalMode) -> String {
    let form = canonical_form(s, mode);
    let digits: String = form
        .iter()
        .map(|&v| char::from_digit(v as u32, 36).expect("order <= 36"))
        .collect();
    format!("{}:{}", s.order(), digits)
}

/// Number of automorphisms of `s`.
pub fn automorphism_count(s: &FiniteSemigroup) -> usize {
    let n = s.order();
    let mut count = 0;
    for_each_permutation(n, |perm| {
        let fixes = (0..n).all(|a| (0..n).all(|b| perm[s.mul(a, b)] == s.mul(perm[a], perm[b])));
        if fixes {
            count += 1;
        }
    });
    count
}
