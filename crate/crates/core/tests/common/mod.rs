//! Independent enumeration oracle shared by the integration tests: an
//! exhaustive scan of all `n^(n²)` tables plus deduplication by brute-force
//! relabeling.

use std::collections::BTreeSet;

use itertools::Itertools;

/// Cells read by the first failing associativity triple, or `None`.
fn failing_cells(n: usize, t: &[u8]) -> Option<[usize; 4]> {
    for i in 0..n {
        for j in 0..n {
            let ij = t[i * n + j] as usize;
            for k in 0..n {
                let jk = t[j * n + k] as usize;
                if t[ij * n + k] != t[i * n + jk] {
                    return Some([i * n + j, ij * n + k, j * n + k, i * n + jk]);
                }
            }
        }
    }
    None
}

/// Every associative table of order `n`, in odometer order. A failure
/// depends only on four cells, so the scan jumps past every table that
/// agrees with the current one on those cells.
pub fn brute_force(n: usize) -> Vec<Vec<u8>> {
    let cells = n * n;
    let mut t = vec![0u8; cells];
    let mut out = Vec::new();
    loop {
        let pos = match failing_cells(n, &t) {
            None => {
                out.push(t.clone());
                cells - 1
            }
            Some(c) => *c.iter().max().unwrap(),
        };
        // increment at `pos`, clearing everything less significant
        for cell in t.iter_mut().skip(pos + 1) {
            *cell = 0;
        }
        let mut p = pos;
        loop {
            t[p] += 1;
            if (t[p] as usize) < n {
                break;
            }
            t[p] = 0;
            if p == 0 {
                return out;
            }
            p -= 1;
        }
    }
}

fn relabel(n: usize, t: &[u8], perm: &[usize]) -> Vec<u8> {
    let mut r = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            r[perm[i] * n + perm[j]] = perm[t[i * n + j] as usize] as u8;
        }
    }
    r
}

fn transpose(n: usize, t: &[u8]) -> Vec<u8> {
    (0..n * n).map(|c| t[(c % n) * n + c / n]).collect()
}

pub fn dedup(n: usize, tables: &[Vec<u8>], with_dual: bool) -> BTreeSet<Vec<u8>> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    tables
        .iter()
        .map(|t| {
            let mut variants = vec![t.clone()];
            if with_dual {
                variants.push(transpose(n, t));
            }
            variants
                .iter()
                .flat_map(|v| perms.iter().map(move |p| relabel(n, v, p)))
                .min()
                .unwrap()
        })
        .collect()
}
