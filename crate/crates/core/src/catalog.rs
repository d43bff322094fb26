//! Exhaustive enumeration of small semigroups and the on-disk catalog.
//!
//! Catalog files are line oriented:
//!
//! ```text
//! SGCAT v1 mode=iso
//! 1:0
//! 2:0000
//! 2:0001
//! ...
//! ```
//!
//! Each entry is `<order>:<row-major table as base-n digits>`, holding the
//! canonical (minimal) table of its class, sorted by order then table.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::semigroup::{
    automorphism_count, canonical_code, canonical_form, CanonicalMode, FiniteSemigroup,
};

pub const FORMAT_VERSION: u32 = 1;
/// Largest order [`enumerate`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 6;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("order {0} exceeds the enumeration limit of {MAX_ENUMERATION_ORDER}")]
    OrderTooLarge(usize),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("catalog format error at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("catalog validation error at line {line} (entry `{entry}`): {message}")]
    Validation {
        line: usize,
        entry: String,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Every associative table of the given order, as flattened rows, found by
/// row-major backtracking with incremental associativity checks.
pub fn enumerate_labeled(order: usize) -> Result<Vec<Vec<u8>>, CatalogError> {
    check_order(order)?;
    let n = order;
    let first_rows = first_row_prefixes(n);
    let chunks: Vec<Vec<Vec<u8>>> = first_rows
        .into_par_iter()
        .map(|row| {
            let mut out = Vec::new();
            let mut search = Backtrack::new(n);
            search.run_with_prefix(&row, &mut |t| out.push(t.to_vec()));
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// All semigroups of `order` up to the mode's equivalence, sorted by
/// canonical table.
pub fn enumerate(order: usize, mode: CanonicalMode) -> Result<Vec<FiniteSemigroup>, CatalogError> {
    check_order(order)?;
    let n = order;
    let classes: Vec<BTreeSet<Vec<u8>>> = first_row_prefixes(n)
        .into_par_iter()
        .map(|row| {
            let mut forms = BTreeSet::new();
            let mut search = Backtrack::new(n);
            search.run_with_prefix(&row, &mut |t| {
                let s = FiniteSemigroup::from_flat_unchecked(n, t.to_vec());
                forms.insert(canonical_form(&s, mode));
            });
            forms
        })
        .collect();
    let merged: BTreeSet<Vec<u8>> = classes.into_iter().flatten().collect();
    Ok(merged
        .into_iter()
        .map(|t| FiniteSemigroup::from_flat_unchecked(n, t))
        .collect())
}

fn check_order(order: usize) -> Result<(), CatalogError> {
    match order {
        0 => Err(CatalogError::ZeroOrder),
        n if n > MAX_ENUMERATION_ORDER => Err(CatalogError::OrderTooLarge(n)),
        _ => Ok(()),
    }
}

/// All `n^n` possible first rows; the unit of parallel work.
fn first_row_prefixes(n: usize) -> Vec<Vec<u8>> {
    let mut rows = vec![Vec::new()];
    for _ in 0..n {
        rows = rows
            .into_iter()
            .flat_map(|r: Vec<u8>| {
                (0..n as u8).map(move |v| {
                    let mut r = r.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    rows
}

const UNSET: u8 = u8::MAX;

struct Backtrack {
    n: usize,
    table: Vec<u8>,
}

impl Backtrack {
    fn new(n: usize) -> Self {
        Backtrack {
            n,
            table: vec![UNSET; n * n],
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> u8 {
        self.table[a * self.n + b]
    }

    /// Checks `(ab)c = a(bc)` if all four cells are known.
    #[inline]
    fn triple_ok(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.get(a, b);
        let bc = self.get(b, c);
        if ab == UNSET || bc == UNSET {
            return true;
        }
        let left = self.get(ab as usize, c);
        let right = self.get(a, bc as usize);
        left == UNSET || right == UNSET || left == right
    }

    /// Checks every triple whose evaluation reads cell `(i, j)`.
    fn consistent_at(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        for c in 0..n {
            if !self.triple_ok(i, j, c) {
                return false;
            }
        }
        for a in 0..n {
            if !self.triple_ok(a, i, j) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.get(a, b) as usize == i && !self.triple_ok(a, b, j) {
                    return false;
                }
                if self.get(a, b) as usize == j && !self.triple_ok(i, a, b) {
                    return false;
                }
            }
        }
        true
    }

    fn run_with_prefix(&mut self, prefix: &[u8], emit: &mut impl FnMut(&[u8])) {
        self.table.fill(UNSET);
        for (cell, &v) in prefix.iter().enumerate() {
            self.table[cell] = v;
            if !self.consistent_at(cell / self.n, cell % self.n) {
                return;
            }
        }
        self.fill(prefix.len(), emit);
    }

    fn fill(&mut self, cell: usize, emit: &mut impl FnMut(&[u8])) {
        let n = self.n;
        if cell == n * n {
            emit(&self.table);
            return;
        }
        let (i, j) = (cell / n, cell % n);
        for v in 0..n as u8 {
            self.table[cell] = v;
            if self.consistent_at(i, j) {
                self.fill(cell + 1, emit);
            }
        }
        self.table[cell] = UNSET;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub semigroup: FiniteSemigroup,
    /// `<order>:<digits>` of the canonical table.
    pub code: String,
    /// Number of labeled tables on `0..n` in this entry's class.
    pub class_size: usize,
}

impl CatalogEntry {
    fn new(semigroup: FiniteSemigroup, mode: CanonicalMode) -> Self {
        let code = format!("{}:{}", semigroup.order(), semigroup.digits());
        let class_size = class_size(&semigroup, mode);
        CatalogEntry {
            semigroup,
            code,
            class_size,
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn class_size(s: &FiniteSemigroup, mode: CanonicalMode) -> usize {
    let iso = factorial(s.order()) / automorphism_count(s);
    match mode {
        CanonicalMode::Iso => iso,
        CanonicalMode::IsoOrAntiIso => {
            let self_dual = canonical_form(&s.dual(), CanonicalMode::Iso)
                == canonical_form(s, CanonicalMode::Iso);
            if self_dual {
                iso
            } else {
                2 * iso
            }
        }
    }
}

/// A member of an isomorphism-closed universe, keyed by its iso code.
#[derive(Debug, Clone)]
pub struct UniverseMember {
    pub id: String,
    pub semigroup: FiniteSemigroup,
}

/// All semigroups up to some order, deduplicated by canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub mode: CanonicalMode,
    pub format_version: u32,
    /// `levels[k]` holds the entries of order `k + 1`.
    levels: Vec<Vec<CatalogEntry>>,
}

impl Catalog {
    pub fn build(max_order: usize, mode: CanonicalMode) -> Result<Self, CatalogError> {
        check_order(max_order)?;
        let levels = (1..=max_order)
            .map(|n| {
                Ok(enumerate(n, mode)?
                    .into_iter()
                    .map(|s| CatalogEntry::new(s, mode))
                    .collect())
            })
            .collect::<Result<Vec<_>, CatalogError>>()?;
        Ok(Catalog {
            mode,
            format_version: FORMAT_VERSION,
            levels,
        })
    }

    pub fn max_order(&self) -> usize {
        self.levels.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.levels.iter().flatten()
    }

    pub fn entries_of_order(&self, order: usize) -> &[CatalogEntry] {
        order
            .checked_sub(1)
            .and_then(|k| self.levels.get(k))
            .map_or(&[], Vec::as_slice)
    }

    /// Entry counts for orders `1..=max_order`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Restriction to orders `<= max_order`.
    pub fn truncated(&self, max_order: usize) -> Catalog {
        Catalog {
            mode: self.mode,
            format_version: self.format_version,
            levels: self.levels.iter().take(max_order).cloned().collect(),
        }
    }

    /// Every semigroup up to isomorphism. In `equiv` mode the dual of each
    /// entry is added when it is not isomorphic to the entry itself.
    pub fn universe(&self) -> Vec<UniverseMember> {
        let mut members: Vec<UniverseMember> = self
            .entries()
            .flat_map(|e| {
                let mut out = Vec::with_capacity(2);
                match self.mode {
                    CanonicalMode::Iso => out.push(UniverseMember {
                        id: e.code.clone(),
                        semigroup: e.semigroup.clone(),
                    }),
                    CanonicalMode::IsoOrAntiIso => {
                        for s in [e.semigroup.clone(), e.semigroup.dual()] {
                            let form = canonical_form(&s, CanonicalMode::Iso);
                            let canon = FiniteSemigroup::from_flat_unchecked(s.order(), form);
                            let id = canonical_code(&canon, CanonicalMode::Iso);
                            if out.iter().all(|m: &UniverseMember| m.id != id) {
                                out.push(UniverseMember {
                                    id,
                                    semigroup: canon,
                                });
                            }
                        }
                    }
                }
                out
            })
            .collect();
        members.sort_by(|a, b| {
            (a.semigroup.order(), a.semigroup.flat_table())
                .cmp(&(b.semigroup.order(), b.semigroup.flat_table()))
        });
        members
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "SGCAT v{} mode={}\n",
            self.format_version,
            self.mode.as_str()
        );
        for e in self.entries() {
            writeln!(out, "{}", e.code).expect("writing to a String");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Catalog, CatalogError> {
        let format = |line: usize, message: String| CatalogError::Format { line, message };
        let mut lines = text
            .split_inclusive('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| format(1, "empty file".into()))?;
        if !text.ends_with('\n') {
            return Err(format(
                text.lines().count(),
                "truncated: missing final newline".into(),
            ));
        }
        let header = header.trim_end_matches('\n');
        let mut parts = header.split(' ');
        let (magic, version, mode) = (parts.next(), parts.next(), parts.next());
        if magic != Some("SGCAT") || parts.next().is_some() {
            return Err(format(1, format!("bad header `{header}`")));
        }
        let version = match version {
            Some(v) if v == format!("v{FORMAT_VERSION}") => FORMAT_VERSION,
            other => {
                return Err(format(
                    1,
                    format!(
                        "unsupported version {:?}, expected v{FORMAT_VERSION}",
                        other.unwrap_or("")
                    ),
                ))
            }
        };
        let mode = mode
            .and_then(|m| m.strip_prefix("mode="))
            .and_then(CanonicalMode::parse)
            .ok_or_else(|| format(1, format!("bad mode in header `{header}`")))?;

        let mut levels: Vec<Vec<CatalogEntry>> = Vec::new();
        let mut previous: Option<(usize, Vec<u8>)> = None;
        for (line_no, raw) in lines {
            let entry = raw.trim_end_matches('\n');
            let (order_text, digits) = entry.split_once(':').ok_or_else(|| {
                format(
                    line_no,
                    format!("expected `<order>:<digits>`, got `{entry}`"),
                )
            })?;
            let n: usize = order_text
                .parse()
                .map_err(|_| format(line_no, format!("bad order `{order_text}`")))?;
            if n == 0 || n > MAX_ENUMERATION_ORDER {
                return Err(format(
                    line_no,
                    format!("order {n} outside 1..={MAX_ENUMERATION_ORDER}"),
                ));
            }
            if digits.len() != n * n {
                return Err(format(
                    line_no,
                    format!("order {n} needs {} digits, found {}", n * n, digits.len()),
                ));
            }
            let table = digits
                .chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if (d as usize) < n => Ok(d as u8),
                    _ => Err(format(line_no, format!("bad digit `{c}` for order {n}"))),
                })
                .collect::<Result<Vec<u8>, _>>()?;
            let invalid = |message: String| CatalogError::Validation {
                line: line_no,
                entry: entry.to_owned(),
                message,
            };
            let s =
                FiniteSemigroup::from_flat(n, table.clone()).map_err(|e| invalid(e.to_string()))?;
            if canonical_form(&s, mode) != table {
                return Err(invalid(format!(
                    "table is not canonical for mode {}",
                    mode.as_str()
                )));
            }
            if let Some(prev) = &previous {
                if *prev >= (n, table.clone()) {
                    return Err(invalid("entries are not strictly sorted".into()));
                }
            }
            previous = Some((n, table));
            while levels.len() < n {
                levels.push(Vec::new());
            }
            levels[n - 1].push(CatalogEntry::new(s, mode));
        }
        Ok(Catalog {
            mode,
            format_version: version,
            levels,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), CatalogError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
        Catalog::from_text(&std::fs::read_to_string(path)?)
    }
}

pub fn save_catalog(catalog: &Catalog, path: impl AsRef<Path>) -> Result<(), CatalogError> {
    catalog.save(path)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    Catalog::load(path)
}
