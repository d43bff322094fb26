//! Finite semigroups given by Cayley tables.
//!
//! Elements are the indices `0..order`; the table is row-major with
//! `table[i * order + j] = i·j`.

mod canonical;
mod construct;
mod decompose;
mod embed;
mod format;

use std::fmt;

use thiserror::Error;

pub use canonical::{automorphism_count, canonical_code, canonical_form, CanonicalMode};
pub use construct::{ChainTag, Construction, InflationSpec};
pub use decompose::{
    decompose_chain_lr, decompose_rectangular_band, rectangular_band_structure, ChainComponent,
    ChainLRDecomposition, RBDecomposition,
};
pub use embed::embeds_into;
pub use format::{parse_semigroup, parse_semigroup_json, parse_semigroup_text};

/// Largest carrier that fits the `u8` table encoding.
pub const MAX_ORDER: usize = 255;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("table is not associative: ({i}·{j})·{k} != {i}·({j}·{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not a rectangular band: {x}·{y}·{x} != {x}")]
    NotRectangularBand { x: usize, y: usize },
    #[error("not a chain of left/right zero semigroups: {x}·{y} is neither {x} nor {y}")]
    NotChainLR { x: usize, y: usize },
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("malformed semigroup input: {0}")]
    Format(String),
}

pub type Result<T, E = SemigroupError> = std::result::Result<T, E>;

/// A finite semigroup. Values are immutable once constructed and always
/// associative.
#[derive(Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u8>,
    label: Option<String>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a square table, checking ranges and
    /// associativity.
    pub fn new(order: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(SemigroupError::InvalidParams(format!(
                "order must be in 1..={MAX_ORDER}, got {order}"
            )));
        }
        if table.len() != order {
            return Err(SemigroupError::InvalidParams(format!(
                "expected {order} rows, got {}",
                table.len()
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, cells) in table.iter().enumerate() {
            if cells.len() != order {
                return Err(SemigroupError::InvalidParams(format!(
                    "row {row} has {} entries, expected {order}",
                    cells.len()
                )));
            }
            for (col, &value) in cells.iter().enumerate() {
                if value >= order {
                    return Err(SemigroupError::IndexOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                flat.push(value as u8);
            }
        }
        Self::from_flat(order, flat)
    }

    /// Builds a semigroup from a flattened row-major table.
    pub fn from_flat(order: usize, table: Vec<u8>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(SemigroupError::InvalidParams(format!(
                "order must be in 1..={MAX_ORDER}, got {order}"
            )));
        }
        if table.len() != order * order {
            return Err(SemigroupError::InvalidParams(format!(
                "table has {} cells, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(SemigroupError::IndexOutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos] as usize,
                order,
            });
        }
        let s = FiniteSemigroup {
            order,
            table,
            label: None,
        };
        if let Some((i, j, k)) = s.associativity_failure() {
            return Err(SemigroupError::NotAssociative { i, j, k });
        }
        Ok(s)
    }

    /// Skips the associativity check. Callers must already know the table is
    /// associative (e.g. it is a relabeling or restriction of one that is).
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u8>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        FiniteSemigroup {
            order,
            table,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Row-major flattened table.
    pub fn flat_table(&self) -> &[u8] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|row| row.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// First triple `(i, j, k)` in lexicographic order with `(ij)k != i(jk)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Sorted set of all products `x·y`.
    pub fn square_elements(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        for &v in &self.table {
            seen[v as usize] = true;
        }
        (0..self.order).filter(|&e| seen[e]).collect()
    }

    /// True iff some element is not a product of two elements.
    pub fn has_indecomposable(&self) -> bool {
        self.square_elements().len() < self.order
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// `S²` as a semigroup in its own right; elements are renumbered in
    /// ascending order of their index in `S`.
    pub fn square(&self) -> FiniteSemigroup {
        self.restrict(&self.square_elements())
    }

    /// Restriction to a subset closed under multiplication. The subset must
    /// be sorted and closed; panics otherwise.
    pub fn restrict(&self, elements: &[usize]) -> FiniteSemigroup {
        let mut index = vec![usize::MAX; self.order];
        for (new, &old) in elements.iter().enumerate() {
            index[old] = new;
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in elements {
            for &b in elements {
                let p = index[self.mul(a, b)];
                assert!(p != usize::MAX, "subset is not closed under multiplication");
                table.push(p as u8);
            }
        }
        FiniteSemigroup::from_flat_unchecked(m, table)
    }

    /// The opposite semigroup: `x ∘ y = y·x`.
    pub fn dual(&self) -> FiniteSemigroup {
        let n = self.order;
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.table[j * n + i];
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            label: self.label.as_ref().map(|l| format!("dual({l})")),
        }
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i] * n + perm[j]] = perm[self.mul(i, j)] as u8;
            }
        }
        FiniteSemigroup::from_flat_unchecked(n, table)
    }

    /// Row-major digits in base `order`, e.g. `0011` for left-zero of order 2.
    pub fn digits(&self) -> String {
        self.table
            .iter()
            .map(|&v| char::from_digit(v as u32, 36).expect("order <= 36 for digit encoding"))
            .collect()
    }

    /// `true` iff every product equals one fixed element.
    pub fn is_constant_product(&self) -> bool {
        self.table.iter().all(|&v| v == self.table[0])
    }

    pub fn is_left_zero(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.mul(i, j) == i))
    }

    pub fn is_right_zero(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.mul(i, j) == j))
    }

    pub fn is_band(&self) -> bool {
        (0..self.order).all(|i| self.is_idempotent(i))
    }
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

impl std::hash::Hash for FiniteSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("FiniteSemigroup");
        d.field("order", &self.order).field("table", &self.rows());
        if let Some(label) = &self.label {
            d.field("label", label);
        }
        d.finish()
    }
}

/// Writes the plain text format: `order n` followed by the rows.
impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        for row in self.table.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
