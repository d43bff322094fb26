use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{Catalog, UniverseMember};
use crate::classes::{member_of, registry, ClassError};

/// `bits[s][c]` is the membership of universe member `s` in class `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipMatrix {
    pub universe: Vec<String>,
    pub classes: Vec<String>,
    pub order_bound: usize,
    bits: Vec<Vec<bool>>,
}

impl MembershipMatrix {
    pub fn build(catalog: &Catalog, class_names: &[&str]) -> Result<Self, ClassError> {
        Self::from_universe(&catalog.universe(), class_names)
    }

    pub fn from_universe(
        universe: &[UniverseMember],
        class_names: &[&str],
    ) -> Result<Self, ClassError> {
        let descriptors = class_names
            .iter()
            .map(|name| registry().get(name))
            .collect::<Result<Vec<_>, _>>()?;
        let bits = universe
            .par_iter()
            .map(|m| {
                descriptors
                    .iter()
                    .map(|c| member_of(&m.semigroup, c))
                    .collect::<Result<Vec<bool>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MembershipMatrix {
            universe: universe.iter().map(|m| m.id.clone()).collect(),
            classes: descriptors.iter().map(|c| c.name.clone()).collect(),
            order_bound: universe
                .iter()
                .map(|m| m.semigroup.order())
                .max()
                .unwrap_or(0),
            bits,
        })
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row][col]
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.bits[row]
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        let name = crate::classes::normalize_name(name);
        self.classes.iter().position(|c| *c == name)
    }

    /// Membership set of one class, as a column.
    pub fn column(&self, col: usize) -> Vec<bool> {
        self.bits.iter().map(|r| r[col]).collect()
    }

    /// CSV with header `canonical_id,<classes...>` and 0/1 cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("canonical_id");
        for c in &self.classes {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (id, row) in self.universe.iter().zip(&self.bits) {
            out.push_str(id);
            for &b in row {
                out.push_str(if b { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }
}

pub fn build_matrix(
    catalog: &Catalog,
    class_names: &[&str],
) -> Result<MembershipMatrix, ClassError> {
    MembershipMatrix::build(catalog, class_names)
}
