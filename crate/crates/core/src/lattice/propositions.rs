//! Class equalities `lhs₁ = lhs₂ = … = rhs` checked as exact membership
//! equalities over a finite universe.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{Catalog, UniverseMember};
use crate::classes::member;

/// One stated equality. `dual` marks the mirrored form of a proposition.
#[derive(Debug, Clone, Copy)]
pub struct Statement {
    pub prop_id: u8,
    pub dual: bool,
    pub lhs: &'static [&'static str],
    pub rhs: &'static str,
}

const fn st(prop_id: u8, dual: bool, lhs: &'static [&'static str], rhs: &'static str) -> Statement {
    Statement {
        prop_id,
        dual,
        lhs,
        rhs,
    }
}

pub const STATEMENTS: &[Statement] = &[
    st(1, false, &["P1A", "P1B"], "L∪R"),
    st(2, false, &["P2C"], "Z∪R"),
    st(2, true, &["P2C_dual"], "L∪Z"),
    st(3, false, &["P3V"], "L∪Z∪R"),
    st(4, false, &["P4V"], "IL∪R"),
    st(4, true, &["P4V_dual"], "L∪IR"),
    st(5, false, &["P5A", "P5B", "P5D"], "IL∪IR"),
    st(6, false, &["P6V"], "GL∪R"),
    st(6, true, &["P6V_dual"], "L∪GR"),
    st(7, false, &["P7V"], "GL∪IR"),
    st(7, true, &["P7V_dual"], "IL∪GR"),
    st(8, false, &["P8A", "P8B"], "GL∪GR"),
    st(9, false, &["P9V"], "Z∪RB"),
    st(10, false, &["P10V"], "RB∪IR"),
    st(10, true, &["P10V_dual"], "IL∪RB"),
    st(11, false, &["P11V"], "IL∪RB∪IR"),
    st(12, false, &["P12V"], "GL∪RB"),
    st(12, true, &["P12V_dual"], "RB∪GR"),
    st(13, false, &["P13V"], "GL∪RB∪IR"),
    st(13, true, &["P13V_dual"], "IL∪RB∪GR"),
    st(14, false, &["P14V"], "GL∪RB∪GR"),
    st(15, false, &["P15V"], "GL∪IRB"),
    st(15, true, &["P15V_dual"], "IRB∪GR"),
    st(16, false, &["P16V"], "GL∪IRB∪GR"),
    st(17, false, &["P17V"], "GRB_l∪GR"),
    st(17, true, &["P17V_dual"], "GL∪GRB_r"),
    st(18, false, &["P18V"], "GRB_l∪GRB_r"),
];

pub fn statements_for(prop_id: u8) -> impl Iterator<Item = &'static Statement> {
    STATEMENTS.iter().filter(move |s| s.prop_id == prop_id)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub semigroup: String,
    pub lhs_membership: Vec<bool>,
    pub rhs_membership: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatementReport {
    pub dual: bool,
    pub lhs_names: Vec<String>,
    pub rhs_union: String,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub prop_id: u8,
    pub universe_order_bound: usize,
    pub universe_size: usize,
    pub statements: Vec<StatementReport>,
    /// No discrepancies in any statement.
    pub equal: bool,
}

impl PropositionReport {
    pub fn discrepancy_count(&self) -> usize {
        self.statements.iter().map(|s| s.discrepancies.len()).sum()
    }

    /// One line, starting with `P<id> PASS` or `P<id> FAIL`.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "P{} {}",
            self.prop_id,
            if self.equal { "PASS" } else { "FAIL" }
        );
        for (i, s) in self.statements.iter().enumerate() {
            line.push_str(if i == 0 { "  " } else { "; " });
            if s.dual {
                line.push_str("dual: ");
            }
            write!(line, "{} = {}", s.lhs_names.join(" = "), s.rhs_union).expect("String write");
            if !s.discrepancies.is_empty() {
                let first = &s.discrepancies[0];
                write!(
                    line,
                    " ({} discrepancies, first {} lhs={} rhs={})",
                    s.discrepancies.len(),
                    first.semigroup,
                    bits(&first.lhs_membership),
                    u8::from(first.rhs_membership)
                )
                .expect("String write");
            }
        }
        write!(
            line,
            "  [{} semigroups, order <= {}]",
            self.universe_size, self.universe_order_bound
        )
        .expect("String write");
        line
    }
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Checks every statement of proposition `prop_id` (primary and dual) over
/// the iso-closed universe of `catalog`. Panics if `prop_id` is not 1..=18.
pub fn verify_proposition(prop_id: u8, catalog: &Catalog) -> PropositionReport {
    verify_on_universe(prop_id, &catalog.universe())
}

pub fn verify_on_universe(prop_id: u8, universe: &[UniverseMember]) -> PropositionReport {
    assert!(
        (1..=18).contains(&prop_id),
        "propositions are numbered 1..=18"
    );
    let statements = statements_for(prop_id)
        .map(|st| {
            let discrepancies = universe
                .par_iter()
                .filter_map(|m| {
                    let lhs: Vec<bool> = st
                        .lhs
                        .iter()
                        .map(|c| member(&m.semigroup, c).expect("registered"))
                        .collect();
                    let rhs = member(&m.semigroup, st.rhs).expect("registered");
                    lhs.iter().any(|&b| b != rhs).then(|| Discrepancy {
                        semigroup: m.id.clone(),
                        lhs_membership: lhs,
                        rhs_membership: rhs,
                    })
                })
                .collect();
            StatementReport {
                dual: st.dual,
                lhs_names: st.lhs.iter().map(|s| s.to_string()).collect(),
                rhs_union: st.rhs.to_string(),
                discrepancies,
            }
        })
        .collect::<Vec<StatementReport>>();
    let equal = statements.iter().all(|s| s.discrepancies.is_empty());
    PropositionReport {
        prop_id,
        universe_order_bound: universe
            .iter()
            .map(|m| m.semigroup.order())
            .max()
            .unwrap_or(0),
        universe_size: universe.len(),
        statements,
        equal,
    }
}

pub fn render_text(reports: &[PropositionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.summary_line());
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.equal).count();
    writeln!(
        out,
        "{} of {} propositions hold",
        reports.len() - failed,
        reports.len()
    )
    .expect("String write");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::registry;
    use crate::semigroup::CanonicalMode;

    #[test]
    fn every_statement_is_registered() {
        for st in STATEMENTS {
            for name in st.lhs.iter().chain([&st.rhs]) {
                assert!(registry().get(name).is_ok(), "{name}");
            }
        }
        for id in 1..=18 {
            assert!(statements_for(id).count() >= 1);
        }
    }

    #[test]
    fn prop1_over_order_three() {
        let cat = Catalog::build(3, CanonicalMode::Iso).unwrap();
        let r = verify_proposition(1, &cat);
        assert!(r.equal, "{}", r.summary_line());
        assert!(r.summary_line().starts_with("P1 PASS"));
    }

    #[test]
    fn prop2_and_dual_over_order_three() {
        let cat = Catalog::build(3, CanonicalMode::Iso).unwrap();
        let r = verify_proposition(2, &cat);
        assert_eq!(r.statements.len(), 2);
        assert!(r.equal);
    }

    #[test]
    fn prop18_over_order_four() {
        let cat = Catalog::build(4, CanonicalMode::Iso).unwrap();
        assert!(verify_proposition(18, &cat).equal);
    }

    #[test]
    fn prop7_as_stated_excludes_right_zero() {
        // R2 is in IR but fails xy <= {xyz, uv} at x = y = 0, z = u = v = 1.
        let cat = Catalog::build(2, CanonicalMode::Iso).unwrap();
        let r = verify_proposition(7, &cat);
        assert!(!r.equal);
        let first = &r.statements[0].discrepancies[0];
        assert_eq!(first.semigroup, "2:0101");
        assert_eq!(
            (first.lhs_membership.as_slice(), first.rhs_membership),
            (&[false][..], true)
        );
    }
}
