//! Witness that `[xy <= {x, y}]` is not a union of varieties: the 2-chain
//! lies in it, the 3-element semilattice does not, yet the semilattice
//! embeds in the square of the chain and so lies in every variety that
//! contains the chain.

use itertools::Itertools;
use serde::Serialize;

use crate::satisfaction::{find_violation, satisfies, Violation};
use crate::semigroup::{embeds_into, FiniteSemigroup};
use crate::term::{content_equal, Inclusion, InclusionSystem, Variable, Word};

pub const WITNESS_SYSTEM: &str = "xy <= {x, y}";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop32Report {
    pub chain_satisfies: bool,
    pub semilattice_violation: Option<Violation>,
    /// Image of each semilattice element as a pair in chain × chain.
    pub embedding: Option<Vec<(usize, usize)>>,
    pub identities_checked: usize,
    pub identities_satisfied: usize,
    /// Identities satisfied by the chain whose sides differ in content.
    pub content_failures: Vec<String>,
}

impl Prop32Report {
    pub fn checks(&self) -> [(&'static str, bool); 4] {
        [
            ("chain satisfies xy <= {x, y}", self.chain_satisfies),
            (
                "semilattice violates xy <= {x, y}",
                self.semilattice_violation.is_some(),
            ),
            (
                "semilattice embeds in chain x chain",
                self.embedding.is_some(),
            ),
            (
                "chain identities preserve content",
                self.content_failures.is_empty(),
            ),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.1)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (name, ok)) in self.checks().iter().enumerate() {
            let tag = char::from(b'a' + i as u8);
            out.push_str(&format!(
                "({tag}) {} {name}",
                if *ok { "PASS" } else { "FAIL" }
            ));
            match i {
                1 => {
                    if let Some(v) = &self.semilattice_violation {
                        out.push_str(&format!(": {v}"));
                    }
                }
                2 => {
                    if let Some(e) = &self.embedding {
                        let pairs: Vec<String> =
                            e.iter().map(|(a, b)| format!("({a},{b})")).collect();
                        out.push_str(&format!(": {}", pairs.join(" ")));
                    }
                }
                3 => out.push_str(&format!(
                    ": {} of {} identities hold",
                    self.identities_satisfied, self.identities_checked
                )),
                _ => {}
            }
            out.push('\n');
        }
        out.push_str(if self.passed() {
            "prop32 PASS\n"
        } else {
            "prop32 FAIL\n"
        });
        out
    }
}

/// All words over `x, y, z` of length 1..=`max_len`, shortest first.
pub fn words_up_to(max_len: usize) -> Vec<Word> {
    let vars: Vec<Variable> = "xyz"
        .chars()
        .map(|c| Variable::new(c).expect("letter"))
        .collect();
    (1..=max_len)
        .flat_map(|len| {
            (0..len)
                .map(|_| vars.iter().copied())
                .multi_cartesian_product()
                .map(|letters| Word::new(letters).expect("non-empty"))
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn prop32_suite() -> Prop32Report {
    let chain = FiniteSemigroup::chain2();
    let semilattice = FiniteSemigroup::semilattice3();
    let system: InclusionSystem = WITNESS_SYSTEM.parse().expect("witness system");

    let square = FiniteSemigroup::direct_product(&chain, &chain).expect("product of semigroups");
    let embedding = embeds_into(&semilattice, &square).map(|img| {
        img.into_iter()
            .map(|p| (p / chain.order(), p % chain.order()))
            .collect()
    });

    let words = words_up_to(4);
    let mut identities_checked = 0;
    let mut identities_satisfied = 0;
    let mut content_failures = Vec::new();
    for u in &words {
        for v in &words {
            identities_checked += 1;
            let id = Inclusion::identity(u.clone(), v.clone());
            let sys = InclusionSystem::new(vec![id.clone()]).expect("one inclusion");
            if satisfies(&chain, &sys) {
                identities_satisfied += 1;
                if !content_equal(u, v) {
                    content_failures.push(id.to_string());
                }
            }
        }
    }

    Prop32Report {
        chain_satisfies: satisfies(&chain, &system),
        semilattice_violation: find_violation(&semilattice, &system),
        embedding,
        identities_checked,
        identities_satisfied,
        content_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_count() {
        assert_eq!(words_up_to(4).len(), 3 + 9 + 27 + 81);
    }

    #[test]
    fn suite_passes() {
        let r = prop32_suite();
        assert!(r.passed(), "{}", r.to_text());
        let v = r.semilattice_violation.as_ref().unwrap();
        assert_eq!(v.lhs_value, 0);
        assert_eq!(r.embedding.as_deref(), Some(&[(0, 0), (0, 1), (1, 0)][..]));
        assert_eq!(r.identities_checked, 120 * 120);
    }
}
