//! Search for classes strictly between `I` and `GRB`.
//!
//! Candidates are `GRB` intersected with random systems, so `C ⊆ GRB` holds
//! by construction; those with `I ⊆ C` over the universe are kept, and any
//! whose membership set differs from both endpoints is logged. Nothing here
//! is asserted.

use rayon::prelude::*;
use serde::Serialize;

use super::probe::{random_system, GeneratorParams};
use crate::catalog::{Catalog, UniverseMember};
use crate::classes::{member, registry};
use crate::satisfaction::CompiledSystem;
use crate::term::InclusionSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub system: String,
    pub members: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreReport {
    pub trials: u64,
    pub seed: u64,
    pub universe_size: usize,
    pub lower_members: usize,
    pub upper_members: usize,
    /// Trials whose class contained `I` over the universe.
    pub in_interval: u64,
    pub intermediate: Vec<Candidate>,
}

impl ExploreReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "explore-cover: {} trials, seed {}, {} semigroups; |I| = {}, |GRB| = {}\n",
            self.trials, self.seed, self.universe_size, self.lower_members, self.upper_members
        );
        out.push_str(&format!(
            "{} candidates between I and GRB\n",
            self.in_interval
        ));
        if self.lower_members == self.upper_members {
            out.push_str(
                "I and GRB coincide on this universe; no intermediate class is observable\n",
            );
        }
        for c in &self.intermediate {
            out.push_str(&format!(
                "intermediate ({} members): {}\n",
                c.members, c.system
            ));
        }
        out
    }
}

fn membership(system: &InclusionSystem, universe: &[UniverseMember]) -> Vec<bool> {
    let c = CompiledSystem::new(system);
    universe.iter().map(|m| c.satisfies(&m.semigroup)).collect()
}

pub fn explore_cover_of_i(catalog: &Catalog, trials: u64, seed: u64) -> ExploreReport {
    let universe = catalog.universe();
    let lower: Vec<bool> = universe
        .iter()
        .map(|m| member(&m.semigroup, "I").expect("registered"))
        .collect();
    let upper: Vec<bool> = universe
        .iter()
        .map(|m| member(&m.semigroup, "GRB").expect("registered"))
        .collect();
    let grb = registry()
        .get("GRB")
        .expect("registered")
        .definition
        .clone()
        .expect("base class");
    let params = GeneratorParams::default();

    let results: Vec<(String, Vec<bool>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let extra = random_system(seed, t, &params);
            let combined = InclusionSystem::new(
                grb.inclusions()
                    .iter()
                    .chain(extra.inclusions())
                    .cloned()
                    .collect(),
            )
            .expect("non-empty");
            let bits = membership(&combined, &universe);
            (combined.to_string(), bits)
        })
        .collect();

    let count = |v: &[bool]| v.iter().filter(|&&b| b).count();
    let mut in_interval = 0;
    let mut intermediate = Vec::new();
    for (system, bits) in results {
        if !lower.iter().zip(&bits).all(|(&l, &b)| !l || b) {
            continue;
        }
        in_interval += 1;
        if bits != lower && bits != upper {
            log::info!("intermediate candidate between I and GRB: {system}");
            intermediate.push(Candidate {
                members: count(&bits),
                system,
            });
        }
    }
    log::info!("explore-cover: {in_interval} of {trials} trials between I and GRB");
    ExploreReport {
        trials,
        seed,
        universe_size: universe.len(),
        lower_members: count(&lower),
        upper_members: count(&upper),
        in_interval,
        intermediate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::CanonicalMode;

    #[test]
    fn endpoints() {
        let cat = Catalog::build(3, CanonicalMode::Iso).unwrap();
        let universe = cat.universe();
        let def = |n: &str| registry().get(n).unwrap().definition.clone().unwrap();
        let i: Vec<bool> = universe
            .iter()
            .map(|m| member(&m.semigroup, "I").unwrap())
            .collect();
        assert_eq!(membership(&def("I"), &universe), i);
        let r = explore_cover_of_i(&cat, 20, 0);
        assert_eq!(r.trials, 20);
        assert!(r.lower_members <= r.upper_members);
    }
}
