//! Acceptance suite. Prints one `criterion N PASS|FAIL` line per criterion
//! and exits non-zero if any criterion fails.

// Tolerances are pinned constants even where they are zero.
#![allow(clippy::absurd_extreme_comparisons)]

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgincl_core::catalog::{enumerate, Catalog, UniverseMember};
use sgincl_core::classes::{cross_check, cross_checkable, member};
use sgincl_core::lattice::{
    build_matrix, derive_lattice, probe_on_universe, prop32_suite, render_text, verify_on_universe,
    GeneratorParams, DIAGRAM_NODES,
};
use sgincl_core::semigroup::{canonical_form, decompose_chain_lr, rectangular_band_structure};
use sgincl_core::{CanonicalMode, ChainTag, FiniteSemigroup};

const ISO_COUNTS: [usize; 4] = [1, 5, 24, 188];
const EQUIV_COUNTS: [usize; 4] = [1, 4, 18, 126];
const ENUMERATION_SECONDS: f64 = 60.0;
const CROSS_CHECK_CLASSES: [&str; 13] = [
    "Z", "L", "R", "B", "RB", "IB", "IL", "IR", "IRB", "GB", "GL", "GR", "GRB",
];
const MAX_CROSS_CHECK_MISMATCHES: usize = 0;
const MAX_PROPOSITION_DISCREPANCIES: usize = 0;
const PROBE_TRIALS: u64 = 1000;
const PROBE_SEED: u64 = 0;
const PROBE_ORDER: usize = 3;
const MAX_PROBE_COUNTEREXAMPLES: usize = 0;
const CHAIN_SPECS: u64 = 50;
const CHAIN_SEED: u64 = 0;
const MAX_STRUCTURE_FAILURES: usize = 0;
const UNIVERSE_ORDER: usize = 4;
const DETERMINISM_THREADS: [usize; 2] = [1, 4];

type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for n in 1..=4 {
        let tables = common::brute_force(n);
        for (mode, counts) in [
            (CanonicalMode::Iso, &ISO_COUNTS),
            (CanonicalMode::IsoOrAntiIso, &EQUIV_COUNTS),
        ] {
            let pruned: BTreeSet<Vec<u8>> = enumerate(n, mode)
                .unwrap()
                .iter()
                .map(|s| s.flat_table().to_vec())
                .collect();
            let oracle = common::dedup(n, &tables, mode == CanonicalMode::IsoOrAntiIso);
            if pruned.len() != counts[n - 1] || oracle != pruned {
                mismatches.push(format!(
                    "order {n} {}: pruned {} oracle {} expected {}",
                    mode.as_str(),
                    pruned.len(),
                    oracle.len(),
                    counts[n - 1]
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: mismatches.is_empty() && secs < ENUMERATION_SECONDS,
        detail: if mismatches.is_empty() {
            format!("iso {ISO_COUNTS:?}, equiv {EQUIV_COUNTS:?}, oracle agrees, {secs:.1}s")
        } else {
            mismatches.join("; ")
        },
    }
}

fn criterion_2(universe: &[UniverseMember]) -> Outcome {
    let available = cross_checkable();
    let missing: Vec<&str> = CROSS_CHECK_CLASSES
        .iter()
        .copied()
        .filter(|c| !available.contains(c))
        .collect();
    let mut mismatches = Vec::new();
    for m in universe {
        for class in CROSS_CHECK_CLASSES {
            if let Err(e) = cross_check(&m.semigroup, class) {
                mismatches.push(e.to_string());
            }
        }
    }
    Outcome {
        pass: missing.is_empty() && mismatches.len() <= MAX_CROSS_CHECK_MISMATCHES,
        detail: format!(
            "{} semigroups x {} classes, {} mismatches{}{}",
            universe.len(),
            CROSS_CHECK_CLASSES.len(),
            mismatches.len(),
            mismatches
                .first()
                .map(|m| format!(", first: {m}"))
                .unwrap_or_default(),
            if missing.is_empty() {
                String::new()
            } else {
                format!(", no structural route for {missing:?}")
            }
        ),
    }
}

fn proposition_reports(universe: &[UniverseMember]) -> String {
    let reports: Vec<_> = (1..=18).map(|p| verify_on_universe(p, universe)).collect();
    render_text(&reports)
}

fn criterion_3(universe: &[UniverseMember]) -> Outcome {
    let reports: Vec<_> = (1..=18).map(|p| verify_on_universe(p, universe)).collect();
    for r in &reports {
        println!("  {}", r.summary_line());
    }
    let total: usize = reports.iter().map(|r| r.discrepancy_count()).sum();
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.equal)
        .map(|r| format!("P{} ({})", r.prop_id, r.discrepancy_count()))
        .collect();
    Outcome {
        pass: total <= MAX_PROPOSITION_DISCREPANCIES,
        detail: if failing.is_empty() {
            "18 of 18 propositions hold, duals included".to_string()
        } else {
            format!(
                "{} of 18 hold; {} discrepancies in {}",
                18 - failing.len(),
                total,
                failing.join(", ")
            )
        },
    }
}

fn probe_text(universe: &[UniverseMember]) -> String {
    probe_on_universe(
        universe,
        PROBE_TRIALS,
        PROBE_SEED,
        &GeneratorParams::default(),
    )
    .to_text()
}

fn criterion_4(universe: &[UniverseMember]) -> Outcome {
    let r = probe_on_universe(
        universe,
        PROBE_TRIALS,
        PROBE_SEED,
        &GeneratorParams::default(),
    );
    let vacuous: Vec<&str> = r
        .implications_checked
        .iter()
        .filter(|c| c.premise_held == 0)
        .map(|c| c.implication.as_str())
        .collect();
    for c in &r.implications_checked {
        println!("  {:<9} premise held {:>4}", c.implication, c.premise_held);
    }
    Outcome {
        pass: r.counterexamples.len() <= MAX_PROBE_COUNTEREXAMPLES,
        detail: format!(
            "{} systems, seed {}, {} semigroups, {} counterexamples; vacuous at this order: {}",
            r.trials,
            r.seed,
            r.universe_size,
            r.counterexamples.len(),
            if vacuous.is_empty() {
                "none".to_string()
            } else {
                vacuous.join(" ")
            }
        ),
    }
}

fn criterion_5(universe: &[UniverseMember]) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED);
    for trial in 0..CHAIN_SPECS {
        let len = rng.random_range(1..=4);
        let parts: Vec<(usize, ChainTag)> = (0..len)
            .map(|_| {
                let size = rng.random_range(1..=3);
                let tag = if size == 1 || rng.random_bool(0.5) {
                    ChainTag::Left
                } else {
                    ChainTag::Right
                };
                (size, tag)
            })
            .collect();
        let s = FiniteSemigroup::chain_of_lr(&parts).unwrap();
        let ok = decompose_chain_lr(&s).is_ok_and(|d| {
            let shape = d.shape();
            let rebuilt = FiniteSemigroup::chain_of_lr(&shape).unwrap();
            shape == parts
                && canonical_form(&rebuilt, CanonicalMode::Iso)
                    == canonical_form(&s, CanonicalMode::Iso)
        });
        if !ok {
            failures.push(format!("chain spec {trial} {parts:?}"));
        }
    }
    let mut sharing = 0;
    for m in universe {
        if let Some(d) = rectangular_band_structure(&m.semigroup) {
            if d.pairwise_share_component() {
                sharing += 1;
                if !member(&m.semigroup, "L∪R").unwrap() {
                    failures.push(format!("rectangular band {} not in L∪R", m.id));
                }
            }
        }
    }
    Outcome {
        pass: failures.len() <= MAX_STRUCTURE_FAILURES,
        detail: format!(
            "{CHAIN_SPECS} chain specs, {sharing} component-sharing rectangular bands, {} failures",
            failures.len()
        ),
    }
}

fn criterion_6() -> Outcome {
    let r = prop32_suite();
    let failed: Vec<&str> = r.checks().iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!(
                "4 of 4 checks; {} of {} identities hold in the 2-chain, all content-equal",
                r.identities_satisfied, r.identities_checked
            )
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn lattice_text(catalog: &Catalog) -> String {
    derive_lattice(&build_matrix(catalog, DIAGRAM_NODES).unwrap()).to_text()
}

fn criterion_7(catalog: &Catalog) -> Outcome {
    let d = derive_lattice(&build_matrix(catalog, DIAGRAM_NODES).unwrap());
    let bound = format!("none ≤ {UNIVERSE_ORDER}");
    let warnings = d.warnings();
    for w in &warnings {
        println!("  {w}");
    }
    let warnings_ok = warnings.iter().all(|w| w.ends_with(&bound));
    let pass = d.bottom_is_zero()
        && d.top_is_i()
        && d.containment_violations.is_empty()
        && d.duality_automorphism
        && d.is_lattice
        && warnings_ok;
    Outcome {
        pass,
        detail: format!(
            "{} nodes, {} covers, bottom {{0}} {}, top I {}, containments {}, duality {}, lattice {}, {} merged groups",
            d.nodes.len(),
            d.edges.len(),
            d.bottom_is_zero(),
            d.top_is_i(),
            d.containment_violations.is_empty(),
            d.duality_automorphism,
            d.is_lattice,
            d.merged.len()
        ),
    }
}

fn criterion_8(
    catalog: &Catalog,
    universe: &[UniverseMember],
    probe_universe: &[UniverseMember],
) -> Outcome {
    let run = || {
        (
            proposition_reports(universe),
            probe_text(probe_universe),
            lattice_text(catalog),
        )
    };
    let outputs: Vec<_> = DETERMINISM_THREADS
        .iter()
        .flat_map(|&threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            [pool.install(run), pool.install(run)]
        })
        .collect();
    let differing: Vec<&str> = ["verify", "probe", "lattice"]
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| {
            outputs.iter().any(|o| {
                let pick = |t: &(String, String, String)| match i {
                    0 => t.0.clone(),
                    1 => t.1.clone(),
                    _ => t.2.clone(),
                };
                pick(o) != pick(&outputs[0])
            })
        })
        .map(|(_, name)| name)
        .collect();
    Outcome {
        pass: differing.is_empty(),
        detail: if differing.is_empty() {
            format!(
                "verify, probe and lattice identical over 2 runs each with {DETERMINISM_THREADS:?} threads"
            )
        } else {
            format!("outputs differ: {}", differing.join(", "))
        },
    }
}

fn main() -> ExitCode {
    let catalog = Catalog::build(UNIVERSE_ORDER, CanonicalMode::Iso).unwrap();
    let universe = catalog.universe();
    let probe_universe = catalog.truncated(PROBE_ORDER).universe();

    let criteria: Vec<Criterion> = vec![
        (1, "enumeration counts", Box::new(criterion_1)),
        (
            2,
            "identity/structural cross-check",
            Box::new(|| criterion_2(&universe)),
        ),
        (
            3,
            "class equalities 1-18",
            Box::new(|| criterion_3(&universe)),
        ),
        (
            4,
            "implication probe",
            Box::new(|| criterion_4(&probe_universe)),
        ),
        (
            5,
            "chain and rectangular band structure",
            Box::new(|| criterion_5(&universe)),
        ),
        (6, "non-variety witness", Box::new(criterion_6)),
        (
            7,
            "lattice reconstruction",
            Box::new(|| criterion_7(&catalog)),
        ),
        (
            8,
            "determinism",
            Box::new(|| criterion_8(&catalog, &universe, &probe_universe)),
        ),
    ];

    let mut failed = 0;
    for (id, name, run) in &criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {id} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
