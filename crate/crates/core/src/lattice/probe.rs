//! Random probing of the implications that drive the completeness argument.
//!
//! Each trial draws a system `C` and, for every implication "some witness in
//! region X satisfies C ⇒ class K ⊆ C", evaluates the premise and conclusion
//! over a fixed universe. A held premise with a failed conclusion is recorded
//! as a counterexample.
//!
//! Generator: trial `t` uses `ChaCha8Rng::seed_from_u64(seed)` on stream `t`.
//! A system has 1–2 inclusions; each inclusion has a single lhs word and 1–2
//! rhs words; word lengths are uniform in 1..=4 and letters uniform over the
//! first `variables` of `x, y, z, w`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{Catalog, UniverseMember};
use crate::classes::member;
use crate::satisfaction::CompiledSystem;
use crate::term::{Inclusion, InclusionSystem, Variable, Word};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorParams {
    pub variables: usize,
    pub max_word_len: usize,
    pub max_rhs: usize,
    pub max_inclusions: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            variables: 4,
            max_word_len: 4,
            max_rhs: 2,
            max_inclusions: 2,
        }
    }
}

const LETTERS: [char; 4] = ['x', 'y', 'z', 'w'];

fn random_word(rng: &mut ChaCha8Rng, p: &GeneratorParams) -> Word {
    let len = rng.random_range(1..=p.max_word_len);
    let letters = (0..len)
        .map(|_| Variable::new(LETTERS[rng.random_range(0..p.variables)]).expect("letter"))
        .collect();
    Word::new(letters).expect("non-empty word")
}

/// The system drawn for `trial` under `seed`.
pub fn random_system(seed: u64, trial: u64, params: &GeneratorParams) -> InclusionSystem {
    assert!((1..=LETTERS.len()).contains(&params.variables));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let count = rng.random_range(1..=params.max_inclusions);
    let inclusions = (0..count)
        .map(|_| {
            let lhs = random_word(&mut rng, params);
            let k = rng.random_range(1..=params.max_rhs);
            let rhs = (0..k).map(|_| random_word(&mut rng, params)).collect();
            Inclusion::new(vec![lhs], rhs).expect("non-empty sides")
        })
        .collect();
    InclusionSystem::new(inclusions).expect("non-empty system")
}

/// Witness regions, each a predicate over per-semigroup facts.
#[derive(Debug, Clone, Copy)]
enum Region {
    Indecomposable,
    /// In class `0` but in none of the classes `1`.
    Diff(&'static str, &'static [&'static str]),
    /// Order at least two, in class `0`.
    Nontrivial(&'static str),
}

#[derive(Debug, Clone, Copy)]
enum Conclusion {
    /// Every single-variable lhs word occurs on the rhs.
    Syntactic,
    Contains(&'static str),
}

#[derive(Debug, Clone, Copy)]
struct Implication {
    id: &'static str,
    region: Region,
    /// Extra premise: every member of this class satisfies C.
    assume: Option<&'static str>,
    conclusion: Conclusion,
}

const fn imp(
    id: &'static str,
    region: Region,
    assume: Option<&'static str>,
    conclusion: Conclusion,
) -> Implication {
    Implication {
        id,
        region,
        assume,
        conclusion,
    }
}

const IMPLICATIONS: &[Implication] = &[
    imp("P19", Region::Indecomposable, None, Conclusion::Syntactic),
    imp(
        "P20",
        Region::Nontrivial("Z"),
        None,
        Conclusion::Contains("Z"),
    ),
    imp(
        "P22",
        Region::Nontrivial("L"),
        None,
        Conclusion::Contains("L"),
    ),
    imp(
        "P23",
        Region::Nontrivial("R"),
        None,
        Conclusion::Contains("R"),
    ),
    imp(
        "P24",
        Region::Diff("IL", &["L"]),
        None,
        Conclusion::Syntactic,
    ),
    imp(
        "P24_dual",
        Region::Diff("IR", &["R"]),
        None,
        Conclusion::Syntactic,
    ),
    imp(
        "P25",
        Region::Diff("IL", &["L", "Z"]),
        None,
        Conclusion::Contains("IL"),
    ),
    imp(
        "P25_dual",
        Region::Diff("IR", &["R", "Z"]),
        None,
        Conclusion::Contains("IR"),
    ),
    imp(
        "P26",
        Region::Diff("GL", &["IL"]),
        Some("Z"),
        Conclusion::Contains("GL"),
    ),
    imp(
        "P26_dual",
        Region::Diff("GR", &["IR"]),
        Some("Z"),
        Conclusion::Contains("GR"),
    ),
    imp(
        "P27",
        Region::Diff("RB", &["L", "R"]),
        None,
        Conclusion::Contains("RB"),
    ),
    imp(
        "P28",
        Region::Diff("IRB", &["IL", "RB", "IR"]),
        None,
        Conclusion::Contains("IRB"),
    ),
    imp(
        "P29",
        Region::Diff("GRB_l", &["GL", "IRB"]),
        None,
        Conclusion::Contains("GRB_l"),
    ),
    imp(
        "P29_dual",
        Region::Diff("GRB_r", &["IRB", "GR"]),
        None,
        Conclusion::Contains("GRB_r"),
    ),
];

const FACT_CLASSES: &[&str] = &[
    "Z", "L", "R", "IL", "IR", "GL", "GR", "RB", "IRB", "GRB_l", "GRB_r",
];

struct Facts {
    order: usize,
    indecomposable: bool,
    classes: Vec<bool>,
}

impl Facts {
    fn of(m: &UniverseMember) -> Self {
        Facts {
            order: m.semigroup.order(),
            indecomposable: m.semigroup.has_indecomposable(),
            classes: FACT_CLASSES
                .iter()
                .map(|c| member(&m.semigroup, c).expect("registered"))
                .collect(),
        }
    }

    fn is(&self, class: &str) -> bool {
        let i = FACT_CLASSES
            .iter()
            .position(|c| *c == class)
            .expect("fact class");
        self.classes[i]
    }

    fn in_region(&self, r: Region) -> bool {
        match r {
            Region::Indecomposable => self.indecomposable,
            Region::Diff(c, minus) => self.is(c) && minus.iter().all(|m| !self.is(m)),
            Region::Nontrivial(c) => self.order >= 2 && self.is(c),
        }
    }
}

fn syntactic_holds(system: &InclusionSystem) -> bool {
    system.inclusions().iter().all(|inc| {
        inc.lhs()
            .iter()
            .filter(|w| w.len() == 1)
            .all(|w| inc.rhs().contains(w))
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ImplicationCounter {
    pub implication: String,
    /// Trials whose premise held (the implication was non-vacuous).
    pub premise_held: u64,
    pub counterexamples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub system: String,
    pub witness: String,
    pub implication: String,
    /// Member of the conclusion class that fails C; absent for syntactic conclusions.
    pub failing_member: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub trials: u64,
    pub seed: u64,
    pub params: GeneratorParams,
    pub universe_size: usize,
    pub implications_checked: Vec<ImplicationCounter>,
    pub counterexamples: Vec<Counterexample>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "probe: {} trials, seed {}, {} semigroups\n",
            self.trials, self.seed, self.universe_size
        );
        for c in &self.implications_checked {
            out.push_str(&format!(
                "{:<9} premise held {:>5}  counterexamples {}\n",
                c.implication, c.premise_held, c.counterexamples
            ));
        }
        for c in &self.counterexamples {
            out.push_str(&format!(
                "COUNTEREXAMPLE {}: C = {} witness {}",
                c.implication, c.system, c.witness
            ));
            if let Some(m) = &c.failing_member {
                out.push_str(&format!(" fails at {m}"));
            }
            out.push('\n');
        }
        out.push_str(if self.passed() {
            "probe PASS\n"
        } else {
            "probe FAIL\n"
        });
        out
    }
}

struct TrialOutcome {
    premise: Vec<bool>,
    counterexamples: Vec<Counterexample>,
}

fn run_trial(
    system: &InclusionSystem,
    universe: &[UniverseMember],
    facts: &[Facts],
) -> TrialOutcome {
    let compiled = CompiledSystem::new(system);
    let sat: Vec<bool> = universe
        .iter()
        .map(|m| compiled.satisfies(&m.semigroup))
        .collect();
    let mut premise = Vec::with_capacity(IMPLICATIONS.len());
    let mut counterexamples = Vec::new();
    for imp in IMPLICATIONS {
        let witness = (0..universe.len()).find(|&i| sat[i] && facts[i].in_region(imp.region));
        let assumed = imp
            .assume
            .is_none_or(|c| (0..universe.len()).all(|i| !facts[i].is(c) || sat[i]));
        let Some(w) = witness.filter(|_| assumed) else {
            premise.push(false);
            continue;
        };
        premise.push(true);
        let failure = match imp.conclusion {
            Conclusion::Syntactic => (!syntactic_holds(system)).then_some(None),
            Conclusion::Contains(c) => (0..universe.len())
                .find(|&i| facts[i].is(c) && !sat[i])
                .map(|i| Some(universe[i].id.clone())),
        };
        if let Some(failing_member) = failure {
            counterexamples.push(Counterexample {
                system: system.to_string(),
                witness: universe[w].id.clone(),
                implication: imp.id.to_string(),
                failing_member,
            });
        }
    }
    TrialOutcome {
        premise,
        counterexamples,
    }
}

pub fn probe_metatheorems(
    catalog: &Catalog,
    trials: u64,
    seed: u64,
    params: &GeneratorParams,
) -> ProbeReport {
    probe_on_universe(&catalog.universe(), trials, seed, params)
}

pub fn probe_on_universe(
    universe: &[UniverseMember],
    trials: u64,
    seed: u64,
    params: &GeneratorParams,
) -> ProbeReport {
    assert!(trials >= 1, "at least one trial");
    let facts: Vec<Facts> = universe.par_iter().map(Facts::of).collect();
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(&random_system(seed, t, params), universe, &facts))
        .collect();
    let mut counters: Vec<ImplicationCounter> = IMPLICATIONS
        .iter()
        .map(|imp| ImplicationCounter {
            implication: imp.id.to_string(),
            ..Default::default()
        })
        .collect();
    let mut counterexamples = Vec::new();
    for o in outcomes {
        for (c, &held) in counters.iter_mut().zip(&o.premise) {
            c.premise_held += u64::from(held);
        }
        for ce in o.counterexamples {
            let c = counters
                .iter_mut()
                .find(|c| c.implication == ce.implication)
                .expect("known implication");
            c.counterexamples += 1;
            counterexamples.push(ce);
        }
    }
    ProbeReport {
        trials,
        seed,
        params: *params,
        universe_size: universe.len(),
        implications_checked: counters,
        counterexamples,
    }
}

/// Checks a single hand-written system against every implication.
pub fn probe_system(
    system: &InclusionSystem,
    universe: &[UniverseMember],
) -> Vec<(String, bool, bool)> {
    let facts: Vec<Facts> = universe.iter().map(Facts::of).collect();
    let o = run_trial(system, universe, &facts);
    IMPLICATIONS
        .iter()
        .zip(o.premise)
        .map(|(imp, held)| {
            let failed = o.counterexamples.iter().any(|c| c.implication == imp.id);
            (imp.id.to_string(), held, !failed)
        })
        .collect()
}
