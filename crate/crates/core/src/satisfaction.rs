//! Deciding `S ⊨ [L_k ⊆ M_k]`.
//!
//! Every variable occurring in an inclusion is universally quantified, so
//! `xyz <= {xywz, xqyz}` demands that for *all* values of `x, y, z, w, q`
//! the value of `xyz` equals one of the two right-hand values. Variables that
//! do not occur in an inclusion are never enumerated.
//!
//! Substitutions are visited as an odometer over [`Inclusion::variables`]
//! (first variable most significant, elements ascending), so the first
//! violation found is the lexicographically smallest one.

use serde::Serialize;

use crate::semigroup::FiniteSemigroup;
use crate::term::{Inclusion, InclusionSystem, Substitution, Word};

/// A substitution under which some lhs word lands outside the rhs values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub inclusion_index: usize,
    pub substitution: Substitution,
    pub lhs_word: Word,
    pub lhs_value: usize,
    pub rhs_values: Vec<(Word, usize)>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "inclusion {} fails at {}: {} = {} but",
            self.inclusion_index, self.substitution, self.lhs_word, self.lhs_value
        )?;
        for (i, (w, v)) in self.rhs_values.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{w} = {v}")?;
        }
        Ok(())
    }
}

/// An inclusion with words rewritten as slot indices into its variable list.
#[derive(Debug, Clone)]
pub struct CompiledInclusion {
    source: Inclusion,
    arity: usize,
    lhs: Vec<Vec<usize>>,
    rhs: Vec<Vec<usize>>,
}

impl CompiledInclusion {
    pub fn new(inclusion: &Inclusion) -> Self {
        let vars = inclusion.variables();
        let slot = |w: &Word| -> Vec<usize> {
            w.letters()
                .iter()
                .map(|v| vars.iter().position(|u| u == v).expect("variable listed"))
                .collect()
        };
        CompiledInclusion {
            source: inclusion.clone(),
            arity: vars.len(),
            lhs: inclusion.lhs().iter().map(slot).collect(),
            rhs: inclusion.rhs().iter().map(slot).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    fn eval(s: &FiniteSemigroup, word: &[usize], values: &[usize]) -> usize {
        let mut acc = values[word[0]];
        for &slot in &word[1..] {
            acc = s.mul(acc, values[slot]);
        }
        acc
    }

    /// Index of the first lhs word whose value is not among the rhs values.
    #[inline]
    fn failing_lhs(&self, s: &FiniteSemigroup, values: &[usize]) -> Option<(usize, usize)> {
        for (i, word) in self.lhs.iter().enumerate() {
            let v = Self::eval(s, word, values);
            if !self.rhs.iter().any(|r| Self::eval(s, r, values) == v) {
                return Some((i, v));
            }
        }
        None
    }

    /// Runs the odometer, stopping at the first violation. Returns the
    /// failing assignment (if any) and the number of substitutions visited.
    pub fn check(&self, s: &FiniteSemigroup) -> (Option<(Vec<usize>, usize, usize)>, u64) {
        let n = s.order();
        let mut values = vec![0usize; self.arity];
        let mut visited = 0u64;
        loop {
            visited += 1;
            if let Some((word, value)) = self.failing_lhs(s, &values) {
                return (Some((values, word, value)), visited);
            }
            // advance, last slot fastest
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return (None, visited);
                }
                pos -= 1;
                values[pos] += 1;
                if values[pos] < n {
                    break;
                }
                values[pos] = 0;
            }
        }
    }

    fn violation(
        &self,
        s: &FiniteSemigroup,
        index: usize,
        values: Vec<usize>,
        word: usize,
        value: usize,
    ) -> Violation {
        let vars = self.source.variables();
        Violation {
            inclusion_index: index,
            substitution: Substitution::new(vars.into_iter().zip(values.iter().copied()).collect()),
            lhs_word: self.source.lhs()[word].clone(),
            lhs_value: value,
            rhs_values: self
                .source
                .rhs()
                .iter()
                .zip(&self.rhs)
                .map(|(w, slots)| (w.clone(), Self::eval(s, slots, &values)))
                .collect(),
        }
    }
}

/// A system compiled once and checked against many semigroups.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    inclusions: Vec<CompiledInclusion>,
}

impl CompiledSystem {
    pub fn new(system: &InclusionSystem) -> Self {
        CompiledSystem {
            inclusions: system
                .inclusions()
                .iter()
                .map(CompiledInclusion::new)
                .collect(),
        }
    }

    pub fn satisfies(&self, s: &FiniteSemigroup) -> bool {
        self.inclusions.iter().all(|inc| inc.check(s).0.is_none())
    }

    pub fn find_violation(&self, s: &FiniteSemigroup) -> Option<Violation> {
        self.inclusions.iter().enumerate().find_map(|(k, inc)| {
            inc.check(s)
                .0
                .map(|(values, word, value)| inc.violation(s, k, values, word, value))
        })
    }

    /// Like [`Self::satisfies`], also returning the substitutions visited
    /// per inclusion (inclusions after a failing one report zero).
    pub fn satisfies_counted(&self, s: &FiniteSemigroup) -> (bool, Vec<u64>) {
        let mut counts = vec![0; self.inclusions.len()];
        for (k, inc) in self.inclusions.iter().enumerate() {
            let (failure, visited) = inc.check(s);
            counts[k] = visited;
            if failure.is_some() {
                return (false, counts);
            }
        }
        (true, counts)
    }
}

pub fn satisfies(s: &FiniteSemigroup, system: &InclusionSystem) -> bool {
    CompiledSystem::new(system).satisfies(s)
}

pub fn find_violation(s: &FiniteSemigroup, system: &InclusionSystem) -> Option<Violation> {
    CompiledSystem::new(system).find_violation(s)
}

pub fn satisfies_counted(s: &FiniteSemigroup, system: &InclusionSystem) -> (bool, Vec<u64>) {
    CompiledSystem::new(system).satisfies_counted(s)
}

pub fn satisfies_all<'a>(
    s: &FiniteSemigroup,
    systems: impl IntoIterator<Item = &'a InclusionSystem>,
) -> Vec<bool> {
    systems.into_iter().map(|sys| satisfies(s, sys)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_system, Variable};

    fn sys(text: &str) -> InclusionSystem {
        parse_system(text).unwrap()
    }

    #[test]
    fn basic_membership() {
        assert!(satisfies(&FiniteSemigroup::left_zero(2), &sys("xy = x")));
        assert!(satisfies(&FiniteSemigroup::chain2(), &sys("xy <= {x, y}")));
        assert!(!satisfies(
            &FiniteSemigroup::semilattice3(),
            &sys("xy <= {x, y}")
        ));
    }

    #[test]
    fn violation_in_right_zero() {
        let v = find_violation(&FiniteSemigroup::right_zero(2), &sys("xy = x")).unwrap();
        let x = Variable::new('x').unwrap();
        let y = Variable::new('y').unwrap();
        assert_eq!(v.inclusion_index, 0);
        assert_eq!(v.substitution, Substitution::new(vec![(x, 0), (y, 1)]));
        assert_eq!(v.lhs_value, 1);
        assert_eq!(v.rhs_values, vec![("x".parse().unwrap(), 0)]);
        assert!(find_violation(&FiniteSemigroup::left_zero(2), &sys("xy = x")).is_none());
    }

    #[test]
    fn null_is_not_idempotent() {
        let v = find_violation(&FiniteSemigroup::null(2), &sys("x = xx")).unwrap();
        let x = Variable::new('x').unwrap();
        assert_eq!(v.substitution, Substitution::new(vec![(x, 1)]));
        assert_eq!((v.lhs_value, v.rhs_values[0].1), (1, 0));
    }

    #[test]
    fn bulk() {
        let systems = [sys("xy = x"), sys("xy = y"), sys("xyx = x")];
        assert_eq!(
            satisfies_all(&FiniteSemigroup::left_zero(2), &systems),
            vec![true, false, true]
        );
        let systems = [sys("xyx = x"), sys("xy = x")];
        assert_eq!(
            satisfies_all(&FiniteSemigroup::rectangular_band(2, 2), &systems),
            vec![true, false]
        );
        assert_eq!(
            satisfies_all(&FiniteSemigroup::null(2), &[sys("xy = zw")]),
            vec![true]
        );
    }

    #[test]
    fn universal_not_existential() {
        // In L2, xyz = x; xywz = x and xqyz = x as well, so it satisfies I.
        assert!(satisfies(
            &FiniteSemigroup::left_zero(2),
            &sys("xyz <= {xywz, xqyz}")
        ));
        // In the 2-chain the rhs words would need a *choice* of w, q.
        assert!(!satisfies(
            &FiniteSemigroup::chain2(),
            &sys("xyz <= {xywz, xqyz}")
        ));
    }

    #[test]
    fn substitution_count_is_n_pow_v() {
        let s = FiniteSemigroup::rectangular_band(2, 2);
        let (ok, counts) = satisfies_counted(&s, &sys("xyz = xz ; x = xx"));
        assert!(ok);
        assert_eq!(counts, vec![64, 4]);
    }

    #[test]
    fn trivial_inclusion_accepted() {
        assert!(satisfies(
            &FiniteSemigroup::semilattice3(),
            &sys("{xy, yx} <= {yx, xy}")
        ));
    }
}
