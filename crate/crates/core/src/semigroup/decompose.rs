use serde::{Deserialize, Serialize};

use super::{ChainTag, FiniteSemigroup, Result, SemigroupError};

/// Rectangular band coordinates: element `x` sits at `(x₁, x₂)` in
/// `[0, left_count) × [0, right_count)` and `xy = (x₁, y₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RBDecomposition {
    pub left_count: usize,
    pub right_count: usize,
    pub components: Vec<(usize, usize)>,
}

impl RBDecomposition {
    pub fn first(&self, x: usize) -> usize {
        self.components[x].0
    }

    pub fn second(&self, x: usize) -> usize {
        self.components[x].1
    }

    /// True iff every pair of elements agrees in at least one coordinate.
    pub fn pairwise_share_component(&self) -> bool {
        self.components.iter().enumerate().all(|(i, a)| {
            self.components[i + 1..]
                .iter()
                .all(|b| a.0 == b.0 || a.1 == b.1)
        })
    }
}

/// Labels each element by the first-occurrence index of its key.
fn label_by<K: PartialEq>(keys: &[K]) -> (Vec<usize>, usize) {
    let mut reps: Vec<&K> = Vec::new();
    let labels = keys
        .iter()
        .map(|k| match reps.iter().position(|r| *r == k) {
            Some(p) => p,
            None => {
                reps.push(k);
                reps.len() - 1
            }
        })
        .collect();
    (labels, reps.len())
}

/// Tries to exhibit `s` as `L_m × R_p` using only the shape of its table:
/// in a rectangular band the row of `x` depends only on `x₁` and the column
/// only on `x₂`. Returns `None` when the resulting coordinates are not a
/// bijection compatible with the multiplication.
pub fn rectangular_band_structure(s: &FiniteSemigroup) -> Option<RBDecomposition> {
    let n = s.order();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|z| s.mul(x, z)).collect())
        .collect();
    let cols: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|z| s.mul(z, x)).collect())
        .collect();
    let (first, m) = label_by(&rows);
    let (second, p) = label_by(&cols);
    if m * p != n {
        return None;
    }
    let mut hit = vec![false; n];
    for x in 0..n {
        let cell = first[x] * p + second[x];
        if hit[cell] {
            return None;
        }
        hit[cell] = true;
    }
    for x in 0..n {
        for y in 0..n {
            let xy = s.mul(x, y);
            if first[xy] != first[x] || second[xy] != second[y] {
                return None;
            }
        }
    }
    Some(RBDecomposition {
        left_count: m,
        right_count: p,
        components: first.into_iter().zip(second).collect(),
    })
}

/// Decomposes a semigroup satisfying `xyx = x` into its two coordinates.
pub fn decompose_rectangular_band(s: &FiniteSemigroup) -> Result<RBDecomposition> {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            if s.mul(s.mul(x, y), x) != x {
                return Err(SemigroupError::NotRectangularBand { x, y });
            }
        }
    }
    rectangular_band_structure(s).ok_or_else(|| {
        SemigroupError::DecompositionFailed("xyx = x holds but no L × R structure found".into())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComponent {
    pub elements: Vec<usize>,
    pub tag: ChainTag,
}

/// Components listed from the bottom of the chain upwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLRDecomposition {
    pub chain: Vec<ChainComponent>,
}

impl ChainLRDecomposition {
    /// `(size, tag)` per component, in chain order.
    pub fn shape(&self) -> Vec<(usize, ChainTag)> {
        self.chain
            .iter()
            .map(|c| (c.elements.len(), c.tag))
            .collect()
    }
}

/// Splits a semigroup satisfying `xy ∈ {x, y}` into a chain of left-zero
/// and right-zero components. Singletons are tagged `Left`.
pub fn decompose_chain_lr(s: &FiniteSemigroup) -> Result<ChainLRDecomposition> {
    let n = s.order();
    for x in 0..n {
        for y in 0..n {
            let xy = s.mul(x, y);
            if xy != x && xy != y {
                return Err(SemigroupError::NotChainLR { x, y });
            }
        }
    }
    let fail = |msg: String| Err(SemigroupError::DecompositionFailed(msg));

    // Distinct elements share a component iff they do not commute.
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if comp_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n)
            .filter(|&y| y == x || s.mul(x, y) != s.mul(y, x))
            .collect();
        let id = comps.len();
        for &y in &members {
            if comp_of[y] != usize::MAX {
                return fail(format!("non-commuting relation is not transitive at {y}"));
            }
            comp_of[y] = id;
        }
        comps.push(members);
    }

    let mut tagged = Vec::with_capacity(comps.len());
    for members in comps {
        // singletons are both left- and right-zero; they are tagged Left
        let tag = if members.len() == 1
            || members
                .iter()
                .all(|&a| members.iter().all(|&b| s.mul(a, b) == a))
        {
            ChainTag::Left
        } else if members
            .iter()
            .all(|&a| members.iter().all(|&b| s.mul(a, b) == b))
        {
            ChainTag::Right
        } else {
            return fail(format!(
                "component {members:?} is neither left- nor right-zero"
            ));
        };
        tagged.push(ChainComponent {
            elements: members,
            tag,
        });
    }

    // Component A lies below B iff a·b = b·a = a for a ∈ A, b ∈ B.
    let below = |a: &ChainComponent, b: &ChainComponent| {
        let (x, y) = (a.elements[0], b.elements[0]);
        s.mul(x, y) == x && s.mul(y, x) == x
    };
    let ranks: Vec<usize> = tagged
        .iter()
        .map(|c| {
            tagged
                .iter()
                .filter(|d| !std::ptr::eq(*d, c) && below(d, c))
                .count()
        })
        .collect();
    let mut order: Vec<usize> = (0..tagged.len()).collect();
    order.sort_by_key(|&i| ranks[i]);
    let mut slots: Vec<Option<ChainComponent>> = tagged.into_iter().map(Some).collect();
    let tagged: Vec<ChainComponent> = order
        .into_iter()
        .map(|i| slots[i].take().expect("each index once"))
        .collect();
    for (i, lower) in tagged.iter().enumerate() {
        for upper in &tagged[i + 1..] {
            for &x in &lower.elements {
                for &y in &upper.elements {
                    if s.mul(x, y) != x || s.mul(y, x) != x {
                        return fail(format!("components of {x} and {y} are not comparable"));
                    }
                }
            }
        }
    }
    Ok(ChainLRDecomposition { chain: tagged })
}
