use serde::{Deserialize, Serialize};

use super::{FiniteSemigroup, Result, SemigroupError, MAX_ORDER};

/// Whether a chain component is a left-zero or right-zero semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainTag {
    Left,
    Right,
}

/// A base semigroup together with the base element each new element
/// retracts onto.
#[derive(Debug, Clone)]
pub struct InflationSpec {
    pub base: FiniteSemigroup,
    pub fiber_assignment: Vec<usize>,
}

impl InflationSpec {
    pub fn new(base: FiniteSemigroup, fiber_assignment: Vec<usize>) -> Self {
        InflationSpec {
            base,
            fiber_assignment,
        }
    }
}

/// The named constructions.
#[derive(Debug, Clone)]
pub enum Construction {
    LeftZero(usize),
    RightZero(usize),
    Null(usize),
    RectangularBand(usize, usize),
    ChainOfLR(Vec<(usize, ChainTag)>),
    DirectProduct(FiniteSemigroup, FiniteSemigroup),
    Inflate(InflationSpec),
}

impl Construction {
    pub fn build(&self) -> Result<FiniteSemigroup> {
        let positive = |n: usize, what: &str| {
            if n == 0 || n > MAX_ORDER {
                Err(SemigroupError::InvalidParams(format!(
                    "{what} must be in 1..={MAX_ORDER}, got {n}"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            Construction::LeftZero(n) => {
                positive(*n, "order")?;
                Ok(table_from(*n, |i, _| i).with_label(format!("L{n}")))
            }
            Construction::RightZero(n) => {
                positive(*n, "order")?;
                Ok(table_from(*n, |_, j| j).with_label(format!("R{n}")))
            }
            Construction::Null(n) => {
                positive(*n, "order")?;
                Ok(table_from(*n, |_, _| 0).with_label(format!("Z{n}")))
            }
            Construction::RectangularBand(m, p) => {
                positive(*m, "left size")?;
                positive(*p, "right size")?;
                positive(m * p, "order")?;
                // element (a, b) has index a * p + b
                let p = *p;
                Ok(table_from(m * p, |x, y| (x / p) * p + y % p).with_label(format!("RB{m}x{p}")))
            }
            Construction::ChainOfLR(parts) => chain_of_lr(parts),
            Construction::DirectProduct(s, t) => direct_product(s, t),
            Construction::Inflate(spec) => inflate(spec),
        }
    }
}

fn table_from(n: usize, f: impl Fn(usize, usize) -> usize) -> FiniteSemigroup {
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(f(i, j) as u8);
        }
    }
    FiniteSemigroup::from_flat(n, table).expect("named constructions are associative")
}

fn chain_of_lr(parts: &[(usize, ChainTag)]) -> Result<FiniteSemigroup> {
    if parts.is_empty() {
        return Err(SemigroupError::InvalidParams("empty chain".into()));
    }
    if parts.iter().any(|&(size, _)| size == 0) {
        return Err(SemigroupError::InvalidParams(
            "chain components must be nonempty".into(),
        ));
    }
    let mut position = Vec::new();
    for (pos, &(size, _)) in parts.iter().enumerate() {
        position.extend(std::iter::repeat_n(pos, size));
    }
    let n = position.len();
    if n > MAX_ORDER {
        return Err(SemigroupError::InvalidParams(format!(
            "chain order {n} too large"
        )));
    }
    Ok(table_from(n, |x, y| {
        let (px, py) = (position[x], position[y]);
        if px < py {
            x
        } else if py < px {
            y
        } else {
            match parts[px].1 {
                ChainTag::Left => x,
                ChainTag::Right => y,
            }
        }
    }))
}

fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<FiniteSemigroup> {
    let (n, m) = (s.order(), t.order());
    if n * m > MAX_ORDER {
        return Err(SemigroupError::InvalidParams(format!(
            "product order {} too large",
            n * m
        )));
    }
    // (a, b) has index a * m + b
    Ok(table_from(n * m, |x, y| {
        s.mul(x / m, y / m) * m + t.mul(x % m, y % m)
    }))
}

fn inflate(spec: &InflationSpec) -> Result<FiniteSemigroup> {
    let base = &spec.base;
    let b = base.order();
    if let Some(&bad) = spec.fiber_assignment.iter().find(|&&f| f >= b) {
        return Err(SemigroupError::InvalidParams(format!(
            "fiber target {bad} is not a base element (base order {b})"
        )));
    }
    let n = b + spec.fiber_assignment.len();
    if n > MAX_ORDER {
        return Err(SemigroupError::InvalidParams(format!(
            "inflation order {n} too large"
        )));
    }
    let retract = |x: usize| {
        if x < b {
            x
        } else {
            spec.fiber_assignment[x - b]
        }
    };
    Ok(table_from(n, |x, y| base.mul(retract(x), retract(y))))
}

impl FiniteSemigroup {
    /// Left-zero semigroup `xy = x`. Panics if `n == 0`.
    pub fn left_zero(n: usize) -> Self {
        Construction::LeftZero(n).build().expect("n >= 1")
    }

    /// Right-zero semigroup `xy = y`. Panics if `n == 0`.
    pub fn right_zero(n: usize) -> Self {
        Construction::RightZero(n).build().expect("n >= 1")
    }

    /// Null semigroup: every product is `0`. Panics if `n == 0`.
    pub fn null(n: usize) -> Self {
        Construction::Null(n).build().expect("n >= 1")
    }

    pub fn trivial() -> Self {
        Self::null(1).with_label("trivial")
    }

    /// `L_m × R_p`. Panics if either size is zero.
    pub fn rectangular_band(m: usize, p: usize) -> Self {
        Construction::RectangularBand(m, p)
            .build()
            .expect("m, p >= 1")
    }

    /// Chain of left/right-zero components; earlier components sit lower
    /// in the chain.
    pub fn chain_of_lr(parts: &[(usize, ChainTag)]) -> Result<Self> {
        chain_of_lr(parts)
    }

    pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<Self> {
        direct_product(s, t)
    }

    /// Base elements keep their indices; new element `b + k` retracts onto
    /// `fiber_assignment[k]`.
    pub fn inflate(spec: &InflationSpec) -> Result<Self> {
        inflate(spec)
    }

    /// Two-element chain semilattice (`xy = min(x, y)`).
    pub fn chain2() -> Self {
        chain_of_lr(&[(1, ChainTag::Left), (1, ChainTag::Left)])
            .expect("valid chain")
            .with_label("chain2")
    }

    /// Three-element semilattice `{0, x, y}` with `xy = yx = 0`.
    pub fn semilattice3() -> Self {
        FiniteSemigroup::new(3, vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]])
            .expect("semilattice is associative")
            .with_label("T3")
    }
}
