//! Named semigroup classes.
//!
//! Each base class carries its defining inclusion system. Where a
//! table-level description exists (e.g. `GRB = {S : S² ∈ RB}`), it is
//! implemented independently in [`member_structural`] so the two routes can
//! be compared. Composite nodes of the lattice are unions of base classes.
//!
//! Exponents are written out (`x²y²` becomes `xxyy`).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::satisfaction::CompiledSystem;
use crate::semigroup::{rectangular_band_structure, FiniteSemigroup};
use crate::term::{parse_system, InclusionSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("class `{0}` has no structural characterization")]
    NoStructuralForm(String),
    #[error("characterizations of `{class}` disagree on {semigroup}: {detail}")]
    CharacterizationMismatch {
        class: String,
        semigroup: String,
        detail: String,
    },
}

/// Table-level predicates, evaluated without the inclusion checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Structural {
    Trivial,
    Z,
    L,
    R,
    B,
    RB,
    IB,
    IL,
    IR,
    IRB,
    GB,
    GL,
    GR,
    GRB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    /// Defined by an inclusion system of its own.
    Base,
    /// Left-hand side of one of the class equalities being verified.
    Proposition,
    /// A union of base classes.
    Union,
}

/// An additional identity characterization of a base class.
#[derive(Debug, Clone, Serialize)]
pub struct Alternate {
    pub definition: InclusionSystem,
    /// Printed characterizations that look like misprints; recorded but
    /// never cross-checked.
    pub suspect: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassDescriptor {
    pub name: String,
    pub kind: ClassKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definition: Option<InclusionSystem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural: Option<Structural>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub union_of: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alternates: Vec<Alternate>,
    #[serde(skip)]
    compiled: Option<CompiledSystem>,
}

impl ClassDescriptor {
    fn base(name: &str, definition: &str, structural: Option<Structural>) -> Self {
        let system = parse_system(definition).expect("registry definitions parse");
        ClassDescriptor {
            name: name.into(),
            kind: ClassKind::Base,
            compiled: Some(CompiledSystem::new(&system)),
            definition: Some(system),
            structural,
            union_of: None,
            alternates: Vec::new(),
        }
    }

    fn proposition(name: &str, definition: &str) -> Self {
        ClassDescriptor {
            kind: ClassKind::Proposition,
            ..Self::base(name, definition, None)
        }
    }

    fn union(name: &str) -> Self {
        ClassDescriptor {
            name: name.into(),
            kind: ClassKind::Union,
            definition: None,
            structural: None,
            union_of: Some(name.split('∪').map(str::to_owned).collect()),
            alternates: Vec::new(),
            compiled: None,
        }
    }

    fn alternate(mut self, definition: &str, suspect: bool) -> Self {
        self.alternates.push(Alternate {
            definition: parse_system(definition).expect("registry definitions parse"),
            suspect,
        });
        self
    }
}

/// Base classes with their identities and structural forms.
const BASE: &[(&str, &str, Option<Structural>)] = &[
    ("{0}", "x = y", Some(Structural::Trivial)),
    ("Z", "xy = zw", Some(Structural::Z)),
    ("L", "xy = x", Some(Structural::L)),
    ("R", "xy = y", Some(Structural::R)),
    ("B", "x = xx", Some(Structural::B)),
    ("RB", "xyx = x", Some(Structural::RB)),
    ("IB", "xy = xxyy", Some(Structural::IB)),
    ("IL", "xyz = xw", Some(Structural::IL)),
    ("IR", "xyz = wz", Some(Structural::IR)),
    ("IRB", "xyz = xz", Some(Structural::IRB)),
    ("GB", "xy = xyxy", Some(Structural::GB)),
    ("GL", "xyz = xy", Some(Structural::GL)),
    ("GR", "xyz = yz", Some(Structural::GR)),
    ("GRB", "xy = xyzxy", Some(Structural::GRB)),
    ("GRB_l", "xyz = xywz ; xy = xyxy", None),
    ("GRB_r", "xyz = xwyz ; xy = xyxy", None),
    ("I", "xyz <= {xywz, xqyz} ; xy = xyxy", None),
];

/// Left-hand sides of the class equalities, verbatim; `_dual` marks the
/// mirrored statement.
pub const PROPOSITION_CLASSES: &[(&str, &str)] = &[
    ("P1A", "x <= {xy, zx}"),
    ("P1B", "xyz <= {x, z}"),
    ("P2C", "xy <= {y, zw}"),
    ("P2C_dual", "xy <= {x, zw}"),
    ("P3V", "xyz <= {x, z, uv}"),
    ("P4V", "xyz <= {z, xw}"),
    ("P4V_dual", "xyz <= {x, wz}"),
    ("P5A", "xyz <= {xw, qz}"),
    ("P5B", "xy <= {xuv, zwy}"),
    ("P5D", "xyz = xz ; xyzwuv <= {xy, uv}"),
    ("P6V", "xyz <= {z, xy} ; xyzwuv <= {xy, uv}"),
    ("P6V_dual", "xyz <= {x, yz} ; xyzwuv <= {xy, uv}"),
    ("P7V", "xyz <= {xy, qz} ; xy <= {xyz, uv}"),
    ("P7V_dual", "xyz <= {yz, xq} ; yz <= {xyz, uv}"),
    ("P8A", "xyzwuv <= {xy, uv}"),
    ("P8B", "xy <= {xyw, qxy}"),
    ("P9V", "xyx <= {x, zw}"),
    ("P10V", "xyx <= {x, wx}"),
    ("P10V_dual", "xyx <= {x, xw}"),
    ("P11V", "xyx <= {x, wx, xq} ; xy = xyxy"),
    ("P12V", "xyx <= {x, xyw} ; xy = xyzwxy"),
    ("P12V_dual", "xyx <= {x, wyx} ; xy = xyzwxy"),
    ("P13V", "xyx <= {x, wx, xyq} ; xy = xyzwxy"),
    ("P13V_dual", "xyx <= {x, xw, qyx} ; xy = xyzwxy"),
    ("P14V", "xyx <= {x, xyw, qyx} ; xy = xyzwxy"),
    ("P15V", "xy <= {xwy, xyq}"),
    ("P15V_dual", "xy <= {xwy, qxy}"),
    ("P16V", "xy <= {xyw, xvy, qxy}"),
    ("P17V", "xyz <= {yz, xywz} ; xyzwxy = xy"),
    ("P17V_dual", "xyz <= {xy, xwyz} ; xyzwxy = xy"),
    ("P18V", "xyz <= {xywz, xqyz} ; xy = xyxy"),
];

/// Unions appearing as right-hand sides, i.e. the composite lattice nodes.
pub const UNION_CLASSES: &[&str] = &[
    "L∪R",
    "Z∪R",
    "L∪Z",
    "L∪Z∪R",
    "IL∪R",
    "L∪IR",
    "IL∪IR",
    "GL∪R",
    "L∪GR",
    "GL∪IR",
    "IL∪GR",
    "GL∪GR",
    "Z∪RB",
    "IL∪RB",
    "RB∪IR",
    "IL∪RB∪IR",
    "GL∪RB",
    "RB∪GR",
    "GL∪RB∪IR",
    "IL∪RB∪GR",
    "GL∪RB∪GR",
    "GL∪IRB",
    "IRB∪GR",
    "GL∪IRB∪GR",
    "GRB_l∪GR",
    "GL∪GRB_r",
    "GRB_l∪GRB_r",
];

/// The registry, in a fixed order: base classes, proposition classes,
/// unions.
pub struct Registry {
    classes: Vec<ClassDescriptor>,
    index: BTreeMap<String, usize>,
}

impl Registry {
    fn build() -> Self {
        let mut classes: Vec<ClassDescriptor> = BASE
            .iter()
            .map(|&(name, def, st)| {
                let d = ClassDescriptor::base(name, def, st);
                match name {
                    "Z" => d.alternate("xyz = uv", false),
                    "L" => d.alternate("xyz = x", false),
                    "R" => d.alternate("xyz = z", false),
                    "RB" => d.alternate("xyz = xz ; x = xx", false),
                    "GL" | "GR" => d.alternate("xyx = xyw ; xy = xyxy", true),
                    _ => d,
                }
            })
            .collect();
        classes.extend(
            PROPOSITION_CLASSES
                .iter()
                .map(|&(name, def)| ClassDescriptor::proposition(name, def)),
        );
        classes.extend(
            UNION_CLASSES
                .iter()
                .map(|&name| ClassDescriptor::union(name)),
        );
        let index = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), i))
            .collect();
        Registry { classes, index }
    }

    pub fn classes(&self) -> &[ClassDescriptor] {
        &self.classes
    }

    /// Accepts `|` or `+` in place of `∪`, and `0` for `{0}`.
    pub fn get(&self, name: &str) -> Result<&ClassDescriptor, ClassError> {
        let normalized = normalize_name(name);
        self.index
            .get(&normalized)
            .map(|&i| &self.classes[i])
            .ok_or_else(|| ClassError::UnknownClass(name.to_owned()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.classes).expect("registry serializes")
    }
}

pub fn normalize_name(name: &str) -> String {
    let trimmed = name.trim();
    if trimmed == "0" {
        return "{0}".into();
    }
    trimmed
        .split(['∪', '|', '+'])
        .map(str::trim)
        .collect::<Vec<_>>()
        .join("∪")
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::build)
}

/// Membership through the identity definition (or, for unions, the
/// disjunction of the parts).
pub fn member(s: &FiniteSemigroup, class_name: &str) -> Result<bool, ClassError> {
    member_of(s, registry().get(class_name)?)
}

pub fn member_of(s: &FiniteSemigroup, class: &ClassDescriptor) -> Result<bool, ClassError> {
    if let Some(parts) = &class.union_of {
        for part in parts {
            if member(s, part)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    Ok(class
        .compiled
        .as_ref()
        .expect("non-union classes have a definition")
        .satisfies(s))
}

/// Membership through the table-level description.
pub fn member_structural(s: &FiniteSemigroup, class_name: &str) -> Result<bool, ClassError> {
    let class = registry().get(class_name)?;
    let tag = class
        .structural
        .ok_or_else(|| ClassError::NoStructuralForm(class.name.clone()))?;
    Ok(structural_holds(s, tag))
}

pub fn structural_holds(s: &FiniteSemigroup, tag: Structural) -> bool {
    match tag {
        Structural::Trivial => s.order() == 1,
        Structural::Z => s.is_constant_product(),
        Structural::L => s.is_left_zero(),
        Structural::R => s.is_right_zero(),
        Structural::B => s.is_band(),
        Structural::RB => rectangular_band_structure(s).is_some(),
        Structural::IB => inflation_over(s, Structural::B),
        Structural::IL => inflation_over(s, Structural::L),
        Structural::IR => inflation_over(s, Structural::R),
        Structural::IRB => inflation_over(s, Structural::RB),
        Structural::GB => structural_holds(&s.square(), Structural::B),
        Structural::GL => structural_holds(&s.square(), Structural::L),
        Structural::GR => structural_holds(&s.square(), Structural::R),
        Structural::GRB => structural_holds(&s.square(), Structural::RB),
    }
}

/// `S` is an inflation of a semigroup in `base_class`. For idempotent bases
/// the base is necessarily `S²`, so this asks for `S² ∈ base_class` and a
/// retraction `f : S → S²` fixing `S²` with `xy = f(x)f(y)`.
fn inflation_over(s: &FiniteSemigroup, base_class: Structural) -> bool {
    structural_holds(&s.square(), base_class) && inflation_retraction(s).is_some()
}

/// A retraction `f : S → S²` with `f|S² = id` and `xy = f(x)f(y)` for all
/// `x, y`, if one exists.
pub fn inflation_retraction(s: &FiniteSemigroup) -> Option<Vec<usize>> {
    let n = s.order();
    let square = s.square_elements();
    let mut in_square = vec![false; n];
    for &e in &square {
        in_square[e] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&x| !in_square[x]).collect();
    let mut f: Vec<Option<usize>> = (0..n).map(|x| in_square[x].then_some(x)).collect();

    let ok = |f: &[Option<usize>]| {
        (0..n).all(|x| {
            (0..n).all(|y| match (f[x], f[y]) {
                (Some(a), Some(b)) => s.mul(x, y) == s.mul(a, b),
                _ => true,
            })
        })
    };
    if !ok(&f) {
        return None;
    }

    fn search(
        k: usize,
        free: &[usize],
        square: &[usize],
        f: &mut Vec<Option<usize>>,
        ok: &dyn Fn(&[Option<usize>]) -> bool,
    ) -> bool {
        if k == free.len() {
            return true;
        }
        for &target in square {
            f[free[k]] = Some(target);
            if ok(f) && search(k + 1, free, square, f, ok) {
                return true;
            }
        }
        f[free[k]] = None;
        false
    }

    if search(0, &free, &square, &mut f, &ok) {
        Some(f.into_iter().map(|v| v.expect("all assigned")).collect())
    } else {
        None
    }
}

/// Compares the identity route with the structural route (and with any
/// non-suspect alternate identities). Returns the common verdict.
pub fn cross_check(s: &FiniteSemigroup, class_name: &str) -> Result<bool, ClassError> {
    let class = registry().get(class_name)?;
    let by_identity = member_of(s, class)?;
    let by_structure = member_structural(s, &class.name)?;
    let mismatch = |detail: String| ClassError::CharacterizationMismatch {
        class: class.name.clone(),
        semigroup: s.digits(),
        detail,
    };
    if by_identity != by_structure {
        return Err(mismatch(format!(
            "identity route says {by_identity}, structural route says {by_structure}"
        )));
    }
    for alt in class.alternates.iter().filter(|a| !a.suspect) {
        let by_alt = CompiledSystem::new(&alt.definition).satisfies(s);
        if by_alt != by_identity {
            return Err(mismatch(format!(
                "alternate [{}] says {by_alt}, definition says {by_identity}",
                alt.definition
            )));
        }
    }
    Ok(by_identity)
}

/// Classes that have both an identity and a structural definition.
pub fn cross_checkable() -> Vec<&'static str> {
    registry()
        .classes()
        .iter()
        .filter(|c| c.structural.is_some() && c.definition.is_some())
        .map(|c| c.name.as_str())
        .collect()
}
