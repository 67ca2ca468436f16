//! Seiberg–Witten conclusions for circle-action manifolds.
//!
//! With a fixed point and `b+ > 1` the invariant vanishes for every Spin^c
//! structure. Without fixed points, a structure pulled back from `xi0` on the
//! orbifold quotient has invariant equal to the sum of the 3-dimensional
//! invariants over the coset `xi0 + <chi>`, `chi` the orbifold Euler class.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{cyclic_membership, AbelianError, FgAbelianGroup, GroupElement};
use crate::orbit::{validate, Violation, WeightedOrbitSpace};
use crate::reduce::{reduce, ReduceError, ReductionTrace, Verdict};

pub const B_PLUS_ONE_NOTE: &str =
    "b+ = 1: the invariant depends on a chamber; no wall-crossing analysis is performed";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SwError {
    #[error("invalid presentation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidInput(Vec<Violation>),
    #[error("group mismatch: {0}")]
    GroupMismatch(#[from] AbelianError),
    #[error("duplicate table key {0}")]
    DuplicateKey(String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// Finitely supported table of 3-dimensional invariants keyed by elements of
/// the group modelling `Pic^t(Y)`; absent keys have value 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sw3Table {
    group: Arc<FgAbelianGroup>,
    entries: Vec<(GroupElement, BigInt)>,
}

impl Sw3Table {
    pub fn new(group: Arc<FgAbelianGroup>) -> Self {
        Self {
            group,
            entries: Vec::new(),
        }
    }

    pub fn from_entries(
        group: Arc<FgAbelianGroup>,
        entries: impl IntoIterator<Item = (GroupElement, BigInt)>,
    ) -> Result<Self, SwError> {
        let mut table = Self::new(group);
        for (key, value) in entries {
            table.insert(key, value)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, key: GroupElement, value: BigInt) -> Result<(), SwError> {
        if **key.parent() != *self.group {
            return Err(AbelianError::ParentMismatch.into());
        }
        if self.entries.iter().any(|(k, _)| *k == key) {
            return Err(SwError::DuplicateKey(key.to_string()));
        }
        self.entries.push((key, value));
        Ok(())
    }

    pub fn group(&self) -> &Arc<FgAbelianGroup> {
        &self.group
    }

    pub fn entries(&self) -> &[(GroupElement, BigInt)] {
        &self.entries
    }

    pub fn get(&self, key: &GroupElement) -> BigInt {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VanishingReason {
    FixedPointAndBPlusGreaterThanOne,
    EssentialSphereAndBPlusGreaterThanOne,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwVerdict {
    Vanishes(VanishingReason),
    BPlusOneCase(String),
    FixedPointFreeValue { value: BigInt, note: Option<String> },
    OutOfScope(String),
}

impl fmt::Display for SwVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwVerdict::Vanishes(VanishingReason::FixedPointAndBPlusGreaterThanOne) => write!(
                f,
                "SW ≡ 0 for every Spin^c structure (circle action with a fixed point, b+ > 1)"
            ),
            SwVerdict::Vanishes(VanishingReason::EssentialSphereAndBPlusGreaterThanOne) => write!(
                f,
                "SW ≡ 0 for every Spin^c structure (essential sphere of nonnegative square, b+ > 1)"
            ),
            SwVerdict::BPlusOneCase(note) => write!(f, "no vanishing claim: {note}"),
            SwVerdict::FixedPointFreeValue { value, note: None } => write!(f, "SW = {value}"),
            SwVerdict::FixedPointFreeValue { value, note: Some(note) } => {
                write!(f, "SW = {value} ({note})")
            }
            SwVerdict::OutOfScope(note) => write!(f, "out of scope: {note}"),
        }
    }
}

fn checked(y: &WeightedOrbitSpace) -> Result<(), SwError> {
    let violations = validate(y);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SwError::InvalidInput(violations))
    }
}

pub fn sw_vanishing(y: &WeightedOrbitSpace, b_plus: u32) -> Result<SwVerdict, SwError> {
    checked(y)?;
    Ok(if !y.has_fixed_points() {
        SwVerdict::OutOfScope(
            "no fixed points; evaluate the fixed-point-free pullback sum instead".into(),
        )
    } else if b_plus > 1 {
        SwVerdict::Vanishes(VanishingReason::FixedPointAndBPlusGreaterThanOne)
    } else if b_plus == 1 {
        SwVerdict::BPlusOneCase(B_PLUS_ONE_NOTE.into())
    } else {
        SwVerdict::OutOfScope("b+ = 0; the invariant is not defined in this setting".into())
    })
}

/// Like [`sw_vanishing`], but backs a vanishing verdict with an explicit
/// reduction to an essential sphere of nonnegative square.
pub fn sw_vanishing_certified(
    y: &WeightedOrbitSpace,
    b_plus: u32,
) -> Result<(SwVerdict, Option<(Verdict, ReductionTrace)>), SwError> {
    let plain = sw_vanishing(y, b_plus)?;
    if !matches!(plain, SwVerdict::Vanishes(_)) {
        return Ok((plain, None));
    }
    let (verdict, trace) = reduce(y, b_plus)?;
    let sw = match verdict {
        Verdict::SphereFound(_) | Verdict::SummandSphere(_) => {
            SwVerdict::Vanishes(VanishingReason::EssentialSphereAndBPlusGreaterThanOne)
        }
        Verdict::OutOfScope(_) => plain,
    };
    Ok((sw, Some((verdict, trace))))
}

/// `SW4(pi^* xi0) = sum of SW3(xi')` over table keys with `xi' - xi0` in the
/// cyclic subgroup generated by `chi`.
pub fn sw_pullback_sum(
    group: &FgAbelianGroup,
    chi: &GroupElement,
    xi0: &GroupElement,
    table: &Sw3Table,
) -> Result<BigInt, SwError> {
    for g in [chi.parent(), xi0.parent(), table.group()] {
        if **g != *group {
            return Err(AbelianError::ParentMismatch.into());
        }
    }
    let mut total = BigInt::default();
    for (key, value) in &table.entries {
        let diff = key.sub(xi0)?;
        if cyclic_membership(chi, &diff)?.is_some() {
            total += value;
        }
    }
    Ok(total)
}

/// Fixed-point-free evaluation wrapped as a verdict, with the `b+ = 1` note
/// attached when it applies.
pub fn sw_fixed_point_free(
    y: &WeightedOrbitSpace,
    b_plus: u32,
    chi: &GroupElement,
    xi0: &GroupElement,
    table: &Sw3Table,
) -> Result<SwVerdict, SwError> {
    checked(y)?;
    if y.has_fixed_points() {
        return Ok(SwVerdict::OutOfScope(
            "the action has fixed points; use the vanishing verdict".into(),
        ));
    }
    let value = sw_pullback_sum(chi.parent(), chi, xi0, table)?;
    let note = (b_plus == 1).then(|| B_PLUS_ONE_NOTE.to_string());
    Ok(SwVerdict::FixedPointFreeValue { value, note })
}

pub const RATIONAL_OR_RULED: [&str; 3] = [
    "CP²",
    "S²-bundle over a surface",
    "ĈP² blowups of CP² or of an S²-bundle over a surface",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymplecticConclusion {
    /// No symplectic manifold has this presentation and `b+`.
    Contradiction(String),
    RationalOrRuled {
        candidates: Vec<String>,
        admits_symplectic_circle_action: bool,
    },
    NoClaim,
}

impl fmt::Display for SymplecticConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymplecticConclusion::Contradiction(why) => write!(f, "contradiction: {why}"),
            SymplecticConclusion::RationalOrRuled {
                candidates,
                admits_symplectic_circle_action,
            } => {
                write!(f, "rational or ruled: one of {}", candidates.join("; "))?;
                if *admits_symplectic_circle_action {
                    write!(f, "; admits a symplectic circle action")?;
                }
                Ok(())
            }
            SymplecticConclusion::NoClaim => write!(f, "no claim"),
        }
    }
}

pub fn symplectic_verdict(
    y: &WeightedOrbitSpace,
    b_plus: u32,
    symplectic: bool,
) -> Result<SymplecticConclusion, SwError> {
    checked(y)?;
    if !symplectic || !y.has_fixed_points() {
        return Ok(SymplecticConclusion::NoClaim);
    }
    Ok(match b_plus {
        0 => SymplecticConclusion::Contradiction(
            "symplectic 4-manifolds have b+ > 0 (the square of the form is a volume form)".into(),
        ),
        1 => SymplecticConclusion::RationalOrRuled {
            candidates: RATIONAL_OR_RULED.iter().map(|s| s.to_string()).collect(),
            admits_symplectic_circle_action: true,
        },
        _ => SymplecticConclusion::Contradiction(
            "a symplectic manifold with a circle action having fixed points must have b+ = 1"
                .into(),
        ),
    })
}
