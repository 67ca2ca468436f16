use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, AbelianError, IntMatrix, SmithDecomposition};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` in invariant
/// factor form: every `di >= 2` and `di | d(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, AbelianError> {
        let two = BigInt::from(2);
        if let Some(bad) = invariant_factors.iter().find(|d| **d < two) {
            return Err(AbelianError::NonCanonical(format!(
                "invariant factor {bad} is smaller than 2"
            )));
        }
        if let Some(w) = invariant_factors
            .windows(2)
            .find(|w| !(&w[1] % &w[0]).is_zero())
        {
            return Err(AbelianError::NonCanonical(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`, or the trivial group for `n = 1`, or `Z` for `n = 0`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => Self {
                free_rank: 0,
                invariant_factors: vec![BigInt::from(n)],
            },
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// The canonical relation matrix `diag(d1, ..., dk)` padded with `r` zero
    /// columns, presenting this group on `k + r` generators.
    pub fn canonical_relations(&self) -> IntMatrix {
        let k = self.invariant_factors.len();
        IntMatrix::diagonal(k, k + self.free_rank, &self.invariant_factors)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Canonical form of the group with the given generators and relation rows.
pub fn group_from_relations(
    generators: usize,
    relations: &IntMatrix,
) -> Result<FgAbelianGroup, AbelianError> {
    let presentation = GroupPresentation::new(generators, relations.clone())?;
    Ok(FgAbelianGroup::clone(presentation.group()))
}

/// A group presented by generators and relation rows, together with the Smith
/// data needed to map generator coordinates to canonical elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: usize,
    relations: IntMatrix,
    snf: SmithDecomposition,
    group: Arc<FgAbelianGroup>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, AbelianError> {
        if relations.cols() != generators {
            return Err(AbelianError::DimensionMismatch {
                expected: generators,
                found: relations.cols(),
            });
        }
        let snf = smith_normal_form(&relations);
        let rank = snf.rank();
        let factors = snf.d[..rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        let group = FgAbelianGroup::new(generators - rank, factors)?;
        Ok(Self {
            generators,
            relations,
            snf,
            group: Arc::new(group),
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub fn group(&self) -> &Arc<FgAbelianGroup> {
        &self.group
    }

    /// Image of `sum coords[i] * g_i` in canonical coordinates.
    ///
    /// Relations are rows, so the quotient is `Z^g / rowspace(A)`. Right
    /// multiplication by `V` carries `rowspace(A)` onto `rowspace(diag(d))`.
    pub fn element<T: Into<BigInt> + Clone>(
        &self,
        coords: &[T],
    ) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.generators {
            return Err(AbelianError::DimensionMismatch {
                expected: self.generators,
                found: coords.len(),
            });
        }
        let x: Vec<BigInt> = coords.iter().cloned().map(Into::into).collect();
        let v = &self.snf.v;
        let y: Vec<BigInt> = (0..self.generators)
            .map(|j| (0..self.generators).map(|i| &x[i] * &v[(i, j)]).sum())
            .collect();

        let mut free = Vec::with_capacity(self.group.free_rank);
        let mut torsion = Vec::with_capacity(self.group.invariant_factors.len());
        for (j, yj) in y.into_iter().enumerate() {
            match self.snf.d.get(j) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => torsion.push(yj.mod_floor(d)),
                _ => free.push(yj),
            }
        }
        GroupElement::new(self.group.clone(), free, torsion)
    }
}

/// An element of a [`FgAbelianGroup`] in canonical coordinates: free
/// coordinates first, then torsion residues reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    parent: Arc<FgAbelianGroup>,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(
        parent: Arc<FgAbelianGroup>,
        free: Vec<BigInt>,
        torsion: Vec<BigInt>,
    ) -> Result<Self, AbelianError> {
        if free.len() != parent.free_rank {
            return Err(AbelianError::DimensionMismatch {
                expected: parent.free_rank,
                found: free.len(),
            });
        }
        if torsion.len() != parent.invariant_factors.len() {
            return Err(AbelianError::DimensionMismatch {
                expected: parent.invariant_factors.len(),
                found: torsion.len(),
            });
        }
        let torsion = torsion
            .into_iter()
            .zip(&parent.invariant_factors)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        Ok(Self {
            parent,
            free,
            torsion,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(
        parent: &Arc<FgAbelianGroup>,
        free: &[i64],
        torsion: &[i64],
    ) -> Result<Self, AbelianError> {
        Self::new(
            parent.clone(),
            free.iter().copied().map(BigInt::from).collect(),
            torsion.iter().copied().map(BigInt::from).collect(),
        )
    }

    pub fn identity(parent: &Arc<FgAbelianGroup>) -> Self {
        Self {
            parent: parent.clone(),
            free: vec![BigInt::zero(); parent.free_rank],
            torsion: vec![BigInt::zero(); parent.invariant_factors.len()],
        }
    }

    pub fn parent(&self) -> &Arc<FgAbelianGroup> {
        &self.parent
    }

    pub fn free_coords(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    fn check_parent(&self, other: &Self) -> Result<(), AbelianError> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(AbelianError::ParentMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AbelianError> {
        self.check_parent(other)?;
        let free = self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(&self.parent.invariant_factors)
            .map(|((a, b), d)| (a + b).mod_floor(d))
            .collect();
        Ok(Self {
            parent: self.parent.clone(),
            free,
            torsion,
        })
    }

    pub fn negate(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AbelianError> {
        self.add(&other.negate())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let free = self.free.iter().map(|a| a * k).collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&self.parent.invariant_factors)
            .map(|(a, d)| (a * k).mod_floor(d))
            .collect();
        Self {
            parent: self.parent.clone(),
            free,
            torsion,
        }
    }

    /// Order of the element; `None` when it has infinite order.
    pub fn order(&self) -> Option<BigInt> {
        if self.free.iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .zip(&self.parent.invariant_factors)
                .fold(BigInt::one(), |acc, (t, d)| acc.lcm(&(d / t.gcd(d)))),
        )
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "[{} | {}]", join(&self.free), join(&self.torsion))
    }
}

/// Returns some `k` with `k * x == y`, or `None` when `y` is not in the
/// cyclic subgroup generated by `x`.
///
/// When `x` has a nonzero free coordinate, `k` is forced by that coordinate
/// and only the remaining coordinates need checking. For a torsion `x` the
/// multiples `0, x, 2x, ...` are scanned up to the order of `x`.
pub fn cyclic_membership(
    x: &GroupElement,
    y: &GroupElement,
) -> Result<Option<BigInt>, AbelianError> {
    x.check_parent(y)?;
    if let Some(i) = x.free.iter().position(|a| !a.is_zero()) {
        let (k, r) = y.free[i].div_rem(&x.free[i]);
        if !r.is_zero() {
            return Ok(None);
        }
        return Ok((x.scale(&k) == *y).then_some(k));
    }
    if y.free.iter().any(|a| !a.is_zero()) {
        return Ok(None);
    }
    let order = x.order().expect("x is torsion here");
    let mut k = BigInt::zero();
    let mut multiple = GroupElement::identity(&x.parent);
    while k < order {
        if multiple.torsion == y.torsion {
            return Ok(Some(k));
        }
        multiple = multiple.add(x)?;
        k += 1;
    }
    Ok(None)
}
