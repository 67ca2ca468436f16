//! Connected-sum factors of simply connected circle-action manifolds with
//! quotient `S^3`: copies of `S^4`, `CP^2`, `-CP^2` and `S^2 x S^2`.

use std::fmt;

use super::ReduceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FintushelSummand {
    Cp2,
    Cp2Bar,
    S2xS2,
}

impl FintushelSummand {
    pub fn b2(self) -> i64 {
        match self {
            FintushelSummand::Cp2 | FintushelSummand::Cp2Bar => 1,
            FintushelSummand::S2xS2 => 2,
        }
    }

    pub fn signature(self) -> i64 {
        match self {
            FintushelSummand::Cp2 => 1,
            FintushelSummand::Cp2Bar => -1,
            FintushelSummand::S2xS2 => 0,
        }
    }

    /// Largest square of an essential embedded sphere in the factor, if it
    /// carries one of nonnegative square.
    pub fn nonnegative_sphere_square(self) -> Option<i64> {
        match self {
            FintushelSummand::Cp2 => Some(1),
            FintushelSummand::S2xS2 => Some(0),
            FintushelSummand::Cp2Bar => None,
        }
    }
}

impl fmt::Display for FintushelSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FintushelSummand::Cp2 => "CP²",
            FintushelSummand::Cp2Bar => "ĈP²",
            FintushelSummand::S2xS2 => "S²×S²",
        })
    }
}

/// Multiset of factors; `S^4` factors are dropped, so the empty multiset is
/// `S^4` itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SummandMultiset {
    pub cp2: u32,
    pub cp2_bar: u32,
    pub s2xs2: u32,
}

impl SummandMultiset {
    pub fn is_s4(&self) -> bool {
        *self == Self::default()
    }

    pub fn b2(&self) -> i64 {
        self.iter().map(FintushelSummand::b2).sum()
    }

    pub fn signature(&self) -> i64 {
        self.iter().map(FintushelSummand::signature).sum()
    }

    /// The factor with the largest nonnegative sphere square, if any.
    pub fn positive_factor(&self) -> Option<FintushelSummand> {
        if self.cp2 > 0 {
            Some(FintushelSummand::Cp2)
        } else if self.s2xs2 > 0 {
            Some(FintushelSummand::S2xS2)
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = FintushelSummand> {
        std::iter::repeat_n(FintushelSummand::Cp2, self.cp2 as usize)
            .chain(std::iter::repeat_n(FintushelSummand::Cp2Bar, self.cp2_bar as usize))
            .chain(std::iter::repeat_n(FintushelSummand::S2xS2, self.s2xs2 as usize))
    }
}

impl fmt::Display for SummandMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_s4() {
            return f.write_str("S⁴");
        }
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" # "))
    }
}

/// Decomposes a simply connected manifold of the given `b2`, signature and
/// type into connected-sum factors.
pub fn fintushel_summands(b2: u32, sigma: i64, spin: bool) -> Result<SummandMultiset, ReduceError> {
    let b2 = i64::from(b2);
    if sigma.abs() > b2 {
        return Err(ReduceError::SignatureOutOfRange { b2, sigma });
    }
    if spin {
        if sigma != 0 || b2 % 2 != 0 {
            return Err(ReduceError::SpinParityViolation { b2, sigma });
        }
        return Ok(SummandMultiset {
            s2xs2: (b2 / 2) as u32,
            ..Default::default()
        });
    }
    if (b2 + sigma) % 2 != 0 {
        return Err(ReduceError::SignatureParity { b2, sigma });
    }
    Ok(SummandMultiset {
        cp2: ((b2 + sigma) / 2) as u32,
        cp2_bar: ((b2 - sigma) / 2) as u32,
        s2xs2: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_is_empty() {
        assert!(fintushel_summands(0, 0, true).unwrap().is_s4());
        assert!(fintushel_summands(0, 0, false).unwrap().is_s4());
    }

    #[test]
    fn rank_two() {
        let spin = fintushel_summands(2, 0, true).unwrap();
        assert_eq!(spin, SummandMultiset { s2xs2: 1, ..Default::default() });
        let odd = fintushel_summands(2, 0, false).unwrap();
        assert_eq!(odd, SummandMultiset { cp2: 1, cp2_bar: 1, s2xs2: 0 });
        assert_eq!(odd.to_string(), "CP² # ĈP²");
        assert_eq!(spin.to_string(), "S²×S²");
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            fintushel_summands(2, 3, false),
            Err(ReduceError::SignatureOutOfRange { .. })
        ));
        assert!(matches!(
            fintushel_summands(2, 2, true),
            Err(ReduceError::SpinParityViolation { .. })
        ));
        assert!(matches!(
            fintushel_summands(3, 0, true),
            Err(ReduceError::SpinParityViolation { .. })
        ));
        assert!(matches!(
            fintushel_summands(3, 0, false),
            Err(ReduceError::SignatureParity { .. })
        ));
    }

    #[test]
    fn positive_factor_preference() {
        let m = SummandMultiset { cp2: 1, cp2_bar: 2, s2xs2: 1 };
        assert_eq!(m.positive_factor(), Some(FintushelSummand::Cp2));
        let m = SummandMultiset { cp2: 0, cp2_bar: 3, s2xs2: 0 };
        assert_eq!(m.positive_factor(), None);
        assert_eq!((m.b2(), m.signature()), (3, -3));
    }
}
