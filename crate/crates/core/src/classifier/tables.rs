//! Homotopy groups of rotation groups and first homology of arithmetic groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::FinAbGroup;

/// A finite abelian group with optional names for its canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianDescriptor {
    pub group: FinAbGroup,
    pub basis: Option<Vec<String>>,
}

impl FiniteAbelianDescriptor {
    pub fn plain(group: FinAbGroup) -> Self {
        Self { group, basis: None }
    }

    pub fn with_basis(group: FinAbGroup, basis: &[&str]) -> Result<Self> {
        if basis.len() != group.generator_count() {
            return Err(Error::Dimension(format!(
                "{} basis names for {} generators",
                basis.len(),
                group.generator_count()
            )));
        }
        Ok(Self {
            group,
            basis: Some(basis.iter().map(|s| s.to_string()).collect()),
        })
    }
}

impl fmt::Display for FiniteAbelianDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.basis {
            Some(b) => write!(f, "{} with basis ({})", self.group, b.join(", ")),
            None => write!(f, "{}", self.group),
        }
    }
}

fn require_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    Ok(())
}

/// `Sπ_n(SO(n))`, the image of `π_n(SO(n)) → π_n(SO(n+1))`.
pub fn table_s_pi_n_so_n(n: u64) -> Result<FinAbGroup> {
    require_n(n)?;
    if matches!(n, 1 | 2 | 6) {
        return Ok(FinAbGroup::trivial());
    }
    Ok(match n % 8 {
        0 => FinAbGroup::elementary(2, 2),
        1 | 2 | 4 | 6 => FinAbGroup::cyclic(2),
        3 | 7 => FinAbGroup::free(1),
        _ => FinAbGroup::trivial(),
    })
}

/// `π_{2n}(SO(2n))`; for `n ≡ 0 mod 4` the generators are named `k1, k2, s`
/// with `k1, k2` spanning the kernel of stabilisation to `π_{2n}(SO)`.
pub fn table_pi_2n_so_2n(n: u64) -> Result<FiniteAbelianDescriptor> {
    require_n(n)?;
    if matches!(n, 1 | 3) {
        return Ok(FiniteAbelianDescriptor::plain(FinAbGroup::trivial()));
    }
    match n % 4 {
        0 => FiniteAbelianDescriptor::with_basis(FinAbGroup::elementary(2, 3), &["k1", "k2", "s"]),
        2 => Ok(FiniteAbelianDescriptor::plain(FinAbGroup::elementary(2, 2))),
        _ => Ok(FiniteAbelianDescriptor::plain(FinAbGroup::cyclic(4))),
    }
}

/// Families of arithmetic groups with tabulated abelianisations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum H1Family {
    /// `Sp_{2g}(Z)`.
    Sp,
    /// Stabiliser of the standard Arf invariant 0 refinement.
    SpQ,
    /// Stabiliser of the standard Arf invariant 1 refinement.
    SpA,
    /// `O_{g,g}(Z)`.
    O,
}

impl H1Family {
    pub const ALL: [H1Family; 4] = [H1Family::Sp, H1Family::SpQ, H1Family::SpA, H1Family::O];
}

impl fmt::Display for H1Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            H1Family::Sp => "Sp",
            H1Family::SpQ => "Sp^q",
            H1Family::SpA => "Sp^a",
            H1Family::O => "O",
        })
    }
}

impl FromStr for H1Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sp" => Ok(H1Family::Sp),
            "sp^q" | "spq" => Ok(H1Family::SpQ),
            "sp^a" | "spa" => Ok(H1Family::SpA),
            "o" => Ok(H1Family::O),
            _ => Err(Error::Input(format!("unknown group family {s:?}"))),
        }
    }
}

/// A genus, possibly the stable limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Genus {
    Finite(usize),
    Stable,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Finite(g) => write!(f, "{g}"),
            Genus::Stable => f.write_str("∞"),
        }
    }
}

impl FromStr for Genus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Genus::Stable),
            t => t
                .parse()
                .map(Genus::Finite)
                .map_err(|_| Error::Input(format!("invalid genus {s:?}"))),
        }
    }
}

/// `H_1` of the family at genus `g ≥ 1` or in the stable range.
pub fn h1_table(family: H1Family, g: Genus) -> Result<FinAbGroup> {
    let g = match g {
        Genus::Finite(0) => return Err(Error::Input("genus must be at least 1".into())),
        Genus::Finite(g) if g >= 3 => 3,
        Genus::Finite(g) => g,
        Genus::Stable => 3,
    };
    Ok(match (family, g) {
        (H1Family::Sp, 1) => FinAbGroup::cyclic(12),
        (H1Family::Sp, 2) => FinAbGroup::cyclic(2),
        (H1Family::Sp, _) => FinAbGroup::trivial(),
        (H1Family::SpQ, 1) => FinAbGroup::from_orders(&[4], 1),
        (H1Family::SpQ, 2) => FinAbGroup::from_orders(&[2, 4], 0),
        (H1Family::SpQ, _) => FinAbGroup::cyclic(4),
        (H1Family::SpA, 1) => FinAbGroup::cyclic(12),
        (H1Family::SpA, _) => FinAbGroup::cyclic(4),
        (H1Family::O, 2) => FinAbGroup::elementary(2, 3),
        (H1Family::O, _) => FinAbGroup::elementary(2, 2),
    })
}

/// Source for a tabulated value.
pub fn h1_table_citation(family: H1Family, g: Genus) -> &'static str {
    match (family, g) {
        (H1Family::SpA, Genus::Finite(2)) => {
            "Sierra, thesis in preparation (golden data, not independently recomputed)"
        }
        (H1Family::SpQ, Genus::Finite(1 | 2)) => "Mapping class groups of highly connected (4k+2)-manifolds, appendix A",
        (H1Family::O, Genus::Finite(2)) => "computed from O'_{2,2}(Z) ≅ SL_2(Z) × SL_2(Z) / ±1 and split by O_{1,1}(Z)",
        (_, Genus::Stable) => "Abelian quotients of mapping class groups of highly connected manifolds, Proposition 2.2",
        _ => "classical; collected in Abelian quotients of mapping class groups of highly connected manifolds",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one() {
        assert_eq!(table_s_pi_n_so_n(3).unwrap(), FinAbGroup::free(1));
        assert_eq!(table_s_pi_n_so_n(6).unwrap(), FinAbGroup::trivial());
        assert_eq!(table_s_pi_n_so_n(8).unwrap(), FinAbGroup::elementary(2, 2));
        assert_eq!(table_s_pi_n_so_n(13).unwrap(), FinAbGroup::trivial());
        assert_eq!(table_s_pi_n_so_n(9).unwrap(), FinAbGroup::cyclic(2));
        assert!(table_s_pi_n_so_n(0).is_err());
    }

    #[test]
    fn table_two() {
        let d = table_pi_2n_so_2n(4).unwrap();
        assert_eq!(d.group, FinAbGroup::elementary(2, 3));
        assert_eq!(d.basis.unwrap(), vec!["k1", "k2", "s"]);
        assert!(table_pi_2n_so_2n(3).unwrap().group.is_trivial());
        assert_eq!(table_pi_2n_so_2n(5).unwrap().group, FinAbGroup::cyclic(4));
        assert_eq!(table_pi_2n_so_2n(7).unwrap().group, FinAbGroup::cyclic(4));
        assert_eq!(
            table_pi_2n_so_2n(2).unwrap().group,
            FinAbGroup::elementary(2, 2)
        );
    }

    #[test]
    fn table_three() {
        use H1Family::*;
        assert_eq!(
            h1_table(Sp, Genus::Finite(2)).unwrap(),
            FinAbGroup::cyclic(2)
        );
        assert_eq!(
            h1_table(O, Genus::Finite(2)).unwrap(),
            FinAbGroup::elementary(2, 3)
        );
        assert_eq!(h1_table(SpQ, Genus::Stable).unwrap(), FinAbGroup::cyclic(4));
        assert_eq!(
            h1_table(SpQ, Genus::Finite(1)).unwrap(),
            FinAbGroup::from_orders(&[4], 1)
        );
        assert_eq!(h1_table(Sp, Genus::Stable).unwrap(), FinAbGroup::trivial());
        assert_eq!(
            h1_table(SpA, Genus::Finite(7)).unwrap(),
            FinAbGroup::cyclic(4)
        );
        assert!(h1_table(O, Genus::Finite(0)).is_err());
    }

    #[test]
    fn parse_genus_and_family() {
        assert_eq!("inf".parse::<Genus>().unwrap(), Genus::Stable);
        assert_eq!("4".parse::<Genus>().unwrap(), Genus::Finite(4));
        assert_eq!("Sp^q".parse::<H1Family>().unwrap(), H1Family::SpQ);
        assert!("x".parse::<H1Family>().is_err());
    }
}
