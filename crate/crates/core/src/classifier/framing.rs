//! Orbits of framings on `W_{g,1}` under the mapping class group.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::tables::{h1_table, table_pi_2n_so_2n, FiniteAbelianDescriptor, Genus, H1Family};
use crate::error::{Error, Result};
use crate::exactlin::{hom_cokernel, AbHom, FinAbGroup, IntMatrix};

/// Groups that occur as stabilisers, at a fixed genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupName {
    Sp(usize),
    SpQ(usize),
    SpA(usize),
    /// `Sp^q` or `Sp^a` according to the Arf invariant of the framing.
    SpQOrA(usize),
    O(usize),
}

impl GroupName {
    pub fn genus(self) -> usize {
        match self {
            GroupName::Sp(g)
            | GroupName::SpQ(g)
            | GroupName::SpA(g)
            | GroupName::SpQOrA(g)
            | GroupName::O(g) => g,
        }
    }

    /// The family whose stable abelianisation receives this group; the two
    /// refinement stabilisers have the same stable limit.
    pub fn stable_family(self) -> H1Family {
        match self {
            GroupName::Sp(_) => H1Family::Sp,
            GroupName::SpQ(_) | GroupName::SpQOrA(_) => H1Family::SpQ,
            GroupName::SpA(_) => H1Family::SpA,
            GroupName::O(_) => H1Family::O,
        }
    }

    fn stable_name(self) -> &'static str {
        match self {
            GroupName::Sp(_) => "Sp_∞(Z)",
            GroupName::SpQ(_) | GroupName::SpQOrA(_) => "Sp^q_∞(Z)",
            GroupName::SpA(_) => "Sp^a_∞(Z)",
            GroupName::O(_) => "O_{∞,∞}(Z)",
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupName::Sp(g) => write!(f, "Sp_{}(Z)", 2 * g),
            GroupName::SpQ(g) => write!(f, "Sp^q_{}(Z)", 2 * g),
            GroupName::SpA(g) => write!(f, "Sp^a_{}(Z)", 2 * g),
            GroupName::SpQOrA(g) => write!(
                f,
                "Sp^q_{0}(Z) or Sp^a_{0}(Z) (Arf invariant 0 or 1)",
                2 * g
            ),
            GroupName::O(g) => write!(f, "O_{{{g},{g}}}(Z)"),
        }
    }
}

/// Stabiliser of a framing relative to the boundary, as a subgroup of the
/// stabiliser relative to a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryStabiliser {
    /// `ker(G → H_1(G_∞))`.
    KernelToStable(GroupName),
    /// The whole rel-point stabiliser.
    Equal(GroupName),
}

impl fmt::Display for BoundaryStabiliser {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundaryStabiliser::KernelToStable(g) => {
                write!(f, "ker({g} → H_1({}))", g.stable_name())
            }
            BoundaryStabiliser::Equal(g) => write!(f, "equal to the rel-point stabiliser {g}"),
        }
    }
}

/// A fact used in a report and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub fact: String,
    pub citation: String,
}

impl Note {
    fn new(fact: impl Into<String>, citation: impl Into<String>) -> Self {
        Self {
            fact: fact.into(),
            citation: citation.into(),
        }
    }
}

/// Orbit counts and stabilisers for framings of `W_{g,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramingReport {
    pub n: u64,
    pub g: usize,
    pub rel_point_orbits: u64,
    pub rel_boundary_orbits: u64,
    pub stabilizer_rel_point: String,
    pub stabilizer_rel_boundary: String,
    /// `None` when the Torelli description does not apply (`n ≤ 2`).
    pub torelli_quotient: Option<String>,
    pub notes: Vec<Note>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelPointClass {
    pub orbits: u64,
    pub stabiliser: GroupName,
    /// Stabiliser in the Torelli group modulo homotopy spheres, for `n ≥ 3`.
    pub torelli_quotient: Option<FinAbGroup>,
}

const KAWAZUMI: &str =
    "Kawazumi, the mapping class group orbits in the framings of compact surfaces, Theorem 3.12";
const FRAMED_SURFACES: &str = "Homology of the moduli spaces and mapping class groups of framed, r-Spin and Pin surfaces, Theorem 2.9";
const KRECK: &str = "Kreck, isotopy classes of diffeomorphisms of (k−1)-connected almost-parallelizable 2k-manifolds";
const LEVINE: &str = "Levine, lectures on groups of homotopy spheres, Theorem 1.4";
const ARF: &str = "Arf, classification of quadratic forms over fields of characteristic 2";

fn unsupported_n1_g1() -> Error {
    Error::Unsupported(format!(
        "n = 1, g = 1 is not covered by this classification; see {KAWAZUMI}"
    ))
}

fn is_hopf(n: u64) -> bool {
    matches!(n, 1 | 3 | 7)
}

/// Orbits and stabiliser of framings relative to a point.
pub fn rel_point_classification(n: u64, g: usize, arf: Option<u8>) -> Result<RelPointClass> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    if g == 0 {
        return Err(Error::Unsupported(
            "relative-to-a-point classification needs g ≥ 1; use the rel-boundary report for the disc".into(),
        ));
    }
    if n == 1 && g == 1 {
        return Err(unsupported_n1_g1());
    }
    if matches!(arf, Some(a) if a > 1) {
        return Err(Error::Input("Arf invariant must be 0 or 1".into()));
    }
    let orbits = if is_hopf(n) { 2 } else { 1 };
    let stabiliser = if is_hopf(n) {
        match arf {
            Some(0) => GroupName::SpQ(g),
            Some(_) => GroupName::SpA(g),
            None => GroupName::SpQOrA(g),
        }
    } else if n % 2 == 1 {
        GroupName::SpQ(g)
    } else {
        GroupName::O(g)
    };
    let torelli_quotient = (n >= 3).then(|| {
        if n % 2 == 1 {
            FinAbGroup::trivial()
        } else {
            FinAbGroup::elementary(2, 2 * g)
        }
    });
    Ok(RelPointClass {
        orbits,
        stabiliser,
        torelli_quotient,
    })
}

/// A subgroup given by an injective homomorphism into the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub ambient: FiniteAbelianDescriptor,
    pub inclusion: AbHom,
}

impl Subgroup {
    pub fn is_whole(&self) -> bool {
        self.inclusion.cokernel().is_trivial()
    }

    /// Number of distinct images of domain elements.
    pub fn order(&self) -> Result<BigInt> {
        let elements = self
            .inclusion
            .domain()
            .elements(1 << 16)
            .ok_or_else(|| Error::Input("subgroup too large to enumerate".into()))?;
        let mut images = elements
            .iter()
            .map(|x| self.inclusion.apply(x))
            .collect::<Result<Vec<_>>>()?;
        images.sort();
        images.dedup();
        Ok(BigInt::from(images.len()))
    }
}

/// Image of the stable abelianisation of the rel-point stabiliser in
/// `π_{2n}(SO(2n))`: everything, except the stable kernel `⟨k1, k2⟩` when
/// `n ≡ 0 mod 4`.
pub fn image_of_h(n: u64) -> Result<Subgroup> {
    let ambient = table_pi_2n_so_2n(n)?;
    let inclusion = if n.is_multiple_of(4) {
        AbHom::new(
            FinAbGroup::elementary(2, 2),
            ambient.group.clone(),
            IntMatrix::from_i64_rows(&[[1, 0, 0], [0, 1, 0]]),
        )?
    } else {
        AbHom::identity(ambient.group.clone())
    };
    Ok(Subgroup { ambient, inclusion })
}

/// Closed-form count of framings relative to the boundary for `g ≥ 1`.
pub fn theorem_a_orbits(n: u64) -> u64 {
    if is_hopf(n) || n.is_multiple_of(4) {
        2
    } else {
        1
    }
}

fn order_u64(g: &FinAbGroup) -> Result<u64> {
    g.order()
        .and_then(|o| o.to_u64())
        .ok_or_else(|| Error::Inconsistency(format!("{g} is not a small finite group")))
}

/// Framings of `W_{g,1}` relative to the boundary, up to homotopy and
/// diffeomorphism, with their stabilisers.
pub fn classify_framings(n: u64, g: usize) -> Result<FramingReport> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let pi = table_pi_2n_so_2n(n)?;
    if g == 0 {
        let count = order_u64(&pi.group)?;
        return Ok(FramingReport {
            n,
            g,
            rel_point_orbits: 1,
            rel_boundary_orbits: count,
            stabilizer_rel_point: "trivial".into(),
            stabilizer_rel_boundary: "trivial".into(),
            torelli_quotient: Some(FinAbGroup::trivial().to_string()),
            notes: vec![
                Note::new(
                    format!("framings of D^{} relative to the boundary form π_{}(SO({})) = {}", 2 * n, 2 * n, 2 * n, pi.group),
                    "smoothing theory; homotopy groups from Kervaire, some nonstable homotopy groups of Lie groups",
                ),
                Note::new(
                    "diffeomorphisms of the disc act trivially on its framings (cited input, not computed)",
                    "a diffeomorphism supported in a disc has null-homotopic derivative relative to the boundary",
                ),
            ],
        });
    }

    let rel = rel_point_classification(n, g, None)?;
    let image = image_of_h(n)?;
    let coker = hom_cokernel(&image.inclusion);
    let coker_order = order_u64(&coker)?;
    let image_order = image.order()?;
    if &image_order * BigInt::from(coker_order) != pi.group.order().unwrap_or_else(BigInt::one) {
        return Err(Error::Inconsistency(format!(
            "|image| · |coker| ≠ |π_{}(SO({}))|",
            2 * n,
            2 * n
        )));
    }
    let assembled = coker_order * rel.orbits;
    let expected = theorem_a_orbits(n);
    if assembled != expected {
        return Err(Error::Inconsistency(format!(
            "assembled count {assembled} differs from the closed form {expected} at n = {n}, g = {g}"
        )));
    }

    let stabiliser_boundary = if matches!(n, 1 | 3) {
        BoundaryStabiliser::Equal(rel.stabiliser)
    } else {
        // h is injective, so its image is a copy of H_1 of the stable group.
        let stable = h1_table(rel.stabiliser.stable_family(), Genus::Stable)?;
        if image.inclusion.domain() != &stable {
            return Err(Error::Inconsistency(format!(
                "image of h is {} but H_1 of the stable group is {stable}",
                image.inclusion.domain()
            )));
        }
        BoundaryStabiliser::KernelToStable(rel.stabiliser)
    };

    let mut notes = Vec::new();
    if n == 1 {
        notes.push(Note::new(
            "surface case: two orbits for g ≥ 2, distinguished by the Arf invariant of the associated spin structure",
            FRAMED_SURFACES,
        ));
    }
    if n >= 3 {
        notes.push(Note::new(
            "mapping class group described by extensions through the Torelli group and homotopy spheres",
            KRECK,
        ));
        notes.push(Note::new(
            "stabilisation Sπ_n(SO(n)) → π_n(SO(2n)) is onto with kernel Z/2 for n even, an isomorphism for odd n ≠ 3, 7, and has cokernel Z/2 for n = 3, 7",
            LEVINE,
        ));
    }
    if is_hopf(n) {
        notes.push(Note::new(
            "rel-point orbits correspond to quadratic refinements up to symplectic equivalence, classified by the Arf invariant",
            ARF,
        ));
    }
    if n.is_multiple_of(4) {
        notes.push(Note::new(
            format!(
                "the image of H_1 of the stable stabiliser in π_{}(SO({})) is the stable kernel ⟨k1, k2⟩, of index 2",
                2 * n,
                2 * n
            ),
            "Abelian quotients of mapping class groups of highly connected manifolds, section 5",
        ));
    }
    if n <= 2 {
        notes.push(Note::new(
            "no Torelli quotient is reported: the extension description requires 2n ≥ 6",
            KRECK,
        ));
    }

    Ok(FramingReport {
        n,
        g,
        rel_point_orbits: rel.orbits,
        rel_boundary_orbits: assembled,
        stabilizer_rel_point: rel.stabiliser.to_string(),
        stabilizer_rel_boundary: stabiliser_boundary.to_string(),
        torelli_quotient: rel.torelli_quotient.map(|q| q.to_string()),
        notes,
    })
}
