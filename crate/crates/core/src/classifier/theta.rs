//! Orbits of tangential structures with `n`-connected homotopy quotient.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::framing::{image_of_h, GroupName, Note};
use super::tables::table_pi_2n_so_2n;
use crate::error::{Error, Result};
use crate::exactlin::json::{matrix_to_rows, rows_to_matrix, GroupDoc, JsonInt, JsonRows};
use crate::exactlin::{AbHom, FinAbGroup, IntMatrix};

/// For `n = 3, 7`: whether `Sπ_n(SO(n)) → π_n(Θ⁺)` fails to be onto (A) or
/// is onto (B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaCase {
    A,
    B,
}

impl fmt::Display for ThetaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaCase::A => "A",
            ThetaCase::B => "B",
        })
    }
}

/// The data of a tangential structure that the orbit count depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaInput {
    pub n: u64,
    pub g: usize,
    pub case: Option<ThetaCase>,
    pub pi_2n_theta: FinAbGroup,
    /// From `π_{2n}(SO(2n))` (in its tabulated basis) to `pi_2n_theta`.
    pub map: AbHom,
}

impl ThetaInput {
    pub fn new(
        n: u64,
        g: usize,
        case: Option<ThetaCase>,
        pi_2n_theta: FinAbGroup,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(
                "tangential structures are classified for n ≥ 2 only".into(),
            ));
        }
        if g == 0 {
            return Err(Error::Input("g must be at least 1".into()));
        }
        match (matches!(n, 3 | 7), case) {
            (true, None) => {
                return Err(Error::Input(format!("n = {n} needs a case flag (A or B)")))
            }
            (false, Some(_)) => {
                return Err(Error::Input(format!(
                    "a case flag only applies to n = 3, 7, not n = {n}"
                )))
            }
            _ => {}
        }
        let domain = table_pi_2n_so_2n(n)?.group;
        let map = AbHom::new(domain, pi_2n_theta.clone(), matrix)?;
        Ok(Self {
            n,
            g,
            case,
            pi_2n_theta,
            map,
        })
    }
}

/// Stable framings: `Θ⁺ ≃ SO`, so `π_{2n}(Θ⁺)` is `Z/2` when `n ≡ 0 mod 4`
/// (hit by `s`, with `k1, k2 ↦ 0`) and `0` otherwise.
pub fn stable_framing_preset(n: u64, g: usize) -> Result<ThetaInput> {
    let case = matches!(n, 3 | 7).then_some(ThetaCase::A);
    let domain = table_pi_2n_so_2n(n.max(1))?.group;
    let (target, matrix) = if n.is_multiple_of(4) {
        (
            FinAbGroup::cyclic(2),
            IntMatrix::from_i64_rows(&[[0], [0], [1]]),
        )
    } else {
        let t = FinAbGroup::trivial();
        (t, IntMatrix::zeros(domain.generator_count(), 0))
    };
    ThetaInput::new(n, g, case, target, matrix)
}

/// Framings themselves: `Θ⁺ ≃ GL^+_{2n}(R)` with the identity map.
pub fn tautological_input(n: u64, g: usize) -> Result<ThetaInput> {
    let case = matches!(n, 3 | 7).then_some(ThetaCase::A);
    let group = table_pi_2n_so_2n(n.max(1))?.group;
    let k = group.generator_count();
    ThetaInput::new(n, g, case, group, IntMatrix::identity(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub n: u64,
    pub g: usize,
    pub case: Option<ThetaCase>,
    /// Cokernel of `H_1(G_∞) → π_{2n}(SO(2n)) → π_{2n}(Θ⁺)`.
    pub c_pi_2n_theta: String,
    /// The orbit set as an abelian group.
    pub orbit_set: String,
    /// `None` when the orbit set is infinite.
    pub orbit_count: Option<JsonInt>,
    pub stabilizer_rel_point: String,
    pub notes: Vec<Note>,
}

impl ThetaReport {
    pub fn orbit_count_u64(&self) -> Option<u64> {
        use num_traits::ToPrimitive;
        self.orbit_count.as_ref().and_then(|c| c.0.to_u64())
    }
}

pub fn classify_theta(input: &ThetaInput) -> Result<ThetaReport> {
    let n = input.n;
    let image = image_of_h(n)?;
    let composite = input.map.after(&image.inclusion)?;
    let c_pi = composite.cokernel();
    let (orbit_set, which) = match input.case {
        None => (c_pi.clone(), "(i) the cokernel Cπ_{2n}(Θ⁺)"),
        Some(ThetaCase::A) => (
            c_pi.direct_sum(&FinAbGroup::cyclic(2)),
            "(ii) Cπ_{2n}(Θ⁺) × Z/2, the factor Z/2 recording the Arf invariant",
        ),
        Some(ThetaCase::B) => (
            input.pi_2n_theta.clone(),
            "(iii) all of π_{2n}(Θ⁺), since H_1(Sp_∞(Z)) = 0",
        ),
    };
    let stabiliser = match input.case {
        Some(ThetaCase::A) => GroupName::SpQOrA(input.g),
        Some(ThetaCase::B) => GroupName::Sp(input.g),
        None if n % 2 == 1 => GroupName::SpQ(input.g),
        None => GroupName::O(input.g),
    };
    Ok(ThetaReport {
        n,
        g: input.g,
        case: input.case,
        c_pi_2n_theta: c_pi.to_string(),
        orbit_set: orbit_set.to_string(),
        orbit_count: orbit_set.order().map(JsonInt),
        stabilizer_rel_point: stabiliser.to_string(),
        notes: vec![Note {
            fact: format!("orbit set is case {which}"),
            citation: "orbit-stabiliser sequence for θ-structures relative to the boundary".into(),
        }],
    })
}

/// JSON form of [`ThetaInput`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaInputDoc {
    pub n: u64,
    pub g: usize,
    #[serde(default)]
    pub case_flag: Option<ThetaCase>,
    pub pi_2n_theta: GroupDoc,
    /// Row `j` is the image of the `j`-th generator of `π_{2n}(SO(2n))`.
    pub map_from_pi2nso2n: JsonRows,
}

impl ThetaInputDoc {
    pub fn to_input(&self) -> Result<ThetaInput> {
        let target = self.pi_2n_theta.to_group()?;
        let domain = table_pi_2n_so_2n(self.n.max(1))?.group;
        let m = rows_to_matrix(&self.map_from_pi2nso2n, Some(target.generator_count()))?;
        if m.rows() != domain.generator_count() {
            return Err(Error::Input(format!(
                "map has {} rows but π_{}(SO({})) = {domain} has {} generators",
                m.rows(),
                2 * self.n,
                2 * self.n,
                domain.generator_count()
            )));
        }
        ThetaInput::new(self.n, self.g, self.case_flag, target, m)
    }

    pub fn from_input(input: &ThetaInput) -> Self {
        Self {
            n: input.n,
            g: input.g,
            case_flag: input.case,
            pi_2n_theta: GroupDoc::from_group(&input.pi_2n_theta),
            map_from_pi2nso2n: matrix_to_rows(input.map.matrix()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify_framings;

    #[test]
    fn stable_presets() {
        let r = classify_theta(&stable_framing_preset(8, 1).unwrap()).unwrap();
        assert_eq!(r.c_pi_2n_theta, "Z/2");
        assert_eq!(r.orbit_count_u64(), Some(2));
        let r = classify_theta(&stable_framing_preset(3, 1).unwrap()).unwrap();
        assert_eq!(r.c_pi_2n_theta, "0");
        assert_eq!(r.orbit_count_u64(), Some(2));
        assert_eq!(
            stable_framing_preset(4, 1).unwrap().pi_2n_theta,
            FinAbGroup::cyclic(2)
        );
        assert!(stable_framing_preset(5, 1)
            .unwrap()
            .pi_2n_theta
            .is_trivial());
        let r = classify_theta(&stable_framing_preset(5, 1).unwrap()).unwrap();
        assert_eq!(r.orbit_count_u64(), Some(1));
    }

    #[test]
    fn case_b() {
        let input = ThetaInput::new(
            3,
            2,
            Some(ThetaCase::B),
            FinAbGroup::cyclic(4),
            IntMatrix::zeros(0, 1),
        )
        .unwrap();
        let r = classify_theta(&input).unwrap();
        assert_eq!(r.orbit_count_u64(), Some(4));
        assert_eq!(r.stabilizer_rel_point, "Sp_4(Z)");
    }

    #[test]
    fn flag_rules() {
        let z = FinAbGroup::trivial();
        assert!(ThetaInput::new(3, 1, None, z.clone(), IntMatrix::zeros(0, 0)).is_err());
        assert!(
            ThetaInput::new(5, 1, Some(ThetaCase::A), z.clone(), IntMatrix::zeros(1, 0)).is_err()
        );
        assert!(ThetaInput::new(1, 2, None, z, IntMatrix::zeros(0, 0)).is_err());
    }

    #[test]
    fn ill_defined_map_rejected() {
        // Z/4 → Z/3 sending the generator to 1 is not a homomorphism.
        let r = ThetaInput::new(
            5,
            1,
            None,
            FinAbGroup::cyclic(3),
            IntMatrix::from_i64_rows(&[[1]]),
        );
        assert!(matches!(r, Err(Error::IllDefinedHom(_))));
    }

    #[test]
    fn tautological_matches_framings() {
        for n in 2..=12 {
            for g in 1..=4 {
                let t = classify_theta(&tautological_input(n, g).unwrap()).unwrap();
                let f = classify_framings(n, g).unwrap();
                assert_eq!(
                    t.orbit_count_u64(),
                    Some(f.rel_boundary_orbits),
                    "n={n} g={g}"
                );
            }
        }
    }

    #[test]
    fn doc_round_trip() {
        let doc: ThetaInputDoc = serde_json::from_str(
            r#"{"n": 8, "g": 2, "pi_2n_theta": {"invariant_factors": [2]},
                "map_from_pi2nso2n": [[0], [0], [1]]}"#,
        )
        .unwrap();
        let input = doc.to_input().unwrap();
        assert_eq!(input, stable_framing_preset(8, 2).unwrap());
        let back = ThetaInputDoc::from_input(&input).to_input().unwrap();
        assert_eq!(back, input);
    }
}
