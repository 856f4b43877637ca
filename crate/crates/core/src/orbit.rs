//! Orbit decomposition of finite group actions by generator closure, and the
//! transvection action of `Sp_{2g}(F_2)` on quadratic refinements.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{F2Matrix, QuadraticRefinement};

/// Default genus bound for orbit censuses.
pub const DEFAULT_ORBIT_BOUND: usize = 6;

/// A group acting on `{0, …, point_count − 1}` through finitely many generators.
pub trait GroupAction: Sync {
    fn point_count(&self) -> usize;
    fn generator_count(&self) -> usize;
    /// Image of `point` under generator `generator`.
    fn apply(&self, generator: usize, point: usize) -> usize;
}

/// An action given by explicit permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    point_count: usize,
    generators: Vec<Vec<usize>>,
}

impl FiniteAction {
    pub fn new(point_count: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.len() != point_count {
                return Err(Error::Input(format!(
                    "generator {k} has {} images for {point_count} points",
                    g.len()
                )));
            }
            let mut hit = vec![false; point_count];
            for &p in g {
                if p >= point_count || std::mem::replace(&mut hit[p], true) {
                    return Err(Error::Input(format!("generator {k} is not a bijection")));
                }
            }
        }
        Ok(Self {
            point_count,
            generators,
        })
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }
}

impl GroupAction for FiniteAction {
    fn point_count(&self) -> usize {
        self.point_count
    }

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn apply(&self, generator: usize, point: usize) -> usize {
        self.generators[generator][point]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    /// Orbit index of each point; orbits are numbered by increasing representative.
    pub orbit_id: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Least point of each orbit.
    pub representatives: Vec<usize>,
    /// BFS tree: `(predecessor, generator)` for every non-representative point.
    #[serde(skip)]
    parent: Vec<Option<(usize, usize)>>,
}

impl OrbitDecomposition {
    pub fn orbit_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn members(&self, orbit: usize) -> Vec<usize> {
        (0..self.orbit_id.len())
            .filter(|&p| self.orbit_id[p] == orbit)
            .collect()
    }

    /// Generator indices taking the representative of `point`'s orbit to `point`.
    pub fn word_to(&self, point: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut p = point;
        while let Some((prev, gen)) = self.parent[p] {
            word.push(gen);
            p = prev;
        }
        word.reverse();
        word
    }

    /// Orbits as sorted point sets, for order-independent comparison.
    pub fn orbit_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.orbit_count()];
        for (p, &o) in self.orbit_id.iter().enumerate() {
            sets[o].push(p);
        }
        sets
    }
}

/// Replays a generator word from `start`.
pub fn replay<A: GroupAction + ?Sized>(action: &A, start: usize, word: &[usize]) -> usize {
    word.iter().fold(start, |p, &g| action.apply(g, p))
}

/// Breadth-first closure from each unvisited point in increasing order.
pub fn orbits<A: GroupAction + ?Sized>(action: &A) -> OrbitDecomposition {
    orbits_with(action, false)
}

/// As [`orbits`]; with `parallel` set each BFS level is expanded on the rayon
/// pool. Discoveries are merged in frontier order, so the result (including
/// witness words) is identical to the sequential run.
pub fn orbits_with<A: GroupAction + ?Sized>(action: &A, parallel: bool) -> OrbitDecomposition {
    let n = action.point_count();
    let gens = action.generator_count();
    let mut orbit_id = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut sizes = Vec::new();
    let mut representatives = Vec::new();

    for start in 0..n {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        orbit_id[start] = id;
        representatives.push(start);
        let mut size = 1;
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let expand = |&p: &usize| -> Vec<(usize, usize, usize)> {
                (0..gens).map(|g| (action.apply(g, p), p, g)).collect()
            };
            let images: Vec<Vec<(usize, usize, usize)>> = if parallel {
                frontier.par_iter().map(expand).collect()
            } else {
                frontier.iter().map(expand).collect()
            };
            let mut next = Vec::new();
            for (q, p, g) in images.into_iter().flatten() {
                if orbit_id[q] == usize::MAX {
                    orbit_id[q] = id;
                    parent[q] = Some((p, g));
                    next.push(q);
                    size += 1;
                }
            }
            frontier = next;
        }
        sizes.push(size);
    }

    OrbitDecomposition {
        orbit_id,
        sizes,
        representatives,
        parent,
    }
}

/// All transvections `x ↦ x + λ(x, v)·v`, one per nonzero `v ∈ F_2^{2g}`,
/// ordered by the packed value of `v`.
pub fn symplectic_transvections_f2(genus: usize) -> Result<Vec<F2Matrix>> {
    if genus == 0 {
        return Err(Error::Input("transvections need genus at least 1".into()));
    }
    if genus > crate::quad::MAX_GENUS / 2 {
        return Err(Error::GenusBound {
            g: genus,
            bound: crate::quad::MAX_GENUS / 2,
        });
    }
    Ok((1u64..1 << (2 * genus))
        .map(|v| F2Matrix::transvection(genus, v))
        .collect())
}

/// `Sp_{2g}(F_2)` acting on refinements (indexed by their packed bits) from
/// the right through the given matrices.
pub struct RefinementAction {
    genus: usize,
    matrices: Vec<F2Matrix>,
}

impl RefinementAction {
    pub fn new(genus: usize, matrices: Vec<F2Matrix>) -> Result<Self> {
        if genus > crate::quad::MAX_GENUS / 2 {
            return Err(Error::GenusBound {
                g: genus,
                bound: crate::quad::MAX_GENUS / 2,
            });
        }
        if let Some(m) = matrices.iter().find(|m| m.genus() != genus) {
            return Err(Error::Dimension(format!(
                "genus {} matrix in a genus {genus} action",
                m.genus()
            )));
        }
        Ok(Self { genus, matrices })
    }

    pub fn transvections(genus: usize) -> Result<Self> {
        Self::new(genus, symplectic_transvections_f2(genus)?)
    }

    pub fn matrices(&self) -> &[F2Matrix] {
        &self.matrices
    }
}

impl GroupAction for RefinementAction {
    fn point_count(&self) -> usize {
        1 << (2 * self.genus)
    }

    fn generator_count(&self) -> usize {
        self.matrices.len()
    }

    fn apply(&self, generator: usize, point: usize) -> usize {
        let mu = QuadraticRefinement::from_bits(self.genus, point as u64)
            .expect("point index within range");
        mu.act_f2_unchecked(&self.matrices[generator]) as usize
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadOrbitCensus {
    pub genus: usize,
    pub decomposition: OrbitDecomposition,
    pub representatives: Vec<QuadraticRefinement>,
    /// Arf invariant of each orbit, `None` if it is not constant on the orbit.
    pub arf_per_orbit: Vec<Option<u8>>,
}

impl QuadOrbitCensus {
    pub fn orbit_count(&self) -> usize {
        self.decomposition.orbit_count()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.decomposition.sizes
    }
}

pub fn quad_orbit_census(genus: usize, bound: usize) -> Result<QuadOrbitCensus> {
    if genus == 0 {
        return Err(Error::Input("orbit census needs genus at least 1".into()));
    }
    if genus > bound {
        return Err(Error::GenusBound { g: genus, bound });
    }
    let action = RefinementAction::transvections(genus)?;
    let decomposition = orbits_with(&action, true);
    let mut arf_per_orbit: Vec<Option<u8>> = vec![None; decomposition.orbit_count()];
    let mut consistent = vec![true; decomposition.orbit_count()];
    for (p, &o) in decomposition.orbit_id.iter().enumerate() {
        let a = QuadraticRefinement::from_bits(genus, p as u64)?.arf();
        match arf_per_orbit[o] {
            None if consistent[o] => arf_per_orbit[o] = Some(a),
            Some(b) if b != a => {
                arf_per_orbit[o] = None;
                consistent[o] = false;
            }
            _ => {}
        }
    }
    let representatives = decomposition
        .representatives
        .iter()
        .map(|&p| QuadraticRefinement::from_bits(genus, p as u64))
        .collect::<Result<_>>()?;
    Ok(QuadOrbitCensus {
        genus,
        decomposition,
        representatives,
        arf_per_orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{lambda_f2, standard_refinement, Census};

    #[test]
    fn identity_generators_give_singletons() {
        let a = FiniteAction::new(5, vec![(0..5).collect()]).unwrap();
        let d = orbits(&a);
        assert_eq!(d.sizes, vec![1; 5]);
        assert_eq!(d.representatives, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn three_cycle() {
        let a = FiniteAction::new(3, vec![vec![1, 2, 0]]).unwrap();
        let d = orbits(&a);
        assert_eq!(d.sizes, vec![3]);
        for p in 0..3 {
            assert_eq!(replay(&a, 0, &d.word_to(p)), p);
        }
    }

    #[test]
    fn no_generators_and_no_points() {
        let d = orbits(&FiniteAction::new(3, vec![]).unwrap());
        assert_eq!(d.sizes, vec![1, 1, 1]);
        let d = orbits(&FiniteAction::new(0, vec![]).unwrap());
        assert_eq!(d.orbit_count(), 0);
    }

    #[test]
    fn non_bijection_rejected() {
        assert!(FiniteAction::new(3, vec![vec![0, 0, 1]]).is_err());
        assert!(FiniteAction::new(3, vec![vec![0, 1]]).is_err());
        assert!(FiniteAction::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn transvection_list() {
        let ts = symplectic_transvections_f2(1).unwrap();
        assert_eq!(ts.len(), 3);
        for t in symplectic_transvections_f2(2).unwrap() {
            assert!(t.is_symplectic());
            assert_eq!(t.mul(&t), F2Matrix::identity(2));
        }
        assert!(symplectic_transvections_f2(0).is_err());
    }

    #[test]
    fn transvection_formula() {
        let g = 2;
        for v in 1u64..16 {
            let t = F2Matrix::transvection(g, v);
            for x in 0u64..16 {
                let expect = if lambda_f2(x, v) == 1 { x ^ v } else { x };
                assert_eq!(t.apply(x), expect);
            }
        }
    }

    #[test]
    fn genus_one_and_three_censuses() {
        let c = quad_orbit_census(1, DEFAULT_ORBIT_BOUND).unwrap();
        assert_eq!(c.sizes(), &[3, 1]);
        let c = quad_orbit_census(3, DEFAULT_ORBIT_BOUND).unwrap();
        assert_eq!(c.sizes(), &[36, 28]);
        assert_eq!(c.arf_per_orbit, vec![Some(0), Some(1)]);
        assert_eq!(c.representatives[0], standard_refinement(0, 3).unwrap());
        assert_eq!(c.representatives[1], standard_refinement(1, 3).unwrap());
        let (a0, a1) = Census::closed_form(3);
        assert_eq!((c.sizes()[0] as u64, c.sizes()[1] as u64), (a0, a1));
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            quad_orbit_census(7, DEFAULT_ORBIT_BOUND),
            Err(Error::GenusBound { g: 7, bound: 6 })
        ));
        assert!(quad_orbit_census(0, DEFAULT_ORBIT_BOUND).is_err());
    }

    #[test]
    fn witness_words_replay() {
        let action = RefinementAction::transvections(2).unwrap();
        let d = orbits(&action);
        for p in 0..action.point_count() {
            let rep = d.representatives[d.orbit_id[p]];
            assert_eq!(replay(&action, rep, &d.word_to(p)), p);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let action = RefinementAction::transvections(3).unwrap();
        let a = orbits_with(&action, false);
        let b = orbits_with(&action, true);
        assert_eq!(a, b);
        for p in 0..action.point_count() {
            assert_eq!(a.word_to(p), b.word_to(p));
        }
    }

    #[test]
    fn generator_order_does_not_matter() {
        let mut ts = symplectic_transvections_f2(2).unwrap();
        let a = orbits(&RefinementAction::new(2, ts.clone()).unwrap());
        ts.reverse();
        ts.rotate_left(5);
        let b = orbits(&RefinementAction::new(2, ts).unwrap());
        assert_eq!(a.orbit_sets(), b.orbit_sets());
    }
}
