//! Finitely generated abelian groups.
//!
//! Conventions: vectors are rows. A relation is a row of coefficients in the
//! generators, a homomorphism matrix has one row per domain generator holding
//! its image in codomain coordinates, and an action matrix has one row per
//! generator holding that generator's image.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r` with `d_i ≥ 2` and `d_i | d_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(&[order], 0)
    }

    /// `(Z/p)^k`.
    pub fn elementary(p: u64, k: usize) -> Self {
        Self::from_orders(&vec![p; k], 0)
    }

    /// Direct sum of cyclic groups of the given orders (0 means `Z`) plus
    /// `free_rank` copies of `Z`, brought into canonical form.
    pub fn from_orders(orders: &[u64], free_rank: usize) -> Self {
        let d: Vec<BigInt> = orders.iter().map(|&x| BigInt::from(x)).collect();
        let k = d.len();
        let rel = IntMatrix::diagonal(k, k, &d);
        let mut g = AbGroupPresentation::new(k, rel)
            .expect("square diagonal presentation")
            .abelianization();
        g.free_rank += free_rank;
        g
    }

    /// Canonical group from a Smith diagonal of a relation matrix on
    /// `generators` generators.
    pub(crate) fn from_smith_diagonal(diag: &[BigInt], generators: usize) -> Self {
        let mut factors = Vec::new();
        let mut free = generators - diag.len();
        for d in diag {
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                factors.push(d.clone());
            }
        }
        Self {
            invariant_factors: factors,
            free_rank: free,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn generator_count(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Order of generator `i` (`None` for free generators).
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.invariant_factors.get(i)
    }

    /// Relation matrix `diag(d_1, …, d_k)` padded with zero columns for the free part.
    pub fn relation_matrix(&self) -> IntMatrix {
        let k = self.invariant_factors.len();
        IntMatrix::diagonal(k, self.generator_count(), &self.invariant_factors)
    }

    pub fn presentation(&self) -> AbGroupPresentation {
        AbGroupPresentation {
            generator_count: self.generator_count(),
            relations: self.relation_matrix(),
        }
    }

    /// Reduces a coordinate vector to its canonical representative
    /// (torsion coordinates in `[0, d_i)`).
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.generator_count() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group has {} generators",
                v.len(),
                self.generator_count()
            )));
        }
        Ok(v.iter()
            .enumerate()
            .map(|(i, x)| match self.invariant_factors.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect())
    }

    /// All elements of a finite group as canonical coordinate vectors, or
    /// `None` for infinite groups or groups with more than `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_usize()?;
        if order > limit {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let d = d.to_u64()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        let k = orders.len();
        let mut g = AbGroupPresentation::new(k, IntMatrix::diagonal(k, k, &orders))
            .expect("diagonal presentation")
            .abelianization();
        g.free_rank = self.free_rank + other.free_rank;
        g
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let mut j = i;
            while j < self.invariant_factors.len() && &self.invariant_factors[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// `⟨x_1, …, x_k | rows of relations⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroupPresentation {
    generator_count: usize,
    relations: IntMatrix,
}

impl AbGroupPresentation {
    pub fn new(generator_count: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generator_count {
            return Err(Error::Dimension(format!(
                "relation rows have width {}, expected {generator_count}",
                relations.cols()
            )));
        }
        Ok(Self {
            generator_count,
            relations,
        })
    }

    pub fn from_i64(generator_count: usize, relations: &[Vec<i64>]) -> Result<Self> {
        if let Some(r) = relations.iter().find(|r| r.len() != generator_count) {
            return Err(Error::Dimension(format!(
                "relation {r:?} has width {}, expected {generator_count}",
                r.len()
            )));
        }
        Self::new(
            generator_count,
            IntMatrix::from_i64_rows_with_cols(relations, generator_count),
        )
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn with_relations(&self, extra: &IntMatrix) -> Result<Self> {
        Self::new(self.generator_count, self.relations.vstack(extra)?)
    }

    /// `Z^k / rowspan(relations)` in canonical form.
    pub fn abelianization(&self) -> FinAbGroup {
        let d = smith_normal_form(&self.relations);
        FinAbGroup::from_smith_diagonal(&d.diagonal(), self.generator_count)
    }

    /// Whether `v` lies in the row lattice of the relations.
    pub fn is_relation(&self, v: &[BigInt]) -> Result<bool> {
        in_row_lattice(&self.relations, v)
    }
}

/// Membership of `v` in the Z-span of the rows of `lattice`, decided with
/// the Smith form: `x·R = v` is solvable iff `(v·V)_i` is divisible by `S_ii`
/// (and vanishes past the rank).
pub fn in_row_lattice(lattice: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    if v.len() != lattice.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against lattice in Z^{}",
            v.len(),
            lattice.cols()
        )));
    }
    let d = smith_normal_form(lattice);
    let w = d.v.left_apply(v)?;
    let diag = d.diagonal();
    Ok(w.iter().enumerate().all(|(i, x)| match diag.get(i) {
        Some(s) if !s.is_zero() => x.is_multiple_of(s),
        _ => x.is_zero(),
    }))
}

/// Coinvariants of the presented group under the given action matrices.
pub fn coinvariants(p: &AbGroupPresentation, action: &[IntMatrix]) -> Result<FinAbGroup> {
    let k = p.generator_count();
    let mut extra: Vec<Vec<BigInt>> = Vec::new();
    for (index, a) in action.iter().enumerate() {
        if a.rows() != k || a.cols() != k {
            return Err(Error::Dimension(format!(
                "action matrix {index} is {}x{}, expected {k}x{k}",
                a.rows(),
                a.cols()
            )));
        }
        for r in 0..p.relations().rows() {
            let image = a.left_apply(p.relations().row(r))?;
            if !p.is_relation(&image)? {
                return Err(Error::ActionNotPreserving { index });
            }
        }
        for x in 0..k {
            let mut row = a.row(x).to_vec();
            row[x] -= BigInt::one();
            extra.push(row);
        }
    }
    let extra = IntMatrix::from_rows(extra, k)?;
    Ok(p.with_relations(&extra)?.abelianization())
}

/// A homomorphism between canonical groups; row `j` of `matrix` is the image
/// of domain generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != domain.generator_count() || matrix.cols() != codomain.generator_count()
        {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                domain.generator_count(),
                codomain.generator_count()
            )));
        }
        let target = codomain.relation_matrix();
        for j in 0..domain.generator_count() {
            if let Some(d) = domain.generator_order(j) {
                let image: Vec<BigInt> = matrix.row(j).iter().map(|x| x * d).collect();
                if !in_row_lattice(&target, &image)? {
                    return Err(Error::IllDefinedHom(format!(
                        "generator {j} has order {d} but {d} times its image is nonzero in {codomain}"
                    )));
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FinAbGroup, codomain: FinAbGroup) -> Self {
        let m = IntMatrix::zeros(domain.generator_count(), codomain.generator_count());
        Self {
            domain,
            codomain,
            matrix: m,
        }
    }

    pub fn identity(group: FinAbGroup) -> Self {
        let m = IntMatrix::identity(group.generator_count());
        Self {
            domain: group.clone(),
            codomain: group,
            matrix: m,
        }
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AbHom) -> Result<AbHom> {
        if first.codomain != self.domain {
            return Err(Error::Dimension(format!(
                "cannot compose: {} is not {}",
                first.codomain, self.domain
            )));
        }
        AbHom::new(
            first.domain.clone(),
            self.codomain.clone(),
            first.matrix.try_mul(&self.matrix)?,
        )
    }

    /// Image of an element given in domain coordinates, reduced in the codomain.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.matrix.left_apply(x)?;
        self.codomain.reduce(&y)
    }

    /// Codomain modulo the image: codomain relations plus image rows.
    pub fn cokernel(&self) -> FinAbGroup {
        self.codomain
            .presentation()
            .with_relations(&self.matrix)
            .expect("matrix width equals codomain generator count")
            .abelianization()
    }
}

pub fn hom_cokernel(f: &AbHom) -> FinAbGroup {
    f.cokernel()
}

pub fn presentation_abelianization(p: &AbGroupPresentation) -> FinAbGroup {
    p.abelianization()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            FinAbGroup::from_orders(&[4, 2], 0),
            FinAbGroup::from_orders(&[2, 4], 0)
        );
        assert_eq!(FinAbGroup::from_orders(&[2, 3], 0), z(6));
        assert_eq!(FinAbGroup::from_orders(&[1, 1], 0), FinAbGroup::trivial());
        assert_eq!(FinAbGroup::from_orders(&[0], 0), FinAbGroup::free(1));
        assert_eq!(FinAbGroup::from_orders(&[4], 1).to_string(), "Z/4 + Z");
        assert_eq!(FinAbGroup::elementary(2, 3).to_string(), "(Z/2)^3");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn orders() {
        assert_eq!(FinAbGroup::elementary(2, 3).order(), Some(BigInt::from(8)));
        assert_eq!(FinAbGroup::trivial().order(), Some(BigInt::from(1)));
        assert_eq!(FinAbGroup::free(2).order(), None);
    }

    #[test]
    fn two_twelves_presentation() {
        let p = AbGroupPresentation::from_i64(2, &[vec![12, 0], vec![0, 12], vec![6, 6]]).unwrap();
        assert_eq!(p.abelianization(), FinAbGroup::from_orders(&[6, 12], 0));
        let q = AbGroupPresentation::from_i64(
            2,
            &[
                vec![12, 0],
                vec![0, 12],
                vec![6, 6],
                vec![2, 0],
                vec![0, 2],
                vec![1, 1],
            ],
        )
        .unwrap();
        assert_eq!(q.abelianization(), z(2));
    }

    #[test]
    fn sl2_abelianization() {
        // s = image of S, t = image of T; S^4 = 1 and (ST)^3 = S^2 give 4s and s + 3t.
        let p = AbGroupPresentation::from_i64(2, &[vec![4, 0], vec![1, 3]]).unwrap();
        assert_eq!(p.abelianization(), z(12));
    }

    #[test]
    fn no_relations_is_free() {
        let p = AbGroupPresentation::new(3, IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(p.abelianization(), FinAbGroup::free(3));
    }

    #[test]
    fn bad_relation_width() {
        assert!(AbGroupPresentation::from_i64(2, &[vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn lattice_membership() {
        let r = IntMatrix::from_i64_rows(&[[12, 0], [0, 12], [6, 6]]);
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(in_row_lattice(&r, &b(&[18, 6])).unwrap());
        assert!(!in_row_lattice(&r, &b(&[6, 0])).unwrap());
        assert!(in_row_lattice(&IntMatrix::zeros(0, 2), &b(&[0, 0])).unwrap());
        assert!(!in_row_lattice(&IntMatrix::zeros(0, 2), &b(&[0, 1])).unwrap());
    }

    #[test]
    fn cokernels() {
        let v = FinAbGroup::elementary(2, 2);
        let w = FinAbGroup::elementary(2, 3);
        let f = AbHom::new(v, w, IntMatrix::from_i64_rows(&[[1, 0, 0], [0, 1, 0]])).unwrap();
        assert_eq!(hom_cokernel(&f), z(2));

        let f = AbHom::zero(FinAbGroup::trivial(), z(2));
        assert_eq!(hom_cokernel(&f), z(2));

        let f = AbHom::new(z(4), z(2), IntMatrix::from_i64_rows(&[[1]])).unwrap();
        assert_eq!(hom_cokernel(&f), FinAbGroup::trivial());
    }

    #[test]
    fn ill_defined_rejected() {
        // Z/2 -> Z/4 sending the generator to 1 is not a homomorphism.
        let err = AbHom::new(z(2), z(4), IntMatrix::from_i64_rows(&[[1]])).unwrap_err();
        assert!(matches!(err, Error::IllDefinedHom(_)));
        assert!(AbHom::new(z(2), z(4), IntMatrix::from_i64_rows(&[[2]])).is_ok());
        // torsion into a free group must vanish
        assert!(AbHom::new(z(3), FinAbGroup::free(1), IntMatrix::from_i64_rows(&[[1]])).is_err());
    }

    #[test]
    fn coinvariant_examples() {
        let p = AbGroupPresentation::from_i64(2, &[vec![12, 0], vec![0, 12], vec![6, 6]]).unwrap();
        let neg = IntMatrix::from_i64_rows(&[[-1, 0], [0, -1]]);
        let swap_neg = IntMatrix::from_i64_rows(&[[0, -1], [-1, 0]]);
        assert_eq!(coinvariants(&p, &[neg, swap_neg]).unwrap(), z(2));

        assert_eq!(
            coinvariants(&p, &[IntMatrix::identity(2)]).unwrap(),
            p.abelianization()
        );

        let free = AbGroupPresentation::new(1, IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(
            coinvariants(&free, &[IntMatrix::from_i64_rows(&[[-1]])]).unwrap(),
            z(2)
        );
    }

    #[test]
    fn non_preserving_action_rejected() {
        // ⟨x, y | 2x⟩ with x -> y does not descend.
        let p = AbGroupPresentation::from_i64(2, &[vec![2, 0]]).unwrap();
        let a = IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]);
        let err = coinvariants(&p, &[IntMatrix::identity(2), a]).unwrap_err();
        assert_eq!(err, Error::ActionNotPreserving { index: 1 });
    }

    #[test]
    fn element_enumeration() {
        let g = FinAbGroup::from_orders(&[2, 4], 0);
        assert_eq!(g.elements(100).unwrap().len(), 8);
        assert!(FinAbGroup::free(1).elements(100).is_none());
        assert_eq!(
            FinAbGroup::trivial().elements(1).unwrap(),
            vec![Vec::<BigInt>::new()]
        );
    }
}
