//! `Z/2`-valued quadratic refinements of the symplectic hyperbolic form.
//!
//! A refinement is stored as its values on the canonical basis, packed into
//! a `u64`: bit `2i` is `μ(e_{i+1})` and bit `2i+1` is `μ(f_{i+1})`. The same
//! packing is used for vectors over `F_2`. Everything else follows from
//! `μ(x + y) = μ(x) + μ(y) + λ(x, y)` and `μ(a·x) = a²·μ(x)`, which force
//!
//! ```text
//! μ(Σ a_i e_i + b_i f_i) = Σ a_i μ(e_i) + b_i μ(f_i) + Σ a_i b_i   (mod 2).
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::forms::{Epsilon, Isometry};

/// Largest genus whose refinements fit the bit packing.
pub const MAX_GENUS: usize = 32;

/// Default bound for exhaustive censuses.
pub const DEFAULT_CENSUS_BOUND: usize = 12;

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

fn mask(genus: usize) -> u64 {
    if genus >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * genus)) - 1
    }
}

fn check_genus(genus: usize) -> Result<()> {
    if genus > MAX_GENUS {
        return Err(Error::GenusBound {
            g: genus,
            bound: MAX_GENUS,
        });
    }
    Ok(())
}

/// `Σ a_i b_i (mod 2)` for a packed vector, the quadratic part of every refinement.
#[inline]
fn cross_term(x: u64) -> u32 {
    ((x & EVEN_BITS) & ((x >> 1) & EVEN_BITS)).count_ones() & 1
}

/// Symplectic pairing of packed vectors over `F_2`.
#[inline]
pub fn lambda_f2(x: u64, y: u64) -> u8 {
    let xe = x & EVEN_BITS;
    let xf = (x >> 1) & EVEN_BITS;
    let ye = y & EVEN_BITS;
    let yf = (y >> 1) & EVEN_BITS;
    (((xe & yf) ^ (xf & ye)).count_ones() & 1) as u8
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticRefinement {
    genus: usize,
    bits: u64,
}

impl QuadraticRefinement {
    pub fn from_bits(genus: usize, bits: u64) -> Result<Self> {
        check_genus(genus)?;
        if bits & !mask(genus) != 0 {
            return Err(Error::Input(format!(
                "bit pattern {bits:#b} has bits beyond genus {genus}"
            )));
        }
        Ok(Self { genus, bits })
    }

    /// From values `μ(e_1), μ(f_1), …` given in canonical order.
    pub fn from_values(values: &[u8]) -> Result<Self> {
        if !values.len().is_multiple_of(2) {
            return Err(Error::Input(format!(
                "{} basis values given, need an even number",
                values.len()
            )));
        }
        let genus = values.len() / 2;
        check_genus(genus)?;
        let mut bits = 0u64;
        for (i, &b) in values.iter().enumerate() {
            match b {
                0 => {}
                1 => bits |= 1 << i,
                other => return Err(Error::Input(format!("basis value {other} is not 0 or 1"))),
            }
        }
        Ok(Self { genus, bits })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn basis_values(&self) -> Vec<u8> {
        (0..2 * self.genus)
            .map(|i| ((self.bits >> i) & 1) as u8)
            .collect()
    }

    /// Value on a packed `F_2` vector.
    #[inline]
    pub fn evaluate_f2(&self, x: u64) -> u8 {
        (((x & self.bits).count_ones() + cross_term(x)) & 1) as u8
    }

    pub fn evaluate(&self, x: &[BigInt]) -> Result<u8> {
        if x.len() != 2 * self.genus {
            return Err(Error::Dimension(format!(
                "vector of length {} for genus {}",
                x.len(),
                self.genus
            )));
        }
        Ok(self.evaluate_f2(reduce_vector(x)))
    }

    pub fn arf(&self) -> u8 {
        cross_term(self.bits) as u8
    }

    /// Right action `(μ·M)(x) = μ(M x)`.
    pub fn act_f2(&self, m: &F2Matrix) -> Result<Self> {
        if m.genus != self.genus {
            return Err(Error::Dimension(format!(
                "genus {} matrix acting on a genus {} refinement",
                m.genus, self.genus
            )));
        }
        Ok(Self {
            genus: self.genus,
            bits: self.act_f2_unchecked(m),
        })
    }

    #[inline]
    pub(crate) fn act_f2_unchecked(&self, m: &F2Matrix) -> u64 {
        m.cols.iter().enumerate().fold(0u64, |acc, (j, &c)| {
            acc | (u64::from(self.evaluate_f2(c)) << j)
        })
    }

    /// Right action of an integral symplectic matrix, evaluated on its columns
    /// over `Z`.
    pub fn act(&self, m: &Isometry) -> Result<Self> {
        if m.form().epsilon() != Epsilon::Minus {
            return Err(Error::NotIsometry(
                "refinements are acted on by symplectic matrices".into(),
            ));
        }
        if m.form().genus() != self.genus {
            return Err(Error::Dimension(format!(
                "genus {} matrix acting on a genus {} refinement",
                m.form().genus(),
                self.genus
            )));
        }
        let mut bits = 0u64;
        for j in 0..2 * self.genus {
            let col = m.matrix().column(j);
            bits |= u64::from(self.evaluate(&col)?) << j;
        }
        Ok(Self {
            genus: self.genus,
            bits,
        })
    }

    /// The difference `μ' − μ` as a linear form, packed: bit `i` is its value
    /// on basis vector `i`.
    pub fn difference(&self, other: &QuadraticRefinement) -> u64 {
        self.bits ^ other.bits
    }
}

impl fmt::Display for QuadraticRefinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.basis_values() {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadraticRefinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticRefinement(g={}, {self})", self.genus)
    }
}

impl std::str::FromStr for QuadraticRefinement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Input(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_values(&values)
    }
}

impl Serialize for QuadraticRefinement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadraticRefinement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn reduce_vector(x: &[BigInt]) -> u64 {
    x.iter().enumerate().fold(
        0u64,
        |acc, (i, a)| if a.is_odd() { acc | (1 << i) } else { acc },
    )
}

/// A `2g × 2g` matrix over `F_2`, stored as packed columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    genus: usize,
    cols: Vec<u64>,
}

impl F2Matrix {
    pub fn identity(genus: usize) -> Self {
        Self {
            genus,
            cols: (0..2 * genus).map(|j| 1u64 << j).collect(),
        }
    }

    /// Builds a matrix from packed columns, rejecting non-symplectic input.
    pub fn from_columns(genus: usize, cols: Vec<u64>) -> Result<Self> {
        check_genus(genus)?;
        if cols.len() != 2 * genus || cols.iter().any(|&c| c & !mask(genus) != 0) {
            return Err(Error::Dimension(format!(
                "need {} columns of {} bits",
                2 * genus,
                2 * genus
            )));
        }
        let m = Self { genus, cols };
        if !m.is_symplectic() {
            return Err(Error::NotIsometry(
                "matrix is not symplectic over F_2".into(),
            ));
        }
        Ok(m)
    }

    /// Reduction mod 2 of an integer matrix (column convention).
    pub fn reduce(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(Error::Dimension("need a square matrix of even size".into()));
        }
        let genus = m.rows() / 2;
        let cols = (0..m.cols()).map(|j| reduce_vector(&m.column(j))).collect();
        Self::from_columns(genus, cols)
    }

    /// `x ↦ x + λ(x, v)·v`.
    pub fn transvection(genus: usize, v: u64) -> Self {
        let cols = (0..2 * genus)
            .map(|j| {
                let e = 1u64 << j;
                if lambda_f2(e, v) == 1 {
                    e ^ v
                } else {
                    e
                }
            })
            .collect();
        Self { genus, cols }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.cols.iter().enumerate().fold(
            0,
            |acc, (j, &c)| if (x >> j) & 1 == 1 { acc ^ c } else { acc },
        )
    }

    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        F2Matrix {
            genus: self.genus,
            cols: rhs.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn is_symplectic(&self) -> bool {
        let n = 2 * self.genus;
        (0..n).all(|i| {
            (0..n).all(|j| lambda_f2(self.cols[i], self.cols[j]) == lambda_f2(1 << i, 1 << j))
        })
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 2 * self.genus;
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for c in &self.cols {
                write!(f, "{}", (c >> i) & 1)?;
            }
        }
        write!(f, "]")
    }
}

pub fn evaluate(mu: &QuadraticRefinement, x: &[BigInt]) -> Result<u8> {
    mu.evaluate(x)
}

pub fn arf(mu: &QuadraticRefinement) -> u8 {
    mu.arf()
}

pub fn act(mu: &QuadraticRefinement, m: &Isometry) -> Result<QuadraticRefinement> {
    mu.act(m)
}

/// `μ_0` (all zeros) for Arf 0; `H(1) ⊕ H(0)^{g−1}` for Arf 1.
pub fn standard_refinement(arf_value: u8, genus: usize) -> Result<QuadraticRefinement> {
    check_genus(genus)?;
    match arf_value {
        0 => QuadraticRefinement::from_bits(genus, 0),
        1 if genus == 0 => Err(Error::ArfOneGenusZero),
        1 => QuadraticRefinement::from_bits(genus, 0b11),
        other => Err(Error::Input(format!("Arf value {other} is not 0 or 1"))),
    }
}

pub fn preserves_refinement(m: &Isometry, mu: &QuadraticRefinement) -> Result<bool> {
    Ok(mu.act(m)? == *mu)
}

pub fn preserves_refinement_f2(m: &F2Matrix, mu: &QuadraticRefinement) -> Result<bool> {
    Ok(mu.act_f2(m)? == *mu)
}

/// Exhaustive Arf census over all `2^{2g}` refinements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub genus: usize,
    pub arf0: u64,
    pub arf1: u64,
}

impl Census {
    /// `(2^{2g−1} + 2^{g−1}, 2^{2g−1} − 2^{g−1})`, with `(1, 0)` at `g = 0`.
    pub fn closed_form(genus: usize) -> (u64, u64) {
        if genus == 0 {
            return (1, 0);
        }
        let big = 1u64 << (2 * genus - 1);
        let small = 1u64 << (genus - 1);
        (big + small, big - small)
    }

    pub fn matches_closed_form(&self) -> bool {
        (self.arf0, self.arf1) == Self::closed_form(self.genus)
    }
}

pub fn census(genus: usize, bound: usize) -> Result<Census> {
    if genus > bound || genus >= MAX_GENUS {
        return Err(Error::GenusBound {
            g: genus,
            bound: bound.min(MAX_GENUS - 1),
        });
    }
    let total = 1u64 << (2 * genus);
    let arf1 = (0..total).filter(|&b| cross_term(b) == 1).count() as u64;
    Ok(Census {
        genus,
        arf0: total - arf1,
        arf1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{hyperbolic_form, transvection};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn evaluation_examples() {
        let mu0 = standard_refinement(0, 1).unwrap();
        assert_eq!(evaluate(&mu0, &v(&[1, 1])).unwrap(), 1);
        assert_eq!(evaluate(&mu0, &v(&[1, 0])).unwrap(), 0);
        let h1: QuadraticRefinement = "11".parse().unwrap();
        assert_eq!(evaluate(&h1, &v(&[1, 1])).unwrap(), 1);
        assert!(evaluate(&h1, &v(&[1, 1, 0])).is_err());
    }

    #[test]
    fn arf_examples() {
        for g in 0..5 {
            assert_eq!(arf(&standard_refinement(0, g).unwrap()), 0);
        }
        for g in 1..5 {
            assert_eq!(arf(&standard_refinement(1, g).unwrap()), 1);
        }
        assert_eq!(arf(&QuadraticRefinement::from_bits(0, 0).unwrap()), 0);
    }

    #[test]
    fn standard_refinements() {
        assert_eq!(standard_refinement(0, 2).unwrap().to_string(), "0000");
        assert_eq!(standard_refinement(1, 2).unwrap().to_string(), "1100");
        assert_eq!(standard_refinement(0, 0).unwrap().to_string(), "");
        assert_eq!(
            standard_refinement(1, 0).unwrap_err(),
            Error::ArfOneGenusZero
        );
    }

    #[test]
    fn s_preserves_mu0() {
        let f = hyperbolic_form(1, Epsilon::Minus);
        let s = Isometry::new(IntMatrix::from_i64_rows(&[[0, -1], [1, 0]]), &f).unwrap();
        let mu0 = standard_refinement(0, 1).unwrap();
        assert_eq!(act(&mu0, &s).unwrap(), mu0);
        assert!(preserves_refinement(&s, &mu0).unwrap());
        assert_eq!(act(&mu0, &Isometry::identity(&f)).unwrap(), mu0);
    }

    #[test]
    fn transvection_on_e1_moves_mu0() {
        let f = hyperbolic_form(1, Epsilon::Minus);
        let t = transvection(&v(&[1, 0]), &f).unwrap();
        let mu0 = standard_refinement(0, 1).unwrap();
        assert!(!preserves_refinement(&t, &mu0).unwrap());
        let t2 = F2Matrix::transvection(1, 0b01);
        assert_eq!(F2Matrix::reduce(t.matrix()).unwrap(), t2);
        assert!(!preserves_refinement_f2(&t2, &mu0).unwrap());
    }

    #[test]
    fn symmetric_form_rejected_by_act() {
        let f = hyperbolic_form(1, Epsilon::Plus);
        let mu0 = standard_refinement(0, 1).unwrap();
        assert!(act(&mu0, &Isometry::identity(&f)).is_err());
    }

    #[test]
    fn non_symplectic_f2_rejected() {
        // e1 -> e1, f1 -> e1 is singular
        assert!(F2Matrix::from_columns(1, vec![0b01, 0b01]).is_err());
        assert!(F2Matrix::from_columns(1, vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn censuses() {
        let c = |g| census(g, DEFAULT_CENSUS_BOUND).unwrap();
        assert_eq!((c(1).arf0, c(1).arf1), (3, 1));
        assert_eq!((c(2).arf0, c(2).arf1), (10, 6));
        assert_eq!((c(0).arf0, c(0).arf1), (1, 0));
        for g in 0..=6 {
            assert!(c(g).matches_closed_form());
        }
        assert!(matches!(
            census(13, DEFAULT_CENSUS_BOUND),
            Err(Error::GenusBound { g: 13, .. })
        ));
    }

    #[test]
    fn bit_string_roundtrip() {
        let mu: QuadraticRefinement = "1011".parse().unwrap();
        assert_eq!(mu.genus(), 2);
        assert_eq!(mu.basis_values(), vec![1, 0, 1, 1]);
        assert_eq!(serde_json::to_string(&mu).unwrap(), "\"1011\"");
        assert!("101".parse::<QuadraticRefinement>().is_err());
        assert!("10x1".parse::<QuadraticRefinement>().is_err());
    }
}
