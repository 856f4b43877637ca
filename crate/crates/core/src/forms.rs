//! Epsilon-symmetric hyperbolic forms over Z, their isometries, and for the
//! symmetric case reflections, Cartan–Dieudonné factorizations, the spinor
//! norm and the determinant/spinor class.
//!
//! Matrices act on column vectors: column `j` of an isometry is the image of
//! basis vector `j`, and `M` is an isometry iff `Mᵀ·G·M = G`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::json::{rows_to_matrix, JsonRows};
use crate::exactlin::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn from_i64(x: i64) -> Result<Self> {
        match x {
            1 => Ok(Epsilon::Plus),
            -1 => Ok(Epsilon::Minus),
            other => Err(Error::BadEpsilon(other)),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

/// Hyperbolic form of genus `g` in canonical basis order `e_1, f_1, …, e_g, f_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSymmetricForm {
    genus: usize,
    epsilon: Epsilon,
    gram: IntMatrix,
}

impl EpsSymmetricForm {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// `B(x, y) = xᵀ·G·y`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        let gy = self.gram.apply(y)?;
        if x.len() != gy.len() {
            return Err(Error::Dimension(
                "vector length does not match the form".into(),
            ));
        }
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    fn pair_q(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.dim();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let gij = self.gram.get(i, j);
                if !gij.is_zero() && !y[j].is_zero() {
                    acc += &x[i] * &y[j] * BigRational::from_integer(gij.clone());
                }
            }
        }
        acc
    }

    fn require_symmetric(&self) -> Result<()> {
        match self.epsilon {
            Epsilon::Plus => Ok(()),
            Epsilon::Minus => Err(Error::NotSymmetric),
        }
    }
}

impl fmt::Display for EpsSymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.epsilon {
            Epsilon::Plus => "+",
            Epsilon::Minus => "-",
        };
        write!(f, "H_{}({sign}1)", self.genus)
    }
}

pub fn hyperbolic_form(genus: usize, epsilon: Epsilon) -> EpsSymmetricForm {
    let n = 2 * genus;
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..genus {
        gram.set(2 * i, 2 * i + 1, BigInt::one());
        gram.set(2 * i + 1, 2 * i, BigInt::from(epsilon.value()));
    }
    EpsSymmetricForm {
        genus,
        epsilon,
        gram,
    }
}

pub fn is_isometry(m: &IntMatrix, form: &EpsSymmetricForm) -> Result<bool> {
    let n = form.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "{}x{} matrix against a form of rank {n}",
            m.rows(),
            m.cols()
        )));
    }
    let lhs = &(&m.transpose() * form.gram()) * m;
    Ok(&lhs == form.gram())
}

/// An integer matrix preserving a hyperbolic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
    form: EpsSymmetricForm,
}

impl Isometry {
    pub fn new(matrix: IntMatrix, form: &EpsSymmetricForm) -> Result<Self> {
        if !is_isometry(&matrix, form)? {
            return Err(Error::NotIsometry(format!(
                "{matrix} does not preserve {form}"
            )));
        }
        Ok(Self {
            matrix,
            form: form.clone(),
        })
    }

    pub fn identity(form: &EpsSymmetricForm) -> Self {
        Self {
            matrix: IntMatrix::identity(form.dim()),
            form: form.clone(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn form(&self) -> &EpsSymmetricForm {
        &self.form
    }

    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.form != other.form {
            return Err(Error::Dimension("isometries of different forms".into()));
        }
        Ok(Isometry {
            matrix: &self.matrix * &other.matrix,
            form: self.form.clone(),
        })
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            matrix: self
                .matrix
                .unimodular_inverse()
                .expect("isometries of a unimodular form are invertible"),
            form: self.form.clone(),
        }
    }
}

/// Rational square matrix, column convention as for integer isometries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigRational::one();
        }
        Self { n, entries }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        assert!(m.is_square());
        Self {
            n: m.rows(),
            entries: m
                .entries()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        let n = self.n;
        let mut out = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        RationalMatrix { n, entries: out }
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// The matrix as an integer matrix, if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        IntMatrix::new(self.n, self.n, entries).ok()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// Scales a nonzero rational vector to a primitive integer vector whose first
/// nonzero entry is positive. Reflections only see the line through `v`.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    ints
}

/// Matrix of `r_v(x) = x − 2·B(x, v)/B(v, v)·v` over Q.
pub fn reflection(v: &[BigInt], form: &EpsSymmetricForm) -> Result<RationalMatrix> {
    form.require_symmetric()?;
    let n = form.dim();
    if v.len() != n {
        return Err(Error::Dimension(format!(
            "vector of length {} for a form of rank {n}",
            v.len()
        )));
    }
    let q = form.pair(v, v)?;
    if q.is_zero() {
        return Err(Error::IsotropicVector);
    }
    let gv = form.gram().apply(v)?;
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = BigRational::new(BigInt::from(2) * &v[i] * &gv[j], q.clone());
            m.entries[i * n + j] -= t;
        }
    }
    Ok(m)
}

/// Reflection vectors whose composite, read left to right, is the target:
/// `M = r_{v_1} ∘ r_{v_2} ∘ … ∘ r_{v_k}`. Vectors are stored as primitive
/// integer representatives of their lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionFactorization {
    pub vectors: Vec<Vec<BigInt>>,
    pub target: Isometry,
}

impl ReflectionFactorization {
    /// Product of the reflections over Q.
    pub fn composite(&self) -> RationalMatrix {
        let form = self.target.form();
        self.vectors
            .iter()
            .fold(RationalMatrix::identity(form.dim()), |acc, v| {
                acc.mul(&reflection(v, form).expect("factorization vectors are anisotropic"))
            })
    }

    /// `B(v, v)` for each reflection vector.
    pub fn norms(&self) -> Vec<BigInt> {
        let form = self.target.form();
        self.vectors
            .iter()
            .map(|v| form.pair(v, v).expect("vector length matches form"))
            .collect()
    }
}

/// The orthogonal basis `u_i = e_i + f_i`, `w_i = e_i − f_i` in order
/// `u_1, w_1, u_2, w_2, …`.
fn orthogonal_basis(genus: usize) -> Vec<Vec<BigRational>> {
    let n = 2 * genus;
    let mut out = Vec::with_capacity(n);
    for i in 0..genus {
        for sign in [1, -1] {
            let mut b = vec![BigRational::zero(); n];
            b[2 * i] = BigRational::one();
            b[2 * i + 1] = BigRational::from_integer(BigInt::from(sign));
            out.push(b);
        }
    }
    out
}

pub fn cartan_dieudonne_factor(m: &Isometry) -> Result<ReflectionFactorization> {
    let form = m.form();
    form.require_symmetric()?;
    let mut current = RationalMatrix::from_int(m.matrix());
    let mut vectors = Vec::new();
    for b in orthogonal_basis(form.genus()) {
        let image = current.apply(&b);
        if image == b {
            continue;
        }
        let d: Vec<BigRational> = image.iter().zip(&b).map(|(x, y)| x - y).collect();
        if !form.pair_q(&d, &d).is_zero() {
            let d = primitive(&d);
            current = reflection(&d, form)?.mul(&current);
            vectors.push(d);
        } else {
            // r_c sends the image to −b, then r_b sends −b to b.
            let c: Vec<BigRational> = image.iter().zip(&b).map(|(x, y)| x + y).collect();
            let c = primitive(&c);
            let bi = primitive(&b);
            current = reflection(&bi, form)?.mul(&reflection(&c, form)?.mul(&current));
            vectors.push(c);
            vectors.push(bi);
        }
    }
    debug_assert!(current.is_identity());
    if !current.is_identity() {
        return Err(Error::NotIsometry(format!(
            "reflection sweep left a residual map for {}",
            m.matrix()
        )));
    }
    Ok(ReflectionFactorization {
        vectors,
        target: m.clone(),
    })
}

/// Spinor norm in `Z/2`: `1` iff the product of `B(v, v)` over a reflection
/// factorization is negative.
pub fn spinor_norm(m: &Isometry) -> Result<u8> {
    let f = cartan_dieudonne_factor(m)?;
    Ok(u8::from(sign_bit(&f.norms())))
}

fn sign_bit(norms: &[BigInt]) -> bool {
    norms.iter().filter(|q| q.is_negative()).count() % 2 == 1
}

/// Determinant and spinor norm, each as an element of `Z/2`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct DetSpin {
    pub det: u8,
    pub spin: u8,
}

impl DetSpin {
    pub fn add(self, other: DetSpin) -> DetSpin {
        DetSpin {
            det: self.det ^ other.det,
            spin: self.spin ^ other.spin,
        }
    }
}

impl fmt::Display for DetSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.det, self.spin)
    }
}

pub fn det_spin_class(m: &Isometry) -> Result<DetSpin> {
    let det = m.matrix().determinant()?;
    let spin = spinor_norm(m)?;
    Ok(DetSpin {
        det: u8::from(det.is_negative()),
        spin,
    })
}

/// Symplectic transvection `x ↦ x + λ(x, v)·v` for an antisymmetric form.
pub fn transvection(v: &[BigInt], form: &EpsSymmetricForm) -> Result<Isometry> {
    if form.epsilon() != Epsilon::Minus {
        return Err(Error::Input(
            "transvections are defined for the symplectic form".into(),
        ));
    }
    let n = form.dim();
    // λ(e_j, v) = (G·v)_j
    let gv = form.gram().apply(v)?;
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = m.get(i, j) + &v[i] * &gv[j];
            m.set(i, j, t);
        }
    }
    Isometry::new(m, form)
}

/// `−I` on the `i`-th hyperbolic block, identity elsewhere.
pub fn negate_block(form: &EpsSymmetricForm, i: usize) -> Isometry {
    let mut m = IntMatrix::identity(form.dim());
    m.set(2 * i, 2 * i, BigInt::from(-1));
    m.set(2 * i + 1, 2 * i + 1, BigInt::from(-1));
    Isometry {
        matrix: m,
        form: form.clone(),
    }
}

/// `e_i ↔ f_i` on the `i`-th block (an isometry only for ε = +1).
pub fn swap_block(form: &EpsSymmetricForm, i: usize) -> Result<Isometry> {
    let mut m = IntMatrix::identity(form.dim());
    m.set(2 * i, 2 * i, BigInt::zero());
    m.set(2 * i + 1, 2 * i + 1, BigInt::zero());
    m.set(2 * i, 2 * i + 1, BigInt::one());
    m.set(2 * i + 1, 2 * i, BigInt::one());
    Isometry::new(m, form)
}

/// The unipotent isometry of `H(+1)^2` given by `(T, I)` acting on 2×2
/// matrices, in basis `(e_1, f_1, e_2, f_2)`.
pub fn t1_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[1, 0, 0, -1], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
}

/// The companion of [`t1_matrix`] coming from `(I, T)`.
pub fn t2_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[1, 0, 0, 0], [0, 1, 0, 1], [-1, 0, 1, 0], [0, 0, 0, 1]])
}

/// A 4×4 block isometry placed on hyperbolic blocks `i` and `j` (`i ≠ j`) of
/// a larger symmetric form.
pub fn embed_block_pair(
    form: &EpsSymmetricForm,
    i: usize,
    j: usize,
    block: &IntMatrix,
) -> Result<Isometry> {
    if i == j || i >= form.genus() || j >= form.genus() {
        return Err(Error::Dimension(format!(
            "blocks ({i}, {j}) invalid for genus {}",
            form.genus()
        )));
    }
    let idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
    let mut m = IntMatrix::identity(form.dim());
    for (a, &ra) in idx.iter().enumerate() {
        for (b, &cb) in idx.iter().enumerate() {
            m.set(ra, cb, block.get(a, b).clone());
        }
    }
    Isometry::new(m, form)
}

/// Names the basis vectors `e1, f1, …` in canonical order.
pub fn canonical_basis_names(genus: usize) -> Vec<String> {
    (1..=genus)
        .flat_map(|i| [format!("e{i}"), format!("f{i}")])
        .collect()
}

/// Canonical index of each listed basis vector; the list must be a
/// permutation of the canonical names.
pub fn parse_basis_order(names: &[String], genus: usize) -> Result<Vec<usize>> {
    let canonical = canonical_basis_names(genus);
    let mut seen = vec![false; canonical.len()];
    if names.len() != canonical.len() {
        return Err(Error::Input(format!(
            "basis order lists {} vectors, expected {}",
            names.len(),
            canonical.len()
        )));
    }
    names
        .iter()
        .map(|n| {
            let k = canonical
                .iter()
                .position(|c| c.eq_ignore_ascii_case(n.trim()))
                .ok_or_else(|| Error::Input(format!("unknown basis vector {n:?}")))?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::Input(format!("basis vector {n:?} listed twice")));
            }
            Ok(k)
        })
        .collect()
}

/// Rewrites a matrix given in the basis order `order` (position → canonical
/// index) into canonical order.
pub fn to_canonical_order(m: &IntMatrix, order: &[usize]) -> IntMatrix {
    let n = order.len();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(order[i], order[j], m.get(i, j).clone());
        }
    }
    out
}

/// JSON document for an isometry check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsometryDoc {
    pub epsilon: i64,
    pub matrix: JsonRows,
    #[serde(default)]
    pub basis_order: Option<Vec<String>>,
}

/// Result of checking an [`IsometryDoc`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IsometryCheck {
    pub genus: usize,
    pub epsilon: i64,
    pub is_isometry: bool,
    pub determinant: Option<String>,
    pub det_spin: Option<DetSpin>,
    pub reflections: Option<Vec<Vec<String>>>,
}

impl IsometryDoc {
    pub fn check(&self) -> Result<IsometryCheck> {
        let epsilon = Epsilon::from_i64(self.epsilon)?;
        let m = rows_to_matrix(&self.matrix, None)?;
        if !m.is_square() || m.rows() % 2 != 0 {
            return Err(Error::Input(format!(
                "isometry matrix must be square of even size, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let genus = m.rows() / 2;
        let m = match &self.basis_order {
            Some(names) => to_canonical_order(&m, &parse_basis_order(names, genus)?),
            None => m,
        };
        let form = hyperbolic_form(genus, epsilon);
        let ok = is_isometry(&m, &form)?;
        let mut out = IsometryCheck {
            genus,
            epsilon: self.epsilon,
            is_isometry: ok,
            determinant: None,
            det_spin: None,
            reflections: None,
        };
        if ok {
            out.determinant = Some(m.determinant()?.to_string());
            if epsilon == Epsilon::Plus {
                let iso = Isometry::new(m, &form)?;
                let f = cartan_dieudonne_factor(&iso)?;
                out.det_spin = Some(det_spin_class(&iso)?);
                out.reflections = Some(
                    f.vectors
                        .iter()
                        .map(|v| v.iter().map(ToString::to_string).collect())
                        .collect(),
                );
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn iso(rows: &[[i64; 2]], form: &EpsSymmetricForm) -> Isometry {
        Isometry::new(IntMatrix::from_i64_rows(rows), form).unwrap()
    }

    #[test]
    fn hyperbolic_grams() {
        assert_eq!(
            hyperbolic_form(1, Epsilon::Minus).gram(),
            &IntMatrix::from_i64_rows(&[[0, 1], [-1, 0]])
        );
        assert_eq!(
            hyperbolic_form(1, Epsilon::Plus).gram(),
            &IntMatrix::from_i64_rows(&[[0, 1], [1, 0]])
        );
        let empty = hyperbolic_form(0, Epsilon::Plus);
        assert_eq!(empty.gram().rows(), 0);
        assert!(is_isometry(&IntMatrix::identity(0), &empty).unwrap());
    }

    #[test]
    fn swap_isometry_depends_on_sign() {
        let swap = IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]);
        assert!(is_isometry(&swap, &hyperbolic_form(1, Epsilon::Plus)).unwrap());
        assert!(!is_isometry(&swap, &hyperbolic_form(1, Epsilon::Minus)).unwrap());
        assert!(is_isometry(&IntMatrix::identity(2), &hyperbolic_form(1, Epsilon::Minus)).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(is_isometry(&IntMatrix::identity(3), &hyperbolic_form(1, Epsilon::Plus)).is_err());
    }

    #[test]
    fn t_matrices_preserve_split_form() {
        let f = hyperbolic_form(2, Epsilon::Plus);
        assert!(is_isometry(&t1_matrix(), &f).unwrap());
        assert!(is_isometry(&t2_matrix(), &f).unwrap());
    }

    #[test]
    fn reflections_in_hyperbolic_plane() {
        let f = hyperbolic_form(1, Epsilon::Plus);
        let swap = RationalMatrix::from_int(&IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]));
        let neg_swap = RationalMatrix::from_int(&IntMatrix::from_i64_rows(&[[0, -1], [-1, 0]]));
        assert_eq!(reflection(&v(&[1, -1]), &f).unwrap(), swap);
        assert_eq!(reflection(&v(&[1, 1]), &f).unwrap(), neg_swap);
        let r = reflection(&v(&[3, 5]), &f).unwrap();
        assert!(r.mul(&r).is_identity());
    }

    #[test]
    fn isotropic_and_symplectic_rejected() {
        let f = hyperbolic_form(1, Epsilon::Plus);
        assert_eq!(
            reflection(&v(&[1, 0]), &f).unwrap_err(),
            Error::IsotropicVector
        );
        let s = hyperbolic_form(1, Epsilon::Minus);
        assert_eq!(
            reflection(&v(&[1, 1]), &s).unwrap_err(),
            Error::NotSymmetric
        );
    }

    #[test]
    fn factorizations_of_o11() {
        let f = hyperbolic_form(1, Epsilon::Plus);
        let id = Isometry::identity(&f);
        assert!(cartan_dieudonne_factor(&id).unwrap().vectors.is_empty());

        let swap = iso(&[[0, 1], [1, 0]], &f);
        let fac = cartan_dieudonne_factor(&swap).unwrap();
        assert_eq!(fac.vectors, vec![v(&[1, -1])]);

        let neg = iso(&[[-1, 0], [0, -1]], &f);
        let fac = cartan_dieudonne_factor(&neg).unwrap();
        let mut vs = fac.vectors.clone();
        vs.sort();
        assert_eq!(vs, vec![v(&[1, -1]), v(&[1, 1])]);
        assert_eq!(fac.composite(), RationalMatrix::from_int(neg.matrix()));
    }

    #[test]
    fn spinor_norms_and_classes() {
        let f = hyperbolic_form(1, Epsilon::Plus);
        let id = Isometry::identity(&f);
        let swap = iso(&[[0, 1], [1, 0]], &f);
        let neg = iso(&[[-1, 0], [0, -1]], &f);
        let neg_swap = iso(&[[0, -1], [-1, 0]], &f);
        assert_eq!(spinor_norm(&id).unwrap(), 0);
        assert_eq!(spinor_norm(&swap).unwrap(), 1);
        assert_eq!(spinor_norm(&neg).unwrap(), 1);
        assert_eq!(det_spin_class(&id).unwrap(), DetSpin { det: 0, spin: 0 });
        assert_eq!(det_spin_class(&neg).unwrap(), DetSpin { det: 0, spin: 1 });
        assert_eq!(
            det_spin_class(&neg_swap).unwrap(),
            DetSpin { det: 1, spin: 0 }
        );
        assert_eq!(det_spin_class(&swap).unwrap(), DetSpin { det: 1, spin: 1 });
    }

    #[test]
    fn isotropic_difference_branch() {
        // T1 moves u_1 by the isotropic vector e_2, so this takes the two-reflection branch.
        let f = hyperbolic_form(2, Epsilon::Plus);
        for t in [t1_matrix(), t2_matrix()] {
            let m = Isometry::new(t, &f).unwrap();
            let fac = cartan_dieudonne_factor(&m).unwrap();
            assert!(fac.vectors.len() <= 8);
            assert_eq!(fac.composite(), RationalMatrix::from_int(m.matrix()));
            assert_eq!(det_spin_class(&m).unwrap(), DetSpin { det: 0, spin: 0 });
        }
    }

    #[test]
    fn transvections_are_symplectic() {
        let f = hyperbolic_form(2, Epsilon::Minus);
        let t = transvection(&v(&[1, 2, -1, 3]), &f).unwrap();
        assert!(is_isometry(t.matrix(), &f).unwrap());
        assert!(transvection(&v(&[1, 0]), &hyperbolic_form(1, Epsilon::Plus)).is_err());
    }

    #[test]
    fn basis_order_roundtrip() {
        let order = parse_basis_order(&["e1", "e2", "f1", "f2"].map(String::from), 2).unwrap();
        assert_eq!(order, vec![0, 2, 1, 3]);
        assert!(parse_basis_order(&["e1", "e1", "f1", "f2"].map(String::from), 2).is_err());
        assert!(parse_basis_order(&["e1", "x", "f1", "f2"].map(String::from), 2).is_err());
        // The Gram matrix in order (e1, e2, f1, f2) maps back to the canonical one.
        let g = IntMatrix::from_i64_rows(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(
            to_canonical_order(&g, &order),
            *hyperbolic_form(2, Epsilon::Plus).gram()
        );
    }

    #[test]
    fn isometry_document() {
        let doc: IsometryDoc =
            serde_json::from_str(r#"{"epsilon": 1, "matrix": [[0, -1], [-1, 0]]}"#).unwrap();
        let c = doc.check().unwrap();
        assert!(c.is_isometry);
        assert_eq!(c.det_spin, Some(DetSpin { det: 1, spin: 0 }));
    }
}
