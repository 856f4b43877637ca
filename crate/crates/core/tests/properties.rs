//! Property tests for the algebraic invariants.

use framing_census::exactlin::{in_row_lattice, AbHom, FinAbGroup, IntMatrix};
use framing_census::forms::{
    det_spin_class, hyperbolic_form, is_isometry, transvection, DetSpin, Epsilon, Isometry,
};
use framing_census::orbit::{orbits, replay, RefinementAction};
use framing_census::quad::{F2Matrix, QuadraticRefinement};
use framing_census::suite::orthogonal_generators;
use framing_census::{smith_normal_form, AbGroupPresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| shaped(r, c, bound))
}

fn shaped(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
        .prop_map(move |r| IntMatrix::from_i64_rows_with_cols(&r, cols))
}

/// A unimodular matrix as a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, negate) in ops {
            let mut e = IntMatrix::identity(n);
            if i != j {
                e.set(i, j, BigInt::from(k));
            } else if negate {
                e.set(i, i, BigInt::from(-1));
            }
            m = &e * &m;
        }
        m
    })
}

fn vector(len: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-6i64..=6, len).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn smith_form_invariants(a in matrix(5, 5, 50)) {
        prop_assert!(smith_normal_form(&a).verify());
    }

    #[test]
    fn cokernel_order_matches_lattice_count(a in shaped(2, 2, 9)) {
        let det = a.determinant().unwrap().abs().to_i64().unwrap();
        prop_assume!(det > 0 && det <= 60);
        let g = AbGroupPresentation::new(2, a.clone()).unwrap().abelianization();
        // d·Z^2 lies in the lattice, so |Z^2 / L| = d^2 / |L ∩ [0, d)^2|.
        let mut inside = 0i64;
        for x in 0..det {
            for y in 0..det {
                if in_row_lattice(&a, &[BigInt::from(x), BigInt::from(y)]).unwrap() {
                    inside += 1;
                }
            }
        }
        prop_assert_eq!(g.order().unwrap(), BigInt::from(det * det / inside));
    }

    #[test]
    fn presentation_invariant_under_row_and_column_ops(
        a in shaped(4, 3, 20),
        p in unimodular(4),
        q in unimodular(3),
    ) {
        let base = AbGroupPresentation::new(3, a.clone()).unwrap().abelianization();
        let moved = (&(&p * &a) * &q).clone();
        let other = AbGroupPresentation::new(3, moved).unwrap().abelianization();
        prop_assert_eq!(base, other);
    }

    #[test]
    fn cokernel_unchanged_by_surjection(
        f in prop::collection::vec(prop::collection::vec(-10i64..=10, 2), 3),
        g in unimodular(3),
    ) {
        let codomain = FinAbGroup::from_orders(&[4, 6], 0);
        let fh = AbHom::new(FinAbGroup::free(3), codomain, IntMatrix::from_i64_rows(&f)).unwrap();
        let gh = AbHom::new(FinAbGroup::free(3), FinAbGroup::free(3), g).unwrap();
        prop_assert_eq!(fh.after(&gh).unwrap().cokernel(), fh.cokernel());
    }

    #[test]
    fn isometry_words_close(genus in 1usize..=3, word in prop::collection::vec(0usize..100, 1..8)) {
        let gens = orthogonal_generators(genus).unwrap();
        let form = hyperbolic_form(genus, Epsilon::Plus);
        let mut m = Isometry::identity(&form);
        let mut class = DetSpin::default();
        for k in word {
            let g = &gens[k % gens.len()];
            m = m.compose(g).unwrap();
            class = class.add(det_spin_class(g).unwrap());
        }
        prop_assert!(is_isometry(m.matrix(), &form).unwrap());
        prop_assert!(is_isometry(m.inverse().matrix(), &form).unwrap());
        prop_assert_eq!(det_spin_class(&m).unwrap(), class);
    }

    #[test]
    fn polarization_and_scaling(
        genus in 1usize..=4,
        bits in any::<u64>(),
        x in vector(8),
        y in vector(8),
        a in -7i64..=7,
    ) {
        let n = 2 * genus;
        let (x, y) = (&x[..n], &y[..n]);
        let mu = QuadraticRefinement::from_bits(genus, bits & ((1u64 << n) - 1)).unwrap();
        let form = hyperbolic_form(genus, Epsilon::Minus);
        let sum: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p + q).collect();
        let lambda = form.pair(x, y).unwrap().mod_floor(&BigInt::from(2)).to_u8().unwrap();
        prop_assert_eq!(
            mu.evaluate(&sum).unwrap(),
            (mu.evaluate(x).unwrap() + mu.evaluate(y).unwrap() + lambda) % 2
        );
        let ax: Vec<BigInt> = x.iter().map(|p| p * a).collect();
        prop_assert_eq!(
            mu.evaluate(&ax).unwrap(),
            ((a * a).rem_euclid(2) as u8 * mu.evaluate(x).unwrap()) % 2
        );
    }

    #[test]
    fn integer_action_factors_through_f2(
        genus in 1usize..=4,
        bits in any::<u64>(),
        vs in prop::collection::vec(prop::collection::vec(-3i64..=3, 8), 1..5),
    ) {
        let n = 2 * genus;
        let mu = QuadraticRefinement::from_bits(genus, bits & ((1u64 << n) - 1)).unwrap();
        let form = hyperbolic_form(genus, Epsilon::Minus);
        let mut m = Isometry::identity(&form);
        for v in vs {
            let v: Vec<BigInt> = v[..n].iter().map(|&x| BigInt::from(x)).collect();
            m = m.compose(&transvection(&v, &form).unwrap()).unwrap();
        }
        let reduced = F2Matrix::reduce(m.matrix()).unwrap();
        prop_assert!(reduced.is_symplectic());
        let z = mu.act(&m).unwrap();
        prop_assert_eq!(z, mu.act_f2(&reduced).unwrap());
        prop_assert_eq!(z.arf(), mu.arf());
    }

    #[test]
    fn orbits_ignore_generator_order(perm in Just((0..15usize).collect::<Vec<_>>()).prop_shuffle()) {
        let base = RefinementAction::transvections(2).unwrap();
        let shuffled: Vec<F2Matrix> = perm.iter().map(|&i| base.matrices()[i].clone()).collect();
        let a = orbits(&base);
        let b = orbits(&RefinementAction::new(2, shuffled).unwrap());
        prop_assert_eq!(a.orbit_sets(), b.orbit_sets());
        prop_assert_eq!(a.representatives, b.representatives);
    }

    #[test]
    fn witness_words_replay(point in 0usize..64) {
        let action = RefinementAction::transvections(3).unwrap();
        let d = orbits(&action);
        let rep = d.representatives[d.orbit_id[point]];
        prop_assert_eq!(replay(&action, rep, &d.word_to(point)), point);
    }
}

#[test]
fn difference_linearity_exhaustive() {
    let r = framing_census::suite::difference_linearity(3).unwrap();
    assert!(r.is_ok(), "{r:?}");
}
