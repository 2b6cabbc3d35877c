use std::sync::OnceLock;

use num_traits::Zero;
use octo_e6::scalars::rat;
use octo_e6::structure::{Algebra, StructureConstants, TableFormat};
use octo_e6::transforms::{build_generator, GeneratorName};
use octo_e6::{Jordan64, JordanQ, Rational};
use proptest::prelude::*;

fn algebra() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| Algebra::build().unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn element() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0usize..78, small_rational()), 1..4).prop_map(|terms| {
        let mut v = vec![Rational::zero(); 78];
        for (i, c) in terms {
            v[i] += c;
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(x in element(), y in element()) {
        let alg = algebra();
        let xy = alg.bracket(&x, &y);
        let yx = alg.bracket(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
    }

    #[test]
    fn bracket_matches_matrix_commutator(x in element(), y in element()) {
        let alg = algebra();
        let lhs = alg.matrix_of(&alg.bracket(&x, &y));
        let rhs = alg.matrix_of(&x).commutator(&alg.matrix_of(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_on_combinations(x in element(), y in element(), z in element()) {
        let alg = algebra();
        let b = |u: &[Rational], v: &[Rational]| alg.bracket(u, v);
        let s: Vec<Rational> = b(&x, &b(&y, &z))
            .into_iter()
            .zip(b(&y, &b(&z, &x)))
            .zip(b(&z, &b(&x, &y)))
            .map(|((a, c), d)| a + c + d)
            .collect();
        prop_assert!(s.iter().all(Zero::is_zero));
    }

    #[test]
    fn killing_is_invariant(x in element(), y in element(), z in element()) {
        let alg = algebra();
        prop_assert_eq!(
            alg.killing_of(&alg.bracket(&x, &y), &z),
            -alg.killing_of(&y, &alg.bracket(&x, &z))
        );
    }

    #[test]
    fn cycling_types_preserves_det(v in prop::collection::vec(small_rational(), 27)) {
        let x = JordanQ::from_coords(&v);
        prop_assert_eq!(x.cycle().det(), x.det());
        prop_assert_eq!(x.cycled(3), x);
    }

    #[test]
    fn generators_preserve_det_at_random_angles(
        n in 0usize..198,
        alpha in -2.0f64..2.0,
        v in prop::collection::vec(-1.0f64..1.0, 27),
    ) {
        let name = GeneratorName::all_shapes()[n];
        let x = Jordan64::from_coords(&v);
        let y = build_generator(name).apply(&alpha, &x);
        prop_assert!((y.det() - x.det()).abs() < 1e-10);
    }
}

#[test]
fn csv_table_roundtrips() {
    let alg = algebra();
    let csv = alg.sc.export(TableFormat::Csv);
    let back = StructureConstants::from_csv(&csv, alg.names().to_vec()).unwrap();
    assert_eq!(back, alg.sc);
}
