use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pcg::quadnf::{apply, check_normalization, normalize, parse_normal_shape, random_quadratic, QuadraticWord};
use pcg::words::{equal, Letter};

fn quadratic() -> impl Strategy<Value = QuadraticWord> {
    (1usize..=8, 0usize..=4, 0usize..=6, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(v, c, l, p, seed)| random_quadratic(&mut ChaCha8Rng::seed_from_u64(seed), v, c, l, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn output_is_a_normal_form(w in quadratic()) {
        let n = normalize(&w).unwrap();
        let shape = parse_normal_shape(&n.nf).unwrap();
        prop_assert_eq!(&shape, &n.shape);
        prop_assert_eq!(shape.letters(), n.nf.letters.clone());
        prop_assert!(check_normalization(&w, &n).unwrap());
        prop_assert!(equal(&apply(&n.auto, &w).unwrap().as_group_word(), &n.nf.as_group_word()).unwrap());
    }

    #[test]
    fn auto_is_invertible_and_fixes_coefficients(w in quadratic()) {
        let n = normalize(&w).unwrap();
        for x in 0..w.graph.len() {
            if !w.is_variable(x) {
                prop_assert_eq!(n.auto.image(x).letters(), &[Letter::pos(x)][..]);
            }
            let there = n.inverse.apply(n.auto.image(x)).unwrap();
            let back = n.auto.apply(n.inverse.image(x)).unwrap();
            prop_assert_eq!(there.canonical(), &[Letter::pos(x)][..]);
            prop_assert_eq!(back.canonical(), &[Letter::pos(x)][..]);
        }
    }

    #[test]
    fn variable_count_shrinks_each_step(w in quadratic()) {
        let n = normalize(&w).unwrap();
        let before = w.variables().len();
        prop_assert_eq!(n.trace.first().copied(), Some(before));
        prop_assert!(n.trace.windows(2).all(|p| p[1] < p[0]), "{:?}", n.trace);
        prop_assert!(n.nf.variables().len() <= before);
        prop_assert!(2 * n.shape.commutators() + n.shape.squares() + n.shape.conjugates.len() <= before);
        if n.shape.orientable() {
            prop_assert!(n.shape.genus() <= before / 2);
        }
    }

    #[test]
    fn commuting_generators_stay_commuting(w in quadratic()) {
        let n = normalize(&w).unwrap();
        let g = &w.graph;
        for (a, b, _) in g.edges() {
            let (x, y) = (n.auto.image(a), n.auto.image(b));
            prop_assert!(equal(&x.concat(y).unwrap(), &y.concat(x).unwrap()).unwrap());
        }
    }
}

#[test]
fn already_normal_words_are_fixed() {
    for (vars, word) in [(vec!["x1", "x2"], "x1' x2' x1 x2"), (vec!["x1", "x2"], "x1 x1 x2 x2"), (vec!["x1"], "x1 x1 a")] {
        let w = QuadraticWord::from_names(&vars, &["a"], &[], word).unwrap();
        let n = normalize(&w).unwrap();
        assert_eq!(n.nf.to_text(), word);
        assert!((0..w.graph.len()).all(|x| n.auto.image(x).canonical() == [Letter::pos(x)]));
    }
}
