use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rslink::algebra::{instance_double_z2, instance_sweedler, Laurent, Rational};
use rslink::cyclic::{compose, normalize_at, random_word, random_word_into};
use rslink::quantum::Quantum;
use rslink::repcat::{coend_build, evaluate, CoendData, KauffmanModel};
use rslink::tangle::{linking_matrix, parse, print, random_move_sequence, random_string_link, DiagramType, StringLinkParams};

fn double_z2() -> &'static CoendData {
    static C: OnceLock<CoendData> = OnceLock::new();
    C.get_or_init(|| coend_build(&instance_double_z2()).unwrap())
}

fn sweedler() -> &'static CoendData {
    static C: OnceLock<CoendData> = OnceLock::new();
    C.get_or_init(|| coend_build(&instance_sweedler()).unwrap())
}

fn link(seed: u64, strands: usize, crossings: usize) -> rslink::tangle::SlicedDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_string_link(StringLinkParams { strands, max_crossings: crossings, extra_width: 1 }, &mut rng)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(p, q)| Rational::new(p, q))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-6i32..6, rational()), 0..5).prop_map(Laurent::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_stable(seed: u64, strands in 1usize..4) {
        let d = link(seed, strands, 8);
        let ty = DiagramType::StringLink(strands);
        let text = print(ty, &d);
        let (ty2, d2) = parse(&text).unwrap();
        prop_assert_eq!((ty2, &d2), (ty, &d));
        prop_assert_eq!(print(ty2, &d2), text);
    }

    #[test]
    fn moves_keep_every_invariant(seed: u64, strands in 1usize..3, count in 1usize..8) {
        let d = link(seed, strands, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let (e, _) = random_move_sequence(&d, count, d.max_width() + 2, &mut rng);
        prop_assert_eq!(linking_matrix(&d).unwrap(), linking_matrix(&e).unwrap());
        let colors = vec![0; strands];
        prop_assert_eq!(evaluate(&KauffmanModel, &d, &colors).unwrap(), evaluate(&KauffmanModel, &e, &colors).unwrap());
        for c in [sweedler(), double_z2()] {
            let q = Quantum::new(c);
            prop_assert_eq!(q.phi(&d).unwrap(), q.phi(&e).unwrap());
        }
    }

    #[test]
    fn normal_forms_are_fixed_points(seed: u64, tgt in 0usize..4, len in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(tgt, 4, len, &mut rng);
        let m = normalize_at(&w, tgt).unwrap();
        prop_assert_eq!(normalize_at(&m.word(), tgt).unwrap(), m);
    }

    #[test]
    fn composition_is_associative(seed: u64, tgt in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_word_into(tgt, 4, 4, &mut rng);
        let g = random_word_into(h.src(), 4, 4, &mut rng);
        let f = random_word_into(g.src(), 4, 4, &mut rng);
        let left = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        let right = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn scalar_arithmetic_is_exact(a in rational(), b in rational(), c in rational(),
                                  x in laurent(), y in laurent(), z in laurent()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x * z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_unit_is_neutral(seed: u64, strands in 1usize..3) {
        let q = Quantum::new(double_z2());
        let f = q.phi(&link(seed, strands, 6)).unwrap();
        let e = q.conv_identity(strands);
        prop_assert_eq!(q.convolution(&e, &f).unwrap(), f.clone());
        prop_assert_eq!(q.convolution(&f, &e).unwrap(), f);
    }

    #[test]
    fn codegeneracy_undoes_coface(seed: u64, strands in 1usize..3) {
        let q = Quantum::new(double_z2());
        let f = q.phi(&link(seed, strands, 6)).unwrap();
        for j in 0..strands {
            prop_assert_eq!(&q.codegeneracy(&q.coface(&f, j).unwrap(), j).unwrap(), &f);
            prop_assert_eq!(&q.codegeneracy(&q.coface(&f, j + 1).unwrap(), j).unwrap(), &f);
        }
    }
}
