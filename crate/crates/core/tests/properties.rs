use eumr::elemgen::{atom_matrix, GenAtom, GenKind, GenWord};
use eumr::harness::Sampler;
use eumr::ortho::{phi_word, reflection_apply, so_form_residual, t_matrix, OrthoVector};
use eumr::ring::excision_retract;
use eumr::suslin::{inner, suslin_adjoint, suslin_coords, suslin_matrix};
use eumr::{Elem, RMatrix, Ring};
use proptest::prelude::*;

const VARIANTS: [&str; 9] = [
    "Q",
    "Z",
    "Zmod:15",
    "Zmod:9",
    "Poly:Q[x,y]",
    "Poly:Zmod:15[s]",
    "QuotU2:Zmod:15",
    "Frac:Poly:Q[x]",
    "Exc:Zmod:15:3",
];

fn ring(spec: &str) -> Ring {
    Ring::parse(spec).unwrap()
}

fn z15_matrix(entries: &[i64], n: usize) -> RMatrix {
    let z = ring("Zmod:15");
    RMatrix::from_fn(&z, n, n, |i, j| z.from_i64(entries[(i - 1) * n + (j - 1)]))
}

fn z15_vector(xs: &[i64]) -> Vec<Elem> {
    let z = ring("Zmod:15");
    xs.iter().map(|&k| z.int(k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_hold_in_every_variant(seed in any::<u64>()) {
        for spec in VARIANTS {
            let r = ring(spec);
            let mut s = Sampler::new(seed, 0);
            let (a, b, c) = (s.elem(&r), s.elem(&r), s.elem(&r));
            let zero = r.int(0);
            let one = r.int(1);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &zero, a.clone());
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert!((&a + &-&a).is_zero());
            prop_assert_eq!(&a - &b, &a + &-&b);
        }
    }

    #[test]
    fn units_have_two_sided_inverses(seed in any::<u64>(), which in 0..VARIANTS.len()) {
        let r = ring(VARIANTS[which]);
        let a = Sampler::new(seed, 1).elem(&r);
        if let Ok(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn excision_retraction_is_a_homomorphism(seed in any::<u64>()) {
        let r = ring("Exc:Poly:Zmod:15[s]:s");
        let mut s = Sampler::new(seed, 2);
        let (a, b) = (s.elem(&r), s.elem(&r));
        let f = |x: &Elem| excision_retract(x).unwrap();
        prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
        prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        prop_assert!(f(&r.int(1)).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_product_is_associative(xs in prop::collection::vec(0i64..15, 27)) {
        let (a, b, c) = (z15_matrix(&xs[..9], 3), z15_matrix(&xs[9..18], 3), z15_matrix(&xs[18..], 3));
        let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_reverses_products(xs in prop::collection::vec(0i64..15, 32)) {
        let (a, b) = (z15_matrix(&xs[..16], 4), z15_matrix(&xs[16..], 4));
        prop_assert_eq!(a.try_mul(&b).unwrap().transpose(), b.transpose().try_mul(&a.transpose()).unwrap());
    }

    #[test]
    fn det_is_multiplicative_over_zero_divisors(xs in prop::collection::vec(0i64..15, 72)) {
        let (a, b) = (z15_matrix(&xs[..36], 6), z15_matrix(&xs[36..], 6));
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn det_mod_15_agrees_with_the_integer_det(xs in prop::collection::vec(-20i64..20, 36)) {
        let z = ring("Z");
        let over_z = RMatrix::from_fn(&z, 6, 6, |i, j| z.from_i64(xs[(i - 1) * 6 + (j - 1)]));
        let det_z: i64 = over_z.det().unwrap().to_string().parse().unwrap();
        prop_assert_eq!(z15_matrix(&xs, 6).det().unwrap(), ring("Zmod:15").int(det_z));
    }

    #[test]
    fn suslin_coords_round_trip_and_linearity(xs in prop::collection::vec(0i64..15, 16)) {
        let (v, w, v2, w2) = (z15_vector(&xs[..4]), z15_vector(&xs[4..8]), z15_vector(&xs[8..12]), z15_vector(&xs[12..]));
        let s = suslin_matrix(&v, &w).unwrap();
        let (cv, cw) = suslin_coords(&s, 3).unwrap();
        prop_assert_eq!((&cv, &cw), (&v, &w));
        let sum = |a: &[Elem], b: &[Elem]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        let lhs = suslin_matrix(&sum(&v, &v2), &sum(&w, &w2)).unwrap();
        prop_assert_eq!(lhs, s.try_add(&suslin_matrix(&v2, &w2).unwrap()).unwrap());
    }

    #[test]
    fn adjoint_and_determinant_identities(xs in prop::collection::vec(0i64..15, 8)) {
        let (v, w) = (z15_vector(&xs[..4]), z15_vector(&xs[4..]));
        let s = suslin_matrix(&v, &w).unwrap();
        let d = inner(&v, &w).unwrap();
        let id = RMatrix::identity(d.ring(), 8);
        prop_assert_eq!(s.try_mul(&suslin_adjoint(&v, &w).unwrap()).unwrap(), id.scale(&d));
        prop_assert_eq!(s.det().unwrap(), d.pow(4));
    }

    #[test]
    fn reflections_square_to_identity_on_unimodular_axes(seed in any::<u64>(), r in 1usize..4) {
        let z = ring("Zmod:15");
        let mut s = Sampler::new(seed, 3);
        let (v, w, _) = s.unimodular_pair(&z, r + 1);
        let axis = OrthoVector::new(v.clone(), w.clone()).unwrap();
        let arg = OrthoVector::new(s.vector(&z, r + 1), s.vector(&z, r + 1)).unwrap();
        let twice = reflection_apply(&axis, &reflection_apply(&axis, &arg).unwrap()).unwrap();
        prop_assert_eq!(twice, arg);
        prop_assert!(so_form_residual(&t_matrix(&v, &w).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn phi_is_multiplicative(seed in any::<u64>()) {
        let z = ring("Zmod:15");
        let mut s = Sampler::new(seed, 4);
        let mut word = |len: usize| -> GenWord {
            (0..len)
                .map(|_| {
                    let kind = GenKind::ALL[s.below(4) as usize];
                    GenAtom::gen(kind, 2 + s.below(2) as usize, s.elem(&z))
                })
                .collect()
        };
        let (a, b) = (word(3), word(3));
        let whole = phi_word(&a.clone().then(&b), 2, &z).unwrap();
        let split = phi_word(&a, 2, &z).unwrap().try_mul(&phi_word(&b, 2, &z).unwrap()).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn generators_are_invertible(seed in any::<u64>(), r in 1usize..4) {
        let z = ring("Zmod:15");
        let mut s = Sampler::new(seed, 5);
        let kind = GenKind::ALL[s.below(4) as usize];
        let g = GenAtom::gen(kind, 2 + s.below(r as u64) as usize, s.elem(&z));
        let m = atom_matrix(&g, r, &z).unwrap();
        prop_assert!(m.try_mul(&atom_matrix(&g.inv(), r, &z).unwrap()).unwrap().is_identity());
        prop_assert!(m.det().unwrap().is_one());
    }
}
