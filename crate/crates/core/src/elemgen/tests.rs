use super::*;
use crate::suslin::suslin_matrix;

fn q_lambda() -> (Ring, Elem) {
    let ring = Ring::parse("Poly:Q[l]").unwrap();
    let l = ring.var("l").unwrap();
    (ring, l)
}

fn rows(ring: &Ring, rows: &[&[&str]]) -> RMatrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    RMatrix::parse_rows(ring, &rows).unwrap()
}

#[test]
fn zero_parameter_gives_identity() {
    let q = Ring::rationals();
    for kind in GenKind::ALL {
        for r in 1..=3 {
            let m = atom_matrix(&GenAtom::gen(kind, 2, q.int(0)), r, &q).unwrap();
            let expect_identity = matches!(kind, GenKind::Ei | GenKind::EiStar);
            assert_eq!(m.is_identity(), expect_identity, "{kind:?} r={r}");
        }
    }
}

#[test]
fn r1_upper_unitriangular() {
    let (ring, l) = q_lambda();
    let m = atom_matrix(&GenAtom::gen(GenKind::Ei, 2, l), 1, &ring).unwrap();
    assert_eq!(m, rows(&ring, &[&["1", "l"], &["0", "1"]]));
}

#[test]
fn truncated_generator_matches_truncated_suslin_matrix() {
    let (ring, l) = q_lambda();
    let m = atom_matrix(&GenAtom::gen(GenKind::EiStar, 2, l.clone()).bot(), 2, &ring).unwrap();
    let v = vec![ring.int(1), ring.int(0), ring.int(0)];
    let w = vec![ring.int(1), l, ring.int(0)];
    assert_eq!(m, suslin_matrix(&v, &w).unwrap().bot().unwrap());
}

#[test]
fn index_and_truncation_errors() {
    let q = Ring::rationals();
    assert!(matches!(atom_matrix(&GenAtom::gen(GenKind::Ei, 1, q.int(1)), 2, &q), Err(GenError::Index { .. })));
    assert!(matches!(atom_matrix(&GenAtom::gen(GenKind::Ei, 4, q.int(1)), 2, &q), Err(GenError::Index { .. })));
    assert!(matches!(atom_matrix(&GenAtom::Pi1i(2).top(), 2, &q), Err(GenError::BadTruncation)));
}

#[test]
fn words_and_inverses() {
    let (ring, l) = q_lambda();
    assert!(word_matrix(&GenWord::new(), 2, &ring).unwrap().is_identity());
    let a = GenAtom::gen(GenKind::Ei, 2, l.clone());
    let w = GenWord(vec![a.clone(), a.clone().inv()]);
    assert!(word_matrix(&w, 2, &ring).unwrap().is_identity());
    let p = GenWord::from(a);
    let q = GenWord::from(GenAtom::gen(GenKind::EiStar, 3, ring.int(1)));
    let c = word_matrix(&GenWord::commutator(&p, &q), 2, &ring).unwrap();
    let pm = word_matrix(&p, 2, &ring).unwrap();
    let qm = word_matrix(&q, 2, &ring).unwrap();
    assert_eq!(c, crate::linalg::commutator(&pm, &qm).unwrap());
}

#[test]
fn negated_parameter_inverts_only_the_first_two_kinds() {
    let (ring, l) = q_lambda();
    for r in 1..=3 {
        for kind in GenKind::ALL {
            for i in 2..=r + 1 {
                let a = atom_matrix(&GenAtom::gen(kind, i, l.clone()), r, &ring).unwrap();
                let b = atom_matrix(&GenAtom::gen(kind, i, -&l), r, &ring).unwrap();
                let negation_inverts = matches!(kind, GenKind::Ei | GenKind::EiStar);
                assert_eq!((&a * &b).is_identity(), negation_inverts, "{kind:?} i={i} r={r}");
                let inv = atom_matrix(&GenAtom::gen(kind, i, l.clone()).inv(), r, &ring).unwrap();
                assert!((&a * &inv).is_identity());
            }
        }
    }
}

#[test]
fn companion_kinds_invert_through_transposes() {
    let (ring, l) = q_lambda();
    for r in 1..=3 {
        let a = atom_matrix(&GenAtom::gen(GenKind::Ei1, 2, l.clone()), r, &ring).unwrap();
        let b = atom_matrix(&GenAtom::gen(GenKind::Ei1Star, 2, l.clone()), r, &ring).unwrap();
        assert!((&a * &b.transpose()).is_identity());
    }
}

#[test]
fn top_bot_factorization_by_kind() {
    let (ring, l) = q_lambda();
    for r in 2..=3 {
        for kind in GenKind::ALL {
            let g = GenAtom::gen(kind, 2, l.clone());
            let full = atom_matrix(&g, r, &ring).unwrap();
            let split = GenWord(vec![g.clone().top(), g.clone().bot()]);
            let holds = word_matrix(&split, r, &ring).unwrap() == full;
            assert_eq!(holds, matches!(kind, GenKind::Ei | GenKind::EiStar), "{kind:?} r={r}");
        }
    }
}

#[test]
fn truncation_rewrites_at_zero() {
    let q = Ring::rationals();
    for variant in [Lemma32Variant::First, Lemma32Variant::Second] {
        for tb in [Trunc::Top, Trunc::Bot] {
            assert!(lemma32_check(variant, tb, 2, 3, &q.int(0), 2).unwrap());
        }
    }
}

#[test]
fn truncation_rewrites_symbolic_r2() {
    let (_, l) = q_lambda();
    for variant in [Lemma32Variant::First, Lemma32Variant::Second] {
        for tb in [Trunc::Top, Trunc::Bot] {
            for (i, j) in [(2, 3), (3, 2)] {
                assert!(lemma32_check(variant, tb, i, j, &l, 2).unwrap(), "{variant:?} {tb:?} {i} {j}");
            }
        }
    }
}

#[test]
fn printed_second_rewrite_fails() {
    let (ring, l) = q_lambda();
    let (lhs, rhs) = lemma32_printed_second(2, 3, &l, 2).unwrap();
    assert_ne!(atom_matrix(&lhs, 2, &ring).unwrap(), word_matrix(&rhs, 2, &ring).unwrap());
}

#[test]
fn rewrite_rejects_equal_indices() {
    let (_, l) = q_lambda();
    assert!(matches!(
        lemma32_check(Lemma32Variant::First, Trunc::Bot, 2, 2, &l, 2),
        Err(GenError::Precondition(_))
    ));
}

#[test]
fn product_at_u_equal_one_is_identity() {
    let q = Ring::rationals();
    assert!(lemma44_product(&q.int(1), 2).unwrap().is_identity());
}

#[test]
fn product_needs_an_involution() {
    let z = Ring::zmod(15).unwrap();
    assert!(matches!(lemma44_product(&z.int(2), 2), Err(GenError::Precondition(_))));
}

#[test]
fn product_displays_agree_symbolically() {
    let ring = Ring::parse("QuotU2:Q").unwrap();
    let u = ring.var("u").unwrap();
    let first = lemma44_product(&u, 2).unwrap();
    assert_eq!(first, lemma44_second_display(&u, 2).unwrap());
    assert!((&first * &first).is_identity());
    assert!(lemma44_alpha_check(&u, 2).unwrap());
}

#[test]
fn triple_products_examples() {
    let bb = TbPattern { outer: Trunc::Bot, middle: Trunc::Bot };
    assert!(lemma42_congruence(GenKind::Ei, 2, GenKind::Ei, 3, bb, 2).unwrap());
    let tb = TbPattern { outer: Trunc::Top, middle: Trunc::Bot };
    assert!(lemma42_congruence(GenKind::EiStar, 2, GenKind::EiStar, 3, tb, 2).unwrap());
    assert!(lemma42_product(GenKind::Ei1, 2, GenKind::Ei, 3, tb, 2).is_err());
}

#[test]
fn triple_product_without_middle_factor() {
    let ring = Ring::parse("Poly:Q[X,Y,Z]").unwrap();
    let z = ring.var("Z").unwrap();
    let x = ring.var("X").unwrap();
    for tb in TbPattern::ALL {
        let w = GenWord(vec![
            GenAtom::gen(GenKind::Ei, 2, z.clone()).truncated(tb.outer),
            GenAtom::gen(GenKind::Ei, 2, -&z).truncated(tb.outer),
        ]);
        let m = word_matrix(&w, 2, &ring).unwrap();
        assert!(m.congruent_mod(&RMatrix::identity(&ring, 4), &x, 1).unwrap());
    }
}

#[test]
fn specialised_triple_product_is_congruent() {
    let m = lemma43_product(GenKind::Ei, 2, GenKind::EiStar, 3, 2).unwrap();
    let s = m.ring().var("s").unwrap();
    assert!(m.congruent_mod(&RMatrix::identity(m.ring(), 4), &s, 1).unwrap());
}

#[test]
fn completion_fixed_point() {
    let q = Ring::rationals();
    let e1 = crate::suslin::unit_vector(&q, 3, 1);
    let c = complete_pair(&e1, &e1, &RMatrix::identity(&q, 3)).unwrap();
    assert!(c.zeta.is_identity());
    assert!(c.epsilon.is_identity());
}

#[test]
fn completion_rational_example() {
    let q = Ring::rationals();
    let v: Vec<Elem> = [1, 2, 3].iter().map(|&k| q.int(k)).collect();
    let w: Vec<Elem> = [3, -1, 0].iter().map(|&k| q.int(k)).collect();
    let sigma = &RMatrix::elementary(&q, 3, 1, 2, &q.from_i64(2)) * &RMatrix::elementary(&q, 3, 1, 3, &q.from_i64(3));
    let c = complete_pair(&v, &w, &sigma).unwrap();
    assert_eq!(c.epsilon.row(1), v);
    assert_eq!(c.epsilon_inv.transpose().row(1), w);
    assert!(complete_pair(&v, &v, &sigma).is_err());
}

#[test]
fn reduction_examples() {
    let z9 = Ring::zmod(9).unwrap();
    let e1 = crate::suslin::unit_vector(&z9, 3, 1);
    assert!(reduce_unimodular_modn(&e1).unwrap().is_empty());
    let v: Vec<Elem> = [3, 1, 3].iter().map(|&k| z9.int(k)).collect();
    let word = reduce_unimodular_modn(&v).unwrap();
    assert_eq!(apply_transvections(&v, &word), e1);
    let mut m = RMatrix::identity(&z9, 3);
    for t in &word {
        m = &m * &t.matrix(3);
    }
    let row = RMatrix::from_elems(&z9, &[v]).unwrap();
    assert_eq!((&row * &m).row(1), e1);
    let bad: Vec<Elem> = [3, 6, 0].iter().map(|&k| z9.int(k)).collect();
    assert!(matches!(reduce_unimodular_modn(&bad), Err(GenError::NotUnimodular)));
}

#[test]
fn small_orbit() {
    let c = orbit_enumerate(3, 1, DEFAULT_ORBIT_BUDGET).unwrap();
    assert_eq!((c.unimodular_total, c.orbit_of_e1), (8, 8));
    assert!(matches!(orbit_enumerate(15, 5, 1000), Err(GenError::BudgetExceeded { .. })));
}

#[test]
fn commutator_factorization_trivial_case() {
    let z = Ring::zmod(15).unwrap();
    let a = &RMatrix::elementary(&z, 2, 1, 2, &z.from_i64(4)) * &RMatrix::elementary(&z, 2, 2, 1, &z.from_i64(7));
    let b = RMatrix::elementary(&z, 2, 2, 1, &z.from_i64(2));
    assert!(lemma03_factorization_check(&a, &b, &a, &b).unwrap());
}

#[test]
fn commutator_factorization_symbolic() {
    let ring = Ring::parse("Poly:Q[x,y]").unwrap();
    let x = ring.var("x").unwrap();
    let y = ring.var("y").unwrap();
    let a = RMatrix::elementary(&ring, 2, 1, 2, x.value());
    let b = RMatrix::elementary(&ring, 2, 1, 2, y.value());
    let a0 = RMatrix::elementary(&ring, 2, 2, 1, ring.int(3).value());
    let b0 = RMatrix::elementary(&ring, 2, 2, 1, (&x * &y).value());
    assert!(lemma03_factorization_check(&a, &b, &a0, &b0).unwrap());
}

fn excision() -> (Ring, Ring) {
    let base = Ring::parse("Poly:Q[s]").unwrap();
    let exc = Ring::parse("Exc:Poly:Q[s]:s").unwrap();
    (base, exc)
}

#[test]
fn excision_identity_case() {
    let (base, exc) = excision();
    let id = RMatrix::identity(&base, 4);
    assert!(excision_lift_and_retract(&id, &GenWord::new(), &exc, 2).unwrap().is_identity());
}

#[test]
fn excision_single_and_double_atoms() {
    let (base, exc) = excision();
    let a = exc.parse_elem("(0, 3*s)").unwrap();
    let atom = GenAtom::gen(GenKind::Ei, 2, a);
    let expected = atom_matrix(&GenAtom::gen(GenKind::Ei, 2, base.parse_elem("3*s").unwrap()), 2, &base).unwrap();
    let word = GenWord::from(atom.clone());
    assert_eq!(excision_lift_and_retract(&expected, &word, &exc, 2).unwrap(), expected);
    let b = GenAtom::gen(GenKind::EiStar, 3, exc.parse_elem("(0, s^2)").unwrap());
    let word2 = GenWord(vec![atom, b]);
    let alpha = retract_matrix(&word_matrix(&word2, 2, &exc).unwrap()).unwrap();
    assert_eq!(excision_lift_and_retract(&alpha, &word2, &exc, 2).unwrap(), alpha);
}

#[test]
fn excision_rejects_mismatched_word() {
    let (base, exc) = excision();
    let word = GenWord::from(GenAtom::gen(GenKind::Ei, 2, exc.parse_elem("(0, s)").unwrap()));
    let id = RMatrix::identity(&base, 4);
    assert!(excision_lift_and_retract(&id, &word, &exc, 2).is_err());
}

#[test]
fn word_json_round_trip() {
    let (ring, l) = q_lambda();
    let word = GenWord(vec![
        GenAtom::gen(GenKind::EiStar, 2, l.clone()).top(),
        GenAtom::gen(GenKind::Ei, 3, ring.int(1)).bot().inv(),
        GenAtom::Pi1i(2),
        GenAtom::suslin(vec![ring.int(1), l.clone(), ring.int(0)], vec![ring.int(1), ring.int(0), ring.int(0)]),
        GenAtom::gen(GenKind::Ei1Star, 2, l).inv(),
    ]);
    let json = word.to_json().unwrap();
    assert_eq!(GenWord::from_json(&ring, &json).unwrap(), word);
    let bad = serde_json::json!([{"kind": "nope", "i": 2}]);
    assert!(GenWord::from_json(&ring, &bad).is_err());
}
