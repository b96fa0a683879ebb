//! The registry: what each suite checks, over which ring, for which `r`.

use serde_json::{json, Value as Json};

use crate::elemgen::{
    atom_matrix, complete_pair, excision_lift_and_retract, lemma03_factorization_check, lemma32_check,
    lemma32_printed_second, lemma42_congruence, lemma43_product, lemma44_alpha_check, lemma44_product,
    lemma44_second_display, orbit_enumerate, retract_matrix, word_matrix, GenAtom, GenError, GenKind, GenWord,
    Lemma32Variant, TbPattern, Trunc, DEFAULT_ORBIT_BUDGET,
};
use crate::linalg::RMatrix;
use crate::ortho::{
    cor33_proof_fixtures, cor33_rows, cor34_rows, lemma41_check, oe_matrix, phi_word, pi, prop35_word,
    reflection_apply, so_form_residual, t_matrix, t_matrix_by_columns, OrthoError, OrthoGen, OrthoVector,
};
use crate::ring::{excision_retract, Elem, Ring, RingError, RingKind};
use crate::suslin::{fundamental_conjugate, inner, suslin_adjoint, suslin_coords, suslin_matrix, unit_vector};

use super::{Check, Ctx, Sampler, SuiteName, SuiteSpec, Unsupported};

pub(crate) struct Plan {
    pub ring_label: String,
    pub default_trials: u64,
    pub run: fn(&mut Ctx) -> Result<(), Unsupported>,
}

fn names(prefixes: &[&str], r: usize) -> Vec<String> {
    prefixes.iter().flat_map(|p| (0..=r).map(move |k| format!("{p}{k}"))).collect()
}

fn poly_label(vars: &[String]) -> String {
    format!("Poly:Q[{}]", vars.join(","))
}

fn lemma41_label(r: usize) -> String {
    let m = r + 1;
    let vars: Vec<String> = std::iter::once("s".to_string())
        .chain((1..=m).map(|k| format!("x{k}")))
        .chain((1..=m).map(|k| format!("y{k}")))
        .collect();
    poly_label(&vars)
}

type Runner = fn(&mut Ctx) -> Result<(), Unsupported>;

pub(crate) fn plan(spec: &SuiteSpec) -> Plan {
    let r = spec.r;
    let (default_ring, default_trials, run): (String, u64, Runner) = match spec.name {
        SuiteName::SuslinBasic => ("Poly:Q[l]".into(), 1, suslin_basic),
        SuiteName::DetExponent => (poly_label(&names(&["a", "b"], r)), 1, det_exponent),
        SuiteName::Fundamental => (poly_label(&names(&["s", "t", "a", "b"], r)), 1, fundamental),
        SuiteName::Lemma31 => ("Q, Zmod:15".into(), 500, lemma31),
        SuiteName::Lemma32 => ("Poly:Q[l]".into(), 1, lemma32),
        SuiteName::Cor33 => ("Poly:Q[l]".into(), 1, cor33),
        SuiteName::Cor34 => ("Poly:Q[l]".into(), 1, cor34),
        SuiteName::Cor33Fixtures => ("Poly:Q[l]".into(), 1, cor33_fixtures),
        SuiteName::Prop35Coverage => ("Poly:Q[l]".into(), 20, prop35_coverage),
        SuiteName::Lemma41 => (lemma41_label(r), 1, lemma41),
        SuiteName::Lemma42 => ("Poly:Q[X,Y,Z]".into(), 1, lemma42),
        SuiteName::Lemma44 => ("Zmod:15".into(), 1, lemma44),
        SuiteName::Lemma01Completion => ("Zmod:15".into(), 200, lemma01_completion),
        SuiteName::Lemma03Identity => ("Zmod:15".into(), 500, lemma03_identity),
        SuiteName::Excision => ("Exc:Zmod:15:3".into(), 1000, excision),
        SuiteName::Orbit => ("Zmod:9, Zmod:15".into(), 1, orbit),
    };
    Plan { ring_label: spec.ring.clone().unwrap_or(default_ring), default_trials, run }
}

// ---- shared helpers --------------------------------------------------------

fn r_range(ctx: &Ctx, lo: usize) -> Result<usize, Unsupported> {
    let hi = if ctx.spec.name.is_symbolic() { 3 } else { 4 };
    let r = ctx.spec.r;
    if (lo..=hi).contains(&r) {
        Ok(r)
    } else {
        Err(Unsupported(format!("{} needs {lo} <= r <= {hi}, got r = {r}", ctx.spec.name)))
    }
}

fn parse(text: &str) -> Ring {
    Ring::parse(text).expect("built-in ring spec")
}

/// The requested ring, or `default` when none was given.
fn ring_or(ctx: &Ctx, default: &str) -> Ring {
    parse(ctx.spec.ring.as_deref().unwrap_or(default))
}

fn own_ring_only(ctx: &Ctx) -> Result<(), Unsupported> {
    match &ctx.spec.ring {
        Some(given) if *given != ctx.ring_label => {
            Err(Unsupported(format!("{} works over its own ring, not {given}", ctx.spec.name)))
        }
        _ => Ok(()),
    }
}

fn need_two(ring: &Ring) -> Result<(), Unsupported> {
    if ring.int(2).is_unit() {
        Ok(())
    } else {
        Err(Unsupported(format!("2 is not invertible in {ring}")))
    }
}

/// The first `count` variables of a polynomial ring, if it has that many.
fn leading_vars(ring: &Ring, count: usize) -> Option<Vec<Elem>> {
    match ring.kind() {
        RingKind::Poly { vars, .. } if vars.len() >= count => {
            Some(vars[..count].iter().map(|v| ring.var(v).expect("own variable")).collect())
        }
        _ => None,
    }
}

/// Trial 0 over a ring with enough variables uses them; otherwise random entries.
fn entries(ring: &Ring, count: usize, trial: u64, sampler: &mut Sampler) -> Vec<Elem> {
    match leading_vars(ring, count) {
        Some(vars) if trial == 0 => vars,
        _ => sampler.vector(ring, count),
    }
}

fn show(xs: &[Elem]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn identity(ring: &Ring, n: usize) -> RMatrix {
    RMatrix::identity(ring, n)
}

/// Index pairs `2 <= i != j <= r+1`.
fn index_pairs(r: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 2..=r + 1 {
        for j in 2..=r + 1 {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

// ---- suslin-basic ----------------------------------------------------------

struct KindFacts {
    checks: Vec<Check>,
    negation_inverts: bool,
    top_bot_split: bool,
}

fn kind_facts(kind: GenKind, i: usize, lambda: &Elem, r: usize, ring: &Ring) -> Result<KindFacts, GenError> {
    let tag = format!("{} i={i} lambda={lambda}", kind.name());
    let id = identity(ring, 1 << r);
    let g = GenAtom::gen(kind, i, lambda.clone());
    let m = atom_matrix(&g, r, ring)?;
    let inv = atom_matrix(&g.clone().inv(), r, ring)?;
    let zero = atom_matrix(&GenAtom::gen(kind, i, ring.int(0)), r, ring)?;
    let neg = atom_matrix(&GenAtom::gen(kind, i, -lambda), r, ring)?;
    let first_two = matches!(kind, GenKind::Ei | GenKind::EiStar);
    let negation_inverts = m.try_mul(&neg)?.is_identity();
    let top_bot_split = word_matrix(&GenWord(vec![g.clone().top(), g.bot()]), r, ring)? == m;
    let mut checks = vec![
        Check::matrices(format!("{tag}: E·E^-1"), &m.try_mul(&inv)?, &id),
        Check::flag(format!("{tag}: E(0) = I exactly for e_i and e_i^*"), zero.is_identity() == first_two),
    ];
    if first_two {
        checks.push(Check::flag(format!("{tag}: E(l)E(-l) = I"), negation_inverts));
        checks.push(Check::flag(format!("{tag}: E = E^top E^bot"), top_bot_split));
    } else {
        let other = if kind == GenKind::Ei1 { GenKind::Ei1Star } else { GenKind::Ei1 };
        let partner = atom_matrix(&GenAtom::gen(other, i, lambda.clone()), r, ring)?;
        checks.push(Check::matrices(format!("{tag}: E·(companion)ᵀ = I"), &m.try_mul(&partner.transpose())?, &id));
    }
    Ok(KindFacts { checks, negation_inverts, top_bot_split })
}

fn suslin_basic(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let ring = ring_or(ctx, "Poly:Q[l]");
    let mut negation_fails = Vec::new();
    let mut split_fails = Vec::new();
    for t in 0..ctx.trials {
        let mut sampler = Sampler::new(ctx.spec.seed, t);
        let lambda = entries(&ring, 1, t, &mut sampler).remove(0);
        for kind in GenKind::ALL {
            for i in 2..=r + 1 {
                match kind_facts(kind, i, &lambda, r, &ring) {
                    Ok(f) => {
                        ctx.record_all(f.checks);
                        let label = format!("{}:{i}", kind.name());
                        if !f.negation_inverts {
                            negation_fails.push(label.clone());
                        }
                        if !f.top_bot_split {
                            split_fails.push(label);
                        }
                    }
                    Err(e) => ctx.record(Check::or_error::<GenError>(format!("{} i={i}", kind.name()), Err(e))),
                }
            }
        }
    }
    for list in [&mut negation_fails, &mut split_fails] {
        list.sort();
        list.dedup();
    }
    ctx.observe("negation_not_inverse", negation_fails);
    ctx.observe("top_bot_split_fails", split_fails);

    let sym = parse(&poly_label(&names(&["a", "b"], r)));
    let vals = leading_vars(&sym, 2 * (r + 1)).expect("enough variables");
    let (v, w) = vals.split_at(r + 1);
    let adjoint = (|| -> Result<Check, crate::suslin::SuslinError> {
        let lhs = suslin_matrix(v, w)?.try_mul(&suslin_adjoint(v, w)?)?;
        let rhs = identity(&sym, 1 << r).scale(&inner(v, w)?);
        Ok(Check::matrices("S(v,w)·S(w,v)ᵀ = ⟨v,w⟩I", &lhs, &rhs))
    })();
    ctx.record(Check::or_error("adjoint", adjoint));
    let round = suslin_matrix(v, w).and_then(|s| suslin_coords(&s, r));
    let ok = matches!(&round, Ok((x, y)) if x == v && y == w);
    ctx.record(Check::flag("coords(S(v,w)) = (v,w)", ok));
    Ok(())
}

// ---- det-exponent / fundamental ---------------------------------------------

fn det_exponent(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let ring = ring_or(ctx, &poly_label(&names(&["a", "b"], r)));
    let exponent = 1u32 << (r - 1);
    for t in 0..ctx.trials {
        let mut sampler = Sampler::new(ctx.spec.seed, t);
        let vals = entries(&ring, 2 * (r + 1), t, &mut sampler);
        let (v, w) = vals.split_at(r + 1);
        let inputs = format!("v={} w={}", show(v), show(w));
        let check = suslin_matrix(v, w).map_err(|e| e.to_string()).and_then(|s| {
            let d = s.det().map_err(|e| e.to_string())?;
            let expected = inner(v, w).expect("equal lengths").pow(exponent);
            Ok(Check::truth(inputs.clone(), d == expected, || json!(d.to_string()), json!(expected.to_string())))
        });
        ctx.record(Check::or_error(inputs, check));
    }
    ctx.observe("exponent", exponent);
    Ok(())
}

fn fundamental(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let ring = ring_or(ctx, &poly_label(&names(&["s", "t", "a", "b"], r)));
    let n = r + 1;
    for t in 0..ctx.trials {
        let mut sampler = Sampler::new(ctx.spec.seed, t);
        let vals = entries(&ring, 4 * n, t, &mut sampler);
        let (s, rest) = vals.split_at(n);
        let (tt, rest) = rest.split_at(n);
        let (v, w) = rest.split_at(n);
        let inputs = format!("s={} t={} v={} w={}", show(s), show(tt), show(v), show(w));
        let check = fundamental_conjugate(s, tt, v, w).map(|(v2, w2)| {
            let lhs = inner(&v2, &w2).expect("equal lengths");
            let st = inner(s, tt).expect("equal lengths");
            let rhs = &(&st * &st) * &inner(v, w).expect("equal lengths");
            Check::truth(inputs.clone(), lhs == rhs, || json!(lhs.to_string()), json!(rhs.to_string()))
        });
        ctx.record(Check::or_error(inputs, check));
    }
    Ok(())
}

// ---- lemma31: column images, reflections, form preservation ----------------

fn lemma31(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let n = r + 1;
    let sym = parse(&poly_label(&names(&["a", "b"], r)));
    let vals = leading_vars(&sym, 2 * n).expect("enough variables");
    let (v, w) = vals.split_at(n);
    let cols = t_matrix(v, w).and_then(|m| Ok(Check::matrices("symbolic columns", &m, &t_matrix_by_columns(v, w)?)));
    ctx.record(Check::or_error("symbolic columns", cols));

    let rings: Vec<Ring> = match &ctx.spec.ring {
        Some(text) => vec![parse(text)],
        None => vec![Ring::rationals(), parse("Zmod:15")],
    };
    for (k, ring) in rings.iter().enumerate() {
        let count = ctx.trials;
        ctx.run_trials(k as u64 * 1_000_000, count, |_, sampler| {
            let (v, w, _) = sampler.unimodular_pair(ring, n);
            let arg = OrthoVector::new(sampler.vector(ring, n), sampler.vector(ring, n)).expect("equal lengths");
            let inputs = format!("{ring} v={} w={}", show(&v), show(&w));
            let result = (|| -> Result<Vec<Check>, OrthoError> {
                let m = t_matrix(&v, &w)?;
                let residual = so_form_residual(&m)?;
                let axis = OrthoVector::new(v.clone(), w.clone())?;
                let e1 = unit_vector(ring, n, 1);
                let base = OrthoVector::new(e1.clone(), e1)?;
                let mut composed = true;
                for k in 1..=2 * n {
                    let b = OrthoVector::basis(ring, r, k)?;
                    composed &= reflection_apply(&axis, &reflection_apply(&base, &b)?)?.coords() == m.col(k);
                }
                let twice = reflection_apply(&axis, &reflection_apply(&axis, &arg)?)?;
                Ok(vec![
                    Check::truth(format!("{inputs}: residual"), residual.is_zero(), || residual.to_json(), json!(0)),
                    Check::flag(format!("{inputs}: columns are τ_(v,w)∘τ_(e1,e1) images"), composed),
                    Check::flag(format!("{inputs}: τ² = id"), twice == arg),
                ])
            })();
            result.unwrap_or_else(|e| vec![Check::or_error::<OrthoError>(inputs, Err(e))])
        });
    }
    Ok(())
}

// ---- truncation rewrites and the orthogonal tables -------------------------

fn lambda_ring(ctx: &Ctx) -> Result<(Ring, Elem), Unsupported> {
    let ring = ring_or(ctx, "Poly:Q[l]");
    need_two(&ring)?;
    let lambda = match leading_vars(&ring, 1) {
        Some(mut v) => v.remove(0),
        None => Sampler::new(ctx.spec.seed, 0).elem(&ring),
    };
    Ok((ring, lambda))
}

fn lemma32(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 2)?;
    let (_, lambda) = lambda_ring(ctx)?;
    for (i, j) in index_pairs(r) {
        for variant in [Lemma32Variant::First, Lemma32Variant::Second] {
            for tb in [Trunc::Top, Trunc::Bot] {
                let inputs = format!("{variant:?} {} i={i} j={j} lambda={lambda}", tb.name());
                let check = lemma32_check(variant, tb, i, j, &lambda, r).map(|ok| Check::flag(inputs.clone(), ok));
                ctx.record(Check::or_error(inputs, check));
            }
        }
    }
    let ring = lambda.ring().clone();
    let printed = lemma32_printed_second(2, 3, &lambda, r)
        .and_then(|(lhs, rhs)| Ok(atom_matrix(&lhs, r, &ring)? == word_matrix(&rhs, r, &ring)?));
    ctx.observe("printed_second_form_holds", printed.map(Json::Bool).unwrap_or_else(|e| json!(e.to_string())));
    Ok(())
}

fn record_rows(ctx: &mut Ctx, rows: Result<Vec<crate::ortho::TableRow>, OrthoError>, r: usize, ring: &Ring, tag: &str) {
    match rows {
        Ok(rows) => {
            for row in rows {
                let inputs = format!("{tag} {}", row.label);
                let check = row.evaluate(r, ring).map(|(lhs, rhs)| Check::matrices(inputs.clone(), &lhs, &rhs));
                ctx.record(Check::or_error(inputs, check));
            }
        }
        Err(e) => ctx.record(Check::or_error::<OrthoError>(tag, Err(e))),
    }
}

fn cor33(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 2)?;
    let (ring, lambda) = lambda_ring(ctx)?;
    for i in 2..=r + 1 {
        record_rows(ctx, cor33_rows(i, &lambda, r), r, &ring, &format!("i={i}"));
    }
    Ok(())
}

fn cor34(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 2)?;
    let (ring, lambda) = lambda_ring(ctx)?;
    for (i, j) in index_pairs(r) {
        record_rows(ctx, cor34_rows(i, j, &lambda, r), r, &ring, &format!("i={i} j={j}"));
    }
    let q = Ring::rationals();
    for i in 2..=r + 1 {
        match oe_matrix(&OrthoGen::Pi1i(i), r, &q) {
            Ok(m) => ctx.pin(&format!("pi1i-r{r}-i{i}"), m.to_json()),
            Err(e) => ctx.record(Check::or_error::<OrthoError>(format!("pi1i {i}"), Err(e))),
        }
    }
    Ok(())
}

fn cor33_fixtures(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 2)?;
    let (_, lambda) = lambda_ring(ctx)?;
    for (i, j) in index_pairs(r) {
        match cor33_proof_fixtures(i, j, &lambda, r) {
            Ok(steps) => {
                for s in steps {
                    ctx.record(Check::matrices(format!("i={i} j={j} {}", s.name), &s.computed, &s.displayed));
                }
            }
            Err(e) => ctx.record(Check::or_error::<OrthoError>(format!("i={i} j={j}"), Err(e))),
        }
    }
    Ok(())
}

fn random_word(sampler: &mut Sampler, ring: &Ring, r: usize, len: usize) -> GenWord {
    (0..len)
        .map(|_| {
            let kind = GenKind::ALL[sampler.below(4) as usize];
            let i = 2 + sampler.below(r as u64) as usize;
            let atom = GenAtom::gen(kind, i, sampler.elem(ring));
            let truncatable = matches!(kind, GenKind::Ei | GenKind::EiStar);
            match sampler.below(5) {
                0 if truncatable => atom.top(),
                1 if truncatable => atom.bot(),
                2 => atom.inv(),
                3 => GenAtom::Pi1i(i),
                _ => atom,
            }
        })
        .collect()
}

fn prop35_coverage(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 2)?;
    let (ring, lambda) = lambda_ring(ctx)?;
    let size = 2 * (r + 1);
    let mut covered = 0u64;
    for k in 1..=size {
        for l in 1..=size {
            if l == k || Some(l) == pi(k, r).ok() {
                continue;
            }
            let inputs = format!("oe_{{{k},{l}}}");
            let check = (|| -> Result<Check, OrthoError> {
                let target = oe_matrix(&OrthoGen::oe(k, l, lambda.clone()), r, &ring)?;
                let residual = so_form_residual(&target)?;
                if !residual.is_zero() {
                    return Ok(Check::truth(format!("{inputs} residual"), false, || residual.to_json(), json!(0)));
                }
                let word = prop35_word(k, l, &lambda, r)?;
                Ok(Check::matrices(format!("{inputs} = φ({word})"), &phi_word(&word, r, &ring)?, &target))
            })();
            let check = Check::or_error(inputs, check);
            covered += u64::from(check.passed);
            ctx.record(check);
        }
    }
    ctx.observe("pairs_covered", covered);

    let z = parse("Zmod:15");
    let count = ctx.trials;
    ctx.run_trials(0, count, |_, sampler| {
        let w1 = random_word(sampler, &z, r, 3);
        let w2 = random_word(sampler, &z, r, 3);
        let inputs = format!("Zmod:15 w1={w1} w2={w2}");
        let check = (|| -> Result<Check, OrthoError> {
            let whole = phi_word(&w1.clone().then(&w2), r, &z)?;
            let split = phi_word(&w1, r, &z)?.try_mul(&phi_word(&w2, r, &z)?)?;
            Ok(Check::matrices(format!("{inputs}: φ(w1 w2) = φ(w1)φ(w2)"), &whole, &split))
        })();
        vec![Check::or_error(inputs, check)]
    });
    Ok(())
}

// ---- congruence lemmas -----------------------------------------------------

fn lemma41(ctx: &mut Ctx) -> Result<(), Unsupported> {
    own_ring_only(ctx)?;
    let r = r_range(ctx, 1)?;
    for n in [1u32, 2] {
        let inputs = format!("n={n}");
        let check = lemma41_check(n, r).map(|ok| Check::flag(inputs.clone(), ok));
        ctx.record(Check::or_error(inputs, check));
    }
    Ok(())
}

fn lemma42(ctx: &mut Ctx) -> Result<(), Unsupported> {
    own_ring_only(ctx)?;
    let r = r_range(ctx, 2)?;
    let kinds = [GenKind::Ei, GenKind::EiStar];
    for (i, j) in index_pairs(r) {
        for c in kinds {
            for d in kinds {
                for tb in TbPattern::ALL {
                    let inputs = format!(
                        "c={} i={i} d={} j={j} outer={} middle={}",
                        c.name(),
                        d.name(),
                        tb.outer.name(),
                        tb.middle.name()
                    );
                    let check = lemma42_congruence(c, i, d, j, tb, r).map(|ok| Check::flag(inputs.clone(), ok));
                    ctx.record(Check::or_error(inputs, check));
                }
                let inputs = format!("specialised c={} i={i} d={} j={j}", c.name(), d.name());
                let check = lemma43_product(c, i, d, j, r).and_then(|m| {
                    let s = m.ring().var("s")?;
                    Ok(Check::flag(inputs.clone(), m.congruent_mod(&identity(m.ring(), 1 << r), &s, 1)?))
                });
                ctx.record(Check::or_error(inputs, check));
            }
        }
    }
    Ok(())
}

// ---- lemma44 ---------------------------------------------------------------

fn lemma44(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let ring = ring_or(ctx, "Zmod:15");
    let RingKind::Zmod { modulus, .. } = ring.kind() else {
        return Err(Unsupported(format!("lemma44 enumerates involutions of Z/m, not {ring}")));
    };
    let modulus = *modulus;
    let n = 1usize << r;

    let q = Ring::rationals();
    let at_one = lemma44_product(&q.int(1), r).map(|m| Check::matrices("Q u=1", &m, &identity(&q, n)));
    ctx.record(Check::or_error("Q u=1", at_one));

    let mut involutions = Vec::new();
    for k in 1..modulus {
        let u = ring.int(k as i64);
        if !(&u * &u).is_one() {
            continue;
        }
        involutions.push(k);
        let inputs = format!("{ring} u={k}");
        let check = lemma44_product(&u, r).map(|m| Check::matrices(format!("{inputs}: product = u·I"), &m, &identity(&ring, n).scale(&u)));
        ctx.record(Check::or_error(inputs, check));
    }
    ctx.observe("involutions", involutions);
    if modulus == 15 {
        match lemma44_product(&ring.int(4), r) {
            Ok(m) => ctx.pin(&format!("lemma44-zmod15-u4-r{r}"), m.to_json()),
            Err(e) => ctx.record(Check::or_error::<GenError>("u=4", Err(e))),
        }
    }

    let qu = parse("QuotU2:Q");
    let u = qu.var("u").expect("generator");
    let symbolic = (|| -> Result<Vec<Check>, GenError> {
        let first = lemma44_product(&u, r)?;
        let second = lemma44_second_display(&u, r)?;
        Ok(vec![
            Check::matrices("QuotU2:Q displays agree", &first, &second),
            Check::matrices("QuotU2:Q product = u·I", &first, &identity(&qu, n).scale(&u)),
            Check::flag("QuotU2:Q regrouped middle factor", lemma44_alpha_check(&u, r)?),
        ])
    })();
    match symbolic {
        Ok(cs) => ctx.record_all(cs),
        Err(e) => ctx.record(Check::or_error::<GenError>("QuotU2:Q", Err(e))),
    }
    Ok(())
}

// ---- completion and the commutator factorization ---------------------------

fn completion_check(v: &[Elem], w: &[Elem], sigma: &RMatrix) -> Result<Check, GenError> {
    let inputs = format!("v={} w={}", show(v), show(w));
    let c = complete_pair(v, w, sigma)?;
    let ring = sigma.ring();
    let n = v.len();
    let e1 = RMatrix::from_elems(ring, &[unit_vector(ring, n, 1)])?;
    let v_ok = e1.try_mul(&c.epsilon)?.row(1) == v;
    let w_ok = e1.try_mul(&c.epsilon_inv.transpose())?.row(1) == w;
    let inverse_ok = c.epsilon.try_mul(&c.epsilon_inv)?.is_identity();
    Ok(Check::flag(inputs, v_ok && w_ok && inverse_ok))
}

fn lemma01_completion(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let n = r + 1;
    let ring = ring_or(ctx, "Zmod:15");
    let count = ctx.trials;
    let trial = |ring: &Ring| {
        let ring = ring.clone();
        move |_: u64, sampler: &mut Sampler| {
            let (v, w0, sigma) = sampler.unimodular_pair(&ring, n);
            let w = sampler.other_dual(&v, &w0);
            vec![Check::or_error(format!("{ring}"), completion_check(&v, &w, &sigma))]
        }
    };
    ctx.run_trials(0, count, trial(&ring));
    let extra = [Ring::rationals(), parse("Poly:Q[x,y]")];
    for (k, ring) in extra.iter().enumerate() {
        ctx.run_trials(1_000_000 * (k as u64 + 1), 10, trial(ring));
    }
    ctx.observe("extra_rings", json!(["Q", "Poly:Q[x,y]"]));
    Ok(())
}

fn lemma03_identity(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let ring = ring_or(ctx, "Zmod:15");
    let count = ctx.trials;
    ctx.run_trials(0, count, |_, sampler| {
        let ms: Vec<RMatrix> = (0..4).map(|_| sampler.invertible(&ring, 4)).collect();
        let inputs = format!("{ring} alpha={}", ms[0].to_json());
        let check = lemma03_factorization_check(&ms[0], &ms[1], &ms[2], &ms[3]).map(|ok| Check::flag(inputs.clone(), ok));
        vec![Check::or_error(inputs, check)]
    });

    let sym = parse("Poly:Q[x,y,z,w,p,q]");
    let v = |name: &str| sym.var(name).expect("own variable");
    let one = sym.int(1);
    let zero = sym.int(0);
    let mat = |rows: [[Elem; 2]; 2]| RMatrix::from_elems(&sym, &rows.map(|r| r.to_vec())).expect("2x2");
    let alpha = mat([[&one + &(&v("x") * &v("y")), v("x")], [v("y"), one.clone()]]);
    let beta = mat([[one.clone(), v("z")], [zero.clone(), one.clone()]]).try_mul(&mat([[one.clone(), zero.clone()], [v("w"), one.clone()]])).expect("2x2");
    let alpha0 = mat([[one.clone(), v("p")], [zero.clone(), one.clone()]]);
    let beta0 = mat([[one.clone(), zero], [v("q"), one]]);
    let check = lemma03_factorization_check(&alpha, &beta, &alpha0, &beta0).map(|ok| Check::flag("symbolic 2x2", ok));
    ctx.record(Check::or_error("symbolic 2x2", check));
    Ok(())
}

// ---- excision --------------------------------------------------------------

fn ring_axioms(a: &Elem, b: &Elem, c: &Elem) -> bool {
    let zero = a.zero_like();
    let one = a.one_like();
    (a + b) + c.clone() == a + &(b + c)
        && (a * b) * c.clone() == a * &(b * c)
        && a + b == b + a
        && a * b == b * a
        && a * &(b + c) == &(a * b) + &(a * c)
        && a + &zero == *a
        && a * &one == *a
        && (a + &-a).is_zero()
}

fn retraction_hom(a: &Elem, b: &Elem) -> Result<bool, RingError> {
    let f = excision_retract;
    Ok(f(&(a + b))? == &f(a)? + &f(b)? && f(&(a * b))? == &f(a)? * &f(b)? && f(&a.one_like())?.is_one())
}

fn excision(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let exc = ring_or(ctx, "Exc:Zmod:15:3");
    let RingKind::Excision { base, s } = exc.kind() else {
        return Err(Unsupported(format!("excision needs an Exc ring, got {exc}")));
    };
    let (base, s) = (base.clone(), base.elem(s.clone()));
    let count = ctx.trials;
    ctx.run_trials(0, count, |_, sampler| {
        let (a, b, c) = (sampler.elem(&exc), sampler.elem(&exc), sampler.elem(&exc));
        let inputs = format!("a={a} b={b} c={c}");
        let kind = GenKind::ALL[sampler.below(4) as usize];
        let i = 2 + sampler.below(r as u64) as usize;
        let x = &s * &sampler.elem(&base);
        let atom_check = (|| -> Result<Check, GenError> {
            let up = exc.excision_pair(&base.int(0), &x)?;
            let lifted = retract_matrix(&atom_matrix(&GenAtom::gen(kind, i, up), r, &exc)?)?;
            let down = atom_matrix(&GenAtom::gen(kind, i, x.clone()), r, &base)?;
            Ok(Check::matrices(format!("retract E_{}({i})((0,{x}))", kind.name()), &lifted, &down))
        })();
        vec![
            Check::flag(format!("{inputs}: ring axioms"), ring_axioms(&a, &b, &c)),
            Check::or_error(inputs.clone(), retraction_hom(&a, &b).map(|ok| Check::flag(format!("{inputs}: retraction"), ok))),
            Check::or_error(format!("atom {} {i}", kind.name()), atom_check),
        ]
    });

    // A word in the relative generators lifts to (I, α - I) and retracts to α.
    let mut sampler = Sampler::new(ctx.spec.seed, u64::MAX);
    let word: GenWord = (0..4)
        .map(|k| {
            let kind = if k % 2 == 0 { GenKind::Ei } else { GenKind::EiStar };
            let i = 2 + sampler.below(r as u64) as usize;
            let x = &s * &sampler.elem(&base);
            GenAtom::gen(kind, i, exc.excision_pair(&base.int(0), &x).expect("x lies in the ideal"))
        })
        .collect();
    let check = (|| -> Result<Check, GenError> {
        let retracted = word.map_scalars(&|x| Ok(excision_retract(x)?))?;
        let alpha = word_matrix(&retracted, r, &base)?;
        let back = excision_lift_and_retract(&alpha, &word, &exc, r)?;
        Ok(Check::matrices(format!("lift and retract {word}"), &back, &alpha))
    })();
    ctx.record(Check::or_error("lift and retract", check));
    Ok(())
}

// ---- orbit -----------------------------------------------------------------

fn orbit(ctx: &mut Ctx) -> Result<(), Unsupported> {
    let r = r_range(ctx, 1)?;
    let moduli: Vec<u64> = match &ctx.spec.ring {
        None => vec![9, 15],
        Some(text) => match parse(text).kind() {
            RingKind::Zmod { modulus, .. } => vec![*modulus],
            _ => return Err(Unsupported(format!("orbit enumerates Z/m, not {text}"))),
        },
    };
    for m in moduli {
        match orbit_enumerate(m, r, DEFAULT_ORBIT_BUDGET) {
            Ok(counts) => {
                let inputs = format!("Zmod:{m} length {}", counts.length);
                ctx.record(Check::truth(
                    inputs,
                    counts.orbit_of_e1 == counts.unimodular_total,
                    || json!(counts.orbit_of_e1),
                    json!(counts.unimodular_total),
                ));
                let value = serde_json::to_value(&counts).expect("counts serialize");
                ctx.observe(format!("zmod{m}"), value.clone());
                ctx.pin(&format!("orbit-zmod{m}-r{r}"), value);
            }
            Err(GenError::BudgetExceeded { needed, budget }) => {
                return Err(Unsupported(format!("{needed} vectors exceed the budget {budget}")));
            }
            Err(e) => ctx.record(Check::or_error::<GenError>(format!("Zmod:{m}"), Err(e))),
        }
    }
    Ok(())
}
