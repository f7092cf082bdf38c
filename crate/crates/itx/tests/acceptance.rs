//! Acceptance suite: every criterion is exact (symbolic equality, tolerance
//! zero) and prints one pass/fail line. Run with `--nocapture` to see the
//! lines; the assertions themselves are the gate.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{fixture, invariant_space_le, monomials_up_to, run_binary};
use itx::colonalg::{
    codim2_presentation, colon_saturation, colon_step, in_generated_algebra, quasi_affine_ring,
    StopReason, StreamStatus,
};
use itx::freeness::{field_intersection, generic_freeness};
use itx::groebner::{groebner_basis, normal_form, GroebnerBasis};
use itx::idealops::{PresentedRing, SubIdeal, Subalgebra};
use itx::invariants::unipotent::factorial_invariants;
use itx::invariants::{ga_invariant_stream, resultant_charpoly, GaAction};
use itx::monomial::MonomialOrder;
use itx::parse::parse_poly;
use itx::poly::{Poly, Ring};
use itx::problem::parse_problem;
use itx::scalar::FieldCtx;

fn report(n: usize, desc: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!(
        "criterion {n}: PASS in {:.2}s (limit {:.0}s) - {desc}",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(
        elapsed < limit,
        "criterion {n} exceeded its runtime bound: {elapsed:?} >= {limit:?}"
    );
}

fn ring(vars: &[&str], field: FieldCtx) -> Arc<Ring> {
    Ring::new(vars.iter().map(|s| s.to_string()).collect(), field)
}

fn parse_all(ss: &[&str], r: &Ring) -> Vec<Poly> {
    ss.iter().map(|s| parse_poly(s, r).unwrap()).collect()
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

fn assert_buchberger(gb: &GroebnerBasis) {
    for i in 0..gb.gens.len() {
        for j in i + 1..gb.gens.len() {
            let (fc, fm) = gb.gens[i].lead().unwrap();
            let (gc, gm) = gb.gens[j].lead().unwrap();
            let l = fm.lcm(gm);
            let s = gb.gens[i]
                .mul_term(&fc.inv(), &fm.div(&l).unwrap())
                .sub(&gb.gens[j].mul_term(&gc.inv(), &gm.div(&l).unwrap()), &gb.order);
            assert!(normal_form(&s, gb).is_zero(), "S-pair ({i},{j}) survives");
        }
    }
}

/// 1. Groebner suite on 25 fixtures: the full S-pair check passes and
///    normal-form membership agrees with brute-force membership built from
///    random combinations.
#[test]
fn criterion_01_groebner_suite() {
    let started = Instant::now();
    let q = FieldCtx::Rat;
    let f5 = FieldCtx::Fp(5);
    let f2 = FieldCtx::Fp(2);
    type Fixture = (Vec<&'static str>, Vec<&'static str>, FieldCtx, MonomialOrder);
    let fixtures: Vec<Fixture> = vec![
        (vec!["x", "y"], vec!["x^2 - y", "x^3 - y^2"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y"], vec!["x + y", "x*y - 1"], q.clone(), MonomialOrder::Lex),
        (
            vec!["x", "y", "z"],
            vec!["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
            q.clone(),
            MonomialOrder::GrevLex,
        ),
        (vec!["x", "y"], vec!["x + 2*y - 1", "x^2 + 2*y^2 - x"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y", "z"], vec!["x^2 - y", "x^3 - z"], q.clone(), MonomialOrder::Lex),
        (vec!["x", "y", "z", "w"], vec!["x*w - y*z"], q.clone(), MonomialOrder::GrevLex),
        (
            vec!["x", "y", "z"],
            vec!["x^2 + y^2 + z^2 - 1", "x + y + z"],
            q.clone(),
            MonomialOrder::GrevLex,
        ),
        (vec!["x", "y"], vec!["x^3 - y^2"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y", "z"], vec!["x^2*y - z^3", "x*z - y^2"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y"], vec!["x^4 - y^3", "x*y - 1"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y", "z"], vec!["x^2 - 2", "y^2 - 3", "x*y - z"], q.clone(), MonomialOrder::Lex),
        (vec!["x", "y", "z"], vec!["x^2*y", "y^3*z", "z^2"], q.clone(), MonomialOrder::GrevLex),
        (
            vec!["x", "y", "z", "w"],
            vec!["x + y + z + w", "x*y + z*w", "x*y*z*w - 1"],
            q.clone(),
            MonomialOrder::GrevLex,
        ),
        (vec!["x", "y"], vec!["x^5 - y", "y^2 - x"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y", "z"], vec!["x^2 - y^2", "x^3 - z^3"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y"], vec!["2*x^2 - 3*y + 1", "x*y - y^2 + x"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y"], vec!["x^2 + x*y + y^2", "x^3 - y^3"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y", "z"], vec!["x*y*z - x - y - z"], q.clone(), MonomialOrder::GrevLex),
        (
            vec!["x", "y", "z", "w"],
            vec!["x^2 - w", "y^2 - w", "z^2 - w", "x*y*z - w"],
            q.clone(),
            MonomialOrder::GrevLex,
        ),
        (
            vec!["x", "y", "z"],
            vec!["x^3 + y^3 + z^3", "x^2*y + y^2*z + z^2*x"],
            q.clone(),
            MonomialOrder::GrevLex,
        ),
        (vec!["x", "y"], vec!["x^2 + y", "y^2 + x"], f5.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y"], vec!["x^2 + x", "y^2 + y", "x*y + x + y"], f2, MonomialOrder::Lex),
        (vec!["x", "y"], vec!["1/2*x^2 - y", "x - 2*y^2"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y"], vec!["x^4 + y^4 - 1", "x*y - 1"], q.clone(), MonomialOrder::GrevLex),
        (vec!["x", "y", "z"], vec!["x^2*y^2 - z", "x^3 - y", "y^3 - x"], f5, MonomialOrder::GrevLex),
    ];
    assert_eq!(fixtures.len(), 25);
    let mut rng = XorShift(0x6d616b65u64);
    for (vars, gens_s, field, ord) in fixtures {
        let r = ring(&vars, field);
        let gens = parse_all(&gens_s, &r);
        let gb = groebner_basis(&gens, &ord);
        assert_buchberger(&gb);
        // brute-force members: random combinations of the generators
        let monos = monomials_up_to(r.nvars(), 2);
        for _ in 0..8 {
            let mut f = Poly::zero();
            for g in &gens {
                let m = &monos[(rng.next() % monos.len() as u64) as usize];
                let c = r.field.from_i64((rng.next() % 9) as i64 - 4);
                f = f.add(&g.mul_term(&c, m), &ord);
            }
            assert!(normal_form(&f, &gb).is_zero(), "member has nonzero normal form");
        }
    }
    report(1, "Groebner suite: 25 fixtures, S-pair and membership checks", started, Duration::from_secs(10));
}

fn monomial_subalgebra_colon_equals_r(
    s: &Arc<PresentedRing>,
    r: &Subalgebra,
    a_imgs: &[Poly],
    maxdeg: u32,
) -> bool {
    // brute force: a degree-bounded monomial with all a-multiples in R must
    // itself lie in R
    let ord = MonomialOrder::GrevLex;
    for m in monomials_up_to(s.nvars(), maxdeg) {
        let p = Poly { terms: vec![(s.ring.field.one(), m)] };
        let all_in = a_imgs.iter().all(|a| r.membership(&s.nf(&a.mul(&p, &ord))).is_some());
        if all_in && r.membership(&p).is_none() {
            return false;
        }
    }
    true
}

/// 2. Colon-step soundness on the monomial fixture and 5 variants, and the
///    H = empty <=> colon = R contract on 3 equality fixtures.
#[test]
fn criterion_02_colon_step_soundness() {
    let started = Instant::now();
    let ord = MonomialOrder::GrevLex;
    // (vars, ideal, R-gens, a-tags)
    let variants: Vec<(Vec<&str>, Vec<&str>, Vec<&str>, Vec<&str>)> = vec![
        (vec!["x", "y"], vec![], vec!["x", "x*y"], vec!["g1"]),
        (vec!["x", "y"], vec![], vec!["x", "x*y"], vec!["g1^2"]),
        (vec!["x"], vec![], vec!["x^2", "x^3"], vec!["g1"]),
        (vec!["x", "y"], vec![], vec!["x^2", "x*y"], vec!["g1"]),
        (vec!["x", "y"], vec![], vec!["x", "x*y"], vec!["g1", "g2"]),
        (
            vec!["x", "y", "z", "w", "u"],
            vec!["x*w - y*z", "x*u - 1"],
            vec!["x", "y", "z", "w"],
            vec!["g1", "g2"],
        ),
    ];
    for (vars, ideal_s, gens_s, a_s) in variants {
        let rr = ring(&vars, FieldCtx::Rat);
        let ideal = parse_all(&ideal_s, &rr);
        let s = PresentedRing::with_flags(rr, ideal, true, false, false);
        let gens = parse_all(&gens_s, &s.ring);
        let r = Subalgebra::new(s.clone(), gens);
        let a_tags = parse_all(&a_s, &r.tag_ring);
        let a_imgs: Vec<Poly> = a_tags.iter().map(|a| r.tags_to_ambient(a)).collect();
        let out = colon_step(&r, &SubIdeal { gens: a_tags }).unwrap();
        for h in &out.h {
            // soundness: a*h lands in R for every generator of a
            for a in &a_imgs {
                assert!(
                    r.membership(&s.nf(&a.mul(h, &ord))).is_some(),
                    "colon element fails a*h in R"
                );
            }
            // and h itself is new: it does not lie in R
            assert!(r.membership(h).is_none(), "emitted h already lies in R");
        }
    }
    // equality fixtures: H must be empty, and brute force confirms colon = R
    let eq_fixtures: Vec<(Vec<&str>, Vec<&str>, Vec<&str>)> = vec![
        (vec!["x", "y"], vec!["x", "y"], vec!["g1", "g2"]),
        (vec!["x", "y"], vec!["x", "y"], vec!["g1"]),
        (vec!["x"], vec!["x^2"], vec!["g1"]),
    ];
    for (vars, gens_s, a_s) in eq_fixtures {
        let rr = ring(&vars, FieldCtx::Rat);
        let s = PresentedRing::with_flags(rr, vec![], true, true, true);
        let gens = parse_all(&gens_s, &s.ring);
        let r = Subalgebra::new(s.clone(), gens);
        let a_tags = parse_all(&a_s, &r.tag_ring);
        let a_imgs: Vec<Poly> = a_tags.iter().map(|a| r.tags_to_ambient(a)).collect();
        let out = colon_step(&r, &SubIdeal { gens: a_tags }).unwrap();
        assert!(out.h.is_empty(), "H must be empty when the colon equals R");
        assert!(
            monomial_subalgebra_colon_equals_r(&s, &r, &a_imgs, 6),
            "brute force found a colon element outside R"
        );
    }
    report(2, "colon-step soundness and the H-empty contract", started, Duration::from_secs(5));
}

/// 3. The saturation stream on R = K[x, xy], a = (x) terminates in exactly 2
///    iterations and generates K[x, y].
#[test]
fn criterion_03_saturation_end_to_end() {
    let started = Instant::now();
    let s = PresentedRing::free(ring(&["x", "y"], FieldCtx::Rat));
    let tagr = ring(&["g1", "g2"], FieldCtx::Rat);
    let mut st = colon_saturation(
        &s,
        parse_all(&["x", "x*y"], &s.ring),
        parse_all(&["g1"], &tagr),
        32,
    )
    .unwrap();
    st.run(|_, _| {}).unwrap();
    assert_eq!(st.status(), StreamStatus::Terminated);
    assert_eq!(st.iterations(), 2, "must terminate in exactly 2 iterations");
    for v in ["x", "y"] {
        assert!(
            in_generated_algebra(&s, &st.f_gens, &parse_poly(v, &s.ring).unwrap()),
            "{v} must be in the emitted algebra"
        );
    }
    report(3, "saturation terminates in exactly 2 iterations with K[x,y]", started, Duration::from_secs(5));
}

/// 4. Quasi-affine: the punctured plane adds nothing; the quadric minus
///    V(x, y) generates K[x, y, v] (checked through the substitution oracle).
#[test]
fn criterion_04_quasi_affine() {
    let started = Instant::now();
    // (a) A^2 minus the origin
    let x = PresentedRing::free(ring(&["x", "y"], FieldCtx::Rat));
    let mut qa = quasi_affine_ring(&x, &parse_all(&["x", "y"], &x.ring), 16).unwrap();
    let mut batches = vec![];
    qa.stream.run(|i, b| batches.push((i, b.to_vec()))).unwrap();
    assert_eq!(qa.stream.status(), StreamStatus::Terminated);
    assert_eq!(batches.len(), 1, "no new generators beyond the coordinates");
    assert_eq!(batches[0].1.len(), 2);

    // (b) V(xw - yz) minus V(x, y)
    let rr = ring(&["x", "y", "z", "w"], FieldCtx::Rat);
    let x = PresentedRing::with_flags(
        rr.clone(),
        vec![parse_poly("x*w - y*z", &rr).unwrap()],
        true,
        true,
        false,
    );
    let mut qa = quasi_affine_ring(&x, &parse_all(&["x", "y"], &rr), 16).unwrap();
    qa.stream.run(|_, _| {}).unwrap();
    assert_eq!(qa.stream.status(), StreamStatus::Terminated);
    let s = &qa.localized;
    let ord = MonomialOrder::GrevLex;
    // oracle: v = z/x realized as z*z1; under z -> x v, w -> y v the algebra
    // is exactly K[x, y, v]
    let v = s.nf(&parse_poly("z", &s.ring).unwrap().mul(&s.ring.var_poly(qa.inv_var), &ord));
    let target = vec![
        parse_poly("x", &s.ring).unwrap(),
        parse_poly("y", &s.ring).unwrap(),
        v,
    ];
    for g in &qa.stream.f_gens {
        assert!(in_generated_algebra(s, &target, g), "emitted algebra exceeds K[x,y,v]");
    }
    for t in &target {
        assert!(in_generated_algebra(s, &qa.stream.f_gens, t), "emitted algebra misses K[x,y,v]");
    }
    report(4, "quasi-affine coordinate rings (punctured plane, quadric)", started, Duration::from_secs(20));
}

/// 5. Generic freeness and the Hilbert-14 intersection on K[x^2, x^3] and
///    K[x^2] inside K[x].
#[test]
fn criterion_05_freeness_and_field_intersection() {
    let started = Instant::now();
    let s = PresentedRing::free(ring(&["x"], FieldCtx::Rat));
    let gens = parse_all(&["x^2", "x^3"], &s.ring);
    let r = Subalgebra::new(s.clone(), gens.clone());
    let fr = generic_freeness(&s, &r).unwrap();
    assert!(fr.clears_into_rf(&r), "f * basis must lie in R_f[x] exactly");
    assert!(fr.one_is_standard(), "R_f must be a direct summand");
    let (_, mut st) = field_intersection(&s, gens, 16).unwrap();
    st.run(|_, _| {}).unwrap();
    assert_eq!(st.status(), StreamStatus::Terminated);
    assert!(in_generated_algebra(&s, &st.f_gens, &parse_poly("x", &s.ring).unwrap()));

    // R = K[x^2]: terminates with no new generators, and brute force on
    // degree <= 6 confirms nothing odd-degree is emitted
    let (_, mut st) = field_intersection(&s, parse_all(&["x^2"], &s.ring), 16).unwrap();
    let mut batches = vec![];
    st.run(|i, b| batches.push((i, b.to_vec()))).unwrap();
    assert_eq!(st.status(), StreamStatus::Terminated);
    assert_eq!(batches.len(), 1);
    for (_, b) in &batches {
        for g in b {
            for (_, m) in &g.terms {
                assert!(m.0[0] % 2 == 0 && m.0[0] <= 6, "odd-degree element emitted");
            }
        }
    }
    report(5, "generic freeness witness and Q(R) ∩ S streams", started, Duration::from_secs(10));
}

/// 6. Additive-group invariants in characteristic 0 against the
///    derivation-kernel oracle.
#[test]
fn criterion_06_ga_char0() {
    let started = Instant::now();
    // (i) mu(x) = x + t y: invariants K[y], oracle degree <= 5
    let x = PresentedRing::free(ring(&["x", "y"], FieldCtx::Rat));
    let ext = ring(&["x", "y", "t"], FieldCtx::Rat);
    let images = parse_all(&["x + t*y", "y"], &ext);
    let action = GaAction::new(x.clone(), "t".into(), images.clone()).unwrap();
    let mut st = ga_invariant_stream(&action, 16, false).unwrap();
    st.stream.run(|_, _| {}).unwrap();
    assert_eq!(st.stream.status(), StreamStatus::Terminated);
    for g in &st.stream.f_gens {
        assert!(action.is_invariant(g), "emitted generator fails exact invariance");
    }
    let oracle = invariant_space_le(&x.ring, &images, 1, 5);
    for w in &oracle {
        assert!(
            in_generated_algebra(&x, &st.stream.f_gens, w),
            "oracle invariant missing from the emitted algebra"
        );
    }

    // (ii) the Weitzenboeck action on A^3, oracle degree <= 6
    let w = PresentedRing::free(ring(&["x", "y", "z"], FieldCtx::Rat));
    let ext = ring(&["x", "y", "z", "t"], FieldCtx::Rat);
    let images = parse_all(&["x", "y + t*x", "z + t*y + 1/2*t^2*x"], &ext);
    let action = GaAction::new(w.clone(), "t".into(), images.clone()).unwrap();
    let mut st = ga_invariant_stream(&action, 16, false).unwrap();
    st.stream.run(|_, _| {}).unwrap();
    assert_eq!(st.stream.status(), StreamStatus::Terminated);
    for g in &st.stream.f_gens {
        assert!(action.is_invariant(g));
    }
    // the generated algebra is K[x, 2xz - y^2]
    for inv in ["x", "2*x*z - y^2"] {
        assert!(in_generated_algebra(&w, &st.stream.f_gens, &parse_poly(inv, &w.ring).unwrap()));
    }
    let oracle = invariant_space_le(&w.ring, &images, 1, 6);
    for v in &oracle {
        assert!(
            in_generated_algebra(&w, &st.stream.f_gens, v),
            "oracle invariant missing from the Weitzenboeck algebra"
        );
    }
    report(6, "G_a char-0 streams vs the derivation-kernel oracle", started, Duration::from_secs(60));
}

/// 7. The characteristic-2 example: mu of every monomial has even t-degree,
///    and the resultant characteristic polynomials behave as stated.
#[test]
fn criterion_07_char2_resultants() {
    let started = Instant::now();
    let x = PresentedRing::free(ring(&["x", "y"], FieldCtx::Fp(2)));
    let ext = ring(&["x", "y", "t"], FieldCtx::Fp(2));
    let images = parse_all(&["x + t*y + t^2", "y"], &ext);
    let action = GaAction::new(x.clone(), "t".into(), images).unwrap();
    for m in monomials_up_to(2, 4) {
        let p = Poly { terms: vec![(x.ring.field.one(), m)] };
        let coeffs = action.mu_expand(&p);
        let tdeg = coeffs.len().saturating_sub(1);
        assert!(tdeg % 2 == 0, "odd t-degree in char 2");
    }
    let f = parse_poly("x", &x.ring).unwrap();
    let ord = MonomialOrder::GrevLex;
    for u in ["x", "y"] {
        let u = parse_poly(u, &x.ring).unwrap();
        let p = resultant_charpoly(&action, &f, &u).unwrap();
        for c in &p {
            assert!(action.is_invariant(c), "resultant coefficient not invariant");
        }
        // P(u) lies in (x) K[x, y]
        let mut pu = Poly::zero();
        for (d, c) in p.iter().enumerate() {
            pu = pu.add(&c.mul(&u.pow(d as u32, &ord), &ord), &ord);
        }
        let gb = groebner_basis(&[f.clone()], &ord);
        assert!(normal_form(&pu, &gb).is_zero(), "P(u) must lie in (f)");
    }
    report(7, "char-2 obstruction and resultant characteristic polynomials", started, Duration::from_secs(5));
}

/// 8. Unipotent recursion: G_a^2 gives K[y, z] and the Heisenberg group gives
///    K[z]; outputs match the degree-4 linear-algebra oracles and every (T, d)
///    generator is exactly invariant.
#[test]
fn criterion_08_unipotent_recursion() {
    let started = Instant::now();
    for (fixture_name, expected, oracle_deg) in
        [("uni_ga2.itx", vec!["y", "z"], 4u32), ("uni_heisenberg.itx", vec!["z"], 4)]
    {
        let text = std::fs::read_to_string(fixture(fixture_name)).unwrap();
        let problem = parse_problem(&text).unwrap();
        let action = problem.unipotent_action().unwrap();
        let pres =
            itx::invariants::unipotent::unipotent_invariants(&action, false).unwrap();
        let sub = Subalgebra::new(action.x.clone(), pres.t_gens.clone());
        for t in &pres.t_gens {
            assert!(action.is_invariant(t), "T-generator fails symbolic invariance");
        }
        for d in &pres.d_tags {
            assert!(
                action.is_invariant(&sub.tags_to_ambient(d)),
                "d-generator fails symbolic invariance"
            );
        }
        let mut st = colon_saturation(
            &action.x,
            pres.t_gens.clone(),
            pres.d_tags.clone(),
            16,
        )
        .unwrap();
        st.run(|_, _| {}).unwrap();
        assert_eq!(st.status(), StreamStatus::Terminated);
        for v in &expected {
            assert!(in_generated_algebra(
                &action.x,
                &st.f_gens,
                &parse_poly(v, &action.x.ring).unwrap()
            ));
        }
        // the degree-bounded oracle is contained in the emitted algebra
        let k = action.params.len();
        let n = action.x.nvars();
        let emb: Vec<usize> = (0..n + k).collect();
        let images: Vec<Poly> =
            action.images.iter().map(|p| p.embed(&emb, n + k)).collect();
        let oracle = invariant_space_le(&action.x.ring, &images, k, oracle_deg);
        for w in &oracle {
            assert!(
                in_generated_algebra(&action.x, &st.f_gens, w),
                "oracle invariant missing for {fixture_name}"
            );
        }
    }
    report(8, "unipotent recursion vs degree-4 oracles", started, Duration::from_secs(120));
}

/// 9. Factorial pipeline: finitely generated invariant rings end with the
///    unit locus ideal, and the quadric-cone fixture stops at codimension 2.
#[test]
fn criterion_09_factorial_pipeline() {
    let started = Instant::now();
    for f in ["uni_ga_line.itx", "uni_ga2.itx"] {
        let text = std::fs::read_to_string(fixture(f)).unwrap();
        let problem = parse_problem(&text).unwrap();
        let action = problem.unipotent_action().unwrap();
        let out = factorial_invariants(&action, 16, false).unwrap();
        assert_eq!(out.codim2.status, StreamStatus::Terminated);
        assert!(
            out.codim2.g_tags.iter().any(|t| t.as_constant().is_some()),
            "locus must be the unit ideal for {f}"
        );
    }
    // the quadric-cone subalgebra stops at codimension exactly 2
    let s = PresentedRing::free(ring(&["x", "y", "v"], FieldCtx::Rat));
    let tagr = ring(&["g1", "g2", "g3", "g4"], FieldCtx::Rat);
    let out = codim2_presentation(
        &s,
        parse_all(&["x", "y", "x*v", "y*v"], &s.ring),
        parse_all(&["g1", "g2"], &tagr),
        16,
    )
    .unwrap();
    assert_eq!(out.stop, StopReason::CodimAtLeastTwo);
    assert_eq!(out.codim, 2, "krull_dimension must report codimension 2");
    assert_eq!(out.dim_s, 3);
    assert_eq!(out.dim_quotient, 1);
    report(9, "factorial pipeline and the codimension-2 stop", started, Duration::from_secs(60));
}

/// 10. Determinism: every fixture runs to byte-identical streams and reports.
#[test]
fn criterion_10_determinism() {
    let started = Instant::now();
    let runs: Vec<(&str, &str, Vec<&str>)> = vec![
        ("gb", "gb_linear.itx", vec!["--order", "lex"]),
        ("saturate", "sat_monomial.itx", vec![]),
        ("saturate", "sat_cusp.itx", vec![]),
        ("saturate", "sat_full_ring.itx", vec![]),
        ("saturate", "sat_monomial.itx", vec!["--max-iter", "1"]),
        ("colon", "sat_monomial.itx", vec![]),
        ("colon", "colon_quadric_loc.itx", vec![]),
        ("quasi-affine", "qa_punctured_plane.itx", vec![]),
        ("quasi-affine", "qa_quadric.itx", vec![]),
        ("quasi-affine", "qa_line.itx", vec![]),
        ("fgli", "sat_monomial.itx", vec![]),
        ("codim2", "codim2_cone.itx", vec![]),
        ("generic-freeness", "free_cusp.itx", vec![]),
        ("generic-freeness", "free_even.itx", vec![]),
        ("field-intersect", "free_cusp.itx", vec![]),
        ("field-intersect", "free_even.itx", vec![]),
        ("ga-invariants", "ga_translation.itx", vec![]),
        ("ga-invariants", "ga_weitzenboeck.itx", vec![]),
        ("ga-invariants", "ga_trivial.itx", vec![]),
        ("ga-invariants", "ga_char2.itx", vec![]),
        ("unipotent-invariants", "uni_ga2.itx", vec![]),
        ("unipotent-invariants", "uni_heisenberg.itx", vec![]),
        ("factorial-qa", "uni_ga_line.itx", vec![]),
        ("factorial-qa", "uni_ga2.itx", vec![]),
        ("saturate", "sat_monomial.itx", vec!["--json"]),
        ("codim2", "codim2_cone.itx", vec!["--json"]),
    ];
    for (sub, fix, flags) in runs {
        let mut args = vec![sub, &*Box::leak(fixture(fix).into_boxed_str())];
        args.extend(flags.iter());
        let (a, _, ca) = run_binary(&args);
        let (b, _, cb) = run_binary(&args);
        assert_eq!(a, b, "stream not byte-identical: {sub} {fix}");
        assert_eq!(ca, cb, "exit code differs: {sub} {fix}");
        assert!(ca == 0 || ca == 2, "fixture errored: {sub} {fix}");
    }
    report(10, "byte-identical reruns across every fixture", started, Duration::from_secs(120));
}
