//! Acceptance battery: one criterion per test, each printing a single
//! pass/fail line. Criterion 12 spawns the binary itself.

use std::time::{Duration, Instant};

use frtlab_core::carriers::builtin_q5;
use frtlab_core::dybm::{builtin_q5_map, DynamicalMap};
use frtlab_core::frt::{
    basic_rep, check_bialgebroid_axioms, demo_nondirect_sum, f_functor, g_functor, trivial_rep,
    vee, wedge, Channel, EvaluationBattery,
};
use frtlab_core::lop::{
    boxtimes, check_rll, is_rep_morphism, sigma_loperator, unit_loperator, SigmaContext,
};
use frtlab_core::sampling::Sampler;
use frtlab_core::vecth::{left_unit, right_unit};
use frtlab_core::wgroup::{evaluate_word, generate_group, SignedGen};

fn line(n: usize, name: &str, pass: bool) {
    println!("criterion {n:02}: {} — {name}", if pass { "pass" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {name}");
}

fn q5_ctx() -> SigmaContext {
    SigmaContext::from_map(&builtin_q5_map()).unwrap()
}

#[test]
fn criterion_01_builtin_map_fidelity() {
    let q5 = builtin_q5();
    let valid = q5.validate().unwrap().pass;
    let map = builtin_q5_map();
    let pass = valid && map.apply(0, 1, 2) == (4, 3) && map.apply(1, 1, 2) == (4, 2);
    line(1, "built-in quasigroup and frozen map values", pass);
}

#[test]
fn criterion_02_braid_certification_and_flip() {
    let map = builtin_q5_map();
    let mut pass = map.check_qdybe().pass
        && map.check_weight_zero().pass
        && map.check_bijective().pass;
    let mut s = Sampler::seeded(2);
    for _ in 0..100 {
        let h = 1 + s.below(4);
        let x = 1 + s.below(4);
        let action = s.action(h, x);
        let flip = DynamicalMap::flip(action);
        pass = pass
            && flip.check_qdybe().pass
            && flip.check_weight_zero().pass
            && flip.check_bijective().pass;
    }
    line(2, "braid relation, weight zero, bijectivity; flip on 100 random actions", pass);
}

#[test]
fn criterion_03_linearized_operator() {
    let ctx = q5_ctx();
    let pass = ctx.check_yb_operator().pass && check_rll(&ctx, &sigma_loperator(&ctx)).pass;
    line(3, "operator braid relation and exchange relation for the basic operator", pass);
}

#[test]
fn criterion_04_product_closure_and_unit_morphisms() {
    let ctx = q5_ctx();
    let sigma = sigma_loperator(&ctx);
    let unit = unit_loperator(&ctx);
    let square = boxtimes(&ctx, &sigma, &sigma);
    let mut pass = check_rll(&ctx, &square).pass && check_rll(&ctx, &unit).pass;
    let left = boxtimes(&ctx, &unit, &sigma);
    let right = boxtimes(&ctx, &sigma, &unit);
    pass = pass
        && is_rep_morphism(&ctx, &left_unit(&ctx.x), &left, &sigma)
        && is_rep_morphism(&ctx, &right_unit(&ctx.x), &right, &sigma);
    line(4, "product and unit operators; unit constraints are operator morphisms", pass);
}

#[test]
fn criterion_05_star_gamma_coherence() {
    let mut s = Sampler::seeded(5);
    let mut pass = true;
    let mut pairs = 0;
    while pairs < 500 {
        let h = 1 + s.below(4);
        let size = 1 + s.below(4);
        let v = s.object(h, size);
        for _ in 0..10 {
            let a = s.dhx_element(&v, 2);
            let b = s.dhx_element(&v, 2);
            let prod = a.star(&b);
            if prod.to_operator() != a.to_operator().mul(&b.to_operator()) {
                pass = false;
            }
            // Action on the full indicator basis of functions H -> V.
            for mu in 0..h {
                for w in 0..size {
                    let mut g = vec![vec![frtlab_core::scalar::int(0); size]; h];
                    g[mu][w] = frtlab_core::scalar::int(1);
                    if prod.apply(&g) != a.apply(&b.apply(&g)) {
                        pass = false;
                    }
                }
            }
            pairs += 1;
        }
    }
    line(5, "star product agrees with operator composition on 500 random pairs", pass);
}

#[test]
fn criterion_06_channels_kill_relations() {
    let ctx = q5_ctx();
    let sigma = sigma_loperator(&ctx);
    let square = boxtimes(&ctx, &sigma, &sigma);
    let battery = EvaluationBattery {
        channels: vec![
            ("counit".into(), Channel::Counit),
            ("basic".into(), Channel::Rep(basic_rep(&ctx))),
            ("square".into(), Channel::Rep(g_functor(&ctx, &square))),
        ],
    };
    let start = Instant::now();
    let reports = battery.certify(&ctx);
    let pass = reports.iter().all(|r| r.pass) && start.elapsed() < Duration::from_secs(30);
    line(6, "counit, basic, and squared channels kill all defining relations", pass);
}

#[test]
fn criterion_07_coalgebra_axioms() {
    let ctx = q5_ctx();
    let battery = EvaluationBattery::standard(&ctx);
    let report = check_bialgebroid_axioms(&ctx, &battery, &[]);
    line(7, "coassociativity, counit identities, and grading on the alphabet", report.pass());
}

#[test]
fn criterion_08_nondirect_sum_demo() {
    let report = demo_nondirect_sum(&q5_ctx());
    let pass = report.pass
        && report.counit_value_at_zero == "1"
        && report.unique_degree_pair == Some((1, 2))
        && report.degree_12_differs_from_34;
    line(8, "worked example: counit value, unique degree pair, distinct degrees", pass);
}

#[test]
fn criterion_09_functors_are_mutually_inverse() {
    let ctx = q5_ctx();
    let sigma = sigma_loperator(&ctx);
    let unit = unit_loperator(&ctx);
    let square = boxtimes(&ctx, &sigma, &sigma);
    let mut pass = true;
    for lop in [&sigma, &unit, &square] {
        let back = f_functor(&ctx, &g_functor(&ctx, lop));
        pass = pass && back.l == lop.l && back.l_inv == lop.l_inv;
    }
    for rep in [basic_rep(&ctx), trivial_rep(&ctx)] {
        let back = g_functor(&ctx, &f_functor(&ctx, &rep));
        pass = pass && back.l_img == rep.l_img && back.linv_img == rep.linv_img;
    }
    let direct = basic_rep(&ctx);
    let via = g_functor(&ctx, &sigma);
    pass = pass && direct.l_img == via.l_img && direct.linv_img == via.linv_img;
    line(9, "operator/representation functors invert each other on all test objects", pass);
}

#[test]
fn criterion_10_duality_round_trip() {
    let mut s = Sampler::seeded(10);
    let mut pass = true;
    for i in 0..200 {
        let h = if i % 2 == 0 { 5 } else { 1 + s.below(4) };
        let size = 1 + s.below(4);
        let v = s.object(h, size);
        let alpha = s.group_element(h);
        let beta = s.group_element(h);
        let u = s.homogeneous(&v, &beta, &alpha);
        let round = wedge(&vee(&u, &alpha, &beta, &v), &alpha, &beta, &v);
        if round != u {
            pass = false;
        }
    }
    line(10, "dual and co-dual invert each other on 200 random components", pass);
}

#[test]
fn criterion_11_group_machinery() {
    let map = builtin_q5_map();
    let closure = generate_group(&map.action, 100_000).unwrap();
    let mut pass = closure.order() == 120;
    for (g, w) in closure.elements.iter().zip(&closure.witnesses) {
        pass = pass && &evaluate_word(&map.action, w) == g;
    }
    let mut s = Sampler::seeded(11);
    for _ in 0..1000 {
        let rand_word = |s: &mut Sampler| -> Vec<SignedGen> {
            (0..s.below(6))
                .map(|_| SignedGen { gen: s.below(5), inverse: s.below(2) == 1 })
                .collect()
        };
        let w1 = rand_word(&mut s);
        let w2 = rand_word(&mut s);
        let mut cat = w1.clone();
        cat.extend(w2.iter().copied());
        let g1 = evaluate_word(&map.action, &w1);
        let g2 = evaluate_word(&map.action, &w2);
        let g = evaluate_word(&map.action, &cat);
        pass = pass && g == g1.compose(&g2);
        for lambda in 0..5 {
            pass = pass && g.apply(lambda) == g2.apply(g1.apply(lambda));
        }
    }
    line(11, "group closure with witnesses; word evaluation is multiplicative", pass);
}

#[test]
fn criterion_12_end_to_end_reproduce() {
    let start = Instant::now();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_frtlab"))
        .arg("reproduce")
        .status()
        .expect("failed to spawn binary");
    let elapsed = start.elapsed();
    let pass = status.success() && elapsed < Duration::from_secs(120);
    line(12, "full pipeline exits 0 in under two minutes", pass);
}
