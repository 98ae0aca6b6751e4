//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL` line that bypasses output capture.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use signed_inertia::closed_forms::{cycle_inertia, path_inertia, target_index};
use signed_inertia::enumeration::{
    canonical_unicyclic_instances, enumerate_switching_classes, enumerate_underlying, verify_theorem, Constraints,
    OrderBound,
};
use signed_inertia::families::{
    gen_cycle, gen_fan_core, gen_fan_core_with_stray, gen_path, gen_theta, ThetaClass, ThetaSpec,
};
use signed_inertia::inertia::{adjacency_matrix, determinant_exact, float_crosscheck, inertia, negative_inertia};
use signed_inertia::invariants::{apply_switching, switching_equivalent};
use signed_inertia::predicates::Theorem;
use signed_inertia::sgraph::{Sign, SignedGraph};

use common::{
    all_sign_vectors, random_connected, random_graph, random_sign, random_switching, random_tree, random_unicyclic,
};

fn report(id: u32, ok: bool, detail: &str, elapsed: Duration, limit: Duration) -> bool {
    let in_time = elapsed <= limit;
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs());
    let line = format!("criterion {id}: {verdict} - {detail} [{timing}]\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    ok && in_time
}

fn cycles_and_paths() -> Vec<SignedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut out = Vec::new();
    for n in 3..=20 {
        for balanced in [true, false] {
            out.push(gen_cycle(n, balanced).unwrap());
        }
    }
    for n in 1..=20 {
        for _ in 0..10 {
            let signs: Vec<Sign> = (1..n).map(|_| random_sign(&mut rng)).collect();
            out.push(gen_path(n, &signs).unwrap());
        }
    }
    out
}

#[test]
fn criterion_1_cycles_and_paths() {
    let t = Instant::now();
    let mut bad = 0;
    let mut count = 0;
    for g in cycles_and_paths() {
        count += 1;
        let n = g.order();
        let expected = if g.size() == n {
            let balanced = g.edges().iter().all(|e| e.sign == Sign::Pos);
            cycle_inertia(n, balanced).unwrap()
        } else {
            path_inertia(n).unwrap()
        };
        if negative_inertia(&g) != expected {
            bad += 1;
        }
    }
    let ok = report(
        1,
        bad == 0,
        &format!("{count} cycles/paths, {bad} mismatches"),
        t.elapsed(),
        Duration::from_secs(1),
    );
    assert!(ok);
}

fn pendant_instances() -> Vec<SignedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    // Unicyclic draws without a pendant (bare cycles) are redrawn.
    (0..500)
        .map(|i| {
            let n = 3 + i % 12;
            loop {
                let g = if i % 2 == 0 {
                    random_tree(&mut rng, n)
                } else {
                    random_unicyclic(&mut rng, n.max(4))
                };
                if !g.pendant_vertices().is_empty() {
                    return g;
                }
            }
        })
        .collect()
}

#[test]
fn criterion_2_pendant_reduction() {
    let t = Instant::now();
    let mut bad = 0;
    let mut checked = 0;
    for g in pendant_instances() {
        let Some(u) = g.pendant_vertices().into_iter().next() else {
            continue;
        };
        let v = g.neighbors(u).next().unwrap();
        let reduced = g.remove_vertices(&[u, v]).graph;
        checked += 1;
        if negative_inertia(&g) != negative_inertia(&reduced) + 1 {
            bad += 1;
        }
    }
    let ok = report(
        2,
        bad == 0 && checked == 500,
        &format!("{checked} graphs, {bad} violations"),
        t.elapsed(),
        Duration::from_secs(5),
    );
    assert!(ok);
}

fn switching_instances() -> Vec<(SignedGraph, SignedGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..200)
        .map(|i| {
            let g = random_connected(&mut rng, 4 + i % 10, 0.25);
            let theta = random_switching(&mut rng, g.order());
            let h = apply_switching(&g, &theta).unwrap();
            (g, h)
        })
        .collect()
}

#[test]
fn criterion_3_switching_invariance() {
    let t = Instant::now();
    let pairs = switching_instances();
    let bad = pairs.iter().filter(|(g, h)| inertia(g) != inertia(h)).count();
    let ok = report(
        3,
        bad == 0,
        &format!("{} pairs, {bad} differ", pairs.len()),
        t.elapsed(),
        Duration::from_secs(5),
    );
    assert!(ok);
}

fn theta_free_signs(a: usize, b: usize, c: usize) -> Vec<SignedGraph> {
    all_sign_vectors(c - 1)
        .map(|s| gen_theta(&ThetaSpec::with_outer(a, b, c, s)).unwrap())
        .collect()
}

fn fan_with_stray_all() -> Vec<([Sign; 7], SignedGraph)> {
    all_sign_vectors(7)
        .map(|s| {
            let arr: [Sign; 7] = s.try_into().unwrap();
            (arr, gen_fan_core_with_stray(arr))
        })
        .collect()
}

fn proof_value_instances() -> Vec<SignedGraph> {
    let mut out = vec![gen_fan_core([Sign::Pos; 6])];
    out.extend(fan_with_stray_all().into_iter().map(|(_, g)| g));
    for (a, b, c) in [
        (5, 3, 6),
        (6, 2, 6),
        (4, 4, 6),
        (6, 6, 6),
        (5, 3, 5),
        (4, 4, 5),
        (5, 4, 5),
    ] {
        out.extend(theta_free_signs(a, b, c));
    }
    out
}

#[test]
fn criterion_4_proof_values() {
    let t = Instant::now();
    let mut failures = Vec::new();
    if negative_inertia(&gen_fan_core([Sign::Pos; 6])) != 4 {
        failures.push("fan core".to_string());
    }
    let stray: Vec<usize> = fan_with_stray_all().iter().map(|(_, g)| negative_inertia(g)).collect();
    let low = stray.iter().filter(|&&i| i != 5).count();
    if low > 0 {
        failures.push(format!(
            "fan core with stray pendant: {low} of {} sign choices give i- != 5",
            stray.len()
        ));
    }
    let all_equal = |a, b, c, want: usize| theta_free_signs(a, b, c).iter().all(|g| negative_inertia(g) == want);
    for (a, b, c, want) in [(5, 3, 6, 5), (6, 2, 6, 5), (4, 4, 6, 5), (6, 6, 6, 7)] {
        if !all_equal(a, b, c, want) {
            failures.push(format!("B({a},{b},{c})"));
        }
    }
    let class = |a, b, c, k| negative_inertia(&gen_theta(&ThetaSpec::class(a, b, c, k)).unwrap());
    for (a, b, c, k, want) in [
        (5, 3, 5, ThetaClass::Positive, 4),
        (5, 3, 5, ThetaClass::Negative, 4),
        (4, 4, 5, ThetaClass::Positive, 5),
        (4, 4, 5, ThetaClass::Negative, 4),
        (5, 4, 5, ThetaClass::Positive, 5),
        (5, 4, 5, ThetaClass::Negative, 5),
    ] {
        if class(a, b, c, k) != want {
            failures.push(format!("B({a},{b},{c}) {k:?}"));
        }
    }
    let detail = if failures.is_empty() {
        "all proof values reproduced".to_string()
    } else {
        failures.join("; ")
    };
    let ok = report(4, failures.is_empty(), &detail, t.elapsed(), Duration::from_secs(5));
    assert!(ok, "{detail}");
}

#[test]
fn criterion_5_sixteen_of_thirty_two() {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (a, b, c, class) in [(5, 4, 6, ThetaClass::Positive), (6, 3, 6, ThetaClass::Negative)] {
        let rep = gen_theta(&ThetaSpec::class(a, b, c, class)).unwrap();
        let hits: Vec<SignedGraph> = theta_free_signs(a, b, c)
            .into_iter()
            .filter(|g| negative_inertia(g) == 5)
            .collect();
        let same = hits.iter().all(|g| switching_equivalent(g, &rep));
        ok &= hits.len() == 16 && same;
        parts.push(format!(
            "B({a},{b},{c}): {} of 32 give 5, all equivalent to {class:?}: {same}",
            hits.len()
        ));
    }
    let ok = report(5, ok, &parts.join("; "), t.elapsed(), Duration::from_secs(10));
    assert!(ok);
}

fn unicyclic_instances_all() -> Vec<SignedGraph> {
    (5..=9)
        .flat_map(|g| canonical_unicyclic_instances(g, g + 6, 3))
        .map(|i| i.graph)
        .collect()
}

#[test]
fn criterion_6_canonical_unicyclic() {
    let t = Instant::now();
    let r = verify_theorem(
        Theorem::CanonicalUnicyclic,
        &Constraints::new(5, 9, OrderBound::AboveGirth(6)),
    )
    .unwrap();
    let detail = format!(
        "{} instances, {} mismatches",
        r.hypothesis_graphs,
        r.counterexamples.len()
    );
    let ok = report(6, r.confirmed, &detail, t.elapsed(), Duration::from_secs(120));
    assert!(ok, "{:?}", r.counterexamples);
}

fn desk_scale_graphs() -> Vec<SignedGraph> {
    let mut out = Vec::new();
    for (g, n) in [(6, 10), (7, 11)] {
        for u in enumerate_underlying(n, g, g, None).unwrap() {
            out.extend(enumerate_switching_classes(&u));
        }
    }
    out
}

#[test]
fn criterion_7_far_and_near_classifiers() {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut near_clean = [true, true];
    for (g, n) in [(6, 10), (7, 11)] {
        let c = Constraints::new(g, g, OrderBound::Absolute(n));
        let far = verify_theorem(Theorem::FarVertex, &c).unwrap();
        ok &= far.counterexamples.is_empty();
        parts.push(format!(
            "g={g} far: {} graphs, {} counterexamples",
            far.hypothesis_graphs,
            far.counterexamples.len()
        ));
        let near = verify_theorem(Theorem::NearVertices, &c).unwrap();
        for (i, o) in near.readings.iter().enumerate() {
            near_clean[i] &= o.mismatches == 0;
        }
        let counts: Vec<String> = near
            .readings
            .iter()
            .map(|o| format!("{:?} {}", o.reading, o.mismatches))
            .collect();
        parts.push(format!(
            "g={g} near: {} graphs, mismatches [{}], preferred {:?}",
            near.hypothesis_graphs,
            counts.join(", "),
            near.preferred_reading
        ));
    }
    let consistent = near_clean.iter().filter(|&&c| c).count();
    ok &= consistent == 1;
    parts.push(format!("consistent readings: {consistent}"));
    let detail = parts.join("; ");
    let ok = report(7, ok, &detail, t.elapsed(), Duration::from_secs(900));
    assert!(ok, "{detail}");
}

#[test]
fn criterion_8_float_agreement() {
    let t = Instant::now();
    let mut graphs = cycles_and_paths();
    graphs.extend(pendant_instances());
    graphs.extend(switching_instances().into_iter().flat_map(|(g, h)| [g, h]));
    graphs.extend(proof_value_instances());
    graphs.extend(unicyclic_instances_all());
    graphs.extend(desk_scale_graphs());
    let bad = graphs
        .iter()
        .filter(|g| float_crosscheck(g, 1e-8).map_or(true, |f| f != inertia(g)))
        .count();
    let ok = graphs.len() >= 1000 && bad == 0;
    let ok = report(
        8,
        ok,
        &format!("{} graphs, {bad} disagreements", graphs.len()),
        t.elapsed(),
        Duration::from_secs(300),
    );
    assert!(ok);
}

#[test]
fn criterion_9_determinant_law() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0;
    let mut singular = 0;
    for i in 0..300 {
        let g = random_graph(&mut rng, 2 + i % 12, 0.3);
        let det = determinant_exact(&adjacency_matrix(&g));
        let tr = inertia(&g);
        if det.is_zero() != (tr.nullity > 0) {
            bad += 1;
        }
        if det.is_zero() {
            singular += 1;
        } else if det.is_negative() != (tr.i_minus % 2 == 1) {
            bad += 1;
        }
    }
    let ok = report(
        9,
        bad == 0,
        &format!("300 graphs ({singular} singular), {bad} violations"),
        t.elapsed(),
        Duration::from_secs(30),
    );
    assert!(ok);
}

#[test]
fn target_index_matches_girths() {
    assert_eq!(target_index(6), 4);
    assert_eq!(target_index(7), 5);
}
