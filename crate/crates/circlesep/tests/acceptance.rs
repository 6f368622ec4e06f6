//! The acceptance gate: every headline claim of the toolkit, checked end to
//! end at desk scale. Each test prints one `criterion NN (...): PASS/FAIL`
//! line; run with `--nocapture` to see the lines for passing criteria too.

use std::collections::BTreeMap;

use circlesep::circles::{
    avoidant_split_closed_form, count_oriented_incident, hull_face_count, incident_histogram,
    planar_interior_histogram, SideHistogram,
};
use circlesep::dotset::DotSet;
use circlesep::dynamics::{move_sequence_with_retries, MoveKind};
use circlesep::geom::DotConfig;
use circlesep::sample::{sample_config, sample_rotation};
use circlesep::separable::{avoidant_partition_count, enumerate_separable, oracle_separable};
use circlesep::voronoi::{build_graph, gluing_count_check, StrataCounts};

const SEEDS_MANY: u64 = 20;

fn criterion(number: u32, description: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number:02} ({description}): {verdict}");
    for f in failures {
        println!("  - {f}");
    }
    assert!(
        failures.is_empty(),
        "criterion {number:02} failed: {description}"
    );
}

#[test]
fn criterion_01_incident_splits() {
    let mut failures = Vec::new();
    for n in 3..=10 {
        for seed in 0..SEEDS_MANY {
            let cfg = sample_config(n, seed).unwrap();
            let hist = incident_histogram(&cfg).unwrap();
            if hist != SideHistogram::closed_form(n) {
                failures.push(format!("n={n} seed={seed}: incident histogram off"));
            }
        }
    }
    // The five-dot picture everything starts from: four circles split the
    // remaining two dots one per side.
    let cfg = sample_config(5, 0).unwrap();
    if incident_histogram(&cfg).unwrap().get(1, 1) != 4 {
        failures.push("n=5 anchor: the {1,1} split is not 4".into());
    }
    criterion(
        1,
        "incident split histogram matches 2(k+1)(l+1) and (k+1)^2 on seeded configs, n=3..10",
        &failures,
    );
}

#[test]
fn criterion_02_avoidant_splits() {
    let mut failures = Vec::new();
    for n in 4..=10 {
        for seed in 0..SEEDS_MANY {
            let cfg = sample_config(n, seed).unwrap();
            for k in 1..=n / 2 {
                let l = n - k;
                let counted = avoidant_partition_count(&cfg, k, l).unwrap();
                if counted != avoidant_split_closed_form(k, l) {
                    failures.push(format!("n={n} seed={seed} split {{{k},{l}}}: {counted}"));
                }
            }
        }
    }
    let cfg = sample_config(6, 0).unwrap();
    if avoidant_partition_count(&cfg, 3, 3).unwrap() != 7 {
        failures.push("n=6 anchor: the {3,3} split is not 7".into());
    }
    criterion(
        2,
        "avoidant partition counts match 2kl-k-l+2 and k^2-k+1, n=4..10",
        &failures,
    );
}

#[test]
fn criterion_03_hull_faces() {
    let mut failures = Vec::new();
    for n in 4..=10 {
        for seed in 0..SEEDS_MANY {
            let cfg = sample_config(n, seed).unwrap();
            let faces = hull_face_count(&cfg).unwrap();
            if faces != 2 * n as u64 - 4 {
                failures.push(format!("n={n} seed={seed}: {faces} hull faces"));
            }
        }
    }
    criterion(3, "every convex hull has exactly 2n-4 faces, n=4..10", &failures);
}

#[test]
fn criterion_04_deletion_identity() {
    // A circle through three of n dots leaves only n-3 off it, so the count
    // is identically zero past that order.
    fn counted_or_zero(cfg: &DotConfig, k: usize) -> u64 {
        if k + 3 > cfg.n() {
            0
        } else {
            count_oriented_incident(cfg, k).unwrap()
        }
    }

    let mut failures = Vec::new();
    for n in 5..=9 {
        for seed in 0..5 {
            let cfg = sample_config(n, seed).unwrap();
            let counted: Vec<u64> = (0..=n - 2).map(|k| counted_or_zero(&cfg, k)).collect();
            for d in 0..n {
                let smaller = cfg.without_dot(d).unwrap();
                for k in 1..=n - 2 {
                    let deleted = counted_or_zero(&smaller, k - 1);
                    let lhs = n as u64 * deleted;
                    let rhs =
                        (n - k - 2) as u64 * counted[k - 1] + k as u64 * counted[k];
                    if lhs != rhs {
                        failures.push(format!(
                            "n={n} seed={seed} drop dot {d} k={k}: {lhs} != {rhs}"
                        ));
                    }
                }
            }
        }
    }
    criterion(
        4,
        "dot deletion satisfies n*I(k-1,n-1) = (n-k-2)*I(k-1,n) + k*I(k,n) on counted values",
        &failures,
    );
}

#[test]
fn criterion_05_strata_counts() {
    let mut failures = Vec::new();
    for n in 4..=10 {
        for seed in 0..5 {
            let cfg = sample_config(n, seed).unwrap();
            for k in 1..n {
                let graph = build_graph(&cfg, k).unwrap();
                let counts = graph.strata_counts();
                if counts != StrataCounts::closed_form(k, n) {
                    failures.push(format!("n={n} seed={seed} k={k}: {counts:?}"));
                }
                if counts.euler_characteristic() != 2 {
                    failures.push(format!(
                        "n={n} seed={seed} k={k}: Euler characteristic {}",
                        counts.euler_characteristic()
                    ));
                }
            }
        }
    }
    let anchor = build_graph(&sample_config(6, 0).unwrap(), 2)
        .unwrap()
        .strata_counts();
    if (anchor.white_vertices, anchor.black_vertices, anchor.edges, anchor.regions)
        != (8, 12, 30, 12)
    {
        failures.push(format!("(k,n)=(2,6) anchor: {anchor:?}"));
    }
    criterion(
        5,
        "built graphs have the closed-form strata counts and Euler characteristic 2",
        &failures,
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut failures = Vec::new();
    for n in 4..=9 {
        for seed in 0..10 {
            let cfg = sample_config(n, seed).unwrap();
            let swept: Vec<_> = (1..n)
                .map(|k| enumerate_separable(&cfg, k).unwrap())
                .collect();
            for mask in 1..(1u64 << n) - 1 {
                let subset = DotSet::from_indices((0..n).filter(|i| mask >> i & 1 == 1));
                let expected = swept[subset.len() - 1].contains(&subset);
                if oracle_separable(&cfg, subset).unwrap() != expected {
                    failures.push(format!(
                        "n={n} seed={seed}: disagreement on {:?}",
                        subset.to_vec()
                    ));
                }
            }
        }
    }
    criterion(
        6,
        "the witness-triple sweep equals the exhaustive feasibility oracle, n=4..9",
        &failures,
    );
}

#[test]
fn criterion_07_antipodal_involution() {
    let mut failures = Vec::new();
    for (k, n) in [(2usize, 4usize), (3, 6), (4, 8)] {
        for seed in 0..5 {
            let cfg = sample_config(n, seed).unwrap();
            let graph = build_graph(&cfg, k).unwrap();
            if !graph.antipodal_check().unwrap() {
                failures.push(format!("(k,n)=({k},{n}) seed={seed}"));
            }
        }
    }
    criterion(
        7,
        "the antipodal involution maps each half-order graph onto itself, color-swapped",
        &failures,
    );
}

#[test]
fn criterion_08_interior_histograms_and_gluing() {
    let mut failures = Vec::new();

    // Two four-dot shapes with the same side counts but different interior
    // counts: a triangle around one dot, and a kite with none of the four
    // circles nested the same way.
    let triangle = DotConfig::parse_planar(&[("0", "0"), ("0", "1"), ("1", "-1"), ("-1", "-1")])
        .unwrap();
    let kite =
        DotConfig::parse_planar(&[("1", "0"), ("-1", "0"), ("0", "1/2"), ("0", "-1/2")]).unwrap();

    let tri_hist = planar_interior_histogram(&triangle).unwrap();
    let kite_hist = planar_interior_histogram(&kite).unwrap();
    if tri_hist != BTreeMap::from([(0, 3), (1, 1)]) {
        failures.push(format!("triangle interior histogram: {tri_hist:?}"));
    }
    if kite_hist != BTreeMap::from([(0, 2), (1, 2)]) {
        failures.push(format!("kite interior histogram: {kite_hist:?}"));
    }
    if incident_histogram(&triangle).unwrap() != incident_histogram(&kite).unwrap() {
        failures.push("side-count histograms differ between the two shapes".into());
    }

    for cfg in [&triangle, &kite] {
        for k in 2..4 {
            if !gluing_count_check(cfg, k).unwrap() {
                failures.push(format!("four-dot shape fails gluing at k={k}"));
            }
        }
    }
    for n in 4..=8 {
        for seed in 0..3 {
            let cfg = sample_config(n, seed).unwrap();
            for k in 2..n {
                if !gluing_count_check(&cfg, k).unwrap() {
                    failures.push(format!("n={n} seed={seed} k={k}: gluing failed"));
                }
            }
        }
    }
    criterion(
        8,
        "interior histograms are configuration-dependent while side counts are not, and vertex counts glue",
        &failures,
    );
}

#[test]
fn criterion_09_move_classification() {
    let mut failures = Vec::new();
    for (n, k) in [(4usize, 2usize), (5, 2), (6, 3)] {
        let expected = StrataCounts::closed_form(k, n);
        let mut events = 0usize;
        for seed in 0..10u64 {
            let start = sample_config(n, 1000 + seed).unwrap();
            let end = sample_config(n, 2000 + seed).unwrap();
            let (log, reached) =
                match move_sequence_with_retries(&start, &end, k, 8, 3000 + seed) {
                    Ok(pair) => pair,
                    Err(e) => {
                        failures.push(format!("(n,k)=({n},{k}) seed={seed}: {e}"));
                        continue;
                    }
                };
            let final_graph = build_graph(&reached, k).unwrap();
            if final_graph.strata_counts() != expected {
                failures.push(format!("(n,k)=({n},{k}) seed={seed}: end strata off"));
            }
            for event in &log.moves {
                events += 1;
                if event.counts_before != expected || event.counts_after != expected {
                    failures.push(format!(
                        "(n,k)=({n},{k}) seed={seed} quad {:?}: strata changed",
                        event.quadruple
                    ));
                }
                if n == 2 * k && event.kind != MoveKind::NoOp && !event.antipodal_paired {
                    failures.push(format!(
                        "(n,k)=({n},{k}) seed={seed} quad {:?}: unpaired {:?}",
                        event.quadruple, event.kind
                    ));
                }
            }
        }
        if events == 0 {
            failures.push(format!("(n,k)=({n},{k}): no wall crossings observed at all"));
        }
    }
    criterion(
        9,
        "wall crossings classify into the local moves, preserve strata, and pair antipodally at n=2k",
        &failures,
    );
}

#[test]
fn criterion_10_rotation_invariance() {
    let mut failures = Vec::new();
    for n in 3..=10 {
        for seed in 0..3 {
            let cfg = sample_config(n, seed).unwrap();
            let hist = incident_histogram(&cfg).unwrap();
            let hull = (n >= 4).then(|| hull_face_count(&cfg).unwrap());
            let avoidant: Vec<u64> = if n >= 4 {
                (1..=n / 2)
                    .map(|k| avoidant_partition_count(&cfg, k, n - k).unwrap())
                    .collect()
            } else {
                Vec::new()
            };

            let mut rotations_checked = 0;
            let mut rotation_seed = 0u64;
            while rotations_checked < 5 {
                rotation_seed += 1;
                assert!(rotation_seed < 100, "could not find 5 usable rotations");
                let rotation = sample_rotation(97 * seed + rotation_seed);
                // A rotation can land a dot on the projection pole, where
                // the planar chart breaks down; skip those.
                let Ok(rotated) = rotation.apply_config(&cfg) else {
                    continue;
                };
                rotations_checked += 1;
                if incident_histogram(&rotated).unwrap() != hist {
                    failures.push(format!("n={n} seed={seed}: incident histogram moved"));
                }
                if let Some(hull) = hull {
                    if hull_face_count(&rotated).unwrap() != hull {
                        failures.push(format!("n={n} seed={seed}: hull count moved"));
                    }
                }
                let rotated_avoidant: Vec<u64> = (1..=n / 2)
                    .take(avoidant.len())
                    .map(|k| avoidant_partition_count(&rotated, k, n - k).unwrap())
                    .collect();
                if rotated_avoidant != avoidant {
                    failures.push(format!("n={n} seed={seed}: avoidant counts moved"));
                }
            }
        }
    }
    criterion(
        10,
        "incident, avoidant, and hull counts survive exact rational rotations of the sphere",
        &failures,
    );
}
