//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
//! criterion fails.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use mmforge::bounds::{induced_tree_bound, star_bound, structural_bounds};
use mmforge::constructors::{
    bipartite_matrix, bipartite_witness, cartesian_k2_lift, complement_pair_base, complete_graph_matrix,
    complete_witness, d0_block, fiedler_join, hs04_join, hs04_lift_a_vector, hs04_lift_b_vector, hypercube_matrix,
    join_self_matrix, k10_base, mr_plus_two_matrix, one_step_double, one_zero_pairs_base5, one_zero_pairs_base7,
    parallel_paths_certificate, DoubleStepParams, EigvecTagged,
};
use mmforge::eiglab::{cluster_spectrum, eigh, random_orthogonal, CLUSTER_TOL};
use mmforge::graph::connected_graphs;
use mmforge::searcher::{cross_check, search_mm, SearchConfig, Verdict};
use mmforge::seed::{self, DEFAULT_SEED};
use mmforge::{Certificate, FamilyDescriptor, Graph, SpectrumSpec, SymMatrix};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: summary }
    } else {
        let shown: Vec<&str> = failures.iter().take(8).map(String::as_str).collect();
        let more = if failures.len() > 8 { format!(" (+{} more)", failures.len() - 8) } else { String::new() };
        Outcome { pass: false, detail: format!("{summary}; {} failures: {}{more}", failures.len(), shown.join(" | ")) }
    }
}

fn save<T: serde::Serialize>(dir: &Path, name: &str, value: &T) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(dir.join(format!("{name}.json")), text).expect("writable");
}

fn clusters(a: &SymMatrix) -> Vec<(f64, usize)> {
    cluster_spectrum(&eigh(a).unwrap().values, CLUSTER_TOL).iter().map(|c| (c.value, c.multiplicity)).collect()
}

fn close_pairs(got: &[(f64, usize)], want: &[(f64, usize)]) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g.0 - w.0).abs() <= 1e-6 && g.1 == w.1)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

/// Name, builder, expected pattern and expected (value, multiplicity) clusters.
type GoldenCase = (&'static str, fn() -> SymMatrix, Graph, Vec<(f64, usize)>);

fn golden_constants(dir: &Path) -> Outcome {
    let r3 = 3f64.sqrt();
    let cf = |p0, k| FamilyDescriptor::ComplementForm { p0, pairs: vec![(1, 1); k], r: 0 }.graph().unwrap();
    let cases: Vec<GoldenCase> = vec![
        ("complement_pair_base", complement_pair_base, cf(2, 1), vec![(0.0, 2), (1.0, 2)]),
        ("one_zero_pairs_base5", one_zero_pairs_base5, cf(1, 2), vec![(0.0, 3), (1.0, 2)]),
        ("one_zero_pairs_base7", one_zero_pairs_base7, cf(1, 3), vec![(0.0, 4), (1.0, 3)]),
        ("k10_base", k10_base, cf(1, 1), vec![(-r3, 1), (r3, 1), (3.0, 1)]),
    ];
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, build, graph, want) in cases {
        let ((cert, passed, got), t) = timed(|| {
            let a = build();
            let got = clusters(&a);
            let cert = Certificate::assemble(graph, a, SpectrumSpec::new(&want).unwrap(), 0, vec![name.into()]).unwrap();
            let passed = cert.verify().passed;
            (cert, passed, got)
        });
        slowest = slowest.max(t);
        if !passed || !close_pairs(&got, &want) {
            failures.push(format!("{name}: clusters {got:?}, want {want:?}"));
        }
        if t > Duration::from_millis(10) {
            failures.push(format!("{name}: {t:?} over 10 ms"));
        }
        save(dir, &format!("c1_{name}"), &cert);
    }
    outcome(&failures, format!("4 constant matrices, slowest {slowest:?}"))
}

fn complete_sweep(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let (_, took) = timed(|| {
        for n in 2..=8 {
            for k in 1..n {
                count += 1;
                let spec = SpectrumSpec::new(&[(0.0, k), (1.0, n - k)]).unwrap();
                match complete_graph_matrix(&spec, None, seed::derive(DEFAULT_SEED, (n * 10 + k) as u64)) {
                    Ok(c) if c.verify().passed => save(dir, &format!("c2_k{n}_{k}"), &c),
                    Ok(c) => failures.push(format!("K{n} ({k},{}): {:?}", n - k, c.verify().diagnostics)),
                    Err(e) => failures.push(format!("K{n} ({k},{}): {e}", n - k)),
                }
            }
            match complete_witness(n, DEFAULT_SEED) {
                Ok(w) if w.verify().passed && w.min_multiplicity() == n / 2 => {}
                _ => failures.push(format!("K{n}: witness for {}", n / 2)),
            }
        }
    });
    if took > Duration::from_secs(1) {
        failures.push(format!("took {took:?}"));
    }
    outcome(&failures, format!("{count} splits in {took:?}"))
}

fn lists(m: usize) -> Vec<Vec<f64>> {
    const GRID: [f64; 3] = [0.0, 1.0, 2.5];
    let mut out: Vec<Vec<f64>> = vec![vec![1.0], vec![2.5]];
    for _ in 1..m {
        out = out.into_iter().flat_map(|l| GRID.iter().map(move |&g| [l.clone(), vec![g]].concat())).collect();
    }
    out
}

fn bipartite_sweep(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut witness_failures = Vec::new();
    let mut count = 0;
    let (_, took) = timed(|| {
        for m in 1..=5 {
            for n in m..=10 - m {
                for (i, l) in lists(m).iter().enumerate() {
                    count += 1;
                    let c = match bipartite_matrix(m, n, l, seed::derive(DEFAULT_SEED, i as u64)) {
                        Ok(c) => c,
                        Err(e) => {
                            failures.push(format!("K{m},{n} {l:?}: {e}"));
                            continue;
                        }
                    };
                    let e = &c.eigen.eigenvalues;
                    let symmetric = (0..e.len()).all(|k| (e[k] + e[e.len() - 1 - k]).abs() <= 1e-6 * e[k].abs().max(1.0));
                    let zeros: usize = c.eigen.clusters.iter().filter(|c| c.value.abs() <= 1e-6).map(|c| c.multiplicity).sum();
                    let want_zeros = n - m + 2 * l.iter().filter(|&&x| x == 0.0).count();
                    if !c.verify().passed || !symmetric || zeros != want_zeros {
                        failures.push(format!("K{m},{n} {l:?}: symmetric {symmetric}, zeros {zeros}/{want_zeros}"));
                    }
                    if i == 0 {
                        save(dir, &format!("c3_k{m}_{n}"), &c);
                    }
                }
                let formula = if m == n { m } else { (m + n) / 3 };
                match bipartite_witness(m, n, DEFAULT_SEED) {
                    Ok(w) if w.verify().passed && w.min_multiplicity() == formula => save(dir, &format!("c3_w{m}_{n}"), &w),
                    Ok(w) => witness_failures.push(format!("K{m},{n}: witness {} vs {formula}", w.min_multiplicity())),
                    Err(e) => witness_failures.push(format!("K{m},{n}: no witness for {formula} ({e})")),
                }
            }
        }
    });
    if took > Duration::from_secs(2) {
        failures.push(format!("took {took:?}"));
    }
    failures.extend(witness_failures);
    outcome(&failures, format!("{count} spectra in {took:?}"))
}

fn mr_plus_two(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let (_, took) = timed(|| {
        for (i, d) in common::descriptors(10).iter().enumerate() {
            let n = d.order();
            for n1 in 0..=n - 4 {
                count += 1;
                match mr_plus_two_matrix(d, n1, n - 4 - n1, DEFAULT_SEED) {
                    Ok(c) if c.verify().passed && c.eigen.multiplicities() == vec![2 + n1, n - 2 - n1] => {
                        if i % 97 == 0 {
                            save(dir, &format!("c4_{i}_{n1}"), &c);
                        }
                    }
                    Ok(c) => failures.push(format!("{d:?} n1={n1}: {:?}", c.eigen.multiplicities())),
                    Err(e) => failures.push(format!("{d:?} n1={n1}: {e}")),
                }
            }
        }
    });
    if took > Duration::from_secs(5) {
        failures.push(format!("took {took:?}"));
    }
    outcome(&failures, format!("{count} descriptor splits in {took:?}"))
}

fn hypercubes(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut a = SymMatrix::identity(1);
    for s in 1..=3u32 {
        let b = cartesian_k2_lift(&a).unwrap();
        let n = b.n();
        let err = (b.as_matrix() * b.as_matrix() - DMatrix::identity(n, n) * 2.0).norm();
        if err > 1e-8 {
            failures.push(format!("s={s}: |B²-2I| = {err:e}"));
        }
        a = b.affine(1.0 / 2f64.sqrt(), 0.0);
        match hypercube_matrix(s) {
            Ok(c) if c.verify().passed && c.min_multiplicity() == 1 << (s - 1) => save(dir, &format!("c5_q{s}"), &c),
            _ => failures.push(format!("s={s}: witness")),
        }
    }
    outcome(&failures, "s = 1, 2, 3".into())
}

fn join_self(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = seed::rng(seed::derive_labeled(DEFAULT_SEED, "join_self"));
    let census: Vec<Vec<Graph>> = (1..=5).map(|n| connected_graphs(n).unwrap()).collect();
    for i in 0..20 {
        let n = rng.random_range(1..=5usize);
        let g = &census[n - 1][rng.random_range(0..census[n - 1].len())];
        match join_self_matrix(g, seed::derive(DEFAULT_SEED, i)) {
            Ok(c) => {
                let q = c.matrix.as_matrix();
                let err = (q * q - DMatrix::identity(2 * n, 2 * n)).norm();
                if !c.verify().passed || c.eigen.multiplicities() != vec![n, n] || err > 1e-8 {
                    failures.push(format!("{g:?}: {:?}, |Q²-I| = {err:e}", c.eigen.multiplicities()));
                }
                save(dir, &format!("c6_{i}"), &c);
            }
            Err(e) => failures.push(format!("{g:?}: {e}")),
        }
    }
    outcome(&failures, "20 graphs".into())
}

fn tridiagonal(n: usize, d: &[f64], sign: f64) -> SymMatrix {
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0 + sign * d[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    })
    .unwrap()
}

fn parallel_paths(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = seed::rng(seed::derive_labeled(DEFAULT_SEED, "parallel"));
    for n in 1..=6 {
        for trial in 0..10 {
            let mut d = vec![0.0; n];
            for j in 0..n / 2 {
                let mag: f64 = rng.random_range(0.2..2.0);
                d[j] = if rng.random_bool(0.5) { mag } else { -mag };
                d[n - 1 - j] = -d[j];
            }
            let c = match parallel_paths_certificate(n, &d) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("n={n} {d:?}: {e}"));
                    continue;
                }
            };
            let even = c.eigen.clusters.iter().all(|k| k.multiplicity % 2 == 0);
            let plus = eigh(&tridiagonal(n, &d, 1.0)).unwrap().values;
            let minus = eigh(&tridiagonal(n, &d, -1.0)).unwrap().values;
            let same = plus.iter().zip(&minus).all(|(a, b)| (a - b).abs() <= 1e-9);
            if !c.verify().passed || !even || !same {
                failures.push(format!("n={n} {d:?}: even {even}, equal spectra {same}"));
            }
            save(dir, &format!("c7_{n}_{trial}"), &c);
        }
    }
    outcome(&failures, "60 instances".into())
}

fn random_tagged(values: &[f64], tagged: usize, seed: u64) -> EigvecTagged {
    let n = values.len();
    let q = random_orthogonal(n, seed).into_matrix();
    let a = &q * DMatrix::from_diagonal(&DVector::from_column_slice(values)) * q.transpose();
    let vecs = (0..tagged).map(|k| q.column(k).iter().copied().collect()).collect();
    EigvecTagged::new(SymMatrix::from_lower(a).unwrap(), values[0], vecs).unwrap()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn spectra_match(a: &SymMatrix, want: Vec<f64>) -> bool {
    let got = eigh(a).unwrap().values;
    got.len() == want.len() && got.iter().zip(sorted(want)).all(|(g, w)| (g - w).abs() <= 1e-8)
}

fn residual(a: &SymMatrix, v: &[f64], lambda: f64) -> f64 {
    let x = DVector::from_column_slice(v);
    (a.as_matrix() * &x - &x * lambda).norm() / x.norm()
}

fn identities(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut rng = seed::rng(seed::derive_labeled(DEFAULT_SEED, "identities"));
    let mut record: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let draw = |rng: &mut rand_chacha::ChaCha8Rng, n: usize| -> Vec<f64> {
        (0..n).map(|_| rng.random_range(-3.0..3.0)).collect()
    };
    for i in 0..25u64 {
        // Fiedler join: the tagged pair is replaced by the eigenvalues of the 2x2 core.
        let (na, nb) = (rng.random_range(1..=5usize), rng.random_range(1..=5usize));
        let (va, vb) = (draw(&mut rng, na), draw(&mut rng, nb));
        let a = random_tagged(&va, 1, seed::derive(i, 1));
        let b = random_tagged(&vb, 1, seed::derive(i, 2));
        let rho: f64 = rng.random_range(0.2..2.0);
        let j = fiedler_join(&a, &b, rho).unwrap();
        let core = SymMatrix::from_rows(&[vec![va[0], rho], vec![rho, vb[0]]]).unwrap();
        let core_e = eigh(&core).unwrap();
        let want = [&va[1..], &vb[1..], &core_e.values[..]].concat();
        if !spectra_match(&j, want) {
            failures.push(format!("fiedler_join #{i}: spectrum"));
        }
        let u = &a.tagged_vectors[0];
        let v = &b.tagged_vectors[0];
        for k in 0..2 {
            let c = core_e.vector(k);
            let x: Vec<f64> = u.iter().map(|x| x * c[0]).chain(v.iter().map(|y| y * c[1])).collect();
            if residual(&j, &x, core_e.values[k]) > 1e-9 {
                failures.push(format!("fiedler_join #{i}: residual"));
            }
        }
        record.insert(format!("fiedler_{i}"), eigh(&j).unwrap().values);

        // D0 block.
        let a1: f64 = rng.random_range(-2.0..2.0);
        let t: f64 = rng.random_range(0.1..1.5);
        let a2 = a1 + t * rng.random_range(0.0..0.9);
        let p = DoubleStepParams::new(a1, a2, t, rng.random_range(0.0..TAU)).unwrap();
        let (d0, u0) = d0_block(&p).unwrap();
        if !spectra_match(&d0, vec![a1 + t, a1 + t, a2 - t, a2 - t]) {
            failures.push(format!("d0_block #{i}: spectrum"));
        }
        for (k, lambda) in [a1 + t, a1 + t, a2 - t, a2 - t].into_iter().enumerate() {
            let col: Vec<f64> = u0.as_matrix().column(k).iter().copied().collect();
            if residual(&d0, &col, lambda) > 1e-9 {
                failures.push(format!("d0_block #{i}: residual"));
            }
        }

        // Double step: both tagged doubles move by t in opposite directions.
        let (n1, n2) = (rng.random_range(2..=5usize), rng.random_range(2..=5usize));
        let (mut w1, mut w2) = (draw(&mut rng, n1), draw(&mut rng, n2));
        w1[1] = w1[0];
        w2[1] = w2[0];
        let t = (w2[0] - w1[0]).max(0.0) + rng.random_range(0.1..1.0);
        let b1 = random_tagged(&w1, 2, seed::derive(i, 3));
        let b2 = random_tagged(&w2, 2, seed::derive(i, 4));
        match one_step_double(&b1, &b2, t, rng.random_range(0.0..TAU), seed::derive(i, 5)) {
            Ok((up, down)) => {
                let want = [&w1[2..], &w2[2..], &[w1[0] + t, w1[0] + t, w2[0] - t, w2[0] - t][..]].concat();
                if !spectra_match(&up.matrix, want) {
                    failures.push(format!("one_step_double #{i}: spectrum"));
                }
                for tag in [&up, &down] {
                    for v in &tag.tagged_vectors {
                        if residual(&tag.matrix, v, tag.tagged_value) > 1e-9 {
                            failures.push(format!("one_step_double #{i}: residual"));
                        }
                    }
                }
                record.insert(format!("double_{i}"), eigh(&up.matrix).unwrap().values);
            }
            Err(e) => failures.push(format!("one_step_double #{i}: {e}")),
        }

        // Gluing: spec(A) together with spec(B) minus the pivot value.
        let na = rng.random_range(1..=5usize);
        let entries: Vec<f64> = (0..na * na).map(|_| rng.random_range(-2.0..2.0)).collect();
        let a = SymMatrix::from_fn(na, |i, j| entries[i * na + j]).unwrap();
        let pivot = rng.random_range(0..na);
        let nb = rng.random_range(1..=5usize);
        let mut vb = draw(&mut rng, nb);
        vb[0] = a.get(pivot, pivot);
        let b = random_tagged(&vb, 1, seed::derive(i, 6));
        let j = hs04_join(&a, pivot, &b).unwrap();
        let ea = eigh(&a).unwrap();
        if !spectra_match(&j, [&ea.values[..], &vb[1..]].concat()) {
            failures.push(format!("hs04_join #{i}: spectrum"));
        }
        let u = &b.tagged_vectors[0];
        for k in 0..na {
            if residual(&j, &hs04_lift_a_vector(&ea.vector(k), pivot, u), ea.values[k]) > 1e-9 {
                failures.push(format!("hs04_join #{i}: residual of a lifted vector"));
            }
        }
        let eb = eigh(&b.matrix).unwrap();
        for k in 0..vb.len() {
            let w = eb.vector(k);
            let overlap: f64 = w.iter().zip(u).map(|(x, y)| x * y).sum();
            if overlap.abs() < 1e-6 && residual(&j, &hs04_lift_b_vector(na, pivot, &w), eb.values[k]) > 1e-9 {
                failures.push(format!("hs04_join #{i}: residual of a block vector"));
            }
        }
        record.insert(format!("hs04_{i}"), eigh(&j).unwrap().values);
    }
    save(dir, "c8_spectra", &record);
    outcome(&failures, "100 instances".into())
}

fn census(dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let cfg = SearchConfig::default();
    let mut count = 0;
    let (_, took) = timed(|| {
        for n in 1..=5 {
            for (i, g) in connected_graphs(n).unwrap().iter().enumerate() {
                count += 1;
                let found = match search_mm(g, &cfg) {
                    Ok(f) => f,
                    Err(e) => {
                        failures.push(format!("{g:?}: {e}"));
                        continue;
                    }
                };
                let bound = structural_bounds(g, 10_000).unwrap();
                let check = cross_check(&bound, found.achieved);
                if !found.certificate.verify().passed || check.verdict == Verdict::Violation {
                    failures.push(format!("{g:?}: {check:?}"));
                }
                if g.is_tree() && n > 1 && found.achieved > 1 {
                    failures.push(format!("tree {g:?}: found {}", found.achieved));
                }
                save(dir, &format!("c9_{n}_{i}"), &found.certificate);
            }
        }
        for (name, g) in [
            ("K5", Graph::complete(5)),
            ("C4", Graph::cycle(4)),
            ("K4", Graph::complete(4)),
            ("K2,2", Graph::complete_bipartite(2, 2)),
        ] {
            match search_mm(&g, &cfg) {
                Ok(f) if f.achieved == 2 => {}
                Ok(f) => failures.push(format!("{name}: found {}", f.achieved)),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    });
    if took > Duration::from_secs(60) {
        failures.push(format!("took {took:?}"));
    }
    outcome(&failures, format!("{count} connected graphs in {took:?}"))
}

fn incomparability(dir: &Path) -> Outcome {
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    edges.extend((3..10).map(|v| (0, v)));
    let g = Graph::new(10, edges).unwrap();
    let star = star_bound(&g);
    let tree = induced_tree_bound(&g, None, 0).unwrap();
    save(dir, "c10_star", &star);
    save(dir, "c10_tree", &tree);
    let failures: Vec<String> = if star.upper == 1 && tree.upper == 2 {
        Vec::new()
    } else {
        vec![format!("star {}, tree {}", star.upper, tree.upper)]
    };
    outcome(&failures, format!("star bound {}, induced tree bound {}", star.upper, tree.upper))
}

type Criterion = (&'static str, fn(&Path) -> Outcome);

const CRITERIA: [Criterion; 10] = [
    ("golden constants", golden_constants),
    ("complete graph sweep", complete_sweep),
    ("complete bipartite sweep", bipartite_sweep),
    ("two-eigenvalue pipeline", mr_plus_two),
    ("hypercubes", hypercubes),
    ("join with itself", join_self),
    ("two parallel paths", parallel_paths),
    ("join identities", identities),
    ("bound soundness census", census),
    ("incomparable bounds", incomparability),
];

fn files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

fn main() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let mut all_pass = true;
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        let o = run(first.path());
        all_pass &= o.pass;
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    for (_, run) in CRITERIA.iter() {
        run(second.path());
    }
    let (a, b) = (files(first.path()), files(second.path()));
    let differing: Vec<&String> = a.keys().filter(|k| b.get(*k) != a.get(*k)).collect();
    let same = a.len() == b.len() && differing.is_empty();
    all_pass &= same;
    println!(
        "{} 11 determinism: {} certificate files, {} differ",
        if same { "PASS" } else { "FAIL" },
        a.len(),
        differing.len() + a.len().abs_diff(b.len())
    );
    if !all_pass {
        std::process::exit(1);
    }
}
