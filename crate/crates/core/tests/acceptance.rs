//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Correctness criteria run on separate threads over a
//! shared corpus; the timing criterion runs alone afterwards.

use std::time::{Duration, Instant};

use modwidth::coloring::{chromatic_number, coloring_witness};
use modwidth::diversity::neighborhood_diversity;
use modwidth::gen::{connected_graphs, gen_bounded_mw, gen_gnp, gen_subdivided_star, rng};
use modwidth::ham::{
    ham_number, hamiltonian_cycle, hamiltonian_cycle_witness, path_partition_witness,
};
use modwidth::ilp::{feasible, IlpConfig, IlpInstance, LinearConstraint, Relation};
use modwidth::oracles::{
    brute_chromatic, brute_path_partition, check_coloring, check_hamiltonian_cycle,
    check_path_partition, held_karp_hamiltonian, Limits,
};
use modwidth::partition::{
    max_weighted_partition, max_weighted_partition_value_fast, WeightedPartitionProblem,
};
use modwidth::{add_universal, modular_decomposition, modular_width, substitute, Graph};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass {
        summary
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        format!(
            "{summary}; {} failures, e.g. {}",
            failures.len(),
            shown.join(" | ")
        )
    };
    Outcome { pass, detail }
}

fn g6(g: &Graph) -> String {
    let bytes = modwidth::format::emit(g, modwidth::format::Format::Graph6);
    String::from_utf8_lossy(&bytes).trim_end().to_string()
}

struct Corpus {
    connected: Vec<Graph>,
    random: Vec<Graph>,
}

impl Corpus {
    fn build() -> Self {
        let connected = (1..=7).flat_map(|n| connected_graphs(n).unwrap()).collect();
        let random = (0..500u64)
            .map(|seed| {
                let n = 1 + (seed as usize % 9);
                let p = [0.2, 0.35, 0.5, 0.65, 0.8][(seed / 9) as usize % 5];
                gen_gnp(n, p, 1000 + seed).unwrap()
            })
            .collect();
        Corpus { connected, random }
    }

    fn all(&self) -> impl Iterator<Item = &Graph> {
        self.connected.iter().chain(&self.random)
    }

    fn describe(&self) -> String {
        format!(
            "{} connected (n<=7) + {} random (n<=9)",
            self.connected.len(),
            self.random.len()
        )
    }
}

fn c1_coloring(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for g in c.all() {
        let (got, want) = (chromatic_number(g).unwrap(), brute_chromatic(g).unwrap());
        if got != want {
            failures.push(format!("{} chi {got} vs {want}", g6(g)));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("took {elapsed:?}"));
    }
    outcome(&failures, format!("{}, {elapsed:.2?}", c.describe()))
}

fn c2_hamiltonicity(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    for g in c.all() {
        let (cyc, hk) = (
            hamiltonian_cycle(g).unwrap(),
            held_karp_hamiltonian(g, false).unwrap(),
        );
        if cyc != hk {
            failures.push(format!("{} cycle {cyc} vs {hk}", g6(g)));
        }
        let (ham, brute) = (ham_number(g).unwrap(), brute_path_partition(g).unwrap());
        if ham != brute {
            failures.push(format!("{} ham {ham} vs {brute}", g6(g)));
        }
    }
    outcome(&failures, c.describe())
}

/// No induced P4, by checking every ordered 4-tuple.
fn is_cograph(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in g.neighbors(a).iter().copied() {
            for c in g.neighbors(b).iter().copied() {
                if c == a || g.has_edge(a, c) {
                    continue;
                }
                for d in g.neighbors(c).iter().copied() {
                    if d != b && d != a && !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn c3_identities(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    for k in 2..=5 {
        let w = modular_width(&modular_decomposition(&gen_subdivided_star(k).unwrap()).unwrap());
        if w != 2 * k + 1 {
            failures.push(format!("S_{k} width {w}"));
        }
    }
    let mut cographs = 0;
    for g in c.all() {
        let w = modular_width(&modular_decomposition(g).unwrap());
        if is_cograph(g) {
            cographs += 1;
            if w != 0 {
                failures.push(format!("cograph {} width {w}", g6(g)));
            }
        } else if w == 0 {
            failures.push(format!("non-cograph {} width 0", g6(g)));
        }
    }
    for seed in 0..50 {
        let g = gen_bounded_mw(60, 2, seed).unwrap();
        let w = modular_width(&modular_decomposition(&g).unwrap());
        if w != 0 || !is_cograph(&g) {
            failures.push(format!("width-2 expression seed {seed} width {w}"));
        }
        cographs += 1;
    }
    outcome(
        &failures,
        format!("S_2..S_5 widths 5,7,9,11; {cographs} cographs at width 0"),
    )
}

fn c4_width_vs_diversity(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let extra: Vec<Graph> = (0..40)
        .map(|s| gen_bounded_mw(80, 2 + s as usize % 7, s).unwrap())
        .collect();
    for g in c.all().chain(&extra) {
        count += 1;
        let w = modular_width(&modular_decomposition(g).unwrap());
        let (nd, _) = neighborhood_diversity(g).unwrap();
        if w > nd {
            failures.push(format!("{} mw {w} > nd {nd}", g6(g)));
        }
    }
    outcome(&failures, format!("{count} graphs"))
}

fn c5_clique_replacement() -> Outcome {
    let oracle = Limits {
        chromatic: 16,
        ..Limits::default()
    };
    let mut r = rng(2024);
    let mut failures = Vec::new();
    for i in 0..200 {
        let k = r.gen_range(1..=5);
        let q = gen_gnp(k, r.gen_range(0.2..0.9), r.gen()).unwrap();
        let parts: Vec<Graph> = (0..k)
            .map(|_| gen_gnp(r.gen_range(1..=3), r.gen_range(0.0..1.0), r.gen()).unwrap())
            .collect();
        let cliques: Vec<Graph> = parts
            .iter()
            .map(|p| Graph::complete(oracle.brute_chromatic(p).unwrap()))
            .collect();
        let h = substitute(&q, &parts).unwrap();
        let hk = substitute(&q, &cliques).unwrap();
        let (a, b) = (
            oracle.brute_chromatic(&hk).unwrap(),
            oracle.brute_chromatic(&h).unwrap(),
        );
        if a != b {
            failures.push(format!("instance {i}: chi(H_K) {a} vs chi(H) {b}"));
        }
    }
    outcome(
        &failures,
        "200 substitutions, quotient <= 5, parts <= 3".into(),
    )
}

fn c6_universal_vertices(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    for g in &c.connected {
        let want = brute_path_partition(g).unwrap();
        let h = (1..=g.n())
            .find(|&i| held_karp_hamiltonian(&add_universal(g, i), true).unwrap())
            .unwrap_or(usize::MAX);
        if h != want {
            failures.push(format!("{} h {h} vs ham {want}", g6(g)));
        }
    }
    outcome(&failures, format!("{} connected graphs", c.connected.len()))
}

fn c7_witnesses(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    let (mut colorings, mut partitions, mut cycles) = (0, 0, 0);
    for g in c.all() {
        let w = coloring_witness(g).unwrap();
        colorings += 1;
        if let Err(e) = check_coloring(g, &w.colors, w.count) {
            failures.push(format!("{} coloring: {e}", g6(g)));
        }
        let paths = path_partition_witness(g).unwrap();
        partitions += 1;
        if let Err(e) = check_path_partition(g, &paths) {
            failures.push(format!("{} paths: {e}", g6(g)));
        }
        if let Some(cycle) = hamiltonian_cycle_witness(g).unwrap() {
            cycles += 1;
            if let Err(e) = check_hamiltonian_cycle(g, &cycle) {
                failures.push(format!("{} cycle: {e}", g6(g)));
            }
        }
    }
    outcome(
        &failures,
        format!("{colorings} colorings, {partitions} path partitions, {cycles} cycles validated"),
    )
}

/// Least-squares slope of ln t against ln n.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(n, t)| (n.ln(), t.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn c8_scaling() -> Outcome {
    const SEEDS: u64 = 3;
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    let sizes = [250usize, 500, 1000, 2000];
    for (name, solve) in [
        (
            "chromatic_number",
            (|g: &Graph| chromatic_number(g).map(|_| ())) as fn(&Graph) -> _,
        ),
        ("ham_number", |g: &Graph| ham_number(g).map(|_| ())),
    ] {
        let mut points = Vec::new();
        let mut worst_at_max = Duration::ZERO;
        for &n in &sizes {
            let mut times: Vec<Duration> = (0..SEEDS)
                .map(|seed| {
                    let g = gen_bounded_mw(n, 8, 500 + seed).unwrap();
                    let start = Instant::now();
                    solve(&g).unwrap();
                    start.elapsed()
                })
                .collect();
            times.sort();
            if n == 2000 {
                worst_at_max = *times.last().unwrap();
            }
            points.push((n as f64, times[times.len() / 2].as_secs_f64()));
        }
        let slope = loglog_slope(&points);
        if worst_at_max > Duration::from_secs(10) {
            failures.push(format!("{name} took {worst_at_max:?} at n=2000"));
        }
        if slope > 1.5 {
            failures.push(format!("{name} exponent {slope:.2}"));
        }
        summary.push(format!(
            "{name}: n=2000 max {worst_at_max:.2?}, exponent {slope:.2}"
        ));
    }
    outcome(&failures, summary.join("; "))
}

fn grid_feasible(inst: &IlpInstance) -> bool {
    let p = inst.var_count();
    let mut x = inst.lower().to_vec();
    loop {
        if inst.is_satisfied(&x) {
            return true;
        }
        let mut i = 0;
        while i < p && x[i] == inst.upper()[i] {
            x[i] = inst.lower()[i];
            i += 1;
        }
        if i == p {
            return false;
        }
        x[i] += 1;
    }
}

fn c9_ilp() -> Outcome {
    let mut r = rng(99);
    let mut failures = Vec::new();
    let mut feasible_count = 0;
    for i in 0..1000 {
        let p = r.gen_range(1..=6);
        let lower: Vec<i64> = (0..p).map(|_| r.gen_range(0..=2)).collect();
        let upper: Vec<i64> = lower.iter().map(|&l| r.gen_range(l..=4)).collect();
        let mut inst = IlpInstance::new(lower, upper).unwrap();
        for _ in 0..r.gen_range(0..=8) {
            let coeffs: Vec<i64> = (0..p).map(|_| r.gen_range(-3..=3)).collect();
            let rel = [Relation::Le, Relation::Eq, Relation::Ge][r.gen_range(0..3)];
            let rhs = r.gen_range(-6..=10);
            inst.add_constraint(LinearConstraint::dense(&coeffs, rel, rhs))
                .unwrap();
        }
        let want = grid_feasible(&inst);
        feasible_count += want as usize;
        for lp_bounding in [true, false] {
            let cfg = IlpConfig {
                lp_bounding,
                ..IlpConfig::default()
            };
            match feasible(&inst, &cfg).unwrap() {
                Some(x) if !inst.is_satisfied(&x) => {
                    failures.push(format!("instance {i}: bad assignment"))
                }
                got if got.is_some() != want => failures.push(format!(
                    "instance {i}: lp={lp_bounding} says {} vs grid {want}",
                    got.is_some()
                )),
                _ => {}
            }
        }
    }
    outcome(
        &failures,
        format!("1000 instances ({feasible_count} feasible), with and without LP bounding"),
    )
}

fn c10_fast_partition() -> Outcome {
    let mut r = rng(10);
    let mut failures = Vec::new();
    for i in 0..300 {
        let n = r.gen_range(1..=12);
        let k = r.gen_range(1..=n);
        let m = r.gen_range(1..=6);
        let p = WeightedPartitionProblem::from_fn(n, k, |_| r.gen_range(-m..=m)).unwrap();
        let (a, b) = (
            max_weighted_partition_value_fast(&p).unwrap(),
            max_weighted_partition(&p).unwrap().value,
        );
        if a != b {
            failures.push(format!("instance {i} (n={n}, k={k}): fast {a} vs dp {b}"));
        }
    }
    outcome(&failures, "300 instances, |N| <= 12".into())
}

fn main() {
    let start = Instant::now();
    let corpus = Corpus::build();
    let names = [
        "coloring matches brute force",
        "Hamiltonicity and ham match oracles",
        "subdivided-star and cograph widths",
        "modular-width <= neighborhood diversity",
        "clique replacement preserves chi",
        "ham equals least universal-vertex count",
        "witnesses pass validators",
        "FPT scaling at width 8",
        "ILP agrees with grid enumeration",
        "fast partition path matches DP",
    ];
    let mut results: Vec<Outcome> = std::thread::scope(|s| {
        let c = &corpus;
        let handles = vec![
            s.spawn(move || c1_coloring(c)),
            s.spawn(move || c2_hamiltonicity(c)),
            s.spawn(move || c3_identities(c)),
            s.spawn(move || c4_width_vs_diversity(c)),
            s.spawn(c5_clique_replacement),
            s.spawn(move || c6_universal_vertices(c)),
            s.spawn(move || c7_witnesses(c)),
            s.spawn(c9_ilp),
            s.spawn(c10_fast_partition),
        ];
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| Outcome {
                    pass: false,
                    detail: "panicked".into(),
                })
            })
            .collect()
    });
    results.insert(7, c8_scaling());
    let mut failed = 0;
    for (i, (name, r)) in names.iter().zip(&results).enumerate() {
        let status = if r.pass { "PASS" } else { "FAIL" };
        failed += !r.pass as usize;
        println!("criterion {:>2} [{status}] {name}: {}", i + 1, r.detail);
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        names.len() - failed,
        names.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
