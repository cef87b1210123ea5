//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when any
//! criterion fails, except a criterion listed in `KNOWN_FAILURES` whose
//! failure matches the documented cause exactly.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use firstsplit::cutgraph::{f_h, CutFunction, IForm};
use firstsplit::sfm::{
    brute_force_minimize, check_pair, check_submodular, queyranne_minimize, BruteForceOptions, Oracle,
};
use firstsplit::simgen::{corpus, CorpusSpec};
use firstsplit::solver::{
    all_optimal_bipartition_partition, all_optimal_prefix_partition, approx_mdbp, exact_mdbp, exact_mdpp, SolverConfig,
};
use firstsplit::trees::{
    d1_cost, duplication_vertices, parse_newick_forest, parse_species_tree, Bipartition, GeneForest, GenomeId,
    LabelSet, SpeciesTree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail, with the cause their failure must match.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    4,
    "c <= 2d+1 only holds for single trees; forests of t trees guarantee c <= 2d+t",
)];

struct Verdict {
    passed: bool,
    detail: String,
    /// For known failures: whether the failure is the documented one.
    as_documented: bool,
}

impl Verdict {
    fn check(passed: bool, detail: String) -> Self {
        Verdict {
            passed,
            detail,
            as_documented: false,
        }
    }
}

type Criterion = (u32, &'static str, fn() -> Verdict);

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn bipartitions(f: &GeneForest) -> Vec<Bipartition> {
    let ids = f.ground().to_vec();
    let n = ids.len();
    (0..(1u64 << (n - 1)) - 1)
        .map(|rest| {
            let side = rest << 1 | 1;
            let left = LabelSet::from_ids(f.universe(), (0..n).filter(|&i| side >> i & 1 == 1).map(|i| ids[i]));
            Bipartition::from_side(f.ground(), left).unwrap()
        })
        .collect()
}

fn ids(f: &GeneForest, names: &[&str]) -> LabelSet {
    LabelSet::from_ids(f.universe(), names.iter().map(|n| f.genomes().get(n).unwrap()))
}

fn criterion_1() -> Verdict {
    let spec = CorpusSpec {
        max_k: 8,
        max_trees: 10,
        max_leaves: 8,
    };
    let (mut cuts, mut mismatches) = (0u64, 0u64);
    for f in corpus(spec, 1).take(200) {
        for b in bipartitions(&f) {
            cuts += 1;
            if f_h(&f, b.left()).unwrap() != d1_cost(&f, &b).unwrap() {
                mismatches += 1;
            }
        }
    }
    Verdict::check(
        mismatches == 0,
        format!("200 forests, {cuts} bipartitions, {mismatches} mismatches"),
    )
}

fn criterion_2() -> Verdict {
    let f = parse_newick_forest("((a,b),(c,d));").unwrap();
    let h = CutFunction::h(&f);
    let a = h.to_local(&ids(&f, &["a", "c"])).unwrap();
    let b = h.to_local(&ids(&f, &["a", "b"])).unwrap();
    let oracle = Oracle::new(h.clone());
    let values = [&a, &b, &a.union(&b), &a.intersection(&b)].map(|s| oracle.evaluate(s));
    let deficit = check_pair(&oracle, &a, &b).map_or(0, |v| v.deficit);
    Verdict::check(
        values == [1, 0, 1, 1] && deficit == 1,
        format!("f_H(A), f_H(B), f_H(A∪B), f_H(A∩B) = {values:?}, deficit {deficit}"),
    )
}

fn criterion_3() -> Verdict {
    let spec = CorpusSpec {
        max_k: 10,
        max_trees: 10,
        max_leaves: 8,
    };
    let mut violations = 0;
    for (i, f) in corpus(spec, 3).take(100).enumerate() {
        let oracle = Oracle::new(CutFunction::i(&f, IForm::Compact));
        violations += check_submodular(&oracle, 10_000, 1000 + i as u64).len();
    }
    Verdict::check(
        violations == 0,
        format!("100 forests x 10000 pairs, {violations} violations"),
    )
}

fn criterion_4() -> Verdict {
    let spec = CorpusSpec {
        max_k: 10,
        max_trees: 10,
        max_leaves: 8,
    };
    let (mut relaxed_over, mut realized_over, mut worst) = (0, 0, 0usize);
    let mut documented = true;
    for f in corpus(spec, 4).take(500) {
        let mut r = approx_mdbp(&f).unwrap();
        let check = r.certify(&f, &cfg()).unwrap();
        if !check.relaxed_within {
            relaxed_over += 1;
            worst = worst.max(r.relaxed_value - check.bound);
        }
        if !check.realized_within {
            realized_over += 1;
        }
        // The documented cause: everything provable for forests still holds.
        documented &= check.holds();
        if !check.relaxed_within || !check.realized_within {
            documented &= f.trees().len() > 1;
        }
    }
    Verdict {
        passed: relaxed_over == 0 && realized_over == 0,
        detail: format!(
            "500 forests: relaxed > 2d+1 in {relaxed_over} (max excess {worst}), realized > 2d+1 in {realized_over}; \
             2d+t and d <= realized <= relaxed held: {documented}"
        ),
        as_documented: documented,
    }
}

fn criterion_5() -> Verdict {
    let f = parse_newick_forest("((a,b),(c,d));").unwrap();
    let d = exact_mdbp(&f, &cfg(), false).unwrap().cost;
    let c = approx_mdbp(&f).unwrap().relaxed_value;
    Verdict::check(d == 0 && c == 1 && c == 2 * d + 1, format!("d = {d}, c = {c}"))
}

fn random_hypergraph(rng: &mut ChaCha8Rng) -> CutFunction {
    let n = rng.gen_range(2..=12);
    let edges = rng.gen_range(1..=3 * n);
    let hyperedges = (0..edges)
        .map(|_| {
            let mut set = LabelSet::empty(n);
            while set.len() < 2 {
                for i in 0..n {
                    if rng.gen_bool(0.3) {
                        set.insert(GenomeId::from(i));
                    }
                }
            }
            set
        })
        .collect();
    CutFunction::from_hyperedges(n, hyperedges)
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut oracles: Vec<CutFunction> = (0..100).map(|_| random_hypergraph(&mut rng)).collect();
    let spec = CorpusSpec {
        max_k: 12,
        max_trees: 6,
        max_leaves: 8,
    };
    oracles.extend(corpus(spec, 6).take(100).map(|f| CutFunction::i(&f, IForm::Compact)));
    let (mut wrong, mut over_budget) = (0, 0);
    for f in &oracles {
        let k = f.members().len() as u64;
        let q = queyranne_minimize(&Oracle::new(f.clone())).unwrap();
        let b = brute_force_minimize(&Oracle::new(f.clone()), BruteForceOptions::default()).unwrap();
        if q.value != b.value {
            wrong += 1;
        }
        if q.evaluations > 4 * k.pow(3) + 4 * k.pow(2) {
            over_budget += 1;
        }
    }
    Verdict::check(
        wrong == 0 && over_budget == 0,
        format!(
            "{} oracles, {wrong} value mismatches, {over_budget} over budget",
            oracles.len()
        ),
    )
}

fn criterion_7() -> Verdict {
    let spec = CorpusSpec {
        max_k: 8,
        max_trees: 5,
        max_leaves: 8,
    };
    let (mut unequal, mut max_m) = (0, 0);
    for f in corpus(spec, 7).take(200) {
        max_m = max_m.max(f.internal_count());
        if exact_mdpp(&f, &cfg()).unwrap().size != exact_mdbp(&f, &cfg(), false).unwrap().cost {
            unequal += 1;
        }
    }
    Verdict::check(
        unequal == 0 && max_m <= 40,
        format!("200 forests (m <= {max_m}), {unequal} unequal"),
    )
}

fn criterion_8() -> Verdict {
    let spec = CorpusSpec {
        max_k: 7,
        max_trees: 4,
        max_leaves: 6,
    };
    let mut unequal = 0;
    for f in corpus(spec, 8).take(100) {
        if all_optimal_bipartition_partition(&f, &cfg()).unwrap() != all_optimal_prefix_partition(&f, &cfg()).unwrap() {
            unequal += 1;
        }
    }
    let hand = parse_newick_forest("((a,c),(b,c));").unwrap();
    let pb = all_optimal_bipartition_partition(&hand, &cfg()).unwrap();
    let pp = all_optimal_prefix_partition(&hand, &cfg()).unwrap();
    let singletons = pb.to_names(hand.genomes()) == vec![vec!["a"], vec!["b"], vec!["c"]];
    Verdict::check(
        unequal == 0 && pb == pp && singletons,
        format!(
            "100 forests, {unequal} unequal; ((a,c),(b,c)) -> {:?}",
            pb.to_names(hand.genomes())
        ),
    )
}

fn topologies(names: &[&str]) -> Vec<String> {
    if names.len() == 1 {
        return vec![names[0].to_string()];
    }
    let mut out = Vec::new();
    for blocks in set_partitions(names).into_iter().filter(|b| b.len() >= 2) {
        let mut combos = vec![String::new()];
        for block in &blocks {
            let subs = topologies(block);
            combos = combos
                .iter()
                .flat_map(|c| {
                    subs.iter()
                        .map(move |s| if c.is_empty() { s.clone() } else { format!("{c},{s}") })
                })
                .collect();
        }
        out.extend(combos.into_iter().map(|c| format!("({c})")));
    }
    out
}

fn set_partitions<'a>(items: &[&'a str]) -> Vec<Vec<Vec<&'a str>>> {
    let Some((first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

fn criterion_9() -> Verdict {
    let f = parse_newick_forest("((a,b),(a,c));").unwrap();
    let s = parse_species_tree("((a,b),c);").unwrap();
    let dups = duplication_vertices(&f, &s).unwrap();
    let example = dups == vec![1];

    let letters = ["a", "b", "c", "d", "e"];
    let spec = CorpusSpec {
        max_k: 5,
        max_trees: 4,
        max_leaves: 7,
    };
    let (mut pairs, mut missed) = (0u64, 0u64);
    for k in 2..=5 {
        let species: Vec<SpeciesTree> = topologies(&letters[..k])
            .iter()
            .map(|t| parse_species_tree(&format!("{t};")).unwrap())
            .collect();
        for f in corpus(CorpusSpec { max_k: k, ..spec }, 9).take(10) {
            let mut text = f.to_newick().unwrap();
            for (i, l) in letters[..k].iter().enumerate() {
                text = text.replace(&format!("g{i}"), l);
            }
            let f = parse_newick_forest(&text).unwrap();
            let apparent: Vec<u32> = f
                .internal_vertices()
                .filter(|v| v.is_apparent_duplication())
                .map(|v| v.label)
                .collect();
            for s in &species {
                pairs += 1;
                let dups = duplication_vertices(&f, s).unwrap();
                missed += apparent.iter().filter(|v| !dups.contains(v)).count() as u64;
            }
        }
    }
    Verdict::check(
        example && missed == 0,
        format!(
            "example duplications {dups:?}; {pairs} forest/species pairs (k <= 5, all topologies), {missed} missed"
        ),
    )
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// `(golden name, arguments)`, run from the data directory in JSON format.
fn golden_runs() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("approx", vec!["approx", "cherries.nwk", "--certify"]),
        ("approx_twice", vec!["approx", "twice.nwk", "--certify"]),
        ("exact", vec!["exact", "hand.nwk", "--all"]),
        ("mdpp", vec!["mdpp", "shared.nwk"]),
        ("partition", vec!["partition", "hand.nwk"]),
        ("decide_edge", vec!["decide", "shared.nwk", "--edge", "a", "b", "1"]),
        ("decide_vertex", vec!["decide", "shared.nwk", "--vertex", "2"]),
        ("dupcost", vec!["dupcost", "shared.nwk", "species.nwk"]),
        ("greedy_approx", vec!["greedy", "mixed.nwk", "--method", "approx"]),
        ("greedy_exact", vec!["greedy", "mixed.nwk", "--method", "exact"]),
        ("graph_h", vec!["graph", "cherries.nwk", "--which", "H"]),
        ("graph_i", vec!["graph", "cherries.nwk", "--which", "I"]),
        (
            "gen_sim",
            vec![
                "gen",
                "sim",
                "--k",
                "6",
                "--families",
                "4",
                "--p-dup",
                "0.3",
                "--p-loss",
                "0.2",
                "--seed",
                "5",
            ],
        ),
        (
            "gen_uniform",
            vec![
                "gen", "uniform", "--k", "5", "--trees", "3", "--leaves", "5", "--seed", "5",
            ],
        ),
        (
            "check_input",
            vec!["check", "mixed.nwk", "--samples", "200", "--seed", "2"],
        ),
        (
            "check_random",
            vec!["check", "--random", "20", "--seed", "7", "--samples", "200"],
        ),
        (
            "bench",
            vec!["bench", "--sizes", "4,6,8", "--seed", "3", "--instances", "2"],
        ),
    ]
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_firstsplit"))
        .arg("--format")
        .arg("json")
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Verdict {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    let runs = golden_runs();
    for (name, args) in &runs {
        let (code_a, first) = run_cli(args);
        let (code_b, second) = run_cli(args);
        if code_a != code_b || first != second {
            problems.push(format!("{name}: reruns differ"));
            continue;
        }
        let path = golden_dir().join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &first).unwrap();
        }
        match std::fs::read(&path) {
            Ok(golden) if golden == first => {}
            Ok(_) => problems.push(format!("{name}: differs from golden file")),
            Err(_) => problems.push(format!("{name}: golden file missing")),
        }
    }
    Verdict::check(
        problems.is_empty(),
        format!(
            "{} commands run twice and compared with golden files; problems: {problems:?}",
            runs.len()
        ),
    )
}

fn main() {
    // Libtest flags such as --list or --nocapture may be passed; only --list matters.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 10] = [
        (1, "cut label size equals d1 on every bipartition", criterion_1),
        (2, "f_H non-submodularity witness", criterion_2),
        (3, "f_I submodularity audit", criterion_3),
        (4, "approximation bound c <= 2d+1", criterion_4),
        (5, "tightness witness", criterion_5),
        (6, "pendant-pair minimizer exactness and budget", criterion_6),
        (7, "cut/prefix duality", criterion_7),
        (8, "optimal bipartition and prefix partitions agree", criterion_8),
        (
            9,
            "LCA duplication cost and apparent-duplication dominance",
            criterion_9,
        ),
        (10, "byte-identical CLI reruns", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let started = Instant::now();
        let v = run();
        let secs = started.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        println!(
            "criterion {id:>2} {} {name} ({secs:.1}s): {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
        match (v.passed, known) {
            (true, _) => {}
            (false, Some((_, cause))) if v.as_documented => println!("             known failure: {cause}"),
            (false, _) => unexpected.push(id),
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
