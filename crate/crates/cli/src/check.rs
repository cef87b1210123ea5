use std::time::Instant;

use firstsplit::cutgraph::{build_h, cut_label_size, f_h, CutFunction, IForm};
use firstsplit::sfm::{check_pair, check_submodular, Oracle};
use firstsplit::simgen::{corpus, random_forest_uniform, CorpusSpec};
use firstsplit::solver::{approx_mdbp, exact_mdbp, exact_mdpp, SolverConfig};
use firstsplit::trees::{d1_cost, parse_newick_forest, Bipartition, GeneForest, LabelSet};
use firstsplit::Error;
use serde_json::{json, Value};

use crate::args::{BenchArgs, CheckArgs};
use crate::commands::{forest_digest, read_text, sha256_hex, CmdResult};
use crate::output::{CliError, Outcome};

/// Genome limit for the all-bipartition sweep.
const SWEEP_MAX_K: usize = 16;

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: u64,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn json(&self, name: &str) -> Value {
        json!({"name": name, "checks": self.checks, "failures": self.failures, "passed": self.failures == 0})
    }
}

fn bipartitions(f: &GeneForest) -> impl Iterator<Item = Bipartition> + '_ {
    let ids = f.ground().to_vec();
    let n = ids.len();
    (0..(1u64 << (n - 1)) - 1).map(move |rest| {
        let side = rest << 1 | 1;
        let left = LabelSet::from_ids(f.universe(), (0..n).filter(|&i| side >> i & 1 == 1).map(|i| ids[i]));
        Bipartition::from_side(f.ground(), left).expect("proper side")
    })
}

#[derive(Default)]
struct Suites {
    lemma: Tally,
    submodular: Tally,
    duality: Tally,
    bound: Tally,
    stated_bound: Tally,
}

impl Suites {
    fn run(&mut self, f: &GeneForest, samples: usize, seed: u64, cfg: &SolverConfig) -> Result<(), CliError> {
        let k = f.ground().len();
        if k > SWEEP_MAX_K {
            return Err(Error::LimitExceeded {
                what: "genomes for the bipartition sweep",
                size: k,
                limit: SWEEP_MAX_K,
            }
            .into());
        }
        let h = build_h(f);
        for b in bipartitions(f) {
            let d1 = d1_cost(f, &b)?;
            self.lemma
                .record(f_h(f, b.left())? == d1 && cut_label_size(&h, &b)?.label_size == d1);
        }
        let oracle = Oracle::new(CutFunction::i(f, IForm::Compact));
        let violations = check_submodular(&oracle, samples, seed);
        self.submodular.checks += samples as u64;
        self.submodular.failures += violations.len() as u64;

        let cut = exact_mdbp(f, cfg, false)?;
        self.duality.record(exact_mdpp(f, cfg)?.size == cut.cost);

        let mut approx = approx_mdbp(f)?;
        let check = approx.certify(f, cfg)?;
        self.bound.record(check.holds());
        self.stated_bound.record(check.relaxed_within && check.realized_within);
        Ok(())
    }
}

/// The built-in f_H witness: A = {a,c}, B = {a,b} on ((a,b),(c,d)).
fn f_h_witness() -> Value {
    let f = parse_newick_forest("((a,b),(c,d));").expect("fixed forest");
    let h = CutFunction::h(&f);
    let set = |names: &[&str]| {
        let ids = names.iter().map(|n| f.genomes().get(n).expect("fixed genome"));
        h.to_local(&LabelSet::from_ids(f.universe(), ids))
            .expect("in ground set")
    };
    let (a, b) = (set(&["a", "c"]), set(&["a", "b"]));
    let oracle = Oracle::new(h.clone());
    let values = [&a, &b, &a.union(&b), &a.intersection(&b)].map(|s| oracle.evaluate(s));
    let deficit = check_pair(&oracle, &a, &b).map_or(0, |v| v.deficit);
    json!({
        "forest": "((a,b),(c,d));",
        "a": ["a", "c"],
        "b": ["a", "b"],
        "values": {"a": values[0], "b": values[1], "union": values[2], "intersection": values[3]},
        "deficit": deficit,
        "violation_reproduced": deficit == 1,
    })
}

pub fn check(args: &CheckArgs, cfg: &SolverConfig) -> CmdResult {
    let mut suites = Suites::default();
    let (input, instances) = match (&args.input, args.random) {
        (Some(path), None) => {
            let text = read_text(path)?;
            let f = parse_newick_forest(&text)?;
            suites.run(&f, args.samples, args.seed, cfg)?;
            (Some(forest_digest(&text, &f)), 1)
        }
        (None, Some(n)) => {
            let spec = CorpusSpec {
                max_k: args.max_k,
                max_trees: args.max_trees,
                max_leaves: args.max_leaves,
            };
            if spec.max_k < 2 || spec.max_trees < 1 || spec.max_leaves < 2 {
                return Err(CliError::Usage(
                    "corpus needs --max-k ≥ 2, --max-trees ≥ 1, --max-leaves ≥ 2".into(),
                ));
            }
            for (i, f) in corpus(spec, args.seed).take(n).enumerate() {
                suites.run(&f, args.samples, args.seed.wrapping_add(i as u64), cfg)?;
            }
            (None, n)
        }
        _ => return Err(CliError::Usage("give either an input file or --random N".into())),
    };
    let witness = f_h_witness();
    let witness_ok = witness["violation_reproduced"] == json!(true);
    let asserted = [
        suites.lemma.json("cut_label_size_equals_d1"),
        suites.submodular.json("f_i_submodular"),
        suites.duality.json("cut_prefix_duality"),
        suites.bound.json("approximation_sandwich_and_2d_plus_trees"),
    ];
    let failed: Vec<String> = asserted
        .iter()
        .filter(|s| s["passed"] != json!(true))
        .map(|s| s["name"].as_str().unwrap_or_default().to_string())
        .chain((!witness_ok).then(|| "f_h_witness".to_string()))
        .collect();
    let result = json!({
        "instances": instances,
        "suites": asserted,
        "f_h_witness": witness,
        "stated_bound_2d_plus_1": {
            "checks": suites.stated_bound.checks,
            "violations": suites.stated_bound.failures,
            "asserted": false,
        },
    });
    Ok(Outcome {
        input,
        result,
        failure: (!failed.is_empty()).then(|| format!("failed suites: {}", failed.join(", "))),
    })
}

pub fn bench(args: &BenchArgs, cfg: &SolverConfig, timing: bool) -> CmdResult {
    if args.sizes.iter().any(|&k| k < 2) {
        return Err(CliError::Usage("sizes must be at least 2".into()));
    }
    if let Some(&k) = args.sizes.iter().find(|&&k| k > cfg.exact_max_k) {
        return Err(Error::LimitExceeded {
            what: "genomes for exact bipartition search",
            size: k,
            limit: cfg.exact_max_k,
        }
        .into());
    }
    let mut over_budget = 0;
    let mut rows = Vec::new();
    for &k in &args.sizes {
        let mut instances = Vec::new();
        let mut ratios = Vec::new();
        for i in 0..args.instances {
            let seed = args.seed ^ (k as u64) << 32 ^ i as u64;
            let f = random_forest_uniform(k, args.trees, args.leaves, seed)?;
            let text = f.to_newick().unwrap_or_default();
            if f.ground().len() < 2 {
                continue;
            }
            let started = Instant::now();
            let approx = approx_mdbp(&f)?;
            let approx_ms = started.elapsed().as_secs_f64() * 1e3;
            let started = Instant::now();
            let exact = exact_mdbp(&f, cfg, false)?;
            let exact_ms = started.elapsed().as_secs_f64() * 1e3;
            let realized_k = f.ground().len() as u64;
            let budget = 4 * realized_k.pow(3) + 4 * realized_k.pow(2);
            if approx.evaluations > budget {
                over_budget += 1;
            }
            let ratio = approx.realized_cost as f64 / exact.cost.max(1) as f64;
            ratios.push(ratio);
            let mut row = json!({
                "sha256": sha256_hex(text.as_bytes()),
                "k": realized_k,
                "m": f.internal_count(),
                "evaluations": approx.evaluations,
                "evaluation_budget": budget,
                "relaxed_value": approx.relaxed_value,
                "realized_cost": approx.realized_cost,
                "exact_cost": exact.cost,
                "ratio": ratio,
            });
            if timing {
                row["approx_ms"] = json!(approx_ms);
                row["exact_ms"] = json!(exact_ms);
            }
            instances.push(row);
        }
        let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
        let mean_ratio = if ratios.is_empty() {
            0.0
        } else {
            ratios.iter().sum::<f64>() / ratios.len() as f64
        };
        rows.push(json!({"size": k, "instances": instances, "mean_ratio": mean_ratio, "max_ratio": max_ratio}));
    }
    Ok(Outcome {
        input: None,
        result: json!({"seed": args.seed, "sizes": rows}),
        failure: (over_budget > 0).then(|| format!("{over_budget} instances exceeded the evaluation budget")),
    })
}
