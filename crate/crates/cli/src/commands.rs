use std::path::Path;

use firstsplit::cutgraph::{build_h, build_i, export_dot};
use firstsplit::simgen::{random_forest_uniform, random_gene_forest, random_species_tree, SimConfig};
use firstsplit::solver::{
    all_optimal_bipartition_partition, all_optimal_prefix_partition, approx_mdbp, edge_in_some_min_cut, exact_mdbp,
    exact_mdpp, greedy_species_tree, vertex_in_some_min_prefix, Method, SolverConfig,
};
use firstsplit::trees::{
    duplication_vertices, parse_newick_forest, parse_species_tree, Bipartition, GeneForest, GenomeTable, LabelSet,
    Partition,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::{DecideArgs, GenCommand, MethodArg, WhichGraph};
use crate::output::{CliError, Outcome};

pub type CmdResult = Result<Outcome, CliError>;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::io(path, e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn forest_digest(text: &str, f: &GeneForest) -> Value {
    json!({
        "bytes": text.len(),
        "sha256": sha256_hex(text.as_bytes()),
        "k": f.ground().len(),
        "m": f.internal_count(),
        "trees": f.trees().len(),
    })
}

fn load(path: &Path) -> Result<(GeneForest, Value), CliError> {
    let text = read_text(path)?;
    let forest = parse_newick_forest(&text)?;
    let digest = forest_digest(&text, &forest);
    Ok((forest, digest))
}

pub fn names(table: &GenomeTable, set: &LabelSet) -> Value {
    json!(table.sorted_names(set))
}

pub fn bipartition_json(table: &GenomeTable, b: &Bipartition) -> Value {
    json!({"left": names(table, b.left()), "right": names(table, b.right())})
}

fn partition_json(table: &GenomeTable, p: &Partition) -> Value {
    json!(p.to_names(table))
}

pub fn approx(path: &Path, certify: bool, cfg: &SolverConfig) -> CmdResult {
    let (f, input) = load(path)?;
    let mut r = approx_mdbp(&f)?;
    let k = f.ground().len() as u64;
    let mut result = json!({
        "bipartition": bipartition_json(f.genomes(), &r.bipartition),
        "relaxed_value": r.relaxed_value,
        "realized_cost": r.realized_cost,
        "evaluations": r.evaluations,
        "evaluation_budget": 4 * k * k * k + 4 * k * k,
        "disconnected": r.disconnected,
    });
    let mut outcome_failure = None;
    if certify {
        let check = r.certify(&f, cfg)?;
        result["certificate"] = json!({
            "exact_cost": check.optimum,
            "bound_2d_plus_1": check.bound,
            "relaxed_within_2d_plus_1": check.relaxed_within,
            "realized_within_2d_plus_1": check.realized_within,
            "bound_2d_plus_trees": check.forest_bound,
            "relaxed_within_2d_plus_trees": check.relaxed_within_forest_bound,
            "sandwich": check.sandwich,
        });
        if !check.holds() {
            outcome_failure = Some("approximation certificate failed".to_string());
        }
    }
    Ok(Outcome {
        input: Some(input),
        result,
        failure: outcome_failure,
    })
}

pub fn exact(path: &Path, all: bool, cfg: &SolverConfig) -> CmdResult {
    let (f, input) = load(path)?;
    let r = exact_mdbp(&f, cfg, all)?;
    let mut result = json!({
        "bipartition": bipartition_json(f.genomes(), &r.bipartition),
        "cost": r.cost,
        "bipartitions_examined": r.bipartitions_examined,
    });
    if let Some(cuts) = &r.optimal_cuts {
        result["optimal_cuts"] = cuts.iter().map(|b| bipartition_json(f.genomes(), b)).collect();
    }
    Ok(Outcome::new(Some(input), result))
}

pub fn mdpp(path: &Path, cfg: &SolverConfig) -> CmdResult {
    let (f, input) = load(path)?;
    let r = exact_mdpp(&f, cfg)?;
    let result = json!({
        "size": r.size,
        "prefix": r.prefix.iter().collect::<Vec<_>>(),
        "partition": partition_json(f.genomes(), &r.induced_partition),
        "prefixes_examined": r.prefixes_examined,
    });
    Ok(Outcome::new(Some(input), result))
}

pub fn partition(path: &Path, cfg: &SolverConfig) -> CmdResult {
    let (f, input) = load(path)?;
    let pb = all_optimal_bipartition_partition(&f, cfg)?;
    let pp = all_optimal_prefix_partition(&f, cfg)?;
    let equal = pb == pp;
    let result = json!({
        "bipartition_meet": partition_json(f.genomes(), &pb),
        "prefix_meet": partition_json(f.genomes(), &pp),
        "equal": equal,
    });
    Ok(Outcome {
        input: Some(input),
        result,
        failure: (!equal).then(|| "optimal bipartition and prefix partitions differ".to_string()),
    })
}

pub fn decide(args: &DecideArgs, cfg: &SolverConfig) -> CmdResult {
    let (f, input) = load(&args.input)?;
    let result = if let Some(edge) = &args.edge {
        let genome = |n: &str| {
            f.genomes()
                .get(n)
                .ok_or_else(|| firstsplit::Error::UnknownGenome(n.to_string()))
        };
        let (u, v) = (genome(&edge[0])?, genome(&edge[1])?);
        let label: u32 = edge[2]
            .parse()
            .map_err(|_| CliError::Usage(format!("edge label must be a vertex number, got {:?}", edge[2])))?;
        let answer = edge_in_some_min_cut(&f, u, v, label, cfg)?;
        json!({"question": "edge", "u": edge[0], "v": edge[1], "label": label, "answer": answer})
    } else {
        let label = args.vertex.expect("clap requires one question");
        let answer = vertex_in_some_min_prefix(&f, label, cfg)?;
        json!({"question": "vertex", "label": label, "answer": answer})
    };
    Ok(Outcome::new(Some(input), result))
}

pub fn dupcost(forest: &Path, species: &Path) -> CmdResult {
    let (f, input) = load(forest)?;
    let species_text = read_text(species)?;
    let s = parse_species_tree(&species_text)?;
    let dups = duplication_vertices(&f, &s)?;
    let result = json!({"duplications": dups.len(), "vertices": dups});
    let input = json!({"forest": input, "species": {"bytes": species_text.len(), "sha256": sha256_hex(species_text.as_bytes()), "k": s.ground().len()}});
    Ok(Outcome::new(Some(input), result))
}

pub fn greedy(path: &Path, method: MethodArg, cfg: &SolverConfig) -> CmdResult {
    let (f, input) = load(path)?;
    let method = match method {
        MethodArg::Approx => Method::Approx,
        MethodArg::Exact => Method::Exact,
    };
    let r = greedy_species_tree(&f, method, cfg)?;
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "depth": s.depth,
                "genomes": names(f.genomes(), &s.genomes),
                "bipartition": s.bipartition.as_ref().map(|b| bipartition_json(f.genomes(), b)),
                "d1_cost": s.d1_cost,
                "unconstrained": s.unconstrained,
            })
        })
        .collect();
    let result = json!({
        "species_tree": r.tree.to_newick(),
        "total_duplications": r.total_duplications,
        "unconstrained_steps": r.steps.iter().filter(|s| s.unconstrained).count(),
        "steps": steps,
    });
    Ok(Outcome::new(Some(input), result))
}

pub fn graph(path: &Path, which: WhichGraph, dot: Option<&Path>) -> CmdResult {
    let (f, input) = load(path)?;
    let g = match which {
        WhichGraph::H => build_h(&f),
        WhichGraph::I => build_i(&f),
    };
    let text = export_dot(&g, f.genomes());
    let mut result = json!({
        "graph": g.kind().name(),
        "vertices": g.vertex_count(),
        "edges": g.edges().len(),
        "adjacent_pairs": g.adjacent_pair_count(),
        "labels": g.label_count(),
    });
    match dot {
        Some(out) => {
            write_text(out, &text)?;
            result["dot_file"] = json!(out.display().to_string());
        }
        None => result["dot"] = json!(text),
    }
    Ok(Outcome::new(Some(input), result))
}

pub fn gen(cmd: &GenCommand) -> CmdResult {
    match cmd {
        GenCommand::Sim {
            k,
            families,
            p_dup,
            p_loss,
            seed,
            out,
            species_out,
        } => {
            let cfg = SimConfig {
                k: *k,
                n_families: *families,
                p_dup: *p_dup,
                p_loss: *p_loss,
                seed: *seed,
            };
            let warnings = cfg.validate()?;
            let species = random_species_tree(*k, *seed)?;
            let (forest, report) = random_gene_forest(&species, &cfg)?;
            let forest_text = if forest.trees().is_empty() {
                String::new()
            } else {
                forest.to_newick()? + "\n"
            };
            let species_text = species.to_newick() + "\n";
            let mut result = json!({
                "species_tree": species.to_newick(),
                "families": families,
                "surviving_families": report.surviving_families,
                "dropped_families": report.dropped_families,
                "planted_root_duplications": report.planted_root_duplications,
                "warnings": warnings,
                "forest_sha256": sha256_hex(forest_text.as_bytes()),
            });
            emit(&mut result, "forest", out.as_deref(), &forest_text)?;
            if let Some(p) = species_out {
                write_text(p, &species_text)?;
                result["species_file"] = json!(p.display().to_string());
            }
            Ok(Outcome::new(None, result))
        }
        GenCommand::Uniform {
            k,
            trees,
            leaves,
            seed,
            out,
        } => {
            let forest = random_forest_uniform(*k, *trees, *leaves, *seed)?;
            let text = if forest.trees().is_empty() {
                String::new()
            } else {
                forest.to_newick()? + "\n"
            };
            let mut result = json!({
                "k": k,
                "realized_k": forest.ground().len(),
                "trees": trees,
                "leaves_per_tree": leaves,
                "forest_sha256": sha256_hex(text.as_bytes()),
            });
            emit(&mut result, "forest", out.as_deref(), &text)?;
            Ok(Outcome::new(None, result))
        }
    }
}

fn emit(result: &mut Value, key: &str, out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            write_text(p, text)?;
            result[format!("{key}_file")] = json!(p.display().to_string());
        }
        None => result[key] = json!(text.trim_end()),
    }
    Ok(())
}
