use hypergrass::dual_graph::{build_dual_graph, cubical_distance, cubical_distance_to_subset};
use hypergrass::grassmann::{
    extract_arrangement, format_rational, plucker_all, second_largest_witness, torus_normalize, ArrangementPartition, Arithmetic,
    PluckerVector, RationalMatrix,
};
use hypergrass::order_theory::{build_young_grid, empirical_poset, grid_inequalities, infer_poset, swapping_distance, MinorPoset};
use hypergrass::triangulation::{enumerate_maximal_sorted, permutation_from_collection};
use hypergrass::verification::{ExperimentParams, ExperimentReport, VerifyOptions};
use hypergrass::{KSubset, SortedCollection};
use serde_json::{json, Value};

use crate::config::Config;
use crate::{parse, ArithArg, CellArgs, CliError, Command, Rendered};

fn usage(e: String) -> CliError {
    CliError::Usage(e)
}

fn cell(c: &CellArgs) -> Result<SortedCollection, CliError> {
    parse::cell(c.n, c.k, c.j.as_deref(), c.omega.as_deref()).map_err(usage)
}

fn spaced(members: &[KSubset]) -> String {
    members.iter().map(|m| m.compact()).collect::<Vec<_>>().join(" ")
}

fn arithmetic(a: ArithArg, n: usize, cfg: &Config) -> Arithmetic {
    match a {
        ArithArg::Auto => Arithmetic::auto(n, &cfg.limits),
        ArithArg::Exact => Arithmetic::Exact,
        ArithArg::Float => Arithmetic::Float { bits: cfg.limits.precision_bits },
    }
}

fn read_matrix(path: &std::path::Path) -> Result<RationalMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(RationalMatrix::from_json_str(&text)?)
}

fn minors_csv(p: &PluckerVector, arr: &ArrangementPartition) -> String {
    let mut out = String::from("subset,exact,approx,block_from_top\n");
    for e in p.entries() {
        let rank = arr.partition.rank_from_top(&e.subset).unwrap_or(0);
        out.push_str(&format!("{},{},{},{}\n", e.subset.compact(), e.exact.unwrap_or_default(), e.approx, rank));
    }
    out
}

fn poset_json(p: &MinorPoset, source: &str) -> Value {
    json!({
        "k": p.k,
        "n": p.n,
        "source": source,
        "top": p.top,
        "relation_count": p.relations().len(),
        "hasse": p.hasse(),
    })
}

pub fn execute(cmd: Command, cfg: &Config) -> Result<(Rendered, Option<String>), CliError> {
    let limits = &cfg.limits;
    let default_seed = cfg.seed.unwrap_or(0);
    let rendered = match cmd {
        Command::Enumerate(s) => {
            let cells = enumerate_maximal_sorted(s.k, s.n, limits)?;
            let mut records = Vec::with_capacity(cells.len());
            let mut csv = String::from("index,omega,members\n");
            for (i, c) in cells.iter().enumerate() {
                let omega = permutation_from_collection(c)?.omega_string();
                csv.push_str(&format!("{i},{omega},{}\n", spaced(c.members())));
                records.push(json!({"index": i, "omega": omega, "members": c.members()}));
            }
            Rendered { json: Value::Array(records), csv: Some(csv), dot: None }
        }
        Command::DualGraph(s) => {
            let g = build_dual_graph(s.k, s.n, limits)?;
            let mut csv = String::from("from,to,removed,added\n");
            let mut dot = String::from("graph dual {\n");
            for (i, v) in g.vertices.iter().enumerate() {
                dot.push_str(&format!("  {i} [label=\"{}\"];\n", spaced(v.members())));
            }
            for e in &g.edges {
                csv.push_str(&format!("{},{},{},{}\n", e.from, e.to, e.detour.i_t.compact(), e.detour.replacement.compact()));
                dot.push_str(&format!(
                    "  {} -- {} [label=\"{}/{}\"];\n",
                    e.from,
                    e.to,
                    e.detour.i_t.compact(),
                    e.detour.replacement.compact()
                ));
            }
            dot.push_str("}\n");
            let json = json!({
                "k": g.k,
                "n": g.n,
                "max_degree": g.max_degree(),
                "vertices": g.vertices.iter().map(|v| v.members()).collect::<Vec<_>>(),
                "edges": g.edges,
            });
            Rendered { json, csv: Some(csv), dot: Some(dot) }
        }
        Command::Cubedist { cell: c, w, to } => {
            let j = cell(&c)?;
            let (target, d) = match (w, to) {
                (Some(w), None) => {
                    let w = parse::subset(c.n, &w).map_err(usage)?;
                    (json!(w), cubical_distance_to_subset(&j, &w, limits)?)
                }
                (None, Some(to)) => {
                    let q = parse::collection(c.n, &to).map_err(usage)?;
                    (json!(q.members()), cubical_distance(&j, &q, limits)?)
                }
                _ => return Err(usage("give one of --W and --to".into())),
            };
            Rendered {
                json: json!({"J": j.members(), "target": target, "distance": d}),
                csv: Some(format!("distance\n{d}\n")),
                dot: None,
            }
        }
        Command::Eval { matrix } => {
            let a = read_matrix(&matrix)?;
            let p = plucker_all(&a);
            let arr = extract_arrangement(&p)?;
            let json = json!({
                "k": a.k(),
                "n": a.n(),
                "totally_positive": p.is_positive(),
                "minors": p.entries(),
                "arrangement": arr,
            });
            Rendered { json, csv: Some(minors_csv(&p, &arr)), dot: None }
        }
        Command::Normalize { matrix, cell: c, arith } => {
            let a = read_matrix(&matrix)?;
            let j = cell(&c)?;
            let (scaling, p) = torus_normalize(&a, &j, arithmetic(arith, c.n, cfg))?;
            let arr = extract_arrangement(&p)?;
            let exact_alpha = scaling.exact_alpha(&a)?.map(|v| v.iter().map(format_rational).collect::<Vec<_>>());
            let json = json!({
                "J": j.members(),
                "scaling": scaling,
                "alpha_exact": exact_alpha,
                "minors": p.entries(),
                "arrangement": arr,
            });
            Rendered { json, csv: Some(minors_csv(&p, &arr)), dot: None }
        }
        Command::Witness { cell: c, w, seed, arith } => {
            let j = cell(&c)?;
            let w = parse::subset(c.n, &w).map_err(usage)?;
            let arith = arithmetic(arith, c.n, cfg);
            let wit = second_largest_witness(&j, &w, seed.unwrap_or(default_seed), arith, limits)?;
            let (_, p) = torus_normalize(&wit.matrix, &j, arith)?;
            let arr = extract_arrangement(&p)?;
            let json = json!({
                "J": j.members(),
                "W": w,
                "witness": wit,
                "second_block": arr.block_from_top(2),
            });
            Rendered { json, csv: None, dot: None }
        }
        Command::Poset { cell: c, empirical, seed } => {
            let j = cell(&c)?;
            let (p, source) = match empirical {
                Some(trials) => (empirical_poset(&j, trials, seed.unwrap_or(default_seed))?, "empirical"),
                None => (infer_poset(&j)?, "inferred"),
            };
            let mut csv = String::from("lower,upper,rule\n");
            let top = spaced(&p.top);
            for r in p.hasse() {
                let name = |s: Option<KSubset>| s.map(|x| x.compact()).unwrap_or_else(|| format!("top {top}"));
                let rule = serde_json::to_value(&r.provenance).ok().and_then(|v| v["rule"].as_str().map(String::from));
                csv.push_str(&format!("{},{},{}\n", name(r.lower), name(r.upper), rule.unwrap_or_default()));
            }
            Rendered { json: poset_json(&p, source), csv: Some(csv), dot: Some(p.to_dot()) }
        }
        Command::Grid { cell: c, w } => {
            let j = cell(&c)?;
            let w = parse::subset(c.n, &w).map_err(usage)?;
            let g = build_young_grid(&j, &w)?;
            let relations = grid_inequalities(&g);
            let mut csv = String::from("i,j,subset,outer\n");
            let mut dot = String::from("digraph grid {\n");
            for v in &g.vertices {
                csv.push_str(&format!("{},{},{},{}\n", v.i, v.j, v.subset.compact(), v.outer));
                dot.push_str(&format!(
                    "  \"{}_{}\" [label=\"{}\", pos=\"{},{}!\"{}];\n",
                    v.i,
                    v.j,
                    v.subset.compact(),
                    -(v.j as i64),
                    v.i,
                    if v.outer { ", shape=box" } else { "" }
                ));
            }
            for e in &g.edges {
                dot.push_str(&format!(
                    "  \"{}_{}\" -> \"{}_{}\" [label=\"{}\"];\n",
                    e.from.0, e.from.1, e.to.0, e.to.1, e.label
                ));
            }
            dot.push_str("}\n");
            let json = json!({
                "swapping_distance": swapping_distance(&g),
                "grid": g,
                "inequalities": relations.iter().map(|r| json!({"lower": r.lower, "upper": r.upper})).collect::<Vec<_>>(),
            });
            Rendered { json, csv: Some(csv), dot: Some(dot) }
        }
        Command::Verify { experiment, shape, t, trials, seed, float } => {
            let params = ExperimentParams { k: shape.k, n: shape.n, t, trials, seed: seed.unwrap_or(default_seed) };
            let opts = VerifyOptions { limits: limits.clone(), allow_float: float };
            let report = experiment.run(&params, &opts)?;
            let csv = format!("{}\n{}\n", ExperimentReport::csv_header(), report.csv_row());
            let verdict = (!report.passed).then(|| format!("{} had {} failing cases", report.id, report.failures.len()));
            let json = serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?;
            return Ok((Rendered { json, csv: Some(csv), dot: None }, verdict));
        }
    };
    Ok((rendered, None))
}
