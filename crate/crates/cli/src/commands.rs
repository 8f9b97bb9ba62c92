use std::fs;
use std::time::Instant;

use stc_core::bounds::{
    averaging_bound, best_certificate, best_lemma1_exhaustive, best_lemma1_search, corollary_bound,
    DEFAULT_EFFORT,
};
use stc_core::decomposer::{verify_global_bound, verify_recurrence, verify_structure};
use stc_core::generators::generate;
use stc_core::graph::serialize_graph;
use stc_core::limits::limits;
use stc_core::rational::{self, Rational};
use stc_core::spantree::{exact_stc, tree_congestion, tree_congestion_naive};
use stc_core::{
    catalog, cong_span_tree, BoundCertificate, CutOracle, Error, Family, Graph, OracleKind,
};

use crate::fail::{CliResult, Failure, PARAMS};
use crate::report::{self, *};
use crate::{BoundsArgs, BoundsMode, ExactArgs, GenArgs, SolveArgs, VerifyArgs};

pub fn gen(args: &GenArgs) -> CliResult {
    let family = Family::from_name(&args.family, args.n, args.d, args.p, args.cols)?;
    let g = generate(&family, args.seed)?;
    let mut header = format!("{GEN_MARKER} family={} n={}", args.family, args.n);
    if let Some(d) = args.d {
        header.push_str(&format!(" d={d}"));
    }
    if let Some(p) = args.p {
        header.push_str(&format!(" p={p}"));
    }
    if let Some(cols) = args.cols {
        header.push_str(&format!(" cols={cols}"));
    }
    header.push_str(&format!(" seed={}\n", args.seed));
    let text = format!("{header}{}\n", serialize_graph(&g));
    report::write_or_print(&text, args.out.as_deref())
}

pub fn solve(args: &SolveArgs) -> CliResult {
    let (g, instance) = read_instance(&args.input)?;
    let oracle = args.oracle.oracle(args.seed);
    let start = Instant::now();
    let (tree, d) = cong_span_tree(&g, &oracle)?;
    verify_structure(&d, &g).map_err(|e| Failure::invariant("decomposition_structure", e))?;
    let recurrence = verify_recurrence(&d, &g).map_err(|e| Failure::invariant("recurrence", e))?;
    let congestion = tree_congestion(&g, &tree)?;
    let elapsed = start.elapsed();

    let averaging = averaging_bound(&g);
    let best = best_certificate(&g, DEFAULT_EFFORT);
    let ratio = Ratio {
        congestion_over_bound: ratio_of(congestion.max_congestion, best.value),
        bound_kind: best.kind.as_str().to_string(),
    };

    if let Some(path) = &args.tree_out {
        fs::write(path, tree.to_text()).map_err(|e| Failure::io(path, e))?;
    }
    if let Some(path) = &args.dot {
        fs::write(path, d.to_dot()).map_err(|e| Failure::io(path, e))?;
    }

    let n = g.n();
    let report = SolveReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        command: "solve",
        config: SolveConfig {
            input: args.input.clone(),
            oracle: args.oracle.as_str(),
            seed: args.seed,
            tree_out: args.tree_out.clone(),
            dot: args.dot.clone(),
            out: args.out.clone(),
            timing: args.timing,
            limits: Limits::current(),
        },
        instance,
        tree: tree.edges().to_vec(),
        max_congestion: congestion.max_congestion,
        argmax_edge: congestion.argmax_edge,
        per_edge: edge_loads(&congestion),
        decomposition: DecompositionSummary::new(&d, n, recurrence),
        bounds: if best == averaging {
            vec![averaging]
        } else {
            vec![averaging, best.clone()]
        },
        best_bound: best,
        ratio,
        timing: args.timing.then_some(Timing {
            millis: elapsed.as_millis(),
        }),
    };
    emit(&report, args.out.as_deref())
}

/// `congestion / bound`, taken as 1 when both are 0 (the one-vertex graph).
pub fn ratio_of(congestion: usize, bound: Rational) -> f64 {
    if bound == Rational::from_integer(0) {
        return if congestion == 0 { 1.0 } else { f64::INFINITY };
    }
    rational::to_f64(&(Rational::from_integer(congestion as i64) / bound))
}

pub fn exact(args: &ExactArgs) -> CliResult {
    let (g, instance) = read_instance(&args.input)?;
    let result = match exact_stc(&g, args.budget) {
        Ok(r) => r,
        Err(Error::BudgetExceeded { count, budget }) => {
            println!("spanning_tree_count {count}");
            return Err(Failure::new(
                crate::fail::BUDGET,
                format!("{count} spanning trees exceed the budget {budget}"),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.tree_out {
        fs::write(path, result.witness.to_text()).map_err(|e| Failure::io(path, e))?;
    }
    let loads = tree_congestion(&g, &result.witness)?;
    let report = ExactReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        command: "exact",
        config: ExactConfig {
            input: args.input.clone(),
            budget: args.budget,
            tree_out: args.tree_out.clone(),
            out: args.out.clone(),
        },
        instance,
        stc: result.value,
        witness_tree: result.witness.edges().to_vec(),
        per_edge: edge_loads(&loads),
        spanning_tree_count: result.tree_count.to_string(),
    };
    emit(&report, args.out.as_deref())
}

pub fn bounds(args: &BoundsArgs) -> CliResult {
    let (g, instance) = read_instance(&args.input)?;
    let mode = args.mode.unwrap_or(if g.n() <= limits().hereditary {
        BoundsMode::Exact
    } else {
        BoundsMode::Search
    });
    let mut certificates = vec![averaging_bound(&g)];
    if g.m() > 0 {
        match mode {
            BoundsMode::Exact => {
                certificates.push(best_lemma1_exhaustive(&g)?);
                if g.n() >= 2 {
                    certificates.push(corollary_bound(&g)?);
                }
            }
            BoundsMode::Search => {
                certificates.push(best_lemma1_search(&g, args.effort, args.seed)?)
            }
        }
    }
    let best = strongest(&certificates);
    let report = BoundsReport {
        schema_version: SCHEMA_VERSION,
        tool: TOOL,
        command: "bounds",
        config: BoundsConfig {
            input: args.input.clone(),
            mode: match mode {
                BoundsMode::Exact => "exact",
                BoundsMode::Search => "search",
            },
            effort: args.effort,
            seed: args.seed,
            out: args.out.clone(),
            limits: Limits::current(),
        },
        instance,
        certificates,
        best,
    };
    emit(&report, args.out.as_deref())
}

/// Largest value; ties keep the earlier certificate.
fn strongest(certificates: &[BoundCertificate]) -> BoundCertificate {
    let mut best = &certificates[0];
    for c in &certificates[1..] {
        if c.value > best.value {
            best = c;
        }
    }
    best.clone()
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    if let Some(max_n) = args.small_exhaustive {
        if max_n == 0 || max_n > catalog::MAX_ORDER {
            return Err(Failure::new(
                PARAMS,
                format!("--small-exhaustive must be in 1..={}", catalog::MAX_ORDER),
            ));
        }
        let graphs = catalog::connected_graphs_up_to(max_n)?;
        for g in &graphs {
            let oracle = args.oracle.oracle(args.seed);
            check_instance(g, &oracle, args.budget).map_err(|f| Failure {
                code: f.code,
                message: format!(
                    "{} on graph [{}]",
                    f.message,
                    serialize_graph(g).replace('\n', "; ")
                ),
            })?;
        }
        println!(
            "ok {} connected graphs on 1..={max_n} vertices",
            graphs.len()
        );
    }
    if let Some(path) = &args.input {
        let (g, _) = read_instance(path)?;
        let oracle = args.oracle.oracle(args.seed);
        for line in check_instance(&g, &oracle, args.budget)? {
            println!("{line}");
        }
    }
    Ok(())
}

/// The full invariant suite on one graph. Returns one status line per check.
pub fn check_instance(g: &Graph, oracle: &CutOracle, budget: u64) -> CliResult<Vec<String>> {
    let mut lines = Vec::new();
    let (tree, d) = cong_span_tree(g, oracle).map_err(|e| match e {
        Error::OracleFailure(_) => Failure::invariant("balanced_cut", e),
        other => other.into(),
    })?;

    let fast = tree_congestion(g, &tree)?;
    let naive = tree_congestion_naive(g, &tree)?;
    if fast != naive {
        return Err(Failure::invariant(
            "congestion_dual",
            "path accumulation and per-edge cuts disagree",
        ));
    }
    lines.push(format!("ok congestion_dual (max {})", fast.max_congestion));

    verify_structure(&d, g).map_err(|e| Failure::invariant("decomposition_structure", e))?;
    lines.push(format!(
        "ok decomposition_structure ({} nodes, height {})",
        d.nodes.len(),
        d.height()
    ));

    let checks = verify_recurrence(&d, g).map_err(|e| Failure::invariant("recurrence", e))?;
    if checks != d.recurrence {
        return Err(Failure::invariant(
            "recurrence",
            "recorded checks differ from the recomputed ones",
        ));
    }
    lines.push(format!("ok recurrence ({} internal nodes)", checks.len()));

    let mut certificates = vec![averaging_bound(g)];
    if g.m() > 0 {
        if g.n() <= limits().hereditary {
            certificates.push(best_lemma1_exhaustive(g)?);
            certificates.push(corollary_bound(g)?);
        } else {
            certificates.push(best_lemma1_search(g, DEFAULT_EFFORT, 0)?);
        }
    }
    for c in &certificates {
        c.verify(g)
            .map_err(|e| Failure::invariant("certificate_witness", e))?;
    }
    lines.push(format!(
        "ok certificate_witness ({} certificates)",
        certificates.len()
    ));

    match exact_stc(g, budget) {
        Ok(stc) => {
            let witness = tree_congestion(g, &stc.witness)?.max_congestion;
            if witness != stc.value {
                return Err(Failure::invariant(
                    "exact_witness",
                    format!("witness has {witness}, not {}", stc.value),
                ));
            }
            if fast.max_congestion < stc.value {
                return Err(Failure::invariant(
                    "exact_minimum",
                    format!(
                        "constructed tree has {} below STC {}",
                        fast.max_congestion, stc.value
                    ),
                ));
            }
            let value = Rational::from_integer(stc.value as i64);
            for c in &certificates {
                if c.value > value {
                    return Err(Failure::invariant(
                        "bound_soundness",
                        format!(
                            "{} = {} exceeds STC {}",
                            c.kind.as_str(),
                            rational::display(&c.value),
                            stc.value
                        ),
                    ));
                }
            }
            lines.push(format!("ok bound_soundness (STC {})", stc.value));
        }
        Err(Error::BudgetExceeded { count, .. }) => {
            lines.push(format!(
                "skip bound_soundness: {count} spanning trees exceed the budget"
            ));
        }
        Err(e) => return Err(e.into()),
    }

    if oracle.kind == OracleKind::Exact && g.n() >= 2 && g.n() <= limits().hereditary {
        let r = verify_global_bound(&d, g).map_err(|e| Failure::invariant("global_bound", e))?;
        lines.push(format!(
            "ok global_bound (c {} <= h {} * hb {}, h <= {})",
            r.congestion, r.height, r.hereditary_bisection, r.height_limit
        ));
    } else {
        lines.push(
            "skip global_bound: needs the exact oracle and n within the hereditary limit".into(),
        );
    }
    Ok(lines)
}
