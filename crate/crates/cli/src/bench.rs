//! `stc bench`: one CSV row per (instance, oracle).
//!
//! ```toml
//! oracles = ["exact", "spectral"]   # default ["exact"]
//! seeds = [0, 1, 2]                 # default [0]; deterministic families use only the first
//! budget = 1000000                  # exact STC budget, default 10^7
//!
//! [[instances]]
//! family = "cycle"
//! n = [6, 7, 8]                     # one value or a list
//!
//! [[instances]]
//! family = "apex_expander"
//! n = [4, 6, 8]
//! d = 3
//! ```

use std::fs;
use std::time::Instant;

use serde::Deserialize;
use stc_core::decomposer::approximation_report;
use stc_core::generators::generate;
use stc_core::rational;
use stc_core::spantree::DEFAULT_BUDGET;
use stc_core::Family;

use crate::fail::{CliResult, Failure, PARAMS};
use crate::{BenchArgs, OracleArg};

pub const HEADER: [&str; 10] = [
    "n",
    "m",
    "delta",
    "oracle",
    "congestion",
    "stc_or_bound",
    "bound_kind",
    "ratio",
    "height",
    "millis",
];

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSpec {
    #[serde(default)]
    pub oracles: Option<Vec<String>>,
    #[serde(default)]
    pub seeds: Option<Vec<u64>>,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub family: String,
    pub n: OneOrMany,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub cols: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

impl OneOrMany {
    fn values(&self) -> Vec<usize> {
        match self {
            OneOrMany::One(n) => vec![*n],
            OneOrMany::Many(ns) => ns.clone(),
        }
    }
}

fn parse_oracle(name: &str) -> CliResult<OracleArg> {
    match name {
        "exact" => Ok(OracleArg::Exact),
        "spectral" | "spectral_kl" => Ok(OracleArg::Spectral),
        other => Err(Failure::new(PARAMS, format!("unknown oracle {other:?}"))),
    }
}

fn randomized(family: &Family) -> bool {
    matches!(
        family,
        Family::RandomRegular { .. } | Family::GnpConnected { .. } | Family::ApexExpander { .. }
    )
}

pub fn run(args: &BenchArgs) -> CliResult {
    let text = fs::read_to_string(&args.spec).map_err(|e| Failure::io(&args.spec, e))?;
    let spec: BenchSpec = toml::from_str(&text)
        .map_err(|e| Failure::new(PARAMS, format!("{}: {e}", args.spec.display())))?;
    let rows = rows(&spec, args.timing)?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::new(crate::fail::IO, format!("writing csv: {e}"));
    writer.write_record(HEADER).map_err(io)?;
    for row in &rows {
        writer.write_record(row).map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::new(crate::fail::IO, e.to_string()))?;
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    crate::report::write_or_print(&text, args.out.as_deref())
}

/// Rows in spec order: instances, then `n` values, then seeds, then oracles.
pub fn rows(spec: &BenchSpec, timing: bool) -> CliResult<Vec<[String; 10]>> {
    let oracles = spec
        .oracles
        .clone()
        .unwrap_or_else(|| vec!["exact".to_string()])
        .iter()
        .map(|o| parse_oracle(o))
        .collect::<CliResult<Vec<_>>>()?;
    let seeds = spec.seeds.clone().unwrap_or_else(|| vec![0]);
    if seeds.is_empty() {
        return Err(Failure::new(PARAMS, "seeds must not be empty"));
    }
    let budget = spec.budget.unwrap_or(DEFAULT_BUDGET);

    let mut out = Vec::new();
    for inst in &spec.instances {
        for n in inst.n.values() {
            let family = Family::from_name(&inst.family, n, inst.d, inst.p, inst.cols)?;
            let seeds = if randomized(&family) {
                &seeds[..]
            } else {
                &seeds[..1]
            };
            for &seed in seeds {
                let g = generate(&family, seed)?;
                for &oracle in &oracles {
                    let start = Instant::now();
                    let record =
                        approximation_report(&g, &oracle.oracle(seed), budget).map_err(|e| {
                            Failure::from(e).context(&format!("{} n={n} seed={seed}", inst.family))
                        })?;
                    let millis = start.elapsed().as_millis();
                    out.push([
                        record.n.to_string(),
                        record.m.to_string(),
                        record.max_degree.to_string(),
                        oracle.as_str().to_string(),
                        record.congestion.to_string(),
                        rational::display(&record.denominator),
                        record.denominator_kind.clone(),
                        format!("{:.4}", record.ratio),
                        record.height.to_string(),
                        if timing {
                            millis.to_string()
                        } else {
                            String::new()
                        },
                    ]);
                }
            }
        }
    }
    Ok(out)
}
