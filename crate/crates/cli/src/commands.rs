//! Per-command parameter schemas and handlers. Each handler returns
//! `(passed, result)`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use gt_core::batch::{map_seeds, seed_range};
use gt_core::chain_kgl::{
    check_admissible, enumerate_strata, ChainBundleDescription, KglPoint, Partition, ProjectiveChain,
};
use gt_core::correspondence::{forward, inverse_adapted, roundtrip_check, GermJson};
use gt_core::eq_matrix::Matrix;
use gt_core::field_series::Fp;
use gt_core::invariance::{run_trial, GermSampler, TrialConfig};

use crate::{parse_at, Command, JobError, Settings};

const MAX_STRATA_RANK: usize = 10;
const MAX_ROUNDTRIP_RANK: usize = 8;
const MAX_TRIALS: usize = 100_000;

type Outcome = Result<(bool, Value), JobError>;

pub(crate) fn dispatch(command: Command, params: &Value, s: &Settings) -> Outcome {
    match command {
        Command::Forward => run_forward(parse_at(params, "params")?, s),
        Command::Inverse => run_inverse(parse_at(params, "params")?, s),
        Command::Roundtrip => run_roundtrip(parse_at(params, "params")?, s),
        Command::Invariance => run_invariance(parse_at(params, "params")?, s),
        Command::Strata => run_strata(parse_at(params, "params")?),
        Command::Admissible => run_admissible(parse_at(params, "params")?, s),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn bad(path: &str, msg: impl Into<String>) -> JobError {
    JobError::malformed(Some(format!("params.{path}")), msg)
}

fn run_forward(germ: GermJson, s: &Settings) -> Outcome {
    let germ = germ.to_germ(s.p, s.precision)?;
    let datum = forward(&germ)?;
    datum.validate()?;
    Ok((true, to_value(&datum)))
}

/// A `J = ∅` stratum, named by its partition or its index set `I`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumParams {
    r: usize,
    block_sizes: Option<Vec<usize>>,
    #[serde(rename = "I")]
    i_set: Option<Vec<usize>>,
}

impl StratumParams {
    fn partition(&self) -> Result<Partition, JobError> {
        match (&self.block_sizes, &self.i_set) {
            (Some(b), None) => Ok(Partition::new(self.r, b.clone())?),
            (None, Some(i)) => Ok(Partition::from_stratum_i(self.r, i)?),
            _ => Err(bad("block_sizes", "give exactly one of block_sizes and I")),
        }
    }
}

fn run_inverse(params: StratumParams, s: &Settings) -> Outcome {
    let point = KglPoint::from_partition(&params.partition()?, s.p)?;
    let (germ, g_v, g_w) = inverse_adapted(&point, s.p, s.precision)?;
    Ok((true, json!({ "point": point, "germ": germ, "g_V": g_v, "g_W": g_w })))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RoundtripParams {
    All { r_max: usize },
    One(StratumParams),
}

fn run_roundtrip(params: RoundtripParams, s: &Settings) -> Outcome {
    let parts = match params {
        RoundtripParams::One(sp) => vec![sp.partition()?],
        RoundtripParams::All { r_max } => {
            if r_max > MAX_ROUNDTRIP_RANK {
                return Err(bad("r_max", format!("r_max is capped at {MAX_ROUNDTRIP_RANK}")));
            }
            let mut out = Vec::new();
            for r in 1..=r_max {
                for st in enumerate_strata(r).into_iter().filter(|st| st.j_set.is_empty()) {
                    out.push(Partition::from_stratum_i(r, &st.i_set)?);
                }
            }
            out
        }
    };
    let mut rows = Vec::with_capacity(parts.len());
    let mut all = true;
    for part in parts {
        let point = KglPoint::from_partition(&part, s.p)?;
        let ok = roundtrip_check(&point, s.p, s.precision)?;
        all &= ok;
        rows.push(json!({ "r": part.r, "block_sizes": part.block_sizes, "passed": ok }));
    }
    Ok((all, json!({ "checked": rows.len(), "cases": rows })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvarianceParams {
    #[serde(default = "default_max_rank")]
    max_rank: usize,
    #[serde(default = "default_orders")]
    orders: Vec<u64>,
    /// Chart precision; the job precision when absent.
    germ_precision: Option<usize>,
    #[serde(default = "default_series_precision")]
    series_precision: usize,
}

fn default_max_rank() -> usize {
    4
}

fn default_orders() -> Vec<u64> {
    vec![2, 3, 4, 6]
}

fn default_series_precision() -> usize {
    4
}

fn run_invariance(params: InvarianceParams, s: &Settings) -> Outcome {
    if params.max_rank == 0 || params.max_rank > 8 {
        return Err(bad("max_rank", "max_rank must be in [1, 8]"));
    }
    if s.trials > MAX_TRIALS {
        return Err(JobError::malformed(Some("trials".into()), format!("trials is capped at {MAX_TRIALS}")));
    }
    let sampler = GermSampler {
        p: s.p,
        max_rank: params.max_rank,
        orders: params.orders,
        precision: params.germ_precision.unwrap_or(s.precision as usize),
    };
    let usable = sampler.usable_orders();
    if usable.is_empty() {
        return Err(bad("orders", format!("no listed order divides {} - 1", s.p)));
    }
    let cfg = TrialConfig {
        sampler,
        series_precision: params.series_precision,
    };
    let trials = map_seeds(&seed_range(s.seed, s.trials), |seed| run_trial(seed, &cfg));
    let failed: Vec<u64> = trials.iter().filter(|t| !t.passed).map(|t| t.seed).collect();
    Ok((
        failed.is_empty(),
        json!({
            "orders_used": usable,
            "max_rank": cfg.sampler.max_rank,
            "germ_precision": cfg.sampler.precision,
            "series_precision": cfg.series_precision,
            "failed_seeds": failed,
            "trials": trials,
        }),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StrataParams {
    r: usize,
}

fn run_strata(params: StrataParams) -> Outcome {
    if params.r == 0 || params.r > MAX_STRATA_RANK {
        return Err(bad("r", format!("r must be in [1, {MAX_STRATA_RANK}]")));
    }
    let strata = enumerate_strata(params.r);
    Ok((true, json!({ "r": params.r, "count": strata.len(), "strata": strata })))
}

/// Either an explicit chain or the canonical chain of a partition.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdmissibleParams {
    r: usize,
    block_sizes: Option<Vec<usize>>,
    degrees: Option<Vec<Vec<u8>>>,
    glues: Option<Vec<Vec<Vec<i64>>>>,
}

fn glue_matrix(rows: &[Vec<i64>], k: usize, p: u64) -> Result<Matrix<Fp>, JobError> {
    let rows = rows.iter().map(|row| row.iter().map(|&x| Fp::new(x, p)).collect()).collect();
    Matrix::from_rows(rows).map_err(|e| bad(&format!("glues[{k}]"), e.to_string()))
}

fn run_admissible(params: AdmissibleParams, s: &Settings) -> Outcome {
    match (params.block_sizes, params.degrees) {
        (Some(b), None) => {
            if params.glues.is_some() {
                return Err(bad("glues", "glues are fixed for a canonical chain"));
            }
            let desc = ChainBundleDescription::canonical(&Partition::new(params.r, b)?, s.p)?;
            let admissible = match desc.projective_chain(s.p) {
                Some(chain) => Some(check_admissible(&chain)?),
                None => None,
            };
            Ok((
                admissible != Some(false),
                json!({ "canonical": desc, "admissible": admissible }),
            ))
        }
        (None, Some(degrees)) => {
            let n = degrees.len();
            let glues = match params.glues {
                Some(g) => g.iter().enumerate().map(|(k, m)| glue_matrix(m, k, s.p)).collect::<Result<_, _>>()?,
                None => vec![Matrix::identity(params.r, s.p); n.saturating_sub(1)],
            };
            let chain = ProjectiveChain {
                r: params.r,
                modulus: s.p,
                degrees,
                glues,
            };
            chain.validate()?;
            let vanishing = chain.vanishing_sections()?;
            Ok((
                true,
                json!({
                    "component_degrees": chain.component_degrees(),
                    "vanishing_sections": vanishing,
                    "admissible": check_admissible(&chain)?,
                }),
            ))
        }
        _ => Err(bad("degrees", "give exactly one of block_sizes and degrees")),
    }
}
