//! Randomized trial runner: generates planted instances, replays the
//! kernel and replacement claims against brute-force oracles, and folds
//! the outcomes into reports that render as text lines or serialize to
//! JSON. Per-trial seeds are derived from the master seed, so a rerun of
//! the same config reproduces the same report byte for byte regardless
//! of worker count.

use crate::caps::Caps;
use crate::error::{invalid, Result};
use crate::graph::{io, random_planted_instance, DeletionInstance, EdgeProbs, Graph};
use crate::incidence::{self, CoordinateIndex};
use crate::kernel::ProblemPreset;
use crate::obstructions::{check_rank_c, PremiseFailure, PropertyId, PropertySpec, RankVerdict};
use crate::solver::brute_force_decide;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

/// Splitmix64 over the master seed and trial number.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut z = master.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Knobs for a batch of trials. `property` names a kernel preset for
/// equivalence runs and a detector id for rank runs. All ranges are
/// inclusive.
#[derive(Clone, Debug, Serialize)]
pub struct TrialConfig {
    pub property: String,
    pub trials: usize,
    pub cover_size: (usize, usize),
    pub independent_size: (usize, usize),
    pub edge_probability: f64,
    pub budget: (usize, usize),
    pub master_seed: u64,
    /// Toggle the edge between the two lowest cover vertices of every
    /// kernel before comparing answers, to prove the comparison catches a
    /// broken kernel.
    pub inject_fault: bool,
    /// Rank for rank trials; defaults to the property's declared rank.
    pub rank: Option<usize>,
    /// Restrict replacement search to single vertices.
    pub singleton_only: bool,
}

impl TrialConfig {
    pub fn new(property: &str, trials: usize, master_seed: u64) -> TrialConfig {
        TrialConfig {
            property: property.to_string(),
            trials,
            cover_size: (3, 5),
            independent_size: (4, 8),
            edge_probability: 0.45,
            budget: (0, 2),
            master_seed,
            inject_fault: false,
            rank: None,
            singleton_only: true,
        }
    }

    fn validate(&self) -> Result<()> {
        for ((lo, hi), what) in [
            (self.cover_size, "cover size"),
            (self.independent_size, "independent size"),
            (self.budget, "budget"),
        ] {
            if lo > hi {
                return Err(invalid(format!("{what} range {lo}..={hi} is empty")));
            }
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(invalid(format!(
                "edge probability {} is not in [0, 1]",
                self.edge_probability
            )));
        }
        Ok(())
    }
}

fn gen_range_inclusive(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize)) -> usize {
    rng.gen_range(lo..=hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TrialOutcome {
    Agree,
    Disagree,
    SkippedByCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceTrial {
    pub trial: usize,
    pub seed: u64,
    pub outcome: TrialOutcome,
    pub input_vertices: usize,
    pub kernel_vertices: usize,
    /// Guaranteed ceiling on the kernel size for this trial's parameters.
    pub size_bound: usize,
    pub input_feasible: Option<bool>,
    pub kernel_feasible: Option<bool>,
    /// Replayable dump of the generated instance; present on disagreement.
    pub instance_dump: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub config: TrialConfig,
    pub agreements: usize,
    pub disagreements: usize,
    pub skipped: usize,
    pub largest_kernel: usize,
    /// Smallest observed gap between the size bound and the actual kernel.
    pub tightest_slack: Option<usize>,
    pub trials: Vec<EquivalenceTrial>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.disagreements == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            let _ = writeln!(
                out,
                "trial {:04} seed {:016x} {:?} input={} kernel={} bound={}",
                t.trial, t.seed, t.outcome, t.input_vertices, t.kernel_vertices, t.size_bound
            );
        }
        let _ = writeln!(
            out,
            "equivalence property={} trials={} agree={} disagree={} skipped={} -> {}",
            self.config.property,
            self.config.trials,
            self.agreements,
            self.disagreements,
            self.skipped,
            if self.ok() { "ok" } else { "FAILED" }
        );
        out
    }
}

/// Generates planted instances, kernelizes each, and compares brute-force
/// answers before and after. Instances too big for the solver caps are
/// counted as skipped rather than failed.
pub fn run_equivalence_trials(cfg: &TrialConfig, caps: &Caps) -> Result<EquivalenceReport> {
    cfg.validate()?;
    let preset = ProblemPreset::by_name(&cfg.property)?;
    let id: PropertyId = preset.detector_id.parse()?;
    let spec = PropertySpec::by_id(id);
    let trials: Vec<EquivalenceTrial> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| equivalence_trial(cfg, caps, &preset, &spec, t))
        .collect::<Result<_>>()?;
    let largest_kernel = trials.iter().map(|t| t.kernel_vertices).max().unwrap_or(0);
    let tightest_slack = trials
        .iter()
        .filter(|t| t.outcome != TrialOutcome::SkippedByCap)
        .map(|t| t.size_bound - t.kernel_vertices)
        .min();
    let count = |o: TrialOutcome| trials.iter().filter(|t| t.outcome == o).count();
    Ok(EquivalenceReport {
        config: cfg.clone(),
        agreements: count(TrialOutcome::Agree),
        disagreements: count(TrialOutcome::Disagree),
        skipped: count(TrialOutcome::SkippedByCap),
        largest_kernel,
        tightest_slack,
        trials,
    })
}

fn equivalence_trial(
    cfg: &TrialConfig,
    caps: &Caps,
    preset: &ProblemPreset,
    spec: &PropertySpec,
    t: usize,
) -> Result<EquivalenceTrial> {
    let seed = trial_seed(cfg.master_seed, t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cover = gen_range_inclusive(&mut rng, cfg.cover_size);
    let indep = gen_range_inclusive(&mut rng, cfg.independent_size);
    let budget = gen_range_inclusive(&mut rng, cfg.budget);
    let probs = EdgeProbs::uniform(cfg.edge_probability);
    let inst = random_planted_instance(cover, indep, probs, budget, rng.gen());
    let out = crate::kernel::kernelize(&inst, preset, caps)?;
    let rounds = preset.rounds_for(inst.budget, inst.cover.len());
    let coords = incidence::coordinate_count(inst.cover.len(), preset.rank)
        .and_then(|c| usize::try_from(c).ok())
        .unwrap_or(usize::MAX);
    let size_bound = inst.cover.len().saturating_add(rounds.saturating_mul(coords));
    let mut trial = EquivalenceTrial {
        trial: t,
        seed,
        outcome: TrialOutcome::SkippedByCap,
        input_vertices: inst.graph.vertex_count(),
        kernel_vertices: out.instance.graph.vertex_count(),
        size_bound,
        input_feasible: None,
        kernel_feasible: None,
        instance_dump: None,
    };
    if inst.graph.vertex_count() > caps.solver_vertices || inst.budget > caps.solver_budget {
        return Ok(trial);
    }
    let kernel_inst = if cfg.inject_fault {
        toggle_lowest_cover_edge(&out.instance)?
    } else {
        out.instance
    };
    let before = brute_force_decide(&inst, spec, caps)?;
    let after = brute_force_decide(&kernel_inst, spec, caps)?;
    trial.input_feasible = Some(before.feasible);
    trial.kernel_feasible = Some(after.feasible);
    if before.feasible == after.feasible {
        trial.outcome = TrialOutcome::Agree;
    } else {
        trial.outcome = TrialOutcome::Disagree;
        trial.instance_dump = Some(io::write_instance(&inst));
    }
    Ok(trial)
}

/// Flips one adjacency bit: the edge between the two lowest cover
/// vertices. Instances whose cover is smaller than 2 come back unchanged.
fn toggle_lowest_cover_edge(inst: &DeletionInstance) -> Result<DeletionInstance> {
    let ids = inst.cover.ids();
    if ids.len() < 2 {
        return Ok(inst.clone());
    }
    let (a, b) = (ids[0], ids[1]);
    let mut edges: Vec<(usize, usize)> =
        inst.graph.edges().filter(|&e| e != (a, b)).collect();
    if !inst.graph.has_edge(a, b) {
        edges.push((a, b));
    }
    let g = Graph::from_edges(inst.graph.vertex_count(), edges)?;
    DeletionInstance::new(g, ids.to_vec(), inst.budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct RankcTrial {
    pub trial: usize,
    pub seed: u64,
    /// Both replacement hypotheses held: the vectors summed and the graph
    /// minus the planted set was in the property.
    pub premise_hit: bool,
    pub premise_failure: Option<String>,
    pub counterexample: bool,
    pub replacement_size: Option<usize>,
    /// Whether the share subset of a random low-rank set came out
    /// nonempty, odd, and with matching projected sums.
    pub share_ok: Option<bool>,
    pub instance_dump: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankcReport {
    pub config: TrialConfig,
    pub rank: usize,
    pub premise_hits: usize,
    pub premise_misses: usize,
    pub replaced: usize,
    pub counterexamples: usize,
    pub share_failures: usize,
    pub trials: Vec<RankcTrial>,
}

impl RankcReport {
    pub fn ok(&self) -> bool {
        self.counterexamples == 0 && self.share_failures == 0
    }

    /// A batch only supports the claim if enough trials actually met the
    /// hypotheses.
    pub fn conclusive(&self, min_hits: usize) -> bool {
        self.ok() && self.premise_hits >= min_hits
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            let _ = writeln!(
                out,
                "trial {:04} seed {:016x} premise={} verdict={}",
                t.trial,
                t.seed,
                if t.premise_hit { "hit" } else { "miss" },
                match (&t.premise_failure, t.counterexample, t.replacement_size) {
                    (Some(why), _, _) => format!("premise-failed({why})"),
                    (None, true, _) => "counterexample".to_string(),
                    (None, false, Some(k)) => format!("replaced({k})"),
                    (None, false, None) => "unknown".to_string(),
                }
            );
        }
        let hits = self.premise_hits;
        let _ = writeln!(
            out,
            "rankc property={} rank={} trials={} hits={} replaced={} counterexamples={} -> {}",
            self.config.property,
            self.rank,
            self.config.trials,
            hits,
            self.replaced,
            self.counterexamples,
            if hits == 0 {
                "inconclusive (premise never satisfied)"
            } else if self.ok() {
                "ok"
            } else {
                "FAILED"
            }
        );
        out
    }
}

/// Samples graphs whose planted outside set sums to a target vertex's
/// vector, then checks the replacement claim on each. The plant mixes an
/// odd number of copies of the target's cover neighborhood with canceling
/// identical pairs, so the sum identity holds in every trial and the only
/// premise left to chance is property membership after removing the set.
pub fn run_rankc_trials(cfg: &TrialConfig, caps: &Caps) -> Result<RankcReport> {
    cfg.validate()?;
    let id: PropertyId = cfg.property.parse()?;
    let spec = PropertySpec::by_id(id);
    let rank = match cfg.rank.or(spec.rank) {
        Some(r) => r,
        None => return Err(invalid(format!("property {id} has no declared rank; set one"))),
    };
    let trials: Vec<RankcTrial> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| rankc_trial(cfg, caps, &spec, rank, t))
        .collect::<Result<_>>()?;
    Ok(summarize_rankc(cfg.clone(), rank, trials))
}

fn summarize_rankc(config: TrialConfig, rank: usize, trials: Vec<RankcTrial>) -> RankcReport {
    RankcReport {
        rank,
        premise_hits: trials.iter().filter(|t| t.premise_hit).count(),
        premise_misses: trials.iter().filter(|t| !t.premise_hit).count(),
        replaced: trials.iter().filter(|t| t.replacement_size.is_some()).count(),
        counterexamples: trials.iter().filter(|t| t.counterexample).count(),
        share_failures: trials.iter().filter(|t| t.share_ok == Some(false)).count(),
        config,
        trials,
    }
}

struct PlantedSum {
    graph: Graph,
    cover: Vec<usize>,
    target: usize,
    planted: Vec<usize>,
}

fn plant_summing_set(cfg: &TrialConfig, rng: &mut ChaCha8Rng) -> Result<PlantedSum> {
    let cover = gen_range_inclusive(rng, cfg.cover_size);
    let extra = gen_range_inclusive(rng, cfg.independent_size);
    let probs = EdgeProbs::uniform(cfg.edge_probability);
    let base = random_planted_instance(cover, extra + 1, probs, 0, rng.gen());
    let target = cover;
    let n0 = base.graph.vertex_count();
    let twins = 2 * rng.gen_range(0..=1usize) + 1;
    let pairs = rng.gen_range(0..=2usize);
    let n = n0 + twins + 2 * pairs;
    let mut edges: Vec<(usize, usize)> = base.graph.edges().collect();
    let target_nb: Vec<usize> = base.graph.neighbor_ids(target).collect();
    for t in 0..twins {
        for &x in &target_nb {
            edges.push((n0 + t, x));
        }
    }
    for p in 0..pairs {
        let members: Vec<usize> = (0..cover).filter(|_| rng.gen_bool(0.5)).collect();
        for off in [0, 1] {
            for &x in &members {
                edges.push((n0 + twins + 2 * p + off, x));
            }
        }
    }
    Ok(PlantedSum {
        graph: Graph::from_edges(n, edges)?,
        cover: (0..cover).collect(),
        target,
        planted: (n0..n).collect(),
    })
}

fn rankc_trial(
    cfg: &TrialConfig,
    caps: &Caps,
    spec: &PropertySpec,
    rank: usize,
    t: usize,
) -> Result<RankcTrial> {
    let seed = trial_seed(cfg.master_seed, t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plant = plant_summing_set(cfg, &mut rng)?;
    let verdict = check_rank_c(
        spec,
        rank,
        &plant.graph,
        &plant.cover,
        &plant.planted,
        plant.target,
        cfg.singleton_only,
        caps,
    )?;
    let share_size = rng.gen_range(0..=rank.min(plant.cover.len()));
    let share_set: Vec<usize> = sample(&mut rng, plant.cover.len(), share_size).into_vec();
    let share_ok = Some(share_subset_is_sound(&plant, rank, &share_set, caps)?);
    let mut trial = RankcTrial {
        trial: t,
        seed,
        premise_hit: !matches!(verdict, RankVerdict::PremiseFailed(_)),
        premise_failure: None,
        counterexample: false,
        replacement_size: None,
        share_ok,
        instance_dump: None,
    };
    match verdict {
        RankVerdict::PremiseFailed(why) => {
            trial.premise_failure = Some(
                match why {
                    PremiseFailure::ResidualNotInProperty => "residual-not-in-property",
                    PremiseFailure::SumMismatch => "sum-mismatch",
                }
                .to_string(),
            );
        }
        RankVerdict::Replaced(keep) => trial.replacement_size = Some(keep.len()),
        RankVerdict::Counterexample => {
            trial.counterexample = true;
            trial.instance_dump = Some(dump_rankc_instance(&plant));
        }
    }
    Ok(trial)
}

/// The share members of a low-rank set must be odd in number and their
/// projected vectors must still sum to the target's projection.
fn share_subset_is_sound(
    plant: &PlantedSum,
    rank: usize,
    share_set: &[usize],
    caps: &Caps,
) -> Result<bool> {
    let idx = CoordinateIndex::enumerate(&plant.cover, rank, caps)?;
    let share = incidence::adjacency_share_subset(
        &plant.graph,
        &idx,
        plant.target,
        &plant.planted,
        share_set,
    )?;
    if share.is_empty() || share.len() % 2 == 0 {
        return Ok(false);
    }
    let g = &plant.graph;
    let q: Vec<usize> =
        share_set.iter().copied().filter(|&x| !g.has_edge(plant.target, x)).collect();
    let r: Vec<usize> =
        share_set.iter().copied().filter(|&x| g.has_edge(plant.target, x)).collect();
    let mut sum = incidence::project(&idx, &incidence::inc_vector(g, &idx, share[0])?, &q, &r)?;
    for &u in &share[1..] {
        sum.xor_assign(&incidence::project(&idx, &incidence::inc_vector(g, &idx, u)?, &q, &r)?)?;
    }
    let target = incidence::project(&idx, &incidence::inc_vector(g, &idx, plant.target)?, &q, &r)?;
    Ok(sum == target)
}

fn dump_rankc_instance(plant: &PlantedSum) -> String {
    let mut out = format!(
        "# target {}\n# planted {}\n",
        plant.target,
        plant.planted.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    );
    out.push_str(&io::write_instance(
        &DeletionInstance::new(plant.graph.clone(), plant.cover.clone(), 0)
            .expect("planted graphs keep their cover valid"),
    ));
    out
}

/// Runs the replacement check on one fixed instance and reports it in the
/// same shape as a sampled trial.
#[allow(clippy::too_many_arguments)]
pub fn rankc_fixed_trial(
    spec: &PropertySpec,
    rank: usize,
    g: &Graph,
    cover: &[usize],
    d: &[usize],
    target: usize,
    singleton_only: bool,
    caps: &Caps,
) -> Result<RankcTrial> {
    let verdict = check_rank_c(spec, rank, g, cover, d, target, singleton_only, caps)?;
    let mut trial = RankcTrial {
        trial: 0,
        seed: 0,
        premise_hit: !matches!(verdict, RankVerdict::PremiseFailed(_)),
        premise_failure: None,
        counterexample: false,
        replacement_size: None,
        share_ok: None,
        instance_dump: None,
    };
    match verdict {
        RankVerdict::PremiseFailed(why) => {
            trial.premise_failure = Some(
                match why {
                    PremiseFailure::ResidualNotInProperty => "residual-not-in-property",
                    PremiseFailure::SumMismatch => "sum-mismatch",
                }
                .to_string(),
            );
        }
        RankVerdict::Replaced(keep) => trial.replacement_size = Some(keep.len()),
        RankVerdict::Counterexample => trial.counterexample = true,
    }
    Ok(trial)
}
