//! Oracle checks for admissibility, consistency and dominance of the
//! landmark heuristics, plus seeded sweeps that hunt for witnesses.
//!
//! Every report produced by a sweep carries the [`Scenario`] it came from,
//! so it can be rebuilt from scratch and re-checked with
//! [`ViolationReport::replay`].

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::{
    build_alp_index, build_alt_index, select_landmarks, sssp, AlpIndex, AltIndex, EmbeddingMode,
    LandmarkMethod,
};
use crate::error::{Error, Result};
use crate::generate::{generate, GenParams, GraphSpec, Weights};
use crate::graph::{Graph, VertexId};
use crate::heuristics::{alp_h, alt_h, Heuristic, HeuristicConfig};
use crate::partition::{bfs_regions, louvain, Partition, DEFAULT_MIN_GAIN};

/// Comparison slack: relative 1e-9 with an absolute floor of 1e-12.
pub fn epsilon(reference: f64) -> f64 {
    (1e-9 * reference.abs()).max(1e-12)
}

/// `lhs > rhs` beyond floating-point noise.
pub fn exceeds(lhs: f64, rhs: f64) -> bool {
    lhs > rhs + epsilon(rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum PartitionSpec {
    Louvain { seed: u64 },
    Regions { k: usize, seed: u64 },
    Explicit { assignment: Vec<u32> },
}

impl PartitionSpec {
    pub fn build(&self, g: &Graph) -> Result<Partition> {
        match self {
            PartitionSpec::Louvain { seed } => louvain(g, *seed, DEFAULT_MIN_GAIN),
            PartitionSpec::Regions { k, seed } => bfs_regions(g, *k, *seed),
            PartitionSpec::Explicit { assignment } => {
                if assignment.len() != g.vertex_count() {
                    return Err(Error::domain("explicit partition has the wrong length"));
                }
                Partition::from_assignment(assignment.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LandmarkSpec {
    /// One landmark per community.
    PerCommunity {
        method: LandmarkMethod,
        seed: u64,
    },
    /// `count` distinct vertices drawn uniformly (ALT only).
    Uniform {
        count: usize,
        seed: u64,
    },
    Explicit {
        ids: Vec<VertexId>,
    },
}

impl LandmarkSpec {
    pub fn build(&self, g: &Graph, p: &Partition) -> Result<Vec<VertexId>> {
        match self {
            LandmarkSpec::PerCommunity { method, seed } => select_landmarks(g, p, *method, *seed),
            LandmarkSpec::Uniform { count, seed } => {
                if *count == 0 || *count > g.vertex_count() {
                    return Err(Error::domain(format!("cannot draw {count} landmarks")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut ids: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
                ids.shuffle(&mut rng);
                ids.truncate(*count);
                Ok(ids)
            }
            LandmarkSpec::Explicit { ids } => Ok(ids.clone()),
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng, trial: u64, sizes: (usize, usize)) -> GenParams {
    let n = rng.gen_range(sizes.0..=sizes.1);
    match trial % 5 {
        0 => {
            let rows = rng.gen_range(2..=(n as f64).sqrt().ceil() as usize + 1);
            GenParams::Grid {
                rows,
                cols: n.div_ceil(rows).max(2),
            }
        }
        1 => GenParams::ErdosRenyi {
            n,
            p: ((n as f64).ln() + rng.gen_range(0.5..2.5)) / n as f64,
        },
        2 => GenParams::BarabasiAlbert {
            n,
            m: rng.gen_range(1..=3),
        },
        3 => GenParams::WattsStrogatz {
            n,
            k: 2 * rng.gen_range(1..=3),
            p: rng.gen_range(0.0..0.4),
        },
        _ => GenParams::RandomGeometric {
            n,
            radius: 1.3 * (((n as f64).ln() + 2.0) / (std::f64::consts::PI * n as f64)).sqrt(),
        },
    }
}

/// Everything needed to rebuild a graph and both indices deterministically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub graph: GraphSpec,
    pub partition: PartitionSpec,
    pub landmarks: LandmarkSpec,
    pub mode: EmbeddingMode,
    pub ptolemy: bool,
    /// Landmarks of the ALT index when they differ from the ALP set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_landmarks: Option<LandmarkSpec>,
}

/// A materialized [`Scenario`].
pub struct Instance {
    pub graph: Graph,
    pub partition: Partition,
    pub landmarks: Vec<VertexId>,
    pub alp: AlpIndex,
    pub alt: AltIndex,
    pub cfg: HeuristicConfig,
}

impl Instance {
    pub fn alt_h(&self, v: VertexId, t: VertexId) -> f64 {
        alt_h(&self.alt, v, t)
    }

    pub fn alp_h(&self, v: VertexId, t: VertexId) -> f64 {
        alp_h(&self.alp, v, t, self.cfg)
    }

    pub fn heuristic(&self, which: HeuristicKind) -> Result<Box<dyn Heuristic + '_>> {
        match which {
            HeuristicKind::Alt => Ok(Box::new(move |v, t| self.alt_h(v, t))),
            HeuristicKind::Alp => Ok(Box::new(move |v, t| self.alp_h(v, t))),
            HeuristicKind::Custom => Err(Error::domain("custom heuristics cannot be rebuilt")),
        }
    }
}

impl Scenario {
    pub fn instantiate(&self) -> Result<Instance> {
        let graph = self.graph.build()?;
        let partition = self.partition.build(&graph)?;
        let landmarks = self.landmarks.build(&graph, &partition)?;
        let alp = build_alp_index(&graph, &partition, &landmarks, self.mode)?;
        let alt_set = match &self.alt_landmarks {
            Some(spec) => spec.build(&graph, &partition)?,
            None => landmarks.clone(),
        };
        let alt = build_alt_index(&graph, &alt_set)?;
        Ok(Instance {
            graph,
            partition,
            landmarks,
            alp,
            alt,
            cfg: HeuristicConfig::with_ptolemy(self.ptolemy),
        })
    }

    /// Seeded random scenario. Families rotate with the trial index so any
    /// five consecutive trials cover all of them.
    pub fn random(seed: u64, trial: u64, sizes: (usize, usize), mode: EmbeddingMode) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        // redraw until the generated graph (after reduction to its largest
        // component) has a size in range; give up after a bounded number of
        // draws so impossible ranges still terminate
        let mut draw = || (random_params(&mut rng, trial, sizes), rng.gen::<u64>());
        let mut chosen = draw();
        for _ in 0..256 {
            let n = generate(&chosen.0, chosen.1).map_or(0, |g| g.vertex_count());
            if (sizes.0..=sizes.1).contains(&n) {
                break;
            }
            chosen = draw();
        }
        let (params, graph_seed) = chosen;
        let weights = if rng.gen_bool(0.5) {
            Weights::UniformInt { lo: 1, hi: 10 }
        } else {
            Weights::Unit
        };
        let partition = if rng.gen_bool(0.5) {
            PartitionSpec::Louvain { seed: rng.gen() }
        } else {
            PartitionSpec::Regions {
                k: rng.gen_range(2..=8),
                seed: rng.gen(),
            }
        };
        Scenario {
            graph: GraphSpec {
                params,
                weights,
                seed: graph_seed,
            },
            partition,
            landmarks: LandmarkSpec::PerCommunity {
                method: LandmarkMethod::Random,
                seed: rng.gen(),
            },
            mode,
            ptolemy: true,
            alt_landmarks: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Admissibility,
    Consistency,
    /// `π^DL > π^L`: ALT fails to dominate ALP.
    DominanceDlOverL,
    /// `π^L > π^DL`: ALP fails to dominate ALT.
    DominanceLOverDl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicKind {
    Alt,
    Alp,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Witness {
    Pair {
        v: VertexId,
        t: VertexId,
    },
    Edge {
        u: VertexId,
        v: VertexId,
        weight: f64,
        target: VertexId,
    },
}

/// One observed inequality violation: `lhs > rhs` beyond [`epsilon`].
///
/// * admissibility: `h(v,t)` vs `d(v,t)`
/// * consistency: `h(u,t)` vs `w(u,v) + h(v,t)`
/// * dominance: the heuristic named by the kind vs the other one
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub heuristic: HeuristicKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub witness: Witness,
    pub lhs: f64,
    pub rhs: f64,
}

impl ViolationReport {
    fn attach(mut self, scenario: &Scenario, trial: u64, heuristic: HeuristicKind) -> Self {
        self.scenario = Some(scenario.clone());
        self.trial = Some(trial);
        self.heuristic = heuristic;
        self
    }

    /// Rebuilds the scenario and recomputes `(lhs, rhs)`.
    pub fn recompute(&self) -> Result<(f64, f64)> {
        let scenario = self
            .scenario
            .as_ref()
            .ok_or_else(|| Error::domain("report has no scenario to replay"))?;
        let inst = scenario.instantiate()?;
        let n = inst.graph.vertex_count() as VertexId;
        let in_range = |x: VertexId| {
            if x < n {
                Ok(x)
            } else {
                Err(Error::domain(format!(
                    "witness vertex {x} is not in the graph"
                )))
            }
        };
        match (self.kind, self.witness) {
            (ViolationKind::Admissibility, Witness::Pair { v, t }) => {
                let h = inst.heuristic(self.heuristic)?;
                let d = sssp(&inst.graph, in_range(v)?)[in_range(t)? as usize];
                Ok((h.estimate(v, t), d))
            }
            (ViolationKind::Consistency, Witness::Edge { u, v, target, .. }) => {
                let h = inst.heuristic(self.heuristic)?;
                let w = inst
                    .graph
                    .edge_weight(in_range(u)?, in_range(v)?)
                    .ok_or_else(|| Error::domain(format!("({u}, {v}) is not an edge")))?;
                let target = in_range(target)?;
                Ok((h.estimate(u, target), w + h.estimate(v, target)))
            }
            (ViolationKind::DominanceDlOverL, Witness::Pair { v, t }) => {
                let (v, t) = (in_range(v)?, in_range(t)?);
                Ok((inst.alp_h(v, t), inst.alt_h(v, t)))
            }
            (ViolationKind::DominanceLOverDl, Witness::Pair { v, t }) => {
                let (v, t) = (in_range(v)?, in_range(t)?);
                Ok((inst.alt_h(v, t), inst.alp_h(v, t)))
            }
            _ => Err(Error::domain("witness shape does not match report kind")),
        }
    }

    /// True when recomputation reproduces the recorded values and the
    /// violation.
    pub fn replay(&self) -> Result<bool> {
        let (lhs, rhs) = self.recompute()?;
        let same = |a: f64, b: f64| (a - b).abs() <= epsilon(a.max(b));
        Ok(same(lhs, self.lhs) && same(rhs, self.rhs) && exceeds(lhs, rhs))
    }
}

/// Every `(v, t)` with `v ≠ t` where `h(v,t) > d(v,t)`; unreachable pairs
/// are skipped.
pub fn check_admissible<H: Heuristic + ?Sized>(g: &Graph, h: &H) -> Vec<ViolationReport> {
    audit_admissible(g, h).violations
}

#[derive(Clone, Debug, Default)]
pub struct AdmissibilityAudit {
    pub pairs: u64,
    pub violations: Vec<ViolationReport>,
}

pub fn audit_admissible<H: Heuristic + ?Sized>(g: &Graph, h: &H) -> AdmissibilityAudit {
    let mut audit = AdmissibilityAudit::default();
    for v in 0..g.vertex_count() as VertexId {
        let dist = sssp(g, v);
        for (t, &d) in dist.iter().enumerate() {
            let t = t as VertexId;
            if t == v || !d.is_finite() {
                continue;
            }
            audit.pairs += 1;
            let est = h.estimate(v, t);
            if exceeds(est, d) {
                audit.violations.push(ViolationReport {
                    kind: ViolationKind::Admissibility,
                    heuristic: HeuristicKind::Custom,
                    scenario: None,
                    trial: None,
                    witness: Witness::Pair { v, t },
                    lhs: est,
                    rhs: d,
                });
            }
        }
    }
    audit
}

/// Every arc `(u, v, w)` with `h(u,t) > w + h(v,t)`.
pub fn check_consistency<H: Heuristic + ?Sized>(
    g: &Graph,
    h: &H,
    t: VertexId,
) -> Vec<ViolationReport> {
    g.arcs()
        .filter_map(|(u, v, w)| {
            let (hu, hv) = (h.estimate(u, t), h.estimate(v, t));
            exceeds(hu, w + hv).then_some(ViolationReport {
                kind: ViolationKind::Consistency,
                heuristic: HeuristicKind::Custom,
                scenario: None,
                trial: None,
                witness: Witness::Edge {
                    u,
                    v,
                    weight: w,
                    target: t,
                },
                lhs: hu,
                rhs: w + hv,
            })
        })
        .collect()
}

/// Checks the ALP index with Ptolemy on. If the Ptolemy bound breaks
/// admissibility on `g` it is switched off in the returned config.
pub fn audited_config(g: &Graph, alp: &AlpIndex) -> (HeuristicConfig, usize) {
    let on = HeuristicConfig::with_ptolemy(true);
    let violations = check_admissible(g, &|v, t| alp_h(alp, v, t, on)).len();
    if violations == 0 {
        (on, 0)
    } else {
        (HeuristicConfig::with_ptolemy(false), violations)
    }
}

/// Per-family admissibility tallies from [`admissibility_sweep`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyTally {
    pub graphs: u64,
    pub pairs: u64,
    pub alt_violations: u64,
    pub alp_violations_ptolemy_off: u64,
    pub alp_violations_ptolemy_on: u64,
    /// Graphs where the Ptolemy bound was switched off by [`audited_config`].
    pub ptolemy_excluded: u64,
    /// Violations left after auto-exclusion.
    pub alp_violations_audited: u64,
}

impl FamilyTally {
    pub fn alp_violation_rate(&self) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.alp_violations_ptolemy_off as f64 / self.pairs as f64
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub families: BTreeMap<String, FamilyTally>,
    /// Violations from every graph, each with its scenario attached.
    pub reports: Vec<ViolationReport>,
}

impl SweepSummary {
    pub fn total(&self) -> FamilyTally {
        let mut t = FamilyTally::default();
        for f in self.families.values() {
            t.graphs += f.graphs;
            t.pairs += f.pairs;
            t.alt_violations += f.alt_violations;
            t.alp_violations_ptolemy_off += f.alp_violations_ptolemy_off;
            t.alp_violations_ptolemy_on += f.alp_violations_ptolemy_on;
            t.ptolemy_excluded += f.ptolemy_excluded;
            t.alp_violations_audited += f.alp_violations_audited;
        }
        t
    }
}

/// All-pairs admissibility over `graphs` random scenarios.
pub fn admissibility_sweep(
    graphs: u64,
    seed: u64,
    sizes: (usize, usize),
    mode: EmbeddingMode,
) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    for trial in 0..graphs {
        let scenario = Scenario::random(seed, trial, sizes, mode);
        let inst = scenario.instantiate()?;
        let g = &inst.graph;
        let tally = summary
            .families
            .entry(scenario.graph.params.family_name().to_string())
            .or_default();
        tally.graphs += 1;

        let alt = audit_admissible(g, &|v, t| alt_h(&inst.alt, v, t));
        let off = HeuristicConfig::with_ptolemy(false);
        let alp_off = audit_admissible(g, &|v, t| alp_h(&inst.alp, v, t, off));
        let on = HeuristicConfig::with_ptolemy(true);
        let alp_on = audit_admissible(g, &|v, t| alp_h(&inst.alp, v, t, on));
        tally.pairs += alt.pairs;
        tally.alt_violations += alt.violations.len() as u64;
        tally.alp_violations_ptolemy_off += alp_off.violations.len() as u64;
        tally.alp_violations_ptolemy_on += alp_on.violations.len() as u64;
        if !alp_on.violations.is_empty() {
            tally.ptolemy_excluded += 1;
            tally.alp_violations_audited += alp_off.violations.len() as u64;
        }

        let with_ptolemy = Scenario {
            ptolemy: true,
            ..scenario.clone()
        };
        let without = Scenario {
            ptolemy: false,
            ..scenario
        };
        summary.reports.extend(
            alt.violations
                .into_iter()
                .map(|r| r.attach(&with_ptolemy, trial, HeuristicKind::Alt)),
        );
        summary.reports.extend(
            alp_off
                .violations
                .into_iter()
                .map(|r| r.attach(&without, trial, HeuristicKind::Alp)),
        );
        summary.reports.extend(
            alp_on
                .violations
                .into_iter()
                .map(|r| r.attach(&with_ptolemy, trial, HeuristicKind::Alp)),
        );
    }
    Ok(summary)
}

/// Graph sizes used by the witness searches.
pub const SEARCH_SIZES: (usize, usize) = (10, 60);

#[derive(Clone, Debug)]
pub struct ConsistencySearch {
    pub witness: Option<ViolationReport>,
    pub trials_run: u64,
}

/// Random exact-mode ALP instances until an edge violates consistency.
pub fn find_consistency_witness(trials: u64, seed: u64) -> Result<ConsistencySearch> {
    for trial in 0..trials {
        let scenario = Scenario::random(seed, trial, SEARCH_SIZES, EmbeddingMode::Exact);
        let inst = scenario.instantiate()?;
        let h = |v, t| inst.alp_h(v, t);
        for t in 0..inst.graph.vertex_count() as VertexId {
            if let Some(report) = check_consistency(&inst.graph, &h, t).into_iter().next() {
                return Ok(ConsistencySearch {
                    witness: Some(report.attach(&scenario, trial, HeuristicKind::Alp)),
                    trials_run: trial + 1,
                });
            }
        }
    }
    Ok(ConsistencySearch {
        witness: None,
        trials_run: trials,
    })
}

#[derive(Clone, Debug, Default)]
pub struct DominanceSearch {
    /// `π^L > π^DL` with identical landmark sets.
    pub alt_over_alp: Vec<ViolationReport>,
    /// `π^DL > π^L` with differing landmark sets.
    pub alp_over_alt: Vec<ViolationReport>,
    pub trials_run: u64,
}

/// Witnesses kept per direction before the search stops.
pub const DOMINANCE_WITNESS_LIMIT: usize = 8;

pub fn find_dominance_counterexamples(
    trials: u64,
    seed: u64,
) -> Result<(Vec<ViolationReport>, Vec<ViolationReport>)> {
    let s = dominance_search(trials, seed, DOMINANCE_WITNESS_LIMIT)?;
    Ok((s.alt_over_alp, s.alp_over_alt))
}

/// At most one witness per trial and direction.
pub fn dominance_search(trials: u64, seed: u64, limit: usize) -> Result<DominanceSearch> {
    let mut out = DominanceSearch::default();
    for trial in 0..trials {
        if out.alt_over_alp.len() >= limit && out.alp_over_alt.len() >= limit {
            break;
        }
        out.trials_run = trial + 1;
        let same = Scenario::random(seed, trial, SEARCH_SIZES, EmbeddingMode::Exact);
        let inst = same.instantiate()?;
        let n = inst.graph.vertex_count() as VertexId;

        if out.alt_over_alp.len() < limit {
            if let Some((v, t)) = first_pair(n, |v, t| exceeds(inst.alt_h(v, t), inst.alp_h(v, t)))
            {
                out.alt_over_alp.push(ViolationReport {
                    kind: ViolationKind::DominanceLOverDl,
                    heuristic: HeuristicKind::Alt,
                    scenario: Some(same.clone()),
                    trial: Some(trial),
                    witness: Witness::Pair { v, t },
                    lhs: inst.alt_h(v, t),
                    rhs: inst.alp_h(v, t),
                });
            }
        }

        if out.alp_over_alt.len() < limit {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ trial);
            let count = rng.gen_range(1..=inst.landmarks.len());
            let alt_spec = LandmarkSpec::Uniform {
                count,
                seed: rng.gen(),
            };
            let mut alt_set = alt_spec.build(&inst.graph, &inst.partition)?;
            let mut alp_set = inst.landmarks.clone();
            alt_set.sort_unstable();
            alp_set.sort_unstable();
            if alt_set == alp_set {
                continue;
            }
            let differing = Scenario {
                alt_landmarks: Some(alt_spec),
                ..same
            };
            let other = differing.instantiate()?;
            if let Some((v, t)) =
                first_pair(n, |v, t| exceeds(other.alp_h(v, t), other.alt_h(v, t)))
            {
                out.alp_over_alt.push(ViolationReport {
                    kind: ViolationKind::DominanceDlOverL,
                    heuristic: HeuristicKind::Alp,
                    scenario: Some(differing),
                    trial: Some(trial),
                    witness: Witness::Pair { v, t },
                    lhs: other.alp_h(v, t),
                    rhs: other.alt_h(v, t),
                });
            }
        }
    }
    Ok(out)
}

fn first_pair(
    n: VertexId,
    mut pred: impl FnMut(VertexId, VertexId) -> bool,
) -> Option<(VertexId, VertexId)> {
    (0..n)
        .flat_map(|v| (0..n).map(move |t| (v, t)))
        .find(|&(v, t)| v != t && pred(v, t))
}

/// Hand-checkable `π^DL > π^L` witness on the path 0-1-2-3-4: ALP with
/// partitions {0,1,2},{3,4} and landmarks 0, 4 gives 2 at (1, 3); ALT with
/// the single landmark 2 gives |1 − 1| = 0.
pub fn five_path_witness() -> Result<ViolationReport> {
    let scenario = Scenario {
        graph: GraphSpec::new(GenParams::Grid { rows: 1, cols: 5 }, 0),
        partition: PartitionSpec::Explicit {
            assignment: vec![0, 0, 0, 1, 1],
        },
        landmarks: LandmarkSpec::Explicit { ids: vec![0, 4] },
        mode: EmbeddingMode::Exact,
        ptolemy: true,
        alt_landmarks: Some(LandmarkSpec::Explicit { ids: vec![2] }),
    };
    let inst = scenario.instantiate()?;
    Ok(ViolationReport {
        kind: ViolationKind::DominanceDlOverL,
        heuristic: HeuristicKind::Alp,
        witness: Witness::Pair { v: 1, t: 3 },
        lhs: inst.alp_h(1, 3),
        rhs: inst.alt_h(1, 3),
        scenario: Some(scenario),
        trial: None,
    })
}

/// Writes one JSON record per line.
pub fn write_reports<W: Write>(reports: &[ViolationReport], mut out: W) -> Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_reports<R: BufRead>(input: R) -> Result<Vec<ViolationReport>> {
    let mut reports = Vec::new();
    for line in input.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            reports.push(serde_json::from_str(&line)?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::path;
    use crate::heuristics::ZeroHeuristic;

    #[test]
    fn zero_heuristic_is_admissible_and_consistent() {
        let g = crate::generate::generate(&GenParams::Grid { rows: 4, cols: 4 }, 0).unwrap();
        assert!(check_admissible(&g, &ZeroHeuristic).is_empty());
        for t in 0..16 {
            assert!(check_consistency(&g, &ZeroHeuristic, t).is_empty());
        }
    }

    #[test]
    fn overestimate_is_flagged_everywhere() {
        let g = path(6);
        let h = |v: VertexId, t: VertexId| (v as f64 - t as f64).abs() + 1.0;
        assert_eq!(check_admissible(&g, &h).len(), 6 * 5);
    }

    #[test]
    fn epsilon_has_absolute_floor() {
        assert_eq!(epsilon(0.0), 1e-12);
        assert_eq!(epsilon(1e6), 1e-3);
        assert!(!exceeds(1.0 + 1e-10, 1.0));
        assert!(exceeds(1.0 + 1e-8, 1.0));
    }

    #[test]
    fn five_path_witness_values() {
        let w = five_path_witness().unwrap();
        assert_eq!((w.lhs, w.rhs), (2.0, 0.0));
        assert!(w.replay().unwrap());
    }

    #[test]
    fn single_landmark_single_partition_never_differs() {
        let g = crate::generate::generate(&GenParams::Grid { rows: 4, cols: 5 }, 0).unwrap();
        let p = Partition::whole(20);
        for l in [0u32, 7, 19] {
            let alp = build_alp_index(&g, &p, &[l], EmbeddingMode::Exact).unwrap();
            let alt = build_alt_index(&g, &[l]).unwrap();
            for v in 0..20 {
                for t in 0..20 {
                    assert_eq!(
                        alt_h(&alt, v, t),
                        alp_h(&alp, v, t, HeuristicConfig::default())
                    );
                }
            }
        }
    }

    #[test]
    fn star_graph_alt_beats_alp_with_same_landmarks() {
        // hub 0, leaves 1..=9, each leaf its own partition except the hub's
        let n = 10;
        let g = Graph::from_edges(n, (1..n as u32).map(|l| (0, l, 1.0)), true).unwrap();
        let p = Partition::from_assignment(vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 2]).unwrap();
        let landmarks = [1, 4, 7];
        let alp = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Exact).unwrap();
        let alt = build_alt_index(&g, &landmarks).unwrap();
        let cfg = HeuristicConfig::default();
        let mut witnesses = 0;
        for v in 0..n as u32 {
            for t in 0..n as u32 {
                let (l, dl) = (alt_h(&alt, v, t), alp_h(&alp, v, t, cfg));
                assert!(dl <= l + 1e-12, "ALP exceeded ALT at ({v}, {t})");
                witnesses += usize::from(l > dl);
            }
        }
        // e.g. v = 4 (a landmark), t = 2: ALT uses landmark 4 to get 2
        assert!(alt_h(&alt, 4, 2) > alp_h(&alp, 4, 2, cfg));
        assert!(witnesses > 0);
    }

    #[test]
    fn reports_round_trip_as_lines() {
        let w = five_path_witness().unwrap();
        let mut buf = Vec::new();
        write_reports(&[w.clone(), w.clone()], &mut buf).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 2);
        assert_eq!(read_reports(buf.as_slice()).unwrap(), vec![w.clone(), w]);
    }

    #[test]
    fn replay_rejects_doctored_report() {
        let mut w = five_path_witness().unwrap();
        w.lhs = 5.0;
        assert!(!w.replay().unwrap());
        w.scenario = None;
        assert!(w.replay().is_err());
    }
}
