//! The Abelian sandpile model on a graph with a designated sink: toppling,
//! stabilisation, the burning criterion for recurrence, level statistics, and
//! the bijection between minimal recurrent configurations and rooted acyclic
//! orientations.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Orientation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SandpileError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("sink {0} is not a vertex")]
    SinkNotAVertex(u32),
    #[error("configuration has {got} entries, sandpile graph has {expected} non-sink vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("configuration mentions {0}, which is not a non-sink vertex")]
    UnknownVertex(u32),
    #[error("configuration is unstable at vertex {0}")]
    Unstable(u32),
    #[error("stable state space has {states} configurations, over the limit {limit}")]
    StateSpaceTooLarge { states: u128, limit: u128 },
    #[error("orientation does not orient the underlying graph")]
    NotAnOrientation,
    #[error("orientation has a directed cycle")]
    NotAcyclic,
    #[error("orientation targets {0:?}, expected exactly the sink")]
    WrongTarget(Vec<u32>),
}

/// A connected graph with a designated sink vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandpileGraph {
    graph: Graph,
    sink: u32,
    nonsink: Vec<u32>, // sorted; fixes the coordinate order of configurations
}

/// Grain counts on the non-sink vertices, in sorted vertex-label order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    grains: Vec<u32>,
}

impl Configuration {
    pub fn grains(&self) -> &[u32] {
        &self.grains
    }

    pub fn total(&self) -> u64 {
        self.grains.iter().map(|&g| g as u64).sum()
    }
}

/// Serialized form of a configuration: `{"sink":s,"grains":{"v":g,...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigurationRecord {
    pub sink: u32,
    pub grains: BTreeMap<u32, u32>,
}

/// Vertex-selection policy for stabilisation. The Abelian property says the
/// result never depends on this; two policies exist so tests can confirm it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TopplePolicy {
    #[default]
    LowestLabelFirst,
    Fifo,
}

impl SandpileGraph {
    pub fn new(graph: Graph, sink: u32) -> Result<Self, SandpileError> {
        if !graph.contains_vertex(sink) {
            return Err(SandpileError::SinkNotAVertex(sink));
        }
        if !graph.is_connected()? {
            return Err(GraphError::Disconnected.into());
        }
        let nonsink = graph
            .vertices()
            .iter()
            .copied()
            .filter(|&v| v != sink)
            .collect();
        Ok(SandpileGraph {
            graph,
            sink,
            nonsink,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn sink(&self) -> u32 {
        self.sink
    }

    /// Non-sink vertices in sorted order; configuration coordinates follow it.
    pub fn nonsink_vertices(&self) -> &[u32] {
        &self.nonsink
    }

    pub fn config(&self, grains: Vec<u32>) -> Result<Configuration, SandpileError> {
        if grains.len() != self.nonsink.len() {
            return Err(SandpileError::WrongLength {
                expected: self.nonsink.len(),
                got: grains.len(),
            });
        }
        Ok(Configuration { grains })
    }

    pub fn zero_config(&self) -> Configuration {
        Configuration {
            grains: vec![0; self.nonsink.len()],
        }
    }

    pub fn config_from_record(&self, rec: &ConfigurationRecord) -> Result<Configuration, SandpileError> {
        let mut grains = vec![0; self.nonsink.len()];
        for (&v, &g) in &rec.grains {
            let i = self
                .nonsink
                .binary_search(&v)
                .map_err(|_| SandpileError::UnknownVertex(v))?;
            grains[i] = g;
        }
        Ok(Configuration { grains })
    }

    pub fn record(&self, c: &Configuration) -> ConfigurationRecord {
        ConfigurationRecord {
            sink: self.sink,
            grains: self
                .nonsink
                .iter()
                .copied()
                .zip(c.grains.iter().copied())
                .collect(),
        }
    }

    fn degree_of(&self, idx: usize) -> u32 {
        self.graph.degree(self.nonsink[idx]).unwrap()
    }

    pub fn is_stable(&self, c: &Configuration) -> bool {
        self.first_unstable(c).is_none()
    }

    fn first_unstable(&self, c: &Configuration) -> Option<usize> {
        (0..self.nonsink.len()).find(|&i| c.grains[i] >= self.degree_of(i))
    }

    /// Topples unstable vertices until none remain, returning the stable
    /// configuration and how many times each non-sink vertex toppled.
    pub fn stabilize(&self, c: &Configuration) -> (Configuration, Vec<u64>) {
        self.stabilize_with_policy(c, TopplePolicy::default())
    }

    pub fn stabilize_with_policy(
        &self,
        c: &Configuration,
        policy: TopplePolicy,
    ) -> (Configuration, Vec<u64>) {
        let mut grains = c.grains.clone();
        let mut topples = vec![0u64; grains.len()];
        match policy {
            TopplePolicy::LowestLabelFirst => loop {
                let Some(i) = (0..grains.len()).find(|&i| grains[i] >= self.degree_of(i)) else {
                    break;
                };
                self.topple(&mut grains, i);
                topples[i] += 1;
            },
            TopplePolicy::Fifo => {
                let mut queue: VecDeque<usize> = (0..grains.len())
                    .filter(|&i| grains[i] >= self.degree_of(i))
                    .collect();
                let mut queued = vec![false; grains.len()];
                for &i in &queue {
                    queued[i] = true;
                }
                while let Some(i) = queue.pop_front() {
                    queued[i] = false;
                    if grains[i] < self.degree_of(i) {
                        continue;
                    }
                    self.topple(&mut grains, i);
                    topples[i] += 1;
                    for j in 0..grains.len() {
                        if !queued[j] && grains[j] >= self.degree_of(j) {
                            queue.push_back(j);
                            queued[j] = true;
                        }
                    }
                }
            }
        }
        (Configuration { grains }, topples)
    }

    /// One grain along each incident edge; grains sent to the sink vanish.
    fn topple(&self, grains: &mut [u32], i: usize) {
        grains[i] -= self.degree_of(i);
        for w in self.graph.neighbours(self.nonsink[i]).unwrap() {
            if let Ok(j) = self.nonsink.binary_search(&w) {
                grains[j] += 1;
            }
        }
    }

    /// Dhar's burning criterion: a stable `c` is recurrent iff adding one
    /// grain per sink-neighbour and stabilising returns `c`.
    pub fn is_recurrent(&self, c: &Configuration) -> Result<bool, SandpileError> {
        if let Some(i) = self.first_unstable(c) {
            return Err(SandpileError::Unstable(self.nonsink[i]));
        }
        let mut grains = c.grains.clone();
        for w in self.graph.neighbours(self.sink).unwrap() {
            let j = self.nonsink.binary_search(&w).unwrap();
            grains[j] += 1;
        }
        let (stable, topples) = self.stabilize(&Configuration { grains });
        let recurrent = stable == *c;
        if recurrent {
            debug_assert!(topples.iter().all(|&t| t == 1));
        }
        Ok(recurrent)
    }

    /// Total grains plus sink degree minus edge count.
    pub fn level(&self, c: &Configuration) -> i64 {
        c.total() as i64 + self.graph.degree(self.sink).unwrap() as i64
            - self.graph.edge_count() as i64
    }

    /// Number of stable configurations (product of non-sink degrees).
    pub fn stable_state_count(&self) -> u128 {
        (0..self.nonsink.len()).map(|i| self.degree_of(i) as u128).product()
    }

    pub const DEFAULT_STATE_LIMIT: u128 = 100_000_000;

    /// All recurrent configurations, in lexicographic order, by exhaustive
    /// burning over the stable state space.
    pub fn recurrent_configs(&self) -> Result<Vec<Configuration>, SandpileError> {
        self.recurrent_configs_with_limit(Self::DEFAULT_STATE_LIMIT)
    }

    pub fn recurrent_configs_with_limit(
        &self,
        limit: u128,
    ) -> Result<Vec<Configuration>, SandpileError> {
        let states = self.stable_state_count();
        if states > limit {
            return Err(SandpileError::StateSpaceTooLarge { states, limit });
        }
        let mut out = Vec::new();
        let mut grains = vec![0u32; self.nonsink.len()];
        loop {
            let c = Configuration {
                grains: grains.clone(),
            };
            if self.is_recurrent(&c)? {
                out.push(c);
            }
            // lexicographic odometer over the stable box
            let mut i = grains.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if grains[i] + 1 < self.degree_of(i) {
                    grains[i] += 1;
                    break;
                }
                grains[i] = 0;
            }
        }
    }

    /// Minimal recurrent configurations, via the in-degree map on rooted
    /// acyclic orientations. No state-space limit applies on this route.
    pub fn minimal_recurrent_configs(&self) -> Vec<Configuration> {
        let mut out: Vec<Configuration> = self
            .graph
            .rooted_acyclic_orientations(self.sink)
            .expect("sandpile graph is connected with a valid sink")
            .iter()
            .map(|o| self.in_degree_config(o))
            .collect();
        out.sort_unstable();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
        out
    }

    fn in_degree_config(&self, o: &Orientation) -> Configuration {
        Configuration {
            grains: self.nonsink.iter().map(|&v| o.in_degree(v)).collect(),
        }
    }

    /// Maps an `s`-rooted acyclic orientation to the configuration assigning
    /// each non-sink vertex its in-degree; the result is minimal recurrent.
    pub fn orientation_to_config(&self, o: &Orientation) -> Result<Configuration, SandpileError> {
        if !o.orients(&self.graph) {
            return Err(SandpileError::NotAnOrientation);
        }
        if !o.is_acyclic() {
            return Err(SandpileError::NotAcyclic);
        }
        let targets = o.targets(&self.graph);
        if targets != vec![self.sink] {
            return Err(SandpileError::WrongTarget(targets));
        }
        Ok(self.in_degree_config(o))
    }

    /// Level-polynomial coefficients, constant term first.
    pub fn level_polynomial(&self) -> Result<Vec<u64>, SandpileError> {
        let mut coeffs: Vec<u64> = Vec::new();
        for c in self.recurrent_configs()? {
            let lvl = self.level(&c);
            debug_assert!(lvl >= 0);
            let lvl = lvl as usize;
            if coeffs.len() <= lvl {
                coeffs.resize(lvl + 1, 0);
            }
            coeffs[lvl] += 1;
        }
        Ok(coeffs)
    }
}

/// Number of minimal recurrent configurations of `g`, computed with the
/// lowest-labelled vertex as sink. Sink choice does not affect the count.
pub fn minrec_count(g: &Graph) -> Result<u64, GraphError> {
    if g.vertices().is_empty() {
        return Err(GraphError::Empty);
    }
    g.count_rooted_acyclic_orientations(g.vertices()[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3_sandpile() -> SandpileGraph {
        // sink 1, non-sink vertices 2 ("a") and 3 ("b")
        SandpileGraph::new(Graph::cycle(3), 1).unwrap()
    }

    #[test]
    fn stabilize_hand_simulation() {
        let sg = c3_sandpile();
        let c = sg.config(vec![2, 1]).unwrap();
        let (stable, topples) = sg.stabilize(&c);
        assert_eq!(stable.grains(), &[1, 0]);
        assert_eq!(topples, vec![1, 1]);

        let already = sg.config(vec![1, 1]).unwrap();
        let (same, topples) = sg.stabilize(&already);
        assert_eq!(same, already);
        assert_eq!(topples, vec![0, 0]);
    }

    #[test]
    fn stabilization_is_policy_independent() {
        let sg = c3_sandpile();
        let c = sg.config(vec![5, 4]).unwrap();
        let (a, _) = sg.stabilize_with_policy(&c, TopplePolicy::LowestLabelFirst);
        let (b, _) = sg.stabilize_with_policy(&c, TopplePolicy::Fifo);
        assert_eq!(a, b);
    }

    #[test]
    fn burning_criterion_on_c3() {
        let sg = c3_sandpile();
        assert!(sg.is_recurrent(&sg.config(vec![1, 1]).unwrap()).unwrap());
        assert!(!sg.is_recurrent(&sg.config(vec![0, 0]).unwrap()).unwrap());
        assert_eq!(
            sg.is_recurrent(&sg.config(vec![2, 0]).unwrap()),
            Err(SandpileError::Unstable(2))
        );
    }

    #[test]
    fn single_edge_recurrents() {
        let g = Graph::new(vec![1, 2], &[(1, 2)]).unwrap();
        let sg = SandpileGraph::new(g, 1).unwrap();
        let rec = sg.recurrent_configs().unwrap();
        assert_eq!(rec, vec![sg.config(vec![0]).unwrap()]);
        assert_eq!(sg.minimal_recurrent_configs(), rec);
    }

    #[test]
    fn levels_and_polynomial() {
        let sg = c3_sandpile();
        assert_eq!(sg.level(&sg.config(vec![1, 1]).unwrap()), 1);
        assert_eq!(sg.level(&sg.config(vec![1, 0]).unwrap()), 0);
        let rec = sg.recurrent_configs().unwrap();
        let grains: Vec<&[u32]> = rec.iter().map(|c| c.grains()).collect();
        assert_eq!(grains, vec![&[0, 1][..], &[1, 0][..], &[1, 1][..]]);
        assert!(rec.iter().all(|c| sg.level(c) >= 0));
        assert_eq!(sg.level_polynomial().unwrap(), vec![2, 1]);
    }

    #[test]
    fn cycle_minrecs_drop_one_grain_from_all_ones() {
        for k in 3..=8 {
            let sg = SandpileGraph::new(Graph::cycle(k), 1).unwrap();
            let minrec = sg.minimal_recurrent_configs();
            assert_eq!(minrec.len(), k - 1);
            for c in &minrec {
                assert_eq!(c.total(), k as u64 - 2);
                assert!(c.grains().iter().all(|&g| g <= 1));
                assert!(sg.is_recurrent(c).unwrap());
                assert_eq!(sg.level(c), 0);
            }
        }
    }

    #[test]
    fn complete_graph_minrecs_are_permutations_of_0_to_n_minus_2() {
        for n in 2..=5 {
            let sg = SandpileGraph::new(Graph::complete(n), 1).unwrap();
            let minrec = sg.minimal_recurrent_configs();
            assert_eq!(minrec.len() as u64, (1..n as u64).product::<u64>());
            for c in &minrec {
                let mut sorted = c.grains().to_vec();
                sorted.sort_unstable();
                let expected: Vec<u32> = (0..n as u32 - 1).collect();
                assert_eq!(sorted, expected);
            }
        }
    }

    #[test]
    fn orientation_config_correspondence_on_k3() {
        let sg = c3_sandpile();
        let os = sg.graph().rooted_acyclic_orientations(1).unwrap();
        assert_eq!(os.len(), 2);
        let mut images: Vec<Configuration> = os
            .iter()
            .map(|o| sg.orientation_to_config(o).unwrap())
            .collect();
        images.sort_unstable();
        assert_eq!(images, sg.minimal_recurrent_configs());

        // C_4: 3 orientations versus 3 level-0 recurrents.
        let sg = SandpileGraph::new(Graph::cycle(4), 1).unwrap();
        let level0: Vec<Configuration> = sg
            .recurrent_configs()
            .unwrap()
            .into_iter()
            .filter(|c| sg.level(c) == 0)
            .collect();
        assert_eq!(level0, sg.minimal_recurrent_configs());
        assert_eq!(level0.len(), 3);
    }

    #[test]
    fn orientation_to_config_rejects_bad_input() {
        let sg = c3_sandpile();
        // 1 -> 2 -> 3 -> 1 is a directed cycle.
        let cyc = Orientation::new(vec![(1, 2), (3, 1), (2, 3)]);
        assert_eq!(
            sg.orientation_to_config(&cyc),
            Err(SandpileError::NotAcyclic)
        );
        // acyclic, but target is 3 rather than the sink 1
        let wrong = Orientation::new(vec![(2, 1), (1, 3), (2, 3)]);
        assert_eq!(
            sg.orientation_to_config(&wrong),
            Err(SandpileError::WrongTarget(vec![3]))
        );
        let not_orienting = Orientation::new(vec![(2, 1)]);
        assert_eq!(
            sg.orientation_to_config(&not_orienting),
            Err(SandpileError::NotAnOrientation)
        );
    }

    #[test]
    fn minrec_counts_for_named_graphs() {
        // trees
        let path = Graph::new(vec![1, 2, 3], &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(minrec_count(&path).unwrap(), 1);
        // decorated cycle: C_4 with a pendant path
        let decorated = Graph::new(
            vec![1, 2, 3, 4, 5, 6],
            &[(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(minrec_count(&decorated).unwrap(), 3);
        // butterfly: two triangles joined at a vertex
        let butterfly = Graph::new(
            vec![1, 2, 3, 4, 5],
            &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        assert_eq!(minrec_count(&butterfly).unwrap(), 4);
    }

    #[test]
    fn record_round_trip() {
        let sg = c3_sandpile();
        let c = sg.config(vec![1, 0]).unwrap();
        let rec = sg.record(&c);
        let js = serde_json::to_string(&rec).unwrap();
        assert_eq!(js, r#"{"sink":1,"grains":{"2":1,"3":0}}"#);
        let back: ConfigurationRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(sg.config_from_record(&back).unwrap(), c);
    }
}
