//! Exact decision procedures for the four spanning-path properties.
//!
//! Two independent engines are available: a subset dynamic program
//! ([`Engine::HeldKarp`]) and pruned depth-first search
//! ([`Engine::Backtracking`]). Both return identical answers; the harness
//! cross-checks them. [`Engine::Auto`], the default, uses the dynamic
//! program up to [`AUTO_HELD_KARP_MAX`] vertices, since the search can take
//! exponential time on dense graphs with a small tough set.
//!
//! Conventions for tiny orders: the graph with no vertices has none of the
//! properties. `K_1` is traceable, Hamilton-connected and traceable from every
//! vertex but not Hamiltonian. `K_2` is the same as `K_1`; a cycle needs at
//! least three vertices.

mod backtrack;
mod held_karp;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::metrics::full_mask as full;

pub use held_karp::MAX_ORDER as HELD_KARP_MAX_ORDER;

pub const DEFAULT_CAP: usize = 20;

/// Largest order [`Engine::Auto`] hands to Held-Karp.
pub const AUTO_HELD_KARP_MAX: usize = 20;

/// Largest order the backtracking engine supports.
pub const BACKTRACKING_MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {order} vertices, above the oracle size cap of {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Auto,
    HeldKarp,
    Backtracking,
}

impl Engine {
    pub fn max_order(self) -> usize {
        match self {
            Engine::HeldKarp => held_karp::MAX_ORDER,
            Engine::Auto | Engine::Backtracking => BACKTRACKING_MAX_ORDER,
        }
    }

    /// The concrete engine used at order `n`.
    pub fn resolve(self, n: usize) -> Engine {
        match self {
            Engine::Auto if n <= AUTO_HELD_KARP_MAX => Engine::HeldKarp,
            Engine::Auto => Engine::Backtracking,
            e => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub engine: Engine,
    /// Largest accepted order. Clamped to what the engine supports.
    pub cap: usize,
    /// Answer Hamilton-connectedness of bipartite graphs with `n >= 3` as
    /// false without searching. Same-part pairs need an odd number of
    /// vertices and cross pairs an even one, so some pair always fails.
    pub parity_shortcut: bool,
    /// Search vertex pairs in parallel.
    pub parallel_pairs: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            engine: Engine::Auto,
            cap: DEFAULT_CAP,
            parity_shortcut: true,
            parallel_pairs: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "lowercase")]
pub enum Witness {
    /// Vertices of a spanning cycle in order; the closing edge is implied.
    Cycle(Vec<usize>),
    Path(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonicityProfile {
    pub hamiltonian: bool,
    pub traceable: bool,
    pub hamilton_connected: bool,
    pub traceable_from_every_vertex: bool,
    /// A spanning cycle if one exists, else a spanning path if one exists.
    pub witness: Option<Witness>,
}

impl HamiltonicityProfile {
    pub fn get(&self, property: Property) -> bool {
        match property {
            Property::Traceable => self.traceable,
            Property::Hamiltonian => self.hamiltonian,
            Property::HamiltonConnected => self.hamilton_connected,
            Property::TraceableFromEveryVertex => self.traceable_from_every_vertex,
        }
    }

    /// Checks the implications between the properties.
    pub fn is_coherent(&self, order: usize) -> bool {
        (!self.hamilton_connected || order < 3 || self.hamiltonian)
            && (!self.hamiltonian || order < 2 || self.traceable)
            && (!self.traceable_from_every_vertex || self.traceable)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Traceable,
    Hamiltonian,
    HamiltonConnected,
    TraceableFromEveryVertex,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Traceable,
        Property::Hamiltonian,
        Property::HamiltonConnected,
        Property::TraceableFromEveryVertex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Traceable => "traceable",
            Property::Hamiltonian => "hamiltonian",
            Property::HamiltonConnected => "hamilton_connected",
            Property::TraceableFromEveryVertex => "traceable_from_every_vertex",
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

pub(crate) fn is_bipartite_masks(masks: &[u64]) -> bool {
    let n = masks.len();
    let mut colour = [0u8; 64];
    let mut unseen = full(n);
    while unseen != 0 {
        let root = unseen.trailing_zeros() as usize;
        colour[root] = 1;
        unseen &= !(1 << root);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let mut nb = masks[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if colour[w] == 0 {
                    colour[w] = 3 - colour[v];
                    unseen &= !(1 << w);
                    stack.push(w);
                } else if colour[w] == colour[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Decision procedures bound to one engine and size cap.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub config: OracleConfig,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Self {
        Oracle { config }
    }

    pub fn with_engine(engine: Engine) -> Self {
        Oracle::new(OracleConfig {
            engine,
            ..OracleConfig::default()
        })
    }

    fn masks(&self, g: &Graph) -> Result<Vec<u64>, OracleError> {
        let cap = self.config.cap.min(self.config.engine.max_order());
        if g.order() > cap {
            return Err(OracleError::SizeCapExceeded {
                order: g.order(),
                cap,
            });
        }
        Ok(g.masks().expect("order within 64"))
    }

    /// A spanning cycle, if one exists.
    pub fn hamiltonian_cycle(&self, g: &Graph) -> Result<Option<Vec<usize>>, OracleError> {
        let m = self.masks(g)?;
        Ok(match self.config.engine.resolve(m.len()) {
            Engine::Backtracking => backtrack::hamiltonian_cycle(&m),
            _ => held_karp::hamiltonian_cycle(&m),
        })
    }

    /// A spanning path, if one exists.
    pub fn hamiltonian_path(&self, g: &Graph) -> Result<Option<Vec<usize>>, OracleError> {
        let m = self.masks(g)?;
        Ok(match self.config.engine.resolve(m.len()) {
            Engine::Backtracking => backtrack::hamiltonian_path(&m),
            _ => held_karp::hamiltonian_path(&m),
        })
    }

    pub fn has_hamiltonian_cycle(&self, g: &Graph) -> Result<bool, OracleError> {
        Ok(self.hamiltonian_cycle(g)?.is_some())
    }

    pub fn has_hamiltonian_path(&self, g: &Graph) -> Result<bool, OracleError> {
        Ok(self.hamiltonian_path(g)?.is_some())
    }

    pub fn is_hamilton_connected(&self, g: &Graph) -> Result<bool, OracleError> {
        let m = self.masks(g)?;
        Ok(self.hamilton_connected_masks(&m))
    }

    fn hamilton_connected_masks(&self, m: &[u64]) -> bool {
        if self.config.parity_shortcut && m.len() >= 3 && is_bipartite_masks(m) {
            return false;
        }
        match self.config.engine.resolve(m.len()) {
            Engine::Backtracking => backtrack::hamilton_connected(m, self.config.parallel_pairs),
            _ => held_karp::hamilton_connected(m),
        }
    }

    pub fn is_traceable_from_every_vertex(&self, g: &Graph) -> Result<bool, OracleError> {
        let m = self.masks(g)?;
        Ok(match self.config.engine.resolve(m.len()) {
            Engine::Backtracking => backtrack::traceable_from_every_vertex(&m),
            _ => held_karp::traceable_from_every_vertex(&m),
        })
    }

    pub fn decide(&self, g: &Graph, property: Property) -> Result<bool, OracleError> {
        match property {
            Property::Traceable => self.has_hamiltonian_path(g),
            Property::Hamiltonian => self.has_hamiltonian_cycle(g),
            Property::HamiltonConnected => self.is_hamilton_connected(g),
            Property::TraceableFromEveryVertex => self.is_traceable_from_every_vertex(g),
        }
    }

    /// All four properties. Implications between them skip searches whose
    /// answer is already determined.
    pub fn profile(&self, g: &Graph) -> Result<HamiltonicityProfile, OracleError> {
        let m = self.masks(g)?;
        let n = m.len();
        let path = match self.config.engine.resolve(m.len()) {
            Engine::Backtracking => backtrack::hamiltonian_path(&m),
            _ => held_karp::hamiltonian_path(&m),
        };
        if path.is_none() {
            return Ok(HamiltonicityProfile {
                hamiltonian: false,
                traceable: false,
                hamilton_connected: false,
                traceable_from_every_vertex: false,
                witness: None,
            });
        }
        let cycle = match self.config.engine.resolve(m.len()) {
            Engine::Backtracking => backtrack::hamiltonian_cycle(&m),
            _ => held_karp::hamiltonian_cycle(&m),
        };
        let hamiltonian = cycle.is_some();
        // rotating a spanning cycle starts a spanning path anywhere
        let from_every = hamiltonian
            || match self.config.engine.resolve(m.len()) {
                Engine::Backtracking => backtrack::traceable_from_every_vertex(&m),
                _ => held_karp::traceable_from_every_vertex(&m),
            };
        let hamilton_connected = if n >= 3 && !hamiltonian {
            false
        } else {
            self.hamilton_connected_masks(&m)
        };
        Ok(HamiltonicityProfile {
            hamiltonian,
            traceable: true,
            hamilton_connected,
            traceable_from_every_vertex: from_every,
            witness: Some(match cycle {
                Some(c) => Witness::Cycle(c),
                None => Witness::Path(path.expect("checked above")),
            }),
        })
    }
}

pub fn has_hamiltonian_cycle(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().has_hamiltonian_cycle(g)
}

pub fn has_hamiltonian_path(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().has_hamiltonian_path(g)
}

pub fn is_hamilton_connected(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().is_hamilton_connected(g)
}

pub fn is_traceable_from_every_vertex(g: &Graph) -> Result<bool, OracleError> {
    Oracle::default().is_traceable_from_every_vertex(g)
}

pub fn profile(g: &Graph) -> Result<HamiltonicityProfile, OracleError> {
    Oracle::default().profile(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;

    fn engines() -> [Oracle; 3] {
        [
            Oracle::with_engine(Engine::HeldKarp),
            Oracle::with_engine(Engine::Backtracking),
            Oracle::new(OracleConfig {
                parity_shortcut: false,
                parallel_pairs: false,
                ..OracleConfig::default()
            }),
        ]
    }

    #[test]
    fn documented_examples() {
        let k34 = BipartiteGraph::complete(3, 4).into_graph();
        let k23 = BipartiteGraph::complete(2, 3).into_graph();
        let star = BipartiteGraph::complete(1, 3).into_graph();
        for o in engines() {
            assert!(o.has_hamiltonian_cycle(&Graph::cycle(6)).unwrap());
            assert!(!o.has_hamiltonian_cycle(&k34).unwrap());
            assert!(!o.has_hamiltonian_cycle(&Graph::petersen()).unwrap());
            assert!(o.has_hamiltonian_path(&Graph::petersen()).unwrap());
            assert!(o.has_hamiltonian_path(&Graph::path(7)).unwrap());
            assert!(!o.has_hamiltonian_path(&star).unwrap());
            assert!(o.is_hamilton_connected(&Graph::complete(4)).unwrap());
            assert!(!o.is_hamilton_connected(&Graph::cycle(6)).unwrap());
            assert!(!o.is_hamilton_connected(&k34).unwrap());
            assert!(o.is_traceable_from_every_vertex(&Graph::cycle(5)).unwrap());
            assert!(!o.is_traceable_from_every_vertex(&Graph::path(4)).unwrap());
            // spanning paths of K_{2,3} alternate Y X Y X Y, so none starts in X
            assert!(!o.is_traceable_from_every_vertex(&k23).unwrap());
            assert!(o.has_hamiltonian_path(&k23).unwrap());
        }
    }

    #[test]
    fn tiny_orders() {
        for o in engines() {
            let p0 = o.profile(&Graph::empty(0)).unwrap();
            assert!(!p0.traceable && !p0.hamiltonian && !p0.hamilton_connected);
            assert!(!p0.traceable_from_every_vertex);
            let p1 = o.profile(&Graph::complete(1)).unwrap();
            assert!(p1.traceable && !p1.hamiltonian && p1.hamilton_connected);
            assert!(p1.traceable_from_every_vertex);
            let p2 = o.profile(&Graph::complete(2)).unwrap();
            assert!(p2.traceable && !p2.hamiltonian && p2.hamilton_connected);
            assert!(p2.traceable_from_every_vertex);
            assert!(!o.profile(&Graph::empty(2)).unwrap().traceable);
            assert!(!o.is_hamilton_connected(&Graph::empty(2)).unwrap());
            assert!(!o.is_traceable_from_every_vertex(&Graph::empty(2)).unwrap());
            let p3 = o.profile(&Graph::complete(3)).unwrap();
            assert!(p3.hamiltonian && p3.hamilton_connected);
        }
    }

    #[test]
    fn size_cap() {
        let g = Graph::cycle(21);
        assert_eq!(
            has_hamiltonian_cycle(&g),
            Err(OracleError::SizeCapExceeded { order: 21, cap: 20 })
        );
        let wide = Oracle::new(OracleConfig {
            cap: 40,
            ..OracleConfig::default()
        });
        assert!(wide.has_hamiltonian_cycle(&g).unwrap());
    }

    #[test]
    fn witness_serialization() {
        let p = profile(&Graph::path(3)).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["witness"]["kind"], "path");
        assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 3);
        assert!(matches!(
            profile(&Graph::cycle(4)).unwrap().witness,
            Some(Witness::Cycle(_))
        ));
    }

    #[test]
    fn bipartite_colouring() {
        assert!(is_bipartite_masks(&Graph::cycle(6).masks().unwrap()));
        assert!(!is_bipartite_masks(&Graph::cycle(5).masks().unwrap()));
        assert!(is_bipartite_masks(&Graph::empty(3).masks().unwrap()));
    }
}
