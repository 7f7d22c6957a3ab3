//! Session configuration: dimension, scaling, named edge kinds and defaults
//! shared by the parser, the printers and the verification suites.

use std::collections::{BTreeMap, BTreeSet};

use crate::applications::DegreeAssignment;
use crate::coproducts::Budget;
use crate::index::{MultiIndex, Scaling, Q};
use crate::tree::EdgeKind;

/// One declared edge kind: a display name, a degree for the degree filters,
/// and whether the order functional counts it as an integration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeKindConfig {
    pub name: String,
    pub degree: Q,
    pub integration: bool,
}

/// Validated configuration of a working session. The numeric identifier of
/// an edge kind is its position in `edge_kinds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    /// Length of every multi-index (time and space components together).
    pub dimension: usize,
    /// Weights of the index components.
    pub scaling: Scaling,
    pub edge_kinds: Vec<EdgeKindConfig>,
    /// Declared generator names; empty when node generators are disallowed.
    pub generators: Vec<String>,
    /// Polynomial budget used when no explicit budget is given.
    pub default_budget: u64,
    /// Enumeration defaults.
    pub max_edges: usize,
    pub node_cap: MultiIndex,
    pub edge_cap: MultiIndex,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            dimension: 1,
            scaling: Scaling::ones(1),
            edge_kinds: vec![
                EdgeKindConfig {
                    name: "t".into(),
                    degree: Q::from_integer(2.into()),
                    integration: true,
                },
                EdgeKindConfig {
                    name: "u".into(),
                    degree: crate::index::q_ratio(-3, 2),
                    integration: false,
                },
            ],
            generators: Vec::new(),
            default_budget: 2,
            max_edges: 2,
            node_cap: MultiIndex::new(vec![1]),
            edge_cap: MultiIndex::new(vec![1]),
        }
    }
}

impl SessionConfig {
    /// Checks internal consistency; returns a description of the first
    /// problem found.
    pub fn validate(&self) -> Result<(), String> {
        if self.dimension == 0 {
            return Err("dimension must be positive".into());
        }
        if self.scaling.dim() != self.dimension {
            return Err("scaling length must match the dimension".into());
        }
        if self.node_cap.dim() != self.dimension || self.edge_cap.dim() != self.dimension {
            return Err("enumeration caps must match the dimension".into());
        }
        if self.edge_kinds.is_empty() {
            return Err("at least one edge kind must be declared".into());
        }
        let mut seen = BTreeSet::new();
        for k in &self.edge_kinds {
            if k.name.is_empty() {
                return Err("edge kind names must be nonempty".into());
            }
            if !seen.insert(&k.name) {
                return Err(format!("duplicate edge kind name {:?}", k.name));
            }
        }
        Ok(())
    }

    /// Numeric identifier of a named edge kind.
    pub fn kind_index(&self, name: &str) -> Option<EdgeKind> {
        self.edge_kinds
            .iter()
            .position(|k| k.name == name)
            .map(|i| i as EdgeKind)
    }

    /// Display name of an edge kind, falling back to the bare number for
    /// undeclared kinds.
    pub fn kind_name(&self, kind: EdgeKind) -> String {
        match self.edge_kinds.get(kind as usize) {
            Some(k) => k.name.clone(),
            None => kind.to_string(),
        }
    }

    /// All declared kind identifiers.
    pub fn kinds(&self) -> Vec<EdgeKind> {
        (0..self.edge_kinds.len() as EdgeKind).collect()
    }

    /// Budget built from the default bound, or from an explicit override.
    pub fn budget(&self, bound: Option<u64>) -> Budget {
        Budget::new(bound.unwrap_or(self.default_budget), self.scaling.clone())
    }

    /// Degree assignment collecting the per-kind degrees and integration
    /// flags.
    pub fn degree_assignment(&self) -> DegreeAssignment {
        let mut degrees = BTreeMap::new();
        let mut integration = BTreeSet::new();
        for (i, k) in self.edge_kinds.iter().enumerate() {
            degrees.insert(i as EdgeKind, k.degree.clone());
            if k.integration {
                integration.insert(i as EdgeKind);
            }
        }
        let mut d = DegreeAssignment::new(degrees, self.scaling.clone());
        d.integration_kinds = integration;
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = SessionConfig::default();
        assert_eq!(cfg.validate(), Ok(()));
        assert_eq!(cfg.kind_index("t"), Some(0));
        assert_eq!(cfg.kind_index("u"), Some(1));
        assert_eq!(cfg.kind_index("x"), None);
        assert_eq!(cfg.kind_name(0), "t");
        assert_eq!(cfg.kind_name(9), "9");
    }

    #[test]
    fn validation_rejects_mismatched_scaling() {
        let cfg = SessionConfig { scaling: Scaling::ones(2), ..SessionConfig::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn degree_assignment_collects_flags() {
        let d = SessionConfig::default().degree_assignment();
        assert!(d.integration_kinds.contains(&0));
        assert!(!d.integration_kinds.contains(&1));
        assert_eq!(d.degrees[&1], crate::index::q_ratio(-3, 2));
    }
}
