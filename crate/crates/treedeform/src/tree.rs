//! Decorated rooted trees, planted trees, forests and their canonical forms.
//!
//! A tree node carries an optional generator together with a multi-index
//! (the polynomial decoration); an edge carries a kind and a multi-index.
//! Children are stored as a canonically ordered multiset, so structural
//! equality of two trees is equality of the combinatorial objects and every
//! multiset is represented uniquely.
//!
//! The unit tree (no generator, zero index, no children) is the identity for
//! the tree product. Inside [`Forest`] it is identified with the empty
//! forest; planted forests carry no such identification.

use std::collections::BTreeMap;

use num::BigUint;
use num::One;

use crate::index::{factorial, IndexOffset, MultiIndex, Scaling};
use crate::lincomb::{LinComb, SymmetryFactor};

pub type EdgeKind = u32;
pub type Generator = u32;

/// Internal sentinel generator used to track a vertex through operations
/// that permute children. Never exposed through parsing or printing.
pub(crate) const MARK: Generator = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeLabel {
    pub generator: Option<Generator>,
    pub index: MultiIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel {
    pub kind: EdgeKind,
    pub index: MultiIndex,
}

pub type Branch = (EdgeLabel, DecoratedTree);

/// Rooted tree with decorated nodes and edges, children kept in canonical
/// order at every level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedTree {
    root: NodeLabel,
    branches: Vec<Branch>,
}

/// Tree hanging from an extra undecorated root through a decorated edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlantedTree {
    pub edge: EdgeLabel,
    pub body: DecoratedTree,
}

/// Canonical multiset of decorated trees; the unit tree is identified with
/// the empty forest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest(Vec<DecoratedTree>);

/// Canonical multiset of planted trees, no unit identification.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlantedForest(Vec<PlantedTree>);

/// A forest with one distinguished tree. The distinguished tree is kept even
/// when it is the unit tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistinguishedForest {
    pub marked: DecoratedTree,
    pub rest: Forest,
}

impl NodeLabel {
    pub fn plain(index: MultiIndex) -> Self {
        NodeLabel { generator: None, index }
    }
}

impl DecoratedTree {
    /// Builds a tree from a root label and branches whose subtrees are
    /// already canonical; the branch multiset is sorted here.
    pub fn new(root: NodeLabel, mut branches: Vec<Branch>) -> Self {
        branches.sort();
        DecoratedTree { root, branches }
    }

    pub fn leaf(index: MultiIndex) -> Self {
        DecoratedTree::new(NodeLabel::plain(index), Vec::new())
    }

    /// The unit tree `X^0`.
    pub fn unit(dim: usize) -> Self {
        DecoratedTree::leaf(MultiIndex::zero(dim))
    }

    pub fn is_unit(&self) -> bool {
        self.root.generator.is_none() && self.root.index.is_zero() && self.branches.is_empty()
    }

    pub fn root(&self) -> &NodeLabel {
        &self.root
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn dim(&self) -> usize {
        self.root.index.dim()
    }

    /// Re-sorts every level; identity on trees built through [`Self::new`]
    /// from canonical subtrees.
    pub fn canonicalize(&self) -> Self {
        let branches = self
            .branches
            .iter()
            .map(|(e, t)| (e.clone(), t.canonicalize()))
            .collect();
        DecoratedTree::new(self.root.clone(), branches)
    }

    pub fn edge_count(&self) -> usize {
        self.branches.iter().map(|(_, t)| 1 + t.edge_count()).sum()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.branches.iter().map(|(_, t)| t.vertex_count()).sum::<usize>()
    }

    /// Node label at a vertex in pre-order (root first, then each branch
    /// subtree in canonical order).
    pub fn node_at(&self, v: usize) -> &NodeLabel {
        self.subtree_at(v).map(|t| &t.root).expect("vertex id in range")
    }

    /// Subtree rooted at a pre-order vertex.
    pub fn subtree_at(&self, v: usize) -> Option<&DecoratedTree> {
        if v == 0 {
            return Some(self);
        }
        let mut offset = 1;
        for (_, child) in &self.branches {
            let n = child.vertex_count();
            if v < offset + n {
                return child.subtree_at(v - offset);
            }
            offset += n;
        }
        None
    }

    /// Sum of the edge gradings `|index(e)|_s` over all edges.
    pub fn grading(&self, s: &Scaling) -> u64 {
        self.branches
            .iter()
            .map(|(e, t)| e.index.weight(s) + t.grading(s))
            .sum()
    }

    /// Sum of the node gradings `|n_v|_s` over all vertices.
    pub fn node_grading(&self, s: &Scaling) -> u64 {
        self.root.index.weight(s)
            + self.branches.iter().map(|(_, t)| t.node_grading(s)).sum::<u64>()
    }

    /// Tree product: decorations at the roots add, branch multisets merge.
    pub fn mul(&self, other: &DecoratedTree) -> DecoratedTree {
        assert!(
            self.root.generator.is_none() || other.root.generator.is_none(),
            "cannot multiply two generator-carrying roots"
        );
        let generator = self.root.generator.or(other.root.generator);
        let index = self.root.index.add(&other.root.index);
        let mut branches = self.branches.clone();
        branches.extend(other.branches.iter().cloned());
        DecoratedTree::new(NodeLabel { generator, index }, branches)
    }

    pub fn with_root_index(&self, index: MultiIndex) -> DecoratedTree {
        DecoratedTree::new(
            NodeLabel { generator: self.root.generator, index },
            self.branches.clone(),
        )
    }

    pub(crate) fn with_root_generator(&self, generator: Option<Generator>) -> DecoratedTree {
        DecoratedTree::new(
            NodeLabel { generator, index: self.root.index.clone() },
            self.branches.clone(),
        )
    }
}

impl PlantedTree {
    pub fn new(edge: EdgeLabel, body: DecoratedTree) -> Self {
        PlantedTree { edge, body }
    }

    pub fn grading(&self, s: &Scaling) -> u64 {
        self.edge.index.weight(s) + self.body.grading(s)
    }

    pub fn node_grading(&self, s: &Scaling) -> u64 {
        self.body.node_grading(s)
    }
}

impl Forest {
    pub fn new(trees: Vec<DecoratedTree>) -> Self {
        let mut trees: Vec<_> = trees.into_iter().filter(|t| !t.is_unit()).collect();
        trees.sort();
        Forest(trees)
    }

    pub fn one() -> Self {
        Forest(Vec::new())
    }

    pub fn singleton(t: DecoratedTree) -> Self {
        Forest::new(vec![t])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trees(&self) -> &[DecoratedTree] {
        &self.0
    }

    pub fn mul(&self, other: &Forest) -> Forest {
        let mut trees = self.0.clone();
        trees.extend(other.0.iter().cloned());
        Forest::new(trees)
    }

    pub fn node_grading(&self, s: &Scaling) -> u64 {
        self.0.iter().map(|t| t.node_grading(s)).sum()
    }
}

impl PlantedForest {
    pub fn new(mut trees: Vec<PlantedTree>) -> Self {
        trees.sort();
        PlantedForest(trees)
    }

    pub fn one() -> Self {
        PlantedForest(Vec::new())
    }

    pub fn singleton(t: PlantedTree) -> Self {
        PlantedForest(vec![t])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trees(&self) -> &[PlantedTree] {
        &self.0
    }

    pub fn mul(&self, other: &PlantedForest) -> PlantedForest {
        let mut trees = self.0.clone();
        trees.extend(other.0.iter().cloned());
        PlantedForest::new(trees)
    }

    pub fn node_grading(&self, s: &Scaling) -> u64 {
        self.0.iter().map(|t| t.node_grading(s)).sum()
    }
}

/// Symmetry factor of a tree: `k! * prod_groups S(subtree)^m * m!` where `k`
/// is the root index and identical branches are grouped with multiplicity `m`.
pub fn symmetry_factor_tree(t: &DecoratedTree) -> BigUint {
    let mut s = t.root().index.factorial();
    let mut i = 0;
    let branches = t.branches();
    while i < branches.len() {
        let mut j = i;
        while j < branches.len() && branches[j] == branches[i] {
            j += 1;
        }
        let m = (j - i) as u64;
        let sub = symmetry_factor_tree(&branches[i].1);
        s *= sub.pow((j - i) as u32) * factorial(m);
        i = j;
    }
    s
}

fn multiset_symmetry<B: Eq, F: Fn(&B) -> BigUint>(items: &[B], factor: F) -> BigUint {
    let mut s = BigUint::one();
    let mut i = 0;
    while i < items.len() {
        let mut j = i;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        let m = (j - i) as u64;
        s *= factor(&items[i]).pow((j - i) as u32) * factorial(m);
        i = j;
    }
    s
}

impl SymmetryFactor for DecoratedTree {
    fn symmetry_factor(&self) -> BigUint {
        symmetry_factor_tree(self)
    }
}

impl SymmetryFactor for PlantedTree {
    fn symmetry_factor(&self) -> BigUint {
        symmetry_factor_tree(&self.body)
    }
}

impl SymmetryFactor for Forest {
    fn symmetry_factor(&self) -> BigUint {
        multiset_symmetry(self.trees(), symmetry_factor_tree)
    }
}

impl SymmetryFactor for PlantedForest {
    fn symmetry_factor(&self) -> BigUint {
        multiset_symmetry(self.trees(), |t| symmetry_factor_tree(&t.body))
    }
}

impl SymmetryFactor for DistinguishedForest {
    fn symmetry_factor(&self) -> BigUint {
        symmetry_factor_tree(&self.marked) * self.rest.symmetry_factor()
    }
}

/// Result of editing one node: a replacement label together with branches to
/// append below it.
pub type NodeEditTerm = (NodeLabel, Vec<Branch>);
pub type NodeEditor<'a> = &'a dyn Fn(&NodeLabel) -> LinComb<NodeEditTerm>;

/// Applies independent per-vertex edits in a single pass. Each editor sees
/// the original node label and returns a linear combination of replacement
/// labels with extra branches; descendant edits are applied first, so edits
/// at nested vertices compose. Vertex ids refer to the input tree.
pub fn edit_nodes(
    t: &DecoratedTree,
    edits: &BTreeMap<usize, NodeEditor<'_>>,
) -> LinComb<DecoratedTree> {
    fn go(
        t: &DecoratedTree,
        next: &mut usize,
        edits: &BTreeMap<usize, NodeEditor<'_>>,
    ) -> LinComb<DecoratedTree> {
        let my_id = *next;
        *next += 1;
        // rebuilt branch alternatives, one linear combination per child
        let mut rebuilt: LinComb<Vec<Branch>> = LinComb::basis(Vec::new());
        for (edge, child) in t.branches() {
            let child_lc = go(child, next, edits);
            rebuilt = crate::lincomb::bilinear(&rebuilt, &child_lc, |acc, c| {
                let mut acc = acc.clone();
                acc.push((edge.clone(), c.clone()));
                LinComb::basis(acc)
            });
        }
        match edits.get(&my_id) {
            None => rebuilt.map_basis(|branches| DecoratedTree::new(t.root().clone(), branches.clone())),
            Some(editor) => {
                let edited = editor(t.root());
                crate::lincomb::bilinear(&rebuilt, &edited, |branches, (label, extra)| {
                    let mut all = branches.clone();
                    all.extend(extra.iter().cloned());
                    LinComb::basis(DecoratedTree::new(label.clone(), all))
                })
            }
        }
    }
    let mut next = 0;
    go(t, &mut next, edits)
}

/// Single-vertex convenience wrapper around [`edit_nodes`].
pub fn edit_node(
    t: &DecoratedTree,
    v: usize,
    editor: NodeEditor<'_>,
) -> LinComb<DecoratedTree> {
    let mut edits: BTreeMap<usize, NodeEditor<'_>> = BTreeMap::new();
    edits.insert(v, editor);
    edit_nodes(t, &edits)
}

/// Shifts the decoration of vertex `v` by `omega`; `None` when a component
/// would go negative (the term vanishes).
pub fn shift_decoration(
    t: &DecoratedTree,
    v: usize,
    omega: &IndexOffset,
) -> Option<DecoratedTree> {
    let shifted = t.node_at(v).index.offset(omega)?;
    let editor: NodeEditor<'_> = &move |label: &NodeLabel| {
        LinComb::basis((
            NodeLabel { generator: label.generator, index: shifted.clone() },
            Vec::new(),
        ))
    };
    let lc = edit_node(t, v, editor);
    let mut it = lc.iter();
    let (tree, _) = it.next().expect("single term");
    Some(tree.clone())
}

/// Replaces the subtree rooted at vertex `v`.
pub fn replace_subtree(
    t: &DecoratedTree,
    v: usize,
    replacement: DecoratedTree,
) -> DecoratedTree {
    fn go(t: &DecoratedTree, next: &mut usize, v: usize, r: &DecoratedTree) -> DecoratedTree {
        let my_id = *next;
        *next += 1;
        if my_id == v {
            // advance the counter past the replaced subtree
            *next += t.vertex_count() - 1;
            return r.clone();
        }
        let branches = t
            .branches()
            .iter()
            .map(|(e, c)| (e.clone(), go(c, next, v, r)))
            .collect();
        DecoratedTree::new(t.root().clone(), branches)
    }
    let mut next = 0;
    go(t, &mut next, v, &replacement)
}

/// Marks vertex `v` with the internal sentinel generator.
pub(crate) fn mark_vertex(t: &DecoratedTree, v: usize) -> DecoratedTree {
    let marked = t.subtree_at(v).expect("vertex id in range").with_root_generator(Some(MARK));
    replace_subtree(t, v, marked)
}

/// Pre-order id of the unique marked vertex.
pub(crate) fn find_marked(t: &DecoratedTree) -> Option<usize> {
    (0..t.vertex_count()).find(|&v| t.node_at(v).generator == Some(MARK))
}

/// Pre-order ids of all marked vertices.
pub(crate) fn find_all_marked(t: &DecoratedTree) -> Vec<usize> {
    (0..t.vertex_count())
        .filter(|&v| t.node_at(v).generator == Some(MARK))
        .collect()
}

/// Clears the sentinel generator everywhere.
pub(crate) fn unmark_all(t: &DecoratedTree) -> DecoratedTree {
    let root = NodeLabel {
        generator: if t.root().generator == Some(MARK) { None } else { t.root().generator },
        index: t.root().index.clone(),
    };
    let branches = t
        .branches()
        .iter()
        .map(|(e, c)| (e.clone(), unmark_all(c)))
        .collect();
    DecoratedTree::new(root, branches)
}

/// Marks every vertex of the tree.
pub(crate) fn mark_all(t: &DecoratedTree) -> DecoratedTree {
    let root = NodeLabel { generator: Some(MARK), index: t.root().index.clone() };
    let branches = t
        .branches()
        .iter()
        .map(|(e, c)| (e.clone(), mark_all(c)))
        .collect();
    DecoratedTree::new(root, branches)
}

/// Deterministic enumeration of generator-free decorated trees with at most
/// `max_edges` edges, node decorations bounded by `node_cap` and edge
/// decorations bounded by `edge_cap`, over the given edge kinds.
pub fn enumerate_trees(
    max_edges: usize,
    node_cap: &MultiIndex,
    edge_cap: &MultiIndex,
    kinds: &[EdgeKind],
) -> Vec<DecoratedTree> {
    let node_indices = crate::index::indices_up_to(node_cap);
    let edge_indices = crate::index::indices_up_to(edge_cap);

    // trees_by_edges[e] = all trees with exactly e edges
    let mut trees_by_edges: Vec<Vec<DecoratedTree>> = Vec::new();
    // branch pool entries (cost in edges, branch), cost = 1 + subtree edges
    let mut pool: Vec<(usize, Branch)> = Vec::new();

    for e in 0..=max_edges {
        let mut level = Vec::new();
        if e == 0 {
            for idx in &node_indices {
                level.push(DecoratedTree::leaf(idx.clone()));
            }
        } else {
            // extend the pool with branches whose subtree has e-1 edges
            for t in &trees_by_edges[e - 1] {
                for kind in kinds {
                    for idx in &edge_indices {
                        pool.push((
                            e,
                            (EdgeLabel { kind: *kind, index: idx.clone() }, t.clone()),
                        ));
                    }
                }
            }
            pool.sort_by(|a, b| a.1.cmp(&b.1));
            let mut combos: Vec<Vec<Branch>> = Vec::new();
            multisets_of_cost(&pool, 0, e, &mut Vec::new(), &mut combos);
            for branches in combos {
                for idx in &node_indices {
                    level.push(DecoratedTree::new(NodeLabel::plain(idx.clone()), branches.clone()));
                }
            }
        }
        level.sort();
        level.dedup();
        trees_by_edges.push(level);
    }
    let mut all: Vec<_> = trees_by_edges.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

fn multisets_of_cost(
    pool: &[(usize, Branch)],
    start: usize,
    remaining: usize,
    current: &mut Vec<Branch>,
    out: &mut Vec<Vec<Branch>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for i in start..pool.len() {
        let (cost, branch) = &pool[i];
        if *cost > remaining {
            continue;
        }
        current.push(branch.clone());
        multisets_of_cost(pool, i, remaining - cost, current, out);
        current.pop();
    }
}

/// Planted trees with at most `max_edges` edges in total (the planted edge
/// included).
pub fn enumerate_planted(
    max_edges: usize,
    node_cap: &MultiIndex,
    edge_cap: &MultiIndex,
    kinds: &[EdgeKind],
) -> Vec<PlantedTree> {
    assert!(max_edges >= 1);
    let bodies = enumerate_trees(max_edges - 1, node_cap, edge_cap, kinds);
    let edge_indices = crate::index::indices_up_to(edge_cap);
    let mut out = Vec::new();
    for body in &bodies {
        for kind in kinds {
            for idx in &edge_indices {
                out.push(PlantedTree::new(
                    EdgeLabel { kind: *kind, index: idx.clone() },
                    body.clone(),
                ));
            }
        }
    }
    out.sort();
    out
}
