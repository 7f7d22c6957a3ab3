//! Plugging and insertion products on decorated trees.
//!
//! Plugging identifies the root of the left tree with a vertex of the right
//! one, adding decorations and merging branch multisets. Its deformation
//! lowers one branch decoration of the plugged tree against the decoration
//! of the target vertex, one correction index per root branch.
//!
//! The root-merge map `K` turns a forest into a tree; its adjoint
//! [`split_blocks`] decomposes a tree into all forests that merge back to
//! it, weighted so that the symmetry pairing is preserved. Combining the two
//! gives the associative products [`star_plain`] and [`star2`], and through
//! the subtree/trunk decomposition the insertion products.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::Zero;

use crate::grafting::{theta_inv, theta_lc};
use crate::guin_oudom::{bullet, word, PreLie, Word};
use crate::index::{
    compositions, indices_up_to, multinomial, q_biguint, IndexOffset, MultiIndex, Q,
};
use crate::lincomb::{bilinear, LinComb, SymmetryFactor};
use crate::tree::{
    edit_node, edit_nodes, find_marked, mark_vertex, replace_subtree, unmark_all, Branch,
    DecoratedTree, Forest, NodeEditor, NodeLabel, PlantedTree,
};

/// Which vertices of the right argument an operation ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexMode {
    All,
    Root,
    NonRoot,
    At(usize),
}

pub fn mode_vertices(mode: VertexMode, t: &DecoratedTree) -> Vec<usize> {
    match mode {
        VertexMode::All => (0..t.vertex_count()).collect(),
        VertexMode::Root => vec![0],
        VertexMode::NonRoot => (1..t.vertex_count()).collect(),
        VertexMode::At(v) => vec![v],
    }
}

/// Node editor realising a plain or deformed plug of `sigma` at a vertex.
fn plug_editor<'a>(
    sigma: &'a DecoratedTree,
    deformed: bool,
) -> impl Fn(&NodeLabel) -> LinComb<(NodeLabel, Vec<Branch>)> + 'a {
    assert!(
        sigma.root().generator.is_none(),
        "plugged tree must have a generator-free root"
    );
    move |label: &NodeLabel| {
        let k = &sigma.root().index;
        if !deformed {
            return LinComb::basis((
                NodeLabel { generator: label.generator, index: label.index.add(k) },
                sigma.branches().to_vec(),
            ));
        }
        // one correction index per root branch of sigma, bounded by both the
        // branch decoration and the target decoration
        let caps: Vec<MultiIndex> = sigma
            .branches()
            .iter()
            .map(|(e, _)| min_index(&e.index, &label.index))
            .collect();
        let mut out = LinComb::zero();
        for ls in crate::index::index_tuples_up_to(&caps) {
            let coeff = q_biguint(&multinomial(&label.index, &ls));
            if coeff.is_zero() {
                continue;
            }
            let mut total = MultiIndex::zero(label.index.dim());
            for l in &ls {
                total = total.add(l);
            }
            let node = label
                .index
                .checked_sub(&total)
                .expect("multinomial nonzero")
                .add(k);
            let branches: Vec<Branch> = sigma
                .branches()
                .iter()
                .zip(&ls)
                .map(|((e, c), l)| {
                    (
                        crate::tree::EdgeLabel {
                            kind: e.kind,
                            index: e.index.checked_sub(l).expect("bounded"),
                        },
                        c.clone(),
                    )
                })
                .collect();
            out.add_term(
                (NodeLabel { generator: label.generator, index: node }, branches),
                coeff,
            );
        }
        out
    }
}

fn min_index(a: &MultiIndex, b: &MultiIndex) -> MultiIndex {
    MultiIndex::new(
        a.components()
            .iter()
            .zip(b.components())
            .map(|(&x, &y)| x.min(y))
            .collect(),
    )
}

/// Plugs `sigma` at vertex `v` of `tau` (roots identified, decorations add).
pub fn plug_at(sigma: &DecoratedTree, tau: &DecoratedTree, v: usize) -> LinComb<DecoratedTree> {
    let editor = plug_editor(sigma, false);
    edit_node(tau, v, &editor)
}

/// Deformed plug at vertex `v`.
pub fn deformed_plug_at(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    v: usize,
) -> LinComb<DecoratedTree> {
    let editor = plug_editor(sigma, true);
    edit_node(tau, v, &editor)
}

/// Sum of plugs over the vertices selected by `mode`.
pub fn plug(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    mode: VertexMode,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    let editor = plug_editor(sigma, deformed);
    let mut out = LinComb::zero();
    for v in mode_vertices(mode, tau) {
        out.add_assign(&edit_node(tau, v, &editor));
    }
    out
}

/// Symmetrised deformed plug at the roots, in closed form: both root
/// monomials deform the branches of the opposite tree.
pub fn tilde_plug_root(sigma: &DecoratedTree, tau: &DecoratedTree) -> LinComb<DecoratedTree> {
    assert!(sigma.root().generator.is_none() && tau.root().generator.is_none());
    let k_sigma = &sigma.root().index;
    let k_tau = &tau.root().index;
    let caps_sigma: Vec<MultiIndex> = sigma
        .branches()
        .iter()
        .map(|(e, _)| min_index(&e.index, k_tau))
        .collect();
    let caps_tau: Vec<MultiIndex> = tau
        .branches()
        .iter()
        .map(|(e, _)| min_index(&e.index, k_sigma))
        .collect();
    let mut out = LinComb::zero();
    for ls in crate::index::index_tuples_up_to(&caps_sigma) {
        let c1 = q_biguint(&multinomial(k_tau, &ls));
        if c1.is_zero() {
            continue;
        }
        for lbars in crate::index::index_tuples_up_to(&caps_tau) {
            let c2 = q_biguint(&multinomial(k_sigma, &lbars));
            if c2.is_zero() {
                continue;
            }
            let mut total = MultiIndex::zero(k_sigma.dim());
            for l in ls.iter().chain(&lbars) {
                total = total.add(l);
            }
            let node = k_sigma
                .add(k_tau)
                .checked_sub(&total)
                .expect("multinomials nonzero");
            let mut branches: Vec<Branch> = Vec::new();
            for ((e, c), l) in sigma.branches().iter().zip(&ls) {
                branches.push((
                    crate::tree::EdgeLabel {
                        kind: e.kind,
                        index: e.index.checked_sub(l).expect("bounded"),
                    },
                    c.clone(),
                ));
            }
            for ((e, c), l) in tau.branches().iter().zip(&lbars) {
                branches.push((
                    crate::tree::EdgeLabel {
                        kind: e.kind,
                        index: e.index.checked_sub(l).expect("bounded"),
                    },
                    c.clone(),
                ));
            }
            out.add_term(
                DecoratedTree::new(NodeLabel::plain(node), branches),
                c1.clone() * c2,
            );
        }
    }
    out
}

/// Transported plug at a marked vertex: conjugate the plain plug by the
/// decoration-shift isomorphism. Terms keep the mark on the target vertex.
fn tilde_plug_at_marked(
    sigma: &DecoratedTree,
    tau_marked: &DecoratedTree,
) -> LinComb<DecoratedTree> {
    let si = theta_inv(&LinComb::basis(sigma.clone()));
    let ti = theta_inv(&LinComb::basis(tau_marked.clone()));
    let plugged = bilinear(&si, &ti, |s, t| {
        let v = find_marked(t).expect("marked vertex present");
        plug_at(s, t, v)
    });
    theta_lc(&plugged)
}

/// Plug transported through the decoration-shift isomorphism,
/// `theta(theta_inv(sigma) plugged at v of theta_inv(tau))`.
pub fn tilde_plug_at(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    v: usize,
) -> LinComb<DecoratedTree> {
    tilde_plug_at_marked(sigma, &mark_vertex(tau, v)).map_basis(unmark_all)
}

/// Sum of transported plugs over the selected vertices.
pub fn tilde_plug(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    mode: VertexMode,
) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for v in mode_vertices(mode, tau) {
        out.add_assign(&tilde_plug_at(sigma, tau, v));
    }
    out
}

/// Deformed plug expressed through the transported plug: strip the root
/// monomial of `sigma`, plug through the transported product, then shift the
/// target vertex by the stripped monomial.
pub fn plug_via_uparrow(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    v: usize,
) -> LinComb<DecoratedTree> {
    let stripped = sigma.with_root_index(MultiIndex::zero(sigma.dim()));
    let shift = IndexOffset::from(&sigma.root().index);
    let transported = tilde_plug_at_marked(&stripped, &mark_vertex(tau, v));
    transported
        .map(|t| {
            let vm = find_marked(t).expect("marked vertex present");
            crate::grafting::uparrow_at(t, vm, &shift)
        })
        .map_basis(unmark_all)
}

/// Root-merge: multiplies all trees of a forest into a single tree.
pub fn merge_roots(f: &Forest, dim: usize) -> DecoratedTree {
    let mut out = DecoratedTree::unit(dim);
    for t in f.trees() {
        out = out.mul(t);
    }
    out
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in set_partitions(n - 1) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(n - 1);
            out.push(q);
        }
        let mut q = p.clone();
        q.push(vec![n - 1]);
        out.push(q);
    }
    out
}

/// Multisets of nonzero multi-indices with componentwise sum bounded by `k`,
/// returned as non-decreasing sequences.
fn positive_multisets_up_to(k: &MultiIndex) -> Vec<Vec<MultiIndex>> {
    let choices: Vec<MultiIndex> = indices_up_to(k).into_iter().filter(|m| !m.is_zero()).collect();
    fn rec(
        choices: &[MultiIndex],
        start: usize,
        remaining: &MultiIndex,
        current: &mut Vec<MultiIndex>,
        out: &mut Vec<Vec<MultiIndex>>,
    ) {
        out.push(current.clone());
        for i in start..choices.len() {
            if let Some(rest) = remaining.checked_sub(&choices[i]) {
                current.push(choices[i].clone());
                rec(choices, i, &rest, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&choices, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Adjoint of [`merge_roots`] with respect to the symmetry pairing: the sum
/// over all forests merging back to the given tree, each weighted by the
/// ratio of symmetry factors. Blocks that consist of a bare monomial carry a
/// strictly positive exponent, since a zero-exponent block is the empty
/// forest.
pub fn split_blocks(t: &DecoratedTree) -> LinComb<Forest> {
    assert!(t.root().generator.is_none(), "block splitting needs a generator-free root");
    let k = t.root().index.clone();
    let branches = t.branches().to_vec();
    let n = branches.len();
    let mut forests: BTreeSet<Forest> = BTreeSet::new();
    for partition in set_partitions(n) {
        let m = partition.len();
        for monomials in positive_multisets_up_to(&k) {
            let mut used = MultiIndex::zero(k.dim());
            for mu in &monomials {
                used = used.add(mu);
            }
            let rest = k.checked_sub(&used).expect("bounded");
            for comp in compositions(&rest, m) {
                let mut trees: Vec<DecoratedTree> = monomials
                    .iter()
                    .map(|mu| DecoratedTree::leaf(mu.clone()))
                    .collect();
                for (block, root_idx) in partition.iter().zip(&comp) {
                    let block_branches: Vec<Branch> =
                        block.iter().map(|&i| branches[i].clone()).collect();
                    trees.push(DecoratedTree::new(
                        NodeLabel::plain(root_idx.clone()),
                        block_branches,
                    ));
                }
                forests.insert(Forest::new(trees));
            }
        }
    }
    let s_t = q_biguint(&t.symmetry_factor());
    let mut out = LinComb::zero();
    for f in forests {
        if merge_roots(&f, t.dim()) != *t {
            continue;
        }
        let s_f = q_biguint(&f.symmetry_factor());
        out.add_term(f, s_t.clone() / s_f);
    }
    out
}

/// Plugs the trees of a forest at pairwise distinct vertices of `tau`, in
/// all possible ways.
pub fn forest_plug(
    f: &Forest,
    tau: &DecoratedTree,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    let trees = f.trees();
    let p = trees.len();
    if p == 0 {
        return LinComb::basis(tau.clone());
    }
    if p > tau.vertex_count() {
        return LinComb::zero();
    }
    let editors: Vec<_> = trees.iter().map(|t| plug_editor(t, deformed)).collect();
    let mut out = LinComb::zero();
    for perm in (0..tau.vertex_count()).permutations(p) {
        let mut edits: BTreeMap<usize, NodeEditor<'_>> = BTreeMap::new();
        for (editor, v) in editors.iter().zip(&perm) {
            edits.insert(*v, editor);
        }
        out.add_assign(&edit_nodes(tau, &edits));
    }
    out
}

/// Associative product on trees obtained by splitting the left argument into
/// blocks and plugging them at distinct vertices of the right one.
pub fn star_plug(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for (f, c) in split_blocks(sigma).iter() {
        out.add_assign(&forest_plug(f, tau, deformed).scaled(c));
    }
    out
}

/// The undeformed associative product.
pub fn star_plain(sigma: &DecoratedTree, tau: &DecoratedTree) -> LinComb<DecoratedTree> {
    star_plug(sigma, tau, false)
}

/// The deformed associative product.
pub fn star2(sigma: &DecoratedTree, tau: &DecoratedTree) -> LinComb<DecoratedTree> {
    star_plug(sigma, tau, true)
}

/// Subtree/trunk decomposition at a vertex: the subtree keeps the vertex
/// decoration; in the trunk the branches above the vertex are removed, its
/// decoration zeroed, and the vertex is marked so callers can find it after
/// canonical reordering.
pub(crate) fn subtree_trunk_marked(
    tau: &DecoratedTree,
    v: usize,
) -> (DecoratedTree, DecoratedTree) {
    let p = tau.subtree_at(v).expect("vertex id in range").clone();
    let stub = DecoratedTree::new(
        NodeLabel { generator: Some(crate::tree::MARK), index: MultiIndex::zero(tau.dim()) },
        Vec::new(),
    );
    (p, replace_subtree(tau, v, stub))
}

/// Subtree and trunk at a vertex (trunk with a zeroed, unmarked vertex).
pub fn subtree_trunk(tau: &DecoratedTree, v: usize) -> (DecoratedTree, DecoratedTree) {
    let (p, trunk) = subtree_trunk_marked(tau, v);
    (p, unmark_all(&trunk))
}

/// Insertion of `sigma` at vertex `v` of `tau`: plug the blocks of the
/// subtree above `v` into `sigma` at distinct vertices, then put the result
/// back onto the trunk.
pub fn insert_at(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    v: usize,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    let (p, trunk) = subtree_trunk_marked(tau, v);
    star_plug(&p, sigma, deformed)
        .map(|u| {
            let vm = find_marked(&trunk).expect("marked vertex present");
            plug_at(u, &trunk, vm)
        })
        .map_basis(unmark_all)
}

/// Sum of insertions over the selected vertices.
pub fn insert(
    sigma: &DecoratedTree,
    tau: &DecoratedTree,
    mode: VertexMode,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for v in mode_vertices(mode, tau) {
        out.add_assign(&insert_at(sigma, tau, v, deformed));
    }
    out
}

/// Plugging product as a pre-Lie structure on trees; the unit tree is
/// identified with the empty forest.
pub struct PlugProduct {
    pub deformed: bool,
}

impl PreLie for PlugProduct {
    type B = DecoratedTree;

    fn product(&self, x: &DecoratedTree, y: &DecoratedTree) -> LinComb<DecoratedTree> {
        plug(x, y, VertexMode::All, self.deformed)
    }

    fn is_unit(&self, b: &DecoratedTree) -> bool {
        b.is_unit()
    }
}

/// Insertion product as a pre-Lie structure on trees.
pub struct InsertProduct {
    pub deformed: bool,
}

impl PreLie for InsertProduct {
    type B = DecoratedTree;

    fn product(&self, x: &DecoratedTree, y: &DecoratedTree) -> LinComb<DecoratedTree> {
        insert(x, y, VertexMode::All, self.deformed)
    }

    fn is_unit(&self, b: &DecoratedTree) -> bool {
        b.is_unit()
    }
}

fn forest_word(p: &impl PreLie<B = DecoratedTree>, f: &Forest) -> Word<DecoratedTree> {
    word(p, f.trees().to_vec())
}

fn words_to_forests(x: LinComb<Word<DecoratedTree>>) -> LinComb<Forest> {
    x.map_basis(|w| Forest::new(w.items().to_vec()))
}

/// Associative product on forests built from the deformed insertion product.
pub fn star1(w: &Forest, v: &Forest) -> LinComb<Forest> {
    let p = InsertProduct { deformed: true };
    words_to_forests(crate::guin_oudom::star(&p, &forest_word(&p, w), &forest_word(&p, v)))
}

/// Inserts every tree of a forest into `t`, via the multiset extension of
/// the insertion product.
pub fn forest_insert_full(f: &Forest, t: &DecoratedTree, deformed: bool) -> LinComb<DecoratedTree> {
    match (f.trees().len(), t.is_unit()) {
        (0, _) => return LinComb::basis(t.clone()),
        (1, true) => return LinComb::basis(f.trees()[0].clone()),
        (_, true) => return LinComb::zero(),
        _ => {}
    }
    let p = InsertProduct { deformed };
    let res = bullet(&p, &forest_word(&p, f), &word(&p, vec![t.clone()]));
    res.map_basis(|w| {
        debug_assert_eq!(w.len(), 1);
        w.items()[0].clone()
    })
}

/// Inserts every tree of a forest strictly below the root of `t`: the trees
/// are distributed over the root branches in all ways, each group inserted
/// into its branch subtree.
pub fn forest_insert_nonroot(
    f: &Forest,
    t: &DecoratedTree,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    let trees = f.trees();
    let p = trees.len();
    if p == 0 {
        return LinComb::basis(t.clone());
    }
    let branches = t.branches();
    let b = branches.len();
    if b == 0 {
        return LinComb::zero();
    }
    let mut out = LinComb::zero();
    // assignment of each forest factor to a root branch
    for assignment in std::iter::repeat(0..b).take(p).multi_cartesian_product() {
        let mut groups: Vec<Vec<DecoratedTree>> = vec![Vec::new(); b];
        for (tree, &j) in trees.iter().zip(&assignment) {
            groups[j].push(tree.clone());
        }
        let mut acc: LinComb<Vec<Branch>> = LinComb::basis(Vec::new());
        for (j, (edge, sub)) in branches.iter().enumerate() {
            let inner = forest_insert_full(&Forest::new(groups[j].clone()), sub, deformed);
            acc = bilinear(&acc, &inner, |bs, s| {
                let mut bs = bs.clone();
                bs.push((edge.clone(), s.clone()));
                LinComb::basis(bs)
            });
        }
        out.add_assign(
            &acc.map_basis(|bs| DecoratedTree::new(t.root().clone(), bs.clone())),
        );
    }
    out
}

/// Inserts a forest into the body of a planted tree.
pub fn planted_insert(f: &Forest, pt: &PlantedTree, deformed: bool) -> LinComb<PlantedTree> {
    forest_insert_full(f, &pt.body, deformed)
        .map_basis(|b| PlantedTree::new(pt.edge.clone(), b.clone()))
}

/// Both sides of the insertion/plugging cointeraction:
/// `sum (tau' inserted below roots of t1) star (tau'' inserted into t2)`
/// against `tau inserted into (t1 star t2)`.
pub fn cointeraction_plug(
    tau: &Forest,
    t1: &DecoratedTree,
    t2: &DecoratedTree,
    deformed: bool,
) -> (LinComb<DecoratedTree>, LinComb<DecoratedTree>) {
    let p = InsertProduct { deformed };
    let w = forest_word(&p, tau);
    let mut lhs = LinComb::zero();
    for (w1, w2, c) in crate::guin_oudom::unshuffle(&w) {
        let left = forest_insert_nonroot(&Forest::new(w1.items().to_vec()), t1, deformed);
        let right = forest_insert_full(&Forest::new(w2.items().to_vec()), t2, deformed);
        let prod = bilinear(&left, &right, |a, b| star_plug(a, b, deformed));
        lhs.add_assign(&prod.scaled(&q_biguint(&c)));
    }
    let rhs = star_plug(t1, t2, deformed).map(|u| forest_insert_full(tau, u, deformed));
    (lhs, rhs)
}

/// Both sides of the grafting cointeraction on planted trees:
/// `sum (tau' inserted into p1) grafted onto (tau'' inserted into p2)`
/// against `tau inserted into (p1 grafted onto p2)`.
pub fn cointeraction_graft(
    tau: &Forest,
    p1: &PlantedTree,
    p2: &PlantedTree,
    deformed: bool,
) -> (LinComb<PlantedTree>, LinComb<PlantedTree>) {
    let p = InsertProduct { deformed };
    let w = forest_word(&p, tau);
    let mut lhs = LinComb::zero();
    for (w1, w2, c) in crate::guin_oudom::unshuffle(&w) {
        let left = planted_insert(&Forest::new(w1.items().to_vec()), p1, deformed);
        let right = planted_insert(&Forest::new(w2.items().to_vec()), p2, deformed);
        let prod = bilinear(&left, &right, |a, b| {
            crate::grafting::planted_graft(a, b, deformed)
        });
        lhs.add_assign(&prod.scaled(&q_biguint(&c)));
    }
    let rhs = crate::grafting::planted_graft(p1, p2, deformed)
        .map(|u| planted_insert(tau, u, deformed));
    (lhs, rhs)
}

/// Both sides of the classical cointeraction between labelled grafting and
/// full insertion on plain trees.
pub fn cointeraction_graft_classical(
    tau: &Forest,
    t1: &DecoratedTree,
    t2: &DecoratedTree,
    a: &crate::tree::EdgeLabel,
) -> (LinComb<DecoratedTree>, LinComb<DecoratedTree>) {
    let p = InsertProduct { deformed: false };
    let w = forest_word(&p, tau);
    let mut lhs = LinComb::zero();
    for (w1, w2, c) in crate::guin_oudom::unshuffle(&w) {
        let left = forest_insert_full(&Forest::new(w1.items().to_vec()), t1, false);
        let right = forest_insert_full(&Forest::new(w2.items().to_vec()), t2, false);
        let prod = bilinear(&left, &right, |x, y| crate::grafting::graft(x, a, y));
        lhs.add_assign(&prod.scaled(&q_biguint(&c)));
    }
    let rhs = crate::grafting::graft(t1, a, t2).map(|u| forest_insert_full(tau, u, false));
    (lhs, rhs)
}

/// Cheap exactness witness for [`split_blocks`]: the pairing of the
/// splitting against a forest equals the pairing of the tree against the
/// merged forest.
pub fn adjointness_defect(t: &DecoratedTree, f: &Forest) -> Q {
    let lhs = crate::lincomb::pairing(&split_blocks(t), &LinComb::basis(f.clone()));
    let merged = merge_roots(f, t.dim());
    let rhs = crate::lincomb::pairing(&LinComb::basis(t.clone()), &LinComb::basis(merged));
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::q_int;
    use crate::tree::EdgeLabel;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn edge(v: &[u32]) -> EdgeLabel {
        EdgeLabel { kind: 0, index: mi(v) }
    }

    fn leaf(v: &[u32]) -> DecoratedTree {
        DecoratedTree::leaf(mi(v))
    }

    fn node(v: &[u32], branches: Vec<Branch>) -> DecoratedTree {
        DecoratedTree::new(NodeLabel::plain(mi(v)), branches)
    }

    #[test]
    fn plain_plug_merges_roots_and_branches() {
        let sigma = node(&[1], vec![(edge(&[0]), leaf(&[0]))]);
        let tau = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let got = plug(&sigma, &tau, VertexMode::Root, false);
        let expected = node(
            &[2],
            vec![(edge(&[0]), leaf(&[0])), (edge(&[1]), leaf(&[0]))],
        );
        assert_eq!(got, LinComb::basis(expected));
    }

    #[test]
    fn deformed_plug_lowers_branch_against_target() {
        // sigma has one root branch with edge decoration (1); the target
        // vertex carries decoration (1), so one correction appears
        let sigma = node(&[0], vec![(edge(&[1]), leaf(&[0]))]);
        let tau = leaf(&[1]);
        let got = deformed_plug_at(&sigma, &tau, 0);
        let leading = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let corr = node(&[0], vec![(edge(&[0]), leaf(&[0]))]);
        assert_eq!(got.coeff(&leading), q_int(1));
        assert_eq!(got.coeff(&corr), q_int(1));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn plug_products_are_pre_lie() {
        let basis = crate::tree::enumerate_trees(2, &mi(&[1]), &mi(&[1]), &[0]);
        for deformed in [false, true] {
            let p = PlugProduct { deformed };
            assert_eq!(crate::guin_oudom::check_prelie(&p, &basis[..8]), None);
        }
    }

    #[test]
    fn tilde_root_is_symmetric_and_transport_matches() {
        let sigma = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let tau = node(&[1], vec![(edge(&[1]), leaf(&[1]))]);
        let ab = tilde_plug_root(&sigma, &tau);
        let ba = tilde_plug_root(&tau, &sigma);
        assert_eq!(ab, ba);
        // the closed-form root formula agrees with conjugation by theta
        assert_eq!(ab, tilde_plug_at(&sigma, &tau, 0));
    }

    #[test]
    fn deformed_plug_factors_through_transported_plug() {
        let sigma = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let tau = node(&[1], vec![(edge(&[1]), leaf(&[1]))]);
        for v in 0..tau.vertex_count() {
            assert_eq!(deformed_plug_at(&sigma, &tau, v), plug_via_uparrow(&sigma, &tau, v));
        }
    }

    #[test]
    fn split_blocks_of_two_vertex_tree() {
        let t = node(&[1], vec![(edge(&[0]), leaf(&[0]))]);
        let got = split_blocks(&t);
        let whole = Forest::singleton(t.clone());
        let split = Forest::new(vec![leaf(&[1]), node(&[0], vec![(edge(&[0]), leaf(&[0]))])]);
        assert_eq!(got.coeff(&whole), q_int(1));
        assert_eq!(got.coeff(&split), q_int(1));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn split_blocks_is_adjoint_to_merge() {
        let trees = crate::tree::enumerate_trees(2, &mi(&[2]), &mi(&[1]), &[0]);
        let forests: Vec<Forest> = {
            let small = crate::tree::enumerate_trees(1, &mi(&[2]), &mi(&[1]), &[0]);
            let mut out = vec![Forest::one()];
            for a in &small {
                out.push(Forest::singleton(a.clone()));
                for b in &small {
                    out.push(Forest::new(vec![a.clone(), b.clone()]));
                }
            }
            out
        };
        for t in trees.iter().take(12) {
            for f in &forests {
                assert_eq!(adjointness_defect(t, f), q_int(0), "t={t:?} f={f:?}");
            }
        }
    }

    #[test]
    fn monomials_multiply_through_star2() {
        let got = star2(&leaf(&[1]), &leaf(&[1]));
        assert_eq!(got, LinComb::basis(leaf(&[2])));
    }

    #[test]
    fn unit_tree_is_a_two_sided_star_unit() {
        let t = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let unit = DecoratedTree::unit(1);
        for deformed in [false, true] {
            assert_eq!(star_plug(&unit, &t, deformed), LinComb::basis(t.clone()));
            assert_eq!(star_plug(&t, &unit, deformed), LinComb::basis(t.clone()));
        }
    }

    #[test]
    fn star2_is_associative_on_samples() {
        let a = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let b = leaf(&[1]);
        let c = node(&[0], vec![(edge(&[0]), leaf(&[1]))]);
        let ab_c = star2(&a, &b).map(|x| star2(x, &c));
        let a_bc = star2(&b, &c).map(|x| star2(&a, x));
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn monomial_insertion_shifts_each_vertex() {
        // inserting a bare monomial acts as the sum of decoration shifts
        let tau = node(&[0], vec![(edge(&[1]), leaf(&[1]))]);
        let m = leaf(&[2]);
        let got = insert(&m, &tau, VertexMode::All, false);
        let shift = IndexOffset::new(vec![2]);
        let mut expected = LinComb::zero();
        for v in 0..tau.vertex_count() {
            expected.add_assign(&crate::grafting::uparrow_at(&tau, v, &shift));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn insertion_unit_law() {
        let sigma = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        let unit = DecoratedTree::unit(1);
        for deformed in [false, true] {
            assert_eq!(
                insert(&sigma, &unit, VertexMode::All, deformed),
                LinComb::basis(sigma.clone())
            );
        }
    }

    #[test]
    fn insertion_products_are_pre_lie() {
        let basis = crate::tree::enumerate_trees(1, &mi(&[1]), &mi(&[1]), &[0]);
        for deformed in [false, true] {
            let p = InsertProduct { deformed };
            assert_eq!(crate::guin_oudom::check_prelie(&p, &basis), None);
        }
    }

    #[test]
    fn forest_insert_routes_agree() {
        // full insertion = insertion below the root + insertion at the root
        // through the associative product
        let f = Forest::singleton(leaf(&[1]));
        let t = node(&[1], vec![(edge(&[1]), leaf(&[0]))]);
        for deformed in [false, true] {
            let full = forest_insert_full(&f, &t, deformed);
            let below = forest_insert_nonroot(&f, &t, deformed);
            let at_root = star_plug(&t, &f.trees()[0], deformed);
            assert_eq!(full, below.add(&at_root));
        }
    }

    #[test]
    fn cointeraction_on_small_example() {
        let tau = Forest::singleton(leaf(&[1]));
        let t1 = node(&[0], vec![(edge(&[1]), leaf(&[0]))]);
        let t2 = leaf(&[1]);
        for deformed in [false, true] {
            let (lhs, rhs) = cointeraction_plug(&tau, &t1, &t2, deformed);
            assert_eq!(lhs, rhs);
        }
    }
}
