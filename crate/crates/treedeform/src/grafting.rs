//! Grafting products on decorated trees and their Taylor deformation.
//!
//! Grafting attaches a tree below a vertex through a decorated edge. The
//! deformed version corrects each attachment by binomial terms that lower
//! both the new edge decoration and the decoration of the attachment vertex
//! simultaneously; the leading term is the plain graft and every correction
//! has strictly smaller edge grading.
//!
//! The module also provides the decoration-shift isomorphism [`theta`],
//! which intertwines plain and deformed grafting, together with its inverse
//! and the transported vertex derivation [`uparrow_hat`].

use std::collections::BTreeMap;

use crate::index::{
    binomial, index_tuples_up_to, multinomial, q_biguint, IndexOffset, MultiIndex,
};
use crate::lincomb::{bilinear, LinComb};
use crate::tree::{
    edit_node, edit_nodes, Branch, DecoratedTree, EdgeLabel, NodeEditor, NodeLabel, PlantedTree,
};

/// Componentwise minimum of two multi-indices.
fn min_index(a: &MultiIndex, b: &MultiIndex) -> MultiIndex {
    MultiIndex::new(
        a.components()
            .iter()
            .zip(b.components())
            .map(|(&x, &y)| x.min(y))
            .collect(),
    )
}

/// Grafts `sigma` below vertex `v` of `tau` through an edge decorated by `a`.
pub fn graft_at(
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    tau: &DecoratedTree,
    v: usize,
) -> LinComb<DecoratedTree> {
    let editor: NodeEditor<'_> = &|label: &NodeLabel| {
        LinComb::basis((label.clone(), vec![(a.clone(), sigma.clone())]))
    };
    edit_node(tau, v, editor)
}

/// Sum of [`graft_at`] over all vertices of `tau`.
pub fn graft(
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    tau: &DecoratedTree,
) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for v in 0..tau.vertex_count() {
        out.add_assign(&graft_at(sigma, a, tau, v));
    }
    out
}

/// Shifts the decoration of vertex `v` by `omega`; the term vanishes when a
/// component would go negative.
pub fn uparrow_at(tau: &DecoratedTree, v: usize, omega: &IndexOffset) -> LinComb<DecoratedTree> {
    match crate::tree::shift_decoration(tau, v, omega) {
        Some(t) => LinComb::basis(t),
        None => LinComb::zero(),
    }
}

/// The vertex derivation: sum of [`uparrow_at`] over all vertices.
pub fn uparrow(tau: &DecoratedTree, omega: &IndexOffset) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for v in 0..tau.vertex_count() {
        out.add_assign(&uparrow_at(tau, v, omega));
    }
    out
}

/// Linear extension of [`uparrow`].
pub fn uparrow_lc(x: &LinComb<DecoratedTree>, omega: &IndexOffset) -> LinComb<DecoratedTree> {
    x.map(|t| uparrow(t, omega))
}

/// Graft at `v` and shift the decoration of the same vertex by `omega`.
pub fn graft_omega_at(
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    omega: &IndexOffset,
    tau: &DecoratedTree,
    v: usize,
) -> LinComb<DecoratedTree> {
    let editor: NodeEditor<'_> = &|label: &NodeLabel| match label.index.offset(omega) {
        None => LinComb::zero(),
        Some(idx) => LinComb::basis((
            NodeLabel { generator: label.generator, index: idx },
            vec![(a.clone(), sigma.clone())],
        )),
    };
    edit_node(tau, v, editor)
}

/// Decorated grafting: sum over vertices of graft-then-shift at the same
/// vertex.
pub fn graft_omega(
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    omega: &IndexOffset,
    tau: &DecoratedTree,
) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for v in 0..tau.vertex_count() {
        out.add_assign(&graft_omega_at(sigma, a, omega, tau, v));
    }
    out
}

/// Deformed graft below vertex `v`:
/// `sum_l C(n_v, l) * (graft through a - l) (shift v by -l)`.
pub fn deformed_graft_at(
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    tau: &DecoratedTree,
    v: usize,
) -> LinComb<DecoratedTree> {
    let a = a.clone();
    let sigma = sigma.clone();
    let editor: NodeEditor<'_> = &move |label: &NodeLabel| {
        let cap = min_index(&label.index, &a.index);
        let mut out = LinComb::zero();
        for l in crate::index::indices_up_to(&cap) {
            let coeff = q_biguint(&binomial(&label.index, &l));
            let node = label.index.checked_sub(&l).expect("l bounded by n_v");
            let edge = a.index.checked_sub(&l).expect("l bounded by a");
            out.add_term(
                (
                    NodeLabel { generator: label.generator, index: node },
                    vec![(EdgeLabel { kind: a.kind, index: edge }, sigma.clone())],
                ),
                coeff,
            );
        }
        out
    };
    edit_node(tau, v, editor)
}

/// Sum of [`deformed_graft_at`] over all vertices of `tau`.
pub fn deformed_graft(
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    tau: &DecoratedTree,
) -> LinComb<DecoratedTree> {
    let mut out = LinComb::zero();
    for v in 0..tau.vertex_count() {
        out.add_assign(&deformed_graft_at(sigma, a, tau, v));
    }
    out
}

/// Grafting product of planted trees: the left tree is grafted onto the body
/// of the right one through the left planted edge. Nothing is ever grafted
/// onto the undecorated planted root.
pub fn planted_graft(
    x: &PlantedTree,
    y: &PlantedTree,
    deformed: bool,
) -> LinComb<PlantedTree> {
    let inner = if deformed {
        deformed_graft(&x.body, &x.edge, &y.body)
    } else {
        graft(&x.body, &x.edge, &y.body)
    };
    inner.map_basis(|t| PlantedTree::new(y.edge.clone(), t.clone()))
}

/// Decoration-shift isomorphism between plain and deformed grafting. On a
/// tree with root monomial `X^k` and branches `(a_i, tau_i)` it produces
/// `sum_l C(k; l_1..l_n) X^{k - sum l} prod (a_i - l_i, theta(tau_i))`.
pub fn theta(t: &DecoratedTree) -> LinComb<DecoratedTree> {
    let root = t.root().clone();
    let branches = t.branches();
    // transformed subtrees, one linear combination per branch
    let mut rebuilt: LinComb<Vec<Branch>> = LinComb::basis(Vec::new());
    for (edge, child) in branches {
        let child_lc = theta(child);
        rebuilt = bilinear(&rebuilt, &child_lc, |acc, c| {
            let mut acc = acc.clone();
            acc.push((edge.clone(), c.clone()));
            LinComb::basis(acc)
        });
    }
    let caps: Vec<MultiIndex> = branches
        .iter()
        .map(|(e, _)| min_index(&e.index, &root.index))
        .collect();
    let mut out = LinComb::zero();
    for ls in index_tuples_up_to(&caps) {
        let coeff = q_biguint(&multinomial(&root.index, &ls));
        if coeff == crate::index::q_int(0) {
            continue;
        }
        let mut total = MultiIndex::zero(root.index.dim());
        for l in &ls {
            total = total.add(l);
        }
        let node = root.index.checked_sub(&total).expect("multinomial nonzero");
        let contribution = rebuilt.map(|bs| {
            let new_branches: Vec<Branch> = bs
                .iter()
                .zip(&ls)
                .map(|((e, c), l)| {
                    (
                        EdgeLabel {
                            kind: e.kind,
                            index: e.index.checked_sub(l).expect("l bounded by edge"),
                        },
                        c.clone(),
                    )
                })
                .collect();
            LinComb::basis(DecoratedTree::new(
                NodeLabel { generator: root.generator, index: node.clone() },
                new_branches,
            ))
        });
        out.add_assign(&contribution.scaled(&coeff));
    }
    out
}

/// Linear extension of [`theta`].
pub fn theta_lc(x: &LinComb<DecoratedTree>) -> LinComb<DecoratedTree> {
    x.map(theta)
}

/// Inverse of [`theta`], computed by fixed-point iteration: the corrective
/// part of `theta` strictly lowers the edge grading, so
/// `y <- x - (theta(y) - y)` stabilises after finitely many steps.
pub fn theta_inv(x: &LinComb<DecoratedTree>) -> LinComb<DecoratedTree> {
    let mut y = x.clone();
    let bound = x
        .iter()
        .map(|(t, _)| t.grading(&crate::index::Scaling::ones(dim_of(x).max(1))))
        .max()
        .unwrap_or(0)
        + 2;
    for _ in 0..bound {
        let next = x.sub(&theta_lc(&y).sub(&y));
        if next == y {
            return y;
        }
        y = next;
    }
    y
}

fn dim_of(x: &LinComb<DecoratedTree>) -> usize {
    x.iter().next().map(|(t, _)| t.dim()).unwrap_or(1)
}

/// Transport of the vertex derivation through [`theta`]:
/// `theta_inv . uparrow^omega . theta`.
pub fn uparrow_hat(tau: &DecoratedTree, omega: &IndexOffset) -> LinComb<DecoratedTree> {
    theta_inv(&uparrow_lc(&theta(tau), omega))
}

/// Iterated grafting of several trees with the lower-order corrections
/// subtracted, so the result depends only on the multiset of arguments:
/// `brace([x1..xn], z) = graft(x1, brace([x2..xn], z))
///  - sum_i brace([x2.. x1 -> xi ..xn], z)`.
pub fn brace_graft(
    xs: &[(DecoratedTree, EdgeLabel)],
    z: &DecoratedTree,
    deformed: bool,
) -> LinComb<DecoratedTree> {
    match xs.split_first() {
        None => LinComb::basis(z.clone()),
        Some(((x1, a1), rest)) => {
            let g = |s: &DecoratedTree, a: &EdgeLabel, t: &DecoratedTree| {
                if deformed {
                    deformed_graft(s, a, t)
                } else {
                    graft(s, a, t)
                }
            };
            let inner = brace_graft(rest, z, deformed);
            let mut out = inner.map(|t| g(x1, a1, t));
            for i in 0..rest.len() {
                let (xi, ai) = &rest[i];
                let merged = g(x1, a1, xi);
                for (m, c) in merged.iter() {
                    let mut replaced = rest.to_vec();
                    replaced[i] = (m.clone(), ai.clone());
                    out.add_assign(&brace_graft(&replaced, z, deformed).scaled(&-c.clone()));
                }
            }
            out
        }
    }
}

/// Applies simultaneous decoration shifts at several vertices; all shifts
/// vanish or commute, so the result is a single term or zero.
pub fn uparrow_multi(
    tau: &DecoratedTree,
    shifts: &BTreeMap<usize, IndexOffset>,
) -> LinComb<DecoratedTree> {
    let editors: Vec<(usize, IndexOffset)> =
        shifts.iter().map(|(v, o)| (*v, o.clone())).collect();
    let boxed: Vec<Box<dyn Fn(&NodeLabel) -> LinComb<(NodeLabel, Vec<Branch>)>>> = editors
        .iter()
        .map(|(_, o)| {
            let o = o.clone();
            Box::new(move |label: &NodeLabel| match label.index.offset(&o) {
                None => LinComb::zero(),
                Some(idx) => LinComb::basis((
                    NodeLabel { generator: label.generator, index: idx },
                    Vec::new(),
                )),
            }) as Box<dyn Fn(&NodeLabel) -> LinComb<(NodeLabel, Vec<Branch>)>>
        })
        .collect();
    let mut edits: BTreeMap<usize, NodeEditor<'_>> = BTreeMap::new();
    for ((v, _), f) in editors.iter().zip(boxed.iter()) {
        edits.insert(*v, f.as_ref());
    }
    edit_nodes(tau, &edits)
}
