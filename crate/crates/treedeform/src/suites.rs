//! Verification suites: each suite exercises one family of algebraic
//! identities over exhaustively enumerated small bases and reports exact
//! pass/fail results with counterexamples.
//!
//! The suites are the backing of the `check` command of the command-line
//! front end and of the acceptance integration test. All comparisons are
//! exact rational equalities; identities that only hold up to a polynomial
//! budget are compared after clipping the accumulated edge grading, which
//! bounds exactly the terms a truncated run can distort.

use std::collections::BTreeMap;

use num::Zero;

use crate::applications::{
    antipode_defect, birkhoff_twist, check_r_compat, cointeraction_coproducts, delta_na,
    delta_rc, delta_rc_direct, delta_rn, delta_rn_nonroot, eval_character, flip,
    AntipodeKind, RationalRing,
};
use crate::coproducts::{
    delta1, delta1_forest, delta2, delta2_forest, delta_circ, delta_dck, duality_d1,
    duality_d2, duality_dck,
};
use crate::grafting::{deformed_graft, graft, planted_graft, theta, theta_inv, theta_lc, uparrow_multi};
use crate::guin_oudom::{bullet, check_prelie, star0, word, PlantedGraftProduct};
use crate::index::{
    binomial, binomial_u64, compositions, q_biguint, q_int, IndexOffset, MultiIndex, Q,
};
use crate::lincomb::{bilinear, LinComb};
use crate::plugging::{
    adjointness_defect, cointeraction_graft, cointeraction_graft_classical, cointeraction_plug,
    deformed_plug_at, merge_roots, plug, plug_via_uparrow, star1, star2, tilde_plug_at,
    tilde_plug_root, InsertProduct, PlugProduct, VertexMode,
};
use crate::session::SessionConfig;
use crate::tree::{
    enumerate_planted, enumerate_trees, find_all_marked, mark_all, unmark_all, DecoratedTree,
    EdgeLabel, Forest, NodeLabel, PlantedForest, PlantedTree,
};

/// Outcome of one suite: a count of checks and the first few failures.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failures: Vec<String>,
}

const MAX_RECORDED_FAILURES: usize = 5;

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), checks: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One-line summary in `PASS name (n checks)` form.
    pub fn line(&self) -> String {
        if self.passed() {
            format!("PASS {} ({} checks)", self.name, self.checks)
        } else {
            format!(
                "FAIL {} ({} checks): {}",
                self.name,
                self.checks,
                self.failures.join("; ")
            )
        }
    }
}

/// Names of the available suites, in reporting order.
pub const SUITE_NAMES: &[&str] = &[
    "prelie",
    "theta",
    "duality",
    "chu",
    "root",
    "oracles",
    "star",
    "cointeraction",
    "maps",
    "displays",
];

/// Runs one suite by name.
pub fn run_suite(cfg: &SessionConfig, name: &str) -> Option<SuiteReport> {
    match name {
        "prelie" => Some(suite_prelie(cfg)),
        "theta" => Some(suite_theta(cfg)),
        "duality" => Some(suite_duality(cfg)),
        "chu" => Some(suite_chu(cfg)),
        "root" => Some(suite_root(cfg)),
        "oracles" => Some(suite_oracles(cfg)),
        "star" => Some(suite_star(cfg)),
        "cointeraction" => Some(suite_cointeraction(cfg)),
        "maps" => Some(suite_maps(cfg)),
        "displays" => Some(suite_displays(cfg)),
        _ => None,
    }
}

/// Runs every suite.
pub fn run_all(cfg: &SessionConfig) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(cfg, n).expect("known suite name"))
        .collect()
}

fn desk_trees(cfg: &SessionConfig, max_edges: usize) -> Vec<DecoratedTree> {
    enumerate_trees(max_edges, &cfg.node_cap, &cfg.edge_cap, &cfg.kinds())
}

fn desk_planted(cfg: &SessionConfig, max_edges: usize) -> Vec<PlantedTree> {
    enumerate_planted(max_edges, &cfg.node_cap, &cfg.edge_cap, &cfg.kinds())
}

/// Deterministic evenly spaced subsample.
fn sample<T: Clone>(v: &[T], n: usize) -> Vec<T> {
    if v.len() <= n {
        return v.to_vec();
    }
    (0..n).map(|i| v[i * v.len() / n].clone()).collect()
}

fn mi(cfg: &SessionConfig, w: u32) -> MultiIndex {
    let mut comps = vec![0; cfg.dimension];
    comps[0] = w;
    MultiIndex::new(comps)
}

fn el(cfg: &SessionConfig, kind: u32, w: u32) -> EdgeLabel {
    EdgeLabel { kind, index: mi(cfg, w) }
}

fn leaf(cfg: &SessionConfig, w: u32) -> DecoratedTree {
    DecoratedTree::leaf(mi(cfg, w))
}

fn node(cfg: &SessionConfig, w: u32, branches: Vec<(EdgeLabel, DecoratedTree)>) -> DecoratedTree {
    DecoratedTree::new(NodeLabel::plain(mi(cfg, w)), branches)
}

fn graft_flag(
    deformed: bool,
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    tau: &DecoratedTree,
) -> LinComb<DecoratedTree> {
    if deformed {
        deformed_graft(sigma, a, tau)
    } else {
        graft(sigma, a, tau)
    }
}

fn mpl_defect(
    deformed: bool,
    sigma: &DecoratedTree,
    a: &EdgeLabel,
    tau: &DecoratedTree,
    b: &EdgeLabel,
    w: &DecoratedTree,
) -> LinComb<DecoratedTree> {
    let nested = graft_flag(deformed, tau, b, w).map(|u| graft_flag(deformed, sigma, a, u));
    let assoc = graft_flag(deformed, sigma, a, tau).map(|u| graft_flag(deformed, u, b, w));
    nested.sub(&assoc)
}

/// Multi-pre-Lie axiom for the labelled grafting products, plain and
/// deformed, and pre-Lie axiom for plugging and insertion.
pub fn suite_prelie(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("prelie");
    let basis = desk_trees(cfg, 1);
    let a = el(cfg, 0, 1);
    let b = el(cfg, (cfg.edge_kinds.len() as u32).min(2) - 1, 1);
    for deformed in [false, true] {
        for s in &basis {
            for t in &basis {
                for w in &basis {
                    let lhs = mpl_defect(deformed, s, &a, t, &b, w);
                    let rhs = mpl_defect(deformed, t, &b, s, &a, w);
                    r.record(lhs == rhs, || {
                        format!("grafting axiom (deformed={deformed}) fails on {s:?}, {t:?}, {w:?}")
                    });
                }
            }
        }
    }
    let mut extended = basis.clone();
    extended.extend(sample(&desk_trees(cfg, 2), 21).into_iter().filter(|t| t.edge_count() == 2).take(3));
    for deformed in [false, true] {
        let witness = check_prelie(&PlugProduct { deformed }, &extended);
        r.record(witness.is_none(), || {
            format!("plugging (deformed={deformed}) is not pre-Lie at {witness:?}")
        });
        let witness = check_prelie(&InsertProduct { deformed }, &extended);
        r.record(witness.is_none(), || {
            format!("insertion (deformed={deformed}) is not pre-Lie at {witness:?}")
        });
    }
    r
}

/// The decoration-shift isomorphism intertwines plain and deformed grafting,
/// inverts exactly, and only adds strictly lower-grading corrections.
pub fn suite_theta(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("theta");
    let basis = desk_trees(cfg, 1);
    let labels = [el(cfg, 0, 1), el(cfg, 0, 0)];
    for s in &basis {
        for t in &basis {
            for a in &labels {
                let lhs = theta_lc(&graft(s, a, t));
                let rhs = bilinear(&theta(s), &theta(t), |u, v| deformed_graft(u, a, v));
                r.record(lhs == rhs, || format!("intertwining fails on {s:?}, {t:?}, {a:?}"));
            }
        }
    }
    for t in desk_trees(cfg, 2) {
        r.record(theta_inv(&theta(&t)) == LinComb::basis(t.clone()), || {
            format!("round trip fails on {t:?}")
        });
        let g = t.grading(&cfg.scaling);
        let corrections_lower = theta(&t)
            .iter()
            .all(|(u, _)| u == &t || u.grading(&cfg.scaling) < g);
        r.record(corrections_lower, || {
            format!("a correction term does not lower the grading on {t:?}")
        });
    }
    r
}

/// The three pairing dualities between deformed products and truncated
/// coproducts, with budgets chosen from the gradings of the inputs.
pub fn suite_duality(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("duality");
    let planted_small = desk_planted(cfg, 1);
    let mut sides: Vec<PlantedForest> = vec![PlantedForest::one()];
    sides.extend(planted_small.iter().cloned().map(PlantedForest::singleton));
    let mut targets = sides.clone();
    targets.extend(desk_planted(cfg, 2).iter().cloned().map(PlantedForest::singleton));
    for (i, p) in planted_small.iter().enumerate() {
        for q in planted_small.iter().skip(i) {
            targets.push(PlantedForest::new(vec![p.clone(), q.clone()]));
        }
    }
    for l in &sides {
        for g in &sides {
            for t in &targets {
                let (lhs, rhs) = duality_dck(l, g, t);
                r.record(lhs == rhs, || {
                    format!("cut duality fails: {l:?} vs {g:?} against {t:?} ({lhs} != {rhs})")
                });
            }
        }
    }

    let small = desk_trees(cfg, 1);
    let mut lefts: Vec<Forest> = vec![Forest::one()];
    lefts.extend(sample(&small, 4).into_iter().map(Forest::singleton));
    lefts.push(Forest::new(vec![leaf(cfg, 1), leaf(cfg, 1)]));
    let rights = small.clone();
    let mut tree_targets = small.clone();
    tree_targets.extend(sample(&desk_trees(cfg, 2), 40));
    for l in &lefts {
        for g in &rights {
            for t in &tree_targets {
                let (lhs, rhs) = duality_d2(l, g, t);
                r.record(lhs == rhs, || {
                    format!("block duality fails: {l:?} vs {g:?} against {t:?} ({lhs} != {rhs})")
                });
                let (lhs, rhs) = duality_d1(l, g, t);
                r.record(lhs == rhs, || {
                    format!("insertion duality fails: {l:?} vs {g:?} against {t:?} ({lhs} != {rhs})")
                });
            }
        }
    }
    r
}

/// Binomial pushforward identity, brute-forced over all maps between index
/// sets of size at most three with entries at most three.
pub fn suite_chu(_cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("chu");
    for n in 1usize..=3 {
        for m in 1..=n {
            // maps pi: {0..n} -> {0..m}, encoded in base m
            for code in 0..m.pow(n as u32) {
                let pi: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                for kcode in 0..4u64.pow(n as u32) {
                    let k: Vec<u64> = (0..n).map(|i| kcode / 4u64.pow(i as u32) % 4).collect();
                    let mut pushed = vec![0u64; m];
                    for (i, &ki) in k.iter().enumerate() {
                        pushed[pi[i]] += ki;
                    }
                    let bounds: Vec<u64> = pushed.iter().map(|p| p + 1).collect();
                    let mut lt = vec![0u64; m];
                    loop {
                        let lhs: u64 = lt
                            .iter()
                            .zip(&pushed)
                            .map(|(l, p)| binomial_u64(*p, *l))
                            .map(|b| u64::try_from(&b).unwrap_or(u64::MAX))
                            .product();
                        let mut rhs = 0u64;
                        let mut l = vec![0u64; n];
                        'inner: loop {
                            let mut pl = vec![0u64; m];
                            for (i, &li) in l.iter().enumerate() {
                                pl[pi[i]] += li;
                            }
                            if pl == lt {
                                rhs += l
                                    .iter()
                                    .zip(&k)
                                    .map(|(li, ki)| binomial_u64(*ki, *li))
                                    .map(|b| u64::try_from(&b).unwrap_or(u64::MAX))
                                    .product::<u64>();
                            }
                            for i in 0..n {
                                l[i] += 1;
                                if l[i] <= k[i] {
                                    continue 'inner;
                                }
                                l[i] = 0;
                                if i == n - 1 {
                                    break 'inner;
                                }
                            }
                        }
                        r.record(lhs == rhs, || {
                            format!("pushforward identity fails at pi={pi:?}, k={k:?}, l~={lt:?}")
                        });
                        let mut done = true;
                        for j in 0..m {
                            lt[j] += 1;
                            if lt[j] < bounds[j] {
                                done = false;
                                break;
                            }
                            lt[j] = 0;
                        }
                        if done {
                            break;
                        }
                    }
                }
            }
        }
    }
    r
}

/// Symmetry of the plain and transported root plugs, and an explicit
/// asymmetry witness for the deformed root plug.
pub fn suite_root(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("root");
    let mut basis = desk_trees(cfg, 1);
    basis.extend(sample(&desk_trees(cfg, 2), 10));
    basis.sort();
    basis.dedup();
    for s in &basis {
        for t in &basis {
            let plain_sym =
                plug(s, t, VertexMode::Root, false) == plug(t, s, VertexMode::Root, false);
            r.record(plain_sym, || format!("plain root plug asymmetric on {s:?}, {t:?}"));
            let tilde_sym = tilde_plug_root(s, t) == tilde_plug_root(t, s);
            r.record(tilde_sym, || {
                format!("transported root plug asymmetric on {s:?}, {t:?}")
            });
        }
    }
    let witness = basis.iter().enumerate().find_map(|(i, s)| {
        basis[i..].iter().find_map(|t| {
            (plug(s, t, VertexMode::Root, true) != plug(t, s, VertexMode::Root, true))
                .then(|| (s.clone(), t.clone()))
        })
    });
    r.record(witness.is_some(), || {
        "no asymmetry witness found for the deformed root plug".into()
    });
    r
}

/// Both sides of the bridge between block plugging and deformed grafting on
/// planted trees: the root monomial of the left factor is split over the
/// vertices of the right tree after grafting the left branches.
fn link_check(sigma: &DecoratedTree, tau: &DecoratedTree, b: &EdgeLabel) -> bool {
    let k = sigma.root().index.clone();
    let branches: Vec<PlantedTree> = sigma
        .branches()
        .iter()
        .map(|(e, s)| PlantedTree::new(e.clone(), s.clone()))
        .collect();
    let target = PlantedTree::new(b.clone(), mark_all(tau));
    let p = PlantedGraftProduct { deformed: true };
    let grafted: LinComb<PlantedTree> = if branches.is_empty() {
        LinComb::basis(target)
    } else {
        bullet(&p, &word(&p, branches), &word(&p, vec![target]))
            .map_basis(|w| w.items()[0].clone())
    };
    let n = tau.vertex_count();
    let mut rhs = LinComb::zero();
    for (pt, c) in grafted.iter() {
        let marked = find_all_marked(&pt.body);
        debug_assert_eq!(marked.len(), n);
        for parts in compositions(&k, n) {
            let shifts: BTreeMap<usize, IndexOffset> = marked
                .iter()
                .zip(&parts)
                .map(|(v, part)| (*v, IndexOffset::from(part)))
                .collect();
            rhs.add_assign(
                &uparrow_multi(&pt.body, &shifts)
                    .map_basis(|u| PlantedTree::new(pt.edge.clone(), unmark_all(u)))
                    .scaled(c),
            );
        }
    }
    let lhs = star2(sigma, tau).map_basis(|t| PlantedTree::new(b.clone(), t.clone()));
    lhs == rhs
}

/// Cross-oracle routes: the deformed plug against its polynomial-shift
/// expression, and the planted bridge between block plugging and grafting.
pub fn suite_oracles(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("oracles");
    let basis = desk_trees(cfg, 1);
    for s in &basis {
        for t in &basis {
            for v in 0..t.vertex_count() {
                r.record(deformed_plug_at(s, t, v) == plug_via_uparrow(s, t, v), || {
                    format!("polynomial route disagrees on {s:?} into {t:?} at {v}")
                });
                if s.root().index.is_zero() {
                    r.record(deformed_plug_at(s, t, v) == tilde_plug_at(s, t, v), || {
                        format!("zero-monomial case disagrees on {s:?} into {t:?} at {v}")
                    });
                }
            }
        }
    }
    let b = el(cfg, 0, 1);
    let mut sigmas = basis.clone();
    sigmas.push(node(
        cfg,
        1,
        vec![(el(cfg, 0, 1), leaf(cfg, 0)), (el(cfg, 1, 0), leaf(cfg, 1))],
    ));
    for s in &sigmas {
        for t in &basis {
            r.record(link_check(s, t, &b), || {
                format!("planted bridge fails on {s:?}, {t:?}")
            });
        }
    }
    r
}

fn forest_grading(f: &Forest, cfg: &SessionConfig) -> u64 {
    f.trees().iter().map(|t| t.grading(&cfg.scaling)).sum()
}

/// Associativity of the three extended products, coassociativity of their
/// dual coproducts up to the budget, root-merge compatibility, and the
/// merge/split adjointness.
pub fn suite_star(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("star");
    let s = &cfg.scaling;

    let mut planted: Vec<PlantedForest> = vec![PlantedForest::one()];
    planted.extend(desk_planted(cfg, 1).iter().cloned().map(PlantedForest::singleton));
    for x in &planted {
        for y in &planted {
            for z in &planted {
                let lhs = star0(x, y).map(|u| star0(&u, z));
                let rhs = star0(y, z).map(|u| star0(x, &u));
                r.record(lhs == rhs, || {
                    format!("cut product not associative on {x:?}, {y:?}, {z:?}")
                });
            }
        }
    }

    let small = desk_trees(cfg, 1);
    let mut forests: Vec<Forest> = vec![Forest::one()];
    forests.extend(sample(&small, 3).into_iter().map(Forest::singleton));
    for x in &forests {
        for y in &forests {
            for z in &forests {
                let lhs = star1(x, y).map(|u| star1(&u, z));
                let rhs = star1(y, z).map(|u| star1(x, &u));
                r.record(lhs == rhs, || {
                    format!("insertion product not associative on {x:?}, {y:?}, {z:?}")
                });
            }
        }
    }

    let trees = sample(&small, 10);
    for x in &trees {
        for y in &trees {
            for z in &trees {
                let lhs = star2(x, y).map(|u| star2(&u, z));
                let rhs = star2(y, z).map(|u| star2(x, &u));
                r.record(lhs == rhs, || {
                    format!("block product not associative on {x:?}, {y:?}, {z:?}")
                });
            }
        }
    }

    let b = cfg.budget(None);
    for t in sample(&desk_trees(cfg, 2), 10) {
        let left = delta2(&t, &b).map(|(a, c)| {
            delta2(a, &b).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), c.clone()))
        });
        let right = delta2(&t, &b).map(|(a, c)| {
            delta2(c, &b).map_basis(|(c1, c2)| (a.clone(), c1.clone(), c2.clone()))
        });
        let cap = t.grading(s) + b.max_poly_grading;
        let clip = |x: &LinComb<(DecoratedTree, DecoratedTree, DecoratedTree)>| {
            x.filter(|(a, bb, c)| a.grading(s) + bb.grading(s) + c.grading(s) <= cap)
        };
        r.record(clip(&left) == clip(&right), || {
            format!("block coproduct not coassociative on {t:?}")
        });

        let left = delta1(&t, &b).map(|(f, u)| {
            delta1_forest(f, &b).map_basis(|(f1, f2)| (f1.clone(), f2.clone(), u.clone()))
        });
        let right = delta1(&t, &b).map(|(f, u)| {
            delta1(u, &b).map_basis(|(g, w)| (f.clone(), g.clone(), w.clone()))
        });
        let clip = |x: &LinComb<(Forest, Forest, DecoratedTree)>| {
            x.filter(|(f, g, u)| {
                forest_grading(f, cfg) + forest_grading(g, cfg) + u.grading(s) <= cap
            })
        };
        r.record(clip(&left) == clip(&right), || {
            format!("extraction coproduct not coassociative on {t:?}")
        });
    }

    let egrading = |f: &PlantedForest| f.trees().iter().map(|p| p.grading(s)).sum::<u64>();
    for p in desk_planted(cfg, 2).iter().step_by(9) {
        let f = PlantedForest::singleton(p.clone());
        let left = delta_dck(&f, &b).map(|(a, c)| {
            delta_dck(a, &b).map_basis(|(a1, a2)| (a1.clone(), a2.clone(), c.clone()))
        });
        let right = delta_dck(&f, &b).map(|(a, c)| {
            delta_dck(c, &b).map_basis(|(c1, c2)| (a.clone(), c1.clone(), c2.clone()))
        });
        let cap = egrading(&f) + b.max_poly_grading;
        let clip = |x: &LinComb<(PlantedForest, PlantedForest, PlantedForest)>| {
            x.filter(|(a, bb, c)| egrading(a) + egrading(bb) + egrading(c) <= cap)
        };
        r.record(clip(&left) == clip(&right), || {
            format!("cut coproduct not coassociative on {p:?}")
        });
    }

    let mut merge_forests: Vec<Forest> = sample(&small, 5).into_iter().map(Forest::singleton).collect();
    merge_forests.push(Forest::new(vec![leaf(cfg, 1), leaf(cfg, 1)]));
    merge_forests.push(Forest::new(vec![leaf(cfg, 0), small[small.len() - 1].clone()]));
    for f in &merge_forests {
        let lhs = delta2(&merge_roots(f, cfg.dimension), &b);
        let rhs = delta2_forest(f, &b).map_basis(|(f1, f2)| {
            (merge_roots(f1, cfg.dimension), merge_roots(f2, cfg.dimension))
        });
        r.record(lhs == rhs, || format!("root merge incompatible with the coproduct on {f:?}"));
    }

    for t in sample(&desk_trees(cfg, 2), 30) {
        for f in &merge_forests {
            r.record(adjointness_defect(&t, f).is_zero(), || {
                format!("merge/split adjointness fails on {t:?} against {f:?}")
            });
        }
    }
    r
}

/// Cointeraction of insertion with grafting and with the block products, on
/// the product side and on the coproduct side.
pub fn suite_cointeraction(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("cointeraction");
    let small = desk_trees(cfg, 1);
    let picks = sample(&small, 8);
    let mut taus: Vec<Forest> = vec![Forest::one()];
    taus.extend(sample(&small, 4).into_iter().map(Forest::singleton));
    taus.push(Forest::new(vec![leaf(cfg, 1), leaf(cfg, 1)]));

    for tau in &taus {
        for t1 in &picks {
            for t2 in &picks {
                let (lhs, rhs) = cointeraction_plug(tau, t1, t2, true);
                r.record(lhs == rhs, || {
                    format!("plugging cointeraction fails on {tau:?}, {t1:?}, {t2:?}")
                });
                let a = el(cfg, 0, 0);
                let (lhs, rhs) = cointeraction_graft_classical(tau, t1, t2, &a);
                r.record(lhs == rhs, || {
                    format!("classical grafting cointeraction fails on {tau:?}, {t1:?}, {t2:?}")
                });
            }
        }
        for p1 in sample(&desk_planted(cfg, 1), 4) {
            for p2 in sample(&desk_planted(cfg, 1), 4) {
                let (lhs, rhs) = cointeraction_graft(tau, &p1, &p2, true);
                r.record(lhs == rhs, || {
                    format!("grafting cointeraction fails on {tau:?}, {p1:?}, {p2:?}")
                });
            }
        }
    }

    let b = cfg.budget(None);
    let s = &cfg.scaling;
    for t in sample(&desk_trees(cfg, 2), 8) {
        let (lhs, rhs) = cointeraction_coproducts(&t, &b);
        let cap = t.grading(s) + b.max_poly_grading;
        let clip = |x: &LinComb<(Forest, DecoratedTree, DecoratedTree)>| {
            x.filter(|(f, a, c)| forest_grading(f, cfg) + a.grading(s) + c.grading(s) <= cap)
        };
        r.record(clip(&lhs) == clip(&rhs), || {
            format!("coproduct cointeraction fails on {t:?}")
        });
    }
    r
}

/// The derived coproducts agree with their leg-swapped or renamed origins,
/// the antipode convolution collapses within the budget, and the identity
/// renormalisation map is compatible with the recentering coproduct.
pub fn suite_maps(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("maps");
    let b = cfg.budget(None);

    let mut planted: Vec<PlantedForest> = vec![PlantedForest::one()];
    planted.extend(
        sample(&desk_planted(cfg, 2), 12)
            .into_iter()
            .map(PlantedForest::singleton),
    );
    let p1 = desk_planted(cfg, 1);
    planted.push(PlantedForest::new(vec![p1[0].clone(), p1[p1.len() - 1].clone()]));
    for f in &planted {
        r.record(delta_na(f, &b, None) == flip(&delta_dck(f, &b)), || {
            format!("nonlinear-analysis coproduct is not the leg swap on {f:?}")
        });
        let deg = {
            let mut d = cfg.degree_assignment();
            d.order_cap = Some(1);
            d
        };
        let filtered = delta_na(f, &b, Some(&deg));
        let full = delta_na(f, &b, None);
        let contained = filtered.iter().all(|(t, c)| &full.coeff(t) == c);
        r.record(contained, || format!("order filter invents terms on {f:?}"));
        r.record(antipode_defect(f, &b, AntipodeKind::Na).is_zero(), || {
            format!("antipode convolution does not collapse on {f:?}")
        });
    }

    for t in sample(&desk_trees(cfg, 2), 20) {
        let rc = delta_rc(&t, &b);
        r.record(rc == flip(&delta2(&t, &b)), || {
            format!("recentering coproduct is not the leg swap on {t:?}")
        });
        r.record(rc == delta_rc_direct(&t, &b), || {
            format!("recentering recursion disagrees on {t:?}")
        });
        r.record(delta_rn(&t, &b) == delta1(&t, &b), || {
            format!("renormalisation coproduct mismatch on {t:?}")
        });
        r.record(delta_rn_nonroot(&t, &b) == delta_circ(&t, &b), || {
            format!("non-root renormalisation coproduct mismatch on {t:?}")
        });
    }

    let id = |t: &DecoratedTree| LinComb::basis(t.clone());
    let basis = desk_trees(cfg, 1);
    let witness = check_r_compat(&id, &basis, &b);
    r.record(witness.is_none(), || {
        format!("identity map fails coproduct compatibility at {witness:?}")
    });

    let ring = RationalRing;
    let pi = |f: &PlantedForest| q_int(1 + f.trees().len() as i64);
    let project = |_: &Q| Q::zero();
    for f in &planted {
        let twisted = birkhoff_twist(&ring, &pi, &project, f, &b);
        let direct = eval_character(&ring, &pi, &LinComb::basis(f.clone()));
        r.record(twisted == direct, || {
            format!("trivial projection twists the character on {f:?}")
        });
    }
    r
}

/// Hand-expanded worked examples with concrete decorations: plain and
/// deformed grafting, planted grafting, plain and deformed plugging, and
/// the deformed block product on the two-vertex target.
pub fn suite_displays(cfg: &SessionConfig) -> SuiteReport {
    let mut r = SuiteReport::new("displays");
    let a = el(cfg, 0, 1);
    let bb = el(cfg, 1, 1);

    // single vertex grafted onto a two-vertex tree: one term per vertex
    let alpha = leaf(cfg, 1);
    let tau = node(cfg, 1, vec![(bb.clone(), leaf(cfg, 1))]);
    let mut expected = LinComb::basis(node(
        cfg,
        1,
        vec![(bb.clone(), leaf(cfg, 1)), (a.clone(), leaf(cfg, 1))],
    ));
    expected.add_term(
        node(cfg, 1, vec![(bb.clone(), node(cfg, 1, vec![(a.clone(), leaf(cfg, 1))]))]),
        q_int(1),
    );
    r.record(graft(&alpha, &a, &tau) == expected, || "plain grafting display".into());

    // deformed version: the same two terms plus one decoration-transfer
    // correction per vertex with a unit binomial coefficient
    let mut deformed_expected = expected.clone();
    deformed_expected.add_term(
        node(cfg, 0, vec![(bb.clone(), leaf(cfg, 1)), (el(cfg, 0, 0), leaf(cfg, 1))]),
        q_int(1),
    );
    deformed_expected.add_term(
        node(cfg, 1, vec![(bb.clone(), node(cfg, 0, vec![(el(cfg, 0, 0), leaf(cfg, 1))]))]),
        q_int(1),
    );
    r.record(deformed_graft(&alpha, &a, &tau) == deformed_expected, || {
        "deformed grafting display".into()
    });

    // planted grafting: one term, grafted under the planted edge
    let pa = PlantedTree::new(a.clone(), leaf(cfg, 1));
    let pb = PlantedTree::new(bb.clone(), leaf(cfg, 1));
    let plain_planted = LinComb::basis(PlantedTree::new(
        bb.clone(),
        node(cfg, 1, vec![(a.clone(), leaf(cfg, 1))]),
    ));
    r.record(planted_graft(&pa, &pb, false) == plain_planted, || {
        "planted grafting display".into()
    });

    // its deformation adds the single transfer term
    let mut planted_expected = plain_planted.clone();
    planted_expected.add_term(
        PlantedTree::new(bb.clone(), node(cfg, 0, vec![(el(cfg, 0, 0), leaf(cfg, 1))])),
        q_int(1),
    );
    r.record(planted_graft(&pa, &pb, true) == planted_expected, || {
        "deformed planted grafting display".into()
    });

    // cherry plugged into a two-vertex tree: roots identified at each vertex
    let c = el(cfg, 0, 0);
    let sigma = node(cfg, 1, vec![(a.clone(), leaf(cfg, 1)), (bb.clone(), leaf(cfg, 0))]);
    let tau2 = node(cfg, 1, vec![(c.clone(), leaf(cfg, 1))]);
    let mut plug_expected = LinComb::basis(node(
        cfg,
        2,
        vec![
            (c.clone(), leaf(cfg, 1)),
            (a.clone(), leaf(cfg, 1)),
            (bb.clone(), leaf(cfg, 0)),
        ],
    ));
    plug_expected.add_term(
        node(
            cfg,
            1,
            vec![(
                c.clone(),
                node(cfg, 2, vec![(a.clone(), leaf(cfg, 1)), (bb.clone(), leaf(cfg, 0))]),
            )],
        ),
        q_int(1),
    );
    r.record(plug(&sigma, &tau2, VertexMode::All, false) == plug_expected, || {
        "plain plugging display".into()
    });

    // deformed plugging: a unit binomial transfer through either branch of
    // the cherry, at each of the two vertices
    let mut dplug_expected = plug_expected.clone();
    dplug_expected.add_term(
        node(
            cfg,
            1,
            vec![
                (c.clone(), leaf(cfg, 1)),
                (el(cfg, 0, 0), leaf(cfg, 1)),
                (bb.clone(), leaf(cfg, 0)),
            ],
        ),
        q_int(1),
    );
    dplug_expected.add_term(
        node(
            cfg,
            1,
            vec![
                (c.clone(), leaf(cfg, 1)),
                (a.clone(), leaf(cfg, 1)),
                (el(cfg, 1, 0), leaf(cfg, 0)),
            ],
        ),
        q_int(1),
    );
    dplug_expected.add_term(
        node(
            cfg,
            1,
            vec![(
                c.clone(),
                node(cfg, 1, vec![(el(cfg, 0, 0), leaf(cfg, 1)), (bb.clone(), leaf(cfg, 0))]),
            )],
        ),
        q_int(1),
    );
    dplug_expected.add_term(
        node(
            cfg,
            1,
            vec![(
                c.clone(),
                node(cfg, 1, vec![(a.clone(), leaf(cfg, 1)), (el(cfg, 1, 0), leaf(cfg, 0))]),
            )],
        ),
        q_int(1),
    );
    r.record(plug(&sigma, &tau2, VertexMode::All, true) == dplug_expected, || {
        "deformed plugging display".into()
    });

    // the block product of a cherry with a two-vertex tree expands into the
    // four binomial families of the worked example
    let delta = mi(cfg, 1);
    let omega = mi(cfg, 1);
    let alpha_i = mi(cfg, 1);
    let beta_i = mi(cfg, 0);
    let gamma_i = mi(cfg, 0);
    let eb = el(cfg, 0, 1);
    let ec = el(cfg, 1, 1);
    let ea = el(cfg, 0, 0);
    let sigma3 = DecoratedTree::new(
        NodeLabel::plain(delta.clone()),
        vec![
            (eb.clone(), DecoratedTree::leaf(beta_i.clone())),
            (ec.clone(), DecoratedTree::leaf(gamma_i.clone())),
        ],
    );
    let tau3 = DecoratedTree::new(
        NodeLabel::plain(omega.clone()),
        vec![(ea.clone(), DecoratedTree::leaf(alpha_i.clone()))],
    );
    let mut star_expected: LinComb<DecoratedTree> = LinComb::zero();
    let splits: Vec<(MultiIndex, MultiIndex)> = compositions(&delta, 2)
        .into_iter()
        .map(|p| (p[0].clone(), p[1].clone()))
        .collect();
    for (d1, d2) in &splits {
        // whole block at the root, monomial block on the leaf
        for l1 in crate::index::indices_up_to(&eb.index) {
            for l2 in crate::index::indices_up_to(&ec.index) {
                let total = l1.add(&l2);
                let coeff = q_biguint(&crate::index::multinomial(&omega, &[l1.clone(), l2.clone()]));
                if coeff.is_zero() {
                    continue;
                }
                if let (Some(root), Some(b1), Some(b2)) = (
                    omega.add(d2).checked_sub(&total),
                    eb.index.checked_sub(&l1),
                    ec.index.checked_sub(&l2),
                ) {
                    star_expected.add_term(
                        DecoratedTree::new(
                            NodeLabel::plain(root),
                            vec![
                                (ea.clone(), DecoratedTree::leaf(alpha_i.add(d1))),
                                (
                                    EdgeLabel { kind: eb.kind, index: b1 },
                                    DecoratedTree::leaf(beta_i.clone()),
                                ),
                                (
                                    EdgeLabel { kind: ec.kind, index: b2 },
                                    DecoratedTree::leaf(gamma_i.clone()),
                                ),
                            ],
                        ),
                        coeff,
                    );
                }
            }
        }
        // whole block on the leaf, monomial block at the root
        for l1 in crate::index::indices_up_to(&eb.index) {
            for l2 in crate::index::indices_up_to(&ec.index) {
                let total = l1.add(&l2);
                let coeff =
                    q_biguint(&crate::index::multinomial(&alpha_i, &[l1.clone(), l2.clone()]));
                if coeff.is_zero() {
                    continue;
                }
                if let (Some(mid), Some(b1), Some(b2)) = (
                    alpha_i.add(d2).checked_sub(&total),
                    eb.index.checked_sub(&l1),
                    ec.index.checked_sub(&l2),
                ) {
                    star_expected.add_term(
                        DecoratedTree::new(
                            NodeLabel::plain(omega.add(d1)),
                            vec![(
                                ea.clone(),
                                DecoratedTree::new(
                                    NodeLabel::plain(mid),
                                    vec![
                                        (
                                            EdgeLabel { kind: eb.kind, index: b1 },
                                            DecoratedTree::leaf(beta_i.clone()),
                                        ),
                                        (
                                            EdgeLabel { kind: ec.kind, index: b2 },
                                            DecoratedTree::leaf(gamma_i.clone()),
                                        ),
                                    ],
                                ),
                            )],
                        ),
                        coeff,
                    );
                }
            }
        }
        // one branch per block, both placements over the two vertices
        for (root_branch, leaf_branch, root_leaf, leaf_leaf) in [
            (&eb, &ec, &beta_i, &gamma_i),
            (&ec, &eb, &gamma_i, &beta_i),
        ] {
            for l1 in crate::index::indices_up_to(&root_branch.index) {
                for l2 in crate::index::indices_up_to(&leaf_branch.index) {
                    let c1 = q_biguint(&binomial(&omega, &l1));
                    let c2 = q_biguint(&binomial(&alpha_i, &l2));
                    let coeff = c1 * c2;
                    if coeff.is_zero() {
                        continue;
                    }
                    if let (Some(root), Some(mid), Some(b1), Some(b2)) = (
                        omega.add(d1).checked_sub(&l1),
                        alpha_i.add(d2).checked_sub(&l2),
                        root_branch.index.checked_sub(&l1),
                        leaf_branch.index.checked_sub(&l2),
                    ) {
                        star_expected.add_term(
                            DecoratedTree::new(
                                NodeLabel::plain(root),
                                vec![
                                    (
                                        EdgeLabel { kind: root_branch.kind, index: b1 },
                                        DecoratedTree::leaf(root_leaf.clone()),
                                    ),
                                    (
                                        ea.clone(),
                                        DecoratedTree::new(
                                            NodeLabel::plain(mid),
                                            vec![(
                                                EdgeLabel { kind: leaf_branch.kind, index: b2 },
                                                DecoratedTree::leaf(leaf_leaf.clone()),
                                            )],
                                        ),
                                    ),
                                ],
                            ),
                            coeff,
                        );
                    }
                }
            }
        }
    }
    r.record(star2(&sigma3, &tau3) == star_expected, || {
        "block product display".into()
    });
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_lookup() {
        let cfg = SessionConfig::default();
        assert_eq!(SUITE_NAMES.len(), 10);
        assert!(run_suite(&cfg, "chu").is_some());
        assert!(run_suite(&cfg, "nope").is_none());
    }

    #[test]
    fn chu_suite_passes_quickly() {
        let r = suite_chu(&SessionConfig::default());
        assert!(r.passed(), "{}", r.line());
        assert!(r.checks > 1000);
    }

    #[test]
    fn displays_suite_passes() {
        let r = suite_displays(&SessionConfig::default());
        assert!(r.passed(), "{}", r.line());
    }
}
