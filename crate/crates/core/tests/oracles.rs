mod common;

use common::oracle;
use qpcox_core::barcanon::{BarOperator, BarRoute, CanonicalTable, ModuleKind};
use qpcox_core::coxeter::{CoxeterSystem, DiagramAut, GenSet};
use qpcox_core::hecke::kl_basis;
use qpcox_core::qpsets::ScaledWSet;
use qpcox_core::wgraph::build_wgraph;

#[test]
fn subword_order_matches_bruhat() {
    for t in ["A3", "B3", "I2(6)"] {
        let w = CoxeterSystem::from_type(t).unwrap();
        let g = w.finite();
        let below = oracle::subword_bruhat(g);
        for x in 0..g.order() as u32 {
            for y in 0..g.order() as u32 {
                assert_eq!(g.bruhat_leq(x, y), below[x as usize][y as usize], "{t}: ({x}, {y})");
            }
        }
    }
}

#[test]
fn kl_table_matches_classical_recursion() {
    for t in ["A3", "B3", "H3", "D4"] {
        let w = CoxeterSystem::from_type(t).unwrap();
        let g = w.finite();
        let table = kl_basis(&w).unwrap();
        let p = oracle::classical_kl(g);
        for x in 0..g.order() as u32 {
            for y in 0..g.order() as u32 {
                assert_eq!(table.h(x, y), oracle::classical_h(g, &p, x, y), "{t}: ({x}, {y})");
            }
        }
    }
}

#[test]
fn s4_has_nonconstant_kl_polynomial() {
    let w = CoxeterSystem::from_type("A3").unwrap();
    let p = oracle::classical_kl(w.finite());
    assert!(p.values().any(|c| c == &vec![1, 1]));
}

#[test]
fn brute_force_on_truncation_free_classes() {
    let w = CoxeterSystem::from_type("B3").unwrap();
    let theta = DiagramAut::identity(3);
    for k in qpcox_core::classify::twisted_classes(&w, &theta, true, None).unwrap() {
        if !k.verdict().unwrap().is_qp {
            continue;
        }
        for kind in [ModuleKind::M, ModuleKind::N] {
            let bar = BarOperator::build(&k, kind, BarRoute::Generic).unwrap();
            let t = CanonicalTable::compute(&k, &bar).unwrap();
            let brute = oracle::brute_force_canonical(&k, &bar).unwrap();
            for (y, col) in brute.iter().enumerate() {
                for x in 0..k.len() as u32 {
                    assert_eq!(t.p(x, y as u32), col.get(&x).cloned().unwrap_or_default());
                }
            }
        }
    }
}

#[test]
fn cells_match_reachability_on_cosets() {
    let w = CoxeterSystem::from_type("B3").unwrap();
    for mask in 0..8u32 {
        let x = ScaledWSet::coset_set(&w, GenSet(mask), None).unwrap();
        for kind in [ModuleKind::M, ModuleKind::N] {
            let bar = BarOperator::build(&x, kind, BarRoute::Auto).unwrap();
            let g = build_wgraph(&x, &CanonicalTable::compute(&x, &bar).unwrap());
            let edges: Vec<(u32, u32)> =
                g.edges.iter().enumerate().flat_map(|(a, e)| e.iter().map(move |&(b, _)| (a as u32, b))).collect();
            let cells = g.cells();
            assert_eq!(cells.cells, oracle::scc_by_reachability(g.len(), &edges));
            assert!(cells.quotient_is_acyclic());
            assert!(g.check_quasi_admissible().quasi_admissible);
        }
    }
}

#[test]
fn regular_b3_graphs_are_dual() {
    let w = CoxeterSystem::from_type("B3").unwrap();
    let x = ScaledWSet::regular(&w, None).unwrap();
    let gm = build_wgraph(&x, &CanonicalTable::compute(&x, &BarOperator::build(&x, ModuleKind::M, BarRoute::Auto).unwrap()).unwrap());
    let gn = build_wgraph(&x, &CanonicalTable::compute(&x, &BarOperator::build(&x, ModuleKind::N, BarRoute::Auto).unwrap()).unwrap());
    assert!(gn.same_graph(&gm.dual()));
    assert_eq!(gm.cells().cells, gn.cells().cells);
}
