//! W-graphs `Γ_m` and `Γ_n` built from canonical tables: quasi-admissibility,
//! the generator matrices `ρ(H_s)`, and cells.

use petgraph::algo::{is_cyclic_directed, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;
use serde_json::json;

use crate::barcanon::{act_gen, primed_basis, CanonicalTable, CheckResult, ModuleKind, ModuleVector};
use crate::coxeter::{GenSet, INFINITE};
use crate::laurent::LaurentPoly;
use crate::qpsets::ScaledWSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WGraph {
    pub kind: ModuleKind,
    pub rank: usize,
    /// Coxeter matrix, for the braid relations.
    pub matrix: Vec<Vec<u32>>,
    pub names: Vec<String>,
    pub heights2: Vec<i32>,
    pub tau: Vec<GenSet>,
    /// `edges[x]` lists `(y, ω(x→y))` with nonzero weight, sorted by `y`.
    pub edges: Vec<Vec<(u32, i64)>>,
}

/// `τ_m(x) = {s : ht(sx) ≤ ht(x)}`, `τ_n(x) = {s : ht(sx) ≥ ht(x)}`, and
/// `ω(x→y) = μ(x,y) + μ(y,x)` unless `τ(x) ⊆ τ(y)`.
pub fn build_wgraph(set: &ScaledWSet, table: &CanonicalTable) -> WGraph {
    let n = set.len();
    let tau: Vec<GenSet> = (0..n as u32)
        .map(|x| {
            (0..set.rank())
                .filter(|&s| match set.act(s, x) {
                    Some(sx) => match table.kind {
                        ModuleKind::M => set.height2(sx) <= set.height2(x),
                        ModuleKind::N => set.height2(sx) >= set.height2(x),
                    },
                    None => false,
                })
                .collect()
        })
        .collect();
    let mut mu = vec![Vec::new(); n];
    for (x, y, m) in table.mu_entries() {
        mu[x as usize].push((y, m));
        mu[y as usize].push((x, m));
    }
    let mut edges = vec![Vec::new(); n];
    for x in 0..n {
        let mut acc: std::collections::BTreeMap<u32, i64> = std::collections::BTreeMap::new();
        for &(y, m) in &mu[x] {
            if !tau[x].is_subset(tau[y as usize]) {
                *acc.entry(y).or_default() += m;
            }
        }
        edges[x] = acc.into_iter().filter(|(_, w)| *w != 0).collect();
    }
    let sys = set.system();
    WGraph {
        kind: table.kind,
        rank: set.rank(),
        matrix: (0..set.rank()).map(|i| (0..set.rank()).map(|j| sys.matrix().get(i, j)).collect()).collect(),
        names: (0..n as u32).map(|x| set.point_name(x)).collect(),
        heights2: set.heights2().to_vec(),
        tau,
        edges,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub reduced: bool,
    pub integral: bool,
    pub bipartite: bool,
    pub symmetric: bool,
    pub quasi_admissible: bool,
    /// All weights nonnegative.
    pub admissible: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cells {
    /// Cells sorted by their smallest vertex; each cell sorted.
    pub cells: Vec<Vec<u32>>,
    pub cell_of: Vec<u32>,
    /// Edges `i → j` of the quotient graph between distinct cells.
    pub quotient: Vec<(u32, u32)>,
}

impl Cells {
    pub fn quotient_is_acyclic(&self) -> bool {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let ns: Vec<_> = (0..self.cells.len()).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.quotient {
            g.add_edge(ns[a as usize], ns[b as usize], ());
        }
        !is_cyclic_directed(&g)
    }
}

impl WGraph {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn omega(&self, x: u32, y: u32) -> i64 {
        let e = &self.edges[x as usize];
        e.binary_search_by_key(&y, |(z, _)| *z).map(|i| e[i].1).unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// The same vertices with `τ ↦ S ∖ τ` and every edge reversed.
    pub fn dual(&self) -> WGraph {
        let all = GenSet::all(self.rank);
        let mut edges = vec![Vec::new(); self.len()];
        for (x, out) in self.edges.iter().enumerate() {
            for &(y, w) in out {
                edges[y as usize].push((x as u32, w));
            }
        }
        for e in edges.iter_mut() {
            e.sort();
        }
        WGraph {
            kind: self.kind,
            rank: self.rank,
            matrix: self.matrix.clone(),
            names: self.names.clone(),
            heights2: self.heights2.clone(),
            tau: self.tau.iter().map(|t| all.iter().filter(|&s| !t.contains(s)).collect()).collect(),
            edges,
        }
    }

    /// Same labelled graph, ignoring the module kind.
    pub fn same_graph(&self, other: &WGraph) -> bool {
        self.tau == other.tau && self.edges == other.edges
    }

    pub fn check_quasi_admissible(&self) -> AdmissibilityVerdict {
        let mut failure = None;
        let mut reduced = true;
        let mut bipartite = true;
        let mut symmetric = true;
        let mut admissible = true;
        for (x, out) in self.edges.iter().enumerate() {
            for &(y, w) in out {
                let (tx, ty) = (self.tau[x], self.tau[y as usize]);
                if tx.is_subset(ty) {
                    reduced = false;
                    failure.get_or_insert_with(|| format!("edge {} → {} with τ(x) ⊆ τ(y)", self.names[x], self.names[y as usize]));
                }
                if ((self.heights2[x] - self.heights2[y as usize]) / 2).rem_euclid(2) != 1 {
                    bipartite = false;
                    failure.get_or_insert_with(|| format!("edge {} → {} joins equal height parity", self.names[x], self.names[y as usize]));
                }
                if !tx.is_subset(ty) && !ty.is_subset(tx) && self.omega(y, x as u32) != w {
                    symmetric = false;
                    failure.get_or_insert_with(|| format!("ω asymmetric on {} and {}", self.names[x], self.names[y as usize]));
                }
                if w < 0 {
                    admissible = false;
                }
            }
        }
        // Weights are stored as integers, so integrality holds by type.
        let integral = true;
        AdmissibilityVerdict {
            reduced,
            integral,
            bipartite,
            symmetric,
            quasi_admissible: reduced && integral && bipartite && symmetric,
            admissible,
            failure,
        }
    }

    /// `ρ(H_s) x = v x` if `s ∉ τ(x)`, else `−v⁻¹ x + Σ_{s ∉ τ(y)} ω(x→y) y`.
    pub fn rho(&self, s: usize, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (x, p) in v.terms() {
            if !self.tau[x as usize].contains(s) {
                out.add_term(x, &(p * &LaurentPoly::v()));
                continue;
            }
            out.add_term(x, &(p * &(-LaurentPoly::v_inv())));
            for &(y, w) in &self.edges[x as usize] {
                if !self.tau[y as usize].contains(s) {
                    out.add_term(y, &p.scale(w));
                }
            }
        }
        out
    }

    /// `(ρ(H_s) − v)(ρ(H_s) + v⁻¹) = 0` and the braid relations, on every
    /// basis vector.
    pub fn verify_module(&self) -> Result<(), String> {
        let vm = LaurentPoly::v_minus_vinv();
        for x in 0..self.len() as u32 {
            let e = ModuleVector::basis(x);
            for s in 0..self.rank {
                let r = self.rho(s, &e);
                let mut q = self.rho(s, &r);
                q.add_assign_scaled(&r, &(-vm.clone()));
                if q != e {
                    return Err(format!("quadratic relation fails for s{} at {}", s + 1, self.names[x as usize]));
                }
            }
            for s in 0..self.rank {
                for t in s + 1..self.rank {
                    let m = self.matrix[s][t];
                    if m == INFINITE {
                        continue;
                    }
                    let mut a = e.clone();
                    let mut b = e.clone();
                    for i in 0..m {
                        let (ga, gb) = if i % 2 == 0 { (s, t) } else { (t, s) };
                        a = self.rho(ga, &a);
                        b = self.rho(gb, &b);
                    }
                    if a != b {
                        return Err(format!("braid relation fails for s{}, s{} at {}", s + 1, t + 1, self.names[x as usize]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Strongly connected components of `{x → y : ω(x→y) ≠ 0}` and the
    /// quotient order between them.
    pub fn cells(&self) -> Cells {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (x, out) in self.edges.iter().enumerate() {
            for &(y, _) in out {
                g.add_edge(nodes[x], nodes[y as usize], ());
            }
        }
        let mut cells: Vec<Vec<u32>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<u32> = c.into_iter().map(|n| n.index() as u32).collect();
                v.sort();
                v
            })
            .collect();
        cells.sort();
        let mut cell_of = vec![0u32; self.len()];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                cell_of[x as usize] = i as u32;
            }
        }
        let mut quotient: Vec<(u32, u32)> = Vec::new();
        for (x, out) in self.edges.iter().enumerate() {
            for &(y, _) in out {
                let (a, b) = (cell_of[x], cell_of[y as usize]);
                if a != b {
                    quotient.push((a, b));
                }
            }
        }
        quotient.sort();
        quotient.dedup();
        Cells { cells, cell_of, quotient }
    }

    pub fn to_dot(&self) -> String {
        let cells = self.cells();
        let mut out = format!("digraph gamma_{} {{\n  rankdir=BT;\n  node [shape=record];\n", self.kind.to_string().to_lowercase());
        for x in 0..self.len() {
            out.push_str(&format!(
                "  v{x} [label=\"{x} | {} | {}\", cell={}];\n",
                fmt_height(self.heights2[x]),
                self.tau[x],
                cells.cell_of[x]
            ));
        }
        let mut heights: Vec<i32> = self.heights2.clone();
        heights.sort();
        heights.dedup();
        for h in heights {
            let ids: Vec<String> = (0..self.len()).filter(|&x| self.heights2[x] == h).map(|x| format!("v{x}")).collect();
            out.push_str(&format!("  {{ rank=same; {} }}\n", ids.join("; ")));
        }
        for (x, e) in self.edges.iter().enumerate() {
            for &(y, w) in e {
                out.push_str(&format!("  v{x} -> v{y} [label=\"{w}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells = self.cells();
        let vertices: Vec<_> = (0..self.len())
            .map(|x| json!({"id": x, "name": self.names[x], "height2": self.heights2[x], "tau": self.tau[x]}))
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(x, e)| e.iter().map(move |&(y, w)| json!([x, y, w])))
            .collect();
        json!({
            "schema_version": crate::SCHEMA_VERSION,
            "kind": self.kind,
            "vertices": vertices,
            "edges": edges,
            "cells": cells.cells,
            "quotient": cells.quotient,
            "admissibility": self.check_quasi_admissible(),
            "module_relations": self.verify_module().err(),
        })
    }
}

fn fmt_height(h2: i32) -> String {
    if h2 % 2 == 0 {
        (h2 / 2).to_string()
    } else {
        format!("{}/2", h2)
    }
}

/// Coordinates of `v` in a unitriangular basis `basis[y] = e_y + (lower)`,
/// peeling off the highest point in `order` each time.
fn decompose(v: &ModuleVector, basis: &[ModuleVector], order: &[u32]) -> ModuleVector {
    let mut pos = vec![0usize; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x as usize] = i;
    }
    let mut rest = v.clone();
    let mut out = ModuleVector::zero();
    while let Some(top) = rest.support().max_by_key(|&x| pos[x as usize]) {
        let c = rest.coeff(top);
        rest.add_assign_scaled(&basis[top as usize], &(-c.clone()));
        out.add_term(top, &c);
    }
    out
}

/// `ρ_n(H_s)` agrees with `H_s` on the basis `underline N_x`, and the matrix
/// of `H_s` on the basis `underline N'_x` is the transpose of `ρ_m(H_s)`.
pub fn verify_against_module(
    set: &ScaledWSet,
    gamma_m: &WGraph,
    gamma_n: &WGraph,
    m_table: &CanonicalTable,
    n_table: &CanonicalTable,
) -> Vec<CheckResult> {
    let order = set.linear_extension();
    let n = set.len() as u32;
    let nb: Vec<ModuleVector> = (0..n).map(|x| n_table.vector(x)).collect();
    let n_action = (0..n).filter(|&x| set.is_interior(x)).try_for_each(|x| {
        for s in 0..set.rank() {
            let Ok(hv) = act_gen(set, ModuleKind::N, s, &nb[x as usize]) else { continue };
            if decompose(&hv, &nb, &order) != gamma_n.rho(s, &ModuleVector::basis(x)) {
                return Err(format!("ρ_n(H_s{}) differs from H_s on the canonical basis at {}", s + 1, set.point_name(x)));
            }
        }
        Ok(())
    });
    let np = primed_basis(set, m_table);
    let transpose = (0..n).filter(|&x| set.is_interior(x)).try_for_each(|x| {
        for s in 0..set.rank() {
            let Ok(hv) = act_gen(set, ModuleKind::N, s, &np[x as usize]) else { continue };
            let col = decompose(&hv, &np, &order);
            for y in 0..n {
                // Entry (y, x) of the primed-basis matrix against entry (x, y) of ρ_m.
                if col.coeff(y) != gamma_m.rho(s, &ModuleVector::basis(y)).coeff(x) {
                    return Err(format!(
                        "H_s{} on the primed basis is not the transpose of ρ_m at ({}, {})",
                        s + 1,
                        set.point_name(y),
                        set.point_name(x)
                    ));
                }
            }
        }
        Ok(())
    });
    vec![CheckResult::new("rho-n-matches-module", n_action), CheckResult::new("rho-m-transpose", transpose)]
}
