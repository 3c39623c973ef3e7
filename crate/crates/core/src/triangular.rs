//! Unitriangular bar-invariant solve shared by the Kazhdan–Lusztig basis of
//! the Hecke algebra and the canonical bases of the modules `M` and `N`.
//!
//! Input is a bar matrix by columns: `cols[z]` lists `(x, B[x][z])` with
//! `bar(b_z) = Σ_x B[x][z] b_x`. Output `p[y]` lists `(x, p_{x,y})` with
//! `Σ_x p_{x,y} b_x` bar-invariant, `p_{y,y} = 1` and all other entries in
//! `v⁻¹Z[v⁻¹]`.

use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};

pub type Column = Vec<(u32, LaurentPoly)>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("bar matrix is not unitriangular at column {column}")]
    NotUnitriangular { column: u32 },
    #[error("no bar-invariant solution: column {column}, row {row}: {source}")]
    Skew {
        column: u32,
        row: u32,
        #[source]
        source: LaurentError,
    },
}

/// `order` must be a linear extension of the order in which `cols` is
/// triangular: every row index in `cols[z]` other than `z` comes before `z`.
pub fn solve(cols: &[Column], order: &[u32]) -> Result<Vec<Column>, SolveError> {
    let n = cols.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &z) in order.iter().enumerate() {
        pos[z as usize] = i;
    }
    for (z, col) in cols.iter().enumerate() {
        let diag_ok = col.iter().any(|(x, p)| *x as usize == z && p.is_one());
        let below_ok = col.iter().all(|(x, _)| *x as usize == z || pos[*x as usize] < pos[z]);
        if !diag_ok || !below_ok || pos[z] == usize::MAX {
            return Err(SolveError::NotUnitriangular { column: z as u32 });
        }
    }
    (0..n as u32)
        .into_par_iter()
        .map(|y| solve_column(cols, order, &pos, y))
        .collect()
}

fn solve_column(cols: &[Column], order: &[u32], pos: &[usize], y: u32) -> Result<Column, SolveError> {
    let n = cols.len();
    let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n];
    let mut out: Column = Vec::new();
    let push = |z: u32, pz: &LaurentPoly, acc: &mut Vec<LaurentPoly>| {
        let bp = pz.bar();
        for (x, b) in &cols[z as usize] {
            if *x != z {
                acc[*x as usize] += &(b * &bp);
            }
        }
    };
    let one = LaurentPoly::one();
    push(y, &one, &mut acc);
    out.push((y, one));
    for &x in order[..pos[y as usize]].iter().rev() {
        let g = std::mem::take(&mut acc[x as usize]);
        if g.is_zero() {
            continue;
        }
        let p = LaurentPoly::solve_skew(&g).map_err(|source| SolveError::Skew { column: y, row: x, source })?;
        if !p.is_zero() {
            push(x, &p, &mut acc);
            out.push((x, p));
        }
    }
    out.sort_by_key(|(x, _)| *x);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_hecke() {
        // bar(H_s) = H_s + (v⁻¹ − v) H_1.
        let cols = vec![
            vec![(0, LaurentPoly::one())],
            vec![(0, LaurentPoly::v_minus_vinv().scale(-1)), (1, LaurentPoly::one())],
        ];
        let p = solve(&cols, &[0, 1]).unwrap();
        assert_eq!(p[1], vec![(0, LaurentPoly::v_inv()), (1, LaurentPoly::one())]);
    }

    #[test]
    fn rejects_inconsistent_data() {
        let cols = vec![
            vec![(0, LaurentPoly::one())],
            vec![(0, LaurentPoly::v()), (1, LaurentPoly::one())],
        ];
        assert!(matches!(solve(&cols, &[0, 1]), Err(SolveError::Skew { .. })));
        let bad = vec![vec![(0, LaurentPoly::v())]];
        assert!(matches!(solve(&bad, &[0]), Err(SolveError::NotUnitriangular { .. })));
    }
}
