//! Independent reference computations used to cross-check the library.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use qpcox_core::barcanon::BarOperator;
use qpcox_core::coxeter::FiniteGroup;
use qpcox_core::qpsets::ScaledWSet;
use qpcox_core::LaurentPoly;

/// `x ≤ y` iff `x` is the product of a subword of a reduced word of `y`.
pub fn subword_bruhat(g: &FiniteGroup) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut below = vec![vec![false; n]; n];
    for y in 0..n as u32 {
        let mut reach = vec![false; n];
        reach[0] = true;
        for &s in g.word(y).iter().rev() {
            let cur: Vec<u32> = (0..n as u32).filter(|&z| reach[z as usize]).collect();
            for z in cur {
                reach[g.lmul(s as usize, z) as usize] = true;
            }
        }
        for x in 0..n {
            below[x][y as usize] = reach[x];
        }
    }
    below
}

type QPoly = Vec<i64>;

fn q_add(a: &mut QPoly, b: &[i64], shift: usize, scale: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += scale * c;
    }
}

/// Classical Kazhdan–Lusztig polynomials `P_{x,w}(q)` from the recursion
/// over a left descent `s` of `w`, with Bruhat order from subwords.
pub fn classical_kl(g: &FiniteGroup) -> HashMap<(u32, u32), QPoly> {
    let n = g.order();
    let leq = subword_bruhat(g);
    let len = |w: u32| g.length(w) as i64;
    let mut by_len: Vec<u32> = (0..n as u32).collect();
    by_len.sort_by_key(|&w| (len(w), w));
    let mut p: HashMap<(u32, u32), QPoly> = HashMap::new();
    let get = |p: &HashMap<(u32, u32), QPoly>, x: u32, y: u32| p.get(&(x, y)).cloned().unwrap_or_default();
    let mu = |p: &HashMap<(u32, u32), QPoly>, z: u32, v: u32| -> i64 {
        let d = len(v) - len(z);
        if d <= 0 || d % 2 == 0 {
            return 0;
        }
        p.get(&(z, v)).and_then(|c| c.get(((d - 1) / 2) as usize)).copied().unwrap_or(0)
    };
    p.insert((0, 0), vec![1]);
    for &w in by_len.iter().skip(1) {
        let s = g.word(w)[0] as usize;
        let v = g.lmul(s, w);
        for x in (0..n as u32).filter(|&x| leq[x as usize][w as usize]) {
            let sx = g.lmul(s, x);
            let c = usize::from(len(sx) < len(x));
            let mut out = QPoly::new();
            q_add(&mut out, &get(&p, sx, v), 1 - c, 1);
            q_add(&mut out, &get(&p, x, v), c, 1);
            for z in (0..n as u32).filter(|&z| leq[x as usize][z as usize] && leq[z as usize][v as usize] && z != v) {
                let m = mu(&p, z, v);
                if m != 0 && len(g.lmul(s, z)) < len(z) {
                    q_add(&mut out, &get(&p, x, z), ((len(w) - len(z)) / 2) as usize, -m);
                }
            }
            while out.last() == Some(&0) {
                out.pop();
            }
            p.insert((x, w), out);
        }
    }
    p
}

/// `h_{x,y} = v^{ℓ(x)−ℓ(y)} P_{x,y}(v²)`.
pub fn classical_h(g: &FiniteGroup, p: &HashMap<(u32, u32), QPoly>, x: u32, y: u32) -> LaurentPoly {
    let shift = g.length(x) as i32 - g.length(y) as i32;
    match p.get(&(x, y)) {
        None => LaurentPoly::zero(),
        Some(c) => LaurentPoly::from_terms(c.iter().enumerate().map(|(i, &a)| (2 * i as i32 + shift, a))),
    }
}

/// Cells by mutual reachability, each sorted, sorted by first vertex.
pub fn scc_by_reachability(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
    }
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect();
    let mut assigned = vec![false; n];
    let mut cells = Vec::new();
    for a in 0..n {
        if assigned[a] {
            continue;
        }
        let cell: Vec<u32> = (0..n).filter(|&b| reach[a][b] && reach[b][a]).map(|b| b as u32).collect();
        for &b in &cell {
            assigned[b as usize] = true;
        }
        cells.push(cell);
    }
    cells.sort();
    cells
}

fn rational(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Exact solve of `A a = b`; `None` if inconsistent or not uniquely solvable.
fn solve_unique(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() != unknowns {
        return None;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    Some((0..unknowns).map(|i| rows[i][unknowns].clone()).collect())
}

/// For every `y`, the unique bar-invariant `M_y + Σ_x p_x M_x` with `p_x ∈ v⁻¹Z[v⁻¹]`
/// over points of smaller height, found as an undetermined-coefficient
/// linear system over `Q`. The degree bound is the height difference; a
/// solution inside the bound is canonical by uniqueness.
pub fn brute_force_canonical(set: &ScaledWSet, bar: &BarOperator) -> Result<Vec<BTreeMap<u32, LaurentPoly>>, String> {
    let n = set.len() as u32;
    let col = |x: u32| bar.column(x).map_err(|e| e.to_string());
    let mut out = Vec::with_capacity(n as usize);
    for y in 0..n {
        let mut unknowns: Vec<(u32, i32)> = Vec::new();
        for x in (0..n).filter(|&x| set.height2(x) < set.height2(y)) {
            let d = (set.height2(y) - set.height2(x) + 1) / 2;
            for k in 1..=d.max(1) {
                unknowns.push((x, k));
            }
        }
        let m = unknowns.len();
        let mut eqs: BTreeMap<(u32, i32), BTreeMap<usize, i64>> = BTreeMap::new();
        let mut rhs: BTreeMap<(u32, i32), i64> = BTreeMap::new();
        for (u, &(x, k)) in unknowns.iter().enumerate() {
            for (z, p) in col(x)?.terms() {
                for &(d, c) in p.terms() {
                    *eqs.entry((z, d + k)).or_default().entry(u).or_default() += c;
                }
            }
            *eqs.entry((x, -k)).or_default().entry(u).or_default() -= 1;
        }
        *rhs.entry((y, 0)).or_default() += 1;
        for (z, p) in col(y)?.terms() {
            for &(d, c) in p.terms() {
                *rhs.entry((z, d)).or_default() -= c;
            }
        }
        let keys: Vec<(u32, i32)> = eqs.keys().chain(rhs.keys()).copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let rows: Vec<Vec<BigRational>> = keys
            .iter()
            .map(|key| {
                let mut row = vec![BigRational::zero(); m + 1];
                if let Some(e) = eqs.get(key) {
                    for (&u, &c) in e {
                        row[u] = rational(c);
                    }
                }
                row[m] = rational(rhs.get(key).copied().unwrap_or(0));
                row
            })
            .collect();
        let sol = solve_unique(rows, m).ok_or_else(|| format!("no unique bar-invariant vector for point {y}"))?;
        let mut vec: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        vec.insert(y, LaurentPoly::one());
        let mut terms: BTreeMap<u32, Vec<(i32, i64)>> = BTreeMap::new();
        for (a, &(x, k)) in sol.iter().zip(&unknowns) {
            if a.is_zero() {
                continue;
            }
            if !a.is_integer() {
                return Err(format!("non-integral coefficient {a} at ({x}, {y})"));
            }
            let c = a.to_integer().abs().to_i64().ok_or("coefficient overflow")? * if a.is_negative() { -1 } else { 1 };
            terms.entry(x).or_default().push((-k, c));
        }
        for (x, t) in terms {
            vec.insert(x, LaurentPoly::from_terms(t));
        }
        out.push(vec);
    }
    Ok(out)
}
