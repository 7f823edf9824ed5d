//! Brute-force optimum of a small LP by enumerating basic feasible solutions.

use capgraph_lp::{LinearProgram, Relation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Solves `A y = b, y >= 0` for every basis of size `rows` and returns the best
/// objective among feasible basic solutions.
fn enumerate_bfs(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Option<f64> {
    let m = a.len();
    let ncols = c.len();
    let mut best: Option<f64> = None;
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        if let Some(y) = solve_basis(a, b, &idx) {
            if y.iter().all(|v| *v >= -1e-9) {
                let obj: f64 = idx.iter().zip(&y).map(|(&j, v)| c[j] * v).sum();
                best = Some(best.map_or(obj, |bst: f64| bst.min(obj)));
            }
        }
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < ncols - m + i {
                idx[i] += 1;
                for k in i + 1..m {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn solve_basis(a: &[Vec<f64>], b: &[f64], cols: &[usize]) -> Option<Vec<f64>> {
    let m = a.len();
    let mut mat: Vec<Vec<f64>> = (0..m)
        .map(|r| {
            let mut row: Vec<f64> = cols.iter().map(|&c| a[r][c]).collect();
            row.push(b[r]);
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| mat[x][col].abs().total_cmp(&mat[y][col].abs()))?;
        if mat[piv][col].abs() < 1e-10 {
            return None;
        }
        mat.swap(col, piv);
        for r in 0..m {
            if r != col {
                let f = mat[r][col] / mat[col][col];
                for k in col..=m {
                    mat[r][k] -= f * mat[col][k];
                }
            }
        }
    }
    Some((0..m).map(|r| mat[r][m] / mat[r][r]).collect())
}

pub fn random_problem(rng: &mut ChaCha8Rng) -> LinearProgram {
    let nvars = rng.gen_range(2..=12);
    let nrows = rng.gen_range(1..=5);
    let x0: Vec<f64> = (0..nvars).map(|_| rng.gen_range(0.0..3.0)).collect();
    let mut lp = LinearProgram::new((0..nvars).map(|_| rng.gen_range(-1.0..1.0)).collect());
    for _ in 0..nrows {
        let coeffs: Vec<f64> = (0..nvars).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let at: f64 = coeffs.iter().zip(&x0).map(|(a, x)| a * x).sum();
        let slack = rng.gen_range(0.0..2.0);
        match rng.gen_range(0..3) {
            0 => lp.add_constraint(coeffs, Relation::Le, at + slack),
            1 => lp.add_constraint(coeffs, Relation::Ge, at - slack),
            _ => lp.add_constraint(coeffs, Relation::Eq, at),
        };
    }
    let total: f64 = x0.iter().sum::<f64>() + 5.0;
    lp.add_constraint(vec![1.0; nvars], Relation::Le, total);
    lp
}

pub fn oracle(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_vars();
    let n_ineq = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let ncols = n + n_ineq;
    assert!(ncols <= 20);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut next = n;
    for c in &lp.constraints {
        let mut row = vec![0.0; ncols];
        row[..n].copy_from_slice(&c.coeffs);
        match c.relation {
            Relation::Le => {
                row[next] = 1.0;
                next += 1;
            }
            Relation::Ge => {
                row[next] = -1.0;
                next += 1;
            }
            Relation::Eq => {}
        }
        a.push(row);
        b.push(c.rhs);
    }
    let mut c = lp.objective.clone();
    c.resize(ncols, 0.0);
    enumerate_bfs(&a, &b, &c)
}
