//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the solver or the storage estimator.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use solargrid::optimizer::{LpProblem, Relation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Brute {
    Optimal(f64),
    Infeasible,
    Unbounded,
}

/// Solves the square system in place by Gaussian elimination with partial
/// pivoting; `None` when singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for k in col..n {
                        a[r][k] -= f * a[col][k];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut f);
}

/// Rows of `p` plus the bounds `x >= 0`, all as `(a, rel, b)`.
fn all_constraints(p: &LpProblem, homogeneous: bool) -> Vec<(Vec<f64>, Relation, f64)> {
    let n = p.num_vars();
    let mut cons: Vec<_> = p
        .rows
        .iter()
        .map(|r| (r.coeffs.clone(), r.relation, if homogeneous { 0.0 } else { r.rhs }))
        .collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cons.push((e, Relation::Ge, 0.0));
    }
    cons
}

fn satisfies(cons: &[(Vec<f64>, Relation, f64)], x: &[f64]) -> bool {
    cons.iter().all(|(a, rel, b)| {
        let lhs: f64 = a.iter().zip(x).map(|(a, x)| a * x).sum();
        let tol = 1e-9 * (1.0 + b.abs() + a.iter().zip(x).map(|(a, x)| (a * x).abs()).sum::<f64>());
        match rel {
            Relation::Ge => lhs >= b - tol,
            Relation::Le => lhs <= b + tol,
        }
    })
}

/// Minimum of `c·x` over the vertices of `{x : cons, extra}` where `extra`
/// rows are always active.
fn best_vertex(cons: &[(Vec<f64>, Relation, f64)], extra: &[(Vec<f64>, f64)], c: &[f64], n: usize) -> Option<f64> {
    let mut best: Option<f64> = None;
    combinations(cons.len(), n - extra.len(), |pick| {
        let mut a: Vec<Vec<f64>> = extra.iter().map(|(a, _)| a.clone()).collect();
        let mut b: Vec<f64> = extra.iter().map(|(_, b)| *b).collect();
        for &i in pick {
            a.push(cons[i].0.clone());
            b.push(cons[i].2);
        }
        if let Some(x) = solve_square(a, b) {
            if satisfies(cons, &x) {
                let v: f64 = c.iter().zip(&x).map(|(c, x)| c * x).sum();
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
    });
    best
}

/// Vertex enumeration. The feasible region lies in `x >= 0`, so it is
/// pointed: non-empty exactly when it has a vertex. The problem is unbounded
/// exactly when some extreme ray `r` of the recession cone has `c·r < 0`;
/// the rays are the vertices of the cone cut by `sum(r) = 1`.
pub fn brute_force(p: &LpProblem) -> Brute {
    let n = p.num_vars();
    let cons = all_constraints(p, false);
    let Some(best) = best_vertex(&cons, &[], &p.objective, n) else {
        return Brute::Infeasible;
    };
    let cone = all_constraints(p, true);
    if let Some(ray) = best_vertex(&cone, &[(vec![1.0; n], 1.0)], &p.objective, n) {
        if ray < -1e-9 {
            return Brute::Unbounded;
        }
    }
    Brute::Optimal(best)
}

/// A random LP with `1..=6` variables and `1..=8` rows. Coefficients and
/// right-hand sides are in [0, 10]; roughly a third are zero and, when
/// `integral`, the rest are whole numbers so degenerate ties are common.
pub fn random_lp(rng: &mut ChaCha8Rng, integral: bool, flip_costs: bool) -> LpProblem {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=8);
    let draw = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.3) {
            0.0
        } else if integral {
            rng.gen_range(1..=10) as f64
        } else {
            rng.gen_range(0.0..10.0)
        }
    };
    let objective = (0..n)
        .map(|_| {
            let c = draw(rng);
            if flip_costs && rng.gen_bool(0.5) {
                -c
            } else {
                c
            }
        })
        .collect();
    let rows = (0..m)
        .map(|_| {
            let a = (0..n).map(|_| draw(rng)).collect();
            let rel = if rng.gen_bool(0.6) { Relation::Ge } else { Relation::Le };
            (a, rel, draw(rng))
        })
        .collect();
    LpProblem::new(objective, rows)
}

/// Smallest lossless battery, found by bisection, that keeps the state of
/// charge non-negative when the day repeats. The battery starts full and is
/// clipped at capacity; three cycles let any wrap-around deficit show.
pub fn storage_by_bisection(cons: &[f64; 24], prod_unit: &[f64; 24], area: f64) -> f64 {
    let net: Vec<f64> = cons.iter().zip(prod_unit).map(|(c, p)| p * area - c).collect();
    let scale: f64 = cons.iter().sum::<f64>().max(1e-300);
    let survives = |cap: f64| {
        let mut soc = cap;
        for _ in 0..3 {
            for d in &net {
                soc = (soc + d).min(cap);
                if soc < -1e-12 * scale {
                    return false;
                }
            }
        }
        true
    };
    let (mut lo, mut hi) = (0.0, scale);
    if survives(0.0) {
        return 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if survives(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * scale {
            break;
        }
    }
    hi
}

/// Independent steady-state cooling oracle: heat leaking in through the
/// envelope, `UA * (T_out - T_in)`, removed at `COP`, in kWh per hour.
pub fn steady_cooling_kwh_per_hour(ua: f64, t_out: f64, t_in: f64, cop: f64) -> f64 {
    ua * (t_out - t_in) / cop / 1000.0
}

/// The 24 (consumption, production) pairs of the published hourly table.
pub const PUBLISHED_HOURLY: [(f64, f64, f64); 24] = [
    (49813.0, 66449.0, 16636.0),
    (29990.0, 53683.0, 23693.0),
    (43568.0, 47961.0, 4393.0),
    (45010.0, 45010.0, 0.0),
    (32106.0, 32110.0, 4.0),
    (25547.0, 38166.0, 12618.0),
    (36009.0, 51664.0, 15655.0),
    (37574.0, 47928.0, 10354.0),
    (57347.0, 58913.0, 1566.0),
    (46638.0, 46661.0, 23.0),
    (45316.0, 49624.0, 4309.0),
    (38726.0, 52790.0, 14063.0),
    (31021.0, 57217.0, 26196.0),
    (35586.0, 50006.0, 14420.0),
    (26953.0, 44652.0, 17699.0),
    (48428.0, 48431.0, 3.0),
    (50240.0, 53595.0, 3355.0),
    (66904.0, 66928.0, 24.0),
    (43897.0, 77572.0, 33675.0),
    (49891.0, 91494.0, 41604.0),
    (42928.0, 93238.0, 50309.0),
    (46343.0, 87249.0, 40906.0),
    (51142.0, 90339.0, 39197.0),
    (43344.0, 72324.0, 28981.0),
];

pub fn fixture_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/ten_city")
}

pub fn fixture_config() -> std::path::PathBuf {
    fixture_dir().join("config.toml")
}
