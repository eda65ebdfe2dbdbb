//! Brute-force oracles shared by integration tests.

#![allow(dead_code)]

use rand::Rng;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if m < k {
        return vec![];
    }
    let mut out = subsets(m - 1, k);
    for mut s in subsets(m - 1, k - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// Whether `v >= Σ λ_i g_i` for some convex combination of `gens`, by enumerating basic solutions.
pub fn dominated(v: &[i64], gens: &[Vec<i64>]) -> bool {
    let n = v.len();
    for t in 1..=gens.len().min(n + 1) {
        for support in subsets(gens.len(), t) {
            for rows in subsets(n, t - 1) {
                let mut m = vec![vec![1i128; t]];
                let mut rhs = vec![1i128];
                for &c in &rows {
                    m.push(support.iter().map(|&g| gens[g][c] as i128).collect());
                    rhs.push(v[c] as i128);
                }
                let d = det(&m);
                if d == 0 {
                    continue;
                }
                let lam: Vec<i128> = (0..t)
                    .map(|j| {
                        let mj: Vec<Vec<i128>> = m
                            .iter()
                            .zip(&rhs)
                            .map(|(row, &r)| {
                                let mut row = row.clone();
                                row[j] = r;
                                row
                            })
                            .collect();
                        det(&mj) * d.signum()
                    })
                    .collect();
                let d = d.abs();
                if lam.iter().any(|&l| l < 0) {
                    continue;
                }
                let ok = (0..n).all(|c| {
                    let s: i128 = support.iter().zip(&lam).map(|(&g, &l)| l * gens[g][c] as i128).sum();
                    s <= d * v[c] as i128
                });
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

/// Generators not dominated by the convex hull of the others.
pub fn vertices(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut distinct: Vec<Vec<i64>> = gens.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut out: Vec<Vec<i64>> = distinct
        .iter()
        .filter(|v| {
            let others: Vec<Vec<i64>> = distinct.iter().filter(|g| g != v).cloned().collect();
            !dominated(v, &others)
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// Between one and five distinct nonzero generators in `n` variables with entries at most `max`.
pub fn random_generators(rng: &mut impl Rng, n: usize, max: i64) -> Vec<Vec<i64>> {
    let k = rng.gen_range(1..=5);
    let mut out: Vec<Vec<i64>> = Vec::new();
    while out.len() < k {
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        if g.iter().any(|&x| x > 0) && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Source text of a trinomial in the first `n` of `x, y, z` with exponents at most 4.
pub fn random_trinomial(rng: &mut impl Rng, n: usize) -> String {
    const VARS: [&str; 3] = ["x", "y", "z"];
    let mut exps: Vec<Vec<u32>> = Vec::new();
    while exps.len() < 3 {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        if e.iter().any(|&x| x > 0) && !exps.contains(&e) {
            exps.push(e);
        }
    }
    let terms: Vec<String> = exps
        .iter()
        .map(|e| {
            let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let m: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|&(_, &k)| k > 0)
                .map(|(i, &k)| format!("{}^{k}", VARS[i]))
                .collect();
            format!("{c}*{}", m.join("*"))
        })
        .collect();
    terms.join(" + ").replace("+ -", "- ")
}
