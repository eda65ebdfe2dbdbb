//! Small exact integer linear algebra used by the polyhedral code.

use num_integer::Integer;

/// Rank of a list of integer rows over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let a = m[rank][col];
            let b = m[r][col];
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            let pivot = m[rank].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot) {
                *x = *x * fa - p * fb;
            }
            normalize_row(&mut m[r]);
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn normalize_row(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    let mut m = mat.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Generator of the orthogonal complement of n-1 rows in Z^n, via cofactors.
/// Returns the zero vector when the rows are dependent.
pub fn cofactor_normal(rows: &[Vec<i64>], n: usize) -> Vec<i64> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != skip)
                    .map(|(_, &x)| x as i128)
                    .collect()
            })
            .collect();
        let d = det(&minor);
        let signed = if skip % 2 == 0 { d } else { -d };
        out.push(signed);
    }
    let g = out.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return vec![0; n];
    }
    out.iter().map(|&x| (x / g) as i64).collect()
}
