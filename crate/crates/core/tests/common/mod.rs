//! Naive reference implementations shared by the integration tests. These
//! recompute everything from the Pascal rule with plain `i64` arithmetic.
#![allow(dead_code)]

pub fn reduce(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Every row of the Steinhaus triangle of `seq`.
pub fn orbit_rows(seq: &[u64], n: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![seq.to_vec()];
    while rows.last().unwrap().len() > 1 {
        let last = rows.last().unwrap();
        rows.push(last.windows(2).map(|w| (w[0] + w[1]) % n).collect());
    }
    rows
}

pub fn steinhaus_cells(seq: &[u64], n: u64) -> Vec<u64> {
    orbit_rows(seq, n).concat()
}

pub fn trapezoid_cells(seq: &[u64], n: u64, h: usize) -> Vec<u64> {
    orbit_rows(seq, n)[..h].concat()
}

/// Cells `(i, j)` of the Steinhaus triangle with `i < m` and
/// `m-1-i <= j <= m-1`, for a sequence of length `2m-1`.
pub fn pascal_rows(seq: &[u64], n: u64) -> Vec<Vec<u64>> {
    let m = (seq.len() + 1) / 2;
    orbit_rows(seq, n)[..m].iter().enumerate().map(|(i, r)| r[m - 1 - i..m].to_vec()).collect()
}

pub fn pascal_cells(seq: &[u64], n: u64) -> Vec<u64> {
    pascal_rows(seq, n).concat()
}

pub fn pascal_trapezoid_cells(seq: &[u64], n: u64, h: usize) -> Vec<u64> {
    let rows = pascal_rows(seq, n);
    rows[rows.len() - h..].concat()
}

pub fn lozenge_cells(seq: &[u64], n: u64) -> Vec<u64> {
    let m = (seq.len() + 1) / 2;
    let rows = orbit_rows(seq, n);
    let mut out = pascal_cells(seq, n);
    for r in &rows[m..] {
        out.extend_from_slice(r);
    }
    out
}

pub fn dat_cells(a: i64, d1: i64, d2: i64, m: usize, n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..m as i64 {
        for j in 0..m as i64 - i {
            out.push(reduce(a + i * d1 + j * d2, n));
        }
    }
    out
}

pub fn counts(cells: &[u64], n: u64) -> Vec<u64> {
    let mut c = vec![0; n as usize];
    for &x in cells {
        c[x as usize] += 1;
    }
    c
}

pub fn balanced(cells: &[u64], n: u64) -> bool {
    let c = counts(cells, n);
    c.iter().all(|&x| x == c[0])
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for t in 0..k as u128 {
        acc = acc * (n as u128 - t) / (t + 1);
    }
    acc
}

/// Every sequence of length `len` over `Z/nZ`, in lexicographic order.
pub fn all_sequences(n: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..n).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Rotates a triangle given by rows `rows[i][j]`, `j < m - i`, so that the
/// right side becomes the top row.
pub fn rotate_rows(rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let m = rows.len();
    (0..m).map(|i| (0..m - i).map(|j| rows[j][m - 1 - i - j]).collect()).collect()
}

/// Rows of the triangle of `seq` under `b_j = x·a_j + y·a_{j+1}`.
pub fn weighted_rows(seq: &[u64], n: u64, x: i64, y: i64) -> Vec<Vec<u64>> {
    let mut rows = vec![seq.to_vec()];
    while rows.last().unwrap().len() > 1 {
        let last = rows.last().unwrap();
        rows.push(last.windows(2).map(|w| reduce(x * w[0] as i64 + y * w[1] as i64, n)).collect());
    }
    rows
}
