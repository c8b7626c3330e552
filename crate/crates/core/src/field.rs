//! Arithmetic and exact dense linear algebra over GF(p), p = 2^61 - 1.
//!
//! Ranks computed here are exact; randomness only enters through the choice
//! of matrix entries upstream.

/// The field modulus, a Mersenne prime.
pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        P - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let x = u128::from(a) * u128::from(b);
    // Mersenne fold: x = hi*2^61 + lo ≡ hi + lo (mod 2^61 - 1)
    let lo = (x & u128::from(P)) as u64;
    let hi = (x >> 61) as u64;
    let mut s = lo + hi;
    if s >= P {
        s -= P;
    }
    if s >= P {
        s -= P;
    }
    s
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= P;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod p.
pub fn inv(a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(P));
    pow(a, P - 2)
}

/// Row-reduces in place and returns the rank.
pub fn rank(rows: &mut [Vec<u64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let pinv = inv(rows[r][c]);
        for i in (r + 1)..rows.len() {
            let lead = rows[i][c];
            if lead == 0 {
                continue;
            }
            let factor = mul(lead, pinv);
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &head[r];
            let row = &mut tail[0];
            for j in c..cols {
                row[j] = sub(row[j], mul(factor, pivot_row[j]));
            }
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<u64>]) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let pinv = inv(rows[r][c]);
        for x in rows[r][c..cols].iter_mut() {
            *x = mul(*x, pinv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let factor = rows[i][c];
            let (lo, hi) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&mut a[i], &b[0])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&mut b[0], &a[r])
            };
            for j in c..cols {
                lo[j] = sub(lo[j], mul(factor, hi[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space of a rows × cols matrix.
pub fn null_space(mut rows: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row_idx, &pc) in pivots.iter().enumerate() {
            v[pc] = neg(rows[row_idx][free]);
        }
        basis.push(v);
    }
    basis
}

/// Transpose of a rows × cols matrix.
pub fn transpose(rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; rows.len()]; cols];
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out[j][i] = x;
        }
    }
    out
}
