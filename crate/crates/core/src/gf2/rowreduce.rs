//! Bit-packed Gaussian elimination over GF(2).
//!
//! Rows are `u128` words; column `c` is bit `c`, and elimination treats the
//! highest bit as the first column.

use alloc::vec::Vec;

/// Reduces `rows` in place to reduced row-echelon form over the low `width`
/// bits, dropping zero rows. The result is sorted by strictly decreasing
/// leading bit and every leading bit is cleared from all other rows.
pub(crate) fn rref(rows: &mut Vec<u128>, width: u32) {
    let mut r = 0;
    for col in (0..width).rev() {
        let bit = 1u128 << col;
        let Some(p) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.retain(|&x| x != 0);
}

#[inline]
pub(crate) fn leading_bit(x: u128) -> u32 {
    127 - x.leading_zeros()
}

/// Basis of `{v : row · v = 0 for every row}` inside the low `width` bits.
pub(crate) fn null_space(rows: &[u128], width: u32) -> Vec<u128> {
    let mut m = rows.to_vec();
    rref(&mut m, width);
    let pivots: Vec<u32> = m.iter().map(|&r| leading_bit(r)).collect();
    let mut basis = Vec::new();
    for free in (0..width).rev() {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = 1u128 << free;
        for (row, &p) in m.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                v |= 1u128 << p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Finds `z` with `row_i · z = rhs_i` for all constraints, free variables set
/// to zero, or `None` when the system is inconsistent. `width` ≤ 127.
pub(crate) fn solve(constraints: &[(u128, bool)], width: u32) -> Option<u128> {
    let mut m: Vec<u128> = constraints.iter().map(|&(r, b)| (r << 1) | u128::from(b)).collect();
    rref(&mut m, width + 1);
    let mut z = 0u128;
    for &row in &m {
        let lead = leading_bit(row);
        if lead == 0 {
            return None;
        }
        if row & 1 == 1 {
            z |= 1u128 << (lead - 1);
        }
    }
    Some(z)
}

#[inline]
pub(crate) fn dot(a: u128, b: u128) -> bool {
    (a & b).count_ones() & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rref_is_canonical() {
        let mut a = vec![0b110u128, 0b011, 0b101];
        rref(&mut a, 3);
        // rows 110 and 011 span {000,110,011,101}
        assert_eq!(a, vec![0b101, 0b011]);
        let mut b = vec![0b101u128, 0b110];
        rref(&mut b, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_and_solve() {
        let rows = [0b1100u128, 0b0110];
        let k = null_space(&rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert!(!dot(*r, *v));
            }
        }
        let z = solve(&[(0b1100, true), (0b0110, false)], 4).unwrap();
        assert!(dot(0b1100, z) && !dot(0b0110, z));
        assert_eq!(solve(&[(0b1, true), (0b1, false)], 4), None);
    }
}
