//! Closed-form per-sub-simplex DoF counts.

use crate::decomposition::{decompose3, Smoothness3};
use crate::error::Result;
use crate::rational::binom;

/// (C_0, C_1, C_2, C_3) of the scalar C^r element of degree k, r_f ≥ 0.
pub fn scalar_counts(k: u32, r: Smoothness3) -> [i64; 4] {
    let k = k as i64;
    let (rv, re, rf) = (r.v as i64, r.e as i64, r.f as i64);
    let c0 = binom(rv + 3, 3);
    let c1 = (k + re - 2 * rv - 1) * binom(re + 2, 2) - binom(re + 2, 3);
    let c2 = binom(k + 3, 3) - 3 * binom(rv + 3, 3) - 3 * binom(k - 2 * rv - 1, 3) - binom(k + 2 - rf, 3)
        + 3 * binom(rv + 2 - rf, 3)
        - 3 * (rf + 1) * binom(k - 2 * rv + re, 2)
        + 3 * binom(k - 2 * rv + rf, 3);
    let c3 = binom(k + 3, 3) - 4 * c0 - 6 * c1 - 4 * c2;
    [c0, c1, c2, c3]
}

/// Per-sub-simplex sizes |S_ℓ(f)| from the lattice decomposition.
pub fn enumerated_counts(k: u32, r: Smoothness3) -> Result<[i64; 4]> {
    let d = decompose3(k, r)?;
    let mut out = [0i64; 4];
    for (dim, slot) in out.iter_mut().enumerate() {
        *slot = d.pieces_of_dim(dim).next().map(|p| p.nodes.len() as i64).unwrap_or(0);
    }
    Ok(out)
}

/// Per-sub-simplex counts of the H(div) element with r_f = −1:
/// the vector scalar counts for r₊ redistributed by the Iverson terms.
pub fn hdiv_counts(k: u32, r: Smoothness3) -> [i64; 4] {
    let rp = r.plus();
    let c = scalar_counts(k, rp);
    let kt = k as i64 - 2 * rp.v as i64 - 1;
    let iv = (r.v == -1) as i64;
    let ie = (r.e == -1) as i64;
    [
        3 * c[0] - 3 * iv,
        3 * c[1] - 3 * ie * kt,
        c[2] + 3 * ie * kt + 3 * iv,
        3 * c[3] + 8 * c[2] + 6 * ie * kt,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_and_argyris() {
        assert_eq!(scalar_counts(3, Smoothness3::new(1, 0, 0)), [4, 0, 1, 0]);
        assert_eq!(scalar_counts(5, Smoothness3::new(2, 1, 0)), [10, 2, 0, 4]);
    }

    #[test]
    fn bdm_redistribution() {
        assert_eq!(hdiv_counts(1, Smoothness3::uniform(-1)), [0, 0, 3, 0]);
    }
}
