//! Completion of a maximal inseparable b-pair (A, B): given the U-element
//! values contained in the pair, solve for every V-element and lay both out in
//! the fixed templates. A holds the (v-1)b + 1 supply rows of the pair and B
//! its b demand rows.

use crate::opcount;
use crate::rat::{Rat, RatMatrix};
use crate::solution::Origin;

/// Shape data for one reduction level: the number of U-elements in a b-pair
/// (`u_prime`) and in a (b-1)-pair (`v_prime`), together with the affine
/// coefficients expressing their sums over (x_t, x_v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairShape {
    pub b: u64,
    /// u' = [(v-1)b + 1] t - b v
    pub u_prime: u64,
    /// v' = [(v-1)(b-1) + 1] t - (b-1) v
    pub v_prime: u64,
    /// x_u' = xu_coeffs.0 * x_t - xu_coeffs.1 * x_v
    pub xu_coeffs: (u64, u64),
    /// x_v' = xv_coeffs.0 * x_t - xv_coeffs.1 * x_v
    pub xv_coeffs: (u64, u64),
}

impl PairShape {
    pub fn xu_prime(&self, x_t: &Rat, x_v: &Rat) -> Rat {
        Rat::from(self.xu_coeffs.0) * x_t - Rat::from(self.xu_coeffs.1) * x_v
    }

    pub fn xv_prime(&self, x_t: &Rat, x_v: &Rat) -> Rat {
        Rat::from(self.xv_coeffs.0) * x_t - Rat::from(self.xv_coeffs.1) * x_v
    }
}

/// Element counts and sum coefficients for the b- and (b-1)-pairs of a
/// reduction at level b (b >= 1).
pub fn pair_shape(t: u64, v: u64, b: u64) -> PairShape {
    assert!(b >= 1, "pair_shape requires b >= 1");
    let a_rows = (v - 1) * b + 1;
    let a_rows_minus = (v - 1) * (b - 1) + 1;
    PairShape {
        b,
        u_prime: a_rows * t - b * v,
        v_prime: a_rows_minus * t - (b - 1) * v,
        xu_coeffs: (a_rows, b),
        xv_coeffs: (a_rows_minus, b - 1),
    }
}

/// A completed maximal inseparable b-pair.
#[derive(Debug, Clone)]
pub struct BPair {
    pub b: u64,
    pub t: u64,
    pub v: u64,
    /// ((v-1)b + 1) x t supply rows, each summing to x_t.
    pub a: RatMatrix,
    /// b x v demand rows, each summing to x_v.
    pub b_matrix: RatMatrix,
}

impl BPair {
    fn a_rows(v: u64, b: u64) -> u64 {
        if b == 0 {
            1
        } else {
            (v - 1) * b + 1
        }
    }

    /// Number of U-elements consumed by a pair of this shape.
    pub fn u_len(t: u64, v: u64, b: u64) -> u64 {
        Self::a_rows(v, b) * t - b * v
    }

    /// Provenance of each A cell: U-elements are laid out first in each row,
    /// V-elements (the B values) last.
    pub fn a_origins(&self) -> Vec<Vec<Origin>> {
        let (t, v, b) = (self.t as usize, self.v as usize, self.b as usize);
        let mut rows = Vec::with_capacity(self.a.rows());
        for r in 0..self.a.rows() {
            let from_v = if b == 0 {
                0
            } else if v == 1 {
                b
            } else if b == 1 || r < b * (v - 2) + 2 {
                1 // a w-row
            } else {
                2 // a yz-row
            };
            let mut row = vec![Origin::FromU; t - from_v];
            row.extend(std::iter::repeat_n(Origin::FromV, from_v));
            rows.push(row);
        }
        rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("u_in has {got} elements, a {b}-pair needs {want}")]
    LengthMismatch { b: u64, want: u64, got: usize },
    #[error("v = 1 pairs require b <= t - 2 (b = {b}, t = {t})")]
    V1TooDeep { b: u64, t: u64 },
    #[error("u_in sums to {got}, inconsistent with the pair rowsums (want {want})")]
    InconsistentSum { want: Rat, got: Rat },
}

/// Fills a b-pair from the given U-element values. Elements of `u_in` are
/// consumed left-to-right, top-to-bottom into the templates; only their
/// minimum matters for the value analysis, not the order.
pub fn complete_pair(
    b: u64,
    x_t: &Rat,
    x_v: &Rat,
    t: u64,
    v: u64,
    u_in: &[Rat],
) -> Result<BPair, PairError> {
    let want = BPair::u_len(t, v, b);
    if u_in.len() as u64 != want {
        return Err(PairError::LengthMismatch { b, want, got: u_in.len() });
    }
    if v == 1 && b > 0 && b > t - 2 {
        return Err(PairError::V1TooDeep { b, t });
    }
    let expected_sum =
        Rat::from(BPair::a_rows(v, b)) * x_t - Rat::from(b) * x_v;
    let got_sum: Rat = u_in.iter().sum();
    if got_sum != expected_sum {
        return Err(PairError::InconsistentSum { want: expected_sum, got: got_sum });
    }

    let (tn, vn, bn) = (t as usize, v as usize, b as usize);
    let mut a = RatMatrix::new(BPair::a_rows(v, b) as usize, tn);
    let mut bm = RatMatrix::new(bn, vn);
    let mut feed = u_in.iter().cloned();

    if b == 0 {
        for (c, val) in feed.enumerate() {
            a.set(0, c, val);
        }
    } else if v == 1 {
        for c in 0..tn - bn {
            a.set(0, c, feed.next().unwrap());
        }
        for i in 0..bn {
            a.set(0, tn - bn + i, x_v.clone());
            bm.set(i, 0, x_v.clone());
        }
    } else {
        // w-rows: t-1 given elements and one solved element per row.
        let w_count = if b == 1 { vn } else { bn * (vn - 2) + 2 };
        let mut w = Vec::with_capacity(w_count);
        for r in 0..w_count {
            let mut sum = Rat::zero();
            for c in 0..tn - 1 {
                let val = feed.next().unwrap();
                sum = sum + &val;
                a.set(r, c, val);
            }
            let wi = x_t - sum;
            opcount::bump(t - 1);
            a.set(r, tn - 1, wi.clone());
            w.push(wi);
        }

        if b == 1 {
            for (c, wi) in w.iter().enumerate() {
                bm.set(0, c, wi.clone());
            }
        } else {
            // yz-rows of A and the chained y/z recurrences.
            let mut y = Vec::with_capacity(bn - 1);
            let mut z = Vec::with_capacity(bn - 1);
            let y1: Rat = x_v - w[..vn - 1].iter().sum::<Rat>();
            opcount::bump(v - 1);
            y.push(y1);
            for i in 0..bn - 1 {
                let row = w_count + i;
                let mut sum = Rat::zero();
                for c in 0..tn - 2 {
                    let val = feed.next().unwrap();
                    sum = sum + &val;
                    a.set(row, c, val);
                }
                let zi = x_t - &y[i] - sum;
                opcount::bump(t - 1);
                a.set(row, tn - 2, y[i].clone());
                a.set(row, tn - 1, zi.clone());
                z.push(zi);
                if i + 1 < bn - 1 {
                    let mids: Rat =
                        w[(i + 1) * (vn - 2) + 1..=(i + 2) * (vn - 2)].iter().sum();
                    let yi = x_v - &z[i] - mids;
                    opcount::bump(v - 1);
                    y.push(yi);
                }
            }
            // B template: row 1 is w_1..w_{v-1}, y_1; middle rows are
            // z_{i-1}, v-2 w's, y_i; the last row ends in two w's.
            for c in 0..vn - 1 {
                bm.set(0, c, w[c].clone());
            }
            bm.set(0, vn - 1, y[0].clone());
            for r in 1..bn - 1 {
                bm.set(r, 0, z[r - 1].clone());
                for j in 0..vn - 2 {
                    bm.set(r, 1 + j, w[r * (vn - 2) + 1 + j].clone());
                }
                bm.set(r, vn - 1, y[r].clone());
            }
            bm.set(bn - 1, 0, z[bn - 2].clone());
            for j in 0..vn - 1 {
                bm.set(bn - 1, 1 + j, w[(bn - 1) * (vn - 2) + 1 + j].clone());
            }
        }

        // The chained construction fixes every row sum except the last row of
        // B, which closes only because u_in carries the right total.
        for r in 0..bn {
            debug_assert_eq!(bm.row_sum(r).unwrap(), *x_v, "B row {r} sum");
        }
    }

    debug_assert!((0..a.rows()).all(|r| a.row_sum(r).unwrap() == *x_t));
    Ok(BPair { b, t, v, a, b_matrix: bm })
}
