//! Independent certification: exact solution validation, an exact rational
//! max-min LP (two-phase simplex, Bland's rule), and a brute-force optimal
//! value for desk-scale muffin problems by enumerating piece structures.
//!
//! Nothing here shares a code path with the constructive solvers; agreement
//! between the two is the core acceptance check.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::problem::Dap3;
use crate::rat::{multiset_of, Rat, RatMatrix};
use crate::solution::Solution;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolutionReport {
    #[error("{matrix} has {got_rows}x{got_cols} cells, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        matrix: &'static str,
        want_rows: usize,
        want_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("{matrix} row {row} sums to {got}, expected {want}")]
    RowSumMismatch { matrix: &'static str, row: usize, want: Rat, got: Rat },
    #[error("{matrix} has an empty cell")]
    Incomplete { matrix: &'static str },
    #[error("multiset of T differs from the multiset of U and V combined")]
    MultisetMismatch,
    #[error("declared value {declared} is not the minimum element {actual}")]
    WrongValue { declared: Rat, actual: Rat },
}

/// Checks a solution against its problem: exact rowsums, the multiset
/// identity, and that the declared value is the true minimum element.
pub fn validate_solution(p: &Dap3, sol: &Solution) -> Result<(), SolutionReport> {
    let shapes: [(&'static str, &RatMatrix, u64, u64); 3] = [
        ("T", &sol.t, p.s_t, p.t),
        ("U", &sol.u, p.s_u, p.u),
        ("V", &sol.v, p.s_v, p.v),
    ];
    for (name, m, want_rows, want_cols) in shapes {
        if m.rows() != want_rows as usize || (m.rows() > 0 && m.cols() != want_cols as usize) {
            return Err(SolutionReport::ShapeMismatch {
                matrix: name,
                want_rows: want_rows as usize,
                want_cols: want_cols as usize,
                got_rows: m.rows(),
                got_cols: m.cols(),
            });
        }
        if !m.is_complete() {
            return Err(SolutionReport::Incomplete { matrix: name });
        }
        let want = match name {
            "T" => &p.x_t,
            "U" => &p.x_u,
            _ => &p.x_v,
        };
        for row in 0..m.rows() {
            let got = m.row_sum(row).unwrap();
            if got != *want {
                return Err(SolutionReport::RowSumMismatch {
                    matrix: name,
                    row,
                    want: want.clone(),
                    got,
                });
            }
        }
    }
    let t_ms = sol.t.multiset().unwrap();
    let uv_ms = multiset_of(&[&sol.u, &sol.v]).unwrap();
    if t_ms != uv_ms {
        return Err(SolutionReport::MultisetMismatch);
    }
    let actual = sol.t.min_cell().unwrap();
    if sol.g != actual {
        return Err(SolutionReport::WrongValue { declared: sol.g.clone(), actual });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("infeasible system")]
    Infeasible,
    #[error("unbounded objective")]
    Unbounded,
}

/// An exact max-min program: pieces y_i >= multiplier_i * z grouped into
/// exact-sum constraints; maximize z >= 0.
#[derive(Debug, Clone)]
pub struct MaxMinLp {
    pub num_pieces: usize,
    pub groups: Vec<(Vec<usize>, Rat)>,
    pub multipliers: Vec<Rat>,
}

/// Solves the max-min program exactly; returns the optimum z and the piece
/// values y.
pub fn rational_maxmin_lp(lp: &MaxMinLp) -> Result<(Rat, Vec<Rat>), LpError> {
    let n = lp.num_pieces;
    assert_eq!(lp.multipliers.len(), n);
    // Substitute w_i = y_i - mult_i * z >= 0; variables [w_0.., z].
    let mut rows = Vec::with_capacity(lp.groups.len());
    let mut rhs = Vec::with_capacity(lp.groups.len());
    for (members, target) in &lp.groups {
        let mut row = vec![Rat::zero(); n + 1];
        let mut z_coeff = Rat::zero();
        for &i in members {
            row[i] = &row[i] + Rat::one();
            z_coeff = z_coeff + &lp.multipliers[i];
        }
        row[n] = z_coeff;
        rows.push(row);
        rhs.push(target.clone());
    }
    let mut objective = vec![Rat::zero(); n + 1];
    objective[n] = Rat::one();
    let (value, solution) = simplex_max(rows, rhs, objective)?;
    let z = value;
    let y: Vec<Rat> = (0..n)
        .map(|i| &solution[i] + &lp.multipliers[i] * &z)
        .collect();
    Ok((z, y))
}

/// Dense two-phase simplex with Bland's rule: maximize c.x subject to
/// A x = b, x >= 0, all arithmetic exact.
fn simplex_max(
    mut a: Vec<Vec<Rat>>,
    mut b: Vec<Rat>,
    c: Vec<Rat>,
) -> Result<(Rat, Vec<Rat>), LpError> {
    let m = a.len();
    let n = c.len();
    for i in 0..m {
        if b[i].is_negative() {
            for x in a[i].iter_mut() {
                *x = -&*x;
            }
            b[i] = -&b[i];
        }
    }
    // Phase 1: artificial variables n..n+m form the starting basis.
    let total = n + m;
    for (i, row) in a.iter_mut().enumerate() {
        row.resize(total, Rat::zero());
        row[n + i] = Rat::one();
    }
    let mut basis: Vec<usize> = (n..total).collect();
    let phase1: Vec<Rat> = (0..total)
        .map(|j| if j < n { Rat::zero() } else { -Rat::one() })
        .collect();
    run_simplex(&mut a, &mut b, &mut basis, &phase1, total)?;
    let infeasibility: Rat = basis
        .iter()
        .zip(&b)
        .filter(|(j, _)| **j >= n)
        .map(|(_, bi)| bi.clone())
        .sum();
    if !infeasibility.is_zero() {
        return Err(LpError::Infeasible);
    }
    // Pivot remaining artificials out on any real column; rows with no such
    // column are redundant and can be zeroed by pivoting nowhere (the row is
    // all zero on real variables).
    for i in 0..m {
        if basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !a[i][j].is_zero()) {
                pivot(&mut a, &mut b, &mut basis, i, col);
            }
        }
    }
    // Phase 2 on the real columns only.
    let mut phase2 = c.clone();
    phase2.resize(total, -Rat::one()); // artificials never re-enter
    run_simplex(&mut a, &mut b, &mut basis, &phase2, n)?;
    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = b[i].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok((value, x))
}

fn run_simplex(
    a: &mut [Vec<Rat>],
    b: &mut [Rat],
    basis: &mut [usize],
    c: &[Rat],
    allowed_cols: usize,
) -> Result<(), LpError> {
    let m = a.len();
    loop {
        // Reduced costs relative to the current basis.
        let y = {
            // c_B composed with the basis rows: since rows stay in reduced
            // form (identity on basis columns), the reduced cost of column j
            // is c_j - sum_i c_basis[i] * a[i][j].
            let cb: Vec<Rat> = basis.iter().map(|&j| c[j].clone()).collect();
            move |a: &[Vec<Rat>], j: usize| -> Rat {
                let mut acc = c[j].clone();
                for i in 0..m {
                    if !a[i][j].is_zero() && !cb[i].is_zero() {
                        acc = acc - &cb[i] * &a[i][j];
                    }
                }
                acc
            }
        };
        // Bland: smallest improving column index.
        let mut entering = None;
        for j in 0..allowed_cols {
            if basis.contains(&j) {
                continue;
            }
            if y(a, j) > Rat::zero() {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else { return Ok(()) };
        // Ratio test; Bland ties by smallest basis variable.
        let mut leaving: Option<(usize, Rat)> = None;
        for i in 0..m {
            if a[i][col] > Rat::zero() {
                let ratio = &b[i] / &a[i][col];
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leaving else { return Err(LpError::Unbounded) };
        pivot(a, b, basis, row, col);
    }
}

fn pivot(a: &mut [Vec<Rat>], b: &mut [Rat], basis: &mut [usize], row: usize, col: usize) {
    let m = a.len();
    let p = a[row][col].clone();
    for x in a[row].iter_mut() {
        *x = &*x / &p;
    }
    b[row] = &b[row] / &p;
    for i in 0..m {
        if i == row || a[i][col].is_zero() {
            continue;
        }
        let factor = a[i][col].clone();
        let (pivot_row, other) = if i < row {
            let (lo, hi) = a.split_at_mut(row);
            (&hi[0], &mut lo[i])
        } else {
            let (lo, hi) = a.split_at_mut(i);
            (&lo[row], &mut hi[0])
        };
        for (x, pv) in other.iter_mut().zip(pivot_row.iter()) {
            if !pv.is_zero() {
                *x = &*x - &factor * pv;
            }
        }
        b[i] = &b[i] - &factor * &b[row];
    }
    basis[row] = col;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle limited to m <= 6, s <= 5 (asked for m = {m}, s = {s})")]
    ScaleExceeded { m: u64, s: u64 },
    #[error("oracle needs m > s with 2m/s non-integral (m = {m}, s = {s})")]
    UnsupportedShape { m: u64, s: u64 },
}

/// A piece structure: counts[i][j] pieces of muffin i go to student j.
/// Muffin degrees lie in {2, 3} (justified below), student degrees in
/// [1, floor(3x)].
type Structure = Vec<Vec<u8>>;

/// Enumerates piece structures up to muffin reordering (rows non-increasing)
/// and student relabeling (canonical column form), solving an exact max-min
/// LP per structure, and returns the best value: the exact f(m, s).
///
/// Muffin degrees {2, 3} lose nothing: f >= 1/3 means every piece of an
/// optimal solution is at least 1/3, so no muffin splits into more than 3,
/// and an uncut muffin may be halved to the same student. The student cap
/// floor(3x) follows from the same piece bound.
pub fn brute_force_value(m: u64, s: u64) -> Result<Rat, OracleError> {
    if m > 6 || s > 5 {
        return Err(OracleError::ScaleExceeded { m, s });
    }
    if m <= s || (2 * m).is_multiple_of(s) {
        return Err(OracleError::UnsupportedShape { m, s });
    }
    let x = Rat::from(m) / Rat::from(s);
    let cap = (3 * m / s) as u8;
    let structures = enumerate_structures(m as usize, s as usize, cap);
    let best = structures
        .par_iter()
        .filter_map(|st| structure_value(st, &x).ok())
        .max()
        .expect("at least one feasible structure");
    Ok(best)
}

/// Max-min value of one fixed structure: pieces y_ij with y_ij >= c_ij z
/// (c_ij equal splits are optimal within a cell), muffin rows summing to 1,
/// student columns summing to x.
fn structure_value(st: &Structure, x: &Rat) -> Result<Rat, LpError> {
    let m = st.len();
    let s = st[0].len();
    let mut piece_idx = vec![vec![usize::MAX; s]; m];
    let mut multipliers = Vec::new();
    for i in 0..m {
        for j in 0..s {
            if st[i][j] > 0 {
                piece_idx[i][j] = multipliers.len();
                multipliers.push(Rat::from(st[i][j] as u64));
            }
        }
    }
    let mut groups = Vec::with_capacity(m + s);
    for i in 0..m {
        let members: Vec<usize> = (0..s).filter(|&j| st[i][j] > 0).map(|j| piece_idx[i][j]).collect();
        groups.push((members, Rat::one()));
    }
    for j in 0..s {
        let members: Vec<usize> = (0..m).filter(|&i| st[i][j] > 0).map(|i| piece_idx[i][j]).collect();
        groups.push((members, x.clone()));
    }
    let lp = MaxMinLp { num_pieces: multipliers.len(), groups, multipliers };
    rational_maxmin_lp(&lp).map(|(z, _)| z)
}

fn enumerate_structures(m: usize, s: usize, cap: u8) -> Vec<Structure> {
    // All candidate muffin rows: compositions of 2 or 3 over s students,
    // sorted descending so that non-increasing row sequences can be forced.
    let mut candidates: Vec<Vec<u8>> = Vec::new();
    for total in [2u8, 3u8] {
        compositions(total, s, &mut vec![0; s], 0, &mut candidates);
    }
    candidates.sort();
    candidates.reverse();

    let mut out = Vec::new();
    let mut seen: HashSet<Structure> = HashSet::new();
    let mut col_sums = vec![0u8; s];
    let mut rows: Vec<usize> = Vec::with_capacity(m);
    search(
        m,
        s,
        cap,
        &candidates,
        0,
        &mut rows,
        &mut col_sums,
        &mut out,
        &mut seen,
    );
    out
}

fn compositions(total: u8, s: usize, current: &mut Vec<u8>, pos: usize, out: &mut Vec<Vec<u8>>) {
    if pos == s {
        if total == 0 {
            out.push(current.clone());
        }
        return;
    }
    for take in 0..=total {
        current[pos] = take;
        compositions(total - take, s, current, pos + 1, out);
    }
    current[pos] = 0;
}

#[allow(clippy::too_many_arguments)]
fn search(
    m: usize,
    s: usize,
    cap: u8,
    candidates: &[Vec<u8>],
    min_candidate: usize,
    rows: &mut Vec<usize>,
    col_sums: &mut [u8],
    out: &mut Vec<Structure>,
    seen: &mut HashSet<Structure>,
) {
    if rows.len() == m {
        if col_sums.iter().all(|&c| c >= 1) {
            let st: Structure = rows.iter().map(|&r| candidates[r].clone()).collect();
            let canon = canonical_form(&st, s);
            if seen.insert(canon) {
                out.push(st);
            }
        }
        return;
    }
    let remaining = m - rows.len();
    for idx in min_candidate..candidates.len() {
        let cand = &candidates[idx];
        if (0..s).any(|j| col_sums[j] + cand[j] > cap) {
            continue;
        }
        for j in 0..s {
            col_sums[j] += cand[j];
        }
        // Every student still needs a piece and only 3 per muffin remain.
        let deficit = col_sums.iter().filter(|&&c| c == 0).count();
        if deficit <= (remaining - 1) * s {
            // cheap bound: each remaining row adds at most 3 pieces
            let total_deficit: usize = col_sums.iter().map(|&c| usize::from(c == 0)).sum();
            if total_deficit <= (remaining - 1) * 3 {
                rows.push(idx);
                search(m, s, cap, candidates, idx, rows, col_sums, out, seen);
                rows.pop();
            }
        }
        for j in 0..s {
            col_sums[j] -= cand[j];
        }
    }
}

fn canonical_form(st: &Structure, s: usize) -> Structure {
    let mut perm: Vec<usize> = (0..s).collect();
    let mut best: Option<Structure> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut rows: Structure = st
            .iter()
            .map(|row| p.iter().map(|&j| row[j]).collect())
            .collect();
        rows.sort();
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
    });
    best.unwrap()
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn lp_single_muffin_two_students() {
        let lp = MaxMinLp {
            num_pieces: 2,
            groups: vec![
                (vec![0, 1], Rat::one()),
                (vec![0], r(1, 2)),
                (vec![1], r(1, 2)),
            ],
            multipliers: vec![Rat::one(), Rat::one()],
        };
        let (z, y) = rational_maxmin_lp(&lp).unwrap();
        assert_eq!(z, r(1, 2));
        assert_eq!(y, vec![r(1, 2), r(1, 2)]);
    }

    #[test]
    fn lp_equality_forced() {
        let lp = MaxMinLp {
            num_pieces: 2,
            groups: vec![(vec![0], r(1, 3)), (vec![0, 1], Rat::one())],
            multipliers: vec![Rat::one(), Rat::one()],
        };
        let (z, y) = rational_maxmin_lp(&lp).unwrap();
        assert_eq!(z, r(1, 3));
        assert_eq!(y, vec![r(1, 3), r(2, 3)]);
    }

    #[test]
    fn lp_infeasible() {
        let lp = MaxMinLp {
            num_pieces: 1,
            groups: vec![(vec![0], Rat::one()), (vec![0], r(1, 2))],
            multipliers: vec![Rat::one()],
        };
        assert_eq!(rational_maxmin_lp(&lp), Err(LpError::Infeasible));
    }

    #[test]
    fn lp_table2_fixed_structure() {
        // Pieces 0..14: muffin i owns pieces (2i, 2i+1).
        let muffins: Vec<(Vec<usize>, Rat)> =
            (0..7).map(|i| (vec![2 * i, 2 * i + 1], Rat::one())).collect();
        let students: Vec<(Vec<usize>, Rat)> = vec![
            (vec![0, 12], r(4, 5)),
            (vec![2, 13], r(4, 5)),
            (vec![4, 6], r(4, 5)),
            (vec![8, 10], r(4, 5)),
            (vec![1, 3, 5, 7, 9, 11], r(19, 5)),
        ];
        let lp = MaxMinLp {
            num_pieces: 14,
            groups: muffins.into_iter().chain(students).collect(),
            multipliers: vec![Rat::one(); 14],
        };
        let (z, _) = rational_maxmin_lp(&lp).unwrap();
        assert_eq!(z, r(3, 10));
    }

    #[test]
    fn oracle_values() {
        assert_eq!(brute_force_value(5, 3).unwrap(), r(5, 12));
        assert_eq!(brute_force_value(4, 3).unwrap(), r(1, 3));
        assert_eq!(brute_force_value(5, 4).unwrap(), r(3, 8));
    }

    #[test]
    fn oracle_rejects_out_of_scale() {
        assert!(matches!(
            brute_force_value(20, 13),
            Err(OracleError::ScaleExceeded { .. })
        ));
        assert!(matches!(
            brute_force_value(6, 3),
            Err(OracleError::UnsupportedShape { .. })
        ));
    }

    #[test]
    fn validator_catches_perturbation() {
        use crate::problem::{muffin_to_dap3, MuffinSpec};
        use crate::recursive::solve_recursive;
        let p = muffin_to_dap3(MuffinSpec::new(5, 3)).unwrap();
        let sol = solve_recursive(&p).unwrap();
        validate_solution(&p, &sol).unwrap();
        // Perturb one cell by 1/1000: the row sum breaks.
        let mut rows = sol.t.to_rows().unwrap();
        rows[0][0] = &rows[0][0] + r(1, 1000);
        let mut bad = sol.clone();
        bad.t = RatMatrix::from_rows(rows);
        assert!(matches!(
            validate_solution(&p, &bad),
            Err(SolutionReport::RowSumMismatch { matrix: "T", row: 0, .. })
        ));
    }
}
