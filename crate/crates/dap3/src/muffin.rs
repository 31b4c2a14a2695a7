//! The muffin-problem front door: f(m, s) with all elementary special cases,
//! the 1/3 construction, the supply-constrained alternative construction, and
//! the order-2 closed form.

use serde::Serialize;

use crate::greedy::greedy_2x2;
use crate::problem::{muffin_to_dap3, Dap3, MuffinSpec};
use crate::rat::Rat;
use crate::recursive::solve_recursive;
use crate::solution::Solution;

/// How a muffin value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuffinRoute {
    /// One of the elementary closed cases: s = 1, x integral, or 2x an odd
    /// integer.
    Trivial,
    /// m < s, answered through f(m, s) = (m/s) f(s, m).
    Reciprocal,
    /// The fully-constrained optimum fell below 1/3; the answer is exactly 1/3.
    OneThird,
    /// The recursive solver's value stands.
    Recursive,
    /// The order-2 closed form (used by the dedicated entry point).
    ClosedFormN2,
}

/// The answer for a muffin problem: f is the unconstrained optimum, g the
/// fully-constrained optimum when the encoding exists, and f = max(1/3, g)
/// whenever both are defined.
#[derive(Debug, Clone)]
pub struct MuffinAnswer {
    pub f: Rat,
    pub g: Option<Rat>,
    pub route: MuffinRoute,
    pub solution: Option<Solution>,
}

/// Computes f(m, s) exactly for any m, s >= 1.
pub fn muffin_value(m: u64, s: u64) -> MuffinAnswer {
    assert!(m >= 1 && s >= 1, "muffin problems need m, s >= 1");
    if s == 1 || m.is_multiple_of(s) {
        return MuffinAnswer { f: Rat::one(), g: None, route: MuffinRoute::Trivial, solution: None };
    }
    if (2 * m).is_multiple_of(s) {
        // 2x is an odd integer here (an even one would make x integral).
        return MuffinAnswer {
            f: Rat::new(1, 2),
            g: None,
            route: MuffinRoute::Trivial,
            solution: None,
        };
    }
    if m < s {
        let flipped = muffin_value(s, m);
        return MuffinAnswer {
            f: Rat::from(m) / Rat::from(s) * flipped.f,
            g: None,
            route: MuffinRoute::Reciprocal,
            solution: None,
        };
    }
    // m > s > 2 with 2x non-integral: the fully-constrained encoding applies.
    let p = muffin_to_dap3(MuffinSpec::new(m, s)).expect("special cases handled above");
    let sol = solve_recursive(&p).expect("valid encoding solves");
    let g = sol.g.clone();
    let third = Rat::new(1, 3);
    let (f, route) = if g < third {
        (third, MuffinRoute::OneThird)
    } else {
        (g.clone(), MuffinRoute::Recursive)
    };
    MuffinAnswer { f, g: Some(g), route, solution: Some(sol) }
}

/// The order-2 closed form: for (m, s) = (3db + a, 3db + a - d) with d = m - s,
/// b >= 1 and 0 <= a < 3d, the fully-constrained value is
/// [db + X(a, d)] / s. Callers take max(1/3, .) for f.
pub fn n2_closed_form(m: u64, s: u64) -> Result<Rat, ClosedFormError> {
    if m <= s || 2 * m >= 3 * s {
        return Err(ClosedFormError::OutOfRange { m, s });
    }
    let d = m - s;
    let b = m / (3 * d);
    let a = m - 3 * d * b;
    debug_assert!(b >= 1 && a < 3 * d);
    let a_minus_d = a as i64 - d as i64;
    let x_term = if a == 0 {
        Rat::zero()
    } else if a <= d || (2 * d).is_multiple_of(a - d) {
        Rat::from_int(a_minus_d) / Rat::from(2)
    } else {
        Rat::from_int(a_minus_d) * muffin_value(a, a - d).f
    };
    Ok((Rat::from(d) * Rat::from(b) + x_term) / Rat::from(s))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error("closed form needs an order-2 problem: s < m < 3s/2 (m = {m}, s = {s})")]
    OutOfRange { m: u64, s: u64 },
}

/// A muffin-level assignment (muffins may be cut into up to three pieces, so
/// this is not a 3M-DAP solution).
#[derive(Debug, Clone)]
pub struct PieceAssignment {
    /// Piece sizes per muffin; each muffin's pieces sum to 1.
    pub muffins: Vec<Vec<Rat>>,
    /// Piece sizes per student; each student's pieces sum to m/s.
    pub students: Vec<Vec<Rat>>,
}

impl PieceAssignment {
    pub fn min_piece(&self) -> Rat {
        self.muffins
            .iter()
            .flatten()
            .min()
            .expect("nonempty assignment")
            .clone()
    }

    /// Exact feasibility: muffin sums 1, student sums m/s, and the two piece
    /// multisets coincide.
    pub fn validate(&self, m: u64, s: u64) -> Result<(), AssignmentReport> {
        if self.muffins.len() as u64 != m || self.students.len() as u64 != s {
            return Err(AssignmentReport::WrongCounts);
        }
        for (i, pieces) in self.muffins.iter().enumerate() {
            if pieces.iter().sum::<Rat>() != Rat::one() {
                return Err(AssignmentReport::MuffinSum { muffin: i });
            }
        }
        let x = Rat::from(m) / Rat::from(s);
        for (j, pieces) in self.students.iter().enumerate() {
            if pieces.iter().sum::<Rat>() != x {
                return Err(AssignmentReport::StudentSum { student: j });
            }
        }
        let mut from_muffins: Vec<&Rat> = self.muffins.iter().flatten().collect();
        let mut from_students: Vec<&Rat> = self.students.iter().flatten().collect();
        from_muffins.sort();
        from_students.sort();
        if from_muffins != from_students {
            return Err(AssignmentReport::PieceMismatch);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentReport {
    #[error("wrong number of muffins or students")]
    WrongCounts,
    #[error("muffin {muffin} pieces do not sum to 1")]
    MuffinSum { muffin: usize },
    #[error("student {student} pieces do not sum to m/s")]
    StudentSum { student: usize },
    #[error("muffin pieces and student pieces are different multisets")]
    PieceMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("the 1/3 construction needs m > s (m = {m}, s = {s})")]
    NeedsMoreMuffins { m: u64, s: u64 },
    #[error("x = {x} outside the alternative-construction band [n(n+2)/(2(n+1)), (n+1)/2)")]
    OutsideBand { x: Rat },
    #[error(transparent)]
    LowerBound(#[from] crate::lower_bounds::LowerBoundError),
    #[error(transparent)]
    Greedy(#[from] crate::greedy::GreedyError),
}

/// A feasible assignment with smallest piece at least 1/3, for any m > s:
/// m - s muffins are cut into thirds; when 3x is an integer the rest are
/// halved, otherwise the remainder is a t = u = v = 2 problem with
/// lambda = -1/3 finished by the greedy.
pub fn one_third_solution(m: u64, s: u64) -> Result<PieceAssignment, ConstructionError> {
    if m <= s {
        return Err(ConstructionError::NeedsMoreMuffins { m, s });
    }
    let third = Rat::new(1, 3);
    let x = Rat::from(m) / Rat::from(s);
    let k = 3 * m / s; // floor(3x) >= 3
    let mut muffins: Vec<Vec<Rat>> =
        (0..m - s).map(|_| vec![third.clone(); 3]).collect();

    if (3 * m).is_multiple_of(s) {
        // Case 1: k - 3 thirds and two halves per student.
        let half = Rat::new(1, 2);
        muffins.extend((0..s).map(|_| vec![half.clone(), half.clone()]));
        let students = (0..s)
            .map(|_| {
                let mut pieces = vec![third.clone(); (k - 3) as usize];
                pieces.push(half.clone());
                pieces.push(half.clone());
                pieces
            })
            .collect();
        return Ok(PieceAssignment { muffins, students });
    }

    // Case 2: k - 2 or k - 3 thirds per student; the remaining s muffins and
    // the two leftover pieces per student form a 2x2 greedy problem.
    let s_u = 3 * m - k * s;
    let s_v = (k + 1) * s - 3 * m;
    let sub = Dap3 {
        t: 2,
        u: 2,
        v: 2,
        s_t: s,
        s_u,
        s_v,
        x_t: Rat::one(),
        x_u: &x - Rat::from(k - 2) * &third,
        x_v: &x - Rat::from(k - 3) * &third,
    };
    let gsol = greedy_2x2(&sub)?;
    muffins.extend(gsol.t.to_rows().unwrap());
    let mut students = Vec::with_capacity(s as usize);
    for r in 0..s_u as usize {
        let mut pieces = vec![third.clone(); (k - 2) as usize];
        pieces.extend(gsol.u.row(r).unwrap());
        students.push(pieces);
    }
    for r in 0..s_v as usize {
        let mut pieces = vec![third.clone(); (k - 3) as usize];
        pieces.extend(gsol.v.row(r).unwrap());
        students.push(pieces);
    }
    Ok(PieceAssignment { muffins, students })
}

/// The supply-constrained construction that is optimal but infeasible for the
/// fully-constrained problem: valid exactly on the band
/// n(n+2)/(2(n+1)) <= x < (n+1)/2, where one student takes n + 2 pieces.
/// The smallest piece is 1 - x/n.
pub fn alt_supply_solution(m: u64, s: u64) -> Result<PieceAssignment, ConstructionError> {
    let x = Rat::from(m) / Rat::from(s);
    let n = 2 * m / s;
    let band_low =
        Rat::from(n) * Rat::from(n + 2) / (Rat::from(2) * Rat::from(n + 1));
    let band_high = Rat::from(n + 1) / Rat::from(2);
    if n < 2 || x < band_low || x >= band_high {
        return Err(ConstructionError::OutsideBand { x });
    }

    if x == band_low {
        // Closing construction: every muffin splits the same way.
        let d = s / (n + 1);
        debug_assert_eq!(s, d * (n + 1));
        debug_assert_eq!(2 * m, n * (n + 2) * d);
        let small = Rat::from(n) / (Rat::from(2) * Rat::from(n + 1));
        let large = Rat::from(n + 2) / (Rat::from(2) * Rat::from(n + 1));
        let muffins = (0..m).map(|_| vec![small.clone(), large.clone()]).collect();
        let mut students = Vec::with_capacity(s as usize);
        for _ in 0..n * d / 2 {
            students.push(vec![small.clone(); (n + 2) as usize]);
        }
        for _ in 0..(n + 2) * d / 2 {
            students.push(vec![large.clone(); n as usize]);
        }
        return Ok(PieceAssignment { muffins, students });
    }

    // Interior: n-piece students take x/n cuts; their complements, plus one
    // specially-cut muffin, feed the single (n+2)-student and the
    // (n+1)-students, whose remainders close through the general t-even DAP.
    let s_low = (n + 1) * s - 2 * m + 1; // students with n pieces
    let s_mid = 2 * m - n * s - 2; // students with n + 1 pieces
    debug_assert!(s_mid >= 2);
    let small = Rat::one() - &x / Rat::from(n); // 1 - x/n
    let per_low = &x / Rat::from(n);
    let big_small = (Rat::from(2) + Rat::one() / Rat::from(n)) * &x - Rat::from(n + 1);
    let big_large = Rat::from(n + 2) - (Rat::from(2) + Rat::one() / Rat::from(n)) * &x;

    let mut muffins: Vec<Vec<Rat>> = (0..n * s_low)
        .map(|_| vec![per_low.clone(), small.clone()])
        .collect();
    muffins.push(vec![big_small.clone(), big_large.clone()]);

    let mut students: Vec<Vec<Rat>> = Vec::with_capacity(s as usize);
    let mut top = vec![small.clone(); (n + 1) as usize];
    top.push(big_small.clone());
    students.push(top);

    // Spare small pieces spread over the (n+1)-students.
    let spares = n * ((n + 1) * s - 2 * m) - 1;
    let q = spares / s_mid;
    let r = spares - q * s_mid;
    let mut sinks = Vec::with_capacity(s_mid as usize);
    let mut prefixes: Vec<Vec<Rat>> = Vec::with_capacity(s_mid as usize);
    for i in 0..s_mid {
        // The first s_mid - 1 - r rows take q small pieces, one row takes q
        // smalls plus the large special piece, the last r rows take q + 1.
        let (extra_small, with_big) = if i < s_mid - 1 - r {
            (q, false)
        } else if i == s_mid - 1 - r {
            (q, true)
        } else {
            (q + 1, false)
        };
        let mut prefix = vec![small.clone(); extra_small as usize];
        let mut sum = &x - Rat::from(extra_small) * &small;
        if with_big {
            prefix.push(big_large.clone());
            sum = sum - &big_large;
        }
        let len = (n + 1) - extra_small - u64::from(with_big);
        sinks.push(crate::lower_bounds::SinkSpec { id: i as usize, len, sum });
        prefixes.push(prefix);
    }
    let remaining_muffins = m - n * s_low - 1;
    let gsol = crate::lower_bounds::solve_t_even_general(remaining_muffins, 2, &Rat::one(), &sinks)?;
    muffins.extend(gsol.supply.to_rows().unwrap());
    let mut fills: Vec<Option<Vec<Rat>>> = vec![None; s_mid as usize];
    for f in gsol.sinks {
        fills[f.id] = Some(f.pieces);
    }
    for (i, prefix) in prefixes.into_iter().enumerate() {
        let mut pieces = prefix;
        pieces.extend(fills[i].take().unwrap());
        students.push(pieces);
    }
    for _ in 0..s_low {
        students.push(vec![per_low.clone(); n as usize]);
    }
    Ok(PieceAssignment { muffins, students })
}
