//! The optimal solvers: direct constructions for both kinds of 0-problem,
//! the reduced-problem constructor, the main recursive algorithm, and the
//! Huddleston variant (identical values, different routing).

use crate::classify::{kind, r_v, Kind};
use crate::lower_bounds::{solve_t_even, solve_u_eq_v_plus_1, LowerBoundError};
use crate::pair::{complete_pair, pair_shape, BPair, PairError};
use crate::problem::{Dap3, Violation};
use crate::rat::{Rat, RatMatrix};
use crate::solution::{Origin, ReductionStep, Solution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("not a 0-problem of type 1: s_t > (v-1) s_v")]
    NotZeroType1,
    #[error("not a 0-problem of type 2: b* = 2 s_v / r_v is not a nonnegative integer")]
    NotZeroType2,
    #[error("problem is a 0-problem; only problems with x_b < x < x_{{b-1}} reduce")]
    NotReducible,
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    LowerBound(#[from] LowerBoundError),
}

fn fill_cells(m: &mut RatMatrix, row: usize, cells: &[Rat]) {
    for c in cells {
        m.fill_next(row, c.clone()).expect("room for sub-solution cells");
    }
}

/// Direct solver for 0-problems of type 1 (s_t <= (v-1) s_v): every U element
/// is x_u/u, and the leftover of T is finished so that every V element
/// strictly exceeds x_u/u. The value is exactly x_u/u.
pub fn solve_zero_type1(p: &Dap3) -> Result<Solution, SolveError> {
    p.validate()?;
    if r_v(p) > 0 {
        return Err(SolveError::NotZeroType1);
    }
    let seed = p.xu_over_u();
    let (s_t, t) = (p.s_t as usize, p.t as usize);
    let (s_u, u) = (p.s_u as usize, p.u as usize);
    let (s_v, v) = (p.s_v as usize, p.v as usize);
    let mut tm = RatMatrix::new(s_t, t);
    let mut um = RatMatrix::new(s_u, u);
    let mut vm = RatMatrix::new(s_v, v);
    for r in 0..s_u {
        for c in 0..u {
            um.set(r, c, seed.clone());
        }
    }
    let q_t = (p.n_u() / p.s_t) as usize;
    let r_t = (p.n_u() % p.s_t) as usize;

    if r_t == 0 {
        let w = p.xv_over_v();
        for r in 0..s_v {
            for c in 0..v {
                vm.set(r, c, w.clone());
            }
        }
        for r in 0..s_t {
            for c in 0..t {
                tm.set(r, c, if c < q_t { seed.clone() } else { w.clone() });
            }
        }
        let t_origin = origin_prefix_rows(s_t, q_t, t);
        return Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap());
    }

    if q_t < t - 2 {
        // r_t rows take q_t + 1 seeds (their leftovers are V'), the rest take
        // q_t (leftovers U'); V itself becomes the supply of the subproblem.
        for r in 0..s_t {
            let count = if r < r_t { q_t + 1 } else { q_t };
            for c in 0..count {
                tm.set(r, c, seed.clone());
            }
        }
        let sub = Dap3 {
            t: p.v,
            u: p.t - q_t as u64,
            v: p.t - q_t as u64 - 1,
            s_t: p.s_v,
            s_u: p.s_t - r_t as u64,
            s_v: r_t as u64,
            x_t: p.x_v.clone(),
            x_u: &p.x_t - Rat::from(q_t as u64) * &seed,
            x_v: &p.x_t - Rat::from(q_t as u64 + 1) * &seed,
        };
        // The strict variant: the bound argument needs f(sub) > x_u' - x_v'.
        let gsol = solve_u_eq_v_plus_1(&sub, true)?;
        for r in 0..s_v {
            fill_cells(&mut vm, r, &gsol.t.row(r).unwrap());
        }
        for r in 0..sub.s_u as usize {
            fill_cells(&mut tm, r_t + r, &gsol.u.row(r).unwrap());
        }
        for r in 0..r_t {
            fill_cells(&mut tm, r, &gsol.v.row(r).unwrap());
        }
        let mut t_origin = Vec::with_capacity(s_t);
        for r in 0..s_t {
            let seeds = if r < r_t { q_t + 1 } else { q_t };
            t_origin.push(origin_prefix(seeds, t));
        }
        return Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap());
    }

    // q_t = t - 2: the r_t heavy rows close with rho; the rho values spread
    // over V, and the 2-column leftover of T resolves by the t-even builder.
    let rho = &p.x_t - Rat::from(t as u64 - 1) * &seed;
    for r in 0..r_t {
        for c in 0..t - 1 {
            tm.set(r, c, seed.clone());
        }
        tm.set(r, t - 1, rho.clone());
    }
    for r in r_t..s_t {
        for c in 0..t - 2 {
            tm.set(r, c, seed.clone());
        }
    }
    let q_v = r_t / s_v;
    let r_vl = r_t % s_v;
    let x_t_prime = &p.x_t - Rat::from(t as u64 - 2) * &seed; // = rho + seed

    if r_vl == 0 {
        let sigma = &x_t_prime / Rat::from(2);
        for r in r_t..s_t {
            tm.set(r, t - 2, sigma.clone());
            tm.set(r, t - 1, sigma.clone());
        }
        for r in 0..s_v {
            for c in 0..v {
                vm.set(r, c, if c < q_v { rho.clone() } else { sigma.clone() });
            }
        }
    } else {
        for r in 0..s_v {
            let count = if r < r_vl { q_v + 1 } else { q_v };
            for c in 0..count {
                vm.set(r, c, rho.clone());
            }
        }
        let sub = Dap3 {
            t: 2,
            u: v as u64 - q_v as u64 - 1,
            v: v as u64 - q_v as u64,
            s_t: (s_t - r_t) as u64,
            s_u: r_vl as u64,
            s_v: (s_v - r_vl) as u64,
            x_t: x_t_prime,
            x_u: &p.x_v - Rat::from(q_v as u64 + 1) * &rho,
            x_v: &p.x_v - Rat::from(q_v as u64) * &rho,
        };
        let gsol = solve_t_even(&sub)?;
        for r in 0..s_t - r_t {
            fill_cells(&mut tm, r_t + r, &gsol.t.row(r).unwrap());
        }
        for r in 0..r_vl {
            fill_cells(&mut vm, r, &gsol.u.row(r).unwrap());
        }
        for r in 0..s_v - r_vl {
            fill_cells(&mut vm, r_vl + r, &gsol.v.row(r).unwrap());
        }
    }
    let mut t_origin = Vec::with_capacity(s_t);
    for r in 0..s_t {
        let seeds = if r < r_t { t - 1 } else { t - 2 };
        t_origin.push(origin_prefix(seeds, t));
    }
    Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap())
}

fn origin_prefix(from_u: usize, width: usize) -> Vec<Origin> {
    let mut row = vec![Origin::FromU; from_u];
    row.extend(std::iter::repeat_n(Origin::FromV, width - from_u));
    row
}

fn origin_prefix_rows(rows: usize, from_u: usize, width: usize) -> Vec<Vec<Origin>> {
    (0..rows).map(|_| origin_prefix(from_u, width)).collect()
}

/// Direct solver for 0-problems of type 2 (r_v > 0, b* = 2 s_v / r_v a
/// nonnegative integer): one completed b*-pair, inserted r_v/2 times. The
/// degenerate b* = 0 member (s_v = 0) is the uniform x_u/u fill.
pub fn solve_zero_type2(p: &Dap3) -> Result<Solution, SolveError> {
    p.validate()?;
    let b_star = match kind(p) {
        Kind::Zero2 { b_star } => b_star,
        _ => return Err(SolveError::NotZeroType2),
    };
    let seed = p.xu_over_u();
    let copies = (r_v(p) / 2) as usize;
    let u_len = BPair::u_len(p.t, p.v, b_star) as usize;
    let u_in = vec![seed.clone(); u_len];
    let pair = complete_pair(b_star, &p.x_t, &p.x_v, p.t, p.v, &u_in)?;

    let (s_u, u) = (p.s_u as usize, p.u as usize);
    let mut um = RatMatrix::new(s_u, u);
    for r in 0..s_u {
        for c in 0..u {
            um.set(r, c, seed.clone());
        }
    }
    let mut tm = RatMatrix::new(p.s_t as usize, p.t as usize);
    let mut vm = RatMatrix::new(p.s_v as usize, p.v as usize);
    let mut t_origin = Vec::with_capacity(p.s_t as usize);
    let origins = pair.a_origins();
    let mut t_row = 0;
    let mut v_row = 0;
    for _ in 0..copies {
        for r in 0..pair.a.rows() {
            tm.adopt_row(t_row, pair.a.row(r).unwrap());
            t_origin.push(origins[r].clone());
            t_row += 1;
        }
        for r in 0..pair.b_matrix.rows() {
            vm.adopt_row(v_row, pair.b_matrix.row(r).unwrap());
            v_row += 1;
        }
    }
    Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap())
}

/// The reduced problem: T' = U, one U' row per b-pair, one V' row per
/// (b-1)-pair. Requires x_b < x < x_{b-1} (the reducible band).
pub fn reduce_problem(p: &Dap3) -> Result<(Dap3, ReductionStep), SolveError> {
    p.validate()?;
    match kind(p) {
        Kind::Reducible { b } => Ok(reduce_with_b(p, b)),
        _ => Err(SolveError::NotReducible),
    }
}

/// Reduction arithmetic shared by Algorithm 8 (b from the ceiling rule) and
/// the Huddleston variant (also at b = b*, where s_v' = 0).
fn reduce_with_b(p: &Dap3, b: u64) -> (Dap3, ReductionStep) {
    let rv_half = (r_v(p) / 2) as u64;
    let shape = pair_shape(p.t, p.v, b);
    let child = Dap3 {
        t: p.u,
        u: shape.u_prime,
        v: shape.v_prime,
        s_t: p.s_u,
        s_u: p.s_v - (b - 1) * rv_half,
        s_v: b * rv_half - p.s_v,
        x_t: p.x_u.clone(),
        x_u: shape.xu_prime(&p.x_t, &p.x_v),
        x_v: shape.xv_prime(&p.x_t, &p.x_v),
    };
    debug_assert!(child.validate().is_ok(), "reduced problem is a 3M-DAP: {child:?}");
    debug_assert!(child.n_t() < p.n_t());
    let step = ReductionStep { b, shape, child: child.clone() };
    (child, step)
}

/// Rebuilds the parent solution from the child solution: the parent's U is the
/// child's T, each U' row completes a b-pair, each V' row completes a
/// (b-1)-pair (or is inserted into T verbatim when b = 1).
fn reconstruct(p: &Dap3, step: &ReductionStep, child: Solution) -> Result<Solution, SolveError> {
    let b = step.b;
    let mut tm = RatMatrix::new(p.s_t as usize, p.t as usize);
    let mut vm = RatMatrix::new(p.s_v as usize, p.v as usize);
    let mut t_origin: Vec<Vec<Origin>> = Vec::with_capacity(p.s_t as usize);
    let mut t_row = 0;
    let mut v_row = 0;
    let place_pair = |pair: &BPair, tm: &mut RatMatrix, vm: &mut RatMatrix,
                          t_origin: &mut Vec<Vec<Origin>>,
                          t_row: &mut usize, v_row: &mut usize| {
        let origins = pair.a_origins();
        for r in 0..pair.a.rows() {
            tm.adopt_row(*t_row, pair.a.row(r).unwrap());
            t_origin.push(origins[r].clone());
            *t_row += 1;
        }
        for r in 0..pair.b_matrix.rows() {
            vm.adopt_row(*v_row, pair.b_matrix.row(r).unwrap());
            *v_row += 1;
        }
    };

    for i in 0..child.u.rows() {
        let u_in = child.u.row(i).unwrap();
        let pair = complete_pair(b, &p.x_t, &p.x_v, p.t, p.v, &u_in)?;
        place_pair(&pair, &mut tm, &mut vm, &mut t_origin, &mut t_row, &mut v_row);
    }
    if b == 1 {
        // (b-1)-pairs are 0-pairs: the V' rows are T rows outright, made of
        // U-elements only.
        for j in 0..child.v.rows() {
            for cell in child.v.row(j).unwrap() {
                tm.fill_next(t_row, cell).unwrap();
            }
            t_origin.push(vec![Origin::FromU; p.t as usize]);
            t_row += 1;
        }
    } else {
        for j in 0..child.v.rows() {
            let u_in = child.v.row(j).unwrap();
            let pair = complete_pair(b - 1, &p.x_t, &p.x_v, p.t, p.v, &u_in)?;
            place_pair(&pair, &mut tm, &mut vm, &mut t_origin, &mut t_row, &mut v_row);
        }
    }

    let mut trace = vec![step.clone()];
    trace.extend(child.trace);
    let um = child.t;
    Ok(Solution::assemble(tm, um, vm, t_origin, trace).unwrap())
}

/// The main recursive algorithm: solve 0-problems directly, otherwise reduce,
/// solve the reduced problem, and complete one pair per U'/V' row. Produces an
/// optimal solution; the trace records each reduction.
pub fn solve_recursive(p: &Dap3) -> Result<Solution, SolveError> {
    p.validate()?;
    // Descend iteratively; the chain is short (O(log log n)) but an explicit
    // stack keeps the trace first-class.
    let mut chain: Vec<(Dap3, ReductionStep)> = Vec::new();
    let mut current = p.clone();
    let mut sol = loop {
        match kind(&current) {
            Kind::Zero1 => break solve_zero_type1(&current)?,
            Kind::Zero2 { .. } => break solve_zero_type2(&current)?,
            Kind::Reducible { b } => {
                let (child, step) = reduce_with_b(&current, b);
                let parent = std::mem::replace(&mut current, child);
                chain.push((parent, step));
            }
        }
    };
    while let Some((parent, step)) = chain.pop() {
        sol = reconstruct(&parent, &step, sol)?;
    }
    Ok(sol)
}

/// Scott Huddleston's variant: type-1 subproblems recurse into the solver
/// itself instead of the bound builders, and type-2 0-problems reduce through
/// b = b* to a child with s_v' = 0, whose solution is the uniform fill. The
/// value always matches `solve_recursive`.
pub fn solve_huddleston(p: &Dap3) -> Result<Solution, SolveError> {
    p.validate()?;
    let seed = p.xu_over_u();
    let (s_t, t) = (p.s_t as usize, p.t as usize);
    let (s_u, u) = (p.s_u as usize, p.u as usize);
    let (s_v, v) = (p.s_v as usize, p.v as usize);

    if p.s_v == 0 {
        // x = gamma u: everything is x_u/u = x_t/t.
        let mut tm = RatMatrix::new(s_t, t);
        let mut um = RatMatrix::new(s_u, u);
        for r in 0..s_t {
            for c in 0..t {
                tm.set(r, c, seed.clone());
            }
        }
        for r in 0..s_u {
            for c in 0..u {
                um.set(r, c, seed.clone());
            }
        }
        let vm = RatMatrix::new(0, v);
        let t_origin = vec![vec![Origin::FromU; t]; s_t];
        return Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap());
    }

    if r_v(p) <= 0 {
        // Type-1 territory; the leftover problem recurses into this solver.
        let mut tm = RatMatrix::new(s_t, t);
        let mut um = RatMatrix::new(s_u, u);
        let mut vm = RatMatrix::new(s_v, v);
        for r in 0..s_u {
            for c in 0..u {
                um.set(r, c, seed.clone());
            }
        }
        let q_t = (p.n_u() / p.s_t) as usize;
        let r_t = (p.n_u() % p.s_t) as usize;
        if r_t == 0 {
            let w = p.xv_over_v();
            for r in 0..s_v {
                for c in 0..v {
                    vm.set(r, c, w.clone());
                }
            }
            for r in 0..s_t {
                for c in 0..t {
                    tm.set(r, c, if c < q_t { seed.clone() } else { w.clone() });
                }
            }
            let t_origin = origin_prefix_rows(s_t, q_t, t);
            return Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap());
        }
        for r in 0..s_t {
            let count = if r < r_t { q_t + 1 } else { q_t };
            for c in 0..count {
                tm.set(r, c, seed.clone());
            }
        }
        let sub = Dap3 {
            t: p.v,
            u: p.t - q_t as u64,
            v: p.t - q_t as u64 - 1,
            s_t: p.s_v,
            s_u: p.s_t - r_t as u64,
            s_v: r_t as u64,
            x_t: p.x_v.clone(),
            x_u: &p.x_t - Rat::from(q_t as u64) * &seed,
            x_v: &p.x_t - Rat::from(q_t as u64 + 1) * &seed,
        };
        let gsol = solve_huddleston(&sub)?;
        for r in 0..s_v {
            fill_cells(&mut vm, r, &gsol.t.row(r).unwrap());
        }
        for r in 0..sub.s_u as usize {
            fill_cells(&mut tm, r_t + r, &gsol.u.row(r).unwrap());
        }
        for r in 0..r_t {
            fill_cells(&mut tm, r, &gsol.v.row(r).unwrap());
        }
        let mut t_origin = Vec::with_capacity(s_t);
        for r in 0..s_t {
            let seeds = if r < r_t { q_t + 1 } else { q_t };
            t_origin.push(origin_prefix(seeds, t));
        }
        return Ok(Solution::assemble(tm, um, vm, t_origin, Vec::new()).unwrap());
    }

    // Reducible or type-2: reduce with the ceiling rule (which lands exactly
    // on b* at a type-2 0-problem) and recurse.
    let rv_half = (r_v(p) / 2) as u64;
    let b = p.s_v.div_ceil(rv_half);
    let (child, step) = reduce_with_b(p, b);
    let child_sol = solve_huddleston(&child)?;
    reconstruct(p, &step, child_sol)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum N2Error {
    #[error("solution shape is not an order-2 fully-constrained muffin solution")]
    NotOrder2,
    #[error("cell provenance is not tracked on this solution")]
    NoOrigins,
    #[error("a T row contains two U-elements; the alternative reduction needs b >= 2")]
    TwoUElementsInRow,
    #[error("x = {x} is not below x_1 = 6/5; the alternative reduction needs b >= 2")]
    BandTooHigh { x: Rat },
    #[error("expansion requires d = m' - s' (got d = {given}, m' - s' = {actual})")]
    WrongD { given: u64, actual: u64 },
    #[error("expansion requires nonnegative U elements")]
    NegativeInput,
}

fn muffin_shape(sol: &Solution) -> Result<(u64, u64), N2Error> {
    let m = sol.t.rows() as u64;
    let s = (sol.u.rows() + sol.v.rows()) as u64;
    if sol.t.cols() != 2 || sol.u.cols() != 3 || sol.v.cols() != 2 || m == 0 || s == 0 {
        return Err(N2Error::NotOrder2);
    }
    Ok((m, s))
}

/// The alternative reduction of an order-2 muffin solution with b >= 2: each
/// V row flips into a supply row, each all-V supply row flips into a V' row,
/// U carries over, and the standardizing map h(y) = (s y - d)/s' lands on the
/// (m - 3d, s - 3d) problem. Values map by Y' = (s Y - d)/s'.
pub fn n2_alt_reduce(sol: &Solution) -> Result<Solution, N2Error> {
    let (m, s) = muffin_shape(sol)?;
    let x = Rat::from(m) / Rat::from(s);
    if x >= Rat::new(6, 5) {
        return Err(N2Error::BandTooHigh { x });
    }
    if sol.t_origin.len() != sol.t.rows() {
        return Err(N2Error::NoOrigins);
    }
    let d = m - s;
    // Split T into rows carrying one U-element and rows carrying none.
    let mut t2_rows: Vec<Vec<Rat>> = Vec::new();
    for (r, origins) in sol.t_origin.iter().enumerate() {
        let u_count = origins.iter().filter(|o| **o == Origin::FromU).count();
        match u_count {
            0 => t2_rows.push(sol.t.row(r).unwrap()),
            1 => {}
            _ => return Err(N2Error::TwoUElementsInRow),
        }
    }

    let h = |y: &Rat| -> Rat {
        (Rat::from(s) * y - Rat::from(d)) / Rat::from(s - 3 * d)
    };
    let map_rows = |rows: Vec<Vec<Rat>>| -> RatMatrix {
        RatMatrix::from_rows(
            rows.into_iter()
                .map(|row| row.iter().map(h).collect())
                .collect(),
        )
    };

    let t_new: Vec<Vec<Rat>> = (0..sol.v.rows())
        .map(|r| {
            sol.v
                .row(r)
                .unwrap()
                .into_iter()
                .map(|z| Rat::one() - z)
                .collect()
        })
        .collect();
    let v_new: Vec<Vec<Rat>> = t2_rows
        .iter()
        .map(|row| row.iter().map(|c| Rat::one() - c).collect())
        .collect();
    let u_new = sol.u.to_rows().unwrap();

    // Tag the new supply rows: a V-cell hosted in a two-V supply row flips to
    // a V'-element, one hosted next to a U-element flips to a U'-element.
    // Within equal values the split is forced at multiset level.
    let mut t2_counts: std::collections::BTreeMap<Rat, u64> = std::collections::BTreeMap::new();
    for row in &t2_rows {
        for c in row {
            *t2_counts.entry(c.clone()).or_insert(0) += 1;
        }
    }
    let mut t_origin = Vec::with_capacity(t_new.len());
    for r in 0..sol.v.rows() {
        let mut row_origin = Vec::with_capacity(2);
        for z in sol.v.row(r).unwrap() {
            let hosted_in_t2 = match t2_counts.get_mut(&z) {
                Some(count) if *count > 0 => {
                    *count -= 1;
                    true
                }
                _ => false,
            };
            row_origin.push(if hosted_in_t2 { Origin::FromV } else { Origin::FromU });
        }
        t_origin.push(row_origin);
    }

    let t = map_rows(t_new);
    let g = t.min_cell().expect("nonempty supply");
    Ok(Solution {
        t,
        u: map_rows(u_new),
        v: map_rows(v_new),
        g,
        t_origin,
        trace: Vec::new(),
    })
}

/// The equivalent expansion: from a solution of the (m', s') muffin problem
/// (with d = m' - s') to one of (m' + 3d, s' + 3d). Values map by
/// Z = (s' Z' + d)/s. Requires every U element nonnegative.
pub fn n2_expand(sol: &Solution, d: u64) -> Result<Solution, N2Error> {
    let (m_small, s_small) = muffin_shape(sol)?;
    if d == 0 {
        return Ok(sol.clone());
    }
    if m_small - s_small != d {
        return Err(N2Error::WrongD { given: d, actual: m_small - s_small });
    }
    if sol.u.cells().any(|c| c.is_negative()) {
        return Err(N2Error::NegativeInput);
    }
    let s = s_small + 3 * d;
    let h_inv = |z: &Rat| -> Rat {
        (Rat::from(s_small) * z + Rat::from(d)) / Rat::from(s)
    };

    // Pre-images under the standardization: these are the P' matrices.
    let map = |mat: &RatMatrix| -> Vec<Vec<Rat>> {
        mat.to_rows()
            .unwrap()
            .into_iter()
            .map(|row| row.iter().map(h_inv).collect())
            .collect()
    };
    let t_mid = map(&sol.t);
    let u_mid = map(&sol.u);
    let v_mid = map(&sol.v);

    let mut t_rows: Vec<Vec<Rat>> = Vec::new();
    let mut t_origin: Vec<Vec<Origin>> = Vec::new();
    for row in &u_mid {
        for y in row {
            t_rows.push(vec![y.clone(), Rat::one() - y]);
            t_origin.push(vec![Origin::FromU, Origin::FromV]);
        }
    }
    for row in &v_mid {
        t_rows.push(row.iter().map(|y| Rat::one() - y).collect());
        t_origin.push(vec![Origin::FromV, Origin::FromV]);
    }
    let v_rows: Vec<Vec<Rat>> = t_mid
        .iter()
        .map(|row| row.iter().map(|y| Rat::one() - y).collect())
        .collect();

    let t = RatMatrix::from_rows(t_rows);
    let g = t.min_cell().expect("nonempty supply");
    Ok(Solution {
        t,
        u: RatMatrix::from_rows(u_mid),
        v: RatMatrix::from_rows(v_rows),
        g,
        t_origin,
        trace: Vec::new(),
    })
}
