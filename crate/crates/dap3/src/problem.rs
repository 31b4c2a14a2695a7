//! Problem definitions, validation, family addressing, and the standard-form
//! equivalence transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rat::Rat;
use crate::solution::Solution;

/// A concrete three-matrix division and assignment problem: divide each of the
/// `s_t` supply rows (t pieces, sum `x_t`) and distribute the pieces into the
/// demand rows of U (u pieces each, sum `x_u`) and V (v pieces each, sum
/// `x_v`), maximizing the smallest piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dap3 {
    pub t: u64,
    pub u: u64,
    pub v: u64,
    pub s_t: u64,
    pub s_u: u64,
    pub s_v: u64,
    pub x_t: Rat,
    pub x_u: Rat,
    pub x_v: Rat,
}

/// A violated problem requirement; `requirement` names the first check that
/// failed, in the order the definition states them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid 3M-DAP: {requirement}")]
pub struct Violation {
    pub requirement: String,
}

fn violation(requirement: impl Into<String>) -> Violation {
    Violation { requirement: requirement.into() }
}

impl Dap3 {
    pub fn n_t(&self) -> u64 {
        self.s_t * self.t
    }

    pub fn n_u(&self) -> u64 {
        self.s_u * self.u
    }

    pub fn n_v(&self) -> u64 {
        self.s_v * self.v
    }

    /// lambda = x_u - x_v
    pub fn lambda(&self) -> Rat {
        &self.x_u - &self.x_v
    }

    /// gamma = x_t / t
    pub fn gamma(&self) -> Rat {
        &self.x_t / Rat::from(self.t)
    }

    pub fn xu_over_u(&self) -> Rat {
        &self.x_u / Rat::from(self.u)
    }

    pub fn xv_over_v(&self) -> Rat {
        &self.x_v / Rat::from(self.v)
    }

    pub fn family_params(&self) -> FamilyParams {
        FamilyParams {
            t: self.t,
            u: self.u,
            v: self.v,
            lambda: self.lambda(),
            gamma: self.gamma(),
            s: Some(self.s_u + self.s_v),
        }
    }

    /// The problem kP: same columns and rowsums, k times the rows.
    pub fn scaled(&self, k: u64) -> Dap3 {
        Dap3 {
            s_t: self.s_t * k,
            s_u: self.s_u * k,
            s_v: self.s_v * k,
            ..self.clone()
        }
    }

    /// Checks every requirement of the problem definition, reporting the first
    /// violation encountered.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.t < 2 {
            return Err(violation("t >= 2"));
        }
        if self.u < 2 {
            return Err(violation("u >= 2"));
        }
        if self.v < 1 {
            return Err(violation("v >= 1"));
        }
        if self.v == 1 && self.n_v() > (self.t - 2) * self.s_t {
            return Err(violation("if v = 1 then n_v <= (t-2)*s_t"));
        }
        if self.s_t == 0 {
            return Err(violation("s_t > 0"));
        }
        if self.s_u == 0 {
            return Err(violation("s_u > 0"));
        }
        if self.n_u() + self.n_v() != self.n_t() {
            return Err(violation("n_u + n_v = n_t"));
        }
        let lhs = Rat::from(self.s_u) * &self.x_u + Rat::from(self.s_v) * &self.x_v;
        if lhs != Rat::from(self.s_t) * &self.x_t {
            return Err(violation("s_u*x_u + s_v*x_v = s_t*x_t"));
        }
        if self.xu_over_u() >= self.xv_over_v() {
            return Err(violation("x_u/u < x_v/v"));
        }
        Ok(())
    }
}

/// A 3M-DAP parameter set `(t, u, v, lambda, gamma)`, optionally pinned to a
/// family size `s = s_u + s_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub t: u64,
    pub u: u64,
    pub v: u64,
    pub lambda: Rat,
    pub gamma: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
}

/// Parameter-set classes; a set may belong to several.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamClass {
    UWeighted,
    WeaklyUWeighted,
    StronglyUWeighted,
    VWeighted,
    V1,
}

impl FamilyParams {
    pub fn new(t: u64, u: u64, v: u64, lambda: Rat, gamma: Rat) -> FamilyParams {
        FamilyParams { t, u, v, lambda, gamma, s: None }
    }

    pub fn with_s(mut self, s: u64) -> FamilyParams {
        self.s = Some(s);
        self
    }

    /// lambda < gamma(u - v) plus the basic dimension requirements.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.t < 2 {
            return Err(violation("t >= 2"));
        }
        if self.u < 2 {
            return Err(violation("u >= 2"));
        }
        if self.v < 1 {
            return Err(violation("v >= 1"));
        }
        let gap = &self.gamma * (Rat::from(self.u) - Rat::from(self.v));
        if self.lambda >= gap {
            return Err(violation("lambda < gamma*(u - v)"));
        }
        Ok(())
    }

    pub fn is_u_weighted(&self) -> bool {
        2 <= self.v && self.v <= self.u
    }

    pub fn is_weakly_u_weighted(&self) -> bool {
        self.is_u_weighted() && self.u <= (self.v - 1) * self.t
    }

    pub fn is_strongly_u_weighted(&self) -> bool {
        2 <= self.v && self.v < self.u
    }

    pub fn is_v_weighted(&self) -> bool {
        2 <= self.u && self.u < self.v
    }

    pub fn is_v1(&self) -> bool {
        self.v == 1
    }

    pub fn classes(&self) -> Vec<ParamClass> {
        let mut out = Vec::new();
        if self.is_u_weighted() {
            out.push(ParamClass::UWeighted);
        }
        if self.is_weakly_u_weighted() {
            out.push(ParamClass::WeaklyUWeighted);
        }
        if self.is_strongly_u_weighted() {
            out.push(ParamClass::StronglyUWeighted);
        }
        if self.is_v_weighted() {
            out.push(ParamClass::VWeighted);
        }
        if self.is_v1() {
            out.push(ParamClass::V1);
        }
        out
    }
}

/// A muffin problem: m muffins, s students, each student receiving `m/s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MuffinSpec {
    pub m: u64,
    pub s: u64,
}

impl MuffinSpec {
    pub fn new(m: u64, s: u64) -> MuffinSpec {
        assert!(m >= 1 && s >= 1);
        MuffinSpec { m, s }
    }

    pub fn x(&self) -> Rat {
        Rat::from(self.m) / Rat::from(self.s)
    }

    /// n = floor(2m/s)
    pub fn n(&self) -> u64 {
        2 * self.m / self.s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("muffin encoding requires m > s > 2 with 2m/s non-integral (m={m}, s={s})")]
    MuffinSpecialCase { m: u64, s: u64 },
    #[error("x = {x} outside the family interval (lambda + gamma*v, gamma*u]")]
    XOutOfRange { x: Rat },
    #[error("family member with s = {s} has non-integral counts at x = {x}")]
    NonIntegralCounts { s: u64, x: Rat },
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// Encodes a fully-constrained muffin problem as a 3M-DAP: T holds the m
/// muffins (t = 2, rowsum 1), U the students taking n+1 pieces and V the
/// students taking n pieces, all with rowsum x = m/s.
///
/// The special cases m <= s, s <= 2, and 2x integral are rejected here; the
/// muffin front door routes them before encoding.
pub fn muffin_to_dap3(spec: MuffinSpec) -> Result<Dap3, EncodingError> {
    let MuffinSpec { m, s } = spec;
    let special = EncodingError::MuffinSpecialCase { m, s };
    if !(m > s && s > 2) || (2 * m) % s == 0 {
        return Err(special);
    }
    let n = spec.n();
    let p = Dap3 {
        t: 2,
        u: n + 1,
        v: n,
        s_t: m,
        s_u: 2 * m - n * s,
        s_v: (n + 1) * s - 2 * m,
        x_t: Rat::one(),
        x_u: spec.x(),
        x_v: spec.x(),
    };
    p.validate()?;
    Ok(p)
}

fn rat_is_count(value: &Rat) -> Option<u64> {
    let int = value.to_integer()?;
    if int.is_negative() {
        return None;
    }
    u64::try_from(int).ok()
}

/// The family member of `F(t, u, v, lambda, gamma)` with `x_u = x`.
///
/// With `f.s` given, the member counts come from the closed forms for s_v,
/// s_u, s_t in terms of s and x and must all be integers. Without `f.s`, the
/// existence construction is used and the resulting `(s_t, s_u, s_v)` is
/// divided by its gcd, giving the minimal representative (any representative
/// is equivalent since scaling preserves the value).
pub fn family_member_from_x(f: &FamilyParams, x: &Rat) -> Result<Dap3, EncodingError> {
    f.validate()?;
    let (t, u, v) = (f.t, f.u, f.v);
    let lower = &f.lambda + &f.gamma * Rat::from(v);
    let upper = &f.gamma * Rat::from(u);
    if !(x > &lower && x <= &upper) {
        return Err(EncodingError::XOutOfRange { x: x.clone() });
    }
    let denom = &f.gamma * (Rat::from(u) - Rat::from(v)) - &f.lambda;

    let (s_t, s_u, s_v) = match f.s {
        Some(s) => {
            let sv = (&upper - x) * Rat::from(s) / &denom;
            let su = (x - &lower) * Rat::from(s) / &denom;
            let st = ((Rat::from(u) - Rat::from(v)) * x - &f.lambda * Rat::from(u))
                * Rat::from(s)
                / (&denom * Rat::from(t));
            match (rat_is_count(&st), rat_is_count(&su), rat_is_count(&sv)) {
                (Some(st), Some(su), Some(sv)) => (st, su, sv),
                _ => return Err(EncodingError::NonIntegralCounts { s, x: x.clone() }),
            }
        }
        None => {
            // Existence construction, scale b*d*f*t with b, d, f the
            // denominators of x, gamma, lambda; then divide by the gcd of the
            // three counts to get the minimal representative.
            let bdf: BigInt =
                x.denom() * f.gamma.denom() * f.lambda.denom();
            let bdf = Rat::from_int(bdf);
            let bdft = &bdf * Rat::from(t);
            let sv = (&upper - x) * &bdft;
            let su = (x - &lower) * &bdft;
            let st = ((Rat::from(u) - Rat::from(v)) * x - &f.lambda * Rat::from(u)) * &bdf;
            let st = rat_is_count(&st).expect("construction yields integer s_t");
            let su = rat_is_count(&su).expect("construction yields integer s_u");
            let sv = rat_is_count(&sv).expect("construction yields integer s_v");
            let g = st.gcd(&su).gcd(&sv).max(1);
            (st / g, su / g, sv / g)
        }
    };

    let p = Dap3 {
        t,
        u,
        v,
        s_t,
        s_u,
        s_v,
        x_t: &f.gamma * Rat::from(t),
        x_u: x.clone(),
        x_v: x - &f.lambda,
    };
    p.validate()?;
    Ok(p)
}

/// All members of the family with `s_u + s_v = s`, in decreasing x
/// (equivalently increasing s_v). At most s problems exist.
pub fn family_members(f: &FamilyParams, s: u64) -> Result<Vec<Dap3>, Violation> {
    f.validate()?;
    let denom = &f.gamma * (Rat::from(f.u) - Rat::from(f.v)) - &f.lambda;
    let mut out = Vec::new();
    for s_v in 0..s {
        let s_u = s - s_v;
        // s_t = (s_u*u + s_v*v) / t must be integral for a member to exist.
        let n_t = s_u * f.u + s_v * f.v;
        if !n_t.is_multiple_of(f.t) {
            continue;
        }
        let x = &f.gamma * Rat::from(f.u) - &denom * Rat::from(s_v) / Rat::from(s);
        let p = Dap3 {
            t: f.t,
            u: f.u,
            v: f.v,
            s_t: n_t / f.t,
            s_u,
            s_v,
            x_t: &f.gamma * Rat::from(f.t),
            x_u: x.clone(),
            x_v: &x - &f.lambda,
        };
        if p.validate().is_ok() {
            out.push(p);
        }
    }
    Ok(out)
}

/// An increasing linear map `y -> slope*y + shift` between equivalent
/// problems, applied cell-wise to solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivMap {
    pub slope: Rat,
    pub shift: Rat,
}

impl EquivMap {
    pub fn identity() -> EquivMap {
        EquivMap { slope: Rat::one(), shift: Rat::zero() }
    }

    pub fn apply(&self, y: &Rat) -> Rat {
        &self.slope * y + &self.shift
    }

    /// Image of a k-cell rowsum.
    pub fn apply_rowsum(&self, sum: &Rat, cells: u64) -> Rat {
        &self.slope * sum + &self.shift * Rat::from(cells)
    }

    pub fn inverse(&self) -> EquivMap {
        let slope = self.slope.recip();
        EquivMap { shift: -(&self.shift * &slope), slope }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StandardizeError {
    #[error("standard form requires a strongly u-weighted problem (2 <= v < u); got u={u}, v={v}")]
    NotStronglyUWeighted { u: u64, v: u64 },
}

/// Maps a strongly u-weighted problem to the equivalent standard-form problem
/// (lambda = 0, gamma = 1/2) and returns the equivalence function
/// `h(y) = [(u-v)y - lambda] / (2[gamma(u-v) - lambda])`.
pub fn standardize(p: &Dap3) -> Result<(Dap3, EquivMap), StandardizeError> {
    if !(2 <= p.v && p.v < p.u) {
        return Err(StandardizeError::NotStronglyUWeighted { u: p.u, v: p.v });
    }
    let uv = Rat::from(p.u) - Rat::from(p.v);
    let denom = Rat::from(2) * (p.gamma() * &uv - p.lambda());
    let map = EquivMap { slope: &uv / &denom, shift: -(p.lambda() / &denom) };
    let std = Dap3 {
        x_t: map.apply_rowsum(&p.x_t, p.t),
        x_u: map.apply_rowsum(&p.x_u, p.u),
        x_v: map.apply_rowsum(&p.x_v, p.v),
        ..p.clone()
    };
    debug_assert_eq!(std.x_t, Rat::from(p.t) / Rat::from(2));
    debug_assert_eq!(std.x_u, std.x_v);
    Ok((std, map))
}

/// Cell-wise image of a solution under an equivalence map. The map is
/// increasing, so the minimum maps to the minimum.
pub fn apply_equiv(map: &EquivMap, sol: &Solution) -> Solution {
    sol.map_cells(|v| map.apply(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    /// Decoded worked-example instance: T 7x2 rowsum 1, U 4x2 rowsum 4/5,
    /// V 1x6 rowsum 19/5.
    pub(crate) fn table2_instance() -> Dap3 {
        Dap3 {
            t: 2,
            u: 2,
            v: 6,
            s_t: 7,
            s_u: 4,
            s_v: 1,
            x_t: Rat::one(),
            x_u: r(4, 5),
            x_v: r(19, 5),
        }
    }

    #[test]
    fn validate_worked_example() {
        assert!(table2_instance().validate().is_ok());
    }

    #[test]
    fn validate_muffin_7_6_encoding() {
        let p = muffin_to_dap3(MuffinSpec::new(7, 6)).unwrap();
        assert_eq!((p.t, p.u, p.v), (2, 3, 2));
        assert_eq!((p.s_t, p.s_u, p.s_v), (7, 2, 4));
        assert_eq!(p.x_u, r(7, 6));
        assert!(p.validate().is_ok());
    }

    #[test]
    fn validate_flags_demand_order() {
        // Swapped demands keep the totals intact but flip the ratio.
        let p = Dap3 {
            t: 2,
            u: 2,
            v: 2,
            s_t: 2,
            s_u: 1,
            s_v: 1,
            x_t: Rat::one(),
            x_u: r(11, 10),
            x_v: r(9, 10),
        };
        let err = p.validate().unwrap_err();
        assert_eq!(err.requirement, "x_u/u < x_v/v");
        // Breaking only the totals is reported as the sum requirement.
        let mut q = muffin_to_dap3(MuffinSpec::new(7, 6)).unwrap();
        q.x_u = Rat::from_int(2);
        let err = q.validate().unwrap_err();
        assert_eq!(err.requirement, "s_u*x_u + s_v*x_v = s_t*x_t");
    }

    #[test]
    fn muffin_encodings() {
        let p = muffin_to_dap3(MuffinSpec::new(5, 4)).unwrap();
        assert_eq!((p.s_u, p.s_v, p.u, p.v), (2, 2, 3, 2));
        let p = muffin_to_dap3(MuffinSpec::new(5, 3)).unwrap();
        assert_eq!((p.s_u, p.s_v, p.u, p.v), (1, 2, 4, 3));
        assert!(muffin_to_dap3(MuffinSpec::new(6, 3)).is_err()); // 2x integral
        assert!(muffin_to_dap3(MuffinSpec::new(3, 5)).is_err()); // m < s
    }

    #[test]
    fn family_member_construction() {
        let f = FamilyParams::new(2, 3, 2, Rat::zero(), r(1, 2));
        let p = family_member_from_x(&f, &r(7, 6)).unwrap();
        assert_eq!((p.s_t, p.s_u, p.s_v), (7, 2, 4));
        assert_eq!(p.x_u, r(7, 6));

        // x = gamma*u is the s_v = 0 member.
        let p = family_member_from_x(&f, &r(3, 2)).unwrap();
        assert_eq!(p.s_v, 0);

        // x = 1 = lambda + gamma*v is excluded (open endpoint).
        assert!(matches!(
            family_member_from_x(&f, &Rat::one()),
            Err(EncodingError::XOutOfRange { .. })
        ));
    }

    #[test]
    fn family_member_with_fixed_s() {
        let f = FamilyParams::new(2, 3, 2, Rat::zero(), r(1, 2)).with_s(6);
        let p = family_member_from_x(&f, &r(7, 6)).unwrap();
        assert_eq!((p.s_t, p.s_u, p.s_v), (7, 2, 4));
        // s = 5 cannot host x = 7/6 (counts would be fractional).
        let f5 = FamilyParams::new(2, 3, 2, Rat::zero(), r(1, 2)).with_s(5);
        assert!(matches!(
            family_member_from_x(&f5, &r(7, 6)),
            Err(EncodingError::NonIntegralCounts { .. })
        ));
    }

    #[test]
    fn family_members_enumeration() {
        let f = FamilyParams::new(2, 3, 2, Rat::zero(), r(1, 2));
        let members = family_members(&f, 6).unwrap();
        // x decreasing, all valid, at most s of them.
        assert!(members.len() <= 6);
        for w in members.windows(2) {
            assert!(w[0].x_u > w[1].x_u);
        }
        assert!(members.iter().any(|p| p.x_u == r(7, 6)));
    }

    #[test]
    fn standardize_identity_when_already_standard() {
        let p = muffin_to_dap3(MuffinSpec::new(7, 6)).unwrap();
        let (std, map) = standardize(&p).unwrap();
        assert_eq!(std, p);
        assert_eq!(map, EquivMap::identity());
    }

    #[test]
    fn standardize_rejects_u_eq_v() {
        let p = table2_instance(); // u = 2 < v = 6
        assert!(standardize(&p).is_err());
    }

    #[test]
    fn equiv_map_round_trip() {
        let map = EquivMap { slope: r(3, 2), shift: r(-1, 4) };
        let inv = map.inverse();
        for v in [r(7, 6), Rat::zero(), r(-5, 3)] {
            assert_eq!(inv.apply(&map.apply(&v)), v);
        }
    }

    #[test]
    fn apply_equiv_carries_solutions_to_standard_form() {
        use crate::oracle::validate_solution;
        use crate::recursive::solve_recursive;
        // A strongly u-weighted family away from standard form.
        let f = FamilyParams::new(2, 3, 2, r(-1, 3), r(1, 2));
        let members = family_members(&f, 6).unwrap();
        let p = members.iter().find(|p| p.s_v > 0 && p.s_u > 1).unwrap();
        let sol = solve_recursive(p).unwrap();
        let (std_p, map) = standardize(p).unwrap();
        assert_ne!(&std_p, p);
        let mapped = apply_equiv(&map, &sol);
        validate_solution(&std_p, &mapped).unwrap();
        // Increasing map: minimum goes to minimum.
        assert_eq!(mapped.g, map.apply(&sol.g));
        // The identity map reproduces the matrices.
        let same = apply_equiv(&EquivMap::identity(), &sol);
        assert_eq!(same.t, sol.t);
        assert_eq!(same.g, sol.g);
    }

    #[test]
    fn param_classes() {
        // Order-2 muffins are strongly but not weakly u-weighted (u = 3
        // exceeds (v-1)t = 2); order-3 muffins are both.
        let muffin = FamilyParams::new(2, 3, 2, Rat::zero(), r(1, 2));
        assert!(muffin.is_u_weighted() && muffin.is_strongly_u_weighted());
        assert!(!muffin.is_weakly_u_weighted());
        let muffin3 = FamilyParams::new(2, 4, 3, Rat::zero(), r(1, 2));
        assert!(muffin3.is_weakly_u_weighted());
        let fig2 = FamilyParams::new(2, 2, 6, Rat::from_int(-3), r(1, 2));
        assert_eq!(fig2.classes(), vec![ParamClass::VWeighted]);
        let v1 = FamilyParams::new(4, 3, 1, r(-1, 2), r(1, 2));
        assert!(v1.is_v1());
    }
}
