//! Thresholds and routing: x_infinity, the x_b ladder, the classification of a
//! problem as a 0-problem (type 1 or 2) or reducible, problem depth, and the
//! value bounds tau, L(b), z(k) and the standardized-reduction map x-hat.
//!
//! Everything here is closed-form arithmetic on the family parameters
//! `(t, u, v, lambda, gamma)`; the constructive counterparts live in the
//! solver modules.

use crate::problem::{Dap3, FamilyParams};
use crate::rat::Rat;
use crate::recursive::reduce_problem;

/// The solver's verdict for an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    /// s_t <= (v-1) s_v, equivalently x <= x_infinity: value x_u/u.
    Zero1,
    /// b* = 2 s_v / r_v is a nonnegative integer, equivalently x = x_{b*}.
    Zero2 { b_star: u64 },
    /// x_b < x < x_{b-1}: reduce with b-pairs and (b-1)-pairs.
    Reducible { b: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: Kind,
    /// Number of reductions to reach a 0-problem (0 for 0-problems).
    pub depth_n: u64,
    /// r_v = 2[s_t - (v-1) s_v]; positive iff the problem is not of type 1.
    pub r_v: i64,
    /// b* = 2 s_v / r_v when r_v > 0.
    pub b_star: Option<Rat>,
}

impl Kind {
    pub fn label(&self) -> &'static str {
        match self {
            Kind::Zero1 => "zero1",
            Kind::Zero2 { .. } => "zero2",
            Kind::Reducible { .. } => "reducible",
        }
    }

    /// The b column reported by scans: the reduction size for reducible
    /// problems, b* for type-2 0-problems, 0 for type-1.
    pub fn b_value(&self) -> u64 {
        match *self {
            Kind::Zero1 => 0,
            Kind::Zero2 { b_star } => b_star,
            Kind::Reducible { b } => b,
        }
    }
}

/// x_infinity = [lambda + gamma (v-1) t] u / [(v-1) t + u - v], the threshold
/// below which a family member is a 0-problem of type 1.
pub fn x_infinity(f: &FamilyParams) -> Rat {
    let (t, u, v) = (Rat::from(f.t), Rat::from(f.u), Rat::from(f.v));
    let v1t = (&v - Rat::one()) * &t;
    (&f.lambda + &f.gamma * &v1t) * &u / (v1t + &u - &v)
}

/// x_b = {[lambda + gamma (v-1) t] u b + gamma t u} / {[(v-1) t + u - v] b + t};
/// x_0 = gamma u, strictly decreasing in b with limit x_infinity.
pub fn x_threshold(f: &FamilyParams, b: u64) -> Rat {
    let (t, u, v) = (Rat::from(f.t), Rat::from(f.u), Rat::from(f.v));
    let b = Rat::from(b);
    let v1t = (&v - Rat::one()) * &t;
    let num = (&f.lambda + &f.gamma * &v1t) * &u * &b + &f.gamma * &t * &u;
    let den = (v1t + &u - &v) * &b + &t;
    num / den
}

/// tau = x_infinity / u, the limiting lower bound on g.
pub fn tau(f: &FamilyParams) -> Rat {
    x_infinity(f) / Rat::from(f.u)
}

/// L(b) = gamma - b (x_{b-1} - lambda - gamma v) / ([(v-1) t - v] b + t), the
/// limit of g(P(x)) as x approaches x_{b-1} from below (b >= 1).
pub fn bound_l(f: &FamilyParams, b: u64) -> Rat {
    assert!(b >= 1, "L(b) requires b >= 1");
    let d = (f.v as i64 - 1) * f.t as i64 - f.v as i64;
    let den = Rat::from_int(d * b as i64 + f.t as i64);
    let num = x_threshold(f, b - 1) - &f.lambda - &f.gamma * Rat::from(f.v);
    &f.gamma - Rat::from(b) * num / den
}

/// z(k) = {[(v-1)k + 1] x_t - k x_v} / {[(v-1)k + 1] t - k v}, the average
/// U-element value in a k-pair; strictly decreasing in k, z(0) = x_t/t.
pub fn pair_average_z(p: &Dap3, k: u64) -> Result<Rat, ZError> {
    let a = Rat::from((p.v - 1) * k + 1);
    let den = &a * Rat::from(p.t) - Rat::from(k * p.v);
    if den <= Rat::zero() {
        return Err(ZError::NonPositiveDenominator { k });
    }
    Ok((a * &p.x_t - Rat::from(k) * &p.x_v) / den)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZError {
    #[error("z({k}) undefined: denominator [(v-1)k+1]t - kv is not positive")]
    NonPositiveDenominator { k: u64 },
}

/// x-hat(x) = (t/2) u (x - lambda - gamma v) / {[(v-1)t + u - v] (x - x_inf)}:
/// the x_u of the standardized reduced problem, independent of b. Decreases
/// from +infinity to t/2 as x runs from x_infinity up to gamma u.
pub fn xhat(f: &FamilyParams, x: &Rat) -> Result<Rat, XhatError> {
    let xinf = x_infinity(f);
    if x <= &xinf {
        return Err(XhatError::AtOrBelowXInfinity { x: x.clone() });
    }
    let (t, u, v) = (Rat::from(f.t), Rat::from(f.u), Rat::from(f.v));
    let v1t = (&v - Rat::one()) * &t;
    let num = &t / Rat::from(2) * &u * (x - &f.lambda - &f.gamma * &v);
    let den = (v1t + &u - &v) * (x - xinf);
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XhatError {
    #[error("x-hat diverges at or below x_infinity (x = {x})")]
    AtOrBelowXInfinity { x: Rat },
}

/// r_v = 2[s_t - (v-1) s_v] as a signed integer.
pub fn r_v(p: &Dap3) -> i64 {
    2 * (p.s_t as i64 - (p.v as i64 - 1) * p.s_v as i64)
}

/// The routing verdict alone (no depth computation).
pub fn kind(p: &Dap3) -> Kind {
    let rv = r_v(p);
    if rv <= 0 {
        return Kind::Zero1;
    }
    // b* = 2 s_v / r_v = s_v / [s_t - (v-1) s_v]
    let den = rv as u64 / 2;
    if p.s_v.is_multiple_of(den) {
        Kind::Zero2 { b_star: p.s_v / den }
    } else {
        // Algorithm 8's assignment b = ceil(s_v / [s_t - (v-1) s_v]), equal to
        // ceil(2 s_v / r_v) since r_v = 2 [s_t - (v-1) s_v].
        Kind::Reducible { b: p.s_v / den + 1 }
    }
}

/// Classifies an instance and computes its depth by walking the reduction
/// chain down to a 0-problem.
pub fn classify(p: &Dap3) -> Classification {
    let rv = r_v(p);
    let b_star = (rv > 0).then(|| Rat::from(2 * p.s_v) / Rat::from_int(rv));
    Classification { depth_n: depth(p), kind: kind(p), r_v: rv, b_star }
}

/// The number of reductions Algorithm 8 performs before reaching a 0-problem.
pub fn depth(p: &Dap3) -> u64 {
    let mut current = p.clone();
    let mut n = 0;
    loop {
        match kind(&current) {
            Kind::Zero1 | Kind::Zero2 { .. } => return n,
            Kind::Reducible { .. } => {
                let (child, _) = reduce_problem(&current).expect("reducible problem reduces");
                current = child;
                n += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{muffin_to_dap3, MuffinSpec};

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn muffin_family(n: u64) -> FamilyParams {
        FamilyParams::new(2, n + 1, n, Rat::zero(), r(1, 2))
    }

    fn table2_instance() -> Dap3 {
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
    fn x_infinity_closed_forms() {
        // Muffin family of order n: (n^2 - 1) / (2n - 1).
        for n in 2..10u64 {
            let expect = Rat::from(n * n - 1) / Rat::from(2 * n - 1);
            assert_eq!(x_infinity(&muffin_family(n)), expect);
        }
        assert_eq!(x_infinity(&muffin_family(2)), Rat::one());
        assert_eq!(x_infinity(&muffin_family(3)), r(8, 5));
    }

    #[test]
    fn x_threshold_values() {
        let n2 = muffin_family(2);
        for b in 0..20u64 {
            let expect = Rat::from(3 * b + 3) / Rat::from(3 * b + 2);
            assert_eq!(x_threshold(&n2, b), expect);
        }
        assert_eq!(x_threshold(&muffin_family(3), 1), r(12, 7));
        // x_0 = gamma * u for arbitrary parameters.
        let f = FamilyParams::new(3, 5, 2, r(-1, 3), r(2, 7));
        assert_eq!(x_threshold(&f, 0), &f.gamma * Rat::from(f.u));
    }

    #[test]
    fn x_threshold_decreasing_toward_x_infinity() {
        for f in [muffin_family(2), muffin_family(5), FamilyParams::new(2, 2, 6, Rat::from_int(-3), r(1, 2))] {
            let xinf = x_infinity(&f);
            let mut prev = x_threshold(&f, 0);
            for b in 1..30 {
                let xb = x_threshold(&f, b);
                assert!(xb < prev, "x_b not decreasing at b={b}");
                assert!(xb > xinf, "x_b must stay above x_infinity");
                prev = xb;
            }
        }
    }

    #[test]
    fn classify_examples() {
        let p = muffin_to_dap3(MuffinSpec::new(6, 5)).unwrap();
        let c = classify(&p);
        assert_eq!(c.kind, Kind::Zero2 { b_star: 1 });
        assert_eq!(c.r_v, 6);
        assert_eq!(c.depth_n, 0);

        let p = muffin_to_dap3(MuffinSpec::new(7, 6)).unwrap();
        let c = classify(&p);
        assert_eq!(c.kind, Kind::Reducible { b: 2 });
        assert_eq!(c.b_star, Some(r(4, 3)));
        assert_eq!(c.depth_n, 1);

        // Doubly-reduced worked-example problem: s_t = 1 <= (v-1) s_v.
        let p2 = Dap3 {
            t: 6,
            u: 2,
            v: 2,
            s_t: 1,
            s_u: 1,
            s_v: 2,
            x_t: r(11, 5),
            x_u: r(3, 5),
            x_v: r(4, 5),
        };
        assert!(p2.validate().is_ok());
        assert_eq!(classify(&p2).kind, Kind::Zero1);
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&muffin_to_dap3(MuffinSpec::new(6, 5)).unwrap()), 0);
        assert_eq!(depth(&muffin_to_dap3(MuffinSpec::new(7, 6)).unwrap()), 1);
        assert_eq!(depth(&muffin_to_dap3(MuffinSpec::new(5, 4)).unwrap()), 1);
        assert_eq!(depth(&table2_instance()), 2);
    }

    #[test]
    fn bound_l_values() {
        assert_eq!(bound_l(&muffin_family(2), 1), r(1, 4));
        assert_eq!(bound_l(&muffin_family(3), 1), r(1, 3));
        // L(b) brackets tau for large b: |L(B) - tau| shrinks monotonically on
        // a tail, checked at a finite depth.
        for f in [muffin_family(3), muffin_family(2)] {
            let target = tau(&f);
            let gap = |b: u64| (bound_l(&f, b) - &target).abs();
            assert!(gap(64) < gap(8));
            assert!(gap(512) < r(1, 100));
        }
    }

    #[test]
    fn pair_average_z_values() {
        let p = muffin_to_dap3(MuffinSpec::new(7, 6)).unwrap();
        assert_eq!(pair_average_z(&p, 2).unwrap(), r(1, 3));
        assert_eq!(pair_average_z(&p, 0).unwrap(), &p.x_t / Rat::from(p.t));
        // Strictly decreasing in k.
        let mut prev = pair_average_z(&p, 0).unwrap();
        for k in 1..12 {
            let zk = pair_average_z(&p, k).unwrap();
            assert!(zk < prev);
            prev = zk;
        }
        // Worked example: the optimal value 3/10 is the k -> infinity limit
        // [(v-1)x_t - x_v]/[(v-1)t - v] of z, and equals z(1) of the reduced
        // problem.
        let p = table2_instance();
        let limit = (Rat::from(p.v - 1) * &p.x_t - &p.x_v)
            / Rat::from_int((p.v as i64 - 1) * p.t as i64 - p.v as i64);
        assert_eq!(limit, r(3, 10));
        let (child, _) = reduce_problem(&p).unwrap();
        assert_eq!(pair_average_z(&child, 1).unwrap(), r(3, 10));
        // v = 1 makes the denominator vanish at k = t.
        let v1 = Dap3 {
            t: 4,
            u: 2,
            v: 1,
            s_t: 2,
            s_u: 3,
            s_v: 2,
            x_t: Rat::from_int(2),
            x_u: r(2, 3),
            x_v: Rat::one(),
        };
        assert!(matches!(
            pair_average_z(&v1, 4),
            Err(ZError::NonPositiveDenominator { k: 4 })
        ));
    }

    #[test]
    fn xhat_values() {
        let f = muffin_family(3);
        // x = x_b maps to u'(b)/2; for n = 3, u'(1) = 3.
        assert_eq!(xhat(&f, &x_threshold(&f, 1)).unwrap(), r(3, 2));
        // x = gamma u maps to t/2.
        assert_eq!(xhat(&f, &r(2, 1)).unwrap(), Rat::one());
        assert!(xhat(&f, &x_infinity(&f)).is_err());
    }
}
