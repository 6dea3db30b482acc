//! Certified pass/fail reports for the height inequalities.
//!
//! Every comparison is made on outward-rounded intervals: PASS means the
//! relation holds for all points of both intervals, FAIL means it fails for
//! all points, and anything in between is INDETERMINATE. Bounds that are
//! trivially true (negative right-hand sides, vanishing Vandermonde factors)
//! are flagged vacuous rather than dropped.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ball::{Ctx, RealBall};
use crate::heights::{
    height_additive, height_multiplicative, log_embedding, mahler_from_poly,
    norm_of_combination, CombinationMode, HeightValue,
};
use crate::perms::{
    enumerate_group, factorial, generator_criterion, lambda_count, GroupTag, Permutation,
};
use crate::poly::{discriminant, norm_of_root, vandermonde_product, ExponentVector, IntPoly};
use crate::roots::{find_roots, refine, ConjugateSet};
use crate::snfun::{c_n, center, l1_norm, s_n_bruteforce, CenteredVector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INDETERMINATE")]
    Indeterminate,
}

/// One checked inequality with certified endpoints.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: String,
    pub margin: f64,
    pub verdict: Verdict,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn indeterminate(name: &str, note: String) -> Self {
        BoundReport {
            name: name.to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            relation: ">=".into(),
            margin: f64::NAN,
            verdict: Verdict::Indeterminate,
            vacuous: false,
            note: Some(note),
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:e},{:e},{},{:e},{:?}",
            self.name, self.lhs, self.rhs, self.relation, self.margin, self.verdict
        )
    }
}

pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from("name,lhs,rhs,relation,margin,verdict\n");
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Certified `lhs >= rhs` comparison.
fn report_ge(name: &str, lhs: &RealBall, rhs: &RealBall, p: usize) -> BoundReport {
    let margin = lhs.sub(rhs, p);
    let verdict = if lhs.certainly_ge(rhs, p) {
        Verdict::Pass
    } else if lhs.certainly_le(rhs, p) && margin.upper(p).is_negative() {
        Verdict::Fail
    } else {
        Verdict::Indeterminate
    };
    BoundReport {
        name: name.to_string(),
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        relation: ">=".into(),
        margin: margin.to_f64(),
        verdict,
        vacuous: false,
        note: None,
    }
}

fn report_le(name: &str, lhs: &RealBall, rhs: &RealBall, p: usize) -> BoundReport {
    let mut r = report_ge(name, rhs, lhs, p);
    r.name = name.to_string();
    let (l, rr) = (r.rhs, r.lhs);
    r.lhs = l;
    r.rhs = rr;
    r.relation = "<=".into();
    r
}

fn rational_ball(q: &BigRational, p: usize) -> RealBall {
    RealBall::from_rational(q, p)
}

/// `(|sum a_i| / n) * log|N(β)|`.
pub fn thm12_bound(
    n: usize,
    a: &ExponentVector,
    log_norm_beta: &RealBall,
    prec: usize,
) -> Result<RealBall> {
    if a.len() != n {
        return Err(Error::domain("exponent vector length mismatch"));
    }
    if log_norm_beta.upper(prec).is_negative() {
        return Err(Error::domain("log norm must be nonnegative"));
    }
    let s: BigInt = a.iter().sum();
    let factor = BigRational::new(s.abs(), BigInt::from(n));
    Ok(rational_ball(&factor, prec).mul(log_norm_beta, prec))
}

/// Both halves of the sandwich
/// `logM(β)·|y|₁ >= (2/n!)·logM(α) >= c_n·|y|₁·logM(β)` for the
/// multiplicative combination with exponent vector `a`, `y = center(a)`.
pub fn prop31_sandwich_check(
    cs: &ConjugateSet,
    a: &ExponentVector,
) -> Result<(BoundReport, BoundReport)> {
    let n = cs.n();
    // unit precondition enforced inside height_multiplicative
    let mid = height_multiplicative(cs, a, GroupTag::Alternating)?;
    let p = cs.precision_bits();
    let log_m_beta = mahler_from_poly(cs.source(), cs)?;
    let y = center(a)?;
    let y1 = rational_ball(&l1_norm(&y), p);
    let (cn, _) = c_n(n)?;
    let upper = log_m_beta.ball.mul(&y1, p);
    let lower = rational_ball(&cn, p).mul(&y1, p).mul(&log_m_beta.ball, p);
    Ok((
        report_ge("prop31_upper", &upper, &mid.ball, p),
        report_ge("prop31_lower", &mid.ball, &lower, p),
    ))
}

/// Exact-rational identity check: the orbit-enumerated
/// `logM(α) = (1/2) sum_{σ in A_n} |sum_j a_j x_{σ(j)}|` must equal
/// `(n·n!/4)·s_n(x, center(a))`.
pub fn prop34_identity_check(x: &CenteredVector, a: &ExponentVector) -> Result<BoundReport> {
    let n = x.n();
    if n > 8 {
        return Err(Error::domain("identity check supports n <= 8"));
    }
    if a.len() != n {
        return Err(Error::domain("exponent vector length mismatch"));
    }
    let mut direct = BigRational::zero();
    for sigma in enumerate_group(n, GroupTag::Alternating)? {
        let mut dot = BigRational::zero();
        for j in 0..n {
            dot += BigRational::from(a[j].clone()) * &x.entries()[sigma.apply(j)];
        }
        direct += dot.abs();
    }
    direct /= BigRational::from(BigInt::from(2));
    let y = center(a)?;
    let s = s_n_bruteforce(x, &y, GroupTag::Alternating)?;
    let via_sn = BigRational::new(BigInt::from(n) * factorial(n), BigInt::from(4)) * s;
    let equal = direct == via_sn;
    Ok(BoundReport {
        name: "prop34_identity".into(),
        lhs: direct.to_f64().unwrap_or(f64::NAN),
        rhs: via_sn.to_f64().unwrap_or(f64::NAN),
        relation: "==".into(),
        margin: 0.0,
        verdict: if equal { Verdict::Pass } else { Verdict::Fail },
        vacuous: false,
        note: None,
    })
}

/// `sqrt(n/(200π)) (log log n / log n)^3`; reference value only, no
/// finite-n assertion is attached to it.
pub fn thm13_asymptotic_bound(n: usize) -> Result<f64> {
    if n < 5 {
        return Err(Error::domain("asymptotic bound requires n >= 5"));
    }
    let nf = n as f64;
    let l = nf.ln();
    Ok((nf / (200.0 * std::f64::consts::PI)).sqrt() * (l.ln() / l).powi(3))
}

/// `(1/240) log(n/9)`; negative (vacuous) for n <= 9.
pub fn thm14_bound(n: usize) -> Result<f64> {
    if n < 5 {
        return Err(Error::domain("bound requires n >= 5"));
    }
    Ok((n as f64 / 9.0).ln() / 240.0)
}

/// `log(M(β)·sum|a_i|) >= h(α)` for the additive combination.
pub fn prop51_upper_check(
    h_alpha: &HeightValue,
    log_m_beta: &RealBall,
    a: &ExponentVector,
) -> BoundReport {
    let abs_sum: BigInt = a.iter().map(|x| x.abs()).sum();
    let p = h_alpha.precision_bits;
    if abs_sum.is_zero() {
        return BoundReport {
            name: "prop51_upper".into(),
            lhs: f64::NEG_INFINITY,
            rhs: h_alpha.value_f64(),
            relation: ">=".into(),
            margin: f64::NEG_INFINITY,
            verdict: Verdict::Indeterminate,
            vacuous: true,
            note: Some("sum |a_i| = 0: upper bound degenerates to -inf".into()),
        };
    }
    let mut ctx = Ctx::new(p);
    let lhs = match RealBall::from_bigint(&abs_sum).ln(&mut ctx) {
        Ok(l) => log_m_beta.add(&l, p),
        Err(e) => return BoundReport::indeterminate("prop51_upper", e.to_string()),
    };
    report_ge("prop51_upper", &lhs, &h_alpha.ball, p)
}

fn log_mahler_additive(cs: &ConjugateSet, a: &ExponentVector) -> Result<RealBall> {
    let h = height_additive(cs, a, GroupTag::Alternating)?;
    let order = GroupTag::Alternating.order(cs.n());
    let p = cs.precision_bits();
    Ok(h.ball.mul(&RealBall::from_bigint(&order), p))
}

/// `log M(α_τ) <= n log 5 + 5 log M(α)` for a transposition `τ`, both
/// Mahler measures enumerated over the alternating orbit.
pub fn lemma53_check(
    cs: &ConjugateSet,
    a: &ExponentVector,
    tau: &Permutation,
) -> Result<BoundReport> {
    let n = cs.n();
    if !tau.is_transposition() {
        return Err(Error::domain("τ must be a transposition"));
    }
    if tau.n() != n || a.len() != n {
        return Err(Error::domain("size mismatch"));
    }
    if n > 8 {
        return Err(Error::domain("orbit enumeration supports n <= 8"));
    }
    let p = cs.precision_bits();
    let mut ctx = Ctx::new(p);
    let lm = log_mahler_additive(cs, a)?;
    // α_τ's orbit is the orbit of the relabeled vector a ∘ τ
    let relabeled: ExponentVector = (0..n).map(|i| a[tau.apply(i)].clone()).collect();
    let lm_tau = log_mahler_additive(cs, &relabeled)?;
    let log5 = RealBall::from_i64(5, p).ln(&mut ctx)?;
    let five = RealBall::from_i64(5, p);
    let nb = RealBall::from_i64(n as i64, p);
    let rhs = nb.mul(&log5, p).add(&five.mul(&lm, p), p);
    Ok(report_le("lemma53", &lm_tau, &rhs, p))
}

/// Log of the Mahler lower bound
/// `5^{-n/6} (2^{-T_n} |V| |disc|^{1/2})^{Λ_{n-2}/6}`; `None` encodes the
/// vacuous `-inf` case `V = 0`.
pub fn prop54_lower(
    n: usize,
    v_abs: &BigInt,
    abs_disc: &BigInt,
    prec: usize,
) -> Result<Option<RealBall>> {
    if n < 5 {
        return Err(Error::domain("bound requires n >= 5"));
    }
    if v_abs.is_negative() || abs_disc.is_negative() {
        return Err(Error::domain("absolute values expected"));
    }
    if v_abs.is_zero() {
        return Ok(None);
    }
    if abs_disc.is_zero() {
        return Err(Error::domain("discriminant must be nonzero"));
    }
    let mut ctx = Ctx::new(prec);
    let t_n = BigInt::from(n * (n - 1) / 2);
    let lam = lambda_count(n - 2);
    let log2 = RealBall::from_i64(2, prec).ln(&mut ctx)?;
    let log5 = RealBall::from_i64(5, prec).ln(&mut ctx)?;
    let log_v = RealBall::from_bigint(v_abs).ln(&mut ctx)?;
    let log_d = RealBall::from_bigint(abs_disc).ln(&mut ctx)?;
    let inner = log_v
        .add(&log_d.scale_pow2(-1, prec), prec)
        .sub(&RealBall::from_bigint(&t_n).mul(&log2, prec), prec);
    let lam6 = rational_ball(&BigRational::new(lam, BigInt::from(6)), prec);
    let n6 = rational_ball(&BigRational::new(BigInt::from(n), BigInt::from(6)), prec);
    Ok(Some(lam6.mul(&inner, prec).sub(&n6.mul(&log5, prec), prec)))
}

/// `h(α + 2(a_i - a_j)(β_k - β_l)) <= 5 h(α) + log 16`; indices 0-based.
pub fn lemma56_check(
    cs: &ConjugateSet,
    a: &ExponentVector,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<BoundReport> {
    let n = cs.n();
    if a.len() != n {
        return Err(Error::domain("exponent vector length mismatch"));
    }
    if i >= n || j >= n || k >= n || l >= n {
        return Err(Error::domain("index out of range"));
    }
    if n > 8 {
        return Err(Error::domain("orbit enumeration supports n <= 8"));
    }
    let p = cs.precision_bits();
    let mut ctx = Ctx::new(p);
    let h = height_additive(cs, a, GroupTag::Alternating)?;
    let delta = (&a[i] - &a[j]) * BigInt::from(2);
    let mut shifted = a.clone();
    shifted[k] += &delta;
    shifted[l] -= &delta;
    let h_shift = height_additive(cs, &shifted, GroupTag::Alternating)?;
    let log16 = RealBall::from_i64(16, p).ln(&mut ctx)?;
    let rhs = RealBall::from_i64(5, p).mul(&h.ball, p).add(&log16, p);
    Ok(report_le("lemma56", &h_shift.ball, &rhs, p))
}

/// `(1/|G|) sum_σ log max(1, |α_σ|)` for the multiplicative combination; a
/// certified lower bound for `h(α)` that needs no unit hypothesis.
fn mult_orbit_height_floor(
    cs: &ConjugateSet,
    a: &ExponentVector,
    g: GroupTag,
) -> Result<RealBall> {
    let n = cs.n();
    let p = cs.precision_bits();
    let x = log_embedding(cs)?;
    let mut acc = RealBall::zero();
    let mut order = 0usize;
    for sigma in enumerate_group(n, g)? {
        let mut dot = RealBall::zero();
        for jj in 0..n {
            if a[jj].is_zero() {
                continue;
            }
            dot = dot.add(
                &x.entries[sigma.apply(jj)].mul(&RealBall::from_bigint(&a[jj]), p),
                p,
            );
        }
        acc = acc.add(&max0(&dot, p), p);
        order += 1;
    }
    acc.div(&RealBall::from_bigint(&BigInt::from(order)), p)
}

/// Intersection of an interval with `[0, inf)` union the point 0, i.e.
/// `max(0, .)` with outward rounding.
fn max0(b: &RealBall, p: usize) -> RealBall {
    if !b.upper(p).is_positive() {
        return RealBall::zero();
    }
    if !b.lower(p).is_negative() {
        return b.clone();
    }
    let half = RealBall::exact(b.upper(p)).scale_pow2(-1, p);
    RealBall::with_rad(half.mid.clone(), half.upper(p))
}

/// Runs every check applicable to the given polynomial/exponent/mode
/// combination; individual failures become report entries, never aborts.
pub fn verify_suite(
    p: &IntPoly,
    a: &ExponentVector,
    g: GroupTag,
    mode: CombinationMode,
    bits: usize,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    let cs = find_roots(p, bits)?;
    let mut reports = suite_pass(p, a, g, mode, &cs, tol)?;
    if reports
        .iter()
        .any(|r| r.verdict == Verdict::Indeterminate && !r.vacuous && r.note.is_none())
    {
        // one automatic precision escalation
        if let Ok(finer) = refine(&cs, 64) {
            reports = suite_pass(p, a, g, mode, &finer, tol)?;
        }
    }
    Ok(reports)
}

fn suite_pass(
    p: &IntPoly,
    a: &ExponentVector,
    g: GroupTag,
    mode: CombinationMode,
    cs: &ConjugateSet,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    let n = cs.n();
    let prec = cs.precision_bits();
    let mut ctx = Ctx::new(prec);
    let mut reports = Vec::new();

    // generator criterion: enough distinct exponents
    match generator_criterion(a, g) {
        Ok(gen) => {
            let mut distinct: Vec<&BigInt> = a.iter().collect();
            distinct.sort();
            distinct.dedup();
            let needed = match g {
                GroupTag::Alternating => n.saturating_sub(1),
                GroupTag::Symmetric => n,
            };
            reports.push(BoundReport {
                name: "generator_criterion".into(),
                lhs: distinct.len() as f64,
                rhs: needed as f64,
                relation: ">=".into(),
                margin: distinct.len() as f64 - needed as f64,
                verdict: if gen { Verdict::Pass } else { Verdict::Fail },
                vacuous: false,
                note: None,
            });
        }
        Err(e) => reports.push(BoundReport::indeterminate("generator_criterion", e.to_string())),
    }

    let log_m_beta = mahler_from_poly(p, cs)?;
    let norm = norm_of_root(p)?;
    let log_norm = rational_ball(&norm.abs(), prec).ln(&mut ctx)?;

    if mode == CombinationMode::Multiplicative {
        // norm identity: (1/|G|) log|∏ α_σ| == ((sum a)/n) log|N(β)|
        match norm_of_combination(cs, a, g, CombinationMode::Multiplicative) {
            Ok(v) => {
                let s: BigInt = a.iter().sum();
                let expect = rational_ball(&BigRational::new(s, BigInt::from(n)), prec)
                    .mul(&log_norm, prec);
                let diff = v.ball.sub(&expect, prec);
                let within = diff.to_f64().abs() + diff.rad_f64() <= tol;
                reports.push(BoundReport {
                    name: "norm_identity".into(),
                    lhs: v.value_f64(),
                    rhs: expect.to_f64(),
                    relation: "==".into(),
                    margin: diff.to_f64(),
                    verdict: if within { Verdict::Pass } else { Verdict::Fail },
                    vacuous: false,
                    note: None,
                });
            }
            Err(e) => reports.push(BoundReport::indeterminate("norm_identity", e.to_string())),
        }

        // thm12: a certified lower bound of h(α) against (|Σa|/n)·log|N(β)|;
        // equality is attained (e.g. all exponents positive on |β_i| > 1),
        // so the comparison allows the caller's tolerance
        match (
            mult_orbit_height_floor(cs, a, g),
            thm12_bound(n, a, &log_norm, prec),
        ) {
            (Ok(floor), Ok(bound)) => {
                let mut rep = report_ge("thm12", &floor, &bound, prec);
                if rep.verdict == Verdict::Indeterminate {
                    let margin = floor.sub(&bound, prec);
                    if crate::ball::bigfloat_to_f64(&margin.lower(prec)) >= -tol {
                        rep.verdict = Verdict::Pass;
                        rep.note = Some("equality within tolerance".into());
                    }
                }
                reports.push(rep);
            }
            (Err(e), _) | (_, Err(e)) => {
                reports.push(BoundReport::indeterminate("thm12", e.to_string()))
            }
        }

        // sandwich needs a unit β
        match prop31_sandwich_check(cs, a) {
            Ok((up, lo)) => {
                reports.push(up);
                reports.push(lo);
            }
            Err(e) => {
                let mut r = BoundReport::indeterminate("prop31", e.to_string());
                r.vacuous = true;
                reports.push(r);
            }
        }
    }

    if mode == CombinationMode::Additive {
        match height_additive(cs, a, g) {
            Ok(h) => {
                reports.push(prop51_upper_check(&h, &log_m_beta.ball, a));

                if n >= 5 {
                    match thm14_bound(n) {
                        Ok(b) => {
                            let rhs = RealBall::from_rational(
                                &BigRational::from_float(b).unwrap_or_else(BigRational::zero),
                                prec,
                            );
                            let mut rep = report_ge("thm14", &h.ball, &rhs, prec);
                            if b <= 0.0 {
                                rep.vacuous = true;
                                rep.verdict = Verdict::Pass;
                                rep.note = Some("bound nonpositive for n <= 9".into());
                            }
                            reports.push(rep);
                        }
                        Err(e) => reports.push(BoundReport::indeterminate("thm14", e.to_string())),
                    }
                    match thm13_asymptotic_bound(n) {
                        Ok(b) => reports.push(BoundReport {
                            name: "thm13_asymptotic_reference".into(),
                            lhs: h.value_f64(),
                            rhs: b,
                            relation: ">=".into(),
                            margin: h.value_f64() - b,
                            verdict: Verdict::Indeterminate,
                            vacuous: true,
                            note: Some(
                                "asymptotic reference value; not asserted at finite n".into(),
                            ),
                        }),
                        Err(e) => reports
                            .push(BoundReport::indeterminate("thm13_reference", e.to_string())),
                    }
                    // prop54 against logM(α) over the alternating orbit
                    if g == GroupTag::Alternating && n <= 8 {
                        let check = (|| -> Result<BoundReport> {
                            let v = vandermonde_product(a)?.abs();
                            let d = discriminant(p)?.abs();
                            let lm_alpha = log_mahler_additive(cs, a)?;
                            match prop54_lower(n, &v, &d, prec)? {
                                Some(bound) => Ok(report_ge("prop54", &lm_alpha, &bound, prec)),
                                None => Ok(BoundReport {
                                    name: "prop54".into(),
                                    lhs: lm_alpha.to_f64(),
                                    rhs: f64::NEG_INFINITY,
                                    relation: ">=".into(),
                                    margin: f64::INFINITY,
                                    verdict: Verdict::Pass,
                                    vacuous: true,
                                    note: Some("V(a) = 0: bound vacuous".into()),
                                }),
                            }
                        })();
                        match check {
                            Ok(r) => reports.push(r),
                            Err(e) => {
                                reports.push(BoundReport::indeterminate("prop54", e.to_string()))
                            }
                        }
                    }
                }

                if n <= 8 && n >= 2 && g == GroupTag::Alternating {
                    match Permutation::transposition(n, 0, 1)
                        .and_then(|tau| lemma53_check(cs, a, &tau))
                    {
                        Ok(r) => reports.push(r),
                        Err(e) => {
                            reports.push(BoundReport::indeterminate("lemma53", e.to_string()))
                        }
                    }
                }
                if (5..=8).contains(&n) && g == GroupTag::Alternating {
                    match lemma56_check(cs, a, 0, 1, 2, 3) {
                        Ok(r) => reports.push(r),
                        Err(e) => {
                            reports.push(BoundReport::indeterminate("lemma56", e.to_string()))
                        }
                    }
                }
            }
            Err(e) => reports.push(BoundReport::indeterminate("height_additive", e.to_string())),
        }
    }

    // Mahler lower bound for β itself (needs β neither zero nor a root of
    // unity; flagged vacuous when log M(β) is not certainly positive)
    if n >= 3 {
        match crate::heights::dobrowolski_voutier(n) {
            Ok(b) => {
                let rhs = RealBall::from_rational(
                    &BigRational::from_float(b).unwrap_or_else(BigRational::zero),
                    prec,
                );
                let mut rep = report_ge("dobrowolski_voutier", &log_m_beta.ball, &rhs, prec);
                if !log_m_beta.ball.lower(prec).is_positive() {
                    rep.vacuous = true;
                    rep.verdict = Verdict::Indeterminate;
                    rep.note = Some("M(β) = 1 within error: β may be a root of unity".into());
                }
                reports.push(rep);
            }
            Err(e) => {
                reports.push(BoundReport::indeterminate("dobrowolski_voutier", e.to_string()))
            }
        }
    }

    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::exponents_from_i64;
    use crate::families::laguerre_poly;
    use num_rational::BigRational;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn thm12_examples() {
        let prec = 128;
        let mut ctx = Ctx::new(prec);
        let log_norm = RealBall::from_i64(40320, prec).ln(&mut ctx).unwrap();
        let a = exponents_from_i64(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let b = thm12_bound(8, &a, &log_norm, prec).unwrap();
        assert!((b.to_f64() - 4.5 * 40320f64.ln()).abs() < 1e-10);

        let a = exponents_from_i64(&[1, -1, 2, -2, 3, -3, 4, -4]);
        let b = thm12_bound(8, &a, &log_norm, prec).unwrap();
        assert!(b.to_f64().abs() < 1e-12);

        let b = thm12_bound(8, &exponents_from_i64(&[1; 8]), &RealBall::zero(), prec).unwrap();
        assert!(b.to_f64().abs() < 1e-12);
    }

    #[test]
    fn sandwich_on_unit() {
        // x^2 - x - 1 has unit roots; treat with the alternating tag of S_2
        // is impossible (n=2 alternating is trivial) so use a degree-5 unit:
        // x^5 - x - 1 has constant term -1 (unit) and is squarefree
        let p = IntPoly::from_i64(&[-1, -1, 0, 0, 0, 1]);
        let cs = find_roots(&p, 128).unwrap();
        let a = exponents_from_i64(&[1, 2, 3, 4, 5]);
        let (up, lo) = prop31_sandwich_check(&cs, &a).unwrap();
        assert_eq!(up.verdict, Verdict::Pass);
        assert_eq!(lo.verdict, Verdict::Pass);

        // all exponents equal: y = 0, both sides 0
        let a = exponents_from_i64(&[2, 2, 2, 2, 2]);
        let (up, lo) = prop31_sandwich_check(&cs, &a).unwrap();
        assert_ne!(up.verdict, Verdict::Fail);
        assert_ne!(lo.verdict, Verdict::Fail);

        // non-unit rejected
        let cs = find_roots(&laguerre_poly(4).unwrap(), 128).unwrap();
        assert!(prop31_sandwich_check(&cs, &exponents_from_i64(&[1, 2, 3, 4])).is_err());
    }

    #[test]
    fn prop34_exact() {
        let x = CenteredVector::new(vec![rat(2, 1), rat(-1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)])
            .unwrap();
        let a = exponents_from_i64(&[0, 1, 2, 3, 4]);
        let r = prop34_identity_check(&x, &a).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);

        let zero =
            CenteredVector::new(vec![rat(0, 1); 4]).unwrap();
        let r = prop34_identity_check(&zero, &exponents_from_i64(&[1, 2, 3, 4])).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lhs, 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [4usize, 5, 6] {
            for _ in 0..10 {
                let mut entries: Vec<BigRational> = (0..n - 1)
                    .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
                    .collect();
                let s: BigRational = entries.iter().sum();
                entries.push(-s);
                let x = CenteredVector::new(entries).unwrap();
                let a: ExponentVector =
                    (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
                let r = prop34_identity_check(&x, &a).unwrap();
                assert_eq!(r.verdict, Verdict::Pass, "n={n}");
            }
        }
    }

    #[test]
    fn reference_bounds() {
        assert!((thm13_asymptotic_bound(100).unwrap() - 0.014549342822146614538).abs() < 1e-15);
        assert!(thm13_asymptotic_bound(5).unwrap() > 0.0);
        assert!(thm13_asymptotic_bound(4).is_err());
        let mut prev = thm13_asymptotic_bound(20).unwrap();
        for n in (40..=400).step_by(20) {
            let v = thm13_asymptotic_bound(n).unwrap();
            assert!(v > prev);
            prev = v;
        }

        assert!(thm14_bound(9).unwrap().abs() < 1e-15);
        assert!((thm14_bound(18).unwrap() - 0.0028881132523331054559).abs() < 1e-15);
        assert!(thm14_bound(8).unwrap() < 0.0);
        assert!(thm14_bound(4).is_err());
    }

    #[test]
    fn prop51_and_lemma53_pipeline() {
        let p = laguerre_poly(4).unwrap();
        let cs = find_roots(&p, 128).unwrap();
        let a = exponents_from_i64(&[0, 1, 2, 3]);
        let h = height_additive(&cs, &a, GroupTag::Alternating).unwrap();
        let lm = mahler_from_poly(&p, &cs).unwrap();
        let r = prop51_upper_check(&h, &lm.ball, &a);
        assert_eq!(r.verdict, Verdict::Pass);

        let zero = exponents_from_i64(&[0, 0, 0, 0]);
        let hz = height_additive(&cs, &zero, GroupTag::Alternating).unwrap();
        let r = prop51_upper_check(&hz, &lm.ball, &zero);
        assert_eq!(r.verdict, Verdict::Indeterminate);
        assert!(r.vacuous);

        let tau = Permutation::transposition(4, 0, 1).unwrap();
        let r = lemma53_check(&cs, &a, &tau).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);

        // all-equal exponents: α_τ = α
        let flat = exponents_from_i64(&[3, 3, 3, 3]);
        let r = lemma53_check(&cs, &flat, &tau).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);

        assert!(lemma53_check(&cs, &a, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn prop54_values() {
        // n=5, V=1, disc=1 -> (2/6)(-10 log 2) - (5/6) log 5
        let one = BigInt::one();
        let b = prop54_lower(5, &one, &one, 128).unwrap().unwrap();
        assert!((b.to_f64() - (-3.6516888622282346769)).abs() < 1e-12);

        let v = vandermonde_product(&exponents_from_i64(&[0, 1, 2, 3, 4]))
            .unwrap()
            .abs();
        assert_eq!(v, BigInt::from(288));
        let d = discriminant(&laguerre_poly(5).unwrap()).unwrap().abs();
        let b = prop54_lower(5, &v, &d, 128).unwrap().unwrap();
        assert!((b.to_f64() - 2.2255410834687856283).abs() < 1e-10);

        assert!(prop54_lower(5, &BigInt::zero(), &one, 128).unwrap().is_none());
        assert!(prop54_lower(4, &one, &one, 128).is_err());
    }

    #[test]
    fn lemma56_pipeline() {
        let p = laguerre_poly(5).unwrap();
        let cs = find_roots(&p, 128).unwrap();
        let a = exponents_from_i64(&[0, 1, 2, 3, 4]);
        let r = lemma56_check(&cs, &a, 0, 0, 1, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "i=j trivial case");
        let r = lemma56_check(&cs, &a, 1, 2, 3, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(lemma56_check(&cs, &a, 0, 1, 2, 9).is_err());
    }

    #[test]
    fn suite_runs() {
        let p = laguerre_poly(4).unwrap();
        let a = exponents_from_i64(&[1, 2, 3, 4]);
        let reports = verify_suite(
            &p,
            &a,
            GroupTag::Alternating,
            CombinationMode::Multiplicative,
            128,
            1e-10,
        )
        .unwrap();
        let by_name = |n: &str| reports.iter().find(|r| r.name == n).unwrap();
        assert_eq!(by_name("norm_identity").verdict, Verdict::Pass);
        assert_eq!(by_name("thm12").verdict, Verdict::Pass);
        assert!(!reports.iter().any(|r| r.verdict == Verdict::Fail));

        let a = exponents_from_i64(&[0, 1, 2, 3]);
        let reports = verify_suite(
            &p,
            &a,
            GroupTag::Alternating,
            CombinationMode::Additive,
            128,
            1e-10,
        )
        .unwrap();
        let by_name = |n: &str| reports.iter().find(|r| r.name == n).unwrap();
        // the distinct-values criterion is only proven for n >= 5, so the
        // n = 4 entry reports the obstruction instead of a verdict
        assert_eq!(by_name("generator_criterion").verdict, Verdict::Indeterminate);
        assert_eq!(by_name("prop51_upper").verdict, Verdict::Pass);
        assert!(!reports.iter().any(|r| r.verdict == Verdict::Fail));

        // degenerate all-zero exponents complete with indeterminate entries
        let zero = exponents_from_i64(&[0, 0, 0, 0]);
        let reports = verify_suite(
            &p,
            &zero,
            GroupTag::Alternating,
            CombinationMode::Additive,
            128,
            1e-10,
        )
        .unwrap();
        assert!(reports.iter().any(|r| r.verdict == Verdict::Indeterminate));
        assert!(!reports.iter().any(|r| r.verdict == Verdict::Fail));

        let csv = reports_to_csv(&reports);
        assert!(csv.starts_with("name,lhs,rhs,relation,margin,verdict\n"));
    }
}
