//! Mahler measures and Weil heights of a root `β` and of multiplicative or
//! additive combinations of its conjugates, by direct enumeration of the
//! Galois orbit over the alternating or symmetric group.
//!
//! All values are certified: each result carries an error radius that
//! accounts for the root enclosures and every rounding step.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ball::{bigfloat_to_string, Ctx, RealBall};
use crate::perms::{enumerate_group, GroupTag};
use crate::poly::{norm_of_root, ExponentVector, IntPoly};
use crate::roots::{refine, ConjugateSet};
use crate::{Error, Result};

/// A certified real value (typically a log-Mahler measure or a height).
#[derive(Clone, Debug)]
pub struct HeightValue {
    pub ball: RealBall,
    pub precision_bits: usize,
}

impl HeightValue {
    fn new(ball: RealBall, precision_bits: usize) -> Self {
        HeightValue {
            ball,
            precision_bits,
        }
    }

    /// Intersects the interval with `[0, inf)`; callers use this when the
    /// quantity is known nonnegative.
    fn clamped_nonneg(self, p: usize) -> Self {
        let lo = self.ball.lower(p);
        if !lo.is_negative() {
            return self;
        }
        let hi = self.ball.upper(p);
        if hi.is_negative() {
            // the enclosure is entirely negative only through rounding; the
            // true value is 0
            return HeightValue::new(RealBall::zero(), self.precision_bits);
        }
        let prec = self.precision_bits;
        let half = RealBall::exact(hi).scale_pow2(-1, p);
        HeightValue::new(
            RealBall::with_rad(half.mid.clone(), half.upper(p)),
            prec,
        )
    }

    pub fn value_f64(&self) -> f64 {
        self.ball.to_f64()
    }

    pub fn error_radius_f64(&self) -> f64 {
        self.ball.rad_f64()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut ctx = Ctx::new(self.precision_bits);
        serde_json::json!({
            "value": bigfloat_to_string(&self.ball.mid, &mut ctx),
            "error_radius": bigfloat_to_string(&self.ball.rad, &mut ctx),
            "precision_bits": self.precision_bits,
        })
    }
}

/// Retries `op` once on a refined conjugate set when the error radius
/// exceeds `tol`.
pub fn with_tolerance<F>(cs: &ConjugateSet, tol: f64, op: F) -> Result<HeightValue>
where
    F: Fn(&ConjugateSet) -> Result<HeightValue>,
{
    let v = op(cs)?;
    if v.error_radius_f64() <= tol {
        return Ok(v);
    }
    let finer = refine(cs, 64)?;
    let v = op(&finer)?;
    if v.error_radius_f64() <= tol {
        Ok(v)
    } else {
        Err(Error::PrecisionExhausted {
            bits: finer.precision_bits(),
            context: format!(
                "error radius {} above tolerance {tol} after refinement",
                v.error_radius_f64()
            ),
        })
    }
}

fn check_source(p: &IntPoly, cs: &ConjugateSet) -> Result<()> {
    if p != cs.source() {
        return Err(Error::domain("conjugate set was not derived from this polynomial"));
    }
    Ok(())
}

/// `log M(p) = log|a_n| + sum_i log max(1, |β_i|)`, certified.
pub fn mahler_from_poly(p: &IntPoly, cs: &ConjugateSet) -> Result<HeightValue> {
    check_source(p, cs)?;
    let prec = cs.precision_bits();
    let mut ctx = Ctx::new(prec);
    let mut acc = RealBall::from_bigint(&p.leading().abs()).ln(&mut ctx)?;
    for e in cs.enclosures() {
        let m = e.abs(prec);
        acc = acc.add(&m.log_max1(&mut ctx)?, prec);
    }
    Ok(HeightValue::new(acc, prec).clamped_nonneg(prec))
}

/// The certified vector `x_i = log |β_i|` together with its coordinate sum.
#[derive(Clone, Debug)]
pub struct LogEmbedding {
    pub entries: Vec<RealBall>,
    pub sum: RealBall,
    pub precision_bits: usize,
}

impl LogEmbedding {
    pub fn sum_within(&self, tol: f64) -> bool {
        self.sum.to_f64().abs() <= tol + self.sum.rad_f64()
    }
}

/// Certified `log |β_i|` for every enclosure; fails if any enclosure
/// contains 0.
pub fn log_embedding(cs: &ConjugateSet) -> Result<LogEmbedding> {
    let prec = cs.precision_bits();
    let mut ctx = Ctx::new(prec);
    let mut entries = Vec::with_capacity(cs.n());
    let mut sum = RealBall::zero();
    for e in cs.enclosures() {
        let m = e.abs(prec);
        if m.contains_zero() {
            return Err(Error::domain("a root enclosure contains 0"));
        }
        let x = m.ln(&mut ctx)?;
        sum = sum.add(&x, prec);
        entries.push(x);
    }
    Ok(LogEmbedding {
        entries,
        sum,
        precision_bits: prec,
    })
}

fn check_exponents(a: &ExponentVector, n: usize) -> Result<()> {
    if a.len() != n {
        return Err(Error::domain(format!(
            "exponent vector has length {}, expected {n}",
            a.len()
        )));
    }
    Ok(())
}

/// `h(α) = (1/(2|G|)) sum_{σ in G} |sum_j a_j x_{σ(j)}|` for the
/// multiplicative combination `α = ∏ β_{σ(j)}^{a_j}`; requires `β` to be a
/// unit so all orbit values are units as well.
pub fn height_multiplicative(
    cs: &ConjugateSet,
    a: &ExponentVector,
    g: GroupTag,
) -> Result<HeightValue> {
    let n = cs.n();
    check_exponents(a, n)?;
    let norm = norm_of_root(cs.source())?;
    if norm.abs() != num_rational::BigRational::one() {
        return Err(Error::domain(
            "β is not a unit (|norm| != 1); use the norm-based lower bound instead",
        ));
    }
    let prec = cs.precision_bits();
    let x = log_embedding(cs)?;
    let mut acc = RealBall::zero();
    let mut order: usize = 0;
    for sigma in enumerate_group(n, g)? {
        let mut dot = RealBall::zero();
        for j in 0..n {
            if a[j].is_zero() {
                continue;
            }
            dot = dot.add(
                &x.entries[sigma.apply(j)].mul(&RealBall::from_bigint(&a[j]), prec),
                prec,
            );
        }
        acc = acc.add(&dot.abs(prec), prec);
        order += 1;
    }
    let den = RealBall::from_bigint(&BigInt::from(2 * order));
    let h = acc.div(&den, prec)?;
    Ok(HeightValue::new(h, prec).clamped_nonneg(prec))
}

/// `h(α) = (1/|G|) sum_{σ in G} log max(1, |sum_i a_i β_{σ(i)}|)` for the
/// additive combination; the source must be monic so the orbit values are
/// algebraic integers.
pub fn height_additive(
    cs: &ConjugateSet,
    a: &ExponentVector,
    g: GroupTag,
) -> Result<HeightValue> {
    let n = cs.n();
    check_exponents(a, n)?;
    if !cs.source().is_monic() {
        return Err(Error::domain("source polynomial must be monic"));
    }
    let prec = cs.precision_bits();
    let mut ctx = Ctx::new(prec);
    let mut acc = RealBall::zero();
    let mut order: usize = 0;
    for sigma in enumerate_group(n, g)? {
        let mut val = crate::ball::ComplexBall::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            val = val.add(&cs.enclosures()[sigma.apply(i)].scale_bigint(&a[i], prec), prec);
        }
        let m = val.abs(prec);
        acc = acc.add(&m.log_max1(&mut ctx)?, prec);
        order += 1;
    }
    let den = RealBall::from_bigint(&BigInt::from(order));
    let h = acc.div(&den, prec)?;
    Ok(HeightValue::new(h, prec).clamped_nonneg(prec))
}

/// Which combination of conjugates an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombinationMode {
    Multiplicative,
    Additive,
}

/// `(1/|G|) log |∏_{σ in G} α_σ|`, accumulated in log space.
///
/// For the multiplicative combination this equals `((sum a_i)/n) log|N(β)|`
/// whenever the group is transitive, with no unit hypothesis needed.
pub fn norm_of_combination(
    cs: &ConjugateSet,
    a: &ExponentVector,
    g: GroupTag,
    mode: CombinationMode,
) -> Result<HeightValue> {
    let n = cs.n();
    check_exponents(a, n)?;
    let prec = cs.precision_bits();
    let mut ctx = Ctx::new(prec);
    let mut acc = RealBall::zero();
    let mut order: usize = 0;
    match mode {
        CombinationMode::Multiplicative => {
            let x = log_embedding(cs)?;
            for sigma in enumerate_group(n, g)? {
                for j in 0..n {
                    if a[j].is_zero() {
                        continue;
                    }
                    acc = acc.add(
                        &x.entries[sigma.apply(j)].mul(&RealBall::from_bigint(&a[j]), prec),
                        prec,
                    );
                }
                order += 1;
            }
        }
        CombinationMode::Additive => {
            if !cs.source().is_monic() {
                return Err(Error::domain("source polynomial must be monic"));
            }
            for sigma in enumerate_group(n, g)? {
                let mut val = crate::ball::ComplexBall::zero();
                for i in 0..n {
                    if a[i].is_zero() {
                        continue;
                    }
                    val = val.add(
                        &cs.enclosures()[sigma.apply(i)].scale_bigint(&a[i], prec),
                        prec,
                    );
                }
                let m = val.abs(prec);
                if m.contains_zero() {
                    return Err(Error::domain(
                        "an orbit value's enclosure contains 0; refine and retry",
                    ));
                }
                acc = acc.add(&m.ln(&mut ctx)?, prec);
                order += 1;
            }
        }
    }
    let den = RealBall::from_bigint(&BigInt::from(order));
    let v = acc.div(&den, prec)?;
    Ok(HeightValue::new(v, prec))
}

/// The unconditional Mahler-measure lower bound `(1/4)(log log d / log d)^3`
/// for a degree-`d` non-cyclotomic irrational algebraic number.
pub fn dobrowolski_voutier(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::domain("bound requires degree >= 3"));
    }
    let l = (d as f64).ln();
    Ok(0.25 * (l.ln() / l).powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::exponents_from_i64;
    use crate::roots::find_roots;

    const LOG_PHI: f64 = 0.481211825059603447497758913424;

    fn laguerre4() -> IntPoly {
        IntPoly::from_i64(&[24, 24, 12, 4, 1])
    }

    #[test]
    fn mahler_examples() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let cs = find_roots(&p, 80).unwrap();
        let m = mahler_from_poly(&p, &cs).unwrap();
        assert!((m.value_f64() - LOG_PHI).abs() < 1e-12);
        assert!(m.error_radius_f64() < 1e-12);

        let p = IntPoly::from_i64(&[-1, 0, 0, 0, 1]);
        let cs = find_roots(&p, 80).unwrap();
        let m = mahler_from_poly(&p, &cs).unwrap();
        assert!(m.value_f64().abs() <= m.error_radius_f64());
        assert!(m.error_radius_f64() < 1e-12);

        let p = IntPoly::from_i64(&[-3, 2]);
        let cs = find_roots(&p, 80).unwrap();
        let m = mahler_from_poly(&p, &cs).unwrap();
        assert!((m.value_f64() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn kronecker_on_cyclotomic_products() {
        // (x^2+x+1)(x^2+1)(x+1) expanded
        let p = IntPoly::from_i64(&[1, 1, 1]).mul(&IntPoly::from_i64(&[1, 0, 1]));
        let p = p.mul(&IntPoly::from_i64(&[1, 1]));
        let cs = find_roots(&p, 80).unwrap();
        let m = mahler_from_poly(&p, &cs).unwrap();
        assert!(m.value_f64() <= m.error_radius_f64());
        assert!(m.error_radius_f64() < 1e-12);
    }

    #[test]
    fn log_embedding_examples() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let cs = find_roots(&p, 80).unwrap();
        let x = log_embedding(&cs).unwrap();
        assert!((x.entries[1].to_f64() - LOG_PHI).abs() < 1e-12);
        assert!((x.entries[0].to_f64() + LOG_PHI).abs() < 1e-12);
        assert!(x.sum_within(1e-12));

        let cs = find_roots(&laguerre4(), 80).unwrap();
        let x = log_embedding(&cs).unwrap();
        assert!((x.sum.to_f64() - 24f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn multiplicative_height_examples() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let cs = find_roots(&p, 80).unwrap();
        let zero = exponents_from_i64(&[0, 0]);
        let h = height_multiplicative(&cs, &zero, GroupTag::Symmetric).unwrap();
        assert!(h.value_f64() <= h.error_radius_f64());

        let ones = exponents_from_i64(&[1, 1]);
        let h = height_multiplicative(&cs, &ones, GroupTag::Symmetric).unwrap();
        assert!(h.value_f64() <= 1e-12 + h.error_radius_f64());

        // a = (1,-1): h = (1/4) * (2 * 2 log phi) = log phi
        let a = exponents_from_i64(&[1, -1]);
        let h = height_multiplicative(&cs, &a, GroupTag::Symmetric).unwrap();
        assert!((h.value_f64() - LOG_PHI).abs() < 1e-12);

        // inversion invariance
        let neg = exponents_from_i64(&[-1, 1]);
        let h2 = height_multiplicative(&cs, &neg, GroupTag::Symmetric).unwrap();
        assert!((h.value_f64() - h2.value_f64()).abs() < 1e-12);

        // non-unit rejected
        let cs = find_roots(&laguerre4(), 80).unwrap();
        assert!(height_multiplicative(&cs, &exponents_from_i64(&[1, 0, 0, 0]), GroupTag::Alternating).is_err());
    }

    #[test]
    fn additive_height_examples() {
        let cs = find_roots(&laguerre4(), 80).unwrap();
        let zero = exponents_from_i64(&[0, 0, 0, 0]);
        let h = height_additive(&cs, &zero, GroupTag::Alternating).unwrap();
        assert!(h.value_f64() <= h.error_radius_f64());

        // one-hot equals log M / n, both tags
        let m = mahler_from_poly(&laguerre4(), &cs).unwrap();
        for g in [GroupTag::Alternating, GroupTag::Symmetric] {
            let h = height_additive(&cs, &exponents_from_i64(&[1, 0, 0, 0]), g).unwrap();
            assert!(
                (h.value_f64() - m.value_f64() / 4.0).abs() < 1e-10,
                "{g:?}"
            );
        }

        // pinned by an independent pre-build enumeration
        let h = height_additive(&cs, &exponents_from_i64(&[0, 1, 2, 3]), GroupTag::Alternating)
            .unwrap();
        assert!((h.value_f64() - 1.99932996044810128178035512219269).abs() < 1e-10);
    }

    #[test]
    fn orbit_relabeling_invariance() {
        let cs = find_roots(&laguerre4(), 80).unwrap();
        let a = exponents_from_i64(&[0, 1, 2, 3]);
        for g in [GroupTag::Alternating, GroupTag::Symmetric] {
            let base = height_additive(&cs, &a, g).unwrap().value_f64();
            for sigma in enumerate_group(4, g).unwrap() {
                let rel: ExponentVector = (0..4).map(|i| a[sigma.apply(i)].clone()).collect();
                let h = height_additive(&cs, &rel, g).unwrap();
                assert!((h.value_f64() - base).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn norm_identity() {
        // (1/|G|) log |prod α_σ| = ((sum a_i)/n) log |N(β)|
        let cs = find_roots(&laguerre4(), 80).unwrap();
        let a = exponents_from_i64(&[1, 2, 3, 4]);
        for g in [GroupTag::Alternating, GroupTag::Symmetric] {
            let v = norm_of_combination(&cs, &a, g, CombinationMode::Multiplicative).unwrap();
            let expect = (10.0 / 4.0) * 24f64.ln();
            assert!((v.value_f64() - expect).abs() < 1e-10, "{g:?}");
        }
        let zero = exponents_from_i64(&[0, 0, 0, 0]);
        let v = norm_of_combination(&cs, &zero, GroupTag::Alternating, CombinationMode::Multiplicative)
            .unwrap();
        assert!(v.value_f64().abs() <= 1e-12 + v.error_radius_f64());
    }

    #[test]
    fn dv_bound_values() {
        assert!((dobrowolski_voutier(100).unwrap() - 0.0091174485238230750014).abs() < 1e-15);
        assert!((dobrowolski_voutier(16).unwrap() - 0.01243955838782412425).abs() < 1e-15);
        let v = dobrowolski_voutier(3).unwrap();
        assert!(v > 0.0 && (v - 0.00015683859966680528052).abs() < 1e-15);
        assert!(dobrowolski_voutier(2).is_err());
    }

    #[test]
    fn tolerance_retry() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let cs = find_roots(&p, 60).unwrap();
        let v = with_tolerance(&cs, 1e-30, |c| mahler_from_poly(&p, c)).unwrap();
        assert!(v.error_radius_f64() <= 1e-30);
    }
}
