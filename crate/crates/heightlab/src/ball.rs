//! Ball arithmetic over arbitrary-precision floats.
//!
//! A [`RealBall`] is a midpoint/radius pair certifying that the represented
//! real number lies in `[mid - rad, mid + rad]`. A [`ComplexBall`] is a disk
//! in the complex plane. Midpoints are computed at the working precision of
//! the surrounding [`Ctx`]; radii are tracked at a fixed small precision and
//! systematically inflated so that every rounding step stays inside the
//! certified interval.

use astro_float::{BigFloat, Consts, Exponent, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

/// Precision at which radii are tracked.
pub const RAD_PREC: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working-precision context: precision in bits plus a shared constants cache.
pub struct Ctx {
    pub prec: usize,
    pub cc: Consts,
}

impl Ctx {
    pub fn new(prec: usize) -> Self {
        Ctx {
            prec,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }
}

/// `2^e` as a `BigFloat`.
pub fn pow2(e: i64) -> BigFloat {
    let mut f = BigFloat::from_word(1, RAD_PREC);
    f.set_exponent((e + 1) as Exponent);
    f
}

/// An upper bound for the rounding error of a single operation that produced
/// `x` at precision `p` (two ulps, to be safe).
fn ulp(x: &BigFloat, p: usize) -> BigFloat {
    if x.is_zero() || x.is_nan() {
        return BigFloat::new(RAD_PREC);
    }
    match x.exponent() {
        Some(e) => pow2(e as i64 - p as i64 + 1),
        None => BigFloat::new(RAD_PREC),
    }
}

/// Inflate a radius bound so that its own rounding error is covered.
fn bump(r: &BigFloat) -> BigFloat {
    // (1 + 2^-32) is exact at RAD_PREC; radius ops carry ~2^-63 relative
    // error per step, far below the inflation.
    let one_plus = pow2(0).add(&pow2(-32), RAD_PREC, RoundingMode::FromZero);
    r.mul(&one_plus, RAD_PREC, RoundingMode::FromZero)
}

fn radd(a: &BigFloat, b: &BigFloat) -> BigFloat {
    bump(&a.add(b, RAD_PREC, RoundingMode::FromZero))
}

fn rmul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    bump(&a.mul(b, RAD_PREC, RoundingMode::FromZero))
}

/// Exact conversion of a big integer to a float (no rounding).
pub fn bigint_to_bigfloat(n: &BigInt) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    // `add_full_prec` misbehaves on zero operands, so zeros are skipped and
    // the accumulator is seeded with the leading (nonzero) digit.
    if digits.is_empty() {
        return BigFloat::from_i64(0, RAD_PREC);
    }
    let base = pow2(64);
    let mut acc = BigFloat::from_u128(*digits.last().unwrap() as u128, 128);
    for d in digits.iter().rev().skip(1) {
        acc = acc.mul_full_prec(&base);
        if *d != 0 {
            acc = acc.add_full_prec(&BigFloat::from_u128(*d as u128, 128));
        }
    }
    if sign == num_bigint::Sign::Minus {
        acc.inv_sign();
    }
    acc
}

/// Best-effort conversion to `f64` (for reports; never used in certification).
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (words, _n, sign, e, _) = x.as_raw_parts().expect("finite");
    let mut frac = 0.0f64;
    for (i, w) in words.iter().rev().take(2).enumerate() {
        frac += (*w as f64) * (2f64).powi(-64 * (i as i32 + 1));
    }
    let mut v = frac * (2f64).powi(e);
    if sign == Sign::Neg {
        v = -v;
    }
    v
}

/// A certified real interval `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct RealBall {
    pub mid: BigFloat,
    pub rad: BigFloat,
}

impl RealBall {
    pub fn zero() -> Self {
        RealBall {
            mid: BigFloat::from_i64(0, RAD_PREC),
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn from_i64(v: i64, p: usize) -> Self {
        RealBall {
            mid: BigFloat::from_i64(v, p.max(RAD_PREC)),
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        RealBall {
            mid: bigint_to_bigfloat(v),
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn from_rational(q: &BigRational, p: usize) -> Self {
        if q.is_zero() {
            return RealBall::zero();
        }
        let num = bigint_to_bigfloat(q.numer());
        let den = bigint_to_bigfloat(q.denom());
        let mid = num.div(&den, p, RM);
        let rad = ulp(&mid, p);
        RealBall { mid, rad }
    }

    /// Exact midpoint ball (radius zero); caller asserts exactness.
    pub fn exact(mid: BigFloat) -> Self {
        RealBall {
            mid,
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn with_rad(mid: BigFloat, rad: BigFloat) -> Self {
        RealBall { mid, rad }
    }

    /// A certified lower bound of the interval.
    pub fn lower(&self, p: usize) -> BigFloat {
        let t = self.mid.sub(&self.rad, p, RM);
        t.sub(&ulp(&t, p), p, RM).sub(&ulp(&t, p), p, RM)
    }

    /// A certified upper bound of the interval.
    pub fn upper(&self, p: usize) -> BigFloat {
        let t = self.mid.add(&self.rad, p, RM);
        t.add(&ulp(&t, p), p, RM).add(&ulp(&t, p), p, RM)
    }

    pub fn neg(&self) -> Self {
        RealBall {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        let mid = self.mid.add(&o.mid, p, RM);
        let rad = radd(&radd(&self.rad, &o.rad), &ulp(&mid, p));
        RealBall { mid, rad }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        self.add(&o.neg(), p)
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let mid = self.mid.mul(&o.mid, p, RM);
        let am = self.mid.abs();
        let bm = o.mid.abs();
        let rad = radd(
            &radd(&rmul(&am, &o.rad), &rmul(&bm, &self.rad)),
            &radd(&rmul(&self.rad, &o.rad), &ulp(&mid, p)),
        );
        RealBall { mid, rad }
    }

    /// Division; the divisor interval must exclude zero.
    pub fn div(&self, o: &Self, p: usize) -> Result<Self> {
        let bm = o.mid.abs();
        if bm.cmp(&o.rad).map_or(true, |c| c <= 0) {
            return Err(Error::domain("division by an interval containing zero"));
        }
        let mid = self.mid.div(&o.mid, p, RM);
        // |a/b - am/bm| <= (|am| rb + |bm| ra) / (|bm| (|bm| - rb))
        let am = self.mid.abs();
        let num = radd(&rmul(&am, &o.rad), &rmul(&bm, &self.rad));
        let den = bm.mul(
            &bm.sub(&o.rad, RAD_PREC, RoundingMode::ToZero),
            RAD_PREC,
            RoundingMode::ToZero,
        );
        let rad = radd(&bump(&num.div(&den, RAD_PREC, RoundingMode::FromZero)), &ulp(&mid, p));
        Ok(RealBall { mid, rad })
    }

    /// Absolute value of the interval.
    pub fn abs(&self, p: usize) -> Self {
        let am = self.mid.abs();
        if am.cmp(&self.rad).map_or(false, |c| c >= 0) {
            return RealBall {
                mid: am,
                rad: self.rad.clone(),
            };
        }
        // interval straddles zero: |.| lands in [0, |mid| + rad]
        let hi = radd(&am, &self.rad);
        let half = hi.mul(&pow2(-1), p, RM);
        RealBall {
            mid: half.clone(),
            rad: bump(&half),
        }
    }

    fn from_endpoints(flo: &BigFloat, fhi: &BigFloat, p: usize) -> Self {
        let mid = flo.add(fhi, p, RM).mul(&pow2(-1), p, RM);
        let d = fhi.sub(flo, RAD_PREC, RoundingMode::FromZero);
        let rad = radd(
            &radd(&bump(&d.mul(&pow2(-1), RAD_PREC, RoundingMode::FromZero)), &ulp(&mid, p)),
            &radd(&ulp(flo, p), &ulp(fhi, p)),
        );
        RealBall { mid, rad }
    }

    /// Natural logarithm; the interval must be strictly positive.
    pub fn ln(&self, ctx: &mut Ctx) -> Result<Self> {
        let p = ctx.prec;
        let lo = self.lower(p);
        if !lo.is_positive() || lo.is_zero() {
            return Err(Error::domain("log of an interval touching zero"));
        }
        let hi = self.upper(p);
        let flo = lo.ln(p, RM, &mut ctx.cc);
        let fhi = hi.ln(p, RM, &mut ctx.cc);
        Ok(Self::from_endpoints(&flo, &fhi, p))
    }

    /// Square root; negative parts of the interval are clamped to zero.
    pub fn sqrt(&self, p: usize) -> Result<Self> {
        let hi = self.upper(p);
        if hi.is_negative() {
            return Err(Error::domain("sqrt of a negative interval"));
        }
        let mut lo = self.lower(p);
        if lo.is_negative() {
            lo = BigFloat::from_i64(0, p);
        }
        let flo = lo.sqrt(p, RM);
        let fhi = hi.sqrt(p, RM);
        Ok(Self::from_endpoints(&flo, &fhi, p))
    }

    /// `log(max(1, .))`, bracketing enclosures that straddle 1.
    pub fn log_max1(&self, ctx: &mut Ctx) -> Result<Self> {
        let p = ctx.prec;
        let one = BigFloat::from_i64(1, p);
        let hi = self.upper(p);
        if hi.cmp(&one).map_or(false, |c| c <= 0) {
            return Ok(RealBall::zero());
        }
        let lo = self.lower(p);
        if lo.cmp(&one).map_or(false, |c| c >= 0) {
            return self.ln(ctx);
        }
        // straddles 1: contribution lies in [0, log hi]
        let top = hi.ln(p, RM, &mut ctx.cc);
        let top = top.add(&ulp(&top, p), p, RM);
        let half = top.mul(&pow2(-1), p, RM);
        Ok(RealBall {
            mid: half.clone(),
            rad: bump(&bump(&half)),
        })
    }

    pub fn scale_pow2(&self, e: i64, p: usize) -> Self {
        let f = pow2(e);
        RealBall {
            mid: self.mid.mul(&f, p, RM),
            rad: rmul(&self.rad, &f),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs().cmp(&self.rad).map_or(true, |c| c <= 0)
    }

    /// True when the whole interval is `>=` the whole interval of `o`.
    pub fn certainly_ge(&self, o: &Self, p: usize) -> bool {
        self.lower(p).cmp(&o.upper(p)).map_or(false, |c| c >= 0)
    }

    pub fn certainly_le(&self, o: &Self, p: usize) -> bool {
        self.upper(p).cmp(&o.lower(p)).map_or(false, |c| c <= 0)
    }

    pub fn to_f64(&self) -> f64 {
        bigfloat_to_f64(&self.mid)
    }

    pub fn rad_f64(&self) -> f64 {
        bigfloat_to_f64(&self.rad)
    }

    /// Decimal rendering of the midpoint.
    pub fn mid_string(&self, ctx: &mut Ctx) -> String {
        bigfloat_to_string(&self.mid, ctx)
    }
}

pub fn bigfloat_to_string(x: &BigFloat, ctx: &mut Ctx) -> String {
    x.format(Radix::Dec, RM, &mut ctx.cc)
        .unwrap_or_else(|_| format!("{}", x))
}

pub fn parse_bigfloat(s: &str, ctx: &mut Ctx) -> Result<BigFloat> {
    let f = BigFloat::parse(s, Radix::Dec, ctx.prec, RM, &mut ctx.cc);
    if f.is_nan() {
        return Err(Error::Parse(format!("invalid number: {s}")));
    }
    Ok(f)
}

/// A certified complex disk `|z - (re + i im)| <= rad`.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub re: BigFloat,
    pub im: BigFloat,
    pub rad: BigFloat,
}

impl ComplexBall {
    pub fn zero() -> Self {
        ComplexBall {
            re: BigFloat::from_i64(0, RAD_PREC),
            im: BigFloat::from_i64(0, RAD_PREC),
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        ComplexBall {
            re: bigint_to_bigfloat(v),
            im: BigFloat::from_i64(0, RAD_PREC),
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn exact(re: BigFloat, im: BigFloat) -> Self {
        ComplexBall {
            re,
            im,
            rad: BigFloat::from_i64(0, RAD_PREC),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        let re = self.re.add(&o.re, p, RM);
        let im = self.im.add(&o.im, p, RM);
        let rad = radd(
            &radd(&self.rad, &o.rad),
            &radd(&ulp(&re, p), &ulp(&im, p)),
        );
        ComplexBall { re, im, rad }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        self.add(&o.neg(), p)
    }

    /// A cheap upper bound for the modulus of the center.
    fn center_bound(&self) -> BigFloat {
        radd(&self.re.abs(), &self.im.abs())
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        let re = ac.sub(&bd, p, RM);
        let im = ad.add(&bc, p, RM);
        let m1 = self.center_bound();
        let m2 = o.center_bound();
        let cross = radd(&rmul(&m1, &o.rad), &rmul(&m2, &self.rad));
        let rr = rmul(&self.rad, &o.rad);
        let rounding = radd(
            &radd(&ulp(&ac, p), &ulp(&bd, p)),
            &radd(
                &radd(&ulp(&ad, p), &ulp(&bc, p)),
                &radd(&ulp(&re, p), &ulp(&im, p)),
            ),
        );
        ComplexBall {
            re,
            im,
            rad: radd(&radd(&cross, &rr), &rounding),
        }
    }

    /// Multiply by an exact integer scalar.
    pub fn scale_bigint(&self, k: &BigInt, p: usize) -> Self {
        let kf = bigint_to_bigfloat(k);
        let re = self.re.mul(&kf, p, RM);
        let im = self.im.mul(&kf, p, RM);
        let rad = radd(
            &rmul(&self.rad, &kf.abs()),
            &radd(&ulp(&re, p), &ulp(&im, p)),
        );
        ComplexBall { re, im, rad }
    }

    /// Certified modulus of every point of the disk.
    pub fn abs(&self, p: usize) -> RealBall {
        // |center| as a ball, then widen by the disk radius.
        let a = RealBall::exact(self.re.clone());
        let b = RealBall::exact(self.im.clone());
        let s = a.mul(&a, p).add(&b.mul(&b, p), p);
        let m = s.sqrt(p).expect("sum of squares is nonnegative");
        RealBall {
            mid: m.mid,
            rad: radd(&m.rad, &self.rad),
        }
    }

    /// True if the disks certifiably do not intersect.
    pub fn disjoint(&self, o: &Self, p: usize) -> bool {
        let d = self.sub(o, p);
        let dist = d.abs(p);
        dist.lower(p)
            .cmp(&radd(&self.rad, &o.rad))
            .map_or(false, |c| c > 0)
    }

    /// True if `pt`'s center lies within this disk (used for index tracking).
    pub fn contains_center_of(&self, o: &Self, p: usize) -> bool {
        let d = self.sub(&ComplexBall::exact(o.re.clone(), o.im.clone()), p);
        let dist = d.abs(p);
        dist.upper(p).cmp(&self.rad).map_or(false, |c| c <= 0)
            || dist.lower(p).cmp(&self.rad).map_or(false, |c| c <= 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn bigint_roundtrip() {
        let n = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let f = bigint_to_bigfloat(&n);
        let back = bigfloat_to_f64(&f);
        assert!((back - 1.2345678901234568e29).abs() / 1.2345678901234568e29 < 1e-14);
    }

    #[test]
    fn ln_of_e_interval() {
        let mut ctx = Ctx::new(128);
        let x = RealBall::from_rational(&BigRational::from_f64(2.718281828459045).unwrap(), 128);
        let l = x.ln(&mut ctx).unwrap();
        assert!((l.to_f64() - 1.0).abs() < 1e-15);
        assert!(l.rad_f64() < 1e-30);
    }

    #[test]
    fn straddling_abs_brackets() {
        let x = RealBall::with_rad(BigFloat::from_i64(0, 128), pow2(-10));
        let a = x.abs(128);
        assert!(!a.mid.is_negative());
        assert!(a.upper(128).cmp(&pow2(-9)).unwrap() <= 0);
    }

    #[test]
    fn complex_mul_contains_product() {
        let p = 128;
        let z = ComplexBall::exact(BigFloat::from_i64(3, p), BigFloat::from_i64(4, p));
        let w = ComplexBall::exact(BigFloat::from_i64(1, p), BigFloat::from_i64(-2, p));
        let zw = z.mul(&w, p);
        // (3+4i)(1-2i) = 11 - 2i
        assert!((bigfloat_to_f64(&zw.re) - 11.0).abs() < 1e-20);
        assert!((bigfloat_to_f64(&zw.im) + 2.0).abs() < 1e-20);
        let m = zw.abs(p);
        assert!((m.to_f64() - (125f64).sqrt()).abs() < 1e-12);
    }
}
