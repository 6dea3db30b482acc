//! Certified complex root isolation.
//!
//! Roots are located by simultaneous (Aberth-Ehrlich) iteration in
//! arbitrary-precision floating point, then certified a posteriori: for a
//! squarefree polynomial of degree `n`, the disk centered at `c` with radius
//! `n |p(c)| / |p'(c)|` contains at least one root, so `n` pairwise disjoint
//! disks of that shape isolate all roots. Working precision starts at 128
//! bits and doubles until the certification and the radius target succeed.

use astro_float::{BigFloat, RoundingMode};
use num_traits::{Signed, Zero};

use crate::ball::{
    bigfloat_to_f64, bigfloat_to_string, bigint_to_bigfloat, pow2, ComplexBall, Ctx, RAD_PREC,
};
use crate::poly::{discriminant, IntPoly};
use crate::{Error, Result};

const START_PREC: usize = 128;
const MAX_PREC: usize = 8192;
const RM: RoundingMode = RoundingMode::ToEven;

/// Pairwise disjoint disks, in (re, im) lexicographic center order, each
/// certified to contain exactly one root of `source`.
#[derive(Clone, Debug)]
pub struct ConjugateSet {
    source: IntPoly,
    enclosures: Vec<ComplexBall>,
    precision_bits: usize,
    target_bits: usize,
}

impl ConjugateSet {
    pub fn source(&self) -> &IntPoly {
        &self.source
    }

    pub fn enclosures(&self) -> &[ComplexBall] {
        &self.enclosures
    }

    pub fn n(&self) -> usize {
        self.enclosures.len()
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut ctx = Ctx::new(self.precision_bits);
        let roots: Vec<serde_json::Value> = self
            .enclosures
            .iter()
            .map(|e| {
                serde_json::json!({
                    "re": bigfloat_to_string(&e.re, &mut ctx),
                    "im": bigfloat_to_string(&e.im, &mut ctx),
                    "radius": bigfloat_to_string(&e.rad, &mut ctx),
                })
            })
            .collect();
        serde_json::json!({
            "precision_bits": self.precision_bits,
            "roots": roots,
        })
    }
}

/// Plain complex arithmetic on midpoints, used only inside the iteration;
/// all certified statements go through [`ComplexBall`].
#[derive(Clone, Debug)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Cx {
    fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Cx {
            re: BigFloat::from_f64(re, p),
            im: BigFloat::from_f64(im, p),
        }
    }

    fn sub(&self, o: &Cx, p: usize) -> Cx {
        Cx {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
        }
    }

    fn add(&self, o: &Cx, p: usize) -> Cx {
        Cx {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
        }
    }

    fn mul(&self, o: &Cx, p: usize) -> Cx {
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        Cx {
            re: ac.sub(&bd, p, RM),
            im: ad.add(&bc, p, RM),
        }
    }

    fn div(&self, o: &Cx, p: usize) -> Cx {
        let den = o
            .re
            .mul(&o.re, p, RM)
            .add(&o.im.mul(&o.im, p, RM), p, RM);
        let num = self.mul(
            &Cx {
                re: o.re.clone(),
                im: o.im.neg(),
            },
            p,
        );
        Cx {
            re: num.re.div(&den, p, RM),
            im: num.im.div(&den, p, RM),
        }
    }

    fn abs_sq(&self, p: usize) -> BigFloat {
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }
}

fn horner(coeffs: &[Cx], z: &Cx, p: usize) -> Cx {
    let mut acc = coeffs.last().expect("nonempty").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(z, p).add(c, p);
    }
    acc
}

/// Ball Horner evaluation with an exact complex point.
fn horner_ball(poly: &IntPoly, z: &ComplexBall, p: usize) -> ComplexBall {
    let coeffs = poly.coeffs();
    let mut acc = ComplexBall::from_bigint(coeffs.last().expect("nonempty"));
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(z, p).add(&ComplexBall::from_bigint(c), p);
    }
    acc
}

/// An exponent `e` with `1 + max |a_i| / |a_n| <= 2^e` (root radius bound).
fn cauchy_exponent(poly: &IntPoly) -> i64 {
    let lead_bits = poly.leading().abs().bits() as i64;
    let mut max_bits = 0i64;
    for c in poly.coeffs() {
        max_bits = max_bits.max(c.abs().bits() as i64);
    }
    (max_bits - lead_bits + 2).max(2)
}

fn initial_points(n: usize, radius_exp: i64, p: usize) -> Vec<Cx> {
    let r = bigfloat_to_f64(&pow2(radius_exp.min(512)));
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.41;
            Cx::from_f64(r * theta.cos(), r * theta.sin(), p)
        })
        .collect()
}

/// One full pass of Aberth-Ehrlich iterations at precision `p`; returns the
/// improved centers (or the inputs when the iteration degenerates).
fn aberth_pass(pc: &[Cx], dpc: &[Cx], z: &mut [Cx], p: usize) -> bool {
    let n = z.len();
    let eps = pow2(-(p as i64) + 8);
    let max_iter = 60 + p / 2;
    for _ in 0..max_iter {
        let mut max_rel = BigFloat::from_i64(0, RAD_PREC);
        let old = z.to_vec();
        for k in 0..n {
            let fz = horner(pc, &old[k], p);
            let dfz = horner(dpc, &old[k], p);
            let newton = fz.div(&dfz, p);
            let mut sum = Cx::from_f64(0.0, 0.0, p);
            for j in 0..n {
                if j != k {
                    let d = old[k].sub(&old[j], p);
                    sum = sum.add(&Cx::from_f64(1.0, 0.0, p).div(&d, p), p);
                }
            }
            let denom = Cx::from_f64(1.0, 0.0, p).sub(&newton.mul(&sum, p), p);
            let w = newton.div(&denom, p);
            let cand = old[k].sub(&w, p);
            if !cand.is_finite() {
                continue;
            }
            // relative step size, squared
            let scale = old[k]
                .abs_sq(p)
                .add(&BigFloat::from_i64(1, p), p, RM);
            let rel = w.abs_sq(p).div(&scale, p, RM);
            if rel.cmp(&max_rel).map_or(false, |c| c > 0) {
                max_rel = rel;
            }
            z[k] = cand;
        }
        let eps_sq = eps.mul(&eps, RAD_PREC, RM);
        if max_rel.cmp(&eps_sq).map_or(false, |c| c <= 0) {
            return true;
        }
    }
    false
}

/// Attempts certification of the current centers at precision `p`; on
/// success returns disks sorted in canonical order.
fn certify(
    poly: &IntPoly,
    deriv: &IntPoly,
    z: &[Cx],
    p: usize,
    target_bits: usize,
) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let nf = BigFloat::from_i64(n as i64, p);
    let mut disks = Vec::with_capacity(n);
    for c in z {
        let center = ComplexBall::exact(c.re.clone(), c.im.clone());
        let fv = horner_ball(poly, &center, p).abs(p).upper(p);
        let dv = horner_ball(deriv, &center, p).abs(p).lower(p);
        if !dv.is_positive() || dv.is_zero() {
            return None;
        }
        let rad = nf
            .mul(&fv, RAD_PREC, RoundingMode::FromZero)
            .div(&dv, RAD_PREC, RoundingMode::FromZero)
            .mul(
                &pow2(0).add(&pow2(-20), RAD_PREC, RoundingMode::FromZero),
                RAD_PREC,
                RoundingMode::FromZero,
            );
        if rad.is_negative() || rad.is_nan() || rad.is_inf() {
            return None;
        }
        // radius target: rad <= 2^-target * max(1, |center|)
        let mag = center.abs(p).lower(p);
        let scale = if mag.cmp(&BigFloat::from_i64(1, p)).map_or(false, |c| c > 0) {
            mag
        } else {
            BigFloat::from_i64(1, p)
        };
        let cap = pow2(-(target_bits as i64)).mul(&scale, RAD_PREC, RoundingMode::ToZero);
        if rad.cmp(&cap).map_or(true, |c| c > 0) {
            return None;
        }
        disks.push(ComplexBall {
            re: c.re.clone(),
            im: c.im.clone(),
            rad,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if !disks[i].disjoint(&disks[j], p) {
                return None;
            }
        }
    }
    disks.sort_by(|a, b| {
        a.re.cmp(&b.re)
            .unwrap_or(0)
            .cmp(&0)
            .then(a.im.cmp(&b.im).unwrap_or(0).cmp(&0))
            .then(a.rad.cmp(&b.rad).unwrap_or(0).cmp(&0))
    });
    Some(disks)
}

/// Isolates all complex roots of `p` in pairwise disjoint certified disks
/// with radii at most `2^-target_bits * max(1, |center|)`.
pub fn find_roots(p: &IntPoly, target_bits: usize) -> Result<ConjugateSet> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::domain("cannot isolate roots of the zero polynomial"))?;
    if deg < 1 {
        return Err(Error::domain("need degree >= 1"));
    }
    if deg >= 2 {
        let disc = discriminant(p)?;
        if disc.is_zero() {
            return Err(Error::domain(
                "polynomial is not squarefree (vanishing discriminant: p and p' share a factor)",
            ));
        }
    }
    let deriv = p.derivative();
    let rexp = cauchy_exponent(p);
    let mut prec = START_PREC;
    let mut z: Option<Vec<Cx>> = None;
    loop {
        let pc: Vec<Cx> = p
            .coeffs()
            .iter()
            .map(|c| Cx {
                re: bigint_to_bigfloat(c),
                im: BigFloat::from_i64(0, prec),
            })
            .collect();
        let dpc: Vec<Cx> = deriv
            .coeffs()
            .iter()
            .map(|c| Cx {
                re: bigint_to_bigfloat(c),
                im: BigFloat::from_i64(0, prec),
            })
            .collect();
        let mut pts = match z {
            Some(prev) => prev,
            None => initial_points(deg, rexp, prec),
        };
        aberth_pass(&pc, &dpc, &mut pts, prec);
        if let Some(disks) = certify(p, &deriv, &pts, prec, target_bits) {
            return Ok(ConjugateSet {
                source: p.clone(),
                enclosures: disks,
                precision_bits: prec,
                target_bits,
            });
        }
        if prec >= MAX_PREC {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                context: format!("root certification of degree-{deg} polynomial"),
            });
        }
        z = Some(pts);
        prec *= 2;
    }
}

/// Shrinks every radius by at least `2^extra_bits`, keeping root indices.
pub fn refine(cs: &ConjugateSet, extra_bits: usize) -> Result<ConjugateSet> {
    if extra_bits == 0 {
        return Ok(cs.clone());
    }
    let fresh = find_roots(&cs.source, cs.target_bits + extra_bits)?;
    // match each old disk with the fresh disk whose center it contains, so
    // indices never move even if canonical sorting were ambiguous
    let p = fresh.precision_bits;
    let mut ordered: Vec<Option<ComplexBall>> = vec![None; cs.n()];
    for disk in &fresh.enclosures {
        let mut placed = false;
        for (i, old) in cs.enclosures.iter().enumerate() {
            if old.contains_center_of(disk, p) {
                if ordered[i].is_some() {
                    return Err(Error::domain("refinement matched two roots to one disk"));
                }
                ordered[i] = Some(disk.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::domain("refined root escaped its original disk"));
        }
    }
    Ok(ConjugateSet {
        source: cs.source.clone(),
        enclosures: ordered.into_iter().map(|d| d.unwrap()).collect(),
        precision_bits: p,
        target_bits: cs.target_bits + extra_bits,
    })
}
