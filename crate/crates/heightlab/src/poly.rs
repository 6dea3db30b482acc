//! Exact integer polynomial arithmetic and the exact integer quantities the
//! height bounds consume: discriminants, Vandermonde products, norms and
//! mod-p irreducibility evidence.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Integer exponent/coefficient vector attached to a combination of
/// conjugates.
pub type ExponentVector = Vec<BigInt>;

pub fn exponents_from_i64(a: &[i64]) -> ExponentVector {
    a.iter().map(|&v| BigInt::from(v)).collect()
}

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// The zero polynomial is a tagged value (`coeffs` is `None`); for any other
/// polynomial the coefficient list is non-empty with a nonzero leading entry,
/// constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Option<Vec<BigInt>>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: None }
    }

    /// Builds a polynomial from coefficients (constant term first), stripping
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            IntPoly::zero()
        } else {
            IntPoly {
                coeffs: Some(coeffs),
            }
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_none()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.as_ref().map(|c| c.len() - 1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs
            .as_ref()
            .and_then(|c| c.get(i).cloned())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.coeffs.as_deref().unwrap_or(&[])
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs
            .as_ref()
            .map(|c| c.last().unwrap().clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, q: &IntPoly) -> IntPoly {
        let a = self.coeffs();
        let b = q.coeffs();
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = BigInt::zero();
            if i < a.len() {
                c += &a[i];
            }
            if i < b.len() {
                c += &b[i];
            }
            out.push(c);
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs().iter().map(|c| -c).collect())
    }

    pub fn sub(&self, q: &IntPoly) -> IntPoly {
        self.add(&q.neg())
    }

    pub fn mul(&self, q: &IntPoly) -> IntPoly {
        if self.is_zero() || q.is_zero() {
            return IntPoly::zero();
        }
        let a = self.coeffs();
        let b = q.coeffs();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn derivative(&self) -> IntPoly {
        let c = self.coeffs();
        if c.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            c.iter()
                .enumerate()
                .skip(1)
                .map(|(i, ci)| ci * BigInt::from(i))
                .collect(),
        )
    }

    /// Serializes to a JSON array of decimal-string coefficients, constant
    /// term first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs()
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<IntPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let s = item
                .as_str()
                .ok_or_else(|| Error::Parse("coefficients must be decimal strings".into()))?;
            let c = s
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

/// Fraction-free determinant (Bareiss) of a square integer matrix.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Resultant of two nonzero polynomials via the Sylvester matrix.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let n = p
        .degree()
        .ok_or_else(|| Error::domain("resultant of the zero polynomial"))?;
    let m = q
        .degree()
        .ok_or_else(|| Error::domain("resultant of the zero polynomial"))?;
    if n == 0 && m == 0 {
        return Ok(BigInt::one());
    }
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // m rows of p's coefficients (descending), then n rows of q's.
    for r in 0..m {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            mat[m + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Discriminant with the convention
/// `disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPoly) -> Result<BigInt> {
    let n = p
        .degree()
        .ok_or_else(|| Error::domain("discriminant needs degree >= 2"))?;
    if n < 2 {
        return Err(Error::domain("discriminant needs degree >= 2"));
    }
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading();
    let d = &res / &lc;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// `prod_{i<j} (a_j - a_i)` over ordered pairs.
pub fn vandermonde_product(a: &[BigInt]) -> Result<BigInt> {
    if a.len() < 2 {
        return Err(Error::domain("vandermonde product needs length >= 2"));
    }
    let mut v = BigInt::one();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            v *= &a[j] - &a[i];
            if v.is_zero() {
                return Ok(v);
            }
        }
    }
    Ok(v)
}

/// Exact perfect-square test via integer square root.
pub fn is_perfect_square(m: &BigInt) -> bool {
    if m.is_negative() {
        return false;
    }
    let r = m.sqrt();
    &r * &r == *m
}

/// `|constant coefficient / leading coefficient|` of `p` as an exact rational
/// (the absolute norm of a root when `p` is irreducible).
pub fn norm_of_root(p: &IntPoly) -> Result<BigRational> {
    match p.degree() {
        Some(d) if d >= 1 => Ok(BigRational::new(p.coeff(0), p.leading()).abs()),
        _ => Err(Error::domain("norm_of_root needs degree >= 1")),
    }
}

/// Outcome of the mod-p irreducibility probe.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum IrreducibilityVerdict {
    ProvedIrreducible,
    Inconclusive,
}

/// Per-prime factor-degree evidence for irreducibility over the integers.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IrreducibilityEvidence {
    pub verdict: IrreducibilityVerdict,
    /// (prime, multiset of irreducible factor degrees mod that prime);
    /// primes where the reduction was not squarefree carry an empty list.
    pub per_prime: Vec<(u64, Vec<usize>)>,
    /// Intersection over useful primes of the achievable factor degree sets.
    pub degree_set: Vec<usize>,
}

mod modp {
    //! Dense polynomial arithmetic over F_p for word-sized primes.

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mulmod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + (ai as u128 * bj as u128 % p as u128) as u64) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lead = powmod_u64(m[dm], p - 2, p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let factor = (r[dr] as u128 * inv_lead as u128 % p as u128) as u64;
            if factor != 0 {
                for (k, &mk) in m.iter().enumerate() {
                    let idx = dr - dm + k;
                    let sub = (factor as u128 * mk as u128 % p as u128) as u64;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        // make monic
        if let Some(&lc) = a.last() {
            let inv = powmod_u64(lc, p - 2, p);
            for c in &mut a {
                *c = (*c as u128 * inv as u128 % p as u128) as u64;
            }
        }
        a
    }

    pub fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    }

    /// x^(p^k) mod m, iterating frobenius via repeated powering of h.
    pub fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mulmod(&acc, &b, p), m, p);
            }
            b = rem(&mulmod(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (c as u128 * (i as u64 % p) as u128 % p as u128) as u64)
            .collect();
        trim(&mut out);
        out
    }

    /// Distinct-degree factorization degrees of a squarefree monic-able f.
    /// Returns the multiset of irreducible factor degrees.
    pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
        let mut g = f.to_vec();
        trim(&mut g);
        let mut degrees = Vec::new();
        let x = vec![0u64, 1u64];
        let mut h = rem(&x, &g, p);
        let mut d = 0usize;
        while g.len() > 1 {
            d += 1;
            if 2 * d > g.len() - 1 {
                degrees.push(g.len() - 1);
                break;
            }
            h = poly_powmod(&h, p, &g, p);
            // gcd(h - x, g)
            let mut hx = h.clone();
            if hx.len() < 2 {
                hx.resize(2, 0);
            }
            hx[1] = (hx[1] + p - 1) % p;
            trim(&mut hx);
            let gd = gcd(&hx, &g, p);
            if gd.len() > 1 {
                let total = gd.len() - 1;
                for _ in 0..total / d {
                    degrees.push(d);
                }
                g = divide_exact(&g, &gd, p);
                h = rem(&h, &g, p);
            }
        }
        degrees.sort_unstable();
        degrees
    }

    pub fn divide_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        // schoolbook division; remainder is known to be zero
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv_lead = powmod_u64(b[db], p - 2, p);
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        while r.len() > db {
            let dr = r.len() - 1;
            let factor = (r[dr] as u128 * inv_lead as u128 % p as u128) as u64;
            q[dr - db] = factor;
            for (k, &bk) in b.iter().enumerate() {
                let idx = dr - db + k;
                let sub = (factor as u128 * bk as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        q
    }
}

fn small_primes(count: usize, skip: impl Fn(u64) -> bool) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut cand = 2u64;
    while primes.len() < count {
        if (2..cand).take_while(|d| d * d <= cand).all(|d| cand % d != 0) && !skip(cand) {
            primes.push(cand);
        }
        cand += 1;
    }
    primes
}

/// All degrees realizable as sums of a sub-multiset of `degrees`.
fn achievable_degrees(degrees: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for t in (0..=n.saturating_sub(d)).rev() {
            if reach[t] {
                reach[t + d] = true;
            }
        }
    }
    reach
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// Factors `p` modulo each of the first `prime_budget` primes not dividing
/// the leading coefficient and reports whether the degree evidence proves
/// irreducibility over the integers.
pub fn irreducibility_evidence(
    p: &IntPoly,
    prime_budget: usize,
) -> Result<IrreducibilityEvidence> {
    let n = p
        .degree()
        .ok_or_else(|| Error::domain("irreducibility of the zero polynomial"))?;
    if n >= 2 && discriminant(p)?.is_zero() {
        return Err(Error::domain(
            "polynomial is not squarefree; factor out repeated roots first",
        ));
    }
    let lc = p.leading();
    let primes = small_primes(prime_budget, |q| (&lc % q).is_zero());
    let mut per_prime = Vec::new();
    let mut intersection: Option<BTreeSet<usize>> = None;
    let mut proved = false;
    for q in primes {
        let fp: Vec<u64> = p
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(q)).try_into().unwrap())
            .collect();
        let mut fp = fp;
        modp::trim(&mut fp);
        if fp.len() != n + 1 {
            // should not happen: lc not divisible by q
            per_prime.push((q, vec![]));
            continue;
        }
        // squarefree mod q?
        let der = modp::derivative(&fp, q);
        if der.is_empty() || modp::gcd(&fp, &der, q).len() > 1 {
            per_prime.push((q, vec![]));
            continue;
        }
        let degrees = modp::factor_degrees(&fp, q);
        if degrees == [n] {
            proved = true;
        }
        let reach = achievable_degrees(&degrees, n);
        intersection = Some(match intersection {
            None => reach,
            Some(old) => old.intersection(&reach).cloned().collect(),
        });
        per_prime.push((q, degrees));
    }
    let degree_set: Vec<usize> = intersection.clone().unwrap_or_default().into_iter().collect();
    if !proved {
        if let Some(ref set) = intersection {
            if set.iter().all(|&d| d == 0 || d == n) {
                proved = true;
            }
        }
    }
    Ok(IrreducibilityEvidence {
        verdict: if proved {
            IrreducibilityVerdict::ProvedIrreducible
        } else {
            IrreducibilityVerdict::Inconclusive
        },
        per_prime,
        degree_set,
    })
}
