//! The averaged absolute pairing `s_n` on the zero-sum hyperplane, its
//! closed forms, the constant `c_n`, stabilizer averaging and the gap lower
//! bounds for centered integer vectors. Everything here is exact rational
//! arithmetic; floats appear only in the asymptotic-ratio report.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::ball::{bigint_to_bigfloat, bigfloat_to_f64, Ctx};
use crate::perms::{enumerate_group, factorial, GroupTag};
use crate::{Error, Result};

/// An element of the hyperplane of zero-coordinate-sum vectors, with exact
/// rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenteredVector {
    entries: Vec<BigRational>,
}

impl CenteredVector {
    /// Builds from entries; the coordinate sum must vanish exactly.
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("centered vector must be nonempty"));
        }
        let sum: BigRational = entries.iter().sum();
        if !sum.is_zero() {
            return Err(Error::domain(format!(
                "coordinates must sum to zero, got {sum}"
            )));
        }
        Ok(CenteredVector { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Applies a permutation: entry `i` of the result is entry `sigma(i)`.
    pub fn permute(&self, sigma: &crate::perms::Permutation) -> CenteredVector {
        CenteredVector {
            entries: (0..self.n())
                .map(|i| self.entries[sigma.apply(i)].clone())
                .collect(),
        }
    }
}

/// `(1/n) sum |x_j|`.
pub fn l1_norm(x: &CenteredVector) -> BigRational {
    let sum: BigRational = x.entries.iter().map(|e| e.abs()).sum();
    sum / BigRational::from(BigInt::from(x.n()))
}

/// Centers an integer vector: `y_j = a_j - (1/n) sum a_i`.
pub fn center(a: &[BigInt]) -> Result<CenteredVector> {
    if a.is_empty() {
        return Err(Error::domain("cannot center an empty vector"));
    }
    let n = BigInt::from(a.len());
    let total: BigInt = a.iter().sum();
    let mean = BigRational::new(total, n);
    CenteredVector::new(
        a.iter()
            .map(|ai| BigRational::from(ai.clone()) - &mean)
            .collect(),
    )
}

/// The two-level vector with value `n/(2h)` on the first `h` slots and
/// `-n/(2(n-h))` on the rest; it has unit `l1` norm.
pub fn z_vector(n: usize, h: usize) -> Result<CenteredVector> {
    if h == 0 || h >= n {
        return Err(Error::domain(format!("need 1 <= h <= n-1, got h={h}, n={n}")));
    }
    let pos = BigRational::new(BigInt::from(n), BigInt::from(2 * h));
    let neg = BigRational::new(-BigInt::from(n), BigInt::from(2 * (n - h)));
    let mut entries = vec![pos; h];
    entries.resize(n, neg);
    CenteredVector::new(entries)
}

/// Clears denominators: returns the integer-scaled entries and the common
/// scale factor.
fn to_scaled_ints(entries: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut scale = BigInt::one();
    for e in entries {
        scale = scale.lcm(e.denom());
    }
    let scaled = entries
        .iter()
        .map(|e| e.numer() * (&scale / e.denom()))
        .collect();
    (scaled, scale)
}

const SN_BRUTE_GUARD: usize = 9;

/// Defining sum of `s_n(x, y)` by direct group enumeration.
///
/// Uses the prefactor `2/n!` over the alternating group; the symmetric
/// variant (prefactor `1/n!`) is provided for oracle comparisons.
pub fn s_n_bruteforce(
    x: &CenteredVector,
    y: &CenteredVector,
    tag: GroupTag,
) -> Result<BigRational> {
    let n = x.n();
    if y.n() != n {
        return Err(Error::domain("mismatched vector lengths"));
    }
    if n > SN_BRUTE_GUARD {
        return Err(Error::domain(format!(
            "brute-force s_n supports n <= {SN_BRUTE_GUARD}"
        )));
    }
    let (xs, dx) = to_scaled_ints(&x.entries);
    let (ys, dy) = to_scaled_ints(&y.entries);
    let mut total = BigInt::zero();
    for sigma in enumerate_group(n, tag)? {
        let mut dot = BigInt::zero();
        for j in 0..n {
            dot += &xs[sigma.apply(j)] * &ys[j];
        }
        total += dot.abs();
    }
    let pref_num = match tag {
        GroupTag::Alternating => BigInt::from(2),
        GroupTag::Symmetric => BigInt::one(),
    };
    Ok(BigRational::new(
        pref_num * total,
        factorial(n) * BigInt::from(n) * dx * dy,
    ))
}

const SUBSET_GUARD: usize = 22;

/// Closed form for `s_n(z^{(n,h)}, y)` by subset-sum enumeration:
/// `n / (2h(n-h)) * C(n,h)^{-1} * sum_{|S|=h} |sum_{j in S} y_j|`.
pub fn s_n_closed_zy(n: usize, h: usize, y: &CenteredVector) -> Result<BigRational> {
    if h == 0 || h >= n {
        return Err(Error::domain("need 1 <= h <= n-1"));
    }
    if y.n() != n {
        return Err(Error::domain("mismatched vector lengths"));
    }
    if n > SUBSET_GUARD {
        return Err(Error::domain(format!(
            "subset enumeration supports n <= {SUBSET_GUARD}"
        )));
    }
    let (ys, dy) = to_scaled_ints(&y.entries);
    // sum |sum_{j in S} y_j| over all h-subsets S in lexicographic order
    let mut idx: Vec<usize> = (0..h).collect();
    let mut total = BigInt::zero();
    loop {
        let s: BigInt = idx.iter().map(|&j| ys[j].clone()).sum();
        total += s.abs();
        let mut i = h;
        while i > 0 && idx[i - 1] == i - 1 + n - h {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for k in i..h {
            idx[k] = idx[k - 1] + 1;
        }
    }
    let binom = binomial(n, h);
    let num = BigInt::from(n) * total;
    let den = BigInt::from(2 * h * (n - h)) * binom * dy;
    Ok(BigRational::new(num, den))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Closed form for `s_n(z^{(n,h)}, z^{(n,k)})`.
pub fn s_n_closed_zz(n: usize, h: usize, k: usize) -> Result<BigRational> {
    if h == 0 || h >= n || k == 0 || k >= n {
        return Err(Error::domain("need 1 <= h, k <= n-1"));
    }
    let facts = factorial_table(n);
    let (num, den) = closed_zz_parts(n, h, k, &facts);
    Ok(BigRational::new(num, den))
}

fn factorial_table(n: usize) -> Vec<BigInt> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(BigInt::one());
    for i in 1..=n {
        t.push(&t[i - 1] * BigInt::from(i));
    }
    t
}

fn binom_t(facts: &[BigInt], n: usize, k: usize) -> BigInt {
    &facts[n] / (&facts[k] * &facts[n - k])
}

/// Unreduced numerator/denominator of the closed `z`/`z` formula.
fn closed_zz_parts(n: usize, h: usize, k: usize, facts: &[BigInt]) -> (BigInt, BigInt) {
    let m = (h * k) / n;
    let num = BigInt::from(n)
        * BigInt::from(n)
        * BigInt::from(h - m)
        * BigInt::from(k - m)
        * binom_t(facts, k, m)
        * binom_t(facts, n - k, h - m);
    let den = BigInt::from(2usize) * BigInt::from(h) * BigInt::from(k)
        * BigInt::from(n - h)
        * BigInt::from(n - k)
        * binom_t(facts, n, h);
    (num, den)
}

/// `c_n = min over 0 < h,k < n of s_n(z^{(n,h)}, z^{(n,k)})`, with the
/// argmin, ties broken by lexicographically smallest `(h, k)`.
pub fn c_n(n: usize) -> Result<(BigRational, (usize, usize))> {
    if n < 2 {
        return Err(Error::domain("c_n needs n >= 2"));
    }
    let facts = factorial_table(n);
    // row minima in parallel, merged in h order so tie-breaks stay
    // lexicographic
    let rows: Vec<(BigInt, BigInt, (usize, usize))> = (1..n)
        .into_par_iter()
        .map(|h| {
            let mut best: Option<(BigInt, BigInt, (usize, usize))> = None;
            for k in 1..n {
                let (num, den) = closed_zz_parts(n, h, k, &facts);
                let better = match &best {
                    None => true,
                    // num/den < bn/bd  <=>  num*bd < bn*den (positive dens)
                    Some((bn, bd, _)) => &num * bd < bn * &den,
                };
                if better {
                    best = Some((num, den, (h, k)));
                }
            }
            best.unwrap()
        })
        .collect();
    let mut best: Option<(BigInt, BigInt, (usize, usize))> = None;
    for (num, den, hk) in rows {
        let better = match &best {
            None => true,
            Some((bn, bd, _)) => &num * bd < bn * &den,
        };
        if better {
            best = Some((num, den, hk));
        }
    }
    let (num, den, hk) = best.unwrap();
    Ok((BigRational::new(num, den), hk))
}

/// `c_n * sqrt(pi n / 2)` as a float (reporting only; the limit is 1).
pub fn asymptotic_ratio(n: usize, cn: &BigRational) -> f64 {
    let mut ctx = Ctx::new(256);
    let pi = ctx.pi();
    let nf = astro_float::BigFloat::from_i64(n as i64, 256);
    let half = astro_float::BigFloat::from_f64(0.5, 256);
    let arg = pi.mul(&nf, 256, astro_float::RoundingMode::ToEven).mul(
        &half,
        256,
        astro_float::RoundingMode::ToEven,
    );
    let root = arg.sqrt(256, astro_float::RoundingMode::ToEven);
    let cnum = bigint_to_bigfloat(cn.numer());
    let cden = bigint_to_bigfloat(cn.denom());
    let cf = cnum.div(&cden, 256, astro_float::RoundingMode::ToEven);
    bigfloat_to_f64(&cf.mul(&root, 256, astro_float::RoundingMode::ToEven))
}

/// Both margins of the sandwich `c_n <= s_n(x,y) / (|x|_1 |y|_1) <= 1`.
#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub ratio: BigRational,
    pub c_n: BigRational,
    pub upper_margin: BigRational,
    pub lower_margin: BigRational,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        !self.upper_margin.is_negative() && !self.lower_margin.is_negative()
    }
}

pub fn sandwich_check(x: &CenteredVector, y: &CenteredVector) -> Result<SandwichReport> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::domain("sandwich needs nonzero vectors"));
    }
    let n = x.n();
    let s = s_n_bruteforce(x, y, GroupTag::Alternating)?;
    let ratio = s / (l1_norm(x) * l1_norm(y));
    let (cn, _) = c_n(n)?;
    let upper_margin = BigRational::one() - &ratio;
    let lower_margin = &ratio - &cn;
    Ok(SandwichReport {
        ratio,
        c_n: cn,
        upper_margin,
        lower_margin,
    })
}

const STAB_GUARD: usize = 8;

/// Averages the orbit of `x` under the alternating-group stabilizer of
/// `{1..h}`; for admissible `x` the result is exactly `z^{(n,h)}`.
pub fn stabilizer_average(x: &CenteredVector, h: usize) -> Result<CenteredVector> {
    let n = x.n();
    if n > STAB_GUARD {
        return Err(Error::domain(format!(
            "stabilizer averaging supports n <= {STAB_GUARD}"
        )));
    }
    if h == 0 || h >= n {
        return Err(Error::domain("need 1 <= h <= n-1"));
    }
    if l1_norm(x) != BigRational::one() {
        return Err(Error::domain("x must have unit l1 norm"));
    }
    for (j, e) in x.entries.iter().enumerate() {
        if j < h {
            if e.is_negative() {
                return Err(Error::domain("x_j must be >= 0 for j <= h"));
            }
        } else if !e.is_negative() {
            return Err(Error::domain("x_j must be < 0 for j > h"));
        }
    }
    let mut acc = vec![BigRational::zero(); n];
    let mut count = 0usize;
    for sigma in enumerate_group(n, GroupTag::Alternating)? {
        if !(0..h).all(|i| sigma.apply(i) < h) {
            continue;
        }
        count += 1;
        for i in 0..n {
            acc[i] += &x.entries[sigma.apply(i)];
        }
    }
    let cnt = BigRational::from(BigInt::from(count));
    CenteredVector::new(acc.into_iter().map(|v| v / &cnt).collect())
}

/// Which gap profile Lemma-style lower bounds apply to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapCase {
    /// All consecutive gaps at least 1.
    Strict,
    /// Gaps at least 1 up to the last pair, which is tied.
    Tied,
}

/// Returns the applicable `l1` lower bound ((n-2)/4 or (n-3)/5) after
/// validating the gap profile; the contract `l1_norm(y) >= bound` is the
/// caller's to check.
pub fn lemma46_lower_bound(y: &CenteredVector, case: GapCase) -> Result<BigRational> {
    let n = y.n();
    if n < 5 {
        return Err(Error::domain("gap lower bounds require n >= 5"));
    }
    let e = &y.entries;
    let one = BigRational::one();
    match case {
        GapCase::Strict => {
            for j in 0..n - 1 {
                if &e[j + 1] - &e[j] < one {
                    return Err(Error::domain(format!("gap below 1 at position {j}")));
                }
            }
            Ok(BigRational::new(BigInt::from(n - 2), BigInt::from(4)))
        }
        GapCase::Tied => {
            for j in 0..n - 2 {
                if &e[j + 1] - &e[j] < one {
                    return Err(Error::domain(format!("gap below 1 at position {j}")));
                }
            }
            if e[n - 2] != e[n - 1] {
                return Err(Error::domain("last two entries must be tied"));
            }
            Ok(BigRational::new(BigInt::from(n - 3), BigInt::from(5)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::exponents_from_i64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn random_centered(rng: &mut ChaCha8Rng, n: usize) -> CenteredVector {
        loop {
            let mut entries: Vec<BigRational> = (0..n - 1)
                .map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=6)))
                .collect();
            let sum: BigRational = entries.iter().sum();
            entries.push(-sum);
            let v = CenteredVector::new(entries).unwrap();
            if !v.is_zero() {
                return v;
            }
        }
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_norm(&z_vector(4, 2).unwrap()), BigRational::one());
        let zero3 = CenteredVector::new(vec![rat(0, 1); 3]).unwrap();
        assert_eq!(l1_norm(&zero3), BigRational::zero());
        let v = CenteredVector::new(vec![rat(3, 1), rat(-1, 1), rat(-1, 1), rat(-1, 1)]).unwrap();
        assert_eq!(l1_norm(&v), rat(3, 2));
    }

    #[test]
    fn center_examples() {
        let c = center(&exponents_from_i64(&[1, 2, 3])).unwrap();
        assert_eq!(c.entries(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let c = center(&exponents_from_i64(&[5, 5, 5])).unwrap();
        assert!(c.is_zero());
        let c = center(&exponents_from_i64(&[0, 1, 2, 4])).unwrap();
        assert_eq!(
            c.entries(),
            &[rat(-7, 4), rat(-3, 4), rat(1, 4), rat(9, 4)]
        );
    }

    #[test]
    fn z_vector_examples() {
        let z = z_vector(4, 2).unwrap();
        assert_eq!(z.entries(), &[rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)]);
        let z = z_vector(3, 1).unwrap();
        assert_eq!(z.entries(), &[rat(3, 2), rat(-3, 4), rat(-3, 4)]);
        for n in 2..=8 {
            for h in 1..n {
                let z = z_vector(n, h).unwrap();
                assert_eq!(l1_norm(&z), BigRational::one());
            }
        }
    }

    #[test]
    fn brute_force_basics() {
        let zero = CenteredVector::new(vec![rat(0, 1); 4]).unwrap();
        let z = z_vector(4, 2).unwrap();
        assert!(s_n_bruteforce(&zero, &z, GroupTag::Alternating)
            .unwrap()
            .is_zero());
        assert_eq!(
            s_n_bruteforce(&z, &z, GroupTag::Alternating).unwrap(),
            rat(1, 3)
        );
    }

    #[test]
    fn s_n_symmetry_and_scale() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4usize, 5, 6] {
            for _ in 0..5 {
                let x = random_centered(&mut rng, n);
                let y = random_centered(&mut rng, n);
                let s_xy = s_n_bruteforce(&x, &y, GroupTag::Alternating).unwrap();
                let s_yx = s_n_bruteforce(&y, &x, GroupTag::Alternating).unwrap();
                assert_eq!(s_xy, s_yx);
                // bilinearity in positive scale
                let c = rat(3, 2);
                let cx = CenteredVector::new(
                    x.entries().iter().map(|e| e * &c).collect(),
                )
                .unwrap();
                let s_cxy = s_n_bruteforce(&cx, &y, GroupTag::Alternating).unwrap();
                assert_eq!(s_cxy, &s_xy * &c);
            }
        }
    }

    #[test]
    fn s_n_group_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [4usize, 5] {
            let x = random_centered(&mut rng, n);
            let y = random_centered(&mut rng, n);
            let s = s_n_bruteforce(&x, &y, GroupTag::Alternating).unwrap();
            for sigma in enumerate_group(n, GroupTag::Alternating).unwrap() {
                let xs = x.permute(&sigma);
                assert_eq!(
                    s_n_bruteforce(&xs, &y, GroupTag::Alternating).unwrap(),
                    s
                );
            }
        }
    }

    #[test]
    fn closed_forms_match_bruteforce() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 3..=6usize {
            for h in 1..n {
                for k in 1..n {
                    let zz = s_n_closed_zz(n, h, k).unwrap();
                    let brute = s_n_bruteforce(
                        &z_vector(n, h).unwrap(),
                        &z_vector(n, k).unwrap(),
                        GroupTag::Alternating,
                    )
                    .unwrap();
                    assert_eq!(zz, brute, "n={n} h={h} k={k}");
                }
                for _ in 0..3 {
                    let y = random_centered(&mut rng, n);
                    let zy = s_n_closed_zy(n, h, &y).unwrap();
                    let brute =
                        s_n_bruteforce(&z_vector(n, h).unwrap(), &y, GroupTag::Alternating)
                            .unwrap();
                    assert_eq!(zy, brute, "n={n} h={h}");
                }
            }
        }
    }

    #[test]
    fn closed_zy_examples() {
        let zero = CenteredVector::new(vec![rat(0, 1); 5]).unwrap();
        assert!(s_n_closed_zy(5, 2, &zero).unwrap().is_zero());
        let y = CenteredVector::new(vec![rat(-1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]).unwrap();
        // pinned by the brute-force oracle
        assert_eq!(s_n_closed_zy(4, 2, &y).unwrap(), rat(1, 3));
    }

    #[test]
    fn closed_zz_symmetry() {
        for n in 3..=12usize {
            for h in 1..n {
                for k in 1..n {
                    assert_eq!(
                        s_n_closed_zz(n, h, k).unwrap(),
                        s_n_closed_zz(n, k, h).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn c_n_small_values() {
        // pinned by an independent pre-build computation
        let cases = [
            (2usize, rat(1, 1), (1usize, 1usize)),
            (3, rat(3, 4), (1, 1)),
            (4, rat(1, 3), (2, 2)),
            (5, rat(5, 12), (2, 2)),
            (6, rat(3, 10), (2, 3)),
            (7, rat(7, 20), (2, 3)),
            (8, rat(9, 35), (4, 4)),
        ];
        for (n, expect, hk) in cases {
            let (v, arg) = c_n(n).unwrap();
            assert_eq!(v, expect, "n={n}");
            assert_eq!(arg, hk, "n={n}");
            assert!(v.is_positive());
        }
    }

    #[test]
    fn sandwich_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in [5usize, 6] {
            for _ in 0..20 {
                let x = random_centered(&mut rng, n);
                let y = random_centered(&mut rng, n);
                let rep = sandwich_check(&x, &y).unwrap();
                assert!(rep.holds(), "n={n}");
            }
        }
        // mass on two coordinates
        let mut entries = vec![rat(0, 1); 5];
        entries[0] = rat(7, 2);
        entries[1] = rat(-7, 2);
        let x = CenteredVector::new(entries).unwrap();
        let rep = sandwich_check(&x, &x).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn stabilizer_average_reaches_z() {
        for (n, h) in [(5usize, 2usize), (5, 3), (6, 2), (4, 1)] {
            let z = z_vector(n, h).unwrap();
            assert_eq!(stabilizer_average(&z, h).unwrap(), z, "fixed point");
        }
        // an admissible non-uniform x for n=5, h=2:
        // positives sum to 5/2, negatives to -5/2, |x|_1 = 1
        let x = CenteredVector::new(vec![
            rat(3, 2),
            rat(1, 1),
            rat(-1, 2),
            rat(-1, 1),
            rat(-1, 1),
        ])
        .unwrap();
        assert_eq!(l1_norm(&x), BigRational::one());
        assert_eq!(stabilizer_average(&x, 2).unwrap(), z_vector(5, 2).unwrap());
    }

    #[test]
    fn lemma46_bounds() {
        let y = center(&exponents_from_i64(&[1, 2, 3, 4, 5])).unwrap();
        let b = lemma46_lower_bound(&y, GapCase::Strict).unwrap();
        assert_eq!(b, rat(3, 4));
        assert_eq!(l1_norm(&y), rat(6, 5));
        assert!(l1_norm(&y) >= b);

        let y = center(&exponents_from_i64(&[1, 2, 3, 4, 5, 5])).unwrap();
        let b = lemma46_lower_bound(&y, GapCase::Tied).unwrap();
        assert_eq!(b, rat(3, 5));
        assert!(l1_norm(&y) >= b);

        let y = CenteredVector::new(vec![
            rat(-2, 1),
            rat(-1, 1),
            rat(0, 1),
            rat(1, 1),
            rat(2, 1),
        ])
        .unwrap();
        assert_eq!(
            lemma46_lower_bound(&y, GapCase::Strict).unwrap(),
            rat(3, 4)
        );
        assert_eq!(l1_norm(&y), rat(6, 5));
    }
}
