//! Enumeration of the alternating and symmetric groups and the exact
//! permutation counts used by the height lower bounds: derangements,
//! permutations with all cycles of length at least 3, transpositions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::ExponentVector;
use crate::{Error, Result};

/// Which full permutation group conjugates are assumed to move under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GroupTag {
    Alternating,
    Symmetric,
}

impl GroupTag {
    /// Group order as `BigInt`.
    pub fn order(self, n: usize) -> BigInt {
        let f = factorial(n);
        match self {
            GroupTag::Symmetric => f,
            GroupTag::Alternating => f / BigInt::from(2),
        }
    }

    pub fn order_usize(self, n: usize) -> usize {
        let f: usize = (1..=n).product();
        match self {
            GroupTag::Symmetric => f,
            GroupTag::Alternating => f / 2,
        }
    }
}

pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    f
}

/// A permutation of `{0, .., n-1}` with cached parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
    even: bool,
}

fn count_inversions(images: &[usize]) -> usize {
    let n = images.len();
    let mut inv = 0;
    for i in 0..n {
        for j in i + 1..n {
            if images[i] > images[j] {
                inv += 1;
            }
        }
    }
    inv
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
            even: true,
        }
    }

    /// Builds from 0-based images; must be a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::domain("images are not a bijection"));
            }
            seen[i] = true;
        }
        let even = count_inversions(&images) % 2 == 0;
        Ok(Permutation { images, even })
    }

    /// Transposition (i j), 0-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(Error::domain("invalid transposition indices"));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(Permutation {
            images,
            even: false,
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_transposition(&self) -> bool {
        let moved: Vec<usize> = (0..self.n()).filter(|&i| self.images[i] != i).collect();
        moved.len() == 2 && self.images[moved[0]] == moved[1]
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images: Vec<usize> = (0..self.n()).map(|i| self.images[other.images[i]]).collect();
        Permutation {
            even: self.even == other.even,
            images,
        }
    }
}

const ENUM_GUARD: usize = 10;

fn check_enum_guard(n: usize) -> Result<()> {
    if !(2..=ENUM_GUARD).contains(&n) {
        return Err(Error::domain(format!(
            "group enumeration supports 2 <= n <= {ENUM_GUARD}, got {n}"
        )));
    }
    Ok(())
}

/// Streams the group elements in lexicographic order of image vectors.
pub fn enumerate_group(n: usize, tag: GroupTag) -> Result<GroupIter> {
    check_enum_guard(n)?;
    Ok(GroupIter {
        next: Some((0..n).collect()),
        tag,
    })
}

pub struct GroupIter {
    next: Option<Vec<usize>>,
    tag: GroupTag,
}

fn advance(v: &mut Vec<usize>) -> bool {
    // standard next-permutation
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Iterator for GroupIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let cur = self.next.as_mut()?;
            let images = cur.clone();
            let alive = advance(cur);
            if !alive {
                self.next = None;
            }
            let even = count_inversions(&images) % 2 == 0;
            if self.tag == GroupTag::Symmetric || even {
                return Some(Permutation { images, even });
            }
            if self.next.is_none() {
                return None;
            }
        }
    }
}

/// Whether the combination with exponent vector `a` generates the splitting
/// field, per the distinct-value criterion.
///
/// Alternating: at least `n - 1` distinct values; symmetric: all distinct.
pub fn generator_criterion(a: &[BigInt], tag: GroupTag) -> Result<bool> {
    let n = a.len();
    match tag {
        GroupTag::Alternating if n < 5 => {
            return Err(Error::domain(
                "alternating generator criterion is proven only for n >= 5",
            ))
        }
        GroupTag::Symmetric if n < 3 => {
            return Err(Error::domain(
                "symmetric generator criterion is proven only for n >= 3",
            ))
        }
        _ => {}
    }
    let mut sorted: Vec<&BigInt> = a.iter().collect();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len();
    Ok(match tag {
        GroupTag::Alternating => distinct >= n - 1,
        GroupTag::Symmetric => distinct == n,
    })
}

/// Brute-force count of group elements fixing the vector `a` coordinatewise.
pub fn stabilizer_of_vector(a: &[BigInt], tag: GroupTag) -> Result<u64> {
    let n = a.len();
    check_enum_guard(n)?;
    let mut count = 0u64;
    for sigma in enumerate_group(n, tag)? {
        if (0..n).all(|i| a[sigma.apply(i)] == a[i]) {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact derangement numbers via the two-term recurrence.
pub fn derangement_count(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return BigInt::zero();
    }
    let (mut prev2, mut prev1) = (BigInt::one(), BigInt::zero()); // d0, d1
    for m in 2..=n {
        let next = BigInt::from(m - 1) * (&prev1 + &prev2);
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// Alternating-sum formula `n! * sum (-1)^k / k!`, evaluated exactly.
pub fn derangement_count_sum(n: usize) -> BigInt {
    // n!/k! is integral; accumulate with alternating signs
    let mut total = BigInt::zero();
    let mut term = factorial(n); // n!/0!
    for k in 0..=n {
        if k % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
        if k < n {
            term /= BigInt::from(k + 1);
        }
    }
    total
}

/// Number of permutations of `n` letters with every cycle of length >= 3,
/// by summing multinomial cycle-type counts over partitions with parts >= 3.
///
/// By convention the empty permutation counts (`n = 0` gives 1).
pub fn lambda_count(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let nfact = factorial(n);
    let mut total = BigInt::zero();
    // enumerate partitions of n with all parts >= 3, nonincreasing
    fn rec(rem: usize, max_part: usize, parts: &mut Vec<usize>, nfact: &BigInt, total: &mut BigInt) {
        if rem == 0 {
            // count = n! / (prod part^mult * mult!)
            let mut denom = BigInt::one();
            let mut i = 0;
            while i < parts.len() {
                let p = parts[i];
                let mut mult = 0usize;
                while i < parts.len() && parts[i] == p {
                    mult += 1;
                    i += 1;
                }
                denom *= BigInt::from(p).pow(mult as u32);
                denom *= factorial(mult);
            }
            *total += nfact / denom;
            return;
        }
        let mut p = max_part.min(rem);
        while p >= 3 {
            if rem - p == 0 || rem - p >= 3 {
                parts.push(p);
                rec(rem - p, p, parts, nfact, total);
                parts.pop();
            }
            p -= 1;
        }
    }
    let mut parts = Vec::new();
    rec(n, n, &mut parts, &nfact, &mut total);
    total
}

/// `n(n-1)/2`.
pub fn transposition_count(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::domain("transposition count needs n >= 2"));
    }
    Ok(BigInt::from(n) * BigInt::from(n - 1) / BigInt::from(2))
}

/// Counts `sigma` in the group with `sigma(k) = i` (0-based), by enumeration.
/// For a transitive group this equals `|G| / n`.
pub fn transitive_count_check(n: usize, tag: GroupTag, i: usize, k: usize) -> Result<u64> {
    check_enum_guard(n)?;
    if i >= n || k >= n {
        return Err(Error::domain("index out of range"));
    }
    let mut count = 0u64;
    for sigma in enumerate_group(n, tag)? {
        if sigma.apply(k) == i {
            count += 1;
        }
    }
    Ok(count)
}

/// Convenience: brute-force lambda count by cycle inspection (test oracle).
pub fn lambda_count_bruteforce(n: usize) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    if n == 1 {
        return Ok(0);
    }
    check_enum_guard(n)?;
    let mut count = 0u64;
    'outer: for sigma in enumerate_group(n, GroupTag::Symmetric)? {
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = sigma.apply(j);
                len += 1;
            }
            if len < 3 {
                continue 'outer;
            }
        }
        count += 1;
    }
    Ok(count)
}

pub fn exponent_vector_is_valid(a: &ExponentVector, n: usize) -> Result<()> {
    if a.len() != n {
        return Err(Error::domain(format!(
            "exponent vector has length {}, expected {n}",
            a.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::exponents_from_i64;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_group(3, GroupTag::Alternating).unwrap().count(), 3);
        assert_eq!(enumerate_group(4, GroupTag::Alternating).unwrap().count(), 12);
        assert_eq!(enumerate_group(5, GroupTag::Symmetric).unwrap().count(), 120);
        assert!(enumerate_group(11, GroupTag::Symmetric).is_err());
        assert!(enumerate_group(1, GroupTag::Symmetric).is_err());
    }

    #[test]
    fn a3_elements_in_order() {
        let elems: Vec<Vec<usize>> = enumerate_group(3, GroupTag::Alternating)
            .unwrap()
            .map(|p| p.images().to_vec())
            .collect();
        assert_eq!(elems, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn generator_criterion_paper_cases() {
        let an = GroupTag::Alternating;
        assert!(generator_criterion(&exponents_from_i64(&[1, 1, 2, 3, 4]), an).unwrap());
        assert!(!generator_criterion(&exponents_from_i64(&[1, 1, 1, 2, 3]), an).unwrap());
        assert!(!generator_criterion(&exponents_from_i64(&[1, 1, 2, 2, 3]), an).unwrap());
        assert!(generator_criterion(&exponents_from_i64(&[1, 2, 3]), GroupTag::Symmetric).unwrap());
        assert!(generator_criterion(&exponents_from_i64(&[1, 1, 2, 3]), an).is_err());
    }

    #[test]
    fn stabilizers() {
        let an = GroupTag::Alternating;
        assert_eq!(stabilizer_of_vector(&exponents_from_i64(&[1, 1, 2, 3, 4]), an).unwrap(), 1);
        assert_eq!(stabilizer_of_vector(&exponents_from_i64(&[1, 1, 1, 2, 3]), an).unwrap(), 3);
        assert_eq!(
            stabilizer_of_vector(&exponents_from_i64(&[1, 2, 3, 4, 5]), GroupTag::Symmetric)
                .unwrap(),
            1
        );
    }

    #[test]
    fn criterion_iff_trivial_stabilizer() {
        // battery: all distinct, one pair, two pairs, one triple
        for n in [5usize, 6, 7] {
            let mut patterns: Vec<Vec<i64>> = Vec::new();
            let base: Vec<i64> = (1..=n as i64).collect();
            patterns.push(base.clone());
            let mut one_pair = base.clone();
            one_pair[1] = one_pair[0];
            patterns.push(one_pair);
            let mut two_pairs = base.clone();
            two_pairs[1] = two_pairs[0];
            two_pairs[3] = two_pairs[2];
            patterns.push(two_pairs);
            let mut triple = base.clone();
            triple[1] = triple[0];
            triple[2] = triple[0];
            patterns.push(triple);
            for pat in patterns {
                let a = exponents_from_i64(&pat);
                let crit = generator_criterion(&a, GroupTag::Alternating).unwrap();
                let stab = stabilizer_of_vector(&a, GroupTag::Alternating).unwrap();
                assert_eq!(crit, stab == 1, "n={n} pattern={pat:?}");
            }
        }
    }

    #[test]
    fn derangements() {
        assert_eq!(derangement_count(0), BigInt::from(1));
        assert_eq!(derangement_count(4), BigInt::from(9));
        assert_eq!(derangement_count(6), BigInt::from(265));
        for n in 0..=20 {
            assert_eq!(derangement_count(n), derangement_count_sum(n), "n={n}");
        }
    }

    #[test]
    fn lambda_counts() {
        assert_eq!(lambda_count(0), BigInt::from(1));
        assert_eq!(lambda_count(1), BigInt::from(0));
        assert_eq!(lambda_count(2), BigInt::from(0));
        assert_eq!(lambda_count(3), BigInt::from(2));
        assert_eq!(lambda_count(4), BigInt::from(6));
        assert_eq!(lambda_count(5), BigInt::from(24));
        for n in 2..=8 {
            assert_eq!(
                lambda_count(n),
                BigInt::from(lambda_count_bruteforce(n).unwrap()),
                "n={n}"
            );
        }
    }

    #[test]
    fn lambda_lower_bounds() {
        for n in 3..=12usize {
            let lam = lambda_count(n);
            // inclusion-exclusion: |Λ_n| >= d_n - C(n,2) d_{n-2}
            let lower = derangement_count(n)
                - transposition_count(n).unwrap() * derangement_count(n - 2);
            assert!(lam >= lower, "n={n}");
            assert!(&lam * BigInt::from(8) >= factorial(n), "n={n}");
        }
    }

    #[test]
    fn transpositions() {
        assert_eq!(transposition_count(5).unwrap(), BigInt::from(10));
        assert_eq!(transposition_count(2).unwrap(), BigInt::from(1));
        assert_eq!(transposition_count(10).unwrap(), BigInt::from(45));
        assert!(transposition_count(1).is_err());
    }

    #[test]
    fn transitive_counts() {
        for (i, k) in [(0usize, 0usize), (2, 4), (1, 3)] {
            assert_eq!(
                transitive_count_check(5, GroupTag::Alternating, i, k).unwrap(),
                12
            );
        }
        assert_eq!(transitive_count_check(4, GroupTag::Symmetric, 1, 2).unwrap(), 6);
        assert_eq!(transitive_count_check(3, GroupTag::Alternating, 0, 0).unwrap(), 1);
        let expect5 = GroupTag::Alternating.order_usize(5) as u64 / 5;
        for i in 0..5 {
            for k in 0..5 {
                assert_eq!(
                    transitive_count_check(5, GroupTag::Alternating, i, k).unwrap(),
                    expect5
                );
            }
        }
        for n in [6usize, 7] {
            for tag in [GroupTag::Alternating, GroupTag::Symmetric] {
                let expect = tag.order_usize(n) as u64 / n as u64;
                for (i, k) in [(0, n - 1), (n - 2, 1), (3, 3)] {
                    assert_eq!(transitive_count_check(n, tag, i, k).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn parity_and_compose() {
        let t = Permutation::transposition(5, 0, 1).unwrap();
        assert!(!t.is_even());
        assert!(t.is_transposition());
        let c = t.compose(&t);
        assert_eq!(c, Permutation::identity(5));
        assert!(c.is_even());
    }
}
