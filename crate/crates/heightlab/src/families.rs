//! Concrete input families, chiefly the truncated exponential
//! `n! (1 + x + x^2/2! + ... + x^n/n!)`, whose roots are units with norm
//! `n!` up to sign and whose Galois group is alternating exactly when `4 | n`
//! (by Schur's classical result; this module only checks necessary
//! conditions and never asserts the group).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::{
    discriminant, irreducibility_evidence, is_perfect_square, IntPoly, IrreducibilityEvidence,
};
use crate::{Error, Result};

/// The degree-`n` truncated exponential scaled by `n!`: coefficient of
/// `x^j` is `n!/j!`. Monic with constant term `n!`.
pub fn laguerre_poly(n: usize) -> Result<IntPoly> {
    if n < 1 {
        return Err(Error::domain("family needs n >= 1"));
    }
    // build n!/j! downward: the x^n coefficient is 1
    let mut coeffs = vec![BigInt::one(); n + 1];
    for j in (0..n).rev() {
        coeffs[j] = &coeffs[j + 1] * BigInt::from(j + 1);
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// The absolute norm of a root of [`laguerre_poly`]: exactly `n!`.
pub fn laguerre_norm(n: usize) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::domain("family needs n >= 1"));
    }
    Ok(crate::perms::factorial(n))
}

/// Necessary conditions for the Galois group to be contained in the
/// alternating group; never claims sufficiency.
#[derive(Clone, Debug, Serialize)]
pub struct AnEvidence {
    pub squarefree: bool,
    pub disc_is_square: bool,
    pub irreducibility: Option<IrreducibilityEvidence>,
}

pub fn an_necessary_conditions(p: &IntPoly) -> Result<AnEvidence> {
    match p.degree() {
        Some(d) if d >= 2 => {}
        _ => return Err(Error::domain("need degree >= 2")),
    }
    let disc = discriminant(p)?;
    let squarefree = !disc.is_zero();
    let disc_is_square = squarefree && is_perfect_square(&disc);
    let irreducibility = if squarefree {
        Some(irreducibility_evidence(p, 12)?)
    } else {
        None
    };
    Ok(AnEvidence {
        squarefree,
        disc_is_square,
        irreducibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perms::factorial;
    use crate::poly::norm_of_root;
    use num_rational::BigRational;
    use num_traits::Signed;

    #[test]
    fn small_polys() {
        assert_eq!(laguerre_poly(2).unwrap(), IntPoly::from_i64(&[2, 2, 1]));
        assert_eq!(
            laguerre_poly(4).unwrap(),
            IntPoly::from_i64(&[24, 24, 12, 4, 1])
        );
        assert!(laguerre_poly(0).is_err());
    }

    #[test]
    fn structure_invariants() {
        for n in 1..=20 {
            let p = laguerre_poly(n).unwrap();
            assert_eq!(p.degree(), Some(n));
            assert!(p.is_monic());
            assert!(p.coeffs().iter().all(|c| c.is_positive()));
            assert_eq!(p.coeff(0), factorial(n));
        }
    }

    #[test]
    fn norm_matches_poly() {
        assert_eq!(laguerre_norm(1).unwrap(), BigInt::one());
        assert_eq!(laguerre_norm(4).unwrap(), BigInt::from(24));
        assert_eq!(laguerre_norm(8).unwrap(), BigInt::from(40320));
        for n in 1..=12 {
            let p = laguerre_poly(n).unwrap();
            assert_eq!(
                norm_of_root(&p).unwrap().abs(),
                BigRational::from(laguerre_norm(n).unwrap())
            );
        }
    }

    #[test]
    fn disc_square_iff_4_divides_n() {
        // pinned exact discriminants from an independent pre-build run
        let d4 = discriminant(&laguerre_poly(4).unwrap()).unwrap();
        assert_eq!(d4, BigInt::from(331776));
        let d5 = discriminant(&laguerre_poly(5).unwrap()).unwrap();
        assert_eq!(d5, BigInt::parse_bytes(b"24883200000", 10).unwrap());
        let d8 = discriminant(&laguerre_poly(8).unwrap()).unwrap();
        assert_eq!(
            d8,
            BigInt::parse_bytes(b"6984964247141514123629140377600000000", 10).unwrap()
        );
        for n in 4..=8 {
            let ev = an_necessary_conditions(&laguerre_poly(n).unwrap()).unwrap();
            assert!(ev.squarefree, "n={n}");
            assert_eq!(ev.disc_is_square, n % 4 == 0, "n={n}");
        }
    }

    #[test]
    fn non_square_disc_example() {
        let ev = an_necessary_conditions(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert!(ev.squarefree);
        assert!(!ev.disc_is_square);
    }
}
