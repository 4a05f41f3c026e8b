//! Exact field arithmetic: a prime field with configurable characteristic,
//! plus arbitrary-precision rationals as an alternate field for small
//! cross-checks.

use std::fmt;
use std::hash::Hash;

use num::BigRational;
use num::{BigInt, One, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

/// Smallest characteristic accepted; smaller fields make "random is general"
/// sampling unreliable.
pub const MIN_PRIME: u64 = 101;

/// Default characteristic for the experiment harness. Products of two
/// representatives fit comfortably in a machine word.
pub const DEFAULT_PRIME: u64 = 31991;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field too small: characteristic {got} is below the minimum {min}")]
    FieldTooSmall { got: u64, min: u64 },
    #[error("unsupported over this field: {0}")]
    UnsupportedField(&'static str),
}

/// An exact field. Implementations hand out canonical representatives, so
/// `==` on elements is field equality.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Uniform draw; only finite fields support this.
    fn random_scalar(&self, rng: &mut dyn RngCore) -> Result<Self::Elem, FieldError>;
}

/// The prime field of integers modulo `p`. Elements are canonical
/// representatives in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p < MIN_PRIME {
            return Err(FieldError::FieldTooSmall { got: p, min: MIN_PRIME });
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        mod_pow(base % self.p, exp, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.p - *b) as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(mod_pow(*a, self.p - 2, self.p))
    }

    fn div(&self, a: &u64, b: &u64) -> Result<u64, FieldError> {
        let binv = self.inv(b)?;
        Ok(self.mul(a, &binv))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn random_scalar(&self, rng: &mut dyn RngCore) -> Result<u64, FieldError> {
        Ok(rng.gen_range(0..self.p))
    }
}

/// The field of rationals with arbitrary-precision reduced fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational, FieldError> {
        if b.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a / b)
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn random_scalar(&self, _rng: &mut dyn RngCore) -> Result<BigRational, FieldError> {
        Err(FieldError::UnsupportedField(
            "uniform sampling is only defined over a finite field",
        ))
    }
}

/// Convenience constructor for rational test values.
pub fn fraction(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set below is exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_characteristics() {
        assert_eq!(PrimeField::new(100), Err(FieldError::NotPrime(100)));
        assert_eq!(
            PrimeField::new(97),
            Err(FieldError::FieldTooSmall { got: 97, min: 101 })
        );
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn arithmetic_small_cases() {
        let f = f101();
        assert_eq!(f.add(&50, &60), 9);
        assert_eq!(f.inv(&2).unwrap(), 51);
        assert_eq!(f.mul(&2, &51), 1);
        assert_eq!(f.sub(&3, &5), 99);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.inv(&0), Err(FieldError::DivisionByZero));
        assert_eq!(f.div(&7, &0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Rationals;
        let third = fraction(1, 3);
        let sixth = fraction(1, 6);
        assert_eq!(q.add(&third, &sixth), fraction(1, 2));
        assert_eq!(q.mul(&fraction(2, 3), &fraction(3, 2)), q.one());
        assert_eq!(q.inv(&q.zero()), Err(FieldError::DivisionByZero));
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert_eq!(
            q.random_scalar(&mut rng),
            Err(FieldError::UnsupportedField(
                "uniform sampling is only defined over a finite field"
            ))
        );
    }

    #[test]
    fn random_scalar_is_deterministic_and_in_range() {
        let f = f101();
        let mut a = ChaCha12Rng::seed_from_u64(7);
        let mut b = ChaCha12Rng::seed_from_u64(7);
        let xs: Vec<u64> = (0..100).map(|_| f.random_scalar(&mut a).unwrap()).collect();
        let ys: Vec<u64> = (0..100).map(|_| f.random_scalar(&mut b).unwrap()).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|&x| x < 101));
    }

    #[test]
    fn random_scalar_frequencies_pass_chi_square_sanity() {
        // 10^4 draws over F_101; each residue count should sit within 5 sigma
        // of the uniform expectation N/101.
        let f = f101();
        let mut rng = ChaCha12Rng::seed_from_u64(2024);
        let n = 10_000usize;
        let mut counts = [0usize; 101];
        for _ in 0..n {
            counts[f.random_scalar(&mut rng).unwrap() as usize] += 1;
        }
        let expected = n as f64 / 101.0;
        let sigma = (n as f64 * (1.0 / 101.0) * (100.0 / 101.0)).sqrt();
        for (residue, &c) in counts.iter().enumerate() {
            let dev = (c as f64 - expected).abs();
            assert!(
                dev <= 5.0 * sigma,
                "residue {residue} occurred {c} times, {dev:.1} from expected {expected:.1}"
            );
        }
    }

    #[test]
    fn primality_checker_known_values() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(101));
        assert!(is_prime_u64(31991));
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(31989));
        assert!(!is_prime_u64(1_000_001));
    }

    proptest! {
        #[test]
        fn field_axioms_hold(a in 0u64..DEFAULT_PRIME, b in 0u64..DEFAULT_PRIME, c in 0u64..DEFAULT_PRIME) {
            let f = PrimeField::new(DEFAULT_PRIME).unwrap();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.zero()), a);
            prop_assert_eq!(f.mul(&a, &f.one()), a);
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if a != 0 {
                let ainv = f.inv(&a).unwrap();
                prop_assert_eq!(f.mul(&a, &ainv), f.one());
            }
        }

        #[test]
        fn fermat_little_theorem(a in 0u64..DEFAULT_PRIME) {
            let f = PrimeField::new(DEFAULT_PRIME).unwrap();
            prop_assert_eq!(f.pow(a, DEFAULT_PRIME), a);
        }

        #[test]
        fn canonical_form_round_trips(n in i64::MIN..i64::MAX) {
            let f = PrimeField::new(DEFAULT_PRIME).unwrap();
            let x = f.from_i64(n);
            prop_assert!(x < DEFAULT_PRIME);
            prop_assert_eq!(f.from_i64(n.rem_euclid(DEFAULT_PRIME as i64)), x);
        }
    }
}
