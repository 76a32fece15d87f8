use std::fmt;

use crate::error::{Error, Result};

/// The prime modulus of a Shamir field.
///
/// Production sharing uses the Mersenne prime `2^61 - 1`. The small primes
/// 5, 7 and 11 exist only so secrecy properties can be checked exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldPrime(u64);

impl FieldPrime {
    pub const PRODUCTION: FieldPrime = FieldPrime((1 << 61) - 1);
    pub const TEST_PRIMES: [u64; 3] = [5, 7, 11];

    pub fn new(p: u64) -> Result<Self> {
        if p == Self::PRODUCTION.0 || Self::TEST_PRIMES.contains(&p) {
            Ok(FieldPrime(p))
        } else {
            Err(Error::InvalidParams(format!(
                "unsupported prime {p}; use 2^61-1 or a test prime in {:?}",
                Self::TEST_PRIMES
            )))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_test(self) -> bool {
        self != Self::PRODUCTION
    }

    /// Bits per packed secret block: one less than the prime's bit length,
    /// so every block value is a field element (60 for `2^61 - 1`).
    pub fn block_bits(self) -> u32 {
        63 - self.0.leading_zeros()
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        ((u128::from(a) + u128::from(b)) % u128::from(self.0)) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.0 - b % self.0)
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.0)) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u64) -> u64 {
        debug_assert_ne!(a % self.0, 0);
        self.pow(a, self.0 - 2)
    }
}

impl fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
