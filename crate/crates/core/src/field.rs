//! Prime-field scalar arithmetic.
//!
//! Coefficients are residues in `[0, p)` for a prime `p` that fits in `u32`.
//! All products go through `u64`, so no intermediate overflow is possible for
//! any prime below `2^32`.

/// A scalar of GF(p), always reduced mod p.
pub type Scalar = u32;

/// Arithmetic context for one prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p), "characteristic {p} is not prime");
        Fp { p }
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse of a nonzero scalar, by extended Euclid.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a != 0, "division by zero in GF({})", self.p);
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert!(r == 1);
        t.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, mut base: Scalar, mut exp: u64) -> Scalar {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        let f = Fp::new(32003);
        for a in [1u32, 2, 17, 32002, 12345] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn small_primes_work() {
        let f2 = Fp::new(2);
        assert_eq!(f2.add(1, 1), 0);
        let f3 = Fp::new(3);
        assert_eq!(f3.mul(2, 2), 1);
    }

    #[test]
    #[should_panic]
    fn composite_characteristic_rejected() {
        Fp::new(32001);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(32003));
        assert!(!is_prime(1));
        assert!(!is_prime(32001));
    }
}
