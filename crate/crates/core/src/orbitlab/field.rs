//! Prime fields F_p with small moduli.

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u32,
}

impl Fp {
    /// Only prime q is accepted: the engine identifies the Borel with
    /// concrete matrices over F_q and does not model extension fields.
    pub fn new(q: u32) -> Result<Self, Error> {
        if q < 2 || !is_prime(q) {
            return Err(Error::BadFieldSize { q });
        }
        Ok(Fp { p: q })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Embed an integer.
    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = (self.p - 1) as u64;
        let mut prime_factors = Vec::new();
        let mut m = order;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                prime_factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            prime_factors.push(m);
        }
        (2..self.p)
            .find(|&g| prime_factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("no primitive root found")
    }

    /// A square root, if one exists.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        (0..self.p).find(|&x| self.mul(x, x) == a)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn primitive_roots_generate() {
        for q in [2u32, 3, 5, 7, 13, 17] {
            let f = Fp::new(q).unwrap();
            let g = f.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u32;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len(), (q - 1) as usize, "q = {q}");
        }
    }

    #[test]
    fn square_roots_of_two() {
        // needed by the symplectic counterexample matrices
        let f7 = Fp::new(7).unwrap();
        let r = f7.sqrt(2).unwrap();
        assert_eq!(f7.mul(r, r), 2);
        let f17 = Fp::new(17).unwrap();
        let r = f17.sqrt(2).unwrap();
        assert_eq!(f17.mul(r, r), 2);
        let f5 = Fp::new(5).unwrap();
        assert!(f5.sqrt(2).is_none());
    }

    #[test]
    fn composite_sizes_rejected() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(9).is_err());
        assert!(Fp::new(1).is_err());
    }
}
