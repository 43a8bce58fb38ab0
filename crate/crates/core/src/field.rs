//! Finite fields `GF(p^k)` with deterministic modulus and primitive element.
//!
//! Elements are integers in `0..q` read as base-`p` digit strings: the digit
//! of weight `p^i` is the coefficient of `x^i` in the residue polynomial.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds 65536")]
    TooLarge(u64),
    #[error("squares/non-squares split needs odd q, got q = {0}")]
    EvenOrder(u32),
    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("element {0} is not in the field")]
    OutOfRange(u32),
}

pub fn is_prime(n: u32) -> bool {
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

/// Returns `(p, k)` with `q = p^k` and `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldGF {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    theta: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo the monic `modulus` (length `k + 1`).
fn poly_mulmod(x: &[u32], y: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate().take(k) {
                let t = deg - k + i;
                prod[t] = (prod[t] + p - (c * m) % p) % p;
            }
            prod[deg] = 0;
        }
    }
    prod.truncate(k);
    prod
}

/// Trial division of a monic polynomial by every monic polynomial of degree
/// `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for deg in (dg..r.len()).rev() {
        let c = r[deg];
        if c != 0 {
            // g is monic
            for (i, &gc) in g.iter().enumerate() {
                let t = deg - dg + i;
                r[t] = (r[t] + p - (c * gc) % p) % p;
            }
        }
    }
    r.truncate(dg);
    r
}

impl FieldGF {
    /// `GF(p^k)` with the smallest monic irreducible modulus (non-leading
    /// coefficients read as a base-`p` integer) and the smallest element that
    /// generates the multiplicative group.
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > 65536 {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut f = digits(low, p, k);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mul_slow = |x: u32, y: u32| -> u32 {
            if k == 1 {
                return x * y % p;
            }
            undigits(&poly_mulmod(&digits(x, p, k), &digits(y, p, k), &modulus, p), p)
        };
        let theta = (1..q)
            .find(|&g| {
                let mut x = g;
                let mut m = 1;
                while x != 1 {
                    x = mul_slow(x, g);
                    m += 1;
                }
                m == q - 1
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1;
        for h in 0..q - 1 {
            exp.push(x);
            log[x as usize] = h;
            x = mul_slow(x, theta);
        }
        Ok(FieldGF { p, k, q, modulus, theta, exp, log })
    }

    pub fn from_order(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> u32 {
        self.theta
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.k == 1 {
            return (x + y) % self.p;
        }
        if self.p == 2 {
            return x ^ y;
        }
        let (mut x, mut y, mut out, mut w) = (x, y, 0, 1);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * w;
            x /= self.p;
            y /= self.p;
            w *= self.p;
        }
        out
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.p == 2 {
            return x;
        }
        let (mut x, mut out, mut w) = (x, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * w;
            x /= self.p;
            w *= self.p;
        }
        out
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let h = (self.log[x as usize] + self.log[y as usize]) % (self.q - 1);
        self.exp[h as usize]
    }

    /// Multiplicative inverse; `inv(0)` is `None`.
    pub fn inv(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let h = (self.q - 1 - self.log[x as usize]) % (self.q - 1);
        Some(self.exp[h as usize])
    }

    /// `theta^h` for any integer `h`.
    pub fn theta_pow(&self, h: i64) -> u32 {
        self.exp[h.rem_euclid((self.q - 1) as i64) as usize]
    }

    /// The unique `h` in `[0, q-1)` with `theta^h = x`.
    pub fn discrete_log(&self, x: u32) -> Result<u32, FieldError> {
        if x >= self.q {
            return Err(FieldError::OutOfRange(x));
        }
        if x == 0 {
            return Err(FieldError::LogOfZero);
        }
        Ok(self.log[x as usize])
    }

    /// Non-zero squares and non-squares, each sorted; `q` must be odd.
    pub fn squares_and_nonsquares(&self) -> Result<(Vec<u32>, Vec<u32>), FieldError> {
        if self.p == 2 {
            return Err(FieldError::EvenOrder(self.q));
        }
        let (mut squares, mut non): (Vec<u32>, Vec<u32>) = (1..self.q).partition(|&x| self.log[x as usize] % 2 == 0);
        squares.sort_unstable();
        non.sort_unstable();
        Ok((squares, non))
    }

    pub fn is_square(&self, x: u32) -> bool {
        x == 0 || self.log[x as usize] % 2 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f7 = FieldGF::new(7, 1).unwrap();
        assert_eq!(f7.primitive_element(), 3);
        let f2 = FieldGF::new(2, 1).unwrap();
        assert_eq!(f2.primitive_element(), 1);
        assert_eq!(f2.order(), 2);
    }

    #[test]
    fn gf4_modulus() {
        let f4 = FieldGF::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.order(), 4);
    }

    #[test]
    fn gf9_modulus_and_theta() {
        // x^2 + 1 is irreducible over GF(3); x has order 4, x + 1 has order 8
        let f9 = FieldGF::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.primitive_element(), 4);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(FieldGF::new(6, 1), Err(FieldError::NotPrime(6)));
        assert_eq!(FieldGF::from_order(12), Err(FieldError::NotPrimePower(12)));
        assert_eq!(FieldGF::new(3, 0), Err(FieldError::ZeroDegree));
    }

    #[test]
    fn squares_gf7_gf3() {
        let f7 = FieldGF::new(7, 1).unwrap();
        assert_eq!(f7.squares_and_nonsquares().unwrap(), (vec![1, 2, 4], vec![3, 5, 6]));
        let f3 = FieldGF::new(3, 1).unwrap();
        assert_eq!(f3.squares_and_nonsquares().unwrap(), (vec![1], vec![2]));
        let f4 = FieldGF::new(2, 2).unwrap();
        assert_eq!(f4.squares_and_nonsquares(), Err(FieldError::EvenOrder(4)));
    }

    #[test]
    fn discrete_logs_gf7() {
        let f7 = FieldGF::new(7, 1).unwrap();
        assert_eq!(f7.discrete_log(1), Ok(0));
        assert_eq!(f7.discrete_log(3), Ok(1));
        assert_eq!(f7.discrete_log(2), Ok(2));
        assert_eq!(f7.discrete_log(0), Err(FieldError::LogOfZero));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
            let f = FieldGF::from_order(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in f.elements() {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn theta_has_full_order() {
        for q in [3u32, 4, 5, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 128] {
            let f = FieldGF::from_order(q).unwrap();
            let t = f.primitive_element();
            let mut x = t;
            for m in 1..q - 1 {
                assert_ne!(x, 1, "theta^{m} = 1 in GF({q})");
                x = f.mul(x, t);
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn prime_power_factorisation() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(18), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
