//! Dirichlet characters for a prime modulus.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest modulus accepted by [`dirichlet_characters`].
pub const MAX_CHARACTER_MODULUS: u64 = 1000;

/// One character χ mod p, stored as `values[l % p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Character<T> {
    /// Exponent j in χ(g^k) = exp(2πi·jk/(p − 1)).
    pub index: usize,
    pub values: Vec<Complex<T>>,
    /// χ(−1) = −1.
    pub odd: bool,
}

impl<T: Real> Character<T> {
    pub fn at(&self, l: u64) -> Complex<T> {
        self.values[(l % self.values.len() as u64) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }
}

/// All p − 1 characters mod p; `characters[0]` is the principal one.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable<T> {
    pub modulus: u64,
    pub primitive_root: u64,
    pub characters: Vec<Character<T>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root mod a prime p.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or(Error::NotPrime(p))
}

/// exp(2πi·r/n), exact at quarter turns.
fn root_of_unity<T: Real>(r: u64, n: u64) -> Complex<T> {
    let r = r % n;
    if (4 * r) % n == 0 {
        return match 4 * r / n {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        };
    }
    let angle = T::lit(2.0) * T::PI() * T::lit(r as f64) / T::lit(n as f64);
    Complex::new(angle.cos(), angle.sin())
}

/// Build every Dirichlet character mod a prime `p` (3 ≤ p ≤ 1000) from its
/// smallest primitive root.
pub fn dirichlet_characters<T: Real>(p: u64) -> Result<CharacterTable<T>> {
    if !(3..=MAX_CHARACTER_MODULUS).contains(&p) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = primitive_root(p)?;
    let order = p - 1;
    // discrete log table: ind[g^k mod p] = k
    let mut ind = vec![0u64; p as usize];
    let mut x = 1u64;
    for k in 0..order {
        ind[x as usize] = k;
        x = x * g % p;
    }
    let characters = (0..order as usize)
        .map(|j| {
            let mut values = vec![Complex::new(T::zero(), T::zero()); p as usize];
            for l in 1..p {
                values[l as usize] = root_of_unity(j as u64 * ind[l as usize], order);
            }
            Character {
                index: j,
                values,
                odd: j % 2 == 1,
            }
        })
        .collect();
    Ok(CharacterTable {
        modulus: p,
        primitive_root: g,
        characters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_three() {
        let t = dirichlet_characters::<f64>(3).unwrap();
        assert_eq!(t.characters.len(), 2);
        let chi = &t.characters[1];
        assert_eq!(chi.at(2), Complex::new(-1.0, 0.0));
        assert!(chi.odd);
        assert_eq!(chi.at(3), Complex::new(0.0, 0.0));
    }

    #[test]
    fn mod_five_odd_characters() {
        let t = dirichlet_characters::<f64>(5).unwrap();
        assert_eq!(t.characters.len(), 4);
        let odd: Vec<_> = t.characters.iter().filter(|c| c.odd).collect();
        assert_eq!(odd.len(), 2);
        for chi in odd {
            assert_eq!(chi.at(1), Complex::new(1.0, 0.0));
            assert_eq!(chi.at(4), Complex::new(-1.0, 0.0));
            assert_eq!(chi.at(2).re, 0.0);
            assert_eq!(chi.at(2).im.abs(), 1.0);
            assert_eq!(chi.at(3), -chi.at(2));
        }
    }

    #[test]
    fn rejects_composites_and_range() {
        assert_eq!(dirichlet_characters::<f64>(9), Err(Error::NotPrime(9)));
        assert_eq!(dirichlet_characters::<f64>(2), Err(Error::NotPrime(2)));
        assert_eq!(dirichlet_characters::<f64>(1009), Err(Error::NotPrime(1009)));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(13).unwrap(), 2);
    }
}
