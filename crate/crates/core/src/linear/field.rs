//! Small finite fields with full operation tables.

use serde::Serialize;

use super::LinearError;

/// `F_q` for prime `q < 256` or `q ∈ {4, 8, 9}`. Elements are `0..q`; in an
/// extension, `Σ c_i p^i` encodes `Σ c_i x^i`.
#[derive(Debug, Clone, Serialize)]
pub struct Fq {
    pub p: u8,
    pub e: u8,
    pub q: usize,
    #[serde(skip)]
    add: Vec<u8>,
    #[serde(skip)]
    mul: Vec<u8>,
    #[serde(skip)]
    neg: Vec<u8>,
    /// `inv[0] = 0`.
    #[serde(skip)]
    inv: Vec<u8>,
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Low-to-high coefficients of the monic defining polynomial, leading term
/// omitted.
fn modulus(q: usize) -> Option<(u8, u8, &'static [u8])> {
    match q {
        4 => Some((2, 2, &[1, 1])),    // x² + x + 1
        8 => Some((2, 3, &[1, 1, 0])), // x³ + x + 1
        9 => Some((3, 2, &[1, 0])),    // x² + 1
        _ => None,
    }
}

impl Fq {
    pub fn new(q: usize) -> Result<Self, LinearError> {
        let (p, e, low): (u8, u8, &[u8]) = if is_prime(q) && q < 256 {
            (q as u8, 1, &[])
        } else if let Some(m) = modulus(q) {
            m
        } else {
            return Err(LinearError::UnsupportedField(q));
        };
        let pu = p as usize;
        let e_us = e as usize;
        let digits = |mut v: usize| -> Vec<usize> {
            (0..e_us)
                .map(|_| {
                    let d = v % pu;
                    v /= pu;
                    d
                })
                .collect()
        };
        let pack = |c: &[usize]| c.iter().rev().fold(0usize, |acc, &d| acc * pu + d) as u8;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * q + b] = pack(&s);
                let mut prod = vec![0usize; 2 * e_us];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pu;
                    }
                }
                // x^e = -Σ low_i x^i
                for k in (e_us..2 * e_us).rev() {
                    let c = prod[k];
                    if c != 0 {
                        prod[k] = 0;
                        for (i, &l) in low.iter().enumerate() {
                            prod[k - e_us + i] = (prod[k - e_us + i] + (pu - c) * l as usize) % pu;
                        }
                    }
                }
                if e_us == 1 {
                    mul[a * q + b] = ((a * b) % q) as u8;
                } else {
                    mul[a * q + b] = pack(&prod[..e_us]);
                }
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8)
            .collect();
        Ok(Fq {
            p,
            e,
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut k: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|a| a as u8)
    }
}
