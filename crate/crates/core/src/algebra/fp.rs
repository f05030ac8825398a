//! Scalar arithmetic in F_p and the coefficient-vector kernels shared by
//! polynomials and truncated series.

use crate::error::{Error, Result};

/// Checks that `p` is a prime small enough for `u8` coefficient storage.
pub fn check_prime(p: u32) -> Result<()> {
    if !(2..256).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::BadModulus(p));
    }
    Ok(())
}

/// Multiplicative inverse of a nonzero element of F_p.
pub fn inv(a: u8, p: u32) -> u8 {
    debug_assert!(a as u32 % p != 0, "inverse of zero");
    // Fermat: a^(p-2).
    pow(a, p - 2, p)
}

pub fn pow(a: u8, mut e: u32, p: u32) -> u8 {
    let mut base = a as u32 % p;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u8
}

#[inline]
pub fn add(a: u8, b: u8, p: u32) -> u8 {
    ((a as u32 + b as u32) % p) as u8
}

#[inline]
pub fn sub(a: u8, b: u8, p: u32) -> u8 {
    ((a as u32 + p - b as u32) % p) as u8
}

#[inline]
pub fn mul(a: u8, b: u8, p: u32) -> u8 {
    (a as u32 * b as u32 % p) as u8
}

#[inline]
pub fn neg(a: u8, p: u32) -> u8 {
    ((p - a as u32 % p) % p) as u8
}

/// Reduces an arbitrary integer into F_p.
pub fn reduce(v: i64, p: u32) -> u8 {
    v.rem_euclid(p as i64) as u8
}

/// `acc[i] += b[i]` over F_p, growing `acc` if needed.
pub fn add_into(acc: &mut Vec<u8>, b: &[u8], p: u32) {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0);
    }
    if p == 2 {
        for (x, &y) in acc.iter_mut().zip(b) {
            *x ^= y;
        }
    } else {
        for (x, &y) in acc.iter_mut().zip(b) {
            *x = add(*x, y, p);
        }
    }
}

/// Product of two coefficient vectors, keeping only indices `< limit`.
///
/// Iterates over the nonzero entries of the sparser operand; over F₂ the
/// inner loop works on packed 64-bit words.
pub fn mul_truncated(a: &[u8], b: &[u8], limit: usize, p: u32) -> Vec<u8> {
    if a.is_empty() || b.is_empty() || limit == 0 {
        return Vec::new();
    }
    let len = (a.len() + b.len() - 1).min(limit);
    let (sparse, dense) = if count_nonzero(a) <= count_nonzero(b) {
        (a, b)
    } else {
        (b, a)
    };
    if p == 2 && dense.len() >= 64 {
        return gf2_mul_packed(sparse, dense, len);
    }
    let mut out = vec![0u32; len];
    for (i, &x) in sparse.iter().enumerate() {
        if x == 0 || i >= len {
            continue;
        }
        let x = x as u32;
        for (o, &y) in out[i..].iter_mut().zip(dense) {
            *o += x * y as u32;
        }
        // Keep the accumulators bounded so they never overflow.
        if (i & 255) == 255 {
            for o in out.iter_mut() {
                *o %= p;
            }
        }
    }
    out.into_iter().map(|v| (v % p) as u8).collect()
}

fn count_nonzero(a: &[u8]) -> usize {
    a.iter().filter(|&&x| x != 0).count()
}

fn pack(a: &[u8]) -> Vec<u64> {
    let mut words = vec![0u64; a.len().div_ceil(64)];
    for (i, &x) in a.iter().enumerate() {
        if x & 1 == 1 {
            words[i >> 6] |= 1u64 << (i & 63);
        }
    }
    words
}

fn gf2_mul_packed(sparse: &[u8], dense: &[u8], len: usize) -> Vec<u8> {
    let d = pack(dense);
    let nwords = len.div_ceil(64) + 1;
    let mut acc = vec![0u64; nwords + 1];
    for (i, &x) in sparse.iter().enumerate() {
        if x & 1 == 0 || i >= len {
            continue;
        }
        let (wq, br) = (i >> 6, i & 63);
        for (k, &w) in d.iter().enumerate() {
            let pos = wq + k;
            if pos >= nwords {
                break;
            }
            acc[pos] ^= w << br;
            if br != 0 {
                acc[pos + 1] ^= w >> (64 - br);
            }
        }
    }
    (0..len).map(|i| ((acc[i >> 6] >> (i & 63)) & 1) as u8).collect()
}

/// Trims trailing zeros so the last stored entry is nonzero.
pub fn trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_accepted_and_composites_rejected() {
        for p in [2, 3, 5, 7, 251] {
            assert!(check_prime(p).is_ok());
        }
        for p in [0, 1, 4, 9, 256, 1000] {
            assert!(check_prime(p).is_err());
        }
    }

    #[test]
    fn inverses_multiply_to_one() {
        for p in [2u32, 3, 5, 7, 13] {
            for a in 1..p as u8 {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
    }

    #[test]
    fn packed_product_matches_schoolbook() {
        let a: Vec<u8> = (0..150).map(|i| ((i * 7 + 3) % 5 == 0) as u8).collect();
        let b: Vec<u8> = (0..200).map(|i| ((i * 11 + 1) % 3 == 0) as u8).collect();
        let packed = gf2_mul_packed(&a, &b, 349);
        let mut naive = vec![0u8; 349];
        for i in 0..a.len() {
            for j in 0..b.len() {
                naive[i + j] ^= a[i] & b[j];
            }
        }
        assert_eq!(packed, naive);
    }
}
