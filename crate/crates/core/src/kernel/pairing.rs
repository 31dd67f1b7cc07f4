//! Cantor pairing and the derived codes for words and finite lists.
//!
//! All search loops in the engine dovetail by increasing cantor code, so
//! these functions fix the iteration order of every construction.

use crate::kernel::Sym;
use num_integer::Roots;
use num_traits::{One, Zero};

/// `cantor(i, j) = (i + j)(i + j + 1) / 2 + j`.
pub fn cantor(i: u64, j: u64) -> u64 {
    let s = i + j;
    s * (s + 1) / 2 + j
}

/// Inverse of [`cantor`].
pub fn cantor_unpair(n: u64) -> (u64, u64) {
    // s = floor((sqrt(8n+1) - 1) / 2), guarded against isqrt rounding.
    let mut s = (((8u128 * n as u128 + 1).sqrt() - 1) / 2) as u64;
    while s * (s + 1) / 2 > n {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= n {
        s += 1;
    }
    let j = n - s * (s + 1) / 2;
    (s - j, j)
}

/// [`cantor`] on unbounded naturals.
pub fn cantor_big(i: &Sym, j: &Sym) -> Sym {
    let s = i + j;
    &s * (&s + 1u32) / 2u32 + j
}

/// Inverse of [`cantor_big`].
pub fn cantor_unpair_big(n: &Sym) -> (Sym, Sym) {
    let mut s = ((n * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    while &s * (&s + 1u32) / 2u32 > *n {
        s -= 1u32;
    }
    loop {
        let next = (&s + 1u32) * (&s + 2u32) / 2u32;
        if next <= *n {
            s += 1u32;
        } else {
            break;
        }
    }
    let j = n - &s * (&s + 1u32) / 2u32;
    (&s - &j, j)
}

pub fn sym(n: u64) -> Sym {
    Sym::from(n)
}

/// Swap the two arms of a cantor-coded value: `<a,b> -> <b,a>`.
pub fn swap_arms(v: &Sym) -> Sym {
    let (a, b) = cantor_unpair_big(v);
    cantor_big(&b, &a)
}

/// Bijection between naturals and finite words over the naturals:
/// `0` is the empty word and `n + 1` decodes as `head :: decode(rest)`
/// with `(head, rest) = cantor_unpair(n)`.
pub fn word_decode(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        let (head, rest) = cantor_unpair(n - 1);
        out.push(head);
        n = rest;
    }
    out
}

/// Inverse of [`word_decode`].
pub fn word_encode(word: &[u64]) -> u64 {
    let mut n = 0u64;
    for &x in word.iter().rev() {
        n = cantor(x, n) + 1;
    }
    n
}

/// Heap indexing of binary words: the empty word is `0`, and extending a
/// word with bit `b` maps index `i` to `2 i + 1 + b`.
pub fn bin_word_decode(mut n: u64) -> Vec<u8> {
    let mut out = Vec::new();
    while n > 0 {
        let b = ((n - 1) % 2) as u8;
        out.push(b);
        n = (n - 1) / 2;
    }
    out.reverse();
    out
}

/// Inverse of [`bin_word_decode`].
pub fn bin_word_encode(word: &[u8]) -> u64 {
    let mut n = 0u64;
    for &b in word {
        n = 2 * n + 1 + b as u64;
    }
    n
}

/// Canonical code of a strictly increasing list: length-prefixed fold
/// through cantor, `cantor(len, cantor(x1, cantor(x2, ... 0)))`.
pub fn sorted_list_encode(items: &[Sym]) -> Option<Sym> {
    for w in items.windows(2) {
        if w[0] >= w[1] {
            return None;
        }
    }
    let mut inner = Sym::zero();
    for x in items.iter().rev() {
        inner = cantor_big(x, &inner);
    }
    Some(cantor_big(&sym(items.len() as u64), &inner))
}

/// Inverse of [`sorted_list_encode`]; `None` when the list coded inside is
/// not strictly increasing.
pub fn sorted_list_decode(code: &Sym) -> Option<Vec<Sym>> {
    let (len, mut inner) = cantor_unpair_big(code);
    let len = if len <= Sym::from(u32::MAX) {
        u64::try_from(len).ok()?
    } else {
        return None;
    };
    let mut items = Vec::with_capacity(len as usize);
    for _ in 0..len {
        let (x, rest) = cantor_unpair_big(&inner);
        items.push(x);
        inner = rest;
    }
    if !inner.is_zero() {
        return None;
    }
    for w in items.windows(2) {
        if w[0] >= w[1] {
            return None;
        }
    }
    Some(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_formula_values() {
        assert_eq!(cantor(0, 0), 0);
        assert_eq!(cantor(1, 2), 8);
    }

    #[test]
    fn cantor_roundtrip_brute_force() {
        // Brute-force inverse law over i, j <= 8.
        for i in 0..=8 {
            for j in 0..=8 {
                assert_eq!(cantor_unpair(cantor(i, j)), (i, j));
            }
        }
        for n in 0..2048 {
            let (i, j) = cantor_unpair(n);
            assert_eq!(cantor(i, j), n);
        }
    }

    #[test]
    fn cantor_big_matches_small() {
        for n in 0..512u64 {
            let (i, j) = cantor_unpair(n);
            let big = cantor_big(&sym(i), &sym(j));
            assert_eq!(big, sym(n));
            let (bi, bj) = cantor_unpair_big(&sym(n));
            assert_eq!((bi, bj), (sym(i), sym(j)));
        }
    }

    #[test]
    fn word_codes_roundtrip() {
        for n in 0..512 {
            assert_eq!(word_encode(&word_decode(n)), n);
        }
        assert_eq!(word_decode(0), Vec::<u64>::new());
    }

    #[test]
    fn bin_word_codes_roundtrip() {
        for n in 0..256 {
            assert_eq!(bin_word_encode(&bin_word_decode(n)), n);
        }
        assert_eq!(bin_word_encode(&[]), 0);
        assert_eq!(bin_word_encode(&[0]), 1);
        assert_eq!(bin_word_encode(&[1]), 2);
    }

    #[test]
    fn list_codes_roundtrip() {
        let lists: Vec<Vec<u64>> = vec![vec![], vec![3], vec![2, 25], vec![2, 4, 7]];
        for l in lists {
            let items: Vec<Sym> = l.iter().map(|&x| sym(x)).collect();
            let code = sorted_list_encode(&items).unwrap();
            assert_eq!(sorted_list_decode(&code).unwrap(), items);
        }
        // Empty list has code 0.
        assert_eq!(sorted_list_encode(&[]).unwrap(), Sym::zero());
        // Non-increasing lists are rejected.
        assert!(sorted_list_encode(&[sym(4), sym(4)]).is_none());
    }

    #[test]
    fn swap_arms_involution() {
        for n in 0..128u64 {
            let v = sym(n);
            assert_eq!(swap_arms(&swap_arms(&v)), v);
        }
        let (a, b) = cantor_unpair(77);
        assert_eq!(swap_arms(&sym(77)), sym(cantor(b, a)));
    }
}
