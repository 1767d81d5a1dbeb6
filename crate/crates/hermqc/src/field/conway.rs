//! Conway polynomials over F_p, computed from the definition: the
//! lexicographically least monic primitive polynomial of degree m (under the
//! signed-word order) whose root is norm-compatible with the Conway
//! polynomials of all maximal proper subfields.
//!
//! Degrees needed here stay small enough that p^m - 1 fits in 64 bits, so
//! primitivity testing runs on exact integer factorizations.

use super::factor::factorize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// The Conway polynomial C_{p,m}, ascending coefficients, length m+1, monic.
pub fn conway_polynomial(p: u64, m: usize) -> Vec<u8> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Vec<u8>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
        return f.clone();
    }
    let f = compute(p, m);
    cache.lock().unwrap().insert((p, m), f.clone());
    f
}

fn compute(p: u64, m: usize) -> Vec<u8> {
    assert!(p >= 2 && p <= 7 && m >= 1, "unsupported prime {p} or degree {m}");
    if m == 1 {
        // x - r for the least primitive root r of F_p.
        let r = (1..p).find(|&r| is_primitive_root(r, p)).unwrap();
        return vec![((p - r) % p) as u8, 1];
    }
    let group = p.checked_pow(m as u32).expect("p^m overflows u64") - 1;
    let prime_divisors: Vec<u64> = factorize(group).into_iter().map(|(q, _)| q).collect();
    // Maximal proper subfields: degree m/l for each prime l dividing m.
    let mut subfields: Vec<(Vec<u8>, u64)> = Vec::new();
    for l in prime_factors_of(m as u64) {
        let k = m / l as usize;
        let sub = conway_polynomial(p, k);
        let e = group / (p.pow(k as u32) - 1);
        subfields.push((sub, e));
    }
    if p == 2 {
        return compute_f2(m, group, &prime_divisors, &subfields);
    }
    let mut word = vec![0u8; m];
    loop {
        increment_word(&mut word, p as u8);
        assert!(word.iter().any(|&w| w != 0), "no Conway polynomial found");
        if word[0] == 0 {
            continue; // constant term zero means x divides the candidate
        }
        // Signed word order: coefficient i carries sign (-1)^(m-i).
        let mut f = vec![0u8; m + 1];
        f[m] = 1;
        for i in 0..m {
            f[i] = if (m - i) % 2 == 1 { ((p as u8) - word[i]) % p as u8 } else { word[i] };
        }
        if has_root_in_prime_field(&f, p as u8) {
            continue;
        }
        if m > 2 && divisible_by_small_irreducible(&f, p as u8) {
            continue;
        }
        if !is_irreducible(&f, p as u8, m) {
            continue;
        }
        if !x_is_primitive(&f, p as u8, group, &prime_divisors) {
            continue;
        }
        if subfields.iter().all(|(sub, e)| is_compatible(&f, p as u8, sub, *e)) {
            return f;
        }
    }
}

fn prime_factors_of(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(q, _)| q).collect()
}

fn is_primitive_root(r: u64, p: u64) -> bool {
    if p == 2 {
        return r == 1;
    }
    prime_factors_of(p - 1).iter().all(|&q| super::factor::pow_mod(r, (p - 1) / q, p) != 1)
}

fn increment_word(word: &mut [u8], p: u8) {
    for digit in word.iter_mut() {
        if *digit + 1 < p {
            *digit += 1;
            return;
        }
        *digit = 0;
    }
}

// ---- dense byte polynomials over F_p (ascending coefficients) ----

fn deg(a: &[u8]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn has_root_in_prime_field(f: &[u8], p: u8) -> bool {
    (1..p).any(|r| {
        let mut acc = 0u32;
        for &c in f.iter().rev() {
            acc = (acc * r as u32 + c as u32) % p as u32;
        }
        acc == 0
    })
}

fn rem(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    let db = deg(b);
    let mut r = a.to_vec();
    let lead_inv = inv_mod(b[db], p);
    while deg(&r) >= db && r.iter().any(|&c| c != 0) {
        let dr = deg(&r);
        if dr < db {
            break;
        }
        let coef = ((r[dr] as u32 * lead_inv as u32) % p as u32) as u8;
        for i in 0..=db {
            let sub = (coef as u32 * b[i] as u32) % p as u32;
            r[dr - db + i] = ((r[dr - db + i] as u32 + p as u32 - sub) % p as u32) as u8;
        }
    }
    r.truncate(db.max(1));
    r
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).unwrap()
}

fn divisible_by_small_irreducible(f: &[u8], p: u8) -> bool {
    small_irreducibles(p).iter().any(|g| rem(f, g, p).iter().all(|&c| c == 0))
}

fn small_irreducibles(p: u8) -> &'static [Vec<u8>] {
    static TABLE: OnceLock<Mutex<HashMap<u8, &'static [Vec<u8>]>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = table.lock().unwrap();
    *guard.entry(p).or_insert_with(|| {
        let mut list = Vec::new();
        for c1 in 0..p {
            for c0 in 1..p {
                let g = vec![c0, c1, 1];
                if !has_root_in_prime_field(&g, p) {
                    list.push(g);
                }
            }
        }
        Box::leak(list.into_boxed_slice())
    })
}

fn mul_mod_poly(a: &[u8], b: &[u8], f: &[u8], p: u8) -> Vec<u8> {
    let m = f.len() - 1;
    let mut raw = vec![0u32; 2 * m - 1];
    for i in 0..m {
        if a[i] == 0 {
            continue;
        }
        for j in 0..m {
            raw[i + j] += a[i] as u32 * b[j] as u32;
        }
    }
    // Fold x^(m+j) down using the monic modulus.
    for j in (m..2 * m - 1).rev() {
        let c = raw[j] % p as u32;
        if c == 0 {
            continue;
        }
        for i in 0..m {
            raw[j - m + i] += c * ((p - f[i] % p) % p) as u32;
        }
    }
    (0..m).map(|i| (raw[i] % p as u32) as u8).collect()
}

fn pow_mod_poly(a: &[u8], mut e: u64, f: &[u8], p: u8) -> Vec<u8> {
    let m = f.len() - 1;
    let mut base = a.to_vec();
    let mut acc = vec![0u8; m];
    acc[0] = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_poly(&acc, &base, f, p);
        }
        base = mul_mod_poly(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u8], b: &[u8], p: u8) -> Vec<u8> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while b.iter().any(|&c| c != 0) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn is_irreducible(f: &[u8], p: u8, m: usize) -> bool {
    // Frobenius chain: x^(p^m) = x mod f, and for each prime l | m the
    // iterate at step m/l must share no factor with f beyond constants.
    let proper: Vec<usize> = prime_factors_of(m as u64).iter().map(|&l| m / l as usize).collect();
    let mut t = vec![0u8; m];
    if m == 1 {
        return true;
    }
    t[1] = 1; // x
    let x = t.clone();
    let mut iterates: HashMap<usize, Vec<u8>> = HashMap::new();
    for step in 1..=m {
        t = pow_mod_poly(&t, p as u64, f, p);
        if proper.contains(&step) {
            iterates.insert(step, t.clone());
        }
    }
    if t != x {
        return false;
    }
    for (_, u) in iterates {
        let mut diff: Vec<u8> = u
            .iter()
            .zip(&x)
            .map(|(a, b)| ((*a as u32 + p as u32 - *b as u32) % p as u32) as u8)
            .collect();
        if diff.iter().all(|&c| c == 0) {
            return false;
        }
        diff.push(0);
        let g = poly_gcd(f, &diff, p);
        if deg(&g) != 0 {
            return false;
        }
    }
    true
}

fn x_is_primitive(f: &[u8], p: u8, group: u64, prime_divisors: &[u64]) -> bool {
    let m = f.len() - 1;
    let mut x = vec![0u8; m];
    x[1] = 1;
    prime_divisors.iter().all(|&r| {
        let y = pow_mod_poly(&x, group / r, f, p);
        !(y[0] == 1 && y[1..].iter().all(|&c| c == 0))
    })
}

fn is_compatible(f: &[u8], p: u8, sub: &[u8], e: u64) -> bool {
    let m = f.len() - 1;
    let mut x = vec![0u8; m];
    x[1] = 1;
    let y = pow_mod_poly(&x, e, f, p);
    // Horner evaluation of the subfield polynomial at y.
    let mut acc = vec![0u8; m];
    for &c in sub.iter().rev() {
        acc = mul_mod_poly(&acc, &y, f, p);
        acc[0] = ((acc[0] as u32 + c as u32) % p as u32) as u8;
    }
    acc.iter().all(|&c| c == 0)
}

// ---- F_2 fast path on bit-packed polynomials ----

fn compute_f2(m: usize, group: u64, prime_divisors: &[u64], subfields: &[(Vec<u8>, u64)]) -> Vec<u8> {
    assert!(m <= 60);
    let subs2: Vec<(u64, u64)> = subfields.iter().map(|(s, e)| (bits_of(s), *e)).collect();
    let proper: Vec<usize> = prime_factors_of(m as u64).iter().map(|&l| m / l as usize).collect();
    let mut c: u64 = 1;
    loop {
        let f = c | (1u64 << m);
        c += 2; // keep the constant term set
        if (f.count_ones() & 1) == 0 {
            continue; // f(1) = 0
        }
        if m > 2 && rem2(f, 0b111) == 0 {
            continue;
        }
        if m > 3 && (rem2(f, 0b1011) == 0 || rem2(f, 0b1101) == 0) {
            continue;
        }
        if !irreducible2(f, m, &proper) {
            continue;
        }
        if !prime_divisors.iter().all(|&r| pow_mod2(0b10, group / r, f, m) != 1) {
            continue;
        }
        if subs2.iter().all(|&(sub, e)| {
            let y = pow_mod2(0b10, e, f, m);
            eval2(sub, y, f, m) == 0
        }) {
            return (0..=m).map(|i| ((f >> i) & 1) as u8).collect();
        }
    }
}

fn bits_of(poly: &[u8]) -> u64 {
    poly.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64 & 1) << i))
}

fn deg2(a: u128) -> u32 {
    127 - a.leading_zeros()
}

fn rem2(a: u64, b: u64) -> u64 {
    let mut a = a as u128;
    let b = b as u128;
    let db = deg2(b);
    while a != 0 && deg2(a) >= db {
        a ^= b << (deg2(a) - db);
    }
    a as u64
}

fn mul_mod2(a: u64, b: u64, f: u64, m: usize) -> u64 {
    let mut acc: u128 = 0;
    let mut bb = b as u128;
    let mut aa = a;
    while aa != 0 {
        if aa & 1 == 1 {
            acc ^= bb;
        }
        aa >>= 1;
        bb <<= 1;
    }
    reduce2(acc, f, m)
}

fn reduce2(mut acc: u128, f: u64, m: usize) -> u64 {
    let fm = f as u128;
    while acc >> m != 0 {
        let d = deg2(acc);
        acc ^= fm << (d - m as u32);
    }
    acc as u64
}

fn square_mod2(a: u64, f: u64, m: usize) -> u64 {
    static SPREAD: OnceLock<[u16; 256]> = OnceLock::new();
    let spread = SPREAD.get_or_init(|| {
        let mut t = [0u16; 256];
        for (b, slot) in t.iter_mut().enumerate() {
            let mut v = 0u16;
            for i in 0..8 {
                if b >> i & 1 == 1 {
                    v |= 1 << (2 * i);
                }
            }
            *slot = v;
        }
        t
    });
    let mut sq: u128 = 0;
    for byte in 0..8 {
        let part = (a >> (8 * byte)) & 0xff;
        sq |= (spread[part as usize] as u128) << (16 * byte);
    }
    reduce2(sq, f, m)
}

fn pow_mod2(mut a: u64, mut e: u64, f: u64, m: usize) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod2(acc, a, f, m);
        }
        a = square_mod2(a, f, m);
        e >>= 1;
    }
    acc
}

fn gcd2(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, rem2(a, b));
    }
    a
}

fn irreducible2(f: u64, m: usize, proper: &[usize]) -> bool {
    let mut t = 0b10u64;
    let mut ok = true;
    for step in 1..=m {
        t = square_mod2(t, f, m);
        if proper.contains(&step) {
            let d = t ^ 0b10;
            if d == 0 || deg2(gcd2(f, d) as u128) != 0 {
                ok = false;
                break;
            }
        }
    }
    ok && t == 0b10
}

fn eval2(sub: u64, y: u64, f: u64, m: usize) -> u64 {
    let mut acc = 0u64;
    let d = deg2(sub as u128);
    for i in (0..=d).rev() {
        acc = mul_mod2(acc, y, f, m);
        acc ^= (sub >> i) & 1;
    }
    acc
}
