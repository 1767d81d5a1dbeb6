//! Integer factorization for multiplicative-order computations: trial
//! division, deterministic Miller–Rabin for u64, and Brent's variant of
//! Pollard's rho. Every p^m - 1 arising here fits in 64 bits.

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1u64 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the base set covers all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle detection with batched gcds.
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut q = 1u64;
        let mut ys = y;
        let m = 128u64;
        let mut r = 1u64;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && d == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                d = gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if d == n {
            // Backtrack one step at a time.
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd(x.abs_diff(ys), n);
            }
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization as (prime, multiplicity) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in 2u64..1000 {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(v) = stack.pop() {
            if is_prime(v) {
                push(v, &mut out);
            } else {
                let d = pollard_rho(v);
                stack.push(d);
                stack.push(v / d);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Multiplicative order of a modulo n, for gcd(a, n) = 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(n > 0 && gcd(a % n, n) == 1, "order requires gcd(a, n) = 1");
    let mut cur = a % n;
    let mut k = 1u64;
    while cur != 1 % n {
        cur = mul_mod(cur, a, n);
        k += 1;
        assert!(k <= n, "order exceeded modulus");
    }
    k
}
