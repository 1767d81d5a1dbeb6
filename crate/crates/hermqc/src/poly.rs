//! Polynomials over GF(q^2) and the quotient ring R = GF(q^2)[x]/(x^n - 1),
//! including the compressed run-length string notation used for generator
//! polynomials: a symbol optionally followed by ^k or ^{k} denotes k copies
//! of that coefficient, constant term first ("12^{3}1" = 1 + 2x + 2x^2 +
//! 2x^3 + x^4).

use crate::field::{El, Field};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotationError {
    #[error("empty polynomial string")]
    Empty,
    #[error("bad symbol {ch:?} at position {pos}")]
    BadSymbol { pos: usize, ch: char },
    #[error("caret at position {pos} must be followed by a repeat count")]
    BadCount { pos: usize },
    #[error("repeat count at position {pos} must be at least 1")]
    ZeroCount { pos: usize },
    #[error("unclosed brace in repeat count at position {pos}")]
    UnclosedBrace { pos: usize },
    #[error("expanded length {len} exceeds the {max}-coefficient limit")]
    TooLong { len: usize, max: usize },
}

const MAX_COEFFS: usize = 1 << 20;

/// Dense polynomial, ascending coefficients with no trailing zeros
/// (the zero polynomial has an empty coefficient vector).
#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<El>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly[GF{}]({})", self.field.order(), self.format())
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

impl Poly {
    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly { field: Arc::clone(field), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly { field: Arc::clone(field), coeffs: vec![1] }
    }

    pub fn from_coeffs(field: &Arc<Field>, mut coeffs: Vec<El>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: Arc::clone(field), coeffs }
    }

    pub fn monomial(field: &Arc<Field>, coeff: El, degree: usize) -> Poly {
        if coeff == 0 {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff;
        Poly { field: Arc::clone(field), coeffs }
    }

    /// x^n - 1, the modulus of the ambient quotient ring.
    pub fn x_pow_minus_one(field: &Arc<Field>, n: usize) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(field.one());
        coeffs[n] = 1;
        Poly { field: Arc::clone(field), coeffs }
    }

    pub fn parse(field: &Arc<Field>, input: &str) -> Result<Poly, NotationError> {
        let chars: Vec<(usize, char)> =
            input.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(NotationError::Empty);
        }
        let mut coeffs: Vec<El> = Vec::new();
        let mut i = 0usize;
        while i < chars.len() {
            let (pos, ch) = chars[i];
            let el = field
                .element_from_symbol(ch)
                .map_err(|_| NotationError::BadSymbol { pos, ch })?;
            i += 1;
            let mut count = 1usize;
            if i < chars.len() && chars[i].1 == '^' {
                let caret_pos = chars[i].0;
                i += 1;
                let braced = i < chars.len() && chars[i].1 == '{';
                if braced {
                    i += 1;
                }
                let mut digits = String::new();
                // Unbraced counts are a single digit; with digit symbols in
                // the alphabet, anything longer would be ambiguous.
                while i < chars.len()
                    && chars[i].1.is_ascii_digit()
                    && (braced || digits.is_empty())
                {
                    digits.push(chars[i].1);
                    i += 1;
                }
                if digits.is_empty() {
                    return Err(NotationError::BadCount { pos: caret_pos });
                }
                if braced {
                    if i >= chars.len() || chars[i].1 != '}' {
                        return Err(NotationError::UnclosedBrace { pos: caret_pos });
                    }
                    i += 1;
                }
                count = digits
                    .parse::<usize>()
                    .map_err(|_| NotationError::BadCount { pos: caret_pos })?;
                if count == 0 {
                    return Err(NotationError::ZeroCount { pos: caret_pos });
                }
            }
            if coeffs.len() + count > MAX_COEFFS {
                return Err(NotationError::TooLong { len: coeffs.len() + count, max: MAX_COEFFS });
            }
            coeffs.extend(std::iter::repeat(el).take(count));
        }
        Ok(Poly::from_coeffs(field, coeffs))
    }

    /// Canonical compressed form: runs of length k >= 2 print as s^k, with
    /// braces once k has more than one digit. The zero polynomial is "0".
    pub fn format(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.coeffs.len() {
            let sym = self.field.symbol(self.coeffs[i]);
            let mut run = 1usize;
            while i + run < self.coeffs.len() && self.coeffs[i + run] == self.coeffs[i] {
                run += 1;
            }
            out.push(sym);
            if run >= 3 {
                out.push_str(&format!("^{{{run}}}"));
            } else if run == 2 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[El] {
        &self.coeffs
    }

    /// Coefficient vector padded to exactly n entries.
    pub fn coeff_vector(&self, n: usize) -> Vec<El> {
        assert!(self.coeffs.len() <= n, "polynomial does not fit in window {n}");
        let mut v = self.coeffs.clone();
        v.resize(n, 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> El {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> El {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly { field: Arc::clone(&self.field), coeffs }
    }

    pub fn scale(&self, s: El) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.mul(c, s)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut coeffs = vec![0 as El; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }

    /// Product reduced modulo x^n - 1 (circular convolution).
    pub fn mul_mod(&self, other: &Poly, n: usize) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut coeffs = vec![0 as El; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n;
                coeffs[k] = f.add(coeffs[k], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }

    /// Remainder modulo x^n - 1.
    pub fn rem_circ(&self, n: usize) -> Poly {
        let f = &self.field;
        let mut coeffs = vec![0 as El; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[i % n] = f.add(coeffs[i % n], a);
        }
        Poly::from_coeffs(f, coeffs)
    }

    /// Euclidean division: self = q * divisor + r with deg r < deg divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        let db = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading_coeff());
        let mut r = self.coeffs.clone();
        let mut q = vec![0 as El; self.coeffs.len().saturating_sub(db)];
        while r.len() > db {
            let da = r.len() - 1;
            let c = f.mul(*r.last().unwrap(), lead_inv);
            if c != 0 {
                q[da - db] = c;
                for i in 0..=db {
                    let s = f.mul(c, divisor.coeffs[i]);
                    r[da - db + i] = f.sub(r[da - db + i], s);
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
        }
        (Poly::from_coeffs(f, q), Poly::from_coeffs(f, r))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// True when self divides other exactly (zero divides only zero).
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading_coeff()))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        self.mul(other).divrem(&g).0.monic()
    }

    pub fn eval(&self, at: El) -> El {
        let f = &self.field;
        let mut acc = 0 as El;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, at), c);
        }
        acc
    }

    /// Coefficientwise conjugation: each coefficient raised to the q-th power.
    pub fn conjugated(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.conj(c)).collect();
        Poly { field: Arc::clone(&self.field), coeffs }
    }

    /// Ring reversal in R: coefficient of x^i moves to x^((n-i) mod n).
    /// Requires deg < n; an involution on R.
    pub fn reversed_window(&self, n: usize) -> Poly {
        assert!(self.coeffs.len() <= n, "reversal window too small");
        let mut coeffs = vec![0 as El; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(n - i) % n] = c;
        }
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Conjugated ring reversal (the bar-conjugation operator on R).
    pub fn bar_conj(&self, n: usize) -> Poly {
        self.conjugated().reversed_window(n)
    }

    /// Plain reciprocal x^deg * p(1/x); degree is preserved when the
    /// constant term is nonzero.
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Generator of the Hermitian dual of the cyclic code <self> in R:
    /// the monic conjugated reciprocal of (x^n - 1)/self.
    pub fn hermitian_dual_gen(&self, n: usize) -> Poly {
        let modulus = Poly::x_pow_minus_one(&self.field, n);
        assert!(self.divides(&modulus), "generator must divide x^n - 1");
        let (h, r) = modulus.divrem(self);
        debug_assert!(r.is_zero());
        h.conjugated().reciprocal().monic()
    }
}

/// Hermitian inner product of two length-n coefficient vectors:
/// sum of u_i * conj(v_i).
pub fn hermitian_ip(field: &Field, u: &[El], v: &[El]) -> El {
    assert_eq!(u.len(), v.len());
    let mut acc = 0 as El;
    for (&a, &b) in u.iter().zip(v) {
        acc = field.add(acc, field.mul(a, field.conj(b)));
    }
    acc
}
