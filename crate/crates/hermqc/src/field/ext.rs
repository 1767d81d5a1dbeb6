//! Extension fields GF(p^M) in coefficient representation, and the splitting
//! field of x^n - 1 over a base field GF(q^2).
//!
//! The splitting field fixes a canonical primitive n-th root of unity
//! zeta = gamma_ext^((p^M - 1)/n), where gamma_ext is the class of x modulo
//! the Conway polynomial; with Conway-compatible moduli the base field embeds
//! by gamma -> gamma_ext^((p^M - 1)/(q^2 - 1)), and that embedding is checked
//! to be a field homomorphism at construction time.

use super::conway::conway_polynomial;
use super::factor::mult_order;
use super::{El, Field, FieldError};
use std::collections::HashMap;
use std::sync::Arc;

/// Element of an extension field: coefficient vector over F_p, length M.
pub type ExtEl = Vec<u8>;

/// GF(p^M) modulo the Conway polynomial C_{p,M}.
pub struct ExtField {
    p: u16,
    m: usize,
    modulus: Vec<u8>,
    /// red[j] = x^(M+j) reduced mod the modulus, for j in 0..M-1.
    red: Vec<Vec<u8>>,
}

impl ExtField {
    pub fn new(p: u64, m: usize) -> ExtField {
        let modulus = conway_polynomial(p, m);
        Self::with_modulus(p, modulus)
    }

    fn with_modulus(p: u64, modulus: Vec<u8>) -> ExtField {
        let m = modulus.len() - 1;
        let mut red: Vec<Vec<u8>> = Vec::with_capacity(m.saturating_sub(1));
        // x^M = -(lower part of modulus)
        let mut cur: Vec<u8> = (0..m)
            .map(|i| ((p as u16 - modulus[i] as u16) % p as u16) as u8)
            .collect();
        for _ in 0..m.saturating_sub(1) {
            red.push(cur.clone());
            cur = mul_by_x(&cur, &red[0], p as u8);
        }
        ExtField { p: p as u16, m, modulus, red }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Field size p^M, which is required to fit in u64 here.
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    pub fn zero(&self) -> ExtEl {
        vec![0; self.m]
    }

    pub fn one(&self) -> ExtEl {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The class of x, a primitive element for Conway moduli.
    pub fn x(&self) -> ExtEl {
        let mut e = self.zero();
        if self.m > 1 {
            e[1] = 1;
        } else {
            // x = -modulus[0] in a degree-1 quotient
            e[0] = ((self.p - self.modulus[0] as u16) % self.p) as u8;
        }
        e
    }

    pub fn is_zero(&self, a: &ExtEl) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        a.iter()
            .zip(b)
            .map(|(x, y)| ((*x as u16 + *y as u16) % self.p) as u8)
            .collect()
    }

    pub fn neg(&self, a: &ExtEl) -> ExtEl {
        a.iter().map(|&x| ((self.p - x as u16) % self.p) as u8).collect()
    }

    pub fn sub(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        a.iter()
            .zip(b)
            .map(|(x, y)| ((*x as u16 + self.p - *y as u16) % self.p) as u8)
            .collect()
    }

    pub fn mul(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        let m = self.m;
        let mut raw = vec![0u32; 2 * m - 1];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] as u32;
            for j in 0..m {
                raw[i + j] += ai * b[j] as u32;
            }
        }
        for v in raw.iter_mut() {
            *v %= self.p as u32;
        }
        for j in (m..2 * m - 1).rev() {
            let c = raw[j];
            if c == 0 {
                continue;
            }
            let row = &self.red[j - m];
            for i in 0..m {
                raw[i] = (raw[i] + c * row[i] as u32) % self.p as u32;
            }
        }
        (0..m).map(|i| raw[i] as u8).collect()
    }

    pub fn pow(&self, a: &ExtEl, mut e: u64) -> ExtEl {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Canonical integer form: sum of digit_i * p^i. Fits u64 by `size`.
    pub fn pack(&self, a: &ExtEl) -> u64 {
        let mut v = 0u64;
        for &d in a.iter().rev() {
            v = v * self.p as u64 + d as u64;
        }
        v
    }
}

fn mul_by_x(v: &[u8], x_m: &[u8], p: u8) -> Vec<u8> {
    let m = v.len();
    let mut out = vec![0u8; m];
    out[1..m].copy_from_slice(&v[..m - 1]);
    let top = v[m - 1];
    if top != 0 {
        for i in 0..m {
            out[i] = ((out[i] as u16 + top as u16 * x_m[i] as u16) % p as u16) as u8;
        }
    }
    out
}

/// The splitting field of x^n - 1 over GF(q^2), with its canonical
/// primitive n-th root of unity and the base-field embedding.
pub struct SplittingField {
    base: Arc<Field>,
    n: u64,
    s: u64,
    ext: ExtField,
    zeta_pows: Vec<ExtEl>,
    embed_tab: Vec<ExtEl>,
    project_tab: HashMap<u64, El>,
}

impl SplittingField {
    pub fn new(base: &Arc<Field>, n: u64) -> Result<SplittingField, FieldError> {
        let q2 = base.order() as u64;
        let p = base.characteristic() as u64;
        if n < 2 {
            return Err(FieldError::LengthTooSmall(n));
        }
        if n % p == 0 {
            return Err(FieldError::LengthNotCoprime { n, p });
        }
        let s = mult_order(q2 % n, n);
        let m_ext = base.degree() * s as usize;
        // Packed-u64 projection keys need p^M < 2^63.
        if (m_ext as f64) * (p as f64).log2() > 62.0 {
            return Err(FieldError::SplittingFieldTooLarge { n, q2 });
        }
        let ext = ExtField::new(p, m_ext);
        let size = ext.size();
        assert_eq!((size - 1) % n, 0, "n must divide the splitting group order");
        let zeta = ext.pow(&ext.x(), (size - 1) / n);
        let mut zeta_pows = Vec::with_capacity(n as usize);
        let mut cur = ext.one();
        for _ in 0..n {
            zeta_pows.push(cur.clone());
            cur = ext.mul(&cur, &zeta);
        }
        assert_eq!(cur, ext.one(), "zeta must have order dividing n");
        {
            let mut seen = std::collections::HashSet::new();
            for z in &zeta_pows {
                assert!(seen.insert(ext.pack(z)), "zeta must have order exactly n");
            }
        }
        let embed_step = (size - 1) / (q2 - 1);
        let mut embed_tab = Vec::with_capacity(q2 as usize);
        embed_tab.push(ext.zero());
        let g = ext.pow(&ext.x(), embed_step);
        let mut cur = ext.one();
        for _ in 1..q2 {
            embed_tab.push(cur.clone());
            cur = ext.mul(&cur, &g);
        }
        // Conway compatibility makes the index map a field homomorphism;
        // verify additivity exhaustively since everything else rests on it.
        for a in base.elements() {
            for b in base.elements() {
                let lhs = &embed_tab[base.add(a, b) as usize];
                let rhs = ext.add(&embed_tab[a as usize], &embed_tab[b as usize]);
                assert_eq!(*lhs, rhs, "embedding must preserve addition");
            }
        }
        let mut project_tab = HashMap::new();
        for (i, e) in embed_tab.iter().enumerate() {
            project_tab.insert(ext.pack(e), i as El);
        }
        Ok(SplittingField { base: Arc::clone(base), n, s, ext, zeta_pows, embed_tab, project_tab })
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Degree of the splitting field over the base field.
    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn zeta_pow(&self, i: u64) -> &ExtEl {
        &self.zeta_pows[(i % self.n) as usize]
    }

    pub fn embed(&self, a: El) -> &ExtEl {
        &self.embed_tab[a as usize]
    }

    /// Inverse of the embedding, when the element lies in the base image.
    pub fn project(&self, e: &ExtEl) -> Option<El> {
        self.project_tab.get(&self.ext.pack(e)).copied()
    }

    /// Evaluate a base-field coefficient vector at zeta^i (Horner).
    pub fn eval_at_zeta_pow(&self, coeffs: &[El], i: u64) -> ExtEl {
        let z = self.zeta_pow(i);
        let mut acc = self.ext.zero();
        for &c in coeffs.iter().rev() {
            acc = self.ext.mul(&acc, z);
            acc = self.ext.add(&acc, self.embed(c));
        }
        acc
    }
}
