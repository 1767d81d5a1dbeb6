//! Small finite fields GF(q^2) for q in {2,3,4,5}, plus the splitting-field
//! machinery needed to factor x^n - 1 over them.
//!
//! Elements are stored as discrete-log indices: 0 is the zero element and
//! k >= 1 denotes gamma^(k-1) for the fixed primitive element gamma (a root
//! of the Conway polynomial of the field). Multiplication is index
//! arithmetic; addition goes through a precomputed table.

mod conway;
mod ext;
mod factor;

pub use conway::conway_polynomial;
pub use ext::{ExtEl, ExtField, SplittingField};
pub use factor::{factorize, is_prime};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// An element of a base field, as a discrete-log index (0 = zero).
pub type El = u8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field order {0}; expected 4, 9, 16, or 25")]
    UnsupportedOrder(usize),
    #[error("symbol {0:?} is not in the alphabet of GF({1})")]
    BadSymbol(char, usize),
    #[error("block length must be at least 2, got {0}")]
    LengthTooSmall(u64),
    #[error("block length {n} shares a factor with the characteristic {p}")]
    LengthNotCoprime { n: u64, p: u64 },
    #[error("splitting field of x^{n} - 1 over GF({q2}) exceeds the packed 64-bit range")]
    SplittingFieldTooLarge { n: u64, q2: u64 },
}

/// GF(p^m) with m even, built from the Conway polynomial of that order.
pub struct Field {
    order: usize,
    p: usize,
    m: usize,
    q: usize,
    modulus: Vec<u8>,
    alphabet: &'static [u8],
    add_tab: Vec<El>,
    neg_tab: Vec<El>,
    /// Coefficient vector (over F_p) of each element, by index.
    vecs: Vec<Vec<u8>>,
}

const ALPHABETS: [(usize, &str); 4] = [
    (4, "0123"),
    (9, "012345678"),
    (16, "0123456789ABCDEF"),
    (25, "0123456789ABCDEFGHIJKLMNO"),
];

impl Field {
    /// The field with the given order, constructed once and cached.
    pub fn with_order(order: usize) -> Result<Arc<Field>, FieldError> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        if let Some(f) = guard.get(&order) {
            return Ok(Arc::clone(f));
        }
        let f = Arc::new(Field::build(order)?);
        guard.insert(order, Arc::clone(&f));
        Ok(f)
    }

    fn build(order: usize) -> Result<Field, FieldError> {
        let (p, m) = match order {
            4 => (2usize, 2usize),
            9 => (3, 2),
            16 => (2, 4),
            25 => (5, 2),
            _ => return Err(FieldError::UnsupportedOrder(order)),
        };
        let alphabet = ALPHABETS
            .iter()
            .find(|(o, _)| *o == order)
            .map(|(_, a)| a.as_bytes())
            .unwrap();
        let modulus = conway_polynomial(p as u64, m);
        // Element vectors: index 0 is zero, index k >= 1 is x^(k-1) mod the
        // Conway polynomial, which is primitive by construction.
        let mut vecs: Vec<Vec<u8>> = Vec::with_capacity(order);
        vecs.push(vec![0u8; m]);
        let mut cur = vec![0u8; m];
        cur[0] = 1;
        for _ in 0..order - 1 {
            vecs.push(cur.clone());
            cur = mul_by_x(&cur, &modulus, p as u8);
        }
        debug_assert_eq!(cur, vecs[1], "defining polynomial must be primitive");
        let mut index_of: HashMap<Vec<u8>, El> = HashMap::new();
        for (i, v) in vecs.iter().enumerate() {
            index_of.insert(v.clone(), i as El);
        }
        let mut add_tab = vec![0 as El; order * order];
        for a in 0..order {
            for b in 0..order {
                let sum: Vec<u8> = vecs[a]
                    .iter()
                    .zip(&vecs[b])
                    .map(|(x, y)| ((*x as usize + *y as usize) % p) as u8)
                    .collect();
                add_tab[a * order + b] = index_of[&sum];
            }
        }
        let mut neg_tab = vec![0 as El; order];
        for a in 0..order {
            let neg: Vec<u8> = vecs[a].iter().map(|x| ((p - *x as usize) % p) as u8).collect();
            neg_tab[a] = index_of[&neg];
        }
        let q = (1..=order).find(|c| c * c == order).unwrap();
        Ok(Field { order, p, m, q, modulus, alphabet, add_tab, neg_tab, vecs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The subfield size q with q^2 = order.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.m
    }

    /// Defining (Conway) polynomial over F_p, ascending coefficients.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Coefficient vector of an element over F_p.
    pub fn coeff_vector(&self, a: El) -> &[u8] {
        &self.vecs[a as usize]
    }

    pub fn zero(&self) -> El {
        0
    }

    pub fn one(&self) -> El {
        1
    }

    /// The primitive element gamma.
    pub fn gamma(&self) -> El {
        2
    }

    pub fn add(&self, a: El, b: El) -> El {
        self.add_tab[a as usize * self.order + b as usize]
    }

    pub fn neg(&self, a: El) -> El {
        self.neg_tab[a as usize]
    }

    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: El, b: El) -> El {
        if a == 0 || b == 0 {
            return 0;
        }
        let g = self.order - 1;
        ((a as usize - 1 + b as usize - 1) % g + 1) as El
    }

    pub fn inv(&self, a: El) -> El {
        assert!(a != 0, "inverse of zero");
        let g = self.order - 1;
        ((g - (a as usize - 1)) % g + 1) as El
    }

    pub fn div(&self, a: El, b: El) -> El {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: El, e: u64) -> El {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let g = (self.order - 1) as u64;
        (((a as u64 - 1) * (e % g)) % g + 1) as El
    }

    /// Conjugation a -> a^q, the order-2 automorphism fixing GF(q).
    pub fn conj(&self, a: El) -> El {
        self.pow(a, self.q as u64)
    }

    /// Symbol alphabet: position i is the symbol of element index i.
    pub fn alphabet(&self) -> &'static [u8] {
        self.alphabet
    }

    pub fn symbol(&self, a: El) -> char {
        self.alphabet[a as usize] as char
    }

    pub fn element_from_symbol(&self, c: char) -> Result<El, FieldError> {
        self.alphabet
            .iter()
            .position(|&s| s as char == c)
            .map(|i| i as El)
            .ok_or(FieldError::BadSymbol(c, self.order))
    }

    /// All elements, zero first then powers of gamma.
    pub fn elements(&self) -> impl Iterator<Item = El> {
        0..self.order as El
    }
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

fn mul_by_x(v: &[u8], modulus: &[u8], p: u8) -> Vec<u8> {
    let m = v.len();
    let mut out = vec![0u8; m];
    out[1..m].copy_from_slice(&v[..m - 1]);
    let top = v[m - 1];
    if top != 0 {
        // x^m = -(modulus lower part)
        for i in 0..m {
            let sub = (top as u16 * modulus[i] as u16) % p as u16;
            out[i] = ((out[i] as u16 + p as u16 - sub) % p as u16) as u8;
        }
    }
    out
}
