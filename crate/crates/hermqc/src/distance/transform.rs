//! Exact minimum distance through the dual: enumerate the (small) Euclidean
//! dual's weight distribution, then recover the code's distribution with the
//! MacWilliams transform in exact big-integer arithmetic. Works whenever the
//! dual dimension is small, regardless of the code's own dimension.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::Mat;

use super::{enumerate::weight_distribution, DistanceError, DistanceResult};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Krawtchouk polynomial K_w(j) over an alphabet of size q, length nn.
fn krawtchouk(nn: usize, q: u64, w: usize, j: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=w {
        let term = binomial(j, i)
            * binomial(nn - j, w - i)
            * BigInt::from(q - 1).pow((w - i) as u32);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Exact minimum distance via the dual weight distribution. The budget caps
/// q^(n-k), the dual enumeration size.
pub fn dmin_transform(gen: &Mat, dual_budget: u64) -> Result<DistanceResult, DistanceError> {
    let nn = gen.ncols();
    let q = gen.field().order() as u64;
    let k = gen.rank();
    if k == 0 {
        return Err(DistanceError::ZeroDimensional);
    }
    let dual = gen.nullspace();
    let b = weight_distribution(&dual, dual_budget)?;
    let work = b.iter().sum::<u64>();
    let dual_size = BigInt::from(q).pow((nn - k) as u32);
    let mut total = BigInt::zero();
    let mut dmin = None;
    for w in 0..=nn {
        let mut s = BigInt::zero();
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                s += BigInt::from(bj) * krawtchouk(nn, q, w, j);
            }
        }
        if (&s % &dual_size) != BigInt::zero() || s.is_negative() {
            return Err(DistanceError::BadSpectrum);
        }
        let aw = s / &dual_size;
        if w >= 1 && aw > BigInt::zero() && dmin.is_none() {
            dmin = Some(w);
        }
        total += aw;
    }
    if total != BigInt::from(q).pow(k as u32) {
        return Err(DistanceError::BadSpectrum);
    }
    match dmin {
        Some(d) => Ok(DistanceResult::exact(d, work)),
        None => Err(DistanceError::BadSpectrum),
    }
}
