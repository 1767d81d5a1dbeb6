//! Exhaustive codeword enumeration: one representative per projective class
//! (leading message coordinate fixed to 1), iterated odometer-style so each
//! step is a single scaled row addition with incremental weight tracking.
//! Chunks of the message space are statically partitioned for parallel runs;
//! results are combined by order-independent reductions.

use rayon::prelude::*;

use crate::field::{El, Field};
use crate::matrix::Mat;

use super::{sat_pow, DistanceError, DistanceResult};

const CHUNK: u64 = 1 << 16;

struct Basis {
    field: std::sync::Arc<Field>,
    n_cols: usize,
    supports: Vec<Vec<(usize, El)>>,
}

impl Basis {
    fn from_matrix(gen: &Mat) -> Basis {
        let (r, pivots) = gen.rref();
        let supports = (0..pivots.len())
            .map(|i| {
                r.row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != 0)
                    .map(|(c, &v)| (c, v))
                    .collect()
            })
            .collect();
        Basis { field: gen.field().clone(), n_cols: gen.ncols(), supports }
    }

    fn k(&self) -> usize {
        self.supports.len()
    }
}

struct Walker<'a> {
    basis: &'a Basis,
    lead: usize,
    digits: Vec<El>,
    cw: Vec<El>,
    weight: usize,
}

impl<'a> Walker<'a> {
    /// State for message number `c0` (base-Q digits over the suffix rows)
    /// with leading row `lead` at coefficient 1.
    fn start(basis: &'a Basis, lead: usize, c0: u64) -> Walker<'a> {
        let f = &basis.field;
        let q = f.order() as u64;
        let mut cw = vec![0 as El; basis.n_cols];
        let mut weight = 0usize;
        let add_row = |cw: &mut Vec<El>, weight: &mut usize, row: usize, coeff: El| {
            if coeff == 0 {
                return;
            }
            for &(pos, v) in &basis.supports[row] {
                let old = cw[pos];
                let new = f.add(old, f.mul(coeff, v));
                *weight = *weight + usize::from(new != 0) - usize::from(old != 0);
                cw[pos] = new;
            }
        };
        add_row(&mut cw, &mut weight, lead, 1);
        let suffix = basis.k() - 1 - lead;
        let mut digits = vec![0 as El; suffix];
        let mut rest = c0;
        for (i, d) in digits.iter_mut().enumerate() {
            *d = (rest % q) as El;
            rest /= q;
            add_row(&mut cw, &mut weight, lead + 1 + i, *d);
        }
        debug_assert_eq!(rest, 0, "chunk offset outside the suffix space");
        Walker { basis, lead, digits, cw, weight }
    }

    /// Advance the odometer one message; single scaled row addition per
    /// changed digit (carries touch higher digits with geometric rarity).
    fn step(&mut self) {
        let f = &self.basis.field;
        let q = f.order() as El;
        for i in 0..self.digits.len() {
            let old = self.digits[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            self.digits[i] = new;
            let delta = f.sub(new, old);
            for &(pos, v) in &self.basis.supports[self.lead + 1 + i] {
                let o = self.cw[pos];
                let nv = f.add(o, f.mul(delta, v));
                self.weight = self.weight + usize::from(nv != 0) - usize::from(o != 0);
                self.cw[pos] = nv;
            }
            if new != 0 {
                return;
            }
        }
        unreachable!("odometer stepped past the end of its chunk");
    }
}

/// Chunks (lead, start, len) covering every projective representative.
fn chunks(q: u64, k: usize) -> Vec<(usize, u64, u64)> {
    let mut out = Vec::new();
    for lead in 0..k {
        let total = sat_pow(q, (k - 1 - lead) as u64);
        let mut c0 = 0;
        while c0 < total {
            let len = CHUNK.min(total - c0);
            out.push((lead, c0, len));
            c0 += len;
        }
    }
    out
}

/// Exact minimum distance by full projective enumeration. The budget caps
/// q^k (the message-space size, before the projective reduction).
pub fn dmin_exhaustive(gen: &Mat, budget: u64) -> Result<DistanceResult, DistanceError> {
    let basis = Basis::from_matrix(gen);
    let k = basis.k();
    if k == 0 {
        return Err(DistanceError::ZeroDimensional);
    }
    let q = basis.field.order() as u64;
    let needed = sat_pow(q, k as u64);
    if needed > budget {
        return Err(DistanceError::BudgetExceeded { needed, budget });
    }
    let work = (needed - 1) / (q - 1);
    let min = chunks(q, k)
        .into_par_iter()
        .map(|(lead, c0, len)| {
            let mut w = Walker::start(&basis, lead, c0);
            let mut best = w.weight;
            for _ in 1..len {
                w.step();
                best = best.min(w.weight);
            }
            best
        })
        .reduce(|| usize::MAX, usize::min);
    Ok(DistanceResult::exact(min, work))
}

/// Full weight distribution A_0..A_n by the same enumeration; every
/// projective class contributes q-1 codewords of equal weight.
pub fn weight_distribution(gen: &Mat, budget: u64) -> Result<Vec<u64>, DistanceError> {
    let basis = Basis::from_matrix(gen);
    let k = basis.k();
    let n = gen.ncols();
    if k == 0 {
        let mut dist = vec![0u64; n + 1];
        dist[0] = 1;
        return Ok(dist);
    }
    let q = basis.field.order() as u64;
    let needed = sat_pow(q, k as u64);
    if needed > budget {
        return Err(DistanceError::BudgetExceeded { needed, budget });
    }
    let mut dist = chunks(q, k)
        .into_par_iter()
        .map(|(lead, c0, len)| {
            let mut hist = vec![0u64; n + 1];
            let mut w = Walker::start(&basis, lead, c0);
            hist[w.weight] += 1;
            for _ in 1..len {
                w.step();
                hist[w.weight] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    for v in dist.iter_mut() {
        *v *= q - 1;
    }
    dist[0] = 1;
    Ok(dist)
}
