//! Information-set distance search: greedily built (possibly overlapping)
//! information sets with relative ranks, message enumeration by ascending
//! weight, and the matched lower bound that grows with each completed weight
//! pass. Also the seeded random-information-set sampler used to exhibit a
//! low-weight codeword quickly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{El, Field};
use crate::matrix::Mat;

use super::{DistanceError, DistanceResult};

/// Gaussian elimination visiting columns in the given order; rows are
/// reduced in place, pivot columns are returned in visit order.
fn eliminate_ordered(field: &Field, rows: &mut [Vec<El>], order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(pr, r);
        let inv = field.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = field.mul(inv, *v);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..rows[i].len() {
                    let sub = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn supports_of(rows: &[Vec<El>]) -> Vec<Vec<(usize, El)>> {
    rows.iter()
        .map(|r| r.iter().enumerate().filter(|&(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
        .collect()
}

/// Enumerate all weight-w messages (first nonzero coefficient 1) over the
/// given basis rows, invoking `visit(codeword, weight)` per message; stops
/// early when visit returns false. Returns the number of messages visited.
fn enumerate_weight(
    field: &Field,
    supports: &[Vec<(usize, El)>],
    n_cols: usize,
    w: usize,
    visit: &mut impl FnMut(&[El], usize) -> bool,
) -> u64 {
    let k = supports.len();
    if w == 0 || w > k {
        return 0;
    }
    let q = field.order() as El;
    let mut count = 0u64;
    let mut combo: Vec<usize> = (0..w).collect();
    let mut cw = vec![0 as El; n_cols];
    loop {
        cw.iter_mut().for_each(|v| *v = 0);
        let mut weight = 0usize;
        for &row in &combo {
            for &(pos, v) in &supports[row] {
                let old = cw[pos];
                let new = field.add(old, v);
                weight = weight + usize::from(new != 0) - usize::from(old != 0);
                cw[pos] = new;
            }
        }
        let mut digits = vec![1 as El; w - 1];
        count += 1;
        if !visit(&cw, weight) {
            return count;
        }
        'values: loop {
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break 'values;
                }
                let old = digits[i];
                let new = if old + 1 == q { 1 } else { old + 1 };
                digits[i] = new;
                let delta = field.sub(new, old);
                for &(pos, v) in &supports[combo[1 + i]] {
                    let o = cw[pos];
                    let nv = field.add(o, field.mul(delta, v));
                    weight = weight + usize::from(nv != 0) - usize::from(o != 0);
                    cw[pos] = nv;
                }
                if new != 1 {
                    break;
                }
                i += 1;
            }
            count += 1;
            if !visit(&cw, weight) {
                return count;
            }
        }
        // Advance to the next lexicographic combination.
        let mut i = w;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if combo[i] != i + k - w {
                combo[i] += 1;
                for j in i + 1..w {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

struct SysSet {
    supports: Vec<Vec<(usize, El)>>,
    rel_rank: usize,
}

fn build_sets(gen: &Mat) -> (usize, Vec<Vec<El>>, Vec<SysSet>) {
    let field = gen.field().clone();
    let (r, pivots) = gen.rref();
    let k = pivots.len();
    let n = gen.ncols();
    let base: Vec<Vec<El>> = (0..k).map(|i| r.row(i).to_vec()).collect();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    if k == 0 {
        return (0, base, sets);
    }
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
        order.extend((0..n).filter(|&c| used[c]));
        let mut rows = base.clone();
        let piv = eliminate_ordered(&field, &mut rows, &order);
        let rel = piv.iter().filter(|&&c| !used[c]).count();
        if rel == 0 {
            break;
        }
        for &c in &piv {
            used[c] = true;
        }
        sets.push(SysSet { supports: supports_of(&rows), rel_rank: rel });
    }
    (k, base, sets)
}

/// Information-set minimum-distance search with a deterministic work budget
/// (counted in enumerated messages). Stops only at weight-pass boundaries,
/// so equal budgets give equal results regardless of timing.
pub fn dmin_bz(gen: &Mat, max_work: u64) -> Result<DistanceResult, DistanceError> {
    let field = gen.field().clone();
    let (k, base, sets) = build_sets(gen);
    if k == 0 {
        return Err(DistanceError::ZeroDimensional);
    }
    let n = gen.ncols();
    let mut ub = usize::MAX;
    for i in 0..gen.nrows() {
        let wt = gen.row(i).iter().filter(|&&v| v != 0).count();
        if wt > 0 {
            ub = ub.min(wt);
        }
    }
    for row in &base {
        ub = ub.min(row.iter().filter(|&&v| v != 0).count());
    }
    let mut work = 0u64;
    let mut w = 1usize;
    loop {
        for set in &sets {
            work += enumerate_weight(&field, &set.supports, n, w, &mut |_cw, weight| {
                if weight > 0 && weight < ub {
                    ub = weight;
                }
                true
            });
        }
        let lb: usize = sets
            .iter()
            .map(|s| (w + 1).saturating_sub(k - s.rel_rank))
            .sum();
        if lb >= ub {
            return Ok(DistanceResult::exact(ub, work));
        }
        if work >= max_work || w >= n {
            return Ok(DistanceResult { lower: lb.min(ub).max(1), upper: ub, work });
        }
        w += 1;
    }
}

/// Randomized information-set sampling: permute columns, re-systematize, and
/// enumerate weight-1 and weight-2 messages, keeping the lightest codeword.
/// Returns as soon as one of weight at or under `target` appears. Fully
/// deterministic for a fixed seed.
pub fn find_low_weight(
    gen: &Mat,
    target: usize,
    seed: u64,
    max_sets: u64,
) -> Option<(usize, Vec<El>)> {
    let field = gen.field().clone();
    let (r, pivots) = gen.rref();
    let k = pivots.len();
    if k == 0 {
        return None;
    }
    let n = gen.ncols();
    let base: Vec<Vec<El>> = (0..k).map(|i| r.row(i).to_vec()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<El>)> = None;
    for _ in 0..max_sets {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        let mut rows = base.clone();
        eliminate_ordered(&field, &mut rows, &order);
        let supports = supports_of(&rows);
        let mut hit = false;
        for w in 1..=2usize {
            enumerate_weight(&field, &supports, n, w, &mut |cw, weight| {
                if weight > 0 && best.as_ref().map_or(true, |(bw, _)| weight < *bw) {
                    best = Some((weight, cw.to_vec()));
                }
                if weight <= target {
                    hit = true;
                    return false;
                }
                true
            });
            if hit {
                return best;
            }
        }
    }
    best
}
