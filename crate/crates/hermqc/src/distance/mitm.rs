//! Meet-in-the-middle search for low-weight codewords of a cyclic code given
//! by its defining set. A weight-w codeword can be shifted so position 0 is
//! in its support; the root conditions at one representative per cyclotomic
//! coset split into two halves over the remaining w-1 positions, matched
//! through a sorted table of packed partial sums. Exhausting levels 1..w
//! proves no codeword of weight at or below w exists; the first hit is the
//! exact minimum weight.

use crate::field::{ExtEl, SplittingField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MitmOutcome {
    /// Exact minimum weight when a level produced a verified codeword.
    pub exact: Option<usize>,
    /// All weights strictly below this are ruled out.
    pub floor: usize,
    pub work: u64,
}

const MAX_HALF: usize = 3;

struct LeftEntry {
    key: u64,
    pos: [u16; MAX_HALF],
    val: [u8; MAX_HALF],
    len: u8,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

fn fold_key(packed: &[u64]) -> u64 {
    let mut h = 0x243F6A8885A308D3u64;
    for &s in packed {
        h = splitmix64(h ^ splitmix64(s)).rotate_left(17);
    }
    h
}

fn binom(n: u64, k: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

struct LevelCtx<'a> {
    sf: &'a SplittingField,
    /// avtab[r][p][a-1] = a * zeta^(reps[r] * p), packed per extension element.
    avtab: Vec<Vec<Vec<ExtEl>>>,
    nreps: usize,
    n: usize,
    q: usize,
}

impl<'a> LevelCtx<'a> {
    fn new(sf: &'a SplittingField, reps: &[u64]) -> LevelCtx<'a> {
        let n = sf.n() as usize;
        let q = sf.base().order();
        let ext = sf.ext();
        let avtab = reps
            .iter()
            .map(|&r| {
                (0..n as u64)
                    .map(|p| {
                        let z = sf.zeta_pow((r * p) % n as u64);
                        (1..q).map(|a| ext.mul(sf.embed(a as u8), z)).collect()
                    })
                    .collect()
            })
            .collect();
        LevelCtx { sf, avtab, nreps: reps.len(), n, q }
    }

    fn zero_sum(&self) -> Vec<ExtEl> {
        (0..self.nreps).map(|_| self.sf.ext().zero()).collect()
    }

    fn add_term(&self, sum: &mut [ExtEl], p: usize, a: u8) {
        let ext = self.sf.ext();
        for r in 0..self.nreps {
            sum[r] = ext.add(&sum[r], &self.avtab[r][p][(a - 1) as usize]);
        }
    }

    fn packed(&self, sum: &[ExtEl]) -> Vec<u64> {
        sum.iter().map(|e| self.sf.ext().pack(e)).collect()
    }
}

/// Recursively enumerate `depth` positions from `start..n` with all nonzero
/// values, calling `leaf` with the running (positions, values, sum).
fn enumerate_half(
    ctx: &LevelCtx,
    start: usize,
    depth: usize,
    pos: &mut Vec<usize>,
    val: &mut Vec<u8>,
    sum: &mut Vec<ExtEl>,
    leaf: &mut impl FnMut(&[usize], &[u8], &[ExtEl]) -> bool,
) -> bool {
    if depth == 0 {
        return leaf(pos, val, sum);
    }
    for p in start..=(ctx.n - depth) {
        for a in 1..ctx.q as u8 {
            let saved = sum.to_vec();
            ctx.add_term(sum, p, a);
            pos.push(p);
            val.push(a);
            let go_on = enumerate_half(ctx, p + 1, depth - 1, pos, val, sum, leaf);
            pos.pop();
            val.pop();
            *sum = saved;
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// Exact-or-floor minimum weight of the cyclic code whose defining set has
/// the given coset representatives. Levels whose half-enumerations exceed
/// the budget are not attempted; `floor` reports how far exhaustion went.
pub fn mitm_min_weight(
    sf: &SplittingField,
    reps: &[u64],
    w_max: usize,
    half_budget: u64,
) -> MitmOutcome {
    if reps.is_empty() {
        return MitmOutcome { exact: Some(1), floor: 1, work: 0 };
    }
    let ctx = LevelCtx::new(sf, reps);
    let n = ctx.n;
    let qm1 = (ctx.q - 1) as u64;
    let mut work = 0u64;
    for w in 1..=w_max {
        let h = w - 1;
        let h1 = h / 2;
        let h2 = h - h1;
        if h1 > MAX_HALF || h2 > MAX_HALF {
            return MitmOutcome { exact: None, floor: w, work };
        }
        let entries = binom((n - 1) as u64, h1 as u64).saturating_mul(qm1.saturating_pow(h1 as u32));
        let lookups = binom((n - 1) as u64, h2 as u64).saturating_mul(qm1.saturating_pow(h2 as u32));
        if entries > half_budget || lookups > half_budget.saturating_mul(16) {
            return MitmOutcome { exact: None, floor: w, work };
        }
        if let Some(found) = run_level(&ctx, w, h1, h2, &mut work) {
            debug_assert!(found == w, "hit below an exhausted level");
            return MitmOutcome { exact: Some(found), floor: found, work };
        }
    }
    MitmOutcome { exact: None, floor: w_max + 1, work }
}

fn run_level(ctx: &LevelCtx, w: usize, h1: usize, h2: usize, work: &mut u64) -> Option<usize> {
    let ext = ctx.sf.ext();
    // Left table: all h1-subsets of positions 1..n with nonzero values.
    let mut table: Vec<LeftEntry> = Vec::new();
    {
        let mut pos = Vec::new();
        let mut val = Vec::new();
        let mut sum = ctx.zero_sum();
        enumerate_half(ctx, 1, h1, &mut pos, &mut val, &mut sum, &mut |pos, val, sum| {
            let mut e = LeftEntry {
                key: fold_key(&ctx.packed(sum)),
                pos: [0; MAX_HALF],
                val: [0; MAX_HALF],
                len: pos.len() as u8,
            };
            for (i, &p) in pos.iter().enumerate() {
                e.pos[i] = p as u16;
            }
            for (i, &a) in val.iter().enumerate() {
                e.val[i] = a;
            }
            table.push(e);
            true
        });
    }
    *work += table.len() as u64;
    table.sort_unstable_by_key(|e| e.key);

    // Base contribution from position 0 with coefficient 1.
    let base: Vec<ExtEl> = (0..ctx.nreps).map(|_| ext.one()).collect();
    let mut hit: Option<usize> = None;
    let mut pos = Vec::new();
    let mut val = Vec::new();
    let mut sum = ctx.zero_sum();
    let mut lookups = 0u64;
    enumerate_half(ctx, 1, h2, &mut pos, &mut val, &mut sum, &mut |pos2, val2, sum2| {
        lookups += 1;
        // Want sum_left = -(base + sum_right).
        let target: Vec<ExtEl> =
            (0..ctx.nreps).map(|r| ext.neg(&ext.add(&base[r], &sum2[r]))).collect();
        let tpacked = ctx.packed(&target);
        let key = fold_key(&tpacked);
        let lo = table.partition_point(|e| e.key < key);
        for e in table[lo..].iter().take_while(|e| e.key == key) {
            // Reconstruct the left sum and confirm the exact match.
            let mut lsum = ctx.zero_sum();
            for i in 0..e.len as usize {
                ctx.add_term(&mut lsum, e.pos[i] as usize, e.val[i]);
            }
            if ctx.packed(&lsum) != tpacked {
                continue;
            }
            // Build the candidate codeword and verify it end to end.
            let f = ctx.sf.base();
            let mut coeffs = vec![0u8; ctx.n];
            coeffs[0] = 1;
            for i in 0..e.len as usize {
                let p = e.pos[i] as usize;
                coeffs[p] = f.add(coeffs[p], e.val[i]);
            }
            for (i, &p) in pos2.iter().enumerate() {
                coeffs[p] = f.add(coeffs[p], val2[i]);
            }
            let weight = coeffs.iter().filter(|&&v| v != 0).count();
            if weight == 0 || weight > w {
                continue;
            }
            let all_roots = (0..ctx.nreps).all(|r| {
                let mut acc = ext.zero();
                for (p, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        acc = ext.add(&acc, &ctx.avtab[r][p][(c - 1) as usize]);
                    }
                }
                ext.is_zero(&acc)
            });
            if all_roots {
                hit = Some(weight);
                return false;
            }
        }
        true
    });
    *work += lookups;
    hit
}
