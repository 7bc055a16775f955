//! Max Weighted Partition with one shared cost function: split a ground set
//! `N = {0, .., size-1}` into at most `parts` blocks maximizing the total
//! block cost. Subsets are bitmasks; `cost(∅) = 0`, so unused blocks are free.
//!
//! Two solvers are provided. [`max_weighted_partition`] is an exact DP over
//! submasks in `O(3^n)` that also returns the blocks.
//! [`max_weighted_partition_value_fast`] evaluates a ranked zeta transform
//! with inclusion–exclusion over a polynomial in the total weight, which takes
//! `O~(2^n k^2 M)` time for costs in `[-M, M]` and returns the value only.

use crate::error::{Error, Result};

pub const DEFAULT_SIZE_LIMIT: usize = 20;
/// Largest ground set whose cost table can be stored at all.
pub const MAX_SIZE: usize = 30;

const NEG_INF: i64 = i64::MIN / 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPartitionProblem {
    size: usize,
    parts: usize,
    cost: Vec<i64>,
}

impl WeightedPartitionProblem {
    /// `cost[mask]` is the cost of the subset `mask`; `cost[0]` is ignored and
    /// treated as 0.
    pub fn new(size: usize, parts: usize, mut cost: Vec<i64>) -> Result<Self> {
        if size > MAX_SIZE {
            return Err(Error::Capacity {
                what: "partition ground set",
                size,
                limit: MAX_SIZE,
            });
        }
        if parts == 0 {
            return Err(Error::arg("at least one part is required"));
        }
        if cost.len() != 1 << size {
            return Err(Error::arg(format!(
                "cost table has {} entries, expected 2^{size}",
                cost.len()
            )));
        }
        if cost.iter().any(|c| c.unsigned_abs() > (1u64 << 40)) {
            return Err(Error::arg("costs must lie within ±2^40"));
        }
        cost[0] = 0;
        Ok(WeightedPartitionProblem { size, parts, cost })
    }

    pub fn from_fn(size: usize, parts: usize, f: impl FnMut(u32) -> i64) -> Result<Self> {
        if size > MAX_SIZE {
            return Err(Error::Capacity {
                what: "partition ground set",
                size,
                limit: MAX_SIZE,
            });
        }
        Self::new(size, parts, (0..1u32 << size).map(f).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn cost(&self, mask: u32) -> i64 {
        self.cost[mask as usize]
    }

    fn check_limit(&self, limit: usize) -> Result<()> {
        if self.size > limit {
            return Err(Error::Capacity {
                what: "partition ground set",
                size: self.size,
                limit,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSolution {
    pub value: i64,
    /// Nonempty blocks as bitmasks, in the order the DP peeled them off
    /// (increasing smallest element).
    pub blocks: Vec<u32>,
}

pub fn max_weighted_partition(p: &WeightedPartitionProblem) -> Result<PartitionSolution> {
    max_weighted_partition_with_limit(p, DEFAULT_SIZE_LIMIT)
}

/// Exact submask DP. Every block is chosen to contain the smallest element
/// not yet covered; candidate blocks are scanned in decreasing numeric order
/// and ties go to the numerically smallest block.
pub fn max_weighted_partition_with_limit(
    p: &WeightedPartitionProblem,
    limit: usize,
) -> Result<PartitionSolution> {
    p.check_limit(limit)?;
    let n = p.size;
    let full = (1u32 << n) - 1;
    // More parts than elements never binds.
    let layers = p.parts.min(n.max(1));
    let unbounded = p.parts >= n;

    // best[j][S]: optimum over S with at most j nonempty blocks (only the last
    // layer when unbounded). pick[j][S]: block containing min(S), 0 = none.
    let rows = if unbounded { 1 } else { layers + 1 };
    let mut best = vec![vec![NEG_INF; 1 << n]; rows];
    let mut pick = vec![vec![0u32; 1 << n]; rows];
    for row in &mut best {
        row[0] = 0;
    }
    for j in if unbounded { 0..1 } else { 1..rows } {
        let (prev, cur) = if unbounded {
            (None, j)
        } else {
            (Some(j - 1), j)
        };
        for s in 1..=full {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut best_val = prev.map_or(NEG_INF, |pj| best[pj][s as usize]);
            let mut best_t = 0;
            let mut sub = rest;
            loop {
                let t = sub | low;
                let remain = (s ^ t) as usize;
                let before = match prev {
                    Some(pj) => best[pj][remain],
                    None => best[cur][remain],
                };
                if before > NEG_INF {
                    let val = p.cost[t as usize] + before;
                    if val >= best_val {
                        best_val = val;
                        best_t = t;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            best[cur][s as usize] = best_val;
            pick[cur][s as usize] = best_t;
        }
    }

    let last = rows - 1;
    let value = best[last][full as usize];
    let mut blocks = Vec::new();
    let (mut s, mut j) = (full, last);
    while s != 0 {
        let t = pick[j][s as usize];
        if t != 0 {
            blocks.push(t);
            s ^= t;
        }
        if !unbounded {
            j -= 1;
        }
    }
    Ok(PartitionSolution { value, blocks })
}

const PRIMES: [u64; 2] = [(1 << 61) - 1, (1 << 62) - 57];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    let x = a as u128 * b as u128;
    if p == PRIMES[0] {
        // 2^61 ≡ 1: fold the high bits onto the low ones.
        let r = (x as u64 & p) + (x >> 61) as u64;
        let r = (r & p) + (r >> 61);
        if r >= p {
            r - p
        } else {
            r
        }
    } else {
        (x % p as u128) as u64
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Optimum value via the transform-based algorithm.
///
/// With weights `w(S) = cost(S) + M >= 0` (so `w(∅) = M`), let
/// `F(z) = Σ_X (-1)^{n-|X|} [y^n] (Σ_{S ⊆ X} z^{w(S)} y^{|S|})^k`. The
/// coefficient of `z^t` counts ordered `k`-tuples of disjoint blocks covering
/// `N` with total weight `t`, so the optimum is the largest `t` with a
/// nonzero coefficient, minus `kM`. `F` is evaluated at `2kM + 1` points
/// modulo a prime and interpolated. Counts are below `k^n`; a second prime
/// is used when that could reach the first.
pub fn max_weighted_partition_value_fast(p: &WeightedPartitionProblem) -> Result<i64> {
    max_weighted_partition_value_fast_with_limit(p, DEFAULT_SIZE_LIMIT)
}

pub fn max_weighted_partition_value_fast_with_limit(
    p: &WeightedPartitionProblem,
    limit: usize,
) -> Result<i64> {
    p.check_limit(limit)?;
    let n = p.size;
    if n == 0 {
        return Ok(0);
    }
    // Empty blocks cost nothing, so more than n parts never helps.
    let k = p.parts.min(n) as u64;
    let m = p
        .cost
        .iter()
        .map(|c| c.unsigned_abs())
        .max()
        .unwrap()
        .max(1);
    let degree = 2 * m * k;
    if degree > 1 << 22 {
        return Err(Error::Capacity {
            what: "weight polynomial degree",
            size: degree as usize,
            limit: 1 << 22,
        });
    }
    let weights: Vec<u64> = p.cost.iter().map(|&c| (c + m as i64) as u64).collect();
    let needs_two = (k as f64).powi(n as i32) >= PRIMES[0] as f64 / 2.0;
    let primes = if needs_two { &PRIMES[..] } else { &PRIMES[..1] };
    let coeffs: Vec<Vec<u64>> = primes
        .iter()
        .map(|&q| weight_polynomial(n, k, &weights, m, degree, q))
        .collect();
    let top = (0..=degree as usize)
        .rev()
        .find(|&t| coeffs.iter().any(|c| c[t] != 0))
        .ok_or_else(|| Error::internal("no partition found by the transform"))?;
    Ok(top as i64 - (k * m) as i64)
}

/// Coefficients of `F(z)` modulo `q`.
fn weight_polynomial(n: usize, k: u64, weights: &[u64], m: u64, degree: u64, q: u64) -> Vec<u64> {
    let size = 1usize << n;
    let points = degree as usize + 1;
    let inv: Vec<u64> = (0..=n as u64)
        .map(|i| if i == 0 { 0 } else { inv_mod(i, q) })
        .collect();
    let mut ranked = vec![0u64; (n + 1) * size];
    let mut values = Vec::with_capacity(points);
    for z in 1..=points as u64 {
        // powers z^0 .. z^{2M}
        let mut pw = Vec::with_capacity(2 * m as usize + 1);
        let mut acc = 1;
        for _ in 0..=2 * m {
            pw.push(acc);
            acc = mul_mod(acc, z, q);
        }
        ranked.iter_mut().for_each(|x| *x = 0);
        for s in 0..size {
            ranked[(s.count_ones() as usize) * size + s] = pw[weights[s] as usize];
        }
        for r in 0..=n {
            let row = &mut ranked[r * size..(r + 1) * size];
            for bit in 0..n {
                for s in 0..size {
                    if s >> bit & 1 == 1 {
                        let v = row[s] + row[s ^ 1 << bit];
                        row[s] = if v >= q { v - q } else { v };
                    }
                }
            }
        }
        // P(y) = Σ_r ranked[r][X] y^r has P_0 = z^M != 0; Q = P^k via
        // Q_j = (1 / (j P_0)) Σ_{i=1}^{j} ((k+1) i - j) P_i Q_{j-i}.
        let p0 = pw[m as usize];
        let p0_inv = inv_mod(p0, q);
        let q0 = pow_mod(p0, k, q);
        let mut total = 0u64;
        let mut poly = vec![0u64; n + 1];
        let mut power = vec![0u64; n + 1];
        for x in 0..size {
            for (r, c) in poly.iter_mut().enumerate() {
                *c = ranked[r * size + x];
            }
            power[0] = q0;
            for j in 1..=n {
                let mut sum = 0u64;
                for i in 1..=j {
                    if poly[i] == 0 {
                        continue;
                    }
                    let factor = ((k + 1) * i as u64 + q - j as u64) % q;
                    sum = add_mod(
                        sum,
                        mul_mod(mul_mod(factor, poly[i], q), power[j - i], q),
                        q,
                    );
                }
                power[j] = mul_mod(mul_mod(sum, inv[j], q), p0_inv, q);
            }
            let term = power[n];
            let negative = (n - x.count_ones() as usize) % 2 == 1;
            total = if negative {
                add_mod(total, q - term, q)
            } else {
                add_mod(total, term, q)
            };
        }
        values.push(total);
    }
    interpolate(&values, q)
}

/// Monomial coefficients of the polynomial through `(i + 1, values[i])`.
fn interpolate(values: &[u64], q: u64) -> Vec<u64> {
    let d = values.len();
    let mut c = values.to_vec();
    for j in 1..d {
        let inv_j = inv_mod(j as u64, q);
        for i in (j..d).rev() {
            c[i] = mul_mod((c[i] + q - c[i - 1]) % q, inv_j, q);
        }
    }
    // Newton form with nodes x_i = i + 1 to monomial form (Horner).
    let mut poly = vec![0u64; d];
    for i in (0..d).rev() {
        let node = (i as u64 + 1) % q;
        // poly = poly * (z - node) + c[i]
        let mut next = vec![0u64; d];
        for (deg, &coef) in poly.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            if deg + 1 < d {
                next[deg + 1] = (next[deg + 1] + coef) % q;
            }
            next[deg] = (next[deg] + q - mul_mod(coef, node, q)) % q;
        }
        next[0] = (next[0] + c[i]) % q;
        poly = next;
    }
    poly
}
