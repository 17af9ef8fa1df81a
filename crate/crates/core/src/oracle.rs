//! Independent check of the generic calculus: hom dimensions of random representations
//! over the prime field of order 2³¹ − 1.

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIME: u64 = 2_147_483_647;

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % PRIME, PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let iv = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * iv % PRIME;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = (*x + PRIME - f * y % PRIME) % PRIME;
            }
        }
        rank += 1;
    }
    rank
}

/// One matrix `d_head × d_tail` per arrow.
type Rep = Vec<Vec<Vec<u64>>>;

fn random_rep(q: &Quiver, d: &[usize], rng: &mut ChaCha8Rng) -> Rep {
    q.arrows()
        .iter()
        .map(|&(t, h)| (0..d[h]).map(|_| (0..d[t]).map(|_| rng.gen_range(0..PRIME)).collect()).collect())
        .collect()
}

/// Nullity of `f ↦ (f_h M_α − N_α f_t)_α`.
fn hom_dim(q: &Quiver, a: &[usize], b: &[usize], m: &Rep, nn: &Rep) -> usize {
    let mut offset = vec![0usize; a.len()];
    let mut vars = 0;
    for x in 0..a.len() {
        offset[x] = vars;
        vars += a[x] * b[x];
    }
    if vars == 0 {
        return 0;
    }
    let var = |x: usize, i: usize, k: usize| offset[x] + i * a[x] + k;
    let mut rows = Vec::new();
    for (al, &(t, h)) in q.arrows().iter().enumerate() {
        for i in 0..b[h] {
            for j in 0..a[t] {
                let mut row = vec![0u64; vars];
                for k in 0..a[h] {
                    let c = m[al][k][j];
                    let e = &mut row[var(h, i, k)];
                    *e = (*e + c) % PRIME;
                }
                for l in 0..b[t] {
                    let c = nn[al][i][l];
                    let e = &mut row[var(t, l, j)];
                    *e = (*e + PRIME - c) % PRIME;
                }
                rows.push(row);
            }
        }
    }
    vars - rank_mod_p(rows, vars)
}

fn sizes(q: &Quiver, d: &DimVector) -> Result<Vec<usize>> {
    if d.len() != q.n() {
        return Err(Error::DimensionMismatch { expected: q.n(), got: d.len() });
    }
    Ok(d.small()?.into_iter().map(|x| x as usize).collect())
}

/// Minimum over `trials` random pairs of `dim Hom(M,N)`; deterministic in `seed`.
pub fn sample_hom_dim(q: &Quiver, a: &DimVector, b: &DimVector, seed: u64, trials: u32) -> Result<u64> {
    if trials == 0 {
        return Err(Error::invalid("at least one trial is needed"));
    }
    let (sa, sb) = (sizes(q, a)?, sizes(q, b)?);
    let floor = q.pair(a, b).max(0.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = u64::MAX;
    for _ in 0..trials {
        let m = random_rep(q, &sa, &mut rng);
        let n = random_rep(q, &sb, &mut rng);
        best = best.min(hom_dim(q, &sa, &sb, &m, &n) as u64);
        if num_bigint::BigInt::from(best) == floor {
            break;
        }
    }
    Ok(best)
}

/// Sampled `(hom, ext)` with `ext = hom − ⟨a,b⟩`.
pub fn sample_hom_ext(q: &Quiver, a: &DimVector, b: &DimVector, seed: u64, trials: u32) -> Result<(u64, u64)> {
    let h = sample_hom_dim(q, a, b, seed, trials)?;
    let e = num_bigint::BigInt::from(h) - q.pair(a, b);
    let e = u64::try_from(e).map_err(|_| Error::inconsistent("sampled hom below the Euler form"))?;
    Ok((h, e))
}
