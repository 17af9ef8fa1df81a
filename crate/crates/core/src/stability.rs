//! Stability of dimension vectors for the weight `σ_d = −⟨−, d⟩`.

use crate::error::{Error, Result};
use crate::generic::{boxed, GenericCalculus};
use crate::quiver::DimVector;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The linear form `x ↦ −⟨x, d⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight {
    d: DimVector,
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn of(calc: &GenericCalculus, d: &DimVector) -> Result<Self> {
        let small = d.small()?;
        if small.len() != calc.quiver().n() {
            return Err(Error::DimensionMismatch { expected: calc.quiver().n(), got: small.len() });
        }
        let n = small.len();
        let coeffs = (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = 1;
                -calc.pair_small(&e, &small)
            })
            .collect();
        Ok(Weight { d: d.clone(), coeffs })
    }

    pub fn base(&self) -> &DimVector {
        &self.d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn eval_small(&self, x: &[u32]) -> i64 {
        x.iter().zip(&self.coeffs).map(|(&a, &c)| a as i64 * c).sum()
    }

    pub fn eval(&self, x: &DimVector) -> BigInt {
        x.coords().iter().zip(&self.coeffs).map(|(a, &c)| a * c).sum()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Unstable,
    Semistable,
    Stable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Unstable => "unstable",
            Stability::Semistable => "semistable",
            Stability::Stable => "stable",
        })
    }
}

/// Stability tests against one weight, with the small-vector fast paths.
pub struct StabilityChecker<'a> {
    calc: &'a GenericCalculus,
    weight: Weight,
    delta: Vec<u32>,
}

impl<'a> StabilityChecker<'a> {
    pub fn new(calc: &'a GenericCalculus, delta: &DimVector) -> Result<Self> {
        let weight = Weight::of(calc, delta)?;
        Ok(StabilityChecker { calc, weight, delta: delta.small()? })
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn calculus(&self) -> &GenericCalculus {
        self.calc
    }

    /// `σ(x) = 0` and the general representation of `x` has no homomorphism to that of `d`.
    pub fn is_semistable_small(&self, x: &[u32]) -> bool {
        self.weight.eval_small(x) == 0 && self.calc.ext_small(x, &self.delta) == 0
    }

    /// Some proper nonzero `x′ ↪ x` with `σ(x′) = 0`, least total first; `x` assumed semistable.
    fn weight_zero_sub(&self, x: &[u32]) -> Option<Vec<u32>> {
        let mut cands: Vec<Vec<u32>> = boxed(x)
            .filter(|s| s.iter().any(|&c| c > 0) && s.as_slice() != x && self.weight.eval_small(s) == 0)
            .collect();
        cands.sort_by_key(|s| (s.iter().map(|&c| c as u64).sum::<u64>(), s.clone()));
        cands.into_iter().find(|s| self.calc.ext_small(s, &self.delta) == 0 && self.calc.embeds_small(s, x))
    }

    pub fn status_small(&self, x: &[u32]) -> Stability {
        if !self.is_semistable_small(x) {
            Stability::Unstable
        } else if self.weight_zero_sub(x).is_some() {
            Stability::Semistable
        } else {
            Stability::Stable
        }
    }

    /// Direct King test: every subvector that embeds is checked.
    pub fn status_king_small(&self, x: &[u32]) -> Stability {
        if self.weight.eval_small(x) != 0 {
            return Stability::Unstable;
        }
        let mut stable = true;
        for s in boxed(x) {
            if s.iter().all(|&c| c == 0) || s.as_slice() == x || !self.calc.embeds_small(&s, x) {
                continue;
            }
            match self.weight.eval_small(&s) {
                v if v > 0 => return Stability::Unstable,
                0 => stable = false,
                _ => {}
            }
        }
        if stable {
            Stability::Stable
        } else {
            Stability::Semistable
        }
    }

    pub fn status(&self, x: &DimVector) -> Result<Stability> {
        let s = self.check(x)?;
        Ok(self.status_small(&s))
    }

    fn check(&self, x: &DimVector) -> Result<Vec<u32>> {
        if x.len() != self.delta.len() {
            return Err(Error::DimensionMismatch { expected: self.delta.len(), got: x.len() });
        }
        if x.is_zero() {
            return Err(Error::invalid("stability of the zero vector"));
        }
        x.small()
    }

    /// Stable factors of a semistable `x` with multiplicities, in an order where distinct
    /// factors are orthogonal left to right.
    pub fn stable_decomposition(&self, x: &DimVector) -> Result<Vec<(DimVector, u32)>> {
        let s = self.check(x)?;
        if !self.is_semistable_small(&s) {
            return Err(Error::invalid(format!("({x}) is not semistable")));
        }
        let mut parts: Vec<(Vec<u32>, u32)> = Vec::new();
        let mut rest = s;
        while rest.iter().any(|&c| c > 0) {
            let piece = self.weight_zero_sub(&rest).unwrap_or_else(|| rest.clone());
            rest = rest.iter().zip(&piece).map(|(a, b)| a - b).collect();
            match parts.iter_mut().find(|(p, _)| *p == piece) {
                Some(entry) => entry.1 += 1,
                None => parts.push((piece, 1)),
            }
        }
        let order = self.orthogonal_order(parts.iter().map(|p| p.0.clone()).collect())?;
        Ok(order
            .into_iter()
            .map(|i| (DimVector::from_small(&parts[i].0), parts[i].1))
            .collect())
    }

    fn orthogonal_order(&self, parts: Vec<Vec<u32>>) -> Result<Vec<usize>> {
        let orth = |a: &[u32], b: &[u32]| self.calc.pair_small(a, b) == 0 && self.calc.ext_small(a, b) == 0;
        let k = parts.len();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        while order.len() < k {
            let next = (0..k).find(|&i| {
                !placed[i] && (0..k).all(|j| j == i || placed[j] || orth(&parts[i], &parts[j]))
            });
            let i = next.ok_or_else(|| Error::inconsistent("stable factors admit no orthogonal order"))?;
            placed[i] = true;
            order.push(i);
        }
        Ok(order)
    }

    /// All stable vectors with coordinates at most `bound`, lexicographic. Stable vectors are Schur,
    /// so `⟨x, x⟩ ≤ 1` prunes first.
    pub fn enumerate_stable(&self, bound: u32) -> Vec<DimVector> {
        kernel_box(self.weight.coeffs(), bound)
            .into_iter()
            .filter(|x| self.calc.pair_small(x, x) <= 1 && self.status_small(x) == Stability::Stable)
            .map(|x| DimVector::from_small(&x))
            .collect()
    }
}

/// Nonzero `x` with `0 ≤ x_i ≤ bound` and `Σ w_i x_i = 0`, lexicographic.
pub(crate) fn kernel_box(w: &[i64], bound: u32) -> Vec<Vec<u32>> {
    let n = w.len();
    let Some(k) = (0..n).rev().find(|&i| w[i] != 0) else {
        let mut all: Vec<Vec<u32>> = boxed(&vec![bound; n]).collect();
        all.remove(0);
        return all;
    };
    let mut free = vec![bound; n];
    free[k] = 0;
    let mut out = Vec::new();
    for mut x in boxed(&free) {
        let s: i64 = x.iter().zip(w).map(|(&a, &c)| a as i64 * c).sum();
        if s % w[k] != 0 {
            continue;
        }
        let v = -s / w[k];
        if v < 0 || v > bound as i64 {
            continue;
        }
        x[k] = v as u32;
        if x.iter().any(|&c| c > 0) {
            out.push(x);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(x: &[i64]) -> DimVector {
        DimVector::of(x)
    }

    #[test]
    fn weight_is_negated_pairing() {
        let q = corpus::q4();
        let calc = GenericCalculus::new(&q);
        let d = v(&[3, 2, 3, 1]);
        let w = Weight::of(&calc, &d).unwrap();
        for x in [v(&[1, 0, 0, 0]), v(&[8, 3, 3, 3]), v(&[0, 2, 1, 5])] {
            assert_eq!(w.eval(&x), -q.pair(&x, &d));
        }
    }

    #[test]
    fn kronecker_status() {
        let k = corpus::kronecker();
        let calc = GenericCalculus::new(&k);
        let st = StabilityChecker::new(&calc, &v(&[1, 1])).unwrap();
        assert_eq!(st.status(&v(&[1, 1])).unwrap(), Stability::Stable);
        assert_eq!(st.status(&v(&[1, 0])).unwrap(), Stability::Unstable);
        assert_eq!(st.status(&v(&[2, 2])).unwrap(), Stability::Semistable);
        assert!(st.status(&v(&[0, 0])).is_err());
        let dec = st.stable_decomposition(&v(&[2, 2])).unwrap();
        assert_eq!(dec, vec![(v(&[1, 1]), 2)]);
    }

    #[test]
    fn q4_status() {
        let q = corpus::q4();
        let calc = GenericCalculus::new(&q);
        let delta = v(&[3, 2, 3, 1]);
        let st = StabilityChecker::new(&calc, &delta).unwrap();
        for x in [v(&[0, 0, 1, 0]), v(&[8, 3, 3, 3]), v(&[3, 2, 1, 1])] {
            assert_eq!(st.status(&x).unwrap(), Stability::Stable, "{x}");
        }
        assert_eq!(st.status(&delta).unwrap(), Stability::Semistable);
        let dec = st.stable_decomposition(&delta).unwrap();
        assert_eq!(dec, vec![(v(&[3, 2, 1, 1]), 1), (v(&[0, 0, 1, 0]), 2)]);
    }

    #[test]
    fn fast_route_matches_king() {
        let q = corpus::q4();
        let calc = GenericCalculus::new(&q);
        let st = StabilityChecker::new(&calc, &v(&[3, 2, 3, 1])).unwrap();
        for x in boxed(&[4, 3, 4, 3]).skip(1) {
            assert_eq!(st.status_small(&x), st.status_king_small(&x), "{x:?}");
        }
    }

    #[test]
    fn kernel_box_solves_last_free_coordinate() {
        let xs = kernel_box(&[1, -2], 4);
        assert_eq!(xs, vec![vec![2, 1], vec![4, 2]]);
        assert_eq!(kernel_box(&[0, 0], 1).len(), 3);
    }
}
