//! Generic hom and ext between dimension vectors, the generic subrepresentation relation,
//! Schur tests and the canonical decomposition.

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

/// Which side of the Schofield recursion to expand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    Subvectors,
    Quotients,
    /// Whichever side has fewer candidates.
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Isotropic,
    Imaginary,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::Real => "real",
            RootKind::Isotropic => "isotropic",
            RootKind::Imaginary => "imaginary",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CanPart {
    pub root: DimVector,
    pub multiplicity: u64,
    pub kind: RootKind,
}

/// Canonical decomposition, parts sorted by root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CanDecomp {
    pub parts: Vec<CanPart>,
}

impl CanDecomp {
    pub fn is_schur(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].multiplicity == 1
    }

    /// Expected decomposition of `p·d` given that of `d`.
    pub fn scaled(&self, p: u64) -> CanDecomp {
        let mut parts: Vec<CanPart> = self
            .parts
            .iter()
            .map(|c| match c.kind {
                RootKind::Imaginary => CanPart { root: c.root.scale(p), multiplicity: 1, kind: c.kind },
                _ => CanPart { root: c.root.clone(), multiplicity: c.multiplicity * p, kind: c.kind },
            })
            .collect();
        parts.sort_by(|a, b| a.root.cmp(&b.root));
        CanDecomp { parts }
    }
}

impl fmt::Display for CanDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> =
            self.parts.iter().map(|p| format!("({})x{} {}", p.root, p.multiplicity, p.kind)).collect();
        f.write_str(&items.join(" + "))
    }
}

/// Memoized generic calculus for one quiver. Safe to share between threads.
pub struct GenericCalculus {
    quiver: Quiver,
    n: usize,
    euler: Vec<i64>,
    memo: RwLock<HashMap<Box<[u32]>, u32>>,
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// All vectors `0 ≤ x ≤ bound`, lexicographic.
pub(crate) fn boxed(bound: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total: u64 = bound.iter().map(|&b| b as u64 + 1).product();
    let mut cur = vec![0u32; bound.len()];
    let mut first = true;
    (0..total).map(move |_| {
        if !first {
            for i in (0..cur.len()).rev() {
                if cur[i] < bound[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
        first = false;
        cur.clone()
    })
}

impl GenericCalculus {
    pub fn new(quiver: &Quiver) -> Self {
        GenericCalculus {
            quiver: quiver.clone(),
            n: quiver.n(),
            euler: quiver.euler_small().to_vec(),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    fn check(&self, d: &DimVector) -> Result<Vec<u32>> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: d.len() });
        }
        d.small()
    }

    /// `E·b` as a row of weights.
    fn weights_right(&self, b: &[u32]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.euler[i * self.n + j] * b[j] as i64).sum()).collect()
    }

    /// `aᵀ·E` as a row of weights.
    fn weights_left(&self, a: &[u32]) -> Vec<i64> {
        (0..self.n).map(|j| (0..self.n).map(|i| a[i] as i64 * self.euler[i * self.n + j]).sum()).collect()
    }

    pub fn pair_small(&self, a: &[u32], b: &[u32]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += a[i] as i64 * self.euler[i * self.n + j] * b[j] as i64;
            }
        }
        s
    }

    pub fn ext_small(&self, a: &[u32], b: &[u32]) -> u32 {
        if is_zero(a) || is_zero(b) {
            return 0;
        }
        let mut key = Vec::with_capacity(2 * self.n);
        key.extend_from_slice(a);
        key.extend_from_slice(b);
        if let Some(&v) = self.memo.read().unwrap().get(key.as_slice()) {
            return v;
        }
        let v = self.ext_route(a, b, Route::Auto);
        self.memo.write().unwrap().insert(key.into_boxed_slice(), v);
        v
    }

    /// `a ↪ b` for `a ≤ b`.
    pub fn embeds_small(&self, a: &[u32], b: &[u32]) -> bool {
        if a.iter().zip(b).any(|(x, y)| x > y) {
            return false;
        }
        if is_zero(a) || a == b {
            return true;
        }
        let rest: Vec<u32> = a.iter().zip(b).map(|(x, y)| y - x).collect();
        if self.pair_small(a, &rest) < 0 {
            return false;
        }
        self.ext_small(a, &rest) == 0
    }

    fn ext_route(&self, a: &[u32], b: &[u32], route: Route) -> u32 {
        if is_zero(a) || is_zero(b) {
            return 0;
        }
        let lower = (-self.pair_small(a, b)).max(0);
        let count = |v: &[u32]| v.iter().map(|&x| x as u64 + 1).product::<u64>();
        let subs = match route {
            Route::Subvectors => true,
            Route::Quotients => false,
            Route::Auto => count(a) <= count(b),
        };
        if subs {
            let w = self.weights_right(b);
            let mut cands: Vec<(i64, Vec<u32>)> = boxed(a)
                .filter_map(|x| {
                    let v = -x.iter().zip(&w).map(|(&xi, wi)| xi as i64 * wi).sum::<i64>();
                    (v > lower && !is_zero(&x) && x != a).then_some((v, x))
                })
                .collect();
            cands.sort_by(|p, q| q.0.cmp(&p.0).then_with(|| p.1.cmp(&q.1)));
            for (v, x) in cands {
                if self.embeds_small(&x, a) {
                    return v as u32;
                }
            }
        } else {
            let w = self.weights_left(a);
            let mut cands: Vec<(i64, Vec<u32>)> = boxed(b)
                .filter_map(|y| {
                    let v = -y.iter().zip(&w).map(|(&yi, wi)| yi as i64 * wi).sum::<i64>();
                    (v > lower && !is_zero(&y) && y != b).then_some((v, y))
                })
                .collect();
            cands.sort_by(|p, q| q.0.cmp(&p.0).then_with(|| p.1.cmp(&q.1)));
            for (v, y) in cands {
                let sub: Vec<u32> = b.iter().zip(&y).map(|(p, q)| p - q).collect();
                if self.embeds_small(&sub, b) {
                    return v as u32;
                }
            }
        }
        lower as u32
    }

    pub fn ext(&self, a: &DimVector, b: &DimVector) -> Result<u64> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.ext_small(&a, &b) as u64)
    }

    /// Ext through one side of the recursion at the top level.
    pub fn ext_via(&self, a: &DimVector, b: &DimVector, route: Route) -> Result<u64> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.ext_route(&a, &b, route) as u64)
    }

    /// Generic `(hom, ext)`; `hom − ext = ⟨a,b⟩` is checked on every call.
    pub fn hom_ext(&self, a: &DimVector, b: &DimVector) -> Result<(u64, u64)> {
        let (sa, sb) = (self.check(a)?, self.check(b)?);
        let e = self.ext_small(&sa, &sb) as i64;
        let h = e + self.pair_small(&sa, &sb);
        if h < 0 {
            return Err(Error::inconsistent(format!("negative generic hom for ({a}),({b})")));
        }
        Ok((h as u64, e as u64))
    }

    pub fn hom(&self, a: &DimVector, b: &DimVector) -> Result<u64> {
        Ok(self.hom_ext(a, b)?.0)
    }

    pub fn embeds(&self, a: &DimVector, b: &DimVector) -> Result<bool> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.embeds_small(&a, &b))
    }

    pub fn orthogonal(&self, a: &DimVector, b: &DimVector) -> Result<bool> {
        Ok(self.hom_ext(a, b)? == (0, 0))
    }

    /// Schofield's criterion: `⟨β,d⟩ − ⟨d,β⟩ > 0` for every proper nonzero `β ↪ d`.
    pub fn is_schur_root(&self, d: &DimVector) -> Result<bool> {
        if d.is_zero() {
            return Err(Error::invalid("zero vector"));
        }
        let sd = self.check(d)?;
        Ok(self.is_schur_small(&sd))
    }

    pub fn is_schur_small(&self, d: &[u32]) -> bool {
        let left = self.weights_left(d);
        let right = self.weights_right(d);
        boxed(d).all(|b| {
            if is_zero(&b) || b.as_slice() == d {
                return true;
            }
            let s: i64 = b.iter().zip(right.iter().zip(&left)).map(|(&x, (r, l))| x as i64 * (r - l)).sum();
            s > 0 || !self.embeds_small(&b, d)
        })
    }

    pub fn is_real_schur(&self, d: &DimVector) -> Result<bool> {
        if d.is_zero() {
            return Err(Error::invalid("zero vector"));
        }
        Ok(self.quiver.pair(d, d).is_one() && self.ext(d, d)? == 0)
    }

    pub fn is_prehomogeneous(&self, d: &DimVector) -> Result<bool> {
        Ok(self.canonical_decomposition(d)?.parts.iter().all(|p| p.kind == RootKind::Real))
    }

    fn kind(&self, d: &DimVector) -> RootKind {
        let q = self.quiver.pair(d, d);
        if q.is_one() {
            RootKind::Real
        } else if q.is_zero() {
            RootKind::Isotropic
        } else {
            RootKind::Imaginary
        }
    }

    fn split(&self, d: &[u32], out: &mut Vec<Vec<u32>>) -> Result<()> {
        if is_zero(d) {
            return Ok(());
        }
        if self.is_schur_small(d) {
            out.push(d.to_vec());
            return Ok(());
        }
        for x in boxed(d) {
            if is_zero(&x) || x.as_slice() == d {
                continue;
            }
            let y: Vec<u32> = d.iter().zip(&x).map(|(p, q)| p - q).collect();
            if x > y {
                continue;
            }
            if self.pair_small(&x, &y) < 0 || self.pair_small(&y, &x) < 0 {
                continue;
            }
            if self.ext_small(&x, &y) == 0 && self.ext_small(&y, &x) == 0 {
                self.split(&x, out)?;
                return self.split(&y, out);
            }
        }
        Err(Error::inconsistent(format!("no decomposition found for {}", DimVector::from_small(d))))
    }

    /// Kac canonical decomposition, certified against its defining properties.
    pub fn canonical_decomposition(&self, d: &DimVector) -> Result<CanDecomp> {
        let sd = self.check(d)?;
        let mut roots = Vec::new();
        self.split(&sd, &mut roots)?;
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for r in roots {
            *counts.entry(r).or_insert(0) += 1;
        }
        let parts: Vec<CanPart> = counts
            .into_iter()
            .map(|(r, m)| {
                let root = DimVector::from_small(&r);
                let kind = self.kind(&root);
                CanPart { root, multiplicity: m, kind }
            })
            .collect();
        let out = CanDecomp { parts };
        self.certify(d, &out)?;
        Ok(out)
    }

    fn certify(&self, d: &DimVector, c: &CanDecomp) -> Result<()> {
        let mut sum = DimVector::zero(self.n);
        for p in &c.parts {
            sum = sum.add(&p.root.scale(p.multiplicity));
            if p.kind == RootKind::Imaginary && p.multiplicity != 1 {
                return Err(Error::inconsistent("imaginary part with multiplicity above one"));
            }
            if p.multiplicity > 1 && self.ext(&p.root, &p.root)? != 0 {
                return Err(Error::inconsistent(format!("repeated part ({}) is not rigid enough", p.root)));
            }
        }
        if &sum != d {
            return Err(Error::inconsistent("decomposition does not sum to its input"));
        }
        for (i, p) in c.parts.iter().enumerate() {
            for (j, q) in c.parts.iter().enumerate() {
                if i != j && self.ext(&p.root, &q.root)? != 0 {
                    return Err(Error::inconsistent(format!("ext(({}),({})) ≠ 0", p.root, q.root)));
                }
            }
        }
        Ok(())
    }

    /// All isotropic Schur roots with entries at most `bound`, by exhaustive scan.
    pub fn brute_isotropic(&self, bound: u32) -> Vec<DimVector> {
        let top = vec![bound; self.n];
        boxed(&top)
            .filter(|x| !is_zero(x) && self.pair_small(x, x) == 0)
            .filter(|x| self.is_schur_small(x))
            .map(|x| DimVector::from_small(&x))
            .collect()
    }
}
