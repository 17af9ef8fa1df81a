//! The cone of `σ_δ`-semistable dimension vectors: extremal rays, Proper(C), the
//! decomposition into simplices through the special ray, and affine slices.

use crate::error::{Error, Result};
use crate::generic::GenericCalculus;
use crate::linalg::{dot, primitive, primitive_rat, rank_of, to_rat_vec, Rat, RatMatrix};
use crate::quiver::DimVector;
use crate::stability::StabilityChecker;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

type IVec = Vec<BigInt>;

fn int_kernel(rows: &[IVec], n: usize) -> Vec<IVec> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
    }
    let m = RatMatrix::from_rows(rows.iter().map(|r| to_rat_vec(r)).collect());
    m.kernel().iter().map(|k| primitive_rat(k)).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Inequalities `a·x ≥ 0` and equalities `e·x = 0` cutting out a finitely generated cone.
#[derive(Clone, Debug, Default)]
pub struct HRep {
    pub equalities: Vec<IVec>,
    pub facets: Vec<IVec>,
}

impl HRep {
    pub fn of(gens: &[IVec], n: usize) -> HRep {
        let gens: Vec<IVec> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        let equalities = int_kernel(&gens, n);
        let m = rank_of(&gens);
        let mut facets: BTreeSet<IVec> = BTreeSet::new();
        if m == 0 {
            return HRep { equalities, facets: Vec::new() };
        }
        for s in subsets(gens.len(), m - 1) {
            let mut rows: Vec<IVec> = s.iter().map(|&i| gens[i].clone()).collect();
            if rank_of(&rows) != m - 1 {
                continue;
            }
            rows.extend(equalities.iter().cloned());
            let k = int_kernel(&rows, n);
            if k.len() != 1 {
                continue;
            }
            let a = &k[0];
            let signs: Vec<i8> = gens.iter().map(|g| sign(&dot(a, g))).collect();
            if signs.iter().all(|&x| x >= 0) {
                facets.insert(a.clone());
            } else if signs.iter().all(|&x| x <= 0) {
                facets.insert(a.iter().map(|x| -x).collect());
            }
        }
        HRep { equalities, facets: facets.into_iter().collect() }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.equalities.iter().all(|e| dot(e, x).is_zero()) && self.facets.iter().all(|a| !dot(a, x).is_negative())
    }

    /// Facets through `x`.
    pub fn tight(&self, x: &[BigInt]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| dot(&self.facets[i], x).is_zero()).collect()
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Indices of generators spanning extremal rays, one per ray, first occurrence kept.
pub fn extreme_indices(gens: &[IVec], n: usize) -> Vec<usize> {
    let h = HRep::of(gens, n);
    let mut seen: BTreeSet<IVec> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.iter().all(Zero::is_zero) || !seen.insert(primitive(g)) {
            continue;
        }
        let mut rows: Vec<IVec> = h.tight(g).into_iter().map(|f| h.facets[f].clone()).collect();
        rows.extend(h.equalities.iter().cloned());
        if rank_of(&rows) + 1 == n {
            out.push(i);
        }
    }
    out
}

fn prune(gens: Vec<IVec>, n: usize) -> Vec<IVec> {
    let gens: Vec<IVec> = gens.into_iter().map(|g| primitive(&g)).collect();
    let mut out: Vec<IVec> = extreme_indices(&gens, n).into_iter().map(|i| gens[i].clone()).collect();
    out.sort();
    out
}

/// Extremal rays of `⋂ cones`, each cone given by generators; empty when the intersection is `{0}`.
pub fn intersect(cones: &[Vec<IVec>], n: usize) -> Vec<IVec> {
    let Some(first) = cones.first() else { return Vec::new() };
    let mut rays = prune(first.clone(), n);
    for c in &cones[1..] {
        let h = HRep::of(c, n);
        let mut cuts: Vec<IVec> = h.facets.clone();
        for e in &h.equalities {
            cuts.push(e.clone());
            cuts.push(e.iter().map(|x| -x).collect());
        }
        for a in cuts {
            if rays.is_empty() {
                return rays;
            }
            let vals: Vec<BigInt> = rays.iter().map(|r| dot(&a, r)).collect();
            let mut next: Vec<IVec> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in rays.iter().zip(&vals) {
                if !vp.is_positive() {
                    continue;
                }
                for (q, vq) in rays.iter().zip(&vals) {
                    if !vq.is_negative() {
                        continue;
                    }
                    let combo: IVec = p.iter().zip(q).map(|(x, y)| -vq * x + vp * y).collect();
                    next.push(combo);
                }
            }
            rays = prune(next, n);
        }
    }
    rays
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub rays: Vec<DimVector>,
    /// Coefficients expressing the point in `rays`; empty when they are not independent.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    /// Indices into the report's `rays`.
    pub rays: Vec<usize>,
    pub dimension: usize,
    /// The origin is used as an extra vertex of the simplex.
    pub uses_origin: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub delta: DimVector,
    pub bound: u32,
    /// Some stable vector reaches the bound, so larger ones may exist.
    pub bound_touched: bool,
    pub stable: Vec<DimVector>,
    pub rays: Vec<DimVector>,
    pub stable_non_extremal: Option<DimVector>,
    pub dimension: usize,
    pub facets: usize,
    pub delta_face: Face,
    pub delta_on_boundary: bool,
    pub proper: Vec<DimVector>,
    pub simplicial: bool,
    pub decomposition: Option<Vec<Group>>,
}

fn ivec(d: &DimVector) -> IVec {
    d.coords().to_vec()
}

fn dim(v: &IVec) -> DimVector {
    DimVector::new(v.clone()).expect("cone rays are nonnegative")
}

/// Smallest face containing `x`, with coefficients if its rays are independent.
fn face_of(rays: &[IVec], h: &HRep, x: &IVec) -> Face {
    let tight = h.tight(x);
    let on: Vec<IVec> = rays.iter().filter(|r| tight.iter().all(|&f| dot(&h.facets[f], r).is_zero())).cloned().collect();
    let coefficients = if rank_of(&on) == on.len() {
        crate::linalg::coordinates(&on, x).map(|c| c.iter().map(Rat::to_string).collect()).unwrap_or_default()
    } else {
        Vec::new()
    };
    Face { rays: on.iter().map(dim).collect(), coefficients }
}

/// Whether the origin is a nonnegative combination of `pts` with the combination unique up to scale.
fn origin_in_simplex(pts: &[IVec], n: usize) -> bool {
    let cols = pts.len();
    if cols == 0 {
        return false;
    }
    let t: Vec<IVec> = (0..n).map(|i| pts.iter().map(|p| p[i].clone()).collect()).collect();
    let k = int_kernel(&t, cols);
    if k.len() != 1 {
        return false;
    }
    let s: Vec<i8> = k[0].iter().map(sign).collect();
    s.iter().all(|&x| x > 0) || s.iter().all(|&x| x < 0)
}

/// Partition of the translated vertices into groups whose spans form a direct sum, each group a
/// simplex around the origin (or a simplex with the origin as a vertex).
fn decompose(w: &[IVec], n: usize) -> Option<Vec<Group>> {
    // (member mask, dimension, uses the origin)
    type Part = (u32, usize, bool);
    let r = w.len();
    let total = rank_of(w);
    let mut memo = std::collections::HashMap::new();
    fn go(
        mask: u32,
        w: &[IVec],
        n: usize,
        memo: &mut std::collections::HashMap<u32, Option<Vec<Part>>>,
    ) -> Option<Vec<Part>> {
        if mask == 0 {
            return Some(Vec::new());
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let low = mask.trailing_zeros();
        let mut best = None;
        let rest = mask & !(1 << low);
        let mut sub = rest;
        loop {
            let g = sub | (1 << low);
            let pts: Vec<IVec> = (0..w.len()).filter(|i| g >> i & 1 == 1).map(|i| w[i].clone()).collect();
            let d = rank_of(&pts);
            let kind = if pts.len() == d + 1 && origin_in_simplex(&pts, n) {
                Some(false)
            } else if pts.len() == d {
                Some(true)
            } else {
                None
            };
            if let Some(uses_origin) = kind {
                if let Some(mut tail) = go(mask & !g, w, n, memo) {
                    tail.insert(0, (g, d, uses_origin));
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            let score = |v: &Vec<Part>| v.iter().filter(|x| x.2).count();
                            score(&tail) < score(b)
                        }
                    };
                    if better {
                        best = Some(tail);
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        memo.insert(mask, best.clone());
        best
    }
    if r > 16 {
        return None;
    }
    let groups = go((1u32 << r) - 1, w, n, &mut memo)?;
    let dims: usize = groups.iter().map(|g| g.1).sum();
    if dims != total {
        return None;
    }
    let mut out: Vec<Group> = groups
        .into_iter()
        .map(|(m, d, o)| Group { rays: (0..r).filter(|i| m >> i & 1 == 1).collect(), dimension: d, uses_origin: o })
        .collect();
    out.sort_by(|a, b| a.rays.cmp(&b.rays));
    Some(out)
}

/// Translated slice vertices `ℓ(s)·v − ℓ(v)·s`, positive multiples of `u − s` on the slice `ℓ = 1`.
fn translated(rays: &[IVec], s: &IVec) -> Vec<IVec> {
    let l = |v: &IVec| v.iter().sum::<BigInt>();
    let ls = l(s);
    rays.iter().map(|v| v.iter().zip(s).map(|(a, b)| &ls * a - l(v) * b).collect()).collect()
}

pub fn cone_report(calc: &GenericCalculus, delta: &DimVector, bound: u32) -> Result<ConeReport> {
    let n = calc.quiver().n();
    let st = StabilityChecker::new(calc, delta)?;
    let stable = st.enumerate_stable(bound);
    if stable.is_empty() {
        return Err(Error::Exhausted { what: "stable vectors", limit: bound as u64 });
    }
    let gens: Vec<IVec> = stable.iter().map(ivec).collect();
    let ext = extreme_indices(&gens, n);
    let rays: Vec<IVec> = ext.iter().map(|&i| gens[i].clone()).collect();
    let inner: Vec<&DimVector> = (0..stable.len()).filter(|i| !ext.contains(i)).map(|i| &stable[i]).collect();
    let stable_non_extremal = match inner.as_slice() {
        [] => None,
        [s] if calc.quiver().pair(s, s).is_zero() => Some((*s).clone()),
        _ => return Err(Error::inconsistent("a real stable vector lies inside the cone")),
    };
    let h = HRep::of(&rays, n);
    let dimension = rank_of(&rays);
    let subcones: Vec<Vec<IVec>> =
        (0..rays.len()).map(|i| rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect()).collect();
    let proper = if rays.len() <= 1 { Vec::new() } else { intersect(&subcones, n) };
    if proper.len() > 1 {
        return Err(Error::inconsistent("Proper(C) has more than one ray"));
    }
    let simplicial = rays.len() == dimension;
    if simplicial != proper.is_empty() {
        return Err(Error::inconsistent("Proper(C) is empty exactly for simplicial cones"));
    }
    let decomposition = match proper.first() {
        None => Some(vec![Group { rays: (0..rays.len()).collect(), dimension: dimension.saturating_sub(1), uses_origin: false }]),
        Some(s) => decompose(&translated(&rays, s), n),
    };
    let d = ivec(delta);
    let delta_face = face_of(&rays, &h, &d);
    let delta_on_boundary = !h.tight(&d).is_empty();
    let bound_touched = stable.iter().any(|x| x.max_entry() == BigInt::from(bound));
    Ok(ConeReport {
        delta: delta.clone(),
        bound,
        bound_touched,
        stable,
        rays: rays.iter().map(dim).collect(),
        stable_non_extremal,
        dimension,
        facets: h.facets.len(),
        delta_face,
        delta_on_boundary,
        proper: proper.iter().map(dim).collect(),
        simplicial,
        decomposition,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePoint {
    pub label: String,
    pub coords: Vec<String>,
}

/// Points of the slice `Σ x_i = 1` in the affine frame of the first independent rays.
pub fn slice_coordinates(report: &ConeReport, delta_bar: Option<&DimVector>) -> Vec<SlicePoint> {
    let rays: Vec<IVec> = report.rays.iter().map(ivec).collect();
    let scale = |v: &IVec| -> Vec<Rat> {
        let l = Rat::from_integer(v.iter().sum::<BigInt>());
        v.iter().map(|x| Rat::from_integer(x.clone()) / &l).collect()
    };
    let mut frame: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut trial: Vec<IVec> = frame.iter().map(|&j| rays[j].clone()).collect();
        trial.push(rays[i].clone());
        if rank_of(&trial) == trial.len() {
            frame.push(i);
        }
    }
    let basis: Vec<Vec<Rat>> = frame.iter().map(|&i| scale(&rays[i])).collect();
    let to_coords = |v: &IVec| -> Vec<String> {
        let p = scale(v);
        if basis.len() <= 1 {
            return vec!["0".into(), "0".into()];
        }
        let cols: Vec<Vec<Rat>> = basis[1..].iter().map(|b| b.iter().zip(&basis[0]).map(|(x, y)| x - y).collect()).collect();
        let n = p.len();
        let m = RatMatrix::from_rows((0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
        let rhs: Vec<Rat> = p.iter().zip(&basis[0]).map(|(x, y)| x - y).collect();
        let mut c: Vec<String> = m.solve(&rhs).unwrap_or_default().iter().map(Rat::to_string).collect();
        while c.len() < 2 {
            c.push("0".into());
        }
        c
    };
    let mut out: Vec<SlicePoint> =
        report.rays.iter().map(|r| SlicePoint { label: format!("ray[{r}]"), coords: to_coords(&ivec(r)) }).collect();
    out.push(SlicePoint { label: "delta".into(), coords: to_coords(&ivec(&report.delta)) });
    if let Some(b) = delta_bar {
        out.push(SlicePoint { label: "delta_bar".into(), coords: to_coords(&ivec(b)) });
    }
    out
}

/// Plain rows `label x y ...`.
pub fn slice_text(points: &[SlicePoint]) -> String {
    points.iter().map(|p| format!("{} {}\n", p.label, p.coords.join(" "))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn iv(x: &[i64]) -> IVec {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    fn v(x: &[i64]) -> DimVector {
        DimVector::of(x)
    }

    #[test]
    fn square_cone_rays_and_proper() {
        let gens = vec![iv(&[1, 0, 1]), iv(&[0, 1, 1]), iv(&[-1, 0, 1]), iv(&[0, -1, 1]), iv(&[0, 0, 1])];
        assert_eq!(extreme_indices(&gens, 3), vec![0, 1, 2, 3]);
        let rays: Vec<IVec> = gens[..4].to_vec();
        let subs: Vec<Vec<IVec>> = (0..4).map(|i| (0..4).filter(|&j| j != i).map(|j| rays[j].clone()).collect()).collect();
        assert_eq!(intersect(&subs, 3), vec![iv(&[0, 0, 1])]);
        let tri = [iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let subs: Vec<Vec<IVec>> = (0..3).map(|i| (0..3).filter(|&j| j != i).map(|j| tri[j].clone()).collect()).collect();
        assert!(intersect(&subs, 3).is_empty());
    }

    #[test]
    fn q4_cone() {
        let q = corpus::q4();
        let calc = GenericCalculus::new(&q);
        let r = cone_report(&calc, &v(&[3, 2, 3, 1]), 12).unwrap();
        assert_eq!(r.rays, vec![v(&[0, 0, 1, 0]), v(&[3, 2, 1, 1]), v(&[8, 3, 3, 3])]);
        assert!(r.proper.is_empty() && r.simplicial);
        assert_eq!(r.delta_face.rays, vec![v(&[0, 0, 1, 0]), v(&[3, 2, 1, 1])]);
        assert_eq!(r.delta_face.coefficients, vec!["2", "1"]);
        assert!(r.delta_on_boundary);
        let pts = slice_coordinates(&r, Some(&v(&[3, 2, 1, 1])));
        assert_eq!(pts.len(), 5);
    }

    #[test]
    fn d4_tilde_cone() {
        let q = corpus::d4_tilde();
        let calc = GenericCalculus::new(&q);
        let delta = v(&[2, 1, 1, 1, 1]);
        let r = cone_report(&calc, &delta, 3).unwrap();
        assert_eq!(r.rays.len(), 6);
        assert_eq!(r.proper, vec![delta.clone()]);
        assert_eq!(r.stable_non_extremal, Some(delta));
        let groups = r.decomposition.unwrap();
        assert_eq!(groups.len(), 3);
        assert!(groups.iter().all(|g| g.dimension == 1 && g.rays.len() == 2 && !g.uses_origin));
    }
}
