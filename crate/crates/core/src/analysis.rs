//! From an isotropic Schur root δ to its tame subcategory R(Q, δ): the tame pair, a full sequence of
//! stable exceptional roots, the δ_i chain, δ̄, the σ_δ-stable simples and the shape of SI(Q, δ).

use crate::error::{Error, Result};
use crate::exceptional::{Direction, ExceptionalSequence};
use crate::generic::{boxed, GenericCalculus};
use crate::linalg::rank_of;
use crate::position::{FormType, PositionTag, PositionType, Subcategory};
use crate::quiver::{AffineTag, DimVector, QuiverFile};
use crate::stability::StabilityChecker;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default largest coordinate for stable-vector enumeration.
pub const DEFAULT_BOUND: u32 = 12;
/// Iterative deepening stops after this coordinate bound.
pub const DEEPEST_BOUND: u32 = 48;
/// Default range `|r| ≤ horizon` of Coxeter powers in the smaller-type test.
pub const DEFAULT_HORIZON: u32 = 24;

fn check_isotropic_schur(calc: &GenericCalculus, delta: &DimVector) -> Result<()> {
    let q = calc.quiver();
    if !q.euler_pairing(delta, delta)?.is_zero() {
        return Err(Error::invalid(format!("({delta}) is not isotropic")));
    }
    if !calc.is_schur_root(delta)? {
        return Err(Error::invalid(format!("({delta}) is not a Schur root")));
    }
    Ok(())
}

fn is_exceptional_after(calc: &GenericCalculus, earlier: &[DimVector], x: &DimVector) -> Result<bool> {
    for e in earlier {
        if calc.hom_ext(e, x)? != (0, 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The real Schur roots `v, w` with `v + w = δ`, `⟨w, v⟩ = −2` and `(ms…, v, w)` exceptional;
/// lexicographically least `v`.
pub fn tame_pair_after(calc: &GenericCalculus, ms: &[DimVector], delta: &DimVector) -> Result<(DimVector, DimVector)> {
    tame_pairs_after(calc, ms, delta, true)?
        .pop()
        .ok_or_else(|| Error::inconsistent(format!("no tame pair for ({delta}) right of the given sequence")))
}

/// Every such pair, lexicographic in `v`; with `first` set, stops after one.
pub fn tame_pairs_after(
    calc: &GenericCalculus,
    ms: &[DimVector],
    delta: &DimVector,
    first: bool,
) -> Result<Vec<(DimVector, DimVector)>> {
    let q = calc.quiver();
    let d = delta.small()?;
    let mut out = Vec::new();
    for v in boxed(&d) {
        if v.iter().all(|&x| x == 0) || v == d {
            continue;
        }
        let w: Vec<u32> = d.iter().zip(&v).map(|(a, b)| a - b).collect();
        if calc.pair_small(&v, &v) != 1 || calc.pair_small(&w, &w) != 1 {
            continue;
        }
        if calc.pair_small(&w, &v) != -2 || calc.pair_small(&v, &w) != 0 || calc.ext_small(&v, &w) != 0 {
            continue;
        }
        if calc.ext_small(&v, &v) != 0 || calc.ext_small(&w, &w) != 0 {
            continue;
        }
        let (v, w) = (DimVector::from_small(&v), DimVector::from_small(&w));
        if !is_exceptional_after(calc, ms, &v)? || !is_exceptional_after(calc, ms, &w)? {
            continue;
        }
        debug_assert_eq!(q.pair(&w, &v), BigInt::from(-2));
        out.push((v, w));
        if first {
            break;
        }
    }
    Ok(out)
}

pub fn find_tame_pair(calc: &GenericCalculus, delta: &DimVector) -> Result<(DimVector, DimVector)> {
    check_isotropic_schur(calc, delta)?;
    tame_pair_after(calc, &[], delta)
}

fn topo_by_ext(calc: &GenericCalculus, xs: &[DimVector]) -> Option<Vec<DimVector>> {
    let k = xs.len();
    let small: Vec<Vec<u32>> = xs.iter().map(|x| x.small().expect("small")).collect();
    let mut placed = vec![false; k];
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        // `ext(a, b) > 0` puts b before a; pick something nothing unplaced must precede.
        let i = (0..k).find(|&i| {
            !placed[i] && (0..k).all(|j| j == i || placed[j] || calc.ext_small(&small[i], &small[j]) == 0)
        })?;
        placed[i] = true;
        out.push(xs[i].clone());
    }
    Some(out)
}

/// Every order of `xs` compatible with the ext relation, at most `cap` of them.
fn orders_by_ext(calc: &GenericCalculus, xs: &[DimVector], cap: usize) -> Vec<Vec<DimVector>> {
    fn go(
        calc: &GenericCalculus,
        small: &[Vec<u32>],
        placed: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if cur.len() == small.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..small.len() {
            let free = !placed[i]
                && (0..small.len()).all(|j| j == i || placed[j] || calc.ext_small(&small[i], &small[j]) == 0);
            if free {
                placed[i] = true;
                cur.push(i);
                go(calc, small, placed, cur, out, cap);
                cur.pop();
                placed[i] = false;
            }
        }
    }
    let small: Vec<Vec<u32>> = xs.iter().map(|x| x.small().expect("small")).collect();
    let mut out = Vec::new();
    go(calc, &small, &mut vec![false; xs.len()], &mut Vec::new(), &mut out, cap);
    out.into_iter().map(|o| o.into_iter().map(|i| xs[i].clone()).collect()).collect()
}

fn valid_sequence(calc: &GenericCalculus, xs: &[DimVector]) -> Result<bool> {
    for i in 0..xs.len() {
        if !is_exceptional_after(calc, &xs[..i], &xs[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSequence {
    /// `(M_{n−2}, …, M_1)`.
    pub classes: Vec<DimVector>,
    pub v: DimVector,
    pub w: DimVector,
    pub bound: u32,
    pub stable: Vec<DimVector>,
}

const ORDER_CAP: usize = 720;

fn bounds_from(bound: u32) -> Vec<u32> {
    let mut out = vec![bound.max(1)];
    while out.last().unwrap() * 2 <= DEEPEST_BOUND.max(bound) {
        let b = out.last().unwrap() * 2;
        out.push(b);
    }
    out
}

/// A full exceptional sequence of `n − 2` stable real roots followed by its tame pair.
pub fn stable_exceptional_sequence(calc: &GenericCalculus, delta: &DimVector, bound: u32) -> Result<StableSequence> {
    check_isotropic_schur(calc, delta)?;
    let n = calc.quiver().n();
    let k = n.saturating_sub(2);
    let st = StabilityChecker::new(calc, delta)?;
    let mut reached = bound;
    for b in bounds_from(bound) {
        reached = b;
        let stable = st.enumerate_stable(b);
        let reals: Vec<DimVector> = stable.iter().filter(|x| calc.quiver().pair(x, x).is_one()).cloned().collect();
        for pick in combinations(reals.len(), k) {
            let chosen: Vec<DimVector> = pick.iter().map(|&i| reals[i].clone()).collect();
            let Some(ordered) = topo_by_ext(calc, &chosen) else { continue };
            if !valid_sequence(calc, &ordered)? {
                continue;
            }
            if let Ok((v, w)) = tame_pair_after(calc, &ordered, delta) {
                return Ok(StableSequence { classes: ordered, v, w, bound: b, stable });
            }
        }
    }
    Err(Error::Exhausted { what: "stable exceptional sequence bound", limit: reached as u64 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CKind {
    WildConnected,
    TameConnected,
    TameDisconnected,
}

impl fmt::Display for CKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CKind::WildConnected => "wild-connected",
            CKind::TameConnected => "tame-connected",
            CKind::TameDisconnected => "tame-disconnected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevel {
    /// 1-based level `i`.
    pub level: usize,
    pub m: DimVector,
    pub v: DimVector,
    pub w: DimVector,
    pub kind: CKind,
    pub position: PositionType,
    pub delta: DimVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaChain {
    pub levels: Vec<ChainLevel>,
    pub delta_bar: DimVector,
    pub v: DimVector,
    pub w: DimVector,
}

impl DeltaChain {
    /// Levels whose rank-3 subcategory is tame and connected.
    pub fn tame_connected(&self) -> Vec<usize> {
        self.levels.iter().filter(|l| l.kind == CKind::TameConnected).map(|l| l.level).collect()
    }
}

/// Runs `i = 1, …, n − 2` over `ms = (M_{n−2}, …, M_1)`; δ̄ is the root after the last level.
pub fn delta_chain(
    calc: &GenericCalculus,
    delta: &DimVector,
    ms: &[DimVector],
    v: &DimVector,
    w: &DimVector,
) -> Result<DeltaChain> {
    let q = calc.quiver();
    let (mut d, mut v, mut w) = (delta.clone(), v.clone(), w.clone());
    let mut levels = Vec::with_capacity(ms.len());
    for (idx, m) in ms.iter().rev().enumerate() {
        let triple = ExceptionalSequence::from_classes(q, vec![m.clone(), v.clone(), w.clone()])?;
        let sub = Subcategory::new(&triple)?;
        let kind = if !sub.is_connected() {
            CKind::TameDisconnected
        } else {
            match sub.form_type() {
                FormType::Wild => CKind::WildConnected,
                FormType::Tame => CKind::TameConnected,
                FormType::Finite => return Err(Error::inconsistent("rank-3 subcategory containing δ is of finite type")),
            }
        };
        let position = sub.position(m)?;
        levels.push(ChainLevel { level: idx + 1, m: m.clone(), v: v.clone(), w: w.clone(), kind, position: position.clone(), delta: d.clone() });
        if position.tag == PositionTag::Preinjective {
            let moved = triple.mutate(1, Direction::Left)?.mutate(2, Direction::Left)?;
            let (mut nv, mut nw) = (moved.classes()[0].clone(), moved.classes()[1].clone());
            let c = q.pair(&d, m);
            let nd = d.class().sub(&m.class().scale(&c)).to_dim().ok_or_else(|| Error::inconsistent("δ_{i+1} is not a dimension vector"))?;
            if nd != nv.add(&nw) {
                // The reflected pair can carry δ_{i+1} as a difference; its simples carry it as a sum.
                let simples = ExceptionalSequence::from_classes(q, vec![nv.clone(), nw.clone()])?.reduce_to_simples(None)?;
                nv = simples.classes()[0].clone();
                nw = simples.classes()[1].clone();
            }
            if nd != nv.add(&nw) || q.pair(&nw, &nv) != BigInt::from(-2) {
                return Err(Error::inconsistent(format!("reflected pair ({nv}),({nw}) does not carry ({nd})")));
            }
            if !calc.embeds(&nd, &d)? {
                return Err(Error::inconsistent(format!("({nd}) does not embed in ({d})")));
            }
            d = nd;
            v = nv;
            w = nw;
        }
        if !q.pair(&d, &d).is_zero() || !calc.is_schur_root(&d)? {
            return Err(Error::inconsistent(format!("chain root ({d}) is not an isotropic Schur root")));
        }
    }
    Ok(DeltaChain { levels, delta_bar: d, v, w })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiClass {
    Polynomial,
    Hypersurface,
}

impl fmt::Display for SiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SiClass::Polynomial => "polynomial",
            SiClass::Hypersurface => "hypersurface",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimpleTag {
    /// One of the `M_i` outside R(Q, δ).
    Exceptional,
    /// An exceptional quasi-simple of R(Q, δ).
    QuasiSimple,
    /// δ̄.
    Isotropic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSimple {
    pub root: DimVector,
    pub tag: SimpleTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    /// Quasi-simples of the three tubes of rank at least 2.
    pub tubes: Vec<Vec<DimVector>>,
    /// `C[..]*… + C[..]*… + C[..]*… = 0`, scalars omitted.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub delta: DimVector,
    pub delta_bar: DimVector,
    pub stable_sequence: Vec<DimVector>,
    pub tame_pair: (DimVector, DimVector),
    pub chain: Vec<ChainLevel>,
    pub tame_levels: Vec<usize>,
    /// Levels whose M_i generate R together with the tame pair; `tame_levels` unless widened.
    pub r_levels: Vec<usize>,
    pub r_generators: Vec<DimVector>,
    pub r_quiver: QuiverFile,
    pub r_affine: String,
    pub si_class: SiClass,
    pub stable_simples: Vec<StableSimple>,
    pub tubes: Vec<Vec<DimVector>>,
    pub smaller_type: bool,
    pub relation: Option<Relation>,
    pub adjoined_variables: usize,
    pub bound: u32,
    pub bound_touched: bool,
    pub quasi_simples_complete: bool,
    pub sequences_rejected: usize,
}

pub const SCHEMA_VERSION: u32 = 1;

/// Ranks of the tubes of rank at least 2.
pub fn tube_ranks(tag: AffineTag) -> Vec<u32> {
    let mut r = match tag {
        AffineTag::ATilde(p, q) => vec![p, q],
        AffineTag::DTilde(m) => vec![2, 2, m - 2],
        AffineTag::ETilde(6) => vec![2, 3, 3],
        AffineTag::ETilde(7) => vec![2, 3, 4],
        AffineTag::ETilde(8) => vec![2, 3, 5],
        _ => vec![],
    };
    r.retain(|&x| x >= 2);
    r.sort();
    r
}

/// Orbits of `quasi` under the Coxeter transformation of `sub`, each listed from its least element.
pub fn tubes(sub: &Subcategory, quasi: &[DimVector]) -> Result<Vec<Vec<DimVector>>> {
    let phi = sub.quiver().coxeter_matrix().clone();
    let simples = sub.simples().classes().to_vec();
    let global = |c: &[BigInt]| -> Option<DimVector> {
        let n = simples[0].len();
        let mut acc = vec![BigInt::zero(); n];
        for (k, s) in c.iter().zip(&simples) {
            for (a, b) in acc.iter_mut().zip(s.coords()) {
                *a += k * b;
            }
        }
        DimVector::new(acc).ok()
    };
    let mut seen: Vec<DimVector> = Vec::new();
    let mut out = Vec::new();
    for x in quasi {
        if seen.contains(x) {
            continue;
        }
        let c0 = sub.coordinates(x).ok_or_else(|| Error::inconsistent(format!("({x}) is not in R")))?;
        let mut orbit = vec![x.clone()];
        let mut c = phi.mul_vec(&c0);
        while c != c0 {
            if orbit.len() > 64 {
                return Err(Error::inconsistent(format!("({x}) is not periodic under the Coxeter transformation")));
            }
            let g = global(&c).ok_or_else(|| Error::inconsistent(format!("τ-orbit of ({x}) leaves the positive cone")))?;
            orbit.push(g);
            c = phi.mul_vec(&c);
        }
        orbit.sort();
        seen.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

fn relation_text(tubes: &[Vec<DimVector>]) -> String {
    let prods: Vec<String> = tubes
        .iter()
        .map(|t| t.iter().map(|d| format!("C[{d}]")).collect::<Vec<_>>().join("*"))
        .collect();
    format!("{} = 0", prods.join(" + "))
}

/// `Φ^r δ` for `|r| ≤ horizon` has a zero coordinate while it stays a dimension vector.
fn coxeter_non_sincere(calc: &GenericCalculus, delta: &DimVector, horizon: u32) -> bool {
    let q = calc.quiver();
    if !delta.is_sincere() {
        return true;
    }
    for m in [q.coxeter_matrix(), q.coxeter_inverse()] {
        let mut x = delta.coords().to_vec();
        for _ in 0..horizon {
            x = m.mul_vec(&x);
            if x.iter().any(Signed::is_negative) {
                break;
            }
            if x.iter().any(Zero::is_zero) {
                return true;
            }
        }
    }
    false
}

/// Smaller type, by Coxeter powers and by positions of the stable exceptional roots in rep(Q);
/// disagreement is an error.
pub fn smaller_type_with(
    calc: &GenericCalculus,
    delta: &DimVector,
    horizon: u32,
    stable_exceptional: &[DimVector],
) -> Result<bool> {
    let by_powers = coxeter_non_sincere(calc, delta, horizon);
    let full = Subcategory::full(calc.quiver());
    let mut by_stable = false;
    for x in stable_exceptional {
        let p = full.position(x)?;
        if matches!(p.tag, PositionTag::Preprojective | PositionTag::Preinjective) {
            by_stable = true;
            break;
        }
    }
    match (by_powers, by_stable) {
        (a, b) if a == b => Ok(a),
        (false, true) => Err(Error::Exhausted { what: "smaller-type horizon", limit: horizon as u64 }),
        _ => Err(Error::inconsistent("non-sincere Coxeter power but every stable exceptional root is regular")),
    }
}

pub fn is_smaller_type(calc: &GenericCalculus, delta: &DimVector, horizon: u32, bound: u32) -> Result<bool> {
    check_isotropic_schur(calc, delta)?;
    let st = StabilityChecker::new(calc, delta)?;
    let reals: Vec<DimVector> =
        st.enumerate_stable(bound).into_iter().filter(|x| calc.quiver().pair(x, x).is_one()).collect();
    smaller_type_with(calc, delta, horizon, &reals)
}

/// Stable sequences with every tame pair that completes them, at the first bound where any exist.
fn candidate_sequences(calc: &GenericCalculus, delta: &DimVector, bound: u32) -> Result<Vec<StableSequence>> {
    check_isotropic_schur(calc, delta)?;
    let k = calc.quiver().n().saturating_sub(2);
    let st = StabilityChecker::new(calc, delta)?;
    let mut reached = bound;
    for b in bounds_from(bound) {
        reached = b;
        let stable = st.enumerate_stable(b);
        let reals: Vec<DimVector> = stable.iter().filter(|x| calc.quiver().pair(x, x).is_one()).cloned().collect();
        let mut out = Vec::new();
        for pick in combinations(reals.len(), k) {
            let chosen: Vec<DimVector> = pick.iter().map(|&i| reals[i].clone()).collect();
            for ordered in orders_by_ext(calc, &chosen, ORDER_CAP) {
                if !valid_sequence(calc, &ordered)? {
                    continue;
                }
                for (v, w) in tame_pairs_after(calc, &ordered, delta, false)? {
                    out.push(StableSequence { classes: ordered.clone(), v, w, bound: b, stable: stable.clone() });
                }
            }
        }
        if !out.is_empty() {
            return Ok(out);
        }
    }
    Err(Error::Exhausted { what: "stable exceptional sequence bound", limit: reached as u64 })
}

/// The first candidate sequence whose stable vectors split as `{M_i : i ∉ I}`, the quasi-simples
/// of R(Q, δ) and δ̄. Earlier candidates failing the split are counted in `sequences_rejected`.
pub fn analyze(calc: &GenericCalculus, delta: &DimVector, bound: u32) -> Result<AnalysisReport> {
    if !calc.quiver().is_connected() {
        return Err(Error::invalid("the quiver is not connected"));
    }
    let cands = candidate_sequences(calc, delta, bound)?;
    let k = calc.quiver().n().saturating_sub(2);
    let mut first_reason = None;
    let mut rejected = 0;
    // Tubes of rank 3 or more leave tame-disconnected levels whose stable neighbours fall outside
    // R; widening R to the first levels recovers them.
    let strict = (0..cands.len()).map(|c| (c, 0));
    let widened = (0..cands.len()).flat_map(|c| (1..=k).map(move |w| (c, w)));
    for (c, widen) in strict.chain(widened) {
        match analyze_candidate(calc, delta, &cands[c], widen)? {
            Ok(mut r) => {
                r.sequences_rejected = rejected;
                return Ok(r);
            }
            Err(reason) => {
                rejected += 1;
                first_reason.get_or_insert(reason);
            }
        }
    }
    Err(Error::inconsistent(format!(
        "none of {} stable sequences splits the stable vectors: {}",
        cands.len(),
        first_reason.unwrap_or_default()
    )))
}

/// Splits the stable vectors of `seq` with R generated by the tame-connected levels together with
/// levels `1..=widen`.
fn analyze_candidate(
    calc: &GenericCalculus,
    delta: &DimVector,
    seq: &StableSequence,
    widen: usize,
) -> Result<std::result::Result<AnalysisReport, String>> {
    let q = calc.quiver();
    let chain = delta_chain(calc, delta, &seq.classes, &seq.v, &seq.w)?;
    let tame_levels = chain.tame_connected();
    let mut r_levels = tame_levels.clone();
    r_levels.extend((1..=widen).filter(|l| !tame_levels.contains(l)));
    r_levels.sort_unstable();
    let k = seq.classes.len();
    let mut r_generators: Vec<DimVector> = seq
        .classes
        .iter()
        .enumerate()
        .filter(|(j, _)| r_levels.contains(&(k - j)))
        .map(|(_, m)| m.clone())
        .collect();
    r_generators.push(chain.v.clone());
    r_generators.push(chain.w.clone());
    let r_seq = ExceptionalSequence::from_classes(q, r_generators.clone())?;
    let sub = Subcategory::new(&r_seq)?;
    let aff = sub.quiver().affine_type();
    let null = match (&aff.null_root, sub.is_connected()) {
        (Some(n), true) if aff.is_affine() => n.clone(),
        _ => return Ok(Err("R(Q, δ) is not tame connected".into())),
    };
    let mut embedded = vec![BigInt::zero(); q.n()];
    for (c, s) in null.coords().iter().zip(sub.simples().classes()) {
        for (a, b) in embedded.iter_mut().zip(s.coords()) {
            *a += c * b;
        }
    }
    let embedded = DimVector::new(embedded)?;
    if embedded != chain.delta_bar {
        return Ok(Err(format!("null root of R embeds as ({embedded}) but the chain ends at ({})", chain.delta_bar)));
    }
    let si_class = if aff.is_de() { SiClass::Hypersurface } else { SiClass::Polynomial };
    let outside: Vec<&DimVector> =
        seq.classes.iter().enumerate().filter(|(j, _)| !r_levels.contains(&(k - j))).map(|(_, m)| m).collect();
    let mut stable_simples = Vec::new();
    let mut quasi = Vec::new();
    for x in &seq.stable {
        let tag = if *x == chain.delta_bar {
            SimpleTag::Isotropic
        } else if outside.contains(&x) {
            SimpleTag::Exceptional
        } else if q.pair(x, x).is_one() && sub.contains(x) {
            quasi.push(x.clone());
            SimpleTag::QuasiSimple
        } else {
            return Ok(Err(format!("stable ({x}) is neither an M_i, a quasi-simple of R, nor δ̄")));
        };
        stable_simples.push(StableSimple { root: x.clone(), tag });
    }
    if !stable_simples.iter().any(|s| s.tag == SimpleTag::Isotropic) {
        return Ok(Err(format!("δ̄ = ({}) was not found stable", chain.delta_bar)));
    }
    let tubes = tubes(&sub, &quasi)?;
    let expected: u32 = tube_ranks(aff.tag).iter().sum();
    let quasi_simples_complete = quasi.len() as u32 == expected;
    let exceptional: Vec<DimVector> = seq.stable.iter().filter(|x| q.pair(x, x).is_one()).cloned().collect();
    let smaller_type = smaller_type_with(calc, delta, DEFAULT_HORIZON, &exceptional)?;
    let mut report = AnalysisReport {
        schema: SCHEMA_VERSION,
        delta: delta.clone(),
        delta_bar: chain.delta_bar.clone(),
        stable_sequence: seq.classes.clone(),
        tame_pair: (seq.v.clone(), seq.w.clone()),
        chain: chain.levels.clone(),
        tame_levels,
        r_levels,
        r_generators: r_generators.clone(),
        r_quiver: sub.quiver().to_file(),
        r_affine: aff.tag.to_string(),
        si_class,
        stable_simples,
        tubes,
        smaller_type,
        relation: None,
        adjoined_variables: q.n() - rank_of(&r_generators.iter().map(|g| g.coords().to_vec()).collect::<Vec<_>>()),
        bound: seq.bound,
        bound_touched: seq.stable.iter().any(|x| x.max_entry() == BigInt::from(seq.bound)),
        quasi_simples_complete,
        sequences_rejected: 0,
    };
    report.relation = hypersurface_relation(&report)?;
    Ok(Ok(report))
}

/// The formal hypersurface equation for D̃/Ẽ types; `None` for polynomial rings.
pub fn hypersurface_relation(report: &AnalysisReport) -> Result<Option<Relation>> {
    if report.si_class == SiClass::Polynomial {
        return Ok(None);
    }
    let big: Vec<Vec<DimVector>> = report.tubes.iter().filter(|t| t.len() >= 2).cloned().collect();
    if big.len() != 3 {
        let err = format!("expected three tubes of rank at least 2, found {}", big.len());
        return Err(if report.quasi_simples_complete {
            Error::inconsistent(err)
        } else {
            Error::Exhausted { what: "quasi-simple enumeration bound", limit: report.bound as u64 }
        });
    }
    for t in &big {
        let sum = t.iter().skip(1).fold(t[0].clone(), |a, b| a.add(b));
        if sum != report.delta_bar {
            return Err(Error::inconsistent(format!("a tube sums to ({sum}), not δ̄")));
        }
    }
    Ok(Some(Relation { text: relation_text(&big), tubes: big }))
}

/// The analysis for one given stable sequence `(M_{n−2}, …, M_1)` and its first tame pair.
/// An error when this sequence does not split the stable vectors.
pub fn analyze_with_sequence(
    calc: &GenericCalculus,
    delta: &DimVector,
    ms: &[DimVector],
    bound: u32,
) -> Result<(DimVector, AffineTag, SiClass)> {
    if !valid_sequence(calc, ms)? {
        return Err(Error::invalid("the stable roots do not form an exceptional sequence"));
    }
    let (v, w) = tame_pair_after(calc, ms, delta)?;
    let stable = StabilityChecker::new(calc, delta)?.enumerate_stable(bound);
    let seq = StableSequence { classes: ms.to_vec(), v, w, bound, stable };
    let k = ms.len();
    let mut found = None;
    let mut first_reason = None;
    for widen in 0..=k {
        match analyze_candidate(calc, delta, &seq, widen)? {
            Ok(r) => {
                found = Some(r);
                break;
            }
            Err(reason) => {
                first_reason.get_or_insert(reason);
            }
        }
    }
    let r = found.ok_or_else(|| Error::inconsistent(first_reason.unwrap_or_default()))?;
    let tag: AffineTag = r.r_affine.parse()?;
    Ok((r.delta_bar, tag, r.si_class))
}

/// All valid stable sequences among the stable real roots at `bound`, in a deterministic order.
pub fn all_stable_sequences(calc: &GenericCalculus, delta: &DimVector, bound: u32) -> Result<Vec<Vec<DimVector>>> {
    let n = calc.quiver().n();
    let k = n.saturating_sub(2);
    let st = StabilityChecker::new(calc, delta)?;
    let reals: Vec<DimVector> =
        st.enumerate_stable(bound).into_iter().filter(|x| calc.quiver().pair(x, x).is_one()).collect();
    let mut out = Vec::new();
    for pick in combinations(reals.len(), k) {
        let chosen: Vec<DimVector> = pick.iter().map(|&i| reals[i].clone()).collect();
        let Some(ordered) = topo_by_ext(calc, &chosen) else { continue };
        if valid_sequence(calc, &ordered)? && tame_pair_after(calc, &ordered, delta).is_ok() {
            out.push(ordered);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(x: &[i64]) -> DimVector {
        DimVector::of(x)
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let c: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn kronecker_pair_and_trivial_chain() {
        let k = corpus::kronecker();
        let calc = GenericCalculus::new(&k);
        let d = v(&[1, 1]);
        assert_eq!(find_tame_pair(&calc, &d).unwrap(), (v(&[0, 1]), v(&[1, 0])));
        let r = analyze(&calc, &d, 4).unwrap();
        assert_eq!(r.delta_bar, d);
        assert!(r.chain.is_empty());
        assert_eq!(r.r_affine, "A-tilde(1,1)");
        assert_eq!(r.si_class, SiClass::Polynomial);
    }

    #[test]
    fn q4_pipeline() {
        let q = corpus::q4();
        let calc = GenericCalculus::new(&q);
        let d = v(&[3, 2, 3, 1]);
        let (a, b) = find_tame_pair(&calc, &d).unwrap();
        assert_eq!(a.add(&b), d);
        assert_eq!(q.pair(&b, &a), BigInt::from(-2));
        let r = analyze(&calc, &d, 12).unwrap();
        assert_eq!(r.stable_sequence, vec![v(&[8, 3, 3, 3]), v(&[0, 0, 1, 0])]);
        assert_eq!(r.delta_bar, v(&[3, 2, 1, 1]));
        assert!(r.tame_levels.is_empty());
        assert!(r.chain.iter().all(|l| l.kind == CKind::WildConnected));
        assert_eq!(r.chain[0].position.tag, PositionTag::Preinjective);
        assert_eq!(r.chain[1].position.tag, PositionTag::Preprojective);
        assert_eq!(r.r_affine, "A-tilde(1,1)");
        assert_eq!(r.si_class, SiClass::Polynomial);
        assert!(!r.smaller_type);
        assert_eq!(r.adjoined_variables, 2);
    }

    #[test]
    fn d4_tilde_hypersurface() {
        let q = corpus::d4_tilde();
        let calc = GenericCalculus::new(&q);
        let d = v(&[2, 1, 1, 1, 1]);
        let r = analyze(&calc, &d, 3).unwrap();
        assert_eq!(r.delta_bar, d);
        assert_eq!(r.si_class, SiClass::Hypersurface);
        assert_eq!(r.tame_levels, vec![1, 2, 3]);
        let rel = r.relation.unwrap();
        assert_eq!(rel.tubes.len(), 3);
        assert!(rel.tubes.iter().all(|t| t.len() == 2));
    }

    #[test]
    fn reflected_pair_is_renormalized() {
        let q = corpus::wild3();
        let calc = GenericCalculus::new(&q);
        let d = v(&[2, 3, 1]);
        let c = delta_chain(&calc, &d, &[v(&[1, 2, 0])], &v(&[2, 3, 0]), &v(&[0, 0, 1])).unwrap();
        assert_eq!(c.levels[0].position.tag, PositionTag::Preinjective);
        assert_eq!(c.delta_bar, v(&[1, 1, 1]));
        assert_eq!(c.v.add(&c.w), c.delta_bar);
        assert_eq!(q.pair(&c.w, &c.v), BigInt::from(-2));
    }

    #[test]
    fn e6_tilde_widens_to_the_whole_quiver() {
        let q = corpus::e6_tilde();
        let calc = GenericCalculus::new(&q);
        let d = v(&[3, 2, 1, 2, 1, 2, 1]);
        let r = analyze(&calc, &d, 4).unwrap();
        assert_eq!(r.delta_bar, d);
        assert_eq!(r.r_levels, vec![1, 2, 3, 4, 5]);
        assert_ne!(r.tame_levels, r.r_levels);
        assert_eq!(r.r_affine, "E-tilde(6)");
        let mut sizes: Vec<usize> = r.relation.unwrap().tubes.iter().map(|t| t.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3, 3]);
        assert_eq!(r.adjoined_variables, 0);
    }

    #[test]
    fn a_tilde_polynomial() {
        let q = corpus::a_tilde_21();
        let calc = GenericCalculus::new(&q);
        let r = analyze(&calc, &v(&[1, 1, 1]), 6).unwrap();
        assert_eq!(r.si_class, SiClass::Polynomial);
        assert!(r.relation.is_none());
        assert!(!r.smaller_type);
    }

    #[test]
    fn smaller_type_when_not_sincere() {
        let q = corpus::q4();
        let calc = GenericCalculus::new(&q);
        assert!(is_smaller_type(&calc, &v(&[1, 1, 0, 1]), 8, 8).unwrap());
    }
}
