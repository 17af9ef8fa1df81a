//! Sequences of isotropic type and the action of `B_{n−1}` on them by `γ_1, …, γ_{n−2}`.
//!
//! Words are written left to right and applied rightmost generator first, so
//! `g2 g1` means γ₁ then γ₂.

use crate::analysis::{stable_exceptional_sequence, tame_pairs_after};
use crate::error::{Error, Result};
use crate::exceptional::{rank2_tame_info, ExceptionalSequence};
use crate::generic::GenericCalculus;
use crate::position::{FormType, Subcategory};
use crate::quiver::{DimVector, KClass};
use crate::stability::kernel_box;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_BUDGET: usize = 10_000;

/// A word in braid generators, stored as written.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BraidWord(Vec<(usize, i8)>);

impl BraidWord {
    pub fn new(gens: Vec<(usize, i8)>) -> Result<Self> {
        if let Some(&(i, e)) = gens.iter().find(|&&(i, e)| i == 0 || (e != 1 && e != -1)) {
            return Err(Error::invalid(format!("bad generator ({i}, {e})")));
        }
        Ok(BraidWord(gens))
    }

    pub fn identity() -> Self {
        BraidWord(Vec::new())
    }

    pub fn gens(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    /// `g · self`: the generator applied after the word.
    pub fn after(&self, i: usize, e: i8) -> Self {
        let mut gens = Vec::with_capacity(self.0.len() + 1);
        gens.push((i, e));
        gens.extend_from_slice(&self.0);
        BraidWord(gens)
    }

    /// Generators in the order they act.
    pub fn in_application_order(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.0.iter().rev().copied()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.0).max().unwrap_or(0)
    }

    pub fn display_with(&self, letter: &str) -> String {
        if self.0.is_empty() {
            return "id".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| if e < 0 { format!("{letter}{i}^-1") } else { format!("{letter}{i}") })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("g"))
    }
}

/// Accepts `g2^-1 g1`, `s1 s2^-1`, `γ1`, `σ2^{-1}`; `id` or blank is the identity.
impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(BraidWord::identity());
        }
        let mut gens = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::invalid(format!("bad braid generator `{tok}`"));
            let body = tok
                .strip_prefix('g')
                .or_else(|| tok.strip_prefix('s'))
                .or_else(|| tok.strip_prefix('γ'))
                .or_else(|| tok.strip_prefix('σ'))
                .ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((a, b)) => (a, b.trim_start_matches('{').trim_end_matches('}')),
                None => (body, "1"),
            };
            let i: usize = idx.parse().map_err(|_| bad())?;
            let e: i8 = match exp {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return Err(bad()),
            };
            if i == 0 {
                return Err(bad());
            }
            gens.push((i, e));
        }
        Ok(BraidWord(gens))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Applies a σ-word to a sequence, rightmost first.
pub fn apply_sigma_word(e: &ExceptionalSequence, word: &BraidWord) -> Result<ExceptionalSequence> {
    if word.max_index() >= e.len() {
        return Err(Error::invalid(format!("σ{} out of range for length {}", word.max_index(), e.len())));
    }
    let mut cur = e.clone();
    for (i, x) in word.in_application_order() {
        cur = cur.sigma(i, x)?;
    }
    Ok(cur)
}

/// A full exceptional sequence whose entries at `position`, `position + 1` (1-based) span a
/// tame rank-2 subcategory; `root_type` is its isotropic root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoTypeSequence {
    base: ExceptionalSequence,
    position: usize,
    root_type: DimVector,
}

#[derive(Serialize, Deserialize)]
struct IsoTypeView {
    classes: Vec<DimVector>,
    position: usize,
    root_type: DimVector,
}

impl Serialize for IsoTypeSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IsoTypeView { classes: self.base.classes().to_vec(), position: self.position, root_type: self.root_type.clone() }
            .serialize(s)
    }
}

impl IsoTypeSequence {
    pub fn new(base: ExceptionalSequence, position: usize) -> Result<Self> {
        let n = base.quiver().n();
        if !base.is_full() {
            return Err(Error::invalid(format!("sequence of length {} is not full (n = {n})", base.len())));
        }
        if position == 0 || position >= n {
            return Err(Error::invalid(format!("isotropic position {position} out of range 1..{}", n - 1)));
        }
        let c = base.classes();
        let root_type = rank2_tame_info(base.quiver(), &c[position - 1], &c[position])?
            .ok_or_else(|| Error::invalid(format!("entries {position}, {} do not span a tame pair", position + 1)))?;
        Ok(IsoTypeSequence { base, position, root_type })
    }

    /// The first tame position.
    pub fn detect(base: ExceptionalSequence) -> Result<Self> {
        for r in 1..base.len() {
            if let Ok(s) = Self::new(base.clone(), r) {
                return Ok(s);
            }
        }
        Err(Error::invalid("no consecutive pair spans a tame rank-2 subcategory"))
    }

    /// `(M_{n−2}, …, M_1, V, W)` from the stable exceptional sequence of `δ`.
    pub fn for_root(calc: &GenericCalculus, delta: &DimVector, bound: u32) -> Result<Self> {
        let st = stable_exceptional_sequence(calc, delta, bound)?;
        let mut classes = st.classes.clone();
        classes.push(st.v.clone());
        classes.push(st.w.clone());
        let n = classes.len();
        let seq = ExceptionalSequence::from_classes(calc.quiver(), classes)?;
        Self::new(seq, n - 1)
    }

    /// Representation-level check that the root type is Schur.
    pub fn verify(&self, calc: &GenericCalculus) -> Result<()> {
        let q = self.base.quiver();
        if !q.pair(&self.root_type, &self.root_type).is_zero() || !calc.is_schur_root(&self.root_type)? {
            return Err(Error::inconsistent(format!("root type ({}) is not isotropic Schur", self.root_type)));
        }
        Ok(())
    }

    pub fn base(&self) -> &ExceptionalSequence {
        &self.base
    }

    pub fn classes(&self) -> &[DimVector] {
        self.base.classes()
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn root_type(&self) -> &DimVector {
        &self.root_type
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// `γ_i^{±1}`.
    ///
    /// | case | γ_i | γ_i⁻¹ |
    /// |---|---|---|
    /// | i < r−1 | σ_i | σ_i⁻¹ |
    /// | i > r | σ_{i+1} | σ_{i+1}⁻¹ |
    /// | i = r | σ_{r+1}, σ_r; r ↦ r+1 | σ_{r+1}⁻¹, σ_r⁻¹; r ↦ r+1 |
    /// | i = r−1 | σ_{r−1}, σ_r; r ↦ r−1 | σ_{r−1}⁻¹, σ_r⁻¹; r ↦ r−1 |
    ///
    /// Steps are listed in the order they act.
    pub fn gamma(&self, i: usize, exponent: i8) -> Result<Self> {
        let n = self.n();
        if i == 0 || i + 2 > n {
            return Err(Error::invalid(format!("γ{i} out of range 1..{}", n.saturating_sub(2))));
        }
        let r = self.position;
        let x = if exponent > 0 { 1 } else { -1 };
        let (steps, nr): (Vec<usize>, usize) = if i + 1 < r {
            (vec![i], r)
        } else if i > r {
            (vec![i + 1], r)
        } else if i == r {
            (vec![r + 1, r], r + 1)
        } else {
            (vec![r - 1, r], r - 1)
        };
        let mut seq = self.base.clone();
        for s in steps {
            seq = seq.sigma(s, x)?;
        }
        let out = Self::new(seq, nr).map_err(|e| Error::inconsistent(format!("γ{i}^{x} broke isotropic type: {e}")))?;
        if x > 0 && i + 1 == r {
            let xm = &self.classes()[r - 2];
            let q = self.base.quiver();
            let c = q.pair(&self.root_type, xm);
            let expect = self.root_type.class().sub(&xm.class().scale(&c));
            if expect != out.root_type.class() {
                return Err(Error::inconsistent(format!(
                    "γ{i} root ({}) differs from δ − ⟨δ, X⟩X = ({})",
                    out.root_type,
                    expect
                )));
            }
        }
        Ok(out)
    }

    /// Applies `word`, rightmost generator first.
    pub fn apply(&self, word: &BraidWord) -> Result<Self> {
        let mut cur = self.clone();
        for (i, x) in word.in_application_order() {
            cur = cur.gamma(i, x)?;
        }
        Ok(cur)
    }

    /// `Some(s)` when the position is `n − 1`, `X_1, …, X_s` are projective roots and the thick
    /// subcategory of the rest is tame connected; the least such `s`.
    pub fn is_tame_type(&self) -> Result<Option<usize>> {
        let n = self.n();
        if self.position != n - 1 {
            return Ok(None);
        }
        let projectives = self.base.quiver().projective_roots();
        let c = self.classes();
        for s in 0..=n - 2 {
            if s > 0 && !projectives.contains(&c[s - 1]) {
                break;
            }
            let tail = ExceptionalSequence::from_classes(self.base.quiver(), c[s..].to_vec())?;
            let sub = Subcategory::new(&tail)?;
            if sub.is_connected() && sub.form_type() == FormType::Tame {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    fn key(&self) -> (Vec<DimVector>, usize) {
        (self.classes().to_vec(), self.position)
    }
}

impl fmt::Display for IsoTypeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {} root ({})", self.base, self.position, self.root_type)
    }
}

/// Best-first search, least root total then shortest word, for a word taking `e` to a sequence
/// of tame type. `budget` counts γ-applications.
pub fn reduce_to_tame_type(e: &IsoTypeSequence, budget: usize) -> Result<(BraidWord, IsoTypeSequence)> {
    let n = e.n();
    let mut moves: Vec<Vec<(usize, i8)>> = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        moves.push(vec![(i, 1)]);
        moves.push(vec![(i, -1)]);
    }
    if n >= 3 {
        moves.push(vec![(n - 2, 1), (n - 2, 1)]);
        moves.push(vec![(n - 2, -1), (n - 2, -1)]);
    }
    let mut store: Vec<(IsoTypeSequence, BraidWord)> = vec![(e.clone(), BraidWord::identity())];
    let mut seen = HashSet::new();
    seen.insert(e.key());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((e.root_type.total(), 0usize, e.classes().to_vec(), e.position, 0usize)));
    let mut spent = 0usize;
    while let Some(Reverse((_, _, _, _, id))) = heap.pop() {
        let (cur, word) = store[id].clone();
        if cur.is_tame_type()?.is_some() {
            if e.apply(&word)? != cur {
                return Err(Error::inconsistent("reduction word does not reproduce its endpoint"));
            }
            return Ok((word, cur));
        }
        for mv in &moves {
            if spent + mv.len() > budget {
                return Err(Error::Exhausted { what: "tame-type reduction budget", limit: budget as u64 });
            }
            spent += mv.len();
            let mut next = cur.clone();
            let mut w = word.clone();
            let mut ok = true;
            for &(i, x) in mv {
                match next.gamma(i, x) {
                    Ok(s) => {
                        next = s;
                        w = w.after(i, x);
                    }
                    Err(err @ Error::Inconsistent(_)) => return Err(err),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && seen.insert(next.key()) {
                heap.push(Reverse((next.root_type.total(), w.len(), next.classes().to_vec(), next.position, store.len())));
                store.push((next, w));
            }
        }
    }
    Err(Error::Exhausted { what: "tame-type reduction orbit", limit: budget as u64 })
}

/// Null roots of the affine full subquivers, embedded.
pub fn seed_roots(calc: &GenericCalculus) -> Result<Vec<DimVector>> {
    let q = calc.quiver();
    let n = q.n();
    if n > 20 {
        return Err(Error::invalid(format!("{n} vertices: too many subquivers to scan")));
    }
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if verts.len() < 2 {
            continue;
        }
        let sub = q.full_subquiver(&verts)?;
        let Some(null) = sub.affine_type().null_root else { continue };
        let mut full = vec![BigInt::zero(); n];
        for (k, &v) in verts.iter().enumerate() {
            full[v] = null.coords()[k].clone();
        }
        out.insert(DimVector::new(full)?);
    }
    Ok(out.into_iter().collect())
}

/// Real Schur `x ≤ top` with `(x, u, v)` exceptional.
fn completions(calc: &GenericCalculus, u: &[u32], v: &[u32], top: u32) -> Vec<Vec<u32>> {
    let n = u.len();
    let unit = |i: usize| {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e
    };
    let wu: Vec<i64> = (0..n).map(|i| calc.pair_small(&unit(i), u)).collect();
    let wv: Vec<i64> = (0..n).map(|i| calc.pair_small(&unit(i), v)).collect();
    kernel_box(&wu, top)
        .into_iter()
        .filter(|x| x.iter().zip(&wv).map(|(&a, &c)| a as i64 * c).sum::<i64>() == 0)
        .filter(|x| calc.pair_small(x, x) == 1 && calc.ext_small(x, x) == 0)
        .filter(|x| calc.ext_small(x, u) == 0 && calc.ext_small(x, v) == 0)
        .collect()
}

/// `τ_C^k δ` for `C = C(x, u, v)`, both directions, while entries stay within `bound`.
fn coxeter_orbit(calc: &GenericCalculus, x: &[u32], u: &[u32], v: &[u32], delta: &DimVector, bound: u32) -> Result<Vec<DimVector>> {
    let q = calc.quiver();
    let seq = ExceptionalSequence::from_classes(q, vec![DimVector::from_small(x), DimVector::from_small(u), DimVector::from_small(v)])?;
    let sub = Subcategory::new(&seq)?;
    let local = sub
        .coordinates(delta)
        .ok_or_else(|| Error::inconsistent(format!("({delta}) is not in its rank-3 subcategory")))?;
    let simples = sub.simples().classes().to_vec();
    let lift = |c: &KClass| -> KClass {
        let mut acc = KClass::zero(q.n());
        for (a, s) in c.coords().iter().zip(&simples) {
            acc = acc.add(&s.class().scale(a));
        }
        acc
    };
    let limit = BigInt::from(bound);
    let mut out = Vec::new();
    let start = KClass::new(local);
    for dir in [1i64, -1] {
        let mut cur = start.clone();
        for _ in 0..(4 * bound as usize * q.n() + 8) {
            cur = sub.quiver().coxeter_apply(&cur, dir)?;
            let Some(d) = lift(&cur).to_dim() else { break };
            if d.is_zero() || d.coords().iter().any(|c| c > &limit) || &d == delta {
                break;
            }
            out.push(d);
        }
    }
    Ok(out)
}

/// All isotropic Schur roots with entries at most `bound`: closure of the affine seeds under
/// relative Coxeter powers in rank-3 subcategories `C(X, U, V)` around tame pairs.
pub fn enumerate_isotropic(calc: &GenericCalculus, bound: u32) -> Result<Vec<DimVector>> {
    if bound == 0 {
        return Err(Error::invalid("bound must be at least 1"));
    }
    let q = calc.quiver();
    let limit = BigInt::from(bound);
    let fits = |d: &DimVector| d.coords().iter().all(|c| c <= &limit);
    let mut found: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for s in seed_roots(calc)? {
        if fits(&s) && found.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    if q.n() < 3 {
        return Ok(found.into_iter().collect());
    }
    while let Some(delta) = queue.pop_front() {
        for (u, v) in tame_pairs_after(calc, &[], &delta, false)? {
            let (us, vs) = (u.small()?, v.small()?);
            for x in completions(calc, &us, &vs, 2 * bound) {
                for d in coxeter_orbit(calc, &x, &us, &vs, &delta, bound)? {
                    if found.insert(d.clone()) {
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    for d in &found {
        if !q.pair(d, d).is_zero() || !calc.is_schur_root(d)? {
            return Err(Error::inconsistent(format!("enumerated ({d}) is not isotropic Schur")));
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitProbe {
    pub start: IsoTypeSequence,
    pub word: Option<BraidWord>,
    pub reached: Option<IsoTypeSequence>,
    pub error: Option<String>,
}

/// Reduces each start to tame type and records where it lands. Experimental.
pub fn probe_orbits(starts: &[IsoTypeSequence], budget: usize) -> Vec<OrbitProbe> {
    starts
        .iter()
        .map(|s| match reduce_to_tame_type(s, budget) {
            Ok((w, f)) => OrbitProbe { start: s.clone(), word: Some(w), reached: Some(f), error: None },
            Err(e) => OrbitProbe { start: s.clone(), word: None, reached: None, error: Some(e.to_string()) },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exceptional::Direction;

    fn v(x: &[i64]) -> DimVector {
        DimVector::of(x)
    }

    fn reducible_start() -> IsoTypeSequence {
        let q = corpus::q4();
        let s = ExceptionalSequence::from_classes(&q, vec![v(&[8, 3, 3, 3]), v(&[0, 0, 1, 0]), v(&[0, 1, 0, 0]), v(&[3, 3, 3, 1])])
            .unwrap();
        IsoTypeSequence::new(s, 3).unwrap()
    }

    #[test]
    fn word_round_trip() {
        let w: BraidWord = "g2^-1 g1^-1 g2 g1^-1".parse().unwrap();
        assert_eq!(w.gens(), &[(2, -1), (1, -1), (2, 1), (1, -1)]);
        assert_eq!(w.to_string(), "g2^-1 g1^-1 g2 g1^-1");
        assert_eq!("σ2^{-1} s1".parse::<BraidWord>().unwrap().gens(), &[(2, -1), (1, 1)]);
        assert!("g0".parse::<BraidWord>().is_err());
        assert!("h1".parse::<BraidWord>().is_err());
        assert_eq!("id".parse::<BraidWord>().unwrap(), BraidWord::identity());
    }

    #[test]
    fn reducible_root_type() {
        let e = reducible_start();
        assert_eq!(e.root_type(), &v(&[3, 2, 3, 1]));
        let calc = GenericCalculus::new(e.base().quiver());
        e.verify(&calc).unwrap();
    }

    #[test]
    fn lower_reflection_changes_root() {
        let e = reducible_start();
        // Move (8,3,3,3) to the end so that X_1 = (0,0,1,0) sits before the pair.
        let mut s = e.base().clone();
        for i in 1..=3 {
            s = s.mutate(i, Direction::Right).unwrap();
        }
        let e2 = IsoTypeSequence::new(s, 2).unwrap();
        assert_eq!(e2.classes()[0], v(&[0, 0, 1, 0]));
        assert_eq!(e2.root_type(), &v(&[3, 2, 3, 1]));
        let g = e2.gamma(1, 1).unwrap();
        assert_eq!(g.position(), 1);
        assert_eq!(g.root_type(), &v(&[3, 2, 1, 1]));
        assert_eq!(g.gamma(1, -1).unwrap(), e2);
    }

    #[test]
    fn gamma_inverse_is_identity() {
        let e = reducible_start();
        let mut frontier = vec![e];
        for _ in 0..3 {
            let mut next = Vec::new();
            for s in &frontier {
                for i in 1..=2 {
                    for x in [1i8, -1] {
                        let t = s.gamma(i, x).unwrap();
                        assert_eq!(&t.gamma(i, -x).unwrap(), s);
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
    }

    #[test]
    fn full_sweep_is_inverse_coxeter() {
        let e = reducible_start();
        let q = e.base().quiver().clone();
        let w: BraidWord = "g1 g2".parse().unwrap();
        let f = e.apply(&w).unwrap();
        assert_eq!(f.position(), 1);
        let expect = q.coxeter_apply(&e.root_type().class(), -1).unwrap().normalize().unwrap();
        assert_eq!(f.root_type(), &expect);
        let back = f.apply(&w.inverse()).unwrap();
        assert_eq!(back, e);
        let up = q.coxeter_apply(&f.root_type().class(), 1).unwrap().normalize().unwrap();
        assert_eq!(back.root_type(), &up);
    }

    #[test]
    fn gamma_and_sigma_words_agree() {
        let g: BraidWord = "g2^-1 g1^-1 g2 g1^-1".parse().unwrap();
        let h: BraidWord = "s2^-1 s1^-1 s3^-1 s2^-1 s3 s2^-1 s1^-1".parse().unwrap();
        let e = reducible_start().apply(&"g2".parse().unwrap()).unwrap();
        assert_eq!(e.position(), 2);
        let ge = e.apply(&g).unwrap();
        let he = apply_sigma_word(e.base(), &h).unwrap();
        assert_eq!(ge.base(), &he);
    }

    #[test]
    fn reducible_start_is_not_tame_type() {
        assert_eq!(reducible_start().is_tame_type().unwrap(), None);
    }

    #[test]
    fn projective_prefix_tame_type() {
        let q = corpus::q4();
        let p2 = q.projective_roots()[2].clone();
        let start = ExceptionalSequence::from_classes(&q, vec![p2.clone(), v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 0, 1])]).unwrap();
        let mut found = None;
        let mut frontier = vec![start];
        'outer: for _ in 0..4 {
            let mut next = Vec::new();
            for s in &frontier {
                if let Ok(t) = IsoTypeSequence::new(s.clone(), 3) {
                    found = Some(t);
                    break 'outer;
                }
                for i in 2..=3 {
                    for d in [Direction::Left, Direction::Right] {
                        next.push(s.mutate(i, d).unwrap());
                    }
                }
            }
            frontier = next;
        }
        let t = found.expect("tame pair inside the cycle");
        assert_eq!(t.root_type(), &v(&[1, 1, 0, 1]));
        assert_eq!(t.is_tame_type().unwrap(), Some(1));
        let (w, f) = reduce_to_tame_type(&t, DEFAULT_BUDGET).unwrap();
        assert!(w.is_empty());
        assert_eq!(f, t);
    }

    #[test]
    fn reducible_start_reduces() {
        let e = reducible_start();
        let (w, f) = reduce_to_tame_type(&e, DEFAULT_BUDGET).unwrap();
        assert!(f.is_tame_type().unwrap().is_some());
        assert_eq!(e.apply(&w).unwrap(), f);
        let q = corpus::q4();
        assert!(q.pair(f.root_type(), f.root_type()).is_zero());
        let supp = f.root_type().support();
        let sub = q.full_subquiver(&supp).unwrap();
        assert_eq!(sub.affine_type().null_root.as_ref(), Some(&DimVector::new(supp.iter().map(|&i| f.root_type().coords()[i].clone()).collect()).unwrap()));
    }

    #[test]
    fn enumeration_matches_scan() {
        for (name, q) in corpus::up_to(4) {
            let calc = GenericCalculus::new(&q);
            for b in 1..=4 {
                assert_eq!(enumerate_isotropic(&calc, b).unwrap(), calc.brute_isotropic(b), "{name} at {b}");
            }
        }
    }

    #[test]
    fn q4_enumeration_contains_known_roots() {
        let calc = GenericCalculus::new(&corpus::q4());
        let all = enumerate_isotropic(&calc, 10).unwrap();
        for r in [[1, 1, 0, 1], [1, 0, 1, 1], [3, 2, 1, 1], [3, 2, 3, 1]] {
            assert!(all.contains(&v(&r)), "{r:?}");
        }
    }
}
