//! Quivers, classes in the Grothendieck group, the Euler form and the Coxeter transformation.

use crate::error::{Error, Result};
use crate::linalg::{primitive_rat, psd_rank, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An element of the Grothendieck group, in vertex coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KClass(Vec<BigInt>);

/// A class with nonnegative coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DimVector(Vec<BigInt>);

impl KClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        KClass(coords)
    }

    pub fn of(coords: &[i64]) -> Self {
        KClass(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        KClass(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn add(&self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &BigInt) -> KClass {
        KClass(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> KClass {
        KClass(self.0.iter().map(|a| -a).collect())
    }

    /// Whichever of `v`, `−v` is nonnegative.
    pub fn normalize(&self) -> Option<DimVector> {
        if self.is_nonnegative() {
            Some(DimVector(self.0.clone()))
        } else if self.0.iter().all(|x| !x.is_positive()) {
            Some(DimVector(self.0.iter().map(|x| -x).collect()))
        } else {
            None
        }
    }

    pub fn to_dim(&self) -> Option<DimVector> {
        self.is_nonnegative().then(|| DimVector(self.0.clone()))
    }
}

impl DimVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.iter().any(Signed::is_negative) {
            return Err(Error::invalid(format!("negative entry in dimension vector {}", KClass(coords))));
        }
        Ok(DimVector(coords))
    }

    /// Panics on a negative entry.
    pub fn of(coords: &[i64]) -> Self {
        assert!(coords.iter().all(|&x| x >= 0), "negative entry in dimension vector");
        DimVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn class(&self) -> KClass {
        KClass(self.0.clone())
    }

    pub fn add(&self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self − o` when nonnegative.
    pub fn checked_sub(&self, o: &DimVector) -> Option<DimVector> {
        self.class().sub(&o.class()).to_dim()
    }

    pub fn scale(&self, c: u64) -> DimVector {
        let c = BigInt::from(c);
        DimVector(self.0.iter().map(|a| a * &c).collect())
    }

    /// Componentwise `self ≤ o`.
    pub fn le(&self, o: &DimVector) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn max_entry(&self) -> BigInt {
        self.0.iter().max().cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|x| !x.is_zero())
    }

    /// Entries as `u32`, for the generic calculus.
    pub fn small(&self) -> Result<Vec<u32>> {
        self.0
            .iter()
            .map(|x| x.to_u32().ok_or_else(|| Error::invalid(format!("entry {x} too large"))))
            .collect()
    }

    pub fn from_small(v: &[u32]) -> Self {
        DimVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn gcd(&self) -> BigInt {
        crate::linalg::gcd_all(&self.0)
    }

    pub fn primitive(&self) -> DimVector {
        DimVector(crate::linalg::primitive(&self.0))
    }
}

impl AsRef<[BigInt]> for KClass {
    fn as_ref(&self) -> &[BigInt] {
        &self.0
    }
}

impl AsRef<[BigInt]> for DimVector {
    fn as_ref(&self) -> &[BigInt] {
        &self.0
    }
}

impl From<DimVector> for KClass {
    fn from(d: DimVector) -> KClass {
        KClass(d.0)
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

fn parse_coords(s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.is_empty() {
        return Err(Error::invalid("empty vector"));
    }
    s.split(',')
        .map(|t| BigInt::from_str(t.trim()).map_err(|_| Error::invalid(format!("bad integer `{}`", t.trim()))))
        .collect()
}

impl FromStr for KClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_coords(s).map(KClass)
    }
}

impl FromStr for DimVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DimVector::new(parse_coords(s)?)
    }
}

fn serialize_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

struct IntsVisitor;

impl<'de> Visitor<'de> for IntsVisitor {
    type Value = Vec<BigInt>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a list of integers")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<BigInt>, A::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Item {
            Int(i64),
            Str(String),
        }
        let mut out = Vec::new();
        while let Some(item) = seq.next_element::<Item>()? {
            out.push(match item {
                Item::Int(i) => BigInt::from(i),
                Item::Str(s) => BigInt::from_str(&s).map_err(de::Error::custom)?,
            });
        }
        Ok(out)
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ints(&self.0, s)
    }
}

impl Serialize for DimVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_ints(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for KClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_seq(IntsVisitor).map(KClass)
    }
}

impl<'de> Deserialize<'de> for DimVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = d.deserialize_seq(IntsVisitor)?;
        DimVector::new(v).map_err(de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RootCandidate {
    Real,
    Isotropic,
    Imaginary,
    /// `⟨d,d⟩ ≥ 2`: never a Schur root.
    NotSchur,
}

impl fmt::Display for RootCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootCandidate::Real => "real-candidate",
            RootCandidate::Isotropic => "isotropic-candidate",
            RootCandidate::Imaginary => "imaginary-candidate",
            RootCandidate::NotSchur => "not-a-schur-root-candidate",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AffineTag {
    /// Cycle with `p ≥ q` arrows in the two directions.
    ATilde(u32, u32),
    DTilde(u32),
    ETilde(u32),
    NotAffine,
}

impl fmt::Display for AffineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineTag::ATilde(p, q) => write!(f, "A-tilde({p},{q})"),
            AffineTag::DTilde(m) => write!(f, "D-tilde({m})"),
            AffineTag::ETilde(m) => write!(f, "E-tilde({m})"),
            AffineTag::NotAffine => f.write_str("not-affine"),
        }
    }
}

impl FromStr for AffineTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("bad affine type `{s}`"));
        if s == "not-affine" {
            return Ok(AffineTag::NotAffine);
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<u32> = rest
            .trim_end_matches(')')
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head, args.as_slice()) {
            ("A-tilde", [p, q]) => Ok(AffineTag::ATilde(*p, *q)),
            ("D-tilde", [m]) => Ok(AffineTag::DTilde(*m)),
            ("E-tilde", [m]) => Ok(AffineTag::ETilde(*m)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineType {
    pub tag: AffineTag,
    pub null_root: Option<DimVector>,
}

impl AffineType {
    pub fn is_affine(&self) -> bool {
        self.tag != AffineTag::NotAffine
    }

    /// Extended Dynkin types of kind D or E.
    pub fn is_de(&self) -> bool {
        matches!(self.tag, AffineTag::DTilde(_) | AffineTag::ETilde(_))
    }
}

struct Inner {
    labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
    euler: IntMatrix,
    euler_inv: IntMatrix,
    euler_small: Vec<i64>,
    coxeter: IntMatrix,
    coxeter_inv: IntMatrix,
}

/// A finite acyclic quiver. Cheap to clone.
#[derive(Clone)]
pub struct Quiver(Arc<Inner>);

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quiver").field("labels", &self.0.labels).field("arrows", &self.0.arrows).finish()
    }
}

impl PartialEq for Quiver {
    fn eq(&self, o: &Self) -> bool {
        self.0.labels == o.0.labels && self.0.arrows == o.0.arrows
    }
}

impl Eq for Quiver {}

/// On-disk quiver format.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QuiverFile {
    pub vertices: Vec<Label>,
    pub arrows: Vec<(Label, Label)>,
}

/// Vertex label; numbers are accepted and read as strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
pub enum Label {
    Num(u64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Num(n) => write!(f, "{n}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

impl Quiver {
    /// Arrows are `(tail, head)` pairs of 0-based vertex indices.
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("a quiver needs at least one vertex"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::invalid(format!("duplicate vertex label `{l}`")));
            }
        }
        if let Some(&(t, h)) = arrows.iter().find(|&&(t, h)| t >= n || h >= n) {
            return Err(Error::invalid(format!("arrow ({t},{h}) out of range")));
        }
        if topological_order(n, &arrows).is_none() {
            return Err(Error::invalid("quiver has an oriented cycle"));
        }
        let mut euler = IntMatrix::identity(n);
        for &(t, h) in &arrows {
            let v = euler.get(t, h) - 1;
            euler.set(t, h, v);
        }
        let euler_inv = euler.integer_inverse().ok_or_else(|| Error::inconsistent("Euler matrix not unimodular"))?;
        let coxeter = euler_inv.mul(&euler.transpose()).neg();
        let coxeter_inv = euler_inv.transpose().mul(&euler).neg();
        let euler_small = euler.to_i64_rows().unwrap().into_iter().flatten().collect();
        Ok(Quiver(Arc::new(Inner { labels, arrows, euler, euler_inv, euler_small, coxeter, coxeter_inv })))
    }

    /// Vertices labelled `1..=n`; arrows given 0-based.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), arrows.to_vec())
    }

    pub fn from_file(file: &QuiverFile) -> Result<Self> {
        let labels: Vec<String> = file.vertices.iter().map(|l| l.to_string()).collect();
        let idx = |l: &Label| {
            let s = l.to_string();
            labels.iter().position(|x| *x == s).ok_or_else(|| Error::invalid(format!("unknown vertex `{s}`")))
        };
        let arrows = file.arrows.iter().map(|(t, h)| Ok((idx(t)?, idx(h)?))).collect::<Result<Vec<_>>>()?;
        Self::new(labels, arrows)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("quiver file: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> QuiverFile {
        let l = &self.0.labels;
        QuiverFile {
            vertices: l.iter().map(|s| Label::Str(s.clone())).collect(),
            arrows: self.0.arrows.iter().map(|&(t, h)| (Label::Str(l[t].clone()), Label::Str(l[h].clone()))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.0.arrows
    }

    pub fn arrow_count(&self, t: usize, h: usize) -> usize {
        self.0.arrows.iter().filter(|&&a| a == (t, h)).count()
    }

    pub fn euler_matrix(&self) -> &IntMatrix {
        &self.0.euler
    }

    /// Row-major `i64` copy of the Euler matrix.
    pub fn euler_small(&self) -> &[i64] {
        &self.0.euler_small
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: v.len() });
        }
        Ok(())
    }

    /// `⟨a,b⟩ = aᵀEb`.
    pub fn euler_pairing(&self, a: impl AsRef<[BigInt]>, b: impl AsRef<[BigInt]>) -> Result<BigInt> {
        let (a, b) = (a.as_ref(), b.as_ref());
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.pair(a, b))
    }

    /// Unchecked pairing; panics on length mismatch.
    pub fn pair(&self, a: impl AsRef<[BigInt]>, b: impl AsRef<[BigInt]>) -> BigInt {
        self.0.euler.bilinear(a.as_ref(), b.as_ref())
    }

    /// `Φ = −E⁻¹Eᵀ`.
    pub fn coxeter_matrix(&self) -> &IntMatrix {
        &self.0.coxeter
    }

    /// `Φ⁻¹ = −E⁻ᵀE`.
    pub fn coxeter_inverse(&self) -> &IntMatrix {
        &self.0.coxeter_inv
    }

    pub fn coxeter_apply(&self, x: &KClass, k: i64) -> Result<KClass> {
        self.check_len(x.coords())?;
        let m = if k >= 0 { &self.0.coxeter } else { &self.0.coxeter_inv };
        let mut v = x.coords().to_vec();
        for _ in 0..k.unsigned_abs() {
            v = m.mul_vec(&v);
        }
        Ok(KClass(v))
    }

    /// Classes of the indecomposable projectives `E⁻ᵀe_x`.
    pub fn projective_roots(&self) -> Vec<DimVector> {
        let t = self.0.euler_inv.transpose();
        (0..self.n()).map(|x| DimVector(t.column(x))).collect()
    }

    /// Classes of the indecomposable injectives `E⁻¹e_x`.
    pub fn injective_roots(&self) -> Vec<DimVector> {
        (0..self.n()).map(|x| DimVector(self.0.euler_inv.column(x))).collect()
    }

    pub fn classify_self_pairing(&self, d: &DimVector) -> Result<RootCandidate> {
        self.check_len(d.coords())?;
        if d.is_zero() {
            return Err(Error::invalid("zero vector"));
        }
        let q = self.pair(d, d);
        Ok(if q.is_one() {
            RootCandidate::Real
        } else if q.is_zero() {
            RootCandidate::Isotropic
        } else if q.is_negative() {
            RootCandidate::Imaginary
        } else {
            RootCandidate::NotSchur
        })
    }

    /// Induced subquiver on the listed vertices, in the listed order.
    pub fn full_subquiver(&self, verts: &[usize]) -> Result<Quiver> {
        if verts.is_empty() {
            return Err(Error::invalid("empty vertex subset"));
        }
        if verts.iter().any(|&v| v >= self.n()) {
            return Err(Error::invalid("vertex out of range"));
        }
        let pos = |v: usize| verts.iter().position(|&x| x == v);
        let arrows = self.0.arrows.iter().filter_map(|&(t, h)| Some((pos(t)?, pos(h)?))).collect();
        Quiver::new(verts.iter().map(|&v| self.0.labels[v].clone()).collect(), arrows)
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for &(t, h) in &self.0.arrows {
            adj[t].push(h);
            adj[h].push(t);
        }
        adj
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Symmetrized Tits form `E + Eᵀ`.
    pub fn tits_matrix(&self) -> IntMatrix {
        let e = &self.0.euler;
        let t = e.transpose();
        let mut s = e.clone();
        for i in 0..self.n() {
            for j in 0..self.n() {
                s.set(i, j, e.get(i, j) + t.get(i, j));
            }
        }
        s
    }

    pub fn affine_type(&self) -> AffineType {
        let not = AffineType { tag: AffineTag::NotAffine, null_root: None };
        if !self.is_connected() {
            return not;
        }
        let s = self.tits_matrix().to_rat();
        if psd_rank(&s) != Some(self.n() - 1) {
            return not;
        }
        let kernel = s.kernel();
        let mut root = primitive_rat(&kernel[0]);
        if root.iter().any(Signed::is_negative) {
            root = root.into_iter().map(|x| -x).collect();
        }
        if root.iter().any(|x| !x.is_positive()) {
            return not;
        }
        let Some(tag) = self.shape() else { return not };
        AffineType { tag, null_root: Some(DimVector(root)) }
    }

    fn shape(&self) -> Option<AffineTag> {
        let n = self.n();
        let adj = self.neighbours();
        let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        if self.0.arrows.len() == n {
            if deg.iter().any(|&d| d != 2) {
                return None;
            }
            return Some(self.cycle_orientation());
        }
        if self.0.arrows.len() + 1 != n {
            return None;
        }
        let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
        match branch.as_slice() {
            [c] if deg[*c] == 4 => Some(AffineTag::DTilde(4)),
            [_, _] => Some(AffineTag::DTilde(n as u32 - 1)),
            [c] if deg[*c] == 3 => {
                let mut arms: Vec<usize> = adj[*c]
                    .iter()
                    .map(|&start| {
                        let (mut prev, mut cur, mut len) = (*c, start, 1);
                        while deg[cur] == 2 {
                            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                            prev = cur;
                            cur = next;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [2, 2, 2] => Some(AffineTag::ETilde(6)),
                    [1, 3, 3] => Some(AffineTag::ETilde(7)),
                    [1, 2, 5] => Some(AffineTag::ETilde(8)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    fn cycle_orientation(&self) -> AffineTag {
        let n = self.n();
        let mut used = vec![false; self.0.arrows.len()];
        let (mut fwd, mut cur) = (0u32, 0usize);
        for _ in 0..n {
            let (k, &(t, h)) = self
                .0
                .arrows
                .iter()
                .enumerate()
                .find(|&(k, &(t, h))| !used[k] && (t == cur || h == cur))
                .expect("cycle walk");
            used[k] = true;
            if t == cur {
                fwd += 1;
                cur = h;
            } else {
                cur = t;
            }
        }
        let back = n as u32 - fwd;
        AffineTag::ATilde(fwd.max(back), fwd.min(back))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n");
        for l in &self.0.labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        for &(t, h) in &self.0.arrows {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", self.0.labels[t], self.0.labels[h]));
        }
        s.push_str("}\n");
        s
    }

    /// Arrow multiplicities as a map, for display.
    pub fn arrow_multiset(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &a in &self.0.arrows {
            *m.entry(a).or_insert(0) += 1;
        }
        m
    }
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, h) in arrows {
        indeg[h] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(t, h) in arrows {
            if t == v {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.push(h);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}
