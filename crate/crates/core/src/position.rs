//! Preprojective / regular / preinjective position of an object inside a thick subcategory.

use crate::error::{Error, Result};
use crate::exceptional::ExceptionalSequence;
use crate::linalg::{coordinates, psd_rank, IntMatrix, Rat};
use crate::poly::{Poly, RealRoot};
use crate::quiver::{DimVector, Quiver};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PositionTag {
    Preprojective,
    Regular,
    Preinjective,
    SimpleDisconnected,
}

impl fmt::Display for PositionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PositionTag::Preprojective => "preprojective",
            PositionTag::Regular => "regular",
            PositionTag::Preinjective => "preinjective",
            PositionTag::SimpleDisconnected => "simple-disconnected",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `Φ^steps` (forward) or `Φ^{−steps}` leaves the nonnegative orthant.
    Iteration { steps: u64, forward: bool },
    /// Defect `⟨δ_C, x⟩` in a tame component.
    Defect { value: String },
    /// Signs of `⟨y⁻, x⟩` and `⟨x, y⁺⟩` for the Perron eigenvectors; `rho` encloses the spectral radius.
    Spectral { rho_low: String, rho_high: String, backward_sign: i8, forward_sign: i8 },
    Isolated,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PositionType {
    pub tag: PositionTag,
    pub witness: Witness,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    Finite,
    Tame,
    Wild,
}

/// A thick subcategory through its relative simples.
#[derive(Clone, Debug)]
pub struct Subcategory {
    simples: ExceptionalSequence,
    local: Quiver,
    components: Vec<Vec<usize>>,
}

fn form_type(q: &Quiver) -> FormType {
    match psd_rank(&q.tits_matrix().to_rat()) {
        Some(r) if r == q.n() => FormType::Finite,
        Some(r) if r + 1 == q.n() && q.is_connected() => FormType::Tame,
        Some(_) => FormType::Tame,
        None => FormType::Wild,
    }
}

impl Subcategory {
    pub fn new(e: &ExceptionalSequence) -> Result<Self> {
        let simples = e.reduce_to_simples(None)?;
        Self::from_simples(simples)
    }

    pub fn from_simples(simples: ExceptionalSequence) -> Result<Self> {
        if !simples.is_simple_system() {
            return Err(Error::invalid("not a system of relative simples"));
        }
        let local = simples.quiver_of_simples()?;
        let components = local.components();
        Ok(Subcategory { simples, local, components })
    }

    /// The whole module category of `q`.
    pub fn full(q: &Quiver) -> Self {
        let simples = topological_simples(q).into_iter().map(|i| DimVector::unit(q.n(), i)).collect();
        let simples = ExceptionalSequence::from_classes(q, simples).expect("vertex simples in sink-first order");
        Self::from_simples(simples).expect("vertex simples form a simple system")
    }

    pub fn simples(&self) -> &ExceptionalSequence {
        &self.simples
    }

    /// The quiver of the subcategory, vertices in the order of `simples()`.
    pub fn quiver(&self) -> &Quiver {
        &self.local
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn form_type(&self) -> FormType {
        form_type(&self.local)
    }

    /// Coordinates of `x` in the simples, if `x` lies in their lattice span with integral coefficients.
    pub fn coordinates(&self, x: &DimVector) -> Option<Vec<BigInt>> {
        let vecs: Vec<Vec<BigInt>> = self.simples.classes().iter().map(|c| c.coords().to_vec()).collect();
        let c = coordinates(&vecs, x.coords())?;
        c.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect()
    }

    pub fn contains(&self, x: &DimVector) -> bool {
        self.coordinates(x).is_some_and(|c| c.iter().all(|v| !v.is_negative()))
    }

    /// Position of an indecomposable object with class `x`.
    pub fn position(&self, x: &DimVector) -> Result<PositionType> {
        let c = self.coordinates(x).ok_or_else(|| Error::invalid(format!("({x}) is not in the subcategory")))?;
        if c.iter().any(Signed::is_negative) || c.iter().all(Zero::is_zero) {
            return Err(Error::invalid(format!("({x}) is not an object of the subcategory")));
        }
        let support: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
        let comp = self
            .components
            .iter()
            .find(|comp| support.iter().all(|i| comp.contains(i)))
            .ok_or_else(|| Error::invalid(format!("({x}) is spread over several components")))?;
        if comp.len() == 1 && self.components.len() > 1 {
            return Ok(PositionType { tag: PositionTag::SimpleDisconnected, witness: Witness::Isolated });
        }
        let sub = self.local.full_subquiver(comp)?;
        let local: Vec<BigInt> = comp.iter().map(|&i| c[i].clone()).collect();
        position_in_quiver(&sub, &local)
    }
}

fn topological_simples(q: &Quiver) -> Vec<usize> {
    let n = q.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .find(|&v| !placed[v] && q.arrows().iter().all(|&(t, h)| h != v || placed[t] || t == v))
            .expect("acyclic");
        placed[v] = true;
        order.push(v);
    }
    order.reverse();
    order
}

fn leaves_orthant(v: &[BigInt]) -> bool {
    v.iter().any(Signed::is_negative)
}

/// Position of the indecomposable with coordinates `x` in `rep(q)`, `q` connected.
pub fn position_in_quiver(q: &Quiver, x: &[BigInt]) -> Result<PositionType> {
    let r = q.n();
    let ft = form_type(q);
    if ft == FormType::Tame {
        let t = q.affine_type();
        let null = t.null_root.ok_or_else(|| Error::inconsistent("tame component without null root"))?;
        let d = q.pair(null.coords(), x);
        let tag = match d.sign() {
            num_bigint::Sign::Minus => PositionTag::Preprojective,
            num_bigint::Sign::Plus => PositionTag::Preinjective,
            num_bigint::Sign::NoSign => PositionTag::Regular,
        };
        if tag != PositionTag::Regular {
            if let Some(w) = iterate(q, x, 64 * r as u64 * 4) {
                return Ok(PositionType { tag, witness: w });
            }
        }
        return Ok(PositionType { tag, witness: Witness::Defect { value: d.to_string() } });
    }
    let mut limit = 64 * r as u64;
    for _ in 0..3 {
        if let Some(w) = iterate(q, x, limit) {
            let tag = match w {
                Witness::Iteration { forward: true, .. } => PositionTag::Preprojective,
                _ => PositionTag::Preinjective,
            };
            return Ok(PositionType { tag, witness: w });
        }
        limit *= 2;
    }
    if ft == FormType::Finite {
        return Err(Error::inconsistent("Coxeter iteration did not terminate in finite type"));
    }
    spectral(q, x)
}

fn iterate(q: &Quiver, x: &[BigInt], limit: u64) -> Option<Witness> {
    let (f, b) = (q.coxeter_matrix(), q.coxeter_inverse());
    let (mut u, mut v) = (x.to_vec(), x.to_vec());
    for k in 1..=limit {
        u = f.mul_vec(&u);
        if leaves_orthant(&u) {
            return Some(Witness::Iteration { steps: k, forward: true });
        }
        v = b.mul_vec(&v);
        if leaves_orthant(&v) {
            return Some(Witness::Iteration { steps: k, forward: false });
        }
    }
    None
}

const REFINE_STEPS: usize = 400;

/// Eigenvector for the largest real eigenvalue `ρ` of `m`, as polynomials in `ρ` reduced modulo the
/// characteristic polynomial, sign-normalized to be positive.
fn perron(m: &IntMatrix) -> Result<(RealRoot, Vec<Poly>)> {
    let p = Poly::charpoly(&m.to_rat());
    let root = RealRoot::largest(&p).ok_or_else(|| Error::Uncertified("no real eigenvalue".into()))?;
    if !root.is_simple() || root.exceeds(&Rat::one(), REFINE_STEPS) != Some(true) {
        return Err(Error::Uncertified("spectral radius is not a simple eigenvalue above 1".into()));
    }
    let n = m.rows();
    let c = p.coeffs();
    // q(t) = p(t)/(t − ρ) = Σ_j b_j(ρ) t^j with b_j(ρ) = Σ_{i>j} c_i ρ^{i−j−1}.
    let b: Vec<Poly> = (0..n)
        .map(|j| Poly::new((j + 1..=n).map(|i| c[i].clone()).collect()))
        .collect();
    let starts: Vec<Vec<BigInt>> = std::iter::once(vec![BigInt::one(); n])
        .chain((0..n).map(|i| (0..n).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()))
        .collect();
    for e in starts {
        let mut powers = vec![e];
        for j in 1..n {
            let next = m.mul_vec(&powers[j - 1]);
            powers.push(next);
        }
        let y: Vec<Poly> = (0..n)
            .map(|k| {
                let mut acc = Poly::zero();
                for (j, bj) in b.iter().enumerate() {
                    acc = acc.add(&bj.scale(&Rat::from_integer(powers[j][k].clone())));
                }
                acc.rem(&p)
            })
            .collect();
        let signs: Option<Vec<i8>> = y.iter().map(|f| root.sign_of(f, REFINE_STEPS)).collect();
        let signs = signs.ok_or_else(|| Error::Uncertified("eigenvector sign not resolved".into()))?;
        if signs.iter().all(|&s| s == 0) {
            continue;
        }
        let s = signs[0];
        if s == 0 || signs.iter().any(|&t| t != s) {
            return Err(Error::Uncertified("eigenvector for the spectral radius is not positive".into()));
        }
        let y = if s < 0 { y.into_iter().map(|f| f.scale(&-Rat::one())).collect() } else { y };
        return Ok((root, y));
    }
    Err(Error::Uncertified("could not produce an eigenvector".into()))
}

fn spectral(q: &Quiver, x: &[BigInt]) -> Result<PositionType> {
    let e = q.euler_matrix();
    let r = q.n();
    let (root_f, yp) = perron(q.coxeter_matrix())?;
    let (_, ym) = perron(q.coxeter_inverse())?;
    let pair_poly = |left: &dyn Fn(usize) -> Poly, right: &dyn Fn(usize) -> Poly| {
        let mut acc = Poly::zero();
        for i in 0..r {
            for j in 0..r {
                let g = e.get(i, j);
                if !g.is_zero() {
                    acc = acc.add(&left(i).mul(&right(j)).scale(&Rat::from_integer(g.clone())));
                }
            }
        }
        acc
    };
    let xc = |i: usize| Poly::constant(Rat::from_integer(x[i].clone()));
    let fwd = pair_poly(&xc, &|j| yp[j].clone());
    let bwd = pair_poly(&|i| ym[i].clone(), &xc);
    let unresolved = || Error::Uncertified("pairing sign not resolved".into());
    let fs = root_f.sign_of(&fwd, REFINE_STEPS).ok_or_else(unresolved)?;
    let bs = root_f.sign_of(&bwd, REFINE_STEPS).ok_or_else(unresolved)?;
    let tag = match (bs, fs) {
        (1, 1) => PositionTag::Regular,
        (-1, _) => PositionTag::Preprojective,
        (_, -1) => PositionTag::Preinjective,
        _ => return Err(Error::Uncertified("vanishing spectral pairing".into())),
    };
    Ok(PositionType {
        tag,
        witness: Witness::Spectral {
            rho_low: root_f.lo.to_string(),
            rho_high: root_f.hi.to_string(),
            backward_sign: bs,
            forward_sign: fs,
        },
    })
}

impl ExceptionalSequence {
    /// Position of the member at 0-based `index` inside the thick subcategory of the sequence.
    pub fn position_type(&self, index: usize) -> Result<PositionType> {
        let x = self.classes().get(index).ok_or_else(|| Error::invalid("member index out of range"))?.clone();
        Subcategory::new(self)?.position(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(x: &[i64]) -> DimVector {
        DimVector::of(x)
    }

    #[test]
    fn q4_regular_members() {
        let q = corpus::q4();
        let full = Subcategory::full(&q);
        for x in [v(&[8, 3, 3, 3]), v(&[0, 0, 1, 0])] {
            let p = full.position(&x).unwrap();
            assert_eq!(p.tag, PositionTag::Regular, "{x}: {p:?}");
            assert!(matches!(p.witness, Witness::Spectral { backward_sign: 1, forward_sign: 1, .. }));
        }
        assert_eq!(full.position(&v(&[1, 1, 0, 0])).unwrap().tag, PositionTag::Preprojective);
        assert_eq!(full.position(&v(&[0, 0, 1, 1])).unwrap().tag, PositionTag::Preinjective);
    }

    #[test]
    fn projective_exits_in_one_step() {
        let q = corpus::wild3();
        let full = Subcategory::full(&q);
        for p in q.projective_roots() {
            let t = full.position(&p).unwrap();
            assert_eq!(t.tag, PositionTag::Preprojective);
            assert_eq!(t.witness, Witness::Iteration { steps: 1, forward: true });
        }
        for i in q.injective_roots() {
            assert_eq!(full.position(&i).unwrap().tag, PositionTag::Preinjective);
        }
    }

    #[test]
    fn kronecker_positions() {
        let k = corpus::kronecker();
        let full = Subcategory::full(&k);
        assert_eq!(full.form_type(), FormType::Tame);
        assert_eq!(full.position(&v(&[0, 1])).unwrap().tag, PositionTag::Preprojective);
        assert_eq!(full.position(&v(&[1, 0])).unwrap().tag, PositionTag::Preinjective);
        assert_eq!(full.position(&v(&[1, 1])).unwrap().tag, PositionTag::Regular);
        assert_eq!(full.position(&v(&[2, 3])).unwrap().tag, PositionTag::Preprojective);
        assert_eq!(full.position(&v(&[3, 2])).unwrap().tag, PositionTag::Preinjective);
    }

    #[test]
    fn isolated_simple() {
        let q = corpus::q4();
        let s = ExceptionalSequence::from_classes(&q, vec![v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]).unwrap();
        let sub = Subcategory::new(&s).unwrap();
        assert!(!sub.is_connected());
        assert_eq!(sub.position(&v(&[0, 1, 0, 0])).unwrap().tag, PositionTag::SimpleDisconnected);
    }
}
