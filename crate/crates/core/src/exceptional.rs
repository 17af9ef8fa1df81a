//! Exceptional sequences at the level of classes: validation, mutation, relative simples.

use crate::error::{Error, Result};
use crate::generic::GenericCalculus;
use crate::linalg::{rank_of, IntMatrix};
use crate::quiver::{DimVector, KClass, Quiver};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(Error::invalid(format!("direction must be left or right, got `{s}`"))),
        }
    }
}

/// Ordered classes with `⟨c_i, c_j⟩ = 0` for `i < j` and `⟨c_i, c_i⟩ = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExceptionalSequence {
    quiver: Quiver,
    classes: Vec<DimVector>,
    gram: IntMatrix,
}

fn gram_of(q: &Quiver, classes: &[DimVector]) -> IntMatrix {
    let r = classes.len();
    let mut g = IntMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            g.set(i, j, q.pair(&classes[i], &classes[j]));
        }
    }
    g
}

impl ExceptionalSequence {
    /// Checks only what the classes determine: Euler form shape and independence.
    pub fn from_classes(q: &Quiver, classes: Vec<DimVector>) -> Result<Self> {
        if let Some(c) = classes.iter().find(|c| c.len() != q.n()) {
            return Err(Error::DimensionMismatch { expected: q.n(), got: c.len() });
        }
        let gram = gram_of(q, &classes);
        let r = classes.len();
        for i in 0..r {
            if !gram.get(i, i).is_one() {
                return Err(Error::invalid(format!("class {} ({}) is not a real root", i + 1, classes[i])));
            }
            for j in i + 1..r {
                if !gram.get(i, j).is_zero() {
                    return Err(Error::invalid(format!(
                        "classes {} and {}: ⟨({}),({})⟩ = {} ≠ 0",
                        i + 1,
                        j + 1,
                        classes[i],
                        classes[j],
                        gram.get(i, j)
                    )));
                }
            }
        }
        let vecs: Vec<Vec<BigInt>> = classes.iter().map(|c| c.coords().to_vec()).collect();
        if rank_of(&vecs) < r {
            return Err(Error::invalid("classes are linearly dependent"));
        }
        let s = ExceptionalSequence { quiver: q.clone(), classes, gram };
        if r == q.n() && !s.class_matrix().determinant().abs().is_one() {
            return Err(Error::invalid("full sequence does not span the lattice"));
        }
        Ok(s)
    }

    /// Full check against generic hom and ext.
    pub fn validate(calc: &GenericCalculus, classes: Vec<DimVector>) -> Result<Self> {
        let q = calc.quiver();
        for (i, c) in classes.iter().enumerate() {
            if c.len() != q.n() {
                return Err(Error::DimensionMismatch { expected: q.n(), got: c.len() });
            }
            if c.is_zero() || !calc.is_real_schur(c)? {
                return Err(Error::invalid(format!("class {} ({c}) is not a real Schur root", i + 1)));
            }
        }
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let (h, e) = calc.hom_ext(&classes[i], &classes[j])?;
                if (h, e) != (0, 0) {
                    return Err(Error::invalid(format!(
                        "classes {} and {}: hom = {h}, ext = {e} from ({}) to ({})",
                        i + 1,
                        j + 1,
                        classes[i],
                        classes[j]
                    )));
                }
            }
        }
        let s = Self::from_classes(q, classes)?;
        Ok(s)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn classes(&self) -> &[DimVector] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.quiver.n()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Classes as columns.
    pub fn class_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.classes.iter().map(|c| c.coords().to_vec()).collect();
        IntMatrix::from_columns(&cols)
    }

    pub fn total_dimension(&self) -> BigInt {
        self.classes.iter().map(DimVector::total).sum()
    }

    /// σ_i (left) or σ_i⁻¹ (right) at 1-based position `i`.
    pub fn mutate(&self, i: usize, dir: Direction) -> Result<Self> {
        if i == 0 || i >= self.len() {
            return Err(Error::invalid(format!("mutation index {i} out of range 1..{}", self.len().saturating_sub(1))));
        }
        let (a, b) = (&self.classes[i - 1], &self.classes[i]);
        let chi = self.quiver.pair(b, a);
        let (x, y) = match dir {
            Direction::Left => {
                let m = b.class().sub(&a.class().scale(&chi)).normalize();
                (m, Some(a.clone()))
            }
            Direction::Right => {
                let m = a.class().sub(&b.class().scale(&chi)).normalize();
                (Some(b.clone()), m)
            }
        };
        let (Some(x), Some(y)) = (x, y) else {
            return Err(Error::invalid(format!("mutation at {i} leaves the positive cone: not an exceptional sequence")));
        };
        let mut classes = self.classes.clone();
        classes[i - 1] = x;
        classes[i] = y;
        Self::from_classes(&self.quiver, classes)
    }

    /// `σ_i^{±1}`.
    pub fn sigma(&self, i: usize, exponent: i8) -> Result<Self> {
        self.mutate(i, if exponent > 0 { Direction::Left } else { Direction::Right })
    }

    /// Lower Gram entries nonpositive: the classes are the relative simples.
    pub fn is_simple_system(&self) -> bool {
        let r = self.len();
        (0..r).all(|i| (0..i).all(|j| !self.gram.get(i, j).is_positive()))
    }

    /// Best-first search over mutations for the relative simples, expanding at most `budget` states.
    pub fn reduce_to_simples(&self, budget: Option<usize>) -> Result<Self> {
        let r = self.len();
        let budget = budget.unwrap_or(10 * r * r).max(1);
        if self.is_simple_system() {
            return Ok(self.clone());
        }
        let key = |s: &ExceptionalSequence| s.classes.clone();
        let mut seen: HashSet<Vec<DimVector>> = HashSet::new();
        let mut heap = BinaryHeap::new();
        let mut store = Vec::new();
        seen.insert(key(self));
        heap.push(Reverse((self.total_dimension(), self.classes.clone(), 0usize)));
        store.push(self.clone());
        let mut expanded = 0;
        while let Some(Reverse((_, _, id))) = heap.pop() {
            let cur = store[id].clone();
            if cur.is_simple_system() {
                return Ok(cur);
            }
            expanded += 1;
            if expanded > budget {
                break;
            }
            for i in 1..r {
                for dir in [Direction::Left, Direction::Right] {
                    let Ok(next) = cur.mutate(i, dir) else { continue };
                    if seen.insert(key(&next)) {
                        heap.push(Reverse((next.total_dimension(), next.classes.clone(), store.len())));
                        store.push(next);
                    }
                }
            }
        }
        Err(Error::Exhausted { what: "reduction to simples budget", limit: budget as u64 })
    }

    /// The quiver `Q_E` of the thick subcategory: `−⟨s_j, s_i⟩` arrows `j → i` for `j > i`.
    pub fn subcategory_quiver(&self) -> Result<Quiver> {
        let s = self.reduce_to_simples(None)?;
        s.quiver_of_simples()
    }

    pub(crate) fn quiver_of_simples(&self) -> Result<Quiver> {
        let r = self.len();
        let mut arrows = Vec::new();
        for j in 0..r {
            for i in 0..j {
                let c = (-self.gram.get(j, i)).to_usize().unwrap_or(0);
                arrows.extend(std::iter::repeat_n((j, i), c));
            }
        }
        Quiver::from_arrows(r, &arrows)
    }

    /// `−G⁻¹Gᵀ` for the Gram matrix of the relative simples.
    pub fn relative_coxeter(&self) -> Result<IntMatrix> {
        let s = self.reduce_to_simples(None)?;
        Ok(s.quiver_of_simples()?.coxeter_matrix().clone())
    }

    /// Replace the classes of a sequence read from elsewhere.
    pub fn with_classes(&self, classes: Vec<DimVector>) -> Result<Self> {
        Self::from_classes(&self.quiver, classes)
    }
}

impl fmt::Display for ExceptionalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.classes.iter().map(|c| format!("({c})")).collect();
        write!(f, "({})", items.join(","))
    }
}

/// For an exceptional pair `(a, b)`: the isotropic root when `|⟨b,a⟩| = 2`.
pub fn rank2_tame_info(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<Option<DimVector>> {
    let s = ExceptionalSequence::from_classes(q, vec![a.clone(), b.clone()])?;
    let c = s.gram.get(1, 0).clone();
    let two = BigInt::from(2);
    let delta = if c == -two.clone() {
        a.add(b)
    } else if c == two {
        a.class().sub(&b.class()).normalize().ok_or_else(|| Error::invalid("a − b has mixed signs"))?
    } else {
        return Ok(None);
    };
    if !q.pair(&delta, &delta).is_zero() {
        return Err(Error::inconsistent("rank-2 root is not isotropic"));
    }
    Ok(Some(delta))
}

/// `L_U(δ) = δ − ⟨δ, u⟩u`.
pub fn isotropic_reflection(q: &Quiver, delta: &DimVector, u: &DimVector) -> Result<DimVector> {
    q.euler_pairing(delta, u)?;
    if !q.pair(delta, delta).is_zero() {
        return Err(Error::invalid(format!("({delta}) is not isotropic")));
    }
    if !q.pair(u, u).is_one() {
        return Err(Error::invalid(format!("({u}) is not a real root")));
    }
    let c = q.pair(delta, u);
    let out = delta.class().sub(&u.class().scale(&c));
    let out = out.to_dim().ok_or_else(|| Error::invalid(format!("reflection of ({delta}) leaves the positive cone")))?;
    if !q.pair(&out, &out).is_zero() || !q.pair(&out, u).is_zero() {
        return Err(Error::inconsistent("reflection lost isotropy"));
    }
    Ok(out)
}

/// Coordinates of `x` against the classes of `s`, when integral.
pub fn coordinates_in(s: &ExceptionalSequence, x: &KClass) -> Option<Vec<BigInt>> {
    let vecs: Vec<Vec<BigInt>> = s.classes().iter().map(|c| c.coords().to_vec()).collect();
    let c = crate::linalg::coordinates(&vecs, x.coords())?;
    c.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect()
}
