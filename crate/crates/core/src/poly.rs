//! Univariate rational polynomials with Sturm root isolation and interval evaluation.

use crate::linalg::{Rat, RatMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(Vec<Rat>);

fn sign(x: &Rat) -> i8 {
    match x.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Rat::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let lead = d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Enclosure of the range over `[lo, hi]` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let mut acc = (Rat::zero(), Rat::zero());
        for c in self.0.iter().rev() {
            let p = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = p.iter().min().unwrap().clone();
            let mx = p.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }

    /// Characteristic polynomial det(tI − A) by Faddeev–LeVerrier.
    pub fn charpoly(a: &RatMatrix) -> Poly {
        let n = a.rows();
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        let mut m = RatMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = a.mul(&m);
            for i in 0..n {
                let v = next.get(i, i) + &c[n + 1 - k];
                next.set(i, i, v);
            }
            m = next;
            let am = a.mul(&m);
            let tr = (0..n).fold(Rat::zero(), |s, i| s + am.get(i, i));
            c[n - k] = -tr / Rat::from_integer(BigInt::from(k));
        }
        Poly::new(c)
    }
}

pub struct Sturm(Vec<Poly>);

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            seq.push(r.scale(&-Rat::one()));
        }
        seq.pop();
        Sturm(seq)
    }

    fn variations(&self, x: &Rat) -> usize {
        let signs: Vec<i8> = self.0.iter().map(|p| sign(&p.eval(x))).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Bound strictly exceeding the absolute value of every root.
pub fn root_bound(p: &Poly) -> Rat {
    let lead = p.lead().abs();
    let m = p.0.iter().rev().skip(1).map(|c| c.abs() / &lead).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}

/// A real algebraic number given by a squarefree-at-the-root polynomial and an isolating interval.
#[derive(Clone, Debug)]
pub struct RealRoot {
    pub poly: Poly,
    pub lo: Rat,
    pub hi: Rat,
}

impl RealRoot {
    /// The largest real root of `p`, if any, with an interval `(lo, hi]` isolating it.
    pub fn largest(p: &Poly) -> Option<RealRoot> {
        let sturm = Sturm::new(p);
        let b = root_bound(p);
        let mut lo = -b.clone();
        let mut hi = b;
        if sturm.count(&lo, &hi) == 0 {
            return None;
        }
        while sturm.count(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
            if sturm.count(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(RealRoot { poly: p.clone(), lo, hi })
    }

    /// True if the root is a simple root of its polynomial.
    pub fn is_simple(&self) -> bool {
        let g = self.poly.gcd(&self.poly.derivative());
        g.degree() == Some(0) || Sturm::new(&g).count(&self.lo, &self.hi) == 0
    }

    fn bisect(&mut self, sturm: &Sturm) {
        let mid = (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2));
        if sturm.count(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Sign of `f` at the root, certified; `None` if `max_steps` bisections do not separate it from zero.
    pub fn sign_of(&self, f: &Poly, max_steps: usize) -> Option<i8> {
        if f.is_zero() {
            return Some(0);
        }
        let g = f.gcd(&self.poly);
        if g.degree().unwrap_or(0) > 0 && Sturm::new(&g).count(&self.lo, &self.hi) == 1 {
            return Some(0);
        }
        let sturm = Sturm::new(&self.poly);
        let mut r = self.clone();
        for _ in 0..max_steps {
            let (a, b) = f.eval_interval(&r.lo, &r.hi);
            if a.is_positive() {
                return Some(1);
            }
            if b.is_negative() {
                return Some(-1);
            }
            r.bisect(&sturm);
        }
        None
    }

    pub fn exceeds(&self, x: &Rat, max_steps: usize) -> Option<bool> {
        let f = Poly::new(vec![-x.clone(), Rat::one()]);
        self.sign_of(&f, max_steps).map(|s| s > 0)
    }
}
