//! Strategies, fixtures and property suites shared by the core tests and the acceptance target.
#![allow(dead_code)]

use isoschur::analysis::{all_stable_sequences, delta_chain, tame_pairs_after};
use isoschur::braid::{apply_sigma_word, BraidWord, IsoTypeSequence};
use isoschur::exceptional::ExceptionalSequence;
use isoschur::generic::{GenericCalculus, RootKind};
use isoschur::position::Subcategory;
use isoschur::{corpus, DimVector, KClass, Quiver};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use std::sync::OnceLock;

pub const CASES: u32 = 500;

/// Nonzero vectors of length `n` with entries in `0..=max`.
pub fn grid(n: usize, max: u32) -> Vec<DimVector> {
    let base = max as usize + 1;
    (1..base.pow(n as u32))
        .map(|mut k| {
            let v: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (k % base) as u32;
                    k /= base;
                    d
                })
                .collect();
            DimVector::from_small(&v)
        })
        .collect()
}

/// Acyclic quivers on `2..=max_n` vertices, arrows from higher to lower index with multiplicity
/// at most `max_mult`.
pub fn quivers(max_n: usize, max_mult: usize) -> impl Strategy<Value = Quiver> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..=max_mult, n * (n - 1) / 2).prop_map(move |m| {
            let mut arrows = Vec::new();
            let mut k = 0;
            for t in 0..n {
                for h in 0..t {
                    arrows.extend(std::iter::repeat_n((t, h), m[k]));
                    k += 1;
                }
            }
            Quiver::from_arrows(n, &arrows).expect("acyclic by construction")
        })
    })
}

fn vectors(n: usize, max: u32) -> impl Strategy<Value = DimVector> {
    prop::collection::vec(0..=max, n)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x > 0))
        .prop_map(|v| DimVector::from_small(&v))
}

fn simple_sequence(q: &Quiver) -> ExceptionalSequence {
    Subcategory::full(q).simples().clone()
}

fn walk_word(walk: &[(usize, bool)], gens: usize) -> BraidWord {
    BraidWord::new(walk.iter().map(|&(i, inv)| (i % gens + 1, if inv { -1 } else { 1 })).collect())
        .expect("generator indices are positive")
}

fn word(w: &[(usize, i8)]) -> BraidWord {
    BraidWord::new(w.to_vec()).expect("generator indices are positive")
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

fn check<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(e.to_string()))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// `σ_iσ_{i+1}σ_i = σ_{i+1}σ_iσ_{i+1}` and far commutation on random full sequences.
pub fn sigma_braid_relations(cases: u32) -> Result<(), String> {
    let s = (quivers(5, 2), prop::collection::vec((0usize..8, any::<bool>()), 0..6));
    run(cases, s, |(q, walk)| {
        let n = q.n();
        let e = check(apply_sigma_word(&simple_sequence(&q), &walk_word(&walk, n - 1)))?;
        for i in 1..n {
            for j in i + 1..n {
                let (l, r) = if j == i + 1 {
                    (word(&[(i, 1), (j, 1), (i, 1)]), word(&[(j, 1), (i, 1), (j, 1)]))
                } else {
                    (word(&[(i, 1), (j, 1)]), word(&[(j, 1), (i, 1)]))
                };
                let a = check(apply_sigma_word(&e, &l))?;
                let b = check(apply_sigma_word(&e, &r))?;
                prop_assert_eq!(a.classes(), b.classes(), "σ{} σ{} on {}", i, j, e);
            }
        }
        Ok(())
    })
}

/// `σ_iσ_i⁻¹ = σ_i⁻¹σ_i = id`.
pub fn mutation_involutions(cases: u32) -> Result<(), String> {
    let s = (quivers(5, 2), prop::collection::vec((0usize..8, any::<bool>()), 0..6));
    run(cases, s, |(q, walk)| {
        let n = q.n();
        let e = check(apply_sigma_word(&simple_sequence(&q), &walk_word(&walk, n - 1)))?;
        for i in 1..n {
            for w in [word(&[(i, 1), (i, -1)]), word(&[(i, -1), (i, 1)])] {
                let back = check(apply_sigma_word(&e, &w))?;
                prop_assert_eq!(back.classes(), e.classes());
            }
        }
        Ok(())
    })
}

/// Sequences of isotropic type built from stable sequences of a few roots.
pub fn iso_seeds() -> &'static [IsoTypeSequence] {
    static SEEDS: OnceLock<Vec<IsoTypeSequence>> = OnceLock::new();
    SEEDS.get_or_init(|| {
        let mut out = Vec::new();
        for q in [corpus::q4(), corpus::a_tilde_22(), corpus::d4_tilde()] {
            let calc = GenericCalculus::new(&q);
            for d in calc.brute_isotropic(3) {
                if let Ok(e) = IsoTypeSequence::for_root(&calc, &d, 12) {
                    out.push(e);
                }
            }
        }
        out
    })
}

/// Braid relations, inverses and far commutation for γ on sequences of isotropic type.
pub fn gamma_braid_relations(cases: u32) -> Result<(), String> {
    let seeds = iso_seeds();
    let s = (0..seeds.len(), prop::collection::vec((0usize..8, any::<bool>()), 0..5));
    run(cases, s, |(k, walk)| {
        let start = &seeds[k];
        let gens = start.n() - 2;
        let e = check(start.apply(&walk_word(&walk, gens)))?;
        let same = |a: &IsoTypeSequence, b: &IsoTypeSequence| a.classes() == b.classes() && a.position() == b.position();
        for i in 1..=gens {
            for x in [1i8, -1] {
                let back = check(e.apply(&word(&[(i, x), (i, -x)])))?;
                prop_assert!(same(&back, &e), "γ{}^{} and its inverse on {}", i, x, e);
            }
            for j in i + 1..=gens {
                let (l, r) = if j == i + 1 {
                    (word(&[(i, 1), (j, 1), (i, 1)]), word(&[(j, 1), (i, 1), (j, 1)]))
                } else {
                    (word(&[(i, 1), (j, 1)]), word(&[(j, 1), (i, 1)]))
                };
                let a = check(e.apply(&l))?;
                let b = check(e.apply(&r))?;
                prop_assert!(same(&a, &b), "γ{} γ{} on {}", i, j, e);
            }
        }
        Ok(())
    })
}

/// `hom(a, b) − ext(a, b) = ⟨a, b⟩`.
pub fn hom_minus_ext_is_euler(cases: u32) -> Result<(), String> {
    let s = quivers(4, 2).prop_flat_map(|q| {
        let n = q.n();
        (Just(q), vectors(n, 3), vectors(n, 3))
    });
    run(cases, s, |(q, a, b)| {
        let calc = GenericCalculus::new(&q);
        let (h, e) = check(calc.hom_ext(&a, &b))?;
        let diff = num_bigint::BigInt::from(h) - num_bigint::BigInt::from(e);
        prop_assert_eq!(diff, q.pair(&a, &b));
        Ok(())
    })
}

/// `⟨Φa, Φb⟩ = ⟨a, b⟩`, `Φ⁻¹Φ = id` and `Φ d_{P_x} = −d_{I_x}`.
pub fn coxeter_isometry(cases: u32) -> Result<(), String> {
    let s = quivers(5, 2).prop_flat_map(|q| {
        let n = q.n();
        (Just(q), prop::collection::vec(-5i64..=5, n), prop::collection::vec(-5i64..=5, n))
    });
    run(cases, s, |(q, a, b)| {
        let (a, b) = (KClass::of(&a), KClass::of(&b));
        let fa = check(q.coxeter_apply(&a, 1))?;
        let fb = check(q.coxeter_apply(&b, 1))?;
        prop_assert_eq!(q.pair(&fa, &fb), q.pair(&a, &b));
        prop_assert_eq!(check(q.coxeter_apply(&fa, -1))?, a);
        for (p, i) in q.projective_roots().iter().zip(q.injective_roots()) {
            prop_assert_eq!(check(q.coxeter_apply(&p.class(), 1))?, i.class().neg());
        }
        Ok(())
    })
}

/// Isotropic Schur roots with entries at most 3 and real Schur `u` with `(u, δ)` orthogonal.
pub fn reflection_cases() -> &'static [(Quiver, DimVector, DimVector)] {
    static CASES_: OnceLock<Vec<(Quiver, DimVector, DimVector)>> = OnceLock::new();
    CASES_.get_or_init(|| {
        let mut out = Vec::new();
        for (_, q) in corpus::up_to(5) {
            let calc = GenericCalculus::new(&q);
            let deltas = calc.brute_isotropic(3);
            if deltas.is_empty() {
                continue;
            }
            let reals: Vec<DimVector> =
                grid(q.n(), 3).into_iter().filter(|u| calc.is_real_schur(u).unwrap_or(false)).collect();
            for d in &deltas {
                for u in &reals {
                    if calc.hom_ext(u, d).unwrap() == (0, 0) {
                        out.push((q.clone(), d.clone(), u.clone()));
                    }
                }
            }
        }
        out
    })
}

/// `L_U(δ) = δ − ⟨δ, u⟩u` stays isotropic and orthogonal to `u`.
pub fn reflection_isotropy(cases: u32) -> Result<(), String> {
    let all = reflection_cases();
    run(cases, 0..all.len(), |k| {
        let (q, d, u) = &all[k];
        let c = q.pair(d, u);
        let l = d.class().sub(&u.class().scale(&c));
        prop_assert!(q.pair(&l, &l) == 0.into(), "L_({}) ({}) = ({}) not isotropic", u, d, l);
        prop_assert!(q.pair(&l, u) == 0.into());
        if let Some(ld) = l.to_dim() {
            prop_assert_eq!(check(isoschur::exceptional::isotropic_reflection(q, d, u))?, ld);
        }
        Ok(())
    })
}

pub type ChainCase = (Quiver, DimVector, Vec<Vec<DimVector>>);
pub type Suite = fn(u32) -> Result<(), String>;

/// Isotropic Schur roots with every valid stable sequence at bound 12.
pub fn chain_cases() -> &'static [ChainCase] {
    static CASES_: OnceLock<Vec<ChainCase>> = OnceLock::new();
    CASES_.get_or_init(|| {
        let mut out = Vec::new();
        for q in [corpus::q4(), corpus::a_tilde_21(), corpus::a_tilde_22(), corpus::wild3(), corpus::d4_tilde()] {
            let calc = GenericCalculus::new(&q);
            for d in calc.brute_isotropic(3) {
                let seqs = all_stable_sequences(&calc, &d, 12).unwrap_or_default();
                if !seqs.is_empty() {
                    out.push((q.clone(), d, seqs));
                }
            }
        }
        out
    })
}

/// Along every chain, each `δ_i` is isotropic Schur and `δ_{i+1} ↪ δ_i`.
pub fn chain_embeddings(cases: u32) -> Result<(), String> {
    let all = chain_cases();
    run(cases, (0..all.len(), any::<usize>(), any::<usize>()), |(k, si, pi)| {
        let (q, d, seqs) = &all[k];
        let calc = GenericCalculus::new(q);
        let ms = &seqs[si % seqs.len()];
        let pairs = check(tame_pairs_after(&calc, ms, d, false))?;
        prop_assert!(!pairs.is_empty());
        let (v, w) = &pairs[pi % pairs.len()];
        let chain = check(delta_chain(&calc, d, ms, v, w))?;
        let mut roots: Vec<&DimVector> = chain.levels.iter().map(|l| &l.delta).collect();
        roots.push(&chain.delta_bar);
        for r in &roots {
            prop_assert!(q.pair(r, r) == 0.into());
            prop_assert!(check(calc.is_schur_root(r))?, "({}) is not Schur", r);
        }
        for p in roots.windows(2) {
            prop_assert!(check(calc.embeds(p[1], p[0]))?, "({}) does not embed in ({})", p[1], p[0]);
        }
        Ok(())
    })
}

/// Parts are Schur, multiplicities match root kinds, exts vanish, the sum is `d`, and
/// `p·d` decomposes as the scaled decomposition for `p = 2, 3`.
pub fn candecomp_invariants(cases: u32) -> Result<(), String> {
    let s = quivers(4, 2).prop_flat_map(|q| {
        let n = q.n();
        (Just(q), vectors(n, 2))
    });
    run(cases, s, |(q, d)| {
        let calc = GenericCalculus::new(&q);
        let dec = check(calc.canonical_decomposition(&d))?;
        let mut sum = DimVector::zero(q.n());
        for p in &dec.parts {
            sum = sum.add(&p.root.scale(p.multiplicity));
            prop_assert!(check(calc.is_schur_root(&p.root))?);
            let sp = q.pair(&p.root, &p.root);
            let kind = if sp == 1.into() {
                RootKind::Real
            } else if sp == 0.into() {
                RootKind::Isotropic
            } else {
                RootKind::Imaginary
            };
            prop_assert_eq!(p.kind, kind);
            if kind == RootKind::Imaginary {
                prop_assert_eq!(p.multiplicity, 1);
            }
            if kind == RootKind::Real {
                prop_assert_eq!(check(calc.ext(&p.root, &p.root))?, 0);
            }
            for o in &dec.parts {
                if o.root != p.root {
                    prop_assert_eq!(check(calc.ext(&p.root, &o.root))?, 0);
                }
            }
        }
        prop_assert_eq!(sum, d.clone());
        for p in [2, 3] {
            prop_assert_eq!(check(calc.canonical_decomposition(&d.scale(p)))?, dec.scaled(p), "p = {}", p);
        }
        Ok(())
    })
}

/// All suites with the names used by the acceptance report.
pub fn suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("σ braid relations", sigma_braid_relations),
        ("γ braid relations", gamma_braid_relations),
        ("mutation involutions", mutation_involutions),
        ("hom − ext = ⟨·,·⟩", hom_minus_ext_is_euler),
        ("Φ isometry and Φd_P = −d_I", coxeter_isometry),
        ("L_U(δ) isotropy", reflection_isotropy),
        ("δ_{i+1} ↪ δ_i", chain_embeddings),
        ("CanDecomp invariants and scaling", candecomp_invariants),
    ]
}

/// Distinct position-2 sequences of isotropic type over 4-vertex quivers, by random γ walks.
pub fn position_two_sequences(want: usize, seed: u64) -> Vec<IsoTypeSequence> {
    use rand::{Rng, SeedableRng};
    let seeds: Vec<&IsoTypeSequence> = iso_seeds().iter().filter(|e| e.n() == 4).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IsoTypeSequence> = Vec::new();
    let mut tries = 0;
    while out.len() < want && tries < 200 * want {
        tries += 1;
        let mut e = seeds[rng.gen_range(0..seeds.len())].clone();
        for _ in 0..rng.gen_range(1..6) {
            let i = rng.gen_range(1..=2);
            let x = if rng.gen_bool(0.5) { 1 } else { -1 };
            e = e.gamma(i, x).expect("γ keeps isotropic type");
            if e.position() == 2 && !out.iter().any(|o| o.classes() == e.classes()) {
                out.push(e.clone());
            }
        }
    }
    out
}
