//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use isoschur::analysis::{analyze, hypersurface_relation, SiClass};
use isoschur::braid::{apply_sigma_word, enumerate_isotropic, reduce_to_tame_type, BraidWord, IsoTypeSequence, DEFAULT_BUDGET};
use isoschur::cone::cone_report;
use isoschur::exceptional::{Direction, ExceptionalSequence};
use isoschur::generic::{GenericCalculus, Route};
use isoschur::oracle::sample_hom_ext;
use isoschur::{corpus, DimVector, Quiver};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn v(x: &[i64]) -> DimVector {
    DimVector::of(x)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, t: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn c1_coxeter() -> Outcome {
    let printed = [[-1, 1, 1, 1], [-1, 0, 1, 2], [-1, 1, 0, 2], [-3, 2, 2, 4]];
    let t = Instant::now();
    let q = corpus::q4();
    let m = q.coxeter_matrix().to_rows();
    let elapsed = t.elapsed();
    for (r, row) in printed.iter().enumerate() {
        let got: Vec<String> = m[r].iter().map(|x| x.to_string()).collect();
        let want: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        ensure(got == want, || format!("row {}: {got:?} != {want:?}", r + 1))?;
    }
    within(Duration::from_millis(1), elapsed, "Coxeter matrix")?;
    let out = Command::new(env!("CARGO_BIN_EXE_isoschur"))
        .arg("coxeter")
        .arg(fixture("q4.quiver"))
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<Vec<i64>> =
        text.lines().map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect()).collect();
    ensure(rows == printed.map(|r| r.to_vec()).to_vec(), || format!("CLI printed {text}"))?;
    Ok(format!("exact, {elapsed:?}"))
}

fn c2_pairings() -> Outcome {
    let q = corpus::q4();
    for (a, b, want) in [
        (v(&[3, 3, 3, 1]), v(&[0, 1, 0, 0]), 2),
        (v(&[3, 2, 3, 1]), v(&[3, 2, 3, 1]), 0),
        (v(&[3, 2, 1, 1]), v(&[8, 3, 3, 3]), -2),
    ] {
        let got = q.pair(&a, &b);
        ensure(got == want.into(), || format!("⟨({a}),({b})⟩ = {got}, expected {want}"))?;
    }
    Ok("2, 0, −2".into())
}

fn c3_mutation_chain() -> Outcome {
    let q = corpus::q4();
    let start = ExceptionalSequence::from_classes(&q, vec![v(&[1, 1, 0, 0]), v(&[1, 0, 0, 0]), v(&[0, 0, 1, 1]), v(&[0, 0, 1, 0])])
        .map_err(|e| e.to_string())?;
    let steps = [
        (1, Direction::Left),
        (2, Direction::Left),
        (3, Direction::Right),
        (2, Direction::Right),
        (1, Direction::Left),
        (3, Direction::Left),
        (2, Direction::Left),
        (1, Direction::Left),
    ];
    let printed = [
        "((0,1,0,0),(3,3,1,1),(1,1,0,0),(0,0,1,0))",
        "((0,1,0,0),(3,3,1,1),(0,0,1,0),(1,1,1,0))",
        "((0,1,0,0),(0,0,1,0),(3,3,3,1),(1,1,1,0))",
        "((0,0,1,0),(0,1,0,0),(3,3,3,1),(1,1,1,0))",
        "((0,0,1,0),(0,1,0,0),(8,8,8,3),(3,3,3,1))",
        "((0,0,1,0),(8,3,8,3),(0,1,0,0),(3,3,3,1))",
        "((8,3,3,3),(0,0,1,0),(0,1,0,0),(3,3,3,1))",
    ];
    let mut s = start;
    let mut seen = Vec::new();
    for (i, d) in steps {
        s = s.mutate(i, d).map_err(|e| e.to_string())?;
        seen.push(s.to_string());
    }
    let mut at = 0;
    for p in printed {
        let k = seen[at..].iter().position(|x| x == p).ok_or_else(|| format!("{p} not reached in order"))?;
        at += k + 1;
    }
    Ok(format!("{} printed sequences in order", printed.len()))
}

fn c4_analysis() -> Outcome {
    let q = corpus::q4();
    let calc = GenericCalculus::new(&q);
    let t = Instant::now();
    let r = analyze(&calc, &v(&[3, 2, 3, 1]), 12).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(r.delta_bar == v(&[3, 2, 1, 1]), || format!("δ̄ = ({})", r.delta_bar))?;
    let mut ex: Vec<DimVector> = r.stable_simples.iter().map(|s| s.root.clone()).filter(|x| q.pair(x, x) == 1.into()).collect();
    ex.sort();
    ensure(ex == vec![v(&[0, 0, 1, 0]), v(&[8, 3, 3, 3])], || format!("stable exceptional roots {ex:?}"))?;
    ensure(r.tame_levels.is_empty() && r.r_levels.is_empty(), || format!("I = {:?}", r.r_levels))?;
    ensure(r.r_affine == "A-tilde(1,1)", || format!("R = {}", r.r_affine))?;
    ensure(r.si_class == SiClass::Polynomial, || "si_class is not polynomial".into())?;
    ensure(!r.smaller_type, || "smaller_type".into())?;
    within(Duration::from_secs(60), elapsed, "analysis")?;
    Ok(format!("δ̄ = (3,2,1,1), R = A-tilde(1,1), polynomial, {elapsed:?}"))
}

fn c5_cone() -> Outcome {
    let q = corpus::q4();
    let calc = GenericCalculus::new(&q);
    let r = cone_report(&calc, &v(&[3, 2, 3, 1]), 12).map_err(|e| e.to_string())?;
    let mut rays = r.rays.clone();
    rays.sort();
    ensure(rays == vec![v(&[0, 0, 1, 0]), v(&[3, 2, 1, 1]), v(&[8, 3, 3, 3])], || format!("rays {rays:?}"))?;
    ensure(r.delta_face.rays == vec![v(&[0, 0, 1, 0]), v(&[3, 2, 1, 1])], || format!("δ face {:?}", r.delta_face.rays))?;
    ensure(r.delta_face.coefficients == vec!["2", "1"], || format!("coefficients {:?}", r.delta_face.coefficients))?;
    ensure(r.proper.is_empty(), || format!("Proper(C) = {:?}", r.proper))?;
    ensure(r.simplicial, || "not simplicial".into())?;
    Ok("3 rays, δ = 2·(0,0,1,0) + 1·(3,2,1,1), Proper(C) = ∅, simplicial".into())
}

fn c6_tame() -> Outcome {
    let d4 = corpus::d4_tilde();
    let calc = GenericCalculus::new(&d4);
    let t = Instant::now();
    let r = analyze(&calc, &v(&[2, 1, 1, 1, 1]), 12).map_err(|e| e.to_string())?;
    let e1 = t.elapsed();
    ensure(r.si_class == SiClass::Hypersurface, || "D̃4 is not a hypersurface".into())?;
    let rel = hypersurface_relation(&r).map_err(|e| e.to_string())?.ok_or("no relation")?;
    ensure(rel.tubes.len() == 3, || format!("{} tubes", rel.tubes.len()))?;
    for tube in &rel.tubes {
        let sum = tube.iter().skip(1).fold(tube[0].clone(), |a, b| a.add(b));
        ensure(sum == r.delta, || format!("tube sums to ({sum})"))?;
    }
    within(Duration::from_secs(10), e1, "D̃4 analysis")?;
    let a21 = corpus::a_tilde_21();
    let calc = GenericCalculus::new(&a21);
    let t = Instant::now();
    let r = analyze(&calc, &v(&[1, 1, 1]), 12).map_err(|e| e.to_string())?;
    let e2 = t.elapsed();
    ensure(r.si_class == SiClass::Polynomial, || "A-tilde(2,1) is not polynomial".into())?;
    within(Duration::from_secs(10), e2, "A-tilde(2,1) analysis")?;
    Ok(format!("D̃4 hypersurface with 3 tubes summing to δ ({e1:?}); A-tilde(2,1) polynomial ({e2:?})"))
}

fn c7_oracle() -> Outcome {
    let (mut pairs, mut mismatches, mut dual) = (0usize, Vec::new(), 0usize);
    for (name, q) in corpus::up_to(4) {
        let calc = GenericCalculus::new(&q);
        let g = support::grid(q.n(), 3);
        for (i, a) in g.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                let gen = calc.hom_ext(a, b).map_err(|e| e.to_string())?;
                let sam = sample_hom_ext(&q, a, b, (i * g.len() + j) as u64, 4).map_err(|e| e.to_string())?;
                if gen != sam {
                    mismatches.push(format!("{name} ({a}) ({b}): {gen:?} vs {sam:?}"));
                }
                let s = calc.ext_via(a, b, Route::Subvectors).map_err(|e| e.to_string())?;
                let t = calc.ext_via(a, b, Route::Quotients).map_err(|e| e.to_string())?;
                if s != t || s != gen.1 {
                    dual += 1;
                }
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 2000, || format!("only {pairs} pairs"))?;
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    ensure(dual == 0, || format!("{dual} dual-formula disagreements"))?;
    Ok(format!("{pairs} pairs, 0 mismatches, dual formula agrees"))
}

fn c8_properties() -> Outcome {
    let mut done = Vec::new();
    for (name, suite) in support::suites() {
        suite(support::CASES).map_err(|e| format!("{name}: {e}"))?;
        done.push(name);
    }
    Ok(format!("{} suites × {} cases", done.len(), support::CASES))
}

fn c9_completeness() -> Outcome {
    for (name, q) in corpus::all() {
        let calc = GenericCalculus::new(&q);
        let e = enumerate_isotropic(&calc, 4).map_err(|e| format!("{name}: {e}"))?;
        let b = calc.brute_isotropic(4);
        ensure(e == b, || format!("{name}: {} roots vs {} by scan", e.len(), b.len()))?;
    }
    let q = corpus::q4();
    let calc = GenericCalculus::new(&q);
    let roots = enumerate_isotropic(&calc, 10).map_err(|e| e.to_string())?;
    for r in [v(&[1, 1, 0, 1]), v(&[1, 0, 1, 1]), v(&[3, 2, 1, 1]), v(&[3, 2, 3, 1])] {
        ensure(roots.contains(&r), || format!("({r}) missing at bound 10"))?;
    }
    let e = reducible_start(&q)?;
    let (w, f) = reduce_to_tame_type(&e, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let s = f.is_tame_type().map_err(|e| e.to_string())?;
    ensure(s.is_some(), || format!("{f} is not of tame type"))?;
    Ok(format!("corpus matches scan at bound 4; Q4 has {} roots at bound 10; reduced by {w}", roots.len()))
}

fn reducible_start(q: &Quiver) -> Result<IsoTypeSequence, String> {
    let s = ExceptionalSequence::from_classes(q, vec![v(&[8, 3, 3, 3]), v(&[0, 0, 1, 0]), v(&[0, 1, 0, 0]), v(&[3, 3, 3, 1])])
        .map_err(|e| e.to_string())?;
    IsoTypeSequence::new(s, 3).map_err(|e| e.to_string())
}

fn c10_word_identity() -> Outcome {
    let g: BraidWord = "g2^-1 g1^-1 g2 g1^-1".parse().map_err(|e: isoschur::Error| e.to_string())?;
    let h: BraidWord = "s2^-1 s1^-1 s3^-1 s2^-1 s3 s2^-1 s1^-1".parse().map_err(|e: isoschur::Error| e.to_string())?;
    let seqs = support::position_two_sequences(120, 2024);
    ensure(seqs.len() >= 100, || format!("only {} position-2 sequences", seqs.len()))?;
    for e in &seqs {
        let ge = e.apply(&g).map_err(|x| format!("{e}: {x}"))?;
        let he = apply_sigma_word(e.base(), &h).map_err(|x| format!("{e}: {x}"))?;
        ensure(ge.base() == &he, || format!("{e}: γ gives {} but σ gives {he}", ge.base()))?;
    }
    let quivers: std::collections::BTreeSet<String> = seqs.iter().map(|e| format!("{:?}", e.base().quiver().arrows())).collect();
    Ok(format!("{} sequences over {} quivers, rightmost generator first", seqs.len(), quivers.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("Coxeter fixture", c1_coxeter),
        ("pairing fixtures", c2_pairings),
        ("mutation chain", c3_mutation_chain),
        ("analysis fixture", c4_analysis),
        ("cone fixture", c5_cone),
        ("tame classification", c6_tame),
        ("oracle equivalence", c7_oracle),
        ("property suites", c8_properties),
        ("isotropic completeness", c9_completeness),
        ("γ word identity", c10_word_identity),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
