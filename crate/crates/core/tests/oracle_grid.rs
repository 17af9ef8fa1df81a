use isoschur::corpus;
use isoschur::generic::{GenericCalculus, Route};
use isoschur::oracle::sample_hom_ext;

mod support;

#[test]
fn generic_values_match_sampled_representations() {
    let mut pairs = 0;
    for (name, q) in corpus::up_to(4) {
        let calc = GenericCalculus::new(&q);
        let g = support::grid(q.n(), 3);
        for (i, a) in g.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                let seed = (i * g.len() + j) as u64;
                assert_eq!(calc.hom_ext(a, b).unwrap(), sample_hom_ext(&q, a, b, seed, 4).unwrap(), "{name} ({a}) ({b})");
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 2000);
}

#[test]
fn dual_routes_agree_on_the_grid() {
    for (name, q) in corpus::up_to(4) {
        let calc = GenericCalculus::new(&q);
        let g = support::grid(q.n(), 3);
        for a in &g {
            for b in &g {
                let s = calc.ext_via(a, b, Route::Subvectors).unwrap();
                let t = calc.ext_via(a, b, Route::Quotients).unwrap();
                assert_eq!(s, t, "{name} ({a}) ({b})");
            }
        }
    }
}
