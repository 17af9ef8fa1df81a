//! Built-in quivers used by tests and fixtures. Arrows are written `(tail, head)`, 0-based.

use crate::quiver::Quiver;

fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver::from_arrows(n, arrows).expect("corpus quiver is valid")
}

/// Four vertices; arrows 2→1, 3→1, 4→1, 4→2, 4→3.
pub fn q4() -> Quiver {
    q(4, &[(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)])
}

/// 1 ⇉ 2.
pub fn kronecker() -> Quiver {
    q(2, &[(0, 1), (0, 1)])
}

/// Three parallel arrows 1 → 2.
pub fn kronecker3() -> Quiver {
    q(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn a1() -> Quiver {
    q(1, &[])
}

pub fn a2() -> Quiver {
    q(2, &[(0, 1)])
}

/// 1 → 2 ← 3.
pub fn a3() -> Quiver {
    q(3, &[(0, 1), (2, 1)])
}

/// 1 → 2 → 3 and 1 → 3.
pub fn a_tilde_21() -> Quiver {
    q(3, &[(0, 1), (1, 2), (0, 2)])
}

/// 4-cycle 1 → 2 → 3 ← 4 ← 1.
pub fn a_tilde_22() -> Quiver {
    q(4, &[(0, 1), (1, 2), (0, 3), (3, 2)])
}

/// 2 ⇉ 1 ← 3, wild with a Kronecker full subquiver.
pub fn wild3() -> Quiver {
    q(3, &[(1, 0), (1, 0), (2, 0)])
}

/// Dynkin D4 with centre sink 1.
pub fn d4() -> Quiver {
    q(4, &[(1, 0), (2, 0), (3, 0)])
}

/// Extended D4 with centre sink 1.
pub fn d4_tilde() -> Quiver {
    q(5, &[(1, 0), (2, 0), (3, 0), (4, 0)])
}

/// Extended E6, arms 1–2–3, 1–4–5, 1–6–7 oriented towards the centre 1.
pub fn e6_tilde() -> Quiver {
    q(7, &[(1, 0), (2, 1), (3, 0), (4, 3), (5, 0), (6, 5)])
}

/// Named corpus in a fixed order.
pub fn all() -> Vec<(&'static str, Quiver)> {
    vec![
        ("a1", a1()),
        ("a2", a2()),
        ("a3", a3()),
        ("kronecker", kronecker()),
        ("kronecker3", kronecker3()),
        ("a_tilde_21", a_tilde_21()),
        ("wild3", wild3()),
        ("d4", d4()),
        ("a_tilde_22", a_tilde_22()),
        ("q4", q4()),
        ("d4_tilde", d4_tilde()),
        ("e6_tilde", e6_tilde()),
    ]
}

/// Corpus members with at most `n` vertices.
pub fn up_to(n: usize) -> Vec<(&'static str, Quiver)> {
    all().into_iter().filter(|(_, q)| q.n() <= n).collect()
}
