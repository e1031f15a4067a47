//! Fixtures, independent oracles and random generators shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use ctxprob::{parse_logic, ratio, Label, Logic, Matrix, Measure, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn logic(name: &str) -> Logic {
    parse_logic(&data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn inline(contexts: &[(&str, &[&str])]) -> Logic {
    let contexts: Vec<serde_json::Value> =
        contexts.iter().map(|(name, atoms)| serde_json::json!({ "name": name, "atoms": atoms })).collect();
    parse_logic(&serde_json::json!({ "contexts": contexts }).to_string()).expect("inline logic is valid")
}

/// Three two-atom contexts in a cycle: no two-valued state exists.
pub fn zero_state_cycle() -> Logic {
    inline(&[("A", &["x", "y"]), ("B", &["y", "z"]), ("C", &["z", "x"])])
}

/// Four three-atom contexts pasted in a cycle.
pub fn square_of_triangles() -> Logic {
    inline(&[
        ("S1", &["p1", "q1", "p2"]),
        ("S2", &["p2", "q2", "p3"]),
        ("S3", &["p3", "q3", "p4"]),
        ("S4", &["p4", "q4", "p1"]),
    ])
}

/// Three contexts sharing a single atom.
pub fn star() -> Logic {
    inline(&[("K1", &["o", "u1", "v1"]), ("K2", &["o", "u2", "v2"]), ("K3", &["o", "u3"])])
}

/// A chain of three contexts of mixed sizes.
pub fn chain() -> Logic {
    inline(&[("D1", &["r1", "r2"]), ("D2", &["r2", "s1", "s2", "s3"]), ("D3", &["s3", "t1", "t2"])])
}

/// Seven two-atom contexts in a cycle: an odd cycle with no two-valued state.
pub fn heptagon_of_pairs() -> Logic {
    let names = ["H1", "H2", "H3", "H4", "H5", "H6", "H7"];
    let atoms = ["w1", "w2", "w3", "w4", "w5", "w6", "w7"];
    let pairs: Vec<[&str; 2]> = (0..7).map(|i| [atoms[i], atoms[(i + 1) % 7]]).collect();
    let contexts: Vec<(&str, &[&str])> = names.iter().zip(&pairs).map(|(n, p)| (*n, p.as_slice())).collect();
    inline(&contexts)
}

/// Every logic used by the corpus-wide checks.
pub fn corpus() -> Vec<(String, Logic)> {
    let mut out: Vec<(String, Logic)> = ["square.json", "firefly.json", "pentagon.json", "triangle.json"]
        .iter()
        .map(|name| (name.to_string(), logic(name)))
        .collect();
    out.push(("zero-state cycle".into(), zero_state_cycle()));
    out.push(("square of triangles".into(), square_of_triangles()));
    out.push(("star".into(), star()));
    out.push(("chain".into(), chain()));
    out.push(("heptagon of pairs".into(), heptagon_of_pairs()));
    out
}

/// All 0/1 assignments (atom order) with exactly one 1 in every context,
/// in descending lexicographic order. Atoms outside every context are
/// unconstrained.
pub fn brute_force_states(logic: &Logic) -> Vec<Vec<bool>> {
    let n = logic.atom_count();
    assert!(n <= 24, "brute force over 2^{n} assignments");
    let mut out = Vec::new();
    for mask in (0u32..1 << n).rev() {
        // atom 0 is the most significant bit, so descending masks give
        // descending lexicographic vectors
        let values: Vec<bool> = (0..n).map(|a| mask >> (n - 1 - a) & 1 == 1).collect();
        if logic.contexts().iter().all(|c| c.members().iter().filter(|&&a| values[a]).count() == 1) {
            out.push(values);
        }
    }
    out
}

fn labels(entries: &[(&str, &[usize])]) -> BTreeMap<String, Label> {
    entries.iter().map(|(id, l)| (id.to_string(), l.iter().copied().collect())).collect()
}

/// Reference labels of the two-context square logic.
pub fn square_reference_labels() -> BTreeMap<String, Label> {
    labels(&[("a1", &[1, 2]), ("a2", &[3, 4]), ("b1", &[1, 3]), ("b2", &[2, 4])])
}

/// Reference labels of the firefly logic.
pub fn firefly_reference_labels() -> BTreeMap<String, Label> {
    labels(&[("e1", &[1, 2]), ("e2", &[3, 4]), ("h", &[5]), ("f1", &[1, 3]), ("f2", &[2, 4])])
}

/// Reference labels of the pentagon logic, atoms numbered around the cycle.
pub fn pentagon_reference_labels() -> BTreeMap<String, Label> {
    labels(&[
        ("a1", &[1, 2, 3]),
        ("a2", &[7, 8, 9, 10, 11]),
        ("a3", &[4, 5, 6]),
        ("a4", &[1, 3, 9, 10, 11]),
        ("a5", &[2, 7, 8]),
        ("a6", &[1, 4, 6, 10, 11]),
        ("a7", &[3, 5, 9]),
        ("a8", &[1, 2, 4, 7, 11]),
        ("a9", &[6, 8, 10]),
        ("a10", &[4, 5, 7, 9, 11]),
    ])
}

/// `P(f | e)` evaluated directly on label sets: `λ(f ∩ e) / λ(e)`.
pub fn label_ratio(weights: &[Rational], e: &Label, f: &Label) -> Option<Rational> {
    let mass = |set: &mut dyn Iterator<Item = &usize>| -> Rational {
        set.fold(ratio(0, 1), |acc, &i| acc + weights[i - 1].clone())
    };
    let den = mass(&mut e.iter());
    if den == ratio(0, 1) {
        return None;
    }
    Some(mass(&mut e.intersection(f)) / den)
}

/// Strictly positive rational weights with small random numerators.
pub fn random_positive_measure<R: Rng>(rng: &mut R, k: usize) -> Measure {
    let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=60)).collect();
    let total: i64 = raw.iter().sum();
    Measure::new(raw.iter().map(|&w| ratio(w, total)).collect()).expect("normalized")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Convex sum of `terms` random permutation matrices with random weights.
pub fn random_doubly_stochastic<R: Rng>(rng: &mut R, n: usize, terms: usize) -> Matrix<f64> {
    let weights: Vec<f64> = (0..terms).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut m = Matrix::zeros(n, n);
    for w in weights {
        for (i, j) in random_permutation(rng, n).into_iter().enumerate() {
            *m.get_mut(i, j) += w / total;
        }
    }
    m
}

/// Row-stochastic rational matrix with some zero entries.
pub fn random_row_stochastic<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix<Rational> {
    let data: Vec<Vec<Rational>> = (0..rows)
        .map(|_| {
            let mut raw: Vec<i64> =
                (0..cols).map(|_| if rng.random_bool(0.3) { 0 } else { rng.random_range(1..=20) }).collect();
            if raw.iter().all(|&x| x == 0) {
                raw[rng.random_range(0..cols)] = 1;
            }
            let total: i64 = raw.iter().sum();
            raw.iter().map(|&x| ratio(x, total)).collect()
        })
        .collect();
    Matrix::from_rows(data).expect("rectangular")
}
