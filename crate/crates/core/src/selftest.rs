//! Seeded randomized property suites, runnable outside the test harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebras::ThinAlgebra;
use crate::degree::Degree;
use crate::field::FieldSpec;
use crate::freelie::{normalize, Ambient, BracketExpr};
use crate::tuples::{classify, int_degrees, oracle_classify, u1_for, DEFAULT_ORACLE_BOUND};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const SUITES: &[&str] = &[
    "round_trip",
    "anticommutativity",
    "jacobi",
    "four_term",
    "linearity",
    "eval_normal_form",
    "classifier_oracle",
];

/// A random bracket tree using each of `indices` once.
pub fn random_tree(rng: &mut impl Rng, indices: &[u32], degree: &mut impl FnMut(u32) -> Degree) -> BracketExpr {
    if indices.len() == 1 {
        return BracketExpr::var(indices[0], degree(indices[0]));
    }
    let cut = rng.gen_range(1..indices.len());
    let l = random_tree(rng, &indices[..cut], degree);
    let r = random_tree(rng, &indices[cut..], degree);
    BracketExpr::bracket(l, r)
}

/// `k` disjoint random trees over a shuffled `x1..xn`, `k ≤ n ≤ 6`.
fn random_trees(rng: &mut impl Rng, k: usize) -> Vec<BracketExpr> {
    let n = rng.gen_range(k..=6);
    let mut idx: Vec<u32> = (1..=n as u32).collect();
    idx.shuffle(rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort();
    cuts.insert(0, 0);
    cuts.push(n);
    let mut degree = |_| Degree::Int(0);
    cuts.windows(2).map(|w| random_tree(rng, &idx[w[0]..w[1]], &mut degree)).collect()
}

fn br(a: &BracketExpr, b: &BracketExpr) -> BracketExpr {
    BracketExpr::bracket(a.clone(), b.clone())
}

fn vanishes(terms: Vec<(i64, BracketExpr)>) -> Result<bool, String> {
    let q = FieldSpec::Rational;
    let terms: Vec<_> = terms.into_iter().map(|(c, e)| (q.from_int(c), e)).collect();
    normalize(&terms).map(|p| p.is_zero()).map_err(|e| e.to_string())
}

fn case(name: &'static str, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let q = FieldSpec::Rational;
    let ok = match name {
        "round_trip" => {
            let n = rng.gen_range(1..=6usize);
            let amb = Ambient::for_degrees(&vec![Degree::Int(0); n]);
            let i = rng.gen_range(0..amb.dim());
            let p = normalize(&[(q.one(), amb.basis_monomial(i).to_expr())]).map_err(|e| e.to_string())?;
            p.terms().count() == 1 && p.coord(&amb.basis()[i]).is_one()
        }
        "anticommutativity" => {
            let t = random_trees(rng, 2);
            vanishes(vec![(1, br(&t[0], &t[1])), (1, br(&t[1], &t[0]))])?
        }
        "jacobi" => {
            let t = random_trees(rng, 3);
            vanishes(vec![
                (1, br(&br(&t[0], &t[1]), &t[2])),
                (1, br(&br(&t[1], &t[2]), &t[0])),
                (1, br(&br(&t[2], &t[0]), &t[1])),
            ])?
        }
        "four_term" => {
            let t = random_trees(rng, 4);
            let ln = |a: usize, b: usize, c: usize, d: usize| {
                BracketExpr::left_normed(vec![t[a].clone(), t[b].clone(), t[c].clone(), t[d].clone()])
            };
            vanishes(vec![(1, ln(0, 1, 2, 3)), (1, ln(1, 0, 3, 2)), (1, ln(3, 2, 1, 0)), (1, ln(2, 3, 0, 1))])?
        }
        "linearity" => {
            let t = random_trees(rng, 3);
            let (a, b) = (rng.gen_range(-20..=20i64), rng.gen_range(-20..=20i64));
            let e1 = br(&br(&t[0], &t[1]), &t[2]);
            let e2 = br(&t[0], &br(&t[2], &t[1]));
            let lhs = normalize(&[(q.from_int(a), e1.clone()), (q.from_int(b), e2.clone())]);
            let one = |e| normalize(&[(q.one(), e)]);
            let rhs = one(e1)
                .and_then(|p| p.scale(&q.from_int(a)))
                .and_then(|p| Ok((p, one(e2)?.scale(&q.from_int(b))?)))
                .and_then(|(x, y)| x.add(&y));
            lhs.map_err(|e| e.to_string())? == rhs.map_err(|e| e.to_string())?
        }
        "eval_normal_form" => {
            let a = ThinAlgebra::u1(q);
            let n = rng.gen_range(2..=6u32);
            let degrees: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            let idx: Vec<u32> = (1..=n).collect();
            let mut degree = |i: u32| Degree::Int(degrees[i as usize - 1]);
            let e = random_tree(rng, &idx, &mut degree);
            let p = normalize(&[(q.one(), e.clone())]).map_err(|e| e.to_string())?;
            a.eval_poly(&p) == a.eval_expr(&e).0
        }
        "classifier_oracle" => {
            let p = *[0u64, 3, 5].choose(rng).unwrap();
            let n = rng.gen_range(1..=5usize);
            let r = if p == 0 { 3 } else { p as i64 };
            let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
            let fast = classify(&g, p).map_err(|e| e.to_string())?;
            let slow = oracle_classify(&int_degrees(&g), &u1_for(p), DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
            if fast.verdict != slow.verdict {
                return Err(format!("{g:?} mod {p}: {:?} vs {:?}", fast.verdict, slow.verdict));
            }
            true
        }
        other => return Err(format!("unknown suite {other}")),
    };
    if ok {
        Ok(())
    } else {
        Err("property does not hold".into())
    }
}

/// Runs `cases` instances of one suite from a fixed seed.
pub fn run_suite(name: &'static str, seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if let Err(msg) = case(name, &mut rng) {
            failures += 1;
            first_failure.get_or_insert(format!("case {i}: {msg}"));
        }
    }
    SuiteResult { name, cases, failures, first_failure }
}

pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteResult> {
    SUITES.iter().map(|s| run_suite(s, seed, cases)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for r in run_all(7, 100) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn a_false_property_is_caught() {
        // [u, v] alone does not vanish.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_trees(&mut rng, 2);
        assert!(!vanishes(vec![(1, br(&t[0], &t[1]))]).unwrap());
    }
}
