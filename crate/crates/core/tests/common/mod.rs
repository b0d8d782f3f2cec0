//! Shared fixtures and the double-formula oracle for E-word times F-word.
#![allow(dead_code)]

use std::sync::Arc;

use gqg_core::algebra::{Algebra, AlgebraElement};
use gqg_core::nichols::Pairing;
use gqg_core::scalars::{CycScalar, CyclotomicField};
use gqg_core::weights::{BicharTable, Weight};
use gqg_core::words::{enumerate_words, Word};

pub fn z3_table() -> Arc<BicharTable> {
    let f = CyclotomicField::get(15).unwrap();
    let rows = vec![vec!["z^5".to_string(), "1".to_string()], vec!["z^13".to_string(), "z^2".to_string()]];
    Arc::new(BicharTable::from_literals(&f, &rows).unwrap())
}

pub fn generic_table() -> Arc<BicharTable> {
    let f = CyclotomicField::get(1).unwrap();
    let rows = vec![vec!["3".to_string(), "1/2".to_string()], vec!["5".to_string(), "-2".to_string()]];
    Arc::new(BicharTable::from_literals(&f, &rows).unwrap())
}

pub fn rank1(q: &str, n: u32) -> Arc<BicharTable> {
    let f = CyclotomicField::get(n).unwrap();
    Arc::new(BicharTable::from_literals(&f, &[vec![q.to_string()]]).unwrap())
}

pub fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

/// One tensor slot of the iterated coproduct of a word: (scalar, word, group-like weight).
type Slot = (CycScalar, Word, Weight);

/// (id x Delta) Delta of E_a in U+ K, each slot written as E_x K_lambda.
fn delta3_plus(t: &BicharTable, a: &Word) -> Vec<[Slot; 3]> {
    let l = t.rank();
    let n = a.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let s: Vec<usize> = (0..n).map(|r| (code / 3usize.pow(r as u32)) % 3).collect();
        let slots: Vec<Slot> = (0..3)
            .map(|j| {
                let mut c = CycScalar::one(t.field());
                let mut k = Weight::zero(l);
                let mut word = Vec::new();
                for r in 0..n {
                    if s[r] > j {
                        k = &k + &Weight::simple(l, a.0[r] as usize);
                    } else if s[r] == j {
                        word.push(a.0[r]);
                        for r0 in 0..r {
                            if s[r0] > j {
                                c = &c * t.entry(a.0[r0] as usize, a.0[r] as usize);
                            }
                        }
                    }
                }
                (c, Word(word), k)
            })
            .collect();
        out.push([slots[0].clone(), slots[1].clone(), slots[2].clone()]);
    }
    out
}

/// (id x Delta) Delta of F_b in U- L, each slot written as F_y L_mu.
fn delta3_minus(t: &BicharTable, b: &Word) -> Vec<[Slot; 3]> {
    let l = t.rank();
    let n = b.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let s: Vec<usize> = (0..n).map(|r| (code / 3usize.pow(r as u32)) % 3).collect();
        let slots: Vec<Slot> = (0..3)
            .map(|j| {
                let mut c = CycScalar::one(t.field());
                let mut m = Weight::zero(l);
                let mut word = Vec::new();
                for r in 0..n {
                    if s[r] < j {
                        m = &m + &Weight::simple(l, b.0[r] as usize);
                    } else if s[r] == j {
                        word.push(b.0[r]);
                        for r0 in 0..r {
                            if s[r0] < j {
                                c = &c * t.entry(b.0[r] as usize, b.0[r0] as usize);
                            }
                        }
                    }
                }
                (c, Word(word), m)
            })
            .collect();
        out.push([slots[0].clone(), slots[1].clone(), slots[2].clone()]);
    }
    out
}

/// S(F_y L_mu) written as c F_z L_nu.
fn antipode_minus(t: &BicharTable, y: &Word, mu: &Weight) -> Slot {
    let l = t.rank();
    let mut c = CycScalar::one(t.field());
    let mut word = Vec::new();
    let mut nu = -mu;
    for &letter in y.0.iter().rev() {
        let a = Weight::simple(l, letter as usize);
        c = -&(&c * &t.chi(&a, &nu));
        word.push(letter);
        nu = &nu - &a;
    }
    (c, Word(word), nu)
}

/// theta(E_x K_lambda, F_y L_mu) = chi(lambda, mu) theta(E_x, F_y).
fn theta(p: &Pairing, plus: &Slot, minus: &Slot) -> CycScalar {
    let v = p.right(&plus.1, &minus.1);
    if v.is_zero() {
        return v;
    }
    &(&(&plus.0 * &minus.0) * &v) * &p.table().chi(&plus.2, &minus.2)
}

/// E_a F_b from the double formula.
pub fn double_formula(alg: &Algebra, p: &Pairing, a: &Word, b: &Word) -> AlgebraElement {
    let t = alg.chi().clone();
    let mut out = AlgebraElement::zero(alg.field());
    let dp = delta3_plus(&t, a);
    let dm = delta3_minus(&t, b);
    for xp in &dp {
        for xm in &dm {
            let s3 = antipode_minus(&t, &xm[2].1, &xm[2].2);
            let s3 = (&s3.0 * &xm[2].0, s3.1, s3.2);
            let c3 = theta(p, &xp[2], &s3);
            if c3.is_zero() {
                continue;
            }
            let c1 = theta(p, &xp[0], &xm[0]);
            if c1.is_zero() {
                continue;
            }
            // (c F_y L_mu)(d E_x K_lambda) = c d chi(lambda, deg x)^{-1} F_y K_lambda L_mu E_x
            let (ref cm, ref y, ref mu) = xm[1];
            let (ref cp, ref x, ref lam) = xp[1];
            let swap = t.chi(lam, &x.degree(t.rank())).inv().unwrap();
            let coeff = &(&(&c1 * &c3) * &(cm * cp)) * &swap;
            let mono = alg.monomial(y, lam, mu, x).unwrap();
            out = out.add(&mono.scale(&coeff));
        }
    }
    out
}

/// Compares straightening with the double formula on all word pairs of length <= 3; returns the pair count.
pub fn check_double_formula(t: Arc<BicharTable>, bound: Weight) -> usize {
    let alg = Algebra::new(t.clone(), &bound).unwrap();
    let p = Pairing::new(t.clone());
    let words: Vec<Word> = enumerate_words(&bound).into_iter().filter(|x| x.len() <= 3).collect();
    let z = Weight::zero(t.rank());
    let mut checked = 0;
    for a in &words {
        for b in &words {
            let ea = alg.monomial(&Word::empty(), &z, &z, a).unwrap();
            let fb = alg.monomial(b, &z, &z, &Word::empty()).unwrap();
            let lhs = alg.multiply(&ea, &fb).unwrap();
            let rhs = double_formula(&alg, &p, a, b);
            assert_eq!(lhs, rhs, "E[{a}] F[{b}]: {} vs {}", alg.render(&lhs), alg.render(&rhs));
            checked += 1;
        }
    }
    checked
}
