//! Kharchenko positive roots via hard super-letters, with multiplicities and
//! heights, and the Hilbert-series consistency check against U+ dimensions.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IncrementalBasis;
use crate::nichols::{FreeElement, NicholsTable};
use crate::scalars::{char_order, CycScalar};
use crate::weights::{BicharTable, Weight};
use crate::words::{enumerate_standard, super_letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub root: Weight,
    pub phi: usize,
    /// `None` means infinite height.
    pub height: Option<u64>,
    pub words: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub roots: Vec<Root>,
    pub bound: Weight,
    pub complete_below_bound: bool,
}

impl RootSystem {
    pub fn root_weights(&self) -> Vec<Weight> {
        self.roots.iter().map(|r| r.root.clone()).collect()
    }

    /// Hard words with their heights, in ascending word order.
    pub fn hard_letters(&self) -> Vec<(Word, Option<u64>)> {
        let mut out: Vec<(Word, Option<u64>)> =
            self.roots.iter().flat_map(|r| r.words.iter().map(|w| (w.clone(), r.height))).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Errors if chi(beta, beta) = 1 for some root.
    pub fn check_hypothesis(&self, t: &BicharTable) -> Result<()> {
        for r in &self.roots {
            if t.chi(&r.root, &r.root).is_one() {
                return Err(Error::HypothesisViolation(r.root.clone()));
            }
        }
        Ok(())
    }
}

pub fn root_height(t: &BicharTable, beta: &Weight) -> Result<Option<u64>> {
    let c = char_order(&t.chi(beta, beta))?;
    Ok((c != 0).then_some(c))
}

/// Coordinates of [v] * X where X has degree `deg`.
fn left_mul_element(nt: &NicholsTable, x: &FreeElement, deg: &Weight, coords: &[CycScalar]) -> Result<Vec<CycScalar>> {
    let l = nt.rank();
    let xdeg = x.homogeneous_degree(l).ok_or_else(|| Error::Invalid("inhomogeneous super-letter".into()))?;
    let target = deg + &xdeg;
    let mut out = vec![CycScalar::zero(nt.field()); nt.dim(&target)?];
    for (w, c) in x.terms() {
        let v = nt.word_times(w, deg, coords)?;
        for (o, y) in out.iter_mut().zip(&v) {
            if !y.is_zero() {
                *o += &(c * y);
            }
        }
    }
    Ok(out)
}

/// Images of all monomials L_1^{n_1} ... L_k^{n_k} of degree `target`, with
/// letters taken in the given (ascending) order and 1 <= n_i < height_i.
fn monomial_images(
    nt: &NicholsTable,
    letters: &[(FreeElement, Weight, Option<u64>)],
    target: &Weight,
) -> Result<Vec<Vec<CycScalar>>> {
    let mut memo: HashMap<(usize, Weight), Vec<Vec<CycScalar>>> = HashMap::new();
    fn rec(
        nt: &NicholsTable,
        letters: &[(FreeElement, Weight, Option<u64>)],
        s: usize,
        deg: &Weight,
        memo: &mut HashMap<(usize, Weight), Vec<Vec<CycScalar>>>,
    ) -> Result<Vec<Vec<CycScalar>>> {
        // monomials of degree `deg` using letters with index >= s
        if let Some(v) = memo.get(&(s, deg.clone())) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        if deg.is_zero() {
            out.push(vec![CycScalar::one(nt.field())]);
        }
        for i in s..letters.len() {
            let (x, xdeg, h) = &letters[i];
            let mut rest = deg.clone();
            let mut n = 0u64;
            let mut powers: Vec<u64> = Vec::new();
            loop {
                rest = &rest - xdeg;
                n += 1;
                if !rest.is_nonneg() || h.is_some_and(|h| n >= h) {
                    break;
                }
                powers.push(n);
            }
            for n in powers {
                let rest = deg - &(n as i64 * xdeg);
                let tails = rec(nt, letters, i + 1, &rest, memo)?;
                for tail in tails {
                    let mut cur = tail;
                    let mut cdeg = rest.clone();
                    for _ in 0..n {
                        cur = left_mul_element(nt, x, &cdeg, &cur)?;
                        cdeg = &cdeg + xdeg;
                    }
                    out.push(cur);
                }
            }
        }
        memo.insert((s, deg.clone()), out.clone());
        Ok(out)
    }
    rec(nt, letters, 0, target, &mut memo)
}

fn in_span(nt: &NicholsTable, vectors: &[Vec<CycScalar>], v: &[CycScalar]) -> bool {
    let mut b = IncrementalBasis::new(nt.field().clone(), v.len());
    for x in vectors {
        b.insert(x);
    }
    b.contains(v)
}

/// The hard super-letter sieve with degrees visited in the given order
/// (which must extend the componentwise order).
pub fn sieve_roots_in_order(nt: &NicholsTable, degrees: &[Weight]) -> Result<RootSystem> {
    let t = nt.table().clone();
    let l = t.rank();
    let bound = nt.bound().clone();
    let mut by_degree: HashMap<Weight, Vec<Word>> = HashMap::new();
    for u in enumerate_standard(&bound) {
        by_degree.entry(u.degree(l)).or_default().push(u);
    }
    // (word, super-letter, degree, height) of hard letters found so far
    let mut hard: Vec<(Word, FreeElement, Weight, Option<u64>)> = Vec::new();
    for lambda in degrees {
        let Some(words) = by_degree.get(lambda) else { continue };
        let height = root_height(&t, lambda)?;
        let mut words = words.clone();
        words.sort();
        for u in words {
            let su = super_letter(&u, &t)?;
            let image = nt.element_coords(&su, lambda)?;
            if image.iter().all(CycScalar::is_zero) {
                continue;
            }
            let mut smaller: Vec<&(Word, FreeElement, Weight, Option<u64>)> =
                hard.iter().filter(|h| h.0 < u && h.2.le(lambda)).collect();
            smaller.sort_by(|a, b| a.0.cmp(&b.0));
            let letters: Vec<(FreeElement, Weight, Option<u64>)> =
                smaller.iter().map(|h| (h.1.clone(), h.2.clone(), h.3)).collect();
            let mons = monomial_images(nt, &letters, lambda)?;
            if !in_span(nt, &mons, &image) {
                hard.push((u, su, lambda.clone(), height));
            }
        }
    }
    assemble(bound, hard.into_iter().map(|h| (h.0, h.2, h.3)).collect())
}

fn assemble(bound: Weight, hard: Vec<(Word, Weight, Option<u64>)>) -> Result<RootSystem> {
    let mut map: Vec<Root> = Vec::new();
    for (w, deg, h) in hard {
        match map.iter_mut().find(|r| r.root == deg) {
            Some(r) => {
                r.phi += 1;
                r.words.push(w);
            }
            None => map.push(Root { root: deg, phi: 1, height: h, words: vec![w] }),
        }
    }
    for r in map.iter_mut() {
        r.words.sort();
    }
    map.sort_by(|a, b| a.words[0].cmp(&b.words[0]).reverse());
    let complete = !map.iter().any(|r| r.root.0.iter().zip(&bound.0).any(|(a, b)| a == b));
    if complete {
        if let Some(r) = map.iter().find(|r| r.phi > 1) {
            return Err(Error::Consistency(format!("root {} has multiplicity {} in a finite root system", r.root, r.phi)));
        }
    }
    Ok(RootSystem { roots: map, bound, complete_below_bound: complete })
}

/// R+ with multiplicities and heights for all degrees within `bound`.
pub fn sieve_roots(t: &BicharTable, bound: &Weight) -> Result<RootSystem> {
    let nt = NicholsTable::new(Arc::new(t.clone()), bound)?;
    sieve_roots_in_order(&nt, &Weight::box_below(bound))
}

/// Hardness by the defining span: monomials in all standard words v_1 <= ... <= v_k < u
/// of the same degree.
pub fn sieve_roots_literal(nt: &NicholsTable) -> Result<RootSystem> {
    let t = nt.table().clone();
    let l = t.rank();
    let bound = nt.bound().clone();
    let standard = enumerate_standard(&bound);
    let letters_all: Vec<(Word, FreeElement, Weight)> = standard
        .iter()
        .map(|u| Ok((u.clone(), super_letter(u, &t)?, u.degree(l))))
        .collect::<Result<_>>()?;
    let mut hard = Vec::new();
    for (k, (u, su, lambda)) in letters_all.iter().enumerate() {
        let image = nt.element_coords(su, lambda)?;
        if image.iter().all(CycScalar::is_zero) {
            continue;
        }
        // standard words are sorted ascending, so indices < k are exactly the smaller words
        let letters: Vec<(FreeElement, Weight, Option<u64>)> =
            letters_all[..k].iter().filter(|x| x.2.le(lambda)).map(|x| (x.1.clone(), x.2.clone(), None)).collect();
        let mons = monomial_images(nt, &letters, lambda)?;
        if !in_span(nt, &mons, &image) {
            hard.push((u.clone(), lambda.clone(), root_height(&t, lambda)?));
        }
    }
    assemble(bound, hard)
}

/// Result of comparing the PBW count with U+ dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub ok: bool,
    pub first_failure: Option<(Weight, u128, usize)>,
}

/// Number of PBW monomials of each degree within the bound.
pub fn pbw_counts(rs: &RootSystem, bound: &Weight) -> HashMap<Weight, u128> {
    let degrees = Weight::box_below(bound);
    let mut counts: HashMap<Weight, u128> = degrees.iter().map(|d| (d.clone(), 0)).collect();
    counts.insert(Weight::zero(bound.rank()), 1);
    for r in &rs.roots {
        for _ in 0..r.phi {
            let mut next = HashMap::new();
            for d in &degrees {
                let mut acc = 0u128;
                let mut n = 0u64;
                loop {
                    if r.height.is_some_and(|h| n >= h) {
                        break;
                    }
                    let rest = d - &(n as i64 * &r.root);
                    if !rest.is_nonneg() {
                        break;
                    }
                    acc += counts[&rest];
                    n += 1;
                }
                next.insert(d.clone(), acc);
            }
            counts = next;
        }
    }
    counts
}

pub fn hilbert_cross_check(rs: &RootSystem, nt: &NicholsTable, bound: &Weight) -> Result<HilbertCheck> {
    let counts = pbw_counts(rs, bound);
    for d in Weight::box_below(bound) {
        let dim = nt.dim(&d)?;
        if counts[&d] != dim as u128 {
            return Ok(HilbertCheck { ok: false, first_failure: Some((d.clone(), counts[&d], dim)) });
        }
    }
    Ok(HilbertCheck { ok: true, first_failure: None })
}
