//! The free algebra graded by Z^l, the Drinfeld pairing between E-words and
//! F-words, Gram blocks, and degreewise tables for the Nichols quotient U+.
//!
//! An element X of U+ of degree lambda != 0 vanishes iff every skew
//! derivation d_j X (degree lambda - alpha_j) vanishes, where
//! d_j(E_a) = sum_{r : a_r = j} chi(alpha_j, theta(a_{>r})) E_{a without r}.
//! This follows from pairing against F_{w'} F_j, so a class in U+_lambda is
//! faithfully represented by the coordinates of its derivations. The table
//! stores, per degree, a pivot basis and the matrices of left multiplication
//! by each E_i and of each d_j in pivot coordinates.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Sub};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::{rank_bareiss, IncrementalBasis, Reduction};
use crate::scalars::{CycScalar, CyclotomicField};
use crate::weights::{BicharTable, Weight};
use crate::words::{words_of_degree, Word};

/// A noncommutative polynomial: finitely supported map from words to scalars.
#[derive(Clone, Debug)]
pub struct FreeElement {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Word, CycScalar>,
}

impl PartialEq for FreeElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for FreeElement {}

impl FreeElement {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        FreeElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn from_word(field: &Arc<CyclotomicField>, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, CycScalar::one(field));
        FreeElement { field: field.clone(), terms }
    }

    pub fn letter(field: &Arc<CyclotomicField>, i: usize) -> Self {
        Self::from_word(field, Word::letter(i))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_word(field, Word::empty())
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Word, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> CycScalar {
        self.terms.get(w).cloned().unwrap_or_else(|| CycScalar::zero(&self.field))
    }

    pub fn add_term(&mut self, w: Word, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        FreeElement { field: self.field.clone(), terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), &(x * y));
            }
        }
        out
    }

    /// The greatest word of the support under the word order.
    pub fn leading(&self) -> Option<(&Word, &CycScalar)> {
        self.terms.iter().next_back()
    }

    /// The degree if the element is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, rank: usize) -> Option<Weight> {
        let mut it = self.terms.keys().map(|w| w.degree(rank));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, o: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, o: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

pub fn free_multiply(a: &FreeElement, b: &FreeElement) -> FreeElement {
    a.mul(b)
}

/// Memoized evaluation of the pairing theta(E_{w+}, F_{w-}).
pub struct Pairing {
    table: Arc<BicharTable>,
    right_cache: Mutex<HashMap<(Word, Word), CycScalar>>,
    left_cache: Mutex<HashMap<(Word, Word), CycScalar>>,
}

impl Pairing {
    pub fn new(table: Arc<BicharTable>) -> Self {
        Pairing { table, right_cache: Mutex::new(HashMap::new()), left_cache: Mutex::new(HashMap::new()) }
    }

    pub fn table(&self) -> &Arc<BicharTable> {
        &self.table
    }

    fn trivial(&self, a: &Word, b: &Word) -> Option<CycScalar> {
        let f = self.table.field();
        if a.len() != b.len() || a.degree(self.table.rank()) != b.degree(self.table.rank()) {
            return Some(CycScalar::zero(f));
        }
        if a.is_empty() {
            return Some(CycScalar::one(f));
        }
        None
    }

    /// Recursion peeling the last letter F_j of the F-word:
    /// theta(E_a, F_{w'} F_j) = sum_{r: a_r = j} chi(alpha_j, theta(a_{>r})) theta(E_{a without r}, F_{w'}).
    pub fn right(&self, a: &Word, b: &Word) -> CycScalar {
        if let Some(v) = self.trivial(a, b) {
            return v;
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.right_cache.lock().expect("pairing cache").get(&key) {
            return v.clone();
        }
        let l = self.table.rank();
        let j = *b.0.last().expect("nonempty") as usize;
        let rest = Word(b.0[..b.len() - 1].to_vec());
        let mut acc = CycScalar::zero(self.table.field());
        let mut after = Weight::zero(l);
        for r in (0..a.len()).rev() {
            if a.0[r] as usize == j {
                let c = self.table.chi(&Weight::simple(l, j), &after);
                let sub = self.right(&a.without(r), &rest);
                if !sub.is_zero() {
                    acc += &(&c * &sub);
                }
            }
            after = &after + &Weight::simple(l, a.0[r] as usize);
        }
        self.right_cache.lock().expect("pairing cache").insert(key, acc.clone());
        acc
    }

    /// Recursion peeling the last letter E_i of the E-word:
    /// theta(Z E_i, F_b) = sum_{r: b_r = i} prod_{s > r} chi(alpha_{b_s}, alpha_i) theta(Z, F_{b without r}).
    pub fn left(&self, a: &Word, b: &Word) -> CycScalar {
        if let Some(v) = self.trivial(a, b) {
            return v;
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.left_cache.lock().expect("pairing cache").get(&key) {
            return v.clone();
        }
        let l = self.table.rank();
        let i = *a.0.last().expect("nonempty") as usize;
        let rest = Word(a.0[..a.len() - 1].to_vec());
        let mut acc = CycScalar::zero(self.table.field());
        let mut after = Weight::zero(l);
        for r in (0..b.len()).rev() {
            if b.0[r] as usize == i {
                let c = self.table.chi(&after, &Weight::simple(l, i));
                let sub = self.left(&rest, &b.without(r));
                if !sub.is_zero() {
                    acc += &(&c * &sub);
                }
            }
            after = &after + &Weight::simple(l, b.0[r] as usize);
        }
        self.left_cache.lock().expect("pairing cache").insert(key, acc.clone());
        acc
    }

    /// Bilinear extension to free elements.
    pub fn elements(&self, x: &FreeElement, y: &FreeElement) -> CycScalar {
        let mut acc = CycScalar::zero(self.table.field());
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let v = self.right(a, b);
                if !v.is_zero() {
                    acc += &(&(c * d) * &v);
                }
            }
        }
        acc
    }
}

/// theta(E_{w+}, F_{w-}).
pub fn pairing(wp: &Word, wm: &Word, t: &BicharTable) -> CycScalar {
    Pairing::new(Arc::new(t.clone())).right(wp, wm)
}

/// The Gram matrix of the pairing on all words of one degree.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub degree: Weight,
    pub words: Vec<Word>,
    pub matrix: Vec<Vec<CycScalar>>,
}

impl GramBlock {
    pub fn rank(&self) -> usize {
        if self.words.is_empty() {
            return 0;
        }
        rank_bareiss(&self.matrix)
    }
}

pub fn gram_block(lambda: &Weight, t: &BicharTable) -> GramBlock {
    let p = Pairing::new(Arc::new(t.clone()));
    gram_block_with(lambda, &p)
}

pub fn gram_block_with(lambda: &Weight, p: &Pairing) -> GramBlock {
    let words = if lambda.is_zero() { vec![Word::empty()] } else { words_of_degree(lambda) };
    let matrix = words.iter().map(|a| words.iter().map(|b| p.right(a, b)).collect()).collect();
    GramBlock { degree: lambda.clone(), words, matrix }
}

/// Pivot data of one degree.
#[derive(Clone, Debug)]
struct Block {
    pivots: Vec<Word>,
    /// `deriv[j][k]`: coordinates of d_j(pivot k) in degree lambda - alpha_j.
    deriv: Vec<Vec<Vec<CycScalar>>>,
    /// `left[i][k]`: coordinates of E_i * pivot k in degree lambda + alpha_i.
    left: Vec<Option<Vec<Vec<CycScalar>>>>,
}

/// Degreewise model of U+ (for chi) up to a componentwise bound.
pub struct NicholsTable {
    table: Arc<BicharTable>,
    bound: Weight,
    blocks: HashMap<Weight, Block>,
}

impl std::fmt::Debug for NicholsTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NicholsTable").field("bound", &self.bound).finish()
    }
}

impl NicholsTable {
    pub fn new(table: Arc<BicharTable>, bound: &Weight) -> Result<Self> {
        let l = table.rank();
        if bound.rank() != l || !bound.is_nonneg() {
            return Err(Error::Invalid(format!("degree bound {bound} must be a nonnegative weight of rank {l}")));
        }
        let field = table.field().clone();
        let mut blocks: HashMap<Weight, Block> = HashMap::new();
        for lambda in Weight::box_below(bound) {
            if lambda.is_zero() {
                blocks.insert(
                    lambda.clone(),
                    Block { pivots: vec![Word::empty()], deriv: vec![Vec::new(); l], left: vec![None; l] },
                );
                continue;
            }
            let lower: Vec<Option<Weight>> =
                (0..l).map(|j| (lambda[j] > 0).then(|| &lambda - &Weight::simple(l, j))).collect();
            let dims: Vec<usize> = lower.iter().map(|m| m.as_ref().map_or(0, |m| blocks[m].pivots.len())).collect();
            let offsets: Vec<usize> = dims.iter().scan(0, |s, d| { let o = *s; *s += d; Some(o) }).collect();
            let width: usize = dims.iter().sum();

            // candidates E_i * p for pivots p of lambda - alpha_i, in descending word order
            let mut candidates: Vec<(Word, usize, usize)> = Vec::new();
            for (i, m) in lower.iter().enumerate() {
                if let Some(m) = m {
                    for (k, p) in blocks[m].pivots.iter().enumerate() {
                        candidates.push((Word::letter(i).concat(p), i, k));
                    }
                }
            }
            candidates.sort_by(|a, b| b.0.cmp(&a.0));

            let mut basis = IncrementalBasis::new(field.clone(), width);
            let mut pivots = Vec::new();
            let mut pivot_vectors: Vec<Vec<CycScalar>> = Vec::new();
            let mut results: Vec<(usize, usize, Reduction)> = Vec::new();
            for (w, i, k) in &candidates {
                let m = lower[*i].as_ref().expect("candidate degree");
                let v = Self::derivation_of_left_product(&table, &blocks, m, *i, *k, &lower, &offsets, width);
                let r = basis.insert(&v);
                if let Reduction::Added(_) = r {
                    pivots.push(w.clone());
                    pivot_vectors.push(v);
                }
                results.push((*i, *k, r));
            }
            let dim = pivots.len();
            // left multiplication matrices into this degree
            for (i, k, r) in results {
                let coords = match r {
                    Reduction::Added(idx) => {
                        let mut e = vec![CycScalar::zero(&field); dim];
                        e[idx] = CycScalar::one(&field);
                        e
                    }
                    Reduction::Dependent(c) => c,
                };
                let m = lower[i].as_ref().expect("candidate degree");
                let blk = blocks.get_mut(m).expect("lower block");
                let n = blk.pivots.len();
                let slot = blk.left[i].get_or_insert_with(|| vec![Vec::new(); n]);
                slot[k] = coords;
            }
            let deriv = (0..l)
                .map(|j| pivot_vectors.iter().map(|v| v[offsets[j]..offsets[j] + dims[j]].to_vec()).collect())
                .collect();
            blocks.insert(lambda.clone(), Block { pivots, deriv, left: vec![None; l] });
        }
        // Left products leaving the box are unavailable; products into a
        // zero-dimensional degree are recorded as empty coordinate vectors.
        for (deg, blk) in blocks.iter_mut() {
            for i in 0..l {
                let target = deg + &Weight::simple(l, i);
                if target.le(bound) && blk.left[i].is_none() {
                    blk.left[i] = Some(vec![Vec::new(); blk.pivots.len()]);
                }
            }
        }
        Ok(NicholsTable { table, bound: bound.clone(), blocks })
    }

    #[allow(clippy::too_many_arguments)]
    fn derivation_of_left_product(
        table: &BicharTable,
        blocks: &HashMap<Weight, Block>,
        m: &Weight,
        i: usize,
        k: usize,
        lower: &[Option<Weight>],
        offsets: &[usize],
        width: usize,
    ) -> Vec<CycScalar> {
        // d_j(E_i X) = delta_ij chi(alpha_i, deg X) X + E_i d_j(X)
        let l = table.rank();
        let field = table.field();
        let mut v = vec![CycScalar::zero(field); width];
        let src = &blocks[m];
        for j in 0..l {
            let Some(target) = &lower[j] else { continue };
            let off = offsets[j];
            if j == i {
                v[off + k] += &table.chi(&Weight::simple(l, i), m);
            }
            if m[j] > 0 {
                let dm = &src.deriv[j][k];
                let mid = m - &Weight::simple(l, j);
                debug_assert_eq!(&(&mid + &Weight::simple(l, i)), target);
                let Some(lm) = blocks[&mid].left[i].as_ref() else {
                    debug_assert!(dm.is_empty());
                    continue;
                };
                for (c, row) in dm.iter().zip(lm) {
                    if c.is_zero() {
                        continue;
                    }
                    for (t, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            v[off + t] += &(c * x);
                        }
                    }
                }
            }
        }
        v
    }

    pub fn table(&self) -> &Arc<BicharTable> {
        &self.table
    }

    pub fn bound(&self) -> &Weight {
        &self.bound
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.table.field()
    }

    fn block(&self, lambda: &Weight) -> Result<&Block> {
        if !lambda.is_nonneg() {
            return Err(Error::OutOfRange(format!("degree {lambda} is not in the positive cone")));
        }
        self.blocks.get(lambda).ok_or_else(|| Error::BoundExceeded { degree: lambda.clone(), bound: self.bound.clone() })
    }

    pub fn covers(&self, lambda: &Weight) -> bool {
        self.blocks.contains_key(lambda)
    }

    pub fn dim(&self, lambda: &Weight) -> Result<usize> {
        Ok(self.block(lambda)?.pivots.len())
    }

    pub fn pivots(&self, lambda: &Weight) -> Result<&[Word]> {
        Ok(&self.block(lambda)?.pivots)
    }

    /// All covered degrees, ordered by height then lexicographically.
    pub fn degrees(&self) -> Vec<Weight> {
        Weight::box_below(&self.bound)
    }

    /// Coordinates of E_i * X for X of degree lambda given in coordinates.
    pub fn left_mul(&self, i: usize, lambda: &Weight, x: &[CycScalar]) -> Result<Vec<CycScalar>> {
        let l = self.rank();
        let target = lambda + &Weight::simple(l, i);
        let blk = self.block(lambda)?;
        let Some(lm) = &blk.left[i] else {
            return Err(Error::BoundExceeded { degree: target, bound: self.bound.clone() });
        };
        let dim = self.dim(&target)?;
        let mut out = vec![CycScalar::zero(self.field()); dim];
        for (c, row) in x.iter().zip(lm) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o += &(c * v);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of E_w * X.
    pub fn word_times(&self, w: &Word, lambda: &Weight, x: &[CycScalar]) -> Result<Vec<CycScalar>> {
        let l = self.rank();
        let mut deg = lambda.clone();
        let mut cur = x.to_vec();
        for &c in w.0.iter().rev() {
            cur = self.left_mul(c as usize, &deg, &cur)?;
            deg = &deg + &Weight::simple(l, c as usize);
        }
        Ok(cur)
    }

    /// Coordinates of the class of the word E_w.
    pub fn word_coords(&self, w: &Word) -> Result<Vec<CycScalar>> {
        let l = self.rank();
        let deg = w.degree(l);
        self.block(&deg)?;
        self.word_times(w, &Weight::zero(l), &[CycScalar::one(self.field())])
    }

    /// Coordinates of a homogeneous free element of degree `lambda`.
    pub fn element_coords(&self, x: &FreeElement, lambda: &Weight) -> Result<Vec<CycScalar>> {
        let dim = self.dim(lambda)?;
        let mut out = vec![CycScalar::zero(self.field()); dim];
        for (w, c) in x.terms() {
            if &w.degree(self.rank()) != lambda {
                return Err(Error::Invalid(format!("element is not homogeneous of degree {lambda}")));
            }
            let v = self.word_coords(w)?;
            for (o, y) in out.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *o += &(c * y);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of d_j X in degree lambda - alpha_j.
    pub fn derivation(&self, j: usize, lambda: &Weight, x: &[CycScalar]) -> Result<Vec<CycScalar>> {
        let l = self.rank();
        let blk = self.block(lambda)?;
        if lambda[j] == 0 {
            return Ok(Vec::new());
        }
        let dim = self.dim(&(lambda - &Weight::simple(l, j)))?;
        let mut out = vec![CycScalar::zero(self.field()); dim];
        for (c, row) in x.iter().zip(&blk.deriv[j]) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o += &(c * v);
                }
            }
        }
        Ok(out)
    }

    /// Total dimension of U+ restricted to the bound box.
    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(|b| b.pivots.len()).sum()
    }
}

/// dim U+_lambda.
pub fn nichols_dim(lambda: &Weight, t: &BicharTable) -> Result<usize> {
    NicholsTable::new(Arc::new(t.clone()), lambda)?.dim(lambda)
}

/// The pivot words spanning U+_lambda, greedily chosen in descending word order.
pub fn nichols_basis(lambda: &Weight, t: &BicharTable) -> Result<Vec<Word>> {
    Ok(NicholsTable::new(Arc::new(t.clone()), lambda)?.pivots(lambda)?.to_vec())
}

/// Pivots chosen directly on the Gram matrix over all words of the degree.
pub fn gram_pivots(block: &GramBlock) -> Vec<Word> {
    let Some(first) = block.matrix.first().and_then(|r| r.first()) else { return Vec::new() };
    let mut order: Vec<usize> = (0..block.words.len()).collect();
    order.sort_by(|&a, &b| block.words[b].cmp(&block.words[a]));
    let mut basis = IncrementalBasis::new(first.field().clone(), block.words.len());
    order
        .into_iter()
        .filter(|&r| matches!(basis.insert(&block.matrix[r]), Reduction::Added(_)))
        .map(|r| block.words[r].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::super_letter;

    fn w(s: &str) -> Word {
        Word::parse(s, 9).unwrap()
    }

    fn table(n: u32, rows: &[&[&str]]) -> BicharTable {
        let f = CyclotomicField::get(n).unwrap();
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        BicharTable::from_literals(&f, &rows).unwrap()
    }

    fn a2() -> BicharTable {
        // q_ii = q, q_12 q_21 = q^{-1}, q generic (= 3)
        table(1, &[&["3", "1"], &["1/3", "3"]])
    }

    #[test]
    fn free_multiply_examples() {
        let f = CyclotomicField::get(1).unwrap();
        let x1 = FreeElement::letter(&f, 0);
        let x2 = FreeElement::letter(&f, 1);
        assert_eq!(x1.mul(&x2), FreeElement::from_word(&f, w("12")));
        let d = (&x1 - &x2).mul(&x1);
        assert_eq!(d.coeff(&w("11")), CycScalar::one(&f));
        assert_eq!(d.coeff(&w("21")), CycScalar::from_int(&f, -1));
        assert_eq!(d.terms().len(), 2);
        let t = a2();
        let s = super_letter(&w("12"), &t).unwrap().mul(&x1);
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.homogeneous_degree(2), Some(Weight(vec![2, 1])));
    }

    #[test]
    fn pairing_examples() {
        let t = table(5, &[&["z", "z^2"], &["z^3", "z^4"]]);
        let f = t.field().clone();
        assert!(pairing(&w("1"), &w("1"), &t).is_one());
        assert!(pairing(&w("1"), &w("2"), &t).is_zero());
        assert!(pairing(&w("12"), &w("12"), &t).is_one());
        assert_eq!(pairing(&w("12"), &w("21"), &t), CycScalar::zeta_pow(&f, 2));
        let q = t.entry(0, 0).clone();
        assert_eq!(pairing(&w("11"), &w("11"), &t), &CycScalar::one(&f) + &q);
        assert_eq!(pairing(&w("111"), &w("111"), &t), crate::scalars::q_factorial(3, &q));
        assert!(pairing(&w("12"), &w("1"), &t).is_zero());
    }

    #[test]
    fn dims_small() {
        let f = CyclotomicField::get(3).unwrap();
        let t = BicharTable::new(vec![vec![CycScalar::zeta_pow(&f, 1)]]).unwrap();
        assert_eq!(nichols_dim(&Weight(vec![3]), &t).unwrap(), 0);
        assert_eq!(nichols_dim(&Weight(vec![2]), &t).unwrap(), 1);
        assert_eq!(nichols_basis(&Weight(vec![3]), &t).unwrap(), Vec::<Word>::new());
        let t = a2();
        assert_eq!(nichols_dim(&Weight(vec![1, 1]), &t).unwrap(), 2);
        assert_eq!(nichols_basis(&Weight(vec![1, 1]), &t).unwrap(), vec![w("12"), w("21")]);
        assert_eq!(nichols_basis(&Weight(vec![0, 1]), &t).unwrap(), vec![w("2")]);
        assert_eq!(nichols_dim(&Weight(vec![0, 0]), &t).unwrap(), 1);
        assert_eq!(gram_block(&Weight(vec![1, 1]), &t).rank(), 2);
    }

    #[test]
    fn bound_exceeded() {
        let t = a2();
        let nt = NicholsTable::new(Arc::new(t), &Weight(vec![1, 1])).unwrap();
        assert!(matches!(nt.dim(&Weight(vec![2, 0])), Err(Error::BoundExceeded { .. })));
        assert!(matches!(nt.left_mul(0, &Weight(vec![1, 0]), &[CycScalar::one(nt.field())]), Err(Error::BoundExceeded { .. })));
    }
}
