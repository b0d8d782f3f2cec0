//! U(chi, pi) in triangular normal form F_y K_k L_l E_x, where y and x are
//! pivot words of U- and U+, with multiplication by generator rewriting.
//!
//! U- is modelled by the Nichols table of the transposed bicharacter: the
//! F-side skew derivation d'_i(F_b) = sum_{r: b_r = i} chi(theta(b_{>r}), alpha_i) F_{b without r}
//! is the E-side derivation for chi^t.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::Result;
use crate::nichols::NicholsTable;
use crate::scalars::{CycScalar, CyclotomicField};
use crate::weights::{BicharTable, Weight};
use crate::words::Word;

/// An element of U0: coefficients on K_lambda L_mu.
#[derive(Clone, Debug)]
pub struct U0Element {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<(Weight, Weight), CycScalar>,
}

impl PartialEq for U0Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for U0Element {}

impl U0Element {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        U0Element { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(field: &Arc<CyclotomicField>, k: Weight, l: Weight, c: CycScalar) -> Self {
        let mut u = Self::zero(field);
        u.add_term(k, l, &c);
        u
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn add_term(&mut self, k: Weight, l: Weight, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        let key = (k, l);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Weight, Weight), CycScalar> {
        &self.terms
    }

    pub fn coeff(&self, k: &Weight, l: &Weight) -> CycScalar {
        self.terms.get(&(k.clone(), l.clone())).cloned().unwrap_or_else(|| CycScalar::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.field);
        for ((k, l), x) in &self.terms {
            out.add_term(k.clone(), l.clone(), &(x * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((k, l), x) in &other.terms {
            out.add_term(k.clone(), l.clone(), x);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for ((k, l), x) in &self.terms {
            for ((k2, l2), y) in &other.terms {
                out.add_term(k + k2, l + l2, &(x * y));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((k, l), c)| json!({"k": k, "l": l, "coeff": c.to_string(), "coords": c.to_json_coords()}))
                .collect(),
        )
    }
}

/// F_{y} K_k L_l E_{x}, with y the `fi`-th pivot of U-_{-f} and x the `ei`-th pivot of U+_e.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub f: Weight,
    pub fi: usize,
    pub k: Weight,
    pub l: Weight,
    pub e: Weight,
    pub ei: usize,
}

#[derive(Clone, Debug)]
pub struct AlgebraElement {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Term, CycScalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        AlgebraElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn from_term(field: &Arc<CyclotomicField>, t: Term, c: CycScalar) -> Self {
        let mut a = Self::zero(field);
        a.add_term(t, &c);
        a
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Term, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Term, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(&self.field);
        for (t, x) in &self.terms {
            out.add_term(t.clone(), &(x * c));
        }
        out
    }

    /// The Z^l-degree of each term is e - f; returns it if all terms agree.
    pub fn homogeneous_degree(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|t| &t.e - &t.f);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

/// Keeps the terms with trivial F- and E-parts.
pub fn sh_project(a: &AlgebraElement) -> U0Element {
    let mut out = U0Element::zero(&a.field);
    for (t, c) in &a.terms {
        if t.f.is_zero() && t.e.is_zero() {
            out.add_term(t.k.clone(), t.l.clone(), c);
        }
    }
    out
}

type CommutatorData = (Vec<CycScalar>, Vec<CycScalar>);

/// Frozen pivot tables for U+ and U- together with the rewriting rules.
pub struct Algebra {
    chi: Arc<BicharTable>,
    plus: NicholsTable,
    minus: NicholsTable,
    commutators: Mutex<HashMap<(Weight, usize, usize), Arc<CommutatorData>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("bound", self.plus.bound()).finish()
    }
}

impl Algebra {
    pub fn new(chi: Arc<BicharTable>, bound: &Weight) -> Result<Self> {
        let plus = NicholsTable::new(chi.clone(), bound)?;
        let minus = NicholsTable::new(Arc::new(chi.transposed()), bound)?;
        Ok(Algebra { chi, plus, minus, commutators: Mutex::new(HashMap::new()) })
    }

    pub fn chi(&self) -> &Arc<BicharTable> {
        &self.chi
    }

    pub fn plus(&self) -> &NicholsTable {
        &self.plus
    }

    pub fn minus(&self) -> &NicholsTable {
        &self.minus
    }

    pub fn rank(&self) -> usize {
        self.chi.rank()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.chi.field()
    }

    pub fn bound(&self) -> &Weight {
        self.plus.bound()
    }

    fn zero_w(&self) -> Weight {
        Weight::zero(self.rank())
    }

    fn unit(&self, dim: usize, k: usize) -> Vec<CycScalar> {
        let mut v = vec![CycScalar::zero(self.field()); dim];
        v[k] = CycScalar::one(self.field());
        v
    }

    pub fn one(&self) -> AlgebraElement {
        self.kl(&self.zero_w(), &self.zero_w())
    }

    pub fn kl(&self, k: &Weight, l: &Weight) -> AlgebraElement {
        let z = self.zero_w();
        AlgebraElement::from_term(
            self.field(),
            Term { f: z.clone(), fi: 0, k: k.clone(), l: l.clone(), e: z, ei: 0 },
            CycScalar::one(self.field()),
        )
    }

    pub fn e(&self, i: usize) -> Result<AlgebraElement> {
        self.monomial(&Word::empty(), &self.zero_w(), &self.zero_w(), &Word::letter(i))
    }

    pub fn f(&self, i: usize) -> Result<AlgebraElement> {
        self.monomial(&Word::letter(i), &self.zero_w(), &self.zero_w(), &Word::empty())
    }

    /// F_{fw} K_k L_l E_{ew} for arbitrary words, reduced to pivots.
    pub fn monomial(&self, fw: &Word, k: &Weight, l: &Weight, ew: &Word) -> Result<AlgebraElement> {
        let r = self.rank();
        let fc = self.minus.word_coords(fw)?;
        let ec = self.plus.word_coords(ew)?;
        let (fd, ed) = (fw.degree(r), ew.degree(r));
        let mut out = AlgebraElement::zero(self.field());
        for (fi, a) in fc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ei, b) in ec.iter().enumerate() {
                if !b.is_zero() {
                    out.add_term(
                        Term { f: fd.clone(), fi, k: k.clone(), l: l.clone(), e: ed.clone(), ei },
                        &(a * b),
                    );
                }
            }
        }
        Ok(out)
    }

    /// The pivot words of a term.
    pub fn term_words(&self, t: &Term) -> Result<(Word, Word)> {
        Ok((self.minus.pivots(&t.f)?[t.fi].clone(), self.plus.pivots(&t.e)?[t.ei].clone()))
    }

    /// [E_i, F_y] = F_{K-part} K_{alpha_i} + F_{L-part} L_{alpha_i} for the pivot y.
    fn commutator(&self, f: &Weight, fi: usize, i: usize) -> Result<Arc<CommutatorData>> {
        let key = (f.clone(), fi, i);
        if let Some(v) = self.commutators.lock().expect("commutator cache").get(&key) {
            return Ok(v.clone());
        }
        let r = self.rank();
        let ai = Weight::simple(r, i);
        let y = self.minus.pivots(f)?[fi].clone();
        let target = f - &ai;
        let dim = if target.is_nonneg() { self.minus.dim(&target)? } else { 0 };
        let mut kv = vec![CycScalar::zero(self.field()); dim];
        let mut lv = vec![CycScalar::zero(self.field()); dim];
        let mut after = self.zero_w();
        for pos in (0..y.len()).rev() {
            if y.0[pos] as usize == i {
                let coords = self.minus.word_coords(&y.without(pos))?;
                let ck = -self.chi.chi(&ai, &-&after);
                let cl = self.chi.chi(&after, &ai);
                for (t, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        kv[t] += &(c * &ck);
                        lv[t] += &(c * &cl);
                    }
                }
            }
            after = &after + &Weight::simple(r, y.0[pos] as usize);
        }
        let v = Arc::new((kv, lv));
        self.commutators.lock().expect("commutator cache").insert(key, v.clone());
        Ok(v)
    }

    /// E_i * a.
    pub fn e_left(&self, i: usize, a: &AlgebraElement) -> Result<AlgebraElement> {
        let r = self.rank();
        let ai = Weight::simple(r, i);
        let mut out = AlgebraElement::zero(self.field());
        for (t, c) in &a.terms {
            // E_i F_y K_k L_l E_x = F_y (E_i K_k L_l) E_x + [E_i, F_y] K_k L_l E_x
            let swap = &self.chi.chi(&t.k, &ai).inv()? * &self.chi.chi(&ai, &t.l);
            let coeff = c * &swap;
            let dim = self.plus.dim(&t.e)?;
            let ev = self.plus.left_mul(i, &t.e, &self.unit(dim, t.ei))?;
            let ne = &t.e + &ai;
            for (ei, x) in ev.iter().enumerate() {
                if !x.is_zero() {
                    out.add_term(
                        Term { f: t.f.clone(), fi: t.fi, k: t.k.clone(), l: t.l.clone(), e: ne.clone(), ei },
                        &(&coeff * x),
                    );
                }
            }
            if t.f[i] > 0 {
                let data = self.commutator(&t.f, t.fi, i)?;
                let nf = &t.f - &ai;
                let kk = &t.k + &ai;
                let ll = &t.l + &ai;
                for (fi, (xk, xl)) in data.0.iter().zip(&data.1).enumerate() {
                    if !xk.is_zero() {
                        out.add_term(
                            Term { f: nf.clone(), fi, k: kk.clone(), l: t.l.clone(), e: t.e.clone(), ei: t.ei },
                            &(c * xk),
                        );
                    }
                    if !xl.is_zero() {
                        out.add_term(
                            Term { f: nf.clone(), fi, k: t.k.clone(), l: ll.clone(), e: t.e.clone(), ei: t.ei },
                            &(c * xl),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// F_i * a.
    pub fn f_left(&self, i: usize, a: &AlgebraElement) -> Result<AlgebraElement> {
        let ai = Weight::simple(self.rank(), i);
        let mut out = AlgebraElement::zero(self.field());
        for (t, c) in &a.terms {
            let dim = self.minus.dim(&t.f)?;
            let fv = self.minus.left_mul(i, &t.f, &self.unit(dim, t.fi))?;
            let nf = &t.f + &ai;
            for (fi, x) in fv.iter().enumerate() {
                if !x.is_zero() {
                    out.add_term(
                        Term { f: nf.clone(), fi, k: t.k.clone(), l: t.l.clone(), e: t.e.clone(), ei: t.ei },
                        &(c * x),
                    );
                }
            }
        }
        Ok(out)
    }

    /// K_k L_l * a.
    pub fn kl_left(&self, k: &Weight, l: &Weight, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.field());
        for (t, c) in &a.terms {
            let s = &self.chi.chi(k, &-&t.f) * &self.chi.chi(&t.f, l);
            out.add_term(
                Term { f: t.f.clone(), fi: t.fi, k: &t.k + k, l: &t.l + l, e: t.e.clone(), ei: t.ei },
                &(c * &s),
            );
        }
        out
    }

    /// F_y * a for a pivot (or any) word y.
    fn fword_left(&self, y: &Word, a: &AlgebraElement) -> Result<AlgebraElement> {
        let r = self.rank();
        let yd = y.degree(r);
        let mut out = AlgebraElement::zero(self.field());
        for (t, c) in &a.terms {
            let dim = self.minus.dim(&t.f)?;
            let fv = self.minus.word_times(y, &t.f, &self.unit(dim, t.fi))?;
            let nf = &t.f + &yd;
            for (fi, x) in fv.iter().enumerate() {
                if !x.is_zero() {
                    out.add_term(
                        Term { f: nf.clone(), fi, k: t.k.clone(), l: t.l.clone(), e: t.e.clone(), ei: t.ei },
                        &(c * x),
                    );
                }
            }
        }
        Ok(out)
    }

    /// E_x * a for a word x.
    pub fn eword_left(&self, x: &Word, a: &AlgebraElement) -> Result<AlgebraElement> {
        let mut cur = a.clone();
        for &c in x.0.iter().rev() {
            cur = self.e_left(c as usize, &cur)?;
        }
        Ok(cur)
    }

    /// F_x * a for a word x.
    pub fn fword_times(&self, x: &Word, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.fword_left(x, a)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut by_e: BTreeMap<(Weight, usize), Vec<(&Term, &CycScalar)>> = BTreeMap::new();
        for (t, c) in &a.terms {
            by_e.entry((t.e.clone(), t.ei)).or_default().push((t, c));
        }
        let mut out = AlgebraElement::zero(self.field());
        for ((e, ei), group) in by_e {
            let x = self.plus.pivots(&e)?[ei].clone();
            let eb = self.eword_left(&x, b)?;
            for (t, c) in group {
                let klb = self.kl_left(&t.k, &t.l, &eb);
                let y = self.minus.pivots(&t.f)?[t.fi].clone();
                let fb = self.fword_left(&y, &klb)?;
                for (tt, cc) in fb.terms {
                    out.add_term(tt, &(c * &cc));
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, a: &AlgebraElement) -> Result<Value> {
        let mut out = Vec::new();
        for (t, c) in &a.terms {
            let (fw, ew) = self.term_words(t)?;
            out.push(json!({
                "fword": fw.to_string(), "k": t.k, "l": t.l, "eword": ew.to_string(),
                "coeff": c.to_string(), "coords": c.to_json_coords()
            }));
        }
        Ok(Value::Array(out))
    }

    /// Human-readable rendering with pivot words.
    pub fn render(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(t, c)| {
                let (fw, ew) = self.term_words(t).unwrap_or_default();
                format!("({c}) F[{fw}] K{} L{} E[{ew}]", t.k, t.l)
            })
            .collect();
        parts.join(" + ")
    }
}

/// a * b in normal form.
pub fn multiply(alg: &Algebra, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    alg.multiply(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank1(q: &str) -> Algebra {
        let f = CyclotomicField::get(1).unwrap();
        let t = BicharTable::from_literals(&f, &[vec![q.to_string()]]).unwrap();
        Algebra::new(Arc::new(t), &Weight(vec![4])).unwrap()
    }

    #[test]
    fn commutator_relation() {
        let alg = rank1("2");
        let e = alg.e(0).unwrap();
        let f = alg.f(0).unwrap();
        let ef = alg.multiply(&e, &f).unwrap();
        let fe = alg.multiply(&f, &e).unwrap();
        let a = Weight(vec![1]);
        let z = Weight(vec![0]);
        let expected = fe.sub(&alg.kl(&a, &z)).add(&alg.kl(&z, &a));
        assert_eq!(ef, expected);
        let sh = sh_project(&ef);
        assert_eq!(sh.len(), 2);
        assert_eq!(sh.coeff(&a, &z), CycScalar::from_int(alg.field(), -1));
        assert!(sh.coeff(&z, &a).is_one());
    }

    #[test]
    fn k_commutation() {
        let alg = rank1("3");
        let lam = Weight(vec![2]);
        let z = Weight(vec![0]);
        let k = alg.kl(&lam, &z);
        let e = alg.e(0).unwrap();
        let ke = alg.multiply(&k, &e).unwrap();
        let ek = alg.multiply(&e, &k).unwrap();
        assert_eq!(ke, ek.scale(&CycScalar::from_int(alg.field(), 9)));
    }

    #[test]
    fn e_times_f_squared() {
        let alg = rank1("2");
        let f = alg.field().clone();
        let e = alg.e(0).unwrap();
        let f1 = alg.f(0).unwrap();
        let ff = alg.multiply(&f1, &f1).unwrap();
        let lhs = alg.multiply(&e, &ff).unwrap();
        let a = Weight(vec![1]);
        let z = Weight(vec![0]);
        let w1 = Word::letter(0);
        let w2 = Word(vec![0, 0]);
        let expected = alg
            .monomial(&w2, &z, &z, &w1)
            .unwrap()
            .sub(&alg.monomial(&w1, &a, &z, &Word::empty()).unwrap().scale(&(&CycScalar::from_int(&f, 3) * &CycScalar::from_int(&f, 2).inv().unwrap())))
            .add(&alg.monomial(&w1, &z, &a, &Word::empty()).unwrap().scale(&CycScalar::from_int(&f, 3)));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn sh_examples() {
        let alg = rank1("2");
        let k = alg.kl(&Weight(vec![1]), &Weight(vec![-2]));
        assert_eq!(sh_project(&k).len(), 1);
        let fke = alg.multiply(&alg.multiply(&alg.f(0).unwrap(), &k).unwrap(), &alg.e(0).unwrap()).unwrap();
        assert!(sh_project(&fke).is_zero());
    }
}
