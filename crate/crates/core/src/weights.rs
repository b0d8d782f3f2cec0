//! Weights in Z^l, the bicharacter chi, the homomorphisms omega and rho-hat,
//! and highest-weight functionals on the Cartan part.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{CycScalar, CyclotomicField};

/// An integer vector in the basis alpha_1, ..., alpha_l.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The simple root alpha_i (0-based index).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise >= 0.
    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Componentwise <= other.
    pub fn le(&self, other: &Weight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All weights 0 <= w <= bound, ordered by total height, then lexicographically.
    pub fn box_below(bound: &Weight) -> Vec<Weight> {
        let mut out = vec![Weight(vec![])];
        for &b in &bound.0 {
            let mut next = Vec::new();
            for w in &out {
                for c in 0..=b.max(-1) {
                    let mut v = w.0.clone();
                    v.push(c);
                    next.push(Weight(v));
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        assert_eq!(self.0.len(), o.0.len(), "weight rank mismatch");
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        assert_eq!(self.0.len(), o.0.len(), "weight rank mismatch");
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: &Weight) -> Weight {
        Weight(w.0.iter().map(|a| self * a).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

/// Generator values are stored either as an exponent of a fixed generator of
/// the roots of unity of the field, or as a general field element.
#[derive(Clone, Debug)]
enum Entry {
    Root(i64),
    General,
}

/// The bicharacter chi on Z^l, determined by q[i][j] = chi(alpha_i, alpha_j).
pub struct BicharTable {
    field: Arc<CyclotomicField>,
    q: Vec<Vec<CycScalar>>,
    entries: Vec<Vec<Entry>>,
    roots: Vec<CycScalar>,
    cache: Mutex<HashMap<(Weight, Weight), CycScalar>>,
}

impl fmt::Debug for BicharTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BicharTable").field("n", &self.field.conductor()).field("q", &self.q).finish()
    }
}

impl Clone for BicharTable {
    fn clone(&self) -> Self {
        BicharTable::new(self.q.clone()).expect("valid table")
    }
}

fn roots_of_unity(field: &Arc<CyclotomicField>) -> Vec<CycScalar> {
    let order = field.roots_of_unity_order();
    let z = CycScalar::zeta_pow(field, 1);
    let g = if field.conductor().is_multiple_of(2) { z } else { -z };
    let mut out = Vec::with_capacity(order as usize);
    let mut p = CycScalar::one(field);
    for _ in 0..order {
        out.push(p.clone());
        p = &p * &g;
    }
    out
}

impl BicharTable {
    pub fn new(q: Vec<Vec<CycScalar>>) -> Result<Self> {
        let l = q.len();
        if l == 0 {
            return Err(Error::Invalid("bicharacter table of rank 0".into()));
        }
        if q.iter().any(|row| row.len() != l) {
            return Err(Error::DimensionMismatch("bicharacter table must be square".into()));
        }
        let field = q[0][0].field().clone();
        for row in &q {
            for x in row {
                if x.conductor() != field.conductor() {
                    return Err(Error::ConductorMismatch(x.conductor(), field.conductor()));
                }
                if x.is_zero() {
                    return Err(Error::Invalid("bicharacter entries must be nonzero".into()));
                }
            }
        }
        let roots = roots_of_unity(&field);
        let entries = q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| match roots.iter().position(|r| r == x) {
                        Some(e) => Entry::Root(e as i64),
                        None => Entry::General,
                    })
                    .collect()
            })
            .collect();
        Ok(BicharTable { field, q, entries, roots, cache: Mutex::new(HashMap::new()) })
    }

    /// Parses an l x l matrix of scalar literals.
    pub fn from_literals(field: &Arc<CyclotomicField>, rows: &[Vec<String>]) -> Result<Self> {
        let q = rows
            .iter()
            .map(|r| r.iter().map(|s| CycScalar::parse(field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(q)
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// chi(alpha_i, alpha_j), 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &CycScalar {
        &self.q[i][j]
    }

    pub fn matrix(&self) -> &Vec<Vec<CycScalar>> {
        &self.q
    }

    /// The table of chi^t(a, b) = chi(b, a).
    pub fn transposed(&self) -> BicharTable {
        let l = self.rank();
        let q = (0..l).map(|i| (0..l).map(|j| self.q[j][i].clone()).collect()).collect();
        BicharTable::new(q).expect("transpose of a valid table")
    }

    /// chi(lambda, mu) = prod q[i][j]^(lambda_i mu_j).
    pub fn chi(&self, lambda: &Weight, mu: &Weight) -> CycScalar {
        assert_eq!(lambda.rank(), self.rank(), "weight rank mismatch");
        assert_eq!(mu.rank(), self.rank(), "weight rank mismatch");
        let order = self.roots.len() as i64;
        let mut root_exp = 0i64;
        let mut general: Vec<(usize, usize, i64)> = Vec::new();
        for (i, &a) in lambda.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in mu.0.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                match &self.entries[i][j] {
                    Entry::Root(e) => root_exp = (root_exp + e * a * b).rem_euclid(order),
                    Entry::General => general.push((i, j, a * b)),
                }
            }
        }
        let base = self.roots[root_exp as usize].clone();
        if general.is_empty() {
            return base;
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.cache.lock().expect("chi cache").get(&key) {
            return v.clone();
        }
        let mut v = base;
        for (i, j, e) in general {
            v = &v * &self.q[i][j].pow(e).expect("nonzero entry");
        }
        self.cache.lock().expect("chi cache").insert(key, v.clone());
        v
    }

    /// chi(alpha_i, mu) for a letter i.
    pub fn chi_letter_left(&self, i: usize, mu: &Weight) -> CycScalar {
        self.chi(&Weight::simple(self.rank(), i), mu)
    }

    /// rho-hat(nu) = prod_j q[j][j]^(nu_j).
    pub fn rho_hat(&self, nu: &Weight) -> CycScalar {
        let l = self.rank();
        let mut v = CycScalar::one(&self.field);
        for j in 0..l {
            if nu[j] != 0 {
                v = &v * &self.q[j][j].pow(nu[j]).expect("nonzero entry");
            }
        }
        v
    }
}

/// omega(alpha_i) for each generator; extended multiplicatively.
#[derive(Clone, Debug)]
pub struct OmegaTable {
    w: Vec<CycScalar>,
}

impl OmegaTable {
    pub fn new(w: Vec<CycScalar>) -> Result<Self> {
        if w.iter().any(CycScalar::is_zero) {
            return Err(Error::Invalid("omega values must be nonzero".into()));
        }
        Ok(OmegaTable { w })
    }

    pub fn trivial(field: &Arc<CyclotomicField>, rank: usize) -> Self {
        OmegaTable { w: vec![CycScalar::one(field); rank] }
    }

    pub fn values(&self) -> &[CycScalar] {
        &self.w
    }

    pub fn is_trivial(&self) -> bool {
        self.w.iter().all(CycScalar::is_one)
    }

    pub fn eval(&self, nu: &Weight) -> CycScalar {
        let mut v = CycScalar::one(self.w[0].field());
        for (x, &e) in self.w.iter().zip(&nu.0) {
            if e != 0 {
                v = &v * &x.pow(e).expect("nonzero omega");
            }
        }
        v
    }
}

/// The highest-weight functional Lambda_{lambda,mu} on K_{lambda'} L_{mu'}:
/// chi(lambda, mu') chi(lambda', mu) omega(lambda').
#[derive(Clone, Debug)]
pub struct HighestWeight {
    pub lambda: Weight,
    pub mu: Weight,
}

impl HighestWeight {
    pub fn new(lambda: Weight, mu: Weight) -> Self {
        HighestWeight { lambda, mu }
    }

    pub fn eval(&self, t: &BicharTable, w: &OmegaTable, k: &Weight, l: &Weight) -> CycScalar {
        lambda_functional(t, w, &self.lambda, &self.mu, k, l)
    }

    /// l_i = Lambda(K_{alpha_i} L_{-alpha_i}).
    pub fn l_value(&self, t: &BicharTable, w: &OmegaTable, i: usize) -> CycScalar {
        let a = Weight::simple(t.rank(), i);
        self.eval(t, w, &a, &-&a)
    }
}

pub fn chi_eval(t: &BicharTable, lambda: &Weight, mu: &Weight) -> CycScalar {
    t.chi(lambda, mu)
}

pub fn rho_hat(t: &BicharTable, nu: &Weight) -> CycScalar {
    t.rho_hat(nu)
}

pub fn lambda_functional(
    t: &BicharTable,
    w: &OmegaTable,
    lambda: &Weight,
    mu: &Weight,
    k: &Weight,
    l: &Weight,
) -> CycScalar {
    &(&t.chi(lambda, l) * &t.chi(k, mu)) * &w.eval(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> BicharTable {
        // zeta = xi^5, q = xi^2, chi(1,2) = 1, chi(2,1) = q^{-1}
        let f = CyclotomicField::get(15).unwrap();
        let lit = |s: &str| s.to_string();
        BicharTable::from_literals(&f, &[vec![lit("z^5"), lit("1")], vec![lit("z^13"), lit("z^2")]]).unwrap()
    }

    #[test]
    fn chi_basics() {
        let t = z3_table();
        let f = t.field().clone();
        assert!(t.chi(&Weight::zero(2), &Weight(vec![3, -1])).is_one());
        assert_eq!(t.chi(&Weight::simple(2, 1), &Weight::simple(2, 0)), CycScalar::zeta_pow(&f, 13));
        let b2 = Weight(vec![2, 1]);
        // zeta q^{-1} = xi^3
        assert_eq!(t.chi(&b2, &b2), CycScalar::zeta_pow(&f, 3));
        assert_eq!(t.rho_hat(&b2), CycScalar::zeta_pow(&f, 12));
    }

    #[test]
    fn general_entries() {
        let f = CyclotomicField::get(1).unwrap();
        let t = BicharTable::new(vec![vec![CycScalar::from_int(&f, 2)]]).unwrap();
        assert_eq!(t.chi(&Weight(vec![2]), &Weight(vec![-3])).as_rational().unwrap().to_string(), "1/64");
        assert!(BicharTable::new(vec![vec![CycScalar::zero(&f)]]).is_err());
    }

    #[test]
    fn rank_one_l_value() {
        let f = CyclotomicField::get(1).unwrap();
        let q = CycScalar::from_int(&f, 3);
        let t = BicharTable::new(vec![vec![q.clone()]]).unwrap();
        let w = OmegaTable::trivial(&f, 1);
        let hw = HighestWeight::new(Weight(vec![1]), Weight(vec![4]));
        assert_eq!(hw.l_value(&t, &w, 0), q.pow(3).unwrap());
        assert!(hw.eval(&t, &w, &Weight(vec![0]), &Weight(vec![0])).is_one());
    }

    #[test]
    fn z3_l_values() {
        let t = z3_table();
        let f = t.field().clone();
        let w = OmegaTable::trivial(&f, 2);
        let hw = HighestWeight::new(Weight(vec![0, 0]), Weight(vec![0, 1]));
        assert!(hw.l_value(&t, &w, 0).is_one());
        assert_eq!(hw.l_value(&t, &w, 1), CycScalar::zeta_pow(&f, 2));
    }

    #[test]
    fn box_order() {
        let b = Weight::box_below(&Weight(vec![1, 1]));
        assert_eq!(b, vec![Weight(vec![0, 0]), Weight(vec![0, 1]), Weight(vec![1, 0]), Weight(vec![1, 1])]);
    }
}
