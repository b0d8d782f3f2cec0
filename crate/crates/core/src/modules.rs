//! Simple highest-weight modules L(Lambda), their characters, and the
//! h-profile of the rank-two Z/3Z example.
//!
//! L(Lambda) is built weight space by weight space: L_nu is spanned by the
//! vectors F_i b for basis vectors b of L_{nu - alpha_i}, and for nu != 0 the
//! map x -> (E_j x)_j into the lower weight spaces is injective on L_nu.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{sh_project, Algebra, U0Element};
use crate::error::{Error, Result};
use crate::linalg::{rank_gauss, IncrementalBasis, Reduction};
use crate::scalars::{char_order, discrete_log, CycScalar};
use crate::weights::{BicharTable, HighestWeight, OmegaTable, Weight};
use crate::words::Word;

/// Lambda restricted to the generators: Lambda(K_{alpha_i}) and Lambda(L_{alpha_i}).
#[derive(Clone, Debug)]
pub struct GeneratorValues {
    pub k: Vec<CycScalar>,
    pub l: Vec<CycScalar>,
}

impl GeneratorValues {
    pub fn from_highest_weight(t: &BicharTable, w: &OmegaTable, hw: &HighestWeight) -> Self {
        let r = t.rank();
        let z = Weight::zero(r);
        let k = (0..r).map(|i| hw.eval(t, w, &Weight::simple(r, i), &z)).collect();
        let l = (0..r).map(|i| hw.eval(t, w, &z, &Weight::simple(r, i))).collect();
        GeneratorValues { k, l }
    }
}

/// Lambda on a U0 element.
pub fn apply_functional(t: &BicharTable, w: &OmegaTable, hw: &HighestWeight, u: &U0Element) -> CycScalar {
    let mut acc = CycScalar::zero(t.field());
    for ((k, l), c) in u.terms() {
        acc += &(c * &hw.eval(t, w, k, l));
    }
    acc
}

struct ModBlock {
    words: Vec<Word>,
    /// e[j][b]: coordinates of E_j b in L_{nu - alpha_j}.
    e: Vec<Vec<Vec<CycScalar>>>,
    /// f[i][b]: coordinates of F_i b in L_{nu + alpha_i}, when that space is built.
    f: Vec<Option<Vec<Vec<CycScalar>>>>,
}

/// The weight spaces L_nu (nu the depth below the highest weight) inside a box.
pub struct HighestWeightModule {
    chi: Arc<BicharTable>,
    values: GeneratorValues,
    bound: Weight,
    blocks: BTreeMap<Weight, ModBlock>,
}

impl HighestWeightModule {
    pub fn new(chi: Arc<BicharTable>, values: GeneratorValues, bound: &Weight) -> Result<Self> {
        let r = chi.rank();
        if bound.rank() != r || !bound.is_nonneg() {
            return Err(Error::Invalid(format!("depth bound {bound} must be a nonnegative weight of rank {r}")));
        }
        if values.k.len() != r || values.l.len() != r {
            return Err(Error::DimensionMismatch("generator values must have one entry per simple root".into()));
        }
        let field = chi.field().clone();
        let mut m = HighestWeightModule { chi, values, bound: bound.clone(), blocks: BTreeMap::new() };
        for nu in Weight::box_below(bound) {
            if nu.is_zero() {
                m.blocks.insert(nu, ModBlock { words: vec![Word::empty()], e: vec![Vec::new(); r], f: vec![None; r] });
                continue;
            }
            let lower: Vec<Option<Weight>> = (0..r).map(|j| (nu[j] > 0).then(|| &nu - &Weight::simple(r, j))).collect();
            let dims: Vec<usize> = lower.iter().map(|x| x.as_ref().map_or(0, |x| m.blocks[x].words.len())).collect();
            let offsets: Vec<usize> = dims.iter().scan(0, |s, d| { let o = *s; *s += d; Some(o) }).collect();
            let width: usize = dims.iter().sum();

            let mut candidates: Vec<(Word, usize, usize)> = Vec::new();
            for (i, low) in lower.iter().enumerate() {
                if let Some(low) = low {
                    for (b, w) in m.blocks[low].words.iter().enumerate() {
                        candidates.push((Word::letter(i).concat(w), i, b));
                    }
                }
            }
            candidates.sort_by(|a, b| b.0.cmp(&a.0));

            let mut basis = IncrementalBasis::new(field.clone(), width);
            let mut words = Vec::new();
            let mut vectors: Vec<Vec<CycScalar>> = Vec::new();
            let mut results = Vec::new();
            for (w, i, b) in &candidates {
                let v = m.e_of_f(&lower, &offsets, width, *i, *b)?;
                let red = basis.insert(&v);
                if let Reduction::Added(_) = red {
                    words.push(w.clone());
                    vectors.push(v);
                }
                results.push((*i, *b, red));
            }
            let dim = words.len();
            for (i, b, red) in results {
                let coords = match red {
                    Reduction::Added(idx) => {
                        let mut e = vec![CycScalar::zero(&field); dim];
                        e[idx] = CycScalar::one(&field);
                        e
                    }
                    Reduction::Dependent(c) => c,
                };
                let low = lower[i].as_ref().expect("candidate degree");
                let blk = m.blocks.get_mut(low).expect("lower block");
                let n = blk.words.len();
                blk.f[i].get_or_insert_with(|| vec![Vec::new(); n])[b] = coords;
            }
            let e = (0..r).map(|j| vectors.iter().map(|v| v[offsets[j]..offsets[j] + dims[j]].to_vec()).collect()).collect();
            m.blocks.insert(nu.clone(), ModBlock { words, e, f: vec![None; r] });
        }
        for (nu, blk) in m.blocks.iter_mut() {
            for i in 0..r {
                if (nu + &Weight::simple(r, i)).le(bound) && blk.f[i].is_none() {
                    blk.f[i] = Some(vec![Vec::new(); blk.words.len()]);
                }
            }
        }
        Ok(m)
    }

    pub fn from_highest_weight(
        chi: Arc<BicharTable>,
        w: &OmegaTable,
        hw: &HighestWeight,
        bound: &Weight,
    ) -> Result<Self> {
        let values = GeneratorValues::from_highest_weight(&chi, w, hw);
        Self::new(chi, values, bound)
    }

    /// (E_j F_i b)_j for the basis vector b of L_{nu - alpha_i}.
    fn e_of_f(
        &self,
        lower: &[Option<Weight>],
        offsets: &[usize],
        width: usize,
        i: usize,
        b: usize,
    ) -> Result<Vec<CycScalar>> {
        let r = self.chi.rank();
        let field = self.chi.field();
        let mut v = vec![CycScalar::zero(field); width];
        let src = lower[i].as_ref().expect("candidate degree");
        for j in 0..r {
            if lower[j].is_none() {
                continue;
            }
            let off = offsets[j];
            // E_j F_i b = F_i E_j b + delta_ij [E_i, F_i] b
            if j == i {
                v[off + b] += &self.h_value(i, src);
            }
            if src[j] > 0 {
                let eb = &self.blocks[src].e[j][b];
                if eb.iter().all(CycScalar::is_zero) {
                    continue;
                }
                let mid = src - &Weight::simple(r, j);
                let Some(fm) = self.blocks[&mid].f[i].as_ref() else {
                    return Err(Error::Consistency(format!("missing F action at depth {mid}")));
                };
                for (c, row) in eb.iter().zip(fm) {
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
        Ok(v)
    }

    /// The scalar by which -K_{alpha_i} + L_{alpha_i} acts on L_nu.
    pub fn h_value(&self, i: usize, nu: &Weight) -> CycScalar {
        let ai = Weight::simple(self.chi.rank(), i);
        let k = &self.chi.chi(&ai, &-nu) * &self.values.k[i];
        let l = &self.chi.chi(nu, &ai) * &self.values.l[i];
        &l - &k
    }

    pub fn bound(&self) -> &Weight {
        &self.bound
    }

    pub fn dim(&self, nu: &Weight) -> Option<usize> {
        self.blocks.get(nu).map(|b| b.words.len())
    }

    /// F-words whose images F_w v form the chosen basis of L_nu.
    pub fn basis_words(&self, nu: &Weight) -> Option<&[Word]> {
        self.blocks.get(nu).map(|b| b.words.as_slice())
    }

    /// Matrix of E_j : L_nu -> L_{nu - alpha_j}, one row per basis vector of L_nu.
    pub fn e_matrix(&self, j: usize, nu: &Weight) -> Option<&[Vec<CycScalar>]> {
        let b = self.blocks.get(nu)?;
        (nu[j] > 0).then(|| b.e[j].as_slice())
    }

    /// Matrix of F_i : L_nu -> L_{nu + alpha_i}, one row per basis vector of L_nu.
    pub fn f_matrix(&self, i: usize, nu: &Weight) -> Option<&[Vec<CycScalar>]> {
        self.blocks.get(nu)?.f[i].as_deref()
    }

    pub fn character(&self, hw: &HighestWeight) -> CharacterTable {
        let mut mult = BTreeMap::new();
        for (nu, b) in &self.blocks {
            if !b.words.is_empty() {
                mult.insert(nu.clone(), b.words.len() as u64);
            }
        }
        // A nonzero weight space outside the box would be reached from a
        // nonzero weight space on one of the outer faces.
        let complete = self.blocks.iter().all(|(nu, b)| {
            b.words.is_empty() || !(0..nu.rank()).any(|i| nu[i] == self.bound[i])
        });
        CharacterTable {
            lambda: hw.lambda.clone(),
            mu: hw.mu.clone(),
            mult,
            complete,
            depth_bound: self.bound.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub lambda: Weight,
    pub mu: Weight,
    pub mult: BTreeMap<Weight, u64>,
    pub complete: bool,
    pub depth_bound: Weight,
}

impl CharacterTable {
    pub fn m(&self, nu: &Weight) -> u64 {
        self.mult.get(nu).copied().unwrap_or(0)
    }

    /// Sum of the multiplicities found inside the depth box.
    pub fn total_dim(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn support(&self) -> Vec<Weight> {
        self.mult.keys().cloned().collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda,
            "mu": self.mu,
            "dims": self.mult.iter().map(|(nu, m)| json!({"nu": nu, "m": m})).collect::<Vec<_>>(),
            "complete": self.complete,
            "total_dim": if self.complete { json!(self.total_dim()) } else { Value::Null },
            "depth_bound": self.depth_bound,
        })
    }
}

pub fn character(
    t: &Arc<BicharTable>,
    w: &OmegaTable,
    hw: &HighestWeight,
    depth_bound: &Weight,
) -> Result<CharacterTable> {
    Ok(HighestWeightModule::from_highest_weight(t.clone(), w, hw, depth_bound)?.character(hw))
}

/// Lambda(Sh(E_a F_b)) over pivot words a of U+_nu and b of U-_{-nu}.
pub fn contravariant_matrix(
    alg: &Algebra,
    w: &OmegaTable,
    hw: &HighestWeight,
    nu: &Weight,
) -> Result<Vec<Vec<CycScalar>>> {
    let t = alg.chi();
    let z = Weight::zero(t.rank());
    let rows = alg.plus().pivots(nu)?.to_vec();
    let cols = alg.minus().pivots(nu)?.to_vec();
    let fs: Vec<_> = cols.iter().map(|b| alg.monomial(b, &z, &z, &Word::empty())).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(rows.len());
    for a in &rows {
        let mut row = Vec::with_capacity(cols.len());
        for fb in &fs {
            let prod = alg.eword_left(a, fb)?;
            row.push(apply_functional(t, w, hw, &sh_project(&prod)));
        }
        out.push(row);
    }
    Ok(out)
}

pub fn contravariant_rank(alg: &Algebra, w: &OmegaTable, hw: &HighestWeight, nu: &Weight) -> Result<usize> {
    Ok(rank_gauss(&contravariant_matrix(alg, w, hw, nu)?))
}

/// The finite-dimensional members of a window of highest weights, with dimensions.
pub fn fin_window(
    t: &Arc<BicharTable>,
    w: &OmegaTable,
    window: &[(Weight, Weight)],
    depth_bound: &Weight,
) -> Result<Vec<(Weight, Weight, u64)>> {
    let mut out = Vec::new();
    for (lambda, mu) in window {
        let hw = HighestWeight::new(lambda.clone(), mu.clone());
        let ct = character(t, w, &hw, depth_bound)?;
        if ct.complete {
            out.push((lambda.clone(), mu.clone(), ct.total_dim()));
        }
    }
    Ok(out)
}

/// Edge directions of the octagon in depth coordinates:
/// alpha_2, beta_3, beta_2, beta_1 and their negatives.
fn octagon_steps() -> [[i64; 2]; 8] {
    [[0, 1], [1, 1], [2, 1], [1, 0], [0, -1], [-1, -1], [-2, -1], [-1, 0]]
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Vertices P_0 = 0, P_t = sum_{s <= t} h_s g_s.
fn vertices(h: &[i64; 8]) -> [[i64; 2]; 9] {
    let g = octagon_steps();
    let mut p = [[0i64; 2]; 9];
    for t in 0..8 {
        p[t + 1] = [p[t][0] + h[t] * g[t][0], p[t][1] + h[t] * g[t][1]];
    }
    p
}

/// Lattice points of the broken line B_h.
pub fn broken_line(h: &[i64; 8]) -> Vec<Weight> {
    let g = octagon_steps();
    let p = vertices(h);
    let mut pts = Vec::new();
    for t in 0..8 {
        for u in 0..=h[t] {
            let x = Weight(vec![p[t][0] + u * g[t][0], p[t][1] + u * g[t][1]]);
            if !pts.contains(&x) {
                pts.push(x);
            }
        }
    }
    pts
}

/// Membership in the open region C_h bounded by the lines through the octagon edges.
pub fn in_open_octagon(h: &[i64; 8], x: &Weight) -> bool {
    let g = octagon_steps();
    let p = vertices(h);
    (0..8).all(|t| {
        let gp = g[(t + 2) % 8];
        let d = [x[0] - p[t][0], x[1] - p[t][1]];
        // x - P = a g_t + b g'_t; interior side is b > 0
        let b = cross(g[t], d) * cross(g[t], gp).signum();
        b > 0
    })
}

fn h_profile_fits(h: &[i64; 8], ct: &CharacterTable) -> bool {
    let b = broken_line(h);
    for x in &b {
        if x.is_nonneg() && ct.m(x) != 1 {
            return false;
        }
    }
    ct.mult.keys().all(|nu| b.contains(nu) || in_open_octagon(h, nu))
}

/// The unique h with closed octagon whose broken line carries multiplicity one
/// and which, together with its interior, covers the support.
pub fn z3_h_profile(ct: &CharacterTable, t: &BicharTable, cap: Option<i64>) -> Result<[i64; 8]> {
    if t.rank() != 2 {
        return Err(Error::Invalid("h-profile needs rank 2".into()));
    }
    let zeta = t.entry(0, 0);
    let one = CycScalar::one(t.field());
    if !(&(&(zeta * zeta) + zeta) + &one).is_zero() {
        return Err(Error::Invalid("h-profile needs chi(alpha_1, alpha_1) to be a primitive cube root of unity".into()));
    }
    if !ct.complete {
        return Err(Error::IncompleteCharacter);
    }
    let cap = cap.unwrap_or_else(|| ct.mult.keys().map(Weight::height).max().unwrap_or(0) + 1);
    let mut found = Vec::new();
    for h1 in 0..=cap {
        for h3 in 0..=cap {
            for evens in 0..81 {
                let h2 = evens % 3;
                let h4 = (evens / 3) % 3;
                let h6 = (evens / 9) % 3;
                let h8 = (evens / 27) % 3;
                // closing: (h2-h6) + 2(h3-h7) + (h4-h8) = 0 and (h1-h5) + (h2-h6) + (h3-h7) = 0
                let s = (h2 - h6) + (h4 - h8);
                if s % 2 != 0 {
                    continue;
                }
                let h7 = h3 + s / 2;
                let h5 = h1 + (h2 - h6) + (h3 - h7);
                if !(0..=cap).contains(&h5) || !(0..=cap).contains(&h7) {
                    continue;
                }
                let h = [h1, h2, h3, h4, h5, h6, h7, h8];
                if h_profile_fits(&h, ct) {
                    found.push(h);
                }
            }
        }
    }
    let h = match found.len() {
        0 => return Err(Error::NoSolution("no h-profile fits the character".into())),
        1 => found[0],
        n => return Err(Error::NotUnique(n)),
    };
    check_h_constraints(&h, ct, t)?;
    Ok(h)
}

fn check_h_constraints(h: &[i64; 8], ct: &CharacterTable, t: &BicharTable) -> Result<()> {
    let q = t.entry(1, 1);
    let oq = char_order(q)? as i64;
    if oq != 0 && [0, 2, 4, 6].iter().any(|&s| h[s] > oq - 1) {
        return Err(Error::Consistency(format!("odd h entries exceed o(q) - 1 in {h:?}")));
    }
    if oq != 0 {
        let hw = HighestWeight::new(ct.lambda.clone(), ct.mu.clone());
        let w = OmegaTable::trivial(t.field(), 2);
        let l1 = hw.l_value(t, &w, 0);
        let l2 = hw.l_value(t, &w, 1);
        if discrete_log(&l2, q)?.is_some() && (h[7] != h[1] || h[5] != h[3]) {
            return Err(Error::Consistency(format!("l_2 in H_1 but h_8 != h_2 or h_6 != h_4 in {h:?}")));
        }
        let zq = t.entry(0, 0).div(q)?;
        if discrete_log(&(&(&l1 * &l1) * &l2), &zq)?.is_some() && (h[7] != h[5] || h[1] != h[3]) {
            return Err(Error::Consistency(format!("l_1^2 l_2 in H_2 but h_8 != h_6 or h_2 != h_4 in {h:?}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CyclotomicField;

    fn rank1(q: &str) -> Arc<BicharTable> {
        let f = CyclotomicField::get(1).unwrap();
        Arc::new(BicharTable::from_literals(&f, &[vec![q.to_string()]]).unwrap())
    }

    #[test]
    fn rank_one_dimensions() {
        let t = rank1("3");
        let w = OmegaTable::trivial(t.field(), 1);
        for m in 0..=4i64 {
            // l_1 = chi(lambda, -alpha) chi(alpha, mu) = q^{b-a}
            let hw = HighestWeight::new(Weight(vec![0]), Weight(vec![m]));
            let ct = character(&t, &w, &hw, &Weight(vec![8])).unwrap();
            assert!(ct.complete);
            assert_eq!(ct.total_dim(), (m + 1) as u64);
            assert!(ct.mult.values().all(|&x| x == 1));
        }
        let hw = HighestWeight::new(Weight(vec![1]), Weight(vec![0]));
        let ct = character(&t, &w, &hw, &Weight(vec![8])).unwrap();
        assert!(!ct.complete);
    }

    #[test]
    fn trivial_profile() {
        let f = CyclotomicField::get(15).unwrap();
        let lit = |s: &str| s.to_string();
        let t = Arc::new(
            BicharTable::from_literals(&f, &[vec![lit("z^5"), lit("1")], vec![lit("z^13"), lit("z^2")]]).unwrap(),
        );
        let w = OmegaTable::trivial(&f, 2);
        let hw = HighestWeight::new(Weight(vec![0, 0]), Weight(vec![0, 0]));
        let ct = character(&t, &w, &hw, &Weight(vec![3, 3])).unwrap();
        assert!(ct.complete);
        assert_eq!(ct.support(), vec![Weight(vec![0, 0])]);
        assert_eq!(z3_h_profile(&ct, &t, None).unwrap(), [0; 8]);
    }

    #[test]
    fn octagon_geometry() {
        let h = [1, 0, 4, 1, 0, 1, 4, 0];
        let p = vertices(&h);
        assert_eq!(p[8], [0, 0]);
        assert_eq!(p[3], [8, 5]);
        assert!(in_open_octagon(&h, &Weight(vec![3, 2])));
        assert!(!in_open_octagon(&h, &Weight(vec![4, 3])));
        assert!(!in_open_octagon(&h, &Weight(vec![0, 1])));
        assert!(!in_open_octagon(&h, &Weight(vec![1, 3])));
        assert!(broken_line(&h).contains(&Weight(vec![4, 3])));
    }
}
