//! The skew center Z^{chi,pi,omega}: the (e1)-(e4) conditions on Harish-Chandra
//! images, the images Z_{lambda,mu} attached to finite-dimensional modules,
//! window solution spaces, and reconstruction of central elements.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{sh_project, Algebra, AlgebraElement, Term, U0Element};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::modules::{character, CharacterTable};
use crate::roots::RootSystem;
use crate::scalars::{char_order, discrete_log, CycScalar};
use crate::weights::{BicharTable, HighestWeight, OmegaTable, Weight};

pub type Point = (Weight, Weight);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    E1,
    E2,
    E3,
    E4,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::E1 => "e1",
            Branch::E2 => "e2",
            Branch::E3 => "e3",
            Branch::E4 => "e4",
        }
    }
}

/// Outcome of one branch of the conditions for one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCheck {
    pub beta: Weight,
    pub branch: Branch,
    pub instances: usize,
    /// First violation: the point (lambda, mu) and the exponent t involved.
    pub violation: Option<(Point, i64)>,
}

impl BranchCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "beta": self.beta,
            "branch": self.branch.name(),
            "status": if self.passed() { "pass" } else { "fail" },
            "instances": self.instances,
            "witness": self.violation.as_ref().map(|((l, m), t)| json!({"lambda": l, "mu": m, "t": t})),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub beta: Weight,
    pub checks: Vec<BranchCheck>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(BranchCheck::passed)
    }

    pub fn first_violation(&self) -> Option<&BranchCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// q_beta, c_beta and rho-hat(beta) for one root.
struct RootData {
    beta: Weight,
    q: CycScalar,
    c: i64,
    rho: CycScalar,
}

impl RootData {
    fn new(t: &BicharTable, beta: &Weight) -> Result<Self> {
        let q = t.chi(beta, beta);
        let c = char_order(&q)? as i64;
        Ok(RootData { beta: beta.clone(), q, c, rho: t.rho_hat(beta) })
    }

    /// omega(beta) chi(beta, mu) / chi(lambda, beta).
    fn ratio(&self, t: &BicharTable, w: &OmegaTable, p: &Point) -> Result<CycScalar> {
        (&w.eval(&self.beta) * &t.chi(&self.beta, &p.1)).div(&t.chi(&p.0, &self.beta))
    }

    fn shift(&self, p: &Point, s: i64) -> Point {
        let d = s * &self.beta;
        (&p.0 + &d, &p.1 - &d)
    }

    /// Canonical point of the beta-line through p and the position of p on it.
    fn line_of(&self, p: &Point) -> (Point, i64) {
        let j = self.beta.0.iter().position(|&x| x != 0).expect("nonzero root");
        let s = p.0[j].div_euclid(self.beta[j]);
        (self.shift(p, -s), s)
    }

    fn rho_pow(&self, e: i64) -> CycScalar {
        self.rho.pow(e).expect("rho-hat is nonzero")
    }
}

/// The linear conditions of one root, as a list of (branch, point, t, equation),
/// where an equation maps points to coefficients and must vanish.
type Equation = BTreeMap<Point, CycScalar>;

fn root_equations(
    t: &BicharTable,
    w: &OmegaTable,
    rd: &RootData,
    points: &BTreeSet<Point>,
) -> Result<Vec<(Branch, Point, i64, Equation)>> {
    let field = t.field();
    let mut out = Vec::new();
    if rd.c == 0 {
        for p in points {
            let r = rd.ratio(t, w, p)?;
            let tt = if rd.q.is_one() {
                r.is_one().then_some(0)
            } else {
                discrete_log(&r, &rd.q)?
            };
            match tt {
                None => {
                    let mut eq = Equation::new();
                    eq.insert(p.clone(), CycScalar::one(field));
                    out.push((Branch::E2, p.clone(), 0, eq));
                }
                Some(0) => {}
                Some(s) if !rd.q.is_one() => {
                    // a(p + s beta) - rho^s a(p) = 0
                    let mut eq = Equation::new();
                    eq.insert(rd.shift(p, s), CycScalar::one(field));
                    eq.insert(p.clone(), -rd.rho_pow(s));
                    out.push((Branch::E1, p.clone(), s, eq));
                }
                Some(_) => {}
            }
        }
        return Ok(out);
    }
    if rd.c == 1 {
        return Ok(out);
    }
    // c >= 2: group by beta-lines; conditions depend on the base point modulo c beta.
    let mut lines: BTreeMap<Point, Vec<(i64, Point)>> = BTreeMap::new();
    for p in points {
        let (base, s) = rd.line_of(p);
        lines.entry(base).or_default().push((s, p.clone()));
    }
    for (base, members) in &lines {
        for u in 0..rd.c {
            let p0 = rd.shift(base, u);
            let r = rd.ratio(t, w, &p0)?;
            let (branch, ts): (Branch, Vec<i64>) = match discrete_log(&r, &rd.q)? {
                Some(k) if k % rd.c != 0 => (Branch::E3, vec![k % rd.c]),
                Some(_) => continue,
                None => (Branch::E4, (1..rd.c).collect()),
            };
            for tt in ts {
                // sum_{s = u + t mod c} a(s) rho^{-(s-u)} - sum_{s = u mod c} a(s) rho^{-(s-u)}
                let mut eq = Equation::new();
                for (s, p) in members {
                    let k = (s - u).rem_euclid(rd.c);
                    let sign = if k == tt {
                        CycScalar::one(field)
                    } else if k == 0 {
                        -CycScalar::one(field)
                    } else {
                        continue;
                    };
                    eq.insert(p.clone(), &sign * &rd.rho_pow(-(s - u)));
                }
                out.push((branch, p0.clone(), tt, eq));
            }
        }
    }
    Ok(out)
}

/// Checks (e1)-(e4) for one root on a finitely supported family.
pub fn e_conditions_check(a: &U0Element, beta: &Weight, t: &BicharTable, w: &OmegaTable) -> Result<ConditionReport> {
    let rd = RootData::new(t, beta)?;
    let points: BTreeSet<Point> = a.terms().keys().cloned().collect();
    let mut per: BTreeMap<Branch, BranchCheck> = BTreeMap::new();
    for (branch, p, tt, eq) in root_equations(t, w, &rd, &points)? {
        let entry = per.entry(branch).or_insert_with(|| BranchCheck {
            beta: beta.clone(),
            branch,
            instances: 0,
            violation: None,
        });
        entry.instances += 1;
        let mut acc = CycScalar::zero(t.field());
        for (q, c) in &eq {
            acc += &(c * &a.coeff(&q.0, &q.1));
        }
        if !acc.is_zero() && entry.violation.is_none() {
            entry.violation = Some((p, tt));
        }
    }
    Ok(ConditionReport { beta: beta.clone(), checks: per.into_values().collect() })
}

pub fn e_conditions_all(a: &U0Element, rs: &RootSystem, t: &BicharTable, w: &OmegaTable) -> Result<Vec<ConditionReport>> {
    rs.root_weights().iter().map(|b| e_conditions_check(a, b, t, w)).collect()
}

/// sum_nu rho-hat(nu) m_nu K_{lambda + nu} L_{mu - nu}.
pub fn hc_image(t: &BicharTable, ct: &CharacterTable) -> Result<U0Element> {
    if !ct.complete {
        return Err(Error::IncompleteCharacter);
    }
    let mut out = U0Element::zero(t.field());
    for (nu, m) in &ct.mult {
        let c = &t.rho_hat(nu) * &CycScalar::from_int(t.field(), *m as i64);
        out.add_term(&ct.lambda + nu, &ct.mu - nu, &c);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct WindowSolution {
    pub points: Vec<Point>,
    pub basis: Vec<U0Element>,
    /// basis[k] has support next to the window edge along some root line.
    pub boundary: Vec<bool>,
    equations: Vec<SparseRow>,
}

impl WindowSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether a family supported in the window satisfies all conditions.
    pub fn contains(&self, a: &U0Element) -> bool {
        let index: BTreeMap<&Point, usize> = self.points.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut v = BTreeMap::new();
        for (p, c) in a.terms() {
            match index.get(p) {
                Some(&k) => {
                    v.insert(k, c.clone());
                }
                None => return false,
            }
        }
        self.equations.iter().all(|row| {
            let mut acc = CycScalar::zero(a.field());
            for (k, c) in row {
                if let Some(x) = v.get(k) {
                    acc += &(c * x);
                }
            }
            acc.is_zero()
        })
    }
}

fn check_roots(rs: &RootSystem, t: &BicharTable) -> Result<()> {
    if !rs.complete_below_bound {
        return Err(Error::Invalid("root system is not complete below its bound".into()));
    }
    rs.check_hypothesis(t)
}

/// All families supported in the window satisfying every condition, with
/// coefficients outside the window taken to be zero.
pub fn solve_center_window(t: &BicharTable, w: &OmegaTable, rs: &RootSystem, window: &[Point]) -> Result<WindowSolution> {
    check_roots(rs, t)?;
    let field = t.field();
    let points: Vec<Point> = window.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
    let set: BTreeSet<Point> = points.iter().cloned().collect();
    let mut ech = SparseEchelon::new(points.len());
    let mut equations = Vec::new();
    let mut near_edge = vec![false; points.len()];
    for beta in rs.root_weights() {
        let rd = RootData::new(t, &beta)?;
        for (k, p) in points.iter().enumerate() {
            if !set.contains(&rd.shift(p, 1)) || !set.contains(&rd.shift(p, -1)) {
                near_edge[k] = true;
            }
        }
        for (_, _, _, eq) in root_equations(t, w, &rd, &set)? {
            let mut row = SparseRow::new();
            for (p, c) in eq {
                // points outside the window carry coefficient zero
                if let Some(&k) = index.get(&p) {
                    if !c.is_zero() {
                        row.insert(k, c);
                    }
                }
            }
            if !row.is_empty() {
                equations.push(row.clone());
                ech.add_row(row);
            }
        }
    }
    ech.make_reduced();
    let mut basis = Vec::new();
    let mut boundary = Vec::new();
    for v in ech.nullspace(field) {
        let mut u = U0Element::zero(field);
        let mut edge = false;
        for (k, c) in v {
            edge |= near_edge[k];
            u.add_term(points[k].0.clone(), points[k].1.clone(), &c);
        }
        basis.push(u);
        boundary.push(edge);
    }
    Ok(WindowSolution { points, basis, boundary, equations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Unchecked,
    Verified,
    Failed,
}

#[derive(Clone, Debug)]
pub struct CenterCandidate {
    pub hc: U0Element,
    pub omega: OmegaTable,
    pub reconstructed: Option<AlgebraElement>,
    pub verified: Verification,
}

impl CenterCandidate {
    pub fn new(hc: U0Element, omega: OmegaTable) -> Self {
        CenterCandidate { hc, omega, reconstructed: None, verified: Verification::Unchecked }
    }

    /// Reconstructs Z and verifies it; the Sh-image must reproduce `hc`.
    pub fn reconstruct(&mut self, alg: &Algebra, depth: &Weight) -> Result<()> {
        let z = reconstruct_central(alg, &self.hc, &self.omega, depth)?;
        if sh_project(&z) != self.hc {
            return Err(Error::Consistency("Sh-image of the reconstructed element differs".into()));
        }
        self.verified = if verify_skew_central(alg, &z, &self.omega)? { Verification::Verified } else { Verification::Failed };
        self.reconstructed = Some(z);
        Ok(())
    }
}

fn generators(alg: &Algebra) -> Result<Vec<(AlgebraElement, Weight)>> {
    let r = alg.rank();
    let z = Weight::zero(r);
    let mut g = Vec::new();
    for i in 0..r {
        let a = Weight::simple(r, i);
        g.push((alg.e(i)?, a.clone()));
        g.push((alg.f(i)?, -&a));
        g.push((alg.kl(&a, &z), z.clone()));
        g.push((alg.kl(&z, &a), z.clone()));
    }
    Ok(g)
}

/// Z g - omega(deg g) g Z.
fn skew_commutator(alg: &Algebra, z: &AlgebraElement, g: &AlgebraElement, deg: &Weight, w: &OmegaTable) -> Result<AlgebraElement> {
    let zg = alg.multiply(z, g)?;
    let gz = alg.multiply(g, z)?;
    Ok(zg.sub(&gz.scale(&w.eval(deg))))
}

/// Checks Z X = omega(deg X) X Z on the generators.
pub fn verify_skew_central(alg: &Algebra, z: &AlgebraElement, w: &OmegaTable) -> Result<bool> {
    for (g, deg) in generators(alg)? {
        if !skew_commutator(alg, z, &g, &deg, w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves for Z with Sh(Z) = hc0 and Z skew-central, over the terms
/// F_y K_k L_{l - nu'} E_x with (k, l) in the support of hc0 and
/// deg x = deg y = nu' <= depth.
pub fn reconstruct_central(alg: &Algebra, hc0: &U0Element, w: &OmegaTable, depth: &Weight) -> Result<AlgebraElement> {
    let field = alg.field().clone();
    let r = alg.rank();
    let one = Weight(vec![1; r]);
    if !(depth + &one).le(alg.bound()) {
        return Err(Error::BoundExceeded { degree: depth + &one, bound: alg.bound().clone() });
    }
    let z = Weight::zero(r);
    let mut z0 = AlgebraElement::zero(&field);
    for ((k, l), c) in hc0.terms() {
        z0.add_term(Term { f: z.clone(), fi: 0, k: k.clone(), l: l.clone(), e: z.clone(), ei: 0 }, c);
    }
    let mut unknowns: Vec<Term> = Vec::new();
    for nu in Weight::box_below(depth) {
        if nu.is_zero() {
            continue;
        }
        let df = alg.minus().dim(&nu)?;
        let de = alg.plus().dim(&nu)?;
        for (k, l) in hc0.terms().keys() {
            let ll = l - &nu;
            for fi in 0..df {
                for ei in 0..de {
                    unknowns.push(Term { f: nu.clone(), fi, k: k.clone(), l: ll.clone(), e: nu.clone(), ei });
                }
            }
        }
    }
    let n = unknowns.len();
    // equations indexed by (generator, output term)
    let mut eqs: BTreeMap<(usize, Term), (SparseRow, CycScalar)> = BTreeMap::new();
    for (gi, (g, deg)) in generators(alg)?.iter().enumerate() {
        let base = skew_commutator(alg, &z0, g, deg, w)?;
        for (term, c) in base.terms() {
            eqs.entry((gi, term.clone())).or_insert_with(|| (SparseRow::new(), CycScalar::zero(&field))).1 -= c;
        }
        for (col, u) in unknowns.iter().enumerate() {
            let x = AlgebraElement::from_term(&field, u.clone(), CycScalar::one(&field));
            let img = skew_commutator(alg, &x, g, deg, w)?;
            for (term, c) in img.terms() {
                let e = eqs.entry((gi, term.clone())).or_insert_with(|| (SparseRow::new(), CycScalar::zero(&field)));
                e.0.insert(col, c.clone());
            }
        }
    }
    let rhs_col = n;
    let mut ech = SparseEchelon::new(n + 1);
    for ((gi, term), (mut row, b)) in eqs {
        if !b.is_zero() {
            row.insert(rhs_col, b);
        }
        if ech.add_row(row) == Some(rhs_col) {
            let (fw, ew) = alg.term_words(&term)?;
            return Err(Error::NoSolution(format!(
                "no central element within depth {depth}: constraint from generator {gi} at F[{fw}] K{} L{} E[{ew}] fails",
                term.k, term.l
            )));
        }
    }
    ech.make_reduced();
    if ech.rank() < n {
        return Err(Error::NotUnique(n - ech.rank()));
    }
    let mut out = z0;
    for (p, row) in ech.rows() {
        if let Some(b) = row.get(&rhs_col) {
            out.add_term(unknowns[*p].clone(), b);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub num_fin_pairs: usize,
    /// Fin pairs whose images are supported inside the window.
    pub num_interior_images: usize,
    pub rank_of_hc_span: usize,
    pub solution_space_dim_in_window: usize,
    pub boundary_families: usize,
    pub images_in_solution_space: bool,
    pub agreement: bool,
}

/// Compares the span of the images of Z_{lambda,mu} over the finite-dimensional
/// members of the window with the solution space of the window.
pub fn conjecture_probe(
    t: &Arc<BicharTable>,
    w: &OmegaTable,
    rs: &RootSystem,
    window: &[Point],
    depth: &Weight,
) -> Result<ProbeReport> {
    let sol = solve_center_window(t, w, rs, window)?;
    let inside: BTreeSet<&Point> = sol.points.iter().collect();
    let mut images = Vec::new();
    let mut fin = 0;
    for (lambda, mu) in &sol.points {
        let hw = HighestWeight::new(lambda.clone(), mu.clone());
        let ct = character(t, w, &hw, depth)?;
        if !ct.complete {
            continue;
        }
        fin += 1;
        let hc = hc_image(t, &ct)?;
        if hc.terms().keys().all(|p| inside.contains(p)) {
            images.push(hc);
        }
    }
    let all_in = images.iter().all(|a| sol.contains(a));
    let rank = span_rank_u0(&sol.points, &images);
    let boundary = sol.boundary.iter().filter(|&&b| b).count();
    Ok(ProbeReport {
        num_fin_pairs: fin,
        num_interior_images: images.len(),
        rank_of_hc_span: rank,
        solution_space_dim_in_window: sol.dim(),
        boundary_families: boundary,
        images_in_solution_space: all_in,
        agreement: all_in && rank == sol.dim(),
    })
}

fn span_rank_u0(points: &[Point], images: &[U0Element]) -> usize {
    let index: BTreeMap<&Point, usize> = points.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let mut ech = SparseEchelon::new(points.len());
    for a in images {
        let mut row = SparseRow::new();
        for (p, c) in a.terms() {
            if let Some(&k) = index.get(p) {
                row.insert(k, c.clone());
            }
        }
        ech.add_row(row);
    }
    ech.rank()
}
