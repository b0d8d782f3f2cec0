//! Batch front end: reads a JSON session config, runs the requested tasks in
//! dependency order and emits a deterministic JSON report.

use std::collections::BTreeSet;
use std::sync::Arc;

use clap::ValueEnum;
use gqg_core::algebra::Algebra;
use gqg_core::center::{conjecture_probe, e_conditions_all, hc_image, solve_center_window, CenterCandidate, Point, Verification};
use gqg_core::modules::{character, z3_h_profile};
use gqg_core::nichols::NicholsTable;
use gqg_core::roots::{hilbert_cross_check, sieve_roots_in_order, RootSystem};
use gqg_core::scalars::{CycScalar, CyclotomicField};
use gqg_core::weights::{BicharTable, HighestWeight, OmegaTable, Weight};
use gqg_core::Error as CoreError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;
const MAX_WINDOW: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Consistency(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Consistency(m) => CliError::Consistency(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Roots,
    Dims,
    Module,
    Center,
    Verify,
    Probe,
    Selftest,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Roots => "roots",
            Task::Dims => "dims",
            Task::Module => "module",
            Task::Center => "center",
            Task::Verify => "verify",
            Task::Probe => "probe",
            Task::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub lambda_min: Vec<i64>,
    pub lambda_max: Vec<i64>,
    pub mu_min: Vec<i64>,
    pub mu_max: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleParams {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    /// When set, the center task also reconstructs Z for this module.
    #[serde(default)]
    pub reconstruct_depth: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub conductor: u32,
    pub rank: usize,
    pub chi: Vec<Vec<String>>,
    #[serde(default)]
    pub omega: Option<Vec<String>>,
    pub degree_bound: Vec<i64>,
    pub depth_bound: Vec<i64>,
    #[serde(default)]
    pub window: Option<WindowSpec>,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub module: Option<ModuleParams>,
}

impl SessionConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: SessionConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }

    /// SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// Parsed and validated session.
pub struct Session {
    pub table: Arc<BicharTable>,
    pub omega: OmegaTable,
    pub degree_bound: Weight,
    pub depth_bound: Weight,
    pub window: Vec<Point>,
    pub module: Option<(HighestWeight, Option<Weight>)>,
}

fn weight(v: &[i64], l: usize, what: &str) -> Result<Weight, CliError> {
    if v.len() != l {
        return Err(CliError::Config(format!("{what} must have length {l}")));
    }
    Ok(Weight(v.to_vec()))
}

fn nonneg(v: &[i64], l: usize, what: &str) -> Result<Weight, CliError> {
    let w = weight(v, l, what)?;
    if !w.is_nonneg() {
        return Err(CliError::Config(format!("{what} must be nonnegative")));
    }
    Ok(w)
}

fn rectangle(min: &Weight, max: &Weight) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for (a, b) in min.0.iter().zip(&max.0) {
        out = out.into_iter().flat_map(|p| (*a..=*b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out.into_iter().map(Weight).collect()
}

impl Session {
    pub fn new(cfg: &SessionConfig) -> Result<Self, CliError> {
        let l = cfg.rank;
        if l == 0 {
            return Err(CliError::Config("rank must be positive".into()));
        }
        let field = CyclotomicField::get(cfg.conductor)?;
        if cfg.chi.len() != l || cfg.chi.iter().any(|r| r.len() != l) {
            return Err(CliError::Config(format!("chi must be a {l}x{l} matrix")));
        }
        let table = Arc::new(BicharTable::from_literals(&field, &cfg.chi)?);
        let omega = match &cfg.omega {
            None => OmegaTable::trivial(&field, l),
            Some(v) if v.len() == l => {
                OmegaTable::new(v.iter().map(|s| CycScalar::parse(&field, s)).collect::<Result<Vec<_>, _>>()?)?
            }
            Some(_) => return Err(CliError::Config(format!("omega must have length {l}"))),
        };
        let degree_bound = nonneg(&cfg.degree_bound, l, "degree_bound")?;
        let depth_bound = nonneg(&cfg.depth_bound, l, "depth_bound")?;
        let mut window = Vec::new();
        if let Some(wspec) = &cfg.window {
            let lmin = weight(&wspec.lambda_min, l, "window.lambda_min")?;
            let lmax = weight(&wspec.lambda_max, l, "window.lambda_max")?;
            let mmin = weight(&wspec.mu_min, l, "window.mu_min")?;
            let mmax = weight(&wspec.mu_max, l, "window.mu_max")?;
            let size: i128 = lmin.0.iter().zip(&lmax.0).chain(mmin.0.iter().zip(&mmax.0)).map(|(a, b)| (b - a + 1).max(0) as i128).product();
            if size > MAX_WINDOW as i128 {
                return Err(CliError::Config(format!("window has {size} points, limit is {MAX_WINDOW}")));
            }
            for lam in rectangle(&lmin, &lmax) {
                for mu in rectangle(&mmin, &mmax) {
                    window.push((lam.clone(), mu));
                }
            }
        }
        let module = match &cfg.module {
            None => None,
            Some(m) => {
                let hw = HighestWeight::new(weight(&m.lambda, l, "module.lambda")?, weight(&m.mu, l, "module.mu")?);
                let depth = m.reconstruct_depth.as_ref().map(|d| nonneg(d, l, "module.reconstruct_depth")).transpose()?;
                Some((hw, depth))
            }
        };
        Ok(Session { table, omega, degree_bound, depth_bound, window, module })
    }
}

/// Tasks to run in dependency order.
pub fn plan(cfg: &SessionConfig, filter: Option<Task>) -> Result<Vec<Task>, CliError> {
    let requested: BTreeSet<Task> = match filter {
        Some(t) => [t].into(),
        None => cfg.tasks.iter().copied().collect(),
    };
    if requested.is_empty() {
        return Err(CliError::Config("no tasks requested".into()));
    }
    Ok(requested.into_iter().collect())
}

struct Runner<'a> {
    s: &'a Session,
    nichols: Option<NicholsTable>,
    roots: Option<RootSystem>,
    failures: Vec<String>,
}

impl<'a> Runner<'a> {
    fn nichols(&mut self) -> Result<&NicholsTable, CliError> {
        if self.nichols.is_none() {
            self.nichols = Some(NicholsTable::new(self.s.table.clone(), &self.s.degree_bound)?);
        }
        Ok(self.nichols.as_ref().unwrap())
    }

    fn roots(&mut self) -> Result<RootSystem, CliError> {
        if self.roots.is_none() {
            let bound = self.s.degree_bound.clone();
            let rs = sieve_roots_in_order(self.nichols()?, &Weight::box_below(&bound))?;
            self.roots = Some(rs);
        }
        Ok(self.roots.clone().unwrap())
    }

    fn hilbert(&mut self) -> Result<Value, CliError> {
        let rs = self.roots()?;
        let bound = self.s.degree_bound.clone();
        let hc = hilbert_cross_check(&rs, self.nichols()?, &bound)?;
        if let Some((d, pbw, dim)) = &hc.first_failure {
            self.failures.push(format!("PBW count {pbw} differs from dim U+_{d} = {dim}"));
        }
        Ok(serde_json::to_value(&hc).unwrap())
    }

    fn task_roots(&mut self) -> Result<Value, CliError> {
        let rs = self.roots()?;
        let hilbert = self.hilbert()?;
        Ok(json!({
            "roots": rs.roots,
            "complete_below_bound": rs.complete_below_bound,
            "bound": rs.bound,
            "hilbert": hilbert,
        }))
    }

    fn task_dims(&mut self) -> Result<Value, CliError> {
        let hilbert = self.hilbert()?;
        let nt = self.nichols()?;
        let mut blocks = Vec::new();
        for d in Weight::box_below(nt.bound()) {
            blocks.push(json!({"degree": d, "dim": nt.dim(&d)?, "pivot_words": nt.pivots(&d)?}));
        }
        Ok(json!({"blocks": blocks, "total_dim": nt.total_dim(), "hilbert": hilbert}))
    }

    fn task_module(&mut self) -> Result<Value, CliError> {
        let (hw, _) = self.s.module.as_ref().ok_or_else(|| CliError::Config("module task needs module parameters".into()))?;
        let ct = character(&self.s.table, &self.s.omega, hw, &self.s.depth_bound)?;
        let mut out = ct.to_json();
        if ct.complete {
            out["hc_image"] = hc_image(&self.s.table, &ct)?.to_json();
        }
        Ok(out)
    }

    /// Characters of the window points, computed in parallel, in window order.
    fn fin_images(&self) -> Result<Vec<(Point, u64, gqg_core::algebra::U0Element)>, CliError> {
        let s = self.s;
        let results: Vec<Result<Option<_>, CoreError>> = s
            .window
            .par_iter()
            .map(|(lam, mu)| {
                let hw = HighestWeight::new(lam.clone(), mu.clone());
                let ct = character(&s.table, &s.omega, &hw, &s.depth_bound)?;
                if !ct.complete {
                    return Ok(None);
                }
                Ok(Some(((lam.clone(), mu.clone()), ct.total_dim(), hc_image(&s.table, &ct)?)))
            })
            .collect();
        let mut out = Vec::new();
        for r in results {
            if let Some(x) = r? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Roots for center tasks, or the reason the task is skipped.
    fn center_roots(&mut self) -> Result<Result<RootSystem, String>, CliError> {
        let rs = self.roots()?;
        if !rs.complete_below_bound {
            return Ok(Err("root system not known to be complete below degree_bound".into()));
        }
        match rs.check_hypothesis(&self.s.table) {
            Ok(()) => Ok(Ok(rs)),
            Err(e) => Ok(Err(e.to_string())),
        }
    }

    fn task_center(&mut self) -> Result<Value, CliError> {
        let rs = match self.center_roots()? {
            Ok(rs) => rs,
            Err(reason) => return Ok(json!({"status": "skipped", "reason": reason})),
        };
        let fin = self.fin_images()?;
        let images: Vec<Value> = fin
            .iter()
            .map(|((lam, mu), dim, hc)| json!({"lambda": lam, "mu": mu, "dim": dim, "hc_image": hc.to_json()}))
            .collect();
        let sol = solve_center_window(&self.s.table, &self.s.omega, &rs, &self.s.window)?;
        let mut out = json!({
            "status": "ok",
            "fin": images,
            "window_points": self.s.window.len(),
            "solution_space_dim_in_window": sol.dim(),
            "boundary_families": sol.boundary.iter().filter(|&&b| b).count(),
        });
        if let Some((hw, Some(depth))) = &self.s.module {
            out["reconstruction"] = self.reconstruct(hw, depth)?;
        }
        Ok(out)
    }

    fn reconstruct(&mut self, hw: &HighestWeight, depth: &Weight) -> Result<Value, CliError> {
        let s = self.s;
        let ct = character(&s.table, &s.omega, hw, &s.depth_bound)?;
        if !ct.complete {
            return Ok(json!({"status": "skipped", "reason": "module not finite-dimensional within depth_bound"}));
        }
        let ones = Weight(vec![1; depth.rank()]);
        let alg = Algebra::new(s.table.clone(), &(depth + &ones))?;
        let mut cand = CenterCandidate::new(hc_image(&s.table, &ct)?, s.omega.clone());
        match cand.reconstruct(&alg, depth) {
            Ok(()) => {}
            Err(e @ (CoreError::NoSolution(_) | CoreError::NotUnique(_))) => {
                return Ok(json!({"status": "failed", "reason": e.to_string()}));
            }
            Err(e) => return Err(e.into()),
        }
        let z = cand.reconstructed.as_ref().unwrap();
        let verified = cand.verified == Verification::Verified;
        if !verified {
            self.failures.push(format!("reconstructed Z for ({}, {}) is not skew-central", hw.lambda, hw.mu));
        }
        Ok(json!({
            "status": "ok",
            "lambda": hw.lambda,
            "mu": hw.mu,
            "terms": z.len(),
            "verified": verified,
            "z": alg.to_json(z)?,
        }))
    }

    fn task_verify(&mut self) -> Result<Value, CliError> {
        let rs = match self.center_roots()? {
            Ok(rs) => rs,
            Err(reason) => return Ok(json!({"status": "skipped", "reason": reason})),
        };
        let fin = self.fin_images()?;
        let mut reports = Vec::new();
        let mut all = true;
        for ((lam, mu), _, hc) in &fin {
            for rep in e_conditions_all(hc, &rs, &self.s.table, &self.s.omega)? {
                if !rep.passed() {
                    all = false;
                    self.failures.push(format!("(e)-condition fails for ({lam}, {mu}) at beta = {}", rep.beta));
                }
                let checks: Vec<Value> = rep
                    .checks
                    .iter()
                    .map(|c| {
                        let mut v = c.to_json();
                        v["lambda"] = json!(lam);
                        v["mu"] = json!(mu);
                        v
                    })
                    .collect();
                reports.extend(checks);
            }
        }
        Ok(json!({"status": if all { "pass" } else { "fail" }, "pairs": fin.len(), "checks": reports}))
    }

    fn task_probe(&mut self) -> Result<Value, CliError> {
        let rs = match self.center_roots()? {
            Ok(rs) => rs,
            Err(reason) => return Ok(json!({"status": "skipped", "reason": reason})),
        };
        let p = conjecture_probe(&self.s.table, &self.s.omega, &rs, &self.s.window, &self.s.depth_bound)?;
        if !p.images_in_solution_space {
            self.failures.push("an image of a central element violates the window equations".into());
        }
        let mut out = serde_json::to_value(&p).unwrap();
        out["status"] = json!(if p.agreement { "agreement" } else { "reported" });
        Ok(out)
    }
}

/// Self-test against the Z/3 example: roots, dim U+ and the h-profile.
pub fn selftest() -> Result<(Value, bool), CliError> {
    let field = CyclotomicField::get(15)?;
    let rows = vec![vec!["z^5".to_string(), "1".to_string()], vec!["z^13".to_string(), "z^2".to_string()]];
    let t = Arc::new(BicharTable::from_literals(&field, &rows)?);
    let bound = Weight(vec![6, 4]);
    let nt = NicholsTable::new(t.clone(), &bound)?;
    let rs = sieve_roots_in_order(&nt, &Weight::box_below(&bound))?;
    let mut found: Vec<(Vec<i64>, usize)> = rs.roots.iter().map(|r| (r.root.0.clone(), r.phi)).collect();
    found.sort();
    let expected = vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1), (vec![2, 1], 1)];
    let dim_plus: u64 = rs.roots.iter().map(|r| r.height.unwrap_or(0).pow(r.phi as u32)).product();
    let hw = HighestWeight::new(Weight(vec![0, 0]), Weight(vec![0, 1]));
    let om = OmegaTable::trivial(&field, 2);
    let ct = character(&t, &om, &hw, &Weight(vec![10, 6]))?;
    let h = z3_h_profile(&ct, &t, None)?;
    let checks = [
        ("roots", found == expected),
        ("complete_below_bound", rs.complete_below_bound),
        ("dim_u_plus", dim_plus == 675),
        ("module_finite", ct.complete && ct.total_dim() == 15),
        ("h_profile", h == [1, 0, 4, 1, 0, 1, 4, 0]),
    ];
    let mut out = Map::new();
    for (name, ok) in checks {
        out.insert(name.into(), json!(ok));
    }
    out.insert("h".into(), json!(h));
    out.insert("roots_found".into(), json!(rs.roots));
    let passed = checks.iter().all(|c| c.1);
    out.insert("passed".into(), json!(passed));
    Ok((Value::Object(out), passed))
}

/// A finished run. A nonempty `failures` list means exit code 2.
pub struct Outcome {
    pub report: Value,
    pub failures: Vec<String>,
}

/// Runs the planned tasks; the report carries no timestamp.
pub fn run(cfg: &SessionConfig, filter: Option<Task>) -> Result<Outcome, CliError> {
    let tasks = plan(cfg, filter)?;
    let session = Session::new(cfg)?;
    let mut runner = Runner { s: &session, nichols: None, roots: None, failures: Vec::new() };
    let mut results = Map::new();
    for task in &tasks {
        let v = match task {
            Task::Roots => runner.task_roots()?,
            Task::Dims => runner.task_dims()?,
            Task::Module => runner.task_module()?,
            Task::Center => runner.task_center()?,
            Task::Verify => runner.task_verify()?,
            Task::Probe => runner.task_probe()?,
            Task::Selftest => {
                let (v, passed) = selftest()?;
                if !passed {
                    runner.failures.push("self-test mismatch".into());
                }
                v
            }
        };
        results.insert(task.name().into(), v);
    }
    let report = json!({
        "schema": SCHEMA,
        "config_hash": cfg.hash(),
        "conductor": cfg.conductor,
        "tasks": tasks.iter().map(|t| t.name()).collect::<Vec<_>>(),
        "results": results,
        "failures": runner.failures,
    });
    Ok(Outcome { report, failures: runner.failures })
}
