use std::sync::Arc;

use gqg_core::algebra::{sh_project, Algebra};
use gqg_core::center::{
    conjecture_probe, e_conditions_all, hc_image, reconstruct_central, solve_center_window, verify_skew_central,
    CenterCandidate, Point, Verification,
};
use gqg_core::error::Error;
use gqg_core::modules::{character, fin_window};
use gqg_core::roots::sieve_roots;
use gqg_core::scalars::{CycScalar, CyclotomicField};
use gqg_core::weights::{BicharTable, HighestWeight, OmegaTable, Weight};

fn z3_table() -> Arc<BicharTable> {
    let f = CyclotomicField::get(15).unwrap();
    let rows = vec![vec!["z^5".to_string(), "1".to_string()], vec!["z^13".to_string(), "z^2".to_string()]];
    Arc::new(BicharTable::from_literals(&f, &rows).unwrap())
}

fn rank1(q: &str) -> Arc<BicharTable> {
    let f = CyclotomicField::get(1).unwrap();
    Arc::new(BicharTable::from_literals(&f, &[vec![q.to_string()]]).unwrap())
}

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn z3_window() -> Vec<Point> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for d in -1..=1 {
                    out.push((w(&[a, b]), w(&[c, d])));
                }
            }
        }
    }
    out
}

#[test]
fn z3_images_satisfy_all_conditions() {
    let t = z3_table();
    let om = OmegaTable::trivial(t.field(), 2);
    let rs = sieve_roots(&t, &w(&[6, 4])).unwrap();
    assert!(rs.complete_below_bound);
    let fin = fin_window(&t, &om, &z3_window(), &w(&[16, 16])).unwrap();
    assert!(fin.contains(&(w(&[0, 0]), w(&[0, 1]), 15)));
    assert!(fin.len() > 40);
    let mut checks = 0;
    for (lambda, mu, dim) in &fin {
        let hw = HighestWeight::new(lambda.clone(), mu.clone());
        let ct = character(&t, &om, &hw, &w(&[16, 16])).unwrap();
        let hc = hc_image(&t, &ct).unwrap();
        let total: i64 = hc.terms().values().count() as i64;
        assert!(total as u64 <= *dim);
        for rep in e_conditions_all(&hc, &rs, &t, &om).unwrap() {
            assert!(rep.passed(), "({lambda},{mu}) beta {}: {:?}", rep.beta, rep.first_violation());
            checks += rep.checks.iter().map(|c| c.instances).sum::<usize>();
        }
    }
    assert!(checks > 0);
}

#[test]
fn rank_one_casimir_reconstruction() {
    let t = rank1("3");
    let om = OmegaTable::trivial(t.field(), 1);
    let alg = Algebra::new(t.clone(), &w(&[3])).unwrap();
    let hw = HighestWeight::new(w(&[0]), w(&[1]));
    let ct = character(&t, &om, &hw, &w(&[6])).unwrap();
    let hc = hc_image(&t, &ct).unwrap();
    let z = reconstruct_central(&alg, &hc, &om, &w(&[1])).unwrap();
    assert_eq!(sh_project(&z), hc);
    assert!(z.terms().keys().any(|term| !term.f.is_zero()));
    assert!(verify_skew_central(&alg, &z, &om).unwrap());
    let e = alg.e(0).unwrap();
    assert_eq!(alg.multiply(&z, &e).unwrap(), alg.multiply(&e, &z).unwrap());

    let one = hc_image(&t, &character(&t, &om, &HighestWeight::new(w(&[0]), w(&[0])), &w(&[6])).unwrap()).unwrap();
    assert_eq!(reconstruct_central(&alg, &one, &om, &w(&[1])).unwrap(), alg.one());

    // too shallow for the m = 2 image
    let hc2 = hc_image(&t, &character(&t, &om, &HighestWeight::new(w(&[0]), w(&[2])), &w(&[6])).unwrap()).unwrap();
    assert!(matches!(reconstruct_central(&alg, &hc2, &om, &w(&[1])), Err(Error::NoSolution(_))));
    assert!(verify_skew_central(&alg, &reconstruct_central(&alg, &hc2, &om, &w(&[2])).unwrap(), &om).unwrap());
}

#[test]
fn z3_small_module_reconstruction() {
    let t = z3_table();
    let om = OmegaTable::trivial(t.field(), 2);
    let hw = HighestWeight::new(w(&[0, -1]), w(&[1, 0]));
    let ct = character(&t, &om, &hw, &w(&[5, 3])).unwrap();
    assert!(ct.complete);
    assert_eq!(ct.total_dim(), 10);
    let alg = Algebra::new(t.clone(), &w(&[5, 3])).unwrap();
    let mut cand = CenterCandidate::new(hc_image(&t, &ct).unwrap(), om.clone());
    cand.reconstruct(&alg, &w(&[4, 2])).unwrap();
    assert_eq!(cand.verified, Verification::Verified);
    assert_eq!(sh_project(cand.reconstructed.as_ref().unwrap()), cand.hc);
}

#[test]
fn k_gamma_is_skew_central_for_its_character() {
    let t = z3_table();
    let f = t.field().clone();
    let alg = Algebra::new(t.clone(), &w(&[1, 1])).unwrap();
    let gamma = w(&[1, 2]);
    let k = alg.kl(&gamma, &w(&[0, 0]));
    let om = OmegaTable::new(vec![t.chi(&gamma, &w(&[1, 0])), t.chi(&gamma, &w(&[0, 1]))]).unwrap();
    assert!(verify_skew_central(&alg, &k, &om).unwrap());
    assert!(!verify_skew_central(&alg, &k, &OmegaTable::trivial(&f, 2)).unwrap());
    assert!(verify_skew_central(&alg, &alg.one(), &OmegaTable::trivial(&f, 2)).unwrap());
}

#[test]
fn rank_one_window_and_probe() {
    let t = rank1("3");
    let f = t.field().clone();
    let om = OmegaTable::trivial(&f, 1);
    let rs = sieve_roots(&t, &w(&[4])).unwrap();
    let mut window = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            window.push((w(&[a]), w(&[b])));
        }
    }
    let sol = solve_center_window(&t, &om, &rs, &window).unwrap();
    assert_eq!(sol.dim(), 10);
    for (a, b, _) in fin_window(&t, &om, &window, &w(&[8])).unwrap() {
        let ct = character(&t, &om, &HighestWeight::new(a, b), &w(&[8])).unwrap();
        assert!(sol.contains(&hc_image(&t, &ct).unwrap()));
    }
    let probe = conjecture_probe(&t, &om, &rs, &window, &w(&[8])).unwrap();
    assert_eq!(probe.num_fin_pairs, 10);
    assert_eq!(probe.rank_of_hc_span, 10);
    assert!(probe.agreement);

    let single = solve_center_window(&t, &om, &rs, &[(w(&[0]), w(&[0]))]).unwrap();
    assert_eq!(single.dim(), 1);
    assert!(single.boundary[0]);

    // omega(alpha) outside q^Z kills every coefficient through (e2)
    let twisted = OmegaTable::new(vec![CycScalar::from_int(&f, 7)]).unwrap();
    assert_eq!(solve_center_window(&t, &twisted, &rs, &window).unwrap().dim(), 0);
    let empty = conjecture_probe(&t, &om, &rs, &[], &w(&[8])).unwrap();
    assert_eq!(empty.rank_of_hc_span, 0);
}

#[test]
fn z3_probe_small_window() {
    let t = z3_table();
    let om = OmegaTable::trivial(t.field(), 2);
    let rs = sieve_roots(&t, &w(&[6, 4])).unwrap();
    let probe = conjecture_probe(&t, &om, &rs, &z3_window(), &w(&[16, 16])).unwrap();
    eprintln!("{probe:?}");
    assert!(probe.images_in_solution_space);
    assert!(probe.rank_of_hc_span <= probe.solution_space_dim_in_window);
}
