use std::sync::Arc;
use std::time::Instant;

use gqg_core::nichols::{gram_block_with, gram_pivots, NicholsTable, Pairing};
use gqg_core::scalars::CyclotomicField;
use gqg_core::weights::{BicharTable, Weight};

fn z3_table() -> Arc<BicharTable> {
    let f = CyclotomicField::get(15).unwrap();
    let rows = vec![vec!["z^5".to_string(), "1".to_string()], vec!["z^13".to_string(), "z^2".to_string()]];
    Arc::new(BicharTable::from_literals(&f, &rows).unwrap())
}

#[test]
fn z3_total_dimension_and_top_degree() {
    let start = Instant::now();
    let nt = NicholsTable::new(z3_table(), &Weight(vec![13, 21])).unwrap();
    assert_eq!(nt.total_dim(), 675);
    assert_eq!(nt.dim(&Weight(vec![12, 20])).unwrap(), 1);
    for d in nt.degrees() {
        if d != Weight(vec![12, 20]) && (d[0] >= 12 && d[1] >= 20) {
            assert_eq!(nt.dim(&d).unwrap(), 0);
        }
    }
    eprintln!("z3 table built in {:?}", start.elapsed());
}

#[test]
fn table_matches_gram_pivots_small_degrees() {
    let t = z3_table();
    let nt = NicholsTable::new(t.clone(), &Weight(vec![4, 3])).unwrap();
    let p = Pairing::new(t);
    for d in nt.degrees() {
        if d.is_zero() {
            continue;
        }
        let g = gram_block_with(&d, &p);
        assert_eq!(g.rank(), nt.dim(&d).unwrap(), "rank at {d}");
        assert_eq!(gram_pivots(&g), nt.pivots(&d).unwrap().to_vec(), "pivots at {d}");
    }
}

#[test]
fn z3_roots() {
    let start = Instant::now();
    let t = z3_table();
    let rs = gqg_core::roots::sieve_roots(&t, &Weight(vec![6, 4])).unwrap();
    let r: Vec<(Weight, usize, Option<u64>)> = rs.roots.iter().map(|r| (r.root.clone(), r.phi, r.height)).collect();
    eprintln!("{r:?} {:?}", start.elapsed());
    let nt = NicholsTable::new(t, &Weight(vec![6, 4])).unwrap();
    let lit = gqg_core::roots::sieve_roots_literal(&nt).unwrap();
    assert_eq!(lit.root_weights(), rs.root_weights());
    eprintln!("literal {:?}", start.elapsed());
}
