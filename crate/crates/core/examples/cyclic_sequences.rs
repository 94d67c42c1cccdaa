//! Cyclicity of the sequences built from chains, and the bound in terms of
//! non-parameter coordinates.
//!
//! `cargo run --example cyclic_sequences`

use urysohn::monoid::{Elem, FiniteDistanceMonoid};
use urysohn::sequences::{arch_witness, build_so_sequence, check_np_bound, cyclic_check, diag_transitive, Cyclicity};
use urysohn::DistanceMonoid;

fn main() {
    for n in 1..=5 {
        let rn = FiniteDistanceMonoid::make_rn(n);
        let chain = arch_witness(&rn, n).expect("R_n has arch n");
        let so = build_so_sequence(&rn, &chain, 4).expect("construction validates");
        let first_cyclic = (1..=n + 1).find(|&k| cyclic_check(&so.spec, k).is_cyclic());
        println!(
            "R_{n}: chain {:?}, diagonal {:?}, transitive {}, first cyclic n = {:?}",
            chain.iter().map(|e| e.index()).collect::<Vec<_>>(),
            so.diagonal.iter().map(|e| e.index()).collect::<Vec<_>>(),
            diag_transitive(&&rn, &so.diagonal),
            first_cyclic
        );
    }

    let r3 = FiniteDistanceMonoid::make_rn(3);
    let so = build_so_sequence(&r3, &[Elem(1), Elem(1), Elem(1)], 4).unwrap();
    if let Cyclicity::Violation { chain, wrap, path_sum } = cyclic_check(&so.spec, 3) {
        println!(
            "\nR_3, (1,1,1): chain {chain:?} wraps at {} above the path sum {}",
            r3.label(&wrap),
            r3.label(&path_sum)
        );
    }
    let report = check_np_bound(&so.sequence).unwrap();
    println!("{} non-parameter coordinates; {}-cyclic: {}", report.np_count, report.np_count + 1, report.cyclic);
}
