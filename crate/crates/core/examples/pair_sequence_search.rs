//! Which distances `d(b1^0, b2^1)` an indiscernible sequence of pairs over C
//! can realize, compared with the `[d_min, d_max]` bracket.
//!
//! `cargo run --example pair_sequence_search`

use urysohn::independence::{dmax, dmin, pair_sequence_search};
use urysohn::monoid::{Elem, FiniteDistanceMonoid};
use urysohn::space::RMetricSpace;

fn main() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let configs: [(&str, [[u16; 3]; 3]); 3] = [
        ("far pair, c near b1", [[0, 3, 1], [3, 0, 2], [1, 2, 0]]),
        ("close pair", [[0, 1, 1], [1, 0, 1], [1, 1, 0]]),
        ("spread over c", [[0, 2, 1], [2, 0, 3], [1, 3, 0]]),
    ];
    for (name, rows) in configs {
        let labels = ["b1", "b2", "c"].map(String::from).to_vec();
        let space = RMetricSpace::from_fn(&r3, labels, |x, y| Elem(rows[x][y])).expect("valid space");
        let (lo, hi) = (dmin(&space, 0, 1, &[2]), dmax(&space, 0, 1, &[2]));
        let found: Vec<usize> = (0..=3u16)
            .filter(|&a| pair_sequence_search(&space, 0, 1, &[2], &Elem(a)).is_some())
            .map(usize::from)
            .collect();
        println!("{name}: bracket [{}, {}], realizable {found:?}", lo.index(), hi.index());
        if let Some(p) = pair_sequence_search(&space, 0, 1, &[2], &hi) {
            println!("  at d_max: d11 = {}, d22 = {}, d21 = {}", p.d11.index(), p.d22.index(), p.d21.index());
        }
    }
}
