//! Deciding forking in a four-point space over R_3, and comparing it with
//! the weaker relations.
//!
//! `cargo run --example forking_decision`

use urysohn::independence::{dmax, dmin, forks, rel_dist, rel_dmax, rel_otimes};
use urysohn::monoid::{Elem, FiniteDistanceMonoid};
use urysohn::space::text::format_space;
use urysohn::space::RMetricSpace;

fn main() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let rows = [[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 1], [1, 2, 1, 0]];
    let labels = ["a", "b1", "b2", "c"].map(String::from).to_vec();
    let space = RMetricSpace::from_fn(&r3, labels, |x, y| Elem(rows[x][y])).expect("valid space");
    print!("{}", format_space(&space, "R:3"));

    let (a, b, c) = (vec![0], vec![1, 2], vec![3]);
    let show = |e: Elem| r3.elem_label(e).to_string();
    println!("dmax(b1,b2/c) = {}, dmax(b1,b2/ac) = {}", show(dmax(&space, 1, 2, &c)), show(dmax(&space, 1, 2, &[0, 3])));
    println!("dmin(b1,b2/c) = {}, dmin(b1,b2/ac) = {}", show(dmin(&space, 1, 2, &c)), show(dmin(&space, 1, 2, &[0, 3])));

    let report = forks(&space, &a, &b, &c);
    println!("a with b1 b2 over c: {}", serde_json::to_string(&report).unwrap());
    let back = forks(&space, &b, &a, &c);
    println!("b1 b2 with a over c: {}", serde_json::to_string(&back).unwrap());
    println!(
        "dist {}, otimes {}, dmax {}",
        rel_dist(&space, &a, &b, &c),
        rel_otimes(&space, &a, &b, &c),
        rel_dmax(&space, &a, &b, &c)
    );
}
