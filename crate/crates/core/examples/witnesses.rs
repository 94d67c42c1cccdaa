//! The order, non-simplicity, and TP2 configurations over R_3.
//!
//! `cargo run --example witnesses`

use urysohn::independence::{forks, rel_dmax};
use urysohn::monoid::{Elem, FiniteDistanceMonoid};
use urysohn::sequences::{witness_nonsimple, witness_order_property, witness_tp2, NonsimpleVariant};
use urysohn::space::text::format_space;

fn main() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let (r, s) = r3.simplicity_witness().expect("R_3 is not simple");
    let show = |e: Elem| r3.elem_label(e).to_string();
    println!(
        "r = {}, s = {}: r ⊕ s = {} < r ⊕ r ⊕ s = {}",
        show(r),
        show(s),
        show(r3.op(r, s)),
        show(r3.op(r, r3.op(r, s)))
    );

    let op = witness_order_property(&r3, &Elem(1), 3).unwrap();
    println!("\norder configuration, order property {}:", op.has_order_property);
    print!("{}", format_space(&op.space, "R:3"));

    let four = witness_nonsimple(&r3, &r, &s, NonsimpleVariant::FourPoint).unwrap();
    println!("\nfour points:");
    print!("{}", format_space(&four, "R:3"));
    println!(
        "a forks with b1 b2 over c: {}; b1 b2 forks with a over c: {}",
        forks(&four, &[0], &[1, 2], &[3]).forks(),
        forks(&four, &[1, 2], &[0], &[3]).forks()
    );

    let five = witness_nonsimple(&r3, &r, &s, NonsimpleVariant::FivePoint).unwrap();
    println!(
        "\nfive points: dmax-independent {}, forks {}",
        rel_dmax(&five, &[0], &[1, 2], &[3, 4]),
        forks(&five, &[0], &[1, 2], &[3, 4]).forks()
    );

    let tp2 = witness_tp2(&r3, &r, &s, 3).unwrap();
    println!("\n3 × 3 grid on {} points: {:?}", tp2.space.len(), tp2.check());
}
