//! Arithmetic in a few distance monoids: sums, differences, thirds and ranks.
//!
//! `cargo run --example monoid_basics`

use urysohn::monoid::text::format_monoid;
use urysohn::monoid::{DistanceMonoid, Elem, ExtRational, FiniteDistanceMonoid, ParametricMonoid};

fn main() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    print!("R_3 as a table:\n{}", format_monoid(&r3));
    let show = |e: Elem| r3.elem_label(e).to_string();
    println!("1 ⊕ 2 = {}", show(r3.op(Elem(1), Elem(2))));
    println!("|2 ⊖ 1| = {}", show(r3.abs_diff_elem(Elem(2), Elem(1))));
    println!("⅓·2 = {}", show(r3.one_third_elem(Elem(2))));
    println!("⌈3/1⌉ = {}", r3.ceil_div_elem(Elem(3), Elem(1)));
    let eq_lt: Vec<String> = r3.eq_lt_set().into_iter().map(show).collect();
    println!("arch(R_3) = {}, eq_lt = {{{}}}", r3.arch(), eq_lt.join(", "));

    let mc = FiniteDistanceMonoid::make_maxchain(3);
    println!("\nmax chain on 3 positive elements: ultrametric {}, arch {}", mc.is_ultrametric(), mc.arch());

    let q1 = ParametricMonoid::q1();
    let two_thirds = ExtRational::ratio(2, 3);
    println!("\nQ_1: 2/3 ⊕ 2/3 = {}", q1.oplus(&two_thirds, &two_thirds));
    println!("Q_1: arch = {}", q1.arch());
    let grid = q1.grid_restrict(3).expect("thirds close under truncated addition");
    println!("Q_1 on the grid of thirds is R_3: {}", grid.same_table(&r3));

    let n = ParametricMonoid::NonnegativeIntegers;
    println!("\nN: ⅓·7 = {}, ⌈1/0⌉ = {}", n.one_third(&ExtRational::int(7)), n.ceil_div(&ExtRational::int(1), &ExtRational::int(0)));
}
