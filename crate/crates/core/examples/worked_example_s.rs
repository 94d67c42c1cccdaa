//! The monoid S = {0, 1, 2, 5, 6, 7} with `r ⊕ s = max{x ∈ S : x ≤ r + s}`.
//!
//! `cargo run --example worked_example_s`

use num_rational::Rational64;
use urysohn::classify::classify_finite;
use urysohn::monoid::text::format_monoid;
use urysohn::monoid::FiniteDistanceMonoid;
use urysohn::sequences::{arch_witness, build_so_sequence, cyclic_check};

fn main() {
    let reals: Vec<Rational64> = [0, 1, 2, 5, 6, 7].iter().map(|&x| Rational64::from_integer(x)).collect();
    let s = FiniteDistanceMonoid::make_from_reals(&reals).expect("S is associative");
    print!("{}", format_monoid(&s));
    let e = |l: &str| s.elem_by_label(l).unwrap();
    let show = |xs: Vec<urysohn::Elem>| xs.iter().map(|&x| s.elem_label(x).to_string()).collect::<Vec<_>>();

    println!("arch(S) = {}", s.arch());
    println!("arch_local(1) = {}, arch_local(5) = {}", s.arch_local(e("1")), s.arch_local(e("5")));
    println!("class of 1: {:?}, class of 5: {:?}", show(s.arch_class(e("1"))), show(s.arch_class(e("5"))));
    println!("eq = {:?}, eq_lt = {:?}", show(s.eq_set()), show(s.eq_lt_set()));

    let chain = arch_witness(&s, 3).expect("arch(S) = 3");
    println!("chain realizing arch: {:?}", show(chain.clone()));
    let so = build_so_sequence(&s, &chain, 4).expect("the construction validates");
    println!(
        "sequence on {} points: 3-cyclic {}, 4-cyclic {}",
        so.sequence.space.len(),
        cyclic_check(&so.spec, 3).is_cyclic(),
        cyclic_check(&so.spec, 4).is_cyclic()
    );

    print!("\n{}", classify_finite(&s).to_text());
}
