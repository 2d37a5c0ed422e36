// Supernatural numbers, exponent functions and the encoding between them.

use formatio::steinitz::function::encoded;
use formatio::steinitz::{decode, encode, pair_components, pair_index, reg_join, reg_meet};
use formatio::{ExponentFunction, Supernatural};

pub fn run_example() -> formatio::Result<()> {
    let a: Supernatural = "2^inf*3".parse()?;
    let b: Supernatural = "12".parse()?;
    println!("lcm({a}, {b}) = {}, gcd = {}", a.lcm(&b), a.gcd(&b));
    let c: Supernatural = "2^inf*5^inf".parse()?;
    println!("complement of {c} is {}", c.complement().expect("complete"));

    for (x, y) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3)] {
        let i = pair_index(x, y)?;
        assert_eq!(pair_components(i)?, (x, y));
        println!("pair ({x}, {y}) -> prime index {i}");
    }

    let f1: ExponentFunction = "2->2^inf*3, default->1".parse()?;
    let f2: ExponentFunction = "3->3^inf*5, default->1".parse()?;
    let (w1, w2) = (encode(&f1), encode(&f2));
    println!("encode({f1}) = {w1}");
    println!("encode({f2}) = {w2}");
    println!("encode(join) = {} = lcm {}", encode(&reg_join(&f1, &f2)), w1.lcm(&w2));
    println!("encode(meet) = {} = gcd {}", encode(&reg_meet(&f1, &f2)), w1.gcd(&w2));
    assert_eq!(decode(&w1), f1);

    let g: ExponentFunction = "2->2^inf, default->full".parse()?;
    let lazy = encoded(&g);
    println!("{g} has no finite encoding: {}", lazy.exact().is_none());
    println!("its first exponents: {:?}", (1..=6).map(|i| lazy.valuation_at_index(i).to_string()).collect::<Vec<_>>());
    Ok(())
}

#[allow(dead_code)]
fn main() -> formatio::Result<()> {
    run_example()
}
