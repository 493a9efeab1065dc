//! Directional derivatives of a polynomial, exact over the rationals.

use diffops::symcalc3::{dot, gateaux, grad, Direction, Poly3};

fn main() -> diffops::Result<()> {
    // x1^3 x2 - 2 x2 x3^2 + 5
    let f = Poly3::from_terms(&[(1, [3, 1, 0]), (-2, [0, 1, 2]), (5, [0, 0, 0])]);
    println!("f = {f}");
    println!("grad f = {}", grad(&f));

    for spec in ["1,0,0", "3/5,4/5,0", "2/3,2/3,1/3"] {
        let e = Direction::parse(spec, true)?;
        let d = gateaux(&f, &e);
        assert_eq!(d, dot(&grad(&f), &e));
        println!("D_e f for e = ({spec}): {d}");
    }

    let loose = Direction::parse("1,1,0", false)?;
    println!("unnormalized e = (1,1,0): {}", gateaux(&f, &loose));
    if let Err(e) = Direction::parse("1,1,0", true) {
        println!("strict parse rejects it: {e}");
    }
    Ok(())
}
