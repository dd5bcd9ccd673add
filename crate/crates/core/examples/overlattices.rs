//! Even overlattices from isotropic glue, and an explicit chain of
//! gluings down to determinant -3.
//!
//!     cargo run --example overlattices

use k3lattice::exact::rat_vec;
use k3lattice::glue::named::{self, LdVariant};
use k3lattice::glue::{even_overlattices, GlueSpec};
use k3lattice::lattice::direct_sum;

fn main() -> k3lattice::Result<()> {
    let base = direct_sum(&named::u_d8_a5_a1());
    println!("U+D8+A5+A1: det {}", base.det());
    for o in even_overlattices(&base, 4)? {
        println!("  index {}  det {:>4}  even {}", o.index, o.lattice.det(), o.lattice.is_even());
    }

    // N2 = L_3(all); F_i = l - sum of the nodes in <a_i, 0001> minus zero.
    let n2 = named::ld(3, LdVariant::All)?;
    let mut cur = n2.over.clone();
    println!("\nN2: det {}", cur.lattice.det());
    for a in [0b1000usize, 0b0100, 0b0010] {
        let nodes: Vec<(usize, i64)> = [a, 1, a ^ 1].iter().map(|&x| (x, -1)).collect();
        let f = n2.nodes.vector(1, &nodes);
        println!("  F = l - b{a} - b1 - b{}: norm {}", a ^ 1, cur.norm(&rat_vec(&f)));
        cur = cur.adjoin(&[GlueSpec::half(f)], true)?;
        println!("  after F/2: det {}", cur.lattice.det());
    }
    Ok(())
}
