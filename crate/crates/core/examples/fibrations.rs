//! Fibre configurations: Euler numbers, Shioda-Tate ranks, heights and
//! the Mordell-Weil discriminant relation.
//!
//!     cargo run --example fibrations

use k3lattice::ellsurf::{
    height_pairing, mw_disc_relation, shioda_tate_rank, trivial_lattice_disc, FiberConfig, KodairaType,
    SectionIncidence, SurfaceData,
};
use k3lattice::exact::{int, rat};

fn main() -> k3lattice::Result<()> {
    let surfaces = [
        ("I0* + 9xI2", SurfaceData::k3(16, 4)),
        ("I2* + I3 + 6xI2", SurfaceData::k3(16, 2)),
        ("I0* + 3xI2", SurfaceData::rational(4)),
    ];
    for (cfg, s) in &surfaces {
        let c: FiberConfig = cfg.parse()?;
        println!(
            "{cfg:<18} euler {:>2}  root rank {:>2}  |disc trivial| {:>5}  MW rank {}",
            c.total_euler(),
            c.root_rank(),
            trivial_lattice_disc(&c),
            shioda_tate_rank(s, &c)?
        );
    }

    // A section meeting the zero section once and the far component of
    // every I2 fibre.
    let mut components = vec![(KodairaType::IStar(0), 0)];
    components.extend(std::iter::repeat_n((KodairaType::I(2), 1), 9));
    let h = height_pairing(&SurfaceData::k3(16, 4), &SectionIncidence { meets_zero_section: Some(1), components })?;
    println!("\nheight of the free section on I0* + 9xI2: {h}");

    let rel = mw_disc_relation(&int(192), &"I0* + 9xI2".parse()?, 4, &rat(3, 2))?;
    println!("|det NS| * |tors|^2 = {}   |disc trivial| * det MW = {}   holds {}", rel.lhs, rel.rhs, rel.holds);
    Ok(())
}
