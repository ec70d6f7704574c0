//! Scratch probe: per-sector left-null pairings of candidate Theta rows for
//! B(m,n), m >= 1. Not part of the library surface.

use ospcert::algebra::{structure_constants, Role};
use ospcert::cli_io::field_name;
use ospcert::cohomology::{assemble_sector, enumerate_rows};
use ospcert::deformation::build_gamma;
use ospcert::field::Quad;
use ospcert::linalg::{left_nullspace, rank};
use num_traits::Zero;

fn main() {
    let (m, n) = (1u32, 1u32);
    let sc = structure_constants::<Quad>(m, n).unwrap();
    let gs = build_gamma(&sc).unwrap();
    println!("B({m},{n}) over {}: dim {}, params {}", field_name::<Quad>(), sc.dim(), gs.param_count());
    for dir in &gs.params {
        let mu = dir.sector(sc.modes);
        let sys = assemble_sector(&sc, &gs, &mu);
        let ra = rank(&sys.a);
        let ns = left_nullspace(&sys.a);
        println!(
            "dir {} sector {:?}: fvars {}, rows {}, rank {}, leftnull {}",
            dir.label(),
            mu,
            sys.fvars.len(),
            sys.rows.len(),
            ra,
            ns.len()
        );
        // current L-column pairing
        for (t, c) in ns.iter().enumerate() {
            let ctl = sys.l.vec_mul(c);
            if !ctl[0].is_zero() {
                println!("   leftnull[{t}] pairs with current L: {}", ctl[0]);
            }
        }
        // rows with nonzero left-null pairing, grouped by shape
        let rows = enumerate_rows(&sc, &mu);
        for (r, key) in rows.iter().enumerate() {
            let any: bool = ns.iter().any(|c| !c[r].is_zero());
            if !any {
                continue;
            }
            let shape = |id: usize| match sc.basis[id].role {
                Role::Cartan(_) => "C",
                Role::EvenRoot => "E",
                Role::OddRoot => "O",
            };
            let tag = format!("{}{}@{}", shape(key.x), shape(key.y), shape(key.target));
            if tag.starts_with("C") || tag == "EO@C" {
                println!(
                    "   candidate row ({}, {}) @ {}   [{}]",
                    sc.name_of(key.x),
                    sc.name_of(key.y),
                    sc.name_of(key.target),
                    tag
                );
            }
        }
    }
}
