//! Builds T4 #_V T4, then splits a class across the sum.

use conekit::{build_sum, catalog, expr, split_class, FiberSumSpec, Rational};

fn main() -> conekit::Result<()> {
    let t4 = catalog::get_model("T4")?;
    let f = t4.fiber_class().cloned().expect("T4 has a fiber class");
    let spec = FiberSumSpec::new(t4.clone(), t4, f.clone(), f, 1, true, 0, 0)?;
    let (model, basis) = build_sum(&spec)?; // = T2 x Sigma_2
    let alpha = expr::parse_class(model.lattice(), "2F+G")?;
    let (alpha_x, alpha_y) = split_class(&spec, &basis, &alpha, &Rational::from_int(2))?;
    println!(
        "{} / {}",
        spec.x_model().lattice().render_class(&alpha_x),
        spec.y_model().lattice().render_class(&alpha_y),
    );
    Ok(())
}
