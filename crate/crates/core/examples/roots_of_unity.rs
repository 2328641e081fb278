//! Orders and signs attached to a primitive root of unity, and the case table for ε.

use qcenter::qscalar::{build_context, specialize_scalar, gauss_int, RatFn};
use qcenter::rootlat::RootSystem;

fn main() {
    for label in ["A1", "B2", "G2"] {
        let rs = RootSystem::parse(label).unwrap();
        for ell in 3..=12 {
            match build_context(&rs, ell) {
                Ok(ctx) => {
                    let rs_alpha: Vec<u32> = ctx.roots.iter().map(|o| o.r).collect();
                    println!("{label} ell={ell:>2}: r={} r_alpha={rs_alpha:?} epsilon={:+} ({})", ctx.r, ctx.epsilon, ctx.case.name());
                }
                Err(e) => println!("{label} ell={ell:>2}: excluded, {e}"),
            }
        }
    }

    // [ℓ]_q vanishes at ζ; [ℓ-1]_q does not.
    let ctx = build_context(&RootSystem::parse("A1").unwrap(), 5).unwrap();
    let five = specialize_scalar(&RatFn::from_laurent(gauss_int(5, 1)), &ctx).unwrap();
    let four = specialize_scalar(&RatFn::from_laurent(gauss_int(4, 1)), &ctx).unwrap();
    println!("[5] at zeta_5 = {}, [4] at zeta_5 = {}", ctx.field.format(&five), ctx.field.format(&four));
}
