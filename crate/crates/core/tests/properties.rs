use std::f64::consts::PI;

use knotbound::generators::{gen_fourier_random, gen_torus_knot};
use knotbound::geom::Vec3;
use knotbound::invariants::{gauss_integrals, ropelength, total_curvature};
use knotbound::verify::lemmas::check_packing;
use knotbound::SampledCurve;
use nalgebra::{Rotation3, Unit};
use proptest::prelude::*;

fn loop_curve(seed: u64) -> SampledCurve {
    gen_fourier_random(4, seed, 96).unwrap()
}

fn rotation() -> impl Strategy<Value = Rotation3<f64>> {
    (-1.0..1.0f64, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(z, phi, angle)| {
        let r = (1.0 - z * z).sqrt();
        let axis = Unit::new_normalize(Vec3::new(r * phi.cos(), r * phi.sin(), z));
        Rotation3::from_axis_angle(&axis, angle)
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fenchel(seed in 0u64..10_000) {
        prop_assert!(total_curvature(&loop_curve(seed)) >= 2.0 * PI - 1e-9);
    }

    #[test]
    fn packing_holds(seed in 0u64..10_000, scale in 0.1..10.0f64) {
        let c = loop_curve(seed).scaled(scale).unwrap();
        for cert in check_packing(&c, None).unwrap() {
            prop_assert!(cert.pass, "{cert:?}");
        }
    }

    #[test]
    fn curvature_and_crossings_are_similarity_invariant(
        seed in 0u64..10_000,
        scale in 0.2..5.0f64,
        rot in rotation(),
        shift in prop::array::uniform3(-10.0..10.0f64),
    ) {
        let c = loop_curve(seed);
        let moved = c
            .transformed(&(rot.matrix() * scale))
            .unwrap()
            .translated(&Vec3::from(shift))
            .unwrap();
        prop_assert!(close(total_curvature(&c), total_curvature(&moved), 1e-9));
        if let (Ok(g), Ok(h)) = (gauss_integrals(&c, false), gauss_integrals(&moved, false)) {
            prop_assert!(close(g.acn, h.acn, 1e-8));
            prop_assert!(close(g.writhe, h.writhe, 1e-8));
            prop_assert!(close(ropelength(&c).unwrap(), ropelength(&moved).unwrap(), 1e-8));
        }
    }

    #[test]
    fn mirror_flips_writhe(seed in 0u64..10_000) {
        let c = loop_curve(seed);
        if let Ok(g) = gauss_integrals(&c, false) {
            let h = gauss_integrals(&c.mirrored().unwrap(), false).unwrap();
            prop_assert!(close(g.writhe, -h.writhe, 1e-9));
            prop_assert!(close(g.acn, h.acn, 1e-9));
        }
    }

    #[test]
    fn json_round_trip(seed in 0u64..10_000) {
        let c = loop_curve(seed);
        let back = SampledCurve::from_json_str(&c.to_json_string()).unwrap();
        prop_assert_eq!(c.vertices(), back.vertices());
        prop_assert_eq!(c.is_closed(), back.is_closed());
    }
}

#[test]
fn acn_bounds_writhe_on_torus_knots() {
    for q in [3, 5, 7] {
        let g = gauss_integrals(&gen_torus_knot(2, q, 3.0, 1.0, 256).unwrap(), false).unwrap();
        assert!(g.acn >= g.writhe.abs());
        assert!(g.acn >= 3.0, "(2,{q}) acn {}", g.acn);
    }
}
