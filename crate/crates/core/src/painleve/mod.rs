//! Painlevé II (Hastings-McLeod), Tracy-Widom GOE, the Lax pair in the
//! spike parameter `w` and the boundary-value PDE check.

pub mod lax;
pub mod pde;
pub mod table;

pub use lax::{
    lax_between, lax_propagate, lax_propagate_from, lax_propagate_scaled, spiked_edge_cdf, EdgeDistribution, W_STEP,
};
pub use pde::{edge_field, pde_residual, EdgeConvention, FieldGrid, ResidualGrid};
pub use table::{default_table, solve_hastings_mcleod, tw_goe_cdf, PainleveTable};

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::softedge::airy;

    fn table() -> &'static PainleveTable {
        static T: OnceLock<PainleveTable> = OnceLock::new();
        T.get_or_init(|| default_table().unwrap())
    }

    #[test]
    fn starts_on_the_airy_function() {
        let t = table();
        let (q, _) = t.q_at(8.0).unwrap();
        assert!((q / airy(8.0).unwrap().ai - 1.0).abs() < 1e-6);
        assert!(t.q().iter().all(|&v| v > 0.0));
        let last = t.e().len() - 1;
        assert!(1.0 - t.e()[last] < 1e-7 && 1.0 - t.f()[last] < 1e-7);
    }

    #[test]
    fn value_at_origin_is_stable_under_refinement() {
        let coarse = table().q_at(0.0).unwrap();
        let fine = solve_hastings_mcleod(-10.0, 8.0, 0.0025).unwrap();
        let fine = fine.q_at(0.0).unwrap();
        assert!((coarse.0 - fine.0).abs() < 1e-12);
        assert!((coarse.1 - fine.1).abs() < 1e-12);
        // published value of q(0)
        assert!((coarse.0 - 0.367_061_551_548).abs() < 1e-9, "{}", coarse.0);
    }

    #[test]
    fn integrated_solution_meets_the_left_series() {
        // the sweep and the series agree on an overlap above the join
        let t = table();
        for &s in &[-5.5, -6.0, -6.5] {
            let (q, _) = t.q_at(s).unwrap();
            let (a, _) = table::left_asymptotic(s);
            assert!((q / a - 1.0).abs() < 2e-7, "{s}");
        }
        let (q, _) = t.q_at(-12.0).unwrap();
        assert!((q - 6f64.sqrt()).abs() < 1e-3, "{q}");
    }

    #[test]
    fn goe_is_sqrt_of_e_times_f() {
        let t = table();
        for k in (0..t.s_grid().len()).step_by(97) {
            let s = t.s_grid()[k];
            let tw = tw_goe_cdf(t, s).unwrap();
            assert!((tw * tw - t.e()[k] * t.f()[k]).abs() < 1e-12);
        }
        let mut prev = 0.0;
        for &s in t.s_grid() {
            let v = tw_goe_cdf(t, s).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(tw_goe_cdf(t, 9.0).is_err());
    }

    #[test]
    fn lax_initial_data_and_linearity() {
        let t = table();
        let e = t.ln_e_at(-1.3).unwrap().exp();
        let (f, g) = lax_propagate(t, -1.3, 0.0).unwrap();
        assert!((f - e).abs() < 1e-15 && (g - e).abs() < 1e-15);
        let a = lax_propagate_from(t, -0.7, 1.4, [1.0, 0.3]).unwrap();
        let b = lax_propagate_from(t, -0.7, 1.4, [-0.2, 2.0]).unwrap();
        let c = lax_propagate_from(t, -0.7, 1.4, [0.8, 2.3]).unwrap();
        assert!((a.0 + b.0 - c.0).abs() < 1e-10 * c.0.abs().max(1.0));
        assert!((a.1 + b.1 - c.1).abs() < 1e-10 * c.1.abs().max(1.0));
    }

    #[test]
    fn decoupled_system_at_the_airy_end() {
        // q ≈ 0: f' ≈ 0 and g' = (w^2 - s) g. For w < 0 the growing g
        // swamps the O(q) coupling into g; f picks up O(q g) drift.
        let t = table();
        let s = 8.0;
        let e = t.ln_e_at(s).unwrap().exp();
        for &w in &[-0.25, -0.5, -1.0] {
            let (f, g) = lax_propagate(t, s, w).unwrap();
            let g_exact = e * (w * w * w / 3.0 - s * w).exp();
            assert!((f / e - 1.0).abs() < 1e-4, "{w}: {f} vs {e}");
            assert!((g / g_exact - 1.0).abs() < 1e-6, "{w}: {g} vs {g_exact}");
        }
    }

    #[test]
    fn zero_w_reduces_to_goe_and_boundary_limits() {
        let t = table();
        for k in 0..=40 {
            let s = -6.0 + 0.25 * k as f64;
            let a = spiked_edge_cdf(t, s, 0.0).unwrap();
            let b = tw_goe_cdf(t, s).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        assert!(spiked_edge_cdf(t, 0.0, -8.0).unwrap() < 1e-2);
    }

    #[test]
    fn field_rows_match_pointwise_evaluation() {
        let t = table();
        let field = edge_field(t, (-1.0, 0.0), (-0.5, 0.5), 0.25, EdgeConvention::literal(1.0)).unwrap();
        for i in 0..field.nx {
            for j in 0..field.nw {
                let v = spiked_edge_cdf(t, field.x(i), field.w(j)).unwrap();
                assert!((field.at(i, j) - v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn residual_of_synthetic_fields() {
        let ones = FieldGrid::from_fn((-1.0, 1.0), (-1.0, 1.0), 0.1, |_, _| 1.0).unwrap();
        assert!(pde_residual(&ones, 4.0).unwrap().max_abs < 1e-15);
        let lin = FieldGrid::from_fn((-1.0, 1.0), (-1.0, 1.0), 0.1, |x, _| x).unwrap();
        let r = pde_residual(&lin, 4.0).unwrap();
        assert!(r.grid.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn csv_round_trip() {
        let t = table();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("pii.csv");
        t.write_csv(&p).unwrap();
        let back = PainleveTable::read_csv(&p).unwrap();
        assert_eq!(back.q(), t.q());
        assert_eq!(tw_goe_cdf(&back, -1.234).unwrap(), tw_goe_cdf(t, -1.234).unwrap());
    }
}
