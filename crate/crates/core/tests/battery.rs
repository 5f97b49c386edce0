//! The randomized battery: conductor constancy at pure points, agreement of
//! the purity routes, and properties of Frobenius-semisimplification.

use wdtk_core::families::battery::{battery, constructed_cases};
use wdtk_core::families::{specialize, sweep};
use wdtk_core::wdrep::{
    build_blocks, conductor, decompose_verified, frobenius_ss, is_isomorphic, purity_route_a, purity_route_b, same_block_multiset, Purity,
};

const SEED: u64 = 0x5eed_2024;

#[test]
fn pure_points_keep_the_generic_conductor() {
    let cases = battery(SEED, 100);
    let mut pure = 0;
    let mut jumps = 0;
    for case in &cases {
        let report = sweep(&case.family, &case.points).expect("valid family");
        for row in &report.rows {
            assert!(row.error.is_none(), "case {} at {}: {:?}", case.id, row.point, row.error);
            assert!(!row.is_violation(), "case {} at {}: {:?} vs generic {}", case.id, row.point, row.conductor, report.generic);
            if !row.matches_generic {
                jumps += 1;
            }
        }
        pure += report.pure_rows();
    }
    assert!(pure >= 100, "only {pure} pure points");
    assert!(jumps > 0, "no conductor jump at any non-pure point");
}

#[test]
fn purity_routes_agree_on_battery() {
    for case in battery(SEED, 100) {
        for p in &case.points {
            let Ok(w) = specialize(&case.family, p) else { continue };
            let a = purity_route_a(&w).unwrap();
            let b = purity_route_b(&w).unwrap();
            if a.is_decidable() && b.is_decidable() {
                match (&a, &b) {
                    (Purity::Pure { weight: x }, Purity::Pure { weight: y }) => assert_eq!(x, y),
                    (Purity::NotPure { .. }, Purity::NotPure { .. }) => {}
                    _ => panic!("case {} at {p}: {a} vs {b}", case.id),
                }
            }
        }
    }
}

#[test]
fn frobenius_semisimplification_properties() {
    for case in battery(SEED, 100) {
        for p in &case.points {
            let Ok(w) = specialize(&case.family, p) else { continue };
            let ss = frobenius_ss(&w).unwrap();
            assert_eq!(frobenius_ss(&ss).unwrap(), ss);
            assert_eq!(ss.rho(), w.rho());
            assert_eq!(ss.n(), w.n());
            assert_eq!(ss.phi().charpoly(), w.phi().charpoly());
            assert_eq!(conductor(&ss).unwrap(), conductor(&w).unwrap());
        }
    }
}

#[test]
fn decompose_recovers_constructed_blocks() {
    for (i, case) in constructed_cases(SEED, 50).iter().enumerate() {
        let (found, _) = decompose_verified(&case.rep).unwrap();
        assert!(same_block_multiset(&found, &case.blocks).unwrap(), "case {i} ({})", case.fixture);
        let rebuilt = build_blocks(&case.blocks, case.rep.lf()).unwrap();
        assert!(is_isomorphic(&rebuilt, &case.rep).unwrap().is_some());
    }
}

#[test]
fn trace_harness_never_reports_a_violation() {
    use wdtk_core::families::{theorem_c_harness, Family, PseudoTrace};
    use wdtk_core::scalars::Matrix;
    for case in battery(SEED, 100) {
        let t = PseudoTrace::new(case.family.clone());
        let dim = case.family.rep.dim();
        let silenced = Family::new(case.family.domain.clone(), case.family.rep.with_n(Matrix::zeros(dim, dim)));
        let members: Vec<_> = case
            .points
            .iter()
            .flat_map(|p| [(case.family.clone(), p.clone()), (silenced.clone(), p.clone())])
            .collect();
        let report = theorem_c_harness(&t, &members);
        assert!(report.holds(), "case {}: {report}", case.id);
    }
}
