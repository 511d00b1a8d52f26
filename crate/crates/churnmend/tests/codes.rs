//! Operating points for all six code families, plus parameter and
//! scheme-pairing validation.

use churnmend::codes::{
    mbcr_point, mbmr_point, mbr_point, mscr_point, msmr_point, msr_point, RepairScheme,
};
use churnmend::{ChurnParams, ClockModel, CodeParams, Error, Family, Strategy};

/// Closed-form point evaluations are exact up to f64 rounding.
const TOL: f64 = 1e-12;

fn params(n: u32, k: u32, d: u32, m: f64) -> CodeParams {
    CodeParams::new(n, k, d, m).unwrap()
}

#[test]
fn code_bounds_are_enforced() {
    assert!(matches!(
        CodeParams::new(4, 3, 2, 1.0),
        Err(Error::CodeBounds { .. })
    ));
    assert!(matches!(
        CodeParams::new(4, 2, 4, 1.0),
        Err(Error::CodeBounds { .. })
    ));
    assert!(matches!(
        CodeParams::new(4, 0, 2, 1.0),
        Err(Error::CodeBounds { .. })
    ));
    assert!(matches!(CodeParams::new(4, 2, 3, 0.0), Err(Error::FileSize(_))));
    assert!(matches!(
        CodeParams::new(4, 2, 3, f64::NAN),
        Err(Error::FileSize(_))
    ));
    // k = d = n-1 is the tightest valid shape.
    assert!(CodeParams::new(4, 3, 3, 1.0).is_ok());
}

#[test]
fn churn_params_normalize_rates() {
    let churn = ChurnParams::new(0.5, 2.0).unwrap();
    assert_eq!(churn.lambda(), 0.5);
    assert_eq!(churn.mu(), 2.0);
    assert!((churn.rho() - 0.25).abs() < TOL);
    let by_ratio = ChurnParams::from_rho(0.25).unwrap();
    assert_eq!(by_ratio.mu(), 1.0);
    assert!((by_ratio.lambda() - 0.25).abs() < TOL);
    assert!(matches!(ChurnParams::new(-1.0, 2.0), Err(Error::RatePositive { .. })));
    assert!(matches!(ChurnParams::new(1.0, 0.0), Err(Error::RatePositive { .. })));
    assert!(matches!(ChurnParams::from_rho(f64::INFINITY), Err(Error::RatePositive { .. })));
}

#[test]
fn minimum_storage_point_examples() {
    let op = msr_point(&params(4, 2, 3, 4.0));
    assert!((op.alpha - 2.0).abs() < TOL);
    assert!((op.gamma - 3.0).abs() < TOL);
    assert!((op.beta - 1.0).abs() < TOL);

    let op = msr_point(&params(30, 20, 25, 1.0));
    assert!((op.alpha - 0.05).abs() < TOL);
    assert!((op.gamma - 25.0 / 120.0).abs() < TOL);

    // d = k collapses regeneration to full reconstruction: gamma = d*alpha.
    let op = msr_point(&params(5, 3, 3, 2.0));
    assert!((op.gamma - 2.0).abs() < TOL);
    assert!((op.gamma - 3.0 * op.alpha).abs() < TOL);
}

#[test]
fn minimum_bandwidth_point_examples() {
    let op = mbr_point(&params(4, 2, 3, 4.0));
    assert!((op.alpha - 2.4).abs() < TOL);
    assert_eq!(op.alpha, op.gamma);

    let op = mbr_point(&params(30, 20, 25, 1.0));
    assert!((op.alpha - 50.0 / 620.0).abs() < TOL);
    assert!((op.alpha - 0.080_645_161_290_322).abs() < 1e-12);
}

#[test]
fn storage_bandwidth_tradeoff_orders_the_extremes() {
    for (n, k, d) in [(30, 20, 25), (10, 3, 6), (8, 4, 7), (12, 2, 5)] {
        let p = params(n, k, d, 1.0);
        let msr = msr_point(&p);
        let mbr = mbr_point(&p);
        // Minimum storage stores less, minimum bandwidth moves less.
        assert!(msr.alpha <= mbr.alpha + TOL, "alpha order at ({n},{k},{d})");
        assert!(mbr.gamma <= msr.gamma + TOL, "gamma order at ({n},{k},{d})");
        assert!(msr.alpha <= msr.gamma + TOL);
        assert_eq!(mbr.alpha, mbr.gamma);
    }
}

#[test]
fn cooperative_point_examples() {
    let op = mscr_point(&params(30, 20, 25, 1.0), 5).unwrap();
    assert!((op.gamma - 29.0 / 200.0).abs() < TOL);
    assert!((op.alpha - 0.05).abs() < TOL);

    let op = mbcr_point(&params(30, 19, 25, 1.0), 5).unwrap();
    assert!((op.alpha - 54.0 / (19.0 * 36.0)).abs() < TOL);
    assert!((op.alpha - 0.078_947_368_421_052).abs() < 1e-12);
    assert_eq!(op.alpha, op.gamma);
}

#[test]
fn multi_node_point_examples() {
    let op = msmr_point(&params(30, 19, 25, 1.0), 5).unwrap();
    assert!((op.gamma - 125.0 / 209.0).abs() < TOL);
    assert!((op.gamma - 0.598_086_124_401_913).abs() < 1e-12);
    assert!((op.beta - op.gamma / 125.0).abs() < TOL);

    let op = mbmr_point(&params(30, 19, 25, 1.0), 5).unwrap();
    assert!((op.alpha - 50.0 / 684.0).abs() < TOL);
    assert!((op.alpha - 0.073_099_415_204_678).abs() < 1e-12);
    assert!((op.gamma - 5.0 * op.alpha).abs() < TOL);
    assert!((op.beta - op.alpha / 25.0).abs() < TOL);
}

#[test]
fn group_of_one_reduces_to_single_newcomer_points() {
    for (n, k, d) in [(30, 20, 25), (10, 3, 6), (8, 4, 7)] {
        let p = params(n, k, d, 2.5);
        let msr = msr_point(&p);
        let mbr = mbr_point(&p);
        for (point, single_alpha, single_gamma) in [
            (mscr_point(&p, 1).unwrap(), msr.alpha, msr.gamma),
            (msmr_point(&p, 1).unwrap(), msr.alpha, msr.gamma),
            (mbcr_point(&p, 1).unwrap(), mbr.alpha, mbr.gamma),
            (mbmr_point(&p, 1).unwrap(), mbr.alpha, mbr.gamma),
        ] {
            assert!((point.alpha - single_alpha).abs() < TOL, "alpha at ({n},{k},{d})");
            assert!((point.gamma - single_gamma).abs() < TOL, "gamma at ({n},{k},{d})");
        }
    }
}

#[test]
fn group_sizes_are_bounded_by_spare_nodes() {
    let p = params(30, 20, 25, 1.0);
    for point in [mscr_point, mbcr_point, msmr_point, mbmr_point] {
        assert!(matches!(point(&p, 0), Err(Error::GroupSize { .. })));
        assert!(point(&p, 5).is_ok());
        assert!(matches!(point(&p, 6), Err(Error::GroupSize { .. })));
    }
}

#[test]
fn cooperative_download_splits_into_helper_and_peer_traffic() {
    // gamma = d*beta + (t-1)*beta' for both cooperative families.
    for t in 1..=5u32 {
        let p = params(30, 19, 25, 1.0);
        for point in [mscr_point, mbcr_point] {
            let op = point(&p, t).unwrap();
            let reassembled = 25.0 * op.beta + f64::from(t - 1) * op.beta_prime;
            assert!((op.gamma - reassembled).abs() < TOL, "t={t}");
        }
    }
}

#[test]
fn bigger_groups_never_raise_per_newcomer_bandwidth() {
    for (n, k, d) in [(30, 20, 25), (30, 19, 25), (12, 4, 8), (40, 2, 10)] {
        let p = params(n, k, d, 1.0);
        for point in [mscr_point, mbcr_point] {
            let mut prev = f64::INFINITY;
            for t in 1..=(n - d) {
                let gamma = point(&p, t).unwrap().gamma;
                assert!(gamma <= prev + TOL, "gamma rose at t={t} for ({n},{k},{d})");
                if k >= 2 {
                    assert!(gamma < prev, "gamma not strict at t={t} for ({n},{k},{d})");
                }
                prev = gamma;
            }
        }
    }
    // k = 1 degenerates: every newcomer needs the whole file regardless of t.
    let p = params(10, 1, 5, 1.0);
    let g1 = mscr_point(&p, 1).unwrap().gamma;
    let g5 = mscr_point(&p, 5).unwrap().gamma;
    assert!((g1 - g5).abs() < TOL);
}

#[test]
fn bandwidth_optimal_cooperation_never_exceeds_storage_optimal() {
    for t in 1..=5u32 {
        let p = params(30, 19, 25, 1.0);
        let mscr = mscr_point(&p, t).unwrap();
        let mbcr = mbcr_point(&p, t).unwrap();
        assert!(mbcr.gamma <= mscr.gamma + TOL, "t={t}");
        assert!(mscr.alpha <= mbcr.alpha + TOL, "t={t}");
    }
}

#[test]
fn all_point_fields_are_positive() {
    for (n, k, d) in [(4, 2, 3), (30, 20, 25), (30, 19, 25), (40, 2, 10)] {
        let p = params(n, k, d, 1.0);
        let mut points = vec![msr_point(&p), mbr_point(&p)];
        for t in 1..=(n - d).min(6) {
            points.push(mscr_point(&p, t).unwrap());
            points.push(mbcr_point(&p, t).unwrap());
            points.push(msmr_point(&p, t).unwrap());
            points.push(mbmr_point(&p, t).unwrap());
        }
        for op in points {
            assert!(op.alpha > 0.0 && op.beta > 0.0 && op.gamma > 0.0);
            assert!(op.beta_prime >= 0.0);
        }
    }
}

#[test]
fn scheme_pairings_reject_unsupported_combinations() {
    // Cooperative families are inherently distributed.
    assert!(matches!(
        RepairScheme::new(Family::Mscr, Strategy::Centralized, ClockModel::Fixed),
        Err(Error::SchemePairing { .. })
    ));
    assert!(matches!(
        RepairScheme::new(Family::Mbcr, Strategy::Centralized, ClockModel::Fixed),
        Err(Error::SchemePairing { .. })
    ));
    // Multi-node families are inherently centralized.
    assert!(matches!(
        RepairScheme::new(Family::Msmr, Strategy::Distributed, ClockModel::Fixed),
        Err(Error::SchemePairing { .. })
    ));
    assert!(matches!(
        RepairScheme::new(Family::Mbmr, Strategy::Distributed, ClockModel::Fixed),
        Err(Error::SchemePairing { .. })
    ));
    // Single-newcomer families accept both strategies.
    for family in [Family::Msr, Family::Mbr] {
        for strategy in [Strategy::Distributed, Strategy::Centralized] {
            assert!(RepairScheme::new(family, strategy, ClockModel::Fixed).is_ok());
        }
    }
}

#[test]
fn scheme_labels_follow_strategy_family_convention() {
    let scheme = RepairScheme::new(Family::Msr, Strategy::Distributed, ClockModel::Fixed).unwrap();
    assert_eq!(scheme.label(), "D-MSR");
    let scheme =
        RepairScheme::new(Family::Msmr, Strategy::Centralized, ClockModel::Fixed).unwrap();
    assert_eq!(scheme.label(), "C-MSMR");
    let scheme = RepairScheme::new(Family::Mbcr, Strategy::Distributed, ClockModel::Fixed).unwrap();
    assert_eq!(scheme.label(), "D-MBCR");
}

#[test]
fn family_and_model_strings_round_trip() {
    for (text, family) in [
        ("msr", Family::Msr),
        ("mbr", Family::Mbr),
        ("mscr", Family::Mscr),
        ("mbcr", Family::Mbcr),
        ("msmr", Family::Msmr),
        ("mbmr", Family::Mbmr),
    ] {
        assert_eq!(text.parse::<Family>().unwrap(), family);
        assert_eq!(family.to_string().to_lowercase(), text);
    }
    assert!("rs".parse::<Family>().is_err());

    assert_eq!("fixed".parse::<ClockModel>().unwrap(), ClockModel::Fixed);
    assert_eq!(
        "node-dependent".parse::<ClockModel>().unwrap(),
        ClockModel::NodeDependent
    );
    assert_eq!(
        "failures-during-repair".parse::<ClockModel>().unwrap(),
        ClockModel::FailuresDuringRepair
    );
    // Short alias accepted on input only.
    assert_eq!(
        "failures".parse::<ClockModel>().unwrap(),
        ClockModel::FailuresDuringRepair
    );
    assert_eq!(
        ClockModel::FailuresDuringRepair.to_string(),
        "failures-during-repair"
    );

    assert_eq!("distributed".parse::<Strategy>().unwrap(), Strategy::Distributed);
    assert_eq!("centralized".parse::<Strategy>().unwrap(), Strategy::Centralized);
    assert!("hybrid".parse::<Strategy>().is_err());
}

#[test]
fn family_classification_flags() {
    assert!(Family::Mscr.is_cooperative());
    assert!(Family::Mbcr.is_cooperative());
    assert!(!Family::Msr.is_cooperative());
    assert!(Family::Msmr.is_multi_node());
    assert!(Family::Mbmr.is_multi_node());
    assert!(!Family::Mbr.is_multi_node());
}

#[test]
fn file_size_scales_every_point_linearly() {
    let base = params(30, 19, 25, 1.0);
    let scaled = params(30, 19, 25, 7.0);
    let pairs = [
        (msr_point(&base), msr_point(&scaled)),
        (mbr_point(&base), mbr_point(&scaled)),
        (mscr_point(&base, 5).unwrap(), mscr_point(&scaled, 5).unwrap()),
        (mbmr_point(&base, 5).unwrap(), mbmr_point(&scaled, 5).unwrap()),
    ];
    for (one, seven) in pairs {
        assert!((seven.alpha - 7.0 * one.alpha).abs() < TOL);
        assert!((seven.gamma - 7.0 * one.gamma).abs() < TOL);
        assert!((seven.beta - 7.0 * one.beta).abs() < TOL);
    }
}
