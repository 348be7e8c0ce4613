mod common;

#[test]
fn cli_outputs_match_golden_files() {
    let cases = common::golden_cases();
    assert!(cases.len() >= 20);
    let bad = common::golden_mismatches();
    assert!(bad.is_empty(), "golden mismatches: {bad:?}");
}

#[test]
fn scalar_rendering_is_canonical() {
    let s = qaffine::parse::parse_scalar("gam^(1/2)*q^(-3) + 2*q^(4/2) - 1/2 + q^(-6/2)*gam(1/2)").unwrap();
    assert_eq!(s.to_string(), "2*q^(-3)*gam^(1/2) - 1/2 + 2*q^(2)");
}
