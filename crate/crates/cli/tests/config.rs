use fracgalerkin_cli::{parse_config, Experiment, ProfileSpec, SolverChoice, SweepKey};

#[test]
fn happy_path() {
    let text = "alpha = 1.0\nbeta = 0.8\nK = 1.0\nT = 1.0\nm = 16\nd = 1\npotential = double_well\ninitial = bump:1.25:0.5\nexperiment = solve";
    let cfg = parse_config(text).unwrap();
    assert_eq!(cfg.alpha, 1.0);
    assert_eq!(cfg.beta, 0.8);
    assert_eq!(cfg.m, 16);
    assert_eq!(cfg.experiment, Experiment::Solve);
    assert_eq!(cfg.solver, SolverChoice::Auto);
    assert!(matches!(cfg.potential, ProfileSpec::DoubleWell { .. }));
    assert_eq!(cfg.initial, ProfileSpec::Bump { center: 1.25, width: 0.5 });
    assert_eq!(cfg.snapshots, vec![1.0]);
}

#[test]
fn alpha_out_of_range_names_the_key() {
    let e = parse_config("alpha = 1.5").unwrap_err();
    assert_eq!(e.key.as_deref(), Some("alpha"));
    let e = parse_config("alpha = 0").unwrap_err();
    assert_eq!(e.key.as_deref(), Some("alpha"));
}

#[test]
fn unknown_key_is_an_error() {
    let e = parse_config("beta = 0.8\nbetta = 0.8").unwrap_err();
    assert_eq!(e.line, Some(2));
    assert!(e.message.contains("betta"), "{e}");
}

#[test]
fn repeated_and_malformed_lines() {
    assert_eq!(parse_config("m = 4\nm = 8").unwrap_err().line, Some(2));
    assert_eq!(parse_config("# comment\nalpha 0.5").unwrap_err().line, Some(2));
    assert!(parse_config("m = four").is_err());
    assert!(parse_config("T = nan").is_err());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let cfg = parse_config("\n# header\nbeta = 0.5  # trailing\n\n").unwrap();
    assert_eq!(cfg.beta, 0.5);
}

#[test]
fn profile_syntax() {
    let p = |s: &str| s.parse::<ProfileSpec>();
    assert_eq!(p("zero").unwrap(), ProfileSpec::Zero);
    assert_eq!(p("mode:1,2").unwrap(), ProfileSpec::Mode(vec![1, 2]));
    assert_eq!(p("double_well:0.5").unwrap(), ProfileSpec::DoubleWell { tilt: 0.5 });
    assert_eq!(p("von_mises:1:4").unwrap(), ProfileSpec::VonMises { center: 1.0, kappa: 4.0 });
    assert!(p("oscillating:3:cosine").unwrap().is_time_dependent());
    assert!(p("oscillating:3:oscillating:2:cosine").is_err());
    assert!(p("bump:1.5").is_err());
    assert!(p("bump:1.5:10").is_err());
    assert!(p("von_mises:0:-1").is_err());
    assert!(p("mode").is_err());
    assert!(p("sawtooth").is_err());
}

#[test]
fn time_dependent_initial_datum_is_rejected() {
    assert_eq!(parse_config("initial = oscillating:1:cosine").unwrap_err().key.as_deref(), Some("initial"));
}

#[test]
fn sweep_members_are_validated() {
    let cfg = parse_config("experiment = sweep\nsweep_key = beta\nsweep_values = 1.0, 0.7, 0.4").unwrap();
    assert_eq!(cfg.sweep_key, Some(SweepKey::Beta));
    assert_eq!(cfg.sweep_values, vec![1.0, 0.7, 0.4]);
    let e = parse_config("experiment = sweep\nsweep_key = alpha\nsweep_values = 0.5, 1.5").unwrap_err();
    assert_eq!(e.key.as_deref(), Some("sweep_values"));
    assert!(parse_config("experiment = sweep\nsweep_key = gamma\nsweep_values = 1").is_err());
}
