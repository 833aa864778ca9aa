use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stallings::pipeline::{contract_loop, lifted_contraction, far_base, random_band_expression, random_gamma1_loop, x_ball};
use stallings::{
    extract_bands, build_diagram, neighbors, run_ends_experiment, run_main_pipeline, run_reduce_demo, ComplexKind, ConjugateExpression,
    EdgePath, ForbiddenRegion, PipelineReport, SElement,
};

fn point() -> ForbiddenRegion {
    ForbiddenRegion::from_vertices([SElement::identity()])
}

#[test]
fn one_cell_far_from_the_identity() {
    let tau = EdgePath::parse("aaaaabcc", "acAC").unwrap();
    let r = run_main_pipeline(&tau, &point()).unwrap();
    assert!(r.verified);
    assert_eq!(r.p, 0);
    assert_eq!(r.certificate.start, tau);
    assert!(r.certificate.claimed_end.is_empty());
}

#[test]
fn commutator_near_the_unit_ball() {
    let c = x_ball(1, 100_000).unwrap();
    let r = run_main_pipeline(&EdgePath::parse("aaa", "acAC").unwrap(), &c).unwrap();
    assert!(r.verified, "{:?}", r.verification);
    for pair in r.stages.windows(2) {
        assert_eq!(pair[0].certificate.claimed_end, pair[1].certificate.start, "{} then {}", pair[0].name, pair[1].name);
    }
    let names: Vec<&str> = r.stages.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["f2p", "triangles", "s-translation", "comb"]);
}

#[test]
fn translation_is_used_when_combing_in_place_fails() {
    let c = ForbiddenRegion::gamma1_ball(4);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut lifted = 0;
    for _ in 0..60 {
        let tau = random_gamma1_loop(&mut rng, 8, 5, 4);
        let r = run_main_pipeline(&tau, &c).unwrap();
        assert!(r.verified, "{}", tau.label_string());
        if r.p > 0 {
            lifted += 1;
            // the power is minimal: one level lower does not verify
            let (up, down) = lifted_contraction(&r.epath, r.p - 1).unwrap();
            let head = r.stages[0].certificate.compose(&r.stages[1].certificate).unwrap();
            let lower = head.compose(&up).unwrap().compose(&down).unwrap();
            assert!(!lower.verify(&c).ok);
        }
    }
    assert!(lifted > 0);
}

#[test]
fn reports_are_deterministic() {
    let c = x_ball(1, 100_000).unwrap();
    let run = |seed| -> Vec<PipelineReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..5)
            .map(|_| {
                let mut r = run_main_pipeline(&random_gamma1_loop(&mut rng, 8, 4, 3), &c).unwrap();
                r.elapsed_ms = 0.0;
                r
            })
            .collect()
    };
    let a = run(4);
    assert_eq!(a, run(4));
    let json = serde_json::to_string(&a).unwrap();
    let back: Vec<PipelineReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
}

#[test]
fn single_band_far_away() {
    let e: ConjugateExpression = ":[s,e1]".parse().unwrap();
    let r = run_reduce_demo(&e, &SElement::parse("abcab").unwrap(), &point(), 100_000).unwrap();
    assert!(r.verified);
    assert_eq!((r.bands, r.self_paired, r.detours), (1, 0, 0));
}

#[test]
fn stacked_band_needs_a_detour() {
    let e: ConjugateExpression = ":[s,e1]; E1:[s,e6]".parse().unwrap();
    let d = build_diagram(&e).unwrap();
    let base = SElement::parse("aabbbcddc").unwrap();
    let boundary = EdgePath::new(base.clone(), d.boundary_word()).vertices();
    // block a neighbour of the inner side's middle vertex
    let middle = &boundary[2];
    let blocked = neighbors(middle, ComplexKind::X)
        .into_iter()
        .map(|(_, v)| v)
        .find(|v| !boundary.contains(v))
        .unwrap();
    let r = run_reduce_demo(&e, &base, &ForbiddenRegion::from_vertices([blocked]), 1_000_000).unwrap();
    assert!(r.verified, "{:?}", r.verification);
    assert_eq!(r.detours, 1);
    assert_ne!(r.steps[0].side, extract_bands(&d).unwrap().bands[0].right);
}

#[test]
fn random_two_band_loops() {
    let c = x_ball(1, 100_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let e = random_band_expression(&mut rng, 2);
        let base = far_base(&mut rng, &e, 1);
        let r = run_reduce_demo(&e, &base, &c, 1_000_000).unwrap();
        assert!(r.verified, "{e}: {:?}", r.verification);
        assert_eq!(r.bands, 2);
    }
}

#[test]
fn lifting_an_e_loop_clears_a_nearby_region() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let loop_ = EdgePath::parse("aabbcd", "e1e6E1E6").unwrap();
    assert!(loop_.is_loop());
    let (direct, level) = contract_loop(&loop_, &ForbiddenRegion::empty()).unwrap();
    assert_eq!(level, 0);
    let swept = direct.swept_vertices().unwrap();
    let inside: Vec<&SElement> = swept.iter().filter(|v| !loop_.vertices().contains(v)).collect();
    let v = inside[rng.gen_range(0..inside.len())].clone();
    let (lifted, level) = contract_loop(&loop_, &ForbiddenRegion::from_vertices([v.clone()])).unwrap();
    assert_ne!(level, 0);
    assert!(lifted.verify(&ForbiddenRegion::from_vertices([v])).ok);
}

#[test]
fn ends_rows() {
    let rows = run_ends_experiment(1, 3, 5_000_000).unwrap();
    let essential: Vec<(String, usize)> = rows.iter().map(|r| (r.label.clone(), r.report.essential)).collect();
    assert_eq!(essential[..3], [("K".to_string(), 1), ("Gamma1".to_string(), 1), ("H".to_string(), 1)]);
    assert!(essential[3].1 > 1);
}
