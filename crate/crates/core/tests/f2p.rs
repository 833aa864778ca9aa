use stallings::f2p::{choose_partner, fab_fcd_geodesic, moves_geodesically_away, syllables, SyllableKind};
use stallings::{f2p_exhaustive, f2p_rewrite, is_k_path, Ball, Case, ComplexKind, EdgePath, ForbiddenRegion, GElement, Label};

#[test]
fn rewrites_a_commutator_into_a_k_path() {
    let tau = EdgePath::parse("aaab", "acAC").unwrap();
    let r = f2p_rewrite(&tau, 2).unwrap();
    let letters: Vec<_> = r.kpath.labels.iter().map(|l| l.as_letter().unwrap()).collect();
    assert!(is_k_path(&letters));
    assert_eq!(r.certificate.start, tau);
    assert_eq!(r.certificate.claimed_end, r.kpath);
    assert!(r.certificate.verify(&ForbiddenRegion::gamma1_ball(2)).ok);
}

#[test]
fn the_bound_is_tight_for_paths_near_the_next_sphere() {
    let tau = EdgePath::parse("aaa", "cabCBA").unwrap();
    let r = f2p_rewrite(&tau, 2).unwrap();
    assert!(r.certificate.verify(&ForbiddenRegion::gamma1_ball(2)).ok);
    assert!(!r.certificate.verify(&ForbiddenRegion::gamma1_ball(3)).ok);
}

#[test]
fn rejects_paths_that_enter_the_ball() {
    assert!(f2p_rewrite(&EdgePath::parse("a", "acAC").unwrap(), 2).is_err());
    assert!(f2p_rewrite(&EdgePath::parse("aaab", "ac").unwrap(), 2).is_err());
}

#[test]
fn partner_letters_move_away() {
    let ball = Ball::build(GElement::identity(), 4, ComplexKind::Gamma1, 1_000_000).unwrap();
    for v in ball.vertices().iter().filter(|v| v.length() >= 3) {
        for kind in [SyllableKind::AB_POS, SyllableKind::AB_NEG, SyllableKind::CD_POS, SyllableKind::CD_NEG] {
            if let Ok(t) = choose_partner(v, kind) {
                assert!(moves_geodesically_away(v, t), "{v} {kind:?}");
            }
        }
        let g = fab_fcd_geodesic(v);
        assert_eq!(g.alpha.len() + g.beta.len(), v.length());
    }
}

#[test]
fn syllables_alternate_factors() {
    let s = syllables(&EdgePath::parse("aaa", "abcCdBA").unwrap()).unwrap();
    for w in s.windows(2) {
        assert_ne!(w[0].kind, w[1].kind);
    }
    let total: usize = s.iter().map(|x| x.letters.len()).sum();
    assert_eq!(total, 7);
}

#[test]
fn small_exhaustive_run() {
    let r = f2p_exhaustive(3, 4, 4, 2).unwrap();
    assert!(r.paths > 1_000_000);
    assert!(r.all_verified(), "{:?}", r.failures);
    for case in Case::ALL {
        assert!(r.case_counts.contains_key(case.name()), "{case:?} never fired");
    }
}

#[test]
fn k_loops_need_no_moves() {
    let e: Vec<Label> = Label::parse_all("e1E1").unwrap();
    let tau = EdgePath::new(stallings::SElement::parse("aaab").unwrap(), stallings::e_expand(&e).unwrap().into_iter().map(Label::from).collect());
    let r = f2p_rewrite(&tau, 2).unwrap();
    assert!(r.trace.is_empty());
}
