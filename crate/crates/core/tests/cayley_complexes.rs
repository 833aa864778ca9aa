use stallings::{distance_gamma1, neighbors, sphere_complement_components, Ball, ComplexKind, GElement, SElement};

#[test]
fn ball_sizes() {
    let g1 = Ball::build(GElement::identity(), 2, ComplexKind::Gamma1, 1_000_000).unwrap();
    assert_eq!(g1.sphere_sizes(), vec![1, 8, 40]);
    assert_eq!(g1.len(), 49);
    let k = Ball::build(GElement::identity(), 1, ComplexKind::GammaK, 1_000_000).unwrap();
    assert_eq!(k.len(), 17);
    let f = Ball::build(GElement::identity(), 3, ComplexKind::FreeAB, 1_000_000).unwrap();
    assert_eq!(f.sphere_sizes(), vec![1, 4, 12, 36]);
}

#[test]
fn selement_and_gelement_balls_agree() {
    for kind in [ComplexKind::Gamma1, ComplexKind::GammaK, ComplexKind::Gamma2] {
        let g = Ball::build(GElement::identity(), 2, kind, 1_000_000).unwrap();
        let s = Ball::build(SElement::identity(), 2, kind, 1_000_000).unwrap();
        assert_eq!(g.sphere_sizes(), s.sphere_sizes(), "{kind}");
    }
}

#[test]
fn gamma1_distance_is_the_word_length() {
    let ball = Ball::build(GElement::identity(), 3, ComplexKind::Gamma1, 1_000_000).unwrap();
    for v in ball.vertices() {
        assert_eq!(ball.distance(v), Some(distance_gamma1(&GElement::identity(), v)));
    }
}

#[test]
fn neighbor_counts() {
    let id = SElement::identity();
    assert_eq!(neighbors(&id, ComplexKind::Gamma1).len(), 8);
    assert_eq!(neighbors(&id, ComplexKind::X).len(), 58);
    assert_eq!(neighbors(&id, ComplexKind::GammaH).len(), 50);
    assert_eq!(neighbors(&id, ComplexKind::FreeAB).len(), 4);
}

#[test]
fn budget_aborts_growth() {
    assert!(Ball::build(SElement::identity(), 4, ComplexKind::X, 1_000).is_err());
}

#[test]
fn small_ends() {
    for kind in [ComplexKind::GammaK, ComplexKind::Gamma1, ComplexKind::GammaH] {
        let r = sphere_complement_components(kind, 1, 3, 5_000_000).unwrap();
        assert_eq!(r.essential, 1, "{kind}");
    }
    let f = sphere_complement_components(ComplexKind::FreeAB, 1, 3, 5_000_000).unwrap();
    assert_eq!(f.essential, 12);
    assert!(f.essential >= 4);
}

#[test]
fn dot_export_lists_every_vertex() {
    let ball = Ball::build(GElement::identity(), 1, ComplexKind::Gamma1, 1_000).unwrap();
    let dot = ball.to_dot();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("fillcolor").count(), 9);
}
