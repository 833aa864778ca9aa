use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stallings::homotopy::{comb_null_homotopy, product_homotopy, triangle_convert};
use stallings::{Certificate, ComplexKind, EdgePath, ForbiddenRegion, Homotopy, Label, Letter, SElement};

fn path(base: &str, labels: &str) -> EdgePath {
    EdgePath::parse(base, labels).unwrap()
}

#[test]
fn commutator_contracts_in_gamma1() {
    let mut h = Homotopy::new(ComplexKind::Gamma1, path("aaa", "acAC"));
    h.commute(0).unwrap();
    assert_eq!(h.reduce_segment(0, 4), 0);
    let cert = h.finish();
    assert!(cert.claimed_end.is_empty());
    assert!(cert.verify(&ForbiddenRegion::gamma1_ball(1)).ok);
    assert!(!cert.verify(&ForbiddenRegion::gamma1_ball(3)).ok);
}

#[test]
fn product_grid_sweeps_the_grid() {
    let base = SElement::parse("aabb").unwrap();
    let tau = Letter::parse_all("ab").unwrap();
    let gamma = Letter::parse_all("cdd").unwrap();
    let cert = product_homotopy(&base, &tau, &gamma).unwrap();
    assert_eq!(cert.len(), tau.len() * gamma.len());
    assert!(cert.verify(&ForbiddenRegion::empty()).ok);
    let swept = cert.swept_vertices().unwrap();
    assert_eq!(swept.len(), (tau.len() + 1) * (gamma.len() + 1));
}

#[test]
fn composition_and_json() {
    let tri = triangle_convert(&path("abcd", "bAcDdCaB")).unwrap();
    assert_eq!(tri.complex, ComplexKind::Gamma2);
    let comb = {
        let mut h = Homotopy::new(ComplexKind::Gamma2, tri.claimed_end.clone());
        let n = stallings::homotopy::expand_at(&mut h, 0, tri.claimed_end.len()).unwrap();
        stallings::homotopy::comb_at(&mut h, 0, n).unwrap();
        h.finish()
    };
    let total = tri.compose(&comb).unwrap();
    assert!(total.verify(&ForbiddenRegion::empty()).ok);
    let json = total.to_json().unwrap();
    assert_eq!(Certificate::from_json(&json).unwrap(), total);
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["version"] = serde_json::json!(99);
    assert!(Certificate::from_json(&v.to_string()).is_err());
}

#[test]
fn composition_rejects_a_gap() {
    let a = Certificate::identity(ComplexKind::Gamma1, path("", "acAC"));
    let b = Certificate::identity(ComplexKind::Gamma1, path("a", "acAC"));
    assert!(a.compose(&b).is_err());
}

#[test]
fn tampering_is_detected() {
    let cert = comb_null_homotopy(&path("aabcc", "bAcCaB")).unwrap();
    assert!(cert.verify(&ForbiddenRegion::empty()).ok);
    let mut wrong_end = cert.clone();
    wrong_end.claimed_end.labels.push(Label::parse_all("a").unwrap()[0]);
    assert!(!wrong_end.verify(&ForbiddenRegion::empty()).ok);
    let mut truncated = cert.clone();
    assert!(truncated.moves.pop().is_some());
    assert!(!truncated.verify(&ForbiddenRegion::empty()).ok);
}

#[test]
fn every_swept_vertex_matters() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (base, labels) in [("aabcc", "bAcCaB"), ("ddcab", "acAC"), ("abcd", "bAdCcDaB")] {
        let cert = comb_null_homotopy(&path(base, labels)).unwrap();
        let mut swept = cert.swept_vertices().unwrap();
        swept.shuffle(&mut rng);
        for v in swept.into_iter().take(10) {
            let v_str = format!("{v:?}");
            let region = ForbiddenRegion::from_vertices([v]);
            assert!(!cert.verify(&region).ok, "{base} {labels}: {v_str}");
        }
    }
}
