//! Exact checks of the kernel identities: closure of the zero-sum two-letter
//! words, normality of `K` under single-letter conjugation, and the shrinking
//! generating sets `T ⊃ {ba⁻¹, da⁻¹, db⁻¹, dc⁻¹} ⊃ {ba⁻¹, dc⁻¹, da⁻¹}`.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::egen::Q;
use crate::gelement::GElement;
use crate::letter::{labels_to_string, Base, EGen, Label, Letter, Sign};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_normal_form: String,
    pub rhs_normal_form: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

impl IdentityReport {
    fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
        self.all_pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn value(s: &str) -> GElement {
    GElement::parse(s).expect("identity literals are well formed")
}

/// `lhs` and `rhs` are letter strings; whitespace separates factors for readability only.
fn identity(name: &str, lhs: &str, rhs: &str) -> IdentityCheck {
    let (l, r) = (value(lhs), value(rhs));
    IdentityCheck {
        name: name.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        lhs_normal_form: l.to_string(),
        rhs_normal_form: r.to_string(),
        pass: l == r,
    }
}

/// `lhs = rhs⁻¹`.
fn inverse_identity(name: &str, lhs: &str, rhs: &str) -> IdentityCheck {
    let (l, r) = (value(lhs), value(rhs).inverse());
    IdentityCheck {
        name: name.to_string(),
        lhs: lhs.to_string(),
        rhs: format!("({rhs})^-1"),
        lhs_normal_form: l.to_string(),
        rhs_normal_form: r.to_string(),
        pass: l == r,
    }
}

fn predicate(name: &str, subject: String, pass: bool, detail: String) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        lhs: subject,
        rhs: "in K".to_string(),
        lhs_normal_form: detail,
        rhs_normal_form: String::new(),
        pass,
    }
}

fn signed_letters() -> impl Iterator<Item = Letter> {
    Base::ABCD.into_iter().flat_map(|b| [Letter::pos(b), Letter::neg(b)])
}

/// Shortest e-word for `target` found by BFS in `Γ(K,E)` up to `radius`.
pub fn e_word_witness(target: &GElement, radius: usize) -> Option<Vec<Label>> {
    e_word_witnesses(std::slice::from_ref(target), radius).pop().flatten()
}

/// One BFS in `Γ(K,E)` shared by all targets; stops once every target is reached.
pub fn e_word_witnesses(targets: &[GElement], radius: usize) -> Vec<Option<Vec<Label>>> {
    let mut parent: FxHashMap<GElement, Option<(GElement, Label)>> = FxHashMap::default();
    parent.insert(GElement::identity(), None);
    let mut queue = VecDeque::from([(GElement::identity(), 0usize)]);
    let steps: Vec<(Label, GElement)> = EGen::all()
        .flat_map(|e| {
            [Sign::Pos, Sign::Neg].map(|s| {
                let v = e.value();
                (Label::e(e, s), if s == Sign::Pos { v } else { v.inverse() })
            })
        })
        .collect();
    let mut remaining = targets.iter().filter(|t| !parent.contains_key(*t)).count();
    while let Some((v, d)) = queue.pop_front() {
        if remaining == 0 || d == radius {
            continue;
        }
        for (label, step) in &steps {
            let w = v.mul(step);
            if !parent.contains_key(&w) {
                parent.insert(w.clone(), Some((v.clone(), *label)));
                remaining -= targets.iter().filter(|t| **t == w).count().min(remaining);
                queue.push_back((w, d + 1));
            }
        }
    }
    targets
        .iter()
        .map(|t| {
            parent.get(t)?;
            let mut word = Vec::new();
            let mut cur = t.clone();
            while let Some(Some((prev, label))) = parent.get(&cur) {
                word.push(*label);
                cur = prev.clone();
            }
            word.reverse();
            Some(word)
        })
        .collect()
}

/// Every identity used to show `K` is normal, plus the exhaustive conjugate sweep.
pub fn verify_nfp_identities() -> IdentityReport {
    let mut r = IdentityReport {
        all_pass: true,
        ..Default::default()
    };
    // Zero-sum two-letter words over {a,b} and {c,d}.
    r.push(inverse_identity("ab^-1 is the inverse of ba^-1", "aB", "bA"));
    r.push(identity("b^-1 a through c", "Ba", "Bc Ca"));
    r.push(inverse_identity("a^-1 b is the inverse of b^-1 a", "Ab", "Ba"));
    r.push(identity("d^-1 c through a", "Dc", "Da Ac"));
    r.push(inverse_identity("c^-1 d is the inverse of d^-1 c", "Cd", "Dc"));
    for (x, y) in [(Base::A, Base::C), (Base::A, Base::D), (Base::B, Base::C), (Base::B, Base::D)] {
        // mixed-factor words commute: xy⁻¹ = y⁻¹x
        let lhs = format!("{}{}", Letter::pos(x), Letter::neg(y));
        let rhs = format!("{}{}", Letter::neg(y), Letter::pos(x));
        r.push(identity("mixed-factor words commute", &lhs, &rhs));
    }
    // Single-letter conjugates of ba^-1, ca^-1 and ac^-1.
    r.push(identity("a (ba^-1) a^-1 = aba^-2", "a bA A", "abAA"));
    r.push(identity("a (ba^-1) a^-1 as an e-word", "a bA A", "aC bC cA cA"));
    r.push(identity("a^-1 (ba^-1) a", "A bA a", "Ab"));
    r.push(identity("b^-1 (ba^-1) b", "B bA b", "Ab"));
    r.push(identity("b (ba^-1) b^-1 = b^2 a^-1 b^-1", "b bA B", "bbAB"));
    r.push(identity("b (ba^-1) b^-1 as an e-word", "b bA B", "bC bC cA cB"));
    r.push(identity("a (ca^-1) a^-1", "a cA A", "cA"));
    r.push(identity("b (ac^-1) b^-1", "b aC B", "bC aB"));

    // Exhaustive: every single-letter conjugate of every e-generator has zero sum.
    let mut bad = Vec::new();
    let mut count = 0;
    for e in EGen::all() {
        for l in signed_letters() {
            let mut x = GElement::identity();
            x.push(l);
            let conj = x.mul(&e.value()).mul(&x.inverse());
            count += 1;
            if !conj.in_kernel() {
                bad.push(format!("{l} e{} {}", e.index(), l.inverse()));
            }
        }
    }
    r.push(predicate(
        "all single-letter conjugates of e-generators lie in K",
        format!("{count} conjugates ({} x 8)", Q),
        bad.is_empty() && count == Q * 8,
        if bad.is_empty() { "ok".into() } else { bad.join(", ") },
    ));

    // Each conjugate of a T-element is an explicit word in the e-generators.
    let mut names = Vec::new();
    let mut conjugates = Vec::new();
    for e in EGen::t_set() {
        for l in signed_letters() {
            let mut x = GElement::identity();
            x.push(l);
            conjugates.push(x.mul(&e.value()).mul(&x.inverse()));
            names.push(format!("{l} e{} {}", e.index(), l.inverse()));
        }
    }
    let mut missing = Vec::new();
    let mut longest = 0;
    for ((conj, name), w) in conjugates.iter().zip(names).zip(e_word_witnesses(&conjugates, 4)) {
        match w {
            Some(w) if GElement::from_letters(&crate::egen::e_expand(&w).unwrap()).unwrap() == *conj => {
                longest = longest.max(w.len());
            }
            _ => missing.push(name),
        }
    }
    r.push(predicate(
        "conjugates of T-elements are e-words",
        "48 conjugates".to_string(),
        missing.is_empty(),
        if missing.is_empty() {
            format!("longest witness {longest}")
        } else {
            missing.join(", ")
        },
    ));
    r
}

/// The reductions of the generating set to three generators, two of which commute.
pub fn verify_onee_reductions() -> IdentityReport {
    let mut r = IdentityReport {
        all_pass: true,
        ..Default::default()
    };
    r.push(identity("(cb^-1)(ba^-1) = ca^-1", "cB bA", "cA"));
    r.push(identity("(dc^-1)^-1 (db^-1) = cb^-1", "cD dB", "cB"));
    r.push(identity("(da^-1)(ba^-1)^-1 = db^-1", "dA aB", "dB"));
    r.push(identity("[ba^-1, dc^-1] = 1", "bA dC aB cD", ""));

    // BFS in the subgroup generated by {ba^-1, dc^-1, da^-1} reaches all of T.
    let gens: Vec<GElement> = ["bA", "dC", "dA"].iter().map(|s| value(s)).collect();
    let steps: Vec<GElement> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen: FxHashMap<GElement, usize> = FxHashMap::default();
    seen.insert(GElement::identity(), 0);
    let mut frontier = vec![GElement::identity()];
    for d in 1..=4 {
        let mut next = Vec::new();
        for v in &frontier {
            for s in &steps {
                let w = v.mul(s);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut missing = Vec::new();
    let mut depths = Vec::new();
    for e in EGen::t_set() {
        match seen.get(&e.value()) {
            Some(d) => depths.push(format!("{}:{d}", labels_to_string(&[Label::e(e, Sign::Pos)]))),
            None => missing.push(format!("e{}", e.index())),
        }
    }
    r.push(predicate(
        "T lies in <ba^-1, dc^-1, da^-1>",
        "radius-4 ball of the 3-generator Cayley graph".to_string(),
        missing.is_empty(),
        if missing.is_empty() { depths.join(" ") } else { missing.join(", ") },
    ));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nfp_identities_hold() {
        let r = verify_nfp_identities();
        for c in r.failures() {
            panic!("{}: {} vs {}", c.name, c.lhs_normal_form, c.rhs_normal_form);
        }
        assert!(r.all_pass);
    }

    #[test]
    fn onee_reductions_hold() {
        assert!(verify_onee_reductions().all_pass);
    }

    #[test]
    fn a_false_identity_is_caught() {
        let c = identity("broken", "a bA A", "bA");
        assert!(!c.pass);
        assert_ne!(c.lhs_normal_form, c.rhs_normal_form);
    }

    #[test]
    fn witness_for_a_conjugate() {
        let target = value("abAA");
        let w = e_word_witness(&target, 4).unwrap();
        assert!(w.len() <= 4);
    }
}
