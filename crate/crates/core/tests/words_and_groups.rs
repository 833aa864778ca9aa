use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stallings::identities::{e_word_witness, verify_nfp_identities, verify_onee_reductions};
use stallings::{
    exponent_sum, in_kernel, reduce, s_equal, s_invert, s_multiply, s_normalize, Alphabet, Base, FreeWord, GElement, Letter, Relator,
    SElement, SWord,
};

fn letters(s: &str) -> Vec<Letter> {
    Letter::parse_all(s).unwrap()
}

fn word_strategy(alphabet: &'static str, max: usize) -> impl Strategy<Value = SWord> {
    prop::collection::vec(prop::sample::select(alphabet.chars().collect::<Vec<_>>()), 0..max)
        .prop_map(|cs| SWord(cs.into_iter().map(|c| Letter::from_char(c).unwrap()).collect()))
}

#[test]
fn free_reduction() {
    assert_eq!(reduce(&letters("abBAc"), Alphabet::ABCD).unwrap().letters(), letters("c"));
    assert!(reduce(&letters("aA"), Alphabet::AB).unwrap().is_empty());
    assert!(reduce(&letters("ac"), Alphabet::AB).is_err());
    assert_eq!(FreeWord::parse("aab", Alphabet::AB).unwrap().exponent_of(Base::A), 2);
}

#[test]
fn normal_forms_of_small_words() {
    assert_eq!(GElement::parse("acA").unwrap(), GElement::parse("c").unwrap());
    assert_eq!(GElement::parse("acbd").unwrap(), GElement::parse("abcd").unwrap());
    let x = s_normalize(&SWord::parse("sabS").unwrap());
    assert!(!x.in_g());
    assert_eq!(x.s_level(), 0);
    assert_eq!(s_normalize(&x.to_word()), x);
}

#[test]
fn s_commutes_with_the_kernel_generators() {
    for e in stallings::EGen::all() {
        let w: String = e.word().iter().map(|l| l.to_char()).collect();
        let lhs = SWord::parse(&format!("s{w}")).unwrap();
        let rhs = SWord::parse(&format!("{w}s")).unwrap();
        assert!(s_equal(&lhs, &rhs), "s does not commute with {w}");
    }
    assert!(!s_equal(&SWord::parse("sa").unwrap(), &SWord::parse("as").unwrap()));
    assert!(!s_equal(&SWord::parse("sc").unwrap(), &SWord::parse("cs").unwrap()));
}

#[test]
fn exponent_sums_and_kernel() {
    let g = GElement::parse("abcD").unwrap();
    assert_eq!(exponent_sum(&g).unwrap(), 2);
    assert!(!in_kernel(&g));
    assert!(in_kernel(&GElement::parse("aBcD").unwrap()));
    assert!(e_word_witness(&GElement::parse("aBcD").unwrap(), 4).is_some());
    assert!(e_word_witness(&GElement::parse("aBcd").unwrap(), 4).is_none());
}

#[test]
fn identity_suites_pass() {
    let nfp = verify_nfp_identities();
    assert!(nfp.all_pass, "{:?}", nfp.failures().collect::<Vec<_>>());
    let onee = verify_onee_reductions();
    assert!(onee.all_pass, "{:?}", onee.failures().collect::<Vec<_>>());
}

#[test]
fn relators_vanish_after_random_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let alphabet = letters("aAbBcCdDsS");
    let relators: Vec<Relator> = Relator::all().collect();
    for _ in 0..500 {
        let u: Vec<Letter> = (0..rng.gen_range(0..8)).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
        let r = relators[rng.gen_range(0..relators.len())];
        let mut w: Vec<Letter> = u.clone();
        w.extend(s_letters(r));
        w.extend(u.iter().rev().map(|l| l.inverse()));
        assert_eq!(s_normalize(&SWord(w)), SElement::identity(), "{r} conjugated");
    }
}

/// Letters of a relator, e-generators spelled out.
fn s_letters(r: Relator) -> Vec<Letter> {
    r.word()
        .iter()
        .flat_map(|l| match l.as_e() {
            Some((e, stallings::Sign::Pos)) => e.word().to_vec(),
            Some((e, stallings::Sign::Neg)) => vec![e.word()[1].inverse(), e.word()[0].inverse()],
            None => vec![l.as_letter().unwrap()],
        })
        .collect()
}

proptest! {
    #[test]
    fn normal_form_is_a_homomorphism(u in word_strategy("aAbBcCdDsS", 12), v in word_strategy("aAbBcCdDsS", 12)) {
        let uv = s_normalize(&u.concat(&v));
        prop_assert_eq!(uv.clone(), s_multiply(&s_normalize(&u), &s_normalize(&v)));
        prop_assert_eq!(s_multiply(&uv, &s_invert(&uv)), SElement::identity());
        prop_assert_eq!(s_normalize(&uv.to_word()), uv);
    }

    #[test]
    fn g_embeds_in_s(u in word_strategy("aAbBcCdD", 16)) {
        let g = GElement::from_letters(u.letters()).unwrap();
        let x = s_normalize(&u);
        prop_assert_eq!(x.to_gelement(), Some(g.clone()));
        prop_assert_eq!(SElement::from_gelement(&g), x);
        prop_assert_eq!(in_kernel(&g), exponent_sum(&g).unwrap() == 0);
    }

    #[test]
    fn stable_letter_centralises_the_kernel(idx in prop::collection::vec((1usize..=24, any::<bool>()), 0..8)) {
        let mut w = vec![Letter::pos(Base::S)];
        for &(i, pos) in &idx {
            let e = stallings::EGen::new(i).unwrap().word();
            if pos { w.extend(e) } else { w.extend([e[1].inverse(), e[0].inverse()]) }
        }
        let k = SWord(w[1..].to_vec());
        w.push(Letter::neg(Base::S));
        let x = s_normalize(&SWord(w));
        prop_assert!(x.in_g());
        prop_assert_eq!(x, s_normalize(&k));
    }
}
