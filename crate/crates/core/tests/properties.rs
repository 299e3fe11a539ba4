use std::cmp::Ordering;
use std::sync::OnceLock;

use hopfcheck::bialgebra::{specialize, GenMap, Presentation};
use hopfcheck::cli::library;
use hopfcheck::freealg::{coproduct_extend, word_compare, Alphabet, FreeElement, Letter, Word};
use hopfcheck::oracle::{oracle_batch, OracleOutcome};
use hopfcheck::rewrite::{RewriteSystem, Verdict};
use hopfcheck::scalars::{integer, rational, Monomial, ParamPoly, Rational, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -6i64..=6), 0..4).prop_map(|terms| {
        ParamPoly::from_terms(
            terms
                .into_iter()
                .map(|((i, j), c)| (Monomial::new(vec![i, j]), integer(c))),
        )
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Scalar::normalize(n, d).ok()
        }
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-9i64..=9, 1i64..=5).prop_map(|(n, d)| rational(n, d)), 2)
}

fn word(letters: Letter, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, 0..=max_len).prop_map(Word::new)
}

fn abcd() -> Alphabet {
    Alphabet::new(["a", "b", "c", "d"]).unwrap()
}

/// Elements over `alphabet` with small integer coefficients.
fn element(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = FreeElement> {
    let n = alphabet.len() as Letter;
    prop::collection::vec((word(n, max_len), -4i64..=4), 0..5).prop_map(move |terms| {
        FreeElement::from_terms(&alphabet, terms.into_iter().map(|(w, c)| (w, Scalar::from_int(c))))
    })
}

struct Fixtures {
    illy: Presentation,
    glgh01: Presentation,
    special: Presentation,
    exchange: GenMap,
    illy_sys: RewriteSystem,
    glgh01_sys: RewriteSystem,
}

fn fixtures() -> &'static Fixtures {
    static F: OnceLock<Fixtures> = OnceLock::new();
    F.get_or_init(|| {
        let illy = library::builtin("illy").unwrap();
        let glgh01 = library::builtin("glgh01").unwrap();
        let glgh = library::builtin("glgh").unwrap();
        let special = specialize(&glgh, &[("g".into(), integer(0)), ("h".into(), integer(1))]).unwrap();
        let exchange = library::resolve_map("exchange", &special, &illy).unwrap();
        let illy_sys = RewriteSystem::from_relations(illy.alphabet(), illy.relations(), 8).unwrap();
        let glgh01_sys = RewriteSystem::from_relations(glgh01.alphabet(), glgh01.relations(), 8).unwrap();
        Fixtures {
            illy,
            glgh01,
            special,
            exchange,
            illy_sys,
            glgh01_sys,
        }
    })
}

proptest! {
    #[test]
    fn scalar_addition_is_a_commutative_group(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert_eq!(x.add(&Scalar::zero()), x);
    }

    #[test]
    fn scalar_multiplication_distributes(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&Scalar::one()), x);
    }

    #[test]
    fn nonzero_scalars_are_invertible(x in scalar()) {
        prop_assume!(!x.is_zero());
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(x in scalar(), y in scalar(), p in point()) {
        if let (Ok(a), Ok(b)) = (x.eval(&p), y.eval(&p)) {
            prop_assert_eq!(x.add(&y).eval(&p).unwrap(), &a + &b);
            prop_assert_eq!(x.mul(&y).eval(&p).unwrap(), &a * &b);
        }
    }

    #[test]
    fn canonical_form_is_unique(n in poly(), d in poly(), k in poly()) {
        prop_assume!(!d.is_zero() && !k.is_zero());
        let plain = Scalar::normalize(n.clone(), d.clone()).unwrap();
        let scaled = Scalar::normalize(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(plain, scaled);
    }

    #[test]
    fn word_order_is_total_and_graded(u in word(4, 5), v in word(4, 5)) {
        let a = abcd();
        let uv = word_compare(&a, &u, &v).unwrap();
        prop_assert_eq!(uv.reverse(), word_compare(&a, &v, &u).unwrap());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        if u.len() != v.len() {
            prop_assert_eq!(uv, u.len().cmp(&v.len()));
        }
    }

    #[test]
    fn word_order_is_monomial(u in word(4, 4), v in word(4, 4), w in word(4, 3)) {
        let a = abcd();
        let uv = word_compare(&a, &u, &v).unwrap();
        prop_assert_eq!(word_compare(&a, &w.concat(&u), &w.concat(&v)).unwrap(), uv);
        prop_assert_eq!(word_compare(&a, &u.concat(&w), &v.concat(&w)).unwrap(), uv);
    }

    #[test]
    fn generator_maps_are_homomorphisms(x in element(abcd(), 3), y in element(abcd(), 3)) {
        let f = fixtures();
        let (x, y) = (x.transport(f.special.alphabet()).unwrap(), y.transport(f.special.alphabet()).unwrap());
        let m = &f.exchange;
        prop_assert_eq!(m.apply(&x.mul(&y).unwrap()).unwrap(), m.apply(&x).unwrap().mul(&m.apply(&y).unwrap()).unwrap());
        prop_assert_eq!(m.apply(&x.add(&y).unwrap()).unwrap(), m.apply(&x).unwrap().add(&m.apply(&y).unwrap()).unwrap());
    }

    #[test]
    fn exchange_is_an_involution(x in element(abcd(), 4)) {
        let f = fixtures();
        let x = x.transport(f.special.alphabet()).unwrap();
        let back = f.exchange.inverse().unwrap();
        prop_assert_eq!(back.apply(&f.exchange.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn coproduct_is_multiplicative(x in element(abcd(), 3), y in element(abcd(), 3)) {
        let f = fixtures();
        let (x, y) = (x.transport(f.illy.alphabet()).unwrap(), y.transport(f.illy.alphabet()).unwrap());
        let d = |e: &FreeElement| coproduct_extend(f.illy.coproduct(), e).unwrap();
        prop_assert_eq!(d(&x.mul(&y).unwrap()), d(&x).mul(&d(&y)).unwrap());
    }

    #[test]
    fn normal_forms_are_independent_of_rewrite_order(x in element(abcd(), 4), seed in any::<u64>()) {
        let f = fixtures();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for sys in [&f.illy_sys, &f.glgh01_sys] {
            let x = x.transport(sys.alphabet()).unwrap();
            let nf = sys.normal_form(&x).unwrap();
            prop_assert_eq!(&sys.normal_form_randomized(&x, &mut rng).unwrap(), &nf);
            prop_assert_eq!(&sys.normal_form(&nf).unwrap(), &nf);
            prop_assert!(nf.terms().all(|(w, _)| sys.is_irreducible(w)));
        }
    }

    #[test]
    fn member_traces_replay(x in element(abcd(), 3), l in element(abcd(), 1), r in element(abcd(), 1), k in 0usize..6) {
        let f = fixtures();
        let sys = &f.illy_sys;
        let a = sys.alphabet();
        let rel = &f.illy.relations()[k];
        let ideal = l.transport(a).unwrap().mul(rel).unwrap().mul(&r.transport(a).unwrap()).unwrap();
        let v = sys.ideal_membership(&ideal, true).unwrap();
        prop_assert_eq!(v.verdict, Verdict::Member);
        prop_assert!(v.trace.as_ref().unwrap().verify(sys, &v.remainder));
        let x = x.transport(a).unwrap();
        let w = sys.ideal_membership(&x, true).unwrap();
        prop_assert!(w.trace.as_ref().unwrap().verify(sys, &w.remainder));
    }

    #[test]
    fn oracle_agrees_with_reduction(x in element(abcd(), 2)) {
        let f = fixtures();
        let sys = &f.illy_sys;
        let x = x.transport(sys.alphabet()).unwrap();
        let nf = sys.normal_form(&x).unwrap();
        let diff = x.sub(&nf).unwrap();
        let mut candidates = vec![diff];
        if !nf.is_zero() {
            candidates.push(nf.clone());
        }
        let run = oracle_batch(&candidates, f.illy.relations(), 4, &[Vec::new()]).unwrap();
        prop_assert_eq!(&run.outcomes[0], &OracleOutcome::MemberAtAllPoints);
        if !nf.is_zero() {
            prop_assert!(matches!(run.outcomes[1], OracleOutcome::NonMemberWitness(_)));
            prop_assert_eq!(sys.ideal_membership(&nf, false).unwrap().verdict, Verdict::NonMemberUpToBound);
        }
    }
}

#[test]
fn exchange_twice_fixes_the_specialized_relations() {
    let f = fixtures();
    let once = f.exchange.image_relations().unwrap();
    let back = library::resolve_map("exchange", &f.illy, &f.special).unwrap();
    let twice: Vec<FreeElement> = once.iter().map(|r| back.apply(r).unwrap()).collect();
    let mut parts = f.special.to_parts();
    parts.relations = twice;
    let round = Presentation::new(parts).unwrap();
    assert!(round.same_relations(&f.special).unwrap());
    assert!(f.special.same_relations(&f.glgh01).unwrap());
}
