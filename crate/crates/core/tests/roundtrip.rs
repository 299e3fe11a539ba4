use hopfcheck::bialgebra::{Presentation, PresentationParts};
use hopfcheck::cli::dsl::{parse_presentation, print_presentation};
use hopfcheck::cli::library::{builtin_library, BUILTIN_SOURCES};
use hopfcheck::freealg::{Alphabet, FreeElement, Letter, Word};
use hopfcheck::scalars::{integer, Monomial, ParamPoly, Scalar};
use proptest::prelude::*;

const GENS: &[&str] = &["a", "b", "c", "d", "x", "y1", "z2"];
const PARAMS: &[&str] = &["g", "h", "q", "t2"];

fn subset(pool: &'static [&'static str], min: usize) -> impl Strategy<Value = Vec<String>> {
    prop::sample::subsequence(pool, min..=pool.len().min(4))
        .prop_shuffle()
        .prop_map(|v| v.into_iter().map(String::from).collect())
}

fn poly(nparams: usize) -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nparams), -5i64..=5), 1..3)
        .prop_map(|terms| ParamPoly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e), integer(c)))))
}

fn scalar(nparams: usize) -> BoxedStrategy<Scalar> {
    if nparams == 0 {
        return (-7i64..=7, 1i64..=4)
            .prop_map(|(n, d)| Scalar::from_rational(hopfcheck::scalars::rational(n, d)))
            .boxed();
    }
    (poly(nparams), poly(nparams), any::<bool>())
        .prop_filter_map("nonzero denominator", |(n, d, divide)| {
            if divide {
                (!d.is_zero()).then(|| Scalar::normalize(n, d).ok()).flatten()
            } else {
                Some(Scalar::from_poly(n))
            }
        })
        .boxed()
}

fn element(alphabet: Alphabet, nparams: usize, max_len: usize) -> impl Strategy<Value = FreeElement> {
    let n = alphabet.len() as Letter;
    prop::collection::vec(
        (
            prop::collection::vec(0..n, 0..=max_len).prop_map(Word::new),
            scalar(nparams),
        ),
        1..4,
    )
    .prop_map(move |terms| FreeElement::from_terms(&alphabet, terms))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (subset(GENS, 1), subset(PARAMS, 0), any::<bool>())
        .prop_flat_map(|(gens, params, reorder)| {
            let alphabet = Alphabet::new(gens.clone()).unwrap();
            let n = gens.len();
            let np = params.len();
            let order = if reorder {
                Just(gens.clone()).prop_shuffle().boxed()
            } else {
                Just(Vec::new()).boxed()
            };
            (
                Just(gens),
                Just(params),
                order,
                prop::collection::vec(element(alphabet.clone(), np, 3), 0..5),
                prop::collection::vec(element(alphabet.tensor(2), np, 2), n),
                prop::collection::vec(prop::option::of(scalar(np)), n),
            )
        })
        .prop_filter_map(
            "valid presentation",
            |(gens, params, order, relations, images, counit)| {
                let parts = PresentationParts {
                    name: "random".into(),
                    coproduct: gens.iter().cloned().zip(images).collect(),
                    counit: gens
                        .iter()
                        .cloned()
                        .zip(counit)
                        .filter_map(|(g, c)| c.map(|c| (g, c)))
                        .collect(),
                    params,
                    generators: gens,
                    order,
                    relations,
                };
                Presentation::new(parts).ok()
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_presentations_round_trip(p in presentation()) {
        let text = print_presentation(&p);
        let back = parse_presentation(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &p, "{}", text);
        prop_assert_eq!(print_presentation(&back), text);
    }
}

#[test]
fn builtins_round_trip() {
    let lib = builtin_library().unwrap();
    assert_eq!(lib.presentations.len() + lib.maps.len(), BUILTIN_SOURCES.len());
    for p in &lib.presentations {
        let text = print_presentation(p);
        assert_eq!(&parse_presentation(&text).unwrap(), p, "{text}");
    }
}
