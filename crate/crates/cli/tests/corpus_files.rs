use std::collections::BTreeMap;
use std::path::PathBuf;

use leibniz_cli::format::{parse_algebra_file, AlgebraBlock, AlgebraFile, BracketLine};
use leibniz_core::corpus::{self, rational_corpus, small_prime_corpus};
use leibniz_core::lazy::{instantiate, FamilyParams};
use leibniz_core::{Convention, Field, LeibnizAlgebra};
use num_rational::BigRational;
use proptest::prelude::*;

fn read(file: &str) -> AlgebraFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file);
    parse_algebra_file(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn built(file: &AlgebraFile) -> BTreeMap<String, LeibnizAlgebra> {
    file.blocks.iter().map(|b| (b.name.clone(), b.build().unwrap())).collect()
}

#[test]
fn files_match_the_builtin_corpus() {
    let mut files = built(&read("classical.alg"));
    files.extend(built(&read("small_gf.alg")));
    files.extend(built(&read("examples.alg")));
    let mut expected: Vec<LeibnizAlgebra> = rational_corpus().into_iter().chain(small_prime_corpus()).collect();
    expected.push(corpus::example1(Field::prime(3).unwrap()).with_name("ex1_gf3"));
    expected.push(instantiate("example2", FamilyParams::default()).unwrap().truncate(12).unwrap().algebra.with_name("ex2_12"));
    for g in &expected {
        let f = files.get(g.name()).unwrap_or_else(|| panic!("{} missing from the corpus files", g.name()));
        assert_eq!(f.field(), g.field(), "{}", g.name());
        assert_eq!(f.table(), g.table(), "{}", g.name());
    }
    assert_eq!(files.len(), expected.len());
}

#[test]
fn builtin_algebras_survive_text_round_trip() {
    for g in rational_corpus().into_iter().chain(small_prime_corpus()) {
        let text = AlgebraBlock::from_algebra(&g).to_text();
        let back = parse_algebra_file(&text).unwrap().blocks[0].build().unwrap();
        assert_eq!(back.table(), g.table(), "{text}");
    }
}

fn block() -> impl Strategy<Value = AlgebraBlock> {
    let field = prop_oneof![Just(Field::Rationals), Just(Field::Prime(3)), Just(Field::Prime(7))];
    (field, 1usize..=4).prop_flat_map(|(field, dim)| {
        let coeff = (-9i64..=9, 1i64..=4).prop_filter("nonzero", |(n, _)| *n != 0);
        let terms = prop::collection::btree_map(1..=dim, coeff, 0..=dim);
        let line = (1..=dim, 1..=dim, terms);
        let conv = prop::option::of(prop_oneof![
            Just(Convention::Left),
            Just(Convention::Right),
            Just(Convention::Both),
            Just(Convention::Neither)
        ]);
        (prop::collection::vec(line, 0..6), conv).prop_map(move |(lines, convention)| {
            let mut seen = std::collections::BTreeSet::new();
            let brackets = lines
                .into_iter()
                .filter(|(i, j, _)| seen.insert((*i, *j)))
                .map(|(left, right, terms)| BracketLine {
                    left,
                    right,
                    terms: terms
                        .into_iter()
                        .map(|(k, (n, d))| {
                            // Keep denominators invertible mod 3 and 7.
                            let d = if d == 3 { 2 } else { d };
                            (k, BigRational::new(n.into(), d.into()))
                        })
                        .collect(),
                })
                .collect();
            AlgebraBlock { name: "t".into(), field, dim, convention, brackets }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(b in block()) {
        let file = AlgebraFile { blocks: vec![b] };
        let text = file.to_text();
        let back = parse_algebra_file(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parser_never_panics(s in "[a-z0-9 =+*/#\\-\n]{0,80}") {
        let _ = parse_algebra_file(&s);
    }
}
