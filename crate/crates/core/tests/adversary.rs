use std::collections::BTreeSet;

use modlearn::adversary::{prefix_certificate, PrefixAdversary};
use modlearn::concepts::Word;
use modlearn::{Answer, ConceptDesc, Oracle, Point, Query};
use proptest::prelude::*;

fn query(words: &[Vec<u32>], sub: bool) -> Query {
    let c = ConceptDesc::Product(words.iter().map(|w| ConceptDesc::Prefix(Word(w.clone()))).collect());
    if sub { Query::Sub(c) } else { Query::Eq(c) }
}

proptest! {
    #[test]
    fn answers_stay_consistent_and_fresh(
        k in 2usize..=3,
        raw in prop::collection::vec((prop::collection::vec(prop::collection::vec(1u32..6, 0..3), 3), any::<bool>()), 1..12),
    ) {
        let mut adv = PrefixAdversary::new(k, 4096, 4);
        let mut t = Vec::new();
        let mut payload: BTreeSet<u32> = BTreeSet::new();
        let mut fresh_seen: BTreeSet<u32> = BTreeSet::new();
        for (words, sub) in raw {
            let words = &words[..k];
            payload.extend(words.iter().flatten().copied());
            let q = query(words, sub);
            let a = adv.answer(&q).unwrap();
            let Answer::Counterexample(Point::Vector(coords)) = &a else { panic!("{a}") };
            for (c, w) in coords.iter().zip(words) {
                let Point::Pair(tw, v) = c else { panic!("{c}") };
                prop_assert_eq!(&tw.0, w);
                if fresh_seen.insert(*v) {
                    prop_assert!(!payload.contains(v), "fresh value {} was in a query", v);
                }
            }
            t.push((q, a));
        }
        // Some concrete target explains every answer given.
        let cert = prefix_certificate(adv.class(), adv.log(), &t, 3 * 4).unwrap();
        prop_assert!(cert.is_some());
    }
}
