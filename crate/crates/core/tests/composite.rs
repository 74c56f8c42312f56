use modlearn::composite::{
    learn_disjoint_union, learn_product_cex_mem_pos, learn_product_mem_only,
    learn_product_mem_pos, learn_product_sup,
};
use modlearn::concepts::random::random_concept;
use modlearn::concepts::{contains, equivalent, members};
use modlearn::protocol::consistent_with_transcript;
use modlearn::{
    Answer, ClassId, ConceptDesc, Error, HonestOracle, Oracle, Point, Query, QueryKind,
    SessionResult, SublearnerSpec,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn specs(class: &ClassId, kind: QueryKind) -> Vec<SublearnerSpec> {
    class.components().unwrap().iter().map(|c| SublearnerSpec::new(c.clone(), kind)).collect()
}

fn standalone_sum(subs: &[SublearnerSpec], t: &ConceptDesc) -> u64 {
    subs.iter().zip(t.parts().unwrap()).map(|(s, p)| s.standalone_count(p).unwrap()).sum()
}

fn oracle(class: &ClassId, t: &ConceptDesc) -> HonestOracle {
    HonestOracle::new(class.clone(), t.clone()).unwrap()
}

/// Every answer forwarded to sublearner i was a correct answer about part i.
fn sub_answers_sound(class: &ClassId, t: &ConceptDesc, r: &SessionResult) -> bool {
    let comps = class.components().unwrap();
    r.sub_transcripts.len() == comps.len()
        && comps
            .iter()
            .zip(t.parts().unwrap())
            .zip(&r.sub_transcripts)
            .all(|((c, p), st)| consistent_with_transcript(c, p, st).unwrap())
}

fn class_strategy(kinds_allow_empty: bool) -> impl Strategy<Value = ClassId> {
    let atom = prop_oneof![
        (1u32..=16).prop_map(|u| ClassId::Intervals { u }),
        (0u32..=6).prop_map(|m| ClassId::Singletons { m }),
        (1u32..=4).prop_map(move |u| if kinds_allow_empty {
            ClassId::FiniteSets { u }
        } else {
            ClassId::Intervals { u }
        }),
    ];
    prop::collection::vec(atom, 1..=3).prop_map(ClassId::Product)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sup_product_exact_bounded_sound(class in class_strategy(true), seed in any::<u64>()) {
        let t = random_concept(&class, &mut ChaCha8Rng::seed_from_u64(seed));
        let subs = specs(&class, QueryKind::Sup);
        let r = learn_product_sup(&subs, &mut oracle(&class, &t), 100_000).unwrap();
        prop_assert!(equivalent(&class, &r.hypothesis, &t).unwrap());
        // One extra Sup(∅) when some component contains ∅.
        let extra = u64::from(class.contains_empty());
        prop_assert!(r.stats.count(QueryKind::Sup) <= standalone_sum(&subs, &t) + extra);
        prop_assert_eq!(r.stats.count(QueryKind::Sup), r.stats.total);
    }

    #[test]
    fn cex_mem_pos_exact_bounded_sound(class in class_strategy(false), seed in any::<u64>(), eq in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_concept(&class, &mut rng);
        let kind = if eq { QueryKind::Eq } else { QueryKind::Sub };
        let subs = specs(&class, kind);
        let inside: Vec<Point> = members(&class, &t).unwrap().collect();
        let p = inside[(seed % inside.len() as u64) as usize].clone();
        let r = learn_product_cex_mem_pos(&subs, &mut oracle(&class, &t), &p, kind, 100_000).unwrap();
        prop_assert!(equivalent(&class, &r.hypothesis, &t).unwrap());
        let bound = standalone_sum(&subs, &t);
        let k = subs.len() as u64;
        prop_assert!(r.stats.count(kind) <= bound);
        prop_assert!(r.stats.count(QueryKind::Mem) <= k * bound);
        prop_assert!(sub_answers_sound(&class, &t, &r));
        // A counterexample handed to dimension j is never in c*_j.
        let comps = class.components().unwrap();
        for (j, st) in r.sub_transcripts.iter().enumerate() {
            for (q, a) in st {
                if let (Query::Sub(_), Answer::Counterexample(x)) = (q, a) {
                    prop_assert!(!contains(&comps[j], &t.parts().unwrap()[j], x).unwrap());
                }
            }
        }
    }

    #[test]
    fn mem_pos_exact_bounded_sound(class in class_strategy(false), seed in any::<u64>()) {
        let t = random_concept(&class, &mut ChaCha8Rng::seed_from_u64(seed));
        let subs = specs(&class, QueryKind::Mem);
        let inside: Vec<Point> = members(&class, &t).unwrap().collect();
        let p = inside[(seed % inside.len() as u64) as usize].clone();
        let r = learn_product_mem_pos(&subs, &mut oracle(&class, &t), &p, 100_000).unwrap();
        prop_assert!(equivalent(&class, &r.hypothesis, &t).unwrap());
        prop_assert!(r.stats.count(QueryKind::Mem) <= subs.len() as u64 * standalone_sum(&subs, &t));
        prop_assert!(sub_answers_sound(&class, &t, &r));
    }

    #[test]
    fn union_exact_bounded_sound(seed in any::<u64>(), mode in 0usize..4) {
        let class = ClassId::Union(vec![
            ClassId::Intervals { u: 6 },
            ClassId::FiniteSets { u: 3 },
            ClassId::Prefix { u: 3, max_len: 2 },
        ]);
        let kind = [QueryKind::Eq, QueryKind::Sub, QueryKind::Sup, QueryKind::Mem][mode];
        let t = random_concept(&class, &mut ChaCha8Rng::seed_from_u64(seed));
        let subs = specs(&class, kind);
        let r = learn_disjoint_union(&subs, &mut oracle(&class, &t), kind, 100_000).unwrap();
        prop_assert!(equivalent(&class, &r.hypothesis, &t).unwrap());
        prop_assert!(r.stats.total <= standalone_sum(&subs, &t));
        prop_assert!(sub_answers_sound(&class, &t, &r));
    }
}

#[test]
fn one_component_matches_the_standalone_learner() {
    let base = ClassId::Intervals { u: 12 };
    let class = ClassId::Product(vec![base.clone()]);
    for c in base.concepts().unwrap() {
        let t = ConceptDesc::Product(vec![c.clone()]);
        for kind in [QueryKind::Sup, QueryKind::Eq, QueryKind::Sub, QueryKind::Mem] {
            let alone = SublearnerSpec::new(base.clone(), kind).standalone_count(&c).unwrap();
            let subs = specs(&class, kind);
            let mut o = oracle(&class, &t);
            let p = members(&class, &t).unwrap().next().unwrap();
            let r = match kind {
                QueryKind::Sup => learn_product_sup(&subs, &mut o, 1000).unwrap(),
                QueryKind::Mem => learn_product_mem_pos(&subs, &mut o, &p, 1000).unwrap(),
                kind => learn_product_cex_mem_pos(&subs, &mut o, &p, kind, 1000).unwrap(),
            };
            assert!(equivalent(&class, &r.hypothesis, &t).unwrap());
            assert_eq!(r.stats.count(kind), alone, "{kind} on {c}");
            if kind != QueryKind::Mem {
                assert_eq!(r.stats.count(QueryKind::Mem), 0, "{kind} on {c}");
            }
            let r = learn_disjoint_union(&subs, &mut oracle(&ClassId::Union(vec![base.clone()]), &ConceptDesc::Union(vec![c.clone()])), kind, 1000).unwrap();
            assert_eq!(r.stats.total, alone, "union {kind} on {c}");
        }
    }
}

#[test]
fn a_point_outside_the_target_is_rejected() {
    let class = ClassId::power(ClassId::Intervals { u: 16 }, 2);
    let t = ConceptDesc::Product(vec![ConceptDesc::interval(3, 5), ConceptDesc::interval(2, 8)]);
    let bad = Point::Vector(vec![Point::Int(9), Point::Int(9)]);
    for kind in [QueryKind::Eq, QueryKind::Sub] {
        let r = learn_product_cex_mem_pos(&specs(&class, kind), &mut oracle(&class, &t), &bad, kind, 1000);
        assert!(matches!(r, Err(Error::InvalidPositiveExample(_))), "{kind}: {r:?}");
    }
    let r = learn_product_mem_pos(&specs(&class, QueryKind::Mem), &mut oracle(&class, &t), &bad, 1000);
    assert!(matches!(r, Err(Error::InvalidPositiveExample(_))), "{r:?}");
}

#[test]
fn mem_only_refuses_classes_with_the_empty_concept() {
    let class = ClassId::Product(vec![ClassId::Intervals { u: 4 }, ClassId::FiniteSets { u: 2 }]);
    let t = ConceptDesc::Product(vec![ConceptDesc::interval(0, 1), ConceptDesc::set([Point::Int(1)])]);
    let r = learn_product_mem_only(&specs(&class, QueryKind::Mem), &mut oracle(&class, &t), 1000);
    assert!(matches!(r, Err(Error::EmptyConceptClass(_))));
}

#[test]
fn union_rejects_untagged_counterexamples() {
    let class = ClassId::Union(vec![ClassId::Intervals { u: 4 }, ClassId::Intervals { u: 4 }]);
    let mut liar = |_: &Query| -> modlearn::Result<Answer> { Ok(Answer::Counterexample(Point::Int(0))) };
    let r = learn_disjoint_union(&specs(&class, QueryKind::Eq), &mut liar, QueryKind::Eq, 100);
    assert!(matches!(r, Err(Error::ProtocolViolation(_))), "{r:?}");
}

#[test]
fn budget_exhaustion_carries_the_partial_transcript() {
    let class = ClassId::power(ClassId::Intervals { u: 16 }, 2);
    let t = ConceptDesc::Product(vec![ConceptDesc::interval(3, 5), ConceptDesc::interval(2, 8)]);
    let r = learn_product_sup(&specs(&class, QueryKind::Sup), &mut oracle(&class, &t), 3);
    let Err(e @ Error::BudgetExhausted { .. }) = r else { panic!("{r:?}") };
    let partial = e.partial().unwrap();
    assert_eq!(partial.stats.total, 3);
    assert_eq!(partial.transcript.len(), 3);
}

#[test]
fn sessions_are_deterministic() {
    let class = ClassId::power(ClassId::Intervals { u: 16 }, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let t = random_concept(&class, &mut rng);
        let mut o = oracle(&class, &t);
        let p = match o.answer(&Query::OnePos).unwrap() {
            Answer::Positive(p) => p,
            a => panic!("{a}"),
        };
        let run = || learn_product_cex_mem_pos(&specs(&class, QueryKind::Eq), &mut oracle(&class, &t), &p, QueryKind::Eq, 10_000).unwrap();
        assert_eq!(run(), run());
    }
}
