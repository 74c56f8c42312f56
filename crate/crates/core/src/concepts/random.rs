//! Seeded random concepts, for test matrices and trials.

use rand::Rng;

use super::{ClassId, ConceptDesc, Point, Word};

/// A random concept of `class`. Atomic classes are sampled directly, not by
/// enumeration; products and unions sample each component independently.
pub fn random_concept<R: Rng + ?Sized>(class: &ClassId, rng: &mut R) -> ConceptDesc {
    match class {
        ClassId::Singletons { m } => ConceptDesc::Singleton(rng.gen_range(0..=*m)),
        ClassId::Intervals { u } => {
            let a = rng.gen_range(0..i64::from(*u));
            let b = rng.gen_range(0..i64::from(*u));
            ConceptDesc::interval(a.min(b), a.max(b))
        }
        ClassId::FiniteSets { u } => ConceptDesc::set(
            (0..i64::from(*u)).filter(|_| rng.gen_bool(0.5)).map(Point::Int),
        ),
        ClassId::PairLeft => {
            if rng.gen_bool(0.5) {
                ConceptDesc::set([ClassId::a()])
            } else {
                ConceptDesc::set([ClassId::a(), ClassId::b()])
            }
        }
        ClassId::PairRight { u } => {
            let u = i64::from(*u);
            if rng.gen_bool(0.5) {
                ConceptDesc::interval(0, u - 1)
            } else {
                ConceptDesc::interval(-u, -1)
            }
        }
        ClassId::Prefix { u, max_len } => {
            let len = rng.gen_range(0..=*max_len);
            ConceptDesc::Prefix(Word((0..len).map(|_| rng.gen_range(0..*u)).collect()))
        }
        ClassId::Product(parts) => {
            ConceptDesc::Product(parts.iter().map(|p| random_concept(p, rng)).collect())
        }
        ClassId::Union(parts) => {
            ConceptDesc::Union(parts.iter().map(|p| random_concept(p, rng)).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_members_and_seeded() {
        let class = ClassId::Union(vec![
            ClassId::power(ClassId::Intervals { u: 16 }, 2),
            ClassId::Prefix { u: 4, max_len: 3 },
            ClassId::pair_demo(3),
            ClassId::FiniteSets { u: 5 },
            ClassId::Singletons { m: 2 },
        ]);
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let c = random_concept(&class, &mut a);
            class.check_concept(&c).unwrap();
            assert_eq!(c, random_concept(&class, &mut b));
        }
    }
}
