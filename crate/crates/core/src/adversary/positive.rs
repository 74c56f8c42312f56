use crate::concepts::{ClassId, Point};
use crate::error::{Error, Result};
use crate::protocol::{consistent_concepts, Answer, Oracle, Query, Transcript};

/// Answers Pos on `PairLeft x PairRight(u)` with `(a,0), (a,1), ...`.
///
/// These points lie in both `{a} x [0,u)` and `{a,b} x [0,u)`, so no number
/// of answers separates the two.
#[derive(Clone, Debug)]
pub struct PositiveAdversary {
    u: u32,
    issued: u32,
}

impl PositiveAdversary {
    pub fn new(u: u32) -> Self {
        PositiveAdversary { u, issued: 0 }
    }

    pub fn class(&self) -> ClassId {
        ClassId::pair_demo(self.u)
    }
}

impl Oracle for PositiveAdversary {
    fn answer(&mut self, query: &Query) -> Result<Answer> {
        match query {
            Query::Pos => {
                if self.issued >= self.u {
                    return Err(Error::UniverseExhausted(self.issued as usize));
                }
                let x = Point::Vector(vec![ClassId::a(), Point::Int(i64::from(self.issued))]);
                self.issued += 1;
                Ok(Answer::Positive(x))
            }
            q => Err(Error::UnsupportedQuery(format!("the positive adversary only answers Pos, not {q}"))),
        }
    }
}

/// The number of concepts of `class` consistent with `transcript`.
pub fn positive_certificate(class: &ClassId, transcript: &Transcript) -> Result<usize> {
    Ok(consistent_concepts(class, transcript)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_points_from_the_a_side() {
        let mut adv = PositiveAdversary::new(3);
        let mut t = Vec::new();
        for i in 0..3 {
            let a = adv.answer(&Query::Pos).unwrap();
            assert_eq!(a, Answer::Positive(Point::Vector(vec![ClassId::a(), Point::Int(i)])));
            t.push((Query::Pos, a));
        }
        assert!(matches!(adv.answer(&Query::Pos), Err(Error::UniverseExhausted(3))));
        assert_eq!(positive_certificate(&adv.class(), &t).unwrap(), 2);
    }
}
