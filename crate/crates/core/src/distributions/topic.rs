//! The pure-document topic model.
//!
//! A document first draws a latent topic, then includes every word of that
//! topic's primary set and of the shared generic set independently with the
//! word's own probability. Words outside the chosen topic set are absent.
//! A topic with an empty primary set models generic-only documents.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::{normalize_event, DistError, DistributionSource, ExactProbability};
use crate::logic::{Literal, Var};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topic {
    pub probability: f64,
    /// 0-based word indices.
    pub primary: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    n: usize,
    topics: Vec<Topic>,
    generic: Vec<usize>,
    /// Inclusion probability per word; zero for words in no set.
    word_prob: Vec<f64>,
    /// Per topic, membership of each word in the topic set.
    active: Vec<Vec<bool>>,
}

impl TopicModel {
    pub fn new(
        n: usize,
        topics: Vec<Topic>,
        generic: Vec<usize>,
        word_prob: Vec<f64>,
    ) -> Result<TopicModel, DistError> {
        let bad = |m: String| Err(DistError::InvalidTopicModel(m));
        if word_prob.len() != n {
            return bad(format!("{} word probabilities for {n} words", word_prob.len()));
        }
        if topics.is_empty() {
            return bad("no topics".into());
        }
        let mut owner = vec![None::<usize>; n];
        let sets = topics.iter().map(|t| &t.primary).enumerate().chain(std::iter::once((usize::MAX, &generic)));
        for (t, words) in sets {
            for &w in words {
                if w >= n {
                    return Err(DistError::VariableOutOfRange { var: w + 1, n });
                }
                if owner[w].replace(t).is_some() {
                    return bad(format!("word x{} belongs to more than one set", w + 1));
                }
                let p = word_prob[w];
                if !(p > 0.0 && p <= 1.0) {
                    return bad(format!("word x{} has probability {p} outside (0,1]", w + 1));
                }
            }
        }
        if let Some(t) = topics.iter().find(|t| !(t.probability > 0.0 && t.probability <= 1.0)) {
            return bad(format!("topic probability {} outside (0,1]", t.probability));
        }
        let total: f64 = topics.iter().map(|t| t.probability).sum();
        if (total - 1.0).abs() > 1e-9 {
            return bad(format!("topic probabilities sum to {total}"));
        }
        let mut model = TopicModel { n, topics, generic, word_prob, active: Vec::new() };
        model.build_active();
        Ok(model)
    }

    fn build_active(&mut self) {
        self.active = self
            .topics
            .iter()
            .map(|t| {
                let mut a = vec![false; self.n];
                for &w in t.primary.iter().chain(&self.generic) {
                    a[w] = true;
                }
                a
            })
            .collect();
    }

    pub fn topics(&self) -> &[Topic] {
        &self.topics
    }

    pub fn generic(&self) -> &[usize] {
        &self.generic
    }

    pub fn word_probabilities(&self) -> &[f64] {
        &self.word_prob
    }

    /// Probability that `lit` holds given topic `t`.
    fn literal_given_topic(&self, t: usize, lit: Literal) -> f64 {
        let w = lit.var().index();
        let p_one = if self.active[t][w] { self.word_prob[w] } else { 0.0 };
        if lit.is_positive() {
            p_one
        } else {
            1.0 - p_one
        }
    }

    /// Mass of one full assignment: `Σ_t π_t Π_i Pr[x_i | t]`.
    pub fn point_probability(&self, x: &[bool]) -> f64 {
        (0..self.topics.len())
            .map(|t| {
                let given: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| self.literal_given_topic(t, Literal::new(Var(i as u32), b)))
                    .product();
                self.topics[t].probability * given
            })
            .sum()
    }
}

impl DistributionSource for TopicModel {
    fn num_vars(&self) -> usize {
        self.n
    }

    /// One `f64` picks the topic, then each word of the topic set draws one
    /// Bernoulli in ascending index order.
    fn sample(&self, rng: &mut dyn RngCore) -> Vec<bool> {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut topic = self.topics.len() - 1;
        for (t, tp) in self.topics.iter().enumerate() {
            acc += tp.probability;
            if u < acc {
                topic = t;
                break;
            }
        }
        (0..self.n)
            .map(|w| self.active[topic][w] && rng.gen_bool(self.word_prob[w]))
            .collect()
    }

    fn describe(&self) -> String {
        format!("topicmodel n={} topics={} generic={}", self.n, self.topics.len(), self.generic.len())
    }

    fn exact(&self) -> Option<&dyn ExactProbability> {
        Some(self)
    }
}

impl ExactProbability for TopicModel {
    fn num_vars(&self) -> usize {
        self.n
    }

    /// Words are independent given the topic, so the marginal of the
    /// two-stage process is a mixture of products.
    fn conjunction_probability(&self, lits: &[Literal]) -> Result<f64, DistError> {
        let Some(event) = normalize_event(self.n, lits)? else {
            return Ok(0.0);
        };
        Ok((0..self.topics.len())
            .map(|t| {
                self.topics[t].probability * event.iter().map(|&l| self.literal_given_topic(t, l)).product::<f64>()
            })
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Role};

    fn two_topics() -> TopicModel {
        // topics {x1,x2}, {x3,x4}; generic x5
        TopicModel::new(
            5,
            vec![Topic { probability: 0.5, primary: vec![0, 1] }, Topic { probability: 0.5, primary: vec![2, 3] }],
            vec![4],
            vec![0.15; 5],
        )
        .unwrap()
    }

    #[test]
    fn all_ones_model() {
        let m = TopicModel::new(3, vec![Topic { probability: 1.0, primary: vec![0, 1, 2] }], vec![], vec![1.0; 3])
            .unwrap();
        let mut rng = stream(1, Role::Aux, 0);
        assert_eq!(m.sample(&mut rng), vec![true; 3]);
    }

    #[test]
    fn disjoint_primaries_never_cooccur() {
        let m = two_topics();
        let mut rng = stream(2, Role::Aux, 0);
        let mut with_topic = 0u32;
        let mut x1 = 0u32;
        for _ in 0..40_000 {
            let x = m.sample(&mut rng);
            assert!(!((x[0] || x[1]) && (x[2] || x[3])));
            // x2 present pins the first topic
            if x[1] {
                with_topic += 1;
                x1 += x[0] as u32;
            }
        }
        assert!((x1 as f64 / with_topic as f64 - 0.15).abs() <= 0.03);
    }

    #[test]
    fn word_frequency_given_topic() {
        // the unconditional rate of x1 is 0.5 * 0.15; dividing by the topic
        // probability recovers the word probability 0.15 ± 0.01
        let m = two_topics();
        let mut rng = stream(3, Role::Aux, 0);
        let hits: u32 = (0..40_000).map(|_| m.sample(&mut rng)[0] as u32).sum();
        assert!((hits as f64 / 40_000.0 / 0.5 - 0.15).abs() <= 0.01);
    }

    #[test]
    fn validation() {
        let overlap = TopicModel::new(2, vec![Topic { probability: 1.0, primary: vec![0] }], vec![0], vec![0.1, 0.1]);
        assert!(overlap.is_err());
        let sum = TopicModel::new(2, vec![Topic { probability: 0.4, primary: vec![0] }], vec![], vec![0.1, 0.1]);
        assert!(sum.is_err());
    }

    #[test]
    fn exact_matches_point_mass_sum() {
        let m = two_topics();
        let event = [Literal::from_dimacs(1), Literal::from_dimacs(-5)];
        let direct = m.conjunction_probability(&event).unwrap();
        let mut total = 0.0;
        for mask in 0u32..32 {
            let x: Vec<bool> = (0..5).map(|i| mask >> i & 1 == 1).collect();
            if x[0] && !x[4] {
                total += m.point_probability(&x);
            }
        }
        assert!((direct - total).abs() < 1e-12);
        assert!((direct - 0.5 * 0.15 * 0.85).abs() < 1e-12);
    }
}
