//! Day/night semi-decision of the word problem in a finitely presented
//! group.
//!
//! The day search tries to rewrite `w` to the empty word using the
//! relators. The night search tries to rewrite every generator to the
//! empty word using the relators together with `w`, i.e. to show that `w`
//! normally generates the whole group. The night verdict means "`w` is
//! nontrivial" only in groups whose every nontrivial element normally
//! generates (simple groups, and more generally the situation of a
//! finitely presented subgroup of a simple group); for other presentations
//! a `Nontrivial` verdict certifies only that the quotient by `w` is
//! trivial.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{free_reduce, Letter};

pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Deserialize, Serialize)]
struct PresentationFile {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.is_empty() || free_reduce(r) != *r {
                return Err(Error::Invalid("relators must be freely reduced and non-empty".into()));
            }
            if r.iter().any(|l| l.generator >= generators.len()) {
                return Err(Error::GeneratorIndex(r.iter().map(|l| l.generator).max().unwrap_or(0)));
            }
        }
        Ok(FinitePresentation { generators, relators })
    }

    /// Reads `{"generators": [...], "relators": [...]}`. Relators are freely
    /// reduced on input.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut p = FinitePresentation { generators: file.generators, relators: Vec::new() };
        let mut relators = Vec::new();
        for r in &file.relators {
            let w = free_reduce(&p.parse_word(r)?);
            if !w.is_empty() {
                relators.push(w);
            }
        }
        p.relators = relators;
        FinitePresentation::new(p.generators, p.relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Parses `a b^-1 a^2`; `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, e) = match token.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Error::Invalid(format!("bad exponent in `{token}`")))?),
                None => (token, 1),
            };
            let g = self
                .generators
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let l = Letter { generator: g, inverse: e < 0 };
            out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let n = &self.generators[l.generator];
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_length: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_length: 24, max_states: 200_000 }
    }
}

/// Insert a cyclic conjugate of `relator^{±1}` at `position`, then freely
/// reduce; `result` is the reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub position: usize,
    pub relator: usize,
    pub inverse: bool,
    pub rotation: usize,
    pub result: Word,
}

/// A rewriting from `start` to the empty word. `relators` are the words the
/// step indices refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: Word,
    pub relators: Vec<Word>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
    pub last_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Trivial(Derivation),
    /// One derivation per generator, over the relators plus `w`.
    Nontrivial(Vec<Derivation>),
    BudgetExhausted(SearchStats),
}

fn relator_piece(r: &[Letter], inverse: bool, rotation: usize) -> Word {
    let base: Word = if inverse { r.iter().rev().map(|l| l.inv()).collect() } else { r.to_vec() };
    let mut piece = base;
    piece.rotate_left(rotation);
    piece
}

fn apply(word: &[Letter], relators: &[Word], step: &Step) -> Option<Word> {
    let r = relators.get(step.relator)?;
    if step.position > word.len() || step.rotation >= r.len() {
        return None;
    }
    let mut w = word[..step.position].to_vec();
    w.extend(relator_piece(r, step.inverse, step.rotation));
    w.extend_from_slice(&word[step.position..]);
    Some(free_reduce(&w))
}

/// Checks a derivation mechanically.
pub fn replay(derivation: &Derivation) -> bool {
    let mut w = free_reduce(&derivation.start);
    for step in &derivation.steps {
        match apply(&w, &derivation.relators, step) {
            Some(next) if next == step.result => w = next,
            _ => return false,
        }
    }
    w.is_empty()
}

enum Search {
    Found(Vec<Step>),
    Exhausted,
    OutOfStates,
}

fn search(start: &[Letter], relators: &[Word], max_length: usize, states: &mut usize, cap: usize) -> Search {
    let start = free_reduce(start);
    if start.is_empty() {
        return Search::Found(Vec::new());
    }
    let mut nodes: Vec<(Word, usize, Option<Step>)> = vec![(start.clone(), usize::MAX, None)];
    let mut index: HashMap<Word, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let word = nodes[at].0.clone();
        for (ri, r) in relators.iter().enumerate() {
            for inverse in [false, true] {
                for rotation in 0..r.len() {
                    let piece = relator_piece(r, inverse, rotation);
                    for position in 0..=word.len() {
                        let mut w = word[..position].to_vec();
                        w.extend_from_slice(&piece);
                        w.extend_from_slice(&word[position..]);
                        let w = free_reduce(&w);
                        if w.len() > max_length || index.contains_key(&w) {
                            continue;
                        }
                        *states += 1;
                        if *states > cap {
                            return Search::OutOfStates;
                        }
                        let step = Step { position, relator: ri, inverse, rotation, result: w.clone() };
                        let done = w.is_empty();
                        nodes.push((w.clone(), at, Some(step)));
                        index.insert(w, nodes.len() - 1);
                        if done {
                            let mut steps = Vec::new();
                            let mut cur = nodes.len() - 1;
                            while let Some(step) = nodes[cur].2.clone() {
                                steps.push(step);
                                cur = nodes[cur].1;
                            }
                            steps.reverse();
                            return Search::Found(steps);
                        }
                        queue.push_back(nodes.len() - 1);
                    }
                }
            }
        }
    }
    Search::Exhausted
}

/// Runs day and night searches with increasing length caps.
pub fn decide_word(p: &FinitePresentation, w: &[Letter], budget: Budget) -> Result<Verdict> {
    if let Some(l) = w.iter().find(|l| l.generator >= p.generators.len()) {
        return Err(Error::GeneratorIndex(l.generator));
    }
    let w = free_reduce(w);
    let day_relators = p.relators.clone();
    if w.is_empty() {
        return Ok(Verdict::Trivial(Derivation { start: w, relators: day_relators, steps: Vec::new() }));
    }
    let mut night_relators = p.relators.clone();
    night_relators.push(w.clone());
    let longest = p.relators.iter().map(Vec::len).max().unwrap_or(0);
    let mut states = 0;
    let first = w.len().max(longest).max(1).min(budget.max_length.max(1));
    for length in first..=budget.max_length.max(first) {
        match search(&w, &day_relators, length, &mut states, budget.max_states) {
            Search::Found(steps) => {
                return Ok(Verdict::Trivial(Derivation { start: w, relators: day_relators, steps }));
            }
            Search::OutOfStates => {
                return Ok(Verdict::BudgetExhausted(SearchStats { states, last_length: length }));
            }
            Search::Exhausted => {}
        }
        let mut night = Vec::new();
        for g in 0..p.generators.len() {
            let x = vec![Letter::new(g)];
            match search(&x, &night_relators, length, &mut states, budget.max_states) {
                Search::Found(steps) => {
                    night.push(Derivation { start: x, relators: night_relators.clone(), steps });
                }
                Search::OutOfStates => {
                    return Ok(Verdict::BudgetExhausted(SearchStats { states, last_length: length }));
                }
                Search::Exhausted => break,
            }
        }
        if night.len() == p.generators.len() {
            return Ok(Verdict::Nontrivial(night));
        }
    }
    Ok(Verdict::BudgetExhausted(SearchStats { states, last_length: budget.max_length }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic3() -> FinitePresentation {
        FinitePresentation::from_json(r#"{"generators":["a"],"relators":["a a a"]}"#).unwrap()
    }

    fn z2() -> FinitePresentation {
        FinitePresentation::from_json(r#"{"generators":["a","b"],"relators":["a b a^-1 b^-1"]}"#).unwrap()
    }

    #[test]
    fn relator_is_trivial() {
        let p = cyclic3();
        let w = p.parse_word("a a a").unwrap();
        match decide_word(&p, &w, Budget::default()).unwrap() {
            Verdict::Trivial(d) => assert!(replay(&d)),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn generator_of_z3_is_nontrivial() {
        let p = cyclic3();
        let w = p.parse_word("a").unwrap();
        match decide_word(&p, &w, Budget::default()).unwrap() {
            Verdict::Nontrivial(ds) => {
                assert_eq!(ds.len(), 1);
                assert!(ds.iter().all(replay));
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn commutator_is_trivial() {
        let p = z2();
        let w = p.parse_word("a b a^-1 b^-1").unwrap();
        assert!(matches!(decide_word(&p, &w, Budget::default()).unwrap(), Verdict::Trivial(d) if replay(&d)));
        let w = p.parse_word("b a b^-1 a^-1").unwrap();
        assert!(matches!(decide_word(&p, &w, Budget::default()).unwrap(), Verdict::Trivial(d) if replay(&d)));
    }

    #[test]
    fn tiny_budget_is_exhausted() {
        let p = z2();
        let w = p.parse_word("a").unwrap();
        let v = decide_word(&p, &w, Budget { max_length: 6, max_states: 50 }).unwrap();
        assert!(matches!(v, Verdict::BudgetExhausted(_)));
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let p = cyclic3();
        let w = p.parse_word("a a a").unwrap();
        let Verdict::Trivial(mut d) = decide_word(&p, &w, Budget::default()).unwrap() else { panic!() };
        d.start = p.parse_word("a").unwrap();
        assert!(!replay(&d));
    }

    #[test]
    fn unknown_generator() {
        assert!(cyclic3().parse_word("b").is_err());
    }
}
