use std::collections::HashSet;
use std::fmt;

use super::{verify_automorphism, ActionError, Automorphism};
use crate::complex::{CubeComplex, Vertex};

/// A word over the generating set. `[a, b]` acts as `a ∘ b`, so the
/// prefixes `[g1]`, `[g1, g2]`, ... applied to the base vertex give the
/// successive vertices `g1(v)`, `g1 g2(v)`, ...
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Parses a comma- or whitespace-separated list of generator names.
    pub fn parse(text: &str) -> Word {
        Word(
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&self.0.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub map: Automorphism,
    /// Index of the inverse generator (itself for involutions).
    pub inverse: usize,
}

/// A finitely generated action given by a symmetric generating set and a
/// base vertex.
#[derive(Clone, Debug)]
pub struct GroupAction {
    generators: Vec<Generator>,
    base: Vertex,
}

impl GroupAction {
    /// Verifies every generator and closes the set under inverses. A missing
    /// inverse of `g` is added right after it under the name `g^-1`.
    pub fn new(
        x: &CubeComplex,
        named: Vec<(String, Automorphism)>,
        base: Vertex,
    ) -> Result<GroupAction, ActionError> {
        if !x.contains(&base) {
            return Err(ActionError::UnknownVertex(base.to_string()));
        }
        let mut names = HashSet::new();
        for (name, map) in &named {
            if !names.insert(name.clone()) {
                return Err(ActionError::DuplicateName(name.clone()));
            }
            verify_automorphism(x, map).map_err(|violation| ActionError::InvalidGenerator {
                name: name.clone(),
                violation,
            })?;
        }
        let mut list: Vec<(String, Automorphism)> = Vec::with_capacity(2 * named.len());
        for (name, map) in &named {
            list.push((name.clone(), map.clone()));
            let inv = map.inverse();
            if inv != *map && !named.iter().any(|(_, m)| *m == inv) {
                let derived = format!("{name}^-1");
                if names.contains(&derived) {
                    return Err(ActionError::DuplicateName(derived));
                }
                list.push((derived, inv));
            }
        }
        let generators = list
            .iter()
            .map(|(name, map)| {
                let inv = map.inverse();
                let inverse = list.iter().position(|(_, m)| *m == inv).expect("inverse present");
                Generator {
                    name: name.clone(),
                    map: map.clone(),
                    inverse,
                }
            })
            .collect();
        Ok(GroupAction { generators, base })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn base(&self) -> &Vertex {
        &self.base
    }

    pub fn with_base(mut self, base: Vertex) -> GroupAction {
        self.base = base;
        self
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn resolve(&self, word: &Word) -> Result<Vec<usize>, ActionError> {
        word.0
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| ActionError::UnknownGenerator(l.clone())))
            .collect()
    }

    pub fn word_of(&self, letters: &[usize]) -> Word {
        Word(letters.iter().map(|&i| self.generators[i].name.clone()).collect())
    }

    pub fn evaluate_letters(&self, x: &CubeComplex, letters: &[usize]) -> Automorphism {
        let mut out = Automorphism::identity(x);
        for &i in letters.iter().rev() {
            out = self.generators[i]
                .map
                .compose(&out)
                .expect("generators of one action compose");
        }
        out
    }

    pub fn evaluate(&self, x: &CubeComplex, word: &Word) -> Result<Automorphism, ActionError> {
        Ok(self.evaluate_letters(x, &self.resolve(word)?))
    }

    /// `apply([a, b], v) = a(b(v))`.
    pub fn apply(&self, word: &Word, v: &Vertex) -> Result<Vertex, ActionError> {
        let letters = self.resolve(word)?;
        Ok(self.apply_letters(&letters, v))
    }

    pub fn apply_letters(&self, letters: &[usize], v: &Vertex) -> Vertex {
        letters
            .iter()
            .rev()
            .fold(v.clone(), |acc, &i| self.generators[i].map.apply(&acc))
    }

    pub fn inverse_letters(&self, letters: &[usize]) -> Vec<usize> {
        letters.iter().rev().map(|&i| self.generators[i].inverse).collect()
    }

    pub fn inverse_word(&self, word: &Word) -> Result<Word, ActionError> {
        Ok(self.word_of(&self.inverse_letters(&self.resolve(word)?)))
    }

    /// Cancels adjacent inverse pairs.
    pub fn reduce_letters(&self, letters: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(letters.len());
        for &i in letters {
            match out.last() {
                Some(&j) if self.generators[j].inverse == i => {
                    out.pop();
                }
                _ => out.push(i),
            }
        }
        out
    }
}

/// Layered breadth-first search over words acting on a vertex.
///
/// Words grow on the left, so the image of `g·w` depends only on the image
/// of `w`; each layer keeps one word per newly reached vertex. Generators
/// are tried in order, which makes every stored word the
/// shortest-then-lexicographically-least word reaching its vertex.
pub struct WordBfs<'a> {
    action: &'a GroupAction,
    seen: HashSet<Vertex>,
    layer: Vec<(Vertex, Vec<usize>)>,
    started: bool,
}

impl<'a> WordBfs<'a> {
    pub fn new(action: &'a GroupAction, start: &Vertex) -> Self {
        WordBfs {
            action,
            seen: HashSet::from([start.clone()]),
            layer: vec![(start.clone(), Vec::new())],
            started: false,
        }
    }

    /// The next layer of newly reached vertices, or `None` once the orbit is
    /// closed.
    pub fn next_layer(&mut self) -> Option<&[(Vertex, Vec<usize>)]> {
        if !self.started {
            self.started = true;
            return Some(&self.layer);
        }
        let mut next = Vec::new();
        for (g, generator) in self.action.generators.iter().enumerate() {
            for (u, word) in &self.layer {
                let image = generator.map.apply(u);
                if self.seen.insert(image.clone()) {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(g);
                    w.extend_from_slice(word);
                    next.push((image, w));
                }
            }
        }
        if next.is_empty() {
            self.layer.clear();
            return None;
        }
        self.layer = next;
        Some(&self.layer)
    }

    pub fn seen(&self) -> usize {
        self.seen.len()
    }

    pub fn into_seen(self) -> HashSet<Vertex> {
        self.seen
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitResult {
    /// The whole orbit, in canonical order.
    Complete(Vec<Vertex>),
    /// Exploration stopped at the cap; carries the farthest vertex reached
    /// and the word reaching it.
    CapExceeded {
        farthest: Vertex,
        word: Word,
        distance: usize,
        explored: usize,
    },
}

/// Orbit of `v` under the action, explored up to `cap` vertices.
pub fn orbit(x: &CubeComplex, action: &GroupAction, v: &Vertex, cap: usize) -> OrbitResult {
    let mut bfs = WordBfs::new(action, v);
    let mut farthest = (0usize, v.clone(), Vec::new());
    while let Some(layer) = bfs.next_layer() {
        for (u, word) in layer {
            let d = x.distance(v, u);
            if d > farthest.0 {
                farthest = (d, u.clone(), word.clone());
            }
        }
        if bfs.seen() > cap {
            return OrbitResult::CapExceeded {
                farthest: farthest.1,
                word: action.word_of(&farthest.2),
                distance: farthest.0,
                explored: bfs.seen(),
            };
        }
    }
    let mut all: Vec<Vertex> = bfs.into_seen().into_iter().collect();
    all.sort();
    OrbitResult::Complete(all)
}
