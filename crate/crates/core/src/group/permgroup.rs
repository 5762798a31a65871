use std::collections::HashMap;
use std::sync::OnceLock;

use super::chain::StabChain;
use super::perm::Permutation;
use super::GroupError;

/// Default bound on the number of elements any enumeration may produce.
pub const ELEMENT_LIMIT: u128 = 10_000_000;

/// A permutation group given by named generators. The stabilizer chain is
/// built on first use and then frozen.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    names: Vec<String>,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: usize,
}

/// Every element together with the index of its conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassMap {
    pub classes: Vec<ConjugacyClass>,
    index: HashMap<Permutation, usize>,
}

impl ClassMap {
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, named: Vec<(String, Permutation)>) -> Result<Self, GroupError> {
        for (name, g) in &named {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch { name: name.clone(), expected: degree, found: g.degree() });
            }
        }
        let (names, generators) = named.into_iter().unzip();
        Ok(PermutationGroup { degree, names, generators, chain: OnceLock::new() })
    }

    /// Generators named `a`, `b`, `c`, ... in order.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        let named = gens.into_iter().enumerate().map(|(i, g)| (generator_name(i), g)).collect();
        PermutationGroup::new(degree, named)
    }

    /// Parses 1-based cycle strings, one per generator.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self, GroupError> {
        let perms = gens.iter().map(|s| Permutation::parse_cycles(degree, s)).collect::<Result<Vec<_>, _>>()?;
        PermutationGroup::from_generators(degree, perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, name: &str) -> Option<&Permutation> {
        self.names.iter().position(|n| n == name).map(|i| &self.generators[i])
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn elements(&self) -> Result<Vec<Permutation>, GroupError> {
        self.elements_with_limit(ELEMENT_LIMIT)
    }

    pub fn elements_with_limit(&self, limit: u128) -> Result<Vec<Permutation>, GroupError> {
        let order = self.order();
        if order > limit {
            return Err(GroupError::GroupTooLarge { order, limit });
        }
        Ok(self.chain().elements())
    }

    /// Orbits on points, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orbit = vec![s];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>, GroupError> {
        Ok(self.class_map()?.classes)
    }

    /// Partitions the elements into classes by closing each under conjugation
    /// by the generators. Classes are sorted by (size, representative) with
    /// the smallest element as representative.
    pub fn class_map(&self) -> Result<ClassMap, GroupError> {
        let mut elements = self.elements()?;
        elements.sort();
        let pos: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let mut class = vec![usize::MAX; elements.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let inverses: Vec<Permutation> = self.generators.iter().map(|g| g.inverse()).collect();
        for start in 0..elements.len() {
            if class[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            class[start] = id;
            let mut list = vec![start];
            let mut k = 0;
            while k < list.len() {
                let x = &elements[list[k]];
                for (g, gi) in self.generators.iter().zip(&inverses) {
                    let y = gi.then(x).then(g);
                    let j = pos[&y];
                    if class[j] == usize::MAX {
                        class[j] = id;
                        list.push(j);
                    }
                }
                k += 1;
            }
            members.push(list);
        }
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by_key(|&c| (members[c].len(), members[c].iter().min().copied()));
        let mut renumber = vec![0; members.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let classes = order
            .iter()
            .map(|&c| ConjugacyClass {
                representative: elements[*members[c].iter().min().expect("non-empty class")].clone(),
                size: members[c].len(),
            })
            .collect();
        let index = elements.into_iter().enumerate().map(|(i, g)| (g, renumber[class[i]])).collect();
        Ok(ClassMap { classes, index })
    }

    /// Evaluates a word over generator names, left to right: `"aba"` applies
    /// `a`, then `b`, then `a`.
    pub fn word(&self, word: &str) -> Result<Permutation, GroupError> {
        let mut acc = Permutation::identity(self.degree);
        for ch in word.chars().filter(|c| !c.is_whitespace()) {
            let g = self.generator(&ch.to_string()).ok_or_else(|| GroupError::UnknownGenerator(ch.to_string()))?;
            acc = acc.then(g);
        }
        Ok(acc)
    }
}

pub fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// Evaluates `relation` over the named generators (left factor first).
pub fn word_rewrite(group: &PermutationGroup, relation: &str) -> Result<Permutation, GroupError> {
    group.word(relation)
}
