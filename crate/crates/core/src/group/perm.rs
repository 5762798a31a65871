use std::fmt;
use std::ops::Mul;

use super::GroupError;

/// A permutation of `0..degree`. Products apply the left factor first:
/// `(p * q)(x) = q(p(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u32).collect() })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(GroupError::NotAPermutation(format!("{cycles:?}")));
                }
                touched[x] = true;
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based cycle notation such as `(3,4)(6,7)`; `()` is the identity.
    /// Entries may be separated by commas or spaces.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Parse(s.to_string());
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            let entries: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            if !entries.is_empty() {
                cycles.push(entries);
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` applied first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| self.images[v as usize] == i as u32)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &v)| *i as u32 == v).count()
    }

    /// Non-trivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                seen[s] = true;
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extended(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// Disjoint union: `self` on `0..n`, `other` shifted onto `n..n+m`.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let n = self.images.len() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + n));
        Permutation { images }
    }

    /// Restriction to the first `degree` points, which must be invariant.
    pub fn restricted(&self, degree: usize) -> Self {
        Permutation { images: self.images[..degree].to_vec() }
    }

    /// Order as a group element (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// 1-based cycle notation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self)
    }
}
