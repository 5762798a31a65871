//! Deterministic Schreier–Sims stabilizer chain.

use super::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// strong generators fixing all earlier base points
    gens: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        Level { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.point];
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            let ux = self.transversal[x].clone().expect("orbit point has a transversal");
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(ux.then(g));
                    self.orbit.push(y);
                }
            }
            k += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> StabChain {
        StabChain::with_base(degree, gens, &[])
    }

    /// Chain whose base starts with `prefix` (further points are added as needed).
    pub fn with_base(degree: usize, gens: &[Permutation], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain { degree, levels: prefix.iter().map(|&p| Level::new(p, degree)).collect() };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if !chain.levels.iter().any(|l| g.apply(l.point) != l.point) {
                let p = (0..degree).find(|&x| g.apply(x) != x).expect("non-identity moves a point");
                chain.levels.push(Level::new(p, degree));
            }
        }
        for g in &gens {
            let mut i = 0;
            while i < chain.levels.len() {
                let moved = g.apply(chain.levels[i].point) != chain.levels[i].point;
                chain.levels[i].gens.push(g.clone());
                if moved {
                    break;
                }
                i += 1;
            }
        }
        for l in &mut chain.levels {
            l.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Sifts `g`; returns the residue and the level where sifting stopped
    /// (`levels.len()` when it went all the way through).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for j in from..self.levels.len() {
            let l = &self.levels[j];
            let b = h.apply(l.point);
            match &l.transversal[b] {
                None => return (h, j),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let mut added = None;
            'search: for k in 0..self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[k];
                let ub = self.levels[lvl].transversal[beta].clone().expect("orbit point");
                for s in self.levels[lvl].gens.clone() {
                    let img = s.apply(beta);
                    let uimg = self.levels[lvl].transversal[img].as_ref().expect("orbit closed");
                    let h = ub.then(&s).then(&uimg.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, lvl + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        added = Some((y, j));
                        break 'search;
                    }
                }
            }
            match added {
                None => i -= 1,
                Some((y, j)) => {
                    if j == self.levels.len() {
                        let p = (0..self.degree).find(|&x| y.apply(x) != x).expect("residue moves a point");
                        self.levels.push(Level::new(p, self.degree));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(y.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = j + 1;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (y, j) = self.strip(g, 0);
        j == self.levels.len() && y.is_identity()
    }

    /// Strong generators of the stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels.get(depth).map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn orbit_of_base(&self, depth: usize) -> Vec<usize> {
        self.levels.get(depth).map(|l| l.orbit.clone()).unwrap_or_default()
    }

    /// All elements, as products of transversal elements from the deepest
    /// level up.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut set = vec![Permutation::identity(self.degree)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(set.len() * l.orbit.len());
            for h in &set {
                for &x in &l.orbit {
                    next.push(h.then(l.transversal[x].as_ref().expect("orbit point")));
                }
            }
            set = next;
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_order(degree: usize, gens: &[Permutation]) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(degree);
        let mut stack = vec![id.clone()];
        seen.insert(id);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s7 = [p(7, "(1,2)"), p(7, "(1,2,3,4,5,6,7)")];
        assert_eq!(StabChain::new(7, &s7).order(), 5040);
        let a5 = [p(5, "(1,2,3)"), p(5, "(1,2,3,4,5)")];
        assert_eq!(StabChain::new(5, &a5).order(), 60);
        assert_eq!(StabChain::new(4, &[]).order(), 1);
    }

    #[test]
    fn matches_brute_force_on_small_groups() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (6, vec![p(6, "(1,2)(3,4)"), p(6, "(2,3)(5,6)")]),
            (6, vec![p(6, "(1,2,3)(4,5,6)"), p(6, "(1,4)")]),
            (8, vec![p(8, "(1,2)(3,4)(5,6)(7,8)"), p(8, "(1,3)(2,4)"), p(8, "(1,5)(2,6)(3,7)(4,8)")]),
            (7, vec![p(7, "(4,6)(5,7)"), p(7, "(3,5)(2,4)"), p(7, "(1,2)(5,6)")]),
        ];
        for (n, gens) in cases {
            let chain = StabChain::new(n, &gens);
            assert_eq!(chain.order() as usize, brute_order(n, &gens));
            let els = chain.elements();
            assert_eq!(els.len(), chain.order() as usize);
            let set: HashSet<_> = els.iter().cloned().collect();
            assert_eq!(set.len(), els.len());
            assert!(els.iter().all(|g| chain.contains(g)));
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let chain = StabChain::new(4, &[p(4, "(1,2)(3,4)"), p(4, "(1,3)(2,4)")]);
        assert_eq!(chain.order(), 4);
        assert!(!chain.contains(&p(4, "(1,2)")));
        assert!(chain.contains(&p(4, "(1,4)(2,3)")));
    }

    #[test]
    fn prescribed_base_gives_point_stabilizer() {
        let s4 = [p(4, "(1,2)"), p(4, "(1,2,3,4)")];
        let chain = StabChain::with_base(4, &s4, &[3]);
        assert_eq!(chain.base()[0], 3);
        let stab = StabChain::new(4, &chain.stabilizer_generators(1));
        assert_eq!(stab.order(), 6);
        assert!(chain.stabilizer_generators(1).iter().all(|g| g.apply(3) == 3));
    }
}
