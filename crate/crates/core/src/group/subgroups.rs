//! Subgroups of given index, found as transitive actions on cosets.
//!
//! A subgroup of index `n` is the stabilizer of a point in a transitive
//! action of the group on `n` points. Actions are searched as coset tables
//! in standard (breadth-first) numbering; a complete table is kept when the
//! generator images define a homomorphism.

use rayon::prelude::*;

use super::chain::StabChain;
use super::perm::Permutation;
use super::permgroup::{PermutationGroup, ELEMENT_LIMIT};
use super::GroupError;
use crate::graph::ColoredGraph;
use crate::label::Label;

/// Largest index for which coset tables are built by explicit enumeration.
pub const INDEX_LIMIT: usize = 5000;

#[derive(Debug, Clone)]
pub struct SubgroupHandle {
    generators: Vec<Permutation>,
    order: u128,
    index: usize,
    /// `coset_table[g][i]` is the coset `H x_i g` for generator `g`; coset 0 is `H`.
    coset_table: Vec<Vec<usize>>,
    chain: StabChain,
}

impl SubgroupHandle {
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coset_table(&self) -> &[Vec<usize>] {
        &self.coset_table
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn elements(&self) -> Result<Vec<Permutation>, GroupError> {
        if self.order > ELEMENT_LIMIT {
            return Err(GroupError::GroupTooLarge { order: self.order, limit: ELEMENT_LIMIT });
        }
        Ok(self.chain.elements())
    }

    /// Same subgroup (mutual containment).
    pub fn same_as(&self, other: &SubgroupHandle) -> bool {
        self.order == other.order && other.generators.iter().all(|g| self.contains(g))
    }

    /// Coset table as CSV: one row per coset (1-based), one column per generator.
    pub fn coset_table_csv(&self, names: &[String]) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["coset".to_string()];
        header.extend(names.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for i in 0..self.index {
            let mut row = vec![(i + 1).to_string()];
            row.extend(self.coset_table.iter().map(|t| (t[i] + 1).to_string()));
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    /// All conjugates `x^-1 H x`, one per distinct subgroup, in coset order.
    pub fn conjugates(&self, group: &PermutationGroup) -> Vec<SubgroupHandle> {
        let reps = coset_representatives(group, &self.coset_table);
        let mut out: Vec<SubgroupHandle> = Vec::new();
        for x in reps {
            let xi = x.inverse();
            let gens: Vec<Permutation> = self.generators.iter().map(|h| xi.then(h).then(&x)).collect();
            let h = subgroup_from_generators(group, &gens).expect("conjugate of a subgroup is a subgroup");
            if !out.iter().any(|o| o.same_as(&h)) {
                out.push(h);
            }
        }
        out
    }
}

/// Representatives `x_i` with `H x_i` the i-th coset, following the table.
fn coset_representatives(group: &PermutationGroup, table: &[Vec<usize>]) -> Vec<Permutation> {
    let n = table.first().map_or(1, |t| t.len());
    let mut reps: Vec<Option<Permutation>> = vec![None; n];
    reps[0] = Some(Permutation::identity(group.degree()));
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let i = queue[k];
        let xi = reps[i].clone().expect("reached coset");
        for (g, row) in group.generators().iter().zip(table) {
            let j = row[i];
            if reps[j].is_none() {
                reps[j] = Some(xi.then(g));
                queue.push(j);
            }
        }
        k += 1;
    }
    reps.into_iter().map(|r| r.expect("transitive table")).collect()
}

/// Subgroup generated by `gens`, with its coset table under the group's generators.
pub fn subgroup_from_generators(group: &PermutationGroup, gens: &[Permutation]) -> Result<SubgroupHandle, GroupError> {
    for g in gens {
        if !group.contains(g) {
            return Err(GroupError::NotInGroup(g.to_string()));
        }
    }
    let chain = StabChain::new(group.degree(), gens);
    let order = chain.order();
    let index = (group.order() / order) as usize;
    if index > INDEX_LIMIT {
        return Err(GroupError::IndexTooLarge { index, limit: INDEX_LIMIT });
    }
    // cosets by explicit representatives: H x = H y iff x y^-1 in H
    let mut reps = vec![Permutation::identity(group.degree())];
    let mut table = vec![vec![usize::MAX; index]; group.generators().len()];
    let mut k = 0;
    while k < reps.len() {
        for (gi, g) in group.generators().iter().enumerate() {
            let y = reps[k].then(g);
            let found = reps.iter().position(|r| chain.contains(&y.then(&r.inverse())));
            let j = match found {
                Some(j) => j,
                None => {
                    reps.push(y);
                    reps.len() - 1
                }
            };
            table[gi][k] = j;
        }
        k += 1;
    }
    Ok(SubgroupHandle { generators: gens.to_vec(), order, index, coset_table: table, chain })
}

/// Stabilizer of `point` in the natural action.
pub fn point_stabilizer(group: &PermutationGroup, point: usize) -> Result<SubgroupHandle, GroupError> {
    let chain = StabChain::with_base(group.degree(), group.generators(), &[point]);
    let gens = chain.stabilizer_generators(1);
    subgroup_from_generators(group, &gens)
}

struct Search<'a> {
    n: usize,
    invol: Vec<bool>,
    fwd: Vec<Vec<usize>>,
    bwd: Vec<Vec<usize>>,
    used: usize,
    leaves: &'a mut Vec<Vec<Vec<usize>>>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn next_cell(&self) -> Option<(usize, usize)> {
        for x in 0..self.used {
            for g in 0..self.fwd.len() {
                if self.fwd[g][x] == UNSET {
                    return Some((x, g));
                }
            }
        }
        None
    }

    fn run(&mut self) {
        let Some((x, g)) = self.next_cell() else {
            if self.used == self.n {
                self.leaves.push(self.fwd.clone());
            }
            return;
        };
        let limit = if self.used < self.n { self.used + 1 } else { self.used };
        for y in 0..limit {
            if self.bwd[g][y] != UNSET {
                continue;
            }
            if self.invol[g] && y != x && self.fwd[g][y] != UNSET {
                continue;
            }
            let fresh = y == self.used;
            if fresh {
                self.used += 1;
            }
            self.fwd[g][x] = y;
            self.bwd[g][y] = x;
            if self.invol[g] {
                self.fwd[g][y] = x;
                self.bwd[g][x] = y;
            }
            self.run();
            self.fwd[g][x] = UNSET;
            self.bwd[g][y] = UNSET;
            if self.invol[g] {
                self.fwd[g][y] = UNSET;
                self.bwd[g][x] = UNSET;
            }
            if fresh {
                self.used -= 1;
            }
        }
    }
}

/// Table relabeled breadth-first starting from point `s`.
fn standardized(table: &[Vec<usize>], s: usize) -> Vec<Vec<usize>> {
    let n = table[0].len();
    let mut num = vec![UNSET; n];
    let mut order = vec![s];
    num[s] = 0;
    let mut k = 0;
    while k < order.len() {
        for row in table {
            let y = row[order[k]];
            if num[y] == UNSET {
                num[y] = order.len();
                order.push(y);
            }
        }
        k += 1;
    }
    table.iter().map(|row| order.iter().map(|&x| num[row[x]]).collect()).collect()
}

fn flat_key(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table[0].len();
    (0..n).flat_map(|x| table.iter().map(move |row| row[x])).collect()
}

/// The stabilizer of point 0 under the action sending generator `i` to the
/// permutation `table[i]` of `0..n`, or `None` when those images do not
/// extend to a transitive action of the group.
pub fn action_subgroup(group: &PermutationGroup, table: &[Vec<usize>]) -> Option<SubgroupHandle> {
    let gens = group.generators();
    let n = table.first().map_or(0, |r| r.len());
    if table.len() != gens.len() || n == 0 {
        return None;
    }
    let images: Vec<Permutation> = table.iter().map(|row| Permutation::from_images(row.clone())).collect::<Result<_, _>>().ok()?;
    let degree = group.degree();
    // generator images extend to a homomorphism iff the diagonal
    // group is no larger than the group itself
    let diag: Vec<Permutation> = gens.iter().zip(&images).map(|(g, p)| g.direct_sum(p)).collect();
    let chain = StabChain::with_base(degree + n, &diag, &[degree]);
    if chain.order() != group.order() || chain.orbit_of_base(0).len() != n {
        return None;
    }
    let hgens: Vec<Permutation> = chain.stabilizer_generators(1).iter().map(|h| h.restricted(degree)).collect();
    let hchain = StabChain::new(degree, &hgens);
    Some(SubgroupHandle { order: hchain.order(), generators: hgens, index: n, coset_table: table.to_vec(), chain: hchain })
}

/// One subgroup of index `n` per conjugacy class, sorted by coset table.
pub fn subgroups_of_index(group: &PermutationGroup, n: usize) -> Result<Vec<SubgroupHandle>, GroupError> {
    let order = group.order();
    if order > ELEMENT_LIMIT {
        return Err(GroupError::GroupTooLarge { order, limit: ELEMENT_LIMIT });
    }
    if n == 0 || order % n as u128 != 0 {
        return Err(GroupError::IndexDoesNotDivide { index: n, order });
    }
    let gens = group.generators();
    if gens.is_empty() {
        return if n == 1 { Ok(vec![subgroup_from_generators(group, &[])?]) } else { Ok(vec![]) };
    }
    let mut leaves = Vec::new();
    let mut s = Search {
        n,
        invol: gens.iter().map(|g| g.is_involution()).collect(),
        fwd: vec![vec![UNSET; n]; gens.len()],
        bwd: vec![vec![UNSET; n]; gens.len()],
        used: 1,
        leaves: &mut leaves,
    };
    s.run();
    let mut found: Vec<(Vec<usize>, SubgroupHandle)> = leaves
        .par_iter()
        .filter_map(|table| {
            // keep one table per isomorphism class of actions
            let key = flat_key(table);
            if (1..n).any(|p| flat_key(&standardized(table, p)) < key) {
                return None;
            }
            action_subgroup(group, table).map(|h| (key, h))
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|(_, h)| h).collect())
}

/// True when every conjugacy class meets `h1` and `h2` in equally many elements.
pub fn is_sunada_triple(group: &PermutationGroup, h1: &SubgroupHandle, h2: &SubgroupHandle) -> Result<bool, GroupError> {
    if h1.order() != h2.order() {
        return Ok(false);
    }
    let classes = group.class_map()?;
    let count = |h: &SubgroupHandle| -> Result<Vec<usize>, GroupError> {
        let mut c = vec![0usize; classes.classes.len()];
        for x in h.elements()? {
            let id = classes.class_of(&x).ok_or_else(|| GroupError::NotInGroup(x.to_string()))?;
            c[id] += 1;
        }
        Ok(c)
    };
    Ok(count(h1)? == count(h2)?)
}

/// Schreier coset graph: one vertex per coset, an edge coloured by generator
/// `k` (alpha, beta, gamma) between cosets it swaps. Fixed cosets carry a
/// boundary side of that colour.
pub fn coset_graph(group: &PermutationGroup, h: &SubgroupHandle) -> Result<ColoredGraph, GroupError> {
    if group.generators().len() > 3 {
        return Err(GroupError::TooManyGenerators(group.generators().len()));
    }
    let mut g = ColoredGraph::new(h.index());
    for (k, row) in h.coset_table().iter().enumerate() {
        let color = Label::from_index(k);
        for (i, &j) in row.iter().enumerate() {
            if row[j] != i {
                return Err(GroupError::NotInvolution(group.names()[k].clone()));
            }
            if i < j {
                g.add_edge(i, j, color).map_err(|e| GroupError::Graph(e.to_string()))?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gww() -> PermutationGroup {
        PermutationGroup::from_cycle_strings(7, &["(4,6)(5,7)", "(3,5)(2,4)", "(1,2)(5,6)"]).unwrap()
    }

    #[test]
    fn index_one_is_the_whole_group() {
        let g = gww();
        let subs = subgroups_of_index(&g, 1).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].order(), g.order());
    }

    #[test]
    fn symmetric_group_has_point_stabilizers() {
        let s7 = PermutationGroup::from_cycle_strings(7, &["(3,4)", "(2,3)(5,6)", "(1,2)(4,5)(6,7)"]).unwrap();
        let subs = subgroups_of_index(&s7, 7).unwrap();
        assert!(subs.iter().any(|h| h.order() == 720));
        let stab = point_stabilizer(&s7, 0).unwrap();
        assert!(subs.iter().any(|h| h.conjugates(&s7).iter().any(|c| c.same_as(&stab))));
    }

    #[test]
    fn coset_tables_are_permutations() {
        let g = gww();
        for h in subgroups_of_index(&g, 7).unwrap() {
            assert_eq!(h.order() * 7, g.order());
            for row in h.coset_table() {
                let mut r = row.clone();
                r.sort();
                assert_eq!(r, (0..7).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn two_point_group() {
        let z2 = PermutationGroup::from_cycle_strings(2, &["(1,2)"]).unwrap();
        let stab = point_stabilizer(&z2, 0).unwrap();
        assert_eq!(stab.index(), 2);
        let cg = coset_graph(&z2, &stab).unwrap();
        assert_eq!(cg.n_vertices(), 2);
        assert_eq!(cg.edges().len(), 1);
        assert_eq!(cg.edges()[0].color, Label::Alpha);
        let whole = subgroup_from_generators(&z2, z2.generators()).unwrap();
        let cg = coset_graph(&z2, &whole).unwrap();
        assert_eq!((cg.n_vertices(), cg.n_edges()), (1, 0));
    }

    #[test]
    fn sunada_is_reflexive_and_holds_for_conjugates() {
        let g = gww();
        let h = point_stabilizer(&g, 0).unwrap();
        assert!(is_sunada_triple(&g, &h, &h).unwrap());
        for c in h.conjugates(&g) {
            assert!(is_sunada_triple(&g, &h, &c).unwrap());
            assert!(is_sunada_triple(&g, &c, &h).unwrap());
        }
    }

    #[test]
    fn partner_propeller_is_a_coset_action() {
        let g = gww();
        let table = |walk: &str| -> Vec<Vec<usize>> {
            let graph = crate::graph::parse_walk(walk, Some(7)).unwrap();
            Label::ALL
                .iter()
                .map(|&l| (0..7).map(|v| graph.neighbor(v, l).unwrap_or(v)).collect())
                .collect()
        };
        let own = action_subgroup(&g, &table("1-c-2-b-4-a-6-c-5<(b-3|a-7)")).unwrap();
        assert!(own.same_as(&point_stabilizer(&g, 0).unwrap()));
        let partner = action_subgroup(&g, &table("7-a-3-b-5-c-6-a-2<(c-1|b-4)")).unwrap();
        assert_eq!(partner.order(), 24);
        assert!(is_sunada_triple(&g, &own, &partner).unwrap());
        assert!(!own.conjugates(&g).iter().any(|c| c.same_as(&partner)));
        // a path of seven copies is not an action of this group
        assert!(action_subgroup(&g, &table("1-a-2-b-3-c-4-a-5-b-6-c-7")).is_none());
    }

    #[test]
    fn membership_outside_group_is_rejected() {
        let g = gww();
        let t = Permutation::parse_cycles(7, "(1,2)").unwrap();
        assert!(matches!(subgroup_from_generators(&g, &[t]), Err(GroupError::NotInGroup(_))));
    }
}
