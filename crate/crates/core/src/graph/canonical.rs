//! Canonical forms and isomorphism for properly edge-coloured graphs.
//!
//! In a proper colouring an isomorphism is pinned down by the image of one
//! vertex per component, so trying every root is exhaustive and cheap.

use super::colored::ColoredGraph;
use super::GraphError;
use crate::label::LabelMap;

/// Largest graph accepted by [`canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 12;

/// Breadth-first numbering from `root`, visiting neighbours in colour order.
fn bfs_order(g: &ColoredGraph, root: usize) -> Vec<usize> {
    let mut order = vec![root];
    let mut num = vec![usize::MAX; g.n_vertices()];
    num[root] = 0;
    let mut k = 0;
    while k < order.len() {
        for w in g.raw(order[k]).iter().flatten() {
            let w = *w as usize;
            if num[w] == usize::MAX {
                num[w] = order.len();
                order.push(w);
            }
        }
        k += 1;
    }
    order
}

fn rooted_code(g: &ColoredGraph, root: usize) -> Vec<u8> {
    let order = bfs_order(g, root);
    let mut num = vec![0u8; g.n_vertices()];
    for (i, &v) in order.iter().enumerate() {
        num[v] = i as u8 + 1;
    }
    let mut code = Vec::with_capacity(order.len() * 3);
    for &v in &order {
        for x in g.raw(v) {
            code.push(x.map_or(0, |w| num[w as usize]));
        }
    }
    code
}

fn component_code(g: &ColoredGraph, comp: &[usize]) -> Vec<u8> {
    comp.iter().map(|&r| rooted_code(g, r)).min().unwrap_or_default()
}

/// Byte string equal for two graphs exactly when they are colour-isomorphic.
pub fn canonical_form(g: &ColoredGraph) -> Result<Vec<u8>, GraphError> {
    let n = g.n_vertices();
    if n > MAX_CANONICAL_VERTICES {
        return Err(GraphError::GraphTooLarge(n));
    }
    let mut codes: Vec<Vec<u8>> = g.components().iter().map(|c| component_code(g, c)).collect();
    codes.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut out = vec![n as u8];
    for c in codes {
        out.push((c.len() / 3) as u8);
        out.extend(c);
    }
    Ok(out)
}

/// Canonical form up to the given colour permutations (e.g. the symmetries
/// of the tile), together with the permutation that attains it.
pub fn canonical_form_modulo(g: &ColoredGraph, maps: &[LabelMap]) -> Result<(Vec<u8>, LabelMap), GraphError> {
    let mut best: Option<(Vec<u8>, LabelMap)> = None;
    for m in maps.iter().chain(std::iter::once(&LabelMap::IDENTITY)) {
        let code = canonical_form(&g.recolored(m))?;
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            best = Some((code, *m));
        }
    }
    Ok(best.expect("at least the identity"))
}

/// Tries to extend `map` from `v -> u` over the component of `v`.
fn extend(g1: &ColoredGraph, g2: &ColoredGraph, v: usize, u: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let mut trial: Vec<(usize, usize)> = vec![(v, u)];
    let mut local = map.to_vec();
    let mut local_used = used.to_vec();
    if local_used[u] {
        return false;
    }
    local[v] = u;
    local_used[u] = true;
    let mut k = 0;
    while k < trial.len() {
        let (a, b) = trial[k];
        let (ra, rb) = (g1.raw(a), g2.raw(b));
        for c in 0..3 {
            match (ra[c], rb[c]) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    let (x, y) = (x as usize, y as usize);
                    if local[x] == usize::MAX {
                        if local_used[y] {
                            return false;
                        }
                        local[x] = y;
                        local_used[y] = true;
                        trial.push((x, y));
                    } else if local[x] != y {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        k += 1;
    }
    map.copy_from_slice(&local);
    used.copy_from_slice(&local_used);
    true
}

/// A colour-preserving bijection `v -> result[v]` from `g1` to `g2`, if any.
pub fn colored_isomorphic(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<Vec<usize>> {
    let n = g1.n_vertices();
    if n != g2.n_vertices() || g1.n_edges() != g2.n_edges() || g1.color_counts() != g2.color_counts() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for v in 0..n {
        if map[v] != usize::MAX {
            continue;
        }
        // isomorphic components are interchangeable, so the first fit is safe
        if !(0..n).any(|u| !used[u] && extend(g1, g2, v, u, &mut map, &mut used)) {
            return None;
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label::{self, *};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(colors: &[Label]) -> ColoredGraph {
        let e: Vec<_> = colors.iter().enumerate().map(|(i, &c)| (i, i + 1, c)).collect();
        ColoredGraph::from_edges(colors.len() + 1, &e).unwrap()
    }

    #[test]
    fn different_colours_are_not_isomorphic() {
        let a = path(&[Alpha]);
        let b = path(&[Beta]);
        assert!(colored_isomorphic(&a, &b).is_none());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let maps = LabelMap::all();
        assert_eq!(canonical_form_modulo(&a, &maps).unwrap().0, canonical_form_modulo(&b, &maps).unwrap().0);
    }

    #[test]
    fn random_relabelings_keep_the_form() {
        let g = ColoredGraph::from_edges(
            7,
            &[(0, 1, Gamma), (1, 3, Beta), (3, 5, Alpha), (5, 4, Gamma), (4, 2, Beta), (4, 6, Alpha)],
        )
        .unwrap();
        let key = canonical_form(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..7).collect();
            perm.shuffle(&mut rng);
            let h = g.relabeled(&perm);
            assert_eq!(canonical_form(&h).unwrap(), key);
            let m = colored_isomorphic(&g, &h).unwrap();
            assert_eq!(m, perm);
        }
    }

    #[test]
    fn isomorphism_matches_brute_force() {
        // all bijections on 5 vertices against the root-based search
        let g1 = ColoredGraph::from_edges(5, &[(0, 1, Alpha), (1, 2, Beta), (2, 3, Alpha), (3, 4, Gamma)]).unwrap();
        let g2 = ColoredGraph::from_edges(5, &[(0, 1, Alpha), (1, 2, Beta), (2, 3, Gamma), (3, 4, Alpha)]).unwrap();
        let g3 = g1.relabeled(&[4, 2, 0, 1, 3]);
        for (a, b) in [(&g1, &g2), (&g1, &g3), (&g2, &g3)] {
            let brute = permutations(5).into_iter().any(|p| a.relabeled(&p) == *b);
            assert_eq!(brute, colored_isomorphic(a, b).is_some());
            assert_eq!(brute, canonical_form(a).unwrap() == canonical_form(b).unwrap());
        }
    }

    #[test]
    fn disconnected_graphs() {
        let a = ColoredGraph::from_edges(4, &[(0, 1, Alpha), (2, 3, Beta)]).unwrap();
        let b = ColoredGraph::from_edges(4, &[(0, 3, Beta), (1, 2, Alpha)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(colored_isomorphic(&a, &b).is_some());
        assert!(matches!(canonical_form(&ColoredGraph::new(13)), Err(GraphError::GraphTooLarge(13))));
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
}
