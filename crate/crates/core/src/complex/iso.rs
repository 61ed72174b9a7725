//! Isomorphism of complexes, two ways.
//!
//! `canonical_key` runs individualization-refinement over the vertex/facet incidence
//! structure and keeps the lexicographically least relabeled facet list, pruning sibling
//! branches with automorphisms discovered at the leaves. `are_isomorphic` is a plain
//! backtracking bijection search and shares no code with the former, so the two can be
//! checked against each other.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Complex, Simplex, VertexId};

/// Relabeling-invariant fingerprint of a complex. Ordered first by vertex count, then by
/// the sorted canonical facet list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    pub num_vertices: usize,
    pub facets: Vec<Vec<u32>>,
}

impl CanonicalKey {
    /// Rebuilds a complex on vertices `0..num_vertices` with the canonical facets.
    pub fn to_complex(&self) -> Complex {
        Complex::from_simplices(self.facets.iter().map(|f| Simplex::from_sorted(f.clone())))
    }
}

struct Incidence {
    facets: Vec<Vec<usize>>,
    by_vertex: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(k: &Complex) -> Self {
        let index: HashMap<VertexId, usize> = k.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let facets: Vec<Vec<usize>> =
            k.facets().iter().map(|s| s.vertices().iter().map(|v| index[v]).collect()).collect();
        let mut by_vertex = vec![Vec::new(); k.num_vertices()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f {
                by_vertex[v].push(fi);
            }
        }
        Incidence { facets, by_vertex }
    }

    fn n(&self) -> usize {
        self.by_vertex.len()
    }

    /// Refines `colors` until the number of cells stops growing. New colors are ranks of
    /// label-free signatures, so the result commutes with relabeling.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut cells = count_cells(&colors);
        loop {
            let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..self.n())
                .map(|v| {
                    let mut around: Vec<Vec<u32>> = self.by_vertex[v]
                        .iter()
                        .map(|&fi| {
                            let mut c: Vec<u32> =
                                self.facets[fi].iter().filter(|&&u| u != v).map(|&u| colors[u]).collect();
                            c.sort_unstable();
                            c
                        })
                        .collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<Vec<u32>>)> = sigs.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            let rank: BTreeMap<&(u32, Vec<Vec<u32>>), u32> =
                distinct.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            colors = sigs.iter().map(|s| rank[s]).collect();
            if distinct.len() == cells {
                return colors;
            }
            cells = distinct.len();
        }
    }

    fn encode(&self, labels: &[u32]) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| labels[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn count_cells(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

struct Search<'a> {
    inc: &'a Incidence,
    best: Option<(Vec<Vec<u32>>, Vec<u32>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        let colors = self.inc.refine(colors);
        let n = self.inc.n();
        if count_cells(&colors) == n {
            self.leaf(colors);
            return;
        }
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *sizes.entry(c).or_insert(0) += 1;
        }
        let target = *sizes.iter().find(|(_, &s)| s > 1).unwrap().0;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, path) {
                continue;
            }
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
                .collect();
            path.push(v);
            self.visit(split, path);
            path.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, labels: Vec<u32>) {
        let enc = self.inc.encode(&labels);
        match &self.best {
            None => self.best = Some((enc, labels)),
            Some((best, _)) if enc < *best => self.best = Some((enc, labels)),
            Some((best, best_labels)) if enc == *best => {
                let mut inverse = vec![0usize; labels.len()];
                for (v, &l) in best_labels.iter().enumerate() {
                    inverse[l as usize] = v;
                }
                let gamma: Vec<usize> = labels.iter().map(|&l| inverse[l as usize]).collect();
                if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                    self.automorphisms.push(gamma);
                }
            }
            Some(_) => {}
        }
    }

    /// Is `v` in the orbit of an explored sibling under the automorphisms found so far
    /// that fix the current path pointwise?
    fn equivalent_to_explored(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.inc.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in self.automorphisms.iter().filter(|g| path.iter().all(|&p| g[p] == p)) {
            for (x, &y) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }
}

pub(super) fn canonical_key(k: &Complex) -> CanonicalKey {
    let inc = Incidence::new(k);
    if inc.n() == 0 {
        return CanonicalKey { num_vertices: 0, facets: Vec::new() };
    }
    let mut search = Search { inc: &inc, best: None, automorphisms: Vec::new() };
    search.visit(vec![0; inc.n()], &mut Vec::new());
    let (facets, _) = search.best.expect("search reaches at least one leaf");
    CanonicalKey { num_vertices: inc.n(), facets }
}

pub(super) fn are_isomorphic(a: &Complex, b: &Complex) -> bool {
    if a.num_vertices() != b.num_vertices() || a.facets().len() != b.facets().len() || a.f_vector() != b.f_vector() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let inv_a = a.vertex_face_counts();
    let inv_b = b.vertex_face_counts();
    let mut sa: Vec<&Vec<u64>> = inv_a.values().collect();
    let mut sb: Vec<&Vec<u64>> = inv_b.values().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }

    let adj_a = a.neighbors();
    let adj_b = b.neighbors();

    // Visit a's vertices breadth-first from a rarest-invariant vertex so each new vertex
    // tends to have mapped neighbours.
    let mut freq: HashMap<&Vec<u64>, usize> = HashMap::new();
    for inv in inv_a.values() {
        *freq.entry(inv).or_insert(0) += 1;
    }
    let mut order: Vec<VertexId> = Vec::with_capacity(a.num_vertices());
    let mut seen: HashSet<VertexId> = HashSet::new();
    let mut remaining: Vec<VertexId> = a.vertices().to_vec();
    remaining.sort_by_key(|v| (freq[&inv_a[v]], *v));
    for &start in &remaining {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj_a[&v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    let position: HashMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Facets of `a` grouped by the position at which their last vertex gets mapped.
    let mut closing: Vec<Vec<&Simplex>> = vec![Vec::new(); order.len()];
    for f in a.facets() {
        let last = f.vertices().iter().map(|v| position[v]).max().unwrap();
        closing[last].push(f);
    }
    let facets_b: HashSet<&Simplex> = b.facets().iter().collect();

    struct State<'a> {
        order: &'a [VertexId],
        inv_a: &'a BTreeMap<VertexId, Vec<u64>>,
        inv_b: &'a BTreeMap<VertexId, Vec<u64>>,
        adj_a: &'a BTreeMap<VertexId, std::collections::BTreeSet<VertexId>>,
        adj_b: &'a BTreeMap<VertexId, std::collections::BTreeSet<VertexId>>,
        closing: &'a [Vec<&'a Simplex>],
        facets_b: &'a HashSet<&'a Simplex>,
        candidates: Vec<VertexId>,
        map: HashMap<VertexId, VertexId>,
        used: HashSet<VertexId>,
    }

    fn extend(st: &mut State<'_>, depth: usize) -> bool {
        if depth == st.order.len() {
            return true;
        }
        let x = st.order[depth];
        for ci in 0..st.candidates.len() {
            let y = st.candidates[ci];
            if st.used.contains(&y) || st.inv_a[&x] != st.inv_b[&y] {
                continue;
            }
            let consistent = st.order[..depth].iter().all(|xp| {
                let yp = st.map[xp];
                st.adj_a[&x].contains(xp) == st.adj_b[&y].contains(&yp)
            });
            if !consistent {
                continue;
            }
            st.map.insert(x, y);
            st.used.insert(y);
            let facets_ok = st.closing[depth].iter().all(|f| {
                let image = Simplex::new(f.vertices().iter().map(|v| st.map[v])).unwrap();
                st.facets_b.contains(&image)
            });
            if facets_ok && extend(st, depth + 1) {
                return true;
            }
            st.map.remove(&x);
            st.used.remove(&y);
        }
        false
    }

    let mut st = State {
        order: &order,
        inv_a: &inv_a,
        inv_b: &inv_b,
        adj_a: &adj_a,
        adj_b: &adj_b,
        closing: &closing,
        facets_b: &facets_b,
        candidates: b.vertices().to_vec(),
        map: HashMap::new(),
        used: HashSet::new(),
    };
    extend(&mut st, 0)
}

#[cfg(test)]
mod tests {
    use super::super::Complex;

    fn cycle(n: u32) -> Complex {
        Complex::from_facets((0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
    }

    #[test]
    fn permuted_cycle_is_isomorphic() {
        let perm = [3u32, 0, 4, 1, 2];
        let c5 = cycle(5);
        let p = c5.relabel(|v| perm[v as usize] + 10);
        assert!(c5.is_isomorphic(&p));
        assert_eq!(c5.canonical_key(), p.canonical_key());
    }

    #[test]
    fn different_cycles_differ() {
        assert!(!cycle(4).is_isomorphic(&cycle(5)));
        assert_ne!(cycle(4).canonical_key(), cycle(5).canonical_key());
    }

    #[test]
    fn link_in_join_is_suspension() {
        let c4c4 = cycle(4).join(&cycle(4));
        let s0 = Complex::from_facets([[0u32], [1]]).unwrap();
        let expected = s0.join(&cycle(4));
        let lk = c4c4.link(0).unwrap();
        assert!(lk.is_isomorphic(&expected));
        assert_eq!(lk.canonical_key(), expected.canonical_key());
    }

    #[test]
    fn same_fvector_not_isomorphic() {
        // a hexagon vs two triangles: same f-vector and degrees
        let hex = cycle(6);
        let two = Complex::from_facets([[0u32, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert!(!hex.is_isomorphic(&two));
        assert_ne!(hex.canonical_key(), two.canonical_key());
    }

    #[test]
    fn key_rebuilds_an_isomorphic_complex() {
        let k = cycle(4).join(&cycle(5));
        assert!(k.canonical_key().to_complex().is_isomorphic(&k));
    }

    #[test]
    fn highly_symmetric_cross_polytope() {
        // (S^0)^{*5}: automorphism group of order 3840
        let s0 = Complex::from_facets([[0u32], [1]]).unwrap();
        let mut k = s0.clone();
        for _ in 0..4 {
            k = k.join(&s0);
        }
        let shuffled = k.relabel(|v| (v * 7 + 3) % 10);
        assert_eq!(k.canonical_key(), shuffled.canonical_key());
        assert!(k.is_isomorphic(&shuffled));
    }

    #[test]
    fn empty_and_points() {
        assert_eq!(Complex::empty().canonical_key().num_vertices, 0);
        assert!(Complex::empty().is_isomorphic(&Complex::empty()));
        let p = Complex::from_facets([[5u32]]).unwrap();
        let q = Complex::from_facets([[9u32]]).unwrap();
        assert!(p.is_isomorphic(&q));
        assert_eq!(p.canonical_key(), q.canonical_key());
    }
}
