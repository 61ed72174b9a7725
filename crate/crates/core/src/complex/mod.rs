//! Finite abstract simplicial complexes.
//!
//! A [`Complex`] is stored by its facets; the full face lattice is materialized on first
//! use behind a `OnceLock`, so a complex can be shared freely between threads.

mod iso;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use iso::CanonicalKey;

pub type VertexId = u32;

/// A simplex as a strictly increasing list of vertex labels. The empty simplex
/// (dimension -1) is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts `vertices`; fails on repeated labels.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { index: 0, vertex: w[0] });
        }
        Ok(Simplex(vs))
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub(crate) fn from_sorted(vs: Vec<VertexId>) -> Self {
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        Simplex(vs)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn without(&self, v: VertexId) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: VertexId) -> Simplex {
        let mut vs = self.0.clone();
        if let Err(pos) = vs.binary_search(&v) {
            vs.insert(pos, v);
        }
        Simplex(vs)
    }

    /// Set union of the vertex lists.
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut vs: Vec<VertexId> = self.0.iter().chain(&other.0).copied().collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex(vs)
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.0.len();
        assert!(k < 32, "simplex too large to enumerate faces");
        (1u32..(1u32 << k)).map(move |mask| {
            Simplex((0..k).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }

    /// Codimension-one faces (empty for the empty simplex).
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().map(move |&v| self.without(v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `f_{-1}, f_0, ..., f_d`, with `f_{-1} = 1` and zero outside the stored range.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert_eq!(counts.first(), Some(&1), "f_{{-1}} must be 1");
        FVector(counts)
    }

    /// `f_i`; zero for `i < -1` or beyond the dimension.
    pub fn get(&self, i: i32) -> u64 {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// The raw sequence starting at `f_{-1}`.
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 2
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
struct FaceLattice {
    /// `by_dim[i + 1]` holds the `i`-faces, sorted; `by_dim[0] == [∅]`.
    by_dim: Vec<Vec<Simplex>>,
    index: HashSet<Simplex>,
}

/// A finite abstract simplicial complex, defined by its inclusion-maximal faces.
#[derive(Clone)]
pub struct Complex {
    vertices: Vec<VertexId>,
    facets: Vec<Simplex>,
    lattice: OnceLock<FaceLattice>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex").field("facets", &self.facets).finish()
    }
}

impl Complex {
    /// Builds the downward closure of the given vertex lists.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[VertexId]>,
    {
        let mut simplices = Vec::new();
        for (index, facet) in facets.into_iter().enumerate() {
            let facet = facet.as_ref();
            if facet.is_empty() {
                return Err(Error::EmptyFacet { index });
            }
            let s = Simplex::new(facet.iter().copied()).map_err(|e| match e {
                Error::DuplicateVertex { vertex, .. } => Error::DuplicateVertex { index, vertex },
                other => other,
            })?;
            simplices.push(s);
        }
        Ok(Self::from_simplices(simplices))
    }

    /// Keeps the inclusion-maximal nonempty simplices of `simplices`.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all: Vec<Simplex> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
        all.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<Simplex> = Vec::with_capacity(all.len());
        for s in all {
            let dominated = kept
                .iter()
                .take_while(|k| k.len() > s.len())
                .any(|k| s.is_subset_of(k));
            if !dominated {
                kept.push(s);
            }
        }
        kept.sort_unstable();
        let vertices: BTreeSet<VertexId> = kept.iter().flat_map(|s| s.0.iter().copied()).collect();
        Complex { vertices: vertices.into_iter().collect(), facets: kept, lattice: OnceLock::new() }
    }

    /// The complex `{∅}` with `f = (1)`.
    pub fn empty() -> Self {
        Complex { vertices: Vec::new(), facets: Vec::new(), lattice: OnceLock::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Sorted vertex labels.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.vertices.last().copied()
    }

    /// Sorted facets.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Facet vertex lists, handy for serialization.
    pub fn facet_lists(&self) -> Vec<Vec<VertexId>> {
        self.facets.iter().map(|s| s.0.clone()).collect()
    }

    pub fn dim(&self) -> i32 {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            let mut index: HashSet<Simplex> = HashSet::new();
            for facet in &self.facets {
                for face in facet.faces() {
                    index.insert(face);
                }
            }
            let d = self.dim();
            let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); (d + 2) as usize];
            by_dim[0].push(Simplex::empty());
            for face in &index {
                by_dim[(face.dim() + 1) as usize].push(face.clone());
            }
            for layer in &mut by_dim {
                layer.sort_unstable();
            }
            FaceLattice { by_dim, index }
        })
    }

    /// Sorted `i`-faces; `faces(-1)` is `[∅]`, out-of-range dimensions are empty.
    pub fn faces(&self, i: i32) -> &[Simplex] {
        if i < -1 {
            return &[];
        }
        self.lattice().by_dim.get((i + 1) as usize).map_or(&[], Vec::as_slice)
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        s.is_empty() || self.lattice().index.contains(s)
    }

    pub fn num_faces(&self) -> usize {
        self.lattice().index.len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.lattice().by_dim.iter().map(|l| l.len() as u64).collect())
    }

    /// `Σ_{i≥0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> Result<i64> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let f = self.f_vector();
        Ok((0..=self.dim()).map(|i| if i % 2 == 0 { 1 } else { -1 } * f.get(i) as i64).sum())
    }

    fn require_vertex(&self, v: VertexId) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Facets containing `v`, in sorted order.
    pub fn cofacets_of_vertex(&self, v: VertexId) -> impl Iterator<Item = &Simplex> {
        self.facets.iter().filter(move |s| s.contains(v))
    }

    /// `{τ : τ ∪ {v} ∈ K, v ∉ τ}`; the empty complex for an isolated vertex.
    pub fn link(&self, v: VertexId) -> Result<Complex> {
        self.require_vertex(v)?;
        Ok(Complex::from_simplices(self.cofacets_of_vertex(v).map(|s| s.without(v))))
    }

    /// Closed star: all faces of facets containing `v`.
    pub fn star(&self, v: VertexId) -> Result<Complex> {
        self.require_vertex(v)?;
        Ok(Complex::from_simplices(self.cofacets_of_vertex(v).cloned()))
    }

    /// Link of an arbitrary face.
    pub fn link_of_face(&self, face: &Simplex) -> Result<Complex> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace(face.clone()));
        }
        Ok(Complex::from_simplices(
            self.facets.iter().filter(|s| face.is_subset_of(s)).map(|s| s.difference(face)),
        ))
    }

    /// Relabels vertices through `map`; `map` must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(VertexId) -> VertexId) -> Complex {
        let out = Complex::from_simplices(
            self.facets.iter().map(|s| Simplex::new(s.0.iter().map(|&v| map(v))).expect("relabeling must be injective")),
        );
        assert_eq!(out.num_vertices(), self.num_vertices(), "relabeling must be injective");
        out
    }

    /// Shifts every label by `offset`.
    pub fn shifted(&self, offset: VertexId) -> Complex {
        Complex {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
            facets: self.facets.iter().map(|s| Simplex(s.0.iter().map(|v| v + offset).collect())).collect(),
            lattice: OnceLock::new(),
        }
    }

    /// Offset applied to the right operand of [`Complex::join`].
    pub fn join_offset(&self) -> VertexId {
        self.max_vertex().map_or(0, |m| m + 1)
    }

    /// `K * L`, with `L`'s labels shifted by [`Complex::join_offset`] of `K`.
    pub fn join(&self, other: &Complex) -> Complex {
        let other = other.shifted(self.join_offset());
        if self.is_empty() {
            return other;
        }
        if other.is_empty() {
            return self.clone();
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                let mut vs = a.0.clone();
                vs.extend_from_slice(&b.0);
                facets.push(Simplex(vs));
            }
        }
        Complex::from_simplices(facets)
    }

    /// Adjacency lists of the 1-skeleton.
    pub fn neighbors(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for e in self.faces(1) {
            let (a, b) = (e.0[0], e.0[1]);
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        adj
    }

    /// Every clique of the 1-skeleton spans a face. Checks maximal cliques (Bron–Kerbosch
    /// with pivoting); downward closure covers the rest.
    pub fn is_flag(&self) -> bool {
        let adj = self.neighbors();
        let mut ok = true;
        bron_kerbosch(
            &adj,
            Vec::new(),
            self.vertices.iter().copied().collect(),
            BTreeSet::new(),
            &mut |clique| {
                let s = Simplex::from_sorted({
                    let mut c = clique.to_vec();
                    c.sort_unstable();
                    c
                });
                if !self.contains_face(&s) {
                    ok = false;
                }
                ok
            },
        );
        ok
    }

    /// Pure `n`-dimensional with every `(n-1)`-face in exactly two `n`-faces.
    /// Strong connectivity is not required; see [`Complex::is_strongly_connected`].
    pub fn is_pseudomanifold(&self, n: i32) -> bool {
        if n < 1 || self.is_empty() || self.facets.iter().any(|s| s.dim() != n) {
            return false;
        }
        let mut ridges: HashMap<Simplex, u32> = HashMap::new();
        for facet in &self.facets {
            for r in facet.boundary() {
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        ridges.values().all(|&c| c == 2)
    }

    /// Facets connected through shared codimension-one faces.
    pub fn is_strongly_connected(&self) -> bool {
        if self.facets.len() <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.facets.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let n = p[c];
                p[c] = r;
                c = n;
            }
            r
        }
        let mut first_owner: HashMap<Simplex, usize> = HashMap::new();
        for (i, facet) in self.facets.iter().enumerate() {
            for r in facet.boundary() {
                match first_owner.get(&r) {
                    Some(&j) => {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                    }
                    None => {
                        first_owner.insert(r, i);
                    }
                }
            }
        }
        let root = find(&mut parent, 0);
        (1..self.facets.len()).all(|i| find(&mut parent, i) == root)
    }

    /// [`Complex::is_pseudomanifold`] plus strong connectivity.
    pub fn is_strict_pseudomanifold(&self, n: i32) -> bool {
        self.is_pseudomanifold(n) && self.is_strongly_connected()
    }

    /// Stellar subdivision at `face`: every face containing it is replaced by the cone
    /// from a new vertex over its boundary. Returns the new complex and the new label
    /// (one past the current maximum).
    pub fn stellar_subdivide(&self, face: &Simplex) -> Result<(Complex, VertexId)> {
        if face.is_empty() || !self.contains_face(face) {
            return Err(Error::NotAFace(face.clone()));
        }
        if face.dim() < 1 {
            return Err(Error::SubdivisionTooSmall(face.clone()));
        }
        let apex = self.join_offset();
        let mut out = Vec::new();
        for facet in &self.facets {
            if !face.is_subset_of(facet) {
                out.push(facet.clone());
                continue;
            }
            let rest = facet.difference(face);
            for side in face.boundary() {
                out.push(rest.union(&side).with(apex));
            }
        }
        Ok((Complex::from_simplices(out), apex))
    }

    /// Canonical form under vertex relabeling; equal keys iff isomorphic.
    pub fn canonical_key(&self) -> CanonicalKey {
        iso::canonical_key(self)
    }

    /// Direct isomorphism search, independent of [`Complex::canonical_key`].
    pub fn is_isomorphic(&self, other: &Complex) -> bool {
        iso::are_isomorphic(self, other)
    }

    /// Per-vertex counts of faces of each dimension containing it (the f-vector of the
    /// link, shifted by one).
    pub fn vertex_face_counts(&self) -> BTreeMap<VertexId, Vec<u64>> {
        let d = self.dim().max(0) as usize;
        let mut out: BTreeMap<VertexId, Vec<u64>> =
            self.vertices.iter().map(|&v| (v, vec![0; d + 1])).collect();
        for layer in self.lattice().by_dim.iter().skip(1) {
            for s in layer {
                for v in &s.0 {
                    out.get_mut(v).unwrap()[s.dim() as usize] += 1;
                }
            }
        }
        out
    }
}

fn bron_kerbosch(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    r: Vec<VertexId>,
    p: BTreeSet<VertexId>,
    x: BTreeSet<VertexId>,
    report: &mut dyn FnMut(&[VertexId]) -> bool,
) -> bool {
    if p.is_empty() && x.is_empty() {
        return report(&r);
    }
    let pivot = p.iter().chain(x.iter()).max_by_key(|u| adj[u].intersection(&p).count()).copied();
    let candidates: Vec<VertexId> = match pivot {
        Some(u) => p.difference(&adj[&u]).copied().collect(),
        None => p.iter().copied().collect(),
    };
    let (mut p, mut x) = (p, x);
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[&v]).copied().collect();
        let x2 = x.intersection(&adj[&v]).copied().collect();
        if !bron_kerbosch(adj, r2, p2, x2, report) {
            return false;
        }
        p.remove(&v);
        x.insert(v);
    }
    true
}
