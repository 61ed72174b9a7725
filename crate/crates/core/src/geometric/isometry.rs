use std::collections::{BTreeMap, BTreeSet};

use super::EmbeddedComplex;
use crate::complex::VertexId;
use crate::exec::{self, Execution};

const ROUNDING: f64 = 1e9;

/// Bucketing key: sizes plus sorted distances rounded to 9 decimals. Equal signatures
/// are necessary, not sufficient, for isometry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarSignature {
    pub num_vertices: usize,
    pub num_facets: usize,
    pub center_distances: Vec<i64>,
    pub pairwise: Vec<i64>,
}

/// The closed star of a vertex as a point configuration with local indices; index 0 is
/// the center.
#[derive(Clone, Debug)]
pub struct StarShape {
    pub center: VertexId,
    pub labels: Vec<VertexId>,
    dist: Vec<Vec<f64>>,
    facets: BTreeSet<Vec<usize>>,
    pub signature: StarSignature,
}

#[derive(Clone, Debug)]
pub struct StarIsometryClass {
    pub representative: VertexId,
    pub members: Vec<VertexId>,
    pub signature: StarSignature,
}

pub fn star_shape(e: &EmbeddedComplex, v: VertexId) -> StarShape {
    let facets: Vec<_> = e.complex().cofacets_of_vertex(v).collect();
    let mut labels = vec![v];
    labels.extend(facets.iter().flat_map(|s| s.vertices().iter().copied()).collect::<BTreeSet<_>>().into_iter().filter(|&w| w != v));
    let index: BTreeMap<VertexId, usize> = labels.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let dist: Vec<Vec<f64>> =
        labels.iter().map(|&a| labels.iter().map(|&b| super::dist(e.coords(a), e.coords(b))).collect()).collect();
    let local: BTreeSet<Vec<usize>> = facets
        .iter()
        .map(|s| {
            let mut f: Vec<usize> = s.vertices().iter().map(|w| index[w]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    let round = |d: f64| (d * ROUNDING).round() as i64;
    let mut center_distances: Vec<i64> = dist[0][1..].iter().map(|&d| round(d)).collect();
    center_distances.sort_unstable();
    let mut pairwise: Vec<i64> =
        (1..labels.len()).flat_map(|i| (i + 1..labels.len()).map(move |j| (i, j))).map(|(i, j)| round(dist[i][j])).collect();
    pairwise.sort_unstable();
    let signature = StarSignature { num_vertices: labels.len(), num_facets: local.len(), center_distances, pairwise };
    StarShape { center: v, labels, dist, facets: local, signature }
}

/// Searches for a vertex bijection fixing the centers, preserving all pairwise distances
/// within `tol`, and mapping facets onto facets.
pub fn stars_isometric(a: &StarShape, b: &StarShape, tol: f64) -> bool {
    if a.labels.len() != b.labels.len() || a.facets.len() != b.facets.len() {
        return false;
    }
    let k = a.labels.len();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    image[0] = 0;
    used[0] = true;
    extend(a, b, tol, 1, &mut image, &mut used)
}

fn extend(a: &StarShape, b: &StarShape, tol: f64, i: usize, image: &mut [usize], used: &mut [bool]) -> bool {
    let k = image.len();
    if i == k {
        return a.facets.iter().all(|f| {
            let mut g: Vec<usize> = f.iter().map(|&x| image[x]).collect();
            g.sort_unstable();
            b.facets.contains(&g)
        });
    }
    for cand in 1..k {
        if used[cand] || (0..i).any(|j| (a.dist[i][j] - b.dist[cand][image[j]]).abs() > tol) {
            continue;
        }
        image[i] = cand;
        used[cand] = true;
        if extend(a, b, tol, i + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    image[i] = usize::MAX;
    false
}

/// Partition of `shapes` into isometry classes: returns a class index per shape, with
/// classes numbered in order of first occurrence.
pub(crate) fn classify(shapes: &[StarShape], tol: f64) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    let mut buckets: BTreeMap<&StarSignature, Vec<usize>> = BTreeMap::new();
    let mut out = Vec::with_capacity(shapes.len());
    for (i, s) in shapes.iter().enumerate() {
        let bucket = buckets.entry(&s.signature).or_default();
        let found = bucket.iter().copied().find(|&c| stars_isometric(&shapes[reps[c]], s, tol));
        let class = found.unwrap_or_else(|| {
            reps.push(i);
            bucket.push(reps.len() - 1);
            reps.len() - 1
        });
        out.push(class);
    }
    out
}

pub fn star_isometry_classes(e: &EmbeddedComplex, tol: f64) -> Vec<StarIsometryClass> {
    star_isometry_classes_with(e, tol, Execution::default())
}

pub fn star_isometry_classes_with(e: &EmbeddedComplex, tol: f64, mode: Execution) -> Vec<StarIsometryClass> {
    let shapes = exec::map(mode, e.complex().vertices(), |&v| star_shape(e, v));
    let class_of = classify(&shapes, tol);
    let mut classes: Vec<StarIsometryClass> = Vec::new();
    for (shape, &c) in shapes.iter().zip(&class_of) {
        if c == classes.len() {
            classes.push(StarIsometryClass {
                representative: shape.center,
                members: Vec::new(),
                signature: shape.signature.clone(),
            });
        }
        classes[c].members.push(shape.center);
    }
    classes
}
