//! Lattice polytopes of dimension at most three: facets, vertices, faces,
//! lattice points and open subsets obtained by removing faces.
//!
//! Hulls are computed by brute force over subsets of the support, which is
//! plenty for supports of a few dozen points. Lower-dimensional polytopes
//! carry explicit affine equations; "interior" always means relative
//! interior.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::laurent::ExponentVec;

pub const MAX_DIM: usize = 3;

/// Half-space `<normal, x> >= offset` (or an equation, for affine constraints).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn eval(&self, x: &ExponentVec) -> i64 {
        x.dot(&self.normal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<ExponentVec>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
}

impl LatticePolytope {
    /// Convex hull of a finite nonempty set of lattice points.
    pub fn hull(points: &[ExponentVec]) -> Result<Self> {
        let pts: Vec<ExponentVec> = points.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let Some(&base) = pts.first() else {
            return Err(Error::EmptySupport);
        };
        let dim = base.arity();
        if dim > MAX_DIM {
            return Err(Error::Dimension(dim, MAX_DIM));
        }
        let to_big = |v: &ExponentVec| -> Vec<BigInt> { v.to_vec().into_iter().map(BigInt::from).collect() };
        let directions: IntMatrix = pts[1..].iter().map(|p| to_big(&(*p - base))).collect();
        let affine_dim = if directions.is_empty() {
            0
        } else {
            intmat::rank(&directions)
        };

        let eq_normals: IntMatrix = if directions.is_empty() {
            intmat::kernel_basis(&Vec::new(), dim)
        } else {
            intmat::kernel_basis(&directions, dim)
        };
        let equations: Vec<Facet> = eq_normals
            .iter()
            .map(|n| {
                let normal: Vec<i64> = n.iter().map(|x| x.to_i64().unwrap()).collect();
                Facet {
                    offset: base.dot(&normal),
                    normal,
                }
            })
            .collect();

        let mut facets = BTreeSet::new();
        if affine_dim > 0 {
            for subset in combinations(pts.len(), affine_dim) {
                let anchor = pts[subset[0]];
                let mut rows: IntMatrix = subset[1..].iter().map(|&i| to_big(&(pts[i] - anchor))).collect();
                rows.extend(eq_normals.iter().cloned());
                let Some(a) = intmat::nullspace_vector(&rows, dim) else {
                    continue;
                };
                let mut normal: Vec<i64> = a.iter().map(|x| x.to_i64().unwrap()).collect();
                let c = anchor.dot(&normal);
                let vals: Vec<i64> = pts.iter().map(|p| p.dot(&normal)).collect();
                let (lo, hi) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
                if lo == hi {
                    continue;
                }
                let offset = if lo == c {
                    c
                } else if hi == c {
                    normal.iter_mut().for_each(|x| *x = -*x);
                    -c
                } else {
                    continue;
                };
                facets.insert(Facet { normal, offset });
            }
        }
        let facets: Vec<Facet> = facets.into_iter().collect();

        let vertices = pts
            .iter()
            .copied()
            .filter(|p| {
                let mut rows: IntMatrix = facets
                    .iter()
                    .filter(|f| f.eval(p) == f.offset)
                    .map(|f| f.normal.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                rows.extend(eq_normals.iter().cloned());
                !rows.is_empty() && intmat::rank(&rows) == dim
            })
            .collect();

        Ok(LatticePolytope {
            dim,
            affine_dim,
            vertices,
            facets,
            equations,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn vertices(&self) -> &[ExponentVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    pub fn is_vertex(&self, u: &ExponentVec) -> bool {
        self.vertices.contains(u)
    }

    pub fn contains(&self, x: &ExponentVec) -> bool {
        x.arity() == self.dim
            && self.equations.iter().all(|e| e.eval(x) == e.offset)
            && self.facets.iter().all(|f| f.eval(x) >= f.offset)
    }

    /// Relative interior membership.
    pub fn contains_interior(&self, x: &ExponentVec) -> bool {
        x.arity() == self.dim
            && self.equations.iter().all(|e| e.eval(x) == e.offset)
            && self.facets.iter().all(|f| f.eval(x) > f.offset)
    }

    fn scan(&self, keep: impl Fn(&ExponentVec) -> bool) -> Vec<ExponentVec> {
        let lo: Vec<i64> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v.get(i)).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v.get(i)).max().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x = ExponentVec::of(&cur);
            if keep(&x) {
                out.push(x);
            }
            // odometer increment
            let mut i = self.dim;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<ExponentVec> {
        self.scan(|x| self.contains(x))
    }

    /// Lattice points of the relative interior, in lexicographic order.
    pub fn interior_lattice_points(&self) -> Vec<ExponentVec> {
        self.scan(|x| self.contains_interior(x))
    }

    /// All nonempty faces, including the polytope itself, each given as a
    /// sorted list of vertex indices.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let tight = |f: &Facet| -> BTreeSet<usize> {
            (0..self.vertices.len())
                .filter(|&i| f.eval(&self.vertices[i]) == f.offset)
                .collect()
        };
        let mut faces: BTreeSet<BTreeSet<usize>> = self.facets.iter().map(tight).collect();
        loop {
            let current: Vec<_> = faces.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let c: BTreeSet<usize> = a.intersection(b).copied().collect();
                    if !c.is_empty() && faces.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        faces.insert((0..self.vertices.len()).collect());
        faces.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Facets containing every listed vertex; a point of the polytope lies
    /// in the face iff it is tight on all of them.
    fn supporting_facets(&self, face: &[usize]) -> Vec<&Facet> {
        self.facets
            .iter()
            .filter(|f| face.iter().all(|&i| f.eval(&self.vertices[i]) == f.offset))
            .collect()
    }

    pub fn face_contains(&self, face: &[usize], x: &ExponentVec) -> bool {
        self.contains(x) && self.supporting_facets(face).iter().all(|f| f.eval(x) == f.offset)
    }

    fn is_proper(&self, face: &[usize]) -> bool {
        !self.supporting_facets(face).is_empty()
    }
}

/// How to choose an open subset `mu` of a polytope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MuSpec {
    Named(String),
    RemoveFaces(Vec<Vec<usize>>),
    Points { points: Vec<ExponentVec> },
}

impl MuSpec {
    pub fn all() -> Self {
        MuSpec::Named("all".into())
    }

    pub fn interior() -> Self {
        MuSpec::Named("interior".into())
    }

    /// Parse the command-line form: `all`, `interior`, or faces as
    /// `0,1;2` (vertex indices, faces separated by `;`).
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "all" | "interior" => Ok(MuSpec::Named(s.trim().into())),
            other => {
                let faces = other
                    .split(';')
                    .map(|face| {
                        face.split(',')
                            .map(|i| {
                                i.trim()
                                    .parse::<usize>()
                                    .map_err(|_| Error::Invalid(format!("bad mu spec {s:?}")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MuSpec::RemoveFaces(faces))
            }
        }
    }
}

/// Open subset `mu` of a polytope (complement a union of faces) with its
/// lattice points in lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpenSubset {
    parent: LatticePolytope,
    removed_faces: Vec<Vec<usize>>,
    points: Vec<ExponentVec>,
}

impl OpenSubset {
    pub fn parent(&self) -> &LatticePolytope {
        &self.parent
    }

    pub fn removed_faces(&self) -> &[Vec<usize>] {
        &self.removed_faces
    }

    /// `mu_Z`, lexicographically ordered.
    pub fn points(&self) -> &[ExponentVec] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &ExponentVec) -> bool {
        self.points.binary_search(x).is_ok()
    }

    fn from_removed(parent: &LatticePolytope, removed: Vec<Vec<usize>>) -> Self {
        let points = parent
            .lattice_points()
            .into_iter()
            .filter(|x| !removed.iter().any(|f| parent.face_contains(f, x)))
            .collect();
        OpenSubset {
            parent: parent.clone(),
            removed_faces: removed,
            points,
        }
    }
}

/// Build the open subset described by `spec`.
pub fn open_subset(parent: &LatticePolytope, spec: &MuSpec) -> Result<OpenSubset> {
    let faces = parent.faces();
    match spec {
        MuSpec::Named(name) if name == "all" => Ok(OpenSubset::from_removed(parent, Vec::new())),
        MuSpec::Named(name) if name == "interior" => {
            let proper: Vec<Vec<usize>> = faces.into_iter().filter(|f| parent.is_proper(f)).collect();
            Ok(OpenSubset::from_removed(parent, proper))
        }
        MuSpec::Named(name) => Err(Error::Invalid(format!("unknown mu spec {name:?}"))),
        MuSpec::RemoveFaces(list) => {
            let mut removed = Vec::new();
            for f in list {
                let canon: Vec<usize> = f.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
                if !faces.contains(&canon) {
                    return Err(Error::NotOpen(format!("vertex set {f:?} is not a face")));
                }
                removed.push(canon);
            }
            Ok(OpenSubset::from_removed(parent, removed))
        }
        MuSpec::Points { points } => {
            let all = parent.lattice_points();
            let keep: BTreeSet<ExponentVec> = points.iter().copied().collect();
            if let Some(bad) = keep.iter().find(|x| !parent.contains(x)) {
                return Err(Error::NotOpen(format!("{bad} is not in the polytope")));
            }
            let complement: Vec<ExponentVec> = all.iter().filter(|x| !keep.contains(x)).copied().collect();
            let removable: Vec<Vec<usize>> = faces
                .into_iter()
                .filter(|f| {
                    all.iter()
                        .filter(|x| parent.face_contains(f, x))
                        .all(|x| !keep.contains(x))
                })
                .collect();
            for x in &complement {
                if !removable.iter().any(|f| parent.face_contains(f, x)) {
                    return Err(Error::NotOpen(format!(
                        "complement point {x} is not covered by removed faces"
                    )));
                }
            }
            let subset = OpenSubset::from_removed(parent, removable);
            debug_assert_eq!(subset.points, keep.into_iter().collect::<Vec<_>>());
            Ok(subset)
        }
    }
}

pub fn pt_lattice_points(p: &LatticePolytope) -> Vec<ExponentVec> {
    p.lattice_points()
}

pub fn pt_interior_lattice_points(p: &LatticePolytope) -> Vec<ExponentVec> {
    p.interior_lattice_points()
}

pub fn pt_vertices(p: &LatticePolytope) -> Vec<ExponentVec> {
    p.vertices().to_vec()
}

pub fn pt_is_vertex(p: &LatticePolytope, u: &ExponentVec) -> bool {
    p.is_vertex(u)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVec {
        ExponentVec::of(v)
    }

    fn pts(list: &[&[i64]]) -> Vec<ExponentVec> {
        list.iter().map(|v| ev(v)).collect()
    }

    fn triangle() -> LatticePolytope {
        LatticePolytope::hull(&pts(&[&[0, 2], &[1, 0], &[3, 0], &[2, 0], &[1, 1]])).unwrap()
    }

    #[test]
    fn segment() {
        let s = LatticePolytope::hull(&pts(&[&[-1], &[1]])).unwrap();
        assert_eq!(s.lattice_points(), pts(&[&[-1], &[0], &[1]]));
        assert_eq!(s.vertices(), pts(&[&[-1], &[1]]).as_slice());
        assert_eq!(s.interior_lattice_points(), pts(&[&[0]]));
        let unit = LatticePolytope::hull(&pts(&[&[0], &[1]])).unwrap();
        assert!(unit.interior_lattice_points().is_empty());
    }

    #[test]
    fn point_polytope() {
        let p = LatticePolytope::hull(&pts(&[&[0, 0]])).unwrap();
        assert_eq!(p.lattice_points(), pts(&[&[0, 0]]));
        assert_eq!(p.vertices(), pts(&[&[0, 0]]).as_slice());
        assert_eq!(p.affine_dim(), 0);
    }

    #[test]
    fn triangle_points_and_vertices() {
        let t = triangle();
        assert_eq!(t.vertices(), pts(&[&[0, 2], &[1, 0], &[3, 0]]).as_slice());
        // brute-force oracle: scan the bounding box against the three edges
        let oracle: Vec<ExponentVec> = (0..=3)
            .flat_map(|x| (0..=2).map(move |y| (x, y)))
            .filter(|&(x, y)| y >= 0 && 2 * x + y >= 2 && 2 * x + 3 * y <= 6)
            .map(|(x, y)| ev(&[x, y]))
            .collect();
        assert_eq!(t.lattice_points(), oracle);
        assert!(t.lattice_points().contains(&ev(&[1, 1])));
        assert_eq!(t.interior_lattice_points(), pts(&[&[1, 1]]));
    }

    #[test]
    fn square_interior() {
        let sq = LatticePolytope::hull(&pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).unwrap();
        assert_eq!(sq.interior_lattice_points(), pts(&[&[0, 0]]));
        let mu = open_subset(&sq, &MuSpec::interior()).unwrap();
        assert_eq!(mu.points(), pts(&[&[0, 0]]).as_slice());
        assert_eq!(sq.lattice_points().len(), 9);
    }

    #[test]
    fn segment_in_plane_uses_relative_interior() {
        let s = LatticePolytope::hull(&pts(&[&[0, 0], &[2, 2]])).unwrap();
        assert_eq!(s.affine_dim(), 1);
        assert_eq!(s.lattice_points(), pts(&[&[0, 0], &[1, 1], &[2, 2]]));
        assert_eq!(s.interior_lattice_points(), pts(&[&[1, 1]]));
        assert_eq!(s.vertices().len(), 2);
    }

    #[test]
    fn tetrahedron_in_space() {
        let t = LatticePolytope::hull(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.facets().len(), 4);
        assert_eq!(t.lattice_points().len(), 4);
        assert!(t.interior_lattice_points().is_empty());
        // 4 vertices + 6 edges + 4 triangles + the solid
        assert_eq!(t.faces().len(), 15);
    }

    #[test]
    fn open_subsets() {
        let s = LatticePolytope::hull(&pts(&[&[-1], &[1]])).unwrap();
        let all = open_subset(&s, &MuSpec::all()).unwrap();
        assert_eq!(all.points(), s.lattice_points().as_slice());
        let minus_left = open_subset(&s, &MuSpec::RemoveFaces(vec![vec![0]])).unwrap();
        assert_eq!(minus_left.points(), pts(&[&[0], &[1]]).as_slice());
        let by_points = open_subset(
            &s,
            &MuSpec::Points {
                points: pts(&[&[0], &[1]]),
            },
        )
        .unwrap();
        assert_eq!(by_points.points(), minus_left.points());
        // removing the middle point alone is not open
        let bad = open_subset(
            &s,
            &MuSpec::Points {
                points: pts(&[&[-1], &[1]]),
            },
        );
        assert!(matches!(bad, Err(Error::NotOpen(_))));
        // a non-face vertex set
        let t = triangle();
        assert!(matches!(
            open_subset(&t, &MuSpec::RemoveFaces(vec![vec![0, 1, 5]])),
            Err(Error::NotOpen(_))
        ));
    }

    #[test]
    fn interior_plus_faces_recovers_all_points() {
        let t = triangle();
        let int = open_subset(&t, &MuSpec::interior()).unwrap();
        let mut recovered: BTreeSet<ExponentVec> = int.points().iter().copied().collect();
        for f in int.removed_faces() {
            for x in t.lattice_points() {
                if t.face_contains(f, &x) {
                    recovered.insert(x);
                }
            }
        }
        assert_eq!(recovered.into_iter().collect::<Vec<_>>(), t.lattice_points());
    }

    #[test]
    fn mu_spec_parsing() {
        assert_eq!(MuSpec::parse("all").unwrap(), MuSpec::all());
        assert_eq!(
            MuSpec::parse("0,1;2").unwrap(),
            MuSpec::RemoveFaces(vec![vec![0, 1], vec![2]])
        );
        let j: MuSpec = serde_json::from_str("\"interior\"").unwrap();
        assert_eq!(j, MuSpec::interior());
        let j: MuSpec = serde_json::from_str("[[0],[1,2]]").unwrap();
        assert_eq!(j, MuSpec::RemoveFaces(vec![vec![0], vec![1, 2]]));
    }
}
