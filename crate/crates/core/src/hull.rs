//! Facet structure of a pointed cone in `E^3` or `E^4`.
//!
//! The cone's generators are projected gnomonically onto the tangent
//! hyperplane at an interior direction of the dual cone, where the cone hull
//! becomes an ordinary 2D or 3D convex hull.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{self, dot};

#[derive(Clone, Debug)]
pub(crate) struct Facet {
    pub verts: Vec<usize>,
    /// Inward unit normal: `<normal, v> >= 0` for every generator.
    pub normal: Vec<f64>,
}

#[derive(Clone, Debug)]
pub(crate) struct ConeHull {
    /// Generator indices on the hull, ascending.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
    /// Undirected hull edges `(a, b)` with `a < b`. For cones in `E^3` these
    /// coincide with the facets.
    pub edges: Vec<[usize; 2]>,
}

/// Hull of the cone over `points` (rows of length 3 or 4), given a direction
/// `axis` with `<axis, p> > 0` for every point.
pub(crate) fn cone_hull(points: &[Vec<f64>], axis: &[f64]) -> Result<ConeHull> {
    let dim = axis.len();
    let basis = linalg::orthonormal_complement(&[axis], dim);
    let projected: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            let h = dot(p, axis);
            basis.iter().map(|b| dot(p, b) / h).collect()
        })
        .collect();
    let centroid = {
        let mut c = vec![0.0; dim];
        for p in points {
            for i in 0..dim {
                c[i] += p[i];
            }
        }
        c
    };
    let faces: Vec<Vec<usize>> = match dim {
        3 => hull_2d(&projected)?
            .windows(2)
            .map(|w| vec![w[0], w[1]])
            .collect(),
        4 => hull_3d(&projected)?
            .into_iter()
            .map(|f| f.to_vec())
            .collect(),
        _ => return Err(Error::InvalidParameter(format!("cone hull in E^{dim}"))),
    };

    let mut facets = Vec::with_capacity(faces.len());
    let mut vertex_set = HashSet::new();
    let mut edge_set = HashSet::new();
    for verts in faces {
        let rows: Vec<&[f64]> = verts.iter().map(|&i| points[i].as_slice()).collect();
        let Some(mut normal) = linalg::hyperplane_normal(&rows, dim) else {
            continue;
        };
        if dot(&normal, &centroid) < 0.0 {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        for (k, &a) in verts.iter().enumerate() {
            vertex_set.insert(a);
            let b = verts[(k + 1) % verts.len()];
            if a != b {
                edge_set.insert([a.min(b), a.max(b)]);
            }
        }
        facets.push(Facet { verts, normal });
    }
    let mut vertices: Vec<usize> = vertex_set.into_iter().collect();
    vertices.sort_unstable();
    let mut edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
    edges.sort_unstable();
    Ok(ConeHull {
        vertices,
        facets,
        edges,
    })
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; returns a closed counter-clockwise cycle
/// (first index repeated at the end) without collinear points.
fn hull_2d(p: &[Vec<f64>]) -> Result<Vec<usize>> {
    let mut idx: Vec<usize> = (0..p.len()).collect();
    idx.sort_by(|&a, &b| {
        p[a][0]
            .total_cmp(&p[b][0])
            .then(p[a][1].total_cmp(&p[b][1]))
    });
    let scale = p
        .iter()
        .flat_map(|q| q.iter().map(|x| x.abs()))
        .fold(1.0_f64, f64::max);
    let eps = 1e-14 * scale * scale;
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross2(
                &p[lower[lower.len() - 2]],
                &p[lower[lower.len() - 1]],
                &p[i],
            ) <= eps
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross2(
                &p[upper[upper.len() - 2]],
                &p[upper[upper.len() - 1]],
                &p[i],
            ) <= eps
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::NotFullDimensional);
    }
    let first = lower[0];
    lower.push(first);
    Ok(lower)
}

fn sub3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: &[f64]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

struct Face {
    v: [usize; 3],
    n: [f64; 3],
    off: f64,
    alive: bool,
}

fn make_face(p: &[Vec<f64>], v: [usize; 3]) -> Face {
    let n = cross3(sub3(&p[v[1]], &p[v[0]]), sub3(&p[v[2]], &p[v[0]]));
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt().max(1e-300);
    let n = [n[0] / len, n[1] / len, n[2] / len];
    Face {
        v,
        n,
        off: dot3(n, &p[v[0]]),
        alive: true,
    }
}

/// Incremental 3D hull; returns outward-oriented triangles.
fn hull_3d(p: &[Vec<f64>]) -> Result<Vec<[usize; 3]>> {
    let n = p.len();
    if n < 4 {
        return Err(Error::NotFullDimensional);
    }
    let scale = p
        .iter()
        .flat_map(|q| q.iter().map(|x| x.abs()))
        .fold(1.0_f64, f64::max);
    let eps = 1e-12 * scale;

    // initial tetrahedron from well-spread points
    let i0 = (0..n).min_by(|&a, &b| p[a][0].total_cmp(&p[b][0])).unwrap();
    let d2 = |a: usize, b: usize| {
        let d = sub3(&p[a], &p[b]);
        d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
    };
    let i1 = (0..n)
        .max_by(|&a, &b| d2(a, i0).total_cmp(&d2(b, i0)))
        .unwrap();
    let line = sub3(&p[i1], &p[i0]);
    let area = |k: usize| {
        let c = cross3(line, sub3(&p[k], &p[i0]));
        c[0] * c[0] + c[1] * c[1] + c[2] * c[2]
    };
    let i2 = (0..n).max_by(|&a, &b| area(a).total_cmp(&area(b))).unwrap();
    let plane = cross3(line, sub3(&p[i2], &p[i0]));
    let vol = |k: usize| dot3(plane, &sub3(&p[k], &p[i0])).abs();
    let i3 = (0..n).max_by(|&a, &b| vol(a).total_cmp(&vol(b))).unwrap();
    let plane_len = (dot3(plane, &plane)).sqrt();
    if plane_len < eps || vol(i3) / plane_len < eps * 10.0 {
        return Err(Error::NotFullDimensional);
    }
    let inner: Vec<f64> = (0..3)
        .map(|k| (p[i0][k] + p[i1][k] + p[i2][k] + p[i3][k]) / 4.0)
        .collect();

    let mut faces: Vec<Face> = Vec::new();
    for tri in [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]] {
        let mut f = make_face(p, tri);
        if dot3(f.n, &inner) - f.off > 0.0 {
            f = make_face(p, [tri[0], tri[2], tri[1]]);
        }
        faces.push(f);
    }

    let seeds = [i0, i1, i2, i3];
    for k in 0..n {
        if seeds.contains(&k) {
            continue;
        }
        let q = &p[k];
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && dot3(f.n, q) - f.off > eps)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for &fi in &visible {
            let v = faces[fi].v;
            for e in 0..3 {
                directed.insert((v[e], v[(e + 1) % 3]));
            }
        }
        let horizon: Vec<(usize, usize)> = directed
            .iter()
            .filter(|(a, b)| !directed.contains(&(*b, *a)))
            .copied()
            .collect();
        for &fi in &visible {
            faces[fi].alive = false;
        }
        let mut horizon = horizon;
        horizon.sort_unstable();
        for (a, b) in horizon {
            faces.push(make_face(p, [a, b, k]));
        }
        if faces.len() > 4 * faces.iter().filter(|f| f.alive).count() + 64 {
            faces.retain(|f| f.alive);
        }
    }
    Ok(faces.into_iter().filter(|f| f.alive).map(|f| f.v).collect())
}

/// Facet indices incident to each hull vertex.
pub(crate) fn incidence(hull: &ConeHull, n_points: usize) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n_points];
    for (fi, f) in hull.facets.iter().enumerate() {
        for &v in &f.verts {
            if !inc[v].contains(&fi) {
                inc[v].push(fi);
            }
        }
    }
    inc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_cones() {
        let pts = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let axis = vec![1.0 / 3f64.sqrt(); 3];
        let h = cone_hull(&pts, &axis).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 2]);
        assert_eq!(h.facets.len(), 3);
        for f in &h.facets {
            for p in &pts {
                assert!(dot(&f.normal, p) > -1e-15);
            }
        }

        let mut pts4 = Vec::new();
        for i in 0..4 {
            let mut v = vec![0.0; 4];
            v[i] = 1.0;
            pts4.push(v);
        }
        pts4.push(vec![0.5; 4]);
        let h = cone_hull(&pts4, &[0.5; 4]).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 2, 3]);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.edges.len(), 6);
    }

    #[test]
    fn interior_generator_dropped_in_plane() {
        let pts = vec![
            vec![1.0, 0.0, 0.1],
            vec![0.0, 1.0, 0.1],
            vec![-1.0, -1.0, 0.1],
            vec![0.0, 0.0, 1.0],
        ];
        let h = cone_hull(&pts, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 2]);
    }
}
