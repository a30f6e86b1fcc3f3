//! Exact convex hulls of small integer point sets in dimension ≤ 3.

use crate::arith::gcd_i64;
use std::collections::BTreeSet;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Rank over Q by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, piv);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][col], m[i][col]);
            if b == 0 {
                continue;
            }
            for j in col..ncols {
                m[i][j] = m[i][j] * a - m[r][j] * b;
            }
            let g = m[i].iter().fold(0i128, |g, &x| gcd128(g, x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn det(rows: &[Vec<i64>]) -> i64 {
    match rows.len() {
        0 => 1,
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let [a, b, c] = [&rows[0], &rows[1], &rows[2]];
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
        }
        _ => unreachable!("dimension capped at 3"),
    }
}

pub(crate) fn cross3(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd_i64(g, x));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// Affine dimension of a point set.
pub(crate) fn affine_dim(points: &[&Vec<i64>]) -> usize {
    match points.split_first() {
        None => 0,
        Some((base, rest)) => rank(&rest.iter().map(|p| sub(p, base)).collect::<Vec<_>>()),
    }
}

/// Facets (w, c) with ⟨w, x⟩ ≤ c of a full-dimensional hull of `points` in
/// dimension n = 1, 2, 3, normals primitive.
pub(crate) fn facets(points: &[Vec<i64>], n: usize) -> Vec<(Vec<i64>, i64)> {
    let mut out = BTreeSet::new();
    if n == 1 {
        let lo = points.iter().map(|p| p[0]).min().unwrap();
        let hi = points.iter().map(|p| p[0]).max().unwrap();
        out.insert((vec![1], hi));
        out.insert((vec![-1], -lo));
        return out.into_iter().collect();
    }
    let k = points.len();
    let mut consider = |normal: Vec<i64>, base: &Vec<i64>| {
        if normal.iter().all(|&x| x == 0) {
            return;
        }
        let w = primitive(normal);
        let c = dot(&w, base);
        let vals: Vec<i64> = points.iter().map(|p| dot(&w, p)).collect();
        if vals.iter().all(|&v| v <= c) {
            out.insert((w, c));
        } else if vals.iter().all(|&v| v >= c) {
            out.insert((w.iter().map(|x| -x).collect(), -c));
        }
    };
    for i in 0..k {
        for j in i + 1..k {
            if n == 2 {
                let d = sub(&points[j], &points[i]);
                consider(vec![-d[1], d[0]], &points[i]);
                continue;
            }
            for l in j + 1..k {
                let normal = cross3(&sub(&points[j], &points[i]), &sub(&points[l], &points[i]));
                consider(normal, &points[i]);
            }
        }
    }
    out.into_iter().collect()
}

/// Indices of the extreme points of a full-dimensional hull given its facets.
pub(crate) fn vertices_from_facets(points: &[Vec<i64>], facets: &[(Vec<i64>, i64)], n: usize) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let tight: Vec<Vec<i64>> =
                facets.iter().filter(|(w, c)| dot(w, &points[i]) == *c).map(|(w, _)| w.clone()).collect();
            rank(&tight) == n
        })
        .collect()
}

/// Extreme points of a possibly lower-dimensional hull, found by projecting
/// onto a coordinate subspace on which the linear span maps injectively.
/// The points must include the origin.
pub(crate) fn extreme_points(points: &[Vec<i64>], n: usize) -> Vec<usize> {
    let d = rank(points);
    if d == 0 {
        return (0..points.len()).filter(|&i| points[i].iter().all(|&x| x == 0)).take(1).collect();
    }
    if d == n {
        let f = facets(points, n);
        return vertices_from_facets(points, &f, n);
    }
    let mut coords: Vec<usize> = Vec::new();
    for j in 0..n {
        let mut trial = coords.clone();
        trial.push(j);
        let proj: Vec<Vec<i64>> = points.iter().map(|p| trial.iter().map(|&t| p[t]).collect()).collect();
        if rank(&proj) > coords.len() {
            coords = trial;
        }
        if coords.len() == d {
            break;
        }
    }
    let proj: Vec<Vec<i64>> = points.iter().map(|p| coords.iter().map(|&t| p[t]).collect()).collect();
    let f = facets(&proj, d);
    vertices_from_facets(&proj, &f, d)
}

/// The vertices of a convex polygon lying in a plane with normal `w`, in
/// cyclic order.
pub(crate) fn cyclic_order(verts: &[Vec<i64>], w: &[i64]) -> Vec<Vec<i64>> {
    let Some((v0, rest)) = verts.split_first() else { return Vec::new() };
    let mut rest = rest.to_vec();
    rest.sort_by(|a, b| {
        let s = dot(&cross3(&sub(a, v0), &sub(b, v0)), w);
        0.cmp(&s)
    });
    let mut out = vec![v0.clone()];
    out.extend(rest);
    out
}
