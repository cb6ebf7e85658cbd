//! Rational polygons and the reflection-group unfolding of billiards.

use super::{build_surface, EdgeRef, Surface, SurfacePoint};
use crate::error::{Error, Result};
use crate::exactnum::{cross, dot, norm_sq, rat, Mat2, Scalar, Vec2};
use std::collections::BTreeMap;

/// Simple planar polygon with every interior angle a rational multiple of pi.
#[derive(Clone, Debug)]
pub struct RationalPolygon {
    vertices: Vec<Vec2>,
    /// interior angle at vertex i is pi * p_i / q_i
    angles: Vec<(i64, i64)>,
    d: u64,
}

/// cos(pi * p / q) for reduced p/q in (0, 2), with the field it lives in.
fn cos_pi(p: i64, q: i64) -> Result<Scalar> {
    let g = gcd(p, q);
    let (p, q) = (p / g, q / g);
    if p <= 0 || q <= 0 || p >= 2 * q {
        return Err(Error::BadParams(format!("angle pi*{p}/{q} out of range")));
    }
    // cos(pi t) = cos(pi (2 - t))
    let (p, q) = if p > q { (2 * q - p, q) } else { (p, q) };
    let half = |s: Scalar| s / Scalar::from_int(2);
    Ok(match (p, q) {
        (1, 1) => Scalar::from_int(-1),
        (1, 2) => Scalar::zero(),
        (1, 3) => Scalar::from_rational(rat(1, 2)),
        (2, 3) => Scalar::from_rational(rat(-1, 2)),
        (1, 4) => half(Scalar::sqrt_d(2)),
        (3, 4) => half(-Scalar::sqrt_d(2)),
        (1, 6) => half(Scalar::sqrt_d(3)),
        (5, 6) => half(-Scalar::sqrt_d(3)),
        (1, 5) => Scalar::new(rat(1, 4), rat(1, 4), 5),
        (2, 5) => Scalar::new(rat(-1, 4), rat(1, 4), 5),
        (3, 5) => Scalar::new(rat(1, 4), rat(-1, 4), 5),
        (4, 5) => Scalar::new(rat(-1, 4), rat(-1, 4), 5),
        _ => return Err(Error::FieldInsufficient(p, q, 0)),
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

impl RationalPolygon {
    /// Validate counterclockwise simple polygon data against the claimed
    /// angles: angle sum (n-2), per-vertex cosine square and sign tests.
    pub fn new(vertices: Vec<Vec2>, angles: Vec<(i64, i64)>) -> Result<RationalPolygon> {
        let n = vertices.len();
        if n < 3 || angles.len() != n {
            return Err(Error::BadParams("need one angle per vertex, at least three".into()));
        }
        let mut d = 1u64;
        for v in &vertices {
            d = v.x.common_field(&Scalar::sqrt_d(d))?;
            d = v.y.common_field(&Scalar::sqrt_d(d))?;
        }
        // counterclockwise with positive area
        let mut twice_area = Scalar::zero();
        for i in 0..n {
            twice_area = twice_area + cross(&vertices[i], &vertices[(i + 1) % n]);
        }
        if !twice_area.is_positive() {
            return Err(Error::BadParams("polygon must be counterclockwise".into()));
        }
        // simple: non-adjacent edges must not meet
        for i in 0..n {
            for j in i + 1..n {
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (a1, b1) = (&vertices[i], &vertices[(i + 1) % n]);
                let (a2, b2) = (&vertices[j], &vertices[(j + 1) % n]);
                if segments_meet(a1, b1, a2, b2) {
                    return Err(Error::BadParams("polygon is not simple".into()));
                }
            }
        }
        let sum: (i64, i64) = angles.iter().fold((0, 1), |(sn, sd), &(p, q)| {
            let num = sn * q + p * sd;
            let den = sd * q;
            let g = gcd(num, den);
            (num / g, den / g)
        });
        if sum != (n as i64 - 2, 1) {
            return Err(Error::BadParams(format!(
                "interior angles sum to pi*{}/{}, expected pi*{}",
                sum.0,
                sum.1,
                n - 2
            )));
        }
        for (i, &(p, q)) in angles.iter().enumerate() {
            let c = cos_pi(p, q).map_err(|e| match e {
                Error::FieldInsufficient(p, q, _) => Error::FieldInsufficient(p, q, d),
                other => other,
            })?;
            let c2 = &c * &c;
            if c2.with_field(d).is_err() {
                return Err(Error::FieldInsufficient(p, q, d));
            }
            let v = &vertices[i];
            let u = &vertices[(i + 1) % n] - v;
            let w = &vertices[(i + n - 1) % n] - v;
            let ok_sign_cos = dot(&u, &w).signum() == c.signum();
            // sin(pi p/q) > 0 iff the angle is below pi
            let sin_sign = (q - p).signum() as i32;
            let ok_sign_sin = cross(&u, &w).signum() == sin_sign;
            let ok_square = dot(&u, &w) * dot(&u, &w) == norm_sq(&u) * norm_sq(&w) * c2;
            if !(ok_sign_cos && ok_sign_sin && ok_square) {
                return Err(Error::BadParams(format!(
                    "vertex {i}: coordinates do not realize angle pi*{p}/{q}"
                )));
            }
        }
        Ok(RationalPolygon { vertices, angles, d })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn angles(&self) -> &[(i64, i64)] {
        &self.angles
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn area(&self) -> Scalar {
        let n = self.vertices.len();
        let mut twice = Scalar::zero();
        for i in 0..n {
            twice = twice + cross(&self.vertices[i], &self.vertices[(i + 1) % n]);
        }
        twice / Scalar::from_int(2)
    }

    /// Exact ear-clipping triangulation; returns index triples, ccw.
    fn triangulate(&self) -> Vec<[usize; 3]> {
        let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
        let mut tris = Vec::new();
        while idx.len() > 3 {
            let m = idx.len();
            let mut clipped = false;
            for k in 0..m {
                let (ia, ib, ic) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
                let (a, b, c) = (&self.vertices[ia], &self.vertices[ib], &self.vertices[ic]);
                if !cross(&(b - a), &(c - b)).is_positive() {
                    continue;
                }
                let blocked = idx.iter().any(|&other| {
                    if other == ia || other == ib || other == ic {
                        return false;
                    }
                    point_in_closed_triangle(&self.vertices[other], a, b, c)
                });
                if !blocked {
                    tris.push([ia, ib, ic]);
                    idx.remove(k);
                    clipped = true;
                    break;
                }
            }
            assert!(clipped, "simple polygon always has an ear");
        }
        tris.push([idx[0], idx[1], idx[2]]);
        tris
    }
}

fn point_in_closed_triangle(p: &Vec2, a: &Vec2, b: &Vec2, c: &Vec2) -> bool {
    !cross(&(b - a), &(p - a)).is_negative()
        && !cross(&(c - b), &(p - b)).is_negative()
        && !cross(&(a - c), &(p - c)).is_negative()
}

/// Do two closed segments share a point, excluding shared endpoints handled
/// by the caller? Proper crossings and collinear overlaps both count.
fn segments_meet(a1: &Vec2, b1: &Vec2, a2: &Vec2, b2: &Vec2) -> bool {
    let d1 = b1 - a1;
    let d2 = b2 - a2;
    let s1 = cross(&d1, &(a2 - a1)).signum();
    let s2 = cross(&d1, &(b2 - a1)).signum();
    let s3 = cross(&d2, &(a1 - a2)).signum();
    let s4 = cross(&d2, &(b1 - a2)).signum();
    if s1 * s2 < 0 && s3 * s4 < 0 {
        return true;
    }
    for (p, a, b) in [(a2, a1, b1), (b2, a1, b1), (a1, a2, b2), (b1, a2, b2)] {
        if cross(&(b - a), &(p - a)).is_zero() {
            let t = dot(&(b - a), &(p - a));
            if !t.is_negative() && t <= norm_sq(&(b - a)) {
                return true;
            }
        }
    }
    false
}

/// The unfolded translation surface together with the point-lift map.
pub struct Unfolding {
    pub surface: Surface,
    /// linear parts of the reflection group, index 0 the identity
    pub group: Vec<Mat2>,
    polygon: RationalPolygon,
    tris: Vec<[usize; 3]>,
    /// face id of (copy, triangle)
    face_of: Vec<Vec<usize>>,
}

impl Unfolding {
    /// All copies of a polygon point on the unfolded surface, canonical and
    /// deduplicated.
    pub fn lift_point(&self, p: &Vec2) -> Result<Vec<SurfacePoint>> {
        let containing: Vec<usize> = (0..self.tris.len())
            .filter(|&t| {
                let [ia, ib, ic] = self.tris[t];
                point_in_closed_triangle(
                    p,
                    &self.polygon.vertices[ia],
                    &self.polygon.vertices[ib],
                    &self.polygon.vertices[ic],
                )
            })
            .collect();
        if containing.is_empty() {
            return Err(Error::BadParams("point lies outside the polygon".into()));
        }
        let mut out: Vec<SurfacePoint> = Vec::new();
        for (ci, g) in self.group.iter().enumerate() {
            let q = g.apply(p);
            for &t in &containing {
                let sp = self.surface.point(self.face_of[ci][t], q.clone())?;
                if !out.contains(&sp) {
                    out.push(sp);
                }
            }
        }
        Ok(out)
    }
}

/// Unfold a rational billiard table: one face per (group element, triangle),
/// sides glued to the side of the reflected copy.
pub fn unfold_billiard(polygon: &RationalPolygon) -> Result<Unfolding> {
    let n = polygon.vertices.len();
    let side_reflections: Vec<Mat2> = (0..n)
        .map(|i| {
            let v = &polygon.vertices[(i + 1) % n] - &polygon.vertices[i];
            Mat2::reflection_across(&v)
        })
        .collect::<Result<_>>()?;

    // close the group generated by the side reflections
    let mut group: Vec<Mat2> = vec![Mat2::identity()];
    let mut frontier = vec![0usize];
    while let Some(gi) = frontier.pop() {
        for refl in &side_reflections {
            let prod = group[gi].mul(refl);
            if !group.contains(&prod) {
                group.push(prod);
                frontier.push(group.len() - 1);
            }
        }
        if group.len() > 4096 {
            return Err(Error::BadParams("reflection group did not close".into()));
        }
    }

    let tris = polygon.triangulate();
    let mut faces: Vec<Vec<Vec2>> = Vec::new();
    let mut face_of: Vec<Vec<usize>> = Vec::new();
    // oriented edges per face as original-index pairs, for gluing lookup
    let mut edge_dir: Vec<[(usize, usize); 3]> = Vec::new();
    for g in &group {
        let flip = g.det().is_negative();
        let mut ids = Vec::new();
        for tri in &tris {
            let order: [usize; 3] = if flip {
                [tri[2], tri[1], tri[0]]
            } else {
                *tri
            };
            ids.push(faces.len());
            faces.push(order.iter().map(|&i| g.apply(&polygon.vertices[i])).collect());
            edge_dir.push([
                (order[0], order[1]),
                (order[1], order[2]),
                (order[2], order[0]),
            ]);
        }
        face_of.push(ids);
    }

    let group_index = |m: &Mat2| -> usize {
        group.iter().position(|g| g == m).expect("group is closed")
    };
    let is_side = |a: usize, b: usize| -> Option<usize> {
        if (a + 1) % n == b {
            Some(a)
        } else if (b + 1) % n == a {
            Some(b)
        } else {
            None
        }
    };

    let mut gluings: Vec<(EdgeRef, EdgeRef)> = Vec::new();
    let mut internal: BTreeMap<(usize, usize, usize), EdgeRef> = BTreeMap::new();
    let mut boundary: BTreeMap<(usize, usize), EdgeRef> = BTreeMap::new();
    for (ci, g) in group.iter().enumerate() {
        for (tj, _) in tris.iter().enumerate() {
            let fid = face_of[ci][tj];
            for e in 0..3 {
                let (a, b) = edge_dir[fid][e];
                let here = EdgeRef::new(fid, e);
                match is_side(a, b) {
                    None => {
                        // triangulation diagonal: partner inside the same copy
                        let key = (ci, a.min(b), a.max(b));
                        match internal.remove(&key) {
                            None => {
                                internal.insert(key, here);
                            }
                            Some(other) => gluings.push((other, here)),
                        }
                    }
                    Some(s) => {
                        let gj = group_index(&g.mul(&side_reflections[s]));
                        let key = (ci.min(gj), s);
                        match boundary.remove(&key) {
                            None => {
                                boundary.insert(key, here);
                            }
                            Some(other) => gluings.push((other, here)),
                        }
                    }
                }
            }
        }
    }
    if !internal.is_empty() || !boundary.is_empty() {
        return Err(Error::BadGluing("unfolding produced unmatched edges".into()));
    }

    let surface = build_surface(polygon.d, faces, &gluings, &[])?.with_name("unfolding");
    Ok(Unfolding {
        surface,
        group,
        polygon: polygon.clone(),
        tris,
        face_of,
    })
}
