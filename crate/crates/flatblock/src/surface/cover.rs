//! Covering-map data over a torus quotient and branched covers of the grid
//! torus with prescribed Z/k edge shifts.

use super::{build_surface, EdgeRef, Surface, SurfacePoint};
use crate::error::{Error, Result};
use crate::exactnum::{cross, rat, rat_int, Mat2, Rational, Scalar, Vec2};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A covering map to the torus R^2 / lattice, recorded at construction time.
///
/// Faces are placed at developing coordinates, so the map is reduction of
/// face coordinates modulo the lattice; base points are reported in lattice
/// coordinates inside [0,1)^2.
#[derive(Clone, Debug)]
pub struct CoverData {
    basis: (Vec2, Vec2),
    inv: Mat2,
}

impl CoverData {
    pub fn new(b1: Vec2, b2: Vec2) -> Result<CoverData> {
        let mat = Mat2::new(b1.x.clone(), b2.x.clone(), b1.y.clone(), b2.y.clone());
        let inv = mat.inverse().map_err(|_| Error::DegenerateRank)?;
        Ok(CoverData { basis: (b1, b2), inv })
    }

    pub fn unit_lattice() -> CoverData {
        CoverData::new(Vec2::from_ints(1, 0), Vec2::from_ints(0, 1)).unwrap()
    }

    pub fn lattice(&self) -> (&Vec2, &Vec2) {
        (&self.basis.0, &self.basis.1)
    }

    pub fn covolume(&self) -> Scalar {
        cross(&self.basis.0, &self.basis.1).abs()
    }

    /// Covering degree: surface area over lattice covolume, as an exact
    /// positive rational.
    pub fn degree(&self, surface: &Surface) -> Result<Rational> {
        let deg = surface.area().checked_div(&self.covolume())?;
        match deg.as_rational() {
            Some(r) if r.is_positive() => Ok(r.clone()),
            _ => Err(Error::DegenerateRank),
        }
    }

    /// Lattice coordinates of a plane vector.
    pub fn lattice_coords(&self, v: &Vec2) -> Vec2 {
        self.inv.apply(v)
    }

    fn frac(s: &Scalar) -> Result<Rational> {
        let fl = Scalar::from_rational(Rational::from(s.floor()));
        match (s - &fl).as_rational() {
            Some(r) => Ok(r.clone()),
            None => Err(Error::NoCoverData),
        }
    }

    /// Base image of a surface point, in lattice coordinates in [0,1)^2.
    pub fn base_point(&self, p: &SurfacePoint) -> Result<(Rational, Rational)> {
        let c = self.lattice_coords(p.pos());
        Ok((Self::frac(&c.x)?, Self::frac(&c.y)?))
    }

    /// Plane representative of a base point given in lattice coordinates.
    pub fn plane_point(&self, t: &(Rational, Rational)) -> Vec2 {
        let tx = Scalar::from_rational(t.0.clone());
        let ty = Scalar::from_rational(t.1.clone());
        &self.basis.0.scale(&tx) + &self.basis.1.scale(&ty)
    }

    /// All preimages of a base point, with ramification indices.
    ///
    /// Canonicalization merges chart copies, so a fully ramified vertex shows
    /// up once with its cone multiplicity as the index.
    pub fn preimages(
        &self,
        surface: &Surface,
        t: &(Rational, Rational),
    ) -> Result<Vec<(SurfacePoint, usize)>> {
        let anchor = self.plane_point(t);
        let mut found: Vec<(SurfacePoint, usize)> = Vec::new();
        for f in 0..surface.num_faces() {
            // integer lattice offsets that could drop the anchor into face f
            let mut lo = [BigInt::from(i64::MAX), BigInt::from(i64::MAX)];
            let mut hi = [BigInt::from(i64::MIN), BigInt::from(i64::MIN)];
            for v in surface.face(f) {
                let c = self.lattice_coords(&(v - &anchor));
                for (axis, comp) in [&c.x, &c.y].into_iter().enumerate() {
                    let fl = comp.floor();
                    if fl < lo[axis] {
                        lo[axis] = fl.clone();
                    }
                    let fl1 = fl + 1;
                    if fl1 > hi[axis] {
                        hi[axis] = fl1;
                    }
                }
            }
            let (ilo, ihi) = (lo[0].to_i64().unwrap(), hi[0].to_i64().unwrap());
            let (jlo, jhi) = (lo[1].to_i64().unwrap(), hi[1].to_i64().unwrap());
            for i in ilo..=ihi {
                for j in jlo..=jhi {
                    let cand = &(&anchor + &self.basis.0.scale(&Scalar::from_int(i)))
                        + &self.basis.1.scale(&Scalar::from_int(j));
                    if surface.face_contains(f, &cand) {
                        let p = surface.point(f, cand)?;
                        if !found.iter().any(|(q, _)| q == &p) {
                            let mult = match p.vertex_class() {
                                Some(c) => surface.classes()[c].multiplicity,
                                None => 1,
                            };
                            found.push((p, mult));
                        }
                    }
                }
            }
        }
        found.sort_by(|(a, _), (b, _)| {
            (a.face(), a.pos().x.clone(), a.pos().y.clone()).cmp(&(
                b.face(),
                b.pos().x.clone(),
                b.pos().y.clone(),
            ))
        });
        Ok(found)
    }

    pub(crate) fn transformed(&self, g: &Mat2) -> CoverData {
        CoverData::new(g.apply(&self.basis.0), g.apply(&self.basis.1))
            .expect("GL+(2) keeps lattice bases independent")
    }
}

/// An edge of the n x n grid torus, named by its lower-left vertex.
///
/// `H { x, y }` runs from vertex (x,y) to (x+1,y) and separates cell (x,y)
/// above from cell (x, y-1) below; `V { x, y }` runs from (x,y) to (x,y+1)
/// and separates cell (x,y) on its right from cell (x-1,y) on its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GridEdge {
    H { x: usize, y: usize },
    V { x: usize, y: usize },
}

/// Degree-k cover of `torus_grid(n)` with sheets Z/k: crossing a grid edge
/// upward or rightward adds its shift to the sheet index.
///
/// The local monodromy at a grid vertex is the signed sum of the shifts of
/// its four incident edges along a small counterclockwise loop; preimage
/// vertex classes have cone multiplicity equal to the order of that element
/// in Z/k, which the built surface's own corner-cycle count confirms.
pub fn branched_cover_grid(
    n: usize,
    k: usize,
    shifts: &BTreeMap<GridEdge, u64>,
) -> Result<Surface> {
    if n == 0 || k < 2 {
        return Err(Error::BadParams("need n >= 1 and k >= 2".into()));
    }
    for edge in shifts.keys() {
        let (GridEdge::H { x, y } | GridEdge::V { x, y }) = *edge;
        if x >= n || y >= n {
            return Err(Error::BadParams(format!("{edge:?} outside the {n}x{n} grid")));
        }
    }
    let shift = |e: GridEdge| -> u64 { shifts.get(&e).copied().unwrap_or(0) % k as u64 };
    let side = rat(1, n as i64);
    let cell_corner = |i: usize, j: usize| -> Vec2 {
        Vec2::from_rats(&side * rat_int(i as i64), &side * rat_int(j as i64))
    };
    let face_id = |i: usize, j: usize, sheet: usize| sheet * n * n + j * n + i;

    let mut faces = Vec::with_capacity(n * n * k);
    for sheet in 0..k {
        let _ = sheet;
        for j in 0..n {
            for i in 0..n {
                let a = cell_corner(i, j);
                let b = cell_corner(i + 1, j);
                let c = cell_corner(i + 1, j + 1);
                let d = cell_corner(i, j + 1);
                faces.push(vec![a, b, c, d]);
            }
        }
    }
    let mut gluings = Vec::new();
    for sheet in 0..k as u64 {
        for j in 0..n {
            for i in 0..n {
                // right edge (1) onto left edge (3) of the right neighbor
                let sv = shift(GridEdge::V { x: (i + 1) % n, y: j });
                let target = (sheet + sv) % k as u64;
                gluings.push((
                    EdgeRef::new(face_id(i, j, sheet as usize), 1),
                    EdgeRef::new(face_id((i + 1) % n, j, target as usize), 3),
                ));
                // top edge (2) onto bottom edge (0) of the upper neighbor
                let sh = shift(GridEdge::H { x: i, y: (j + 1) % n });
                let target = (sheet + sh) % k as u64;
                gluings.push((
                    EdgeRef::new(face_id(i, j, sheet as usize), 2),
                    EdgeRef::new(face_id(i, (j + 1) % n, target as usize), 0),
                ));
            }
        }
    }
    let mut surface = build_surface(1, faces, &gluings, &[]).map_err(|e| match e {
        Error::Disconnected => Error::DisconnectedCover,
        other => other,
    })?;
    surface.set_cover(CoverData::unit_lattice());
    Ok(surface)
}

/// Signed monodromy in Z/k around grid vertex (x, y), counterclockwise.
pub fn grid_vertex_monodromy(
    n: usize,
    k: usize,
    shifts: &BTreeMap<GridEdge, u64>,
    x: usize,
    y: usize,
) -> u64 {
    let km = k as u64;
    let shift = |e: GridEdge| -> u64 { shifts.get(&e).copied().unwrap_or(0) % km };
    let xm = (x + n - 1) % n;
    let ym = (y + n - 1) % n;
    let plus = shift(GridEdge::H { x, y }) + shift(GridEdge::V { x, y: ym });
    let minus = shift(GridEdge::H { x: xm, y }) + shift(GridEdge::V { x, y });
    ((plus + 2 * km) - minus) % km
}

/// Shifts giving monodromy of order exactly k at every grid vertex, found by
/// a small systematic search; `None` when no such assignment exists (for
/// instance n odd with k = 2, where n^2 units cannot sum to zero mod 2).
pub fn full_ramification_shifts(n: usize, k: usize) -> Option<BTreeMap<GridEdge, u64>> {
    let km = k as u64;
    let units: Vec<u64> = (1..km).filter(|u| gcd(*u, km) == 1).collect();
    // one row of n units summing to 0 mod k, reused for every row
    let row = find_unit_row(n, km, &units)?;
    // with all vertical shifts zero, monodromy(x,y) = s_h(x,y) - s_h(x-1,y),
    // so prefix sums of the row realize the targets
    let mut shifts = BTreeMap::new();
    let mut prefix = 0u64;
    for x in 0..n {
        prefix = (prefix + row[x]) % km;
        for y in 0..n {
            shifts.insert(GridEdge::H { x, y }, prefix);
        }
    }
    for y in 0..n {
        for x in 0..n {
            debug_assert_eq!(gcd(grid_vertex_monodromy(n, k, &shifts, x, y), km), 1);
        }
    }
    Some(shifts)
}

fn find_unit_row(n: usize, k: u64, units: &[u64]) -> Option<Vec<u64>> {
    fn rec(n: usize, k: u64, units: &[u64], acc: &mut Vec<u64>, sum: u64) -> bool {
        if acc.len() == n {
            return sum % k == 0;
        }
        for &u in units {
            acc.push(u);
            if rec(n, k, units, acc, (sum + u) % k) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    rec(n, k, units, &mut acc, 0).then_some(acc)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_double_cover_is_unramified() {
        let mut shifts = BTreeMap::new();
        shifts.insert(GridEdge::V { x: 0, y: 0 }, 1);
        assert_eq!(grid_vertex_monodromy(1, 2, &shifts, 0, 0), 0);
        let s = branched_cover_grid(1, 2, &shifts).unwrap();
        assert_eq!(s.genus(), 1);
        assert_eq!(s.area(), &Scalar::from_int(2));
    }

    #[test]
    fn fully_ramified_2x2_double_cover() {
        let shifts = full_ramification_shifts(2, 2).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(grid_vertex_monodromy(2, 2, &shifts, x, y), 1);
            }
        }
        let s = branched_cover_grid(2, 2, &shifts).unwrap();
        assert_eq!(s.genus(), 3);
        let cones: Vec<_> = s.classes().iter().filter(|c| c.is_singular()).collect();
        assert_eq!(cones.len(), 4);
        assert!(cones.iter().all(|c| c.multiplicity == 2));
        assert_eq!(s.area(), &Scalar::from_int(2));
        assert_eq!(s.cover().unwrap().degree(&s).unwrap(), rat_int(2));
    }

    #[test]
    fn trivial_shifts_disconnect() {
        let shifts = BTreeMap::new();
        assert!(matches!(
            branched_cover_grid(2, 2, &shifts),
            Err(Error::DisconnectedCover)
        ));
    }

    #[test]
    fn no_full_ramification_for_odd_n_k2() {
        assert!(full_ramification_shifts(3, 2).is_none());
        assert!(full_ramification_shifts(3, 3).is_some());
    }

    #[test]
    fn preimages_of_branch_point_are_singular() {
        let shifts = full_ramification_shifts(2, 2).unwrap();
        let s = branched_cover_grid(2, 2, &shifts).unwrap();
        let cov = s.cover().unwrap();
        let pre = cov.preimages(&s, &(rat(0, 1), rat(0, 1))).unwrap();
        assert_eq!(pre.len(), 1);
        assert_eq!(pre[0].1, 2);
        assert!(pre[0].0.is_vertex());
        // a generic point has k = 2 preimages
        let pre = cov.preimages(&s, &(rat(1, 3), rat(1, 7))).unwrap();
        assert_eq!(pre.len(), 2);
        assert!(pre.iter().all(|(_, m)| *m == 1));
    }
}
