//! Square-tiled surfaces from a pair of permutations.

use super::cover::CoverData;
use super::{build_surface, EdgeRef, Surface};
use crate::error::{Error, Result};
use crate::exactnum::Vec2;
use crate::lattice::planar_lattice_basis;
use std::collections::VecDeque;

/// Build the origami with squares 0..m, square `i` glued right-to-left onto
/// `h[i]` and top-to-bottom onto `v[i]`.
///
/// Squares are placed at developing positions along a spanning tree of the
/// square adjacency graph, so the recorded covering map to the quotient torus
/// is plain reduction of coordinates modulo the holonomy lattice.
pub fn origami(h: &[usize], v: &[usize]) -> Result<Surface> {
    let m = h.len();
    if m == 0 || v.len() != m {
        return Err(Error::BadParams("permutations must have equal positive length".into()));
    }
    for perm in [h, v] {
        let mut seen = vec![false; m];
        for &x in perm {
            if x >= m || seen[x] {
                return Err(Error::BadParams("not a permutation".into()));
            }
            seen[x] = true;
        }
    }
    let mut h_inv = vec![0usize; m];
    let mut v_inv = vec![0usize; m];
    for i in 0..m {
        h_inv[h[i]] = i;
        v_inv[v[i]] = i;
    }

    // Spanning tree over {right, up, left, down} moves fixes dev positions.
    let mut pos: Vec<Option<(i64, i64)>> = vec![None; m];
    pos[0] = Some((0, 0));
    let mut queue = VecDeque::from([0usize]);
    let mut lattice_gens: Vec<Vec2> = Vec::new();
    let mut edges_seen = 0usize;
    while let Some(i) = queue.pop_front() {
        let (x, y) = pos[i].unwrap();
        let moves = [
            (h[i], (x + 1, y)),
            (h_inv[i], (x - 1, y)),
            (v[i], (x, y + 1)),
            (v_inv[i], (x, y - 1)),
        ];
        for (j, p) in moves {
            edges_seen += 1;
            match pos[j] {
                None => {
                    pos[j] = Some(p);
                    queue.push_back(j);
                }
                Some((jx, jy)) => {
                    let gen = Vec2::from_ints(p.0 - jx, p.1 - jy);
                    if !gen.is_zero() {
                        lattice_gens.push(gen);
                    }
                }
            }
        }
    }
    let _ = edges_seen;
    if pos.iter().any(|p| p.is_none()) {
        return Err(Error::NotTransitive);
    }

    let faces: Vec<Vec<Vec2>> = (0..m)
        .map(|i| {
            let (x, y) = pos[i].unwrap();
            vec![
                Vec2::from_ints(x, y),
                Vec2::from_ints(x + 1, y),
                Vec2::from_ints(x + 1, y + 1),
                Vec2::from_ints(x, y + 1),
            ]
        })
        .collect();
    // edges: 0 bottom, 1 right, 2 top, 3 left
    let mut gluings = Vec::new();
    for i in 0..m {
        gluings.push((EdgeRef::new(i, 1), EdgeRef::new(h[i], 3)));
        gluings.push((EdgeRef::new(i, 2), EdgeRef::new(v[i], 0)));
    }
    let mut surface = build_surface(1, faces, &gluings, &[])?;

    // Holonomy lattice of the quotient torus; always rank two here since the
    // full horizontal and vertical cylinder cycles are among the generators.
    let (b1, b2) = planar_lattice_basis(&lattice_gens).ok_or(Error::DegenerateRank)?;
    surface.set_cover(CoverData::new(b1, b2)?);
    Ok(surface)
}

/// Parse a permutation given as comma-separated 1-based images, e.g. "2,3,1".
pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let images: Vec<usize> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad permutation entry `{t}`")))
        })
        .collect::<Result<_>>()?;
    if images.iter().any(|&x| x == 0 || x > images.len()) {
        return Err(Error::Parse("permutation images must be 1..=n".into()));
    }
    Ok(images.into_iter().map(|x| x - 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    #[test]
    fn three_square_cylinder_is_torus() {
        let s = origami(&[1, 2, 0], &[0, 1, 2]).unwrap();
        assert_eq!(s.genus(), 1);
        assert_eq!(s.area(), &Scalar::from_int(3));
        assert!(s.classes().iter().all(|c| c.multiplicity == 1));
    }

    #[test]
    fn l_origami_is_h2() {
        // h = (1 2), v = (1 3) in 1-based cycles
        let s = origami(&[1, 0, 2], &[2, 1, 0]).unwrap();
        assert_eq!(s.genus(), 2);
        let cone: Vec<_> = s.classes().iter().filter(|c| c.multiplicity > 1).collect();
        assert_eq!(cone.len(), 1);
        assert_eq!(cone[0].multiplicity, 3);
    }

    #[test]
    fn identity_pair_not_transitive() {
        assert!(matches!(
            origami(&[0, 1], &[0, 1]),
            Err(Error::NotTransitive)
        ));
    }

    #[test]
    fn origami_area_is_m() {
        let s = origami(&[1, 2, 3, 0], &[3, 0, 1, 2]).unwrap();
        assert_eq!(s.area(), &Scalar::from_int(4));
    }
}
