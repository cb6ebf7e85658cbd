//! Named example surfaces.

use super::cover::CoverData;
use super::origami::origami;
use super::{build_surface, EdgeRef, Surface};
use crate::error::{Error, Result};
use crate::exactnum::{parse_scalar, rat, rat_int, Scalar, Vec2};

pub fn builtin_names() -> &'static [&'static str] {
    &["torus", "torus_grid:n", "staircase", "l_shaped:a,b", "golden_l", "octagon", "grid_cover:n,k"]
}

/// Build a named surface. Parameters come as scalar/integer strings.
pub fn builtin(name: &str, params: &[String]) -> Result<Surface> {
    match name {
        "torus" => torus(),
        "torus_grid" => {
            let n = int_param(params, 0, "torus_grid needs a grid size")?;
            torus_grid(n)
        }
        "staircase" => staircase(),
        "l_shaped" => {
            if params.len() != 2 {
                return Err(Error::BadParams("l_shaped needs two side lengths".into()));
            }
            let a = parse_scalar(&params[0], 0)?;
            let b = parse_scalar(&params[1], 0)?;
            let d = a.common_field(&b)?;
            l_shaped(&a, &b, d).map(|s| s.with_name("l_shaped"))
        }
        "golden_l" => {
            // legs phi = (1+sqrt(5))/2, i.e. a = b = phi - 1
            let a = Scalar::new(rat(-1, 2), rat(1, 2), 5);
            l_shaped(&a, &a, 5).map(|s| s.with_name("golden_l"))
        }
        "octagon" => octagon(),
        "grid_cover" => {
            let n = int_param(params, 0, "grid_cover needs n,k")?;
            let k = int_param(params, 1, "grid_cover needs n,k")?;
            let shifts = super::cover::full_ramification_shifts(n, k).ok_or_else(|| {
                Error::BadParams(format!("no fully ramified cover of the {n}x{n} grid with {k} sheets"))
            })?;
            super::cover::branched_cover_grid(n, k, &shifts)
                .map(|s| s.with_name("grid_cover"))
        }
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

fn int_param(params: &[String], i: usize, msg: &str) -> Result<usize> {
    params
        .get(i)
        .and_then(|p| p.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::BadParams(msg.into()))
}

fn torus() -> Result<Surface> {
    let faces = vec![vec![
        Vec2::from_ints(0, 0),
        Vec2::from_ints(1, 0),
        Vec2::from_ints(1, 1),
        Vec2::from_ints(0, 1),
    ]];
    let gluings = [
        (EdgeRef::new(0, 0), EdgeRef::new(0, 2)),
        (EdgeRef::new(0, 1), EdgeRef::new(0, 3)),
    ];
    let mut s = build_surface(1, faces, &gluings, &[])?;
    s.set_cover(CoverData::unit_lattice());
    Ok(s.with_name("torus"))
}

/// The unit torus presented as n^2 cells of side 1/n, so that the preimage
/// of 0 under multiplication by n is exactly the vertex set.
fn torus_grid(n: usize) -> Result<Surface> {
    if n == 0 {
        return Err(Error::BadParams("grid size must be positive".into()));
    }
    let side = rat(1, n as i64);
    let corner = |i: usize, j: usize| {
        Vec2::from_rats(&side * rat_int(i as i64), &side * rat_int(j as i64))
    };
    let face_id = |i: usize, j: usize| j * n + i;
    let mut faces = Vec::new();
    for j in 0..n {
        for i in 0..n {
            faces.push(vec![
                corner(i, j),
                corner(i + 1, j),
                corner(i + 1, j + 1),
                corner(i, j + 1),
            ]);
        }
    }
    let mut gluings = Vec::new();
    for j in 0..n {
        for i in 0..n {
            gluings.push((
                EdgeRef::new(face_id(i, j), 1),
                EdgeRef::new(face_id((i + 1) % n, j), 3),
            ));
            gluings.push((
                EdgeRef::new(face_id(i, j), 2),
                EdgeRef::new(face_id(i, (j + 1) % n), 0),
            ));
        }
    }
    let mut s = build_surface(1, faces, &gluings, &[])?;
    s.set_cover(CoverData::unit_lattice());
    Ok(s.with_name("torus_grid"))
}

/// The Escher staircase: six unit cells in a cyclic stair, each step a
/// horizontal pair of squares with the next odd square on top of the even
/// one. Fixed normalization: h = (1 2)(3 4)(5 6), v = (2 3)(4 5)(6 1), with
/// the order-3 deck translation i -> i + 2 over the quotient torus of
/// lattice <(2,0),(1,1)>.
fn staircase() -> Result<Surface> {
    let h = [1, 0, 3, 2, 5, 4];
    let v = [5, 2, 1, 4, 3, 0];
    Ok(origami(&h, &v)?.with_name("staircase"))
}

/// L-shaped surface: unit square, a width-`a` tab to the right and a
/// height-`b` tab on top, opposite sides glued.
fn l_shaped(a: &Scalar, b: &Scalar, d: u64) -> Result<Surface> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::BadParams("l_shaped sides must be positive".into()));
    }
    let zero = Scalar::zero();
    let one = Scalar::one();
    let right = &one + a;
    let top = &one + b;
    let faces = vec![
        vec![
            Vec2::new(zero.clone(), zero.clone()),
            Vec2::new(one.clone(), zero.clone()),
            Vec2::new(one.clone(), one.clone()),
            Vec2::new(zero.clone(), one.clone()),
        ],
        vec![
            Vec2::new(one.clone(), zero.clone()),
            Vec2::new(right.clone(), zero.clone()),
            Vec2::new(right.clone(), one.clone()),
            Vec2::new(one.clone(), one.clone()),
        ],
        vec![
            Vec2::new(zero.clone(), one.clone()),
            Vec2::new(one.clone(), one.clone()),
            Vec2::new(one.clone(), top.clone()),
            Vec2::new(zero.clone(), top.clone()),
        ],
    ];
    let gluings = [
        (EdgeRef::new(0, 0), EdgeRef::new(2, 2)),
        (EdgeRef::new(0, 2), EdgeRef::new(2, 0)),
        (EdgeRef::new(0, 1), EdgeRef::new(1, 3)),
        (EdgeRef::new(0, 3), EdgeRef::new(1, 1)),
        (EdgeRef::new(1, 0), EdgeRef::new(1, 2)),
        (EdgeRef::new(2, 1), EdgeRef::new(2, 3)),
    ];
    build_surface(d, faces, &gluings, &[])
}

/// Regular octagon with opposite sides identified: genus 2, one cone point
/// of angle 6 pi, coordinates in Q(sqrt(2)).
fn octagon() -> Result<Surface> {
    let one = Scalar::one();
    let r = &one + &Scalar::sqrt_d(2); // 1 + sqrt(2)
    let verts = [
        (r.clone(), one.clone()),
        (one.clone(), r.clone()),
        (-&one, r.clone()),
        (-&r, one.clone()),
        (-&r, -&one),
        (-&one, -&r),
        (one.clone(), -&r),
        (r.clone(), -&one),
    ];
    let faces = vec![verts.into_iter().map(|(x, y)| Vec2::new(x, y)).collect()];
    let gluings: Vec<(EdgeRef, EdgeRef)> = (0..4)
        .map(|i| (EdgeRef::new(0, i), EdgeRef::new(0, i + 4)))
        .collect();
    build_surface(2, faces, &gluings, &[]).map(|s| s.with_name("octagon"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cross;

    #[test]
    fn torus_grid_counts() {
        let s = builtin("torus_grid", &["3".into()]).unwrap();
        assert_eq!(s.genus(), 1);
        assert_eq!(s.num_faces(), 9);
        assert_eq!(s.area(), &Scalar::one());
        assert_eq!(s.classes().len(), 9);
        assert!(s.classes().iter().all(|c| c.multiplicity == 1));
    }

    #[test]
    fn staircase_structure() {
        let s = builtin("staircase", &[]).unwrap();
        assert_eq!(s.genus(), 3);
        assert_eq!(s.area(), &Scalar::from_int(6));
        let cones: Vec<_> = s.classes().iter().filter(|c| c.is_singular()).collect();
        assert_eq!(cones.len(), 2);
        assert!(cones.iter().all(|c| c.multiplicity == 3));
        // degree 3 over the recorded quotient torus
        let cov = s.cover().unwrap();
        assert_eq!(cov.degree(&s).unwrap(), rat_int(3));
        assert_eq!(cov.covolume(), Scalar::from_int(2));
    }

    #[test]
    fn golden_l_structure() {
        let s = builtin("golden_l", &[]).unwrap();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.field(), 5);
        let cones: Vec<_> = s.classes().iter().filter(|c| c.is_singular()).collect();
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].multiplicity, 3);
        // area = (1+a)(1) + 1*b with a = b = phi-1: area = phi + phi - 1 = sqrt(5)
        assert_eq!(s.area(), &Scalar::sqrt_d(5));
    }

    #[test]
    fn octagon_structure() {
        let s = builtin("octagon", &[]).unwrap();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.classes().len(), 1);
        assert_eq!(s.classes()[0].multiplicity, 3);
        // side vectors of glued pairs are opposite
        for (e1, e2) in s.gluing_pairs() {
            assert!((&s.edge_vector(e1) + &s.edge_vector(e2)).is_zero());
        }
        let v0 = s.edge_vector(EdgeRef::new(0, 0));
        let v4 = s.edge_vector(EdgeRef::new(0, 4));
        assert!(cross(&v0, &v4).is_zero());
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(
            builtin("banana", &[]),
            Err(Error::UnknownBuiltin(_))
        ));
    }
}
