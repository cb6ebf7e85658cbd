//! Absolute-period holonomy: exact discreteness test and torus-cover
//! detection with lattice, degree and branch data.

use crate::error::{Error, Result};
use crate::exactnum::{cross, Rational, Scalar, Vec2};
use crate::lattice::{field_rank, flatten, q_rank, z_basis};
use crate::surface::{EdgeRef, Surface};
use num_traits::Signed;
use std::collections::VecDeque;

/// The subgroup of the plane generated by holonomies of absolute cycles.
#[derive(Clone, Debug)]
pub struct HolonomyGroup {
    /// Holonomy vectors of the cycles closed by each non-tree gluing.
    pub generators: Vec<Vec2>,
    /// Rank of the generated abelian group (over Z, equivalently over Q in
    /// the flattened rational coordinates).
    pub z_rank: usize,
    /// Dimension of the real span, computed over the field.
    pub r_span_dim: usize,
    /// Basis when the group is a rank-2 lattice.
    pub lattice_basis: Option<(Vec2, Vec2)>,
}

impl HolonomyGroup {
    /// A finitely generated subgroup of the plane is discrete exactly when
    /// its abstract rank equals the dimension of its real span.
    pub fn is_discrete(&self) -> bool {
        self.z_rank == self.r_span_dim
    }
}

/// Developing offsets along a spanning tree plus the holonomy generators of
/// the non-tree gluing cycles.
pub(crate) fn developing_data(m: &Surface) -> (Vec<Vec2>, Vec<Vec2>) {
    let n = m.num_faces();
    let mut offset: Vec<Option<Vec2>> = vec![None; n];
    offset[0] = Some(Vec2::zero());
    let mut queue = VecDeque::from([0usize]);
    let mut tree_edge = vec![false; n];
    tree_edge[0] = true;
    let mut generators = Vec::new();
    let mut visited_pairs: Vec<(EdgeRef, EdgeRef)> = Vec::new();
    while let Some(f) = queue.pop_front() {
        for e in 0..m.face(f).len() {
            let here = EdgeRef::new(f, e);
            let p = m.partner(here);
            let pair = (here.min(p), here.max(p));
            if visited_pairs.contains(&pair) {
                continue;
            }
            visited_pairs.push(pair);
            let tau_f = offset[f].clone().expect("visited face has an offset");
            let crossed = &tau_f - m.gluing_translation(here);
            match &offset[p.face] {
                None => {
                    offset[p.face] = Some(crossed);
                    queue.push_back(p.face);
                }
                Some(tau_p) => {
                    let g = &crossed - tau_p;
                    if !g.is_zero() {
                        generators.push(g);
                    }
                }
            }
        }
    }
    let offsets = offset.into_iter().map(|o| o.expect("surface is connected")).collect();
    (offsets, generators)
}

pub fn absolute_holonomy(m: &Surface) -> HolonomyGroup {
    let (_, generators) = developing_data(m);
    let rows: Vec<Vec<Rational>> = generators.iter().map(flatten).collect();
    let z_rank = q_rank(&rows);
    let r_span_dim = field_rank(&generators);
    let lattice_basis = if z_rank == r_span_dim && z_rank == 2 {
        let basis = z_basis(&rows);
        debug_assert_eq!(basis.len(), 2);
        let unflatten = |row: &Vec<Rational>| {
            Vec2::new(
                Scalar::new(row[0].clone(), row[1].clone(), m.field()),
                Scalar::new(row[2].clone(), row[3].clone(), m.field()),
            )
        };
        Some((unflatten(&basis[0]), unflatten(&basis[1])))
    } else {
        None
    };
    HolonomyGroup {
        generators,
        z_rank,
        r_span_dim,
        lattice_basis,
    }
}

/// Torus-cover verdict: the canonical (largest) quotient torus when the
/// holonomy group is a lattice, or a dependence witness when it is not.
#[derive(Clone, Debug)]
pub enum TorusCover {
    Yes {
        lattice: (Vec2, Vec2),
        degree: Rational,
        /// Images of singular vertices in lattice coordinates [0,1)^2 with
        /// the number of preimage classes mapping there.
        branch_points: Vec<(Vec2, usize)>,
    },
    No {
        /// A small set of generators witnessing indiscreteness.
        witness: Vec<Vec2>,
    },
}

pub fn torus_cover(m: &Surface) -> Result<TorusCover> {
    let hol = absolute_holonomy(m);
    if !hol.is_discrete() {
        return Ok(TorusCover::No {
            witness: indiscreteness_witness(&hol),
        });
    }
    let Some((b1, b2)) = hol.lattice_basis else {
        // rank < 2 cannot happen for a closed surface of positive area
        return Err(Error::DegenerateRank);
    };
    let covol = cross(&b1, &b2).abs();
    let degree = m.area().checked_div(&covol)?;
    let degree = match degree.as_rational() {
        Some(r) if r.is_positive() => r.clone(),
        _ => return Err(Error::DegenerateRank),
    };
    // branch images: singular vertices reduced modulo the lattice
    let (offsets, _) = developing_data(m);
    let basis_mat = crate::exactnum::Mat2::new(b1.x.clone(), b2.x.clone(), b1.y.clone(), b2.y.clone());
    let inv = basis_mat.inverse()?;
    let mut branch_points: Vec<(Vec2, usize)> = Vec::new();
    for class in m.singular_classes() {
        let (f, i) = m.classes()[class].corners[0];
        let dev = &m.face(f)[i] + &offsets[f];
        let coords = inv.apply(&dev);
        let frac = |s: &Scalar| s - &Scalar::from_rational(Rational::from(s.floor()));
        let reduced = Vec2::new(frac(&coords.x), frac(&coords.y));
        match branch_points.iter_mut().find(|(p, _)| *p == reduced) {
            Some((_, count)) => *count += 1,
            None => branch_points.push((reduced, 1)),
        }
    }
    branch_points.sort_by(|(a, _), (b, _)| a.cmp(b));
    Ok(TorusCover::Yes {
        lattice: (b1, b2),
        degree,
        branch_points,
    })
}

/// Two or three generators that exhibit the failure of discreteness.
fn indiscreteness_witness(hol: &HolonomyGroup) -> Vec<Vec2> {
    let gens = &hol.generators;
    // a collinear pair with irrational ratio is the cleanest witness
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if cross(&gens[i], &gens[j]).is_zero() {
                let rows = vec![flatten(&gens[i]), flatten(&gens[j])];
                if q_rank(&rows) == 2 {
                    return vec![gens[i].clone(), gens[j].clone()];
                }
            }
        }
    }
    // otherwise a triple whose combination is irrational
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if cross(&gens[i], &gens[j]).is_zero() {
                continue;
            }
            for (k, g) in gens.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let rows = vec![flatten(&gens[i]), flatten(&gens[j]), flatten(g)];
                if q_rank(&rows) == 3 {
                    return vec![gens[i].clone(), gens[j].clone(), g.clone()];
                }
            }
        }
    }
    gens.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{norm_sq, rat, rat_int, Mat2};
    use crate::surface::builtin;

    #[test]
    fn torus_holonomy_is_unit_lattice() {
        let t = builtin("torus", &[]).unwrap();
        let h = absolute_holonomy(&t);
        assert_eq!(h.z_rank, 2);
        assert_eq!(h.r_span_dim, 2);
        assert!(h.is_discrete());
        let (b1, b2) = h.lattice_basis.unwrap();
        assert_eq!(cross(&b1, &b2).abs(), Scalar::one());
        match torus_cover(&t).unwrap() {
            TorusCover::Yes { degree, branch_points, .. } => {
                assert_eq!(degree, rat_int(1));
                assert!(branch_points.is_empty());
            }
            other => panic!("torus covers itself: {other:?}"),
        }
    }

    #[test]
    fn golden_l_is_not_a_cover() {
        let g = builtin("golden_l", &[]).unwrap();
        let h = absolute_holonomy(&g);
        assert!(!h.is_discrete());
        match torus_cover(&g).unwrap() {
            TorusCover::No { witness } => {
                assert!(witness.len() >= 2);
                if witness.len() == 2 {
                    assert!(cross(&witness[0], &witness[1]).is_zero());
                }
            }
            other => panic!("golden L must not be a torus cover: {other:?}"),
        }
    }

    #[test]
    fn staircase_degree_three() {
        let s = builtin("staircase", &[]).unwrap();
        match torus_cover(&s).unwrap() {
            TorusCover::Yes { lattice, degree, .. } => {
                assert_eq!(degree, rat_int(3));
                let covol = cross(&lattice.0, &lattice.1).abs();
                assert_eq!(covol, Scalar::from_int(2));
            }
            other => panic!("staircase is a degree-3 cover: {other:?}"),
        }
    }

    #[test]
    fn l_shaped_degree_three_one_branch_point() {
        let l = builtin("l_shaped", &["1".into(), "1".into()]).unwrap();
        match torus_cover(&l).unwrap() {
            TorusCover::Yes { lattice, degree, branch_points } => {
                assert_eq!(degree, rat_int(3));
                assert_eq!(cross(&lattice.0, &lattice.1).abs(), Scalar::one());
                assert_eq!(branch_points.len(), 1);
            }
            other => panic!("L(1,1) is a degree-3 cover: {other:?}"),
        }
    }

    #[test]
    fn origami_degree_times_covolume_is_m() {
        // degree is taken over the maximal quotient torus, so an origami with
        // a translation automorphism detects a smaller degree; the product
        // with the lattice covolume is always the square count.
        for (h, v, expect_degree) in [
            (vec![1usize, 2, 0], vec![0usize, 1, 2], 1i64), // deck map i -> i+1
            (vec![1, 0, 2], vec![2, 1, 0], 3),              // L-shaped, asymmetric
            (vec![1, 2, 3, 0], vec![3, 0, 1, 2], 1),        // fully symmetric
            (vec![1, 0, 2, 3], vec![2, 3, 1, 0], 2), // deck map (01)(23)
        ] {
            let s = crate::surface::origami(&h, &v).unwrap();
            match torus_cover(&s).unwrap() {
                TorusCover::Yes { lattice, degree, .. } => {
                    assert_eq!(degree, rat_int(expect_degree));
                    let covol = cross(&lattice.0, &lattice.1).abs();
                    let m = Scalar::from_int(h.len() as i64);
                    assert_eq!(Scalar::from_rational(degree) * covol, m);
                }
                other => panic!("origami must be a cover: {other:?}"),
            }
        }
    }

    #[test]
    fn grid_cover_degree_over_cell_lattice() {
        let shifts = crate::surface::full_ramification_shifts(2, 2).unwrap();
        let s = crate::surface::branched_cover_grid(2, 2, &shifts).unwrap();
        match torus_cover(&s).unwrap() {
            TorusCover::Yes { lattice, degree, .. } => {
                // detected lattice is contained in the cell lattice (1/n) Z^2:
                // its coordinates there are integers, and the degree over the
                // cell lattice is k * n^2
                let n = 2i64;
                for b in [&lattice.0, &lattice.1] {
                    let cell = Vec2::new(&b.x * &Scalar::from_int(n), &b.y * &Scalar::from_int(n));
                    assert!(cell.x.as_rational().unwrap().is_integer());
                    assert!(cell.y.as_rational().unwrap().is_integer());
                }
                let covol = cross(&lattice.0, &lattice.1).abs();
                let cell_covol = Scalar::from_rational(rat(1, n * n));
                let deg_cell = s.area().checked_div(&cell_covol).unwrap();
                assert_eq!(deg_cell, Scalar::from_int(2 * n * n));
                assert!(degree.is_positive());
                let _ = covol;
            }
            other => panic!("grid cover must be a cover: {other:?}"),
        }
    }

    #[test]
    fn gl2_equivariance() {
        let t = builtin("torus", &[]).unwrap();
        let g = Mat2::new(
            Scalar::from_int(2),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::from_rational(rat(1, 2)),
        );
        let tg = t.gl2_act(&g).unwrap();
        match torus_cover(&tg).unwrap() {
            TorusCover::Yes { degree, .. } => assert_eq!(degree, rat_int(1)),
            other => panic!("sheared torus is still a torus: {other:?}"),
        }
        let gl = builtin("golden_l", &[]).unwrap();
        let shear = Mat2::new(Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::one());
        let sheared = gl.gl2_act(&shear).unwrap();
        assert!(!absolute_holonomy(&sheared).is_discrete());
    }

    /// Discreteness against a brute-force short-vector search: no small
    /// integer combination of generators beats half the lattice minimum.
    #[test]
    fn short_vector_search_confirms_lattices() {
        let t = builtin("torus", &[]).unwrap();
        let h = absolute_holonomy(&t);
        let (b1, b2) = h.lattice_basis.clone().unwrap();
        let mut min_sq: Option<Scalar> = None;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if a == 0 && b == 0 {
                    continue;
                }
                let v = &b1.scale(&Scalar::from_int(a)) + &b2.scale(&Scalar::from_int(b));
                let n = norm_sq(&v);
                min_sq = Some(match min_sq {
                    None => n,
                    Some(m) => m.min(n),
                });
            }
        }
        let quarter = min_sq.unwrap() / Scalar::from_int(4);
        let gens = &h.generators;
        let mut combos = vec![vec![0i64; gens.len()]];
        for i in 0..gens.len() {
            let mut next = Vec::new();
            for c in combos {
                for v in -20i64..=20 {
                    let mut c2 = c.clone();
                    c2[i] = v;
                    next.push(c2);
                }
            }
            combos = next;
        }
        for c in combos {
            let mut v = Vec2::zero();
            for (i, &n) in c.iter().enumerate() {
                v = &v + &gens[i].scale(&Scalar::from_int(n));
            }
            if !v.is_zero() {
                assert!(norm_sq(&v) > quarter);
            }
        }
    }
}
