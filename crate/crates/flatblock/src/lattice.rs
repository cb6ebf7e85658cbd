//! Exact Z-module computations: ranks over Q and Hermite-style bases for
//! subgroups of the plane generated by finitely many rational vectors.

use crate::exactnum::{Rational, Scalar, Vec2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Hermite normal form of the row span; returns the nonzero rows.
pub(crate) fn hnf_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for (r, row) in rows.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if rows[r][col].abs() < rows[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                for c in 0..cols {
                    let sub = &q * &rows[pivot_row][c];
                    rows[r][c] = &rows[r][c] - sub;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[pivot_row][col].is_negative() {
                    for c in 0..cols {
                        rows[pivot_row][c] = -rows[pivot_row][c].clone();
                    }
                }
                // reduce entries above the pivot
                for r in 0..pivot_row {
                    if rows[r][col].is_zero() {
                        continue;
                    }
                    let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                    for c in 0..cols {
                        let sub = &q * &rows[pivot_row][c];
                        rows[r][c] = &rows[r][c] - sub;
                    }
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Z-basis of the Z-span of rational row vectors.
pub(crate) fn z_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::from(1);
    for row in rows {
        for v in row {
            lcm = lcm.lcm(v.denom());
        }
    }
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect();
    hnf_rows(int_rows)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|n| Rational::new(n, lcm.clone()))
                .collect()
        })
        .collect()
}

/// Rank over Q of rational row vectors (equals the rank over Z).
pub(crate) fn q_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut rank = 0usize;
    let cols = m.first().map_or(0, |r| r.len());
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..cols {
                let sub = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank over Q(sqrt(d)) of a list of planar field vectors.
pub(crate) fn field_rank(vectors: &[Vec2]) -> usize {
    let mut rank = 0usize;
    let mut first: Option<Vec2> = None;
    for v in vectors {
        if v.is_zero() {
            continue;
        }
        match &first {
            None => {
                first = Some(v.clone());
                rank = 1;
            }
            Some(u) => {
                if !crate::exactnum::cross(u, v).is_zero() {
                    return 2;
                }
            }
        }
    }
    rank
}

/// Flatten a field vector into the rational coordinates (a_x, b_x, a_y, b_y).
pub(crate) fn flatten(v: &Vec2) -> Vec<Rational> {
    vec![
        v.x.rational_part().clone(),
        v.x.sqrt_part().clone(),
        v.y.rational_part().clone(),
        v.y.sqrt_part().clone(),
    ]
}

/// Z-basis of the planar lattice generated by rational vectors, if rank 2.
pub(crate) fn planar_lattice_basis(generators: &[Vec2]) -> Option<(Vec2, Vec2)> {
    let rows: Vec<Vec<Rational>> = generators
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| -> Option<Vec<Rational>> {
            Some(vec![
                v.x.as_rational()?.clone(),
                v.y.as_rational()?.clone(),
            ])
        })
        .collect::<Option<Vec<Vec<Rational>>>>()?;
    let basis = z_basis(&rows);
    if basis.len() != 2 {
        return None;
    }
    let to_vec2 = |row: &Vec<Rational>| {
        Vec2::new(
            Scalar::from_rational(row[0].clone()),
            Scalar::from_rational(row[1].clone()),
        )
    };
    Some((to_vec2(&basis[0]), to_vec2(&basis[1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::from_ints(x, y)
    }

    #[test]
    fn hnf_of_staircase_cycles() {
        let gens = vec![v(2, 0), v(0, 2), v(3, 3), v(-3, -1)];
        let (b1, b2) = planar_lattice_basis(&gens).unwrap();
        // covolume 2
        let cv = crate::exactnum::cross(&b1, &b2).abs();
        assert_eq!(cv, Scalar::from_int(2));
        // (1,1) is in the lattice, (1,0) is not
        let rows = vec![
            vec![rat(2, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ];
        let z = z_basis(&rows);
        assert_eq!(z.len(), 2);
    }

    #[test]
    fn q_rank_counts() {
        let rows = vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(2, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 2), rat(0, 1)],
        ];
        assert_eq!(q_rank(&rows), 2);
    }

    #[test]
    fn field_rank_collinear_irrationals() {
        // (1,0) and (phi,0): field rank 1 even though Z-rank is 2
        let phi = Scalar::new(rat(1, 2), rat(1, 2), 5);
        let u = Vec2::new(Scalar::one(), Scalar::zero());
        let w = Vec2::new(phi, Scalar::zero());
        assert_eq!(field_rank(&[u.clone(), w.clone()]), 1);
        let rows = vec![flatten(&u), flatten(&w)];
        assert_eq!(q_rank(&rows), 2);
    }
}
