//! Exact linear algebra over `K`.
//!
//! Elimination picks, in each column, the nonzero entry of smallest bit
//! height as pivot, which keeps coefficient growth in check.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::FieldElement;

pub type Row = Vec<FieldElement>;

fn eliminate(rows: &mut Vec<Row>, ncols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let best = (top..rows.len()).filter(|&r| !rows[r][col].is_zero()).min_by_key(|&r| rows[r][col].height());
        let Some(p) = best else { continue };
        rows.swap(top, p);
        let inv = rows[top][col].inverse().expect("nonzero pivot");
        let pivot_row: Row = rows[top].iter().map(|x| x * &inv).collect();
        for r in top + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    let t = &f * &pivot_row[c];
                    rows[r][c] -= &t;
                }
            }
        }
        rows[top] = pivot_row;
        pivots.push((top, col));
        top += 1;
    }
    pivots
}

pub fn rank(mut rows: Vec<Row>, ncols: usize) -> usize {
    eliminate(&mut rows, ncols).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows.
pub fn nullspace(mut rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let pivots = eliminate(&mut rows, ncols);
    // back-substitute to reduced row echelon form
    for k in (0..pivots.len()).rev() {
        let (pr, pc) = pivots[k];
        for &(r, _) in &pivots[..k] {
            if rows[r][pc].is_zero() {
                continue;
            }
            let f = rows[r][pc].clone();
            for c in pc..ncols {
                if !rows[pr][c].is_zero() {
                    let t = &f * &rows[pr][c];
                    rows[r][c] -= &t;
                }
            }
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![FieldElement::zero(); ncols];
        v[free] = FieldElement::one();
        for &(r, c) in &pivots {
            v[c] = -&rows[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Solves `sum_j x_j columns[j] = target`; `None` when inconsistent.
/// The solution is unique when the columns are independent.
pub fn solve_columns(columns: &[Row], target: &Row) -> Option<Row> {
    let n = columns.len();
    let m = target.len();
    let mut rows: Vec<Row> = (0..m)
        .map(|i| {
            let mut r: Row = columns.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut rows, n + 1);
    if pivots.iter().any(|&(_, c)| c == n) {
        return None;
    }
    let mut x = vec![FieldElement::zero(); n];
    for &(r, c) in pivots.iter().rev() {
        let mut v = rows[r][n].clone();
        for j in c + 1..n {
            if !rows[r][j].is_zero() && !x[j].is_zero() {
                v -= &(&rows[r][j] * &x[j]);
            }
        }
        x[c] = v;
    }
    Some(x)
}

/// Row space built one row at a time; reports whether each row was new.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    ncols: usize,
    // (pivot column, row normalized to 1 at the pivot)
    basis: Vec<(usize, Row)>,
}

impl IncrementalEchelon {
    pub fn new(ncols: usize) -> Self {
        IncrementalEchelon { ncols, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ncols
    }

    pub fn insert(&mut self, mut row: Row) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        for (pc, b) in &self.basis {
            if row[*pc].is_zero() {
                continue;
            }
            let f = row[*pc].clone();
            for c in 0..self.ncols {
                if !b[c].is_zero() {
                    let t = &f * &b[c];
                    row[c] -= &t;
                }
            }
        }
        let Some(pc) = (0..self.ncols).filter(|&c| !row[c].is_zero()).min_by_key(|&c| row[c].height()) else {
            return false;
        };
        let inv = row[pc].inverse().expect("nonzero");
        let row: Row = row.iter().map(|x| x * &inv).collect();
        // keep the basis reduced at every pivot column
        for (_, b) in self.basis.iter_mut() {
            if b[pc].is_zero() {
                continue;
            }
            let f = b[pc].clone();
            for c in 0..self.ncols {
                if !row[c].is_zero() {
                    let t = &f * &row[c];
                    b[c] -= &t;
                }
            }
        }
        self.basis.push((pc, row));
        true
    }
}

/// The Mersenne prime `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Reduction of a rational entry modulo [`MODULUS`]; `None` for irrational
/// entries or denominators divisible by the modulus.
pub fn reduce_mod(x: &FieldElement) -> Option<u64> {
    if !x.is_rational() {
        return None;
    }
    let r = x.rational_part();
    let p = num_bigint::BigInt::from(MODULUS);
    let n = r.numer().mod_floor(&p).to_u64()?;
    let d = r.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, MODULUS - 2)))
}

/// Rank over `Z/(2^61-1)`. For a rational matrix this is a lower bound on
/// the rank over `Q`, and equality with the column count certifies full
/// column rank exactly (a nonzero maximal minor mod p is nonzero over `Q`).
pub fn rank_mod_p(rows: &[Vec<u64>], ncols: usize) -> usize {
    let mut rows: Vec<Vec<u64>> = rows.to_vec();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(top, p);
        let inv = powmod(rows[top][col], MODULUS - 2);
        for c in col..ncols {
            rows[top][c] = mulmod(rows[top][c], inv);
        }
        let pivot = rows[top].clone();
        for r in rows.iter_mut().skip(top + 1) {
            let f = r[col];
            if f == 0 {
                continue;
            }
            for c in col..ncols {
                if pivot[c] != 0 {
                    r[c] = (r[c] + MODULUS - mulmod(f, pivot[c])) % MODULUS;
                }
            }
        }
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    top
}

/// Exact rank, taking the modular shortcut whenever it already certifies
/// full column rank.
pub fn rank_exact(rows: Vec<Row>, ncols: usize) -> usize {
    if rows.len() >= ncols {
        let reduced: Option<Vec<Vec<u64>>> = rows.iter().map(|r| r.iter().map(reduce_mod).collect()).collect();
        if let Some(m) = reduced {
            if rank_mod_p(&m, ncols) == ncols {
                return ncols;
            }
        }
    }
    rank(rows, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]), 3), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]]), 2), 0);
        assert_eq!(rank_exact(m(&[&[1, 0], &[0, 1], &[1, 1]]), 2), 2);
        assert_eq!(rank_exact(m(&[&[1, 1], &[2, 2], &[3, 3]]), 2), 1);
    }

    #[test]
    fn irrational_rank() {
        let phi = FieldElement::phi();
        let one = FieldElement::one();
        // rows (1, phi) and (phi, phi + 1) are dependent since phi^2 = phi + 1
        let rows = vec![vec![one.clone(), phi.clone()], vec![phi.clone(), &phi + &one]];
        assert_eq!(rank(rows, 2), 1);
        let rows = vec![vec![one.clone(), phi.clone()], vec![phi.clone(), one.clone()]];
        assert_eq!(rank_exact(rows, 2), 2);
    }

    #[test]
    fn nullspace_annihilates() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ns = nullspace(a.clone(), 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &a {
                let s: FieldElement = r.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn solve_and_inconsistency() {
        let cols = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve_columns(&cols, &m(&[&[2, 3, 5]])[0]).unwrap();
        assert_eq!(x, m(&[&[2, 3]])[0]);
        assert!(solve_columns(&cols, &m(&[&[2, 3, 6]])[0]).is_none());
    }

    #[test]
    fn incremental_matches_batch() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4], &[5, 0, 0]]);
        let mut e = IncrementalEchelon::new(3);
        let ranks: Vec<usize> = a
            .iter()
            .map(|r| {
                e.insert(r.clone());
                e.rank()
            })
            .collect();
        assert_eq!(ranks, vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn modular_reduction_of_fractions() {
        let half = FieldElement::from_ratio(1, 2);
        let two = reduce_mod(&FieldElement::from_int(2)).unwrap();
        assert_eq!(mulmod(reduce_mod(&half).unwrap(), two), 1);
        assert_eq!(reduce_mod(&FieldElement::from_int(-1)).unwrap(), MODULUS - 1);
        assert!(reduce_mod(&FieldElement::phi()).is_none());
    }
}
