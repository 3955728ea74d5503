use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;

pub type Vec4 = [FieldElement; 4];

/// A 4x4 matrix over `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix4 {
    e: [[FieldElement; 4]; 4],
}

impl Matrix4 {
    pub fn new(e: [[FieldElement; 4]; 4]) -> Self {
        Matrix4 { e }
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Matrix4 { e: rows.map(|r| r.map(FieldElement::from_int)) }
    }

    pub fn identity() -> Self {
        Self::diagonal([1, 1, 1, 1])
    }

    pub fn diagonal(d: [i64; 4]) -> Self {
        let mut e: [[FieldElement; 4]; 4] = Default::default();
        for i in 0..4 {
            e[i][i] = FieldElement::from_int(d[i]);
        }
        Matrix4 { e }
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.e[i][j]
    }

    pub fn row(&self, i: usize) -> Vec4 {
        self.e[i].clone()
    }

    pub fn column(&self, j: usize) -> Vec4 {
        std::array::from_fn(|i| self.e[i][j].clone())
    }

    pub fn rows(&self) -> &[[FieldElement; 4]; 4] {
        &self.e
    }

    pub fn mul(&self, o: &Matrix4) -> Matrix4 {
        let mut r: [[FieldElement; 4]; 4] = Default::default();
        for i in 0..4 {
            for k in 0..4 {
                let a = &self.e[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..4 {
                    let b = &o.e[k][j];
                    if !b.is_zero() {
                        r[i][j] += &(a * b);
                    }
                }
            }
        }
        Matrix4 { e: r }
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        std::array::from_fn(|i| {
            let mut s = FieldElement::zero();
            for j in 0..4 {
                if !self.e[i][j].is_zero() && !v[j].is_zero() {
                    s += &(&self.e[i][j] * &v[j]);
                }
            }
            s
        })
    }

    pub fn transpose(&self) -> Matrix4 {
        Matrix4 { e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].clone())) }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix4 {
        Matrix4 { e: self.e.clone().map(|r| r.map(|x| &x * c)) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// When every row has one nonzero entry equal to `+-1`, returns
    /// `(column, sign)` per row.
    pub fn as_signed_permutation(&self) -> Option<[(usize, i8); 4]> {
        let one = FieldElement::one();
        let minus = -&one;
        let mut out = [(0usize, 1i8); 4];
        for i in 0..4 {
            let mut found = None;
            for j in 0..4 {
                let x = &self.e[i][j];
                if x.is_zero() {
                    continue;
                }
                if found.is_some() {
                    return None;
                }
                if *x == one {
                    found = Some((j, 1));
                } else if *x == minus {
                    found = Some((j, -1));
                } else {
                    return None;
                }
            }
            out[i] = found?;
        }
        Some(out)
    }

    /// Cofactor expansion along the first row.
    pub fn determinant(&self) -> FieldElement {
        let m = &self.e;
        let det3 = |c: [usize; 3]| -> FieldElement {
            let a = |r: usize, k: usize| &m[r][c[k]];
            &(&(a(1, 0) * &(&(a(2, 1) * a(3, 2)) - &(a(2, 2) * a(3, 1))))
                - &(a(1, 1) * &(&(a(2, 0) * a(3, 2)) - &(a(2, 2) * a(3, 0)))))
                + &(a(1, 2) * &(&(a(2, 0) * a(3, 1)) - &(a(2, 1) * a(3, 0))))
        };
        let mut d = FieldElement::zero();
        for j in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&k| k != j).collect();
            let t = &m[0][j] * &det3([cols[0], cols[1], cols[2]]);
            if j % 2 == 0 {
                d += &t;
            } else {
                d -= &t;
            }
        }
        d
    }

    /// Sixteen canonical field strings, row-major, tab-separated.
    pub fn canonical_string(&self) -> String {
        self.e.iter().flatten().map(FieldElement::canonical_string).collect::<Vec<_>>().join("\t")
    }

    pub fn parse_canonical(s: &str) -> Result<Matrix4> {
        let parts: Vec<&str> = s.trim_end_matches(['\n', '\r']).split('\t').collect();
        if parts.len() != 16 {
            return Err(Error::Parse(format!("matrix line has {} fields, expected 16", parts.len())));
        }
        let mut e: [[FieldElement; 4]; 4] = Default::default();
        for (k, p) in parts.iter().enumerate() {
            e[k / 4][k % 4] = FieldElement::parse_canonical(p)?;
        }
        Ok(Matrix4 { e })
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.e {
            let row: Vec<String> = r.iter().map(|x| x.canonical_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn vec_from_ints(v: [i64; 4]) -> Vec4 {
    v.map(FieldElement::from_int)
}

pub fn dot(a: &Vec4, b: &Vec4) -> FieldElement {
    let mut s = FieldElement::zero();
    for i in 0..4 {
        if !a[i].is_zero() && !b[i].is_zero() {
            s += &(&a[i] * &b[i]);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_roundtrip() {
        let m = Matrix4::from_ints([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
            .scale(&FieldElement::phi());
        assert_eq!(Matrix4::parse_canonical(&m.canonical_string()).unwrap(), m);
        assert!(Matrix4::parse_canonical("1/1+0/1*c").is_err());
    }

    #[test]
    fn determinant_of_permutation() {
        let m = Matrix4::from_ints([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]);
        assert_eq!(m.determinant(), FieldElement::one());
        assert_eq!(Matrix4::diagonal([-1, 1, 1, 1]).determinant(), FieldElement::from_int(-1));
        assert_eq!(Matrix4::diagonal([2, 3, 1, 1]).determinant(), FieldElement::from_int(6));
    }
}
