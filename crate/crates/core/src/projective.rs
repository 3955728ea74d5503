use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::{dot, Vec4};

fn normalize(v: &Vec4) -> Option<Vec4> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inverse().ok()?;
    Some(std::array::from_fn(|i| &v[i] * &inv))
}

/// A point of `P^3` scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec4,
}

impl ProjectivePoint {
    fn key(&self) -> [String; 4] {
        std::array::from_fn(|i| self.coords[i].canonical_string())
    }
}

impl Ord for ProjectivePoint {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.key().cmp(&o.key())
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl ProjectivePoint {
    pub fn new(v: Vec4) -> Result<Self> {
        let n = normalize(&v).ok_or_else(|| Error::Verification("zero vector is not a projective point".into()))?;
        Ok(ProjectivePoint { coords: n })
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Self::new(v.map(FieldElement::from_int)).expect("nonzero integer vector")
    }

    pub fn coords(&self) -> &Vec4 {
        &self.coords
    }

    /// Index of the first nonzero coordinate (where the coordinate is 1).
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|x| x.is_one()).expect("normalized point")
    }

    pub fn float_coords(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.coords[i].to_f64())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(pretty).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.key().serialize(s)
    }
}

/// Compact display: integers and fractions bare, irrationals in canonical form.
pub fn pretty(x: &FieldElement) -> String {
    if x.is_rational() {
        let r = x.rational_part();
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    } else {
        x.canonical_string()
    }
}

/// The plane `a x + b y + c z + d w = 0`, normalized like a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Plane(ProjectivePoint);

impl Plane {
    pub fn new(coeffs: Vec4) -> Result<Self> {
        Ok(Plane(ProjectivePoint::new(coeffs)?))
    }

    /// `H_Q`: the plane whose coefficient vector is `Q`.
    pub fn dual_of(q: &ProjectivePoint) -> Self {
        Plane(q.clone())
    }

    pub fn coordinate(i: usize) -> Self {
        let mut v = [0i64; 4];
        v[i] = 1;
        Plane(ProjectivePoint::from_ints(v))
    }

    pub fn coeffs(&self) -> &Vec4 {
        self.0.coords()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        dot(self.coeffs(), p.coords()).is_zero()
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.0)
    }
}

/// Rank of a list of vectors over `K` (Gaussian elimination).
pub fn rank_of_vectors(vs: &[Vec4]) -> usize {
    let rows: Vec<Vec<FieldElement>> = vs.iter().map(|v| v.to_vec()).collect();
    crate::linalg::rank(rows, 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_scale_invariant() {
        let p = ProjectivePoint::from_ints([0, -2, 4, 2]);
        let q = ProjectivePoint::new([0, 1, -2, -1].map(FieldElement::from_int)).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.chart(), 1);
        let r = ProjectivePoint::new(std::array::from_fn(|i| &FieldElement::phi() * &FieldElement::from_int([0, -2, 4, 2][i])))
            .unwrap();
        assert_eq!(p, r);
        assert!(ProjectivePoint::new(Default::default()).is_err());
    }

    #[test]
    fn dual_plane_incidence() {
        let h = Plane::dual_of(&ProjectivePoint::from_ints([1, 1, 0, 0]));
        assert!(h.contains(&ProjectivePoint::from_ints([1, -1, 0, 0])));
        assert!(!h.contains(&ProjectivePoint::from_ints([1, 0, 0, 0])));
    }
}
