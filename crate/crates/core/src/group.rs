//! Finite matrix groups generated by 4x4 matrices over `K`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::{Matrix4, Vec4};
use crate::poly::{Polynomial, NVARS};
use crate::projective::ProjectivePoint;

pub const H4_ORDER: usize = 14_400;
pub const F4_ORDER: usize = 1_152;
pub const STABILIZER_ORDER: usize = 120;

/// Generators of `W(H4)`. The first three fix `p = (0,0,0,1)` and generate
/// its stabilizer.
pub fn h4_generators() -> [Matrix4; 4] {
    let phi = FieldElement::phi();
    let one = FieldElement::one();
    let zero = FieldElement::zero();
    let two = FieldElement::from_int(2);
    let half = FieldElement::from_ratio(1, 2);
    let pm1 = &phi - &one;
    let icosa = Matrix4::new([
        [phi.clone(), pm1.clone(), -&one, zero.clone()],
        [pm1.clone(), one.clone(), phi.clone(), zero.clone()],
        [-&one, phi.clone(), &one - &phi, zero.clone()],
        [zero.clone(), zero.clone(), zero, two],
    ])
    .scale(&half);
    [
        Matrix4::diagonal([-1, 1, 1, 1]),
        Matrix4::diagonal([1, -1, 1, 1]),
        icosa,
        Matrix4::from_ints([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
    ]
}

/// Generators of `W(F4)`, the reflections in the roots over `P8, P12, P16, P21`.
pub fn f4_generators() -> [Matrix4; 4] {
    let half = FieldElement::from_ratio(1, 2);
    [
        Matrix4::from_ints([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
        Matrix4::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        Matrix4::diagonal([1, 1, 1, -1]),
        Matrix4::from_ints([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]).scale(&half),
    ]
}

/// The point `p = (0,0,0,1)`.
pub fn base_point() -> Vec4 {
    [FieldElement::zero(), FieldElement::zero(), FieldElement::zero(), FieldElement::one()]
}

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<Matrix4>,
    elements: Vec<Matrix4>,
    index: HashMap<Matrix4, usize>,
}

impl MatrixGroup {
    /// Breadth-first closure from the identity under left multiplication by
    /// the generators. Fails once more than `cap` elements appear.
    pub fn generate_closure(generators: &[Matrix4], cap: usize) -> Result<Self> {
        let id = Matrix4::identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = g.mul(&elements[i]);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
        Ok(MatrixGroup { generators: generators.to_vec(), elements, index })
    }

    /// Rebuilds a group from a stored element list, checking that it contains
    /// the identity and the generators and is closed under them.
    pub fn from_elements(generators: Vec<Matrix4>, elements: Vec<Matrix4>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Verification(format!("duplicate group element at position {i}")));
            }
        }
        let g = MatrixGroup { generators, elements, index };
        if !g.contains(&Matrix4::identity()) || !g.generators.iter().all(|s| g.contains(s)) {
            return Err(Error::Verification("stored group lacks identity or a generator".into()));
        }
        if !g.closed_under_generators() {
            return Err(Error::Verification("stored group is not closed under its generators".into()));
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::generate_closure(&[], 1).expect("trivial group")
    }

    pub fn w_h4() -> Result<Self> {
        Self::generate_closure(&h4_generators(), H4_ORDER)
    }

    pub fn w_f4() -> Result<Self> {
        Self::generate_closure(&f4_generators(), F4_ORDER)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix4] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix4] {
        &self.generators
    }

    pub fn contains(&self, m: &Matrix4) -> bool {
        self.index.contains_key(m)
    }

    /// `s * g` lies in the group for every element `g` and generator `s`;
    /// for a finite set containing the identity this is equivalent to being
    /// the subgroup the generators span.
    pub fn closed_under_generators(&self) -> bool {
        self.elements.iter().all(|g| self.generators.iter().all(|s| self.contains(&s.mul(g))))
    }

    /// Elements fixing `v` as a vector. Generators of the result are chosen
    /// greedily from the element list.
    pub fn stabilizer(&self, v: &Vec4) -> MatrixGroup {
        let fixing: Vec<Matrix4> = self.elements.iter().filter(|g| g.mul_vec(v) == *v).cloned().collect();
        let mut gens: Vec<Matrix4> = Vec::new();
        let mut span: HashSet<Matrix4> = HashSet::from([Matrix4::identity()]);
        for g in &fixing {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let sub = MatrixGroup::generate_closure(&gens, fixing.len()).expect("subgroup of a finite group");
            span = sub.elements.into_iter().collect();
            if span.len() == fixing.len() {
                break;
            }
        }
        let mut sub = MatrixGroup::generate_closure(&gens, fixing.len().max(1)).expect("subgroup of a finite group");
        sub.generators = gens;
        sub
    }

    /// The affine orbit `{g v}`, in element order.
    pub fn orbit(&self, v: &Vec4) -> Vec<Vec4> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &self.elements {
            let w = g.mul_vec(v);
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
        out
    }

    /// Distinct projective images of `v`, sorted.
    pub fn orbit_projective(&self, v: &Vec4) -> Result<Vec<ProjectivePoint>> {
        let mut pts: Vec<ProjectivePoint> =
            self.orbit(v).into_iter().map(ProjectivePoint::new).collect::<Result<HashSet<_>>>()?.into_iter().collect();
        pts.sort();
        Ok(pts)
    }

    /// `(1/|G|) sum_g f(g v)`.
    ///
    /// The substitution only reads the rows of `g` belonging to variables
    /// that occur in `f`, so elements are first bucketed by those rows and
    /// each bucket is substituted once with its multiplicity.
    pub fn reynolds(&self, f: &Polynomial) -> Polynomial {
        let used: Vec<usize> = (0..NVARS).filter(|&i| f.terms().any(|(m, _)| m.0[i] > 0)).collect();
        let mut buckets: HashMap<Vec<Vec4>, (usize, usize)> = HashMap::new();
        let mut order = Vec::new();
        for (k, g) in self.elements.iter().enumerate() {
            let key: Vec<Vec4> = used.iter().map(|&i| g.row(i)).collect();
            let e = buckets.entry(key).or_insert_with(|| {
                order.push(k);
                (k, 0)
            });
            e.1 += 1;
        }
        let counts: HashMap<usize, usize> = buckets.into_values().collect();
        let parts: Vec<Polynomial> = order
            .par_iter()
            .map(|&k| f.linear_substitute(&self.elements[k]).scale(&FieldElement::from_int(counts[&k] as i64)))
            .collect();
        let mut sum = Polynomial::zero(f.vars());
        for p in &parts {
            sum = &sum + p;
        }
        sum.scale(&FieldElement::from_ratio(1, self.order() as i64))
    }

    /// `f` is fixed by every generator, hence by the whole group.
    pub fn is_invariant(&self, f: &Polynomial) -> bool {
        self.generators.iter().all(|g| f.linear_substitute(g) == *f)
    }

    /// Canonical keys of all elements, for comparing two groups as sets.
    pub fn element_set(&self) -> HashSet<String> {
        self.elements.iter().map(Matrix4::canonical_string).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, VarSet};

    #[test]
    fn generators_are_orthogonal_involutions_or_rotations() {
        for g in h4_generators().iter().chain(f4_generators().iter()) {
            assert!(g.mul(&g.transpose()).is_identity(), "{g}");
        }
    }

    #[test]
    fn first_three_h4_generators_give_order_120() {
        let gens = h4_generators();
        let g = MatrixGroup::generate_closure(&gens[..3], 200).unwrap();
        assert_eq!(g.order(), STABILIZER_ORDER);
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let gens = h4_generators();
        assert!(matches!(MatrixGroup::generate_closure(&gens[..3], 100), Err(Error::CapExceeded { cap: 100 })));
        // an element of infinite order
        let shear = Matrix4::from_ints([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(MatrixGroup::generate_closure(&[shear], 50).is_err());
    }

    #[test]
    fn f4_group_and_orbits() {
        let g = MatrixGroup::w_f4().unwrap();
        assert_eq!(g.order(), F4_ORDER);
        let o1 = g.orbit_projective(&ProjectivePoint::from_ints([1, 1, 0, 0]).coords().clone()).unwrap();
        let o2 = g.orbit_projective(&ProjectivePoint::from_ints([1, 0, 0, 0]).coords().clone()).unwrap();
        assert_eq!(o1.len(), 12);
        assert_eq!(o2.len(), 12);
        for p in &o1 {
            // (+-1:1:0:0) and permutations: exactly two zero coordinates
            assert_eq!(p.coords().iter().filter(|x| x.is_zero()).count(), 2);
        }
    }

    #[test]
    fn trivial_group_stabilizer() {
        let t = MatrixGroup::trivial();
        assert_eq!(t.order(), 1);
        assert_eq!(t.stabilizer(&base_point()).order(), 1);
    }

    #[test]
    fn reynolds_on_f4() {
        let g = MatrixGroup::w_f4().unwrap();
        let x = Polynomial::var(VarSet::Xyzw, 0);
        assert!(g.reynolds(&x).is_zero());
        let r = g.reynolds(&x.pow(2));
        // (x^2+y^2+z^2+w^2)/4
        for i in 0..4 {
            let mut e = [0; 4];
            e[i] = 2;
            assert_eq!(r.coeff(&Monomial(e)), FieldElement::from_ratio(1, 4));
        }
        assert_eq!(r.num_terms(), 4);
        let r4 = g.reynolds(&x.pow(4));
        assert!(g.is_invariant(&r4));
        assert_eq!(g.reynolds(&r4), r4);
    }
}
