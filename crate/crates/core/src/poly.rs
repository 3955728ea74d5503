//! Sparse polynomials in four variables over [`FieldElement`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix4;

pub const NVARS: usize = 4;

/// Which four indeterminates a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarSet {
    /// `x, y, z, w`
    Xyzw,
    /// `s2, s6, s10, w`, the stabilizer invariants plus `w`.
    Stabilizer,
    /// `f2, f12, f20, f30`, the fundamental invariants.
    Fundamental,
}

impl VarSet {
    pub fn names(self) -> [&'static str; NVARS] {
        match self {
            VarSet::Xyzw => ["x", "y", "z", "w"],
            VarSet::Stabilizer => ["s2", "s6", "s10", "w"],
            VarSet::Fundamental => ["f2", "f12", "f20", "f30"],
        }
    }

    /// Degree weights: the `x,y,z,w`-degrees of the four indeterminates.
    pub fn weights(self) -> [u32; NVARS] {
        match self {
            VarSet::Xyzw => [1, 1, 1, 1],
            VarSet::Stabilizer => [2, 6, 10, 1],
            VarSet::Fundamental => [2, 12, 20, 30],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            VarSet::Xyzw => "xyzw",
            VarSet::Stabilizer => "s2s6s10w",
            VarSet::Fundamental => "f2f12f20f30",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "xyzw" => Ok(VarSet::Xyzw),
            "s2s6s10w" => Ok(VarSet::Stabilizer),
            "f2f12f20f30" => Ok(VarSet::Fundamental),
            _ => Err(Error::Parse(format!("unknown variable set `{s}`"))),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically with `x > y > z > w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn new(e: [u16; NVARS]) -> Self {
        Monomial(e)
    }

    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree in `x, y, z` only.
    pub fn affine_degree(&self) -> u32 {
        self.0[..3].iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, w: [u32; NVARS]) -> u32 {
        self.0.iter().zip(w).map(|(&e, w)| e as u32 * w).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(vars: VarSet) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: FieldElement) -> Self {
        Self::monomial(vars, Monomial::one(), c)
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, FieldElement::one())
    }

    pub fn monomial(vars: VarSet, m: Monomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { vars, terms }
    }

    pub fn var(vars: VarSet, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(i), FieldElement::one())
    }

    /// `x, y, z, w` in order.
    pub fn xyzw() -> [Polynomial; NVARS] {
        std::array::from_fn(|i| Self::var(VarSet::Xyzw, i))
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, FieldElement)>>(vars: VarSet, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * var_i`.
    pub fn linear_form(vars: VarSet, coeffs: &[FieldElement; NVARS]) -> Self {
        Self::from_terms(vars, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())))
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn weighted_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        let w = self.vars.weights();
        self.terms.keys().map(move |m| m.weighted_degree(w))
    }

    /// All monomials share one weighted degree (plain degree for `x,y,z,w`).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.weighted_degrees();
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Polynomial { vars: self.vars, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn scale_ratio(&self, n: i64, d: i64) -> Polynomial {
        self.scale(&FieldElement::from_ratio(n, d))
    }

    fn check_vars(&self, o: &Polynomial) -> Result<()> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(self.vars, o.vars))
        }
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_vars(o)?;
        Ok(self.mul_unchecked(o, None))
    }

    /// Product, keeping only monomials accepted by `keep` (used for
    /// truncated products).
    fn mul_unchecked(&self, o: &Polynomial, max_affine_degree: Option<u32>) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.vars);
        }
        let (small, large) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let mut acc: HashMap<Monomial, FieldElement> =
            HashMap::with_capacity(small.terms.len().saturating_mul(large.terms.len()).min(1 << 20));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                if let Some(k) = max_affine_degree {
                    if m.affine_degree() > k {
                        continue;
                    }
                }
                let prod = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &prod;
                    }
                }
            }
        }
        Polynomial { vars: self.vars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Product discarding every monomial of `x,y,z`-degree above `max_deg`.
    pub fn mul_truncated(&self, o: &Polynomial, max_deg: u32) -> Result<Polynomial> {
        self.check_vars(o)?;
        Ok(self.mul_unchecked(o, Some(max_deg)))
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base, None);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base, None);
            }
        }
        acc
    }

    pub fn pow_truncated(&self, mut e: u32, max_deg: u32) -> Polynomial {
        let mut base = self.truncate_affine(max_deg);
        let mut acc = Self::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base, Some(max_deg));
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base, Some(max_deg));
            }
        }
        acc
    }

    /// Drops monomials of `x,y,z`-degree above `max_deg`.
    pub fn truncate_affine(&self, max_deg: u32) -> Polynomial {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().filter(|(m, _)| m.affine_degree() <= max_deg).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn evaluate(&self, point: &[FieldElement; NVARS]) -> FieldElement {
        let mut total = FieldElement::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u32);
                }
            }
            total += &t;
        }
        total
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut r = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            r.add_term(n, &(c * &FieldElement::from_int(e as i64)));
        }
        r
    }

    /// Sum of the four unmixed second partials.
    pub fn laplacian(&self) -> Polynomial {
        let mut r = Self::zero(self.vars);
        for (m, c) in &self.terms {
            for i in 0..NVARS {
                let e = m.0[i] as i64;
                if e < 2 {
                    continue;
                }
                let mut n = *m;
                n.0[i] -= 2;
                r.add_term(n, &(c * &FieldElement::from_int(e * (e - 1))));
            }
        }
        r
    }

    /// Substitutes `w = 1` and keeps the monomials of `x,y,z`-degree `< k`.
    pub fn dehomogenize_and_truncate(&self, k: u32) -> Polynomial {
        let mut r = Self::zero(self.vars);
        for (m, c) in &self.terms {
            if m.affine_degree() < k {
                let mut n = *m;
                n.0[3] = 0;
                r.add_term(n, c);
            }
        }
        r
    }

    /// The part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// `P(images[0], .., images[3])`, evaluated by nested Horner schemes so
    /// that each intermediate result is multiplied by an image rather than
    /// by a fully expanded power product.
    pub fn compose(&self, images: &[Polynomial; NVARS]) -> Polynomial {
        let target = images[0].vars;
        let terms: Vec<(Monomial, FieldElement)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut powers: [Vec<Polynomial>; NVARS] = Default::default();
        compose_rec(&terms, 0, images, &mut powers, target)
    }

    /// `P(M * (x,y,z,w)^T)`: each variable `x_i` is replaced by
    /// `sum_j M[i][j] x_j`.
    ///
    /// Under this convention substituting `M` and then `N` equals
    /// substituting `M * N`.
    pub fn linear_substitute(&self, m: &Matrix4) -> Polynomial {
        if let Some(perm) = m.as_signed_permutation() {
            // x_i -> s_i x_{p_i}
            let mut r = Self::zero(self.vars);
            for (mono, c) in &self.terms {
                let mut e = [0u16; NVARS];
                let mut negative = false;
                for i in 0..NVARS {
                    let (j, s) = perm[i];
                    e[j] += mono.0[i];
                    if s < 0 && mono.0[i] % 2 == 1 {
                        negative = !negative;
                    }
                }
                let c = if negative { -c } else { c.clone() };
                r.add_term(Monomial(e), &c);
            }
            return r;
        }
        let images: [Polynomial; NVARS] = std::array::from_fn(|i| Self::linear_form(self.vars, &m.row(i)));
        self.compose(&images)
    }

    /// Text serialization: one `coeff * x^a y^b z^c w^d` term per line,
    /// descending graded-lex order.
    pub fn to_text(&self) -> String {
        let names = self.vars.names();
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            s.push_str(&c.canonical_string());
            s.push_str(" *");
            for i in 0..NVARS {
                s.push_str(&format!(" {}^{}", names[i], m.0[i]));
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(vars: VarSet, text: &str) -> Result<Polynomial> {
        let names = vars.names();
        let mut p = Self::zero(vars);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (c, rest) =
                line.split_once(" * ").ok_or_else(|| Error::Parse(format!("term `{line}` lacks ` * `")))?;
            let c = FieldElement::parse_canonical(c)?;
            let mut e = [0u16; NVARS];
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != NVARS {
                return Err(Error::Parse(format!("term `{line}` must list {NVARS} exponents")));
            }
            for (i, part) in parts.iter().enumerate() {
                let (n, x) = part.split_once('^').ok_or_else(|| Error::Parse(format!("bad factor `{part}`")))?;
                if n != names[i] {
                    return Err(Error::Parse(format!("expected variable `{}`, found `{n}`", names[i])));
                }
                e[i] = x.parse().map_err(|_| Error::Parse(format!("bad exponent `{x}`")))?;
            }
            let m = Monomial(e);
            if p.terms.contains_key(&m) {
                return Err(Error::Parse(format!("duplicate monomial in `{line}`")));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }
}

fn compose_rec(
    terms: &[(Monomial, FieldElement)],
    var: usize,
    images: &[Polynomial; NVARS],
    powers: &mut [Vec<Polynomial>; NVARS],
    target: VarSet,
) -> Polynomial {
    if var == NVARS {
        let c = terms.iter().map(|(_, c)| c.clone()).sum();
        return Polynomial::constant(target, c);
    }
    // group by exponent of `var`, descending
    let mut groups: BTreeMap<u16, Vec<(Monomial, FieldElement)>> = BTreeMap::new();
    for (m, c) in terms {
        groups.entry(m.0[var]).or_default().push((*m, c.clone()));
    }
    let mut acc: Option<Polynomial> = None;
    let mut prev: u16 = 0;
    for (&e, group) in groups.iter().rev() {
        let inner = compose_rec(group, var + 1, images, powers, target);
        acc = Some(match acc {
            None => inner,
            Some(a) => {
                let gap = (prev - e) as usize;
                let step = power_of(images, powers, var, gap);
                a.mul_unchecked(&step, None).checked_add(&inner).expect("same variable set")
            }
        });
        prev = e;
    }
    let acc = acc.unwrap_or_else(|| Polynomial::zero(target));
    if prev > 0 {
        let step = power_of(images, powers, var, prev as usize);
        acc.mul_unchecked(&step, None)
    } else {
        acc
    }
}

fn power_of(images: &[Polynomial; NVARS], powers: &mut [Vec<Polynomial>; NVARS], var: usize, e: usize) -> Polynomial {
    let cache = &mut powers[var];
    if cache.is_empty() {
        cache.push(Polynomial::one(images[var].vars));
    }
    while cache.len() <= e {
        let next = cache.last().unwrap().mul_unchecked(&images[var], None);
        cache.push(next);
    }
    cache[e].clone()
}

impl fmt::Display for Polynomial {
    /// Human-readable form, leading term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = if c.is_rational() {
                let r = c.rational_part();
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            } else {
                format!("({})", c.canonical_string())
            };
            let mut factors = Vec::new();
            for i in 0..NVARS {
                match m.0[i] {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    e => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                f.write_str(&cs)?;
            } else if c.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", cs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &'a Polynomial) -> Polynomial {
        self.checked_add(o).expect("variable set mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &'a Polynomial) -> Polynomial {
        self.checked_add(&-o).expect("variable set mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &'a Polynomial) -> Polynomial {
        self.checked_mul(o).expect("variable set mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &'a Polynomial) -> Polynomial {
                (&self).$m(o)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                self.$m(&o)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Builds an `x,y,z,w` polynomial from `(coeff, [a,b,c,d])` integer pairs.
pub fn poly_from_ints(vars: VarSet, terms: &[(i64, [u16; NVARS])]) -> Polynomial {
    Polynomial::from_terms(vars, terms.iter().map(|(c, e)| (Monomial(*e), FieldElement::from_int(*c))))
}

/// Monomials of total degree `d` in `n` variables (the rest zero), ascending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u16; NVARS], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    assert!((1..=NVARS).contains(&n));
    let mut out = Vec::new();
    rec(n, 0, d, &mut [0; NVARS], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::h4_generators;
    use proptest::prelude::*;

    fn x() -> [Polynomial; 4] {
        Polynomial::xyzw()
    }

    fn f2() -> Polynomial {
        let [x, y, z, w] = x();
        &(&(&x * &x) + &(&y * &y)) + &(&(&z * &z) + &(&w * &w))
    }

    fn arb_poly(max_terms: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-5i64..=5, prop::array::uniform4(0..=max_exp)), 0..=max_terms).prop_map(|ts| {
            Polynomial::from_terms(VarSet::Xyzw, ts.into_iter().map(|(c, e)| (Monomial(e), FieldElement::from_int(c))))
        })
    }

    fn arb_homogeneous(max_terms: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
        let monos = monomials_of_degree(4, deg);
        let n = monos.len();
        prop::collection::vec((-4i64..=4, 0..n), 0..=max_terms).prop_map(move |ts| {
            Polynomial::from_terms(VarSet::Xyzw, ts.into_iter().map(|(c, i)| (monos[i], FieldElement::from_int(c))))
        })
    }

    #[test]
    fn basic_products() {
        let [x, y, _, _] = x();
        assert_eq!(&(&x + &y) * &(&x - &y), &(&x * &x) - &(&y * &y));
        let sq = f2().pow(2);
        assert_eq!(sq.coeff(&Monomial([2, 2, 0, 0])), FieldElement::from_int(2));
        assert_eq!(sq.coeff(&Monomial([4, 0, 0, 0])), FieldElement::one());
        assert_eq!(&f2() * &Polynomial::one(VarSet::Xyzw), f2());
    }

    #[test]
    fn mixed_variable_sets_are_rejected() {
        let a = Polynomial::var(VarSet::Xyzw, 0);
        let b = Polynomial::var(VarSet::Stabilizer, 0);
        assert!(matches!(a.checked_mul(&b), Err(Error::VarSetMismatch(..))));
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(f2().laplacian(), Polynomial::constant(VarSet::Xyzw, FieldElement::from_int(8)));
        let [x, _, _, _] = x();
        assert_eq!(x.pow(3).laplacian(), x.scale(&FieldElement::from_int(6)));
    }

    #[test]
    fn dehomogenize_examples() {
        assert_eq!(f2().dehomogenize_and_truncate(1), Polynomial::one(VarSet::Xyzw));
        assert!(f2().dehomogenize_and_truncate(0).is_zero());
        let t = f2().dehomogenize_and_truncate(3);
        assert_eq!(t.num_terms(), 4);
    }

    #[test]
    fn substitution_examples() {
        let g = h4_generators();
        let [x, _, z, _] = x();
        assert_eq!(x.linear_substitute(&g[3]), -&z);
        assert_eq!(f2().linear_substitute(&Matrix4::identity()), f2());
        for m in &g {
            assert_eq!(f2().linear_substitute(m), f2());
        }
        let flip = Matrix4::diagonal([-1, 1, 1, 1]);
        assert_eq!(f2().linear_substitute(&flip), f2());
    }

    #[test]
    fn substitution_composes_as_product() {
        let g = h4_generators();
        let p = poly_from_ints(VarSet::Xyzw, &[(1, [3, 1, 0, 0]), (-2, [0, 1, 2, 1]), (5, [1, 0, 0, 3])]);
        for a in &g {
            for b in &g {
                let lhs = p.linear_substitute(a).linear_substitute(b);
                assert_eq!(lhs, p.linear_substitute(&a.mul(b)));
            }
        }
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let p = &f2().pow(2) - &Polynomial::var(VarSet::Xyzw, 0).scale(&FieldElement::phi());
        assert_eq!(Polynomial::from_text(VarSet::Xyzw, &p.to_text()).unwrap(), p);
        assert!(Polynomial::from_text(VarSet::Xyzw, "1/1+0/1*c * x^1 y^0 z^0").is_err());
        assert!(Polynomial::from_text(VarSet::Xyzw, "1/1+0/1*c * x^1 y^0 q^0 w^0").is_err());
        assert!(Polynomial::from_text(VarSet::Xyzw, "1/1+0/1*c x^1 y^0 z^0 w^0").is_err());
    }

    #[test]
    fn weighted_homogeneity() {
        let s = poly_from_ints(VarSet::Stabilizer, &[(3, [1, 0, 1, 0]), (-5, [0, 2, 0, 0])]);
        assert!(s.is_homogeneous());
        let t = poly_from_ints(VarSet::Stabilizer, &[(1, [3, 0, 0, 0]), (1, [0, 1, 0, 0]), (1, [0, 0, 0, 6])]);
        assert!(t.is_homogeneous());
        assert!(!poly_from_ints(VarSet::Xyzw, &[(1, [2, 0, 0, 0]), (1, [0, 1, 0, 0])]).is_homogeneous());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(4, 7).len(), 120);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(p in arb_poly(5, 3), q in arb_poly(5, 3), r in arb_poly(4, 2)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
            prop_assert_eq!(p.pow(3), &(&p * &p) * &p);
        }

        #[test]
        fn substitution_is_ring_homomorphism(p in arb_poly(4, 3), q in arb_poly(4, 3), k in 0usize..4) {
            let m = &h4_generators()[k];
            let lhs = (&p * &q).linear_substitute(m);
            let rhs = &p.linear_substitute(m) * &q.linear_substitute(m);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn laplacian_product_rule(p in arb_homogeneous(4, 3), q in arb_homogeneous(4, 2)) {
            let lhs = (&p * &q).laplacian();
            let mut grad = Polynomial::zero(VarSet::Xyzw);
            for i in 0..4 {
                grad = &grad + &(&p.derivative(i) * &q.derivative(i));
            }
            let rhs = &(&(&p * &q.laplacian()) + &(&q * &p.laplacian())) + &grad.scale(&FieldElement::from_int(2));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_roundtrip(p in arb_poly(8, 4)) {
            prop_assert_eq!(Polynomial::from_text(VarSet::Xyzw, &p.to_text()).unwrap(), p);
        }
    }
}
