//! The fundamental and derived `W(H4)`-invariants, vanishing orders,
//! leading forms at `p = (0:0:0:1)`, and the stabilizer invariants
//! `s2, s6, s10`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::field::FieldElement;
use crate::group::MatrixGroup;
use crate::linalg;
use crate::matrix::{Matrix4, Vec4};
use crate::poly::{monomials_of_degree, poly_from_ints, Monomial, Polynomial, VarSet, NVARS};
use crate::projective::ProjectivePoint;

/// `x^2 + y^2 + z^2 + w^2`.
pub fn f2() -> Polynomial {
    poly_from_ints(VarSet::Xyzw, &[(1, [2, 0, 0, 0]), (1, [0, 2, 0, 0]), (1, [0, 0, 2, 0]), (1, [0, 0, 0, 2])])
}

/// The twelve named invariants: the four fundamental ones and eight
/// polynomial combinations of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum InvariantName {
    F2,
    F12,
    F20,
    F24,
    F30,
    F32,
    F36,
    F42,
    F44,
    F54,
    F60,
    F66,
}

impl InvariantName {
    pub const ALL: [InvariantName; 12] = [
        InvariantName::F2,
        InvariantName::F12,
        InvariantName::F20,
        InvariantName::F24,
        InvariantName::F30,
        InvariantName::F32,
        InvariantName::F36,
        InvariantName::F42,
        InvariantName::F44,
        InvariantName::F54,
        InvariantName::F60,
        InvariantName::F66,
    ];

    pub const DERIVED: [InvariantName; 8] = [
        InvariantName::F24,
        InvariantName::F32,
        InvariantName::F36,
        InvariantName::F42,
        InvariantName::F44,
        InvariantName::F54,
        InvariantName::F60,
        InvariantName::F66,
    ];

    pub fn degree(self) -> u32 {
        match self {
            InvariantName::F2 => 2,
            InvariantName::F12 => 12,
            InvariantName::F20 => 20,
            InvariantName::F24 => 24,
            InvariantName::F30 => 30,
            InvariantName::F32 => 32,
            InvariantName::F36 => 36,
            InvariantName::F42 => 42,
            InvariantName::F44 => 44,
            InvariantName::F54 => 54,
            InvariantName::F60 => 60,
            InvariantName::F66 => 66,
        }
    }

    /// Expected vanishing order at `p`.
    pub fn order(self) -> u32 {
        match self {
            InvariantName::F2 => 0,
            InvariantName::F12 => 2,
            InvariantName::F20 => 4,
            InvariantName::F24 => 6,
            InvariantName::F30 => 6,
            InvariantName::F32 => 8,
            InvariantName::F36 => 10,
            InvariantName::F42 => 10,
            InvariantName::F44 => 12,
            InvariantName::F54 => 14,
            InvariantName::F60 => 16,
            InvariantName::F66 => 18,
        }
    }

    pub fn is_fundamental(self) -> bool {
        matches!(self, InvariantName::F2 | InvariantName::F12 | InvariantName::F20 | InvariantName::F30)
    }

    /// The invariant as a polynomial in `f2, f12, f20, f30`.
    pub fn expression(self) -> Polynomial {
        let v = VarSet::Fundamental;
        let r = |n, d| FieldElement::from_ratio(n, d);
        let p = |terms: &[(i64, [u16; 4])]| poly_from_ints(v, terms);
        // exponents of (f2, f12, f20, f30)
        match self {
            InvariantName::F2 => Polynomial::var(v, 0),
            InvariantName::F12 => Polynomial::var(v, 1),
            InvariantName::F20 => Polynomial::var(v, 2),
            InvariantName::F30 => Polynomial::var(v, 3),
            InvariantName::F24 => p(&[(1, [0, 2, 0, 0]), (-1, [2, 0, 1, 0])]).scale(&r(-1, 3)),
            InvariantName::F32 => p(&[(1, [0, 1, 1, 0]), (-1, [1, 0, 0, 1])]).scale(&r(-2, 3)),
            InvariantName::F36 => p(&[(1, [0, 3, 0, 0]), (-3, [2, 1, 1, 0]), (2, [3, 0, 0, 1])]).scale(&r(5, 27)),
            InvariantName::F42 => p(&[(-1, [1, 0, 2, 0]), (1, [0, 1, 0, 1])]).scale(&r(-2, 3)),
            InvariantName::F44 => p(&[(1, [0, 2, 1, 0]), (1, [2, 0, 2, 0]), (-2, [1, 1, 0, 1])]).scale(&r(10, 18)),
            InvariantName::F54 => p(&[(2, [1, 1, 2, 0]), (-1, [0, 2, 0, 1]), (-1, [2, 0, 1, 1])]).scale(&r(10, 9)),
            InvariantName::F60 => p(&[(1, [0, 0, 3, 0]), (-1, [0, 0, 0, 2])]).scale(&r(20, 27)),
            InvariantName::F66 => p(&[
                (-3, [1, 2, 2, 0]),
                (1, [3, 0, 3, 0]),
                (1, [0, 3, 0, 1]),
                (3, [2, 1, 1, 1]),
                (-2, [3, 0, 0, 2]),
            ])
            .scale(&r(10, 27)),
        }
    }
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.degree())
    }
}

impl FromStr for InvariantName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InvariantName::ALL.into_iter().find(|n| n.to_string() == s.to_ascii_lowercase()).ok_or_else(|| Error::Unknown(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalInvariants {
    pub f2: Polynomial,
    pub f12: Polynomial,
    pub f20: Polynomial,
    pub f30: Polynomial,
    pub g12: Polynomial,
    pub g20: Polynomial,
    pub g30: Polynomial,
}

impl FundamentalInvariants {
    /// `[f2, f12, f20, f30]`, in the order of [`VarSet::Fundamental`].
    pub fn as_array(&self) -> [&Polynomial; 4] {
        [&self.f2, &self.f12, &self.f20, &self.f30]
    }

    pub fn get(&self, name: InvariantName) -> Option<&Polynomial> {
        match name {
            InvariantName::F2 => Some(&self.f2),
            InvariantName::F12 => Some(&self.f12),
            InvariantName::F20 => Some(&self.f20),
            InvariantName::F30 => Some(&self.f30),
            _ => None,
        }
    }

    /// Checks invariance under `generators`, degrees, vanishing orders at
    /// `p` and the three monomial normalizations.
    pub fn verify(&self, generators: &[Matrix4]) -> Result<Vec<String>> {
        self.verify_with(generators, false)
    }

    /// As [`verify`](Self::verify), but tests invariance only by exact
    /// evaluation at a few fixed points. Used when loading cached files.
    pub fn verify_pointwise(&self, generators: &[Matrix4]) -> Result<Vec<String>> {
        self.verify_with(generators, true)
    }

    fn verify_with(&self, generators: &[Matrix4], pointwise: bool) -> Result<Vec<String>> {
        let probes: Vec<Vec4> = [[3, -1, 2, 5], [1, 4, -2, 7], [-5, 2, 3, 1]]
            .iter()
            .map(|v| {
                let mut v = crate::matrix::vec_from_ints(*v);
                v[1] = &v[1] + &FieldElement::phi();
                v
            })
            .collect();
        let mut checks = Vec::new();
        let x12 = Monomial([12, 0, 0, 0]);
        ensure(self.g12.coeff(&x12).is_one(), || format!("coefficient of x^12 in g12 is {}", self.g12.coeff(&x12)))?;
        let x2w10 = Monomial([2, 0, 0, 10]);
        ensure(self.f12.coeff(&x2w10).is_one(), || format!("coefficient of x^2w^10 in f12 is {}", self.f12.coeff(&x2w10)))?;
        let x4w16 = Monomial([4, 0, 0, 16]);
        ensure(self.f20.coeff(&x4w16).is_one(), || format!("coefficient of x^4w^16 in f20 is {}", self.f20.coeff(&x4w16)))?;
        checks.push("normalizations: [x^12]g12 = [x^2w^10]f12 = [x^4w^16]f20 = 1".to_string());
        for (name, f) in [InvariantName::F2, InvariantName::F12, InvariantName::F20, InvariantName::F30].iter().zip(self.as_array()) {
            ensure(f.is_homogeneous() && f.degree() == Some(name.degree()), || format!("{name} is not homogeneous of degree {}", name.degree()))?;
            for (k, g) in generators.iter().enumerate() {
                let fixed = if pointwise {
                    probes.iter().all(|v| f.evaluate(&g.mul_vec(v)) == f.evaluate(v))
                } else {
                    f.linear_substitute(g) == *f
                };
                ensure(fixed, || format!("{name} is not fixed by generator {}", k + 1))?;
            }
            let ord = vanishing_order_at_p(f)?;
            ensure(ord == name.order(), || format!("{name} vanishes to order {ord} at p, expected {}", name.order()))?;
            let how = if pointwise { "invariant at probe points" } else { "invariant" };
            checks.push(format!("{name}: degree {}, {how}, order {ord} at p", name.degree()));
        }
        Ok(checks)
    }
}

/// The construction chain starting from the Reynolds image of `x^12`.
pub fn build_fundamentals(g: &MatrixGroup) -> Result<FundamentalInvariants> {
    ensure(g.order() == crate::group::H4_ORDER, || format!("expected the group of order 14400, got {}", g.order()))?;
    let r = FieldElement::from_ratio;
    let f2 = f2();
    let x = Polynomial::var(VarSet::Xyzw, 0);
    // the constant 64/29925 normalizes the plain sum over the group
    let g12 = g.reynolds(&x.pow(12)).scale(&r(64 * g.order() as i64, 29925));
    let f12 = (&f2.pow(6) - &g12).scale(&r(19, 4));
    let g20 = (&f12 * &f12).laplacian().laplacian().scale(&r(1, 120));
    let f20 = (&(&f2.pow(10).scale(&r(-3, 1)) - &(&f2.pow(4) * &f12).scale(&r(224, 1))) + &g20.scale(&r(3, 1))).scale(&r(5, 968));
    let g30 = (&f12 * &f20).laplacian().scale(&r(1, 42));
    let f30 = (&(&(&f2.pow(5) * &f20).scale(&r(-15, 1)) - &(&f2.pow(3) * &f12.pow(2)).scale(&r(6, 1))) + &g30.scale(&r(21, 1)))
        .scale(&r(1, 40));
    let fund = FundamentalInvariants { f2, f12, f20, f30, g12, g20, g30 };
    fund.verify(g.generators())?;
    Ok(fund)
}

/// Evaluates a polynomial in `f2, f12, f20, f30` at four polynomials,
/// optionally discarding `x,y,z`-degree above a bound after every product.
fn evaluate_expression(expr: &Polynomial, values: [&Polynomial; 4], max_affine: Option<u32>) -> Polynomial {
    assert_eq!(expr.vars(), VarSet::Fundamental);
    let target = values[0].vars();
    let mul = |a: &Polynomial, b: &Polynomial| match max_affine {
        Some(k) => a.mul_truncated(b, k).expect("same variables"),
        None => a * b,
    };
    let mut powers: [Vec<Polynomial>; NVARS] = Default::default();
    for (i, pw) in powers.iter_mut().enumerate() {
        let top = expr.terms().map(|(m, _)| m.0[i]).max().unwrap_or(0);
        pw.push(Polynomial::one(target));
        for e in 1..=top as usize {
            let next = mul(&pw[e - 1], values[i]);
            pw.push(next);
        }
    }
    let mut out = Polynomial::zero(target);
    for (m, c) in expr.terms() {
        let mut t = Polynomial::constant(target, c.clone());
        for i in 0..NVARS {
            if m.0[i] > 0 {
                t = mul(&t, &powers[i][m.0[i] as usize]);
            }
        }
        out = &out + &t;
    }
    out
}

/// The full polynomial of a named invariant.
///
/// The largest ones (`f60`, `f66`) involve products with tens of millions of
/// term pairs.
pub fn expand_invariant(name: InvariantName, fund: &FundamentalInvariants) -> Polynomial {
    match fund.get(name) {
        Some(f) => f.clone(),
        None => evaluate_expression(&name.expression(), fund.as_array(), None),
    }
}

/// `f(x,y,z,1)` for the four fundamental invariants, truncated above
/// `x,y,z`-degree `k`. Products of these give the low-order part at `p` of
/// any polynomial in the fundamentals exactly up to degree `k`.
#[derive(Clone, Debug)]
pub struct LocalExpansions {
    k: u32,
    locals: [Polynomial; 4],
}

impl LocalExpansions {
    pub fn new(fund: &FundamentalInvariants, k: u32) -> Self {
        LocalExpansions { k, locals: fund.as_array().map(|f| f.dehomogenize_and_truncate(k + 1)) }
    }

    pub fn bound(&self) -> u32 {
        self.k
    }

    pub fn local(&self, i: usize) -> &Polynomial {
        &self.locals[i]
    }

    /// Local expansion at `p` of an expression in `f2, f12, f20, f30`.
    pub fn evaluate(&self, expr: &Polynomial) -> Polynomial {
        let v = [&self.locals[0], &self.locals[1], &self.locals[2], &self.locals[3]];
        evaluate_expression(expr, v, Some(self.k))
    }

    pub fn of(&self, name: InvariantName) -> Polynomial {
        self.evaluate(&name.expression())
    }
}

fn lowest_part(local: &Polynomial) -> Option<(u32, Polynomial)> {
    let m = local.terms().map(|(mono, _)| mono.affine_degree()).min()?;
    let h = Polynomial::from_terms(local.vars(), local.terms().filter(|(mono, _)| mono.affine_degree() == m).map(|(mono, c)| (*mono, c.clone())));
    Some((m, h))
}

/// Order and leading form at `p` read off a truncated local expansion.
/// `None` when everything up to the truncation bound vanishes.
pub fn leading_form_of_local(local: &Polynomial) -> Option<(Polynomial, u32)> {
    lowest_part(local).map(|(m, h)| (h, m))
}

/// Multiplicity at `p = (0:0:0:1)`: the least `x,y,z`-degree of a term.
pub fn vanishing_order_at_p(f: &Polynomial) -> Result<u32> {
    f.terms().map(|(m, _)| m.affine_degree()).min().ok_or(Error::ZeroPolynomial)
}

/// `(h, m)` with `f = h w^(d-m) + (terms of x,y,z-degree > m)`; `h` is a
/// form of degree `m` in `x, y, z`.
pub fn leading_form(f: &Polynomial) -> Result<(Polynomial, u32)> {
    let m = vanishing_order_at_p(f)?;
    let h = Polynomial::from_terms(
        VarSet::Xyzw,
        f.terms().filter(|(mono, _)| mono.affine_degree() == m).map(|(mono, c)| (Monomial([mono.0[0], mono.0[1], mono.0[2], 0]), c.clone())),
    );
    Ok((h, m))
}

fn binomial_table(n: usize) -> Vec<Vec<FieldElement>> {
    let mut t: Vec<Vec<FieldElement>> = vec![vec![FieldElement::one()]];
    for i in 1..=n {
        let prev = &t[i - 1];
        let row: Vec<FieldElement> = (0..=i)
            .map(|k| {
                if k == 0 || k == i {
                    FieldElement::one()
                } else {
                    &prev[k - 1] + &prev[k]
                }
            })
            .collect();
        t.push(row);
    }
    t
}

/// `f` after the substitution `x_i -> x_i + P_i x_j` for every `i != j`,
/// where `j` is the chart of `P` (so `P` moves to the `j`-th coordinate
/// point), keeping only terms of degree at most `k` in the variables other
/// than `x_j`.
pub fn local_expansion_at(f: &Polynomial, point: &ProjectivePoint, k: u32) -> Polynomial {
    let j = point.chart();
    let coords = point.coords();
    let deg = f.degree().unwrap_or(0) as usize;
    let binom = binomial_table(deg);
    let others: Vec<usize> = (0..NVARS).filter(|&i| i != j).collect();
    // variables with zero coordinate need no substitution; filter them first
    let (zero_vars, moved): (Vec<usize>, Vec<usize>) = others.iter().partition(|&&i| coords[i].is_zero());
    let budget = |m: &Monomial, done: &[usize]| done.iter().map(|&i| m.0[i] as u32).sum::<u32>();
    let mut done: Vec<usize> = zero_vars.clone();
    let mut current: HashMap<Monomial, FieldElement> =
        f.terms().filter(|(m, _)| budget(m, &done) <= k).map(|(m, c)| (*m, c.clone())).collect();
    for &i in &moved {
        let a = &coords[i];
        let mut apow = vec![FieldElement::one()];
        for e in 1..=deg {
            let next = &apow[e - 1] * a;
            apow.push(next);
        }
        let mut next: HashMap<Monomial, FieldElement> = HashMap::with_capacity(current.len());
        for (m, c) in &current {
            let used = budget(m, &done);
            let e = m.0[i] as usize;
            let top = e.min((k - used) as usize);
            for t in 0..=top {
                let mut n = *m;
                n.0[i] = t as u16;
                n.0[j] += (e - t) as u16;
                let coef = &(c * &binom[e][t]) * &apow[e - t];
                *next.entry(n).or_insert_with(FieldElement::zero) += &coef;
            }
        }
        next.retain(|_, c| !c.is_zero());
        current = next;
        done.push(i);
    }
    Polynomial::from_terms(f.vars(), current)
}

/// Multiplicity of `f` at an arbitrary point, by translating the point to a
/// coordinate point and doubling the truncation bound until a term survives.
pub fn vanishing_order(f: &Polynomial, point: &ProjectivePoint) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let j = point.chart();
    let deg = f.degree().unwrap_or(0);
    let mut k = 2;
    loop {
        let local = local_expansion_at(f, point, k);
        let ord = local.terms().map(|(m, _)| m.degree() - m.0[j] as u32).min();
        if let Some(o) = ord {
            return Ok(o);
        }
        if k >= deg {
            unreachable!("a nonzero form has a term of degree at most its degree");
        }
        k = (2 * k).min(deg);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerInvariants {
    pub s2: Polynomial,
    pub s6: Polynomial,
    pub s10: Polynomial,
}

impl StabilizerInvariants {
    pub fn as_array(&self) -> [&Polynomial; 3] {
        [&self.s2, &self.s6, &self.s10]
    }

    /// `s2^a s6^b s10^c w^e` for a monomial in [`VarSet::Stabilizer`],
    /// extended linearly.
    pub fn substitute(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.vars(), VarSet::Stabilizer);
        let w = Polynomial::var(VarSet::Xyzw, 3);
        p.compose(&[self.s2.clone(), self.s6.clone(), self.s10.clone(), w])
    }
}

fn coefficient_vectors(polys: &[Polynomial], degree: u32) -> Vec<Vec<FieldElement>> {
    let basis = monomials_of_degree(3, degree);
    polys.iter().map(|p| basis.iter().map(|m| p.coeff(&Monomial([m.0[0], m.0[1], m.0[2], 0]))).collect()).collect()
}

fn rank_in_degree(polys: &[Polynomial], degree: u32) -> usize {
    let rows = coefficient_vectors(polys, degree);
    let ncols = rows.first().map_or(0, Vec::len);
    linalg::rank(rows, ncols)
}

/// `s2, s6, s10` as the leading forms of `f12, f24, f36`, with the
/// independence and stabilizer-invariance checks.
pub fn build_stabilizer_invariants(local: &LocalExpansions, stabilizer_generators: &[Matrix4]) -> Result<StabilizerInvariants> {
    ensure(local.bound() >= 10, || "local expansions must reach degree 10".into())?;
    let lf = |n: InvariantName| -> Result<Polynomial> {
        let (h, m) = leading_form_of_local(&local.of(n)).ok_or_else(|| Error::Verification(format!("{n} vanishes beyond the bound")))?;
        ensure(m == n.order(), || format!("{n} has order {m} at p, expected {}", n.order()))?;
        Ok(h)
    };
    let s = StabilizerInvariants { s2: lf(InvariantName::F12)?, s6: lf(InvariantName::F24)?, s10: lf(InvariantName::F36)? };
    for (name, h) in ["s2", "s6", "s10"].iter().zip(s.as_array()) {
        for (k, g) in stabilizer_generators.iter().enumerate() {
            ensure(h.linear_substitute(g) == *h, || format!("{name} is not fixed by stabilizer generator {}", k + 1))?;
        }
    }
    let r6 = rank_in_degree(&[s.s2.pow(3), s.s6.clone()], 6);
    ensure(r6 == 2, || format!("s2^3, s6 have rank {r6}"))?;
    let r10 = rank_in_degree(&[s.s2.pow(5), &s.s2.pow(2) * &s.s6, s.s10.clone()], 10);
    ensure(r10 == 3, || format!("s2^5, s2^2 s6, s10 have rank {r10}"))?;
    Ok(s)
}

/// Exponents `(a, b, c)` with `2a + 6b + 10c = m`.
pub fn s_monomials(m: u32) -> Vec<[u16; 3]> {
    let mut out = Vec::new();
    for c in 0..=m / 10 {
        for b in 0..=(m - 10 * c) / 6 {
            let rest = m - 10 * c - 6 * b;
            if rest % 2 == 0 {
                out.push([(rest / 2) as u16, b as u16, c as u16]);
            }
        }
    }
    out.sort();
    out
}

/// The unique combination of `s2^a s6^b s10^c` (`2a + 6b + 10c = m`) equal
/// to the form `h`, as a polynomial in [`VarSet::Stabilizer`].
pub fn express_in_s_basis(h: &Polynomial, m: u32, s: &StabilizerInvariants) -> Result<Polynomial> {
    ensure(h.is_zero() || (h.is_homogeneous() && h.degree() == Some(m)), || format!("form is not homogeneous of degree {m}"))?;
    let exps = s_monomials(m);
    let images: Vec<Polynomial> =
        exps.iter().map(|e| &(&s.s2.pow(e[0] as u32) * &s.s6.pow(e[1] as u32)) * &s.s10.pow(e[2] as u32)).collect();
    let columns = coefficient_vectors(&images, m);
    let target = coefficient_vectors(std::slice::from_ref(h), m).pop().expect("one row");
    let x = linalg::solve_columns(&columns, &target)
        .ok_or_else(|| Error::NoSolution(format!("form of degree {m} is not a polynomial in s2, s6, s10")))?;
    Ok(Polynomial::from_terms(
        VarSet::Stabilizer,
        exps.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial([e[0], e[1], e[2], 0]), c)),
    ))
}

/// The `s`-expressions of the leading forms as printed in the table of
/// generators, before any rescaling.
pub fn table1_expression(name: InvariantName) -> Polynomial {
    let p = |t: &[(i64, [u16; 4])]| poly_from_ints(VarSet::Stabilizer, t);
    match name {
        InvariantName::F2 => p(&[(1, [0, 0, 0, 0])]),
        InvariantName::F12 => p(&[(1, [1, 0, 0, 0])]),
        InvariantName::F20 => p(&[(1, [2, 0, 0, 0])]),
        InvariantName::F24 => p(&[(1, [0, 1, 0, 0])]),
        InvariantName::F30 => p(&[(1, [3, 0, 0, 0])]),
        InvariantName::F32 => p(&[(1, [1, 1, 0, 0])]),
        InvariantName::F36 => p(&[(1, [0, 0, 1, 0])]),
        InvariantName::F42 => p(&[(1, [2, 1, 0, 0])]),
        InvariantName::F44 => p(&[(3, [1, 0, 1, 0]), (-5, [0, 2, 0, 0])]),
        InvariantName::F54 => p(&[(6, [2, 0, 1, 0]), (-5, [1, 2, 0, 0])]),
        InvariantName::F60 => p(&[(4, [3, 0, 1, 0]), (-5, [2, 2, 0, 0])]),
        InvariantName::F66 => p(&[(9, [1, 1, 1, 0]), (-10, [0, 3, 0, 0])]),
    }
}

/// The scalar `lambda` with `leading form = lambda * table expression` that
/// the Macaulay2 check in the source asserts (its signs for the last four
/// rows are opposite to the table's).
pub fn appendix_scalar(name: InvariantName) -> FieldElement {
    match name {
        InvariantName::F44 | InvariantName::F54 | InvariantName::F60 | InvariantName::F66 => FieldElement::from_int(-1),
        _ => FieldElement::one(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub name: String,
    pub degree: u32,
    pub order: u32,
    /// Leading form written in `s2, s6, s10`.
    pub s_expression: String,
    /// The table's expression.
    pub table_expression: String,
    /// `leading form / table expression`.
    pub scalar: String,
    pub matches_appendix_exactly: bool,
    #[serde(skip)]
    pub image: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub passed: bool,
}

/// If `a = lambda * b` for a nonzero scalar, returns `lambda`.
pub fn proportionality(a: &Polynomial, b: &Polynomial) -> Option<FieldElement> {
    let (m, cb) = b.terms().next()?;
    let lambda = &a.coeff(m) * &cb.inverse().ok()?;
    (!lambda.is_zero() && *a == b.scale(&lambda)).then_some(lambda)
}

/// Bidegrees and leading forms of the twelve generators, each written in
/// `s2, s6, s10` and compared with the table up to a nonzero scalar.
pub fn verify_table1(local: &LocalExpansions, s: &StabilizerInvariants) -> Result<Table1Report> {
    let max_order = InvariantName::ALL.iter().map(|n| n.order()).max().unwrap_or(0);
    ensure(local.bound() >= max_order, || format!("local expansions must reach degree {max_order}"))?;
    let mut rows = Vec::new();
    for name in InvariantName::ALL {
        let expansion = local.of(name);
        let (h, m) = leading_form_of_local(&expansion).ok_or_else(|| Error::Verification(format!("row {name}: vanishes beyond bound")))?;
        ensure(m == name.order(), || format!("row ({}, {}): {name} has order {m}", name.degree(), name.order()))?;
        let in_s = express_in_s_basis(&h, m, s).map_err(|e| Error::Verification(format!("row ({}, {}): {e}", name.degree(), m)))?;
        let table = table1_expression(name);
        let lambda = proportionality(&in_s, &table).ok_or_else(|| {
            Error::Verification(format!("row ({}, {}): leading form {in_s} is not proportional to {table}", name.degree(), m))
        })?;
        let image = &in_s * &Polynomial::monomial(VarSet::Stabilizer, Monomial([0, 0, 0, (name.degree() - m) as u16]), FieldElement::one());
        rows.push(Table1Row {
            name: name.to_string(),
            degree: name.degree(),
            order: m,
            s_expression: in_s.to_string(),
            table_expression: table.to_string(),
            scalar: crate::projective::pretty(&lambda),
            matches_appendix_exactly: lambda == appendix_scalar(name),
            image,
        });
    }
    let passed = rows.len() == InvariantName::ALL.len();
    Ok(Table1Report { rows, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_expressions() {
        for n in InvariantName::ALL {
            assert_eq!(n.to_string().parse::<InvariantName>().unwrap(), n);
            let e = n.expression();
            assert!(e.weighted_degrees().all(|d| d == n.degree()), "{n}");
            assert_eq!(n.order() % 2, 0);
        }
        assert!("f7".parse::<InvariantName>().is_err());
    }

    #[test]
    fn order_and_leading_form_of_f2() {
        assert_eq!(vanishing_order_at_p(&f2()).unwrap(), 0);
        let (h, m) = leading_form(&f2()).unwrap();
        assert_eq!((h, m), (Polynomial::one(VarSet::Xyzw), 0));
        assert!(matches!(vanishing_order_at_p(&Polynomial::zero(VarSet::Xyzw)), Err(Error::ZeroPolynomial)));
        assert!(vanishing_order(&Polynomial::zero(VarSet::Xyzw), &ProjectivePoint::from_ints([1, 0, 0, 0])).is_err());
    }

    #[test]
    fn vanishing_order_at_general_points() {
        let x = Polynomial::var(VarSet::Xyzw, 0);
        let y = Polynomial::var(VarSet::Xyzw, 1);
        let z = Polynomial::var(VarSet::Xyzw, 2);
        let w = Polynomial::var(VarSet::Xyzw, 3);
        let f = &(&x - &y).pow(3) * &(&z + &w);
        assert_eq!(vanishing_order(&f, &ProjectivePoint::from_ints([1, 1, 2, 1])).unwrap(), 3);
        assert_eq!(vanishing_order(&f, &ProjectivePoint::from_ints([1, 1, 1, -1])).unwrap(), 4);
        assert_eq!(vanishing_order(&f, &ProjectivePoint::from_ints([1, 2, 3, 4])).unwrap(), 0);
        assert_eq!(vanishing_order(&f, &ProjectivePoint::from_ints([0, 0, 0, 1])).unwrap(), 3);
        let planes = &(&x * &y) * &(&z * &w);
        assert_eq!(vanishing_order(&planes, &ProjectivePoint::from_ints([1, 0, 0, 0])).unwrap(), 3);
        assert_eq!(vanishing_order(&planes, &ProjectivePoint::from_ints([1, 1, 0, 0])).unwrap(), 2);
    }

    #[test]
    fn s_monomials_count() {
        assert_eq!(s_monomials(0), vec![[0, 0, 0]]);
        assert_eq!(s_monomials(10).len(), 3);
        assert_eq!(s_monomials(12).len(), 4);
        assert!(s_monomials(3).is_empty());
    }

    #[test]
    fn proportionality_detects_scale() {
        let a = table1_expression(InvariantName::F44);
        assert_eq!(proportionality(&a.scale(&FieldElement::from_int(-2)), &a), Some(FieldElement::from_int(-2)));
        assert_eq!(proportionality(&table1_expression(InvariantName::F54), &a), None);
    }
}
