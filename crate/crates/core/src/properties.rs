//! Algebraic laws checked on sampled inputs. The predicates are shared by
//! the property-test suites and by `verify-all`, which draws its inputs from
//! a seeded generator.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::configs::{build_config, ConfigName};
use crate::field::{rat, FieldElement};
use crate::graded::{dim_s_forms, t_monomials, GeneratorSet};
use crate::group::MatrixGroup;
use crate::invariants::{leading_form, leading_form_of_local, InvariantName, LocalExpansions};
use crate::matrix::Matrix4;
use crate::poly::{monomials_of_degree, Monomial, Polynomial, VarSet};
use crate::waldschmidt::{alpha_symbolic_power, alpha_with_multiplicities, FatPoint};

pub type Check = std::result::Result<(), String>;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn field_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Check {
    require(&(a + b) + c == a + &(b + c), || format!("addition not associative at {a}, {b}, {c}"))?;
    require(&(a * b) * c == a * &(b * c), || format!("multiplication not associative at {a}, {b}, {c}"))?;
    require(a + b == b + a && a * b == b * a, || format!("not commutative at {a}, {b}"))?;
    require(a * &(b + c) == &(a * b) + &(a * c), || format!("not distributive at {a}, {b}, {c}"))?;
    require((a + &(-a.clone())).is_zero(), || format!("no additive inverse for {a}"))?;
    if !a.is_zero() {
        let inv = a.inverse().map_err(|e| e.to_string())?;
        require((a * &inv).is_one(), || format!("bad inverse of {a}"))?;
    }
    require((a * b).norm() == a.norm() * b.norm(), || format!("norm not multiplicative at {a}, {b}"))?;
    let back = FieldElement::parse_canonical(&a.canonical_string()).map_err(|e| e.to_string())?;
    require(&back == a, || format!("canonical string of {a} does not round-trip"))
}

/// Substituting `g` then `h` equals substituting `g h`.
pub fn action_law(f: &Polynomial, g: &Matrix4, h: &Matrix4) -> Check {
    require(f.linear_substitute(g).linear_substitute(h) == f.linear_substitute(&g.mul(h)), || "action law fails".into())
}

pub fn reynolds_invariance(group: &MatrixGroup, f: &Polynomial, idempotent: bool) -> Check {
    let r = group.reynolds(f);
    require(group.is_invariant(&r), || "Reynolds image is not invariant".into())?;
    require(!idempotent || group.reynolds(&r) == r, || "Reynolds operator is not idempotent".into())
}

/// The initial form at `p` of a product is the product of initial forms.
pub fn initial_form_multiplicativity(f: &Polynomial, g: &Polynomial) -> Check {
    if f.is_zero() || g.is_zero() {
        return Ok(());
    }
    let (hf, mf) = leading_form(f).map_err(|e| e.to_string())?;
    let (hg, mg) = leading_form(g).map_err(|e| e.to_string())?;
    let (hfg, mfg) = leading_form(&(f * g)).map_err(|e| e.to_string())?;
    require(mfg == mf + mg, || format!("orders {mf} + {mg} != {mfg}"))?;
    require(hfg == &hf * &hg, || "initial forms do not multiply".into())
}

/// Every `W(H4)`-invariant vanishes to even order at `p`. Orders at or
/// beyond the expansion bound are not decided.
pub fn order_parity(local: &LocalExpansions, expr: &Polynomial) -> Check {
    let image = local.evaluate(expr);
    match leading_form_of_local(&image) {
        Some((_, m)) => require(m % 2 == 0, || format!("odd order {m}")),
        None => Ok(()),
    }
}

/// `dim R'_{d,m} <= dim R'_{d+2,m}`, and the column reaches
/// `dim C[s2,s6,s10]_m` by `d = 5m + 2`.
pub fn dimension_monotone(column: &[usize], m: u32, d: u32) -> Check {
    let (d, m_u) = (d as usize, m);
    require(column[d] <= column[d + 2], || format!("dim R'({d},{m_u}) > dim R'({},{m_u})", d + 2))?;
    let top = dim_s_forms(m);
    require(column[d] <= top, || format!("dim R'({d},{m_u}) exceeds {top}"))?;
    if d >= 5 * m as usize + 2 {
        require(column[d] == top, || format!("dim R'({d},{m_u}) = {} has not stabilized at {top}", column[d]))?;
    }
    Ok(())
}

/// `alpha(m1 + m2) <= alpha(m1) + alpha(m2)` over the computed values, where
/// `alphas[k]` is `alpha` at multiplicity `k + 1`.
pub fn superadditivity(alphas: &[u32]) -> Check {
    for i in 0..alphas.len() {
        for j in 0..alphas.len() {
            if i + j + 1 < alphas.len() {
                let (a, b, c) = (alphas[i], alphas[j], alphas[i + j + 1]);
                require(c <= a + b, || format!("alpha({}) = {c} > alpha({}) + alpha({}) = {}", i + j + 2, i + 1, j + 1, a + b))?;
            }
        }
    }
    Ok(())
}

/// `alpha(I^(m))` for `m = 1..=m_max` of points in `P^2`.
pub fn plane_alphas(points: &[[i64; 3]], m_max: u32) -> Vec<u32> {
    (1..=m_max)
        .map(|m| {
            let fat: Vec<FatPoint> = points.iter().map(|p| FatPoint { coords: p.iter().map(|&x| FieldElement::from_int(x)).collect(), multiplicity: m }).collect();
            alpha_with_multiplicities(&fat, 3, 3 * m).alpha.expect("forms exist in high degree")
        })
        .collect()
}

pub fn random_rational_field(rng: &mut StdRng) -> FieldElement {
    let a = rat(rng.random_range(-30..=30), rng.random_range(1..=12));
    let b = rat(rng.random_range(-30..=30), rng.random_range(1..=12));
    FieldElement::new(a, b)
}

pub fn random_form(rng: &mut StdRng, degree: u32, terms: usize) -> Polynomial {
    let monos = monomials_of_degree(4, degree);
    Polynomial::from_terms(VarSet::Xyzw, (0..terms).map(|_| (monos[rng.random_range(0..monos.len())], random_rational_field(rng))))
}

/// A random element of `T_d` as a polynomial in `f2, f12, f20, f30`.
pub fn random_t_element(rng: &mut StdRng, d: u32) -> Polynomial {
    Polynomial::from_terms(
        VarSet::Fundamental,
        t_monomials(d).into_iter().map(|e| (Monomial(e), FieldElement::from_int(rng.random_range(-5..=5)))),
    )
}

/// Up to six points of `P^2` with small integer coordinates, pairwise
/// distinct.
pub fn random_plane_points(rng: &mut StdRng) -> Vec<[i64; 3]> {
    let n = rng.random_range(1..=6);
    let mut out: Vec<[i64; 3]> = Vec::new();
    while out.len() < n {
        let p = [rng.random_range(-3..=3), rng.random_range(-3..=3), rng.random_range(-3..=3)];
        if p == [0, 0, 0] {
            continue;
        }
        let proportional = |q: &[i64; 3]| p[0] * q[1] == p[1] * q[0] && p[0] * q[2] == p[2] * q[0] && p[1] * q[2] == p[2] * q[1];
        if !out.iter().any(proportional) {
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub property: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run(property: &str, cases: usize, mut case: impl FnMut(usize) -> Check) -> SuiteResult {
    let t = std::time::Instant::now();
    let failures = (0..cases).filter_map(|i| case(i).err().map(|e| format!("case {i}: {e}"))).take(5).collect();
    SuiteResult { property: property.into(), cases, failures, seconds: t.elapsed().as_secs_f64() }
}

/// All property suites with `cases` samples each, seeded by `seed`.
pub fn run_suites(
    cases: usize,
    seed: u64,
    h4: &MatrixGroup,
    f4: &MatrixGroup,
    local: &LocalExpansions,
    gens: &GeneratorSet,
) -> Vec<SuiteResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    out.push(run("field axioms", cases, |_| {
        let (a, b, c) = (random_rational_field(&mut rng), random_rational_field(&mut rng), FieldElement::phi().pow(rng.random_range(0..6)));
        field_axioms(&a, &b, &c)
    }));
    out.push(run("action law", cases, |_| {
        let deg = rng.random_range(1..=4);
        let f = random_form(&mut rng, deg, 4);
        let g = &h4.elements()[rng.random_range(0..h4.order())];
        let h = &h4.elements()[rng.random_range(0..h4.order())];
        action_law(&f, g, h)
    }));
    out.push(run("Reynolds invariance", cases, |i| {
        if i % 20 == 0 {
            // pure powers keep the sum over W(H4) small
            let (v, d) = (rng.random_range(0..4), rng.random_range(2..=8));
            let f = Polynomial::var(VarSet::Xyzw, v).pow(d).scale(&random_rational_field(&mut rng));
            return reynolds_invariance(h4, &f, false);
        }
        let deg = rng.random_range(1..=3);
        let f = random_form(&mut rng, deg, 3);
        reynolds_invariance(f4, &f, deg <= 2)
    }));
    let twelve: Vec<Polynomial> = InvariantName::ALL.iter().map(|n| n.expression()).collect();
    out.push(run("order parity at p", cases, |i| {
        if i < twelve.len() {
            return order_parity(local, &twelve[i]);
        }
        let d = 2 * rng.random_range(1..=20);
        order_parity(local, &random_t_element(&mut rng, d))
    }));
    out.push(run("initial-form multiplicativity", cases, |_| {
        let deg = rng.random_range(1..=5);
        let f = random_form(&mut rng, deg, 5);
        let deg = rng.random_range(1..=5);
        let g = random_form(&mut rng, deg, 5);
        initial_form_multiplicativity(&f, &g)
    }));
    let columns: Vec<Vec<usize>> = (0..=30).map(|m| gens.dims_rprime_column(m, 160)).collect();
    out.push(run("dimension monotonicity and stabilization", cases, |_| {
        let m = rng.random_range(0..=30u32);
        // T lives in even degrees
        let d = 2 * rng.random_range(0..=79u32);
        dimension_monotone(&columns[m as usize], m, d)
    }));
    let d4 = build_config(ConfigName::D4);
    let d4_alphas: Vec<u32> = (1..=3).map(|m| alpha_symbolic_power(&d4.points, m, 2 * m + 2).alpha.unwrap_or(u32::MAX)).collect();
    out.push(run("superadditivity of alpha", cases, |i| {
        if i == 0 {
            return superadditivity(&d4_alphas);
        }
        superadditivity(&plane_alphas(&random_plane_points(&mut rng), 3))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superadditivity_detects_violations() {
        assert!(superadditivity(&[2, 4, 6]).is_ok());
        assert!(superadditivity(&[2, 5]).is_err());
    }

    #[test]
    fn plane_alphas_of_small_sets() {
        // one point: a line through it at every order m has multiplicity m
        assert_eq!(plane_alphas(&[[1, 0, 0]], 3), vec![1, 2, 3]);
        // three general points: alpha(I^(2)) = 3 (the triangle)
        assert_eq!(plane_alphas(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2), vec![2, 3]);
    }

    #[test]
    fn dimension_columns_are_monotone_everywhere() {
        let gens = GeneratorSet::from_stated_images();
        for m in 0..=30 {
            let column = gens.dims_rprime_column(m, 160);
            for d in (0..=158).step_by(2) {
                dimension_monotone(&column, m, d).unwrap();
            }
        }
    }

    #[test]
    fn random_points_are_distinct() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let pts = random_plane_points(&mut rng);
            assert!(!pts.is_empty() && pts.len() <= 6);
        }
    }
}
