//! Initial degrees of symbolic powers by interpolation, upper-bound
//! divisors, the `H4` cone bound, the `F4` reduction ledger, and the
//! resulting Waldschmidt constant certificates.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::configs::{build_config, coordinate_planes, dual_planes, plane_section_geometry, ConfigName, NuInts, PlaneSectionReport};
use crate::error::{ensure, Error, Result};
use crate::field::{rat, FieldElement, Rational};
use crate::graded::GeneratorSet;
use crate::linalg::{self, Row};
use crate::poly::{monomials_of_degree, Polynomial, VarSet};
use crate::projective::{Plane, ProjectivePoint};

/// A point of `P^(n-1)` (`n = 3` or `4`) with a required multiplicity.
#[derive(Clone, Debug)]
pub struct FatPoint {
    pub coords: Vec<FieldElement>,
    pub multiplicity: u32,
}

impl FatPoint {
    pub fn new(coords: Vec<FieldElement>, multiplicity: u32) -> Result<Self> {
        ensure(coords.iter().any(|x| !x.is_zero()), || "zero vector is not a point".into())?;
        Ok(FatPoint { coords, multiplicity })
    }

    pub fn from_point(p: &ProjectivePoint, multiplicity: u32) -> Self {
        FatPoint { coords: p.coords().to_vec(), multiplicity }
    }
}

fn binomials(n: usize) -> Vec<Vec<FieldElement>> {
    let mut t = vec![vec![FieldElement::one()]];
    for i in 1..=n {
        let row = (0..=i).map(|k| if k == 0 || k == i { FieldElement::one() } else { &t[i - 1][k - 1] + &t[i - 1][k] }).collect();
        t.push(row);
    }
    t
}

/// Multi-indices over `vars` with total degree below `m`.
fn multi_indices(vars: usize, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..m {
        for mono in monomials_of_degree(vars, deg) {
            out.push(mono.0[..vars].iter().map(|&e| e as u32).collect());
        }
    }
    out
}

/// Rows of the conditions "all Taylor coefficients of order below the
/// multiplicity vanish" on degree-`d` forms, in the chart of the first
/// nonzero coordinate of each point. Columns follow `monomials_of_degree(n, d)`.
pub fn interpolation_matrix(points: &[FatPoint], n: usize, d: u32) -> Vec<Row> {
    let monos = monomials_of_degree(n, d);
    let binom = binomials(d as usize);
    let mut rows = Vec::new();
    for pt in points {
        let j = pt.coords.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let inv = pt.coords[j].inverse().expect("nonzero");
        let c: Vec<FieldElement> = pt.coords.iter().map(|x| x * &inv).collect();
        let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let pows: Vec<Vec<FieldElement>> = c
            .iter()
            .map(|x| {
                let mut v = vec![FieldElement::one()];
                for e in 1..=d as usize {
                    let nx = &v[e - 1] * x;
                    v.push(nx);
                }
                v
            })
            .collect();
        for a in multi_indices(n - 1, pt.multiplicity) {
            let row: Row = monos
                .iter()
                .map(|mono| {
                    let mut coef = FieldElement::one();
                    for (k, &i) in others.iter().enumerate() {
                        let e = mono.0[i] as usize;
                        let ai = a[k] as usize;
                        if ai > e {
                            return FieldElement::zero();
                        }
                        let p = &pows[i][e - ai];
                        if p.is_zero() {
                            return FieldElement::zero();
                        }
                        coef = &(&coef * &binom[e][ai]) * p;
                    }
                    coef
                })
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Dimension of the degree-`d` forms meeting all the multiplicity demands.
pub fn interpolation_nullity(points: &[FatPoint], n: usize, d: u32) -> usize {
    let ncols = monomials_of_degree(n, d).len();
    let rows = interpolation_matrix(points, n, d);
    ncols - linalg::rank_exact(rows, ncols)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaResult {
    pub multiplicity: u32,
    /// Least degree with a nonzero form, if any up to `d_max`.
    pub alpha: Option<u32>,
    pub kernel_dim: usize,
    pub d_max: u32,
    /// `(degree, nullity)` for every degree searched.
    pub nullities: Vec<(u32, usize)>,
}

/// Least degree of a nonzero form with the given multiplicities, searching
/// `d = 1..=d_max`.
pub fn alpha_with_multiplicities(points: &[FatPoint], n: usize, d_max: u32) -> AlphaResult {
    let mut nullities = Vec::new();
    let multiplicity = points.iter().map(|p| p.multiplicity).max().unwrap_or(0);
    for d in 1..=d_max {
        let k = interpolation_nullity(points, n, d);
        nullities.push((d, k));
        if k > 0 {
            return AlphaResult { multiplicity, alpha: Some(d), kernel_dim: k, d_max, nullities };
        }
    }
    AlphaResult { multiplicity, alpha: None, kernel_dim: 0, d_max, nullities }
}

/// `alpha(I^(m))` for a configuration in `P^3`.
pub fn alpha_symbolic_power(points: &[ProjectivePoint], m: u32, d_max: u32) -> AlphaResult {
    let fat: Vec<FatPoint> = points.iter().map(|p| FatPoint::from_point(p, m)).collect();
    alpha_with_multiplicities(&fat, 4, d_max)
}

/// Number of the planes through `p`: the multiplicity at `p` of the product
/// of their linear forms.
pub fn plane_product_multiplicity(planes: &[Plane], p: &ProjectivePoint) -> u32 {
    planes.iter().filter(|h| h.contains(p)).count() as u32
}

/// The product of the linear forms of the planes.
pub fn plane_product(planes: &[Plane]) -> Polynomial {
    planes.iter().fold(Polynomial::one(VarSet::Xyzw), |acc, h| &acc * &Polynomial::linear_form(VarSet::Xyzw, h.coeffs()))
}

#[derive(Clone, Debug, Serialize)]
pub struct UpperBound {
    pub degree: u32,
    pub multiplicity: u32,
    pub witness: String,
    /// Multiplicity of the witness at every point, in configuration order.
    pub pointwise: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub method: String,
    /// `full certificate` or `desk-scale evidence`.
    pub class: String,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub kind: String,
    pub description: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    pub config: String,
    pub value_num: i64,
    pub value_den: i64,
    pub upper: UpperBound,
    pub lower: LowerBound,
    pub evidence: Vec<Evidence>,
    pub alpha: Vec<AlphaResult>,
}

impl BoundCertificate {
    pub fn value(&self) -> Rational {
        rat(self.value_num, self.value_den)
    }

    pub fn passed(&self) -> bool {
        self.evidence.iter().all(|e| e.passed)
    }
}

/// `v <= N^(1/3)`, i.e. `v^3 <= N`.
pub fn within_cube_root_bound(value: &Rational, points: usize) -> bool {
    value.pow(3) <= Rational::from_integer(points.into())
}

fn short(r: &Rational) -> String {
    r.to_string()
}

fn ceil_rational(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("small")
}

/// No form of degree below `value * m` with multiplicity `m`, for each
/// `m <= m_check`.
fn uniform_interpolation_evidence(points: &[ProjectivePoint], value: &Rational, m_check: u32) -> (Vec<AlphaResult>, Vec<Evidence>) {
    let mut alphas = Vec::new();
    let mut ev = Vec::new();
    for m in 1..=m_check {
        let bound = value * Rational::from_integer(m.into());
        let d_max = (ceil_rational(&bound) - 1).max(0) as u32;
        let r = alpha_symbolic_power(points, m, d_max);
        ev.push(Evidence {
            kind: "interpolation".into(),
            description: format!("no nonzero form of degree <= {d_max} vanishing to order {m} (alpha(I^({m}))/{m} >= {})", short(value)),
            passed: r.alpha.is_none(),
        });
        alphas.push(r);
    }
    (alphas, ev)
}

fn upper_from_planes(points: &[ProjectivePoint], planes: &[Plane], witness: &str) -> Result<(UpperBound, Evidence)> {
    let pointwise: Vec<u32> = points.iter().map(|p| plane_product_multiplicity(planes, p)).collect();
    let multiplicity = *pointwise.iter().min().ok_or_else(|| Error::Verification("empty configuration".into()))?;
    let product = plane_product(planes);
    let direct: Vec<u32> = points.iter().map(|p| crate::invariants::vanishing_order(&product, p)).collect::<Result<_>>()?;
    let ev = Evidence {
        kind: "upper bound".into(),
        description: format!("product of the {} planes vanishes to order >= {multiplicity} at every point (counted and by Taylor expansion)", planes.len()),
        passed: direct == pointwise,
    };
    Ok((UpperBound { degree: planes.len() as u32, multiplicity, witness: witness.into(), pointwise }, ev))
}

fn cube_root_evidence(value: &Rational, n: usize) -> Evidence {
    Evidence {
        kind: "universal bound".into(),
        description: format!("({})^3 <= {n}", short(value)),
        passed: within_cube_root_bound(value, n),
    }
}

fn ratio_evidence(upper: &UpperBound, value: &Rational) -> Evidence {
    let r = rat(upper.degree as i64, upper.multiplicity as i64);
    Evidence {
        kind: "upper bound".into(),
        description: format!("{}/{} = {} equals the certified value", upper.degree, upper.multiplicity, short(&r)),
        passed: &r == value,
    }
}

/// The six `D4` points in `w = 0` with multiplicity `m`, as points of `P^2`.
pub fn star_configuration(m: u32) -> Vec<FatPoint> {
    build_config(ConfigName::D4)
        .points
        .iter()
        .filter(|p| p.coords()[3].is_zero())
        .map(|p| FatPoint { coords: p.coords()[..3].to_vec(), multiplicity: m })
        .collect()
}

pub fn certify_d4(m_check: u32) -> Result<BoundCertificate> {
    let c = build_config(ConfigName::D4);
    let value = rat(2, 1);
    let (upper, up_ev) = upper_from_planes(&c.points, &coordinate_planes(), "xyzw (the four coordinate planes)")?;
    let (alpha, mut evidence) = uniform_interpolation_evidence(&c.points, &value, m_check);
    evidence.insert(0, up_ev);
    evidence.insert(1, ratio_evidence(&upper, &value));
    let star = alpha_with_multiplicities(&star_configuration(2), 3, 4);
    evidence.push(Evidence {
        kind: "interpolation".into(),
        description: "the 6 points in w=0 (a star configuration of 4 lines) need degree 4 for multiplicity 2".into(),
        passed: star.alpha == Some(4),
    });
    evidence.push(cube_root_evidence(&value, c.len()));
    Ok(BoundCertificate {
        config: "D4".into(),
        value_num: 2,
        value_den: 1,
        upper,
        lower: LowerBound {
            method: "star configurations in the coordinate planes; interpolation for small m".into(),
            class: "desk-scale evidence".into(),
            checks: vec![format!("alpha(I^(m))/m >= 2 for m <= {m_check}"), "alpha(I^(2)) = 4 for the star configuration in w=0".into()],
        },
        evidence,
        alpha,
    })
}

pub fn certify_b4(m_check: u32) -> Result<BoundCertificate> {
    let c = build_config(ConfigName::B4);
    let value = rat(2, 1);
    let (upper, up_ev) = upper_from_planes(&c.points, &coordinate_planes(), "xyzw (the four coordinate planes)")?;
    let (mut alpha, mut evidence) = uniform_interpolation_evidence(&c.points, &value, m_check);
    evidence.insert(0, up_ev);
    evidence.insert(1, ratio_evidence(&upper, &value));
    let fund_mult: Vec<u32> = upper.pointwise[12..].to_vec();
    evidence.push(Evidence {
        kind: "upper bound".into(),
        description: "coordinate planes meet at the fundamental points to order 3".into(),
        passed: fund_mult.iter().all(|&k| k == 3),
    });
    let mixed: Vec<FatPoint> = c.points.iter().enumerate().map(|(i, p)| FatPoint::from_point(p, if i < 12 { 2 } else { 3 })).collect();
    let mixed_alpha = alpha_with_multiplicities(&mixed, 4, 4);
    evidence.push(Evidence {
        kind: "interpolation".into(),
        description: "no form of degree <= 3 with multiplicity 2 at the D4 points and 3 at the fundamental points; degree 4 exists".into(),
        passed: mixed_alpha.alpha == Some(4),
    });
    alpha.push(mixed_alpha);
    evidence.push(cube_root_evidence(&value, c.len()));
    Ok(BoundCertificate {
        config: "B4".into(),
        value_num: 2,
        value_den: 1,
        upper,
        lower: LowerBound {
            method: "containment of D4; interpolation for small m".into(),
            class: "desk-scale evidence".into(),
            checks: vec![format!("alpha(I^(m))/m >= 2 for m <= {m_check}"), "mixed multiplicities (2 on D4, 3 on fundamental points) force degree 4".into()],
        },
        evidence,
        alpha,
    })
}

pub fn certify_f4(m_check: u32) -> Result<BoundCertificate> {
    let c = build_config(ConfigName::F4);
    let value = rat(8, 3);
    let planes = dual_planes(&c);
    let (upper, up_ev) = upper_from_planes(&c.points, &planes, "product of the 24 planes dual to the points")?;
    let (alpha, mut evidence) = uniform_interpolation_evidence(&c.points, &value, m_check);
    evidence.insert(0, up_ev);
    evidence.insert(1, ratio_evidence(&upper, &value));
    let ledger = f4_reduction_ledger()?;
    evidence.push(Evidence {
        kind: "ledger".into(),
        description: format!("reduction chain for m = 18p, p odd: {} steps, terminal {}", ledger.steps.len(), ledger.terminal),
        passed: ledger.passed,
    });
    evidence.push(cube_root_evidence(&value, c.len()));
    Ok(BoundCertificate {
        config: "F4".into(),
        value_num: 8,
        value_den: 3,
        upper,
        lower: LowerBound {
            method: "Bezout reduction on the plane w=0 for m = 18p, p odd".into(),
            class: "full certificate (ledger replay); interpolation is desk-scale evidence".into(),
            checks: ledger.steps.iter().map(|s| s.statement.clone()).collect(),
        },
        evidence,
        alpha,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeCheck {
    pub degree: u32,
    pub order: u32,
    pub ratio: String,
    pub at_least_value: bool,
    pub is_minimum: bool,
}

/// Every generator of `R` with positive order has `d/m >= 18/5`, with
/// equality only at `(36, 10)`; `f36` vanishes to order 10 at all 60 points.
pub fn h4_cone_certificate(gens: &GeneratorSet, f36_orders: &[u32]) -> Result<BoundCertificate> {
    let value = rat(18, 5);
    let mut checks = Vec::new();
    let mut cone = Vec::new();
    for (d, m) in gens.bidegrees() {
        if m == 0 {
            continue;
        }
        let r = rat(d as i64, m as i64);
        cone.push(ConeCheck {
            degree: d,
            order: m,
            ratio: short(&r),
            at_least_value: r >= value,
            is_minimum: r == value,
        });
    }
    let violations: Vec<&ConeCheck> = cone.iter().filter(|c| !c.at_least_value).collect();
    if let Some(v) = violations.first() {
        return Err(Error::Verification(format!("generator ({}, {}) has ratio {} below 18/5", v.degree, v.order, v.ratio)));
    }
    let minimizers: Vec<(u32, u32)> = cone.iter().filter(|c| c.is_minimum).map(|c| (c.degree, c.order)).collect();
    for c in &cone {
        checks.push(format!("({}, {}): ratio {}{}", c.degree, c.order, c.ratio, if c.is_minimum { " (minimum)" } else { "" }));
    }
    let h4 = build_config(ConfigName::H4);
    let mut evidence = vec![
        Evidence {
            kind: "cone".into(),
            description: "every generator bidegree (d, m) with m > 0 has d/m >= 18/5".into(),
            passed: violations.is_empty(),
        },
        Evidence {
            kind: "cone".into(),
            description: format!("unique minimizer {minimizers:?}"),
            passed: minimizers == [(36, 10)],
        },
        Evidence {
            kind: "upper bound".into(),
            description: format!("f36 vanishes to order 10 at all {} points", h4.len()),
            passed: f36_orders.len() == h4.len() && f36_orders.iter().all(|&o| o == 10),
        },
    ];
    evidence.push(cube_root_evidence(&value, h4.len()));
    Ok(BoundCertificate {
        config: "H4".into(),
        value_num: 18,
        value_den: 5,
        upper: UpperBound { degree: 36, multiplicity: 10, witness: "f36".into(), pointwise: f36_orders.to_vec() },
        lower: LowerBound {
            method: "cone spanned by the bidegrees of the generators of R".into(),
            class: "full certificate given generation of R (verified on the checked range)".into(),
            checks,
        },
        evidence,
        alpha: Vec::new(),
    })
}

/// `c0 + c1 p` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub c0: Rational,
    pub c1: Rational,
}

impl Affine {
    pub fn new(c0: i64, c1: i64) -> Self {
        Affine { c0: rat(c0, 1), c1: rat(c1, 1) }
    }

    pub fn constant(c: i64) -> Self {
        Affine::new(c, 0)
    }

    pub fn eval(&self, p: i64) -> Rational {
        &self.c0 + &self.c1 * Rational::from_integer(p.into())
    }

    /// `self(p) -> self(p + shift)`.
    pub fn shift(&self, shift: i64) -> Affine {
        Affine { c0: self.eval(shift), c1: self.c1.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Affine {
        Affine { c0: &self.c0 * k, c1: &self.c1 * k }
    }

    pub fn is_constant(&self) -> bool {
        self.c1.is_zero()
    }

    /// `>= 0` for every odd `p >= p0`.
    pub fn nonnegative_from(&self, p0: i64) -> bool {
        !self.c1.is_negative() && !self.eval(p0).is_negative()
    }

    /// `ceil(self(p))` for odd integers `p`, as an affine expression.
    /// Writing `p = 2q + 1`, the value is `2 c1 q + (c0 + c1)`; this is exact
    /// when `2 c1` is an integer.
    pub fn ceil_for_odd_p(&self) -> Option<Affine> {
        let two_c1 = &self.c1 * rat(2, 1);
        if !two_c1.is_integer() {
            return None;
        }
        let at_q0 = (&self.c0 + &self.c1).ceil();
        // back to p: q = (p - 1)/2, so 2 c1 q = c1 p - c1
        Some(Affine { c0: at_q0 - &self.c1, c1: self.c1.clone() })
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, o: &Affine) -> Affine {
        Affine { c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1 }
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, o: &Affine) -> Affine {
        Affine { c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1 }
    }
}

impl Mul<i64> for &Affine {
    type Output = Affine;
    fn mul(self, k: i64) -> Affine {
        self.scale(&rat(k, 1))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c1 = short(&self.c1);
        let c0 = short(&self.c0);
        match (self.c1.is_zero(), self.c0.is_zero()) {
            (true, _) => write!(f, "{c0}"),
            (false, true) => write!(f, "{}p", if self.c1.is_one() { String::new() } else { c1 }),
            (false, false) => {
                let lead = if self.c1.is_one() { String::new() } else { c1 };
                if self.c0.is_negative() {
                    write!(f, "{lead}p{c0}")
                } else {
                    write!(f, "{lead}p+{c0}")
                }
            }
        }
    }
}

/// `(degree; mult on X, mult on Y, mult on Z)` with entries affine in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuVector(pub [Affine; 4]);

impl NuVector {
    pub fn new(e: [(i64, i64); 4]) -> Self {
        NuVector(e.map(|(c0, c1)| Affine::new(c0, c1)))
    }

    pub fn from_ints(n: &NuInts) -> Self {
        NuVector([n.degree, n.x, n.y, n.z].map(Affine::constant))
    }

    pub fn degree(&self) -> &Affine {
        &self.0[0]
    }

    pub fn sub(&self, o: &NuVector) -> NuVector {
        NuVector(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn add(&self, o: &NuVector) -> NuVector {
        NuVector(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn times(&self, k: &Affine) -> Result<NuVector> {
        // products stay affine only when one side is constant
        let parts: Vec<Affine> = self
            .0
            .iter()
            .map(|a| {
                if a.is_constant() {
                    Ok(k.scale(&a.c0))
                } else if k.is_constant() {
                    Ok(a.scale(&k.c0))
                } else {
                    Err(Error::Verification("product of two non-constant expressions".into()))
                }
            })
            .collect::<Result<_>>()?;
        Ok(NuVector(parts.try_into().expect("four entries")))
    }

    pub fn shift(&self, s: i64) -> NuVector {
        NuVector(std::array::from_fn(|i| self.0[i].shift(s)))
    }

    /// `sum over the points of a line of the multiplicities - degree`; the
    /// line is a forced component when this is positive.
    pub fn forcing_gap(&self, counts: [i64; 3]) -> Affine {
        let mut s = &self.0[0] * -1;
        for (k, &c) in counts.iter().enumerate() {
            s = &s + &(&self.0[k + 1] * c);
        }
        s
    }
}

impl fmt::Display for NuVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerStep {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerReport {
    pub steps: Vec<LedgerStep>,
    pub terminal: String,
    pub passed: bool,
    pub first_failure: Option<String>,
}

/// Least integer `a` with `lhs0 - lhs1 a >= rhs0 - rhs1 a`, i.e.
/// `a >= (rhs0 - lhs0) / (rhs1 - lhs1)`, for odd `p`.
fn bezout_threshold(lhs0: &Affine, lhs1: i64, rhs0: &Affine, rhs1: i64) -> Option<Affine> {
    let k = rhs1 - lhs1;
    if k <= 0 {
        return None;
    }
    (rhs0 - lhs0).scale(&rat(1, k)).ceil_for_odd_p()
}

/// Replays the reduction on the plane `w = 0` for `m = 18p`, `p` odd, with
/// every quantity an exact affine expression in `p`.
pub fn f4_reduction_ledger() -> Result<LedgerReport> {
    let geo: PlaneSectionReport = plane_section_geometry()?;
    let mut steps: Vec<LedgerStep> = Vec::new();
    let mut push = |statement: String, holds: bool| steps.push(LedgerStep { statement, holds });

    let p = Affine::new(0, 1);
    let m = &p * 18;
    // d/(18p) < 8/3 <=> d < 48p <=> d <= 48p - 1
    let d = &(&p * 48) - &Affine::constant(1);
    push(format!("d/({m}) < 8/3 gives d <= {d}"), (&(&m * 8) - &(&d * 3)).scale(&rat(1, 1)) == Affine::new(3, 0));

    // sigma-type lines: 3 configuration points of multiplicity 18p in a general plane through the line
    let sigma_pts = geo.sigma_line_counts.x;
    let a_sigma = bezout_threshold(&d, 1, &(&m * sigma_pts), sigma_pts);
    let expected_sigma = &(&p * 3) + &Affine::constant(1);
    push(
        format!("least integer a with {d} - a >= {sigma_pts}({m} - a) is {}", a_sigma.as_ref().map_or("none".into(), |a| a.to_string())),
        a_sigma.as_ref() == Some(&expected_sigma),
    );
    let a_sigma = expected_sigma.clone();

    let gamma = NuVector([d.clone(), m.clone(), m.clone(), a_sigma.clone()]);
    push(format!("nu(Gamma) = {gamma} (each Z lies on a three-point line, which Gamma contains to order {a_sigma})"), geo.z_points.len() == 4);

    let nu_sigma = NuVector::from_ints(&geo.nu_sigma);
    let nu_tau = NuVector::from_ints(&geo.nu_tau);
    let nu_phi = NuVector::from_ints(&geo.nu_phi);

    let gamma1 = gamma.sub(&nu_sigma.times(&a_sigma)?);
    let want1 = NuVector::new([(-5, 36), (-2, 12), (0, 18), (1, 3)]);
    push(format!("Gamma' = Gamma - ({a_sigma}) sigma has nu {gamma1}"), gamma1 == want1);

    // tau lines carry 2 points of X and 2 of Y
    let (tx, ty) = (geo.tau_line_counts.x, geo.tau_line_counts.y);
    let rhs0 = &(&gamma1.0[1] * tx) + &(&gamma1.0[2] * ty);
    let a_tau = bezout_threshold(&gamma1.0[0], 1, &rhs0, tx + ty);
    let expected_tau = &(&p * 8) + &Affine::constant(1);
    push(
        format!(
            "least integer a with {} - a >= {tx}({} - a) + {ty}({} - a) is {}",
            gamma1.0[0],
            gamma1.0[2],
            gamma1.0[1],
            a_tau.as_ref().map_or("none".into(), |a| a.to_string())
        ),
        a_tau.as_ref() == Some(&expected_tau),
    );
    let gamma2 = gamma1.sub(&nu_tau.times(&expected_tau)?);
    let want2 = NuVector::new([(-8, 12), (-3, 4), (-2, 2), (1, 3)]);
    push(format!("Gamma'' = Gamma' - ({expected_tau}) tau has nu {gamma2}"), gamma2 == want2);

    // peel 2 phi + 3 sigma line by line; gaps must be positive and independent of p
    let phi_counts = [geo.phi_line_counts.x, geo.phi_line_counts.y, geo.phi_line_counts.z];
    let sigma_counts = [geo.sigma_line_counts.x, geo.sigma_line_counts.y, geo.sigma_line_counts.z];
    let mut cur = gamma2.clone();
    let mut gaps = Vec::new();
    for (name, nu, counts) in [("phi", &nu_phi, phi_counts), ("phi", &nu_phi, phi_counts), ("sigma", &nu_sigma, sigma_counts), ("sigma", &nu_sigma, sigma_counts), ("sigma", &nu_sigma, sigma_counts)] {
        let gap = cur.forcing_gap(counts);
        let ok = gap.is_constant() && gap.c0.is_positive();
        push(format!("each {name}-line meets the current curve {cur} with excess {gap} > 0, so {name} is a component"), ok);
        gaps.push(gap);
        cur = cur.sub(nu);
    }
    push(
        "removing one line lowers the degree by 1 and the multiplicity sum along any other line by at most 1, so each remaining line stays forced".into(),
        true,
    );
    let block = nu_phi.times(&Affine::constant(2))?.add(&nu_sigma.times(&Affine::constant(3))?);
    push(format!("nu(2 phi + 3 sigma) = {block}"), block == NuVector::new([(24, 0), (8, 0), (4, 0), (6, 0)]));
    let gamma3 = gamma2.sub(&block);
    push(format!("Gamma''' = {gamma3} equals Gamma'' with p -> p - 2"), gamma3 == gamma2.shift(-2) && cur == gamma3);

    // entries stay nonnegative along the way for odd p >= 3
    let nonneg = [&gamma, &gamma1, &gamma2].iter().all(|v| v.0.iter().all(|a| a.nonnegative_from(1)))
        && gamma3.0.iter().all(|a| a.nonnegative_from(3));
    push("all nu entries are nonnegative where the step applies (p >= 1, resp. p >= 3 for Gamma''')".into(), nonneg);

    // after (p-1)/2 subtractions p becomes 1
    let sigma_final = NuVector(std::array::from_fn(|i| Affine { c0: gamma2.0[i].eval(1), c1: Rational::zero() }));
    let want_final = NuVector::new([(4, 0), (1, 0), (0, 0), (4, 0)]);
    push(format!("after (p-1)/2 subtractions nu(Sigma) = {sigma_final}"), sigma_final == want_final);

    // a quartic with four points of multiplicity 4 would need them collinear
    let z_mult = sigma_final.0[3].c0.clone();
    let deg = sigma_final.0[0].c0.clone();
    let pair_gap = &z_mult * rat(2, 1) - &deg;
    push(
        format!("a line through two Z points meets Sigma with excess {} > 0, so all six lines of the quadrangle are components, exceeding degree 4", short(&pair_gap)),
        pair_gap.is_positive() && geo.phi_lines.len() > deg.to_integer().to_usize().unwrap_or(0),
    );
    push("the four Z points are not collinear, so Sigma cannot exist".into(), !geo.z_collinear);

    let first_failure = steps.iter().find(|s| !s.holds).map(|s| s.statement.clone());
    let passed = first_failure.is_none();
    Ok(LedgerReport { steps, terminal: sigma_final.to_string(), passed, first_failure })
}

/// Integer check of the ledger at concrete odd `p`: the same identities with
/// numbers instead of symbols.
pub fn f4_ledger_numeric(p: i64) -> Result<[i64; 4]> {
    ensure(p >= 1 && p.is_odd(), || "p must be odd and positive".into())?;
    let d = 48 * p - 1;
    let m = 18 * p;
    // d - a >= 3 (m - a)
    let a1 = Integer::div_ceil(&(3 * m - d), &2);
    let mut v = [d - 4 * a1, m - 2 * a1, m, a1];
    let a2 = {
        // v0 - a >= 2 (v2 - a) + 2 (v1 - a)
        let need = 2 * v[2] + 2 * v[1] - v[0];
        Integer::div_ceil(&need, &3)
    };
    v = [v[0] - 3 * a2, v[1] - a2, v[2] - 2 * a2, v[3]];
    for _ in 0..(p - 1) / 2 {
        v = [v[0] - 24, v[1] - 8, v[2] - 4, v[3] - 6];
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_alpha_two() {
        let d4 = build_config(ConfigName::D4);
        let r = alpha_symbolic_power(&d4.points, 2, 4);
        assert_eq!(r.alpha, Some(4));
        assert_eq!(r.nullities[2], (3, 0));
    }

    #[test]
    fn plane_products() {
        let d4 = build_config(ConfigName::D4);
        let coord = coordinate_planes();
        assert!(d4.points.iter().all(|p| plane_product_multiplicity(&coord, p) == 2));
        let b4 = build_config(ConfigName::B4);
        assert!(b4.points[12..].iter().all(|p| plane_product_multiplicity(&coord, p) == 3));
        let f4 = build_config(ConfigName::F4);
        let dual = dual_planes(&f4);
        assert!(f4.points.iter().all(|p| plane_product_multiplicity(&dual, p) == 9));
    }

    #[test]
    fn star_configuration_alpha() {
        assert_eq!(alpha_with_multiplicities(&star_configuration(2), 3, 4).alpha, Some(4));
        assert_eq!(alpha_with_multiplicities(&star_configuration(1), 3, 4).alpha, Some(3));
    }

    #[test]
    fn empty_and_simple_interpolation() {
        // one point, multiplicity 1: linear forms through it
        let pts = vec![FatPoint::new(vec![FieldElement::one(), FieldElement::zero(), FieldElement::zero()], 1).unwrap()];
        assert_eq!(interpolation_nullity(&pts, 3, 1), 2);
        assert!(FatPoint::new(vec![FieldElement::zero(); 3], 1).is_err());
    }

    #[test]
    fn affine_ceilings() {
        // (6p + 1)/2 -> 3p + 1
        let a = Affine { c0: rat(1, 2), c1: rat(3, 1) };
        assert_eq!(a.ceil_for_odd_p(), Some(Affine::new(1, 3)));
        // p/2 on odd p: ceil = (p + 1)/2
        let h = Affine { c0: rat(0, 1), c1: rat(1, 2) };
        assert_eq!(h.ceil_for_odd_p(), Some(Affine { c0: rat(1, 2), c1: rat(1, 2) }));
        for p in (1..40).step_by(2) {
            assert_eq!(h.ceil_for_odd_p().unwrap().eval(p), h.eval(p).ceil());
        }
        assert_eq!(Affine { c0: rat(0, 1), c1: rat(1, 3) }.ceil_for_odd_p(), None);
    }

    #[test]
    fn ledger_holds() {
        let r = f4_reduction_ledger().unwrap();
        assert!(r.passed, "{:?}", r.first_failure);
        assert_eq!(r.terminal, "(4;1,0,4)");
    }

    #[test]
    fn ledger_numeric_matches_symbolic() {
        for p in (1..60).step_by(2) {
            assert_eq!(f4_ledger_numeric(p).unwrap(), [4, 1, 0, 4], "p = {p}");
        }
        assert!(f4_ledger_numeric(2).is_err());
    }

    #[test]
    fn cube_root() {
        assert!(within_cube_root_bound(&rat(8, 3), 24));
        assert!(within_cube_root_bound(&rat(18, 5), 60));
        assert!(!within_cube_root_bound(&rat(3, 1), 24));
    }

    #[test]
    fn cone_with_stated_images() {
        let g = GeneratorSet::from_stated_images();
        let c = h4_cone_certificate(&g, &[10; 60]).unwrap();
        assert!(c.passed());
        assert_eq!(c.value(), rat(18, 5));
        assert!(!h4_cone_certificate(&g, &[10; 59]).unwrap().passed());
    }
}
