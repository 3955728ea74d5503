//! The bigraded ring `R = ⊕ (T_d ∩ I^m)/(T_d ∩ I^(m+1))` of leading forms of
//! invariants at `p`, computed three ways: from the invariants themselves,
//! from the twelve generator images, and from the closed-form Hilbert series.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::field::FieldElement;
use crate::invariants::{s_monomials, InvariantName, LocalExpansions, Table1Report};
use crate::linalg::{self, IncrementalEchelon, Row};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, VarSet};

/// Degree weights of `f2, f12, f20, f30`.
pub const FUNDAMENTAL_DEGREES: [u32; 4] = [2, 12, 20, 30];

/// Exponents `(a, b, c, e)` with `2a + 12b + 20c + 30e = d`.
pub fn t_monomials(d: u32) -> Vec<[u16; 4]> {
    let mut out = Vec::new();
    if d % 2 == 1 {
        return out;
    }
    for e in 0..=d / 30 {
        for c in 0..=(d - 30 * e) / 20 {
            for b in 0..=(d - 30 * e - 20 * c) / 12 {
                let rest = d - 30 * e - 20 * c - 12 * b;
                out.push([(rest / 2) as u16, b as u16, c as u16, e as u16]);
            }
        }
    }
    out.sort();
    out
}

/// `dim T_d`: the number of degree-`d` monomials in the fundamental invariants.
pub fn dim_t(d: u32) -> usize {
    t_monomials(d).len()
}

/// `dim C[s2, s6, s10]_m`.
pub fn dim_s_forms(m: u32) -> usize {
    s_monomials(m).len()
}

/// The invariant-side oracle: local expansions at `p` of monomials in the
/// fundamental invariants, and ranks of their low-degree coefficients.
pub struct TSideOracle {
    local: LocalExpansions,
    cache: HashMap<[u16; 4], Polynomial>,
    columns: Vec<Monomial>,
}

impl TSideOracle {
    /// Handles conditions of order up to `local.bound()`, i.e.
    /// `dim_T_cap_I(d, m)` for `m <= bound + 1`.
    pub fn new(local: LocalExpansions) -> Self {
        let k = local.bound();
        let columns: Vec<Monomial> = (0..=k).flat_map(|deg| monomials_of_degree(3, deg)).map(|m| Monomial([m.0[0], m.0[1], m.0[2], 0])).collect();
        TSideOracle { local, cache: HashMap::new(), columns }
    }

    pub fn bound(&self) -> u32 {
        self.local.bound()
    }

    fn expansion(&mut self, e: [u16; 4]) -> Polynomial {
        if let Some(p) = self.cache.get(&e) {
            return p.clone();
        }
        let p = match (0..4).find(|&i| e[i] > 0) {
            None => Polynomial::one(VarSet::Xyzw),
            Some(i) => {
                let mut prev = e;
                prev[i] -= 1;
                let base = self.expansion(prev);
                base.mul_truncated(self.local.local(i), self.local.bound()).expect("same variables")
            }
        };
        self.cache.insert(e, p.clone());
        p
    }

    /// `dim(T_d ∩ I^m)` for `m = 0, 1, .., bound + 1`.
    pub fn dims_t_cap_i(&mut self, d: u32) -> Vec<usize> {
        let monos = t_monomials(d);
        let n = monos.len();
        let k = self.bound();
        let mut out = vec![n];
        if n == 0 {
            out.resize(k as usize + 2, 0);
            return out;
        }
        let exps: Vec<Polynomial> = monos.iter().map(|&e| self.expansion(e)).collect();
        // rank of the first columns, transposed: each coefficient column is a vector of length n
        let mut ech = IncrementalEchelon::new(n);
        let mut col = 0;
        for deg in 0..=k {
            while col < self.columns.len() && self.columns[col].affine_degree() == deg {
                let mono = &self.columns[col];
                let v: Row = exps.iter().map(|p| p.coeff(mono)).collect();
                if v.iter().any(|x| !x.is_zero()) {
                    ech.insert(v);
                }
                col += 1;
            }
            out.push(n - ech.rank());
        }
        out
    }

    /// `dim(T_d ∩ I^m)`.
    pub fn dim_t_cap_i(&mut self, d: u32, m: u32) -> Result<usize> {
        ensure(m <= self.bound() + 1, || format!("order {m} exceeds the expansion bound {}", self.bound()))?;
        Ok(self.dims_t_cap_i(d)[m as usize])
    }

    /// `dim R_{d,m} = dim(T_d ∩ I^m) - dim(T_d ∩ I^(m+1))`.
    pub fn dim_r(&mut self, d: u32, m: u32) -> Result<usize> {
        ensure(m <= self.bound(), || format!("order {m} exceeds the expansion bound {}", self.bound()))?;
        let dims = self.dims_t_cap_i(d);
        Ok(dims[m as usize] - dims[m as usize + 1])
    }

    /// A basis of `T_d ∩ I^m`, as coefficient vectors over [`t_monomials`]`(d)`.
    pub fn kernel(&mut self, d: u32, m: u32) -> Result<Vec<Row>> {
        ensure(m <= self.bound() + 1, || format!("order {m} exceeds the expansion bound {}", self.bound()))?;
        let monos = t_monomials(d);
        let exps: Vec<Polynomial> = monos.iter().map(|&e| self.expansion(e)).collect();
        let rows: Vec<Row> = self
            .columns
            .iter()
            .filter(|c| c.affine_degree() < m)
            .map(|c| exps.iter().map(|p| p.coeff(c)).collect::<Row>())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Ok(linalg::nullspace(rows, monos.len()))
    }
}

/// Coefficients of a polynomial in [`VarSet::Fundamental`] over [`t_monomials`]`(d)`.
pub fn t_coordinates(expr: &Polynomial, d: u32) -> Result<Row> {
    ensure(expr.vars() == VarSet::Fundamental, || "expected a polynomial in f2, f12, f20, f30".into())?;
    ensure(expr.weighted_degrees().all(|w| w == d), || format!("expression is not of degree {d}"))?;
    Ok(t_monomials(d).iter().map(|e| expr.coeff(&Monomial(*e))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub order: u32,
    /// The image in `s2, s6, s10, w`.
    #[serde(serialize_with = "serialize_display")]
    pub image: Polynomial,
}

fn serialize_display<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// The twelve generators of `R` with their images.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSet {
    pub generators: Vec<Generator>,
}

pub const GENERATOR_BIDEGREES: [(u32, u32); 12] =
    [(2, 0), (12, 2), (20, 4), (24, 6), (30, 6), (32, 8), (36, 10), (42, 10), (44, 12), (54, 14), (60, 16), (66, 18)];

impl GeneratorSet {
    /// From verified leading forms.
    pub fn from_table1(report: &Table1Report) -> Result<Self> {
        let generators: Vec<Generator> = report
            .rows
            .iter()
            .map(|r| Generator { name: r.name.clone(), degree: r.degree, order: r.order, image: r.image.clone() })
            .collect();
        let g = GeneratorSet { generators };
        g.check()?;
        Ok(g)
    }

    /// The images exactly as asserted by the Macaulay2 check in the source,
    /// without computing any invariant.
    pub fn from_stated_images() -> Self {
        let generators = InvariantName::ALL
            .iter()
            .map(|&n| {
                let w = Polynomial::monomial(VarSet::Stabilizer, Monomial([0, 0, 0, (n.degree() - n.order()) as u16]), FieldElement::from_int(1));
                let s = crate::invariants::table1_expression(n).scale(&crate::invariants::appendix_scalar(n));
                Generator { name: n.to_string(), degree: n.degree(), order: n.order(), image: &s * &w }
            })
            .collect();
        GeneratorSet { generators }
    }

    fn check(&self) -> Result<()> {
        let bd: Vec<(u32, u32)> = self.generators.iter().map(|g| (g.degree, g.order)).collect();
        ensure(bd == GENERATOR_BIDEGREES, || format!("generator bidegrees {bd:?}"))?;
        for g in &self.generators {
            let ok = g.image.terms().all(|(m, _)| {
                m.weighted_degree([2, 6, 10, 1]) == g.degree && m.weighted_degree([2, 6, 10, 0]) == g.order
            });
            ensure(ok && !g.image.is_zero(), || format!("image of {} is not of bidegree ({}, {})", g.name, g.degree, g.order))?;
        }
        Ok(())
    }

    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        self.generators.iter().map(|g| (g.degree, g.order)).collect()
    }

    /// `s`-part of every product of generators other than `f2` whose orders
    /// sum to `m`, with its degree.
    fn products_of_order(&self, m: u32) -> Vec<(u32, Polynomial)> {
        let parts: Vec<(u32, u32, Polynomial)> = self
            .generators
            .iter()
            .filter(|g| g.order > 0)
            .map(|g| {
                let s = Polynomial::from_terms(
                    VarSet::Stabilizer,
                    g.image.terms().map(|(mo, c)| (Monomial([mo.0[0], mo.0[1], mo.0[2], 0]), c.clone())),
                );
                (g.degree, g.order, s)
            })
            .collect();
        let mut out = Vec::new();
        fn rec(parts: &[(u32, u32, Polynomial)], i: usize, left: u32, d: u32, acc: Polynomial, out: &mut Vec<(u32, Polynomial)>) {
            if left == 0 {
                out.push((d, acc));
                return;
            }
            if i == parts.len() {
                return;
            }
            let (gd, gm, ref gs) = parts[i];
            // use generator i zero or more times
            rec(parts, i + 1, left, d, acc.clone(), out);
            let mut acc = acc;
            let mut dd = d;
            let mut l = left;
            while l >= gm {
                acc = &acc * gs;
                dd += gd;
                l -= gm;
                rec(parts, i + 1, l, dd, acc.clone(), out);
            }
        }
        rec(&parts, 0, m, 0, Polynomial::one(VarSet::Stabilizer), &mut out);
        out.sort_by_key(|(d, _)| *d);
        out
    }

    /// `dim R'_{d,m}` for `d = 0, 1, .., d_max`.
    pub fn dims_rprime_column(&self, m: u32, d_max: u32) -> Vec<usize> {
        let basis: Vec<Monomial> = s_monomials(m).into_iter().map(|e| Monomial([e[0], e[1], e[2], 0])).collect();
        let mut ech = IncrementalEchelon::new(basis.len());
        let prods = self.products_of_order(m);
        let mut out = Vec::with_capacity(d_max as usize + 1);
        let mut k = 0;
        for d in 0..=d_max {
            if d % 2 == 1 {
                out.push(0);
                continue;
            }
            while k < prods.len() && prods[k].0 <= d {
                if !ech.is_full() {
                    ech.insert(basis.iter().map(|b| prods[k].1.coeff(b)).collect());
                }
                k += 1;
            }
            out.push(ech.rank());
        }
        out
    }

    pub fn dim_rprime(&self, d: u32, m: u32) -> usize {
        self.dims_rprime_column(m, d)[d as usize]
    }
}

/// `numerator / prod (1 - u^a v^b)` with integer coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertSeries {
    /// `(coefficient, u-exponent, v-exponent)`.
    pub numerator: Vec<(i64, u32, u32)>,
    /// Factors `(a, b)` of `1 - u^a v^b`.
    pub denominator: Vec<(u32, u32)>,
}

impl HilbertSeries {
    /// The closed form stated for `R`.
    pub fn stated() -> Self {
        HilbertSeries {
            numerator: vec![
                (1, 0, 0),
                (1, 12, 2),
                (1, 24, 6),
                (1, 30, 6),
                (1, 32, 8),
                (-1, 32, 6),
                (1, 42, 10),
                (-1, 44, 10),
                (1, 54, 14),
                (-1, 56, 14),
                (1, 66, 18),
                (-1, 66, 16),
                (-1, 68, 18),
                (-1, 74, 18),
                (-1, 86, 22),
                (-1, 98, 24),
            ],
            denominator: vec![(60, 16), (44, 12), (36, 10), (20, 4), (2, 0)],
        }
    }

    /// Formal expansion up to `u^d_max v^m_max`.
    pub fn expand(&self, d_max: u32, m_max: u32) -> Result<BidegreeDimensionTable> {
        ensure(self.denominator.iter().all(|&(a, b)| a + b > 0), || "denominator factor with zero exponent".into())?;
        let (nd, nm) = (d_max as usize + 1, m_max as usize + 1);
        let mut c = vec![vec![0i64; nm]; nd];
        for &(k, a, b) in &self.numerator {
            if (a as usize) < nd && (b as usize) < nm {
                c[a as usize][b as usize] += k;
            }
        }
        for &(a, b) in &self.denominator {
            let (a, b) = (a as usize, b as usize);
            // multiply by 1/(1 - u^a v^b) = 1 + u^a v^b + ...
            for d in a..nd {
                for m in b..nm {
                    c[d][m] += c[d - a][m - b];
                }
            }
        }
        let negative: Vec<(u32, u32)> =
            (0..nd).flat_map(|d| (0..nm).map(move |m| (d, m))).filter(|&(d, m)| c[d][m] < 0).map(|(d, m)| (d as u32, m as u32)).collect();
        let entries: BTreeMap<(u32, u32), usize> = (0..nd)
            .flat_map(|d| (0..nm).map(move |m| (d, m)))
            .filter(|&(d, m)| c[d][m] > 0)
            .map(|(d, m)| ((d as u32, m as u32), c[d][m] as usize))
            .collect();
        Ok(BidegreeDimensionTable { d_max, m_max, entries, negative_coefficients: negative })
    }

    /// The single-variable series at `v = 1`, up to `u^d_max`.
    pub fn at_v_one(&self, d_max: u32) -> Vec<i64> {
        let nd = d_max as usize + 1;
        let mut c = vec![0i64; nd];
        for &(k, a, _) in &self.numerator {
            if (a as usize) < nd {
                c[a as usize] += k;
            }
        }
        for &(a, _) in &self.denominator {
            let a = a as usize;
            for d in a..nd {
                c[d] += c[d - a];
            }
        }
        c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BidegreeDimensionTable {
    pub d_max: u32,
    pub m_max: u32,
    /// Nonzero entries only.
    pub entries: BTreeMap<(u32, u32), usize>,
    /// Bidegrees with a negative coefficient (a series that cannot be a
    /// Hilbert series in this range).
    pub negative_coefficients: Vec<(u32, u32)>,
}

impl BidegreeDimensionTable {
    pub fn get(&self, d: u32, m: u32) -> usize {
        self.entries.get(&(d, m)).copied().unwrap_or(0)
    }

    pub fn row_sum(&self, d: u32) -> usize {
        self.entries.range((d, 0)..=(d, u32::MAX)).map(|(_, v)| v).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub degree: u32,
    pub order: u32,
    pub series: usize,
    pub other: usize,
    pub oracle: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub d_max: u32,
    pub m_max: u32,
    pub heavy_d_max: u32,
    pub cells_checked_rprime: usize,
    pub cells_checked_r: usize,
    pub row_sums_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
    pub note: String,
}

/// Three-way agreement of series, `R'` and `R` on the given range, and the
/// row sums `sum_m dim R_{d,m} = dim T_d`.
pub fn verify_main_theorem(
    gens: &GeneratorSet,
    t_side: Option<&mut TSideOracle>,
    d_max: u32,
    m_max: u32,
    heavy_d_max: u32,
) -> Result<MainTheoremReport> {
    let hs = HilbertSeries::stated();
    let series = hs.expand(d_max, m_max.max(d_max))?;
    ensure(series.negative_coefficients.is_empty(), || format!("negative series coefficients at {:?}", series.negative_coefficients))?;
    let mut mismatches = Vec::new();
    let mut cells_rp = 0;
    for m in 0..=m_max {
        let col = gens.dims_rprime_column(m, d_max);
        for d in 0..=d_max {
            cells_rp += 1;
            if col[d as usize] != series.get(d, m) {
                mismatches.push(Mismatch { degree: d, order: m, series: series.get(d, m), other: col[d as usize], oracle: "R'".into() });
            }
        }
    }
    let mut row_sums = 0;
    for d in 0..=d_max {
        row_sums += 1;
        if series.row_sum(d) != dim_t(d) {
            mismatches.push(Mismatch { degree: d, order: u32::MAX, series: series.row_sum(d), other: dim_t(d), oracle: "dim T".into() });
        }
    }
    let mut cells_r = 0;
    let mut note = String::new();
    if let Some(t) = t_side {
        let top = heavy_d_max.min(d_max);
        let k = t.bound().min(m_max);
        if t.bound() < m_max {
            note = format!("R compared for m <= {k} (expansion bound)");
        }
        for d in 0..=top {
            let dims = t.dims_t_cap_i(d);
            for m in 0..=k {
                cells_r += 1;
                let r = dims[m as usize] - dims[m as usize + 1];
                if r != series.get(d, m) {
                    mismatches.push(Mismatch { degree: d, order: m, series: series.get(d, m), other: r, oracle: "R".into() });
                }
            }
        }
    }
    let passed = mismatches.is_empty();
    Ok(MainTheoremReport {
        d_max,
        m_max,
        heavy_d_max,
        cells_checked_rprime: cells_rp,
        cells_checked_r: cells_r,
        row_sums_checked: row_sums,
        mismatches,
        passed,
        note,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Row {
    pub m: u32,
    pub degrees: Vec<u32>,
    /// Parallel to `degrees`: whether a generator has bidegree `(d, m)`.
    pub generator: Vec<bool>,
}

/// For each even `m`, the degrees `d` repeated `dim R_{d,m} - dim R_{d-2,m}`
/// times, up to the point where `dim R_{d,m}` reaches `dim C[s2,s6,s10]_m`.
pub fn table2_report(gens: &GeneratorSet, m_max: u32) -> Result<Vec<Table2Row>> {
    let bidegrees = gens.bidegrees();
    let mut rows = Vec::new();
    for m in (0..=m_max).step_by(2) {
        let target = dim_s_forms(m);
        // rows end at d = 5 m; the rest is slack
        let d_max = 5 * m + 60;
        let col = gens.dims_rprime_column(m, d_max);
        let mut degrees = Vec::new();
        let mut last = 0;
        let mut d = 0;
        while last < target {
            if d > d_max {
                return Err(Error::Verification(format!("row m = {m}: dimension {last} short of {target} at degree {d_max}")));
            }
            let cur = col[d as usize];
            for _ in last..cur {
                degrees.push(d);
            }
            last = last.max(cur);
            d += 2;
        }
        // one mark per generator of that bidegree, on the first occurrences
        let mut left: BTreeMap<u32, usize> = BTreeMap::new();
        for &(gd, gm) in &bidegrees {
            if gm == m {
                *left.entry(gd).or_default() += 1;
            }
        }
        let generator = degrees
            .iter()
            .map(|d| match left.get_mut(d) {
                Some(k) if *k > 0 => {
                    *k -= 1;
                    true
                }
                _ => false,
            })
            .collect();
        rows.push(Table2Row { m, degrees, generator });
    }
    Ok(rows)
}

/// The published rows `m = 0, 2, ..., 30` and, per row, how many leading
/// entries are generator degrees.
pub const STATED_TABLE2: [(u32, &[u32], usize); 16] = [
    (0, &[0], 0),
    (2, &[12], 1),
    (4, &[20], 1),
    (6, &[24, 30], 2),
    (8, &[32, 40], 1),
    (10, &[36, 42, 50], 2),
    (12, &[44, 48, 52, 60], 1),
    (14, &[54, 56, 62, 70], 1),
    (16, &[60, 60, 64, 72, 80], 1),
    (18, &[66, 68, 72, 74, 82, 90], 1),
    (20, &[72, 76, 78, 80, 84, 92, 100], 0),
    (22, &[80, 84, 84, 86, 90, 94, 102, 110], 0),
    (24, &[88, 90, 92, 92, 96, 100, 104, 112, 120], 0),
    (26, &[96, 96, 98, 100, 102, 106, 110, 114, 122, 130], 0),
    (28, &[102, 104, 104, 108, 108, 112, 116, 120, 124, 132, 140], 0),
    (30, &[108, 110, 112, 114, 114, 116, 118, 122, 126, 130, 134, 142, 150], 0),
];

/// Rows of `computed` differing from [`STATED_TABLE2`], degrees or marks.
pub fn table2_differences(computed: &[Table2Row]) -> Vec<String> {
    let mut out = Vec::new();
    for r in computed {
        let Some((_, degs, marks)) = STATED_TABLE2.iter().find(|s| s.0 == r.m) else {
            out.push(format!("row {} is not in the published table", r.m));
            continue;
        };
        if r.degrees != *degs {
            out.push(format!("row {}: computed {:?}, published {:?}", r.m, r.degrees, degs));
        }
        let want: Vec<bool> = (0..degs.len()).map(|i| i < *marks).collect();
        if r.generator != want {
            out.push(format!("row {}: generator marks {:?}, published {:?}", r.m, r.generator, want));
        }
    }
    out
}

/// Markdown with generator degrees underlined.
pub fn table2_markdown(rows: &[Table2Row]) -> String {
    let mut s = String::from("| m | degrees d |\n|---|---|\n");
    for r in rows {
        let ds: Vec<String> =
            r.degrees.iter().zip(&r.generator).map(|(d, g)| if *g { format!("<u>{d}</u>") } else { d.to_string() }).collect();
        s.push_str(&format!("| {} | {} |\n", r.m, ds.join(" ")));
    }
    s
}
