//! Build order group → invariants → downstream reports, with an optional
//! on-disk cache, and the acceptance checks run by `verify-all`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{load_group, load_polynomial, save_group, save_polynomial, CacheDir};
use crate::configs::{
    build_config, dual_planes, f4_points, incidence, plane_section_geometry, three_point_lines, ConfigName, F4_TRIPLES,
};
use crate::error::{Error, Result};
use crate::graded::{
    dim_t, t_coordinates, table2_differences, table2_report, verify_main_theorem, GeneratorSet, HilbertSeries, TSideOracle,
};
use crate::group::{base_point, h4_generators, MatrixGroup, F4_ORDER, H4_ORDER};
use crate::invariants::{
    build_fundamentals, build_stabilizer_invariants, expand_invariant, vanishing_order, verify_table1, FundamentalInvariants,
    InvariantName, LocalExpansions, StabilizerInvariants, Table1Report,
};
use crate::poly::Polynomial;
use crate::projective::ProjectivePoint;
use crate::waldschmidt::{certify_b4, certify_d4, certify_f4, f4_reduction_ledger, h4_cone_certificate, BoundCertificate};

pub const SCHEMA: &str = "symwald/1";

/// Verification ranges.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Ranges {
    pub d_max: u32,
    pub m_max: u32,
    pub heavy_d_max: u32,
    pub m_check: u32,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges { d_max: 66, m_max: 18, heavy_d_max: 44, m_check: 3 }
    }
}

impl Ranges {
    pub fn validate(&self) -> Result<()> {
        if self.d_max == 0 || self.m_max == 0 || self.heavy_d_max == 0 || self.m_check == 0 {
            return Err(Error::Verification("ranges must be positive".into()));
        }
        Ok(())
    }
}

/// Expansion bound for the local expansions at `p`: Table 1 needs orders up
/// to 18 and the uniqueness check order 20.
pub const LOCAL_BOUND: u32 = 20;

#[derive(Default)]
pub struct Pipeline {
    cache: CacheDir,
    pub warnings: Vec<String>,
    h4: Option<MatrixGroup>,
    f4: Option<MatrixGroup>,
    fund: Option<FundamentalInvariants>,
    derived: BTreeMap<InvariantName, Polynomial>,
    local: Option<LocalExpansions>,
    stab: Option<StabilizerInvariants>,
    table1: Option<Table1Report>,
    f36_orders: Option<Vec<u32>>,
}

impl Pipeline {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Pipeline { cache: CacheDir(cache_dir), ..Default::default() }
    }

    pub fn h4_group(&mut self) -> Result<&MatrixGroup> {
        if self.h4.is_none() {
            let g = self.cache.load_or_build(
                "w_h4.group",
                |p| {
                    let g = load_group(p)?;
                    if g.order() != H4_ORDER || g.generators() != h4_generators() {
                        return Err(Error::Cache("stored group is not W(H4)".into()));
                    }
                    Ok(g)
                },
                MatrixGroup::w_h4,
                |p, g| save_group(p, g),
                &mut self.warnings,
            )?;
            self.h4 = Some(g);
        }
        Ok(self.h4.as_ref().expect("set above"))
    }

    pub fn f4_group(&mut self) -> Result<&MatrixGroup> {
        if self.f4.is_none() {
            let g = self.cache.load_or_build(
                "w_f4.group",
                |p| {
                    let g = load_group(p)?;
                    if g.order() != F4_ORDER {
                        return Err(Error::Cache("stored group is not W(F4)".into()));
                    }
                    Ok(g)
                },
                MatrixGroup::w_f4,
                |p, g| save_group(p, g),
                &mut self.warnings,
            )?;
            self.f4 = Some(g);
        }
        Ok(self.f4.as_ref().expect("set above"))
    }

    pub fn fundamentals(&mut self) -> Result<&FundamentalInvariants> {
        if self.fund.is_some() {
            return Ok(self.fund.as_ref().expect("checked"));
        }
        const NAMES: [&str; 7] = ["f2", "f12", "f20", "f30", "g12", "g20", "g30"];
        let mut loaded = None;
        if let Some(paths) = NAMES.iter().map(|n| self.cache.path(&format!("{n}.poly"))).collect::<Option<Vec<_>>>() {
            if paths.iter().all(|p| p.exists()) {
                let attempt = paths.iter().map(|p| load_polynomial(p)).collect::<Result<Vec<_>>>().and_then(|v| {
                    let mut it = v.into_iter();
                    let mut next = || it.next().expect("seven");
                    let f = FundamentalInvariants { f2: next(), f12: next(), f20: next(), f30: next(), g12: next(), g20: next(), g30: next() };
                    f.verify_pointwise(&h4_generators())?;
                    Ok(f)
                });
                match attempt {
                    Ok(f) => loaded = Some(f),
                    Err(e) => self.warnings.push(format!("cached invariants unusable ({e}); rebuilding")),
                }
            }
        }
        let fund = match loaded {
            Some(f) => f,
            None => {
                let f = build_fundamentals(self.h4_group()?)?;
                if let Some(dir) = &self.cache.0 {
                    let polys = [&f.f2, &f.f12, &f.f20, &f.f30, &f.g12, &f.g20, &f.g30];
                    for (n, p) in NAMES.iter().zip(polys) {
                        if let Err(e) = save_polynomial(&dir.join(format!("{n}.poly")), p) {
                            self.warnings.push(format!("could not write cache file {n}.poly: {e}"));
                        }
                    }
                }
                f
            }
        };
        self.fund = Some(fund);
        Ok(self.fund.as_ref().expect("set above"))
    }

    /// The full polynomial of any of the twelve invariants.
    pub fn invariant(&mut self, name: InvariantName) -> Result<Polynomial> {
        if let Some(f) = self.fundamentals()?.get(name) {
            return Ok(f.clone());
        }
        if let Some(f) = self.derived.get(&name) {
            return Ok(f.clone());
        }
        let fund = self.fundamentals()?.clone();
        let f = self.cache.load_or_build(
            &format!("{name}.poly"),
            |p| {
                let f = load_polynomial(p)?;
                if !f.is_homogeneous() || f.degree() != Some(name.degree()) {
                    return Err(Error::Cache(format!("stored {name} has the wrong degree")));
                }
                Ok(f)
            },
            || Ok(expand_invariant(name, &fund)),
            |p, f| save_polynomial(p, f),
            &mut self.warnings,
        )?;
        self.derived.insert(name, f.clone());
        Ok(f)
    }

    pub fn local_expansions(&mut self) -> Result<&LocalExpansions> {
        if self.local.is_none() {
            let l = LocalExpansions::new(self.fundamentals()?, LOCAL_BOUND);
            self.local = Some(l);
        }
        Ok(self.local.as_ref().expect("set above"))
    }

    pub fn stabilizer_invariants(&mut self) -> Result<&StabilizerInvariants> {
        if self.stab.is_none() {
            let stab_gens = self.h4_group()?.stabilizer(&base_point()).generators().to_vec();
            let s = build_stabilizer_invariants(self.local_expansions()?, &stab_gens)?;
            self.stab = Some(s);
        }
        Ok(self.stab.as_ref().expect("set above"))
    }

    pub fn table1(&mut self) -> Result<&Table1Report> {
        if self.table1.is_none() {
            let s = self.stabilizer_invariants()?.clone();
            let r = verify_table1(self.local_expansions()?, &s)?;
            self.table1 = Some(r);
        }
        Ok(self.table1.as_ref().expect("set above"))
    }

    pub fn generator_set(&mut self) -> Result<GeneratorSet> {
        GeneratorSet::from_table1(self.table1()?)
    }

    pub fn t_side(&mut self) -> Result<TSideOracle> {
        Ok(TSideOracle::new(self.local_expansions()?.clone()))
    }

    /// Vanishing order of `f36` at each of the 60 `H4` points.
    pub fn f36_orders(&mut self) -> Result<Vec<u32>> {
        if self.f36_orders.is_none() {
            let f36 = self.invariant(InvariantName::F36)?;
            let pts = build_config(ConfigName::H4).points;
            let orders = pts.par_iter().map(|q| vanishing_order(&f36, q)).collect::<Result<Vec<_>>>()?;
            self.f36_orders = Some(orders);
        }
        Ok(self.f36_orders.clone().expect("set above"))
    }

    pub fn certificate(&mut self, name: ConfigName, m_check: u32) -> Result<BoundCertificate> {
        match name {
            ConfigName::D4 => certify_d4(m_check),
            ConfigName::B4 => certify_b4(m_check),
            ConfigName::F4 => certify_f4(m_check),
            ConfigName::H4 => {
                let gens = self.generator_set()?;
                let orders = self.f36_orders()?;
                h4_cone_certificate(&gens, &orders)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: String,
    pub ranges: Ranges,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
    pub warnings: Vec<String>,
}

fn timed(id: u32, name: &str, f: impl FnOnce() -> Result<(bool, Vec<String>)>) -> CriterionResult {
    let t = Instant::now();
    let (passed, details) = match f() {
        Ok(v) => v,
        Err(e) => (false, vec![format!("error: {e}")]),
    };
    CriterionResult { id, name: name.into(), passed, details, seconds: t.elapsed().as_secs_f64() }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(details: &mut Vec<String>, what: &str, got: T, want: T) -> bool {
    let ok = got == want;
    details.push(format!("{what}: {got:?}{}", if ok { String::new() } else { format!(" (expected {want:?})") }));
    ok
}

pub fn criterion_group_orders(p: &mut Pipeline) -> Result<(bool, Vec<String>)> {
    let mut d = Vec::new();
    let mut ok = true;
    let h4 = p.h4_group()?.clone();
    ok &= expect_eq(&mut d, "|W(H4)|", h4.order(), 14_400);
    let f4 = p.f4_group()?.clone();
    ok &= expect_eq(&mut d, "|W(F4)|", f4.order(), 1_152);
    let stab = h4.stabilizer(&base_point());
    ok &= expect_eq(&mut d, "|Stab(p)|", stab.order(), 120);
    let orbit = h4.orbit_projective(&base_point())?;
    ok &= expect_eq(&mut d, "projective orbit of p", orbit.len(), 60);
    ok &= expect_eq(&mut d, "orbit equals the H4 configuration", orbit == build_config(ConfigName::H4).points, true);
    let pts = f4_points();
    let o1 = f4.orbit_projective(pts[0].coords())?;
    let o2 = f4.orbit_projective(pts[12].coords())?;
    ok &= expect_eq(&mut d, "W(F4)-orbits on F4", (o1.len(), o2.len()), (12, 12));
    let mut union: Vec<ProjectivePoint> = o1.into_iter().chain(o2).collect();
    union.sort();
    union.dedup();
    let mut all = pts.clone();
    all.sort();
    ok &= expect_eq(&mut d, "orbits cover F4", union == all, true);
    Ok((ok, d))
}

pub fn criterion_invariants(p: &mut Pipeline) -> Result<(bool, Vec<String>)> {
    let f = p.fundamentals()?.clone();
    let checks = f.verify(&h4_generators())?;
    Ok((true, checks))
}

pub fn criterion_table1(p: &mut Pipeline) -> Result<(bool, Vec<String>)> {
    let r = p.table1()?.clone();
    let mut d = Vec::new();
    for row in &r.rows {
        d.push(format!("{}: ({}, {}) {} = {} * ({})", row.name, row.degree, row.order, row.s_expression, row.scalar, row.table_expression));
    }
    let ok = r.passed && r.rows.iter().all(|row| !row.scalar.is_empty() && row.scalar != "0");
    Ok((ok, d))
}

pub fn criterion_hilbert(p: &mut Pipeline, ranges: &Ranges) -> Result<(bool, Vec<String>)> {
    let gens = p.generator_set()?;
    let mut t = p.t_side()?;
    let rep = verify_main_theorem(&gens, Some(&mut t), ranges.d_max, ranges.m_max, ranges.heavy_d_max)?;
    let mut d = vec![format!(
        "series = R' on {} cells, = R on {} cells, {} row sums = dim T_d",
        rep.cells_checked_rprime, rep.cells_checked_r, rep.row_sums_checked
    )];
    if !rep.note.is_empty() {
        d.push(rep.note.clone());
    }
    for m in rep.mismatches.iter().take(5) {
        d.push(format!("mismatch at ({}, {}) against {}: series {} vs {}", m.degree, m.order, m.oracle, m.series, m.other));
    }
    let mut ok = rep.passed;
    ok &= expect_eq(&mut d, "dim T_72", dim_t(72), 26);
    ok &= expect_eq(&mut d, "series at v = 1, degree 72", HilbertSeries::stated().at_v_one(72)[72], 26);
    Ok((ok, d))
}

pub fn criterion_table2(p: &mut Pipeline, m_max: u32) -> Result<(bool, Vec<String>)> {
    let gens = p.generator_set()?;
    let rows = table2_report(&gens, m_max)?;
    let diffs = table2_differences(&rows);
    let mut d = vec![format!("rows m = 0..{m_max} computed")];
    d.extend(diffs.iter().cloned());
    Ok((diffs.is_empty(), d))
}

pub fn criterion_uniqueness(p: &mut Pipeline) -> Result<(bool, Vec<String>)> {
    let mut t = p.t_side()?;
    let k = t.kernel(72, 20)?;
    let mut d = Vec::new();
    let mut ok = expect_eq(&mut d, "dim T_72 ∩ I^20", k.len(), 1);
    if let Some(v) = k.first() {
        let target = t_coordinates(&InvariantName::F36.expression().pow(2), 72)?;
        let proportional = crate::linalg::rank(vec![v.clone(), target], v.len()) == 1;
        ok &= expect_eq(&mut d, "kernel vector proportional to f36^2", proportional, true);
    }
    Ok((ok, d))
}

pub fn criterion_f4_geometry() -> Result<(bool, Vec<String>)> {
    let mut d = Vec::new();
    let f4 = build_config(ConfigName::F4);
    let lines = three_point_lines(&f4);
    let mut got: Vec<[usize; 3]> = lines.iter().map(|l| [l.points[0], l.points[1], l.points[2]]).collect();
    got.sort();
    let mut want = F4_TRIPLES.to_vec();
    want.sort();
    let mut ok = expect_eq(&mut d, "three-point lines", got.len(), 32);
    ok &= expect_eq(&mut d, "lines equal the listed triples", got == want, true);
    let inc = incidence(&f4.points, &dual_planes(&f4));
    ok &= expect_eq(&mut d, "dual planes through each point", inc.uniform_planes_per_point(), Some(9));
    let geo = plane_section_geometry()?;
    ok &= expect_eq(&mut d, "nu(sigma)", geo.nu_sigma.to_string(), "(4;2,0,0)".into());
    ok &= expect_eq(&mut d, "nu(tau)", geo.nu_tau.to_string(), "(3;1,2,0)".into());
    ok &= expect_eq(&mut d, "nu(phi)", geo.nu_phi.to_string(), "(6;1,2,3)".into());
    ok &= expect_eq(&mut d, "Z collinear", geo.z_collinear, false);
    d.push(format!("Z = {:?}", geo.z_points));
    d.extend(geo.checks.iter().cloned());
    Ok((ok, d))
}

pub fn criterion_ledger() -> Result<(bool, Vec<String>)> {
    let r = f4_reduction_ledger()?;
    let mut d: Vec<String> = r.steps.iter().map(|s| format!("[{}] {}", if s.holds { "ok" } else { "FAIL" }, s.statement)).collect();
    let ok = r.passed && r.terminal == "(4;1,0,4)";
    d.push(format!("terminal nu(Sigma) = {}", r.terminal));
    Ok((ok, d))
}

pub fn criterion_certificates(p: &mut Pipeline, m_check: u32) -> Result<(bool, Vec<String>)> {
    let mut d = Vec::new();
    let mut ok = true;
    let want = [(ConfigName::D4, 2, 1), (ConfigName::B4, 2, 1), (ConfigName::F4, 8, 3), (ConfigName::H4, 18, 5)];
    for (name, n, den) in want {
        let c = p.certificate(name, m_check)?;
        let good = c.passed() && (c.value_num, c.value_den) == (n, den);
        ok &= good;
        d.push(format!("{name}: {}/{} via {} / {}{}", c.value_num, c.value_den, c.upper.witness, c.lower.method, if good { "" } else { " FAILED" }));
        for e in c.evidence.iter().filter(|e| !e.passed) {
            d.push(format!("  failed: {}", e.description));
        }
    }
    Ok((ok, d))
}

pub fn criterion_properties(p: &mut Pipeline, cases: usize, seed: u64) -> Result<(bool, Vec<String>)> {
    let h4 = p.h4_group()?.clone();
    let f4 = p.f4_group()?.clone();
    let gens = p.generator_set()?;
    let local = p.local_expansions()?.clone();
    let suites = crate::properties::run_suites(cases, seed, &h4, &f4, &local, &gens);
    let ok = suites.iter().all(|s| s.passed());
    let d = suites.iter().map(|s| format!("{}: {} cases, {} failures {:?} ({:.1}s)", s.property, s.cases, s.failures.len(), s.failures, s.seconds)).collect();
    Ok((ok, d))
}

/// Criteria 1 to 10 in order.
pub fn verify_all(p: &mut Pipeline, ranges: &Ranges, table2_m_max: u32) -> Result<VerifyReport> {
    ranges.validate()?;
    let criteria = vec![
        timed(1, "group orders", || criterion_group_orders(p)),
        timed(2, "invariant construction", || criterion_invariants(p)),
        timed(3, "Table 1", || criterion_table1(p)),
        timed(4, "Hilbert series agreement", || criterion_hilbert(p, ranges)),
        timed(5, "Table 2", || criterion_table2(p, table2_m_max)),
        timed(6, "uniqueness of f36^2", || criterion_uniqueness(p)),
        timed(7, "F4 geometry", criterion_f4_geometry),
        timed(8, "F4 ledger", criterion_ledger),
        timed(9, "Waldschmidt certificates", || criterion_certificates(p, ranges.m_check)),
        timed(10, "property suites", || criterion_properties(p, 200, 2024)),
    ];
    let passed = criteria.iter().all(|c| c.passed);
    Ok(VerifyReport { schema: SCHEMA.into(), ranges: *ranges, criteria, passed, warnings: p.warnings.clone() })
}
