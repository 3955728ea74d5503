//! The `D4`, `B4`, `F4` and `H4` point configurations and their incidences.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::field::FieldElement;
use crate::matrix::Vec4;
use crate::projective::{rank_of_vectors, Plane, ProjectivePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConfigName {
    D4,
    B4,
    F4,
    H4,
}

impl ConfigName {
    pub const ALL: [ConfigName; 4] = [ConfigName::D4, ConfigName::B4, ConfigName::F4, ConfigName::H4];

    pub fn expected_size(self) -> usize {
        match self {
            ConfigName::D4 => 12,
            ConfigName::B4 => 16,
            ConfigName::F4 => 24,
            ConfigName::H4 => 60,
        }
    }
}

impl fmt::Display for ConfigName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConfigName::D4 => "D4",
            ConfigName::B4 => "B4",
            ConfigName::F4 => "F4",
            ConfigName::H4 => "H4",
        })
    }
}

impl FromStr for ConfigName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "D4" => Ok(ConfigName::D4),
            "B4" => Ok(ConfigName::B4),
            "F4" => Ok(ConfigName::F4),
            "H4" => Ok(ConfigName::H4),
            _ => Err(Error::Unknown(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Configuration {
    pub name: ConfigName,
    pub points: Vec<ProjectivePoint>,
}

impl Configuration {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// 1-based lookup, matching the `P1..P24` numbering.
    pub fn point(&self, one_based: usize) -> &ProjectivePoint {
        &self.points[one_based - 1]
    }
}

/// `P1..P24` in the standard numbering: `P1..P12` are the `D4` points,
/// `P13..P16` the coordinate points, `P17..P24` the remaining half-spin
/// points.
pub fn f4_points() -> Vec<ProjectivePoint> {
    const P: [[i64; 4]; 24] = [
        [1, 1, 0, 0],
        [1, -1, 0, 0],
        [1, 0, 1, 0],
        [1, 0, -1, 0],
        [1, 0, 0, 1],
        [1, 0, 0, -1],
        [0, 1, 1, 0],
        [0, 1, -1, 0],
        [0, 1, 0, 1],
        [0, 1, 0, -1],
        [0, 0, 1, 1],
        [0, 0, 1, -1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [-1, 1, 1, 1],
        [1, -1, 1, 1],
        [1, 1, -1, 1],
        [1, 1, 1, -1],
    ];
    P.iter().map(|v| ProjectivePoint::from_ints(*v)).collect()
}

/// The 32 three-point lines of `F4`, 1-based, as tabulated.
pub const F4_TRIPLES: [[usize; 3]; 32] = [
    [1, 3, 8],
    [1, 4, 7],
    [1, 5, 10],
    [1, 6, 9],
    [2, 3, 7],
    [2, 4, 8],
    [2, 5, 9],
    [2, 6, 10],
    [3, 5, 12],
    [3, 6, 11],
    [4, 5, 11],
    [4, 6, 12],
    [7, 9, 12],
    [7, 10, 11],
    [8, 9, 11],
    [8, 10, 12],
    [13, 17, 21],
    [13, 18, 22],
    [13, 19, 23],
    [13, 20, 24],
    [14, 17, 22],
    [14, 18, 21],
    [14, 19, 24],
    [14, 20, 23],
    [15, 17, 23],
    [15, 18, 24],
    [15, 19, 21],
    [15, 20, 22],
    [16, 17, 24],
    [16, 18, 23],
    [16, 19, 22],
    [16, 20, 21],
];

fn permutations4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if BTreeSet::from(p).len() == 4 {
                        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        out.push((p, inversions % 2 == 0));
                    }
                }
            }
        }
    }
    out
}

/// The 120 roots of `H4`: signed unit vectors, `(+-1,+-1,+-1,+-1)/2`, and
/// even permutations of `(+-1, +-phi, +-1/phi, 0)/2`.
///
/// With `(+-phi, +-1, +-1/phi, 0)/2` as the pattern one gets the mirror
/// image, which is not the orbit of `(0,0,0,1)` under [`crate::group::h4_generators`].
pub fn h4_roots() -> Vec<Vec4> {
    h4_roots_with_pattern(false)
}

pub(crate) fn h4_roots_with_pattern(phi_first: bool) -> Vec<Vec4> {
    let zero = FieldElement::zero;
    let half = FieldElement::from_ratio(1, 2);
    let mut roots: Vec<Vec4> = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [1i64, -1] {
            let mut v: Vec4 = [zero(), zero(), zero(), zero()];
            v[i] = FieldElement::from_int(s);
            roots.push(v);
        }
    }
    for signs in 0..16u32 {
        roots.push(std::array::from_fn(|i| {
            if signs >> i & 1 == 1 {
                -&half
            } else {
                half.clone()
            }
        }));
    }
    let phi = FieldElement::phi();
    let mut base = [half.clone(), &phi * &half, &phi.inverse().expect("phi != 0") * &half, zero()];
    if phi_first {
        base.swap(0, 1);
    }
    for (perm, even) in permutations4() {
        if !even {
            continue;
        }
        for signs in 0..8u32 {
            let mut v: Vec4 = [zero(), zero(), zero(), zero()];
            for i in 0..4 {
                let x = if i < 3 && signs >> i & 1 == 1 { -&base[i] } else { base[i].clone() };
                v[perm[i]] = x;
            }
            roots.push(v);
        }
    }
    roots
}

pub fn build_config(name: ConfigName) -> Configuration {
    let f4 = f4_points();
    let points = match name {
        ConfigName::D4 => f4[..12].to_vec(),
        ConfigName::B4 => f4[..16].to_vec(),
        ConfigName::F4 => f4,
        ConfigName::H4 => {
            let set: BTreeSet<ProjectivePoint> =
                h4_roots().into_iter().map(|v| ProjectivePoint::new(v).expect("nonzero root")).collect();
            set.into_iter().collect()
        }
    };
    Configuration { name, points }
}

pub fn collinear(a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> bool {
    rank_of_vectors(&[a.coords().clone(), b.coords().clone(), c.coords().clone()]) < 3
}

/// Maximal collinear subsets of size at least 3, as sorted 0-based index sets.
pub fn collinear_sets(points: &[ProjectivePoint]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut line = vec![i, j];
            let mut lowest_pair = true;
            for k in 0..n {
                if k == i || k == j || !collinear(&points[i], &points[j], &points[k]) {
                    continue;
                }
                if k < j {
                    // this line is reported from a smaller pair
                    lowest_pair = false;
                    break;
                }
                line.push(k);
            }
            if lowest_pair && line.len() >= 3 {
                out.push(line);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CollinearLine {
    /// 1-based point indices.
    pub points: Vec<usize>,
}

/// All maximal collinear subsets with at least three points.
pub fn collinear_triples(c: &Configuration) -> Vec<CollinearLine> {
    collinear_sets(&c.points).into_iter().map(|s| CollinearLine { points: s.into_iter().map(|i| i + 1).collect() }).collect()
}

/// Lines carrying exactly three points of the configuration.
pub fn three_point_lines(c: &Configuration) -> Vec<CollinearLine> {
    collinear_triples(c).into_iter().filter(|l| l.points.len() == 3).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceReport {
    /// Number of planes through each point.
    pub planes_per_point: Vec<usize>,
    /// Number of points on each plane.
    pub points_per_plane: Vec<usize>,
    pub total_incidences: usize,
    /// `matrix[i][j]`: point `i` lies on plane `j`.
    pub matrix: Vec<Vec<bool>>,
}

impl IncidenceReport {
    pub fn uniform_planes_per_point(&self) -> Option<usize> {
        let first = *self.planes_per_point.first()?;
        self.planes_per_point.iter().all(|&c| c == first).then_some(first)
    }
}

pub fn incidence(points: &[ProjectivePoint], planes: &[Plane]) -> IncidenceReport {
    let matrix: Vec<Vec<bool>> = points.iter().map(|p| planes.iter().map(|h| h.contains(p)).collect()).collect();
    let planes_per_point: Vec<usize> = matrix.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let points_per_plane: Vec<usize> = (0..planes.len()).map(|j| matrix.iter().filter(|r| r[j]).count()).collect();
    let total_incidences = planes_per_point.iter().sum();
    IncidenceReport { planes_per_point, points_per_plane, total_incidences, matrix }
}

pub fn dual_planes(c: &Configuration) -> Vec<Plane> {
    c.points.iter().map(Plane::dual_of).collect()
}

/// Incidence of the configuration with the planes dual to its own points.
pub fn dual_plane_incidence(c: &Configuration) -> IncidenceReport {
    incidence(&c.points, &dual_planes(c))
}

pub fn coordinate_planes() -> Vec<Plane> {
    (0..4).map(Plane::coordinate).collect()
}

type Vec3 = [FieldElement; 3];

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot3(a: &Vec3, b: &Vec3) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn normalize3(v: Vec3) -> Vec3 {
    let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero");
    let inv = lead.inverse().expect("nonzero");
    v.map(|x| &x * &inv)
}

/// A line in the plane `w = 0`, stored as normalized coefficients in `x,y,z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneLine(Vec3);

impl PlaneLine {
    pub fn through(a: &Vec3, b: &Vec3) -> Result<Self> {
        let c = cross(a, b);
        ensure(c.iter().any(|x| !x.is_zero()), || "line through coincident points".into())?;
        Ok(PlaneLine(normalize3(c)))
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        dot3(&self.0, p).is_zero()
    }

    pub fn meet(&self, o: &PlaneLine) -> Vec3 {
        normalize3(cross(&self.0, &o.0))
    }

    pub fn label(&self) -> String {
        let names = ["x", "y", "z"];
        let mut s = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.signum() < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if c.signum() < 0 { -c } else { c.clone() };
            let coef = if mag.is_one() { String::new() } else { crate::projective::pretty(&mag) };
            s.push_str(&format!("{sign}{coef}{}", names[i]));
        }
        s + "=0"
    }
}

fn in_plane(p: &ProjectivePoint) -> Option<Vec3> {
    let c = p.coords();
    c[3].is_zero().then(|| normalize3([c[0].clone(), c[1].clone(), c[2].clone()]))
}

/// `(degree; mult on X, mult on Y, mult on Z)` for a plane curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NuInts {
    pub degree: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl fmt::Display for NuInts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{},{})", self.degree, self.x, self.y, self.z)
    }
}

/// How many points of each class a single line of a curve passes through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LineClassCounts {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneSectionReport {
    pub plane: String,
    pub points_in_plane: Vec<usize>,
    pub x_points: Vec<usize>,
    pub y_points: Vec<usize>,
    pub z_points: Vec<String>,
    pub sigma_lines: Vec<String>,
    pub tau_lines: Vec<String>,
    pub phi_lines: Vec<String>,
    pub nu_sigma: NuInts,
    pub nu_tau: NuInts,
    pub nu_phi: NuInts,
    pub sigma_line_counts: LineClassCounts,
    pub tau_line_counts: LineClassCounts,
    pub phi_line_counts: LineClassCounts,
    pub z_collinear: bool,
    pub checks: Vec<String>,
}

fn uniform(values: impl IntoIterator<Item = i64>, what: &str) -> Result<i64> {
    let v: Vec<i64> = values.into_iter().collect();
    let first = *v.first().ok_or_else(|| Error::Verification(format!("{what}: empty class")))?;
    ensure(v.iter().all(|&x| x == first), || format!("{what}: non-uniform values {v:?}"))?;
    Ok(first)
}

fn nu_of(lines: &[PlaneLine], x: &[Vec3], y: &[Vec3], z: &[Vec3], name: &str) -> Result<NuInts> {
    let mult = |p: &Vec3| lines.iter().filter(|l| l.contains(p)).count() as i64;
    Ok(NuInts {
        degree: lines.len() as i64,
        x: uniform(x.iter().map(mult), &format!("mult of {name} on X"))?,
        y: uniform(y.iter().map(mult), &format!("mult of {name} on Y"))?,
        z: uniform(z.iter().map(mult), &format!("mult of {name} on Z"))?,
    })
}

fn counts_of(lines: &[PlaneLine], x: &[Vec3], y: &[Vec3], z: &[Vec3], name: &str) -> Result<LineClassCounts> {
    let on = |l: &PlaneLine, s: &[Vec3]| s.iter().filter(|p| l.contains(p)).count() as i64;
    Ok(LineClassCounts {
        x: uniform(lines.iter().map(|l| on(l, x)), &format!("X points per {name} line"))?,
        y: uniform(lines.iter().map(|l| on(l, y)), &format!("Y points per {name} line"))?,
        z: uniform(lines.iter().map(|l| on(l, z)), &format!("Z points per {name} line"))?,
    })
}

fn lines_through_pairs(pts: &[Vec3]) -> Result<Vec<PlaneLine>> {
    let mut out: Vec<PlaneLine> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l = PlaneLine::through(&pts[i], &pts[j])?;
            if !out.contains(&l) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// The section of `F4` by the plane `w = 0` and the curves `sigma`, `tau`,
/// `phi` living in it.
pub fn plane_section_geometry() -> Result<PlaneSectionReport> {
    let f4 = build_config(ConfigName::F4);
    let mut checks = Vec::new();

    let in_h: Vec<usize> = (1..=24).filter(|&i| in_plane(f4.point(i)).is_some()).collect();
    ensure(in_h == [1, 2, 3, 4, 7, 8, 13, 14, 15], || format!("points of F4 in w=0 are {in_h:?}"))?;
    checks.push("w=0 contains exactly P1,P2,P3,P4,P7,P8,P13,P14,P15".into());

    let x_idx = vec![1, 2, 3, 4, 7, 8];
    let y_idx = vec![13, 14, 15];
    let xs: Vec<Vec3> = x_idx.iter().map(|&i| in_plane(f4.point(i)).unwrap()).collect();
    let ys: Vec<Vec3> = y_idx.iter().map(|&i| in_plane(f4.point(i)).unwrap()).collect();

    // sigma: lines carrying three points of X
    let sigma: Vec<PlaneLine> =
        lines_through_pairs(&xs)?.into_iter().filter(|l| xs.iter().filter(|p| l.contains(p)).count() >= 3).collect();
    ensure(sigma.len() == 4, || format!("expected 4 three-point lines on X, found {}", sigma.len()))?;
    let mut star: Vec<Vec3> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            star.push(sigma[i].meet(&sigma[j]));
        }
    }
    let star_set: BTreeSet<String> = star.iter().map(|p| format!("{p:?}")).collect();
    let x_set: BTreeSet<String> = xs.iter().map(|p| format!("{p:?}")).collect();
    ensure(star_set == x_set && star.len() == 6, || "X is not the set of pairwise meets of the sigma lines".into())?;
    checks.push("X = pairwise intersections of the 4 sigma lines (star configuration)".into());

    // tau: sides of the triangle Y
    let tau = lines_through_pairs(&ys)?;
    ensure(tau.len() == 3, || "Y is not a triangle".into())?;
    for l in &tau {
        ensure(xs.iter().filter(|p| l.contains(p)).count() == 2, || format!("tau side {} does not carry two X points", l.label()))?;
    }
    checks.push("Y = vertices of a triangle whose sides each carry two X points".into());

    // Z: traces on w=0 of the four lines through P16
    let z_listed: Vec<Vec3> =
        [[1, 1, 1], [-1, -1, 1], [1, -1, 1], [-1, 1, 1]].iter().map(|v| normalize3(v.map(FieldElement::from_int))).collect();
    let mut zs: Vec<Vec3> = Vec::new();
    for t in &F4_TRIPLES[28..] {
        let a = f4.point(t[0]).coords();
        let b = f4.point(t[1]).coords();
        // a * b_w - b * a_w has w = 0
        let v: Vec<FieldElement> = (0..4).map(|i| &(&a[i] * &b[3]) - &(&b[i] * &a[3])).collect();
        ensure(v[3].is_zero() && v.iter().any(|x| !x.is_zero()), || format!("line {t:?} lies in w=0"))?;
        zs.push(normalize3([v[0].clone(), v[1].clone(), v[2].clone()]));
    }
    let zset: BTreeSet<String> = zs.iter().map(|p| format!("{p:?}")).collect();
    let pz: BTreeSet<String> = z_listed.iter().map(|p| format!("{p:?}")).collect();
    ensure(zset == pz && zset.len() == 4, || "traces of the lines through P16 differ from Z".into())?;
    checks.push("the last four three-point lines meet w=0 in Z = {(1:1:1:0),(-1:-1:1:0),(1:-1:1:0),(-1:1:1:0)}".into());

    // every three-point line meets w=0 in a configuration point or a point of Z
    let h_pts: Vec<Vec3> = in_h.iter().map(|&i| in_plane(f4.point(i)).unwrap()).collect();
    for t in &F4_TRIPLES {
        let pts: Vec<&Vec4> = t.iter().map(|&i| f4.point(i).coords()).collect();
        let (a, b) = (pts[0], pts[1]);
        let v: Vec<FieldElement> = (0..4).map(|i| &(&a[i] * &b[3]) - &(&b[i] * &a[3])).collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let tr = normalize3([v[0].clone(), v[1].clone(), v[2].clone()]);
        ensure(h_pts.contains(&tr) || z_listed.contains(&tr), || format!("line {t:?} meets w=0 outside F4 and Z"))?;
    }
    checks.push("every three-point line meets w=0 in a point of F4 or of Z".into());

    let phi_lines = lines_through_pairs(&z_listed)?;
    ensure(phi_lines.len() == 6, || "Z does not span a complete quadrangle".into())?;
    let z_rank = crate::linalg::rank(z_listed.iter().map(|v| v.to_vec()).collect(), 3);
    let z_collinear = z_rank < 3;
    ensure(!z_collinear, || "Z is collinear".into())?;
    // no three of Z on a line
    for l in &phi_lines {
        ensure(z_listed.iter().filter(|p| l.contains(p)).count() == 2, || "three points of Z are collinear".into())?;
    }
    checks.push("Z is a complete quadrangle (no three collinear)".into());

    let nu_sigma = nu_of(&sigma, &xs, &ys, &z_listed, "sigma")?;
    let nu_tau = nu_of(&tau, &xs, &ys, &z_listed, "tau")?;
    let nu_phi = nu_of(&phi_lines, &xs, &ys, &z_listed, "phi")?;
    ensure(nu_sigma == NuInts { degree: 4, x: 2, y: 0, z: 0 }, || format!("nu(sigma) = {nu_sigma}"))?;
    ensure(nu_tau == NuInts { degree: 3, x: 1, y: 2, z: 0 }, || format!("nu(tau) = {nu_tau}"))?;
    ensure(nu_phi == NuInts { degree: 6, x: 1, y: 2, z: 3 }, || format!("nu(phi) = {nu_phi}"))?;
    checks.push(format!("nu(sigma)={nu_sigma}, nu(tau)={nu_tau}, nu(phi)={nu_phi}"));

    let fmt3 = |v: &Vec3| {
        let w: Vec<String> = v.iter().map(crate::projective::pretty).collect();
        format!("({}:0)", w.join(":"))
    };
    Ok(PlaneSectionReport {
        plane: "w=0".into(),
        points_in_plane: in_h,
        x_points: x_idx,
        y_points: y_idx,
        z_points: z_listed.iter().map(fmt3).collect(),
        sigma_lines: sigma.iter().map(PlaneLine::label).collect(),
        tau_lines: tau.iter().map(PlaneLine::label).collect(),
        phi_lines: phi_lines.iter().map(PlaneLine::label).collect(),
        nu_sigma,
        nu_tau,
        nu_phi,
        sigma_line_counts: counts_of(&sigma, &xs, &ys, &z_listed, "sigma")?,
        tau_line_counts: counts_of(&tau, &xs, &ys, &z_listed, "tau")?,
        phi_line_counts: counts_of(&phi_lines, &xs, &ys, &z_listed, "phi")?,
        z_collinear,
        checks,
    })
}

/// The points `Z1..Z4` as plane coordinates `(x:y:z)` of `w = 0`.
pub fn z_points() -> Vec<Vec<FieldElement>> {
    [[1, 1, 1], [-1, -1, 1], [1, -1, 1], [-1, 1, 1]].iter().map(|v| v.iter().map(|&x| FieldElement::from_int(x)).collect()).collect()
}
