//! Parametrisations of solution sets of diagonal quadratic forms by affine
//! Grassmannian elements, and the verifiers for the representative, orbit size,
//! extended orbit and stratification claims.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::atomic::{self, DominantWeight};
use crate::cores;
use crate::diophantine::{self, DiagonalForm, GroupActionId, Point};
use crate::dynkin::{self, AffineTypeId, Family, Lattice, TypeData};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Vector, Q};
use crate::weyl::{self, ExtGrassElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    A2,
    A2ext,
    C2,
    C2L1,
    D3t,
    A42,
    G21,
    D43,
    A3,
    /// One of the hyperoctahedral families, named by its affine type.
    Hyp(AffineTypeId),
}

impl CaseId {
    pub const NAMED: [CaseId; 9] = [
        CaseId::A2,
        CaseId::A2ext,
        CaseId::C2,
        CaseId::C2L1,
        CaseId::D3t,
        CaseId::A42,
        CaseId::G21,
        CaseId::D43,
        CaseId::A3,
    ];

    /// The ten hyperoctahedral cases: five families at ranks 2 and 3.
    pub fn hyperoctahedral() -> Vec<CaseId> {
        let mut out = Vec::new();
        for n in [2u32, 3] {
            out.push(CaseId::Hyp(AffineTypeId::new(Family::B, n, 1)));
            out.push(CaseId::Hyp(AffineTypeId::new(Family::C, n, 1)));
            out.push(CaseId::Hyp(AffineTypeId::new(Family::A, 2 * n - 1, 2)));
            out.push(CaseId::Hyp(AffineTypeId::new(Family::D, n + 1, 2)));
            out.push(CaseId::Hyp(AffineTypeId::new(Family::A, 2 * n, 2)));
        }
        out
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::Hyp(t) => write!(f, "HYP:{t}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(t) = s.strip_prefix("HYP:") {
            let id = AffineTypeId::parse_low_rank(t)?;
            hyp_params(id)?;
            return Ok(CaseId::Hyp(id));
        }
        CaseId::NAMED
            .iter()
            .copied()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown case {s}")))
    }
}

impl Serialize for CaseId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CaseId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    CompleteRepresentatives,
    OrbitSizeOnly,
    /// Points `p(w_j + M_j q)` and their negatives, one pair per layer.
    ExtendedPairs,
    StratifiedA3,
}

/// `x -> m x + offset` on stored coordinates; the image must be integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub m: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl AffineMap {
    pub fn apply(&self, x: &[Q]) -> Result<Point> {
        self.m
            .iter()
            .zip(&self.offset)
            .map(|(row, &o)| {
                let v: Q = row.iter().zip(x).map(|(&a, xi)| q(a) * xi).sum::<Q>() + q(o);
                linalg::to_i64(&v).map_err(|_| Error::NonIntegralImage(linalg::fmt_vec(x)))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ParamCase {
    pub id: CaseId,
    pub type_data: TypeData,
    /// Index of the fundamental weight `Lambda_i` used for the length.
    pub weight: usize,
    pub lattice: Lattice,
    /// The equation is `form(x) = a N + b`.
    pub a: u64,
    pub b: u64,
    pub form: DiagonalForm,
    pub phi: AffineMap,
    pub group: GroupActionId,
    pub claim: Claim,
}

/// `(c, e_i, a, b)` of a hyperoctahedral family: `phi_i = c q_i - e_i`.
fn hyp_params(id: AffineTypeId) -> Result<(i64, Vec<i64>, u64, u64)> {
    let bad = || Error::UnsupportedType(id.to_string());
    let r = id.rank_label as i64;
    let (n, c, odd) = match (id.family, id.twist) {
        (Family::B, 1) => (r, 2 * r, false),
        (Family::C, 1) => (r, 4 * r, true),
        (Family::A, 2) if r % 2 == 1 => ((r + 1) / 2, 2 * r, true),
        (Family::D, 2) => (r - 1, 2 * r, false),
        (Family::A, 2) => (r / 2, 2 * r + 2, true),
        _ => return Err(bad()),
    };
    if n < 2 {
        return Err(bad());
    }
    let e: Vec<i64> = (1..=n).map(|i| if odd { 2 * (n - i) + 1 } else { n - i + 1 }).collect();
    let b = e.iter().map(|x| x * x).sum::<i64>() as u64;
    let a = match (id.family, id.twist) {
        (Family::B, 1) => 4 * n,
        (Family::C, 1) => 8 * n,
        (Family::D, 2) => 2 * c,
        _ => 4 * c,
    } as u64;
    Ok((c, e, a, b))
}

fn diag(c: i64, n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { c } else { 0 }).collect()).collect()
}

pub fn case(id: CaseId) -> Result<ParamCase> {
    let form = |c: &[u64]| DiagonalForm::new(c.to_vec());
    let map = |m: &[&[i64]], o: &[i64]| AffineMap { m: m.iter().map(|r| r.to_vec()).collect(), offset: o.to_vec() };
    let (ty, weight, lattice, a, b, form, phi, group, claim) = match id {
        CaseId::A2 | CaseId::A2ext => (
            "A2_1",
            0,
            Lattice::M,
            12,
            4,
            form(&[1, 3])?,
            map(&[&[3, 6, 0], &[3, 0, 0]], &[-1, -1]),
            GroupActionId::C6,
            if id == CaseId::A2 { Claim::CompleteRepresentatives } else { Claim::ExtendedPairs },
        ),
        // rotated coordinates (x1 + x2, x1 - x2) are folded into the matrix
        CaseId::C2 => (
            "C2_1",
            0,
            Lattice::M,
            8,
            5,
            form(&[1, 1])?,
            map(&[&[4, 4], &[4, -4]], &[-2, -1]),
            GroupActionId::D8,
            Claim::CompleteRepresentatives,
        ),
        CaseId::C2L1 => (
            "C2_1",
            1,
            Lattice::L,
            8,
            1,
            form(&[1, 1])?,
            map(&[&[4, 4], &[4, -4]], &[0, 1]),
            GroupActionId::C4,
            Claim::CompleteRepresentatives,
        ),
        CaseId::D3t => (
            "D3_2",
            0,
            Lattice::M,
            12,
            5,
            form(&[1, 1])?,
            map(&[&[6, 0], &[0, 6]], &[-2, -1]),
            GroupActionId::D8,
            Claim::CompleteRepresentatives,
        ),
        CaseId::A42 => (
            "A4_2",
            0,
            Lattice::M,
            40,
            10,
            form(&[1, 1])?,
            map(&[&[10, 0], &[0, 10]], &[-3, -1]),
            GroupActionId::D8,
            Claim::OrbitSizeOnly,
        ),
        CaseId::G21 => (
            "G2_1",
            0,
            Lattice::M,
            6,
            7,
            form(&[1, 3])?,
            map(&[&[6, 3, 0], &[0, 3, 0]], &[2, 1]),
            GroupActionId::V4,
            Claim::OrbitSizeOnly,
        ),
        CaseId::D43 => (
            "D4_3",
            0,
            Lattice::M,
            12,
            7,
            form(&[1, 3])?,
            map(&[&[0, 6, 0], &[4, 2, 0]], &[2, 1]),
            GroupActionId::V4,
            Claim::CompleteRepresentatives,
        ),
        CaseId::A3 => (
            "A3_1",
            0,
            Lattice::M,
            48,
            30,
            form(&[1, 2, 3])?,
            map(&[&[0, 12, 4, 0], &[0, 0, 8, 0], &[8, 4, 4, 0]], &[-1, 1, -3]),
            GroupActionId::GA3,
            Claim::StratifiedA3,
        ),
        CaseId::Hyp(t) => {
            let (c, e, a, b) = hyp_params(t)?;
            let n = e.len();
            let pc = ParamCase {
                id,
                type_data: dynkin::lookup_low_rank(t)?,
                weight: 0,
                lattice: Lattice::M,
                a,
                b,
                form: DiagonalForm::new(vec![1; n])?,
                phi: AffineMap { m: diag(c, n), offset: e.iter().map(|x| -x).collect() },
                group: GroupActionId::H(n),
                claim: Claim::OrbitSizeOnly,
            };
            check_case(&pc)?;
            return Ok(pc);
        }
    };
    let pc = ParamCase {
        id,
        type_data: dynkin::lookup(ty)?,
        weight,
        lattice,
        a,
        b,
        form,
        phi,
        group,
        claim,
    };
    check_case(&pc)?;
    Ok(pc)
}

/// The construction check: the equation holds on the 21 shortest lattice points.
fn check_case(c: &ParamCase) -> Result<()> {
    let mut bound = 4u64;
    let pts = loop {
        let pts: Vec<(u64, Vector)> =
            domain_up_to(c, bound)?.into_iter().flat_map(|(n, xs)| xs.into_iter().map(move |x| (n, x))).collect();
        if pts.len() >= 21 {
            break pts;
        }
        bound *= 2;
    };
    for (n, x) in pts.into_iter().take(21) {
        for y in layer_points(c, &x)? {
            let v = c.form.eval(&phi(c, &y)?);
            if v != level_value(c, n) as i64 {
                return Err(Error::InternalInconsistency(format!(
                    "{}: phi({}) gives {v}, expected {}",
                    c.id,
                    linalg::fmt_vec(&y),
                    level_value(c, n)
                )));
            }
        }
    }
    Ok(())
}

/// Points fed to `phi` for a domain point: itself, or its layers `w_j + M_j q`.
fn layer_points(c: &ParamCase, x: &[Q]) -> Result<Vec<Vector>> {
    match c.claim {
        Claim::ExtendedPairs | Claim::StratifiedA3 => weyl::sigma_indices(&c.type_data)?
            .into_iter()
            .map(|j| weyl::extended_image(&c.type_data, &ExtGrassElement { j, q: x.to_vec() }))
            .collect(),
        _ => Ok(vec![x.to_vec()]),
    }
}

pub fn phi(c: &ParamCase, x: &[Q]) -> Result<Point> {
    c.phi.apply(x)
}

pub fn weight(c: &ParamCase) -> Result<DominantWeight> {
    DominantWeight::fundamental(&c.type_data, c.weight)
}

/// Atomic length of `x` for the weight of the case.
pub fn length(c: &ParamCase, x: &[Q]) -> Result<Q> {
    atomic::extended_atomic_length(&c.type_data, &weight(c)?, x)
}

/// Points of the case's lattice keyed by integral length, up to `max`.
pub fn domain_up_to(c: &ParamCase, max: u64) -> Result<BTreeMap<u64, Vec<Vector>>> {
    let mut out = BTreeMap::new();
    for (len, xs) in atomic::enumerate_atomic_up_to(&c.type_data, &weight(c)?, &q(max as i64), c.lattice)? {
        if linalg::is_integral(&len) {
            out.insert(linalg::to_i64(&len)? as u64, xs);
        }
    }
    Ok(out)
}

pub fn level_value(c: &ParamCase, n: u64) -> u64 {
    c.a * n + c.b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    PASS,
    FAIL,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub solutions: usize,
    pub orbits: usize,
    pub phi_images: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: CaseId,
    #[serde(rename = "N")]
    pub n: u64,
    pub status: Status,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// Orbits of the solution set that contain no image, when that is allowed.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub uncovered: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::PASS
    }
}

fn fmt_points(ps: &[Point]) -> String {
    let mut v: Vec<&Point> = ps.iter().collect();
    v.sort();
    v.iter().map(|p| fmt_point(p)).collect::<Vec<_>>().join(";")
}

pub fn fmt_point(p: &[i64]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

struct Check {
    case: CaseId,
    n: u64,
    counts: Counts,
    uncovered: Vec<String>,
}

impl Check {
    fn new(case: CaseId, n: u64) -> Self {
        Check { case, n, counts: Counts { solutions: 0, orbits: 0, phi_images: 0 }, uncovered: Vec::new() }
    }

    fn finish(self, witness: Option<String>) -> Report {
        Report {
            case: self.case,
            n: self.n,
            status: if witness.is_none() { Status::PASS } else { Status::FAIL },
            counts: self.counts,
            witness,
            uncovered: self.uncovered,
        }
    }
}

/// `Err(witness)` aborts a check with a counterexample.
type Outcome = std::result::Result<(), String>;

fn images(c: &ParamCase, n: u64, xs: &[Vector]) -> std::result::Result<Vec<Point>, String> {
    let k = level_value(c, n) as i64;
    xs.iter()
        .map(|x| {
            let p = phi(c, x).map_err(|e| e.to_string())?;
            if c.form.eval(&p) != k {
                return Err(format!("phi({}) = {} is not on the quadric", linalg::fmt_vec(x), fmt_point(&p)));
            }
            Ok(p)
        })
        .collect()
}

fn check_representatives(c: &ParamCase, n: u64, xs: &[Vector], chk: &mut Check) -> Outcome {
    let sols = diophantine::solve_diagonal(&c.form, level_value(c, n)).points;
    chk.counts.solutions = sols.len();
    let imgs = images(c, n, xs)?;
    chk.counts.phi_images = imgs.len();
    let orbits = diophantine::orbit_partition(c.group, &sols).map_err(|e| e.to_string())?;
    chk.counts.orbits = orbits.len();
    let order = diophantine::group_elements(c.group).len();
    if let Some(o) = orbits.iter().find(|o| o.len() != order) {
        return Err(format!("orbit of size {} at {}", o.len(), fmt_point(&o[0])));
    }
    let img_set: BTreeSet<&Point> = imgs.iter().collect();
    if img_set.len() != imgs.len() {
        return Err("phi is not injective".into());
    }
    for o in &orbits {
        let hits: Vec<Point> = o.iter().filter(|p| img_set.contains(p)).cloned().collect();
        if hits.len() != 1 {
            return Err(format!("orbit of {} contains {} images: {}", fmt_point(&o[0]), hits.len(), fmt_points(&hits)));
        }
    }
    Ok(())
}

fn check_orbit_sizes(c: &ParamCase, n: u64, xs: &[Vector], chk: &mut Check) -> Outcome {
    let sols = diophantine::solve_diagonal(&c.form, level_value(c, n)).points;
    chk.counts.solutions = sols.len();
    let imgs = images(c, n, xs)?;
    chk.counts.phi_images = imgs.len();
    let group = diophantine::group_elements(c.group);
    let orbits = diophantine::orbit_partition(c.group, &sols).map_err(|e| e.to_string())?;
    chk.counts.orbits = orbits.len();
    for p in &imgs {
        let o = diophantine::orbit(&group, p).map_err(|e| e.to_string())?;
        if o.len() != group.len() {
            return Err(format!("orbit of {} has size {}", fmt_point(p), o.len()));
        }
    }
    let img_set: HashSet<&Point> = imgs.iter().collect();
    chk.uncovered = orbits
        .iter()
        .filter(|o| !o.iter().any(|p| img_set.contains(p)))
        .map(|o| fmt_points(o))
        .collect();
    Ok(())
}

fn check_extended_pairs(c: &ParamCase, n: u64, xs: &[Vector], chk: &mut Check) -> Outcome {
    let sols = diophantine::solve_diagonal(&c.form, level_value(c, n)).points;
    chk.counts.solutions = sols.len();
    chk.counts.orbits = xs.len();
    let group = diophantine::group_elements(c.group);
    let k = level_value(c, n) as i64;
    let mut covered: BTreeSet<Point> = BTreeSet::new();
    for x in xs {
        let base = phi(c, x).map_err(|e| e.to_string())?;
        let orbit: BTreeSet<Point> = diophantine::orbit(&group, &base).map_err(|e| e.to_string())?.into_iter().collect();
        if orbit.len() != group.len() {
            return Err(format!("orbit of {} has size {}", fmt_point(&base), orbit.len()));
        }
        let mut pairs: BTreeSet<Point> = BTreeSet::new();
        for y in layer_points(c, x).map_err(|e| e.to_string())? {
            let p = phi(c, &y).map_err(|e| e.to_string())?;
            if c.form.eval(&p) != k {
                return Err(format!("layer image {} is not on the quadric", fmt_point(&p)));
            }
            chk.counts.phi_images += 1;
            let neg: Point = p.iter().map(|v| -v).collect();
            if !pairs.insert(p.clone()) || !pairs.insert(neg) {
                return Err(format!("layer pairs overlap at {}", fmt_point(&p)));
            }
        }
        if pairs != orbit {
            return Err(format!("layer pairs of {} differ from its orbit", linalg::fmt_vec(x)));
        }
        for p in orbit {
            if !covered.insert(p.clone()) {
                return Err(format!("{} lies in two orbits", fmt_point(&p)));
            }
        }
    }
    let all: BTreeSet<Point> = sols.into_iter().collect();
    if covered != all {
        let missing: Vec<Point> = all.difference(&covered).cloned().collect();
        return Err(format!("uncovered solutions: {}", fmt_points(&missing)));
    }
    Ok(())
}

/// The rank 3 claims checked separately; each field holds a witness when it fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct A3Claims {
    #[serde(rename = "N")]
    pub n: u64,
    pub solutions: usize,
    pub orbits: usize,
    pub extended_images: usize,
    /// `G` maps every stratum to itself.
    pub stability: Option<String>,
    /// The four layers of each element land in four strata.
    pub four_strata: Option<String>,
    /// Images sharing a stratum come from the same layer.
    pub same_layer: Option<String>,
    /// Images sharing a stratum have disjoint `G`-orbits.
    pub disjoint_orbits: Option<String>,
    /// The orbits of the images cover the solution set.
    pub coverage: Option<String>,
}

impl A3Claims {
    pub fn all_hold(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<String> {
        [&self.stability, &self.four_strata, &self.same_layer, &self.disjoint_orbits, &self.coverage]
            .into_iter()
            .flatten()
            .next()
            .cloned()
    }
}

pub fn a3_claims(n: u64) -> Result<A3Claims> {
    let c = case(CaseId::A3)?;
    let dom = domain_up_to(&c, n)?;
    a3_claims_for(&c, n, dom.get(&n).map(|v| v.as_slice()).unwrap_or(&[]))
}

fn a3_claims_for(c: &ParamCase, n: u64, xs: &[Vector]) -> Result<A3Claims> {
    let sols = diophantine::solve_diagonal(&c.form, level_value(c, n)).points;
    let group = diophantine::group_elements(c.group);
    let all: BTreeSet<Point> = sols.iter().cloned().collect();
    let mut out = A3Claims { n, solutions: sols.len(), ..Default::default() };
    'stab: for p in &sols {
        for g in &group {
            let gp = g.apply(p)?;
            if gp[1] != p[1] || !all.contains(&gp) {
                out.stability = Some(format!("G moves {} to {}", fmt_point(p), fmt_point(&gp)));
                break 'stab;
            }
        }
    }
    out.orbits = diophantine::orbit_partition(c.group, &sols)?.len();
    // (layer, image, orbit) for every extended element
    let mut imgs: Vec<(usize, Point, BTreeSet<Point>)> = Vec::new();
    for x in xs {
        let mut ys = BTreeSet::new();
        for (j, y) in layer_points(c, x)?.into_iter().enumerate() {
            let p = phi(c, &y)?;
            if !all.contains(&p) {
                return Err(Error::InternalInconsistency(format!("image {} is not a solution", fmt_point(&p))));
            }
            ys.insert(p[1]);
            let o = diophantine::orbit(&group, &p)?.into_iter().collect();
            imgs.push((j, p, o));
        }
        if ys.len() != 4 && out.four_strata.is_none() {
            out.four_strata = Some(format!("layers of {} use only {} strata", linalg::fmt_vec(x), ys.len()));
        }
    }
    out.extended_images = imgs.len();
    let mut by_y: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, (_, p, _)) in imgs.iter().enumerate() {
        by_y.entry(p[1]).or_default().push(i);
    }
    for ids in by_y.values() {
        for (k, &a) in ids.iter().enumerate() {
            for &b in &ids[k + 1..] {
                let (ja, pa, oa) = &imgs[a];
                let (jb, pb, _) = &imgs[b];
                if ja != jb && out.same_layer.is_none() {
                    out.same_layer = Some(format!("{} and {} share a stratum from layers {ja} and {jb}", fmt_point(pa), fmt_point(pb)));
                }
                if out.disjoint_orbits.is_none() && oa.contains(pb) {
                    let g = group.iter().find(|g| g.apply(pa).ok().as_ref() == Some(pb)).expect("pb lies in the orbit of pa");
                    out.disjoint_orbits = Some(format!(
                        "{} and {} lie in one orbit (matrix {:?} / {})",
                        fmt_point(pa),
                        fmt_point(pb),
                        g.m,
                        g.den
                    ));
                }
            }
        }
    }
    let covered: BTreeSet<Point> = imgs.iter().flat_map(|(_, _, o)| o.iter().cloned()).collect();
    if covered != all {
        let missing: Vec<Point> = all.difference(&covered).take(4).cloned().collect();
        out.coverage = Some(format!("solutions outside the extended orbits: {}", fmt_points(&missing)));
    }
    Ok(out)
}

fn check_a3(c: &ParamCase, n: u64, xs: &[Vector], chk: &mut Check) -> Outcome {
    let claims = a3_claims_for(c, n, xs).map_err(|e| e.to_string())?;
    chk.counts = Counts { solutions: claims.solutions, orbits: claims.orbits, phi_images: claims.extended_images };
    claims.first_failure().map_or(Ok(()), Err)
}

/// Every rank 3 claim for `N = 0..=max`, in parallel.
pub fn a3_claims_range(max: u64) -> Result<Vec<A3Claims>> {
    let c = case(CaseId::A3)?;
    let dom = domain_up_to(&c, max)?;
    let empty = Vec::new();
    (0..=max).into_par_iter().map(|n| a3_claims_for(&c, n, dom.get(&n).unwrap_or(&empty))).collect()
}

fn run_check(c: &ParamCase, n: u64, xs: &[Vector]) -> Report {
    let mut chk = Check::new(c.id, n);
    let out = match c.claim {
        Claim::CompleteRepresentatives => check_representatives(c, n, xs, &mut chk),
        Claim::OrbitSizeOnly => check_orbit_sizes(c, n, xs, &mut chk),
        Claim::ExtendedPairs => check_extended_pairs(c, n, xs, &mut chk),
        Claim::StratifiedA3 => check_a3(c, n, xs, &mut chk),
    };
    chk.finish(out.err())
}

fn claim_guard(c: &ParamCase, want: &[Claim]) -> Result<()> {
    if want.contains(&c.claim) {
        Ok(())
    } else {
        Err(Error::UnsupportedType(format!("case {} does not make this claim", c.id)))
    }
}

/// Runs the verifier matching the case's claim for every `N <= max`, in parallel,
/// reports in `N` order.
pub fn verify_range(c: &ParamCase, max: u64) -> Result<Vec<Report>> {
    let dom = domain_up_to(c, max)?;
    let empty = Vec::new();
    Ok((0..=max).into_par_iter().map(|n| run_check(c, n, dom.get(&n).unwrap_or(&empty))).collect())
}

pub fn verify(c: &ParamCase, n: u64) -> Result<Report> {
    let dom = domain_up_to(c, n)?;
    Ok(run_check(c, n, dom.get(&n).map(|v| v.as_slice()).unwrap_or(&[])))
}

/// Freeness, and that the images meet every orbit exactly once.
pub fn verify_representatives(c: &ParamCase, n: u64) -> Result<Report> {
    claim_guard(c, &[Claim::CompleteRepresentatives])?;
    verify(c, n)
}

/// Every image has a full size orbit; orbits without an image are listed.
pub fn verify_orbit_size(c: &ParamCase, n: u64) -> Result<Report> {
    claim_guard(c, &[Claim::OrbitSizeOnly])?;
    verify(c, n)
}

/// The six point orbit of each `p(q)` splits into the three layer pairs, and
/// these orbits tile `U(12N+4)`.
pub fn pig_a2_verify(n: u64) -> Result<Report> {
    verify(&case(CaseId::A2ext)?, n)
}

pub fn a3_conjecture_check(n: u64) -> Result<Report> {
    verify(&case(CaseId::A3)?, n)
}

/// Points of `x^2 + 2y^2 + 3z^2 = 48N + 30` with middle coordinate `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A3Stratum {
    #[serde(rename = "N")]
    pub n: u64,
    pub y: i64,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A3Strata {
    #[serde(rename = "N")]
    pub n: u64,
    /// Odd `y` with `y^2 < 24N + 15`.
    pub candidates: Vec<i64>,
    /// The `Omega` set matching the residue of `y^2` mod 3, for each candidate.
    pub omega: BTreeMap<i64, Vec<i64>>,
    /// Candidates with a non-empty `Omega`.
    pub gamma: Vec<i64>,
    /// Non-empty strata, by `y`.
    pub strata: Vec<A3Stratum>,
    /// Whether the non-empty strata are exactly those indexed by `gamma`, and
    /// they exhaust the solution set.
    pub consistent: bool,
}

/// `Omega` for `y`: the first coordinates allowed by the residue of `y^2` mod 3.
pub fn a3_omega(n: u64, y: i64) -> Vec<i64> {
    let n = n as i64;
    let (p, r) = ((y * y) / 3, (y * y) % 3);
    let my = 16 * n + 10 - 2 * p;
    let bound = linalg::isqrt_u64((48 * n + 30 - 2 * y * y).max(0) as u64) as i64;
    (-bound..=bound)
        .filter(|&m| {
            if (m * m) % 3 != r {
                return false;
            }
            let rest = if r == 0 { my - m * m / 3 } else { my - (m * m + 2) / 3 };
            rest >= 0 && linalg::is_square(rest)
        })
        .collect()
}

pub fn a3_strata(n: u64) -> Result<A3Strata> {
    let k = 48 * n + 30;
    let sols = diophantine::solve_diagonal(&DiagonalForm::new(vec![1, 2, 3])?, k).points;
    let lim = 24 * n as i64 + 15;
    let candidates: Vec<i64> = (-lim..=lim).filter(|y| y % 2 != 0 && y * y < lim).collect();
    let omega: BTreeMap<i64, Vec<i64>> = candidates.iter().map(|&y| (y, a3_omega(n, y))).collect();
    let gamma: Vec<i64> = omega.iter().filter(|(_, v)| !v.is_empty()).map(|(&y, _)| y).collect();
    let mut by_y: BTreeMap<i64, Vec<Point>> = BTreeMap::new();
    for p in sols.iter() {
        by_y.entry(p[1]).or_default().push(p.clone());
    }
    let consistent = by_y.keys().copied().collect::<Vec<_>>() == gamma
        && by_y.iter().all(|(y, ps)| {
            let xs: BTreeSet<i64> = ps.iter().map(|p| p[0]).collect();
            xs == omega[y].iter().copied().collect()
        });
    let strata = by_y.into_iter().map(|(y, points)| A3Stratum { n, y, points }).collect();
    Ok(A3Strata { n, candidates, omega, gamma, strata, consistent })
}

/// The counting statements: a partition model counted against a solution set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Corollary {
    /// 3-cores against `U(12N+4)` over 6.
    A2,
    /// Self-conjugate 4-cores against `U(8N+5)` over 8.
    C2,
    /// `Lambda_1` elements of the extended group against `U(8N+1)` over 4.
    C2L1,
    /// `D_6` bar cores against `U(12N+5)` over 8.
    D3t,
    /// `D4 flat` against `U(12N+7)` over 4.
    D43,
}

impl Corollary {
    pub const ALL: [Corollary; 5] = [Corollary::A2, Corollary::C2, Corollary::C2L1, Corollary::D3t, Corollary::D43];

    fn case(self) -> CaseId {
        match self {
            Corollary::A2 => CaseId::A2,
            Corollary::C2 => CaseId::C2,
            Corollary::C2L1 => CaseId::C2L1,
            Corollary::D3t => CaseId::D3t,
            Corollary::D43 => CaseId::D43,
        }
    }

    fn divisor(self) -> usize {
        match self {
            Corollary::A2 => 6,
            Corollary::C2 | Corollary::D3t => 8,
            Corollary::C2L1 | Corollary::D43 => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    #[serde(rename = "N")]
    pub n: u64,
    pub model: usize,
    pub solutions: usize,
    pub divisor: usize,
}

impl CountCheck {
    pub fn holds(&self) -> bool {
        self.model * self.divisor == self.solutions
    }
}

/// Model sizes come from the partition models where one exists.
pub fn counting_corollary(cor: Corollary, max: u64) -> Result<Vec<CountCheck>> {
    let c = case(cor.case())?;
    let m = max as usize;
    let sizes: BTreeMap<usize, usize> = match cor {
        Corollary::A2 => (0..=m).map(|n| Ok((n, cores::cores_of_size(3, n)?.len()))).collect::<Result<_>>()?,
        Corollary::C2 => cores::self_conjugate_cores_up_to(4, m).into_iter().map(|(n, v)| (n, v.len())).collect(),
        Corollary::C2L1 => domain_up_to(&c, max)?.into_iter().map(|(n, v)| (n as usize, v.len())).collect(),
        Corollary::D3t => cores::bar_cores_up_to(2, m)?.into_iter().map(|(n, v)| (n, v.len())).collect(),
        Corollary::D43 => cores::d4flat_up_to(m)?.into_iter().map(|(n, v)| (n, v.len())).collect(),
    };
    Ok((0..=max)
        .into_par_iter()
        .map(|n| CountCheck {
            n,
            model: sizes.get(&(n as usize)).copied().unwrap_or(0),
            solutions: diophantine::solve_diagonal(&c.form, level_value(&c, n)).len(),
            divisor: cor.divisor(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qf, qvec};

    #[test]
    fn case_names_round_trip() {
        for c in CaseId::NAMED.into_iter().chain(CaseId::hyperoctahedral()) {
            assert_eq!(c.to_string().parse::<CaseId>().unwrap(), c);
        }
        assert!("HYP:G2_1".parse::<CaseId>().is_err());
        assert!("X".parse::<CaseId>().is_err());
        assert_eq!(serde_json::to_string(&CaseId::Hyp("C3_1".parse().unwrap())).unwrap(), "\"HYP:C3_1\"");
    }

    #[test]
    fn all_cases_construct() {
        for c in CaseId::NAMED.into_iter().chain(CaseId::hyperoctahedral()) {
            case(c).unwrap_or_else(|e| panic!("{c}: {e}"));
        }
    }

    #[test]
    fn phi_fixtures() {
        let c2 = case(CaseId::C2).unwrap();
        assert_eq!(phi(&c2, &qvec(&[1, -3])).unwrap(), vec![-10, 15]);
        let d43 = case(CaseId::D43).unwrap();
        assert_eq!(phi(&d43, &qvec(&[0, 1, -1])).unwrap(), vec![8, 3]);
        let a3 = case(CaseId::A3).unwrap();
        assert_eq!(phi(&a3, &qvec(&[0, 0, 0, 0])).unwrap(), vec![-1, 1, -3]);
        let hyp = case(CaseId::Hyp("C3_1".parse().unwrap())).unwrap();
        assert_eq!(phi(&hyp, &qvec(&[0, 0, 0])).unwrap(), vec![-5, -3, -1]);
        let a2 = case(CaseId::A2ext).unwrap();
        assert_eq!(phi(&a2, &[qf(2, 3), qf(-1, 3), qf(-1, 3)]).unwrap(), vec![-1, 1]);
        assert!(matches!(phi(&c2, &[qf(1, 3), q(0)]), Err(Error::NonIntegralImage(_))));
    }

    #[test]
    fn images_lie_on_the_quadric() {
        for id in CaseId::NAMED.into_iter().chain(CaseId::hyperoctahedral()) {
            let c = case(id).unwrap();
            let max = if c.type_data.n == 2 { 200 } else { 30 };
            for (n, xs) in domain_up_to(&c, max).unwrap() {
                for x in xs {
                    for y in layer_points(&c, &x).unwrap() {
                        assert_eq!(c.form.eval(&phi(&c, &y).unwrap()), level_value(&c, n) as i64, "{id} {x:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn c2_rotation_matches_the_rotated_length() {
        // in the rotated coordinates (x1 + x2, x1 - x2) the length is 2 b1^2 + 2 b2^2 + b2
        let c = case(CaseId::C2L1).unwrap();
        for (n, xs) in domain_up_to(&c, 30).unwrap() {
            for x in xs {
                let b1 = &x[0] + &x[1];
                let b2 = &x[0] - &x[1];
                let v = q(2) * &b1 * &b1 + q(2) * &b2 * &b2 + b2;
                assert_eq!(v, q(n as i64));
            }
        }
    }

    #[test]
    fn representative_examples() {
        let r = verify_representatives(&case(CaseId::C2).unwrap(), 40).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.counts, Counts { solutions: 24, orbits: 3, phi_images: 3 });
        let d3 = case(CaseId::D3t).unwrap();
        let r = verify_representatives(&d3, 35).unwrap();
        assert!(r.passed());
        let imgs: BTreeSet<Point> =
            domain_up_to(&d3, 35).unwrap()[&35].iter().map(|x| phi(&d3, x).unwrap()).collect();
        assert_eq!(imgs, [vec![-20, 5], vec![-8, -19], vec![16, -13]].into_iter().collect());
        let l1 = case(CaseId::C2L1).unwrap();
        assert!(verify_representatives(&l1, 2).unwrap().passed());
        let imgs: BTreeSet<Point> = domain_up_to(&l1, 2).unwrap()[&2].iter().map(|x| phi(&l1, x).unwrap()).collect();
        assert_eq!(imgs, [vec![-4, 1], vec![4, 1]].into_iter().collect());
        assert!(verify_orbit_size(&l1, 2).is_err());
    }

    #[test]
    fn orbit_size_examples() {
        let r = verify_orbit_size(&case(CaseId::A42).unwrap(), 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.uncovered, vec!["(-5,-5);(-5,5);(5,-5);(5,5)".to_string()]);
        let r = verify_orbit_size(&case(CaseId::G21).unwrap(), 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.counts.phi_images, 0);
        assert_eq!(r.uncovered, vec!["(-5,0);(5,0)".to_string()]);
        let r = verify_orbit_size(&case("HYP:D3_2".parse().unwrap()).unwrap(), 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.counts.solutions, 8);
    }

    #[test]
    fn extended_a2() {
        let r = pig_a2_verify(0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.counts.solutions, r.counts.phi_images), (6, 3));
        let c = case(CaseId::A2ext).unwrap();
        let layers: BTreeSet<Point> = layer_points(&c, &qvec(&[1, 0, -1]))
            .unwrap()
            .iter()
            .map(|y| phi(&c, y).unwrap())
            .collect();
        assert_eq!(layers, [vec![2, 2], vec![2, -2], vec![-4, 0]].into_iter().collect());
        let r = pig_a2_verify(6).unwrap();
        assert!(r.passed());
        assert_eq!((r.counts.solutions, r.counts.orbits), (12, 2));
    }

    #[test]
    fn a3_small() {
        let r = a3_conjecture_check(0).unwrap();
        assert!(r.passed(), "{r:?}");
        // two layer 2 images at N = 3 are related by an orientation reversing element
        let c = a3_claims(3).unwrap();
        assert!(c.stability.is_none() && c.four_strata.is_none() && c.same_layer.is_none() && c.coverage.is_none());
        assert!(c.disjoint_orbits.unwrap().starts_with("(-9,-3,5) and (3,-3,-7)"));
        assert_eq!(r.counts.phi_images, 4);
        // one 4-core of size 1, so four layer images
        let r = a3_conjecture_check(1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.counts.phi_images, r.counts.solutions), (4, 48));
        let s = a3_strata(0).unwrap();
        assert!(s.consistent);
        assert_eq!(s.strata.iter().map(|x| x.points.len()).sum::<usize>(), diophantine::solve_diagonal(&DiagonalForm::new(vec![1, 2, 3]).unwrap(), 30).len());
        assert!(s.candidates.iter().all(|y| y % 2 != 0));
    }

    #[test]
    fn counting_small() {
        for cor in Corollary::ALL {
            for chk in counting_corollary(cor, 40).unwrap() {
                assert!(chk.holds(), "{cor:?} {chk:?}");
            }
        }
    }
}
