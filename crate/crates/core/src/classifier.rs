//! Necessary conditions for irreducible restrictions, the exact criteria for
//! the natural and basic spin modules, and MeatAxe ground truth to check them against.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::MatFp;
use crate::partitions::{alpha, beta, enumerate_p_regular, is_js, mullineux, parity_chain_index, Partition};
use crate::perm_groups::{parse_group_spec, wreath, PermGroup, Permutation};
use crate::reps::{is_isomorphic, meataxe, Acting, Caps, MeataxeVerdict, ModuleLibrary, Rep};

/// Where a subgroup came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupFamily {
    Symmetric,
    Alternating,
    PointStabilizer,
    Young(Vec<usize>),
    Intransitive { k: usize },
    Wreath { a: usize, b: usize },
    Named(String),
    Generators,
}

/// Permutation-group properties the theorems refer to. Points are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFlags {
    pub transitive: bool,
    pub primitive: bool,
    pub two_transitive: bool,
    pub three_homogeneous: bool,
    pub fixed_point: bool,
    /// A split into two halves preserved by the group, with some element swapping them.
    pub swapped_halves: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct SubgroupDescriptor {
    pub label: String,
    pub family: GroupFamily,
    pub group: Arc<PermGroup>,
    pub flags: GroupFlags,
}

fn family_of(spec: &str) -> GroupFamily {
    let fields: Vec<&str> = spec.trim().split(':').collect();
    let num = |s: &str| s.trim().parse::<usize>().ok();
    match fields.as_slice() {
        ["Sn"] => GroupFamily::Symmetric,
        ["An"] => GroupFamily::Alternating,
        ["Sn-1"] => GroupFamily::PointStabilizer,
        ["young", mu] => {
            let parts = mu.trim_matches(|c| c == '(' || c == ')').split(',').filter_map(num).collect();
            GroupFamily::Young(parts)
        }
        ["intransitive", _, k] => match num(k) {
            Some(1) => GroupFamily::PointStabilizer,
            Some(k) => GroupFamily::Intransitive { k },
            None => GroupFamily::Generators,
        },
        ["wreath", a, b] => match (num(a), num(b)) {
            (Some(a), Some(b)) => GroupFamily::Wreath { a, b },
            _ => GroupFamily::Generators,
        },
        ["named", name] => GroupFamily::Named(name.to_string()),
        _ => GroupFamily::Generators,
    }
}

impl SubgroupDescriptor {
    /// Parses a group spec (see [`parse_group_spec`]) and computes its flags.
    pub fn from_spec(spec: &str, n: usize) -> Result<Self> {
        let group = parse_group_spec(spec, n)?;
        Ok(Self::new(spec.trim(), family_of(spec), group))
    }

    pub fn from_group(label: impl Into<String>, group: PermGroup) -> Self {
        Self::new(label, GroupFamily::Generators, group)
    }

    fn new(label: impl Into<String>, family: GroupFamily, group: PermGroup) -> Self {
        let n = group.degree();
        let flags = GroupFlags {
            transitive: group.is_transitive(),
            primitive: group.is_primitive(),
            two_transitive: group.is_k_transitive(2),
            three_homogeneous: n >= 3 && group.is_k_homogeneous(3),
            fixed_point: group.has_fixed_point(),
            swapped_halves: if n % 2 == 0 && n >= 2 {
                block_systems(&group, n / 2).ok().and_then(|systems| {
                    systems.into_iter().find(|s| moves_a_block(&group, s)).map(|s| s[0].clone())
                })
            } else {
                None
            },
        };
        SubgroupDescriptor { label: label.into(), family, group: Arc::new(group), flags }
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }
}

/// Largest degree for which block systems are found by enumeration.
const BLOCK_SEARCH_DEGREE: usize = 16;

/// All partitions of the points into blocks of size `a` preserved by the group.
/// Each block is sorted and the blocks are ordered by their least point.
pub fn block_systems(g: &PermGroup, a: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = g.degree();
    if a == 0 || n % a != 0 {
        return Ok(Vec::new());
    }
    if n > BLOCK_SEARCH_DEGREE {
        return Err(Error::ResourceCap(format!("block search on {n} points")));
    }
    let gens = g.generators();
    let mut out = Vec::new();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        n: usize,
        a: usize,
        gens: &[Permutation],
        block_of: &mut Vec<usize>,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(first) = (0..n).find(|&x| block_of[x] == usize::MAX) else {
            let preserved = gens.iter().all(|g| {
                blocks.iter().all(|b| {
                    let target = block_of[g.apply(b[0])];
                    b.iter().all(|&x| block_of[g.apply(x)] == target)
                })
            });
            if preserved {
                out.push(blocks.clone());
            }
            return;
        };
        let free: Vec<usize> = (first + 1..n).filter(|&x| block_of[x] == usize::MAX).collect();
        let id = blocks.len();
        let mut pick = Vec::with_capacity(a);
        fn choose(
            start: usize,
            need: usize,
            free: &[usize],
            pick: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if need == 0 {
                f(pick);
                return;
            }
            for i in start..free.len() {
                if free.len() - i < need {
                    break;
                }
                pick.push(free[i]);
                choose(i + 1, need - 1, free, pick, f);
                pick.pop();
            }
        }
        choose(0, a - 1, &free, &mut pick, &mut |rest: &[usize]| {
            let mut b = vec![first];
            b.extend_from_slice(rest);
            for &x in &b {
                block_of[x] = id;
            }
            blocks.push(b);
            rec(n, a, gens, block_of, blocks, out);
            let b = blocks.pop().expect("pushed above");
            for x in b {
                block_of[x] = usize::MAX;
            }
        });
    }
    rec(n, a, gens, &mut block_of, &mut blocks, &mut out);
    Ok(out)
}

fn moves_a_block(g: &PermGroup, system: &[Vec<usize>]) -> bool {
    g.generators().iter().any(|x| system.iter().any(|b| !b.contains(&x.apply(b[0]))))
}

/// Whether `D^λ` is one-dimensional.
fn is_linear(lambda: &Partition, p: u32) -> Result<bool> {
    let n = lambda.size();
    let triv = Partition::from_parts(&[n]);
    Ok(*lambda == triv || *lambda == mullineux(&triv, p)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremACase {
    ThreeHomogeneous,
    TwoTransitiveLowHeight,
    PointStabilizerJs,
    ParityChain,
    NaturalInHalves,
    BasicSpin,
}

impl fmt::Display for TheoremACase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremACase::ThreeHomogeneous => "A(i)",
            TheoremACase::TwoTransitiveLowHeight => "A(ii)",
            TheoremACase::PointStabilizerJs => "A(iii)",
            TheoremACase::ParityChain => "A(iv)",
            TheoremACase::NaturalInHalves => "A(v)",
            TheoremACase::BasicSpin => "A(vi)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroundTruth {
    AbsIrr,
    Red,
}

impl fmt::Display for GroundTruth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundTruth::AbsIrr => "AbsIrr",
            GroundTruth::Red => "Red",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// No case of the relevant theorem applies.
    NecessarilyReducible { reason: String },
    /// Some cases apply; irreducibility is not claimed.
    PossiblyIrreducible { cases: Vec<String> },
    /// One of the statements that also assert irreducibility applies.
    Irreducible { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationOutcome {
    pub verdict: Verdict,
    pub ground_truth: Option<GroundTruth>,
}

impl ClassificationOutcome {
    pub fn new(verdict: Verdict) -> Self {
        ClassificationOutcome { verdict, ground_truth: None }
    }

    pub fn with_ground_truth(mut self, gt: GroundTruth) -> Self {
        self.ground_truth = Some(gt);
        self
    }

    /// False when the ground truth contradicts the verdict; true when unknown.
    pub fn consistent(&self) -> bool {
        match (&self.verdict, &self.ground_truth) {
            (Verdict::NecessarilyReducible { .. }, Some(GroundTruth::AbsIrr)) => false,
            (Verdict::Irreducible { .. }, Some(GroundTruth::Red)) => false,
            _ => true,
        }
    }
}

/// The cases of the reduction theorem whose hypotheses hold for `(λ, G)`.
pub fn theorem_a_case_list(lambda: &Partition, p: u32, g: &SubgroupDescriptor) -> Result<Vec<TheoremACase>> {
    lambda.require_p_regular(p)?;
    let n = lambda.size();
    if g.degree() != n {
        return Err(Error::DimensionMismatch(format!("group of degree {} for a partition of {n}", g.degree())));
    }
    if n < 8 {
        return Err(Error::Precondition(format!("the reduction theorem needs n >= 8, got {n}")));
    }
    if is_linear(lambda, p)? {
        return Err(Error::Precondition(format!("D^{lambda} is one-dimensional")));
    }
    let f = &g.flags;
    let h = lambda.height();
    let hm = mullineux(lambda, p)?.height();
    let mut cases = Vec::new();
    if f.three_homogeneous {
        cases.push(TheoremACase::ThreeHomogeneous);
    }
    if f.two_transitive && h.min(hm) == 2 {
        cases.push(TheoremACase::TwoTransitiveLowHeight);
    }
    if f.fixed_point && is_js(lambda, p) {
        cases.push(TheoremACase::PointStabilizerJs);
    }
    if p == 2 && n % 2 == 0 && f.two_transitive && h >= 3 && parity_chain_index(lambda).is_some() {
        cases.push(TheoremACase::ParityChain);
    }
    if p == 2 && n % 4 == 2 && *lambda == alpha(n)? && f.swapped_halves.is_some() {
        cases.push(TheoremACase::NaturalInHalves);
    }
    if p == 2 && *lambda == beta(n)? {
        cases.push(TheoremACase::BasicSpin);
    }
    Ok(cases)
}

pub fn theorem_a_cases(lambda: &Partition, p: u32, g: &SubgroupDescriptor) -> Result<ClassificationOutcome> {
    let cases = theorem_a_case_list(lambda, p, g)?;
    let verdict = if cases.is_empty() {
        Verdict::NecessarilyReducible { reason: format!("no case of the reduction theorem applies to {}", g.label) }
    } else {
        Verdict::PossiblyIrreducible { cases: cases.iter().map(|c| c.to_string()).collect() }
    };
    Ok(ClassificationOutcome::new(verdict))
}

/// Identifies a primitive group from the list of primitive groups on which the
/// basic spin module stays irreducible.
fn primitive_spin_exception(g: &PermGroup) -> Option<&'static str> {
    let n = g.degree();
    let order = g.order();
    let full: u128 = (1..=n as u128).product();
    if order * 2 == full {
        return (n % 4 == 2).then_some("A_n with n = 2 mod 4");
    }
    match (n, order) {
        (5, 20) => Some("C5:C4"),
        (6, 120) => Some("S5 on 6 points"),
        (10, 720) => {
            let max = g.elements().iter().map(|x| x.order()).max().unwrap_or(1);
            match max {
                6 => Some("S6 on 10 points"),
                8 => Some("M10"),
                _ => None,
            }
        }
        (10, 1440) => Some("Aut(A6)"),
        (12, 95040) => Some("M12"),
        _ => None,
    }
}

/// Whether the orbit sizes split into two odd parts, i.e. the group lies in
/// some `S_{n-k} × S_k` with `n-k`, `k` odd.
fn odd_orbit_split(g: &PermGroup) -> Option<usize> {
    let n = g.degree();
    let sizes: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for s in sizes {
        for t in (s..=n).rev() {
            if reach[t - s] {
                reach[t] = true;
            }
        }
    }
    (1..=n / 2).find(|&k| k % 2 == 1 && (n - k) % 2 == 1 && reach[k])
}

/// The basic spin module in characteristic 2: the list of groups on which it can stay irreducible.
pub fn theorem_b_decide(n: usize, g: &SubgroupDescriptor) -> Result<ClassificationOutcome> {
    if n < 5 || g.degree() != n {
        return Err(Error::Precondition(format!("basic spin classification needs n >= 5 and a group of degree {n}")));
    }
    let full: u128 = (1..=n as u128).product();
    if g.group.order() == full {
        return Ok(ClassificationOutcome::new(Verdict::Irreducible { reason: "the whole symmetric group".into() }));
    }
    // exact family statements first
    match g.family {
        GroupFamily::Wreath { a, b } if a > 1 && b > 1 => {
            return Ok(ClassificationOutcome::new(if a % 2 == 1 {
                Verdict::Irreducible { reason: format!("S_{a} wr S_{b} with {a} odd") }
            } else {
                Verdict::NecessarilyReducible { reason: format!("S_{a} wr S_{b} with {a} even") }
            }));
        }
        GroupFamily::Intransitive { k } => {
            return Ok(ClassificationOutcome::new(if k % 2 == 1 && (n - k) % 2 == 1 {
                Verdict::Irreducible { reason: format!("S_{} x S_{k} with both parts odd", n - k) }
            } else {
                Verdict::NecessarilyReducible { reason: format!("S_{} x S_{k} with an even part", n - k) }
            }));
        }
        GroupFamily::PointStabilizer => {
            return Ok(ClassificationOutcome::new(if n % 2 == 0 {
                Verdict::Irreducible { reason: format!("S_{} x S_1 with both parts odd", n - 1) }
            } else {
                Verdict::NecessarilyReducible { reason: format!("S_{} x S_1 with an even part", n - 1) }
            }));
        }
        _ => {}
    }
    let f = &g.flags;
    if f.primitive {
        return Ok(ClassificationOutcome::new(match primitive_spin_exception(&g.group) {
            Some(name) => Verdict::Irreducible { reason: format!("primitive exception {name}") },
            None => Verdict::NecessarilyReducible { reason: "primitive group outside the exception list".into() },
        }));
    }
    let mut cases = Vec::new();
    for a in (3..n).step_by(2).filter(|a| n % a == 0) {
        let b = n / a;
        let systems = block_systems(&g.group, a)?;
        if systems.iter().any(|s| b == 2 || moves_a_block(&g.group, s)) {
            cases.push(format!("B(i) a={a} b={b}"));
        }
    }
    if let Some(k) = odd_orbit_split(&g.group) {
        cases.push(format!("B(ii) k={k}"));
    }
    Ok(ClassificationOutcome::new(if cases.is_empty() {
        Verdict::NecessarilyReducible { reason: "no case of the basic spin classification applies".into() }
    } else {
        Verdict::PossiblyIrreducible { cases }
    }))
}

/// Which clause of the natural-module criterion decided the answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TNatCertificate {
    Intransitive,
    ProjectionNotTwoTransitive { half: usize },
    ProjectionReducible { half: usize },
    IsomorphicHalves,
    BothClausesHold,
}

/// `D^{(m-1,1)}` with `m = n/2` pulled back along one projection of `H ≤ S_m × S_m`.
fn half_module(d: &Rep, h: &Arc<PermGroup>, half: usize, m: usize) -> Result<Rep> {
    let gens = h
        .generators()
        .iter()
        .map(|x| {
            let imgs: Vec<usize> = (0..m).map(|i| x.apply(half * m + i) - half * m).collect();
            d.eval(&Permutation::from_images(imgs)?)
        })
        .collect::<Result<Vec<MatFp>>>()?;
    Rep::new(d.modulus(), d.dim(), Acting::Group(h.clone()), gens, format!("half {half} of {}", d.name()))
}

/// The iff criterion for `D^{(n-1,1)}↓_G`, `p = 2`, `n ≡ 2 mod 4`, `G ≤ S_{n/2} ≀ S_2`.
pub fn theorem_tnat_decide(
    g: &PermGroup,
    lib: &ModuleLibrary,
    caps: &Caps,
) -> Result<(bool, TNatCertificate)> {
    let n = g.degree();
    if n < 6 || n % 4 != 2 {
        return Err(Error::Precondition(format!("the natural-module criterion needs 6 <= n = 2 mod 4, got {n}")));
    }
    let m = n / 2;
    if !g.is_subgroup_of(&wreath(m, 2)?) {
        return Err(Error::Precondition("the group is not inside S_{n/2} wr S_2".into()));
    }
    if !g.is_transitive() {
        return Ok((false, TNatCertificate::Intransitive));
    }
    let first: Vec<usize> = (0..m).collect();
    let base = Arc::new(g.block_kernel(&first));
    let d = lib.irreducible(&alpha(m)?, 2)?;
    for half in 0..2 {
        let block: Vec<usize> = (half * m..(half + 1) * m).collect();
        let proj = base.project(&block)?;
        if !proj.is_k_transitive(2) {
            return Ok((false, TNatCertificate::ProjectionNotTwoTransitive { half }));
        }
        if !matches!(meataxe(&d.restrict(&proj)?, caps)?, MeataxeVerdict::AbsolutelyIrreducible) {
            return Ok((false, TNatCertificate::ProjectionReducible { half }));
        }
    }
    let left = half_module(&d, &base, 0, m)?;
    let right = half_module(&d, &base, 1, m)?;
    if is_isomorphic(&left, &right, caps)? {
        return Ok((false, TNatCertificate::IsomorphicHalves));
    }
    Ok((true, TNatCertificate::BothClausesHold))
}

/// Absolute irreducibility of `D^λ↓_G`, by the MeatAxe.
pub fn ground_truth(lambda: &Partition, p: u32, g: &PermGroup, lib: &ModuleLibrary, caps: &Caps) -> Result<GroundTruth> {
    lambda.require_p_regular(p)?;
    if lambda.standard_tableaux_count() > 4 * caps.dim_cap as u128 {
        return Err(Error::ResourceCap(format!("S^{lambda} is far above the dimension cap")));
    }
    let d = lib.irreducible(lambda, p)?;
    if d.dim() > caps.dim_cap {
        return Err(Error::ResourceCap(format!("dim D^{lambda} = {} exceeds the cap {}", d.dim(), caps.dim_cap)));
    }
    Ok(match meataxe(&d.restrict(g)?, caps)? {
        MeataxeVerdict::AbsolutelyIrreducible => GroundTruth::AbsIrr,
        _ => GroundTruth::Red,
    })
}

/// Irreducibility of `D^λ↓_{S_{n-k} × S_k}` for `2 ≤ k ≤ n/2` as predicted by
/// the two-row Young subgroup criterion.
pub fn intransitive_predicts_irreducible(lambda: &Partition, p: u32, k: usize) -> Result<bool> {
    let n = lambda.size();
    Ok(p == 2 && n % 2 == 0 && k % 2 == 1 && *lambda == beta(n)?)
}

/// Irreducibility of `D^λ↓_{S_a ≀ S_b}` as predicted by the wreath product criterion.
pub fn wreath_predicts_irreducible(lambda: &Partition, p: u32, a: usize, b: usize) -> Result<bool> {
    let n = lambda.size();
    if a * b != n || a < 2 || b < 2 {
        return Err(Error::Precondition(format!("S_{a} wr S_{b} inside S_{n}")));
    }
    Ok(p == 2 && ((*lambda == beta(n)? && a % 2 == 1) || (n % 4 == 2 && *lambda == alpha(n)? && b == 2)))
}

/// The families used by the soundness sweep: `A_n`, `S_{n-1}`, every
/// `S_{n-k} × S_k` and every `S_a ≀ S_b`.
pub fn standard_families(n: usize) -> Vec<String> {
    let mut out = vec!["An".to_string(), "Sn-1".to_string()];
    out.extend((2..=n / 2).map(|k| format!("intransitive:{n}:{k}")));
    out.extend((2..n).filter(|a| n % a == 0 && n / a >= 2).map(|a| format!("wreath:{a}:{}", n / a)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyCaps {
    pub dim_cap: usize,
    pub word_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyMeta {
    pub version: String,
    pub n: usize,
    pub p: u32,
    pub seed: u64,
    pub caps: SurveyCaps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyCell {
    pub lambda: String,
    pub group: String,
    pub cases: Vec<String>,
    pub ground_truth: Option<GroundTruth>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub meta: SurveyMeta,
    pub cells: Vec<SurveyCell>,
}

impl SurveyReport {
    pub fn inconsistencies(&self) -> usize {
        self.cells.iter().filter(|c| !c.consistent).count()
    }

    pub fn errors(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,group,cases,ground_truth,consistent,elapsed_ms,error\n");
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                quote(&c.lambda),
                quote(&c.group),
                quote(&c.cases.join(" ")),
                c.ground_truth.as_ref().map(|g| g.to_string()).unwrap_or_default(),
                c.consistent,
                c.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
                c.error.as_deref().map(quote).unwrap_or_default(),
            ));
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct SurveyOptions {
    /// Only these partitions; all with `dim D^λ > 1` when empty.
    pub partitions: Vec<Partition>,
    /// Group specs; [`standard_families`] when empty.
    pub families: Vec<String>,
    /// Skip the MeatAxe ground truth.
    pub skip_ground_truth: bool,
    /// Record wall-clock times; off by default so that reports are reproducible.
    pub timings: bool,
}

/// Runs the reduction theorem and the MeatAxe over a grid of partitions and
/// subgroups. Failures are recorded per cell.
pub fn survey(n: usize, p: u32, opts: &SurveyOptions, lib: &ModuleLibrary, caps: &Caps) -> Result<SurveyReport> {
    crate::linalg::check_modulus(p as u64)?;
    let families = if opts.families.is_empty() { standard_families(n) } else { opts.families.clone() };
    let groups: Vec<(String, Result<SubgroupDescriptor>)> =
        families.iter().map(|s| (s.clone(), SubgroupDescriptor::from_spec(s, n))).collect();
    let partitions: Vec<Partition> = if opts.partitions.is_empty() {
        let mut v = Vec::new();
        for l in enumerate_p_regular(n, p) {
            if !is_linear(&l, p)? {
                v.push(l);
            }
        }
        v
    } else {
        opts.partitions.clone()
    };
    let mut cells = Vec::new();
    for lambda in &partitions {
        for (spec, g) in &groups {
            let start = Instant::now();
            let mut cell = SurveyCell {
                lambda: lambda.to_string(),
                group: spec.clone(),
                cases: Vec::new(),
                ground_truth: None,
                consistent: true,
                elapsed_ms: None,
                error: None,
            };
            let run = || -> Result<(Vec<String>, Option<ClassificationOutcome>, Option<GroundTruth>)> {
                let g = g.as_ref().map_err(|e| Error::Parse(e.to_string()))?;
                let outcome = if n >= 8 { Some(theorem_a_cases(lambda, p, g)?) } else { None };
                let cases = match outcome.as_ref().map(|o| &o.verdict) {
                    Some(Verdict::PossiblyIrreducible { cases }) => cases.clone(),
                    _ => Vec::new(),
                };
                let gt = if opts.skip_ground_truth { None } else { Some(ground_truth(lambda, p, &g.group, lib, caps)?) };
                Ok((cases, outcome, gt))
            };
            match run() {
                Ok((cases, outcome, gt)) => {
                    cell.cases = cases;
                    if let (Some(o), Some(t)) = (outcome, gt.clone()) {
                        cell.consistent = o.with_ground_truth(t).consistent();
                    }
                    cell.ground_truth = gt;
                }
                Err(e) => cell.error = Some(e.to_string()),
            }
            if opts.timings {
                cell.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            cells.push(cell);
        }
    }
    Ok(SurveyReport {
        meta: SurveyMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            n,
            p,
            seed: caps.seed,
            caps: SurveyCaps { dim_cap: caps.dim_cap, word_cap: caps.word_cap },
        },
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_groups::{alternating, intransitive, named};

    fn part(x: &[usize]) -> Partition {
        Partition::from_parts(x)
    }

    #[test]
    fn flags_of_families() {
        let w = SubgroupDescriptor::from_spec("wreath:5:2", 10).unwrap();
        assert!(w.flags.transitive && !w.flags.primitive && !w.flags.two_transitive);
        assert!(w.flags.swapped_halves.is_some());
        let b = SubgroupDescriptor::from_spec("intransitive:10:5", 10).unwrap();
        assert!(b.flags.swapped_halves.is_none());
        let a = SubgroupDescriptor::from_spec("An", 8).unwrap();
        assert!(a.flags.three_homogeneous && a.flags.primitive);
        let s = SubgroupDescriptor::from_spec("Sn-1", 8).unwrap();
        assert_eq!(s.family, GroupFamily::PointStabilizer);
        assert!(s.flags.fixed_point);
    }

    #[test]
    fn block_system_counts() {
        // S_3 wr S_2 preserves exactly one split into halves; S_6 preserves none
        let w = wreath(3, 2).unwrap();
        assert_eq!(block_systems(&w, 3).unwrap().len(), 1);
        assert_eq!(block_systems(&crate::perm_groups::symmetric(6), 3).unwrap().len(), 0);
        // the trivial group preserves all 10 splits of six points into halves
        let t = PermGroup::new(6, vec![]).unwrap();
        assert_eq!(block_systems(&t, 3).unwrap().len(), 10);
        assert_eq!(block_systems(&t, 2).unwrap().len(), 15);
    }

    #[test]
    fn reduction_theorem_examples() {
        let g = SubgroupDescriptor::from_spec("intransitive:10:2", 10).unwrap();
        let o = theorem_a_cases(&part(&[5, 4, 1]), 2, &g).unwrap();
        assert!(matches!(o.verdict, Verdict::NecessarilyReducible { .. }));
        let w = SubgroupDescriptor::from_spec("wreath:5:2", 10).unwrap();
        let o = theorem_a_cases(&part(&[6, 4]), 2, &w).unwrap();
        assert_eq!(o.verdict, Verdict::PossiblyIrreducible { cases: vec!["A(vi)".into()] });
        let o = theorem_a_cases(&part(&[9, 1]), 2, &w).unwrap();
        assert_eq!(o.verdict, Verdict::PossiblyIrreducible { cases: vec!["A(v)".into()] });
        assert!(theorem_a_cases(&part(&[4, 2, 1]), 2, &SubgroupDescriptor::from_spec("An", 7).unwrap()).is_err());
    }

    #[test]
    fn basic_spin_list() {
        let named_desc = |name: &str| SubgroupDescriptor::from_spec(&format!("named:{name}"), named(name).unwrap().degree()).unwrap();
        let irreducible = |o: ClassificationOutcome| matches!(o.verdict, Verdict::Irreducible { .. });
        assert!(irreducible(theorem_b_decide(6, &named_desc("s5_on_6")).unwrap()));
        assert!(irreducible(theorem_b_decide(10, &named_desc("m10")).unwrap()));
        assert!(!irreducible(theorem_b_decide(10, &named_desc("pgl2_9")).unwrap()));
        let sl = named_desc("sl2_8_3");
        assert!(sl.flags.two_transitive);
        assert!(!irreducible(theorem_b_decide(28, &sl).unwrap()));
        assert!(irreducible(theorem_b_decide(6, &SubgroupDescriptor::from_spec("intransitive:6:3", 6).unwrap()).unwrap()));
        assert!(!irreducible(theorem_b_decide(8, &SubgroupDescriptor::from_spec("An", 8).unwrap()).unwrap()));
        assert!(irreducible(theorem_b_decide(10, &SubgroupDescriptor::from_spec("An", 10).unwrap()).unwrap()));
    }

    #[test]
    fn basic_spin_against_meataxe() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        let b6 = beta(6).unwrap();
        for g in [named("s5_on_6").unwrap(), intransitive(6, 3).unwrap(), alternating(6), wreath(3, 2).unwrap()] {
            let desc = SubgroupDescriptor::from_group("g", g.clone());
            let o = theorem_b_decide(6, &desc).unwrap().with_ground_truth(ground_truth(&b6, 2, &g, &lib, &caps).unwrap());
            assert!(o.consistent(), "{o:?}");
        }
    }

    #[test]
    fn natural_module_in_wreath_products() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        let (ok, cert) = theorem_tnat_decide(&wreath(3, 2).unwrap(), &lib, &caps).unwrap();
        assert!(ok, "{cert:?}");
        assert_eq!(ground_truth(&alpha(6).unwrap(), 2, &wreath(3, 2).unwrap(), &lib, &caps).unwrap(), GroundTruth::AbsIrr);
        let (ok, cert) = theorem_tnat_decide(&intransitive(6, 3).unwrap(), &lib, &caps).unwrap();
        assert!(!ok);
        assert_eq!(cert, TNatCertificate::Intransitive);
        assert!(theorem_tnat_decide(&alternating(6), &lib, &caps).is_err());
    }

    #[test]
    fn survey_is_reproducible() {
        let lib = ModuleLibrary::default();
        let caps = Caps::default();
        let opts = SurveyOptions { families: vec!["An".into(), "wreath:4:2".into()], ..Default::default() };
        let a = survey(8, 2, &opts, &lib, &caps).unwrap();
        let b = survey(8, 2, &opts, &lib, &caps).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.inconsistencies(), 0);
        assert_eq!(a.errors(), 0);
        assert!(a.to_csv().lines().count() == a.cells.len() + 1);
    }
}
