//! Verification suites: each one sweeps a range of inputs and compares two
//! independent computations, or a computation against a stated structure.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use serde::Serialize;

use crate::branching::{
    content_minus, e_components, james_two_row_multiplicity, perm_module_signature, restriction_end_dim,
    PermModuleSignature,
};
use crate::classifier::{
    ground_truth, intransitive_predicts_irreducible, survey, theorem_b_decide, theorem_tnat_decide,
    wreath_predicts_irreducible, GroundTruth, SubgroupDescriptor, SurveyOptions, Verdict,
};
use crate::error::{Error, Result};
use crate::hom_tools::{eta, wilson_rank, x_element, x_nonzero};
use crate::linalg::Subspace;
use crate::partitions::{
    alpha, beta, content, e_tilde, enumerate_p_regular, epsilon, f_tilde, mullineux, normal_nodes, conormal_nodes,
    phi, Partition,
};
use crate::perm_groups::{alternating, named, symmetric, wreath, PermGroup, Permutation, NAMED_GROUPS};
use crate::reps::{
    composition_factors, is_isomorphic, quotient, subquotient, submodule, subset_module, Caps, ModuleLibrary, Rep,
};

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub criterion: u8,
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(criterion: u8, name: &str) -> Self {
        SuiteReport { criterion, name: name.to_string(), checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} criterion {:>2} {} ({} checks, {} failed)", self.criterion, self.name, self.checks, self.failures.len())
    }
}

/// Suite names accepted by [`run_suite`], in criterion order.
pub const SUITES: &[&str] = &[
    "crystal",
    "mullineux",
    "dimensions",
    "branching",
    "blocks",
    "wilson",
    "x-elements",
    "perm-modules",
    "invariants",
    "soundness",
    "tnat",
];

/// Wall-clock budget for each criterion.
pub fn time_limit(criterion: u8) -> Option<Duration> {
    let secs = match criterion {
        1 => 60,
        2 => 120,
        4 => 600,
        6 => 60,
        8 => 1200,
        10 => 3600,
        11 => 300,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

/// Optional overrides for a suite's sweep. `n` is an upper bound for the
/// sweeps and selects a single degree for `soundness`; `p` restricts the primes.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub p: Option<u32>,
}

impl SuiteParams {
    fn primes(&self, default: &[u32]) -> Vec<u32> {
        self.p.map_or_else(|| default.to_vec(), |p| vec![p])
    }

    fn max_n(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }
}

pub fn run_suite(name: &str, params: SuiteParams, lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    match name {
        "crystal" => Ok(crystal_laws(params.max_n(18), &params.primes(&[2, 3]))),
        "mullineux" => mullineux_suite(params.max_n(16), &params.primes(&[2, 3, 5]), params.max_n(7).min(7), lib, caps),
        "dimensions" => dimension_formulas(params.max_n(12), lib),
        "branching" => branching_law(params.max_n(9), &params.primes(&[2, 3]), 400, lib, caps),
        "blocks" => block_decomposition(params.max_n(9), &params.primes(&[2, 3]), 400, lib, caps),
        "wilson" => Ok(wilson_suite(params.max_n(14), &params.primes(&[2, 3]))),
        "x-elements" => x_elements(params.max_n(10), lib, caps),
        "perm-modules" => perm_modules(params.max_n(12), &params.primes(&[2, 3]), lib, caps),
        "invariants" => invariant_lemmas(params.max_n(9), lib, caps),
        "soundness" => {
            let cases: Vec<(u32, usize)> = SOUNDNESS_CASES
                .iter()
                .copied()
                .filter(|&(p, n)| params.p.is_none_or(|q| q == p) && params.n.is_none_or(|m| m == n))
                .collect();
            if cases.is_empty() {
                return Err(Error::Precondition("no soundness case matches the given n and p".into()));
            }
            soundness_sweep(&cases, lib, caps)
        }
        "tnat" => tnat_iff(lib, caps),
        _ => Err(Error::Parse(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn all_regular(max_n: usize, p: u32) -> impl Iterator<Item = Partition> {
    (1..=max_n).flat_map(move |n| enumerate_p_regular(n, p))
}

/// Criterion 1: conormal count, inverse laws of the crystal operators, and
/// the row description of normal and conormal nodes when `ε_0 + ε_1 = 2`, `p = 2`.
pub fn crystal_laws(max_n: usize, primes: &[u32]) -> SuiteReport {
    let mut r = SuiteReport::new(1, "crystal laws");
    let mut two_normal = 0usize;
    for &p in primes {
        for l in all_regular(max_n, p) {
            let eps: usize = (0..p).map(|i| epsilon(&l, i, p)).sum();
            let ph: usize = (0..p).map(|i| phi(&l, i, p)).sum();
            r.check(ph == eps + 1, || format!("p={p} {l}: sum phi = {ph}, sum eps = {eps}"));
            for i in 0..p {
                if let Some(m) = e_tilde(&l, i, p) {
                    r.check(phi(&m, i, p) > 0 && f_tilde(&m, i, p).as_ref() == Some(&l), || {
                        format!("p={p} {l}: f~{i} e~{i} is not the identity")
                    });
                }
                if let Some(m) = f_tilde(&l, i, p) {
                    r.check(epsilon(&m, i, p) > 0 && e_tilde(&m, i, p).as_ref() == Some(&l), || {
                        format!("p={p} {l}: e~{i} f~{i} is not the identity")
                    });
                }
            }
            if p == 2 && eps == 2 {
                two_normal += 1;
                check_two_normal_rows(&mut r, &l);
            }
        }
    }
    r.note(format!("{two_normal} partitions with exactly two normal nodes checked row by row"));
    r
}

fn check_two_normal_rows(r: &mut SuiteReport, l: &Partition) {
    let h = l.height();
    // residue of the removable node ending row k
    let a = |k: usize| (l.part(k) as i64 - k as i64).rem_euclid(2);
    let b: Vec<usize> = (2..=h).filter(|&k| a(k) == a(k - 1)).collect();
    let Some((&b1, &bt)) = b.first().zip(b.last()) else {
        r.check(false, || format!("{l}: two normal nodes but no repeated residue"));
        return;
    };
    let mut normal_rows: Vec<usize> = (0..2).flat_map(|i| normal_nodes(l, i, 2)).map(|x| x.row).collect();
    normal_rows.sort_unstable();
    r.check(normal_rows == vec![1, b1], || format!("{l}: normal rows {normal_rows:?}, expected [1, {b1}]"));
    let mut conormal_rows: Vec<usize> = (0..2).flat_map(|i| conormal_nodes(l, i, 2)).map(|x| x.row).collect();
    conormal_rows.sort_unstable();
    r.check(conormal_rows == vec![bt - 1, h, h + 1], || {
        format!("{l}: conormal rows {conormal_rows:?}, expected [{}, {h}, {}]", bt - 1, h + 1)
    });
    r.check(b.windows(2).all(|w| a(w[0]) != a(w[1])), || format!("{l}: residues at the repeats {b:?} do not alternate"));
}

/// Criterion 2: the Mullineux map is an involution with the known values, and
/// it matches the sign twist on modules.
pub fn mullineux_suite(
    max_n: usize,
    primes: &[u32],
    module_max_n: usize,
    lib: &ModuleLibrary,
    caps: &Caps,
) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(2, "Mullineux map");
    for &p in primes {
        for l in all_regular(max_n, p) {
            let m = mullineux(&l, p)?;
            r.check(m.size() == l.size() && m.is_p_regular(p), || format!("p={p} {l}: image {m} is not a regular partition of the same size"));
            let back = mullineux(&m, p)?;
            r.check(back == l, || format!("p={p} {l} -> {m} -> {back}"));
        }
    }
    for (from, to) in [(&[3, 2, 2][..], &[5, 1, 1][..]), (&[4, 1, 1], &[4, 1, 1])] {
        let got = mullineux(&Partition::from_parts(from), 3)?;
        r.check(got == Partition::from_parts(to), || format!("p=3 {from:?} -> {got}, expected {to:?}"));
    }
    for l in all_regular(module_max_n, 3) {
        let d = lib.irreducible(&l, 3)?;
        let twin = lib.irreducible(&mullineux(&l, 3)?, 3)?;
        r.check(is_isomorphic(&d.sign_twist(), &twin, caps)?, || format!("p=3 {l}: sign twist is not D of the Mullineux image"));
    }
    r.note(format!("sign twists compared for p=3, n <= {module_max_n}"));
    Ok(r)
}

/// Criterion 3: dimensions of the natural-module heart and the basic spin module.
pub fn dimension_formulas(max_n: usize, lib: &ModuleLibrary) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(3, "dimension formulas");
    for p in [2, 3] {
        for n in 4..=max_n.min(10) {
            let d = lib.irreducible(&alpha(n)?, p)?.dim();
            let want = n - 1 - usize::from(n % p as usize == 0);
            r.check(d == want, || format!("p={p} n={n}: dim D^alpha = {d}, expected {want}"));
        }
    }
    for n in 5..=max_n.min(12) {
        let d = lib.irreducible(&beta(n)?, 2)?.dim();
        let want = 1usize << ((n - 1) / 2);
        r.check(d == want, || format!("n={n}: dim D^beta = {d}, expected {want}"));
    }
    Ok(r)
}

fn small_regular(max_n: usize, p: u32, dim_limit: usize, lib: &ModuleLibrary) -> Result<Vec<(Partition, Arc<Rep>)>> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for l in enumerate_p_regular(n, p) {
            let d = lib.irreducible(&l, p)?;
            if d.dim() <= dim_limit {
                out.push((l, d));
            }
        }
    }
    Ok(out)
}

/// Criterion 4: `dim End(D^λ↓_{S_{n-1}}) = Σ ε_i(λ)`.
pub fn branching_law(max_n: usize, primes: &[u32], dim_limit: usize, lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(4, "restriction endomorphisms");
    for &p in primes {
        for (l, _) in small_regular(max_n, p, dim_limit, lib)? {
            let got = restriction_end_dim(&l, p, lib, caps)?;
            let want: usize = (0..p).map(|i| epsilon(&l, i, p)).sum();
            r.check(got == want, || format!("p={p} {l}: dim End = {got}, sum eps = {want}"));
        }
    }
    Ok(r)
}

/// Criterion 5: the residue components of the restriction exhaust it, vanish
/// exactly when `ε_i = 0`, and carry the content `cont(λ) - γ_i`.
pub fn block_decomposition(max_n: usize, primes: &[u32], dim_limit: usize, lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(5, "block decomposition of restrictions");
    for &p in primes {
        for (l, d) in small_regular(max_n, p, dim_limit, lib)? {
            let n = l.size();
            let blocks = e_components(&d)?;
            r.check(blocks.total_dim() == d.dim(), || format!("p={p} {l}: components sum to {} of {}", blocks.total_dim(), d.dim()));
            let labels = enumerate_p_regular(n - 1, p);
            for i in 0..p {
                let dim_i = blocks.component(i).map_or(0, |c| c.module.dim());
                r.check((dim_i > 0) == (epsilon(&l, i, p) > 0), || format!("p={p} {l}: e_{i} has dim {dim_i}, eps = {}", epsilon(&l, i, p)));
                let Some(c) = blocks.component(i).filter(|c| c.module.dim() > 0) else { continue };
                let want = content_minus(&l, i, p);
                for (mu, _) in composition_factors(&c.module, &labels, lib, caps)? {
                    r.check(Some(content(&mu, p)) == want, || format!("p={p} {l}: factor {mu} of e_{i} has the wrong content"));
                }
            }
        }
    }
    Ok(r)
}

/// Criterion 6: ranks of the incidence maps against the closed formula.
pub fn wilson_suite(max_n: usize, primes: &[u32]) -> SuiteReport {
    let mut r = SuiteReport::new(6, "incidence map ranks");
    for &p in primes {
        for n in 6..=max_n {
            for l in 0..=3 {
                for k in 0..=l {
                    let got = eta(k, l, n, p).map(|m| m.rank() as u128);
                    let want = wilson_rank(k, l, n, p);
                    r.check(matches!((&got, &want), (Ok(a), Ok(b)) if a == b), || {
                        format!("p={p} n={n} k={k} l={l}: rank {got:?}, formula {want:?}")
                    });
                }
            }
        }
    }
    r
}

/// `x_2 (ε_1 + ε_2)` inside the sum-zero submodule of the natural permutation
/// module of `S_5` over GF(2), in natural coordinates.
pub fn x2_on_natural_module(lib: &ModuleLibrary, caps: &Caps) -> Result<(Vec<u32>, bool)> {
    let m = subset_module(5, 2, 1)?;
    let spanning: Vec<Vec<u32>> = (0..4).map(|r| (0..5).map(|c| u32::from(c == r || c == r + 1)).collect()).collect();
    let u = Subspace::from_vectors(2, 5, &spanning);
    let is_d = is_isomorphic(&submodule(&m, &u)?, &*lib.irreducible(&Partition::from_parts(&[4, 1]), 2)?, caps)?;
    let x = x_element(2, 5, 2)?.act(&m)?;
    Ok((x.mat_vec(&spanning[0]), is_d))
}

/// `D^{(5,1)}` over GF(3) as `(ε_r - ε_{r+1})` modulo the all-ones vector.
fn natural_heart_six() -> Result<Rep> {
    let m = subset_module(6, 3, 1)?;
    let ones = Subspace::from_vectors(3, 6, &[vec![1; 6]]);
    let chosen: Vec<Vec<u32>> =
        (0..4).map(|r| (0..6).map(|c| if c == r { 1 } else if c == r + 1 { 2 } else { 0 }).collect()).collect();
    subquotient(&m, &ones, &chosen)
}

/// The images of `v_1, v_2` under the sixteen 3-cycles of `x_3`, as signed
/// coordinate vectors in `v_1..v_4`.
const THREE_CYCLE_TABLE: [([usize; 3], [i64; 4], [i64; 4]); 16] = [
    ([1, 2, 3], [0, 1, 0, 0], [-1, -1, 0, 0]),
    ([1, 3, 2], [-1, -1, 0, 0], [1, 0, 0, 0]),
    ([2, 3, 4], [1, 1, 0, 0], [0, 0, 1, 0]),
    ([2, 4, 3], [1, 1, 1, 0], [0, -1, -1, 0]),
    ([1, 3, 5], [0, -1, 0, 0], [0, 1, 1, 1]),
    ([1, 5, 3], [0, -1, -1, -1], [-1, 0, 0, 0]),
    ([1, 2, 6], [1, 0, 1, -1], [-1, 1, -1, 1]),
    ([1, 6, 2], [1, 0, -1, 1], [1, 1, 0, 0]),
    ([3, 4, 5], [1, 0, 0, 0], [0, 1, 1, 0]),
    ([3, 5, 4], [1, 0, 0, 0], [0, 1, 1, 1]),
    ([2, 4, 6], [1, 1, 1, 0], [0, 0, -1, 0]),
    ([2, 6, 4], [-1, 0, 1, -1], [-1, 1, -1, 1]),
    ([1, 5, 6], [0, -1, -1, -1], [0, 1, 0, 0]),
    ([1, 6, 5], [-1, 0, -1, 1], [0, 1, 0, 0]),
    ([4, 5, 6], [1, 0, 0, 0], [0, 1, 0, 0]),
    ([4, 6, 5], [1, 0, 0, 0], [0, 1, 0, 0]),
];

fn mod3(v: &[i64]) -> Vec<u32> {
    v.iter().map(|&x| x.rem_euclid(3) as u32).collect()
}

/// Criterion 7.
pub fn x_elements(max_n: usize, lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(7, "x-element computations");

    // x_2 on D^{(4,1)}, p = 2, spanned by ε_r + ε_{r+1}
    let (image, is_d) = x2_on_natural_module(lib, caps)?;
    r.check(is_d, || "span of e_r + e_(r+1) is not D^(4,1)".into());
    r.note(format!("x2 (e1 + e2) = {} in D^(4,1), p=2", natural_vector(&image)));
    r.check(image.iter().any(|&c| c != 0), || "x2 (e1 + e2) vanishes".into());
    let claimed = vec![0, 0, 1, 1, 0];
    r.check(image == claimed, || format!("x2 (e1 + e2) = {}, stated value e3 + e4", natural_vector(&image)));

    // x_3 on the exterior square of D^{(5,1)}, p = 3
    let v = natural_heart_six()?;
    r.check(is_isomorphic(&v, &*lib.irreducible(&Partition::from_parts(&[5, 1]), 3)?, caps)?, || {
        "the quotient basis v_r does not give D^(5,1)".into()
    });
    for (cyc, img1, img2) in THREE_CYCLE_TABLE {
        let g = v.eval(&Permutation::from_cycles(6, &[&cyc])?)?;
        let ok = g.column(0) == mod3(&img1) && g.column(1) == mod3(&img2);
        r.check(ok, || format!("{cyc:?} acts on v1, v2 as {:?}, {:?}", g.column(0), g.column(1)));
    }
    let w = v.exterior_square();
    r.check(is_isomorphic(&w, &*lib.irreducible(&Partition::from_parts(&[4, 1, 1]), 3)?, caps)?, || {
        "the exterior square of D^(5,1) is not D^(4,1,1)".into()
    });
    // wedge basis v_i ∧ v_j, i < j, in lexicographic order
    let x3 = x_element(3, 6, 3)?.act(&w)?;
    let got = x3.column(0);
    let want = vec![0, 0, 1, 0, 2, 0];
    r.note(format!("x3 (v1^v2) = {} in D^(4,1,1), p=3", wedge_vector(&got)));
    r.check(got == want, || format!("x3 (v1^v2) = {}, stated value v1^v4 - v2^v4", wedge_vector(&got)));

    // x_2 annihilates exactly the trivial and basic spin modules, p = 2
    for n in 5..=max_n.min(10) {
        for l in enumerate_p_regular(n, 2) {
            let zero = !x_nonzero(&l, 2, 2, lib)?;
            let expect = l == Partition::from_parts(&[n]) || l == beta(n)?;
            r.check(zero == expect, || format!("n={n} {l}: x2 D = 0 is {zero}, expected {expect}"));
        }
    }
    // x_3 never annihilates D^λ with three or more rows, p = 2
    for n in 6..=max_n.min(9) {
        for l in enumerate_p_regular(n, 2).into_iter().filter(|l| l.height() >= 3) {
            r.check(x_nonzero(&l, 3, 2, lib)?, || format!("n={n} {l}: x3 D = 0"));
        }
    }
    Ok(r)
}

fn natural_vector(v: &[u32]) -> String {
    let terms: Vec<String> = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| format!("e{}", i + 1)).collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn wedge_vector(v: &[u32]) -> String {
    let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let mut out = String::new();
    for (&(i, j), &c) in pairs.iter().zip(v) {
        let term = format!("v{i}^v{j}");
        match c {
            0 => continue,
            1 if out.is_empty() => out.push_str(&term),
            1 => out.push_str(&format!(" + {term}")),
            _ if out.is_empty() => out.push_str(&format!("-{term}")),
            _ => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() { "0".into() } else { out }
}

/// A direct sum of uniserial pieces, each listed from socle to head by the
/// index `j` of `D_j = D^{(n-j,j)}`.
struct Structure(&'static [&'static [usize]]);

impl Structure {
    fn factors(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for piece in self.0 {
            for &j in piece.iter() {
                *m.entry(j).or_insert(0) += 1;
            }
        }
        m
    }

    fn socle(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for piece in self.0 {
            *m.entry(piece[0]).or_insert(0) += 1;
        }
        m
    }

    fn head(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for piece in self.0 {
            *m.entry(piece[piece.len() - 1]).or_insert(0) += 1;
        }
        m
    }
}

/// What is known about `M_k`: an explicit structure, or lower bounds on
/// socle and head multiplicities, or an exact socle.
enum Known {
    Exact(Structure),
    AtLeast { socle: &'static [usize], head: &'static [usize] },
    ExactSocle(&'static [usize]),
}

fn known_structure(n: usize, p: u32, k: usize) -> Option<Known> {
    use Known::*;
    let s = |x| Some(Exact(Structure(x)));
    match (p, k) {
        (3, 1) if n % 3 == 0 && n >= 6 => s(&[&[0, 1, 0]]),
        (3, 2) if n % 3 == 0 && n >= 6 => s(&[&[2], &[0, 1, 0]]),
        (3, 3) if n % 3 == 0 && n >= 6 => Some(AtLeast { socle: &[2, 0, 1], head: &[2] }),
        (3, 1) if n % 3 == 1 && n >= 7 => s(&[&[0], &[1]]),
        (3, 2) if n % 3 == 1 && n >= 7 => s(&[&[1], &[0, 2, 0]]),
        (3, 3) if n % 3 == 1 && n >= 7 => Some(AtLeast { socle: &[1, 0, 2], head: &[1] }),
        (3, 1) if n % 3 == 2 && n >= 8 => s(&[&[0], &[1]]),
        (3, 2) if n % 3 == 2 && n >= 8 => s(&[&[0], &[1, 2, 1]]),
        (3, 3) if n % 9 == 2 && n >= 8 => s(&[&[0, 3, 0], &[1, 2, 1]]),
        (3, 3) if (n % 9 == 5 || n % 9 == 8) && n >= 8 => s(&[&[0], &[3], &[1, 2, 1]]),
        (2, 1) if n % 2 == 1 && n >= 7 => s(&[&[0], &[1]]),
        (2, 2) if n % 4 == 1 && n >= 7 => s(&[&[1], &[0, 2, 0]]),
        (2, 3) if n % 4 == 1 && n >= 7 => s(&[&[3], &[1], &[0, 2, 0]]),
        (2, 2) if n % 4 == 3 && n >= 7 => s(&[&[0], &[1], &[2]]),
        (2, 3) if n % 4 == 3 && n >= 7 => s(&[&[0], &[2], &[1, 3, 1]]),
        (2, 1) if n % 2 == 0 && n >= 6 => s(&[&[0, 1, 0]]),
        (2, 2) if n % 4 == 2 && n >= 6 => s(&[&[0], &[1, 0, 2, 0, 1]]),
        (2, 2) if n % 4 == 0 && n >= 6 => Some(AtLeast { socle: &[0, 1], head: &[0, 1] }),
        (2, 3) if n % 4 == 0 && n >= 8 => s(&[&[0, 1, 0], &[2, 1, 3, 1, 2]]),
        (2, 3) if n % 4 == 2 && n >= 8 => Some(ExactSocle(&[0])),
        _ => None,
    }
}

/// Factors of `M_k` from its Specht filtration and the two-row decomposition rule.
fn filtration_factors(n: usize, p: u32, k: usize) -> Result<BTreeMap<usize, usize>> {
    let mut m = BTreeMap::new();
    for kk in 0..=k {
        for (j, c) in specht_factors_by_rule(n, p, kk)? {
            *m.entry(j).or_insert(0) += c;
        }
    }
    Ok(m)
}

fn specht_factors_by_rule(n: usize, p: u32, k: usize) -> Result<BTreeMap<usize, usize>> {
    let mut m = BTreeMap::new();
    for j in 0..=k {
        if !Partition::from_parts(&[n - j, j]).is_p_regular(p) {
            continue;
        }
        let c = james_two_row_multiplicity(n, k, j, p)? as usize;
        if c > 0 {
            m.insert(j, c);
        }
    }
    Ok(m)
}

fn signature_maps(sig: &PermModuleSignature) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let index = |label: &str| label.trim_start_matches('D').parse::<usize>().expect("labels are D<j>");
    let factors = sig.factors.iter().map(|(l, c)| (index(l), *c)).collect();
    let nonzero = |m: &BTreeMap<String, usize>| m.iter().filter(|(_, &c)| c > 0).map(|(l, &c)| (index(l), c)).collect();
    (factors, nonzero(&sig.hom_in), nonzero(&sig.hom_out))
}

fn at_least(have: &BTreeMap<usize, usize>, want: &[usize]) -> bool {
    let mut need: BTreeMap<usize, usize> = BTreeMap::new();
    for &j in want {
        *need.entry(j).or_insert(0) += 1;
    }
    need.iter().all(|(j, c)| have.get(j).copied().unwrap_or(0) >= *c)
}

/// Criterion 8: composition factors and socle/head signatures of `M_1, M_2, M_3`,
/// and the two-row decomposition rule against factored Specht modules.
pub fn perm_modules(max_n: usize, primes: &[u32], lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(8, "permutation module structure");
    let mut structural = 0usize;
    for &p in primes {
        for n in 6..=max_n {
            for k in 1..=3 {
                let sig = perm_module_signature(n, p, k, lib, caps)?;
                let (factors, soc, head) = signature_maps(&sig);
                let tag = format!("p={p} n={n} M{k}");
                let filtered = filtration_factors(n, p, k)?;
                r.check(factors == filtered, || format!("{tag}: factors {factors:?}, filtration gives {filtered:?}"));
                r.check(soc == head, || format!("{tag}: socle {soc:?} differs from head {head:?}"));
                r.check(sig.invariants_dim == 1 && soc.get(&0) == Some(&1), || format!("{tag}: invariants {}", sig.invariants_dim));
                match known_structure(n, p, k) {
                    Some(Known::Exact(s)) => {
                        structural += 1;
                        r.check(factors == s.factors(), || format!("{tag}: factors {factors:?}, structure gives {:?}", s.factors()));
                        r.check(soc == s.socle(), || format!("{tag}: socle {soc:?}, structure gives {:?}", s.socle()));
                        r.check(head == s.head(), || format!("{tag}: head {head:?}, structure gives {:?}", s.head()));
                    }
                    Some(Known::AtLeast { socle, head: top }) => {
                        structural += 1;
                        r.check(at_least(&soc, socle), || format!("{tag}: socle {soc:?} misses {socle:?}"));
                        r.check(at_least(&head, top), || format!("{tag}: head {head:?} misses {top:?}"));
                    }
                    Some(Known::ExactSocle(want)) => {
                        structural += 1;
                        let want: BTreeMap<usize, usize> = want.iter().map(|&j| (j, 1)).collect();
                        r.check(soc == want, || format!("{tag}: socle {soc:?}, expected {want:?}"));
                    }
                    None => {}
                }
            }
            for k in 1..=3.min(n / 2) {
                let labels: Vec<Partition> = (0..=k)
                    .map(|j| Partition::from_parts(&[n - j, j]))
                    .filter(|mu| mu.is_p_regular(p))
                    .collect();
                let s = lib.specht(&Partition::from_parts(&[n - k, k]), p)?;
                let brute: BTreeMap<usize, usize> =
                    composition_factors(&s, &labels, lib, caps)?.into_iter().map(|(mu, c)| (mu.part(2), c)).collect();
                let rule = specht_factors_by_rule(n, p, k)?;
                r.check(brute == rule, || format!("p={p} n={n} S{k}: factors {brute:?}, rule gives {rule:?}"));
            }
        }
    }
    r.note(format!("{structural} modules compared with an explicit structure"));
    Ok(r)
}

/// `S_1^* = M_1 / ⟨Σ ε_i⟩`.
fn dual_natural_specht(n: usize, p: u32) -> Result<Rep> {
    let m = subset_module(n, p, 1)?;
    quotient(&m, &Subspace::from_vectors(p, n, &[vec![1; n]]))
}

fn cyclic(n: usize) -> Result<PermGroup> {
    let cycle: Vec<usize> = (1..=n).collect();
    PermGroup::new(n, vec![Permutation::from_cycles(n, &[&cycle])?])
}

fn dihedral(n: usize) -> Result<PermGroup> {
    let cycle: Vec<usize> = (1..=n).collect();
    let pairs: Vec<Vec<usize>> = (2..=n).zip((2..=n).rev()).filter(|(a, b)| a < b).map(|(a, b)| vec![a, b]).collect();
    let refl: Vec<&[usize]> = pairs.iter().map(|v| v.as_slice()).collect();
    PermGroup::new(n, vec![Permutation::from_cycles(n, &[&cycle])?, Permutation::from_cycles(n, &refl)?])
}

/// Sampled transitive subgroups of `S_n`.
fn transitive_samples(n: usize) -> Result<Vec<(String, PermGroup)>> {
    let mut out = vec![
        ("Sn".to_string(), symmetric(n)),
        ("An".to_string(), alternating(n)),
        ("cyclic".to_string(), cyclic(n)?),
        ("dihedral".to_string(), dihedral(n)?),
    ];
    for a in 2..n {
        if n % a == 0 {
            out.push((format!("wreath:{a}:{}", n / a), wreath(a, n / a)?));
        }
    }
    for &(name, degree, _) in NAMED_GROUPS {
        if degree == n && n <= 10 {
            out.push((format!("named:{name}"), named(name)?));
        }
    }
    if n == 6 {
        let w = wreath(3, 2)?;
        for (i, g) in w.all_subgroups().into_iter().filter(|g| g.is_transitive()).enumerate() {
            out.push((format!("transitive subgroup {i} of wreath:3:2"), g));
        }
    }
    Ok(out)
}

/// Criterion 9: invariants of `S_1^*` under wreath products and transitive groups.
pub fn invariant_lemmas(max_n: usize, _lib: &ModuleLibrary, _caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(9, "invariants of the dual natural Specht module");
    for p in [2, 3] {
        for (a, b) in [(3, 2), (2, 3), (5, 2), (3, 3), (2, 5)] {
            let n = a * b;
            let s = dual_natural_specht(n, p)?;
            let dim = s.restrict(&wreath(a, b)?)?.fixed_points().dim();
            let want = usize::from(p == 2 && b == 2);
            r.check(dim == want, || format!("p={p} S_{a} wr S_{b}: invariants of dim {dim}, expected {want}"));
        }
    }
    let mut sampled = 0usize;
    for n in 3..=max_n {
        let groups = transitive_samples(n)?;
        for p in [2u32, 3, 5, 7] {
            if n % p as usize == 0 {
                continue;
            }
            let s = dual_natural_specht(n, p)?;
            for (label, g) in &groups {
                sampled += 1;
                let dim = s.restrict(g)?.fixed_points().dim();
                r.check(dim == 0, || format!("p={p} n={n} {label}: invariants of dim {dim}"));
            }
        }
    }
    r.note(format!("{sampled} transitive group and prime pairs with p not dividing n"));
    Ok(r)
}

/// The `(p, n)` pairs of the soundness sweep.
pub const SOUNDNESS_CASES: &[(u32, usize)] = &[(2, 8), (2, 10), (3, 8), (3, 9)];

/// Criterion 10: reduction theorem soundness, the Young and wreath iffs, and
/// the basic spin verdicts on the standard families.
pub fn soundness_sweep(cases: &[(u32, usize)], lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(10, "classification soundness");
    for &(p, n) in cases {
        let report = survey(n, p, &SurveyOptions::default(), lib, caps)?;
        let tag = format!("p={p} n={n}");
        let mut abs_irr = 0usize;
        for cell in &report.cells {
            let where_ = || format!("{tag} {} {}", cell.lambda, cell.group);
            r.check(cell.error.is_none(), || format!("{}: {}", where_(), cell.error.as_deref().unwrap_or("")));
            r.check(cell.consistent, || format!("{}: absolutely irreducible outside every case", where_()));
            let Some(gt) = &cell.ground_truth else { continue };
            let irr = *gt == GroundTruth::AbsIrr;
            abs_irr += usize::from(irr);
            let lambda = Partition::from_str(&cell.lambda)?;
            let fields: Vec<&str> = cell.group.split(':').collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("group spec {}", cell.group)));
            let predicted = match fields.as_slice() {
                ["intransitive", _, k] => Some(intransitive_predicts_irreducible(&lambda, p, num(k)?)?),
                ["wreath", a, b] => Some(wreath_predicts_irreducible(&lambda, p, num(a)?, num(b)?)?),
                _ => None,
            };
            if let Some(pred) = predicted {
                r.check(pred == irr, || format!("{}: predicted {pred}, ground truth {gt}", where_()));
                if p == 2 && lambda == beta(n)? {
                    let desc = SubgroupDescriptor::from_spec(&cell.group, n)?;
                    let verdict = theorem_b_decide(n, &desc)?.verdict;
                    let says_irr = matches!(verdict, Verdict::Irreducible { .. });
                    r.check(says_irr == irr, || format!("{}: basic spin verdict {verdict:?}, ground truth {gt}", where_()));
                }
            }
        }
        r.note(format!("{tag}: {} cells, {abs_irr} absolutely irreducible", report.cells.len()));
    }
    Ok(r)
}

/// Criterion 11: the natural-module criterion against the MeatAxe for every
/// subgroup of `S_3 ≀ S_2`.
pub fn tnat_iff(lib: &ModuleLibrary, caps: &Caps) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(11, "natural module criterion at n=6");
    let subgroups = wreath(3, 2)?.all_subgroups();
    let a6 = alpha(6)?;
    let mut irreducible = 0usize;
    for g in &subgroups {
        let (decided, cert) = theorem_tnat_decide(g, lib, caps)?;
        let gt = ground_truth(&a6, 2, g, lib, caps)?;
        irreducible += usize::from(decided);
        r.check(decided == (gt == GroundTruth::AbsIrr), || {
            format!("subgroup of order {}: criterion {decided} ({cert:?}), ground truth {gt}", g.order())
        });
    }
    r.note(format!("{} subgroups, {irreducible} with an irreducible restriction", subgroups.len()));
    Ok(r)
}

/// All suites at the acceptance ranges, in criterion order.
pub fn run_all(lib: &ModuleLibrary, caps: &Caps) -> Vec<(String, Result<SuiteReport>)> {
    SUITES.iter().map(|&s| (s.to_string(), run_suite(s, SuiteParams::default(), lib, caps))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_and_natural_formatting() {
        assert_eq!(wedge_vector(&[0, 0, 1, 0, 2, 0]), "v1^v4 - v2^v4");
        assert_eq!(natural_vector(&[1, 1, 1, 1, 0]), "e1 + e2 + e3 + e4");
        assert_eq!(natural_vector(&[0; 5]), "0");
    }

    #[test]
    fn known_structures_agree_with_filtrations() {
        // every explicit structure has the factor multiset of the Specht filtration
        for p in [2, 3] {
            for n in 6..=40 {
                for k in 1..=3 {
                    if let Some(Known::Exact(s)) = known_structure(n, p, k) {
                        assert_eq!(s.factors(), filtration_factors(n, p, k).unwrap(), "p={p} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let lib = ModuleLibrary::new(None);
        let caps = Caps::default();
        assert!(crystal_laws(10, &[2, 3]).passed());
        assert!(wilson_suite(8, &[2, 3]).passed());
        assert!(branching_law(6, &[2, 3], 400, &lib, &caps).unwrap().passed());
        assert!(block_decomposition(6, &[2], 400, &lib, &caps).unwrap().passed());
    }

    #[test]
    fn unknown_suite_is_a_parse_error() {
        let lib = ModuleLibrary::new(None);
        assert!(matches!(run_suite("bogus", SuiteParams::default(), &lib, &Caps::default()), Err(Error::Parse(_))));
    }
}
