//! Centralizer certificates for the loxodromic elements
//! `g_i = (φ_i t_i)(ψ_i s_i)` of the segment G_i ∗_{K_i} G_{i+1}.
//!
//! For each level the pipeline builds the witnesses, checks their supports
//! and memberships, classifies `g_i` on the Bass-Serre tree, and certifies
//! that Sym([-i+3, i]) centralizes `g_i` along two independent routes:
//! the support-disjointness conditions, and equality of `p·g_i` and
//! `g_i·p` decided by the amalgam word engine. The Landau function turns
//! the certified subgroup into a lower bound on the index of any cyclic
//! subgroup of the centralizer.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgam::{Side, Syllable, Word};
use crate::charmap::{z, VMap};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::perm::{random_h_i, random_window_permutation, ShiftedPermutation};
use crate::semidirect::GElement;
use crate::tree::{classify, Classification};

/// The elements φ_i, t_i, ψ_i, s_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub i: u32,
    pub phi: VMap,
    pub t: ShiftedPermutation,
    pub psi: VMap,
    pub s: ShiftedPermutation,
}

/// A named boolean outcome, tagged with the operation that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub operation: &'static str,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, operation: &'static str, passed: bool) -> Self {
        Check {
            name: name.into(),
            operation,
            passed,
        }
    }
}

fn set(points: &[i64]) -> BTreeSet<i64> {
    points.iter().copied().collect()
}

/// The witness elements at any level `i >= 1`. Only from `i = 2` on does the
/// centralizer window `[-i+3, i]` hold two or more points; the loxodromic
/// word itself makes sense from `i = 1`.
pub fn witness_elements(i: u32) -> Result<WitnessSet> {
    if i == 0 {
        return Err(Error::WindowEmpty { i });
    }
    let n = i as i64;
    Ok(WitnessSet {
        i,
        phi: VMap::from_support([-n + 1, -n + 2]),
        t: ShiftedPermutation::transposition(-n, -n + 1),
        psi: VMap::from_support([-n, -n + 1]),
        s: ShiftedPermutation::transposition(-n - 1, -n),
    })
}

pub fn witnesses(i: u32) -> Result<WitnessSet> {
    if i < 2 {
        return Err(Error::WindowEmpty { i });
    }
    let w = witness_elements(i)?;
    if let Some(failed) = w.checks().into_iter().find(|c| !c.passed) {
        return Err(Error::InvalidElement {
            level: i,
            reason: format!("witness check failed: {}", failed.name),
        });
    }
    Ok(w)
}

impl WitnessSet {
    /// `φ_i t_i` in G_i.
    pub fn phi_t(&self) -> Result<GElement> {
        GElement::new(self.i, self.phi.clone(), self.t.clone())
    }

    /// `ψ_i s_i` in G_{i+1}.
    pub fn psi_s(&self) -> Result<GElement> {
        GElement::new(self.i + 1, self.psi.clone(), self.s.clone())
    }

    /// `g_i = [A: φ_i t_i ; B: ψ_i s_i]`.
    pub fn word(&self) -> Result<Word> {
        Word::new(
            self.i,
            vec![
                Syllable {
                    side: Side::A,
                    element: self.phi_t()?,
                },
                Syllable {
                    side: Side::B,
                    element: self.psi_s()?,
                },
            ],
        )
    }

    /// Support table, memberships and `^{t_i}ψ_i = ψ_i`.
    pub fn checks(&self) -> Vec<Check> {
        let i = self.i;
        let n = i as i64;
        let zi = z(i);
        let perm_support = |h: &ShiftedPermutation| h.support().unwrap_or_default();
        let not_in_k = |g: Result<GElement>| {
            g.and_then(|g| g.in_k(i))
                .map(|inside| !inside)
                .unwrap_or(false)
        };
        vec![
            Check::new(
                "supp(phi) = {-i+1, -i+2}",
                "support",
                self.phi.support_set() == set(&[-n + 1, -n + 2]),
            ),
            Check::new(
                "supp(t) = {-i, -i+1}",
                "support",
                perm_support(&self.t) == set(&[-n, -n + 1]),
            ),
            Check::new(
                "supp(psi) = {-i, -i+1}",
                "support",
                self.psi.support_set() == set(&[-n, -n + 1]),
            ),
            Check::new(
                "supp(s) = {-i-1, -i}",
                "support",
                perm_support(&self.s) == set(&[-n - 1, -n]),
            ),
            Check::new(
                "phi in V_i minus <z_i>",
                "in_V_i",
                self.phi.in_v_i(i) && !self.phi.is_trivial() && self.phi != zi,
            ),
            Check::new(
                "psi in V_{i+1} minus <z_i>",
                "in_V_i",
                self.psi.in_v_i(i + 1) && !self.psi.is_trivial() && self.psi != zi,
            ),
            Check::new("t in H_i", "in_H_i", self.t.in_h_i(i)),
            Check::new("s in H_{i+1}", "in_H_i", self.s.in_h_i(i + 1)),
            Check::new("^t psi = psi", "conj", self.psi.conj(&self.t) == self.psi),
            Check::new("phi t not in K_i", "in_K", not_in_k(self.phi_t())),
            Check::new("psi s not in K_i", "in_K", not_in_k(self.psi_s())),
        ]
    }
}

/// `g_i` for `i >= 2`.
pub fn loxodromic_witness(i: u32) -> Result<Word> {
    witnesses(i)?.word()
}

fn require_h_i(p: &ShiftedPermutation, i: u32) -> Result<()> {
    if p.in_h_i(i) {
        Ok(())
    } else {
        Err(Error::NotInH { i })
    }
}

/// Sufficient conditions for `p` to centralize `g_i`: its support misses
/// supp(φ_i), supp(^{t_i}ψ_i) and supp(t_i s_i).
pub fn support_conditions(p: &ShiftedPermutation, i: u32) -> Result<bool> {
    require_h_i(p, i)?;
    let w = witnesses(i)?;
    let sp = p.support()?;
    let blocked: [BTreeSet<i64>; 3] = [
        w.phi.support_set(),
        w.psi.conj(&w.t).support_set(),
        w.t.compose(&w.s).support()?,
    ];
    Ok(blocked.iter().all(|b| sp.is_disjoint(b)))
}

fn embed(p: &ShiftedPermutation, i: u32) -> Result<Word> {
    Word::single(i, GElement::new(i, VMap::trivial(), p.clone())?)
}

/// `p·g_i = g_i·p` in the amalgam, decided by word reduction.
pub fn commutes(p: &ShiftedPermutation, i: u32) -> Result<bool> {
    require_h_i(p, i)?;
    let g = loxodromic_witness(i)?;
    let pw = embed(p, i)?;
    pw.wmul(&g)?.equals(&g.wmul(&pw)?)
}

/// Outcome of rebuilding both sides of the hand simplification of
/// `p·g_i` and `g_i·p` as explicit two-syllable words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replay {
    /// `(^p φ)·(^{p t} ψ · p t s)` equals `p·g_i`.
    pub left: bool,
    /// `φ·(^t ψ · t s p)` equals `g_i·p`.
    pub right: bool,
}

pub fn simplification_replay(p: &ShiftedPermutation, i: u32) -> Result<Replay> {
    require_h_i(p, i)?;
    let w = witnesses(i)?;
    let g = w.word()?;
    let pw = embed(p, i)?;
    let pt = p.compose(&w.t);
    let two = |a: GElement, b: GElement| {
        Word::new(
            i,
            vec![
                Syllable {
                    side: Side::A,
                    element: a,
                },
                Syllable {
                    side: Side::B,
                    element: b,
                },
            ],
        )
    };
    let left = two(
        GElement::new(i, w.phi.conj(p), ShiftedPermutation::identity())?,
        GElement::new(i + 1, w.psi.conj(&pt), pt.compose(&w.s))?,
    )?;
    let right = two(
        GElement::new(i, w.phi.clone(), ShiftedPermutation::identity())?,
        GElement::new(i + 1, w.psi.conj(&w.t), w.t.compose(&w.s).compose(p))?,
    )?;
    Ok(Replay {
        left: left.equals(&pw.wmul(&g)?)?,
        right: right.equals(&g.wmul(&pw)?)?,
    })
}

/// The separate identities behind the centralizing conditions: `^p φ = φ`
/// in V_i, `^{p t} ψ = ^t ψ` in V_{i+1}, and `p (t s) = (t s) p` as
/// permutations of ℤ.
pub fn component_identities(p: &ShiftedPermutation, i: u32) -> Result<[bool; 3]> {
    require_h_i(p, i)?;
    let w = witnesses(i)?;
    let ts = w.t.compose(&w.s);
    Ok([
        w.phi.conj(p) == w.phi,
        w.psi.conj(&p.compose(&w.t)) == w.psi.conj(&w.t),
        p.compose(&ts) == ts.compose(p),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub generator: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerCertificate {
    pub window: (i64, i64),
    pub order: BigUint,
    pub generators: Vec<GeneratorRecord>,
    pub all_generators_commute: bool,
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Sym([-i+3, i]) inside the centralizer of `g_i`, certified on its adjacent
/// transpositions.
pub fn centralizer_subgroup_certificate(i: u32) -> Result<CentralizerCertificate> {
    centralizer_subgroup_certificate_with(i, Exec::Sequential)
}

pub fn centralizer_subgroup_certificate_with(i: u32, exec: Exec) -> Result<CentralizerCertificate> {
    witnesses(i)?;
    let (lo, hi) = (3 - i as i64, i as i64);
    let gens: Vec<ShiftedPermutation> = (lo..hi)
        .map(|j| ShiftedPermutation::transposition(j, j + 1))
        .collect();
    let records = par::map(exec, &gens, |p| -> Result<GeneratorRecord> {
        Ok(GeneratorRecord {
            generator: p.to_string(),
            checks: vec![
                Check::new(
                    "support conditions hold",
                    "support_conditions",
                    support_conditions(p, i)?,
                ),
                Check::new("p g = g p", "commutes", commutes(p, i)?),
            ],
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let all = records.iter().all(|r| r.checks.iter().all(|c| c.passed));
    Ok(CentralizerCertificate {
        window: (lo, hi),
        order: factorial((hi - lo + 1) as u32),
        generators: records,
        all_generators_commute: all,
    })
}

/// Largest element order in Sym(m): the maximum lcm over partitions of `m`.
pub fn landau(m: u32) -> Result<u64> {
    landau_capped(m, Limits::default().landau_cap)
}

pub fn landau_capped(m: u32, cap: u32) -> Result<u64> {
    if m > cap {
        return Err(Error::LandauCap { m, cap });
    }
    // Parts are chosen in non-increasing order so each partition is visited
    // once.
    fn search(remaining: u32, max_part: u32, lcm: u64, best: &mut u64) {
        if remaining == 0 {
            *best = (*best).max(lcm);
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            search(
                remaining - part,
                part,
                num_integer::lcm(lcm, part as u64),
                best,
            );
        }
    }
    let mut best = 1;
    search(m, m, 1, &mut best);
    Ok(best)
}

/// `(2i-2)! / landau(2i-2)`.
pub fn index_lower_bound(i: u32) -> Result<BigRational> {
    index_lower_bound_capped(i, Limits::default().landau_cap)
}

pub fn index_lower_bound_capped(i: u32, landau_cap: u32) -> Result<BigRational> {
    if i < 3 {
        return Err(Error::LevelOutOfRange {
            i,
            reason: "index bound needs i >= 3".into(),
        });
    }
    let m = 2 * i - 2;
    let g = landau_capped(m, landau_cap)?;
    Ok(BigRational::new(
        factorial(m).into(),
        BigUint::from(g).into(),
    ))
}

fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessText {
    pub phi: String,
    pub t: String,
    pub psi: String,
    pub s: String,
    pub g: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub operation: &'static str,
    pub kind: &'static str,
    pub translation_length: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledRecord {
    pub operation: &'static str,
    pub samples: u32,
    pub support_conditions_true: u32,
    pub commutes_true: u32,
    pub counterexamples: u32,
    pub replay_failures: u32,
    pub component_failures: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub witnesses_us: u64,
    pub certificate_us: u64,
    pub sampled_us: u64,
    pub total_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub i: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub witness: Option<WitnessText>,
    pub checks: Vec<Check>,
    pub classification: Option<ClassificationRecord>,
    pub window: Option<[i64; 2]>,
    pub generators: Vec<GeneratorRecord>,
    pub subgroup_order: Option<String>,
    pub landau: Option<String>,
    pub index_lower_bound: Option<String>,
    pub sampled: Option<SampledRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub i_min: u32,
    pub i_max: u32,
    pub seed: u64,
    pub samples_per_level: u32,
    pub levels: Vec<LevelRecord>,
    pub index_bound_monotone: Check,
    pub verdict: Status,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mark = |b: bool| if b { "ok" } else { "FAILED" };
        for l in &self.levels {
            let _ = writeln!(
                out,
                "level {}: {}",
                l.i,
                if l.status == Status::Pass {
                    "PASS"
                } else {
                    "FAIL"
                }
            );
            if let Some(e) = &l.error {
                let _ = writeln!(out, "  error: {e}");
            }
            if let Some(w) = &l.witness {
                let _ = writeln!(out, "  g = {}", w.g);
            }
            for c in &l.checks {
                let _ = writeln!(out, "  [{}] {} ({})", mark(c.passed), c.name, c.operation);
            }
            if let Some(c) = &l.classification {
                match c.translation_length {
                    Some(n) => {
                        let _ = writeln!(out, "  classify: {} {n}", c.kind);
                    }
                    None => {
                        let _ = writeln!(out, "  classify: {}", c.kind);
                    }
                }
            }
            for g in &l.generators {
                let verdicts: Vec<String> = g
                    .checks
                    .iter()
                    .map(|c| format!("{}={}", c.operation, mark(c.passed)))
                    .collect();
                let _ = writeln!(out, "  generator {}: {}", g.generator, verdicts.join(" "));
            }
            if let (Some(w), Some(o)) = (&l.window, &l.subgroup_order) {
                let _ = writeln!(
                    out,
                    "  Sym([{}, {}]) of order {o} centralizes g",
                    w[0], w[1]
                );
            }
            if let Some(g) = &l.landau {
                let _ = writeln!(out, "  landau = {g}");
            }
            if let Some(b) = &l.index_lower_bound {
                let _ = writeln!(out, "  cyclic index lower bound = {b}");
            }
            if let Some(s) = &l.sampled {
                let _ = writeln!(
                    out,
                    "  sampled {}: {} samples, {} counterexamples, {} replay failures, {} component failures",
                    s.operation, s.samples, s.counterexamples, s.replay_failures, s.component_failures
                );
            }
            if let Some(t) = &l.timings {
                let _ = writeln!(out, "  time: {} us", t.total_us);
            }
        }
        let _ = writeln!(
            out,
            "index bound strictly increasing: {}",
            mark(self.index_bound_monotone.passed)
        );
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub i_min: u32,
    pub i_max: u32,
    pub seed: u64,
    pub limits: Limits,
    pub exec: Exec,
    /// Include wall-clock timings; these make output run-dependent.
    pub timings: bool,
}

impl RunOptions {
    pub fn new(i_min: u32, i_max: u32) -> Self {
        RunOptions {
            i_min,
            i_max,
            seed: 0,
            limits: Limits::default(),
            exec: Exec::default(),
            timings: false,
        }
    }
}

pub fn run(i_min: u32, i_max: u32) -> Result<Report> {
    run_with(&RunOptions::new(i_min, i_max))
}

pub fn run_with(opts: &RunOptions) -> Result<Report> {
    if opts.i_min > opts.i_max {
        return Err(Error::EmptyRange {
            i_min: opts.i_min,
            i_max: opts.i_max,
        });
    }
    if opts.i_min < 2 {
        return Err(Error::LevelOutOfRange {
            i: opts.i_min,
            reason: "levels start at 2".into(),
        });
    }
    if opts.i_max > opts.limits.run_max_level {
        return Err(Error::LevelOutOfRange {
            i: opts.i_max,
            reason: format!("above run cap {}", opts.limits.run_max_level),
        });
    }
    let levels: Vec<u32> = (opts.i_min..=opts.i_max).collect();
    let records = par::map(opts.exec, &levels, |&i| match certify_level(i, opts) {
        Ok(r) => r,
        Err(e) => failed_level(i, e),
    });

    let bounds: Vec<BigRational> = records
        .iter()
        .filter_map(|r| r.index_lower_bound.as_ref())
        .filter_map(|b| parse_rational(b))
        .collect();
    let expected_bounds = levels.iter().filter(|&&i| i >= 3).count();
    let monotone = bounds.len() == expected_bounds && bounds.windows(2).all(|w| w[0] < w[1]);
    let verdict = Status::from_bool(monotone && records.iter().all(|r| r.status == Status::Pass));
    Ok(Report {
        schema: "dunwoody-centralizer-report/1",
        i_min: opts.i_min,
        i_max: opts.i_max,
        seed: opts.seed,
        samples_per_level: opts.limits.samples_per_level,
        levels: records,
        index_bound_monotone: Check::new(
            "index_lower_bound strictly increasing over levels >= 3",
            "index_lower_bound",
            monotone,
        ),
        verdict,
    })
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => s
            .parse::<BigUint>()
            .ok()
            .map(|n| BigRational::from_integer(n.into())),
        Some((n, d)) => Some(BigRational::new(
            n.parse::<BigUint>().ok()?.into(),
            d.parse::<BigUint>().ok()?.into(),
        )),
    }
}

fn failed_level(i: u32, e: Error) -> LevelRecord {
    LevelRecord {
        i,
        status: Status::Fail,
        error: Some(e.to_string()),
        witness: None,
        checks: Vec::new(),
        classification: None,
        window: None,
        generators: Vec::new(),
        subgroup_order: None,
        landau: None,
        index_lower_bound: None,
        sampled: None,
        timings: None,
    }
}

/// A random element of H_i: uniform, uniform on the centralizer window, or
/// uniform on a random sub-interval, in equal proportion.
pub fn sample_h_i<R: Rng + ?Sized>(rng: &mut R, i: u32) -> ShiftedPermutation {
    let n = i as i64;
    match rng.random_range(0..3) {
        0 => random_h_i(rng, i),
        1 => random_window_permutation(rng, (3 - n).min(n), n),
        _ => {
            let lo = rng.random_range(-n..=n);
            let hi = rng.random_range(lo..=n);
            random_window_permutation(rng, lo, hi)
        }
    }
}

fn level_rng(seed: u64, i: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(i))
}

fn sampled_checks(i: u32, n: u32, seed: u64) -> Result<SampledRecord> {
    let mut rng = level_rng(seed, i);
    let mut rec = SampledRecord {
        operation: "support_conditions => commutes",
        samples: n,
        support_conditions_true: 0,
        commutes_true: 0,
        counterexamples: 0,
        replay_failures: 0,
        component_failures: 0,
    };
    for _ in 0..n {
        let p = sample_h_i(&mut rng, i);
        let sc = support_conditions(&p, i)?;
        let cm = commutes(&p, i)?;
        rec.support_conditions_true += sc as u32;
        rec.commutes_true += cm as u32;
        if sc && !cm {
            rec.counterexamples += 1;
        }
        let replay = simplification_replay(&p, i)?;
        if !(replay.left && replay.right) {
            rec.replay_failures += 1;
        }
        if sc && !component_identities(&p, i)?.iter().all(|&b| b) {
            rec.component_failures += 1;
        }
    }
    Ok(rec)
}

fn certify_level(i: u32, opts: &RunOptions) -> Result<LevelRecord> {
    let start = Instant::now();
    let w = witnesses(i)?;
    let g = w.word()?;
    let mut checks = w.checks();
    checks.push(Check::new(
        "g is reduced of length 2",
        "reduce",
        g.reduce() == g && g.len() == 2,
    ));
    checks.push(Check::new(
        "g is not the identity",
        "is_identity",
        !g.is_identity(),
    ));
    let class = classify(&g);
    checks.push(Check::new(
        "g is loxodromic with translation length 2",
        "classify",
        class
            == Classification::Loxodromic {
                translation_length: 2,
            },
    ));
    let witness_time = start.elapsed();

    let cert = centralizer_subgroup_certificate(i)?;
    checks.push(Check::new(
        "every window generator commutes with g",
        "centralizer_subgroup_certificate",
        cert.all_generators_commute,
    ));
    let expected_order = factorial(2 * i - 2);
    checks.push(Check::new(
        "subgroup order is (2i-2)!",
        "centralizer_subgroup_certificate",
        cert.order == expected_order,
    ));
    let certificate_time = start.elapsed();

    let m = 2 * i - 2;
    let landau_value = landau_capped(m, opts.limits.landau_cap)?;
    let bound = if i >= 3 {
        Some(rational_string(&index_lower_bound_capped(
            i,
            opts.limits.landau_cap,
        )?))
    } else {
        None
    };

    let sampled = sampled_checks(i, opts.limits.samples_per_level, opts.seed)?;
    checks.push(Check::new(
        "sampled: support conditions imply commutation",
        "commutes",
        sampled.counterexamples == 0,
    ));
    checks.push(Check::new(
        "sampled: hand simplification replays",
        "simplification_replay",
        sampled.replay_failures == 0,
    ));
    checks.push(Check::new(
        "sampled: component identities under support conditions",
        "component_identities",
        sampled.component_failures == 0,
    ));
    let total = start.elapsed();

    let status = Status::from_bool(checks.iter().all(|c| c.passed));
    let (kind, translation_length) = match class {
        Classification::Elliptic => ("elliptic", None),
        Classification::Loxodromic { translation_length } => {
            ("loxodromic", Some(translation_length))
        }
    };
    Ok(LevelRecord {
        i,
        status,
        error: None,
        witness: Some(WitnessText {
            phi: w.phi.to_string(),
            t: w.t.to_string(),
            psi: w.psi.to_string(),
            s: w.s.to_string(),
            g: g.to_string(),
        }),
        checks,
        classification: Some(ClassificationRecord {
            operation: "classify",
            kind,
            translation_length,
        }),
        window: Some([cert.window.0, cert.window.1]),
        generators: cert.generators,
        subgroup_order: Some(cert.order.to_string()),
        landau: Some(landau_value.to_string()),
        index_lower_bound: bound,
        sampled: Some(sampled),
        timings: opts.timings.then(|| Timings {
            witnesses_us: witness_time.as_micros() as u64,
            certificate_us: (certificate_time - witness_time).as_micros() as u64,
            sampled_us: (total - certificate_time).as_micros() as u64,
            total_us: total.as_micros() as u64,
        }),
    })
}
