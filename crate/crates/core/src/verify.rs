//! Verification harness: property suites over the catalog and an
//! exhaustively generated corpus of small codes.
//!
//! Each suite checks one law relating the move engine, the double cover,
//! the surface constructions, and the coloring invariants. Suites are
//! deterministic given a seed, and reports are emitted in a canonical
//! order (sorted by suite name; failures sorted within a suite).

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    abelian_invariants, builtin_target, builtin_target_names, count_colorings, lower_group,
    lower_quandle, twisted_group, twisted_quandle, upper_group, upper_quandle, FiniteTarget,
    TargetKind,
};
use crate::catalog::{builtin_catalog, CatalogEntry};
use crate::cover::double_cover;
use crate::gauss::{Strand, Symbol, TwistedCode};
use crate::moves::{apply_move, enumerate_moves, random_walk, MoveSite};
use crate::ribbon::{abstract_diagram, orientation_double_cover, ribbon_isomorphic};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_crossings: usize,
    pub max_bars: usize,
    pub walks: usize,
    pub steps: usize,
    pub catalog: Vec<CatalogEntry>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 1,
            max_crossings: 4,
            max_bars: 2,
            walks: 200,
            steps: 15,
            catalog: builtin_catalog(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn finish(suite: &str, checks: u64, mut failures: Vec<String>) -> SuiteReport {
        failures.sort();
        SuiteReport {
            suite: suite.into(),
            passed: failures.is_empty(),
            checks,
            failures,
        }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "cover-group",
    "cover-quandle",
    "cover-upper-lower",
    "cover-writhe",
    "free-product",
    "kishino-battery",
    "known-values",
    "move-invariance",
    "ribbon-cover",
    "structural",
];

/// Run one suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Option<SuiteReport> {
    Some(match name {
        "cover-group" => cover_group(opts),
        "cover-quandle" => cover_quandle(opts),
        "cover-upper-lower" => cover_upper_lower(opts),
        "cover-writhe" => cover_writhe(opts),
        "free-product" => free_product(opts),
        "kishino-battery" => kishino_battery(opts),
        "known-values" => known_values(),
        "move-invariance" => move_invariance(opts),
        "ribbon-cover" => ribbon_cover(opts),
        "structural" => structural(opts),
        _ => return None,
    })
}

/// Run every suite, reports sorted by suite name.
pub fn run_all(opts: &VerifyOptions) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n, opts).unwrap())
        .collect()
}

// ---------------------------------------------------------------------------
// Corpus generation
// ---------------------------------------------------------------------------

/// All valid one-component codes with at most `max_crossings` crossings and
/// at most `max_bars` bars, in canonical form, deduplicated by literal code,
/// in sorted order.
pub fn corpus(max_crossings: usize, max_bars: usize) -> Vec<TwistedCode> {
    let mut seen = BTreeSet::new();
    for c in 0..=max_crossings {
        let mut pairing = vec![usize::MAX; 2 * c];
        pairings(&mut pairing, 0, &mut |pairing| {
            for_each_decoration(pairing, c, &mut |syms| {
                for barred in bar_insertions(syms, max_bars) {
                    seen.insert(min_rotation(&barred));
                }
            });
        });
    }
    seen.into_iter()
        .map(|syms| {
            let code = TwistedCode::new(vec![syms]);
            debug_assert!(code.is_valid());
            debug_assert_eq!(code.canonical(), code);
            code
        })
        .collect()
}

/// A memoized corpus, shared by the suites that iterate over the same
/// parameters.
pub fn corpus_cached(max_crossings: usize, max_bars: usize) -> std::sync::Arc<Vec<TwistedCode>> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<TwistedCode>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(max_crossings, max_bars)) {
        return hit.clone();
    }
    let built = Arc::new(corpus(max_crossings, max_bars));
    cache
        .lock()
        .unwrap()
        .entry((max_crossings, max_bars))
        .or_insert(built)
        .clone()
}

/// The lexicographically minimal relabeled rotation of a one-component
/// symbol list: a fast equivalent of `TwistedCode::canonical` for the
/// generator above.
fn min_rotation(syms: &[Symbol]) -> Vec<Symbol> {
    let len = syms.len();
    if len == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<Symbol>> = None;
    let mut buf = Vec::with_capacity(len);
    let mut labels = vec![0u32; len + 1];
    for r in 0..len {
        buf.clear();
        labels.iter_mut().for_each(|l| *l = 0);
        let mut next = 1u32;
        for k in 0..len {
            buf.push(match syms[(r + k) % len] {
                Symbol::Cross { id, strand, sign } => {
                    let slot = &mut labels[id as usize];
                    if *slot == 0 {
                        *slot = next;
                        next += 1;
                    }
                    Symbol::Cross { id: *slot, strand, sign }
                }
                Symbol::Bar => Symbol::Bar,
            });
        }
        if best.as_ref().map_or(true, |b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap()
}

/// Enumerate perfect matchings on positions 0..len, pairing the smallest
/// unmatched position with each later unmatched one.
fn pairings(pairing: &mut Vec<usize>, from: usize, f: &mut impl FnMut(&[usize])) {
    let len = pairing.len();
    let Some(i) = (from..len).find(|&i| pairing[i] == usize::MAX) else {
        f(pairing);
        return;
    };
    for j in i + 1..len {
        if pairing[j] == usize::MAX {
            pairing[i] = j;
            pairing[j] = i;
            pairings(pairing, i + 1, f);
            pairing[i] = usize::MAX;
            pairing[j] = usize::MAX;
        }
    }
}

/// For a fixed chord pairing, enumerate all over/under and sign choices.
/// Crossing ids follow first appearance, so relabeling duplicates are
/// never generated.
fn for_each_decoration(pairing: &[usize], c: usize, f: &mut impl FnMut(&[Symbol])) {
    let len = pairing.len();
    // id per position, 1-based in order of first appearance
    let mut ids = vec![0u32; len];
    let mut next = 1u32;
    for i in 0..len {
        if ids[i] == 0 {
            ids[i] = next;
            ids[pairing[i]] = next;
            next += 1;
        }
    }
    for mask in 0u32..1 << (2 * c) {
        let over_first = |k: usize| mask >> k & 1 == 1;
        let positive = |k: usize| mask >> (c + k) & 1 == 1;
        let syms: Vec<Symbol> = (0..len)
            .map(|i| {
                let k = (ids[i] - 1) as usize;
                let first = pairing[i] > i;
                let strand = if first == over_first(k) { Strand::Over } else { Strand::Under };
                Symbol::cross(ids[i], strand, if positive(k) { 1 } else { -1 })
            })
            .collect();
        f(&syms);
    }
}

/// All ways of inserting 0..=max_bars bars into the gaps of a symbol list.
fn bar_insertions(syms: &[Symbol], max_bars: usize) -> Vec<Vec<Symbol>> {
    let gaps = syms.len() + 1;
    let mut out = Vec::new();
    let mut counts = vec![0usize; gaps.max(1)];
    fn rec(
        counts: &mut Vec<usize>,
        gap: usize,
        left: usize,
        syms: &[Symbol],
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if gap == counts.len() {
            let mut v = Vec::with_capacity(syms.len() + counts.iter().sum::<usize>());
            for (g, &n) in counts.iter().enumerate() {
                v.extend(std::iter::repeat(Symbol::Bar).take(n));
                if g < syms.len() {
                    v.push(syms[g]);
                }
            }
            out.push(v);
            return;
        }
        for n in 0..=left {
            counts[gap] = n;
            rec(counts, gap + 1, left - n, syms, out);
            counts[gap] = 0;
        }
    }
    rec(&mut counts, 0, max_bars, syms, &mut out);
    out
}

/// A seeded random valid code, used by the structural suite's round-trip
/// check.
pub fn random_code(rng: &mut impl Rng) -> TwistedCode {
    let ncomp = rng.gen_range(1..=3);
    let ncross = rng.gen_range(0..=6usize);
    // place each crossing's two passes on random components
    let mut comps: Vec<Vec<Symbol>> = vec![Vec::new(); ncomp];
    for id in 1..=ncross as u32 {
        let sign: i8 = if rng.gen() { 1 } else { -1 };
        for strand in [Strand::Over, Strand::Under] {
            let c = rng.gen_range(0..ncomp);
            let at = rng.gen_range(0..=comps[c].len());
            comps[c].insert(at, Symbol::cross(id, strand, sign));
        }
    }
    for _ in 0..rng.gen_range(0..=4) {
        let c = rng.gen_range(0..ncomp);
        let at = rng.gen_range(0..=comps[c].len());
        comps[c].insert(at, Symbol::Bar);
    }
    TwistedCode::new(comps)
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn targets(names: &[&str]) -> Vec<FiniteTarget> {
    names.iter().map(|n| builtin_target(n).unwrap()).collect()
}

const GROUP_BATTERY: &[&str] = &["Z2", "Z3", "S3", "D4"];
const QUANDLE_BATTERY: &[&str] = &["R3", "R5"];

fn twisted_counts(code: &TwistedCode, groups: &[FiniteTarget], quandles: &[FiniteTarget]) -> Vec<u64> {
    let g = twisted_group(code);
    let q = twisted_quandle(code);
    groups
        .iter()
        .map(|t| count_colorings(&g, t).unwrap())
        .chain(quandles.iter().map(|t| count_colorings(&q, t).unwrap()))
        .collect()
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Criterion: twisted coloring counts are invariant under seeded random
/// move walks from every catalog entry.
fn move_invariance(opts: &VerifyOptions) -> SuiteReport {
    let groups = targets(GROUP_BATTERY);
    let quandles = targets(QUANDLE_BATTERY);
    let mut checks = 0;
    let mut failures = Vec::new();
    for (ei, e) in opts.catalog.iter().enumerate() {
        let code = e.parsed();
        let base = twisted_counts(&code, &groups, &quandles);
        for w in 0..opts.walks {
            let seed = opts
                .seed
                .wrapping_add((ei as u64) << 32)
                .wrapping_add(w as u64);
            let trace = random_walk(&code, opts.steps, seed);
            let got = twisted_counts(&trace.final_code, &groups, &quandles);
            checks += 1;
            if got != base {
                failures.push(format!(
                    "{} walk seed {seed}: counts {base:?} -> {got:?} via {}",
                    e.name,
                    trace.final_code.serialize()
                ));
            }
        }
    }
    SuiteReport::finish("move-invariance", checks, failures)
}

/// Criterion: the twisted group of D and the upper group of its double
/// cover have equal coloring counts into each group target.
fn cover_group(opts: &VerifyOptions) -> SuiteReport {
    let groups = targets(GROUP_BATTERY);
    let mut checks = 0;
    let mut failures = Vec::new();
    for code in corpus_cached(opts.max_crossings, opts.max_bars).iter() {
        let tg = twisted_group(&code);
        let ug = upper_group(&double_cover(&code).cover).unwrap();
        for t in &groups {
            checks += 1;
            let a = count_colorings(&tg, t).unwrap();
            let b = count_colorings(&ug, t).unwrap();
            if a != b {
                failures.push(format!(
                    "{} into {}: twisted {a} != cover upper {b}",
                    code.serialize(),
                    t.name
                ));
            }
        }
    }
    SuiteReport::finish("cover-group", checks, failures)
}

/// Criterion: same law for twisted vs. cover upper quandles.
fn cover_quandle(opts: &VerifyOptions) -> SuiteReport {
    let quandles = targets(&["R3", "R4", "R5"]);
    let mut checks = 0;
    let mut failures = Vec::new();
    for code in corpus_cached(opts.max_crossings, opts.max_bars).iter() {
        let tq = twisted_quandle(&code);
        let uq = upper_quandle(&double_cover(&code).cover).unwrap();
        for t in &quandles {
            checks += 1;
            let a = count_colorings(&tq, t).unwrap();
            let b = count_colorings(&uq, t).unwrap();
            if a != b {
                failures.push(format!(
                    "{} into {}: twisted {a} != cover upper {b}",
                    code.serialize(),
                    t.name
                ));
            }
        }
    }
    SuiteReport::finish("cover-quandle", checks, failures)
}

/// Criterion: on every double-cover output, upper and lower counts agree
/// for every built-in target.
fn cover_upper_lower(opts: &VerifyOptions) -> SuiteReport {
    let all = targets(builtin_target_names());
    let mut checks = 0;
    let mut failures = Vec::new();
    for code in corpus_cached(opts.max_crossings, opts.max_bars).iter() {
        let cover = double_cover(&code).cover;
        let ug = upper_group(&cover).unwrap();
        let lg = lower_group(&cover).unwrap();
        let uq = upper_quandle(&cover).unwrap();
        let lq = lower_quandle(&cover).unwrap();
        for t in &all {
            checks += 1;
            let (a, b) = match t.kind {
                TargetKind::Group => (
                    count_colorings(&ug, t).unwrap(),
                    count_colorings(&lg, t).unwrap(),
                ),
                TargetKind::Quandle => (
                    count_colorings(&uq, t).unwrap(),
                    count_colorings(&lq, t).unwrap(),
                ),
            };
            if a != b {
                failures.push(format!(
                    "cover of {} into {}: upper {a} != lower {b}",
                    code.serialize(),
                    t.name
                ));
            }
        }
    }
    SuiteReport::finish("cover-upper-lower", checks, failures)
}

/// Criterion: for barless codes the twisted group count factors as
/// upper count times lower count, for every group target.
fn free_product(opts: &VerifyOptions) -> SuiteReport {
    let groups = targets(&["Z2", "Z3", "Z4", "S3", "D4", "Q8"]);
    let mut checks = 0;
    let mut failures = Vec::new();
    for code in corpus_cached(opts.max_crossings, 0).iter() {
        let tg = twisted_group(&code);
        let ug = upper_group(&code).unwrap();
        let lg = lower_group(&code).unwrap();
        for t in &groups {
            checks += 1;
            let tw = count_colorings(&tg, t).unwrap();
            let up = count_colorings(&ug, t).unwrap();
            let lo = count_colorings(&lg, t).unwrap();
            if tw != up * lo {
                failures.push(format!(
                    "{} into {}: twisted {tw} != upper {up} * lower {lo}",
                    code.serialize(),
                    t.name
                ));
            }
        }
    }
    SuiteReport::finish("free-product", checks, failures)
}

/// Criterion: a kink insertion or deletion changes the writhe of the
/// double cover by exactly 2.
fn cover_writhe(opts: &VerifyOptions) -> SuiteReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    for e in &opts.catalog {
        let code = e.parsed();
        let before = double_cover(&code).cover.stats().writhe;
        for site in enumerate_moves(&code) {
            if !matches!(site, MoveSite::R1Insert { .. } | MoveSite::R1Delete { .. }) {
                continue;
            }
            checks += 1;
            let after = double_cover(&apply_move(&code, &site).unwrap())
                .cover
                .stats()
                .writhe;
            if (after - before).abs() != 2 {
                failures.push(format!(
                    "{} {:?}: cover writhe {before} -> {after}",
                    e.name, site
                ));
            }
        }
    }
    SuiteReport::finish("cover-writhe", checks, failures)
}

/// Criterion: the surface diagram of the double cover is isomorphic to the
/// orientation double cover of the surface diagram.
fn ribbon_cover(opts: &VerifyOptions) -> SuiteReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    for e in &opts.catalog {
        let code = e.parsed();
        if code.crossing_count() > 6 {
            continue;
        }
        checks += 1;
        let a = abstract_diagram(&double_cover(&code).cover);
        let b = orientation_double_cover(&abstract_diagram(&code));
        match ribbon_isomorphic(&a, &b) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{}: surface covers differ", e.name)),
            Err(err) => failures.push(format!("{}: {err}", e.name)),
        }
    }
    SuiteReport::finish("ribbon-cover", checks, failures)
}

/// Criterion: the kishino-bars entry's full invariant battery equals the
/// unknot's.
fn kishino_battery(opts: &VerifyOptions) -> SuiteReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    let find = |name: &str| {
        opts.catalog
            .iter()
            .find(|e| e.name == name)
            .map(CatalogEntry::parsed)
    };
    match (find("kishino-bars"), find("unknot")) {
        (Some(kb), Some(un)) => {
            for t in targets(builtin_target_names()) {
                checks += 1;
                let count = |c: &TwistedCode| {
                    let p = match t.kind {
                        TargetKind::Group => twisted_group(c),
                        TargetKind::Quandle => twisted_quandle(c),
                    };
                    count_colorings(&p, &t).unwrap()
                };
                let (a, b) = (count(&kb), count(&un));
                if a != b {
                    failures.push(format!("twisted count into {}: {a} != {b}", t.name));
                }
            }
            checks += 1;
            let ab = |c: &TwistedCode| abelian_invariants(&twisted_group(c)).unwrap();
            if ab(&kb) != ab(&un) {
                failures.push(format!("abelian invariants differ: {:?} != {:?}", ab(&kb), ab(&un)));
            }
            checks += 1;
            let comps = |c: &TwistedCode| double_cover(c).cover.stats().component_count;
            if comps(&kb) != comps(&un) {
                failures.push("cover component counts differ".into());
            }
        }
        _ => failures.push("catalog is missing kishino-bars or unknot".into()),
    }
    SuiteReport::finish("kishino-battery", checks, failures)
}

/// Criterion: frozen coloring counts, each reproduced here by a direct
/// brute-force oracle independent of the presentation machinery.
fn known_values() -> SuiteReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |name: &str, got: u64, lib: u64, frozen: u64| {
        checks += 1;
        if got != frozen || lib != frozen {
            failures.push(format!("{name}: oracle {got}, library {lib}, frozen {frozen}"));
        }
    };

    let trefoil = TwistedCode::parse("(O1+ U2+ O3+ U1+ O2+ U3+)").unwrap();
    let s3 = builtin_target("S3").unwrap();
    let r3 = builtin_target("R3").unwrap();

    // Trefoil group colorings into S3, by brute force over the two-generator
    // braid presentation <a,b | aba = bab>.
    let mut oracle = 0u64;
    for a in 0..6 {
        for b in 0..6 {
            let aba = s3.mul(s3.mul(a, b), a);
            let bab = s3.mul(s3.mul(b, a), b);
            if aba == bab {
                oracle += 1;
            }
        }
    }
    check(
        "trefoil upper group into S3",
        oracle,
        count_colorings(&upper_group(&trefoil).unwrap(), &s3).unwrap(),
        12,
    );

    // Trefoil quandle colorings into R3, by brute force over all 27 arc
    // assignments of the three-arc diagram (arc k runs from under-pass k).
    let mut oracle = 0u64;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                // crossing relations of the standard diagram: each outgoing
                // arc is the incoming one operated on by the over-arc
                if r3.qop(a, c, false) == b && r3.qop(b, a, false) == c && r3.qop(c, b, false) == a
                {
                    oracle += 1;
                }
            }
        }
    }
    check(
        "trefoil upper quandle into R3",
        oracle,
        count_colorings(&upper_quandle(&trefoil).unwrap(), &r3).unwrap(),
        9,
    );

    // Twisted group of the single-bar unknot into S3: the bar identifies
    // the two generators, leaving one free choice.
    let bar = TwistedCode::parse("(*)").unwrap();
    let mut oracle = 0u64;
    for x in 0..6 {
        for y in 0..6 {
            if x == y {
                oracle += 1;
            }
        }
    }
    check(
        "single-bar unknot twisted group into S3",
        oracle,
        count_colorings(&twisted_group(&bar), &s3).unwrap(),
        6,
    );

    SuiteReport::finish("known-values", checks, failures)
}

/// Criterion: structural cover laws, involution laws, and parse/serialize
/// round-trips on a random corpus.
fn structural(opts: &VerifyOptions) -> SuiteReport {
    let mut checks = 0;
    let mut failures = Vec::new();

    for code in corpus_cached(opts.max_crossings.min(3), opts.max_bars).iter() {
        checks += 1;
        let stats = code.stats();
        let result = double_cover(&code);
        let cstats = result.cover.stats();
        let odd_bars = stats
            .bar_count_per_component
            .iter()
            .filter(|&&b| b % 2 == 1)
            .count();
        let expected_components = odd_bars + 2 * (stats.component_count - odd_bars);
        let ok = cstats.bar_count_per_component.iter().all(|&b| b == 0)
            && cstats.crossing_count == 2 * stats.crossing_count
            && cstats.writhe == 2 * stats.writhe
            && cstats.component_count == expected_components;
        if !ok {
            failures.push(format!("cover law violated on {}", code.serialize()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..1000 {
        let code = random_code(&mut rng);
        checks += 1;
        if TwistedCode::parse(&code.serialize()).as_ref() != Ok(&code) {
            failures.push(format!("round-trip failed on {}", code.serialize()));
            continue;
        }
        let s = code.involution_s();
        let r = code.reflect_r();
        let c = code.crossing_change_c();
        let ok = s.involution_s() == code
            && r.reflect_r() == code
            && c.crossing_change_c() == code
            && r.crossing_change_c() == s;
        if !ok {
            failures.push(format!("involution law violated on {}", code.serialize()));
        }
    }

    SuiteReport::finish("structural", checks, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deduplicated_and_valid() {
        let small = corpus(2, 1);
        let serialized: BTreeSet<String> = small.iter().map(|c| c.serialize()).collect();
        assert_eq!(serialized.len(), small.len());
        for code in &small {
            assert!(code.is_valid());
            assert!(code.crossing_count() <= 2);
            assert!(code.stats().bar_count_per_component.iter().sum::<usize>() <= 1);
            assert_eq!(code.canonical().serialize(), code.serialize());
        }
        assert!(small.iter().any(|c| c.serialize() == "()"));
        assert!(small.iter().any(|c| c.serialize() == "(*)"));
        assert!(small.iter().any(|c| c.serialize() == "(O1+ U1+)"));
        // growing either bound strictly enlarges the corpus
        assert!(corpus(2, 2).len() > small.len());
        assert!(corpus(3, 1).len() > small.len());
    }

    #[test]
    fn random_codes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(random_code(&mut rng).is_valid());
        }
    }

    #[test]
    fn suites_are_deterministic_given_seed() {
        let opts = VerifyOptions {
            max_crossings: 2,
            max_bars: 1,
            walks: 5,
            steps: 5,
            ..VerifyOptions::default()
        };
        let a = run_suite("move-invariance", &opts).unwrap();
        let b = run_suite("move-invariance", &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.passed);
        assert_eq!(run_suite("no-such-suite", &opts), None);
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            max_crossings: 2,
            max_bars: 1,
            walks: 3,
            steps: 6,
            ..VerifyOptions::default()
        };
        for name in ["cover-group", "cover-quandle", "free-product", "cover-writhe", "known-values", "structural"] {
            let rep = run_suite(name, &opts).unwrap();
            assert!(rep.passed, "{name}: {:?}", rep.failures);
            assert!(rep.checks > 0, "{name} ran no checks");
        }
    }

    #[test]
    fn a_broken_move_is_detected() {
        // sanity for the move-invariance suite: walks that end in a wrong
        // code (here: one crossing switched, which is not a move) change
        // counts
        let code = TwistedCode::parse("(O1+ U2+ O3+ U1+ O2+ U3+)").unwrap();
        let switched = TwistedCode::parse("(U1- U2+ O3+ O1- O2+ U3+)").unwrap();
        let groups = targets(GROUP_BATTERY);
        let quandles = targets(QUANDLE_BATTERY);
        let base = twisted_counts(&code, &groups, &quandles);
        let broken = twisted_counts(&switched, &groups, &quandles);
        assert_ne!(base, broken);
    }
}
