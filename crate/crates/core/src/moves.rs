//! Code-level Reidemeister and twisted moves, and seeded random move
//! walks. V-moves and the T2 move are invisible at the Gauss-code level
//! and are therefore not represented.
//!
//! Insertion positions are gap indices: gap g of a component means
//! "immediately before the symbol at index g" (gap 0 of an empty
//! component is its only gap). Deletion sites name the index of the first
//! symbol of an adjacent pair, cyclically.

use crate::gauss::{Strand, Symbol, TwistedCode};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveSite {
    R1Insert { component: usize, gap: usize, over_first: bool, sign: i8 },
    R1Delete { component: usize, pos: usize },
    R2Insert {
        over_component: usize,
        over_gap: usize,
        under_component: usize,
        under_gap: usize,
        parallel: bool,
        sign: i8,
    },
    R2Delete { over_component: usize, over_pos: usize, under_component: usize, under_pos: usize },
    R3 { pairs: [(usize, usize); 3] },
    T1Insert { component: usize, gap: usize },
    T1Delete { component: usize, pos: usize },
    T3 { crossing: u32, bars_after: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub initial: TwistedCode,
    pub steps: Vec<MoveSite>,
    pub final_code: TwistedCode,
}

impl MoveTrace {
    /// JSON form with codes as strings, per the replay interface.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "initial": self.initial.serialize(),
            "steps": self.steps,
            "final": self.final_code.serialize(),
        })
        .to_string()
    }

    pub fn from_json(s: &str) -> Result<MoveTrace, MoveError> {
        #[derive(Deserialize)]
        struct Raw {
            initial: String,
            steps: Vec<MoveSite>,
            #[serde(rename = "final")]
            final_code: String,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| MoveError::BadTrace(e.to_string()))?;
        let initial =
            TwistedCode::parse(&raw.initial).map_err(|e| MoveError::BadTrace(e.to_string()))?;
        let final_code =
            TwistedCode::parse(&raw.final_code).map_err(|e| MoveError::BadTrace(e.to_string()))?;
        let trace = MoveTrace { initial, steps: raw.steps, final_code };
        let replayed = trace.replay()?;
        if replayed != trace.final_code {
            return Err(MoveError::BadTrace("replay does not reach the final code".into()));
        }
        Ok(trace)
    }

    pub fn replay(&self) -> Result<TwistedCode, MoveError> {
        let mut code = self.initial.clone();
        for site in &self.steps {
            code = apply_move(&code, site)?;
        }
        Ok(code)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move site is not applicable: {0}")]
    Inapplicable(String),
    #[error("invalid move trace: {0}")]
    BadTrace(String),
}

/// R3 configurations are encoded as a 6-bit index. The three strands of
/// the triangle are ranked top (over at both its crossings), middle and
/// bottom; crossings are named by the pair of strands they join (TM, TB,
/// MB). Bits 0..2 record, per strand run in top/middle/bottom order,
/// whether the run meets its crossing with the *higher*-ranked partner
/// first (top: TM first; middle: TM first; bottom: TB first); bits 3..5
/// record the signs of TM, TB, MB (bit set = positive).
///
/// Which of the 64 combinations are geometric Reidemeister 3 moves is
/// pinned by the derivation tests in this module. The triangle is modeled
/// by three straight lines in the plane; enumerating both mirror classes
/// of the line arrangement, both sides of the move, and all 8 strand
/// orientations, and reading off the order bits (intersection parameters
/// along each strand) and crossing signs (direction determinants), yields
/// exactly 16 admissible configurations. A separate test checks that
/// every admitted swap preserves group and quandle coloring counts in a
/// family of ambient closures.
pub(crate) const R3_VALID: u64 = R3_VALID_BITS;
include!("r3_table.rs");

/// All applicable delete-type sites and the bounded family of insert
/// sites for a valid code.
pub fn enumerate_moves(code: &TwistedCode) -> Vec<MoveSite> {
    let mut out = Vec::new();
    delete_sites(code, &mut out);
    t3_sites(code, &mut out);
    r3_sites(code, &mut out);
    insert_sites(code, &mut out);
    out
}

fn adjacent(comp: &[Symbol], p: usize) -> (Symbol, Symbol) {
    (comp[p], comp[(p + 1) % comp.len()])
}

fn delete_sites(code: &TwistedCode, out: &mut Vec<MoveSite>) {
    // R1 and T1 deletions: adjacent pass pair of one crossing / bar pair.
    for (ci, comp) in code.components.iter().enumerate() {
        let m = comp.len();
        for p in 0..m {
            match adjacent(comp, p) {
                (Symbol::Cross { id: a, .. }, Symbol::Cross { id: b, .. }) if a == b && m > 1 => {
                    out.push(MoveSite::R1Delete { component: ci, pos: p });
                }
                (Symbol::Bar, Symbol::Bar) if m > 1 => {
                    out.push(MoveSite::T1Delete { component: ci, pos: p });
                }
                _ => {}
            }
        }
    }
    // R2 deletions: adjacent Over pair plus adjacent Under pair of the
    // same two crossings, opposite signs.
    for (ci, comp) in code.components.iter().enumerate() {
        let m = comp.len();
        for p in 0..m {
            if m < 2 {
                continue;
            }
            let (s1, s2) = adjacent(comp, p);
            let (a, sa, b, sb) = match (s1, s2) {
                (
                    Symbol::Cross { id: a, strand: Strand::Over, sign: sa },
                    Symbol::Cross { id: b, strand: Strand::Over, sign: sb },
                ) if a != b => (a, sa, b, sb),
                _ => continue,
            };
            if sa != -sb {
                continue;
            }
            for (cj, comp2) in code.components.iter().enumerate() {
                let m2 = comp2.len();
                for q in 0..m2 {
                    if m2 < 2 {
                        continue;
                    }
                    let (t1, t2) = adjacent(comp2, q);
                    let ids = match (t1, t2) {
                        (
                            Symbol::Cross { id: x, strand: Strand::Under, .. },
                            Symbol::Cross { id: y, strand: Strand::Under, .. },
                        ) => (x, y),
                        _ => continue,
                    };
                    if ids == (a, b) || ids == (b, a) {
                        out.push(MoveSite::R2Delete {
                            over_component: ci,
                            over_pos: p,
                            under_component: cj,
                            under_pos: q,
                        });
                    }
                }
            }
        }
    }
}

fn t3_sites(code: &TwistedCode, out: &mut Vec<MoveSite>) {
    for (id, over, under, _) in code.crossing_passes() {
        for bars_after in [true, false] {
            let bar_at = |pos: &crate::gauss::Pos| {
                let comp = &code.components[pos.component];
                let m = comp.len();
                let q = if bars_after { (pos.index + 1) % m } else { (pos.index + m - 1) % m };
                comp[q].is_bar()
            };
            if bar_at(&over) && bar_at(&under) {
                out.push(MoveSite::T3 { crossing: id, bars_after });
            }
        }
    }
}

/// An adjacent pass pair of two distinct crossings: a candidate strand
/// run of an R3 triangle.
#[derive(Debug, Clone, Copy)]
struct Run {
    component: usize,
    pos: usize,
    len: usize,
    first: (u32, Strand, i8),
    second: (u32, Strand, i8),
}

fn runs(code: &TwistedCode) -> Vec<Run> {
    let mut out = Vec::new();
    for (ci, comp) in code.components.iter().enumerate() {
        let m = comp.len();
        if m < 2 {
            continue;
        }
        for p in 0..m {
            if let (
                Symbol::Cross { id: a, strand: ta, sign: sa },
                Symbol::Cross { id: b, strand: tb, sign: sb },
            ) = adjacent(comp, p)
            {
                if a != b {
                    out.push(Run {
                        component: ci,
                        pos: p,
                        len: m,
                        first: (a, ta, sa),
                        second: (b, tb, sb),
                    });
                }
            }
        }
    }
    out
}

/// Encode a candidate triangle into the 6-bit configuration index, or
/// None when the over/under pattern is not stacked (no top strand).
/// Runs must pairwise share one crossing; `runs[i]` are in arbitrary
/// order on input.
fn r3_config(top: &Run, mid: &Run, bot: &Run, tm: u32, tb: u32, mb: u32) -> usize {
    let sign_of = |run: &Run, id: u32| {
        if run.first.0 == id {
            run.first.2
        } else {
            run.second.2
        }
    };
    let mut idx = 0usize;
    if top.first.0 == tm {
        idx |= 1;
    }
    if mid.first.0 == tm {
        idx |= 2;
    }
    if bot.first.0 == tb {
        idx |= 4;
    }
    if sign_of(top, tm) > 0 {
        idx |= 8;
    }
    if sign_of(top, tb) > 0 {
        idx |= 16;
    }
    if sign_of(mid, mb) > 0 {
        idx |= 32;
    }
    idx
}

/// Classify three runs as (top, mid, bot, tm, tb, mb) if they form a
/// stacked triangle, i.e. one strand is over at both of its crossings and
/// one is under at both.
fn classify_triangle(r1: &Run, r2: &Run, r3: &Run) -> Option<(Run, Run, Run, u32, u32, u32)> {
    let rs = [r1, r2, r3];
    // each pair of runs must share exactly one crossing id, all distinct
    let shared = |a: &Run, b: &Run| -> Option<u32> {
        let ids_a = [a.first.0, a.second.0];
        let ids_b = [b.first.0, b.second.0];
        let mut common = ids_a.iter().filter(|i| ids_b.contains(i));
        let c = *common.next()?;
        if common.next().is_some() {
            return None;
        }
        Some(c)
    };
    let c12 = shared(rs[0], rs[1])?;
    let c13 = shared(rs[0], rs[2])?;
    let c23 = shared(rs[1], rs[2])?;
    if c12 == c13 || c12 == c23 || c13 == c23 {
        return None;
    }
    // runs must use complementary passes of each shared crossing: the
    // strand markers at the shared crossing must differ
    let marker = |r: &Run, id: u32| if r.first.0 == id { r.first.1 } else { r.second.1 };
    if marker(rs[0], c12) == marker(rs[1], c12)
        || marker(rs[0], c13) == marker(rs[2], c13)
        || marker(rs[1], c23) == marker(rs[2], c23)
    {
        return None;
    }
    let over_count =
        |r: &Run| [r.first.1, r.second.1].iter().filter(|&&s| s == Strand::Over).count();
    let mut top = None;
    let mut mid = None;
    let mut bot = None;
    for r in rs {
        match over_count(r) {
            2 => top = Some(*r),
            1 => mid = Some(*r),
            _ => bot = Some(*r),
        }
    }
    let (top, mid, bot) = (top?, mid?, bot?);
    let tm = shared(&top, &mid)?;
    let tb = shared(&top, &bot)?;
    let mb = shared(&mid, &bot)?;
    Some((top, mid, bot, tm, tb, mb))
}

fn r3_sites(code: &TwistedCode, out: &mut Vec<MoveSite>) {
    for (cfg, site) in r3_candidates(code) {
        if R3_VALID & (1u64 << cfg) != 0 {
            out.push(site);
        }
    }
}

/// All stacked triangles together with their configuration index,
/// before the validity table is consulted.
pub(crate) fn r3_candidates(code: &TwistedCode) -> Vec<(usize, MoveSite)> {
    let all = runs(code);
    let n = all.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(x) = r3_candidate_from(&all[i], &all[j], &all[k]) {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn r3_candidate_from(r1: &Run, r2: &Run, r3: &Run) -> Option<(usize, MoveSite)> {
    let (top, mid, bot, tm, tb, mb) = classify_triangle(r1, r2, r3)?;
    let cfg = r3_config(&top, &mid, &bot, tm, tb, mb);
    // overlapping runs (sharing a symbol position) cannot be swapped independently
    let mut positions = Vec::with_capacity(6);
    for r in [&top, &mid, &bot] {
        positions.push((r.component, r.pos));
        positions.push((r.component, (r.pos + 1) % r.len));
    }
    positions.sort_unstable();
    positions.dedup();
    if positions.len() != 6 {
        return None;
    }
    Some((
        cfg,
        MoveSite::R3 {
            pairs: [(top.component, top.pos), (mid.component, mid.pos), (bot.component, bot.pos)],
        },
    ))
}

pub fn insert_sites(code: &TwistedCode, out: &mut Vec<MoveSite>) {
    for (ci, comp) in code.components.iter().enumerate() {
        let gaps = comp.len().max(1);
        for g in 0..gaps {
            for over_first in [true, false] {
                for sign in [1i8, -1] {
                    out.push(MoveSite::R1Insert { component: ci, gap: g, over_first, sign });
                }
            }
            out.push(MoveSite::T1Insert { component: ci, gap: g });
        }
    }
    // R2 insertions: every ordered pair of gaps, both configurations, both signs
    let mut gaps: Vec<(usize, usize)> = Vec::new();
    for (ci, comp) in code.components.iter().enumerate() {
        for g in 0..comp.len().max(1) {
            gaps.push((ci, g));
        }
    }
    for &(c1, g1) in &gaps {
        for &(c2, g2) in &gaps {
            for parallel in [false, true] {
                for sign in [1i8, -1] {
                    out.push(MoveSite::R2Insert {
                        over_component: c1,
                        over_gap: g1,
                        under_component: c2,
                        under_gap: g2,
                        parallel,
                        sign,
                    });
                }
            }
        }
    }
}

pub fn apply_move(code: &TwistedCode, site: &MoveSite) -> Result<TwistedCode, MoveError> {
    let fail = |msg: &str| Err(MoveError::Inapplicable(msg.to_string()));
    let mut comps = code.components.clone();
    match *site {
        MoveSite::R1Insert { component, gap, over_first, sign } => {
            let comp = comps.get_mut(component).ok_or_else(|| bad("component out of range"))?;
            if gap > comp.len() || (gap == comp.len() && !comp.is_empty()) {
                return fail("gap out of range");
            }
            let id = code.max_crossing_id() + 1;
            let (a, b) = if over_first { (Strand::Over, Strand::Under) } else { (Strand::Under, Strand::Over) };
            comp.splice(gap..gap, [Symbol::cross(id, a, sign), Symbol::cross(id, b, sign)]);
        }
        MoveSite::R1Delete { component, pos } => {
            let comp = comps.get_mut(component).ok_or_else(|| bad("component out of range"))?;
            let m = comp.len();
            if m < 2 || pos >= m {
                return fail("R1 pair absent");
            }
            let q = (pos + 1) % m;
            match (comp[pos], comp[q]) {
                (Symbol::Cross { id: a, .. }, Symbol::Cross { id: b, .. }) if a == b => {}
                _ => return fail("R1 pair absent"),
            }
            remove_two(comp, pos, q);
        }
        MoveSite::R2Insert {
            over_component,
            over_gap,
            under_component,
            under_gap,
            parallel,
            sign,
        } => {
            let c = code.max_crossing_id() + 1;
            let d = c + 1;
            let over = [Symbol::cross(c, Strand::Over, sign), Symbol::cross(d, Strand::Over, -sign)];
            let under = if parallel {
                [Symbol::cross(c, Strand::Under, sign), Symbol::cross(d, Strand::Under, -sign)]
            } else {
                [Symbol::cross(d, Strand::Under, -sign), Symbol::cross(c, Strand::Under, sign)]
            };
            if over_component >= comps.len() || under_component >= comps.len() {
                return fail("component out of range");
            }
            let check = |comps: &Vec<Vec<Symbol>>, ci: usize, g: usize| {
                let len = comps[ci].len();
                g <= len && (len > 0 || g == 0)
            };
            if !check(&comps, over_component, over_gap) || !check(&comps, under_component, under_gap)
            {
                return fail("gap out of range");
            }
            if over_component == under_component {
                let comp = &mut comps[over_component];
                if over_gap >= under_gap {
                    comp.splice(over_gap..over_gap, over);
                    comp.splice(under_gap..under_gap, under);
                } else {
                    comp.splice(under_gap..under_gap, under);
                    comp.splice(over_gap..over_gap, over);
                }
            } else {
                comps[over_component].splice(over_gap..over_gap, over);
                comps[under_component].splice(under_gap..under_gap, under);
            }
        }
        MoveSite::R2Delete { over_component, over_pos, under_component, under_pos } => {
            if over_component >= comps.len() || under_component >= comps.len() {
                return fail("component out of range");
            }
            let get = |ci: usize, p: usize| -> Option<(Symbol, Symbol)> {
                let comp = &code.components[ci];
                let m = comp.len();
                if m < 2 || p >= m {
                    return None;
                }
                Some((comp[p], comp[(p + 1) % m]))
            };
            let (o1, o2) = get(over_component, over_pos).ok_or_else(|| bad("over pair absent"))?;
            let (u1, u2) =
                get(under_component, under_pos).ok_or_else(|| bad("under pair absent"))?;
            let ok = match (o1, o2, u1, u2) {
                (
                    Symbol::Cross { id: a, strand: Strand::Over, sign: sa },
                    Symbol::Cross { id: b, strand: Strand::Over, sign: sb },
                    Symbol::Cross { id: x, strand: Strand::Under, .. },
                    Symbol::Cross { id: y, strand: Strand::Under, .. },
                ) => a != b && sa == -sb && ((x, y) == (a, b) || (x, y) == (b, a)),
                _ => false,
            };
            if !ok {
                return fail("R2 pattern absent");
            }
            if over_component == under_component {
                let comp = &mut comps[over_component];
                let m = comp.len();
                let mut drop: Vec<usize> =
                    vec![over_pos, (over_pos + 1) % m, under_pos, (under_pos + 1) % m];
                drop.sort_unstable();
                drop.dedup();
                if drop.len() != 4 {
                    return fail("overlapping R2 pairs");
                }
                for p in drop.into_iter().rev() {
                    comp.remove(p);
                }
            } else {
                let m = comps[over_component].len();
                remove_two(&mut comps[over_component], over_pos, (over_pos + 1) % m);
                let m = comps[under_component].len();
                remove_two(&mut comps[under_component], under_pos, (under_pos + 1) % m);
            }
        }
        MoveSite::R3 { pairs } => {
            // re-derive the site from the current code to confirm applicability
            let candidate: Vec<Run> = runs(code)
                .into_iter()
                .filter(|r| pairs.contains(&(r.component, r.pos)))
                .collect();
            if candidate.len() != 3 {
                return fail("R3 runs absent");
            }
            match r3_candidate_from(&candidate[0], &candidate[1], &candidate[2]) {
                Some((cfg, _)) if R3_VALID & (1u64 << cfg) != 0 => {}
                _ => return fail("R3 configuration not applicable"),
            }
            for &(ci, p) in &pairs {
                let m = comps[ci].len();
                comps[ci].swap(p, (p + 1) % m);
            }
        }
        MoveSite::T1Insert { component, gap } => {
            let comp = comps.get_mut(component).ok_or_else(|| bad("component out of range"))?;
            if gap > comp.len() || (gap == comp.len() && !comp.is_empty()) {
                return fail("gap out of range");
            }
            comp.splice(gap..gap, [Symbol::Bar, Symbol::Bar]);
        }
        MoveSite::T1Delete { component, pos } => {
            let comp = comps.get_mut(component).ok_or_else(|| bad("component out of range"))?;
            let m = comp.len();
            if m < 2 || pos >= m {
                return fail("bar pair absent");
            }
            let q = (pos + 1) % m;
            if !(comp[pos].is_bar() && comp[q].is_bar()) {
                return fail("bar pair absent");
            }
            remove_two(comp, pos, q);
        }
        MoveSite::T3 { crossing, bars_after } => {
            let passes = code.crossing_passes();
            let entry = passes.iter().find(|(id, ..)| *id == crossing);
            let (_, over, under, _) = entry.ok_or_else(|| bad("crossing absent"))?;
            let bar_pos = |p: &crate::gauss::Pos| {
                let m = code.components[p.component].len();
                let q = if bars_after { (p.index + 1) % m } else { (p.index + m - 1) % m };
                (p.component, q)
            };
            let b1 = bar_pos(over);
            let b2 = bar_pos(under);
            if !code.components[b1.0][b1.1].is_bar() || !code.components[b2.0][b2.1].is_bar() {
                return fail("T3 bars absent");
            }
            for (ci, comp) in code.components.iter().enumerate() {
                let mut rebuilt = Vec::with_capacity(comp.len());
                for (p, sym) in comp.iter().enumerate() {
                    let here = (ci, p);
                    if here == b1 || here == b2 {
                        continue; // bar moves to the other side
                    }
                    match sym {
                        Symbol::Cross { id, strand, sign } if *id == crossing => {
                            let flipped = Symbol::cross(*id, strand.flipped(), *sign);
                            if bars_after {
                                rebuilt.push(Symbol::Bar);
                                rebuilt.push(flipped);
                            } else {
                                rebuilt.push(flipped);
                                rebuilt.push(Symbol::Bar);
                            }
                        }
                        s => rebuilt.push(*s),
                    }
                }
                comps[ci] = rebuilt;
            }
        }
    }
    let result = TwistedCode::new(comps);
    debug_assert!(result.is_valid(), "move produced an invalid code");
    Ok(result)
}

fn bad(msg: &str) -> MoveError {
    MoveError::Inapplicable(msg.to_string())
}

fn remove_two(comp: &mut Vec<Symbol>, p: usize, q: usize) {
    if p < q {
        comp.remove(q);
        comp.remove(p);
    } else {
        comp.remove(p);
        comp.remove(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        builtin_target, count_colorings, twisted_group, twisted_quandle, FiniteTarget,
    };

    fn parse(s: &str) -> TwistedCode {
        TwistedCode::parse(s).unwrap()
    }

    /// Conjugation quandle on the symmetric group of degree 3:
    /// a * b = b⁻¹ a b. Non-abelian, so it separates codes that dihedral
    /// (Fox) colorings cannot.
    fn conj_s3() -> FiniteTarget {
        let s3 = builtin_target("S3").unwrap();
        let n = 6usize;
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = s3.mul(s3.mul(s3.inv(b), a), b);
            }
        }
        FiniteTarget::quandle("conjS3", table).unwrap()
    }

    fn battery(code: &TwistedCode) -> Vec<u64> {
        let g = twisted_group(code);
        let q = twisted_quandle(code);
        let mut out: Vec<u64> = ["S3", "D4"]
            .iter()
            .map(|t| count_colorings(&g, &builtin_target(t).unwrap()).unwrap())
            .chain(
                ["R3", "R5"]
                    .iter()
                    .map(|t| count_colorings(&q, &builtin_target(t).unwrap()).unwrap()),
            )
            .collect();
        out.push(count_colorings(&q, &conj_s3()).unwrap());
        out
    }

    #[test]
    fn r1_delete_kink() {
        let code = parse("(O1+ U1+)");
        let sites: Vec<_> = enumerate_moves(&code)
            .into_iter()
            .filter(|s| matches!(s, MoveSite::R1Delete { .. }))
            .collect();
        assert_eq!(sites.len(), 2); // both rotations of the same pair
        for s in sites {
            assert_eq!(apply_move(&code, &s).unwrap(), parse("()"));
        }
    }

    #[test]
    fn t1_delete_double_bar() {
        let code = parse("(* *)");
        let site = MoveSite::T1Delete { component: 0, pos: 0 };
        assert_eq!(apply_move(&code, &site).unwrap(), parse("()"));
    }

    #[test]
    fn t3_swaps_markers_and_moves_bars() {
        let code = parse("(O1+ * U1+ *)");
        let sites: Vec<_> = enumerate_moves(&code)
            .into_iter()
            .filter(|s| matches!(s, MoveSite::T3 { .. }))
            .collect();
        // the bars sit after each pass and, cyclically, also before each pass
        assert_eq!(
            sites,
            vec![
                MoveSite::T3 { crossing: 1, bars_after: true },
                MoveSite::T3 { crossing: 1, bars_after: false },
            ]
        );
        let moved = apply_move(&code, &sites[0]).unwrap();
        assert_eq!(moved, parse("(* U1+ * O1+)"));
        let other = apply_move(&code, &sites[1]).unwrap();
        assert_eq!(other.canonical(), moved.canonical());
        // and back
        let back = apply_move(&moved, &MoveSite::T3 { crossing: 1, bars_after: false }).unwrap();
        assert_eq!(back.canonical(), code.canonical());
    }

    #[test]
    fn insert_then_delete_is_identity() {
        let base = parse("(O1+ U2+ O3+ U1+ O2+ U3+)");
        for over_first in [true, false] {
            for sign in [1i8, -1] {
                let site = MoveSite::R1Insert { component: 0, gap: 2, over_first, sign };
                let bigger = apply_move(&base, &site).unwrap();
                let del = MoveSite::R1Delete { component: 0, pos: 2 };
                assert_eq!(apply_move(&bigger, &del).unwrap(), base);
            }
        }
        for parallel in [true, false] {
            for sign in [1i8, -1] {
                let site = MoveSite::R2Insert {
                    over_component: 0,
                    over_gap: 1,
                    under_component: 0,
                    under_gap: 4,
                    parallel,
                    sign,
                };
                let bigger = apply_move(&base, &site).unwrap();
                let del = MoveSite::R2Delete {
                    over_component: 0,
                    over_pos: 1,
                    under_component: 0,
                    under_pos: 6,
                };
                assert_eq!(apply_move(&bigger, &del).unwrap(), base);
            }
        }
        let t1 = MoveSite::T1Insert { component: 0, gap: 3 };
        let bigger = apply_move(&base, &t1).unwrap();
        let del = MoveSite::T1Delete { component: 0, pos: 3 };
        assert_eq!(apply_move(&bigger, &del).unwrap(), base);
    }

    #[test]
    fn writhe_laws() {
        let base = parse("(O1+ O2+ U1+ U2+)");
        let w = base.stats().writhe;
        for sign in [1i8, -1] {
            let kink = apply_move(
                &base,
                &MoveSite::R1Insert { component: 0, gap: 0, over_first: true, sign },
            )
            .unwrap();
            assert_eq!(kink.stats().writhe, w + sign as i64);
        }
        let r2 = apply_move(
            &base,
            &MoveSite::R2Insert {
                over_component: 0,
                over_gap: 0,
                under_component: 0,
                under_gap: 2,
                parallel: false,
                sign: 1,
            },
        )
        .unwrap();
        assert_eq!(r2.stats().writhe, w);
    }

    #[test]
    fn same_sign_clasp_is_not_r2_deletable() {
        // the virtual trefoil pattern: adjacent over and under pairs but equal signs
        let code = parse("(O1+ O2+ U1+ U2+)");
        assert!(!enumerate_moves(&code)
            .iter()
            .any(|s| matches!(s, MoveSite::R2Delete { .. })));
    }

    #[test]
    fn random_walk_is_deterministic_and_preserves_colorings() {
        let base = parse("(O1+ U2+ O3+ U1+ O2+ U3+)");
        let a = random_walk(&base, 6, 42);
        let b = random_walk(&base, 6, 42);
        assert_eq!(a, b);
        assert_eq!(a.steps.len(), 6);
        assert_ne!(random_walk(&base, 6, 43), a);
        assert_eq!(a.replay().unwrap(), a.final_code);
        assert!(a.final_code.is_valid());
        let s3 = builtin_target("S3").unwrap();
        assert_eq!(
            count_colorings(&twisted_group(&base), &s3).unwrap(),
            count_colorings(&twisted_group(&a.final_code), &s3).unwrap()
        );
    }

    #[test]
    fn trace_json_round_trip() {
        let base = parse("(O1+ U1+ *)");
        let trace = random_walk(&base, 4, 7);
        let json = trace.to_json();
        let back = MoveTrace::from_json(&json).unwrap();
        assert_eq!(back, trace);
        // tampering with the final code is rejected
        let bad = json.replace(&format!("\"final\":\"{}\"", trace.final_code.serialize()), "\"final\":\"(O9+ U9+)\"");
        assert!(MoveTrace::from_json(&bad).is_err());
    }

    // --- R3 validity table derivation ---------------------------------

    /// Build the three strand runs of a triangle for a configuration index.
    fn realize(cfg: usize) -> [Vec<Symbol>; 3] {
        let sign = |bit: usize| if cfg & bit != 0 { 1i8 } else { -1 };
        let (s_tm, s_tb, s_mb) = (sign(8), sign(16), sign(32));
        let c = Symbol::cross;
        let top = if cfg & 1 != 0 {
            vec![c(1, Strand::Over, s_tm), c(2, Strand::Over, s_tb)]
        } else {
            vec![c(2, Strand::Over, s_tb), c(1, Strand::Over, s_tm)]
        };
        let mid = if cfg & 2 != 0 {
            vec![c(1, Strand::Under, s_tm), c(3, Strand::Over, s_mb)]
        } else {
            vec![c(3, Strand::Over, s_mb), c(1, Strand::Under, s_tm)]
        };
        let bot = if cfg & 4 != 0 {
            vec![c(2, Strand::Under, s_tb), c(3, Strand::Under, s_mb)]
        } else {
            vec![c(3, Strand::Under, s_mb), c(2, Strand::Under, s_tb)]
        };
        [top, mid, bot]
    }

    fn swapped(runs: &[Vec<Symbol>; 3]) -> [Vec<Symbol>; 3] {
        let mut out = runs.clone();
        for r in &mut out {
            r.swap(0, 1);
        }
        out
    }

    /// Ambient closures the runs are embedded in; each is applied
    /// identically before and after the swap.
    fn paddings(runs: &[Vec<Symbol>; 3]) -> Vec<TwistedCode> {
        let [t, m, b] = runs.clone();
        let c = Symbol::cross;
        let kink = |id: u32, sign: i8| {
            vec![Symbol::cross(id, Strand::Over, sign), Symbol::cross(id, Strand::Under, sign)]
        };
        let cat = |parts: &[&[Symbol]]| -> Vec<Symbol> { parts.concat() };
        vec![
            TwistedCode::new(vec![t.clone(), m.clone(), b.clone()]),
            TwistedCode::new(vec![cat(&[&t, &m, &b])]),
            TwistedCode::new(vec![cat(&[&t, &b, &m])]),
            TwistedCode::new(vec![cat(&[&m, &t, &b])]),
            TwistedCode::new(vec![cat(&[&t, &kink(8, 1), &m, &kink(9, -1), &b])]),
            TwistedCode::new(vec![cat(&[&t, &[Symbol::Bar], &m, &[Symbol::Bar], &b])]),
            TwistedCode::new(vec![cat(&[&t, &m]), cat(&[&b, &kink(8, 1)])]),
            TwistedCode::new(vec![cat(&[&b, &[Symbol::Bar], &t]), cat(&[&m, &[Symbol::Bar]])]),
            // closures that entangle the three strands with extra crossings,
            // so that bad swaps change the underlying link type
            TwistedCode::new(vec![cat(&[
                &[c(8, Strand::Over, 1)],
                &t,
                &[c(8, Strand::Under, 1), c(9, Strand::Over, -1)],
                &m,
                &[c(9, Strand::Under, -1)],
                &b,
            ])]),
            TwistedCode::new(vec![cat(&[
                &[c(8, Strand::Under, 1)],
                &t,
                &[c(9, Strand::Under, 1)],
                &m,
                &[c(8, Strand::Over, 1)],
                &b,
                &[c(9, Strand::Over, 1)],
            ])]),
            TwistedCode::new(vec![cat(&[
                &[c(8, Strand::Over, 1), c(9, Strand::Over, 1)],
                &t,
                &[c(8, Strand::Under, 1), c(9, Strand::Under, 1)],
                &m,
                &[Symbol::Bar],
                &b,
                &[Symbol::Bar],
            ])]),
        ]
    }

    /// Enumerate the planar triangle pictures directly. Strands are
    /// straight lines; the top strand is the x-axis, the middle strand
    /// the y-axis, and the bottom strand has slope ∓1 (the two mirror
    /// classes of the arrangement) and offset ±1 (the two sides of the
    /// move). Crossing order along a strand comes from intersection
    /// parameters, crossing sign from the determinant of (over direction,
    /// under direction).
    fn geometric_r3_set() -> u64 {
        let det = |a: (i32, i32), b: (i32, i32)| a.0 * b.1 - a.1 * b.0;
        let mut mask = 0u64;
        for mirrored in [false, true] {
            for side in [1i32, -1] {
                for eps in 0..8u32 {
                    let et = if eps & 1 != 0 { 1i32 } else { -1 };
                    let em = if eps & 2 != 0 { 1i32 } else { -1 };
                    let eb = if eps & 4 != 0 { 1i32 } else { -1 };
                    let dt = (et, 0);
                    let dm = (0, em);
                    let db = if mirrored { (eb, eb) } else { (eb, -eb) };
                    // crossings: TM at the origin; TB on the x-axis at
                    // x = ±side; MB on the y-axis at y = side
                    let tb_x = if mirrored { -side } else { side };
                    // parameter of TB along the top strand (TM is at 0)
                    let t_tb = tb_x * et;
                    // parameter of MB along the middle strand
                    let t_mb = side * em;
                    // along the bottom strand, measured from TB: the x
                    // coordinate moves from tb_x to 0 at MB
                    let t_mb_on_b = -tb_x * eb;
                    let mut cfg = 0usize;
                    if t_tb > 0 {
                        cfg |= 1; // top strand meets TM first
                    }
                    if t_mb > 0 {
                        cfg |= 2; // middle strand meets TM first
                    }
                    if t_mb_on_b > 0 {
                        cfg |= 4; // bottom strand meets TB first
                    }
                    if det(dt, dm) > 0 {
                        cfg |= 8;
                    }
                    if det(dt, db) > 0 {
                        cfg |= 16;
                    }
                    if det(dm, db) > 0 {
                        cfg |= 32;
                    }
                    mask |= 1 << cfg;
                }
            }
        }
        mask
    }

    #[test]
    fn r3_table_matches_geometric_derivation() {
        let derived = geometric_r3_set();
        assert_eq!(
            derived, R3_VALID,
            "derived table 0x{derived:016x} differs from frozen 0x{R3_VALID:016x}"
        );
        assert_eq!(R3_VALID.count_ones(), 16);
    }

    #[test]
    fn r3_valid_configurations_preserve_colorings() {
        // coloring invariance is a necessary condition: every admitted
        // configuration must pass it in every ambient closure tried
        for cfg in 0..64usize {
            if R3_VALID & (1 << cfg) == 0 {
                continue;
            }
            let before = realize(cfg);
            let after = swapped(&before);
            for (x, y) in paddings(&before).iter().zip(paddings(&after).iter()) {
                assert!(x.is_valid() && y.is_valid());
                assert_eq!(battery(x), battery(y), "cfg {cfg} broke colorings for {x}");
            }
        }
    }

    #[test]
    fn r3_swap_maps_valid_to_valid() {
        // a legitimate move is reversible, so the post-swap configuration
        // of every valid configuration must itself be valid
        for cfg in 0..64usize {
            if R3_VALID & (1 << cfg) == 0 {
                continue;
            }
            // swapping each run flips all three order bits; heights and
            // signs are unchanged
            let post = cfg ^ 0b111;
            assert!(R3_VALID & (1 << post) != 0, "cfg {cfg} valid but partner {post} is not");
        }
    }

    #[test]
    fn r3_enumeration_round_trip() {
        // embed a valid configuration and check detection + application
        let cfg = R3_VALID.trailing_zeros() as usize;
        let runs = realize(cfg);
        let code = TwistedCode::new(vec![runs[0].clone(), runs[1].clone(), runs[2].clone()]);
        let sites: Vec<_> = enumerate_moves(&code)
            .into_iter()
            .filter(|s| matches!(s, MoveSite::R3 { .. }))
            .collect();
        assert!(!sites.is_empty());
        let moved = apply_move(&code, &sites[0]).unwrap();
        assert_ne!(moved, code);
        assert_eq!(battery(&moved), battery(&code));
        // applying an R3 at the swapped site returns to the start
        let back_sites: Vec<_> = enumerate_moves(&moved)
            .into_iter()
            .filter(|s| matches!(s, MoveSite::R3 { .. }))
            .collect();
        assert!(back_sites.iter().any(|s| apply_move(&moved, s).unwrap() == code));
    }
}

/// Deterministic random walk: each step picks uniformly from the
/// applicable sites of the current code.
pub fn random_walk(code: &TwistedCode, steps: usize, seed: u64) -> MoveTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = code.clone();
    let mut taken = Vec::with_capacity(steps);
    for _ in 0..steps {
        let sites = enumerate_moves(&current);
        let site = match sites.choose(&mut rng) {
            Some(s) => *s,
            None => break,
        };
        current = apply_move(&current, &site).expect("enumerated site must apply");
        taken.push(site);
    }
    MoveTrace { initial: code.clone(), steps: taken, final_code: current }
}
