use super::presentation::{Flavor, Presentation, QuandleTerm, RelData};
use super::target::{FiniteTarget, TargetKind};
use super::AlgebraError;

pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Relation shapes the propagator understands. Anything else is checked
/// once all of its generators are assigned.
#[derive(Debug, Clone)]
enum Pat {
    /// a = b
    Eq(usize, usize),
    /// a = w^-1 b w (pos) or a = w b w^-1 (neg)
    Conj { lhs: usize, base: usize, by: usize, positive: bool },
    /// a = b * c or a = b ∗̄ c
    QOp { lhs: usize, base: usize, by: usize, bar: bool },
    /// product of gen^(±1) equals identity (group flavor only)
    Generic(Vec<(usize, i8)>),
}

fn classify(rel: &RelData) -> Pat {
    match rel {
        RelData::Group { lhs, rhs } => {
            if let [(a, 1)] = lhs.0[..] {
                match rhs.0[..] {
                    [(b, 1)] => return Pat::Eq(a, b),
                    [(w1, -1), (b, 1), (w2, 1)] if w1 == w2 => {
                        return Pat::Conj { lhs: a, base: b, by: w1, positive: true }
                    }
                    [(w1, 1), (b, 1), (w2, -1)] if w1 == w2 => {
                        return Pat::Conj { lhs: a, base: b, by: w1, positive: false }
                    }
                    _ => {}
                }
            }
            // lhs · rhs^-1 = 1
            let mut w = lhs.0.clone();
            w.extend(rhs.0.iter().rev().map(|&(g, e)| (g, -e)));
            Pat::Generic(w)
        }
        RelData::Quandle { lhs, rhs } => {
            if lhs.ops.is_empty() {
                match rhs.ops[..] {
                    [] => return Pat::Eq(lhs.base, rhs.base),
                    [(bar, by)] => return Pat::QOp { lhs: lhs.base, base: rhs.base, by, bar },
                    _ => {}
                }
            }
            // no generic quandle equation is ever emitted by the builders;
            // fall back to a both-sides evaluation pair encoded as two terms
            Pat::Generic(vec![])
        }
    }
}

struct Solver<'a> {
    target: &'a FiniteTarget,
    pats: Vec<Pat>,
    /// quandle generic relations kept in term form
    generic_q: Vec<(QuandleTerm, QuandleTerm)>,
    /// relation indices touching each generator
    occ: Vec<Vec<u32>>,
    assign: Vec<i32>,
    nodes: u64,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn eval_word(&self, w: &[(usize, i8)]) -> Option<usize> {
        let mut acc = self.target.identity();
        for &(g, e) in w {
            let v = self.assign[g];
            if v < 0 {
                return None;
            }
            let v = if e >= 0 { v as usize } else { self.target.inv(v as usize) };
            acc = self.target.mul(acc, v);
        }
        Some(acc)
    }

    fn eval_term(&self, t: &QuandleTerm) -> Option<usize> {
        let mut acc = self.assign[t.base];
        if acc < 0 {
            return None;
        }
        let mut a = acc as usize;
        for &(bar, g) in &t.ops {
            let v = self.assign[g];
            if v < 0 {
                return None;
            }
            a = self.target.qop(a, v as usize, bar);
            acc = a as i32;
        }
        Some(acc as usize)
    }

    /// Try to make progress on relation `ri` given current assignment.
    /// Returns Err(()) on contradiction; pushes newly pinned generators.
    fn propagate_one(&mut self, ri: usize, pinned: &mut Vec<usize>) -> Result<(), ()> {
        let t = self.target;
        match &self.pats[ri] {
            Pat::Eq(a, b) => {
                let (a, b) = (*a, *b);
                match (self.assign[a], self.assign[b]) {
                    (x, y) if x >= 0 && y >= 0 => {
                        if x != y {
                            return Err(());
                        }
                    }
                    (x, -1) if x >= 0 => {
                        self.assign[b] = x;
                        pinned.push(b);
                    }
                    (-1, y) if y >= 0 => {
                        self.assign[a] = y;
                        pinned.push(a);
                    }
                    _ => {}
                }
            }
            Pat::Conj { lhs, base, by, positive } => {
                let (l, b, w, pos) = (*lhs, *base, *by, *positive);
                let wv = self.assign[w];
                if wv < 0 {
                    return Ok(());
                }
                let wv = wv as usize;
                let conj = |v: usize| {
                    if pos {
                        t.mul(t.mul(t.inv(wv), v), wv)
                    } else {
                        t.mul(t.mul(wv, v), t.inv(wv))
                    }
                };
                let unconj = |v: usize| {
                    if pos {
                        t.mul(t.mul(wv, v), t.inv(wv))
                    } else {
                        t.mul(t.mul(t.inv(wv), v), wv)
                    }
                };
                match (self.assign[l], self.assign[b]) {
                    (x, y) if x >= 0 && y >= 0 => {
                        if x as usize != conj(y as usize) {
                            return Err(());
                        }
                    }
                    (-1, y) if y >= 0 => {
                        self.assign[l] = conj(y as usize) as i32;
                        pinned.push(l);
                    }
                    (x, -1) if x >= 0 => {
                        self.assign[b] = unconj(x as usize) as i32;
                        pinned.push(b);
                    }
                    _ => {}
                }
            }
            Pat::QOp { lhs, base, by, bar } => {
                let (l, b, w, bar) = (*lhs, *base, *by, *bar);
                let wv = self.assign[w];
                if wv < 0 {
                    return Ok(());
                }
                let wv = wv as usize;
                match (self.assign[l], self.assign[b]) {
                    (x, y) if x >= 0 && y >= 0 => {
                        if x as usize != t.qop(y as usize, wv, bar) {
                            return Err(());
                        }
                    }
                    (-1, y) if y >= 0 => {
                        self.assign[l] = t.qop(y as usize, wv, bar) as i32;
                        pinned.push(l);
                    }
                    (x, -1) if x >= 0 => {
                        self.assign[b] = t.qop(x as usize, wv, !bar) as i32;
                        pinned.push(b);
                    }
                    _ => {}
                }
            }
            Pat::Generic(w) => {
                if let Some(v) = self.eval_word(&w.clone()) {
                    if v != t.identity() {
                        return Err(());
                    }
                }
            }
        }
        Ok(())
    }

    /// Propagate from the pin trail starting at `from`; extends the trail.
    fn propagate(&mut self, trail: &mut Vec<usize>, mut from: usize) -> Result<(), ()> {
        while from < trail.len() {
            let g = trail[from];
            from += 1;
            let rels: Vec<u32> = self.occ[g].clone();
            for ri in rels {
                self.propagate_one(ri as usize, trail)?;
            }
        }
        // generic quandle equations: check when fully assigned
        for i in 0..self.generic_q.len() {
            let (l, r) = self.generic_q[i].clone();
            if let (Some(a), Some(b)) = (self.eval_term(&l), self.eval_term(&r)) {
                if a != b {
                    return Err(());
                }
            }
        }
        Ok(())
    }

    fn undo(&mut self, trail: &mut Vec<usize>, mark: usize) {
        while trail.len() > mark {
            let g = trail.pop().unwrap();
            self.assign[g] = -1;
        }
    }

    /// Pick the next generator to branch on: one from a relation with the
    /// fewest unassigned generators, so each guess pins or checks as much
    /// as possible. Falls back to the first unassigned generator.
    fn pick_branch(&self) -> Option<usize> {
        // best = (unassigned count, -assigned count, index): prefer the
        // relation needing the fewest guesses, then the one most anchored
        // to already-assigned generators
        let mut best: Option<(usize, isize, usize)> = None;
        let consider = |gens: &[usize], best: &mut Option<(usize, isize, usize)>| {
            let mut k = 0;
            let mut a = 0isize;
            let mut g = usize::MAX;
            for &x in gens {
                if self.assign[x] < 0 {
                    k += 1;
                    g = g.min(x);
                } else {
                    a += 1;
                }
            }
            if k > 0 && best.map_or(true, |(bk, ba, bg)| (k, -a, g) < (bk, ba, bg)) {
                *best = Some((k, -a, g));
            }
        };
        for pat in &self.pats {
            match pat {
                Pat::Eq(a, b) => consider(&[*a, *b], &mut best),
                Pat::Conj { lhs, base, by, .. } | Pat::QOp { lhs, base, by, .. } => {
                    consider(&[*lhs, *base, *by], &mut best)
                }
                Pat::Generic(w) => {
                    let gens: Vec<usize> = w.iter().map(|&(g, _)| g).collect();
                    consider(&gens, &mut best)
                }
            }
            if matches!(best, Some((1, _, _))) {
                break;
            }
        }
        match best {
            Some((_, _, g)) => Some(g),
            None => self.assign.iter().position(|&v| v < 0),
        }
    }

    fn search(&mut self, trail: &mut Vec<usize>) -> Result<u64, AlgebraError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AlgebraError::BudgetExceeded(self.budget));
        }
        let free = match self.pick_branch() {
            None => {
                // all assigned: generic constraints were checked on the fly
                return Ok(1);
            }
            Some(g) => g,
        };
        let mut total = 0u64;
        for v in 0..self.target.order {
            let mark = trail.len();
            self.assign[free] = v as i32;
            trail.push(free);
            if self.propagate(trail, mark).is_ok() {
                total += self.search(trail)?;
            }
            self.undo(trail, mark);
        }
        Ok(total)
    }
}

/// Exact number of assignments generators → target elements satisfying all
/// relations, by backtracking with relation propagation.
pub fn count_colorings(p: &Presentation, t: &FiniteTarget) -> Result<u64, AlgebraError> {
    count_colorings_budget(p, t, DEFAULT_BUDGET)
}

pub fn count_colorings_budget(
    p: &Presentation,
    t: &FiniteTarget,
    budget: u64,
) -> Result<u64, AlgebraError> {
    let ok = matches!(
        (p.flavor, t.kind),
        (Flavor::Group, TargetKind::Group) | (Flavor::Quandle, TargetKind::Quandle)
    );
    if !ok {
        return Err(AlgebraError::FlavorMismatch);
    }
    // Split into independent generator clusters (connected components of
    // the generator/relation incidence graph): the total count is the
    // product of the per-cluster counts, and searching clusters separately
    // avoids multiplying their backtracking costs.
    let n = p.generators.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for rel in &p.relations {
        let gens: Vec<usize> = match rel {
            RelData::Group { lhs, rhs } => {
                lhs.0.iter().chain(rhs.0.iter()).map(|&(g, _)| g).collect()
            }
            RelData::Quandle { lhs, rhs } => std::iter::once(lhs.base)
                .chain(lhs.ops.iter().map(|&(_, g)| g))
                .chain(std::iter::once(rhs.base))
                .chain(rhs.ops.iter().map(|&(_, g)| g))
                .collect(),
        };
        for w in gens.windows(2) {
            let (a, b) = (find(&mut uf, w[0]), find(&mut uf, w[1]));
            uf[a] = b;
        }
    }
    let roots: std::collections::BTreeSet<usize> = (0..n).map(|g| find(&mut uf, g)).collect();
    if roots.len() > 1 {
        let mut total = 1u64;
        for &root in &roots {
            let mut remap = vec![usize::MAX; n];
            let mut gens = Vec::new();
            for g in 0..n {
                if find(&mut uf, g) == root {
                    remap[g] = gens.len();
                    gens.push(p.generators[g].clone());
                }
            }
            let relations = p
                .relations
                .iter()
                .filter(|rel| {
                    let g = match rel {
                        RelData::Group { lhs, rhs } => lhs
                            .0
                            .first()
                            .or(rhs.0.first())
                            .map(|&(g, _)| g),
                        RelData::Quandle { lhs, .. } => Some(lhs.base),
                    };
                    g.map_or(true, |g| find(&mut uf, g) == root)
                })
                .map(|rel| rel.remapped(&remap))
                .collect();
            let sub = Presentation { flavor: p.flavor, generators: gens, relations };
            let part = count_colorings_budget(&sub, t, budget)?;
            total = total.saturating_mul(part);
        }
        return Ok(total);
    }
    let mut pats = Vec::with_capacity(p.relations.len());
    let mut generic_q = Vec::new();
    for rel in &p.relations {
        let pat = classify(rel);
        if let (Pat::Generic(w), RelData::Quandle { lhs, rhs }) = (&pat, rel) {
            if w.is_empty() {
                generic_q.push((lhs.clone(), rhs.clone()));
                continue;
            }
        }
        pats.push(pat);
    }
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (ri, pat) in pats.iter().enumerate() {
        let mut touch = |g: usize| {
            let v = &mut occ[g];
            if v.last() != Some(&(ri as u32)) {
                v.push(ri as u32);
            }
        };
        match pat {
            Pat::Eq(a, b) => {
                touch(*a);
                touch(*b);
            }
            Pat::Conj { lhs, base, by, .. } | Pat::QOp { lhs, base, by, .. } => {
                touch(*lhs);
                touch(*base);
                touch(*by);
            }
            Pat::Generic(w) => {
                for &(g, _) in w {
                    touch(g);
                }
            }
        }
    }
    let mut solver =
        Solver { target: t, pats, generic_q, occ, assign: vec![-1; n], nodes: 0, budget };
    let mut trail = Vec::with_capacity(n);
    solver.search(&mut trail)
}
