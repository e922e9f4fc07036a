use super::AlgebraError;
use crate::gauss::TwistedCode;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Group,
    Quandle,
}

/// A semi-arc: the run between consecutive symbols of a component.
/// `index` k is the gap after symbol k (cyclically); a symbol-free
/// component has the single closed semi-arc with index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiArc {
    pub component: usize,
    pub index: usize,
    /// Symbol position bounding the arc at its start (None for a closed arc).
    pub start_symbol: Option<usize>,
    /// Symbol position bounding the arc at its end.
    pub end_symbol: Option<usize>,
}

/// A word in group generators and inverses: product of gen^(±1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<(usize, i8)>);

/// Left-normed quandle term: base followed by * / ∗̄ applications.
/// `true` marks the dual operation ∗̄.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleTerm {
    pub base: usize,
    pub ops: Vec<(bool, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelData {
    Group { lhs: GroupWord, rhs: GroupWord },
    Quandle { lhs: QuandleTerm, rhs: QuandleTerm },
}

impl RelData {
    /// The same relation with generator indices renumbered through `map`.
    pub fn remapped(&self, map: &[usize]) -> RelData {
        match self {
            RelData::Group { lhs, rhs } => RelData::Group {
                lhs: GroupWord(lhs.0.iter().map(|&(g, e)| (map[g], e)).collect()),
                rhs: GroupWord(rhs.0.iter().map(|&(g, e)| (map[g], e)).collect()),
            },
            RelData::Quandle { lhs, rhs } => {
                let term = |t: &QuandleTerm| QuandleTerm {
                    base: map[t.base],
                    ops: t.ops.iter().map(|&(bar, g)| (bar, map[g])).collect(),
                };
                RelData::Quandle { lhs: term(lhs), rhs: term(rhs) }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub flavor: Flavor,
    pub generators: Vec<String>,
    pub relations: Vec<RelData>,
}

impl Presentation {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.relation_string(r)).collect()
    }

    /// Readable JSON form: generator names plus relation strings.
    pub fn display_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": match self.flavor { Flavor::Group => "group", Flavor::Quandle => "quandle" },
            "generators": self.generators,
            "relations": self.relation_strings(),
        })
    }

    fn relation_string(&self, r: &RelData) -> String {
        match r {
            RelData::Group { lhs, rhs } => {
                format!("{} = {}", self.word_string(lhs), self.word_string(rhs))
            }
            RelData::Quandle { lhs, rhs } => {
                format!("{} = {}", self.term_string(lhs), self.term_string(rhs))
            }
        }
    }

    fn word_string(&self, w: &GroupWord) -> String {
        if w.0.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.generators[g].clone()
                } else {
                    format!("{}^-1", self.generators[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn term_string(&self, t: &QuandleTerm) -> String {
        let mut s = self.generators[t.base].clone();
        for &(bar, g) in &t.ops {
            let op = if bar { "/" } else { "*" };
            s = format!("{} {} {}", s, op, self.generators[g]);
        }
        s
    }
}

/// One semi-arc per gap between consecutive symbols along each component.
pub fn semi_arcs(code: &TwistedCode) -> Vec<SemiArc> {
    let mut out = Vec::new();
    for (ci, comp) in code.components.iter().enumerate() {
        if comp.is_empty() {
            out.push(SemiArc { component: ci, index: 0, start_symbol: None, end_symbol: None });
        } else {
            let m = comp.len();
            for k in 0..m {
                out.push(SemiArc {
                    component: ci,
                    index: k,
                    start_symbol: Some(k),
                    end_symbol: Some((k + 1) % m),
                });
            }
        }
    }
    out
}

/// Global generator index of the semi-arc that a traversal is on just
/// after passing symbol position `index` of component `comp`.
struct ArcIndexer {
    offsets: Vec<usize>,
    lens: Vec<usize>,
    pub total: usize,
}

impl ArcIndexer {
    fn new(code: &TwistedCode) -> ArcIndexer {
        let mut offsets = Vec::with_capacity(code.components.len());
        let mut lens = Vec::with_capacity(code.components.len());
        let mut total = 0usize;
        for comp in &code.components {
            offsets.push(total);
            let n = comp.len().max(1);
            lens.push(n);
            total += n;
        }
        ArcIndexer { offsets, lens, total }
    }

    fn after(&self, comp: usize, index: usize) -> usize {
        self.offsets[comp] + index % self.lens[comp]
    }

    fn before(&self, comp: usize, index: usize) -> usize {
        self.offsets[comp] + (index + self.lens[comp] - 1) % self.lens[comp]
    }
}

#[derive(Clone, Copy)]
enum Family {
    Twisted,
    Upper,
    Lower,
}

fn gen_names(arcs: usize, family: Family) -> Vec<String> {
    match family {
        Family::Twisted => (1..=arcs)
            .map(|i| format!("x{}", i))
            .chain((1..=arcs).map(|i| format!("y{}", i)))
            .collect(),
        Family::Upper => (1..=arcs).map(|i| format!("x{}", i)).collect(),
        Family::Lower => (1..=arcs).map(|i| format!("y{}", i)).collect(),
    }
}

fn word(gens: &[(usize, i8)]) -> GroupWord {
    GroupWord(gens.to_vec())
}

/// Crossing relations in both flavors, shared by all presentation builders.
///
/// At a positive crossing the over strand's x generator passes through
/// unchanged and the under strand's is conjugated by it; the y relations
/// mirror this from below the plane. `x_off`/`y_off` are the generator
/// index offsets of the two families (y relations are skipped when
/// `y_off` is None, and vice versa).
fn crossing_relations(
    code: &TwistedCode,
    idx: &ArcIndexer,
    flavor: Flavor,
    x_off: Option<usize>,
    y_off: Option<usize>,
    rels: &mut Vec<RelData>,
) {
    for (_, over, under, sign) in code.crossing_passes() {
        let oi = idx.before(over.component, over.index);
        let oo = idx.after(over.component, over.index);
        let ui = idx.before(under.component, under.index);
        let uo = idx.after(under.component, under.index);
        if let Some(xo) = x_off {
            let (oi, oo, ui, uo) = (oi + xo, oo + xo, ui + xo, uo + xo);
            rels.push(eq_rel(flavor, oo, oi));
            rels.push(conj_rel(flavor, uo, ui, oi, sign));
        }
        if let Some(yo) = y_off {
            let (oi, oo, ui, uo) = (oi + yo, oo + yo, ui + yo, uo + yo);
            rels.push(eq_rel(flavor, uo, ui));
            rels.push(conj_rel(flavor, oo, oi, ui, sign));
        }
    }
}

fn eq_rel(flavor: Flavor, lhs: usize, rhs: usize) -> RelData {
    match flavor {
        Flavor::Group => RelData::Group { lhs: word(&[(lhs, 1)]), rhs: word(&[(rhs, 1)]) },
        Flavor::Quandle => RelData::Quandle {
            lhs: QuandleTerm { base: lhs, ops: vec![] },
            rhs: QuandleTerm { base: rhs, ops: vec![] },
        },
    }
}

/// lhs = by^-1 base by (positive) or lhs = by base by^-1 (negative);
/// in quandle form lhs = base * by or lhs = base ∗̄ by.
fn conj_rel(flavor: Flavor, lhs: usize, base: usize, by: usize, sign: i8) -> RelData {
    match flavor {
        Flavor::Group => {
            let rhs = if sign > 0 {
                word(&[(by, -1), (base, 1), (by, 1)])
            } else {
                word(&[(by, 1), (base, 1), (by, -1)])
            };
            RelData::Group { lhs: word(&[(lhs, 1)]), rhs }
        }
        Flavor::Quandle => RelData::Quandle {
            lhs: QuandleTerm { base: lhs, ops: vec![] },
            rhs: QuandleTerm { base, ops: vec![(sign < 0, by)] },
        },
    }
}

fn bar_relations(
    code: &TwistedCode,
    idx: &ArcIndexer,
    flavor: Flavor,
    x_off: usize,
    y_off: usize,
    rels: &mut Vec<RelData>,
) {
    for (ci, comp) in code.components.iter().enumerate() {
        for (si, sym) in comp.iter().enumerate() {
            if sym.is_bar() {
                let inc = idx.before(ci, si);
                let out = idx.after(ci, si);
                rels.push(eq_rel(flavor, out + x_off, inc + y_off));
                rels.push(eq_rel(flavor, out + y_off, inc + x_off));
            }
        }
    }
}

fn twisted(code: &TwistedCode, flavor: Flavor) -> Presentation {
    let idx = ArcIndexer::new(code);
    let n = idx.total;
    let mut rels = Vec::new();
    crossing_relations(code, &idx, flavor, Some(0), Some(n), &mut rels);
    bar_relations(code, &idx, flavor, 0, n, &mut rels);
    Presentation { flavor, generators: gen_names(n, Family::Twisted), relations: rels }
}

fn one_sided(code: &TwistedCode, flavor: Flavor, family: Family) -> Result<Presentation, AlgebraError> {
    if code.bar_count() > 0 {
        return Err(AlgebraError::BarsPresent);
    }
    let idx = ArcIndexer::new(code);
    let mut rels = Vec::new();
    let (x_off, y_off) = match family {
        Family::Upper => (Some(0), None),
        Family::Lower => (None, Some(0)),
        Family::Twisted => unreachable!(),
    };
    crossing_relations(code, &idx, flavor, x_off, y_off, &mut rels);
    Ok(Presentation { flavor, generators: gen_names(idx.total, family), relations: rels })
}

pub fn twisted_group(code: &TwistedCode) -> Presentation {
    twisted(code, Flavor::Group)
}

pub fn twisted_quandle(code: &TwistedCode) -> Presentation {
    twisted(code, Flavor::Quandle)
}

pub fn upper_group(code: &TwistedCode) -> Result<Presentation, AlgebraError> {
    one_sided(code, Flavor::Group, Family::Upper)
}

pub fn lower_group(code: &TwistedCode) -> Result<Presentation, AlgebraError> {
    one_sided(code, Flavor::Group, Family::Lower)
}

pub fn upper_quandle(code: &TwistedCode) -> Result<Presentation, AlgebraError> {
    one_sided(code, Flavor::Quandle, Family::Upper)
}

pub fn lower_quandle(code: &TwistedCode) -> Result<Presentation, AlgebraError> {
    one_sided(code, Flavor::Quandle, Family::Lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> TwistedCode {
        TwistedCode::parse(s).unwrap()
    }

    #[test]
    fn semi_arc_counts() {
        assert_eq!(semi_arcs(&code("()")).len(), 1);
        assert_eq!(semi_arcs(&code("(*)")).len(), 1);
        assert_eq!(semi_arcs(&code("(O1+ U2+ O3+ U1+ O2+ U3+)")).len(), 6);
        assert_eq!(semi_arcs(&code("() (*)")).len(), 2);
    }

    #[test]
    fn free_of_rank_two_on_unknot() {
        let p = twisted_group(&code("()"));
        assert_eq!(p.generators, vec!["x1", "y1"]);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn bar_only_relations() {
        let p = twisted_group(&code("(*)"));
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relation_strings(), vec!["x1 = y1", "y1 = x1"]);
    }

    #[test]
    fn upper_rejects_bars() {
        assert_eq!(upper_group(&code("(*)")).unwrap_err(), AlgebraError::BarsPresent);
        assert_eq!(lower_quandle(&code("(O1+ U1+ *)")).unwrap_err(), AlgebraError::BarsPresent);
    }

    #[test]
    fn trefoil_upper_shape() {
        let p = upper_group(&code("(O1+ U2+ O3+ U1+ O2+ U3+)")).unwrap();
        assert_eq!(p.generators.len(), 6);
        assert_eq!(p.relations.len(), 6);
    }

    #[test]
    fn quandle_relation_strings() {
        let p = upper_quandle(&code("(O1+ O2- U1+ U2-)")).unwrap();
        let strings = p.relation_strings();
        assert!(strings.iter().any(|s| s.contains('*')));
        assert!(strings.iter().any(|s| s.contains('/')));
    }
}
