//! Bar-extended Gauss codes: the data model, text format and elementary
//! diagram statistics, together with the involutions `r`, `c` and `s`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flipped(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

/// One symbol of a component: a crossing pass or a bar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Cross { id: u32, strand: Strand, sign: i8 },
    Bar,
}

impl Symbol {
    pub fn cross(id: u32, strand: Strand, sign: i8) -> Symbol {
        debug_assert!(sign == 1 || sign == -1);
        Symbol::Cross { id, strand, sign }
    }

    pub fn is_bar(&self) -> bool {
        matches!(self, Symbol::Bar)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Cross { id, strand, sign } => {
                let m = if *strand == Strand::Over { 'O' } else { 'U' };
                let s = if *sign > 0 { '+' } else { '-' };
                write!(f, "{}{}{}", m, id, s)
            }
            Symbol::Bar => write!(f, "*"),
        }
    }
}

/// A twisted link diagram as per-component cyclic symbol sequences.
/// Orientation is the list order; virtual crossings are invisible here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistedCode {
    pub components: Vec<Vec<Symbol>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    pub crossing_count: usize,
    pub bar_count_per_component: Vec<usize>,
    pub writhe: i64,
    pub component_count: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid code: {0}")]
    Invalid(Violation),
}

/// A broken invariant, reported as data by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    CrossingCount { id: u32, count: usize },
    StrandPair { id: u32 },
    SignMismatch { id: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CrossingCount { id, count } => {
                write!(f, "crossing {} appears {} times (expected 2)", id, count)
            }
            Violation::StrandPair { id } => {
                write!(f, "crossing {} does not have one Over and one Under pass", id)
            }
            Violation::SignMismatch { id } => {
                write!(f, "the two passes of crossing {} carry different signs", id)
            }
        }
    }
}

/// Location of a crossing pass: component index and position in the component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pos {
    pub component: usize,
    pub index: usize,
}

impl TwistedCode {
    pub fn new(components: Vec<Vec<Symbol>>) -> TwistedCode {
        TwistedCode { components }
    }

    pub fn parse(text: &str) -> Result<TwistedCode, ParseError> {
        parse_code(text)
    }

    pub fn serialize(&self) -> String {
        serialize_code(self)
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn stats(&self) -> DiagramStats {
        stats(self)
    }

    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .components
            .iter()
            .flatten()
            .filter_map(|s| match s {
                Symbol::Cross { id, strand: Strand::Over, .. } => Some(*id),
                _ => None,
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn crossing_count(&self) -> usize {
        self.components
            .iter()
            .flatten()
            .filter(|s| !s.is_bar())
            .count()
            / 2
    }

    pub fn bar_count(&self) -> usize {
        self.components.iter().flatten().filter(|s| s.is_bar()).count()
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .filter_map(|s| match s {
                Symbol::Cross { id, .. } => Some(*id),
                Symbol::Bar => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Both positions of every crossing, keyed by id: (over pass, under pass, sign).
    pub fn crossing_passes(&self) -> Vec<(u32, Pos, Pos, i8)> {
        let mut over: Vec<(u32, Pos, i8)> = Vec::new();
        let mut under: Vec<(u32, Pos)> = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (si, sym) in comp.iter().enumerate() {
                if let Symbol::Cross { id, strand, sign } = sym {
                    let p = Pos { component: ci, index: si };
                    match strand {
                        Strand::Over => over.push((*id, p, *sign)),
                        Strand::Under => under.push((*id, p)),
                    }
                }
            }
        }
        over.sort_unstable_by_key(|t| t.0);
        under.sort_unstable_by_key(|t| t.0);
        over.iter()
            .zip(under.iter())
            .map(|(&(id, o, sign), &(_, u))| (id, o, u, sign))
            .collect()
    }

    /// Map each symbol with `f`, preserving structure.
    fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> TwistedCode {
        TwistedCode {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&s| f(s)).collect())
                .collect(),
        }
    }

    /// In-plane reflection: negates every crossing sign, keeps markers.
    pub fn reflect_r(&self) -> TwistedCode {
        self.map_symbols(|s| match s {
            Symbol::Cross { id, strand, sign } => Symbol::Cross { id, strand, sign: -sign },
            Symbol::Bar => Symbol::Bar,
        })
    }

    /// Crossing change at every crossing: swaps Over/Under and negates signs.
    pub fn crossing_change_c(&self) -> TwistedCode {
        self.map_symbols(|s| match s {
            Symbol::Cross { id, strand, sign } => {
                Symbol::Cross { id, strand: strand.flipped(), sign: -sign }
            }
            Symbol::Bar => Symbol::Bar,
        })
    }

    /// s = c∘r: swaps Over/Under markers, preserves signs.
    pub fn involution_s(&self) -> TwistedCode {
        self.map_symbols(|s| match s {
            Symbol::Cross { id, strand, sign } => {
                Symbol::Cross { id, strand: strand.flipped(), sign }
            }
            Symbol::Bar => Symbol::Bar,
        })
    }

    /// Canonical representative up to cyclic rotation per component,
    /// component permutation and crossing relabeling. Used for corpus
    /// deduplication; literal equality elsewhere.
    pub fn canonical(&self) -> TwistedCode {
        // Minimize over per-component rotations and component orderings the
        // relabeled code, greedily: components are picked one at a time, at
        // each step choosing the (component, rotation) whose relabeled symbol
        // stream is minimal.
        let n = self.components.len();
        let mut chosen: Vec<bool> = vec![false; n];
        let mut out: Vec<Vec<Symbol>> = Vec::with_capacity(n);
        let mut labels: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        for _ in 0..n {
            let mut best: Option<(Vec<Symbol>, usize, std::collections::HashMap<u32, u32>)> = None;
            for ci in 0..n {
                if chosen[ci] {
                    continue;
                }
                let comp = &self.components[ci];
                let rots = if comp.is_empty() { 1 } else { comp.len() };
                for r in 0..rots {
                    let mut lab = labels.clone();
                    let mut next = lab.len() as u32 + 1;
                    let rotated: Vec<Symbol> = (0..comp.len())
                        .map(|k| comp[(r + k) % comp.len()])
                        .map(|s| match s {
                            Symbol::Cross { id, strand, sign } => {
                                let nid = *lab.entry(id).or_insert_with(|| {
                                    let v = next;
                                    next += 1;
                                    v
                                });
                                Symbol::Cross { id: nid, strand, sign }
                            }
                            Symbol::Bar => Symbol::Bar,
                        })
                        .collect();
                    let better = match &best {
                        None => true,
                        Some((b, _, _)) => rotated < *b,
                    };
                    if better {
                        best = Some((rotated, ci, lab));
                    }
                }
            }
            let (comp, ci, lab) = best.unwrap();
            chosen[ci] = true;
            labels = lab;
            out.push(comp);
        }
        // Relabeling above is only complete once all components are placed;
        // ids first seen in later components were assigned there.
        TwistedCode { components: out }
    }
}

impl fmt::Display for TwistedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for TwistedCode {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TwistedCode::parse(s)
    }
}

/// Grammar: code := component+; component := "(" token* ")";
/// token := ("O"|"U") digits ("+"|"-") | "*".
pub fn parse_code(text: &str) -> Result<TwistedCode, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let mut components: Vec<Vec<Symbol>> = Vec::new();
    let syntax = |position: usize, message: &str| ParseError::Syntax {
        position,
        message: message.to_string(),
    };
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                i += 1;
                let mut comp: Vec<Symbol> = Vec::new();
                loop {
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(syntax(i, "unterminated component, expected ')'"));
                    }
                    match bytes[i] {
                        b')' => {
                            i += 1;
                            break;
                        }
                        b'*' => {
                            comp.push(Symbol::Bar);
                            i += 1;
                        }
                        b'O' | b'U' => {
                            let strand = if bytes[i] == b'O' { Strand::Over } else { Strand::Under };
                            i += 1;
                            let start = i;
                            while i < bytes.len() && bytes[i].is_ascii_digit() {
                                i += 1;
                            }
                            if i == start {
                                return Err(syntax(i, "expected crossing id digits"));
                            }
                            let id: u32 = text[start..i]
                                .parse()
                                .map_err(|_| syntax(start, "crossing id out of range"))?;
                            if id == 0 {
                                return Err(syntax(start, "crossing id must be positive"));
                            }
                            let sign = match bytes.get(i) {
                                Some(b'+') => 1i8,
                                Some(b'-') => -1i8,
                                _ => return Err(syntax(i, "expected '+' or '-' after crossing id")),
                            };
                            i += 1;
                            comp.push(Symbol::cross(id, strand, sign));
                        }
                        _ => return Err(syntax(i, "expected token or ')'")),
                    }
                }
                components.push(comp);
            }
            _ => return Err(syntax(i, "expected '('")),
        }
    }
    if components.is_empty() {
        return Err(syntax(0, "expected at least one component"));
    }
    let code = TwistedCode { components };
    if let Some(v) = code.validate().into_iter().next() {
        return Err(ParseError::Invalid(v));
    }
    Ok(code)
}

/// Canonical text: single spaces, components in given order.
pub fn serialize_code(code: &TwistedCode) -> String {
    let mut out = String::new();
    for (ci, comp) in code.components.iter().enumerate() {
        if ci > 0 {
            out.push(' ');
        }
        out.push('(');
        for (si, sym) in comp.iter().enumerate() {
            if si > 0 {
                out.push(' ');
            }
            out.push_str(&sym.to_string());
        }
        out.push(')');
    }
    out
}

pub fn validate(code: &TwistedCode) -> Vec<Violation> {
    use std::collections::BTreeMap;
    let mut seen: BTreeMap<u32, Vec<(Strand, i8)>> = BTreeMap::new();
    for comp in &code.components {
        for sym in comp {
            if let Symbol::Cross { id, strand, sign } = sym {
                seen.entry(*id).or_default().push((*strand, *sign));
            }
        }
    }
    let mut out = Vec::new();
    for (id, passes) in &seen {
        if passes.len() != 2 {
            out.push(Violation::CrossingCount { id: *id, count: passes.len() });
            continue;
        }
        let strands = (passes[0].0, passes[1].0);
        if strands != (Strand::Over, Strand::Under) && strands != (Strand::Under, Strand::Over) {
            out.push(Violation::StrandPair { id: *id });
        }
        if passes[0].1 != passes[1].1 {
            out.push(Violation::SignMismatch { id: *id });
        }
    }
    out
}

pub fn stats(code: &TwistedCode) -> DiagramStats {
    let mut writhe: i64 = 0;
    let mut crossings = 0usize;
    let mut bars = Vec::with_capacity(code.components.len());
    for comp in &code.components {
        let mut b = 0usize;
        for sym in comp {
            match sym {
                Symbol::Cross { strand: Strand::Over, sign, .. } => {
                    writhe += *sign as i64;
                    crossings += 1;
                }
                Symbol::Cross { .. } => {}
                Symbol::Bar => b += 1,
            }
        }
        bars.push(b);
    }
    DiagramStats {
        crossing_count: crossings,
        bar_count_per_component: bars,
        writhe,
        component_count: code.components.len(),
    }
}
