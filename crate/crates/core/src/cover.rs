//! The double covering diagram: a bar-free code built from two sheet
//! copies of the input, spliced together at bars.
//!
//! The lift is a traversal with a sheet bit. On sheet 1 a crossing pass is
//! emitted unchanged; on sheet 2 it is emitted with Over/Under swapped and
//! sign preserved (the action of s). A bar toggles the sheet and emits
//! nothing. A component with odd bar count lifts to a single component of
//! doubled symbol length, one with even bar count to two components.

use crate::gauss::{Symbol, TwistedCode};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheetInfo {
    pub source_component: usize,
    pub starting_sheet: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub cover: TwistedCode,
    /// For each lifted component, its source component and starting sheet.
    pub sheet_map: Vec<SheetInfo>,
    /// Lifted crossing id → (source crossing id, sheet).
    pub crossing_map: Vec<(u32, u32, u8)>,
}

/// 1 if the component's bar count is odd (the two sheets join into one
/// lifted component), else 2.
pub fn component_lift_counts(code: &TwistedCode) -> Vec<u8> {
    code.components
        .iter()
        .map(|c| if c.iter().filter(|s| s.is_bar()).count() % 2 == 1 { 1 } else { 2 })
        .collect()
}

pub fn double_cover(code: &TwistedCode) -> CoverResult {
    // Sheet-1 lifts keep source ids; sheet-2 lifts are offset past the max id.
    let offset = code.max_crossing_id();
    let mut cover_components: Vec<Vec<Symbol>> = Vec::new();
    let mut sheet_map = Vec::new();

    for (ci, comp) in code.components.iter().enumerate() {
        let bars = comp.iter().filter(|s| s.is_bar()).count();
        let passes = if bars % 2 == 1 { vec![(1u8, 2usize)] } else { vec![(1u8, 1), (2u8, 1)] };
        for (start_sheet, rounds) in passes {
            let mut sheet = start_sheet;
            let mut lifted: Vec<Symbol> = Vec::new();
            for _ in 0..rounds {
                for sym in comp {
                    match sym {
                        Symbol::Bar => sheet = 3 - sheet,
                        Symbol::Cross { id, strand, sign } => {
                            let (id, strand) = if sheet == 1 {
                                (*id, *strand)
                            } else {
                                (*id + offset, strand.flipped())
                            };
                            lifted.push(Symbol::Cross { id, strand, sign: *sign });
                        }
                    }
                }
            }
            cover_components.push(lifted);
            sheet_map.push(SheetInfo { source_component: ci, starting_sheet: start_sheet });
        }
    }

    let crossing_map = code
        .crossing_ids()
        .into_iter()
        .flat_map(|id| [(id, id, 1u8), (id + offset, id, 2u8)])
        .collect();

    CoverResult { cover: TwistedCode::new(cover_components), sheet_map, crossing_map }
}
